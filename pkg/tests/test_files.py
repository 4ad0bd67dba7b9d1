import pytest

from cubic_ode_invariants.core.expr import X
from cubic_ode_invariants.core.expr import Y
from cubic_ode_invariants.core.files import OdeFile
from cubic_ode_invariants.core.files import OdeFileError
from cubic_ode_invariants.core.files import parse_ode
from cubic_ode_invariants.core.files import parse_transformation
from cubic_ode_invariants.core.files import read_ode
from cubic_ode_invariants.core.files import read_transformation
from cubic_ode_invariants.core.ode import OdeCoefficients
from cubic_ode_invariants.core.ode import TransformationError

CUBIC = """\
# name: cubic
# a comment
P = 1
Q = 0
R = 0
S = x^2
"""


def test_parse_ode_text():
    ode = parse_ode(CUBIC)
    assert ode.equals(OdeCoefficients(1, 0, 0, X**2))
    assert ode.name == "cubic"


def test_ode_file_keeps_comments_and_renders():
    parsed = OdeFile.from_text(CUBIC)
    assert parsed.comments == ("a comment",)
    assert parsed.S == "x^2"
    assert OdeFile.from_text(parsed.to_text()) == parsed


def test_keys_may_come_in_any_order():
    ode = parse_ode("S = x^2\nR = 0\nQ = 0\nP = 1\n")
    assert ode.equals(OdeCoefficients(1, 0, 0, X**2))


@pytest.mark.parametrize(
    ("text", "message"),
    [
        ("P = 1\nQ = 0\nR = 0\n", "missing S"),
        ("P = 1\nP = 2\nQ = 0\nR = 0\nS = 0\n", "P is assigned more than once"),
        ("P = 1\nQ = 0\nR = 0\nS = 0\nT = 1\n", "unknown key 'T'"),
        ("P 1\nQ = 0\nR = 0\nS = 0\n", "expected '<name> = <expression>'"),
    ],
)
def test_malformed_files(text, message):
    with pytest.raises(OdeFileError, match=message):
        parse_ode(text)


def test_syntax_error_reports_line_and_byte_offset():
    with pytest.raises(OdeFileError) as info:
        parse_ode("P = 1\nQ = 0\nR =  x + $\nS = 0\n", source="bad.ode")
    error = info.value
    assert error.line == 3
    assert error.offset == 9
    assert str(error).startswith("bad.ode:3:offset 9:")


def test_read_data_files(data_dir):
    assert read_ode(data_dir / "odes" / "zero.ode").equals(OdeCoefficients.zero())
    cubic = read_ode(data_dir / "odes" / "cubic_in_x.ode")
    assert cubic.name == "P = 1, S = x^2"
    assert read_ode(data_dir / "odes" / "transcendental.ode").has_elementary


def test_name_defaults_to_file_stem(tmp_path):
    path = tmp_path / "plain.ode"
    path.write_text("P = y^2\nQ = 0\nR = 0\nS = 0\n", encoding="utf-8")
    assert read_ode(path).name == "plain"


def test_missing_file(tmp_path):
    with pytest.raises(OdeFileError, match="cannot read file"):
        read_ode(tmp_path / "absent.ode")


def test_read_transformation(data_dir):
    t = read_transformation(data_dir / "maps" / "shear.map")
    assert t.forward == (X, Y + X**2)
    assert t.inverse == (X, Y - X**2)
    assert t.name == "parabolic shear"
    t.validate(points=5)


def test_transformation_variables_are_checked():
    with pytest.raises(OdeFileError, match="unknown symbol 'xt'"):
        parse_transformation("xt = xt\nyt = y\nx = xt\ny = yt\n")


def test_inconsistent_transformation_fails_validation():
    t = parse_transformation("xt = x\nyt = 2*y\nx = xt\ny = yt\n", name="broken")
    with pytest.raises(TransformationError):
        t.validate(points=5)
