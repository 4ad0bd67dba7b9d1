"""
Reading ODE and transformation files.

An ODE file holds four assignments ``P = <expr>``, ``Q = <expr>``, ``R = <expr>``, ``S = <expr>``.
A transformation file holds ``xt = <expr in x, y>``, ``yt = <expr in x, y>``, ``x = <expr in xt, yt>``
and ``y = <expr in xt, yt>``. ``#`` starts a comment; a comment of the form ``# name: <label>``
names the equation or map in reports.
"""

from __future__ import annotations

import dataclasses
import logging
import re
from dataclasses import dataclass
from dataclasses import field
from pathlib import Path

from cubic_ode_invariants.core.ode import COEFFICIENT_NAMES
from cubic_ode_invariants.core.ode import OdeCoefficients
from cubic_ode_invariants.core.ode import PointTransformation
from cubic_ode_invariants.core.parser import PLANE_VARIABLES
from cubic_ode_invariants.core.parser import TILDE_VARIABLES
from cubic_ode_invariants.core.parser import ExpressionParseError
from cubic_ode_invariants.core.parser import parse

logger = logging.getLogger(__name__)

_ASSIGNMENT = re.compile(r"^\s*(?P<key>[A-Za-z][A-Za-z0-9]*)\s*=(?P<value>.*)$")
_NAME = re.compile(r"^\s*#\s*name\s*:\s*(?P<name>.+?)\s*$")

TRANSFORMATION_KEYS = ("xt", "yt", "x", "y")


class OdeFileError(ExpressionParseError):
    """Raised when an ODE or transformation file is malformed."""

    pass


@dataclass(frozen=True)
class _Assignment:
    text: str
    line: int | None
    offset: int


@dataclass(frozen=True)
class OdeFile:
    """
    Parsed contents of an ODE file.

    Attributes:
        P, Q, R, S: Expression strings as written
        name: Label from a ``# name:`` comment, else the file stem
        comments: Remaining comment lines
        source: Path or label the text came from
    """

    P: str
    Q: str
    R: str
    S: str
    name: str | None = None
    comments: tuple[str, ...] = ()
    source: str | None = field(default=None, compare=False)
    locations: tuple[tuple[int, int], ...] = field(default=(), compare=False, repr=False)

    @classmethod
    def from_text(cls, text: str, source: str | None = None) -> OdeFile:
        assignments, name, comments = _scan(text, COEFFICIENT_NAMES, source)
        return cls(
            *(assignments[key].text for key in COEFFICIENT_NAMES),
            name=name,
            comments=comments,
            source=source,
            locations=tuple((assignments[key].line, assignments[key].offset) for key in COEFFICIENT_NAMES),
        )

    @classmethod
    def read(cls, path: str | Path) -> OdeFile:
        """
        Read an ODE file from disk.

        Raises:
            OdeFileError: If the file cannot be read or does not hold exactly one P, Q, R and S
        """
        path = Path(path)
        result = cls.from_text(_read_text(path), source=str(path))
        if result.name is None:
            result = dataclasses.replace(result, name=path.stem)
        return result

    def to_text(self) -> str:
        lines = [f"# name: {self.name}"] if self.name else []
        lines += [f"# {comment}" for comment in self.comments]
        lines += [f"{key} = {getattr(self, key)}" for key in COEFFICIENT_NAMES]
        return "\n".join(lines) + "\n"

    def coefficients(self) -> OdeCoefficients:
        """
        Parse the four expressions.

        Raises:
            OdeFileError: With the line and byte offset of the first syntax error
        """
        locations = self.locations or ((None, 0),) * len(COEFFICIENT_NAMES)
        values = {
            key: _parse_located(_Assignment(getattr(self, key), line, offset), PLANE_VARIABLES, self.source)
            for key, (line, offset) in zip(COEFFICIENT_NAMES, locations, strict=True)
        }
        return OdeCoefficients.from_mapping(values, name=self.name)


def _read_text(path: Path) -> str:
    try:
        return path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as e:
        raise OdeFileError(f"cannot read file: {e}", 0, source=str(path)) from e


def _scan(
    text: str, keys: tuple[str, ...], source: str | None
) -> tuple[dict[str, _Assignment], str | None, tuple[str, ...]]:
    assignments: dict[str, _Assignment] = {}
    name = None
    comments = []
    for number, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped:
            continue
        if stripped.startswith("#"):
            match = _NAME.match(stripped)
            if match:
                name = match.group("name")
            else:
                comments.append(stripped.lstrip("#").strip())
            continue
        match = _ASSIGNMENT.match(raw)
        if match is None:
            raise OdeFileError("expected '<name> = <expression>'", 0, source=source, line=number)
        key = match.group("key")
        if key not in keys:
            raise OdeFileError(f"unknown key {key!r}, expected one of {', '.join(keys)}", 0, source=source, line=number)
        if key in assignments:
            raise OdeFileError(f"{key} is assigned more than once", 0, source=source, line=number)
        value = match.group("value")
        start = match.start("value") + len(value) - len(value.lstrip())
        assignments[key] = _Assignment(value.strip(), number, len(raw[:start].encode("utf-8")))
    missing = [key for key in keys if key not in assignments]
    if missing:
        raise OdeFileError(f"missing {', '.join(missing)}", 0, source=source)
    return assignments, name, tuple(comments)


def _parse_located(assignment: _Assignment, variables: dict, source: str | None):
    try:
        return parse(assignment.text, variables)
    except ExpressionParseError as e:
        raise OdeFileError(e.message, assignment.offset + e.offset, source=source, line=assignment.line) from e


def read_ode(path: str | Path) -> OdeCoefficients:
    """Read and parse an ODE file in one step."""
    ode = OdeFile.read(path).coefficients()
    logger.info("read %s from %s", ode.name, path)
    return ode


def parse_ode(text: str, source: str | None = None) -> OdeCoefficients:
    return OdeFile.from_text(text, source).coefficients()


def parse_transformation(text: str, source: str | None = None, name: str | None = None) -> PointTransformation:
    """
    Parse a transformation file.

    ``xt`` and ``yt`` are written in x, y; ``x`` and ``y`` are written in xt, yt.

    Raises:
        OdeFileError: If a key is missing or repeated or an expression does not parse
    """
    assignments, label, _ = _scan(text, TRANSFORMATION_KEYS, source)
    forward = tuple(_parse_located(assignments[key], PLANE_VARIABLES, source) for key in ("xt", "yt"))
    inverse = tuple(_parse_located(assignments[key], TILDE_VARIABLES, source) for key in ("x", "y"))
    return PointTransformation(forward, inverse, name=label or name)


def read_transformation(path: str | Path) -> PointTransformation:
    path = Path(path)
    return parse_transformation(_read_text(path), source=str(path), name=path.stem)
