# ruff: noqa: N815

from enum import Enum
from enum import IntEnum


class ExitCode(IntEnum):
    """
    Process exit codes of the command-line front end.
    """
    ok = 0
    failed = 1
    usage = 2


class Scheme(str, Enum):
    """
    Invariant families that can be requested from the CLI and the client.
    """
    sd = "sd"
    bgd = "bgd"
    both = "both"

    @property
    def includes_sd(self) -> bool:
        return self in (Scheme.sd, Scheme.both)

    @property
    def includes_bgd(self) -> bool:
        return self in (Scheme.bgd, Scheme.both)


class IdentityStatus(str, Enum):
    """
    Outcome of a single identity check.

    exactZero: the residual normalizes to the zero rational function.
    numericZero: the residual vanished at every numeric probe point (transcendental atoms only).
    failed: anything else.
    """
    exactZero = "exact-zero"
    numericZero = "numeric-zero"
    failed = "FAILED"

    @property
    def passed(self) -> bool:
        return self is not IdentityStatus.failed


class VerdictKind(str, Enum):
    """
    Classification outcomes. Only the two extreme cases of the nine-case
    classification are distinguished; everything else is reported as otherCase.
    """
    generalPosition = "GeneralPositionAt"
    maximalDegeneration = "MaximalDegeneration"
    otherCase = "OtherCase"


class Provenance(str, Enum):
    """
    How a reported scalar value was obtained.
    """
    exact = "exact"
    numeric = "numeric"
    symbolic = "symbolic"


class OutputFormat(str, Enum):
    text = "text"
    json = "json"
