from enum import Enum, IntEnum


class ExitCode(IntEnum):
    """Process exit codes of the command line interface."""

    success = 0
    usage = 1
    hypothesis_not_met = 2
    conclusion_fail = 3
    inconclusive = 4


class FieldKind(str, Enum):
    """Enum representing the ground field of a computation."""

    rational = "rational"
    prime = "prime"


class OutputFormat(str, Enum):
    """Enum representing the output format."""

    pretty = "pretty"
    json = "json"
    csv = "csv"


class OrderKind(str, Enum):
    """Enum representing the supported monomial orders."""

    grevlex = "grevlex"
    elimination = "elimination"


class Twist(str, Enum):
    """Enum representing the twist B of a section module."""

    zero = "zero"
    canonical = "canonical"


class ModuleKind(str, Enum):
    """Which graded module a Betti table is computed for.

    `section` is the section module R(X, B, H) over Sym V, `coordinate` is the homogeneous coordinate ring S/I over
    all ambient linear forms.
    """

    section = "section"
    coordinate = "coordinate"


class CellStatus(str, Enum):
    """Status of a single Koszul cohomology cell."""

    zero = "zero"
    nonzero = "nonzero"
    undetermined = "undetermined"
    no_prediction = "no-prediction"

    @classmethod
    def of(cls, dim: int) -> "CellStatus":
        return cls.nonzero if dim > 0 else cls.zero


class Rule(str, Enum):
    """Rule used to predict the status of a cell after a one-point projection."""

    shape = "shape"
    cor35 = "Cor3.5"
    cor37 = "Cor3.7"
    cor39 = "Cor3.9"
    duality = "duality"
    gonality = "gonality"


class VerificationStatus(str, Enum):
    """Overall status of a verification report."""

    passed = "pass"
    failed = "fail"
    hypothesis_not_met = "hypothesis-not-met"
    inconclusive = "inconclusive"

    def exit_code(self) -> ExitCode:
        match self:
            case VerificationStatus.passed:
                return ExitCode.success
            case VerificationStatus.failed:
                return ExitCode.conclusion_fail
            case VerificationStatus.hypothesis_not_met:
                return ExitCode.hypothesis_not_met
            case VerificationStatus.inconclusive:
                return ExitCode.inconclusive


class Provenance(str, Enum):
    """Where the truth value of a checklist item comes from."""

    computed = "computed"
    catalog = "catalog-asserted"


class Theorem(str, Enum):
    """Checks offered by the verifier."""

    minimal_degree = "minimal-degree"
    thm12ln = "thm12ln"
    thm12proj = "thm12proj"
    thm13 = "thm13"
    prop33 = "prop33"
    duality = "duality"
    fields = "fields"


class CaseTag(str, Enum):
    """Classification case a catalog family belongs to (metadata only)."""

    case1 = "case-1"
    case2 = "case-2"
    case3 = "case-3"
    case4 = "case-4"
    case5 = "case-5"
    case6 = "case-6"
    case7 = "case-7"
    reg1 = "reg-1-family"
    other = "other"
