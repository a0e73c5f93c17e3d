"""Exception types. Each carries a stable ``code`` used by reports and the CLI."""

from __future__ import annotations


class InvCorrError(Exception):
    code = "ERROR"

    def __init__(self, message: str = "", witness=None):
        super().__init__(message or self.code)
        self.witness = witness


class MalformedTable(InvCorrError):
    code = "MALFORMED"


class NotAssociative(InvCorrError):
    code = "NOT_ASSOCIATIVE"


class NotInverse(InvCorrError):
    """``reason`` is NOT_REGULAR or NOT_UNIQUE."""

    code = "NOT_INVERSE"

    def __init__(self, reason: str, message: str = "", witness=None):
        super().__init__(message or reason, witness)
        self.reason = reason


class NotRegular(InvCorrError):
    code = "NOT_REGULAR"


class SizeLimit(InvCorrError):
    code = "SIZE_LIMIT"


class PreconditionFailed(InvCorrError):
    code = "PRECONDITION_FAILED"


class NoZero(InvCorrError):
    code = "NO_ZERO"


class PresheafConditionFailed(InvCorrError):
    """Raised by the presheaf construction; ``code`` names the failing condition."""

    def __init__(self, condition: str, message: str = "", witness=None):
        self.code = f"CONDITION_{condition}_FAILS"
        super().__init__(message or self.code, witness)


class MiddleMismatch(InvCorrError):
    code = "MIDDLE_MISMATCH"


class NotPartialMorita(InvCorrError):
    code = "NOT_PARTIAL_MORITA"

    def __init__(self, reason: str, message: str = "", witness=None):
        super().__init__(message or reason, witness)
        self.reason = reason


class Degenerate(InvCorrError):
    code = "DEGENERATE"


class NotMorita(InvCorrError):
    code = "NOT_MORITA"


class CertInvalid(InvCorrError):
    code = "CERT_INVALID"


class NotNonDegenerate(InvCorrError):
    code = "NOT_NON_DEGENERATE"


class NotIdeal(InvCorrError):
    code = "NOT_IDEAL"


class NotSubsemigroup(InvCorrError):
    code = "NOT_SUBSEMIGROUP"


class InvalidMcAlister(InvCorrError):
    code = "INVALID_MCALISTER"

    def __init__(self, report, message: str = ""):
        super().__init__(message or f"partial McAlister axioms fail: {sorted(report.failed())}")
        self.report = report


class ParseError(InvCorrError):
    code = "PARSE_ERROR"


class UnknownKind(InvCorrError):
    code = "UNKNOWN_KIND"


class InternalInconsistency(InvCorrError):
    """A proven identity failed on concrete data: corrupted input or a bug."""

    code = "INTERNAL_INCONSISTENCY"


def ensure(cond: bool, message: str, witness=None) -> None:
    if not cond:
        raise InternalInconsistency(message, witness)
