"""Exception hierarchy; every error carries a stable code used by the CLI."""

from __future__ import annotations


class NilmultError(Exception):
    code = "ERROR"
    exit_code = 3

    def __init__(self, message: str = "", **details):
        super().__init__(message)
        self.details = details

    def as_dict(self) -> dict:
        out = {"error": self.code, "message": str(self)}
        out.update(self.details)
        return out


class InputError(NilmultError):
    exit_code = 3


class SchemaError(InputError):
    code = "SCHEMA_ERROR"


class IdentityFail(InputError):
    code = "IDENTITY_FAIL"


class IndexOutOfRange(InputError):
    code = "INDEX_ERROR"


class NotNilpotent(InputError):
    code = "NOT_NILPOTENT"


class LevelTooSmall(InputError):
    code = "LEVEL_TOO_SMALL"


class ResourceLimit(InputError):
    code = "RESOURCE_LIMIT"


class AmbientMismatch(InputError):
    code = "AMBIENT_MISMATCH"


class InclusionViolated(InputError):
    code = "INCLUSION_VIOLATED"


class NotAnIdeal(InputError):
    code = "NOT_AN_IDEAL"


class NotAHomomorphism(InputError):
    code = "NOT_A_HOMOMORPHISM"


class NotCentral(InputError):
    code = "NOT_CENTRAL"


class CheckFailure(NilmultError):
    """An identity that must hold failed: an implementation bug or an unstabilized level."""

    exit_code = 2


class AssertionFail(CheckFailure):
    code = "ASSERTION_FAIL"


class AgreementFail(CheckFailure):
    code = "AGREEMENT_FAIL"


class NoIdealComplement(NilmultError):
    """No ideal complement of the multiplier exists inside the relation module.

    This is an expected mathematical outcome, not a malfunction.
    """

    code = "NO_IDEAL_COMPLEMENT"
    exit_code = 0
