"""Exception types shared across the package."""


class ClifftError(Exception):
    """Base class for all library errors."""


class SignatureMismatchError(ClifftError):
    """Operands live in different algebras Cl(p,q)."""


class SingularElementError(ClifftError):
    """Multivector has no usable inverse (left-multiplication matrix is
    singular or too ill-conditioned)."""


class NotARootError(ClifftError):
    """Candidate f fails |f^2 + 1| <= tol."""

    def __init__(self, residual: float, message: str | None = None):
        self.residual = residual
        super().__init__(message or f"not a square root of -1: |f^2 + 1| = {residual:.3e}")


class OffManifoldError(ClifftError):
    """Requested (b1, b2) point lies outside the admissible root region."""


class NoCanonicalRootError(ClifftError):
    """No default base root of -1 exists for this signature."""


class GeometryMismatchError(ClifftError):
    """Fields or plans disagree on grid geometry."""


class NonCyclicGridError(ClifftError):
    """FFT evaluation requires a cyclic grid."""


class FieldFormatError(ClifftError):
    """Malformed, truncated, or corrupt field file."""
