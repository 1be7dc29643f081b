"""Exception types for parameter-domain and consistency failures."""


class DomainError(ValueError):
    """Base class for invalid model parameters or regimes."""


class DegenerateDiagonal(DomainError):
    """Equal diagonal squared masses: the mixing parameter eta is undefined."""


class NonPositiveMass(DomainError):
    """A diagonal squared mass is zero or negative."""


class NegativeMixing(DomainError):
    """The mixing scale mu^2 is negative."""


class ExceptionalPoint(DomainError):
    """eta = 1: the eigenvalues merge and the eigenvector basis degenerates.

    The merged squared mass is attached when known, since eigenvalue-only
    queries remain well defined at this point while eigenvectors do not.
    """

    def __init__(self, message: str, m_sq: float | None = None):
        super().__init__(message)
        self.m_sq = m_sq


class BrokenPTPhase(DomainError):
    """eta > 1: the squared-mass eigenvalues form a complex-conjugate pair."""


class TachyonicMass(DomainError):
    """The lower squared mass of the Hermitian comparison model is <= 0."""


class NonRealTrace(RuntimeError):
    """A probability trace has a non-negligible imaginary part.

    This signals an implementation bug in the operator construction, not a
    property of the model, and is therefore not a DomainError.
    """
