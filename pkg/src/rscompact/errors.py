"""Exceptions raised when a point leaves the domain where a formula is valid."""


class DomainError(ValueError):
    """Base class for evaluation outside the valid region."""


class NotUnitary(DomainError):
    pass


class NotSpecialUnitary(DomainError):
    pass


class EigensolverError(DomainError):
    """The eigensolver did not converge."""


class SingularConfiguration(DomainError):
    """Two diagonal entries of the position matrix (nearly) coincide."""


class NonPositiveFactor(DomainError):
    """A bracket factor of W_j is not a positive real number."""


class DenominatorSingular(DomainError):
    pass


class NegativeRadicand(DomainError):
    """The local Hamiltonian is not real at this point."""


class NonPositiveRatio(DomainError):
    """sin(y)/sin(n y) is not positive, so the lift vector is undefined."""


class NotRegular(DomainError):
    """The matrix has a repeated eigenvalue."""


class OutsidePolytope(DomainError):
    pass
