"""Exception and warning types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of a formula."""


class VanishingPlasmaFrequency(DomainError):
    """The effective Josephson energy is zero, so no transmon limit exists."""


class ConvergenceError(RuntimeError):
    """Charge-lattice diagonalization did not converge in the cutoff."""


class UnderflowWarning(RuntimeWarning):
    """A result underflowed to zero in double precision."""


class TransmonLimitWarning(UserWarning):
    """E_J/E_C is small enough that asymptotic transmon formulas are rough."""


class TruncationWarning(UserWarning):
    """An oscillator basis is too small for the requested displacement."""
