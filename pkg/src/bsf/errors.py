"""Exception hierarchy shared by all solver engines."""


class SolverError(Exception):
    """Base class for every failure raised by this package."""


class NegativeDiscriminant(SolverError):
    """An exponent radicand went negative: no solution of the assumed form."""


class ZeroDenominator(SolverError):
    """A quantization denominator vanished (2*k4 + k1 + 2n = 0)."""


class PochhammerZero(SolverError):
    """The lower hypergeometric parameter hits a pole inside the truncated sum."""


class InvalidHypergeomParams(SolverError):
    """Wavefunction assembly would need a hypergeometric lower parameter
    that is zero or a negative integer."""


class CenterMismatch(SolverError):
    """Arithmetic attempted on truncated series with different expansion points."""


class OrderExhausted(SolverError):
    """Derivative depth exceeded the usable order of a truncated series."""


class NonConvergent(SolverError):
    """Iterative quantization roots failed to settle within the iteration cap."""


class NoRootInBracket(SolverError):
    """No admissible root of the quantization condition inside the scan bracket."""


class BracketExhausted(SolverError):
    """Node-count widening gave up before isolating the requested level."""


class NonDecayingTail(SolverError):
    """Samples handed to the normalizer do not decay at the domain ends."""


class ComplexAngularRoot(SolverError):
    """Angular quantization radicals go complex for these couplings."""


class ParameterError(SolverError):
    """A model parameter lies outside its declared validity range."""
