"""Exception taxonomy for the package.

Every error raised deliberately by library code derives from
WaveContrastError so callers (and the CLI) can catch one type.
"""


class WaveContrastError(Exception):
    """Base class for all errors raised by this package."""


class InvalidScaleError(WaveContrastError):
    """Wavelet scale must be a negative integer."""


class SeriesTooShortError(WaveContrastError):
    """Input series is too short for the requested analysis."""


class InfeasibleConfigError(WaveContrastError):
    """Configuration parameters are mutually inconsistent."""


class SamplingFailureError(WaveContrastError):
    """Interval rejection sampling exhausted its draw budget."""


class NoDisjointPairsError(WaveContrastError):
    """The sampled interval set contains no disjoint pair."""


class InvalidPairError(WaveContrastError):
    """Interval pair overlaps or lies outside the series."""


class OrderTooLargeError(WaveContrastError):
    """Autoregressive order too large for the series length."""


class DegenerateSeriesError(WaveContrastError):
    """Series has zero (or numerically vanishing) variance."""


class DegenerateBootstrapError(WaveContrastError):
    """Bootstrap produced no usable scale estimate."""


class InvalidLevelError(WaveContrastError):
    """Significance level must lie strictly between 0 and 1."""


class InvalidSpectrumError(WaveContrastError):
    """Spectrum values must be nonnegative."""


class UnknownModelError(WaveContrastError):
    """Unrecognised simulation model tag."""


class InvalidPlanError(WaveContrastError):
    """Experiment plan fails validation."""
