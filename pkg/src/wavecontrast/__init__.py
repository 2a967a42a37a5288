"""Second-order stationarity testing via wavelet periodogram contrasts
over randomly drawn disjoint interval pairs, standardized by an AR sieve
bootstrap."""

__version__ = "0.1.0"

from .bootstrap import (
    ARFit,
    SigmaTable,
    ar_resample,
    bootstrap_sigma,
    default_max_order,
    select_ar_order,
    yule_walker,
)
from .engine import (
    Localisation,
    TestConfig,
    TestResult,
    critical_value,
    default_J_star,
    default_m_T,
    run_test,
    weight_profile,
)
from .errors import (
    DegenerateBootstrapError,
    DegenerateSeriesError,
    InfeasibleConfigError,
    InvalidLevelError,
    InvalidPairError,
    InvalidPlanError,
    InvalidScaleError,
    InvalidSpectrumError,
    NoDisjointPairsError,
    OrderTooLargeError,
    SamplingFailureError,
    SeriesTooShortError,
    UnknownModelError,
    WaveContrastError,
)
from .experiment import ExperimentPlan, ExperimentReport, run_experiment
from .intervals import (
    ContrastTable,
    ContrastVector,
    Interval,
    IntervalPairSet,
    contrast_all,
    contrast_stat,
    contrast_weights,
    disjoint_pairs,
    sample_intervals,
)
from .rng import derive_seed, substream
from .simulate import (
    INNOVATIONS,
    MODEL_TAGS,
    ModelSpec,
    SpectrumSpec,
    gen_innovations,
    gen_model,
    lsw_synthesize,
    spectrum_for,
)
from .wavelets import (
    AutocorrWavelet,
    OperatorMatrix,
    PeriodogramMatrix,
    WaveletFilter,
    autocorr_wavelet,
    circular_filter,
    haar_filter,
    operator_matrix,
    wavelet_periodogram,
    white_noise_contrast_variance,
)
