"""Stable-distribution noise models for diffusion-based molecular-communication
timing channels: special functions, stable laws, channel parameter maps, a
seeded Monte Carlo simulator and a reporting CLI."""

__version__ = "0.1.0"

from .channels import (
    ChannelConfig,
    ChannelNoiseModel,
    noise_model,
    noise_model_a,
    noise_model_b,
    noise_model_c,
    verify_cf_composition,
)
from .sim import (
    GofReport,
    SampleBatch,
    fold_observable_b,
    ks_test,
    sample_channel,
    sample_levy,
    sample_stable_cms,
)
from .specfun import dawson, faddeeva, voigt_k, voigt_l
from .stable import (
    AffineMap,
    ConvergenceError,
    DensityTable,
    StableParams,
    TailApprox,
    cdf,
    cdf_grid,
    cf_inversion_pdf,
    cf_stable,
    density_table,
    levy_cdf,
    levy_pdf,
    pdf,
    standardize,
    std_half_pdf,
    tail_comparison,
    tail_gaussian,
    tail_stable_half,
)

__all__ = [
    "__version__",
    "AffineMap", "ChannelConfig", "ChannelNoiseModel", "ConvergenceError",
    "DensityTable", "GofReport", "SampleBatch", "StableParams", "TailApprox",
    "cdf", "cdf_grid", "cf_inversion_pdf", "cf_stable", "dawson",
    "density_table", "faddeeva", "fold_observable_b", "ks_test", "levy_cdf",
    "levy_pdf", "noise_model", "noise_model_a", "noise_model_b",
    "noise_model_c", "pdf", "sample_channel", "sample_levy",
    "sample_stable_cms", "standardize", "std_half_pdf", "tail_comparison",
    "tail_gaussian", "tail_stable_half", "verify_cf_composition", "voigt_k",
    "voigt_l",
]
