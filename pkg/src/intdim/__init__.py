"""intdim: intrinsic-dimension estimation for high-dimensional point clouds.

Core workflow: load (or generate) an N x D matrix, deduplicate, compute
exact two-nearest-neighbor statistics, and estimate the intrinsic
dimension from the r2/r1 ratio distribution. Companion tools probe how
trustworthy that number is: decimation curves for scale dependence, PCA
spectra and PC-ID for the linear baseline, and covariance-matched
Gaussian surrogates to expose curvature.
"""

from .data import ActivationMatrix, load_matrix, save_matrix
from .errors import (
    ConfigurationError,
    DataValidationError,
    DegenerateDataError,
    DuplicatePointError,
    InsufficientDataError,
    IntdimError,
)
from .linear import SpectrumReport, gaussian_surrogate, pc_id, spectrum
from .manifolds import (
    LuminanceConfig,
    ManifoldSpec,
    embed_orthogonal,
    gen_manifold,
    nonlinear_feature_embed,
    perturb_luminance,
)
from .neighbors import NeighborStats, dedupe, two_nearest
from .report import (
    ClassBound,
    LayerCheckpoint,
    LayerProfile,
    min_id_bound,
    pearson,
    profile,
    relative_depth,
)
from .scale import (
    DecimationCurve,
    ILL_DEFINED,
    INCONCLUSIVE,
    WELL_DEFINED,
    decimation_curve,
    stability_verdict,
)
from .twonn import (
    IdEstimate,
    estimate_cumulate,
    estimate_matrix,
    estimate_mle,
    estimate_triplets,
    sample_pareto,
    subsample_estimate,
)

__version__ = "0.1.0"
