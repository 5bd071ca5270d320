"""framelab: finite-dimensional frame analysis with perturbation certificates."""

__version__ = "0.1.0"

from .errors import (  # noqa: F401
    BadLattice,
    BadShape,
    Ch2Violated,
    DimensionMismatch,
    FramelabError,
    JitterOnNonGabor,
    LengthMismatch,
    NoConvergence,
    NotADualPair,
    NotAFrame,
    NotHermitian,
    ShapeMismatch,
    SingularOperator,
    TheoremContradiction,
)
from .geometry import IndexGeometry  # noqa: F401
from .frames import (  # noqa: F401
    DualPair,
    FrameBounds,
    FrameSystem,
    analysis,
    canonical_dual,
    difference_system,
    frame_bounds,
    frame_operator,
    parseval_normalization,
    reconstruct,
    synthesis,
)
from .localization import (  # noqa: F401
    GramianMatrix,
    SchurWeight,
    check_dual_localization,
    cross_gramian,
    decay_profile,
    gramian,
    localization_degree,
    schur_norm,
)
from .hp import (  # noqa: F401
    INF,
    AtomicDecompositionBounds,
    HpSpec,
    atomic_bounds,
    hp_norm,
    matrix_p_norm_upper,
    system_hp_norms,
)
from .certificates import (  # noqa: F401
    CertificateReport,
    ChainReport,
    PerturbationContext,
    cert_atomic_stability,
    cert_casazza_christensen,
    cert_christensen,
    cert_mixed_norm,
    cert_schur_localized,
    implication_chain,
)
from .generators import (  # noqa: F401
    PerturbationSpec,
    gen_exp_localized,
    gen_gabor,
    gen_harmonic,
    gen_onb,
    gen_union_onb,
    perturb,
)
