"""Dense coding over two-mode Gaussian channels.

Covariance-matrix states and symplectic operations, channel capacities and
quantum-advantage criteria, local-unitary optimization, multipartite
monogamy scans, and independent mutual-information oracles.
"""

__version__ = "0.1.0"

from .core import (
    CONVENTION,
    ChannelStats,
    GaussianState,
    SymplecticTransform,
    ValidityReport,
    apply_symplectic,
    beam_splitter_5050,
    displace,
    local_rotate,
    local_squeeze,
    mean_photon,
    omega,
    pair_stats,
    reduce_modes,
    validate_cm,
)
from .densecode import (
    FOCK_BOUND,
    SQUEEZED_BOUND,
    CapacityReport,
    EncodingPolicy,
    EnergyBudget,
    advantage,
    capacity_single_mode,
    fock_crossover,
    max_mutual_information,
    mutual_information,
    optimal_encoding,
    squeezed_advantage_exists,
    tmsv_capacity,
)
from .errors import (
    SingleQuadratureRegimeError,
    SqueezeBracketError,
    TriangleError,
    UnphysicalStateError,
    UnprovenRegimeWarning,
)
from .monogamy import (
    MonogamyReport,
    PairAssignment,
    count_overlap,
    is_permutation_symmetric,
    monogamy_certificate,
    monogamy_scan,
    pair_product,
    pair_product_bound,
)
from .optimize import (
    RegionRecord,
    SqueezeSearchResult,
    count_both_beat,
    golden_section_min,
    minimize_variance_product,
    optimal_rotation,
    optimize_pipeline,
    refine_joint_squeeze,
    region_scan,
    rotate_pair,
    squeeze_pair,
    variance_product,
    zero_displacement,
)
from .oracle import (
    MCConfig,
    conditional_via_symplectic,
    joint_gaussian_mi,
    monte_carlo_mi,
)
from .states import (
    PureThreeModeParams,
    TwoModeStandardForm,
    pair_correlations,
    pure_three_mode,
    tmsv,
    triangle_valid,
    two_mode_standard,
)
from .stateio import emit_records, load_state, save_state
