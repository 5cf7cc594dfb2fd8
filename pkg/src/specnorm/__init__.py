"""Certified binary witnesses and exact oracles for discrete matrix norms.

The discrete norm maximizes ||A xi|| / ||xi|| over nonzero 0/1 vectors, the
discrete Rayleigh norm maximizes |eta^T A xi| / (||xi|| ||eta||) over 0/1
pairs; both track the spectral norm up to factors logarithmic in the matrix
height.  This package constructs the witnessing subsets, brute-forces exact
values on small instances, audits graphs for the converse expander mixing
bounds, and ships the extremal families that show the logarithmic gaps are
real.
"""

from .errors import (
    CapExceededError,
    EmptyGraphError,
    EmptySubsetError,
    LoopRejectedError,
    NonConvergenceError,
    NotHermitianError,
    NotRealError,
    OutOfRangeError,
    ParseError,
    RankDeficientError,
    SpecnormError,
    ZeroMatrixError,
    ZeroVectorError,
)
from .extremal import (
    FMAX,
    PHI,
    X0,
    Z0,
    EntropyAnalysis,
    InvsqrtCertificate,
    KneserAudit,
    TauTable,
    TensorPowerMatrix,
    binary_entropy,
    binomial_tail_check,
    double_entropy,
    entropy_analysis,
    gen_invsqrt,
    gen_tensor_power,
    invsqrt_certificate,
    kneser_norm_audit,
    sphere_energy_identity,
    tau,
    tau_max_scan,
    tau_scaled_sweep,
    tensor_degree_counts,
    tensor_matvec,
)
from .graphs import (
    CenteredAudit,
    Graph,
    GraphSpectralProfile,
    MixingReport,
    adjacency,
    centered_witnesses,
    delta_subset_witness,
    edge_count,
    graph_profile,
    neighborhood_energy,
    parse_graph,
    read_graph,
)
from .linalg import (
    DEFAULT_MAX_ITER,
    DEFAULT_SEED,
    DEFAULT_TOL,
    NormProfile,
    SingularPair,
    centered_height_bound,
    col_norm,
    height,
    is_hermitian,
    log_diameter,
    mean_matrix,
    norm_profile,
    row_norm,
    top_two_singular,
    vector_height,
)
from .matio import format_matrix, parse_matrix, read_matrix, write_matrix
from .oracle import (
    DELTA_CAP,
    RHO_PAIR_CAP,
    RHO_REAL_CAP,
    OracleResult,
    exact_cosine,
    exact_delta,
    exact_rho,
)
from .witness import (
    BinaryVector,
    DeltaWitness,
    RhoWitness,
    SliceResult,
    best_binary_cosine,
    binary_candidates,
    delta_floor,
    delta_floor_sharp,
    delta_witness,
    dyadic_slice,
    exact_rank1_binary,
    hermitian_rayleigh_vector,
    hermitian_slice,
    rho_floor,
    rho_witness,
)

__version__ = "0.1.0"
