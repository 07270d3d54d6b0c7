"""Vector model of quantum angular momentum built from spin-1/2 constituents.

All angular momenta are in units of hbar.
"""
from .analysis import (
    NoiseBudget,
    VectorModelReport,
    VerificationError,
    classify_component,
    correlation_matrix,
    effective_unit,
    noise_budget,
    pair_correlation,
    particle_vectors,
    second_moments,
    site_means,
    variance,
    vector_choice_a,
    vector_choice_b,
    vector_sum_report,
)
from .composite import (
    SiteOperator,
    SpinSystem,
    TotalOperator,
    apply_site,
    embed,
    total_component,
    total_j_squared,
    total_ladder,
)
from .coupling import (
    CoupledState,
    canonical_path,
    cg_coefficient,
    coupled_basis,
    coupled_state,
    coupling_paths,
    lower,
    sequential_state,
    single_spin_state,
    stretched_state,
    two_spin_state,
)
from .linalg import (
    ComplexMatrix,
    DimensionError,
    StateVector,
    commutator,
    expectation,
    identity,
    inner,
    kron,
    matvec,
)
from .sampler import (
    SampleBatch,
    estimate_moments,
    exact_moments,
    rotate_to_axis_basis,
    sample,
)
from .spin_ops import (
    SpinQuantumNumber,
    build_component,
    build_ladder,
    build_sx,
    build_sy,
    build_sz,
    format_half,
    parse_quantum_number,
)

__version__ = "0.1.0"
