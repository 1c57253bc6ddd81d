"""Simulation and solvers for the hidden subgroup problem on dihedral groups."""

from .group import (
    DihedralGroup,
    GroupElement,
    Subgroup,
    closure,
    enumerate_order_two_subgroups,
    enumerate_subgroups,
    inverse,
    left_coset_label,
    multiply,
    reflection_subgroup,
)
from .oracle import (
    HiddenFunction,
    build_hidden_function,
    evaluate,
    quotient_function,
    restrict_to_cyclic,
    verify_promise,
)
from .sampler import (
    HALF_TURN,
    TRIVIAL,
    OutcomeDistribution,
    SampleSet,
    closed_form_distribution,
    conditional_z_distribution,
    draw_samples,
    qft,
    run_circuit,
)
from .abelian import recover_from_orthogonal, sample_orthogonal, solve_cyclic
from .peaks import HoeffdingParams, hoeffding_bound, peak_find, single_point_test
from .solver import SolverConfig, SolverResult, solve_dihedral, solve_order_two
from .reps import (
    coset_fourier,
    fourier_transform,
    inverse_fourier,
    irreps_of_dihedral,
    projection_PH,
    verify_indicator_theorem,
    weak_sampling_distribution,
)

__version__ = "0.1.0"
