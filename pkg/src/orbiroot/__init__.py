"""Exact arithmetic for parabolic bundles on marked curves and for split
bundles on the associated root stack, with every invariant computed by
multiple independent routes that must agree."""

from .geometry import OrbiConfig, VerificationError, WeightIndex, \
    chi_line_on_base, validate_config
from .parabolic import FlagData, ParBundle, ParLine, chi_par, deg_par, \
    deg_par_hilbert, dual_par, filtration_degree, hom_exists_par, \
    induced_quot_par, induced_sub_par, shift, special, tensor_par, \
    tensor_par_coend_degree, to_flag_data
from .root_stack import LineObject, StackBundle, chi_stack, deg_stack, \
    dual_stack, hom_nonzero, normalize, pushforward_degree, \
    pushforward_twisted_degree, taut_root_power, tensor_stack
from .correspondence import OrderVector, coend_evaluate, coend_term, \
    tensor_compat_check, to_parabolic, to_stack
from .local_model import GradedModule, InvariantPart, LocalRing, \
    cokernel_free_check, decompose_shifts, invariant_part_rank
from .inertia_rr import InertiaModel, SectorValue, ThreeWayChi, chi_inertia, \
    chi_par_three_way, deg_theorem_check, regular_char, sector_values, \
    trace_at, validate_sector_constants
from .moduli import StructureReport, WitnessRelation, enumerate_finite_lines, \
    is_finite, is_semistable, max_line_sub_degree, saturation, slope, \
    verify_structure_theorem, witness_polynomials
from .session import SessionFile, load_graded_module, load_session, \
    parse_session

__version__ = "0.1.0"
