"""gcmwb: a workbench for local-ring invariants and the uniform bounds on
regularity, relation type and postulation numbers of parameter ideals in
generalized Cohen-Macaulay rings."""

from .config import DEFAULT_CONFIG, EngineConfig
from .errors import (CapExceededError, DslError, DslSemanticError,
                     DslSyntaxError, EngineError, HorizonError,
                     InvalidParameterSystemError, RingMismatchError)
from .fields import PrimeField, QQ, RationalField, field_of_characteristic
from .orders import DEGREVLEX, LEX, MonomialOrder, compare_monomials, \
    elimination_order, lex_order
from .poly import Polynomial, PolyRing, parse_polynomial, ring_of
from .groebner import GroebnerBasis, groebner_basis, normal_form
from .ideals import (Ideal, INFINITE, affine_hilbert, contained_in_max_ideal,
                     eliminate, groebner, ideal_power, ideal_product,
                     ideal_quotient, ideal_quotient_by_ideal, ideal_sum,
                     intersect, kdim_quotient, saturate)
from .localring import (LocalRing, ParameterSystem, RingPresentation,
                        colength, finite_subquotient_length, local_dimension,
                        make_local_ring, parameter_ideal,
                        validate_parameter_system)
from .invariants import (check_colon_bounds, check_theorem_invariant_bound,
                         gcm_colon_test, invariant_ia, invariant_iq,
                         multiplicity, powered_system,
                         quotient_ring_by_subsystem)
from .graded import (filter_regular_initial_form, hilbert_g,
                     mumford_gap_check, plus_torsion_length, postulation,
                     postulation_bound, regularity_bound, regularity_g,
                     reltype_bound)
from .rees import ReesPresentation, rees_presentation, relation_type
from .harness import (emit_report, run_suite, sample_parameter_systems,
                      theorem28_experiment)
from .reports import BoundEntry, BoundReport, IAEstimate, InvariantRecord
from .dsl import JobSpec, parse_job, serialize_job
from .cli import dispatch, main

__version__ = "0.1.0"
