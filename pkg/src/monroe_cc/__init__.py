"""Winner determination for the Monroe and Chamberlin--Courant multiwinner rules."""

from .assignment import InfeasibleAssignmentError, capacitated_assignment, cc_assignment
from .cc import cc_algo_c, cc_algo_gm, cc_algo_p, cc_algo_p_delta, cc_algo_r, cc_ptas
from .core import (Assignment, ElectionRule, EvaluationReport, Metric, PreferenceProfile,
                   ScoringFunction, SolutionReport, Variant, evaluate, evaluation_report,
                   ideal_satisfaction, position_of)
from .exact import BudgetExceededError, brute_force_winners, emit_ilp, exhaustive_optimum
from .monroe import algo_a, algo_ar, algo_b, algo_c, algo_gm, algo_r
from .preflib import ProfileParseError, read_profile, write_profile
from .profiles import (GeneratorConfig, gen_impartial_culture, gen_mallows_mixture, gen_urn,
                       generate, kendall_tau, truncate_profile)

__version__ = "0.1.0"
