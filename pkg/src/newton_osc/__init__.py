"""Newton polyhedra of polynomial phases and the decay of oscillatory integrals."""

from .charts import Chart, charts_for, pullback
from .decay import DecayPrediction, predict_main, predict_monomial, predict_weighted
from .errors import (ConvergenceError, DegeneratePhaseError, FitToleranceError, HypothesisError,
                     InputError, NewtonOscError)
from .fan import Cone, Fan, cone_index, normal_fan, primitive, smooth_refinement
from .newton import newton_distance, newton_polyhedron, weighted_index
from .nondegeneracy import check_all, check_face
from .polynomial import Polynomial, evaluate, format_polynomial, partial_derivative
from .quadrature import BumpSpec, bump_value, oscillatory_integral
from .sublevel import monte_carlo_measure, sublevel_measure
from .sweep import sweep_and_fit, vdc_bound_statistic

__version__ = "0.1.0"
