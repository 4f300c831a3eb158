"""Decay predictions read off the Newton polyhedron.

Every quantity here is exact: exponents are ``Fraction``s and log powers are
ints.  A prediction for a general phase is only issued once the
nondegeneracy check has passed.
"""

from dataclasses import dataclass
from fractions import Fraction
import logging

from .errors import DegeneratePhaseError, InputError
from .newton import check_hypotheses, newton_polyhedron, weighted_index
from . import nondegeneracy as nd

log = logging.getLogger(__name__)

MAIN = "main_theorem"
MONOMIAL = "monomial_lemma"
KEY = "key_lemma"
WEIGHTED = "gilula"

# note attached to predictions with d_f = 1
REMARK_NOTE = ("d_f = 1: a log power one lower is known to hold under "
               "additional conditions; both values are reported")


@dataclass(frozen=True)
class DecayPrediction:
    exponent: Fraction
    log_power: int
    source: str
    integer_case: bool = False
    confidence: str = "exact"
    remark_log_power: int = None
    note: str = None

    def to_dict(self):
        out = {
            "exponent": str(self.exponent),
            "log_power": self.log_power,
            "source": self.source,
            "integer_case": self.integer_case,
            "confidence": self.confidence,
        }
        if self.remark_log_power is not None:
            out["remark_log_power"] = self.remark_log_power
            out["note"] = self.note
        return out


def is_integer_reciprocal(d):
    """Is ``1/d`` an integer?  Exact: the numerator of ``d`` must be 1."""
    d = Fraction(d)
    return d > 0 and d.numerator == 1


def _gate(p, seed):
    report = nd.check_all(p, seed=seed)
    bad = report.first_failure()
    if bad is not None:
        raise DegeneratePhaseError(
            "phase is %s on a compact face; no prediction is made" % bad.verdict,
            face=bad.face, verdict=bad.verdict, witness=bad.witness)
    if report.overall == nd.NUMERIC:
        log.warning("nondegeneracy established numerically only")
        return "numeric", report
    return "exact", report


def predict_main(p, seed=0, report=None):
    """Exponent ``1/d_f`` with log power ``k-1`` (``k`` when ``1/d_f`` is an integer)."""
    check_hypotheses(p)
    if report is None:
        confidence, report = _gate(p, seed)
    else:
        bad = report.first_failure()
        if bad is not None:
            raise DegeneratePhaseError(
                "phase is %s on a compact face; no prediction is made" % bad.verdict,
                face=bad.face, verdict=bad.verdict, witness=bad.witness)
        confidence = "numeric" if report.overall == nd.NUMERIC else "exact"
    dist = newton_polyhedron(p).distance
    integer = is_integer_reciprocal(dist.d_f)
    k = dist.codimension
    log_power = k if integer else k - 1
    remark = k - 1 if dist.d_f == 1 else None
    return DecayPrediction(1 / dist.d_f, log_power, MAIN, integer, confidence,
                           remark, REMARK_NOTE if remark is not None else None)


def monomial_ratio(alpha, beta=None):
    """``d = max_j alpha_j/(beta_j+1)`` and its multiplicity ``M``."""
    alpha = tuple(int(a) for a in alpha)
    beta = tuple(int(b) for b in beta) if beta is not None else (0,) * len(alpha)
    if len(beta) != len(alpha):
        raise InputError("alpha and beta must have the same length")
    if any(a < 0 for a in alpha) or any(b < 0 for b in beta):
        raise InputError("alpha and beta must be nonnegative")
    if not any(alpha):
        raise InputError("alpha must be nonzero")
    ratios = [Fraction(a, b + 1) for a, b in zip(alpha, beta)]
    d = max(ratios)
    return d, ratios.count(d)


def predict_monomial(alpha, beta=None):
    """Prediction for ``x^alpha`` against the weight ``|x^beta|``."""
    d, M = monomial_ratio(alpha, beta)
    source = MONOMIAL if beta is None or not any(beta) else KEY
    return DecayPrediction(1 / d, M - 1, source)


def predict_weighted(p, beta, seed=0, report=None):
    """Weighted prediction: exponent ``floor`` and log power ``d_beta - 1``."""
    base = predict_main(p, seed=seed, report=report)
    c, d_beta = weighted_index(newton_polyhedron(p), beta)
    return DecayPrediction(c, d_beta - 1, WEIGHTED, False, base.confidence)
