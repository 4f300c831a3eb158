"""Exact univariate polynomials as coefficient lists (constant term first).

Only what the nondegeneracy test needs: gcd, Sturm sequences and real-root
counting/isolation over the rationals.
"""

from fractions import Fraction


def trim(p):
    p = [Fraction(c) for c in p]
    while p and p[-1] == 0:
        p.pop()
    return p


def degree(p):
    return len(trim(p)) - 1


def evaluate(p, x):
    acc = Fraction(0) if isinstance(x, (int, Fraction)) else 0.0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def derivative(p):
    return trim([c * k for k, c in enumerate(p)][1:])


def divmod_(a, b):
    a = trim(a)
    b = trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    r = list(a)
    lead = b[-1]
    while len(r) >= len(b) and r:
        k = len(r) - len(b)
        f = r[-1] / lead
        q[k] = f
        for i, c in enumerate(b):
            r[i + k] -= f * c
        r = trim(r)
    return trim(q), r


def monic(p):
    p = trim(p)
    if not p:
        return p
    lead = p[-1]
    return [c / lead for c in p]


def gcd(a, b):
    a, b = trim(a), trim(b)
    while b:
        a, b = b, divmod_(a, b)[1]
    return monic(a)


def strip_zero_roots(p):
    """Return ``(k, q)`` with ``p = x^k q`` and ``q(0) != 0``."""
    p = trim(p)
    k = 0
    while p and p[0] == 0:
        p = p[1:]
        k += 1
    return k, p


def sturm_sequence(p):
    p = trim(p)
    seq = [p, derivative(p)]
    while seq[-1]:
        r = divmod_(seq[-2], seq[-1])[1]
        if not r:
            break
        seq.append([-c for c in r])
    return [s for s in seq if s]


def _sign(x):
    return (x > 0) - (x < 0)


def _variations(signs):
    signs = [s for s in signs if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _signs_at(seq, x):
    if x == "+inf":
        return [_sign(s[-1]) for s in seq]
    if x == "-inf":
        return [_sign(s[-1]) * (-1) ** (len(s) - 1) for s in seq]
    return [_sign(evaluate(s, x)) for s in seq]


def count_roots(p, lo, hi, seq=None):
    """Distinct real roots in ``(lo, hi]``; ``lo``/``hi`` may be ``"-inf"``/``"+inf"``."""
    if degree(p) < 1:
        return 0
    seq = seq or sturm_sequence(p)
    return _variations(_signs_at(seq, lo)) - _variations(_signs_at(seq, hi))


def cauchy_bound(p):
    p = trim(p)
    lead = abs(p[-1])
    return 1 + max(abs(c) / lead for c in p[:-1]) if len(p) > 1 else Fraction(1)


def isolate_positive_root(p, width=Fraction(1, 10 ** 30)):
    """An interval ``(a, b]`` of width <= ``width`` with a root of ``p`` in (0, inf).

    Returns ``None`` when ``p`` has no positive root.  Exact arithmetic.
    """
    seq = sturm_sequence(p)
    lo, hi = Fraction(0), Fraction(cauchy_bound(p))
    if count_roots(p, lo, hi, seq) == 0:
        return None
    while hi - lo > width:
        mid = (lo + hi) / 2
        if count_roots(p, lo, mid, seq) > 0:
            hi = mid
        else:
            lo = mid
    return lo, hi


def positive_root(p):
    """A positive root of ``p``: exact ``Fraction`` when rational, else a tight
    rational approximation.  Returns ``(root, is_exact)`` or ``None``."""
    iv = isolate_positive_root(p)
    if iv is None:
        return None
    lo, hi = iv
    if evaluate(p, hi) == 0:
        return hi, True
    mid = (lo + hi) / 2
    for den in (1, 10, 100, 1000, 10 ** 6):
        cand = mid.limit_denominator(den)
        if lo < cand <= hi and evaluate(p, cand) == 0:
            return cand, True
    return mid, False
