"""Hypothesis strategies for random admissible phases."""

from hypothesis import strategies as st

from newton_osc.polynomial import Polynomial


def exponents(n, top=6):
    return st.tuples(*[st.integers(0, top)] * n).filter(lambda a: sum(a) >= 2)


def supports(n, top=6, max_size=5):
    return st.lists(exponents(n, top), min_size=1, max_size=max_size, unique=True)


def phases(n=2, top=6, max_size=5):
    coef = st.integers(1, 5)
    return supports(n, top, max_size).flatmap(
        lambda sup: st.lists(coef, min_size=len(sup), max_size=len(sup)).map(
            lambda cs: Polynomial(n, dict(zip(sup, cs)))))
