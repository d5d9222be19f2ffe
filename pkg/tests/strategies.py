"""Hypothesis strategies shared by the test modules."""

from hypothesis import strategies as st

from oddhecke.scalars import ParamScalar
from oddhecke.skewring import RingConfig, SkewPoly, iter_monomials


small_ints = st.integers(min_value=-3, max_value=3)


@st.composite
def scalars(draw, modulus=None, laurent=True, max_terms=3):
    lo = -2 if laurent else 0
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        key = (draw(st.integers(lo, 3)), draw(st.integers(lo, 2)), draw(st.integers(0, 2)), draw(st.integers(0, 2)))
        terms[key] = draw(small_ints)
    return ParamScalar(terms, modulus)


@st.composite
def q_scalars(draw, modulus=None, max_terms=4):
    terms = {(draw(st.integers(-3, 6)), 0, 0, 0): draw(small_ints) for _ in range(draw(st.integers(0, max_terms)))}
    return ParamScalar(terms, modulus)


def exponent_vectors(n, max_deg, min_deg=0):
    return st.sampled_from(list(iter_monomials(n, max_deg, min_deg)))


@st.composite
def polys(draw, ring, max_deg=4, max_terms=3, homogeneous=None):
    out = ring.zero()
    for _ in range(draw(st.integers(1, max_terms))):
        if homogeneous is None:
            e = draw(exponent_vectors(ring.n, max_deg))
        else:
            e = draw(exponent_vectors(ring.n, homogeneous, homogeneous))
        out = out + SkewPoly.monomial(ring, e, ring.scalar(draw(st.integers(-3, 3))))
    return out


@st.composite
def words(draw, n, max_len=5):
    return draw(st.lists(st.tuples(st.integers(1, n), st.integers(1, 2)), max_size=max_len))


ODD3 = RingConfig(3)
Q3 = RingConfig(3, "q")
