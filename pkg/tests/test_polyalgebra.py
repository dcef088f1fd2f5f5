from fractions import Fraction
from math import comb

import sympy
from hypothesis import given, strategies as st

from toroidal_o.polyalgebra import (
    Poly,
    d_alpha_apply,
    monomials,
    num_monomials,
    pairing_polynomials,
    pairing_value,
    verify_pairing,
)


@st.composite
def polys(draw, n=3, max_deg=3):
    terms = draw(
        st.dictionaries(
            st.tuples(*[st.integers(0, max_deg)] * n), st.integers(-4, 4).filter(bool), max_size=5
        )
    )
    return Poly(n, {r: Fraction(c) for r, c in terms.items()})


T = sympy.symbols("t1:4")


def to_sympy(p: Poly):
    return sum((c * sympy.prod([t ** e for t, e in zip(T, r)]) for r, c in p.terms.items()), sympy.Integer(0))


@given(polys(), polys())
def test_ring_ops_match_sympy(p, q):
    assert sympy.expand(to_sympy(p * q) - to_sympy(p) * to_sympy(q)) == 0
    assert sympy.expand(to_sympy(p + q) - to_sympy(p) - to_sympy(q)) == 0


@given(polys(), st.tuples(*[st.integers(0, 2)] * 3))
def test_d_alpha_matches_sympy(p, alpha):
    ref = to_sympy(p)
    for t, a in zip(T, alpha):
        ref = sympy.diff(ref, t, a)
    assert sympy.expand(to_sympy(d_alpha_apply(p, alpha)) - ref) == 0


@given(polys(), polys(), st.integers(0, 2))
def test_leibniz(p, q, i):
    assert (p * q).diff(i) == p.diff(i) * q + p * q.diff(i)


def test_monomial_counts():
    for n in range(1, 5):
        for d in range(5):
            ms = monomials(n, d)
            assert len(ms) == num_monomials(n, d) == comb(d + n - 1, n - 1)
            assert len(set(ms)) == len(ms)
    assert monomials(2, 2) == ((2, 0), (1, 1), (0, 2))


def test_pairing_example_set():
    # f1 = 1, g1 = t1 t2; f2 = -t2, g2 = t1; f3 = -t1, g3 = t2; f4 = t1 t2, g4 = 1
    n = 2
    t1, t2 = Poly.var(n, 0), Poly.var(n, 1)
    one = Poly.const(n)
    from toroidal_o.polyalgebra import PairingSet

    ps = PairingSet((1, 1), ((one, t1 * t2), (-t2, t1), (-t1, t2), (t1 * t2, one)))
    assert verify_pairing(ps)
    assert verify_pairing(pairing_polynomials(2, (1, 1)))


@given(st.integers(1, 3).flatmap(lambda n: st.tuples(*[st.integers(0, 3)] * n)).filter(lambda g: sum(g) <= 3))
def test_pairing_solver_verifies(gamma):
    ps = pairing_polynomials(len(gamma), gamma)
    assert verify_pairing(ps)
    assert pairing_value(ps, gamma) == Poly.const(len(gamma))


def test_pairing_trivial():
    ps = pairing_polynomials(1, (0,))
    assert [(str(f), str(g)) for f, g in ps.pairs] == [("1", "1")]
