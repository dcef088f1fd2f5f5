from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from toroidal_o import characters as ch
from toroidal_o import shenlarsson as sl
from toroidal_o.toroidal import AlgebraConfig, graded_slice

W2 = AlgebraConfig("W", 2, 2, 4)
S2 = AlgebraConfig("S", 2, 2, 4)
S3 = AlgebraConfig("S", 3, 2, 4)
H2 = AlgebraConfig("H", 2, 2, 4)
H4 = AlgebraConfig("H", 4, 2, 3)


def lw(cfg, lam, mu, c=None):
    return ch.LabeledWeight(lam, mu, c if c is not None else (0,) * cfg.n)


# --- ring laws ---------------------------------------------------------------

@st.composite
def characters(draw, D=3):
    keys = st.tuples(st.integers(0, D), st.tuples(st.integers(-2, 2)), st.tuples(st.integers(-2, 2), st.integers(-2, 2)))
    return ch.GradedCharacter(draw(st.dictionaries(keys, st.integers(-3, 3), max_size=5)), D)


@given(characters(), characters(), characters())
def test_ring_laws(a, b, c):
    one = ch.GradedCharacter.unit(W2, 3)
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * one == a
    assert a - a == ch.GradedCharacter.zero(3)


@given(characters(), characters())
def test_product_is_degree_additive(a, b):
    p = a * b
    assert all(d <= 3 for d, _, _ in p.terms)
    da, db = a.dims(), b.dims()
    for d in range(4):
        assert p.dims()[d] == sum(da[i] * db[d - i] for i in range(d + 1))


def test_central_labels():
    a = ch.GradedCharacter.unit(W2, 2).relabel((1, 0))
    b = ch.GradedCharacter.unit(W2, 2).relabel((0, 1))
    with pytest.raises(ValueError):
        a + b


# --- Gamma -------------------------------------------------------------------

def xi_oracle(kind, r):
    n = len(r)
    if kind == "W":
        return tuple(r)
    if kind == "S":
        return tuple(r[i] - r[-1] for i in range(n - 1))
    m = n // 2
    return tuple(r[i] - r[m + i] for i in range(m))


@pytest.mark.parametrize("cfg", [W2, S2, S3, H2, H4], ids=lambda c: f"{c.xkind}{c.n}")
def test_gamma_matches_enumeration(cfg):
    import itertools
    D = 3
    want = {}
    for r in itertools.product(range(D + 1), repeat=cfg.n):
        if sum(r) <= D:
            k = (sum(r), (0,), tuple(Fraction(a) for a in xi_oracle(cfg.xkind, r)))
            want[k] = want.get(k, 0) + 1
    assert ch.gamma(cfg, D).terms == want


def test_gamma_examples():
    assert ch.gamma(W2, 1).slice(1) == {((0,), (1, 0)): 1, ((0,), (0, 1)): 1}
    assert ch.gamma(S2, 2).slice(2)[((0,), (0,))] == 1
    assert ch.gamma(H2, 0).slice(0) == {((0,), (0,)): 1}


# --- Upsilon ----------------------------------------------------------------

def upsilon_dims_oracle(cfg, D):
    q = sympy.symbols("q")
    f = sympy.Integer(1)
    for d in range(1, D + 1):
        f *= (1 - q ** d) ** (-graded_slice(AlgebraConfig(cfg.xkind, cfg.n, cfg.g_rank, D), d).dim)
    s = sympy.series(f, q, 0, D + 1).removeO()
    return [int(s.coeff(q, d)) for d in range(D + 1)]


@pytest.mark.parametrize("cfg", [W2, S3, H2], ids=lambda c: f"{c.xkind}{c.n}")
def test_upsilon_total_dims(cfg):
    assert ch.upsilon(cfg, 3).dims() == upsilon_dims_oracle(cfg, 3)


@pytest.mark.parametrize("cfg", [W2, S3, H2, H4], ids=lambda c: f"{c.xkind}{c.n}")
def test_upsilon_matches_pbw_census(cfg):
    ups = ch.upsilon(cfg, 2)
    assert ups == ch.pbw_census(cfg, 2)
    assert ups.slice(0) == {(ch._zero_g(cfg), tuple(Fraction(0) for _ in ch._zero_x(cfg))): 1}
    # degree 1 is the weight census of L_1
    sl1 = graded_slice(AlgebraConfig(cfg.xkind, cfg.n, cfg.g_rank, 2), 1)
    census = {}
    for w in sl1.weights:
        k = (tuple(int(a) for a in w.g_part), tuple(Fraction(a) for a in w.x_part))
        census[k] = census.get(k, 0) + 1
    assert ups.slice(1) == census


def test_upsilon_pinned_dims():
    assert ch.upsilon(W2, 4).dims() == [1, 16, 159, 1214, 7797]
    assert ch.upsilon(H2, 4).dims() == [1, 14, 125, 866, 5086]


# --- L0, standard, costandard ------------------------------------------------

def test_L0_examples():
    assert ch.ch_L0(W2, lw(W2, (0,), (0, 0))).dims() == [1]
    c = ch.ch_L0(W2, lw(W2, (0,), (1, 0)))
    assert set(x for (_, x) in c.slice(0)) == {(1, 0), (0, 1)}
    assert len(ch.ch_L0(W2, lw(W2, (2,), (0, 0))).slice(0)) == 3
    with pytest.raises(ValueError):
        ch.ch_L0(W2, lw(W2, (0,), (0, 1)))


def test_standard_and_costandard_units():
    triv = lw(W2, (0,), (0, 0))
    assert ch.ch_standard(W2, triv, 3) == ch.upsilon(W2, 3)
    assert ch.ch_costandard(W2, triv, 3) == ch.gamma(W2, 3)
    x = lw(W2, (1,), (1, 0), (1, 2))
    assert ch.ch_standard(W2, x, 3).slice(0) == ch.ch_L0(W2, x).slice(0)
    assert ch.ch_costandard(W2, x, 3).slice(0) == ch.ch_L0(W2, x).slice(0)


@pytest.mark.parametrize("cfg,lam,mu", [(W2, (1,), (1, 0)), (S3, (0,), (1, 0)), (H2, (1,), (2,)), (H4, (0,), (1, 1))],
                         ids=["W2", "S3", "H2", "H4"])
def test_costandard_matches_module_census(cfg, lam, mu):
    D = 3
    m = sl.SLModule(cfg, lam, mu, (0,) * cfg.n, D)
    assert ch.brute_character(m) == ch.ch_costandard(cfg, lw(cfg, lam, mu), D)


# --- irreducibles --------------------------------------------------------------

def test_irreducible_examples():
    assert ch.ch_irreducible(W2, ch.LabeledWeight.exceptional(W2, 0), 3) == ch.GradedCharacter.unit(W2, 3)
    generic = lw(W2, (1,), (1, 0), (1, 0))
    assert ch.ch_irreducible(W2, generic, 3) == ch.ch_costandard(W2, generic, 3)
    # W, k = n is irreducible
    top = ch.LabeledWeight.exceptional(W2, 2)
    assert ch.ch_irreducible(W2, top, 3) == ch.ch_costandard(W2, top, 3)


@pytest.mark.parametrize("cfg,k", [(W2, 0), (W2, 1), (S3, 0), (S3, 1), (AlgebraConfig("W", 3, 2, 3), 1), (AlgebraConfig("W", 3, 2, 3), 2)],
                         ids=["W2k0", "W2k1", "S3k0", "S3k1", "W3k1", "W3k2"])
def test_irreducible_formula_matches_socle(cfg, k):
    D = 3
    socle = ch._socle_character(cfg, k, D)
    assert ch.ch_irreducible(cfg, ch.LabeledWeight.exceptional(cfg, k), D) == socle
    assert socle.is_nonnegative()


def test_socle_dims_pinned():
    assert ch._socle_character(W2, 1, 3).dims() == [2, 3, 4, 5]
    assert ch._socle_character(S3, 1, 3).dims() == [3, 6, 10, 15]
    assert ch._socle_character(H2, 1, 3).dims() == [2, 3, 4, 5]


def test_h_formula_not_a_module_character():
    # the closed H formula carries a negative term one degree below the top
    c = ch.ch_irreducible(H2, ch.LabeledWeight.exceptional(H2, 1), 3)
    assert c.min_degree() == -1
    assert not c.is_nonnegative()


@pytest.mark.parametrize("cfg", [H2, H4], ids=["H2", "H4"])
def test_h_recursion(cfg):
    assert ch.h_recursion_check(cfg, 3) == []


@pytest.mark.parametrize("cfg", [W2, S3, H2], ids=lambda c: f"{c.xkind}{c.n}")
def test_irreducible_census_nonnegative(cfg):
    for k in range(cfg.n_x + 1):
        assert ch._socle_character(cfg, k, 3).is_nonnegative()


# --- composition ---------------------------------------------------------------

def test_decompose_L0_round_trip():
    a = ch.ch_L0(W2, lw(W2, (1,), (1, 0))) + ch.ch_L0(W2, lw(W2, (0,), (2, 0))) * 2
    assert ch.decompose_L0(W2, a.slice(0)) == {((1,), (1, 0)): 1, ((0,), (2, 0)): 2}


@pytest.mark.parametrize("cfg,k,want", [
    (W2, 0, [("L(0,mu_0,0)", 0, 1), ("L(0,mu_1,0)", 1, 1)]),
    (W2, 1, [("L(0,mu_1,0)", 0, 1), ("L(0,mu_2,0)", 1, 1)]),
    (W2, 2, [("L(0,mu_2,0)", 0, 1)]),
    (S3, 1, [("L(0,mu_1,0)", 0, 1), ("L(0,mu_2,0)", 1, 1)]),
    (H2, 1, [("L(0,mu_1,0)", 0, 1), ("L(0,mu_0,0)", 1, 1), ("L(0,mu_1,0)", 2, 1)]),
], ids=["W2k0", "W2k1", "W2k2", "S3k1", "H2k1"])
def test_census_composition(cfg, k, want):
    comp = ch.exceptional_composition(cfg, k, 3, mode="census")
    assert comp.balanced
    assert comp.factors == want
    for d, full, got in comp.reconciliation:
        assert full == got


def test_composition_modes_and_ranges():
    assert ch.exceptional_composition(W2, 1, 3, mode="formula").balanced
    assert not ch.exceptional_composition(H2, 0, 3, mode="formula").balanced
    with pytest.raises(ValueError):
        ch.exceptional_composition(W2, 3, 3)
    with pytest.raises(ValueError):
        ch.exceptional_composition(W2, 1, 3, mode="other")


# --- tilting -------------------------------------------------------------------

TILT_CASES = [(W2, j) for j in range(3)] + [(S3, j) for j in range(4)] + [(H2, j) for j in range(2)] + [(H4, j) for j in range(3)]


def tilt_label(cfg, j):
    base = ch.LabeledWeight.exceptional(cfg, j)
    return base if cfg.xkind == "H" else ch.dual_label(cfg, base)


@pytest.mark.parametrize("cfg,j", TILT_CASES, ids=lambda v: str(v) if isinstance(v, int) else f"{v.xkind}{v.n}")
def test_tilting_sum_matches_closed_form(cfg, j):
    x = tilt_label(cfg, j)
    assert ch.ch_tilting(cfg, x, 3) == ch.tilting_closed_form(cfg, x, 3)


def test_tilting_multiplicities():
    generic = lw(W2, (1,), (1, 0), (1, 0))
    assert ch.tilting_multiplicities(W2, generic) == {generic: 1}
    assert ch.ch_tilting(W2, generic, 3) == ch.ch_standard(W2, generic, 3)
    x = tilt_label(H2, 1)
    mults = {k.mu: v for k, v in ch.tilting_multiplicities(H2, x).items()}
    assert mults == {(1,): 2, (0,): 1}
    y = tilt_label(W2, 1)
    assert sorted(ch.tilting_multiplicities(W2, y).values()) == [1, 1]


def test_literal_tilting_pattern_does_not_apply():
    for cfg, j in TILT_CASES:
        x = tilt_label(cfg, j)
        try:
            same = ch.tilting_closed_form(cfg, x, 3, literal=True) == ch.ch_tilting(cfg, x, 3)
        except ValueError:
            same = False
        if cfg.xkind != "H" and j == 0:
            continue
        assert not same, (cfg, j)


def test_add_eps():
    assert ch.add_eps(W2, (0, 0), 2) == (0, 1)
    assert ch.add_eps(S3, (0, 0), 3) == (-1, -1)
    with pytest.raises(ValueError):
        ch.add_eps(H2, (0,), 2)


def test_exceptional_indices():
    assert ch.exceptional_indices(S3, ch.LabeledWeight.exceptional(S3, 0)) == [0, 3]
    assert ch.reducible_index(W2, ch.LabeledWeight.exceptional(W2, 2)) is None
    assert ch.reducible_index(S3, ch.LabeledWeight.exceptional(S3, 3)) == 0
    assert ch.exceptional_indices(W2, lw(W2, (0,), (1, 0), (1, 0))) == []
