import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from conic_lab.algebra.parse import parse_polynomial
from conic_lab.algebra.poly import PolyRing
from conic_lab.algebra.scalars import QQ, QQs
from conic_lab.errors import InputError, NotZeroDimensional, ResourceCapExceeded
from conic_lab.groebner import (
    STEP_BUDGET_ENV,
    Ideal,
    StepBudget,
    buchberger,
    graded_dimension,
    hilbert_table,
    ideal_colon,
    intersect,
    irrelevant_ideal,
    normal_form,
    projective_dimension_at_most_zero,
    quotient_dimension,
    saturate,
    saturate_by,
)
from conic_lab.jacobian import jacobian_ideal

from helpers import C2_AT_2, C4, SX, SY, SZ, THREE_TRANSVERSAL, P, R, forms, from_sympy, product, to_sympy

R2 = PolyRing(QQ, ("x", "y"))


def I(*texts, ring=R):
    return Ideal([P2(t, ring) for t in texts], ring)


def P2(text, ring):
    return parse_polynomial(text, ring.field, ring.gens)


def _sympy_gb(ideal):
    G = sp.groebner([to_sympy(g) for g in ideal.generators], SX, SY, SZ, order="grevlex")
    out = []
    for g in G.exprs:
        p = from_sympy(g)
        out.append(p.monic())
    return sorted(out, key=str)


# -- reduced Groebner bases against sympy ------------------------------------------------

ideal_gens = st.lists(
    st.one_of(forms(1, coeff=st.integers(-3, 3), max_terms=3), forms(2, coeff=st.integers(-3, 3), max_terms=4)),
    min_size=1,
    max_size=3,
)


@settings(max_examples=60)
@given(ideal_gens)
def test_reduced_basis_matches_sympy(gens):
    gens = [g for g in gens if g]
    if not gens:
        return
    ours = sorted(Ideal(gens, R).groebner(), key=str)
    assert ours == _sympy_gb(Ideal(gens, R))


def test_known_basis():
    assert Ideal([P(t) for t in C2_AT_2]).groebner() == (P("x^2"), P("y^2 - z^2"))


@settings(max_examples=40)
@given(ideal_gens, st.randoms(use_true_random=False))
def test_basis_independent_of_generator_order(gens, rnd):
    gens = [g for g in gens if g]
    if not gens:
        return
    shuffled = list(gens)
    rnd.shuffle(shuffled)
    assert buchberger(gens) == buchberger(shuffled)


def test_basis_over_q_s():
    ring = PolyRing(QQs)
    gens = [P2(t, ring) for t in ("x^2 + y^2 - z^2", "x^2/s^2 + y^2 - z^2")]
    gb = Ideal(gens, ring).groebner()
    assert gb == (P2("x^2", ring), P2("y^2 - z^2", ring))


# -- normal forms and membership -------------------------------------------------------

@settings(max_examples=40)
@given(ideal_gens, forms(3, max_terms=5))
def test_normal_form_idempotent_and_congruent(gens, p):
    gens = [g for g in gens if g]
    if not gens:
        return
    ideal = Ideal(gens, R)
    r = normal_form(p, ideal)
    assert normal_form(r, ideal) == r
    assert ideal.contains(p - r)


@settings(max_examples=40)
@given(ideal_gens, forms(1, max_terms=3))
def test_multiples_are_members(gens, h):
    gens = [g for g in gens if g]
    if not gens:
        return
    ideal = Ideal(gens, R)
    assert all(ideal.contains(g * h) for g in gens)


def test_unit_ideal():
    assert Ideal([P("x"), P("x + 1")]).is_unit()
    assert not Ideal([P("x"), P("y")]).is_unit()


# -- ideal operations ------------------------------------------------------------------

def test_intersection_of_monomial_ideals():
    # lcm rule for principal monomial ideals
    assert intersect(I("x^2*y"), I("x*y^3")) == I("x^2*y^3")
    assert intersect(I("x", "y"), I("z")) == I("x*z", "y*z")


@settings(max_examples=25)
@given(ideal_gens, ideal_gens)
def test_intersection_contained_in_both(a, b):
    a, b = [g for g in a if g], [g for g in b if g]
    if not a or not b:
        return
    A, B = Ideal(a, R), Ideal(b, R)
    inter = intersect(A, B)
    assert all(A.contains(g) and B.contains(g) for g in inter.groebner())
    assert all(inter.contains(f * g) for f in a for g in b)


def test_colon_examples():
    assert ideal_colon(I("x^2", "x*y"), P("x")) == I("x", "y")
    assert saturate(I("x^2", "x*y"), I("x", "y")) == I("x")


def test_saturating_the_maximal_ideal_gives_unit():
    m = irrelevant_ideal(R)
    assert saturate(m, m).is_unit()


@settings(max_examples=25)
@given(ideal_gens)
def test_saturation_idempotent(gens):
    gens = [g for g in gens if g]
    if not gens:
        return
    m = irrelevant_ideal(R)
    once = saturate(Ideal(gens, R), m)
    assert saturate(once, m) == once


def test_saturation_cap():
    with pytest.raises(ResourceCapExceeded):
        saturate_by(I("x^5*y"), P("x"), cap=2)


# -- counting ---------------------------------------------------------------------------

def test_quotient_dimension_examples():
    assert quotient_dimension(Ideal([P2("x^2", R2), P2("y^3", R2)], R2)) == 6
    # tacnode y^2 = x^4: Milnor number 3
    h = P2("y^2 - x^4", R2)
    assert quotient_dimension(Ideal([h.derivative("x"), h.derivative("y")], R2)) == 3
    assert quotient_dimension(Ideal([R2.one], R2)) == 0


@given(st.integers(1, 4), st.integers(1, 4), st.integers(-5, 5), st.integers(-5, 5))
def test_quotient_dimension_of_generic_pair_is_bezout(a, b, c, d):
    # x^a + lower, y^b + lower: a triangular pair with exactly a*b standard monomials
    p = P2(f"x^{a} + {c}*y", R2)
    q = P2(f"y^{b} + {d}*x", R2)
    gb = Ideal([p, q], R2)
    if a > 1 and b > 1:
        assert quotient_dimension(gb) == a * b


def test_positive_dimensional_quotient_raises():
    with pytest.raises(NotZeroDimensional):
        quotient_dimension(Ideal([P2("x*y", R2)], R2))


def test_graded_dimension_counts_monomials():
    assert [graded_dimension(Ideal([], R), e) for e in range(4)] == [1, 3, 6, 10]
    assert [graded_dimension(I("x", "y"), e) for e in range(4)] == [1, 1, 1, 1]
    with pytest.raises(InputError):
        graded_dimension(I("x + 1"), 2)


FIXTURE_IDEALS = {
    "c2 pair": [P(t) for t in C2_AT_2],
    "c2 jacobian": list(jacobian_ideal(product(C2_AT_2)).generators),
    "c4 jacobian": list(jacobian_ideal(product(C4)).generators),
    "transversal jacobian": list(jacobian_ideal(product(THREE_TRANSVERSAL)).generators),
}


@pytest.mark.parametrize("name", sorted(FIXTURE_IDEALS))
def test_hilbert_first_repeat_is_stable(name):
    sat = saturate(Ideal(FIXTURE_IDEALS[name], R), irrelevant_ideal(R))
    full = hilbert_table(sat, 30, stop_on_repeat=False)
    first = hilbert_table(sat, 30)
    assert first.stable_value is not None
    e0 = first.stabilization_degree
    assert all(full.dims[e] == first.stable_value for e in range(e0, 31))


def test_scheme_length_of_tangent_pair():
    sat = saturate(Ideal([P(t) for t in C2_AT_2], R), irrelevant_ideal(R))
    assert hilbert_table(sat, 12).stable_value == 4


def test_projective_finiteness():
    assert projective_dimension_at_most_zero(jacobian_ideal(product(C4)))
    assert not projective_dimension_at_most_zero(jacobian_ideal(P("x^2*y")))


# -- resource caps -----------------------------------------------------------------------

def test_step_budget_raises():
    with pytest.raises(ResourceCapExceeded) as exc:
        saturate(jacobian_ideal(product(C4)), irrelevant_ideal(R), StepBudget(100))
    assert exc.value.cap == "buchberger_steps"


def test_step_budget_from_environment(monkeypatch):
    monkeypatch.setenv(STEP_BUDGET_ENV, "100")
    assert StepBudget().limit == 100
    with pytest.raises(ResourceCapExceeded):
        saturate(jacobian_ideal(product(C4)), irrelevant_ideal(R))
