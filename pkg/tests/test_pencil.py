import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from conic_lab.algebra.scalars import QQs
from conic_lab.arrangement import SMOOTH
from conic_lab.errors import InputError
from conic_lab.jacobian import freeness_report
from conic_lab.pencil import (
    Pencil,
    base_locus,
    megyesi_family,
    ordinary_experiment,
    union_of_members,
    verify_prop4,
)

from helpers import SX, SY, P


def pencil(g1, g2, params):
    return Pencil(P(g1), P(g2), params)


EXAMPLE = ("x^2 + y^2 - y*z", "(x + y)*z")
TANGENT = ("y*z - x^2", "y*z - x^2 + y^2")
OSCULATING = ("y*z - x^2", "y*z - x^2 + x*y")


def _affine_tjurina(g1, g2, params):
    """Global Tjurina count in the chart z = 1 via a sympy Groebner basis (independent oracle)."""
    gs = [sp.sympify(g.replace("^", "**")).subs("z", 1) for g in (g1, g2)]
    f = sp.expand(sp.prod([gs[0] + t * gs[1] for t in params]))
    G = sp.groebner([f, f.diff(SX), f.diff(SY)], SX, SY, order="grevlex")
    lms = [sp.Poly(g, SX, SY).monoms(order="grevlex")[0] for g in G.exprs]
    return sum(1 for i in range(80) for j in range(80) if not any(i >= a and j >= b for a, b in lms))


# -- base locus ------------------------------------------------------------------------------

def test_base_locus_of_example_pencil():
    rep = base_locus(*(P(g) for g in EXAMPLE))
    assert sorted(tuple(int(c) for c in bp.point) for bp in rep.rational) == [(0, 0, 1), (1, -1, -2)]
    assert all(bp.contact == 1 for bp in rep.rational)
    assert rep.nonrational == {(2, 1): 1}
    assert rep.total == 4 and rep.npoints == 4


def test_base_locus_contact_orders():
    assert [bp.contact for bp in base_locus(*(P(g) for g in TANGENT)).rational] == [4]
    rep = base_locus(*(P(g) for g in OSCULATING))
    assert sorted(bp.contact for bp in rep.rational) == [1, 3]


def test_pencil_validation():
    with pytest.raises(InputError):
        pencil("x^2 + y^2 - z^2", "2*x^2 + 2*y^2 - 2*z^2", [0, 1])
    with pytest.raises(InputError):
        pencil("x^2 + y^2 - z^2", "x*z", [0, 0])
    with pytest.raises(InputError):
        pencil("x^2 + y^2 - z^2", "x^3", [0])
    with pytest.raises(InputError):
        pencil("x^2 + y", "x*z", [0])


def test_union_rejects_non_reduced_members():
    # t = 1 gives the double line x^2
    with pytest.raises(InputError) as exc:
        union_of_members(pencil("x^2 + y^2", "-y^2", [0, 1]))
    assert "not reduced" in str(exc.value)
    with pytest.raises(InputError):
        union_of_members(pencil(*EXAMPLE, []))


# -- local invariants at base points ----------------------------------------------------------

@pytest.mark.parametrize("m", [2, 3, 4])
def test_transversal_base_points_are_ordinary(m):
    rows = verify_prop4(pencil(*EXAMPLE, list(range(m))))
    assert len(rows) == 2
    for r in rows:
        assert r.contact == 1 and r.mu == r.tau == (m - 1) ** 2 == r.predicted and r.ok
        assert r.type_tag == (f"ordinary({m})" if m > 2 else "node A1")


def test_single_member_is_smooth_at_base_points():
    rows = verify_prop4(pencil(*EXAMPLE, [1]))
    assert all(r.type_tag == SMOOTH and r.ok for r in rows)


def test_contact_four_two_members():
    (row,) = verify_prop4(pencil(*TANGENT, [0, 1]))
    assert (row.contact, row.mu, row.tau, row.predicted) == (4, 7, 7, 7)
    assert _affine_tjurina(*TANGENT, [0, 1]) == 7


@pytest.mark.parametrize(
    "g, params, contact, mu, tau",
    [
        # higher contact with three or more members: tau falls below (m-1)(cm-1)
        (TANGENT, [0, 1, 2], 4, 22, 21),
        (OSCULATING, [0, 1, 2], 3, 16, 15),
    ],
)
def test_higher_contact_many_members(g, params, contact, mu, tau):
    rows = [r for r in verify_prop4(pencil(*g, params)) if r.contact == contact]
    (row,) = rows
    assert (row.mu, row.tau) == (mu, tau)
    assert row.predicted == mu and not row.ok
    if g is TANGENT:
        # the only singular point in the chart is the base point
        assert _affine_tjurina(*g, params) == tau


def test_contact_two_with_linear_members():
    # g2 = g1 + x^2 exactly, so the members are weighted homogeneous in (g1, x) and the formula holds
    rows = verify_prop4(pencil("y*z - x^2", "y*z", [0, 1, 2]))
    assert all((r.mu, r.tau) == (10, 10) and r.ok for r in rows if r.contact == 2)


def test_global_tau_of_four_example_members():
    # four ordinary 4-fold points, nothing else
    f = union_of_members(pencil(*EXAMPLE, [0, 1, 2, 3]))
    assert freeness_report(f).tau == 36


# -- C2, C3, C4 families--------------------------------------------------------------------------

def test_megyesi_family_shapes():
    assert len(megyesi_family("C2")) == 2
    c3 = megyesi_family("C3")
    assert c3[0].poly.ring.field is QQs
    assert [str(c.poly) for c in megyesi_family("C2", 2)] == ["x^2 + y^2 - z^2", "1/4*x^2 + y^2 - z^2"]
    assert len(megyesi_family("c4")) == 4


@pytest.mark.parametrize("s", [0, 1, -1, "1", "-1"])
def test_forbidden_parameter_values(s):
    with pytest.raises(InputError):
        megyesi_family("C3", s)


def test_megyesi_family_errors():
    with pytest.raises(InputError):
        megyesi_family("C4", 2)
    with pytest.raises(InputError):
        megyesi_family("C5")


# -- ordinary-point experiment --------------------------------------------------------------------

def test_experiment_is_deterministic():
    a = ordinary_experiment(4, 5, seed=11)
    b = ordinary_experiment(4, 5, seed=11)
    assert [r.to_dict() for r in a.records] == [r.to_dict() for r in b.records]
    assert a.to_dict() == b.to_dict()


def test_experiment_trials_are_independent_of_batch_size():
    long = ordinary_experiment(4, 4, seed=3)
    short = ordinary_experiment(4, 2, seed=5)
    assert [r.tau for r in long.records[2:]] == [r.tau for r in short.records]


@settings(max_examples=8)
@given(st.integers(3, 5), st.integers(0, 10_000), st.booleans())
def test_mu_bounds_tau(m, seed, in_pencil):
    res = ordinary_experiment(m, 1, seed=seed, pencil=in_pencil)
    for r in res.records:
        assert r.mu == (m - 1) ** 2 >= r.tau
        assert r.delta == r.mu - r.tau


def test_pencil_members_are_quasi_homogeneous():
    res = ordinary_experiment(5, 3, seed=2, pencil=True)
    assert res.histogram == {0: 3} and not res.findings


def test_record_serialization():
    rec = ordinary_experiment(3, 1, seed=0).records[0]
    assert sorted(rec.to_dict()) == ["delta", "m", "mu", "pattern_ok", "seed", "tau", "trial"]


def test_experiment_input_errors():
    with pytest.raises(InputError):
        ordinary_experiment(2, 3)
    with pytest.raises(InputError):
        ordinary_experiment(4, 0)
