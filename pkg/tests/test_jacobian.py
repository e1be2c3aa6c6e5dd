import flint
import pytest
from hypothesis import given, settings, strategies as st

from conic_lab.algebra.scalars import QQs, to_mpq
from conic_lab.arrangement import singular_points
from conic_lab.errors import InputError
from conic_lab.jacobian import (
    FREE,
    NEARLY_FREE,
    NEITHER,
    build_jacobian_data,
    conic_discriminants,
    dpw_tests,
    dpw_value,
    freeness_report,
    mdr,
    syzygy_matrix,
    verdict_from_nf,
)

from helpers import C2_AT_2, C2_SYMBOLIC, C3_AT_2, C3_SYMBOLIC, C4, THREE_TRANSVERSAL, P, conics, forms, product


def _flint_rank(matrix):
    return flint.fmpq_mat([[flint.fmpq(int(to_mpq(c).numerator), int(to_mpq(c).denominator)) for c in row]
                           for row in matrix]).rank()


def _no_relation_below(f, r):
    for q in range(r):
        m, src = syzygy_matrix(f, q)
        if _flint_rank(m) < 3 * len(src):
            return False
    return True


# -- known curves --------------------------------------------------------------------------

CASES = [
    # name, polynomial, field, (mdr, tau, verdict, exponents, nf_dims)
    ("smooth conic", ["x^2 + y^2 - z^2"], "Q", (1, 0, NEARLY_FREE, (1, 1), {0: 1})),
    ("C2 s=2", C2_AT_2, "Q", (1, 6, NEARLY_FREE, (1, 3), {2: 1, 3: 1, 4: 1})),
    ("C2 over Q(s)", C2_SYMBOLIC, "Q(s)", (1, 6, NEARLY_FREE, (1, 3), {2: 1, 3: 1, 4: 1})),
    ("C3 s=2", C3_AT_2, "Q", (3, 18, NEARLY_FREE, (3, 3), {6: 1})),
    ("C3 over Q(s)", C3_SYMBOLIC, "Q(s)", (3, 18, NEARLY_FREE, (3, 3), {6: 1})),
    ("C4", C4, "Q", (4, 36, NEARLY_FREE, (4, 4), {9: 1})),
    ("three transversal conics", THREE_TRANSVERSAL, "Q", (4, 12, NEITHER, None, None)),
    # A3 braid arrangement: 4 triple points and 3 nodes, free with exponents (2, 3)
    ("braid lines", ["x", "y", "z", "x - y", "x - z", "y - z"], "Q", (2, 19, FREE, (2, 3), {})),
    # four general lines: 6 nodes
    ("four general lines", ["x", "y", "z", "x + y + z"], "Q", (2, 6, NEARLY_FREE, (2, 2), None)),
]


@pytest.mark.parametrize("name, texts, field, expected", CASES, ids=[c[0] for c in CASES])
def test_freeness_of_known_curves(name, texts, field, expected):
    r, tau, verdict, exps, nf = expected
    f = product(texts, QQs) if field == "Q(s)" else product(texts)
    rep = freeness_report(f)
    assert (rep.r, rep.tau, rep.verdict) == (r, tau, verdict)
    assert rep.dpw_verdict == verdict
    assert rep.exponents == exps
    if nf is not None:
        assert rep.nf_dims == nf


def test_relation_witness_is_a_relation():
    for texts in (C2_AT_2, C4, THREE_TRANSVERSAL):
        f = product(texts)
        r, (a, b, c) = mdr(f, return_witness=True)
        assert a * f.derivative("x") + b * f.derivative("y") + c * f.derivative("z") == f.ring.zero
        assert max(p.degree for p in (a, b, c)) == r
        assert _no_relation_below(f, r)


def test_tau_is_sum_of_local_tjurina_numbers():
    for texts in (C2_AT_2, C4, THREE_TRANSVERSAL):
        summary = singular_points(conics(texts))
        assert summary.tau_total == build_jacobian_data(product(texts)).tau


def test_nearly_free_invariants_d3_and_b():
    rep = freeness_report(product(C2_AT_2), k=2, t=2)
    assert (rep.d3, rep.b) == (3, 1)
    assert rep.discriminants == (-3, 1)


def test_non_reduced_curve_rejected():
    with pytest.raises(InputError):
        build_jacobian_data(P("(x^2 + y^2 - z^2)^2"))
    with pytest.raises(InputError):
        build_jacobian_data(P("x^2 + y"))


# -- numeric tests -------------------------------------------------------------------------

def test_dpw_numbers():
    assert dpw_value(4, 1) == 7
    assert dpw_tests(4, 1, 6) == (NEARLY_FREE, (1, 3))
    assert dpw_tests(6, 2, 19) == (FREE, (2, 3))
    assert dpw_tests(6, 4, 12) == (NEITHER, None)
    with pytest.raises(InputError):
        dpw_tests(4, 4, 0)


@given(st.integers(2, 12), st.data())
def test_conic_discriminants_never_free(k, data):
    t = data.draw(st.integers(0, k * (k - 1)))
    d_free, d_nf = conic_discriminants(k, t)
    assert d_free < 0
    assert (d_nf >= 0) == (t == k * (k - 1))
    # the free quadratic in r has no integer root
    d = 2 * k
    tau = (2 * k * (k - 1) - 2 * t) + 3 * t
    assert all(dpw_value(d, r) != tau for r in range(d))


def test_conic_discriminants_examples():
    assert conic_discriminants(2, 2) == (-3, 1)
    assert conic_discriminants(4, 12) == (-3, 1)
    assert conic_discriminants(5, 17) == (-15, -11)
    assert conic_discriminants(3, 0) == (-27, -23)


def test_conic_discriminants_range():
    with pytest.raises(InputError):
        conic_discriminants(3, 7)
    with pytest.raises(InputError):
        conic_discriminants(1, 0)


def test_verdict_from_nf():
    assert verdict_from_nf({}) == FREE
    assert verdict_from_nf({3: 1, 4: 1}) == NEARLY_FREE
    assert verdict_from_nf({3: 2}) == NEITHER


# -- definition and numeric test agree on random conic pairs ------------------------------------

@settings(max_examples=12)
@given(forms(2, max_terms=6), forms(2, max_terms=6))
def test_definition_agrees_with_dpw_on_random_pairs(a, b):
    from conic_lab.arrangement import same_curve, validate_conic
    from conic_lab.errors import ConicLabError

    try:
        validate_conic(a)
        validate_conic(b)
    except ConicLabError:
        return
    if same_curve(a, b):
        return
    rep = freeness_report(a * b)
    assert rep.verdict == rep.dpw_verdict
