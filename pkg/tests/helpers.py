"""Shared fixtures data, random strategies and independent oracles (flint, sympy) for the tests."""

import flint
import sympy as sp
from hypothesis import strategies as st

from conic_lab.algebra.parse import parse_polynomial
from conic_lab.algebra.poly import Poly, PolyRing
from conic_lab.algebra.scalars import QQ, QQs, to_mpq
from conic_lab.arrangement import validate_conic

R = PolyRing(QQ)

C2_AT_2 = ["x^2 + y^2 - z^2", "x^2/4 + y^2 - z^2"]
C2_SYMBOLIC = ["x^2 + y^2 - z^2", "x^2/s^2 + y^2 - z^2"]
C3_SYMBOLIC = C2_SYMBOLIC + ["x^2 + y^2 - s^2*z^2"]
C3_AT_2 = C2_AT_2 + ["x^2 + y^2 - 4*z^2"]
C4 = ["x*y - z^2", "x*y + z^2", "x^2 + y^2 - 2*z^2", "x^2 + y^2 + 2*z^2"]
THREE_TRANSVERSAL = ["x^2 + y^2 - z^2", "x^2 + 2*y^2 - 4*z^2", "2*x^2 + y^2 - 3*z^2"]


def P(text, field=QQ):
    return parse_polynomial(text, field)


def conics(texts, field=QQ):
    return [validate_conic(parse_polynomial(t, field), f"C{i + 1}") for i, t in enumerate(texts)]


def product(texts, field=QQ):
    f = None
    for t in texts:
        p = parse_polynomial(t, field)
        f = p if f is None else f * p
    return f


@st.composite
def polys(draw, ring=R, max_terms=5, max_deg=3, coeff=st.integers(-9, 9)):
    """Random sparse polynomials with small integer coefficients."""
    n = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(n):
        e = tuple(draw(st.integers(0, max_deg)) for _ in range(ring.nvars))
        c = draw(coeff)
        if c:
            terms[e] = ring.field.convert(c)
    return Poly(ring, terms)


@st.composite
def forms(draw, degree, ring=R, coeff=st.integers(-5, 5), max_terms=6):
    """Random homogeneous forms of a fixed degree."""
    from conic_lab.algebra.poly import monomials_of_degree

    mons = monomials_of_degree(ring.nvars, degree)
    chosen = draw(st.lists(st.sampled_from(mons), min_size=1, max_size=max_terms, unique=True))
    terms = {}
    for m in chosen:
        c = draw(coeff)
        if c:
            terms[m] = ring.field.convert(c)
    return Poly(ring, terms)



FLINT_CTX = flint.fmpq_mpoly_ctx.get(("x", "y", "z"), "degrevlex")
SX, SY, SZ = sp.symbols("x y z")


def to_flint(p):
    """Copy a Q-polynomial in x, y, z into flint's fmpq_mpoly."""
    return FLINT_CTX.from_dict(
        {e: flint.fmpq(int(to_mpq(c).numerator), int(to_mpq(c).denominator)) for e, c in p.terms.items()}
    )


def from_flint(q, ring=R):
    return Poly(ring, {tuple(e): ring.field.convert(to_mpq(c)) for e, c in q.to_dict().items()})


def to_sympy(p):
    out = 0
    for e, c in p.terms.items():
        c = to_mpq(c)
        out += sp.Rational(int(c.numerator), int(c.denominator)) * SX ** e[0] * SY ** e[1] * SZ ** e[2]
    return sp.expand(out)


def from_sympy(expr, ring=R):
    poly = sp.Poly(expr, SX, SY, SZ)
    return Poly(ring, {m: ring.field.convert(sp.Rational(c).p) / ring.field.convert(sp.Rational(c).q)
                       for m, c in poly.terms()})
