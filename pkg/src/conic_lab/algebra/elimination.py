"""Linear coordinate changes, Sylvester resultants and squarefree decomposition of binary forms."""

import random

import flint

from ..errors import InputError
from . import univariate as uv
from .linalg import bareiss_det, row_echelon
from .poly import Poly
from .scalars import to_mpq


class LinearChange:
    """An invertible 3x3 substitution v -> M v acting on ternary forms."""

    def __init__(self, matrix, field=None):
        rows = [list(r) for r in matrix]
        if len(rows) != 3 or any(len(r) != 3 for r in rows):
            raise InputError("a linear change needs a 3x3 matrix")
        if field is not None:
            rows = [[field.convert(c) for c in r] for r in rows]
        self.matrix = rows
        self.det = bareiss_det(rows)
        if not self.det:
            raise InputError("singular linear change (determinant 0)")

    @classmethod
    def identity(cls, field):
        return cls([[1 if i == j else 0 for j in range(3)] for i in range(3)], field)

    @classmethod
    def random(cls, rng, field, low=-9, high=9, third_column=None):
        """Seeded random invertible change with entries in [low, high].

        If ``third_column`` is given it is used verbatim, so the change sends
        (0:0:1) to that point.
        """
        if isinstance(rng, int):
            rng = random.Random(rng)
        while True:
            cols = [[rng.randint(low, high) for _ in range(3)] for _ in range(3)]
            if third_column is not None:
                cols[2] = list(third_column)
            rows = [[cols[j][i] for j in range(3)] for i in range(3)]
            if bareiss_det([[field.convert(c) for c in r] for r in rows]):
                return cls(rows, field)

    def inverse(self):
        n = 3
        aug = [list(self.matrix[i]) + [1 if i == j else 0 for j in range(n)] for i in range(n)]
        red, _ = row_echelon(aug)
        return LinearChange([row[n:] for row in red])

    def apply_point(self, point):
        return [sum((self.matrix[i][j] * point[j] for j in range(3)), 0) for i in range(3)]

    def __repr__(self):
        return f"LinearChange({self.matrix})"


def linear_change(p, M):
    """Return p(M v): each variable x_i is replaced by sum_j M[i][j] x_j."""
    if p.ring.nvars != 3:
        raise InputError("linear changes act on ternary forms")
    if not p.is_homogeneous():
        raise InputError("linear_change expects a homogeneous polynomial")
    if not isinstance(M, LinearChange):
        M = LinearChange(M, p.ring.field)
    ring = p.ring
    images = []
    for i in range(3):
        terms = {}
        for j in range(3):
            c = ring.field.convert(M.matrix[i][j])
            if c:
                e = [0, 0, 0]
                e[j] = 1
                terms[tuple(e)] = c
        images.append(Poly(ring, terms))
    return p.compose(images)


def _coeffs_in(p, i):
    """Coefficients of p viewed as a polynomial in variable i (index = power)."""
    ring = p.ring
    n = max((e[i] for e in p.terms), default=-1)
    buckets = [dict() for _ in range(n + 1)]
    for e, c in p.terms.items():
        f = list(e)
        f[i] = 0
        buckets[e[i]][tuple(f)] = c
    return [Poly(ring, b) for b in buckets]


def sylvester_matrix(p, q, v):
    i = p.ring.index(v)
    a = _coeffs_in(p, i)[::-1]
    b = _coeffs_in(q, i)[::-1]
    m, n = len(a) - 1, len(b) - 1
    zero = p.ring.zero
    size = m + n
    rows = []
    for k in range(n):
        rows.append([zero] * k + a + [zero] * (size - k - m - 1))
    for k in range(m):
        rows.append([zero] * k + b + [zero] * (size - k - n - 1))
    return rows


def resultant_eliminate(p, q, v):
    """Sylvester resultant of p and q with respect to variable v.

    Zero exactly when p and q share a component of positive degree in v.
    """
    if p.ring != q.ring:
        raise InputError("resultant of polynomials from different rings")
    if p.degree_in(v) < 1 or q.degree_in(v) < 1:
        raise InputError(f"both polynomials need positive degree in {v}")
    return bareiss_det(sylvester_matrix(p, q, v))


def _form_variables(b, variables):
    ring = b.ring
    if variables is not None:
        return [ring.index(v) for v in variables]
    used = sorted({i for e in b.terms for i, k in enumerate(e) if k})
    if len(used) > 2:
        raise InputError("squarefree_decomposition expects a binary form")
    if ring.nvars == 1:
        return used or [0]
    for i in range(ring.nvars):
        if len(used) == 2:
            break
        if i not in used:
            used.append(i)
    return sorted(used)


def squarefree_decomposition(b, variables=None):
    """Yun decomposition of a nonzero binary form (or univariate polynomial).

    Returns ``[(factor, multiplicity), ...]`` with pairwise distinct
    multiplicities in decreasing order; the product of ``factor**mult``
    equals ``b`` up to a nonzero constant.
    """
    if not b:
        raise InputError("squarefree decomposition of the zero polynomial")
    ring = b.ring
    idx = _form_variables(b, variables)
    if len(idx) == 1:
        (u,) = idx
        coeffs = [ring.field.zero] * (b.degree + 1)
        for e, c in b.terms.items():
            coeffs[e[u]] = c
        return _lift_factors(uv.yun(coeffs), ring, u, None)
    u, w = idx
    if not b.is_homogeneous():
        raise InputError("binary form must be homogeneous")
    d = b.degree
    coeffs = [ring.field.zero] * (d + 1)
    for e, c in b.terms.items():
        coeffs[e[u]] = c
    coeffs = uv.trim(coeffs)
    factors = {}
    for f, mult in _lift_factors(uv.yun(coeffs), ring, u, w):
        factors[mult] = f
    e_inf = d - (len(coeffs) - 1)
    if e_inf > 0:
        wpoly = ring.gen(w)
        factors[e_inf] = factors[e_inf] * wpoly if e_inf in factors else wpoly
    return [(factors[k], k) for k in sorted(factors, reverse=True)]


def _lift_factors(pairs, ring, u, w):
    out = []
    for coeffs, mult in pairs:
        k = len(coeffs) - 1
        terms = {}
        for i, c in enumerate(coeffs):
            if c:
                e = [0] * ring.nvars
                e[u] = i
                if w is not None:
                    e[w] = k - i
                terms[tuple(e)] = c
        out.append((Poly(ring, terms), mult))
    return out


def random_change(seed, field, attempt=0):
    return LinearChange.random(random.Random(f"{seed}:{attempt}"), field)


def factor_binary_form(b, variables=None):
    """Factor a binary form into (factor, multiplicity) pairs.

    Over Q the factors are irreducible (univariate factorization from flint);
    over Q(s) this falls back to the squarefree decomposition, whose pieces
    need not be irreducible.
    """
    ring = b.ring
    if ring.field.param is not None:
        return squarefree_decomposition(b, variables)
    if not b:
        raise InputError("factorization of the zero polynomial")
    u, w = _form_variables(b, variables)
    if not b.is_homogeneous():
        raise InputError("binary form must be homogeneous")
    d = b.degree
    coeffs = [0] * (d + 1)
    for e, c in b.terms.items():
        coeffs[e[u]] = c
    coeffs = uv.trim(coeffs)
    out = []
    if len(coeffs) > 1:
        fp = flint.fmpq_poly([flint.fmpq(int(c.numerator), int(c.denominator)) for c in map(to_mpq, coeffs)])
        _, facs = fp.factor()
        for g, mult in facs:
            gc = [to_mpq(c) for c in g.coeffs()]
            out.extend(_lift_factors([(uv.monic(gc), mult)], ring, u, w))
    e_inf = d - (len(coeffs) - 1)
    if e_inf > 0:
        out.append((ring.gen(w), e_inf))
    out.sort(key=lambda fm: (-fm[1], fm[0].degree, str(fm[0])))
    return out
