"""Buchberger Groebner bases and the ideal operations built on them.

Polynomials are handled internally as plain ``{exponent: coeff}`` dicts so the
inner reduction loop avoids object churn. The public surface works with
:class:`~conic_lab.algebra.poly.Poly` and :class:`Ideal`.
"""

import os
from dataclasses import dataclass, field
from itertools import product

from .algebra.poly import ORDERS, Poly, PolyRing, count_monomials, monomials_of_degree
from .algebra.scalars import RatFunc
from .errors import InputError, NotZeroDimensional, ResourceCapExceeded

STEP_BUDGET_ENV = "CONIC_LAB_STEP_BUDGET"
SATURATION_CAP = 50
TAG = "_t"


def default_step_budget():
    return int(os.environ.get(STEP_BUDGET_ENV, 10**6))


class StepBudget:
    """Counts elementary reduction steps; raises once ``limit`` is passed."""

    def __init__(self, limit=None):
        self.limit = default_step_budget() if limit is None else int(limit)
        self.used = 0

    def tick(self):
        self.used += 1
        if self.used > self.limit:
            raise ResourceCapExceeded("buchberger_steps", self.limit)


def _budget(budget):
    if isinstance(budget, StepBudget):
        return budget
    return StepBudget(budget)


def _inverse(c):
    return c.inverse() if isinstance(c, RatFunc) else 1 / c


def _divides(a, b):
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def _monic(p, key):
    lm = max(p, key=key)
    c = p[lm]
    if c == 1:
        return lm, p
    inv = _inverse(c)
    return lm, {e: a * inv for e, a in p.items()}


def _reduce(p, basis, key, budget, full=True):
    """Remainder of p on division by ``basis`` (a list of monic (lm, dict))."""
    p = dict(p)
    rem = {}
    while p:
        m = max(p, key=key)
        c = p[m]
        for lm, g in basis:
            if _divides(lm, m):
                budget.tick()
                shift = tuple(x - y for x, y in zip(m, lm))
                del p[m]
                for e, a in g.items():
                    if e is lm or e == lm:
                        continue
                    e2 = tuple(x + y for x, y in zip(e, shift))
                    v = p.get(e2)
                    if v is None:
                        p[e2] = -c * a
                    else:
                        v = v - c * a
                        if v:
                            p[e2] = v
                        else:
                            del p[e2]
                break
        else:
            if not full:
                rem.update(p)
                return rem
            rem[m] = c
            del p[m]
    return rem


def _spoly(f, g, key):
    (lf, pf), (lg, pg) = f, g
    lcm = _lcm(lf, lg)
    sf = tuple(x - y for x, y in zip(lcm, lf))
    sg = tuple(x - y for x, y in zip(lcm, lg))
    out = {}
    for e, a in pf.items():
        out[tuple(x + y for x, y in zip(e, sf))] = a
    for e, a in pg.items():
        e2 = tuple(x + y for x, y in zip(e, sg))
        v = out.get(e2)
        if v is None:
            out[e2] = -a
        else:
            v = v - a
            if v:
                out[e2] = v
            else:
                del out[e2]
    return out


def _buchberger(polys, key, budget):
    basis = []
    for p in polys:
        if p:
            basis.append(_monic(p, key))
    pending = {(i, j) for j in range(len(basis)) for i in range(j)}
    lcm_key = {}

    def pair_key(ij):
        k = lcm_key.get(ij)
        if k is None:
            i, j = ij
            k = (key(_lcm(basis[i][0], basis[j][0])), j, i)
            lcm_key[ij] = k
        return k

    while pending:
        ij = min(pending, key=pair_key)
        pending.discard(ij)
        i, j = ij
        li, lj = basis[i][0], basis[j][0]
        # product criterion
        if all(x == 0 or y == 0 for x, y in zip(li, lj)):
            continue
        lcm = _lcm(li, lj)
        # chain criterion
        chain = False
        for k, (lk, _) in enumerate(basis):
            if k == i or k == j or not _divides(lk, lcm):
                continue
            if (min(i, k), max(i, k)) not in pending and (min(j, k), max(j, k)) not in pending:
                chain = True
                break
        if chain:
            continue
        h = _reduce(_spoly(basis[i], basis[j], key), basis, key, budget)
        if h:
            n = len(basis)
            basis.append(_monic(h, key))
            pending.update((m, n) for m in range(n))
    return _interreduce(basis, key, budget)


def _interreduce(basis, key, budget):
    minimal = []
    for idx, (lm, p) in enumerate(basis):
        dominated = False
        for jdx, (lm2, _) in enumerate(basis):
            if jdx == idx:
                continue
            if _divides(lm2, lm) and (lm2 != lm or jdx < idx):
                dominated = True
                break
        if not dominated:
            minimal.append((lm, p))
    reduced = []
    for idx, (lm, p) in enumerate(minimal):
        others = [g for k, g in enumerate(minimal) if k != idx]
        tail = {e: c for e, c in p.items() if e != lm}
        tail = _reduce(tail, others, key, budget)
        tail[lm] = p[lm]
        reduced.append((lm, tail))
    reduced.sort(key=lambda g: key(g[0]), reverse=True)
    return reduced


def _key(order):
    return ORDERS[order] if isinstance(order, str) else order


def buchberger(polys, order="grevlex", budget=None):
    """Reduced Groebner basis (monic, sorted by descending leading monomial)."""
    polys = list(polys)
    if not polys:
        return []
    ring = polys[0].ring
    key = _key(order)
    gb = _buchberger([p.terms for p in polys], key, _budget(budget))
    return [Poly(ring, p) for _, p in gb]


class Ideal:
    """An ideal given by generators; its reduced Groebner basis is computed once and cached."""

    def __init__(self, generators, ring=None, order="grevlex"):
        gens = [g for g in generators]
        if ring is None:
            if not gens:
                raise InputError("the ring of an ideal with no generators must be given")
            ring = gens[0].ring
        for g in gens:
            if g.ring != ring:
                raise InputError("ideal generators live in different rings")
        self.generators = tuple(g for g in gens if g)
        self.ring = ring
        self.order = order
        self._gb = None

    def groebner(self, budget=None):
        if self._gb is None:
            self._gb = tuple(buchberger(self.generators, self.order, budget))
        return self._gb

    @property
    def key(self):
        return _key(self.order)

    def leading_monomials(self, budget=None):
        key = self.key
        return [max(g.terms, key=key) for g in self.groebner(budget)]

    def normal_form(self, p, budget=None):
        return normal_form(p, self, budget)

    def contains(self, p, budget=None):
        return not self.normal_form(p, budget)

    def is_unit(self, budget=None):
        gb = self.groebner(budget)
        return len(gb) == 1 and gb[0].is_constant()

    def is_zero(self):
        return not self.generators

    def is_homogeneous(self):
        return all(g.is_homogeneous() for g in self.generators)

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.ring == other.ring and self.groebner() == other.groebner()

    def __hash__(self):
        return hash((self.ring, self.groebner()))

    def __repr__(self):
        return f"Ideal({', '.join(str(g) for g in self.generators)})"

    def __add__(self, other):
        extra = other.generators if isinstance(other, Ideal) else tuple(other)
        return Ideal(self.generators + tuple(extra), self.ring, self.order)


def normal_form(p, ideal, budget=None):
    """Full remainder of p modulo the reduced Groebner basis of ``ideal``."""
    key = ideal.key
    basis = [(max(g.terms, key=key), g.terms) for g in ideal.groebner(budget)]
    return Poly(p.ring, _reduce(p.terms, basis, key, _budget(budget)))


def irrelevant_ideal(ring):
    return Ideal(ring.generators(), ring)


def maximal_ideal_at_origin(ring):
    return irrelevant_ideal(ring)


def _tag_ring(ring):
    if len(ring.gens) + 1 > 6:
        raise InputError("at most 6 variables including the elimination tag")
    return PolyRing(ring.field, (TAG,) + ring.gens)


def intersect(I, J, budget=None):
    """I cap J as (t*I + (1-t)*J) cap S, eliminating the tag variable t."""
    ring = I.ring
    if I.is_zero() or J.is_zero():
        return Ideal([], ring, I.order)
    if I.is_unit(budget):
        return J
    if J.is_unit(budget):
        return I
    big = _tag_ring(ring)
    shift = list(range(1, ring.nvars + 1))
    t = big.gen(0)
    gens = [t * g.to_ring(big, shift) for g in I.generators]
    gens += [(big.one - t) * g.to_ring(big, shift) for g in J.generators]
    gb = buchberger(gens, "elim", budget)
    keep = []
    for g in gb:
        if all(e[0] == 0 for e in g.terms):
            keep.append(Poly(ring, {e[1:]: c for e, c in g.terms.items()}))
    return Ideal(keep, ring, I.order)


def ideal_colon(I, g, budget=None):
    """The colon ideal I : g."""
    if not g:
        raise InputError("colon by the zero polynomial")
    if g.is_constant():
        return Ideal(I.generators, I.ring, I.order)
    inter = intersect(I, Ideal([g], I.ring), budget)
    return Ideal([h.exquo(g) for h in inter.groebner(budget)], I.ring, I.order)


def saturate_by(I, g, budget=None, cap=SATURATION_CAP):
    """I : g^infinity by iterating single colons until the reduced bases repeat."""
    current = I
    for _ in range(cap):
        nxt = ideal_colon(current, g, budget)
        if nxt.groebner(budget) == current.groebner(budget):
            return current
        current = nxt
    raise ResourceCapExceeded("saturation_iterations", cap)


def saturate(I, J, budget=None, cap=SATURATION_CAP):
    """I : J^infinity, the intersection of I : g^infinity over generators g of J."""
    budget = _budget(budget)
    parts = []
    for g in J.generators:
        part = saturate_by(I, g, budget, cap)
        if part.is_unit(budget):
            continue
        parts.append(part)
    if not parts:
        return Ideal([I.ring.one], I.ring, I.order)
    result = parts[0]
    for part in parts[1:]:
        result = intersect(result, part, budget)
    return result


def quotient_dimension(I, budget=None):
    """dim_k S/I for a zero-dimensional affine ideal, counting standard monomials."""
    ring = I.ring
    lms = I.leading_monomials(budget)
    if any(not any(e) for e in lms):
        return 0
    bounds = []
    for i in range(ring.nvars):
        pure = [e[i] for e in lms if e[i] and all(k == 0 for j, k in enumerate(e) if j != i)]
        if not pure:
            raise NotZeroDimensional(
                f"quotient is not finite-dimensional: no pure power of {ring.gens[i]} "
                "among the leading monomials"
            )
        bounds.append(min(pure))
    count = 0
    for e in product(*(range(b) for b in bounds)):
        if not any(_divides(lm, e) for lm in lms):
            count += 1
    return count


def graded_dimension(I, e, budget=None):
    """dim_k (S/I)_e for a homogeneous ideal."""
    if not I.is_homogeneous():
        raise InputError("graded_dimension needs a homogeneous ideal")
    if e < 0:
        return 0
    ring = I.ring
    if I.is_zero():
        return count_monomials(ring.nvars, e)
    lms = I.leading_monomials(budget)
    return sum(1 for m in monomials_of_degree(ring.nvars, e) if not any(_divides(lm, m) for lm in lms))


@dataclass
class HilbertTable:
    dims: dict = field(default_factory=dict)
    stabilization_degree: int = None
    stable_value: int = None


def hilbert_table(I, max_degree, stop_on_repeat=True, budget=None):
    """Hilbert function of S/I up to ``max_degree``.

    With ``stop_on_repeat`` the scan stops at the first e with H(e) = H(e+1);
    that value is the stable one when I is saturated and zero-dimensional
    projectively.
    """
    table = HilbertTable()
    prev = None
    for e in range(max_degree + 1):
        h = graded_dimension(I, e, budget)
        table.dims[e] = h
        if prev is not None and h == prev and table.stable_value is None:
            table.stabilization_degree = e - 1
            table.stable_value = h
            if stop_on_repeat:
                break
        prev = h
    return table


def projective_dimension_at_most_zero(I, budget=None):
    """True when V(I) in P^2 is finite: every pair of variables carries a leading monomial."""
    lms = I.leading_monomials(budget)
    n = I.ring.nvars
    for a in range(n):
        for b in range(a + 1, n):
            if not any(all(k == 0 for j, k in enumerate(e) if j not in (a, b)) for e in lms):
                return False
    return True
