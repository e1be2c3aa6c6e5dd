"""Conic validation, intersection patterns, singularity profiles and local invariants.

Intersection multiplicities are read off resultants after a seeded random
change of coordinates; two independent changes must agree before a pattern is
accepted. Common points of three or more conics come from saturations, so no
point coordinates are ever needed for the profile.
"""

import random
from dataclasses import dataclass, field
from itertools import combinations
from math import comb

from .algebra import univariate as uv
from .algebra.elimination import (
    LinearChange,
    factor_binary_form,
    linear_change,
    resultant_eliminate,
    squarefree_decomposition,
)
from .algebra.linalg import bareiss_det
from .algebra.poly import Poly, PolyRing
from .errors import GenericityFailure, InputError, NotZeroDimensional, UnsupportedSingularity
from .groebner import (
    Ideal,
    StepBudget,
    hilbert_table,
    irrelevant_ideal,
    quotient_dimension,
    saturate,
)

NODE_TACNODE = "node_tacnode"
ORDINARY = "ordinary"
DEFAULT_RETRIES = 5


# -- conics ------------------------------------------------------------------

def conic_matrix(p):
    """Symmetric matrix M with p = v^T M v."""
    ring = p.ring
    M = [[ring.field.zero] * 3 for _ in range(3)]
    for e, c in p.terms.items():
        idx = [i for i, k in enumerate(e) for _ in range(k)]
        i, j = idx
        if i == j:
            M[i][i] = c
        else:
            M[i][j] = M[j][i] = c / 2
    return M


@dataclass(frozen=True, eq=False)
class Conic:
    label: str
    poly: Poly
    matrix: tuple
    det: object

    def __str__(self):
        return f"{self.label}: {self.poly}"


def validate_conic(p, label="C"):
    """Check that p is a smooth conic; degenerate conics are rejected with their rank."""
    if p.ring.nvars != 3 or not p.is_homogeneous() or p.degree != 2:
        raise InputError(f"{label}: {p} is not a homogeneous quadratic form in three variables")
    M = conic_matrix(p)
    det = bareiss_det(M)
    if not det:
        r = _rank3(M)
        kind = "line pair" if r == 2 else "double line"
        raise InputError(f"{label}: degenerate conic {p} (rank {r}, {kind})")
    return Conic(label, p, tuple(tuple(r) for r in M), det)


def _rank3(M):
    from .algebra.linalg import rank

    return rank(M)


def same_curve(p, q):
    """True when p and q are proportional."""
    if not p or not q:
        return not p and not q
    e, c = next(iter(p.terms.items()))
    d = q.coeff(e)
    if not d:
        return False
    return p.scale(d) == q.scale(c)


def arrangement_polynomial(conics):
    f = conics[0].poly
    for c in conics[1:]:
        f = f * c.poly
    return f


def _check_distinct(conics):
    for a, b in combinations(conics, 2):
        if same_curve(a.poly, b.poly):
            raise InputError(f"duplicate conic: {a.label} and {b.label} define the same curve")


# -- generic projections ------------------------------------------------------

def _change(seed, field_, attempt, salt=""):
    return LinearChange.random(random.Random(f"{seed}:{salt}:{attempt}"), field_)


def _projected_resultant(p, q, M):
    """Resultant in z after the change M, or None when M is not generic for p, q."""
    a = linear_change(p, M)
    b = linear_change(q, M)
    if a.degree_in("z") != p.degree or b.degree_in("z") != q.degree:
        return None
    res = resultant_eliminate(a, b, "z")
    if not res:
        raise InputError("the curves share a common component")
    return res


def _pattern_of(res):
    parts = []
    for factor, mult in squarefree_decomposition(res):
        parts.extend([mult] * factor.degree)
    return tuple(sorted(parts, reverse=True))


def _finest(samples):
    """Pick the finest observation seen at least twice.

    A projection that is not generic can only merge points, so the finest
    observation is the true one once two independent changes confirm it.
    """
    seen = [s for s in samples if s is not None]
    if not seen:
        return None
    best = max(seen, key=lambda s: s[0])
    return best if sum(1 for s in seen if s == best) >= 2 else None


def pairwise_pattern(A, B, seed=0, retries=DEFAULT_RETRIES):
    """Multiset of intersection multiplicities of two distinct curves (a partition of deg A * deg B)."""
    p = A.poly if isinstance(A, Conic) else A
    q = B.poly if isinstance(B, Conic) else B
    if same_curve(p, q):
        raise InputError("identical conics have no finite intersection pattern")
    field_ = p.ring.field
    samples = []
    for attempt in range(retries):
        for j in range(2):
            res = _projected_resultant(p, q, _change(seed, field_, 2 * attempt + j, "pat"))
            if res is not None:
                pat = _pattern_of(res)
                samples.append((len(pat), pat))
        best = _finest(samples)
        if best is not None:
            return best[1]
    raise GenericityFailure(f"no two agreeing generic projections within {retries} retries")


@dataclass
class IntersectionCluster:
    """Points of p = q = 0 lying over one factor of the projected resultant.

    ``multiplicity`` is the intersection multiplicity at each point and
    ``npoints`` the number of geometric points (the factor's degree).
    ``ideal`` cuts out exactly these points, in the coordinates of ``change``.
    """

    multiplicity: int
    npoints: int
    factor: Poly
    change: LinearChange
    ideal: tuple
    point: tuple = None


def _normalize_point(pt):
    for c in pt:
        if c:
            return tuple(v / c for v in pt)
    raise InputError("the zero vector is not a projective point")


def _linear_root(factor):
    """(x0, y0) with factor(x0, y0) = 0 for a linear binary form in x, y."""
    a = factor.coeff((1, 0, 0))
    b = factor.coeff((0, 1, 0))
    return (-b, a)


def _z_root(a, b, x0, y0):
    """Common z-coordinate of a(x0, y0, z) = b(x0, y0, z) = 0 (unique by genericity)."""
    def coeffs(p):
        out = [p.ring.field.zero] * (p.degree + 1)
        for e, c in p.terms.items():
            out[e[2]] = out[e[2]] + c * x0 ** e[0] * y0 ** e[1]
        return out

    g = uv.gcd(coeffs(a), coeffs(b))
    parts = uv.yun(g)
    if len(parts) != 1 or len(parts[0][0]) != 2:
        return None
    lin = parts[0][0]
    return -lin[0] / lin[1]


def intersection_clusters(p, q, seed=0, retries=DEFAULT_RETRIES):
    """Group the intersection points of two curves by resultant factor.

    Over Q the factors are irreducible, so each cluster is one Galois orbit
    and rational points come with coordinates. Over Q(s) clusters follow the
    squarefree decomposition.
    """
    field_ = p.ring.field
    samples = []
    for attempt in range(retries):
        for j in range(2):
            M = _change(seed, field_, 2 * attempt + j, "pts")
            res = _projected_resultant(p, q, M)
            if res is None:
                continue
            factors = factor_binary_form(res)
            sig = tuple(sorted((m, f.degree) for f, m in factors))
            clusters = _clusters_from(p, q, M, factors)
            if clusters is not None:
                samples.append((sum(d for _, d in sig), sig, clusters))
        best = _finest([s[:2] for s in samples])
        if best is not None:
            return next(s[2] for s in samples if s[:2] == best)
    raise GenericityFailure(f"no two agreeing generic projections within {retries} retries")


def _clusters_from(p, q, M, factors):
    a = linear_change(p, M)
    b = linear_change(q, M)
    clusters = []
    for factor, mult in factors:
        point = None
        if factor.degree == 1:
            x0, y0 = _linear_root(factor)
            z0 = _z_root(a, b, x0, y0)
            if z0 is None:
                return None
            point = _normalize_point(M.apply_point((x0, y0, z0)))
        clusters.append(IntersectionCluster(mult, factor.degree, factor, M, (a, b, factor), point))
    return clusters


@dataclass
class CommonPoints:
    scheme_length: int
    distinct: int


def common_point_count(conics, seed=0, retries=DEFAULT_RETRIES, budget=None):
    """Points common to all given curves.

    ``scheme_length`` is the degree of the saturated ideal they generate;
    ``distinct`` counts geometric points, read from the squarefree part of
    the gcd of projected resultants (checked against a second projection).
    """
    polys = [c.poly if isinstance(c, Conic) else c for c in conics]
    if len(polys) < 2:
        raise InputError("need at least two curves")
    for a, b in combinations(polys, 2):
        if same_curve(a, b):
            raise InputError("common points of a repeated curve are not finite")
    ring = polys[0].ring
    budget = budget if isinstance(budget, StepBudget) else StepBudget(budget)
    sat = saturate(Ideal(polys, ring), irrelevant_ideal(ring), budget)
    if sat.is_unit(budget):
        return CommonPoints(0, 0)
    table = hilbert_table(sat, 4 * max(p.degree for p in polys) ** 2, budget=budget)
    length = table.stable_value
    field_ = ring.field
    samples = []
    for attempt in range(retries):
        for j in range(2):
            M = _change(seed, field_, 2 * attempt + j, "common")
            moved = [linear_change(p, M) for p in polys]
            if moved[0].degree_in("z") != polys[0].degree:
                continue
            form = _eliminate_z(saturate(Ideal(moved, ring), irrelevant_ideal(ring), budget), budget)
            n = sum(f.degree for f, _ in squarefree_decomposition(form)) if form.degree > 0 else 0
            samples.append((n,))
        best = _finest(samples)
        if best is not None:
            if best[0] > length:
                raise AssertionError("more distinct points than the scheme length")
            return CommonPoints(length, best[0])
    raise GenericityFailure(f"no two agreeing generic projections within {retries} retries")


def _eliminate_z(ideal, budget):
    """Binary form in x, y whose roots are the projections from (0:0:1) of V(ideal)."""
    ring = ideal.ring
    zring = PolyRing(ring.field, ("z", "x", "y"))
    perm = [1, 2, 0]
    gb = Ideal([g.to_ring(zring, perm) for g in ideal.groebner(budget)], zring, "elim").groebner(budget)
    form = None
    for g in gb:
        if all(e[0] == 0 for e in g.terms):
            h = Poly(ring, {(e[1], e[2], 0): c for e, c in g.terms.items()})
            form = h if form is None else _binary_gcd(form, h)
    if form is None:
        raise InputError("elimination ideal is zero: the points are not finite")
    return form


def triple_common_count(A, B, C, seed=0, retries=DEFAULT_RETRIES, budget=None):
    """Number of distinct points common to three distinct smooth conics."""
    for a, b in combinations((A, B, C), 2):
        if same_curve(a.poly, b.poly):
            raise InputError(f"{a.label} and {b.label} coincide; three distinct conics are required")
    return common_point_count((A, B, C), seed, retries, budget).distinct


# -- profiles --------------------------------------------------------------

NODE_TACNODE_PATTERNS = {(1, 1, 1, 1), (2, 1, 1), (2, 2)}


@dataclass
class SingularityProfile:
    k: int
    pair_patterns: dict
    n: int
    t: int
    classification: str
    t_r: dict = None
    all_through_one_point: bool = False

    def to_dict(self):
        return {
            "k": self.k,
            "pair_patterns": {f"{i},{j}": list(p) for (i, j), p in sorted(self.pair_patterns.items())},
            "n": self.n,
            "t": self.t,
            "classification": self.classification,
            "t_r": {str(r): v for r, v in sorted(self.t_r.items())} if self.t_r is not None else None,
            "all_through_one_point": self.all_through_one_point,
        }


def profile(conics, mode=NODE_TACNODE, seed=0, retries=DEFAULT_RETRIES, budget=None):
    """Singularity profile of an arrangement of smooth conics.

    In node/tacnode mode every pairwise pattern must be [1,1,1,1], [2,1,1] or
    [2,2] and no three conics may share a point. In ordinary mode every pair
    must be transversal; t_r then follows by inclusion-exclusion over subsets.
    """
    conics = list(conics)
    k = len(conics)
    if k < 2:
        raise InputError("an arrangement needs at least two conics")
    _check_distinct(conics)
    budget = budget if isinstance(budget, StepBudget) else StepBudget(budget)
    patterns = {}
    for (i, a), (j, b) in combinations(enumerate(conics), 2):
        patterns[(i, j)] = pairwise_pattern(a, b, seed, retries)
    if mode == NODE_TACNODE:
        for (i, j), pat in patterns.items():
            if pat not in NODE_TACNODE_PATTERNS:
                raise UnsupportedSingularity(
                    f"unsupported singularity: {conics[i].label} and {conics[j].label} "
                    f"meet with pattern {list(pat)}"
                )
        for tri in combinations(range(k), 3):
            cnt = triple_common_count(*(conics[i] for i in tri), seed=seed, retries=retries, budget=budget)
            if cnt:
                labels = ", ".join(conics[i].label for i in tri)
                raise UnsupportedSingularity(
                    f"unsupported singularity: {labels} share {cnt} common point(s)"
                )
        n = sum(p.count(1) for p in patterns.values())
        t = sum(p.count(2) for p in patterns.values())
        return SingularityProfile(k, patterns, n, t, NODE_TACNODE)
    if mode == ORDINARY:
        for (i, j), pat in patterns.items():
            if pat != (1, 1, 1, 1):
                raise UnsupportedSingularity(
                    f"unsupported singularity: {conics[i].label} and {conics[j].label} are "
                    f"tangent (pattern {list(pat)}); ordinary mode needs transversal pairs"
                )
        t_r, everyone = _ordinary_counts(conics, seed, retries, budget)
        return SingularityProfile(k, patterns, t_r.get(2, 0), 0, ORDINARY, t_r, everyone)
    raise InputError(f"unknown mode {mode!r}")


def _ordinary_counts(conics, seed, retries, budget):
    k = len(conics)
    counts = {}
    for pair in combinations(range(k), 2):
        counts[pair] = 4
    N = {2: 4 * comb(k, 2)}
    for size in range(3, k + 1):
        total = 0
        for sub in combinations(range(k), size):
            if any(counts.get(s, 1) == 0 for s in combinations(sub, size - 1)):
                counts[sub] = 0
                continue
            c = common_point_count([conics[i] for i in sub], seed, retries, budget).distinct
            counts[sub] = c
            total += c
        N[size] = total
    # N_j = sum_r C(r, j) t_r, inverted over j >= r
    t_r = {}
    for r in range(2, k + 1):
        val = sum((-1) ** (j - r) * comb(j, r) * N[j] for j in range(r, k + 1))
        if val:
            t_r[r] = val
    everyone = counts[tuple(range(k))] > 0
    return t_r, everyone


def combinatorial_check(k, n, t):
    """The count 4 * C(k, 2) = n + 2t for k conics with n nodes and t tacnodes."""
    return 4 * comb(k, 2) == n + 2 * t


# -- local invariants ---------------------------------------------------------

SMOOTH = "smooth"
NODE = "node A1"
TACNODE = "tacnode A3"
OTHER = "other"


@dataclass
class LocalInvariants:
    point: tuple
    mu: int
    tau_local: int
    multiplicity: int
    type_tag: str

    @property
    def is_smooth(self):
        return self.type_tag == SMOOTH

    def to_dict(self):
        from .algebra.scalars import format_scalar

        return {
            "point": [format_scalar(c) for c in self.point],
            "mu": self.mu,
            "tau": self.tau_local,
            "multiplicity": self.multiplicity,
            "type": self.type_tag,
        }


def _dehomogenize(g, ring2):
    return Poly(ring2, {(e[0], e[1]): c for e, c in g.terms.items()})


def _power_gens(gens, n):
    """Generators of the ideal <gens>^n."""
    from itertools import combinations_with_replacement

    out = []
    seen = set()
    for combo in combinations_with_replacement(range(len(gens)), n):
        p = gens[combo[0]]
        for i in combo[1:]:
            p = p * gens[i]
        key = frozenset(p.terms.items())
        if key not in seen:
            seen.add(key)
            out.append(p)
    return out


def local_length(gens, point_ideal, method="truncation", budget=None, cap=64):
    """Length of S/<gens> localized at the closed point(s) cut out by ``point_ideal``.

    ``saturation``: dim S/J - dim S/(J : q^inf), which needs S/J finite.
    ``truncation``: dim S/(J + q^N) for N = 1, 2, ... until two consecutive
    values agree (by Nakayama the repeat value is the local length).
    """
    ring = gens[0].ring
    budget = budget if isinstance(budget, StepBudget) else StepBudget(budget)
    J = Ideal(gens, ring)
    if method == "saturation":
        total = quotient_dimension(J, budget)
        away = saturate(J, Ideal(point_ideal, ring), budget)
        rest = 0 if away.is_unit(budget) else quotient_dimension(away, budget)
        return total - rest
    if method == "truncation":
        prev = None
        for n in range(1, cap + 1):
            cur = quotient_dimension(Ideal(list(gens) + _power_gens(list(point_ideal), n), ring), budget)
            if cur == prev:
                return cur
            prev = cur
        raise NotZeroDimensional("the point is not an isolated zero (truncation did not stabilize)")
    raise InputError(f"unknown method {method!r}")


def _initial_form_squarefree(h, m):
    form = h.homogeneous_part(m)
    parts = squarefree_decomposition(form, ("x", "y"))
    return all(mult == 1 for _, mult in parts)


def local_invariants(f, point, seed=0, method="truncation", retries=DEFAULT_RETRIES, budget=None):
    """Milnor and Tjurina numbers of the curve f = 0 at a rational point.

    The point is moved to (0:0:1) by a seeded random change and f is
    dehomogenized there. A smooth point returns the ``smooth`` tag with
    mu = tau = 0 and multiplicity 1.
    """
    field_ = f.ring.field
    pt = tuple(field_.convert(c) for c in point)
    if not any(pt):
        raise InputError("(0:0:0) is not a projective point")
    if f.evaluate(pt):
        raise InputError(f"point {point} is not on the curve")
    budget = budget if isinstance(budget, StepBudget) else StepBudget(budget)
    ring2 = PolyRing(field_, ("x", "y"))
    x, y = ring2.generators()
    rng = random.Random(f"{seed}:local")
    last_error = None
    for _ in range(retries):
        M = LinearChange.random(rng, field_, third_column=pt)
        h = _dehomogenize(linear_change(f, M), ring2)
        mult = h.min_degree()
        if mult == 1:
            return LocalInvariants(_normalize_point(pt), 0, 0, 1, SMOOTH)
        hx, hy = h.derivative("x"), h.derivative("y")
        try:
            mu = local_length([hx, hy], [x, y], method, budget)
            tau = local_length([h, hx, hy], [x, y], method, budget)
        except NotZeroDimensional as exc:
            last_error = exc
            continue
        if mult == 2 and mu == 1:
            tag = NODE
        elif mult == 2 and mu == 3:
            tag = TACNODE
        elif mu == (mult - 1) ** 2 and _initial_form_squarefree(h, mult):
            tag = f"ordinary({mult})"
        else:
            tag = OTHER
        return LocalInvariants(_normalize_point(pt), mu, tau, mult, tag)
    raise NotZeroDimensional(
        f"affine Milnor ideal not zero-dimensional after {retries} charts ({last_error})"
    )


@dataclass
class OrbitInvariants:
    """Milnor/Tjurina totals over a Galois orbit (or cluster) of singular points."""

    npoints: int
    mu_total: int
    tau_total: int
    labels: tuple = ()

    @property
    def mu(self):
        return self.mu_total // self.npoints

    @property
    def tau(self):
        return self.tau_total // self.npoints


def orbit_invariants(f, point_ideal, npoints, seed=0, method="truncation", retries=DEFAULT_RETRIES, budget=None):
    """Local invariants summed over the points of V(point_ideal), which need not be rational.

    ``point_ideal`` is a list of homogeneous polynomials whose zero set is
    exactly the points in question (radicality is not needed). A seeded
    random chart puts them in the affine plane.
    """
    field_ = f.ring.field
    ring2 = PolyRing(field_, ("x", "y"))
    budget = budget if isinstance(budget, StepBudget) else StepBudget(budget)
    rng = random.Random(f"{seed}:orbit")
    last_error = None
    for _ in range(retries):
        M = LinearChange.random(rng, field_)
        moved = [linear_change(g, M) for g in point_ideal]
        at_infinity = Ideal(moved + [f.ring.gen("z")], f.ring)
        if not saturate(at_infinity, irrelevant_ideal(f.ring), budget).is_unit(budget):
            continue
        h = _dehomogenize(linear_change(f, M), ring2)
        q = [_dehomogenize(g, ring2) for g in moved]
        hx, hy = h.derivative("x"), h.derivative("y")
        try:
            mu = local_length([hx, hy], q, method, budget)
            tau = local_length([h, hx, hy], q, method, budget)
        except NotZeroDimensional as exc:
            last_error = exc
            continue
        return OrbitInvariants(npoints, mu, tau)
    raise NotZeroDimensional(f"no good affine chart after {retries} attempts ({last_error})")


@dataclass
class SingularPointSummary:
    rational: list = field(default_factory=list)
    orbits: list = field(default_factory=list)

    @property
    def tau_total(self):
        return sum(p.tau_local for p in self.rational) + sum(o.tau_total for o in self.orbits)

    @property
    def mu_total(self):
        return sum(p.mu for p in self.rational) + sum(o.mu_total for o in self.orbits)


def singular_points(conics, seed=0, method="truncation", retries=DEFAULT_RETRIES, budget=None):
    """Local invariants at every pairwise intersection point of a node/tacnode arrangement.

    Rational points are analysed one by one; the remaining points are handled
    orbit by orbit. Assumes no triple points (as in node/tacnode mode).
    """
    conics = list(conics)
    f = arrangement_polynomial(conics)
    summary = SingularPointSummary()
    for a, b in combinations(conics, 2):
        for cl in intersection_clusters(a.poly, b.poly, seed, retries):
            if cl.point is not None:
                summary.rational.append(local_invariants(f, cl.point, seed, method, retries, budget))
            else:
                fm = linear_change(f, cl.change)
                orb = orbit_invariants(fm, list(cl.ideal), cl.npoints, seed, method, retries, budget)
                orb.labels = (a.label, b.label)
                summary.orbits.append(orb)
    return summary
