"""Pencils of curves, unions of members, base-point contact orders and the ordinary-point experiment."""

import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra.parse import parse_polynomial
from .algebra.scalars import QQ, QQs, format_scalar
from .arrangement import (
    DEFAULT_RETRIES,
    SMOOTH,
    conic_matrix,
    intersection_clusters,
    local_invariants,
    same_curve,
    validate_conic,
)
from .algebra.linalg import bareiss_det
from .errors import InputError, ResourceCapExceeded
from .groebner import StepBudget, projective_dimension_at_most_zero
from .jacobian import jacobian_ideal

FORBIDDEN_S = (0, 1, -1)


def _is_reduced(f, budget=None):
    """A plane curve is reduced iff its singular locus is finite."""
    return projective_dimension_at_most_zero(jacobian_ideal(f), budget)


class Pencil:
    """Members f_i = g1 + t_i g2 for pairwise distinct parameters t_i."""

    def __init__(self, g1, g2, params=()):
        if g1.ring != g2.ring:
            raise InputError("g1 and g2 live in different rings")
        for g in (g1, g2):
            if not g or not g.is_homogeneous():
                raise InputError("pencil generators must be nonzero homogeneous forms")
        if g1.degree != g2.degree:
            raise InputError(f"generators have different degrees ({g1.degree} and {g2.degree})")
        if same_curve(g1, g2):
            raise InputError("g1 and g2 define the same curve")
        field_ = g1.ring.field
        params = [field_.convert(t) for t in params]
        if len(set(params)) != len(params):
            raise InputError("duplicate pencil parameters")
        self.g1, self.g2, self.params = g1, g2, params

    @property
    def degree(self):
        return self.g1.degree

    def member(self, t):
        return self.g1 + self.g2.scale(self.g1.ring.field.convert(t))

    def members(self):
        return [self.member(t) for t in self.params]


@dataclass
class BasePoint:
    point: tuple
    contact: int

    def to_dict(self):
        return {"point": [format_scalar(c) for c in self.point], "contact": self.contact}


@dataclass
class BaseLocusReport:
    """Rational base points with contact orders, and counts of the remaining points.

    ``nonrational`` maps (class degree, contact order) to the number of
    classes; over Q(s) a class is a squarefree piece rather than an orbit.
    """

    degree: int
    rational: list = field(default_factory=list)
    nonrational: dict = field(default_factory=dict)

    @property
    def total(self):
        return sum(p.contact for p in self.rational) + sum(
            deg * c * cnt for (deg, c), cnt in self.nonrational.items()
        )

    @property
    def npoints(self):
        return len(self.rational) + sum(deg * cnt for (deg, _), cnt in self.nonrational.items())

    def to_dict(self):
        return {
            "degree": self.degree,
            "rational": [p.to_dict() for p in self.rational],
            "nonrational": [
                {"class_degree": deg, "contact": c, "classes": cnt}
                for (deg, c), cnt in sorted(self.nonrational.items())
            ],
            "total": self.total,
        }


def base_locus(g1, g2, seed=0, retries=DEFAULT_RETRIES):
    """Base points of the pencil spanned by g1, g2 and the contact order at each."""
    if same_curve(g1, g2):
        raise InputError("g1 and g2 share a component")
    clusters = intersection_clusters(g1, g2, seed, retries)
    report = BaseLocusReport(g1.degree)
    for cl in clusters:
        if cl.point is not None:
            report.rational.append(BasePoint(cl.point, cl.multiplicity))
        else:
            key = (cl.npoints, cl.multiplicity)
            report.nonrational[key] = report.nonrational.get(key, 0) + 1
    report.rational.sort(key=lambda p: [str(c) for c in p.point])
    if report.total != g1.degree * g2.degree:
        raise AssertionError(f"Bezout total {report.total} != {g1.degree * g2.degree}")
    return report


def union_of_members(pencil, budget=None):
    """Product of the selected members, after checking each is reduced and all are distinct."""
    members = pencil.members()
    if not members:
        raise InputError("no pencil parameters given")
    budget = budget if isinstance(budget, StepBudget) else StepBudget(budget)
    for t, f in zip(pencil.params, members):
        if not f or f.degree != pencil.degree:
            raise InputError(f"member t={format_scalar(t)} degenerates")
        if not _is_reduced(f, budget):
            raise InputError(f"member t={format_scalar(t)} is not reduced")
    for i in range(len(members)):
        for j in range(i):
            if same_curve(members[i], members[j]):
                raise InputError("coincident pencil members")
    out = members[0]
    for f in members[1:]:
        out = out * f
    return out


@dataclass
class Prop4Row:
    point: tuple
    contact: int
    m: int
    predicted: int
    mu: int
    tau: int
    type_tag: str

    @property
    def ok(self):
        if self.m == 1:
            return self.type_tag == SMOOTH
        return self.mu == self.tau == self.predicted

    def to_dict(self):
        return {
            "point": [format_scalar(c) for c in self.point],
            "contact": self.contact,
            "m": self.m,
            "predicted": self.predicted,
            "mu": self.mu,
            "tau": self.tau,
            "type": self.type_tag,
            "ok": self.ok,
        }


def _smooth_at(f, point):
    return any(f.derivative(v).evaluate(point) for v in f.ring.gens)


def verify_prop4(pencil, seed=0, method="truncation", retries=DEFAULT_RETRIES, budget=None):
    """Compare mu, tau of the union at each rational base point with (m-1)(cm-1).

    Only rational base points are analysed; the report says nothing about the
    others.
    """
    union = union_of_members(pencil, budget)
    m = len(pencil.params)
    rows = []
    for bp in base_locus(pencil.g1, pencil.g2, seed, retries).rational:
        for f in pencil.members():
            if not _smooth_at(f, bp.point):
                raise InputError(f"a member is singular at base point {bp.point}")
        li = local_invariants(union, bp.point, seed, method, retries, budget)
        c = bp.contact
        rows.append(Prop4Row(bp.point, c, m, (m - 1) * (c * m - 1), li.mu, li.tau_local, li.type_tag))
    return rows


def megyesi_family(kind, s=None):
    """The conic arrangements C2, C3 (parameter s) and C4.

    Without ``s`` the C2/C3 conics are built over Q(s).
    """
    kind = kind.upper()
    if kind == "C4":
        if s is not None:
            raise InputError("C4 has no parameter")
        texts = ["x*y - z^2", "x*y + z^2", "x^2 + y^2 - 2*z^2", "x^2 + y^2 + 2*z^2"]
        return [validate_conic(parse_polynomial(t, QQ), f"C{i + 1}") for i, t in enumerate(texts)]
    if kind not in ("C2", "C3"):
        raise InputError(f"unknown family {kind!r} (use C2, C3 or C4)")
    if s is None:
        field_, sval = QQs, "s"
    else:
        sq = Fraction(s) if not isinstance(s, str) else Fraction(s.strip())
        if sq in FORBIDDEN_S:
            raise InputError(f"s={s} is forbidden (s must avoid 0, 1 and -1)")
        field_, sval = QQ, f"({sq})"
    texts = ["x^2 + y^2 - z^2", f"x^2/{sval}^2 + y^2 - z^2"]
    if kind == "C3":
        texts.append(f"x^2 + y^2 - {sval}^2*z^2")
    return [validate_conic(parse_polynomial(t, field_), f"C{i + 1}") for i, t in enumerate(texts)]


# -- ordinary m-fold points --------------------------------------------------

COEFF_RANGE = (-20, 20)
MAX_REJECTIONS = 10_000


@dataclass
class ExperimentRecord:
    m: int
    trial: int
    seed: int
    mu: int
    tau: int

    @property
    def delta(self):
        return self.mu - self.tau

    @property
    def pattern_ok(self):
        return self.tau >= (self.m - 1) ** 2 - self.m + 4

    @property
    def question_ok(self):
        return self.delta in (0, self.m - 4)

    def to_dict(self):
        return {
            "m": self.m,
            "trial": self.trial,
            "seed": self.seed,
            "mu": self.mu,
            "tau": self.tau,
            "delta": self.delta,
            "pattern_ok": self.pattern_ok,
        }


@dataclass
class ExperimentResult:
    m: int
    seed: int
    pencil: bool
    records: list

    @property
    def histogram(self):
        return dict(sorted(Counter(r.delta for r in self.records).items()))

    @property
    def findings(self):
        """Records outside the observed pattern (m >= 4) or the open question's prediction (m >= 5).

        For m = 3 the pattern bound exceeds mu itself, so it is not counted.
        """
        return [
            r for r in self.records
            if (r.m >= 4 and not r.pattern_ok) or (r.m >= 5 and not r.question_ok)
        ]

    def to_dict(self):
        return {
            "m": self.m,
            "seed": self.seed,
            "pencil": self.pencil,
            "trials": len(self.records),
            "histogram": {str(k): v for k, v in self.histogram.items()},
            "findings": [r.to_dict() for r in self.findings],
        }


def _conic_through_origin(rng, lam, ring):
    """a x^2 + b xy + c y^2 + u (lam x - y) z: passes through (0:0:1) with tangent y = lam x."""
    lo, hi = COEFF_RANGE
    a, b, c = (rng.randint(lo, hi) for _ in range(3))
    u = 0
    while u == 0:
        u = rng.randint(lo, hi)
    x, y, z = ring.generators()
    return x * x * a + x * y * b + y * y * c + (x * lam - y) * z * u


def _smooth_conic(p):
    return bool(bareiss_det(conic_matrix(p)))


def sample_ordinary_conics(m, rng, pencil=False):
    """m smooth conics through (0:0:1) with pairwise distinct tangent lines there."""
    from .algebra.poly import PolyRing

    ring = PolyRing(QQ)
    lo, hi = COEFF_RANGE
    for _ in range(MAX_REJECTIONS):
        lams = set()
        while len(lams) < (2 if pencil else m):
            lams.add(Fraction(rng.randint(lo, hi), rng.randint(1, hi)))
        lams = sorted(lams)
        gens = [_conic_through_origin(rng, QQ.convert(l), ring) for l in lams]
        if pencil:
            ts = rng.sample(range(lo, hi + 1), m)
            conics = [gens[0] + gens[1].scale(QQ.convert(t)) for t in ts]
        else:
            conics = gens
        if all(p.degree == 2 and _smooth_conic(p) for p in conics) and _distinct_tangents(conics):
            return conics
    raise ResourceCapExceeded("rejection_sampling", MAX_REJECTIONS, "no admissible conic sample")


def _distinct_tangents(conics):
    # tangent at (0:0:1) is the linear part d x + e y of the dehomogenized conic
    seen = set()
    for p in conics:
        d, e = p.coeff((1, 0, 1)), p.coeff((0, 1, 1))
        if not d and not e:
            return False
        key = ("inf",) if not e else (d / e,)
        if key in seen:
            return False
        seen.add(key)
    return True


def ordinary_experiment(m, trials, seed=0, pencil=False, method="truncation", budget=None):
    """mu and tau at an ordinary m-fold point made of m random conics through (0:0:1).

    Trial i uses the seed ``seed + i``. With ``pencil`` the conics are members
    of one random pencil.
    """
    if m < 3:
        raise InputError("m must be at least 3")
    if trials < 1:
        raise InputError("trials must be at least 1")
    records = []
    for trial in range(trials):
        tseed = seed + trial
        rng = random.Random(tseed)
        conics = sample_ordinary_conics(m, rng, pencil)
        f = conics[0]
        for p in conics[1:]:
            f = f * p
        li = local_invariants(f, (0, 0, 1), seed=tseed, method=method, budget=budget)
        if li.mu != (m - 1) ** 2 or li.multiplicity != m:
            raise AssertionError(f"trial {trial}: expected an ordinary {m}-fold point, got {li}")
        records.append(ExperimentRecord(m, trial, tseed, li.mu, li.tau_local))
    return ExperimentResult(m, seed, pencil, records)
