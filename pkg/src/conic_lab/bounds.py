"""Upper bounds on tacnodes of conic arrangements, evaluated in exact rational arithmetic.

Every bound is written as ``lhs <= rhs``; ``slack = rhs - lhs`` so a bound
holds exactly when its slack is nonnegative.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .arrangement import combinatorial_check
from .errors import InputError

DEFAULT_ALPHA = Fraction(1, 4)

NAIVE = "naive"
MIYAOKA = "miyaoka"
MAIN = "main_theorem"
COROLLARY = "corollary"
LANGER = "langer"
TANG = "tang"


def _q(value):
    if isinstance(value, str):
        return Fraction(value.strip())
    return Fraction(value)


def _fmt(q):
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@dataclass
class BoundEntry:
    name: str
    lhs: Fraction
    rhs: Fraction
    applicable: bool = True
    note: str = ""

    @property
    def holds(self):
        return self.lhs <= self.rhs

    @property
    def slack(self):
        return self.rhs - self.lhs

    def to_dict(self):
        return {
            "name": self.name,
            "lhs": _fmt(self.lhs),
            "rhs": _fmt(self.rhs),
            "holds": self.holds,
            "applicable": self.applicable,
            "slack": _fmt(self.slack),
            "note": self.note,
        }

    def describe(self):
        status = "holds" if self.holds else "FAILS"
        if not self.applicable:
            status += " (not applicable)"
        return (
            f"{self.name}: {_fmt(self.lhs)} <= {_fmt(self.rhs)} {status}, "
            f"slack {_fmt(self.slack)} ~ {float(self.slack):.6g}"
        )


@dataclass
class BoundsReport:
    k: int
    n: int
    t: int
    alpha: Fraction = DEFAULT_ALPHA
    entries: list = field(default_factory=list)

    def __getitem__(self, name):
        for e in self.entries:
            if e.name == name:
                return e
        raise KeyError(name)

    @property
    def violations(self):
        return [e.name for e in self.entries if e.applicable and not e.holds]

    def to_dict(self):
        return {
            "k": self.k,
            "n": self.n,
            "t": self.t,
            "alpha": _fmt(self.alpha),
            "bounds": [e.to_dict() for e in self.entries],
        }


def naive_rhs(k):
    return Fraction(k * (k - 1))


def miyaoka_rhs(k):
    return Fraction(4, 9) * k * k + Fraction(4, 3) * k


def corollary_rhs(k):
    return Fraction(k * k, 3) + 3 * k


def evaluate_bounds(k, n, t, alpha=DEFAULT_ALPHA):
    """Evaluate the naive, Miyaoka, main-theorem, corollary and Langer bounds on (k, n, t)."""
    if k < 2:
        raise InputError("an arrangement needs k >= 2 conics")
    if min(n, t) < 0:
        raise InputError("n and t must be nonnegative")
    if not combinatorial_check(k, n, t):
        raise InputError(f"inconsistent profile: 4*C({k},2) = {4 * comb(k, 2)} but n + 2t = {n + 2 * t}")
    t_ = Fraction(t)
    entries = [
        BoundEntry(NAIVE, t_, naive_rhs(k)),
        BoundEntry(MIYAOKA, t_, miyaoka_rhs(k), applicable=k >= 3),
        BoundEntry(MAIN, t_, Fraction(n, 4) + 5 * k, applicable=k >= 6),
        BoundEntry(COROLLARY, t_, corollary_rhs(k), applicable=k >= 6),
    ]
    for e in entries[2:]:
        if not e.applicable:
            e.note = "stated only for k >= 6"
    report = BoundsReport(k, n, t, _q(alpha), entries)
    if k >= 6:
        report.entries.append(langer_check(k, n, t, alpha))
    else:
        e = langer_reduced(k, n, t, _q(alpha))
        e.applicable = False
        e.note = "alpha window empty for k <= 5"
        report.entries.append(e)
    return report


def alpha_window(k):
    """Admissible alpha range [3/(2k), 1/4]; raises when it is empty."""
    lo, hi = Fraction(3, 2 * k), Fraction(1, 4)
    if k < 6 or lo > hi:
        raise InputError(f"alpha window [{_fmt(lo)}, 1/4] is empty for k={k} (needs k >= 6)")
    return lo, hi


def langer_reduced(k, n, t, alpha):
    lhs = 3 * n * (2 - alpha) + 12 * t
    rhs = 4 * (3 - alpha) * k * k - 6 * k
    return BoundEntry(LANGER, Fraction(lhs), Fraction(rhs))


def langer_raw(k, n, t, alpha):
    """Orbifold form before dividing by alpha: nodes (mu=1) and tacnodes (mu=3)."""
    e_node = (1 - alpha) ** 2
    e_tac = 1 - 2 * alpha
    lhs = 3 * n * (1 - e_node) + 3 * t * (2 * alpha + 1 - e_tac)
    d = 2 * k
    rhs = (3 * alpha - alpha * alpha) * d * d - 3 * alpha * d
    return BoundEntry(LANGER + "_raw", Fraction(lhs), Fraction(rhs))


def langer_check(k, n, t, alpha=DEFAULT_ALPHA):
    """Reduced log-Miyaoka-Yau inequality 3n(2-a) + 12t <= 4(3-a)k^2 - 6k for a in the window."""
    alpha = _q(alpha)
    lo, hi = alpha_window(k)
    if not lo <= alpha <= hi:
        raise InputError(f"alpha={_fmt(alpha)} outside the admissible window [{_fmt(lo)}, {_fmt(hi)}]")
    entry = langer_reduced(k, n, t, alpha)
    raw = langer_raw(k, n, t, alpha)
    if raw.holds != entry.holds:
        raise AssertionError("raw and reduced orbifold inequalities disagree")
    entry.note = f"alpha={_fmt(alpha)}; raw form {_fmt(raw.lhs)} <= {_fmt(raw.rhs)}"
    return entry


def tang_check(k, t_r, all_through_one_point=False):
    """t_2 + t_3 + 5k >= sum_{r>=5} (r-4) t_r, written as lhs <= rhs."""
    if k < 3:
        raise InputError("the inequality needs k >= 3 conics")
    if all_through_one_point:
        raise InputError("hypothesis violated: all conics pass through one point")
    t_r = {int(r): int(v) for r, v in t_r.items()}
    if any(v < 0 for v in t_r.values()) or any(r < 2 or r > k for r, v in t_r.items() if v):
        raise InputError("t_r must be nonnegative and supported on 2 <= r <= k")
    lhs = sum((r - 4) * v for r, v in t_r.items() if r >= 5)
    rhs = t_r.get(2, 0) + t_r.get(3, 0) + 5 * k
    return BoundEntry(TANG, Fraction(lhs), Fraction(rhs))


def crossover(k_range=range(2, 101)):
    """The k in ``k_range`` where the corollary is strictly tighter than Miyaoka's bound."""
    return [k for k in k_range if corollary_rhs(k) < miyaoka_rhs(k)]
