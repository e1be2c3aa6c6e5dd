"""Jacobian ideal, total Tjurina number, N(f), mdr and the freeness tests for plane curves."""

from dataclasses import dataclass, field

from .algebra.poly import monomials_of_degree
from .algebra.linalg import kernel_basis, rank
from .errors import InputError, ResourceCapExceeded
from .groebner import (
    Ideal,
    StepBudget,
    graded_dimension,
    hilbert_table,
    irrelevant_ideal,
    projective_dimension_at_most_zero,
    saturate,
)

FREE = "free"
NEARLY_FREE = "nearly_free"
NEITHER = "neither"


@dataclass
class JacobianData:
    f: object
    d: int
    jacobian: Ideal
    saturation: Ideal
    tau: int
    nf_dims: dict
    window: int
    hilbert_saturation: dict = field(default_factory=dict)

    def nf_dim(self, degree):
        return self.nf_dims.get(degree, 0)


def jacobian_ideal(f):
    return Ideal([f.derivative(v) for v in f.ring.gens], f.ring)


def build_jacobian_data(f, budget=None, window_factor=3):
    """Compute J_f, its saturation I_f, tau(C) and the graded dimensions of N(f) = I_f/J_f.

    The Hilbert function of S/I_f is scanned up to ``window_factor * d``;
    ``tau`` is its value at the first repeat.
    """
    if not f or not f.is_homogeneous() or f.degree < 1:
        raise InputError("f must be a nonzero homogeneous polynomial of positive degree")
    if f.ring.nvars != 3:
        raise InputError("plane curves live in a ring with three variables")
    budget = budget if isinstance(budget, StepBudget) else StepBudget(budget)
    d = f.degree
    J = jacobian_ideal(f)
    J.groebner(budget)
    if not projective_dimension_at_most_zero(J, budget):
        raise InputError(
            "f is not reduced: its singular locus is a curve (suspected repeated component)"
        )
    I = saturate(J, irrelevant_ideal(f.ring), budget)
    window = window_factor * d
    table = hilbert_table(I, window, stop_on_repeat=False, budget=budget)
    if table.stable_value is None:
        raise ResourceCapExceeded("degree_window", window, "Hilbert function of S/I_f did not stabilize")
    nf = {}
    for e in range(window + 1):
        diff = graded_dimension(J, e, budget) - table.dims[e]
        if diff:
            nf[e] = diff
    return JacobianData(
        f=f,
        d=d,
        jacobian=J,
        saturation=I,
        tau=table.stable_value,
        nf_dims=nf,
        window=window,
        hilbert_saturation=dict(table.dims),
    )


def syzygy_matrix(f, r):
    """Matrix of (a, b, c) in (S_r)^3 -> a f_x + b f_y + c f_z in S_{r+d-1}.

    Columns are ordered by partial derivative, then by descending grevlex
    monomial of degree r.
    """
    ring = f.ring
    partials = [f.derivative(v) for v in ring.gens]
    src = monomials_of_degree(ring.nvars, r)
    tgt = monomials_of_degree(ring.nvars, r + f.degree - 1)
    row_of = {m: i for i, m in enumerate(tgt)}
    zero = ring.field.zero
    cols = []
    for p in partials:
        for m in src:
            col = [zero] * len(tgt)
            for e, c in p.terms.items():
                col[row_of[tuple(a + b for a, b in zip(e, m))]] = c
            cols.append(col)
    rows = [[cols[j][i] for j in range(len(cols))] for i in range(len(tgt))]
    return rows, src


def mdr(f, return_witness=False):
    """Minimal degree of a Jacobian relation a f_x + b f_y + c f_z = 0.

    Scans r = 0, 1, ... and stops at the first degree whose coefficient
    matrix has a nonzero kernel; the Koszul relation caps the answer at d - 1.
    """
    if not f.is_homogeneous() or f.degree < 1:
        raise InputError("mdr needs a homogeneous polynomial of positive degree")
    ring = f.ring
    for r in range(f.degree):
        matrix, src = syzygy_matrix(f, r)
        ncols = 3 * len(src)
        if rank(matrix) < ncols:
            if not return_witness:
                return r
            vec = kernel_basis(matrix, ncols, ring.field.zero, ring.field.one)[0]
            n = len(src)
            witness = tuple(
                ring.from_dict({src[i]: vec[k * n + i] for i in range(n)}) for k in range(3)
            )
            return r, witness
    raise AssertionError("no Jacobian relation below degree d; the Koszul relation must exist")


def dpw_value(d, r):
    return (d - 1) ** 2 - r * (d - 1) + r * r


def dpw_tests(d, r, tau):
    """Numeric du Plessis-Wall tests. Returns (verdict, exponents)."""
    if d < 1 or not 0 <= r <= d - 1 or tau < 0:
        raise InputError(f"need d >= 1, 0 <= r <= d-1 and tau >= 0 (got d={d}, r={r}, tau={tau})")
    value = dpw_value(d, r)
    if value == tau:
        return FREE, (min(r, d - 1 - r), max(r, d - 1 - r))
    if value == tau + 1:
        return NEARLY_FREE, (min(r, d - r), max(r, d - r))
    return NEITHER, None


def conic_discriminants(k, t):
    """Discriminants of the free / nearly-free quadratics in r for k conics with t tacnodes.

    Returns ``(delta_free, delta_nearly_free)``; with only nodes and tacnodes,
    ``delta_free < 0`` always and ``delta_nearly_free >= 0`` exactly at
    t = k(k-1).
    """
    if k < 2:
        raise InputError("need at least two conics")
    if not 0 <= t <= k * (k - 1):
        raise InputError(f"t={t} violates 0 <= t <= k(k-1) = {k * (k - 1)}")
    gap = t - k * (k - 1)
    return 4 * gap - 3, 4 * gap + 1


def verdict_from_nf(nf_dims):
    if not any(nf_dims.values()):
        return FREE
    if all(v <= 1 for v in nf_dims.values()):
        return NEARLY_FREE
    return NEITHER


@dataclass
class FreenessReport:
    d: int
    r: int
    tau: int
    verdict: str
    dpw_verdict: str
    exponents: tuple = None
    d3: int = None
    b: int = None
    discriminants: tuple = None
    nf_dims: dict = field(default_factory=dict)
    relation: tuple = None

    @property
    def consistent(self):
        return self.verdict == self.dpw_verdict

    def to_dict(self):
        return {
            "d": self.d,
            "mdr": self.r,
            "tau": self.tau,
            "verdict": self.verdict,
            "dpw_verdict": self.dpw_verdict,
            "consistent": self.consistent,
            "exponents": list(self.exponents) if self.exponents else None,
            "d3": self.d3,
            "b": self.b,
            "discriminants": list(self.discriminants) if self.discriminants else None,
            "nf_dims": {str(k): v for k, v in sorted(self.nf_dims.items())},
            "relation": [str(p) for p in self.relation] if self.relation else None,
        }


def freeness_report(f, k=None, t=None, budget=None, data=None):
    """Decide freeness two ways: from dim N(f)_l (definition) and from the DPW numbers.

    ``k`` and ``t`` (number of conics and tacnodes) switch on the
    node/tacnode discriminants.
    """
    data = data or build_jacobian_data(f, budget)
    r, relation = mdr(f, return_witness=True)
    dpw, exps = dpw_tests(data.d, r, data.tau)
    verdict = verdict_from_nf(data.nf_dims)
    report = FreenessReport(
        d=data.d,
        r=r,
        tau=data.tau,
        verdict=verdict,
        dpw_verdict=dpw,
        exponents=exps if dpw != NEITHER else None,
        nf_dims=dict(data.nf_dims),
        relation=relation,
    )
    if dpw == NEARLY_FREE:
        report.d3 = exps[1]
        report.b = exps[1] - data.d + 2
    if k is not None and t is not None and k >= 2:
        report.discriminants = conic_discriminants(k, t)
    return report
