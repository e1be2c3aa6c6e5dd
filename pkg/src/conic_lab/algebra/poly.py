"""Sparse multivariate polynomials over QQ or QQ(s).

A :class:`Poly` stores a dict mapping exponent tuples to nonzero coefficients.
That dict is the canonical representation, so two polynomials in the same
ring are equal exactly when their term dicts are equal. Polynomials are never
mutated after construction.
"""

from functools import lru_cache
from itertools import combinations_with_replacement
from math import comb

from .scalars import QQ, RatFunc, format_scalar

NEG_INF = float("-inf")


@lru_cache(maxsize=None)
def grevlex_key(e):
    return (sum(e), tuple(-a for a in reversed(e)))


@lru_cache(maxsize=None)
def elim_key(e):
    """Block order eliminating the first variable: its degree first, then grevlex on the rest."""
    return (e[0], grevlex_key(e[1:]))


ORDERS = {"grevlex": grevlex_key, "elim": elim_key}


def monomials_of_degree(nvars, d):
    """All exponent tuples of total degree d, in descending grevlex order."""
    if d < 0:
        return []
    out = []
    for combo in combinations_with_replacement(range(nvars), d):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    out.sort(key=grevlex_key, reverse=True)
    return out


def count_monomials(nvars, d):
    return comb(d + nvars - 1, nvars - 1) if d >= 0 else 0


class PolyRing:
    """Polynomial ring over ``field`` in the named generators."""

    def __init__(self, field=QQ, gens=("x", "y", "z")):
        gens = tuple(gens)
        if len(set(gens)) != len(gens):
            raise ValueError(f"repeated generator names in {gens}")
        if field.param is not None and field.param in gens:
            raise ValueError(f"generator name {field.param!r} clashes with the field parameter")
        self.field = field
        self.gens = gens
        self.nvars = len(gens)

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self.field == other.field and self.gens == other.gens

    def __hash__(self):
        return hash((self.field, self.gens))

    def __repr__(self):
        return f"PolyRing({self.field}, {self.gens})"

    @property
    def zero(self):
        return Poly(self, {})

    @property
    def one(self):
        return self.constant(1)

    def constant(self, c):
        c = self.field.convert(c)
        return Poly(self, {(0,) * self.nvars: c} if c else {})

    def gen(self, name_or_index):
        i = self.index(name_or_index)
        e = [0] * self.nvars
        e[i] = 1
        return Poly(self, {tuple(e): self.field.one})

    def generators(self):
        return tuple(self.gen(i) for i in range(self.nvars))

    def index(self, v):
        if isinstance(v, int):
            if not 0 <= v < self.nvars:
                raise ValueError(f"variable index {v} out of range")
            return v
        try:
            return self.gens.index(v)
        except ValueError:
            raise ValueError(f"unknown variable {v!r}; ring variables are {self.gens}") from None

    def monomial(self, e, c=1):
        c = self.field.convert(c)
        return Poly(self, {tuple(e): c} if c else {})

    def from_dict(self, terms):
        conv = self.field.convert
        out = {}
        for e, c in terms.items():
            c = conv(c)
            if c:
                out[tuple(e)] = c
        return Poly(self, out)

    def parse(self, text):
        from .parse import parse_polynomial

        return parse_polynomial(text, self.field, self.gens)

    def with_field(self, field):
        return PolyRing(field, self.gens)


def _add_exp(a, b):
    return tuple(x + y for x, y in zip(a, b))


class Poly:
    __slots__ = ("ring", "terms", "_degree")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = terms
        self._degree = None

    # -- basic queries -------------------------------------------------
    @property
    def degree(self):
        if self._degree is None:
            self._degree = max((sum(e) for e in self.terms), default=NEG_INF)
        return self._degree

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def is_constant(self):
        return all(not any(e) for e in self.terms)

    def constant_coeff(self):
        return self.terms.get((0,) * self.ring.nvars, self.ring.field.zero)

    def is_homogeneous(self):
        if not self.terms:
            return True
        d = self.degree
        return all(sum(e) == d for e in self.terms)

    def degree_in(self, v):
        i = self.ring.index(v)
        return max((e[i] for e in self.terms), default=NEG_INF)

    def min_degree(self):
        return min((sum(e) for e in self.terms), default=NEG_INF)

    def homogeneous_part(self, d):
        return Poly(self.ring, {e: c for e, c in self.terms.items() if sum(e) == d})

    def coeff(self, e):
        return self.terms.get(tuple(e), self.ring.field.zero)

    def leading_term(self, order="grevlex"):
        key = ORDERS[order] if isinstance(order, str) else order
        e = max(self.terms, key=key)
        return e, self.terms[e]

    def monic(self, order="grevlex"):
        if not self.terms:
            return self
        _, c = self.leading_term(order)
        return self.scale(1 / c if not isinstance(c, RatFunc) else c.inverse())

    # -- arithmetic ----------------------------------------------------
    def _lift(self, other):
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise ValueError(f"ring mismatch: {self.ring} vs {other.ring}")
            return other
        return self.ring.constant(other)

    def __add__(self, other):
        o = self._lift(other)
        out = dict(self.terms)
        for e, c in o.terms.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                v = v + c
                if v:
                    out[e] = v
                else:
                    del out[e]
        return Poly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def scale(self, c):
        c = self.ring.field.convert(c)
        if not c:
            return self.ring.zero
        return Poly(self.ring, {e: a * c for e, a in self.terms.items()})

    def mul_term(self, e, c):
        return Poly(self.ring, {_add_exp(e, f): c * a for f, a in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return self.scale(other)
        o = self._lift(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = _add_exp(e1, e2)
                v = out.get(e)
                out[e] = c1 * c2 if v is None else v + c1 * c2
        return Poly(self.ring, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = self.ring.one
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __truediv__(self, other):
        if isinstance(other, Poly):
            if not other.is_constant() or not other:
                raise ZeroDivisionError("division by a non-constant or zero polynomial")
            other = other.constant_coeff()
        c = self.ring.field.convert(other)
        if not c:
            raise ZeroDivisionError("division by zero")
        return self.scale(c.inverse() if isinstance(c, RatFunc) else 1 / c)

    def divmod(self, divisor, order="grevlex"):
        """Multivariate division by a single polynomial; returns (quotient, remainder)."""
        if not divisor:
            raise ZeroDivisionError("division by the zero polynomial")
        key = ORDERS[order] if isinstance(order, str) else order
        lm, lc = divisor.leading_term(key)
        p = dict(self.terms)
        q = {}
        r = {}
        while p:
            m = max(p, key=key)
            c = p.pop(m)
            if all(a >= b for a, b in zip(m, lm)):
                shift = tuple(a - b for a, b in zip(m, lm))
                f = c / lc
                q[shift] = f
                for e, a in divisor.terms.items():
                    if e == lm:
                        continue
                    e2 = _add_exp(e, shift)
                    v = p.get(e2, 0) - f * a
                    if v:
                        p[e2] = v
                    else:
                        p.pop(e2, None)
            else:
                r[m] = c
        return Poly(self.ring, q), Poly(self.ring, r)

    def exquo(self, divisor):
        q, r = self.divmod(divisor)
        if r:
            raise ValueError("polynomial division is not exact")
        return q

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring == other.ring and self.terms == other.terms
        try:
            return self == self.ring.constant(other)
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    # -- calculus and substitution ----------------------------------------
    def derivative(self, v):
        i = self.ring.index(v)
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                f = list(e)
                f[i] -= 1
                out[tuple(f)] = c * e[i]
        return Poly(self.ring, out)

    def evaluate(self, point):
        """Evaluate at a full point (sequence of scalars, one per variable)."""
        total = self.ring.field.zero
        for e, c in self.terms.items():
            term = c
            for v, k in zip(point, e):
                if k:
                    term = term * v**k
            total = total + term
        return total

    def subs(self, mapping):
        """Substitute polynomials (or scalars) for some variables; others stay."""
        images = []
        for i, g in enumerate(self.ring.gens):
            if g in mapping or i in mapping:
                img = mapping.get(g, mapping.get(i))
                images.append(img if isinstance(img, Poly) else self.ring.constant(img))
            else:
                images.append(self.ring.gen(i))
        return self.compose(images)

    def compose(self, images):
        """Substitute ``images[i]`` for variable i; images all live in one ring."""
        target = images[0].ring
        cache = [dict() for _ in images]

        def power(i, k):
            if k not in cache[i]:
                cache[i][k] = images[i] ** k
            return cache[i][k]

        out = target.zero
        for e, c in self.terms.items():
            term = target.constant(c)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            out = out + term
        return out

    def specialize(self, value, field=QQ):
        """Map a Q(s) polynomial to Q by setting s = value."""
        ring = self.ring.with_field(field)
        out = {}
        for e, c in self.terms.items():
            v = c.evaluate(value) if isinstance(c, RatFunc) else c
            if v:
                out[e] = v
        return Poly(ring, out)

    def to_ring(self, ring, index_map=None):
        """Re-embed into a ring with more (or reordered) variables."""
        if index_map is None:
            index_map = [ring.index(g) for g in self.ring.gens]
        out = {}
        for e, c in self.terms.items():
            f = [0] * ring.nvars
            for i, k in enumerate(e):
                if k:
                    f[index_map[i]] = k
            out[tuple(f)] = ring.field.convert(c)
        return Poly(ring, out)

    # -- display -------------------------------------------------------
    def __repr__(self):
        return f"Poly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=grevlex_key, reverse=True):
            c = self.terms[e]
            mono = "*".join(
                g if k == 1 else f"{g}^{k}" for g, k in zip(self.ring.gens, e) if k
            )
            if isinstance(c, RatFunc) and not c.is_constant():
                neg, cs = False, f"({c})"
            else:
                v = c.constant_value() if isinstance(c, RatFunc) else c
                neg, cs = v < 0, format_scalar(abs(v))
            if mono:
                body = mono if cs == "1" else f"{cs}*{mono}"
            else:
                body = cs
            parts.append(("-" if neg else "+", body))
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text
