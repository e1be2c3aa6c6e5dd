"""Arrangement files: one JSON document naming the field, an optional s binding and the conics.

Example::

    {"field": "Q(s)", "s": "2",
     "conics": [{"label": "C1", "poly": "x^2 + y^2 - z^2"},
                {"label": "C2", "poly": "x^2/s^2 + y^2 - z^2"}],
     "metadata": {"name": "two tangent conics"}}
"""

import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path

from .algebra.parse import parse_polynomial
from .algebra.scalars import QQ, QQs, field_from_name
from .arrangement import validate_conic
from .errors import InputError

FIXTURE_PREFIX = "fixture:"


def parse_rational(text):
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"not a rational number: {text!r}") from exc


def format_rational(q):
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@dataclass
class ArrangementFile:
    field: str
    conics: list
    s: Fraction = None
    metadata: dict = field(default_factory=dict)

    @property
    def symbolic(self):
        return self.field == "Q(s)"

    def conic_objects(self, s=None):
        """Validated conics, over Q(s) or specialized at ``s``; pass ``self.s`` for the file binding."""
        if not self.symbolic:
            if s is not None:
                raise InputError("this arrangement has no parameter s to specialize")
            return [validate_conic(parse_polynomial(p, QQ), lab) for lab, p in self.conics]
        out = []
        for lab, text in self.conics:
            poly = parse_polynomial(text, QQs)
            if s is not None:
                try:
                    poly = poly.specialize(s)
                except ZeroDivisionError as exc:
                    raise InputError(f"{lab}: a coefficient has a pole at s={format_rational(s)}") from exc
            out.append(validate_conic(poly, lab))
        return out

    def to_dict(self):
        doc = {"field": self.field, "conics": [{"label": l, "poly": p} for l, p in self.conics]}
        if self.s is not None:
            doc["s"] = format_rational(self.s)
        if self.metadata:
            doc["metadata"] = self.metadata
        return doc


def fixture_names():
    root = resources.files("conic_lab") / "fixtures"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def read_text(source):
    """File contents for a path or for ``fixture:NAME`` (a file shipped with the package)."""
    source = str(source)
    if source.startswith(FIXTURE_PREFIX):
        name = source[len(FIXTURE_PREFIX):]
        if name not in fixture_names():
            raise InputError(f"unknown fixture {name!r}; available: {', '.join(fixture_names())}")
        return (resources.files("conic_lab") / "fixtures" / f"{name}.json").read_text()
    try:
        return Path(source).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {source}: {exc.strerror}") from exc


def parse_arrangement(doc):
    if isinstance(doc, str):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise InputError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise InputError("arrangement file must hold a JSON object")
    fld = field_from_name(str(doc.get("field", "Q")))
    name = "Q(s)" if fld == QQs else "Q"
    raw = doc.get("conics")
    if not isinstance(raw, list) or not raw:
        raise InputError("'conics' must be a nonempty list")
    conics = []
    for i, c in enumerate(raw):
        if isinstance(c, str):
            c = {"poly": c}
        if not isinstance(c, dict) or "poly" not in c:
            raise InputError(f"conic #{i + 1} needs a 'poly' entry")
        conics.append((str(c.get("label", f"C{i + 1}")), str(c["poly"])))
    labels = [l for l, _ in conics]
    if len(set(labels)) != len(labels):
        raise InputError("conic labels must be unique")
    s = doc.get("s")
    if s is not None:
        if name != "Q(s)":
            raise InputError("an s binding needs field Q(s)")
        s = parse_rational(s)
    meta = doc.get("metadata") or {}
    return ArrangementFile(name, conics, s, meta)


def load_arrangement(source):
    return parse_arrangement(read_text(source))


def load_json(source):
    text = read_text(source)
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON in {source}: {exc}") from exc
