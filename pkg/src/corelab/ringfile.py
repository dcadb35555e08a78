"""Ring strings, ring files and recipes.

Ring string::

    k[a:2,b:3]/(b^2-a^3)

Ring file (UTF-8, one ``key: value`` per line, ``#`` comments)::

    field: q
    vars: a:2, b:3
    rels: b^2 - a^3
    reduced: true

or a recipe line instead of ``vars``/``rels``::

    recipe: semigroup(2, 3)
    recipe: veronese(k[x,y], 2)
    recipe: rees(k[x,y], x, y)
    recipe: ci(3; 3; x^3+y^3+z^3)
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field

from .constructions import (
    complete_intersection,
    rees_presentation,
    semigroup_ring,
    veronese,
)
from .field import FieldError, FieldSpec
from .ideal import PresentedRing, RingError
from .poly import PolyParseError


class RingSpecError(ValueError):
    """Parse or elaboration error, optionally with a source location."""

    def __init__(self, msg, line: int | None = None, source: str | None = None):
        self.line = line
        self.source = source
        loc = ""
        if source:
            loc = f"{source}:"
        if line is not None:
            loc += f"{line}:"
        super().__init__(f"{loc} {msg}" if loc else msg)


_VAR = re.compile(r"^\s*([A-Za-z_][A-Za-z_0-9]*)\s*(?::\s*(\d+))?\s*$")


def parse_vars(text: str):
    names, weights = [], []
    for part in text.split(","):
        if not part.strip():
            continue
        m = _VAR.match(part)
        if not m:
            raise RingSpecError(f"bad variable declaration {part.strip()!r}")
        names.append(m.group(1))
        weights.append(int(m.group(2) or 1))
    if not names:
        raise RingSpecError("no variables declared")
    return names, weights


def _split_top(text: str, sep: str):
    """Split on ``sep`` outside parentheses and brackets."""
    out, depth, cur = [], 0, []
    for ch in text:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch == sep and depth == 0:
            out.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    out.append("".join(cur))
    return [s.strip() for s in out]


_RING = re.compile(r"^\s*k\s*\[(?P<vars>[^\]]*)\]\s*(?:/\s*\((?P<rels>.*)\)\s*)?$", re.S)


def parse_ring_string(text: str, field_: FieldSpec, *, reduced=None, name=None) -> PresentedRing:
    m = _RING.match(text)
    if not m:
        raise RingSpecError(f"bad ring string {text!r}; expected k[x,y:2,...]/(f, g, ...)")
    names, weights = parse_vars(m.group("vars"))
    rels = [r for r in _split_top(m.group("rels") or "", ",") if r]
    try:
        return PresentedRing(field_, names, weights, rels, reduced=reduced, name=name)
    except (PolyParseError, RingError, FieldError) as exc:
        raise RingSpecError(str(exc)) from exc


_CALL = re.compile(r"^\s*([a-z][a-z\-_]*)\s*\((.*)\)\s*$", re.S)


def build_recipe(text: str, field_: FieldSpec, seed=0, resolve=None) -> PresentedRing:
    """Elaborate ``kind(args)``.  ``resolve`` maps a name to a ring (corpus
    references); ring strings are accepted wherever a base ring is expected."""
    m = _CALL.match(text)
    if not m:
        raise RingSpecError(f"bad recipe {text!r}")
    kind, args = m.group(1), m.group(2)

    def base(s):
        s = s.strip()
        if s.startswith("k["):
            return parse_ring_string(s, field_)
        if resolve is None:
            raise RingSpecError(f"unknown base ring {s!r}")
        return resolve(s)

    if kind == "veronese":
        parts = _split_top(args, ",")
        if len(parts) != 2:
            raise RingSpecError("veronese(base, n) takes two arguments")
        return veronese(base(parts[0]), int(parts[1]))
    if kind == "semigroup":
        return semigroup_ring([int(a) for a in _split_top(args, ",")], field_)
    if kind == "rees":
        parts = _split_top(args, ",")
        R = base(parts[0])
        return rees_presentation(R, R.ideal(parts[1:])).ring
    if kind in ("ci", "complete-intersection"):
        parts = _split_top(args, ";")
        n = int(parts[0])
        degrees = [int(d) for d in _split_top(parts[1], ",")] if len(parts) > 1 and parts[1] else []
        forms = _split_top(parts[2], ",") if len(parts) > 2 else None
        return complete_intersection(n, degrees, rng=seed, forms=forms, field_=field_)
    if kind == "polynomial":
        names, weights = parse_vars(args)
        return PresentedRing(field_, names, weights)
    raise RingSpecError(f"unknown recipe kind {kind!r}")


RING_KEYS = ("field", "vars", "rels", "recipe", "reduced", "name", "note")


@dataclass
class RingDecl:
    """Declarative ring description as read from a file."""

    name: str = ""
    field: str | None = None
    vars: str | None = None
    rels: list = dc_field(default_factory=list)
    recipe: str | None = None
    reduced: bool | None = None
    note: str = ""
    line: int | None = None
    source: str | None = None

    def set(self, key: str, value: str, line: int, source=None):
        if key == "field":
            self.field = value
        elif key == "vars":
            self.vars = value
        elif key == "rels":
            self.rels.extend(r for r in _split_top(value, ";") if r)
        elif key == "recipe":
            self.recipe = value
        elif key == "reduced":
            self.reduced = parse_bool(value, line, source)
        elif key == "name":
            self.name = value
        elif key == "note":
            self.note = value
        else:
            raise RingSpecError(f"unknown key {key!r}", line, source)

    def as_dict(self) -> dict:
        out = {"name": self.name}
        if self.field is not None:
            out["field"] = self.field
        if self.recipe is not None:
            out["recipe"] = self.recipe
        else:
            out["vars"] = self.vars
            out["rels"] = list(self.rels)
        if self.reduced is not None:
            out["reduced"] = self.reduced
        if self.note:
            out["note"] = self.note
        return out

    def field_spec(self, override: FieldSpec | None = None) -> FieldSpec:
        if override is not None:
            return override
        try:
            return FieldSpec.parse(self.field) if self.field else FieldSpec()
        except FieldError as exc:
            raise RingSpecError(str(exc), self.line, self.source) from exc

    def build(self, field_override: FieldSpec | None = None, seed=0, resolve=None) -> PresentedRing:
        F = self.field_spec(field_override)
        try:
            if self.recipe is not None:
                if self.vars or self.rels:
                    raise RingSpecError("recipe excludes vars/rels")
                R = build_recipe(self.recipe, F, seed, resolve)
            else:
                if not self.vars:
                    raise RingSpecError("missing vars")
                names, weights = parse_vars(self.vars)
                R = PresentedRing(F, names, weights, self.rels)
        except RingSpecError as exc:
            if exc.line is None:
                raise RingSpecError(str(exc), self.line, self.source) from exc
            raise
        except (PolyParseError, RingError, FieldError, ValueError) as exc:
            raise RingSpecError(str(exc), self.line, self.source) from exc
        if self.reduced is not None:
            R.reduced = self.reduced
        if self.name:
            R.name = self.name
        if self.note:
            R.note = self.note
        return R


def parse_bool(value: str, line=None, source=None) -> bool:
    v = value.strip().lower()
    if v in ("true", "yes", "1"):
        return True
    if v in ("false", "no", "0"):
        return False
    raise RingSpecError(f"expected true/false, got {value!r}", line, source)


def split_line(raw: str):
    """``key: value`` with comments stripped, or None for blank lines."""
    line = raw.split("#", 1)[0].strip()
    if not line:
        return None
    if ":" not in line:
        return line, None
    k, v = line.split(":", 1)
    return k.strip(), v.strip()


def read_ring_file(path: str) -> RingDecl:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    return parse_ring_text(text, source=str(path))


def parse_ring_text(text: str, source: str | None = None) -> RingDecl:
    decl = RingDecl(line=1, source=source)
    for no, raw in enumerate(text.splitlines(), 1):
        kv = split_line(raw)
        if kv is None:
            continue
        key, value = kv
        if value is None:
            raise RingSpecError(f"expected 'key: value', got {raw.strip()!r}", no, source)
        if key not in RING_KEYS:
            raise RingSpecError(f"unknown key {key!r}", no, source)
        decl.set(key, value, no, source)
    return decl
