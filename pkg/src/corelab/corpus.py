"""Corpus files: named ring entries with expectations and experiments.

Format (line oriented, ``#`` comments)::

    [ring cusp]
    field: q
    recipe: semigroup(2, 3)
    reduced: true
    expect: dimension=1, a=1, gorenstein=true
    run: dim1 N=4
    run: sandwich N=4 samples=48

Entries may refer to each other by name in recipes, e.g.
``recipe: veronese(plane, 2)``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from . import __version__
from .experiments import RUNNERS, Options, ring_record, run_experiment
from .field import FieldSpec
from .invariants import graded_invariants
from .reductions import derived_rng
from .ringfile import RING_KEYS, RingDecl, RingSpecError, parse_bool, split_line

EXPECT_KEYS = {
    "dimension": int,
    "a": int,
    "multiplicity": str,
    "cm": parse_bool,
    "gorenstein": parse_bool,
    "level": parse_bool,
    "socle_dimension": int,
}
RUN_KEYS = {
    "N": int,
    "seed": int,
    "samples": int,
    "window": int,
    "max-samples": int,
    "rmax": int,
    "primes": lambda s: tuple(int(p) for p in s.split(",")),
}


class CorpusError(RingSpecError):
    pass


@dataclass
class RunSpec:
    verifier: str
    options: dict = field(default_factory=dict)

    def as_dict(self):
        d = {"verifier": self.verifier}
        for k, v in self.options.items():
            d[k] = list(v) if isinstance(v, tuple) else v
        return d

    def text(self) -> str:
        parts = [self.verifier]
        for k, v in self.options.items():
            parts.append(f"{k}={','.join(map(str, v)) if isinstance(v, tuple) else v}")
        return " ".join(parts)


@dataclass
class CorpusEntry:
    decl: RingDecl
    expect: dict = field(default_factory=dict)
    runs: list = field(default_factory=list)

    @property
    def name(self):
        return self.decl.name

    def as_dict(self):
        return {
            "ring": self.decl.as_dict(),
            "expect": dict(self.expect),
            "runs": [r.as_dict() for r in self.runs],
        }


@dataclass
class Corpus:
    entries: list
    source: str | None = None

    def by_name(self, name: str) -> CorpusEntry:
        for e in self.entries:
            if e.name == name:
                return e
        raise CorpusError(f"no entry named {name!r}", source=self.source)

    def as_dict(self):
        return {"entries": [e.as_dict() for e in self.entries]}

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, ensure_ascii=False) + "\n"

    def to_text(self) -> str:
        out = []
        for e in self.entries:
            d = e.decl
            out.append(f"[ring {d.name}]")
            if d.field is not None:
                out.append(f"field: {d.field}")
            if d.recipe is not None:
                out.append(f"recipe: {d.recipe}")
            else:
                out.append(f"vars: {d.vars}")
                if d.rels:
                    out.append("rels: " + "; ".join(d.rels))
            if d.reduced is not None:
                out.append(f"reduced: {'true' if d.reduced else 'false'}")
            if d.note:
                out.append(f"note: {d.note}")
            if e.expect:
                out.append("expect: " + ", ".join(f"{k}={_fmt(v)}" for k, v in e.expect.items()))
            for r in e.runs:
                out.append(f"run: {r.text()}")
            out.append("")
        return "\n".join(out)


def _fmt(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def _parse_expect(value: str, line: int, source):
    out = {}
    for part in value.split(","):
        part = part.strip()
        if not part:
            continue
        k, sep, v = part.partition("=")
        k = k.strip()
        if not sep or k not in EXPECT_KEYS:
            raise CorpusError(f"unknown expectation {part!r}", line, source)
        try:
            out[k] = EXPECT_KEYS[k](v.strip())
        except ValueError as exc:
            raise CorpusError(f"bad value for {k}: {exc}", line, source) from exc
    return out


def _parse_run(value: str, line: int, source) -> RunSpec:
    toks = value.split()
    if not toks or toks[0] not in RUNNERS:
        raise CorpusError(f"unknown verifier in {value!r}; expected one of {sorted(RUNNERS)}", line, source)
    opts = {}
    for t in toks[1:]:
        k, sep, v = t.partition("=")
        if not sep or k not in RUN_KEYS:
            raise CorpusError(f"unknown run option {t!r}", line, source)
        try:
            opts[k] = RUN_KEYS[k](v)
        except ValueError as exc:
            raise CorpusError(f"bad value for {k}: {exc}", line, source) from exc
    return RunSpec(toks[0], opts)


def parse_corpus(text: str, source: str | None = None) -> Corpus:
    entries = []
    cur = None
    names = set()
    for no, raw in enumerate(text.splitlines(), 1):
        kv = split_line(raw)
        if kv is None:
            continue
        key, value = kv
        if value is None:
            if key.startswith("[ring ") and key.endswith("]"):
                name = key[6:-1].strip()
                if not name or name in names:
                    raise CorpusError(f"missing or duplicate entry name {name!r}", no, source)
                names.add(name)
                cur = CorpusEntry(RingDecl(name=name, line=no, source=source))
                entries.append(cur)
                continue
            raise CorpusError(f"expected '[ring NAME]' or 'key: value', got {raw.strip()!r}", no, source)
        if cur is None:
            raise CorpusError("key outside a [ring ...] section", no, source)
        if key == "expect":
            cur.expect.update(_parse_expect(value, no, source))
        elif key == "run":
            cur.runs.append(_parse_run(value, no, source))
        elif key in RING_KEYS and key != "name":
            cur.decl.set(key, value, no, source)
        else:
            raise CorpusError(f"unknown key {key!r}", no, source)
    return Corpus(entries, source)


def read_corpus(path: str) -> Corpus:
    with open(path, encoding="utf-8") as fh:
        return parse_corpus(fh.read(), str(path))


def _resolver(corpus: Corpus, field_override, seed):
    cache = {}
    active = set()

    def resolve(name):
        if name in cache:
            return cache[name]
        if name in active:
            raise CorpusError(f"cyclic recipe reference through {name!r}", source=corpus.source)
        active.add(name)
        entry = corpus.by_name(name)
        cache[name] = entry.decl.build(field_override, seed, resolve)
        active.discard(name)
        return cache[name]

    return resolve


def check_expectations(R, expect: dict, seed: int) -> dict:
    inv = graded_invariants(R, derived_rng(f"{seed}:cm", 0))
    got = {
        "dimension": inv.dimension,
        "a": inv.a_invariant,
        "multiplicity": str(inv.multiplicity),
        "cm": inv.cm.is_cm,
        "gorenstein": inv.gorenstein,
        "level": inv.level,
        "socle_dimension": inv.socle.dimension if inv.socle else None,
    }
    mismatches = {k: {"expected": v, "got": got[k]} for k, v in expect.items() if got[k] != v}
    return {
        "verdict": "refuted" if mismatches else "consistent",
        "checked": sorted(expect),
        "mismatches": mismatches,
    }


def run_corpus(corpus: Corpus, *, seed: int = 0, field_override: FieldSpec | None = None,
               defaults: Options | None = None, stats: bool = False) -> list:
    """Run every entry's expectations and experiments.  Each record depends
    only on its entry and the seed, so entry order does not matter."""
    defaults = defaults or Options(seed=seed)
    resolve = _resolver(corpus, field_override, seed)
    records = []
    for entry in corpus.entries:
        try:
            R = resolve(entry.name)
        except ValueError as exc:
            raise CorpusError(str(exc), entry.decl.line, corpus.source) from exc
        if entry.expect:
            res = check_expectations(R, entry.expect, seed)
            verdict = res.pop("verdict")
            records.append({
                "experiment": "expect",
                "entry": entry.name,
                "ring": ring_record(R),
                "N": None,
                "seed": seed,
                "engine": f"corelab {__version__}",
                "verdict": verdict,
                "result": res,
            })
        for spec in entry.runs:
            o = spec.options
            opts = Options(
                N=o.get("N", defaults.N),
                seed=o.get("seed", seed),
                samples=o.get("samples", defaults.samples),
                window=o.get("window", defaults.window),
                max_samples=o.get("max-samples", defaults.max_samples),
                rmax=o.get("rmax", defaults.rmax),
                jobs=defaults.jobs,
                primes=o.get("primes", defaults.primes),
            )
            rec = run_experiment(spec.verifier, R, opts, stats=stats)
            rec["entry"] = entry.name
            records.append(rec)
    return records
