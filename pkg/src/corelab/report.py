"""Report assembly, the JSON schema, and the lossless text rendering.

Text mode writes one ``path = json-value`` line per leaf, e.g.::

    experiments[0].verdict = "consistent"
    experiments[0].result.socle_degrees["4"] = 1

Empty containers are written as ``{}`` / ``[]`` leaves so the record can be
rebuilt exactly with :func:`from_text`.
"""

from __future__ import annotations

import json
import re
from importlib import resources

from . import __version__
from .experiments import EXIT_CODES, overall_verdict

_IDENT = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


def build_report(records, *, command: str, seed, stats: bool = False, timings=None) -> dict:
    verdict = overall_verdict(records)
    rep = {
        "engine": "corelab",
        "version": __version__,
        "command": command,
        "seed": seed,
        "verdict": verdict,
        "exit_code": EXIT_CODES[verdict],
        "experiments": list(records),
    }
    if stats and timings is not None:
        rep["timings"] = timings
    return rep


def to_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _key(path: str, k: str) -> str:
    if _IDENT.match(k):
        return f"{path}.{k}" if path else k
    return f"{path}[{json.dumps(k, ensure_ascii=False)}]"


def _flatten(value, path, out):
    if isinstance(value, dict) and value:
        for k in sorted(value):
            _flatten(value[k], _key(path, k), out)
    elif isinstance(value, list) and value:
        for i, v in enumerate(value):
            _flatten(v, f"{path}[{i}]", out)
    else:
        out.append(f"{path or '$'} = {json.dumps(value, ensure_ascii=False, sort_keys=True)}")


def to_text(report: dict) -> str:
    out = []
    _flatten(report, "", out)
    return "\n".join(out) + "\n"


_TOKEN = re.compile(r'\.([A-Za-z_][A-Za-z0-9_]*)|\[(\d+)\]|\[("(?:[^"\\]|\\.)*")\]')


def _parse_line(line: str):
    """Split ``path = value`` into path steps and the raw JSON value.  Quoted
    keys may themselves contain ``" = "``, so the path is scanned, not split."""
    if line.startswith("$ = "):
        return None, line[4:]
    steps = []
    m0 = re.match(r"^[A-Za-z_][A-Za-z0-9_]*", line)
    pos = 0
    if m0:
        steps.append(m0.group(0))
        pos = m0.end()
    while not line.startswith(" = ", pos):
        m = _TOKEN.match(line, pos)
        if not m:
            raise ValueError(f"bad report line {line!r}")
        if m.group(1) is not None:
            steps.append(m.group(1))
        elif m.group(2) is not None:
            steps.append(int(m.group(2)))
        else:
            steps.append(json.loads(m.group(3)))
        pos = m.end()
    return steps, line[pos + 3:]


def from_text(text: str):
    """Inverse of :func:`to_text`."""
    root = None
    for line in text.split("\n"):
        if not line.strip():
            continue
        steps, raw = _parse_line(line)
        value = json.loads(raw)
        if steps is None:
            return value
        if root is None:
            root = [] if isinstance(steps[0], int) else {}
        cur = root
        for here, nxt in zip(steps, steps[1:]):
            blank = [] if isinstance(nxt, int) else {}
            if isinstance(here, int):
                while len(cur) <= here:
                    cur.append(None)
                if cur[here] is None:
                    cur[here] = blank
                cur = cur[here]
            else:
                cur = cur.setdefault(here, blank)
        last = steps[-1]
        if isinstance(last, int):
            while len(cur) <= last:
                cur.append(None)
            cur[last] = value
        else:
            cur[last] = value
    return root


def render(report: dict, fmt: str = "json") -> str:
    return to_text(report) if fmt == "text" else to_json(report)


def load_schema() -> dict:
    return json.loads(resources.files("corelab").joinpath("schema/report.schema.json").read_text("utf-8"))


def validate(report: dict) -> None:
    """Raise ``jsonschema.ValidationError`` when the report does not match."""
    import jsonschema

    jsonschema.validate(report, load_schema())
