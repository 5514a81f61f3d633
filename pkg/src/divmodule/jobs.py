"""Job descriptions: the JSON input format shared by the CLI and the corpus.

A job looks like::

    {"label": "m-plus-free",
     "ring": {"field": "Q", "vars": ["x", "y"], "order": "grevlex"},
     "module": {"embedded": {"ambient_rank": 2, "columns": [["x", "0"], ["y", "0"], ["0", "1"]]}},
     "reduction": [0, 2],
     "options": {"seed": 0, "rmax": 5}}

``module`` may instead be ``{"presented": {"n": 3, "matrix": [[...], ...]}}``
(row-major) with an optional ``"witness"`` in the embedded format.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .errors import InputError, PreconditionError
from .matrix import PolyMatrix
from .presmod import EmbeddedModule, PresentedModule, presentation_of_embedded
from .rees import DEFAULT_RMAX
from .ring import MonomialOrder, Ring

DEFAULT_OPTIONS = {"seed": 0, "rmax": DEFAULT_RMAX}


@dataclass
class JobSpec:
    ring: Ring
    embedded: EmbeddedModule | None = None
    presented: PresentedModule | None = None
    reduction: list | None = None
    options: dict = field(default_factory=lambda: dict(DEFAULT_OPTIONS))
    label: str | None = None

    def presentation(self) -> PresentedModule:
        if self.presented is not None:
            return self.presented
        return presentation_of_embedded(self.embedded)

    def require_embedded(self, what) -> EmbeddedModule:
        """The embedded module, or the image of the presented one under its witness."""
        if self.embedded is not None:
            return self.embedded
        if self.presented.witness is not None:
            return EmbeddedModule(self.presented.witness, self.label)
        raise PreconditionError(f"{what} needs an embedded module (or a presentation with a witness)")


def _expect(cond, msg):
    if not cond:
        raise InputError(msg)


def _columns(ring, obj, where):
    _expect(isinstance(obj, dict), f"{where}: expected an object")
    e = obj.get("ambient_rank")
    cols = obj.get("columns")
    _expect(isinstance(e, int) and e >= 1, f"{where}.ambient_rank must be a positive integer")
    _expect(isinstance(cols, list) and cols, f"{where}.columns must be a non-empty list")
    parsed = []
    for k, col in enumerate(cols):
        _expect(isinstance(col, list) and len(col) == e, f"{where}.columns[{k}] must have {e} entries")
        parsed.append([_poly(ring, s, f"{where}.columns[{k}][{i}]") for i, s in enumerate(col)])
    return PolyMatrix.from_columns(ring, parsed, e)


def _poly(ring, src, where):
    if isinstance(src, int) and not isinstance(src, bool):
        src = str(src)
    _expect(isinstance(src, str), f"{where}: polynomials are given as strings")
    try:
        return ring.parse(src)
    except InputError as exc:
        raise type(exc)(f"{where}: {exc}") from exc


def parse_job(obj, order_override=None) -> JobSpec:
    _expect(isinstance(obj, dict), "a job must be a JSON object")
    unknown = set(obj) - {"label", "ring", "module", "reduction", "options", "command"}
    _expect(not unknown, f"unknown job fields {sorted(unknown)}")
    _expect("ring" in obj and "module" in obj, "a job needs 'ring' and 'module'")
    ring = Ring.from_json(obj["ring"])
    if order_override:
        ring = ring.with_order(MonomialOrder.from_json(order_override))
    label = obj.get("label")
    mod = obj["module"]
    _expect(isinstance(mod, dict) and len(mod) == 1 and set(mod) <= {"embedded", "presented"},
            "module must have exactly one of 'embedded' or 'presented'")
    job = JobSpec(ring, label=label)
    if "embedded" in mod:
        job.embedded = EmbeddedModule(_columns(ring, mod["embedded"], "module.embedded"), label)
    else:
        p = mod["presented"]
        _expect(isinstance(p, dict), "module.presented must be an object")
        n, rows = p.get("n"), p.get("matrix")
        _expect(isinstance(n, int) and n >= 1, "module.presented.n must be a positive integer")
        _expect(isinstance(rows, list) and len(rows) == n, f"module.presented.matrix needs {n} rows")
        width = {len(r) if isinstance(r, list) else -1 for r in rows}
        _expect(len(width) == 1 and -1 not in width, "module.presented.matrix rows must be equal-length lists")
        phi = PolyMatrix(ring, [[_poly(ring, s, f"module.presented.matrix[{i}][{j}]") for j, s in enumerate(r)]
                                for i, r in enumerate(rows)], width.pop())
        witness = _columns(ring, p["witness"], "module.presented.witness") if "witness" in p else None
        job.presented = PresentedModule(n, phi, witness, label)
    if obj.get("reduction") is not None:
        red = obj["reduction"]
        ngens = job.embedded.ngens if job.embedded is not None else job.presented.n
        _expect(isinstance(red, list) and red and all(isinstance(i, int) and 0 <= i < ngens for i in red),
                f"reduction must list generator indices in 0..{ngens - 1}")
        job.reduction = sorted(set(red))
    opts = obj.get("options", {})
    _expect(isinstance(opts, dict), "options must be an object")
    bad = set(opts) - {"seed", "rmax"}
    _expect(not bad, f"unknown options {sorted(bad)}")
    for key in ("seed", "rmax"):
        if key in opts:
            _expect(isinstance(opts[key], int) and opts[key] >= 0, f"options.{key} must be a non-negative integer")
            job.options[key] = opts[key]
    return job


def load_job(path, order_override=None) -> JobSpec:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    return parse_job(obj, order_override)
