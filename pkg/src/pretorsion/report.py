"""Deterministic JSON reports and their digests."""

from __future__ import annotations

import hashlib
import json
from typing import Any

from . import __version__
from .abcat import AbelianCategory, Morphism, Obj
from .pretor import ZExactSeq

FIELD_NOTE = "linear backends compute over GF(p); type A hom and ext dimensions do not depend on the field"


def canonical_json(obj: Any) -> str:
    """Sorted keys, two-space indent, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def digest(report: dict) -> str:
    """SHA-256 over the canonical JSON with timing information removed."""
    body = {k: v for k, v in report.items() if k != "timing"}
    return hashlib.sha256(canonical_json(body).encode()).hexdigest()


def header(cat: AbelianCategory | None, command: str, **extra) -> dict:
    out = {"tool": "pretorsion", "version": __version__, "command": command}
    if cat is not None:
        out["config"] = cat.config()
        if hasattr(cat, "p"):
            out["field_note"] = FIELD_NOTE
    out.update(extra)
    return out


def _arrow(cat: AbelianCategory, f: Morphism, names: dict | None) -> str:
    if f.source.is_zero or f.target.is_zero:
        return "->"
    if cat.is_iso(f):
        return "="
    if names:
        name = names.get((f.source, f.target))
        if name:
            return f"-{name}->"
    return "->"


def render_sequence(cat: AbelianCategory, seq: ZExactSeq, label=None, names: dict | None = None) -> str:
    """One-line rendering such as ``12 = 12 -b-> 1``.

    Identity-like maps (isomorphisms) print as ``=``, maps out of or into 0
    as ``->``, and other maps use ``names[(source, target)]`` when given.
    """
    lab = label or cat.obj_label
    return " ".join(
        [lab(seq.TX), _arrow(cat, seq.eps, names), lab(seq.X), _arrow(cat, seq.eta, names), lab(seq.FX)]
    )


def obj_list(cat: AbelianCategory, objs, label=None) -> list[str]:
    lab = label or cat.obj_label
    return [lab(X) for X in objs]


def ind_objs(cat: AbelianCategory) -> list[Obj]:
    return [Obj.of(i) for i in cat.indecomposables()]
