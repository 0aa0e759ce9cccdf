"""Golden cases: committed reports that CLI runs must reproduce byte for byte.

Layout under ``pretorsion/data``::

    cases.json          list of {id, argv, digest, anchor}
    golden/<id>.json    canonical report (sorted keys, no timing)
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .report import canonical_json, digest

#: id -> (argv, anchor).  The anchor names the worked example or statement.
CASE_SPECS: dict[str, tuple[list[str], str]] = {
    "a2": (["repro", "a2"], "kA_2 Serre extension with three S-exact sequences"),
    "stable-ka2": (["repro", "stable-ka2"], "kA_2 modulo add{2}: induced torsion pair in the stable category"),
    "an-chain-n3-i3-j1": (
        ["repro", "an-chain", "--n", "3", "--i", "3", "--j", "1"],
        "chain of injective-generated torsion classes, Z_{i,j}",
    ),
    "an-quot-n4": (["repro", "an-quot", "--n", "4"], "chain of quotient-closed torsion classes, Z_{i,j}"),
    "an-quot-n4-i2-j3": (
        ["repro", "an-quot", "--n", "4", "--i", "2", "--j", "3"],
        "quotient-closed chain with i < j (index order)",
    ),
    "abgrp": (["repro", "abgrp"], "prime-generated multiplicative sets on finite abelian groups"),
    "chain": (["repro", "chain"], "bounded complexes: T_n and mono-differential torsion-free classes"),
    "stability": (["repro", "stability"], "slope stability classes and their nested pretorsion pairs"),
    "enumerate-n2": (["enumerate", "--n", "2", "--sweep"], "torsion pairs of kA_2 and the comparability sweep"),
    "catalan-n4": (["enumerate", "--n", "4", "--method", "combinatorial"], "42 torsion pairs of kA_4"),
}


@dataclass(frozen=True)
class GoldenCase:
    id: str
    argv: tuple[str, ...]
    digest: str
    anchor: str


@dataclass
class CaseResult:
    id: str
    passed: bool
    digest: str
    expected_digest: str
    report: dict


def data_dir() -> Path:
    return Path(str(resources.files("pretorsion") / "data"))


def list_cases(root: Path | None = None) -> list[GoldenCase]:
    path = (root or data_dir()) / "cases.json"
    if not path.exists():
        raise FileNotFoundError(f"golden index {path} is missing")
    raw = json.loads(path.read_text(encoding="utf-8"))
    return [GoldenCase(c["id"], tuple(c["argv"]), c["digest"], c["anchor"]) for c in raw]


def generate_report(argv) -> dict:
    """Run a CLI command and return its report without timing."""
    from .cli import run

    report, _, _, _ = run(list(argv))
    return {k: v for k, v in report.items() if k != "timing"}


def run_case(case_id: str, root: Path | None = None) -> CaseResult:
    root = root or data_dir()
    cases = {c.id: c for c in list_cases(root)}
    if case_id not in cases:
        raise KeyError(f"unknown golden case {case_id!r}")
    case = cases[case_id]
    golden_path = root / "golden" / f"{case_id}.json"
    if not golden_path.exists():
        raise FileNotFoundError(f"golden file {golden_path} is missing")
    report = generate_report(case.argv)
    text = canonical_json(report)
    got = digest(report)
    passed = text == golden_path.read_text(encoding="utf-8") and got == case.digest
    return CaseResult(case_id, passed, got, case.digest, report)


def regenerate(root: Path | None = None, ids=None) -> list[GoldenCase]:
    """Rewrite golden files and the index from the current code."""
    root = root or data_dir()
    (root / "golden").mkdir(parents=True, exist_ok=True)
    out = []
    for cid, (argv, anchor) in CASE_SPECS.items():
        if ids and cid not in ids:
            continue
        report = generate_report(argv)
        (root / "golden" / f"{cid}.json").write_text(canonical_json(report), encoding="utf-8")
        out.append(GoldenCase(cid, tuple(argv), digest(report), anchor))
    if ids:
        keep = {c.id: c for c in list_cases(root)} if (root / "cases.json").exists() else {}
        keep.update({c.id: c for c in out})
        out = [keep[c] for c in CASE_SPECS if c in keep]
    index = [{"id": c.id, "argv": list(c.argv), "digest": c.digest, "anchor": c.anchor} for c in out]
    (root / "cases.json").write_text(canonical_json(index), encoding="utf-8")
    return out
