"""Command-line front end: ``pretor <command> [flags]``.

Exit codes: 0 when every verdict passes, 1 when a mathematical check fails
(with ``BUG`` printed when the failed check is guaranteed by a theorem), 2
for usage errors.
"""

from __future__ import annotations

import argparse
import itertools
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from pathlib import Path

from .abcat import BoundExceeded, TheoremViolation
from .abgrp import AbGroups
from .chaincx import ChainComplexes
from .pretor import PretorsionTheory, comparable_pretorsion, is_pretorsion, serre_extension
from .report import canonical_json, header, ind_objs, render_sequence
from .stable import build_quotient, verify_quotient_torsion
from .torsion import (
    ClassSpec,
    TorsionPair,
    enumerate_torsion_pairs,
    is_serre,
    is_torsion_pair,
    right_perp,
)
from . import repro as _repro
from .typea import TypeA, supported_in, torsion_classes_by_closure

TYPEA_MAX_COMBINATORIAL = 6
TYPEA_MAX_ORACLE = 4


class UsageError(ValueError):
    """Bad flags or unparsable input (exit code 2)."""


@dataclass
class RunConfig:
    backend: str = "typea"
    n: int = 3
    order_bound: int = 360
    lo: int = 0
    hi: int = 5
    dim_cap: int = 3
    samples: int = 200
    field: int = 2
    seed: int = 0
    jobs: int = 1
    method: str = "oracle"
    json_path: str | None = None
    dot_path: str | None = None
    extra: dict = dc_field(default_factory=dict)

    def validate(self, closure_ok: bool = False) -> None:
        """Bounds: typea n <= 4 in general, n <= 6 for closure enumeration."""
        if self.backend == "typea":
            cap = TYPEA_MAX_COMBINATORIAL if closure_ok else TYPEA_MAX_ORACLE
            if not 1 <= self.n <= cap:
                hint = "" if closure_ok else " (enumerate --method closure handles n up to 6)"
                raise UsageError(f"typea n={self.n} is outside the safe range 1..{cap}{hint}")
        if self.jobs < 1:
            raise UsageError("--jobs must be positive")

    def backend_instance(self):
        try:
            if self.backend == "typea":
                return TypeA(self.n, self.field)
            if self.backend == "abgrp":
                return AbGroups(self.order_bound)
            if self.backend == "chaincx":
                return ChainComplexes(self.lo, self.hi, self.field, self.dim_cap, self.samples, self.seed)
        except BoundExceeded as exc:
            raise UsageError(str(exc)) from exc
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        raise UsageError(f"unknown backend {self.backend!r}")


def _config_from(args) -> RunConfig:
    return RunConfig(
        backend=args.backend,
        n=args.n,
        order_bound=args.order_bound,
        lo=args.lo,
        hi=args.hi,
        dim_cap=args.dim_cap,
        samples=args.samples,
        field=args.field,
        seed=args.seed,
        jobs=args.jobs,
        method=getattr(args, "method", "oracle"),
        json_path=args.json,
        dot_path=args.dot,
    )


def _members(cat, texts) -> ClassSpec:
    try:
        return ClassSpec(frozenset(cat.parse_ind(t) for t in (texts or [])))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _labels(cat):
    return getattr(cat, "stack_label", None)


# ------------------------------------------------------------------ enumerate
def _sweep_chunk(payload):
    cfg, pairs, pair_index = payload
    cat = cfg.backend_instance()
    out = []
    for a, b in pair_index:
        tp1, tp2 = pairs[a], pairs[b]
        r = is_pretorsion(cat, tp1.T, tp2.F, stop_early=True)
        out.append((a, b, tp2.T <= tp1.T, tp1.F <= tp2.F, r.ok))
    return out


def _hasse_dot(cat, pairs: list[TorsionPair]) -> str:
    lines = ["digraph torsion_classes {", "  rankdir=BT;"]
    names = []
    for k, tp in enumerate(pairs):
        label = "{" + ", ".join(tp.T.labels(cat)) + "}"
        names.append(f"t{k}")
        lines.append(f'  t{k} [label="{label}"];')
    for a, b in itertools.permutations(range(len(pairs)), 2):
        A, B = pairs[a].T.members, pairs[b].T.members
        if A < B and not any(A < pairs[c].T.members < B for c in range(len(pairs))):
            lines.append(f"  {names[a]} -> {names[b]};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def cmd_enumerate(cfg: RunConfig, sweep: bool) -> tuple[dict, int, str | None]:
    cfg.validate(closure_ok=cfg.method == "closure" and not sweep)
    if cfg.method == "closure" and cfg.backend != "typea":
        raise UsageError("--method closure applies to typea only")
    cat = cfg.backend_instance()
    if cfg.backend == "typea" and cfg.method == "closure":
        pairs = []
        for T in torsion_classes_by_closure(cfg.n):
            T = ClassSpec(T)
            F = right_perp(cat, T)
            if not is_torsion_pair(cat, T, F, method="combinatorial").ok:
                raise TheoremViolation("a closed class failed the torsion-pair checker")
            pairs.append(TorsionPair(T, F))
    else:
        pairs = enumerate_torsion_pairs(cat, method=cfg.method)
    comparable = [(a, b) for a in range(len(pairs)) for b in range(len(pairs)) if pairs[b].T <= pairs[a].T]
    report = {
        **header(cat, "enumerate", method=cfg.method),
        "count": len(pairs),
        "pairs": [tp.to_json(cat) for tp in pairs],
        "comparable_ordered_pairs": len(comparable),
    }
    ok = True
    if sweep:
        idx = [(a, b) for a in range(len(pairs)) for b in range(len(pairs))]
        if cfg.jobs > 1:
            chunks = [idx[k :: cfg.jobs] for k in range(cfg.jobs)]
            with ProcessPoolExecutor(cfg.jobs) as ex:
                rows = [r for part in ex.map(_sweep_chunk, [(cfg, pairs, c) for c in chunks]) for r in part]
        else:
            rows = _sweep_chunk((cfg, pairs, idx))
        rows.sort()
        disagreements = [[a, b] for a, b, c1, c2, c3 in rows if not c1 == c2 == c3]
        if disagreements:
            raise TheoremViolation(f"the three comparability conditions disagree on pairs {disagreements[:3]}")
        report["sweep"] = {
            "ordered_pairs": len(rows),
            "pretorsion": sum(1 for *_, c3 in rows if c3),
            "equivalence_holds": True,
        }
    dot = _hasse_dot(cat, pairs) if cfg.dot_path else None
    report["ok"] = ok
    return report, 0, dot


# ---------------------------------------------------------------------- check
def _theory_table(cat, rep, label) -> list[dict]:
    out = []
    for X in ind_objs(cat):
        s = rep.sequences.get(X)
        if s is not None:
            out.append({"X": (label or cat.obj_label)(X), "sequence": render_sequence(cat, s, label)})
    return out


def cmd_check(cfg: RunConfig, T_texts, F_texts, mode: str) -> tuple[dict, int, None]:
    cfg.validate()
    cat = cfg.backend_instance()
    T, F = _members(cat, T_texts), _members(cat, F_texts)
    rep = is_pretorsion(cat, T, F, mode=mode)
    label = _labels(cat)
    report = {
        **header(cat, "check", mode=mode),
        "T": T.labels(cat),
        "F": F.labels(cat),
        "Z": rep.Z.labels(cat),
        "pretorsion": rep.ok,
        "hom_condition": rep.hom_condition,
        "hom_failures": [[cat.label(t), cat.label(f)] for t, f in rep.hom_failures],
        "checked_objects": rep.checked_objects,
        "sequences": _theory_table(cat, rep, label),
    }
    if rep.failures:
        X, why = rep.failures[0]
        report["first_failure"] = {"X": cat.obj_label(X), "reason": why}
    report["ok"] = rep.ok
    return report, 0 if rep.ok else 1, None


def _pt_report(cat, pt: PretorsionTheory, command: str) -> dict:
    return {**header(cat, command), **pt.to_json(cat, _labels(cat)), "ok": True}


def cmd_comparable(cfg: RunConfig, T1_texts, T2_texts) -> tuple[dict, int, None]:
    cfg.validate()
    cat = cfg.backend_instance()
    tps = []
    for name, texts in (("T1", T1_texts), ("T2", T2_texts)):
        T = _members(cat, texts)
        F = right_perp(cat, T)
        if not is_torsion_pair(cat, T, F).ok:
            report = {**header(cat, "comparable"), "error": f"{name} is not a torsion class", "ok": False}
            return report, 1, None
        tps.append(TorsionPair(T, F))
    missing = sorted(tps[1].T.members - tps[0].T.members)
    if missing:
        report = {
            **header(cat, "comparable"),
            "error": "T2 is not contained in T1",
            "witness": cat.label(missing[0]),
            "ok": False,
        }
        return report, 1, None
    pt = comparable_pretorsion(cat, tps[0], tps[1])
    return _pt_report(cat, pt, "comparable"), 0, None


def _serre_class(cat, cfg: RunConfig, support, members) -> ClassSpec:
    if support is not None:
        if cfg.backend != "typea":
            raise UsageError("--support (a set of vertices) applies to typea only")
        return ClassSpec(frozenset(supported_in(support, cat.n)))
    return _members(cat, members)


def cmd_serre_extend(cfg: RunConfig, U_texts, support, S_texts) -> tuple[dict, int, None]:
    cfg.validate()
    cat = cfg.backend_instance()
    U = _members(cat, U_texts)
    V = right_perp(cat, U)
    if not is_torsion_pair(cat, U, V).ok:
        return {**header(cat, "serre-extend"), "error": "U is not a torsion class", "ok": False}, 1, None
    S = _serre_class(cat, cfg, support, S_texts)
    if not is_serre(cat, S):
        return {**header(cat, "serre-extend"), "error": "S is not a Serre class", "ok": False}, 1, None
    pt = serre_extension(cat, TorsionPair(U, V), S)
    return _pt_report(cat, pt, "serre-extend"), 0, None


def cmd_stable(cfg: RunConfig, T_texts, F_texts) -> tuple[dict, int, None]:
    cfg.validate()
    cat = cfg.backend_instance()
    T, F = _members(cat, T_texts), _members(cat, F_texts)
    rep = is_pretorsion(cat, T, F)
    if not rep.ok:
        report = {**header(cat, "stable"), "error": "(T, F) is not a pretorsion theory", "ok": False}
        return report, 1, None
    pt = PretorsionTheory(T, F, rep.Z, {"kind": "checked"}, rep.sequences, rep)
    Q = build_quotient(cat, rep.Z)
    qrep = verify_quotient_torsion(Q, pt)
    report = {
        **header(cat, "stable"),
        "T": T.labels(cat),
        "F": F.labels(cat),
        "Z": rep.Z.labels(cat),
        "hom_table": Q.hom_table_json(ind_objs(cat), _labels(cat)),
        "quotient_T": qrep.T.labels(cat),
        "quotient_F": qrep.F.labels(cat),
        "checked_objects": qrep.checked_objects,
        "ok": True,
    }
    return report, 0, None


def cmd_repro(args) -> tuple[dict, int, None]:
    name = args.name
    if name == "an-chain":
        n = 3 if args.n is None else args.n
        report = _repro.repro_an_chain(n, n if args.i is None else args.i, 1 if args.j is None else args.j, args.field)
    elif name == "an-quot":
        report = _repro.repro_an_quot(4 if args.n is None else args.n, args.i, args.j, args.field)
    elif name == "a2":
        report = _repro.repro_a2(args.field)
    elif name == "stable-ka2":
        report = _repro.repro_stable_ka2(args.field)
    elif name == "abgrp":
        report = _repro.repro_abgrp(args.order_bound)
    elif name == "chain":
        report = _repro.repro_chain(args.seed, args.samples, args.field)
    elif name == "stability":
        report = _repro.repro_stability(args.seed, p=args.field)
    else:
        raise UsageError(f"unknown repro case {name!r}; choose from {', '.join(_repro.CASES)}")
    return report, 0 if report["ok"] else 1, None


# ---------------------------------------------------------------------- parser
def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--backend", choices=["typea", "abgrp", "chaincx"], default="typea")
    common.add_argument("--n", type=int, default=None, help="number of vertices (typea)")
    common.add_argument("--order-bound", type=int, default=360, help="groups of order dividing this (abgrp)")
    common.add_argument("--lo", type=int, default=0, help="lowest degree (chaincx)")
    common.add_argument("--hi", type=int, default=5, help="highest degree (chaincx)")
    common.add_argument("--dim-cap", type=int, default=3, help="per-degree dimension cap (chaincx)")
    common.add_argument("--samples", type=int, default=200, help="random complexes in the universe (chaincx)")
    common.add_argument("--field", type=int, default=2, help="prime p for GF(p)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--json", metavar="PATH", help="write the report here instead of stdout")
    common.add_argument("--dot", metavar="PATH", help="write a DOT graph here (enumerate)")

    p = argparse.ArgumentParser(prog="pretor", description="Torsion and pretorsion theory checks.")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("enumerate", parents=[common], help="list all torsion pairs")
    e.add_argument("--method", choices=["oracle", "combinatorial", "closure"], default="oracle")
    e.add_argument("--sweep", action="store_true", help="check every ordered pair for pretorsion")

    c = sub.add_parser("check", parents=[common], help="run the pretorsion checker on (T, F)")
    c.add_argument("--T", nargs="*", default=[], metavar="IND")
    c.add_argument("--F", nargs="*", default=[], metavar="IND")
    c.add_argument("--mode", choices=["lemma", "direct"], default="lemma")

    k = sub.add_parser("comparable", parents=[common], help="(T1, F2) for torsion classes T2 inside T1")
    k.add_argument("--T1", nargs="*", default=[], metavar="IND")
    k.add_argument("--T2", nargs="*", default=[], metavar="IND")

    s = sub.add_parser("serre-extend", parents=[common], help="(U * S, S * V) for a torsion class U")
    s.add_argument("--U", nargs="*", default=[], metavar="IND")
    g = s.add_mutually_exclusive_group()
    g.add_argument("--support", nargs="*", type=int, metavar="VERTEX", help="S = modules supported here (typea)")
    g.add_argument("--S", nargs="*", metavar="IND", help="S given by its indecomposable members")

    q = sub.add_parser("stable", parents=[common], help="quotient by Z and the induced torsion pair")
    q.add_argument("--T", nargs="*", default=[], metavar="IND")
    q.add_argument("--F", nargs="*", default=[], metavar="IND")

    r = sub.add_parser("repro", parents=[common], help="reproduce a worked example")
    r.add_argument("name", help=", ".join(_repro.CASES))
    r.add_argument("--i", type=int, default=None)
    r.add_argument("--j", type=int, default=None)
    return p


def run(argv: list[str]) -> tuple[dict, int, str | None, argparse.Namespace]:
    """Parse ``argv`` and run the command; returns (report, exit code, dot, args)."""
    args = build_parser().parse_args(argv)
    if args.command == "repro":
        report, code, dot = cmd_repro(args)
        return report, code, dot, args
    if args.n is None:
        args.n = 3
    cfg = _config_from(args)
    if args.command == "enumerate":
        report, code, dot = cmd_enumerate(cfg, args.sweep)
    elif args.command == "check":
        report, code, dot = cmd_check(cfg, args.T, args.F, args.mode)
    elif args.command == "comparable":
        report, code, dot = cmd_comparable(cfg, args.T1, args.T2)
    elif args.command == "serre-extend":
        report, code, dot = cmd_serre_extend(cfg, args.U, args.support, args.S)
    else:
        report, code, dot = cmd_stable(cfg, args.T, args.F)
    return report, code, dot, args


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    start = time.perf_counter()
    try:
        report, code, dot, args = run(argv)
    except SystemExit as exc:  # argparse usage errors
        return int(exc.code or 0)
    except TheoremViolation as exc:
        print(f"BUG: a theorem-guaranteed check failed: {exc}", file=sys.stderr)
        return 1
    except (UsageError, BoundExceeded, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    report["timing"] = {"seconds": round(time.perf_counter() - start, 3)}
    text = canonical_json(report)
    if args.json:
        Path(args.json).write_text(text, encoding="utf-8")
        print(f"{report.get('command')}: {'pass' if report.get('ok') else 'fail'} -> {args.json}")
    else:
        sys.stdout.write(text)
    if dot is not None and args.dot:
        Path(args.dot).write_text(dot, encoding="utf-8")
    return code


if __name__ == "__main__":
    sys.exit(main())
