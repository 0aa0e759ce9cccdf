"""Acceptance criteria, each at its stated time limit.

Every test records one PASS/FAIL line; ``conftest.py`` prints them at the end
of the session.  Run directly (``python3 tests/test_acceptance.py``) to get
the same lines without pytest.
"""

from __future__ import annotations

import time


from pretorsion import repro, sweeps
from pretorsion.golden import run_case

LINES: dict[int, str] = {}
_BUILT: dict[str, sweeps.SweepResult] = {}


def _record(k: int, title: str, ok: bool, seconds: float, limit: float | None, detail: str = "") -> None:
    within = limit is None or seconds < limit
    verdict = "PASS" if ok and within else "FAIL"
    budget = f" < {limit:g} s" if limit is not None else ""
    LINES[k] = f"criterion {k} {verdict}: {title} ({seconds:.1f} s{budget}) {detail}".rstrip()
    print(LINES[k])
    assert ok, LINES[k]
    assert within, f"{LINES[k]}: over the time limit"


def _sweep(key: str, fn) -> sweeps.SweepResult:
    if key not in _BUILT:
        _BUILT[key] = fn()
    return _BUILT[key]


def test_criterion_1_enumeration_and_oracle_agreement():
    res = sweeps.sweep_enumeration(4, (2, 3))
    counts = [res.counts[f"n={n}"] for n in range(1, 5)]
    _record(1, "torsion pairs 2, 5, 14, 42; hom/ext oracle agreement p=2,3", res.ok and counts == [2, 5, 14, 42],
            res.seconds, 60, f"counts={counts} failures={res.failures[:3]}")


def test_criterion_2_comparable_equivalence():
    res = _sweep("comparable", sweeps.sweep_comparable)
    _record(2, "three conditions agree; T1 = T2*Z and F2 = Z*F1", res.ok and res.counts["ordered_pairs"] == 4 + 25 + 196,
            res.seconds, 120, f"{res.counts} failures={res.failures[:3]}")


def test_criterion_3_a2_reproduction():
    t0 = time.perf_counter()
    rep = repro.repro_a2()
    golden = run_case("a2").passed
    ok = (
        golden
        and (rep["T"], rep["F"], rep["Z"]) == (["[1,1]", "[1,2]"], ["[1,1]", "[2,2]"], ["[1,1]"])
        and rep["sequences"] == ["0 -> 2 = 2", "12 = 12 -β-> 1", "1 = 1 = 1"]
        and rep["F_extension_witness"] == ["2", "12", "1"]
        and rep["F_closed_under_extensions"] is False
        and rep["F_closed_under_Z_extensions"] is True
    )
    _record(3, "kA_2 Serre extension, sequences and closure witness", ok, time.perf_counter() - t0, None)


def test_criterion_4_serre_extensions():
    res = _sweep("serre", sweeps.sweep_serre)
    expected = {"combinations n=1": 2 * 2, "combinations n=2": 5 * 4, "combinations n=3": 14 * 8}
    _record(4, "Serre extensions pass with Z = S", res.ok and res.counts == expected,
            res.seconds, 180, f"{res.counts} failures={res.failures[:3]}")


def test_criterion_5_quotient_torsion_pairs():
    t0 = time.perf_counter()
    theories = _sweep("comparable", sweeps.sweep_comparable).theories + _sweep("serre", sweeps.sweep_serre).theories
    res = sweeps.sweep_stable(theories=theories)
    ka2 = repro.repro_stable_ka2()
    ok = res.ok and res.counts["theories"] == len(theories) == 84 + 136
    ok = ok and ka2["quotient_T"] == ["[1,1]"] and ka2["quotient_F"] == ["[1,2]"] and run_case("stable-ka2").passed
    _record(5, "quotient by Z carries the induced torsion pair", ok, time.perf_counter() - t0, None,
            f"{res.counts} failures={res.failures[:3]}")


def test_criterion_6_abelian_groups():
    t0 = time.perf_counter()
    rep = repro.repro_abgrp(360)
    nested = rep["nested"]
    ok = rep["ok"] and len(nested) == 27 and all(not e["annihilator_mismatches"] for e in nested)
    _record(6, "(T_Q, F_P) for nested prime sets on groups of order dividing 360", ok,
            time.perf_counter() - t0, 60, f"nested={len(nested)} universe={rep['universe_size']}")


def test_criterion_7_chain_complexes():
    t0 = time.perf_counter()
    rep = repro.repro_chain(seed=0, samples=200)
    pret = rep["pretorsion"]
    ok = (
        rep["ok"]
        and all(p["torsion_pair"] is True for p in (e["implemented"] for e in rep["torsion_pairs"]))
        and len(pret) == 6
        and all("literal" in e for e in rep["torsion_pairs"])
    )
    _record(7, "complexes: torsion pairs, (T_m, F'_n) pretorsion, index convention reported", ok,
            time.perf_counter() - t0, 60, f"universe={rep['universe_size']}")


def test_criterion_8_stability():
    res = sweeps.sweep_stability(n=4, functions=10, thresholds=5, seed=0)
    _record(8, "slope stability on kA_4, 10 functions", res.ok, res.seconds, 120,
            f"{res.counts} failures={res.failures[:3]}")


def test_criterion_9_invariants():
    res = sweeps.sweep_invariants()
    ok = res.ok and set(res.counts) == {"typea", "abgrp", "chaincx"}
    _record(9, "invariant suite on all backends", ok, res.seconds, None, f"{res.counts} failures={res.failures[:3]}")


if __name__ == "__main__":
    import sys

    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_criterion_")]
    tests.sort(key=lambda f: int(f.__name__.split("_")[2]))
    failed = 0
    for fn in tests:
        try:
            fn()
        except AssertionError:
            failed += 1
    sys.exit(1 if failed else 0)
