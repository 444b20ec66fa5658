"""The nine acceptance criteria, one test each.

Every test prints a single ``PASS``/``FAIL`` line; the lines are repeated in
the pytest terminal summary.  Run directly with ``python3 tests/test_acceptance.py``.
"""

import random
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from conftest import random_simplex_vertices  # noqa: E402
from latpoly.classify import catalog_entries, classify  # noqa: E402
from latpoly.ehrhart import delta_from_counts  # noqa: E402
from latpoly.groups import delta_from_group, lambda_group_of_simplex  # noqa: E402
from latpoly.polytope import LatticePolytope, apply_map, pyramid, random_unimodular_map  # noqa: E402
from latpoly.verify import (PASS, suite_enumeration, suite_feasibility, suite_lemmas,  # noqa: E402
                            suite_matrices, suite_tables)

RESULTS = []


def report(n, title, ok, seconds, limit, extra=""):
    in_time = seconds < limit
    status = "PASS" if ok and in_time else "FAIL"
    line = f"{status} criterion {n}: {title} ({seconds:.1f}s, limit {limit}s)"
    if not in_time:
        line += " [over time]"
    if extra:
        line += f" -- {extra}"
    RESULTS.append(line)
    print(line)
    assert ok, line
    assert in_time, line


def timed(fn, *a, **kw):
    t = time.perf_counter()
    out = fn(*a, **kw)
    return out, time.perf_counter() - t


def _statuses(rep):
    return {c["id"]: c["status"] for c in rep.checks}


def test_criterion_1_table1():
    rep, s = timed(suite_tables, dmax=9, parts=("table1",))
    ok = rep.ok and len(rep.checks) > 0 and all(c["status"] == PASS for c in rep.checks)
    report(1, "simplex catalog, d <= 9", ok, s, 30, f"{len(rep.checks)} instances")


def test_criterion_2_table2():
    rep, s = timed(suite_tables, parts=("table2",))
    ok = len(rep.checks) == 24 and all(c["status"] == PASS for c in rep.checks)
    report(2, "spanning polytopes", ok, s, 10, f"{len(rep.checks)} polytopes")


def test_criterion_3_table3():
    rep, s = timed(suite_tables, kmax=4, parts=("table3",))
    ok = len(rep.checks) == 12 and all(c["status"] == PASS for c in rep.checks)
    ok = ok and all(c["details"].get("half_sum") == c["details"]["half_sum_expected"]
                    for c in rep.checks if "half_sum_expected" in c["details"])
    report(3, "non-spanning families, k = 2..4", ok, s, 30, f"{len(rep.checks)} polytopes")


def test_criterion_4_matrices():
    rep, s = timed(suite_matrices, kmin=2, kmax=5)
    dets_ok = all(c["status"] == PASS for c in rep.checks if c["id"].startswith("det/"))
    identities = [c for c in rep.checks if c["id"].startswith("identity/")]
    discrepancies = [c for c in identities if c["status"] != PASS]
    # a non-verifying identity counts only as a reported discrepancy: the source
    # and target volumes differ, so no unimodular map can exist, and the amended
    # reading of the source verifies at the same k
    explained = True
    for c in discrepancies:
        d = c["details"]
        amended = f"identity/{d['claim']}'/k={d['k']}"
        explained = explained and d.get("equivalent") is False \
            and d.get("source_volume") != d.get("target_volume") \
            and _statuses(rep).get(amended) == PASS
    u14 = [c for c in identities if c["id"].startswith("identity/A:U_{1,4}/")]
    u14_ok = all(c["details"].get("substituted_for") == "A:U_{1,5}" for c in u14) and len(u14) == 4
    names = sorted({c["details"]["claim"] for c in discrepancies})
    extra = (f"{len(identities) - len(discrepancies)}/{len(identities)} identities verify; "
             f"U_{{1,4}} tested via U_{{1,5}}; discrepancies reported: {names} "
             f"(source volume {discrepancies[0]['details']['source_volume']} vs "
             f"{discrepancies[0]['details']['target_volume']}, amended reading verifies)"
             if discrepancies else f"all {len(identities)} identities verify")
    report(4, "matrix identities, k = 2..5", dets_ok and explained and u14_ok, s, 60, extra)


def test_criterion_5_group_oracle():
    rng = random.Random(20240517)
    t = time.perf_counter()
    bad = []
    for i in range(500):
        d = rng.randint(1, 5)
        verts, vol = random_simplex_vertices(rng, d, -3, 3, max_vol=12)
        G = lambda_group_of_simplex(verts)
        S = LatticePolytope(verts, d)
        if G.order != vol or delta_from_group(G) != delta_from_counts(S):
            bad.append(verts)
    s = time.perf_counter() - t
    report(5, "delta from the group equals delta from counting, 500 simplices", not bad, s, 120,
           f"{len(bad)} mismatches")


def test_criterion_6_enumeration():
    rep, s = timed(suite_enumeration, dmax=5, vmax=4)
    agree = [c for c in rep.checks if c["id"].startswith("sweeps-agree/")]
    match = [c for c in rep.checks if c["id"].startswith("table-match/")]
    ok = rep.ok and len(agree) == len(match) == 5
    counts = next(c["details"] for c in rep.checks if c["id"] == "class-counts")
    report(6, "Hermite sweep and group sweep agree with the simplex catalog, d <= 5", ok, s, 300,
           f"classes per d: { {d: sum(v.values()) for d, v in counts.items()} }")


def test_criterion_7_feasibility():
    rep, s = timed(suite_feasibility, dmax=6, vmax=4)
    feas = [c for c in rep.checks if c["id"].startswith("feasibility/")]
    printed = next(c for c in rep.checks if c["id"].startswith("printed-V3-rule/"))
    ok = rep.ok and len(feas) == 6 and "rejects" in printed["details"]["verdict"]
    report(7, "derived feasibility matches enumeration, d <= 6", ok, s, 60, printed["details"]["verdict"])


def test_criterion_8_lemmas():
    rep, s = timed(suite_lemmas, seed=0, n_pairs=200, n_maps=100)
    splits = [c for c in rep.checks if c["id"].startswith("split/")]
    ok = rep.ok and all(c["status"] == PASS for c in rep.checks) and len(splits) > 0
    report(8, "split, monotonicity, Stanley/Hibi, invariance", ok, s, 180,
           f"{len(splits)} splits, {len(rep.checks)} checks")


def test_criterion_9_round_trip():
    rng = random.Random(99)
    t = time.perf_counter()
    bad = []
    entries = catalog_entries(9, 4)
    for e in entries:
        layers = rng.randint(0, 3)
        P = e.core()
        for _ in range(layers):
            P = pyramid(P)
        Q = apply_map(random_unimodular_map(P.ambient_dim, rng), P)
        r = classify(Q)
        got = (r.entry.family, r.entry.params, r.entry.pyramids) if r.in_scope else None
        if got != (e.family, e.params, layers) or r.replay(Q) != e.core():
            bad.append(e.label())
    s = time.perf_counter() - t
    report(9, "generate, transform, classify round trip", not bad, s, 300,
           f"{len(entries) - len(bad)}/{len(entries)} recovered")


if __name__ == "__main__":
    failures = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                failures += 1
    sys.exit(1 if failures else 0)
