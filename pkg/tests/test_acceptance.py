"""Acceptance gate: one PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py -v``.  The corpus size can be
lowered for a quick look with ``VCALP_CORPUS_SIZE=500`` (the default is the full
10,000 graphs).
"""

import os
import random

import pytest

from vcalp import oracle as O
from vcalp.lpvc import lp_value, surplus_profile
from vcalp.reduce import (
    ReducedInstance,
    _rule1_applies,
    apply_rule1,
    apply_rule2,
    apply_rule3,
    find_rule2_set,
    find_rule3_set,
    instance,
    trace_charge,
)
from vcalp.solve import IMPROVED, SIMPLE, VARIANTS, SolveStats, solve_decision, solve_minimum
from vcalp.transversal import (
    KERNEL,
    OCT,
    SVD,
    ceil_log2,
    kernelize,
    solve_xy_deletion,
    vc_param_run,
)

from conftest import gnp, named_graphs, random_cubic, vc_by_clique

CORPUS_SIZE = int(os.environ.get("VCALP_CORPUS_SIZE", "10000"))
SEED = 20240611

# Tree-size constants, frozen after the first full corpus measurement
# (measured maxima: improved 0.1447, simple 0.1636).
C_IMPROVED = 0.15
C_SIMPLE = 0.17
BASE_IMPROVED = 2.3146
BASE_SIMPLE = 2.6181

RESULTS = {}


def verdict(request, number, ok, detail):
    RESULTS[number] = ok
    line = f"CRITERION {number}: {'PASS' if ok else 'FAIL'} - {detail}"
    capman = request.config.pluginmanager.getplugin("capturemanager")
    with capman.global_and_fixture_disabled():
        print("\n" + line)
    assert ok, line


# -- corpus shared by criteria 1-4 --------------------------------------------------

def corpus():
    rng = random.Random(SEED)
    for i in range(CORPUS_SIZE):
        n = rng.randint(4, 16)
        p = rng.choice([0.2, 0.4, 0.6])
        yield f"random-{i}", gnp(rng, n, p)
    yield from named_graphs().items()


@pytest.fixture(scope="module")
def corpus_run():
    out = {"graphs": 0, "mismatch": [], "drops": 0, "violations": [], "ratios": {v: [] for v in VARIANTS},
           "b6": 0, "b6_bad": 0}
    for name, g in corpus():
        vc = vc_by_clique(g) if g.n > O.LIMITS.max_n_vc else O.bf_min_vc(g)[0]
        out["graphs"] += 1
        for variant in VARIANTS:
            st = SolveStats()
            cover = solve_minimum(g, variant, st)
            if len(cover) != vc or not g.is_vertex_cover(cover):
                out["mismatch"].append((name, variant, "minimum", len(cover), vc))
            runs = [st]
            for k in (vc - 1, vc, vc + 1):
                dst = SolveStats()
                got = solve_decision(g, k, variant, dst)
                runs.append(dst)
                if (got is not None) != (k >= vc) or (got is not None and len(got) > k):
                    out["mismatch"].append((name, variant, k, vc))
                base = BASE_IMPROVED if variant == IMPROVED else BASE_SIMPLE
                out["ratios"][variant].append(
                    (dst.nodes_visited / (base ** (dst.mu_root / 2) * g.n ** 2), name, k - vc))
            for r in runs:
                out["drops"] += r.drop_violations
                out["violations"].extend((name, variant, v) for v in r.violations[:2])
                out["b6"] += r.b6_instances
                out["b6_bad"] += r.b6_structure_violations
    return out


def test_criterion_1_oracle_equivalence(request, corpus_run):
    bad = corpus_run["mismatch"]
    verdict(request, 1, not bad,
            f"{corpus_run['graphs']} graphs x 2 variants, minimum + 3 decisions each; "
            f"{len(bad)} mismatches {bad[:3]}")


def test_criterion_2_measure_drops(request, corpus_run):
    verdict(request, 2, corpus_run["drops"] == 0,
            f"drop_violations = {corpus_run['drops']} {corpus_run['violations'][:3]}")


def test_criterion_3_tree_size(request, corpus_run):
    worst_i = max(corpus_run["ratios"][IMPROVED])
    worst_s = max(corpus_run["ratios"][SIMPLE])
    ok = worst_i[0] <= C_IMPROVED and worst_s[0] <= C_SIMPLE
    verdict(request, 3, ok,
            f"max nodes/({BASE_IMPROVED}^mu n^2) = {worst_i[0]:.4f} <= C = {C_IMPROVED} (improved); "
            f"simple vs {BASE_SIMPLE}: {worst_s[0]:.4f} <= {C_SIMPLE}")


def test_criterion_4_b6_structure(request, corpus_run):
    rng = random.Random(SEED + 4)
    reached, bad = corpus_run["b6"], corpus_run["b6_bad"]
    wrong = 0
    for _ in range(1000):
        g = random_cubic(rng, rng.choice(range(12, 25, 2)))
        st = SolveStats()
        cover = solve_minimum(g, IMPROVED, st)
        below = SolveStats()
        if solve_decision(g, len(cover) - 1, IMPROVED, below) is not None or not g.is_vertex_cover(cover):
            wrong += 1
        for s in (st, below):
            reached += s.b6_instances
            bad += s.b6_structure_violations
    verdict(request, 4, bad == 0 and wrong == 0 and reached > 0,
            f"{reached} B6 nodes, {bad} not connected, cubic, n>=11, girth>=7; {wrong} wrong answers on 1000 cubic graphs")


# -- criterion 5 ----------------------------------------------------------------------

def rule_instances(per_rule):
    """Yield (rule, before, after) along reduction chains of random graphs."""
    rng = random.Random(SEED + 5)
    count = {1: 0, 2: 0, 3: 0}
    while min(count.values()) < per_rule:
        n = rng.randint(3, 12)
        g = gnp(rng, n, rng.choice([0.15, 0.2, 0.25, 0.3, 0.4, 0.5]))
        cur = instance(g, rng.randint(0, n))
        while cur.graph.n:
            h = cur.graph
            if _rule1_applies(h):
                rule, nxt = 1, apply_rule1(cur)
            elif min(surplus_profile(h)) >= 2:
                break
            else:
                z = find_rule2_set(h)
                if z is not None:
                    rule, nxt = 2, apply_rule2(cur, z)
                else:
                    rule, nxt = 3, apply_rule3(cur, find_rule3_set(h))
            if count[rule] < per_rule:
                count[rule] += 1
                yield rule, cur, nxt
            cur = nxt


def test_criterion_5_rule_soundness(request):
    per_rule = 2000
    failures = []
    seen = {1: 0, 2: 0, 3: 0}
    for rule, before, after in rule_instances(per_rule):
        seen[rule] += 1
        g, h = before.graph, after.graph
        vc_g = O.bf_min_vc(g)[0]
        vc_h, cover_h = O.bf_min_vc(h)
        charge = before.k - after.k
        # vc(G) <= k  <=>  vc(G') <= k - charge, for every k
        if vc_g != vc_h + charge:
            failures.append((rule, "equivalence"))
        if (rule == 1 and after.mu != before.mu) or (rule == 2 and after.mu > before.mu - 1) \
                or after.mu > before.mu:
            failures.append((rule, "measure"))
        step_trace = after.trace[len(before.trace):]
        lifted = ReducedInstance(h, after.k, step_trace, g).lift(cover_h)
        if len(lifted) != vc_g or not g.is_vertex_cover(lifted) or trace_charge(step_trace) != charge:
            failures.append((rule, "lift"))
    verdict(request, 5, not failures and min(seen.values()) == per_rule,
            f"before/after checks per rule {seen}; {len(failures)} failures {failures[:3]}")


# -- criterion 6 ----------------------------------------------------------------------

def test_criterion_6_oct_svd(request):
    rng = random.Random(SEED + 6)
    failures = 0
    for _ in range(2000):
        g = gnp(rng, rng.randint(1, 8), rng.random())
        for kind, bf, check in ((OCT, O.bf_min_oct, O.bf_is_bipartite), (SVD, O.bf_min_svd, O.bf_is_split)):
            opt = bf(g)
            found = solve_xy_deletion(g, opt, kind)
            if found is None or len(found) > opt or not check(g.delete_vertices(found)):
                failures += 1
            if opt > 0 and solve_xy_deletion(g, opt - 1, kind) is not None:
                failures += 1
    verdict(request, 6, failures == 0, f"2000 graphs n<=8, OCT and SVD thresholds; {failures} failures")


# -- criterion 7 ----------------------------------------------------------------------

def test_criterion_7_vc_param(request):
    rng = random.Random(SEED + 7)
    failures, fired, done = 0, 0, 0
    while done < 500:
        n = rng.randint(2, 14)
        g = gnp(rng, n, rng.uniform(0.1, 0.6))
        if n <= 12 and rng.random() < 0.5:
            kind, s = "kvd", set(O.bf_min_kvd_set(g))
        else:
            kind, s = "oct", set(O.bf_min_oct_set(g))
        extra = [v for v in g.vertices() if v not in s and rng.random() < 0.2]
        if extra:
            bigger = s | set(extra)
            rest = g.delete_vertices(bigger)
            if kind == "oct" or O.bf_is_konig(rest):
                s = bigger
        vc = O.bf_min_vc(g)[0]
        for ell in (vc - 1, vc, vc + 1):
            try:
                run = vc_param_run(g, s, ell, kind)
            except AssertionError:
                fired += 1
                continue
            if (run.cover is not None) != (ell >= vc):
                failures += 1
        done += 1
    verdict(request, 7, failures == 0 and fired == 0,
            f"500 instances n<=14; {failures} wrong answers; mu <= |S|/2 assertion fired {fired} times")


# -- criterion 8 ----------------------------------------------------------------------

def test_criterion_8_kernel(request):
    rng = random.Random(SEED + 8)
    small, bound_bad, wrong = 0, 0, 0
    while small < 200:
        n = rng.randint(8, 16)
        g = gnp(rng, n, rng.uniform(0.25, 0.7))
        c = rng.choice([1, 1, 2])
        k = rng.randint((lp_value(g) + 1) // 2, n)
        res = kernelize(g, k, c)
        if res.status != KERNEL or res.graph.n == 0:
            continue
        small += 1
        if res.graph.n > 2 * res.k - 2 * c * ceil_log2(res.k):
            bound_bad += 1
        if (O.bf_min_vc(g)[0] <= k) != (O.bf_min_vc(res.graph)[0] <= res.k):
            wrong += 1
    large = 0
    while large < 20:
        g = random_cubic(rng, rng.choice([40, 50, 60]))
        res = kernelize(g, lp_value(g) // 2 + rng.randint(8, 20), 1)
        if res.status == KERNEL:
            large += 1
            if res.graph.n > 2 * res.k - 2 * ceil_log2(res.k):
                bound_bad += 1
    verdict(request, 8, bound_bad == 0 and wrong == 0,
            f"{small} kernels with n<=16 (+{large} larger); {bound_bad} over the bound, {wrong} not equivalent")


def test_criterion_9_covered_by_2_and_3(request):
    ok = RESULTS.get(2) is True and RESULTS.get(3) is True
    verdict(request, 9, ok, "asymptotic runtimes are checked through criteria 2 and 3")
