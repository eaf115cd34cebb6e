"""Acceptance suite.

One test per criterion; `pytest -v` shows exactly one pass/fail line
for each.  Each test also prints its own summary line.  All arithmetic
is exact, so the tolerances are equalities; timed criteria assert
their wall-clock budget.
"""

import json
import random
import subprocess
import sys
import time
from fractions import Fraction

from newton_monodromy.latticecount import EigenvalueClass
from newton_monodromy.oracles import (
    _check_one_instance,
    _order_representatives,
    _random_convenient_support,
    check_AE,
    check_beta,
    check_chi_routes,
    weighted_homogeneous_families,
)
from newton_monodromy.pipeline import (
    enumerate_theta_packages,
    eigenvalue_candidates,
    jordan_blocks,
    jordan_max_count,
    jordan_max_count_k2,
    jordan_max_count_majorizing,
    jordan_second_count,
    jordan_second_count_k2,
    jordan_second_count_majorizing,
    motivic_beta,
    spectrum,
)
from newton_monodromy.polys import peval_one


def _report(num, label, elapsed=None, budget=None):
    timing = ""
    if elapsed is not None:
        timing = " (%.1fs" % elapsed
        timing += " < %ds)" % budget if budget else ")"
    print("criterion %d PASS: %s%s" % (num, label, timing))


def test_criterion_1_alternating_identity():
    t0 = time.time()
    rep = check_AE(seed=1, count=100)
    elapsed = time.time() - t0
    assert rep.ok, rep.failures
    assert rep.passed == 100
    assert elapsed < 10
    _report(1, "alternating lattice-count sums equal the mixed volume "
               "on 100 instances", elapsed, 10)


def test_criterion_2_chi_two_routes():
    t0 = time.time()
    rep = check_chi_routes(seed=1, count=50)
    elapsed = time.time() - t0
    assert rep.ok, rep.failures
    assert rep.passed == 50
    assert elapsed < 10
    _report(2, "Euler characteristic two-route equality on 50 instances",
            elapsed, 10)


def test_criterion_3_beta_engine():
    t0 = time.time()
    rep = check_beta(seed=1, count=20)
    elapsed = time.time() - t0
    assert rep.ok, rep.failures
    assert rep.passed >= 20
    assert elapsed < 20
    _report(3, "beta recursion solvable, bounded, volume-consistent, "
               "closed-form and order independent on 20 polytopes",
            elapsed, 20)


def _local_instances(seed, count):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n = rng.choice([2, 2, 3, 3, 3, 4])
        k = rng.choice([2, 3]) if n >= 3 else 2
        top = 2 if n == 4 else 4
        extra = rng.randint(0, 1) if n == 4 else rng.randint(0, 2)
        sups = [_random_convenient_support(rng, n, extra, top)
                for _ in range(k)]
        out.append((sups, n, k))
    return out


def test_criterion_4_pipeline_coherence():
    t0 = time.time()
    for sups, n, k in _local_instances(2026, 30):
        pkgs = enumerate_theta_packages(sups, n, k, "local")
        sign = (-1) ** (n - k)
        for alpha in _order_representatives(pkgs):
            # check=True exercises the per-face divisibility, the
            # degree window, and the binomial route for every i
            r = jordan_blocks(pkgs, alpha, check=True)
            assert all(c >= 0 for c in r.counts_geq)
            assert all(r.counts_geq[i] >= r.counts_geq[i + 1]
                       for i in range(len(r.counts_geq) - 1))
            assert jordan_max_count(pkgs, alpha) == \
                sign * r.beta.get(2 * n - 2 * k, 0)
            if n - k >= 1:
                assert jordan_second_count(pkgs, alpha) == \
                    sign * r.beta.get(2 * n - 2 * k - 1, 0)
    elapsed = time.time() - t0
    assert elapsed < 60
    _report(4, "pipeline coherence on 30 convenient instances "
               "(n <= 4, k in {2,3})", elapsed, 60)


def test_criterion_5_corollaries():
    checked_k2 = 0
    for sups, n, k in _local_instances(5050, 14):
        if k != 2:
            continue
        pkgs = enumerate_theta_packages(sups, n, k, "local")
        for alpha in _order_representatives(pkgs):
            assert jordan_max_count_k2(pkgs, alpha) == \
                jordan_max_count(pkgs, alpha)
            if n - k >= 1:
                assert jordan_second_count_k2(pkgs, alpha) == \
                    jordan_second_count(pkgs, alpha)
        checked_k2 += 1
    assert checked_k2 >= 5
    # mutually majorizing Newton polyhedra: dilates of a common support
    bases = [
        ([(2, 0, 0), (0, 2, 0), (0, 0, 2), (1, 1, 0)], 3, [1, 2]),
        ([(3, 0, 0), (0, 2, 0), (0, 0, 2)], 3, [1, 3]),
        ([(2, 0, 0, 0), (0, 2, 0, 0), (0, 0, 2, 0), (0, 0, 0, 2)],
         4, [1, 2]),
        ([(2, 0, 0), (0, 3, 0), (0, 0, 2), (1, 1, 1)], 3, [2, 3]),
    ]
    checked_maj = 0
    for base, n, factors in bases:
        sups = [sorted(tuple(f * x for x in p) for p in base)
                for f in factors]
        pkgs = enumerate_theta_packages(sups, n, len(sups), "local")
        for alpha in _order_representatives(pkgs):
            assert jordan_max_count_majorizing(pkgs, alpha) == \
                jordan_max_count(pkgs, alpha)
            if n - len(sups) >= 1:
                assert jordan_second_count_majorizing(pkgs, alpha) == \
                    jordan_second_count(pkgs, alpha)
        checked_maj += 1
    assert checked_maj == len(bases)
    _report(5, "specialized closed forms (k=2 and mutually majorizing) "
               "match the general output on %d + %d instances"
            % (checked_k2, checked_maj))


def _spectrum_invariants(pkgs, n, k):
    sp = spectrum(pkgs)
    top = Fraction(n - k + 1)
    class_sums = {}
    for b, c in sp.items():
        assert 0 < b < top, "support outside the open window"
        assert b.denominator > 1
        assert sp[top - b] == c, "symmetry broken"
        class_sums[b % 1] = class_sums.get(b % 1, 0) + c
    for frac, tot in class_sums.items():
        beta = motivic_beta(pkgs, frac)
        assert tot == (-1) ** (n - k) * peval_one(beta)


def test_criterion_6_spectrum():
    instances = [(s, n, k) for s, n, k in _local_instances(606, 16)
                 if n <= 3][:10]
    assert len(instances) >= 8
    for sups, n, k in instances:
        pkgs = enumerate_theta_packages(sups, n, k, "local")
        _spectrum_invariants(pkgs, n, k)
    # one heavier instance above the plane
    sups = [[(2, 0, 0, 0), (0, 2, 0, 0), (0, 0, 2, 0), (0, 0, 0, 2)],
            [(2, 0, 0, 0), (0, 2, 0, 0), (0, 0, 2, 0), (0, 0, 0, 4)]]
    pkgs = enumerate_theta_packages(sups, 4, 2, "local")
    _spectrum_invariants(pkgs, 4, 2)
    _report(6, "spectrum symmetry, support window, and class sums on "
               "%d instances" % (len(instances) + 1))


def test_criterion_7_weighted_homogeneous():
    fams = weighted_homogeneous_families()
    nontrivial = 0
    for sups, n, k in fams:
        pkgs = enumerate_theta_packages(sups, n, k, "local")
        for alpha in _order_representatives(pkgs):
            r = jordan_blocks(pkgs, alpha)
            if n - k >= 1:
                assert r.counts_geq[1] == 0, (sups, str(alpha))
        if n - k >= 1:
            nontrivial += 1
    assert nontrivial >= 5
    _report(7, "zero Jordan blocks of size >= 2 on %d weighted-"
               "homogeneous families" % nontrivial)


def _infinity_support(rng, n, top, extra):
    pts = [tuple(0 for _ in range(n))]
    for i in range(n):
        v = [0] * n
        v[i] = rng.randint(1, top)
        pts.append(tuple(v))
    for _ in range(extra):
        pts.append(tuple(rng.randint(0, 1) for _ in range(n)))
    return sorted(set(pts))


def test_criterion_8_infinity_mode():
    t0 = time.time()
    rng = random.Random(11)
    for _ in range(10):
        n = rng.choice([2, 3, 3])
        k = 2 if n == 2 else rng.choice([2, 2, 3])
        top = 2 if k == 3 else 3
        extra = 0 if k == 3 else rng.randint(0, 1)
        sups = [_infinity_support(rng, n, top, extra) for _ in range(k)]
        # coherence, closed forms, spectrum symmetry and class sums
        pkgs = _check_one_instance(sups, n, k, "infinity")
        if k == 2:
            for alpha in _order_representatives(pkgs):
                assert jordan_max_count_k2(pkgs, alpha) == \
                    jordan_max_count(pkgs, alpha)
                if n - k >= 1:
                    assert jordan_second_count_k2(pkgs, alpha) == \
                        jordan_second_count(pkgs, alpha)
    elapsed = time.time() - t0
    assert elapsed < 30
    _report(8, "full invariant suite at infinity on 10 instances",
            elapsed, 30)


def test_criterion_9_determinism():
    instance = json.dumps({
        "n": 3, "k": 2, "mode": "local",
        "polynomials": [
            {"support": [[3, 0, 0], [0, 2, 0], [0, 0, 2], [1, 1, 1]]},
            {"support": [[2, 0, 0], [0, 4, 0], [0, 0, 2]]},
        ],
    })
    outputs = []
    for jobs in ("1", "2", "auto"):
        proc = subprocess.run(
            [sys.executable, "-m", "newton_monodromy.cli",
             "--input", "-", "--spectrum", "--jobs", jobs,
             "--seed", "7"],
            input=instance.encode(), capture_output=True)
        assert proc.returncode == 0, proc.stderr
        outputs.append(proc.stdout)
    assert outputs[0] == outputs[1] == outputs[2]
    doc = json.loads(outputs[0])
    assert len(doc["results"]) > 1
    _report(9, "byte-identical JSON across --jobs 1, 2, and max")
