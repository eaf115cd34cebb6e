"""Randomized self-checks with independent brute-force routes.

Each checker generates seeded instances and validates one family of
identities.  The enumeration logic here is deliberately written from
scratch (plane hulls by direction scanning, segment formulas by hand)
so that agreement with the main pipeline is informative; only the
exact-arithmetic utilities are shared.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .betapoly import BasedPolytope, beta_pseudoprime_closed, beta_recursive
from .geometry import Polytope, lattice_distance_of_points
from .intlinalg import coords_in_basis, content, vec_add, vec_sub
from .latticecount import (
    EigenvalueClass,
    TorsionCharacter,
    alternating_mixed_identity,
    chi_via_ehrhart,
    chi_via_volume,
)
from .pipeline import (
    enumerate_theta_packages,
    eigenvalue_candidates,
    jordan_blocks,
    jordan_max_count,
    jordan_second_count,
    motivic_beta,
    spectrum,
)
from .polys import padd, peval_one, pmul, pscale, pshift, t2m1_power


@dataclass
class OracleReport:
    """Outcome of one randomized check family."""

    name: str
    seed: int
    count: int
    passed: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.failures

    def record(self, ok, detail):
        if ok:
            self.passed += 1
        else:
            self.failures.append(detail)

    def as_dict(self):
        return {
            "name": self.name,
            "seed": self.seed,
            "count": self.count,
            "passed": self.passed,
            "ok": self.ok,
            "failures": list(self.failures),
        }


# ---------------------------------------------------------------------------
# alternating count / mixed volume identity
# ---------------------------------------------------------------------------

def _random_sublattice(rng, n):
    """Lower triangular basis with diagonal product (index) at most 4."""
    while True:
        diag = [rng.choice([1, 1, 1, 2, 3, 4]) for _ in range(n)]
        idx = 1
        for d in diag:
            idx *= d
        if idx <= 4:
            break
    rows = []
    for i in range(n):
        row = [0] * n
        row[i] = diag[i]
        for j in range(i):
            row[j] = rng.randint(0, diag[j])
        rows.append(tuple(row))
    return rows


def _random_lattice_points(rng, n, basis, count):
    pts = []
    guard = 0
    while len(pts) < count and guard < 500:
        guard += 1
        p = tuple(rng.randint(0, 4) for _ in range(n))
        c = coords_in_basis(basis, p)
        if c is not None and all(isinstance(x, int) for x in c):
            pts.append(p)
    if not pts:
        pts = [tuple(0 for _ in range(n))]
    return pts


def check_AE(seed=1, count=100):
    """Alternating lattice-point sums of Minkowski sub-sums versus the
    mixed volume, on random rational instances with sublattices."""
    rng = random.Random(seed)
    rep = OracleReport("alternating-count-vs-mixed-volume", seed, count)
    for _ in range(count):
        n = rng.randint(1, 3)
        basis = _random_sublattice(rng, n)
        deltas = [_random_lattice_points(rng, n, basis, rng.randint(1, 3))
                  for _ in range(n)]
        den = rng.choice([1, 1, 2, 3])
        delta0 = [tuple(Fraction(rng.randint(0, 4 * den), den)
                        for _ in range(n))
                  for _ in range(rng.randint(1, 3))]
        lhs1, lhs2, rhs = alternating_mixed_identity(delta0, deltas, basis)
        rep.record(lhs1 == lhs2 == rhs,
                   {"n": n, "basis": basis, "deltas": deltas,
                    "delta0": delta0, "values": (lhs1, lhs2, rhs)})
    return rep


# ---------------------------------------------------------------------------
# twisted Euler characteristic, two routes
# ---------------------------------------------------------------------------

def check_chi_routes(seed=1, count=50):
    """Series route versus volume route for the twisted characteristic
    of a torus hypersurface; dilation enforces the vertex condition."""
    rng = random.Random(seed)
    rep = OracleReport("chi-two-routes", seed, count)
    done = 0
    while done < count:
        n = rng.randint(1, 3)
        d = rng.choice([1, 2, 2, 3, 4])
        tau = TorsionCharacter.of(
            [Fraction(rng.randint(0, d - 1), d) for _ in range(n)])
        pts = [tuple(d * rng.randint(0, 2) for _ in range(n))
               for _ in range(n + rng.randint(1, 3))]
        poly = Polytope.from_points(pts, n)
        if poly.dim != n:
            continue
        done += 1
        ord_ = tau.image_order()
        alphas = [Fraction(j, ord_) for j in range(ord_)]
        outside = []
        j = 0
        while len(outside) < 3:
            j += 1
            cand = Fraction(1, ord_ * 2 + j)
            if cand not in alphas:
                outside.append(cand)
        bad = []
        for a in alphas + outside:
            via_series = chi_via_ehrhart(poly, tau, a)
            via_volume = chi_via_volume(poly, tau, a)
            if via_series != via_volume:
                bad.append((a, via_series, via_volume))
        rep.record(not bad,
                   {"pts": pts, "tau": tau.values, "mismatches": bad})
    return rep


# ---------------------------------------------------------------------------
# virtual Betti engine
# ---------------------------------------------------------------------------

def _segment_beta_by_hand(a, b, order, n):
    """beta of a based segment from first principles: endpoint counts
    and the gated lattice length."""
    pa = 1 if content(a) % order == 0 else 0
    pb = 1 if content(b) % order == 0 else 0
    d = lattice_distance_of_points([a, b], n)
    length = content(vec_sub(b, a)) if d % order == 0 else 0
    poly = {}
    if pa + pb:
        poly[0] = -(pa + pb)
    c1 = pa + pb - length
    if c1:
        poly[1] = c1
    return poly


def _random_based_segment(rng, n):
    while True:
        a = tuple(rng.randint(-2, 3) for _ in range(n))
        b = tuple(rng.randint(-2, 3) for _ in range(n))
        if a == b:
            continue
        if lattice_distance_of_points([a, b], n) > 0:
            return a, b


def _random_based_polygon(rng):
    """A 2-dimensional lattice polytope in Z^3 avoiding the origin in
    its affine span."""
    while True:
        base = tuple(rng.randint(-2, 3) for _ in range(3))
        u = tuple(rng.randint(-2, 2) for _ in range(3))
        v = tuple(rng.randint(-2, 2) for _ in range(3))
        pts = [base]
        for _ in range(rng.randint(2, 4)):
            s, t = rng.randint(0, 2), rng.randint(0, 2)
            pts.append(vec_add(base, vec_add(
                tuple(s * x for x in u), tuple(t * x for x in v))))
        poly = Polytope.from_points(pts, 3)
        if poly.dim != 2:
            continue
        if lattice_distance_of_points(poly.verts, 3) > 0:
            return poly


def check_beta(seed=1, count=20):
    """Betti polynomials of based segments and polygons: recursion
    versus hand formula, closed form, and pulling-order independence."""
    rng = random.Random(seed)
    rep = OracleReport("beta-engine", seed, count)
    for i in range(count):
        order = rng.choice([2, 2, 3, 4, 5, 6])
        if i % 2 == 0:
            n = rng.randint(2, 3)
            a, b = _random_based_segment(rng, n)
            bp = BasedPolytope.of([a, b], n)
            expect = _segment_beta_by_hand(a, b, order, n)
        else:
            bp = BasedPolytope.of(_random_based_polygon(rng))
            expect = None
        alpha = Fraction(1, order)
        got = beta_recursive(bp, alpha)
        checks = []
        if expect is not None:
            checks.append(("hand-formula", got == expect, expect))
        deg_ok = all(0 <= e <= bp.box.dim for e in got)
        checks.append(("degree-bound", deg_ok, sorted(got)))
        vol = bp.box.normalized_volume() if bp.d_box % order == 0 else 0
        val = (-1) ** bp.box.dim * vol
        checks.append(("value-at-one", peval_one(got) == val, val))
        try:
            closed = beta_pseudoprime_closed(bp, alpha)
            checks.append(("closed-form", closed == got, closed))
        except ValueError:
            pass
        for s in (1, 2, 3):
            other = beta_recursive(bp, alpha, order_seed=s)
            checks.append(("seed-%d" % s, other == got, other))
        bad = [c for c in checks if not c[1]]
        rep.record(not bad,
                   {"verts": bp.box.verts, "order": order, "got": got,
                    "failed": bad})
    return rep


# ---------------------------------------------------------------------------
# Jordan pipeline
# ---------------------------------------------------------------------------

def _plane_compact_edges(points):
    """Compact edges of conv(points) + R_+^2, by scanning inner normals
    built from pairwise differences."""
    normals = set()
    for p in points:
        for q in points:
            dx, dy = q[0] - p[0], q[1] - p[1]
            a, b = dy, -dx
            if a <= 0 or b <= 0:
                a, b = -a, -b
            if a > 0 and b > 0:
                g = gcd(a, b)
                normals.add((a // g, b // g))
    edges = []
    for u in sorted(normals):
        vals = [u[0] * p[0] + u[1] * p[1] for p in points]
        m = min(vals)
        hit = sorted(p for p, v in zip(points, vals) if v == m)
        if len(set(hit)) >= 2:
            edges.append((u, (hit[0], hit[-1])))
    return edges


def _naive_join_beta(points, target, order):
    """Betti polynomial of a join given by raw points, padded to the
    target dimension, using routes separate from the main recursion."""
    n = len(points[0])
    poly = Polytope.from_points(points, n)
    bp = BasedPolytope.of(poly)
    if poly.dim == 0:
        got = {0: 1} if bp.d_box % order == 0 else {}
    elif poly.dim == 1:
        got = _segment_beta_by_hand(poly.verts[0], poly.verts[-1], order, n)
    else:
        try:
            got = beta_pseudoprime_closed(bp, Fraction(1, order))
        except ValueError:
            got = beta_recursive(bp, Fraction(1, order), order_seed=977)
    return pmul(t2m1_power(target - poly.dim), got)


def naive_beta_2d(support1, support2, order):
    """Betti polynomial of a plane curve pair by scratch enumeration.

    Complete re-derivation for n = k = 2: compact edges found by normal
    scanning, summand faces by direct minimization, joins assembled in
    ambient coordinates.
    """
    pts = sorted({vec_add(p, q) for p in support1 for q in support2})
    total = {}
    for u, edge in _plane_compact_edges(pts):
        gammas = []
        for sup in (support1, support2):
            vals = [u[0] * p[0] + u[1] * p[1] for p in sup]
            m = min(vals)
            gammas.append(sorted(p for p, v in zip(sup, vals) if v == m))
        g1, g2 = gammas
        kappa = [vec_add(vec_sub(p, g1[0]), g2[0]) for p in g1]
        everts = list(edge)
        s = sum(1 for i in range(2) if any(p[i] for p in everts))
        m_theta = s - 2
        inner = {}
        join0 = [p + () for p in g2]
        inner = padd(inner, _naive_join_beta(join0, s - 1, order))
        join1 = [p + (0,) for p in g2] + [p + (1,) for p in kappa]
        inner = padd(inner, _naive_join_beta(join1, s, order))
        if inner and min(inner) < 2:
            raise ArithmeticError("missing common factor in naive route")
        total = padd(total, pscale((-1) ** m_theta, pshift(inner, -2)))
    return total


def _random_convenient_support(rng, n, extra, top):
    pts = []
    for i in range(n):
        v = [0] * n
        v[i] = rng.randint(1, top)
        pts.append(tuple(v))
    for _ in range(extra):
        pts.append(tuple(rng.randint(0, top - 1) for _ in range(n)))
    return sorted(p for p in set(pts) if any(p))


def random_instance(rng, max_n=4, ks=(2, 3)):
    """One random convenient local instance (supports, n, k)."""
    while True:
        n = rng.randint(2, max_n)
        k = rng.choice(ks)
        if k > n:
            continue
        extra = rng.randint(0, 1 if n >= 4 else 2)
        top = 3 if n >= 4 else 4
        sups = [_random_convenient_support(rng, n, extra, top)
                for _ in range(k)]
        return sups, n, k


def weighted_homogeneous_families():
    """Support families cut out by a single weight vector each; their
    geometric monodromy has finite order, so no blocks of size 2."""
    fams = []

    def simplex(n, d):
        pts = [tuple(d if j == i else 0 for j in range(n)) for i in range(n)]
        if n >= 2 and d >= 2:
            extra = [d - 1, 1] + [0] * (n - 2)
            pts.append(tuple(extra))
        return sorted(set(pts))

    fams.append(([simplex(2, 2), simplex(2, 3)], 2, 2))
    fams.append(([simplex(3, 2), simplex(3, 2)], 3, 2))
    fams.append(([simplex(3, 3), simplex(3, 2)], 3, 2))
    fams.append(([simplex(3, 2), simplex(3, 3), simplex(3, 4)], 3, 3))
    fams.append(([simplex(4, 2), simplex(4, 3)], 4, 2))
    fams.append(([simplex(4, 2), simplex(4, 2), simplex(4, 3)], 4, 3))
    # one non-unit weight vector: w = (1,1,2), degrees 4 and 2
    fams.append(([[(4, 0, 0), (0, 4, 0), (0, 0, 2), (2, 2, 0)],
                  [(2, 0, 0), (0, 2, 0), (0, 0, 1)]], 3, 2))
    return fams


def check_jordan(seed=1, count=12):
    """Pipeline coherence on random instances plus structured families.

    Random part: closed-form max/second counts versus coefficients, the
    binomial route, spectrum symmetry and class sums.  For n = k = 2 the
    Betti polynomial is recomputed by the scratch plane enumeration.
    Structured part: weighted-homogeneous families have no blocks of
    size 2 or more.
    """
    rng = random.Random(seed)
    rep = OracleReport("jordan-pipeline", seed, count)
    for _ in range(count):
        sups, n, k = random_instance(rng)
        detail = {"supports": sups, "n": n, "k": k}
        try:
            _check_one_instance(sups, n, k, "local")
            rep.record(True, detail)
        except (ArithmeticError, RuntimeError) as exc:
            detail["error"] = str(exc)
            rep.record(False, detail)
    for sups, n, k in weighted_homogeneous_families():
        detail = {"supports": sups, "n": n, "k": k, "family": "homogeneous"}
        try:
            pkgs = enumerate_theta_packages(sups, n, k, "local")
            for alpha in _order_representatives(pkgs):
                r = jordan_blocks(pkgs, alpha)
                if n - k >= 1 and r.counts_geq[1] != 0:
                    raise ArithmeticError(
                        "homogeneous family has a block of size 2 at %s"
                        % (alpha,))
            rep.record(True, detail)
        except (ArithmeticError, RuntimeError) as exc:
            detail["error"] = str(exc)
            rep.record(False, detail)
    rep.count = rep.passed + len(rep.failures)
    return rep


def _order_representatives(pkgs):
    """One candidate eigenvalue class per multiplicative order."""
    seen = {}
    for c in eigenvalue_candidates(pkgs):
        seen.setdefault(c.order, c)
    return [seen[o] for o in sorted(seen)]


def _check_one_instance(sups, n, k, mode):
    pkgs = enumerate_theta_packages(sups, n, k, mode)
    classes = _order_representatives(pkgs)
    for alpha in classes:
        r = jordan_blocks(pkgs, alpha, check=True)
        beta = r.beta
        sign = (-1) ** (n - k)
        if jordan_max_count(pkgs, alpha) != sign * beta.get(2 * n - 2 * k, 0):
            raise ArithmeticError("max-size closed form mismatch at %s"
                                  % (alpha,))
        if n - k >= 1 and jordan_second_count(pkgs, alpha) != \
                sign * beta.get(2 * n - 2 * k - 1, 0):
            raise ArithmeticError("second-size closed form mismatch at %s"
                                  % (alpha,))
        if n == 2 and k == 2 and mode == "local":
            naive = naive_beta_2d(sups[0], sups[1], alpha.order)
            if naive != beta:
                raise ArithmeticError("plane brute force mismatch at %s"
                                      % (alpha,))
    sp = spectrum(pkgs)
    top = Fraction(n - k + 1)
    classes_sum = {}
    for b, c in sp.items():
        if sp[top - b] != c:
            raise ArithmeticError("spectrum symmetry broken at %s" % (b,))
        classes_sum[b % 1] = classes_sum.get(b % 1, 0) + c
    for frac, tot in classes_sum.items():
        if tot != (-1) ** (n - k) * peval_one(motivic_beta(pkgs, frac)):
            raise ArithmeticError("spectrum class sum mismatch at %s"
                                  % (frac,))
    return pkgs


def run_all(seed=1, fast=False):
    """Every checker with its default scale (reduced when fast)."""
    scale = (20, 10, 8, 4) if fast else (100, 50, 20, 12)
    return [
        check_AE(seed, scale[0]),
        check_chi_routes(seed, scale[1]),
        check_beta(seed, scale[2]),
        check_jordan(seed, scale[3]),
    ]
