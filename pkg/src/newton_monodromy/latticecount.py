"""Twisted lattice point counting.

Counts lattice points of rational polytopes (closed, interior or
relative interior), optionally filtered by a torsion character or
restricted to a finite-index sublattice, and builds the derived
quantities: twisted Ehrhart polynomials, Euler characteristic routes,
Hodge column sums, the alternating mixed-volume identity and the
cone-slice series used for spectra.

Enumeration is exact: a Fourier-Motzkin elimination cascade yields
tight per-coordinate bounds, so no heuristic bounding boxes are
involved.  All arithmetic is integer/Fraction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, comb, floor, gcd

from .geometry import Polytope, dual_rays, minkowski_sum_points
from .intlinalg import (
    coords_in_basis,
    content,
    integer_solve,
    primitive,
    right_kernel,
    saturation,
    vec_dot,
    vec_scale,
    vec_sub,
)


# ---------------------------------------------------------------------------
# characters and eigenvalue classes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TorsionCharacter:
    """Group homomorphism Z^r -> Q/Z, v |-> sum(q_i v_i) mod 1."""

    values: tuple

    @staticmethod
    def of(vals):
        return TorsionCharacter(tuple(Fraction(v) % 1 for v in vals))

    @property
    def rank(self):
        return len(self.values)

    def __call__(self, v):
        return sum((q * x for q, x in zip(self.values, v)), Fraction(0)) % 1

    def kernel_contains(self, v):
        return self(v) == 0

    def image_order(self):
        """Size of the image subgroup of Q/Z."""
        return subgroup_order(self.values)


@dataclass(frozen=True, order=True)
class EigenvalueClass:
    """A root of unity different from 1, written exp(2*pi*i*b)."""

    b: Fraction

    def __post_init__(self):
        if not (0 < self.b < 1):
            raise ValueError("eigenvalue class needs b strictly between 0 and 1")

    @property
    def order(self):
        return self.b.denominator

    def divides(self, d):
        """True iff lambda^d = 1."""
        return d % self.order == 0

    @staticmethod
    def parse(text):
        b = Fraction(text)
        return EigenvalueClass(b % 1)

    def __str__(self):
        return f"{self.b.numerator}/{self.b.denominator}"


def alpha_value(alpha):
    """Normalize an eigenvalue argument to a Fraction mod 1.

    Accepts an EigenvalueClass, a Fraction/int (0 or 1 both meaning the
    trivial class), or a string like '2/3'.
    """
    if isinstance(alpha, EigenvalueClass):
        return alpha.b
    if isinstance(alpha, str):
        alpha = Fraction(alpha)
    return Fraction(alpha) % 1


# ---------------------------------------------------------------------------
# finite cyclic subgroups of Q/Z
# ---------------------------------------------------------------------------

def subgroup_order(gens):
    """Order of the subgroup of Q/Z generated by the given rationals."""
    m = 1
    for g in gens:
        d = (Fraction(g) % 1).denominator
        m = m // gcd(m, d) * d
    g0 = m
    for g in gens:
        g0 = gcd(g0, int((Fraction(g) % 1) * m))
    return m // g0


def in_subgroup(alpha, gens):
    """Membership of alpha (mod 1) in the subgroup generated by gens."""
    order = subgroup_order(gens)
    a = Fraction(alpha) % 1
    return order % a.denominator == 0


def in_coset(alpha, offset, gens):
    return in_subgroup(Fraction(alpha) - Fraction(offset), gens)


# ---------------------------------------------------------------------------
# Fourier-Motzkin integer point enumeration
# ---------------------------------------------------------------------------
#
# A constraint row is (a, b, strict) meaning a.x <= b, with < when
# strict.  Normals are primitive integer tuples; b is a Fraction.

def _norm_row(a, b, strict):
    av = [Fraction(x) for x in a]
    b = Fraction(b)
    lcm = 1
    for f in av:
        lcm = lcm // gcd(lcm, f.denominator) * f.denominator
    ai = [int(f * lcm) for f in av]
    b = b * lcm
    g = content(ai)
    if g:
        ai = [x // g for x in ai]
        b = b / g
    return (tuple(ai), b, bool(strict))


def _dedupe(rows):
    best = {}
    for a, b, s in rows:
        cur = best.get(a)
        if cur is None or (b, not s) < (cur[0], not cur[1]):
            best[a] = (b, s)
    return [(a, b, s) for a, (b, s) in best.items()]


def _eliminate(rows, j):
    """Project away coordinate j (exact Fourier-Motzkin step)."""
    pos, neg, out = [], [], []
    for a, b, s in rows:
        c = a[j]
        if c > 0:
            pos.append((a, b, s))
        elif c < 0:
            neg.append((a, b, s))
        else:
            out.append((a, b, s))
    for ap, bp, sp in pos:
        for aq, bq, sq in neg:
            cp, cq = ap[j], -aq[j]
            na = tuple(cq * x + cp * y for x, y in zip(ap, aq))
            nb = cq * bp + cp * bq
            ns = sp or sq
            if any(na):
                out.append(_norm_row(na, nb, ns))
            elif nb < 0 or (nb == 0 and ns):
                # contradictory constant row: keep it so feasibility fails
                out.append((na, nb, ns))
    return _dedupe(out)


def integer_points(rows, dim):
    """Iterate over all integer points satisfying every row.

    Raises ValueError when the feasible region is unbounded.
    """
    if dim == 0:
        ok = all(b > 0 or (b == 0 and not s) for _, b, s in rows)
        if ok:
            yield ()
        return
    systems = [None] * (dim + 1)
    systems[dim] = _dedupe(_norm_row(a, b, s) for a, b, s in rows)
    for j in range(dim, 0, -1):
        systems[j - 1] = _eliminate(systems[j], j - 1)
    for _, b, s in systems[0]:
        if b < 0 or (b == 0 and s):
            return
    yield from _scan(systems, 0, (), dim)


def _scan(systems, j, prefix, dim):
    lo = hi = None
    for a, b, s in systems[j + 1]:
        c = a[j]
        if c == 0:
            continue
        t = (b - vec_dot(a[:j], prefix)) / c
        if c > 0:
            h = floor(t) if (not s or t != floor(t)) else floor(t) - 1
            hi = h if hi is None else min(hi, h)
        else:
            l = ceil(t) if (not s or t != ceil(t)) else ceil(t) + 1
            lo = l if lo is None else max(lo, l)
    if lo is None or hi is None:
        raise ValueError("unbounded enumeration region")
    if j + 1 == dim:
        for x in range(lo, hi + 1):
            yield prefix + (x,)
    else:
        for x in range(lo, hi + 1):
            yield from _scan(systems, j + 1, prefix + (x,), dim)


# ---------------------------------------------------------------------------
# lattice points of rational polytopes
# ---------------------------------------------------------------------------

def _as_polytope(body, ambient_dim=None):
    if isinstance(body, Polytope):
        return body
    return Polytope.from_points(body, ambient_dim)


def lattice_points(body, region="closed", ambient_dim=None):
    """Iterate the integer points of a rational polytope region.

    region is one of 'closed', 'relint' (relative interior) or
    'interior' (empty for lower-dimensional bodies).
    """
    if region not in ("closed", "relint", "interior"):
        raise ValueError(f"unknown region {region!r}")
    poly = _as_polytope(body, ambient_dim)
    n = poly.ambient_dim
    if region == "interior" and poly.dim < n:
        return
    if poly.dim == 0:
        v = poly.verts[0]
        if all(Fraction(x).denominator == 1 for x in v):
            yield tuple(int(x) for x in v)
        return
    strict = region != "closed"
    rows = [(tuple(-x for x in a), -b, strict) for a, b in poly.facets]
    base, dirs = poly._base, poly._dirbasis
    if poly.dim == n:
        # internal coords are ambient minus base; base may be rational
        shift = base
        for c in integer_points(
                [(a, b + vec_dot(a, shift), s) for a, b, s in rows], n):
            yield c
        return
    # find one integer point on the affine span, if any
    normals = right_kernel(dirs, n)
    beq = [vec_dot(u, base) for u in normals]
    x0 = integer_solve(normals, beq) if normals else tuple(0 for _ in range(n))
    if x0 is None:
        return
    shift = coords_in_basis(dirs, vec_sub(x0, base))
    shifted = [(a, b - vec_dot(a, shift), s) for a, b, s in rows]
    for c in integer_points(shifted, poly.dim):
        p = list(x0)
        for ci, d in zip(c, dirs):
            if ci:
                for i in range(n):
                    p[i] += ci * d[i]
        yield tuple(p)


def count_lattice_points(body, region="closed", predicate=None,
                         ambient_dim=None):
    total = 0
    for p in lattice_points(body, region, ambient_dim):
        if predicate is None or predicate(p):
            total += 1
    return total


def character_count(body, tau, alpha, region="closed", ambient_dim=None):
    """Number of lattice points v in the region with tau(v) = alpha."""
    a = alpha_value(alpha)
    return count_lattice_points(body, region, lambda v: tau(v) == a,
                                ambient_dim)


def sublattice_points(points, lattice_rows, region="closed",
                      ambient_dim=None):
    """Iterate the points of the region lying in the given sublattice."""
    pts = [tuple(p) for p in points]
    n = ambient_dim if ambient_dim is not None else len(pts[0])
    if lattice_rows is None:
        yield from lattice_points(pts, region, n)
        return
    # transform into sublattice coordinates, where the lattice is Z^r
    coords = []
    for p in pts:
        c = coords_in_basis(lattice_rows, p)
        if c is None:
            raise ValueError("polytope leaves the span of the sublattice")
        coords.append(tuple(Fraction(x) for x in c))
    back = list(lattice_rows)
    for c in lattice_points(coords, region, len(back)):
        p = [0] * n
        for ci, row in zip(c, back):
            if ci:
                for i in range(n):
                    p[i] += ci * row[i]
        yield tuple(p)


def sharp_count(points, lattice_rows=None, region="closed", ambient_dim=None):
    """#(A) of the source text: lattice points of A in the sublattice."""
    return sum(1 for _ in sublattice_points(points, lattice_rows, region,
                                            ambient_dim))


def natural_count(points, lattice_rows=None, ambient_dim=None):
    """The signed relative-interior count (-1)^dim * #relint."""
    poly = _as_polytope(points, ambient_dim)
    cnt = sharp_count(poly.verts, lattice_rows, "relint", poly.ambient_dim)
    return (-1) ** poly.dim * cnt


# ---------------------------------------------------------------------------
# twisted Ehrhart polynomials and Euler characteristic routes
# ---------------------------------------------------------------------------

def _vertex_normalize(delta, tau):
    """Translate so all vertices land in the kernel of tau.

    Requires every vertex to carry the same character value; returns
    (translated polytope, chosen vertex).
    """
    vals = {tau(v) for v in delta.verts}
    if len(vals) != 1:
        raise ValueError("vertices carry different character values")
    w = delta.verts[0]
    if tau(w) == 0:
        return delta, w
    return delta.translate(vec_scale(-1, w)), w


def _interior_character_count(delta, tau, alpha, k):
    """Count of tau=alpha lattice points interior to the k-th dilate."""
    if k == 0:
        return 0
    dil = [vec_scale(k, v) for v in delta.verts]
    return character_count(dil, tau, alpha, "interior", delta.ambient_dim)


def ehrhart_series_polynomial(delta, tau, alpha, base_vertex=None):
    """Coefficients of (1-t)^(n+1) * sum_k l*(k Delta)_alpha t^k.

    delta must be a full-dimensional lattice polytope whose vertices all
    carry the same character value; it is translated by a vertex before
    counting.  The result is a tuple of n+2 integers; the counts for
    k = n+2, n+3 are computed as well and must be annihilated, which
    certifies polynomiality at this degree.
    """
    poly = _as_polytope(delta)
    n = poly.ambient_dim
    if poly.dim != n:
        raise ValueError("need a full-dimensional polytope")
    vals = {tau(v) for v in poly.verts}
    if len(vals) != 1:
        raise ValueError("vertices carry different character values")
    w = tuple(base_vertex) if base_vertex is not None else poly.verts[0]
    if w not in poly.verts:
        raise ValueError("base vertex is not a vertex")
    poly = poly.translate(vec_scale(-1, w))
    a = alpha_value(alpha)
    counts = [_interior_character_count(poly, tau, a, k)
              for k in range(n + 4)]
    coeffs = []
    for i in range(n + 4):
        c = sum((-1) ** j * comb(n + 1, j) * counts[i - j]
                for j in range(min(i, n + 1) + 1))
        coeffs.append(c)
    if coeffs[n + 2] != 0 or coeffs[n + 3] != 0:
        raise ArithmeticError("Ehrhart transform did not terminate")
    return tuple(coeffs[: n + 2])


def hodge_column_sums(delta, tau, alpha):
    """Column sums p -> sum_q e^{p,q} of the twisted hypersurface."""
    poly = _as_polytope(delta)
    n = poly.ambient_dim
    phi = ehrhart_series_polynomial(poly, tau, alpha)
    a = alpha_value(alpha)
    out = {}
    for p in range(n + 1):
        val = (-1) ** (n + 1) * phi[n - p]
        if a == 0:
            val += (-1) ** (p + n + 1) * comb(n, p + 1)
        out[p] = val
    return out


def chi_via_ehrhart(delta, tau, alpha):
    """Euler characteristic of the alpha-part, by alternating counts.

    Two independent summation routes are evaluated and asserted equal.
    """
    poly = _as_polytope(delta)
    n = poly.ambient_dim
    if poly.dim != n:
        raise ValueError("need a full-dimensional polytope")
    a = alpha_value(alpha)
    if not in_subgroup(a, tau.values):
        return 0
    poly, _ = _vertex_normalize(poly, tau)
    chi = (-1) ** (n - 1) if a == 0 else 0
    chi += sum((-1) ** (k + 1) * comb(n, k)
               * _interior_character_count(poly, tau, a, k)
               for k in range(1, n + 1))
    chi2 = _chi_via_natural(poly, tau, a)
    if chi != chi2:
        raise ArithmeticError(
            f"Euler characteristic routes disagree: {chi} vs {chi2}")
    return chi


def _character_preimage(tau, a):
    """One integer vector w with tau(w) = a, or None."""
    m = 1
    for q in tau.values:
        m = m // gcd(m, q.denominator) * q.denominator
    m = m // gcd(m, a.denominator) * a.denominator
    row = [int(q * m) for q in tau.values] + [m]
    sol = integer_solve([row], [int(a * m)])
    if sol is None:
        return None
    return sol[: tau.rank]


def _chi_via_natural(poly, tau, a):
    """The translated signed-count route to the Euler characteristic."""
    n = poly.ambient_dim
    w = _character_preimage(tau, a)
    if w is None:
        return 0
    total = 0
    for k in range(n + 1):
        pts = [vec_sub(vec_scale(k, v), w) for v in poly.verts]
        sub = Polytope.from_points(pts, n)
        cnt = character_count(sub, tau, 0, "relint")
        total += (-1) ** k * comb(n, k) * (-1) ** sub.dim * cnt
    return (-1) ** (n - 1) * total


def chi_via_volume(delta, tau, alpha):
    """Euler characteristic of the alpha-part, by normalized volume."""
    poly = _as_polytope(delta)
    n = poly.ambient_dim
    if poly.dim != n:
        raise ValueError("need a full-dimensional polytope")
    _vertex_normalize(poly, tau)  # enforce the vertex hypothesis
    a = alpha_value(alpha)
    order = tau.image_order()
    if not in_subgroup(a, tau.values):
        return 0
    vol = poly.normalized_volume()
    if vol % order != 0:
        raise ArithmeticError(
            "normalized volume not divisible by the image order")
    return (-1) ** (n - 1) * (vol // order)


# ---------------------------------------------------------------------------
# alternating sums against the mixed volume
# ---------------------------------------------------------------------------

def alternating_mixed_identity(delta0_pts, deltas, lattice_rows=None):
    """The two alternating lattice-count sums and the mixed volume.

    delta0_pts is a (possibly non-integral) polytope given by points;
    deltas is a list of n lattice polytopes (point lists) in dimension
    n.  Returns (lhs1, lhs2, rhs): the signed relative-interior sum,
    the signed closed-count sum, and MV(deltas) with respect to the
    sublattice (default Z^n).  The three must agree.
    """
    from .geometry import mixed_volume

    d0 = [tuple(Fraction(x) for x in p) for p in delta0_pts]
    n = len(d0[0])
    if len(deltas) != n:
        raise ValueError("need exactly n lattice polytopes")
    lhs1 = lhs2 = 0
    for mask in range(2 ** n):
        J = tuple(j for j in range(n) if mask >> j & 1)
        pts = d0
        for j in J:
            pts = minkowski_sum_points([pts, deltas[j]])
        lhs1 += (-1) ** len(J) * natural_count(pts, lattice_rows, n)
        lhs2 += (-1) ** (n - len(J)) * sharp_count(pts, lattice_rows,
                                                   "closed", n)
    polys = [Polytope.from_points(d, n) for d in deltas]
    rhs = mixed_volume(polys, n, lattice_rows)
    return lhs1, lhs2, rhs


# ---------------------------------------------------------------------------
# cone slices for the spectrum
# ---------------------------------------------------------------------------

@dataclass
class PuiseuxSeries:
    """Finite rational-exponent series with integer coefficients."""

    bound: Fraction
    coeffs: dict = field(default_factory=dict)

    def add(self, b, c):
        if c == 0:
            return
        b = Fraction(b)
        cur = self.coeffs.get(b, 0) + c
        if cur:
            self.coeffs[b] = cur
        else:
            self.coeffs.pop(b, None)

    def items(self):
        return sorted(self.coeffs.items())

    def __getitem__(self, b):
        return self.coeffs.get(Fraction(b), 0)


def cone_slice_counts(body, bound, ambient_dim=None):
    """Counts of cone lattice points at each non-integral height <= bound.

    body is a lattice polytope not containing the origin in its affine
    span; its cone is the set of non-negative combinations of its
    points.  The height functional is the rational linear form equal to
    1 on the polytope.  Returns a PuiseuxSeries over heights in
    (0, bound] \\ Z.
    """
    poly = _as_polytope(body, ambient_dim)
    n = poly.ambient_dim
    bound = Fraction(bound)
    verts = [tuple(int(x) for x in v) for v in poly.verts]
    span = saturation(verts, n)
    s = len(span)
    if s != poly.dim + 1:
        raise ValueError("polytope affine span passes through the origin")
    coords = []
    for v in verts:
        c = coords_in_basis(span, v)
        coords.append(tuple(int(x) for x in c))
    diffs = [vec_sub(c, coords[0]) for c in coords[1:]]
    perp = right_kernel(diffs, s) if diffs else \
        [tuple(1 if i == 0 else 0 for i in range(s))]
    if len(perp) != 1:
        raise RuntimeError("height functional is not unique")
    u = primitive(perp[0])
    d = vec_dot(u, coords[0])
    if d < 0:
        u, d = vec_scale(-1, u), -d
    if d == 0:
        raise ValueError("polytope affine span passes through the origin")
    rows = [(vec_scale(-1, a), Fraction(0), False)
            for a in dual_rays(coords, s)]
    rows.append((u, bound * d, False))
    series = PuiseuxSeries(bound)
    for x in integer_points(rows, s):
        h = Fraction(vec_dot(u, x), d)
        if h.denominator != 1:
            series.add(h, 1)
    return series
