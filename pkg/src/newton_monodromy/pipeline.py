"""Jordan block counts of Milnor monodromies from Newton data.

The computation is assembled face by face.  Every relevant face of the
Minkowski sum of the input Newton polyhedra is wrapped in a package
carrying its summand decomposition, coordinate support, and lattice
distances.  Cayley joins of the summand faces feed the virtual Betti
engine; coefficient extraction then yields the Jordan block counts of
the principal monodromy for every eigenvalue class different from 1.
Closed-form counts for the two largest block sizes and the non-integral
spectrum are computed from the same packages.

Two modes are supported: "local" (compact faces of the sum of the local
Newton polyhedra) and "infinity" (faces avoiding the origin of the sum
of the Newton polytopes at infinity).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, lcm

from .betapoly import BasedPolytope, beta_padded, beta_recursive
from .geometry import (
    NewtonPolyhedron,
    Polytope,
    decompose_sum_face,
    faces_at_infinity,
    flat_lattice_distance,
    is_convenient,
    lattice_distance_of_points,
    minkowski_sum_newton,
    minkowski_sum_points,
    minkowski_sum_polytopes,
    mixed_volume,
    newton_polytope_at_infinity,
)
from .intlinalg import coords_in_basis, saturation, vec_dot, vec_sub
from .latticecount import (
    EigenvalueClass,
    PuiseuxSeries,
    alpha_value,
    cone_slice_counts,
)
from .polys import padd, pcoeff, pdegree, pmin_degree, pscale, pshift


def _order(alpha):
    """Multiplicative order of a non-trivial eigenvalue class."""
    if isinstance(alpha, EigenvalueClass):
        return alpha.order
    a = alpha_value(alpha)
    if a == 0:
        raise ValueError("the trivial eigenvalue class is excluded")
    return a.denominator


def _as_class(alpha):
    if isinstance(alpha, EigenvalueClass):
        return alpha
    return EigenvalueClass(alpha_value(alpha))


def mixed_volume_in_span(polys):
    """Normalized m-dimensional mixed volume of m polytopes.

    Measured in the saturated direction lattice of their Minkowski sum;
    zero when the sum has dimension below m.
    """
    m = len(polys)
    if m == 0:
        return 1
    n = polys[0].ambient_dim
    s = minkowski_sum_polytopes(list(polys))
    if s.dim < m:
        return 0
    if s.dim > m:
        raise ValueError("summand dimensions exceed the mixed volume rank")
    diffs = [vec_sub(v, s.verts[0]) for v in s.verts[1:]]
    lattice = saturation(diffs, n)
    return mixed_volume(list(polys), m, lattice)


# ---------------------------------------------------------------------------
# face packages
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class JoinData:
    """A Cayley join of the last summand face with lifted translates."""

    J: tuple
    box: BasedPolytope          # the join, in span-lattice coordinates
    sum_poly: Polytope          # gamma_k + sum of selected translates
    delta: int                  # dim(sum_poly) - #J
    c: int                      # dim(face) - dim(sum_poly)
    d: int                      # distance of the flat through gamma_k
                                # parallel to the sum


@dataclass(frozen=True)
class DeltaData:
    """The defect table over all lift subsets, with its extremal sets."""

    table: dict
    min_delta: int
    j0: frozenset | None
    j1_list: tuple
    n_theta: int


class ThetaPackage:
    """One face of the summed Newton body with its decomposition data.

    Fields: ``theta`` (the face as a polytope), ``gammas`` (per-summand
    faces), ``kappas`` (lattice translates of the first k-1 summand
    faces into the flat of the last one), ``s`` (size of the minimal
    coordinate subspace containing the face), ``m = s - dim - 1``, and
    ``d_theta`` (lattice distance of that flat from the origin).
    """

    def __init__(self, n, k, mode, theta, gammas):
        self.n = n
        self.k = k
        self.mode = mode
        self.theta = theta
        self.dim = theta.dim
        verts = theta.verts
        self.s = sum(1 for i in range(n) if any(v[i] for v in verts))
        self.m = self.s - self.dim - 1
        if self.m < 0:
            raise RuntimeError("face exceeds its coordinate subspace")
        self.gammas = tuple(gammas)
        gk = self.gammas[k - 1]
        p = gk.verts[0]
        self.kappas = tuple(g.translate(vec_sub(p, g.verts[0]))
                            for g in self.gammas[:k - 1])
        dirs = [vec_sub(w, verts[0]) for w in verts[1:]]
        self.d_theta = flat_lattice_distance(p, dirs, n)
        if self.d_theta == 0:
            if mode != "infinity":
                raise RuntimeError("face flat passes through the origin")
            self.basis = None
        else:
            gens = [v for v in gk.verts if any(v)] + [d for d in dirs
                                                      if any(d)]
            self.basis = saturation(gens, n)
            if len(self.basis) != self.dim + 1:
                raise RuntimeError("span lattice has unexpected rank")
        self._joins = {}
        self._delta = None

    @property
    def degenerate(self):
        """True when the flat through the last summand face parallel to
        the face hits the origin; such faces carry a trivial torsion
        action and contribute nothing away from eigenvalue 1."""
        return self.d_theta == 0

    def coords(self, v):
        c = coords_in_basis(self.basis, v)
        if c is None or any(not isinstance(x, int) for x in c):
            raise RuntimeError("point outside the span lattice")
        return tuple(c)

    def subsets(self):
        """All subsets of {1..k-1} as frozensets, in a fixed order."""
        idx = list(range(1, self.k))
        out = []
        for mask in range(1 << len(idx)):
            out.append(frozenset(idx[i] for i in range(len(idx))
                                 if mask >> i & 1))
        return out

    def join(self, J):
        J = frozenset(J)
        jd = self._joins.get(J)
        if jd is not None:
            return jd
        if self.degenerate:
            raise ValueError("degenerate face has no joins")
        js = sorted(J)
        gk = self.gammas[self.k - 1]
        summands = [gk] + [self.kappas[j - 1] for j in js]
        sum_poly = minkowski_sum_polytopes(summands)
        c = self.dim - sum_poly.dim
        delta = sum_poly.dim - len(js)
        d = flat_lattice_distance(
            gk.verts[0],
            [vec_sub(w, sum_poly.verts[0]) for w in sum_poly.verts[1:]],
            self.n)
        if d <= 0 or self.d_theta % d != 0:
            raise RuntimeError("flat distance does not divide the face one")
        m = len(js)
        pts = [self.coords(v) + (0,) * m for v in gk.verts]
        for i, j in enumerate(js):
            lift = tuple(1 if t == i else 0 for t in range(m))
            for v in self.kappas[j - 1].verts:
                pts.append(self.coords(v) + lift)
        box = Polytope.from_points(pts, len(self.basis) + m)
        if box.dim != self.dim - c + m:
            raise RuntimeError("join dimension mismatch")
        jd = JoinData(tuple(js), BasedPolytope.of(box), sum_poly,
                      delta, c, d)
        self._joins[J] = jd
        return jd

    def delta_data(self):
        if self._delta is not None:
            return self._delta
        subsets = self.subsets()
        table = {J: self.join(J).delta for J in subsets}
        for I in subsets:
            for J in subsets:
                if table[I] + table[J] < table[I & J] + table[I | J]:
                    raise RuntimeError("defect table is not submodular")
        mind = min(table.values())
        j0 = None
        j1_list = ()
        n_theta = 0
        if mind == 0:
            zeros = [J for J in subsets if table[J] == 0]
            j0 = frozenset().union(*zeros)
            if table[j0] != 0:
                raise RuntimeError("zero-defect sets are not union-closed")
            ones = [J for J in subsets if table[J] == 1 and j0 <= J]
            j1_list = tuple(sorted(
                (J for J in ones
                 if not any(J < I for I in ones)),
                key=sorted))
            for a in range(len(j1_list)):
                for b in range(a + 1, len(j1_list)):
                    if j1_list[a] & j1_list[b] != j0:
                        raise RuntimeError(
                            "maximal defect-one sets overlap beyond the core")
            n_theta = len(j1_list)
        elif mind == 1:
            ones = [J for J in subsets if table[J] == 1]
            maximal = [J for J in ones if not any(J < I for I in ones)]
            if len(maximal) != 1:
                raise RuntimeError("defect-one maximum is not unique")
            j1_list = (maximal[0],)
        self._delta = DeltaData(table, mind, j0, j1_list, n_theta)
        return self._delta


class ThetaPackages(list):
    """List of face packages, remembering the instance parameters."""

    def __init__(self, items, n, k, mode):
        super().__init__(items)
        self.n = n
        self.k = k
        self.mode = mode


def enumerate_theta_packages(supports, n, k, mode="local"):
    """Build all face packages of dimension >= k-1 for an instance.

    ``supports`` is a list of k non-empty sets of exponent vectors in
    Z_+^n.  Local mode requires convenient supports not containing the
    origin; infinity mode requires the summed polytope at infinity to be
    full-dimensional.
    """
    if not 2 <= k <= n:
        raise ValueError("need 2 <= k <= n")
    if len(supports) != k:
        raise ValueError("need exactly k supports")
    supports = [sorted(set(tuple(int(x) for x in p) for p in s))
                for s in supports]
    for s in supports:
        if not s:
            raise ValueError("empty support")
        if any(len(p) != n or any(x < 0 for x in p) for p in s):
            raise ValueError("supports must lie in Z_+^n")
    packages = []
    if mode == "local":
        zero = tuple(0 for _ in range(n))
        for s in supports:
            if zero in s:
                raise ValueError("local support contains the origin")
            if not is_convenient(s, n):
                raise ValueError("local support is not convenient")
        bodies = [NewtonPolyhedron(s, n) for s in supports]
        total = minkowski_sum_newton(bodies)
        for face in total.compact_faces():
            if face.dim < k - 1:
                continue
            _, parts = decompose_sum_face(total, face, bodies, check=True)
            gammas = [b.face_polytope(g) for b, g in zip(bodies, parts)]
            packages.append(ThetaPackage(
                n, k, mode, total.face_polytope(face), gammas))
    elif mode == "infinity":
        bodies = [newton_polytope_at_infinity(s, n) for s in supports]
        total = minkowski_sum_polytopes(bodies)
        if total.dim != n:
            raise ValueError("summed polytope at infinity is degenerate")
        for face in faces_at_infinity(total):
            if face.dim < k - 1:
                continue
            _, parts = decompose_sum_face(total, face, bodies, check=True)
            gammas = [b.face_polytope(g) for b, g in zip(bodies, parts)]
            packages.append(ThetaPackage(
                n, k, mode, total.face_polytope(face), gammas))
    else:
        raise ValueError("mode must be 'local' or 'infinity'")
    packages.sort(key=lambda p: p.theta.verts)
    return ThetaPackages(packages, n, k, mode)


def delta_combinatorics(pkg):
    """Defect table with its distinguished subsets, as a DeltaData."""
    return pkg.delta_data()


# ---------------------------------------------------------------------------
# virtual Betti polynomial of the motivic fiber
# ---------------------------------------------------------------------------

def _face_contribution(pkg, alpha, order_seed):
    """The face's summand of the Betti polynomial (already shifted)."""
    k = pkg.k
    inner = {}
    for J in pkg.subsets():
        jd = pkg.join(J)
        inner = padd(inner, beta_padded(
            jd.box, pkg.s + len(jd.J) - 1, alpha, order_seed))
    if not inner:
        return {}
    if pmin_degree(inner) < 2 * k - 2:
        raise ArithmeticError("face contribution misses the common factor")
    return pscale((-1) ** pkg.m, pshift(inner, -(2 * k - 2)))


def motivic_beta(packages, alpha, order_seed=0):
    """Virtual Betti polynomial away from eigenvalue 1, as a sparse dict."""
    n, k = packages.n, packages.k
    total = {}
    for pkg in packages:
        if pkg.degenerate:
            continue
        total = padd(total, _face_contribution(pkg, alpha, order_seed))
    if total:
        if pmin_degree(total) < 0 or pdegree(total) > 2 * n - 2 * k:
            raise ArithmeticError("Betti polynomial degree out of range")
    return total


def check_small_support_vanishing(packages, alpha, order_seed=0):
    """Faces missing a coordinate hyperplane contribute nothing to the
    top two Betti coefficients; verified face by face."""
    n, k = packages.n, packages.k
    for pkg in packages:
        if pkg.degenerate or pkg.s == n:
            continue
        contrib = _face_contribution(pkg, alpha, order_seed)
        if pcoeff(contrib, 2 * n - 2 * k) or \
                pcoeff(contrib, 2 * n - 2 * k - 1):
            raise ArithmeticError(
                "small-support face contributes to a top coefficient")
    return True


# ---------------------------------------------------------------------------
# Jordan block counts
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class JordanReport:
    """Jordan block data of the principal monodromy for one eigenvalue
    class: counts of blocks of size >= i and of size exactly s, plus the
    Betti polynomial they were read from."""

    eigenvalue: EigenvalueClass
    beta: dict
    counts_geq: tuple
    counts_exact: tuple


def jordan_blocks(packages, alpha, order_seed=0, check=False):
    n, k = packages.n, packages.k
    beta = motivic_beta(packages, alpha, order_seed)
    counts = []
    for i in range(1, n - k + 2):
        c = (-1) ** (n - k) * (pcoeff(beta, n - k - 1 + i)
                               + pcoeff(beta, n - k + i))
        counts.append(c)
    for i, c in enumerate(counts):
        if c < 0 or (i > 0 and c > counts[i - 1]):
            raise ArithmeticError(
                "block counts are not a non-increasing non-negative "
                "sequence: %r" % (counts,))
    if check:
        check_small_support_vanishing(packages, alpha, order_seed)
        for i in range(1, n - k + 2):
            direct = counts_geq_direct(packages, alpha, i, order_seed)
            if direct != counts[i - 1]:
                raise ArithmeticError(
                    "binomial route disagrees at size %d: %d vs %d"
                    % (i, direct, counts[i - 1]))
    exact = tuple(counts[i] - (counts[i + 1] if i + 1 < len(counts) else 0)
                  for i in range(len(counts)))
    return JordanReport(_as_class(alpha), beta, tuple(counts), exact)


def counts_geq_direct(packages, alpha, i, order_seed=0):
    """Count of blocks of size >= i by the face-wise binomial formula."""
    n, k = packages.n, packages.k
    total = 0
    for pkg in packages:
        if pkg.degenerate:
            continue
        for J in pkg.subsets():
            jd = pkg.join(J)
            bpoly = beta_recursive(jd.box, alpha, order_seed)
            dimj = jd.box.box.dim
            mc = pkg.m + jd.c
            sign = (-1) ** (n - k + jd.c)
            for l in (i, i + 1):
                for r in range(dimj + 1):
                    if (n + k - 3 + l - r) % 2:
                        continue
                    e = (n + k - 3 + l - r) // 2
                    if e < 0:
                        continue
                    total += sign * (-1) ** e * comb(mc, e) * bpoly.get(r, 0)
    return total


# ---------------------------------------------------------------------------
# closed forms for the two largest block sizes
# ---------------------------------------------------------------------------

def _gate(order, d):
    return d % order == 0


def _mv_kappa(pkg, J, order):
    """Gated mixed volume of the selected translates (defect 0)."""
    jd = pkg.join(J)
    if jd.delta != 0:
        raise ValueError("needs a defect-zero subset")
    if not _gate(order, jd.d):
        return 0
    if not J:
        return 1
    return mixed_volume_in_span([pkg.kappas[j - 1] for j in sorted(J)])


def _mv_kappa_sum(pkg, J, order):
    """Gated mixed volume of the translates with their sum (defect 1)."""
    jd = pkg.join(J)
    if jd.delta != 1:
        raise ValueError("needs a defect-one subset")
    if not _gate(order, jd.d):
        return 0
    polys = [pkg.kappas[j - 1] for j in sorted(J)] + [jd.sum_poly]
    return mixed_volume_in_span(polys)


def _facet_decompositions(pkg, J):
    """Facets of the defect-one sum with their summand decompositions.

    Yields (facet distance, translate components) pairs; the distance is
    that of the flat through the last-summand component parallel to the
    facet.
    """
    jd = pkg.join(J)
    P = jd.sum_poly
    gk = pkg.gammas[pkg.k - 1]
    summands = [gk] + [pkg.kappas[j - 1] for j in sorted(J)]
    out = []
    for facet in P.faces_of_dim(P.dim - 1):
        a = P._facets[min(facet.tight)][0]
        parts = []
        for q in summands:
            base = q.verts[0]
            vals = []
            for v in q.verts:
                c = coords_in_basis(P._dirbasis, vec_sub(v, base))
                if c is None:
                    raise RuntimeError("summand leaves the sum's span")
                vals.append(vec_dot(a, c))
            mval = min(vals)
            pts = [v for v, val in zip(q.verts, vals) if val == mval]
            parts.append(Polytope.from_points(pts, pkg.n))
        fpoly = P.face_polytope(facet)
        spts = minkowski_sum_points([p.verts for p in parts])
        if Polytope.from_points(spts, pkg.n) != fpoly:
            raise RuntimeError("facet decomposition failed")
        d = flat_lattice_distance(
            parts[0].verts[0],
            [vec_sub(w, fpoly.verts[0]) for w in fpoly.verts[1:]],
            pkg.n)
        out.append((d, parts[1:]))
    return out


def _facet_sum(pkg, J, order):
    total = 0
    for d, comps in _facet_decompositions(pkg, J):
        if not _gate(order, d):
            continue
        total += mixed_volume_in_span(comps)
    return total


def max_size_weight(pkg, order):
    """Per-face weight in the closed form for the largest block size."""
    dd = pkg.delta_data()
    if dd.min_delta != 0:
        return 0
    return _mv_kappa(pkg, dd.j0, order)


def second_size_weight(pkg, order):
    """Per-face weight in the closed form for the second largest size."""
    dd = pkg.delta_data()
    if dd.min_delta < 0 or dd.min_delta > 1:
        return 0
    if dd.min_delta == 1:
        J1 = dd.j1_list[0]
        return _mv_kappa_sum(pkg, J1, order) - _facet_sum(pkg, J1, order)
    if dd.n_theta == 0:
        return 0
    total = 0
    base = 2 * _mv_kappa(pkg, dd.j0, order)
    for Ji in dd.j1_list:
        total += base + _mv_kappa_sum(pkg, Ji, order) \
            - _facet_sum(pkg, Ji, order)
    return total


def jordan_max_count(packages, alpha):
    """Number of blocks of the maximal size n-k+1 for the eigenvalue."""
    order = _order(alpha)
    n, k = packages.n, packages.k
    total = 0
    for pkg in packages:
        if pkg.degenerate or pkg.s != n:
            continue
        total += (-1) ** (pkg.dim - (k - 1)) * max_size_weight(pkg, order)
    return total


def jordan_second_count(packages, alpha):
    """Number of blocks of size exactly n-k for the eigenvalue."""
    order = _order(alpha)
    n, k = packages.n, packages.k
    if n - k < 1:
        raise ValueError(
            "with k = n all blocks have size 1; no second size exists")
    total = 0
    for pkg in packages:
        if pkg.degenerate or pkg.s != n or pkg.dim < k:
            continue
        total += (-1) ** (pkg.dim - k) * second_size_weight(pkg, order)
    return total


# ---------------------------------------------------------------------------
# specialized closed forms under extra hypotheses
# ---------------------------------------------------------------------------

def jordan_max_count_k2(packages, alpha):
    """Largest-size block count for k = 2 via lattice lengths."""
    order = _order(alpha)
    n, k = packages.n, packages.k
    if k != 2:
        raise ValueError("formula needs k = 2")
    total = 0
    for pkg in packages:
        if pkg.degenerate or pkg.s != n:
            continue
        if pkg.dim == 1:
            if _gate(order, pkg.d_theta):
                g1 = pkg.gammas[0]
                total += g1.normalized_volume() if g1.dim == 1 else 0
        elif pkg.dim >= 2:
            g2 = pkg.gammas[1]
            if g2.dim == 0 and _gate(
                    order, lattice_distance_of_points(g2.verts, n)):
                total += (-1) ** (pkg.dim - 1)
    return total


def jordan_max_count_majorizing(packages, alpha):
    """Largest-size block count when the summand bodies share one
    normal fan: a single mixed-volume sum over minimal faces."""
    order = _order(alpha)
    n, k = packages.n, packages.k
    total = 0
    for pkg in packages:
        if pkg.degenerate or pkg.s != n or pkg.dim != k - 1:
            continue
        if _gate(order, pkg.d_theta):
            total += mixed_volume_in_span(list(pkg.kappas))
    return total


def jordan_second_count_k2(packages, alpha):
    """Second-size block count for k = 2 via lattice lengths."""
    order = _order(alpha)
    n, k = packages.n, packages.k
    if k != 2:
        raise ValueError("formula needs k = 2")
    if n - k < 1:
        raise ValueError("no second size exists for k = n")
    total = 0
    for pkg in packages:
        if pkg.degenerate or pkg.s != n:
            continue
        if pkg.dim == 2:
            total += second_size_weight(pkg, order)
        elif pkg.dim >= 3:
            g2 = pkg.gammas[1]
            if g2.dim == 1 and _gate(order, pkg.join(frozenset()).d):
                vertex_hits = sum(
                    1 for v in g2.verts
                    if _gate(order, lattice_distance_of_points([v], n)))
                total += (-1) ** pkg.dim * (g2.normalized_volume()
                                            - vertex_hits)
    return total


def jordan_second_count_majorizing(packages, alpha):
    """Second-size block count when the summand bodies share one
    normal fan."""
    order = _order(alpha)
    n, k = packages.n, packages.k
    if n - k < 1:
        raise ValueError("no second size exists for k = n")
    total = 0
    for pkg in packages:
        if pkg.degenerate or pkg.s != n or pkg.dim != k:
            continue
        total += second_size_weight(pkg, order)
    return total


# ---------------------------------------------------------------------------
# spectrum
# ---------------------------------------------------------------------------

def spectrum(packages):
    """Non-integral spectrum as a Puiseux series on (0, n-k+1).

    Coefficients are exact; the cone slices are truncated high enough
    that every coefficient below n-k+2 is complete, and completeness of
    the window is asserted by requiring the theoretical support.
    """
    n, k = packages.n, packages.k
    bound = Fraction(n + 1)
    acc = PuiseuxSeries(bound)
    for pkg in packages:
        if pkg.degenerate:
            continue
        for J in pkg.subsets():
            jd = pkg.join(J)
            series = cone_slice_counts(jd.box.box, bound)
            sign = (-1) ** (n - k) * (-1) ** (pkg.dim + len(jd.J))
            width = pkg.s + len(jd.J)
            for h, cnt in series.items():
                for j in range(width + 1):
                    coef = (-1) ** j * comb(width, j)
                    acc.add(h + j - k + 1, sign * coef * cnt)
    top = Fraction(n - k + 1)
    out = PuiseuxSeries(top)
    for b, c in acc.items():
        if b > n - k + 2:
            continue  # beyond the reliable truncation window
        if b <= 0 or b >= top:
            raise ArithmeticError(
                "spectrum coefficient outside the open support window "
                "at %s" % (b,))
        out.add(b, c)
    return out


# ---------------------------------------------------------------------------
# eigenvalue candidates
# ---------------------------------------------------------------------------

def eigenvalue_candidates(packages):
    """All eigenvalue classes that can possibly carry a block.

    Every predicate in the pipeline asks whether the class order divides
    one of finitely many lattice distances; their lcm N bounds the
    candidate denominators, so the classes a/N (0 < a < N) exhaust the
    possibilities.
    """
    N = 1
    for pkg in packages:
        if pkg.degenerate:
            continue
        N = lcm(N, pkg.d_theta)
        for J in pkg.subsets():
            jd = pkg.join(J)
            N = lcm(N, jd.d)
            box = jd.box.box
            for face in box.all_faces():
                pts = box.face_points(face)
                N = lcm(N, lattice_distance_of_points(pts, box.ambient_dim))
            if jd.delta == 1:
                for d, _ in _facet_decompositions(pkg, J):
                    N = lcm(N, d)
    return [EigenvalueClass(Fraction(a, N)) for a in range(1, N)]
