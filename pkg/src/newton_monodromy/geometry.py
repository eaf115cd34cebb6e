"""Exact rational polyhedral geometry.

Polytopes and Newton polyhedra with V- and H-representations, face
lattices, Minkowski sums with face correspondence, normalized and mixed
volumes, lattice distances, and prime (simple) majorizers.  All
computations use exact integer/rational arithmetic; conversion between
representations is done by an incremental double-description method,
which is entirely adequate at the intended scale (ambient dimension
<= 7, a few dozen generators).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, gcd

from .intlinalg import (
    clear_denominators,
    coords_in_basis,
    content,
    det_int,
    primitive,
    rational_rank,
    right_kernel,
    row_hnf,
    saturation,
    vec_add,
    vec_dot,
    vec_sub,
)


# ---------------------------------------------------------------------------
# double description: extreme rays of {x : a.x >= 0 for all a}
# ---------------------------------------------------------------------------

def _normalize_ray(v):
    fracs = [Fraction(x) for x in v]
    lcm = 1
    for f in fracs:
        lcm = lcm // gcd(lcm, f.denominator) * f.denominator
    ints = [int(f * lcm) for f in fracs]
    g = content(ints)
    if g == 0:
        return None
    return tuple(x // g for x in ints)


def dual_rays(ineqs, dim):
    """Extreme rays of the cone {x in R^dim : a.x >= 0 for each a}.

    Raises if the cone has a nontrivial lineality space (all our uses
    are pointed cones).  Inequality normals may be rational.
    """
    ineqs = [tuple(a) for a in ineqs]
    # deduplicate up to positive scaling
    seen = set()
    system = []
    for a in ineqs:
        na = _normalize_ray(a)
        if na is None or na in seen:
            continue
        seen.add(na)
        system.append(na)

    lin = [tuple(1 if j == i else 0 for j in range(dim)) for i in range(dim)]
    rays = []  # list of [vector, tight_index_set]
    processed = 0
    for a in system:
        vals_lin = [vec_dot(a, l) for l in lin]
        if any(vals_lin):
            # the constraint cuts the lineality space
            i0 = next(i for i, v in enumerate(vals_lin) if v)
            l0, v0 = lin[i0], vals_lin[i0]
            if v0 < 0:
                l0, v0 = tuple(-x for x in l0), -v0
            new_lin = []
            for i, l in enumerate(lin):
                if i == i0:
                    continue
                vl = vals_lin[i]
                if vl:
                    l = _normalize_ray(tuple(Fraction(x) * v0 - Fraction(vl) * y
                                             for x, y in zip(l, l0)))
                new_lin.append(l)
            new_rays = []
            for r, tight in rays:
                vr = vec_dot(a, r)
                if vr:
                    r = _normalize_ray(tuple(Fraction(x) * v0 - Fraction(vr) * y
                                             for x, y in zip(r, l0)))
                # either way the ray is now tight on the current constraint
                new_rays.append([r, tight | {processed}])
            # l0 itself becomes a ray, tight on every previous constraint
            new_rays.append([l0, set(range(processed))])
            lin = new_lin
            rays = new_rays
        else:
            pos, zero, neg = [], [], []
            for r, tight in rays:
                v = vec_dot(a, r)
                if v > 0:
                    pos.append([r, tight, v])
                elif v < 0:
                    neg.append([r, tight, v])
                else:
                    tight.add(processed)
                    zero.append([r, tight])
            new = []
            for (p, tp, vp), (q, tq, vq) in itertools.product(pos, neg):
                common = tp & tq
                # combinatorial adjacency test
                adjacent = True
                for r, tight, _ in itertools.chain(pos, neg):
                    if r is p or r is q:
                        continue
                    if common <= tight:
                        adjacent = False
                        break
                if adjacent:
                    for r, tight in zero:
                        if common <= tight:
                            adjacent = False
                            break
                if adjacent:
                    w = _normalize_ray(tuple(vp * y - vq * x
                                             for x, y in zip(p, q)))
                    wt = {j for j in range(processed + 1)
                          if vec_dot(system[j], w) == 0}
                    new.append([w, wt])
            rays = [[r, t] for r, t, _ in pos] + zero + new
        processed += 1
    if lin:
        raise ValueError("cone is not pointed (lineality space remains)")
    return [r for r, _ in rays]


# ---------------------------------------------------------------------------
# faces
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Face:
    """A face of a polytope or polyhedron.

    ``vidx`` indexes the generator points lying on the face, ``ridx``
    the recession-ray generators (empty for bounded faces), ``tight``
    the facet indices containing the face (empty for the whole body).
    """
    dim: int
    vidx: frozenset
    ridx: frozenset
    tight: frozenset

    @property
    def compact(self):
        return not self.ridx


def _affine_dim(points, rays=()):
    if not points:
        return -1
    base = points[0]
    vecs = [vec_sub(p, base) for p in points[1:]] + [tuple(r) for r in rays]
    vecs = [v for v in vecs if any(v)]
    if not vecs:
        return 0
    return rational_rank(vecs)


def _face_closure(facet_data, nverts, nrays, verts, rays):
    """Build the face lattice from facet incidences.

    ``facet_data`` is a list of (tight vertex index set, tight ray index
    set).  Returns all nonempty faces including the whole body.
    """
    all_v = frozenset(range(nverts))
    all_r = frozenset(range(nrays))
    seen = {(all_v, all_r): frozenset()}
    for i, (fv, fr) in enumerate(facet_data):
        key = (fv, fr)
        seen[key] = seen.get(key, frozenset()) | {i}
    pending = set(seen.keys())
    while pending:
        fv, fr = pending.pop()
        for i, (gv, gr) in enumerate(facet_data):
            nv, nr = fv & gv, fr & gr
            if not nv:
                continue
            key = (nv, nr)
            tight = seen.get(key)
            new_tight = seen[(fv, fr)] | {i}
            if tight is None:
                seen[key] = new_tight
                pending.add(key)
            elif not new_tight <= tight:
                seen[key] = tight | new_tight
                pending.add(key)
    faces = []
    for (fv, fr), tight in seen.items():
        pts = [verts[i] for i in sorted(fv)]
        rs = [rays[i] for i in sorted(fr)]
        faces.append(Face(_affine_dim(pts, rs), fv, fr, frozenset(tight)))
    faces.sort(key=lambda f: (f.dim, sorted(f.vidx), sorted(f.ridx)))
    return faces


# ---------------------------------------------------------------------------
# polytopes
# ---------------------------------------------------------------------------

class Polytope:
    """Bounded convex hull of finitely many rational points.

    Vertices are stored in a canonical (sorted) order.  The face
    lattice, facets and volumes are computed lazily and cached.  A
    polytope of dimension d < ambient keeps an internal full-dimensional
    model in coordinates of the saturated direction lattice.
    """

    def __init__(self, verts, ambient_dim, _internal=None):
        self.verts = tuple(verts)
        self.ambient_dim = ambient_dim
        self._vindex = {v: i for i, v in enumerate(self.verts)}
        if _internal is not None:
            (self.dim, self._base, self._dirbasis, self._fverts,
             self._facets, self._faces) = _internal
        else:
            self._setup()
        self._face_by_key = {(f.vidx, f.ridx): f for f in self._faces}
        self._subcache = {}
        self._volcache = None

    # -- construction -------------------------------------------------

    @classmethod
    def from_points(cls, points, ambient_dim=None):
        pts = [tuple(p) for p in points]
        if not pts:
            raise ValueError("empty point set")
        n = ambient_dim if ambient_dim is not None else len(pts[0])
        if any(len(p) != n for p in pts):
            raise ValueError("inconsistent point dimensions")
        pts = sorted(set(pts))
        dim, base, dirbasis, fpts = _affine_model(pts)
        if dim == 0:
            verts = pts
            facets = []
            faces = [Face(0, frozenset({0}), frozenset(), frozenset())]
            return cls(verts, n, (0, base, dirbasis, [()], facets, faces))
        facets = _hull_facets(fpts, dim)
        # keep only extreme points
        keep = []
        for i, p in enumerate(fpts):
            tight = [a for a, b in facets if vec_dot(a, p) == b]
            if rational_rank(tight) == dim:
                keep.append(i)
        verts = [pts[i] for i in keep]
        fverts = [fpts[i] for i in keep]
        facet_data = []
        for a, b in facets:
            tightset = frozenset(i for i, p in enumerate(fverts)
                                 if vec_dot(a, p) == b)
            facet_data.append((tightset, frozenset()))
        faces = _face_closure(facet_data, len(verts), 0, verts, [])
        return cls(verts, n, (dim, base, dirbasis, fverts, facets, faces))

    def _setup(self):  # pragma: no cover - always built via from_points
        raise RuntimeError("use Polytope.from_points")

    # -- basic queries -------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, Polytope) and self.verts == other.verts

    def __hash__(self):
        return hash(self.verts)

    def __repr__(self):
        return f"Polytope(dim={self.dim}, verts={list(self.verts)})"

    @property
    def facets(self):
        """Facets as (primitive integer normal, offset) with a.x >= b
        on the full-dimensional internal model."""
        return self._facets

    def all_faces(self, include_self=True):
        if include_self:
            return list(self._faces)
        return [f for f in self._faces if f.tight]

    def faces_of_dim(self, d):
        return [f for f in self._faces if f.dim == d]

    @property
    def whole_face(self):
        return next(f for f in self._faces if not f.tight)

    def face_points(self, face):
        return tuple(self.verts[i] for i in sorted(face.vidx))

    def face_polytope(self, face):
        key = face.vidx
        sub = self._subcache.get(key)
        if sub is None:
            sub = Polytope.from_points(self.face_points(face),
                                       self.ambient_dim)
            self._subcache[key] = sub
        return sub

    def subfaces(self, face, d):
        """Faces of dimension d contained in the given face."""
        return [g for g in self._faces if g.dim == d and g.vidx <= face.vidx]

    def contains_origin_in_face(self, face):
        """True iff the origin lies on the face (the face is tight on
        only zero-offset facets and the origin is in the polytope)."""
        zero = tuple(0 for _ in range(self.ambient_dim))
        pts = self.face_points(face)
        if zero in pts:
            return True
        # origin could be a non-vertex point of the face
        return self._point_in_face(zero, face)

    def _point_in_face(self, p, face):
        fp = self._to_internal(p)
        if fp is None:
            return False
        for i, (a, b) in enumerate(self._facets):
            v = vec_dot(a, fp)
            if v < b:
                return False
            if i in face.tight and v != b:
                return False
        if face.tight:
            return True
        return True

    def _to_internal(self, p):
        """Coordinates of an ambient point in the internal model, or
        None if the point is off the affine span."""
        if self.dim == self.ambient_dim:
            return vec_sub(p, self._base)
        return coords_in_basis(self._dirbasis, vec_sub(p, self._base))

    def supporting_face(self, u):
        vals = [vec_dot(u, v) for v in self.verts]
        m = min(vals)
        vset = frozenset(i for i, v in enumerate(vals) if v == m)
        face = self._face_by_key.get((vset, frozenset()))
        if face is None:  # pragma: no cover - argmin sets are faces
            raise RuntimeError("argmin set is not a face")
        return face

    def normal_vector(self, face):
        """An ambient vector in the relative interior of the face's
        normal cone (argmin convention).  Requires a full-dimensional
        polytope."""
        if self.dim != self.ambient_dim:
            raise ValueError("normal vectors need a full-dimensional body")
        if not face.tight:
            return tuple(0 for _ in range(self.ambient_dim))
        u = [0] * self.ambient_dim
        for i in face.tight:
            a, _ = self._facets[i]
            for j in range(self.ambient_dim):
                u[j] += a[j]
        return tuple(u)

    def translate(self, w):
        return Polytope.from_points([vec_add(v, w) for v in self.verts],
                                    self.ambient_dim)

    # -- volume --------------------------------------------------------

    def triangulation(self):
        """List of simplices (tuples of vertex indices), each of
        dimension dim, forming a triangulation of the polytope."""
        if self.dim == 0:
            return [(0,)]
        apex = 0  # canonical: lowest vertex in sorted order
        simplices = []
        for facet in self.faces_of_dim(self.dim - 1):
            if apex in facet.vidx:
                continue
            sub = self.face_polytope(facet)
            back = [self._vindex[v] for v in sub.verts]
            for s in sub.triangulation():
                simplices.append(tuple(back[i] for i in s) + (apex,))
        return simplices

    def normalized_volume(self, lattice_rows=None):
        """d! times the Lebesgue volume w.r.t. the polytope's saturated
        affine lattice (default) or an explicit lattice basis whose
        rank must equal dim."""
        if lattice_rows is None:
            if self._volcache is not None:
                return self._volcache
            coords = self._fverts
        else:
            if len(lattice_rows) != self.dim:
                raise ValueError("lattice rank differs from dimension")
            coords = []
            for v in self.verts:
                c = coords_in_basis(lattice_rows, vec_sub(v, self.verts[0]))
                if c is None:
                    raise ValueError("vertex outside lattice span")
                coords.append(c)
        if self.dim == 0:
            return 1
        total = Fraction(0)
        for s in self.triangulation():
            base = coords[s[-1]]
            mat = [vec_sub(coords[i], base) for i in s[:-1]]
            total += abs(det_int(mat))
        if total.denominator == 1:
            total = int(total)
        if lattice_rows is None:
            self._volcache = total
        return total


def _affine_model(pts):
    """(dim, base, direction basis rows, internal coordinates)."""
    base = pts[0]
    diffs = [vec_sub(p, base) for p in pts[1:]]
    diffs = [d for d in diffs if any(d)]
    n = len(base)
    if not diffs:
        return 0, base, [], [()] * len(pts)
    int_diffs = [clear_denominators(d) for d in diffs]
    dirbasis = saturation(int_diffs, n)
    dim = len(dirbasis)
    if dim == n and dirbasis == [tuple(1 if j == i else 0 for j in range(n))
                                 for i in range(n)]:
        fpts = [vec_sub(p, base) for p in pts]
    else:
        fpts = []
        for p in pts:
            c = coords_in_basis(dirbasis, vec_sub(p, base))
            if c is None:  # pragma: no cover
                raise RuntimeError("saturation failed to span differences")
            fpts.append(c)
    return dim, base, dirbasis, fpts


def _hull_facets(fpts, dim):
    """Facets (a, b) with a.x >= b of a full-dimensional hull, via the
    double description of the homogenization cone's dual."""
    ineqs = [tuple(p) + (1,) for p in fpts]
    rays = dual_rays(ineqs, dim + 1)
    facets = []
    for r in rays:
        a, b = r[:-1], r[-1]
        if not any(a):  # the t>=0 direction; not a facet of the hull
            continue
        facets.append((a, -b))
    return facets


# ---------------------------------------------------------------------------
# Newton polyhedra
# ---------------------------------------------------------------------------

class NewtonPolyhedron:
    """conv(support) + R_+^n, the local Newton polyhedron of a support
    set, with its full face lattice and compactness flags."""

    def __init__(self, support, n):
        pts = sorted(set(tuple(p) for p in support))
        if not pts:
            raise ValueError("empty support")
        if any(len(p) != n for p in pts):
            raise ValueError("inconsistent point dimensions")
        if any(x < 0 for p in pts for x in p):
            raise ValueError("negative exponent in local support")
        self.ambient_dim = n
        self.points = pts
        self.rays = [tuple(1 if j == i else 0 for j in range(n))
                     for i in range(n)]
        gens = [p + (1,) for p in pts] + [r + (0,) for r in self.rays]
        duals = dual_rays(gens, n + 1)
        facets = []
        for r in duals:
            a, b = r[:-1], r[-1]
            if not any(a):
                continue
            facets.append((a, -b))  # a.x >= -b ... stored as (a, offset)
        self.facets = [(a, b) for a, b in facets]
        facet_data = []
        for a, b in self.facets:
            tv = frozenset(i for i, p in enumerate(pts) if vec_dot(a, p) == b)
            tr = frozenset(i for i, r in enumerate(self.rays)
                           if vec_dot(a, r) == 0)
            facet_data.append((tv, tr))
        self.faces = _face_closure(facet_data, len(pts), n, pts, self.rays)
        self._face_by_key = {(f.vidx, f.ridx): f for f in self.faces}
        if _affine_dim(pts, self.rays) != n:  # pragma: no cover
            raise RuntimeError("Newton polyhedron must be full-dimensional")

    def compact_faces(self):
        return [f for f in self.faces if f.compact]

    def face_points(self, face):
        return tuple(self.points[i] for i in sorted(face.vidx))

    def face_polytope(self, face):
        if not face.compact:
            raise ValueError("face is unbounded")
        return Polytope.from_points(self.face_points(face), self.ambient_dim)

    def supporting_face(self, u):
        if any(x < 0 for x in u):
            raise ValueError("unbounded minimum on the Newton polyhedron")
        vals = [vec_dot(u, p) for p in self.points]
        m = min(vals)
        vset = frozenset(i for i, v in enumerate(vals) if v == m)
        rset = frozenset(i for i in range(self.ambient_dim) if u[i] == 0)
        face = self._face_by_key.get((vset, rset))
        if face is None:  # pragma: no cover
            raise RuntimeError("argmin set is not a face")
        return face

    def normal_vector(self, face):
        """A vector in the relative interior of the face's normal cone;
        strictly positive exactly for compact faces."""
        u = [0] * self.ambient_dim
        for i in face.tight:
            a, _ = self.facets[i]
            for j in range(self.ambient_dim):
                u[j] += a[j]
        return tuple(u)


def is_convenient(support, n):
    """True iff every coordinate axis carries a support point that is a
    positive multiple of a unit vector."""
    for i in range(n):
        ok = any(p[i] > 0 and all(x == 0 for j, x in enumerate(p) if j != i)
                 for p in support)
        if not ok:
            return False
    return True


def newton_polytope_at_infinity(support, n):
    """conv({0} union support), the Newton polytope at infinity."""
    pts = [tuple(p) for p in support]
    if not pts:
        raise ValueError("empty support")
    zero = tuple(0 for _ in range(n))
    return Polytope.from_points(pts + [zero], n)


def faces_at_infinity(poly):
    """Faces of a Newton polytope at infinity not containing the origin."""
    out = []
    for f in poly.all_faces():
        if not poly.contains_origin_in_face(f):
            out.append(f)
    return out


# ---------------------------------------------------------------------------
# Minkowski sums with face correspondence
# ---------------------------------------------------------------------------

def minkowski_sum_points(point_sets):
    acc = [tuple(p) for p in point_sets[0]]
    for ps in point_sets[1:]:
        acc = [vec_add(a, p) for a in acc for p in ps]
        acc = sorted(set(acc))
    return acc


def minkowski_sum_polytopes(polys):
    pts = minkowski_sum_points([p.verts for p in polys])
    return Polytope.from_points(pts, polys[0].ambient_dim)


def minkowski_sum_newton(polyhedra):
    """Minkowski sum of local Newton polyhedra (again a Newton
    polyhedron, with recession cone R_+^n)."""
    pts = minkowski_sum_points([p.points for p in polyhedra])
    return NewtonPolyhedron(pts, polyhedra[0].ambient_dim)


def decompose_sum_face(sum_body, face, summands, check=False):
    """Per-summand supporting faces of a face of a Minkowski sum.

    ``sum_body`` must be full-dimensional; a relative-interior normal
    vector of the face is used, per the face correspondence.
    """
    u = sum_body.normal_vector(face)
    parts = [s.supporting_face(u) for s in summands]
    if check:
        pts = minkowski_sum_points(
            [s.face_points(g) for s, g in zip(summands, parts)])
        got = Polytope.from_points(pts, sum_body.ambient_dim)
        want = Polytope.from_points(sum_body.face_points(face),
                                    sum_body.ambient_dim)
        if got != want:
            raise RuntimeError("Minkowski face correspondence failed")
    return u, parts


# ---------------------------------------------------------------------------
# volumes and distances
# ---------------------------------------------------------------------------

def normalized_volume(poly, lattice_rows=None):
    return poly.normalized_volume(lattice_rows)


def mixed_volume(polys, n, lattice_rows=None):
    """Normalized mixed volume of n polytopes by inclusion-exclusion
    over Minkowski sub-sums, w.r.t. ZZ^n or an explicit rank-n lattice."""
    if len(polys) != n:
        raise ValueError("need exactly n polytopes in a rank-n context")
    if n == 0:
        return 1
    total = Fraction(0)
    for r in range(1, n + 1):
        for idx in itertools.combinations(range(n), r):
            s = minkowski_sum_polytopes([polys[i] for i in idx])
            if s.dim < n:
                continue
            v = s.normalized_volume(lattice_rows)
            total += (-1) ** (n - r) * Fraction(v)
    total /= factorial(n)
    if total.denominator == 1:
        total = int(total)
    return total


def flat_lattice_distance(p0, directions, n):
    """Lattice distance from the origin of the flat p0 + span(directions),
    measured in the saturated lattice of span({0} union flat).

    Returns 0 when the flat passes through the origin.
    """
    gens = [tuple(p0)] + [tuple(d) for d in directions]
    span = saturation([g for g in gens if any(g)], n)
    s = len(span)
    dirs = [d for d in directions if any(d)]
    dim_dir = rational_rank(dirs) if dirs else 0
    if s == dim_dir:
        return 0
    if s != dim_dir + 1:  # pragma: no cover
        raise RuntimeError("inconsistent spans in lattice distance")
    p0c = coords_in_basis(span, p0)
    if s == 1:
        return abs(int(p0c[0]))
    dirc = [coords_in_basis(span, d) for d in dirs]
    kern = right_kernel(dirc, s)
    if len(kern) != 1:  # pragma: no cover
        raise RuntimeError("direction kernel is not one-dimensional")
    u = primitive(kern[0])
    return abs(vec_dot(u, p0c))


def lattice_distance_of_points(points, n):
    """Lattice distance from the origin of the affine span of the given
    lattice points (content gcd for a single point)."""
    pts = [tuple(p) for p in points]
    dirs = [vec_sub(p, pts[0]) for p in pts[1:]]
    return flat_lattice_distance(pts[0], dirs, n)


# ---------------------------------------------------------------------------
# prime / pseudo-prime polytopes and majorizers
# ---------------------------------------------------------------------------

def is_prime(poly):
    """Simple polytope test: every vertex lies on exactly dim facets."""
    d = poly.dim
    if d <= 2:
        return True
    for v in poly.faces_of_dim(0):
        if len(v.tight) != d:
            return False
    return True


def is_pseudo_prime(poly):
    """Every edge lies on exactly dim - 1 two-dimensional faces."""
    d = poly.dim
    if d <= 2:
        return True
    twofaces = poly.faces_of_dim(2)
    for e in poly.faces_of_dim(1):
        cnt = sum(1 for f in twofaces if e.vidx <= f.vidx)
        if cnt != d - 1:
            return False
    return True


@dataclass
class PrimeMajorizer:
    """A prime polytope P' majorizing P, with the induced face map.

    ``face_pairs`` lists (dim of face' of P', face of P) for every face
    of P', whole bodies included; ``vertex_map`` sends each vertex of P'
    to the vertex of P whose cone contains its own.
    """
    original: Polytope
    majorizer: Polytope
    face_pairs: list
    vertex_map: dict


def prime_majorizer(poly, order_seed=0):
    """A simple polytope whose normal fan refines poly's normal fan.

    Obtained by perturbing the facet offsets with deterministic,
    lexicographically separated amounts (realizing a pulling-type
    regular refinement of the normal fan); the construction is verified
    exactly and the perturbation shrunk until it succeeds.
    """
    if is_prime(poly):
        pairs = [(f.dim, f) for f in poly.all_faces()]
        vmap = {v: v for v in poly.faces_of_dim(0)}
        return PrimeMajorizer(poly, poly, pairs, vmap)
    if poly.dim != poly.ambient_dim:
        raise ValueError("majorizer construction needs full-dimensional input")
    d = poly.dim
    facets = list(poly.facets)
    order = list(range(len(facets)))
    # deterministic pulling order; distinct seeds give distinct orders
    if order_seed % 2 == 1:
        order.reverse()
    rot = (order_seed // 2) % len(order)
    order = order[rot:] + order[:rot]
    for m in range(3, 64):
        eps = Fraction(1, 2 ** m)
        offsets = {}
        for pos, i in enumerate(order):
            a, b = facets[i]
            offsets[i] = Fraction(b) - eps ** (pos + 1)
        ineqs = []
        for i, (a, _) in enumerate(facets):
            c = offsets[i]
            ineqs.append(tuple(a) + (-c,))
        # vertices of {a.x >= c} via homogenization
        try:
            rays = dual_rays([r for r in _homog(ineqs, d)], d + 1)
        except ValueError:  # pragma: no cover
            continue
        verts = []
        ok = True
        for r in rays:
            if r[-1] <= 0:
                ok = False  # unbounded; cannot happen for shrunk offsets
                break
            verts.append(tuple(Fraction(x, r[-1]) for x in r[:-1]))
        if not ok:
            continue
        maj = Polytope.from_points(verts, d)
        if maj.dim != d or not is_prime(maj):
            continue
        if _check_majorization(poly, maj):
            break
    else:  # pragma: no cover
        raise RuntimeError("prime majorizer construction failed")
    pairs = []
    vmap = {}
    for f in maj.all_faces():
        u = maj.normal_vector(f)
        g = poly.supporting_face(u)
        pairs.append((f.dim, g))
        if f.dim == 0:
            vmap[f] = g
    return PrimeMajorizer(poly, maj, pairs, vmap)


def _homog(ineqs, d):
    """Homogenize a.x + c >= 0 systems to cone inequalities, clearing
    denominators; includes the s >= 0 inequality."""
    out = []
    for row in ineqs:
        fr = [Fraction(x) for x in row]
        lcm = 1
        for f in fr:
            lcm = lcm // gcd(lcm, f.denominator) * f.denominator
        out.append(tuple(int(f * lcm) for f in fr))
    out.append(tuple([0] * d + [1]))
    return out


def _check_majorization(poly, maj):
    """Every vertex cone of the majorizer must contain the corresponding
    vertex cone of poly (normal-cone containment, checked exactly)."""
    for w in maj.faces_of_dim(0):
        u = maj.normal_vector(w)
        g = poly.supporting_face(u)
        if g.dim != 0:
            return False
        gv = poly.verts[min(g.vidx)]
        for i in w.tight:
            a, _ = maj.facets[i]
            m = min(vec_dot(a, v) for v in poly.verts)
            if vec_dot(a, gv) != m:
                return False
    return True
