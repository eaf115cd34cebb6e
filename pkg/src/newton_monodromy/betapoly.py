"""Virtual Betti polynomials of based polytopes.

A based polytope is a lattice polytope whose affine span misses the
origin; the lattice distance d of that span induces an order-d torsion
action on the attached hypersurface.  beta_recursive implements the
three-condition recursion (degree bound, symmetry through a prime
majorizer, volume evaluation at t=1); beta_pseudoprime_closed is the
independent closed form available when the pyramid over the box is
pseudo-prime.  Only the order of the eigenvalue class matters, so
results are memoized per (vertex set, order).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .geometry import (
    Polytope,
    is_pseudo_prime,
    lattice_distance_of_points,
    prime_majorizer,
)
from .intlinalg import (
    coords_in_basis,
    det_int,
    right_kernel,
    saturation,
    solve_rational,
    vec_dot,
    vec_sub,
)
from .latticecount import (
    EigenvalueClass,
    alpha_value,
    in_coset,
    subgroup_order,
)
from .polys import padd, pmul, t2m1_power


@dataclass(frozen=True)
class BasedPolytope:
    """A lattice polytope whose affine span avoids the origin."""

    box: Polytope
    d_box: int

    @staticmethod
    def of(points, ambient_dim=None):
        box = points if isinstance(points, Polytope) else \
            Polytope.from_points(points, ambient_dim)
        d = lattice_distance_of_points(box.verts, box.ambient_dim)
        if d == 0:
            raise ValueError("affine span passes through the origin")
        return BasedPolytope(box, d)


def _order_of(alpha):
    if isinstance(alpha, EigenvalueClass):
        return alpha.order
    a = alpha_value(alpha)
    if a == 0:
        raise ValueError("the trivial eigenvalue class is excluded")
    return a.denominator


def beta_point(p, alpha):
    """Beta polynomial of a single nonzero lattice point."""
    order = _order_of(alpha)
    d = lattice_distance_of_points([p], len(p))
    if d == 0:
        raise ValueError("based point must differ from the origin")
    return {0: 1} if d % order == 0 else {}


_MEMO = {}


def beta_recursive(bp, alpha, order_seed=0):
    """beta(box)_alpha via the majorizer recursion.

    Returns a sparse polynomial dict of degree <= dim box.
    """
    if not isinstance(bp, BasedPolytope):
        bp = BasedPolytope.of(bp)
    order = _order_of(alpha)
    return dict(_beta(bp.box, order, order_seed))


def _beta(box, order, seed):
    key = (box.verts, order, seed)
    cached = _MEMO.get(key)
    if cached is not None:
        return cached
    d = box.dim
    dist = lattice_distance_of_points(box.verts, box.ambient_dim)
    if dist == 0:
        raise ValueError("face affine span passes through the origin")
    if d == 0:
        res = {0: 1} if dist % order == 0 else {}
        _MEMO[key] = res
        return res
    # full-dimensional internal model for the majorizer construction;
    # the model's lattice is the saturated affine lattice of the box
    amb = dict(zip(box._fverts, box.verts))
    fpoly = Polytope.from_points(box._fverts, d)
    pm = prime_majorizer(fpoly, seed)
    known = {}
    unknown_seen = 0
    for dim_prime, g in pm.face_pairs:
        if not g.tight:  # the whole box: the unknown enters here
            if dim_prime != d:
                raise RuntimeError("proper face mapped to the whole box")
            unknown_seen += 1
            continue
        pts = [amb[v] for v in fpoly.face_points(g)]
        sub = Polytope.from_points(pts, box.ambient_dim)
        term = pmul(t2m1_power(dim_prime - sub.dim), _beta(sub, order, seed))
        known = padd(known, term)
    if unknown_seen != 1:
        raise RuntimeError("majorizer face map is not rooted at the box")
    res = _solve_conditions(box, d, dist, order, known)
    _MEMO[key] = res
    return res


def _solve_conditions(box, d, dist, order, known):
    """Solve the (d+1)-unknown linear system given by the symmetry and
    evaluation conditions."""
    rows = []
    rhs = []
    for k in range(1, d + 1):
        row = [0] * (d + 1)
        row[d - k] = 1
        rows.append(row)
        rhs.append(known.get(d + k, 0) - known.get(d - k, 0))
    rows.append([1] * (d + 1))
    vol_alpha = box.normalized_volume() if dist % order == 0 else 0
    rhs.append((-1) ** d * vol_alpha)
    if det_int(rows) == 0:
        raise ArithmeticError("singular recursion system")
    sol = solve_rational(rows, rhs)
    if sol is None:
        raise ArithmeticError("inconsistent recursion system")
    res = {}
    for i, c in enumerate(sol):
        c = Fraction(c)
        if c.denominator != 1:
            raise ArithmeticError("non-integral beta coefficient")
        if c:
            res[i] = int(c)
    return res


def beta_padded(bp, m, alpha, order_seed=0):
    """(t^2-1)^(m - dim box) * beta(box)_alpha."""
    if not isinstance(bp, BasedPolytope):
        bp = BasedPolytope.of(bp)
    d = bp.box.dim
    if m < d:
        raise ValueError("padding target below the box dimension")
    return pmul(t2m1_power(m - d), beta_recursive(bp, alpha, order_seed))


# ---------------------------------------------------------------------------
# closed form for pseudo-prime pyramids
# ---------------------------------------------------------------------------

def _span_model(box):
    """Coordinates of {0} union box in the saturated lattice of their
    span; returns (rank, coordinate map for lattice points)."""
    n = box.ambient_dim
    basis = saturation(list(box.verts), n)
    rank = len(basis)
    if rank == n:
        return n, lambda v: tuple(v)
    def to_coords(v):
        c = coords_in_basis(basis, v)
        if c is None:
            raise ValueError("point outside the span lattice")
        return c
    return rank, to_coords


def beta_pseudoprime_closed(bp, alpha):
    """beta(box)_alpha by the face-volume closed form.

    Requires the pyramid conv({0} union box) to be pseudo-prime in the
    saturated lattice of its span.
    """
    if not isinstance(bp, BasedPolytope):
        bp = BasedPolytope.of(bp)
    box = bp.box
    a = alpha_value(alpha)
    if a == 0:
        raise ValueError("the trivial eigenvalue class is excluded")
    rank, to_coords = _span_model(box)
    zero = tuple(0 for _ in range(rank))
    pyramid = Polytope.from_points(
        [zero] + [tuple(to_coords(v)) for v in box.verts], rank)
    n = pyramid.dim
    if n != rank:
        raise ValueError("pyramid is not full-dimensional in its span")
    if not is_pseudo_prime(pyramid):
        raise ValueError("pyramid is not pseudo-prime")
    # the torsion character: height over the box distance
    u, dbox = _height_functional(pyramid, box, to_coords, rank)
    res = {}
    for r in range(n):
        total = Fraction(0)
        for big in pyramid.faces_of_dim(r + 1):
            for gamma in pyramid.all_faces():
                if not (gamma.vidx <= big.vidx):
                    continue
                total += (-1) ** gamma.dim * _vol_alpha_term(
                    pyramid, gamma, u, dbox, a, rank)
        total *= (-1) ** (n + r)
        if total.denominator != 1:
            raise ArithmeticError("non-integral closed-form coefficient")
        if total:
            res[r] = int(total)
    return res


def _height_functional(pyramid, box, to_coords, rank):
    """Primitive integer functional equal to d_box on the box's span
    coordinates."""
    coords = [tuple(to_coords(v)) for v in box.verts]
    diffs = [vec_sub(c, coords[0]) for c in coords[1:]]
    perp = right_kernel(diffs, rank) if any(any(d) for d in diffs) else \
        right_kernel([], rank)
    # the box is a facet-level slice: its directions have corank 1
    cands = [u for u in perp if vec_dot(u, coords[0]) != 0]
    if len(perp) != 1 or not cands:
        raise RuntimeError("box span does not slice the pyramid lattice")
    u = perp[0]
    d = vec_dot(u, coords[0])
    if d < 0:
        u, d = tuple(-x for x in u), -d
    return u, d


def _vol_alpha_term(pyramid, gamma, u, dbox, a, rank):
    """Vol_Z(gamma)_alpha / #Lambda(gamma) for a face of the pyramid."""
    pts = [pyramid.verts[i] for i in sorted(gamma.vidx)]
    sub = pyramid.face_polytope(gamma)
    # affine lattice of the face span: one base point plus the saturated
    # direction lattice
    diffs = [vec_sub(p, pts[0]) for p in pts[1:]]
    dirs = saturation(diffs, rank)
    offset = Fraction(vec_dot(u, pts[0]), dbox) % 1
    gens = [Fraction(vec_dot(u, dv), dbox) for dv in dirs]
    if not in_coset(a, offset, gens):
        return Fraction(0)
    lam = subgroup_order(gens)
    return Fraction(sub.normalized_volume(), lam)
