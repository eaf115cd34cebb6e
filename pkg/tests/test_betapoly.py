"""Virtual Betti polynomials of based polytopes."""

import random
from fractions import Fraction

import pytest

from newton_monodromy.betapoly import (
    BasedPolytope,
    beta_padded,
    beta_point,
    beta_pseudoprime_closed,
    beta_recursive,
)
from newton_monodromy.geometry import Polytope
from newton_monodromy.latticecount import EigenvalueClass
from newton_monodromy.polys import pdegree, peval_one, pmul, t2m1_power


def test_based_polytope_rejects_origin_span():
    with pytest.raises(ValueError):
        BasedPolytope.of([(0, 0), (1, 0)])
    bp = BasedPolytope.of([(1, 0), (1, 1)])
    assert bp.d_box == 1


def test_beta_point():
    assert beta_point((2, 0), EigenvalueClass.parse("1/2")) == {0: 1}
    assert beta_point((1, 0), EigenvalueClass.parse("1/2")) == {}


def test_segment_hand_formula():
    # segment from (3,0) to (0,3): distance 3, length 3
    bp = BasedPolytope.of([(3, 0), (0, 3)])
    third = EigenvalueClass.parse("1/3")
    half = EigenvalueClass.parse("1/2")
    # endpoints contribute -1 each; degree-1 term is 2 - gated length
    assert beta_recursive(bp, third) == {0: -2, 1: -1}
    assert beta_recursive(bp, half) == {}


def test_value_at_one_is_gated_volume():
    rng = random.Random(3)
    for _ in range(10):
        a = (rng.randint(1, 4), rng.randint(0, 4))
        b = (rng.randint(0, 4), rng.randint(1, 4))
        pts = [a, b]
        box = Polytope.from_points(pts)
        if box.dim == 0:
            continue
        try:
            bp = BasedPolytope.of(box)
        except ValueError:
            continue
        for order in (2, 3, 4):
            beta = beta_recursive(bp, Fraction(1, order))
            vol = box.normalized_volume() if bp.d_box % order == 0 else 0
            assert peval_one(beta) == (-1) ** box.dim * vol
            d = pdegree(beta)
            assert d is None or d <= box.dim


def test_closed_form_matches_recursion():
    bp = BasedPolytope.of([(2, 0), (0, 2)])
    for a in ("1/2", "1/3", "1/4"):
        alpha = EigenvalueClass.parse(a)
        assert beta_pseudoprime_closed(bp, alpha) == \
            beta_recursive(bp, alpha)


def test_polygon_closed_form():
    bp = BasedPolytope.of([(2, 0, 0), (0, 2, 0), (0, 0, 2)])
    for a in ("1/2", "1/3"):
        alpha = EigenvalueClass.parse(a)
        try:
            closed = beta_pseudoprime_closed(bp, alpha)
        except ValueError:
            continue
        assert closed == beta_recursive(bp, alpha)


def test_majorizer_order_independence():
    bp = BasedPolytope.of([(3, 0, 2), (0, 2, 2), (2, 2, 2), (1, 3, 2)])
    alpha = EigenvalueClass.parse("1/2")
    base = beta_recursive(bp, alpha, order_seed=0)
    for seed in (1, 2, 3):
        assert beta_recursive(bp, alpha, order_seed=seed) == base


def test_beta_padded():
    bp = BasedPolytope.of([(1, 0), (1, 1)])
    alpha = EigenvalueClass.parse("1/2")
    inner = beta_recursive(bp, alpha)
    assert beta_padded(bp, 3, alpha) == pmul(t2m1_power(2), inner)
    with pytest.raises(ValueError):
        beta_padded(bp, 0, alpha)


def test_only_order_matters():
    bp = BasedPolytope.of([(2, 1), (1, 3)])
    assert beta_recursive(bp, EigenvalueClass.parse("1/4")) == \
        beta_recursive(bp, EigenvalueClass.parse("3/4"))
