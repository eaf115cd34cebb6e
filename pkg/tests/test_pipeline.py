"""End-to-end monodromy pipeline on fixed instances."""

from fractions import Fraction

import pytest

from newton_monodromy.latticecount import EigenvalueClass
from newton_monodromy.oracles import naive_beta_2d
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

DOUBLE_QUADRIC = [[(2, 0, 0), (0, 2, 0), (0, 0, 2)],
                  [(2, 0, 0), (0, 2, 0), (0, 0, 4)]]


def quadric_packages():
    return enumerate_theta_packages(DOUBLE_QUADRIC, 3, 2, "local")


def test_validation_errors():
    with pytest.raises(ValueError):
        enumerate_theta_packages([[(1, 1, 0)], [(2, 0, 0), (0, 2, 0),
                                                (0, 0, 2)]], 3, 2, "local")
    with pytest.raises(ValueError):
        enumerate_theta_packages(
            [[(0, 0, 0), (2, 0, 0), (0, 2, 0), (0, 0, 2)],
             [(2, 0, 0), (0, 2, 0), (0, 0, 2)]], 3, 2, "local")
    with pytest.raises(ValueError):
        enumerate_theta_packages([[(-1, 0), (0, 1)], [(1, 0), (0, 1)]],
                                 2, 2, "local")
    with pytest.raises(ValueError):
        enumerate_theta_packages([[(1, 0), (0, 1)]], 2, 1, "local")


def test_double_quadric_candidates():
    pkgs = quadric_packages()
    cands = [str(c) for c in eigenvalue_candidates(pkgs)]
    assert cands == ["1/4", "1/2", "3/4"]


def test_double_quadric_blocks():
    pkgs = quadric_packages()
    r = jordan_blocks(pkgs, EigenvalueClass.parse("1/2"), check=True)
    assert r.beta == {1: -2}
    assert r.counts_geq == (2, 0)
    assert r.counts_exact == (2, 0)
    r4 = jordan_blocks(pkgs, EigenvalueClass.parse("1/4"), check=True)
    assert r4.beta == {}
    assert r4.counts_geq == (0, 0)


def test_double_quadric_closed_forms():
    pkgs = quadric_packages()
    half = EigenvalueClass.parse("1/2")
    beta = motivic_beta(pkgs, half)
    sign = -1  # (-1)^(n-k) with n=3, k=2
    assert jordan_max_count(pkgs, half) == sign * beta.get(2, 0)
    assert jordan_second_count(pkgs, half) == sign * beta.get(1, 0)
    assert jordan_max_count_k2(pkgs, half) == jordan_max_count(pkgs, half)
    assert jordan_second_count_k2(pkgs, half) == \
        jordan_second_count(pkgs, half)


def test_double_quadric_spectrum():
    sp = spectrum(quadric_packages())
    assert [(b, c) for b, c in sp.items()] == [(Fraction(1, 2), 1),
                                               (Fraction(3, 2), 1)]


def test_plane_curve_matches_naive():
    instances = [
        [[(3, 0), (0, 2)], [(2, 0), (0, 3)]],
        [[(2, 0), (1, 1), (0, 2)], [(4, 0), (0, 3)]],
        [[(2, 0), (0, 4)], [(3, 0), (1, 1), (0, 2)]],
    ]
    for sups in instances:
        pkgs = enumerate_theta_packages(sups, 2, 2, "local")
        orders = sorted({c.order for c in eigenvalue_candidates(pkgs)})
        for order in orders:
            alpha = EigenvalueClass(Fraction(1, order))
            beta = motivic_beta(pkgs, alpha)
            assert beta == naive_beta_2d(sups[0], sups[1], order)


def test_majorizing_corollaries():
    # dilates of one support share their normal fan
    base = [(2, 0, 0), (0, 2, 0), (0, 0, 2), (1, 1, 0)]
    sups = [base, [tuple(2 * x for x in p) for p in base]]
    pkgs = enumerate_theta_packages(sups, 3, 2, "local")
    for c in eigenvalue_candidates(pkgs):
        assert jordan_max_count_majorizing(pkgs, c) == \
            jordan_max_count(pkgs, c)
        assert jordan_second_count_majorizing(pkgs, c) == \
            jordan_second_count(pkgs, c)


def test_n_equals_k_has_single_block_row():
    sups = [[(2, 0), (0, 2)], [(3, 0), (0, 3)]]
    pkgs = enumerate_theta_packages(sups, 2, 2, "local")
    for c in eigenvalue_candidates(pkgs):
        r = jordan_blocks(pkgs, c)
        assert len(r.counts_geq) == 1
    with pytest.raises(ValueError):
        jordan_second_count(pkgs, EigenvalueClass.parse("1/2"))


def test_infinity_mode_runs():
    sups = [[(0, 0, 0), (2, 0, 0), (0, 2, 0), (0, 0, 2), (1, 0, 0)],
            [(0, 0, 0), (2, 0, 0), (0, 2, 0), (0, 0, 4)]]
    pkgs = enumerate_theta_packages(sups, 3, 2, "infinity")
    for c in eigenvalue_candidates(pkgs):
        r = jordan_blocks(pkgs, c, check=True)
        assert all(x >= 0 for x in r.counts_geq)


def test_infinity_needs_full_dimension():
    with pytest.raises(ValueError):
        enumerate_theta_packages([[(0, 0), (1, 0)], [(0, 0), (2, 0)]],
                                 2, 2, "infinity")
