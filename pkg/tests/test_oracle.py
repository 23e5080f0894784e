"""Enumeration oracle, BFS distances, one-step laws, martingale checks."""

from fractions import Fraction

import pytest

from catlab.caterpillar import AdjacencyGraph, Caterpillar, RngSeed, new_spine, simulate, to_adjacency
from catlab.errors import DomainError, ResourceLimitError
from catlab.indices import zagreb
from catlab.oracle import (
    bfs_distances,
    choose_method,
    compositions,
    enumerate_exact,
    hyper_wiener_bfs,
    martingale_residual,
    multinomial_coefficient,
    one_step_successors,
    randic_supermartingale_gap,
    wiener_bfs,
)
from catlab.caterpillar import spine_degrees


def test_enumerate_exact_frozen_values():
    em = enumerate_exact(2, 2, "zagreb")
    assert em.mean == 11
    assert em.variance == 1
    assert em.support_size == 2  # values 12, 10, 10, 12
    assert em.history_count == 4
    assert enumerate_exact(3, 1, "hyper_wiener").mean == 28
    z0 = enumerate_exact(5, 0, "wiener")
    assert z0.variance == 0 and z0.history_count == 1


def test_enumeration_paths_agree():
    for m in (2, 3):
        for n in range(0, 8):
            a = enumerate_exact(m, n, "zagreb", method="histories")
            b = enumerate_exact(m, n, "zagreb", method="compositions")
            assert a == b


def test_enumerate_guard_and_method_choice():
    with pytest.raises(ResourceLimitError, match="guard"):
        enumerate_exact(2, 40, "zagreb", method="histories")
    assert choose_method(2, 40) == "compositions"
    assert choose_method(2, 5) == "histories"
    # composition path succeeds where raw histories cannot
    em = enumerate_exact(2, 40, "zagreb")
    assert em.mean == Fraction(40 * 40, 2) + Fraction(7 * 40, 2) + 2
    with pytest.raises(DomainError):
        enumerate_exact(2, 3, "zagreb", method="sideways")


def test_enumerate_rejects_irrational_randic():
    with pytest.raises(DomainError, match="alpha = 1"):
        enumerate_exact(2, 2, "randic:-0.5")


def test_multinomial_coefficients_sum_to_histories():
    for m in (2, 3, 4):
        for n in range(0, 7):
            assert sum(multinomial_coefficient(c) for c in compositions(n, m)) == m**n


def test_bfs_distances_basics():
    d = bfs_distances(to_adjacency(new_spine(3)))
    assert d[0][1] == 1 and d[1][2] == 1 and d[0][2] == 2
    assert all(d[i][i] == 0 for i in range(3))

    g = to_adjacency(Caterpillar(2, (1, 0)))
    d = bfs_distances(g)
    assert d[2][1] == 2  # leaf to far spine node
    assert d == [list(row) for row in zip(*d)]  # symmetric


def test_bfs_disconnected_error():
    g = AdjacencyGraph(node_count=3, adjacency=((1,), (0,), ()), labels=("a", "b", "c"))
    with pytest.raises(DomainError, match="disconnected"):
        bfs_distances(g)


def test_eccentricity_structure():
    """Max distance = (m-1) + [leaf at end 0] + [leaf at end m-1]."""
    for m in (2, 3, 4):
        for n in range(0, 6):
            for counts in compositions(n, m):
                c = Caterpillar(m, counts)
                d = bfs_distances(to_adjacency(c))
                got = max(max(row) for row in d)
                want = (m - 1) + (counts[0] > 0) + (counts[-1] > 0)
                assert got == want


def test_wiener_bfs_hand_values():
    assert wiener_bfs(to_adjacency(new_spine(3))) == 4
    assert hyper_wiener_bfs(to_adjacency(new_spine(3))) == 10
    g = to_adjacency(Caterpillar(2, (1, 0)))
    assert wiener_bfs(g) == 4
    assert hyper_wiener_bfs(g) == 10


def test_one_step_successors():
    succ = one_step_successors(new_spine(2))
    assert {s.leaf_counts for s in succ} == {(1, 0), (0, 1)}

    c = new_spine(3)
    values = [zagreb(s) for s in one_step_successors(c)]
    assert values == [10, 12, 10]
    assert Fraction(sum(values), 3) == Fraction(32, 3)
    # successor increments follow 2 D_i + 2
    rng = RngSeed(44).generator()
    for _ in range(25):
        m = int(rng.integers(2, 12))
        n = int(rng.integers(0, 40))
        state = simulate(m, n, RngSeed(int(rng.integers(0, 2**32))))
        degs = spine_degrees(state)
        for i, s in enumerate(one_step_successors(state)):
            assert zagreb(s) == zagreb(state) + 2 * degs[i] + 2


def test_martingale_residual_exact_zero():
    assert martingale_residual(new_spine(3)) == 0
    assert martingale_residual(Caterpillar(2, (5, 1))) == 0
    rng = RngSeed(777).generator()
    for _ in range(100):
        m = int(rng.integers(2, 21))
        n = int(rng.integers(0, 101))
        c = simulate(m, n, RngSeed(int(rng.integers(0, 2**32))))
        assert martingale_residual(c) == 0


def test_supermartingale_gap_nonnegative():
    rng = RngSeed(778).generator()
    for _ in range(100):
        m = int(rng.integers(2, 21))
        n = int(rng.integers(0, 101))
        c = simulate(m, n, RngSeed(int(rng.integers(0, 2**32))))
        assert randic_supermartingale_gap(c) >= 0


def test_conditional_variance_scaling():
    """Empirical Var[Z_n]/n^2 within 10% of 2(m-1)/m^2 at m=10, n=1e4."""
    import numpy as np

    from catlab.experiments import ExperimentConfig, run_mc
    from catlab.indices import IndexSpec
    from catlab.theory import zagreb_clt_params

    m, n = 10, 10**4
    summary = run_mc(
        ExperimentConfig(
            m=m, n=n, replications=10**4, seed=606,
            indices=(IndexSpec("zagreb"),), sampler="direct",
        )
    )
    scaled_var = summary.stats["zagreb"].variance / n**2
    target = float(zagreb_clt_params(m).variance.value)
    assert abs(scaled_var - target) < 0.1 * target
