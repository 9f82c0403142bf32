import itertools

import pytest

from cyclepack.torus import (CycleParams, InstanceTooLargeError, brute_force_alpha,
                             circ_dist, is_adjacent, is_independent_set,
                             min_pairwise_linf)


def test_circ_dist_examples():
    assert circ_dist(0, 0, 7) == 0
    assert circ_dist(0, 6, 7) == 1
    assert circ_dist(2, 9, 13) == 6


@pytest.mark.parametrize("p", [4, 5, 7, 9, 12, 31])
def test_circ_dist_is_a_metric(p):
    for x in range(p):
        for y in range(p):
            d = circ_dist(x, y, p)
            assert 0 <= d <= p // 2
            assert d == circ_dist(y, x, p)
            assert (d == 0) == (x == y)
    for x, y, z in itertools.product(range(p), repeat=3):
        assert circ_dist(x, z, p) <= circ_dist(x, y, p) + circ_dist(y, z, p)


def test_circ_dist_rejects_out_of_range():
    with pytest.raises(ValueError):
        circ_dist(0, 7, 7)


def test_adjacency_examples():
    p5 = CycleParams(5, 2)
    assert is_adjacent((0, 0), (1, 4), p5)
    assert not is_adjacent((0, 0), (2, 0), p5)
    assert is_adjacent((0, 0, 0), (6, 1, 0), CycleParams(7, 3))


def test_adjacency_symmetric():
    params = CycleParams(7, 3)
    words = list(itertools.product(range(7), repeat=3))[:60]
    for v, w in itertools.combinations(words, 2):
        assert is_adjacent(v, w, params) == is_adjacent(w, v, params)


def test_adjacency_rejects_equal_words():
    with pytest.raises(ValueError):
        is_adjacent((1, 2), (1, 2), CycleParams(5, 2))


def test_figure_packing_is_independent(p5d2):
    # the five-square torus packing with symmetry (a,b) -> (a+2, b+1)
    words = [((2 * k) % 5, k % 5) for k in range(5)]
    assert is_independent_set(words, p5d2)
    assert min_pairwise_linf(words, p5d2) >= 2


def test_adjacent_pair_is_not_independent(p5d2):
    assert not is_independent_set([(0, 0), (1, 1)], p5d2)


def test_empty_and_singleton_sets_are_independent(p5d2):
    assert is_independent_set([], p5d2)
    assert is_independent_set([(3, 4)], p5d2)


def test_duplicate_words_rejected(p5d2):
    with pytest.raises(ValueError):
        is_independent_set([(0, 0), (0, 0)], p5d2)


def test_params_validation():
    with pytest.raises(ValueError):
        CycleParams(3, 2)
    with pytest.raises(ValueError):
        CycleParams(5, 0)
    params = CycleParams(5, 2)
    with pytest.raises(ValueError):
        params.check_word((0, 5))
    with pytest.raises(ValueError):
        params.check_word((0, 1, 2))


def test_encode_decode_roundtrip():
    params = CycleParams(7, 3)
    for i in range(params.size):
        assert params.encode(params.decode(i)) == i
    assert params.decode(params.encode((3, 0, 6))) == (3, 0, 6)


@pytest.mark.parametrize("p,d,expected", [(5, 1, 2), (5, 2, 5), (7, 2, 10)])
def test_brute_force_alpha_examples(p, d, expected):
    assert brute_force_alpha(CycleParams(p, d)) == expected


@pytest.mark.parametrize("p", [4, 5, 6, 7, 9])
def test_brute_force_alpha_closed_forms(p):
    # floor(p/2) in one dimension for every p; the floor((p^2-p)/4) form is
    # an odd-cycle fact, even widths pack perfectly into (p/2)^2 squares
    assert brute_force_alpha(CycleParams(p, 1)) == p // 2
    if p % 2 == 1:
        assert brute_force_alpha(CycleParams(p, 2)) == (p * p - p) // 4
    else:
        assert brute_force_alpha(CycleParams(p, 2)) == (p // 2) ** 2


def test_brute_force_alpha_guard():
    with pytest.raises(InstanceTooLargeError):
        brute_force_alpha(CycleParams(11, 5))


def test_alpha_exact_small_instances():
    from cyclepack.torus import alpha_exact

    for (p, d, want) in [(5, 2, 5), (7, 2, 10), (4, 3, 8), (5, 3, 10)]:
        value, optimal, nodes = alpha_exact(CycleParams(p, d))
        assert optimal and value == want, (p, d, value)


def test_alpha_exact_budget_abort():
    from cyclepack.solver import Budget
    from cyclepack.torus import alpha_exact

    value, optimal, nodes = alpha_exact(CycleParams(5, 3),
                                        budget=Budget(node_limit=10))
    assert not optimal
    assert value >= 1


def test_symmetry_subproblem_plan_is_sound_partition():
    # level-1 orbits must partition the origin's non-neighbours
    from cyclepack.torus import full_conflict_graph, stabilizer_orbits_of_origin

    params = CycleParams(7, 2)
    g = full_conflict_graph(params)
    cand = [u for u in range(g.n) if u != 0 and not (g.adj[0] >> u) & 1]
    orbits = stabilizer_orbits_of_origin(params, cand)
    flat = [v for orb in orbits for v in orb]
    assert sorted(flat) == sorted(cand)
