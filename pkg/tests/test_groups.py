import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cyclepack.groups import (GroupElement, all_orbits, compose, cyclic_group,
                              element_order, enumerate_generators,
                              identity_element, inverse, mulclose, orbit_of,
                              translation, trivial_group)
from cyclepack.torus import CycleParams


def random_element(rng, params):
    d, p = params.d, params.p
    perm = list(range(d))
    rng.shuffle(perm)
    signs = tuple(rng.choice((-1, 1)) for _ in range(d))
    offsets = tuple(rng.randrange(p) for _ in range(d))
    return GroupElement(tuple(perm), signs, offsets, p)


def test_apply_examples():
    p7 = CycleParams(7, 5)
    ident = identity_element(p7)
    assert ident.apply((0, 5, 6, 6, 0)) == (0, 5, 6, 6, 0)
    g = translation((0, 1, 1, 5, 1), p7)
    assert g.apply((0, 5, 6, 6, 0)) == (0, 6, 0, 4, 1)
    neg = GroupElement((0,), (-1,), (0,), 5)
    assert neg.apply((2,)) == (3,)


def test_compose_examples():
    p7 = CycleParams(7, 5)
    g = translation((0, 1, 1, 5, 1), p7)
    ident = identity_element(p7)
    assert compose(g, ident) == g
    assert compose(g, inverse(g)) == ident
    assert compose(g, g).offsets == (0, 2, 2, 3, 2)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2 ** 31), st.sampled_from([(5, 2), (7, 3), (5, 4)]))
def test_apply_respects_composition(seed, pd):
    p, d = pd
    params = CycleParams(p, d)
    rng = random.Random(seed)
    g = random_element(rng, params)
    h = random_element(rng, params)
    v = tuple(rng.randrange(p) for _ in range(d))
    assert compose(g, h).apply(v) == g.apply(h.apply(v))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2 ** 31))
def test_inverse_really_inverts(seed):
    params = CycleParams(7, 3)
    rng = random.Random(seed)
    g = random_element(rng, params)
    v = tuple(rng.randrange(7) for _ in range(3))
    assert inverse(g).apply(g.apply(v)) == v


def test_element_order_examples():
    p7 = CycleParams(7, 5)
    assert element_order(identity_element(p7)) == 1
    assert element_order(translation((0, 1, 1, 5, 1), p7)) == 7
    assert element_order(translation((5, 0, 10), CycleParams(15, 3))) == 3
    assert element_order(translation((1, 5, 8, 9), CycleParams(11, 4))) == 11
    assert element_order(translation((0, 1, 0, 2), CycleParams(13, 4))) == 13


def test_element_order_of_sign_flip():
    flip = GroupElement((0, 1), (-1, 1), (0, 0), 5)
    assert element_order(flip) == 2
    swap = GroupElement((1, 0), (1, 1), (0, 0), 5)
    assert element_order(swap) == 2


def test_orbit_examples():
    p7 = CycleParams(7, 5)
    triv = trivial_group(p7)
    orb = orbit_of(triv, (1, 2, 3, 4, 5), p7)
    assert orb.members == ((1, 2, 3, 4, 5),) and orb.weight == 1

    g = cyclic_group(translation((0, 1, 1, 5, 1), p7))
    assert orbit_of(g, (0, 5, 6, 6, 0), p7).weight == 7

    p13 = CycleParams(13, 4)
    g13 = cyclic_group(translation((0, 1, 0, 2), p13))
    assert orbit_of(g13, (0, 0, 0, 0), p13).weight == 13


def test_orbit_weight_divides_group_order():
    params = CycleParams(9, 2)
    g = cyclic_group(translation((3, 6), params))
    for v in [(0, 0), (1, 5), (4, 4)]:
        orb = orbit_of(g, v, params)
        assert g.order % orb.weight == 0


def test_all_orbits_partition():
    params = CycleParams(5, 2)
    triv = trivial_group(params)
    orbits = all_orbits(triv, params)
    assert len(orbits) == 25 and all(o.weight == 1 for o in orbits)

    p15 = CycleParams(15, 3)
    orbits = all_orbits(cyclic_group(translation((5, 0, 10), p15)), p15)
    assert len(orbits) == 15 ** 3 // 3
    assert all(o.weight == 3 for o in orbits)
    assert sum(o.weight for o in orbits) == 15 ** 3

    p7 = CycleParams(7, 5)
    orbits = all_orbits(cyclic_group(translation((0, 1, 1, 5, 1), p7)), p7)
    assert len(orbits) == 7 ** 5 // 7
    assert all(o.weight == 7 for o in orbits)


def test_all_orbits_members_disjoint():
    params = CycleParams(7, 2)
    g = cyclic_group(translation((2, 3), params))
    orbits = all_orbits(g, params)
    seen = set()
    for o in orbits:
        for w in o.members:
            assert w not in seen
            seen.add(w)
    assert len(seen) == params.size


def test_enumerate_generators_translations_small():
    params = CycleParams(5, 1)
    gens = enumerate_generators(params, mode="translations")
    assert [g.offsets for g in gens] == [(0,), (1,)]


def test_enumerate_generators_first_coordinate_normalised():
    params = CycleParams(7, 2)
    gens = enumerate_generators(params, mode="translations")
    assert all(g.offsets[0] in (0, 1) for g in gens)
    assert (0, 0) in [g.offsets for g in gens]


def test_enumerate_generators_cover_all_vectors():
    # every offset vector must be equivalent to exactly one listed class rep
    params = CycleParams(5, 2)
    gens = enumerate_generators(params, mode="translations")
    reps = {g.offsets for g in gens}
    from cyclepack.groups import _canonical_translation

    for a in range(5):
        for b in range(5):
            assert _canonical_translation((a, b), 5) in reps


def test_equivalent_generators_equal_weight_multisets():
    params = CycleParams(9, 2)
    rng = random.Random(5)
    for _ in range(6):
        offs = tuple(rng.randrange(9) for _ in range(2))
        base = sorted(o.weight for o in all_orbits(cyclic_group(translation(offs, params)), params))
        # negate one coordinate and swap coordinates: conjugate generators
        for variant in [tuple((-x) % 9 for x in offs), offs[::-1]]:
            v = sorted(o.weight for o in all_orbits(cyclic_group(translation(variant, params)), params))
            assert v == base


def test_full_mode_includes_non_translations():
    params = CycleParams(5, 2)
    gens = enumerate_generators(params, mode="full", guard=300_000)
    assert any(not g.is_translation for g in gens)
    translations = [g for g in gens if g.is_translation]
    assert {g.offsets for g in translations} == \
        {g.offsets for g in enumerate_generators(params, mode="translations")}


@pytest.mark.parametrize("p,d", [(5, 1), (7, 1), (5, 2), (7, 2)])
def test_automorphism_group_order(p, d):
    # closure of per-coordinate rotation/reflection plus coordinate swaps
    params = CycleParams(p, d)
    gens = []
    for i in range(d):
        offs = [0] * d
        offs[i] = 1
        gens.append(translation(tuple(offs), params))
        signs = [1] * d
        signs[i] = -1
        gens.append(GroupElement(tuple(range(d)), tuple(signs), (0,) * d, p))
    if d >= 2:
        perm = list(range(d))
        perm[0], perm[1] = perm[1], perm[0]
        gens.append(GroupElement(tuple(perm), (1,) * d, (0,) * d, p))
    group = mulclose(gens)
    assert len(group) == (2 * p) ** d * math.factorial(d)
