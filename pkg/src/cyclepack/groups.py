"""Automorphisms of strong cycle powers and cyclic-group orbits.

An automorphism permutes the d coordinates and then applies an affine map
x -> a*x + b (mod p), a in {-1,+1}, b in Z_p, independently in each
coordinate; for p > 3 these exhaust Aut(C_p^d), a group of order
(2p)^d * d!.  Search groups are cyclic subgroups given by one generator,
and the interesting generators in practice are pure translations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import permutations, product
from typing import List, Sequence, Tuple

from .torus import CycleParams, InstanceTooLargeError, Word

DEFAULT_ORBIT_GUARD = 10_000_000


@dataclass(frozen=True)
class GroupElement:
    """Coordinate permutation followed by per-coordinate affine value maps.

    perm maps source position j to target position perm[j]; signs and
    offsets are indexed by target position, so the image w of a word v has
    w[perm[j]] = signs[perm[j]] * v[j] + offsets[perm[j]]  (mod p).
    """

    perm: Tuple[int, ...]
    signs: Tuple[int, ...]
    offsets: Tuple[int, ...]
    p: int

    def __post_init__(self):
        d = len(self.perm)
        if sorted(self.perm) != list(range(d)):
            raise ValueError(f"perm {self.perm} is not a permutation of 0..{d - 1}")
        if len(self.signs) != d or any(s not in (-1, 1) for s in self.signs):
            raise ValueError("signs must be length-d with entries in {-1,+1}")
        if len(self.offsets) != d or any(not 0 <= b < self.p for b in self.offsets):
            raise ValueError(f"offsets must be length-d residues mod {self.p}")

    @property
    def d(self) -> int:
        return len(self.perm)

    @property
    def is_translation(self) -> bool:
        return self.perm == tuple(range(self.d)) and all(s == 1 for s in self.signs)

    def apply(self, word: Sequence[int]) -> Word:
        w = [0] * self.d
        for j, x in enumerate(word):
            i = self.perm[j]
            w[i] = (self.signs[i] * x + self.offsets[i]) % self.p
        return tuple(w)

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return compose(self, other)


def identity_element(params: CycleParams) -> GroupElement:
    d = params.d
    return GroupElement(tuple(range(d)), (1,) * d, (0,) * d, params.p)


def translation(offsets: Sequence[int], params: CycleParams) -> GroupElement:
    d = params.d
    offs = tuple(int(b) % params.p for b in offsets)
    if len(offs) != d:
        raise ValueError(f"offset vector length {len(offs)} != d={d}")
    return GroupElement(tuple(range(d)), (1,) * d, offs, params.p)


def compose(g: GroupElement, h: GroupElement) -> GroupElement:
    """Element acting as h first, then g: (g*h)(v) = g(h(v))."""
    if g.p != h.p or g.d != h.d:
        raise ValueError("elements act on different spaces")
    d = g.d
    perm = tuple(g.perm[h.perm[j]] for j in range(d))
    signs = [1] * d
    offsets = [0] * d
    for k in range(d):
        # position k in the g-image came from position perm_g^{-1}(k) in h's image
        m = _inv_at(g.perm, k)
        signs[k] = g.signs[k] * h.signs[m]
        offsets[k] = (g.signs[k] * h.offsets[m] + g.offsets[k]) % g.p
    return GroupElement(perm, tuple(signs), tuple(offsets), g.p)


def _inv_at(perm: Tuple[int, ...], k: int) -> int:
    for j, i in enumerate(perm):
        if i == k:
            return j
    raise ValueError("not a permutation")


def inverse(g: GroupElement) -> GroupElement:
    d = g.d
    perm = [0] * d
    signs = [1] * d
    offsets = [0] * d
    for j in range(d):
        i = g.perm[j]
        perm[i] = j
        signs[j] = g.signs[i]
        offsets[j] = (-g.signs[i] * g.offsets[i]) % g.p
    return GroupElement(tuple(perm), tuple(signs), tuple(offsets), g.p)


def element_order(g: GroupElement, limit: int = 10 ** 7) -> int:
    """Least n >= 1 with g^n = identity.

    Pure translations reduce to lcm over coordinates of p / gcd(b, p);
    general elements are iterated, which is cheap because orders divide
    |Aut| and stay small for the d considered here.
    """
    if g.is_translation:
        n = 1
        for b in g.offsets:
            n = math.lcm(n, g.p // math.gcd(b, g.p))
        return n
    ident = GroupElement(tuple(range(g.d)), (1,) * g.d, (0,) * g.d, g.p)
    h = g
    n = 1
    while h != ident:
        h = compose(g, h)
        n += 1
        if n > limit:
            raise RuntimeError("element order exceeds limit")
    return n


@dataclass(frozen=True)
class CyclicGroup:
    """A cyclic subgroup given by its generator, with all powers listed."""

    generator: GroupElement
    elements: Tuple[GroupElement, ...] = field(compare=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def params(self) -> CycleParams:
        return CycleParams(self.generator.p, self.generator.d)

    @property
    def is_translation_group(self) -> bool:
        return self.generator.is_translation


def cyclic_group(generator: GroupElement) -> CyclicGroup:
    n = element_order(generator)
    elems = []
    h = identity_element(CycleParams(generator.p, generator.d))
    for _ in range(n):
        elems.append(h)
        h = compose(generator, h)
    return CyclicGroup(generator, tuple(elems))


def trivial_group(params: CycleParams) -> CyclicGroup:
    return cyclic_group(identity_element(params))


@dataclass(frozen=True)
class Orbit:
    """One group orbit of codewords; weight is its cardinality."""

    members: Tuple[Word, ...]   # sorted
    weight: int

    @property
    def representative(self) -> Word:
        return self.members[0]


def orbit_of(group: CyclicGroup, word: Sequence[int], params: CycleParams) -> Orbit:
    w = params.check_word(word)
    members = sorted({g.apply(w) for g in group.elements})
    return Orbit(tuple(members), len(members))


def all_orbits(group: CyclicGroup, params: CycleParams,
               guard: int = DEFAULT_ORBIT_GUARD) -> List[Orbit]:
    """Orbit partition of the whole codeword space.

    Walks the cycles of the generator's permutation action on word indices;
    orbits come out sorted by their smallest member index, so the output is
    deterministic.
    """
    n = params.size
    if n > guard:
        raise InstanceTooLargeError(f"p^d = {n} exceeds orbit guard {guard}")
    gen_map = _generator_index_map(group.generator, params)
    seen = bytearray(n)
    orbits = []
    for start in range(n):
        if seen[start]:
            continue
        idxs = [start]
        seen[start] = 1
        j = gen_map[start]
        while j != start:
            seen[j] = 1
            idxs.append(j)
            j = gen_map[j]
        members = sorted(params.decode(i) for i in idxs)
        orbits.append(Orbit(tuple(members), len(members)))
    return orbits


def _generator_index_map(gen: GroupElement, params: CycleParams):
    """Index array A with A[i] = encode(gen(decode(i)))."""
    import numpy as np

    p, d, n = params.p, params.d, params.size
    idx = np.arange(n, dtype=np.int64)
    out = np.zeros(n, dtype=np.int64)
    for j in range(d):
        digit = (idx // (p ** j)) % p
        i = gen.perm[j]
        out += ((gen.signs[i] * digit + gen.offsets[i]) % p) * (p ** i)
    return out


def enumerate_generators(params: CycleParams, mode: str = "translations",
                         guard: int = 200_000) -> List[GroupElement]:
    """Candidate cyclic-group generators, one per equivalence class.

    Two generators are merged when one maps to the other by taking a power
    g^k with gcd(k, order) = 1, by conjugation with a coordinate
    permutation, or by conjugation with per-coordinate negation; the class
    representative is the one with the lexicographically least offset
    vector.  The zero vector (trivial group) always appears first.

    mode "translations" enumerates pure-offset generators, which is what
    the shipped certificates use; mode "full" additionally enumerates
    generators with nontrivial coordinate permutations and signs, reduced
    by the same relations.
    """
    if mode not in ("translations", "full"):
        raise ValueError(f"unknown mode {mode!r}")
    p, d = params.p, params.d
    if params.size > guard:
        raise InstanceTooLargeError(
            f"generator enumeration over {params.size} offset vectors exceeds guard {guard}")
    reps = {}
    for offs in product(range(p), repeat=d):
        key = _canonical_translation(offs, p)
        if key not in reps:
            reps[key] = None
    out = [translation(key, params) for key in sorted(reps)]
    if mode == "translations":
        return out
    full_guard = (2 * p) ** d * math.factorial(d)
    if full_guard > guard:
        raise InstanceTooLargeError(
            f"full enumeration over {full_guard} elements exceeds guard {guard}")
    seen = set()
    conjugators = _signed_permutations(params)
    for perm in permutations(range(d)):
        for signs in product((-1, 1), repeat=d):
            for offs in product(range(p), repeat=d):
                g = GroupElement(perm, signs, offs, p)
                seen.add(_canonical_element(g, conjugators))
    elems = [GroupElement(*key, p) for key in seen]
    return sorted(elems, key=lambda e: (not e.is_translation, e.perm, e.signs, e.offsets))


def _canonical_translation(offsets: Tuple[int, ...], p: int) -> Tuple[int, ...]:
    """Lex-least offset vector over powers, coordinate permutations and negation."""
    order = 1
    for b in offsets:
        order = math.lcm(order, p // math.gcd(b, p))
    best = None
    for k in range(1, order + 1):
        if math.gcd(k, order) != 1:
            continue
        scaled = [(k * b) % p for b in offsets]
        folded = sorted(min(b, p - b) for b in scaled)
        cand = tuple(folded)
        if best is None or cand < best:
            best = cand
    return best if best is not None else tuple(offsets)


def _signed_permutations(params: CycleParams) -> List[GroupElement]:
    p, d = params.p, params.d
    out = []
    for perm in permutations(range(d)):
        for signs in product((-1, 1), repeat=d):
            out.append(GroupElement(perm, signs, (0,) * d, p))
    return out


def _canonical_element(g: GroupElement, conjugators: List[GroupElement]) -> tuple:
    n = element_order(g)
    best = None
    powers = []
    h = g
    for k in range(1, n + 1):
        if math.gcd(k, n) == 1:
            powers.append(h)
        h = compose(g, h)
    for c in conjugators:
        cinv = inverse(c)
        for pw in powers:
            e = compose(compose(c, pw), cinv)
            key = (e.perm, e.signs, e.offsets)
            if best is None or key < best:
                best = key
    return best


def mulclose(generators: Sequence[GroupElement], limit: int = 10 ** 6) -> List[GroupElement]:
    """Closure of a generating set under composition (test utility)."""
    seen = {(g.perm, g.signs, g.offsets): g for g in generators}
    frontier = list(generators)
    while frontier:
        nxt = []
        for a in frontier:
            for b in list(seen.values()):
                for e in (compose(a, b), compose(b, a)):
                    key = (e.perm, e.signs, e.offsets)
                    if key not in seen:
                        seen[key] = e
                        nxt.append(e)
                        if len(seen) > limit:
                            raise RuntimeError("closure exceeds limit")
        frontier = nxt
    return list(seen.values())
