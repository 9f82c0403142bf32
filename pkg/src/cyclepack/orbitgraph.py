"""Weighted conflict graphs on admissible orbits.

Prescribing a cyclic group partitions the codewords into orbits.  An orbit
is admissible when it is itself an independent set; two admissible orbits
conflict when some pair of their codewords is adjacent.  A conflict-free
set of orbits therefore expands to an independent set whose size is the sum
of the orbit weights, which turns the search into a maximum weight
independent set instance on the conflict graph.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .groups import CyclicGroup, Orbit, all_orbits, trivial_group
from .torus import CycleParams, InstanceTooLargeError, Word, circ_dist, is_adjacent

DEFAULT_BUILD_GUARD = 400_000


def is_admissible(orbit: Orbit, params: CycleParams) -> bool:
    """True iff the orbit's members form an independent set on their own."""
    members = orbit.members
    if len(members) == 1:
        return True
    for i, v in enumerate(members):
        for w in members[i + 1:]:
            if is_adjacent(v, w, params):
                return False
    return True


def orbits_conflict(o1: Orbit, o2: Orbit, params: CycleParams,
                    use_shortcut: bool = True) -> bool:
    """Some codeword of o1 is adjacent to some codeword of o2.

    Because every group element is an automorphism, it is enough to test a
    single fixed member of o1 against all of o2; the naive double loop is
    kept for cross-checking.
    """
    if o1 == o2:
        raise ValueError("conflict is defined on distinct orbits")
    if use_shortcut:
        v = o1.members[0]
        return any(w != v and is_adjacent(v, w, params) for w in o2.members)
    for v in o1.members:
        for w in o2.members:
            if v != w and is_adjacent(v, w, params):
                return True
    return False


def orbit_distance(o1: Orbit, o2: Orbit, params: CycleParams,
                   use_shortcut: bool = True) -> int:
    """Heuristic distance: min over codeword pairs of the summed circular
    coordinate distances.  Invariant under the group action, so one member
    of o1 against all of o2 suffices."""
    p = params.p

    def l1(v: Word, w: Word) -> int:
        return sum(circ_dist(a, b, p) for a, b in zip(v, w))

    if use_shortcut:
        v = o1.members[0]
        return min(l1(v, w) for w in o2.members)
    return min(l1(v, w) for v in o1.members for w in o2.members)


@dataclass
class OrbitGraph:
    """The MWIS instance: admissible orbits with conflict adjacency bitmasks."""

    params: CycleParams
    group: CyclicGroup
    orbits: List[Orbit]
    weights: List[int]
    adj: List[int]                      # adj[i] = bitmask of conflicting vertices
    inadmissible_count: int
    _vertex_by_word: Dict[Word, int] = field(default_factory=dict, repr=False)

    @property
    def n(self) -> int:
        return len(self.orbits)

    @property
    def edge_count(self) -> int:
        return sum(m.bit_count() for m in self.adj) // 2

    def total_weight(self) -> int:
        return sum(self.weights)

    def vertex_of_word(self, word: Sequence[int]) -> Optional[int]:
        """Vertex id of the admissible orbit containing the word, else None."""
        w = self.params.check_word(word)
        return self._vertex_by_word.get(w)

    def expand(self, vertices: Sequence[int]) -> List[Word]:
        """Union of orbit members over the chosen vertices, sorted."""
        words: List[Word] = []
        for v in vertices:
            words.extend(self.orbits[v].members)
        out = sorted(words)
        if len(out) != len(set(out)):
            raise ValueError("chosen orbits overlap; expansion is not a set")
        return out

    def orbit_distance(self, i: int, j: int) -> int:
        return orbit_distance(self.orbits[i], self.orbits[j], self.params)

    def is_conflict_free(self, vertices: Sequence[int]) -> bool:
        chosen = 0
        for v in vertices:
            if self.adj[v] & (1 << v):
                raise AssertionError("self conflict in graph")
            chosen |= 1 << v
        return all((self.adj[v] & chosen) == 0 for v in vertices)

    def to_weighted_graph(self):
        from .solver import WeightedGraph

        return WeightedGraph(self.n, list(self.weights), list(self.adj))

    def diagnostics(self) -> dict:
        return {
            "p": self.params.p,
            "d": self.params.d,
            "group_order": self.group.order,
            "generator": list(self.group.generator.offsets)
            if self.group.is_translation_group else None,
            "orbit_count": self.n + self.inadmissible_count,
            "admissible": self.n,
            "inadmissible": self.inadmissible_count,
            "edges": self.edge_count,
            "total_weight": self.total_weight(),
            "weight_multiset": _weight_histogram(self.weights),
        }


def _weight_histogram(weights: Sequence[int]) -> Dict[int, int]:
    out: Dict[int, int] = {}
    for w in weights:
        out[w] = out.get(w, 0) + 1
    return dict(sorted(out.items()))


def build_conflict_graph(group: CyclicGroup, params: CycleParams,
                         guard: int = DEFAULT_BUILD_GUARD) -> OrbitGraph:
    """Construct the admissible-orbit conflict graph.

    Works in index space: one pass per nonzero stencil offset in {-1,0,1}^d
    finds every adjacent word pair, so admissibility violations (a pair
    inside one orbit) and conflicts (a pair across orbits) fall out of the
    same sweep.
    """
    p, d, n = params.p, params.d, params.size
    if n > guard:
        raise InstanceTooLargeError(f"p^d = {n} exceeds build guard {guard}")
    orbits = all_orbits(group, params, guard=guard)
    orbit_id = np.empty(n, dtype=np.int64)
    for oi, orb in enumerate(orbits):
        for w in orb.members:
            orbit_id[params.encode(w)] = oi
    idx = np.arange(n, dtype=np.int64)
    digits = [(idx // (p ** a)) % p for a in range(d)]
    bad = np.zeros(len(orbits), dtype=bool)
    pair_chunks = []
    for delta in _half_deltas(d):
        nb = np.zeros(n, dtype=np.int64)
        for a in range(d):
            nb += ((digits[a] + delta[a]) % p) * (p ** a)
        o1 = orbit_id
        o2 = orbit_id[nb]
        same = o1 == o2
        if same.any():
            bad[np.unique(o1[same])] = True
        lo = np.minimum(o1, o2)
        hi = np.maximum(o1, o2)
        keys = np.unique(lo * len(orbits) + hi)
        pair_chunks.append(keys)
    all_keys = np.unique(np.concatenate(pair_chunks)) if pair_chunks else np.array([], dtype=np.int64)
    keep = [oi for oi in range(len(orbits)) if not bad[oi]]
    new_id = {oi: vi for vi, oi in enumerate(keep)}
    kept_orbits = [orbits[oi] for oi in keep]
    adj = [0] * len(keep)
    m = len(orbits)
    for key in all_keys.tolist():
        a, b = divmod(key, m)
        if a == b or bad[a] or bad[b]:
            continue
        va, vb = new_id[a], new_id[b]
        adj[va] |= 1 << vb
        adj[vb] |= 1 << va
    graph = OrbitGraph(
        params=params,
        group=group,
        orbits=kept_orbits,
        weights=[o.weight for o in kept_orbits],
        adj=adj,
        inadmissible_count=int(bad.sum()),
    )
    for vi, orb in enumerate(kept_orbits):
        for w in orb.members:
            graph._vertex_by_word[w] = vi
    return graph


def build_trivial_graph(params: CycleParams, guard: int = DEFAULT_BUILD_GUARD) -> OrbitGraph:
    return build_conflict_graph(trivial_group(params), params, guard=guard)


def _half_deltas(d: int) -> List[Tuple[int, ...]]:
    """One representative per {delta, -delta} pair of nonzero stencil offsets."""
    out = []
    for delta in product((-1, 0, 1), repeat=d):
        if not any(delta):
            continue
        first = next(x for x in delta if x)
        if first == 1:
            out.append(delta)
    return out


def export_edge_list(graph: OrbitGraph) -> str:
    """Plain text graph dump: header 'n m', one weight per line, then one
    0-based 'u v' edge per line.  Understood by the exact solver."""
    lines = [f"{graph.n} {graph.edge_count}"]
    lines.extend(str(w) for w in graph.weights)
    for u in range(graph.n):
        m = graph.adj[u] & ~((1 << (u + 1)) - 1)
        while m:
            lsb = m & -m
            lines.append(f"{u} {lsb.bit_length() - 1}")
            m ^= lsb
    return "\n".join(lines) + "\n"
