"""Torus model of strong powers of cycles.

Vertices of the d-th strong power of the cycle C_p are length-d words over
Z_p.  Two distinct words are adjacent exactly when every coordinate pair is
at circular distance at most 1, which makes an independent set the same
thing as a packing of side-2 hypercubes in the discrete d-dimensional torus
of width p.  Everything here is a pure function on immutable data.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Optional, Sequence, Tuple

import numpy as np

Word = Tuple[int, ...]

DEFAULT_ENUMERATION_GUARD = 10_000


class InstanceTooLargeError(Exception):
    """Raised when p**d exceeds an enumeration guard."""


@dataclass(frozen=True)
class CycleParams:
    """Cycle length p and power d. p >= 4 so the wreath-product picture holds."""

    p: int
    d: int

    def __post_init__(self):
        if self.p < 4:
            raise ValueError(f"p must be >= 4, got {self.p}")
        if self.d < 1:
            raise ValueError(f"d must be >= 1, got {self.d}")

    @property
    def size(self) -> int:
        return self.p ** self.d

    def check_word(self, word: Sequence[int]) -> Word:
        """Validate a codeword against these parameters and return it as a tuple."""
        w = tuple(int(x) for x in word)
        if len(w) != self.d:
            raise ValueError(f"word {w} has length {len(w)}, expected d={self.d}")
        for x in w:
            if not 0 <= x < self.p:
                raise ValueError(f"residue {x} out of range [0, {self.p})")
        return w

    def encode(self, word: Sequence[int]) -> int:
        """Mixed-radix index of a word, coordinate 0 least significant."""
        i = 0
        for x in reversed(word):
            i = i * self.p + x
        return i

    def decode(self, index: int) -> Word:
        w = []
        for _ in range(self.d):
            w.append(index % self.p)
            index //= self.p
        return tuple(w)

    def all_words(self) -> Iterable[Word]:
        for i in range(self.size):
            yield self.decode(i)


def circ_dist(x: int, y: int, p: int) -> int:
    """Circular distance min(|x-y|, p-|x-y|) on Z_p."""
    if not (0 <= x < p and 0 <= y < p):
        raise ValueError(f"residues {x},{y} out of range [0, {p})")
    a = abs(x - y)
    return min(a, p - a)


def is_adjacent(v: Sequence[int], w: Sequence[int], params: CycleParams) -> bool:
    """Strong-product adjacency: every coordinate at circular distance <= 1.

    Adjacency is defined on distinct vertices only; v == w is an error so
    that graph construction cannot silently create self loops.
    """
    v = params.check_word(v)
    w = params.check_word(w)
    if v == w:
        raise ValueError("adjacency is undefined for identical words")
    p = params.p
    for a, b in zip(v, w):
        diff = abs(a - b)
        if min(diff, p - diff) > 1:
            return False
    return True


def is_independent_set(words: Iterable[Sequence[int]], params: CycleParams) -> bool:
    """True iff no two distinct words of the set are adjacent.

    Plain pairwise evaluation of the distance criterion, vectorised in
    blocks; deliberately independent of any group-orbit shortcut so it can
    verify expansions produced elsewhere.
    """
    arr = _as_array(words, params)
    n = len(arr)
    if n != len({tuple(r) for r in arr.tolist()}):
        raise ValueError("duplicate words in set")
    if n < 2:
        return True
    p = params.p
    block = max(1, 2_000_000 // max(1, n * params.d))
    for lo in range(0, n, block):
        chunk = arr[lo:lo + block]
        diff = np.abs(chunk[:, None, :] - arr[None, :, :])
        cd = np.minimum(diff, p - diff)
        close = (cd <= 1).all(axis=2)
        for r in range(len(chunk)):
            close[r, lo + r] = False
        if close.any():
            return False
    return True


def min_pairwise_linf(words: Iterable[Sequence[int]], params: CycleParams) -> int:
    """Smallest over distinct pairs of the max-coordinate circular distance."""
    arr = _as_array(words, params)
    n = len(arr)
    if n < 2:
        raise ValueError("need at least two words")
    p = params.p
    best = params.d * (p // 2) + 1
    diff = np.abs(arr[:, None, :] - arr[None, :, :])
    cd = np.minimum(diff, p - diff)
    linf = cd.max(axis=2)
    linf[np.diag_indices(n)] = best
    return int(linf.min())


def _as_array(words: Iterable[Sequence[int]], params: CycleParams) -> np.ndarray:
    rows = [params.check_word(w) for w in words]
    if not rows:
        return np.zeros((0, params.d), dtype=np.int64)
    return np.asarray(rows, dtype=np.int64)


def neighbor_deltas(d: int) -> list:
    """Nonzero offset vectors in {-1,0,1}^d; closed-neighbourhood stencil."""
    return [dl for dl in product((-1, 0, 1), repeat=d) if any(dl)]


def brute_force_alpha(params: CycleParams, guard: int = DEFAULT_ENUMERATION_GUARD,
                      budget=None) -> int:
    """Exact independence number of C_p^d for small instances.

    Delegates to the exact solver on the full unweighted conflict graph,
    symmetry-reduced; guarded by p**d <= guard.
    """
    if params.size > guard:
        raise InstanceTooLargeError(
            f"p^d = {params.size} exceeds guard {guard}; pass a larger guard to override")
    from . import solver as _solver
    value, optimal, _nodes = alpha_exact(params, budget=budget)
    if not optimal:
        raise _solver.BudgetExhaustedError(
            f"budget exhausted before alpha({params.p},{params.d}) was proved")
    return value


def _signed_perm_maps(params: CycleParams):
    """The stabilizer of the all-zero word: signed coordinate permutations,
    each returned as a callable on words."""
    from itertools import permutations as _perms

    p, d = params.p, params.d
    maps = []
    for perm in _perms(range(d)):
        for signs in product((-1, 1), repeat=d):
            def act(word, perm=perm, signs=signs):
                img = [0] * d
                for j, x in enumerate(word):
                    img[perm[j]] = (signs[perm[j]] * x) % p
                return tuple(img)
            maps.append(act)
    return maps


def _orbits_under(params: CycleParams, maps, vertices) -> list:
    vset = set(int(v) for v in vertices)
    orbits = []
    seen = set()
    for v in sorted(vset):
        if v in seen:
            continue
        word = params.decode(v)
        orb = {params.encode(m(word)) for m in maps}
        orb &= vset
        orbits.append(sorted(orb))
        seen |= orb
    return orbits


def stabilizer_orbits_of_origin(params: CycleParams, vertices) -> list:
    """Orbits on vertex ids under the signed coordinate permutations, the
    stabilizer of the all-zero word inside the automorphism group."""
    return _orbits_under(params, _signed_perm_maps(params), vertices)


def _symmetry_subproblems(graph, params: CycleParams):
    """Isomorph-reduced branching plan for the vertex-transitive instance.

    Level 1 fixes the origin and branches over the orbits of its stabilizer
    H; branch j additionally excludes orbits 1..j-1, which is sound because
    an optimum meeting orbit j first can be mapped by H onto the chosen
    representative without touching the excluded orbits.  Where the joint
    stabilizer of (origin, representative) is still large, the same step is
    applied once more.  Every leaf is a plain restricted solve; the leaves
    are mutually independent.
    """
    v0 = 0
    maps1 = _signed_perm_maps(params)
    cand0 = [u for u in range(graph.n) if u != v0 and not (graph.adj[v0] >> u) & 1]
    orbits1 = _orbits_under(params, maps1, cand0)
    subproblems = []
    excluded1: set = set()
    for orb1 in orbits1:
        rep1 = orb1[0]
        rep1_word = params.decode(rep1)
        cand1 = [u for u in cand0
                 if u not in excluded1 and u != rep1
                 and not (graph.adj[rep1] >> u) & 1]
        maps2 = [m for m in maps1 if m(rep1_word) == rep1_word]
        if len(maps2) >= 4 and len(cand1) > 40:
            orbits2 = _orbits_under(params, maps2, cand1)
            excluded2: set = set()
            for orb2 in orbits2:
                rep2 = orb2[0]
                cand2 = [u for u in cand1
                         if u not in excluded2 and u != rep2
                         and not (graph.adj[rep2] >> u) & 1]
                subproblems.append(([v0, rep1, rep2], cand2))
                excluded2 |= set(orb2)
            subproblems.append(([v0, rep1], []))   # branch with no further vertex
        else:
            subproblems.append(([v0, rep1], cand1))
        excluded1 |= set(orb1)
    subproblems.append(([v0], []))
    return subproblems


def alpha_exact(params: CycleParams, budget=None, jobs: Optional[int] = None):
    """alpha(C_p^d) by symmetry-reduced branch and bound.

    Builds the isomorph-reduced subproblem plan and solves the restricted
    instances exactly, in parallel when jobs > 1 (the compiled kernel
    releases the GIL).  Returns (alpha, optimal, nodes).
    """
    import os as _os
    import time as _time
    from concurrent.futures import ThreadPoolExecutor

    from . import solver as _solver

    t0 = _time.monotonic()
    graph = full_conflict_graph(params)
    subproblems = _symmetry_subproblems(graph, params)
    if jobs is None:
        jobs = _os.cpu_count() or 1
    state = {"nodes": 0, "stop": False}

    state["best"] = graph.weights[0]

    def solve_one(item):
        fixed, cand = item
        if state["stop"]:
            return None
        sub_budget = None
        if budget is not None:
            remaining_nodes = None
            if budget.node_limit is not None:
                remaining_nodes = budget.node_limit - state["nodes"]
                if remaining_nodes <= 0:
                    state["stop"] = True
                    return None
            remaining_time = None
            if budget.time_limit is not None:
                remaining_time = budget.time_limit - (_time.monotonic() - t0)
                if remaining_time <= 0:
                    state["stop"] = True
                    return None
            sub_budget = _solver.Budget(node_limit=remaining_nodes,
                                        time_limit=remaining_time)
        # leaves only matter when they beat the best found so far, so the
        # running maximum is handed down as a pruning floor
        res = _solver.max_weight_is_restricted(graph, fixed, cand,
                                               budget=sub_budget,
                                               prune_floor=state["best"])
        state["nodes"] += res.nodes
        if not res.optimal:
            state["stop"] = True
            return None
        if res.solution.weight > state["best"]:
            state["best"] = res.solution.weight
        return res.solution.weight

    if jobs > 1 and len(subproblems) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            weights = list(pool.map(solve_one, subproblems))
    else:
        weights = [solve_one(item) for item in subproblems]
    optimal = not state["stop"] and all(w is not None for w in weights)
    best = max([w for w in weights if w is not None] + [state["best"]],
               default=graph.weights[0])
    return best, optimal, state["nodes"]


def full_conflict_graph(params: CycleParams):
    """Unweighted conflict graph on all p^d words (the graph C_p^d itself).

    Vertices are indexed by CycleParams.encode.  Capacity hints derived from
    slab packing caps are attached so the exact solver can prune; they are
    computed recursively from smaller powers.
    """
    from .solver import WeightedGraph

    p, d, n = params.p, params.d, params.size
    idx = np.arange(n)
    digits = [(idx // (p ** a)) % p for a in range(d)]
    adj = [0] * n
    for dl in neighbor_deltas(d):
        nb = np.zeros(n, dtype=np.int64)
        for a in range(d):
            nb += ((digits[a] + dl[a]) % p) * (p ** a)
        for i in range(n):
            adj[i] |= 1 << int(nb[i])
    graph = WeightedGraph(n, [1] * n, adj)
    graph.capacity_families = _tube_capacity_families(params)
    graph.chain_families = _layer_chain_families(params)
    return graph


def _layer_chain_families(params: CycleParams):
    """One cyclic chain per axis: layer l holds the words with coordinate
    value l, and two consecutive layers hold at most alpha(C_p^(d-1))
    cubes between them (an independent set restricted to the 2-layer slab
    projects injectively to an independent set one dimension down)."""
    p, d, n = params.p, params.d, params.size
    if d < 2 or n > 200_000:
        return []
    cap_pair = _alpha_cached(p, d - 1)
    idx = np.arange(n)
    chains = []
    for a in range(d):
        layers = ((idx // (p ** a)) % p).astype(int).tolist()
        chains.append((layers, [cap_pair] * p))
    return chains


def _tube_capacity_families(params: CycleParams):
    """2x2 window along two axes, full length along the rest: such a tube
    holds at most alpha(C_p^(d-2)) cubes; every vertex lies in 4 tubes per
    axis pair."""
    p, d, n = params.p, params.d, params.size
    if d < 3 or n > 200_000:
        return []
    cap_tube = _alpha_cached(p, d - 2)
    idx = np.arange(n)
    fams = []
    for a in range(d):
        for b in range(a + 1, d):
            va = (idx // (p ** a)) % p
            vb = (idx // (p ** b)) % p
            groups = []
            for la in range(p):
                sa = (va == la) | (va == (la + 1) % p)
                for lb in range(p):
                    sel = sa & ((vb == lb) | (vb == (lb + 1) % p))
                    groups.append((_mask_from_bools(sel), cap_tube))
            fams.append((4, groups))
    return fams


_ALPHA_CACHE = {}


def _alpha_cached(p: int, d: int) -> int:
    """alpha(C_p^d) for hint construction.

    Only the elementary d == 1 value floor(p/2) enters as a closed form;
    higher powers are solved recursively so the caps rest on this package's
    own exact searches.
    """
    if d <= 0:
        return 1
    if d == 1:
        return p // 2
    key = (p, d)
    if key not in _ALPHA_CACHE:
        _ALPHA_CACHE[key] = brute_force_alpha(CycleParams(p, d), guard=10 ** 6)
    return _ALPHA_CACHE[key]


def _mask_from_bools(sel: np.ndarray) -> int:
    mask = 0
    for i in np.flatnonzero(sel):
        mask |= 1 << int(i)
    return mask
