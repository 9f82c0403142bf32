"""Exact maximum weight independent set solving.

The workhorse is a branch and bound in the style of a weighted clique
search: vertices are taken in a fixed order and a table of prefix optima
prunes any branch whose candidates all sit below an already-settled prefix
(the "Russian doll" device).  Within a node the candidates are greedily
partitioned into cliques; the running sum of per-clique maxima is an
admissible bound and also fixes the branching order.  Callers that know
more about an instance can attach capacity families (vertex groups with
packing caps) which yield an extra bound and allowance propagation; the
torus instances use slab caps this way.

A compiled kernel (numba) and a pure Python implementation of the same
search are both provided; results are identical, only speed differs.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple


class BudgetExhaustedError(Exception):
    pass


class ContractError(Exception):
    """A caller violated a documented precondition."""


@dataclass(frozen=True)
class Budget:
    """Stop after this many search nodes or seconds, whichever comes first."""

    node_limit: Optional[int] = None
    time_limit: Optional[float] = None

    def __post_init__(self):
        if self.node_limit is not None and self.node_limit <= 0:
            raise ValueError("node_limit must be positive")
        if self.time_limit is not None and self.time_limit < 0:
            raise ValueError("time_limit must be nonnegative")


@dataclass(frozen=True)
class Solution:
    """An independent set and its weight."""

    vertices: Tuple[int, ...]
    weight: int


@dataclass(frozen=True)
class SolveResult:
    solution: Solution
    optimal: bool
    nodes: int
    elapsed: float


class WeightedGraph:
    """Vertex-weighted graph with bitmask adjacency.

    Two kinds of optional pruning hints can be attached; the solver treats
    both as admissible information and never requires them.

    capacity_families: list of (multiplicity, groups) entries where groups
    is a list of (vertex_mask, cap); every vertex lies in exactly
    `multiplicity` groups of the family and no independent set carries more
    than `cap` weight inside a group.

    chain_families: list of (layer_of_vertex, caps) entries describing a
    cyclic chain of k disjoint layers covering all vertices
    (layer_of_vertex[v] in 0..k-1) where no independent set carries more
    than caps[l] weight inside layers l and l+1 (mod k) together.  The
    bound solves the induced cyclic program exactly per node, which is
    strictly stronger than the paired-group form of the same caps.
    """

    def __init__(self, n: int, weights: Sequence[int], adj: Sequence[int]):
        if len(weights) != n or len(adj) != n:
            raise ValueError("weights/adjacency length mismatch")
        for v, w in enumerate(weights):
            if w < 1:
                raise ValueError(f"vertex {v} has nonpositive weight {w}")
        for v, m in enumerate(adj):
            if m >> n:
                raise ValueError(f"adjacency mask of vertex {v} exceeds vertex range")
            if (m >> v) & 1:
                raise ValueError(f"self loop at vertex {v}")
        self.n = n
        self.weights = [int(w) for w in weights]
        self.adj = [int(m) for m in adj]
        self.capacity_families: list = []
        self.chain_families: list = []
        for u in range(n):
            m = self.adj[u]
            while m:
                lsb = m & -m
                v = lsb.bit_length() - 1
                if not (self.adj[v] >> u) & 1:
                    raise ValueError(f"adjacency not symmetric at ({u},{v})")
                m ^= lsb

    @classmethod
    def from_edges(cls, n: int, weights: Sequence[int],
                   edges: Sequence[Tuple[int, int]]) -> "WeightedGraph":
        adj = [0] * n
        for (u, v) in edges:
            if u == v:
                raise ValueError(f"self loop ({u},{v})")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, weights, adj)

    def is_independent(self, vertices: Sequence[int]) -> bool:
        chosen = 0
        for v in vertices:
            chosen |= 1 << v
        return all((self.adj[v] & chosen) == 0 for v in vertices)

    def weight_of(self, vertices: Sequence[int]) -> int:
        return sum(self.weights[v] for v in vertices)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()


def parse_edge_list(text: str) -> WeightedGraph:
    """Read the plain 'n m' / weights / edges format written by the
    conflict-graph exporter."""
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append((lineno, line))
    if not rows:
        raise ValueError("empty graph file")
    lineno, head = rows[0]
    parts = head.split()
    if len(parts) != 2:
        raise ValueError(f"line {lineno}: expected header 'n m'")
    n, m = int(parts[0]), int(parts[1])
    if len(rows) != 1 + n + m:
        raise ValueError(f"expected {1 + n + m} content lines, found {len(rows)}")
    weights = []
    for (lineno, line) in rows[1:1 + n]:
        try:
            weights.append(int(line))
        except ValueError:
            raise ValueError(f"line {lineno}: bad weight {line!r}") from None
    edges = []
    for (lineno, line) in rows[1 + n:]:
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected 'u v'")
        edges.append((int(parts[0]), int(parts[1])))
    return WeightedGraph.from_edges(n, weights, edges)


# ---------------------------------------------------------------------------
# public solving interface

def max_weight_is(graph: WeightedGraph, budget: Optional[Budget] = None,
                  initial: Optional[Sequence[int]] = None,
                  transitive_fix: Optional[int] = None,
                  engine: str = "auto") -> SolveResult:
    """Maximum weight independent set.

    initial seeds the incumbent with a known independent set.  When the
    caller knows that some maximum-weight solution contains a particular
    vertex (true for any vertex of a vertex-transitive instance), passing
    it as transitive_fix solves the problem restricted to that vertex's
    non-neighbourhood, which prunes dramatically; correctness of the
    equality is the caller's responsibility.
    """
    if graph.n == 0:
        return SolveResult(Solution((), 0), True, 0, 0.0)
    if initial is not None and not graph.is_independent(initial):
        raise ContractError("initial solution is not independent")
    if transitive_fix is not None:
        v0 = transitive_fix
        cand = [u for u in range(graph.n) if u != v0 and not (graph.adj[v0] >> u) & 1]
        init = None
        if initial is not None:
            init = [u for u in initial if u != v0]
            if any((graph.adj[v0] >> u) & 1 for u in init):
                init = None    # incumbent not usable below the fixed vertex
        res = max_weight_is_restricted(graph, [v0], cand, budget=budget,
                                       initial=init, engine=engine)
        if initial is not None and graph.weight_of(initial) > res.solution.weight:
            return SolveResult(Solution(tuple(sorted(initial)),
                                        graph.weight_of(initial)),
                               res.optimal, res.nodes, res.elapsed)
        return res
    return _solve(graph, list(range(graph.n)), fixed=[], budget=budget,
                  initial=list(initial) if initial else None, engine=engine)


def max_weight_is_restricted(graph: WeightedGraph, fixed: Sequence[int],
                             candidates: Sequence[int],
                             budget: Optional[Budget] = None,
                             initial: Optional[Sequence[int]] = None,
                             engine: str = "auto",
                             prune_floor: Optional[int] = None) -> SolveResult:
    """Best extension of a fixed independent set inside a candidate pool.

    Preconditions (contract errors): fixed is independent; no candidate is
    adjacent to a fixed vertex; candidate and fixed sets are disjoint.

    prune_floor declares that solutions of total weight <= prune_floor are
    of no interest: the search may discard them, and when nothing heavier
    exists the fixed set alone comes back.  Useful when the caller takes a
    maximum over many restricted solves.
    """
    fixed = sorted(set(fixed))
    candidates = sorted(set(candidates))
    if not graph.is_independent(fixed):
        raise ContractError("fixed set is not independent")
    fixed_mask = 0
    for v in fixed:
        fixed_mask |= 1 << v
    for u in candidates:
        if (1 << u) & fixed_mask:
            raise ContractError(f"candidate {u} is already fixed")
        if graph.adj[u] & fixed_mask:
            raise ContractError(f"candidate {u} is adjacent to the fixed set")
    init = None
    if initial is not None:
        init = sorted(set(initial))
        cset = set(candidates)
        if not all(u in cset for u in init):
            raise ContractError("initial extension must lie inside the candidates")
    floor = None
    if prune_floor is not None:
        floor = prune_floor - sum(graph.weights[v] for v in fixed)
    return _solve(graph, candidates, fixed=fixed, budget=budget,
                  initial=init, engine=engine, floor=floor)


def brute_force_mwis(graph: WeightedGraph, guard: int = 24) -> Solution:
    """Oracle: exhaustive include/exclude enumeration, no bounding at all.

    Kept deliberately free of orderings, tables and bounds so it cannot
    share a bug with the branch and bound.  Exponential; guarded by n.
    """
    n = graph.n
    if n > guard:
        raise ValueError(f"n={n} exceeds brute force guard {guard}")
    adj = graph.adj
    weights = graph.weights
    full = (1 << n) - 1

    def rec(mask: int) -> Tuple[int, int]:
        if mask == 0:
            return 0, 0
        v = (mask & -mask).bit_length() - 1
        skip_w, skip_set = rec(mask & ~(1 << v))
        take_w, take_set = rec(mask & ~(1 << v) & ~adj[v])
        take_w += weights[v]
        take_set |= 1 << v
        if take_w >= skip_w:
            return take_w, take_set
        return skip_w, skip_set

    w, chosen = rec(full)
    verts = []
    while chosen:
        lsb = chosen & -chosen
        verts.append(lsb.bit_length() - 1)
        chosen ^= lsb
    return Solution(tuple(verts), w)


# ---------------------------------------------------------------------------
# shared machinery

def _baseline_order(graph: WeightedGraph, candidates: List[int]) -> List[int]:
    """Non-increasing weight/degree ratio, id as the deterministic tie-break."""
    return sorted(candidates,
                  key=lambda v: (-graph.weights[v] / (graph.degree(v) + 1), v))


def _greedy_initial(graph: WeightedGraph, candidates: List[int]) -> List[int]:
    chosen: List[int] = []
    used = 0
    for v in sorted(candidates, key=lambda v: (-graph.weights[v], v)):
        if not (used >> v) & 1:
            chosen.append(v)
            used |= graph.adj[v] | (1 << v)
    return chosen


def _project_capacity_families(graph: WeightedGraph, keep: List[int],
                               fixed: Sequence[int]) -> list:
    """Restrict capacity families to a candidate subset, charging the fixed
    vertices against each group's cap."""
    if not graph.capacity_families:
        return []
    pos = {v: i for i, v in enumerate(keep)}
    out = []
    for (mult, groups) in graph.capacity_families:
        projected = []
        for (mask, cap) in groups:
            used = sum(graph.weights[v] for v in fixed if (mask >> v) & 1)
            sub_mask = 0
            m = mask
            while m:
                lsb = m & -m
                v = lsb.bit_length() - 1
                m ^= lsb
                i = pos.get(v)
                if i is not None:
                    sub_mask |= 1 << i
            projected.append((sub_mask, cap - used))
        out.append((mult, projected))
    return out


def _project_chain_families(graph: WeightedGraph, keep: List[int],
                            fixed: Sequence[int]) -> list:
    """Restrict chain families to a candidate subset: layer labels follow
    the kept vertices, fixed weight is pre-charged per layer."""
    out = []
    for (layer_of, caps) in graph.chain_families:
        k = len(caps)
        layers = [layer_of[v] for v in keep]
        if any(l < 0 or l >= k for l in layers):
            raise ValueError("chain family must assign every vertex a layer")
        used0 = [0] * k
        for v in fixed:
            used0[layer_of[v]] += graph.weights[v]
        out.append((layers, list(caps), used0))
    return out


def chain_relaxation_bound(masses: Sequence[int], allows: Sequence[int],
                           value_cap: int = 128) -> int:
    """Exact optimum of: maximize sum x_l subject to 0 <= x_l <= masses[l]
    and x_l + x_{l+1} <= allows[l] cyclically.

    Used as an admissible bound: the per-layer future weights of any
    independent set satisfy these constraints, so no solution can beat the
    program's optimum.  Small-integer DP over the cycle; value_cap guards
    against degenerate huge caps.
    """
    k = len(masses)
    if k != len(allows):
        raise ValueError("masses/allows length mismatch")
    if k == 0:
        return 0
    allows = [max(0, a) for a in allows]
    if k == 1:
        return min(masses[0], allows[0])
    if k == 2:
        best = 0
        ub0 = min(masses[0], allows[0], allows[1])
        for x0 in range(ub0 + 1):
            x1 = min(masses[1], allows[0] - x0, allows[1] - x0)
            if x1 >= 0:
                best = max(best, x0 + x1)
        return best
    V = min(max(max(masses, default=0), 0), max(allows, default=0), value_cap)
    ub = [min(masses[l], allows[l - 1], allows[l], V) for l in range(k)]
    best = 0
    neg = -(1 << 40)
    for x0 in range(ub[0] + 1):
        f = [neg] * (V + 1)
        top = min(ub[1], allows[0] - x0)
        for x in range(top + 1):
            f[x] = x0 + x
        for l in range(2, k):
            run = [neg] * (V + 1)
            acc = neg
            for y in range(V + 1):
                if f[y] > acc:
                    acc = f[y]
                run[y] = acc
            g = [neg] * (V + 1)
            for x in range(ub[l] + 1):
                rem = allows[l - 1] - x
                if rem < 0:
                    break
                if rem > V:
                    rem = V
                if run[rem] > neg:
                    g[x] = run[rem] + x
            f = g
        for x in range(min(ub[k - 1], allows[k - 1] - x0) + 1):
            if f[x] > best:
                best = f[x]
    return best


def _solve(graph: WeightedGraph, candidates: List[int], fixed: List[int],
           budget: Optional[Budget], initial: Optional[List[int]],
           engine: str, floor: Optional[int] = None) -> SolveResult:
    t0 = time.monotonic()
    order = _baseline_order(graph, candidates)
    sub_weights = [graph.weights[v] for v in order]
    pos = {v: i for i, v in enumerate(order)}
    sub_adj = []
    for v in order:
        m = graph.adj[v]
        sm = 0
        while m:
            lsb = m & -m
            u = lsb.bit_length() - 1
            m ^= lsb
            i = pos.get(u)
            if i is not None:
                sm |= 1 << i
        sub_adj.append(sm)
    families = _project_capacity_families(graph, order, fixed)
    chains = _project_chain_families(graph, order, fixed)
    # A warm incumbent is only adopted when the caller supplies one: seeding
    # the row loop otherwise inflates the prefix table and weakens its prune.
    warm = [pos[v] for v in initial] if initial else []
    eng = _pick_engine(engine, len(order))
    best, best_set, nodes, optimal = eng(
        len(order), sub_weights, sub_adj, families, chains, warm, budget, t0,
        floor if floor is not None else 0)
    if not optimal:
        greedy = _greedy_sub(sub_weights, sub_adj)
        if sum(sub_weights[i] for i in greedy) > best and floor is None:
            best_set = greedy
    verts = tuple(sorted(fixed + [order[i] for i in best_set]))
    weight = graph.weight_of(verts)
    sol = Solution(verts, weight)
    if not graph.is_independent(verts):
        raise AssertionError("solver returned a dependent set")
    return SolveResult(sol, optimal, nodes, time.monotonic() - t0)


def _greedy_sub(weights: List[int], adj: List[int]) -> List[int]:
    chosen: List[int] = []
    used = 0
    for v in sorted(range(len(weights)), key=lambda v: (-weights[v], v)):
        if not (used >> v) & 1:
            chosen.append(v)
            used |= adj[v] | (1 << v)
    return chosen


def _pick_engine(engine: str, n: int):
    if engine == "python":
        return _python_engine
    if engine == "numba":
        kern = _numba_engine()
        if kern is None:
            raise RuntimeError("numba engine requested but numba is unavailable")
        return kern
    if engine == "auto":
        if n >= 220:
            kern = _numba_engine()
            if kern is not None:
                return kern
        return _python_engine
    raise ValueError(f"unknown engine {engine!r}")


def _numba_engine():
    try:
        from . import _kernel
    except Exception:
        return None
    return _kernel.row_loop_solve


# ---------------------------------------------------------------------------
# pure Python engine (reference semantics for the compiled kernel)

def _python_engine(n: int, weights: List[int], adj: List[int], families: list,
                   chains: list, warm: List[int], budget: Optional[Budget],
                   t0: float, floor: int = 0):
    node_limit = budget.node_limit if budget else None
    time_limit = budget.time_limit if budget else None
    ngroups = sum(len(g) for _, g in families)
    group_masks: List[int] = []
    group_caps: List[int] = []
    group_fam: List[int] = []
    fam_mult: List[int] = []
    vgroups: List[List[int]] = [[] for _ in range(n)]
    for fi, (mult, groups) in enumerate(families):
        fam_mult.append(mult)
        for (mask, cap) in groups:
            gid = len(group_masks)
            group_masks.append(mask)
            group_caps.append(cap)
            group_fam.append(fi)
            m = mask
            while m:
                lsb = m & -m
                vgroups[lsb.bit_length() - 1].append(gid)
                m ^= lsb
    nfam = len(fam_mult)
    nchains = len(chains)
    chain_layers = [layers for (layers, _, _) in chains]
    chain_caps = [caps for (_, caps, _) in chains]
    chain_used0 = [list(used0) for (_, _, used0) in chains]
    chain_k = [len(caps) for caps in chain_caps]

    C = [0] * n
    best = max(sum(weights[v] for v in warm), floor)
    best_set: Tuple[int, ...] = tuple(sorted(warm))
    nodes = 0
    aborted = False

    class Abort(Exception):
        pass

    def node_tick():
        nonlocal nodes
        nodes += 1
        if node_limit is not None and nodes > node_limit:
            raise Abort
        if time_limit is not None and nodes % 2048 == 0 \
                and time.monotonic() - t0 > time_limit:
            raise Abort

    def sub(P: int, curw: int, chosen: Tuple[int, ...],
            used: List[int], usedL: List[List[int]], target: int) -> bool:
        nonlocal best, best_set
        node_tick()
        if ngroups:
            for g in range(ngroups):
                if group_caps[g] - used[g] <= 0:
                    P &= ~group_masks[g]
        if not P:
            return False
        if curw + C[P.bit_length() - 1] <= best:
            return False
        # one ascending pass: capacity masses and greedy clique cover
        pw = [0] * ngroups if ngroups else None
        pl = [[0] * chain_k[f] for f in range(nchains)]
        commons: List[int] = []
        cliques: List[List[int]] = []
        cmax: List[int] = []
        m = P
        while m:
            lsb = m & -m
            u = lsb.bit_length() - 1
            m ^= lsb
            wu = weights[u]
            if ngroups:
                for g in vgroups[u]:
                    pw[g] += wu
            for f in range(nchains):
                pl[f][chain_layers[f][u]] += wu
            for j, cm in enumerate(commons):
                if cm & lsb:
                    commons[j] = cm & adj[u]
                    cliques[j].append(u)
                    if wu > cmax[j]:
                        cmax[j] = wu
                    break
            else:
                commons.append(adj[u])
                cliques.append([u])
                cmax.append(wu)
        cap_term = None
        if ngroups:
            fam_sum = [0] * nfam
            for g in range(ngroups):
                allow = group_caps[g] - used[g]
                if allow < 0:
                    allow = 0
                fam_sum[group_fam[g]] += min(allow, pw[g])
            cap_term = min(fam_sum[f] // fam_mult[f] for f in range(nfam))
        for f in range(nchains):
            k = chain_k[f]
            uf = usedL[f]
            allows = [chain_caps[f][l] - uf[l] - uf[(l + 1) % k] for l in range(k)]
            term = chain_relaxation_bound(pl[f], allows)
            cap_term = term if cap_term is None else min(cap_term, term)
        if cap_term is not None and curw + cap_term <= best:
            return False
        order: List[int] = []
        cum: List[int] = []
        run = 0
        for j, mem in enumerate(cliques):
            run += cmax[j]
            if cap_term is not None and run > cap_term:
                run = cap_term
            for u in mem:
                order.append(u)
                cum.append(run)
        R = P
        for k in range(len(order) - 1, -1, -1):
            if curw + cum[k] <= best:
                return False
            v = order[k]
            nw = curw + weights[v]
            nchosen = chosen + (v,)
            if nw > best:
                best = nw
                best_set = tuple(sorted(nchosen))
                if best >= target:
                    return True
            R &= ~(1 << v)
            child = R & ~adj[v]
            if child:
                nused = used
                if ngroups:
                    nused = list(used)
                    for g in vgroups[v]:
                        nused[g] += weights[v]
                nusedL = usedL
                if nchains:
                    nusedL = [list(uf) for uf in usedL]
                    for f in range(nchains):
                        nusedL[f][chain_layers[f][v]] += weights[v]
                if sub(child, nw, nchosen, nused, nusedL, target):
                    return True
        return False

    used0 = [0] * ngroups
    try:
        for i in range(n):
            target = best + weights[i]
            P0 = ~adj[i] & ((1 << i) - 1)
            if weights[i] > best:
                best = weights[i]
                best_set = (i,)
            if P0:
                ui = list(used0)
                for g in vgroups[i]:
                    ui[g] += weights[i]
                uLi = [list(u0) for u0 in chain_used0]
                for f in range(nchains):
                    uLi[f][chain_layers[f][i]] += weights[i]
                sub(P0, weights[i], (i,), ui, uLi, target)
            C[i] = best
    except Abort:
        aborted = True
    return best, list(best_set), nodes, not aborted
