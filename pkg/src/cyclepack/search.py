"""Stochastic improvement of weighted independent sets.

One move removes a randomly chosen incumbent vertex together with every
incumbent vertex within a heuristic distance of it, then calls the exact
solver to refill the hole optimally.  Because the removed vertices are
always feasible candidates for the refill, an exact refill can never lose
weight, and the incumbent update rejects regressions in any case.  Ball
radius escalates after long stalls and resets on improvement.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field, replace
from typing import Callable, List, Optional, Sequence, Tuple

from .orbitgraph import OrbitGraph
from .solver import Budget, Solution, max_weight_is_restricted


@dataclass(frozen=True)
class SearchConfig:
    ball_radius: int = 2
    max_iterations: int = 100_000
    time_limit: float = 60.0
    restarts: int = 1
    rng_seed: int = 1
    refill_node_limit: int = 200_000
    stall_threshold: int = 500
    target_weight: Optional[int] = None

    def __post_init__(self):
        if self.ball_radius < 0:
            raise ValueError("ball_radius must be >= 0")
        if self.max_iterations < 1 or self.restarts < 1:
            raise ValueError("iteration and restart limits must be positive")
        if self.time_limit < 0:
            raise ValueError("time_limit must be nonnegative")

    @classmethod
    def from_key_value_text(cls, text: str, **overrides) -> "SearchConfig":
        """Parse 'key=value' lines; unknown keys are rejected."""
        values = {}
        fields = {f: t for f, t in cls.__annotations__.items()}
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"line {lineno}: expected key=value")
            key, _, val = line.partition("=")
            key = key.strip()
            val = val.strip()
            if key not in fields:
                raise ValueError(f"line {lineno}: unknown config key {key!r}")
            if key in ("time_limit",):
                values[key] = float(val)
            elif key == "target_weight":
                values[key] = None if val.lower() == "none" else int(val)
            else:
                values[key] = int(val)
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)


@dataclass
class SearchStats:
    iterations: int = 0
    improvements: int = 0
    refills: int = 0
    refills_optimal: int = 0
    restarts_run: int = 0
    elapsed: float = 0.0
    trajectory: List[Tuple[int, int]] = field(default_factory=list)

    @property
    def refill_optimality_rate(self) -> float:
        return self.refills_optimal / self.refills if self.refills else 1.0

    def to_dict(self) -> dict:
        return {
            "iterations": self.iterations,
            "improvements": self.improvements,
            "refills": self.refills,
            "refill_optimality_rate": self.refill_optimality_rate,
            "restarts_run": self.restarts_run,
            "elapsed": self.elapsed,
            "trajectory": [list(t) for t in self.trajectory],
        }


@dataclass(frozen=True)
class SearchResult:
    best: Solution
    stats: SearchStats
    config: SearchConfig


RecordSink = Callable[[dict], None]


def greedy_initial(graph: OrbitGraph, rng: random.Random) -> List[int]:
    """Greedy by weight with a random tie shuffle; diversity across restarts."""
    order = list(range(graph.n))
    rng.shuffle(order)
    order.sort(key=lambda v: -graph.weights[v])
    chosen: List[int] = []
    used = 0
    for v in order:
        if not (used >> v) & 1:
            chosen.append(v)
            used |= graph.adj[v] | (1 << v)
    return sorted(chosen)


def remove_ball(graph: OrbitGraph, incumbent: Sequence[int], center: int,
                radius: int) -> Tuple[List[int], List[int]]:
    """Split the incumbent into (kept, removed) around a center vertex.

    removed collects every incumbent vertex whose orbit distance to the
    center is at most the radius; the center itself is always removed.
    """
    if center not in incumbent:
        raise ValueError("center must be part of the incumbent")
    removed = []
    reduced = []
    for u in incumbent:
        if graph.orbit_distance(u, center) <= radius:
            removed.append(u)
        else:
            reduced.append(u)
    return reduced, removed


def refill(graph: OrbitGraph, wg, reduced: Sequence[int], removed: Sequence[int],
           node_limit: int) -> Tuple[List[int], bool]:
    """Optimal extension of the reduced incumbent; warm-started with the
    removed set so even a budget-limited refill never regresses."""
    conflict = 0
    for u in reduced:
        conflict |= wg.adj[u] | (1 << u)
    candidates = [v for v in range(wg.n) if not (conflict >> v) & 1]
    res = max_weight_is_restricted(
        wg, fixed=list(reduced), candidates=candidates,
        budget=Budget(node_limit=node_limit), initial=list(removed))
    return sorted(res.solution.vertices), res.optimal


def run_search(graph: OrbitGraph, config: SearchConfig,
               sink: Optional[RecordSink] = None) -> SearchResult:
    """Remove-and-refill search with restarts.

    Deterministic for a fixed (graph, config): restart r draws its random
    stream from rng_seed + r.  The best solution is kept across restarts
    and never decreases.
    """
    if graph.n == 0:
        raise ValueError("empty graph")
    t0 = time.monotonic()
    wg = graph.to_weighted_graph()
    stats = SearchStats()
    best_vertices: List[int] = []
    best_weight = -1
    radius_cap = graph.params.d * (graph.params.p // 2)

    def out_of_time() -> bool:
        return time.monotonic() - t0 >= config.time_limit

    def emit(record: dict):
        if sink is not None:
            sink(record)

    done = False
    for r in range(config.restarts):
        if done or (r > 0 and out_of_time()):
            break
        rng = random.Random(config.rng_seed + r)
        incumbent = greedy_initial(graph, rng)
        weight = sum(graph.weights[v] for v in incumbent)
        stats.restarts_run += 1
        if weight > best_weight:
            best_weight = weight
            best_vertices = list(incumbent)
            stats.trajectory.append((stats.iterations, best_weight))
            emit({"event": "improvement", "restart": r, "iteration": stats.iterations,
                  "weight": best_weight, "elapsed": round(time.monotonic() - t0, 6)})
        if config.target_weight is not None and best_weight >= config.target_weight:
            break
        radius = config.ball_radius
        stall = 0
        for _ in range(config.max_iterations):
            if out_of_time():
                done = True
                break
            stats.iterations += 1
            center = rng.choice(incumbent)
            reduced, removed = remove_ball(graph, incumbent, center, radius)
            refilled, optimal = refill(graph, wg, reduced, removed,
                                       config.refill_node_limit)
            stats.refills += 1
            if optimal:
                stats.refills_optimal += 1
            new_weight = sum(graph.weights[v] for v in refilled)
            if new_weight >= weight:
                incumbent = refilled
                weight = new_weight
            if weight > best_weight:
                best_weight = weight
                best_vertices = list(incumbent)
                stats.improvements += 1
                stats.trajectory.append((stats.iterations, best_weight))
                stall = 0
                radius = config.ball_radius
                emit({"event": "improvement", "restart": r,
                      "iteration": stats.iterations, "weight": best_weight,
                      "radius": radius, "elapsed": round(time.monotonic() - t0, 6)})
                if config.target_weight is not None and best_weight >= config.target_weight:
                    done = True
                    break
            else:
                stall += 1
                if stall >= config.stall_threshold:
                    stall = 0
                    if radius < radius_cap:
                        radius += 1
            emit({"event": "iteration", "restart": r, "iteration": stats.iterations,
                  "incumbent": weight, "best": best_weight, "radius": radius,
                  "elapsed": round(time.monotonic() - t0, 6)})
    stats.elapsed = time.monotonic() - t0
    if not graph.is_conflict_free(best_vertices):
        raise AssertionError("search produced a conflicting vertex set")
    sol = Solution(tuple(best_vertices), best_weight if best_weight > 0 else 0)
    stats.trajectory.append((stats.iterations, sol.weight))
    return SearchResult(best=sol, stats=stats, config=config)


def sweep_generators(params, generators, config: SearchConfig,
                     build=None, sink: Optional[RecordSink] = None):
    """Run the search once per candidate generator; time budget split evenly.

    Returns a list of (generator, best_weight, SearchResult) triples in the
    enumeration order.
    """
    from .orbitgraph import build_conflict_graph
    from .groups import cyclic_group

    build = build or build_conflict_graph
    share = config.time_limit / max(1, len(generators))
    out = []
    for gen in generators:
        graph = build(cyclic_group(gen), params)
        if graph.n == 0:
            out.append((gen, 0, None))    # every orbit inadmissible
            continue
        cfg = replace(config, time_limit=share)
        res = run_search(graph, cfg, sink=sink)
        out.append((gen, res.best.weight, res))
    return out
