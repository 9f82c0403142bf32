"""Figure rendering for search and bounds reports.

Matplotlib is imported lazily with the Agg backend so the library works
headless and without matplotlib installed; callers that never render
figures never pay for the import.
"""

from __future__ import annotations

from typing import List, Sequence, Tuple


def _plt():
    import matplotlib
    matplotlib.use("Agg", force=False)
    import matplotlib.pyplot as plt
    return plt


def plot_trajectory(trajectory: Sequence[Tuple[int, int]], path: str,
                    title: str = "best weight trajectory") -> str:
    """Step plot of best weight against iteration, written to a file."""
    plt = _plt()
    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    if trajectory:
        xs = [t[0] for t in trajectory]
        ys = [t[1] for t in trajectory]
        ax.step(xs, ys, where="post")
        ax.plot(xs[-1], ys[-1], "o", markersize=4)
    ax.set_xlabel("iteration")
    ax.set_ylabel("best weight")
    ax.set_title(title)
    ax.grid(True, alpha=0.3)
    fig.savefig(path, bbox_inches="tight", dpi=150)
    plt.close(fig)
    return path


def plot_capacity_bounds(capacities, path: str) -> str:
    """Lower/upper capacity intervals per cycle length."""
    plt = _plt()
    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    ps = [c.p for c in capacities]
    lowers = [c.lower for c in capacities]
    uppers = [c.upper for c in capacities]
    ax.vlines(ps, lowers, uppers, color="tab:blue", lw=2, label="gap")
    ax.plot(ps, lowers, "^", color="tab:green", label="best lower bound")
    ax.plot(ps, uppers, "v", color="tab:red", label="theta upper bound")
    ax.plot(ps, [p / 2 for p in ps], ":", color="gray", lw=1, label="p/2")
    ax.set_xlabel("cycle length p")
    ax.set_ylabel("Shannon capacity bounds")
    ax.set_xticks(ps)
    ax.legend(loc="upper left", fontsize=8)
    ax.grid(True, alpha=0.3)
    fig.savefig(path, bbox_inches="tight", dpi=150)
    plt.close(fig)
    return path


def plot_packing_table(cells, path: str) -> str:
    """Log-scale view of the packing-number intervals by power d."""
    plt = _plt()
    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    ps = sorted({c.p for c in cells})
    cmap = plt.get_cmap("viridis")
    for i, p in enumerate(ps):
        rows = sorted((c for c in cells if c.p == p), key=lambda c: c.d)
        ds = [c.d for c in rows]
        color = cmap(i / max(1, len(ps) - 1))
        ax.fill_between(ds, [c.lower for c in rows], [c.upper for c in rows],
                        color=color, alpha=0.25)
        ax.plot(ds, [c.lower for c in rows], "-o", color=color, ms=3,
                label=f"p={p}")
    ax.set_yscale("log")
    ax.set_xlabel("power d")
    ax.set_ylabel("packing number bounds")
    ax.set_xticks(sorted({c.d for c in cells}))
    ax.legend(fontsize=8)
    ax.grid(True, alpha=0.3, which="both")
    fig.savefig(path, bbox_inches="tight", dpi=150)
    plt.close(fig)
    return path
