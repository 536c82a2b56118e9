"""Figures for the report subcommand: g_alpha profiles and the height
distribution over the admissible subsets."""

from __future__ import annotations

from collections import Counter
from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .alcove_model import LambdaChain, fold, g_profile  # noqa: E402

# no timestamps or version strings in the files, so reruns are byte-identical
_PNG_META = {"Software": None}


def plot_profiles(chain: LambdaChain, J: Sequence[int], path: Path) -> Path:
    F = fold(chain, J)
    rank = chain.rs.rank
    fig, axes = plt.subplots(rank + 1, 1, figsize=(6, 1.8 * (rank + 1)), squeeze=False)
    for p, ax in enumerate(axes[:, 0]):
        prof = g_profile(F, p)
        xs = [k / 2 for k in range(len(prof.walk))]
        ax.plot(xs, [float(y) for y in prof.walk], marker="o", ms=3)
        ax.axhline(float(prof.M), color="grey", lw=0.8, ls="--")
        ticks = [i - 0.5 for i in range(1, len(prof.indices) + 1)]
        labels = [str(i) if i != float("inf") else "inf" for i in prof.indices]
        ax.set_xticks(ticks, labels)
        ax.set_ylabel(f"g, p={p}")
    axes[0, 0].set_title(f"J = {{{','.join(map(str, F.J))}}}, lambda = {chain.lam}")
    fig.tight_layout()
    fig.savefig(path, metadata=_PNG_META)
    plt.close(fig)
    return path


def plot_heights(chain: LambdaChain, heights: Sequence[int], path: Path) -> Path:
    counts = Counter(heights)
    xs = sorted(counts)
    fig, ax = plt.subplots(figsize=(5, 3))
    ax.bar(xs, [counts[x] for x in xs])
    ax.set_xlabel("height(J)  (= -energy)")
    ax.set_ylabel("admissible subsets")
    ax.set_title(f"type {chain.rs.kind}{chain.rs.n}, lambda = {chain.lam}")
    fig.tight_layout()
    fig.savefig(path, metadata=_PNG_META)
    plt.close(fig)
    return path
