"""Quality-performance-based product complexity analysis.

The complexity indicator of a product type is its fraction-nonconforming
Beta posterior.  Pairwise similarity between indicators is the Hellinger
distance, which has a closed form for two Beta distributions:

    H(P, Q)^2 = 1 - B((a1+a2)/2, (b1+b2)/2) / sqrt(B(a1, b1) * B(a2, b2))

Products are ordered by posterior median, scored by accumulating the
Hellinger distance between consecutive distributions (seed score 0), scaled
to [0, 10], and grouped by agglomerative clustering under complete linkage.

Two clustering inputs are supported.  `distance_matrix` gives the Hellinger
distances themselves.  `profile_distance_matrix` gives Euclidean distances
between the *rows* of that matrix (each product represented by its vector of
distances to every product); this is the form the reference case-study
dendrogram was built from and is the default in the reporting pipeline.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from . import special
from .bayes import BetaParams
from .errors import DomainError

SCALE_MAX = 10.0


def hellinger(p: BetaParams, q: BetaParams) -> float:
    """Closed-form Hellinger distance between two Beta distributions."""
    log_ratio = special.log_beta((p.a + q.a) / 2.0, (p.b + q.b) / 2.0) - 0.5 * (
        special.log_beta(p.a, p.b) + special.log_beta(q.a, q.b)
    )
    # exact rounding can push 1 - r a hair below 0 for near-identical shapes
    inner = min(max(1.0 - math.exp(log_ratio), 0.0), 1.0)
    return math.sqrt(inner)


@dataclass(frozen=True)
class HellingerMatrix:
    labels: tuple[str, ...]
    values: np.ndarray

    def __post_init__(self) -> None:
        n = len(self.labels)
        if self.values.shape != (n, n):
            raise DomainError(
                f"matrix shape {self.values.shape} does not match {n} labels"
            )

    @property
    def size(self) -> int:
        return len(self.labels)


def _default_labels(count: int, labels: Sequence[str] | None) -> tuple[str, ...]:
    if labels is None:
        return tuple(str(i + 1) for i in range(count))
    if len(labels) != count:
        raise DomainError(f"got {len(labels)} labels for {count} items")
    return tuple(str(label) for label in labels)


def distance_matrix(
    posteriors: Sequence[BetaParams], labels: Sequence[str] | None = None
) -> HellingerMatrix:
    """All pairwise Hellinger distances; symmetric with a zero diagonal."""
    if not posteriors:
        raise DomainError("need at least one posterior")
    n = len(posteriors)
    values = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            values[i, j] = values[j, i] = hellinger(posteriors[i], posteriors[j])
    return HellingerMatrix(_default_labels(n, labels), values)


def profile_distance_matrix(matrix: HellingerMatrix) -> HellingerMatrix:
    """Euclidean distances between rows of a distance matrix.

    Row i is product i's distance profile against every product; two products
    are close when they sit at similar distances from everything else.
    """
    rows = matrix.values
    diff = rows[:, None, :] - rows[None, :, :]
    values = np.sqrt((diff**2).sum(axis=2))
    return HellingerMatrix(matrix.labels, values)


def complexity_order(posteriors: Sequence[BetaParams]) -> list[int]:
    """Indices sorted by ascending posterior median.

    Exact median ties are broken by smaller variance (a tighter distribution
    is the less complex product); remaining ties keep input order.
    """
    medians = [p.median for p in posteriors]
    return sorted(
        range(len(posteriors)),
        key=lambda i: (medians[i], posteriors[i].variance, i),
    )


@dataclass(frozen=True)
class ComplexityScore:
    label: str
    index: int
    raw: float
    scaled: float
    median: float


def complexity_scores(
    posteriors: Sequence[BetaParams], labels: Sequence[str] | None = None
) -> list[ComplexityScore]:
    """Cumulative-Hellinger complexity scores scaled to [0, 10].

    Walking products in median order, each score adds the Hellinger distance
    to the previous product's distribution (first score 0); the maximum raw
    score maps to 10.  Results are returned in the original input order.
    """
    if not posteriors:
        raise DomainError("need at least one posterior")
    names = _default_labels(len(posteriors), labels)
    order = complexity_order(posteriors)
    raw = [0.0] * len(posteriors)
    for rank in range(1, len(order)):
        current, previous = order[rank], order[rank - 1]
        raw[current] = raw[previous] + hellinger(posteriors[current], posteriors[previous])
    top = max(raw)
    scale = SCALE_MAX / top if top > 0 else 0.0
    return [
        ComplexityScore(
            label=names[i],
            index=i,
            raw=raw[i],
            scaled=raw[i] * scale,
            median=posteriors[i].median,
        )
        for i in range(len(posteriors))
    ]


@dataclass(frozen=True)
class Merge:
    left: int
    right: int
    height: float


@dataclass(frozen=True)
class ClusterTree:
    """Merge history of agglomerative clustering.

    Leaves are numbered 0..n-1; the cluster created by merge k has id n + k.
    """

    n_leaves: int
    labels: tuple[str, ...]
    merges: tuple[Merge, ...]

    def members(self, cluster_id: int) -> frozenset[int]:
        if cluster_id < self.n_leaves:
            return frozenset([cluster_id])
        merge = self.merges[cluster_id - self.n_leaves]
        return self.members(merge.left) | self.members(merge.right)


def agglomerative_cluster(matrix: HellingerMatrix) -> ClusterTree:
    """Complete-linkage agglomerative clustering over a distance matrix.

    Cluster distance is the largest pairwise member distance.  Equal-distance
    merge candidates are resolved by the lexicographically smallest cluster-id
    pair, so the dendrogram is identical across runs and platforms.
    """
    n = matrix.size
    dist = matrix.values
    members: dict[int, frozenset[int]] = {i: frozenset([i]) for i in range(n)}
    # complete-linkage distance between active clusters, updated per merge
    cluster_dist: dict[tuple[int, int], float] = {
        (i, j): float(dist[i, j]) for i in range(n) for j in range(i + 1, n)
    }
    merges: list[Merge] = []
    next_id = n
    while len(members) > 1:
        (left, right), height = min(
            cluster_dist.items(), key=lambda item: (item[1], item[0])
        )
        merged = members[left] | members[right]
        for other in members:
            if other in (left, right):
                continue
            d = max(
                cluster_dist[(min(left, other), max(left, other))],
                cluster_dist[(min(right, other), max(right, other))],
            )
            cluster_dist[(min(other, next_id), max(other, next_id))] = d
        for pair in [k for k in cluster_dist if left in k or right in k]:
            del cluster_dist[pair]
        del members[left], members[right]
        members[next_id] = merged
        merges.append(Merge(left=left, right=right, height=height))
        next_id += 1
    return ClusterTree(n_leaves=n, labels=matrix.labels, merges=tuple(merges))


def cut(tree: ClusterTree, k: int) -> list[int]:
    """Partition into k clusters by undoing the last k-1 merges.

    Returns one cluster id per leaf, with clusters numbered 0..k-1 in order
    of their smallest member index.
    """
    if not (1 <= k <= tree.n_leaves):
        raise DomainError(f"k must lie in [1, {tree.n_leaves}], got {k}")
    members: dict[int, frozenset[int]] = {
        i: frozenset([i]) for i in range(tree.n_leaves)
    }
    next_id = tree.n_leaves
    for merge in tree.merges[: tree.n_leaves - k]:
        members[next_id] = members.pop(merge.left) | members.pop(merge.right)
        next_id += 1
    clusters = sorted(members.values(), key=min)
    assignment = [0] * tree.n_leaves
    for cluster_id, leaf_set in enumerate(clusters):
        for leaf in leaf_set:
            assignment[leaf] = cluster_id
    return assignment


@dataclass(frozen=True)
class ClusterLabel:
    letter: str
    members: tuple[int, ...]
    mean_score: float
    total_welds: int | None = None
    share: float | None = None


def _letter(rank: int) -> str:
    # A..Z, then AA, AB, ... for very fragmented cuts
    name = ""
    rank += 1
    while rank:
        rank, rem = divmod(rank - 1, 26)
        name = chr(ord("A") + rem) + name
    return name


def label_clusters(
    assignments: Sequence[int],
    scores: Sequence[ComplexityScore],
    totals: Sequence[int] | Mapping[int, int] | None = None,
) -> list[ClusterLabel]:
    """Letter labels ordered by mean scaled score, most complex first.

    When per-product weld totals are supplied, each cluster also reports its
    share of the overall total (its slice of the business).
    """
    if len(assignments) != len(scores):
        raise DomainError(
            f"{len(assignments)} assignments for {len(scores)} scores"
        )
    by_cluster: dict[int, list[int]] = {}
    for index, cluster_id in enumerate(assignments):
        by_cluster.setdefault(cluster_id, []).append(index)
    scaled = [s.scaled for s in scores]
    ordered = sorted(
        by_cluster.values(),
        key=lambda idxs: (-float(np.mean([scaled[i] for i in idxs])), min(idxs)),
    )
    grand_total = None
    if totals is not None:
        grand_total = sum(totals[i] for i in range(len(assignments)))
    labels = []
    for rank, idxs in enumerate(ordered):
        cluster_total = sum(totals[i] for i in idxs) if totals is not None else None
        labels.append(
            ClusterLabel(
                letter=_letter(rank),
                members=tuple(sorted(idxs)),
                mean_score=float(np.mean([scaled[i] for i in idxs])),
                total_welds=cluster_total,
                share=(cluster_total / grand_total) if grand_total else None,
            )
        )
    return labels


def tree_to_dict(tree: ClusterTree) -> dict:
    """JSON-ready merge list: leaves 0..n-1, merge k creates id n+k."""
    return {
        "labels": list(tree.labels),
        "merges": [
            {"left": m.left, "right": m.right, "height": m.height} for m in tree.merges
        ],
    }


def leaf_order(tree: ClusterTree) -> list[int]:
    """Crossing-free left-to-right leaf order for plotting."""

    def walk(cluster_id: int) -> list[int]:
        if cluster_id < tree.n_leaves:
            return [cluster_id]
        merge = tree.merges[cluster_id - tree.n_leaves]
        return walk(merge.left) + walk(merge.right)

    return walk(tree.n_leaves + len(tree.merges) - 1) if tree.merges else [0]


def dendrogram_segments(
    tree: ClusterTree,
) -> list[tuple[tuple[float, float], tuple[float, float]]]:
    """Plot-ready ((x1, y1), (x2, y2)) line segments for the dendrogram.

    Leaves sit at integer x positions (crossing-free order) and height is y.
    """
    order = leaf_order(tree)
    x = {leaf: float(pos) for pos, leaf in enumerate(order)}
    height = {leaf: 0.0 for leaf in range(tree.n_leaves)}
    segments = []
    for index, merge in enumerate(tree.merges):
        cluster_id = tree.n_leaves + index
        lx, rx = x[merge.left], x[merge.right]
        segments.append(((lx, height[merge.left]), (lx, merge.height)))
        segments.append(((rx, height[merge.right]), (rx, merge.height)))
        segments.append(((lx, merge.height), (rx, merge.height)))
        x[cluster_id] = 0.5 * (lx + rx)
        height[cluster_id] = merge.height
    return segments
