"""Independent brute-force oracles, written straight from the definitions.

Everything here is deliberately slow and loop-based so it shares no code
path with the package implementations it checks.
"""

import math

import numpy as np


def dist(p, q):
    return math.sqrt(sum((a - b) ** 2 for a, b in zip(p, q)))


def silhouette_brute(points, labels):
    """Per-point silhouette by definition: a = mean distance to own-cluster
    co-members, b = min over other clusters of mean distance to members."""
    n = len(points)
    clusters = {}
    for i, lab in enumerate(labels):
        clusters.setdefault(int(lab), []).append(i)
    values = []
    for i in range(n):
        own = clusters[int(labels[i])]
        if len(own) < 2:
            values.append(0.0)
            continue
        a = sum(dist(points[i], points[j]) for j in own if j != i) / (len(own) - 1)
        b = min(
            sum(dist(points[i], points[j]) for j in members) / len(members)
            for lab, members in clusters.items()
            if lab != int(labels[i])
        )
        if max(a, b) == 0.0:
            values.append(0.0)
        else:
            values.append((b - a) / max(a, b))
    return np.array(values)


def overlap_brute(points, labels):
    """Fraction of points whose nearest neighbour has another label."""
    n = len(points)
    foreign = 0
    for i in range(n):
        best_j, best_d = None, None
        for j in range(n):
            if j == i:
                continue
            d = dist(points[i], points[j])
            if best_d is None or d < best_d:
                best_d, best_j = d, j
        if labels[best_j] != labels[i]:
            foreign += 1
    return foreign / n


def connectivity_brute(points, labels, n_neighbors=10):
    """Sum of 1/j over foreign j-th nearest neighbours, divided by N.
    Neighbour lists come from fully sorted distances (ties by index)."""
    n = len(points)
    total = 0.0
    for i in range(n):
        order = sorted((dist(points[i], points[j]), j) for j in range(n) if j != i)
        for rank, (_, j) in enumerate(order[:n_neighbors], start=1):
            if labels[j] != labels[i]:
                total += 1.0 / rank
    return total / n


def ari_pair_counting(a, b):
    """ARI via explicit pair agreement counts (no contingency table)."""
    n = len(a)
    together_a = together_b = together_both = 0
    pairs = 0
    for i in range(n):
        for j in range(i + 1, n):
            pairs += 1
            sa = a[i] == a[j]
            sb = b[i] == b[j]
            together_a += sa
            together_b += sb
            together_both += sa and sb
    expected = together_a * together_b / pairs
    max_index = (together_a + together_b) / 2
    if max_index == expected:
        return 1.0
    return (together_both - expected) / (max_index - expected)


def linkage_naive(points, k, method):
    """Agglomeration recomputing every inter-cluster distance each step.

    Merges the pair with the smallest distance (single: min over point
    pairs; average: mean over point pairs); ties break toward the lowest
    cluster-index pair.
    """
    clusters = [[i] for i in range(len(points))]
    while len(clusters) > k:
        best = None
        for x in range(len(clusters)):
            for y in range(x + 1, len(clusters)):
                ds = [
                    dist(points[i], points[j])
                    for i in clusters[x]
                    for j in clusters[y]
                ]
                d = min(ds) if method == "single" else sum(ds) / len(ds)
                if best is None or d < best[0]:
                    best = (d, x, y)
        _, x, y = best
        clusters[x] = clusters[x] + clusters[y]
        del clusters[y]
    labels = np.empty(len(points), dtype=int)
    for idx, members in enumerate(clusters):
        for i in members:
            labels[i] = idx
    return labels


def entropy_brute(sizes, base_k):
    total = sum(sizes)
    h = 0.0
    for s in sizes:
        if s > 0:
            p = s / total
            h -= p * math.log(p, base_k)
    return h
