"""Independent reference implementations used as test oracles.

These deliberately avoid the package's code paths: plain O(n^2) loops and
from-scratch recomputation, kept as simple as possible.
"""

import numpy as np


def dbscan_reference(points, eps, min_pts):
    """Brute-force DBSCAN with exhaustive neighbor computation.

    Clusters are connected components of the core-point graph, created in
    scan order; border points join the earliest-created cluster that has a
    core point within eps.  Returns (labels, is_core) with -1 for noise.
    """
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    n = len(pts)
    labels = [-1] * n
    if n == 0:
        return np.array(labels, dtype=int), np.zeros(0, dtype=bool)

    dist = np.sqrt(((pts[:, None, :] - pts[None, :, :]) ** 2).sum(axis=2))
    neighbors = [set(np.nonzero(dist[i] <= eps)[0]) for i in range(n)]
    core = [len(neighbors[i]) >= min_pts for i in range(n)]

    # flood fill over core points, in scan order
    cluster_cores = []
    assigned = [False] * n
    for i in range(n):
        if not core[i] or assigned[i]:
            continue
        component = set()
        stack = [i]
        while stack:
            p = stack.pop()
            if p in component or not core[p]:
                continue
            component.add(p)
            assigned[p] = True
            stack.extend(q for q in neighbors[p] if core[q] and q not in component)
        cluster_cores.append(component)

    for cid, cores in enumerate(cluster_cores):
        for p in cores:
            labels[p] = cid
    for i in range(n):
        if core[i]:
            continue
        for cid, cores in enumerate(cluster_cores):
            if neighbors[i] & cores:
                labels[i] = cid
                break
    return np.array(labels, dtype=int), np.array(core, dtype=bool)


def idt_reference(timestamps, azimuths, elevations, min_duration_ns,
                  max_dispersion):
    """Naive dispersion-threshold fixation detector.

    Returns (start_ns, end_ns, mean_azimuth, mean_elevation) tuples.
    """
    t = list(timestamps)
    az = list(azimuths)
    el = list(elevations)
    n = len(t)

    def dispersion(lo, hi):
        a = az[lo:hi]
        e = el[lo:hi]
        return (max(a) - min(a)) + (max(e) - min(e))

    events = []
    i = 0
    while i < n:
        j = i + 1
        while j < n and t[j - 1] - t[i] < min_duration_ns:
            j += 1
        if t[j - 1] - t[i] < min_duration_ns:
            break
        if dispersion(i, j) > max_dispersion:
            i += 1
            continue
        while j < n and dispersion(i, j + 1) <= max_dispersion:
            j += 1
        events.append((t[i], t[j - 1],
                       sum(az[i:j]) / (j - i), sum(el[i:j]) / (j - i)))
        i = j
    return events


def count_pairs(labels, k):
    """Transition counts from a label sequence, as a plain nested list."""
    counts = [[0] * k for _ in range(k)]
    for a, b in zip(labels, labels[1:]):
        counts[a][b] += 1
    return counts


def pair_frequencies(labels, k):
    """Row-normalized transition frequencies (None rows where no visits)."""
    counts = count_pairs(labels, k)
    out = []
    for row in counts:
        s = sum(row)
        out.append([c / s for c in row] if s else None)
    return out


def partition_of(labels):
    """Cluster partition as a set of frozensets, noise points excluded."""
    groups = {}
    for idx, lab in enumerate(labels):
        if lab != -1:
            groups.setdefault(lab, set()).add(idx)
    return {frozenset(g) for g in groups.values()}
