"""Two-stage density clustering of gaze points.

Stage one runs DBSCAN on the (x, y) pixel coordinates of each fixed-duration
chunk of the recording; stage two pools the chunk-cluster centroids and runs
DBSCAN again to obtain meta-clusters, the stable attention regions of the
whole session.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

import numpy as np
from scipy.spatial import cKDTree

from .errors import ClusteringError, EmptySessionError, ParameterError
from .ingest import SessionRecording

NOISE = -1
_UNVISITED = -2


@dataclass(frozen=True)
class ClusterParams:
    eps: float  # neighborhood radius, same units as the clustered space
    min_pts: int  # minimum neighborhood size, the point itself included

    def __post_init__(self):
        if self.eps <= 0:
            raise ParameterError(f"eps must be > 0, got {self.eps}")
        if self.min_pts < 1:
            raise ParameterError(f"min_pts must be >= 1, got {self.min_pts}")


@dataclass(frozen=True)
class Cluster:
    member_indices: tuple[int, ...]
    centroid: tuple[float, float]
    chunk_index: int


@dataclass(frozen=True)
class ChunkClustering:
    chunk_index: int
    time_span: tuple[int, int]  # [start, end) nanoseconds
    clusters: list[Cluster]
    noise_count: int


@dataclass(frozen=True)
class MetaCluster:
    id: int  # 0 = largest by member count
    center: tuple[float, float]
    member_centroids: tuple[tuple[float, float], ...]
    user_label: str | None = None


def dbscan(points, params: ClusterParams) -> tuple[np.ndarray, np.ndarray]:
    """Deterministic DBSCAN over 2-D points.

    Returns ``(labels, is_core)`` where labels are cluster ids in order of
    cluster creation and noise points carry -1.  Points are scanned in input
    order; border points go to the first cluster whose expansion reaches
    them, so output is reproducible for a fixed input order.
    """
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    n = len(pts)
    labels = np.full(n, _UNVISITED, dtype=int)
    is_core = np.zeros(n, dtype=bool)
    if n == 0:
        return labels, is_core
    if not np.isfinite(pts).all():
        raise ParameterError("dbscan input contains non-finite points")

    tree = cKDTree(pts)
    neighborhoods = tree.query_ball_point(pts, params.eps)
    for nbrs in neighborhoods:
        nbrs.sort()

    cluster_id = 0
    for i in range(n):
        if labels[i] != _UNVISITED:
            continue
        nbrs = neighborhoods[i]
        if len(nbrs) < params.min_pts:
            labels[i] = NOISE
            continue
        # new cluster seeded at i; breadth-first expansion over core points
        is_core[i] = True
        labels[i] = cluster_id
        queue = deque(nbrs)
        while queue:
            j = queue.popleft()
            if labels[j] == NOISE:
                labels[j] = cluster_id  # former noise becomes a border point
            if labels[j] != _UNVISITED:
                continue
            labels[j] = cluster_id
            j_nbrs = neighborhoods[j]
            if len(j_nbrs) >= params.min_pts:
                is_core[j] = True
                queue.extend(j_nbrs)
        cluster_id += 1
    return labels, is_core


def split_chunks(session: SessionRecording, chunk_seconds: float):
    """Cut a session into consecutive fixed-duration windows.

    Windows are aligned to the first timestamp.  A trailing partial window
    is kept only when it covers at least half of ``chunk_seconds``.
    Returns a list of ``(sample_indices, (start_ns, end_ns))``.
    """
    if len(session) == 0:
        raise EmptySessionError("empty session")
    if chunk_seconds <= 0:
        raise ParameterError("chunk_seconds must be > 0")

    chunk_ns = int(round(chunk_seconds * 1e9))
    t0 = int(session.timestamps[0])
    span = int(session.timestamps[-1]) - t0
    n_full, remainder = divmod(span, chunk_ns)

    bins = (session.timestamps - t0) // chunk_ns
    if remainder == 0 and n_full > 0:
        # final sample sits exactly on the last window's right edge
        n_chunks = n_full
        bins = np.minimum(bins, n_chunks - 1)
    else:
        n_chunks = n_full + (1 if remainder * 2 >= chunk_ns else 0)
        if n_chunks == 0:
            n_chunks = 1  # session shorter than half a chunk still forms one
    out = []
    for c in range(n_chunks):
        idx = np.nonzero(bins == c)[0]
        start = t0 + c * chunk_ns
        end = start + chunk_ns
        out.append((idx, (start, end)))
    return out


def cluster_chunks(session: SessionRecording, chunk_seconds: float,
                   params: ClusterParams) -> list[ChunkClustering]:
    """Run DBSCAN on the pixel coordinates of every chunk."""
    results = []
    for chunk_index, (idx, span) in enumerate(
            split_chunks(session, chunk_seconds)):
        pts = np.column_stack([session.x[idx], session.y[idx]])
        labels, _ = dbscan(pts, params)
        clusters = []
        for cid in range(labels.max() + 1 if len(labels) else 0):
            members = np.nonzero(labels == cid)[0]
            centroid = pts[members].mean(axis=0)
            clusters.append(Cluster(
                member_indices=tuple(int(m) for m in members),
                centroid=(float(centroid[0]), float(centroid[1])),
                chunk_index=chunk_index,
            ))
        results.append(ChunkClustering(
            chunk_index=chunk_index,
            time_span=span,
            clusters=clusters,
            noise_count=int((labels == NOISE).sum()),
        ))
    return results


def chunk_cluster_centroids(chunkings: list[ChunkClustering]):
    """All chunk-cluster centroids tagged by chunk index."""
    return [(c.centroid, cc.chunk_index)
            for cc in chunkings for c in cc.clusters]


def build_meta_clusters(centroids, meta_params: ClusterParams,
                        user_labels: dict[int, str] | None = None
                        ) -> list[MetaCluster]:
    """Second-stage DBSCAN over pooled chunk-cluster centroids.

    Noise centroids are discarded.  Ids run 0..K-1 ordered by descending
    member count, ties broken by ascending center x then y.
    """
    if not centroids:
        raise ClusteringError("no chunk clusters found")
    pts = np.asarray([c for c, _ in centroids], dtype=float)
    labels, _ = dbscan(pts, meta_params)
    n_clusters = labels.max() + 1
    if n_clusters <= 0:
        raise ClusteringError("no meta-clusters under given parameters")

    raw = []
    for cid in range(n_clusters):
        members = pts[labels == cid]
        center = members.mean(axis=0)
        raw.append((len(members), float(center[0]), float(center[1]),
                    tuple(map(tuple, members.tolist()))))
    raw.sort(key=lambda r: (-r[0], r[1], r[2]))
    user_labels = user_labels or {}
    return [
        MetaCluster(id=i, center=(cx, cy), member_centroids=mem,
                    user_label=user_labels.get(i))
        for i, (_, cx, cy, mem) in enumerate(raw)
    ]
