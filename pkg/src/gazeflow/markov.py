"""Fixation-to-state assignment and transition-matrix estimation.

States are meta-cluster ids; the matrix is row-stochastic (row = source
state, column = destination), built from consecutive fixation pairs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .clustering import MetaCluster
from .errors import ClusteringError, StatisticsError
from .fixation import FixationEvent


@dataclass(frozen=True)
class StateSequence:
    labels: tuple[int, ...]  # meta-cluster id per kept fixation
    timestamps: tuple[int, ...]  # fixation start times, nanoseconds
    breaks: tuple[int, ...] = ()  # positions after which the chain is broken

    def __post_init__(self):
        if len(self.labels) != len(self.timestamps):
            raise ValueError("labels and timestamps must have equal length")


@dataclass(frozen=True)
class TransitionMatrix:
    states: tuple[int, ...]
    counts: np.ndarray  # K x K non-negative integers
    probs: np.ndarray  # K x K row-normalized, zero rows left all-zero
    zero_rows: tuple[int, ...]  # states with no outgoing transitions

    def __post_init__(self):
        self.counts.setflags(write=False)
        self.probs.setflags(write=False)


def assign_meta_cluster_states(
    fixations: list[FixationEvent],
    metas: list[MetaCluster],
    max_distance: float = math.inf,
) -> StateSequence:
    """Map each fixation centroid to the nearest meta-cluster center.

    Ties go to the lowest meta-cluster id.  Fixations farther than
    ``max_distance`` from every center are dropped and recorded as chain
    breaks so that no transition is counted across them.
    """
    if not metas:
        raise ClusteringError("no meta-clusters to assign fixations to")
    centers = np.asarray([m.center for m in metas], dtype=float)
    ids = [m.id for m in metas]

    labels: list[int] = []
    timestamps: list[int] = []
    breaks: list[int] = []
    for f in fixations:
        d = np.hypot(centers[:, 0] - f.centroid_px[0],
                     centers[:, 1] - f.centroid_px[1])
        best = int(np.lexsort((ids, d))[0])
        if d[best] > max_distance:
            if labels:
                breaks.append(len(labels) - 1)
            continue
        labels.append(ids[best])
        timestamps.append(f.start)
    return StateSequence(tuple(labels), tuple(timestamps),
                         tuple(sorted(set(breaks))))


def build_transition_matrix(seq: StateSequence, k: int) -> TransitionMatrix:
    """Count consecutive label pairs and normalize row-wise.

    Self-transitions are counted; pairs spanning a chain break are not.
    """
    if len(seq.labels) < 2:
        raise StatisticsError("insufficient transitions: need >= 2 states")
    counts = np.zeros((k, k), dtype=np.int64)
    broken = set(seq.breaks)
    for pos in range(len(seq.labels) - 1):
        if pos in broken:
            continue
        counts[seq.labels[pos], seq.labels[pos + 1]] += 1

    probs = np.zeros((k, k), dtype=float)
    zero_rows = []
    row_sums = counts.sum(axis=1)
    for i in range(k):
        if row_sums[i] > 0:
            probs[i] = counts[i] / row_sums[i]
        else:
            zero_rows.append(i)
    return TransitionMatrix(
        states=tuple(range(k)),
        counts=counts,
        probs=probs,
        zero_rows=tuple(zero_rows),
    )
