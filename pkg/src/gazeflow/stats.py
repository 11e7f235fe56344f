"""Distribution comparison machinery.

Two-sample Kolmogorov-Smirnov test over empirical CDFs, shared-edge 2-D
angle histograms, Jensen-Shannon distance, and angle summaries.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ParameterError, StatisticsError


@dataclass(frozen=True)
class KsResult:
    statistic: float  # sup |ECDF1 - ECDF2|, in [0, 1]
    p_value: float
    n1: int
    n2: int


@dataclass(frozen=True)
class Histogram2D:
    az_edges: np.ndarray  # strictly increasing, uniform width
    el_edges: np.ndarray
    mass: np.ndarray  # sums to 1

    def __post_init__(self):
        self.az_edges.setflags(write=False)
        self.el_edges.setflags(write=False)
        self.mass.setflags(write=False)


def _kolmogorov_sf(lam: float) -> float:
    """Asymptotic Kolmogorov survival function Q(lam) = 2 sum (-1)^(k-1) e^(-2 k^2 lam^2)."""
    if lam <= 0:
        return 1.0
    total = 0.0
    for k in range(1, 101):
        term = 2.0 * (-1.0) ** (k - 1) * math.exp(-2.0 * k * k * lam * lam)
        total += term
        if abs(term) < 1e-10:
            break
    return min(1.0, max(0.0, total))


def ks_two_sample(a, b) -> KsResult:
    """Two-sample K-S statistic via a merged ECDF sweep, asymptotic p-value."""
    a = np.sort(np.asarray(list(a), dtype=float))
    b = np.sort(np.asarray(list(b), dtype=float))
    n1, n2 = len(a), len(b)
    if n1 == 0 or n2 == 0:
        raise StatisticsError("K-S test needs two non-empty samples")

    grid = np.concatenate([a, b])
    cdf_a = np.searchsorted(a, grid, side="right") / n1
    cdf_b = np.searchsorted(b, grid, side="right") / n2
    d = float(np.abs(cdf_a - cdf_b).max())

    n_eff = n1 * n2 / (n1 + n2)
    p = _kolmogorov_sf(math.sqrt(n_eff) * d)
    return KsResult(statistic=d, p_value=p, n1=n1, n2=n2)


def shared_edges(values_a, values_b, bin_width: float) -> np.ndarray:
    """Uniform bin edges covering both value sets, anchored at multiples of
    the bin width."""
    if bin_width <= 0:
        raise ParameterError("bin_width must be > 0")
    vals = np.concatenate([np.asarray(values_a, float),
                           np.asarray(values_b, float)])
    if len(vals) == 0:
        raise StatisticsError("cannot build edges from empty samples")
    lo = math.floor(vals.min() / bin_width)
    hi = math.ceil(vals.max() / bin_width)
    if hi == lo:  # all values on a single edge still need one bin
        hi = lo + 1
    return np.arange(lo, hi + 1) * bin_width


def histogram_2d(azimuths, elevations, bin_width: float = 1.0,
                 az_edges=None, el_edges=None) -> Histogram2D:
    """Normalized 2-D histogram over (azimuth, elevation) degrees.

    Edges may be supplied to share binning across sessions; otherwise
    uniform edges covering the input range are built.  Samples on the
    final right edge fall into the last bin.
    """
    az = np.asarray(list(azimuths), dtype=float)
    el = np.asarray(list(elevations), dtype=float)
    if len(az) == 0 or len(az) != len(el):
        raise StatisticsError("histogram needs non-empty paired samples")
    if az_edges is None:
        az_edges = shared_edges(az, az, bin_width)
    if el_edges is None:
        el_edges = shared_edges(el, el, bin_width)
    az_edges = np.asarray(az_edges, dtype=float)
    el_edges = np.asarray(el_edges, dtype=float)
    counts, _, _ = np.histogram2d(az, el, bins=(az_edges, el_edges))
    total = counts.sum()
    if total == 0:
        raise StatisticsError("all samples fall outside the histogram edges")
    return Histogram2D(az_edges=az_edges, el_edges=el_edges,
                       mass=counts / total)


def jensen_shannon_distance(p: Histogram2D, q: Histogram2D) -> float:
    """Square root of the base-2 Jensen-Shannon divergence; in [0, 1]."""
    if (p.az_edges.shape != q.az_edges.shape
            or p.el_edges.shape != q.el_edges.shape
            or not np.allclose(p.az_edges, q.az_edges)
            or not np.allclose(p.el_edges, q.el_edges)):
        raise StatisticsError("histograms must share identical bin edges")
    return js_distance_from_mass(p.mass, q.mass)


def js_distance_from_mass(p_mass, q_mass) -> float:
    p = np.asarray(p_mass, dtype=float).ravel()
    q = np.asarray(q_mass, dtype=float).ravel()
    m = 0.5 * (p + q)

    def _kl(x):  # 0 * log(0) := 0
        nz = x > 0
        return float(np.sum(x[nz] * np.log2(x[nz] / m[nz])))

    divergence = 0.5 * _kl(p) + 0.5 * _kl(q)
    return math.sqrt(min(1.0, max(0.0, divergence)))


def summarize_angles(azimuths, elevations):
    """Means and sample standard deviations of the two angle streams.

    Returns (mean_azimuth, std_azimuth, mean_elevation, std_elevation).
    """
    az = np.asarray(list(azimuths), dtype=float)
    el = np.asarray(list(elevations), dtype=float)
    if len(az) == 0 or len(el) == 0:
        raise StatisticsError("cannot summarize empty angle streams")
    std_az = float(az.std(ddof=1)) if len(az) > 1 else 0.0
    std_el = float(el.std(ddof=1)) if len(el) > 1 else 0.0
    return float(az.mean()), std_az, float(el.mean()), std_el
