"""Monte-Carlo weights of wheel graphs with the harmonic angle function.

Configurations are m rim points in the upper half-plane with the center pinned
(at ``i`` by default), which removes the scaling/translation gauge. The density
is ``det J`` where row e of J is the gradient of the angle along edge e with
respect to ``(x_1, y_1, ..., x_m, y_m)``.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

# Frozen once by matching the reversed 2-wheel to alpha_2 = 1/48; see `calibrate`.
CALIBRATION = Fraction(1, 2)
CALIBRATION_SEED = 20240601

_CHUNK = 250_000


@dataclass(frozen=True)
class WheelGraph:
    rim_count: int
    reversed: bool = False
    edges: tuple[tuple[int, int], ...] = field(init=False)

    def __post_init__(self):
        m = self.rim_count
        if m < 2:
            raise ValueError("a wheel needs at least two rim vertices")
        rim = tuple((j, j % m + 1) for j in range(1, m + 1))
        if self.reversed:
            spokes = tuple((0, j) for j in range(1, m + 1))
        else:
            spokes = tuple((j, 0) for j in range(1, m + 1))
        object.__setattr__(self, "edges", rim + spokes)

    @property
    def label(self) -> str:
        return f"W{self.rim_count}{'v' if self.reversed else ''}"


def wheel(m: int, reversed: bool = False) -> WheelGraph:
    return WheelGraph(m, reversed)


@dataclass(frozen=True)
class WeightEstimate:
    mean: float
    std_error: float
    median_of_means: float
    samples: int
    batches: int
    seed: int
    graph: WheelGraph
    calibration: Fraction = CALIBRATION

    def as_dict(self) -> dict:
        return {
            "graph": self.graph.label,
            "rim_count": self.graph.rim_count,
            "reversed": self.graph.reversed,
            "mean": self.mean,
            "std_error": self.std_error,
            "median_of_means": self.median_of_means,
            "samples": self.samples,
            "batches": self.batches,
            "seed": self.seed,
            "calibration": f"{self.calibration.numerator}/{self.calibration.denominator}",
        }


def harmonic_angle(z, w):
    """Arg((w - z) / (w - conj z)) in (-pi, pi]; vectorised over numpy arrays."""
    z = np.asarray(z, dtype=complex)
    w = np.asarray(w, dtype=complex)
    if np.any(z.imag <= 0) or np.any(w.imag <= 0):
        raise ValueError("points must lie in the open upper half-plane")
    if np.any(z == w):
        raise ValueError("coincident points")
    phi = np.angle((w - z) / (w - np.conj(z)))
    phi = np.where(phi <= -np.pi, np.pi, phi)
    return phi if phi.ndim else float(phi)


def angle_gradient(z, w):
    """Gradient of harmonic_angle(z, w) as (d/dx_z, d/dy_z, d/dx_w, d/dy_w).

    Uses d Arg(u) = (Re u dIm u - Im u dRe u) / |u|^2 for u = w - z and u = w - conj z.
    """
    z = np.asarray(z, dtype=complex)
    w = np.asarray(w, dtype=complex)
    a = w.real - z.real
    b1 = w.imag - z.imag
    b2 = w.imag + z.imag
    r1 = a * a + b1 * b1
    r2 = a * a + b2 * b2
    dzx = b1 / r1 - b2 / r2
    dzy = -a / r1 - a / r2
    return dzx, dzy, -dzx, a / r1 - a / r2


def jacobian(edges: Sequence[tuple[int, int]], rim, center: complex = 1j) -> np.ndarray:
    """Edge-by-coordinate Jacobian; rim has shape (m,) or (N, m), vertex 0 is the center."""
    rim = np.asarray(rim, dtype=complex)
    single = rim.ndim == 1
    if single:
        rim = rim[None, :]
    N, m = rim.shape
    pts = np.concatenate([np.full((N, 1), center, dtype=complex), rim], axis=1)
    J = np.zeros((N, len(edges), 2 * m))
    for r, (s, t) in enumerate(edges):
        dzx, dzy, dwx, dwy = angle_gradient(pts[:, s], pts[:, t])
        if s:
            J[:, r, 2 * (s - 1)] += dzx
            J[:, r, 2 * (s - 1) + 1] += dzy
        if t:
            J[:, r, 2 * (t - 1)] += dwx
            J[:, r, 2 * (t - 1) + 1] += dwy
    return J[0] if single else J


def integrand(G: WheelGraph, rim, center: complex = 1j):
    """det J at one configuration (shape (m,)) or a batch (shape (N, m))."""
    rim = np.asarray(rim, dtype=complex)
    if rim.shape[-1] != G.rim_count:
        raise ValueError(f"expected {G.rim_count} rim points")
    if np.any(rim.imag <= 0):
        raise ValueError("rim points must lie in the open upper half-plane")
    pts = np.concatenate([np.broadcast_to(center, rim.shape[:-1] + (1,)), rim], axis=-1)
    diffs = pts[..., :, None] - pts[..., None, :]
    off = ~np.eye(pts.shape[-1], dtype=bool)
    if np.any(diffs[..., off] == 0):
        raise ValueError("coincident points make the integrand singular")
    d = np.linalg.det(jacobian(G.edges, rim, center))
    return float(d) if np.ndim(d) == 0 else d


def _sample(rng: np.random.Generator, n: int, m: int):
    x = rng.standard_cauchy((n, m))
    y = np.abs(rng.standard_cauchy((n, m)))
    # Cauchy(0,1) for x times half-Cauchy for y
    log_density = np.sum(
        -np.log(np.pi * (1 + x * x)) + np.log(2.0) - np.log(np.pi * (1 + y * y)), axis=1
    )
    return x + 1j * y, log_density


def _batch_sum(G: WheelGraph, size: int, seed: int, batch: int, center: complex) -> float:
    rng = np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(batch,)))
    parts = []
    left = size
    while left:
        n = min(left, _CHUNK)
        rim, logp = _sample(rng, n, G.rim_count)
        vals = np.linalg.det(jacobian(G.edges, rim, center)) * np.exp(-logp)
        parts.append(math.fsum(vals.tolist()))
        left -= n
    return math.fsum(parts)


def raw_weight_samples_mean(
    G: WheelGraph, samples: int, batches: int, seed: int, workers: int = 1, center: complex = 1j
) -> tuple[np.ndarray, np.ndarray]:
    """Per-batch means of det J / density (no normalisation) and batch sizes."""
    if batches < 8 or samples < batches:
        raise ValueError("need samples >= batches >= 8")
    if complex(center).imag <= 0:
        raise ValueError("center must lie in the upper half-plane")
    sizes = [samples // batches + (1 if b < samples % batches else 0) for b in range(batches)]
    jobs = [(G, sizes[b], seed, b, center) for b in range(batches)]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            sums = list(pool.map(lambda a: _batch_sum(*a), jobs))
    else:
        sums = [_batch_sum(*a) for a in jobs]
    sizes_arr = np.array(sizes, dtype=float)
    return np.array(sums) / sizes_arr, sizes_arr


def normalisation(m: int) -> float:
    return 1.0 / (2 * math.pi) ** (2 * m)


def estimate_weight(
    G: WheelGraph,
    samples: int,
    batches: int,
    seed: int,
    workers: int = 1,
    center: complex = 1j,
    calibration: Fraction = CALIBRATION,
) -> WeightEstimate:
    """Importance-sampled c * (2 pi)^(-2m) * integral of det J over H^m."""
    means, sizes = raw_weight_samples_mean(G, samples, batches, seed, workers, center)
    scale = normalisation(G.rim_count) * float(calibration)
    means = means * scale
    total = math.fsum((means * sizes).tolist()) / samples
    se = float(np.std(means, ddof=1) / math.sqrt(batches))
    return WeightEstimate(
        mean=total,
        std_error=se,
        median_of_means=float(np.median(means)),
        samples=samples,
        batches=batches,
        seed=seed,
        graph=G,
        calibration=calibration,
    )


def calibrate(samples: int = 10_000_000, batches: int = 100, seed: int = CALIBRATION_SEED, max_denominator: int = 4):
    """Rederive the calibration constant from the reversed 2-wheel.

    Returns the small-height rational nearest to alpha_2 / raw estimate and the raw
    estimate itself. The result is meant to be compared against ``CALIBRATION``.
    """
    from .duflo import duflo_series

    raw = estimate_weight(wheel(2, reversed=True), samples, batches, seed, calibration=Fraction(1))
    target = float(duflo_series(1)[2])
    ratio = target / raw.mean
    return Fraction(ratio).limit_denominator(max_denominator), raw
