"""R^n with the standard inner product, plus sampleable convex domains.

Points are 1-D float64 numpy arrays.  All comparisons here are exact;
numerical tolerances belong to the certifiers, not to the space.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimMismatchError, StepOutOfRangeError, UnboundedDomainError

Vector = np.ndarray


def as_vector(x) -> Vector:
    """Validate and normalize a point: 1-D, nonempty, finite, float64."""
    arr = np.asarray(x, dtype=np.float64)
    if arr.ndim == 0:
        arr = arr.reshape(1)
    if arr.ndim != 1 or arr.size < 1:
        raise ValueError(f"expected a nonempty 1-D point, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("point has non-finite coordinates")
    return arr


def inner(x: Vector, y: Vector) -> float:
    """Standard inner product sum_i x_i y_i."""
    x = as_vector(x)
    y = as_vector(y)
    if x.shape[0] != y.shape[0]:
        raise DimMismatchError(f"dim {x.shape[0]} vs {y.shape[0]}")
    return float(np.dot(x, y))


def norm(x: Vector) -> float:
    """Euclidean norm sqrt(inner(x, x))."""
    x = as_vector(x)
    return float(np.sqrt(np.dot(x, x)))


def convex_combination(x: Vector, y: Vector, t: float) -> Vector:
    """(1-t)*x + t*y for t in [0, 1].

    The endpoints are returned exactly (a copy of x at t=0, of y at t=1);
    interior values use the fused form x + t*(y - x), which keeps the
    combination bit-reproducible for the solver's trajectory anchors.
    """
    x = as_vector(x)
    y = as_vector(y)
    if x.shape[0] != y.shape[0]:
        raise DimMismatchError(f"dim {x.shape[0]} vs {y.shape[0]}")
    t = float(t)
    if not 0.0 <= t <= 1.0:
        raise StepOutOfRangeError(f"t={t} outside [0, 1]")
    if t == 0.0:
        return x.copy()
    if t == 1.0:
        return y.copy()
    return x + t * (y - x)


@dataclass(frozen=True, eq=False)
class Domain:
    """Closed convex subset of R^n: coordinate box, ball, or the whole space."""

    kind: str  # "box" | "ball" | "whole-space"
    dim: int
    lo: np.ndarray | None = None
    hi: np.ndarray | None = None
    center: np.ndarray | None = None
    radius: float | None = None

    @staticmethod
    def box(lo, hi) -> "Domain":
        lo = as_vector(lo)
        hi = as_vector(hi)
        if lo.shape[0] != hi.shape[0]:
            raise DimMismatchError("box bounds must share a dimension")
        if np.any(lo > hi):
            raise ValueError("box needs lo_i <= hi_i on every axis")
        return Domain(kind="box", dim=lo.shape[0], lo=lo, hi=hi)

    @staticmethod
    def ball(center, radius: float) -> "Domain":
        center = as_vector(center)
        radius = float(radius)
        if radius < 0:
            raise ValueError("ball radius must be >= 0")
        return Domain(kind="ball", dim=center.shape[0], center=center, radius=radius)

    @staticmethod
    def whole_space(dim: int) -> "Domain":
        dim = int(dim)
        if dim < 1:
            raise ValueError("dim must be >= 1")
        return Domain(kind="whole-space", dim=dim)

    def contains(self, x) -> bool:
        """Exact membership test (plain inequalities, no tolerance)."""
        x = as_vector(x)
        if x.shape[0] != self.dim:
            raise DimMismatchError(f"dim {x.shape[0]} vs domain dim {self.dim}")
        if self.kind == "box":
            return bool(np.all(self.lo <= x) and np.all(x <= self.hi))
        if self.kind == "ball":
            return norm(x - self.center) <= self.radius
        return True

    def describe(self) -> dict:
        out: dict = {"kind": self.kind, "dim": self.dim}
        if self.kind == "box":
            out["lo"] = self.lo.tolist()
            out["hi"] = self.hi.tolist()
        elif self.kind == "ball":
            out["center"] = self.center.tolist()
            out["radius"] = self.radius
        return out


def grid_sample(domain: Domain, points_per_axis: int) -> np.ndarray:
    """Uniform grid over a box, endpoints included.

    Returns an array of shape (points_per_axis**dim, dim) in lexicographic
    order (first axis slowest).
    """
    if domain.kind != "box":
        raise UnboundedDomainError(f"grids need a box domain, got {domain.kind}")
    points_per_axis = int(points_per_axis)
    if points_per_axis < 2:
        raise ValueError("points_per_axis must be >= 2")
    axes = [np.linspace(domain.lo[i], domain.hi[i], points_per_axis)
            for i in range(domain.dim)]
    mesh = np.meshgrid(*axes, indexing="ij")
    return np.stack([m.reshape(-1) for m in mesh], axis=1)


def collect_samples(domain: Domain, points_per_axis: int, extra_random: int,
                    seed: int, scale: float = 1.0) -> np.ndarray:
    """Certification sample pool: the full grid (boxes only, endpoints
    included) followed by ``extra_random`` random points.

    The fixed ordering (grid first, then randoms) is what makes witness
    tie-breaking reproducible.
    """
    parts = []
    if domain.kind == "box" and points_per_axis >= 2:
        parts.append(grid_sample(domain, points_per_axis))
    if extra_random > 0:
        parts.append(random_sample(domain, extra_random, seed, scale=scale))
    if not parts:
        raise ValueError("no samples: unbounded domain needs extra_random >= 1")
    return np.concatenate(parts, axis=0)


def random_sample(domain: Domain, count: int, seed: int,
                  scale: float = 1.0) -> np.ndarray:
    """Seed-deterministic samples: uniform in a box or ball, Gaussian
    (times ``scale``) on the whole space.  Shape (count, dim)."""
    count = int(count)
    if count < 1:
        raise ValueError("count must be >= 1")
    rng = np.random.default_rng(seed)
    n, d = count, domain.dim
    if domain.kind == "box":
        u = rng.random((n, d))
        return domain.lo + u * (domain.hi - domain.lo)
    if domain.kind == "ball":
        out = np.empty((n, d))
        for i in range(n):
            g = rng.standard_normal(d)
            gn = float(np.sqrt(np.dot(g, g)))
            if gn == 0.0:
                g = np.zeros(d)
                g[0] = 1.0
                gn = 1.0
            r = domain.radius * rng.random() ** (1.0 / d)
            x = domain.center + (r / gn) * g
            # rounding can push a near-boundary sample a few ulps out;
            # contains() is exact, so nudge back until it holds
            while not domain.contains(x):
                x = domain.center + (x - domain.center) * (1.0 - 1e-12)
            out[i] = x
        return out
    return scale * rng.standard_normal((n, d))
