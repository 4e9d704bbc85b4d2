"""Self-maps of a domain with declared fixed-point sets.

The bundled gallery (labels "t1".."t5") covers the standard corner cases
of the four operator classes; the scaled-reflection family x -> -alpha*x
is the randomizable oracle with closed-form constants.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import AlphaOutOfRangeError, DimMismatchError, UnknownMappingError
from .space import Domain, Vector, as_vector, grid_sample, norm, random_sample


@dataclass(frozen=True, eq=False)
class FixedPointSet:
    """Declared knowledge about Fix(T): a finite known set, known-empty,
    or unknown."""

    kind: str  # "known" | "empty" | "unknown"
    points: tuple = ()

    @staticmethod
    def known(points) -> "FixedPointSet":
        pts = tuple(as_vector(p) for p in points)
        if not pts:
            raise ValueError("known fixed-point set must be nonempty")
        return FixedPointSet(kind="known", points=pts)

    @staticmethod
    def empty() -> "FixedPointSet":
        return FixedPointSet(kind="empty")

    @staticmethod
    def unknown() -> "FixedPointSet":
        return FixedPointSet(kind="unknown")

    def as_array(self) -> np.ndarray:
        if self.kind != "known":
            raise ValueError("no points to stack")
        return np.stack(self.points, axis=0)


@dataclass(frozen=True, eq=False)
class Mapping:
    """A deterministic self-map T of a domain.

    ``fn`` receives and returns a 1-D float64 array.  The declared
    fixed-point set is construction metadata; nothing verifies that T is
    actually a self-map (see :func:`check_self_map`).
    """

    label: str
    domain: Domain
    fn: Callable[[np.ndarray], np.ndarray]
    fixed_points: FixedPointSet
    info: dict = field(default_factory=dict)

    def apply(self, x) -> Vector:
        x = as_vector(x)
        if x.shape[0] != self.domain.dim:
            raise DimMismatchError(
                f"point dim {x.shape[0]} vs mapping dim {self.domain.dim}")
        out = np.asarray(self.fn(x), dtype=np.float64).reshape(-1)
        return out

    def apply_many(self, xs: np.ndarray) -> np.ndarray:
        """Row-wise evaluation; shape (n, dim) -> (n, dim)."""
        xs = np.asarray(xs, dtype=np.float64)
        out = np.empty_like(xs)
        for i in range(xs.shape[0]):
            out[i] = self.apply(xs[i])
        return out


def make_t1() -> Mapping:
    """x -> 1 + x on [0, 1]; no fixed points; not a self-map (by design)."""
    return Mapping(
        label="t1",
        domain=Domain.box([0.0], [1.0]),
        fn=lambda x: 1.0 + x,
        fixed_points=FixedPointSet.empty(),
    )


def make_t2() -> Mapping:
    """x -> 2 - x on [0, 2]; Fix = {1}."""
    return Mapping(
        label="t2",
        domain=Domain.box([0.0], [2.0]),
        fn=lambda x: 2.0 - x,
        fixed_points=FixedPointSet.known([[1.0]]),
    )


def make_t3() -> Mapping:
    """x -> 1/x on [1/2, 2]; Fix = {1}."""
    return Mapping(
        label="t3",
        domain=Domain.box([0.5], [2.0]),
        fn=lambda x: 1.0 / x,
        fixed_points=FixedPointSet.known([[1.0]]),
    )


def make_t4() -> Mapping:
    """x -> (x^2 + 2)/(x + 1) on [0, 2]; Fix = {2}."""
    return Mapping(
        label="t4",
        domain=Domain.box([0.0], [2.0]),
        fn=lambda x: (x * x + 2.0) / (x + 1.0),
        fixed_points=FixedPointSet.known([[2.0]]),
    )


def _t5_fn(x: np.ndarray) -> np.ndarray:
    # constant branch on [0, 1), strict comparison at the jump
    return np.where(x < 1.0, 0.875, 0.25)


def make_t5() -> Mapping:
    """x -> 7/8 on [0, 1), 1 -> 1/4; Fix = {7/8}; discontinuous at 1."""
    return Mapping(
        label="t5",
        domain=Domain.box([0.0], [1.0]),
        fn=_t5_fn,
        fixed_points=FixedPointSet.known([[0.875]]),
    )


def make_scaled_reflection(alpha: float, dim: int = 1) -> Mapping:
    """x -> -alpha*x on R^dim for alpha > 1; Fix = {0}.

    The minimal demicontractive constant is (alpha-1)/(alpha+1): with
    y = 0 the defining inequality reads alpha^2|x|^2 <= |x|^2 +
    k(1+alpha)^2|x|^2, tight at that k for every x.  The matching
    inner-product constant is 1/(alpha+1), and the relaxation bound
    1 - k = 2/(alpha+1) is attained with equality.
    """
    alpha = float(alpha)
    dim = int(dim)
    if not alpha > 1.0:
        raise AlphaOutOfRangeError(f"alpha={alpha} must be > 1")
    if dim < 1:
        raise ValueError("dim must be >= 1")
    k_min = (alpha - 1.0) / (alpha + 1.0)
    return Mapping(
        label=f"reflection:{alpha:g}:{dim}",
        domain=Domain.whole_space(dim),
        fn=lambda x: -alpha * x,
        fixed_points=FixedPointSet.known([np.zeros(dim)]),
        info={
            "alpha": alpha,
            "dc_constant": k_min,
            "cond_a_constant": 1.0 / (alpha + 1.0),
            "sharp_lambda": 2.0 / (alpha + 1.0),
        },
    )


GALLERY_LABELS = ("t1", "t2", "t3", "t4", "t5")

_FACTORIES = {
    "t1": make_t1,
    "t2": make_t2,
    "t3": make_t3,
    "t4": make_t4,
    "t5": make_t5,
}


def gallery() -> list[Mapping]:
    """The five bundled mappings, in label order."""
    return [_FACTORIES[name]() for name in GALLERY_LABELS]


def get_mapping(label: str) -> Mapping:
    """Resolve "t1".."t5" or "reflection:<alpha>:<dim>"."""
    if label in _FACTORIES:
        return _FACTORIES[label]()
    if label.startswith("reflection:"):
        parts = label.split(":")
        if len(parts) == 3:
            try:
                return make_scaled_reflection(float(parts[1]), int(parts[2]))
            except (ValueError, AlphaOutOfRangeError) as exc:
                raise UnknownMappingError(f"{label}: {exc}") from exc
    raise UnknownMappingError(label)


@dataclass
class SelfMapReport:
    """Outcome of sampling T over its domain and testing range containment."""

    label: str
    verdict: str  # "pass" | "fail"
    samples: int
    escapes: list  # [(x, Tx), ...] up to a cap

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"


def check_self_map(mapping: Mapping, samples: int = 1000, seed: int = 42,
                   points_per_axis: int = 201, max_witnesses: int = 10) -> SelfMapReport:
    """Evaluate T on a grid (boxes) plus random samples and report every
    point whose image leaves the domain."""
    xs_parts = []
    if mapping.domain.kind == "box":
        xs_parts.append(grid_sample(mapping.domain, points_per_axis))
    if samples > 0:
        xs_parts.append(random_sample(mapping.domain, samples, seed))
    xs = np.concatenate(xs_parts, axis=0)
    escapes = []
    for i in range(xs.shape[0]):
        tx = mapping.apply(xs[i])
        if not mapping.domain.contains(tx):
            if len(escapes) < max_witnesses:
                escapes.append((xs[i].copy(), tx.copy()))
    verdict = "pass" if not escapes else "fail"
    return SelfMapReport(label=mapping.label, verdict=verdict,
                         samples=int(xs.shape[0]), escapes=escapes)


def fixed_point_residuals(mapping: Mapping) -> list[float]:
    """norm(T(p) - p) for each declared fixed point."""
    if mapping.fixed_points.kind != "known":
        return []
    return [norm(mapping.apply(p) - p) for p in mapping.fixed_points.points]
