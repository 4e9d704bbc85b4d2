"""Averaged operators T_lam = (1-lam)*I + lam*T and the embedding check.

The central fact being verified: if T is k-demicontractive then T_lam is
quasi-nonexpansive for every lam in (0, 1-k).  ``verify_lemma`` tests the
resulting inequality on a sample pool, together with the equivalent
inner-product form <Tx-x, x-y> <= (k-1)/2 * ||x-Tx||^2 that drives the
proof of that fact.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import FixUnknownError, KOutOfRangeError, LambdaOutOfRangeError
from .mappings import FixedPointSet, Mapping
from .space import Domain, Vector, as_vector, collect_samples, convex_combination, norm

DEFAULT_POINTS_PER_AXIS = 201
DEFAULT_EXTRA_RANDOM = 1000
DEFAULT_SEED = 42
DEFAULT_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class RelaxedMapping:
    """(1-lam)*I + lam*base, sharing base's domain and fixed points.

    ``base`` is always an unrelaxed Mapping: relaxing a RelaxedMapping
    flattens to a single equivalent relaxation of the original operator
    rather than nesting.
    """

    base: Mapping
    lam: float

    @property
    def label(self) -> str:
        return f"{self.base.label}~{self.lam:g}"

    @property
    def domain(self) -> Domain:
        return self.base.domain

    @property
    def fixed_points(self) -> FixedPointSet:
        return self.base.fixed_points

    def apply(self, x) -> Vector:
        x = as_vector(x)
        return convex_combination(x, self.base.apply(x), self.lam)

    def apply_many(self, xs: np.ndarray) -> np.ndarray:
        xs = np.asarray(xs, dtype=np.float64)
        out = np.empty_like(xs)
        for i in range(xs.shape[0]):
            out[i] = self.apply(xs[i])
        return out


def averaged(mapping, lam: float) -> RelaxedMapping:
    """Construct T_lam for lam in (0, 1]; lam=1 recovers T pointwise."""
    lam = float(lam)
    if not 0.0 < lam <= 1.0:
        raise LambdaOutOfRangeError(f"lambda={lam} outside (0, 1]")
    if isinstance(mapping, RelaxedMapping):
        return RelaxedMapping(base=mapping.base, lam=mapping.lam * lam)
    return RelaxedMapping(base=mapping, lam=lam)


@dataclass
class FixPreservationReport:
    """Fixed points survive relaxation; non-fixed points move by exactly
    lam * ||Tx - x||."""

    label: str
    lam: float
    verdict: str  # "pass" | "fail"
    max_fix_residual: float
    max_scale_deviation: float
    samples: int
    witnesses: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"


def verify_fix_preservation(mapping: Mapping, lam: float,
                            extra_random: int = 200,
                            seed: int = DEFAULT_SEED,
                            tol: float = 1e-12) -> FixPreservationReport:
    """Check Fix(T) = Fix(T_lam) on declared points and sampled non-fixed
    points (residual scaling ||T_lam x - x|| = lam * ||Tx - x||)."""
    relaxed = averaged(mapping, lam)
    max_fix = 0.0
    witnesses = []
    if mapping.fixed_points.kind == "known":
        for p in mapping.fixed_points.points:
            r = norm(relaxed.apply(p) - p)
            if r > max_fix:
                max_fix = r
            if r > tol:
                witnesses.append({"kind": "fixed-point-moved", "x": p.tolist(),
                                  "residual": r})
    xs = collect_samples(mapping.domain, 0, extra_random, seed)
    max_dev = 0.0
    checked = 0
    for i in range(xs.shape[0]):
        x = xs[i]
        base_res = norm(mapping.apply(x) - x)
        if base_res <= 1e-9:
            continue
        checked += 1
        dev = abs(norm(relaxed.apply(x) - x) - relaxed.lam * base_res)
        if dev > max_dev:
            max_dev = dev
        if dev > tol:
            witnesses.append({"kind": "residual-scale", "x": x.tolist(),
                              "deviation": dev})
    verdict = "pass" if (max_fix <= tol and max_dev <= tol) else "fail"
    return FixPreservationReport(label=mapping.label, lam=lam, verdict=verdict,
                                 max_fix_residual=max_fix,
                                 max_scale_deviation=max_dev,
                                 samples=checked, witnesses=witnesses)


@dataclass
class LemmaReport:
    """Outcome of testing quasi-nonexpansiveness of T_lam against the
    declared fixed points.

    ``in_lemma_range`` records whether lam < 1 - k, the range in which a
    correct k forces a pass; runs outside that range are labeled rather
    than rejected because the bound is one-directional and the boundary
    can still pass.  ``anomaly`` is set when a violation appears inside
    the range (wrong k, or a numerical problem).
    """

    lam: float
    k: float
    in_lemma_range: bool
    verdict: str  # "pass" | "fail"
    label: str
    max_violation: float
    witness_x: list | None
    witness_y: list | None
    samples: int
    tol: float
    inner_max_violation: float
    inner_witness_x: list | None
    anomaly: bool

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def to_json_dict(self) -> dict:
        return {
            "lambda": self.lam,
            "k": self.k,
            "in_lemma_range": self.in_lemma_range,
            "verdict": self.verdict,
            "max_violation": self.max_violation,
            "witness_x": self.witness_x,
            "witness_y": self.witness_y,
            "samples": self.samples,
            "label": self.label,
            "tol": self.tol,
            "inner_max_violation": self.inner_max_violation,
            "inner_witness_x": self.inner_witness_x,
            "anomaly": self.anomaly,
        }


def verify_lemma(mapping: Mapping, k: float, lam: float,
                 points_per_axis: int = DEFAULT_POINTS_PER_AXIS,
                 extra_random: int = DEFAULT_EXTRA_RANDOM,
                 seed: int = DEFAULT_SEED,
                 tol: float = DEFAULT_TOL) -> LemmaReport:
    """Test ||T_lam x - y|| <= ||x - y|| for sampled x and declared fixed
    points y, plus the inner-product reformulation
    <Tx - x, x - y> <= (k-1)/2 * ||x - Tx||^2 at the same samples.
    """
    if mapping.fixed_points.kind != "known":
        raise FixUnknownError(f"{mapping.label} has no declared fixed points")
    k = float(k)
    if not 0.0 <= k < 1.0:
        raise KOutOfRangeError(f"k={k} outside [0, 1)")
    relaxed = averaged(mapping, lam)  # validates lam in (0, 1]
    lam = relaxed.lam

    xs = collect_samples(mapping.domain, points_per_axis, extra_random, seed)
    fp = mapping.fixed_points.as_array()
    relaxed_tx = relaxed.apply_many(xs)
    tx = mapping.apply_many(xs)

    qne_viol, qi, qm = _kernels.fix_max_qne(xs, relaxed_tx, fp)
    # <Tx-x, x-y> <= (k-1)/2 ||x-Tx||^2  <=>  <x-Tx, x-y> >= (1-k)/2 ||Tx-x||^2
    inner_viol, ii, _im = _kernels.fix_max_inner(xs, tx, fp, 0.5 * (1.0 - k))

    in_range = lam < 1.0 - k
    verdict = "pass" if (qne_viol <= tol and inner_viol <= tol) else "fail"
    return LemmaReport(
        lam=lam,
        k=k,
        in_lemma_range=in_range,
        verdict=verdict,
        label=mapping.label,
        max_violation=qne_viol,
        witness_x=xs[qi].tolist() if qi >= 0 else None,
        witness_y=fp[qm].tolist() if qm >= 0 else None,
        samples=int(xs.shape[0]),
        tol=tol,
        inner_max_violation=inner_viol,
        inner_witness_x=xs[ii].tolist() if ii >= 0 else None,
        anomaly=bool(in_range and verdict == "fail"),
    )
