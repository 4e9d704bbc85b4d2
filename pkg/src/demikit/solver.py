"""Krasnoselskij-Mann iteration x_{n+1} = (1-t_n) x_n + t_n T x_n.

Stopping is by fixed-point residual ||x - Tx||, by step size, or by an
iteration cap; geometric escape (norm blowup or leaving the domain) is
reported as divergence instead of an exception so parameter sweeps can
record it as data.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import FixUnknownError, KOutOfRangeError, StartOutOfDomainError, \
    StepOutOfRangeError
from .mappings import FixedPointSet, Mapping
from .space import as_vector, convex_combination, norm

DEFAULT_RESIDUAL_TOL = 1e-8
DEFAULT_STEP_TOL = 0.0  # disabled
DEFAULT_MAX_ITERS = 10000
DIVERGENCE_NORM = 1e12


@dataclass(frozen=True)
class StepSchedule:
    """Step sequence t_n in (0, 1]: a constant or an index-indexed rule."""

    kind: str  # "constant" | "sequence"
    value: float | None = None
    generator: Callable[[int], float] | None = None

    @staticmethod
    def constant(t: float) -> "StepSchedule":
        t = float(t)
        if not 0.0 < t <= 1.0:
            raise StepOutOfRangeError(f"step t={t} outside (0, 1]")
        return StepSchedule(kind="constant", value=t)

    @staticmethod
    def from_function(fn: Callable[[int], float]) -> "StepSchedule":
        return StepSchedule(kind="sequence", generator=fn)

    def step(self, n: int) -> float:
        t = self.value if self.kind == "constant" else float(self.generator(n))
        if not 0.0 < t <= 1.0:
            raise StepOutOfRangeError(f"step t_{n}={t} outside (0, 1]")
        return t


@dataclass
class Trajectory:
    """The iterate sequence with residuals, realized steps and the reason
    iteration stopped.

    residuals[i] is ||x_i - T(x_i)|| (nan only for a diverged final
    iterate on which T could not be evaluated); steps has one entry per
    realized update, so len(steps) == iterations == len(iterates) - 1.
    """

    iterates: list
    residuals: list
    steps: list
    termination: str  # "residual-met" | "step-met" | "max-iters" | "diverged"
    residual_tol: float
    step_tol: float
    fixed_points: FixedPointSet | None = None

    @property
    def iterations(self) -> int:
        return len(self.iterates) - 1

    @property
    def final(self) -> np.ndarray:
        return self.iterates[-1]

    def distances_to(self, point) -> list:
        p = as_vector(point)
        return [norm(x - p) for x in self.iterates]

    def to_csv(self) -> str:
        """17-significant-digit CSV: iter, t_n, residual, one dist_to_fix
        column per declared fixed point, then the coordinates."""

        def f17(v: float) -> str:
            return "nan" if np.isnan(v) else f"{v:.17g}"

        dim = self.iterates[0].shape[0]
        fix = []
        if self.fixed_points is not None and self.fixed_points.kind == "known":
            fix = list(self.fixed_points.points)
        header = ["iter", "t_n", "residual"]
        header += [f"dist_to_fix_{j}" for j in range(len(fix))]
        header += [f"x_{a}" for a in range(dim)]
        lines = [",".join(header)]
        for i, x in enumerate(self.iterates):
            row = [str(i),
                   f17(self.steps[i]) if i < len(self.steps) else "",
                   f17(self.residuals[i])]
            row += [f17(norm(x - p)) for p in fix]
            row += [f17(float(v)) for v in x]
            lines.append(",".join(row))
        return "\n".join(lines) + "\n"


def mann_iterate(mapping: Mapping, x0, schedule: StepSchedule,
                 residual_tol: float = DEFAULT_RESIDUAL_TOL,
                 step_tol: float = DEFAULT_STEP_TOL,
                 max_iters: int = DEFAULT_MAX_ITERS) -> Trajectory:
    """Iterate x_{n+1} = x_n + t_n (T x_n - x_n) from x0.

    Stops at the first of: residual <= residual_tol (checked at every
    iterate, x0 included), ||x_{n+1} - x_n|| <= step_tol (only when
    step_tol > 0), n == max_iters, or divergence (norm above 1e12 or an
    iterate outside the domain).
    """
    x = as_vector(x0)
    if not mapping.domain.contains(x):
        raise StartOutOfDomainError(f"x0={x.tolist()} outside the domain")
    max_iters = int(max_iters)
    if max_iters < 1:
        raise ValueError("max_iters must be >= 1")

    iterates = [x.copy()]
    tx = mapping.apply(x)
    residuals = [norm(x - tx)]
    steps: list = []
    termination = None

    n = 0
    while True:
        if residuals[-1] <= residual_tol:
            termination = "residual-met"
            break
        if n == max_iters:
            termination = "max-iters"
            break
        t = schedule.step(n)
        x_next = convex_combination(x, tx, t)
        steps.append(t)
        iterates.append(x_next)
        n += 1
        if norm(x_next) > DIVERGENCE_NORM or not mapping.domain.contains(x_next):
            try:
                residuals.append(norm(x_next - mapping.apply(x_next)))
            except Exception:  # noqa: BLE001 - T may be undefined out there
                residuals.append(float("nan"))
            termination = "diverged"
            break
        tx_next = mapping.apply(x_next)
        residuals.append(norm(x_next - tx_next))
        if step_tol > 0.0 and norm(x_next - x) <= step_tol:
            x = x_next
            termination = "step-met"
            break
        x = x_next
        tx = tx_next

    return Trajectory(iterates=iterates, residuals=residuals, steps=steps,
                      termination=termination, residual_tol=residual_tol,
                      step_tol=step_tol, fixed_points=mapping.fixed_points)


def krasnoselskij(mapping: Mapping, x0, lam: float,
                  residual_tol: float = DEFAULT_RESIDUAL_TOL,
                  step_tol: float = DEFAULT_STEP_TOL,
                  max_iters: int = DEFAULT_MAX_ITERS) -> Trajectory:
    """Constant-step special case of :func:`mann_iterate`."""
    return mann_iterate(mapping, x0, StepSchedule.constant(lam),
                        residual_tol=residual_tol, step_tol=step_tol,
                        max_iters=max_iters)


def solve_demicontractive(mapping: Mapping, k: float, x0,
                          residual_tol: float = DEFAULT_RESIDUAL_TOL,
                          step_tol: float = DEFAULT_STEP_TOL,
                          max_iters: int = DEFAULT_MAX_ITERS):
    """Pick the step from a certified constant k and iterate.

    The admissible constant-step interval is (0, 1-k); its midpoint
    (1-k)/2 maximizes the per-step decrease coefficient t((1-k) - t), so
    that is the default choice.  Returns (trajectory, lambda_star).
    """
    k = float(k)
    if not 0.0 <= k < 1.0:
        raise KOutOfRangeError(f"k={k} outside [0, 1)")
    lam_star = 0.5 * (1.0 - k)
    traj = krasnoselskij(mapping, x0, lam_star, residual_tol=residual_tol,
                         step_tol=step_tol, max_iters=max_iters)
    return traj, lam_star


@dataclass
class FejerReport:
    """Monotonicity audit of distances from iterates to declared fixed
    points."""

    verdict: str  # "pass" | "fail"
    first_violation: dict | None
    max_increase: float
    tol: float

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"


def audit_fejer(traj: Trajectory, fix: FixedPointSet,
                tol: float = 1e-10) -> FejerReport:
    """Check ||x_{n+1} - y|| <= ||x_n - y|| + tol along the trajectory for
    every declared fixed point y; report the first violation."""
    if fix.kind != "known":
        raise FixUnknownError("Fejer audit needs declared fixed points")
    first = None
    max_inc = -float("inf")
    for j, p in enumerate(fix.points):
        dists = traj.distances_to(p)
        for i in range(len(dists) - 1):
            inc = dists[i + 1] - dists[i]
            if inc > max_inc:
                max_inc = inc
            if inc > tol and first is None:
                first = {"index": i, "fix_index": j, "increase": inc}
    verdict = "fail" if max_inc > tol else "pass"
    return FejerReport(verdict=verdict, first_violation=first,
                       max_increase=max_inc, tol=tol)
