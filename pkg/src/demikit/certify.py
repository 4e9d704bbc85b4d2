"""Sampling-based certification of the four operator-class inequalities.

A verdict of "holds-on-samples" is exactly that: the inequality survived
every tested sample.  It is evidence, not proof.  "violated" on the
other hand comes with a concrete witness pair and is conclusive.

Classes and their defining inequalities (y ranges over declared fixed
points, x and the pair (x, y') over the sample pool):

    NE      ||Tx - Ty'||  <= ||x - y'||
    QNE     ||Tx - y||    <= ||x - y||
    SPC     ||Tx - Ty'||^2 <= ||x - y'||^2 + k ||(x - y') - (Tx - Ty')||^2
    DC      ||Tx - y||^2   <= ||x - y||^2  + k ||x - Tx||^2
    COND_A  <x - Tx, x - y> >= lam ||Tx - x||^2

DC and COND_A are two spellings of one property, tied together by the
constant relation lam = (1 - k)/2 and by an algebraic identity checked
in :func:`check_slack_identity`.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import _kernels
from .errors import ConstantOutOfRangeError, FixUnknownError, KOutOfRangeError, \
    LambdaOutOfRangeError
from .mappings import Mapping
from .space import as_vector, collect_samples, inner, norm

DEFAULT_POINTS_PER_AXIS = 201
DEFAULT_EXTRA_RANDOM = 1000
DEFAULT_SEED = 42
DEFAULT_TOL = 1e-10

# samples closer than this to a degenerate denominator are skipped by the
# constant estimators (the defining ratios are 0/0 there)
DEGENERATE_FLOOR = 1e-9

CLASS_IDS = ("NE", "QNE", "SPC", "DC", "COND_A")


@dataclass
class Witness:
    """Concrete sample at which an inequality check binds or breaks.

    Oriented so that a violation always reads lhs > rhs, also for the
    COND_A check whose defining inequality points the other way.
    """

    x: list
    y: list
    lhs: float
    rhs: float


@dataclass
class ClassCertificate:
    class_id: str
    verdict: str  # "holds-on-samples" | "violated" | "inapplicable"
    constant: float | None
    witness: Witness | None
    samples: int
    tol: float
    seed: int
    max_violation: float | None = None

    @property
    def holds(self) -> bool:
        return self.verdict == "holds-on-samples"

    def to_json_dict(self) -> dict:
        out = {
            "class_id": self.class_id,
            "verdict": self.verdict,
            "constant": self.constant,
            "witness": None,
            "samples": self.samples,
            "tol": self.tol,
            "seed": self.seed,
            "max_violation": self.max_violation,
        }
        if self.witness is not None:
            out["witness"] = {"x": self.witness.x, "y": self.witness.y,
                              "lhs": self.witness.lhs, "rhs": self.witness.rhs}
        return out


def _mv(viol: float) -> float | None:
    # a -inf scan (no admissible pair) carries no information
    return None if viol == float("-inf") else viol


def _inapplicable(class_id: str, constant, tol: float, seed: int) -> ClassCertificate:
    return ClassCertificate(class_id=class_id, verdict="inapplicable",
                            constant=constant, witness=None, samples=0,
                            tol=tol, seed=seed)


def _pool(mapping: Mapping, points_per_axis: int, extra_random: int, seed: int):
    xs = collect_samples(mapping.domain, points_per_axis, extra_random, seed)
    return xs, mapping.apply_many(xs)


def check_ne(mapping: Mapping,
             points_per_axis: int = DEFAULT_POINTS_PER_AXIS,
             extra_random: int = DEFAULT_EXTRA_RANDOM,
             seed: int = DEFAULT_SEED,
             tol: float = DEFAULT_TOL) -> ClassCertificate:
    """Nonexpansiveness over all ordered sample pairs."""
    xs, tx = _pool(mapping, points_per_axis, extra_random, seed)
    viol, i, j = _kernels.pair_max_ne(xs, tx)
    witness = None
    if viol > tol:
        witness = Witness(x=xs[i].tolist(), y=xs[j].tolist(),
                          lhs=norm(tx[i] - tx[j]), rhs=norm(xs[i] - xs[j]))
    return ClassCertificate(class_id="NE",
                            verdict="violated" if viol > tol else "holds-on-samples",
                            constant=None, witness=witness,
                            samples=int(xs.shape[0]), tol=tol, seed=seed,
                            max_violation=_mv(viol))


def check_qne(mapping: Mapping,
              points_per_axis: int = DEFAULT_POINTS_PER_AXIS,
              extra_random: int = DEFAULT_EXTRA_RANDOM,
              seed: int = DEFAULT_SEED,
              tol: float = DEFAULT_TOL) -> ClassCertificate:
    """Quasi-nonexpansiveness; inapplicable without declared fixed points."""
    if mapping.fixed_points.kind != "known":
        return _inapplicable("QNE", None, tol, seed)
    xs, tx = _pool(mapping, points_per_axis, extra_random, seed)
    fp = mapping.fixed_points.as_array()
    viol, i, m = _kernels.fix_max_qne(xs, tx, fp)
    witness = None
    if viol > tol:
        witness = Witness(x=xs[i].tolist(), y=fp[m].tolist(),
                          lhs=norm(tx[i] - fp[m]), rhs=norm(xs[i] - fp[m]))
    return ClassCertificate(class_id="QNE",
                            verdict="violated" if viol > tol else "holds-on-samples",
                            constant=None, witness=witness,
                            samples=int(xs.shape[0]), tol=tol, seed=seed,
                            max_violation=_mv(viol))


def check_spc(mapping: Mapping, k: float,
              points_per_axis: int = DEFAULT_POINTS_PER_AXIS,
              extra_random: int = DEFAULT_EXTRA_RANDOM,
              seed: int = DEFAULT_SEED,
              tol: float = DEFAULT_TOL) -> ClassCertificate:
    """Strict pseudocontractivity at a given k over ordered sample pairs."""
    k = float(k)
    if not 0.0 <= k < 1.0:
        raise KOutOfRangeError(f"k={k} outside [0, 1)")
    xs, tx = _pool(mapping, points_per_axis, extra_random, seed)
    viol, i, j = _kernels.pair_max_spc(xs, tx, k)
    witness = None
    if viol > tol:
        dx = xs[i] - xs[j]
        dt = tx[i] - tx[j]
        witness = Witness(x=xs[i].tolist(), y=xs[j].tolist(),
                          lhs=norm(dt) ** 2,
                          rhs=norm(dx) ** 2 + k * norm(dx - dt) ** 2)
    return ClassCertificate(class_id="SPC",
                            verdict="violated" if viol > tol else "holds-on-samples",
                            constant=k, witness=witness,
                            samples=int(xs.shape[0]), tol=tol, seed=seed,
                            max_violation=_mv(viol))


def check_dc(mapping: Mapping, k: float,
             points_per_axis: int = DEFAULT_POINTS_PER_AXIS,
             extra_random: int = DEFAULT_EXTRA_RANDOM,
             seed: int = DEFAULT_SEED,
             tol: float = DEFAULT_TOL) -> ClassCertificate:
    """Demicontractivity at a given k; inapplicable without fixed points."""
    k = float(k)
    if not 0.0 <= k < 1.0:
        raise KOutOfRangeError(f"k={k} outside [0, 1)")
    if mapping.fixed_points.kind != "known":
        return _inapplicable("DC", k, tol, seed)
    xs, tx = _pool(mapping, points_per_axis, extra_random, seed)
    fp = mapping.fixed_points.as_array()
    viol, i, m = _kernels.fix_max_dc(xs, tx, fp, k)
    witness = None
    if viol > tol:
        witness = Witness(x=xs[i].tolist(), y=fp[m].tolist(),
                          lhs=norm(tx[i] - fp[m]) ** 2,
                          rhs=norm(xs[i] - fp[m]) ** 2 + k * norm(xs[i] - tx[i]) ** 2)
    return ClassCertificate(class_id="DC",
                            verdict="violated" if viol > tol else "holds-on-samples",
                            constant=k, witness=witness,
                            samples=int(xs.shape[0]), tol=tol, seed=seed,
                            max_violation=_mv(viol))


def check_condition_a(mapping: Mapping, lambda_a: float,
                      points_per_axis: int = DEFAULT_POINTS_PER_AXIS,
                      extra_random: int = DEFAULT_EXTRA_RANDOM,
                      seed: int = DEFAULT_SEED,
                      tol: float = DEFAULT_TOL) -> ClassCertificate:
    """Inner-product form <x-Tx, x-y> >= lambda_a * ||Tx-x||^2."""
    lambda_a = float(lambda_a)
    if not lambda_a > 0.0:
        raise LambdaOutOfRangeError(f"lambda={lambda_a} must be > 0")
    if mapping.fixed_points.kind != "known":
        return _inapplicable("COND_A", lambda_a, tol, seed)
    xs, tx = _pool(mapping, points_per_axis, extra_random, seed)
    fp = mapping.fixed_points.as_array()
    viol, i, m = _kernels.fix_max_inner(xs, tx, fp, lambda_a)
    witness = None
    if viol > tol:
        witness = Witness(x=xs[i].tolist(), y=fp[m].tolist(),
                          lhs=lambda_a * norm(tx[i] - xs[i]) ** 2,
                          rhs=inner(xs[i] - tx[i], xs[i] - fp[m]))
    return ClassCertificate(class_id="COND_A",
                            verdict="violated" if viol > tol else "holds-on-samples",
                            constant=lambda_a, witness=witness,
                            samples=int(xs.shape[0]), tol=tol, seed=seed,
                            max_violation=_mv(viol))


def estimate_k_spc(mapping: Mapping,
                   points_per_axis: int = DEFAULT_POINTS_PER_AXIS,
                   extra_random: int = DEFAULT_EXTRA_RANDOM,
                   seed: int = DEFAULT_SEED) -> float:
    """Smallest k making the SPC inequality hold on the sampled pairs:
    sup of (||Tx-Ty||^2 - ||x-y||^2) / ||(x-y)-(Tx-Ty)||^2, floored at 0.

    Values >= 1 mean the samples rule out strict pseudocontractivity.
    """
    xs, tx = _pool(mapping, points_per_axis, extra_random, seed)
    sup, _i, _j = _kernels.pair_sup_spc_ratio(xs, tx, DEGENERATE_FLOOR)
    return max(0.0, sup)


def estimate_k_dc(mapping: Mapping,
                  points_per_axis: int = DEFAULT_POINTS_PER_AXIS,
                  extra_random: int = DEFAULT_EXTRA_RANDOM,
                  seed: int = DEFAULT_SEED) -> float:
    """Smallest k making the DC inequality hold on the samples:
    sup of (||Tx-y||^2 - ||x-y||^2) / ||x-Tx||^2, floored at 0."""
    if mapping.fixed_points.kind != "known":
        raise FixUnknownError(f"{mapping.label} has no declared fixed points")
    xs, tx = _pool(mapping, points_per_axis, extra_random, seed)
    fp = mapping.fixed_points.as_array()
    sup, _i, _m = _kernels.fix_sup_dc_ratio(xs, tx, fp, DEGENERATE_FLOOR)
    return max(0.0, sup)


def estimate_lambda_a(mapping: Mapping,
                      points_per_axis: int = DEFAULT_POINTS_PER_AXIS,
                      extra_random: int = DEFAULT_EXTRA_RANDOM,
                      seed: int = DEFAULT_SEED) -> float:
    """Largest inner-product constant supported by the samples, obtained
    as (1 - k_dc)/2; one estimator, one conversion, no second code path."""
    k_hat = estimate_k_dc(mapping, points_per_axis, extra_random, seed)
    return convert_constants("k_to_lambda", k_hat)


def convert_constants(direction: str, value: float) -> float:
    """Translate between the DC constant k and the COND_A constant lambda
    via lambda = (1 - k)/2.

    Exact round trips hold wherever they are representable (all k >= 1/2
    and the dyadic k below); for k < 1/2 the composition is within one
    ulp, the best double precision admits.
    """
    value = float(value)
    if direction == "k_to_lambda":
        if not 0.0 <= value < 1.0:
            raise ConstantOutOfRangeError(f"k={value} outside [0, 1)")
        return 0.5 * (1.0 - value)
    if direction == "lambda_to_k":
        if not 0.0 < value <= 0.5:
            raise ConstantOutOfRangeError(f"lambda={value} outside (0, 1/2]")
        return 1.0 - 2.0 * value
    raise ValueError(f"direction must be k_to_lambda or lambda_to_k, got {direction}")


def check_slack_identity(mapping: Mapping, x, xstar, k: float) -> float:
    """Residual of the algebraic identity

        ||x-y||^2 + k||x-Tx||^2 - ||Tx-y||^2
            = 2<x-y, x-Tx> - (1-k)||x-Tx||^2

    with y = xstar.  Holds for every x, y and k, regardless of any class
    membership; a nonzero residual beyond rounding indicates a broken
    inner product, not a property of T.
    """
    x = as_vector(x)
    y = as_vector(xstar)
    tx = mapping.apply(x)
    d = x - y
    r = x - tx
    dist_sq = inner(d, d)
    res_sq = inner(r, r)
    img_sq = inner(tx - y, tx - y)
    cross = inner(d, r)
    lhs = dist_sq + k * res_sq - img_sq
    rhs = 2.0 * cross - (1.0 - k) * res_sq
    return abs(lhs - rhs)


# ---------------------------------------------------------------------------
# membership diagram


# Reference matrix the diagram run is compared against.  The t4/SPC cell
# records the classical claim for this gallery; the sampling certifier
# consistently finds a stable SPC constant near 1/3 for t4, so a default
# run reports exactly that one-cell diff (see README).
EXPECTED_MEMBERSHIP = {
    "t1": {"NE": "holds", "QNE": "inapplicable", "SPC": "holds", "DC": "inapplicable"},
    "t2": {"NE": "holds", "QNE": "holds", "SPC": "holds", "DC": "holds"},
    "t3": {"NE": "violated", "QNE": "violated", "SPC": "holds", "DC": "holds"},
    "t4": {"NE": "violated", "QNE": "holds", "SPC": "violated", "DC": "holds"},
    "t5": {"NE": "violated", "QNE": "violated", "SPC": "violated", "DC": "holds"},
}

MATRIX_CLASSES = ("NE", "QNE", "SPC", "DC")

# constants estimated above this are treated as escaping toward 1 (the
# sampled lower bound of a divergent ratio), i.e. as non-membership; it
# matches the k-grid {0, 0.1, ..., 0.9} used by the equivalence suite
DEFAULT_K_CEILING = 0.9


def _short_verdict(verdict: str) -> str:
    return "holds" if verdict == "holds-on-samples" else verdict


@dataclass
class DiagramCell:
    verdict: str  # "holds" | "violated" | "inapplicable"
    constant: float | None = None
    max_violation: float | None = None
    witness: Witness | None = None

    def to_json_dict(self) -> dict:
        out = {"verdict": self.verdict, "constant": self.constant,
               "max_violation": self.max_violation, "witness": None}
        if self.witness is not None:
            out["witness"] = {"x": self.witness.x, "y": self.witness.y,
                              "lhs": self.witness.lhs, "rhs": self.witness.rhs}
        return out


@dataclass
class DiagramReport:
    rows: dict  # label -> {class_id -> DiagramCell}
    expected: dict
    matches: bool
    diff: list  # [{"mapping", "class_id", "computed", "expected"}]
    inclusion_witnesses: dict
    points_per_axis: int
    extra_random: int
    seed: int
    tol: float
    k_ceiling: float

    def matrix(self) -> dict:
        return {label: {c: cell.verdict for c, cell in row.items()}
                for label, row in self.rows.items()}

    def matrix_csv(self) -> str:
        lines = ["mapping," + ",".join(MATRIX_CLASSES)]
        for label, row in self.rows.items():
            lines.append(label + "," + ",".join(row[c].verdict
                                                for c in MATRIX_CLASSES))
        return "\n".join(lines) + "\n"

    def to_json_dict(self) -> dict:
        return {
            "matrix": self.matrix(),
            "expected": self.expected,
            "matches": self.matches,
            "diff": self.diff,
            "rows": {label: {c: cell.to_json_dict() for c, cell in row.items()}
                     for label, row in self.rows.items()},
            "inclusion_witnesses": self.inclusion_witnesses,
            "points_per_axis": self.points_per_axis,
            "extra_random": self.extra_random,
            "seed": self.seed,
            "tol": self.tol,
            "k_ceiling": self.k_ceiling,
        }


def _cell_from_certificate(cert: ClassCertificate) -> DiagramCell:
    return DiagramCell(verdict=_short_verdict(cert.verdict),
                       constant=cert.constant,
                       max_violation=cert.max_violation,
                       witness=cert.witness)


def reproduce_diagram(points_per_axis: int = DEFAULT_POINTS_PER_AXIS,
                      extra_random: int = DEFAULT_EXTRA_RANDOM,
                      seed: int = DEFAULT_SEED,
                      tol: float = DEFAULT_TOL,
                      k_ceiling: float = DEFAULT_K_CEILING) -> DiagramReport:
    """Run every certifier over the gallery and assemble the membership
    matrix, compared against the bundled reference matrix.

    NE and QNE cells are direct check verdicts.  SPC and DC memberships
    quantify over a constant, so those cells estimate the minimal k
    first: an estimate <= k_ceiling is confirmed by re-checking at the
    estimate (plus a hair of slack) and reported as membership with that
    constant; anything larger is reported as violated, with the witness
    taken at k_ceiling.
    """
    from .mappings import gallery  # local import keeps module load light

    rows: dict = {}
    strict_witnesses: dict = {}
    for mapping in gallery():
        row: dict = {}
        row["NE"] = _cell_from_certificate(
            check_ne(mapping, points_per_axis, extra_random, seed, tol))
        row["QNE"] = _cell_from_certificate(
            check_qne(mapping, points_per_axis, extra_random, seed, tol))

        k_hat = estimate_k_spc(mapping, points_per_axis, extra_random, seed)
        if k_hat <= k_ceiling:
            cert = check_spc(mapping, min(k_hat + 1e-9, 1.0 - 1e-12),
                             points_per_axis, extra_random, seed, tol)
            cell = _cell_from_certificate(cert)
            cell.constant = k_hat
        else:
            cert = check_spc(mapping, k_ceiling, points_per_axis,
                             extra_random, seed, tol)
            cell = _cell_from_certificate(cert)
            cell.verdict = "violated"
            cell.constant = k_hat
        row["SPC"] = cell

        if mapping.fixed_points.kind != "known":
            row["DC"] = DiagramCell(verdict="inapplicable")
        else:
            k_hat = estimate_k_dc(mapping, points_per_axis, extra_random, seed)
            if k_hat <= k_ceiling:
                cert = check_dc(mapping, min(k_hat + 1e-9, 1.0 - 1e-12),
                                points_per_axis, extra_random, seed, tol)
                cell = _cell_from_certificate(cert)
                cell.constant = k_hat
            else:
                cert = check_dc(mapping, k_ceiling, points_per_axis,
                                extra_random, seed, tol)
                cell = _cell_from_certificate(cert)
                cell.verdict = "violated"
                cell.constant = k_hat
            row["DC"] = cell
        rows[mapping.label] = row

    # witnesses that the two inclusions NE < SPC and QNE < DC are strict:
    # t3 is SPC but not NE, t5 is DC but not QNE
    if rows["t3"]["NE"].witness is not None:
        strict_witnesses["spc_minus_ne"] = {
            "mapping": "t3",
            "spc_constant": rows["t3"]["SPC"].constant,
            "ne_witness": rows["t3"]["NE"].to_json_dict()["witness"],
        }
    if rows["t5"]["QNE"].witness is not None:
        strict_witnesses["dc_minus_qne"] = {
            "mapping": "t5",
            "dc_constant": rows["t5"]["DC"].constant,
            "qne_witness": rows["t5"]["QNE"].to_json_dict()["witness"],
        }

    diff = []
    for label, expected_row in EXPECTED_MEMBERSHIP.items():
        for class_id, expected_verdict in expected_row.items():
            computed = rows[label][class_id].verdict
            if computed != expected_verdict:
                diff.append({"mapping": label, "class_id": class_id,
                             "computed": computed, "expected": expected_verdict})
    return DiagramReport(rows=rows, expected=EXPECTED_MEMBERSHIP,
                         matches=not diff, diff=diff,
                         inclusion_witnesses=strict_witnesses,
                         points_per_axis=points_per_axis,
                         extra_random=extra_random, seed=seed, tol=tol,
                         k_ceiling=k_ceiling)
