"""demikit: operator-class certification and Krasnoselskij-Mann iteration
on finite-dimensional real Hilbert spaces.

Workflow, end to end: build or pick a mapping (``mappings``), certify
which class inequalities it satisfies and estimate its constants
(``certify``), relax it into a quasi-nonexpansive operator
(``relaxation``), and approximate a fixed point with audited convergence
(``solver``).  The ``demikit`` CLI drives the same pipeline from the
shell and emits JSON/CSV reports.
"""

from ._kernels import BACKEND as KERNEL_BACKEND
from .certify import (
    ClassCertificate,
    check_condition_a,
    check_dc,
    check_slack_identity,
    check_ne,
    check_qne,
    check_spc,
    convert_constants,
    estimate_k_dc,
    estimate_k_spc,
    estimate_lambda_a,
    reproduce_diagram,
)
from .errors import DemikitError
from .mappings import (
    FixedPointSet,
    Mapping,
    check_self_map,
    gallery,
    get_mapping,
    make_scaled_reflection,
    make_t1,
    make_t2,
    make_t3,
    make_t4,
    make_t5,
)
from .relaxation import RelaxedMapping, averaged, verify_fix_preservation, verify_lemma
from .solver import (
    StepSchedule,
    Trajectory,
    audit_fejer,
    krasnoselskij,
    mann_iterate,
    solve_demicontractive,
)
from .space import (
    Domain,
    collect_samples,
    convex_combination,
    grid_sample,
    inner,
    norm,
    random_sample,
)

__version__ = "0.1.0"

__all__ = [
    "KERNEL_BACKEND",
    "__version__",
    "DemikitError",
    "Domain",
    "inner",
    "norm",
    "convex_combination",
    "grid_sample",
    "random_sample",
    "collect_samples",
    "Mapping",
    "FixedPointSet",
    "gallery",
    "get_mapping",
    "make_t1",
    "make_t2",
    "make_t3",
    "make_t4",
    "make_t5",
    "make_scaled_reflection",
    "check_self_map",
    "RelaxedMapping",
    "averaged",
    "verify_fix_preservation",
    "verify_lemma",
    "ClassCertificate",
    "check_ne",
    "check_qne",
    "check_spc",
    "check_dc",
    "check_condition_a",
    "estimate_k_spc",
    "estimate_k_dc",
    "estimate_lambda_a",
    "convert_constants",
    "check_slack_identity",
    "reproduce_diagram",
    "StepSchedule",
    "Trajectory",
    "mann_iterate",
    "krasnoselskij",
    "solve_demicontractive",
    "audit_fejer",
]
