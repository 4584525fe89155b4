"""GPC-IP private retrieval protocol with exact audits and digraph scans."""

from ._gpcip import (
    __version__,
    achievable_rate,
    audit_privacy,
    derive_params,
    goodrel_check,
    is_d_graph,
    mu_ext,
    mu_int,
    run_protocol,
    scan_mother_set_bound,
    theta_balance,
)

__all__ = [
    "__version__",
    "achievable_rate",
    "audit_privacy",
    "derive_params",
    "goodrel_check",
    "is_d_graph",
    "mu_ext",
    "mu_int",
    "run_protocol",
    "scan_mother_set_bound",
    "theta_balance",
]
