"""Coherence of assistance: bounds, optimizers and the assisted-distillation protocol."""

from ._core import (
    CoaError,
    OptimizerConfig,
    analytic_ca_l1,
    assemble,
    average_coherence,
    c_l1,
    c_rel_ent,
    classify,
    demo_protocol,
    eigh,
    maximally_correlated,
    negativity,
    negativity_of_assistance_mc,
    optimize_ca,
    read_state,
    report_csv,
    run_protocol,
    saturation_check,
    strict_increase_ensemble,
    upper_bound,
    validate,
    write_state,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
