"""Infinite-Prandtl Rayleigh-Benard solver and inequality checks (C++ core)."""

from ._core import (
    Grid,
    State,
    Stepper,
    analyze_checkpoint,
    cfl_dt,
    kernel_moments,
    load_checkpoint,
    lp_band,
    lp_ramp,
    make_grid,
    max_principle,
    nusselt,
    parse_config,
    run,
    run_suite,
    save_checkpoint,
    suite_names,
)

__all__ = [
    "Grid",
    "State",
    "Stepper",
    "analyze_checkpoint",
    "cfl_dt",
    "kernel_moments",
    "load_checkpoint",
    "lp_band",
    "lp_ramp",
    "make_grid",
    "max_principle",
    "nusselt",
    "parse_config",
    "run",
    "run_suite",
    "save_checkpoint",
    "suite_names",
]
