"""Allocation algorithms."""

from .few_chores import few_chores_efx
from .framework import (
    SEEDERS,
    FrameworkResult,
    SeededPartial,
    TopSets,
    certified_beta,
    framework_run,
    ratio_matrix,
    run_seeded,
    seed_top_n_agreement,
    seed_top_n_minus1_agreement,
    seed_top_n_minus1_disagreement,
    top_sets,
)
from .three_agents import three_agent_2efx
from .ttece import EnvyGraph, ttece
