"""Fair division of indivisible chores: EFX checkers, an exact solver,
hard-instance constructions and approximation algorithms."""

from .costs import INF
from .errors import (
    BudgetExceeded,
    ChoreFairError,
    ConditionNotMet,
    ImplementationFault,
    ParameterError,
    PreconditionError,
    UsageError,
)
from .model import AdditiveCost, Allocation, ClosedFormCost, Instance, TableCost, sigma, validate

from .fairness import envy_ratio, is_alpha_efx, is_ef1, is_efx, is_envy_free, is_mms, mms_value, report, worst_ratio
from .solver import best_efx_ratio, find_efx
from .serialize import instance_from_json, instance_to_json

__version__ = "0.1.0"
