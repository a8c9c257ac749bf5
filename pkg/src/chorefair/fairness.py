"""Fairness checkers: envy ratios, alpha-EFX, EF1 and maximin share.

All verdicts are decided in exact arithmetic. The envy ratio of agent ``i``
towards ``j`` is

    max_{e in X_i} c_i(X_i - e) / c_i(X_j)

with 0/0 = 0, x/0 = INF for x > 0, INF/INF = 1 and an empty ``X_i`` giving 0,
so that an allocation is alpha-EFX exactly when every ratio is at most alpha.
"""

import os
from dataclasses import dataclass, field
from typing import Optional

from .costs import INF, fmt, is_inf, ratio
from .errors import BudgetExceeded, UsageError
from .model import bits, check_allocation

DEFAULT_BUDGET = 10**7


def default_budget():
    env = os.environ.get("CHOREFAIR_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


def check_budget(required, budget=None):
    budget = default_budget() if budget is None else budget
    if required > budget:
        raise BudgetExceeded(required, budget)


def strong_cost(instance, agent, bundle):
    """``max_{e in bundle} c(bundle - e)``; 0 for bundles of size at most one."""
    worst = 0
    for e in bits(bundle):
        c = instance.cost(agent, bundle & ~(1 << e))
        if c > worst:
            worst = c
    return worst


def envy_ratio(instance, allocation, i, j):
    """Smallest alpha for which agent ``i`` is alpha-EFX towards agent ``j``."""
    if i == j:
        raise UsageError("envy ratio towards one's own bundle is undefined")
    check_allocation(instance, allocation)
    own = allocation[i]
    if own & (own - 1) == 0:
        return 0
    return ratio(strong_cost(instance, i, own), instance.cost(i, allocation[j]))


def envy_matrix(instance, allocation):
    n = instance.n
    return [[None if i == j else envy_ratio(instance, allocation, i, j) for j in range(n)] for i in range(n)]


def worst_ratio(instance, allocation):
    worst = 0
    for i in range(instance.n):
        for j in range(instance.n):
            if i != j:
                r = envy_ratio(instance, allocation, i, j)
                if r > worst:
                    worst = r
    return worst


def is_alpha_efx(instance, allocation, alpha=1):
    if alpha < 0:
        raise UsageError(f"alpha must be non-negative, got {alpha}")
    n = instance.n
    return all(envy_ratio(instance, allocation, i, j) <= alpha for i in range(n) for j in range(n) if i != j)


def is_efx(instance, allocation):
    return is_alpha_efx(instance, allocation, 1)


def is_envy_free(instance, allocation):
    check_allocation(instance, allocation)
    n = instance.n
    return all(instance.cost(i, allocation[i]) <= instance.cost(i, allocation[j]) for i in range(n) for j in range(n))


def is_ef1(instance, allocation):
    """Every envious agent can shed one of her own chores to stop envying."""
    check_allocation(instance, allocation)
    for i in range(instance.n):
        own = allocation[i]
        own_cost = instance.cost(i, own)
        for j in range(instance.n):
            if i == j:
                continue
            other = instance.cost(i, allocation[j])
            if own_cost <= other:
                continue
            if not any(instance.cost(i, own & ~(1 << e)) <= other for e in bits(own)):
                return False
    return True


# --------------------------------------------------------------------------
# maximin share


def mms_value(instance, agent, budget=None):
    """Exact maximin share of ``agent``: the least achievable maximum bundle
    cost over all partitions of the chores into ``n`` bundles.

    Bundles are interchangeable here, so only canonical labellings are
    searched (chore ``e`` may open at most one new bundle), with a
    branch-and-bound cut on the running maximum.
    """
    n, m = instance.n, instance.m
    if n == 1:
        return instance.cost(agent, instance.full)
    check_budget(n**m, budget)
    tab = instance.table(agent)
    best = [tab[instance.full]]
    bundles = [0] * n

    def extend(e, used, current):
        if current >= best[0]:
            return
        if e == m:
            best[0] = current
            return
        for b in range(min(used + 1, n)):
            bundles[b] |= 1 << e
            c = tab[bundles[b]]
            extend(e + 1, max(used, b + 1), current if c <= current else c)
            bundles[b] &= ~(1 << e)

    extend(0, 0, 0)
    return best[0]


def is_mms(instance, allocation, budget=None, values=None):
    check_allocation(instance, allocation)
    values = values or [mms_value(instance, i, budget) for i in range(instance.n)]
    return all(instance.cost(i, allocation[i]) <= values[i] for i in range(instance.n))


# --------------------------------------------------------------------------
# reports


@dataclass
class FairnessReport:
    envy_ratio: list
    worst_ratio: object
    ef1: bool
    mms_values: Optional[list] = None
    mms: Optional[list] = None
    bundle_costs: list = field(default_factory=list)

    @property
    def efx_at(self):
        """Smallest alpha for which the allocation is alpha-EFX."""
        return self.worst_ratio

    @property
    def efx(self):
        return self.worst_ratio <= 1

    def to_json(self):
        from .costs import cost_to_json

        def enc(x):
            return None if x is None else cost_to_json(x)

        out = {
            "envy_ratio": [[enc(x) for x in row] for row in self.envy_ratio],
            "worst_ratio": enc(self.worst_ratio),
            "efx_at": enc(self.efx_at),
            "efx": self.efx,
            "ef1": self.ef1,
            "bundle_costs": [enc(x) for x in self.bundle_costs],
        }
        if self.mms_values is not None:
            out["mms_values"] = [enc(x) for x in self.mms_values]
            out["mms"] = self.mms
        return out

    def table(self):
        n = len(self.envy_ratio)
        lines = ["envy ratios (row envies column):"]
        lines.append("      " + "".join(f"{j:>10}" for j in range(n)))
        for i, row in enumerate(self.envy_ratio):
            cells = "".join(f"{'-' if x is None else fmt(x):>10}" for x in row)
            lines.append(f"{i:>6}{cells}")
        lines.append(f"worst ratio: {fmt(self.worst_ratio)}")
        lines.append(f"EFX: {'yes' if self.efx else 'no'}   EF1: {'yes' if self.ef1 else 'no'}")
        if self.mms_values is not None:
            vals = ", ".join(fmt(v) for v in self.mms_values)
            lines.append(f"MMS values: [{vals}]   MMS: {'yes' if all(self.mms) else 'no'}")
        return "\n".join(lines)


def report(instance, allocation, with_mms=False, budget=None):
    matrix = envy_matrix(instance, allocation)
    worst = 0
    for row in matrix:
        for x in row:
            if x is not None and x > worst:
                worst = x
    rep = FairnessReport(
        envy_ratio=matrix,
        worst_ratio=worst,
        ef1=is_ef1(instance, allocation),
        bundle_costs=[instance.cost(i, allocation[i]) for i in range(instance.n)],
    )
    if with_mms:
        rep.mms_values = [mms_value(instance, i, budget) for i in range(instance.n)]
        rep.mms = [rep.bundle_costs[i] <= rep.mms_values[i] for i in range(instance.n)]
    return rep


__all__ = [
    "INF",
    "envy_ratio",
    "envy_matrix",
    "worst_ratio",
    "is_alpha_efx",
    "is_efx",
    "is_ef1",
    "mms_value",
    "is_mms",
    "report",
    "FairnessReport",
    "is_inf",
]
