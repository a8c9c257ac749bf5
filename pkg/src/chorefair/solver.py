"""Exhaustive search over complete allocations.

Allocations are enumerated as a mixed-radix counter over chore -> agent
assignments with chore 0 the most significant digit. The best ratio is the
minimum over all allocations of the maximum pairwise envy ratio; ties keep
the first allocation in enumeration order.

Internally every agent's cost table is rescaled to integers (a positive
per-agent factor leaves her envy ratios unchanged) and ratios are compared as
``(numerator, denominator)`` pairs by cross-multiplication, so no rational
objects are built in the inner loop. ``(1, 0)`` encodes INF.
"""

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .costs import INF, is_inf, ratio
from .errors import UsageError
from .fairness import check_budget
from .model import Allocation, mask_of

_INF_PAIR = (1, 0)


@dataclass(frozen=True)
class SolveResult:
    efx_allocation: Optional[Allocation]
    best_ratio: object
    argmin_allocation: Allocation
    explored: int

    def to_json(self):
        from .costs import cost_to_json

        return {
            "efx_exists": self.efx_allocation is not None,
            "efx_allocation": None if self.efx_allocation is None else {"bundles": self.efx_allocation.to_lists()},
            "best_ratio": cost_to_json(self.best_ratio),
            "argmin_allocation": {"bundles": self.argmin_allocation.to_lists()},
            "explored": self.explored,
        }


def _integer_tables(instance):
    """Per-agent cost tables scaled to integers; ``None`` marks INF."""
    out = []
    for i in range(instance.n):
        tab = instance.table(i)
        scale = 1
        for c in tab:
            if not is_inf(c):
                d = Fraction(c).denominator
                scale = scale * d // math.gcd(scale, d)
        out.append([None if is_inf(c) else int(c * scale) for c in tab])
    return out


def _strong_tables(tables, m):
    """``max_{e in S} c(S - e)`` for every mask, 0 for |S| <= 1."""
    out = []
    for tab in tables:
        strong = [0] * len(tab)
        for mask in range(len(tab)):
            if mask & (mask - 1) == 0:
                continue
            worst = 0
            rest = mask
            while rest:
                low = rest & -rest
                c = tab[mask ^ low]
                if c is None:
                    worst = None
                    break
                if c > worst:
                    worst = c
                rest ^= low
            strong[mask] = worst
        out.append(strong)
    return out


def _pair(num, den):
    if num is None:
        return (1, 1) if den is None else _INF_PAIR
    if den is None:
        return (0, 1)
    if den == 0:
        return (0, 1) if num == 0 else _INF_PAIR
    return (num, den)


def _pair_value(p):
    return INF if p[1] == 0 else Fraction(p[0], p[1])


class _Evaluator:
    def __init__(self, instance):
        self.n = instance.n
        self.m = instance.m
        self.tables = _integer_tables(instance)
        self.strong = _strong_tables(self.tables, instance.m)

    def worst(self, bundles, cutoff=None):
        """Worst envy ratio pair; returns early once it exceeds ``cutoff``."""
        wp, wq = 0, 1
        n = self.n
        for i in range(n):
            own = bundles[i]
            if own & (own - 1) == 0:
                continue
            num = self.strong[i][own]
            tab = self.tables[i]
            for j in range(n):
                if j == i:
                    continue
                p, q = _pair(num, tab[bundles[j]])
                if p * wq > wp * q:
                    wp, wq = p, q
                    if cutoff is not None and wp * cutoff[1] > cutoff[0] * wq:
                        return wp, wq
        return wp, wq

    def is_efx(self, bundles):
        for i in range(self.n):
            own = bundles[i]
            if own & (own - 1) == 0:
                continue
            num = self.strong[i][own]
            tab = self.tables[i]
            for j in range(self.n):
                if j != i:
                    p, q = _pair(num, tab[bundles[j]])
                    if p > q:
                        return False
        return True


def _assignments(n, m, prefix=()):
    """Bundle tuples for every assignment extending ``prefix``, in order."""
    start = len(prefix)
    base = [0] * n
    for e, a in enumerate(prefix):
        base[a] |= 1 << e
    for tail in itertools.product(range(n), repeat=m - start):
        bundles = list(base)
        for offset, a in enumerate(tail):
            bundles[a] |= 1 << (start + offset)
        yield bundles


def _search(instance, prefix, stop_at_efx):
    ev = _Evaluator(instance)
    best = None
    best_bundles = None
    best_index = None
    efx = None
    explored = 0
    for idx, bundles in enumerate(_assignments(instance.n, instance.m, prefix)):
        explored += 1
        if stop_at_efx:
            if ev.is_efx(bundles):
                return {"efx": tuple(bundles), "explored": explored}
            continue
        p = ev.worst(bundles, cutoff=best)
        if best is None or p[0] * best[1] < best[0] * p[1]:
            best, best_bundles, best_index = p, tuple(bundles), idx
            if efx is None and p[0] <= p[1]:
                efx = tuple(bundles)
            if p[0] == 0:
                # nothing beats ratio 0; later allocations cannot displace the argmin
                break
    return {"best": best, "bundles": best_bundles, "index": best_index, "efx": efx, "explored": explored}


def _shards(n, m, workers):
    depth = 0
    while n**depth < workers and depth < m:
        depth += 1
    return list(itertools.product(range(n), repeat=depth))


def _run(instance, stop_at_efx, budget, workers):
    check_budget(instance.n**instance.m, budget)
    if workers is None or workers <= 1:
        return [_search(instance, (), stop_at_efx)]
    prefixes = _shards(instance.n, instance.m, workers)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_search, [instance] * len(prefixes), prefixes, [stop_at_efx] * len(prefixes)))


def find_efx(instance, budget=None, workers=None):
    """Some EFX allocation if one exists, else ``None``.

    With several workers, the first EFX allocation of the lowest shard is
    returned, which is the first in global enumeration order.
    """
    for part in _run(instance, True, budget, workers):
        if part.get("efx") is not None:
            return Allocation(part["efx"])
    return None


def best_efx_ratio(instance, budget=None, workers=None):
    """Minimum over all complete allocations of the worst envy ratio."""
    parts = _run(instance, False, budget, workers)
    best = None
    argmin = None
    efx = None
    explored = 0
    for part in parts:
        explored += part["explored"]
        if efx is None and part["efx"] is not None:
            efx = part["efx"]
        p = part["best"]
        # shards are in enumeration order, so strict improvement keeps the
        # lexicographic (ratio, index) minimum
        if best is None or p[0] * best[1] < best[0] * p[1]:
            best, argmin = p, part["bundles"]
    return SolveResult(
        efx_allocation=None if efx is None else Allocation(efx),
        best_ratio=_pair_value(best),
        argmin_allocation=Allocation(argmin),
        explored=explored,
    )


# --------------------------------------------------------------------------
# independent oracle


def naive_best_ratio(instance):
    """Recursive enumerator over set-valued bundles, evaluated straight from
    the definition with exact ratios. Shares no code with the search above.

    Returns ``(efx_exists, best_ratio)``.
    """
    n, m = instance.n, instance.m
    bundles = [set() for _ in range(n)]
    state = {"best": None, "efx": False}
    memo = {}

    def cost(i, chores):
        key = (i, mask_of(chores))
        if key not in memo:
            memo[key] = instance.cost(*key)
        return memo[key]

    def finish():
        worst = 0
        for i in range(n):
            own = bundles[i]
            if len(own) <= 1:
                continue
            strong = max(cost(i, own - {e}) for e in own)
            for j in range(n):
                if j != i:
                    r = ratio(strong, cost(i, bundles[j]))
                    if r > worst:
                        worst = r
        if state["best"] is None or worst < state["best"]:
            state["best"] = worst
        if worst <= 1:
            state["efx"] = True

    def recurse(e):
        if e == m:
            finish()
            return
        for a in range(n):
            bundles[a].add(e)
            recurse(e + 1)
            bundles[a].discard(e)

    recurse(0)
    return state["efx"], state["best"]


def cross_check_enumerators(instance, limit=10**5):
    """True iff the fast search and the naive enumerator agree on the EFX
    verdict and on the exact best ratio."""
    if instance.n**instance.m > limit:
        raise UsageError(f"cross-check limited to n**m <= {limit}")
    fast = best_efx_ratio(instance)
    fast_exists = find_efx(instance) is not None
    naive_exists, naive_best = naive_best_ratio(instance)
    return fast_exists == naive_exists == (fast.efx_allocation is not None) and fast.best_ratio == naive_best
