"""Exact EFX allocations when there are at most ``n + 2`` chores.

Works for any monotone cost functions; chores are ranked by their singleton
costs. The construction rests on one fact: an agent holding her two cheapest
chores envies no nonempty bundle after dropping either of them.
"""

from itertools import combinations

from ..errors import ImplementationFault, UsageError
from ..fairness import is_efx
from ..model import Allocation, mask_of, ranking


def _fill(n, fixed, rest):
    """Give each agent not in ``fixed`` one chore of ``rest`` (lowest first)."""
    bundles = [0] * n
    for agent, chores in fixed.items():
        bundles[agent] = mask_of(chores)
    free = iter(rest)
    for agent in range(n):
        if agent not in fixed:
            e = next(free, None)
            if e is not None:
                bundles[agent] = 1 << e
    if next(free, None) is not None:
        raise ImplementationFault("chores left over after filling singletons")
    return Allocation(tuple(bundles))


def _candidate(instance, anchor):
    n, m = instance.n, instance.m
    everything = list(range(m))
    rank = {i: ranking(instance, i) for i in range(n)}
    z = rank[anchor][-2:]

    if m == n + 1:
        return _fill(n, {anchor: z}, [e for e in everything if e not in z])

    # m == n + 2
    z_mask = mask_of(z)
    others = [j for j in range(n) if j != anchor]

    # some agent ranks a chore of z among her top n - 1
    for j in others:
        if any(rank[j][k] in z for k in range(n - 1)):
            rest_j = [e for e in rank[j] if e not in z]
            pair = rest_j[-2:]
            taken = set(z) | set(pair)
            return _fill(n, {anchor: z, j: pair}, [e for e in everything if e not in taken])

    # z sits in everyone's three cheapest; compare the cheapest outside z
    outside = instance.full & ~z_mask
    x_anchor = ranking(instance, anchor, outside)[-1]
    for j in others:
        x_j = ranking(instance, j, outside)[-1]
        if x_j != x_anchor:
            fixed = {anchor: [x_anchor, z[0]], j: [x_j, z[1]]}
            taken = {x_anchor, x_j, *z}
            return _fill(n, fixed, [e for e in everything if e not in taken])

    # everyone agrees on the three cheapest chores
    cheapest = sorted(set(z) | {x_anchor})
    rest = [e for e in everything if e not in cheapest]
    trial = _fill(n, {anchor: cheapest}, rest)
    if is_efx(instance, trial):
        return trial
    pivot = rank[anchor][n - 2]
    pivot_cost = instance.chore_cost(anchor, pivot)
    for y in combinations(cheapest, 2):
        if instance.cost(anchor, mask_of(y)) > pivot_cost:
            (leftover,) = set(cheapest) - set(y)
            holder = others[0]
            taken = set(cheapest) | {pivot}
            return _fill(n, {anchor: [pivot, leftover], holder: list(y)},
                         [e for e in everything if e not in taken])
    return trial


def few_chores_efx(instance):
    """Exact EFX allocation for instances with ``m <= n + 2``.

    Agent 0 is used as the anchor of the case analysis; the other agents are
    tried in turn only if the result fails verification, and
    :class:`ImplementationFault` is raised if none passes.
    """
    n, m = instance.n, instance.m
    if m > n + 2:
        raise UsageError(f"need m <= n + 2, got n={n}, m={m}")
    if m <= n:
        return Allocation(tuple(1 << e if e < m else 0 for e in range(n)))
    if n == 1:
        return Allocation((instance.full,))
    for anchor in range(n):
        out = _candidate(instance, anchor)
        if is_efx(instance, out):
            return out
    raise ImplementationFault(f"no EFX allocation produced for {instance.label or 'instance'}")


__all__ = ["few_chores_efx"]
