"""2-EFX allocations for three agents with additive costs."""

from itertools import permutations

from ..errors import ImplementationFault, UsageError
from ..fairness import envy_ratio, is_alpha_efx
from ..model import Allocation, ranking
from .framework import seed_top_n_minus1_disagreement, framework_run, top_sets
from .ttece import EnvyGraph, ttece


def _seed_for(instance, a, b):
    """Singleton seed for agents ``a`` and ``b`` sharing a top-2 chore.

    Returns ``(bundles, priority)`` with the third agent last in ``priority``,
    or None if the pair does not fit either seeding rule.
    """
    c = 3 - a - b
    top = {i: ranking(instance, i)[:2] for i in (a, b)}
    bundles = [0, 0, 0]
    if top[a][1] == top[b][1] and top[a][0] != top[b][0]:
        # shared chore is second for both: it goes to c, a and b swap tops
        bundles[c] = 1 << top[a][1]
        bundles[a] = 1 << top[b][0]
        bundles[b] = 1 << top[a][0]
        return bundles, (a, b, c)
    if top[a][0] not in top[b]:
        return None
    bundles[c] = 1 << top[a][0]
    rest = instance.full & ~bundles[c]
    bundles[a] = 1 << ranking(instance, b, rest)[0]
    rest &= ~bundles[a]
    bundles[b] = 1 << ranking(instance, a, rest)[0]
    return bundles, (a, b, c)


def _seed(instance):
    """Seed for the first pair (in index order) sharing a top-2 chore."""
    ts = top_sets(instance, 2)
    a, b = next((p, q) for p, q in ((0, 1), (0, 2), (1, 2)) if ts.top[p] & ts.top[q])
    return _seed_for(instance, a, b) or _seed_for(instance, b, a)


def _all_seeds(instance):
    ts = top_sets(instance, 2)
    for a, b in permutations(range(3), 2):
        if ts.top[a] & ts.top[b]:
            seed = _seed_for(instance, a, b)
            if seed is not None:
                yield seed


def _literal(instance, bundles, priority):
    start = Allocation(tuple(bundles))
    order = ranking(instance, priority[2], start.unallocated(instance.m))
    rank_of = {agent: r for r, agent in enumerate(priority)}
    return ttece(instance, start, order, sink_rule=lambda sinks, _: min(sinks, key=rank_of.get))


def _stays_2efx(instance, bundles, agent):
    alloc = Allocation(tuple(bundles))
    return all(envy_ratio(instance, alloc, agent, j) <= 2 for j in range(3) if j != agent)


def _guarded(instance, bundles, priority):
    """Envy-cycle completion that only lets the third agent take a chore
    while she stays 2-EFX.

    The first two agents take the third agent's costliest remaining chore
    whenever one of them is a sink. If neither is a sink, a two-cycle between
    them is rotated, any other cycle is rotated as usual, and otherwise the
    third agent takes her costliest remaining chore if that is safe, else her
    cheapest safe one. Returns None when no move is safe.
    """
    a, b, c = priority
    bundles = list(bundles)
    rest = instance.full & ~(bundles[0] | bundles[1] | bundles[2])
    while rest:
        order = ranking(instance, c, rest)
        graph = EnvyGraph.of(instance, bundles)
        sinks = graph.sinks
        taker = next((s for s in (a, b) if s in sinks), None)
        if taker is not None:
            e = order[0]
        elif not sinks or (graph.target[a] == b and graph.target[b] == a):
            cycle = [a, b] if graph.target[a] == b and graph.target[b] == a else graph.cycle()
            moved = {i: bundles[graph.target[i]] for i in cycle}
            for i, bundle in moved.items():
                bundles[i] = bundle
            continue
        else:
            taker = c
            e = None
            for cand in [order[0]] + order[::-1]:
                trial = list(bundles)
                trial[c] |= 1 << cand
                if _stays_2efx(instance, trial, c):
                    e = cand
                    break
            if e is None:
                return None
        bundles[taker] |= 1 << e
        rest &= ~(1 << e)
    return Allocation(tuple(bundles))


def three_agent_2efx(instance, repair=True):
    """A 2-EFX allocation for three additive agents.

    If the three top-2 sets are pairwise disjoint, the disagreement seeder
    feeds the envy-cycle framework. Otherwise two agents sharing a top-2
    chore seed one chore each to all three agents, and the rest is handed out
    by envy-cycle elimination in decreasing cost order of the third agent,
    preferring the first two agents among sinks.

    That second branch is not always 2-EFX: the third agent can end up the
    only sink while a chore would break her bound. When the result fails
    verification and ``repair`` is set, a guarded completion is tried from
    every valid seed. :class:`ImplementationFault` is raised if nothing
    passes.
    """
    if instance.n != 3:
        raise UsageError(f"need exactly three agents, got {instance.n}")
    if not instance.is_additive:
        raise UsageError("need additive costs")
    m = instance.m
    if m <= 3:
        return Allocation(tuple(1 << e if e < m else 0 for e in range(3)))

    def ok(alloc):
        return alloc is not None and alloc.is_complete(m) and is_alpha_efx(instance, alloc, 2)

    if top_sets(instance, 2).pairwise_disjoint():
        out = framework_run(instance, seed_top_n_minus1_disagreement(instance)).allocation
        if ok(out):
            return out
    else:
        out = _literal(instance, *_seed(instance))
        if ok(out):
            return out
        if repair:
            for seed in _all_seeds(instance):
                out = _guarded(instance, *seed)
                if ok(out):
                    return out
    raise ImplementationFault(f"output is not 2-EFX for {instance.label or 'instance'}")
