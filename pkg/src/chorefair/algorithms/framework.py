"""Seeded envy-cycle elimination for additive chores.

A seeder produces a partial allocation that is alpha-EFX and satisfies the
ratio property

    c_i(e) <= beta * c_i(Y_j)   for every agent i, every j != i and every
                                 unallocated chore e.

Finishing it with :func:`ttece` yields a ``max(alpha, beta + 1)``-EFX
allocation. Every seeded partial is re-verified before use, the ratio
property is re-checked after every step of the run, and the output is
checked at the certified factor.
"""

from dataclasses import dataclass

from ..costs import INF, leq_scaled, ratio
from ..errors import ConditionNotMet, ImplementationFault, PreconditionError, UsageError
from ..fairness import envy_ratio, is_alpha_efx
from ..model import Allocation, bits, mask_of, ranking
from .ttece import ttece


@dataclass(frozen=True)
class TopSets:
    """Per-agent top-``k`` chore sets and two cheapest chores, as masks."""

    k: int
    top: tuple
    cheapest_two: tuple

    def agree(self):
        return len(set(self.top)) == 1

    def pairwise_disjoint(self):
        seen = 0
        for t in self.top:
            if seen & t:
                return False
            seen |= t
        return True


def top_sets(instance, k):
    if not 1 <= k <= instance.m:
        raise UsageError(f"k must lie in 1..{instance.m}")
    top, low = [], []
    for i in range(instance.n):
        order = ranking(instance, i)
        top.append(mask_of(order[:k]))
        low.append(mask_of(order[-2:]))
    return TopSets(k, tuple(top), tuple(low))


def ratio_matrix(instance, partial):
    """``r[i][j] = c_i(Y_j) / max over unallocated e of c_i(e)``; diagonal None."""
    rest = partial.unallocated(instance.m)
    if not rest:
        raise UsageError("ratio matrix needs at least one unallocated chore")
    n = instance.n
    out = []
    for i in range(n):
        top = max(instance.chore_cost(i, e) for e in bits(rest))
        out.append([None if j == i else ratio(instance.cost(i, partial[j]), top) for j in range(n)])
    return out


def certified_beta(instance, partial, agents=None):
    """Largest beta the ratio property certifies, per agent: the minimum
    off-diagonal entry of that agent's row of the ratio matrix."""
    rows = ratio_matrix(instance, partial)
    agents = range(instance.n) if agents is None else agents
    return [min((x for x in rows[i] if x is not None), default=INF) for i in agents]


def ratio_property_violation(instance, bundles, beta):
    """First ``(i, j, e)`` with ``c_i(e) > beta * c_i(bundles[j])``, else None."""
    allocated = 0
    for b in bundles:
        allocated |= b
    rest = instance.full & ~allocated
    if not rest:
        return None
    for i in range(instance.n):
        top = max(bits(rest), key=lambda e: (instance.chore_cost(i, e), -e))
        top_cost = instance.chore_cost(i, top)
        for j in range(instance.n):
            if j != i and not leq_scaled(top_cost, beta, instance.cost(i, bundles[j])):
                return (i, j, top)
    return None


@dataclass(frozen=True)
class SeededPartial:
    partial: Allocation
    alpha: object
    beta: object

    def verify(self, instance):
        """Raise :class:`PreconditionError` naming the first violated pair."""
        n = instance.n
        for i in range(n):
            for j in range(n):
                if i != j:
                    r = envy_ratio(instance, self.partial, i, j)
                    if r > self.alpha:
                        raise PreconditionError(
                            f"partial is not {self.alpha}-EFX: agent {i} towards {j} has ratio {r}"
                        )
        bad = ratio_property_violation(instance, self.partial.bundles, self.beta)
        if bad:
            i, j, e = bad
            raise PreconditionError(
                f"ratio property fails for beta={self.beta}: agent {i}, bundle of {j}, chore {e}"
            )
        return self


@dataclass(frozen=True)
class FrameworkResult:
    allocation: Allocation
    factor: object
    steps: int = 0


def framework_run(instance, seeded, item_order=None, sink_rule="lex"):
    """Complete a seeded partial allocation with envy-cycle elimination.

    Returns the allocation with its certified factor ``max(alpha, beta + 1)``.
    """
    if not instance.is_additive:
        raise UsageError("the framework guarantee needs additive costs")
    seeded.verify(instance)
    factor = max(seeded.alpha, seeded.beta + 1)
    steps = [0]

    def check(event, bundles, remaining):
        steps[0] += 1
        if remaining:
            bad = ratio_property_violation(instance, bundles, seeded.beta)
            if bad:
                raise ImplementationFault(f"ratio property broken after {event}: {bad}")

    out = ttece(instance, seeded.partial, item_order, sink_rule, callback=check)
    if not is_alpha_efx(instance, out, factor):
        raise ImplementationFault(f"framework output is not {factor}-EFX")
    return FrameworkResult(out, factor, steps[0])


# --------------------------------------------------------------------------
# seeders


def _require_additive(instance):
    if not instance.is_additive:
        raise UsageError("seeders need additive costs")


def seed_top_n_agreement(instance):
    """Everyone shares the same top-``n`` set: hand one of those chores to each
    agent (lowest index first). alpha = beta = 1."""
    _require_additive(instance)
    n = instance.n
    if instance.m < n:
        raise ConditionNotMet(f"need at least n={n} chores")
    ts = top_sets(instance, n)
    if not ts.agree():
        raise ConditionNotMet("agents do not share their top-n set")
    common = bits(ts.top[0])
    partial = Allocation(tuple(1 << e for e in common))
    return SeededPartial(partial, 1, 1).verify(instance)


def seed_top_n_minus1_agreement(instance):
    """Everyone shares the same top-``(n-1)`` set ``{l_1..l_{n-1}}``: agent
    ``i < n-1`` gets ``l_i`` and the last agent gets every other agent's
    ``n``-th costliest chore. alpha = max(1, n - 2), beta = 1."""
    _require_additive(instance)
    n = instance.n
    if n < 2:
        raise ConditionNotMet("need at least two agents")
    if instance.m < n:
        raise ConditionNotMet(f"need at least n={n} chores")
    ts = top_sets(instance, n - 1)
    if not ts.agree():
        raise ConditionNotMet("agents do not share their top-(n-1) set")
    shared = bits(ts.top[0])
    last = 0
    for j in range(n - 1):
        last |= 1 << ranking(instance, j)[n - 1]
    partial = Allocation(tuple(1 << e for e in shared) + (last,))
    return SeededPartial(partial, max(1, n - 2), 1).verify(instance)


def seed_top_n_minus1_disagreement(instance):
    """Top-``(n-1)`` sets pairwise disjoint: each agent in turn gives her
    costliest remaining chore to every other agent. alpha = max(1, n - 2),
    beta = 1."""
    _require_additive(instance)
    n = instance.n
    if n < 2:
        raise ConditionNotMet("need at least two agents")
    if instance.m < n * (n - 1):
        raise ConditionNotMet(f"need at least n(n-1)={n * (n - 1)} chores")
    if not top_sets(instance, n - 1).pairwise_disjoint():
        raise ConditionNotMet("top-(n-1) sets are not pairwise disjoint")
    bundles = [0] * n
    rest = instance.full
    for i in range(n):
        for j in range(n):
            if j == i:
                continue
            e = ranking(instance, i, rest)[0]
            bundles[j] |= 1 << e
            rest &= ~(1 << e)
    return SeededPartial(Allocation(tuple(bundles)), max(1, n - 2), 1).verify(instance)


SEEDERS = {
    "top-n-agreement": seed_top_n_agreement,
    "top-n-1-agreement": seed_top_n_minus1_agreement,
    "top-n-1-disagreement": seed_top_n_minus1_disagreement,
}


def run_seeded(instance, seeder, item_order=None, sink_rule="lex"):
    make = SEEDERS[seeder] if isinstance(seeder, str) else seeder
    return framework_run(instance, make(instance), item_order, sink_rule)


__all__ = [
    "TopSets",
    "top_sets",
    "ratio_matrix",
    "certified_beta",
    "SeededPartial",
    "FrameworkResult",
    "framework_run",
    "seed_top_n_agreement",
    "seed_top_n_minus1_agreement",
    "seed_top_n_minus1_disagreement",
    "SEEDERS",
    "run_seeded",
]
