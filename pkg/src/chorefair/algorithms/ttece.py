"""Top-trading envy-cycle elimination for chores.

Each agent points at the owner of her cheapest bundle, preferring her own
bundle and then the lowest agent index. Agents pointing at themselves are
sinks. While chores remain, a sink receives the next chore; if there is no
sink, the bundles are rotated along a cycle first, after which every agent on
the cycle holds her cheapest bundle and is a sink.
"""

from dataclasses import dataclass

from ..errors import ImplementationFault, UsageError
from ..model import Allocation, bits, check_allocation


@dataclass(frozen=True)
class EnvyGraph:
    """``target[i]`` is the agent holding ``i``'s cheapest bundle."""

    target: tuple

    @classmethod
    def of(cls, instance, bundles):
        n = instance.n
        target = []
        for i in range(n):
            best = i
            best_cost = instance.cost(i, bundles[i])
            for j in range(n):
                c = instance.cost(i, bundles[j])
                if c < best_cost:
                    best, best_cost = j, c
            target.append(best)
        return cls(tuple(target))

    @property
    def sinks(self):
        return [i for i, t in enumerate(self.target) if t == i]

    def cycle(self, start=0):
        """A cycle reached by following edges from ``start``."""
        seen = {}
        node = start
        path = []
        while node not in seen:
            seen[node] = len(path)
            path.append(node)
            node = self.target[node]
        return path[seen[node]:]


def lex_sink(sinks, bundles):
    return min(sinks)


SINK_RULES = {"lex": lex_sink}


def ttece(instance, start=None, item_order=None, sink_rule="lex", callback=None):
    """Allocate the remaining chores one at a time to sinks of the envy graph.

    Parameters
    ----------
    start : Allocation, optional
        Partial allocation to extend; empty by default.
    item_order : sequence of int, optional
        Exactly the unallocated chores, in the order they are handed out.
        Defaults to ascending chore index.
    sink_rule : "lex" or callable
        ``rule(sinks, bundles) -> agent`` choosing among current sinks.
    callback : callable, optional
        Called as ``callback(event, bundles, remaining)`` after every cycle
        rotation (``event="cycle"``) and chore placement (``event="place"``);
        ``remaining`` is the mask of chores not yet handed out.

    Returns
    -------
    Allocation
    """
    start = Allocation.empty(instance.n) if start is None else start
    check_allocation(instance, start)
    remaining = start.unallocated(instance.m)
    if item_order is None:
        item_order = bits(remaining)
    item_order = list(item_order)
    if sorted(item_order) != bits(remaining):
        raise UsageError("item_order must list exactly the unallocated chores")
    rule = SINK_RULES[sink_rule] if isinstance(sink_rule, str) else sink_rule

    bundles = list(start.bundles)
    rotations = 0
    for e in item_order:
        graph = EnvyGraph.of(instance, bundles)
        if not graph.sinks:
            cycle = graph.cycle()
            moved = {i: bundles[graph.target[i]] for i in cycle}
            for i, b in moved.items():
                bundles[i] = b
            rotations += 1
            if callback:
                callback("cycle", tuple(bundles), remaining)
            graph = EnvyGraph.of(instance, bundles)
            if not graph.sinks:
                raise ImplementationFault("no sink after a cycle rotation")
        s = rule(graph.sinks, tuple(bundles))
        if s not in graph.sinks:
            raise UsageError(f"sink rule chose agent {s}, which is not a sink")
        bundles[s] |= 1 << e
        remaining &= ~(1 << e)
        if callback:
            callback("place", tuple(bundles), remaining)
    if rotations > len(item_order):
        raise ImplementationFault("more rotations than placements")
    return Allocation(tuple(bundles))
