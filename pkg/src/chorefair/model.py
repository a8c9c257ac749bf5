"""Instances, cost models, allocations and chore orderings.

Bundles are integer bitmasks: chore ``e`` is in bundle ``B`` iff
``B >> e & 1``.
"""

from dataclasses import dataclass, field
from typing import Any, Mapping, Sequence

from .costs import INF, as_cost, is_inf
from .errors import UsageError

MAX_CHORES = 62


def bits(mask):
    """Chore indices in ``mask``, ascending."""
    out = []
    e = 0
    while mask:
        if mask & 1:
            out.append(e)
        mask >>= 1
        e += 1
    return out


def mask_of(chores):
    mask = 0
    for e in chores:
        mask |= 1 << e
    return mask


# --------------------------------------------------------------------------
# cost models


@dataclass(frozen=True)
class AdditiveCost:
    costs: tuple

    def __post_init__(self):
        object.__setattr__(self, "costs", tuple(as_cost(c) for c in self.costs))

    def cost(self, agent, mask):
        total = 0
        for e in bits(mask):
            total = total + self.costs[e]
        return total

    def singleton(self, e):
        return self.costs[e]


@dataclass(frozen=True)
class TableCost:
    """Explicit cost for every one of the ``2**m`` bundles."""

    entries: tuple

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(as_cost(c) for c in self.entries))
        size = len(self.entries)
        if size == 0 or size & (size - 1):
            raise UsageError(f"table needs 2**m entries, got {size}")

    def cost(self, agent, mask):
        return self.entries[mask]

    def singleton(self, e):
        return self.entries[1 << e]


@dataclass(frozen=True)
class ClosedFormCost:
    """A named construction evaluated as a pure function of (agent, bundle).

    ``params`` is stored as a sorted tuple of items so the model stays
    hashable; :attr:`param_dict` gives the mapping back.
    """

    name: str
    params: tuple

    def __post_init__(self):
        from . import constructions

        if isinstance(self.params, Mapping):
            object.__setattr__(self, "params", _freeze(self.params))
        object.__setattr__(self, "_evaluator", constructions.closed_form_evaluator(self.name, self.param_dict))

    @property
    def param_dict(self):
        return {k: list(v) if isinstance(v, tuple) else v for k, v in self.params}

    def cost(self, agent, mask):
        return self._evaluator(agent, mask)


def _freeze(params):
    return tuple(sorted((k, tuple(v) if isinstance(v, list) else v) for k, v in params.items()))


CostModel = Any  # AdditiveCost | TableCost | ClosedFormCost


# --------------------------------------------------------------------------
# instances


@dataclass(frozen=True)
class Instance:
    n: int
    m: int
    cost_models: tuple
    label: str = ""
    _tables: dict = field(default_factory=dict, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "cost_models", tuple(self.cost_models))
        if self.n < 1:
            raise UsageError("an instance needs at least one agent")
        if not 0 <= self.m <= MAX_CHORES:
            raise UsageError(f"chore count must lie in [0, {MAX_CHORES}]")
        if len(self.cost_models) != self.n:
            raise UsageError(f"expected {self.n} cost models, got {len(self.cost_models)}")
        for i, model in enumerate(self.cost_models):
            if isinstance(model, AdditiveCost) and len(model.costs) != self.m:
                raise UsageError(f"agent {i}: additive model has {len(model.costs)} costs for {self.m} chores")
            if isinstance(model, TableCost) and len(model.entries) != 1 << self.m:
                raise UsageError(f"agent {i}: table has {len(model.entries)} entries, expected {1 << self.m}")

    @classmethod
    def additive(cls, matrix, label=""):
        """Build an additive instance from an ``n x m`` cost matrix."""
        matrix = [list(row) for row in matrix]
        m = len(matrix[0]) if matrix else 0
        return cls(len(matrix), m, tuple(AdditiveCost(tuple(row)) for row in matrix), label)

    @property
    def full(self):
        return (1 << self.m) - 1

    @property
    def is_additive(self):
        return all(isinstance(c, AdditiveCost) for c in self.cost_models)

    def cost(self, agent, bundle):
        """Cost of ``bundle`` (a bitmask) to ``agent``."""
        if not 0 <= agent < self.n:
            raise UsageError(f"agent {agent} out of range for n={self.n}")
        if bundle < 0 or bundle >> self.m:
            raise UsageError(f"bundle {bundle:#b} mentions chores outside 0..{self.m - 1}")
        return self.cost_models[agent].cost(agent, bundle)

    def chore_cost(self, agent, e):
        return self.cost(agent, 1 << e)

    def table(self, agent):
        """Dense list of ``cost(agent, mask)`` for every mask, memoised."""
        tab = self._tables.get(agent)
        if tab is None:
            if self.m > 24:
                raise UsageError(f"refusing to tabulate 2**{self.m} bundles")
            model = self.cost_models[agent]
            if isinstance(model, TableCost):
                tab = list(model.entries)
            elif isinstance(model, AdditiveCost):
                tab = [0] * (1 << self.m)
                for mask in range(1, 1 << self.m):
                    low = mask & -mask
                    tab[mask] = tab[mask ^ low] + model.costs[low.bit_length() - 1]
            else:
                tab = [model.cost(agent, mask) for mask in range(1 << self.m)]
            self._tables[agent] = tab
        return tab

    def sigma(self, agent, rank, subset=None):
        return sigma(self, agent, rank, subset)


# --------------------------------------------------------------------------
# allocations


@dataclass(frozen=True)
class Allocation:
    """One bundle (bitmask) per agent. Bundles are pairwise disjoint.

    The same type serves for partial allocations; use :meth:`is_complete` to
    test that every chore is assigned.
    """

    bundles: tuple

    def __post_init__(self):
        object.__setattr__(self, "bundles", tuple(int(b) for b in self.bundles))
        seen = 0
        for b in self.bundles:
            if b < 0:
                raise UsageError("negative bundle mask")
            if seen & b:
                raise UsageError(f"bundles overlap on chores {bits(seen & b)}")
            seen |= b

    @classmethod
    def from_lists(cls, lists):
        return cls(tuple(mask_of(b) for b in lists))

    @classmethod
    def empty(cls, n):
        return cls((0,) * n)

    def to_lists(self):
        return [bits(b) for b in self.bundles]

    @property
    def n(self):
        return len(self.bundles)

    @property
    def allocated(self):
        out = 0
        for b in self.bundles:
            out |= b
        return out

    def unallocated(self, m):
        return ((1 << m) - 1) & ~self.allocated

    def is_complete(self, m):
        return self.allocated == (1 << m) - 1

    def owner(self, e):
        for i, b in enumerate(self.bundles):
            if b >> e & 1:
                return i
        return None

    def with_bundle(self, agent, bundle):
        bundles = list(self.bundles)
        bundles[agent] = bundle
        return Allocation(tuple(bundles))

    def __getitem__(self, i):
        return self.bundles[i]

    def __len__(self):
        return len(self.bundles)

    def __iter__(self):
        return iter(self.bundles)


def check_allocation(instance, allocation, complete=False):
    if allocation.n != instance.n:
        raise UsageError(f"allocation has {allocation.n} bundles for {instance.n} agents")
    if allocation.allocated >> instance.m:
        raise UsageError("allocation mentions chores outside the instance")
    if complete and not allocation.is_complete(instance.m):
        raise UsageError(f"allocation leaves chores {bits(allocation.unallocated(instance.m))} unassigned")


# --------------------------------------------------------------------------
# orderings


def ranking(instance, agent, subset=None):
    """Chores of ``subset`` from most to least costly for ``agent``.

    Ties are broken by the lower chore index.
    """
    if subset is None:
        subset = instance.full
    return sorted(bits(subset), key=lambda e: (-instance.chore_cost(agent, e), e))


def sigma(instance, agent, rank, subset=None):
    """The ``rank``-th (1-based) most costly chore of ``subset`` for ``agent``."""
    order = ranking(instance, agent, subset)
    if not 1 <= rank <= len(order):
        raise UsageError(f"rank {rank} out of range 1..{len(order)}")
    return order[rank - 1]


# --------------------------------------------------------------------------
# validation


@dataclass(frozen=True)
class Violation:
    agent: int
    kind: str
    masks: tuple
    detail: str = ""

    def __str__(self):
        shown = ", ".join(str(bits(m)) for m in self.masks)
        return f"agent {self.agent}: {self.kind} at ({shown}) {self.detail}".rstrip()


def monotonicity_violations(instance, agent, limit=None):
    tab = instance.table(agent)
    out = []
    if tab[0] != 0:
        out.append(Violation(agent, "normalization", (0,), f"cost(empty) = {tab[0]}"))
    for mask in range(1 << instance.m):
        for e in range(instance.m):
            if not mask >> e & 1 and tab[mask | 1 << e] < tab[mask]:
                out.append(Violation(agent, "monotonicity", (mask, mask | 1 << e)))
                if limit and len(out) >= limit:
                    return out
    return out


def superadditivity_violations(instance, agent, limit=None):
    """All disjoint pairs ``(S, T)`` with ``c(S | T) < c(S) + c(T)``."""
    tab = instance.table(agent)
    full = instance.full
    out = []
    for s in range(1 << instance.m):
        rest = full & ~s
        t = rest
        # submasks of the complement, each unordered pair visited twice
        while True:
            if s <= t and tab[s | t] < tab[s] + tab[t]:
                out.append(Violation(agent, "superadditivity", (s, t)))
                if limit and len(out) >= limit:
                    return out
            if t == 0:
                break
            t = (t - 1) & rest
    return out


def is_superadditive(instance, agent):
    return not superadditivity_violations(instance, agent, limit=1)


AUDIT_MAX_CHORES = 12


def validate(instance):
    """Return the list of model violations; an empty list means valid."""
    out = []
    for i, model in enumerate(instance.cost_models):
        if isinstance(model, AdditiveCost):
            for e, c in enumerate(model.costs):
                if is_inf(c):
                    out.append(Violation(i, "non-finite additive cost", (1 << e,)))
        elif isinstance(model, TableCost):
            out.extend(monotonicity_violations(instance, i))
        elif instance.m <= AUDIT_MAX_CHORES:
            out.extend(monotonicity_violations(instance, i))
            if model.name == "theorem1":
                out.extend(superadditivity_violations(instance, i))
    return out


__all__ = [
    "INF",
    "AdditiveCost",
    "TableCost",
    "ClosedFormCost",
    "Instance",
    "Allocation",
    "Violation",
    "bits",
    "mask_of",
    "ranking",
    "sigma",
    "validate",
    "check_allocation",
    "is_superadditive",
    "superadditivity_violations",
    "monotonicity_violations",
]
