"""JSON encoding of instances and allocations.

Costs are written as JSON integers when integral, as ``"p/q"`` strings for
other rationals and as ``"inf"`` for the infinite cost, so that decoding
gives back exactly the same values. Table entries are keyed by the decimal
bundle bitmask.
"""

import json

from .costs import as_cost, cost_to_json
from .errors import UsageError
from .model import AdditiveCost, Allocation, ClosedFormCost, Instance, TableCost, check_allocation


def model_to_json(model):
    if isinstance(model, AdditiveCost):
        return {"type": "additive", "costs": [cost_to_json(c) for c in model.costs]}
    if isinstance(model, TableCost):
        return {"type": "table", "entries": {str(mask): cost_to_json(c) for mask, c in enumerate(model.entries)}}
    if isinstance(model, ClosedFormCost):
        return {"type": "closed_form", "name": model.name, "params": model.param_dict}
    raise UsageError(f"cannot serialise cost model {model!r}")


def model_from_json(obj, m):
    if not isinstance(obj, dict):
        raise UsageError("a cost model must be a JSON object")
    kind = obj.get("type")
    try:
        if kind == "additive":
            return AdditiveCost(tuple(as_cost(c) for c in obj["costs"]))
        if kind == "table":
            entries = obj["entries"]
            if isinstance(entries, list):
                return TableCost(tuple(as_cost(c) for c in entries))
            size = 1 << m
            table = [None] * size
            for key, value in entries.items():
                mask = int(key)
                if not 0 <= mask < size:
                    raise UsageError(f"table mask {key} out of range for m={m}")
                table[mask] = as_cost(value)
            missing = [mask for mask, c in enumerate(table) if c is None]
            if missing:
                raise UsageError(f"table is missing {len(missing)} entries, first mask {missing[0]}")
            return TableCost(tuple(table))
        if kind == "closed_form":
            return ClosedFormCost(obj["name"], dict(obj.get("params", {})))
    except KeyError as exc:
        raise UsageError(f"cost model of type {kind!r} lacks field {exc}") from None
    except (TypeError, ValueError) as exc:
        if isinstance(exc, UsageError):
            raise
        raise UsageError(f"bad cost model: {exc}") from None
    raise UsageError(f"unknown cost model type {kind!r}")


def instance_to_json(instance):
    return {
        "n": instance.n,
        "m": instance.m,
        "label": instance.label,
        "cost_models": [model_to_json(model) for model in instance.cost_models],
    }


def instance_from_json(obj):
    if not isinstance(obj, dict):
        raise UsageError("an instance must be a JSON object")
    try:
        n, m = obj["n"], obj["m"]
        models = obj["cost_models"]
    except KeyError as exc:
        raise UsageError(f"instance lacks field {exc}") from None
    if not isinstance(n, int) or not isinstance(m, int):
        raise UsageError("n and m must be integers")
    return Instance(n, m, tuple(model_from_json(x, m) for x in models), label=obj.get("label", ""))


def as_table_instance(instance):
    """The same instance with every agent's cost model expanded to a table."""
    models = tuple(TableCost(tuple(instance.table(i))) for i in range(instance.n))
    return Instance(instance.n, instance.m, models, label=instance.label)


def allocation_to_json(allocation):
    return {"bundles": allocation.to_lists()}


def allocation_from_json(obj, instance=None):
    if not isinstance(obj, dict) or "bundles" not in obj:
        raise UsageError('an allocation must be an object with a "bundles" list')
    try:
        alloc = Allocation.from_lists(obj["bundles"])
    except (TypeError, ValueError) as exc:
        if isinstance(exc, UsageError):
            raise
        raise UsageError(f"bad allocation: {exc}") from None
    if instance is not None:
        check_allocation(instance, alloc)
    return alloc


def dumps(obj):
    return json.dumps(obj, indent=2)


def load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from None


def read_instance(path):
    return instance_from_json(load_json(path))


def read_allocation(path, instance=None):
    return allocation_from_json(load_json(path), instance)


def write_json(obj, path):
    with open(path, "w") as fh:
        fh.write(dumps(obj) + "\n")
