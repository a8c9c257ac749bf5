"""Instance generators: the hand-built hard instances, the partition
reductions, the ranking-gap instance, and random families for testing.

Chore layouts are fixed so serialised instances are stable:

* six-chore instance: ``(a_hat, a1, a2, b1, b2, b3)`` at indices 0..5;
* reductions: the integer chores first, in input order, then ``b_1..b_n``.
"""

import itertools
import random
from fractions import Fraction

from .costs import INF, as_cost, cost_to_json
from .errors import ParameterError
from .model import AdditiveCost, Allocation, ClosedFormCost, Instance, TableCost, mask_of

# --------------------------------------------------------------------------
# closed-form evaluators


def _six_chore_evaluator(params):
    k = as_cost(params["k"])
    big = k * k
    packing = params.get("variant", "literal") == "packing"
    if params.get("variant", "literal") not in ("literal", "packing"):
        raise ParameterError(f"unknown variant {params['variant']!r}")
    singles = (k, 1, 1, 0, 0, 0)
    a_mask = 0b000111
    b_mask = 0b111000

    def cost(agent, mask):
        own_b = 1 << (3 + agent)
        others_b = b_mask & ~own_b
        pair = mask & others_b == others_b
        own = bool(mask & own_b and mask & a_mask)
        total = 0
        for e in range(3):
            if mask >> e & 1:
                total += singles[e]
        if packing:
            # the two triggers use different b-chores, so both can be paid for
            return total + big * (pair + own)
        return big if pair or own else total

    return cost


def _reduction_evaluator(params):
    ints = [as_cost(a) for a in params["ints"]]
    n_agents = params.get("n", 3)
    big = params.get("big")
    big = INF if big is None else as_cost(big)
    strong = params.get("strong", False)
    p = len(ints)
    a_mask = (1 << p) - 1

    def cost(agent, mask):
        own_b = 1 << (p + agent)
        b_bits = mask >> p
        if mask & own_b and mask & a_mask:
            return big
        if strong:
            # two distinct b-chores, neither of them the agent's own
            foreign = b_bits & ~(1 << agent)
            if foreign & (foreign - 1):
                return big
        else:
            others = ((1 << n_agents) - 1) & ~(1 << agent)
            if b_bits & others == others:
                return big
        total = 0
        e = 0
        m = mask & a_mask
        while m:
            if m & 1:
                total += ints[e]
            m >>= 1
            e += 1
        return total

    return cost


def closed_form_evaluator(name, params):
    """Return ``cost(agent, mask)`` for a registered closed-form construction."""
    if name == "theorem1":
        return _six_chore_evaluator(params)
    if name == "npc_reduction":
        return _reduction_evaluator({**params, "n": 3, "strong": False})
    if name == "strong_np_reduction":
        return _reduction_evaluator({**params, "strong": True})
    raise ParameterError(f"unknown closed-form construction {name!r}")


# --------------------------------------------------------------------------
# the six-chore superadditive instance


def six_chore_instance(k, variant="literal"):
    """Three agents, six chores, superadditive costs with no bounded EFX
    approximation: the best achievable ratio is ``k / 2``.

    Chores are ``(a_hat, a1, a2, b1, b2, b3)``. Single chores cost
    ``(k, 1, 1, 0, 0, 0)`` to everyone; agent ``i`` pays ``k**2`` for any
    bundle holding both foreign b-chores or holding ``b_i`` together with an
    a-chore, and the additive sum otherwise.

    These literal costs are not superadditive: ``{a_hat}`` and ``{b2, b3}``
    cost agent 0 ``k`` and ``k**2`` apart but ``k**2`` together. With
    ``variant="packing"`` a bundle instead costs its additive sum plus
    ``k**2`` per trigger it contains, which is superadditive and has the
    same best ratio and MMS values.
    """
    k = as_cost(k)
    if not k > 2:
        raise ParameterError(f"k must exceed 2, got {k}")
    params = {"k": cost_to_json(k)}
    label = f"theorem1(k={cost_to_json(k)})"
    if variant != "literal":
        params["variant"] = variant
        label = f"theorem1(k={cost_to_json(k)},{variant})"
    model = ClosedFormCost("theorem1", params)
    return Instance(3, 6, (model,) * 3, label=label)


# --------------------------------------------------------------------------
# reductions from partition problems


def _check_ints(values):
    values = list(values)
    for a in values:
        if isinstance(a, bool) or not isinstance(a, int) or a <= 0:
            raise ParameterError(f"entries must be positive integers, got {a!r}")
    return values


def _big_value(values, big):
    if big is None or big == "inf":
        return None
    if big == "auto":
        return 1 + 3 * sum(values)
    return cost_to_json(as_cost(big))


def partition_reduction(values, big=None):
    """Three-agent instance that has an EFX allocation iff ``values`` splits
    into three parts of equal sum.

    ``big=None`` uses the infinite cost on the trigger bundles; ``"auto"``
    substitutes the finite ``1 + 3 * sum(values)``; any number is used as is.
    """
    values = _check_ints(values)
    if not values:
        raise ParameterError("need at least one integer")
    total = sum(values)
    if total % 3:
        raise ParameterError(f"sum {total} is not divisible by 3")
    target = total // 3
    too_big = [a for a in values if a >= target]
    if too_big:
        raise ParameterError(f"entries {too_big} are not below S={target}")
    params = {"ints": values, "big": _big_value(values, big)}
    model = ClosedFormCost("npc_reduction", params)
    return Instance(3, len(values) + 3, (model,) * 3, label=f"npc({','.join(map(str, values))})")


def three_partition_reduction(values, n, big=None):
    """``n``-agent instance that has an EFX allocation iff ``values`` splits
    into ``n`` triplets of equal sum ``T``."""
    values = _check_ints(values)
    if n < 1:
        raise ParameterError("need at least one agent")
    if len(values) != 3 * n:
        raise ParameterError(f"need exactly {3 * n} integers, got {len(values)}")
    total = sum(values)
    if total % n:
        raise ParameterError(f"sum {total} is not divisible by n={n}")
    t = Fraction(total, n)
    outside = [a for a in values if not t / 4 < a < t / 2]
    if outside:
        raise ParameterError(f"entries {outside} are not strictly inside (T/4, T/2) for T={t}")
    params = {"ints": values, "n": n, "big": _big_value(values, big)}
    model = ClosedFormCost("strong_np_reduction", params)
    return Instance(n, 4 * n, (model,) * n, label=f"strong_np(n={n};{','.join(map(str, values))})")


def has_equal_partition(values, parts=3, triplets=False):
    """Brute-force partition oracle.

    With ``triplets=False``: can ``values`` be split into ``parts`` groups of
    equal sum? With ``triplets=True``: into ``parts`` groups of exactly three
    elements each, all with equal sum.
    """
    values = list(values)
    total = sum(values)
    if parts < 1 or total % parts:
        return False
    if triplets and len(values) != 3 * parts:
        return False
    target = total // parts
    for labels in itertools.product(range(parts), repeat=len(values)):
        # canonical labelling: first use of each part in order
        if labels and labels[0] != 0:
            break
        sums = [0] * parts
        sizes = [0] * parts
        for a, p in zip(values, labels):
            sums[p] += a
            sizes[p] += 1
        if all(s == target for s in sums) and (not triplets or all(z == 3 for z in sizes)):
            return True
    return False


# --------------------------------------------------------------------------
# top-k agreement does not buy a better ratio guarantee


def ranking_gap_instance(n, k, m, big, eps):
    """Additive instance where everyone agrees on the top ``k`` chores and an
    envy-free allocation of them exists, yet the ratio property certifies no
    factor above ``1 / (1 - eps)`` for agents ``0..n-2``. That cap needs
    ``n >= 3``: with two agents the only other bundle is the large one.

    Returns ``(instance, partial)`` where ``partial`` gives chore ``i`` to
    agent ``i`` for ``i < n - 1`` and chores ``n-1..k-1`` to the last agent.
    """
    if n < 2:
        raise ParameterError("need at least two agents")
    if not 2 * n < k < m:
        raise ParameterError(f"need 2n < k < m, got n={n}, k={k}, m={m}")
    big = as_cost(big)
    eps = as_cost(eps)
    if not big >= 1:
        raise ParameterError("big must be at least 1")
    if not 0 < eps < 1:
        raise ParameterError("eps must lie in (0, 1)")
    share = Fraction(1, k + 1 - n)
    rows = []
    for _ in range(n - 1):
        rows.append([1] * k + [1 - eps] * (m - k))
    rows.append([big] * (n - 1) + [share] * (k + 1 - n) + [share] * (m - k))
    inst = Instance.additive(rows, label=f"observation_cntr(n={n},k={k},m={m})")
    bundles = [1 << i for i in range(n - 1)] + [mask_of(range(n - 1, k))]
    return inst, Allocation(tuple(bundles))


# --------------------------------------------------------------------------
# random families


def random_additive(n, m, seed, low=1, high=100):
    rng = random.Random(seed)
    rows = [[rng.randint(low, high) for _ in range(m)] for _ in range(n)]
    return Instance.additive(rows, label=f"random_additive(n={n},m={m},seed={seed})")


def random_ido(n, m, seed, high=100):
    """Additive instance where all agents rank the chores identically."""
    rng = random.Random(seed)
    order = list(range(m))
    rng.shuffle(order)
    rows = []
    for _ in range(n):
        vals = sorted(rng.sample(range(1, max(high, m) + 1), m), reverse=True)
        row = [0] * m
        for e, v in zip(order, vals):
            row[e] = v
        rows.append(row)
    return Instance.additive(rows, label=f"random_ido(n={n},m={m},seed={seed})")


def random_monotone_table(n, m, seed, max_step=10):
    """Monotone tables built bundle by bundle: each bundle costs the maximum of
    its one-smaller sub-bundles plus a random non-negative increment."""
    rng = random.Random(seed)
    models = []
    for _ in range(n):
        tab = [0] * (1 << m)
        for mask in sorted(range(1, 1 << m), key=int.bit_count):
            floor = max(tab[mask & ~(1 << e)] for e in range(m) if mask >> e & 1)
            tab[mask] = floor + rng.randint(0, max_step)
        models.append(TableCost(tuple(tab)))
    return Instance(n, m, tuple(models), label=f"random_monotone_table(n={n},m={m},seed={seed})")


def random_top_structured(kind, n, m, seed, high=100):
    """Random additive instance shaped to satisfy one seeder's precondition.

    ``kind`` is ``"top-n-agreement"`` (everyone's top ``n`` chores are the
    same), ``"top-n-1-agreement"`` (same top ``n - 1``) or
    ``"top-n-1-disagreement"`` (each agent has her own ``n - 1`` expensive
    chores). Expensive chores cost more than ``high`` and the rest at most
    ``high``, which fixes the top sets regardless of ties below.
    """
    rng = random.Random(seed)
    if kind == "top-n-agreement":
        shared = n
    elif kind == "top-n-1-agreement":
        shared = n - 1
    elif kind == "top-n-1-disagreement":
        shared = None
    else:
        raise ParameterError(f"unknown seeder shape {kind!r}")
    need = n * (n - 1) if shared is None else shared
    if m < max(need, n):
        raise ParameterError(f"need at least {max(need, n)} chores, got {m}")
    chores = list(range(m))
    rng.shuffle(chores)
    rows = []
    for i in range(n):
        if shared is None:
            mine = chores[i * (n - 1):(i + 1) * (n - 1)]
        else:
            mine = chores[:shared]
        row = [rng.randint(0, high) for _ in range(m)]
        for e in mine:
            row[e] = high + rng.randint(1, high)
        rows.append(row)
    return Instance.additive(rows, label=f"{kind}(n={n},m={m},seed={seed})")


RANDOM_FAMILIES = {
    "random_additive": random_additive,
    "random_monotone_table": random_monotone_table,
    "random_ido": random_ido,
}


def random_instance(family, seed, **params):
    """Deterministic random instance from one of :data:`RANDOM_FAMILIES`."""
    aliases = {"additive": "random_additive", "table": "random_monotone_table",
               "monotone": "random_monotone_table", "ido": "random_ido"}
    family = aliases.get(family, family)
    try:
        make = RANDOM_FAMILIES[family]
    except KeyError:
        raise ParameterError(f"unknown random family {family!r}") from None
    return make(seed=seed, **params)
