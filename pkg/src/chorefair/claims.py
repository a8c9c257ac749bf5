"""Reproducible checks behind the ``verify-paper`` and ``bench`` commands.

Each check returns :class:`Claim` records holding what was expected and
what was observed. Nothing here decides a verdict by tolerance: arithmetic
is exact, so a claim holds only if the observed value equals the expected
one (or the expected predicate is met).
"""

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .algorithms import (
    SEEDERS,
    few_chores_efx,
    framework_run,
    three_agent_2efx,
    ttece,
)
from .algorithms.framework import ratio_property_violation
from .constructions import (
    has_equal_partition,
    partition_reduction,
    random_additive,
    random_monotone_table,
    random_top_structured,
    six_chore_instance,
    three_partition_reduction,
)
from .costs import INF, cost_to_json, fmt
from .errors import ImplementationFault
from .fairness import is_alpha_efx, is_ef1, is_mms, mms_value, worst_ratio
from .model import Allocation, is_superadditive
from .solver import best_efx_ratio, find_efx


@dataclass
class Claim:
    check: str
    claim: str
    expected: str
    observed: str
    ok: bool

    def to_json(self):
        return {"check": self.check, "claim": self.claim, "expected": self.expected,
                "observed": self.observed, "ok": self.ok}

    def line(self):
        mark = "PASS" if self.ok else "FAIL"
        return f"[{mark}] {self.check}: {self.claim}; expected {self.expected}, observed {self.observed}"


def _yn(flag):
    return "YES" if flag else "NO"


# --------------------------------------------------------------------------
# hand-built instances

DEFAULT_KS = (3, 5, 10, 100)


def check_six_chore(ks=DEFAULT_KS, budget=None):
    out = []
    for k in ks:
        inst = six_chore_instance(k)
        res = best_efx_ratio(inst, budget=budget)
        tag = f"theorem1 k={fmt(k)}"
        out.append(Claim(tag, "EFX exists", "NO", _yn(res.efx_allocation is not None),
                         res.efx_allocation is None))
        half = Fraction(k) / 2
        out.append(Claim(tag, "best ratio", f"{fmt(half)} (= k/2)", fmt(res.best_ratio),
                         res.best_ratio == half))
        sup = all(is_superadditive(inst, i) for i in range(inst.n))
        out.append(Claim(tag, "superadditive", "YES", _yn(sup), sup))
    return out


MMS_WITNESS = ((0,), (1, 2, 3), (4, 5))


def check_mms_witness(ks=DEFAULT_KS, budget=None):
    out = []
    for k in ks:
        inst = six_chore_instance(k)
        tag = f"corollary2 k={fmt(k)}"
        values = [mms_value(inst, i, budget) for i in range(inst.n)]
        out.append(Claim(tag, "MMS value of every agent", fmt(k), ", ".join(fmt(v) for v in values),
                         all(v == k for v in values)))
        alloc = Allocation.from_lists(MMS_WITNESS)
        mms = is_mms(inst, alloc, values=values)
        out.append(Claim(tag, "witness allocation is MMS", "YES", _yn(mms), mms))
        w = worst_ratio(inst, alloc)
        out.append(Claim(tag, "EFX ratio of the witness", "inf", fmt(w), w == INF))
    return out


# --------------------------------------------------------------------------
# reductions

PARTITION_CORPUS = (
    # splittable into three equal sums
    (1, 1, 1, 1, 1, 1), (1, 1, 1, 2, 2, 2), (1, 1, 1, 5, 5, 5), (1, 1, 2, 2, 3, 3),
    (1, 1, 2, 3, 4, 4), (1, 1, 2, 4, 5, 5), (1, 2, 2, 3, 3, 4), (1, 2, 3, 3, 4, 5),
    (2, 2, 2, 6, 6, 6), (2, 2, 3, 5, 6, 6), (2, 2, 4, 4, 6, 6), (2, 3, 3, 4, 4, 5),
    (2, 3, 3, 5, 5, 6), (3, 3, 3, 5, 5, 5), (3, 4, 4, 4, 4, 5), (3, 4, 4, 5, 5, 6),
    (4, 4, 4, 6, 6, 6),
    # not splittable
    (2, 2, 3, 3, 3, 5), (1, 1, 3, 4, 4, 5), (1, 1, 3, 5, 5, 6), (1, 1, 4, 4, 5, 6),
    (1, 2, 3, 5, 5, 5), (1, 3, 4, 5, 5, 6), (2, 2, 3, 3, 5, 6), (2, 3, 3, 5, 5),
    (2, 3, 4, 6, 6, 6), (2, 4, 5, 5, 5, 6), (2, 5, 5, 5, 5, 5), (3, 3, 3, 3),
    (3, 5, 5, 5), (3, 5, 5, 5, 6, 6), (4, 5, 6, 6), (5, 5, 5, 6), (6, 6, 6, 6),
)

TRIPLET_CORPUS = (
    # two triplets of equal sum
    (3, 3, 3, 3, 3, 3), (6, 7, 7, 8, 8, 8), (6, 7, 8, 8, 8, 9), (7, 7, 9, 10, 10, 11),
    (8, 8, 9, 9, 10, 10), (8, 9, 11, 11, 11, 12), (10, 11, 11, 11, 11, 12),
    # no such split
    (5, 5, 5, 7, 8, 8), (5, 5, 5, 5, 5, 7), (6, 6, 6, 8, 9, 9), (7, 7, 7, 7, 9, 11),
    (7, 7, 9, 9, 9, 11), (8, 8, 9, 11, 12, 12), (10, 12, 12, 12, 12, 12),
)


def check_partition_reduction(corpus=PARTITION_CORPUS, budget=None):
    out = []
    for values in corpus:
        inst = partition_reduction(values)
        part = has_equal_partition(values, 3)
        efx = find_efx(inst, budget=budget) is not None
        out.append(Claim(f"npc {','.join(map(str, values))}", "partition exists iff EFX exists",
                         f"partition: {_yn(part)}; EFX: {_yn(part)}", f"partition: {_yn(part)}; EFX: {_yn(efx)}",
                         part == efx))
    return out


def check_triplet_reduction(corpus=TRIPLET_CORPUS, n=2, budget=None):
    out = []
    for values in corpus:
        inst = three_partition_reduction(values, n)
        part = has_equal_partition(values, n, triplets=True)
        efx = find_efx(inst, budget=budget) is not None
        out.append(Claim(f"strong-np n={n} {','.join(map(str, values))}", "triplet partition exists iff EFX exists",
                         f"partition: {_yn(part)}; EFX: {_yn(part)}", f"partition: {_yn(part)}; EFX: {_yn(efx)}",
                         part == efx))
    return out


# --------------------------------------------------------------------------
# randomised algorithm suites


@dataclass
class SuiteStats:
    name: str
    trials: int = 0
    failures: list = field(default_factory=list)
    worst: object = 0
    seconds: float = 0.0
    below_optimum: list = field(default_factory=list)

    def add(self, ratio):
        self.trials += 1
        if ratio > self.worst:
            self.worst = ratio

    def to_json(self):
        return {"name": self.name, "trials": self.trials, "failures": len(self.failures),
                "worst_ratio": cost_to_json(self.worst), "seconds": round(self.seconds, 3),
                "below_optimum": len(self.below_optimum)}


def few_chores_suite(trials=1000, shapes=((3, 5), (4, 6), (5, 7)), seed=0):
    stats = []
    for n, m in shapes:
        s = SuiteStats(f"few-chores n={n} m={m}")
        start = time.perf_counter()
        for t in range(trials):
            inst = random_monotone_table(n, m, _seed_for(seed, n, m, t))
            try:
                out = few_chores_efx(inst)
                s.add(worst_ratio(inst, out))
                if not is_alpha_efx(inst, out, 1):
                    s.failures.append(inst.label)
            except ImplementationFault:
                s.trials += 1
                s.failures.append(inst.label)
        s.seconds = time.perf_counter() - start
        stats.append(s)
    return stats


def _seed_for(seed, *parts):
    return random.Random(f"{seed}:{':'.join(map(str, parts))}").getrandbits(32)


def framework_suite(trials=500, seed=0):
    stats = []
    for name, seeder in SEEDERS.items():
        s = SuiteStats(f"framework {name}")
        rng = random.Random(_seed_for(seed, name))
        start = time.perf_counter()
        for t in range(trials):
            n = rng.randint(2, 5)
            low = max(n, n * (n - 1)) if name == "top-n-1-disagreement" else n
            m = rng.randint(low, low + 6)
            inst = random_top_structured(name, n, m, _seed_for(seed, name, t))
            try:
                res = framework_run(inst, seeder(inst))
                r = worst_ratio(inst, res.allocation)
                s.add(r)
                if r > res.factor:
                    s.failures.append(inst.label)
            except ImplementationFault:
                s.trials += 1
                s.failures.append(inst.label)
        s.seconds = time.perf_counter() - start
        stats.append(s)
    return stats


def three_agent_suite(trials=1000, seed=0, max_m=10, oracle_m=8, budget=None):
    s = SuiteStats("three-agent")
    rng = random.Random(_seed_for(seed, "three-agent"))
    start = time.perf_counter()
    for t in range(trials):
        m = rng.randint(1, max_m)
        inst = random_additive(3, m, _seed_for(seed, "three-agent", t))
        try:
            out = three_agent_2efx(inst)
        except ImplementationFault:
            s.trials += 1
            s.failures.append(inst.label)
            continue
        r = worst_ratio(inst, out)
        s.add(r)
        if r > 2:
            s.failures.append(inst.label)
        if m <= oracle_m and r < best_efx_ratio(inst, budget=budget).best_ratio:
            s.below_optimum.append(inst.label)
    s.seconds = time.perf_counter() - start
    return [s]


def ttece_suite(trials=1000, seed=0, max_n=5, max_m=12):
    s = SuiteStats("ttece")
    rng = random.Random(_seed_for(seed, "ttece"))
    start = time.perf_counter()
    for t in range(trials):
        n, m = rng.randint(1, max_n), rng.randint(0, max_m)
        inst = random_additive(n, m, _seed_for(seed, "ttece", t))
        events = []
        out = ttece(inst, callback=lambda ev, b, r: events.append(ev))
        s.add(worst_ratio(inst, out))
        if not out.is_complete(m) or not is_ef1(inst, out) or events.count("place") != m \
                or events.count("cycle") > m:
            s.failures.append(inst.label)
    s.seconds = time.perf_counter() - start
    return [s]


def suite_claims(check, stats, bound):
    out = []
    for s in stats:
        ok = not s.failures and not s.below_optimum and s.worst <= bound
        observed = f"{len(s.failures)} failures in {s.trials}, worst ratio {fmt(s.worst)}"
        if s.below_optimum:
            observed += f", {len(s.below_optimum)} below the exact optimum"
        out.append(Claim(check, s.name, f"0 failures, worst ratio <= {fmt(bound)}", observed, ok))
    return out


def check_framework(trials=500, seed=0):
    out = []
    for s in framework_suite(trials, seed):
        ok = not s.failures
        out.append(Claim("theorem6", s.name, "0 runs above the certified factor",
                         f"{len(s.failures)} failures in {s.trials}, worst ratio {fmt(s.worst)}", ok))
    return out


SELECTORS = ("theorem1", "corollary2", "npc", "strong-np", "theorem7", "theorem6", "theorem8")


def verify(selector, ks=None, ints=None, n=2, trials=None, seed=0, budget=None):
    """Run one selector (or ``"all"``) and return its claims."""
    ks = tuple(ks) if ks else DEFAULT_KS
    if selector == "all":
        out = []
        for name in SELECTORS:
            out += verify(name, ks if ks != DEFAULT_KS else None, None, n, trials, seed, budget)
        return out
    if selector == "theorem1":
        return check_six_chore(ks, budget)
    if selector == "corollary2":
        return check_mms_witness(ks, budget)
    if selector == "npc":
        return check_partition_reduction((tuple(ints),) if ints else PARTITION_CORPUS, budget)
    if selector == "strong-np":
        return check_triplet_reduction((tuple(ints),) if ints else TRIPLET_CORPUS, n, budget)
    if selector == "theorem7":
        return suite_claims("theorem7", few_chores_suite(trials or 1000, seed=seed), 1)
    if selector == "theorem6":
        return check_framework(trials or 500, seed)
    if selector == "theorem8":
        return suite_claims("theorem8", three_agent_suite(trials or 1000, seed, budget=budget), 2)
    raise ValueError(f"unknown selector {selector!r}")
