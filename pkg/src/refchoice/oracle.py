"""Independent brute-force evaluators and seeded instance generators.

The brute evaluators re-derive every probability by enumerating
consideration sets (or whole rankings) one at a time, computing each set's
attention weight directly from the defining formula, with none of the
interval marginalizations the fast paths use. Exact agreement between the
two routes is asserted across the generated corpus.

Generators draw parameters on a bounded rational grid (weights k/N) so all
downstream arithmetic stays exact and small; they are deterministic per
(kind, size, seed, denominator).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import permutations
from .core import ChoiceDataset, LinearOrder, Menu, Universe, bit, member_indices, subsets_between
from .extensions import RdRumModel, StochasticChoiceRule
from .models import (
    AttentionModel,
    CraModel,
    GeneralAttention,
    IraModel,
    LraModel,
    RefIndependentCra,
    RefIndependentIra,
    RefIndependentLra,
)
from .rationals import ONE, ZERO, Rat, format_rational

_LABELS = tuple("abcdefghijklmnop")

MODEL_KINDS = ("ira", "lra", "cra", "general", "ri-ira", "ri-lra", "ri-cra")


@dataclass(frozen=True)
class GeneratorConfig:
    size: int
    kind: str
    seed: int
    denominator: int = 10


def _rng(cfg: GeneratorConfig) -> random.Random:
    return random.Random(f"{cfg.kind}|{cfg.size}|{cfg.seed}|{cfg.denominator}")


def _universe(size: int) -> Universe:
    return Universe(_LABELS[:size])


def _preference(rng: random.Random, size: int) -> LinearOrder:
    order = list(range(size))
    rng.shuffle(order)
    return LinearOrder(tuple(order))


def _positive_weights(rng: random.Random, menus: list[Menu], n: int) -> dict[Menu, Rat]:
    raw = {menu: rng.randint(1, n) for menu in menus}
    total = sum(raw.values())
    return {menu: Rat(w, total) for menu, w in raw.items()}


def gen_model(cfg: GeneratorConfig) -> AttentionModel:
    """A full-support model of the requested kind, deterministic per config."""
    rng = _rng(cfg)
    uni = _universe(cfg.size)
    pref = _preference(rng, cfg.size)
    n = cfg.denominator
    full = uni.full_mask
    if cfg.kind == "ira":
        gamma = {
            (r, x): Rat(rng.randint(1, n - 1), n)
            for r in range(cfg.size)
            for x in range(cfg.size)
            if x != r
        }
        return IraModel(uni, pref, gamma)
    if cfg.kind == "ri-ira":
        gamma_ri = {x: Rat(rng.randint(1, n - 1), n) for x in range(cfg.size)}
        return RefIndependentIra(uni, pref, gamma_ri)
    if cfg.kind in ("lra", "cra"):
        weights: dict[tuple[int, Menu], Rat] = {}
        for r in range(cfg.size):
            per_ref = _positive_weights(rng, subsets_between(bit(r), full), n)
            for menu, w in per_ref.items():
                weights[(r, menu)] = w
        if cfg.kind == "lra":
            return LraModel(uni, pref, weights)
        return CraModel(uni, pref, weights)
    if cfg.kind in ("ri-lra", "ri-cra"):
        pi = _positive_weights(rng, list(uni.menus()), n)
        if cfg.kind == "ri-lra":
            return RefIndependentLra(uni, pref, pi)
        return RefIndependentCra(uni, pref, pi)
    if cfg.kind == "general":
        mu = {}
        for menu, r in uni.problems():
            mu[(r, menu)] = _positive_weights(rng, subsets_between(bit(r), menu), n)
        return GeneralAttention(uni, pref, mu)
    raise ValueError(f"unknown model kind: {cfg.kind!r}")


def gen_choice_rule(cfg: GeneratorConfig) -> StochasticChoiceRule:
    """An arbitrary stochastic choice rule (zeros allowed) per config."""
    rng = _rng(cfg)
    uni = _universe(cfg.size)
    table: dict[Menu, dict[int, Rat]] = {}
    for menu in uni.menus():
        members = member_indices(menu)
        raw = [rng.randint(0, cfg.denominator) for _ in members]
        while sum(raw) == 0:
            raw = [rng.randint(0, cfg.denominator) for _ in members]
        total = sum(raw)
        table[menu] = {x: Rat(w, total) for x, w in zip(members, raw) if w}
    return StochasticChoiceRule(uni, table)


# --- brute-force evaluation -----------------------------------------------------


def _brute_attention(model: AttentionModel, r: int, cons: Menu, menu: Menu) -> Rat:
    """Attention weight of one consideration set straight from the formulas."""
    if isinstance(model, GeneralAttention):
        return model.mu[(r, menu)].get(cons, ZERO)
    if isinstance(model, (IraModel, RefIndependentIra)):
        p = ONE
        for y in member_indices(menu):
            rate = model.rate(r, y)
            p *= rate if cons & bit(y) else ONE - rate
        return p
    if isinstance(model, LraModel):
        denom = ZERO
        for d in subsets_between(bit(r), menu):
            denom += model.pi[(r, d)]
        return model.pi[(r, cons)] / denom
    if isinstance(model, RefIndependentLra):
        denom = ZERO
        for d in subsets_between(bit(r), menu):
            denom += model.pi[d]
        return model.pi[cons] / denom
    if isinstance(model, CraModel):
        total = ZERO
        for (r2, d), w in model.pi_prime.items():
            if r2 == r and d & menu == cons:
                total += w
        return total
    if isinstance(model, RefIndependentCra):
        total = ZERO
        full = model.universe.full_mask
        for d in range(1, full + 1):
            if d & menu == cons and bit(r) & d:
                total += model.pi[d]
                stripped = d & ~bit(r)
                if stripped:
                    total += model.pi[stripped]
        return total
    raise TypeError(f"unsupported model type: {type(model).__name__}")


def brute_choice_prob(model: AttentionModel, x: int, menu: Menu, r: int) -> Rat:
    """Naive evaluation: enumerate every consideration set containing the
    reference, find its preference maximum by scanning, accumulate."""
    if not menu & bit(x) or not menu & bit(r):
        raise ValueError("alternative and reference must be members of the menu")
    pref = model.preference
    total = ZERO
    for cons in subsets_between(bit(r), menu):
        best = None
        for y in member_indices(cons):
            if best is None or pref.position(y) < pref.position(best):
                best = y
        if best == x:
            total += _brute_attention(model, r, cons, menu)
    return total


def brute_rdrum_choice_prob(model: RdRumModel, x: int, menu: Menu, r: int) -> Rat:
    """Order-maximization over all |X|! rankings, looking weights up per
    ranking (absent rankings carry weight zero)."""
    total = ZERO
    dist = model.weights[r]
    for perm in permutations(range(model.universe.size)):
        w = dist.get(perm)
        if w is None:
            continue
        for alt in perm:
            if menu & bit(alt):
                if alt == x:
                    total += w
                break
    return total


# --- dataset comparison -----------------------------------------------------------


@dataclass(frozen=True)
class Discrepancy:
    """One exact difference between two datasets on the same universe."""

    menu: tuple[str, ...]
    reference: str
    alternative: str | None
    kind: str  # "value" | "missing-left" | "missing-right"
    left: str | None
    right: str | None


def diff_datasets(a: ChoiceDataset, b: ChoiceDataset) -> list[Discrepancy]:
    """All cells where the datasets differ; empty iff they agree exactly."""
    if a.universe != b.universe:
        raise ValueError("datasets must share a universe")
    uni = a.universe
    out: list[Discrepancy] = []
    keys = sorted(set(a.table) | set(b.table))
    for menu, r in keys:
        row_a = a.lookup(menu, r)
        row_b = b.lookup(menu, r)
        labels = uni.labels_of(menu)
        if row_a is None or row_b is None:
            out.append(
                Discrepancy(
                    labels,
                    uni.label(r),
                    None,
                    "missing-left" if row_a is None else "missing-right",
                    None,
                    None,
                )
            )
            continue
        for x in member_indices(menu):
            if row_a[x] != row_b[x]:
                out.append(
                    Discrepancy(
                        labels,
                        uni.label(r),
                        uni.label(x),
                        "value",
                        format_rational(row_a[x]),
                        format_rational(row_b[x]),
                    )
                )
    return out
