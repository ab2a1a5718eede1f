"""Embeddings connecting attention models to neighboring model families.

- :func:`cra_to_rdrum` lifts a constant-attention model to a
  reference-dependent random utility model: each consideration set maps to
  the order that promotes its members above everything else while keeping
  the base preference within both groups, and set weights push forward to
  order weights. Choice probabilities are preserved exactly.
- :func:`heterogeneity_to_cra` turns a population of deterministic
  psychological-constraint types into constant attention: the weight of a
  consideration set is the mass of types whose constraint at the reference
  equals it.
- :func:`random_reference_embed` shows any plain stochastic choice rule is
  reproduced by degenerate reference-dependent attention plus a random
  reference: the reference rule copies the target probabilities, and each
  reference's attention is confined to sets where the reference is best
  (so it is chosen with probability one).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Mapping

from .core import (
    DatasetFormatError,
    LinearOrder,
    Menu,
    Universe,
    bit,
    member_indices,
    subsets_between,
)
from .models import CraModel, GeneralAttention, ModelError, choice_prob
from .rationals import ONE, ZERO, Rat, format_rational, parse_rational


@dataclass(frozen=True)
class StochasticChoiceRule:
    """A plain (reference-free) stochastic choice rule over every menu."""

    universe: Universe
    table: Mapping[Menu, Mapping[int, Rat]]

    def __post_init__(self) -> None:
        full = self.universe.full_mask
        if set(self.table) != set(range(1, full + 1)):
            raise ModelError("choice rule must cover every non-empty menu")
        for menu, row in self.table.items():
            total = ZERO
            for x, p in row.items():
                if not menu & bit(x):
                    raise ModelError("support must be inside the menu")
                if p < ZERO:
                    raise ModelError("probabilities must be non-negative")
                total += p
            if total != ONE:
                raise ModelError("probabilities must sum to 1 per menu")

    def prob(self, menu: Menu, x: int) -> Rat:
        return self.table[menu].get(x, ZERO)


@dataclass(frozen=True)
class RandomReferenceRule:
    """A reference distribution per menu plus per-reference attention.

    ``eta[(r, menu)]`` is the probability that ``r`` is the reference when
    choosing from the menu; the induced observable rule mixes the
    fixed-reference choice probabilities with these weights.
    """

    universe: Universe
    eta: Mapping[tuple[int, Menu], Rat]
    attention: GeneralAttention

    def __post_init__(self) -> None:
        for menu in self.universe.menus():
            total = ZERO
            for r in member_indices(menu):
                p = self.eta.get((r, menu))
                if p is None:
                    raise ModelError("eta must cover every menu member")
                if p < ZERO:
                    raise ModelError("eta must be non-negative")
                total += p
            if total != ONE:
                raise ModelError("eta must sum to 1 over each menu")

    def mixed_choice_prob(self, x: int, menu: Menu) -> Rat:
        """Observable probability of x: the eta-mixture over references."""
        total = ZERO
        for r in member_indices(menu):
            weight = self.eta[(r, menu)]
            if weight != ZERO:
                total += weight * choice_prob(self.attention, x, menu, r)
        return total


def random_reference_embed(
    rule: StochasticChoiceRule, preference: LinearOrder | None = None
) -> RandomReferenceRule:
    """Reproduce ``rule`` exactly with random references.

    Attention for reference r is uniform over the sets in which r is the
    preference maximum (any distribution there works; uniform keeps output
    deterministic), so every p_r(r, S) = 1, and eta simply copies the target
    probabilities.
    """
    uni = rule.universe
    pref = preference if preference is not None else LinearOrder(tuple(range(uni.size)))
    mu: dict[tuple[int, Menu], dict[Menu, Rat]] = {}
    for menu, r in uni.problems():
        interval = subsets_between(bit(r), pref.weak_lower_mask(r) & menu)
        share = ONE / len(interval)
        mu[(r, menu)] = {d: share for d in interval}
    attention = GeneralAttention(uni, pref, mu)
    eta = {
        (x, menu): rule.prob(menu, x)
        for menu in uni.menus()
        for x in member_indices(menu)
    }
    return RandomReferenceRule(uni, eta, attention)


# --- random utility ------------------------------------------------------------


@dataclass(frozen=True)
class RdRumModel:
    """Reference-indexed distributions over strict rankings.

    Only rankings with positive weight are stored; each reference's weights
    sum to one.
    """

    universe: Universe
    weights: Mapping[int, Mapping[tuple[int, ...], Rat]]

    def __post_init__(self) -> None:
        n = self.universe.size
        if set(self.weights) != set(range(n)):
            raise ModelError("order weights must be given for every reference")
        for r, dist in self.weights.items():
            total = ZERO
            for ranking, w in dist.items():
                if sorted(ranking) != list(range(n)):
                    raise ModelError("rankings must be permutations of the universe")
                if w <= ZERO:
                    raise ModelError("stored order weights must be positive")
                total += w
            if total != ONE:
                raise ModelError("order weights must sum to 1 per reference")


def rdrum_choice_prob(model: RdRumModel, x: int, menu: Menu, r: int) -> Rat:
    """Total weight of the orders whose maximum in the menu is x."""
    if not menu & bit(x) or not menu & bit(r):
        raise ValueError("alternative and reference must be members of the menu")
    total = ZERO
    for ranking, w in model.weights[r].items():
        for alt in ranking:
            if menu & bit(alt):
                if alt == x:
                    total += w
                break
    return total


def promote_set(preference: LinearOrder, subset: Menu) -> tuple[int, ...]:
    """The order agreeing with ``preference`` inside and outside ``subset``
    but ranking every member of ``subset`` above every non-member."""
    inside = [a for a in preference.ranking if subset & bit(a)]
    outside = [a for a in preference.ranking if not subset & bit(a)]
    return tuple(inside + outside)


def cra_to_rdrum(model: CraModel) -> RdRumModel:
    """Push constant-attention set weights forward through set promotion."""
    uni = model.universe
    weights: dict[int, dict[tuple[int, ...], Rat]] = {r: {} for r in range(uni.size)}
    for (r, menu), w in sorted(model.pi_prime.items()):
        ranking = promote_set(model.preference, menu)
        dist = weights[r]
        dist[ranking] = dist.get(ranking, ZERO) + w
    return RdRumModel(uni, weights)


# --- population heterogeneity ----------------------------------------------------


@dataclass(frozen=True)
class ConstraintPopulation:
    """A mixture of deterministic psychological-constraint types.

    Each type is (mass, constraint map); the constraint map sends every
    potential reference r to the menu of alternatives that type can consider
    when holding r, always including r itself.
    """

    universe: Universe
    types: tuple[tuple[Rat, Mapping[int, Menu]], ...]

    def __post_init__(self) -> None:
        full = self.universe.full_mask
        total = ZERO
        for mass, constraint in self.types:
            if mass <= ZERO:
                raise ModelError("type masses must be positive")
            total += mass
            for r in range(self.universe.size):
                q = constraint.get(r)
                if q is None or not q & bit(r) or q & ~full:
                    raise ModelError(
                        "each constraint must map every reference to a menu containing it"
                    )
        if total != ONE:
            raise ModelError("type masses must sum to 1")


def heterogeneity_to_cra(pop: ConstraintPopulation, preference: LinearOrder) -> CraModel:
    """Constant attention induced by a fixed distribution of constraints."""
    pi: dict[tuple[int, Menu], Rat] = {}
    for mass, constraint in pop.types:
        for r in range(pop.universe.size):
            key = (r, constraint[r])
            pi[key] = pi.get(key, ZERO) + mass
    return CraModel(pop.universe, preference, pi)


def population_choice_prob(
    pop: ConstraintPopulation, preference: LinearOrder, x: int, menu: Menu, r: int
) -> Rat:
    """Mixture of the deterministic per-type choices argmax(Q_i(r) ∩ S)."""
    if not menu & bit(x) or not menu & bit(r):
        raise ValueError("alternative and reference must be members of the menu")
    total = ZERO
    for mass, constraint in pop.types:
        if preference.best_in(constraint[r] & menu) == x:
            total += mass
    return total


def population_to_json(pop: ConstraintPopulation) -> dict:
    uni = pop.universe
    return {
        "alternatives": list(uni.alternatives),
        "types": [
            {
                "weight": format_rational(mass),
                "constraints": {
                    uni.label(r): list(uni.labels_of(constraint[r]))
                    for r in range(uni.size)
                },
            }
            for mass, constraint in pop.types
        ],
    }


def parse_population(obj: Mapping) -> ConstraintPopulation:
    try:
        uni = Universe(tuple(obj["alternatives"]))
        types = tuple(
            (
                parse_rational(t["weight"]),
                {uni.index(r): uni.mask_of(menu) for r, menu in t["constraints"].items()},
            )
            for t in obj["types"]
        )
    except (KeyError, TypeError) as exc:
        raise DatasetFormatError(f"malformed population object: {exc}") from None
    return ConstraintPopulation(uni, types)


def loads_population(text: str) -> ConstraintPopulation:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DatasetFormatError(f"invalid JSON: {exc}") from None
    return parse_population(obj)
