"""Parametric random-attention models and their forward evaluation.

A model pairs a strict preference with an attention process. Facing a
problem ``(S, r)``, a random consideration set ``D`` with ``r ∈ D ⊆ S`` is
drawn from the attention rule, and the most preferred member of ``D`` is
chosen. The reference is always considered; everything else about attention
is model-specific:

- :class:`GeneralAttention` stores the consideration-set distribution
  explicitly per problem. Menu-dependent attention (for example
  salience-driven independent attention whose inclusion probabilities vary
  with the menu) is expressed through this table form.
- :class:`IraModel` includes each alternative independently with a
  reference-dependent probability ``gamma_r(x)``.
- :class:`LraModel` draws the consideration set proportionally to
  menu-independent weights ``pi_r(D)``, renormalized within the menu.
- :class:`CraModel` draws a set from a fixed distribution ``pi'_r`` over all
  menus containing the reference, then intersects it with the menu.
- The ``RefIndependent*`` variants strip the reference index from the
  parameters: the reference keeps its guaranteed consideration but no longer
  directs attention.

``choice_prob`` uses closed-form interval marginalizations; the oracle
module re-derives the same numbers by enumerating consideration sets one by
one, and the two routes are required to agree exactly.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Mapping, Union

from .core import (
    ChoiceDataset,
    ChoiceProblem,
    DatasetFormatError,
    LinearOrder,
    Menu,
    Universe,
    bit,
    member_indices,
    subsets_between,
)
from .rationals import ONE, ZERO, Rat, format_rational, parse_rational


class ModelError(ValueError):
    """A model's parameters violate its defining constraints."""


def _check_preference(universe: Universe, preference: LinearOrder) -> None:
    if preference.size != universe.size:
        raise ModelError("preference must rank exactly the universe's alternatives")


@dataclass(frozen=True)
class GeneralAttention:
    """Explicit consideration-set table, one distribution per problem.

    ``mu[(r, S)]`` maps consideration sets ``D`` (with ``r ∈ D ⊆ S``) to
    positive probabilities summing to 1; sets with probability zero are
    simply absent. ``full_support`` reports whether every admissible set of
    every problem carries positive probability.
    """

    universe: Universe
    preference: LinearOrder
    mu: Mapping[tuple[int, Menu], Mapping[Menu, Rat]]

    def __post_init__(self) -> None:
        _check_preference(self.universe, self.preference)
        needed = set(self.universe.problems())
        keys = {(menu, r) for (r, menu) in self.mu}
        if keys != needed:
            raise ModelError("attention table must cover every (menu, reference) problem")
        for (r, menu), dist in self.mu.items():
            total = ZERO
            for cons, p in dist.items():
                if not cons & bit(r) or cons & ~menu:
                    raise ModelError("attention support must satisfy r ∈ D ⊆ S")
                if p <= ZERO:
                    raise ModelError("stored attention probabilities must be positive")
                total += p
            if total != ONE:
                raise ModelError("attention probabilities must sum to 1 per problem")

    @property
    def full_support(self) -> bool:
        for (_r, menu), dist in self.mu.items():
            if len(dist) != 1 << (menu.bit_count() - 1):
                return False
        return True


@dataclass(frozen=True)
class IraModel:
    """Independent random attention with reference-dependent inclusion rates.

    ``gamma[(r, x)]`` for ``x != r`` is the probability that ``x`` enters
    the consideration set when ``r`` is the reference; it must lie strictly
    inside (0, 1). The reference itself is included with probability one.
    """

    universe: Universe
    preference: LinearOrder
    gamma: Mapping[tuple[int, int], Rat]

    def __post_init__(self) -> None:
        _check_preference(self.universe, self.preference)
        n = self.universe.size
        for r in range(n):
            for x in range(n):
                if x == r:
                    continue
                g = self.gamma.get((r, x))
                if g is None:
                    raise ModelError("gamma must be given for every reference/alternative pair")
                if not ZERO < g < ONE:
                    raise ModelError("gamma values must lie strictly between 0 and 1")

    def rate(self, r: int, x: int) -> Rat:
        return ONE if x == r else self.gamma[(r, x)]


def _check_menu_weights(
    universe: Universe, weights: Mapping[tuple[int, Menu], Rat], *, positive: bool
) -> None:
    full = universe.full_mask
    totals: dict[int, Rat] = {r: ZERO for r in range(universe.size)}
    for (r, menu), w in weights.items():
        if not menu & bit(r) or menu & ~full:
            raise ModelError("weights may only be assigned to menus containing the reference")
        if w < ZERO or (positive and w <= ZERO):
            raise ModelError("weights must be positive")
        totals[r] += w
    for r in range(universe.size):
        if positive:
            expected = 1 << (universe.size - 1)
            count = sum(1 for (r2, _m) in weights if r2 == r)
            if count != expected:
                raise ModelError("full-support weights must cover every menu containing r")
        if totals[r] != ONE:
            raise ModelError("weights must sum to 1 for every reference")


@dataclass(frozen=True)
class LraModel:
    """Luce-style attention: menu-independent weights, renormalized per menu."""

    universe: Universe
    preference: LinearOrder
    pi: Mapping[tuple[int, Menu], Rat]

    def __post_init__(self) -> None:
        _check_preference(self.universe, self.preference)
        _check_menu_weights(self.universe, self.pi, positive=True)


@dataclass(frozen=True)
class CraModel:
    """Constant attention: a fixed random set intersected with the menu.

    Sparse weight tables are accepted (zero-weight sets are simply absent)
    because population-heterogeneity embeddings naturally produce them;
    ``full_support`` reports whether every menu containing the reference
    carries positive weight.
    """

    universe: Universe
    preference: LinearOrder
    pi_prime: Mapping[tuple[int, Menu], Rat]

    def __post_init__(self) -> None:
        _check_preference(self.universe, self.preference)
        _check_menu_weights(self.universe, self.pi_prime, positive=False)
        for (_r, _menu), w in self.pi_prime.items():
            if w <= ZERO:
                raise ModelError("stored weights must be positive; omit zero-weight sets")

    @property
    def full_support(self) -> bool:
        expected = 1 << (self.universe.size - 1)
        for r in range(self.universe.size):
            if sum(1 for (r2, _m) in self.pi_prime if r2 == r) != expected:
                return False
        return True


def _check_global_weights(universe: Universe, weights: Mapping[Menu, Rat]) -> None:
    full = universe.full_mask
    total = ZERO
    for menu, w in weights.items():
        if menu <= 0 or menu & ~full:
            raise ModelError("weights must be assigned to non-empty menus of the universe")
        if w <= ZERO:
            raise ModelError("weights must be positive")
        total += w
    if len(weights) != full:
        raise ModelError("reference-independent weights must cover every non-empty menu")
    if total != ONE:
        raise ModelError("weights must sum to 1")


@dataclass(frozen=True)
class RefIndependentIra:
    """Independent attention with one inclusion rate per alternative."""

    universe: Universe
    preference: LinearOrder
    gamma: Mapping[int, Rat]

    def __post_init__(self) -> None:
        _check_preference(self.universe, self.preference)
        for x in range(self.universe.size):
            g = self.gamma.get(x)
            if g is None or not ZERO < g < ONE:
                raise ModelError("gamma must be in (0,1) for every alternative")

    def rate(self, r: int, x: int) -> Rat:
        return ONE if x == r else self.gamma[x]


@dataclass(frozen=True)
class RefIndependentLra:
    """Luce attention with a single full-support weight over all menus."""

    universe: Universe
    preference: LinearOrder
    pi: Mapping[Menu, Rat]

    def __post_init__(self) -> None:
        _check_preference(self.universe, self.preference)
        _check_global_weights(self.universe, self.pi)


@dataclass(frozen=True)
class RefIndependentCra:
    """Constant attention from a single full-support distribution over menus.

    The drawn set need not contain the reference; the reference is adjoined
    (the empty set carries weight zero by convention), which is what keeps
    the reference considered while removing its influence on attention.
    """

    universe: Universe
    preference: LinearOrder
    pi: Mapping[Menu, Rat]

    def __post_init__(self) -> None:
        _check_preference(self.universe, self.preference)
        _check_global_weights(self.universe, self.pi)


AttentionModel = Union[
    GeneralAttention,
    IraModel,
    LraModel,
    CraModel,
    RefIndependentIra,
    RefIndependentLra,
    RefIndependentCra,
]

_KINDS = {
    GeneralAttention: "general",
    IraModel: "ira",
    LraModel: "lra",
    CraModel: "cra",
    RefIndependentIra: "ri-ira",
    RefIndependentLra: "ri-lra",
    RefIndependentCra: "ri-cra",
}


def model_kind(model: AttentionModel) -> str:
    return _KINDS[type(model)]


# --- attention probabilities -------------------------------------------------


def attention_prob(model: AttentionModel, r: int, cons: Menu, menu: Menu) -> Rat:
    """Probability that ``cons`` is the realized consideration set in ``(menu, r)``.

    Requires ``r ∈ cons ⊆ menu``; the admissible probabilities sum to one.
    """
    if not cons & bit(r):
        raise ValueError("consideration set must contain the reference")
    if cons & ~menu:
        raise ValueError("consideration set must be contained in the menu")
    if isinstance(model, GeneralAttention):
        return model.mu[(r, menu)].get(cons, ZERO)
    if isinstance(model, (IraModel, RefIndependentIra)):
        p = ONE
        for x in member_indices(cons):
            p *= model.rate(r, x)
        for y in member_indices(menu & ~cons):
            p *= ONE - model.rate(r, y)
        return p
    if isinstance(model, LraModel):
        denom = sum(model.pi[(r, d)] for d in subsets_between(bit(r), menu))
        return model.pi[(r, cons)] / denom
    if isinstance(model, RefIndependentLra):
        denom = sum(model.pi[d] for d in subsets_between(bit(r), menu))
        return model.pi[cons] / denom
    if isinstance(model, CraModel):
        outside = model.universe.full_mask & ~menu
        total = ZERO
        for d in subsets_between(cons, cons | outside):
            total += model.pi_prime.get((r, d), ZERO)
        return total
    if isinstance(model, RefIndependentCra):
        outside = model.universe.full_mask & ~menu
        total = ZERO
        for d in subsets_between(cons, cons | outside):
            total += model.pi[d] + model.pi.get(d & ~bit(r), ZERO)
        return total
    raise TypeError(f"unsupported model type: {type(model).__name__}")


# --- choice probabilities ----------------------------------------------------


def _choice_row(model: AttentionModel, menu: Menu, r: int) -> dict[int, Rat]:
    """Choice probabilities for every member of the menu, computed in one pass."""
    pref = model.preference
    members = member_indices(menu)
    row = {x: ZERO for x in members}

    if isinstance(model, GeneralAttention):
        for cons, p in model.mu[(r, menu)].items():
            row[pref.best_in(cons)] += p
        return row

    if isinstance(model, (IraModel, RefIndependentIra)):
        # x is chosen iff it is considered and every strictly better member
        # of the menu is not; the reference is always considered.
        for x in members:
            if x != r and pref.prefers(r, x):
                continue
            p = ONE if x == r else model.rate(r, x)
            for y in member_indices(menu & pref.better_mask(x)):
                p *= ONE - model.rate(r, y)
            row[x] = p
        return row

    if isinstance(model, (LraModel, RefIndependentLra)):
        if isinstance(model, LraModel):
            weight = lambda d: model.pi[(r, d)]
        else:
            weight = lambda d: model.pi[d]
        denom = sum(weight(d) for d in subsets_between(bit(r), menu))
        for x in members:
            if x != r and pref.prefers(r, x):
                continue
            lo = bit(r) | bit(x)
            hi = pref.weak_lower_mask(x) & menu
            row[x] = sum(weight(d) for d in subsets_between(lo, hi)) / denom
        return row

    if isinstance(model, CraModel):
        outside = model.universe.full_mask & ~menu
        for x in members:
            if x != r and pref.prefers(r, x):
                continue
            lo = bit(r) | bit(x)
            hi = (pref.weak_lower_mask(x) & menu) | outside
            row[x] = sum(model.pi_prime.get((r, d), ZERO) for d in subsets_between(lo, hi))
        return row

    if isinstance(model, RefIndependentCra):
        # For x != r the reference drops out entirely: x is chosen iff the
        # drawn set meets the menu in a set whose best member is x.
        for x in members:
            if x == r:
                continue
            if pref.prefers(r, x):
                continue
            hi = (pref.weak_lower_mask(x) & menu) | (model.universe.full_mask & ~menu)
            row[x] = sum(model.pi.get(d, ZERO) for d in subsets_between(bit(x), hi))
        row[r] = ONE - sum(row[x] for x in members if x != r)
        return row

    raise TypeError(f"unsupported model type: {type(model).__name__}")


def choice_prob(model: AttentionModel, x: int, menu: Menu, r: int) -> Rat:
    """Probability that ``x`` is chosen in problem ``(menu, r)``."""
    if not menu & bit(x):
        raise ValueError("alternative must be a member of the menu")
    if not menu & bit(r):
        raise ValueError("reference must be a member of the menu")
    return _choice_row(model, menu, r)[x]


def simulate_dataset(model: AttentionModel) -> ChoiceDataset:
    """Exact complete dataset induced by the model over every problem."""
    rows = [
        (menu, r, _choice_row(model, menu, r))
        for menu, r in model.universe.problems()
    ]
    return ChoiceDataset.from_rows(model.universe, rows, complete=True)


# --- sampling ----------------------------------------------------------------


def _consideration_sampler(model: AttentionModel, menu: Menu, r: int):
    """Exact integer-weighted sampler over admissible consideration sets."""
    sets = subsets_between(bit(r), menu)
    probs = [attention_prob(model, r, d, menu) for d in sets]
    denom = math.lcm(*(int(p.denominator) for p in probs))
    weights = [int(p.numerator) * (denom // int(p.denominator)) for p in probs]

    def draw(rng: random.Random) -> Menu:
        k = rng.randrange(denom)
        acc = 0
        for d, w in zip(sets, weights):
            acc += w
            if k < acc:
                return d
        raise AssertionError("weights did not sum to the common denominator")

    return draw


def sample_choice(model: AttentionModel, problem: ChoiceProblem, seed: int) -> int:
    """Draw one choice: a consideration set from the attention rule, then its
    preference maximum. Deterministic given the seed (Mersenne Twister via
    ``random.Random`` with an exact integer-weight inverse-CDF walk)."""
    return sample_choices(model, problem, 1, seed)[0]


def sample_choices(
    model: AttentionModel, problem: ChoiceProblem, n: int, seed
) -> list[int]:
    """Draw ``n`` choices from one problem using a single seeded stream."""
    rng = random.Random(seed)
    draw = _consideration_sampler(model, problem.menu, problem.reference)
    best = model.preference.best_in
    return [best(draw(rng)) for _ in range(n)]


# --- JSON serialization -------------------------------------------------------


def _menu_weights_to_json(universe: Universe, weights: Mapping, per_reference: bool) -> object:
    if per_reference:
        out: dict[str, list] = {}
        for r in range(universe.size):
            entries = sorted((menu, w) for (r2, menu), w in weights.items() if r2 == r)
            out[universe.label(r)] = [
                {"menu": list(universe.labels_of(menu)), "weight": format_rational(w)}
                for menu, w in entries
            ]
        return out
    return [
        {"menu": list(universe.labels_of(menu)), "weight": format_rational(w)}
        for menu, w in sorted(weights.items())
    ]


def model_to_json(model: AttentionModel) -> dict:
    """Canonical JSON object for any attention model."""
    uni = model.universe
    obj: dict = {
        "kind": model_kind(model),
        "alternatives": list(uni.alternatives),
        "preference": model.preference.to_labels(uni),
    }
    if isinstance(model, IraModel):
        obj["gamma"] = {
            uni.label(r): {
                uni.label(x): format_rational(model.gamma[(r, x)])
                for x in range(uni.size)
                if x != r
            }
            for r in range(uni.size)
        }
    elif isinstance(model, RefIndependentIra):
        obj["gamma"] = {
            uni.label(x): format_rational(model.gamma[x]) for x in range(uni.size)
        }
    elif isinstance(model, LraModel):
        obj["pi"] = _menu_weights_to_json(uni, model.pi, per_reference=True)
    elif isinstance(model, CraModel):
        obj["pi_prime"] = _menu_weights_to_json(uni, model.pi_prime, per_reference=True)
    elif isinstance(model, (RefIndependentLra, RefIndependentCra)):
        obj["pi"] = _menu_weights_to_json(uni, model.pi, per_reference=False)
    elif isinstance(model, GeneralAttention):
        entries = []
        for menu, r in sorted((menu, r) for (r, menu) in model.mu):
            dist = model.mu[(r, menu)]
            entries.append(
                {
                    "reference": uni.label(r),
                    "menu": list(uni.labels_of(menu)),
                    "attention": [
                        {"set": list(uni.labels_of(d)), "prob": format_rational(p)}
                        for d, p in sorted(dist.items())
                    ],
                }
            )
        obj["mu"] = entries
    return obj


def _parse_menu_weights(universe: Universe, obj, per_reference: bool) -> dict:
    def parse_entries(entries) -> list[tuple[Menu, Rat]]:
        if not isinstance(entries, list):
            raise DatasetFormatError("menu weights must be a list of {menu, weight} objects")
        return [
            (universe.mask_of(e["menu"]), parse_rational(e["weight"])) for e in entries
        ]

    if per_reference:
        weights: dict[tuple[int, Menu], Rat] = {}
        for r_label, entries in obj.items():
            r = universe.index(r_label)
            for menu, w in parse_entries(entries):
                weights[(r, menu)] = w
        return weights
    return dict(parse_entries(obj))


def parse_model(obj: Mapping) -> AttentionModel:
    """Parse the JSON object form of a model; validates on construction."""
    if not isinstance(obj, Mapping) or "kind" not in obj:
        raise DatasetFormatError("model must be a JSON object with a 'kind'")
    kind = obj["kind"]
    try:
        universe = Universe(tuple(obj["alternatives"]))
        preference = LinearOrder.from_labels(universe, obj["preference"])
    except KeyError as exc:
        raise DatasetFormatError(f"model is missing {exc}") from None
    except ValueError as exc:
        raise DatasetFormatError(str(exc)) from None
    try:
        if kind == "ira":
            gamma = {
                (universe.index(r), universe.index(x)): parse_rational(g)
                for r, row in obj["gamma"].items()
                for x, g in row.items()
            }
            return IraModel(universe, preference, gamma)
        if kind == "ri-ira":
            gamma_ri = {
                universe.index(x): parse_rational(g) for x, g in obj["gamma"].items()
            }
            return RefIndependentIra(universe, preference, gamma_ri)
        if kind == "lra":
            return LraModel(
                universe, preference, _parse_menu_weights(universe, obj["pi"], True)
            )
        if kind == "cra":
            return CraModel(
                universe, preference, _parse_menu_weights(universe, obj["pi_prime"], True)
            )
        if kind == "ri-lra":
            return RefIndependentLra(
                universe, preference, _parse_menu_weights(universe, obj["pi"], False)
            )
        if kind == "ri-cra":
            return RefIndependentCra(
                universe, preference, _parse_menu_weights(universe, obj["pi"], False)
            )
        if kind == "general":
            mu: dict[tuple[int, Menu], dict[Menu, Rat]] = {}
            for entry in obj["mu"]:
                r = universe.index(entry["reference"])
                menu = universe.mask_of(entry["menu"])
                mu[(r, menu)] = {
                    universe.mask_of(a["set"]): parse_rational(a["prob"])
                    for a in entry["attention"]
                }
            return GeneralAttention(universe, preference, mu)
    except (KeyError, TypeError) as exc:
        raise DatasetFormatError(f"malformed model object: {exc}") from None
    except ModelError as exc:
        raise DatasetFormatError(str(exc)) from None
    raise DatasetFormatError(f"unknown model kind: {kind!r}")
