"""Bundled example models and datasets.

Each fixture pins one behavioral phenomenon or one strict inclusion between
model classes, with exact hand-checkable numbers. Model fixtures carry the
class under which their simulated dataset is recoverable; dataset fixtures
are counterexamples and recoverable under no class.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .core import ChoiceDataset, LinearOrder, Universe, dataset_to_json
from .models import (
    CraModel,
    GeneralAttention,
    IraModel,
    LraModel,
    RefIndependentLra,
    model_to_json,
)
from .rationals import Rat

_XYZ = Universe(("x", "y", "z"))
_XYZ_PREF = LinearOrder((0, 1, 2))  # x > y > z
_X, _Y, _Z = 1, 2, 4


def _uniform_ref_weights(universe: Universe, r: int) -> dict:
    from .core import bit, subsets_between

    menus = subsets_between(bit(r), universe.full_mask)
    return {(r, menu): Rat(1, len(menus)) for menu in menus}


def _ira_uniform() -> dict:
    gamma = {(r, x): Rat(1, 2) for r in range(3) for x in range(3) if x != r}
    return model_to_json(IraModel(_XYZ, _XYZ_PREF, gamma))


def _sqm_violation_ira() -> dict:
    # Holding y sharply raises attention to the better x, so y fares worse
    # as its own reference than as a bystander: p_y(y,X)=1/10 < p_z(y,X)=9/20.
    gamma = {
        (0, 1): Rat(1, 2),
        (0, 2): Rat(1, 2),
        (1, 0): Rat(9, 10),
        (1, 2): Rat(1, 2),
        (2, 0): Rat(1, 10),
        (2, 1): Rat(1, 2),
    }
    return model_to_json(IraModel(_XYZ, _XYZ_PREF, gamma))


def _category_bias() -> dict:
    # Two categories {m, m'} and {v, v'}; a reference draws attention to its
    # own category (rate 3/4) and away from the other (rate 1/4). Between
    # the non-reference alternatives m and v: under reference m',
    # p(m)=3/4 > p(v)=1/16; under reference v', p(v)=9/16 > p(m)=1/4.
    uni = Universe(("m", "m'", "v", "v'"))
    pref = LinearOrder((0, 2, 1, 3))  # m > v > m' > v'
    same = {0: {0, 1}, 1: {0, 1}, 2: {2, 3}, 3: {2, 3}}
    gamma = {
        (r, x): Rat(3, 4) if x in same[r] else Rat(1, 4)
        for r in range(4)
        for x in range(4)
        if x != r
    }
    return model_to_json(IraModel(uni, pref, gamma))


def _choice_overload() -> dict:
    # Reference y is retained more often in the full menu than in {x,y}:
    # p_y(y,X) = 1/2 > p_y(y,{x,y}) = 1/5. Violates regularity.
    pi = {
        (1, _Y): Rat(1, 10),
        (1, _X | _Y): Rat(4, 10),
        (1, _Y | _Z): Rat(4, 10),
        (1, _X | _Y | _Z): Rat(1, 10),
    }
    pi.update(_uniform_ref_weights(_XYZ, 0))
    pi.update(_uniform_ref_weights(_XYZ, 2))
    return model_to_json(LraModel(_XYZ, _XYZ_PREF, pi))


def _ida_violation_lra() -> dict:
    # Removing the dominated z changes y's probability as its own reference:
    # p_y(y,X) = 2/3 but p_y(y,{x,y}) = 1/2.
    pi = {
        (1, _Y): Rat(1, 6),
        (1, _X | _Y): Rat(1, 6),
        (1, _Y | _Z): Rat(3, 6),
        (1, _X | _Y | _Z): Rat(1, 6),
    }
    pi.update(_uniform_ref_weights(_XYZ, 0))
    pi.update(_uniform_ref_weights(_XYZ, 2))
    return model_to_json(LraModel(_XYZ, _XYZ_PREF, pi))


def _rida_violation_cra() -> dict:
    # p_z(y,X)/p_z(z,X) = 1 but p_z(y,{y,z})/p_z(z,{y,z}) = 2 although x is
    # dominant in X.
    pi = {
        (2, _Z): Rat(1, 6),
        (2, _X | _Z): Rat(1, 6),
        (2, _Y | _Z): Rat(1, 6),
        (2, _X | _Y | _Z): Rat(1, 2),
    }
    pi.update(_uniform_ref_weights(_XYZ, 0))
    pi.update(_uniform_ref_weights(_XYZ, 1))
    return model_to_json(CraModel(_XYZ, _XYZ_PREF, pi))


def _sqm_violation_ri_lra() -> dict:
    # Reference-independent Luce attention with consideration of x and y
    # positively correlated: p_y(y,X) = 1/4 < p_z(y,X) = 3/11.
    pi = {
        _X: Rat(2, 20),
        _Y: Rat(1, 20),
        _Z: Rat(1, 20),
        _X | _Y: Rat(6, 20),
        _X | _Z: Rat(1, 20),
        _Y | _Z: Rat(3, 20),
        _X | _Y | _Z: Rat(6, 20),
    }
    return model_to_json(RefIndependentLra(_XYZ, _XYZ_PREF, pi))


def _menu_dependent_salience() -> dict:
    # Attention rates fall from 1/2 to 1/4 once the shelf holds three items;
    # such menu-dependent independent attention is a general attention table.
    from .core import bit, member_indices, subsets_between

    mu = {}
    for menu, r in _XYZ.problems():
        rate = Rat(1, 2) if menu.bit_count() <= 2 else Rat(1, 4)
        dist = {}
        for cons in subsets_between(bit(r), menu):
            p = Rat(1)
            for y in member_indices(menu):
                if y == r:
                    continue
                p *= rate if cons & bit(y) else 1 - rate
            dist[cons] = p
        mu[(r, menu)] = dist
    return model_to_json(GeneralAttention(_XYZ, _XYZ_PREF, mu))


def _dataset(rows) -> dict:
    return dataset_to_json(ChoiceDataset.from_rows(_XYZ, rows, complete=True))


def _insufficiency_rida() -> dict:
    # Ratio independence holds, yet the alternating odds sum over [{z}, X]
    # is 1 - 2 - 2 + 5/2 = -1/2: the reference z is chosen too often in the
    # full menu for any Luce attention weights.
    h = Rat(1, 2)
    return _dataset(
        [
            (_X, 0, {0: Rat(1)}),
            (_Y, 1, {1: Rat(1)}),
            (_Z, 2, {2: Rat(1)}),
            (_X | _Y, 0, {0: Rat(1)}),
            (_X | _Y, 1, {0: h, 1: h}),
            (_X | _Z, 0, {0: Rat(1)}),
            (_X | _Z, 2, {0: h, 2: h}),
            (_Y | _Z, 1, {1: Rat(1)}),
            (_Y | _Z, 2, {1: h, 2: h}),
            (_X | _Y | _Z, 0, {0: Rat(1)}),
            (_X | _Y | _Z, 1, {0: h, 1: h}),
            (_X | _Y | _Z, 2, {0: Rat(1, 5), 1: Rat(2, 5), 2: Rat(2, 5)}),
        ]
    )


def _insufficiency_ida() -> dict:
    # Dominated-alternative removals leave probabilities unchanged, yet
    # lambda_z({x,z}) = p_z(z,{y,z}) - p_z(z,X) = 2/5 - 1/2 = -1/10: the
    # reference gains from the larger menu, impossible under constant
    # attention.
    return _dataset(
        [
            (_X, 0, {0: Rat(1)}),
            (_Y, 1, {1: Rat(1)}),
            (_Z, 2, {2: Rat(1)}),
            (_X | _Y, 0, {0: Rat(1)}),
            (_X | _Y, 1, {0: Rat(1, 2), 1: Rat(1, 2)}),
            (_X | _Z, 0, {0: Rat(1)}),
            (_X | _Z, 2, {0: Rat(1, 4), 2: Rat(3, 4)}),
            (_Y | _Z, 1, {1: Rat(1)}),
            (_Y | _Z, 2, {1: Rat(3, 5), 2: Rat(2, 5)}),
            (_X | _Y | _Z, 0, {0: Rat(1)}),
            (_X | _Y | _Z, 1, {0: Rat(1, 2), 1: Rat(1, 2)}),
            (_X | _Y | _Z, 2, {0: Rat(1, 4), 1: Rat(1, 4), 2: Rat(1, 2)}),
        ]
    )


def _ncc_cycle() -> dict:
    # x and y are each sometimes chosen against the other: a two-cycle.
    uni = Universe(("x", "y"))
    rows = [
        (1, 0, {0: Rat(1)}),
        (2, 1, {1: Rat(1)}),
        (3, 0, {0: Rat(1, 2), 1: Rat(1, 2)}),
        (3, 1, {0: Rat(1, 2), 1: Rat(1, 2)}),
    ]
    return dataset_to_json(ChoiceDataset.from_rows(uni, rows, complete=True))


def _mutual_refusal() -> dict:
    # Neither alternative is ever chosen against the other: status quo
    # asymmetry fails in both directions.
    uni = Universe(("x", "y"))
    rows = [
        (1, 0, {0: Rat(1)}),
        (2, 1, {1: Rat(1)}),
        (3, 0, {0: Rat(1)}),
        (3, 1, {1: Rat(1)}),
    ]
    return dataset_to_json(ChoiceDataset.from_rows(uni, rows, complete=True))


@dataclass(frozen=True)
class Fixture:
    name: str
    kind: str  # "model" | "dataset"
    description: str
    recover_as: str | None
    build: Callable[[], dict]


FIXTURES: dict[str, Fixture] = {
    f.name: f
    for f in [
        Fixture(
            "ira-uniform",
            "model",
            "independent attention, every inclusion rate 1/2, x>y>z",
            "ira",
            _ira_uniform,
        ),
        Fixture(
            "sqm-violation-ira",
            "model",
            "independent attention violating status quo monotonicity "
            "(p_y(y,X)=1/10 < p_z(y,X)=9/20)",
            "ira",
            _sqm_violation_ira,
        ),
        Fixture(
            "category-bias",
            "model",
            "two-category attention producing a frequency reversal between "
            "non-reference alternatives",
            "ira",
            _category_bias,
        ),
        Fixture(
            "choice-overload",
            "model",
            "Luce attention keeping the reference more often in larger menus "
            "(p_y(y,X)=1/2 > p_y(y,{x,y})=1/5); violates regularity",
            "lra",
            _choice_overload,
        ),
        Fixture(
            "ida-violation-lra",
            "model",
            "Luce attention violating irrelevance of dominated alternatives",
            "lra",
            _ida_violation_lra,
        ),
        Fixture(
            "rida-violation-cra",
            "model",
            "constant attention violating ratio independence of dominant "
            "alternatives",
            "cra",
            _rida_violation_cra,
        ),
        Fixture(
            "sqm-violation-ri-lra",
            "model",
            "reference-independent Luce attention violating status quo "
            "monotonicity via correlated consideration",
            "lra",
            _sqm_violation_ri_lra,
        ),
        Fixture(
            "menu-dependent-salience",
            "model",
            "menu-dependent independent attention (rates fall in larger "
            "menus) expressed as a general attention table",
            "rdram",
            _menu_dependent_salience,
        ),
        Fixture(
            "insufficiency-rida",
            "dataset",
            "passes ratio independence yet fails decreasing odds "
            "(alpha = -1/2 at (X, z))",
            None,
            _insufficiency_rida,
        ),
        Fixture(
            "insufficiency-ida",
            "dataset",
            "passes irrelevance of dominated alternatives yet fails "
            "decreasing propensity (lambda = -1/10 at {x,z} for z)",
            None,
            _insufficiency_ida,
        ),
        Fixture(
            "ncc-cycle",
            "dataset",
            "two-cycle in the revealed dominance relation",
            None,
            _ncc_cycle,
        ),
        Fixture(
            "mutual-refusal",
            "dataset",
            "both binary choice probabilities zero: status quo asymmetry fails",
            None,
            _mutual_refusal,
        ),
    ]
}


def fixture_names() -> list[str]:
    return sorted(FIXTURES)


def fixture_json(name: str) -> dict:
    fixture = FIXTURES.get(name)
    if fixture is None:
        raise KeyError(name)
    return fixture.build()
