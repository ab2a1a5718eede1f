"""Reconstruction of attention representations from choice data.

Each builder implements the constructive half of one characterization:

- :func:`reveal_preference` reads the strict preference off the binary
  problems (x beats y exactly when x is sometimes chosen against the
  reference y) and verifies it is a linear order.
- :func:`build_rdram` splits each observed probability uniformly over the
  interval of consideration sets whose maximum is the chosen alternative.
- :func:`build_ira` recovers inclusion rates from binary problems.
- :func:`build_lra` reconstructs menu weights block by block with a Möbius
  inversion over dominator intervals; the weight of each dominant-region
  menu is a free choice pinned by a deterministic slack rule (twice the
  exact lower bound, floored at 1), and those free menus are flagged in the
  audit table.
- :func:`build_cra` recovers the interval masses of the constant-attention
  distribution by an alternating sum and spreads each mass uniformly over
  its interval to obtain full support.

Every builder finishes by re-simulating the recovered model and comparing
against the input exactly; a mismatch (data outside the class) raises
:class:`RepresentationError` with the first differing cell. Intermediate
quantities are exposed through :class:`MobiusTable` for audit output.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .axioms import RevealedDominance
from .core import (
    ChoiceDataset,
    LinearOrder,
    Menu,
    Universe,
    bit,
    member_indices,
    subsets_between,
    validate_dataset,
)
from .models import CraModel, GeneralAttention, IraModel, LraModel, simulate_dataset
from .rationals import ONE, ZERO, Rat, format_rational


class RepresentationError(Exception):
    """A recovery step failed; carries the axiom implicated and a witness."""

    def __init__(self, message: str, axiom: str | None = None, witness: Mapping | None = None):
        super().__init__(message)
        self.axiom = axiom
        self.witness = witness


# --- Möbius inversion ---------------------------------------------------------


def mobius_invert(f: Mapping[Menu, Rat], lo: Menu, hi: Menu) -> dict[Menu, Rat]:
    """Invert cumulative sums over the lattice interval [lo, hi].

    Given ``f`` total on the interval, returns ``g`` with
    ``g(A) = sum_{lo ⊆ B ⊆ A} (-1)^{|A\\B|} f(B)``, the unique solution of
    ``f(A) = sum_{lo ⊆ B ⊆ A} g(B)``. Raises ``KeyError`` on a missing
    interval entry.
    """
    g: dict[Menu, Rat] = {}
    for a in subsets_between(lo, hi):
        total = ZERO
        for b in subsets_between(lo, a):
            if ((a & ~b).bit_count()) % 2 == 0:
                total += f[b]
            else:
                total -= f[b]
        g[a] = total
    return g


def subset_sums(g: Mapping[Menu, Rat], lo: Menu, hi: Menu) -> dict[Menu, Rat]:
    """Forward transform: f(A) = sum of g over [lo, A]; inverse of
    :func:`mobius_invert` on the same interval."""
    f: dict[Menu, Rat] = {}
    for a in subsets_between(lo, hi):
        f[a] = sum((g[b] for b in subsets_between(lo, a)), ZERO)
    return f


# --- shared helpers -----------------------------------------------------------


def _require_usable(data: ChoiceDataset, *, complete: bool) -> None:
    verdict = validate_dataset(data)
    if not verdict.is_pass:
        raise RepresentationError(
            f"dataset failed validation: {verdict.witness.get('error')}",
            witness=verdict.witness,
        )
    if complete:
        missing = data.missing_problems()
        if missing:
            uni = data.universe
            raise RepresentationError(
                "recovery requires a complete dataset",
                witness={
                    "missing_problems": [
                        {"menu": list(uni.labels_of(m)), "reference": uni.label(r)}
                        for m, r in missing[:20]
                    ]
                },
            )


def _verify_roundtrip(model, data: ChoiceDataset, class_name: str) -> None:
    sim = simulate_dataset(model)
    uni = data.universe
    for key in sorted(data.table):
        menu, r = key
        got = sim.table[key]
        want = data.table[key]
        for x in member_indices(menu):
            if got[x] != want[x]:
                raise RepresentationError(
                    f"dataset is not representable by {class_name}: "
                    "recovered model does not reproduce the data",
                    witness={
                        "menu": list(uni.labels_of(menu)),
                        "reference": uni.label(r),
                        "alternative": uni.label(x),
                        "dataset_prob": format_rational(want[x]),
                        "model_prob": format_rational(got[x]),
                    },
                )


# --- preference ----------------------------------------------------------------


def reveal_preference(data: ChoiceDataset) -> LinearOrder:
    """The unique strict preference revealed by the binary problems.

    Requires every binary problem. Raises :class:`RepresentationError` when
    the revealed relation is not complete (both binary probabilities zero),
    not antisymmetric (both positive), or not transitive; each failure names
    the upstream condition it contradicts.
    """
    uni = data.universe
    n = uni.size
    missing: list[tuple[Menu, int]] = []
    beats = [[False] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            menu = bit(i) | bit(j)
            row_i = data.lookup(menu, i)
            row_j = data.lookup(menu, j)
            if row_i is None:
                missing.append((menu, i))
            if row_j is None:
                missing.append((menu, j))
            if row_i is None or row_j is None:
                continue
            i_beats_j = row_j[i] > ZERO
            j_beats_i = row_i[j] > ZERO
            pair = {
                "menu": list(uni.labels_of(menu)),
                "p_with_reference_" + uni.label(j): format_rational(row_j[i]),
                "p_with_reference_" + uni.label(i): format_rational(row_i[j]),
            }
            if i_beats_j and j_beats_i:
                raise RepresentationError(
                    "binary problems reveal a two-cycle", axiom="ncc", witness=pair
                )
            if not i_beats_j and not j_beats_i:
                raise RepresentationError(
                    "mutual refusal in a binary problem", axiom="sqa", witness=pair
                )
            beats[i][j] = i_beats_j
            beats[j][i] = j_beats_i
    if missing:
        uni = data.universe
        raise RepresentationError(
            "preference revelation needs every binary problem",
            witness={
                "missing_problems": [
                    {"menu": list(uni.labels_of(m)), "reference": uni.label(r)}
                    for m, r in sorted(set(missing))
                ]
            },
        )
    scores = [sum(beats[x]) for x in range(n)]
    if sorted(scores) != list(range(n)):
        for x in range(n):
            for y in range(n):
                for z in range(n):
                    if beats[x][y] and beats[y][z] and beats[z][x]:
                        raise RepresentationError(
                            "revealed binary relation is intransitive",
                            axiom="ncc",
                            witness={
                                "cycle": [uni.label(x), uni.label(y), uni.label(z)]
                            },
                        )
        raise RepresentationError("revealed binary relation is not a linear order")
    ranking = sorted(range(n), key=lambda x: -scores[x])
    return LinearOrder(tuple(ranking))


# --- builders -------------------------------------------------------------------


def build_rdram(data: ChoiceDataset) -> GeneralAttention:
    """Uniform-interval attention table reproducing the data exactly.

    Each probability p_r(x, S) is split evenly over the consideration sets
    {D : {r, x} ⊆ D ⊆ D_x ∩ S} whose preference maximum is x, where D_x is
    the largest menu in which x is maximal. Zero rows contribute no mass, so
    the result is full-support exactly when the dataset never hides a
    revealed-preferred alternative.
    """
    _require_usable(data, complete=True)
    pref = reveal_preference(data)
    uni = data.universe
    mu: dict[tuple[int, Menu], dict[Menu, Rat]] = {}
    for menu, r in data.problems():
        row = data.table[(menu, r)]
        dist: dict[Menu, Rat] = {}
        for x in member_indices(menu):
            p = row[x]
            if x != r and pref.prefers(r, x):
                if p != ZERO:
                    raise RepresentationError(
                        "positive probability on an alternative the binary data "
                        "reveals as dominated by the reference",
                        axiom="ncc",
                        witness={
                            "menu": list(uni.labels_of(menu)),
                            "reference": uni.label(r),
                            "alternative": uni.label(x),
                            "prob": format_rational(p),
                        },
                    )
                continue
            if p == ZERO:
                continue
            interval = subsets_between(bit(r) | bit(x), pref.weak_lower_mask(x) & menu)
            share = p / len(interval)
            for d in interval:
                dist[d] = share
        mu[(r, menu)] = dist
    model = GeneralAttention(uni, pref, mu)
    _verify_roundtrip(model, data, "a general random attention model")
    return model


def build_ira(data: ChoiceDataset) -> IraModel:
    """Recover inclusion rates: gamma_r(x) is whichever binary probability
    of the pair {r, x} is positive. Unique on each reference's revealed
    upper contour set; values below the reference never affect choices."""
    _require_usable(data, complete=True)
    pref = reveal_preference(data)
    uni = data.universe
    gamma: dict[tuple[int, int], Rat] = {}
    for r in range(uni.size):
        for x in range(uni.size):
            if x == r:
                continue
            menu = bit(r) | bit(x)
            g = max(data.prob(menu, r, x), data.prob(menu, x, r))
            if g == ZERO or g >= ONE:
                axiom = "sqa" if g == ZERO else "nre"
                raise RepresentationError(
                    "binary problems do not admit an inclusion rate in (0,1)",
                    axiom=axiom,
                    witness={"pair": [uni.label(r), uni.label(x)]},
                )
            gamma[(r, x)] = g
    model = IraModel(uni, pref, gamma)
    _verify_roundtrip(model, data, "independent random attention")
    return model


@dataclass(frozen=True)
class MobiusTable:
    """Audit record of the interval quantities behind one reference's recovery.

    ``alpha[(T, S)]`` is the alternating sum of reciprocal reference
    probabilities over [T, S] (positive exactly when the odds condition
    holds); ``lambda_interval[(T, S)]`` the cumulative block weights
    satisfying lambda_interval[(T,S)] = lambda_interval[(T,T)] * alpha[(T,S)];
    ``lra_lambda`` the recovered per-menu weights with ``free_menus``
    marking the slack choices; ``cra_lambda`` the interval masses of the
    constant-attention construction (recorded even when non-positive, which
    is exactly a dpcra violation); ``kappa`` the removal ratio
    p_r(r, {dominant(S), r}) per menu with a dominant alternative other
    than r.
    """

    reference: int
    lra_lambda: Mapping[Menu, Rat]
    lambda_interval: Mapping[tuple[Menu, Menu], Rat]
    alpha: Mapping[tuple[Menu, Menu], Rat]
    cra_lambda: Mapping[Menu, Rat]
    kappa: Mapping[Menu, Rat]
    free_menus: tuple[Menu, ...]
    failure: str | None

    def to_json(self, universe: Universe) -> dict:
        def menu_list(m: Menu) -> list[str]:
            return list(universe.labels_of(m))

        return {
            "reference": universe.label(self.reference),
            "lambda": [
                {"menu": menu_list(m), "value": format_rational(v)}
                for m, v in sorted(self.lra_lambda.items())
            ],
            "lambda_interval": [
                {"anchor": menu_list(t), "menu": menu_list(s), "value": format_rational(v)}
                for (t, s), v in sorted(self.lambda_interval.items())
            ],
            "alpha": [
                {"anchor": menu_list(t), "menu": menu_list(s), "value": format_rational(v)}
                for (t, s), v in sorted(self.alpha.items())
            ],
            "cra_lambda": [
                {"menu": menu_list(m), "value": format_rational(v)}
                for m, v in sorted(self.cra_lambda.items())
            ],
            "kappa": [
                {"menu": menu_list(m), "value": format_rational(v)}
                for m, v in sorted(self.kappa.items())
            ],
            "free_menus": [menu_list(m) for m in self.free_menus],
            "failure": self.failure,
        }


def _lra_weights(
    data: ChoiceDataset, r: int, dominators: Menu
) -> tuple[dict[Menu, Rat], dict, dict, list[Menu]]:
    """Block-by-block weight construction for one reference.

    Returns (lambda per menu, lambda_interval, alpha, free menus); raises
    :class:`RepresentationError` with a dora witness when an alternating
    sum fails to be positive.
    """
    uni = data.universe
    full = uni.full_mask
    region = full & ~dominators

    lam: dict[Menu, Rat] = {}
    lam_interval: dict[tuple[Menu, Menu], Rat] = {}
    alpha: dict[tuple[Menu, Menu], Rat] = {}
    free: list[Menu] = []

    if dominators == 0:
        # r is revealed best: p_r(r, S) = 1 everywhere and any weights work.
        for m in subsets_between(bit(r), full):
            lam[m] = ONE
            free.append(m)
        free.remove(bit(r))
        return lam, lam_interval, alpha, free

    anchors = sorted(subsets_between(bit(r), region), key=lambda t: (t.bit_count(), t))
    for t in anchors:
        block = subsets_between(t, t | dominators)
        alphas: dict[Menu, Rat] = {}
        for s in block:
            a = ZERO
            for d in subsets_between(t, s):
                drow = data.lookup(d, r)
                if drow is None or drow[r] == ZERO:
                    raise RepresentationError(
                        "weight construction needs positive reference "
                        "probabilities on the whole interval",
                        axiom="nre",
                        witness={
                            "menu": list(uni.labels_of(d)),
                            "reference": uni.label(r),
                        },
                    )
                term = ONE / drow[r]
                a += term if ((s & ~d).bit_count() % 2 == 0) else -term
            if a <= ZERO:
                raise RepresentationError(
                    "alternating odds sum is not positive",
                    axiom="dora",
                    witness={
                        "reference": uni.label(r),
                        "menu": list(uni.labels_of(s)),
                        "anchor": list(uni.labels_of(t)),
                        "alpha": format_rational(a),
                    },
                )
            alphas[s] = a
            alpha[(t, s)] = a

        proper = [d for d in subsets_between(bit(r), t) if d != t]
        known_sum = sum((lam[d] for d in proper), ZERO)
        rhs = {
            s: sum((lam[d | (s & dominators)] for d in proper), ZERO) for s in block
        }
        if t == bit(r):
            lam_t = ONE
        else:
            bound = max(rhs[s] / alphas[s] - known_sum for s in block)
            lam_t = 2 * (bound if bound > ONE else ONE)
            free.append(t)
        lam[t] = lam_t
        block_total = known_sum + lam_t
        lam_interval[(t, t)] = block_total
        for s in block:
            if s == t:
                continue
            value = block_total * alphas[s] - rhs[s]
            if value <= ZERO:  # cannot happen under the slack rule
                raise RepresentationError(
                    "internal error: slack rule produced a non-positive weight"
                )
            lam[s] = value
            lam_interval[(t, s)] = block_total * alphas[s]
    return lam, lam_interval, alpha, free


def build_lra(data: ChoiceDataset) -> LraModel:
    """Recover Luce attention weights; fails with a dora witness when an
    alternating odds sum is non-positive."""
    _require_usable(data, complete=True)
    pref = reveal_preference(data)
    rd = RevealedDominance.from_dataset(data)
    uni = data.universe
    pi: dict[tuple[int, Menu], Rat] = {}
    for r in range(uni.size):
        lam, _li, _al, _free = _lra_weights(data, r, rd.dominators[r])
        total = sum(lam.values(), ZERO)
        for menu, value in sorted(lam.items()):
            pi[(r, menu)] = value / total
    model = LraModel(uni, pref, pi)
    _verify_roundtrip(model, data, "Luce random attention")
    return model


def _cra_lambdas(data: ChoiceDataset, r: int, dominators: Menu, *, strict: bool) -> dict[Menu, Rat]:
    uni = data.universe
    full = uni.full_mask
    region = full & ~dominators
    lam: dict[Menu, Rat] = {}
    for s in subsets_between(region, full):
        value = ZERO
        for d in subsets_between(region, s):
            m = (full & ~d) | region
            mrow = data.lookup(m, r)
            if mrow is None:
                raise RepresentationError(
                    "constant-attention recovery requires a complete dataset",
                    witness={
                        "missing_problems": [
                            {"menu": list(uni.labels_of(m)), "reference": uni.label(r)}
                        ]
                    },
                )
            value += mrow[r] if ((s & ~d).bit_count() % 2 == 0) else -mrow[r]
        if strict and value <= ZERO:
            raise RepresentationError(
                "alternating reference-probability sum is not positive",
                axiom="dpcra",
                witness={
                    "reference": uni.label(r),
                    "set": list(uni.labels_of(s)),
                    "dominant_region": list(uni.labels_of(region)),
                    "lambda": format_rational(value),
                },
            )
        lam[s] = value
    return lam


def build_cra(data: ChoiceDataset) -> CraModel:
    """Recover a full-support constant-attention distribution.

    The interval masses are pinned by the data; distributing each one
    uniformly over its interval {D : (S minus the dominant region) + r ⊆ D
    ⊆ S} is one admissible full-support choice. Fails with a dpcra witness
    when a mass is non-positive.
    """
    _require_usable(data, complete=True)
    pref = reveal_preference(data)
    rd = RevealedDominance.from_dataset(data)
    uni = data.universe
    full = uni.full_mask
    pi: dict[tuple[int, Menu], Rat] = {}
    for r in range(uni.size):
        region = full & ~rd.dominators[r]
        lam = _cra_lambdas(data, r, rd.dominators[r], strict=True)
        for s in subsets_between(region, full):
            lo = (s & ~region) | bit(r)
            interval = subsets_between(lo, s)
            share = lam[s] / len(interval)
            for d in interval:
                pi[(r, d)] = share
    model = CraModel(uni, pref, pi)
    _verify_roundtrip(model, data, "constant random attention")
    return model


def compute_mobius_tables(data: ChoiceDataset) -> dict[int, MobiusTable]:
    """Audit tables for every reference (independent of recovery success).

    The Luce-side construction stops at the first non-positive alternating
    sum and records the failure; the constant-attention masses and removal
    ratios are always recorded.
    """
    _require_usable(data, complete=True)
    rd = RevealedDominance.from_dataset(data)
    uni = data.universe
    tables: dict[int, MobiusTable] = {}
    for r in range(uni.size):
        failure = None
        try:
            lam, lam_interval, alpha, free = _lra_weights(data, r, rd.dominators[r])
        except RepresentationError as exc:
            lam, lam_interval, alpha, free = {}, {}, {}, []
            failure = str(exc)
        cra_lam = _cra_lambdas(data, r, rd.dominators[r], strict=False)
        kappa: dict[Menu, Rat] = {}
        for menu, ref in data.problems():
            if ref != r:
                continue
            for x in member_indices(menu):
                if x == r:
                    continue
                xrow = data.lookup(menu, x)
                if xrow is not None and xrow[x] == ONE:
                    kappa[menu] = data.prob(bit(r) | bit(x), r, r)
                    break
        tables[r] = MobiusTable(
            reference=r,
            lra_lambda=lam,
            lambda_interval=lam_interval,
            alpha=alpha,
            cra_lambda=cra_lam,
            kappa=kappa,
            free_menus=tuple(free),
            failure=failure,
        )
    return tables


# --- attention-rule level recovery ----------------------------------------------


def ira_from_lra_cra(attention: GeneralAttention) -> IraModel:
    """Recover independent attention from a table satisfying both structural
    properties exactly: consideration-set ratios independent of the menu
    (the Luce signature) and per-alternative consideration marginals
    independent of the menu (the constant signature). The inclusion rate is
    read off the binary problems and the product form is verified against
    the whole table.
    """
    uni = attention.universe
    pref = attention.preference
    full = uni.full_mask

    def mu(r: int, d: Menu, s: Menu) -> Rat:
        return attention.mu[(r, s)].get(d, ZERO)

    for r in range(uni.size):
        anchor = bit(r)
        for s in subsets_between(anchor, full):
            for d in subsets_between(anchor, s):
                if mu(r, d, s) <= ZERO:
                    raise RepresentationError(
                        "consideration ratios need full support",
                        axiom="consideration-iia",
                        witness={
                            "reference": uni.label(r),
                            "set": list(uni.labels_of(d)),
                            "menu": list(uni.labels_of(s)),
                        },
                    )
                if mu(r, d, s) * mu(r, anchor, full) != mu(r, anchor, s) * mu(r, d, full):
                    raise RepresentationError(
                        "consideration-set ratios depend on the menu",
                        axiom="consideration-iia",
                        witness={
                            "reference": uni.label(r),
                            "set": list(uni.labels_of(d)),
                            "menu": list(uni.labels_of(s)),
                        },
                    )
    for r in range(uni.size):
        for x in range(uni.size):
            if x == r:
                continue
            pair = bit(r) | bit(x)
            reference_marginal = None
            for s in subsets_between(pair, full):
                marginal = sum(
                    (p for d, p in attention.mu[(r, s)].items() if d & bit(x)), ZERO
                )
                if reference_marginal is None:
                    reference_marginal = marginal
                elif marginal != reference_marginal:
                    raise RepresentationError(
                        "consideration marginals depend on the menu",
                        axiom="constant-marginals",
                        witness={
                            "reference": uni.label(r),
                            "alternative": uni.label(x),
                            "menu": list(uni.labels_of(s)),
                            "marginal": format_rational(marginal),
                            "baseline": format_rational(reference_marginal),
                        },
                    )

    gamma = {
        (r, x): attention.mu[(r, bit(r) | bit(x))][bit(r) | bit(x)]
        for r in range(uni.size)
        for x in range(uni.size)
        if x != r
    }
    model = IraModel(uni, pref, gamma)
    for (r, s), dist in attention.mu.items():
        for d in subsets_between(bit(r), s):
            product = ONE
            for y in member_indices(d):
                product *= model.rate(r, y)
            for y in member_indices(s & ~d):
                product *= ONE - model.rate(r, y)
            if product != dist.get(d, ZERO):
                raise RepresentationError(
                    "product form does not reproduce the attention table",
                    axiom="consideration-iia",
                    witness={
                        "reference": uni.label(r),
                        "set": list(uni.labels_of(d)),
                        "menu": list(uni.labels_of(s)),
                        "table_prob": format_rational(dist.get(d, ZERO)),
                        "product_prob": format_rational(product),
                    },
                )
    return model
