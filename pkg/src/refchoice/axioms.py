"""Behavioral checks on reference-dependent choice datasets.

Each checker decides one behavioral condition on a dataset, quantifying
only over stored problems. The result is a :class:`~refchoice.core.Verdict`:
Fail verdicts carry a witness with every number needed to reproduce the
violation from the raw data; Undetermined verdicts list the problems whose
absence blocked the decision (possible only on partial datasets).

The seven named conditions::

    ncc    no-cycle condition: the revealed-dominance relation is acyclic
    sqa    status quo asymmetry: never-chosen against y => y sometimes
           chosen against x
    nre    non-trivial reference effect: the reference is always chosen
           with positive probability
    ida    irrelevance of dominated alternatives: removing a dominated
           alternative leaves dominant alternatives' probabilities unchanged
    rida   ratio independence of dominant alternatives: removing the menu's
           dominant alternative preserves relative probabilities
    dora   decreasing odds for the reference: iterated differences of the
           odds against the reference are strictly positive
    dpcra  decreasing propensity of choice for the reference: iterated
           differences of the reference's choice probability are strictly
           positive

``dora`` and ``dpcra`` come in two modes. Full mode enumerates collections
of pairwise disjoint dominator sets (see :func:`disjoint_families` for why
disjointness is the sound quantification) and evaluates the iterated
difference literally from its recursive definition (memoized); it grows
combinatorially and is capped at |X| <= 5 (override via the
REFCHOICE_MAX_X environment variable, at your own risk). Reduced mode
tests the equivalent interval statistics: the alternating sum ``alpha`` of
reciprocal reference probabilities for dora, and the alternating sum
``lambda`` of reference probabilities for dpcra.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, Sequence

from .core import (
    ChoiceDataset,
    Menu,
    Status,
    Universe,
    Verdict,
    bit,
    member_indices,
    subsets_between,
)
from .rationals import ONE, ZERO, Rat, format_rational

FULL_MODE_CAP = 5

AXIOM_NAMES = ("ncc", "sqa", "nre", "ida", "rida", "dora", "dpcra")


def _full_mode_cap() -> int:
    raw = os.environ.get("REFCHOICE_MAX_X")
    if raw is None:
        return FULL_MODE_CAP
    return int(raw)


def _menu_json(universe: Universe, menu: Menu) -> list[str]:
    return list(universe.labels_of(menu))


@dataclass(frozen=True)
class RevealedDominance:
    """The revealed relation "y dominates x": y is sometimes chosen when x
    is the reference. ``dominators[x]`` is the bitmask of such y, i.e. the
    set of alternatives revealed preferred to x; ``dominant_region(x)`` is
    the complement, the largest menu in which x is dominant."""

    universe: Universe
    dominators: tuple[Menu, ...]
    edge_menus: Mapping[tuple[int, int], Menu]

    @classmethod
    def from_dataset(cls, data: ChoiceDataset) -> "RevealedDominance":
        n = data.universe.size
        dominators = [0] * n
        edge_menus: dict[tuple[int, int], Menu] = {}
        for menu, r in data.problems():
            row = data.table[(menu, r)]
            for y in member_indices(menu):
                if y == r or row[y] <= ZERO:
                    continue
                dominators[r] |= bit(y)
                edge_menus.setdefault((r, y), menu)
        return cls(data.universe, tuple(dominators), edge_menus)

    def p_mask(self, r: int) -> Menu:
        return self.dominators[r]

    def dominant_region(self, r: int) -> Menu:
        return self.universe.full_mask & ~self.dominators[r]

    def find_cycle(self) -> list[int] | None:
        """First directed cycle of the dominance digraph in canonical DFS
        order (edges x -> y for each dominator y of x), or None."""
        n = self.universe.size
        color = [0] * n  # 0 unvisited, 1 on stack, 2 done
        parent: dict[int, int] = {}

        for start in range(n):
            if color[start]:
                continue
            stack: list[tuple[int, Iterable[int]]] = [
                (start, iter(member_indices(self.dominators[start])))
            ]
            color[start] = 1
            while stack:
                node, it = stack[-1]
                advanced = False
                for nxt in it:
                    if color[nxt] == 1:
                        cycle = [nxt]
                        cur = node
                        while cur != nxt:
                            cycle.append(cur)
                            cur = parent[cur]
                        cycle.reverse()
                        return cycle
                    if color[nxt] == 0:
                        color[nxt] = 1
                        parent[nxt] = node
                        stack.append((nxt, iter(member_indices(self.dominators[nxt]))))
                        advanced = True
                        break
                if not advanced:
                    color[node] = 2
                    stack.pop()
        return None


# --- iterated differences ----------------------------------------------------


def odds_against_reference(data: ChoiceDataset, menu: Menu, r: int) -> Rat:
    """(1 - p_r(r, S)) / p_r(r, S); requires the reference probability > 0."""
    p = data.prob(menu, r, r)
    if p == ZERO:
        raise ValueError("odds undefined: reference chosen with probability zero")
    return (ONE - p) / p


def iterated_odds_delta(
    data: ChoiceDataset, r: int, menu: Menu, collection: Sequence[Menu]
) -> Rat:
    """Iterated odds difference, peeling the collection in the given order.

    The empty collection returns the odds themselves; one more set U gives
    the value at the menu minus the value at the menu with U removed. The
    result is order-invariant (a tested property), so any permutation of
    the collection returns the same number.
    """
    if not collection:
        return odds_against_reference(data, menu, r)
    rest = collection[1:]
    return iterated_odds_delta(data, r, menu, rest) - iterated_odds_delta(
        data, r, menu & ~collection[0], rest
    )


def iterated_choice_delta(
    data: ChoiceDataset, r: int, menu: Menu, collection: Sequence[Menu]
) -> Rat:
    """Iterated difference of the reference's choice probability; the empty
    collection returns p_r(r, S), one more set U gives the value at the
    reduced menu minus the value at the menu. Order-invariant."""
    if not collection:
        return data.prob(menu, r, r)
    rest = collection[1:]
    return iterated_choice_delta(data, r, menu & ~collection[0], rest) - iterated_choice_delta(
        data, r, menu, rest
    )


# --- the seven axioms ---------------------------------------------------------


def check_ncc(data: ChoiceDataset) -> Verdict:
    """No-cycle condition: the revealed-dominance relation has no directed
    cycle (2-cycles included). Restricted to stored problems this is exactly
    the chained form of the condition, so the check is always decisive."""
    rd = RevealedDominance.from_dataset(data)
    cycle = rd.find_cycle()
    if cycle is None:
        return Verdict.passed()
    uni = data.universe
    chain = []
    k = len(cycle)
    for i in range(k):
        ref = cycle[i]
        chosen = cycle[(i + 1) % k]
        menu = rd.edge_menus[(ref, chosen)]
        chain.append(
            {
                "reference": uni.label(ref),
                "menu": _menu_json(uni, menu),
                "chosen": uni.label(chosen),
                "prob": format_rational(data.prob(menu, ref, chosen)),
            }
        )
    return Verdict.failed({"cycle": chain})


def check_sqa(data: ChoiceDataset) -> Verdict:
    """Status quo asymmetry: if x is never chosen when y is the reference,
    then y is chosen with positive probability whenever x is the reference."""
    uni = data.universe
    by_ref: dict[int, list[Menu]] = {r: [] for r in range(uni.size)}
    for menu, r in data.problems():
        by_ref[r].append(menu)
    missing: list[tuple[Menu, int]] = []
    for x in range(uni.size):
        for y in range(uni.size):
            if x == y:
                continue
            zero_menu = None
            for menu in by_ref[y]:
                if menu & bit(x) and data.prob(menu, y, x) == ZERO:
                    zero_menu = menu
                    break
            if zero_menu is None:
                continue
            conclusion_seen = False
            for menu in by_ref[x]:
                if not menu & bit(y):
                    continue
                conclusion_seen = True
                if data.prob(menu, x, y) == ZERO:
                    return Verdict.failed(
                        {
                            "x": uni.label(x),
                            "y": uni.label(y),
                            "zero_problem": {
                                "menu": _menu_json(uni, zero_menu),
                                "reference": uni.label(y),
                            },
                            "violating_problem": {
                                "menu": _menu_json(uni, menu),
                                "reference": uni.label(x),
                                "prob": "0",
                            },
                        }
                    )
            if not conclusion_seen:
                missing.append((bit(x) | bit(y), x))
    if missing:
        return Verdict.undetermined(uni, missing)
    return Verdict.passed()


def check_nre(data: ChoiceDataset) -> Verdict:
    """Non-trivial reference effect: p_r(r, S) > 0 for every stored problem."""
    uni = data.universe
    for menu, r in data.problems():
        if data.prob(menu, r, r) == ZERO:
            return Verdict.failed(
                {"menu": _menu_json(uni, menu), "reference": uni.label(r), "prob": "0"}
            )
    return Verdict.passed()


def check_ida(data: ChoiceDataset) -> Verdict:
    """Irrelevance of dominated alternatives: for y dominated by x, removing
    y from any menu leaves x's choice probability unchanged exactly."""
    uni = data.universe
    rd = RevealedDominance.from_dataset(data)
    missing: list[tuple[Menu, int]] = []
    for menu, r in data.problems():
        row = data.table[(menu, r)]
        for y in member_indices(menu):
            if y == r:
                continue
            for x in member_indices(menu & rd.dominators[y]):
                sub = menu & ~bit(y)
                subrow = data.lookup(sub, r)
                if subrow is None:
                    missing.append((sub, r))
                    continue
                if row[x] != subrow[x]:
                    return Verdict.failed(
                        {
                            "menu": _menu_json(uni, menu),
                            "reference": uni.label(r),
                            "alternative": uni.label(x),
                            "removed": uni.label(y),
                            "dominance_menu": _menu_json(uni, rd.edge_menus[(y, x)]),
                            "with_removed": format_rational(row[x]),
                            "without_removed": format_rational(subrow[x]),
                        }
                    )
    if missing:
        return Verdict.undetermined(uni, missing)
    return Verdict.passed()


def check_rida(data: ChoiceDataset) -> Verdict:
    """Ratio independence of dominant alternatives: removing the menu's
    dominant alternative preserves relative choice probabilities. Tested by
    cross-multiplication so zero denominators never arise."""
    uni = data.universe
    missing: list[tuple[Menu, int]] = []
    for menu, r in data.problems():
        row = data.table[(menu, r)]
        for x in member_indices(menu):
            if x == r:
                continue
            xrow = data.lookup(menu, x)
            if xrow is None:
                missing.append((menu, x))
                continue
            if xrow[x] != ONE:
                continue
            sub = menu & ~bit(x)
            subrow = data.lookup(sub, r)
            rest = member_indices(sub)
            for i, y in enumerate(rest):
                for z in rest[i + 1 :]:
                    if row[y] == ZERO or row[z] == ZERO:
                        continue
                    if subrow is None:
                        missing.append((sub, r))
                        break
                    if row[y] * subrow[z] != row[z] * subrow[y]:
                        return Verdict.failed(
                            {
                                "menu": _menu_json(uni, menu),
                                "reference": uni.label(r),
                                "dominant": uni.label(x),
                                "y": uni.label(y),
                                "z": uni.label(z),
                                "p_y": format_rational(row[y]),
                                "p_z": format_rational(row[z]),
                                "p_y_without_dominant": format_rational(subrow[y]),
                                "p_z_without_dominant": format_rational(subrow[z]),
                            }
                        )
                else:
                    continue
                break
    if missing:
        return Verdict.undetermined(uni, missing)
    return Verdict.passed()


def _nre_failure(uni: Universe, menu: Menu, r: int) -> Verdict:
    return Verdict.failed(
        {
            "kind": "nre-violation",
            "error": "reference chosen with probability zero; odds are undefined",
            "menu": _menu_json(uni, menu),
            "reference": uni.label(r),
        }
    )


def reduced_dora_alpha(data: ChoiceDataset, menu: Menu, r: int, anchor: Menu) -> Rat:
    """Alternating sum of reciprocal reference probabilities over the
    interval [anchor, menu]; requires every interval problem stored with a
    positive reference probability."""
    alpha = ZERO
    for d in subsets_between(anchor, menu):
        p = data.prob(d, r, r)
        term = ONE / p
        alpha += term if ((menu & ~d).bit_count() % 2 == 0) else -term
    return alpha


def check_dora(data: ChoiceDataset, mode: str = "reduced") -> Verdict:
    """Decreasing odds for the reference alternative."""
    if mode == "reduced":
        return _check_dora_reduced(data)
    if mode == "full":
        return _check_dora_full(data)
    raise ValueError(f"unknown mode: {mode!r}")


def _check_dora_reduced(data: ChoiceDataset) -> Verdict:
    uni = data.universe
    rd = RevealedDominance.from_dataset(data)
    missing: list[tuple[Menu, int]] = []
    for menu, r in data.problems():
        anchor = menu & ~rd.dominators[r]
        alpha = ZERO
        terms = []
        blocked = False
        for d in subsets_between(anchor, menu):
            drow = data.lookup(d, r)
            if drow is None:
                missing.append((d, r))
                blocked = True
                continue
            p = drow[r]
            if p == ZERO:
                return _nre_failure(uni, d, r)
            sign = 1 if ((menu & ~d).bit_count() % 2 == 0) else -1
            alpha += (ONE / p) if sign > 0 else -(ONE / p)
            terms.append(
                {"menu": _menu_json(uni, d), "reference_prob": format_rational(p), "sign": sign}
            )
        if blocked:
            continue
        if alpha <= ZERO:
            return Verdict.failed(
                {
                    "menu": _menu_json(uni, menu),
                    "reference": uni.label(r),
                    "anchor": _menu_json(uni, anchor),
                    "alpha": format_rational(alpha),
                    "terms": terms,
                }
            )
    if missing:
        return Verdict.undetermined(uni, missing)
    return Verdict.passed()


def disjoint_families(available: Menu) -> list[tuple[Menu, ...]]:
    """All families of pairwise disjoint non-empty subsets of ``available``
    (the empty family included), deterministically ordered.

    These are the admissible collections for the iterated-difference
    conditions. Pairwise disjointness is essential for the choice-probability
    version: with overlapping sets the recursion telescopes to a plain
    regularity difference with the wrong sign, which every regular dataset
    violates. For the odds version the disjoint and unrestricted readings
    are equivalent (both reduce to positivity of the same alternating sums),
    so one enumeration serves both.
    """
    if available == 0:
        return [()]
    low = available & -available
    rest = available & ~low
    out: list[tuple[Menu, ...]] = list(disjoint_families(rest))
    for extra in subsets_between(0, rest):
        block = low | extra
        for fam in disjoint_families(rest & ~extra):
            out.append(tuple(sorted((block,) + fam)))
    out.sort(key=lambda fam: (len(fam), fam))
    return out


def _collection_context(
    data: ChoiceDataset, rd: RevealedDominance, menu: Menu, r: int
) -> tuple[list[tuple[Menu, ...]], list[Menu], list[tuple[Menu, int]]]:
    """Admissible collections for full mode, the interval of reachable
    menus, and any missing problems among them.

    Collection members are restricted to subsets of the dominators present
    in the menu: an iterated difference depends on each set only through
    its intersection with the menu, so nothing is lost.
    """
    present = rd.dominators[r] & menu
    families = [fam for fam in disjoint_families(present) if fam]
    anchor = menu & ~present
    reach = subsets_between(anchor, menu)
    missing = [(m, r) for m in reach if not data.has_problem(m, r)]
    return families, reach, missing


def _check_dora_full(data: ChoiceDataset) -> Verdict:
    cap = _full_mode_cap()
    uni = data.universe
    if uni.size > cap:
        raise ValueError(
            f"full mode is limited to universes of at most {cap} alternatives "
            "(REFCHOICE_MAX_X overrides, at your own risk)"
        )
    rd = RevealedDominance.from_dataset(data)
    missing: list[tuple[Menu, int]] = []
    for menu, r in data.problems():
        families, reach, local_missing = _collection_context(data, rd, menu, r)
        if not families:
            continue
        if local_missing:
            missing.extend(local_missing)
            continue
        odds: dict[Menu, Rat] = {}
        bad = None
        for m in reach:
            p = data.prob(m, r, r)
            if p == ZERO:
                bad = m
                break
            odds[m] = (ONE - p) / p
        if bad is not None:
            return _nre_failure(uni, bad, r)

        memo: dict[tuple[tuple[Menu, ...], Menu], Rat] = {}

        def delta(fam: tuple[Menu, ...], m: Menu) -> Rat:
            if not fam:
                return odds[m]
            key = (fam, m)
            val = memo.get(key)
            if val is None:
                rest = fam[1:]
                val = delta(rest, m) - delta(rest, m & ~fam[0])
                memo[key] = val
            return val

        for fam in families:
            if delta(fam, menu) <= ZERO:
                return Verdict.failed(
                    {
                        "menu": _menu_json(uni, menu),
                        "reference": uni.label(r),
                        "collection": [_menu_json(uni, u) for u in fam],
                        "delta": format_rational(delta(fam, menu)),
                    }
                )
    if missing:
        return Verdict.undetermined(uni, missing)
    return Verdict.passed()


def check_dpcra(data: ChoiceDataset, mode: str = "reduced") -> Verdict:
    """Decreasing propensity of choice for the reference alternative."""
    if mode == "reduced":
        return _check_dpcra_reduced(data)
    if mode == "full":
        return _check_dpcra_full(data)
    raise ValueError(f"unknown mode: {mode!r}")


def _check_dpcra_reduced(data: ChoiceDataset) -> Verdict:
    uni = data.universe
    full = uni.full_mask
    rd = RevealedDominance.from_dataset(data)
    missing: list[tuple[Menu, int]] = []
    for r in range(uni.size):
        region = full & ~rd.dominators[r]
        for s in subsets_between(region, full):
            lam = ZERO
            terms = []
            blocked = False
            for d in subsets_between(region, s):
                m = (full & ~d) | region
                mrow = data.lookup(m, r)
                if mrow is None:
                    missing.append((m, r))
                    blocked = True
                    continue
                sign = 1 if ((s & ~d).bit_count() % 2 == 0) else -1
                lam += mrow[r] if sign > 0 else -mrow[r]
                terms.append(
                    {
                        "menu": _menu_json(uni, m),
                        "reference_prob": format_rational(mrow[r]),
                        "sign": sign,
                    }
                )
            if blocked:
                continue
            if lam <= ZERO:
                return Verdict.failed(
                    {
                        "reference": uni.label(r),
                        "set": _menu_json(uni, s),
                        "dominant_region": _menu_json(uni, region),
                        "lambda": format_rational(lam),
                        "terms": terms,
                    }
                )
    if missing:
        return Verdict.undetermined(uni, missing)
    return Verdict.passed()


def _check_dpcra_full(data: ChoiceDataset) -> Verdict:
    cap = _full_mode_cap()
    uni = data.universe
    if uni.size > cap:
        raise ValueError(
            f"full mode is limited to universes of at most {cap} alternatives "
            "(REFCHOICE_MAX_X overrides, at your own risk)"
        )
    rd = RevealedDominance.from_dataset(data)
    missing: list[tuple[Menu, int]] = []
    for menu, r in data.problems():
        families, reach, local_missing = _collection_context(data, rd, menu, r)
        if not families:
            continue
        if local_missing:
            missing.extend(local_missing)
            continue
        pref_prob = {m: data.prob(m, r, r) for m in reach}

        memo: dict[tuple[tuple[Menu, ...], Menu], Rat] = {}

        def delta(fam: tuple[Menu, ...], m: Menu) -> Rat:
            if not fam:
                return pref_prob[m]
            key = (fam, m)
            val = memo.get(key)
            if val is None:
                rest = fam[1:]
                val = delta(rest, m & ~fam[0]) - delta(rest, m)
                memo[key] = val
            return val

        for fam in families:
            if delta(fam, menu) <= ZERO:
                return Verdict.failed(
                    {
                        "menu": _menu_json(uni, menu),
                        "reference": uni.label(r),
                        "collection": [_menu_json(uni, u) for u in fam],
                        "delta": format_rational(delta(fam, menu)),
                    }
                )
    if missing:
        return Verdict.undetermined(uni, missing)
    return Verdict.passed()


# --- further conditions -------------------------------------------------------


def check_weak_regularity(data: ChoiceDataset) -> Verdict:
    """Monotone-attention signature: when y dominates x, removing y never
    lowers x's choice probability."""
    uni = data.universe
    rd = RevealedDominance.from_dataset(data)
    missing: list[tuple[Menu, int]] = []
    for menu, r in data.problems():
        row = data.table[(menu, r)]
        for y in member_indices(menu):
            if y == r:
                continue
            for x in member_indices(menu & ~bit(y)):
                if not rd.dominators[x] & bit(y):
                    continue
                sub = menu & ~bit(y)
                subrow = data.lookup(sub, r)
                if subrow is None:
                    missing.append((sub, r))
                    continue
                if row[x] > subrow[x]:
                    return Verdict.failed(
                        {
                            "menu": _menu_json(uni, menu),
                            "reference": uni.label(r),
                            "alternative": uni.label(x),
                            "removed": uni.label(y),
                            "dominance_menu": _menu_json(uni, rd.edge_menus[(x, y)]),
                            "with_removed": format_rational(row[x]),
                            "without_removed": format_rational(subrow[x]),
                        }
                    )
    if missing:
        return Verdict.undetermined(uni, missing)
    return Verdict.passed()


def check_regularity(data: ChoiceDataset) -> Verdict:
    """Choice probabilities weakly decrease as the menu grows, for every
    alternative and reference (quantified over stored problem pairs)."""
    uni = data.universe
    by_ref: dict[int, list[Menu]] = {r: [] for r in range(uni.size)}
    for menu, r in data.problems():
        by_ref[r].append(menu)
    for r in range(uni.size):
        menus = by_ref[r]
        for small in menus:
            small_row = data.table[(small, r)]
            for big in menus:
                if small == big or small & ~big:
                    continue
                big_row = data.table[(big, r)]
                for x in member_indices(small):
                    if small_row[x] < big_row[x]:
                        return Verdict.failed(
                            {
                                "reference": uni.label(r),
                                "alternative": uni.label(x),
                                "small_menu": _menu_json(uni, small),
                                "large_menu": _menu_json(uni, big),
                                "small_prob": format_rational(small_row[x]),
                                "large_prob": format_rational(big_row[x]),
                            }
                        )
    return Verdict.passed()


def check_sqm(data: ChoiceDataset, strict: bool = False) -> Verdict:
    """Status quo monotonicity: an alternative is most likely chosen when it
    is itself the reference. Strict mode requires a strict increase whenever
    the reference differs from the alternative."""
    uni = data.universe
    missing: list[tuple[Menu, int]] = []
    for menu, r in data.problems():
        row = data.table[(menu, r)]
        for x in member_indices(menu):
            if x == r:
                continue
            xrow = data.lookup(menu, x)
            if xrow is None:
                missing.append((menu, x))
                continue
            own, other = xrow[x], row[x]
            if own < other or (strict and own <= other):
                return Verdict.failed(
                    {
                        "menu": _menu_json(uni, menu),
                        "alternative": uni.label(x),
                        "reference": uni.label(r),
                        "own_reference_prob": format_rational(own),
                        "other_reference_prob": format_rational(other),
                        "strict": strict,
                    }
                )
    if missing:
        return Verdict.undetermined(uni, missing)
    return Verdict.passed()


# --- classification -----------------------------------------------------------


@dataclass(frozen=True)
class Classification:
    """Model-lattice membership derived from the seven axiom verdicts.

    ``consistency_error`` is set if the verdicts contradict the lattice
    structure (independent attention must equal the intersection of the
    Luce and constant models); on exact complete data this cannot happen.
    """

    verdicts: Mapping[str, Verdict]
    rdram: Status
    ira: Status
    lra: Status
    cra: Status
    consistency_error: str | None

    @property
    def flags(self) -> dict[str, str]:
        return {
            "rdram": self.rdram.value,
            "ira": self.ira.value,
            "lra": self.lra.value,
            "cra": self.cra.value,
        }


def _combine(statuses: Iterable[Status]) -> Status:
    out = Status.PASS
    for s in statuses:
        if s is Status.FAIL:
            return Status.FAIL
        if s is Status.UNDETERMINED:
            out = Status.UNDETERMINED
    return out


def classify(data: ChoiceDataset, mode: str = "reduced") -> Classification:
    """Decide membership in the four model classes from the seven axioms."""
    verdicts = {
        "ncc": check_ncc(data),
        "sqa": check_sqa(data),
        "nre": check_nre(data),
        "ida": check_ida(data),
        "rida": check_rida(data),
        "dora": check_dora(data, mode),
        "dpcra": check_dpcra(data, mode),
    }
    st = {name: v.status for name, v in verdicts.items()}
    rdram = _combine((st["ncc"], st["sqa"], st["nre"]))
    ira = _combine((rdram, st["ida"], st["rida"]))
    lra = _combine((rdram, st["rida"], st["dora"]))
    cra = _combine((rdram, st["ida"], st["dpcra"]))
    error = None
    if ira is Status.PASS and not (lra is Status.PASS and cra is Status.PASS):
        error = (
            "inconsistent lattice: independent attention passed but the Luce "
            "or constant model did not"
        )
    if lra is Status.PASS and cra is Status.PASS and ira is not Status.PASS:
        error = (
            "inconsistent lattice: Luce and constant models passed but "
            "independent attention did not"
        )
    return Classification(verdicts, rdram, ira, lra, cra, error)


#: name -> checker with a uniform (data, mode) signature, for the CLI.
CHECKS: dict[str, Callable[[ChoiceDataset, str], Verdict]] = {
    "ncc": lambda data, mode: check_ncc(data),
    "sqa": lambda data, mode: check_sqa(data),
    "nre": lambda data, mode: check_nre(data),
    "ida": lambda data, mode: check_ida(data),
    "rida": lambda data, mode: check_rida(data),
    "dora": check_dora,
    "dpcra": check_dpcra,
    "weak-regularity": lambda data, mode: check_weak_regularity(data),
    "regularity": lambda data, mode: check_regularity(data),
    "sqm": lambda data, mode: check_sqm(data),
    "sqm-strict": lambda data, mode: check_sqm(data, strict=True),
}
