"""Domain types for reference-dependent stochastic choice data.

Alternatives live in a small finite universe (hard cap 16) with a canonical
index, and menus are plain ``int`` bitmasks over that index. A *choice
problem* is a pair ``(menu, reference)`` with the reference inside the menu;
a dataset stores one exact probability row per problem. Everything here is
an immutable value after construction, and every operation is a pure
function, so objects can be shared freely across threads.

Wire format (UTF-8 JSON)::

    {"alternatives": ["x", "y", "z"],
     "complete": true,
     "problems": [{"menu": ["x", "z"], "reference": "z",
                   "choice": {"x": "1/2", "z": "1/2"}}, ...]}

Probabilities are ``"p"`` / ``"p/q"`` strings; non-reduced input is accepted
and normalized on output. Serialization is canonical (fixed ordering of
alternatives, problems, and choice keys) so equal datasets produce identical
bytes.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator, Mapping

from .rationals import ONE, ZERO, Rat, RationalFormatError, format_rational, parse_rational

MAX_ALTERNATIVES = 16

#: A menu is a bitmask over the universe's canonical alternative index.
Menu = int


class DatasetFormatError(ValueError):
    """Malformed dataset or model input (structure, labels, rationals)."""


def bit(index: int) -> Menu:
    return 1 << index


def member_indices(mask: Menu) -> tuple[int, ...]:
    """Indices of the alternatives in ``mask``, ascending."""
    out = []
    i = 0
    m = mask
    while m:
        if m & 1:
            out.append(i)
        m >>= 1
        i += 1
    return tuple(out)


def subsets_between(lo: Menu, hi: Menu) -> list[Menu]:
    """All sets ``D`` with ``lo ⊆ D ⊆ hi`` in ascending bitmask order.

    The bitmask order coincides with index-lexicographic order on subsets,
    so interval enumerations (and therefore every alternating-sum computed
    from them) are reproducible byte-for-byte. Raises ``ValueError`` when
    ``lo`` is not contained in ``hi``. The result has ``2**(|hi|-|lo|)``
    elements.
    """
    if lo & ~hi:
        raise ValueError(f"lower bound {lo:#x} is not a subset of upper bound {hi:#x}")
    free = hi & ~lo
    out = [lo]
    sub = (0 - free) & free
    while sub:
        out.append(lo | sub)
        sub = (sub - free) & free
    return out


@dataclass(frozen=True)
class Universe:
    """The finite alternative set, with canonical index ``0..n-1``.

    Labels are opaque non-empty strings; order of ``alternatives`` fixes the
    bitmask encoding of menus and every canonical ordering downstream.
    """

    alternatives: tuple[str, ...]

    def __post_init__(self) -> None:
        alts = tuple(self.alternatives)
        object.__setattr__(self, "alternatives", alts)
        if not alts:
            raise ValueError("universe must contain at least one alternative")
        if len(alts) > MAX_ALTERNATIVES:
            raise ValueError(f"universe exceeds the cap of {MAX_ALTERNATIVES} alternatives")
        if len(set(alts)) != len(alts):
            raise ValueError("alternative labels must be distinct")
        if any(not isinstance(a, str) or not a for a in alts):
            raise ValueError("alternative labels must be non-empty strings")
        object.__setattr__(self, "_index", {a: i for i, a in enumerate(alts)})

    @property
    def size(self) -> int:
        return len(self.alternatives)

    @property
    def full_mask(self) -> Menu:
        return (1 << self.size) - 1

    def index(self, label: str) -> int:
        try:
            return self._index[label]  # type: ignore[attr-defined]
        except KeyError:
            raise DatasetFormatError(f"unknown alternative label: {label!r}") from None

    def label(self, index: int) -> str:
        return self.alternatives[index]

    def mask_of(self, labels: Iterable[str]) -> Menu:
        mask = 0
        for lab in labels:
            b = bit(self.index(lab))
            if mask & b:
                raise DatasetFormatError(f"duplicate label in menu: {lab!r}")
            mask |= b
        return mask

    def labels_of(self, mask: Menu) -> tuple[str, ...]:
        return tuple(self.alternatives[i] for i in member_indices(mask))

    def menus(self) -> Iterator[Menu]:
        """All non-empty menus, ascending."""
        return iter(range(1, self.full_mask + 1))

    def problems(self) -> Iterator[tuple[Menu, int]]:
        """All choice problems ``(menu, reference)`` in canonical order."""
        for menu in self.menus():
            for r in member_indices(menu):
                yield menu, r


@dataclass(frozen=True)
class ChoiceProblem:
    """A menu together with the alternative currently held as reference."""

    menu: Menu
    reference: int

    def __post_init__(self) -> None:
        if self.menu <= 0:
            raise ValueError("menu must be non-empty")
        if not self.menu & bit(self.reference):
            raise ValueError("reference must be a member of the menu")


class Status(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    UNDETERMINED = "undetermined"


@dataclass(frozen=True)
class Verdict:
    """Outcome of a check, with a re-checkable witness on failure.

    ``witness`` is a JSON-ready mapping (labels, menus as label lists,
    rationals as strings). A Fail witness always contains everything needed
    to reproduce the violation directly from the raw dataset; Undetermined
    witnesses carry the missing problems that blocked the check.
    """

    status: Status
    witness: Mapping | None = None

    def __post_init__(self) -> None:
        if self.status is Status.FAIL and self.witness is None:
            raise ValueError("Fail verdicts must carry a witness")

    @property
    def is_pass(self) -> bool:
        return self.status is Status.PASS

    @classmethod
    def passed(cls) -> "Verdict":
        return cls(Status.PASS)

    @classmethod
    def failed(cls, witness: Mapping) -> "Verdict":
        return cls(Status.FAIL, witness)

    @classmethod
    def undetermined(cls, universe: Universe, missing: Iterable[tuple[Menu, int]]) -> "Verdict":
        probs = sorted(set(missing))
        listed = [
            {"menu": list(universe.labels_of(menu)), "reference": universe.label(r)}
            for menu, r in probs
        ]
        return cls(Status.UNDETERMINED, {"missing_problems": listed})


@dataclass(frozen=True)
class LinearOrder:
    """A strict preference ranking, best alternative first.

    ``ranking`` must be a permutation of ``0..n-1``; completeness,
    antisymmetry, and transitivity hold by construction. Derived masks are
    precomputed: ``better_mask[x]`` is the set of alternatives strictly
    preferred to ``x`` and ``weak_lower_mask[x]`` is ``{y : x ⪰ y}``, the
    largest menu in which ``x`` is maximal.
    """

    ranking: tuple[int, ...]

    def __post_init__(self) -> None:
        ranking = tuple(self.ranking)
        object.__setattr__(self, "ranking", ranking)
        n = len(ranking)
        if sorted(ranking) != list(range(n)):
            raise ValueError("ranking must be a permutation of 0..n-1")
        position = [0] * n
        for pos, alt in enumerate(ranking):
            position[alt] = pos
        better = [0] * n
        seen = 0
        for alt in ranking:
            better[alt] = seen
            seen |= bit(alt)
        full = (1 << n) - 1
        weak_lower = [full & ~b | bit(a) for a, b in enumerate(better)]
        object.__setattr__(self, "_position", tuple(position))
        object.__setattr__(self, "_better", tuple(better))
        object.__setattr__(self, "_weak_lower", tuple(weak_lower))

    @property
    def size(self) -> int:
        return len(self.ranking)

    def position(self, alt: int) -> int:
        return self._position[alt]  # type: ignore[attr-defined]

    def prefers(self, x: int, y: int) -> bool:
        """Strict preference of ``x`` over ``y``."""
        return self._position[x] < self._position[y]  # type: ignore[attr-defined]

    def better_mask(self, alt: int) -> Menu:
        return self._better[alt]  # type: ignore[attr-defined]

    def weak_lower_mask(self, alt: int) -> Menu:
        return self._weak_lower[alt]  # type: ignore[attr-defined]

    def best_in(self, menu: Menu) -> int:
        if menu <= 0:
            raise ValueError("menu must be non-empty")
        for alt in self.ranking:
            if menu & bit(alt):
                return alt
        raise ValueError("menu is not a subset of the order's universe")

    @classmethod
    def from_labels(cls, universe: Universe, labels_best_first: Iterable[str]) -> "LinearOrder":
        ranking = tuple(universe.index(lab) for lab in labels_best_first)
        if len(ranking) != universe.size:
            raise ValueError("preference must rank every alternative exactly once")
        return cls(ranking)

    def to_labels(self, universe: Universe) -> list[str]:
        return [universe.label(i) for i in self.ranking]


@dataclass(frozen=True)
class ChoiceDataset:
    """The observed family of reference-dependent random choice rules.

    ``table`` maps ``(menu, reference)`` to a per-alternative probability
    row. Construction is structural only; Definition-level semantics (rows
    sum to one, probabilities in range, reference inside the menu, support
    inside the menu, completeness when flagged) are checked by
    :func:`validate_dataset` so that invalid files can be rendered as Fail
    verdicts rather than parse crashes.
    """

    universe: Universe
    complete: bool
    table: Mapping[tuple[Menu, int], Mapping[int, Rat]]

    @classmethod
    def from_rows(
        cls,
        universe: Universe,
        rows: Iterable[tuple[Menu, int, Mapping[int, Rat]]],
        complete: bool = True,
    ) -> "ChoiceDataset":
        """Build a dataset, filling explicit zeros for unlisted menu members.

        Raises :class:`DatasetFormatError` on duplicate ``(menu, reference)``
        entries; semantic violations are left for :func:`validate_dataset`.
        """
        table: dict[tuple[Menu, int], dict[int, Rat]] = {}
        for menu, ref, probs in rows:
            key = (menu, ref)
            if key in table:
                raise DatasetFormatError(
                    f"duplicate problem entry: menu {universe.labels_of(menu)}, "
                    f"reference {universe.label(ref)!r}"
                )
            row = {x: ZERO for x in member_indices(menu)}
            for x, p in probs.items():
                row[x] = Rat(p)
            table[key] = row
        return cls(universe, complete, table)

    def lookup(self, menu: Menu, reference: int) -> Mapping[int, Rat] | None:
        """Probability row for a problem, or None when it is not stored."""
        return self.table.get((menu, reference))

    def prob(self, menu: Menu, reference: int, alternative: int) -> Rat:
        """Stored probability; raises ``KeyError`` on a missing problem."""
        return self.table[(menu, reference)][alternative]

    def has_problem(self, menu: Menu, reference: int) -> bool:
        return (menu, reference) in self.table

    def problems(self) -> Iterator[tuple[Menu, int]]:
        """Stored problems in canonical ``(menu, reference)`` order."""
        return iter(sorted(self.table))

    def missing_problems(self) -> list[tuple[Menu, int]]:
        """Problems of the full domain that are not stored."""
        return [pr for pr in self.universe.problems() if pr not in self.table]


def validate_dataset(data: ChoiceDataset) -> Verdict:
    """Check the defining constraints of a choice dataset.

    Pass requires, for every stored problem: the reference is a member of
    the menu, every probability entry refers to a menu member and lies in
    [0, 1], and the row sums to exactly 1. When the dataset is flagged
    complete, every problem of the domain must be present. The Fail witness
    carries the first violation in canonical order.
    """
    uni = data.universe
    full = uni.full_mask

    def problem_json(menu: Menu, ref: int) -> dict:
        label = uni.label(ref) if 0 <= ref < uni.size else f"#{ref}"
        return {"menu": list(uni.labels_of(menu & full)), "reference": label}

    for menu, ref in data.problems():
        row = data.table[(menu, ref)]
        if menu <= 0 or menu & ~full:
            return Verdict.failed(
                {"error": "menu is not a non-empty subset of the universe",
                 "problem": problem_json(menu, ref)}
            )
        if ref < 0 or ref >= uni.size or not menu & bit(ref):
            return Verdict.failed(
                {"error": "reference is not a member of the menu",
                 "problem": problem_json(menu, ref)}
            )
        total = ZERO
        for x, p in sorted(row.items()):
            if not menu & bit(x):
                return Verdict.failed(
                    {"error": "probability entry for an alternative outside the menu",
                     "problem": problem_json(menu, ref), "alternative": uni.label(x)}
                )
            if p < ZERO or p > ONE:
                return Verdict.failed(
                    {"error": "probability outside [0, 1]",
                     "problem": problem_json(menu, ref), "alternative": uni.label(x),
                     "value": format_rational(p)}
                )
            total += p
        if total != ONE:
            return Verdict.failed(
                {"error": "probabilities do not sum to 1",
                 "problem": problem_json(menu, ref), "sum": format_rational(total)}
            )
    if data.complete:
        missing = data.missing_problems()
        if missing:
            return Verdict.failed(
                {"error": "dataset flagged complete but problems are missing",
                 "missing_problems": [problem_json(m, r) for m, r in missing[:20]],
                 "missing_count": len(missing)}
            )
    return Verdict.passed()


# --- JSON serialization ----------------------------------------------------


def dataset_to_json(data: ChoiceDataset) -> dict:
    """Canonical JSON object; equal datasets serialize identically."""
    uni = data.universe
    problems = []
    for menu, ref in data.problems():
        row = data.table[(menu, ref)]
        problems.append(
            {
                "menu": list(uni.labels_of(menu)),
                "reference": uni.label(ref),
                "choice": {
                    uni.label(x): format_rational(row[x]) for x in member_indices(menu)
                },
            }
        )
    return {
        "alternatives": list(uni.alternatives),
        "complete": data.complete,
        "problems": problems,
    }


def parse_dataset(obj: Mapping) -> ChoiceDataset:
    """Parse the JSON object form of a dataset.

    Structural problems (missing keys, unknown labels, malformed rationals,
    duplicate problems) raise :class:`DatasetFormatError`. Unknown keys are
    ignored so sampled datasets carrying auxiliary fields round-trip.
    """
    if not isinstance(obj, Mapping):
        raise DatasetFormatError("dataset must be a JSON object")
    try:
        universe = Universe(tuple(obj["alternatives"]))
    except KeyError:
        raise DatasetFormatError("dataset is missing 'alternatives'") from None
    except ValueError as exc:
        raise DatasetFormatError(str(exc)) from None
    problems = obj.get("problems")
    if not isinstance(problems, list):
        raise DatasetFormatError("dataset is missing the 'problems' list")
    rows = []
    for entry in problems:
        if not isinstance(entry, Mapping):
            raise DatasetFormatError("each problem must be a JSON object")
        try:
            menu = universe.mask_of(entry["menu"])
            ref_label = entry["reference"]
            choice = entry["choice"]
        except KeyError as exc:
            raise DatasetFormatError(f"problem entry is missing {exc}") from None
        ref = universe.index(ref_label)
        if not isinstance(choice, Mapping):
            raise DatasetFormatError("'choice' must map alternatives to rationals")
        try:
            probs = {universe.index(lab): parse_rational(p) for lab, p in choice.items()}
        except RationalFormatError as exc:
            raise DatasetFormatError(str(exc)) from None
        rows.append((menu, ref, probs))
    return ChoiceDataset.from_rows(universe, rows, complete=bool(obj.get("complete", False)))


def dumps_dataset(data: ChoiceDataset) -> str:
    return json.dumps(dataset_to_json(data), indent=2) + "\n"


def loads_dataset(text: str) -> ChoiceDataset:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DatasetFormatError(f"invalid JSON: {exc}") from None
    return parse_dataset(obj)


def dataset_digest(data: ChoiceDataset) -> str:
    """SHA-256 of the compact canonical serialization."""
    payload = json.dumps(dataset_to_json(data), separators=(",", ":"), sort_keys=False)
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()
