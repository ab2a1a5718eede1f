"""Command-line surface.

Subcommands: ``check`` (run behavioral checks on a dataset), ``classify``
(model-lattice membership), ``recover`` (reconstruct a representation),
``simulate`` (model to dataset, exact or sampled), and ``fixtures``
(bundled examples). Exit codes are fixed for scripting: 0 all requested
checks pass, 1 substantive failure (an axiom fails, recovery impossible,
inconsistent classification), 2 usage, parse, or validation error.

All input and output files are UTF-8 JSON. Reports are deterministic:
identical inputs produce identical bytes. The environment variable
REFCHOICE_MAX_X overrides the full-mode size cap (unsafe: full mode is
doubly exponential in the number of dominators).
"""

from __future__ import annotations

import json
import sys
from collections import Counter

import click

from . import __version__
from .axioms import AXIOM_NAMES, CHECKS, Classification, classify
from .core import (
    ChoiceDataset,
    ChoiceProblem,
    DatasetFormatError,
    Verdict,
    dataset_digest,
    dataset_to_json,
    dumps_dataset,
    loads_dataset,
    member_indices,
    validate_dataset,
)
from .fixtures import FIXTURES, fixture_names
from .models import model_to_json, parse_model, sample_choices, simulate_dataset
from .rationals import Rat, format_rational
from .recovery import (
    RepresentationError,
    build_cra,
    build_ira,
    build_lra,
    build_rdram,
    compute_mobius_tables,
)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2

_BUILDERS = {"rdram": build_rdram, "ira": build_ira, "lra": build_lra, "cra": build_cra}

_STATUS_MARK = {"pass": "✓", "fail": "✗", "undetermined": "?"}


def _usage_error(message: str) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(EXIT_USAGE)


def _load_dataset(handle, allow_partial: bool) -> ChoiceDataset:
    try:
        data = loads_dataset(handle.read())
    except DatasetFormatError as exc:
        _usage_error(str(exc))
    verdict = validate_dataset(data)
    if not verdict.is_pass:
        click.echo("dataset failed validation:", err=True)
        click.echo(json.dumps(verdict.witness, indent=2), err=True)
        sys.exit(EXIT_USAGE)
    if not data.complete and not allow_partial:
        _usage_error(
            "dataset is not flagged complete; pass --allow-partial to run "
            "checks over the stored problems only"
        )
    return data


def _verdict_json(verdict: Verdict) -> dict:
    out: dict = {"status": verdict.status.value}
    if verdict.witness is not None:
        out["witness"] = verdict.witness
    return out


def _emit(payload: dict, text: str, out, as_json: bool) -> None:
    if out is not None:
        out.write(json.dumps(payload, indent=2) + "\n")
    if as_json:
        click.echo(json.dumps(payload, indent=2))
    else:
        click.echo(text, nl=False)


@click.group()
@click.version_option(__version__, prog_name="refchoice")
def main() -> None:
    """Analyze reference-dependent stochastic choice data."""


@main.command()
@click.argument("dataset", type=click.File("r"))
@click.option(
    "--axiom",
    "axioms",
    multiple=True,
    help="Check to run (repeatable): one of "
    + ", ".join(sorted(CHECKS))
    + ", or 'all' for the seven axioms. Default: all.",
)
@click.option(
    "--mode",
    type=click.Choice(["reduced", "full"]),
    default="reduced",
    show_default=True,
    help="dora/dpcra evaluation mode.",
)
@click.option("--allow-partial", is_flag=True, help="Accept datasets not flagged complete.")
@click.option("--out", type=click.File("w"), help="Also write the JSON report to a file.")
@click.option("--json", "as_json", is_flag=True, help="Print the JSON report instead of text.")
def check(dataset, axioms, mode, allow_partial, out, as_json):
    """Run behavioral checks on a dataset; exit 0 only if all pass."""
    requested: list[str] = []
    for name in axioms:
        if name == "all":
            requested.extend(AXIOM_NAMES)
        elif name in CHECKS:
            requested.append(name)
        else:
            _usage_error(f"unknown axiom {name!r}; available: {', '.join(sorted(CHECKS))}")
    if not requested:
        requested = list(AXIOM_NAMES)
    data = _load_dataset(dataset, allow_partial)
    verdicts = {name: CHECKS[name](data, mode) for name in requested}
    payload = {
        "tool": "refchoice",
        "version": __version__,
        "dataset_digest": dataset_digest(data),
        "mode": mode,
        "axioms": {name: _verdict_json(v) for name, v in verdicts.items()},
    }
    lines = [f"dataset sha256 {dataset_digest(data)}  (mode: {mode})"]
    for name, verdict in verdicts.items():
        lines.append(f"  {name:<16} {verdict.status.value}")
    for name, verdict in verdicts.items():
        if verdict.witness is not None:
            lines.append(f"witness [{name}]:")
            lines.append(json.dumps(verdict.witness, indent=2))
            break
    _emit(payload, "\n".join(lines) + "\n", out, as_json)
    sys.exit(EXIT_OK if all(v.is_pass for v in verdicts.values()) else EXIT_FAIL)


def _classification_json(cls: Classification) -> dict:
    out = {
        "flags": cls.flags,
        "axioms": {name: _verdict_json(v) for name, v in cls.verdicts.items()},
    }
    if cls.consistency_error:
        out["consistency_error"] = cls.consistency_error
    return out


@main.command(name="classify")
@click.option(
    "--mode", type=click.Choice(["reduced", "full"]), default="reduced", show_default=True
)
@click.option("--allow-partial", is_flag=True)
@click.option("--out", type=click.File("w"))
@click.option("--json", "as_json", is_flag=True)
@click.argument("dataset", type=click.File("r"))
def classify_cmd(dataset, mode, allow_partial, out, as_json):
    """Report model-lattice membership (rdram, ira, lra, cra)."""
    data = _load_dataset(dataset, allow_partial)
    result = classify(data, mode)
    payload = {
        "tool": "refchoice",
        "version": __version__,
        "dataset_digest": dataset_digest(data),
        "mode": mode,
        "classification": _classification_json(result),
    }
    marks = {
        name: _STATUS_MARK[status]
        for name, status in result.flags.items()
    }
    lines = [
        f"dataset sha256 {dataset_digest(data)}  (mode: {mode})",
        f"  rdram {marks['rdram']}   ira {marks['ira']}   lra {marks['lra']}   cra {marks['cra']}",
    ]
    for name in AXIOM_NAMES:
        lines.append(f"  {name:<16} {result.verdicts[name].status.value}")
    if result.consistency_error:
        lines.append(f"INTERNAL INCONSISTENCY: {result.consistency_error}")
    _emit(payload, "\n".join(lines) + "\n", out, as_json)
    sys.exit(EXIT_FAIL if result.consistency_error else EXIT_OK)


@main.command()
@click.argument("dataset", type=click.File("r"))
@click.option(
    "--class",
    "model_class",
    type=click.Choice(sorted(_BUILDERS)),
    required=True,
    help="Representation class to reconstruct.",
)
@click.option("--out", type=click.File("w"), help="Write the model JSON here (default stdout).")
@click.option("--audit", "audit_out", type=click.File("w"), help="Write the Möbius audit tables.")
def recover(dataset, model_class, out, audit_out):
    """Reconstruct a representation; verifies the round trip before exiting."""
    data = _load_dataset(dataset, allow_partial=False)
    try:
        model = _BUILDERS[model_class](data)
        if audit_out is not None:
            tables = compute_mobius_tables(data)
            audit_out.write(
                json.dumps(
                    {
                        "dataset_digest": dataset_digest(data),
                        "references": [
                            tables[r].to_json(data.universe) for r in sorted(tables)
                        ],
                    },
                    indent=2,
                )
                + "\n"
            )
    except RepresentationError as exc:
        payload = {"error": str(exc)}
        if exc.axiom:
            payload["axiom"] = exc.axiom
        if exc.witness:
            payload["witness"] = exc.witness
        click.echo(json.dumps(payload, indent=2), err=True)
        sys.exit(EXIT_FAIL)
    text = json.dumps(model_to_json(model), indent=2) + "\n"
    (out or sys.stdout).write(text)
    click.echo("round trip verified: recovered model reproduces the dataset", err=True)
    sys.exit(EXIT_OK)


@main.command()
@click.argument("model", type=click.File("r"))
@click.option("--exact", is_flag=True, help="Write the exact induced dataset.")
@click.option("--samples", type=int, help="Write empirical frequencies from this many draws.")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out", type=click.File("w"))
def simulate(model, exact, samples, seed, out):
    """Evaluate a model file into a dataset file.

    Sampling is deterministic: each problem uses its own stream seeded with
    "{seed}|{menu bitmask}|{reference index}", and the empirical dataset
    additionally carries the exact probabilities under "exact_choice".
    """
    if exact == (samples is not None):
        _usage_error("exactly one of --exact or --samples is required")
    if samples is not None and samples <= 0:
        _usage_error("--samples must be positive")
    try:
        obj = json.loads(model.read())
        attention_model = parse_model(obj)
    except (json.JSONDecodeError, DatasetFormatError) as exc:
        _usage_error(str(exc))
    data = simulate_dataset(attention_model)
    if exact:
        text = dumps_dataset(data)
    else:
        uni = attention_model.universe
        payload = dataset_to_json(data)
        for entry in payload["problems"]:
            menu = uni.mask_of(entry["menu"])
            ref = uni.index(entry["reference"])
            draws = sample_choices(
                attention_model, ChoiceProblem(menu, ref), samples, f"{seed}|{menu}|{ref}"
            )
            counts = Counter(draws)
            entry["exact_choice"] = entry["choice"]
            entry["choice"] = {
                uni.label(x): format_rational(Rat(counts.get(x, 0), samples))
                for x in member_indices(menu)
            }
        text = json.dumps(payload, indent=2) + "\n"
    (out or sys.stdout).write(text)
    sys.exit(EXIT_OK)


@main.command()
@click.argument("name", required=False)
@click.option("--list", "list_all", is_flag=True, help="List available fixtures.")
@click.option("--out", type=click.File("w"))
def fixtures(name, list_all, out):
    """Emit a bundled example model or dataset by name."""
    if list_all:
        for fixture_name in fixture_names():
            fixture = FIXTURES[fixture_name]
            click.echo(f"{fixture_name:<24} {fixture.kind:<8} {fixture.description}")
        sys.exit(EXIT_OK)
    if name is None:
        _usage_error(f"fixture name required; available: {', '.join(fixture_names())}")
    fixture = FIXTURES.get(name)
    if fixture is None:
        _usage_error(f"unknown fixture {name!r}; available: {', '.join(fixture_names())}")
    text = json.dumps(fixture.build(), indent=2) + "\n"
    (out or sys.stdout).write(text)
    sys.exit(EXIT_OK)


if __name__ == "__main__":
    main()
