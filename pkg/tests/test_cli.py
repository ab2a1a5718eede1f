"""Command-line surface: exit codes, reports, pipeline identity."""

import json

import pytest
from click.testing import CliRunner

from refchoice.cli import main
from refchoice.fixtures import FIXTURES, fixture_json, fixture_names
from refchoice.models import parse_model
from refchoice.core import loads_dataset, validate_dataset


@pytest.fixture
def runner():
    return CliRunner()


def _write(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(json.dumps(obj, indent=2) + "\n")
    return str(path)


def _simulated(tmp_path, runner, fixture, out="data.json"):
    model_path = _write(tmp_path, "model.json", fixture_json(fixture))
    data_path = str(tmp_path / out)
    result = runner.invoke(main, ["simulate", model_path, "--exact", "--out", data_path])
    assert result.exit_code == 0, result.output
    return data_path


class TestFixturesCommand:
    def test_list(self, runner):
        result = runner.invoke(main, ["fixtures", "--list"])
        assert result.exit_code == 0
        for name in fixture_names():
            assert name in result.output

    def test_unknown_name_exits_2(self, runner):
        result = runner.invoke(main, ["fixtures", "no-such-fixture"])
        assert result.exit_code == 2
        assert "ira-uniform" in result.output  # the list is offered

    def test_emits_parseable_model(self, runner):
        result = runner.invoke(main, ["fixtures", "ira-uniform"])
        assert result.exit_code == 0
        parse_model(json.loads(result.output))


class TestSimulateCommand:
    def test_exact_dataset_shape(self, tmp_path, runner):
        data_path = _simulated(tmp_path, runner, "ira-uniform")
        data = loads_dataset(open(data_path).read())
        assert validate_dataset(data).is_pass
        assert len(data.table) == 12  # every (menu, reference) problem on 3 alternatives

    def test_exact_is_deterministic(self, tmp_path, runner):
        a = open(_simulated(tmp_path, runner, "ira-uniform", "a.json")).read()
        b = open(_simulated(tmp_path, runner, "ira-uniform", "b.json")).read()
        assert a == b

    def test_requires_exactly_one_mode(self, tmp_path, runner):
        model_path = _write(tmp_path, "model.json", fixture_json("ira-uniform"))
        assert runner.invoke(main, ["simulate", model_path]).exit_code == 2
        assert (
            runner.invoke(
                main, ["simulate", model_path, "--exact", "--samples", "10"]
            ).exit_code
            == 2
        )

    def test_sampled_dataset_is_deterministic_and_valid(self, tmp_path, runner):
        model_path = _write(tmp_path, "model.json", fixture_json("ira-uniform"))
        args = ["simulate", model_path, "--samples", "200", "--seed", "7"]
        a = runner.invoke(main, args)
        b = runner.invoke(main, args)
        assert a.exit_code == 0 and a.output == b.output
        obj = json.loads(a.output)
        data = loads_dataset(a.output)
        assert validate_dataset(data).is_pass
        assert all("exact_choice" in p for p in obj["problems"])


class TestCheckCommand:
    def test_ira_dataset_all_pass(self, tmp_path, runner):
        data_path = _simulated(tmp_path, runner, "ira-uniform")
        result = runner.invoke(main, ["check", data_path])
        assert result.exit_code == 0, result.output
        for name in ("ncc", "sqa", "nre", "ida", "rida", "dora", "dpcra"):
            assert name in result.output

    def test_ncc_cycle_exits_1_with_witness(self, tmp_path, runner):
        data_path = _write(tmp_path, "cycle.json", fixture_json("ncc-cycle"))
        result = runner.invoke(main, ["check", data_path])
        assert result.exit_code == 1
        assert "cycle" in result.output

    def test_malformed_rational_exits_2(self, tmp_path, runner):
        obj = {
            "alternatives": ["x"],
            "complete": True,
            "problems": [{"menu": ["x"], "reference": "x", "choice": {"x": "1/0"}}],
        }
        result = runner.invoke(main, ["check", _write(tmp_path, "bad.json", obj)])
        assert result.exit_code == 2

    def test_unknown_axiom_exits_2(self, tmp_path, runner):
        data_path = _simulated(tmp_path, runner, "ira-uniform")
        assert runner.invoke(main, ["check", data_path, "--axiom", "zzz"]).exit_code == 2

    def test_sqm_fixture_fails_via_cli(self, tmp_path, runner):
        data_path = _simulated(tmp_path, runner, "sqm-violation-ira")
        result = runner.invoke(main, ["check", data_path, "--axiom", "sqm"])
        assert result.exit_code == 1
        assert "9/20" in result.output

    def test_sqm_strict_on_ref_independent_cra(self, tmp_path, runner):
        obj = {
            "kind": "ri-cra",
            "alternatives": ["x", "y", "z"],
            "preference": ["x", "y", "z"],
            "pi": [
                {"menu": ["x"], "weight": "1/7"},
                {"menu": ["y"], "weight": "1/7"},
                {"menu": ["x", "y"], "weight": "1/7"},
                {"menu": ["z"], "weight": "1/7"},
                {"menu": ["x", "z"], "weight": "1/7"},
                {"menu": ["y", "z"], "weight": "1/7"},
                {"menu": ["x", "y", "z"], "weight": "1/7"},
            ],
        }
        model_path = _write(tmp_path, "ricra.json", obj)
        data_path = str(tmp_path / "ricra-data.json")
        assert (
            runner.invoke(
                main, ["simulate", model_path, "--exact", "--out", data_path]
            ).exit_code
            == 0
        )
        result = runner.invoke(main, ["check", data_path, "--axiom", "sqm-strict"])
        assert result.exit_code == 0, result.output

    def test_json_report_deterministic(self, tmp_path, runner):
        data_path = _simulated(tmp_path, runner, "choice-overload")
        a = runner.invoke(main, ["check", data_path, "--json"])
        b = runner.invoke(main, ["check", data_path, "--json"])
        assert a.output == b.output
        report = json.loads(a.output)
        assert report["axioms"]["ida"]["status"] == "fail"

    def test_partial_dataset_needs_flag(self, tmp_path, runner):
        data_path = _simulated(tmp_path, runner, "ira-uniform")
        obj = json.loads(open(data_path).read())
        obj["complete"] = False
        obj["problems"] = obj["problems"][:-1]
        partial_path = _write(tmp_path, "partial.json", obj)
        assert runner.invoke(main, ["check", partial_path]).exit_code == 2
        result = runner.invoke(main, ["check", partial_path, "--allow-partial"])
        assert result.exit_code in (0, 1)  # may be undetermined, never usage error


class TestClassifyCommand:
    def test_overload_flags(self, tmp_path, runner):
        data_path = _simulated(tmp_path, runner, "choice-overload")
        result = runner.invoke(main, ["classify", data_path, "--json"])
        assert result.exit_code == 0
        flags = json.loads(result.output)["classification"]["flags"]
        assert flags == {"rdram": "pass", "ira": "fail", "lra": "pass", "cra": "fail"}

    def test_ira_all_pass(self, tmp_path, runner):
        data_path = _simulated(tmp_path, runner, "ira-uniform")
        result = runner.invoke(main, ["classify", data_path, "--json"])
        flags = json.loads(result.output)["classification"]["flags"]
        assert set(flags.values()) == {"pass"}

    def test_arbitrary_non_rdram_data_all_fail(self, tmp_path, runner):
        data_path = _write(tmp_path, "cycle.json", fixture_json("ncc-cycle"))
        result = runner.invoke(main, ["classify", data_path, "--json"])
        flags = json.loads(result.output)["classification"]["flags"]
        assert set(flags.values()) == {"fail"}


class TestRecoverCommand:
    def test_ira_recovery_matches_on_upper_contours(self, tmp_path, runner):
        data_path = _simulated(tmp_path, runner, "sqm-violation-ira")
        result = runner.invoke(main, ["recover", data_path, "--class", "ira"])
        assert result.exit_code == 0, result.output
        recovered = json.loads(result.stdout)
        generator = fixture_json("sqm-violation-ira")
        # x > y > z: gamma at references below the alternative is pinned
        assert recovered["gamma"]["y"]["x"] == generator["gamma"]["y"]["x"] == "9/10"
        assert recovered["gamma"]["z"]["x"] == generator["gamma"]["z"]["x"] == "1/10"
        assert recovered["gamma"]["z"]["y"] == generator["gamma"]["z"]["y"] == "1/2"

    def test_dora_failure_exits_1_with_alpha(self, tmp_path, runner):
        data_path = _write(tmp_path, "d.json", fixture_json("insufficiency-rida"))
        result = runner.invoke(main, ["recover", data_path, "--class", "lra"])
        assert result.exit_code == 1
        assert "-1/2" in result.output

    def test_audit_dump(self, tmp_path, runner):
        data_path = _simulated(tmp_path, runner, "ira-uniform")
        audit_path = str(tmp_path / "audit.json")
        result = runner.invoke(
            main,
            ["recover", data_path, "--class", "lra", "--audit", audit_path,
             "--out", str(tmp_path / "model.json")],
        )
        assert result.exit_code == 0, result.output
        audit = json.loads(open(audit_path).read())
        assert {entry["reference"] for entry in audit["references"]} == {"x", "y", "z"}
        assert any(entry["alpha"] for entry in audit["references"])


class TestPipelineIdentity:
    @pytest.mark.parametrize(
        "name", [n for n, f in FIXTURES.items() if f.recover_as is not None]
    )
    def test_simulate_recover_simulate_identical_bytes(self, tmp_path, runner, name):
        fixture = FIXTURES[name]
        first = _simulated(tmp_path, runner, name, "first.json")
        model_path = str(tmp_path / "recovered.json")
        result = runner.invoke(
            main, ["recover", first, "--class", fixture.recover_as, "--out", model_path]
        )
        assert result.exit_code == 0, result.output
        second = str(tmp_path / "second.json")
        result = runner.invoke(main, ["simulate", model_path, "--exact", "--out", second])
        assert result.exit_code == 0, result.output
        assert open(first).read() == open(second).read()

    @pytest.mark.parametrize(
        "name,cls",
        [("insufficiency-rida", "lra"), ("insufficiency-ida", "cra"),
         ("ncc-cycle", "rdram"), ("mutual-refusal", "ira")],
    )
    def test_counterexample_fixtures_refuse_recovery(self, tmp_path, runner, name, cls):
        data_path = _write(tmp_path, "d.json", fixture_json(name))
        result = runner.invoke(main, ["recover", data_path, "--class", cls])
        assert result.exit_code == 1

    def test_refusal_via_failed_round_trip(self, tmp_path, runner):
        # overload data has positive constant-attention masses but is not
        # constant-attention representable: the builder's re-simulation check
        # catches it and reports the first mismatching cell
        data_path = _simulated(tmp_path, runner, "choice-overload")
        result = runner.invoke(main, ["recover", data_path, "--class", "cra"])
        assert result.exit_code == 1
        assert "not representable" in result.output
