"""Recovery: Möbius inversion, preference revelation, the four builders."""

import pytest
from hypothesis import given, settings, strategies as st

from refchoice import (
    ChoiceDataset,
    GeneratorConfig,
    LinearOrder,
    RepresentationError,
    Universe,
    attention_prob,
    build_cra,
    build_ira,
    build_lra,
    build_rdram,
    compute_mobius_tables,
    diff_datasets,
    gen_model,
    ira_from_lra_cra,
    mobius_invert,
    parse_dataset,
    parse_model,
    reveal_preference,
    simulate_dataset,
    subset_sums,
)
from refchoice.core import bit, subsets_between
from refchoice.fixtures import fixture_json
from refchoice.models import GeneralAttention
from refchoice.rationals import ONE, ZERO, Rat

from conftest import XYZ, XZ, YZ, Z


class TestMobiusInversion:
    def test_counting_identity(self):
        # g identically 1 on subsets of a 2-set gives f(A) = 2^{|A|}
        interval = subsets_between(0, 3)
        g = {a: Rat(1) for a in interval}
        f = subset_sums(g, 0, 3)
        assert all(f[a] == Rat(1 << a.bit_count()) for a in interval)
        assert mobius_invert(f, 0, 3) == g

    def test_constant_f_concentrates_on_anchor(self):
        f = {a: Rat(7, 3) for a in subsets_between(Z, XYZ)}
        g = mobius_invert(f, Z, XYZ)
        assert g[Z] == Rat(7, 3)
        assert all(g[a] == ZERO for a in subsets_between(Z, XYZ) if a != Z)

    def test_reciprocal_probabilities_match_double_loop(self, ira_half):
        data = simulate_dataset(ira_half)
        f = {d: ONE / data.prob(d, 2, 2) for d in subsets_between(Z, XYZ)}
        g = mobius_invert(f, Z, XYZ)
        for a in subsets_between(Z, XYZ):
            oracle = ZERO
            for b in subsets_between(Z, a):
                sign = 1 if ((a & ~b).bit_count() % 2 == 0) else -1
                oracle += f[b] if sign > 0 else -f[b]
            assert g[a] == oracle

    def test_missing_interval_entry_raises(self):
        with pytest.raises(KeyError):
            mobius_invert({Z: ONE}, Z, XZ)

    @given(st.integers(0, 10**6))
    @settings(max_examples=50, deadline=None)
    def test_involution(self, seed):
        import random

        rng = random.Random(seed)
        lo = rng.randrange(0, 8)
        hi = lo | rng.randrange(0, 16)
        g = {a: Rat(rng.randint(-5, 5), rng.randint(1, 7)) for a in subsets_between(lo, hi)}
        assert mobius_invert(subset_sums(g, lo, hi), lo, hi) == g
        assert subset_sums(mobius_invert(g, lo, hi), lo, hi) == g


class TestRevealPreference:
    def test_positive_binary_choice_reveals_order(self):
        uni = Universe(("x", "y"))
        rows = [
            (1, 0, {0: Rat(1)}),
            (2, 1, {1: Rat(1)}),
            (3, 0, {0: Rat(1), 1: Rat(0)}),
            (3, 1, {0: Rat(3, 4), 1: Rat(1, 4)}),
        ]
        data = ChoiceDataset.from_rows(uni, rows)
        assert reveal_preference(data).ranking == (0, 1)

    def test_round_trip_on_models(self, ira_half):
        assert reveal_preference(simulate_dataset(ira_half)).ranking == (0, 1, 2)
        for kind in ("ira", "lra", "cra", "general", "ri-ira", "ri-lra", "ri-cra"):
            model = gen_model(GeneratorConfig(4, kind, 17))
            data = simulate_dataset(model)
            assert reveal_preference(data).ranking == model.preference.ranking

    def test_mutual_zero_binary_cites_sqa(self):
        data = parse_dataset(fixture_json("mutual-refusal"))
        with pytest.raises(RepresentationError) as exc:
            reveal_preference(data)
        assert exc.value.axiom == "sqa"

    def test_two_cycle_cites_ncc(self):
        data = parse_dataset(fixture_json("ncc-cycle"))
        with pytest.raises(RepresentationError) as exc:
            reveal_preference(data)
        assert exc.value.axiom == "ncc"


class TestBuildRdram:
    def test_binary_interval_split(self):
        uni = Universe(("x", "z"))
        rows = [
            (1, 0, {0: Rat(1)}),
            (2, 1, {1: Rat(1)}),
            (3, 0, {0: Rat(1), 1: Rat(0)}),
            (3, 1, {0: Rat(1, 2), 1: Rat(1, 2)}),
        ]
        data = ChoiceDataset.from_rows(uni, rows)
        model = build_rdram(data)
        assert model.mu[(1, 3)][3] == Rat(1, 2)  # consider both, choose x
        assert model.mu[(1, 3)][2] == Rat(1, 2)  # consider z alone
        assert model.full_support

    def test_singleton_interval_assignment(self, ira_half):
        data = simulate_dataset(ira_half)
        model = build_rdram(data)
        # {y,z} is the only set between {y,z} and D_y ∩ X, so it takes all of p_z(y,X)
        assert model.mu[(2, XYZ)][YZ] == data.prob(XYZ, 2, 1) == Rat(1, 4)

    def test_round_trip_on_general_models(self):
        for seed in range(4):
            model = gen_model(GeneratorConfig(4, "general", seed))
            data = simulate_dataset(model)
            rebuilt = build_rdram(data)
            assert diff_datasets(simulate_dataset(rebuilt), data) == []
            assert rebuilt.full_support

    def test_rejects_axiom_violating_data(self):
        with pytest.raises(RepresentationError):
            build_rdram(parse_dataset(fixture_json("ncc-cycle")))


class TestBuildIra:
    def test_gamma_from_binary_pair(self):
        uni = Universe(("x", "z"))
        rows = [
            (1, 0, {0: Rat(1)}),
            (2, 1, {1: Rat(1)}),
            (3, 0, {0: Rat(1), 1: Rat(0)}),
            (3, 1, {0: Rat(1, 2), 1: Rat(1, 2)}),
        ]
        model = build_ira(ChoiceDataset.from_rows(uni, rows))
        assert model.gamma[(1, 0)] == Rat(1, 2)
        assert model.rate(1, 1) == Rat(1)

    def test_round_trip_and_upper_contour_uniqueness(self):
        for seed in range(8):
            generator = gen_model(GeneratorConfig(4, "ira", seed))
            data = simulate_dataset(generator)
            rebuilt = build_ira(data)
            assert diff_datasets(simulate_dataset(rebuilt), data) == []
            assert rebuilt.preference.ranking == generator.preference.ranking
            for r in range(4):
                for x in range(4):
                    if x != r and generator.preference.prefers(x, r):
                        assert rebuilt.gamma[(r, x)] == generator.gamma[(r, x)]

    def test_rejects_non_ira_data(self):
        data = simulate_dataset(parse_model(fixture_json("ida-violation-lra")))
        with pytest.raises(RepresentationError):
            build_ira(data)


class TestBuildLra:
    def test_binary_weights(self):
        uni = Universe(("x", "z"))
        rows = [
            (1, 0, {0: Rat(1)}),
            (2, 1, {1: Rat(1)}),
            (3, 0, {0: Rat(1), 1: Rat(0)}),
            (3, 1, {0: Rat(1, 2), 1: Rat(1, 2)}),
        ]
        data = ChoiceDataset.from_rows(uni, rows)
        tables = compute_mobius_tables(data)
        assert tables[1].lra_lambda == {2: Rat(1), 3: Rat(1)}
        model = build_lra(data)
        assert model.pi[(1, 2)] == model.pi[(1, 3)] == Rat(1, 2)
        # x is best everywhere, so its weights are a free choice: uniform
        assert model.pi[(0, 1)] == model.pi[(0, 3)] == Rat(1, 2)

    def test_overload_fixture_round_trips(self):
        data = simulate_dataset(parse_model(fixture_json("choice-overload")))
        model = build_lra(data)
        assert diff_datasets(simulate_dataset(model), data) == []

    def test_round_trip_on_generated_models(self):
        for seed in range(8):
            data = simulate_dataset(gen_model(GeneratorConfig(4, "lra", 60 + seed)))
            model = build_lra(data)
            assert diff_datasets(simulate_dataset(model), data) == []

    def test_dora_failure_carries_alpha_witness(self):
        data = parse_dataset(fixture_json("insufficiency-rida"))
        with pytest.raises(RepresentationError) as exc:
            build_lra(data)
        assert exc.value.axiom == "dora"
        assert exc.value.witness["alpha"] == "-1/2"

    def test_interval_identity(self):
        # p_r(r, S) equals the anchor block weight over the interval total
        from refchoice.axioms import RevealedDominance

        data = simulate_dataset(gen_model(GeneratorConfig(4, "lra", 3)))
        rd = RevealedDominance.from_dataset(data)
        tables = compute_mobius_tables(data)
        for r, table in tables.items():
            assert table.failure is None
            if rd.dominators[r] == 0:
                continue  # r is best: p_r(r, .) = 1 and the identity is trivial
            for menu, ref in data.problems():
                if ref != r:
                    continue
                anchor = menu & ~rd.dominators[r]
                block = table.lambda_interval
                total = sum(
                    (block[(anchor, d)] for d in subsets_between(anchor, menu)), ZERO
                )
                assert data.prob(menu, r, r) == block[(anchor, anchor)] / total


class TestBuildCra:
    def test_binary_masses(self):
        uni = Universe(("x", "z"))
        rows = [
            (1, 0, {0: Rat(1)}),
            (2, 1, {1: Rat(1)}),
            (3, 0, {0: Rat(1), 1: Rat(0)}),
            (3, 1, {0: Rat(1, 2), 1: Rat(1, 2)}),
        ]
        data = ChoiceDataset.from_rows(uni, rows)
        tables = compute_mobius_tables(data)
        assert tables[1].cra_lambda == {2: Rat(1, 2), 3: Rat(1, 2)}
        model = build_cra(data)
        assert model.pi_prime[(1, 2)] == model.pi_prime[(1, 3)] == Rat(1, 2)

    def test_masses_sum_to_one(self):
        data = simulate_dataset(gen_model(GeneratorConfig(4, "cra", 9)))
        tables = compute_mobius_tables(data)
        for table in tables.values():
            assert sum(table.cra_lambda.values(), ZERO) == ONE

    def test_reference_prob_interval_identity(self):
        data = simulate_dataset(gen_model(GeneratorConfig(4, "cra", 10)))
        tables = compute_mobius_tables(data)
        full = data.universe.full_mask
        for r, table in tables.items():
            region = min(table.cra_lambda)  # the dominant region is the interval bottom
            for menu, ref in data.problems():
                if ref != r or region & ~menu:
                    continue
                expected = sum(
                    (table.cra_lambda[d] for d in subsets_between(region, (full & ~menu) | region)),
                    ZERO,
                )
                assert data.prob(menu, r, r) == expected

    def test_round_trip_on_generated_models(self):
        for seed in range(8):
            data = simulate_dataset(gen_model(GeneratorConfig(4, "cra", 80 + seed)))
            model = build_cra(data)
            assert diff_datasets(simulate_dataset(model), data) == []
            assert model.full_support

    def test_fixture_round_trips_regardless_of_weight_identification(self):
        # only interval masses are pinned by the data; the recovered weights
        # reproduce every choice probability but need not equal the
        # generator's (they happen to here because z is the worst
        # alternative, where weights are uniquely identified)
        generator = parse_model(fixture_json("rida-violation-cra"))
        data = simulate_dataset(generator)
        model = build_cra(data)
        assert diff_datasets(simulate_dataset(model), data) == []

    def test_recovered_weights_can_differ_from_generator(self):
        generator = gen_model(GeneratorConfig(4, "cra", 81))
        data = simulate_dataset(generator)
        model = build_cra(data)
        assert diff_datasets(simulate_dataset(model), data) == []
        assert model.pi_prime != generator.pi_prime

    def test_dpcra_failure_carries_lambda_witness(self):
        data = parse_dataset(fixture_json("insufficiency-ida"))
        with pytest.raises(RepresentationError) as exc:
            build_cra(data)
        assert exc.value.axiom == "dpcra"
        assert exc.value.witness["lambda"] == "-1/10"


class TestIraFromLraCra:
    def test_uniform_weights_are_product_form(self, xyz, pref_xyz):
        pi = {}
        for r in range(3):
            for menu in subsets_between(bit(r), XYZ):
                pi[(r, menu)] = Rat(1, 4)
        from refchoice.models import LraModel

        lra = LraModel(xyz, pref_xyz, pi)
        mu = {
            (r, menu): {
                d: attention_prob(lra, r, d, menu) for d in subsets_between(bit(r), menu)
            }
            for menu, r in xyz.problems()
        }
        model = ira_from_lra_cra(GeneralAttention(xyz, pref_xyz, mu))
        assert all(model.gamma[(r, x)] == Rat(1, 2) for r in range(3) for x in range(3) if x != r)

    def test_recovers_generator_exactly(self):
        for seed in range(5):
            generator = gen_model(GeneratorConfig(4, "ira", 30 + seed))
            uni = generator.universe
            mu = {
                (r, menu): {
                    d: attention_prob(generator, r, d, menu)
                    for d in subsets_between(bit(r), menu)
                }
                for menu, r in uni.problems()
            }
            rebuilt = ira_from_lra_cra(GeneralAttention(uni, generator.preference, mu))
            assert rebuilt.gamma == generator.gamma

    def test_binary_universe_trivial(self):
        uni = Universe(("x", "z"))
        pref = LinearOrder((0, 1))
        mu = {
            (0, 1): {1: Rat(1)},
            (1, 2): {2: Rat(1)},
            (0, 3): {1: Rat(1, 3), 3: Rat(2, 3)},
            (1, 3): {2: Rat(1, 3), 3: Rat(2, 3)},
        }
        model = ira_from_lra_cra(GeneralAttention(uni, pref, mu))
        assert model.gamma[(1, 0)] == Rat(2, 3)

    def test_rejects_menu_dependent_marginals(self):
        lra = parse_model(fixture_json("choice-overload"))
        mu = {
            (r, menu): {
                d: attention_prob(lra, r, d, menu)
                for d in subsets_between(bit(r), menu)
            }
            for menu, r in lra.universe.problems()
        }
        with pytest.raises(RepresentationError) as exc:
            ira_from_lra_cra(GeneralAttention(lra.universe, lra.preference, mu))
        assert exc.value.axiom == "constant-marginals"

    def test_rejects_menu_dependent_ratios(self):
        cra = parse_model(fixture_json("rida-violation-cra"))
        mu = {
            (r, menu): {
                d: p
                for d in subsets_between(bit(r), menu)
                if (p := attention_prob(cra, r, d, menu)) > 0
            }
            for menu, r in cra.universe.problems()
        }
        with pytest.raises(RepresentationError) as exc:
            ira_from_lra_cra(GeneralAttention(cra.universe, cra.preference, mu))
        assert exc.value.axiom == "consideration-iia"


class TestIntersectionConsistency:
    def test_lra_and_cra_buildable_implies_ira_buildable(self):
        for seed in range(6):
            data = simulate_dataset(gen_model(GeneratorConfig(3, "ira", 90 + seed)))
            build_lra(data)
            build_cra(data)
            build_ira(data)  # must not raise


class TestAuditJson:
    def test_table_dump_structure(self, ira_half):
        data = simulate_dataset(ira_half)
        tables = compute_mobius_tables(data)
        obj = tables[2].to_json(data.universe)
        assert obj["reference"] == "z"
        assert {"menu": ["z"], "value": "1"} in obj["lambda"]
        assert obj["failure"] is None
        assert all(len(e["menu"]) >= 1 for e in obj["cra_lambda"])

    def test_failure_recorded_for_dora_violating_data(self):
        data = parse_dataset(fixture_json("insufficiency-rida"))
        tables = compute_mobius_tables(data)
        assert tables[2].failure is not None
        assert tables[2].cra_lambda  # constant-attention masses still recorded
