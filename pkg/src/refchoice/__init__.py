"""Exact analysis of reference-dependent stochastic choice data.

Evaluate random-attention models forward, test the behavioral conditions
that characterize them, and reconstruct representations (preference and
attention parameters) from exactly observed choice probabilities. All
arithmetic is exact rational; nothing here touches floating point.
"""

from .axioms import (
    AXIOM_NAMES,
    Classification,
    RevealedDominance,
    check_dora,
    check_dpcra,
    check_ida,
    check_ncc,
    check_nre,
    check_regularity,
    check_rida,
    check_sqa,
    check_sqm,
    check_weak_regularity,
    classify,
    iterated_choice_delta,
    iterated_odds_delta,
    odds_against_reference,
)
from .core import (
    ChoiceDataset,
    ChoiceProblem,
    DatasetFormatError,
    LinearOrder,
    Menu,
    Status,
    Universe,
    Verdict,
    dataset_digest,
    dataset_to_json,
    dumps_dataset,
    loads_dataset,
    parse_dataset,
    subsets_between,
    validate_dataset,
)
from .extensions import (
    ConstraintPopulation,
    RandomReferenceRule,
    RdRumModel,
    StochasticChoiceRule,
    cra_to_rdrum,
    heterogeneity_to_cra,
    population_choice_prob,
    random_reference_embed,
    rdrum_choice_prob,
)
from .models import (
    AttentionModel,
    CraModel,
    GeneralAttention,
    IraModel,
    LraModel,
    ModelError,
    RefIndependentCra,
    RefIndependentIra,
    RefIndependentLra,
    attention_prob,
    choice_prob,
    model_to_json,
    parse_model,
    sample_choice,
    sample_choices,
    simulate_dataset,
)
from .oracle import (
    GeneratorConfig,
    brute_choice_prob,
    brute_rdrum_choice_prob,
    diff_datasets,
    gen_choice_rule,
    gen_model,
)
from .rationals import Rat, format_rational, parse_rational
from .recovery import (
    MobiusTable,
    RepresentationError,
    build_cra,
    build_ira,
    build_lra,
    build_rdram,
    compute_mobius_tables,
    ira_from_lra_cra,
    mobius_invert,
    reveal_preference,
    subset_sums,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
