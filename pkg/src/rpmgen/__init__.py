"""Procedural generator, annotator and symbolic solver for Raven-style matrix puzzles."""

from rpmgen.answers import ForgeFailureError, Problem, build_answer_set, verify_unique
from rpmgen.attributes import Attribute, AttributeDomain
from rpmgen.dataset import (
    DatasetCorruptionError,
    read_dataset,
    read_manifest,
    read_record,
    write_dataset,
)
from rpmgen.generate import (
    GenerationError,
    derive_seed,
    generate_dataset,
    generate_familiarization_set,
    generate_problem,
)
from rpmgen.grammar import (
    CONFIG_ORDER,
    CONFIGURATIONS,
    ComponentState,
    ConfigName,
    EntityState,
    FigureConfiguration,
    PanelState,
)
from rpmgen.matrix import MatrixDraft, generate_matrix, sample_rule_groups
from rpmgen.render import PanelImage, png_bytes, render_panel, render_sheet
from rpmgen.rules import RuleGroup, RuleSpec, RuleType
from rpmgen.serialization import (
    TreeParseError,
    parse_tree,
    problem_from_record,
    problem_to_record,
    rule_target_vector,
    serialize_tree,
    struct_target_vector,
    vocabulary,
)
from rpmgen.solver import AmbiguityError, ScoringError, SolveResult, solve

__version__ = "1.0.0"

__all__ = [
    "AmbiguityError",
    "Attribute",
    "AttributeDomain",
    "CONFIGURATIONS",
    "CONFIG_ORDER",
    "ComponentState",
    "ConfigName",
    "DatasetCorruptionError",
    "EntityState",
    "FigureConfiguration",
    "ForgeFailureError",
    "GenerationError",
    "MatrixDraft",
    "PanelImage",
    "PanelState",
    "Problem",
    "RuleGroup",
    "RuleSpec",
    "RuleType",
    "ScoringError",
    "SolveResult",
    "TreeParseError",
    "build_answer_set",
    "derive_seed",
    "generate_dataset",
    "generate_familiarization_set",
    "generate_matrix",
    "generate_problem",
    "parse_tree",
    "png_bytes",
    "problem_from_record",
    "problem_to_record",
    "read_dataset",
    "read_manifest",
    "read_record",
    "render_panel",
    "render_sheet",
    "rule_target_vector",
    "sample_rule_groups",
    "serialize_tree",
    "solve",
    "struct_target_vector",
    "verify_unique",
    "vocabulary",
    "write_dataset",
]
