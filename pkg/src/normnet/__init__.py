"""Norm nets and exact norm-system selection.

Typical use::

    from normnet import datasets, ProblemConfig, solve

    net = datasets.airport()
    report = solve(net, ProblemConfig("mnsp", "inclusion"))
    report.optima  # (frozenset({'n3'}),)
"""

__version__ = "0.1.0"

from .errors import NormNetError, ValidationError
from .generate import GeneratorParams, SplitMix64, generate_random_net
from .ilp import IlpModel, ProblemConfig, encode_problem, export_lp, parse_lp
from .io import load_norm_net, parse_norm_net, serialize_norm_net
from .net import (
    Modality,
    Norm,
    NormNet,
    NormSystem,
    RelationSet,
    SoundnessReport,
    ancestors,
    build_norm_net,
    exists_sound_nonempty,
    extend_with_in_force,
    ilp_feasible,
    soundness_report,
    substitution_closure,
)
from .representation import (
    RepresentationAssignment,
    generalisation_power,
    inclusion_power,
    max_representation,
    system_power,
    validate_representation,
)
from .solve import SolveOptions, SolveReport, brute_force_oracle, solve, solve_branch_and_bound
from .sweep import sweep
from .values import max_value_support, norm_value_support, system_value_support, value_utilities

from . import datasets  # noqa: E402  (needs io)


__all__ = [
    "ancestors",
    "brute_force_oracle",
    "build_norm_net",
    "datasets",
    "encode_problem",
    "exists_sound_nonempty",
    "export_lp",
    "extend_with_in_force",
    "generalisation_power",
    "generate_random_net",
    "GeneratorParams",
    "ilp_feasible",
    "IlpModel",
    "inclusion_power",
    "load_norm_net",
    "max_representation",
    "max_value_support",
    "Modality",
    "Norm",
    "norm_value_support",
    "NormNet",
    "NormNetError",
    "NormSystem",
    "parse_lp",
    "parse_norm_net",
    "ProblemConfig",
    "RelationSet",
    "RepresentationAssignment",
    "serialize_norm_net",
    "solve",
    "solve_branch_and_bound",
    "SolveOptions",
    "SolveReport",
    "soundness_report",
    "SoundnessReport",
    "SplitMix64",
    "substitution_closure",
    "sweep",
    "system_power",
    "system_value_support",
    "validate_representation",
    "ValidationError",
    "value_utilities",
]
