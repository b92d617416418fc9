#!/usr/bin/env python

#: Dense id of a ball vertex, assigned in shortlex order. A simple type alias
#: for :py:class:`int`
VertexId = int

#: Id of an automaton state. A simple type alias for :py:class:`int`
StateId = int

from .errors import (GrowthError, InputError, NonReducingRuleError,
                     ConfigError, ResourceError, ParameterError, SeriesError,
                     OracleMismatch, InvariantError)
from .alphabet import Alphabet, Word, invert_word, shortlex_compare
from .rewriting import (RewritingSystem, Incomplete, check_confluence,
                        complete, normalize)
from .ball import Ball, build_ball
from .subgroup import SubgroupOracle, Membership, FiniteSubgraph, load_subgraph
from .fellow import ProjectionMode, check_fftp, check_projections
from .dfa import DFA, export_dfa, load_dfa
from .automaton import (FftpAutomaton, TypeState, StateSemantics,
                        build_automaton,
                        accepting_states, cone_type_quotient,
                        intersect_language)
from .transversal import shortlex_transversal_acceptor
from .series import RationalSeries, GrowthRate, growth_rate, \
    series_from_sequence, common_denominator
from .growth import (CountKind, SeriesKind, transition_matrices,
                     sphere_or_ball_series, geodesic_series,
                     coset_growth_series, embedding_series,
                     brute_force_counts)
from .config import JobConfig, Params, parse_config
from .report import RunReport
from .cli import run

__all__ = [
    "VertexId", "StateId",
    "GrowthError", "InputError", "NonReducingRuleError", "ConfigError",
    "ResourceError", "ParameterError", "SeriesError", "OracleMismatch",
    "InvariantError",
    "Alphabet", "Word", "invert_word", "shortlex_compare",
    "RewritingSystem", "Incomplete", "check_confluence", "complete",
    "normalize",
    "Ball", "build_ball",
    "SubgroupOracle", "Membership", "FiniteSubgraph", "load_subgraph",
    "ProjectionMode", "check_fftp", "check_projections",
    "DFA", "export_dfa", "load_dfa",
    "FftpAutomaton", "TypeState", "StateSemantics", "build_automaton",
    "accepting_states",
    "cone_type_quotient", "intersect_language",
    "shortlex_transversal_acceptor",
    "RationalSeries", "GrowthRate", "growth_rate", "series_from_sequence",
    "common_denominator",
    "CountKind", "SeriesKind", "transition_matrices", "sphere_or_ball_series",
    "geodesic_series", "coset_growth_series", "embedding_series",
    "brute_force_counts",
    "JobConfig", "Params", "parse_config",
    "RunReport", "run",
]
