"""Thompson's group F as exact piecewise-linear homeomorphisms of [0, 1].

Elements are :class:`PLMap` objects with dyadic breakpoints; words in a
marking are :class:`Word` objects evaluated by :func:`evaluate`.  On top of
that sit normal forms, relator searches, witness constructions for markings
of large girth, and a harness for sequences of markings converging to limit
groups.
"""

from .constructions import (
    ConstructionError,
    PoolExhausted,
    ResourceCapExceeded,
    construct_witnesses_multi,
    construct_witnesses_single,
    girth_chain,
    girth_marking,
    partition_witnesses,
    verify_fact,
)
from .dyadic import Dyadic, format_dyadic
from .dyadic import parse as parse_dyadic
from .limits import (
    HypothesisViolation,
    MarkingFamily,
    family_power,
    family_small_support,
    family_xn,
    limit_relators,
    verify_limit_convergence,
)
from .metric import (
    certify_girth,
    distance_to_free,
    is_trivial,
    marked_distance_bound,
    relation_ball,
    shortest_relator,
    stabilization_check,
)
from .normalform import NormalForm, homeo_to_normalform, homeo_to_word, normalform_to_homeo, word_to_normalform
from .plhomeo import PLMap, compose, evaluate as evaluate_map, from_partitions, generator, identity, invert, rescale_into, support
from .words import Marking, Word, enumerate_reduced, enumerate_relator_candidates, evaluate, free_reduce, standard_marking, substitute

__version__ = "0.1.0"

__all__ = [
    "ConstructionError",
    "Dyadic",
    "HypothesisViolation",
    "Marking",
    "MarkingFamily",
    "NormalForm",
    "PLMap",
    "PoolExhausted",
    "ResourceCapExceeded",
    "Word",
    "certify_girth",
    "compose",
    "construct_witnesses_multi",
    "construct_witnesses_single",
    "distance_to_free",
    "enumerate_reduced",
    "enumerate_relator_candidates",
    "evaluate",
    "evaluate_map",
    "family_power",
    "family_small_support",
    "family_xn",
    "format_dyadic",
    "free_reduce",
    "from_partitions",
    "generator",
    "girth_chain",
    "girth_marking",
    "homeo_to_normalform",
    "homeo_to_word",
    "identity",
    "invert",
    "is_trivial",
    "limit_relators",
    "marked_distance_bound",
    "normalform_to_homeo",
    "parse_dyadic",
    "partition_witnesses",
    "relation_ball",
    "rescale_into",
    "shortest_relator",
    "stabilization_check",
    "standard_marking",
    "substitute",
    "support",
    "verify_fact",
    "verify_limit_convergence",
    "word_to_normalform",
]
