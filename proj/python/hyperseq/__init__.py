"""Relational hypersequent calculi for modal logic: checking, search,
translation and countermodels. Structured results are plain dicts in the
same JSON format the command-line tool uses."""

import json

from . import _core
from ._core import (
    FormatError,
    ParseError,
    TransformError,
    closure_size,
    goal_names,
    modal_depth,
    parse_formula,
    parse_hypersequent,
    ps4_countermodel,
    translate,
)

__all__ = [
    "FormatError",
    "ParseError",
    "TransformError",
    "bounded_validity",
    "check",
    "closure_size",
    "decide",
    "goal_names",
    "hypersequent_json",
    "modal_depth",
    "parse_formula",
    "parse_hypersequent",
    "ps4_countermodel",
    "replicate",
    "search",
    "translate",
]


def hypersequent_json(text):
    return json.loads(_core.hypersequent_json(text))


def search(goal, system, max_nodes=0):
    """Cut-free backwards search; status is proof, unprovable-exhausted or
    unknown-limit-hit."""
    return json.loads(_core.search(goal, system, max_nodes))


def check(derivation, system):
    """Returns (ok, reason). derivation is a dict or JSON text."""
    if not isinstance(derivation, str):
        derivation = json.dumps(derivation)
    return _core.check(derivation, system)


def decide(goal, system="RS4Cut"):
    return json.loads(_core.decide(goal, system))


def bounded_validity(goal, frame_class, bound):
    return json.loads(_core.bounded_validity(goal, frame_class, bound))


def replicate(only=()):
    return json.loads(_core.replicate(list(only)))
