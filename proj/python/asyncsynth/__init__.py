"""Controller synthesis for asynchronous automata on tree architectures."""

import json

from ._core import (
    CorpusLimits,
    Plant,
    PlantError,
    ResourceLimit,
    gen_counter_plant,
    gen_fig2,
    gen_l2,
    gen_server_client,
    graph_edges,
    is_iterated_counter,
    parse_plant,
    random_corpus,
    solve,
    validate,
)
from . import _core

__all__ = [
    "CorpusLimits",
    "Plant",
    "PlantError",
    "ResourceLimit",
    "gen_counter_plant",
    "gen_fig2",
    "gen_l2",
    "gen_server_client",
    "graph_edges",
    "is_iterated_counter",
    "parse_plant",
    "random_corpus",
    "reduce",
    "solve",
    "synthesize",
    "validate",
    "verify",
]


def synthesize(plant, state_limit=1_000_000, all_b=False, minimize=True):
    """Returns (report dict, controller text or None)."""
    report, controller = _core._synthesize(plant, state_limit, all_b, minimize)
    return json.loads(report), (controller or None)


def verify(plant, controller_text):
    """Verdict of a controller document against a plant, as a dict."""
    return json.loads(_core._verify(plant, controller_text))


def reduce(plant, leaf, parent, all_b=False):
    """Eliminates one leaf; returns (reduced plant, sidecar dict)."""
    reduced, sidecar = _core._reduce(plant, leaf, parent, all_b)
    return reduced, json.loads(sidecar)
