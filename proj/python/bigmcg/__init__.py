"""Python bindings for the bigmcg proof-replay engine."""

import json

from ._bigmcg import (
    Atlas,
    Engine,
    Error,
    closure_order,
    free_reduce,
    invert,
    parse_word,
    perm,
    perm_str,
    run_script_json,
    script_ids,
)

__all__ = [
    "Atlas",
    "Engine",
    "Error",
    "closure_order",
    "free_reduce",
    "invert",
    "parse_word",
    "perm",
    "perm_str",
    "run_script",
    "script_ids",
]


def run_script(script_id, atlas):
    """Replays a built-in script and returns the report as a dict."""
    return json.loads(run_script_json(script_id, atlas))
