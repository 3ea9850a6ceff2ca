"""Python front end: every function takes a problem (dict, JSON text or path) and returns a dict."""

import json
import os

from . import _core
from ._core import Error, SchemaError

__all__ = [
    "Error",
    "SchemaError",
    "kernel",
    "kappa",
    "det_bound",
    "continuity",
    "gap",
    "liouville",
    "ore",
    "normalize",
]


def _text(problem):
    if isinstance(problem, dict):
        return json.dumps(problem)
    if isinstance(problem, os.PathLike) or (isinstance(problem, str) and not problem.lstrip().startswith("{")):
        with open(problem, encoding="utf-8") as f:
            return f.read()
    return problem


def kernel(problem, jobs=0, timing=False):
    return json.loads(_core.kernel(_text(problem), jobs, timing))


def kappa(problem, laplacian=False):
    return json.loads(_core.kappa(_text(problem), laplacian))


def det_bound(problem, jobs=0):
    return json.loads(_core.det_bound(_text(problem), jobs))


def continuity(problem, jobs=0):
    return json.loads(_core.continuity(_text(problem), jobs))


def gap(problem, jobs=0):
    return json.loads(_core.gap(_text(problem), jobs))


def liouville(problem):
    return json.loads(_core.liouville(_text(problem)))


def ore(problem):
    return json.loads(_core.ore(_text(problem)))


def normalize(problem):
    """Parsed and re-serialized problem; a fixed point of itself."""
    return json.loads(_core.normalize(_text(problem)))
