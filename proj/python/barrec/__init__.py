"""Parametrised bar recursion over partial sequences.

The C++ core does the recursion; this package drives it with Python-defined
selection functions and outcome functionals, or with the same JSON palette
configs the command-line tool accepts.  Structured reports come back as plain
dicts matching the CLI output schema.

Quick tour::

    import barrec

    # a selection function answering every challenge by probing its
    # continuation, and an outcome functional reading two positions
    def eps(m, n, p):
        return p(n + 1) % 7 + n

    def q(alpha):
        return 10 * alpha.at(0) + alpha.at(1)

    barrec.run_psi("simple", "bbc", eps, q)        # -> the recursion's answer
    barrec.solve_game(2, 2, [True, True], [0, 1, 0, 2])["solution"]
    barrec.validate_bundle("mbr1")["all_pass"]
"""

import json as _json

from ._core import (
    BoundError,
    ClosednessError,
    ConditionError,
    ConfigError,
    CycleError,
    Error,
    FuelError,
    GuardError,
    SegView,
    SeqView,
    WitnessError,
    __version__,
    pair_encode,
    pair_first,
    pair_second,
    unzigzag,
    zigzag,
)
from . import _core as _c

__all__ = [
    "Error", "ConfigError", "BoundError", "FuelError", "CycleError",
    "ConditionError", "ClosednessError", "GuardError", "WitnessError",
    "SeqView", "SegView",
    "run_psi", "run_bbc", "run_mbr1", "run_ps",
    "validate_bundle", "solve_game", "realize", "scripted_updates",
    "pair_encode", "pair_first", "pair_second", "zigzag", "unzigzag",
    "__version__",
]

_FUEL_DEFAULTS = {"max_depth": 10000, "max_dom": 1000, "max_queries": 100000}


def _spec(value):
    """Dicts/lists become JSON text for the core; names, JSON text, and
    callables pass through untouched."""
    if isinstance(value, (dict, list)):
        return _json.dumps(value)
    return value


def _caps(fuel):
    caps = dict(_FUEL_DEFAULTS)
    unknown = set(fuel) - set(caps)
    if unknown:
        raise TypeError(f"unknown fuel caps: {sorted(unknown)}")
    caps.update(fuel)
    return caps


def run_psi(form, bundle, eps, q, start=None, bound=64, **fuel):
    """Run the parametrised recursor.

    ``form`` is ``"simple"`` (``eps(m, n, p)``), ``"dep"``
    (``eps(s, r, p)`` over segment views), or ``"tilde"`` (same selection
    shape, but returns a dict describing the finished sequence as well as the
    answer).  ``eps`` and ``q`` are Python callables or palette config dicts;
    ``start`` maps indices to values of the initial partial sequence.
    """
    caps = _caps(fuel)
    return _c.run_psi(form, _spec(bundle), _spec(eps), _spec(q),
                      dict(start or {}), bound, caps["max_depth"],
                      caps["max_dom"], caps["max_queries"])


def run_bbc(eps, q, start=None, **fuel):
    """Single-point instantiation: each challenged index updates itself."""
    caps = _caps(fuel)
    return _c.run_bbc(eps, _spec(q), dict(start or {}), caps["max_depth"],
                      caps["max_dom"], caps["max_queries"])


def run_mbr1(eps, q, s=(), **fuel):
    """Append-only instantiation from the finite sequence ``s``."""
    caps = _caps(fuel)
    return _c.run_mbr1(_spec(eps), _spec(q), list(s), caps["max_depth"],
                       caps["max_dom"], caps["max_queries"])


def run_ps(eps, q, order="lt", bound=32, **fuel):
    """Product of selection functions from the empty segment; returns a dict
    with the answer, the query log, and the settled values."""
    caps = _caps(fuel)
    return _c.run_ps(_spec(eps), _spec(q), order, bound, caps["max_depth"],
                     caps["max_dom"], caps["max_queries"])


def validate_bundle(bundle, n_max=10, seed=7, bound=None):
    """Check the three side conditions of a parameter bundle on a sampled
    family of states; returns the report as a dict."""
    if bound is None:
        bound = n_max
    return _json.loads(_c._validate_json(_spec(bundle), n_max, seed, bound))


def solve_game(rounds, moves, maximise, table, read_indices=None,
               check_equations=False, **fuel):
    """Solve a finite sequential game with the product of selection functions
    and cross-check against exhaustive search; returns a dict with keys
    ``solution``, ``oracle``, ``match`` and optionally ``equations``."""
    game = {"rounds": rounds, "moves": moves, "maximise": list(maximise),
            "table": list(table)}
    if read_indices is not None:
        game["read_indices"] = list(read_indices)
    caps = _caps(fuel)
    return _json.loads(_c._solve_game_json(_json.dumps(game), check_equations,
                                           caps["max_depth"], caps["max_dom"],
                                           caps["max_queries"]))


def realize(family, bundle, q, style="witness", bound=64, **fuel):
    """Run the choice-realization harness: build the sequence from the
    family's selection function, answer ``q``, and re-check the predicate at
    every touched index.

    ``family`` is a palette config dict (``{"kind": "modular", ...}``) or a
    tuple ``(name, witness_bound, holds)`` with
    ``holds(n, prefix_dict, x) -> bool`` deciding the predicate.
    """
    fam = family if isinstance(family, tuple) else _spec(family)
    caps = _caps(fuel)
    return _json.loads(_c._realize_json(fam, _spec(bundle), _spec(q), style,
                                        bound, caps["max_depth"],
                                        caps["max_dom"], caps["max_queries"]))


def scripted_updates(bundle, script, width=5, bound=16):
    """Replay a scripted opponent ``[(index, value), ...]`` and return the
    evolving width-wide snapshots, one row per completed activation."""
    return _c.scripted_updates(_spec(bundle), [tuple(m) for m in script],
                               width, bound)
