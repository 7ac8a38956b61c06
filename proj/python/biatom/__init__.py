"""Python bindings for the biatom C++ core."""

import json

from ._biatom import (
    InvalidInput,
    NumericalFailure,
    amplitude,
    g_integral,
    measures,
    small_cavity_floor,
)
from . import _biatom


def _encode(config):
    return config if isinstance(config, str) else json.dumps(config or {})


def evolve(config=None):
    """Columns t, re_f, im_f, abs_f_sq, impurity, concurrence, negativity."""
    return _biatom.evolve(_encode(config))


def evolve_csv(config=None):
    return _biatom.evolve_csv(_encode(config))


def check_csv(text):
    return _biatom.check_csv(text)


def oracle_report(config=None):
    return json.loads(_biatom.oracle_report(_encode(config)))


__all__ = [
    "InvalidInput",
    "NumericalFailure",
    "amplitude",
    "check_csv",
    "evolve",
    "evolve_csv",
    "g_integral",
    "measures",
    "oracle_report",
    "small_cavity_floor",
]
