"""Aerial network communication and sensing simulator.

Thin wrapper over the C++ core: scenario runs return plain dicts, the
numeric kernels accept and return numpy arrays.
"""

import json as _json

from ._core import (
    ConfigError,
    DataError,
    GeometryError,
    NumericalError,
    classify_motion,
    confidence,
    crb_variance,
    estimate_doppler,
    hibs_gain,
    integrate_distance,
    median,
    mmse_zf,
    radar_sinr,
    scores,
    sinr_and_rate,
    solve_velocity,
    steering_vector,
    sus_select,
)
from . import _core

__all__ = [
    "ConfigError",
    "DataError",
    "GeometryError",
    "NumericalError",
    "classify_motion",
    "confidence",
    "crb_variance",
    "default_config",
    "estimate_doppler",
    "hibs_gain",
    "integrate_distance",
    "median",
    "mmse_zf",
    "preset_config",
    "radar_sinr",
    "run",
    "run_to_dir",
    "scores",
    "sinr_and_rate",
    "solve_velocity",
    "steering_vector",
    "sus_select",
]


def default_config():
    """Full configuration dict with every default filled in."""
    return _json.loads(_core.default_config_json())


def preset_config(name):
    """Named parameter preset (currently only "paper-v1")."""
    return _json.loads(_core.preset_config_json(name))


def run(config=None, scenario="ntn", audit=False):
    """Simulate one scenario and return the summary as a dict.

    config may be a (possibly partial) configuration dict; omitted keys fall
    back to the defaults.
    """
    text = "" if config is None else _json.dumps(config)
    return _json.loads(_core.run_simulation_json(text, scenario, audit))


def run_to_dir(out_dir, config=None, scenario="ntn", audit=False):
    """Simulate and also write the six data files into out_dir."""
    text = "" if config is None else _json.dumps(config)
    return _json.loads(_core.run_to_dir_json(text, scenario, str(out_dir), audit))
