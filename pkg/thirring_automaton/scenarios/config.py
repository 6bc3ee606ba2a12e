"""Scenario files: versioned JSON with strict key checking.

Example::

    {
      "schema_version": 1,
      "name": "soliton",
      "n_x": 40,
      "n_half_steps": 39,
      "initial": {"kind": "vacuum", "vacuum": "half_A_green",
                  "insertions": [{"site": 20, "color": "R", "kind": "particle"}]},
      "observables": ["right_movers", "left_movers"],
      "outputs": {"ascii": "soliton.txt", "metadata": "soliton.json"}
    }
"""
from __future__ import absolute_import

import copy
import json
from collections import namedtuple

import numpy as np

from ..automaton import MODELS, LayerConfig
from ..exceptions import ConfigurationError
from ..lattice import PARITIES, check_n_x
from ..observables import get_observable, site_index
from .vacua import VACUA, Insertion, apply_insertions, vacuum_layer

SCHEMA_VERSION = 1

_TOP_LEVEL = {
    "schema_version": int,
    "name": str,
    "n_x": int,
    "n_half_steps": int,
    "start_parity": str,
    "model": str,
    "initial": dict,
    "observables": list,
    "outputs": dict,
    "seed": int,
    "n_samples": int,
}
_INITIAL = {
    "sharp": {"kind": str, "n_R": list, "n_I": list},
    "distribution": {"kind": str, "site_probabilities": list},
    "vacuum": {"kind": str, "vacuum": str, "phase": int, "insertions": list},
}
_INSERTION = {"site": int, "color": str, "kind": str}
_NULLABLE = ("seed", "n_samples")
OUTPUT_KEYS = ("trajectory_csv", "observables_csv", "ascii", "ppm", "metadata")


ScenarioConfig = namedtuple(
    "ScenarioConfig",
    [
        "name",
        "n_x",
        "n_half_steps",
        "start_parity",
        "model",
        "initial",
        "observables",
        "outputs",
        "seed",
        "n_samples",
    ],
)


def _check_keys(section, allowed, where):
    for key, value in section.items():
        if key not in allowed:
            raise ConfigurationError("unknown key {!r} in {}".format(key, where))
        if value is None and key in _NULLABLE:
            continue
        expected = allowed[key]
        is_bool = isinstance(value, bool)
        if is_bool or not isinstance(value, expected):
            raise ConfigurationError(
                "key {!r} in {} must be of type {}, got {!r}".format(
                    key, where, expected.__name__, value
                )
            )


def _require(section, key, where):
    if key not in section:
        raise ConfigurationError("missing key {!r} in {}".format(key, where))
    return section[key]


def _validate_initial(initial, n_x):
    kind = _require(initial, "kind", "initial")
    if kind not in _INITIAL:
        raise ConfigurationError(
            "initial kind must be one of {}, got {!r}".format(sorted(_INITIAL), kind)
        )
    _check_keys(initial, _INITIAL[kind], "initial")

    if kind == "sharp":
        for key in ("n_R", "n_I"):
            values = _require(initial, key, "initial")
            if len(values) != n_x or any(v not in (0, 1) for v in values):
                raise ConfigurationError(
                    "initial {} must list {} values of 0 or 1".format(key, n_x)
                )
    elif kind == "distribution":
        rows = _require(initial, "site_probabilities", "initial")
        try:
            array = np.asarray(rows, dtype=np.float64)
        except (TypeError, ValueError):
            array = None
        if array is None or array.shape != (n_x, 4):
            raise ConfigurationError(
                "site_probabilities must have {} rows of 4 values".format(n_x)
            )
    else:
        name = _require(initial, "vacuum", "initial")
        if name not in VACUA:
            raise ConfigurationError(
                "unknown vacuum {!r}, expected one of {}".format(name, VACUA)
            )
        for k, insertion in enumerate(initial.get("insertions", [])):
            if not isinstance(insertion, dict):
                raise ConfigurationError("insertion {} must be an object".format(k))
            _check_keys(insertion, _INSERTION, "insertion {}".format(k))
            for key in _INSERTION:
                _require(insertion, key, "insertion {}".format(k))


def config_from_dict(data):
    """Validate a parsed scenario and fill in defaults.

    Raises
    ------
    ConfigurationError naming the offending key.
    """
    if not isinstance(data, dict):
        raise ConfigurationError("a scenario must be a JSON object")
    _check_keys(data, _TOP_LEVEL, "scenario")
    version = data.get("schema_version")
    if version != SCHEMA_VERSION:
        raise ConfigurationError(
            "schema_version must be {}, got {!r}".format(SCHEMA_VERSION, version)
        )
    n_x = _require(data, "n_x", "scenario")
    try:
        check_n_x(n_x)
    except ValueError as error:
        raise ConfigurationError("n_x: {}".format(error))

    n_half_steps = data.get("n_half_steps", 10)
    if n_half_steps < 0:
        raise ConfigurationError("n_half_steps must be non-negative")
    start_parity = data.get("start_parity", "even")
    if start_parity not in PARITIES:
        raise ConfigurationError("start_parity must be one of {}".format(PARITIES))
    model = data.get("model", "interacting")
    if model not in MODELS:
        raise ConfigurationError("model must be one of {}".format(MODELS))

    initial = copy.deepcopy(_require(data, "initial", "scenario"))
    _validate_initial(initial, n_x)

    observables = list(data.get("observables", ["particle_count"]))
    for name in observables:
        if not isinstance(name, str):
            raise ConfigurationError("observable names must be strings")
        try:
            get_observable(name)
        except ValueError as error:
            raise ConfigurationError("observables: {}".format(error))
        site = site_index(name)
        if site is not None and site >= n_x:
            raise ConfigurationError(
                "observables: site index {} in {!r} out of range for n_x={}".format(
                    site, name, n_x
                )
            )

    outputs = dict(data.get("outputs", {}))
    for key, value in outputs.items():
        if key not in OUTPUT_KEYS:
            raise ConfigurationError("unknown key {!r} in outputs".format(key))
        if not isinstance(value, str):
            raise ConfigurationError("output {!r} must be a file name".format(key))

    n_samples = data.get("n_samples")
    if n_samples is not None and n_samples < 1:
        raise ConfigurationError("n_samples must be positive")

    return ScenarioConfig(
        name=data.get("name", "scenario"),
        n_x=n_x,
        n_half_steps=n_half_steps,
        start_parity=start_parity,
        model=model,
        initial=initial,
        observables=observables,
        outputs=outputs,
        seed=data.get("seed"),
        n_samples=n_samples,
    )


def load_config(path):
    with open(path) as fileobj:
        try:
            data = json.load(fileobj)
        except ValueError as error:
            raise ConfigurationError("{}: invalid JSON ({})".format(path, error))
    return config_from_dict(data)


def build_initial(config):
    """LayerConfig for sharp and vacuum scenarios, an (n_x, 4) array of site
    probabilities for distribution scenarios."""
    initial = config.initial
    kind = initial["kind"]
    if kind == "sharp":
        return LayerConfig.from_occupations(initial["n_R"], initial["n_I"])
    if kind == "distribution":
        return np.asarray(initial["site_probabilities"], dtype=np.float64)
    layer = vacuum_layer(initial["vacuum"], config.n_x, initial.get("phase", 0))
    insertions = [
        Insertion(item["site"], item["color"], item["kind"])
        for item in initial.get("insertions", [])
    ]
    return apply_insertions(layer, insertions)


def _sharp(n_x, red=(), green=()):
    n_r = [1 if x in red else 0 for x in range(n_x)]
    n_i = [1 if x in green else 0 for x in range(n_x)]
    return {"kind": "sharp", "n_R": n_r, "n_I": n_i}


def _vacuum(name, insertions):
    return {
        "kind": "vacuum",
        "vacuum": name,
        "insertions": [
            {"site": site, "color": color, "kind": kind} for site, color, kind in insertions
        ],
    }


# right movers start on even sites, left movers on odd sites
BUILTIN_SCENARIOS = {
    "scattering": {
        "schema_version": 1,
        "name": "scattering",
        "n_x": 24,
        "n_half_steps": 24,
        "model": "free",
        "initial": _sharp(24, red=(2, 6, 13, 19)),
        "observables": ["particle_count", "right_movers", "left_movers"],
    },
    "color_scattering": {
        "schema_version": 1,
        "name": "color_scattering",
        "n_x": 24,
        "n_half_steps": 24,
        "initial": _sharp(24, red=(2, 8, 15), green=(4, 13, 21)),
        "observables": ["red_count", "green_count", "right_movers", "left_movers"],
    },
    "soliton": {
        "schema_version": 1,
        "name": "soliton",
        "n_x": 40,
        "n_half_steps": 39,
        "initial": _vacuum("half_A_green", [(20, "R", "particle")]),
        "observables": ["particle_count", "right_movers", "left_movers"],
    },
    "hole": {
        "schema_version": 1,
        "name": "hole",
        "n_x": 40,
        "n_half_steps": 39,
        "initial": _vacuum("half_A_green", [(20, "I", "hole")]),
        "observables": ["particle_count", "right_movers", "left_movers"],
    },
}


def builtin_config(name):
    if name not in BUILTIN_SCENARIOS:
        raise ConfigurationError(
            "unknown scenario {!r}, expected one of {}".format(
                name, sorted(BUILTIN_SCENARIOS)
            )
        )
    return config_from_dict(copy.deepcopy(BUILTIN_SCENARIOS[name]))
