from __future__ import absolute_import
from .vacua import VACUA, Insertion, vacuum_layer, apply_insertions
from .classify import classify_vacuum, classify_trajectory, soliton_light_cone
from .render import render_ascii, render_ppm, render_spacetime
from .config import ScenarioConfig, config_from_dict, load_config, builtin_config
from .runner import ScenarioResult, compute_scenario, run_scenario


__all__ = [
    "VACUA",
    "Insertion",
    "vacuum_layer",
    "apply_insertions",
    "classify_vacuum",
    "classify_trajectory",
    "soliton_light_cone",
    "render_ascii",
    "render_ppm",
    "render_spacetime",
    "ScenarioConfig",
    "config_from_dict",
    "load_config",
    "builtin_config",
    "ScenarioResult",
    "compute_scenario",
    "run_scenario",
]
