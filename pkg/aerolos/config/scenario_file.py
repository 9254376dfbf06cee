# aerolos/config/scenario_file.py
"""
Reader for the flat scenario file format.

One `key = value` per line, `#` starts a comment, blank lines are ignored.
Missing keys fall back to the reference urban setup (R_max = 100 m,
H_b = 30 m, H_u = 2 m, lambda_b = 2e-4, lengths U(0, 15], orientations
U(0, pi]); Monte Carlo controls fall back to `settings`.
"""

import logging
import math
from pathlib import Path
from typing import Any, Dict, Iterable, Union

from pydantic import ValidationError

from aerolos.blockage_engine.errors import ConfigParseError, ConfigValidationError
from aerolos.blockage_engine.scenario import Scenario
from aerolos.config.settings import settings

logger = logging.getLogger(__name__)

LINK_BUDGET_KEYS = ("beam_gain", "normalized_noise", "snr_threshold", "pathloss_exponent")
INT_KEYS = ("realizations", "users_per_realization", "seed", "max_subdivisions")
CHOICE_KEYS = {"len_dist": ("uniform", "fixed"), "orientation_dist": ("uniform", "fixed")}
FLOAT_KEYS = (
    "r_max", *LINK_BUDGET_KEYS,
    "h_a", "h_b", "h_u", "lambda_b",
    "len_min", "len_max", "len_value",
    "orientation_min", "orientation_max", "orientation_value",
    "window_radius", "rel_tol", "abs_tol",
)
KNOWN_KEYS = frozenset(FLOAT_KEYS) | frozenset(INT_KEYS) | frozenset(CHOICE_KEYS)

DEFAULTS: Dict[str, Any] = {
    "r_max": 100.0,
    "h_a": 50.0,
    "h_b": 30.0,
    "h_u": 2.0,
    "lambda_b": 2e-4,
    "len_dist": "uniform",
    "len_min": 0.0,
    "len_max": 15.0,
    "orientation_dist": "uniform",
    "orientation_min": 0.0,
    "orientation_max": math.pi,
    "rel_tol": 1e-6,
    "abs_tol": 1e-9,
    "max_subdivisions": 200,
}


def _convert(key: str, raw: str, line_number: int) -> Any:
    if key in CHOICE_KEYS:
        if raw not in CHOICE_KEYS[key]:
            raise ConfigParseError(f"'{key}' must be one of {', '.join(CHOICE_KEYS[key])}, got '{raw}'", line_number)
        return raw
    try:
        return int(raw) if key in INT_KEYS else float(raw)
    except ValueError:
        kind = "an integer" if key in INT_KEYS else "a number"
        raise ConfigParseError(f"'{key}' expects {kind}, got '{raw}'", line_number) from None


def parse_entries(lines: Iterable[str]) -> Dict[str, Any]:
    """Key/value pairs of a scenario file, typed but not yet validated."""
    entries: Dict[str, Any] = {}
    for line_number, line in enumerate(lines, start=1):
        text = line.split("#", 1)[0].strip()
        if not text:
            continue
        key, sep, raw = text.partition("=")
        key, raw = key.strip(), raw.strip()
        if not sep or not key or not raw:
            raise ConfigParseError(f"expected 'key = value', got '{text}'", line_number)
        if key not in KNOWN_KEYS:
            raise ConfigParseError(f"unknown key '{key}'", line_number)
        if key in entries:
            raise ConfigParseError(f"duplicate key '{key}'", line_number)
        entries[key] = _convert(key, raw, line_number)
    return entries


def _distribution(entries: Dict[str, Any], prefix: str, kind_key: str) -> Dict[str, Any]:
    kind = entries.get(kind_key, DEFAULTS[kind_key])
    if kind == "fixed":
        if f"{prefix}_value" not in entries:
            raise ConfigValidationError(f"{kind_key} = fixed needs {prefix}_value")
        stray = [k for k in (f"{prefix}_min", f"{prefix}_max") if k in entries]
        if stray:
            raise ConfigValidationError(f"{', '.join(stray)} only apply to {kind_key} = uniform")
        return {"kind": "fixed", "value": entries[f"{prefix}_value"]}
    if f"{prefix}_value" in entries:
        raise ConfigValidationError(f"{prefix}_value only applies to {kind_key} = fixed")
    return {
        "kind": "uniform",
        "low": entries.get(f"{prefix}_min", DEFAULTS[f"{prefix}_min"]),
        "high": entries.get(f"{prefix}_max", DEFAULTS[f"{prefix}_max"]),
    }


def build_scenario(entries: Dict[str, Any]) -> Scenario:
    """
    Turns parsed entries into a validated Scenario.

    Raises:
        ConfigValidationError: naming the violated invariant.
    """
    values = {**DEFAULTS, **entries}
    values.setdefault("realizations", settings.realizations)
    values.setdefault("users_per_realization", settings.users_per_realization)
    values.setdefault("seed", settings.seed)

    budget_given = [k for k in LINK_BUDGET_KEYS if k in entries]
    data: Dict[str, Any] = {}
    if budget_given:
        if "r_max" in entries:
            raise ConfigValidationError("give either r_max or a link budget, not both")
        missing = [k for k in LINK_BUDGET_KEYS if k not in entries]
        if missing:
            raise ConfigValidationError(f"incomplete link budget, missing {', '.join(missing)}")
        data["link_budget"] = {k: entries[k] for k in LINK_BUDGET_KEYS}
    else:
        data["r_max"] = values["r_max"]

    data["heights"] = {
        "aap_altitude": values["h_a"],
        "user_height": values["h_u"],
        "building_height": values["h_b"],
    }
    data["process"] = {
        "density": values["lambda_b"],
        "length_distribution": _distribution(entries, "len", "len_dist"),
        "orientation_distribution": _distribution(entries, "orientation", "orientation_dist"),
        "sampling_window_radius": values.get("window_radius"),
    }
    data["monte_carlo"] = {
        "realizations": values["realizations"],
        "users_per_realization": values["users_per_realization"],
        "seed": values["seed"],
    }
    data["quadrature"] = {
        "relative_tolerance": values["rel_tol"],
        "absolute_tolerance": values["abs_tol"],
        "max_subdivisions": values["max_subdivisions"],
    }
    try:
        return Scenario.model_validate(data)
    except ValidationError as exc:
        raise ConfigValidationError.from_validation(exc) from exc


def default_scenario() -> Scenario:
    return build_scenario({})


def parse_config(path: Union[str, Path]) -> Scenario:
    """
    Reads and validates a scenario file.

    Raises:
        ConfigParseError: with the offending line number.
        ConfigValidationError: when values violate a scenario invariant.
    """
    path = Path(path)
    logger.info("Reading scenario from %s", path)
    with path.open(encoding="utf-8") as handle:
        entries = parse_entries(handle)
    return build_scenario(entries)
