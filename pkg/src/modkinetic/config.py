"""Run configurations for the batch front end.

A configuration is a single JSON document.  Validation collects every
violation with a path into the document (e.g. ``model.a``) instead of
stopping at the first; unknown keys are rejected so typos cannot silently
change a run.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .core import Boundary, Grid1D, ModelParams, Potential, Variant
from .errors import ConfigError

COMMANDS = (
    "spectrum",
    "density",
    "evolve",
    "scatter",
    "wkb",
    "dispersion",
    "klein",
    "dirac-compare",
)

_VARIANTS = tuple(v.value for v in Variant)
_BOUNDARIES = tuple(b.value for b in Boundary)


@dataclass
class RunConfig:
    """Parsed and validated configuration, ready to dispatch."""

    command: str
    raw: dict
    model: ModelParams | None = None
    grid: Grid1D | None = None
    potential: Potential | None = None
    options: dict = field(default_factory=dict)


class _Checker:
    def __init__(self):
        self.violations: list[str] = []

    def fail(self, path: str, message: str):
        self.violations.append(f"{path}: {message}")

    def require_keys(self, obj: dict, path: str, required, optional=()):
        for key in required:
            if key not in obj:
                self.fail(f"{path}.{key}" if path else key, "missing required key")
        allowed = set(required) | set(optional)
        for key in obj:
            if key not in allowed:
                self.fail(f"{path}.{key}" if path else key, "unknown key")

    def number(self, obj: dict, path: str, key: str, minimum=None, exclusive=False):
        if key not in obj:
            return None
        val = obj[key]
        where = f"{path}.{key}" if path else key
        if isinstance(val, bool) or not isinstance(val, (int, float)):
            self.fail(where, f"expected a number, got {type(val).__name__}")
            return None
        val = float(val)
        if not math.isfinite(val):
            self.fail(where, "must be finite")
            return None
        if minimum is not None:
            if exclusive and not val > minimum:
                self.fail(where, f"must be > {minimum}")
                return None
            if not exclusive and not val >= minimum:
                self.fail(where, f"must be >= {minimum}")
                return None
        return val

    def integer(self, obj: dict, path: str, key: str, minimum=None):
        if key not in obj:
            return None
        val = obj[key]
        where = f"{path}.{key}" if path else key
        if isinstance(val, bool) or not isinstance(val, int):
            self.fail(where, f"expected an integer, got {type(val).__name__}")
            return None
        if minimum is not None and val < minimum:
            self.fail(where, f"must be >= {minimum}")
            return None
        return val

    def choice(self, obj: dict, path: str, key: str, choices):
        if key not in obj:
            return None
        val = obj[key]
        where = f"{path}.{key}" if path else key
        if val not in choices:
            self.fail(where, f"must be one of {list(choices)}")
            return None
        return val


def _parse_model(obj: Any, check: _Checker) -> ModelParams | None:
    if not isinstance(obj, dict):
        check.fail("model", "expected an object")
        return None
    check.require_keys(obj, "model", required=("m",), optional=("a", "variant"))
    m = check.number(obj, "model", "m", minimum=0.0, exclusive=True)
    a = check.number(obj, "model", "a", minimum=0.0) if "a" in obj else 0.0
    variant = check.choice(obj, "model", "variant", _VARIANTS)
    if m is None or a is None:
        return None
    variant = Variant(variant) if variant else Variant.GRADIENT
    if variant is Variant.STANDARD and a != 0.0:
        check.fail("model.variant", "STANDARD requires a = 0")
        return None
    try:
        return ModelParams(m=m, a=float(a), variant=variant)
    except Exception as exc:
        check.fail("model", str(exc))
        return None


def _parse_grid(obj: Any, check: _Checker) -> Grid1D | None:
    if not isinstance(obj, dict):
        check.fail("grid", "expected an object")
        return None
    check.require_keys(obj, "grid", required=("x_min", "x_max", "n"), optional=("boundary",))
    x_min = check.number(obj, "grid", "x_min")
    x_max = check.number(obj, "grid", "x_max")
    n = check.integer(obj, "grid", "n", minimum=3)
    boundary = check.choice(obj, "grid", "boundary", _BOUNDARIES)
    if None in (x_min, x_max, n):
        return None
    if not x_max > x_min:
        check.fail("grid.x_max", "must exceed grid.x_min")
        return None
    return Grid1D(
        x_min=x_min,
        x_max=x_max,
        n=n,
        boundary=Boundary(boundary) if boundary else Boundary.DIRICHLET,
    )


def _edge(value, check: _Checker, where: str):
    if value in ("-inf", "inf", "+inf"):
        return -math.inf if value == "-inf" else math.inf
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        check.fail(where, "expected a number or '-inf'/'inf'")
        return None
    return float(value)


def _parse_potential(obj: Any, check: _Checker) -> Potential | None:
    if not isinstance(obj, dict):
        check.fail("potential", "expected an object")
        return None
    kind = check.choice(obj, "potential", "kind", ("CONSTANT", "HARMONIC", "PIECEWISE", "SAMPLED"))
    if kind is None:
        if "kind" not in obj:
            check.fail("potential.kind", "missing required key")
        return None
    if kind == "CONSTANT":
        check.require_keys(obj, "potential", required=("kind", "v0"))
        v0 = check.number(obj, "potential", "v0")
        return Potential.constant(v0) if v0 is not None else None
    if kind == "HARMONIC":
        check.require_keys(obj, "potential", required=("kind", "spring"), optional=("center",))
        spring = check.number(obj, "potential", "spring", minimum=0.0)
        center = check.number(obj, "potential", "center") if "center" in obj else 0.0
        if spring is None:
            return None
        return Potential.harmonic(spring, center if center is not None else 0.0)
    if kind == "SAMPLED":
        check.require_keys(obj, "potential", required=("kind", "values"))
        vals = obj.get("values")
        if not isinstance(vals, list) or not vals or not all(
            isinstance(v, (int, float)) and not isinstance(v, bool) for v in vals
        ):
            check.fail("potential.values", "expected a non-empty list of numbers")
            return None
        return Potential.sampled(vals)
    segs = obj.get("segments")
    check.require_keys(obj, "potential", required=("kind", "segments"))
    if not isinstance(segs, list) or not segs:
        check.fail("potential.segments", "expected a non-empty list")
        return None
    parsed = []
    for i, seg in enumerate(segs):
        path = f"potential.segments[{i}]"
        if not isinstance(seg, dict):
            check.fail(path, "expected an object")
            return None
        check.require_keys(seg, path, required=("x_left", "x_right", "v"))
        xl = _edge(seg.get("x_left"), check, f"{path}.x_left")
        xr = _edge(seg.get("x_right"), check, f"{path}.x_right")
        v = check.number(seg, path, "v")
        if None in (xl, xr, v):
            return None
        parsed.append((xl, xr, v))
    try:
        return Potential.piecewise(parsed)
    except ValueError as exc:
        check.fail("potential.segments", str(exc))
        return None


def _parse_sweep(obj: Any, check: _Checker, path: str, allow_log=False):
    """A sweep is either an explicit list of values or {start, stop, count}."""
    if isinstance(obj, list):
        if not obj or not all(
            isinstance(v, (int, float)) and not isinstance(v, bool) for v in obj
        ):
            check.fail(path, "expected a non-empty list of numbers")
            return None
        return [float(v) for v in obj]
    if isinstance(obj, dict):
        optional = ("spacing",) if allow_log else ()
        check.require_keys(obj, path, required=("start", "stop", "count"), optional=optional)
        start = check.number(obj, path, "start")
        stop = check.number(obj, path, "stop")
        count = check.integer(obj, path, "count", minimum=2)
        spacing = check.choice(obj, path, "spacing", ("linear", "log")) if allow_log else None
        if None in (start, stop, count):
            return None
        if spacing == "log":
            if start <= 0 or stop <= 0:
                check.fail(path, "log spacing needs positive start/stop")
                return None
            return list(np.geomspace(start, stop, count))
        return list(np.linspace(start, stop, count))
    check.fail(path, "expected a list or a {start, stop, count} object")
    return None


_SECTION_SPECS = {
    # command: (required sections, optional sections)
    "spectrum": (("command", "model", "grid", "potential", "spectrum"), ()),
    "density": (("command", "model", "grid", "potential", "density"), ()),
    "evolve": (("command", "model", "grid", "potential", "evolve"), ()),
    "scatter": (("command", "model", "potential", "scatter"), ()),
    "wkb": (("command", "model", "grid", "potential", "wkb"), ()),
    "dispersion": (("command", "model", "dispersion"), ()),
    "klein": (("command", "klein"), ()),
    "dirac-compare": (("command", "dirac-compare"), ()),
}


def validate_config(doc: Any) -> list[str]:
    """All schema violations in the document; empty list means valid."""
    cfg, check = _build(doc)
    del cfg
    return check.violations


def load_config(doc: Any) -> RunConfig:
    """Parse a document into a RunConfig, raising ConfigError on violations."""
    cfg, check = _build(doc)
    if check.violations:
        raise ConfigError(check.violations)
    assert cfg is not None
    return cfg


def load_config_file(path) -> RunConfig:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigError([f"(file): not valid JSON: {exc}"]) from exc
    return load_config(doc)


def _build(doc: Any) -> tuple[RunConfig | None, _Checker]:
    check = _Checker()
    if not isinstance(doc, dict):
        check.fail("(root)", "configuration must be a JSON object")
        return None, check
    command = doc.get("command")
    if command not in COMMANDS:
        check.fail("command", f"must be one of {list(COMMANDS)}")
        return None, check

    required, optional = _SECTION_SPECS[command]
    check.require_keys(doc, "", required=required, optional=optional)

    model = _parse_model(doc["model"], check) if "model" in doc and "model" in required else None
    grid = _parse_grid(doc["grid"], check) if "grid" in doc and "grid" in required else None
    potential = (
        _parse_potential(doc["potential"], check)
        if "potential" in doc and "potential" in required
        else None
    )

    options: dict = {}
    section = doc.get(command)

    if command == "spectrum" and isinstance(section, dict):
        check.require_keys(section, "spectrum", required=("count",))
        options["count"] = check.integer(section, "spectrum", "count", minimum=1)
    elif command == "density" and isinstance(section, dict):
        check.require_keys(section, "density", required=("state_index", "a_values"))
        options["state_index"] = check.integer(section, "density", "state_index", minimum=0)
        avals = section.get("a_values")
        if not isinstance(avals, list) or not avals or not all(
            isinstance(v, (int, float)) and not isinstance(v, bool) and v >= 0 for v in avals
        ):
            check.fail("density.a_values", "expected a non-empty list of numbers >= 0")
        else:
            options["a_values"] = [float(v) for v in avals]
    elif command == "evolve" and isinstance(section, dict):
        check.require_keys(
            section, "evolve", required=("initial", "dt", "steps"), optional=("store_every",)
        )
        init = section.get("initial")
        if not isinstance(init, dict):
            check.fail("evolve.initial", "expected an object")
        else:
            check.require_keys(init, "evolve.initial", required=("x0", "sigma"), optional=("k0",))
            options["x0"] = check.number(init, "evolve.initial", "x0")
            options["sigma"] = check.number(init, "evolve.initial", "sigma", minimum=0.0, exclusive=True)
            options["k0"] = (
                check.number(init, "evolve.initial", "k0") if "k0" in init else 0.0
            )
        options["dt"] = check.number(section, "evolve", "dt", minimum=0.0, exclusive=True)
        options["steps"] = check.integer(section, "evolve", "steps", minimum=1)
        options["store_every"] = (
            check.integer(section, "evolve", "store_every", minimum=1)
            if "store_every" in section
            else 1
        )
    elif command == "scatter" and isinstance(section, dict):
        check.require_keys(section, "scatter", required=("energies",), optional=("incidence",))
        options["energies"] = _parse_sweep(section.get("energies"), check, "scatter.energies")
        options["incidence"] = (
            check.choice(section, "scatter", "incidence", ("left", "right"))
            if "incidence" in section
            else "left"
        )
        if potential is not None and potential.kind.value != "PIECEWISE":
            check.fail("potential.kind", "scatter requires a PIECEWISE potential")
    elif command == "wkb" and isinstance(section, dict):
        check.require_keys(
            section, "wkb", required=("energy", "reference_point"), optional=("validity_threshold",)
        )
        options["energy"] = check.number(section, "wkb", "energy")
        options["reference_point"] = check.number(section, "wkb", "reference_point")
        options["validity_threshold"] = (
            check.number(section, "wkb", "validity_threshold", minimum=0.0, exclusive=True)
            if "validity_threshold" in section
            else 0.1
        )
        if model is not None and model.variant is not Variant.GAUGE:
            check.fail("model.variant", "wkb requires the GAUGE variant")
    elif command == "dispersion" and isinstance(section, dict):
        check.require_keys(section, "dispersion", required=("k",))
        options["k_values"] = _parse_sweep(section.get("k"), check, "dispersion.k")
    elif command == "klein" and isinstance(section, dict):
        check.require_keys(
            section, "klein", required=("m", "energy", "v0_values"), optional=("branches",)
        )
        options["m"] = check.number(section, "klein", "m", minimum=0.0, exclusive=True)
        options["energy"] = check.number(section, "klein", "energy")
        options["v0_values"] = _parse_sweep(
            section.get("v0_values"), check, "klein.v0_values", allow_log=True
        )
        branches = section.get("branches", ["NAIVE", "KLEIN_PAULI"])
        if not isinstance(branches, list) or not branches or not all(
            b in ("NAIVE", "KLEIN_PAULI") for b in branches
        ):
            check.fail("klein.branches", "expected a list drawn from ['NAIVE', 'KLEIN_PAULI']")
        else:
            options["branches"] = branches
        if (
            options.get("m") is not None
            and options.get("energy") is not None
            and options["energy"] <= options["m"]
        ):
            check.fail("klein.energy", "must exceed the rest mass m")
    elif command == "dirac-compare" and isinstance(section, dict):
        check.require_keys(section, "dirac-compare", required=("m", "k_values"))
        options["m"] = check.number(section, "dirac-compare", "m", minimum=0.0, exclusive=True)
        options["k_values"] = _parse_sweep(
            section.get("k_values"), check, "dirac-compare.k_values", allow_log=True
        )
        if options.get("m") is not None and options.get("k_values"):
            for k in options["k_values"]:
                if k / options["m"] > 0.3:
                    check.fail(
                        "dirac-compare.k_values", "k/m must stay <= 0.3 for the expansion"
                    )
                    break

    if any(v is None for v in options.values()):
        # specific violations were already recorded by the checkers
        return None, check
    if check.violations:
        return None, check
    return (
        RunConfig(command=command, raw=doc, model=model, grid=grid, potential=potential, options=options),
        check,
    )
