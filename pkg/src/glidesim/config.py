"""Scenario files: a strict JSON schema mapped onto the runtime value types.

Every key is validated against the invariants of the type that owns it, and
unknown keys are rejected; error messages carry the exact offending key path
so a broken file is easy to fix.  The bundled ``paper_default`` scenario
reproduces the reference prototype's pool behavior.
"""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

from .controller import ControllerState, Mode, thresholds_from_valve
from .dynamics import DragModel, GlideGeometry
from .geometry import WingParams, displaced_volume
from .mission import Scenario
from .physics import GliderDesign, PhysicalConstants
from .pneumatics import Cartridge, Regulator, SwimBladder, ValveModel

import math


class ConfigError(Exception):
    """Invalid scenario file; the message starts with the offending key path."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.key_path = path


_NUMBER = "number"
_BOOL = "bool"
_STRING = "string"

# section -> key -> kind; None marks optional sections handled specially.
_SCHEMA: dict[str, dict[str, str]] = {
    "constants": {
        "rho_water": _NUMBER,
        "g": _NUMBER,
        "hydrostatic_gradient": _NUMBER,
        "p_atm": _NUMBER,
    },
    "design": {
        "hull_volume": _NUMBER,
        "wing": "wing",
        "bladder_capacity": _NUMBER,
        "mass": _NUMBER,
        "deflated_net_force": _NUMBER,
    },
    "controller": {
        "p_high": _NUMBER,
        "p_low": _NUMBER,
        "from_valve": _BOOL,
    },
    "valve": {
        "p_snap_through": _NUMBER,
        "p_snap_back": _NUMBER,
        "membrane_displacement_volume": _NUMBER,
        "sealed_chamber_volume": _NUMBER,
        "additional_sealed_volume": _NUMBER,
        "membrane_thickness": _NUMBER,
        "opening_angle": _NUMBER,
    },
    "bladder": {
        "inflation_differential": _NUMBER,
    },
    "regulator": {
        "setpoint": _NUMBER,
    },
    "cartridge": {
        "pressure": _NUMBER,
        "volume": _NUMBER,
        "temperature": _NUMBER,
        "energy": _NUMBER,
    },
    "glide": {
        "descent_angle_deg": _NUMBER,
        "ascent_angle_deg": _NUMBER,
    },
    "drag": {
        "c_d_a": _NUMBER,
        "effective_mass": _NUMBER,
        "speed_epsilon": _NUMBER,
    },
    "pneumatics": {
        "inflate_coefficient": _NUMBER,
        "vent_coefficient": _NUMBER,
        "instantaneous": _BOOL,
        "gas_accounting": _STRING,
    },
    "sim": {
        "dt": _NUMBER,
        "max_time": _NUMBER,
        "objective": _STRING,
    },
}

_WING_KEYS = {
    "alpha": _NUMBER,
    "l1": _NUMBER,
    "l2": _NUMBER,
    "lb": _NUMBER,
    "chord_root": _NUMBER,
    "chord_tip": _NUMBER,
    "thickness_ratio": _NUMBER,
    "wingtip_height": _NUMBER,
}


def _check_kind(path: str, value, kind: str):
    if kind == _NUMBER:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigError(path, f"expected a number, got {type(value).__name__}")
        if not math.isfinite(value):
            raise ConfigError(path, "number must be finite")
        return float(value)
    if kind == _BOOL:
        if not isinstance(value, bool):
            raise ConfigError(path, f"expected a boolean, got {type(value).__name__}")
        return value
    if kind == _STRING:
        if not isinstance(value, str):
            raise ConfigError(path, f"expected a string, got {type(value).__name__}")
        return value
    raise AssertionError(kind)


def _validate_tree(raw: dict) -> dict[str, dict]:
    if not isinstance(raw, dict):
        raise ConfigError("<root>", "scenario must be a JSON object")
    tree: dict[str, dict] = {}
    for section, content in raw.items():
        if section not in _SCHEMA:
            raise ConfigError(section, "unknown key")
        if not isinstance(content, dict):
            raise ConfigError(section, "section must be a JSON object")
        known = _SCHEMA[section]
        parsed: dict = {}
        for key, value in content.items():
            path = f"{section}.{key}"
            if key not in known:
                raise ConfigError(path, "unknown key")
            kind = known[key]
            if kind == "wing":
                if not isinstance(value, dict):
                    raise ConfigError(path, "wing must be a JSON object")
                wing: dict = {}
                for wk, wv in value.items():
                    wpath = f"{path}.{wk}"
                    if wk not in _WING_KEYS:
                        raise ConfigError(wpath, "unknown key")
                    wing[wk] = _check_kind(wpath, wv, _WING_KEYS[wk])
                parsed[key] = wing
            else:
                parsed[key] = _check_kind(path, value, kind)
        tree[section] = parsed
    return tree


def _build(section: str, factory, kwargs: dict):
    try:
        return factory(**kwargs)
    except ValueError as exc:
        raise ConfigError(section, str(exc)) from exc


def load_scenario(source) -> tuple[GliderDesign, Scenario]:
    """Build the runtime (design, scenario) pair from a dict, path, or name.

    ``source`` may be a mapping, a filesystem path, or the name of a bundled
    scenario such as ``paper_default``.
    """
    if isinstance(source, dict):
        raw = source
    else:
        path = resolve_config_path(source)
        try:
            raw = json.loads(Path(path).read_text())
        except json.JSONDecodeError as exc:
            raise ConfigError("<file>", f"invalid JSON: {exc}") from exc
    tree = _validate_tree(raw)

    constants = _build("constants", PhysicalConstants, tree.get("constants", {}))

    design_cfg = dict(tree.get("design", {}))
    wing_cfg = design_cfg.pop("wing", None)
    if ("hull_volume" in design_cfg) == (wing_cfg is not None):
        raise ConfigError("design", "provide exactly one of hull_volume or wing")
    if wing_cfg is not None:
        wing = _build("design.wing", WingParams, wing_cfg)
        hull_volume = displaced_volume(wing)
    else:
        hull_volume = design_cfg.pop("hull_volume")
    if "bladder_capacity" not in design_cfg:
        raise ConfigError("design.bladder_capacity", "missing required key")
    capacity = design_cfg.pop("bladder_capacity")
    if ("mass" in design_cfg) == ("deflated_net_force" in design_cfg):
        raise ConfigError("design", "provide exactly one of mass or deflated_net_force")
    if "mass" in design_cfg:
        design = _build(
            "design",
            GliderDesign,
            dict(mass=design_cfg["mass"], hull_volume=hull_volume, bladder_capacity=capacity),
        )
    else:
        try:
            design = GliderDesign.from_deflated_net_force(
                hull_volume, capacity, design_cfg["deflated_net_force"], constants
            )
        except ValueError as exc:
            raise ConfigError("design.deflated_net_force", str(exc)) from exc

    ctrl_cfg = tree.get("controller", {})
    from_valve = ctrl_cfg.get("from_valve", False)
    valve = None
    if "valve" in tree or from_valve:
        valve = _build("valve", ValveModel, tree.get("valve", {}))
    if from_valve:
        if "p_high" in ctrl_cfg or "p_low" in ctrl_cfg:
            raise ConfigError("controller", "from_valve excludes explicit thresholds")
        try:
            p_high, p_low = thresholds_from_valve(valve, constants)
        except ValueError as exc:
            raise ConfigError("controller.from_valve", str(exc)) from exc
    else:
        missing = [k for k in ("p_high", "p_low") if k not in ctrl_cfg]
        if missing:
            raise ConfigError(f"controller.{missing[0]}", "missing required key")
        p_high, p_low = ctrl_cfg["p_high"], ctrl_cfg["p_low"]
    controller = _build(
        "controller", ControllerState, dict(mode=Mode.DEFLATING, p_high=p_high, p_low=p_low)
    )

    bladder = _build(
        "bladder",
        SwimBladder,
        dict(capacity=capacity, **tree.get("bladder", {})),
    )
    regulator = _build("regulator", Regulator, tree.get("regulator", {"setpoint": 45_000.0}))

    cart_cfg = tree.get("cartridge", {})
    for key in ("pressure", "volume"):
        if key not in cart_cfg:
            raise ConfigError(f"cartridge.{key}", "missing required key")
    cartridge = _build(
        "cartridge",
        Cartridge.fresh,
        dict(
            p_cartridge=cart_cfg["pressure"],
            v_cartridge=cart_cfg["volume"],
            temperature=cart_cfg.get("temperature", 293.15),
            energy_full=cart_cfg.get("energy", 3820.0),
        ),
    )

    glide_cfg = tree.get("glide", {})
    glide = _build(
        "glide",
        GlideGeometry,
        dict(
            theta=math.radians(glide_cfg.get("descent_angle_deg", 28.0725)),
            phi=math.radians(glide_cfg.get("ascent_angle_deg", 28.0725)),
        ),
    )

    drag_cfg = tree.get("drag", {})
    drag = _build(
        "drag",
        DragModel,
        dict(c_d_a=drag_cfg.get("c_d_a", 0.0386), rho=constants.rho_water),
    )

    pneu_cfg = tree.get("pneumatics", {})
    sim_cfg = tree.get("sim", {})
    if pneu_cfg.get("gas_accounting", "absolute") not in ("absolute", "gauge"):
        raise ConfigError("pneumatics.gas_accounting", "must be 'absolute' or 'gauge'")
    if sim_cfg.get("objective", "range") not in ("range", "efficiency"):
        raise ConfigError("sim.objective", "must be 'range' or 'efficiency'")
    if sim_cfg.get("dt", 0.05) <= 0.0:
        raise ConfigError("sim.dt", "must be strictly positive")
    if sim_cfg.get("max_time", 1800.0) <= 0.0:
        raise ConfigError("sim.max_time", "must be strictly positive")
    scenario_kwargs = dict(
        constants=constants,
        controller=controller,
        bladder=bladder,
        cartridge=cartridge,
        regulator=regulator,
        glide=glide,
        drag=drag,
        inflate_coefficient=pneu_cfg.get("inflate_coefficient", 1.33e-8),
        vent_coefficient=pneu_cfg.get("vent_coefficient", 1.5e-9),
        dt=sim_cfg.get("dt", 0.05),
        max_time=sim_cfg.get("max_time", 1800.0),
        instantaneous_pneumatics=pneu_cfg.get("instantaneous", False),
        gas_accounting=pneu_cfg.get("gas_accounting", "absolute"),
        effective_mass=drag_cfg.get("effective_mass"),
        speed_epsilon=drag_cfg.get("speed_epsilon", 0.05),
        objective=sim_cfg.get("objective", "range"),
    )
    scenario = _build("sim", Scenario, scenario_kwargs)
    return design, scenario


def bundled_config_names() -> list[str]:
    root = resources.files("glidesim").joinpath("data")
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def resolve_config_path(source) -> Path:
    """Resolve a config reference: an existing file path or a bundled name."""
    path = Path(source)
    if path.exists():
        return path
    name = path.name if path.name.endswith(".json") else f"{path.name}.json"
    candidate = resources.files("glidesim").joinpath("data", name)
    if candidate.is_file():
        return Path(str(candidate))
    raise ConfigError("<file>", f"no such config file or bundled scenario: {source}")
