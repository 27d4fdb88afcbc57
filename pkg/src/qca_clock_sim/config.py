"""JSON circuit documents.

A document describes one circuit plus run settings::

    {"cells": 4,
     "couplings": [{"a": 1, "b": 2, "j": 1.0}, ...],
     "nnn": {"auto": false, "factor": 0.03125, "pairs": []},
     "drivers": [{"cell": 1, "schedule": {"type": "cosine", "p0": 1, "p1": -1, "t_f": 30}}],
     "clock_zones": [{"cells": [1, 2, 3, 4], "schedule": {"type": "sine", "gamma_max": 0.5, "t_f": 30}}],
     "t_f": 30, "dt": 0.001, "initial_state": "0000"}

Unknown keys are errors.  Schedules may omit ``t_f`` when the document
sets one.  Schema errors name the offending field and its line.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from json import scanner
from pathlib import Path
from typing import Any

from .circuit import (
    DEFAULT_NNN_FACTOR,
    Circuit,
    ClockZone,
    Coupling,
    Driver,
    chain_nnn,
    check_label,
    circuit_to_dict,
)
from .evolution import DEFAULT_DT
from .schedules import Constant, CosineSwitch, PiecewiseLinear, Schedule, SineRamp


class ConfigError(ValueError):
    """Schema violation in a circuit document."""

    def __init__(self, field: str, line: int | None, message: str):
        self.field = field
        self.line = line
        where = f" (line {line})" if line is not None else ""
        super().__init__(f"{field}{where}: {message}")


class _Obj(dict):
    """Decoded JSON object that remembers the line of each key."""

    line: int = 1
    key_lines: dict[str, int]


def _line_of(text: str, pos: int) -> int:
    return text.count("\n", 0, pos) + 1


def _locating_loads(text: str) -> Any:
    decoder = json.JSONDecoder()
    plain = decoder.parse_object

    def parse_object(s_and_end, strict, scan_once, object_hook, object_pairs_hook, memo=None, _w=None):
        s, start = s_and_end
        pairs, end = plain((s, start), strict, scan_once, None, list, memo)
        obj = _Obj()
        obj.line = _line_of(s, start)
        obj.key_lines = {}
        cursor = start
        for key, value in pairs:
            at = s.find(json.dumps(key), cursor, end)
            if at >= 0:
                obj.key_lines[key] = _line_of(s, at)
                cursor = at + 1
            if key in obj:
                raise ConfigError(key, obj.key_lines.get(key), "duplicate key")
            obj[key] = value
        return obj, end

    decoder.parse_object = parse_object
    decoder.scan_once = scanner.py_make_scanner(decoder)
    try:
        return decoder.decode(text)
    except json.JSONDecodeError as e:
        raise ConfigError("document", e.lineno, f"invalid JSON: {e.msg}") from None


class _Reader:
    def __init__(self, obj: _Obj, path: str, allowed: set[str], required: set[str] = frozenset()):
        if not isinstance(obj, _Obj):
            raise ConfigError(path or "document", None, "expected an object")
        self.obj, self.path = obj, path
        for key in obj:
            if key not in allowed:
                raise ConfigError(self._name(key), obj.key_lines.get(key), "unknown key")
        for key in sorted(required - set(obj)):
            raise ConfigError(self._name(key), obj.line, "missing required key")

    def _name(self, key: str) -> str:
        return f"{self.path}.{key}" if self.path else key

    def has(self, key: str) -> bool:
        return key in self.obj

    def error(self, key: str, message: str) -> ConfigError:
        return ConfigError(self._name(key), self.obj.key_lines.get(key, self.obj.line), message)

    def number(self, key: str, default: float | None = None) -> float:
        v = self.obj.get(key, default)
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            raise self.error(key, f"expected a number, got {v!r}")
        return float(v)

    def integer(self, key: str) -> int:
        v = self.obj.get(key)
        if isinstance(v, bool) or not isinstance(v, int):
            raise self.error(key, f"expected an integer, got {v!r}")
        return v

    def boolean(self, key: str, default: bool) -> bool:
        v = self.obj.get(key, default)
        if not isinstance(v, bool):
            raise self.error(key, f"expected true or false, got {v!r}")
        return v

    def array(self, key: str, default: list | None = None) -> list:
        v = self.obj.get(key, default)
        if not isinstance(v, list):
            raise self.error(key, f"expected an array, got {v!r}")
        return v

    def child(self, key: str, allowed: set[str], required: set[str] = frozenset()) -> _Reader:
        v = self.obj.get(key)
        if not isinstance(v, _Obj):
            raise self.error(key, "expected an object")
        return _Reader(v, self._name(key), allowed, required)

    def item(self, key: str, index: int, value, allowed: set[str], required: set[str] = frozenset()) -> _Reader:
        name = f"{self._name(key)}[{index}]"
        if not isinstance(value, _Obj):
            raise ConfigError(name, self.obj.key_lines.get(key), "expected an object")
        return _Reader(value, name, allowed, required)


_SCHEDULE_KEYS = {
    "cosine": ({"type", "p0", "p1", "t_f"}, {"p0", "p1"}),
    "sine": ({"type", "gamma_max", "t_f"}, {"gamma_max"}),
    "constant": ({"type", "v"}, {"v"}),
    "piecewise": ({"type", "points"}, {"points"}),
}


def _schedule(parent: _Reader, key: str, t_f: float | None, kinds: set[str]) -> Schedule:
    raw = parent.child(key, {"type", "p0", "p1", "t_f", "gamma_max", "v", "points"}, {"type"})
    kind = raw.obj["type"]
    if kind not in kinds:
        raise raw.error("type", f"expected one of {sorted(kinds)}, got {kind!r}")
    allowed, required = _SCHEDULE_KEYS[kind]
    r = _Reader(raw.obj, raw.path, allowed, required)
    try:
        if kind == "constant":
            return Constant(r.number("v"))
        if kind == "piecewise":
            pts = r.array("points")
            if not all(isinstance(p, list) and len(p) == 2 for p in pts):
                raise r.error("points", "expected [[t, v], ...]")
            return PiecewiseLinear(tuple((float(a), float(b)) for a, b in pts))
        if r.has("t_f"):
            end = r.number("t_f")
        elif t_f is not None:
            end = t_f
        else:
            raise r.error("t_f", "no t_f here or at the top level")
        if kind == "cosine":
            return CosineSwitch(r.number("p0"), r.number("p1"), end)
        return SineRamp(r.number("gamma_max"), end)
    except (TypeError, ValueError) as e:
        if isinstance(e, ConfigError):
            raise
        raise ConfigError(r.path, r.obj.line, str(e)) from None


def _coupling(r: _Reader, default_j: float) -> Coupling:
    return Coupling(r.integer("a"), r.integer("b"), r.number("j", default_j))


@dataclass(frozen=True)
class Config:
    """A parsed document: the circuit plus its run settings."""

    circuit: Circuit
    t_f: float
    dt: float
    initial_state: str | None


def parse_config(text: str) -> Config:
    """Parse a JSON document into a validated :class:`Config`.

    Raises
    ------
    ConfigError
        On malformed JSON or a schema violation.
    circuit.CircuitError
        If the circuit breaks a structural invariant.
    """
    doc = _Reader(
        _locating_loads(text),
        "",
        {"cells", "couplings", "nnn", "drivers", "clock_zones", "t_f", "dt", "initial_state"},
        {"cells", "clock_zones"},
    )
    n = doc.integer("cells")
    t_f = doc.number("t_f") if doc.has("t_f") else None
    couplings = tuple(
        _coupling(doc.item("couplings", k, v, {"a", "b", "j"}, {"a", "b"}), 1.0)
        for k, v in enumerate(doc.array("couplings", []))
    )
    drivers = tuple(
        Driver(r.integer("cell"), _schedule(r, "schedule", t_f, {"cosine", "constant", "piecewise"}))
        for r in (
            doc.item("drivers", k, v, {"cell", "schedule"}, {"cell", "schedule"})
            for k, v in enumerate(doc.array("drivers", []))
        )
    )
    zones = []
    for k, v in enumerate(doc.array("clock_zones")):
        r = doc.item("clock_zones", k, v, {"cells", "schedule"}, {"cells", "schedule"})
        cells = r.array("cells")
        if not all(isinstance(i, int) and not isinstance(i, bool) for i in cells):
            raise r.error("cells", "expected an array of integers")
        zones.append(ClockZone(tuple(cells), _schedule(r, "schedule", t_f, {"sine", "constant", "piecewise"})))

    nnn: tuple[Coupling, ...] = ()
    if doc.has("nnn"):
        r = doc.child("nnn", {"auto", "factor", "pairs"})
        factor = r.number("factor", DEFAULT_NNN_FACTOR)
        pairs = r.array("pairs", [])
        if r.boolean("auto", False):
            if pairs:
                raise r.error("pairs", "give either auto or explicit pairs, not both")
            probe = Circuit(n, couplings, (), drivers, tuple(zones))
            if not probe.is_chain():
                raise r.error("auto", "automatic NNN pairs need a linear chain")
            nnn = chain_nnn(n, factor)
        else:
            nnn = tuple(
                _coupling(r.item("pairs", k, v, {"a", "b", "j"}, {"a", "b"}), factor)
                for k, v in enumerate(pairs)
            )

    circuit = Circuit(n, couplings, nnn, drivers, tuple(zones))
    if t_f is None:
        t_f = circuit.t_f
        if t_f is None:
            raise doc.error("t_f", "every schedule is constant, so t_f must be given")
    elif not t_f > 0:
        raise doc.error("t_f", f"must be positive, got {t_f}")
    ends = [s.t_f for s in circuit.schedules() if s.t_f is not None]
    if any(t_f > e * (1 + 1e-12) for e in ends):
        raise doc.error("t_f", f"run length {t_f} exceeds a schedule domain {min(ends)}")
    dt = doc.number("dt", DEFAULT_DT)
    if not dt > 0:
        raise doc.error("dt", f"must be positive, got {dt}")
    initial = None
    if doc.has("initial_state"):
        initial = doc.obj["initial_state"]
        if not isinstance(initial, str):
            raise doc.error("initial_state", f"expected a bitstring, got {initial!r}")
        try:
            check_label(initial, n)
        except ValueError as e:
            raise doc.error("initial_state", str(e)) from None
    return Config(circuit, float(t_f), dt, initial)


def parse_circuit(text: str) -> Circuit:
    return parse_config(text).circuit


def load_config(path: str | Path) -> Config:
    return parse_config(Path(path).read_text())


def dump_config(cfg: Config) -> str:
    """Serialize ``cfg``; ``parse_config(dump_config(cfg)) == cfg``."""
    doc = circuit_to_dict(cfg.circuit)
    doc["t_f"] = cfg.t_f
    doc["dt"] = cfg.dt
    if cfg.initial_state is not None:
        doc["initial_state"] = cfg.initial_state
    return json.dumps(doc, indent=2) + "\n"


def shipped_config(name: str) -> Path:
    """Path of a document bundled with the package, e.g. ``"wire4.json"``."""
    return Path(str(resources.files(__package__) / "configs" / name))
