import json

import pytest

from qca_clock_sim.circuit import CircuitError, wire
from qca_clock_sim.config import (
    Config,
    ConfigError,
    dump_config,
    load_config,
    parse_circuit,
    parse_config,
    shipped_config,
)

MINIMAL = """{
  "cells": 2,
  "couplings": [{"a": 1, "b": 2}],
  "drivers": [{"cell": 1, "schedule": {"type": "cosine", "p0": 1, "p1": -1}}],
  "clock_zones": [{"cells": [1, 2], "schedule": {"type": "sine", "gamma_max": 0.5}}],
  "t_f": 10
}
"""


def test_minimal_document():
    c = parse_circuit(MINIMAL)
    assert c.n_cells == 2
    assert c.t_f == 10.0
    assert c.couplings[0].j == 1.0


def test_shipped_wire4_matches_builder():
    cfg = load_config(shipped_config("wire4.json"))
    assert cfg.circuit == wire(4, 30, 0.5, nnn=False)
    assert (cfg.t_f, cfg.dt, cfg.initial_state) == (30.0, 1e-3, "0000")


@pytest.mark.parametrize("n", [6, 7])
def test_shipped_nnn_wires_match_builder(n):
    cfg = load_config(shipped_config(f"wire{n}_nnn.json"))
    assert cfg.circuit == wire(n, 60, 0.5, nnn=True)


def test_round_trip():
    cfg = Config(wire(5, 20, 0.7, nnn=True), 20.0, 2e-3, "01010")
    assert parse_config(dump_config(cfg)) == cfg


def test_cell_index_zero_is_a_validation_error():
    doc = json.loads(MINIMAL)
    doc["couplings"][0]["a"] = 0
    with pytest.raises(CircuitError):
        parse_circuit(json.dumps(doc))


def test_unknown_key_names_field_and_line():
    text = MINIMAL.replace('"t_f": 10', '"t_f": 10,\n  "colour": "red"')
    with pytest.raises(ConfigError) as e:
        parse_config(text)
    assert e.value.field == "colour"
    assert e.value.line == 7


def test_nested_type_error_names_path():
    text = MINIMAL.replace('"gamma_max": 0.5', '"gamma_max": "big"')
    with pytest.raises(ConfigError) as e:
        parse_config(text)
    assert e.value.field == "clock_zones[0].schedule.gamma_max"
    assert e.value.line == 5


def test_unknown_schedule_key_rejected():
    text = MINIMAL.replace('"p1": -1', '"p1": -1, "gamma_max": 1')
    with pytest.raises(ConfigError, match="drivers\\[0\\].schedule.gamma_max"):
        parse_config(text)


def test_malformed_json_reports_line():
    with pytest.raises(ConfigError) as e:
        parse_config('{\n "cells": 2,\n "clock_zones": [}')
    assert e.value.line == 3


def test_missing_required_key():
    with pytest.raises(ConfigError, match="clock_zones"):
        parse_config('{"cells": 2}')


def test_duplicate_key_rejected():
    with pytest.raises(ConfigError, match="duplicate"):
        parse_config(MINIMAL.replace('"cells": 2,', '"cells": 2, "cells": 2,'))


def test_nnn_auto_on_chain():
    doc = json.loads(MINIMAL)
    doc.update(cells=3, couplings=[{"a": 1, "b": 2}, {"a": 2, "b": 3}], nnn={"auto": True})
    doc["clock_zones"][0]["cells"] = [1, 2, 3]
    c = parse_circuit(json.dumps(doc))
    assert [(p.a, p.b, p.j) for p in c.nnn_couplings] == [(1, 3, 1 / 32)]


def test_nnn_auto_needs_chain():
    doc = json.loads(MINIMAL)
    doc.update(cells=3, couplings=[{"a": 1, "b": 2}, {"a": 1, "b": 3}], nnn={"auto": True})
    doc["clock_zones"][0]["cells"] = [1, 2, 3]
    with pytest.raises(ConfigError, match="nnn.auto"):
        parse_config(json.dumps(doc))


def test_explicit_nnn_pairs_use_factor():
    doc = json.loads(MINIMAL)
    doc.update(cells=3, couplings=[{"a": 1, "b": 2}, {"a": 2, "b": 3}],
               nnn={"factor": 0.1, "pairs": [{"a": 1, "b": 3}]})
    doc["clock_zones"][0]["cells"] = [1, 2, 3]
    assert parse_circuit(json.dumps(doc)).nnn_couplings[0].j == 0.1


def test_run_length_beyond_schedule_rejected():
    text = MINIMAL.replace('"p1": -1}', '"p1": -1, "t_f": 5}')
    with pytest.raises(ConfigError, match="t_f"):
        parse_config(text)


def test_bad_initial_state():
    text = MINIMAL.replace('"t_f": 10', '"t_f": 10, "initial_state": "012"')
    with pytest.raises(ConfigError, match="initial_state"):
        parse_config(text)
