import csv
import json

import pytest

import plugins.pa
from main import main
from smemsynth.baplus import read_library
from smemsynth.explorer import MemoryConfig
from smemsynth.netlist import read_netlist, sram_config
from smemsynth.sim import PAVerifyReport


@pytest.fixture
def lib_32x8_file(tmp_path):
    out = tmp_path / "lib"
    assert main(["genlib", "--entries", "32", "--widths", "8", "--out", str(out)]) == 0
    return out / "library.json"


def _spec(fixtures_dir, name):
    return str(fixtures_dir / "specs" / name)


def test_genlib_writes_a_library(tmp_path):
    assert main(["genlib", "--entries", "8,16", "--widths", "8", "--out", str(tmp_path)]) == 0
    assert read_library(tmp_path / "library.json").names == ["ba_8x8", "ba_16x8"]
    with open(tmp_path / "library_norm.csv", newline="") as handle:
        rows = list(csv.reader(handle))
    assert [row[0] for row in rows[1:]] == ["ba_8x8", "ba_16x8"]
    assert rows[1][-3:] == ["1.000000", "1.000000", "1.000000"]
    assert float(rows[2][-3]) > 1


def test_genlib_rejects_out_of_range_entries(tmp_path):
    assert main(["genlib", "--entries", "4", "--out", str(tmp_path)]) == 2


def test_explore_reports_all_configurations(fixtures_dir, lib_32x8_file, out_dir):
    code = main(
        ["explore", "--spec", _spec(fixtures_dir, "mem_256x8.json"), "--lib", str(lib_32x8_file), "--out", str(out_dir)]
    )
    assert code == 0

    with open(out_dir / "explore.csv", newline="") as handle:
        assert len(list(csv.reader(handle))) == 11
    assert len((out_dir / "plot.dat").read_text().splitlines()) == 11
    chosen = json.loads((out_dir / "chosen.json").read_text())
    assert chosen["config"]["variant"] == "ba_32x8"
    assert chosen["feasible"]


def test_explore_is_deterministic(fixtures_dir, tmp_path):
    outputs = []
    for run in ("a", "b"):
        out = tmp_path / run
        assert main(["explore", "--spec", _spec(fixtures_dir, "mem_256x16.json"), "--out", str(out)]) == 0
        outputs.append([(out / name).read_bytes() for name in ("explore.csv", "plot.dat", "chosen.json")])
    assert outputs[0] == outputs[1]


def test_synth_from_config(fixtures_dir, lib_32x8_file, out_dir):
    config = _spec(fixtures_dir, "config_ba32x8_r2c1k2m2.json")
    assert main(["synth", "--config", config, "--lib", str(lib_32x8_file), "--out", str(out_dir)]) == 0

    ir = read_netlist(out_dir / "sram.net")
    assert sram_config(ir) == MemoryConfig(variant="ba_32x8", R=2, C=1, K=2, M=2)
    assert (out_dir / "sram.v").read_text().count("endmodule") == 2
    assert (out_dir / "floorplan.txt").read_text().startswith("# floorplan ")
    with open(out_dir / "floorplan.csv", newline="") as handle:
        assert next(csv.reader(handle)) == ["instance", "kind", "x_nm", "y_nm", "w_nm", "h_nm"]


def test_synth_from_spec_and_transpose(fixtures_dir, tmp_path):
    straight, flipped = tmp_path / "straight", tmp_path / "flipped"
    spec = _spec(fixtures_dir, "mem_1024x32.json")
    assert main(["synth", "--spec", spec, "--out", str(straight)]) == 0
    assert main(["synth", "--spec", spec, "--transpose", "--out", str(flipped)]) == 0

    die = (straight / "floorplan.txt").read_text().splitlines()[1].split()
    flipped_die = (flipped / "floorplan.txt").read_text().splitlines()[1].split()
    assert flipped_die == ["die", die[2], die[1]]
    assert (straight / "sram.v").read_bytes() == (flipped / "sram.v").read_bytes()


def test_synth_needs_a_source(out_dir):
    assert main(["synth", "--out", str(out_dir)]) == 2


def test_pa_generates_and_verifies(fixtures_dir, out_dir):
    assert main(["pa", "--spec", _spec(fixtures_dir, "pa_m3n3a1b1.json"), "--sweep", "--out", str(out_dir)]) == 0

    for name in ("pa_sm.net", "pa_sm.v", "pa_tm.net", "pa_tm.v", "pa_compare.csv", "pa_sweep.csv"):
        assert (out_dir / name).is_file(), name
    assert (out_dir / "verify.txt").read_text().splitlines() == [
        "pa_sm origins=64 mismatches=0 conflicts=0",
        "pa_tm origins=64 mismatches=0 conflicts=0",
    ]


def test_pa_reports_verification_failure(fixtures_dir, out_dir, monkeypatch):
    monkeypatch.setattr(
        plugins.pa, "verify_pa", lambda ir, seed=0: PAVerifyReport(design=ir.top, origins=64, mismatches=1)
    )
    assert main(["pa", "--spec", _spec(fixtures_dir, "pa_m3n3a1b1.json"), "--out", str(out_dir)]) == 1
    assert "mismatches=1" in (out_dir / "verify.txt").read_text()


def test_pa_rejects_a_bad_geometry(tmp_path, out_dir):
    spec = tmp_path / "pa.json"
    spec.write_text(json.dumps({"m": 2, "n": 2, "a": 3, "b": 1}))
    assert main(["pa", "--spec", str(spec), "--out", str(out_dir)]) == 2


def test_sim_on_a_synthesized_netlist(fixtures_dir, lib_32x8_file, tmp_path):
    synth_out = tmp_path / "synth"
    config = _spec(fixtures_dir, "config_ba32x8_r2c1k2m2.json")
    assert main(["synth", "--config", config, "--lib", str(lib_32x8_file), "--out", str(synth_out)]) == 0
    netlist = str(synth_out / "sram.net")

    empty = tmp_path / "empty"
    assert main(["sim", "--netlist", netlist, "--trace", str(fixtures_dir / "traces" / "empty.trace"), "--out", str(empty)]) == 0
    lines = (empty / "sim.out").read_text().splitlines()
    assert [line for line in lines if line.startswith("OUT")] == []
    assert lines[-1].startswith("# cycles=0 ")

    random = tmp_path / "random"
    assert main(["sim", "--netlist", netlist, "--ops", "40", "--lib", str(lib_32x8_file), "--out", str(random)]) == 0
    assert any(line.startswith("OUT ") for line in (random / "sim.out").read_text().splitlines())

    replay = tmp_path / "replay"
    trace = str(random / "trace.txt")
    assert main(["sim", "--netlist", netlist, "--trace", trace, "--lib", str(lib_32x8_file), "--out", str(replay)]) == 0
    assert (replay / "sim.out").read_bytes() == (random / "sim.out").read_bytes()


def test_sim_needs_a_trace(fixtures_dir, tmp_path):
    netlist = tmp_path / "x.net"
    netlist.write_text("top t\nmodule t\nendmodule\n")
    assert main(["sim", "--netlist", str(netlist), "--out", str(tmp_path / "out")]) == 2


def test_leafcell_tabulates_fixtures(fixtures_dir, out_dir):
    assert main(["leafcell", "--fixtures", str(fixtures_dir / "layouts"), "--out", str(out_dir)]) == 0

    with open(out_dir / "leafcell.csv", newline="") as handle:
        table = list(csv.reader(handle))
    assert len(table) == 8
    assert (out_dir / "restrictions.txt").read_text() == ""


@pytest.mark.parametrize("command", ["explore", "pa"])
def test_missing_spec_file_is_a_usage_error(command, tmp_path):
    assert main([command, "--spec", str(tmp_path / "nope.json"), "--out", str(tmp_path / "out")]) == 2
    assert not (tmp_path / "out").exists()


def test_malformed_spec_is_a_usage_error(tmp_path):
    spec = tmp_path / "mem.json"
    spec.write_text("{\"words\": 256,")
    assert main(["explore", "--spec", str(spec), "--out", str(tmp_path / "out")]) == 2


def test_library_with_a_non_power_of_two_width_is_rejected(fixtures_dir, lib_32x8_file, tmp_path):
    document = json.loads(lib_32x8_file.read_text())
    document["macros"][0]["W"] = 12
    broken = tmp_path / "broken.json"
    broken.write_text(json.dumps(document))

    spec = _spec(fixtures_dir, "mem_256x8.json")
    assert main(["explore", "--spec", spec, "--lib", str(broken), "--out", str(tmp_path / "out")]) == 2
