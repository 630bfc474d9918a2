import csv

import numpy as np
import pytest

from smemsynth.explorer import MemoryConfig, UserSpec, enumerate_configs
from smemsynth.floorplan import (
    GridGeometry,
    check_floorplan,
    estimate_dimensions,
    format_floorplan,
    realize,
    sram_pin_names,
    write_floorplan,
    write_floorplan_csv,
)
from smemsynth.floorplan.realize import Placement

CFG = MemoryConfig(variant="ba_32x8", R=2, C=1, K=2, M=2)


def test_grid_geometry_of_a_known_config(lib_32x8):
    grid = GridGeometry(CFG, lib_32x8)

    assert (grid.macro_w, grid.macro_h) == (1560, 2432)
    assert grid.bank_w == 1560 + 156
    assert grid.bank_h == 2 * 2432 + 640
    assert (grid.die_w, grid.die_h) == (3588, 12288)
    assert estimate_dimensions(CFG, lib_32x8) == (3588, 12288)


def test_realized_die_matches_the_estimate(lib):
    rng = np.random.default_rng(5)
    configs = []
    for words, bits in ((256, 8), (512, 16), (2048, 32), (1024, 64)):
        configs.extend(enumerate_configs(UserSpec(words=words, bits=bits), lib))
    for index in rng.choice(len(configs), size=50, replace=False):
        cfg = configs[int(index)]
        fp = realize(cfg, lib)

        assert (fp.die_w, fp.die_h) == estimate_dimensions(cfg, lib), cfg.label
        assert fp.bounding_box() == (fp.die_w, fp.die_h), cfg.label
        assert check_floorplan(fp, cfg) == [], cfg.label


def test_every_macro_is_placed_once(lib_32x8):
    fp = realize(CFG, lib_32x8)
    names = sorted(item.instance for item in fp.of_kind("macro"))

    assert names == ["ba_r0_c0_k0", "ba_r0_c0_k1", "ba_r1_c0_k0", "ba_r1_c0_k1"]
    assert len(fp.of_kind("periph_region")) == 2 + CFG.R * CFG.C


def test_rails_alternate_and_repeat(lib_32x8, tech):
    fp = realize(CFG, lib_32x8)
    rails = fp.of_kind("power_rail")

    assert len(rails) == fp.die_h // tech.tracks_nm(tech.rail_pitch_tracks) + 1
    assert [rail.instance for rail in rails[:3]] == ["vss_0", "vdd_1", "vss_2"]
    assert all(rail.w == fp.die_w for rail in rails)


def test_every_port_bit_gets_a_pin(lib_32x8):
    fp = realize(CFG, lib_32x8)
    pins = [item.instance for item in fp.of_kind("pin")]

    assert pins == sram_pin_names(CFG, lib_32x8)
    assert len(pins) == 3 + 2 * 8 + 2 * 4
    assert "raddr[7]" in pins


def test_transpose_swaps_the_die(lib_32x8):
    fp = realize(CFG, lib_32x8)
    flipped = realize(CFG, lib_32x8, transpose=True)

    assert flipped.transposed
    assert (flipped.die_w, flipped.die_h) == (fp.die_h, fp.die_w)
    assert flipped.transpose().placements == fp.placements
    assert check_floorplan(flipped, CFG) == []


def test_aspect_ratio_miss_is_flagged(lib_32x8):
    assert not realize(CFG, lib_32x8).ar_miss
    assert realize(CFG, lib_32x8, ar_target=1.0).ar_miss
    assert not realize(CFG, lib_32x8, ar_target=12288 / 3588).ar_miss
    # transposed dies measure width over height
    assert not realize(CFG, lib_32x8, ar_target=3588 / 12288, transpose=True).ar_miss


def test_logic_area_widens_the_decoder_strip(lib_32x8):
    narrow = realize(CFG, lib_32x8, logic_area=10.0)
    wide = realize(CFG, lib_32x8, logic_area=100.0)

    assert narrow.die_w == 3588
    assert wide.die_w > 3588
    assert wide.die_w == estimate_dimensions(CFG, lib_32x8, logic_area=100.0)[0]


def test_checker_reports_overlap_and_outside(lib_32x8):
    fp = realize(CFG, lib_32x8)
    intruder = Placement("ba_r0_c0_k0", "macro", 1872, 1280, 1560, 2432)
    broken = fp.__class__(fp.name, fp.die_w, fp.die_h, fp.placements + (intruder,))
    found = check_floorplan(broken, CFG)

    assert any(message.startswith("overlap:") for message in found)
    assert "coverage: ba_r0_c0_k0 placed 2 times" in found

    outside = fp.__class__(fp.name, fp.die_w - 1, fp.die_h, fp.placements)
    assert any(message.startswith("outside:") for message in check_floorplan(outside, CFG))


def test_exports(lib_32x8, tmp_path):
    fp = realize(CFG, lib_32x8, ar_target=1.0)
    text = format_floorplan(fp)

    assert text.splitlines()[:3] == [f"# floorplan {CFG.label}", "die 3588 12288", "# aspect ratio target missed"]
    assert "rect ba_r1_c0_k1 macro 1872 9216 1560 2432" in text.splitlines()

    write_floorplan(fp, tmp_path / "floorplan.txt")
    assert (tmp_path / "floorplan.txt").read_text() == text

    write_floorplan_csv(fp, tmp_path / "floorplan.csv")
    with open(tmp_path / "floorplan.csv", newline="") as handle:
        rows = list(csv.reader(handle))
    assert rows[0] == ["instance", "kind", "x_nm", "y_nm", "w_nm", "h_nm"]
    assert len(rows) == len(fp.placements) + 1


@pytest.mark.parametrize("K", [1, 4])
def test_bank_height_follows_k(lib_32x8, K):
    cfg = MemoryConfig(variant="ba_32x8", K=K)
    assert estimate_dimensions(cfg, lib_32x8)[1] == K * 2432 + 640 + 1280
