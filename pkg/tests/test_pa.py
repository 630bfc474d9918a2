import csv
import itertools

import numpy as np
import pytest
from pydantic import ValidationError

from smemsynth.base import ConstraintError
from smemsynth.explorer import evaluate_ppa, global_decoder_area
from smemsynth.netlist import check_wellformed, format_hdl
from smemsynth.pa import (
    PAWindowSpec,
    bank_config,
    compare_pa_ppa,
    generate_pa_sm,
    generate_pa_tm,
    map_pixel,
    pa_model,
    pack_window,
    random_image,
    read_window,
    reference_window,
    store_image,
    sweep_windows,
    unpack_window,
    window_access_plan,
    write_comparison,
    write_sweep,
)
from smemsynth.sim import verify_pa

SPEC = PAWindowSpec(m=5, n=5, a=1, b=1)


def test_map_pixel_interleaves_low_bits():
    assert map_pixel(SPEC, 0, 0) == (0, 0, 0, 0)
    assert map_pixel(SPEC, 3, 4) == (1, 0, 1, 2)
    assert map_pixel(SPEC, 31, 31) == (1, 1, 15, 15)
    with pytest.raises(ConstraintError):
        map_pixel(SPEC, 32, 0)


def test_plan_reads_every_bank_once():
    plan = window_access_plan(SPEC, 3, 4)

    assert plan.rotation == (1, 0)
    assert plan.reads == {(0, 0): (2, 2), (0, 1): (2, 2), (1, 0): (1, 2), (1, 1): (1, 2)}


def test_plan_wraps_at_the_image_edge():
    plan = window_access_plan(SPEC, 31, 0)

    assert plan.rotation == (1, 0)
    assert plan.reads[(0, 0)] == (0, 0)
    assert plan.reads[(1, 0)] == (15, 0)


def test_pixel_mapping_is_a_bijection():
    spec = PAWindowSpec(m=4, n=3, a=2, b=1)
    locations = {map_pixel(spec, x, y) for x in range(spec.width) for y in range(spec.height)}
    assert len(locations) == spec.width * spec.height


def test_window_must_fit_the_image():
    with pytest.raises(ValidationError):
        PAWindowSpec(m=2, n=2, a=3, b=1)


def _sweep_specs(top: int):
    for m, n, a, b in itertools.product(range(3, top), range(3, top), range(3), range(3)):
        yield PAWindowSpec(m=m, n=n, a=a, b=b, pixel_bits=8)


@pytest.mark.parametrize(
    "boundary, top",
    [pytest.param("wrap", 7, marks=pytest.mark.slow), ("clamp", 5)],
)
def test_every_origin_reads_the_reference_window(boundary, top):
    for spec in _sweep_specs(top):
        image = random_image(spec, seed=spec.m * 16 + spec.n)
        banks = store_image(spec, image)
        for x in range(spec.width):
            for y in range(spec.height):
                plan = window_access_plan(spec, x, y)
                # one read per bank, all banks distinct
                assert len(plan.reads) == spec.bank_count
                window = read_window(spec, banks, plan, boundary)
                assert np.array_equal(window, reference_window(image, spec, x, y, boundary)), (spec.label, x, y)


def test_store_image_places_pixels_in_their_banks():
    spec = PAWindowSpec(m=3, n=3, a=1, b=1)
    image = random_image(spec, seed=5)
    banks = store_image(spec, image)
    for x in range(spec.width):
        for y in range(spec.height):
            location = map_pixel(spec, x, y)
            assert banks[location.bank_p, location.bank_q, location.row, location.col] == image[x, y]


def test_window_packing_is_reversible():
    spec = PAWindowSpec(m=3, n=3, a=2, b=1, pixel_bits=4)
    window = np.arange(8, dtype=np.int64).reshape(4, 2)
    assert np.array_equal(unpack_window(spec, pack_window(spec, window)), window)
    assert pack_window(spec, window) & 0xF == 0
    assert (pack_window(spec, window) >> 4) & 0xF == 1


def test_bank_config_covers_full_axis_windows(lib):
    assert bank_config(SPEC, lib).key == ("ba_16x8", 1, 1, 16, 1)
    # the window spans the whole image along x: one row per bank
    assert bank_config(PAWindowSpec(m=2, n=3, a=2, b=1), lib).key == ("ba_1x8", 1, 1, 4, 1)
    assert bank_config(PAWindowSpec(m=3, n=2, a=1, b=2), lib).key == ("ba_4x8", 1, 1, 1, 1)


@pytest.mark.parametrize("generate", [generate_pa_sm, generate_pa_tm])
@pytest.mark.parametrize("m, n, a, b", [(2, 3, 2, 1), (3, 2, 1, 2), (2, 2, 2, 2)])
def test_full_axis_window_reads_every_origin(lib, generate, m, n, a, b):
    spec = PAWindowSpec(m=m, n=n, a=a, b=b, pixel_bits=8)
    ir = generate(spec, lib)

    assert check_wellformed(ir) == []
    report = verify_pa(ir, seed=4)
    assert report.origins == spec.width * spec.height
    assert report.passed, report.failures
    assert f"module {bank_config(spec, lib).variant}" in format_hdl(ir)


@pytest.mark.parametrize("generate", [generate_pa_sm, generate_pa_tm])
@pytest.mark.parametrize("pixel_bits, variant", [(3, "ba_4x4"), (12, "ba_4x16")])
def test_odd_pixel_widths_round_up_the_bank_macro(lib, generate, pixel_bits, variant):
    spec = PAWindowSpec(m=3, n=3, a=1, b=1, pixel_bits=pixel_bits)
    assert bank_config(spec, lib).variant == variant

    ir = generate(spec, lib)
    assert check_wellformed(ir) == []
    assert ir.ports["win"].width == 4 * pixel_bits
    assert ir.ports["wdata"].width == pixel_bits
    report = verify_pa(ir, seed=2)
    assert report.passed, report.failures

    hdl = format_hdl(ir)
    assert f"module {variant} " in hdl
    pad = spec.bank_width - pixel_bits
    assert f"{{{{{pad}{{1'b0}}}}, wdata}}" in hdl


def test_odd_pixel_width_models_like_its_padded_bank(lib):
    spec = PAWindowSpec(m=5, n=5, a=1, b=1, pixel_bits=12)
    comparison = compare_pa_ppa(spec, lib)

    assert comparison.area_ratio < 1
    assert pa_model(spec, lib, None, "sm").bank == evaluate_ppa(bank_config(spec, lib), lib)



def test_sm_shares_two_decoders(lib):
    ir = generate_pa_sm(SPEC, lib)

    assert ir.count("decoder") == 2
    assert ir.count("baplus_instance") == SPEC.bank_count * SPEC.cols
    assert ir.count("pa_increment") == SPEC.bank_count
    assert ir.ports["win"].width == 4 * 8
    assert check_wellformed(ir) == []


def test_tm_has_one_sram_per_bank(lib):
    ir = generate_pa_tm(SPEC, lib)

    assert len(ir.top_module.cells_of("submodule")) == 4
    assert ir.count("decoder") == 8
    assert ir.count("addr_translate") == 4
    assert check_wellformed(ir) == []


def test_unknown_boundary_is_rejected(lib):
    with pytest.raises(ConstraintError):
        generate_pa_sm(SPEC, lib, boundary="mirror")


def test_pa_model_builds_on_the_bank_estimate(lib, tech):
    bank = evaluate_ppa(bank_config(SPEC, lib), lib)
    sm, tm = pa_model(SPEC, lib, None, "sm"), pa_model(SPEC, lib, None, "tm")
    align_area = tech.a_mux_bit * 8 * 4 * 2
    align_delay = tech.m0 + tech.m1 * 2

    assert sm.bank == tm.bank == bank
    assert tm.area == pytest.approx(4 * (bank.area + tech.a_ctrl + tech.a_xlat_bit * 8) + align_area)
    assert tm.t_cycle == pytest.approx(bank.t_cycle + tech.t_xlat_bit * 8 + align_delay)
    assert tm.p_leak == pytest.approx(4 * bank.p_leak)
    assert sm.t_cycle == pytest.approx(bank.t_cycle + tech.t_inc + align_delay)
    assert sm.p_leak == pytest.approx(4 * (bank.p_leak - tech.p_leak_periph) + tech.p_leak_periph)
    # sharing removes the per-bank global decoders
    assert tm.area - sm.area > 4 * global_decoder_area(bank_config(SPEC, lib), tech)


def test_sm_is_smaller_and_more_efficient_than_tm(lib):
    comparison = compare_pa_ppa(SPEC, lib)

    assert 0.60 <= comparison.area_ratio <= 0.85
    assert comparison.sm.gops_per_watt > comparison.tm.gops_per_watt
    assert comparison.sm.area == pytest.approx(243.181, abs=1e-3)
    assert comparison.sm.t_cycle == pytest.approx(231)
    assert comparison.tm.t_cycle == pytest.approx(257)
    assert comparison.sm.e_op == pytest.approx(10.672, abs=1e-3)



def test_wider_window_keeps_energy_per_pixel_close(lib):
    points = sweep_windows(5, 5, lib)

    assert [point.window for point in points] == ["2x2", "4x2", "2x4", "4x4"]
    assert points[0].area_norm == pytest.approx(1.0)
    assert abs(points[1].e_op_norm - 1) <= 0.15
    assert points[3].area_norm > points[1].area_norm


def test_comparison_and_sweep_reports(lib, tmp_path):
    write_comparison(compare_pa_ppa(SPEC, lib), tmp_path / "compare.csv")
    write_sweep(sweep_windows(5, 5, lib), tmp_path / "sweep.csv")

    with open(tmp_path / "compare.csv", newline="") as handle:
        rows = list(csv.reader(handle))
    assert [row[0] for row in rows] == ["design", "SM", "TM"]
    with open(tmp_path / "sweep.csv", newline="") as handle:
        assert len(list(csv.reader(handle))) == 5
