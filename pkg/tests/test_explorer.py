import csv
import itertools

import numpy as np
import pytest
from pydantic import ValidationError

from smemsynth.baplus import MacroLibrary
from smemsynth.base import ConstraintError, UnknownVariantError
from smemsynth.explorer import (
    REPORT_HEADER,
    MemoryConfig,
    PPAEstimate,
    UserSpec,
    dominated_mask,
    enumerate_configs,
    evaluate_ppa,
    explore,
    pareto_front,
    select_best,
    traditional_baseline,
    write_plot_data,
    write_report,
)
from smemsynth.floorplan import estimate_dimensions
from smemsynth.utils import is_pow2, pow2_upto


def test_256x8_over_one_variant_gives_ten_configs(lib_32x8):
    configs = enumerate_configs(UserSpec(words=256, bits=8), lib_32x8)

    assert len(configs) == 10
    assert configs == sorted(configs, key=lambda cfg: cfg.key)
    for cfg in configs:
        assert cfg.words(32) == 256
        assert cfg.bits(8) == 8


def test_unreachable_width_gives_no_configs(lib_32x8):
    assert enumerate_configs(UserSpec(words=256, bits=3), lib_32x8) == []


def test_empty_library_cannot_be_explored():
    with pytest.raises(ConstraintError):
        enumerate_configs(UserSpec(words=256, bits=8), MacroLibrary([]))


def _brute_force(spec, lib):
    limit = spec.words
    max_r, max_c, max_k, max_m = spec.bounds or (limit, limit, limit, limit)
    found = set()
    for macro in lib:
        for R, K, M in itertools.product(pow2_upto(limit), repeat=3):
            if R * K * macro.B * M != spec.words or R > max_r or K > max_k or M > max_m:
                continue
            for C in pow2_upto(min(limit, max_c)):
                if C * macro.W == spec.bits * M:
                    found.add((macro.name, R, C, K, M))
    return found


def test_enumeration_matches_brute_force(lib):
    rng = np.random.default_rng(7)
    for _ in range(50):
        words = 1 << int(rng.integers(3, 13))
        bits = int(rng.choice([4, 8, 12, 16, 24, 32, 64, 128]))
        bounds = None
        if rng.random() < 0.3:
            bounds = tuple(int(value) for value in rng.choice([1, 2, 4, 8, 16], size=4))
        spec = UserSpec(words=words, bits=bits, bounds=bounds)

        configs = enumerate_configs(spec, lib)
        assert {cfg.key for cfg in configs} == _brute_force(spec, lib), spec


def test_aspect_ratio_filter(lib, tech):
    spec = UserSpec(words=1024, bits=32, aspect_ratio_target=1.0, aspect_ratio_tol=0.3)
    unconstrained = enumerate_configs(spec.model_copy(update={"aspect_ratio_target": None}), lib)
    configs = enumerate_configs(spec, lib)

    assert 0 < len(configs) < len(unconstrained)
    for cfg in configs:
        w_nm, h_nm = estimate_dimensions(cfg, lib, tech)
        assert abs(h_nm / w_nm - 1.0) <= 0.3


def test_memory_config_rejects_non_powers_of_two():
    with pytest.raises(ValidationError):
        MemoryConfig(variant="ba_32x8", R=3)


def test_column_mux_must_divide_the_row():
    with pytest.raises(ConstraintError):
        MemoryConfig(variant="ba_32x8", C=1, M=16).bits(8)


def test_single_macro_config_reduces_to_the_macro(lib_32x8, tech):
    cfg = MemoryConfig(variant="ba_32x8")
    macro = lib_32x8.get("ba_32x8")
    estimate = evaluate_ppa(cfg, lib_32x8, tech)
    w_nm, h_nm = estimate_dimensions(cfg, lib_32x8, tech)

    assert estimate.t_cycle == pytest.approx(macro.t_access + tech.d0)
    assert estimate.area == pytest.approx(macro.area_um2(tech) * (1 + tech.periph_fraction))
    assert estimate.e_op == pytest.approx(
        tech.e_dec0 + tech.e_dec1 * 5 + macro.e_read + tech.e_wire_per_um * (w_nm + h_nm) / 1000
    )
    assert estimate.p_leak == pytest.approx(macro.p_leak + tech.p_leak_periph)


def test_cycle_time_grows_with_k(lib_32x8):
    times = [evaluate_ppa(MemoryConfig(variant="ba_32x8", K=K), lib_32x8).t_cycle for K in (1, 2, 4, 8, 16)]
    assert times == sorted(times)
    assert len(set(times)) == len(times)


def test_unknown_variant_is_reported(lib_32x8):
    with pytest.raises(UnknownVariantError):
        evaluate_ppa(MemoryConfig(variant="ba_64x8"), lib_32x8)


def _estimate(area, t_cycle, e_op):
    return PPAEstimate.from_metrics(area, t_cycle, e_op, 1.0)


def test_pareto_front_drops_dominated_points():
    points = [
        ("a", _estimate(1, 5, 5)),
        ("b", _estimate(2, 2, 2)),
        ("c", _estimate(3, 3, 3)),
        ("d", _estimate(1, 5, 5)),
        ("e", _estimate(5, 1, 6)),
    ]
    assert [name for name, _ in pareto_front(points)] == ["a", "b", "d", "e"]
    assert pareto_front([]) == []


def _dominated_oracle(objectives):
    flags = []
    for i, point in enumerate(objectives):
        flags.append(
            any(
                all(other[k] <= point[k] for k in range(3)) and any(other[k] < point[k] for k in range(3))
                for j, other in enumerate(objectives)
                if j != i
            )
        )
    return flags


def test_dominance_matches_quadratic_oracle():
    rng = np.random.default_rng(11)
    for _ in range(100):
        cloud = rng.integers(0, 25, size=(200, 3)).astype(float)
        assert dominated_mask(cloud).tolist() == _dominated_oracle(cloud.tolist())


def _cfg(K):
    return MemoryConfig(variant="ba_32x8", K=K)


def test_select_best_prefers_small_area_within_limits():
    front = [
        (_cfg(1), _estimate(10, 300, 10)),
        (_cfg(2), _estimate(20, 200, 10)),
        (_cfg(4), _estimate(30, 100, 10)),
    ]
    choice = select_best(front, UserSpec(words=256, bits=8, t_max=250))

    assert choice.config == _cfg(2)
    assert choice.feasible
    assert choice.violation == pytest.approx(200 / 250 - 1)


def test_select_best_breaks_area_ties_on_cycle_time():
    front = [(_cfg(1), _estimate(10, 300, 10)), (_cfg(2), _estimate(10, 200, 10))]
    assert select_best(front, UserSpec(words=256, bits=8)).config == _cfg(2)


def test_select_best_flags_least_violating_point():
    front = [(_cfg(1), _estimate(10, 300, 10)), (_cfg(2), _estimate(20, 120, 30))]
    choice = select_best(front, UserSpec(words=256, bits=8, t_max=100, e_max=20))

    assert not choice.feasible
    assert choice.config == _cfg(2)
    assert choice.violation == pytest.approx(0.5)


def test_select_best_needs_points():
    with pytest.raises(ValueError):
        select_best([], UserSpec(words=256, bits=8))


def test_synthesized_config_beats_traditional_baseline(lib, tech):
    selection = explore(UserSpec(words=256, bits=16), lib).selection
    baseline = traditional_baseline(selection.config, lib)

    assert selection.config.key == ("ba_64x16", 4, 1, 1, 1)
    assert selection.estimate.gops_per_watt >= 1.05 * baseline.gops_per_watt
    assert baseline.area < selection.estimate.area
    # one 64 x 64 bank behind a 4:1 column mux
    assert baseline.t_cycle == pytest.approx(
        tech.d0 + tech.d1 * 6 + (tech.a0 + tech.a1 * 64 + tech.a2 * 64) * tech.trad_delay_factor + tech.m0 + tech.m1 * 2
    )


def test_traditional_baseline_models_one_compiled_bank(lib, tech):
    narrow = traditional_baseline(MemoryConfig(variant="ba_32x8", R=2, C=1, K=2, M=1), lib)
    wide = traditional_baseline(MemoryConfig(variant="ba_32x8", R=1, C=2, K=1, M=1), lib)

    # depends on the capacity only, not on the BA+ tiling
    same_capacity = traditional_baseline(MemoryConfig(variant="ba_32x8", R=1, C=1, K=4, M=1), lib)
    assert narrow == same_capacity
    assert narrow.area > wide.area
    assert narrow.p_leak == pytest.approx(tech.leak_per_bit_nw * 128 * 8 + tech.p_leak_periph)
    assert narrow.e_write > narrow.e_op


def test_pareto_front_ignores_input_order_and_is_idempotent():
    rng = np.random.default_rng(23)
    for _ in range(20):
        cloud = rng.integers(1, 25, size=(60, 3)).astype(float)
        points = [(index, _estimate(*row)) for index, row in enumerate(cloud)]
        front = pareto_front(points)
        shuffled = [points[int(index)] for index in rng.permutation(len(points))]

        assert sorted(name for name, _ in pareto_front(shuffled)) == [name for name, _ in front]
        assert pareto_front(front) == front


@pytest.mark.parametrize("field, values", [("R", (1, 2, 4, 8)), ("C", (1, 2, 4, 8)), ("M", (1, 2, 4, 8))])
def test_area_and_leakage_never_shrink_with_more_hardware(lib, field, values):
    estimates = [evaluate_ppa(MemoryConfig(variant="ba_32x8", **{field: value}), lib) for value in values]
    areas = np.array([estimate.area for estimate in estimates])
    leakage = np.array([estimate.p_leak for estimate in estimates])

    assert (np.diff(areas) >= 0).all()
    assert (np.diff(leakage) >= 0).all()
    if field != "M":
        # more macros
        assert (np.diff(areas) > 0).all() and (np.diff(leakage) > 0).all()


@pytest.mark.parametrize("scale", [0.25, 3.0])
def test_select_best_ignores_a_common_area_scale(scale):
    rng = np.random.default_rng(5)
    for _ in range(20):
        front = [(_cfg(1 << k), _estimate(*rng.integers(1, 50, size=3))) for k in range(6)]
        scaled = [(cfg, _estimate(est.area * scale, est.t_cycle, est.e_op)) for cfg, est in front]
        for spec in (UserSpec(words=256, bits=8), UserSpec(words=256, bits=8, t_max=25, e_max=30)):
            assert select_best(scaled, spec).config == select_best(front, spec).config



def test_explore_reports_every_config(lib_32x8, tmp_path):
    result = explore(UserSpec(words=256, bits=8), lib_32x8)
    assert len(result.rows) == 10
    assert sum(row.pareto for row in result.rows) == len(result.front)
    assert result.selection.config in {cfg for cfg, _ in result.front}

    path = tmp_path / "explore.csv"
    write_report(result.rows, path)
    with open(path, newline="") as handle:
        rows = list(csv.reader(handle))
    assert rows[0] == REPORT_HEADER
    assert len(rows) == 11
    assert all(is_pow2(int(row[1])) for row in rows[1:])

    plot = tmp_path / "plot.dat"
    write_plot_data(result.rows, plot)
    assert len(plot.read_text().splitlines()) == 11


def test_explore_without_candidates(lib_32x8):
    result = explore(UserSpec(words=256, bits=3), lib_32x8)
    assert result.selection is None
    assert result.rows == ()
