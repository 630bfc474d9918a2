import json

import pytest

from smemsynth.baplus import (
    DEFAULT_TECH,
    MacroLibrary,
    TechParams,
    default_library,
    generate_variant,
    load_library,
    read_library,
    read_tech,
    normalized_library,
    save_library,
    write_normalized_library,
)
from smemsynth.base import BoundsError, DuplicateNameError, LibraryParseError, UnknownVariantError


def test_generate_variant_follows_the_analytic_model(tech):
    macro = generate_variant(32, 8, tech)

    assert macro.name == "ba_32x8"
    assert macro.height_tracks == 32 + 6
    assert macro.width_pitches == 2 * 8 + 4
    assert macro.t_access == pytest.approx(40 + 1.5 * 32 + 0.5 * 8)
    assert macro.e_read == pytest.approx(2 + 0.6 * 8 + 0.05 * 32 * 0.5)
    assert macro.e_write == pytest.approx(2.5 + 0.8 * 8 + 0.05 * 32 * 0.5)
    assert macro.p_leak == pytest.approx(0.02 * 32 * 8)
    assert macro.width_nm(tech) == 20 * 78
    assert macro.height_nm(tech) == 38 * 64


def test_taller_variant_is_slower_and_larger_but_wider_costs_energy(tech):
    tall = generate_variant(64, 8, tech)
    wide = generate_variant(32, 16, tech)

    assert wide.t_access < tall.t_access
    assert wide.area_um2(tech) < tall.area_um2(tech)
    assert tall.e_read < wide.e_read


@pytest.mark.parametrize("B, W", [(4, 8), (128, 8), (24, 8), (8, 0)])
def test_generate_variant_rejects_out_of_bounds_dimensions(B, W):
    with pytest.raises(BoundsError):
        generate_variant(B, W)


def test_explicit_bounds_override_the_default_range():
    macro = generate_variant(4, 2, bounds=(1, 16))
    assert macro.name == "ba_4x2"


def test_default_library_covers_the_grid(lib):
    assert len(lib) == 16
    assert lib.names[0] == "ba_8x8"
    assert "ba_64x64" in lib


def test_library_lookup_and_on_demand_variants(lib_32x8):
    assert lib_32x8.get("ba_32x8").B == 32
    with pytest.raises(UnknownVariantError):
        lib_32x8.get("ba_16x8")

    generated = lib_32x8.variant_for(2, 4)
    assert generated.name == "ba_2x4"
    assert "ba_2x4" not in lib_32x8


def test_duplicate_names_are_rejected():
    with pytest.raises(DuplicateNameError):
        MacroLibrary([generate_variant(8, 8), generate_variant(8, 8)])


def test_save_and_read_library(tmp_path, lib):
    path = tmp_path / "library.json"
    save_library(lib, path)

    loaded = read_library(path)
    assert loaded == lib
    assert [macro.name for macro in load_library(path)] == lib.names
    assert read_tech(path) == DEFAULT_TECH


def test_saved_library_keeps_custom_tech(tmp_path):
    tech = TechParams(a0=55.0)
    lib = default_library(tech, entries=(8,), widths=(8, 16))
    path = tmp_path / "library.json"
    save_library(lib, path)

    loaded = read_library(path)
    assert loaded.tech.a0 == 55.0
    assert loaded.get("ba_8x16").t_access == pytest.approx(55 + 1.5 * 8 + 0.5 * 16)


def test_empty_library_cannot_be_saved(tmp_path):
    with pytest.raises(LibraryParseError):
        save_library([], tmp_path / "library.json")


def _document(tmp_path, lib):
    path = tmp_path / "library.json"
    save_library(lib, path)
    return path, json.loads(path.read_text())


def test_missing_field_reports_its_location(tmp_path, lib_32x8):
    path, document = _document(tmp_path, lib_32x8)
    del document["macros"][0]["t_access_ps"]
    path.write_text(json.dumps(document))

    with pytest.raises(LibraryParseError) as info:
        read_library(path)
    assert "macros[0].t_access_ps" in info.value.location


def test_unknown_field_is_rejected(tmp_path, lib_32x8):
    path, document = _document(tmp_path, lib_32x8)
    document["macros"][0]["colour"] = "red"
    path.write_text(json.dumps(document))

    with pytest.raises(LibraryParseError):
        read_library(path)


def test_duplicate_name_in_document(tmp_path, lib_32x8):
    path, document = _document(tmp_path, lib_32x8)
    document["macros"].append(document["macros"][0])
    path.write_text(json.dumps(document))

    with pytest.raises(DuplicateNameError):
        read_library(path)


def test_malformed_json_reports_line(tmp_path):
    path = tmp_path / "library.json"
    path.write_text('{"tech": {},\n "macros": [}')

    with pytest.raises(LibraryParseError) as info:
        read_library(path)
    assert ":2:" in info.value.location


@pytest.mark.parametrize("field, value", [("B", 12), ("W", 6)])
def test_non_power_of_two_dimensions_are_rejected(tmp_path, lib_32x8, field, value):
    path, document = _document(tmp_path, lib_32x8)
    document["macros"][0][field] = value
    path.write_text(json.dumps(document))

    with pytest.raises(LibraryParseError) as info:
        read_library(path)
    assert "not a power of two" in str(info.value)
    assert "macros[0]" in info.value.location


def test_library_normalizes_to_the_reference_variant(lib, tech):
    rows = {row.macro.name: row for row in normalized_library(lib)}

    assert list(rows) == lib.names
    assert rows["ba_32x16"].norm.tolist() == [1.0, 1.0, 1.0]
    # 40 + 1.5*64 + 0.5*16 against 40 + 1.5*32 + 0.5*16
    assert rows["ba_64x16"].norm[0] == pytest.approx(144 / 96)
    assert rows["ba_64x64"].norm[1] > rows["ba_64x16"].norm[1] > 1
    macro = lib.get("ba_8x8")
    assert rows["ba_8x8"].metrics[2] == pytest.approx(macro.e_read * macro.t_access)
    assert rows["ba_8x8"].norm[2] < 1


def test_normalized_report_falls_back_to_the_first_macro(tmp_path, lib_32x8):
    path = tmp_path / "library_norm.csv"
    write_normalized_library(normalized_library(lib_32x8), path)

    lines = path.read_text().splitlines()
    assert lines[0] == "variant,B,W,t_access_ps,area_um2,edp_fj_ps,t_access_norm,area_norm,edp_norm"
    assert lines[1].startswith("ba_32x8,32,8,")
    assert lines[1].endswith(",1.000000,1.000000,1.000000")
