import csv
from fractions import Fraction

import numpy as np
import pytest

from smemsynth.base import LayoutError
from smemsynth.leafcell import (
    METRICS_HEADER,
    GridLayout,
    LayerInfo,
    Ratio,
    Shape,
    check_restrictions,
    count_constructs,
    fin_efficiency,
    layer_direction,
    metrics_report,
    parse_layout,
    power_rail_efficiency,
    read_layout,
    transistor_efficiency,
    write_metrics_report,
)


@pytest.fixture(scope="module")
def layouts(fixtures_dir):
    return {path.stem: read_layout(path) for path in sorted((fixtures_dir / "layouts").glob("*.layout"))}


@pytest.mark.parametrize(
    "stem, transistor",
    [
        ("nand2_x1_10t_unidir", "2/4"),
        ("nand2_x1_10t_bidir", "2/4"),
        ("dffq_x1_10t_unidir", "13/25"),
        ("dffq_x1_10t_bidir", "13/23"),
        ("inv_x1_10t", "1/3"),
        ("aoi22_x1_10t", "4/6"),
    ],
)
def test_cell_efficiencies(layouts, stem, transistor):
    layout = layouts[stem]

    assert str(transistor_efficiency(layout)) == transistor
    assert str(power_rail_efficiency(layout)) == "2/10"
    assert float(fin_efficiency(layout)) == pytest.approx(0.6667, abs=1e-4)


def test_bidirectional_m1_saves_pitches(layouts):
    uni = transistor_efficiency(layouts["dffq_x1_10t_unidir"])
    bi = transistor_efficiency(layouts["dffq_x1_10t_bidir"])
    assert float(bi) > float(uni)


def test_ratio_keeps_its_terms():
    ratio = Ratio(2, 4)
    assert str(ratio) == "2/4"
    assert ratio.value == 0.5
    assert float(Ratio(0, 0)) == 0.0


def test_fin_efficiency_needs_fins():
    with pytest.raises(LayoutError):
        fin_efficiency(GridLayout("empty", 10, 4))


def test_fixture_cells_obey_their_restrictions(layouts):
    for stem, layout in layouts.items():
        assert check_restrictions(layout) == [], stem


def test_track_plan_layers(layouts):
    plan = layouts["track_plan_10t"]

    assert {name: info.restriction for name, info in plan.layers.items()} == {
        "PC": "pure_grating_1d",
        "M1": "pure_grating_1d",
        "M2": "structured_1d",
    }
    assert layer_direction(plan, "M1") == "H"
    assert layer_direction(plan, "PC") == "V"


def test_wrong_direction_on_structured_layer(fixtures_dir):
    text = (fixtures_dir / "layouts" / "track_plan_10t.layout").read_text() + "shape M2 H 3 0 2\n"
    violations = check_restrictions(parse_layout(text))

    assert [(violation.rule, violation.layer) for violation in violations] == [("direction", "M2")]
    assert violations[0].shape == Shape("M2", "H", Fraction(3), Fraction(0), Fraction(2))
    assert str(violations[0]).startswith("direction: M2 H 3 0-2")


def test_bidirectional_metal_breaks_a_unidirectional_class(layouts):
    bidir = layouts["nand2_x1_10t_bidir"]
    violations = check_restrictions(bidir.with_restriction("M1", "structured_1d"))

    assert [violation.rule for violation in violations] == ["direction"]
    assert violations[0].shape.direction == "V"


def test_pure_grating_is_also_structured(fixtures_dir):
    text = (fixtures_dir / "layouts" / "track_plan_10t.layout").read_text().replace("shape PC V 3 0 10\n", "")
    plan = parse_layout(text)

    gaps = check_restrictions(plan)
    assert [(violation.rule, violation.layer) for violation in gaps] == [("coverage", "PC")]
    assert check_restrictions(plan.with_restriction("PC", "structured_1d")) == []


def test_off_grid_shapes_are_flagged():
    layout = GridLayout(
        "offgrid",
        10,
        4,
        layers={"CA": LayerInfo("CA", "compound_2d")},
        shapes=(Shape("CA", "V", Fraction(1, 2), Fraction(1), Fraction(2)),),
    )
    assert [violation.rule for violation in check_restrictions(layout)] == ["off_grid"]


def test_majority_direction_without_declaration():
    layout = GridLayout(
        "mixed",
        10,
        6,
        layers={"M2": LayerInfo("M2", "structured_1d")},
        shapes=(
            Shape("M2", "H", Fraction(1), Fraction(0), Fraction(2)),
            Shape("M2", "V", Fraction(1), Fraction(3), Fraction(6)),
            Shape("M2", "V", Fraction(3), Fraction(3), Fraction(6)),
        ),
    )
    assert layer_direction(layout, "M2") == "V"
    assert len(check_restrictions(layout)) == 1


def _layout(width, shapes, layer="CA", restriction="compound_2d"):
    return GridLayout(
        "synthetic",
        10,
        width,
        layers={layer: LayerInfo(layer, restriction)},
        shapes=tuple(Shape(layer, "V", Fraction(x), Fraction(y0), Fraction(y1)) for x, y0, y1 in shapes),
    )


def test_uniform_grating_has_one_interior_construct():
    grating = _layout(20, [(x, 0, 10) for x in range(20)], layer="PC", restriction="pure_grating_1d")
    count = count_constructs(grating, "PC", 5)

    assert count.interior == 1
    # the two lines nearest each edge see a truncated grating
    assert count.boundary == 4
    assert count.total == 5


def test_two_contacts_make_two_constructs():
    pair = _layout(12, [(4, 4, 5), (6, 4, 5)])
    assert count_constructs(pair, "CA", 5) == (2, 0, 2)


def _oracle(layout, layer, window):
    cells = {(int(shape.index), int(shape.start)) for shape in layout.on_layer(layer)}
    half = (window - 1) // 2
    interior, boundary = set(), set()
    for tx, ty in cells:
        seen = frozenset(
            (x - tx, y - ty) for x, y in cells if abs(x - tx) <= half and abs(y - ty) <= half
        )
        inside = tx - half >= 0 and ty - half >= 0 and tx + half < layout.width_pitches and ty + half < layout.track_count
        (interior if inside else boundary).add(seen)
    return len(interior), len(boundary), len(interior | boundary)


@pytest.mark.parametrize("window", [1, 3, 5, 7])
def test_constructs_match_raster_oracle(layouts, window):
    for stem, layout in layouts.items():
        if "CA" not in layout.layers:
            continue
        assert tuple(count_constructs(layout, "CA", window)) == _oracle(layout, "CA", window), stem


def test_larger_windows_never_merge_constructs():
    rng = np.random.default_rng(21)
    for _ in range(10):
        picks = np.argwhere(rng.random((30, 10)) < 0.3)
        layout = _layout(30, [(int(x), int(y), int(y) + 1) for x, y in picks])
        totals = [count_constructs(layout, "CA", window).total for window in range(1, 10)]
        assert totals == sorted(totals)


def test_relevant_layers_widen_the_construct(layouts):
    nand2 = layouts["nand2_x1_10t_unidir"]
    alone = count_constructs(nand2, "CA", 3).total
    with_m1 = count_constructs(nand2, "CA", 3, relevant_layers=("CA", "M1")).total
    assert with_m1 >= alone


def test_construct_errors(layouts):
    nand2 = layouts["nand2_x1_10t_unidir"]
    with pytest.raises(LayoutError):
        count_constructs(nand2, "CA", 0)
    with pytest.raises(LayoutError):
        count_constructs(nand2, "V0", 5)
    with pytest.raises(LayoutError):
        count_constructs(nand2, "CA", 5, relevant_layers=("M9",))


@pytest.mark.parametrize(
    "text",
    [
        "meta tracks=10\n",
        "meta tracks=10 pitches=a\n",
        "meta tracks=10 pitches=4 fins=8-12\n",
        "meta tracks=10 pitches=4\nlayer PC wiggly V\n",
        "meta tracks=10 pitches=4\nlayer PC pure_grating_1d D\n",
        "meta tracks=10 pitches=4\nlayer PC pure_grating_1d V\nshape PC D 0 0 10\n",
        "meta tracks=10 pitches=4\nlayer PC pure_grating_1d V\nshape PC V 4 0 10\n",
        "meta tracks=10 pitches=4\nshape PC V 0 0 10\n",
        "meta tracks=10 pitches=4\nlayer PC pure_grating_1d V\nshape PC V x 0 10\n",
        "meta tracks=10 pitches=4 poly=5/4\n",
        "frob\n",
    ],
)
def test_layout_parse_errors(text):
    with pytest.raises(LayoutError):
        parse_layout(text)


def test_cell_name_defaults_to_the_file_stem():
    layout = parse_layout("meta tracks=9 pitches=3\n", "cells/buf_x1.layout")
    assert layout.name == "buf_x1"
    assert layout.shapes == ()


def test_metrics_report(layouts, tmp_path):
    rows = metrics_report(list(layouts.values()))
    by_cell = {row.cell: row for row in rows}

    assert [row.cell for row in rows] == [layout.name for layout in layouts.values()]
    assert by_cell["TRACK_PLAN_10T"].constructs is None
    assert by_cell["NAND2_X1_10T_UniDir"].constructs == count_constructs(layouts["nand2_x1_10t_unidir"], "CA", 5).total
    assert by_cell["DFFQ_X1_10T_BiDir"].fields()[3:7] == ["13/23", "8/12", "0.6667", "2/10"]

    path = tmp_path / "leafcell.csv"
    write_metrics_report(rows, path)
    with open(path, newline="") as handle:
        table = list(csv.reader(handle))
    assert table[0] == METRICS_HEADER
    assert len(table) == len(rows) + 1
