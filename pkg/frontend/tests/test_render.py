import pytest

from conftest import write_versioned_csv
from mimoee_figures.io import SchemaError
from mimoee_figures.render import FigureSpec, render_curves, render_surface


def test_surface_star_at_argmax(surface_csv, tmp_path):
    res = render_surface(FigureSpec(
        inputs={"surface": surface_csv}, kind="surface",
        output=tmp_path / "s.png",
    ))
    assert res.output.exists()
    assert (res.star_m, res.star_k) == (3, 2)


def test_flat_surface_stars_first_point(tmp_path):
    rows = [("zf", "perfect", m, k, 1.0, 7.0, 7e-6)
            for m in (1, 2) for k in (1, 2) if m >= k]
    p = write_versioned_csv(
        tmp_path / "surface_zf.csv", "surface",
        ["scheme", "csi", "m", "k", "rho", "ee_bit_per_joule", "ee_mbit_per_joule"],
        rows,
    )
    res = render_surface(FigureSpec(inputs={"surface": p}, kind="surface",
                                    output=tmp_path / "flat.png"))
    assert (res.star_m, res.star_k) == (1, 1)


def test_trajectory_of_length_one(surface_csv, tmp_path):
    trace = write_versioned_csv(
        tmp_path / "trace.csv", "trace",
        ["iteration", "m", "k", "rho", "ee_bit_per_joule"],
        [(0, 2, 1, 1.0, 210.0)],
    )
    res = render_surface(FigureSpec(
        inputs={"surface": surface_csv, "trace": trace}, kind="surface",
        output=tmp_path / "t.png",
    ))
    assert res.output.exists()


def test_surface_missing_column(tmp_path):
    p = write_versioned_csv(tmp_path / "surface_zf.csv", "surface",
                            ["scheme", "csi", "m", "k"], [("zf", "perfect", 1, 1)])
    with pytest.raises(SchemaError, match="ee_bit_per_joule"):
        render_surface(FigureSpec(inputs={"surface": p}, kind="surface",
                                  output=tmp_path / "x.png"))


def test_curves_renders_one_series_per_pair(curves_csv, tmp_path):
    res = render_curves(FigureSpec(
        inputs={"curves": curves_csv, "curves_kind": "power_scaling"},
        kind="curves", value_column="tx_power_j_per_cu",
        output=tmp_path / "c.png",
    ))
    assert res.output.exists()


def test_curves_single_point_series(tmp_path):
    p = write_versioned_csv(
        tmp_path / "power_scaling.csv", "power_scaling",
        ["scheme", "csi", "m", "k", "rho", "tx_power_j_per_cu", "ee_bit_per_joule"],
        [("zf", "perfect", 100, 20, 2.0, 5e-7, 7e6)],
    )
    res = render_curves(FigureSpec(
        inputs={"curves": p, "curves_kind": "power_scaling"},
        kind="curves", value_column="tx_power_j_per_cu",
        output=tmp_path / "single.png",
    ))
    assert res.output.exists()


def test_rendering_is_byte_stable(surface_csv, curves_csv, tmp_path):
    for name in ("a.png", "b.png"):
        render_surface(FigureSpec(inputs={"surface": surface_csv},
                                  kind="surface", output=tmp_path / name))
    assert (tmp_path / "a.png").read_bytes() == (tmp_path / "b.png").read_bytes()
    for name in ("ca.png", "cb.png"):
        render_curves(FigureSpec(
            inputs={"curves": curves_csv, "curves_kind": "power_scaling"},
            kind="curves", value_column="tx_power_j_per_cu",
            output=tmp_path / name,
        ))
    assert (tmp_path / "ca.png").read_bytes() == (tmp_path / "cb.png").read_bytes()


def test_spec_validation(surface_csv):
    with pytest.raises(ValueError):
        FigureSpec(inputs={"surface": surface_csv}, kind="pie")
    with pytest.raises(ValueError):
        FigureSpec(inputs={}, kind="surface")
