"""Figure recipes against checked-in CSVs."""

import csv
import io
import math
import time
from pathlib import Path

import pytest

from cvqkd_thermal.cli import main

ROOT = Path(__file__).resolve().parent.parent
RECIPES = sorted((ROOT / "recipes").glob("*.ini"))
GOLDEN = Path(__file__).resolve().parent / "golden"


def render(recipe, tmp_path, *extra):
    out = tmp_path / (recipe.stem + ".csv")
    assert main(["sweep", "--config", str(recipe), "--out", str(out), *extra]) == 0
    return out.read_bytes()


def _cells_close(a, b):
    try:
        x, y = float(a), float(b)
    except ValueError:
        return a == b
    if math.isnan(x) or math.isnan(y):
        return math.isnan(x) and math.isnan(y)
    return math.isclose(x, y, rel_tol=1e-9, abs_tol=1e-10)


def test_four_recipes_present():
    assert [r.stem for r in RECIPES] == ["fig1_rr_rate", "fig2_dr_rate", "fig3_noise_threshold", "fig4_wireless"]


@pytest.mark.parametrize("recipe", RECIPES, ids=lambda p: p.stem)
def test_matches_golden(recipe, tmp_path):
    produced = list(csv.reader(io.StringIO(render(recipe, tmp_path).decode("utf-8"))))
    expected = list(csv.reader(io.StringIO((GOLDEN / (recipe.stem + ".csv")).read_text(encoding="utf-8"))))
    assert produced[0] == expected[0]
    assert len(produced) == len(expected)
    for got, want in zip(produced[1:], expected[1:]):
        assert all(_cells_close(a, b) for a, b in zip(got, want)), (got, want)


@pytest.mark.parametrize("recipe", RECIPES, ids=lambda p: p.stem)
def test_repeat_runs_byte_identical(recipe, tmp_path):
    first = render(recipe, tmp_path)
    assert render(recipe, tmp_path) == first
    assert render(recipe, tmp_path, "--parallel", "2") == first
    assert first.endswith(b"\n") and b"\r" not in first


def test_recipes_fast(tmp_path):
    start = time.perf_counter()
    for recipe in RECIPES:
        render(recipe, tmp_path)
    assert time.perf_counter() - start < 60.0


def _rows(name):
    return list(csv.DictReader((GOLDEN / name).open(encoding="utf-8")))


def _crossings(rows, key):
    """Interpolated zero crossing of the rate in T, per value of ``key``; None if never insecure."""
    by = {}
    for r in rows:
        by.setdefault(r[key], []).append((float(r["T"]), float(r["rate"])))
    out = {}
    for k, pts in by.items():
        out[k] = None
        for (t0, r0), (t1, r1) in zip(pts, pts[1:]):
            if r0 <= 0 < r1:
                out[k] = t0 + (t1 - t0) * (-r0) / (r1 - r0)
                break
    return out


def test_fig1_crossings_move_towards_unity():
    cross = _crossings(_rows("fig1_rr_rate.csv"), "V0")
    assert cross["1"] is None
    assert 0.88 <= cross["10"] <= 0.90
    assert cross["10"] < cross["100"] < cross["1000"] <= 1.0


def test_fig2_crossings_at_half():
    cross = _crossings(_rows("fig2_dr_rate.csv"), "V0")
    assert len(cross) == 5
    assert all(abs(t - 0.5) <= 0.01 for t in cross.values())


def test_fig3_direct_jumps_past_half():
    rows = [r for r in _rows("fig3_noise_threshold.csv") if r["protocol"] == "direct"]
    for r in rows:
        t = float(r["T"])
        if t > 0.5:
            assert float(r["threshold"]) >= 1e4
        elif t < 0.5:
            assert r["verdict"] == "never-secure"
