"""Batch runs: row counts, determinism, spec'd example values, CSV output."""
from __future__ import annotations

import math

import pytest

from exact_reference import delta_one_exact
from kickedtop import (
    NumericalIntegrityError,
    Table,
    build_config,
    run_classical,
    run_contour,
    run_kappa_sweep,
    run_kappa_zero_scan,
    run_odd_n,
    write_tables,
)
from kickedtop.experiments import (
    CONTOUR_HEADER,
    SWEEP_HEADER,
    n_spread_summary,
    parity_contrast,
)


def small_sweep_config(**overrides):
    base = dict(j=3.0, T=6, n=(2, 3), kappa_min=0.0, kappa_max=1.0, kappa_step=0.5)
    base.update(overrides)
    return build_config("sweep-kappa", overrides=base)


def test_sweep_row_count_and_schema():
    result = run_kappa_sweep(small_sweep_config())
    (table,) = result.tables
    assert table.name == "sweep_kappa_z"
    assert table.header == SWEEP_HEADER
    assert len(table.rows) == 3 * 2 * 3  # kappas x lags x metrics
    metrics = {row[7] for row in table.rows}
    assert metrics == {"hellinger", "delta", "coherence"}
    for row in table.rows:
        assert row[0] == "sweep_kappa_z"
        assert row[1] == "z" and row[2] == "z"
        assert all(math.isfinite(v) for v in row[3:7] if isinstance(v, float))


def test_sweep_zero_kick_even_lag_rows_vanish():
    result = run_kappa_sweep(small_sweep_config(j=15.0, n=(2, 4), T=8))
    (table,) = result.tables
    for row in table.rows:
        kappa0, n, metric, mean = row[4], row[5], row[7], row[8]
        if kappa0 == 0.0 and n % 2 == 0 and metric in ("hellinger", "delta"):
            assert abs(mean) < 1e-10


def test_sweep_coherence_rows_repeat_per_lag():
    result = run_kappa_sweep(small_sweep_config())
    (table,) = result.tables
    by_kappa = {}
    for row in table.rows:
        if row[7] == "coherence":
            by_kappa.setdefault(row[4], set()).add((row[8], row[9]))
    for values in by_kappa.values():
        assert len(values) == 1  # identical value repeated for each lag


def test_contour_rows_and_example_alternation():
    cfg = build_config(
        "contour",
        overrides=dict(j=15.0, t_alpha_max=9, kappa_min=0.5, kappa_max=0.5),
    )
    result = run_contour(cfg)
    (table,) = result.tables
    assert table.header == CONTOUR_HEADER
    assert len(table.rows) == 10 * 2
    deltas = {row[1]: row[4] for row in table.rows if row[3] == "delta"}
    # Below kappa0 = 1 the even first-measurement times stay quiet and the
    # odd ones carry the disturbance.
    even = [abs(deltas[t]) for t in range(0, 10, 2)]
    odd = [abs(deltas[t]) for t in range(1, 10, 2)]
    assert max(even) < 0.5
    assert sum(odd) > 4 * sum(even)


def test_kappa_zero_scan_matches_exact_oracle():
    cfg = build_config("kappa-zero", overrides=dict(j=15.0, t_alpha_max=12))
    result = run_kappa_zero_scan(cfg)
    (table,) = result.tables
    assert len(table.rows) == 13 * 2
    expected = float(delta_one_exact(15))
    odd_values = []
    for row in table.rows:
        t_alpha, metric, value = row[1], row[3], row[4]
        if t_alpha % 2 == 0:
            assert abs(value) < 1e-10
        elif metric == "delta":
            odd_values.append(value)
    assert odd_values == pytest.approx([expected] * len(odd_values), abs=1e-10)
    assert max(odd_values) - min(odd_values) < 1e-12


def test_kappa_zero_scan_j1_hand_value():
    cfg = build_config("kappa-zero", overrides=dict(j=1.0, t_alpha_max=4))
    (table,) = run_kappa_zero_scan(cfg).tables
    odd = [r[4] for r in table.rows if r[1] % 2 == 1 and r[3] == "delta"]
    assert odd == pytest.approx([32 / 11 - 1] * 2, abs=1e-10)


def test_odd_n_rejects_even_lags():
    from kickedtop import ConfigError

    with pytest.raises(ConfigError):
        run_odd_n(build_config("odd-n", overrides=dict(n=(1, 2))))


def test_odd_n_consistent_with_kappa_zero_scan():
    sweep_cfg = build_config(
        "odd-n", overrides=dict(j=15.0, n=(1,), T=10, kappa_min=0.0, kappa_max=0.0)
    )
    (sweep,) = run_odd_n(sweep_cfg).tables
    scan_cfg = build_config("kappa-zero", overrides=dict(j=15.0, t_alpha_max=10))
    (scan,) = run_kappa_zero_scan(scan_cfg).tables
    sweep_mean = next(r[8] for r in sweep.rows if r[7] == "delta")
    scan_values = [r[4] for r in scan.rows if r[3] == "delta"]
    assert sweep_mean == pytest.approx(sum(scan_values) / len(scan_values), abs=1e-12)


def test_classical_tables():
    cfg = build_config(
        "classical", overrides=dict(kappa_min=0.0, kappa_max=7.0, kappa_step=0.5)
    )
    result = run_classical(cfg)
    table, orbits = result.tables
    assert table.name == "classical"
    per_kappa = [r for r in table.rows if r[2] not in
                 ("stability_boundary", "fp_divergence_onset")]
    assert len(per_kappa) == 15 * 5
    boundaries = [r[1] for r in table.rows if r[2] == "stability_boundary"]
    assert boundaries == pytest.approx([math.pi, 5.593, 2 * math.pi], abs=5e-3)
    (onset,) = [r[1] for r in table.rows if r[2] == "fp_divergence_onset"]
    assert 1.9 < onset < 2.1
    for row in table.rows:
        if row[2] == "cycle4_return_distance":
            assert row[3] < 1e-12
        if row[2].startswith("pole_"):
            assert row[3] < 1e-12
    sampled = {r[1] for r in orbits.rows}
    assert sampled == {0.5, 1.5, 2.5, 3.0, 6.0}
    names = {r[2] for r in orbits.rows}
    assert names == {"cycle4", "near_pole_plus", "near_pole_minus"}


def test_indicator_column_matches_closed_form():
    cfg = build_config(
        "classical", overrides=dict(kappa_min=1.0, kappa_max=2.0, kappa_step=1.0)
    )
    (table, _) = run_classical(cfg).tables
    for row in table.rows:
        if row[2] == "stability_indicator":
            k = row[1]
            assert row[3] == (2 * math.cos(k) + k * math.sin(k)) ** 2


def test_threads_match_serial_bytes(tmp_path):
    serial = run_kappa_sweep(small_sweep_config(threads=1))
    threaded = run_kappa_sweep(small_sweep_config(threads=4))
    d1, d2 = tmp_path / "serial", tmp_path / "threads"
    (p1,) = write_tables(serial, d1)
    (p2,) = write_tables(threaded, d2)
    assert p1.read_bytes() == p2.read_bytes()


def test_repeated_runs_identical_bytes(tmp_path):
    cfg = build_config(
        "contour",
        overrides=dict(j=2.0, t_alpha_max=5, kappa_min=0.0, kappa_max=1.0,
                       kappa_step=0.5),
    )
    (p1,) = write_tables(run_contour(cfg), tmp_path / "a")
    (p2,) = write_tables(run_contour(cfg), tmp_path / "b")
    assert p1.read_bytes() == p2.read_bytes()


def test_written_csv_round_trips_floats(tmp_path):
    result = run_kappa_sweep(small_sweep_config())
    (path,) = write_tables(result, tmp_path)
    lines = path.read_text().splitlines()
    assert lines[0] == ",".join(SWEEP_HEADER)
    assert len(lines) == 1 + len(result.tables[0].rows)
    first = lines[1].split(",")
    assert float(first[8]) == result.tables[0].rows[0][8]


def test_manifest_written(tmp_path):
    result = run_kappa_sweep(small_sweep_config())
    write_tables(result, tmp_path)
    manifest = tmp_path / "sweep_kappa_z_manifest.txt"
    text = manifest.read_text()
    assert "experiment: sweep-kappa" in text
    assert "rows sweep_kappa_z: 18" in text
    assert "numpy:" in text


def test_table_rejects_non_finite():
    with pytest.raises(NumericalIntegrityError):
        Table("bad", ("a", "b"), ((1.0, float("nan")),))
    with pytest.raises(NumericalIntegrityError):
        Table("bad", ("a", "b"), ((1.0,),))


def test_n_spread_summary_synthetic():
    rows = []
    for kappa0, n, mean in [
        (1.0, 2, 1.0), (1.0, 4, 3.0), (5.0, 2, 2.0), (5.0, 4, 2.5),
    ]:
        rows.append(("s", "z", "z", 15.0, kappa0, n, 50, "delta", mean, mean**2))
        rows.append(("s", "z", "z", 15.0, kappa0, n, 50, "hellinger", 9.0, 81.0))
    table = Table("s", SWEEP_HEADER, tuple(rows))
    assert n_spread_summary(table, 0.0, 2.0) == pytest.approx(2.0)
    assert n_spread_summary(table, 4.0, 6.0) == pytest.approx(0.5)
    assert n_spread_summary(table, 0.0, 2.0, relative=True) == pytest.approx(1.0)
    assert n_spread_summary(table, 4.0, 6.0, relative=True) == pytest.approx(0.5 / 2.25)
    with pytest.raises(ValueError):
        n_spread_summary(table, 8.0, 9.0)


def test_parity_contrast_synthetic():
    rows = []
    for t_alpha, value in [(0, 0.0), (1, 4.0), (2, 1.0), (3, 5.0)]:
        rows.append(("c", t_alpha, 2.0, "delta", value))
        rows.append(("c", t_alpha, 2.0, "coherence", 99.0))
    table = Table("c", CONTOUR_HEADER, tuple(rows))
    assert parity_contrast(table, 1.0, 3.0) == pytest.approx(4.0)
    with pytest.raises(ValueError):
        parity_contrast(table, 5.0, 6.0)
