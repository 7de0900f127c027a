"""CSV emitters and the benchmark driver: layout, determinism, error records."""

import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from torusht import InvalidBandLimitError, InvalidSpinError, kernels
from torusht.cli import (
    BACKENDS_HEADER,
    COUNTS_HEADER,
    INTEGRATE_HEADER,
    ROUNDTRIP_HEADER,
    emit_counts,
    emit_grid,
    emit_weights,
    gen_random_coeffs,
    main,
    render_roundtrip_csv,
    run_backends,
    run_integrate,
    run_roundtrip,
)

from helpers import max_abs


def rows(text):
    return text.strip().split("\n")


def blank_seconds(text, column):
    out = []
    for line in rows(text):
        fields = line.split(",")
        if len(fields) > column:
            fields[column] = ""
        out.append(",".join(fields))
    return out


def test_generator_is_deterministic():
    a = gen_random_coeffs(6, 1, seed=3, trial=2)
    b = gen_random_coeffs(6, 1, seed=3, trial=2)
    np.testing.assert_array_equal(a.values, b.values)
    c = gen_random_coeffs(6, 1, seed=3, trial=3)
    assert max_abs(a.values, c.values) > 1e-3


def test_generator_distinguishes_spin_sign_and_realness():
    a = gen_random_coeffs(6, 2, seed=0)
    b = gen_random_coeffs(6, -2, seed=0)
    assert max_abs(a.values, b.values) > 1e-3
    c = gen_random_coeffs(6, 0, seed=0)
    d = gen_random_coeffs(6, 0, seed=0, real=True)
    assert max_abs(c.values, d.values) > 1e-3


@settings(deadline=None, max_examples=25)
@given(L=st.integers(min_value=1, max_value=12), seed=st.integers(0, 10**6))
def test_real_coefficients_satisfy_the_reality_condition(L, seed):
    coeffs = gen_random_coeffs(L, 0, seed=seed, real=True)
    for ell in range(L):
        base = ell * (ell + 1)
        for m in range(ell + 1):
            lhs = np.conj(coeffs.values[base + m])
            rhs = (-1.0) ** m * coeffs.values[base - m]
            assert lhs == rhs


def test_generator_validation():
    with pytest.raises(ValueError):
        gen_random_coeffs(4, 0, seed=-1)
    with pytest.raises(ValueError):
        gen_random_coeffs(4, 0, seed=0, trial=-1)
    with pytest.raises(InvalidSpinError):
        gen_random_coeffs(4, 4, seed=0)
    with pytest.raises(InvalidSpinError):
        gen_random_coeffs(4, 1, seed=0, real=True)
    with pytest.raises(InvalidBandLimitError):
        gen_random_coeffs(0, 0, seed=0)


def test_roundtrip_outcomes_structure():
    outcomes = run_roundtrip([2, 4], [0, 1], trials=2)
    assert [(o.band_limit, o.spin) for o in outcomes] == [(2, 0), (2, 1), (4, 0), (4, 1)]
    for oc in outcomes:
        assert oc.error == ""
        assert len(oc.reports) == 2
        for trial, report in enumerate(oc.reports):
            assert report.trials == trial
            assert report.epsilon < 1e-12
            assert report.seconds > 0.0


def test_roundtrip_records_unrunnable_combos():
    outcomes = run_roundtrip([2], [0, 5], trials=1)
    good, bad = outcomes
    assert good.error == "" and len(good.reports) == 1
    assert bad.reports == ()
    assert "band limit" in bad.error
    assert "," not in bad.error


def test_roundtrip_csv_layout():
    text = render_roundtrip_csv(run_roundtrip([2], [0, 3], trials=2, seed=7))
    lines = rows(text)
    assert lines[0] == ROUNDTRIP_HEADER
    width = len(ROUNDTRIP_HEADER.split(","))
    assert all(len(line.split(",")) == width for line in lines)
    # combo (2, 0): two trial rows then aggregates
    assert [ln.split(",")[3] for ln in lines[1:5]] == ["0", "1", "mean", "std"]
    assert all(ln.split(",")[8] == "" for ln in lines[1:5])
    assert float(lines[1].split(",")[4]) < 1e-12
    assert lines[1].split(",")[6:8] == ["7", "2"]
    # combo (2, 3) cannot run: single row with the reason in the last field
    err = lines[5].split(",")
    assert err[:3] == ["2", "3", "mw"]
    assert err[3] == err[4] == err[5] == ""
    assert err[8] != ""


def test_roundtrip_csv_is_deterministic_outside_timing():
    kwargs = dict(trials=3, seed=5)
    first = render_roundtrip_csv(run_roundtrip([3, 5], [0, 2], **kwargs))
    again = render_roundtrip_csv(run_roundtrip([3, 5], [0, 2], **kwargs))
    parallel = render_roundtrip_csv(
        run_roundtrip([3, 5], [0, 2], parallel=True, **kwargs)
    )
    assert blank_seconds(first, 5) == blank_seconds(again, 5)
    assert blank_seconds(first, 5) == blank_seconds(parallel, 5)


def test_roundtrip_real_and_gl_modes():
    real = run_roundtrip([4], [0], trials=2, real=True)
    assert real[0].error == ""
    assert all(r.epsilon < 1e-12 for r in real[0].reports)
    # the real path refuses nonzero spin per combo, not by raising
    outcome = run_roundtrip([4], [1], trials=1, real=True)[0]
    assert "spin 0" in outcome.error

    gl = run_roundtrip([4, 8], [0, 2], sampling="gl", trials=2)
    assert all(o.error == "" for o in gl)
    assert all(r.epsilon < 1e-11 for o in gl for r in o.reports)
    assert all(r.sampling == "gl" for o in gl for r in o.reports)


def test_weights_csv_blocks():
    lines = rows(emit_weights([4, 8], spin=0))
    assert lines[0] == "theta,v,q,sin_theta,q_minus_sin"
    assert lines[1] == "# band_limit=4 spin=0"
    assert lines[9] == "# band_limit=8 spin=0"
    assert len(lines) == 1 + (1 + 7) + (1 + 15)
    # data rows carry five fields, the reflected rings leave q blank
    fields = lines[2].split(",")
    assert len(fields) == 5 and all(fields)
    assert lines[8].split(",")[2] == ""


def test_grid_csv_with_trailer():
    lines = rows(emit_grid(3))
    assert lines[0] == "theta,phi"
    assert len(lines) == 1 + 3 * 5 + 1
    # 2 ordinary rings of 5 plus the collapsed pole ring
    assert lines[-1] == "# distinct sphere locations: 11"

    lines = rows(emit_grid(3, sampling="gl"))
    assert len(lines) == 1 + 3 * 5 + 1
    assert lines[-1] == "# distinct sphere locations: 15"
    thetas = sorted({float(ln.split(",")[0]) for ln in lines[1:-1]})
    assert len(thetas) == 3
    assert all(0.0 < t < np.pi for t in thetas)


def test_counts_csv():
    lines = rows(emit_counts([4, 16]))
    assert lines == [COUNTS_HEADER, "4,22,28,56", "16,466,496,992"]


def test_integrate_rows_hit_the_reference():
    lines = rows(run_integrate([4, 6], [0, 2], trials=3, seed=1))
    assert lines[0] == INTEGRATE_HEADER
    data = [ln.split(",") for ln in lines[1:]]
    assert len(data) == 4 * 3
    for fields in data:
        assert fields[9] == ""
        assert float(fields[7]) < 1e-12


def test_integrate_error_row():
    lines = rows(run_integrate([2], [2], trials=2, seed=0))
    assert len(lines) == 2
    fields = lines[1].split(",")
    assert fields[:2] == ["2", "2"]
    assert fields[9] != "" and "," not in fields[9]


def test_backends_comparison_rows():
    before = kernels.BACKEND
    lines = rows(run_backends([4], spin=0, trials=2, seed=0, warmup=0))
    assert kernels.BACKEND == before
    assert lines[0] == BACKENDS_HEADER
    body = [ln.split(",") for ln in lines[1:]]
    assert [f[0] for f in body] == ["numpy"] * 4 + ["numba"] * 4
    assert [f[3] for f in body[:4]] == ["0", "1", "mean", "std"]
    for fields in body:
        if fields[3] in ("0", "1", "mean"):
            assert float(fields[4]) < 1e-12


def test_main_writes_requested_file(tmp_path):
    out = tmp_path / "counts.csv"
    assert main(["counts", "-L", "4,16", "--out", str(out)]) == 0
    assert rows(out.read_text()) == [COUNTS_HEADER, "4,22,28,56", "16,466,496,992"]


def test_main_defaults_to_stdout(capsys):
    assert main(["grid", "-L", "2"]) == 0
    captured = capsys.readouterr()
    assert captured.out.startswith("theta,phi\n")
    assert captured.out.endswith("# distinct sphere locations: 4\n")


def test_main_reports_library_errors(capsys):
    assert main(["roundtrip", "-L", "0", "--trials", "1"]) == 2
    captured = capsys.readouterr()
    assert captured.err.startswith("error:")


def test_main_rejects_bad_arguments():
    with pytest.raises(SystemExit):
        main(["roundtrip", "--sampling", "dh"])
    with pytest.raises(SystemExit):
        main(["roundtrip", "-L", "four"])
    with pytest.raises(SystemExit):
        main([])


def test_module_entry_point_runs():
    out = subprocess.run(
        [sys.executable, "-m", "torusht.cli", "counts", "-L", "8"],
        capture_output=True,
        text=True,
    )
    assert out.returncode == 0, out.stderr
    assert rows(out.stdout) == [COUNTS_HEADER, "8,106,120,240"]
