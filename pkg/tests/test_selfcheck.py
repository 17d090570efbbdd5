from cvqkd_thermal.blackbody import CONSTANTS, PhysicalConstants
from cvqkd_thermal.selfcheck import run_selfcheck


def test_fresh_build_passes():
    report = run_selfcheck(trials=50)
    assert report.passed, report.lines()
    assert len(report.results) == 9


def test_corrupted_constants_named():
    broken = PhysicalConstants(hbar=CONSTANTS.hbar * 1.1, k_b=CONSTANTS.k_b)
    report = run_selfcheck(trials=10, constants=broken)
    assert not report.passed
    assert {"blackbody-1GHz", "blackbody-300GHz"} <= set(report.failed)
    assert not {"spectrum-oracle", "eve-closed-forms", "rr-threshold-V0=10"} & set(report.failed)


def test_tight_tolerance_is_expected_fail():
    # 1e-15 is below the rounding floor of either route; the oracle checks must fail.
    report = run_selfcheck(rtol=1e-15, trials=50)
    assert "spectrum-oracle" in report.failed
    assert "eve-closed-forms" in report.failed


def test_report_lines():
    lines = run_selfcheck(trials=5).lines()
    assert all(line.startswith(("PASS", "FAIL")) for line in lines)
