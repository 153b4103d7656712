import io
import json

import pytest

from app import __version__
from app.algebra.elements import Window
from app.algebra.report import Status
from app.cli import CLAIMS, parse_args, run, run_claims
from app.cli.texts import ERROR_PREFIX
from app.config import Settings
from app.kernel.errors import CocycleError


@pytest.fixture()
def settings():
    return Settings(default_window=3, log_level="WARNING", output_format="text")


def invoke(settings, *argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), settings=settings, out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def invoke_json(settings, *argv):
    code, out, _ = invoke(settings, *argv, "--format", "json")
    return code, json.loads(out)


def test_check_jacobi_text(settings):
    code, out, err = invoke(settings, "check", "jacobi", "--algebra", "wq", "--window", "3")
    assert code == 0
    assert out.startswith("[PASS] hom_jacobi")
    assert "Итого: 1/1 без замечаний." in out
    assert err == ""


def test_json_envelope(settings):
    code, data = invoke_json(settings, "check", "jacobi")
    assert code == 0
    assert data["tool_version"] == __version__
    assert data["command"] == "check jacobi"
    assert data["parameters"] == {"algebra": "wq", "window": 3}
    (report,) = data["reports"]
    assert report["status"] == "PASS"
    assert report["time_ms"] is None
    assert set(report) >= {"claim_id", "status", "parameters", "dims", "counterexamples"}


def test_timings_are_recorded(settings):
    _, data = invoke_json(settings, "check", "skew", "--window", "2", "--timings")
    assert data["reports"][0]["time_ms"] >= 0


def test_solve_derivations_twisted(settings):
    code, data = invoke_json(settings, "solve", "der", "--k", "1", "--degree", "0", "--window", "6")
    assert code == 0
    (report,) = data["reports"]
    assert report["status"] == "INFO"
    assert report["dims"]["dim"] == 0


def test_solve_derivations_both_modes(settings):
    _, data = invoke_json(settings, "solve", "der", "--equivariance", "both", "--window", "6")
    assert [report["parameters"]["equivariance"] for report in data["reports"]] == ["off", "on"]
    assert data["reports"][0]["dims"]["dim"] == 3


def test_solve_h2(settings):
    code, data = invoke_json(settings, "solve", "h2", "--sector", "0", "--window", "4")
    assert code == 0
    assert data["reports"][0]["dims"]["h2"] == 2


def test_check_cocycle_reports_invariance(settings):
    code, data = invoke_json(settings, "check", "cocycle", "--which", "beta")
    assert code == 0
    statuses = [report["status"] for report in data["reports"]]
    assert statuses == ["PASS", "INFO"]


def test_failure_exit_code_and_truncation(settings):
    code, data = invoke_json(
        settings, "check", "multiplicative", "--window", "2", "--max-counterexamples", "1"
    )
    assert code == 1
    (report,) = data["reports"]
    assert report["status"] == "FAIL"
    assert len(report["counterexamples"]) == 1
    assert report["dims"]["violations"] > 1


def test_hidden_counterexamples_in_text(settings):
    code, out, _ = invoke(
        settings, "check", "multiplicative", "--window", "2", "--max-counterexamples", "1"
    )
    assert code == 1
    assert out.startswith("[FAIL] multiplicative")
    assert "... ещё" in out


def test_discrepant_exit_code(settings):
    code, data = invoke_json(settings, "check", "lemmas", "--pair=3,-3")
    assert code == 1
    assert data["reports"][0]["status"] == "DISCREPANT"
    assert data["parameters"]["pair"] == [3, -3]


def test_lemma_h1_passes(settings):
    code, out, _ = invoke(settings, "check", "lemmas", "--n", "2")
    assert code == 0
    assert out.startswith("[PASS]")


def test_lemma_with_zero_is_usage_error(settings):
    code, out, err = invoke(settings, "check", "lemmas", "--n", "0")
    assert code == 2
    assert out == ""
    assert err.startswith(ERROR_PREFIX)


@pytest.mark.parametrize(
    "argv",
    [
        ["check", "jacobi", "--bogus"],
        ["check", "jacobi", "--window", "0"],
        ["check", "jacobi", "--algebra", "sl2"],
        ["check", "cocycle"],
        ["check", "lemmas", "--n", "1", "--pair", "1,2"],
        ["solve", "der", "--k", "-1"],
        ["frobnicate"],
    ],
)
def test_invalid_flags(settings, argv):
    code, out, _ = invoke(settings, *argv)
    assert code == 2
    assert out == ""


def test_log_level_is_case_insensitive(settings):
    args = parse_args(["check", "skew", "--log-level", "debug"], settings)
    assert args.log_level == "DEBUG"
    assert args.window == 3
    assert args.format == "text"


def test_extension_from_file(settings, tmp_path):
    path = tmp_path / "delta.txt"
    path.write_text("L 1 L 2 1\nL -3 L 6 1\n", encoding="utf-8")
    code, data = invoke_json(settings, "check", "jacobi", "--algebra", f"ext:file:{path}")
    assert data["reports"][0]["parameters"]["algebra"] == "wq+delta"
    assert code in (0, 1)


def test_extension_by_beta(settings):
    code, data = invoke_json(settings, "check", "jacobi", "--algebra", "ext:beta")
    assert code == 0
    assert data["reports"][0]["status"] == "PASS"


def test_missing_cocycle_file(settings, tmp_path):
    missing = tmp_path / "absent.txt"
    code, out, err = invoke(settings, "check", "cocycle", "--which", f"file:{missing}")
    assert code == 2
    assert out == ""
    assert ERROR_PREFIX in err


def test_broken_cocycle_file(settings, tmp_path):
    path = tmp_path / "broken.txt"
    path.write_text("L 1 L 1 2\n", encoding="utf-8")
    code, _, err = invoke(settings, "check", "cocycle", "--which", f"file:{path}")
    assert code == 2
    assert ERROR_PREFIX in err


def test_non_utf8_cocycle_file(settings, tmp_path):
    path = tmp_path / "binary.txt"
    path.write_bytes(b"L 2 L -2 \xff\xfe\n")
    code, out, err = invoke(settings, "check", "cocycle", "--which", f"file:{path}")
    assert code == 2
    assert out == ""
    assert ERROR_PREFIX in err


def test_realization_command(settings):
    code, data = invoke_json(settings, "check", "realization", "--window", "2")
    assert code == 0
    assert data["reports"][0]["claim_id"] == "realization"
    code, data = invoke_json(settings, "check", "realization", "--window", "2", "--q-bracket")
    assert code == 0
    assert data["reports"][0]["status"] == "INFO"


def test_run_claims_survives_kernel_errors():
    def boom(window):
        raise CocycleError("сломанный коцикл")

    reports = run_claims(Window(3), claims=(CLAIMS[1], boom))
    assert [report.status for report in reports] == [Status.PASS, Status.FAIL]
    assert reports[1].claim_id == "boom"
    assert reports[1].counterexamples[0].residual.startswith("CocycleError")


def test_run_claims_survives_unexpected_errors():
    def broken(window):
        raise ValueError("не то окно")

    def divides(window):
        return 1 // 0

    reports = run_claims(Window(3), claims=(broken, divides, CLAIMS[1]))
    assert [report.status for report in reports] == [Status.FAIL, Status.FAIL, Status.PASS]
    assert reports[0].counterexamples[0].residual == "ValueError: не то окно"
    assert reports[1].counterexamples[0].residual.startswith("ZeroDivisionError")


def test_claim_registry_is_ordered():
    names = [claim.__name__ for claim in CLAIMS]
    assert names[0] == "qfield_identities"
    assert names[-1] == "q_realization"
    assert len(set(names)) == len(names) == 25


@pytest.mark.slow
def test_full_sweep_is_deterministic(settings):
    first = invoke(settings, "check", "all", "--window", "6", "--format", "json")
    second = invoke(settings, "check", "all", "--window", "6", "--format", "json")
    assert first == second
    code, out, _ = first
    data = json.loads(out)
    assert code == 1
    assert len(data["reports"]) == len(CLAIMS)
    statuses = {report["claim_id"]: report["status"] for report in data["reports"]}
    assert statuses["hom_jacobi_wq"] == "PASS"
    assert statuses["lemma_hom_vanish"] == "DISCREPANT"
