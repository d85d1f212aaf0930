"""End-to-end tests of the command-line surface."""
import io
import json

import pytest

from kummerlab.construct import ConstructionParams, multiplier_search
from kummerlab.kummer import verify_f_lower
from kummerlab.main import run

CONSTRUCTION = ["--M", "10", "--C", "3/2", "--theta", "7/10"]


def invoke(*argv):
    stdout, stderr = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=stdout, stderr=stderr)
    return code, stdout.getvalue(), stderr.getvalue()


class TestFAndTable:
    def test_f_none(self):
        code, out, _ = invoke("f", "3")
        assert code == 0
        assert out == "none\n"

    def test_f_value(self):
        code, out, _ = invoke("f", "1000")
        assert code == 0 and out.strip().isdigit()

    def test_table_csv(self):
        code, out, _ = invoke("table", "--max", "5")
        lines = out.splitlines()
        assert code == 0
        assert lines[0] == "n,f,f_over_log_n,f_over_log_n_squared,f_over_c_log_n_squared"
        assert len(lines) == 6
        assert lines[1] == "1,none,,,"

    def test_out_names_a_format(self):
        _, csv_out, _ = invoke("table", "--max", "3", "--out", "csv")
        _, json_out, _ = invoke("table", "--max", "3", "--out", "json")
        assert csv_out.startswith("n,f,")
        assert json.loads(json_out)["header"][0] == "n"

    def test_seed_apssv(self):
        code, out, _ = invoke("seed-apssv", "--K", "3")
        data = json.loads(out)
        assert code == 0
        assert data["seed"] == 36
        assert data["certificate"]["verdict"] is True


class TestErrors:
    def test_validation_error(self):
        code, out, err = invoke("f", "0")
        assert code == 1 and out == ""
        assert json.loads(err)["error"] == "ValidationError"

    def test_unknown_flag(self):
        code, out, err = invoke("f", "3", "--bogus", "1")
        error = json.loads(err)
        assert code == 1 and out == ""
        assert error["error"] == "ValidationError"
        assert "--bogus" in error["message"]

    def test_missing_subcommand(self):
        code, _, err = invoke()
        assert code == 1
        assert json.loads(err)["error"] == "ValidationError"

    def test_theta_condition_failure(self):
        code, _, err = invoke("construct", "--M", "10", "--C", "2", "--theta", "1/2")
        assert code == 1
        assert json.loads(err)["error"] == "ValidationError"

    def test_unknown_parameter_in_config(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({"M": 10, "C": "2", "theta": "9/10", "colour": "red"}))
        code, _, err = invoke("density", "--config", str(path))
        assert code == 1 and "error" in json.loads(err)

    def test_budget_exceeded(self):
        code, _, err = invoke("boxes", "--census", "--M", "10", "--C", "2", "--theta", "9/10",
                              "--petals", "11,13,17,19", "--a", "5")
        assert code == 2
        assert json.loads(err)["error"] == "BudgetExceeded"

    def test_missing_certificate_file(self, tmp_path):
        code, _, err = invoke("verify", "--cert", str(tmp_path / "absent.json"))
        assert code == 1
        assert json.loads(err)["error"] == "ValidationError"


class TestConstruct:
    @pytest.fixture
    def construct_file(self, tmp_path):
        path = tmp_path / "construct.json"
        code, out, _ = invoke("construct", *CONSTRUCTION, "--tmax", "200000", "--out", str(path))
        assert code == 0 and out == ""
        return path

    def test_construct(self, construct_file):
        data = json.loads(construct_file.read_text())
        params = ConstructionParams(M=10, C="3/2", theta="7/10", t_max=200_000)
        assert data["t"] == multiplier_search(params, workers=1).t
        assert data["certificate"]["verdict"] is True
        assert data["exact_check"]["agrees"] is True
        assert {row["p"] for row in data["density"]["rows"]} == {2, 3, 5, 7, 11, 13}

    def test_verify_round_trip(self, construct_file):
        code, out, _ = invoke("verify", "--cert", str(construct_file))
        data = json.loads(out)
        assert code == 0
        assert data["rederived"] is True and data["matches"] is True

    def test_tampered_certificate(self, construct_file, tmp_path):
        data = json.loads(construct_file.read_text())
        data["certificate"]["records"][0]["passed"] = False
        path = tmp_path / "tampered.json"
        path.write_text(json.dumps(data))
        code, out, err = invoke("verify", "--cert", str(path))
        assert code == 3
        assert json.loads(out)["consistent"] is False
        assert json.loads(err)["error"] == "VerificationFailed"

    def test_bare_certificate(self, tmp_path):
        path = tmp_path / "f_lower.json"
        path.write_text(verify_f_lower(35, 3).to_json())
        code, out, _ = invoke("verify", "--cert", str(path))
        assert code == 0
        assert json.loads(out)["kind"] == "f_lower"

    def test_config_merge(self, tmp_path):
        path = tmp_path / "params.json"
        path.write_text(json.dumps({"M": 10, "C": "2", "theta": "9/10"}))
        _, from_config, _ = invoke("density", "--config", str(path))
        _, overridden, _ = invoke("density", "--config", str(path), "--theta", "19/20")
        _, direct, _ = invoke("density", "--M", "10", "--C", "2", "--theta", "19/20")
        assert overridden == direct
        assert from_config != direct


class TestDeterminism:
    def test_fourier_workers(self):
        args = ["fourier", "--M", "10", "--C", "2", "--theta", "9/10", "--shell", "2", "--hcap", "2", "--N", "1000"]
        one = invoke(*args, "--workers", "1")
        two = invoke(*args, "--workers", "2")
        assert one[0] == two[0] == 0
        assert one[1] == two[1]
        json_one = invoke(*args, "--workers", "1", "--format", "json")
        json_two = invoke(*args, "--workers", "2", "--format", "json")
        assert json_one[1] == json_two[1]

    def test_reruns_are_byte_identical(self):
        args = ["denominators", "--M", "10", "--C", "2", "--theta", "9/10", "--seed", "5", "--count", "50"]
        assert invoke(*args)[1] == invoke(*args)[1]

    @pytest.mark.parametrize("args", [
        ["construct", *CONSTRUCTION, "--tmax", "200000"],
        ["denominators", "--M", "10", "--C", "2", "--theta", "9/10", "--seed", "5", "--count", "50"],
        ["assembly", "--seed", "3", "--count", "20"],
    ])
    @pytest.mark.parametrize("fmt", ["csv", "json"])
    def test_one_and_eight_workers(self, args, fmt):
        one = invoke(*args, "--workers", "1", "--format", fmt)
        eight = invoke(*args, "--workers", "8", "--format", fmt)
        assert one[0] == eight[0] == 0
        assert one[1] == eight[1]

    @pytest.mark.parametrize("args", [
        ["denominators", "--M", "10", "--C", "2", "--theta", "9/10", "--count", "5"],
        ["assembly", "--count", "3"],
    ])
    def test_seed_in_csv_header(self, args):
        code, out, _ = invoke(*args, "--seed", "7", "--format", "csv")
        lines = out.splitlines()
        assert code == 0
        assert lines[0] == "# seed=7"
        assert lines[1].startswith("index,")


class TestLabCommands:
    def test_fourier_empty_shell(self):
        code, out, _ = invoke("fourier", "--M", "10", "--C", "2", "--theta", "9/10", "--shell", "0",
                              "--N", "1000", "--format", "json")
        data = json.loads(out)
        assert code == 0
        assert data["value"] == 0 and data["count"] == 0

    def test_mixing_classes(self):
        code, out, _ = invoke("mixing", "--classes", "10,10", "--k", "10")
        data = json.loads(out)
        assert code == 0
        assert data["coeff_abs"] == pytest.approx(252)
        assert data["binom_ref"] == 184756

    def test_mixing_needs_input(self):
        code, _, _ = invoke("mixing", "--k", "3")
        assert code == 1

    def test_charsum_legendre(self):
        code, out, _ = invoke("charsum", "--p", "101", "--j", "50", "--M", "50")
        data = json.loads(out)
        assert code == 0
        assert data["band_size"] == 10
        assert data["normalized"] == pytest.approx(0.4)

    def test_buchstab(self):
        code, out, _ = invoke("buchstab", "--limit", "2000", "--M", "10")
        assert code == 0 and json.loads(out)["failure_count"] == 0

    def test_assembly(self):
        code, out, _ = invoke("assembly", "--seed", "1", "--count", "5", "--k", "4")
        assert code == 0 and json.loads(out)["passed"] is True

    def test_boxes_histogram(self):
        code, out, _ = invoke("boxes", "--histogram", "--p", "13", "--M", "10", "--C", "2", "--theta", "9/10",
                              "--format", "json")
        data = json.loads(out)
        assert code == 0 and data["zero_heights"] == 0
        assert data["rows"][-1]["count"] == data["nonzero"]

    def test_boxes_needs_one_mode(self):
        code, _, _ = invoke("boxes", "--M", "10", "--C", "2", "--theta", "9/10")
        assert code == 1
