import json

import pytest
from fastapi.testclient import TestClient

from mulseries import cli
from mulseries.service.app import app


@pytest.fixture()
def cusp_file(tmp_path):
    path = tmp_path / "cusp.json"
    path.write_text(json.dumps({"maximal_contact": [2, 3, 6]}))
    return str(path)


@pytest.fixture()
def point_file(tmp_path):
    path = tmp_path / "point.json"
    path.write_text(json.dumps({"maximal_contact": [1, 1]}))
    return str(path)


@pytest.fixture()
def invalid_file(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"maximal_contact": [2, 3, 5]}))
    return str(path)


@pytest.fixture()
def tampered_file(tmp_path):
    path = tmp_path / "tampered.json"
    path.write_text(
        json.dumps(
            {"model": {"n": 3, "satellite": {"3": 1}, "valuation_divisor": [2, 3, 7]}}
        )
    )
    return str(path)


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestInfo:
    def test_plain(self, capsys, cusp_file):
        code, out, _ = run(capsys, "info", "--input", cusp_file)
        assert code == 0
        assert "maximal contact          2 3 6" in out
        assert "log canonical threshold  5/6" in out

    def test_json(self, capsys, cusp_file):
        code, out, _ = run(capsys, "info", "--input", cusp_file, "--format", "json")
        assert code == 0
        body = json.loads(out)
        assert body["valuation_divisor"] == [2, 3, 6]

    def test_invalid_input_exits_2_with_diagnostic(self, capsys, invalid_file):
        code, _, err = run(capsys, "info", "--input", invalid_file)
        assert code == 2
        assert "terminal value must be at least 2 times entry 1" in err

    def test_missing_file_exits_2(self, capsys, tmp_path):
        code, _, err = run(capsys, "info", "--input", str(tmp_path / "none.json"))
        assert code == 2
        assert "cannot read" in err


class TestJumps:
    def test_table(self, capsys, cusp_file):
        code, out, _ = run(capsys, "jumps", "--input", cusp_file, "--bound", "2")
        assert code == 0
        lines = out.splitlines()
        assert lines[0].startswith("value")
        assert len(lines) == 8
        assert lines[1].startswith("5/6")

    def test_deterministic_output(self, capsys, cusp_file):
        first = run(capsys, "jumps", "--input", cusp_file, "--bound", "2")
        second = run(capsys, "jumps", "--input", cusp_file, "--bound", "2")
        assert first == second

    def test_csv(self, capsys, cusp_file):
        code, out, _ = run(
            capsys, "jumps", "--input", cusp_file, "--bound", "2", "--format", "csv"
        )
        assert code == 0
        rows = out.splitlines()
        assert rows[0] == "value,families,witnesses,contributes,dimension,omega"
        assert rows[1].startswith("5/6,1,")

    def test_empty_table(self, capsys, cusp_file):
        code, out, _ = run(capsys, "jumps", "--input", cusp_file, "--bound", "1/2")
        assert code == 0
        assert "no jumping numbers" in out

    def test_float_bound_exits_2(self, capsys, cusp_file):
        code, _, err = run(capsys, "jumps", "--input", cusp_file, "--bound", "0.5")
        assert code == 2
        assert "num/den" in err

    def test_unknown_format_exits_2(self, cusp_file):
        with pytest.raises(SystemExit) as excinfo:
            cli.main(["jumps", "--input", cusp_file, "--format", "latex"])
        assert excinfo.value.code == 2


class TestIdeal:
    def test_json_schema(self, capsys, cusp_file):
        code, out, _ = run(
            capsys, "ideal", "--input", cusp_file, "--at", "5/6", "--format", "json"
        )
        assert code == 0
        assert json.loads(out) == {
            "divisor": [1, 1, 2],
            "multiplicities": [1, 0, 0],
            "colength": 1,
        }

    def test_requires_at(self, cusp_file):
        with pytest.raises(SystemExit) as excinfo:
            cli.main(["ideal", "--input", cusp_file])
        assert excinfo.value.code == 2

    def test_float_at_exits_2(self, capsys, cusp_file):
        code, _, err = run(capsys, "ideal", "--input", cusp_file, "--at", "1.5")
        assert code == 2


class TestSeries:
    def test_check_passes(self, capsys, cusp_file):
        code, out, _ = run(
            capsys, "series", "--input", cusp_file, "--bound", "3", "--check"
        )
        assert code == 0
        assert "closed form matches oracle up to t^3: OK" in out

    def test_latex(self, capsys, point_file):
        code, out, _ = run(
            capsys, "series", "--input", point_file, "--format", "latex", "--bound", "4"
        )
        assert code == 0
        assert r"\left(\frac{1}{1-t}+\frac{t}{(1-t)^2}\right)t^{2}" in out

    def test_csv_rows(self, capsys, cusp_file):
        code, out, _ = run(
            capsys, "series", "--input", cusp_file, "--bound", "2", "--format", "csv"
        )
        assert code == 0
        rows = out.splitlines()
        assert rows[0] == "5/6,1"
        assert "11/6,2" in rows
        assert rows[-1] == "2,1"

    def test_json_schema(self, capsys, cusp_file):
        code, out, _ = run(
            capsys, "series", "--input", cusp_file, "--bound", "2", "--format", "json"
        )
        assert code == 0
        body = json.loads(out)
        assert body["denominator"] == 6
        assert body["closed_form"]["omega"][0] == [5, 1]
        assert body["truncation"][0] == [5, 1]


class TestVerify:
    def test_single_model_passes(self, capsys, cusp_file):
        code, out, _ = run(capsys, "verify", "--input", cusp_file, "--bound", "2")
        assert code == 0
        assert out.strip().endswith("PASS")

    def test_corpus_passes(self, capsys):
        code, out, _ = run(capsys, "verify", "--corpus", "b0<=2,bg<=8", "--bound", "3")
        assert code == 0
        assert "11 model(s)" in out

    def test_tampered_model_fails_with_named_check(self, capsys, tampered_file):
        code, out, _ = run(capsys, "verify", "--input", tampered_file, "--bound", "2")
        assert code == 1
        assert "FAIL intersection-identities" in out

    def test_needs_exactly_one_source(self, capsys, cusp_file):
        code, _, err = run(capsys, "verify")
        assert code == 2
        code, _, err = run(
            capsys, "verify", "--input", cusp_file, "--corpus", "b0<=1,bg<=2"
        )
        assert code == 2

    def test_bad_corpus_spec(self, capsys):
        code, _, err = run(capsys, "verify", "--corpus", "b0=4")
        assert code == 2
        assert "corpus spec" in err

    def test_json_report(self, capsys, cusp_file):
        code, out, _ = run(
            capsys, "verify", "--input", cusp_file, "--bound", "2", "--format", "json"
        )
        assert code == 0
        body = json.loads(out)
        assert body["passed"] is True
        assert body["failed_checks"] == 0


class TestRemoteDispatch:
    def test_jumps_through_the_http_layer(self, capsys, cusp_file, monkeypatch):
        client = TestClient(app)

        def fake_post(url, json=None, timeout=None):
            path = url[len("http://service") :]
            return client.post(path, json=json)

        monkeypatch.setattr(cli.httpx, "post", fake_post)
        local = run(capsys, "jumps", "--input", cusp_file, "--bound", "2")
        remote = run(
            capsys, "jumps", "--input", cusp_file, "--bound", "2",
            "--server", "http://service",
        )
        assert remote == local

    def test_server_side_validation_maps_to_exit_2(
        self, capsys, invalid_file, monkeypatch
    ):
        client = TestClient(app)

        def fake_post(url, json=None, timeout=None):
            path = url[len("http://service") :]
            return client.post(path, json=json)

        monkeypatch.setattr(cli.httpx, "post", fake_post)
        code, _, err = run(
            capsys, "info", "--input", invalid_file, "--server", "http://service"
        )
        assert code == 2
        assert "server rejected request" in err

    def test_unreachable_server_exits_2(self, capsys, cusp_file):
        code, _, err = run(
            capsys, "jumps", "--input", cusp_file,
            "--server", "http://127.0.0.1:1",
        )
        assert code == 2
        assert "cannot reach server" in err
