# Copyright 2024 The planar-greenosher developers
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import json
from pathlib import Path

import pytest

from greenosher.body_io import load_body, save_body
from greenosher.cli import EXIT_ERROR, EXIT_OK, EXIT_VIOLATION, main
from greenosher.support_body import SupportBody, random_body, scale, translate


@pytest.fixture(name="pair_files")
def fixture_pair_files(tmp_path: Path, oval: SupportBody) -> tuple:
    k = tmp_path / "k.json"
    l = tmp_path / "l.json"
    save_body(oval, k)
    save_body(SupportBody.disk(), l)
    return k, l


def test_gen(tmp_path: Path) -> None:
    out = tmp_path / "body.json"
    assert main(["gen", "--degree", "5", "--seed", "9", "--out", str(out)]) == EXIT_OK
    assert load_body(out) == random_body(9, degree=5)


def test_info(pair_files: tuple, capsys: pytest.CaptureFixture) -> None:
    k, l = pair_files
    assert main(["info", "--k", str(k), "--l", str(l)]) == EXIT_OK
    info = json.loads(capsys.readouterr().out)
    assert info["valid_k"] is True
    assert info["steiner"]["t1"] == pytest.approx(-0.755051, abs=1e-6)
    assert info["certificate"]["origin_class"] == "Interior"
    assert info["homothetic"] is False


def test_verify_square(pair_files: tuple, tmp_path: Path) -> None:
    k, l = pair_files
    report_path = tmp_path / "report.json"
    argv = ["verify", "--k", str(k), "--l", str(l), "--functional", "square"]
    assert main(argv + ["--report", str(report_path)]) == EXIT_OK
    report = json.loads(report_path.read_text())
    (check,) = report["functionals"]
    assert check["name"] == "square"
    assert check["slack"] == pytest.approx(0.24, abs=1e-8)
    assert report["passed"] is True
    assert report["certificate"]["at_dilation_position"] is True


def test_verify_moves_pair(oval: SupportBody, tmp_path: Path) -> None:
    k = tmp_path / "k.json"
    l = tmp_path / "l.json"
    save_body(translate(oval, (3.0, 1.0)), k)
    save_body(SupportBody.disk(1.0, (-1.0, 0.0)), l)
    report_path = tmp_path / "report.json"
    argv = ["verify", "--k", str(k), "--l", str(l), "--report", str(report_path)]
    assert main(argv) == EXIT_OK
    report = json.loads(report_path.read_text())
    assert report["position"] == "dilation"
    assert len(report["functionals"]) == 5
    # the same files checked where they stand
    given = tmp_path / "given.json"
    argv = ["verify", "--k", str(k), "--l", str(l), "--as-given", "--report", str(given)]
    assert main(argv) == EXIT_OK
    assert json.loads(given.read_text())["position"] == "given"


def test_verify_power(pair_files: tuple, tmp_path: Path) -> None:
    k, l = pair_files
    report_path = tmp_path / "report.json"
    argv = ["verify", "--k", str(k), "--l", str(l), "--functional", "square"]
    argv += ["--power", "2.5", "--report", str(report_path)]
    assert main(argv) == EXIT_OK
    names = [c["name"] for c in json.loads(report_path.read_text())["functionals"]]
    assert names == ["square", "power_2.5"]


def test_verify_violation_exit_code(pair_files: tuple, tmp_path: Path) -> None:
    k, l = pair_files
    report_path = tmp_path / "report.json"
    # with a negative tolerance even an exact equality counts as violated
    argv = ["verify", "--k", str(l), "--l", str(l), "--tol", "-1"]
    assert main(argv + ["--report", str(report_path)]) == EXIT_VIOLATION
    assert json.loads(report_path.read_text())["passed"] is False


def test_verify_errors(pair_files: tuple, tmp_path: Path) -> None:
    k, l = pair_files
    report_path = tmp_path / "report.json"
    missing = tmp_path / "missing.json"
    argv = ["verify", "--k", str(missing), "--l", str(l), "--report", str(report_path)]
    assert main(argv) == EXIT_ERROR
    flat = tmp_path / "flat.json"
    flat.write_text(json.dumps({"version": 1, "a0": 1.0, "cos": [0.0, 0.5]}))
    argv = ["verify", "--k", str(flat), "--l", str(l), "--report", str(report_path)]
    assert main(argv) == EXIT_ERROR
    broken = tmp_path / "broken.json"
    broken.write_text("{")
    argv = ["verify", "--k", str(broken), "--l", str(l), "--report", str(report_path)]
    assert main(argv) == EXIT_ERROR
    argv = ["verify", "--k", str(k), "--l", str(l), "--functional", "cube"]
    assert main(argv + ["--report", str(report_path)]) == EXIT_ERROR


def test_usage_errors() -> None:
    assert main([]) == EXIT_ERROR
    assert main(["verify", "--k", "k.json"]) == EXIT_ERROR
    assert main(["--version"]) == EXIT_OK


def test_sweep(tmp_path: Path) -> None:
    summary_path = tmp_path / "summary.json"
    argv = ["sweep", "--trials", "3", "--seed", "2", "--jobs", "1"]
    assert main(argv + ["--summary", str(summary_path)]) == EXIT_OK
    summary = json.loads(summary_path.read_text())
    assert summary["trials"] == 3
    assert summary["failures"] == 0


def test_plot(pair_files: tuple, tmp_path: Path) -> None:
    k, l = pair_files
    out = tmp_path / "pair.svg"
    argv = ["plot", "--k", str(k), "--l", str(l), "--out", str(out), "--rho"]
    assert main(argv) == EXIT_OK
    assert "<svg" in out.read_text()


def test_verify_homothetic(tmp_path: Path) -> None:
    l = random_body(4)
    k_path = tmp_path / "k.json"
    l_path = tmp_path / "l.json"
    save_body(translate(scale(l, 2.0), (0.01, 0.02)), k_path)
    save_body(l, l_path)
    report_path = tmp_path / "report.json"
    argv = ["verify", "--k", str(k_path), "--l", str(l_path)]
    assert main(argv + ["--report", str(report_path)]) == EXIT_OK
    report = json.loads(report_path.read_text())
    assert report["homothetic"] is True
    assert all(abs(c["slack"]) < 1e-8 for c in report["functionals"])


def test_sweep_is_reproducible(tmp_path: Path) -> None:
    first = tmp_path / "first.json"
    second = tmp_path / "second.json"
    for out in (first, second):
        argv = ["sweep", "--trials", "1", "--seed", "7", "--summary", str(out)]
        assert main(argv) == EXIT_OK
    assert first.read_bytes() == second.read_bytes()


def test_empty_sweep(tmp_path: Path) -> None:
    out = tmp_path / "summary.json"
    assert main(["sweep", "--trials", "0", "--summary", str(out)]) == EXIT_OK
    assert json.loads(out.read_text())["trials"] == 0
