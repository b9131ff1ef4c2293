import json
import subprocess
import sys

import pytest

from ulrich.cli import EXIT_BUDGET, EXIT_FAIL, EXIT_INPUT, EXIT_OK, main


@pytest.fixture(scope="module")
def inst_file(tmp_path_factory):
    path = tmp_path_factory.mktemp("inst") / "i.json"
    assert main(["gen", "--s", "3", "--seed", "1", "--out", str(path)]) == EXIT_OK
    return path


def test_gen_writes_instance(inst_file, capsys):
    d = json.loads(inst_file.read_text())
    assert d["s"] == 3 and d["p"] == 32003 and d["seed"] == 1
    assert {"F1", "F2", "A", "B", "F", "resamples"} <= set(d)


def test_gen_prints_resamples(tmp_path, capsys):
    main(["gen", "--s", "3", "--seed", "2", "--out", str(tmp_path / "x.json")])
    assert "resamples:" in capsys.readouterr().err


def test_gen_rejects_p_dividing_2s(capsys):
    assert main(["gen", "--s", "3", "--p", "3"]) == EXIT_INPUT
    assert "p ∤ 2s" in capsys.readouterr().err


def test_gen_budget_exhaustion(capsys):
    assert main(["gen", "--s", "3", "--budget", "0"]) == EXIT_BUDGET


def test_gen_is_deterministic(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    main(["gen", "--s", "4", "--seed", "7", "--out", str(a)])
    main(["gen", "--s", "4", "--seed", "7", "--out", str(b)])
    assert a.read_bytes() == b.read_bytes()


def test_certify_pass(inst_file, tmp_path, capsys):
    out = tmp_path / "c.json"
    assert main(["certify", "--in", str(inst_file), "--out", str(out), "--emit", "betti"]) == EXIT_OK
    cert = json.loads(out.read_text())
    assert cert["verdict"] == "pass"
    assert [c["status"] for c in cert["checks"]] == ["pass"] * 9
    assert cert["betti"]["entries"] == [[0, 0, 4]]
    printed = capsys.readouterr().out
    assert printed.split() == ["0", "0:", "4"]


def test_certify_nonmember_fails(inst_file, tmp_path):
    d = json.loads(inst_file.read_text())
    d["F"] = "x^6 + 2*y^6 + 3*z^6 + x*y^2*z^3"
    d.pop("A"), d.pop("B")
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(d))
    out = tmp_path / "c.json"
    assert main(["certify", "--in", str(bad), "--out", str(out)]) == EXIT_FAIL
    cert = json.loads(out.read_text())
    assert cert["first_failure"] == "membership"


@pytest.mark.parametrize("content", ["{not json", '{"p": 32003}', '{"s": 3, "F1": "x^^3", "F2": "y^3", "F": "x^6"}',
                                     '{"s": 3, "p": 9}'])
def test_certify_input_errors(tmp_path, content):
    f = tmp_path / "in.json"
    f.write_text(content)
    assert main(["certify", "--in", str(f), "--out", str(tmp_path / "o.json")]) == EXIT_INPUT


def test_certify_missing_file(tmp_path):
    assert main(["certify", "--in", str(tmp_path / "nope.json")]) == EXIT_INPUT


def test_bad_flags():
    assert main(["certify", "--window", "1"]) == EXIT_INPUT
    assert main(["frobnicate"]) == EXIT_INPUT


def test_certify_inline_with_window_and_emit(tmp_path, capsys):
    out = tmp_path / "c.json"
    rc = main(["certify", "--s", "3", "--seed", "2", "--window", "-4", "2", "--emit", "cohomology",
               "--out", str(out)])
    assert rc == EXIT_OK
    cert = json.loads(out.read_text())
    assert cert["cohomology"]["window"] == [-4, 2]
    assert "h2:" in capsys.readouterr().out


def test_cohomology_and_hilbert_commands(inst_file, tmp_path, capsys):
    out = tmp_path / "h.json"
    assert main(["cohomology", "--in", str(inst_file), "--out", str(out)]) == EXIT_OK
    table = json.loads(out.read_text())
    assert table["h1"] == [0] * 7
    assert main(["hilbert", "--in", str(inst_file), "--out", str(out)]) == EXIT_OK
    data = json.loads(out.read_text())
    assert data["pushforward_E"]["hilbert_polynomial"] == ["4", "6", "2"]
    assert data["O_Zprime"]["hilbert_polynomial"] == ["9"]
    assert "pushforward_O_Z: HP(k) = (9)" in capsys.readouterr().out


def test_seed_batch(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "ulrich.cli", "certify", "--s", "3", "--seeds", "1..2",
                           "--out", str(tmp_path)], capture_output=True, text=True)
    assert proc.returncode == EXIT_OK, proc.stderr
    files = sorted(p.name for p in tmp_path.iterdir())
    assert files == ["certificate_s3_seed1.json", "certificate_s3_seed2.json"]
    for f in tmp_path.iterdir():
        assert json.loads(f.read_text())["verdict"] == "pass"


def test_selftest(capsys):
    assert main(["selftest", "--s", "3", "--seed", "1"]) == EXIT_OK
    err = capsys.readouterr().err
    assert "FAIL" not in err and "all oracles agree" in err
