import json
import subprocess
import sys

import pytest

from rma.cli import EXIT_INPUT, EXIT_IO, EXIT_OK, EXIT_RESOURCE, EXIT_VERIFY, run


def test_verify_paper_text():
    code, out, err = run(["verify-paper"])
    assert code == EXIT_OK, out
    lines = out.splitlines()
    assert lines[-1] == "all 18 checks passed"
    assert all(line.startswith("PASS") for line in lines[:-1])


def test_verify_paper_json():
    code, out, _ = run(["verify-paper", "--format", "json"])
    data = json.loads(out)
    assert code == EXIT_OK and data["ok"]
    assert len(data["results"]) == 18


def test_verify_paper_is_byte_identical():
    assert run(["verify-paper"]) == run(["verify-paper"])


def test_corrupted_golden_fails(tmp_path):
    from rma.fieldext import load_golden_fullR

    data = load_golden_fullR().to_json()
    data["coeffs"][0][0][0] = "12345"
    bad = tmp_path / "fullR.json"
    bad.write_text(json.dumps(data))
    code, out, _ = run(["verify-paper", "--golden", str(bad)])
    assert code == EXIT_VERIFY
    assert "first failure: fullR" in out


def test_unreadable_golden_is_a_failed_check(tmp_path):
    code, out, _ = run(["verify-paper", "--golden", str(tmp_path / "missing.json")])
    assert code == EXIT_VERIFY
    assert "golden unreadable" in out


def test_fiber_generic_point():
    code, out, _ = run(["fiber", "--builtin", "pinchuk", "--point", "1", "1"])
    assert code == EXIT_OK
    assert "annihilator degree: 6" in out


def test_fiber_json_double_root():
    code, out, _ = run(["fiber", "--builtin", "pinchuk", "--point", "0", "-1", "--format", "json"])
    data = json.loads(out)
    assert code == EXIT_OK
    assert data["roots"]["distinct_real_roots"] == [{"lo": "0", "hi": "0", "multiplicity": 2}]


def test_fiber_degree_drop_warning():
    code, out, _ = run(["fiber", "--builtin", "example-uni", "--point", "0"])
    assert code == EXIT_OK and "degree drop" in out


def test_fiber_bad_point():
    code, _, err = run(["fiber", "--builtin", "pinchuk", "--point", "1/0", "2"])
    assert code == EXIT_INPUT and "bad point" in err


def test_fiber_wrong_arity():
    code, _, err = run(["fiber", "--builtin", "pinchuk", "--point", "1"])
    assert code == EXIT_INPUT


def test_fiber_from_map_file(tmp_path):
    path = tmp_path / "m.json"
    path.write_text(json.dumps({"vars": ["x"], "components": [{"num": "x^3 + x"}]}))
    code, out, _ = run(["fiber", "--map", str(path), "--point", "2"])
    assert code == EXIT_OK and "annihilator degree: 3" in out


def test_missing_map_file(tmp_path):
    code, _, err = run(["fiber", "--map", str(tmp_path / "nope.json"), "--point", "2"])
    assert code == EXIT_INPUT and "cannot read" in err


def test_malformed_map_file(tmp_path):
    path = tmp_path / "m.json"
    path.write_text('{"vars": ["x"]}')
    code, _, err = run(["fiber", "--map", str(path), "--point", "2"])
    assert code == EXIT_INPUT and "malformed" in err


def test_unknown_subcommand():
    code, _, _ = run(["frobnicate"])
    assert code == EXIT_INPUT


@pytest.mark.parametrize("name, verdict", [
    ("square", "CounterexampleFound"), ("cubic-demo", "DenseByOddDegree"),
    ("pinchuk", "NoCounterexampleFound"),
])
def test_dense(name, verdict):
    code, out, _ = run(["dense", "--builtin", name, "--format", "json"])
    assert code == EXIT_OK
    assert json.loads(out)["verdict"] == verdict


def test_dense_is_seeded():
    a = run(["dense", "--builtin", "pinchuk", "--seed", "7", "--samples", "16"])
    b = run(["dense", "--builtin", "pinchuk", "--seed", "7", "--samples", "16"])
    assert a == b


def test_emit_asymptotic_stdout():
    code, out, _ = run(["emit-curves", "asymptotic"])
    assert code == EXIT_OK
    assert out.splitlines()[0] == "s,P,Q"
    assert len(out.splitlines()) == 386


def test_emit_levelset_file(tmp_path):
    path = tmp_path / "lv.csv"
    code, out, _ = run(["emit-curves", "levelset", "--c", "3", "--out", str(path)])
    assert code == EXIT_OK
    assert path.read_text().startswith("h,x,y,Q\n")


def test_emit_levelset_needs_c():
    code, _, _ = run(["emit-curves", "levelset"])
    assert code == EXIT_INPUT


def test_emit_singular_directory(tmp_path):
    code, out, _ = run(["emit-curves", "singular", "--out", str(tmp_path / "sing")])
    assert code == EXIT_OK
    assert len(list((tmp_path / "sing").glob("*.csv"))) == 4


def test_emit_io_error(tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("")
    code, _, err = run(["emit-curves", "asymptotic", "--out", str(blocker / "x.csv")])
    assert code == EXIT_IO and "I/O error" in err


def test_reduce_cubic_yagzhev(tmp_path):
    out_dir = tmp_path / "red"
    code, out, _ = run(["reduce", "--builtin", "cubic-demo", "--target", "yagzhev", "--out", str(out_dir)])
    assert code == EXIT_OK
    assert "yagzhev dimension: 3" in out
    assert json.loads((out_dir / "map.json").read_text())["vars"] == ["x", "y0", "t"]
    assert isinstance(json.loads((out_dir / "trace.json").read_text()), list)


def test_reduce_pinchuk_yagzhev_is_gated():
    code, _, err = run(["reduce", "--builtin", "pinchuk", "--target", "yagzhev"])
    assert code == EXIT_RESOURCE and "--expensive" in err


def test_reduce_pinchuk_symmetric():
    code, out, _ = run(["reduce", "--builtin", "pinchuk", "--target", "symmetric", "--samples", "8"])
    assert code == EXIT_OK
    assert "symmetric dimension: 4" in out


def test_reduce_singular_map_reports_failure():
    code, out, _ = run(["reduce", "--builtin", "example-uni", "--target", "symmetric"])
    assert code == EXIT_VERIFY
    assert "FAIL  fiber_bijection_sampled" in out


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "rma", "fiber", "--builtin", "cubic-demo", "--point", "2"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "cubic-demo" in proc.stdout
