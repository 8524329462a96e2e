import json

import pytest

from onegate.cli import run


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_classify_fredkin(capsys, data_dir):
    code, out, _ = call(capsys, "classify", str(data_dir / "fredkin.tt"), "--report", "json")
    rep = json.loads(out)
    assert code == 0
    assert rep["affine"] is False and rep["one_to_one"] is True and rep["wire_permutation"] is False


def test_classify_text(capsys, data_dir):
    code, out, _ = call(capsys, "classify", str(data_dir / "cnot.tt"))
    assert code == 0 and "affine: yes" in out


def test_basis_cnot_is_affine(capsys, data_dir):
    code, out, _ = call(capsys, "basis", str(data_dir / "cnot.tt"))
    assert code == 1 and "gate is affine" in out


def test_basis_swap_is_affine(capsys, data_dir):
    code, out, _ = call(capsys, "basis", str(data_dir / "swap.tt"))
    assert code == 1


def test_basis_writes_gadgets(capsys, data_dir, tmp_path):
    code, out, _ = call(capsys, "basis", str(data_dir / "fredkin.tt"), "--out", str(tmp_path))
    assert code == 0
    assert "NOT" in out and "FANOUT" in out
    for kind in ("not", "and", "or", "fanout"):
        assert (tmp_path / f"{kind}.netlist").exists()
    code, out, _ = call(capsys, "table", str(tmp_path / "or.netlist"))
    assert code == 0
    assert out.split("\n")[3:7] == ["0", "1", "1", "1"]


def test_basis_json_is_stable(capsys, data_dir):
    _, a, _ = call(capsys, "basis", str(data_dir / "toffoli.tt"), "--report", "json")
    _, b, _ = call(capsys, "basis", str(data_dir / "toffoli.tt"), "--report", "json")
    assert a == b
    rep = json.loads(a)
    assert rep["gadgets"]["NOT"]["binding"]["fixed"] == {"x1": 1, "x2": 1}


def test_basis_allow_injective(capsys, data_dir):
    code, _, _ = call(capsys, "basis", str(data_dir / "injective.tt"))
    assert code == 1
    code, out, _ = call(capsys, "basis", str(data_dir / "injective.tt"),
                        "--allow-injective", str(data_dir / "not.netlist"), "--report", "json")
    assert code == 0 and json.loads(out)["external_not"] is True


def test_compile_simulate_verify(capsys, data_dir, tmp_path):
    target = tmp_path / "fa.netlist"
    code, out, _ = call(capsys, "compile", str(data_dir / "full_adder.netlist"),
                        "--gate", str(data_dir / "toffoli.tt"), "--out", str(target))
    assert code == 0 and "gate copies" in out
    code, out, _ = call(capsys, "verify", str(target), str(data_dir / "full_adder.netlist"))
    assert (code, out.strip()) == (0, "equivalent")
    code, out, _ = call(capsys, "simulate", str(target), "--inputs", "111")
    assert (code, out.strip()) == (0, "11")
    code, out, _ = call(capsys, "simulate", str(target), "--inputs", "110", "--trace")
    assert out.splitlines()[0] == "01" and "a=1" in out


def test_compile_to_stdout(capsys, data_dir):
    code, out, err = call(capsys, "compile", str(data_dir / "full_adder.netlist"), "--gate", "fredkin")
    assert code == 0 and out.startswith("gatedef fredkin") and "fan-outs" in err


def test_verify_inequivalent(capsys, data_dir, tmp_path):
    (tmp_path / "id.netlist").write_text("input a\noutput a\n")
    (tmp_path / "not.tt").write_text("gate not\ninputs 1\noutputs 1\n1\n0\n")
    code, out, _ = call(capsys, "verify", str(tmp_path / "id.netlist"), str(tmp_path / "not.tt"))
    assert code == 1 and "counterexample 0" in out


@pytest.mark.parametrize(
    "argv",
    [
        ["classify", "/nonexistent.tt"],
        ["frobnicate"],
        ["classify"],
        ["sweep", "--bits", "7"],
        ["sweep", "--bits", "2", "--range", "5..3"],
        ["simulate", "DATA/full_adder.netlist", "--inputs", "1"],
    ],
)
def test_input_errors(capsys, data_dir, argv):
    argv = [a.replace("DATA", str(data_dir)) for a in argv]
    code, _, _ = call(capsys, *argv)
    assert code == 2


def test_parse_error_exit(capsys, tmp_path):
    (tmp_path / "bad.tt").write_text("gate g\ninputs 1\noutputs 1\n0\n")
    code, _, err = call(capsys, "classify", str(tmp_path / "bad.tt"))
    assert code == 2 and "line" in err


def test_sweep_two_bits(capsys):
    code, out, _ = call(capsys, "sweep", "--bits", "2")
    assert code == 0
    assert out.startswith("24 gates, 2 NOT-failures (wire permutations), 0 non-affine one-to-one")


def test_sweep_json_range(capsys):
    code, out, _ = call(capsys, "sweep", "--bits", "3", "--range", "0..200", "--report", "json")
    rep = json.loads(out)
    assert code == 0 and rep["gates"] == 200 and rep["range"] == [0, 200]
