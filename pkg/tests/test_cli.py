import json
import subprocess
import sys
from pathlib import Path

import pytest

from syzimp.cli import Job, main, render, run
from syzimp.target import parse_target

GOLDEN = Path(__file__).parent / "golden"

KOSZUL_ARGS = ["koszul", "--gens", "s^2*u+s*t^2, s*t*u+2*t^3, t^2*u+s^3",
               "--syzygy", "t^2*u^3-2*s^2*t^2*u, -s*t*u^3+s^3*t*u, s*t^2*u^2"]

GOLDEN_CASES = [
    (["curve", "--gens", "s^2,s*t,t^2"], "curve_conic.txt"),
    (KOSZUL_ARGS, "koszul_counter.txt"),
    (["numerology", "--mu", "1,1,1"], "numerology_111.txt"),
    (["mu-basis", "--gens", "s^4,s^2*t^2,t^4"], "mu_basis_quartic.txt"),
    (["surface-tri", "--gens", "s*t,s*u,t*u,s^2+t^2+u^2", "--assert-generically-one-to-one",
      "--format", "structured"], "roman_structured.json"),
]


def invoke(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, out


@pytest.mark.parametrize("argv,name", GOLDEN_CASES)
def test_golden_documents(capsys, argv, name):
    code, out = invoke(capsys, argv)
    assert code == 0
    assert out == (GOLDEN / name).read_text()


def test_curve_document_fields(capsys):
    code, out = invoke(capsys, ["curve", "--gens", "s^2,s*t,t^2"])
    lines = dict(line.split(": ", 1) for line in out.strip().splitlines())
    assert code == 0 and lines["F"] == "x*z - y^2" and lines["d"] == "1"


def test_koszul_verdicts(capsys):
    code, out = invoke(capsys, KOSZUL_ARGS + ["--format", "structured"])
    doc = json.loads(out)
    assert code == 0 and doc["koszul"] is False and doc["vanishes_at_basepoints"] is True


def test_koszul_witness_reported(capsys):
    code, out = invoke(capsys, ["koszul", "--gens", "s^2,t^2,u^2", "--syzygy", "t^2,-s^2,0"])
    assert code == 0 and "koszul: true" in out and "witness: [0, 1, 0]" in out


@pytest.mark.parametrize("argv,code", [
    (["curve", "--gens", "s^2,s*t"], 1),
    (["curve", "--gens", "s^2,s*t,s+t^2"], 1),
    (["curve", "--gens", "s^2,s*t,t^3"], 1),
    (["curve", "--gens", "s^2,s*t,t^2", "--degree", "3"], 1),
    (["curve", "--gens", "s^2,s*t,q^2"], 1),
    (["curve"], 1),
    (["bogus-command"], 1),
    (["curve", "--gens", "s^2,s*t,s^2-s*t"], 2),
    (["surface-tp", "--gens", "s*t,s*v,u*t,s*t+s*v+2*u*t"], 2),
    (["surface-tp-1bp", "--gens", "s*t,s*v,u*t,u*v"], 2),
    (["koszul", "--gens", "s^2,t^2,u^2", "--syzygy", "t^2,s^2,0"], 2),
    (["degree-formula", "--degree", "3", "--multiplicities", "1", "--deg-phi", "3"], 2),
    (["numerology", "--mu", "0,1,1"], 2),
    (["dandrea", "--gens", "s*t,s*v,u*t,s*t+s*v+2*u*t"], 3),
])
def test_exit_codes(capsys, argv, code):
    got = main(argv)
    captured = capsys.readouterr()
    assert got == code
    if code:
        assert "status: " in captured.out and "error: " in captured.out
        assert captured.err.strip()


def test_status_names():
    doc, code = run(Job("curve", ["s^2", "s*t", "s^2-s*t"]))
    assert (code, doc["status"]) == (2, "precondition-failed")
    doc, code = run(Job("dandrea", ["s*t", "s*v", "u*t", "s*t+s*v+2*u*t"]))
    assert (code, doc["status"]) == (3, "hypothesis-failed")
    assert "det MP = 0" in doc["error"]


def test_surface_commands(capsys):
    code, out = invoke(capsys, ["surface-tp", "--gens", "s*t,s*v,u*t,u*v", "--bidegree", "1,1"])
    assert code == 0 and "F: x*w - y*z" in out and "matrix_size: 1" in out
    code, out = invoke(capsys, ["surface-tp-1bp", "--gens", "s*t,s*v,u*t,2*s*t-s*v+3*u*t"])
    assert code == 0 and "det_degree: 1" in out and "mp_kernel_dim: 1" in out
    code, out = invoke(capsys, ["dandrea", "--gens", "s*t,s*v,u*t,u*v", "--seed", "4"])
    assert code == 0 and "resultant_vanishes: false" in out


def test_basepoint_commands(capsys):
    code, out = invoke(capsys, ["degree-formula", "--degree", "3", "--multiplicities", "1,1,1,1,1,1"])
    assert code == 0 and "surface_degree: 3" in out
    code, out = invoke(capsys, ["saturation-check", "--gens", "s^2*u+s*t^2, s*t*u+2*t^3, t^2*u+s^3",
                                "--max-degree", "6"])
    assert code == 0 and "saturated: false" in out and "hilbert: [1, 3, 6, 7, 6, 3, 3]" in out
    code, out = invoke(capsys, ["strong-mu", "--gens", "s^2,t^2,u^2,s*t+t*u"])
    assert code == 0 and "strong_mu_basis: false" in out


def test_rendered_F_reparses(capsys):
    for argv in (["curve", "--gens", "s^3,s^2*t-3*t^3,s*t^2"], ["surface-tp", "--gens", "s*t,s*v,u*t,u*v"]):
        doc, code = run(Job(argv[0], argv[2].split(",")))
        nvars = 3 if argv[0] == "curve" else 4
        F = parse_target(doc["F"], nvars)
        assert F.render() == doc["F"]


def test_documents_are_deterministic():
    job = Job("surface-tri", ["s*t", "s*u", "t*u", "s^2+t^2+u^2"], {"seed": 7})
    first = render(run(job)[0], "structured")
    second = render(run(job)[0], "structured")
    assert first == second


def test_batch_mode_keeps_input_order(tmp_path, capsys):
    jobs = tmp_path / "jobs.txt"
    jobs.write_text("# comment\n"
                    "numerology --mu 1,1,2\n"
                    "curve --gens 's^2,s*t,t^2'\n"
                    "\n"
                    "curve --gens 's^2,s*t,s^2-s*t'\n")
    code = main(["--jobs", str(jobs), "--workers", "2", "--format", "structured"])
    docs = json.loads(capsys.readouterr().out)
    assert code == 2
    assert [d["command"] for d in docs] == ["numerology", "curve", "curve"]
    assert [d["status"] for d in docs] == ["ok", "ok", "precondition-failed"]
    assert main(["--jobs", str(jobs)]) == 2
    text = capsys.readouterr().out
    assert text.count("format: syzimp-result/1") == 3


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "syzimp", "numerology", "--mu", "1,1,1"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout == (GOLDEN / "numerology_111.txt").read_text()
