import json
import subprocess
import sys

import pytest

from corpus import FIXTURES, GOLDEN
from hopfgalois.cli import main, run_command
from hopfgalois.galois import regular_comodule
from hopfgalois.hgx import emit_hgx
from hopfgalois import catalog
from hopfgalois.fields import Field
from hopfgalois.report import Section, emit_report

AS = str(FIXTURES / "artin_schreier_2_1_1.hgx")
TRIG = str(FIXTURES / "trig.hgx")


def write_builtin(tmp_path, *argv):
    code, out = run_command(["builtin", *argv])
    assert code == 0
    path = tmp_path / "obj.hgx"
    path.write_bytes(out)
    return str(path)


@pytest.mark.parametrize("argv,order", [(["artin-schreier", "--p", "2"], 2),
                                        (["artin-schreier", "--p", "3", "--a", "2"], 3),
                                        (["artin-schreier", "--p", "2", "--d", "2"], 4),
                                        (["trig"], 2)])
def test_builtin_then_picard(tmp_path, argv, order):
    path = write_builtin(tmp_path, *argv)
    code, out = run_command(["picard", path])
    assert code == 0
    assert f"order {order}" in out.decode().splitlines()


def test_builtin_matches_fixture(tmp_path):
    path = write_builtin(tmp_path, "artin-schreier", "--p", "2", "--a", "1")
    assert open(path).read() == open(AS).read()


def test_trig_picard_golden_text():
    code, out = run_command(["picard", TRIG])
    assert code == 0
    assert out == (GOLDEN / "trig_picard.txt").read_bytes()
    assert "twist 0: mu -> -mu" in out.decode()


def test_trig_picard_golden_structured():
    code, out = run_command(["picard", TRIG, "--format", "structured"])
    assert code == 0
    assert out == (GOLDEN / "trig_picard.json").read_bytes()
    doc = json.loads(out)
    assert doc["format"] == "hopfgalois report v1"
    assert doc["sections"][0]["data"]["order"] == 2


@pytest.mark.parametrize("command", [["verify"], ["galois"], ["cleft"], ["picard"],
                                     ["cohomology", "--degree", "1"], ["cohomology", "--degree", "2"]])
def test_reports_are_deterministic(command):
    first = run_command(command + [AS])
    second = run_command(command + [AS])
    assert first == second
    assert first[0] == 0


def test_galois_report_of_regular_comodule(tmp_path):
    H = catalog.artin_schreier_hopf(Field.finite(3))
    path = tmp_path / "reg.hgx"
    path.write_text(emit_hgx([H, regular_comodule(H)]))
    code, out = run_command(["galois", str(path)])
    assert code == 0
    passes = [line for line in out.decode().splitlines() if line.startswith("PASS ")]
    assert passes == ["PASS translation", "PASS centralizing", "PASS right colinearity",
                      "PASS left colinearity", "PASS counit", "PASS absorption", "PASS anti-multiplicativity"]


def test_math_failures_exit_1():
    code, out = run_command(["verify", str(FIXTURES / "corrupted_antipode.hgx")])
    assert code == 1 and "FAIL antipode (left) at (x)" in out.decode()
    code, out = run_command(["galois", str(FIXTURES / "trivial_coaction.hgx")])
    assert code == 1 and "FAIL not Galois" in out.decode()


def test_picard_of_non_galois_object_fails(tmp_path):
    path = write_builtin(tmp_path, "tensor-ext", "--p", "2", "--base", "square")
    code, out = run_command(["picard", path])
    assert code == 1
    assert "Galois objects only" in out.decode()


@pytest.mark.parametrize("argv", [[], ["bogus", AS], ["verify"], ["verify", "/nonexistent.hgx"],
                                  ["verify", AS, "--cap", "0"], ["cohomology", AS, "--degree", "3"],
                                  ["verify", AS, "--object", "nope"], ["builtin", "artin-schreier", "--p", "4"]])
def test_usage_errors_exit_2(argv):
    code, out = run_command(argv)
    assert code == 2


def test_parse_error_exit_2(tmp_path):
    path = tmp_path / "bad.hgx"
    path.write_text("field Q\n[hopf k]\nbasis: 1\nunit: 1\nm: z * z = 1\n")
    code, out = run_command(["verify", str(path)])
    assert code == 2
    assert out.decode().startswith("parse error\nline 5:")


def test_cap_exceeded_exit_3():
    code, out = run_command(["picard", AS, "--cap", "1"])
    assert code == 3
    assert "status: UNKNOWN" in out.decode()


def test_unsupported_field_exit_3():
    code, out = run_command(["cohomology", "--degree", "1", TRIG])
    assert code == 3


def test_out_flag_writes_file(tmp_path, capsys):
    target = tmp_path / "report.txt"
    code = main(["picard", TRIG, "--out", str(target)])
    assert code == 0
    assert capsys.readouterr().out == ""
    assert target.read_bytes() == (GOLDEN / "trig_picard.txt").read_bytes()


def test_empty_report():
    assert emit_report([], "text") == b"hopfgalois report v1\n"
    assert json.loads(emit_report([], "structured")) == {"format": "hopfgalois report v1", "sections": []}


def test_section_rendering():
    sec = Section("demo")
    sec.add("line one")
    text = emit_report([sec], "text").decode()
    assert text.splitlines()[1:] == ["== demo ==", "status: INFO", "line one"]


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "hopfgalois", "picard", TRIG], capture_output=True)
    assert proc.returncode == 0
    assert proc.stdout == (GOLDEN / "trig_picard.txt").read_bytes()


def test_h1_report_flags_missing_base_point(tmp_path):
    # S_1 over GF(2) has no algebra integral, S_0 has one
    code, out = run_command(["cohomology", "--degree", "1", AS])
    assert code == 0
    assert "base point: no algebra integral" in out.decode()
    path = write_builtin(tmp_path, "artin-schreier", "--p", "2", "--a", "0")
    code, out = run_command(["cohomology", "--degree", "1", path])
    assert "base point: algebra integral found" in out.decode()
