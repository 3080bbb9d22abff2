import json
import os
import subprocess
import sys
from importlib import resources

import pytest

from sgcm.cli import commands
from sgcm.cli.examples import CORPUS, corpus_text, load_example, verify_example
from sgcm.cli.generate import instance_text, random_corpus, write_corpus
from sgcm.cli.main import run
from sgcm.cli.report import INPUT_ERROR, NEGATIVE, OK, UNDECIDED, AnalysisReport, Check
from sgcm.cli.session import SessionError, loads, parse_session, sessions_equal
from sgcm.exactalg import Ideal
from sgcm.parallel import pmap, worker_count


def corpus_path(name):
    return str(resources.files("sgcm.cli").joinpath("corpus", name))


EX47 = corpus_path("example_4_7.sgcm")
EX55 = corpus_path("example_5_5.sgcm")
EX56 = corpus_path("example_5_6.sgcm")


def write(tmp_path, text, name="s.sgcm"):
    p = tmp_path / name
    p.write_text(text, encoding="utf-8")
    return str(p)


def run_json(capsys, argv):
    code = run(argv + ["--json"])
    out = capsys.readouterr().out
    return code, json.loads(out)


# -- session files ---------------------------------------------------------------------


def test_packaged_example_4_7_loads(ex47):
    s = load_example("4.7")
    assert s.ring.variables == ("X1", "X2", "X3", "X4", "X5", "X6")
    assert {"I", "J"} <= set(s.ideals)
    assert s.modules["M"].components == (ex47.K,)
    assert s.ideals["I"] == ex47.I


def test_all_packaged_sessions_round_trip():
    names = list(CORPUS.values())
    gen = resources.files("sgcm.cli").joinpath("corpus", "generated")
    names += [f"generated/{p.name}" for p in gen.iterdir() if p.name.endswith(".sgcm")]
    assert len(names) >= 3 + 20
    for name in names:
        a = loads(corpus_text(name), name)
        b = loads(a.dumps(), name)
        assert sessions_equal(a, b), name
        assert b.dumps() == a.dumps()


def test_empty_file_is_an_error(tmp_path):
    with pytest.raises(SessionError, match="empty"):
        parse_session(write(tmp_path, "# only a comment\n\n"))


def test_containment_error_is_reported(tmp_path):
    text = "ring Q[x,y]\nideal I = x*y\nideal J = x\nmodule M = quot(I)\nfiltration F on M = [[J], [I], [R]]\n"
    with pytest.raises(SessionError, match="not contained") as err:
        loads(text, "c.sgcm")
    assert err.value.line == 5


@pytest.mark.parametrize(
    "text, line, column",
    [
        ("ring Q[x,y]\nideal I = x + * y\n", 2, 15),
        ("ring Q[x,y]\nideal I = x*q\n", 2, 13),
        ("ring Q[x,y]\nmodule M = quot(K)\n", 2, None),
        ("ideal I = x\n", 1, None),
        ("ring Q[x,y]\nfrobnicate\n", 2, 1),
    ],
)
def test_parse_errors_carry_position(text, line, column):
    with pytest.raises(SessionError) as err:
        loads(text, "e.sgcm")
    assert err.value.line == line
    if column is not None:
        assert err.value.column == column
    assert str(err.value).startswith(f"e.sgcm:{line}")


def test_sop_length_must_match_dimension():
    with pytest.raises(SessionError, match="dim"):
        loads("ring Q[x,y]\nideal I = x*y\nmodule M = quot(I)\nsop s on M = x, y\n")


def test_prime_field_session():
    s = loads("ring Fp(7)[x,y]\nideal I = 8*x*y\nmodule M = quot(I)\nsop s on M = x+y\n")
    assert s.ring.field.p == 7
    assert s.ideals["I"] == Ideal(s.ring, ["x*y"])
    with pytest.raises(SessionError):
        loads("ring Fp(8)[x]\n")


def test_ideal_operations_and_decompositions():
    text = (
        "ring Q[x,y]\n"
        "ideal P = x - y\nideal Q2 = x + y\n"
        "ideal K = intersect(P, Q2)\n"
        "decomp K = [P, Q2]\n"
        "ideal S = sat(K)\nideal C = colon(K, P)\nideal T = sum(P, Q2)\n"
        "module M = quot(K)\n"
    )
    s = loads(text)
    assert s.ideals["K"] == Ideal(s.ring, ["x^2 - y^2"])
    assert s.ideals["C"] == s.ideals["Q2"]
    assert s.ideals["T"] == Ideal(s.ring, ["x", "y"])
    assert s.modules["M"].decompositions == {0: (s.ideals["P"], s.ideals["Q2"])}
    with pytest.raises(SessionError):
        loads("ring Q[x,y]\nideal K = x*y\nideal P = x\ndecomp K = [P]\n")


# -- commands and exit codes -----------------------------------------------------------------


def test_verify_paper_examples(capsys):
    for ex in ("4.7", "5.5", "5.6"):
        code, rep = run_json(capsys, ["verify-paper-example", ex])
        assert code == OK, rep
        assert rep["checks"] and all(c["passed"] for c in rep["checks"])
    names = [c.name for c in verify_example("4.7")]
    assert any("I_D(M) = 1" in n for n in names)


def test_ifm_grid_2_on_example_5_6(capsys):
    code, rep = run_json(capsys, ["ifm", EX56, "--filtration", "F", "--grid", "2"])
    assert code == OK
    assert set(rep["tables"]["I_F,M(x(n))"].values()) == {0}
    assert len(rep["tables"]["I_F,M(x(n))"]) == 8


def test_hilbert_samuel_on_polynomial_ring_in_one_variable(tmp_path, capsys):
    path = write(tmp_path, "ring Q[x]\nideal Z = 0\nmodule M = quot(Z)\n")
    code, rep = run_json(capsys, ["hilbert-samuel", path])
    assert code == OK
    assert rep["invariants"]["e_0..e_d"] == [1, 0]


def test_invariant_and_seq_gcm_on_example_4_7(capsys):
    code, rep = run_json(capsys, ["invariant", EX47, "--filtration", "D"])
    assert code == OK
    assert rep["invariants"]["I_F(M) parametric"] == 1
    assert rep["invariants"]["I_F(M) cohomological"] == 1
    code, rep = run_json(capsys, ["seq-gcm", EX47])
    assert code == OK and rep["verdicts"]["is_seq_gcm"] is True
    code, rep = run_json(capsys, ["seq-cm", EX47])
    assert code == NEGATIVE and rep["verdicts"]["is_seq_cm"] is False


def test_seq_gcm_negative_on_example_5_5(capsys):
    code, rep = run_json(capsys, ["seq-gcm", EX55])
    assert code == NEGATIVE
    assert rep["verdicts"]["status"] == "proven"


def test_dimfilt_and_good_sop(capsys):
    code, rep = run_json(capsys, ["dimfilt", EX47])
    assert code == OK
    assert [row["dim"] for row in rep["tables"]["dimension_filtration"]] == [-1, 2, 3]
    code, rep = run_json(capsys, ["good-sop", EX47, "--filtration", "D"])
    assert code == OK and rep["verdicts"]["is_good_sop"] is True


def test_dd_check_negative_exit_code(tmp_path, capsys):
    text = corpus_text("example_4_7.sgcm") + "sop y on M = X2+X4, X3+X6, X1+X5\n"
    path = write(tmp_path, text)
    code, rep = run_json(capsys, ["dd-check", path, "--sop", "y"])
    assert code == NEGATIVE and rep["verdicts"]["is_dd_sequence"] is False
    code, _ = run_json(capsys, ["dd-check", path, "--sop", "x", "--bound", "2"])
    assert code == OK


def test_undecided_exit_code(monkeypatch, capsys):
    monkeypatch.setattr(commands, "iter_good_sops", lambda *a, **k: iter(()))
    code, rep = run_json(capsys, ["good-sop", corpus_path("generated/monomial_2024_001.sgcm")])
    assert code == UNDECIDED
    assert rep["verdicts"]["found"] is False


def test_input_errors_exit_3(tmp_path, capsys):
    assert run(["dimfilt", str(tmp_path / "missing.sgcm")]) == INPUT_ERROR
    assert run(["dimfilt", write(tmp_path, "")]) == INPUT_ERROR
    assert run(["ifm", EX56, "--grid", "0"]) == INPUT_ERROR
    assert run(["ifm", EX56, "--filtration", "nope"]) == INPUT_ERROR
    with pytest.raises(SystemExit) as err:
        run(["no-such-command"])
    assert err.value.code == INPUT_ERROR
    err_text = capsys.readouterr().err
    assert "input error" in err_text


def test_json_reports_are_byte_identical(tmp_path, capsys):
    out = tmp_path / "r.json"
    run(["ifm", EX56, "--grid", "2", "--out", str(out)])
    first = out.read_bytes()
    run(["ifm", EX56, "--grid", "2", "--out", str(out)])
    capsys.readouterr()
    assert out.read_bytes() == first
    rep = json.loads(first)
    assert not rep.get("timing")


def test_timing_only_on_request(capsys):
    _, rep = run_json(capsys, ["dimfilt", EX56])
    assert not rep.get("timing")
    _, rep = run_json(capsys, ["dimfilt", EX56, "--timing"])
    assert rep["timing"]["total"] >= 0


def test_text_report_renders(capsys):
    assert run(["seq-gcm", EX56]) == OK
    out = capsys.readouterr().out
    assert "is_seq_gcm" in out


def test_module_entry_point_runs():
    env = dict(os.environ)
    proc = subprocess.run(
        [sys.executable, "-m", "sgcm.cli", "verify-paper-example", "5.6"],
        capture_output=True, text=True, env=env, timeout=300,
    )
    assert proc.returncode == OK, proc.stderr
    assert "PASS" in proc.stdout or "pass" in proc.stdout.lower()


# -- reports, corpus generation, parallelism ------------------------------------------------


def test_report_serialization():
    rep = AnalysisReport(command=["x"], session="s", module="M", seed=0)
    rep.tables["grid"] = {(1, 2): 3}
    rep.checks.append(Check("c", True, {"a": 1}))
    data = json.loads(rep.to_json())
    assert list(data["tables"]["grid"].values()) == [3]
    assert "c" in rep.to_text()


def test_corpus_generation_is_seeded(tmp_path):
    a = [str(I) for I in random_corpus(7, 10)]
    b = [str(I) for I in random_corpus(7, 10)]
    assert a == b
    paths = write_corpus(tmp_path, 7, 4)
    assert len(paths) == 4
    for p in paths:
        s = parse_session(p)
        assert "M" in s.modules
    text = instance_text(random_corpus(7, 1)[0], "c")
    assert text.startswith("# c\nring Q[")


def test_worker_count_and_pmap(monkeypatch):
    monkeypatch.delenv("SGCM_THREADS", raising=False)
    assert worker_count() == 1
    monkeypatch.setenv("SGCM_THREADS", "2")
    assert worker_count() == 2
    assert pmap(abs, [-3, 2, -1]) == [3, 2, 1]
    monkeypatch.setenv("SGCM_THREADS", "zero")
    with pytest.raises(ValueError):
        worker_count()


def test_parallel_grid_matches_serial(monkeypatch, capsys):
    monkeypatch.setenv("SGCM_THREADS", "1")
    _, serial = run_json(capsys, ["ifm", EX56, "--filtration", "F", "--grid", "2"])
    monkeypatch.setenv("SGCM_THREADS", "2")
    _, parallel = run_json(capsys, ["ifm", EX56, "--filtration", "F", "--grid", "2"])
    assert serial["tables"] == parallel["tables"]
