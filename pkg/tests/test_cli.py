import math

import numpy as np
import pytest

from dickesynth.circuit import loads
from dickesynth.cli import main
from dickesynth.verify import dicke_reference, fidelity, simulate


def run(argv):
    return main(argv)


# --- synth ----------------------------------------------------------------------


def test_synth_writes_circuit_and_plan(tmp_path):
    out = tmp_path / "c.qc"
    assert run(["synth", "--topology", "complete", "--n", "8", "--k", "2",
                "--out", str(out)]) == 0
    circuit = loads(out.read_text())
    assert circuit.num_qubits == 8
    assert (tmp_path / "c.qc.plan").read_text().startswith("plan topology=")


def test_synth_stdout_with_plan_comments(capsys):
    assert run(["synth", "--topology", "grid", "3x4", "--k", "2"]) == 0
    text = capsys.readouterr().out
    assert text.startswith("QUBITS 12")
    assert "# plan topology=grid" in text


def test_synth_rejects_large_k():
    assert run(["synth", "--topology", "complete", "--n", "8", "--k", "7"]) == 2


def test_synth_rejects_contradictory_n():
    assert run(["synth", "--topology", "grid", "2x3", "--n", "7",
                "--k", "1"]) == 2


def test_synth_symmetric(tmp_path):
    amp = tmp_path / "alpha.txt"
    a = 1 / math.sqrt(3)
    amp.write_text(f"{a} 0\n{a} 0\n{a} 0\n")
    out = tmp_path / "s.qc"
    assert run(["synth", "--topology", "complete", "--n", "6", "--k", "2",
                "--symmetric", str(amp), "--out", str(out)]) == 0
    circuit = loads(out.read_text())
    state = simulate(circuit, 0)
    target = sum(a * dicke_reference(6, ell) for ell in range(3))
    assert fidelity(state, target) > 1 - 1e-8


def test_synth_symmetric_rejects_unnormalized(tmp_path):
    amp = tmp_path / "alpha.txt"
    amp.write_text("1 0\n1 0\n1 0\n")
    assert run(["synth", "--topology", "complete", "--n", "6", "--k", "2",
                "--symmetric", str(amp)]) == 2


# --- verify ---------------------------------------------------------------------


def synth_file(tmp_path, topology, n, k):
    out = tmp_path / "c.qc"
    args = ["synth", "--topology"] + topology + ["--k", str(k),
                                                 "--out", str(out)]
    if topology[0] != "grid":
        args += ["--n", str(n)]
    assert run(args) == 0
    return out


def test_verify_roundtrip(tmp_path):
    out = synth_file(tmp_path, ["complete"], 10, 3)
    assert run(["verify", "--circuit", str(out), "--n", "10", "--k", "3",
                "--all-ell"]) == 0


def test_verify_grid_roundtrip(tmp_path):
    out = synth_file(tmp_path, ["grid", "2x3"], 6, 2)
    assert run(["verify", "--circuit", str(out), "--n", "6", "--k", "2",
                "--all-ell"]) == 0


def test_verify_reports_fidelity_lines(tmp_path, capsys):
    out = synth_file(tmp_path, ["complete"], 6, 2)
    assert run(["verify", "--circuit", str(out), "--n", "6", "--k", "2",
                "--all-ell"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert [l.split()[0] for l in lines] == ["ell=0", "ell=1", "ell=2"]
    assert all("ok" in l for l in lines)


def test_verify_corrupted_circuit_fails(tmp_path):
    out = synth_file(tmp_path, ["complete"], 8, 2)
    lines = out.read_text().splitlines()
    for i, line in enumerate(lines):
        if line.startswith("U "):
            parts = line.split()
            parts[2] = repr(float(parts[2]) + 0.5)
            lines[i] = " ".join(parts)
            break
    out.write_text("\n".join(lines) + "\n")
    assert run(["verify", "--circuit", str(out), "--n", "8", "--k", "2"]) == 3


def test_verify_vacuous_tolerance(tmp_path):
    out = synth_file(tmp_path, ["complete"], 8, 2)
    lines = out.read_text().splitlines()
    for i, line in enumerate(lines):
        if line.startswith("U "):
            parts = line.split()
            parts[2] = repr(float(parts[2]) + 0.5)
            lines[i] = " ".join(parts)
            break
    out.write_text("\n".join(lines) + "\n")
    assert run(["verify", "--circuit", str(out), "--n", "8", "--k", "2",
                "--tol", "2"]) == 0


def test_verify_missing_file():
    assert run(["verify", "--circuit", "/nonexistent.qc", "--n", "4",
                "--k", "1"]) == 2


# --- bench ----------------------------------------------------------------------


def test_bench_csv_schema(tmp_path):
    csv = tmp_path / "bench.csv"
    assert run(["bench", "--topology", "complete", "--n-range", "16..64",
                "--k-range", "2,4", "--csv", str(csv)]) == 0
    lines = csv.read_text().splitlines()
    assert lines[0] == "topology,n1,n2,k,depth,size,bound,ratio"
    assert len(lines) == 1 + 3 * 2  # n in {16,32,64} x k in {2,4}
    for line in lines[1:]:
        fields = line.split(",")
        assert fields[0] == "complete"
        assert float(fields[7]) > 0


def test_bench_empty_range_header_only(capsys):
    assert run(["bench", "--topology", "complete"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out == ["topology,n1,n2,k,depth,size,bound,ratio"]


def test_bench_grid_rows(tmp_path):
    csv = tmp_path / "g.csv"
    assert run(["bench", "--topology", "grid", "--rows", "2", "--n-range",
                "8,16", "--k-range", "2", "--csv", str(csv)]) == 0
    lines = csv.read_text().splitlines()
    assert len(lines) == 3
    assert all(line.split(",")[1] == "2" for line in lines[1:])


def test_bench_grid_one_row_equals_path(capsys):
    assert run(["bench", "--topology", "grid", "--rows", "1", "--n-range",
                "8,16", "--k-range", "2"]) == 0
    grid_out = capsys.readouterr().out.splitlines()[1:]
    assert run(["bench", "--topology", "path", "--n-range", "8,16",
                "--k-range", "2"]) == 0
    path_out = capsys.readouterr().out.splitlines()[1:]
    assert [l.split(",")[4] for l in grid_out] == \
        [l.split(",")[4] for l in path_out]


def test_bench_bad_range():
    assert run(["bench", "--topology", "complete", "--n-range", "abc"]) == 2


# --- lightcone ------------------------------------------------------------------


def test_lightcone_pass_on_synth_output(tmp_path, capsys):
    out = synth_file(tmp_path, ["grid", "2x4"], 8, 1)
    assert run(["lightcone", "--circuit", str(out), "--topology", "grid",
                "2x4"]) == 0
    assert "audit PASS" in capsys.readouterr().out


def test_lightcone_fails_on_trivial_circuit(tmp_path, capsys):
    f = tmp_path / "idle.qc"
    f.write_text("QUBITS 4\nDATA 0 1 2 3\nU 0 "
                 "0.10000000000000000 0.0 0.0 0.0\n")
    assert run(["lightcone", "--circuit", str(f), "--topology",
                "complete"]) == 3
    assert "FAIL" in capsys.readouterr().out


def test_lightcone_unknown_topology(tmp_path):
    out = synth_file(tmp_path, ["complete"], 4, 1)
    assert run(["lightcone", "--circuit", str(out), "--topology",
                "torus"]) == 2


def test_missing_subcommand_usage_error():
    assert run([]) == 2
