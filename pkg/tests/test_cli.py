import subprocess
import sys

import numpy as np
import pytest

from qbnet import catalog
from qbnet.cli import main
from qbnet.netfile import emit_cases, emit_net, read_net


@pytest.fixture()
def fig19_file(tmp_path):
    path = tmp_path / "fig19.qbn"
    path.write_text(emit_net(catalog.build("fig19-loop")))
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_validate_good_file(capsys, fig19_file):
    code, out, _ = run(capsys, "validate", fig19_file)
    assert code == 0
    assert "ok" in out


def test_validate_reports_bad_column(capsys, tmp_path):
    text = emit_net(catalog.build("fig9-and"))
    text = text.replace("entry (0) (0) (0) 1", "entry (0) (0) (0) 0.90000000000000002")
    path = tmp_path / "bad.qbn"
    path.write_text(text)
    code, out, _ = run(capsys, "validate", str(path))
    assert code == 1
    assert out.count("violation:") == 1
    assert "column 0 sums to 0.9" in out


def test_validate_cyclic_file(capsys, tmp_path):
    path = tmp_path / "cycle.qbn"
    path.write_text(emit_net(catalog.build("fig4-cycle")))
    code, out, _ = run(capsys, "validate", str(path))
    assert code == 1
    assert "cycle" in out


def test_parse_failures_exit_2(capsys, tmp_path):
    path = tmp_path / "junk.qbn"
    path.write_text("not a net\n")
    code, _, err = run(capsys, "validate", str(path))
    assert code == 2
    assert "line 1" in err
    code, _, err = run(capsys, "validate", str(tmp_path / "missing.qbn"))
    assert code == 2


def test_query_prints_twelve_digit_distribution(capsys, fig19_file):
    code, out, _ = run(capsys, "query", fig19_file, "--hypothesis", "u.plus")
    assert code == 0
    assert out == "u.plus=0  0.292186531111\nu.plus=1  0.707813468889\n"


def test_query_pathsum_mode_matches_digit_for_digit(capsys, fig19_file):
    _, reference, _ = run(capsys, "query", fig19_file, "--hypothesis", "u.plus")
    code, out, _ = run(
        capsys, "query", fig19_file, "--hypothesis", "u.plus", "--mode", "pathsum"
    )
    assert code == 0
    assert out == reference


def test_query_classical_mode_uses_the_parent_net(capsys, fig19_file):
    code, out, _ = run(
        capsys, "query", fig19_file, "--hypothesis", "u.plus", "--mode", "classical"
    )
    assert code == 0
    assert out == "u.plus=0  0.5\nu.plus=1  0.5\n"


def test_query_with_evidence_and_fqna(capsys, fig19_file):
    code, out, _ = run(
        capsys,
        "query",
        fig19_file,
        "--hypothesis",
        "z.plus=0",
        "--evidence",
        "u.plus=0",
        "--fqna",
    )
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "z.plus=0  0.904508497187"
    assert lines[1] == "f_qna  1.71123562095"


def test_query_fuzzy_evidence(capsys, fig19_file):
    code, out, _ = run(
        capsys,
        "query",
        fig19_file,
        "--hypothesis",
        "z.plus",
        "--evidence",
        "u.plus={0,1}",
    )
    assert code == 0
    assert "z.plus=0  0.5" in out


def test_query_contradiction_exits_3(capsys, fig19_file):
    code, out, _ = run(
        capsys,
        "query",
        fig19_file,
        "--hypothesis",
        "u.plus",
        "--evidence",
        "z.plus=0,z.minus=0",
    )
    assert code == 3
    assert "no output" in out
    assert not any(ch.isdigit() for ch in out.replace("output", ""))


def test_query_usage_errors_exit_2(capsys, fig19_file):
    code, _, err = run(capsys, "query", fig19_file, "--hypothesis", "ghost")
    assert code == 2
    assert "ghost" in err
    code, _, err = run(capsys, "query", fig19_file, "--hypothesis", "u.plus=7")
    assert code == 2
    assert "outside" in err
    code, _, err = run(
        capsys, "query", fig19_file, "--hypothesis", "u.plus", "--evidence", "u.plus"
    )
    assert code == 2


def test_cases_report_structure(capsys, fig19_file):
    code, out, _ = run(capsys, "cases", fig19_file)
    assert code == 0
    assert out.count("case ") == 33
    assert "case 10: z.plus=0 z.minus=0" in out
    assert out.count("no output") == 4
    assert "0.292186531111" in out
    assert "1.71123562095" in out  # the u-evidence noise factor
    # twin runs are byte-identical
    code, again, _ = run(capsys, "cases", fig19_file)
    assert again == out


def test_cases_csv_carries_the_same_numbers(capsys, fig19_file):
    _, table, _ = run(capsys, "cases", fig19_file)
    code, out, _ = run(capsys, "cases", fig19_file, "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "case,evidence,hypothesis,kind,value,number,note"
    # every probability printed in the table shows up in the csv and back
    table_numbers = {tok for tok in table.split() if tok.replace(".", "").isdigit()}
    csv_numbers = {
        cell for line in lines[1:] for cell in line.split(",")
        if cell.replace(".", "").isdigit()
    }
    case_labels = {str(n) for n in range(1, 34)}
    assert table_numbers - case_labels <= csv_numbers
    for needle in ("0.292186531111", "0.707813468889", "0.904508497187"):
        assert needle in table and needle in out
    assert "no-output" in out


def test_cases_file_subset(capsys, tmp_path, fig19_file):
    net = catalog.build("fig19-loop")
    comps = catalog.query_components(net)
    chosen = [c for c in catalog.default_cases(net) if c.number in (1, 2, 4, 10, 12)]
    cases_path = tmp_path / "cases.csv"
    cases_path.write_text(emit_cases(comps, chosen))
    code, out, _ = run(capsys, "cases", fig19_file, str(cases_path))
    assert code == 0
    assert out.count("case ") == 5
    assert "case 10" in out and "no output" in out


def test_cases_empty_file(capsys, tmp_path, fig19_file):
    empty = tmp_path / "none.csv"
    empty.write_text("")
    code, out, _ = run(capsys, "cases", fig19_file, str(empty))
    assert code == 0
    assert out == ""


def test_cases_on_classical_net_is_refused(capsys, tmp_path):
    path = tmp_path / "and.qbn"
    path.write_text(emit_net(catalog.build("fig9-and")))
    code, _, err = run(capsys, "cases", str(path))
    assert code == 2
    assert "quantum" in err


def test_paths_lists_classes_and_amplitudes(capsys, fig19_file):
    code, out, _ = run(capsys, "paths", fig19_file)
    assert code == 0
    assert "2 final configurations" in out
    assert out.count("  path ") == 4
    assert "0.694036270372+0.475528258148j" in out
    assert "weight 0.707813468889" in out


def test_paths_on_a_classical_net(capsys, tmp_path):
    path = tmp_path / "and.qbn"
    path.write_text(emit_net(catalog.build("fig9-and")))
    code, out, _ = run(capsys, "paths", str(path))
    assert code == 0
    assert "probability" in out and "amplitude" not in out


def test_paths_respects_the_state_cap(capsys, fig19_file, monkeypatch):
    monkeypatch.setenv("QBNET_MAX_STATES", "10")
    code, _, err = run(capsys, "paths", fig19_file)
    assert code == 1
    assert "cap" in err


def test_catalog_list_census(capsys):
    code, out, _ = run(capsys, "catalog", "list")
    assert code == 0
    lines = out.splitlines()
    assert len(lines) >= 14
    ids = {line.split()[0] for line in lines}
    for needed in ("fig9-and", "fig14-walk", "fig18", "fig19-loop", "fig28", "fig29"):
        assert needed in ids


def test_catalog_build_round_trips(capsys, tmp_path):
    out_path = tmp_path / "fig28.qbn"
    code, out, _ = run(capsys, "catalog", "build", "fig28", "-o", str(out_path))
    assert code == 0
    text = out_path.read_text()
    assert "meta phase -0.7071067811865476+0.7071067811865476j" in text
    rebuilt = read_net(str(out_path))
    reference = catalog.build("fig28")
    for node in reference.graph.nodes:
        assert np.array_equal(rebuilt.table(node), reference.table(node))


def test_catalog_build_takes_typed_params(capsys):
    code, out, _ = run(
        capsys,
        "catalog",
        "build",
        "fig19-loop",
        "--param",
        "theta_u=pi/7",
        "--param",
        "psi01=0.6+0j",
        "--param",
        "psi10=0.8+0j",
    )
    assert code == 0
    assert "meta psi01 0.6" in out
    code, _, err = run(capsys, "catalog", "build", "nothere")
    assert code == 2
    assert "nothere" in err
    code, _, err = run(
        capsys, "catalog", "build", "fig19-loop", "--param", "theta_u=huh"
    )
    assert code == 2


def test_lattice_probability_table(capsys):
    code, out, _ = run(
        capsys,
        "lattice",
        "--nx", "5", "--nt", "3", "--dx", "0.5", "--dt", "0.2",
        "--potential", "harmonic", "--strength", "3",
    )
    assert code == 0
    lines = out.splitlines()
    assert lines[1] == "total 1"
    sites = [line for line in lines if line.startswith("site ")]
    assert len(sites) == 5
    probs = [float(line.split()[-1]) for line in sites]
    assert abs(sum(probs) - 1.0) < 1e-9


def test_lattice_gaussian_kernel_runs(capsys):
    code, out, _ = run(
        capsys,
        "lattice",
        "--nx", "4", "--nt", "2", "--dx", "0.4", "--dt", "0.1",
        "--kernel", "gaussian",
    )
    assert code == 0
    assert "kernel gaussian" in out


def test_closed_pipe_exits_quietly(fig19_file):
    # piping into head must not leave a traceback behind
    script = f"{sys.executable} -m qbnet cases {fig19_file} --format csv | head -2"
    proc = subprocess.run(
        script + "; exit ${PIPESTATUS[0]}",
        shell=True,
        executable="/bin/bash",
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stderr == ""
