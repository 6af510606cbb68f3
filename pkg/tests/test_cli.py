from __future__ import annotations

import json
import os
import subprocess
import sys

import pytest

from metriforge.cli import main
from metriforge.config import ENV_MAX_SPACE

HAMMING = '{"family": "hamming", "params": {"q": 2}}'
CHAIN2 = '{"poset": {"n": 2, "relations": [[1, 2]]}}'


@pytest.fixture
def files(tmp_path):
    (tmp_path / "hamming.json").write_text(HAMMING)
    (tmp_path / "chainposet2.json").write_text(CHAIN2)
    (tmp_path / "rep3.txt").write_text("q=2 n=3\n000\n111\n")
    (tmp_path / "c01.txt").write_text("q=2 n=2\n00\n01\n")
    (tmp_path / "pair4.txt").write_text("q=2 n=4\n0000\n1100\n0011\n1111\n")
    (tmp_path / "strings.txt").write_text("q=2 n=3\n00\n111\n")
    return tmp_path


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_dist_examples(files, capsys):
    assert run(capsys, "dist", "-m", files / "hamming.json", "000", "101")[:2] == (0, "2\n")
    assert run(capsys, "dist", "-m", files / "chainposet2.json", "00", "01")[:2] == (0, "2\n")
    assert run(capsys, "dist", "-m", "edit:IDS", "abc", "acb")[:2] == (0, "2\n")
    assert run(capsys, "dist", "-m", "kendall", "[1,2,3]", "[3,2,1]")[:2] == (0, "3\n")
    assert run(capsys, "weight", "-m", "lee:5", "[3,4]")[:2] == (0, "3\n")


@pytest.mark.parametrize(
    "argv,fragment",
    [
        (["dist", "-m", "HAM", "0x0", "101"], "malformed"),
        (["dist", "-m", "HAM", "00", "101"], "length"),
        (["dist", "-m", '{"family": "nope"}', "0", "1"], "family"),
        (["dist", "-m", '{"poset": {"relations": []}}', "0", "1"], "'n'"),
        (["dist", "0", "1"], "--metric"),
        (["verify", "nosuch"], "unknown suite"),
        (["bounds", "kendall", "--n", "4", "--t", "3"], "t must satisfy"),
        (["analyze", "-m", "HAM", "-c", "/nonexistent/code.txt"], "cannot read"),
        (["matched", "-m", "hamming", "--channel", "bsc:2", "--n", "2"], "outside"),
    ],
)
def test_input_errors_exit_2(capsys, argv, fragment):
    argv = [HAMMING if a == "HAM" else a for a in argv]
    code, out, err = run(capsys, *argv)
    assert code == 2 and fragment in err and out == ""


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["bounds", "nope"])
    assert exc.value.code == 2


def test_analyze_repetition(files, capsys):
    code, out, _ = run(capsys, "analyze", "-m", files / "hamming.json", "-c", files / "rep3.txt", "--json")
    rep = json.loads(out)
    assert code == 0
    assert rep["schema"] == 1
    assert {k: rep[k] for k in ("n", "size", "min_distance", "packing_radius", "enumerator", "perfect")} == {
        "n": 3,
        "size": 2,
        "min_distance": 3,
        "packing_radius": 1,
        "enumerator": [1, 0, 0, 1],
        "perfect": True,
    }
    assert list(rep) == sorted(rep)


def test_analyze_chain_poset_and_plain_output(files, capsys):
    code, out, _ = run(capsys, "analyze", "-m", files / "chainposet2.json", "-c", files / "c01.txt")
    assert code == 0
    assert "min_distance: 2" in out and "packing_radius: 1" in out


def test_analyze_non_weight_metric_notice(files, capsys):
    code, out, _ = run(capsys, "analyze", "-m", "asymmetric", "-c", files / "rep3.txt")
    assert code == 0 and "not weight-defined" in out and "enumerator" in out


def test_analyze_strings(files, capsys):
    code, out, _ = run(capsys, "analyze", "-m", '{"edit": {"ops": "ID", "q": 2}}', "-c", files / "strings.txt")
    assert code == 0 and "min_distance: 5" in out


def test_refusal_exit_3(files, capsys, monkeypatch):
    code, _, err = run(capsys, "analyze", "-m", files / "hamming.json", "-c", files / "rep3.txt", "--max-space", "4")
    assert code == 3 and "refused" in err
    assert ENV_MAX_SPACE not in os.environ or os.environ[ENV_MAX_SPACE] != "4"
    monkeypatch.setenv(ENV_MAX_SPACE, "4")
    assert run(capsys, "analyze", "-m", files / "hamming.json", "-c", files / "rep3.txt")[0] == 3
    assert run(capsys, "exact-a", "--n", "14", "--t", "1")[0] == 3


def test_bounds(capsys):
    code, out, _ = run(capsys, "bounds", "kendall", "--n", "4", "--r", "1", "--json")
    assert code == 0 and json.loads(out) == {"schema": 1, "sphere_lower": "8/3", "sphere_upper": 6}
    code, out, _ = run(capsys, "bounds", "kendall", "--n", "4", "--t", "4")
    assert out == "singleton: 6\n"
    code, out, _ = run(capsys, "bounds", "aued", "--n", "6", "--t", "1", "--json")
    assert json.loads(out) == {"schema": 1, "varshamov": "64/3", "lin_bose": "20/3"}
    code, out, _ = run(capsys, "bounds", "ids1", "--n", "7", "--json")
    assert json.loads(out) == {"schema": 1, "lower": "64/7", "upper": 16}
    code, out, _ = run(capsys, "bounds", "cullina", "--n", "4", "--a", "1", "--b", "0", "--json")
    assert json.loads(out)["asymptotic_upper"] == 4
    code, out, _ = run(capsys, "bounds", "ks", "--n", "6", "--k", "2", "--r1", "2", "--r2", "3", "--b", "2", "--q", "5", "--json")
    rep = json.loads(out)
    assert code == 0 and rep["bracket"] == 125 and rep["holds"] and not rep["holds_literal"]
    code, out, _ = run(capsys, "bounds", "ks", "--n", "6", "--k", "4", "--r1", "2", "--r2", "3", "--b", "2", "--q", "5")
    assert code == 1


def test_singleton_bound_command(files, capsys):
    cfg = '{"covering": [[1, 2], [3, 4]], "n": 4}'
    code, out, _ = run(capsys, "bounds", "singleton", "-m", cfg, "-c", files / "pair4.txt", "--json")
    rep = json.loads(out)
    assert code == 0 and rep["comb_singleton"]["holds"] and rep["block_singleton"]["holds"]


def test_macwilliams(files, capsys):
    code, out, _ = run(capsys, "macwilliams", "-m", '{"poset": {"n": 3, "relations": [[1, 3]]}}', "--kind", "E_C", "--json")
    rep = json.loads(out)
    assert code == 1 and rep["E_C_holds"] is False and len(rep["E_C_witness"]) == 2 and rep["hierarchical"] is False
    code, out, _ = run(capsys, "macwilliams", "-m", '{"poset": {"n": 3, "relations": [[1, 2], [2, 3]]}}')
    assert code == 0 and "E_C_holds: true" in out
    cfg = '{"covering": [[1, 2], [3, 4]], "n": 4}'
    code, out, _ = run(capsys, "macwilliams", "-m", cfg, "-c", files / "pair4.txt", "--json")
    rep = json.loads(out)
    assert code == 0 and rep["agree"] and rep["dual_transform"] == rep["dual_direct"]


def test_isometry(capsys):
    assert run(capsys, "isometry", "-m", "edit:IDS", "--length", "3")[0] == 0
    assert run(capsys, "isometry", "-m", '{"poset": {"n": 3, "relations": [[1, 3]]}, "q": 3}')[0] == 0
    assert run(capsys, "isometry", "-m", '{"burst": {"n": 3, "b": 2}, "q": 3}')[0] == 0
    assert run(capsys, "isometry", "-m", "lee:5")[0] == 2


def test_matched(capsys):
    code, out, _ = run(capsys, "matched", "-m", "hamming", "--channel", "bsc:0.1", "--n", "3")
    assert code == 0 and out == "matched: true\n"
    code, out, _ = run(capsys, "matched", "-m", "hamming", "--channel", "asym:0.01,0.2", "--n", "3", "--json")
    rep = json.loads(out)
    assert code == 0 and rep["matched"] is False and set(rep["witness"]) == {"received", "c1", "c2"}


def test_exact_a(capsys):
    code, out, _ = run(capsys, "exact-a", "--n", "2", "--t", "1", "--ops", "ID")
    assert code == 0 and out.startswith("A: 2\n")
    code, out, _ = run(capsys, "exact-a", "--n", "4", "--kendall-d", "3", "--json")
    assert json.loads(out)["A"] == 5


def test_verify_suite(capsys):
    code, out, _ = run(capsys, "verify", "macwilliams-block")
    assert code == 0 and out.rstrip().endswith("macwilliams-block: pass")
    code, out, _ = run(capsys, "verify", "hierarchical-ec", "--json")
    rep = json.loads(out)
    assert code == 0 and rep["passed"] and rep["schema"] == 1


def test_output_is_byte_identical_across_processes(files):
    argv = [sys.executable, "-m", "metriforge.cli", "analyze", "-m", str(files / "hamming.json"), "-c", str(files / "rep3.txt"), "--json"]
    runs = [subprocess.run(argv, capture_output=True, check=True).stdout for _ in range(2)]
    env = dict(os.environ, PYTHONHASHSEED="123")
    runs.append(subprocess.run(argv, capture_output=True, check=True, env=env).stdout)
    assert runs[0] == runs[1] == runs[2]
    argv = [sys.executable, "-m", "metriforge.cli", "macwilliams", "-m", '{"poset": {"n": 3, "relations": [[1, 3]]}}']
    outs = {subprocess.run(argv, capture_output=True, env=dict(os.environ, PYTHONHASHSEED=s)).stdout for s in ("1", "2", "3")}
    assert len(outs) == 1
