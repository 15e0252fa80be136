"""Text format round trips, reporting, and the command line tool."""

import json
import os
import subprocess
import sys

import pytest

from mgd.diagram import MarkedGraphDiagram
from mgd.fixtures import all_fixtures, fixture_names
from mgd.mgdio import MgdDocument, MgdSyntaxError, parse, report, serialize

B = MarkedGraphDiagram.build


def test_parse_examples():
    assert parse("O 1").diagram == B(free_loops=1)
    assert parse("C 1 1 2 2").diagram == B(crossings=[(1, 1, 2, 2)])
    assert parse("V 1 2 2 1").diagram == B(vertices=[(1, 2, 2, 1)])


def test_parse_headers_and_comments():
    doc = parse("mgd 1\nname demo thing\nflag admissible orientable\n# note\nO 2\n")
    assert doc.name == "demo thing"
    assert doc.flags == {"admissible", "orientable"}
    assert doc.diagram.free_loops == 2


def test_parse_errors_carry_line_numbers():
    with pytest.raises(MgdSyntaxError) as err:
        parse("O 1\nC 1 2 3\n")
    assert "line 2" in str(err.value)
    with pytest.raises(MgdSyntaxError):
        parse("Q 1 2 3 4")
    with pytest.raises(MgdSyntaxError):
        parse("C 1 2 3 0")
    with pytest.raises(MgdSyntaxError):
        parse("C 1 1 2 3")  # arity failure surfaces as validation error
    with pytest.raises(MgdSyntaxError):
        parse("flag shiny")


def test_serialize_parse_round_trip():
    for name, doc in all_fixtures():
        text = serialize(doc)
        again = parse(text)
        assert again.diagram == doc.diagram
        assert again.flags == doc.flags
        assert serialize(again) == text  # canonical output is idempotent


def test_report_fields():
    rep = report(B(free_loops=1))
    assert rep["graph_components"] == 1
    assert rep["state_sum"] == "2"
    assert rep["R_prime"] == "2"
    assert rep["S_prime"] == 2
    assert rep["Q"] == "2 / sqrt2^0"
    assert rep["resolutions"]["plus"]["components"] == 1

    kink = report(B(crossings=[(1, 1, 2, 2)]), with_states=True)
    assert kink["t_plus"] == 1
    assert kink["state_sum"] == "2x + 2w"
    assert kink["R_prime"] == "2"
    classes = sorted(s["class"] for s in kink["states"])
    assert classes == ["bad", "bad", "good", "good"]


def _run(*args, env=None):
    full_env = dict(os.environ)
    if env:
        full_env.update(env)
    return subprocess.run(
        [sys.executable, "-m", "mgd.cli", *args],
        capture_output=True,
        text=True,
        env=full_env,
    )


def _fixture_path(name):
    import mgd

    return os.path.join(os.path.dirname(mgd.__file__), "fixtures", f"{name}.mgd")


def test_cli_compute_json():
    proc = _run("compute", _fixture_path("slide_pair_b"), "--json")
    assert proc.returncode == 0, proc.stderr
    rep = json.loads(proc.stdout)
    assert rep["state_sum"] == "2x^2 + 2xz"
    assert rep["Q"] == "1+i / sqrt2^0"


def test_cli_sites_move_round_trip(tmp_path):
    src = _fixture_path("slide_pair_a")
    proc = _run("sites", src, "--move", "O4")
    assert proc.returncode == 0
    site = proc.stdout.strip().splitlines()[0]
    proc2 = _run("move", src, "--site", site)
    assert proc2.returncode == 0, proc2.stderr
    out = tmp_path / "moved.mgd"
    out.write_text(proc2.stdout)
    proc3 = _run("compute", str(out), "--json")
    assert json.loads(proc3.stdout)["state_sum"] == "2x^2 + 2xz"


def test_cli_resolve(tmp_path):
    proc = _run("resolve", _fixture_path("infinity_sphere"), "--sign", "+")
    assert proc.returncode == 0
    assert "O 1" in proc.stdout


def test_cli_fuzz():
    proc = _run("fuzz", _fixture_path("circle"), "--seed", "1", "--steps", "3",
                "--allow", "O1,O2")
    assert proc.returncode == 0
    lines = proc.stdout.strip().splitlines()
    assert len(lines) == 3
    assert all("R'=2" in line for line in lines)


def test_cli_exit_codes(tmp_path):
    assert _run("compute").returncode == 1  # usage: missing file
    bad = tmp_path / "bad.mgd"
    bad.write_text("C 1 2 3\n")
    assert _run("compute", str(bad)).returncode == 2
    nonplanar = tmp_path / "np.mgd"
    nonplanar.write_text("V 1 2 1 2\n")
    assert _run("compute", str(nonplanar)).returncode == 2
    big = tmp_path / "big.mgd"
    big.write_text("O 9\n")
    assert _run("compute", str(big), env={"MGD_STATE_LIMIT": "16"}).returncode == 3
    assert _run("compute", str(big), env={"MGD_STATE_LIMIT": "4096"}).returncode == 0
    assert _run("compute", str(tmp_path / "missing.mgd")).returncode == 2
    proc = _run("move", _fixture_path("circle"), "--site", "O1 rev c=0")
    assert proc.returncode == 2


def test_fixture_names_cover_core_corpus():
    names = set(fixture_names())
    assert {"circle", "kink_pos", "trefoil", "spun_trefoil", "slide_pair_a",
            "slide_pair_b", "torus_standard"} <= names
