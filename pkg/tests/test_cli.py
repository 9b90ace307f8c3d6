import json
import subprocess
import sys
from pathlib import Path

DATA = Path(__file__).parent.parent / "src" / "k3forge" / "data"


def run(*args):
    return subprocess.run([sys.executable, "-m", "k3forge.cli", *args],
                          capture_output=True, text=True)


def test_discform_example():
    r = run("--json", "lattice", "discform", "--gram", "[[-2,0,1],[0,-2,1],[1,1,-4]]")
    assert r.returncode == 0
    out = json.loads(r.stdout)
    assert out["orders"] == [12] and out["q"] == ["-7/12"]


def test_lattice_roots():
    r = run("lattice", "roots", "--gram", "[[-2,1],[1,-2]]")
    assert r.returncode == 0 and "A2" in r.stdout


def test_unknown_subcommand_usage():
    r = run("bogus")
    assert r.returncode in (2, 64)  # argparse rejects unknown commands


def test_missing_command_is_usage_error():
    r = run()
    assert r.returncode == 64


def test_malformed_curve_file(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    r = run("ell", "fibers", str(bad))
    assert r.returncode == 65


def test_ell_fibers():
    r = run("--json", "ell", "fibers", str(DATA / "corpus" / "e20_k10.json"))
    assert r.returncode == 0
    out = json.loads(r.stdout)
    assert out["euler"] == 24
    assert any(f["type"] == "I12" and f["place"] == "inf" for f in out["fibers"])


def test_niemeier_build():
    r = run("--json", "niemeier", "build", "E8^3")
    assert r.returncode == 0
    out = json.loads(r.stdout)
    assert out["det"] == 1 and out["glue_order"] == 1


def test_repro_suite_passes():
    r = run("repro", "embeddings")
    assert r.returncode == 0


def test_ns_match():
    r = run("--json", "ns", "match", "--id", "ns20")
    assert r.returncode == 0
    assert json.loads(r.stdout)["candidate"] == "M(20)"


def test_frame_compute(tmp_path):
    recipe = tmp_path / "r.json"
    recipe.write_text(json.dumps({
        "niemeier": "E8^3",
        "parts": {"N": {"comp": 0, "preset": "N@E8"},
                  "A1": {"comp": 1, "preset": "A1"},
                  "A2": {"comp": 2, "preset": "A2"}}}))
    r = run("--json", "frame", "compute", "--recipe", str(recipe))
    assert r.returncode == 0
    out = json.loads(r.stdout)
    assert out["roots"] == ["A2", "A3", "E6", "E7"] and out["det"] == 72
