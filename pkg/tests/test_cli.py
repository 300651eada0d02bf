import json
import subprocess
import sys

import pytest
import yaml

from gridgenus.cli import main
from gridgenus.cubical import parse_mesh
from gridgenus.report import load_embedding
from gridgenus.rotation import trace_faces


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestReport:
    def test_333(self, capsys):
        code, out, _ = run(capsys, "report", "3", "3", "3")
        doc = yaml.safe_load(out)
        assert code == 0
        assert doc["exact_genus"] == {"value": 5, "family": "quadrilateral"}
        assert doc["classification"]["planar"] is False
        assert doc["classification"]["toroidal_2cell"] is False
        assert doc["quadrilateral_distance"] == "0"

    def test_421(self, capsys):
        code, out, _ = run(capsys, "report", "4", "2", "1", "--json")
        doc = json.loads(out)
        assert code == 0
        assert doc["exact_genus"]["value"] == 2
        assert doc["classification"]["toroidal_2cell"] is False
        assert doc["bounds"]["lower_source"] == "minor-packing"
        assert doc["packing_certificate"]["targets"] == ["K3,3", "K3,3"]

    def test_442_gap(self, capsys):
        code, out, _ = run(capsys, "report", "4", "4", "2", "--construct")
        doc = yaml.safe_load(out)
        assert code == 0
        assert doc["exact_genus"] is None
        assert doc["bounds"]["exact"] is False and doc["bounds"]["gap"] == 2
        assert doc["construction"]["traced_genus"] == 8 and doc["construction"]["verified"]
        assert doc["genus_range"]["partial"] is True

    def test_rationals_and_original_order(self, capsys):
        _, out, _ = run(capsys, "report", "1", "2", "2", "--json")
        doc = json.loads(out)
        assert doc["spec"] == {"params": [1, 2, 2], "normalized": [2, 2, 1]}
        assert doc["euler"]["value"] == "1/4"
        assert doc["quadrilateral_distance"] == "3/4"

    def test_oracle_flag(self, capsys):
        code, out, _ = run(capsys, "report", "1", "1", "1", "--oracle", "1000", "--json")
        doc = json.loads(out)
        assert code == 0 and doc["oracle"]["spectrum"] == [0, 1, 2]

    def test_oracle_flag_exhausted(self, capsys):
        code, out, _ = run(capsys, "report", "2", "2", "--oracle", "5")
        assert code == 3

    def test_deterministic(self, capsys):
        a = run(capsys, "report", "3", "2", "2", "--construct")[1]
        b = run(capsys, "report", "3", "2", "2", "--construct")[1]
        assert a == b

    def test_four_dimensional(self, capsys):
        _, out, _ = run(capsys, "report", "2", "2", "2", "1", "--construct", "--json")
        doc = json.loads(out)
        assert doc["recursive_upper_bound"] >= doc["bounds"]["upper"]
        assert doc["construction"]["available"] is False


class TestUsage:
    @pytest.mark.parametrize(
        "argv",
        [
            ["report"],
            ["report", "x"],
            ["report", "0", "0"],
            ["report", "2", "-1"],
            ["frobnicate"],
            ["report", "2", "2", "--oracle", "0"],
        ],
    )
    def test_exit_one(self, capsys, argv):
        with pytest.raises(SystemExit) as e:
            sys.exit(main(argv))
        assert e.value.code == 1

    def test_bad_env_budget(self, capsys, monkeypatch):
        monkeypatch.setenv("GRIDGENUS_BUDGET", "lots")
        code, _, err = run(capsys, "oracle", "1", "1")
        assert code == 1 and "GRIDGENUS_BUDGET" in err


class TestEmbed:
    @pytest.mark.parametrize("params, genus", [(("2", "2", "2"), 2), (("3", "3", "1"), 1), (("5", "1", "1"), 0)])
    def test_file_round_trip(self, capsys, tmp_path, params, genus):
        out = tmp_path / "e.json"
        code, msg, _ = run(capsys, "embed", *params, "--out", str(out))
        assert code == 0 and str(out) in msg
        rs, info = load_embedding(out.read_text())
        assert trace_faces(rs).genus == genus == info["traced_genus"]

    def test_quadrilateral_331(self, capsys, tmp_path):
        out = tmp_path / "e.json"
        run(capsys, "embed", "3", "3", "1", "--out", str(out))
        _, info = load_embedding(out.read_text())
        assert info["case"] == "all-odd" and set(info["face_lengths"]) == {"4"}

    def test_tampered_file_rejected(self, capsys, tmp_path):
        out = tmp_path / "e.json"
        run(capsys, "embed", "2", "2", "2", "--out", str(out))
        doc = json.loads(out.read_text())
        doc["construction"]["traced_genus"] = 1
        with pytest.raises(ValueError):
            load_embedding(json.dumps(doc))

    def test_four_dimensional_rejected(self, capsys):
        code, _, err = run(capsys, "embed", "1", "1", "1", "1")
        assert code == 1 and "recursive upper bound 7" in err


class TestMesh:
    def test_333(self, capsys, tmp_path):
        out = tmp_path / "m.off"
        code, msg, _ = run(capsys, "mesh", "3", "3", "3", "--out", str(out))
        assert code == 0 and "genus 5" in msg and "characteristic -8" in msg
        verts, faces = parse_mesh(out.read_bytes())
        assert len(verts) == 64 and all(len(f) == 4 for f in faces)

    def test_cube_stdout_obj(self, capsys):
        code, out, err = run(capsys, "mesh", "1", "1", "1", "--format", "obj")
        assert code == 0 and out.count("\nv ") + out.startswith("v ") == 8 and out.count("\nf ") == 6
        assert "genus 0" in err

    def test_even_needs_flag(self, capsys):
        code, _, err = run(capsys, "mesh", "2", "2", "2")
        assert code == 1 and "proper subgraph" in err
        code, _, err = run(capsys, "mesh", "2", "2", "2", "--allow-subgraph")
        assert code == 0 and "genus" in err and "of 54 grid edges" in err


class TestVerifyAndOracle:
    def test_verify_small(self, capsys):
        code, out, _ = run(capsys, "verify", "--max-vertices", "8", "--budget", "1000000", "--json")
        doc = json.loads(out)
        assert code == 0 and doc["pass"] and doc["discrepancies"] == 0
        ex = [r for r in doc["results"] if r["spec"] == [1, 1, 1] and r["check"] == "exhaustive"]
        assert "{0,1,2}" in ex[0]["detail"]

    def test_verify_empty(self, capsys):
        code, out, _ = run(capsys, "verify", "--max-vertices", "0")
        assert code == 0 and yaml.safe_load(out)["checks"] == 0

    def test_oracle(self, capsys):
        code, out, _ = run(capsys, "oracle", "1", "1", "1", "--json")
        doc = json.loads(out)
        assert code == 0 and doc["spectrum"] == [0, 1, 2] and doc["exhausted"]

    def test_oracle_budget_env(self, capsys, monkeypatch):
        monkeypatch.setenv("GRIDGENUS_BUDGET", "10")
        code, out, _ = run(capsys, "oracle", "2", "2")
        assert code == 3 and yaml.safe_load(out)["enumerated"] == 10


def test_console_script_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "gridgenus.cli", "report", "2", "2", "1"], capture_output=True, text=True
    )
    assert res.returncode == 0 and "exact_genus" in res.stdout
