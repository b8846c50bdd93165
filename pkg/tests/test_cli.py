import io
import json
import subprocess
import sys

import pytest

from minorforge import generators as gen
from minorforge.cli import main, read_graph
from minorforge.io import from_graph6, to_graph6


def run(capsys, *argv, stdin=None, monkeypatch=None):
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_gen_pipe_into_minor(capsys, monkeypatch, tmp_path):
    code, out = run(capsys, "gen", "sk7-blocker", "--s", "1")
    assert code == 0 and from_graph6(out.strip()).n == 9
    k7 = tmp_path / "K7.g6"
    k7.write_text(to_graph6(gen.complete(7)) + "\n")
    code, out = run(capsys, "minor", str(k7), "-", stdin=out, monkeypatch=monkeypatch)
    res = json.loads(out)
    assert code == 0 and res["verdict"] == "absent" and res["oracle_agreement"] is True


def test_shell_pipe(tmp_path):
    k7 = tmp_path / "K7.g6"
    k7.write_text(to_graph6(gen.complete(7)) + "\n")
    cmd = f"{sys.executable} -m minorforge.cli gen sk7-blocker --s 1 | {sys.executable} -m minorforge.cli minor {k7} -"
    out = subprocess.run(cmd, shell=True, capture_output=True, text=True, check=True).stdout
    assert json.loads(out)["verdict"] == "absent"


def test_minor_found_and_strict(capsys, tmp_path):
    pet = tmp_path / "petersen.g6"
    pet.write_text(to_graph6(gen.petersen()))
    code, out = run(capsys, "minor", "K5", str(pet))
    res = json.loads(out)
    assert code == 0 and res["verdict"] == "found" and res["oracle_agreement"]
    code, _ = run(capsys, "minor", "K6", str(pet), "--strict")
    assert code == 1


def test_exit_codes(capsys, monkeypatch):
    assert main(["minor", "nosuchgraph", "K3"]) == 2
    monkeypatch.setenv("MINORFORGE_CAP", "5")
    assert main(["minor", "K3", "petersen"]) == 3
    monkeypatch.delenv("MINORFORGE_CAP")
    assert main(["minor", "K3", "petersen", "--cap", "5"]) == 3
    assert main(["embed", "P2", "K3"]) == 2


def test_config_file_sets_cap(capsys, tmp_path):
    cfg = tmp_path / "mf.cfg"
    cfg.write_text("cap = 4\nseed = 7\n")
    assert main(["minor", "K3", "C5", "--config", str(cfg)]) == 3
    assert main(["minor", "K3", "C5", "--config", str(cfg), "--cap", "8"]) == 0


def test_json_is_deterministic(capsys):
    outs = []
    for _ in range(2):
        main(["gen", "kst-blocker", "--s", "2", "--t", "6", "--certificate", "--seed", "3"])
        outs.append(capsys.readouterr().out)
    assert outs[0] == outs[1]
    cert = json.loads(outs[0])
    assert cert["minor_checks"][0]["verdict"] == "absent"
    keys = list(cert)
    assert keys == sorted(keys)


def test_other_subcommands(capsys, tmp_path):
    code, out = run(capsys, "densepair", "petersen", "--k", "2")
    assert code == 0 and json.loads(out)["dense"]
    code, out = run(capsys, "menger", "C4", "--U", "0", "--W", "2", "--l", "2")
    assert len(json.loads(out)["paths"]) == 2
    code, out = run(capsys, "menger", "P5", "--U", "0", "--W", "4", "--l", "2", "--strict")
    assert code == 1 and json.loads(out)["separation"]["order"] == 1
    mk2 = tmp_path / "8K2.g6"
    mk2.write_text(to_graph6(gen.disjoint_union([gen.complete(2)] * 8)))
    code, out = run(capsys, "embed", str(mk2), "K17", "--X", "0")
    assert code == 0 and len(json.loads(out)["phi"]) == 16
    code, out = run(capsys, "decompose", "P6", "--C", "3")
    assert json.loads(out)["excess"] == 2
    code, out = run(capsys, "expand", "P6", "--C", "3")
    assert len(json.loads(out)["F"]) == 2
    code, out = run(capsys, "density-run", "K20", "--K", "1", "--eps", "1/10")
    assert json.loads(out)["tag"] in ("pieces", "denser_minor", "inconclusive")
    code, out = run(capsys, "ha-falsify", "K7", "--max-n", "12", "--source", "constructions")
    assert from_graph6(json.loads(out)["counterexample"]).n == 9
    code, out = run(capsys, "ha-falsify", "P3", "--max-n", "6")
    assert json.loads(out)["counterexample"] is None


def test_assemble_spec(capsys, tmp_path):
    k4 = [[a, b] for a in range(4) for b in range(a + 1, 4)]
    G = {"n": 8, "edges": k4 + [[a + 4, b + 4] for a, b in k4] + [[i, i + 4] for i in range(4)]}
    spec = {"h": {"n": 4, "edges": [[0, 1], [2, 3], [1, 2]]}, "G": G, "F": [[1, 2]],
            "pieces": [[0, 1], [2, 3]], "hosts": [[0, 1, 2, 3], [4, 5, 6, 7]]}
    path = tmp_path / "spec.json"
    path.write_text(json.dumps(spec))
    code, out = run(capsys, "assemble", str(path))
    assert code == 0 and set(json.loads(out)["branch_sets"]) == {"0", "1", "2", "3"}
    spec["G"]["edges"] = spec["G"]["edges"][:12] + [[0, 4]]
    path.write_text(json.dumps(spec))
    assert main(["assemble", str(path)]) == 2


def test_accept_quick(capsys):
    assert main(["accept", "--quick", "--only", "2", "5", "9"]) == 0
    out = capsys.readouterr().out
    assert out.count("[PASS]") == 3


def test_named_graphs():
    assert read_graph("K3,3") == gen.complete_bipartite(3, 3)
    assert read_graph("c5") == gen.cycle(5)


def test_gen_missing_param(capsys):
    assert main(["gen", "cycle"]) == 2
