from fractions import Fraction

import pytest

from minorforge import config, generators as gen
from minorforge.io import dumps, from_graph6, graph_from_json, graph_to_json, read_graph6_lines, to_graph6


def test_graph6_known_strings():
    assert to_graph6(gen.complete(3)) == "Bw"
    assert to_graph6(gen.petersen()).startswith("I")
    assert from_graph6(">>graph6<<Bw") == gen.complete(3)
    assert list(read_graph6_lines(["Bw", "", "A_"])) == [gen.complete(3), gen.complete(2)]


def test_json_roundtrip_and_stable_dump():
    g = gen.grid(2, 3)
    assert graph_from_json(graph_to_json(g)) == g
    assert dumps({"b": Fraction(1, 3), "a": {2, 1}}) == '{"a": [1, 2], "b": "1/3"}'


def test_config_precedence(tmp_path, monkeypatch):
    config.reset_config()
    monkeypatch.setenv("MINORFORGE_CAP", "11")
    assert config.get_config().cap == 11
    cfg = tmp_path / "c.cfg"
    cfg.write_text("cap = 5\ndeterministic = yes\n")
    over = config.load_config_file(cfg)
    assert over == {"cap": 5, "deterministic": True}
    assert config.set_config(**over).cap == 5
    bad = tmp_path / "bad.cfg"
    bad.write_text("nonsense = 1\n")
    with pytest.raises(ValueError):
        config.load_config_file(bad)
    config.reset_config()
    monkeypatch.delenv("MINORFORGE_CAP")
    assert config.get_config().cap == config.DEFAULT_CAP
