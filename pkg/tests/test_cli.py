import json

import pytest

from lietriad.catalog import catalog_entries
from lietriad.cli import main, split_twist


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_list_text_and_json(capsys):
    code, out, _ = run(capsys, "list", "e6")
    assert code == 0 and len(out.splitlines()) == 4
    assert out.splitlines()[0].startswith("EI ")
    code, out, _ = run(capsys, "list", "g2", "--format", "json")
    data = json.loads(out)
    assert code == 0 and len(data) == 1
    assert data[0]["k_label"] == "su(2)⊕su(2)"
    code, out, _ = run(capsys, "list", "so8", "--format", "dot")
    assert out.count("graph ") == 4


def test_usage_errors_exit_two(capsys):
    for argv in (["list", "so4"], ["list", "su99"], ["list", "xx3"],
                 ["classify", "so8", "--pair", "so3+so5"],
                 ["classify", "so8", "--pair", "u5,u5"],
                 ["render", "so8"], ["render", "{not json"]):
        code, _, err = run(capsys, *argv)
        assert code == 2, argv
        assert err.startswith("lietriad: error:")


def test_max_rank_raises_the_bounds(capsys):
    code, out, _ = run(capsys, "list", "su10", "--max-rank", "9")
    assert code == 0 and len(out.splitlines()) == 7


def test_classify_so8_pair_with_twist(capsys):
    code, out, _ = run(capsys, "classify", "so8", "--pair", "so3+so5,kappa(so3+so5)",
                       "--format", "json")
    rows = json.loads(out)
    assert code == 0 and len(rows) == 1
    assert (rows[0]["rank"], rows[0]["order"], rows[0]["twist"]) == (2, 3, "kappa")


def test_classify_so12_u6_pair(capsys):
    code, out, _ = run(capsys, "classify", "so12", "--pair", "u6,u6")
    lines = out.splitlines()
    assert code == 0 and len(lines) == 3
    assert lines[2].split()[-3:] == ["2", "2", "yes"]
    code, out, _ = run(capsys, "classify", "so12", "--pair", "u6,u6'", "--format", "json")
    rows = json.loads(out)
    assert [(r["rank"], r["order"]) for r in rows] == [(2, 2)]


def test_classify_markdown_and_dot(capsys):
    code, out, _ = run(capsys, "classify", "f4", "--format", "markdown")
    assert code == 0
    assert "| (f4, sp(3)⊕su(2), so(9)) | 1 | 2 |  |" in out
    code, out, _ = run(capsys, "classify", "g2", "--format", "dot")
    assert out.startswith("// (g2, su(2)⊕su(2), su(2)⊕su(2))")


def test_output_is_deterministic(capsys):
    a = run(capsys, "classify", "su6", "--format", "json")[1]
    b = run(capsys, "classify", "su6", "--format", "json")[1]
    assert a == b


def test_verify_scopes(capsys):
    code, out, _ = run(capsys, "verify", "catalog", "special-iso")
    assert code == 0
    assert "catalog: 1/1 passed" in out
    assert "special-iso: 18/18 passed" in out
    code, out, _ = run(capsys, "verify", "catalog", "--format", "json")
    assert json.loads(out)["catalog"][0]["ok"] is True
    code, _, err = run(capsys, "verify", "nonsense")
    assert code == 2 and "unknown scope" in err


def test_corrupted_snapshot_fails_verification(capsys, tmp_path, monkeypatch):
    entries = catalog_entries()
    entries[0]["k_label"] = "so(3)"
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(entries), encoding="utf-8")
    monkeypatch.setenv("LIETRIAD_SNAPSHOT", str(bad))
    code, out, _ = run(capsys, "verify", "catalog")
    assert code == 1
    assert "FAIL catalog snapshot" in out
    # an explicit flag wins over the environment
    good = tmp_path / "good.json"
    good.write_text(json.dumps(catalog_entries()), encoding="utf-8")
    assert run(capsys, "verify", "catalog", "--snapshot", str(good))[0] == 0


def test_render_references(capsys, tmp_path):
    code, out, _ = run(capsys, "render", "so8:so3+so5", "--format", "text")
    assert code == 0 and out.strip().endswith("arrows 3↔4")
    code, out, _ = run(capsys, "render", "so8:so1+so7,kappa(so2+so6)", "--format", "json")
    data = json.loads(out)
    assert data["s1"]["black"] == [1, 2, 3] and data["s2"]["black"] == [0, 2]
    path = tmp_path / "d.json"
    path.write_text(json.dumps(data))
    code, out2, _ = run(capsys, "render", str(path), "--format", "json")
    assert code == 0 and json.loads(out2) == data
    code, out3, _ = run(capsys, "render", json.dumps(data), "--format", "text")
    assert out3.startswith("S1 D4")
    bad = {"type": "D", "rank": 4, "black": [3], "arrows": []}
    code, _, err = run(capsys, "render", json.dumps(bad))
    assert code == 2 and "lietriad: error:" in err
    code, _, _ = run(capsys, "render", "so10:so3+so7,so3+so7", "--twist", "tau")
    assert code == 2


def test_split_twist():
    assert split_twist("kappa(so3+so5)") == ("so3+so5", "kappa")
    assert split_twist("k:kappa2(so1+so7)") == ("so1+so7", "kappa2")
    assert split_twist("u6'") == ("u6", "tau")
    assert split_twist("u6′") == ("u6", "tau")
    assert split_twist("so3+so5") == ("so3+so5", None)


def test_help_exits_cleanly(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--help"])
    assert exc.value.code == 0
