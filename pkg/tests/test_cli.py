import io
import json

import pytest

from gogmagog import cli, pyramids as pyr, triangles as tri
from gogmagog.asm import asm_to_json, Asm

import figures


def run(capsys, argv, stdin=None, monkeypatch=None):
    if stdin is not None:
        monkeypatch.setattr("sys.stdin", io.StringIO(stdin))
    code = cli.main(argv)
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("family, n, expected", [
    ("kagog", 3, "7"), ("fn21", 4, "7"), ("le-fn2", 5, "286"), ("asm", 4, "42"),
    ("definetti-bn", 4, "14"), ("monotone", 5, "42"), ("coin", 5, "42"), ("omagog", 1, "1"),
])
def test_count_only(capsys, family, n, expected):
    code, out, _ = run(capsys, ["enumerate", "--family", family, "--n", str(n), "--count-only"])
    assert code == 0 and out.strip() == expected


def test_enumerate_ndjson(capsys):
    code, out, _ = run(capsys, ["enumerate", "--family", "kagog", "--n", "3"])
    assert code == 0
    objs = [json.loads(line) for line in out.splitlines()]
    assert [tri.triangle_from_json(o) for o in objs] == list(tri.enumerate_family("kagog", 3))


def test_enumerate_ascii(capsys):
    code, out, _ = run(capsys, ["enumerate", "--family", "kagog", "--n", "2", "--format", "ascii"])
    assert code == 0 and out == "0\n\n1\n"
    code, out, _ = run(capsys, ["enumerate", "--family", "coin", "--n", "2", "--format", "ascii"])
    assert out == "o o\n\n o\no o\n"
    code, out, _ = run(capsys, ["enumerate", "--family", "le-fn2", "--n", "3", "--format", "ascii"])
    assert out.split("\n\n") == ["1 < 2 < 3 < 21 < 31 < 32", "1 < 2 < 21 < 3 < 31 < 32\n"]


def test_enumerate_to_file(capsys, tmp_path):
    target = tmp_path / "asm.ndjson"
    code, out, _ = run(capsys, ["enumerate", "--family", "asm", "--n", "3", "--out", str(target)])
    assert code == 0 and out == ""
    rows = [json.loads(line)["rows"] for line in target.read_text().splitlines()]
    assert [tuple(map(tuple, r)) for r in rows] == figures.ASM_3


def test_guard_and_force(capsys):
    code, _, err = run(capsys, ["enumerate", "--family", "definetti-bn", "--n", "6", "--count-only"])
    assert code == 1 and "--force" in err
    code, out, err = run(capsys, ["count", "--family", "monotone", "--n", "11", "--force"])
    assert code == 0 and out.strip() == "58786" and "warning" in err


def test_usage_errors(capsys):
    assert run(capsys, ["enumerate", "--family", "kagog", "--n", "0"])[0] == 2
    assert run(capsys, ["enumerate", "--family", "fn21", "--n", "1"])[0] == 2
    assert run(capsys, ["count", "--family", "definetti-bn", "--n", "3", "--formula"])[0] == 2
    with pytest.raises(SystemExit) as info:
        cli.main(["verify", "--check", "nonsense", "--n", "3"])
    assert info.value.code == 2
    with pytest.raises(SystemExit) as info:
        cli.main(["enumerate", "--family", "dragon", "--n", "3"])
    assert info.value.code == 2


def test_count_formula(capsys):
    assert run(capsys, ["count", "--family", "le-fn2", "--n", "7", "--formula"])[1].strip() == "23178480"
    assert run(capsys, ["count", "--family", "asm", "--n", "7", "--formula"])[1].strip() == "218348"
    assert run(capsys, ["count", "--family", "fn21", "--n", "5", "--formula"])[1].strip() == "42"
    assert run(capsys, ["count", "--family", "gog", "--n", "4"])[1].strip() == "42"


def test_convert_asm_to_gog(capsys, monkeypatch):
    data = json.dumps(asm_to_json(Asm.of(figures.ROWREV_A)))
    code, out, _ = run(capsys, ["convert", "--from", "asm", "--to", "gog"], data, monkeypatch)
    assert code == 0 and tri.triangle_from_json(json.loads(out)) == figures.ROWREV_G


def test_convert_omagog_to_kagog(capsys, monkeypatch):
    data = json.dumps(tri.triangle_to_json(figures.PSI_OMAGOG))
    code, out, _ = run(capsys, ["convert", "--from", "omagog", "--to", "kagog"], data, monkeypatch)
    assert code == 0 and tri.triangle_from_json(json.loads(out)) == figures.PSI_KAGOG


def test_convert_endomorphisms(capsys, monkeypatch):
    data = json.dumps(tri.triangle_to_json(figures.ROWREV_G))
    code, out, _ = run(capsys, ["convert", "--from", "gog", "--to", "gog-involution"], data, monkeypatch)
    assert code == 0 and tri.triangle_from_json(json.loads(out)) == figures.ROWREV_H
    data = json.dumps(tri.triangle_to_json(figures.PHI_IN))
    code, out, _ = run(capsys, ["convert", "--from", "ogog", "--to", "phi"], data, monkeypatch)
    assert tri.triangle_from_json(json.loads(out)) == figures.PHI_OUT
    data = json.dumps(asm_to_json(Asm.of(figures.ROWREV_A)))
    code, out, _ = run(capsys, ["convert", "--from", "asm", "--to", "row-reverse"], data, monkeypatch)
    assert json.loads(out)["rows"] == [list(r) for r in figures.ROWREV_B]


def test_convert_multi_hop_and_ndjson(capsys, monkeypatch):
    lines = "\n".join(json.dumps(tri.triangle_to_json(m)) for m in figures.MAGOG_3)
    code, out, _ = run(capsys, ["convert", "--from", "magog", "--to", "kagog"], lines, monkeypatch)
    assert code == 0
    assert [tri.triangle_from_json(json.loads(x)) for x in out.splitlines()] == figures.KAGOG_3
    steps = [(a, b) for a, b, _ in cli.conversion_path("magog", "fn21")]
    assert steps == [("magog", "omagog"), ("omagog", "kagog"), ("kagog", "fn21")]
    with pytest.raises(cli.UsageError):
        cli.conversion_path("asm", "kagog")
    assert steps[0][0] == "magog" and steps[-1][1] == "fn21"


def test_convert_errors(capsys, monkeypatch):
    bad = json.dumps({"family": "kagog", "index": 3, "rows": [[1], [2, 1]]})
    code, _, err = run(capsys, ["convert", "--from", "kagog", "--to", "magog"], bad, monkeypatch)
    assert code == 1 and "K2" in err
    good = json.dumps(tri.triangle_to_json(figures.KAGOG_3[0]))
    assert run(capsys, ["convert", "--from", "kagog", "--to", "phi"], good, monkeypatch)[0] == 2
    assert run(capsys, ["convert", "--from", "kagog", "--to", "asm"], good, monkeypatch)[0] == 2
    assert run(capsys, ["convert", "--from", "kagog", "--to", "magog"], "{not json", monkeypatch)[0] == 1
    assert run(capsys, ["convert", "--from", "kagog", "--to", "magog"], "", monkeypatch)[0] == 1


@pytest.mark.parametrize("src, dst, data", [
    ("kagog", "omagog", tri.triangle_to_json(figures.PSI_KAGOG)),
    ("magog", "omagog", tri.triangle_to_json(figures.MAGOG_3[4])),
    ("gog", "ogog", tri.triangle_to_json(figures.ROWREV_G)),
    ("gog", "asm", tri.triangle_to_json(figures.ROWREV_H)),
    ("kagog", "fn21", tri.triangle_to_json(figures.PSI_KAGOG)),
    ("kagog", "coin", tri.triangle_to_json(tri.max_triangle("kagog", 3))),
    ("omagog", "sequence", tri.triangle_to_json(figures.OMAGOG_3[2])),
    ("sequence", "path", {"n": 4, "values": [0, 0, 1, 3]}),
    ("sequence", "coin", {"n": 4, "values": [0, 1, 1, 2]}),
    ("ogog", "ogog-pyramid", tri.triangle_to_json(figures.PHI_IN)),
    ("omagog-pyramid", "kagog-pyramid", pyr.pyramid_to_json(pyr.to_pyramid(figures.PSI_OMAGOG))),
    ("le", "syt", {"n": 4, "order": [[1], [2], [3], [1, 2], [4], [1, 3], [2, 3], [1, 4], [2, 4], [3, 4]]}),
])
def test_conversion_and_back_is_identity(src, dst, data):
    there = cli.convert(src, dst, data)
    assert cli.convert(dst, src, there) == cli.NODES[src][1](cli.NODES[src][0](data))


def test_verify(capsys):
    code, out, _ = run(capsys, ["verify", "--check", "asm-rowrev", "--n", "4"])
    assert code == 0 and out.startswith("PASS") and "42 cases" in out
    code, out, _ = run(capsys, ["verify", "--check", "phi-involution", "--n", "5"])
    assert code == 0 and "429 cases" in out
    code, out, _ = run(capsys, ["verify", "--check", "counts", "--n", "6"])
    assert code == 0 and "ballot 33592" in out and "asm 7436" in out
    code, _, err = run(capsys, ["verify", "--check", "definetti-f2", "--n", "6"])
    assert code == 1 and "limited" in err


def test_render(capsys, monkeypatch, tmp_path):
    data = json.dumps(tri.triangle_to_json(tri.triangle("kagog", 3, "1; 1 2")))
    code, out, _ = run(capsys, ["render", "--style", "flat"], data, monkeypatch)
    assert code == 0 and out == "1\n1 2\n"
    path = tmp_path / "pyramid.json"
    path.write_text(json.dumps(pyr.pyramid_to_json(pyr.to_pyramid(figures.PSI_OMAGOG))))
    code, out, _ = run(capsys, ["render", "--in", str(path), "--style", "layers"])
    assert code == 0 and out.count("layer") == 3
    bad = json.dumps({"family": "kagog", "index": 3, "rows": [[1], [2, 1]]})
    code, _, err = run(capsys, ["render"], bad, monkeypatch)
    assert code == 1 and "K2" in err
    code, _, _ = run(capsys, ["render", "--in", str(tmp_path / "missing.json")])
    assert code == 1


def test_output_is_deterministic(capsys):
    first = run(capsys, ["enumerate", "--family", "fn21", "--n", "4"])[1]
    second = run(capsys, ["enumerate", "--family", "fn21", "--n", "4"])[1]
    assert first == second and len(first.splitlines()) == 7
