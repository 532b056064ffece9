import json

import pytest

from dzv import catalogue as C
from dzv import relations as R
from dzv.cli import load_config, main, parse_relation
from dzv.periods import span_W4plus
from dzv.symbols import Z, Zh


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_generate_then_verify(tmp_path, capsys):
    cat = tmp_path / "gkz.json"
    code, _, err = run(capsys, "generate", "--family", "gkz", "--weight-min", "11", "--weight-max", "14",
                       "--out", str(cat), "--csv", str(tmp_path / "gkz.csv"), "--reproducible")
    assert code == 0 and "entries" in err
    doc = json.loads(cat.read_text())
    assert {e["provenance"]["period_weight"] for e in doc["entries"]} == {12, 14}
    assert (tmp_path / "gkz.csv").read_text().startswith("entry,")

    out = tmp_path / "checked.json"
    code, _, err = run(capsys, "verify", "--in", str(cat), "--digits", "20", "--out", str(out), "--reproducible")
    assert code == 0 and "0 proven failures" in err
    assert all(e["verification"]["pass"] for e in json.loads(out.read_text())["entries"])


def test_generate_is_reproducible(capsys):
    _, a, _ = run(capsys, "generate", "--family", "ma-odd", "--weight", "12", "--reproducible")
    _, b, _ = run(capsys, "generate", "--family", "ma-odd", "--weight", "12", "--reproducible")
    assert a == b


def test_generate_rejects_odd_weight(capsys):
    code, _, err = run(capsys, "generate", "--family", "gkz", "--weight", "11")
    assert code == 2 and "even" in err


def test_tampered_proven_entry_fails(tmp_path, capsys):
    doc = C.make_document(C.generate("gkz", [12]), reproducible=True)
    doc["entries"][0]["coefficients"][0]["value"] = "4/1"
    path = tmp_path / "bad.json"
    path.write_text(C.dumps(doc))
    code, _, err = run(capsys, "verify", "--in", str(path), "--digits", "20")
    assert code == 2 and "1 proven failures" in err


def test_conjectural_failure_is_a_warning(tmp_path, capsys):
    doc = C.make_document([R.kaneko_tsumura(span_W4plus(4).basis[0], literal=True)], reproducible=True)
    path = tmp_path / "kt.json"
    path.write_text(C.dumps(doc))
    code, out, err = run(capsys, "verify", "--in", str(path), "--digits", "20")
    assert code == 0 and "1 conjectural failures" in err
    assert json.loads(out)["entries"][0]["verification"]["pass"] is False


def test_verify_rejects_bad_schema(tmp_path, capsys):
    path = tmp_path / "x.json"
    path.write_text('{"schema_version": 0, "entries": []}')
    code, _, err = run(capsys, "verify", "--in", str(path))
    assert code == 2 and "schema" in err


def test_dims_D_k(capsys):
    code, out, _ = run(capsys, "dims", "--space", "D_k", "--weights", "4..26", "--format", "json")
    rows = json.loads(out)
    assert code == 0 and len(rows) == 23
    assert all(r["computed"] == r["formula"] == (r["n"] - 1) // 2 for r in rows)


def test_dims_table(capsys):
    code, out, _ = run(capsys, "dims", "--space", "W+", "--weights", "2..12")
    lines = out.strip().splitlines()
    assert code == 0 and lines[0].startswith("space") and len(lines) == 1 + 6
    for line in lines[1:]:
        _, _, got, want = line.split("\t")
        assert got == want


def test_reduce(capsys):
    code, out, _ = run(capsys, "reduce", "Z(1,3) = 1/4*Z(4)")
    res = json.loads(out)
    assert code == 0 and res["holds"] is True and "odd_basis_coordinates" in res
    code, out, _ = run(capsys, "reduce", "Z(1,3) = 1/3*Z(4)")
    assert code == 2 and json.loads(out)["holds"] is False
    code, out, _ = run(capsys, "reduce", "4*Z(1,3) = ?")
    assert code == 0 and json.loads(out)["single_zeta"] == "1/1"
    code, _, err = run(capsys, "reduce", "Z(1,3) + Z(2,3) = 0")
    assert code == 2 and "homogeneous" in err


def test_parse_relation():
    v = parse_relation("3*Z(3,9) - 1/2*Zh(2,10) = -5*Z(12)")
    assert v.terms == {Z(3, 9): 3, Zh(2, 10): -0.5} and v.single == -5 and v.weight == 12
    with pytest.raises(ValueError):
        parse_relation("x*Z(1,3) = 0")


def test_eisenstein_hecke(capsys):
    code, out, _ = run(capsys, "eisenstein", "--weight", "16", "--terms", "5")
    res = json.loads(out)
    assert code == 0 and res["pass"] and res["fitted_constant"] == "322560/1"
    code, out, err = run(capsys, "eisenstein", "--weight", "12", "--terms", "3")
    assert code == 2 and json.loads(out)["fitted_constant"] == "640/1"
    code, out, _ = run(capsys, "eisenstein", "--weight", "12", "--terms", "3", "--constant", "640", "--format", "csv")
    assert code == 0 and out.startswith("n,residual,exact,pass")


def test_eisenstein_double_shuffle(capsys):
    code, out, _ = run(capsys, "eisenstein", "--weight", "6", "--terms", "4", "--identity", "double-shuffle")
    assert code == 0 and json.loads(out)["pass"]


def test_config_file(tmp_path, capsys, monkeypatch):
    monkeypatch.delenv("DZV_CACHE_DIR", raising=False)
    ini = tmp_path / "dzv.ini"
    ini.write_text(f"[dzv]\ndigits = 18\nterms = 3\ncache_dir = {tmp_path / 'cache'}\n")
    assert load_config(str(ini)).getint("digits") == 18
    code, out, _ = run(capsys, "--config", str(ini), "eisenstein", "--weight", "16")
    assert code == 0 and len(json.loads(out)["rows"]) == 4
    import os
    assert os.environ["DZV_CACHE_DIR"] == str(tmp_path / "cache")
