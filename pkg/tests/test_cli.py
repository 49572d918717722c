import json

import pytest

from fano_wci.catalog import default_catalog_path, load_catalog
from fano_wci.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_verify_tables_ok(capsys):
    code, out, _ = run(capsys, "verify-tables")
    assert code == 0
    assert "all 14 families" in out


def test_analyze_markdown(capsys):
    code, out, _ = run(capsys, "analyze", "--family", "50")
    assert code == 0
    assert "A^3 = 7/60" in out
    assert out.count("| p") == 4  # four point-center rows
    code, out19, _ = run(capsys, "analyze", "--family", "19")
    assert "EI" in out19 and "II" in out19


def test_analyze_unknown_family(capsys):
    code, _, err = run(capsys, "analyze", "--family", "99")
    assert code == 2
    assert "99" in err


def test_analyze_json_round_trips_schema(capsys, tmp_path):
    code, out, _ = run(capsys, "analyze", "--family", "82", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["a_cube"] == "1/20"
    # the embedded golden record reparses as a one-record catalog fragment
    with open(default_catalog_path(), encoding="utf-8") as fh:
        raw = json.load(fh)
    g_half = [obj for obj in raw if obj["id"] == 82]
    replaced = [payload["golden_record"] if obj["kind"] == "Gprime" else obj for obj in g_half]
    rest = [obj for obj in raw if obj["id"] != 82]
    path = tmp_path / "roundtrip.json"
    path.write_text(json.dumps(rest + replaced))
    reparsed = load_catalog(str(path))
    assert reparsed.golden(82) == load_catalog().golden(82)


def test_output_is_byte_stable(capsys):
    _, first, _ = run(capsys, "analyze", "--family", "74", "--format", "json")
    _, second, _ = run(capsys, "analyze", "--family", "74", "--format", "json")
    assert first == second
    _, md1, _ = run(capsys, "analyze", "--family", "74")
    _, md2, _ = run(capsys, "analyze", "--family", "74")
    assert md1 == md2


def test_links_and_basket_commands(capsys):
    code, out, _ = run(capsys, "links", "--family", "82")
    assert code == 0
    assert "X'_22 in P(1,2,5,11,4)" in out
    code, out, _ = run(capsys, "basket", "--family", "29")
    assert code == 0
    assert "3 x 1/2(1,1,1)" in out


def test_catalog_env_override(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("FANO_WCI_CATALOG", str(tmp_path / "missing.json"))
    code, _, err = run(capsys, "verify-tables")
    assert code == 2
    assert "missing.json" in err


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as exc:
        main(["no-such-command"])
    assert exc.value.code == 2
