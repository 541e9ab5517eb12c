import json
import subprocess
import sys

import pytest

from partact import UnresolvedLabelError, SpecError, validate_partial_action
from partact.cli import main, run_command
from partact.spec_io import parse_spec

from conftest import GOLDEN, fixture_path

EX_I = str(fixture_path("cyclic8_four_points.json"))
EX_II = str(fixture_path("cyclic4_four_points.json"))
ENVELOPE = str(fixture_path("cyclic8_envelope_table.json"))


def write(tmp_path, doc, name="spec.json"):
    p = tmp_path / name
    p.write_text(json.dumps(doc), encoding="utf-8")
    return str(p)


def test_parse_fixtures():
    G, A = parse_spec(EX_I)
    assert G.order == 8 and A.carrier.size == 4
    assert validate_partial_action(A).ok
    G, A = parse_spec(EX_II)
    assert G.order == 4 and A.carrier.size == 4
    assert validate_partial_action(A).ok


def test_unknown_carrier_label(tmp_path, ex_i_doc):
    ex_i_doc["domains"]["g^2"].append("x9")
    with pytest.raises(UnresolvedLabelError) as err:
        parse_spec(write(tmp_path, ex_i_doc))
    assert err.value.label == "x9"
    assert err.value.pointer == "/domains/g^2/3"
    code, out, msg = run_command("validate", write(tmp_path, ex_i_doc))
    assert code == 2 and "x9" in msg


def test_unknown_group_label(tmp_path, ex_i_doc):
    ex_i_doc["maps"]["G^2"] = ex_i_doc["maps"].pop("g^2")
    with pytest.raises(UnresolvedLabelError, match="G\\^2"):
        parse_spec(write(tmp_path, ex_i_doc))


def test_schema_error_pointer(tmp_path):
    doc = {"group": {"kind": "cyclic", "order": 0}, "set": []}
    with pytest.raises(SpecError) as err:
        parse_spec(write(tmp_path, doc))
    assert err.value.pointer == "/group/order"
    doc = {"group": {"kind": "cyclic", "order": 2}, "set": ["a", 3]}
    with pytest.raises(SpecError) as err:
        parse_spec(write(tmp_path, doc))
    assert err.value.pointer == "/set/1"


def test_domains_maps_must_agree(tmp_path, ex_i_doc):
    del ex_i_doc["maps"]["g^4"]
    with pytest.raises(SpecError, match="g\\^4"):
        parse_spec(write(tmp_path, ex_i_doc))


def test_io_and_json_errors(tmp_path):
    code, _, msg = run_command("validate", str(tmp_path / "missing.json"))
    assert code == 2 and msg
    bad = tmp_path / "bad.json"
    bad.write_text("{", encoding="utf-8")
    assert run_command("validate", str(bad))[0] == 2


def test_not_a_group_exit_1(tmp_path):
    doc = {"group": {"kind": "cayley", "elements": ["e", "a"], "table": [[0, 1], [1, 1]]}, "set": []}
    code, _, msg = run_command("validate", write(tmp_path, doc))
    assert code == 1 and "row 1" in msg


def test_validation_failure_prints_report(tmp_path, ex_i_doc):
    ex_i_doc["maps"]["g^2"]["x3"] = "x3"
    path = write(tmp_path, ex_i_doc)
    for cmd in ("validate", "orbits", "globalize"):
        code, out, _ = run_command(cmd, path)
        assert code == 1
        assert "FAIL axiom-iii" in out


def test_validate_empty_set():
    code, out, _ = run_command("validate", str(fixture_path("empty.json")), "json")
    assert code == 0
    assert json.loads(out)["ok"] is True


def test_globalize_text_table():
    code, out, _ = run_command("globalize", EX_I)
    assert code == 0
    lines = out.splitlines()
    assert "sizes 4, 8" in lines[0]
    header = next(i for i, l in enumerate(lines) if l.startswith("T "))
    rows = lines[header + 1: header + 13]
    assert len(rows) == 12 and lines[header + 13] == ""
    assert all(len(r.split()) == 9 for r in rows)  # element + 8 columns
    assert lines[header].split()[1:] == [f"beta_{g}" for g in ["1", "g"] + [f"g^{k}" for k in range(2, 8)]]


def test_burnside_counts():
    code, out, _ = run_command("burnside", EX_I, "json")
    data = json.loads(out)
    assert code == 0
    assert data["k"] == 2 and data["sum_fixed"] == 16
    # oracle: column scan of the generated table
    _, table, _ = run_command("globalize", EX_I, "json")
    perms = json.loads(table)["perms"]
    scan = {g: sum(1 for t, u in p.items() if t == u) for g, p in perms.items()}
    assert scan == data["fixed_points"]
    assert scan["1"] == 12 and scan["g^4"] == 4
    assert sum(v for g, v in scan.items() if g not in ("1", "g^4")) == 0


def test_orbits_json_golden():
    code, out, _ = run_command("orbits", EX_I, "json")
    assert code == 0
    assert out.encode("utf-8") == (GOLDEN / "cyclic8_four_points_orbits.json").read_bytes()


def test_orbits_tsv():
    code, out, _ = run_command("orbits", EX_I, "tsv")
    rows = [r.split("\t") for r in out.splitlines()]
    assert rows[0][0] == "base" and len(rows) == 3
    assert rows[1][0] == "x1" and rows[1][-1] == "4"
    assert rows[2][0] == "x3" and rows[2][-1] == "8"


def test_verify_envelope_table():
    code, out, _ = run_command("verify", EX_I, "text", global_path=ENVELOPE)
    assert code == 0 and out.startswith("globalization: PASS")


def test_verify_corrupt_table(tmp_path):
    doc = json.loads(open(ENVELOPE).read())
    doc["perms"]["g"]["x9"], doc["perms"]["g"]["x10"] = doc["perms"]["g"]["x10"], doc["perms"]["g"]["x9"]
    code, out, _ = run_command("verify", EX_I, "json", global_path=write(tmp_path, doc, "g.json"))
    assert code == 1
    checks = {c["name"]: c for c in json.loads(out)["checks"]}
    assert checks["homomorphism"]["status"] == "FAIL"
    assert checks["homomorphism"]["witness"]


def test_globalize_json_round_trip(tmp_path):
    code, out, _ = run_command("globalize", EX_I, "json")
    data = json.loads(out)
    assert set(data) == {"elements", "embedding", "perms", "orbits"}
    p = tmp_path / "global.json"
    p.write_text(out, encoding="utf-8")
    code, rep, _ = run_command("verify", EX_I, "json", global_path=str(p))
    assert code == 0 and json.loads(rep)["ok"]


@pytest.mark.parametrize("cmd", ["validate", "orbits", "globalize", "verify", "burnside"])
@pytest.mark.parametrize("fmt", ["text", "json", "tsv"])
def test_deterministic(cmd, fmt):
    assert run_command(cmd, EX_I, fmt) == run_command(cmd, EX_I, fmt)


def test_format_agreement_globalize():
    _, text, _ = run_command("globalize", EX_I, "text")
    _, js, _ = run_command("globalize", EX_I, "json")
    _, tsv, _ = run_command("globalize", EX_I, "tsv")
    data = json.loads(js)
    text_rows = {l.split()[0]: l.split()[1:] for l in text.splitlines() if l.split() and l.split()[0] in data["elements"]}
    tsv_rows = {r.split("\t")[0]: r.split("\t")[1:] for r in tsv.splitlines()[1:]}
    for t in data["elements"]:
        expect = [data["perms"][g][t] for g in data["perms"]]
        assert text_rows[t] == expect == tsv_rows[t]
    assert "sizes " + ", ".join(str(len(o)) for o in data["orbits"]) in text


def test_format_agreement_burnside_and_orbits():
    _, text, _ = run_command("burnside", EX_I, "text")
    data = json.loads(run_command("burnside", EX_I, "json")[1])
    for g, c in data["fixed_points"].items():
        assert f"|T_{g}| = {c}" in text
    assert f"= {data['k']}" in text.splitlines()[0]
    text = run_command("orbits", EX_I, "text")[1]
    data = json.loads(run_command("orbits", EX_I, "json")[1])
    for o in data["orbits"]:
        assert f"= {o['predicted_global_orbit_size']}" in text


def test_size_cap_exit_3():
    code, _, msg = run_command("globalize", EX_I, max_size=10)
    assert code == 3 and "cap" in msg


def test_main_and_module_entry(capsys):
    assert main(["burnside", "--input", EX_I]) == 0
    assert "k = 16/8 = 2" in capsys.readouterr().out
    proc = subprocess.run(
        [sys.executable, "-m", "partact", "orbits", "-i", EX_II, "-f", "json"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    sizes = [o["predicted_global_orbit_size"] for o in json.loads(proc.stdout)["orbits"]]
    assert sizes == [2, 4]


def test_cayley_fixture_runs():
    path = str(fixture_path("klein_three_points.json"))
    for cmd in ("validate", "orbits", "globalize", "verify", "burnside"):
        assert run_command(cmd, path)[0] == 0


def test_verify_non_injective_embedding(tmp_path):
    doc = json.loads(open(ENVELOPE).read())
    doc["embedding"]["x2"] = "x1"
    code, _, msg = run_command("verify", EX_I, global_path=write(tmp_path, doc, "g.json"))
    assert code == 1 and "injective" in msg
