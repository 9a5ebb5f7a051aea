import json
import shutil
from pathlib import Path

from toposlang.cli import main

FIXTURE = str(Path(__file__).resolve().parent.parent / "fixtures" / "two_point.json")


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    payload = json.loads(captured.out) if captured.out else None
    return code, payload, captured.err


def test_validate_fixture(capsys):
    code, payload, err = run(capsys, "validate", FIXTURE)
    assert code == 0
    assert payload["valid"] is True
    assert payload["counts"]["systems"] == 2
    assert payload["counts"]["representations"] == 3
    assert all(r["ok"] for r in payload["interval_axiom_checks"].values())
    # the non-normalized interval formula is accepted with a note
    assert any(n["kind"] == "normalized" and n["name"] == "messy"
               for n in payload["notes"])
    assert "ok" in err


def test_validate_dangling_quantity_state(tmp_path, capsys):
    doc = json.loads(Path(FIXTURE).read_text())
    doc["systems"][0]["quantities"]["A"]["s9"] = "1"
    bad = tmp_path / "broken.json"
    bad.write_text(json.dumps(doc))
    code, payload, _ = run(capsys, "validate", str(bad))
    assert code == 2
    assert payload["pointer"] == "/systems/0/quantities/A/s9"


def test_validate_schema_violation_pointer(tmp_path, capsys):
    doc = json.loads(Path(FIXTURE).read_text())
    doc["systems"][0]["quantities"]["A"]["s1"] = "not-a-rational"
    bad = tmp_path / "broken.json"
    bad.write_text(json.dumps(doc))
    code, payload, _ = run(capsys, "validate", str(bad))
    assert code == 2
    assert payload["pointer"].startswith("/systems/0/quantities/A")


def test_validate_duplicate_name(tmp_path, capsys):
    doc = json.loads(Path(FIXTURE).read_text())
    doc["algebras"].append(dict(doc["algebras"][0]))
    bad = tmp_path / "dup.json"
    bad.write_text(json.dumps(doc))
    code, payload, _ = run(capsys, "validate", str(bad))
    assert code == 2
    assert "duplicate" in payload["error"]
    assert payload["pointer"] == f"/algebras/{len(doc['algebras']) - 1}"


def test_output_is_byte_stable(capsys):
    code1, _, _ = run(capsys, "validate", FIXTURE)
    out1 = None
    code1 = main(["validate", FIXTURE])
    out1 = capsys.readouterr().out
    code2 = main(["validate", FIXTURE])
    out2 = capsys.readouterr().out
    assert code1 == code2 == 0
    assert out1 == out2
    assert out1.endswith("\n") and "\n" not in out1[:-1]


def test_omega_command(capsys):
    code, payload, _ = run(capsys, "omega", FIXTURE, "--category", "two_point")
    assert code == 0
    assert payload["stages"]["q"] == [[], ["id[q]", "le[p,q]"], ["le[p,q]"]]
    assert payload["stages"]["p"] == [[], ["id[p]"]]
    assert payload["true"] == {"p": ["id[p]"], "q": ["id[q]", "le[p,q]"]}
    assert [["le[p,q]"], ["id[p]"]] in payload["restrictions"]["le[p,q]"]


def test_omega_unknown_category(capsys):
    code, payload, _ = run(capsys, "omega", FIXTURE, "--category", "nope")
    assert code == 2
    assert "unknown category" in payload["error"]


def test_sub_classify(capsys):
    code, payload, _ = run(capsys, "sub", "classify", FIXTURE, "--presheaf", "one")
    assert code == 0
    assert payload["count"] == 3 == payload["hom_count"]
    assert payload["bijection"] and payload["round_trip_ok"]


def test_pl_parse(capsys):
    code, payload, _ = run(capsys, "pl", "parse", "~A in [0,1] -> b")
    assert code == 0
    assert payload["text"] == "~A in [0,1] -> b"
    assert payload["ast"]["op"] == "implies"
    code, payload, _ = run(capsys, "pl", "parse", "A in [1,")
    assert code == 2


def test_pl_represent_and_truth(capsys):
    code, payload, _ = run(capsys, "pl", "represent", FIXTURE,
                           "--system", "particle_small", "A in [2,5]")
    assert code == 0
    assert payload["element"] == ["s2", "s3"]
    code, payload, _ = run(capsys, "pl", "represent", FIXTURE,
                           "--system", "particle_small", "window_em")
    assert code == 0 and payload["is_top"]
    code, payload, _ = run(capsys, "pl", "truth", FIXTURE, "--system",
                           "particle_small", "--state", "s1", "A in [2,5]")
    assert code == 0 and payload["value"] == 0


def test_pl_decide_exit_codes(capsys):
    code, payload, _ = run(capsys, "pl", "decide", "a -> a")
    assert code == 0 and payload["verdict"] == "valid"
    code, payload, _ = run(capsys, "pl", "decide", "((a->b)->a)->a")
    assert code == 1
    assert payload["verdict"] == "invalid"
    assert len(payload["countermodel"]["worlds"]) == 2


def test_pl_prove(capsys):
    code, payload, _ = run(capsys, "pl", "prove", FIXTURE, "--proof", "identity")
    assert code == 0 and payload["accepted"]
    code, payload, _ = run(capsys, "pl", "prove", FIXTURE, "--proof", "cites_forward")
    assert code == 1
    assert payload["bad_line"] == 1


def test_ls_typecheck(capsys):
    code, payload, _ = run(capsys, "ls", "typecheck", FIXTURE, "prop")
    assert code == 0 and payload["type"] == "Omega"
    code, payload, _ = run(capsys, "ls", "typecheck", FIXTURE, "prop_family")
    assert code == 0 and payload["type"] == "P(Sigma)"
    code, payload, _ = run(capsys, "ls", "typecheck", FIXTURE, "s = D",
                           "--signature", "point_particle",
                           "--context", "s=Sigma", "--context", "D=P(R)")
    assert code == 1
    assert "different types" in payload["error"]
    code, payload, _ = run(capsys, "ls", "typecheck", FIXTURE, "s = ((",
                           "--signature", "point_particle")
    assert code == 2


def test_ls_represent(capsys):
    code, payload, _ = run(capsys, "ls", "represent", FIXTURE, "true",
                           "--rep", "classical")
    assert code == 0
    assert payload["arrow"]["pt"] == [["*", ["id[pt]"]]]


def test_ls_check_axioms(capsys, tmp_path):
    code, payload, _ = run(capsys, "ls", "check-axioms", FIXTURE, "--rep", "z3")
    assert code == 0 and payload["ok"]
    # corrupt one addition entry: build fails at load, reported as input error
    doc = json.loads(Path(FIXTURE).read_text())
    rep = next(r for r in doc["representations"] if r["name"] == "z3")
    rep["symbols"]["add"]["table"][5] = [["1", "2"], "1"]
    bad = tmp_path / "corrupt.json"
    bad.write_text(json.dumps(doc))
    code, payload, _ = run(capsys, "ls", "check-axioms", str(bad), "--rep", "z3")
    assert code == 2
    assert "fails at stage" in payload["error"]


def test_demo_commands(capsys):
    code, payload, _ = run(capsys, "demo", "nondistributivity")
    assert code == 0
    assert payload["lhs"] == "ray(1,0)" and payload["rhs"] == "0"
    code, payload, _ = run(capsys, "demo", "excluded-middle")
    assert code == 0
    assert payload["powerset"]["law_holds_everywhere"]


def test_unknown_subcommand_exits_2(capsys):
    assert main(["frobnicate"]) == 2


def test_console_script_installed():
    assert shutil.which("toposlang") is not None
