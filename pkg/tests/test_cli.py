import json

from invarforms.cli import main
from invarforms.reports import emit_report, parse_report_json
from invarforms.suites import run_suite


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_validate_catalog_and_file(tmp_path, capsys):
    code, out, _ = run_cli(capsys, "validate", "@h3_Jplus")
    assert code == 0 and "jacobi_valid: True" in out
    bad = tmp_path / "bad.txt"
    bad.write_text("(0,12,13,23)\n")
    code, out, _ = run_cli(capsys, "validate", str(bad))
    assert code == 2
    dsl = tmp_path / "spec.dsl"
    dsl.write_text("frame complex 2\nd phi1 = 0\nd phi2 = i/2*phi1^cphi1\n")
    code, _, _ = run_cli(capsys, "validate", str(dsl))
    assert code == 0


def test_validate_json_file(tmp_path, capsys):
    from invarforms.algebra import spec_to_json
    from invarforms.catalog import load_catalog
    path = tmp_path / "fixture.json"
    path.write_text(spec_to_json(load_catalog("h19minus_Jplus")))
    code, out, _ = run_cli(capsys, "--format", "json", "validate", str(path))
    assert code == 0
    assert json.loads(out)["nilpotent"] is True


def test_cohomology_subcommand(capsys):
    code, out, _ = run_cli(capsys, "--format", "json", "cohomology", "@torus",
                           "--theory", "dolbeault")
    assert code == 0
    assert json.loads(out)["dimensions"]["1,1"] == 9
    code, out, _ = run_cli(capsys, "cohomology", "@heis3", "--theory",
                           "morseNovikov", "--theta", "e1")
    assert code == 0 and ": 0" in out


def test_check_subcommand(capsys):
    om = "i*(phi1^cphi1 + phi2^cphi2 + phi3^cphi3)"
    code, _, _ = run_cli(capsys, "check", "@h3_Jplus", "--structure", "lcK",
                         "--omega", om, "--theta", "phi3 + cphi3")
    assert code == 0
    code, _, _ = run_cli(capsys, "check", "@h3_Jplus", "--structure", "lcK",
                         "--omega", om, "--theta", "phi1 + cphi1")
    assert code == 2


def test_search_exit_codes(capsys):
    code, out, _ = run_cli(capsys, "--format", "json", "search", "@kodaira_primary",
                           "--structure", "lcK", "--seed", "1", "--budget", "40")
    assert code == 0 and json.loads(out)["status"] == "WITNESS"
    code, out, _ = run_cli(capsys, "--format", "json", "search", "@h3_Jminus",
                           "--structure", "lcht", "--seed", "1", "--budget", "10")
    assert code == 3 and json.loads(out)["status"] == "CERTIFIED_NONEXISTENCE"
    # an unknown outcome: pluriclosed metrics on the deformation family
    code, out, _ = run_cli(capsys, "--format", "json", "search", "@nakamura",
                           "--structure", "pluriclosed", "--param", "t=1/2",
                           "--seed", "1", "--budget", "10")
    assert code == 4 and json.loads(out)["status"] == "UNKNOWN"


def test_certify_exit_codes(tmp_path, capsys):
    code, out, _ = run_cli(capsys, "certify", "@auto", "class4_lcht")
    assert code == 0 and json.loads(out)["valid"] is True
    cert = json.loads(json.dumps(__import__("invarforms.certificates", fromlist=["load_certificate"]).load_certificate("class4_lcht")))
    cert["tree"]["result"] = "1"
    path = tmp_path / "broken.json"
    path.write_text(json.dumps(cert))
    code, out, _ = run_cli(capsys, "certify", "@auto", str(path))
    assert code == 2 and json.loads(out)["valid"] is False


def test_usage_errors(capsys):
    code, _, _ = run_cli(capsys, "reproduce", "--suite", "bogus")
    assert code == 64
    code, _, _ = run_cli(capsys, "reproduce")
    assert code == 64


def test_reproduce_text_and_json(capsys):
    code, out, _ = run_cli(capsys, "reproduce", "--suite", "cohomology",
                           "--seed", "7", "--format", "text")
    assert code == 0 and "records as expected" in out
    code, out, _ = run_cli(capsys, "--format", "json", "reproduce", "--suite",
                           "cohomology", "--seed", "7")
    assert code == 0
    obj = json.loads(out)
    assert obj["suite"] == "cohomology" and obj["records"]
    assert all(rec["runtime_ms"] == 0 for rec in obj["records"])


def test_report_json_roundtrip():
    rep = run_suite("nakamura", seed=3)
    text = emit_report(rep, "json")
    again = parse_report_json(text)
    assert emit_report(again, "json") == text
    assert {r.status for r in rep.records} <= {"PASS", "FAIL", "WITNESS",
                                               "CERTIFIED_NONEXISTENCE", "UNKNOWN"}


def test_solvclasses_has_exactly_seven_records():
    rep = run_suite("solvclasses", seed=0)
    assert len(rep.records) == 7
    assert [r.name for r in rep.records] == \
        ["class1", "class2", "class3", "class4", "class5", "class6", "class7"]


def test_reports_byte_identical_for_same_seed(capsys):
    outs = []
    for _ in range(2):
        code, out, _ = run_cli(capsys, "--format", "json", "reproduce",
                               "--suite", "nilmanifolds6", "--seed", "42")
        assert code == 0
        outs.append(out)
    assert outs[0] == outs[1]


def test_threads_env_does_not_change_bytes(capsys, monkeypatch):
    code, base, _ = run_cli(capsys, "--format", "json", "reproduce",
                            "--suite", "nakamura", "--seed", "11")
    assert code == 0
    monkeypatch.setenv("INVARFORMS_THREADS", "4")
    code, threaded, _ = run_cli(capsys, "--format", "json", "reproduce",
                                "--suite", "nakamura", "--seed", "11")
    assert code == 0 and base == threaded
