import subprocess
import sys

import pytest

from ampletwist.cli import Options, UnknownVerb, main, run_command
from ampletwist.document import bundled_document

DOC = bundled_document()


def test_h2_reports_two_classes():
    r = run_command("h2", Options(target="G2", group="Z2"), DOC)
    assert "classes: 2" in r.render("human")
    assert "classes=2" in r.render("machine").splitlines()


def test_iso_check_message():
    r = run_command("iso-check", Options(target="TW2", field="5"), DOC)
    assert r.summary == "isomorphism verified, dim 2" and r.ok


def test_gamma_c_g1():
    r = run_command("gamma-c", Options(target="G1"), DOC)
    assert r.summary.endswith("2 elements")


def test_unknown_verb():
    with pytest.raises(UnknownVerb):
        run_command("frobnicate", Options(), DOC)


@pytest.mark.parametrize("argv", [
    ["germ", "--target", "S1"],
    ["eta-eps", "--target", "G4"],
    ["classify-twists", "--target", "G2", "--group", "Z2"],
    ["baer", "--target", "TW2", "--other", "TW2"],
    ["crossed", "--target", "TW2", "--format", "machine"],
    ["steinberg", "--target", "TW1", "--field", "Q"],
])
def test_verbs_exit_zero(argv, capsys):
    assert main(argv) == 0
    assert capsys.readouterr().out.strip()


def test_classify_reports_fixture_classes(capsys):
    main(["classify-twists", "--target", "G2", "--group", "Z2", "--format", "machine"])
    out = capsys.readouterr().out.splitlines()
    assert "twist[TW0]=class 0" in out and "twist[TW2]=class 1" in out


def test_errors_exit_two(capsys):
    assert main(["gamma-c", "--target", "nope"]) == 2
    assert main(["crossed", "--target", "NC"]) == 2


def test_exit_status_nonzero_on_failure(monkeypatch, capsys):
    from ampletwist import cli

    def broken(doc, opts):
        r = cli.Report("h2")
        r.fail("forced")
        return r

    monkeypatch.setitem(cli.COMMANDS, "h2", broken)
    assert main(["h2"]) == 1


def test_module_entry_point(tmp_path):
    doc = tmp_path / "d.yaml"
    doc.write_text("- {kind: groupoid, name: P, pair: [1, 2, 3]}\n")
    out = subprocess.run([sys.executable, "-m", "ampletwist", "gamma-c", "--doc", str(doc), "--target", "P",
                          "--format", "machine"], capture_output=True, text=True, check=True)
    assert "elements=34" in out.stdout.splitlines()
