"""Command-line interface: exit codes, report files, CSV shape and
byte-level determinism."""

import filecmp
import json
import os

import pytest

from tumorsym.cli import main

FIG34_BODY = """\
[family]
id = stationary413s
c3 = 5.0
c4 = 2.0
n = 2.0
lam = 4.0
d0 = 2.0

[samples]
times = 1.0
n_r = 6
n_theta = 4
"""

STEADY_BODY = """\
[family]
id = steady432
c1 = 1.0
c3 = 1.0
delta = 1.0
m_exp = 1.0
n_exp = 2.0
lam = 4.0
d0 = 2.0

[samples]
times = 1.0
n_r = 6
n_theta = 4
"""


def _write(tmp_path, body, name="run.ini"):
    path = tmp_path / name
    path.write_text(body)
    return str(path)


# -- validate ---------------------------------------------------------------

def test_validate_reports_derived_constants(tmp_path, capsys):
    cfg = _write(tmp_path, FIG34_BODY)
    rc = main(["validate", "--config", cfg, "--out", str(tmp_path / "out")])
    assert rc == 0
    out = capsys.readouterr().out
    assert "family: stationary413s" in out
    assert "given   c3 = 5.0" in out
    assert "derived delta = 0.6703200460356393" in out
    payload = json.loads((tmp_path / "out" / "validate.json").read_text())
    assert payload["derived"]["delta"] == pytest.approx(
        0.6703200460356393, rel=1e-15)
    assert payload["derived"]["s0"] == pytest.approx(-0.2, rel=1e-14)


def test_validate_restriction_violation(tmp_path, capsys):
    cfg = _write(tmp_path, FIG34_BODY.replace("n = 2.0", "n = 1.0"))
    rc = main(["validate", "--config", cfg])
    assert rc == 1
    assert "restriction violated" in capsys.readouterr().err


@pytest.mark.parametrize("mutate, hint", [
    (lambda b: b.replace("[samples]", "[bogus]"), "unknown section"),
    (lambda b: b.replace("c3 = 5.0", "c3 = 5.0\nzz = 1.0"), "unknown key"),
    (lambda b: b.replace("c3 = 5.0\n", ""), "missing parameter"),
    (lambda b: b.replace("stationary413s", "nosuchfamily"),
     "unknown family"),
    (lambda b: b.replace("c3 = 5.0", "c3 = five"), "non-numeric"),
    (lambda b: b.replace("times = 1.0", "times = -1.0"), "positive"),
], ids=["section", "key", "missing", "family", "numeric", "times"])
def test_validate_config_errors(tmp_path, capsys, mutate, hint):
    cfg = _write(tmp_path, mutate(FIG34_BODY))
    rc = main(["validate", "--config", cfg])
    assert rc == 2
    assert hint.split()[0] in capsys.readouterr().err


def test_missing_config_file(tmp_path, capsys):
    rc = main(["validate", "--config", str(tmp_path / "absent.ini")])
    assert rc == 2
    assert "not found" in capsys.readouterr().err


# -- verify -----------------------------------------------------------------

def test_verify_passes_and_writes_report(tmp_path, capsys):
    out = str(tmp_path / "out")
    cfg = _write(tmp_path, FIG34_BODY + f"\n[output]\ndir = {out}\n")
    rc = main(["verify", "--config", cfg])
    assert rc == 0
    assert "all checks passed" in capsys.readouterr().out
    payload = json.loads(os.path.join(out, "verify.json")
                         and (tmp_path / "out" / "verify.json").read_text())
    assert payload["failures"] == []
    assert payload["governing"]["engine"] == "analytic"
    assert set(payload["governing"]["equations"]) == {
        "mass", "divergence", "momentum_x", "momentum_y"}


def test_verify_detects_overridden_link(tmp_path, capsys):
    body = FIG34_BODY.replace("d0 = 2.0", "d0 = 2.0\ns0 = -0.199")
    cfg = _write(tmp_path, body)
    rc = main(["verify", "--config", cfg])
    assert rc == 1
    assert "FAIL" in capsys.readouterr().err


def test_verify_tol_scale(tmp_path, capsys):
    cfg = _write(tmp_path, FIG34_BODY)
    assert main(["verify", "--config", cfg, "--tol-scale", "1e-9"]) == 1
    capsys.readouterr()


def test_verify_report_is_byte_identical(tmp_path, capsys):
    cfg = _write(tmp_path, FIG34_BODY)
    a, b = str(tmp_path / "a"), str(tmp_path / "b")
    assert main(["verify", "--config", cfg, "--out", a]) == 0
    assert main(["verify", "--config", cfg, "--out", b]) == 0
    capsys.readouterr()
    assert (tmp_path / "a" / "verify.json").read_bytes() \
        == (tmp_path / "b" / "verify.json").read_bytes()


def test_verify_steady_family(tmp_path, capsys):
    cfg = _write(tmp_path, STEADY_BODY)
    assert main(["verify", "--config", cfg]) == 0
    assert "all checks passed" in capsys.readouterr().out


# -- orbit ------------------------------------------------------------------

def test_orbit_requires_section(tmp_path, capsys):
    cfg = _write(tmp_path, FIG34_BODY)
    rc = main(["orbit", "--config", cfg])
    assert rc == 2
    assert "[orbit]" in capsys.readouterr().err


def test_orbit_rotation_passes(tmp_path, capsys):
    body = FIG34_BODY + "\n[orbit]\nelement = rotation\nf = sin\neps = 1.0\n"
    cfg = _write(tmp_path, body)
    rc = main(["orbit", "--config", cfg, "--out", str(tmp_path / "out")])
    assert rc == 0
    assert "orbit Linf" in capsys.readouterr().out
    assert (tmp_path / "out" / "orbit.json").exists()


def test_orbit_scale_inapplicable_on_general_triplet(tmp_path, capsys):
    body = STEADY_BODY + "\n[orbit]\nelement = scale\neps = 0.5\n"
    cfg = _write(tmp_path, body)
    rc = main(["orbit", "--config", cfg])
    assert rc == 1
    assert "inapplicable" in capsys.readouterr().err


def test_orbit_unknown_element_rejected(tmp_path, capsys):
    body = FIG34_BODY + "\n[orbit]\nelement = teleport\n"
    cfg = _write(tmp_path, body)
    assert main(["orbit", "--config", cfg]) == 2
    capsys.readouterr()


# -- figure -----------------------------------------------------------------

def test_figure_unknown_id(tmp_path, capsys):
    rc = main(["figure", "9", "--out", str(tmp_path)])
    assert rc == 2
    assert "unknown figure" in capsys.readouterr().err


def test_figure_csv_shape(tmp_path, capsys):
    out = str(tmp_path / "figs")
    rc = main(["figure", "3", "--grid", "24", "--out", out])
    assert rc == 0
    printed = capsys.readouterr().out.strip().splitlines()
    assert any(p.endswith("fig3_u1.csv") for p in printed)
    lines = (tmp_path / "figs" / "fig3_u1.csv").read_text().splitlines()
    assert lines[0] == "x,y,value"
    assert len(lines) == 1 + 24 * 24
    masked = [ln for ln in lines[1:] if ln.endswith(",")]
    filled = [ln for ln in lines[1:] if not ln.endswith(",")]
    assert masked and filled
    # unmasked cells round-trip through repr
    for ln in filled[:8]:
        x, y, v = ln.split(",")
        assert repr(float(v)) == v
        assert repr(float(x)) == x
    meta = json.loads((tmp_path / "figs" / "fig3_meta.json").read_text())
    assert meta["family"] == "stationary413s"
    assert meta["grid"] == 24


def test_figure_is_byte_identical(tmp_path, capsys):
    a, b = str(tmp_path / "a"), str(tmp_path / "b")
    assert main(["figure", "4", "--grid", "16", "--out", a]) == 0
    assert main(["figure", "4", "--grid", "16", "--out", b]) == 0
    capsys.readouterr()
    for name in ("fig4_alpha.csv", "fig4_p.csv", "fig4_meta.json"):
        assert (tmp_path / "a" / name).read_bytes() \
            == (tmp_path / "b" / name).read_bytes(), name


def test_figure_annulus_masking_geometry(tmp_path, capsys):
    out = str(tmp_path / "figs")
    assert main(["figure", "3", "--grid", "16", "--out", out]) == 0
    capsys.readouterr()
    delta = 0.6703200460356393
    for ln in (tmp_path / "figs" / "fig3_u1.csv").read_text() \
            .splitlines()[1:]:
        x, y, v = ln.split(",")
        r = (float(x) ** 2 + float(y) ** 2) ** 0.5
        inside = 1e-2 * delta <= r <= delta
        assert (v != "") == inside
