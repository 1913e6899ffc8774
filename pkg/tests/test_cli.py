"""Command line parsing, exit codes and report reproducibility."""

import io
import json
import random
import subprocess
import sys

import pytest

from tricover.cli import RunConfig, main, parse_presentation, run
from tricover.surface import PresentationError


def _write(tmp_path, doc, name="in.json"):
    p = tmp_path / name
    p.write_text(json.dumps(doc), encoding="utf-8")
    return str(p)


def _run(path, **kw):
    out = io.StringIO()
    code = run(RunConfig(input=path, quiet=False, **kw), out)
    return code, out.getvalue()


def _five_centers(seed):
    rng = random.Random(seed)
    pts = set()
    while len(pts) < 5:
        pts.add((rng.randint(-5, 5), rng.randint(-5, 5)))
    return [{"level": k, "chart": "Pz", "coords": [str(a), str(b)]} for k, (a, b) in enumerate(sorted(pts), 1)]


def test_parse_plane():
    sp = parse_presentation('{"base":"P2","centers":[]}')
    assert sp.base.label() == "P2" and sp.r == 0


def test_parse_sigma2_one_center():
    sp = parse_presentation('{"base":{"hirzebruch":2},"centers":[{"level":1,"chart":"H00","coords":["1","1"]}]}')
    assert sp.r == 1 and sp.centers[0].chart == "H00" and tuple(sp.centers[0].coords) == (1, 1)


@pytest.mark.parametrize("text, msg", [
    ('{"base":{"hirzebruch":-1}}', "n must be ≥ 0"),
    ('{"base":"P2",\n "centers": [}', "line 2"),
    ('{"base":"P3"}', "unknown base"),
    ('{"base":"P2","centers":[{"level":1,"chart":"Pz","coords":["0.5","1"]}]}', "bad coordinate"),
])
def test_parse_errors(text, msg):
    with pytest.raises(PresentationError, match=msg):
        parse_presentation(text)


def test_plane_no_centers(tmp_path):
    code, out = _run(_write(tmp_path, {"base": "P2", "centers": []}))
    rep = json.loads(out)
    assert code == 0 and len(rep["charts"]) == 3 and rep["certificate"]["ok"]
    assert set(rep) == {"surface", "seed", "charts", "transitions", "complements", "audit", "certificate"}


def test_plane_five_centers(tmp_path):
    code, out = _run(_write(tmp_path, {"base": "P2", "centers": _five_centers(0)}))
    rep = json.loads(out)
    assert code == 0
    assert len(rep["complements"]) == 3 + 2 * 5
    assert rep["certificate"]["transitions"]["ok"]


def test_duplicate_center_exit_1(tmp_path, capsys):
    doc = {"base": "P2", "centers": [{"level": 1, "chart": "Pz", "coords": ["1", "2"]},
                                     {"level": 2, "chart": "Pz", "coords": ["1", "2"]}]}
    assert _run(_write(tmp_path, doc))[0] == 1
    assert "duplicate center" in capsys.readouterr().err


def test_missing_file_exit_1(tmp_path):
    assert _run(str(tmp_path / "nope.json"))[0] == 1


def test_retries_exhausted_exit_2(tmp_path, capsys):
    doc = {"base": "P2", "centers": [{"level": 1, "chart": "Pz", "coords": ["0", "0"]}]}
    assert _run(_write(tmp_path, doc), max_retries=1)[0] == 2
    assert "construction failed" in capsys.readouterr().err


def test_reports_byte_identical(tmp_path):
    path = _write(tmp_path, {"base": {"hirzebruch": 2},
                             "centers": [{"level": 1, "chart": "H00", "coords": ["1", "1"]},
                                         {"level": 2, "chart": "E1a", "coords": ["0", "3"]}]})
    a, b = _run(path, seed=3), _run(path, seed=3)
    assert a[0] == b[0] == 0 and a[1] == b[1]
    c = _run(path, seed=4)
    assert c[0] == 0 and json.loads(c[1])["audit"] != json.loads(a[1])["audit"]


def test_text_format(tmp_path):
    code, out = _run(_write(tmp_path, {"base": "P2"}), format="text")
    assert code == 0
    assert "certificate: PASS" in out and "emptiness: ok" in out


def test_verify_only_roundtrip(tmp_path):
    code, out = _run(_write(tmp_path, {"base": {"hirzebruch": 3},
                                       "centers": [{"level": 1, "chart": "H01", "coords": ["2", "-1"]}]}))
    assert code == 0
    report = tmp_path / "report.json"
    report.write_text(out, encoding="utf-8")
    assert main(["--verify-only", str(report), "--quiet"]) == 0
    doc = json.loads(out)
    doc["certificate"]["pairwise"][0]["gcd"] = "x"
    report.write_text(json.dumps(doc), encoding="utf-8")
    assert main(["--verify-only", str(report), "--quiet"]) == 3


def test_module_entry_point(tmp_path):
    path = _write(tmp_path, {"base": "P2"})
    proc = subprocess.run([sys.executable, "-m", "tricover", "--input", path, "--quiet"],
                          capture_output=True, text=True, timeout=120)
    assert proc.returncode == 0


def test_flag_validation():
    with pytest.raises(SystemExit):
        main([])
    with pytest.raises(SystemExit):
        main(["--input", "x.json", "--max-retries", "0"])
