import json
import subprocess
import sys

import pytest

from hodgelab.cli import main
from hodgelab.hdrring import sprime
from hodgelab.hodgering import HodgeDiamond, LinearFunctional


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj))
    return str(p)


@pytest.mark.parametrize("argv,expected", [
    (["rank", "hodge", "4"], "13"),
    (["rank", "derham", "7"], "8"),
    (["rank", "hdr", "2"], "6"),
    (["rank", "--space", "hodge", "-n", "2"], "5"),
])
def test_rank(capsys, argv, expected):
    code, out, _ = run(capsys, *argv)
    assert code == 0 and out.strip() == expected


def test_rank_bad_input(capsys):
    assert run(capsys, "rank", "hodge", "-1")[0] == 2
    assert run(capsys, "rank")[0] == 2


def test_decompose_p2(tmp_path, capsys):
    f = write(tmp_path, "p2.json", HodgeDiamond.from_matrix([[1, 0, 0], [0, 1, 0], [0, 0, 1]]).to_json())
    code, out, _ = run(capsys, "decompose", "--input", f)
    assert code == 0
    data = json.loads(out)
    assert data["schema"] == "hodgelab/1" and data["expression"] == "A^2-C"


def test_decompose_non_member(tmp_path, capsys):
    f = write(tmp_path, "bad.json", {"type": "hodge", "n": 1, "h": [[1, 0], [0, 0]]})
    code, out, _ = run(capsys, "decompose", f)
    assert code == 1 and "Serre" in json.loads(out)["reason"]


def test_decompose_sprime(tmp_path, capsys):
    f = write(tmp_path, "s.json", sprime().to_json())
    code, out, _ = run(capsys, "decompose", f)
    data = json.loads(out)
    assert code == 0 and data["expression"] == "S"
    assert data["ideal_coefficients"]["g2"] == "1" and data["ideal_coefficients"]["g3"] == "0"


def test_decompose_derham(tmp_path, capsys):
    f = write(tmp_path, "e.json", {"type": "derham", "n": 1, "h": [1, 2, 1]})
    code, out, _ = run(capsys, "decompose", f)
    assert code == 0 and json.loads(out)["expression"] == "A+B"


@pytest.mark.parametrize("payload", ["{not json", json.dumps({"type": "nope"}), json.dumps([1, 2])])
def test_decompose_malformed(tmp_path, capsys, payload):
    p = tmp_path / "x.json"
    p.write_text(payload)
    assert run(capsys, "decompose", str(p))[0] == 2


def test_decompose_missing_file(capsys):
    assert run(capsys, "decompose", "/nonexistent/file.json")[0] == 2


def test_relations(capsys):
    code, out, _ = run(capsys, "relations", "hodge", "2")
    data = json.loads(out)
    assert code == 0 and data["verified"] and len(data["relations"]) == 4
    code, out, _ = run(capsys, "relations", "hodge", "0")
    assert code == 0 and json.loads(out)["relations"] == []
    code, out, _ = run(capsys, "relations", "--space", "hdr", "--degree", "1", "--mod", "2")
    names = [r["name"] for r in json.loads(out)["relations"]]
    assert code == 0 and "parity" in names
    code, out, _ = run(capsys, "relations", "derham", "3", "--mod", "4")
    assert code == 0 and json.loads(out)["verified"]


def test_relations_bad_modulus(capsys):
    assert run(capsys, "relations", "hodge", "2", "--mod", "1")[0] == 2


@pytest.mark.parametrize("i,j,expected", [(1, 1, 1), (0, 2, 0), (0, 1, 0)])
def test_birational(tmp_path, capsys, i, j, expected):
    f = write(tmp_path, "f.json", LinearFunctional.unit(2, i, j).to_json())
    code, out, _ = run(capsys, "birational", "--input", f)
    assert code == expected
    data = json.loads(out)
    if expected:
        assert data["witness_label"] == "Bl_pt(P2) - P2"


def test_birational_euler(tmp_path, capsys):
    vec = [(-1) ** (i + j) for i in range(3) for j in range(3)]
    f = write(tmp_path, "chi.json", LinearFunctional.from_vector(2, vec).to_json())
    code, out, _ = run(capsys, "birational", f)
    assert code == 1 and json.loads(out)["witness_value"] == 1


def test_verify_subset(capsys):
    code, out, err = run(capsys, "verify", "--only", "hodge", "--max", "3")
    data = json.loads(out)
    assert code == 0 and data["status"] == "pass"
    assert {c["check"] for c in data["checks"]} == {
        "hodge.presentation", "hodge.decompose", "hodge.relations", "hodge.birational"}
    assert "all checks passed" in err


def test_verify_tamper(capsys):
    code, out, err = run(capsys, "verify", "--only", "hodge.relations", "--max", "3", "--tamper")
    assert code == 3 and json.loads(out)["status"] == "fail"
    assert "FAIL" in err


def test_verify_unknown_check(capsys):
    assert run(capsys, "verify", "--only", "bogus")[0] == 2


def test_verify_deterministic_and_parallel(capsys):
    _, a, _ = run(capsys, "verify", "--max", "4", "--max-hdr", "3")
    _, b, _ = run(capsys, "verify", "--max", "4", "--max-hdr", "3", "--jobs", "2")
    assert a == b


def test_verify_timings_flag(capsys):
    _, out, _ = run(capsys, "verify", "--only", "ranks", "--timings")
    assert all("seconds" in c for c in json.loads(out)["checks"])


def test_catalog(capsys):
    code, out, _ = run(capsys, "catalog", "list")
    assert code == 0 and "P2" in json.loads(out)["names"]
    code, out, _ = run(capsys, "catalog", "show", "SerreSurface")
    assert code == 0 and json.loads(out)["entry"]["derham"] == "partial"
    code, out, _ = run(capsys, "catalog", "product", "E", "E")
    assert code == 0 and json.loads(out)["element"]["hodge"]["h"][1][1] == 4
    assert run(capsys, "catalog", "product", "SerreSurface")[0] == 1
    assert run(capsys, "catalog", "show", "nope")[0] == 2


def test_pretty_flag(capsys):
    _, out, _ = run(capsys, "catalog", "list", "--pretty")
    assert out.startswith("{\n")


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "hodgelab", "rank", "hodge", "4"],
                         capture_output=True, text=True, check=True)
    assert res.stdout.strip() == "13"
