from __future__ import annotations

import json

import pytest

from gmk import reproduce as rp
from gmk.cli import main
from gmk.family import Endomorphism, make_phi


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_phi_text(capsys):
    code, out, _ = run(capsys, "phi", "--m", "1", "--k", "1", "--format", "text")
    assert code == 0
    assert out.splitlines()[0] == "A1 -> A1"


def test_phi_inverse_json(capsys):
    code, out, _ = run(capsys, "phi", "--m", "2", "--k", "2", "--inverse")
    assert json.loads(out)["images"]["B1"] == "A1^-1 A2^-1 B1"


def test_growth_json_and_csv(capsys):
    code, out, _ = run(capsys, "growth", "--m", "2", "--k", "2", "--n-max", "10")
    data = json.loads(out)
    assert code == 0 and data["degree_estimate"] is not None
    code, out, _ = run(capsys, "growth", "--m", "2", "--k", "2", "--n-max", "3", "--format", "csv")
    rows = out.splitlines()
    assert rows[0].startswith("n,") and rows[0].endswith(",gr") and len(rows) == 5


def test_abelian(capsys):
    code, out, _ = run(capsys, "abelian", "--m", "2", "--k", "2", "--n", "3")
    data = json.loads(out)
    assert data["column_l1"]["B2"] == 13
    # M - I has rank 2 and (M - I)^2 != 0 = (M - I)^3, so blocks of sizes 3 and 1
    assert data["jordan_profile"] == [3, 1]


def test_permrep_verify(capsys):
    code, out, _ = run(capsys, "permrep", "--m", "2", "--verify")
    assert code == 0 and json.loads(out)["verification"]["ok"]


def test_cover_json_and_dot(capsys, tmp_path):
    target = tmp_path / "c.dot"
    code, out, _ = run(capsys, "--out", str(target), "cover", "--m", "1", "--emit", "dot")
    assert code == 0 and out == ""
    text = target.read_text()
    assert text.startswith("digraph cover {") and text.count("->") == 24
    code, out, _ = run(capsys, "cover", "--m", "2", "--delete-last")
    data = json.loads(out)
    assert data["degree"] == 16 and data["covering_ok"]


def test_special_assert_vh(capsys):
    assert run(capsys, "special", "--m", "2", "--cover", "--assert-vh")[0] == 0
    code, out, _ = run(capsys, "special", "--m", "3", "--base", "--assert-vh")
    assert code == 1 and not json.loads(out)["vh"]["ok"]


def test_special_flags_exclusive(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["special", "--m", "2", "--base", "--cover"])
    assert exc.value.code == 2


def test_dehn(capsys):
    code, out, _ = run(capsys, "dehn", "--m", "2", "--k", "2", "--n", "3")
    data = json.loads(out)
    assert code == 0 and data["trivial"] and data["lower_bound_abelian"] == 117


def test_comb_audit(capsys):
    code, out, _ = run(capsys, "comb-audit", "--m", "1", "--k", "1", "--radius", "3")
    assert code == 0 and json.loads(out)["ok"]


@pytest.mark.parametrize(
    "argv",
    [
        ["phi", "--m", "2", "--k", "3"],
        ["growth", "--m", "2", "--k", "2", "--n-max", "-1"],
        ["permrep", "--m", "0"],
        ["dehn", "--m", "1", "--k", "1", "--n", "0"],
        ["comb-audit", "--m", "1", "--k", "1", "--radius", "40"],
        ["reproduce", "--only", "bogus"],
    ],
)
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and "gmk: error" in err


def test_bad_threads(capsys, monkeypatch):
    monkeypatch.setenv("GMK_THREADS", "many")
    assert run(capsys, "phi", "--m", "1", "--k", "1")[0] == 2


def test_output_deterministic(capsys):
    a = run(capsys, "special", "--m", "2", "--cover")[1]
    b = run(capsys, "special", "--m", "2", "--cover")[1]
    assert a == b


def test_reproduce_only(capsys):
    code, out, _ = run(capsys, "reproduce", "--only", "permrep")
    assert code == 0
    assert out.splitlines()[0].startswith("PASS  6")
    assert out.splitlines()[-1] == "1/1 criteria passed"


def test_select():
    assert rp.select("cover,11") == [7, 9, 11]
    assert rp.select(None) == list(range(1, 12))


def corrupt(m, k):
    """phi with the last two images swapped: no longer the family map."""
    e = make_phi(m, k)
    imgs = list(e.images)
    imgs[-1], imgs[-2] = imgs[-2], imgs[-1]
    return Endomorphism(e.rank, tuple(imgs), e.inverse_images, e.alphabet)


def test_negative_control_corrupted_phi():
    checks = rp.criterion_1(phi=corrupt)
    assert not all(c.ok for c in checks)


def test_growth_example_gr3(capsys):
    _, out, _ = run(capsys, "growth", "--m", "2", "--k", "2", "--n-max", "10", "--format", "json")
    assert json.loads(out)["gr"][3] == 19
