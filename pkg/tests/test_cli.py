import json

import pytest

from cherednik.cli import main, run
from cherednik.field import mpq
from cherednik.poly import MultiPoly
from cherednik.serialize import poly_from_json, poly_to_json


@pytest.fixture(autouse=True)
def cache(tmp_path, monkeypatch):
    monkeypatch.setenv("CHEREDNIK_CACHE", str(tmp_path / "cache"))
    return tmp_path / "cache"


def _json(capsys, argv):
    code = main(argv + ["--format", "json"])
    return code, json.loads(capsys.readouterr().out)


def test_roots_d4(capsys):
    code, out = _json(capsys, ["roots", "--group", "D4"])
    assert code == 0
    desc = out["outputs"]["root_system"]
    assert len(desc["roots"]) == 12 and desc["degrees"] == [6, 4, 4, 2] and desc["h"] == 6


def test_singular_a1(capsys):
    code, out = _json(capsys, ["singular", "--group", "A1", "--beta", "1", "--m", "1", "--verify"])
    assert code == 0 and out["outputs"]["singular"] is True
    q = poly_from_json(out["outputs"]["family"]["q"][0])
    z1, z2 = MultiPoly.gens(2)
    assert q.is_proportional_to((z1 - z2) ** 3)
    assert out["outputs"]["family"]["c"] == "3/2"


def test_verify_exit_codes(capsys, tmp_path):
    path = tmp_path / "x1.json"
    path.write_text(json.dumps(poly_to_json(MultiPoly.var(2, 0))))
    code, out = _json(capsys, ["verify", "--group", "B2", "--c", "1/3", "--poly", str(path)])
    assert code == 1 and out["outputs"]["certificate"]["singular"] is False
    residual = poly_from_json(out["outputs"]["certificate"]["residuals"][0])
    assert residual == MultiPoly.const(2, 1 - mpq(4, 3))
    code, out = _json(capsys, ["verify", "--group", "B2", "--c", "1/4", "--poly", str(path)])
    assert code == 0 and out["outputs"]["certificate"]["singular"] is True


def test_verify_inline_poly(capsys):
    inline = json.dumps(poly_to_json(MultiPoly.var(2, 1)))
    assert main(["verify", "--group", "B2", "--c", "1/4", "--poly", inline]) == 0


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["bogus"],
        ["roots", "--group", "Q7"],
        ["verify", "--group", "B2", "--c", "1/0", "--poly", "{}"],
        ["verify", "--group", "B2", "--c", "0.25", "--poly", "{}"],
        ["verify", "--group", "B2", "--c", "1/4", "--poly", '{"vars": 2}'],
        ["singular", "--group", "B2", "--beta", "3"],
        ["residue", "--kind", "B", "--rank", "2", "--s", "5"],
        ["complex", "--n", "2", "--ell", "3", "--q", "3"],
        ["selftest", "--only", "11"],
    ],
)
def test_usage_errors(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2


def test_saito_cache(capsys, cache, tmp_path):
    out_path = tmp_path / "frame.json"
    code, first = _json(capsys, ["saito", "--group", "D4", "--out", str(out_path)])
    assert code == 0 and first["cache_hits"] == 0
    assert len(list(cache.glob("frame-D4-*.json"))) == 1
    code, second = _json(capsys, ["saito", "--group", "D4"])
    assert code == 0 and second["cache_hits"] == 1
    assert second["outputs"]["frame"] == first["outputs"]["frame"]
    saved = json.loads(out_path.read_text())
    assert set(saved) >= {"group", "degrees", "h", "t", "U"}


def test_corrupt_cache_is_recomputed(capsys, cache):
    main(["saito", "--group", "B2"])
    capsys.readouterr()
    (entry,) = cache.glob("frame-B2-*.json")
    entry.write_text("{broken")
    code, out = _json(capsys, ["saito", "--group", "B2"])
    assert code == 0 and out["cache_hits"] == 0


def test_periods(capsys):
    code, out = _json(capsys, ["periods", "--group", "D4", "--nu", "1/2", "--degree", "4"])
    assert code == 0 and out["outputs"]["dimension"] == 2


def test_residue_and_complex(capsys):
    code, out = _json(capsys, ["residue", "--kind", "B", "--rank", "3", "--s", "2", "--m", "1"])
    assert code == 0 and poly_from_json(out["outputs"]["polynomial"]).degree() == 10
    code, out = _json(capsys, ["complex", "--n", "2", "--ell", "3", "--q", "1", "--s", "0", "--m", "1", "--verify"])
    assert code == 0
    assert out["outputs"]["family"][0]["field"] == {"kind": "cyclotomic", "param": 3}
    assert all(c["passed"] for c in out["checks"].values())


def test_text_format_and_report_file(capsys, tmp_path):
    report_path = tmp_path / "report.json"
    report, code = run(["residue", "--kind", "D-zero", "--rank", "4", "--json", str(report_path)])
    text = capsys.readouterr().out
    assert code == 0 and "x1*x2*x3*x4" in text
    assert json.loads(report_path.read_text())["params"]["kind"] == "D-zero"


def test_report_is_deterministic(capsys):
    outs = []
    for _ in range(2):
        _, out = _json(capsys, ["singular", "--group", "B2", "--beta", "1", "--m", "1", "--verify"])
        out.pop("seconds")
        out.pop("cache_hits")
        outs.append(out)
    assert outs[0] == outs[1]


def test_selftest_subset(capsys):
    code, out = _json(capsys, ["selftest", "--only", "6,8"])
    assert code == 0
    assert set(out["checks"]) == {"criterion_6", "criterion_8"}
