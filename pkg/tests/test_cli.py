import json
import subprocess
import sys


from zzpers import linalg
from zzpers.cli import main
from zzpers.persmod import interval_module
from zzpers.poset import Interval, make_shape


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj) if not isinstance(obj, str) else obj)
    return str(p)


TIMES_TWO = {"shape": {"orientations": ["fwd"]}, "ranks": [1, 1],
             "edges": [{"rows": 1, "cols": 1, "data": [[2]]}]}


def test_pcc_pass(tmp_path, capsys):
    m = interval_module(make_shape(["fwd", "bwd"]), Interval(1, 3))
    assert main(["pcc", write(tmp_path, "m.json", m.to_json())]) == 0
    assert json.loads(capsys.readouterr().out)["overall"] == "pass"


def test_pcc_fail(tmp_path, capsys):
    assert main(["pcc", write(tmp_path, "m.json", TIMES_TWO)]) == 2
    rep = json.loads(capsys.readouterr().out)
    bad = [p for p in rep["pairs"] if p["C2"] != "pass"]
    assert bad == [{"x": 1, "y": 2, "C1": "pass", "C2": {"fail": {"torsion": [2]}},
                    "C3": "pass", "C4": "pass"}]


def test_pcc_truncated_json(tmp_path, capsys):
    assert main(["pcc", write(tmp_path, "m.json", '{"shape": {"orient')]) == 1
    err = capsys.readouterr().err
    assert "m.json:1:" in err


def test_pcc_bad_field(tmp_path, capsys):
    obj = dict(TIMES_TWO, ranks=[1])
    assert main(["pcc", write(tmp_path, "m.json", obj)]) == 1
    assert "ranks" in capsys.readouterr().err


def test_torsion_vertex_refused(tmp_path, capsys):
    obj = {"shape": {"total_order": 1}, "ranks": [1], "edges": [],
           "vertex_relations": [{"rows": 1, "cols": 1, "data": [[2]]}]}
    assert main(["decompose", write(tmp_path, "m.json", obj)]) == 2
    out = json.loads(capsys.readouterr().out)
    assert out["refusal"]["torsion"] == [2]


def test_gen_decompose_verify_roundtrip(tmp_path, capsys):
    mod = tmp_path / "inst.json"
    assert main(["gen", "--seed", "5", "--shape", "fwd,bwd,fwd", "--bars", "4", "-o", str(mod)]) == 0
    side = json.loads((tmp_path / "inst.barcode.json").read_text())
    dec = tmp_path / "dec.json"
    assert main(["decompose", str(mod), "-o", str(dec)]) == 0
    printed = json.loads(capsys.readouterr().out)
    assert sorted((b["lo"], b["hi"]) for b in printed["bars"]) == \
        sorted((b["lo"], b["hi"]) for b in side["bars"])
    assert main(["verify", str(mod), str(dec)]) == 0
    assert json.loads(capsys.readouterr().out)["ok"] is True


def test_gen_is_deterministic(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for p in (a, b):
        assert main(["gen", "--seed", "1", "--shape", "fwd,fwd", "-o", str(p)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_gen_adversarial_has_no_sidecar(tmp_path):
    out = tmp_path / "adv.json"
    assert main(["gen", "--seed", "1", "--shape", "fwd", "--adversarial", "-o", str(out)]) == 0
    assert out.exists() and not (tmp_path / "adv.barcode.json").exists()


def test_gen_shape_spec(tmp_path):
    out = tmp_path / "m.json"
    assert main(["gen", "--seed", "2", "--shape", "fwd,bwd,fwd", "--bars", "4", "-o", str(out)]) == 0
    assert json.loads(out.read_text())["shape"]["orientations"] == ["fwd", "bwd", "fwd"]
    assert main(["gen", "--seed", "2", "--shape", "fwd,left", "-o", str(out)]) == 1


def test_decompose_refusal(tmp_path, capsys):
    assert main(["decompose", write(tmp_path, "m.json", TIMES_TWO)]) == 2
    out = json.loads(capsys.readouterr().out)
    assert out["refusal"] == {"x": 1, "y": 2, "condition": "C2", "torsion": [2]}


def test_decompose_zero_module(tmp_path, capsys):
    m = interval_module(make_shape(["fwd"]), Interval(1, 2), 0)
    assert main(["decompose", write(tmp_path, "m.json", m.to_json())]) == 0
    assert json.loads(capsys.readouterr().out)["bars"] == []


def test_output_reingests(tmp_path, capsys):
    mod = tmp_path / "inst.json"
    main(["gen", "--seed", "8", "--shape", "bwd,fwd,bwd", "--bars", "5", "-o", str(mod)])
    assert main(["decompose", str(mod)]) == 0
    dec = write(tmp_path, "dec.json", capsys.readouterr().out)
    assert main(["verify", str(mod), dec]) == 0


def test_verify_tampered(tmp_path, capsys):
    mod = tmp_path / "inst.json"
    main(["gen", "--seed", "3", "--shape", "fwd,fwd", "--bars", "3", "-o", str(mod)])
    dec = tmp_path / "dec.json"
    main(["decompose", str(mod), "-o", str(dec)])
    capsys.readouterr()
    obj = json.loads(dec.read_text())
    g = obj["summands"][0]["gens"]
    for mat in g:
        if mat["cols"]:
            mat["data"][0][0] = int(mat["data"][0][0]) + 1
            break
    bad = write(tmp_path, "bad.json", obj)
    assert main(["verify", str(mod), bad]) == 2
    assert json.loads(capsys.readouterr().out)["failures"]


def test_verify_wrong_shape(tmp_path):
    mod = tmp_path / "a.json"
    other = tmp_path / "b.json"
    main(["gen", "--seed", "3", "--shape", "fwd,fwd", "--bars", "3", "-o", str(mod)])
    main(["gen", "--seed", "3", "--shape", "fwd", "--bars", "3", "-o", str(other)])
    dec = tmp_path / "dec.json"
    main(["decompose", str(other), "-o", str(dec)])
    assert main(["verify", str(mod), str(dec)]) == 1


def test_barcode_ascii(tmp_path, capsys):
    m = interval_module(make_shape(["fwd", "fwd"]), Interval(2, 3))
    assert main(["barcode", "--ascii", write(tmp_path, "m.json", m.to_json())]) == 0
    assert capsys.readouterr().out.strip() == ".##  [2,3] x1"


def test_internal_bug_sentinel(tmp_path, monkeypatch, capsys):
    import zzpers.cli as cli
    from zzpers.verify import Failure, VerifyReport
    monkeypatch.setattr(cli, "verify_decomposition",
                        lambda m, d: VerifyReport((Failure("not_direct_sum", vertex=1),)))
    m = interval_module(make_shape(["fwd"]), Interval(1, 2))
    assert main(["decompose", write(tmp_path, "m.json", m.to_json())]) == 3


def test_selfcheck_clean(capsys):
    assert main(["selfcheck"]) == 0
    line = capsys.readouterr().out.strip().splitlines()[-1]
    count = int(line.split()[1])
    assert count >= 20


def test_selfcheck_broken_snf(monkeypatch, capsys):
    real = linalg.snf

    def broken(a):
        res = real(a)
        diag = [2 * x for x in res.diagonal]
        s = linalg.IntMatrix(a.rows, a.cols,
                             [[diag[i] if i == j and i < len(diag) else 0 for j in range(a.cols)]
                              for i in range(a.rows)])
        return linalg.SnfResult(res.u, s, res.v)

    monkeypatch.setattr(linalg, "snf", broken)
    assert main(["selfcheck"]) == 2
    assert "failed" in capsys.readouterr().out


def test_module_entry_point(tmp_path):
    m = interval_module(make_shape(["fwd"]), Interval(1, 2))
    p = write(tmp_path, "m.json", m.to_json())
    res = subprocess.run([sys.executable, "-m", "zzpers", "pcc", p], capture_output=True, text=True)
    assert res.returncode == 0
    assert json.loads(res.stdout)["overall"] == "pass"
