import json

import pytest

from latpoly.cli import main


def write(tmp_path, name, data):
    p = tmp_path / name
    p.write_text(json.dumps(data) if not isinstance(data, str) else data)
    return str(p)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


SQUARE = {"name": "square", "dim": 2, "vertices": [[0, 0], [1, 0], [0, 1], [1, 1]]}


def test_invariants_square(tmp_path, capsys):
    code, out, _ = run(capsys, "invariants", write(tmp_path, "sq.json", SQUARE))
    assert code == 0
    assert out.startswith("delta: 1+t, vol: 2, spans: true, pyramids: 0")


def test_invariants_delta2_and_point(tmp_path, capsys):
    code, out, _ = run(capsys, "generate", "Δ2", "--i1", "2")
    f = write(tmp_path, "d2.json", out)
    code, out, _ = run(capsys, "invariants", f)
    assert code == 0 and out.startswith("delta: 1+t^2, vol: 2, spans: false")
    code, out, _ = run(capsys, "invariants", write(tmp_path, "pt.json", {"dim": 0, "vertices": [[]]}))
    assert code == 0 and out.startswith("delta: 1, vol: 1")


def test_invariants_json(tmp_path, capsys):
    code, out, _ = run(capsys, "invariants", "--json", write(tmp_path, "sq.json", SQUARE))
    data = json.loads(out)
    assert data["delta"] == [1, 1, 0] and data["delta_polynomial"] == "1+t" and data["half_sum"] == 4


def test_generate(capsys):
    code, out, _ = run(capsys, "generate", "Δ2", "--i1", "2")
    data = json.loads(out)
    assert code == 0 and data["dim"] == 3 and len(data["vertices"]) == 4
    code, out, _ = run(capsys, "generate", "B4", "--k", "2")
    data = json.loads(out)
    assert data["dim"] == 4 and len(data["vertices"]) == 6


def test_generate_infeasible(capsys):
    code, _, err = run(capsys, "generate", "Δ41", "--i1", "1", "--i2", "1", "--i3", "2")
    assert code == 2 and "i1 < i2 < i3" in err
    code, _, err = run(capsys, "generate", "nope")
    assert code == 2


def test_classify(tmp_path, capsys):
    import random
    from latpoly.catalog import make_table2
    from latpoly.io import polytope_to_dict
    from latpoly.polytope import apply_map, random_unimodular_map
    P = make_table2("Q4_9")
    Q = apply_map(random_unimodular_map(P.ambient_dim, random.Random(3)), P)
    code, out, _ = run(capsys, "classify", write(tmp_path, "q.json", polytope_to_dict(Q)))
    assert code == 0 and out.strip() == "Q4_9, pyramids: 0"

    code, out, _ = run(capsys, "generate", "Δ3", "--i1", "1", "--i2", "2", "--pyramids", "2")
    f = write(tmp_path, "p.json", out)
    code, out, _ = run(capsys, "classify", f)
    assert code == 0 and out.strip() == "Δ3 (i1=1,i2=2), pyramids: 2"


def test_classify_then_apply(tmp_path, capsys):
    code, out, _ = run(capsys, "generate", "B4", "--k", "2", "--pyramids", "1")
    f = write(tmp_path, "b.json", out)
    code, out, _ = run(capsys, "classify", "--json", f)
    w = write(tmp_path, "w.json", out)
    code, out, _ = run(capsys, "apply", w, f)
    assert code == 0
    code, ref, _ = run(capsys, "generate", "B4", "--k", "2")
    assert json.loads(out)["vertices"] == json.loads(ref)["vertices"]


def test_classify_large_volume(tmp_path, capsys):
    big = {"dim": 2, "vertices": [[0, 0], [2, 0], [0, 2], [2, 2]]}
    code, out, _ = run(capsys, "classify", write(tmp_path, "big.json", big))
    assert code == 1 and "volume exceeds 4" in out


@pytest.mark.parametrize("text", [
    '{"dim": 2, "vertices": [[0, 0], [1]]}',
    '{"dim": 1, "vertices": [[0], [9223372036854775808]]}',
    '{"dim": 1, "vertices": [[0], [1.5]]}',
    '{"dim": 2}',
    '[1, 2]',
    'not json',
    '{"dim": 2, "vertices": []}',
])
def test_malformed_input_exit_2(tmp_path, capsys, text):
    code, _, err = run(capsys, "invariants", write(tmp_path, "bad.json", text))
    assert code == 2 and err


def test_missing_file(capsys):
    assert run(capsys, "invariants", "/nonexistent/file.json")[0] == 2


def test_bad_arguments(capsys):
    assert run(capsys, "verify", "nosuchsuite")[0] == 2
    assert run(capsys, "enumerate", "--dmax", "9")[0] == 2


def test_equiv(tmp_path, capsys):
    f = write(tmp_path, "sq.json", SQUARE)
    g = write(tmp_path, "sh.json", {"dim": 2, "vertices": [[3, 1], [4, 1], [3, 2], [4, 2]]})
    h = write(tmp_path, "tri.json", {"dim": 2, "vertices": [[0, 0], [1, 0], [0, 1]]})
    assert run(capsys, "equiv", f, g)[0] == 0
    code, out, _ = run(capsys, "equiv", f, h)
    assert code == 1 and out.strip() == "not equivalent"


def test_apply_map(tmp_path, capsys):
    m = write(tmp_path, "m.json", {"matrix": [[1, 1], [0, 1]], "translation": [0, 5]})
    code, out, _ = run(capsys, "apply", m, write(tmp_path, "sq.json", SQUARE))
    assert code == 0
    assert sorted(map(tuple, json.loads(out)["vertices"])) == [(0, 5), (0, 6), (1, 6), (1, 7)]
    bad = write(tmp_path, "b.json", {"matrix": [[2, 0], [0, 1]], "translation": [0, 0]})
    assert run(capsys, "apply", bad, write(tmp_path, "sq2.json", SQUARE))[0] == 2


def test_verify_enumeration(capsys):
    code, out, _ = run(capsys, "verify", "enumeration", "--dmax", "3")
    assert code == 0 and "class-counts" in out and "enumeration: pass" in out


def test_verify_matrices_json(capsys):
    code, out, _ = run(capsys, "verify", "matrices", "--kmax", "2", "--json")
    data = json.loads(out)
    assert code == 1 and not data["ok"]
    assert [c["id"] for c in data["checks"] if c["status"] == "fail"] == ["identity/B:U_{5,7}/k=2"]


def test_enumerate(capsys):
    code, out, _ = run(capsys, "enumerate", "--dmax", "2", "--json")
    data = json.loads(out)
    assert code == 0 and [len(data[d]) for d in ("1", "2")] == [3, 3]
    code, out2, _ = run(capsys, "enumerate", "--dmax", "2", "--json", "--groups")
    assert [c["delta"] for c in json.loads(out2)["2"]] == [c["delta"] for c in data["2"]]
