import json

import pytest

from coheyt.cli import main


@pytest.fixture
def l5_file(tmp_path):
    f = tmp_path / "L5.json"
    f.write_text(json.dumps({"elements": ["c", "x1", "x2"], "covers": [["c", "x1"], ["c", "x2"]]}))
    return str(f)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_validate(capsys, l5_file):
    code, out, _ = run(capsys, "validate", l5_file)
    assert code == 0 and json.loads(out)["elements"] == 5


def test_validate_table(capsys, tmp_path):
    f = tmp_path / "t.json"
    f.write_text(json.dumps({"size": 3, "leq": [[1, 1, 1], [0, 1, 1], [0, 0, 1]]}))
    code, out, _ = run(capsys, "validate", str(f))
    assert code == 0 and json.loads(out)["points"] == 2


def test_validate_cycle(capsys, tmp_path):
    f = tmp_path / "bad.json"
    f.write_text(json.dumps({"elements": ["p", "q"], "covers": [["p", "q"], ["q", "p"]]}))
    code, _, err = run(capsys, "validate", str(f))
    assert code == 2 and "CycleDetected" in err


def test_eval(capsys, l5_file):
    code, out, _ = run(capsys, "eval", "--algebra", l5_file, "--term", "1 - x", "--bind", "x=x1")
    assert code == 0 and out.strip() == "{c,x2}"


def test_variety(capsys, l5_file):
    code, out, _ = run(capsys, "variety", "--algebra", l5_file, "--tag", "V4")
    assert code == 0
    assert out.splitlines()[0] == "equational: member; structural: member"
    code, out, _ = run(capsys, "variety", "--algebra", l5_file, "--tag", "V2")
    assert code == 1 and "counterexample" in out


def test_enumerate(capsys):
    code, out, _ = run(capsys, "enumerate", "--max-size", "2")
    assert code == 0 and len(out.splitlines()) == 2
    code, out, _ = run(capsys, "enumerate", "--max-size", "2", "--all-sizes")
    assert len(out.splitlines()) == 4


def test_signatures_extend_tower(capsys):
    code, out, _ = run(capsys, "signatures", "--algebra", "L2")
    assert code == 0 and len(out.splitlines()) == 2
    sig = json.dumps({"g": ["t"], "h": [[], []], "r": 2})
    code, out, _ = run(capsys, "extend", "--algebra", "L2", "--signature", sig)
    assert code == 0 and len(json.loads(out)["extension"]["elements"]) == 2
    code, out, _ = run(capsys, "tower", "--algebra", "L5")
    assert code == 0 and len(out.splitlines()) == 2


def test_irr_and_axiom(capsys):
    code, out, _ = run(capsys, "irr", "--algebra", "L5")
    assert code == 0 and len(json.loads(out)) == 3
    code, out, _ = run(capsys, "axiom", "--algebra", "L2", "--kind", "density", "--variant", "1")
    assert code == 1 and "t" in out


def test_witness_and_embed(capsys):
    code, out, _ = run(capsys, "witness", "--algebra", "L2", "--kind", "splitting", "--variant", "1",
                       "--a", "1", "--b1", "0", "--b2", "0")
    data = json.loads(out)
    assert code == 0 and set(data["witnesses"]) == {"a1", "a2"}
    code, out, _ = run(capsys, "embed", "--algebra", "L5", "--tag", "V4")
    assert code == 0
    code, _, err = run(capsys, "embed", "--algebra", "L5", "--tag", "V6")
    assert code == 1 and "VarietyMismatch" in err


def test_iso_over(capsys):
    sig = json.dumps({"g": ["t"], "h": [[], []], "r": 2})
    code, out, _ = run(capsys, "iso-over", "--algebra", "L2", "--signature", sig, "--other", sig)
    assert code == 0


def test_export_dot(capsys, tmp_path):
    code, out, _ = run(capsys, "export-dot", "--algebra", "L5")
    assert code == 0 and out.startswith("digraph") and "rankdir=BT" in out
    target = tmp_path / "p.dot"
    code, _, _ = run(capsys, "export-dot", "--algebra", "L5", "--poset", "--output", str(target))
    assert '"c" -> "x1"' in target.read_text()


def test_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["variety", "--algebra", "L5"])
    assert exc.value.code == 2


def test_witness_json_revalidates(capsys):
    from coheyt.catalog import L3
    from coheyt.duality import check_embedding, lifted_embedding
    from coheyt.lattice import build_poset
    from coheyt.witnesses import is_density_witness

    code, out, _ = run(capsys, "witness", "--algebra", "L3", "--kind", "density", "--variant", "1",
                       "--a", "1", "--c", "c")
    data = json.loads(out)
    L = L3()
    Q = build_poset(data["L'"]["elements"], data["L'"]["covers"])
    emb = lifted_embedding(L, Q, data["pi"])
    assert check_embedding(emb)
    b = emb.target.element(data["witnesses"]["b"])
    A, C = emb(L.one), emb(L.principal("c"))
    assert is_density_witness(Q, 1, A.mask, C.mask, b.mask)


def test_output_is_deterministic(capsys):
    first = run(capsys, "embed", "--algebra", "L5_star", "--tag", "V6")
    second = run(capsys, "embed", "--algebra", "L5_star", "--tag", "V6")
    assert first == second
