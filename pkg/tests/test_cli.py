import json

import pytest

from otlck.cli import main, parse_rational, InputError

CUBIC = {"minpoly": ["-1", "-1", "0", "1"], "generators": [["0", "1", "0"]]}
QUINTIC = {"minpoly": ["-1", "-1", "0", "0", "0", "1"], "generators": [["0", "1", "0", "0", "0"]]}
OCTIC = {"minpoly": [1, 0, -1, 0, 4, 0, -4, 0, 1],
         "generators": [["0", "0", "1", "0", "0", "0", "0", "0"], ["1", "-2", "1", "0", "0", "0", "0", "0"]]}


def run(tmp_path, command, data, *flags):
    inp = tmp_path / "in.json"
    inp.write_text(json.dumps(data) if not isinstance(data, str) else data)
    out = tmp_path / "out.json"
    code = main([command, str(inp), "--output", str(out), *flags])
    text = out.read_text()
    return code, json.loads(text), text


def test_signature_command(tmp_path):
    code, rep, _ = run(tmp_path, "signature", CUBIC)
    assert code == 0 and rep["schema"] == 1
    assert (rep["result"]["n"], rep["result"]["s"], rep["result"]["t"]) == (3, 1, 1)
    kinds = [e["kind"] for e in rep["result"]["embeddings"]]
    assert kinds == ["real", "upper", "lower"]


@pytest.mark.parametrize("minpoly,reason", [(["-2", "0", "1"], "degree"), (["1", "0", "0", "0", "1"],
                                                                          "no-real-embedding")])
def test_signature_rejections(tmp_path, minpoly, reason):
    code, rep, _ = run(tmp_path, "signature", {"minpoly": minpoly})
    assert code == 2 and rep["error"]["reason"] == reason


def test_lck_check(tmp_path):
    code, rep, _ = run(tmp_path, "lck-check", CUBIC)
    assert code == 0 and rep["result"]["status"] == "holds"
    assert rep["result"]["classification"]["label"] == "LCK-exists"
    code, rep, _ = run(tmp_path, "lck-check", QUINTIC)
    assert code == 1 and rep["result"]["comparisons"][0]["decision"] == "not_equal"
    code, rep, _ = run(tmp_path, "lck-check", dict(QUINTIC, generators=[]))
    assert code == 0 and rep["warnings"]


def test_audit(tmp_path):
    code, rep, _ = run(tmp_path, "audit", OCTIC, "--box", "0")
    assert code == 0 and rep["result"]["conclusion"] == "consistent"
    assert rep["result"]["satisfier_rank"]["rank"] == 0
    code, rep, _ = run(tmp_path, "audit", QUINTIC)
    assert code == 2 and rep["error"]["kind"] == "hypothesis"
    code, rep, _ = run(tmp_path, "audit", OCTIC, "--box", "2")
    assert code == 0 and rep["result"]["conclusion"] == "consistent"
    assert rep["result"]["satisfier_rank"]["rank"] == 1
    assert all(s["classification"]["kind"] == "proper-subfield" for s in rep["result"]["satisfiers"])


def test_lemma_witness(tmp_path):
    data = {"lattice": [[1, 0], [0, 1]], "sublattices": [[[1, 0]], [[0, 1]], [[1, 1]]]}
    code, rep, _ = run(tmp_path, "lemma-witness", data)
    assert code == 0 and rep["result"]["witness"] == ["1", "-1"]
    code, rep, _ = run(tmp_path, "lemma-witness", {"lattice": [[1]], "sublattices": [[]]})
    assert code == 0 and rep["result"]["witness"] == ["1"]
    code, rep, _ = run(tmp_path, "lemma-witness", {"lattice": [[1, 0], [0, 1]],
                                                    "sublattices": [[[1, 0], [0, 1]]]})
    assert code == 2 and rep["error"]["kind"] == "full-rank-sublattice"


def test_rank_and_log_embedding(tmp_path):
    data = dict(CUBIC, generators=[["0", "1", "0"], ["0", "0", "1"]])
    code, rep, _ = run(tmp_path, "rank", data)
    assert code == 0 and rep["result"]["rank"] == 1
    code, rep, _ = run(tmp_path, "log-embedding", CUBIC, "--precision-bits", "200")
    row = rep["result"]["log_vectors"][0]
    assert row["residual_contains_zero"]
    lo, hi = row["entries"][0]
    assert lo.startswith("0.28119957432296184") and lo <= hi


@pytest.mark.parametrize("bad,path", [
    ({"minpoly": ["1", "x", "1"]}, "minpoly[1]"),
    ({"minpoly": [1, 0, 0.5]}, "minpoly[2]"),
    ({"minpoly": ["1/2", "0", "1"]}, "minpoly[0]"),
    (dict(CUBIC, generators=[["1", "2"]]), "generators[0]"),
    (dict(CUBIC, options={"box": "a"}), "options.box"),
    ('{"minpoly": [1, 2,', "line 1 column 19"),
])
def test_strict_parsing(tmp_path, bad, path):
    code, rep, _ = run(tmp_path, "signature" if "generators" not in str(bad) else "lck-check", bad)
    assert code == 2 and rep["error"]["path"] == path


def test_parse_rational():
    assert parse_rational("3/4", "p") == parse_rational("0.75", "p")
    for bad in ("1/0", "1e3", "", True):
        with pytest.raises(InputError):
            parse_rational(bad, "p")


def test_not_a_unit_is_input_error(tmp_path):
    code, rep, _ = run(tmp_path, "lck-check", dict(CUBIC, generators=[["2", "0", "0"]]))
    assert code == 2 and rep["error"]["path"] == "generators"


def test_deterministic_and_round_trip(tmp_path):
    _, rep1, text1 = run(tmp_path, "lck-check", QUINTIC)
    _, rep2, text2 = run(tmp_path, "lck-check", QUINTIC)
    assert text1 == text2
    assert json.loads(json.dumps(rep1, sort_keys=True)) == rep1


def test_stdout(tmp_path, capsys):
    inp = tmp_path / "in.json"
    inp.write_text(json.dumps(CUBIC))
    assert main(["signature", str(inp)]) == 0
    assert json.loads(capsys.readouterr().out)["result"]["s"] == 1
