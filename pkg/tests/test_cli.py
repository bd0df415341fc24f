import io
import json
import random
import subprocess
import sys
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from yosp import cli
from yosp.exact import Polynomial, RationalFunction
from yosp.hw import HighestWeight, LinearWeight
from yosp.series import FactoredSeries
from yosp.superlinalg import AlgebraContext


def run(argv, capsys, stdin=None, monkeypatch=None):
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    try:
        code = cli.main(argv)
    except SystemExit as exc:
        code = exc.code
    out = capsys.readouterr()
    return code, out.out, out.err


def write(tmp_path, doc, name="w.json"):
    p = tmp_path / name
    p.write_text(doc if isinstance(doc, str) else json.dumps(doc))
    return str(p)


def weight_doc(m, n, values):
    return cli.weight_to_document(LinearWeight(AlgebraContext.standard(m, n), values).to_highest_weight())


# ---- verify


@pytest.mark.parametrize(
    "argv",
    [
        ["verify", "ybe", "--m", "1", "--n", "1", "--samples", "10"],
        ["verify", "rtt", "--parity", "101", "--samples", "3"],
        ["verify", "rtt", "--module", "tensor", "--shift", "2/5", "--samples", "2"],
        ["verify", "center", "--m", "1", "--n", "2", "--order", "4"],
        ["verify", "gauss", "--parity", "01", "--order", "5"],
        ["verify", "iso", "--order", "8"],
        ["verify", "reflection"],
    ],
)
def test_verify_passes(argv, capsys):
    code, out, _ = run(argv, capsys)
    assert code == 0, out
    assert ": PASS" in out.splitlines()[0]


def test_verify_json_report_is_exact_and_seeded(capsys):
    code, out, _ = run(["verify", "rtt", "--samples", "4", "--seed", "7", "--json"], capsys)
    rep = json.loads(out)
    assert code == 0 and rep["verdict"] == "pass" and rep["seed"] == 7
    assert len(rep["checks"]) == 4 and "timing_seconds" in rep
    assert "." not in "".join(c["name"] for c in rep["checks"])  # points are p/q strings, no floats


def test_verify_is_deterministic(capsys):
    a = json.loads(run(["verify", "ybe", "--samples", "3", "--seed", "3", "--json"], capsys)[1])
    b = json.loads(run(["verify", "ybe", "--samples", "3", "--seed", "3", "--json"], capsys)[1])
    assert [c["name"] for c in a["checks"]] == [c["name"] for c in b["checks"]]


def test_verify_negative_controls(capsys):
    code, out, _ = run(["verify", "rtt", "--corrupt", "1", "2", "--samples", "2", "--json"], capsys)
    rep = json.loads(out)
    assert code == 1 and rep["verdict"] == "fail"
    assert rep["checks"][0]["witness"]["entries"]
    code, out, _ = run(["verify", "iso", "--order", "4", "--normalization", "stated"], capsys)
    assert code == 1 and "FAIL" in out


@pytest.mark.parametrize(
    "argv",
    [
        ["verify", "rtt", "--parity", "2"],
        ["verify", "rtt", "--parity", ""],
        ["verify", "rtt", "--parity", "10", "--m", "2"],
        ["verify", "ybe", "--m", "3", "--n", "2"],
        ["verify", "ybe", "--m", "0"],
        ["verify", "ybe", "--order", "17"],
        ["verify", "ybe", "--samples", "0"],
        ["verify", "iso", "--parity", "10"],
        ["verify", "reflection", "--parity", "01"],
        ["verify", "rtt", "--corrupt", "1", "9"],
        ["verify", "rtt", "--module", "tensor", "--shift", "abc"],
        ["verify", "rtt", "--max-dim", "0"],
        ["verify", "nonsense"],
        [],
    ],
)
def test_usage_errors(argv, capsys):
    code, _, err = run(argv, capsys)
    assert code == 64
    assert "error" in err


def test_dimension_cap_is_not_applicable(capsys, monkeypatch):
    monkeypatch.setenv("YOSP_MAX_DIM", "10")
    code, _, err = run(["verify", "rtt", "--module", "tensor"], capsys)
    assert code == 2 and "not applicable" in err
    code, _, _ = run(["verify", "rtt", "--module", "tensor", "--max-dim", "100", "--samples", "1"], capsys)
    assert code == 0


# ---- weight documents


def test_weight_command_and_linear_check(tmp_path, capsys):
    code, out, _ = run(["weight", "--m", "1", "--n", "2", "--linear", "-1", "1", "0"], capsys)
    assert code == 0
    path = write(tmp_path, out)
    code, out, _ = run(["check", path, "--mode", "linear", "--json"], capsys)
    rep = json.loads(out)
    assert code == 0 and rep["data"]["diagram"] == [1, 1]
    bad = write(tmp_path, weight_doc(1, 2, (-1, 2, 2)), "bad.json")
    assert run(["check", bad, "--mode", "linear"], capsys)[0] == 1


def test_weight_comma_form(capsys):
    code, out, _ = run(["weight", "--m", "1", "--n", "1", "--linear=-1/2,1"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["components"][0]["roots"] == ["-1/2"]
    assert run(["weight", "--m", "1", "--n", "1", "--linear", "1"], capsys)[0] == 64
    assert run(["weight", "--m", "1", "--n", "1", "--linear", "x"], capsys)[0] == 64


def test_check_necessary_on_vector_weight(tmp_path, capsys):
    doc = cli.weight_to_document(HighestWeight(AlgebraContext.standard(1, 2), (FactoredSeries.linear(-1), FactoredSeries.one(), FactoredSeries.one()), FactoredSeries.one()))
    code, out, _ = run(["check", write(tmp_path, doc)], capsys)
    assert code == 0, out


def test_check_osp22_mode(tmp_path, capsys, monkeypatch):
    one = {"roots": []}
    vec = {"m": 1, "n": 1, "parity": "10", "components": [{"roots": ["-1"]}, one], "last": one}
    assert run(["check", "-", "--mode", "osp22"], capsys, json.dumps(vec), monkeypatch)[0] == 0
    bad = dict(vec, components=[{"roots": ["5"]}, one])
    code, out, _ = run(["check", write(tmp_path, bad), "--mode", "osp22"], capsys)
    assert code == 1 and "f = " in out
    wrong = dict(vec, parity="01")
    assert run(["check", write(tmp_path, wrong, "x.json"), "--mode", "osp22"], capsys)[0] == 2


@pytest.mark.parametrize(
    "text,where",
    [
        ("{not json", "line 1 column 2"),
        (json.dumps({"m": 1, "n": 1, "parity": "10", "components": [{"roots": [0.5]}, {"roots": []}], "last": {"roots": []}}), "$.components[0].roots[0]"),
        (json.dumps({"m": 1, "n": 1, "parity": "10", "components": [{"roots": []}], "last": {"roots": []}}), "$.components"),
        (json.dumps({"m": 1, "n": 1, "parity": "11", "components": [{"roots": []}] * 2, "last": {"roots": []}}), "$.parity"),
        (json.dumps({"m": 1, "n": 1, "parity": "10", "components": [{"roots": []}] * 2}), "$"),
        (json.dumps({"m": 1, "n": 1, "parity": "10", "components": [{"roots": []}] * 2, "last": {"roots": [], "tail": {"num": ["1"], "den": ["0"]}}}), "$.last.tail.den"),
        (json.dumps({"m": 1, "n": 1, "parity": "10", "components": [{"roots": []}] * 2, "last": {"roots": [], "tail": {"num": ["2", "3"], "den": ["0", "1"]}}}), "$.last.tail"),
    ],
)
def test_malformed_documents(tmp_path, capsys, text, where):
    code, _, err = run(["check", write(tmp_path, text)], capsys)
    assert code == 65
    assert where in err


def test_missing_file_is_usage_error(capsys):
    assert run(["check", "/nonexistent/w.json"], capsys)[0] == 64


# ---- reflect


def test_reflect_osp22_matches_closed_form(tmp_path, capsys):
    for a in ("5", "-3/2"):
        doc = {"m": 1, "n": 1, "parity": "10", "components": [{"roots": [a]}, {"roots": []}], "last": {"roots": []}}
        code, out, _ = run(["reflect", write(tmp_path, doc), "--kind", "osp22"], capsys)
        assert code == 0
        got = cli.weight_from_document(json.loads(out))
        A = Fraction(a)
        assert got.ctx.parity == (0, 1)
        assert got.components == (FactoredSeries.linear(1), FactoredSeries.linear(A + 1))
        assert got.last == FactoredSeries.from_rational(RationalFunction(Polynomial([-1, 1]), Polynomial([A, 1])))
        # the output is parity 01, so a second application is refused
        assert run(["reflect", write(tmp_path, out, "r.json"), "--kind", "osp22"], capsys)[0] == 2


def test_reflect_chain(tmp_path, capsys):
    doc = cli.weight_to_document(LinearWeight(AlgebraContext.standard(1, 2), (-1, 0, 0)).to_highest_weight())
    doc["last"] = {"roots": []}
    code, out, _ = run(["reflect", write(tmp_path, doc), "--kind", "chain"], capsys)
    res = json.loads(out)
    assert code == 0 and res["parity"] == "010"
    assert [c["roots"] for c in res["components"]] == [["1"], [], []]
    bad = dict(doc, parity="010")
    assert run(["reflect", write(tmp_path, bad, "b.json"), "--kind", "chain"], capsys)[0] == 2


def test_reflect_A(tmp_path, capsys):
    doc = {
        "m": 2, "n": 2, "parity": "1100",
        "components": [{"roots": ["-2"]}, {"roots": ["-1/2"]}, {"roots": []}, {"roots": []}],
        "last": {"roots": []},
    }
    path = write(tmp_path, doc)
    code, out, _ = run(["reflect", path, "--kind", "A"], capsys)
    res = json.loads(out)
    assert code == 0 and res["parity"] == "1010"
    assert [c["roots"] for c in res["components"]] == [["-2"], ["1"], ["1/2"], []]
    assert run(["reflect", path, "--kind", "A", "--index", "1"], capsys)[0] == 2  # bits 11
    assert run(["reflect", path, "--kind", "A", "--index", "3"], capsys)[0] == 2  # touches lambda_(m+n)
    sq = dict(doc, components=[{"roots": []}, {"roots": [], "tail": {"num": ["-2", "0", "1"], "den": ["0", "0", "1"]}}, {"roots": []}, {"roots": []}])
    code, _, err = run(["reflect", write(tmp_path, sq, "sq.json"), "--kind", "A"], capsys)
    assert code == 2 and "irrational" in err


# ---- round trips


rat = st.fractions(min_value=-9, max_value=9, max_denominator=7)


@st.composite
def documents(draw):
    m, n = draw(st.sampled_from([(1, 1), (1, 2), (2, 1), (2, 2)]))
    ctx = AlgebraContext.standard(m, n)

    def series():
        k = draw(st.integers(0, 2))
        num = Polynomial.from_roots(draw(st.lists(rat, min_size=k, max_size=k)))
        den = Polynomial.from_roots(draw(st.lists(rat, min_size=k, max_size=k)))
        return FactoredSeries.from_rational(RationalFunction(num, den))

    return cli.weight_to_document(HighestWeight(ctx, tuple(series() for _ in range(m + n)), series()))


@given(documents())
@settings(max_examples=60)
def test_parse_print_identity(doc):
    text = cli.dump_document(doc)
    again = cli.weight_to_document(cli.weight_from_document(json.loads(text)))
    assert again == doc
    assert cli.dump_document(again) == text


def test_reflect_output_round_trips(tmp_path, capsys):
    doc = {"m": 1, "n": 1, "parity": "10", "components": [{"roots": ["7/3"]}, {"roots": ["-1"]}], "last": {"roots": ["2"]}}
    out = run(["reflect", write(tmp_path, doc), "--kind", "osp22"], capsys)[1]
    assert cli.dump_document(cli.weight_to_document(cli.weight_from_document(json.loads(out)))) == out.strip()


def test_sample_pairs_are_bounded_and_filtered():
    pairs = cli.sample_pairs(random.Random(0), 50, lambda x, y: x != y)
    assert len(pairs) == 50
    assert all(abs(x.numerator) <= 50 * x.denominator and x.denominator <= 50 for p in pairs for x in p)
    assert cli.sample_pairs(random.Random(0), 3, lambda x, y: False) == []


def test_module_entry_point(tmp_path):
    r = subprocess.run(
        [sys.executable, "-m", "yosp", "weight", "--m", "1", "--n", "1", "--linear", "0", "0"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert r.returncode == 0 and json.loads(r.stdout)["parity"] == "10"
