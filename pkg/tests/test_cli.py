import io
import json

import pytest

from gpdcolim.cli import INCONCLUSIVE, OK, REFUTED, USAGE, run
from gpdcolim.diagram import load, save

from corpus import corpus
from test_diagram import inverted_s3_b3, swapped_b3


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def files(tmp_path):
    def write(name, text):
        p = tmp_path / name
        p.write_text(text, encoding="utf-8")
        return str(p)

    paths = {}
    for ex in ("s1", "s0-collapse"):
        code, text, _ = call("example", ex)
        assert code == OK
        paths[ex] = write(f"{ex}.json", text)
    paths["b3"] = write("b3.json", save(corpus()["b3-mixed"]))
    paths["swapped"] = write("swapped.json", save(swapped_b3()))
    paths["undecided"] = write("undecided.json", save(inverted_s3_b3()))
    paths["z2"] = write("z2.json", json.dumps({"name": "Z/2", "components": [{"objects": ["u"], "group": "Z/2"}]}))
    paths["broken"] = write("broken.json", "{\"ground_n\": 2,")
    paths["bad-target"] = write("bad-target.json", json.dumps({"components": [{"objects": ["u"], "group": "Q8"}]}))
    return paths


def test_example_round_trips(files):
    code, text, _ = call("example", "s1")
    assert code == OK and save(load(text)) == text.rstrip("\n") + "\n"


def test_validate(files):
    code, text, _ = call("validate", files["s1"], "--json")
    doc = json.loads(text)
    assert code == OK and doc["strict"] and doc["failures"] == []
    code, text, _ = call("validate", files["swapped"], "--json")
    assert code == REFUTED and json.loads(text)["failures"]
    code, text, _ = call("validate", files["undecided"], "--json")
    assert code == INCONCLUSIVE and json.loads(text)["unknowns"]


def test_colim_and_twocolim_reports(files):
    code, text, _ = call("colim", files["s1"], "--json")
    doc = json.loads(text)
    assert code == OK and doc["objects"] == 2
    assert [c["description"] for c in doc["components"]] == ["free rank 1"]
    code, text, _ = call("twocolim", files["s0-collapse"], "--json")
    doc = json.loads(text)
    assert code == OK and doc["components"][0]["abelianization"] == [1, []]
    code, text, _ = call("colim", files["s0-collapse"])
    assert code == OK and "trivial" in text


def test_conditions(files):
    code, text, _ = call("conditions", files["s1"], "--maincor", "--json")
    doc = json.loads(text)
    assert code == OK and doc["size"] == 1 and doc["all_hold"]
    code, text, _ = call("conditions", files["b3"], "--full", "--json")
    doc = json.loads(text)
    assert doc["size"] == 3 and sum(len(c["labels"]) for c in doc["conditions"]) == 4
    code, text, _ = call("conditions", files["s0-collapse"], "--json")
    doc = json.loads(text)
    assert code == REFUTED and doc["conditions"][0]["witness"] == ["{}:c", "{}:d"]


def test_compare(files):
    code, text, _ = call("compare", files["s1"], "--json")
    doc = json.loads(text)
    assert code == OK and doc["verdict"] == "GuaranteedEquivalent"
    assert {"colim", "twocolim", "conditions", "witness", "unknowns", "fuel_spent", "detail"} <= set(doc)
    code, text, _ = call("compare", files["s0-collapse"])
    assert code == REFUTED and "Distinguished" in text


def test_truncate_check_and_gamma_k(files):
    code, text, _ = call("truncate-check", files["b3"], "--target", files["z2"], "--json")
    doc = json.loads(text)
    assert code == OK and doc["agree"] and doc["descent_classes"] == [["Z/2", 2, 2]]
    code, _, err = call("truncate-check", files["s1"])
    assert code == USAGE and "n >= 3" in err
    code, text, _ = call("gamma-k", files["b3"], "--k", "1", "--json")
    doc = json.loads(text)
    assert code == OK and doc["consistent"] and doc["expected"] == {"faithful": True, "full": True,
                                                                    "equivalence": False}
    code, _, _ = call("gamma-k", files["b3"], "--k", "-1")
    assert code == USAGE


def test_oracle(files):
    code, text, _ = call("oracle", files["s0-collapse"], "--target", files["z2"], "--json")
    doc = json.loads(text)
    assert code == OK and doc["ok"] and doc["colim_functors"] == doc["strict_cones"] == 1
    assert doc["twocolim_classes"] == doc["descent_classes"]
    code, _, err = call("oracle", files["s1"], "--target", files["bad-target"])
    assert code == USAGE and "Q8" in err


def test_injectivize_output_feeds_compare(files, tmp_path):
    code, text, _ = call("injectivize", files["s0-collapse"])
    assert code == OK
    p = tmp_path / "inj.json"
    p.write_text(text)
    code, text, _ = call("compare", str(p), "--json")
    assert code == OK and json.loads(text)["verdict"] == "GuaranteedEquivalent"
    code, _, _ = call("injectivize", files["b3"])
    assert code == USAGE


def test_stdin(files, monkeypatch):
    with open(files["s1"]) as fh:
        monkeypatch.setattr("sys.stdin", io.StringIO(fh.read()))
    code, text, _ = call("colim", "-", "--json")
    assert code == OK and json.loads(text)["objects"] == 2


def test_usage_errors(files):
    assert call("colim", "/nonexistent/file.json")[0] == USAGE
    assert call("colim", files["broken"])[0] == USAGE
    assert call("colim", files["s1"], "--fuel", "0")[0] == USAGE
    assert call("nonsense")[0] == USAGE
    assert call("gamma-k", files["b3"])[0] == USAGE
    code, _, err = call("colim", files["swapped"])
    assert code == USAGE and "not verified strict" in err


def test_undecided_strictness_is_inconclusive_unless_forced(files):
    code, _, _ = call("colim", files["undecided"])
    assert code == INCONCLUSIVE
    code, text, _ = call("colim", files["undecided"], "--force", "--json")
    assert code == OK and json.loads(text)["unknowns"]


def test_fuel_exhaustion_is_inconclusive(files):
    code, text, _ = call("oracle", files["b3"], "--target", files["z2"], "--fuel", "5", "--json")
    doc = json.loads(text)
    assert code == INCONCLUSIVE and doc["verdict"] == "Inconclusive" and doc["fuel_spent"] > 0
