import json
import subprocess
import sys

import pytest

from factoriad import fixtures as fx
from factoriad.algcorr import algebra_to_names, fs_to_pseudo_algebra
from factoriad.cli import main
from factoriad.factsys import all_choices, enumerate_fs
from factoriad.io import dumps
from conftest import FIXTURE_DIR, ROOT

GOLDEN = ROOT / "tests" / "golden"


def fixture(name):
    return str(FIXTURE_DIR / f"{name}.json")


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def report(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    return code, json.loads(out)


def write(tmp_path, name, doc):
    p = tmp_path / name
    p.write_text(dumps(doc))
    return str(p)


# -- the documented examples --------------------------------------------------


def test_monad_laws_two(capsys):
    code, rep = report(capsys, "monad-laws", fixture("two"), "--monad", "P")
    assert code == 0 and rep["status"] == "pass"
    assert rep["inputs"]["category"] == __import__("hashlib").sha256((FIXTURE_DIR / "two.json").read_bytes()).hexdigest()


def test_fs_enumerate_idem_proper_only(capsys):
    code, rep = report(capsys, "fs-enumerate", fixture("idem"), "--proper-only")
    assert code == 0
    assert rep["data"]["systems"] == []


def test_fs_check_all_all_on_two(capsys):
    code, rep = report(capsys, "fs-check", fixture("two"), fixture("fs_all_all"))
    assert code == 1 and rep["status"] == "fail"
    (fail,) = [c for c in rep["checks"] if not c["passed"]]
    assert fail["law"] == "orthogonality"
    assert fail["counterexample"]["witness"] == ["a", "a"]


# -- each command --------------------------------------------------------------


@pytest.mark.parametrize("name", fx.CORE)
@pytest.mark.parametrize("monad", ["P", "Fr"])
def test_monad_laws_all(capsys, name, monad):
    assert run(capsys, "monad-laws", fixture(name), "--monad", monad)[0] == 0


@pytest.mark.parametrize("cmd", ["check", "cubical", "projection-check", "roundtrip"])
def test_commands_pass_on_split(capsys, cmd):
    code, rep = report(capsys, cmd, fixture("split"))
    assert code == 0 and rep["checks"]


def test_fs_enumerate_counts(capsys):
    for name, n, ns in [("two", 2, 2), ("idem", 2, 2), ("split", 3, 3), ("iso", 1, 2)]:
        assert report(capsys, "fs-enumerate", fixture(name))[1]["data"]["count"] == n
        assert report(capsys, "fs-enumerate", fixture(name), "--strict")[1]["data"]["count"] == ns
    assert report(capsys, "fs-enumerate", fixture("split"), "--strict", "--proper-only")[1]["data"]["count"] == 1


def test_fs_check_variants(capsys, tmp_path):
    ok = write(tmp_path, "ok.json", {"E": ["id0", "id1"], "M": ["a", "id0", "id1"]})
    assert run(capsys, "fs-check", fixture("two"), ok, "--proper")[0] == 0
    strict = write(tmp_path, "s.json", {"E0": ["1"], "M0": ["1", "e"]})
    code, rep = report(capsys, "fs-check", fixture("idem"), strict, "--strict", "--proper")
    assert code == 1
    assert rep["data"]["span"] == {"E": ["1"], "M": ["1", "e"]}
    assert [c["law"] for c in rep["checks"] if not c["passed"]] == ["M consists of monos"]
    assert run(capsys, "fs-check", fixture("two"), ok, "--strict")[0] == 2


def test_arrow_and_freyd_emit(capsys, tmp_path):
    out = tmp_path / "p.json"
    code, rep = report(capsys, "arrow", fixture("two"), "-o", str(out))
    assert code == 0 and rep["data"]["sizes"] == {"objects": 3, "morphisms": 6}
    assert run(capsys, "check", str(out))[0] == 0
    code, rep = report(capsys, "freyd", fixture("split"))
    assert code == 0
    doc = rep["data"]["category"]
    assert any(len(m["representatives"]) > 1 for m in doc["morphisms"])


def test_algebra_pipeline(capsys, tmp_path):
    X = fx.get("iso")
    (fs,) = enumerate_fs(X)
    fs_path = write(tmp_path, "fs.json", fs.as_names())
    choice = all_choices(fs)[-1]
    ch_path = write(tmp_path, "choice.json", choice.as_names())
    code, rep = report(capsys, "fs-to-algebra", fixture("iso"), fs_path, "--choice", ch_path)
    assert code == 0
    assert rep["data"]["algebra"] == algebra_to_names(fs_to_pseudo_algebra(X, fs, choice))
    assert "theta" in rep["data"]["algebra"]
    alg = write(tmp_path, "alg.json", rep["data"]["algebra"])
    assert run(capsys, "algebra-check", fixture("iso"), alg)[0] == 0
    code, rep = report(capsys, "algebra-to-fs", fixture("iso"), alg)
    assert code == 0 and rep["data"]["fs"] == fs.as_names()
    code, rep = report(capsys, "fr-compat", fixture("iso"), alg)
    assert code == 0 and rep["data"]["compatible"] is True


def test_strict_fs_to_algebra(capsys, tmp_path):
    s = write(tmp_path, "s.json", {"E0": ["id0", "id1"], "M0": ["a", "id0", "id1"]})
    code, rep = report(capsys, "fs-to-algebra", fixture("two"), s)
    assert code == 0 and "theta" not in rep["data"]["algebra"]
    alg = write(tmp_path, "alg.json", rep["data"]["algebra"])
    code, rep = report(capsys, "algebra-to-fs", fixture("two"), alg)
    assert rep["data"]["strict_fs"] == {"E0": ["id0", "id1"], "M0": ["a", "id0", "id1"]}


def test_fr_compat_split(capsys, tmp_path):
    X = fx.get("split")
    out = {}
    for fs in enumerate_fs(X):
        alg = write(tmp_path, "a.json", algebra_to_names(fs_to_pseudo_algebra(X, fs)))
        code, rep = report(capsys, "fr-compat", fixture("split"), alg)
        assert code == 0
        out[tuple(fs.as_names()["E"])] = rep["data"]["compatible"]
        if rep["data"]["compatible"]:
            fr = write(tmp_path, "fr.json", rep["data"]["fr_algebra"])
            assert run(capsys, "algebra-check", fixture("split"), fr)[0] == 0
    assert sorted(out.values()) == [False, False, True]


def test_broken_algebra_exits_1(capsys, tmp_path):
    X = fx.get("two")
    doc = algebra_to_names(fs_to_pseudo_algebra(X, enumerate_fs(X)[0]))
    key = "(a|id1):a->id1"
    doc["on_morphisms"][key] = "id1" if doc["on_morphisms"][key] != "id1" else "a"
    alg = write(tmp_path, "bad.json", doc)
    code, rep = report(capsys, "algebra-check", fixture("two"), alg)
    assert code == 1
    assert any(c["counterexample"] for c in rep["checks"] if not c["passed"])
    assert run(capsys, "algebra-to-fs", fixture("two"), alg)[0] == 1


# -- errors ----------------------------------------------------------------------


def test_input_errors_exit_2(capsys, tmp_path):
    bad = write(tmp_path, "bad.json", {"objects": ["A"], "morphisms": [{"name": "i", "dom": "A", "cod": "B"}],
                                       "identities": {}, "composition": []})
    code, out, err = run(capsys, "check", bad)
    assert code == 2 and out == ""
    assert "morphisms[0]: unknown object 'B'" in err
    assert run(capsys, "check", str(tmp_path / "missing.json"))[0] == 2
    fs = write(tmp_path, "fs.json", {"E": ["zz"], "M": []})
    code, _, err = run(capsys, "fs-check", fixture("two"), fs)
    assert code == 2 and "E[0]: unknown morphism 'zz'" in err
    alg = write(tmp_path, "alg.json", {"monad": "Q", "on_objects": {}, "on_morphisms": {}})
    assert run(capsys, "algebra-check", fixture("two"), alg)[0] == 2


def test_check_reports_law_violations(capsys, tmp_path):
    doc = json.loads((FIXTURE_DIR / "split.json").read_text())
    doc["composition"] = [c for c in doc["composition"] if c[:2] != ["e", "e"]] + [["e", "e", "idA"]]
    path = write(tmp_path, "broken.json", doc)
    code, rep = report(capsys, "check", path)
    assert code == 1
    assert rep["checks"][0]["law"] == "associativity"
    # every other command refuses the file
    assert run(capsys, "monad-laws", path)[0] == 2


def test_size_guard_exit_3(capsys, monkeypatch):
    code, out, err = run(capsys, "cubical", fixture("split"), "--size-guard", "3")
    assert code == 3 and "size guard" in err and out == ""
    monkeypatch.setenv("FACTORIAD_SIZE_GUARD", "cube=3")
    assert run(capsys, "cubical", fixture("split"))[0] == 3
    assert run(capsys, "cubical", fixture("split"), "--size-guard", "cube=12")[0] == 0
    assert run(capsys, "cubical", fixture("split"), "--size-guard", "bogus=1")[0] == 2


def test_pretty_flag_either_side(capsys):
    a = run(capsys, "--pretty", "check", fixture("two"))[1]
    b = run(capsys, "check", fixture("two"), "--pretty")[1]
    assert a == b and a.startswith("check: PASS")


# -- determinism and goldens ------------------------------------------------------

COMMANDS = [
    ["check", "two"],
    ["arrow", "two"],
    ["freyd", "split"],
    ["monad-laws", "split", "--monad", "Fr"],
    ["cubical", "two"],
    ["fs-enumerate", "split"],
    ["fs-enumerate", "iso", "--strict"],
    ["projection-check", "idem"],
    ["roundtrip", "idem"],
]


def _argv(case):
    return [case[0], fixture(case[1]), *case[2:]]


@pytest.mark.parametrize("case", COMMANDS, ids=lambda s: "-".join(s))
def test_golden(capsys, case):
    _, out, _ = run(capsys, *_argv(case))
    golden = GOLDEN / ("_".join(s.strip("-") for s in case) + ".json")
    # reports carry input digests, never paths, so goldens are portable
    assert out == golden.read_text()


@pytest.mark.parametrize("case", COMMANDS + [["fs-check", "two", "fs_all_all"]], ids=lambda s: "-".join(s))
def test_byte_reproducible_across_processes(case):
    argv = [sys.executable, "-m", "factoriad.cli", case[0], fixture(case[1])]
    argv += [fixture(a) if a == "fs_all_all" else a for a in case[2:]]
    outs = {subprocess.run(argv, capture_output=True).stdout for _ in range(2)}
    assert len(outs) == 1


def test_console_script():
    import shutil

    exe = shutil.which("factoriad")
    if exe is None:
        pytest.skip("package not installed")
    res = subprocess.run([exe, "fs-enumerate", fixture("idem"), "--proper-only"], capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout)["data"]["systems"] == []
