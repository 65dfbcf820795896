"""The compiled and pure-Python kernels must agree on every input."""

import numpy as np
import pytest
from hypothesis import given, settings

from factoriad import _pykernels, kernels
from factoriad import fixtures as fx
from factoriad.arrowmonad import P, check_monad_laws
from factoriad.fincat import FinCategory, validate_category
from factoriad.freyd import Fr
from strategies import small_categories

ck = pytest.importorskip("factoriad._ckernels")
NAMES = ["empty", "point", *fx.CORE, *fx.EXTRA]


def _fresh(name):
    return getattr(fx, name)()


def _squares(mod, C):
    s, t, a, b = (np.asarray(v) for v in mod.commuting_squares(*C.kernel_args))
    order = np.lexsort((b, a, t, s))
    return [v[order].tolist() for v in (s, t, a, b)]


def _assert_square_parity(C):
    assert _squares(ck, C) == _squares(_pykernels, C)
    assert ck.associativity_violation(*C.kernel_args) == _pykernels.associativity_violation(*C.kernel_args)


def test_backend_names():
    assert ck.BACKEND == "cython"
    assert _pykernels.BACKEND == "python"
    assert kernels.BACKEND in ("cython", "python")


@pytest.mark.parametrize("name", NAMES)
def test_commuting_squares_and_associativity(name):
    _assert_square_parity(_fresh(name))


@settings(max_examples=40, deadline=None)
@given(small_categories())
def test_parity_on_random_categories(C):
    _assert_square_parity(C)


@pytest.mark.parametrize("name", NAMES)
def test_square_composition(name, monkeypatch):
    tables = []
    for mod in (ck, _pykernels):
        for fn in ("commuting_squares", "square_composition"):
            monkeypatch.setattr(kernels, fn, getattr(mod, fn))
        X = _fresh(name)
        from factoriad.arrowmonad import arrow_category
        tables.append(np.asarray(arrow_category(X).cat.comp).tolist())
    assert tables[0] == tables[1]


def test_associativity_hit_agrees():
    comp = {("p", "s"): "idB", ("s", "p"): "e", ("e", "e"): "idA", ("p", "e"): "p", ("e", "s"): "s"}
    mors = [("idA", "A", "A"), ("idB", "B", "B"), ("p", "A", "B"), ("s", "B", "A"), ("e", "A", "A")]
    bad = FinCategory.from_tables(["A", "B"], mors, {"A": "idA", "B": "idB"}, comp, check=False)
    hit = ck.associativity_violation(*bad.kernel_args)
    assert hit is not None
    assert hit == _pykernels.associativity_violation(*bad.kernel_args)


# P on split scans ~7e7 squares; in pure Python that belongs in the benchmark
@pytest.mark.parametrize(
    "name,monad",
    [("two", P), ("idem", P), ("pair", P), ("two", Fr), ("idem", Fr), ("split", Fr), ("pair", Fr)],
    ids=["P-two", "P-idem", "P-pair", "Fr-two", "Fr-idem", "Fr-split", "Fr-pair"],
)
def test_monad_scan_parity(name, monad, monkeypatch):
    reports = []
    for mod in (ck, _pykernels):
        monkeypatch.setattr(kernels, "square_scan", mod.square_scan)
        reports.append(check_monad_laws(monad, _fresh(name)).to_json())
    assert reports[0] == reports[1]


def test_scan_violation_parity():
    from factoriad.arrowmonad import arrow_category

    X = fx.two()
    T = arrow_category(X)
    C = T.cat
    rng = np.random.default_rng(7)
    a = np.arange(C.n_mor, dtype=np.int32)
    t = np.arange(C.n_mor, dtype=np.int32)
    b = t.copy()
    t2 = t.copy()
    t2[rng.integers(C.n_mor)] = (t2[0] + 1) % C.n_mor
    args = (*C.kernel_args, a, t, b, a, t2, b, 0, X.dom, X.cod, X.layout.in_ptr, X.layout.pos_out,
            X.layout.pos_in, X.layout.comp_off, X.comp)
    r1, r2 = ck.square_scan(*args), _pykernels.square_scan(*args)
    assert r1[0] == r2[0] and r1[1] == r2[1]
    clean = (*C.kernel_args, a, t, b, a, t, b, 0, *args[-7:])
    assert ck.square_scan(*clean)[1] is None


def test_pure_backend_env(tmp_path):
    import os
    import subprocess
    import sys

    env = dict(os.environ, FACTORIAD_PURE="1")
    out = subprocess.run([sys.executable, "-c", "import factoriad; print(factoriad.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
    assert validate_category(fx.get("split")) == []
