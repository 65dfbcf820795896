import itertools

import pytest
from hypothesis import given, settings

from factoriad import fixtures as fx
from factoriad.arrowmonad import arrow_category, canonical_fs, eta, faces
from factoriad.errors import FactorisationError, PreconditionError, SizeGuardError
from factoriad.factsys import (
    FactorisationSystem,
    all_choices,
    candidate_factorisations,
    check_extension,
    choice_from_names,
    comparison_iso,
    default_choice,
    enumerate_fs,
    enumerate_fs_naive,
    enumerate_strict_fs,
    enumerate_strict_fs_naive,
    equivalent_strict,
    extend_functor,
    extend_functor_proper,
    factor,
    fs_violations,
    is_fs,
    is_proper,
    is_strict_fs,
    preserves_fs,
    span,
    trivial_fs,
)
from factoriad.fincat import Functor, check_functor, enumerate_functors
from factoriad.freyd import eta_prime, freyd_completion, spanned_fs
from strategies import small_categories

COUNTS = {
    # name: (fs, strict fs, proper fs)
    "two": (2, 2, 2),
    "three": (5, 5, 5),
    "idem": (2, 2, 0),
    "split": (3, 3, 1),
    "pair": (4, 4, 4),
    "iso": (1, 2, 1),
    "z2": (1, 2, 1),
}


def ids_of(X):
    return frozenset(X.identity.tolist())


def test_two_fs_examples():
    X = fx.get("two")
    a = X.mor("a")
    isos, every = ids_of(X), frozenset(range(X.n_mor))
    assert is_fs(X, isos, every) and is_fs(X, every, isos)
    v = fs_violations(X, every, every)
    assert [(x.law, x.witness) for x in v] == [("orthogonality", ("a", "a"))]
    assert not is_strict_fs(X, every, every)
    assert is_strict_fs(X, isos, every)
    assert not equivalent_strict(X, (isos, every), (every, isos))
    assert equivalent_strict(X, (isos, every), (isos, every))
    assert a in span(X, isos, every).M


def test_idem_span_and_properness():
    X = fx.get("idem")
    one, e = X.mor("1"), X.mor("e")
    fs = span(X, {one}, {one, e})
    assert fs.E == frozenset({one}) and fs.M == frozenset({one, e})
    assert not is_proper(X, {one}, {one, e})
    assert not is_proper(X, {one, e}, {one})


@pytest.mark.parametrize("name", list(COUNTS))
def test_enumeration_counts(name):
    X = fx.get(name)
    systems = enumerate_fs(X)
    strict = enumerate_strict_fs(X)
    proper = [fs for fs in systems if is_proper(X, fs.E, fs.M)]
    assert (len(systems), len(strict), len(proper)) == COUNTS[name]
    for fs in systems:
        assert is_fs(X, fs.E, fs.M)
        assert fs.E & fs.M == X.isos
    for s in strict:
        assert is_strict_fs(X, s.E0, s.M0)
        fs = span(X, s.E0, s.M0)
        assert any(fs.key() == t.key() for t in systems)


@pytest.mark.parametrize("name", [n for n in COUNTS if fx.get(n).n_mor <= 5] + ["empty", "point"])
def test_pruned_equals_naive(name):
    X = fx.get(name) if name in fx.names() else getattr(fx, name)()
    assert [fs.key() for fs in enumerate_fs(X)] == [fs.key() for fs in enumerate_fs_naive(X)]
    assert [s.key() for s in enumerate_strict_fs(X)] == [s.key() for s in enumerate_strict_fs_naive(X)]


@settings(max_examples=30, deadline=None)
@given(small_categories(max_size=2, max_gens=2))
def test_pruned_equals_naive_random(X):
    if X.n_mor > 5:
        return
    assert [fs.key() for fs in enumerate_fs(X)] == [fs.key() for fs in enumerate_fs_naive(X)]
    assert [s.key() for s in enumerate_strict_fs(X)] == [s.key() for s in enumerate_strict_fs_naive(X)]


@settings(max_examples=30, deadline=None)
@given(small_categories())
def test_trivial_systems_always_fs(X):
    for fs in trivial_fs(X):
        assert is_fs(X, fs.E, fs.M)


def test_size_guard(monkeypatch):
    monkeypatch.setenv("FACTORIAD_SIZE_GUARD", "fs=3")
    with pytest.raises(SizeGuardError):
        enumerate_fs(fx.get("split"))


def test_default_choice_on_two():
    X = fx.get("two")
    a = X.mor("a")
    by_e = {len(fs.E): fs for fs in trivial_fs(X)}
    isos_all, all_isos = by_e[2], by_e[3]
    assert factor(X, default_choice(isos_all), a) == (X.mor("id0"), X.obj("0"), a)
    assert factor(X, default_choice(all_isos), a) == (a, X.obj("1"), X.mor("id1"))
    for f in X.identity.tolist():
        assert factor(X, default_choice(isos_all), f) == (f, X.dom[f], f)


def test_comparison_iso_links_all_factorisations(named):
    _, X = named
    for fs in enumerate_fs(X):
        for f in range(X.n_mor):
            cands = candidate_factorisations(X, fs.E, fs.M, f)
            assert cands
            for f1, f2 in itertools.product(cands, repeat=2):
                w = comparison_iso(X, f, f1, f2)
                assert X.iso_mask[w]
                assert X.compose(w, f1[0]) == f2[0] and X.compose(f2[2], w) == f1[2]
                if f1 == f2:
                    assert X.is_identity[w]


def test_iso_has_several_choices():
    X = fx.get("iso")
    (fs,) = enumerate_fs(X)
    choices = all_choices(fs)
    assert len(choices) == 4
    u = X.mor("u")
    mids = {c.triple(u)[1] for c in choices}
    assert mids == {X.obj("A"), X.obj("B")}


def test_choice_file_roundtrip():
    X = fx.get("iso")
    (fs,) = enumerate_fs(X)
    for c in all_choices(fs):
        assert choice_from_names(fs, c.as_names()) == c
    with pytest.raises(FactorisationError):
        choice_from_names(fs, {"u": {"e": "v", "mid": "A", "m": "u"}})


def test_extension_examples():
    X = fx.get("two")
    isos_all, all_isos = sorted(trivial_fs(X), key=lambda fs: len(fs.E))
    I = Functor.identity(X)
    dm, dp = faces(X)
    G = extend_functor(I, default_choice(isos_all))
    assert G.on_objects.tolist() == dm.on_objects.tolist()
    G = extend_functor(I, default_choice(all_isos))
    assert G.on_objects.tolist() == dp.on_objects.tolist()
    A = fx.get("three")
    F = Functor.from_names(X, A, {"0": "0", "1": "2"}, {"id0": "id0", "id1": "id2", "a": "gf"})
    target = next(fs for fs in enumerate_fs(A) if fs.M == A.isos)
    G = extend_functor(F, default_choice(target))
    assert G.on_objects[X.mor("a")] == A.obj("2")


@pytest.mark.parametrize("name", list(COUNTS))
def test_free_extension(name):
    A = fx.get(name)
    two = fx.get("two")
    E, M = arrow_category(two).canonical_fs()
    for fs in enumerate_fs(A):
        choice = default_choice(fs)
        for F in enumerate_functors(two, A):
            assert check_extension(F, choice) == []
            G = extend_functor(F, choice)
            assert G @ eta(two) == F
            assert preserves_fs(G, (E, M), (fs.E, fs.M)) == []
            if is_proper(A, fs.E, fs.M):
                Gp = extend_functor_proper(F, choice)
                assert check_functor(Gp)
                assert Gp @ freyd_completion(two).projection == G


def test_proper_extension_into_freyd_completion():
    X = fx.get("split")
    Fr = freyd_completion(X)
    fs = spanned_fs(Fr)
    Gp = extend_functor_proper(eta_prime(X), default_choice(fs))
    assert check_functor(Gp)
    E0, M0 = Fr.canonical_strict_fs()
    assert preserves_fs(Gp, (E0, M0), (fs.E, fs.M)) == []


def test_proper_extension_needs_proper_fs():
    X = fx.get("idem")
    fs = enumerate_fs(X)[0]
    with pytest.raises(PreconditionError):
        extend_functor_proper(Functor.identity(X), default_choice(fs))


def test_constant_functor_extends_constantly():
    X, A = fx.get("two"), fx.get("idem")
    F = Functor(X, A, [0, 0], [A.mor("1")] * X.n_mor)
    for fs in enumerate_fs(A):
        G = extend_functor(F, default_choice(fs))
        assert set(G.on_morphisms.tolist()) == {A.mor("1")}


def test_canonical_fs_on_PX_spans(named):
    _, X = named
    T = arrow_category(X)
    (E, M), (E0, M0) = canonical_fs(T)
    fs = span(T.cat, E0, M0)
    assert (fs.E, fs.M) == (E, M)
    assert FactorisationSystem(T.cat, E, M).key() == fs.key()
