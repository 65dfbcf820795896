import itertools

import pytest
from hypothesis import given, settings

from factoriad import fixtures as fx
from factoriad.arrowmonad import (
    P,
    arrow_category,
    canonical_fs,
    check_cubical_equations,
    check_monad_laws,
    connections,
    eta,
    faces,
    mu,
    strict_factor,
)
from factoriad.errors import SizeGuardError
from factoriad.factsys import is_fs, is_strict_fs, span
from factoriad.fincat import Functor, check_functor, enumerate_functors, validate_category
from strategies import small_categories


def squares_oracle(X):
    out = set()
    for x, y, f1, f2 in itertools.product(range(X.n_mor), repeat=4):
        if X.dom[f1] == X.dom[x] and X.cod[f1] == X.dom[y] and X.dom[f2] == X.cod[x] and X.cod[f2] == X.cod[y]:
            if X.compose(f2, x) == X.compose(y, f1):
                out.add((x, y, f1, f2))
    return out


def square(T, s, t, a, b):
    X = T.base
    return T.find(X.mor(s), X.mor(t), X.mor(a), X.mor(b))


def test_sizes_two_and_idem():
    T = arrow_category(fx.get("two"))
    assert (T.cat.n_obj, T.cat.n_mor) == (3, 6)
    I = arrow_category(fx.get("idem"))
    assert I.cat.n_obj == 2
    e = I.base.mor("e")
    assert len(I.cat.hom(e, e)) == 4
    E = arrow_category(fx.empty())
    assert (E.cat.n_obj, E.cat.n_mor) == (0, 0)


def test_squares_match_oracle(named):
    _, X = named
    T = arrow_category(X)
    got = set(zip(T.src.tolist(), T.tgt.tolist(), T.top.tolist(), T.bot.tolist()))
    assert got == squares_oracle(X)
    assert validate_category(T.cat) == []


@settings(max_examples=25, deadline=None)
@given(small_categories(max_size=2))
def test_random_squares_match_oracle(X):
    T = arrow_category(X)
    assert len(T.src) == len(squares_oracle(X))
    assert validate_category(T.cat) == []


def test_composition_is_pairwise(named):
    _, X = named
    T = arrow_category(X)
    C = T.cat
    g, f, gf = C.composable_pairs
    assert (T.top[gf] == X.compose_many(T.top[g], T.top[f])).all()
    assert (T.bot[gf] == X.compose_many(T.bot[g], T.bot[f])).all()


def test_naming_and_ordering():
    T = arrow_category(fx.get("two"))
    assert T.cat.morphisms[square(T, "a", "id1", "a", "id1")] == "(a|id1):a->id1"
    keys = list(zip(T.src.tolist(), T.tgt.tolist(), T.top.tolist(), T.bot.tolist()))
    assert keys == sorted(keys)


def test_eta_examples():
    X = fx.get("two")
    T = arrow_category(X)
    e = eta(X)
    a = X.mor("a")
    assert e.on_morphisms[a] == square(T, "id0", "id1", "a", "a")
    assert e.on_objects.tolist() == X.identity.tolist()
    S = fx.get("split")
    TS = arrow_category(S)
    assert eta(S).on_morphisms[S.mor("p")] == square(TS, "idA", "idB", "p", "p")


def test_mu_on_objects_is_diagonal():
    X = fx.get("two")
    T = arrow_category(X)
    xi = square(T, "a", "id1", "a", "id1")
    assert mu(X).on_objects[xi] == X.mor("a")
    S = fx.get("split")
    TS = arrow_category(S)
    xi = square(TS, "p", "p", "e", "idB")
    assert mu(S).on_objects[xi] == S.mor("p")


def test_unit_and_mult_are_functors(named):
    _, X = named
    assert check_functor(eta(X))
    assert check_functor(mu(X))
    m_eta = mu(X) @ eta(arrow_category(X).cat)
    assert m_eta == Functor.identity(arrow_category(X).cat)


def test_strict_factor_examples():
    X = fx.get("two")
    T = arrow_category(X)
    f = int(eta(X).on_morphisms[X.mor("a")])
    e, m = strict_factor(T, f)
    assert e == square(T, "id0", "a", "id0", "a")
    assert m == square(T, "a", "id1", "a", "id1")
    S = fx.get("split")
    TS = arrow_category(S)
    f = square(TS, "idB", "e", "s", "s")
    e, m = strict_factor(TS, f)
    assert TS.tgt[e] == S.mor("s")
    assert (TS.top[e], TS.bot[e]) == (S.mor("idB"), S.mor("s"))
    assert (TS.top[m], TS.bot[m]) == (S.mor("s"), S.mor("idA"))


def test_strict_factor_everywhere(named):
    _, X = named
    T = arrow_category(X)
    (E, M), (E0, M0) = canonical_fs(T)
    for f in range(T.cat.n_mor):
        e, m = strict_factor(T, f)
        assert T.cat.compose(m, e) == f
        assert e in E0 and m in M0


def test_canonical_fs(named):
    _, X = named
    T = arrow_category(X)
    (E, M), (E0, M0) = canonical_fs(T)
    assert is_fs(T.cat, E, M)
    assert is_strict_fs(T.cat, E0, M0)
    fs = span(T.cat, E0, M0)
    assert (fs.E, fs.M) == (E, M)
    ids = set(T.cat.identity.tolist())
    assert ids <= E & M


def test_canonical_fs_on_split():
    S = fx.get("split")
    T = arrow_category(S)
    (E, M), _ = canonical_fs(T)
    f = square(T, "idB", "e", "s", "s")
    assert f not in E and f not in M


def test_faces():
    X = fx.get("two")
    dm, dp = faces(X)
    a = X.mor("a")
    assert dm.on_objects[a] == X.obj("0") and dp.on_objects[a] == X.obj("1")
    S = fx.get("split")
    T = arrow_category(S)
    dm, _ = faces(S)
    assert dm.on_morphisms[square(T, "p", "p", "e", "idB")] == S.mor("e")


def test_faces_split_unit(named):
    _, X = named
    for d in faces(X):
        assert check_functor(d)
        assert d @ eta(X) == Functor.identity(X)


def test_connections(named):
    _, X = named
    T = arrow_category(X)
    gm, gp = connections(X)
    for g in (gm, gp):
        assert check_functor(g)
        assert mu(X) @ g == Functor.identity(T.cat)
    for x in range(X.n_mor):
        assert T.cat.compose(int(gm.on_objects[x]), int(gp.on_objects[x])) == eta(X).on_morphisms[x]
    ePX = eta(T.cat)
    for o in range(X.n_obj):
        i = int(X.identity[o])
        assert gp.on_objects[i] == ePX.on_objects[i] == T.cat.identity[i]


def test_connection_example():
    X = fx.get("two")
    T = arrow_category(X)
    T2 = arrow_category(T.cat)
    gm, _ = connections(X)
    g = int(gm.on_objects[X.mor("a")])
    assert T2.base is T.cat
    assert g == square(T, "a", "id1", "a", "id1")


@pytest.mark.parametrize("name", ["empty", "point", *fx.CORE, *fx.EXTRA])
def test_monad_laws_P(name):
    X = fx.get(name) if name in fx.names() else getattr(fx, name)()
    rep = check_monad_laws(P, X)
    assert rep.ok, rep.to_text()
    assert len(rep.checks) == 6


@pytest.mark.parametrize("name", ["empty", "point", *fx.CORE, *fx.EXTRA])
def test_cubical(name):
    X = fx.get(name) if name in fx.names() else getattr(fx, name)()
    rep = check_cubical_equations(X)
    assert rep.ok, rep.to_text()


def test_monad_law_counterexample_is_reported(monkeypatch):
    from factoriad import arrowmonad

    X = fx.two()
    real = arrowmonad.PMonad.mult

    def broken(self, Y):
        F = real(self, Y)
        fm = F.on_morphisms.copy()
        fm[:] = fm[::-1] if Y is X else fm
        return Functor(F.source, F.target, F.on_objects, fm, "mu")

    monkeypatch.setattr(arrowmonad.PMonad, "mult", broken)
    rep = check_monad_laws(P, X)
    assert not rep.ok
    assert all(c.counterexample is not None for c in rep.failures())


def test_size_guard(monkeypatch):
    monkeypatch.setenv("FACTORIAD_SIZE_GUARD", "3")
    with pytest.raises(SizeGuardError):
        check_cubical_equations(fx.get("split"))


def test_P_is_functorial_and_natural():
    for src, dst in [("two", "split"), ("idem", "split"), ("two", "three")]:
        X, Y = fx.get(src), fx.get(dst)
        for F in enumerate_functors(X, Y):
            PF = P.fmap(F)
            assert check_functor(PF)
            assert PF @ eta(X) == eta(Y) @ F
            assert PF @ mu(X) == mu(Y) @ P.fmap(PF)
