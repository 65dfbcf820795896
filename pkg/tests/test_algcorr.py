import numpy as np
import pytest

from factoriad import fixtures as fx
from factoriad.algcorr import (
    AlgebraMorphism,
    PseudoAlgebra,
    StrictAlgebra,
    algebra_from_names,
    algebra_to_fs,
    algebra_to_names,
    check_algebra_morphism,
    check_pseudo_algebra,
    check_strict_algebra,
    check_tau,
    check_two_cell,
    enumerate_strict_algebras,
    fs_functor_morphism,
    fs_to_pseudo_algebra,
    identity_morphism,
    induce_fr_algebra,
    is_r_compatible,
    morphism_coherence_suite,
    proper_correspondence_check,
    proper_strict_fs,
    pseudo_correspondence_check,
    roundtrip_algebra,
    roundtrip_fs,
    strict_algebra_to_strict_fs,
    strict_correspondence_check,
    strict_fs_to_algebra,
    tau,
    tau_transforms,
    correspondence_suite,
)
from factoriad.arrowmonad import P, arrow_category, faces, mu
from factoriad.errors import PreconditionError, SizeGuardError
from factoriad.factsys import all_choices, default_choice, enumerate_fs, enumerate_strict_fs
from factoriad.fincat import Functor, NatTransformation, check_natural
from factoriad.freyd import Fr, freyd_completion

PSEUDO_LAWS = [
    "t is a functor",
    "t . unit = 1",
    "theta components are isos of the right type",
    "theta is natural",
    "theta is the identity on unit images",
    "theta coherence over T^3 X",
]


def face_algebras(X):
    dm, dp = faces(X)
    return StrictAlgebra(X, P, dm), StrictAlgebra(X, P, dp)


# -- strict and pseudo algebra checks ---------------------------------------


def test_faces_are_strict_algebras(named):
    _, X = named
    for a in face_algebras(X):
        assert check_strict_algebra(a).ok
        rep = check_pseudo_algebra(a)
        assert rep.ok and [c.law for c in rep.checks] == PSEUDO_LAWS


def test_corrupted_strict_algebra_is_located():
    X = fx.get("two")
    a, _ = face_algebras(X)
    T = arrow_category(X)
    q = T.find(X.mor("a"), X.mor("id1"), X.mor("a"), X.mor("id1"))
    fm = a.t.on_morphisms.copy()
    fm[q] = X.mor("a")
    q2 = T.find(X.mor("id0"), X.mor("a"), X.mor("id0"), X.mor("a"))
    fm[q2] = X.mor("a")
    bad = StrictAlgebra(X, P, Functor(T.cat, X, a.t.on_objects, fm, "t"))
    rep = check_strict_algebra(bad)
    assert not rep.ok
    (fail,) = rep.failures()
    assert fail.counterexample is not None


def test_strict_law_violation_has_counterexample():
    # unit-respecting functors that are not algebras
    X = fx.get("idem")
    found = False
    T = arrow_category(X)
    from factoriad.fincat import search_functors

    u = P.unit(X)
    fixed_obj = {int(X.identity[o]): o for o in range(X.n_obj)}
    fixed_mor = {int(u.on_morphisms[f]): f for f in range(X.n_mor)}
    for t in search_functors(T.cat, X, fixed_obj, fixed_mor):
        rep = check_strict_algebra(StrictAlgebra(X, P, t))
        if not rep.ok:
            (fail,) = rep.failures()
            assert fail.law == "t . T(t) = t . mult" and isinstance(fail.counterexample, str)
            found = True
    assert found


def test_pseudo_algebras_from_split():
    X = fx.get("split")
    for fs in enumerate_fs(X):
        rep = check_pseudo_algebra(fs_to_pseudo_algebra(X, fs))
        assert rep.ok, rep.to_text()
        assert [c.law for c in rep.checks] == PSEUDO_LAWS


def test_nontrivial_theta_on_iso():
    X = fx.get("iso")
    (fs,) = enumerate_fs(X)
    algs = [fs_to_pseudo_algebra(X, fs, c) for c in all_choices(fs)]
    assert any(not a.is_strict for a in algs)
    for a in algs:
        assert check_pseudo_algebra(a).ok


def test_theta_corruption_breaks_unit_coherence():
    X = fx.get("z2")
    (fs,) = enumerate_fs(X)
    a = fs_to_pseudo_algebra(X, fs)
    C = a.T.cat
    th = a.theta.copy()
    th[C.identity[0]] = X.mor("r")
    rep = check_pseudo_algebra(PseudoAlgebra(X, P, a.t, th))
    failed = {c.law: c.counterexample for c in rep.failures()}
    assert "theta is the identity on unit images" in failed
    assert failed["theta is the identity on unit images"] == C.objects[0]


def test_theta_type_error_aborts():
    X = fx.get("iso")
    (fs,) = enumerate_fs(X)
    a = fs_to_pseudo_algebra(X, fs)
    th = a.theta.copy()
    th[0] = X.mor("u") if X.dom[X.mor("u")] != X.dom[th[0]] else X.mor("v")
    rep = check_pseudo_algebra(PseudoAlgebra(X, P, a.t, th))
    assert [c.law for c in rep.failures()] == ["theta components are isos of the right type"]
    assert rep.checks[-1].law == "theta components are isos of the right type"


# -- tau ----------------------------------------------------------------------


def test_tau_on_faces(named):
    _, X = named
    dm, dp = face_algebras(X)
    x = np.arange(X.n_mor)
    lo, up = tau(dm)
    assert X.is_identity[lo].all() and (up == x).all()
    lo, up = tau(dp)
    assert (lo == x).all() and X.is_identity[up].all()


def test_tau_laws_for_every_fs_algebra(named):
    _, X = named
    for fs in enumerate_fs(X):
        a = fs_to_pseudo_algebra(X, fs)
        rep = check_tau(a)
        assert rep.ok, rep.to_text()
        for alpha in tau_transforms(a):
            assert check_natural(alpha)
        lo, up = tau(a)
        ids = X.identity
        assert (lo[ids] == ids).all() and (up[ids] == ids).all()


# -- the two directions --------------------------------------------------------


def test_algebra_to_fs_of_faces(named):
    _, X = named
    dm, dp = face_algebras(X)
    fs = algebra_to_fs(dm)
    assert fs.E == X.isos and fs.M == frozenset(range(X.n_mor))
    fs = algebra_to_fs(dp)
    assert fs.E == frozenset(range(X.n_mor)) and fs.M == X.isos


def test_algebra_to_fs_ignores_theta():
    X = fx.get("iso")
    (fs,) = enumerate_fs(X)
    a = fs_to_pseudo_algebra(X, fs, all_choices(fs)[0])
    junk = np.zeros_like(a.theta)
    b = PseudoAlgebra(X, P, a.t, junk)
    assert algebra_to_fs(a).key() == algebra_to_fs(b).key()


def test_strict_fs_on_two_give_faces():
    X = fx.get("two")
    dm, dp = face_algebras(X)
    ts = {tuple(strict_fs_to_algebra(X, s).t.on_morphisms.tolist()) for s in enumerate_strict_fs(X)}
    assert ts == {tuple(dm.t.on_morphisms.tolist()), tuple(dp.t.on_morphisms.tolist())}


def test_canonical_strict_fs_on_PX_gives_mu():
    for name in ("two", "idem"):
        X = fx.get(name)
        T = arrow_category(X)
        E0, M0 = T.canonical_strict_fs()
        from factoriad.factsys import StrictFactorisationSystem

        a = strict_fs_to_algebra(T.cat, StrictFactorisationSystem(T.cat, E0, M0))
        assert a.t == mu(X)
        if name == "two":  # the strict law needs P^3 X materialized
            assert check_strict_algebra(a).ok


@pytest.mark.parametrize("name", ["two", "idem", "split", "three", "pair", "iso", "z2"])
def test_roundtrip_fs(name):
    X = fx.get(name)
    for fs in enumerate_fs(X):
        for c in all_choices(fs, 16) or [default_choice(fs)]:
            assert roundtrip_fs(X, fs, c)


@pytest.mark.parametrize("name", ["two", "idem"])
def test_strict_roundtrip(name):
    X = fx.get(name)
    for s in enumerate_strict_fs(X):
        assert strict_algebra_to_strict_fs(strict_fs_to_algebra(X, s)).key() == s.key()
    for a in enumerate_strict_algebras(X, P):
        again = strict_fs_to_algebra(X, strict_algebra_to_strict_fs(a))
        assert again.t == a.t


def test_strict_algebra_counts():
    assert len(enumerate_strict_algebras(fx.get("two"), P)) == 2
    assert len(enumerate_strict_algebras(fx.get("idem"), P)) == 2
    assert len(enumerate_strict_algebras(fx.get("idem"), Fr)) == 0
    assert len(proper_strict_fs(fx.get("idem"))) == 0
    for name in ("two", "three", "split", "pair", "iso"):
        X = fx.get(name)
        assert len(enumerate_strict_algebras(X, Fr)) == len(proper_strict_fs(X))
        assert len(enumerate_strict_algebras(X, P)) == len(enumerate_strict_fs(X))


def test_strict_algebra_guard(monkeypatch):
    monkeypatch.setenv("FACTORIAD_SIZE_GUARD", "algebras=2")
    with pytest.raises(SizeGuardError):
        enumerate_strict_algebras(fx.get("two"), P)


# -- morphisms ----------------------------------------------------------------


def test_identity_morphism(named):
    _, X = named
    for fs in enumerate_fs(X):
        a = fs_to_pseudo_algebra(X, fs)
        assert check_algebra_morphism(identity_morphism(a)).ok
        m = roundtrip_algebra(a, a)
        assert X.is_identity[m.phi].all()


def test_roundtrip_algebra_between_choices():
    X = fx.get("iso")
    (fs,) = enumerate_fs(X)
    algs = [fs_to_pseudo_algebra(X, fs, c) for c in all_choices(fs)]
    for a in algs:
        for b in algs:
            m = roundtrip_algebra(a, b)
            assert check_algebra_morphism(m).ok
            assert X.iso_mask[m.phi].all()
    assert any(not X.is_identity[roundtrip_algebra(algs[0], b).phi].all() for b in algs)


def test_roundtrip_algebra_with_face():
    for name in ("two", "split"):
        X = fx.get(name)
        dm, _ = face_algebras(X)
        isos_all = next(fs for fs in enumerate_fs(X) if fs.E == X.isos)
        b = fs_to_pseudo_algebra(X, isos_all)
        assert check_algebra_morphism(roundtrip_algebra(dm, b)).ok


def test_roundtrip_algebra_needs_same_fs():
    X = fx.get("two")
    dm, dp = face_algebras(X)
    with pytest.raises(PreconditionError):
        roundtrip_algebra(dm, dp)


def test_broken_phi_is_caught():
    X = fx.get("iso")
    (fs,) = enumerate_fs(X)
    a = fs_to_pseudo_algebra(X, fs)
    m = identity_morphism(a)
    phi = m.phi.copy()
    phi[X.mor("u")] = X.mor("v")
    rep = check_algebra_morphism(AlgebraMorphism(a, a, m.F, phi))
    assert not rep.ok


def test_morphisms_and_two_cells_two_to_split():
    rep = morphism_coherence_suite(fx.get("two"), fx.get("split"))
    assert rep.ok, rep.to_text()
    assert all(c.checked for c in rep.checks)


def test_two_cell_identity():
    X, Y = fx.get("two"), fx.get("split")
    sx, sy = enumerate_fs(X)[0], enumerate_fs(Y)[0]
    a, b = fs_to_pseudo_algebra(X, sx), fs_to_pseudo_algebra(Y, sy)
    from factoriad.fincat import enumerate_functors

    n = 0
    for F in enumerate_functors(X, Y):
        if all(int(F.on_morphisms[e]) in sy.E for e in sx.E) and all(int(F.on_morphisms[m]) in sy.M for m in sx.M):
            m = fs_functor_morphism(F, a, b)
            assert check_two_cell(NatTransformation.identity(F), m, m)
            n += 1
    assert n


# -- Freyd compatibility -----------------------------------------------------


def test_r_compatibility_examples():
    S = fx.get("split")
    dm, _ = face_algebras(S)
    assert not is_r_compatible(dm)
    for name in ("two", "three"):
        X = fx.get(name)
        for fs in enumerate_fs(X):
            assert is_r_compatible(fs_to_pseudo_algebra(X, fs))


def test_induced_fr_algebra():
    X = fx.get("split")
    proper = [fs for fs in enumerate_fs(X) if fs.E != X.isos and fs.M != X.isos]
    (fs,) = proper
    a = fs_to_pseudo_algebra(X, fs)
    fr = induce_fr_algebra(a)
    assert fr.monad is Fr
    assert check_pseudo_algebra(fr).ok
    assert fr.t @ freyd_completion(X).projection == a.t
    with pytest.raises(PreconditionError):
        induce_fr_algebra(face_algebras(X)[0])


@pytest.mark.parametrize("name", ["two", "idem", "split"])
def test_proper_correspondence(name):
    rep = proper_correspondence_check(fx.get(name))
    assert rep.ok, rep.to_text()


def test_proper_counts():
    counts = proper_correspondence_check(fx.get("idem")).data["counts"]
    assert counts == {"fs": 2, "proper": 0, "R-compatible": 0}
    counts = proper_correspondence_check(fx.get("two")).data["counts"]
    assert counts == {"fs": 2, "proper": 2, "R-compatible": 2}


def test_correspondence_suites(named):
    _, X = named
    for rep in (pseudo_correspondence_check(X), strict_correspondence_check(X), correspondence_suite(X)):
        assert rep.ok, rep.to_text()


# -- files --------------------------------------------------------------------


def test_algebra_names_roundtrip():
    for name in ("iso", "split"):
        X = fx.get(name)
        for fs in enumerate_fs(X):
            a = fs_to_pseudo_algebra(X, fs)
            b = algebra_from_names(X, algebra_to_names(a))
            assert b.t == a.t and np.array_equal(b.theta, a.theta)
            if is_r_compatible(a):
                fr = induce_fr_algebra(a)
                c = algebra_from_names(X, algebra_to_names(fr))
                assert c.monad is Fr and c.t == fr.t
