"""Strict and pseudo algebras for P and Fr, and their correspondence with
factorisation systems.

A pseudo algebra on X is a functor ``t: TX -> X`` with ``t o unit = 1`` on the
nose, plus an iso ``theta: t o T(t) => t o mult`` stored as a table indexed by
the objects of T^2 X (the morphisms of TX).  Strict algebras have identity
components.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from . import config
from .arrowmonad import P, Monad, SquareCat, connections, faces
from .errors import ConsistencyError, FactorisationError, PreconditionError
from .factsys import (
    FactorisationChoice,
    FactorisationSystem,
    StrictFactorisationSystem,
    all_choices,
    comparison_iso,
    default_choice,
    enumerate_fs,
    enumerate_strict_fs,
    extend_functor,
    fs_violations,
    is_proper,
    make_choice,
    span,
    strict_factorisation,
    strict_fs_violations,
)
from .fincat import (
    I32,
    FinCategory,
    Functor,
    NatTransformation,
    check_functor,
    enumerate_functors,
    enumerate_natural_transformations,
    functor_violations,
    natural_violations,
    search_functors,
)
from .freyd import Fr, freyd_completion
from .report import Report


@dataclass(eq=False)
class PseudoAlgebra:
    base: FinCategory
    monad: Monad
    t: Functor
    theta: np.ndarray = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        T = self.monad.apply(self.base)
        if self.t.source is not T.cat or self.t.target is not self.base:
            raise PreconditionError("structure functor must go from TX to X")
        if self.theta is None:
            # identity at t(T(t)(xi)) for every object xi of T^2 X
            self.theta = self.base.identity[self.t.on_objects[self.t.on_morphisms]]
        self.theta = np.asarray(self.theta, dtype=I32)
        if len(self.theta) != T.cat.n_mor:
            raise PreconditionError("theta must have one component per morphism of TX")

    @property
    def T(self) -> SquareCat:
        return self.monad.apply(self.base)

    @property
    def is_strict(self) -> bool:
        return bool(self.base.is_identity[self.theta].all()) if len(self.theta) else True

    def theta_names(self) -> dict[str, str]:
        C = self.T.cat
        return {C.morphisms[i]: self.base.morphisms[v] for i, v in enumerate(self.theta)}


def StrictAlgebra(base: FinCategory, monad: Monad, t: Functor) -> PseudoAlgebra:
    """A pseudo algebra whose coherence iso is the identity."""
    return PseudoAlgebra(base, monad, t, None)


def algebra_from_names(X: FinCategory, doc: dict) -> PseudoAlgebra:
    """Algebra file contents; names follow the generated naming of TX and T^2 X."""
    from .io import InputError

    monad = {"P": P, "Fr": Fr}.get(doc.get("monad"))
    if monad is None:
        raise InputError("$.monad: expected 'P' or 'Fr'")
    T = monad.apply(X)
    C = T.cat
    for key in ("on_objects", "on_morphisms"):
        if not isinstance(doc.get(key), dict):
            raise InputError(f"$.{key}: expected an object")
    try:
        t = Functor.from_names(C, X, doc["on_objects"], doc["on_morphisms"], "t")
    except KeyError as exc:
        raise InputError(f"$: structure map misses {exc.args[0]!r}") from None
    except Exception as exc:
        raise InputError(f"$: {exc}") from None
    theta = None
    if "theta" in doc:
        raw = doc["theta"]
        if not isinstance(raw, dict):
            raise InputError("$.theta: expected an object")
        try:
            theta = [X.mor(raw[name]) for name in C.morphisms]
        except KeyError as exc:
            raise InputError(f"$.theta: missing component {exc.args[0]!r}") from None
        except Exception as exc:
            raise InputError(f"$.theta: {exc}") from None
    return PseudoAlgebra(X, monad, t, theta)


def algebra_to_names(a: PseudoAlgebra) -> dict:
    objs, mors = a.t.as_names()
    doc = {"monad": a.monad.name, "on_objects": objs, "on_morphisms": mors}
    if not a.is_strict:
        doc["theta"] = a.theta_names()
    return doc


# -- conditions -------------------------------------------------------------


def _first(names, mask) -> str | None:
    bad = np.flatnonzero(mask)
    return None if len(bad) == 0 else names[int(bad[0])]


def _unit_law(rep: Report, a: PseudoAlgebra, grp: str) -> bool:
    X = a.base
    tu = a.t @ a.monad.unit(X)
    where = _first(X.objects, tu.on_objects != np.arange(X.n_obj))
    if where is None:
        where = _first(X.morphisms, tu.on_morphisms != np.arange(X.n_mor))
    return rep.add("t . unit = 1", grp, where is None, where, X.n_obj + X.n_mor)


def check_strict_algebra(a: PseudoAlgebra) -> Report:
    X = a.base
    rep = Report()
    grp = f"strict {a.monad.name}-algebra"
    T1 = a.T
    T2 = a.monad.apply(T1.cat)
    problems = functor_violations(a.t)
    if not rep.add("t is a functor", grp, not problems, problems[:3], T1.cat.n_mor):
        return rep
    _unit_law(rep, a, grp)
    lhs = a.t @ a.monad.fmap(a.t)
    rhs = a.t @ a.monad.mult(X)
    where = _first(T2.cat.objects, lhs.on_objects != rhs.on_objects)
    if where is None:
        where = _first(T2.cat.morphisms, lhs.on_morphisms != rhs.on_morphisms)
    rep.add("t . T(t) = t . mult", grp, where is None, where, T2.cat.n_obj + T2.cat.n_mor)
    return rep


def check_pseudo_algebra(a: PseudoAlgebra) -> Report:
    """Each coherence condition reported on its own."""
    X = a.base
    config.require("cube", X.n_mor, "pseudo algebra check")
    rep = Report()
    grp = f"pseudo {a.monad.name}-algebra"
    M = a.monad
    T1 = a.T
    T2 = M.apply(T1.cat)
    C = T1.cat
    problems = functor_violations(a.t)
    if not rep.add("t is a functor", grp, not problems, problems[:3], C.n_mor):
        return rep
    _unit_law(rep, a, grp)
    t, th = a.t, a.theta
    tfo, tfm = t.on_objects, t.on_morphisms
    Tt = M.fmap(t)
    mu = M.mult(X)

    # typing and invertibility
    src = tfo[tfm]                  # t(T(t)(xi))
    tgt = tfo[T1.diag]              # t(mult(xi))
    typed = (X.dom[th] == src) & (X.cod[th] == tgt)
    where = _first(C.morphisms, ~(typed & X.iso_mask[th]))
    rep.add("theta components are isos of the right type", grp, where is None, where, C.n_mor)
    if where is not None:
        return rep
    # naturality over the morphisms of T^2 X
    lhs = X.compose_many(tfm[mu.on_morphisms], th[T2.src])
    rhs = X.compose_many(th[T2.tgt], tfm[Tt.on_morphisms])
    where = _first(T2.cat.morphisms, lhs != rhs)
    rep.add("theta is natural", grp, where is None, where, T2.cat.n_mor)

    # theta is trivial along T(unit) and along unit at TX
    ids = X.identity[tfo]
    bad1 = th[M.unit(X).on_morphisms] != ids
    bad2 = th[C.identity] != ids
    where = _first(C.objects, bad1 | bad2)
    rep.add("theta is the identity on unit images", grp, where is None, where, 2 * C.n_obj)

    # associativity coherence at each object of T^3 X
    th_src = th[T2.src]
    th_tgt = th[T2.tgt]
    s = tfm[Tt.on_morphisms]
    d = tfm[mu.on_morphisms]
    sq = T1.find_many(s, d, th_src, th_tgt)
    if (sq < 0).any():
        where = T2.cat.morphisms[int(np.flatnonzero(sq < 0)[0])]
        rep.add("theta coherence over T^3 X", grp, False, {"no square at": where}, T2.cat.n_mor)
        return rep
    lhs = X.compose_many(th[mu.on_morphisms], tfm[sq])
    rhs = X.compose_many(th[T2.diag], th[Tt.on_morphisms])
    where = _first(T2.cat.morphisms, lhs != rhs)
    rep.add("theta coherence over T^3 X", grp, where is None, where, T2.cat.n_mor)
    return rep


# -- tau and the algebra -> fs direction ------------------------------------------


def tau(a: PseudoAlgebra) -> tuple[np.ndarray, np.ndarray]:
    """Per base morphism x: tau-(x) = t(1, x) and tau+(x) = t(x, 1)."""
    X = a.base
    T = a.T
    x = np.arange(X.n_mor)
    lower = T.find_many(X.identity[X.dom], x, X.identity[X.dom], x)
    upper = T.find_many(x, X.identity[X.cod], x, X.identity[X.cod])
    if (lower < 0).any() or (upper < 0).any():
        raise ConsistencyError("connection squares missing")
    return a.t.on_morphisms[lower], a.t.on_morphisms[upper]


def tau_transforms(a: PseudoAlgebra) -> tuple[NatTransformation, NatTransformation]:
    """tau-: d- => t and tau+: t => d+, as transformations of functors PX -> X."""
    if a.monad is not P:
        raise PreconditionError("the faces are functors on PX only")
    lo, up = tau(a)
    d_minus, d_plus = faces(a.base)
    return NatTransformation(d_minus, a.t, lo, "tau-"), NatTransformation(a.t, d_plus, up, "tau+")


def check_tau(a: PseudoAlgebra) -> Report:
    X = a.base
    rep = Report()
    grp = "t-factorisation"
    lo, up = tau(a)
    comp = X.compose_many(up, lo)
    where = _first(X.morphisms, comp != np.arange(X.n_mor))
    rep.add("tau+ . tau- = x", grp, where is None, where, X.n_mor)
    if a.monad is P:
        tm, tp = tau_transforms(a)
        for alpha in (tm, tp):
            problems = natural_violations(alpha)
            rep.add(f"{alpha.name} is natural", grp, not problems, problems[:1], X.n_mor)
        gm, gp = connections(X)
        Pt = P.fmap(a.t)
        for name, g, comp_ in (("tau- = Pt . g+", gp, lo), ("tau+ = Pt . g-", gm, up)):
            h = Pt @ g
            ok = np.array_equal(h.on_objects, comp_)
            # on morphisms, Pt.g+ sends f to the naturality square (f', t f) of tau-
            T = a.T
            if name.startswith("tau-"):
                expect = T.find_many(lo[T.src], lo[T.tgt], T.top, a.t.on_morphisms)
            else:
                expect = T.find_many(up[T.src], up[T.tgt], a.t.on_morphisms, T.bot)
            ok = ok and np.array_equal(h.on_morphisms, expect)
            rep.add(name, grp, ok, None, T.cat.n_obj + T.cat.n_mor)
    return rep


def algebra_to_fs(a: PseudoAlgebra) -> FactorisationSystem:
    """E: tau+ iso; M: tau- iso.  Theta is never consulted."""
    X = a.base
    _require_unitary(a)
    lo, up = tau(a)
    fs = FactorisationSystem(
        X,
        frozenset(np.flatnonzero(X.iso_mask[up]).tolist()),
        frozenset(np.flatnonzero(X.iso_mask[lo]).tolist()),
    )
    problems = fs_violations(X, fs.E, fs.M, first_only=True)
    if problems:
        raise FactorisationError(f"induced classes are not an fs: {problems[0].law} {problems[0].witness}")
    return fs


def strict_algebra_to_strict_fs(a: PseudoAlgebra) -> StrictFactorisationSystem:
    X = a.base
    _require_unitary(a)
    lo, up = tau(a)
    s = StrictFactorisationSystem(
        X,
        frozenset(np.flatnonzero(X.is_identity[up]).tolist()),
        frozenset(np.flatnonzero(X.is_identity[lo]).tolist()),
    )
    problems = strict_fs_violations(X, s.E0, s.M0)
    if problems:
        raise FactorisationError(f"induced classes are not a strict fs: {problems[0].law} {problems[0].witness}")
    return s


def _require_unitary(a: PseudoAlgebra) -> None:
    rep = Report()
    if not check_functor(a.t) or not _unit_law(rep, a, ""):
        raise PreconditionError("structure map is not a unitary functor")


# -- fs -> algebra ----------------------------------------------------------------


def fs_to_pseudo_algebra(X: FinCategory, fs: FactorisationSystem, choice: FactorisationChoice | None = None) -> PseudoAlgebra:
    """t from the chosen factorisations; theta the comparison isos on diagonals."""
    if choice is None:
        choice = default_choice(fs)
    if choice.fs.base is not X:
        raise PreconditionError("choice belongs to a different category")
    t = extend_functor(Functor.identity(X), choice)
    t.name = "t"
    T = P.apply(X)
    C = T.cat
    theta = np.empty(C.n_mor, dtype=I32)
    for xi in range(C.n_mor):
        x, y, d = int(T.src[xi]), int(T.tgt[xi]), int(T.diag[xi])
        z = int(t.on_morphisms[xi])
        x1, _, _ = choice.triple(x)
        _, _, y2 = choice.triple(y)
        z1, zmid, z2 = choice.triple(z)
        outer = (X.compose(z1, x1), zmid, X.compose(y2, z2))
        theta[xi] = comparison_iso(X, d, outer, choice.triple(d))
    return PseudoAlgebra(X, P, t, theta)


def strict_fs_to_algebra(X: FinCategory, s: StrictFactorisationSystem) -> PseudoAlgebra:
    """The strict algebra of a strict fs; its coherence isos must all be identities."""
    fs = span(X, s.E0, s.M0)
    e, m = strict_factorisation(X, s.E0, s.M0)
    choice = make_choice(fs, {f: (int(e[f]), int(X.cod[e[f]]), int(m[f])) for f in range(X.n_mor)})
    a = fs_to_pseudo_algebra(X, fs, choice)
    if not a.is_strict:
        raise ConsistencyError("strict fs produced a non-identity coherence iso")
    return PseudoAlgebra(X, P, a.t, None)


def roundtrip_fs(X: FinCategory, fs: FactorisationSystem, choice: FactorisationChoice | None = None) -> bool:
    back = algebra_to_fs(fs_to_pseudo_algebra(X, fs, choice))
    return back.E == fs.E and back.M == fs.M


# -- morphisms and 2-cells ----------------------------------------------------------


@dataclass(eq=False)
class AlgebraMorphism:
    source: PseudoAlgebra
    target: PseudoAlgebra
    F: Functor
    phi: np.ndarray

    def __post_init__(self):
        self.phi = np.asarray(self.phi, dtype=I32)
        if self.source.monad is not self.target.monad:
            raise PreconditionError("algebras over different monads")
        if self.F.source is not self.source.base or self.F.target is not self.target.base:
            raise PreconditionError("functor does not connect the algebras")


def identity_morphism(a: PseudoAlgebra) -> AlgebraMorphism:
    X = a.base
    return AlgebraMorphism(a, a, Functor.identity(X), X.identity[a.t.on_objects])


def check_algebra_morphism(m: AlgebraMorphism) -> Report:
    a, b, F, phi = m.source, m.target, m.F, m.phi
    X, Y = a.base, b.base
    M = a.monad
    rep = Report()
    grp = "pseudo algebra morphism"
    TX, TY = a.T, b.T
    T2X = M.apply(TX.cat)
    TF = M.fmap(F)
    Ff, Fo = F.on_morphisms, F.on_objects
    t, t2 = a.t, b.t
    # phi: F.t => t'.TF over TX, componentwise iso
    src = Fo[t.on_objects]
    tgt = t2.on_objects[TF.on_objects]
    ok = (Y.dom[phi] == src) & (Y.cod[phi] == tgt) & Y.iso_mask[phi]
    where = _first(TX.cat.objects, ~ok)
    rep.add("phi components are isos of the right type", grp, where is None, where, TX.cat.n_obj)
    if where is not None:
        return rep
    lhs = Y.compose_many(t2.on_morphisms[TF.on_morphisms], phi[TX.cat.dom])
    rhs = Y.compose_many(phi[TX.cat.cod], Ff[t.on_morphisms])
    where = _first(TX.cat.morphisms, lhs != rhs)
    rep.add("phi is natural", grp, where is None, where, TX.cat.n_mor)
    # phi is trivial on unit images
    where = _first(X.objects, phi[X.identity] != Y.identity[Fo])
    rep.add("phi . unit = 1", grp, where is None, where, X.n_obj)
    # compatibility with theta, at every object of T^2 X
    mu = M.mult(X)
    lhs = Y.compose_many(phi[mu.on_objects], Ff[a.theta])
    sq = TY.find_many(Ff[t.on_morphisms], t2.on_morphisms[TF.on_morphisms], phi[TX.src], phi[TX.tgt])
    if (sq < 0).any():
        where = TX.cat.morphisms[int(np.flatnonzero(sq < 0)[0])]
        rep.add("phi compatible with theta", grp, False, {"no square at": where}, TX.cat.n_mor)
        return rep
    rhs = Y.compose_many(
        Y.compose_many(b.theta[TF.on_morphisms], t2.on_morphisms[sq]),
        phi[t.on_morphisms],
    )
    where = _first(T2X.cat.objects, lhs != rhs)
    rep.add("phi compatible with theta", grp, where is None, where, TX.cat.n_mor)
    return rep


def check_two_cell(alpha: NatTransformation, m1: AlgebraMorphism, m2: AlgebraMorphism) -> bool:
    """psi . alpha t = t' T(alpha) . phi, componentwise over TX."""
    a, b = m1.source, m1.target
    if m2.source is not a or m2.target is not b:
        raise PreconditionError("2-cell between morphisms of different algebras")
    if alpha.source != m1.F or alpha.target != m2.F:
        raise PreconditionError("2-cell does not connect the functors")
    X, Y = a.base, b.base
    TY = b.T
    al = alpha.components
    lhs = Y.compose_many(m2.phi, al[a.t.on_objects])
    x = np.arange(X.n_mor)
    sq = TY.find_many(m1.F.on_morphisms[x], m2.F.on_morphisms[x], al[X.dom], al[X.cod])
    if (sq < 0).any():
        return False
    rhs = Y.compose_many(b.t.on_morphisms[sq], m1.phi)
    return bool(np.array_equal(lhs, rhs))


def fs_functor_morphism(F: Functor, a: PseudoAlgebra, b: PseudoAlgebra) -> AlgebraMorphism:
    """phi(x): comparison iso between F applied to the t-factorisation of x and the
    t'-factorisation of F x.  Requires F to preserve the induced classes."""
    X, Y = F.source, F.target
    lo, up = tau(a)
    lo2, up2 = tau(b)
    phi = np.empty(X.n_mor, dtype=I32)
    Ff = F.on_morphisms
    for x in range(X.n_mor):
        fx = int(Ff[x])
        mine = (int(Ff[lo[x]]), int(F.on_objects[a.t.on_objects[x]]), int(Ff[up[x]]))
        theirs = (int(lo2[fx]), int(b.t.on_objects[fx]), int(up2[fx]))
        phi[x] = comparison_iso(Y, fx, mine, theirs)
    return AlgebraMorphism(a, b, F, phi)


def roundtrip_algebra(a: PseudoAlgebra, b: PseudoAlgebra) -> AlgebraMorphism:
    """The pseudo isomorphism (1, phi) between two algebras inducing the same fs."""
    fa, fb = algebra_to_fs(a), algebra_to_fs(b)
    if fa.E != fb.E or fa.M != fb.M:
        raise PreconditionError("the algebras induce different factorisation systems")
    return fs_functor_morphism(Functor.identity(a.base), a, b)


# -- Freyd compatibility -------------------------------------------------------------


def is_r_compatible(a: PseudoAlgebra) -> bool:
    if a.monad is not P:
        raise PreconditionError("R-compatibility concerns P-algebras")
    F = freyd_completion(a.base)
    try:
        F.collect(a.t.on_morphisms, "t")
    except ConsistencyError:
        return False
    return True


def induce_fr_algebra(a: PseudoAlgebra) -> PseudoAlgebra:
    """t' on FrX with t = t' o p; theta' read off representatives, checked constant."""
    if not is_r_compatible(a):
        raise PreconditionError("structure map is not constant on Freyd classes")
    X = a.base
    F = freyd_completion(X)
    t_fr = Functor(F.cat, X, a.t.on_objects, F.collect(a.t.on_morphisms, "t"), "t'")
    theta = F.collect(a.theta, "theta")
    return PseudoAlgebra(X, Fr, t_fr, theta)


def proper_correspondence_check(X: FinCategory) -> Report:
    """Proper fs correspond to R-compatible algebras, with the cancellation argument
    run on every relevant pair of parallel maps."""
    rep = Report()
    grp = "proper fs and Freyd algebras"
    systems = enumerate_fs(X)
    n_proper = n_compat = 0
    for fs in systems:
        label = ",".join(X.names(fs.E - X.isos)) or "isos"
        a = fs_to_pseudo_algebra(X, fs)
        proper = is_proper(X, fs.E, fs.M)
        compat = is_r_compatible(a)
        n_proper += proper
        n_compat += compat
        rep.add(f"E={label}: proper iff R-compatible", grp, proper == compat, {"proper": proper, "compatible": compat})
        if compat:
            fr = induce_fr_algebra(a)
            sub = check_pseudo_algebra(fr)
            rep.add(f"E={label}: induced Fr-algebra coherent", grp, sub.ok, [c.law for c in sub.failures()])
            p = freyd_completion(X).projection
            rep.add(f"E={label}: t = t' . p", grp, (fr.t @ p) == a.t)
        lo, up = tau(a)
        T = a.T
        bad = []
        checked = 0
        for m in sorted(fs.M):
            dom_m = int(X.dom[m])
            for w in range(X.n_obj):
                fs_ = X.hom(w, dom_m).tolist()
                for f1, f2 in itertools.product(fs_, repeat=2):
                    h = X.compose(m, f1)
                    if X.compose(m, f2) != h:
                        continue
                    checked += 1
                    sq = T.find(int(X.identity[w]), m, f1, h)
                    if X.compose(int(lo[m]), f1) != int(a.t.on_morphisms[sq]):
                        bad.append(["tau-", X.morphisms[m], X.morphisms[f1]])
                    elif compat and f1 != f2:
                        bad.append(["cancel", X.morphisms[m], X.morphisms[f1], X.morphisms[f2]])
        for e in sorted(fs.E):
            cod_e = int(X.cod[e])
            for w in range(X.n_obj):
                gs = X.hom(cod_e, w).tolist()
                for g1, g2 in itertools.product(gs, repeat=2):
                    h = X.compose(g1, e)
                    if X.compose(g2, e) != h:
                        continue
                    checked += 1
                    sq = T.find(e, int(X.identity[w]), h, g1)
                    if X.compose(g1, int(up[e])) != int(a.t.on_morphisms[sq]):
                        bad.append(["tau+", X.morphisms[e], X.morphisms[g1]])
                    elif compat and g1 != g2:
                        bad.append(["cancel", X.morphisms[e], X.morphisms[g1], X.morphisms[g2]])
        rep.add(f"E={label}: cancellation through tau", grp, not bad, bad[:1], checked)
    rep.data["counts"] = {"fs": len(systems), "proper": int(n_proper), "R-compatible": int(n_compat)}
    return rep


# -- enumeration of strict algebras ------------------------------------------------------


def enumerate_strict_algebras(X: FinCategory, monad: Monad = P) -> list[PseudoAlgebra]:
    """All strict algebras: unit-respecting functors TX -> X passing the strict law."""
    config.require("algebras", X.n_mor, "strict algebra enumeration")
    T = monad.apply(X)
    u = monad.unit(X)
    fixed_obj = {int(X.identity[o]): o for o in range(X.n_obj)}
    fixed_mor = {int(u.on_morphisms[f]): f for f in range(X.n_mor)}
    out = []
    for t in search_functors(T.cat, X, fixed_obj, fixed_mor):
        t.name = "t"
        a = PseudoAlgebra(X, monad, t, None)
        if check_strict_algebra(a).ok:
            out.append(a)
    return out


def proper_strict_fs(X: FinCategory) -> list[StrictFactorisationSystem]:
    out = []
    for s in enumerate_strict_fs(X):
        fs = span(X, s.E0, s.M0)
        if is_proper(X, fs.E, fs.M):
            out.append(s)
    return out


def strict_correspondence_check(X: FinCategory) -> Report:
    """Strict fs and strict P-algebras are in bijection with both round trips identities."""
    rep = Report()
    grp = "strict correspondence"
    systems = enumerate_strict_fs(X)
    algebras = enumerate_strict_algebras(X, P)
    images = []
    for s in systems:
        a = strict_fs_to_algebra(X, s)
        images.append(a)
        rep.add(f"{s.as_names()}: algebra is strict", grp, check_strict_algebra(a).ok)
        back = strict_algebra_to_strict_fs(a)
        rep.add(f"{s.as_names()}: fs -> algebra -> fs = 1", grp, back.key() == s.key())
    for a in algebras:
        s = strict_algebra_to_strict_fs(a)
        again = strict_fs_to_algebra(X, s)
        rep.add("algebra -> fs -> algebra = 1", grp, again.t == a.t, a.t.as_names()[1])
    keys = {tuple(a.t.on_morphisms.tolist()) for a in algebras}
    image_keys = [tuple(a.t.on_morphisms.tolist()) for a in images]
    rep.add("fs -> algebra is a bijection", grp, len(set(image_keys)) == len(image_keys) and set(image_keys) == keys)
    rep.data["counts"] = {"strict fs": len(systems), "strict algebras": len(algebras)}
    return rep


def pseudo_correspondence_check(X: FinCategory, choice_limit: int = 16) -> Report:
    """Every fs gives a coherent pseudo algebra and comes back unchanged; algebras
    from different choices are linked by verified pseudo isomorphisms."""
    rep = Report()
    grp = "pseudo correspondence"
    systems = enumerate_fs(X)
    for fs in systems:
        label = ",".join(X.names(fs.E - X.isos)) or "isos"
        a = fs_to_pseudo_algebra(X, fs)
        sub = check_pseudo_algebra(a)
        for c in sub.checks:
            rep.add(f"E={label}: {c.law}", c.group, c.passed, c.counterexample, c.checked)
        rep.add(f"E={label}: roundtrip fs", grp, roundtrip_fs(X, fs))
        tau_rep = check_tau(a)
        rep.add(f"E={label}: t-factorisation laws", grp, tau_rep.ok, [c.law for c in tau_rep.failures()])
        choices = all_choices(fs, choice_limit) or [default_choice(fs)]
        algs = [fs_to_pseudo_algebra(X, fs, c) for c in choices]
        bad = []
        for i, j in itertools.combinations_with_replacement(range(len(algs)), 2):
            m = roundtrip_algebra(algs[i], algs[j])
            r = check_algebra_morphism(m)
            if not r.ok:
                bad.append([i, j, [c.law for c in r.failures()]])
        rep.add(f"E={label}: choices are pseudo isomorphic", grp, not bad, bad[:1], len(algs))
    rep.data["counts"] = {"fs": len(systems)}
    return rep


def correspondence_suite(X: FinCategory) -> Report:
    rep = Report()
    rep.extend(pseudo_correspondence_check(X), "pseudo: ")
    rep.extend(proper_correspondence_check(X), "proper: ")
    if X.n_mor <= config.guard("algebras"):
        rep.extend(strict_correspondence_check(X), "strict: ")
        fr_algs = enumerate_strict_algebras(X, Fr)
        n_proper = len(proper_strict_fs(X))
        rep.add("strict Fr-algebras match proper strict fs", "strict correspondence",
                len(fr_algs) == n_proper, {"Fr-algebras": len(fr_algs), "proper strict fs": n_proper})
    return rep


def morphism_coherence_suite(X: FinCategory, Y: FinCategory) -> Report:
    """For every fs on X and Y and every functor X -> Y preserving them: the
    phi built from comparison isos is a coherent morphism, and every 2-cell is coherent."""
    rep = Report()
    grp = "algebra morphisms"
    fx = [(fs, fs_to_pseudo_algebra(X, fs)) for fs in enumerate_fs(X)]
    fy = [(fs, fs_to_pseudo_algebra(Y, fs)) for fs in enumerate_fs(Y)]
    functors = enumerate_functors(X, Y)
    n_morph = n_cells = 0
    bad_m, bad_c = [], []
    for (sx, a), (sy, b) in itertools.product(fx, fy):
        morphs = []
        for F in functors:
            if any(int(F.on_morphisms[e]) not in sy.E for e in sx.E):
                continue
            if any(int(F.on_morphisms[m]) not in sy.M for m in sx.M):
                continue
            mm = fs_functor_morphism(F, a, b)
            r = check_algebra_morphism(mm)
            n_morph += 1
            if not r.ok:
                bad_m.append([c.law for c in r.failures()])
            morphs.append(mm)
        for m1, m2 in itertools.product(morphs, repeat=2):
            for alpha in enumerate_natural_transformations(m1.F, m2.F):
                n_cells += 1
                if not check_two_cell(alpha, m1, m2):
                    bad_c.append(alpha.components.tolist())
    rep.add("fs-preserving functors give coherent morphisms", grp, not bad_m, bad_m[:1], n_morph)
    rep.add("every 2-cell is coherent", grp, not bad_c, bad_c[:1], n_cells)
    return rep
