"""The Freyd completion FrX: commuting squares of X identified when parallel
with equal diagonals, its canonical proper factorisations, and the monad it
carries together with the projection from P."""

from __future__ import annotations

import numpy as np

from . import config
from .arrowmonad import P, ArrowCat, Monad, SquareCat, _functor_equal, _lookup, arrow_category
from .errors import ConsistencyError
from .factsys import FactorisationSystem, is_proper, span, strict_fs_violations
from .fincat import I32, Congruence, FinCategory, Functor, _freeze, quotient
from .report import Report


def _diag_keys(n: int, s, t, d) -> np.ndarray:
    s, t, d = (np.asarray(a, dtype=np.int64) for a in (s, t, d))
    return (s * n + t) * n + d


def freyd_congruence(PX: ArrowCat) -> Congruence:
    """Parallel squares with equal diagonals."""
    keys = _diag_keys(PX.base.n_mor, PX.src, PX.tgt, PX.diag)
    _, inv = np.unique(keys, return_inverse=True)
    return Congruence(PX.cat, inv.reshape(-1))


class FreydCat(SquareCat):
    kind = "Fr"

    def __init__(self, arrow: ArrowCat, congruence: Congruence, cat: FinCategory, projection: Functor):
        self.base = arrow.base
        self.arrow = arrow
        self.congruence = congruence
        self.cat = cat
        self.projection = projection
        names = arrow.cat.morphisms
        self.representatives = tuple(
            tuple(sorted(members, key=lambda q: names[q])) for members in congruence.classes
        )
        rep = np.array([r[0] for r in self.representatives], dtype=I32)
        self.rep = _freeze(rep)
        self.src, self.tgt = arrow.src[rep], arrow.tgt[rep]
        self.top, self.bot = arrow.top[rep], arrow.bot[rep]
        self.diag = arrow.diag[rep]
        self.sq_src, self.sq_tgt, self.sq_top, self.sq_bot = arrow.src, arrow.tgt, arrow.top, arrow.bot
        self.sq_class = congruence.class_of
        keys = _diag_keys(self.base.n_mor, self.src, self.tgt, self.diag)
        self._order = np.argsort(keys, kind="stable")
        self._keys = keys[self._order]

    @property
    def diagonal_of(self) -> np.ndarray:
        return self.diag

    def find_diag(self, s, t, d) -> np.ndarray:
        hit = _lookup(self._keys, _diag_keys(self.base.n_mor, s, t, d))
        out = np.full(hit.shape, -1, dtype=I32)
        ok = hit >= 0
        out[ok] = self._order[hit[ok]]
        return out

    def find_many(self, s, t, top, bot) -> np.ndarray:
        X = self.base
        s, t, top, bot = (np.asarray(a, dtype=np.int64) for a in (s, t, top, bot))
        d1 = X.compose_many(bot, s)
        d2 = X.compose_many(t, top)
        out = self.find_diag(s, t, d1)
        out[(d1 < 0) | (d1 != d2)] = -1
        return out

    def provenance(self) -> tuple[dict[int, dict], dict[int, dict]]:
        M = self.base.morphisms
        A = self.arrow
        objs = {i: {"of": M[i]} for i in range(self.cat.n_obj)}
        mors = {
            c: {
                "top": M[self.top[c]],
                "bottom": M[self.bot[c]],
                "diagonal": M[self.diag[c]],
                "representatives": [[M[A.top[q]], M[A.bot[q]]] for q in self.representatives[c]],
            }
            for c in range(self.cat.n_mor)
        }
        return objs, mors


def freyd_completion(X: FinCategory) -> FreydCat:
    """FrX = PX / R, cached on X.  Classes are named after their least representative."""
    cached = X.__dict__.get("_freyd_completion")
    if cached is not None:
        return cached
    A = arrow_category(X)
    cong = freyd_congruence(A)
    M = X.morphisms

    def namer(members):
        q = min(members, key=lambda i: A.cat.morphisms[i])
        return f"[{M[A.top[q]]}|{M[A.bot[q]]}]:{M[A.src[q]]}->{M[A.tgt[q]]}"

    cat, proj = quotient(A.cat, cong, namer)
    F = FreydCat(A, cong, cat, proj)
    cat.origin = F
    X.__dict__["_freyd_completion"] = F
    return F


class FrMonad(Monad):
    name = "Fr"

    def apply(self, X: FinCategory) -> FreydCat:
        return freyd_completion(X)


Fr = FrMonad()


def eta_prime(X: FinCategory) -> Functor:
    return Fr.unit(X)


def mu_prime(X: FinCategory) -> Functor:
    """Well-definedness over every representative is checked while building."""
    return Fr.mult(X)


def canonical_proper_strict_fs(F: FreydCat) -> tuple[frozenset[int], frozenset[int]]:
    return F.canonical_strict_fs()


def split_epi_classes(F: FreydCat) -> tuple[np.ndarray, np.ndarray]:
    """Per class: is it in E by the split-epi test, in M by the dual split-mono test.

    [f]: x -> y is in E iff some u: Y' -> X' has y.f'.u == y, and in M iff
    some v: Y'' -> X'' has v.f''.x == x.  Both are evaluated on every
    representative and must agree across a class.
    """
    X = F.base
    in_e = np.zeros(len(F.sq_src), dtype=I32)
    in_m = np.zeros(len(F.sq_src), dtype=I32)
    for q in range(len(F.sq_src)):
        x, y, a, b = (int(v[q]) for v in (F.sq_src, F.sq_tgt, F.sq_top, F.sq_bot))
        for u in X.hom(int(X.dom[y]), int(X.dom[x])).tolist():
            if X.compose(y, X.compose(a, u)) == y:
                in_e[q] = 1
                break
        for v in X.hom(int(X.cod[y]), int(X.cod[x])).tolist():
            if X.compose(X.compose(v, b), x) == x:
                in_m[q] = 1
                break
    return F.collect(in_e, "split-epi test").astype(bool), F.collect(in_m, "split-mono test").astype(bool)


def spanned_fs(F: FreydCat) -> FactorisationSystem:
    """Span of the canonical strict fs, cross-checked against the split-epi test."""
    E0, M0 = F.canonical_strict_fs()
    fs = span(F.cat, E0, M0)
    e_mask, m_mask = split_epi_classes(F)
    e_by_test = frozenset(np.flatnonzero(e_mask).tolist())
    m_by_test = frozenset(np.flatnonzero(m_mask).tolist())
    if e_by_test != fs.E:
        diff = sorted(e_by_test ^ fs.E)
        raise ConsistencyError(f"spanned E disagrees with the split-epi test at {F.cat.morphisms[diff[0]]}")
    if m_by_test != fs.M:
        diff = sorted(m_by_test ^ fs.M)
        raise ConsistencyError(f"spanned M disagrees with the split-mono test at {F.cat.morphisms[diff[0]]}")
    return fs


def check_freyd_properness(X: FinCategory) -> Report:
    rep = Report()
    grp = "Freyd completion"
    F = freyd_completion(X)
    C = F.cat
    E0, M0 = F.canonical_strict_fs()
    problems = strict_fs_violations(C, E0, M0)
    rep.add("canonical (E0, M0) is a strict fs", grp, not problems, [v.as_dict() for v in problems[:3]], C.n_mor)
    fs = span(C, E0, M0) if not problems else None
    if fs is not None:
        rep.add("canonical (E0, M0) is proper", grp, is_proper(C, E0, M0), None, len(E0) + len(M0))
        rep.add("spanned (E, M) is proper", grp, is_proper(C, fs.E, fs.M), None, len(fs.E) + len(fs.M))
        try:
            spanned_fs(F)
            rep.add("spanned (E, M) matches the split-epi test", grp, True, None, C.n_mor)
        except ConsistencyError as exc:
            rep.add("spanned (E, M) matches the split-epi test", grp, False, str(exc), C.n_mor)
    # epi/mono transfer, over every representative square
    bad_e = [q for q in range(len(F.sq_src)) if X.epi_mask[F.sq_top[q]] and not C.epi_mask[F.sq_class[q]]]
    bad_m = [q for q in range(len(F.sq_src)) if X.mono_mask[F.sq_bot[q]] and not C.mono_mask[F.sq_class[q]]]
    A = F.arrow.cat.morphisms
    rep.add("top epi => class epi", grp, not bad_e, A[bad_e[0]] if bad_e else None, len(F.sq_src))
    rep.add("bottom mono => class mono", grp, not bad_m, A[bad_m[0]] if bad_m else None, len(F.sq_src))
    # canonical factorisation through the diagonal, with equal diagonals
    bad = []
    for c in range(C.n_mor):
        e, m = F.strict_factor(c)
        if C.compose(m, e) != c or F.diag[e] != F.diag[c] or F.diag[m] != F.diag[c]:
            bad.append(C.morphisms[c])
    rep.add("[f] = [f', 1].[1, f''] with equal diagonals", grp, not bad, bad[:1], C.n_mor)
    rep.data["Fr.sizes"] = {"PX morphisms": F.arrow.cat.n_mor, "FrX morphisms": C.n_mor}
    return rep


def check_projection_monad_morphism(X: FinCategory) -> Report:
    """p o eta = eta', p o mu = mu' o p2, and both expressions for p2 agree."""
    config.require("cube", X.n_mor, "projection monad morphism check")
    rep = Report()
    grp = "projection P -> Fr"
    A = arrow_category(X)
    F = freyd_completion(X)
    p = F.projection
    _functor_equal(rep, "p . eta = eta'", grp, p @ P.unit(X), Fr.unit(X))
    p_at_PX = freyd_completion(A.cat).projection
    p_at_FrX = freyd_completion(F.cat).projection
    p2a = Fr.fmap(p) @ p_at_PX
    p2b = p_at_FrX @ P.fmap(p)
    _functor_equal(rep, "Fr(p) . p(PX) = p(FrX) . P(p)", grp, p2a, p2b)
    _functor_equal(rep, "p . mu = mu' . p2", grp, p @ P.mult(X), Fr.mult(X) @ p2a)
    return rep
