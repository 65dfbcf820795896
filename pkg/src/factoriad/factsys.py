"""Factorisation systems on finite categories.

An fs ``(E, M)`` here means: both classes contain the isos and are closed under
composition, every morphism factors as ``m o e`` with ``e`` in E and ``m`` in M,
and every ``e`` is orthogonal to every ``m`` (unique diagonal fill-in).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

import numpy as np

from . import config
from .errors import FactorisationError, PreconditionError
from .fincat import FinCategory, Functor, Violation, check_functor, fill_ins, orthogonality_witness


@dataclass(frozen=True)
class FactorisationSystem:
    base: FinCategory
    E: frozenset[int]
    M: frozenset[int]

    def as_names(self) -> dict:
        return {"E": self.base.names(self.E), "M": self.base.names(self.M)}

    def key(self) -> tuple:
        return tuple(sorted(self.E)), tuple(sorted(self.M))


@dataclass(frozen=True)
class StrictFactorisationSystem:
    base: FinCategory
    E0: frozenset[int]
    M0: frozenset[int]

    def as_names(self) -> dict:
        return {"E0": self.base.names(self.E0), "M0": self.base.names(self.M0)}

    def key(self) -> tuple:
        return tuple(sorted(self.E0)), tuple(sorted(self.M0))


def _mask(X: FinCategory, S: Iterable[int]) -> np.ndarray:
    m = np.zeros(X.n_mor, dtype=bool)
    m[list(S)] = True
    return m


def _closure_violation(X: FinCategory, mask: np.ndarray) -> tuple[int, int] | None:
    g, f, gf = X.composable_pairs
    if not len(g):
        return None
    bad = np.flatnonzero(mask[g] & mask[f] & ~mask[gf])
    return None if len(bad) == 0 else (int(g[bad[0]]), int(f[bad[0]]))


def factor_counts(X: FinCategory, E: Iterable[int], M: Iterable[int]) -> np.ndarray:
    """Number of pairs ``(e, m)`` in E x M with ``m o e == u``, for every ``u``."""
    g, f, gf = X.composable_pairs
    me, mm = _mask(X, E), _mask(X, M)
    if not len(g):
        return np.zeros(X.n_mor, dtype=np.int64)
    return np.bincount(gf[mm[g] & me[f]], minlength=X.n_mor)


def fs_violations(X: FinCategory, E: Iterable[int], M: Iterable[int], first_only: bool = False) -> list[Violation]:
    E, M = frozenset(E), frozenset(M)
    N = X.morphisms
    out: list[Violation] = []
    for cls, S in (("E", E), ("M", M)):
        missing = sorted(X.isos - S)
        if missing:
            out.append(Violation("contains isos", (cls, N[missing[0]]), f"iso {N[missing[0]]} not in {cls}"))
        hit = _closure_violation(X, _mask(X, S))
        if hit:
            out.append(Violation("closed under composition", (cls, N[hit[0]], N[hit[1]])))
        if first_only and out:
            return out
    counts = factor_counts(X, E, M)
    for u in np.flatnonzero(counts == 0):
        out.append(Violation("factorisation exists", (N[u],)))
        if first_only:
            return out
    for e in sorted(E):
        for m in sorted(M):
            w = orthogonality_witness(X, e, m)
            if w is not None:
                u, v, n = w
                out.append(
                    Violation("orthogonality", (N[e], N[m]), f"square ({N[u]}, {N[v]}) has {n} fill-ins")
                )
                if first_only:
                    return out
    return out


def is_fs(X: FinCategory, E: Iterable[int], M: Iterable[int]) -> bool:
    return not fs_violations(X, E, M, first_only=True)


def strict_fs_violations(X: FinCategory, E0: Iterable[int], M0: Iterable[int]) -> list[Violation]:
    E0, M0 = frozenset(E0), frozenset(M0)
    N = X.morphisms
    out: list[Violation] = []
    ids = frozenset(X.identity.tolist())
    for cls, S in (("E0", E0), ("M0", M0)):
        missing = sorted(ids - S)
        if missing:
            out.append(Violation("contains identities", (cls, N[missing[0]])))
        hit = _closure_violation(X, _mask(X, S))
        if hit:
            out.append(Violation("closed under composition", (cls, N[hit[0]], N[hit[1]])))
    counts = factor_counts(X, E0, M0)
    for u in np.flatnonzero(counts != 1):
        out.append(Violation("unique factorisation", (N[u],), f"{counts[u]} factorisations"))
    return out


def is_strict_fs(X: FinCategory, E0: Iterable[int], M0: Iterable[int]) -> bool:
    return not strict_fs_violations(X, E0, M0)


def strict_factorisation(X: FinCategory, E0, M0) -> tuple[np.ndarray, np.ndarray]:
    """For each ``u`` its unique pair ``(e, m)``; requires a strict fs."""
    g, f, gf = X.composable_pairs
    me, mm = _mask(X, E0), _mask(X, M0)
    sel = mm[g] & me[f] if len(g) else np.zeros(0, dtype=bool)
    e = np.full(X.n_mor, -1, dtype=np.int64)
    m = np.full(X.n_mor, -1, dtype=np.int64)
    e[gf[sel]] = f[sel]
    m[gf[sel]] = g[sel]
    return e, m


def span(X: FinCategory, E0, M0) -> FactorisationSystem:
    problems = strict_fs_violations(X, E0, M0)
    if problems:
        raise PreconditionError(f"not a strict fs: {problems[0].law} {problems[0].witness}")
    e, m = strict_factorisation(X, E0, M0)
    iso = X.iso_mask
    E = frozenset(np.flatnonzero(iso[m]).tolist())
    M = frozenset(np.flatnonzero(iso[e]).tolist())
    return FactorisationSystem(X, E, M)


def equivalent_strict(X: FinCategory, s1: tuple, s2: tuple) -> bool:
    a, b = span(X, *s1), span(X, *s2)
    return a.E == b.E and a.M == b.M


def is_proper(X: FinCategory, E: Iterable[int], M: Iterable[int]) -> bool:
    return all(X.epi_mask[e] for e in E) and all(X.mono_mask[m] for m in M)


def trivial_fs(X: FinCategory) -> tuple[FactorisationSystem, FactorisationSystem]:
    """(isos, all) and (all, isos)."""
    every = frozenset(range(X.n_mor))
    return FactorisationSystem(X, X.isos, every), FactorisationSystem(X, every, X.isos)


# -- enumeration -----------------------------------------------------------


def orthogonality_matrix(X: FinCategory) -> np.ndarray:
    out = np.zeros((X.n_mor, X.n_mor), dtype=bool)
    for e in range(X.n_mor):
        for m in range(X.n_mor):
            out[e, m] = orthogonality_witness(X, e, m) is None
    return out


def _closed_subsets(X: FinCategory, required: frozenset[int], optional: list[int]) -> Iterator[frozenset[int]]:
    """Composition-closed sets ``required | S`` for S a subset of ``optional``."""
    g, f, gf = X.composable_pairs
    for bits in range(1 << len(optional)):
        S = set(required)
        S.update(o for i, o in enumerate(optional) if bits >> i & 1)
        mask = _mask(X, S)
        if len(g) and (mask[g] & mask[f] & ~mask[gf]).any():
            continue
        yield frozenset(S)


def enumerate_fs(X: FinCategory) -> list[FactorisationSystem]:
    """Every fs on X.  E ranges over closed iso-containing sets; M is forced to
    be the class of maps orthogonal to all of E, then the axioms are checked."""
    config.require("fs", X.n_mor, "fs enumeration")
    ortho = orthogonality_matrix(X)
    isos = X.isos
    optional = [i for i in range(X.n_mor) if i not in isos]
    found = []
    for E in _closed_subsets(X, isos, optional):
        rows = ortho[sorted(E)]
        M = frozenset(np.flatnonzero(rows.all(axis=0)).tolist())
        if not isos <= M:
            continue
        if _closure_violation(X, _mask(X, M)) is not None:
            continue
        if (factor_counts(X, E, M) == 0).any():
            continue
        found.append(FactorisationSystem(X, E, M))
    return sorted(found, key=lambda s: (X.names(s.E), X.names(s.M)))


def enumerate_fs_naive(X: FinCategory) -> list[FactorisationSystem]:
    """Power-set oracle over pairs of subsets containing the identities."""
    ids = frozenset(X.identity.tolist())
    rest = [i for i in range(X.n_mor) if i not in ids]
    subsets = [ids | frozenset(c) for r in range(len(rest) + 1) for c in itertools.combinations(rest, r)]
    found = [FactorisationSystem(X, E, M) for E in subsets for M in subsets if is_fs(X, E, M)]
    return sorted(found, key=lambda s: (X.names(s.E), X.names(s.M)))


def enumerate_strict_fs(X: FinCategory) -> list[StrictFactorisationSystem]:
    """Every strict fs.  E0 and M0 are closed, contain the identities and meet
    only in identities (a shared non-identity u = u.1 = 1.u would factor twice)."""
    config.require("strict_fs", X.n_mor, "strict fs enumeration")
    ids = frozenset(X.identity.tolist())
    rest = [i for i in range(X.n_mor) if i not in ids]
    closed = list(_closed_subsets(X, ids, rest))
    found = []
    for E0 in closed:
        for M0 in closed:
            if E0 & M0 != ids:
                continue
            if (factor_counts(X, E0, M0) == 1).all():
                found.append(StrictFactorisationSystem(X, E0, M0))
    return sorted(found, key=lambda s: (X.names(s.E0), X.names(s.M0)))


def enumerate_strict_fs_naive(X: FinCategory) -> list[StrictFactorisationSystem]:
    ids = frozenset(X.identity.tolist())
    rest = [i for i in range(X.n_mor) if i not in ids]
    subsets = [ids | frozenset(c) for r in range(len(rest) + 1) for c in itertools.combinations(rest, r)]
    found = [StrictFactorisationSystem(X, a, b) for a in subsets for b in subsets if is_strict_fs(X, a, b)]
    return sorted(found, key=lambda s: (X.names(s.E0), X.names(s.M0)))


# -- chosen factorisations ------------------------------------------------------


@dataclass(frozen=True)
class FactorisationChoice:
    """A chosen ``(e, mid, m)`` per morphism, identities sent to ``(id, obj, id)``."""

    fs: FactorisationSystem
    e: tuple[int, ...]
    mid: tuple[int, ...]
    m: tuple[int, ...]

    def triple(self, f: int) -> tuple[int, int, int]:
        return self.e[f], self.mid[f], self.m[f]

    def as_names(self) -> dict:
        X = self.fs.base
        N = X.morphisms
        return {
            N[f]: {"e": N[self.e[f]], "mid": X.objects[self.mid[f]], "m": N[self.m[f]]}
            for f in range(X.n_mor)
        }


def candidate_factorisations(X: FinCategory, E, M, f: int) -> list[tuple[int, int, int]]:
    """Valid ``(e, mid, m)`` for ``f``, ordered by (mid, e, m) names."""
    if X.is_identity[f]:
        return [(f, int(X.dom[f]), f)]
    out = []
    a, b = int(X.dom[f]), int(X.cod[f])
    for mid in range(X.n_obj):
        for e in X.hom(a, mid).tolist():
            if e not in E:
                continue
            for m in X.hom(mid, b).tolist():
                if m in M and X.compose(m, e) == f:
                    out.append((e, mid, m))
    out.sort(key=lambda t: (X.objects[t[1]], X.morphisms[t[0]], X.morphisms[t[2]]))
    return out


def make_choice(fs: FactorisationSystem, triples: Mapping[int, tuple[int, int, int]]) -> FactorisationChoice:
    X = fs.base
    e, mid, m = [], [], []
    for f in range(X.n_mor):
        if f not in triples:
            raise FactorisationError(f"choice misses {X.morphisms[f]}")
        te, tmid, tm = triples[f]
        if X.is_identity[f] and (te, tm) != (f, f):
            raise FactorisationError(f"choice for identity {X.morphisms[f]} must be (id, obj, id)")
        if te not in fs.E or tm not in fs.M:
            raise FactorisationError(f"choice for {X.morphisms[f]} leaves E or M")
        if X.dom[te] != X.dom[f] or X.cod[te] != tmid or X.dom[tm] != tmid or X.compose(tm, te) != f:
            raise FactorisationError(f"choice for {X.morphisms[f]} is not a factorisation")
        e.append(te)
        mid.append(tmid)
        m.append(tm)
    return FactorisationChoice(fs, tuple(e), tuple(mid), tuple(m))


def default_choice(fs: FactorisationSystem) -> FactorisationChoice:
    """Lexicographically least valid (mid, e, m) per morphism."""
    X = fs.base
    triples = {}
    for f in range(X.n_mor):
        cands = candidate_factorisations(X, fs.E, fs.M, f)
        if not cands:
            raise FactorisationError(f"{X.morphisms[f]} has no factorisation")
        triples[f] = cands[0]
    return make_choice(fs, triples)


def all_choices(fs: FactorisationSystem, limit: int = 64) -> list[FactorisationChoice] | None:
    """Every identity-respecting choice, or ``None`` if there are more than ``limit``."""
    X = fs.base
    options = [candidate_factorisations(X, fs.E, fs.M, f) for f in range(X.n_mor)]
    total = 1
    for o in options:
        total *= len(o)
    if total > limit:
        return None
    return [make_choice(fs, dict(enumerate(combo))) for combo in itertools.product(*options)]


def choice_from_names(fs: FactorisationSystem, doc: Mapping[str, Mapping[str, str]]) -> FactorisationChoice:
    """Choice file contents; morphisms not listed fall back to the default choice."""
    X = fs.base
    base = default_choice(fs)
    triples = {f: base.triple(f) for f in range(X.n_mor)}
    for name, entry in doc.items():
        try:
            triples[X.mor(name)] = (X.mor(entry["e"]), X.obj(entry["mid"]), X.mor(entry["m"]))
        except (KeyError, TypeError):
            raise FactorisationError(f"choice entry {name!r}: expected keys e, mid, m") from None
    return make_choice(fs, triples)


def factor(X: FinCategory, choice: FactorisationChoice, f: int) -> tuple[int, int, int]:
    return choice.triple(f)


def comparison_iso(X: FinCategory, f: int, fact1: tuple[int, int, int], fact2: tuple[int, int, int]) -> int:
    """The unique ``w: mid1 -> mid2`` with ``w o e1 == e2`` and ``m2 o w == m1``; it must be iso."""
    e1, mid1, m1 = fact1
    e2, mid2, m2 = fact2
    if X.compose(m1, e1) != f or X.compose(m2, e2) != f:
        raise PreconditionError(f"not factorisations of {X.morphisms[f]}")
    ws = [
        int(w) for w in X.hom(mid1, mid2)
        if X.compose(int(w), e1) == e2 and X.compose(m2, int(w)) == m1
    ]
    if len(ws) != 1:
        raise FactorisationError(f"{len(ws)} comparison maps between factorisations of {X.morphisms[f]}")
    if not X.iso_mask[ws[0]]:
        raise FactorisationError(f"comparison map for {X.morphisms[f]} is not iso")
    return ws[0]


def unique_fill_in(X: FinCategory, e: int, m: int, u: int, v: int, what: str = "") -> int:
    ws = fill_ins(X, e, m, u, v)
    if len(ws) != 1:
        N = X.morphisms
        raise FactorisationError(f"{what}square ({N[u]}, {N[v]}) against ({N[e]}, {N[m]}) has {len(ws)} fill-ins")
    return ws[0]


# -- free extension along eta ----------------------------------------------------


def extend_functor(F: Functor, choice: FactorisationChoice) -> Functor:
    """G: PX -> A with G(x) the chosen middle object of F(x) and G on squares the fill-in."""
    from .arrowmonad import arrow_category

    X, A = F.source, F.target
    if choice.fs.base is not A:
        raise PreconditionError("choice belongs to a different category")
    T = arrow_category(X)
    fm = F.on_morphisms
    objs = [choice.mid[fm[x]] for x in range(X.n_mor)]
    mors = []
    for q in range(T.cat.n_mor):
        x, y = int(fm[T.src[q]]), int(fm[T.tgt[q]])
        ex, _, mx = choice.triple(x)
        ey, _, my = choice.triple(y)
        u = A.compose(ey, int(fm[T.top[q]]))
        v = A.compose(int(fm[T.bot[q]]), mx)
        mors.append(unique_fill_in(A, ex, my, u, v, f"extension at {T.cat.morphisms[q]}: "))
    return Functor(T.cat, A, objs, mors, "G")


def preserves_fs(G: Functor, src_fs: tuple, tgt_fs: tuple) -> list[str]:
    """Members of the source classes whose images leave the target classes."""
    (E1, M1), (E2, M2) = src_fs, tgt_fs
    out = []
    for cls, S, T in (("E", E1, E2), ("M", M1, M2)):
        for f in sorted(S):
            if int(G.on_morphisms[f]) not in T:
                out.append(f"{cls}: {G.source.morphisms[f]}")
    return out


def extend_functor_proper(F: Functor, choice: FactorisationChoice) -> Functor:
    """The extension to FrX; the PX-extension must be constant on Freyd classes."""
    from .freyd import freyd_completion

    fs = choice.fs
    if not is_proper(fs.base, fs.E, fs.M):
        raise PreconditionError("target fs is not proper")
    G = extend_functor(F, choice)
    Fr = freyd_completion(F.source)
    # the squares presenting FrX are the PX morphisms, in PX order
    per_class = Fr.collect(G.on_morphisms, "proper extension")
    return Functor(Fr.cat, G.target, G.on_objects, per_class, "G'")


def check_extension(F: Functor, choice: FactorisationChoice) -> list[str]:
    """Problems with the extension of F: functoriality, G o eta = F, fs preservation."""
    from .arrowmonad import arrow_category, eta

    G = extend_functor(F, choice)
    out = []
    if not check_functor(G):
        out.append("extension is not a functor")
        return out
    Ge = G @ eta(F.source)
    if not (np.array_equal(Ge.on_objects, F.on_objects) and np.array_equal(Ge.on_morphisms, F.on_morphisms)):
        out.append("G o eta != F")
    fs = choice.fs
    out += preserves_fs(G, arrow_category(F.source).canonical_fs(), (fs.E, fs.M))
    return out
