"""The arrow category PX = X^2, its diagonal monad, canonical factorisations,
faces, connections and the cubical law checks.

Objects of PX are the morphisms of X (object ``i`` of PX *is* base morphism
``i``).  A morphism of PX is a commuting square ``top, bot: x -> y`` with
``bot o x == y o top``; its diagonal is that common composite.
"""

from __future__ import annotations

import numpy as np

from . import config, kernels
from .errors import CategoryError, ConsistencyError
from .fincat import I32, FinCategory, Functor, Layout, _arr, _freeze, check_functor, functor_violations
from .report import Report


class SquareCat:
    """Shared interface of PX and FrX.

    Per morphism of ``cat``: ``src``, ``tgt`` (base morphisms, the objects),
    a representative ``top``/``bot`` and the diagonal.  ``sq_*`` list every
    commuting square of the base together with the morphism it presents.
    """

    kind = "?"

    base: FinCategory
    cat: FinCategory
    src: np.ndarray
    tgt: np.ndarray
    top: np.ndarray
    bot: np.ndarray
    diag: np.ndarray
    sq_src: np.ndarray
    sq_tgt: np.ndarray
    sq_top: np.ndarray
    sq_bot: np.ndarray
    sq_class: np.ndarray

    def find_many(self, s, t, top, bot) -> np.ndarray:
        raise NotImplementedError

    def find(self, s: int, t: int, top: int, bot: int) -> int:
        return int(self.find_many([s], [t], [top], [bot])[0])

    def collect(self, values: np.ndarray, what: str) -> np.ndarray:
        """Per-morphism values from per-square ones, insisting on independence of representative."""
        out = np.full(self.cat.n_mor, -1, dtype=I32)
        out[self.sq_class] = values
        bad = np.flatnonzero(out[self.sq_class] != values)
        if len(bad):
            q = int(bad[0])
            raise ConsistencyError(
                f"{what}: value depends on the representative of {self.cat.morphisms[self.sq_class[q]]}"
            )
        if (out < 0).any():
            m = int(np.flatnonzero(out < 0)[0])
            raise ConsistencyError(f"{what}: no image for {self.cat.morphisms[m]}")
        return out

    def identity_square(self) -> np.ndarray:
        """Identity morphism of each object, i.e. the square (1, 1)."""
        return self.cat.identity

    def strict_factor(self, f: int) -> tuple[int, int]:
        """``f = m o e`` with ``e = (1, bot)`` and ``m = (top, 1)`` through the diagonal."""
        X = self.base
        x, y, d = int(self.src[f]), int(self.tgt[f]), int(self.diag[f])
        e = self.find(x, d, int(X.identity[X.dom[x]]), int(self.bot[f]))
        m = self.find(d, y, int(self.top[f]), int(X.identity[X.cod[y]]))
        if e < 0 or m < 0:
            raise ConsistencyError(f"strict factorisation of {self.cat.morphisms[f]} is missing")
        return e, m

    def canonical_strict_fs(self) -> tuple[frozenset[int], frozenset[int]]:
        """Morphisms presented by a square with identity top (E0) or identity bottom (M0)."""
        ident = self.base.is_identity
        e0 = np.unique(self.sq_class[ident[self.sq_top]])
        m0 = np.unique(self.sq_class[ident[self.sq_bot]])
        return frozenset(e0.tolist()), frozenset(m0.tolist())

    def canonical_fs(self) -> tuple[frozenset[int], frozenset[int]]:
        iso = self.base.iso_mask
        e = np.unique(self.sq_class[iso[self.sq_top]])
        m = np.unique(self.sq_class[iso[self.sq_bot]])
        return frozenset(e.tolist()), frozenset(m.tolist())

    def square_name(self, s: int, t: int, top: int, bot: int) -> str:
        M = self.base.morphisms
        return f"({M[top]}|{M[bot]}):{M[s]}->{M[t]}"

    def provenance(self) -> tuple[dict[int, dict], dict[int, dict]]:
        M = self.base.morphisms
        objs = {i: {"of": M[i]} for i in range(self.cat.n_obj)}
        mors = {f: {"top": M[self.top[f]], "bottom": M[self.bot[f]]} for f in range(self.cat.n_mor)}
        return objs, mors


class ArrowCat(SquareCat):
    kind = "P"

    def __init__(self, base: FinCategory, src, tgt, top, bot, cat: FinCategory):
        self.base = base
        self.cat = cat
        self.src, self.tgt, self.top, self.bot = (_freeze(_arr(a)) for a in (src, tgt, top, bot))
        self.diag = _freeze(base.compose_many(self.bot, self.src))
        self.sq_src, self.sq_tgt, self.sq_top, self.sq_bot = self.src, self.tgt, self.top, self.bot
        self.sq_class = _freeze(np.arange(cat.n_mor, dtype=I32))
        self._keys = _square_keys(base.n_mor, self.src, self.tgt, self.top, self.bot)

    @property
    def object_of(self) -> np.ndarray:
        return np.arange(self.base.n_mor, dtype=I32)

    def square_of(self, f: int) -> tuple[int, int]:
        return int(self.top[f]), int(self.bot[f])

    def find_many(self, s, t, top, bot) -> np.ndarray:
        return _lookup(self._keys, _square_keys(self.base.n_mor, s, t, top, bot))


def _square_keys(n: int, s, t, top, bot) -> np.ndarray:
    s, t, top, bot = (np.asarray(a, dtype=np.int64) for a in (s, t, top, bot))
    return ((s * n + t) * n + top) * n + bot


def _lookup(sorted_keys: np.ndarray, keys: np.ndarray) -> np.ndarray:
    out = np.full(keys.shape, -1, dtype=I32)
    if len(sorted_keys) == 0 or keys.size == 0:
        return out
    pos = np.searchsorted(sorted_keys, keys)
    pos_c = np.minimum(pos, len(sorted_keys) - 1)
    hit = (pos < len(sorted_keys)) & (sorted_keys[pos_c] == keys) & (keys >= 0)
    out[hit] = pos[hit]
    return out


def commuting_squares(X: FinCategory) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """All commuting squares of X sorted by (src, tgt, top, bottom)."""
    src, tgt, top, bot = kernels.commuting_squares(*X.kernel_args)
    order = np.lexsort((bot, top, tgt, src))
    return tuple(_arr(a[order]) for a in (src, tgt, top, bot))  # type: ignore[return-value]


def arrow_category(X: FinCategory) -> ArrowCat:
    """PX, cached on ``X``.  Morphisms are ordered by (src, tgt, top, bottom)."""
    cached = X.__dict__.get("_arrow_category")
    if cached is not None:
        return cached
    src, tgt, top, bot = commuting_squares(X)
    M = X.morphisms
    names = [f"({M[a]}|{M[b]}):{M[s]}->{M[t]}" for s, t, a, b in zip(src.tolist(), tgt.tolist(), top.tolist(), bot.tolist())]
    n_obj = X.n_mor
    layout = Layout.build(n_obj, src, tgt)
    comp = kernels.square_composition(
        X.dom, X.cod, X.layout.in_ptr, X.layout.pos_out, X.layout.pos_in, X.layout.comp_off, X.comp,
        src, tgt, top, bot,
        layout.out_ptr, layout.in_ptr, layout.in_idx, layout.comp_off,
    )
    if (np.asarray(comp) < 0).any():
        raise ConsistencyError("square composite is not a commuting square; is the base a category?")
    keys = _square_keys(X.n_mor, src, tgt, top, bot)
    ids = np.arange(n_obj)
    identity = _lookup(keys, _square_keys(X.n_mor, ids, ids, X.identity[X.dom], X.identity[X.cod]))
    cat = FinCategory(M, names, src, tgt, identity, comp, layout=layout)
    P = ArrowCat(X, src, tgt, top, bot, cat)
    cat.origin = P
    X.__dict__["_arrow_category"] = P
    return P


# -- monads ---------------------------------------------------------------


class Monad:
    """An endo-construction on finite categories with diagonal unit and multiplication."""

    name = "?"

    def apply(self, X: FinCategory) -> SquareCat:
        raise NotImplementedError

    def _cache(self, X: FinCategory, key: str, build):
        slot = f"_{self.name}_{key}"
        if slot not in X.__dict__:
            X.__dict__[slot] = build()
        return X.__dict__[slot]

    def unit(self, X: FinCategory) -> Functor:
        def build():
            T = self.apply(X)
            f = np.arange(X.n_mor)
            fm = T.find_many(X.identity[X.dom], X.identity[X.cod], f, f)
            if (fm < 0).any():
                raise ConsistencyError("unit: degenerate square missing")
            return Functor(X, T.cat, X.identity, fm, f"eta[{self.name}]")

        return self._cache(X, "unit", build)

    def mult(self, X: FinCategory) -> Functor:
        def build():
            T1 = self.apply(X)
            T2 = self.apply(T1.cat)
            vals = T1.find_many(
                T1.diag[T2.sq_src], T1.diag[T2.sq_tgt], T1.top[T2.sq_top], T1.bot[T2.sq_bot]
            )
            fm = T2.collect(vals, f"mult[{self.name}]")
            return Functor(T2.cat, T1.cat, T1.diag, fm, f"mu[{self.name}]")

        return self._cache(X, "mult", build)

    def fmap(self, F: Functor) -> Functor:
        """TF: apply F to both legs of every square."""
        TA = self.apply(F.source)
        TB = self.apply(F.target)
        fm = F.on_morphisms
        vals = TB.find_many(fm[TA.sq_src], fm[TA.sq_tgt], fm[TA.sq_top], fm[TA.sq_bot])
        return Functor(TA.cat, TB.cat, fm, TA.collect(vals, f"{self.name}({F.name})"), f"{self.name}{F.name}")


class PMonad(Monad):
    name = "P"

    def apply(self, X: FinCategory) -> ArrowCat:
        return arrow_category(X)


P = PMonad()


def eta(X: FinCategory) -> Functor:
    return P.unit(X)


def mu(X: FinCategory) -> Functor:
    return P.mult(X)


def canonical_fs(PX: SquareCat):
    """``((E, M), (E0, M0))``: top/bottom iso, and top/bottom identity."""
    return PX.canonical_fs(), PX.canonical_strict_fs()


def strict_factor(PX: SquareCat, f: int) -> tuple[int, int]:
    return PX.strict_factor(f)


# -- law checks -------------------------------------------------------------


def _first_mismatch(names, a, b) -> str | None:
    bad = np.flatnonzero(np.asarray(a) != np.asarray(b))
    return None if len(bad) == 0 else names[int(bad[0])]


def _functor_equal(report: Report, law: str, group: str, F: Functor, G: Functor) -> bool:
    if F.source is not G.source or F.target is not G.target:
        raise CategoryError(f"{law}: functors are not parallel")
    S = F.source
    where = _first_mismatch(S.objects, F.on_objects, G.on_objects)
    if where is not None:
        return report.add(law, group, False, {"object": where}, S.n_obj + S.n_mor)
    where = _first_mismatch(S.morphisms, F.on_morphisms, G.on_morphisms)
    return report.add(law, group, where is None, {"morphism": where}, S.n_obj + S.n_mor)


def check_monad_laws(monad: Monad, X: FinCategory) -> Report:
    """Unit and associativity laws, exhaustively; T^3 X is scanned, never built."""
    config.require("cube", X.n_mor, f"{monad.name} monad laws")
    rep = Report()
    group = f"{monad.name} monad"
    T1 = monad.apply(X)
    T2 = monad.apply(T1.cat)
    u, m = monad.unit(X), monad.mult(X)
    for name, F in (("unit is a functor", u), ("multiplication is a functor", m)):
        problems = functor_violations(F)
        rep.add(name, group, not problems, problems[:3], F.source.n_mor)
    ident = Functor.identity(T1.cat)
    _functor_equal(rep, "mult . unit(TX) = 1", group, m @ monad.unit(T1.cat), ident)
    _functor_equal(rep, "mult . T(unit) = 1", group, m @ monad.fmap(u), ident)

    # associativity on objects of T^3 X (morphisms of T^2 X)
    # mult at TX sends an object of T^3 X to its diagonal in T^2 X
    a1 = T1.diag[T2.diag]
    a2 = T1.diag[m.on_morphisms]
    where = _first_mismatch(T2.cat.morphisms, a1, a2)
    rep.add("mult . mult(TX) = mult . T(mult) on objects", group, where is None, {"object": where}, T2.cat.n_mor)

    # associativity on morphisms: scan every commuting square of T^2 X
    t1 = T1.top[T2.top]
    b1 = T1.bot[T2.bot]
    t2 = T1.top[m.on_morphisms]
    b2 = T1.bot[m.on_morphisms]
    lhs_a = _arr(T1.diag[T2.diag])
    mode = 0 if monad.name == "P" else 1
    count, hit = kernels.square_scan(
        *T2.cat.kernel_args,
        lhs_a, _arr(t1), _arr(b1), _arr(a2), _arr(t2), _arr(b2), mode,
        X.dom, X.cod, X.layout.in_ptr, X.layout.pos_out, X.layout.pos_in, X.layout.comp_off, X.comp,
    )
    cx = None
    if hit is not None:
        cx = {"square": [T2.cat.morphisms[i] for i in hit]}
    rep.add("mult . mult(TX) = mult . T(mult) on morphisms", group, hit is None, cx, int(count))
    rep.data[f"{monad.name}.sizes"] = {
        "TX morphisms": T1.cat.n_mor,
        "T2X morphisms": T2.cat.n_mor,
        "T3X squares scanned": int(count),
    }
    return rep


# -- faces, connections and the cubical equations ------------------------------


def faces(X: FinCategory) -> tuple[Functor, Functor]:
    """Source and target projections PX -> X."""
    T = arrow_category(X)
    lower = Functor(T.cat, X, X.dom, T.top, "d-")
    upper = Functor(T.cat, X, X.cod, T.bot, "d+")
    return lower, upper


def _connection_squares(T: ArrowCat, eps: int):
    """Per morphism x of the base: the square g-(x) = (x, 1): x -> 1_cod, or g+(x) = (1, x): 1_dom -> x."""
    X = T.base
    x = np.arange(X.n_mor)
    if eps < 0:
        ids = X.identity[X.cod]
        return x, ids, x, ids
    ids = X.identity[X.dom]
    return ids, x, ids, x


def connection_objects(T: ArrowCat, eps: int) -> np.ndarray:
    """Object part of g-eps: a PX-morphism for each base morphism."""
    s, t, a, b = _connection_squares(T, eps)
    out = T.find_many(s, t, a, b)
    if (out < 0).any():
        raise ConsistencyError("connection square missing")
    return out


def connection_squares(T: ArrowCat, eps: int) -> tuple[np.ndarray, ...]:
    """Morphism part of g-eps as 4-tuples of PX-morphisms, one per PX-morphism f.

    g-(f) has top f and bottom the degenerate square (f'', f''); g+(f) has
    bottom f and top (f', f').
    """
    X = T.base
    C = T.cat
    gobj = connection_objects(T, eps)
    f = np.arange(C.n_mor)
    if eps < 0:
        leg = T.bot
        ends = X.identity[X.cod]
    else:
        leg = T.top
        ends = X.identity[X.dom]
    degenerate = T.find_many(ends[T.src], ends[T.tgt], leg, leg)
    if (degenerate < 0).any():
        raise ConsistencyError("degenerate square missing")
    if eps < 0:
        return gobj[T.src], gobj[T.tgt], f, degenerate
    return gobj[T.src], gobj[T.tgt], degenerate, f


def connections(X: FinCategory) -> tuple[Functor, Functor]:
    """g-, g+ : PX -> P^2 X."""
    T = arrow_category(X)
    T2 = arrow_category(T.cat)
    out = []
    for eps, name in ((-1, "g-"), (1, "g+")):
        s, t, a, b = connection_squares(T, eps)
        fm = T2.find_many(s, t, a, b)
        if (fm < 0).any():
            raise ConsistencyError(f"{name}: square of squares missing")
        out.append(Functor(T.cat, T2.cat, connection_objects(T, eps), fm, name))
    return out[0], out[1]


class _Cube:
    """A functor into P^3 X held structurally: objects are P^2 X morphisms,
    morphisms are 4-tuples of P^2 X morphisms (src, tgt, top, bottom)."""

    def __init__(self, on_objects, s, t, a, b):
        self.on_objects = np.asarray(on_objects)
        self.parts = tuple(np.asarray(v) for v in (s, t, a, b))

    def after(self, F: Functor) -> "_Cube":
        fm = F.on_morphisms
        return _Cube(self.on_objects[F.on_objects], *(p[fm] for p in self.parts))

    def equals(self, other: "_Cube") -> tuple[bool, int | None, str]:
        bad = np.flatnonzero(self.on_objects != other.on_objects)
        if len(bad):
            return False, int(bad[0]), "object"
        mism = np.zeros(len(self.parts[0]), dtype=bool)
        for p, q in zip(self.parts, other.parts):
            mism |= p != q
        bad = np.flatnonzero(mism)
        if len(bad):
            return False, int(bad[0]), "morphism"
        return True, None, ""


def _cube_connection(T2: ArrowCat, eps: int) -> _Cube:
    """g-eps at PX, i.e. P^2 X -> P^3 X."""
    return _Cube(connection_objects(T2, eps), *connection_squares(T2, eps))


def _cube_fmap(T2: ArrowCat, G: Functor) -> _Cube:
    """P(G) for G: PX -> P^2 X, landing in P^3 X."""
    fm = G.on_morphisms
    return _Cube(fm, fm[T2.src], fm[T2.tgt], fm[T2.top], fm[T2.bot])


def _apply_Pmu(T3parts: _Cube, m: Functor, T2: ArrowCat) -> tuple[np.ndarray, np.ndarray]:
    """P(mu) after a structural cube functor: (morphism part, object part)."""
    fm = m.on_morphisms
    s, t, a, b = T3parts.parts
    vals = T2.find_many(fm[s], fm[t], fm[a], fm[b])
    if (vals < 0).any():
        raise ConsistencyError("P(mu) produced a non-square")
    return vals, fm[T3parts.on_objects]


def check_cubical_equations(X: FinCategory) -> Report:
    """Faces, degeneracy and connections of the cubical comonad on P, exhaustively."""
    config.require("cube", X.n_mor, "cubical equations")
    rep = Report()
    T = arrow_category(X)
    T2 = arrow_category(T.cat)
    C, C2 = T.cat, T2.cat
    e, m = eta(X), mu(X)
    eP = eta(C)
    Pe = P.fmap(e)
    d = dict(zip("-+", faces(X)))
    dP = dict(zip("-+", faces(C)))
    Pd = {k: P.fmap(v) for k, v in d.items()}
    g = dict(zip("-+", connections(X)))
    grp = "cubical comonad"

    for k, F in list(d.items()) + [(k, v) for k, v in g.items()]:
        rep.add(f"{F.name} is a functor", grp, check_functor(F), None, F.source.n_mor)
    ident_X = Functor.identity(X)
    ident_C = Functor.identity(C)
    for k in "-+":
        _functor_equal(rep, f"d{k} . eta = 1", grp, d[k] @ e, ident_X)
    for k in "-+":
        _functor_equal(rep, f"d{k} . mu = d{k} . P(d{k})", grp, d[k] @ m, d[k] @ Pd[k])
        _functor_equal(rep, f"d{k} . P(d{k}) = d{k} . d{k}P", grp, d[k] @ Pd[k], d[k] @ dP[k])
    for k in "-+":
        _functor_equal(rep, f"mu . g{k} = 1", grp, m @ g[k], ident_C)
    # counits and co-absorbancy of the connections
    other = {"-": "+", "+": "-"}
    for k in "-+":
        o = other[k]
        _functor_equal(rep, f"d{k}P . g{k} = 1", grp, dP[k] @ g[k], ident_C)
        _functor_equal(rep, f"P(d{k}) . g{k} = 1", grp, Pd[k] @ g[k], ident_C)
        _functor_equal(rep, f"d{o}P . g{k} = eta . d{o}", grp, dP[o] @ g[k], e @ d[o])
        _functor_equal(rep, f"P(d{o}) . g{k} = eta . d{o}", grp, Pd[o] @ g[k], e @ d[o])
    # degeneracy
    for k in "-+":
        _functor_equal(rep, f"g{k} . eta = etaP . eta", grp, g[k] @ e, eP @ e)
    _functor_equal(rep, "etaP . eta = P(eta) . eta", grp, eP @ e, Pe @ e)
    # eta(x) is the composite g-(x) . g+(x) in PX
    gm, gp = connection_objects(T, -1), connection_objects(T, 1)
    comp = C.compose_many(gm, gp)
    where = _first_mismatch(X.morphisms, comp, e.on_morphisms)
    rep.add("eta(x) = g-(x) . g+(x)", grp, where is None, {"morphism": where}, X.n_mor)

    # equations through P^3 X, evaluated structurally
    gP = {k: _cube_connection(T2, -1 if k == "-" else 1) for k in "-+"}
    Pg = {k: _cube_fmap(T2, g[k]) for k in "-+"}

    def through_Pmu(cube: _Cube, law: str, expect: Functor):
        vals, objs = _apply_Pmu(cube, m, T2)
        F = Functor(C, C2, objs, vals, law)
        return _functor_equal(rep, law, grp, F, expect)

    for k in "-+":
        for k2 in "-+":
            cube = gP[k].after(g[k2])
            if k != k2:
                through_Pmu(cube, f"P(mu) . g{k}P . g{k2} = etaP", eP)
            else:
                through_Pmu(cube, f"P(mu) . g{k}P . g{k} = g{k}", g[k])
        through_Pmu(Pg[k].after(g[k]), f"P(mu) . P(g{k}) . g{k} = g{k}", g[k])
        ok, at, what = gP[k].after(g[k]).equals(Pg[k].after(g[k]))
        cx = None if ok else {what: (C.objects if what == "object" else C.morphisms)[at]}
        rep.add(f"g{k}P . g{k} = P(g{k}) . g{k}", grp, ok, cx, C.n_obj + C.n_mor)
    rep.data["P.sizes"] = {"PX morphisms": C.n_mor, "P2X morphisms": C2.n_mor}
    return rep
