"""Finite categories as explicit tables, and the brute-force predicates on them.

Objects and morphisms are addressed by integer index; names are kept for I/O
and reports.  Composition is stored densely over composable pairs only: the
block for an object ``b`` is an ``n_out(b) x n_in(b)`` table of the
composites ``g o f`` with ``cod f = b = dom g``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterable, Iterator, Mapping, Sequence

import numpy as np

from . import kernels
from .errors import CategoryError, CongruenceError

I32 = np.int32


def _arr(values) -> np.ndarray:
    a = np.asarray(values, dtype=I32)
    if a.ndim != 1:
        a = a.reshape(-1)
    return np.ascontiguousarray(a)


def _freeze(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class Layout:
    out_ptr: np.ndarray
    out_idx: np.ndarray
    in_ptr: np.ndarray
    in_idx: np.ndarray
    pos_out: np.ndarray
    pos_in: np.ndarray
    comp_off: np.ndarray

    @classmethod
    def build(cls, n_obj: int, dom: np.ndarray, cod: np.ndarray) -> "Layout":
        n = len(dom)

        def csr(key):
            counts = np.bincount(key, minlength=n_obj) if n else np.zeros(n_obj, dtype=np.int64)
            ptr = np.zeros(n_obj + 1, dtype=np.int64)
            np.cumsum(counts, out=ptr[1:])
            idx = np.argsort(key, kind="stable")
            pos = np.empty(n, dtype=np.int64)
            pos[idx] = np.arange(n) - ptr[key[idx]]
            return _arr(ptr), _arr(idx), _arr(pos)

        out_ptr, out_idx, pos_out = csr(dom)
        in_ptr, in_idx, pos_in = csr(cod)
        block = np.diff(out_ptr).astype(np.int64) * np.diff(in_ptr).astype(np.int64)
        comp_off = np.zeros(n_obj + 1, dtype=np.int64)
        np.cumsum(block, out=comp_off[1:])
        if comp_off[-1] >= 2**31:
            raise CategoryError(f"composition table too large ({comp_off[-1]} composable pairs)")
        return cls(*(_freeze(a) for a in (out_ptr, out_idx, in_ptr, in_idx, pos_out, pos_in, _arr(comp_off))))

    def slot(self, g: np.ndarray, f: np.ndarray, cod: np.ndarray) -> np.ndarray:
        b = cod[f]
        n_in = self.in_ptr[b + 1] - self.in_ptr[b]
        return self.comp_off[b].astype(np.int64) + self.pos_out[g].astype(np.int64) * n_in + self.pos_in[f]


@dataclass(frozen=True)
class Violation:
    law: str
    witness: tuple[str, ...]
    detail: str = ""

    def as_dict(self) -> dict:
        return {"law": self.law, "witness": list(self.witness), "detail": self.detail}


class FinCategory:
    """A finite category given by total tables.

    Instances are immutable; derived data is cached on first use.  ``origin``
    points back at the construction that produced the category (an arrow
    category, a quotient, ...) so iterated constructions can be unwound.
    """

    def __init__(
        self,
        objects: Sequence[str],
        morphisms: Sequence[str],
        dom,
        cod,
        identity,
        comp=None,
        *,
        layout: Layout | None = None,
        origin=None,
    ):
        self.objects = tuple(objects)
        self.morphisms = tuple(morphisms)
        self.dom = _freeze(_arr(dom))
        self.cod = _freeze(_arr(cod))
        self.identity = _freeze(_arr(identity))
        if len(self.dom) != len(self.morphisms) or len(self.cod) != len(self.morphisms):
            raise CategoryError("dom/cod tables do not cover the morphisms")
        if len(self.identity) != len(self.objects):
            raise CategoryError("identity table does not cover the objects")
        self.layout = layout or Layout.build(len(self.objects), self.dom, self.cod)
        if comp is None:
            comp = np.full(int(self.layout.comp_off[-1]), -1, dtype=I32)
        self.comp = _freeze(_arr(comp))
        self.origin = origin

    # -- construction ---------------------------------------------------

    @classmethod
    def from_tables(
        cls,
        objects: Iterable[str],
        morphisms: Iterable[tuple[str, str, str]],
        identities: Mapping[str, str],
        composition: Mapping[tuple[str, str], str],
        *,
        check: bool = True,
    ) -> "FinCategory":
        """Build from name tables; identity composites are implied.

        Objects and morphisms are reordered lexicographically.  Entries in
        ``composition`` override the implied identity composites, which lets
        tests build deliberately broken tables with ``check=False``.
        """
        objects = list(objects)
        morphisms = list(morphisms)
        if len(set(objects)) != len(objects):
            dup = next(o for o in objects if objects.count(o) > 1)
            raise CategoryError(f"duplicate object {dup!r}")
        names = [m[0] for m in morphisms]
        if len(set(names)) != len(names):
            dup = next(m for m in names if names.count(m) > 1)
            raise CategoryError(f"duplicate morphism {dup!r}")
        obj_names = sorted(objects)
        mor_names = sorted(names)
        oi = {o: i for i, o in enumerate(obj_names)}
        mi = {m: i for i, m in enumerate(mor_names)}
        dom = np.zeros(len(mor_names), dtype=I32)
        cod = np.zeros(len(mor_names), dtype=I32)
        for name, d, c in morphisms:
            for end in (d, c):
                if end not in oi:
                    raise CategoryError(f"morphism {name!r}: unknown object {end!r}")
            dom[mi[name]] = oi[d]
            cod[mi[name]] = oi[c]
        ident = np.zeros(len(obj_names), dtype=I32)
        for o in obj_names:
            if o not in identities:
                raise CategoryError(f"object {o!r} has no identity")
        for o, m in identities.items():
            if o not in oi:
                raise CategoryError(f"identities: unknown object {o!r}")
            if m not in mi:
                raise CategoryError(f"identities: unknown morphism {m!r}")
            ident[oi[o]] = mi[m]
        layout = Layout.build(len(obj_names), dom, cod)
        comp = np.full(int(layout.comp_off[-1]), -1, dtype=I32)

        def put(g, f, h):
            comp[layout.slot(np.array([g]), np.array([f]), cod)[0]] = h

        for f in range(len(mor_names)):
            if dom[ident[cod[f]]] == cod[f] and cod[ident[cod[f]]] == cod[f]:
                put(ident[cod[f]], f, f)
            if dom[ident[dom[f]]] == dom[f] and cod[ident[dom[f]]] == dom[f]:
                put(f, ident[dom[f]], f)
        for (g, f), h in composition.items():
            for m in (g, f, h):
                if m not in mi:
                    raise CategoryError(f"composition ({g}, {f}): unknown morphism {m!r}")
            if dom[mi[g]] != cod[mi[f]]:
                raise CategoryError(f"composition ({g}, {f}): pair is not composable")
            put(mi[g], mi[f], mi[h])
        cat = cls(obj_names, mor_names, dom, cod, ident, comp, layout=layout)
        if check:
            problems = validate_category(cat)
            if problems:
                raise CategoryError(
                    "not a category: " + "; ".join(f"{v.law} {v.witness}" for v in problems[:5])
                )
        return cat

    # -- basic access ---------------------------------------------------

    @property
    def n_obj(self) -> int:
        return len(self.objects)

    @property
    def n_mor(self) -> int:
        return len(self.morphisms)

    @cached_property
    def _obj_index(self) -> dict[str, int]:
        return {o: i for i, o in enumerate(self.objects)}

    @cached_property
    def _mor_index(self) -> dict[str, int]:
        return {m: i for i, m in enumerate(self.morphisms)}

    def obj(self, name: str) -> int:
        try:
            return self._obj_index[name]
        except KeyError:
            raise CategoryError(f"unknown object {name!r}") from None

    def mor(self, name: str) -> int:
        try:
            return self._mor_index[name]
        except KeyError:
            raise CategoryError(f"unknown morphism {name!r}") from None

    def mors(self, names: Iterable[str]) -> frozenset[int]:
        return frozenset(self.mor(n) for n in names)

    def names(self, idx: Iterable[int]) -> list[str]:
        return sorted(self.morphisms[i] for i in idx)

    @property
    def kernel_args(self) -> tuple:
        L = self.layout
        return (self.dom, self.cod, L.out_ptr, L.out_idx, L.in_ptr, L.pos_out, L.pos_in, L.comp_off, self.comp)

    def compose(self, g: int, f: int) -> int:
        if self.dom[g] != self.cod[f]:
            raise CategoryError(f"{self.morphisms[g]} o {self.morphisms[f]} is not composable")
        return int(self.comp[self.layout.slot(np.array([g]), np.array([f]), self.cod)[0]])

    def compose_many(self, g, f) -> np.ndarray:
        """Vectorised composition; ``-1`` where the pair is not composable."""
        g = np.asarray(g, dtype=np.int64)
        f = np.asarray(f, dtype=np.int64)
        out = np.full(g.shape, -1, dtype=I32)
        if g.size == 0:
            return out
        ok = (g >= 0) & (f >= 0)
        ok[ok] &= self.dom[g[ok]] == self.cod[f[ok]]
        out[ok] = self.comp[self.layout.slot(g[ok], f[ok], self.cod)]
        return out

    def out_of(self, x: int) -> np.ndarray:
        L = self.layout
        return L.out_idx[L.out_ptr[x]:L.out_ptr[x + 1]]

    def into(self, x: int) -> np.ndarray:
        L = self.layout
        return L.in_idx[L.in_ptr[x]:L.in_ptr[x + 1]]

    @cached_property
    def _homs(self) -> dict[tuple[int, int], np.ndarray]:
        homs: dict[tuple[int, int], list[int]] = {}
        for f in range(self.n_mor):
            homs.setdefault((int(self.dom[f]), int(self.cod[f])), []).append(f)
        return {k: _freeze(_arr(v)) for k, v in homs.items()}

    def hom(self, x: int, y: int) -> np.ndarray:
        return self._homs.get((x, y), _EMPTY)

    @cached_property
    def composable_pairs(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """All ``(g, f, g o f)`` triples as three aligned arrays."""
        L = self.layout
        gs, fs = [], []
        for b in range(self.n_obj):
            outs = L.out_idx[L.out_ptr[b]:L.out_ptr[b + 1]]
            ins = L.in_idx[L.in_ptr[b]:L.in_ptr[b + 1]]
            if len(outs) and len(ins):
                gs.append(np.repeat(outs, len(ins)))
                fs.append(np.tile(ins, len(outs)))
        if not gs:
            return _EMPTY, _EMPTY, _EMPTY
        g = np.concatenate(gs)
        f = np.concatenate(fs)
        return _freeze(g), _freeze(f), _freeze(self.compose_many(g, f))

    @cached_property
    def is_identity(self) -> np.ndarray:
        mask = np.zeros(self.n_mor, dtype=bool)
        mask[self.identity] = True
        return _freeze(mask)

    @cached_property
    def inverse(self) -> np.ndarray:
        """Two-sided inverse of each morphism, ``-1`` if none."""
        inv = np.full(self.n_mor, -1, dtype=I32)
        for f in range(self.n_mor):
            a, b = int(self.dom[f]), int(self.cod[f])
            for g in self.hom(b, a):
                if self.compose(g, f) == self.identity[a] and self.compose(f, g) == self.identity[b]:
                    inv[f] = g
                    break
        return _freeze(inv)

    @cached_property
    def iso_mask(self) -> np.ndarray:
        return _freeze(self.inverse >= 0)

    @cached_property
    def epi_mask(self) -> np.ndarray:
        # f is epi iff g |-> g o f is injective on morphisms out of cod f
        mask = np.ones(self.n_mor, dtype=bool)
        for f in range(self.n_mor):
            outs = self.out_of(int(self.cod[f]))
            vals = self.compose_many(outs, np.full(len(outs), f))
            mask[f] = len(np.unique(vals)) == len(vals)
        return _freeze(mask)

    @cached_property
    def mono_mask(self) -> np.ndarray:
        mask = np.ones(self.n_mor, dtype=bool)
        for f in range(self.n_mor):
            ins = self.into(int(self.dom[f]))
            vals = self.compose_many(np.full(len(ins), f), ins)
            mask[f] = len(np.unique(vals)) == len(vals)
        return _freeze(mask)

    @cached_property
    def isos(self) -> frozenset[int]:
        return frozenset(np.flatnonzero(self.iso_mask).tolist())

    def __repr__(self) -> str:
        return f"FinCategory({self.n_obj} objects, {self.n_mor} morphisms)"


_EMPTY = _freeze(np.zeros(0, dtype=I32))


# -- validation -----------------------------------------------------------


def validate_category(C: FinCategory) -> list[Violation]:
    """Every violated law instance; empty iff ``C`` is a category."""
    out: list[Violation] = []
    M = C.morphisms
    g, f, gf = C.composable_pairs
    for k in np.flatnonzero(gf < 0):
        out.append(Violation("incomplete table", (M[g[k]], M[f[k]]), "missing composite"))
    ok = gf >= 0
    bad = ok.copy()
    bad[ok] = (C.dom[gf[ok]] != C.dom[f[ok]]) | (C.cod[gf[ok]] != C.cod[g[ok]])
    for k in np.flatnonzero(bad):
        out.append(Violation("coherence", (M[g[k]], M[f[k]]), f"composite {M[gf[k]]} has the wrong type"))
    for o in range(C.n_obj):
        i = C.identity[o]
        if C.dom[i] != o or C.cod[i] != o:
            out.append(Violation("identity", (C.objects[o], M[i]), "identity is not an endomorphism"))
    if out:
        return out
    for x in range(C.n_mor):
        if C.compose(x, int(C.identity[C.dom[x]])) != x:
            out.append(Violation("identity", (M[x], M[C.identity[C.dom[x]]]), "right identity law"))
        if C.compose(int(C.identity[C.cod[x]]), x) != x:
            out.append(Violation("identity", (M[C.identity[C.cod[x]]], M[x]), "left identity law"))
    hit = kernels.associativity_violation(*C.kernel_args)
    if hit is not None:
        h, g1, f1 = hit
        out.append(Violation("associativity", (M[h], M[g1], M[f1]), "h(gf) != (hg)f"))
    return out


# -- functors and natural transformations -----------------------------------


class Functor:
    def __init__(self, source: FinCategory, target: FinCategory, on_objects, on_morphisms, name: str = ""):
        self.source = source
        self.target = target
        self.on_objects = _freeze(_arr(on_objects))
        self.on_morphisms = _freeze(_arr(on_morphisms))
        self.name = name
        if len(self.on_objects) != source.n_obj or len(self.on_morphisms) != source.n_mor:
            raise CategoryError(f"functor {name!r}: mappings are not total")

    @classmethod
    def identity(cls, C: FinCategory) -> "Functor":
        return cls(C, C, np.arange(C.n_obj), np.arange(C.n_mor), "1")

    @classmethod
    def from_names(cls, source, target, on_objects: Mapping[str, str], on_morphisms: Mapping[str, str], name=""):
        fo = [target.obj(on_objects[o]) for o in source.objects]
        fm = [target.mor(on_morphisms[m]) for m in source.morphisms]
        return cls(source, target, fo, fm, name)

    def __matmul__(self, other: "Functor") -> "Functor":
        """``self @ other`` is ``self o other``."""
        if other.target is not self.source:
            raise CategoryError("functors are not composable")
        return Functor(
            other.source,
            self.target,
            self.on_objects[other.on_objects],
            self.on_morphisms[other.on_morphisms],
            f"{self.name}.{other.name}",
        )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Functor)
            and self.source is other.source
            and self.target is other.target
            and np.array_equal(self.on_objects, other.on_objects)
            and np.array_equal(self.on_morphisms, other.on_morphisms)
        )

    __hash__ = None  # type: ignore[assignment]

    def as_names(self) -> tuple[dict[str, str], dict[str, str]]:
        S, T = self.source, self.target
        return (
            {S.objects[i]: T.objects[v] for i, v in enumerate(self.on_objects)},
            {S.morphisms[i]: T.morphisms[v] for i, v in enumerate(self.on_morphisms)},
        )

    def __repr__(self) -> str:
        return f"Functor({self.name or '?'}: {self.source!r} -> {self.target!r})"


def functor_violations(F: Functor) -> list[str]:
    S, T = F.source, F.target
    fo, fm = F.on_objects, F.on_morphisms
    out = []
    if len(fo) and (fo.min() < 0 or fo.max() >= T.n_obj):
        return ["object image out of range"]
    if len(fm) and (fm.min() < 0 or fm.max() >= T.n_mor):
        return ["morphism image out of range"]
    for f in np.flatnonzero((T.dom[fm] != fo[S.dom]) | (T.cod[fm] != fo[S.cod])):
        out.append(f"dom/cod not preserved at {S.morphisms[f]}")
    if out:
        return out
    for o in np.flatnonzero(fm[S.identity] != T.identity[fo]):
        out.append(f"identity not preserved at {S.objects[o]}")
    g, f, gf = S.composable_pairs
    if len(g):
        bad = np.flatnonzero(T.compose_many(fm[g], fm[f]) != fm[gf])
        for k in bad[:20]:
            out.append(f"composition not preserved at ({S.morphisms[g[k]]}, {S.morphisms[f[k]]})")
    return out


def check_functor(F: Functor) -> bool:
    return not functor_violations(F)


class NatTransformation:
    def __init__(self, source: Functor, target: Functor, components, name: str = ""):
        if source.source is not target.source or source.target is not target.target:
            raise CategoryError("natural transformation between non-parallel functors")
        self.source = source
        self.target = target
        self.components = _freeze(_arr(components))
        self.name = name

    @classmethod
    def identity(cls, F: Functor) -> "NatTransformation":
        return cls(F, F, F.target.identity[F.on_objects])


def natural_violations(alpha: NatTransformation) -> list[str]:
    F, G = alpha.source, alpha.target
    C, D = F.source, F.target
    a = alpha.components
    out = []
    for o in range(C.n_obj):
        c = a[o]
        if not (0 <= c < D.n_mor) or D.dom[c] != F.on_objects[o] or D.cod[c] != G.on_objects[o]:
            out.append(f"component at {C.objects[o]} has the wrong type")
    if out:
        return out
    lhs = D.compose_many(G.on_morphisms, a[C.dom])
    rhs = D.compose_many(a[C.cod], F.on_morphisms)
    for f in np.flatnonzero(lhs != rhs):
        out.append(f"naturality fails at {C.morphisms[f]}")
    return out


def check_natural(alpha: NatTransformation) -> bool:
    return not natural_violations(alpha)


# -- brute-force predicates ------------------------------------------------


def is_epi(C: FinCategory, f: int) -> bool:
    return bool(C.epi_mask[f])


def is_mono(C: FinCategory, f: int) -> bool:
    return bool(C.mono_mask[f])


def is_iso(C: FinCategory, f: int) -> bool:
    return bool(C.iso_mask[f])


def fill_ins(C: FinCategory, e: int, m: int, u: int, v: int) -> list[int]:
    """All ``w: cod e -> dom m`` with ``w o e == u`` and ``m o w == v``."""
    out = []
    for w in C.hom(int(C.cod[e]), int(C.dom[m])):
        if C.compose(int(w), e) == u and C.compose(m, int(w)) == v:
            out.append(int(w))
    return out


def orthogonality_witness(C: FinCategory, e: int, m: int) -> tuple[int, int, int] | None:
    """A commuting square ``(u, v)`` without a unique fill-in, with its fill-in count."""
    A, B = int(C.dom[e]), int(C.cod[e])
    X, Y = int(C.dom[m]), int(C.cod[m])
    for u in C.hom(A, X):
        mu = C.compose(m, int(u))
        for v in C.hom(B, Y):
            if mu == C.compose(int(v), e):
                n = len(fill_ins(C, e, m, int(u), int(v)))
                if n != 1:
                    return int(u), int(v), n
    return None


def orthogonal(C: FinCategory, e: int, m: int) -> bool:
    return orthogonality_witness(C, e, m) is None


def hom_set(C: FinCategory, x: str, y: str) -> list[str]:
    return sorted(C.morphisms[i] for i in C.hom(C.obj(x), C.obj(y)))


# -- congruences and quotients ----------------------------------------------


class UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: int, y: int) -> bool:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        # smaller index becomes the root: class ids stay deterministic
        if ry < rx:
            rx, ry = ry, rx
        self.parent[ry] = rx
        return True


class Congruence:
    """A partition of the morphisms of ``base``; classes ordered by least member."""

    def __init__(self, base: FinCategory, class_of):
        class_of = np.asarray(class_of, dtype=np.int64)
        if len(class_of) != base.n_mor:
            raise CongruenceError("partition does not cover the morphisms")
        # renumber classes by first occurrence
        _, first, inv = np.unique(class_of, return_index=True, return_inverse=True)
        rank = np.empty(len(first), dtype=np.int64)
        rank[np.argsort(first, kind="stable")] = np.arange(len(first))
        self.base = base
        self.class_of = _freeze(_arr(rank[inv]))

    @classmethod
    def from_classes(cls, base: FinCategory, classes: Iterable[Iterable[int]]) -> "Congruence":
        label = np.full(base.n_mor, -1, dtype=np.int64)
        for k, members in enumerate(classes):
            for m in members:
                if not 0 <= m < base.n_mor:
                    raise CongruenceError(f"unknown morphism index {m}")
                if label[m] >= 0:
                    raise CongruenceError(f"morphism {base.morphisms[m]} appears in two classes")
                label[m] = k
        if (label < 0).any():
            missing = base.morphisms[int(np.flatnonzero(label < 0)[0])]
            raise CongruenceError(f"morphism {missing} is in no class")
        return cls(base, label)

    @classmethod
    def discrete(cls, base: FinCategory) -> "Congruence":
        return cls(base, np.arange(base.n_mor))

    @property
    def n_classes(self) -> int:
        return int(self.class_of.max()) + 1 if len(self.class_of) else 0

    @cached_property
    def classes(self) -> tuple[tuple[int, ...], ...]:
        buckets: list[list[int]] = [[] for _ in range(self.n_classes)]
        for m, c in enumerate(self.class_of.tolist()):
            buckets[c].append(m)
        return tuple(tuple(b) for b in buckets)


def congruence_violations(cong: Congruence) -> list[str]:
    C = cong.base
    cls = cong.class_of
    out = []
    for members in cong.classes:
        m0 = members[0]
        for m in members[1:]:
            if C.dom[m] != C.dom[m0] or C.cod[m] != C.cod[m0]:
                out.append(f"{C.morphisms[m0]} ~ {C.morphisms[m]} are not parallel")
    if out:
        return out
    g, f, gf = C.composable_pairs
    if len(g):
        key = cls[g].astype(np.int64) * (cong.n_classes + 1) + cls[f]
        order = np.lexsort((cls[gf], key))
        k, v = key[order], cls[gf][order]
        clash = np.flatnonzero((k[1:] == k[:-1]) & (v[1:] != v[:-1]))
        for i in clash[:20]:
            a, b = order[i], order[i + 1]
            out.append(
                f"composites ({C.morphisms[g[a]]}, {C.morphisms[f[a]]}) and "
                f"({C.morphisms[g[b]]}, {C.morphisms[f[b]]}) land in different classes"
            )
    return out


def validate_congruence(C: FinCategory, classes) -> bool:
    """True iff ``classes`` is a congruence on ``C``; non-partitions raise."""
    cong = classes if isinstance(classes, Congruence) else Congruence.from_classes(C, classes)
    if cong.base is not C:
        raise CongruenceError("congruence belongs to a different category")
    return not congruence_violations(cong)


def generate_congruence(C: FinCategory, pairs: Iterable[tuple[int, int]]) -> Congruence:
    """Least congruence identifying the given parallel pairs (union-find to a fixed point)."""
    uf = UnionFind(C.n_mor)
    for a, b in pairs:
        if C.dom[a] != C.dom[b] or C.cod[a] != C.cod[b]:
            raise CongruenceError(f"{C.morphisms[a]} and {C.morphisms[b]} are not parallel")
        uf.union(a, b)
    g, f, gf = C.composable_pairs
    while True:
        roots = np.array([uf.find(i) for i in range(C.n_mor)], dtype=np.int64)
        changed = False
        seen: dict[tuple[int, int], int] = {}
        for gi, fi, hi in zip(roots[g].tolist(), roots[f].tolist(), gf.tolist()):
            prev = seen.setdefault((gi, fi), hi)
            if prev != hi:
                changed |= uf.union(prev, hi)
        if not changed:
            return Congruence(C, roots)


def quotient(
    C: FinCategory,
    cong: Congruence,
    namer: Callable[[tuple[int, ...]], str] | None = None,
) -> tuple[FinCategory, Functor]:
    """Quotient category and its projection; objects are unchanged."""
    problems = congruence_violations(cong)
    if problems:
        raise CongruenceError("; ".join(problems[:5]))
    if namer is None:
        def namer(members):
            return "[" + min(C.morphisms[m] for m in members) + "]"
    classes = cong.classes
    cls = cong.class_of
    reps = np.array([c[0] for c in classes], dtype=I32)
    names = [namer(c) for c in classes]
    if len(set(names)) != len(names):
        raise CongruenceError("class names collide")
    Q = FinCategory(C.objects, names, C.dom[reps], C.cod[reps], cls[C.identity])
    qcomp = np.full(len(Q.comp), -1, dtype=I32)
    g, f, gf = C.composable_pairs
    if len(g):
        slots = Q.layout.slot(cls[g], cls[f], Q.cod)
        qcomp[slots] = cls[gf]
        if (qcomp[slots] != cls[gf]).any():
            raise CongruenceError("induced composition is ill-defined")
    Q = FinCategory(C.objects, names, Q.dom, Q.cod, Q.identity, qcomp, layout=Q.layout, origin=cong)
    proj = Functor(C, Q, np.arange(C.n_obj), cls, "p")
    return Q, proj


# -- exhaustive search for functors ------------------------------------------


def search_functors(
    C: FinCategory,
    D: FinCategory,
    fixed_objects: Mapping[int, int] | None = None,
    fixed_morphisms: Mapping[int, int] | None = None,
) -> Iterator[Functor]:
    """Every functor ``C -> D`` extending the given partial assignment.

    Objects are assigned first, then morphisms in index order with composites
    propagated eagerly; a clash backtracks.  Output order is deterministic.
    """
    fixed_objects = dict(fixed_objects or {})
    fixed_morphisms = dict(fixed_morphisms or {})
    free = [o for o in range(C.n_obj) if o not in fixed_objects]
    # composable neighbourhoods: for u, the pairs (g, f, gf) with u in {g, f}
    g_arr, f_arr, gf_arr = (a.tolist() for a in C.composable_pairs)
    touching: list[list[tuple[int, int, int]]] = [[] for _ in range(C.n_mor)]
    for g, f, h in zip(g_arr, f_arr, gf_arr):
        touching[g].append((g, f, h))
        if f != g:
            touching[f].append((g, f, h))
    Ddom, Dcod = D.dom.tolist(), D.cod.tolist()
    Cdom, Ccod = C.dom.tolist(), C.cod.tolist()

    for choice in itertools.product(range(D.n_obj), repeat=len(free)):
        fo = [0] * C.n_obj
        for o, v in fixed_objects.items():
            fo[o] = v
        for o, v in zip(free, choice):
            fo[o] = v
        fm = [-1] * C.n_mor
        trail: list[int] = []

        def assign(u: int, val: int) -> bool:
            queue = [(u, val)]
            while queue:
                u, val = queue.pop()
                if fm[u] >= 0:
                    if fm[u] != val:
                        return False
                    continue
                if Ddom[val] != fo[Cdom[u]] or Dcod[val] != fo[Ccod[u]]:
                    return False
                fm[u] = val
                trail.append(u)
                for g, f, h in touching[u]:
                    if fm[g] >= 0 and fm[f] >= 0:
                        queue.append((h, D.compose(fm[g], fm[f])))
            return True

        def undo(mark: int) -> None:
            while len(trail) > mark:
                fm[trail.pop()] = -1

        ok = True
        for o in range(C.n_obj):
            ok = ok and assign(int(C.identity[o]), int(D.identity[fo[o]]))
        for u, v in fixed_morphisms.items():
            ok = ok and assign(u, v)
        if not ok:
            continue

        def rec(i: int) -> Iterator[Functor]:
            while i < C.n_mor and fm[i] >= 0:
                i += 1
            if i == C.n_mor:
                yield Functor(C, D, fo, fm)
                return
            for val in D.hom(fo[Cdom[i]], fo[Ccod[i]]).tolist():
                mark = len(trail)
                if assign(i, val):
                    yield from rec(i + 1)
                undo(mark)

        yield from rec(0)


def enumerate_functors(C: FinCategory, D: FinCategory) -> list[Functor]:
    return list(search_functors(C, D))


def enumerate_natural_transformations(F: Functor, G: Functor) -> list[NatTransformation]:
    C, D = F.source, F.target
    options = [D.hom(int(F.on_objects[o]), int(G.on_objects[o])).tolist() for o in range(C.n_obj)]
    out = []
    for comps in itertools.product(*options):
        alpha = NatTransformation(F, G, list(comps))
        if check_natural(alpha):
            out.append(alpha)
    return out
