"""JSON file formats: categories (with optional provenance), fs files, choice files."""

from __future__ import annotations

import hashlib
import json
from pathlib import Path
from typing import Any

import numpy as np

from .errors import CategoryError, FactoriadError
from .fincat import FinCategory


class InputError(FactoriadError):
    """Malformed input file; the message carries the position."""


def read_json(path: str | Path) -> tuple[Any, str]:
    """Parsed document and the sha256 of the raw bytes."""
    raw = Path(path).read_bytes()
    try:
        doc = json.loads(raw.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise InputError(f"{path}: not valid UTF-8 JSON ({exc})") from None
    return doc, hashlib.sha256(raw).hexdigest()


def dumps(doc: Any) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _need(doc: dict, key: str, kind: type, where: str):
    if key not in doc:
        raise InputError(f"{where}: missing key {key!r}")
    if not isinstance(doc[key], kind):
        raise InputError(f"{where}.{key}: expected {kind.__name__}")
    return doc[key]


def category_from_dict(doc: Any, where: str = "$", check: bool = True) -> FinCategory:
    """Loader with positional diagnostics; ``check=False`` skips the law check."""
    if not isinstance(doc, dict):
        raise InputError(f"{where}: expected an object")
    objects = []
    seen_obj: set[str] = set()
    for i, o in enumerate(_need(doc, "objects", list, where)):
        name = o.get("name") if isinstance(o, dict) else o
        if not isinstance(name, str):
            raise InputError(f"{where}.objects[{i}]: expected a name")
        if name in seen_obj:
            raise InputError(f"{where}.objects[{i}]: duplicate object {name!r}")
        seen_obj.add(name)
        objects.append(name)
    morphisms = []
    seen: set[str] = set()
    for i, m in enumerate(_need(doc, "morphisms", list, where)):
        pos = f"{where}.morphisms[{i}]"
        if not isinstance(m, dict):
            raise InputError(f"{pos}: expected an object")
        name, d, c = (_need(m, k, str, pos) for k in ("name", "dom", "cod"))
        if name in seen:
            raise InputError(f"{pos}: duplicate morphism {name!r}")
        for end in (d, c):
            if end not in seen_obj:
                raise InputError(f"{pos}: unknown object {end!r}")
        seen.add(name)
        morphisms.append((name, d, c))
    types = {m[0]: (m[1], m[2]) for m in morphisms}
    identities = _need(doc, "identities", dict, where)
    for o, m in identities.items():
        if o not in seen_obj:
            raise InputError(f"{where}.identities: unknown object {o!r}")
        if m not in types:
            raise InputError(f"{where}.identities[{o!r}]: unknown morphism {m!r}")
    for o in objects:
        if o not in identities:
            raise InputError(f"{where}.identities: object {o!r} has no identity")
    ident_names = set(identities.values())
    composition: dict[tuple[str, str], str] = {}
    for i, entry in enumerate(_need(doc, "composition", list, where)):
        pos = f"{where}.composition[{i}]"
        if not (isinstance(entry, list) and len(entry) == 3 and all(isinstance(x, str) for x in entry)):
            raise InputError(f"{pos}: expected [g, f, composite]")
        g, f, h = entry
        for x in entry:
            if x not in types:
                raise InputError(f"{pos}: unknown morphism {x!r}")
        if types[g][0] != types[f][1]:
            raise InputError(f"{pos}: {g} o {f} is not composable")
        if g in ident_names or f in ident_names:
            raise InputError(f"{pos}: identity composite ({g}, {f}) is implied and must not be listed")
        if (g, f) in composition:
            raise InputError(f"{pos}: duplicate entry for ({g}, {f})")
        composition[(g, f)] = h
    try:
        return FinCategory.from_tables(objects, morphisms, identities, composition, check=check)
    except CategoryError as exc:
        raise InputError(f"{where}: {exc}") from None


def load_category(path: str | Path, check: bool = True) -> tuple[FinCategory, str]:
    doc, digest = read_json(path)
    return category_from_dict(doc, str(path), check), digest


def category_to_dict(
    C: FinCategory,
    object_extra: dict[int, dict] | None = None,
    morphism_extra: dict[int, dict] | None = None,
) -> dict:
    """Extended category format; extras become per-entry provenance fields."""
    object_extra = object_extra or {}
    morphism_extra = morphism_extra or {}
    M = C.morphisms
    if object_extra:
        objects = [{"name": o, **object_extra.get(i, {})} for i, o in enumerate(C.objects)]
    else:
        objects = list(C.objects)
    morphisms = [
        {"name": M[f], "dom": C.objects[C.dom[f]], "cod": C.objects[C.cod[f]], **morphism_extra.get(f, {})}
        for f in range(C.n_mor)
    ]
    g, f, gf = C.composable_pairs
    keep = ~(C.is_identity[g] | C.is_identity[f]) if len(g) else np.zeros(0, dtype=bool)
    comp = sorted([M[a], M[b], M[c]] for a, b, c in zip(g[keep], f[keep], gf[keep]))
    return {
        "objects": objects,
        "morphisms": morphisms,
        "identities": {C.objects[o]: M[C.identity[o]] for o in range(C.n_obj)},
        "composition": comp,
    }


def names_in(C: FinCategory, values: Any, where: str) -> frozenset[int]:
    if not isinstance(values, list) or not all(isinstance(v, str) for v in values):
        raise InputError(f"{where}: expected a list of morphism names")
    out = set()
    for i, v in enumerate(values):
        if v not in C._mor_index:
            raise InputError(f"{where}[{i}]: unknown morphism {v!r}")
        if C.mor(v) in out:
            raise InputError(f"{where}[{i}]: duplicate morphism {v!r}")
        out.add(C.mor(v))
    return frozenset(out)


def fs_from_dict(C: FinCategory, doc: Any, where: str = "$") -> tuple[str, frozenset[int], frozenset[int]]:
    """``("ordinary", E, M)`` or ``("strict", E0, M0)``."""
    if not isinstance(doc, dict):
        raise InputError(f"{where}: expected an object")
    if "E" in doc and "M" in doc:
        return "ordinary", names_in(C, doc["E"], f"{where}.E"), names_in(C, doc["M"], f"{where}.M")
    if "E0" in doc and "M0" in doc:
        return "strict", names_in(C, doc["E0"], f"{where}.E0"), names_in(C, doc["M0"], f"{where}.M0")
    raise InputError(f"{where}: expected keys E/M or E0/M0")


def fs_to_dict(C: FinCategory, E, M, strict: bool = False) -> dict:
    ke, km = ("E0", "M0") if strict else ("E", "M")
    return {ke: C.names(E), km: C.names(M)}
