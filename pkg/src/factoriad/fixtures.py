"""The bundled corpus of small categories."""

from __future__ import annotations

from .fincat import FinCategory


def _thin_chain(n: int, names: dict[tuple[int, int], str]) -> FinCategory:
    objs = [str(i) for i in range(n)]
    mors = [(f"id{i}", str(i), str(i)) for i in range(n)]
    mors += [(names[i, j], str(i), str(j)) for i in range(n) for j in range(i + 1, n)]
    comp = {
        (names[j, k], names[i, j]): names[i, k]
        for i in range(n) for j in range(i + 1, n) for k in range(j + 1, n)
    }
    return FinCategory.from_tables(objs, mors, {o: f"id{o}" for o in objs}, comp)


def empty() -> FinCategory:
    return FinCategory.from_tables([], [], {}, {})


def point() -> FinCategory:
    return FinCategory.from_tables(["*"], [("1", "*", "*")], {"*": "1"}, {})


def two() -> FinCategory:
    return _thin_chain(2, {(0, 1): "a"})


def three() -> FinCategory:
    return _thin_chain(3, {(0, 1): "f", (1, 2): "g", (0, 2): "gf"})


def idem() -> FinCategory:
    return FinCategory.from_tables(
        ["*"], [("1", "*", "*"), ("e", "*", "*")], {"*": "1"}, {("e", "e"): "e"}
    )


def split() -> FinCategory:
    """A retract: p o s = idB, with the idempotent e = s o p on A."""
    return FinCategory.from_tables(
        ["A", "B"],
        [("idA", "A", "A"), ("idB", "B", "B"), ("p", "A", "B"), ("s", "B", "A"), ("e", "A", "A")],
        {"A": "idA", "B": "idB"},
        {
            ("p", "s"): "idB",
            ("s", "p"): "e",
            ("e", "e"): "e",
            ("p", "e"): "p",
            ("e", "s"): "s",
        },
    )


def pair() -> FinCategory:
    return FinCategory.from_tables(
        ["A", "B"],
        [("idA", "A", "A"), ("idB", "B", "B"), ("f", "A", "B"), ("g", "A", "B")],
        {"A": "idA", "B": "idB"},
        {},
    )


def iso() -> FinCategory:
    """Two isomorphic objects, u and v mutually inverse."""
    return FinCategory.from_tables(
        ["A", "B"],
        [("idA", "A", "A"), ("idB", "B", "B"), ("u", "A", "B"), ("v", "B", "A")],
        {"A": "idA", "B": "idB"},
        {("v", "u"): "idA", ("u", "v"): "idB"},
    )


def z2() -> FinCategory:
    return FinCategory.from_tables(
        ["*"], [("1", "*", "*"), ("r", "*", "*")], {"*": "1"}, {("r", "r"): "1"}
    )


CORE = ("two", "three", "idem", "split", "pair")
EXTRA = ("iso", "z2")

_BUILDERS = {
    "empty": empty, "point": point, "two": two, "three": three, "idem": idem,
    "split": split, "pair": pair, "iso": iso, "z2": z2,
}
_CACHE: dict[str, FinCategory] = {}


def get(name: str) -> FinCategory:
    """Shared instance, so derived constructions cached on it are reused."""
    if name not in _CACHE:
        _CACHE[name] = _BUILDERS[name]()
    return _CACHE[name]


def names() -> list[str]:
    return list(_BUILDERS)
