"""Compare the compiled and pure-Python kernel backends.

    python3 benchmarks/bench_kernels.py [--repeat N] [--full] [--json out.json]

Each workload runs both backends on identical inputs, checks that the
results agree, and reports the best wall time of ``--repeat`` runs.
``--full`` adds the P associativity scan on split (about a minute in pure
Python).
"""

from __future__ import annotations

import argparse
import json
import platform
import sys
import time

import numpy as np

from factoriad import _pykernels
from factoriad import fixtures as fx
from factoriad.arrowmonad import arrow_category

try:
    from factoriad import _ckernels
except ImportError:
    sys.exit("compiled kernels are not built; run `pip install -e . --no-build-isolation` first")


def _square_args(X):
    T = arrow_category(X)
    C = T.cat
    return (
        X.dom, X.cod, X.layout.in_ptr, X.layout.pos_out, X.layout.pos_in, X.layout.comp_off, X.comp,
        T.src, T.tgt, T.top, T.bot,
        C.layout.out_ptr, C.layout.in_ptr, C.layout.in_idx, C.layout.comp_off,
    )


def _scan_args(X, mode):
    """The morphism half of the associativity law, as the monad check builds it."""
    from factoriad.arrowmonad import P
    from factoriad.freyd import Fr

    monad = P if mode == 0 else Fr
    T1 = monad.apply(X)
    T2 = monad.apply(T1.cat)
    m = monad.mult(X)
    a = lambda v: np.ascontiguousarray(v, dtype=np.int32)  # noqa: E731
    return (
        *T2.cat.kernel_args,
        a(T1.diag[T2.diag]), a(T1.top[T2.top]), a(T1.bot[T2.bot]),
        a(T1.diag[m.on_morphisms]), a(T1.top[m.on_morphisms]), a(T1.bot[m.on_morphisms]), mode,
        X.dom, X.cod, X.layout.in_ptr, X.layout.pos_out, X.layout.pos_in, X.layout.comp_off, X.comp,
    )


def workloads(full: bool):
    split = fx.get("split")
    P_split = arrow_category(split).cat
    PP_split = arrow_category(P_split).cat
    out = [
        ("commuting_squares  P(split)", "commuting_squares", P_split.kernel_args),
        ("commuting_squares  P2(split)", "commuting_squares", PP_split.kernel_args),
        ("square_composition P2(split)", "square_composition", _square_args(P_split)),
        ("associativity      P2(split)", "associativity_violation", PP_split.kernel_args),
        ("square_scan P      idem", "square_scan", _scan_args(fx.get("idem"), 0)),
        ("square_scan P      pair", "square_scan", _scan_args(fx.get("pair"), 0)),
        ("square_scan Fr     split", "square_scan", _scan_args(split, 1)),
    ]
    if full:
        out.append(("square_scan P      split", "square_scan", _scan_args(split, 0)))
    return out


def _same(a, b) -> bool:
    if isinstance(a, tuple) and a and isinstance(a[0], np.ndarray):
        return all(np.array_equal(x, y) for x, y in zip(a, b))
    if isinstance(a, np.ndarray):
        return np.array_equal(a, b)
    return a == b


def best_of(fn, args, repeat):
    times = []
    result = None
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn(*args)
        times.append(time.perf_counter() - start)
    return min(times), result


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--full", action="store_true")
    ap.add_argument("--json", metavar="PATH")
    args = ap.parse_args(argv)

    rows = []
    print(f"{'workload':32s} {'cython s':>10s} {'python s':>10s} {'speedup':>9s}")
    for label, name, kargs in workloads(args.full):
        tc, rc = best_of(getattr(_ckernels, name), kargs, args.repeat)
        tp, rp = best_of(getattr(_pykernels, name), kargs, 1 if args.full else args.repeat)
        if not _same(rc, rp):
            print(f"{label}: backends disagree", file=sys.stderr)
            return 1
        rows.append({"workload": label.split()[0], "input": label.split()[-1], "cython_s": tc, "python_s": tp})
        print(f"{label:32s} {tc:10.4f} {tp:10.4f} {tp / tc:8.1f}x")
    if args.json:
        meta = {"python": platform.python_version(), "machine": platform.machine(), "numpy": np.__version__}
        with open(args.json, "w") as fh:
            json.dump({"meta": meta, "rows": rows}, fh, indent=2, sort_keys=True)
    return 0


if __name__ == "__main__":
    sys.exit(main())
