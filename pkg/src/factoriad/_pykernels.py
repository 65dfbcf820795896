"""Pure-Python kernels.  Same algorithms and visiting order as ``_ckernels``.

A category reaches these functions as its flat layout::

    dom, cod, out_ptr, out_idx, in_ptr, pos_out, pos_in, comp_off, comp

with ``g o f`` stored at
``comp[comp_off[b] + pos_out[g] * (in_ptr[b + 1] - in_ptr[b]) + pos_in[f]]``
for ``b = cod[f] = dom[g]``.
"""

from __future__ import annotations

from bisect import bisect_left

import numpy as np

BACKEND = "python"


def _lists(*arrays):
    return [np.asarray(a).tolist() for a in arrays]


def _composer(in_ptr, pos_out, pos_in, comp_off, comp, cod):
    def compose(g, f):
        b = cod[f]
        return comp[comp_off[b] + pos_out[g] * (in_ptr[b + 1] - in_ptr[b]) + pos_in[f]]

    return compose


def _buckets(x, cod, out_ptr, out_idx, compose):
    bucket: dict[int, list[int]] = {}
    b = cod[x]
    for k in range(out_ptr[b], out_ptr[b + 1]):
        f2 = out_idx[k]
        bucket.setdefault(compose(f2, x), []).append(f2)
    return bucket


def commuting_squares(dom, cod, out_ptr, out_idx, in_ptr, pos_out, pos_in, comp_off, comp):
    """All commuting squares ``(x, y, top, bottom)`` with ``bottom o x == y o top``."""
    dom, cod, out_ptr, out_idx, in_ptr, pos_out, pos_in, comp_off, comp = _lists(
        dom, cod, out_ptr, out_idx, in_ptr, pos_out, pos_in, comp_off, comp
    )
    compose = _composer(in_ptr, pos_out, pos_in, comp_off, comp, cod)
    src, tgt, top, bot = [], [], [], []
    for x in range(len(dom)):
        bucket = _buckets(x, cod, out_ptr, out_idx, compose)
        a = dom[x]
        for k in range(out_ptr[a], out_ptr[a + 1]):
            f1 = out_idx[k]
            c = cod[f1]
            for kk in range(out_ptr[c], out_ptr[c + 1]):
                y = out_idx[kk]
                for f2 in bucket.get(compose(y, f1), ()):
                    src.append(x)
                    tgt.append(y)
                    top.append(f1)
                    bot.append(f2)
    return tuple(np.asarray(v, dtype=np.int32) for v in (src, tgt, top, bot))


def square_composition(
    dom, cod, in_ptr, pos_out, pos_in, comp_off, comp,
    sq_src, sq_tgt, sq_top, sq_bot,
    q_out_ptr, q_in_ptr, q_in_idx, q_comp_off,
):
    """Composition table of the square category (squares sorted by src, tgt, top, bot)."""
    dom, cod, in_ptr, pos_out, pos_in, comp_off, comp = _lists(
        dom, cod, in_ptr, pos_out, pos_in, comp_off, comp
    )
    S, T, TOP, BOT, q_out_ptr, q_in_ptr, q_in_idx, q_comp_off = _lists(
        sq_src, sq_tgt, sq_top, sq_bot, q_out_ptr, q_in_ptr, q_in_idx, q_comp_off
    )
    compose = _composer(in_ptr, pos_out, pos_in, comp_off, comp, cod)
    n = len(dom)
    keys = [(T[i] * n + TOP[i]) * n + BOT[i] for i in range(len(S))]
    out = [-1] * (q_comp_off[-1] if q_comp_off else 0)
    for b in range(len(q_out_ptr) - 1):
        lo_in, hi_in = q_in_ptr[b], q_in_ptr[b + 1]
        n_in = hi_in - lo_in
        base = q_comp_off[b]
        for j, g in enumerate(range(q_out_ptr[b], q_out_ptr[b + 1])):
            for i in range(n_in):
                f = q_in_idx[lo_in + i]
                s = S[f]
                key = (T[g] * n + compose(TOP[g], TOP[f])) * n + compose(BOT[g], BOT[f])
                lo, hi = q_out_ptr[s], q_out_ptr[s + 1]
                pos = bisect_left(keys, key, lo, hi)
                out[base + j * n_in + i] = pos if pos < hi and keys[pos] == key else -1
    return np.asarray(out, dtype=np.int32)


def associativity_violation(dom, cod, out_ptr, out_idx, in_ptr, pos_out, pos_in, comp_off, comp):
    """First triple ``(h, g, f)`` with ``h(gf) != (hg)f``, or ``None``."""
    dom, cod, out_ptr, out_idx, in_ptr, pos_out, pos_in, comp_off, comp = _lists(
        dom, cod, out_ptr, out_idx, in_ptr, pos_out, pos_in, comp_off, comp
    )
    compose = _composer(in_ptr, pos_out, pos_in, comp_off, comp, cod)
    for f in range(len(dom)):
        b = cod[f]
        for k in range(out_ptr[b], out_ptr[b + 1]):
            g = out_idx[k]
            gf = compose(g, f)
            c = cod[g]
            for kk in range(out_ptr[c], out_ptr[c + 1]):
                h = out_idx[kk]
                if compose(h, gf) != compose(compose(h, g), f):
                    return (h, g, f)
    return None


def square_scan(
    dom, cod, out_ptr, out_idx, in_ptr, pos_out, pos_in, comp_off, comp,
    a1, t1, b1, a2, t2, b2, mode,
    x_dom, x_cod, x_in_ptr, x_pos_out, x_pos_in, x_comp_off, x_comp,
):
    """Compare two componentwise evaluations on every commuting square.

    A square ``(x, y, f1, f2)`` evaluates to ``(a[x], a[y], t[f1], b[f2])``.
    Mode 0 compares the 4-tuples; mode 1 compares ``(a[x], a[y], b[f2] o a[x])``
    with the composite taken in the base category given by the ``x_*`` arrays.
    Returns ``(squares_scanned, first_violation_or_None)``.
    """
    dom, cod, out_ptr, out_idx, in_ptr, pos_out, pos_in, comp_off, comp = _lists(
        dom, cod, out_ptr, out_idx, in_ptr, pos_out, pos_in, comp_off, comp
    )
    a1, t1, b1, a2, t2, b2 = _lists(a1, t1, b1, a2, t2, b2)
    compose = _composer(in_ptr, pos_out, pos_in, comp_off, comp, cod)
    if mode == 1:
        x_dom, x_cod, x_in_ptr, x_pos_out, x_pos_in, x_comp_off, x_comp = _lists(
            x_dom, x_cod, x_in_ptr, x_pos_out, x_pos_in, x_comp_off, x_comp
        )
        xcompose = _composer(x_in_ptr, x_pos_out, x_pos_in, x_comp_off, x_comp, x_cod)
    count = 0
    for x in range(len(dom)):
        bucket = _buckets(x, cod, out_ptr, out_idx, compose)
        a = dom[x]
        for k in range(out_ptr[a], out_ptr[a + 1]):
            f1 = out_idx[k]
            c = cod[f1]
            for kk in range(out_ptr[c], out_ptr[c + 1]):
                y = out_idx[kk]
                for f2 in bucket.get(compose(y, f1), ()):
                    count += 1
                    if a1[x] != a2[x] or a1[y] != a2[y]:
                        return count, (x, y, f1, f2)
                    if mode == 0:
                        if t1[f1] != t2[f1] or b1[f2] != b2[f2]:
                            return count, (x, y, f1, f2)
                    elif x_dom[b1[f2]] != x_cod[a1[x]] or x_dom[b2[f2]] != x_cod[a2[x]]:
                        return count, (x, y, f1, f2)
                    elif xcompose(b1[f2], a1[x]) != xcompose(b2[f2], a2[x]):
                        return count, (x, y, f1, f2)
    return count, None
