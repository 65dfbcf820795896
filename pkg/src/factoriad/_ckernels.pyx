# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels.  Mirrors ``_pykernels`` function for function."""

import numpy as np
cimport numpy as cnp
from libcpp.vector cimport vector

cnp.import_array()

BACKEND = "cython"

ctypedef int idx_t


cdef inline idx_t _compose(idx_t g, idx_t f, const idx_t[::1] cod, const idx_t[::1] in_ptr,
                           const idx_t[::1] pos_out, const idx_t[::1] pos_in,
                           const idx_t[::1] comp_off, const idx_t[::1] comp) noexcept nogil:
    cdef idx_t b = cod[f]
    return comp[comp_off[b] + pos_out[g] * (in_ptr[b + 1] - in_ptr[b]) + pos_in[f]]


cdef inline void _fill_bucket(idx_t x, const idx_t[::1] cod, const idx_t[::1] out_ptr,
                              const idx_t[::1] out_idx, const idx_t[::1] in_ptr,
                              const idx_t[::1] pos_out, const idx_t[::1] pos_in,
                              const idx_t[::1] comp_off, const idx_t[::1] comp,
                              idx_t[::1] head, idx_t[::1] nxt) noexcept nogil:
    cdef idx_t b = cod[x]
    cdef idx_t k, f2, d
    k = out_ptr[b + 1] - 1
    while k >= out_ptr[b]:
        f2 = out_idx[k]
        d = _compose(f2, x, cod, in_ptr, pos_out, pos_in, comp_off, comp)
        nxt[f2] = head[d]
        head[d] = f2
        k -= 1


cdef inline void _clear_bucket(idx_t x, const idx_t[::1] cod, const idx_t[::1] out_ptr,
                               const idx_t[::1] out_idx, const idx_t[::1] in_ptr,
                               const idx_t[::1] pos_out, const idx_t[::1] pos_in,
                               const idx_t[::1] comp_off, const idx_t[::1] comp,
                               idx_t[::1] head) noexcept nogil:
    cdef idx_t b = cod[x]
    cdef idx_t k
    for k in range(out_ptr[b], out_ptr[b + 1]):
        head[_compose(out_idx[k], x, cod, in_ptr, pos_out, pos_in, comp_off, comp)] = -1


def commuting_squares(const idx_t[::1] dom, const idx_t[::1] cod, const idx_t[::1] out_ptr,
                      const idx_t[::1] out_idx, const idx_t[::1] in_ptr,
                      const idx_t[::1] pos_out, const idx_t[::1] pos_in,
                      const idx_t[::1] comp_off, const idx_t[::1] comp):
    cdef idx_t n = dom.shape[0]
    cdef idx_t x, a, c, k, kk, f1, y, f2
    cdef vector[idx_t] src, tgt, top, bot
    head_arr = np.full(max(n, 1), -1, dtype=np.int32)
    nxt_arr = np.full(max(n, 1), -1, dtype=np.int32)
    cdef idx_t[::1] head = head_arr
    cdef idx_t[::1] nxt = nxt_arr
    with nogil:
        for x in range(n):
            _fill_bucket(x, cod, out_ptr, out_idx, in_ptr, pos_out, pos_in, comp_off, comp, head, nxt)
            a = dom[x]
            for k in range(out_ptr[a], out_ptr[a + 1]):
                f1 = out_idx[k]
                c = cod[f1]
                for kk in range(out_ptr[c], out_ptr[c + 1]):
                    y = out_idx[kk]
                    f2 = head[_compose(y, f1, cod, in_ptr, pos_out, pos_in, comp_off, comp)]
                    while f2 != -1:
                        src.push_back(x)
                        tgt.push_back(y)
                        top.push_back(f1)
                        bot.push_back(f2)
                        f2 = nxt[f2]
            _clear_bucket(x, cod, out_ptr, out_idx, in_ptr, pos_out, pos_in, comp_off, comp, head)
    cdef Py_ssize_t m = src.size()
    out = [np.empty(m, dtype=np.int32) for _ in range(4)]
    cdef idx_t[::1] o0 = out[0]
    cdef idx_t[::1] o1 = out[1]
    cdef idx_t[::1] o2 = out[2]
    cdef idx_t[::1] o3 = out[3]
    cdef Py_ssize_t i
    for i in range(m):
        o0[i] = src[i]
        o1[i] = tgt[i]
        o2[i] = top[i]
        o3[i] = bot[i]
    return tuple(out)


def square_composition(const idx_t[::1] dom, const idx_t[::1] cod, const idx_t[::1] in_ptr,
                       const idx_t[::1] pos_out, const idx_t[::1] pos_in,
                       const idx_t[::1] comp_off, const idx_t[::1] comp,
                       const idx_t[::1] sq_src, const idx_t[::1] sq_tgt,
                       const idx_t[::1] sq_top, const idx_t[::1] sq_bot,
                       const idx_t[::1] q_out_ptr, const idx_t[::1] q_in_ptr,
                       const idx_t[::1] q_in_idx, const idx_t[::1] q_comp_off):
    cdef long long n = dom.shape[0]
    cdef Py_ssize_t m = sq_src.shape[0]
    cdef Py_ssize_t nq = q_out_ptr.shape[0] - 1
    keys_arr = np.empty(m, dtype=np.int64)
    cdef long long[::1] keys = keys_arr
    cdef Py_ssize_t i
    for i in range(m):
        keys[i] = (sq_tgt[i] * n + sq_top[i]) * n + sq_bot[i]
    total = q_comp_off[nq] if nq >= 0 else 0
    out_arr = np.full(total, -1, dtype=np.int32)
    cdef idx_t[::1] out = out_arr
    cdef idx_t b, g, f, s, j, n_in, lo, hi, mid, base
    cdef long long key
    with nogil:
        for b in range(nq):
            n_in = q_in_ptr[b + 1] - q_in_ptr[b]
            base = q_comp_off[b]
            j = 0
            for g in range(q_out_ptr[b], q_out_ptr[b + 1]):
                for i in range(n_in):
                    f = q_in_idx[q_in_ptr[b] + i]
                    s = sq_src[f]
                    key = (sq_tgt[g] * n
                           + _compose(sq_top[g], sq_top[f], cod, in_ptr, pos_out, pos_in, comp_off, comp)) * n \
                          + _compose(sq_bot[g], sq_bot[f], cod, in_ptr, pos_out, pos_in, comp_off, comp)
                    lo = q_out_ptr[s]
                    hi = q_out_ptr[s + 1]
                    while lo < hi:
                        mid = (lo + hi) // 2
                        if keys[mid] < key:
                            lo = mid + 1
                        else:
                            hi = mid
                    if lo < q_out_ptr[s + 1] and keys[lo] == key:
                        out[base + j * n_in + i] = lo
                j += 1
    return out_arr


def associativity_violation(const idx_t[::1] dom, const idx_t[::1] cod, const idx_t[::1] out_ptr,
                            const idx_t[::1] out_idx, const idx_t[::1] in_ptr,
                            const idx_t[::1] pos_out, const idx_t[::1] pos_in,
                            const idx_t[::1] comp_off, const idx_t[::1] comp):
    cdef idx_t n = dom.shape[0]
    cdef idx_t f, b, k, g, gf, c, kk, h
    cdef idx_t rh = -1, rg = -1, rf = -1
    with nogil:
        for f in range(n):
            b = cod[f]
            for k in range(out_ptr[b], out_ptr[b + 1]):
                g = out_idx[k]
                gf = _compose(g, f, cod, in_ptr, pos_out, pos_in, comp_off, comp)
                c = cod[g]
                for kk in range(out_ptr[c], out_ptr[c + 1]):
                    h = out_idx[kk]
                    if (_compose(h, gf, cod, in_ptr, pos_out, pos_in, comp_off, comp)
                            != _compose(_compose(h, g, cod, in_ptr, pos_out, pos_in, comp_off, comp),
                                        f, cod, in_ptr, pos_out, pos_in, comp_off, comp)):
                        rh = h
                        rg = g
                        rf = f
                        break
                if rh != -1:
                    break
            if rh != -1:
                break
    if rh == -1:
        return None
    return (rh, rg, rf)


def square_scan(const idx_t[::1] dom, const idx_t[::1] cod, const idx_t[::1] out_ptr,
                const idx_t[::1] out_idx, const idx_t[::1] in_ptr,
                const idx_t[::1] pos_out, const idx_t[::1] pos_in,
                const idx_t[::1] comp_off, const idx_t[::1] comp,
                const idx_t[::1] a1, const idx_t[::1] t1, const idx_t[::1] b1,
                const idx_t[::1] a2, const idx_t[::1] t2, const idx_t[::1] b2, int mode,
                const idx_t[::1] x_dom, const idx_t[::1] x_cod, const idx_t[::1] x_in_ptr, const idx_t[::1] x_pos_out,
                const idx_t[::1] x_pos_in, const idx_t[::1] x_comp_off, const idx_t[::1] x_comp):
    cdef idx_t n = dom.shape[0]
    cdef idx_t x, a, c, k, kk, f1, y, f2
    cdef long long count = 0
    cdef bint bad = False
    cdef idx_t wx = -1, wy = -1, w1 = -1, w2 = -1
    head_arr = np.full(max(n, 1), -1, dtype=np.int32)
    nxt_arr = np.full(max(n, 1), -1, dtype=np.int32)
    cdef idx_t[::1] head = head_arr
    cdef idx_t[::1] nxt = nxt_arr
    with nogil:
        for x in range(n):
            _fill_bucket(x, cod, out_ptr, out_idx, in_ptr, pos_out, pos_in, comp_off, comp, head, nxt)
            a = dom[x]
            for k in range(out_ptr[a], out_ptr[a + 1]):
                f1 = out_idx[k]
                c = cod[f1]
                for kk in range(out_ptr[c], out_ptr[c + 1]):
                    y = out_idx[kk]
                    f2 = head[_compose(y, f1, cod, in_ptr, pos_out, pos_in, comp_off, comp)]
                    while f2 != -1:
                        count += 1
                        if a1[x] != a2[x] or a1[y] != a2[y]:
                            bad = True
                        elif mode == 0:
                            bad = t1[f1] != t2[f1] or b1[f2] != b2[f2]
                        elif x_dom[b1[f2]] != x_cod[a1[x]] or x_dom[b2[f2]] != x_cod[a2[x]]:
                            bad = True
                        else:
                            bad = (_compose(b1[f2], a1[x], x_cod, x_in_ptr, x_pos_out, x_pos_in, x_comp_off, x_comp)
                                   != _compose(b2[f2], a2[x], x_cod, x_in_ptr, x_pos_out, x_pos_in, x_comp_off, x_comp))
                        if bad:
                            wx = x
                            wy = y
                            w1 = f1
                            w2 = f2
                            break
                        f2 = nxt[f2]
                    if bad:
                        break
                if bad:
                    break
            if bad:
                break
            _clear_bucket(x, cod, out_ptr, out_idx, in_ptr, pos_out, pos_in, comp_off, comp, head)
    if bad:
        return count, (wx, wy, w1, w2)
    return count, None
