# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twin of ``_pykernels``.

Coefficients stay Python integers so precision is unbounded; the gain comes
from typed exponent arithmetic and loop overhead removal.
"""


def poly_add(dict a, dict b):
    cdef dict out
    cdef object s
    if len(a) < len(b):
        a, b = b, a
    out = dict(a)
    for e, c in b.items():
        s = out.get(e, 0) + c
        if s:
            out[e] = s
        else:
            del out[e]
    return out


def poly_sub(dict a, dict b):
    cdef dict out = dict(a)
    cdef object s
    for e, c in b.items():
        s = out.get(e, 0) - c
        if s:
            out[e] = s
        else:
            del out[e]
    return out


def poly_mul(dict a, dict b):
    cdef dict out = {}
    cdef Py_ssize_t na = len(a), nb = len(b), i, j
    cdef long ea_i
    cdef list ea, ca, eb, cb
    cdef object key
    if na == 0 or nb == 0:
        return {}
    ea = list(a.keys())
    ca = list(a.values())
    eb = list(b.keys())
    cb = list(b.values())
    for i in range(na):
        ea_i = ea[i]
        for j in range(nb):
            key = ea_i + <long>eb[j]
            out[key] = out.get(key, 0) + ca[i] * cb[j]
    return {e: c for e, c in out.items() if c}


def poly_scale_shift(dict a, object c, long k):
    if not c:
        return {}
    return {e + k: x * c for e, x in a.items()}


def poly_axpy(dict acc, dict a, dict b):
    cdef object key
    for eb, cb in b.items():
        for ea, ca in a.items():
            key = ea + eb
            acc[key] = acc.get(key, 0) + ca * cb


cdef inline void _acc(dict out, tuple idx, dict coeff, long c, long shift):
    cdef object cur = out.get(idx)
    cdef dict d
    cdef object s, e2
    if cur is None:
        out[idx] = {e + shift: x * c for e, x in coeff.items()}
        return
    d = <dict>cur
    for e, x in coeff.items():
        e2 = e + shift
        s = d.get(e2, 0) + x * c
        if s:
            d[e2] = s
        else:
            d.pop(e2, None)


def act_generator(dict terms, long k, long m):
    cdef dict out = {}
    cdef Py_ssize_t i0 = k - 1, i1 = k
    cdef long a, b, sgn
    cdef tuple idx, swapped
    for key, coeff in terms.items():
        idx = <tuple>key
        a = idx[i0]
        b = idx[i1]
        if a < b:
            sgn = -1 if (a > m and b > m) else 1
            swapped = idx[:i0] + (b, a) + idx[i1 + 1:]
            _acc(out, swapped, coeff, sgn, 0)
        elif a == b:
            if a > m:
                _acc(out, idx, coeff, -1, 0)
            else:
                _acc(out, idx, coeff, 1, 2)
        else:
            sgn = -1 if (a > m and b > m) else 1
            swapped = idx[:i0] + (b, a) + idx[i1 + 1:]
            _acc(out, swapped, coeff, sgn, 2)
            _acc(out, idx, coeff, 1, 2)
            _acc(out, idx, coeff, -1, 0)
    return {i: c for i, c in out.items() if c}
