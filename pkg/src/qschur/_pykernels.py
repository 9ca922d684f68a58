"""Pure-Python hot kernels.

These functions work on raw coefficient dictionaries ``{exponent: coeff}``
with no zero values.  ``_ckernels.pyx`` provides a compiled twin with the
same signatures; ``_kernels`` picks one at import time.
"""


def poly_add(a, b):
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


def poly_sub(a, b):
    out = dict(a)
    for e, c in b.items():
        s = out.get(e, 0) - c
        if s:
            out[e] = s
        else:
            del out[e]
    return out


def poly_mul(a, b):
    if not a or not b:
        return {}
    if len(a) < len(b):
        a, b = b, a
    out = {}
    get = out.get
    for eb, cb in b.items():
        for ea, ca in a.items():
            e = ea + eb
            out[e] = get(e, 0) + ca * cb
    return {e: c for e, c in out.items() if c}


def poly_scale_shift(a, c, k):
    """Return ``c * v**k * a``."""
    if not c:
        return {}
    return {e + k: x * c for e, x in a.items()}


def poly_axpy(acc, a, b):
    """Accumulate ``a * b`` into the dictionary ``acc`` in place.

    Zero coefficients may be left behind; callers prune once at the end.
    """
    get = acc.get
    for eb, cb in b.items():
        for ea, ca in a.items():
            e = ea + eb
            acc[e] = get(e, 0) + ca * cb


def act_generator(terms, k, m):
    """Right action of ``T_{s_k}`` on a tensor vector.

    ``terms`` maps index tuples (entries in 1..m+n) to raw coefficient dicts;
    ``k`` is the 1-based generator index and ``m`` the size of the even block.
    Returns a new mapping in the same raw form, with zero entries pruned.
    """
    out = {}
    i0 = k - 1
    i1 = k
    for idx, coeff in terms.items():
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


def _acc(out, idx, coeff, c, shift):
    cur = out.get(idx)
    if cur is None:
        out[idx] = {e + shift: x * c for e, x in coeff.items()}
        return
    for e, x in coeff.items():
        e2 = e + shift
        s = cur.get(e2, 0) + x * c
        if s:
            cur[e2] = s
        else:
            cur.pop(e2, None)
