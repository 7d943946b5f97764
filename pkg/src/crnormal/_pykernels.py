"""Pure-Python kernels over dense triangular coefficient arrays.

A jet of order N is stored as two lists ``re``/``im`` of Python ints of
length (N+1)(N+2)/2 holding numerators over a shared denominator.  The
monomial z^m zbar^n of total degree d = m+n lives at index
d*(d+1)//2 + n, so truncating to a lower order is a prefix slice.

The compiled module ``_ckernels`` exports the same functions with the
same semantics; ``crnormal.kernels`` picks one at import time.
"""


def tri_size(order):
    return (order + 1) * (order + 2) // 2


_LAYOUTS = {}


def layout(order):
    """Return ``(deg, nbar, offset)`` lists for the triangular layout."""
    lay = _LAYOUTS.get(order)
    if lay is None:
        deg, nbar = [], []
        for d in range(order + 1):
            for n in range(d + 1):
                deg.append(d)
                nbar.append(n)
        offset = [d * (d + 1) // 2 for d in range(2 * order + 2)]
        lay = (deg, nbar, offset)
        _LAYOUTS[order] = lay
    return lay


def mul_trunc(are, aim, bre, bim, order):
    """Product of two coefficient arrays, dropping every term of degree > order."""
    size = tri_size(order)
    deg, nbar, offset = layout(order)
    cre = [0] * size
    cim = [0] * size
    nb = min(len(bre), size)
    bnz = []
    for j in range(nb):
        br = bre[j]
        bi = bim[j]
        if br or bi:
            bnz.append((deg[j], nbar[j], br, bi))
    if not bnz:
        return cre, cim
    na = min(len(are), size)
    for i in range(na):
        ar = are[i]
        ai = aim[i]
        if not (ar or ai):
            continue
        di = deg[i]
        ni = nbar[i]
        lim = order - di
        for dj, nj, br, bi in bnz:
            if dj > lim:
                break
            k = offset[di + dj] + ni + nj
            if ai:
                if bi:
                    cre[k] += ar * br - ai * bi
                    cim[k] += ar * bi + ai * br
                else:
                    cre[k] += ar * br
                    cim[k] += ai * br
            elif bi:
                cre[k] += ar * br
                cim[k] += ar * bi
            else:
                cre[k] += ar * br
    return cre, cim


def axpy(xre, xim, yre, yim, cr, ci, scale):
    """Return ``scale*y + (cr + i*ci)*x`` elementwise; x may be shorter than y."""
    rre = [v * scale for v in yre] if scale != 1 else list(yre)
    rim = [v * scale for v in yim] if scale != 1 else list(yim)
    n = min(len(xre), len(rre))
    if ci:
        for k in range(n):
            xr = xre[k]
            xi = xim[k]
            if xr or xi:
                rre[k] += cr * xr - ci * xi
                rim[k] += cr * xi + ci * xr
    elif cr:
        for k in range(n):
            xr = xre[k]
            xi = xim[k]
            if xr:
                rre[k] += cr * xr
            if xi:
                rim[k] += cr * xi
    return rre, rim
