# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twin of ``_pykernels``: same layout, same results."""

from libc.stdlib cimport free, malloc

from ._pykernels import layout, tri_size


def mul_trunc(list are, list aim, list bre, list bim, Py_ssize_t order):
    cdef Py_ssize_t size = (order + 1) * (order + 2) // 2
    cdef list deg, nbar, offset
    deg, nbar, offset = layout(order)
    cdef list cre = [0] * size
    cdef list cim = [0] * size
    cdef Py_ssize_t nb = min(len(bre), size)
    cdef Py_ssize_t na = min(len(are), size)
    cdef Py_ssize_t j, nnz = 0
    cdef object br, bi
    cdef list bre_nz = [], bim_nz = []
    cdef list bdeg_l = [], bn_l = []
    for j in range(nb):
        br = bre[j]
        bi = bim[j]
        if br or bi:
            bdeg_l.append(deg[j])
            bn_l.append(nbar[j])
            bre_nz.append(br)
            bim_nz.append(bi)
            nnz += 1
    if nnz == 0:
        return cre, cim
    cdef Py_ssize_t *bd_arr = _index_array(bdeg_l)
    cdef Py_ssize_t *bn_arr = _index_array(bn_l)
    cdef Py_ssize_t *off_arr = _index_array(offset)
    try:
        _mul_loop(are, aim, na, deg, nbar, order, nnz, bd_arr, bn_arr, off_arr,
                  bre_nz, bim_nz, cre, cim)
    finally:
        free(bd_arr)
        free(bn_arr)
        free(off_arr)
    return cre, cim


cdef void _mul_loop(list are, list aim, Py_ssize_t na, list deg, list nbar, Py_ssize_t order,
                    Py_ssize_t nnz, Py_ssize_t *bd_arr, Py_ssize_t *bn_arr, Py_ssize_t *off_arr,
                    list bre_nz, list bim_nz, list cre, list cim) except *:
    cdef Py_ssize_t i, t, di, ni, lim, k
    cdef object ar, ai, br, bi
    cdef bint a_imag, b_imag
    for i in range(na):
        ar = are[i]
        ai = aim[i]
        if not (ar or ai):
            continue
        di = deg[i]
        ni = nbar[i]
        lim = order - di
        a_imag = bool(ai)
        for t in range(nnz):
            if bd_arr[t] > lim:
                break
            k = off_arr[di + bd_arr[t]] + ni + bn_arr[t]
            br = bre_nz[t]
            bi = bim_nz[t]
            b_imag = bool(bi)
            if a_imag:
                if b_imag:
                    cre[k] = cre[k] + (ar * br - ai * bi)
                    cim[k] = cim[k] + (ar * bi + ai * br)
                else:
                    cre[k] = cre[k] + ar * br
                    cim[k] = cim[k] + ai * br
            elif b_imag:
                cre[k] = cre[k] + ar * br
                cim[k] = cim[k] + ar * bi
            else:
                cre[k] = cre[k] + ar * br


def axpy(list xre, list xim, list yre, list yim, object cr, object ci, object scale):
    cdef list rre, rim
    cdef Py_ssize_t k, n
    cdef object xr, xi
    if scale != 1:
        rre = [v * scale for v in yre]
        rim = [v * scale for v in yim]
    else:
        rre = list(yre)
        rim = list(yim)
    n = min(len(xre), len(rre))
    if ci:
        for k in range(n):
            xr = xre[k]
            xi = xim[k]
            if xr or xi:
                rre[k] = rre[k] + (cr * xr - ci * xi)
                rim[k] = rim[k] + (cr * xi + ci * xr)
    elif cr:
        for k in range(n):
            xr = xre[k]
            xi = xim[k]
            if xr:
                rre[k] = rre[k] + cr * xr
            if xi:
                rim[k] = rim[k] + cr * xi
    return rre, rim


cdef Py_ssize_t *_index_array(list values) except NULL:
    cdef Py_ssize_t n = len(values), j
    cdef Py_ssize_t *out = <Py_ssize_t *> malloc((n + 1) * sizeof(Py_ssize_t))
    if out == NULL:
        raise MemoryError()
    for j in range(n):
        out[j] = values[j]
    return out
