# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the Cayley-table sweeps in ``_pykernels``."""

from array import array
from libc.stdlib cimport malloc, free


cdef inline int _find(int* parent, int x) nogil:
    cdef int root = x
    cdef int nxt
    while parent[root] != root:
        root = parent[root]
    while parent[x] != root:
        nxt = parent[x]
        parent[x] = root
        x = nxt
    return root


def twisted_orbits(const int[::1] table, int n, const int[::1] inv,
                   const int[::1] phi, const int[::1] movers):
    cdef int* parent = <int*> malloc(n * sizeof(int))
    cdef int* size = <int*> malloc(n * sizeof(int))
    cdef int* root_label = <int*> malloc(n * sizeof(int))
    if parent == NULL or size == NULL or root_label == NULL:
        free(parent); free(size); free(root_label)
        raise MemoryError()
    cdef int i, h, x, y, rx, ry, tail, hn, r, count = 0
    cdef Py_ssize_t nm = movers.shape[0]
    class_of = array("i", [-1]) * n
    cdef int[::1] out = class_of
    reps = []
    try:
        with nogil:
            for x in range(n):
                parent[x] = x
                size[x] = 1
                root_label[x] = -1
            for i in range(nm):
                h = movers[i]
                hn = h * n
                tail = phi[inv[h]]
                for x in range(n):
                    y = table[table[hn + x] * n + tail]
                    rx = _find(parent, x)
                    ry = _find(parent, y)
                    if rx != ry:
                        if size[rx] < size[ry]:
                            rx, ry = ry, rx
                        parent[ry] = rx
                        size[rx] += size[ry]
        for x in range(n):
            r = _find(parent, x)
            if root_label[r] == -1:
                root_label[r] = count
                count += 1
                reps.append(x)
            out[x] = root_label[r]
    finally:
        free(parent)
        free(size)
        free(root_label)
    return class_of, reps


def is_homomorphism(const int[::1] src, int n, const int[::1] dst, int m,
                    const int[::1] mapping):
    cdef int a, b, an, fa
    cdef bint ok = True
    with nogil:
        for a in range(n):
            an = a * n
            fa = mapping[a] * m
            for b in range(n):
                if mapping[src[an + b]] != dst[fa + mapping[b]]:
                    ok = False
                    break
            if not ok:
                break
    return ok


def associative_on(const int[::1] table, int n, const int[::1] gens):
    cdef Py_ssize_t i, ng = gens.shape[0]
    cdef int a, b, g, an
    cdef bint ok = True
    with nogil:
        for i in range(ng):
            g = gens[i]
            for a in range(n):
                an = a * n
                for b in range(n):
                    if table[table[an + b] * n + g] != table[an + table[b * n + g]]:
                        ok = False
                        break
                if not ok:
                    break
            if not ok:
                break
    return ok


def coset_conjugacy_labels(const int[::1] table, int n, const int[::1] inv,
                           const int[::1] phi, const int[::1] phi_powers, int m):
    cdef int* mark = <int*> malloc(n * sizeof(int))
    if mark == NULL:
        raise MemoryError()
    labels = array("i", [-1]) * n
    cdef int[::1] lab = labels
    cdef int x, k, g, xk, y, count = 0
    cdef bint ok = True
    try:
        with nogil:
            for y in range(n):
                mark[y] = -1
            for x in range(n):
                if lab[x] != -1:
                    continue
                for k in range(m):
                    xk = phi_powers[k * n + x]
                    for g in range(n):
                        y = table[table[g * n + xk] * n + phi[inv[g]]]
                        if mark[y] != x:
                            mark[y] = x
                            if lab[y] != -1:
                                ok = False
                            lab[y] = count
                count += 1
    finally:
        free(mark)
    return labels, ok
