# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled search kernels; same contracts and enumeration order as _kernels_py."""

from libc.stdlib cimport malloc, free


cdef long long _bareiss(long long* a, int n):
    cdef long long prev = 1, t
    cdef int sign = 1, i, j, k, p
    for k in range(n - 1):
        if a[k * n + k] == 0:
            p = -1
            for i in range(k + 1, n):
                if a[i * n + k] != 0:
                    p = i
                    break
            if p < 0:
                return 0
            for j in range(n):
                t = a[k * n + j]
                a[k * n + j] = a[p * n + j]
                a[p * n + j] = t
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i * n + j] = (a[i * n + j] * a[k * n + k] - a[i * n + k] * a[k * n + j]) // prev
        prev = a[k * n + k]
    return sign * a[n * n - 1]


def congruence_search(g1, g2, int bound):
    cdef int n = len(g1)
    if n == 0:
        return []
    cdef int side = 2 * bound + 1
    cdef long long total = 1
    cdef int i, j, k, c
    for i in range(n):
        total *= side
    cdef long long* G1 = <long long*> malloc(n * n * sizeof(long long))
    cdef long long* G2 = <long long*> malloc(n * n * sizeof(long long))
    cdef long long* vecs = <long long*> malloc(total * n * sizeof(long long))
    cdef long long* imgs = <long long*> malloc(total * n * sizeof(long long))
    cdef long long* norms = <long long*> malloc(total * sizeof(long long))
    cdef long long* cands = <long long*> malloc(n * total * sizeof(long long))
    cdef long long* ncand = <long long*> malloc(n * sizeof(long long))
    cdef long long* chosen = <long long*> malloc(n * sizeof(long long))
    cdef long long* pos = <long long*> malloc(n * sizeof(long long))
    cdef long long* det_buf = <long long*> malloc(n * n * sizeof(long long))
    cdef long long idx, rem, s, cidx
    cdef bint ok, found
    result = None
    try:
        for i in range(n):
            for j in range(n):
                G1[i * n + j] = g1[i][j]
                G2[i * n + j] = g2[i][j]
        # lexicographic box: first coordinate slowest
        for idx in range(total):
            rem = idx
            for j in range(n - 1, -1, -1):
                vecs[idx * n + j] = rem % side - bound
                rem = rem // side
            s = 0
            for i in range(n):
                imgs[idx * n + i] = 0
                for j in range(n):
                    imgs[idx * n + i] += G1[i * n + j] * vecs[idx * n + j]
                s += vecs[idx * n + i] * imgs[idx * n + i]
            norms[idx] = s
        for k in range(n):
            ncand[k] = 0
            for idx in range(total):
                if norms[idx] == G2[k * n + k]:
                    cands[k * total + ncand[k]] = idx
                    ncand[k] += 1

        k = 0
        pos[0] = 0
        while k >= 0:
            if k == n:
                for i in range(n):
                    for j in range(n):
                        det_buf[i * n + j] = vecs[chosen[j] * n + i]
                s = _bareiss(det_buf, n)
                if s == 1 or s == -1:
                    result = [[vecs[chosen[j] * n + i] for j in range(n)] for i in range(n)]
                    break
                k -= 1
                pos[k] += 1
                continue
            found = False
            while pos[k] < ncand[k]:
                cidx = cands[k * total + pos[k]]
                ok = True
                for i in range(k):
                    s = 0
                    for j in range(n):
                        s += imgs[chosen[i] * n + j] * vecs[cidx * n + j]
                    if s != G2[i * n + k]:
                        ok = False
                        break
                if ok:
                    chosen[k] = cidx
                    found = True
                    break
                pos[k] += 1
            if found:
                k += 1
                if k < n:
                    pos[k] = 0
            else:
                k -= 1
                if k >= 0:
                    pos[k] += 1
    finally:
        free(G1); free(G2); free(vecs); free(imgs); free(norms)
        free(cands); free(ncand); free(chosen); free(pos); free(det_buf)
    return result


def slack_search(rows, rhs, int bound, int length):
    cdef int nrows = len(rows)
    cdef int i, j
    cdef long long s
    cdef bint ok
    if length == 0:
        return [] if all(t == 0 for t in rhs) else None
    cdef long long* R = <long long*> malloc((nrows * length + 1) * sizeof(long long))
    cdef long long* T = <long long*> malloc((nrows + 1) * sizeof(long long))
    cdef long long* x = <long long*> malloc(length * sizeof(long long))
    result = None
    try:
        for i in range(nrows):
            T[i] = rhs[i]
            for j in range(length):
                R[i * length + j] = rows[i][j]
        for j in range(length):
            x[j] = -bound
        while True:
            ok = True
            for i in range(nrows):
                s = 0
                for j in range(length):
                    s += R[i * length + j] * x[j]
                if s != T[i]:
                    ok = False
                    break
            if ok:
                result = [x[j] for j in range(length)]
                break
            # odometer, last coordinate fastest
            j = length - 1
            while j >= 0 and x[j] == bound:
                x[j] = -bound
                j -= 1
            if j < 0:
                break
            x[j] += 1
    finally:
        free(R); free(T); free(x)
    return result
