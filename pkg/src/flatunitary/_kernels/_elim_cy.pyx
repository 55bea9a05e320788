# cython: language_level=3
# Compiled twin of _elim_py.ff_gauss_jordan_int. Same pivot rule, same exact
# single-step division; entries are arbitrary-precision Python ints, so the
# win over the pure version is loop and dispatch overhead, not arithmetic.

cdef extern from "Python.h":
    pass


def ff_gauss_jordan_int(list rows, Py_ssize_t ncols):
    cdef Py_ssize_t nrows = len(rows)
    cdef Py_ssize_t width = len(<list>rows[0]) if nrows else ncols
    cdef list pivots = []
    cdef object prev = 1
    cdef Py_ssize_t piv_r = 0
    cdef Py_ssize_t c, r, i, j
    cdef list row, piv_row
    cdef object p, x, v, q, rem
    cdef bint prev_is_one
    for c in range(ncols):
        if piv_r == nrows:
            break
        r = piv_r
        while r < nrows and rows[r][c] == 0:
            r += 1
        if r == nrows:
            continue
        if r != piv_r:
            rows[r], rows[piv_r] = rows[piv_r], rows[r]
        piv_row = rows[piv_r]
        p = piv_row[c]
        prev_is_one = prev == 1
        for i in range(nrows):
            if i == piv_r:
                continue
            row = rows[i]
            x = row[c]
            if x == 0:
                if p != prev:
                    for j in range(width):
                        v = row[j]
                        if v != 0:
                            v = p * v
                            if prev_is_one:
                                row[j] = v
                            else:
                                q, rem = divmod(v, prev)
                                if rem != 0:
                                    raise ArithmeticError("inexact division in elimination")
                                row[j] = q
            else:
                for j in range(width):
                    v = p * row[j] - x * piv_row[j]
                    if prev_is_one:
                        row[j] = v
                    else:
                        q, rem = divmod(v, prev)
                        if rem != 0:
                            raise ArithmeticError("inexact division in elimination")
                        row[j] = q
        prev = p
        pivots.append(c)
        piv_r += 1
    return pivots
