# cython: boundscheck=False, wraparound=False, cdivision=True
"""Cython reduction kernel: elementary-divisor valuations over Z/ell^n.

Contract and algorithm match ``_snf_py.snf_mod_valuations`` exactly; the
pure-Python module is the reference implementation.
"""

from libc.stdlib cimport free, malloc


cdef long long _egcd_inv(long long u, long long m):
    # inverse of u mod m for gcd(u, m) = 1
    cdef long long g = u % m, x = 1, x1 = 0, g1 = m, q, t
    while g1 != 0:
        q = g // g1
        t = g - q * g1; g = g1; g1 = t
        t = x - q * x1; x = x1; x1 = t
    x %= m
    if x < 0:
        x += m
    return x


def snf_mod_valuations(rows, long long ell, int n):
    """Valuations (<= n, ascending) of the divisors of coker(M) mod ell^n."""
    cdef int nrows, ncols, i, j, k, r, c, vmin, pr, pc
    cdef long long q, x, pv, qv, stop, u, uinv, b, f
    cdef long long *a

    if n < 0:
        raise ValueError("cap exponent must be nonnegative")
    nrows = len(rows)
    if nrows == 0:
        return []
    ncols = len(rows[0])
    if ncols == 0:
        return [n] * nrows
    q = 1
    for k in range(n):
        q *= ell
        if q > (<long long>1) << 31:
            raise ValueError("modulus too large for the compiled kernel")

    a = <long long *>malloc(nrows * ncols * sizeof(long long))
    if a == NULL:
        raise MemoryError()
    try:
        for i in range(nrows):
            row = rows[i]
            for j in range(ncols):
                x = row[j] % q
                if x < 0:
                    x += q
                a[i * ncols + j] = x

        vals = []
        r = nrows
        c = ncols
        vmin = 0
        while r > 0 and c > 0 and vmin < n:
            pr = -1
            pc = -1
            while vmin < n and pr < 0:
                stop = 1
                for k in range(vmin + 1):
                    stop *= ell
                for i in range(r):
                    for j in range(c):
                        x = a[i * ncols + j]
                        if x != 0 and x % stop != 0:
                            pr = i; pc = j
                            break
                    if pr >= 0:
                        break
                if pr < 0:
                    vmin += 1
            if pr < 0:
                break
            pv = 1
            for k in range(vmin):
                pv *= ell
            qv = q / pv
            u = a[pr * ncols + pc] / pv
            uinv = _egcd_inv(u, qv)
            for i in range(r):
                if i == pr:
                    continue
                b = a[i * ncols + pc]
                if b != 0:
                    f = ((b / pv) % qv) * uinv % qv
                    for j in range(c):
                        x = (a[i * ncols + j] - f * a[pr * ncols + j]) % q
                        if x < 0:
                            x += q
                        a[i * ncols + j] = x
            # drop pivot row (swap with last active row) and pivot column;
            # clearing the pivot row by column ops would touch no other row
            r -= 1
            if pr != r:
                for j in range(c):
                    a[pr * ncols + j] = a[r * ncols + j]
            c -= 1
            if pc != c:
                for i in range(r):
                    a[i * ncols + pc] = a[i * ncols + c]
            vals.append(vmin)
        while len(vals) < nrows:
            vals.append(n)
        return vals
    finally:
        free(a)
