"""Pure-Python twin of the Cython reduction kernel.

Same contract, same algorithm: valuation-pivot elimination over the chain
ring Z/ell^n.  Kept dependency-free so the package works without a C
compiler; the benchmark script compares the two.
"""

from __future__ import annotations


def snf_mod_valuations(rows: list[list[int]], ell: int, n: int) -> list[int]:
    """Valuations of the elementary divisors of coker(M) tensored with Z/ell^n.

    Returns one value in [0, n] per matrix row, ascending.  A row without a
    pivot (free or deeply divisible direction) reports n.  Equivalently the
    result is [min(v_i, n)] over the divisors d_i of the integer Smith form,
    with v(0) treated as n.
    """
    if n < 0:
        raise ValueError("cap exponent must be nonnegative")
    q = ell**n
    a = [[x % q for x in row] for row in rows]
    nrows = len(a)
    if nrows == 0:
        return []
    if not a[0]:
        return [n] * nrows
    vals: list[int] = []
    vmin = 0
    powers = [ell**k for k in range(n + 1)]
    while a and a[0] and vmin < n:
        # find a pivot of least valuation; valuations of the minor never
        # drop below the previous pivot's, so the scan resumes at vmin
        piv = None
        while vmin < n and piv is None:
            stop = powers[vmin + 1]
            for i, row in enumerate(a):
                for j, x in enumerate(row):
                    if x and x % stop:
                        piv = (i, j)
                        break
                if piv:
                    break
            if piv is None:
                vmin += 1
        if piv is None:
            break
        pr, pc = piv
        pivot_row = a[pr]
        pv = powers[vmin]
        qv = powers[n - vmin]
        u = (pivot_row[pc] % q) // pv
        uinv = pow(u, -1, qv)
        for i, row in enumerate(a):
            if i == pr:
                continue
            b = row[pc]
            if b:
                f = (b // pv) * uinv % qv
                a[i] = [(x - f * y) % q for x, y in zip(row, pivot_row)]
        # the pivot column is now a*e_pr; column ops clearing the pivot row
        # touch no other row, so dropping row and column is exact
        del a[pr]
        for row in a:
            row[pc] = row[-1]
            row.pop()
        vals.append(vmin)
    vals.extend([n] * (nrows - len(vals)))
    return vals
