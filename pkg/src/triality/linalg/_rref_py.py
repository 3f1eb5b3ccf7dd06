"""Pure-Python fraction-free Gauss-Jordan elimination over the integers.

This is the fallback used when the compiled kernel is unavailable, and the
reference the compiled kernel is tested against.
"""

from math import gcd


def _primitive(row):
    g = gcd(*row)
    if g > 1:
        return [x // g for x in row]
    return row


def rref_int(rows, ncols):
    """Reduce integer rows to primitive reduced row echelon form.

    ``rows`` is a list of integer lists of length ``ncols``; it is consumed.
    Returns ``(reduced, pivots)`` where ``reduced`` holds only the nonzero
    rows, each primitive (content 1) with a positive pivot, and every pivot
    column is zero outside its own row.  Pivoting takes the first row with a
    nonzero entry, scanning columns left to right.
    """
    rows = [list(r) for r in rows if any(r)]
    nrows = len(rows)
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        for i in range(r, nrows):
            if rows[i][c]:
                break
        else:
            continue
        if i != r:
            rows[r], rows[i] = rows[i], rows[r]
        prow = _primitive(rows[r])
        if prow[c] < 0:
            prow = [-x for x in prow]
        rows[r] = prow
        p = prow[c]
        nz = [j for j in range(c, ncols) if prow[j]]
        for i in range(nrows):
            if i == r:
                continue
            row = rows[i]
            e = row[c]
            if not e:
                continue
            g = gcd(p, e)
            pp, ee = p // g, e // g
            if pp != 1:
                row = [pp * x for x in row]
            for j in nz:
                row[j] -= ee * prow[j]
            if any(row):
                row = _primitive(row)
            rows[i] = row
        pivots.append(c)
        r += 1
    return rows[:r], pivots
