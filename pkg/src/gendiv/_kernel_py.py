"""Pure-Python exact row reduction (fallback for the compiled kernel).

Both implementations share one contract: ``rref(rows, ncols)`` takes a list of
rows (sequences of exact field elements supporting ``+ - * /``) and returns
``(basis, pivots)``.  The pivot of a row is its *highest* nonzero column, which
is scaled to 1 and cleared from every other row.  Rows are returned sorted by
ascending pivot.  Input rows are not modified.
"""


def rref(rows, ncols):
    work = [list(r) for r in rows]
    for r in work:
        if len(r) != ncols:
            raise ValueError("row length %d != %d" % (len(r), ncols))
    basis = []
    pivots = []
    for col in range(ncols - 1, -1, -1):
        src = None
        for i, r in enumerate(work):
            if r[col]:
                src = i
                break
        if src is None:
            continue
        prow = work.pop(src)
        inv = 1 / prow[col]
        prow = [x * inv for x in prow[: col + 1]] + [0 * inv] * (ncols - col - 1)
        for r in work:
            c = r[col]
            if c:
                for j in range(col + 1):
                    if prow[j]:
                        r[j] -= c * prow[j]
        for r in basis:
            c = r[col]
            if c:
                for j in range(col + 1):
                    if prow[j]:
                        r[j] -= c * prow[j]
        basis.append(prow)
        pivots.append(col)
        if not work:
            break
    basis.reverse()
    pivots.reverse()
    return basis, pivots
