"""Dense linear algebra over a FieldCtx; matrices are lists of rows."""

from __future__ import annotations


def zeros(ctx, n, m):
    return [[ctx.zero] * m for _ in range(n)]


def identity(ctx, n):
    return [[ctx.one if i == j else ctx.zero for j in range(n)] for i in range(n)]


def transpose(a):
    return [list(col) for col in zip(*a)]


def matmul(a, b):
    bt = transpose(b)
    out = []
    for row in a:
        out_row = []
        for col in bt:
            acc = row[0] * col[0]
            for x, y in zip(row[1:], col[1:]):
                if x and y:
                    acc = acc + x * y
            out_row.append(acc)
        out.append(out_row)
    return out


def matvec(a, v):
    out = []
    for row in a:
        acc = row[0] * v[0]
        for x, y in zip(row[1:], v[1:]):
            if x and y:
                acc = acc + x * y
        out.append(acc)
    return out


def rref(rows):
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    a = [list(r) for r in rows]
    if not a:
        return [], []
    n_cols = len(a[0])
    pivots = []
    r = 0
    for c in range(n_cols):
        piv = next((i for i in range(r, len(a)) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = a[r][c].inv()
        a[r] = [x * inv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a[:r], pivots


def rank(rows):
    return len(rref(rows)[0])


def nullspace(rows, n_cols, ctx):
    """Basis (as rows) of {x : A x = 0}."""
    red, pivots = rref(rows) if rows else ([], [])
    free = [c for c in range(n_cols) if c not in pivots]
    basis = []
    for f in free:
        x = [ctx.zero] * n_cols
        x[f] = ctx.one
        for row, pc in zip(red, pivots):
            x[pc] = -row[f]
        basis.append(x)
    return basis


def intersect(spaces, n_cols, ctx):
    """Intersection of row spaces, as a list of basis rows."""
    annihilators = []
    for s in spaces:
        annihilators.extend(nullspace(s, n_cols, ctx))
    return nullspace(annihilators, n_cols, ctx)


def inverse(a, ctx):
    n = len(a)
    aug = [list(row) + e for row, e in zip(a, identity(ctx, n))]
    red, pivots = rref(aug)
    if len(red) < n or pivots[: n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in red]


def in_span(rows, v):
    return rank(list(rows) + [list(v)]) == rank(rows)
