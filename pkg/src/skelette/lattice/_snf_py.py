"""Pure-Python Smith normal form kernel on lists of ints.

The compiled kernel in ``_snf_kernel.pyx`` runs exactly the same pivoting
sequence on int64 storage, so both produce identical (S, U, V).
"""


def _pick(s, t, m, n):
    best = None
    for i in range(t, m):
        row = s[i]
        for j in range(t, n):
            x = row[j]
            if x:
                ax = -x if x < 0 else x
                if best is None or ax < best[0]:
                    best = (ax, i, j)
    return best


def snf_lists(a, m, n, transforms=True):
    """Return (S, U, V) with U*A*V = S; U and V are None without transforms."""
    s = [list(r) for r in a]
    u = [[int(i == j) for j in range(m)] for i in range(m)] if transforms else None
    v = [[int(i == j) for j in range(n)] for i in range(n)] if transforms else None
    t = 0
    while t < min(m, n):
        best = _pick(s, t, m, n)
        if best is None:
            break
        _move(s, u, v, t, best[1], best[2], n)
        while True:
            p = s[t][t]
            dirty = False
            st = s[t]
            for i in range(t + 1, m):
                x = s[i][t]
                if x:
                    q = x // p
                    si = s[i]
                    for k in range(t, n):
                        si[k] -= q * st[k]
                    if u is not None:
                        ui, ut = u[i], u[t]
                        for k in range(m):
                            ui[k] -= q * ut[k]
                    if si[t]:
                        dirty = True
            for j in range(t + 1, n):
                x = st[j]
                if x:
                    q = x // p
                    for k in range(t, m):
                        s[k][j] -= q * s[k][t]
                    if v is not None:
                        for k in range(n):
                            v[k][j] -= q * v[k][t]
                    if st[j]:
                        dirty = True
            if dirty:
                best = _pick(s, t, m, n)
                _move(s, u, v, t, best[1], best[2], n)
                continue
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if s[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            si = s[bad]
            for k in range(t, n):
                st[k] += si[k]
            if u is not None:
                ut, ub = u[t], u[bad]
                for k in range(m):
                    ut[k] += ub[k]
        if s[t][t] < 0:
            s[t] = [-x for x in s[t]]
            if u is not None:
                u[t] = [-x for x in u[t]]
        t += 1
    return s, u, v


def _move(s, u, v, t, i, j, n):
    if i != t:
        s[t], s[i] = s[i], s[t]
        if u is not None:
            u[t], u[i] = u[i], u[t]
    if j != t:
        for row in s:
            row[t], row[j] = row[j], row[t]
        if v is not None:
            for row in v:
                row[t], row[j] = row[j], row[t]
