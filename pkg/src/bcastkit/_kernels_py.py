"""Pure-Python table kernels (reference implementation).

The compiled extension ``_dpcore`` mirrors these functions exactly,
including tie-breaking, so both backends produce identical tables.

Signatures are packed into a single integer key, big-endian in bag
order so integer comparison equals lexicographic comparison of the
digit tuples:

* independence: digits (s1, s2) per bag vertex, base p+1;
* packing: one digit s + p + 1 per bag vertex, base 2p+2.

Tables are ``(values, backptrs)`` dict pairs keyed by the packed
signature; an absent key means value -infinity.  Back-pointers are
``None`` (leaf), the child key (introduce), ``(child_key, l)`` with
``l = 0`` for the silent branch (forget), or ``(left_key, right_key)``
(join).  Ties are broken toward the smallest back-pointer tuple.
"""

from __future__ import annotations


def _decode(key: int, base: int, length: int) -> list[int]:
    digits = [0] * length
    for i in range(length - 1, -1, -1):
        key, digits[i] = divmod(key, base)
    return digits


def _encode(digits, base: int) -> int:
    key = 0
    for d in digits:
        key = key * base + d
    return key


def _push(vals: dict, bps: dict, key: int, val: int, bp) -> None:
    cur = vals.get(key)
    if cur is None or val > cur or (val == cur and bp < bps[key]):
        vals[key] = val
        bps[key] = bp


# -- independence ----------------------------------------------------------

def bi_leaf(p: int):
    return {0: 0}, {0: None}


def bi_introduce(child_vals: dict, t: int, j: int, dvec, p: int):
    """Extend every child signature with the forced entry for the new vertex.

    t: child bag size; j: position of the new vertex in the new bag;
    dvec[i]: distance from the i-th child-bag vertex to the new vertex.
    """
    base = p + 1
    plow = base ** (2 * (t - j))
    vals: dict = {}
    bps: dict = {}
    for key, val in child_vals.items():
        digits = _decode(key, base, 2 * t)
        s1v = 0
        s2v = p
        for i in range(t):
            d = dvec[i]
            a = digits[2 * i] - d
            if a > s1v:
                s1v = a
            b = digits[2 * i + 1] + d
            if b < s2v:
                s2v = b
        high, low = divmod(key, plow)
        nkey = ((high * base + s1v) * base + s2v) * plow + low
        vals[nkey] = val
        bps[nkey] = key
    return vals, bps


def bi_forget(child_vals: dict, t: int, j: int, dvec, p: int):
    """Decide the forgotten vertex's value (0 or l in 1..s2(v)).

    t: child bag size (includes v); j: position of v in the child bag;
    dvec[i]: distance from the i-th remaining bag vertex to v.
    """
    base = p + 1
    m = t - 1
    plow = base ** (2 * (t - j) - 2)
    vals: dict = {}
    bps: dict = {}
    for key, val in child_vals.items():
        high, rest = divmod(key, plow * base * base)
        s1v, rest = divmod(rest, plow * base)
        s2v, low = divmod(rest, plow)
        rkey = high * plow + low
        _push(vals, bps, rkey, val, (key, 0))
        if s1v == 0 and s2v >= 1:
            rdigits = _decode(rkey, base, 2 * m)
            for l in range(1, s2v + 1):
                nkey = 0
                for i in range(m):
                    d = dvec[i]
                    a = l - d + 1
                    r1 = rdigits[2 * i]
                    if r1 > a:
                        a = r1
                    b = d - 1
                    r2 = rdigits[2 * i + 1]
                    if r2 < b:
                        b = r2
                    nkey = (nkey * base + a) * base + b
                _push(vals, bps, nkey, val + l, (key, l))
    return vals, bps


def bi_join(left_vals: dict, right_vals: dict, t: int, p: int):
    """Combine compatible signature pairs: s'1(v) <= s''2(v)+1 both ways."""
    base = p + 1
    litems = [(key, _decode(key, base, 2 * t), val) for key, val in left_vals.items()]
    ritems = [(key, _decode(key, base, 2 * t), val) for key, val in right_vals.items()]
    vals: dict = {}
    bps: dict = {}
    for lkey, ld, lval in litems:
        for rkey, rd, rval in ritems:
            ok = True
            for i in range(t):
                if ld[2 * i] > rd[2 * i + 1] + 1 or rd[2 * i] > ld[2 * i + 1] + 1:
                    ok = False
                    break
            if not ok:
                continue
            nkey = 0
            for i in range(t):
                a = ld[2 * i]
                b = rd[2 * i]
                if b > a:
                    a = b
                c = ld[2 * i + 1]
                d = rd[2 * i + 1]
                if d < c:
                    c = d
                nkey = (nkey * base + a) * base + c
            _push(vals, bps, nkey, lval + rval, (lkey, rkey))
    return vals, bps


# -- packing ---------------------------------------------------------------
# digits store s + p + 1 in [0, 2p+1]

def pack_leaf(p: int):
    return {0: 0}, {0: None}


def pack_introduce(child_vals: dict, t: int, j: int, dvec, p: int):
    base = 2 * p + 2
    plow = base ** (t - j)
    vals: dict = {}
    bps: dict = {}
    for key, val in child_vals.items():
        digits = _decode(key, base, t)
        dv = 0
        for i in range(t):
            a = digits[i] - dvec[i]
            if a > dv:
                dv = a
        high, low = divmod(key, plow)
        nkey = (high * base + dv) * plow + low
        vals[nkey] = val
        bps[nkey] = key
    return vals, bps


def pack_forget(child_vals: dict, t: int, j: int, dvec, p: int):
    base = 2 * p + 2
    m = t - 1
    plow = base ** (t - j - 1)
    vals: dict = {}
    bps: dict = {}
    for key, val in child_vals.items():
        high, rest = divmod(key, plow * base)
        dv, low = divmod(rest, plow)
        sv = dv - (p + 1)
        rkey = high * plow + low
        _push(vals, bps, rkey, val, (key, 0))
        lmax = -sv - 1
        if lmax > p:
            lmax = p
        if lmax >= 1:
            rdigits = _decode(rkey, base, m)
            for l in range(1, lmax + 1):
                nkey = 0
                for i in range(m):
                    a = l - dvec[i] + p + 1
                    if a < rdigits[i]:
                        a = rdigits[i]
                    nkey = nkey * base + a
                _push(vals, bps, nkey, val + l, (key, l))
    return vals, bps


def pack_join(left_vals: dict, right_vals: dict, t: int, p: int):
    """Combine pairs with s'(v) + s''(v) < 0 for every bag vertex."""
    base = 2 * p + 2
    litems = [(key, _decode(key, base, t), val) for key, val in left_vals.items()]
    ritems = [(key, _decode(key, base, t), val) for key, val in right_vals.items()]
    vals: dict = {}
    bps: dict = {}
    for lkey, ld, lval in litems:
        for rkey, rd, rval in ritems:
            ok = True
            for i in range(t):
                # s'+s'' < 0  <=>  digit' + digit'' < 2p+2
                if ld[i] + rd[i] >= base:
                    ok = False
                    break
            if not ok:
                continue
            nkey = 0
            for i in range(t):
                a = ld[i]
                if rd[i] > a:
                    a = rd[i]
                nkey = nkey * base + a
            _push(vals, bps, nkey, lval + rval, (lkey, rkey))
    return vals, bps


# -- brute-force oracle ----------------------------------------------------

def oracle_best(n: int, p: int, dist, packing: bool):
    """Exact optimum over valid assignments f: V -> {0..p}.

    dist is a 0-based n x n matrix.  Returns (value, vector); the vector
    is the lexicographically smallest among the optima because values
    are tried in increasing order and only strict improvements replace
    the incumbent.
    """
    best_val = 0
    best_vec = tuple([0] * n)
    f = [0] * n
    bc: list[int] = []  # indices of current broadcasters

    def rec(i: int, total: int) -> None:
        nonlocal best_val, best_vec
        if i == n:
            if total > best_val:
                best_val = total
                best_vec = tuple(f)
            return
        if total + (n - i) * p <= best_val:
            return
        rec(i + 1, total)
        row = dist[i]
        if packing:
            lim = p
            for u in bc:
                cap = row[u] - f[u] - 1
                if cap < lim:
                    lim = cap
        else:
            lim = p
            for u in bc:
                d = row[u]
                if f[u] >= d:
                    lim = 0
                    break
                if d - 1 < lim:
                    lim = d - 1
        if lim >= 1:
            bc.append(i)
            for val in range(1, lim + 1):
                f[i] = val
                rec(i + 1, total + val)
            f[i] = 0
            bc.pop()

    rec(0, 0)
    return best_val, best_vec


def oracle_profile(n: int, p: int, dist, packing: bool):
    """best[q] = optimum over assignments with every value <= q, for q in 0..p.

    One full feasibility-pruned enumeration; no value bound so that
    small-cap optima are not lost.
    """
    best = [0] * (p + 1)
    f = [0] * n
    bc: list[int] = []

    def rec(i: int, total: int, maxv: int) -> None:
        if i == n:
            if total > best[maxv]:
                best[maxv] = total
            return
        rec(i + 1, total, maxv)
        row = dist[i]
        if packing:
            lim = p
            for u in bc:
                cap = row[u] - f[u] - 1
                if cap < lim:
                    lim = cap
        else:
            lim = p
            for u in bc:
                d = row[u]
                if f[u] >= d:
                    lim = 0
                    break
                if d - 1 < lim:
                    lim = d - 1
        if lim >= 1:
            bc.append(i)
            for val in range(1, lim + 1):
                f[i] = val
                rec(i + 1, total + val, maxv if maxv > val else val)
            f[i] = 0
            bc.pop()

    rec(0, 0, 0)
    for q in range(1, p + 1):
        if best[q - 1] > best[q]:
            best[q] = best[q - 1]
    return best
