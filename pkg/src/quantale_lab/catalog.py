"""Built-in quantales."""

from __future__ import annotations

import random
from functools import lru_cache
from itertools import product

from .errors import UnknownName
from .order import chain, validate_lattice
from .quantale import (
    Quantale,
    associativity_violation,
    bimorphism_violation,
    canonical_key,
    find_isomorphism,
    is_pre_idempotent,
    validate_quantale,
)

Q2_ELEMENTS = ("bot", "b", "al", "ar", "c", "top")
Q2_ORDER = (("bot", "b"), ("b", "al"), ("b", "ar"), ("al", "c"), ("ar", "c"), ("c", "top"))
# rows/columns over b, al, ar, c, top
Q2_ROWS = {
    "b": ("b", "b", "ar", "ar", "ar"),
    "al": ("al", "al", "top", "top", "top"),
    "ar": ("b", "b", "ar", "ar", "ar"),
    "c": ("al", "al", "top", "top", "top"),
    "top": ("al", "al", "top", "top", "top"),
}
Q2_INVOLUTION = {"al": "ar", "ar": "al"}


def _from_rows(L, rows, unit=None, involution=None, name=""):
    cols = [x for x in L.names if x != L.names[L.bottom]]
    mult = {(r, c): v for r, vals in rows.items() for c, v in zip(cols, vals)}
    return validate_quantale(L, mult, unit, involution, name)


@lru_cache(maxsize=None)
def q2() -> Quantale:
    L = validate_lattice(Q2_ELEMENTS, Q2_ORDER)
    return _from_rows(L, Q2_ROWS, None, Q2_INVOLUTION, "q2")


@lru_cache(maxsize=None)
def two() -> Quantale:
    L = chain(("bot", "top"))
    return _from_rows(L, {"top": ("top",)}, "top", {}, "two")


@lru_cache(maxsize=None)
def c3l() -> Quantale:
    L = chain(("bot", "a", "top"))
    return _from_rows(L, {"a": ("a", "top"), "top": ("a", "top")}, None, None, "c3l")


@lru_cache(maxsize=None)
def c3r() -> Quantale:
    L = chain(("bot", "a", "top"))
    return _from_rows(L, {"a": ("a", "a"), "top": ("top", "top")}, None, None, "c3r")


@lru_cache(maxsize=None)
def c3trivial() -> Quantale:
    L = chain(("bot", "a", "top"))
    return _from_rows(L, {"a": ("bot", "bot"), "top": ("bot", "bot")}, None, {}, "c3trivial")


@lru_cache(maxsize=None)
def c3frame() -> Quantale:
    L = chain(("bot", "a", "top"))
    return _from_rows(L, {"a": ("a", "a"), "top": ("a", "top")}, "top", {}, "c3frame")


@lru_cache(maxsize=None)
def diamond() -> Quantale:
    """The four-element Boolean frame with meet as multiplication."""
    L = validate_lattice(("bot", "p", "q", "top"), (("bot", "p"), ("bot", "q"), ("p", "top"), ("q", "top")))
    rows = {"p": ("p", "bot", "p"), "q": ("bot", "q", "q"), "top": ("p", "q", "top")}
    return _from_rows(L, rows, "top", {}, "diamond")


@lru_cache(maxsize=None)
def lq4() -> Quantale:
    """Diamond lattice with x*y = y for x != bot: left-sided, semi-unital, a factor."""
    L = validate_lattice(("bot", "p", "q", "top"), (("bot", "p"), ("bot", "q"), ("p", "top"), ("q", "top")))
    rows = {x: ("p", "q", "top") for x in ("p", "q", "top")}
    return _from_rows(L, rows, None, None, "lq4")


@lru_cache(maxsize=None)
def rq4() -> Quantale:
    from .quantale import opposite_quantale

    return opposite_quantale(lq4()).renamed("rq4")


# ---------------------------------------------------------------- strictly quantized

def _unitalization_of_q2():
    """Q2 x {0,1}: (x,e)*(y,d) = (x*y v e.y v d.x, e and d)."""
    Q = q2()
    pairs = [(x, eps) for eps in (0, 1) for x in Q.elements]
    idx = {p: i for i, p in enumerate(pairs)}
    n = len(pairs)
    le = [[Q.le(a[0], b[0]) and a[1] <= b[1] for b in pairs] for a in pairs]
    mult = [[0] * n for _ in range(n)]
    for (x, e), i in idx.items():
        for (y, d), j in idx.items():
            v = Q.m(x, y)
            if e:
                v = Q.join(v, y)
            if d:
                v = Q.join(v, x)
            mult[i][j] = idx[(v, e & d)]
    return Q, pairs, idx, le, mult


def _nucleus_fixed_sets(n, le, mult, top):
    """All nucleus fixed-point sets of a quantale on n <= 16 elements (brute force)."""
    meet = [[None] * n for _ in range(n)]
    for a in range(n):
        for b in range(n):
            lows = [c for c in range(n) if le[c][a] and le[c][b]]
            meet[a][b] = next(c for c in lows if all(le[d][c] for d in lows))
    # implications
    def join_of(cands):
        ups = [u for u in range(n) if all(le[c][u] for c in cands)]
        return next(u for u in ups if all(le[u][v] for v in ups))

    right = [[join_of([g for g in range(n) if le[mult[a][g]][s]]) for s in range(n)] for a in range(n)]
    left = [[join_of([g for g in range(n) if le[mult[g][a]][s]]) for a in range(n)] for s in range(n)]
    out = []
    for mask in range(1 << n):
        if not (mask >> top) & 1:
            continue
        members = [s for s in range(n) if (mask >> s) & 1]
        ok = True
        for s in members:
            for t in members:
                if not (mask >> meet[s][t]) & 1:
                    ok = False
                    break
            if not ok:
                break
            for a in range(n):
                if not (mask >> right[a][s]) & 1 or not (mask >> left[s][a]) & 1:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append(members)
    return out


def _closure(members, le, x):
    ups = [s for s in members if le[x][s]]
    return next(s for s in ups if all(le[s][t] for t in ups))


def _sq2_from_fixed(Q, pairs, idx, le, mult, F):
    c = [_closure(F, le, x) for x in range(len(pairs))]
    # Q2 must embed injectively and its top must be the new top
    low = [c[idx[(x, 0)]] for x in Q.elements]
    if len(set(low)) != len(low) or c[idx[(Q.top, 0)]] != c[idx[(Q.top, 1)]]:
        return None
    names = {}
    for x in Q.elements:
        names[low[x]] = Q.names[x]
    e = c[idx[(Q.bottom, 1)]]
    names.setdefault(e, "e")
    for x in ("b", "al", "ar", "c"):
        s = c[idx[(Q.el(x), 1)]]
        names.setdefault(s, x + "~")
    assert set(names) == set(F)
    order = sorted(F, key=lambda s: (sum(le[t][s] for t in F), pairs[s][1], pairs[s][0]))
    carrier = [names[s] for s in order]
    rel = [(names[s], names[t]) for s in F for t in F if le[s][t] and s != t]
    L = validate_lattice(carrier, rel)
    table = {(names[s], names[t]): names[c[mult[s][t]]] for s in F for t in F}
    inv_q = Q.involution
    inv = {}
    for s in F:
        x, eps = pairs[s]
        inv[names[s]] = names[c[idx[(inv_q[x], eps)]]]
    return validate_quantale(L, table, names[e], inv)


@lru_cache(maxsize=None)
def enumerate_strictly_quantized() -> tuple:
    """Strictly quantized unital quantales up to isomorphism.

    Each one is a quotient of the free unitalization of Q2 by a nucleus that is
    injective on Q2 and identifies its top with the new top.
    """
    Q, pairs, idx, le, mult = _unitalization_of_q2()
    top = idx[(Q.top, 1)]
    found = []
    for F in _nucleus_fixed_sets(len(pairs), le, mult, top):
        R = _sq2_from_fixed(Q, pairs, idx, le, mult, F)
        if R is None:
            continue
        if any(find_isomorphism(R, S, involutive=True) is not None for S in found):
            continue
        found.append(R)
    found.sort(key=lambda R: (canonical_key(R), R.names))
    out = []
    for i, R in enumerate(found, 1):
        out.append(R.renamed(f"sq2-{i}"))
    for R in out:
        assert len(R) <= 11 and is_pre_idempotent(R)
    return tuple(out)


def smallest_ambient() -> Quantale:
    return min(enumerate_strictly_quantized(), key=len)


def q2_inclusion(ambient: Quantale) -> tuple:
    """Indices in the ambient of the Q2 elements, in Q2 order."""
    return tuple(ambient.el(x) for x in Q2_ELEMENTS)


# ---------------------------------------------------------------- registry

_BUILTINS = {
    "two": two,
    "c3l": c3l,
    "c3r": c3r,
    "c3trivial": c3trivial,
    "q2": q2,
    "c3frame": c3frame,
    "diamond": diamond,
    "lq4": lq4,
    "rq4": rq4,
}


def catalog_names() -> list:
    return list(_BUILTINS) + [f"sq2-{i}" for i in range(1, 7)]


def catalog(name: str) -> Quantale:
    if name in _BUILTINS:
        return _BUILTINS[name]()
    if name.startswith("sq2-"):
        members = enumerate_strictly_quantized()
        try:
            k = int(name[4:])
        except ValueError:
            k = 0
        if 1 <= k <= len(members):
            return members[k - 1]
    raise UnknownName(f"no built-in quantale named {name!r}", witness=name)


def all_catalog() -> list:
    return [catalog(n) for n in catalog_names()]


# ---------------------------------------------------------------- random instances

def random_left_sided_semi_unital(rng: random.Random, max_size=5, tries=200):
    """A random left-sided semi-unital quantale on a random small lattice, or None."""
    lattices = _small_lattices(max_size)
    for _ in range(tries):
        L = rng.choice(lattices)
        Q = _random_mult(L, rng, left=True)
        if Q is not None:
            return Q
    return None


def _small_lattices(max_size):
    out = [chain(("bot", "top")), chain(("bot", "a", "top"))]
    if max_size >= 4:
        out.append(chain(("bot", "a", "b", "top")))
        out.append(validate_lattice(("bot", "p", "q", "top"), (("bot", "p"), ("bot", "q"), ("p", "top"), ("q", "top"))))
    if max_size >= 5:
        out.append(chain(("bot", "a", "b", "c", "top")))
        out.append(validate_lattice(("bot", "a", "p", "q", "top"),
                                    (("bot", "a"), ("a", "p"), ("a", "q"), ("p", "top"), ("q", "top"))))
        out.append(validate_lattice(("bot", "p", "q", "a", "top"),
                                    (("bot", "p"), ("bot", "q"), ("p", "a"), ("q", "a"), ("a", "top"))))
        out.append(validate_lattice(("bot", "p", "q", "r", "top"),
                                    (("bot", "p"), ("bot", "q"), ("bot", "r"), ("p", "top"), ("q", "top"), ("r", "top"))))
        out.append(validate_lattice(("bot", "p", "a", "q", "top"),
                                    (("bot", "p"), ("p", "a"), ("bot", "q"), ("a", "top"), ("q", "top"))))
    return out


def _random_mult(L, rng, left=True, budget=4000):
    """Random backtracking over products of join-irreducibles, pruned early."""
    ji = list(L.join_irreducibles)
    n = len(L)
    # column-major so each right factor's column completes in one run
    cells = [(a, b) for b in ji for a in ji]
    val = {}
    steps = [0]

    def extend():
        table = [[L.bottom] * n for _ in range(n)]
        for x in range(n):
            jx = [j for j in ji if L.le(j, x)]
            for y in range(n):
                jy = [j for j in ji if L.le(j, y)]
                table[x][y] = L.join_all(val[(a, b)] for a in jx for b in jy)
        return table

    def consistent(a, b, v):
        for (c, d), w in val.items():
            if L.le(c, a) and L.le(d, b) and not L.le(w, v):
                return False
            if L.le(a, c) and L.le(b, d) and not L.le(v, w):
                return False
        return True

    def rec(i):
        steps[0] += 1
        if steps[0] > budget:
            return None
        if i == len(cells):
            table = extend()
            if bimorphism_violation(L, table) or associativity_violation(L, table):
                return None
            t = L.top
            for x in range(n):
                if left and not L.le(table[t][x], x):
                    return None
                if not (L.le(x, table[t][x]) and L.le(x, table[x][t])):
                    return None
            return table
        a, b = cells[i]
        cand = [v for v in L.elements if not left or L.le(v, b)]
        rng.shuffle(cand)
        for v in cand:
            if not consistent(a, b, v):
                continue
            val[(a, b)] = v
            done = i + 1 == len(cells) or cells[i + 1][1] != b
            if not done or not left or L.join_all(val[(c, b)] for c in ji) == b:
                r = rec(i + 1)
                if r is not None:
                    return r
            del val[(a, b)]
        return None

    table = rec(0)
    if table is None:
        return None
    return validate_quantale(L, table, None, None, "random")


def random_left_sided_family(seed=0, count=20, max_size=5):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        Q = random_left_sided_semi_unital(rng, max_size)
        if Q is not None:
            out.append(Q.renamed(f"rand{len(out)}"))
    return out
