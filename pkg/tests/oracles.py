"""Slow brute-force reference implementations used by the tests.

Everything here works from raw tables (order matrix, product table) and the
bare definitions, without calling back into the library's algorithms.
"""

from itertools import product


class Raw:
    def __init__(self, Q):
        self.names = list(Q.names)
        self.n = len(self.names)
        self.le = [list(r) for r in Q.lattice.leq]
        self.m = [list(r) for r in Q.mult]
        self.inv = list(Q.involution) if Q.involution is not None else None
        self.top = next(a for a in range(self.n) if all(self.le[b][a] for b in range(self.n)))
        self.bot = next(a for a in range(self.n) if all(self.le[a][b] for b in range(self.n)))

    def join(self, a, b):
        ups = [c for c in range(self.n) if self.le[a][c] and self.le[b][c]]
        return next(c for c in ups if all(self.le[c][d] for d in ups))

    def join_all(self, items):
        acc = self.bot
        for x in items:
            acc = self.join(acc, x)
        return acc

    def meet_all(self, items):
        items = list(items)
        lows = [c for c in range(self.n) if all(self.le[c][x] for x in items)]
        return next(c for c in lows if all(self.le[d][c] for d in lows))

    def el(self, name):
        return self.names.index(name)


def is_quantale(R: Raw) -> bool:
    r = range(R.n)
    for a in r:
        for b in r:
            for c in r:
                if R.m[R.m[a][b]][c] != R.m[a][R.m[b][c]]:
                    return False
                bc = R.join(b, c)
                if R.m[a][bc] != R.join(R.m[a][b], R.m[a][c]):
                    return False
                if R.m[bc][a] != R.join(R.m[b][a], R.m[c][a]):
                    return False
        if R.m[a][R.bot] != R.bot or R.m[R.bot][a] != R.bot:
            return False
    return True


def is_prime(R: Raw, p) -> bool:
    if p == R.top:
        return False
    t = R.top
    for a in range(R.n):
        for b in range(R.n):
            if R.le[R.m[a][b]][p]:
                if not (R.le[R.m[a][t]][p] or R.le[R.m[t][b]][p]):
                    return False
    return True


def is_strongly_prime(R: Raw, p) -> bool:
    if p == R.top:
        return False
    t = R.top
    for a in range(R.n):
        for b in range(R.n):
            if R.le[R.m[a][b]][p]:
                x = R.join(a, R.m[a][t])
                y = R.join(b, R.m[t][b])
                if not (R.le[x][p] or R.le[y][p]):
                    return False
    return True


def primes(R: Raw):
    return [p for p in range(R.n) if is_prime(R, p)]


def strong_primes(R: Raw):
    return [p for p in range(R.n) if is_strongly_prime(R, p)]


def homs(D: Raw, C: Raw, strong=False, involutive=False, injective=False):
    """All maps D -> C preserving binary joins, bottom and products (backtracking)."""
    n = D.n
    out = []
    t = [None] * n

    def ok(k):
        # check each constraint at the step where its last element is assigned
        for a in range(k + 1):
            for b in range(k + 1):
                j = D.join(a, b)
                if max(a, b, j) == k and t[j] != C.join(t[a], t[b]):
                    return False
                p = D.m[a][b]
                if max(a, b, p) == k and t[p] != C.m[t[a]][t[b]]:
                    return False
            if involutive:
                ia = D.inv[a]
                if max(a, ia) == k and t[ia] != C.inv[t[a]]:
                    return False
        if k == D.bot and t[k] != C.bot:
            return False
        if strong and k == D.top and t[k] != C.top:
            return False
        return True

    def rec(k):
        if k == n:
            if injective and len(set(t)) != n:
                return
            out.append(tuple(t))
            return
        for v in range(C.n):
            t[k] = v
            if ok(k):
                rec(k + 1)
        t[k] = None

    rec(0)
    return out


def bideals(X: Raw, Y: Raw):
    """All down-sets of X x Y containing the bottom cross and closed under
    joins in either coordinate (brute force over all subsets)."""
    cells = [(x, y) for x in range(X.n) for y in range(Y.n)]
    cross = {(x, Y.bot) for x in range(X.n)} | {(X.bot, y) for y in range(Y.n)}
    out = []
    for mask in range(1 << len(cells)):
        S = {cells[i] for i in range(len(cells)) if mask >> i & 1}
        if not cross <= S:
            continue
        good = True
        for (a, b) in S:
            for (c, d) in cells:
                if X.le[c][a] and Y.le[d][b] and (c, d) not in S:
                    good = False
                    break
            if not good:
                break
            for (c, d) in S:
                if d == b and (X.join(a, c), b) not in S:
                    good = False
                    break
                if c == a and (a, Y.join(b, d)) not in S:
                    good = False
                    break
            if not good:
                break
        if good:
            out.append(frozenset(S))
    return out


def nuclei(R: Raw):
    """Fixed-point sets of all nuclei, by brute force over subsets."""
    out = []
    for mask in range(1 << R.n):
        F = [i for i in range(R.n) if mask >> i & 1]
        if R.top not in F:
            continue
        if any(R.meet_all([a, b]) not in F for a in F for b in F):
            continue

        def c(x):
            return R.meet_all([s for s in F if R.le[x][s]])

        if all(
            R.le[R.m[c(a)][c(b)]][c(R.m[a][b])] for a in range(R.n) for b in range(R.n)
        ):
            out.append(frozenset(F))
    return out


def topology_closure(A: Raw, npoints, seeds, involutive):
    """Least family of presheaves containing the constants bot, top and the seeds,
    closed under the topology axioms; naive saturation."""
    S = {tuple([A.bot] * npoints), tuple([A.top] * npoints)} | {tuple(s) for s in seeds}
    while True:
        new = set(S)
        for f in S:
            for a in range(A.n):
                new.add(tuple(A.m[v][a] for v in f))
            if involutive:
                new.add(tuple(A.inv[v] for v in f))
            for g in S:
                new.add(tuple(A.join(x, y) for x, y in zip(f, g)))
                new.add(tuple(A.m[x][y] for x, y in zip(f, g)))
        if new == S:
            return S
        S = new


def all_presheaves(A: Raw, npoints):
    return product(range(A.n), repeat=npoints)
