"""Tensor products of finite sup-lattices and quantales, realized by bi-ideals."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from .errors import Eq22Violated, HypothesisFailed, InconsistentExtension, NotInvolutive, NotSemiUnital, SizeCapExceeded
from .order import FiniteLattice, SupMap
from .quantale import (
    Quantale,
    associativity_violation,
    bimorphism_violation,
    find_involutions,
    is_left_sided,
    is_right_sided,
    is_semi_unital,
    sided_subquantales,
    spectrum,
    validate_quantale,
)

DEFAULT_MAX_TENSOR = 4096


class _Grid:
    """Bitmask helpers for subsets of X x Y."""

    def __init__(self, X: FiniteLattice, Y: FiniteLattice):
        self.X, self.Y = X, Y
        self.nx, self.ny = len(X), len(Y)
        self.size = self.nx * self.ny
        nx, ny = self.nx, self.ny
        cross = 0
        for x in range(nx):
            for y in range(ny):
                if x == X.bottom or y == Y.bottom:
                    cross |= self.bit(x, y)
        self.cross = cross
        # down-closure of a single pair
        self.down = [
            [self._down_pair(x, y) for y in range(ny)] for x in range(nx)
        ]

    def bit(self, x, y):
        return 1 << (x * self.ny + y)

    def _down_pair(self, x, y):
        m = 0
        for a in range(self.nx):
            if self.X.le(a, x):
                for b in range(self.ny):
                    if self.Y.le(b, y):
                        m |= self.bit(a, b)
        return m

    def pairs(self, mask):
        ny = self.ny
        i = 0
        while mask:
            if mask & 1:
                yield divmod(i, ny)
            mask >>= 1
            i += 1

    def close(self, mask):
        """Least bi-ideal containing mask."""
        X, Y = self.X, self.Y
        mask |= self.cross
        while True:
            new = mask
            for x, y in list(self.pairs(mask)):
                new |= self.down[x][y]
            # coordinatewise joins: each row/column becomes principal
            for y in range(self.ny):
                xs = [x for x in range(self.nx) if new & self.bit(x, y)]
                new |= self.down[X.join_all(xs)][y]
            for x in range(self.nx):
                ys = [y for y in range(self.ny) if new & self.bit(x, y)]
                new |= self.down[x][Y.join_all(ys)]
            if new == mask:
                return mask
            mask = new

    def maximal(self, mask):
        """Maximal pairs of a bi-ideal outside the bottom cross."""
        ps = [p for p in self.pairs(mask & ~self.cross)]
        X, Y = self.X, self.Y
        return [
            (x, y)
            for x, y in ps
            if not any((a, b) != (x, y) and X.le(x, a) and Y.le(y, b) for a, b in ps)
        ]


@dataclass(frozen=True, eq=False)
class TensorLattice:
    X: FiniteLattice
    Y: FiniteLattice
    lattice: FiniteLattice
    masks: tuple
    elem_table: tuple = field(repr=False)
    grid: _Grid = field(repr=False)

    def elem(self, x, y) -> int:
        return self.elem_table[x][y]

    def factorization(self, d) -> list:
        return self.grid.maximal(self.masks[d])


def _bideal_name(grid, mask):
    mx = grid.maximal(mask)
    if not mx:
        return "bot"
    X, Y = grid.X, grid.Y
    return "|".join(f"({X.names[x]},{Y.names[y]})" for x, y in sorted(mx))


def _lattice_from_masks(names, masks, closer):
    n = len(masks)
    index = {m: i for i, m in enumerate(masks)}
    leq = tuple(tuple((masks[a] & ~masks[b]) == 0 for b in range(n)) for a in range(n))
    join = tuple(tuple(index[closer(masks[a] | masks[b])] for b in range(n)) for a in range(n))
    meet = tuple(tuple(index[masks[a] & masks[b]] for b in range(n)) for a in range(n))
    top = max(range(n), key=lambda i: bin(masks[i]).count("1"))
    bottom = min(range(n), key=lambda i: bin(masks[i]).count("1"))
    return FiniteLattice(tuple(names), leq, join, meet, top, bottom)


def tensor_lattice(X: FiniteLattice, Y: FiniteLattice, max_size=DEFAULT_MAX_TENSOR) -> TensorLattice:
    g = _Grid(X, Y)
    start = g.close(0)
    gens = [(x, y) for x in X.join_irreducibles for y in Y.join_irreducibles]
    elem_masks = {(x, y): g.close(g.down[x][y]) for x in range(len(X)) for y in range(len(Y))}
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for m in frontier:
            for p in gens:
                e = elem_masks[p]
                if e & ~m == 0:
                    continue
                u = g.close(m | e)
                if u not in seen:
                    seen.add(u)
                    if len(seen) > max_size:
                        raise SizeCapExceeded(f"tensor exceeds {max_size} bi-ideals", witness=len(seen))
                    nxt.append(u)
        frontier = nxt
    masks = sorted(seen, key=lambda m: (bin(m).count("1"), m))
    names = [_bideal_name(g, m) for m in masks]
    L = _lattice_from_masks(names, masks, g.close)
    index = {m: i for i, m in enumerate(masks)}
    elem = tuple(tuple(index[elem_masks[(x, y)]] for y in range(len(Y))) for x in range(len(X)))
    return TensorLattice(X, Y, L, tuple(masks), elem, g)


@dataclass(frozen=True, eq=False)
class TensorQuantale:
    Q: Quantale
    R: Quantale
    tl: TensorLattice
    quantale: Quantale

    @property
    def lattice(self):
        return self.tl.lattice

    def elem(self, a, b) -> int:
        """Index of a (x) b; a and b are indices or names."""
        if isinstance(a, str):
            a = self.Q.el(a)
        if isinstance(b, str):
            b = self.R.el(b)
        return self.tl.elem(a, b)

    def factorization(self, d):
        return self.tl.factorization(d)

    @cached_property
    def j_Q(self) -> SupMap:
        return SupMap(self.Q.lattice, self.lattice, tuple(self.elem(a, self.R.top) for a in self.Q.elements))

    @cached_property
    def j_R(self) -> SupMap:
        return SupMap(self.R.lattice, self.lattice, tuple(self.elem(self.Q.top, b) for b in self.R.elements))

    def extend(self, on_pairs, cod: FiniteLattice) -> tuple:
        """Join-extension of a map defined on elementary tensors, with a consistency check."""
        table = []
        for d in self.lattice.elements:
            gens = self.tl.grid.pairs(self.tl.masks[d])
            table.append(cod.join_all(on_pairs(x, y) for x, y in gens))
        return tuple(table)


def tensor_quantale(Q: Quantale, R: Quantale, max_size=DEFAULT_MAX_TENSOR, name="") -> TensorQuantale:
    tl = tensor_lattice(Q.lattice, R.lattice, max_size)
    L = tl.lattice
    g = tl.grid
    gens = [g.maximal(m) or [] for m in tl.masks]
    n = len(L)
    table = [[L.bottom] * n for _ in range(n)]
    for a in range(n):
        for b in range(n):
            acc = L.bottom
            for x1, y1 in gens[a]:
                for x2, y2 in gens[b]:
                    acc = L.join(acc, tl.elem(Q.m(x1, x2), R.m(y1, y2)))
            table[a][b] = acc
    # elementary tensors must multiply componentwise
    for x1 in Q.elements:
        for y1 in R.elements:
            for x2 in Q.elements:
                for y2 in R.elements:
                    lhs = table[tl.elem(x1, y1)][tl.elem(x2, y2)]
                    if lhs != tl.elem(Q.m(x1, x2), R.m(y1, y2)):
                        raise InconsistentExtension("tensor product not componentwise", witness=(x1, y1, x2, y2))
    if associativity_violation(L, table) or bimorphism_violation(L, table):
        raise InconsistentExtension("tensor multiplication failed re-verification")
    unit = None
    if Q.unit is not None and R.unit is not None:
        unit = tl.elem(Q.unit, R.unit)
    T = validate_quantale(L, table, unit, None, name or f"{Q.name}(x){R.name}", max_elements=max(64, n))
    return TensorQuantale(Q, R, tl, T)


def symmetry(T1: TensorLattice, T2: TensorLattice) -> SupMap:
    """c: X (x) Y -> Y (x) X swapping elementary tensors."""
    table = []
    for d in T1.lattice.elements:
        acc = T2.lattice.bottom
        for x, y in T1.grid.pairs(T1.masks[d]):
            acc = T2.lattice.join(acc, T2.elem(y, x))
        table.append(acc)
    return SupMap(T1.lattice, T2.lattice, tuple(table))


def canonical_embeddings(T: TensorQuantale):
    return T.j_Q, T.j_R


def _check_mutual_inverse(Q, R, tq, tr):
    for a in Q.elements:
        if tr[tq[a]] != a:
            raise Eq22Violated("theta_R(theta_Q(a)) != a", witness=(Q.names[a],))
        for b in Q.elements:
            if tq[Q.m(a, b)] != R.m(tq[b], tq[a]):
                raise Eq22Violated("theta_Q is not an anti-homomorphism", witness=(Q.names[a], Q.names[b]))
    for b in R.elements:
        if tq[tr[b]] != b:
            raise Eq22Violated("theta_Q(theta_R(b)) != b", witness=(R.names[b],))
        for c in R.elements:
            if tr[R.m(b, c)] != Q.m(tr[c], tr[b]):
                raise Eq22Violated("theta_R is not an anti-homomorphism", witness=(R.names[b], R.names[c]))


def tensor_involution(T: TensorQuantale, theta_Q, theta_R) -> tuple:
    """l(a (x) b) = theta_R(b) (x) theta_Q(a), extended by joins."""
    Q, R = T.Q, T.R
    if isinstance(theta_Q, SupMap):
        theta_Q = theta_Q.table
    if isinstance(theta_R, SupMap):
        theta_R = theta_R.table
    if Q.lattice is not R.lattice and len(Q) != len(R):
        raise Eq22Violated("factors have different sizes")
    _check_mutual_inverse(Q, R, theta_Q, theta_R)
    inv = T.extend(lambda x, y: T.elem(theta_R[y], theta_Q[x]), T.lattice)
    for x in Q.elements:
        for y in R.elements:
            if inv[T.elem(x, y)] != T.elem(theta_R[y], theta_Q[x]):
                raise InconsistentExtension("involution not well defined on elementary tensors")
    for a in Q.elements:
        if inv[T.j_Q(a)] != T.j_R(theta_Q[a]):
            raise InconsistentExtension("l o j_Q != j_R o theta_Q")
    for b in R.elements:
        if inv[T.j_R(b)] != T.j_Q(theta_R[b]):
            raise InconsistentExtension("l o j_R != j_Q o theta_R")
    return inv


def with_involution(T: TensorQuantale, inv) -> TensorQuantale:
    Qi = T.quantale.with_involution(inv)
    return TensorQuantale(T.Q, T.R, T.tl, Qi)


def involutions_satisfying_24(T: TensorQuantale, theta_Q, theta_R) -> list:
    """All involutions l on the tensor with l o j_Q = j_R o theta_Q and l o j_R = j_Q o theta_R."""
    out = []
    for inv in find_involutions(T.quantale):
        if all(inv[T.j_Q(a)] == T.j_R(theta_Q[a]) for a in T.Q.elements) and all(
            inv[T.j_R(b)] == T.j_Q(theta_R[b]) for b in T.R.elements
        ):
            out.append(inv)
    return out


def chain_anti_iso(Q: Quantale, R: Quantale):
    """Identity-on-names maps between two quantales on the same named carrier."""
    tq = tuple(R.el(x) for x in Q.names)
    tr = tuple(Q.el(x) for x in R.names)
    return tq, tr


def tensorially_involutive(Q: Quantale) -> TensorQuantale:
    """L(Q) (x) R(Q) with l(a (x) b) = b' (x) a'."""
    if not Q.is_involutive:
        raise NotInvolutive("quantale has no involution")
    if not is_semi_unital(Q):
        raise NotSemiUnital("quantale is not semi-unital")
    Ls, Rs, _ = sided_subquantales(Q)
    T = tensor_quantale(Ls.quantale, Rs.quantale, name=f"L({Q.name})(x)R({Q.name})")
    Lq, Rq = Ls.quantale, Rs.quantale
    tq = tuple(Rq.el(Q.names[Q.inv(Ls.elements[a])]) for a in Lq.elements)
    tr = tuple(Lq.el(Q.names[Q.inv(Rs.elements[b])]) for b in Rq.elements)
    inv = tensor_involution(T, tq, tr)
    return with_involution(T, inv)


@dataclass(frozen=True)
class TensorPrimes:
    primes: tuple
    factorization: dict

    def names(self, T: TensorQuantale):
        return [T.lattice.names[p] for p in self.primes]


def tensor_primes(T: TensorQuantale) -> TensorPrimes:
    Q, R = T.Q, T.R
    missing = []
    if not is_semi_unital(Q):
        missing.append("Q semi-unital")
    if not is_semi_unital(R):
        missing.append("R semi-unital")
    if not is_left_sided(Q):
        missing.append("Q left-sided")
    if not is_right_sided(R):
        missing.append("R right-sided")
    if missing:
        raise HypothesisFailed("hypotheses fail: " + ", ".join(missing), witness=missing)
    brute = spectrum(T.quantale)
    L = T.lattice
    fact = {}
    for q in spectrum(Q):
        for r in spectrum(R):
            p = L.join(T.elem(q, R.top), T.elem(Q.top, r))
            fact.setdefault(p, []).append((q, r))
    if sorted(fact) != sorted(brute):
        raise InconsistentExtension(
            "formula primes differ from brute-force primes",
            witness=(sorted(fact), sorted(brute)),
        )
    for p, qs in fact.items():
        if len(qs) != 1:
            raise InconsistentExtension("prime factorization not unique", witness=(p, qs))
    return TensorPrimes(tuple(sorted(brute)), {p: qs[0] for p, qs in fact.items()})
