"""Finite complete lattices and join-preserving maps.

Elements are addressed by integer index into ``FiniteLattice.names``; the
input order of the carrier is the canonical order used for every iteration
and every report.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from .errors import (
    BottomNotPreserved,
    DomainMismatch,
    NoBounds,
    NotALattice,
    NotAPoset,
    NotJoinPreserving,
    UnknownElement,
)


@dataclass(frozen=True, eq=False)
class FiniteLattice:
    names: tuple
    leq: tuple  # leq[a][b] is True iff a <= b
    join_table: tuple
    meet_table: tuple
    top: int
    bottom: int
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {n: i for i, n in enumerate(self.names)})

    def __len__(self):
        return len(self.names)

    def __repr__(self):
        return f"FiniteLattice({' '.join(self.names)})"

    @property
    def elements(self):
        return range(len(self.names))

    def el(self, name) -> int:
        if isinstance(name, int):
            if 0 <= name < len(self.names):
                return name
            raise UnknownElement(f"no element with index {name}", witness=name)
        try:
            return self._index[name]
        except KeyError:
            raise UnknownElement(f"unknown element {name!r}", witness=name) from None

    def name(self, i: int) -> str:
        return self.names[i]

    def le(self, a: int, b: int) -> bool:
        return self.leq[a][b]

    def lt(self, a: int, b: int) -> bool:
        return a != b and self.leq[a][b]

    def join(self, a: int, b: int) -> int:
        return self.join_table[a][b]

    def meet(self, a: int, b: int) -> int:
        return self.meet_table[a][b]

    def join_all(self, items: Iterable[int]) -> int:
        out = self.bottom
        for x in items:
            out = self.join_table[out][x]
        return out

    def meet_all(self, items: Iterable[int]) -> int:
        out = self.top
        for x in items:
            out = self.meet_table[out][x]
        return out

    @cached_property
    def down_masks(self) -> tuple:
        """Bitmask of the principal down-set of each element."""
        n = len(self.names)
        return tuple(
            sum(1 << a for a in range(n) if self.leq[a][x]) for x in range(n)
        )

    @cached_property
    def covers(self) -> tuple:
        """Hasse edges (a, b) with a covered by b, in canonical order."""
        n = len(self.names)
        edges = []
        for a in range(n):
            for b in range(n):
                if a != b and self.leq[a][b]:
                    if not any(
                        c not in (a, b) and self.leq[a][c] and self.leq[c][b]
                        for c in range(n)
                    ):
                        edges.append((a, b))
        return tuple(edges)

    @cached_property
    def join_irreducibles(self) -> tuple:
        """Non-bottom elements with exactly one lower cover, sorted by height."""
        lower = {x: [] for x in self.elements}
        for a, b in self.covers:
            lower[b].append(a)
        ji = [x for x in self.elements if x != self.bottom and len(lower[x]) == 1]
        return tuple(sorted(ji, key=lambda x: (bin(self.down_masks[x]).count("1"), x)))

    @cached_property
    def height(self) -> tuple:
        h = [0] * len(self)
        order = sorted(self.elements, key=lambda x: bin(self.down_masks[x]).count("1"))
        for b in order:
            for a, c in self.covers:
                if c == b:
                    h[b] = max(h[b], h[a] + 1)
        return tuple(h)

    def sublattice(self, subset: Sequence[int]) -> "FiniteLattice":
        """The lattice on ``subset`` with the induced order (joins and meets recomputed)."""
        subset = sorted(set(subset))
        names = [self.names[i] for i in subset]
        pairs = [
            (self.names[a], self.names[b])
            for a in subset
            for b in subset
            if self.leq[a][b]
        ]
        return validate_lattice(names, pairs)


def _transitive_closure(n, rel):
    reach = [row[:] for row in rel]
    for i in range(n):
        reach[i][i] = True
    for k in range(n):
        rk = reach[k]
        for i in range(n):
            if reach[i][k]:
                ri = reach[i]
                for j in range(n):
                    if rk[j]:
                        ri[j] = True
    return reach


def validate_lattice(carrier: Sequence[str], leq_pairs: Iterable) -> FiniteLattice:
    """Build a lattice from a carrier and any generating relation (Hasse edges suffice)."""
    names = tuple(str(c) for c in carrier)
    if len(set(names)) != len(names):
        raise NotAPoset("duplicate element names", witness=names)
    n = len(names)
    if n == 0:
        raise NoBounds("empty carrier has no bounds")
    index = {x: i for i, x in enumerate(names)}
    rel = [[False] * n for _ in range(n)]
    for a, b in leq_pairs:
        for x in (a, b):
            if x not in index:
                raise UnknownElement(f"unknown element {x!r} in order", witness=x)
        rel[index[a]][index[b]] = True
    leq = _transitive_closure(n, rel)
    for a in range(n):
        for b in range(a + 1, n):
            if leq[a][b] and leq[b][a]:
                raise NotAPoset(
                    f"{names[a]} <= {names[b]} <= {names[a]} violates antisymmetry",
                    witness=(names[a], names[b]),
                )

    def least(cands):
        for c in cands:
            if all(leq[c][d] for d in cands):
                return c
        return None

    def greatest(cands):
        for c in cands:
            if all(leq[d][c] for d in cands):
                return c
        return None

    join_t = [[0] * n for _ in range(n)]
    meet_t = [[0] * n for _ in range(n)]
    for a in range(n):
        for b in range(a, n):
            j = least([c for c in range(n) if leq[a][c] and leq[b][c]])
            if j is None:
                raise NotALattice(
                    f"{names[a]} and {names[b]} have no least upper bound",
                    witness=(names[a], names[b]),
                )
            m = greatest([c for c in range(n) if leq[c][a] and leq[c][b]])
            if m is None:
                raise NotALattice(
                    f"{names[a]} and {names[b]} have no greatest lower bound",
                    witness=(names[a], names[b]),
                )
            join_t[a][b] = join_t[b][a] = j
            meet_t[a][b] = meet_t[b][a] = m
    top = greatest(list(range(n)))
    bottom = least(list(range(n)))
    if top is None or bottom is None:
        raise NoBounds("no global top or bottom")
    return FiniteLattice(
        names,
        tuple(tuple(r) for r in leq),
        tuple(tuple(r) for r in join_t),
        tuple(tuple(r) for r in meet_t),
        top,
        bottom,
    )


def chain(names: Sequence[str]) -> FiniteLattice:
    return validate_lattice(names, list(zip(names, names[1:])))


def check_all_subsets(L: FiniteLattice, max_size: int = 12) -> None:
    """Exhaustive completeness oracle: every subset has a least upper and greatest lower bound."""
    n = len(L)
    if n > max_size:
        return
    for mask in range(1 << n):
        subset = [i for i in range(n) if mask >> i & 1]
        ups = [c for c in range(n) if all(L.le(s, c) for s in subset)]
        lows = [c for c in range(n) if all(L.le(c, s) for s in subset)]
        j = L.join_all(subset)
        m = L.meet_all(subset)
        if j not in ups or not all(L.le(j, u) for u in ups):
            raise NotALattice("subset join mismatch", witness=[L.names[i] for i in subset])
        if m not in lows or not all(L.le(d, m) for d in lows):
            raise NotALattice("subset meet mismatch", witness=[L.names[i] for i in subset])


@dataclass(frozen=True, eq=False)
class SupMap:
    dom: FiniteLattice
    cod: FiniteLattice
    table: tuple

    def __call__(self, a: int) -> int:
        return self.table[a]

    def __eq__(self, other):
        return (
            isinstance(other, SupMap)
            and self.dom is other.dom
            and self.cod is other.cod
            and self.table == other.table
        )

    def __hash__(self):
        return hash(self.table)

    def as_names(self) -> dict:
        return {self.dom.names[a]: self.cod.names[b] for a, b in enumerate(self.table)}


def _table_from(dom, cod, table):
    if isinstance(table, dict):
        out = [None] * len(dom)
        for k, v in table.items():
            out[dom.el(k)] = cod.el(v)
        if None in out:
            missing = [dom.names[i] for i, v in enumerate(out) if v is None]
            raise UnknownElement("map is not total", witness=missing)
        return tuple(out)
    if len(table) != len(dom):
        raise DomainMismatch("table length differs from domain size")
    return tuple(cod.el(v) for v in table)


def join_violation(dom, cod, table):
    """First pair (a, b) where the table fails to preserve the binary join, or None."""
    for a in dom.elements:
        for b in range(a + 1, len(dom)):
            if table[dom.join(a, b)] != cod.join(table[a], table[b]):
                return a, b
    return None


def validate_supmap(dom: FiniteLattice, cod: FiniteLattice, table) -> SupMap:
    table = _table_from(dom, cod, table)
    if table[dom.bottom] != cod.bottom:
        raise BottomNotPreserved(
            f"bottom maps to {cod.names[table[dom.bottom]]}",
            witness=(dom.names[dom.bottom], cod.names[table[dom.bottom]]),
        )
    bad = join_violation(dom, cod, table)
    if bad is not None:
        a, b = bad
        raise NotJoinPreserving(
            f"f({dom.names[a]} v {dom.names[b]}) != f({dom.names[a]}) v f({dom.names[b]})",
            witness=(dom.names[a], dom.names[b]),
        )
    return SupMap(dom, cod, table)


def preserves_all_joins(dom, cod, table) -> bool:
    """Brute-force oracle over every subset of the domain."""
    n = len(dom)
    for mask in range(1 << n):
        subset = [i for i in range(n) if mask >> i & 1]
        if table[dom.join_all(subset)] != cod.join_all(table[i] for i in subset):
            return False
    return True


def right_adjoint(f: SupMap) -> tuple:
    """Table of the right adjoint: b -> join of {a : f(a) <= b}."""
    dom, cod = f.dom, f.cod
    return tuple(
        dom.join_all(a for a in dom.elements if cod.le(f.table[a], b))
        for b in cod.elements
    )


def compose(f: SupMap, g: SupMap) -> SupMap:
    """``f`` after ``g``."""
    if g.cod is not f.dom and g.cod.names != f.dom.names:
        raise DomainMismatch("codomain of g differs from domain of f")
    return SupMap(g.dom, f.cod, tuple(f.table[g.table[a]] for a in g.dom.elements))


def identity(L: FiniteLattice) -> SupMap:
    return SupMap(L, L, tuple(L.elements))


def is_isomorphism(f: SupMap) -> bool:
    if len(set(f.table)) != len(f.cod) or len(f.dom) != len(f.cod):
        return False
    if join_violation(f.dom, f.cod, f.table) is not None:
        return False
    inv = [0] * len(f.cod)
    for a, b in enumerate(f.table):
        inv[b] = a
    return join_violation(f.cod, f.dom, inv) is None


def order_automorphisms(L: FiniteLattice):
    """All order automorphisms of ``L`` by backtracking, in lexicographic order."""
    n = len(L)
    h = L.height
    deg_up = [sum(L.leq[x]) for x in range(n)]
    deg_down = [sum(L.leq[y][x] for y in range(n)) for x in range(n)]
    sig = [(h[x], deg_up[x], deg_down[x]) for x in range(n)]
    perm = [-1] * n
    used = [False] * n

    def extend(i):
        if i == n:
            yield tuple(perm)
            return
        for v in range(n):
            if used[v] or sig[v] != sig[i]:
                continue
            if all(L.leq[i][j] == L.leq[v][perm[j]] and L.leq[j][i] == L.leq[perm[j]][v]
                   for j in range(i)):
                perm[i] = v
                used[v] = True
                yield from extend(i + 1)
                used[v] = False
        perm[i] = -1

    yield from extend(0)


def product_lattice(X: FiniteLattice, Y: FiniteLattice) -> FiniteLattice:
    names = [f"({x},{y})" for x in X.names for y in Y.names]
    pairs = []
    for a, b in X.covers:
        for y in Y.elements:
            pairs.append((f"({X.names[a]},{Y.names[y]})", f"({X.names[b]},{Y.names[y]})"))
    for a, b in Y.covers:
        for x in X.elements:
            pairs.append((f"({X.names[x]},{Y.names[a]})", f"({X.names[x]},{Y.names[b]})"))
    return validate_lattice(names, pairs)


def all_subsets(items):
    items = list(items)
    for r in range(len(items) + 1):
        yield from combinations(items, r)
