"""Backtracking search for join-preserving maps subject to extra laws.

A join-preserving map on a finite lattice is fixed by its values on the
join-irreducibles.  Values are assigned irreducible by irreducible; every
constraint is checked as soon as all the elements it mentions are determined.
"""

from __future__ import annotations

from typing import Callable, Iterator, Sequence

from .order import FiniteLattice


class MapSearch:
    """Enumerate tables dom -> cod that preserve joins and satisfy constraints.

    A constraint is a pair (elements, check) where check(table) -> bool reads
    only table[x] for x in elements.
    """

    def __init__(self, dom: FiniteLattice, cod: FiniteLattice, candidates=None):
        self.dom = dom
        self.cod = cod
        self.ji = list(dom.join_irreducibles)
        pos = {j: i for i, j in enumerate(self.ji)}
        self.below = [[pos[j] for j in self.ji if dom.le(j, x)] for x in dom.elements]
        self.step = [max(b) if b else -1 for b in self.below]
        self.at_step = [[x for x in dom.elements if self.step[x] == i] for i in range(len(self.ji))]
        self.constraints = [[] for _ in range(len(self.ji) + 1)]
        self.candidates = candidates
        # join preservation on pairs, attached where the join becomes known
        for a in dom.elements:
            for b in range(a + 1, len(dom)):
                ab = dom.join(a, b)
                if ab in (a, b):
                    continue
                self.add((a, b, ab), self._join_check(a, b, ab))

    def _join_check(self, a, b, ab):
        J = self.cod.join_table
        return lambda t: t[ab] == J[t[a]][t[b]]

    def add(self, elements: Sequence[int], check: Callable) -> None:
        s = max(self.step[x] for x in elements)
        self.constraints[s + 1].append(check)

    def run(self, limit=None) -> Iterator[tuple]:
        dom, cod = self.dom, self.cod
        n = len(dom)
        table = [None] * n
        for x in dom.elements:
            if self.step[x] == -1:
                table[x] = cod.bottom
        if not all(c(table) for c in self.constraints[0]):
            return
        k = len(self.ji)
        found = 0
        vals = [0] * k
        J = cod.join_table

        def rec(i):
            nonlocal found
            if i == k:
                found += 1
                yield tuple(table)
                return
            j = self.ji[i]
            cands = self.candidates[j] if self.candidates is not None else cod.elements
            lower = [vals[p] for p in self.below[j] if p != i]
            for v in cands:
                if any(not cod.le(w, v) for w in lower):
                    continue
                vals[i] = v
                for x in self.at_step[i]:
                    acc = cod.bottom
                    for p in self.below[x]:
                        acc = J[acc][vals[p]]
                    table[x] = acc
                if all(c(table) for c in self.constraints[i + 1]):
                    yield from rec(i + 1)
                    if limit is not None and found >= limit:
                        return
            for x in self.at_step[i]:
                table[x] = None

        yield from rec(0)


def search_supmaps(dom: FiniteLattice, cod: FiniteLattice, limit=None) -> list:
    return list(MapSearch(dom, cod).run(limit))


def search_homs(Q, R, strong=False, involutive=False, anti=False, injective=False,
                acting=None, limit=None, extra=()) -> list:
    """All quantale (anti-)homomorphisms Q -> R with optional side conditions.

    ``acting`` is a list of (act_dom, act_cod) callables for module maps:
    h(act_dom(x)) == act_cod(h(x)) is enforced for each pair.
    """
    S = MapSearch(Q.lattice, R.lattice)
    M, N = Q.mult, R.mult
    for a in Q.elements:
        for b in Q.elements:
            ab = M[a][b]
            if anti:
                S.add((a, b, ab), lambda t, a=a, b=b, ab=ab: t[ab] == N[t[b]][t[a]])
            else:
                S.add((a, b, ab), lambda t, a=a, b=b, ab=ab: t[ab] == N[t[a]][t[b]])
    if strong:
        top, rtop = Q.top, R.top
        S.add((top,), lambda t: t[top] == rtop)
    if involutive:
        for a in Q.elements:
            ia = Q.inv(a)
            S.add((a, ia), lambda t, a=a, ia=ia: t[ia] == R.inv(t[a]))
    if acting:
        for fd, fc in acting:
            for a in Q.elements:
                b = fd(a)
                S.add((a, b), lambda t, a=a, b=b, fc=fc: t[b] == fc(t[a]))
    for elements, check in extra:
        S.add(elements, check)
    out = []
    for t in S.run():
        if injective and len(set(t)) != len(t):
            continue
        out.append(t)
        if limit is not None and len(out) >= limit:
            break
    return out
