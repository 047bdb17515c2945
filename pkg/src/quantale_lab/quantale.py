"""Finite quantales: validation, property predicates, spectra, involutions."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .errors import (
    BadInvolution,
    BadUnit,
    CarrierTooLarge,
    DomainMismatch,
    HypothesisFailed,
    NoInvolution,
    NotAssociative,
    NotBimorphic,
    NotSemiIntegral,
    NotSemiUnital,
    StructureMissing,
    UnknownElement,
)
from .order import FiniteLattice, SupMap, join_violation, order_automorphisms, validate_lattice

DEFAULT_MAX_ELEMENTS = 64


@dataclass(frozen=True, eq=False)
class Quantale:
    lattice: FiniteLattice
    mult: tuple
    unit: int | None = None
    involution: tuple | None = None
    name: str = ""

    def __repr__(self):
        label = self.name or "Quantale"
        return f"<{label}: {' '.join(self.names)}>"

    def __len__(self):
        return len(self.lattice)

    # lattice passthrough
    @property
    def names(self):
        return self.lattice.names

    @property
    def elements(self):
        return self.lattice.elements

    @property
    def top(self):
        return self.lattice.top

    @property
    def bottom(self):
        return self.lattice.bottom

    def el(self, name):
        return self.lattice.el(name)

    def els(self, names):
        return [self.lattice.el(x) for x in names]

    def name_of(self, i):
        return self.lattice.names[i]

    def le(self, a, b):
        return self.lattice.leq[a][b]

    def join(self, a, b):
        return self.lattice.join_table[a][b]

    def meet(self, a, b):
        return self.lattice.meet_table[a][b]

    def join_all(self, items):
        return self.lattice.join_all(items)

    def meet_all(self, items):
        return self.lattice.meet_all(items)

    def m(self, a, b):
        return self.mult[a][b]

    def m3(self, a, b, c):
        return self.mult[self.mult[a][b]][c]

    def inv(self, a):
        if self.involution is None:
            raise NoInvolution(f"{self.name or 'quantale'} has no involution")
        return self.involution[a]

    @property
    def is_involutive(self):
        return self.involution is not None

    def with_involution(self, involution) -> "Quantale":
        return validate_quantale(self.lattice, self.mult, self.unit, involution, self.name)

    def without_involution(self) -> "Quantale":
        return Quantale(self.lattice, self.mult, self.unit, None, self.name)

    def renamed(self, name) -> "Quantale":
        return Quantale(self.lattice, self.mult, self.unit, self.involution, name)

    def table_names(self) -> dict:
        return {
            (self.names[a], self.names[b]): self.names[self.mult[a][b]]
            for a in self.elements
            for b in self.elements
        }

    # implications, used by nuclei and dualizing checks
    @cached_property
    def left_impl(self):
        """left_impl[a][b] = a <- b = join of g with g*b <= a."""
        n = len(self)
        return tuple(
            tuple(self.join_all(g for g in range(n) if self.le(self.mult[g][b], a)) for b in range(n))
            for a in range(n)
        )

    @cached_property
    def right_impl(self):
        """right_impl[a][b] = a -> b = join of g with a*g <= b."""
        n = len(self)
        return tuple(
            tuple(self.join_all(g for g in range(n) if self.le(self.mult[a][g], b)) for b in range(n))
            for a in range(n)
        )


def _coerce_table(L: FiniteLattice, mult) -> list:
    n = len(L)
    table = [[None] * n for _ in range(n)]
    if isinstance(mult, dict):
        for (a, b), v in mult.items():
            table[L.el(a)][L.el(b)] = L.el(v)
        for a in range(n):
            for b in range(n):
                if table[a][b] is None:
                    if a == L.bottom or b == L.bottom:
                        table[a][b] = L.bottom
                    else:
                        raise UnknownElement(
                            f"product {L.names[a]}*{L.names[b]} is missing",
                            witness=(L.names[a], L.names[b]),
                        )
        return table
    rows = list(mult)
    if len(rows) != n or any(len(r) != n for r in rows):
        raise DomainMismatch("multiplication table must be square over the carrier")
    return [[L.el(v) for v in r] for r in rows]


def associativity_violation(L, table):
    n = len(L)
    for a in range(n):
        ra = table[a]
        for b in range(n):
            ab = ra[b]
            rab = table[ab]
            rb = table[b]
            for c in range(n):
                if rab[c] != ra[rb[c]]:
                    return a, b, c
    return None


def bimorphism_violation(L, table):
    n = len(L)
    bot = L.bottom
    for x in range(n):
        if table[bot][x] != bot:
            return bot, bot, x
        if table[x][bot] != bot:
            return x, bot, bot
    J = L.join_table
    for a in range(n):
        for b in range(a + 1, n):
            ab = J[a][b]
            for x in range(n):
                if table[ab][x] != J[table[a][x]][table[b][x]]:
                    return a, b, x
                if table[x][ab] != J[table[x][a]][table[x][b]]:
                    return a, b, x
    return None


def validate_quantale(lattice: FiniteLattice, mult, unit=None, involution=None, name="",
                      max_elements=DEFAULT_MAX_ELEMENTS) -> Quantale:
    """Check every quantale law and return the frozen structure.

    Associativity is checked first, then the bimorphism laws, the unit and the
    involution; the first failure is raised with a witness.
    """
    L = lattice
    if len(L) > max_elements:
        raise CarrierTooLarge(f"{len(L)} elements exceeds the cap of {max_elements}", witness=len(L))
    table = _coerce_table(L, mult)
    names = L.names
    bad = associativity_violation(L, table)
    if bad is not None:
        a, b, c = bad
        raise NotAssociative(
            f"({names[a]}*{names[b]})*{names[c]} != {names[a]}*({names[b]}*{names[c]})",
            witness=tuple(names[i] for i in bad),
        )
    bad = bimorphism_violation(L, table)
    if bad is not None:
        raise NotBimorphic(
            "multiplication does not preserve joins in each variable at "
            + ", ".join(names[i] for i in bad),
            witness=tuple(names[i] for i in bad),
        )
    u = None
    if unit is not None:
        u = L.el(unit)
        for x in range(len(L)):
            if table[u][x] != x or table[x][u] != x:
                raise BadUnit(f"{names[u]} is not a unit at {names[x]}", witness=(names[u], names[x]))
    inv = None
    if involution is not None:
        if isinstance(involution, dict):
            inv = list(range(len(L)))
            for k, v in involution.items():
                inv[L.el(k)] = L.el(v)
        else:
            inv = [L.el(v) for v in involution]
        inv = tuple(inv)
        for x in range(len(L)):
            if inv[inv[x]] != x:
                raise BadInvolution(f"involution is not of order 2 at {names[x]}", witness=(names[x],))
        bj = join_violation(L, L, inv)
        if bj is not None or inv[L.bottom] != L.bottom:
            w = bj or (L.bottom, L.bottom)
            raise BadInvolution("involution is not join-preserving", witness=tuple(names[i] for i in w))
        for a in range(len(L)):
            for b in range(len(L)):
                if inv[table[a][b]] != table[inv[b]][inv[a]]:
                    raise BadInvolution(
                        f"({names[a]}*{names[b]})' != {names[b]}'*{names[a]}'",
                        witness=(names[a], names[b]),
                    )
    return Quantale(L, tuple(tuple(r) for r in table), u, inv, name)


def quantale_from_names(elements: Sequence[str], order: Iterable, mult, unit=None,
                        involution=None, name="") -> Quantale:
    L = validate_lattice(elements, order)
    return validate_quantale(L, mult, unit, involution, name)


# ---------------------------------------------------------------- implications

def implications(Q: Quantale, a, b):
    """Return (a <- b, a -> b) as element names."""
    a, b = Q.el(a), Q.el(b)
    return Q.names[Q.left_impl[a][b]], Q.names[Q.right_impl[a][b]]


def is_dualizing(Q: Quantale, d) -> bool:
    d = Q.el(d)
    li, ri = Q.left_impl, Q.right_impl
    for a in Q.elements:
        # d <- (a -> d) and (d <- a) -> d
        if li[d][ri[a][d]] != a or ri[li[d][a]][d] != a:
            return False
    return True


# ---------------------------------------------------------------- predicates

def is_left_sided_el(Q, a):
    return Q.le(Q.m(Q.top, a), a)


def is_right_sided_el(Q, a):
    return Q.le(Q.m(a, Q.top), a)


def left_sided_elements(Q):
    return [a for a in Q.elements if is_left_sided_el(Q, a)]


def right_sided_elements(Q):
    return [a for a in Q.elements if is_right_sided_el(Q, a)]


def two_sided_elements(Q):
    return [a for a in Q.elements if is_left_sided_el(Q, a) and is_right_sided_el(Q, a)]


def hermitian_elements(Q):
    return [a for a in Q.elements if Q.inv(a) == a]


def is_balanced(Q):
    return Q.m(Q.top, Q.top) == Q.top


def is_unital(Q):
    return find_unit(Q) is not None


def find_unit(Q):
    for e in Q.elements:
        if all(Q.m(e, x) == x and Q.m(x, e) == x for x in Q.elements):
            return e
    return None


def is_semi_unital(Q):
    t = Q.top
    return all(Q.le(a, Q.m(t, a)) and Q.le(a, Q.m(a, t)) for a in Q.elements)


def semi_integral_violation(Q):
    t = Q.top
    for a in Q.elements:
        at = Q.m(a, t)
        for b in Q.elements:
            if not Q.le(Q.m(at, b), Q.m(a, b)):
                return a, b
    return None


def is_semi_integral(Q):
    return semi_integral_violation(Q) is None


def bisymmetry_violation(Q):
    n = len(Q)
    M = Q.mult
    for a in range(n):
        for b1 in range(n):
            ab1 = M[a][b1]
            for b2 in range(n):
                l = M[ab1][b2]
                r = M[M[a][b2]][b1]
                if l == r:
                    continue
                for g in range(n):
                    if M[l][g] != M[r][g]:
                        return a, b1, b2, g
    return None


def is_bisymmetric(Q):
    return bisymmetry_violation(Q) is None


def is_idempotent(Q):
    return all(Q.m(a, a) == a for a in Q.elements)


def is_pre_idempotent(Q):
    return all(Q.le(a, Q.m(a, a)) for a in Q.elements)


def is_left_sided(Q):
    return all(is_left_sided_el(Q, a) for a in Q.elements)


def is_right_sided(Q):
    return all(is_right_sided_el(Q, a) for a in Q.elements)


def is_commutative(Q):
    return all(Q.m(a, b) == Q.m(b, a) for a in Q.elements for b in Q.elements)


def is_factor(Q):
    return sorted(two_sided_elements(Q)) == sorted({Q.bottom, Q.top})


def zero_divisor_free_on(Q, subset) -> bool:
    subset = [a for a in subset if a != Q.bottom]
    return all(Q.m(a, b) != Q.bottom for a in subset for b in subset)


def is_zero_divisor_free(Q):
    return zero_divisor_free_on(Q, Q.elements)


# ---------------------------------------------------------------- spectra

def is_prime(Q, p) -> bool:
    if p == Q.top:
        return False
    t = Q.top
    for a in Q.elements:
        at_ok = Q.le(Q.m(a, t), p)
        if at_ok:
            continue
        for b in Q.elements:
            if Q.le(Q.m(a, b), p) and not Q.le(Q.m(t, b), p):
                return False
    return True


def is_strongly_prime(Q, p) -> bool:
    if p == Q.top:
        return False
    t = Q.top
    for a in Q.elements:
        if Q.le(Q.join(a, Q.m(a, t)), p):
            continue
        for b in Q.elements:
            if Q.le(Q.m(a, b), p) and not Q.le(Q.join(b, Q.m(t, b)), p):
                return False
    return True


def spectrum(Q) -> list:
    return [p for p in Q.elements if is_prime(Q, p)]


def strong_spectrum(Q) -> list:
    return [p for p in Q.elements if is_strongly_prime(Q, p)]


def hermitian_spectrum(Q) -> list:
    if not Q.is_involutive:
        raise NoInvolution("hermitian spectrum needs an involution")
    return [p for p in strong_spectrum(Q) if Q.inv(p) == p]


def _meet_of_primes(Q, primes) -> bool:
    for a in Q.elements:
        if Q.meet_all(p for p in primes if Q.le(a, p)) != a:
            return False
    return True


def is_spatial(Q):
    return _meet_of_primes(Q, spectrum(Q))


def is_strongly_spatial(Q):
    return _meet_of_primes(Q, strong_spectrum(Q))


# ---------------------------------------------------------------- report

PROPERTY_NAMES = (
    "balanced", "unital", "semi-unital", "semi-integral", "bisymmetric", "idempotent",
    "pre-idempotent", "left-sided", "right-sided", "two-sided", "commutative", "factor",
    "zero-divisor-free", "involutive", "spatial", "strongly-spatial",
)

_IMPLICATIONS = (
    ("unital", "semi-unital"),
    ("pre-idempotent", "semi-unital"),
    ("semi-unital", "balanced"),
    ("left-sided", "semi-integral"),
    ("right-sided", "semi-integral"),
    ("strongly-spatial", "semi-unital"),
    ("strongly-spatial", "pre-idempotent"),
)


@dataclass(frozen=True)
class PropertyReport:
    flags: dict

    def __getitem__(self, key):
        return self.flags[key]

    def true_flags(self):
        return [k for k in PROPERTY_NAMES if self.flags[k]]


def property_report(Q: Quantale) -> PropertyReport:
    left = is_left_sided(Q)
    right = is_right_sided(Q)
    flags = {
        "balanced": is_balanced(Q),
        "unital": is_unital(Q),
        "semi-unital": is_semi_unital(Q),
        "semi-integral": is_semi_integral(Q),
        "bisymmetric": is_bisymmetric(Q),
        "idempotent": is_idempotent(Q),
        "pre-idempotent": is_pre_idempotent(Q),
        "left-sided": left,
        "right-sided": right,
        "two-sided": left and right,
        "commutative": is_commutative(Q),
        "factor": is_factor(Q),
        "zero-divisor-free": is_zero_divisor_free(Q),
        "involutive": Q.is_involutive,
        "spatial": is_spatial(Q),
        "strongly-spatial": is_strongly_spatial(Q),
    }
    for a, b in _IMPLICATIONS:
        assert not flags[a] or flags[b], f"{a} without {b} on {Q!r}"
    return PropertyReport(flags)


# ---------------------------------------------------------------- subquantales

@dataclass(frozen=True, eq=False)
class Subquantale:
    parent: Quantale
    elements: tuple
    role: str
    quantale: Quantale = field(repr=False)
    inclusion: SupMap = field(repr=False)

    def names(self):
        return [self.parent.names[i] for i in self.elements]


def subquantale(Q: Quantale, subset, role="custom", name="") -> Subquantale:
    subset = tuple(sorted(set(subset)))
    members = set(subset)
    for a in subset:
        for b in subset:
            if Q.m(a, b) not in members:
                raise StructureMissing(
                    f"{Q.names[a]}*{Q.names[b]} leaves the subset",
                    witness=(Q.names[a], Q.names[b]),
                )
            if Q.join(a, b) not in members:
                raise StructureMissing(
                    f"{Q.names[a]} v {Q.names[b]} leaves the subset",
                    witness=(Q.names[a], Q.names[b]),
                )
    if Q.bottom not in members:
        raise StructureMissing("subset misses the bottom", witness=(Q.names[Q.bottom],))
    L = Q.lattice.sublattice(subset)
    pos = {a: i for i, a in enumerate(subset)}
    table = [[pos[Q.m(a, b)] for b in subset] for a in subset]
    inv = None
    if Q.is_involutive and all(Q.inv(a) in members for a in subset):
        inv = [pos[Q.inv(a)] for a in subset]
    unit = pos[Q.unit] if Q.unit is not None and Q.unit in members else None
    sub = validate_quantale(L, table, unit, inv, name or f"{role}({Q.name})")
    inc = SupMap(L, Q.lattice, subset)
    return Subquantale(Q, subset, role, sub, inc)


def sided_subquantales(Q: Quantale):
    return (
        subquantale(Q, left_sided_elements(Q), "L"),
        subquantale(Q, right_sided_elements(Q), "R"),
        subquantale(Q, two_sided_elements(Q), "I"),
    )


def maximal_left_sided(Q) -> list:
    """Maximal elements of the left-sided elements other than the top."""
    cand = [a for a in left_sided_elements(Q) if a != Q.top]
    return [a for a in cand if not any(b != a and Q.le(a, b) for b in cand)]


def maximal_right_sided(Q) -> list:
    cand = [a for a in right_sided_elements(Q) if a != Q.top]
    return [a for a in cand if not any(b != a and Q.le(a, b) for b in cand)]


def maximal_sided_primality_check(Q) -> dict:
    bad = semi_integral_violation(Q)
    if bad is not None:
        raise NotSemiIntegral(
            "quantale is not semi-integral",
            witness=tuple(Q.names[i] for i in bad),
        )
    sigma = set(spectrum(Q))
    ml = maximal_left_sided(Q)
    mr = maximal_right_sided(Q)
    return {
        "ML": [Q.names[a] for a in ml],
        "MR": [Q.names[a] for a in mr],
        "all_prime": all(a in sigma for a in ml + mr),
    }


# ---------------------------------------------------------------- constructions

def opposite_quantale(Q: Quantale) -> Quantale:
    n = len(Q)
    table = [[Q.m(b, a) for b in range(n)] for a in range(n)]
    name = Q.name[:-3] if Q.name.endswith("^op") else (Q.name + "^op" if Q.name else "")
    return validate_quantale(Q.lattice, table, Q.unit, Q.involution, name)


def semi_unitalization(Q: Quantale) -> Quantale:
    names = list(Q.names)
    hat = "top^"
    while hat in names:
        hat += "^"
    L = Q.lattice
    pairs = [(L.names[a], L.names[b]) for a, b in L.covers] + [(L.names[Q.top], hat)]
    Lh = validate_lattice(names + [hat], pairs)
    n = len(Q)
    t = Q.top
    table = [[0] * (n + 1) for _ in range(n + 1)]
    for a in range(n):
        for b in range(n):
            table[a][b] = Q.m(a, b)
        table[a][n] = Q.join(a, Q.m(a, t))
        table[n][a] = Q.join(a, Q.m(t, a))
    table[n][n] = n
    inv = None
    if Q.is_involutive:
        inv = list(Q.involution) + [n]
    return validate_quantale(Lh, table, None, inv, f"{Q.name}^" if Q.name else "")


def endomorphism_quantale(L: FiniteLattice, max_elements=DEFAULT_MAX_ELEMENTS) -> Quantale:
    """All join-preserving self-maps of L, ordered pointwise, with f*g = f after g."""
    from .search import search_supmaps

    maps = sorted(search_supmaps(L, L, limit=max_elements + 1))
    if len(maps) > max_elements:
        raise CarrierTooLarge(f"[L,L] exceeds {max_elements} elements", witness=len(maps))
    names = ["[" + ",".join(L.names[v] for v in f) + "]" for f in maps]
    index = {f: i for i, f in enumerate(maps)}
    pairs = [
        (names[i], names[j])
        for i, f in enumerate(maps)
        for j, g in enumerate(maps)
        if i != j and all(L.le(f[x], g[x]) for x in L.elements)
    ]
    EL = validate_lattice(names, pairs)
    table = [[index[tuple(f[g[x]] for x in L.elements)] for g in maps] for f in maps]
    ident = index[tuple(L.elements)]
    return validate_quantale(EL, table, ident, None, "End", max_elements=max_elements)


# ---------------------------------------------------------------- checks

def lemma1_absorption_check(Q: Quantale) -> bool:
    missing = [
        n for n, ok in (
            ("semi-unital", is_semi_unital(Q)),
            ("semi-integral", is_semi_integral(Q)),
            ("factor", is_factor(Q)),
        ) if not ok
    ]
    if missing:
        raise HypothesisFailed("hypotheses fail: " + ", ".join(missing), witness=missing)
    for a in Q.elements:
        for b in Q.elements:
            ab = Q.m(a, b)
            for g in Q.elements:
                if g != Q.bottom and Q.m3(a, g, b) != ab:
                    return False
    return True


def zero_divisor_checks(Q: Quantale) -> dict:
    if not is_semi_unital(Q):
        raise NotSemiUnital("zero-divisor lemma needs a semi-unital quantale")
    L, R, I = left_sided_elements(Q), right_sided_elements(Q), two_sided_elements(Q)
    bot = Q.bottom
    out = {
        "I": zero_divisor_free_on(Q, I),
        "L": zero_divisor_free_on(Q, L),
        "R": zero_divisor_free_on(Q, R),
        "Q": is_zero_divisor_free(Q),
    }
    # (a) I free => L and R free
    if out["I"]:
        assert out["L"] and out["R"]
    # (b) L free => a*b != bot for a != bot, b in L nonzero
    if out["L"]:
        assert all(Q.m(a, b) != bot for a in Q.elements if a != bot for b in L if b != bot)
    # (c) R free => b*a != bot for a in R nonzero
    if out["R"]:
        assert all(Q.m(b, a) != bot for a in R if a != bot for b in Q.elements if b != bot)
    return out


def find_involutions(Q: Quantale) -> list:
    out = []
    for perm in order_automorphisms(Q.lattice):
        if any(perm[perm[x]] != x for x in Q.elements):
            continue
        if all(perm[Q.m(a, b)] == Q.m(perm[b], perm[a]) for a in Q.elements for b in Q.elements):
            out.append(perm)
    return out


HOM_KINDS = ("hom", "strong-hom", "anti-hom", "involutive-hom", "module-hom")


def hom_violation(dom: Quantale, cod: Quantale, table, kind="hom"):
    """Return a witness tuple of element names if the law fails, else None."""
    if kind not in HOM_KINDS:
        raise StructureMissing(f"unknown kind {kind!r}", witness=kind)
    bj = join_violation(dom.lattice, cod.lattice, table)
    if bj is not None:
        return ("join",) + tuple(dom.names[i] for i in bj)
    if table[dom.bottom] != cod.bottom:
        return ("bottom", dom.names[dom.bottom])
    if kind == "anti-hom":
        for a in dom.elements:
            for b in dom.elements:
                if table[dom.m(a, b)] != cod.m(table[b], table[a]):
                    return ("anti", dom.names[a], dom.names[b])
        return None
    if kind == "module-hom":
        # right module map dom -> cod over a shared acting quantale (dom itself)
        if dom.names != cod.names:
            raise StructureMissing("module-hom needs a shared acting quantale")
    for a in dom.elements:
        for b in dom.elements:
            if table[dom.m(a, b)] != cod.m(table[a], table[b]):
                return ("mult", dom.names[a], dom.names[b])
    if kind == "strong-hom" and table[dom.top] != cod.top:
        return ("top", dom.names[dom.top])
    if kind == "involutive-hom":
        if not (dom.is_involutive and cod.is_involutive):
            raise StructureMissing("involutive-hom needs involutions on both sides")
        for a in dom.elements:
            if table[dom.inv(a)] != cod.inv(table[a]):
                return ("involution", dom.names[a])
    return None


def hom_check(dom: Quantale, cod: Quantale, table, kind="hom") -> bool:
    if isinstance(table, SupMap):
        table = table.table
    return hom_violation(dom, cod, table, kind) is None


def right_adjoint_table(dom: Quantale, cod: Quantale, table) -> tuple:
    return tuple(
        dom.join_all(a for a in dom.elements if cod.le(table[a], b)) for b in cod.elements
    )


# ---------------------------------------------------------------- h_p and strong homs

def _hat_products(Q, a):
    """(a*T^, T^*a, T^*a*T^) computed in the semi-unitalization."""
    t = Q.top
    at = Q.join(a, Q.m(a, t))
    ta = Q.join(a, Q.m(t, a))
    tat = Q.join(at, Q.join(ta, Q.m3(t, a, t)))
    return at, ta, tat


def h_p(Q: Quantale, p) -> SupMap:
    """The homomorphism into Q2 attached to a strongly prime p.

    Products with the top are taken in the semi-unitalization, which agrees
    with Q itself whenever Q is semi-unital.
    """
    from .catalog import q2
    from .errors import NotPrime

    p = Q.el(p)
    if not is_strongly_prime(Q, p):
        raise NotPrime(f"{Q.names[p]} is not strongly prime", witness=(Q.names[p],))
    Q2 = q2()
    bot, b, al, ar, c, top = (Q2.el(x) for x in ("bot", "b", "al", "ar", "c", "top"))
    table = []
    for a in Q.elements:
        at, ta, tat = _hat_products(Q, a)
        if not Q.le(a, p):
            v = top
        elif Q.le(tat, p):
            v = bot
        elif Q.le(at, p) and Q.le(ta, p):
            v = b
        elif Q.le(ta, p):
            v = al
        elif Q.le(at, p):
            v = ar
        else:
            v = c
        table.append(v)
    return SupMap(Q.lattice, Q2.lattice, tuple(table))


def strong_homs_to_Q2(Q: Quantale, involutive=False) -> list:
    from .catalog import q2
    from .search import search_homs

    Q2 = q2()
    return [
        SupMap(Q.lattice, Q2.lattice, t)
        for t in search_homs(Q, Q2, strong=True, involutive=involutive)
    ]


# ---------------------------------------------------------------- isomorphism

def _signature(Q, x):
    L = Q.lattice
    return (
        L.height[x],
        sum(L.leq[x]),
        sum(L.leq[y][x] for y in L.elements),
        Q.m(x, x) == x,
        is_left_sided_el(Q, x),
        is_right_sided_el(Q, x),
        Q.unit == x,
        sorted(Q.m(x, y) == y for y in Q.elements).count(True),
    )


def find_isomorphism(Q: Quantale, R: Quantale, involutive=False):
    """Return a table Q -> R that is an order and multiplication isomorphism, or None."""
    if len(Q) != len(R):
        return None
    if involutive and (Q.is_involutive != R.is_involutive):
        return None
    n = len(Q)
    sq = [_signature(Q, x) for x in Q.elements]
    sr = [_signature(R, x) for x in R.elements]
    if sorted(sq) != sorted(sr):
        return None
    order = sorted(Q.elements, key=lambda x: (Q.lattice.height[x], x))
    perm = [-1] * n
    used = [False] * n

    def ok(i):
        v = perm[i]
        for j in Q.elements:
            w = perm[j]
            if w < 0:
                continue
            if Q.le(i, j) != R.le(v, w) or Q.le(j, i) != R.le(w, v):
                return False
            ij = Q.m(i, j)
            if perm[ij] >= 0 and perm[ij] != R.m(v, w):
                return False
            ji = Q.m(j, i)
            if perm[ji] >= 0 and perm[ji] != R.m(w, v):
                return False
        if involutive and Q.is_involutive:
            qi = Q.inv(i)
            if perm[qi] >= 0 and perm[qi] != R.inv(v):
                return False
        return True

    def extend(k):
        if k == n:
            return True
        x = order[k]
        for v in R.elements:
            if used[v] or sr[v] != sq[x]:
                continue
            perm[x] = v
            used[v] = True
            if ok(x) and extend(k + 1):
                return True
            used[v] = False
            perm[x] = -1
        return False

    if not extend(0):
        return None
    # final full verification
    for a in Q.elements:
        for b in Q.elements:
            if perm[Q.m(a, b)] != R.m(perm[a], perm[b]):
                return None
    return tuple(perm)


def is_isomorphic(Q, R, involutive=False) -> bool:
    return find_isomorphism(Q, R, involutive) is not None


def canonical_key(Q: Quantale) -> tuple:
    """Invariant used to sort quantales deterministically (not a complete invariant)."""
    return (len(Q), tuple(sorted(_signature(Q, x) for x in Q.elements)))
