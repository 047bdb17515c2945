"""Quantale-valued presheaves, quantized topologies, filters and spectral spaces."""

from __future__ import annotations

import os
import random
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations, product

from .catalog import q2, smallest_ambient
from .errors import (
    HypothesisFailed,
    NotAFilter,
    NotAQuanticFrame,
    NotInjective,
    NotReduced,
    SizeCapExceeded,
    StructureMissing,
)
from .order import FiniteLattice
from .quantale import (
    Quantale,
    find_isomorphism,
    h_p,
    hermitian_spectrum,
    hom_violation,
    is_strongly_spatial,
    maximal_left_sided,
    right_sided_elements,
    sided_subquantales,
    spectrum,
    strong_spectrum,
    subquantale,
    validate_quantale,
)
from .search import search_homs

DEFAULT_MAX_OPENS = 4096
DEFAULT_MAX_PRESHEAVES = 20000


def _seed():
    return int(os.environ.get("QLAB_SEED", "0"))


# ---------------------------------------------------------------- topology

@dataclass(frozen=True, eq=False)
class QTopology:
    points: tuple
    ambient: Quantale
    opens: tuple
    involutive: bool

    def __len__(self):
        return len(self.opens)

    @cached_property
    def open_set(self) -> frozenset:
        return frozenset(self.opens)

    @cached_property
    def index(self) -> dict:
        return {f: i for i, f in enumerate(self.opens)}

    def const(self, a) -> tuple:
        if isinstance(a, str):
            a = self.ambient.el(a)
        return (a,) * len(self.points)

    @property
    def top(self):
        return self.const(self.ambient.top)

    @property
    def bottom(self):
        return self.const(self.ambient.bottom)

    def name(self, f) -> str:
        return "[" + ",".join(self.ambient.names[v] for v in f) + "]"

    def values(self, f) -> list:
        return [self.ambient.names[v] for v in f]

    def presheaf(self, values) -> tuple:
        return tuple(self.ambient.el(v) if isinstance(v, str) else v for v in values)

    @cached_property
    def q2_values(self) -> frozenset:
        return frozenset(self.ambient.el(x) for x in q2().names)

    @cached_property
    def is_quantized(self) -> bool:
        return all(v in self.q2_values for f in self.opens for v in f)

    # pointwise operations
    def join(self, f, g):
        J = self.ambient.lattice.join_table
        return tuple(J[a][b] for a, b in zip(f, g))

    def mult(self, f, g):
        M = self.ambient.mult
        return tuple(M[a][b] for a, b in zip(f, g))

    def act(self, f, a):
        M = self.ambient.mult
        return tuple(M[v][a] for v in f)

    def lact(self, a, f):
        M = self.ambient.mult
        return tuple(M[a][v] for v in f)

    def inv(self, f):
        return tuple(self.ambient.inv(v) for v in f)

    def le(self, f, g) -> bool:
        L = self.ambient.lattice.leq
        return all(L[a][b] for a, b in zip(f, g))

    def is_left_sided(self, f) -> bool:
        return self.le(self.lact(self.ambient.top, f), f)

    def is_right_sided(self, f) -> bool:
        return self.le(self.act(f, self.ambient.top), f)

    def join_all(self, fs):
        acc = self.bottom
        for f in fs:
            acc = self.join(acc, f)
        return acc

    def interior(self, f):
        return self.join_all(g for g in self.opens if self.le(g, f))

    @cached_property
    def base(self) -> tuple:
        """Join-irreducible opens."""
        out = []
        for f in self.opens:
            if f == self.bottom:
                continue
            below = [g for g in self.opens if g != f and self.le(g, f)]
            if self.join_all(below) != f:
                out.append(f)
        return tuple(out)

    @cached_property
    def as_quantale(self) -> Quantale:
        return topology_quantale(self)

    def presheaves(self, cap=DEFAULT_MAX_PRESHEAVES):
        n = len(self.ambient) ** len(self.points)
        if n > cap:
            raise SizeCapExceeded(f"{n} presheaves exceed the cap {cap}", witness=n)
        return product(self.ambient.elements, repeat=len(self.points))


def _closure(points, ambient, seeds, involutive, max_opens):
    n = len(points)
    A = ambient
    J, M = A.lattice.join_table, A.mult
    top = (A.top,) * n
    bot = (A.bottom,) * n
    opens = set()
    work = []

    def add(f):
        if f not in opens:
            opens.add(f)
            work.append(f)
            if len(opens) > max_opens:
                raise SizeCapExceeded(f"topology exceeds {max_opens} opens", witness=len(opens))

    for f in (bot, top, *seeds):
        add(f)
    while work:
        f = work.pop()
        for a in A.elements:
            add(tuple(M[v][a] for v in f))
        if involutive:
            add(tuple(A.inv(v) for v in f))
        for g in list(opens):
            add(tuple(J[a][b] for a, b in zip(f, g)))
            add(tuple(M[a][b] for a, b in zip(f, g)))
            add(tuple(M[b][a] for a, b in zip(f, g)))
    return opens


def generate_topology(points, subbase, ambient: Quantale | None = None, involutive=False,
                      max_opens=DEFAULT_MAX_OPENS) -> QTopology:
    ambient = ambient or smallest_ambient()
    points = tuple(points)
    seeds = []
    for f in subbase:
        f = tuple(ambient.el(v) if isinstance(v, str) else v for v in f)
        if len(f) != len(points):
            raise StructureMissing("presheaf length differs from the point count", witness=f)
        seeds.append(f)
    opens = _closure(points, ambient, seeds, involutive, max_opens)
    T = QTopology(points, ambient, tuple(sorted(opens)), involutive)
    verify_topology(T)
    return T


def topology_from_opens(points, ambient, opens, involutive) -> QTopology:
    T = QTopology(tuple(points), ambient, tuple(sorted(set(opens))), involutive)
    verify_topology(T)
    return T


def topology_violation(T: QTopology):
    S = T.open_set
    if T.top not in S:
        return ("T1", T.name(T.top))
    if T.bottom not in S:
        return ("join", T.name(T.bottom))
    for f in T.opens:
        for a in T.ambient.elements:
            if T.act(f, a) not in S:
                return ("module", T.name(f), T.ambient.names[a])
        if T.involutive and T.inv(f) not in S:
            return ("T3", T.name(f))
        for g in T.opens:
            if T.join(f, g) not in S:
                return ("join", T.name(f), T.name(g))
            if T.mult(f, g) not in S:
                return ("T2", T.name(f), T.name(g))
    return None


def verify_topology(T: QTopology) -> None:
    bad = topology_violation(T)
    if bad is not None:
        raise StructureMissing(f"not a topology: {bad[0]} fails", witness=bad)


def is_involutive_topology(T: QTopology) -> bool:
    S = T.open_set
    return all(T.inv(f) in S for f in T.opens)


def topology_quantale(T: QTopology) -> Quantale:
    """The opens with pointwise joins and multiplication."""
    opens = T.opens
    n = len(opens)
    idx = T.index
    names = tuple(T.name(f) for f in opens)
    leq = tuple(tuple(T.le(f, g) for g in opens) for f in opens)
    join = tuple(tuple(idx[T.join(f, g)] for g in opens) for f in opens)

    def meet(f, g):
        return idx[T.join_all(h for h in opens if T.le(h, f) and T.le(h, g))]

    meets = tuple(tuple(meet(f, g) for g in opens) for f in opens)
    L = FiniteLattice(names, leq, join, meets, idx[T.top], idx[T.bottom])
    table = [[idx[T.mult(f, g)] for g in opens] for f in opens]
    inv = None
    if T.involutive and is_involutive_topology(T):
        inv = [idx[T.inv(f)] for f in opens]
    return validate_quantale(L, table, None, inv, "T", max_elements=max(64, n))


def subspace(T: QTopology, phi) -> QTopology:
    """Relative topology along an injective map given as point indices (or names)."""
    phi = [T.points.index(p) if isinstance(p, str) else p for p in phi]
    if len(set(phi)) != len(phi):
        raise NotInjective("subspace map is not injective", witness=phi)
    pts = tuple(T.points[i] for i in phi)
    opens = {tuple(f[i] for i in phi) for f in T.opens}
    return topology_from_opens(pts, T.ambient, opens, T.involutive)


# ---------------------------------------------------------------- interior operator

class InteriorOperator:
    def __init__(self, T: QTopology):
        self.T = T
        self._cache = {}

    def __call__(self, f):
        f = tuple(f)
        r = self._cache.get(f)
        if r is None:
            r = self.T.interior(f)
            self._cache[f] = r
        return r


def interior(T: QTopology) -> InteriorOperator:
    return InteriorOperator(T)


def neighborhood(T: QTopology, x):
    """nu_x(f) = I(f)(x)."""
    if isinstance(x, str):
        x = T.points.index(x)
    I = interior(T)
    return lambda f: I(f)[x]


@dataclass(frozen=True)
class InteriorReport:
    involutive: bool
    I3: bool
    I3prime: bool
    witness: tuple | None
    sampled: bool


def lemma3_check(T: QTopology, cap=DEFAULT_MAX_PRESHEAVES, samples=2000) -> InteriorReport:
    I = interior(T)
    n = len(T.ambient) ** len(T.points)
    sampled = n > cap
    if sampled:
        rng = random.Random(_seed())
        universe = (
            tuple(rng.choice(T.ambient.elements) for _ in T.points) for _ in range(samples)
        )
    else:
        universe = T.presheaves(cap)
    i3 = i3p = True
    witness = None
    for f in universe:
        a = T.inv(I(f))
        b = I(T.inv(f))
        if not T.le(a, b):
            i3 = False
            if witness is None:
                witness = (T.name(f), T.name(a), T.name(b))
        if a != b:
            i3p = False
            if witness is None:
                witness = (T.name(f), T.name(a), T.name(b))
    inv = is_involutive_topology(T)
    assert i3 == i3p
    if not sampled:
        assert inv == i3
    return InteriorReport(inv, i3, i3p, witness, sampled)


# ---------------------------------------------------------------- separation

def separation_report(T: QTopology) -> dict:
    A = T.ambient
    pts = range(len(T.points))
    opens = T.opens
    M = A.mult

    def sup(fs):
        return A.join_all(fs)

    t0 = t1 = t2 = True
    w = {}
    for x, y in combinations(pts, 2):
        if not any(f[x] != f[y] for f in opens):
            t0 = False
            w.setdefault("T0", (T.points[x], T.points[y]))
    for x in pts:
        for y in pts:
            if x == y:
                continue
            if not any(not A.le(f[x], f[y]) for f in opens):
                t1 = False
                w.setdefault("T1", (T.points[x], T.points[y]))
    for x, y in combinations(pts, 2):
        found = False
        for f1 in opens:
            for f2 in opens:
                s12 = sup(M[f1[z]][f2[z]] for z in pts)
                s21 = sup(M[f2[z]][f1[z]] for z in pts)
                if not A.le(M[f1[x]][f2[y]], s12) or not A.le(M[f2[y]][f1[x]], s21):
                    found = True
                    break
            if found:
                break
        if not found:
            t2 = False
            w.setdefault("T2", (T.points[x], T.points[y]))
    strong, sw = strong_hausdorff(T)
    if sw is not None:
        w["strongT2"] = sw
    return {"T0": t0, "T1": t1, "T2": t2, "strongT2": strong, "witnesses": w}


def strong_hausdorff_violations(T: QTopology) -> list:
    """Ordered pairs (x, y), x != y, where every left f1 and right f2 satisfy f2(x)*f1(y) <= sup."""
    A = T.ambient
    M = A.mult
    pts = range(len(T.points))
    lefts = [f for f in T.opens if T.is_left_sided(f)]
    rights = [f for f in T.opens if T.is_right_sided(f)]
    sups = {
        (i, j): A.join_all(M[g[z]][f[z]] for z in pts)
        for i, f in enumerate(lefts)
        for j, g in enumerate(rights)
    }
    out = []
    for x in pts:
        for y in pts:
            if x == y:
                continue
            if all(
                A.le(M[g[x]][f[y]], sups[(i, j)])
                for i, f in enumerate(lefts)
                for j, g in enumerate(rights)
            ):
                out.append((x, y))
    return out


def strong_hausdorff(T: QTopology):
    if not T.is_quantized:
        raise HypothesisFailed("strong Hausdorff separation needs a quantized space")
    bad = strong_hausdorff_violations(T)
    if bad:
        x, y = bad[0]
        return False, (T.points[x], T.points[y])
    return True, None


# ---------------------------------------------------------------- filters

class PresheafUniverse:
    """All ambient-valued presheaves on the points, indexed."""

    def __init__(self, T: QTopology, cap=DEFAULT_MAX_PRESHEAVES):
        self.T = T
        self.items = list(T.presheaves(cap))
        self.index = {f: i for i, f in enumerate(self.items)}

    def __len__(self):
        return len(self.items)


def validate_qfilter(T: QTopology, omega: dict, universe: PresheafUniverse | None = None) -> bool:
    """Check isotonicity and F0-F3 for a table over all presheaves; raise NotAFilter."""
    U = universe or PresheafUniverse(T)
    A = T.ambient
    items = U.items
    for f in items:
        if f not in omega:
            raise NotAFilter("filter table is not total", witness=("total", T.name(f)))
    if omega[T.top] != A.top:
        raise NotAFilter("F1 fails", witness=("F1",))
    for f in items:
        of = omega[f]
        if not A.le(of, A.join_all(f)):
            raise NotAFilter("F3 fails", witness=("F3", T.name(f)))
        for a in A.elements:
            if not A.le(A.m(of, a), omega[T.act(f, a)]):
                raise NotAFilter("F0 fails", witness=("F0", T.name(f), A.names[a]))
        for g in items:
            if T.le(f, g) and not A.le(of, omega[g]):
                raise NotAFilter("not isotone", witness=("isotone", T.name(f), T.name(g)))
            if not A.le(A.m(of, omega[g]), omega[T.mult(f, g)]):
                raise NotAFilter("F2 fails", witness=("F2", T.name(f), T.name(g)))
    return True


def limits(T: QTopology, omega: dict, universe: PresheafUniverse | None = None):
    U = universe or PresheafUniverse(T)
    I = interior(T)
    A = T.ambient
    left_sided = [f for f in U.items if T.is_left_sided(f)]
    right_sided = [f for f in U.items if T.is_right_sided(f)]
    lefts, rights = [], []
    for x in range(len(T.points)):
        if all(A.le(I(f)[x], omega[f]) for f in left_sided):
            lefts.append(T.points[x])
        if all(A.le(I(f)[x], omega[f]) for f in right_sided):
            rights.append(T.points[x])
    return lefts, rights


def proof_filter(T: QTopology, x, y, universe: PresheafUniverse | None = None) -> dict:
    """omega(h) = join of g(y)*f(x) over left-sided open f, right-sided open g, g*f <= h."""
    if isinstance(x, str):
        x = T.points.index(x)
    if isinstance(y, str):
        y = T.points.index(y)
    U = universe or PresheafUniverse(T)
    A = T.ambient
    lefts = [f for f in T.opens if T.is_left_sided(f)]
    rights = [g for g in T.opens if T.is_right_sided(g)]
    prods = [(T.mult(g, f), A.m(g[y], f[x])) for f in lefts for g in rights]
    return {h: A.join_all(v for gf, v in prods if T.le(gf, h)) for h in U.items}


def point_filter(T: QTopology, x, universe=None) -> dict:
    """omega(f) = nu_x(f), the neighbourhood map of a point."""
    if isinstance(x, str):
        x = T.points.index(x)
    U = universe or PresheafUniverse(T)
    I = interior(T)
    return {f: I(f)[x] for f in U.items}


def least_filter_with_limits(T: QTopology, x, y, universe: PresheafUniverse | None = None):
    """The least filter with left limit x and right limit y, or None if none exists.

    The lower-bound conditions (isotone, F0, F1, F2, limit bounds) are closed
    under pointwise meets of solutions, so their least solution is computed by
    a monotone fixpoint; a filter exists exactly when it also satisfies F3.
    """
    if isinstance(x, str):
        x = T.points.index(x)
    if isinstance(y, str):
        y = T.points.index(y)
    U = universe or PresheafUniverse(T)
    A = T.ambient
    J, M, le = A.lattice.join_table, A.mult, A.lattice.leq
    items = U.items
    idx = U.index
    n = len(items)
    I = interior(T)
    w = [A.bottom] * n
    w[idx[T.top]] = A.top
    for i, f in enumerate(items):
        if T.is_left_sided(f):
            w[i] = J[w[i]][I(f)[x]]
        if T.is_right_sided(f):
            w[i] = J[w[i]][I(f)[y]]
    ups = [[j for j, g in enumerate(items) if T.le(f, g)] for f in items]
    acts = [[idx[T.act(f, a)] for a in A.elements] for f in items]
    prod_idx = [[idx[T.mult(f, g)] for g in items] for f in items]
    changed = True
    while changed:
        changed = False
        for i in range(n):
            wi = w[i]
            if wi == A.bottom:
                continue
            for j in ups[i]:
                if not le[wi][w[j]]:
                    w[j] = J[w[j]][wi]
                    changed = True
            for a in A.elements:
                j = acts[i][a]
                v = M[wi][a]
                if not le[v][w[j]]:
                    w[j] = J[w[j]][v]
                    changed = True
            row = prod_idx[i]
            for k in range(n):
                v = M[w[i]][w[k]]
                j = row[k]
                if not le[v][w[j]]:
                    w[j] = J[w[j]][v]
                    changed = True
    omega = {f: w[i] for i, f in enumerate(items)}
    if any(not le[w[i]][A.join_all(f)] for i, f in enumerate(items)):
        return None
    return omega


@dataclass(frozen=True)
class ConvergenceReport:
    strongT2: bool
    unique_limits: bool
    distinct_limit_pairs: tuple
    proof_filter_pair: tuple | None
    sampled: bool = False


def convergence_theorem_check(T: QTopology, cap=DEFAULT_MAX_PRESHEAVES) -> ConvergenceReport:
    strong, _ = strong_hausdorff(T)
    U = PresheafUniverse(T, cap)
    pairs = []
    for x in range(len(T.points)):
        for y in range(len(T.points)):
            if x == y:
                continue
            omega = least_filter_with_limits(T, x, y, U)
            if omega is not None:
                validate_qfilter(T, omega, U)
                lefts, rights = limits(T, omega, U)
                assert T.points[x] in lefts and T.points[y] in rights
                pairs.append((T.points[x], T.points[y]))
    witness = None
    violations = strong_hausdorff_violations(T)
    if violations:
        x, y = violations[0]
        omega = proof_filter(T, x, y, U)
        validate_qfilter(T, omega, U)
        lefts, rights = limits(T, omega, U)
        assert T.points[x] in lefts and T.points[y] in rights
        witness = (T.points[x], T.points[y])
    unique = not pairs
    assert strong == unique
    return ConvergenceReport(strong, unique, tuple(pairs), witness)


# ---------------------------------------------------------------- sobriety

@dataclass(frozen=True)
class SoberReport:
    sober: bool
    T0: bool
    homs: int
    points: tuple
    witness: object = None


def sober_check(T: QTopology, S=None) -> SoberReport:
    """Involutive S-sobriety; S defaults to Q2 inside the ambient."""
    A = T.ambient
    if not T.involutive or not is_involutive_topology(T):
        raise HypothesisFailed("sobriety needs an involutive topology")
    S_names = list(S) if S is not None else list(q2().names)
    Sq = subquantale(A, [A.el(x) for x in S_names], "custom", "S").quantale
    to_S = {A.el(nm): Sq.el(nm) for nm in Sq.names}
    from_S = {v: k for k, v in to_S.items()}
    # S must be a right submodule of the ambient
    for s in to_S:
        for a in A.elements:
            if A.m(s, a) not in to_S:
                raise HypothesisFailed("S is not a right submodule", witness=(A.names[s], A.names[a]))
    TQ = T.as_quantale
    idx = T.index
    acting = []
    for a in A.elements:
        fd = (lambda a: lambda i: idx[T.act(T.opens[i], a)])(a)
        fc = (lambda a: lambda v: to_S[A.m(from_S[v], a)])(a)
        acting.append((fd, fc))
    homs = search_homs(TQ, Sq, strong=True, involutive=True, acting=acting)
    t0 = separation_report_t0(T)
    evals = {}
    for x in range(len(T.points)):
        ev = tuple(to_S.get(f[x], -1) for f in T.opens)
        evals.setdefault(ev, []).append(T.points[x])
    pts = []
    witness = None
    ok = t0
    for K in homs:
        owners = evals.get(tuple(K))
        if owners is None:
            ok = False
            witness = {TQ.names[i]: Sq.names[v] for i, v in enumerate(K)}
            break
        if t0:
            assert len(owners) == 1
        pts.append(owners[0])
    return SoberReport(ok, t0, len(homs), tuple(pts), witness)


def separation_report_t0(T: QTopology) -> bool:
    return all(
        any(f[x] != f[y] for f in T.opens) for x, y in combinations(range(len(T.points)), 2)
    )


# ---------------------------------------------------------------- submodules of Q2

def submodules_of_Q2(ambient: Quantale) -> list:
    """Right ambient-submodules of Q2 containing the top, with an involutivity flag."""
    Q = q2()
    inside = [ambient.el(x) for x in Q.names]
    top = ambient.top
    out = []
    rest = [v for v in inside if v not in (top, ambient.bottom)]
    for r in range(len(rest) + 1):
        for extra in combinations(rest, r):
            S = set(extra) | {top, ambient.bottom}
            if any(ambient.join(a, b) not in S for a in S for b in S):
                continue
            if any(ambient.m(a, x) not in S for a in S for x in ambient.elements):
                continue
            inv = all(ambient.inv(a) in S for a in S)
            names = tuple(sorted((ambient.names[a] for a in S), key=Q.el))
            out.append((names, inv))
    out.sort(key=lambda t: (len(t[0]), t[0]))
    return out


# ---------------------------------------------------------------- spectral topologies

@dataclass(frozen=True, eq=False)
class TopologizationResult:
    space: tuple
    topology: QTopology
    generators: dict = field(repr=False)
    maps: dict = field(default_factory=dict, repr=False)
    extra: dict = field(default_factory=dict, repr=False)


def _to_ambient(ambient, q2_index):
    return ambient.el(q2().names[q2_index])


def spectral_presheaves(Q: Quantale, hermitian=False, ambient=None):
    """Points (indices of Q) and the family A_alpha(p) = h_p(alpha)."""
    ambient = ambient or smallest_ambient()
    pts = hermitian_spectrum(Q) if hermitian else strong_spectrum(Q)
    maps = {p: h_p(Q, p) for p in pts}
    A = {
        a: tuple(_to_ambient(ambient, maps[p](a)) for p in pts)
        for a in Q.elements
    }
    return pts, A


def _generator_base(T: QTopology, fam, two_sided=True):
    """Non-bottom members of the one- or two-sided multiples of the family."""
    A = T.ambient
    al, ar = A.el("al"), A.el("ar")
    fam = list(fam)
    out = set(fam) | {T.act(f, al) for f in fam}
    if two_sided:
        out |= {T.lact(ar, f) for f in fam} | {T.act(T.lact(ar, f), al) for f in fam}
    out.discard(T.bottom)
    return tuple(sorted(out))


def _set_joins(T: QTopology, *families):
    acc = {T.bottom}
    for fam in families:
        acc = {T.join(f, g) for f in acc for g in fam}
    return acc


def spectral_topology(Q: Quantale, hermitian=False, ambient=None) -> TopologizationResult:
    ambient = ambient or smallest_ambient()
    pts, A = spectral_presheaves(Q, hermitian, ambient)
    names = tuple(Q.names[p] for p in pts)
    T = generate_topology(names, A.values(), ambient, involutive=hermitian)
    al, ar = ambient.el("al"), ambient.el("ar")
    # Phi is a strong hom (involutive in the hermitian case)
    for a in Q.elements:
        for b in Q.elements:
            assert A[Q.m(a, b)] == T.mult(A[a], A[b])
            assert A[Q.join(a, b)] == T.join(A[a], A[b])
        if hermitian:
            assert T.inv(A[a]) == A[Q.inv(a)]
    assert A[Q.top] == T.top
    if hermitian:
        fam = list(A.values())
        base = _set_joins(
            T,
            fam,
            [T.act(f, al) for f in fam],
            [T.lact(ar, f) for f in fam],
            [T.act(T.lact(ar, f), al) for f in fam],
        )
    else:
        base = _set_joins(T, list(A.values()), [T.act(A[b], al) for b in right_sided_elements(Q)])
    assert base == T.open_set, "base form differs from the generated topology"
    if hermitian:
        gb = _generator_base(T, A.values())
    else:
        gb = tuple(sorted(({A[a] for a in Q.elements} | {T.act(A[b], al) for b in right_sided_elements(Q)}) - {T.bottom}))
    assert is_base(T, gb)
    return TopologizationResult(
        names, T, {Q.names[a]: f for a, f in A.items()}, {"Phi": A}, {"base": gb}
    )


# ---------------------------------------------------------------- U_Q and the strong spatiality criterion

@dataclass(frozen=True)
class SpatialityReport:
    strongly_spatial: bool
    criterion: bool
    topology_iso: bool
    injective_strong_hom: bool
    phi_works: bool
    u_size: int
    t_size: int


def U_Q(Q: Quantale):
    from .catalog import c3l
    from .tensor import tensor_quantale

    C = c3l()
    T = tensor_quantale(Q, C)
    a, top = C.el("a"), C.top
    V = T.quantale
    members = sorted(
        {
            V.join(T.elem(x, top), T.elem(b, a))
            for b in right_sided_elements(Q)
            for x in Q.elements
            if Q.le(x, b)
        }
    )
    # displayed product rule
    for b1 in right_sided_elements(Q):
        for x1 in Q.elements:
            if not Q.le(x1, b1):
                continue
            u1 = V.join(T.elem(x1, top), T.elem(b1, a))
            for b2 in right_sided_elements(Q):
                for x2 in Q.elements:
                    if not Q.le(x2, b2):
                        continue
                    u2 = V.join(T.elem(x2, top), T.elem(b2, a))
                    want = V.join(T.elem(Q.m(b1, x2), top), T.elem(Q.m(b1, b2), a))
                    assert V.m(u1, u2) == want
    sub = subquantale(V, members, "custom", f"U({Q.name})")
    return T, sub


def U_Q_and_prop6(Q: Quantale, ambient=None) -> SpatialityReport:
    T, sub = U_Q(Q)
    Uq = sub.quantale
    res = spectral_topology(Q, False, ambient)
    TQ = res.topology.as_quantale
    iso = find_isomorphism(TQ, Uq) is not None
    from .catalog import c3l

    C = c3l()
    a, top = C.el("a"), C.top
    V = T.quantale
    pos = {x: i for i, x in enumerate(sub.elements)}
    phi = []
    for x in Q.elements:
        u = V.join(T.elem(x, top), T.elem(Q.m(x, Q.top), a))
        phi.append(pos.get(u, -1))
    phi_ok = (
        -1 not in phi
        and len(set(phi)) == len(phi)
        and hom_violation(Q, Uq, phi, "strong-hom") is None
    )
    inj = phi_ok or bool(search_homs(Q, Uq, strong=True, injective=True, limit=1))
    criterion = iso and inj
    ss = is_strongly_spatial(Q)
    assert ss == criterion, (Q.name, ss, iso, inj)
    return SpatialityReport(ss, criterion, iso, inj, phi_ok, len(Uq), len(TQ))


# ---------------------------------------------------------------- quantic frame topologies

def _h_left(Q, p, a, amb):
    """h_p on L(Q): bot / al / top."""
    if not Q.le(a, p):
        return amb.el("top")
    if Q.le(Q.m(a, Q.top), p):
        return amb.el("bot")
    return amb.el("al")


def _h_right(Q, pp, b, amb):
    if not Q.le(b, pp):
        return amb.el("top")
    if Q.le(Q.m(Q.top, b), pp):
        return amb.el("bot")
    return amb.el("ar")


def _one_sided_form(Q, p, a, b, amb):
    bp = Q.inv(b)
    if Q.le(Q.m(bp, Q.top), p) or Q.le(Q.m(a, Q.top), p):
        return amb.el("bot")
    ab = Q.le(Q.m(a, bp), p)
    ba = Q.le(Q.m(bp, a), p)
    if ab and ba:
        return amb.el("b")
    if not ab and ba:
        return amb.el("al")
    if ab and not ba:
        return amb.el("ar")
    return amb.el("top")


def quantic_frame_topologize(Q: Quantale, ambient=None, report=None) -> TopologizationResult:
    from .quotients import quantic_frame_check

    ambient = ambient or smallest_ambient()
    rep = report or quantic_frame_check(Q)
    if not rep.is_quantic_frame:
        raise NotAQuanticFrame(
            "not a quantic frame", witness={"A": rep.witnessA, "B": rep.witnessB, "C": rep.witnessC}
        )
    Ls, Rs, _ = sided_subquantales(Q)
    Y = [Ls.elements[q] for q in spectrum(Ls.quantale)]
    phi = {p: Q.join(p, Q.inv(p)) for p in Y}
    X = hermitian_spectrum(Q)
    assert sorted(phi.values()) == sorted(X)
    TX = spectral_topology(Q, True, ambient)
    xpos = {p: i for i, p in enumerate(X)}
    ynames = tuple(Q.names[p] for p in Y)
    TY = topology_from_opens(
        ynames, ambient, {tuple(f[xpos[phi[p]]] for p in Y) for f in TX.topology.opens}, True
    )
    amb = ambient
    hmaps = {p: h_p(Q, phi[p]) for p in Y}
    B = {}
    for a in Ls.elements:
        for b in Rs.elements:
            v_base = tuple(_to_ambient(amb, hmaps[p](Q.m(b, a))) for p in Y)
            vco = tuple(amb.m(_h_right(Q, Q.inv(p), b, amb), _h_left(Q, p, a, amb)) for p in Y)
            v6 = tuple(_one_sided_form(Q, p, a, b, amb) for p in Y)
            assert v_base == vco == v6, (Q.names[a], Q.names[b])
            B[(Q.names[a], Q.names[b])] = v_base
    fam = set(B.values())
    al, ar = amb.el("al"), amb.el("ar")
    base = _set_joins(
        TY,
        fam,
        [TY.act(f, al) for f in fam],
        [TY.lact(ar, f) for f in fam],
        [TY.act(TY.lact(ar, f), al) for f in fam],
    )
    assert base == TY.open_set, "base form differs from the transported topology"
    gen = generate_topology(ynames, fam, amb, involutive=True)
    assert gen.open_set == TY.open_set
    gb = _generator_base(TY, fam)
    assert is_base(TY, gb)
    return TopologizationResult(
        ynames, TY, B, {"phi": {Q.names[p]: Q.names[v] for p, v in phi.items()}},
        {"TX": TX, "base": gb},
    )


def is_base(T: QTopology, family) -> bool:
    fam = [tuple(f) for f in family]
    if any(f not in T.open_set for f in fam):
        return False
    return all(T.join_all(g for g in fam if T.le(g, f)) == f for f in T.opens)


# ---------------------------------------------------------------- left-sided opens, reduced subsets

@dataclass(frozen=True)
class LeftSidedOpensReport:
    a: bool
    b: bool
    c: bool | None
    normal_forms: dict


def prop8_suite(Q: Quantale, result: TopologizationResult | None = None) -> LeftSidedOpensReport:
    Ls, Rs, Is = sided_subquantales(Q)
    from .quantale import is_factor, is_spatial

    if not is_spatial(Ls.quantale):
        raise HypothesisFailed("L(Q) is not spatial", witness=["L(Q) spatial"])
    res = result or quantic_frame_topologize(Q)
    T = res.topology
    B = res.generators
    A = T.ambient
    al = A.el("al")
    n = Q.names
    a_ok = True
    for a1 in Ls.elements:
        for b1 in Rs.elements:
            for a2 in Ls.elements:
                for b2 in Rs.elements:
                    eq = B[(n[a1], n[b1])] == B[(n[a2], n[b2])]
                    inv1, inv2 = Q.inv(b1), Q.inv(b2)
                    rhs = Q.m(inv1, a1) == Q.m(inv2, a2) and Q.m(a1, inv1) == Q.m(a2, inv2)
                    a_ok &= eq == rhs
    top = n[Q.top]
    forms = {}
    b_ok = True
    for f in T.opens:
        if not T.is_left_sided(f):
            continue
        pairs = [
            (n[a], n[g])
            for a in Ls.elements
            for g in Is.elements
            if Q.le(a, g) and f == T.join(B[(n[a], top)], T.act(B[(n[g], top)], al))
        ]
        forms[T.name(f)] = pairs
        b_ok &= len(pairs) == 1
    c_ok = None
    if is_factor(Q):
        lefts = [f for f in T.opens if T.is_left_sided(f) and f != T.const(al)]
        image = [B[(n[a], top)] for a in Ls.elements]
        c_ok = sorted(set(image)) == sorted(lefts) and len(set(image)) == len(image)
        if c_ok:
            for x in Ls.elements:
                for y in Ls.elements:
                    fx, fy = B[(n[x], top)], B[(n[y], top)]
                    c_ok &= T.le(fx, fy) == Q.le(x, y)
                    c_ok &= T.mult(fx, fy) == B[(n[Q.m(x, y)], top)]
    return LeftSidedOpensReport(a_ok, b_ok, c_ok, forms)


def _meet_in_L(Q, Lset, items):
    """Meet computed among left-sided elements."""
    items = list(items)
    below = [x for x in Lset if all(Q.le(x, c) for c in items)]
    return Q.join_all(below)


def is_reduced(Q: Quantale, C) -> bool:
    Ls, _, _ = sided_subquantales(Q)
    C = list(C)
    return all(not Q.le(_meet_in_L(Q, Ls.elements, [c for c in C if c != a]), a) for a in C)


def reduced_subsets(Q: Quantale) -> list:
    ml = maximal_left_sided(Q)
    out = []
    for r in range(1, len(ml) + 1):
        for C in combinations(ml, r):
            if is_reduced(Q, C):
                out.append(tuple(Q.names[c] for c in C))
    return out


def prop9_check(Q: Quantale, C, result: TopologizationResult | None = None) -> bool:
    C = [Q.el(c) if isinstance(c, str) else c for c in C]
    if not C or not is_reduced(Q, C) or any(c not in maximal_left_sided(Q) for c in C):
        raise NotReduced("subset is not a reduced subset of ML(Q)", witness=[Q.names[c] for c in C])
    Ls, _, _ = sided_subquantales(Q)
    res = result or quantic_frame_topologize(Q)
    T = res.topology
    pos = [T.points.index(Q.names[c]) for c in C]
    TC = subspace(T, pos)
    A = T.ambient
    B = res.generators
    n = Q.names
    for i, a1 in enumerate(C):
        for j, a2 in enumerate(C):
            if i == j:
                continue
            b1 = _meet_in_L(Q, Ls.elements, [c for c in C if c != a1])
            b2 = _meet_in_L(Q, Ls.elements, [c for c in C if c != a2])
            f1 = tuple(B[(n[b1], n[Q.top])][p] for p in pos)
            f2 = tuple(B[(n[Q.top], n[Q.inv(b2)])][p] for p in pos)
            assert f1 in TC.open_set and f2 in TC.open_set
            assert TC.is_left_sided(f1) and TC.is_right_sided(f2)
            lhs = A.m(f2[j], f1[i])
            sup = A.join_all(A.m(f2[z], f1[z]) for z in range(len(C)))
            assert not A.le(lhs, sup)
    strong, _ = strong_hausdorff(TC)
    assert strong
    return strong


# ---------------------------------------------------------------- export

def export_topology(T: QTopology) -> str:
    lines = [
        "points: " + " ".join(T.points),
        f"ambient: {T.ambient.name}",
        f"involutive: {'yes' if T.involutive else 'no'}",
    ]
    for f in T.opens:
        lines.append(" ".join(T.ambient.names[v] for v in f))
    return "\n".join(lines) + "\n"
