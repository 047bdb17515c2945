"""Nuclei, quotient quantales, coequalizers and quantic frames."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations

from .errors import (
    HypothesisFailed,
    NoInvolution,
    NotAHom,
    NotAQuanticFrame,
    NotHoms,
    NucleusNotInvolutive,
    PreconditionFailed,
)
from .order import SupMap, validate_lattice
from .quantale import (
    Quantale,
    find_isomorphism,
    hermitian_spectrum,
    hom_violation,
    is_balanced,
    is_bisymmetric,
    is_left_sided,
    is_pre_idempotent,
    is_right_sided,
    is_semi_integral,
    is_semi_unital,
    is_zero_divisor_free,
    right_adjoint_table,
    sided_subquantales,
    spectrum,
    two_sided_elements,
    validate_quantale,
    zero_divisor_free_on,
)
from .search import search_homs
from .tensor import TensorQuantale, tensor_involution, tensor_quantale, tensorially_involutive, with_involution

EXHAUSTIVE_MINIMALITY_BOUND = 12


@dataclass(frozen=True, eq=False)
class Nucleus:
    quantale: Quantale
    fixed_points: tuple

    @cached_property
    def table(self) -> tuple:
        Q = self.quantale
        return tuple(Q.meet_all(s for s in self.fixed_points if Q.le(a, s)) for a in Q.elements)

    def __call__(self, a):
        return self.table[a]

    def same_as(self, other) -> bool:
        return self.quantale is other.quantale and self.fixed_points == other.fixed_points


def is_nucleus_set(Q: Quantale, F) -> bool:
    members = set(F)
    if Q.top not in members:
        return False
    for s in members:
        for t in members:
            if Q.meet(s, t) not in members:
                return False
        for a in Q.elements:
            if Q.right_impl[a][s] not in members or Q.left_impl[s][a] not in members:
                return False
    return True


def verify_nucleus(c: Nucleus) -> None:
    Q = c.quantale
    t = c.table
    for a in Q.elements:
        assert Q.le(a, t[a]) and t[t[a]] == t[a], "not a closure operator"
        for b in Q.elements:
            if Q.le(a, b):
                assert Q.le(t[a], t[b]), "not monotone"
            assert Q.le(Q.m(t[a], t[b]), t[Q.m(a, b)]), "not lax"


def make_nucleus(Q: Quantale, F) -> Nucleus:
    c = Nucleus(Q, tuple(sorted(set(F))))
    verify_nucleus(c)
    return c


def identity_nucleus(Q: Quantale) -> Nucleus:
    return make_nucleus(Q, Q.elements)


def nucleus_of_hom(dom: Quantale, cod: Quantale, table) -> Nucleus:
    if isinstance(table, SupMap):
        table = table.table
    bad = hom_violation(dom, cod, table, "hom")
    if bad is not None:
        raise NotAHom("map is not a quantale homomorphism", witness=bad)
    radj = right_adjoint_table(dom, cod, table)
    F = {radj[b] for b in cod.elements}
    c = make_nucleus(dom, F)
    assert all(c(a) == radj[table[a]] for a in dom.elements)
    return c


def is_involutive_nucleus(c: Nucleus) -> bool:
    Q = c.quantale
    if not Q.is_involutive:
        raise NoInvolution("quantale has no involution")
    t = c.table
    ineq = all(Q.le(Q.inv(t[a]), t[Q.inv(a)]) for a in Q.elements)
    conj = all(Q.inv(t[Q.inv(a)]) == t[a] for a in Q.elements)
    assert ineq == conj
    return ineq


# ---------------------------------------------------------------- coequalizers

def _admissible(Q, f, g, dom_elements):
    return [
        s for s in Q.elements
        if all(Q.le(f[x], s) == Q.le(g[x], s) for x in dom_elements)
    ]


def least_coequalizing_nucleus(S: Quantale, Q: Quantale, f, g, verify_min=True) -> Nucleus:
    """Least nucleus c on Q with c o f = c o g for homs f, g: S -> Q."""
    if isinstance(f, SupMap):
        f = f.table
    if isinstance(g, SupMap):
        g = g.table
    for h in (f, g):
        bad = hom_violation(S, Q, h, "hom")
        if bad is not None:
            raise NotHoms("coequalizer inputs must be quantale homomorphisms", witness=bad)
    allowed = _admissible(Q, f, g, S.elements)
    F = set(allowed)
    changed = True
    while changed:
        changed = False
        for s in sorted(F):
            if any(Q.right_impl[a][s] not in F or Q.left_impl[s][a] not in F for a in Q.elements):
                F.discard(s)
                changed = True
    assert is_nucleus_set(Q, F)
    c = make_nucleus(Q, F)
    assert all(c(f[x]) == c(g[x]) for x in S.elements)
    if verify_min:
        _verify_minimal(Q, F, allowed)
    return c


def _verify_minimal(Q, F, allowed):
    extra = [s for s in allowed if s not in F]
    if len(Q) <= EXHAUSTIVE_MINIMALITY_BOUND:
        for r in range(1, len(extra) + 1):
            for add in combinations(extra, r):
                assert not is_nucleus_set(Q, F | set(add)), "a smaller coequalizing nucleus exists"
    else:
        for s in extra:
            assert not is_nucleus_set(Q, F | {s})


@dataclass(frozen=True, eq=False)
class QuotientQuantale:
    source: Quantale
    nucleus: Nucleus
    quotient: Quantale
    pi: SupMap

    @property
    def carrier(self):
        return self.nucleus.fixed_points

    def pi_radj(self) -> tuple:
        """pi^- as indices of the source."""
        return tuple(self.nucleus.fixed_points)


def quotient(c: Nucleus, name="") -> QuotientQuantale:
    Q = c.quantale
    F = list(c.fixed_points)
    pos = {s: i for i, s in enumerate(F)}
    names = [Q.names[s] for s in F]
    pairs = [(Q.names[s], Q.names[t]) for s in F for t in F if s != t and Q.le(s, t)]
    L = validate_lattice(names, pairs)
    t = c.table
    table = [[pos[t[Q.m(a, b)]] for b in F] for a in F]
    unit = pos[t[Q.unit]] if Q.unit is not None else None
    V = validate_quantale(L, table, unit, None, name or f"{Q.name}/c", max_elements=max(64, len(F)))
    pi = SupMap(Q.lattice, L, tuple(pos[t[a]] for a in Q.elements))
    bad = hom_violation(Q, V, pi.table, "hom")
    assert bad is None, bad
    assert len(set(pi.table)) == len(F)
    return QuotientQuantale(Q, c, V, pi)


def coequalizer(S: Quantale, Q: Quantale, f, g, name="") -> QuotientQuantale:
    return quotient(least_coequalizing_nucleus(S, Q, f, g), name)


def induce_involution(q: QuotientQuantale) -> QuotientQuantale:
    """Quotient with l_R = pi o l o pi^-; needs an involutive nucleus."""
    Q = q.source
    if not Q.is_involutive:
        raise NoInvolution("source has no involution")
    if not is_involutive_nucleus(q.nucleus):
        bad = next(a for a in Q.elements if not Q.le(Q.inv(q.nucleus(a)), q.nucleus(Q.inv(a))))
        raise NucleusNotInvolutive(
            "nucleus is not involutive", witness=(Q.names[bad],)
        )
    F = q.nucleus.fixed_points
    inv = tuple(q.pi(Q.inv(s)) for s in F)
    V = q.quotient.with_involution(inv)
    pi = SupMap(Q.lattice, V.lattice, q.pi.table)
    assert hom_violation(Q, V, pi.table, "involutive-hom") is None
    return QuotientQuantale(Q, q.nucleus, V, pi)


def factor_through(q: QuotientQuantale, cod: Quantale, k) -> tuple | None:
    """The unique hom kbar with kbar o pi = k, or None when k does not factor."""
    F = q.nucleus.fixed_points
    kbar = tuple(k[s] for s in F)
    if any(kbar[q.pi(a)] != k[a] for a in q.source.elements):
        return None
    if hom_violation(q.quotient, cod, kbar, "hom") is not None:
        return None
    return kbar


def universal_property_certificate(S, q: QuotientQuantale, f, g, cod: Quantale) -> int:
    """Check that equalizing homs Q -> cod correspond one-to-one with homs V -> cod.

    Returns the number of equalizing homs.
    """
    Q = q.source
    ks = search_homs(Q, cod)
    eq = [k for k in ks if all(k[f[x]] == k[g[x]] for x in S.elements)]
    homs_v = set(search_homs(q.quotient, cod))
    seen = set()
    for k in eq:
        kbar = factor_through(q, cod, k)
        assert kbar is not None, "equalizing hom does not factor"
        assert kbar in homs_v
        seen.add(kbar)
    # every hom out of V composes to an equalizing hom
    for kbar in homs_v:
        k = tuple(kbar[q.pi(a)] for a in Q.elements)
        assert k in eq
    assert len(seen) == len(eq) == len(homs_v)
    return len(eq)


# ---------------------------------------------------------------- quantization equivalence

@dataclass(frozen=True)
class QuantizationEquivalence:
    involutive: bool
    equal: bool
    c0: tuple
    c0bar: tuple


def thm2_equivalence_check(T: TensorQuantale, I: Quantale, q_Q, q_R, theta_Q, theta_R) -> QuantizationEquivalence:
    Q, R = T.Q, T.R
    V = T.quantale
    problems = []
    if not (is_balanced(Q) and is_balanced(R)):
        problems.append("factors balanced")
    if not V.is_involutive:
        problems.append("tensor involution")
    for name, h, cod in (("q_Q", q_Q, Q), ("q_R", q_R, R)):
        if hom_violation(I, cod, h, "strong-hom") is not None:
            problems.append(f"{name} strong hom")
    if not problems:
        f = tuple(T.j_Q(q_Q[x]) for x in I.elements)
        g = tuple(T.j_R(q_R[x]) for x in I.elements)
        if tuple(V.inv(y) for y in f) != g or tuple(V.inv(y) for y in g) != f:
            problems.append("diagram commutes")
    if problems:
        raise HypothesisFailed("hypotheses fail: " + ", ".join(problems), witness=problems)
    c0 = least_coequalizing_nucleus(I, V, f, g)
    lf = tuple(V.inv(y) for y in f)
    lg = tuple(V.inv(y) for y in g)
    cbar = least_coequalizing_nucleus(I, V, lf, lg)
    conj = tuple(V.inv(c0(V.inv(a))) for a in V.elements)
    assert conj == cbar.table
    inv = is_involutive_nucleus(c0)
    equal = c0.table == cbar.table
    assert inv == equal
    return QuantizationEquivalence(inv, equal, c0.table, cbar.table)


# ---------------------------------------------------------------- quantic frames

@dataclass(frozen=True, eq=False)
class QuanticFrameReport:
    condA: bool
    condB: bool
    condC: bool
    witnessA: object = None
    witnessB: object = None
    witnessC: object = None
    tensor: TensorQuantale | None = field(default=None, repr=False)
    coequalizer: QuotientQuantale | None = field(default=None, repr=False)
    pi_map: tuple | None = field(default=None, repr=False)
    commutative_part: tuple = ()

    @property
    def is_quantic_frame(self) -> bool:
        return self.condA and self.condB and self.condC


def _preconditions(Q):
    missing = []
    if not Q.is_involutive:
        missing.append("involutive")
    if not is_bisymmetric(Q):
        missing.append("bisymmetric")
    if not is_semi_unital(Q):
        missing.append("semi-unital")
    if missing:
        raise PreconditionFailed("preconditions fail: " + ", ".join(missing), witness=missing)


def comparison_map(Q: Quantale, T: TensorQuantale, Ls, Rs) -> tuple:
    """pi(a (x) b) = b * a, extended by joins over generators."""
    return T.extend(lambda x, y: Q.m(Rs.elements[y], Ls.elements[x]), Q.lattice)


def quantic_frame_check(Q: Quantale) -> QuanticFrameReport:
    _preconditions(Q)
    Ls, Rs, Is = sided_subquantales(Q)
    wa = next((Q.names[a] for a in Ls.elements + Rs.elements if Q.m(a, a) != a), None)
    wb = next((Q.names[a] for a in Is.elements if Q.inv(a) != a), None)
    T = tensorially_involutive(Q)
    L, R, I = Ls.quantale, Rs.quantale, Is.quantale
    qL = tuple(L.el(Q.names[a]) for a in Is.elements)
    qR = tuple(R.el(Q.names[a]) for a in Is.elements)
    f = tuple(T.j_Q(x) for x in qL)
    g = tuple(T.j_R(x) for x in qR)
    V = T.quantale
    coeq = coequalizer(I, V, f, g)
    pi = comparison_map(Q, T, Ls, Rs)
    witness = None
    ok = True
    # well defined on elementary tensors
    for x in L.elements:
        for y in R.elements:
            if pi[T.elem(x, y)] != Q.m(Rs.elements[y], Ls.elements[x]):
                ok, witness = False, ("not well defined", L.names[x], R.names[y])
                break
        if not ok:
            break
    if ok:
        bad = hom_violation(V, Q, pi, "hom")
        if bad is not None:
            ok, witness = False, ("not a hom",) + bad
    if ok:
        for a in V.elements:
            if pi[coeq.nucleus(a)] != pi[a]:
                ok, witness = False, ("does not factor", V.names[a])
                break
    if ok:
        F = coeq.nucleus.fixed_points
        images = {}
        for s in F:
            if pi[s] in images:
                ok, witness = False, ("not injective", V.names[images[pi[s]]], V.names[s])
                break
            images[pi[s]] = s
        if ok and len(images) != len(Q):
            missing = next(a for a in Q.elements if a not in images)
            ok, witness = False, ("not surjective", Q.names[missing])
    report = QuanticFrameReport(
        condA=wa is None,
        condB=wb is None,
        condC=ok,
        witnessA=wa,
        witnessB=wb,
        witnessC=witness,
        tensor=T,
        coequalizer=coeq,
        pi_map=pi,
        commutative_part=tuple(Q.names[a] for a in Is.elements),
    )
    if report.condC:
        assert len(set(pi)) == len(Q)
    if report.is_quantic_frame:
        assert is_semi_unital(Q) and is_semi_integral(Q) and is_pre_idempotent(Q)
    return report


def tensor_preimages(report: QuanticFrameReport, Q: Quantale, value) -> list:
    """Tensor elements mapped to a given element of Q by pi."""
    return [d for d in report.tensor.quantale.elements if report.pi_map[d] == value]


# ---------------------------------------------------------------- quantic frame suite

@dataclass(frozen=True)
class FrameSuiteReport:
    a: bool
    b: bool
    c: bool
    d: bool
    zero_divisor_free: bool
    phi: dict


def hermitian_phi(Q: Quantale) -> dict:
    """q -> q v q' from sigma(L(Q)) to sigma_h(Q), as element names."""
    Ls, _, _ = sided_subquantales(Q)
    L = Ls.quantale
    out = {}
    for q in spectrum(L):
        x = Ls.elements[q]
        out[Q.names[x]] = Q.names[Q.join(x, Q.inv(x))]
    return out


def prop4_suite(Q: Quantale) -> FrameSuiteReport:
    rep = quantic_frame_check(Q)
    if not rep.is_quantic_frame:
        raise NotAQuanticFrame(
            "not a quantic frame",
            witness={"A": rep.witnessA, "B": rep.witnessB, "C": rep.witnessC},
        )
    T = rep.tensor
    V = T.quantale
    pi = rep.pi_map
    Ls, Rs, Is = sided_subquantales(Q)
    L, R = Ls.quantale, Rs.quantale
    I_free = zero_divisor_free_on(Q, Is.elements)
    a_ok = True
    if I_free:
        a_ok = all(
            pi[T.elem(x, y)] != Q.bottom
            for x in L.elements if x != L.bottom
            for y in R.elements if y != R.bottom
        )
    b_ok = all(pi[V.inv(d)] == Q.inv(pi[d]) for d in V.elements)
    radj = right_adjoint_table(V, Q, pi)
    sh_Q = hermitian_spectrum(Q)
    sh_T = hermitian_spectrum(V)
    c_ok = sorted(radj[p] for p in sh_Q) == sorted(sh_T) and len({radj[p] for p in sh_Q}) == len(sh_Q)
    d_ok = sorted(pi[p] for p in sh_T) == sorted(sh_Q) and all(radj[pi[p]] == p for p in sh_T)
    q_free = is_zero_divisor_free(Q)
    zero_divisor_free = q_free == I_free
    phi = hermitian_phi(Q)
    phi_ok = sorted(phi.values()) == sorted(Q.names[p] for p in sh_Q) and len(set(phi.values())) == len(phi)
    assert a_ok and b_ok and c_ok and d_ok and zero_divisor_free and phi_ok
    return FrameSuiteReport(a_ok, b_ok, c_ok, d_ok, zero_divisor_free, phi)


# ---------------------------------------------------------------- pushout spectrum

@dataclass(frozen=True, eq=False)
class PushoutResult:
    omega: Quantale
    tensor: TensorQuantale
    quotient: QuotientQuantale
    left_iso: tuple


def spectrum_pushout(L: Quantale, R: Quantale, I: Quantale, q_L, q_R, theta_L, theta_R, name="Omega") -> PushoutResult:
    problems = []
    if not is_left_sided(L):
        problems.append("L left-sided")
    if not is_right_sided(R):
        problems.append("R right-sided")
    if not is_semi_unital(L):
        problems.append("L semi-unital")
    if not is_semi_unital(R):
        problems.append("R semi-unital")
    for nm, h, cod in (("q_L", q_L, L), ("q_R", q_R, R)):
        if hom_violation(I, cod, h, "strong-hom") is not None:
            problems.append(f"{nm} strong hom")
    if any(theta_L[q_L[x]] != q_R[x] or theta_R[q_R[x]] != q_L[x] for x in I.elements):
        problems.append("theta o q self-adjointness")
    if problems:
        raise HypothesisFailed("hypotheses fail: " + ", ".join(problems), witness=problems)
    T = tensor_quantale(L, R)
    inv = tensor_involution(T, theta_L, theta_R)
    T = with_involution(T, inv)
    f = tuple(T.j_Q(q_L[x]) for x in I.elements)
    g = tuple(T.j_R(q_R[x]) for x in I.elements)
    q = coequalizer(I, T.quantale, f, g, name)
    q = induce_involution(q)
    omega = q.quotient.renamed(name)
    Ls, _, _ = sided_subquantales(omega)
    iso = find_isomorphism(Ls.quantale, L)
    if iso is None:
        raise HypothesisFailed("L(Omega) is not isomorphic to L", witness=len(Ls.elements))
    return PushoutResult(omega, T, q, iso)
