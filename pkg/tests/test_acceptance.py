"""End-to-end acceptance criteria, each run against its time limit.

Run directly (``python3 tests/test_acceptance.py``) or through pytest; either
way one PASS/FAIL line per criterion is printed.
"""

import os
import sys
import time

import pytest

sys.path.insert(0, os.path.dirname(__file__))

import oracles  # noqa: E402
from oracles import Raw  # noqa: E402
from reference_data import (  # noqa: E402
    Q2_COLUMNS,
    Q2_INVOLUTION,
    Q2_TABLE,
    SQ2_CLASSES,
    SQ2_MAX_SIZE,
)
from quantale_lab.catalog import (  # noqa: E402
    all_catalog,
    c3l,
    c3r,
    c3trivial,
    enumerate_strictly_quantized,
    lq4,
    q2,
    random_left_sided_family,
    rq4,
    two,
)
from quantale_lab.order import chain  # noqa: E402
from quantale_lab.quantale import (  # noqa: E402
    endomorphism_quantale,
    find_isomorphism,
    h_p,
    hermitian_spectrum,
    is_commutative,
    is_idempotent,
    is_left_sided,
    is_pre_idempotent,
    is_right_sided,
    is_semi_unital,
    is_strongly_spatial,
    opposite_quantale,
    property_report,
    right_adjoint_table,
    spectrum,
    strong_homs_to_Q2,
    strong_spectrum,
)
from quantale_lab.quotients import (  # noqa: E402
    coequalizer,
    prop4_suite,
    quantic_frame_check,
    spectrum_pushout,
    universal_property_certificate,
)
from quantale_lab.tensor import (  # noqa: E402
    chain_anti_iso,
    tensor_involution,
    tensor_primes,
    tensor_quantale,
    with_involution,
)
from quantale_lab.topology import (  # noqa: E402
    PresheafUniverse,
    U_Q_and_prop6,
    convergence_theorem_check,
    generate_topology,
    lemma3_check,
    limits,
    proof_filter,
    quantic_frame_topologize,
    separation_report,
    sober_check,
    spectral_topology,
    strong_hausdorff_violations,
    subspace,
    submodules_of_Q2,
    validate_qfilter,
)

RESULTS = {}


# ---------------------------------------------------------------- criteria

def c01_q2_table():
    Q = q2()
    n = 0
    for r, row in Q2_TABLE.items():
        for col, v in zip(Q2_COLUMNS, row):
            assert Q.names[Q.m(Q.el(r), Q.el(col))] == v, (r, col)
            n += 1
    assert n == 25
    for a, b in Q2_INVOLUTION.items():
        assert Q.names[Q.inv(Q.el(a))] == b


def c02_q2_identities():
    Q = q2()
    el = Q.el
    for x in Q.elements:
        assert Q.m(x, el("b")) == Q.m(x, el("al"))
        assert Q.m(x, el("ar")) == Q.m(x, el("c")) == Q.m(x, Q.top)
    for a in Q.elements:
        for b in Q.elements:
            for g in Q.elements:
                if g != Q.bottom:
                    assert Q.m3(a, g, b) == Q.m(a, b)
    sig = spectrum(Q)
    c = el("c")
    assert c in sig and all(Q.le(p, c) for p in sig) and Q.inv(c) == c
    assert oracles.is_prime(Raw(Q), c)


def c03_tensor_reconstruction():
    L, R = c3l(), c3r()
    T = tensor_quantale(L, R)
    tq, tr = chain_anti_iso(L, R)
    T = with_involution(T, tensor_involution(T, tq, tr))
    assert len(T.quantale) == 6
    assert len(oracles.bideals(Raw(L), Raw(R))) == 6
    assert find_isomorphism(T.quantale, q2(), involutive=True) is not None


def c04_strictly_quantized():
    enumerate_strictly_quantized.cache_clear()
    classes = enumerate_strictly_quantized()
    assert len(classes) == SQ2_CLASSES
    for R in classes:
        assert len(R) <= SQ2_MAX_SIZE and is_pre_idempotent(R)
    for i, A in enumerate(classes):
        for B in classes[i + 1:]:
            assert find_isomorphism(A, B, involutive=True) is None


def c05_submodules():
    want = [
        (("bot", "al", "top"), False),
        (("bot", "al", "c", "top"), False),
        (("bot", "b", "al", "ar", "c", "top"), True),
    ]
    ambients = enumerate_strictly_quantized()
    assert len(ambients) == 6
    for A in ambients:
        assert submodules_of_Q2(A) == want


def _is_frame(Q):
    return (
        is_idempotent(Q)
        and is_commutative(Q)
        and all(Q.m(Q.top, a) == a for a in Q.elements)
        and Q.is_involutive
        and all(Q.inv(a) == a for a in Q.elements)
    )


def c06_quantic_frames():
    frames = [Q for Q in all_catalog() if _is_frame(Q)]
    assert {Q.name for Q in frames} >= {"two", "c3frame", "diamond"}
    for Q in [q2()] + frames:
        rep = quantic_frame_check(Q)
        assert rep.is_quantic_frame, (Q.name, rep.witnessA, rep.witnessB, rep.witnessC)
    rep = prop4_suite(q2())
    assert rep.a and rep.b and rep.c and rep.d and rep.zero_divisor_free
    Q = q2()
    assert set(rep.phi) == {"bot", "al"}
    assert sorted(rep.phi.values()) == sorted(Q.names[p] for p in hermitian_spectrum(Q))
    assert len(set(rep.phi.values())) == 2


def c07_two_point_example():
    res = quantic_frame_topologize(q2())
    T = res.topology
    A = T.ambient
    assert T.points == ("bot", "al")
    B = res.generators
    al, ar = A.el("al"), A.el("ar")
    # (i) nine-element base
    nine = {
        B[("al", "top")], B[("top", "ar")], B[("al", "ar")],
        T.lact(ar, B[("al", "top")]), T.act(B[("top", "ar")], al),
        T.const("b"), T.const("al"), T.const("ar"), T.const("top"),
    }
    assert len(nine) == 9
    assert generate_topology(T.points, nine, A, involutive=True).open_set == T.open_set
    assert all(T.join_all(g for g in nine if T.le(g, f)) == f for f in T.opens)
    # (ii) T0, not Frechet, with f(al) <= f(bot) for every open
    sep = separation_report(T)
    assert sep["T0"] and not sep["T1"]
    x, y = T.points.index("al"), T.points.index("bot")
    assert all(A.le(f[x], f[y]) for f in T.opens)
    # (iii) sober
    assert sober_check(T).sober
    # (iv) the open-set quantale is not a quantic frame
    TQ = T.as_quantale
    rep = quantic_frame_check(TQ)
    assert not rep.is_quantic_frame and rep.condA and rep.condB and not rep.condC
    assert rep.witnessC[0] == "not injective"
    assert len(rep.coequalizer.carrier) == len(rep.tensor.quantale)  # I(T) = {bot, top}
    Tt = rep.tensor
    V = Tt.quantale
    Lq, Rq = Tt.Q, Tt.R

    def nm(f):
        return T.name(f)

    Bl, Br = B[("al", "top")], B[("top", "ar")]
    lhs = V.join(
        Tt.elem(Lq.el(nm(T.const("al"))), Rq.el(nm(T.top))),
        Tt.elem(Lq.el(nm(Bl)), Rq.el(nm(Br))),
    )
    rhs = Tt.elem(Lq.el(nm(Bl)), Rq.el(nm(T.top)))
    assert lhs != rhs
    pi = rep.pi_map
    assert pi[lhs] == pi[rhs] == TQ.el(nm(Bl))


def c08_tensor_primes():
    cats = [Q for Q in all_catalog() if len(Q) <= 5 and is_semi_unital(Q)]
    lefts = [Q for Q in cats if is_left_sided(Q)]
    rights = [Q for Q in cats if is_right_sided(Q)]
    pairs = [(L, R) for L in lefts for R in rights]
    for F in random_left_sided_family(seed=int(os.environ.get("QLAB_SEED", "0")), count=20):
        pairs.append((F, opposite_quantale(F)))
    assert len(pairs) >= 29
    for L, R in pairs:
        T = tensor_quantale(L, R)
        tp = tensor_primes(T)
        assert list(tp.primes) == oracles.primes(Raw(T.quantale)), (L.name, R.name)
        assert len(set(tp.factorization.values())) == len(tp.primes)


def c09_strong_homs_bijection():
    Q2 = q2()
    c = Q2.el("c")
    for Q in all_catalog():
        sig = strong_spectrum(Q)
        homs = strong_homs_to_Q2(Q)
        assert len(homs) == len(sig), Q.name
        assert len(oracles.homs(Raw(Q), Raw(Q2), strong=True)) == len(sig)
        for h in homs:
            p = right_adjoint_table(Q, Q2, h.table)[c]
            assert p in sig and h_p(Q, p).table == h.table
        for p in sig:
            assert right_adjoint_table(Q, Q2, h_p(Q, p).table)[c] == p
        if Q.is_involutive:
            inv_homs = strong_homs_to_Q2(Q, involutive=True)
            herm = hermitian_spectrum(Q)
            assert len(inv_homs) == len(herm)
            assert sorted(right_adjoint_table(Q, Q2, h.table)[c] for h in inv_homs) == sorted(herm)


def c10_endomorphisms():
    E = endomorphism_quantale(chain(["0", "1", "2"]))
    flags = property_report(E).flags
    assert flags["semi-unital"] and flags["factor"] and not flags["semi-integral"]
    assert spectrum(E) == [] and oracles.primes(Raw(E)) == []


def c11_universal_property():
    S = two()
    cods = [Q for Q in all_catalog() if len(Q) <= 8]
    checked = 0
    for Q in all_catalog():
        if len(Q) > 12:
            continue
        ids = [e for e in Q.elements if Q.m(e, e) == e]
        for fe in ids:
            for ge in ids:
                f, g = (Q.bottom, fe), (Q.bottom, ge)
                q = coequalizer(S, Q, f, g)
                for cod in cods:
                    universal_property_certificate(S, q, f, g, cod)
                    checked += 1
    assert checked > 0


def c12_convergence():
    res = quantic_frame_topologize(q2())
    T = res.topology
    U = PresheafUniverse(T)
    assert not separation_report(T)["strongT2"]
    x, y = strong_hausdorff_violations(T)[0]
    assert x != y
    w = proof_filter(T, x, y, U)
    assert validate_qfilter(T, w, U)
    lefts, rights = limits(T, w, U)
    assert T.points[x] in lefts and T.points[y] in rights
    ident = (0, 1, 2, 3)
    O = spectrum_pushout(lq4(), rq4(), two(), (0, 3), (0, 3), ident, ident).omega
    TY = quantic_frame_topologize(O).topology
    TC = subspace(TY, [TY.points.index("(p,top)"), TY.points.index("(q,top)")])
    rep = convergence_theorem_check(TC)
    assert rep.strongT2 and rep.unique_limits and rep.distinct_limit_pairs == ()
    assert not rep.sampled


def c13_strong_spatiality():
    for Q in all_catalog():
        rep = U_Q_and_prop6(Q)
        assert rep.strongly_spatial == rep.criterion == is_strongly_spatial(Q), Q.name
    rep = U_Q_and_prop6(c3trivial())
    assert not rep.strongly_spatial and not rep.criterion


def c14_interior():
    tops = []
    for Q in all_catalog():
        tops.append(spectral_topology(Q).topology)
        if Q.is_involutive:
            tops.append(spectral_topology(Q, hermitian=True).topology)
    for name in ("q2", "two", "c3frame", "diamond"):
        from quantale_lab.catalog import catalog

        tops.append(quantic_frame_topologize(catalog(name)).topology)
    A = tops[0].ambient
    for seeds in ([("al", "bot")], [("ar", "top")], [("b", "al"), ("top", "ar")]):
        tops.append(generate_topology(("x", "y"), seeds, A, involutive=False))
    false_seen = 0
    for T in tops:
        rep = lemma3_check(T)
        assert rep.involutive == rep.I3prime == rep.I3
        if not rep.I3prime:
            assert rep.witness is not None
            false_seen += 1
    assert false_seen > 0


CRITERIA = [
    (1, "Q2 golden table", c01_q2_table, 1),
    (2, "Q2 identities", c02_q2_identities, 1),
    (3, "tensor reconstruction", c03_tensor_reconstruction, 5),
    (4, "strictly quantized classification", c04_strictly_quantized, 60),
    (5, "submodules of Q2", c05_submodules, 10),
    (6, "quantic frame certification", c06_quantic_frames, 10),
    (7, "two-point example end to end", c07_two_point_example, 30),
    (8, "tensor primes oracle", c08_tensor_primes, 120),
    (9, "strong homs bijection", c09_strong_homs_bijection, 30),
    (10, "endomorphism quantale of C3", c10_endomorphisms, 5),
    (11, "coequalizer universal property", c11_universal_property, 120),
    (12, "convergence theorem", c12_convergence, 300),
    (13, "strong spatiality two-way", c13_strong_spatiality, 60),
    (14, "interior biconditional", c14_interior, 30),
]


def run_criterion(fn, limit):
    t = time.perf_counter()
    err = None
    try:
        fn()
    except Exception as e:  # recorded, then re-raised by the test
        err = e
    dt = time.perf_counter() - t
    ok = err is None and dt < limit
    return ok, dt, err


def line(num, title, ok, dt, limit, err):
    status = "PASS" if ok else "FAIL"
    extra = "" if err is None else f" ({type(err).__name__}: {err})"
    return f"criterion {num:2d} {status} {dt:7.2f}s < {limit}s  {title}{extra}"


@pytest.mark.parametrize("num,title,fn,limit", CRITERIA, ids=[f"c{n:02d}" for n, *_ in CRITERIA])
def test_criterion(num, title, fn, limit):
    ok, dt, err = run_criterion(fn, limit)
    RESULTS[num] = line(num, title, ok, dt, limit, err)
    print(RESULTS[num])
    if err is not None:
        raise err
    assert dt < limit, f"criterion {num} took {dt:.2f}s, limit {limit}s"


if __name__ == "__main__":
    failed = 0
    for num, title, fn, limit in CRITERIA:
        ok, dt, err = run_criterion(fn, limit)
        print(line(num, title, ok, dt, limit, err), flush=True)
        failed += not ok
    sys.exit(1 if failed else 0)
