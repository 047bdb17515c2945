import pytest

import oracles
from oracles import Raw
from reference_data import SQ2_CLASSES, SQ2_MAX_SIZE
from quantale_lab.catalog import (
    all_catalog,
    catalog,
    catalog_names,
    enumerate_strictly_quantized,
    q2,
    random_left_sided_family,
    smallest_ambient,
)
from quantale_lab.errors import UnknownName
from quantale_lab.quantale import (
    find_isomorphism,
    is_left_sided,
    is_pre_idempotent,
    is_semi_unital,
)


def unitalization_raw():
    """Q2 with a unit adjoined, built directly from the Q2 tables."""
    Q = q2()
    cells = [(x, e) for e in (0, 1) for x in Q.elements]
    n = len(cells)
    R = Raw(Q)
    U = object.__new__(Raw)
    U.names = [f"{Q.names[x]}/{e}" for x, e in cells]
    U.n = n
    U.le = [[R.le[x][y] and e <= d for (y, d) in cells] for (x, e) in cells]
    U.m = []
    for x, e in cells:
        row = []
        for y, d in cells:
            v = R.m[x][y]
            if e:
                v = R.join(v, y)
            if d:
                v = R.join(v, x)
            row.append(cells.index((v, e and d)))
        U.m.append(row)
    U.inv = [cells.index((R.inv[x], e)) for x, e in cells]
    U.top = cells.index((Q.top, 1))
    U.bot = cells.index((Q.bottom, 0))
    return Q, cells, U


def invariant(R: Raw):
    up = lambda a: sum(R.le[a])  # noqa: E731
    return sorted(
        (
            up(a),
            R.m[a][a] == a,
            R.le[R.m[R.top][a]][a],
            R.le[R.m[a][R.top]][a],
            R.inv[a] == a if R.inv else None,
        )
        for a in range(R.n)
    )


def test_registry():
    names = catalog_names()
    assert names[:5] == ["two", "c3l", "c3r", "c3trivial", "q2"]
    assert all(catalog(n).name == n for n in names)
    with pytest.raises(UnknownName):
        catalog("nope")
    with pytest.raises(UnknownName):
        catalog("sq2-9")


def test_strictly_quantized_classes_against_brute_force():
    Q, cells, U = unitalization_raw()
    assert oracles.is_quantale(U)
    unit = cells.index((Q.bottom, 1))
    assert all(U.m[unit][a] == a == U.m[a][unit] for a in range(U.n))
    classes = enumerate_strictly_quantized()
    assert len(classes) == SQ2_CLASSES
    # pairwise non-isomorphic, certified by an isomorphism invariant
    invs = [invariant(Raw(R)) for R in classes]
    assert len({repr(i) for i in invs}) == SQ2_CLASSES
    hits = set()
    for F in oracles.nuclei(U):
        c = [U.meet_all([s for s in F if U.le[x][s]]) for x in range(U.n)]
        low = [c[cells.index((x, 0))] for x in Q.elements]
        if len(set(low)) != len(low) or c[cells.index((Q.top, 0))] != c[U.top]:
            continue
        F = sorted(F)
        # the quotient is generated by the image of Q2 and the unit
        gen = set(low) | {c[unit]}
        while True:
            more = {c[U.m[a][b]] for a in gen for b in gen} | {
                U.meet_all([s for s in F if U.le[a][s] and U.le[b][s]]) for a in gen for b in gen
            }
            if more <= gen:
                break
            gen |= more
        assert gen == set(F)
        inv = invariant_of_fixed(U, F, c)
        k = [i for i, v in enumerate(invs) if v == inv]
        assert len(k) == 1
        hits.add(k[0])
    assert hits == set(range(SQ2_CLASSES))


def invariant_of_fixed(U, F, c):
    pos = {s: i for i, s in enumerate(F)}
    R = object.__new__(Raw)
    R.n = len(F)
    R.le = [[U.le[s][t] for t in F] for s in F]
    R.m = [[pos[c[U.m[s][t]]] for t in F] for s in F]
    R.inv = [pos[c[U.inv[s]]] for s in F]
    R.top = pos[c[U.top]]
    R.bot = next(a for a in range(R.n) if all(R.le[a][b] for b in range(R.n)))
    return invariant(R)


def test_strictly_quantized_members():
    for R in enumerate_strictly_quantized():
        assert len(R) <= SQ2_MAX_SIZE
        assert is_pre_idempotent(R)
        assert R.unit is not None and R.is_involutive
        assert oracles.is_quantale(Raw(R))
        # Q2 sits inside as a subquantale with the same top
        Q = q2()
        emb = [R.el(x) for x in Q.names]
        for a in Q.elements:
            for b in Q.elements:
                assert R.m(emb[a], emb[b]) == emb[Q.m(a, b)]
                assert R.join(emb[a], emb[b]) == emb[Q.join(a, b)]
        assert emb[Q.top] == R.top
    assert len(smallest_ambient()) == 9


def test_random_family_is_valid_and_reproducible():
    fam = random_left_sided_family(seed=3, count=5)
    again = random_left_sided_family(seed=3, count=5)
    assert [F.mult for F in fam] == [G.mult for G in again]
    for F in fam:
        assert oracles.is_quantale(Raw(F))
        assert is_left_sided(F) and is_semi_unital(F)


def test_catalog_isomorphism_classes_are_distinct():
    cats = all_catalog()
    for i, A in enumerate(cats):
        for B in cats[i + 1:]:
            if len(A) == len(B):
                assert find_isomorphism(A, B) is None, (A.name, B.name)
