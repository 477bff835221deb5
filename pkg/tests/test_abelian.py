import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import abelian_orbit_count, det_cofactor
from reidemeister.abelian import (
    AbelianEndo,
    FgAbelianGroup,
    class_representatives,
    endo_from_automorphism,
    fixed_subgroup_size,
    is_automorphism,
    parse_endo_spec,
    parse_group_spec,
    present_finite_abelian,
    reidemeister_number,
    rp_witness,
    same_twisted_class,
)
from reidemeister.corpus import abelian_entries, corpus_entry, finite_abelian_automorphisms, finite_entries
from reidemeister.errors import InfiniteResultError, InputError, NotAutomorphismError
from reidemeister.groups import enumerate_automorphisms, reidemeister_number as finite_R
from reidemeister.linalg import INFINITE, is_finite

Z = FgAbelianGroup(1, ())
Z2 = FgAbelianGroup(2, ())
ROT = [[0, -1], [1, 0]]
CAT = [[2, 1], [1, 1]]


def cyclic(n):
    return FgAbelianGroup(0, (n,))


def test_group_validation():
    with pytest.raises(InputError, match="torsion"):
        FgAbelianGroup(0, (4, 2))
    with pytest.raises(InputError):
        FgAbelianGroup(0, (1,))
    with pytest.raises(InputError):
        FgAbelianGroup(-1, ())
    A = FgAbelianGroup.normalized(1, [4, 6])
    assert A.invariant_factors == (2, 12)
    assert FgAbelianGroup.normalized(0, [2, 3]) == cyclic(6)
    assert str(FgAbelianGroup(2, (4,))) == "Z^2 + Z/4"


def test_element_reduction():
    A = FgAbelianGroup(1, (2, 4))
    x = A.element([5], [3, 7])
    assert x.torsion == (1, 3)
    assert A.add(x, x) == A.element([10], [0, 2])


def test_endo_well_definedness():
    A = FgAbelianGroup(0, (2, 4))
    with pytest.raises(InputError, match="C"):
        AbelianEndo.create(A, None, None, [[1, 0], [1, 1]])  # Z/2 -> Z/4 by 1 is not defined
    AbelianEndo.create(A, None, None, [[1, 0], [2, 1]])


def test_is_automorphism_examples():
    assert is_automorphism(Z2, AbelianEndo.identity(Z2))
    assert not is_automorphism(Z, AbelianEndo.create(Z, [[2]]))
    Z5 = cyclic(5)
    assert is_automorphism(Z5, AbelianEndo.create(Z5, None, None, [[2]]))
    Z6 = cyclic(6)
    assert not is_automorphism(Z6, AbelianEndo.create(Z6, None, None, [[2]]))


def test_reidemeister_examples():
    for n in (2, 5, 12):
        assert reidemeister_number(cyclic(n), AbelianEndo.identity(cyclic(n))) == n
    assert reidemeister_number(Z2, AbelianEndo.create(Z2, ROT)) == 2
    assert reidemeister_number(Z, AbelianEndo.identity(Z)) == INFINITE
    assert reidemeister_number(Z2, AbelianEndo.create(Z2, CAT)) == 1
    with pytest.raises(NotAutomorphismError):
        reidemeister_number(Z, AbelianEndo.create(Z, [[3]]))


def test_fixed_examples():
    for n in (2, 5, 12):
        assert fixed_subgroup_size(cyclic(n), AbelianEndo.identity(cyclic(n))) == n
    assert fixed_subgroup_size(Z, AbelianEndo.scalar(Z, -1)) == 1
    assert fixed_subgroup_size(Z2, AbelianEndo.create(Z2, ROT)) == 1
    assert fixed_subgroup_size(Z, AbelianEndo.identity(Z)) == INFINITE
    # Z + Z/2 with inversion fixes the torsion element only
    A = FgAbelianGroup(1, (2,))
    assert fixed_subgroup_size(A, AbelianEndo.create(A, [[-1]], None, [[1]])) == 2


def test_same_class_examples():
    inv = AbelianEndo.scalar(Z, -1)
    assert same_twisted_class(Z, inv, Z.element([3]), Z.element([3]))
    assert not same_twisted_class(Z, inv, Z.element([0]), Z.element([1]))
    assert same_twisted_class(Z, inv, Z.element([0]), Z.element([4]))


def test_class_representatives_examples():
    Z3 = cyclic(3)
    reps = class_representatives(Z3, AbelianEndo.identity(Z3))
    assert sorted(r.torsion for r in reps) == [(0,), (1,), (2,)]
    reps = class_representatives(Z, AbelianEndo.scalar(Z, -1))
    assert len(reps) == 2
    assert not same_twisted_class(Z, AbelianEndo.scalar(Z, -1), *reps)
    reps = class_representatives(Z2, AbelianEndo.create(Z2, CAT))
    assert [r.free for r in reps] == [(0, 0)]
    with pytest.raises(InfiniteResultError):
        class_representatives(Z, AbelianEndo.identity(Z))


def test_rp_witness_examples():
    w = rp_witness(Z, AbelianEndo.scalar(Z, -1))
    assert w.K.invariant_factors == (2,)
    assert w.phi_K == AbelianEndo.identity(w.K)
    assert w.verify()
    w = rp_witness(Z2, AbelianEndo.create(Z2, ROT))
    assert w.K.order == 2 and w.verify()
    Z6 = cyclic(6)
    w = rp_witness(Z6, AbelianEndo.identity(Z6))
    assert w.K == Z6 and w.verify()
    assert all(w.projection(x) == x for x in Z6.elements())
    with pytest.raises(InfiniteResultError):
        rp_witness(Z, AbelianEndo.identity(Z))


def _abelian_sources():
    for e in abelian_entries():
        for name, psi in e.notable_automorphisms:
            yield e.group, psi, f"{e.name}/{name}"


SOURCES = list(_abelian_sources())


@pytest.mark.parametrize("A,psi,label", SOURCES, ids=[s[2] for s in SOURCES])
def test_r_at_least_fix(A, psi, label):
    R = reidemeister_number(A, psi)
    if is_finite(R):
        assert R >= fixed_subgroup_size(A, psi)


@pytest.mark.parametrize("A,psi,label", SOURCES, ids=[s[2] for s in SOURCES])
def test_witness_on_corpus(A, psi, label):
    if is_finite(reidemeister_number(A, psi)):
        w = rp_witness(A, psi)
        assert w.verify()
        assert w.K.order == reidemeister_number(A, psi)


@pytest.mark.parametrize("A,psi,label", SOURCES, ids=[s[2] for s in SOURCES])
def test_det_formula_on_free_part(A, psi, label):
    if A.torsion_rank:
        return
    M = psi.minus_identity().tolist()
    d = det_cofactor(M)
    assert reidemeister_number(A, psi) == (abs(d) if d else INFINITE)


def test_witness_fibres_are_classes_brute_force():
    # on a box of Z^2 + Z/4 the classes are exactly the fibres of F
    A = FgAbelianGroup(2, (4,))
    psi = AbelianEndo.create(A, ROT, [[1, 2]], [[3]])
    w = rp_witness(A, psi)
    box = [A.element([a, b], [t]) for a in range(-2, 3) for b in range(-2, 3) for t in range(4)]
    for x, y in itertools.combinations(box[::3], 2):
        assert same_twisted_class(A, psi, x, y) == (w.projection(x) == w.projection(y))


def _finite_abelian_cases():
    for e in finite_entries():
        if e.group.is_abelian:
            yield e.name


@pytest.mark.parametrize("name", list(_finite_abelian_cases()))
def test_cokernel_matches_orbit_oracle(name):
    G = corpus_entry(name).group
    pres = present_finite_abelian(G)
    A = pres.group
    assert A.order == G.order
    for phi in enumerate_automorphisms(G):
        psi = endo_from_automorphism(pres, phi)
        # the transported map agrees with phi on every element
        for x in range(G.order):
            assert pres.to_element[phi(x)] == psi(pres.to_element[x])
        oracle = abelian_orbit_count(range(G.order), G.mul, G.inv, phi)
        assert reidemeister_number(A, psi) == oracle == finite_R(G, phi)


@pytest.mark.parametrize("orders", [(7,), (2, 4), (2, 2), (3, 3), (2, 6)])
def test_all_automorphisms_of_small_fg_groups(orders):
    A = FgAbelianGroup.normalized(0, orders)
    elements = A.elements()
    for psi in finite_abelian_automorphisms(A):
        oracle = abelian_orbit_count(elements, A.add, A.neg, psi)
        assert reidemeister_number(A, psi) == oracle
        fixed = sum(1 for x in elements if psi(x) == x)
        assert fixed_subgroup_size(A, psi) == fixed


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_class_relation_is_equivalence(data):
    A = FgAbelianGroup(1, (2, 4))
    F = data.draw(st.sampled_from([[[1]], [[-1]]]))
    B = [[data.draw(st.integers(0, 1))], [data.draw(st.integers(0, 3))]]
    C = data.draw(st.sampled_from([[[1, 0], [0, 1]], [[1, 0], [2, 3]], [[1, 0], [0, 3]]]))
    psi = AbelianEndo.create(A, F, B, C)
    assert is_automorphism(A, psi)
    elt = st.builds(lambda f, a, b: A.element([f], [a, b]), st.integers(-6, 6), st.integers(0, 1), st.integers(0, 3))
    x, y, z = data.draw(elt), data.draw(elt), data.draw(elt)
    same = lambda u, v: same_twisted_class(A, psi, u, v)
    assert same(x, x)
    assert same(x, y) == same(y, x)
    if same(x, y) and same(y, z):
        assert same(x, z)


def test_zero_class_is_subgroup():
    A = FgAbelianGroup(2, (4,))
    psi = AbelianEndo.create(A, ROT, [[1, 2]], [[3]])
    zero = A.zero()
    rng = random.Random(5)
    box = [A.element([rng.randint(-5, 5), rng.randint(-5, 5)], [rng.randrange(4)]) for _ in range(200)]
    H = [x for x in box if same_twisted_class(A, psi, x, zero)]
    assert H
    for x in H[:15]:
        assert same_twisted_class(A, psi, A.neg(x), zero)
        for y in H[:15]:
            assert same_twisted_class(A, psi, A.add(x, y), zero)


def test_powers_and_composition():
    psi = AbelianEndo.create(Z2, ROT)
    assert psi.power(4) == AbelianEndo.identity(Z2)
    assert psi.compose(psi) == AbelianEndo.scalar(Z2, -1)


def test_json_specs():
    A = parse_group_spec({"kind": "fg_abelian", "free_rank": 1, "torsion": []})
    assert A == Z
    with pytest.raises(InputError, match="torsion"):
        parse_group_spec({"kind": "fg_abelian", "free_rank": 0, "torsion": [4, 6]})
    B = FgAbelianGroup(2, (4,))
    psi = parse_endo_spec(B, {"F": ROT, "C": [[3]]})
    assert psi.B.tolist() == [[0, 0]]
    assert parse_endo_spec(B, None) == AbelianEndo.identity(B)
    with pytest.raises(InputError, match="F"):
        parse_endo_spec(B, {"F": [[1]]})
