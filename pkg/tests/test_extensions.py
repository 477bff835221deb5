import pytest

from reidemeister.corpus import corpus_entry, finite_entries
from reidemeister.errors import InputError, NotNormalError
from reidemeister.extensions import (
    GroupExtension,
    check_bound_abelian_quotient,
    check_bound_nonabelian,
    check_class_epimorphism,
    check_fix_bound,
    harvest_extensions,
    induce,
    normal_subgroups,
)
from reidemeister.groups import (
    Automorphism,
    enumerate_automorphisms,
    identity_automorphism,
    inner_automorphism,
)


def _a3(S3):
    return [x for x in range(6) if S3.element_order(x) != 2]


def test_induce_examples(S3):
    idt = identity_automorphism(S3)
    trivial = GroupExtension.from_normal_subgroup(S3, [0])
    pair = induce(trivial, idt)
    assert pair.phi_quot.is_identity and trivial.quotient.order == 6
    whole = GroupExtension.from_normal_subgroup(S3, range(6))
    pair = induce(whole, idt)
    assert pair.phi_sub.is_identity and whole.quotient.order == 1
    ext = GroupExtension.from_normal_subgroup(S3, _a3(S3))
    pair = induce(ext, idt)
    assert pair.phi_sub.is_identity and pair.phi_quot.is_identity


def test_induce_errors(S3):
    t = S3.index_of_label((2, 1, 3))
    with pytest.raises(NotNormalError):
        GroupExtension.from_normal_subgroup(S3, [0, t])
    with pytest.raises(InputError):
        GroupExtension.from_normal_subgroup(S3, [0, t, 2])
    # a subgroup that is normal but not invariant
    G = corpus_entry("Z2xZ2").group
    a = G.generator_indices[0]
    moving = next(phi for phi in enumerate_automorphisms(G) if phi(a) != a)
    ext = GroupExtension.from_normal_subgroup(G, [0, a])
    with pytest.raises(InputError, match="invariant"):
        induce(ext, moving)


def test_s3_over_a3(S3):
    ext = GroupExtension.from_normal_subgroup(S3, _a3(S3))
    idt = identity_automorphism(S3)
    assert check_class_epimorphism(ext, idt)
    assert tuple(check_bound_nonabelian(ext, idt)) == (3, 4, True)
    assert tuple(check_bound_abelian_quotient(ext, idt)) == (4, 6, True)
    tau = inner_automorphism(S3, S3.index_of_label((2, 1, 3)))
    assert tuple(check_fix_bound(ext, tau)) == (2, 2, True)


def test_z4_over_z2():
    G = corpus_entry("Z4").group
    ext = GroupExtension.from_normal_subgroup(G, [x for x in range(4) if G.power(x, 2) == 0])
    idt = identity_automorphism(G)
    assert tuple(check_bound_nonabelian(ext, idt)) == (2, 6, True)
    assert tuple(check_bound_abelian_quotient(ext, idt)) == (4, 8, True)
    inv = Automorphism(G, [G.inv(x) for x in range(4)])
    assert tuple(check_fix_bound(ext, inv)) == (2, 4, True)


def test_trivial_subgroup_bounds(S3):
    ext = GroupExtension.from_normal_subgroup(S3, [0])
    for phi in enumerate_automorphisms(S3):
        lhs, rhs, holds = check_bound_nonabelian(ext, phi)
        assert lhs == 1 and holds
    G = corpus_entry("Z6").group
    ext = GroupExtension.from_normal_subgroup(G, [0])
    for phi in enumerate_automorphisms(G):
        assert check_bound_abelian_quotient(ext, phi).holds


def test_check_preconditions(S3):
    ext = GroupExtension.from_normal_subgroup(S3, [0])
    with pytest.raises(InputError):
        check_bound_abelian_quotient(ext, identity_automorphism(S3))
    ext = GroupExtension.from_normal_subgroup(S3, range(6))
    with pytest.raises(InputError):
        check_fix_bound(ext, identity_automorphism(S3))


def test_normal_subgroups_known():
    assert [len(H) for H in normal_subgroups(corpus_entry("S4").group)] == [1, 4, 12, 24]
    assert [len(H) for H in normal_subgroups(corpus_entry("Q8").group)] == [1, 2, 4, 4, 4, 8]
    assert [len(H) for H in normal_subgroups(corpus_entry("A4").group)] == [1, 4, 12]


@pytest.mark.parametrize("name", [e.name for e in finite_entries(60)])
def test_all_bounds_on_corpus(name):
    G = corpus_entry(name).group
    for phi in enumerate_automorphisms(G):
        for ext in harvest_extensions(G, phi):
            pair = induce(ext, phi)
            for i, h in enumerate(ext.subgroup_indices):
                assert ext.subgroup_indices[pair.phi_sub(i)] == phi(h)
            assert check_class_epimorphism(ext, phi)
            assert check_bound_nonabelian(ext, phi).holds
            if ext.quotient.is_abelian:
                assert check_bound_abelian_quotient(ext, phi).holds
            if ext.sub.is_abelian:
                assert check_fix_bound(ext, phi).holds
