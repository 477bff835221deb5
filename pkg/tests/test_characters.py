import pytest

from reidemeister.characters import (
    CharacterTableModP,
    character_table,
    dixon_prime,
    dual_action,
    verify_twisted_burnside,
)
from reidemeister.corpus import corpus_entry, finite_entries
from reidemeister.errors import ConsistencyError, InputError
from reidemeister.groups import (
    Automorphism,
    enumerate_automorphisms,
    from_permutation_generators,
    identity_automorphism,
    inner_automorphism,
    reidemeister_number,
)

FINITE = [e.name for e in finite_entries(60)]


@pytest.fixture(scope="module")
def tables():
    return {name: character_table(corpus_entry(name).group) for name in FINITE}


def test_dixon_prime():
    assert dixon_prime(6, 6) == 7
    assert dixon_prime(24, 12) == 13
    assert dixon_prime(1, 1) == 3
    assert dixon_prime(21, 21) == 43
    with pytest.raises(InputError):
        dixon_prime(24, 12, bound=12)


def test_small_tables(S3):
    triv = from_permutation_generators(1, [])
    T = character_table(triv)
    assert T.degrees == (1,) and T.rows == ((1,),)
    Z3 = corpus_entry("Z3").group
    T = character_table(Z3)
    assert T.prime == 7 and T.degrees == (1, 1, 1)
    for row in T.rows:
        assert all(pow(v, 3, 7) == 1 for v in row)
    assert character_table(S3).degrees == (1, 1, 2)
    assert character_table(corpus_entry("S4").group).degrees == (1, 1, 2, 3, 3)


@pytest.mark.parametrize("name", FINITE)
def test_table_integrity(name, tables):
    G = corpus_entry(name).group
    T = tables[name]
    p = T.prime
    assert (p - 1) % G.exponent == 0 and G.order % p and p > 2 * int(G.order ** 0.5)
    assert sum(d * d for d in T.degrees) == G.order
    assert all(G.order % d == 0 for d in T.degrees)
    assert T.rows_distinct()
    assert T.row_orthogonality_holds(G)
    assert T.column_orthogonality_holds(G)
    assert T.class_count == G.conjugacy_classes.class_count
    assert T.rows[0] == (1,) * T.class_count
    assert [row[0] for row in T.rows] == list(T.degrees)


def test_table_is_deterministic():
    G = corpus_entry("A4").group
    assert character_table(G) == character_table(G)


def test_json_round_trip(tables):
    G = corpus_entry("D4").group
    T = tables["D4"]
    doc = T.to_json(G.content_hash())
    assert CharacterTableModP.from_json(doc, G) == T
    bad = dict(doc, rows=[list(r) for r in doc["rows"]])
    bad["rows"][1][1] = (bad["rows"][1][1] + 1) % T.prime
    with pytest.raises(ConsistencyError):
        CharacterTableModP.from_json(bad, G)
    with pytest.raises(ConsistencyError):
        CharacterTableModP.from_json(dict(doc, group_hash="0" * 64), G)


def test_dual_action_examples(S3, Z5):
    T = character_table(S3)
    d = dual_action(S3, T, identity_automorphism(S3))
    assert d.permutation == (0, 1, 2) and d.fixed_count == 3
    d = dual_action(S3, T, inner_automorphism(S3, 1))
    assert d.permutation == (0, 1, 2)
    sq = Automorphism(Z5, [Z5.power(x, 2) for x in range(5)])
    assert dual_action(Z5, character_table(Z5), sq).fixed_count == 1


def test_burnside_examples(S3, Z5):
    res = verify_twisted_burnside(S3, identity_automorphism(S3))
    assert (res.R, res.S_f, res.equal) == (3, 3, True)
    sq = Automorphism(Z5, [Z5.power(x, 2) for x in range(5)])
    res = verify_twisted_burnside(Z5, sq)
    assert (res.R, res.S_f, res.equal) == (1, 1, True)
    for name in ("Z2xZ4", "Z12"):
        G = corpus_entry(name).group
        res = verify_twisted_burnside(G, identity_automorphism(G))
        assert res.R == res.S_f == G.order


@pytest.mark.parametrize("name", FINITE)
def test_burnside_all_automorphisms(name, tables):
    G = corpus_entry(name).group
    for phi in enumerate_automorphisms(G):
        res = verify_twisted_burnside(G, phi, tables[name])
        assert res.equal, (name, phi)


@pytest.mark.parametrize("name", ["S3", "D4", "Q8", "A4", "Z2xZ4", "Z7:Z3"])
def test_dual_action_is_contravariant(name, tables):
    G = corpus_entry(name).group
    T = tables[name]
    autos = enumerate_automorphisms(G)
    perms = {phi.map: dual_action(G, T, phi).permutation for phi in autos}
    for phi in autos:
        for psi in autos:
            comp = perms[phi.compose(psi).map]
            p, q = perms[phi.map], perms[psi.map]
            # chi o (phi o psi) = (chi o phi) o psi: apply phi-hat, then psi-hat
            assert comp == tuple(q[p[i]] for i in range(len(p)))


@pytest.mark.parametrize("name", ["S3", "D4", "A4", "D6", "Z7:Z3"])
def test_fixed_count_inner_twist_invariant(name, tables):
    G = corpus_entry(name).group
    T = tables[name]
    for phi in enumerate_automorphisms(G):
        S = dual_action(G, T, phi).fixed_count
        assert S == reidemeister_number(G, phi)
        for g in range(G.order):
            assert dual_action(G, T, inner_automorphism(G, g).compose(phi)).fixed_count == S
