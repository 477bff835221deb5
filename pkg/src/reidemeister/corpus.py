"""Built-in corpus of small groups with named automorphisms.

Every constructor goes through the validating paths (closure from
permutation generators, full Cayley-table checks, multiplicativity checks),
so building the corpus is itself a test.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import gcd

from .abelian import AbelianEndo, FgAbelianGroup, is_automorphism
from .errors import InputError
from .groups import (
    Automorphism,
    FiniteGroup,
    enumerate_automorphisms,
    from_permutation_generators,
    identity_automorphism,
    inner_automorphism,
    perm_from_cycles,
)


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    group: object  # FiniteGroup or FgAbelianGroup
    notable_automorphisms: tuple = ()  # (name, automorphism) pairs
    notes: str = ""

    @property
    def is_finite_group(self) -> bool:
        return isinstance(self.group, FiniteGroup)

    @property
    def order(self):
        return self.group.order

    def automorphism(self, name: str):
        for n, phi in self.notable_automorphisms:
            if n == name:
                return phi
        raise InputError(f"entry {self.name} has no automorphism named {name!r}", "automorphism")


def _cyclic(n: int) -> FiniteGroup:
    gen = list(range(2, n + 1)) + [1]
    return from_permutation_generators(n, [gen], name=f"Z{n}")


def _perm_group(name, degree, cycle_gens):
    gens = [perm_from_cycles(degree, c) for c in cycle_gens]
    return from_permutation_generators(degree, gens, name=name)


def _quaternion() -> FiniteGroup:
    # units 1, i, j, k with a sign bit; element (s, u) stored as 4*s + u
    unit = {
        (0, 0): (0, 0), (0, 1): (0, 1), (0, 2): (0, 2), (0, 3): (0, 3),
        (1, 0): (0, 1), (1, 1): (1, 0), (1, 2): (0, 3), (1, 3): (1, 2),
        (2, 0): (0, 2), (2, 1): (1, 3), (2, 2): (1, 0), (2, 3): (0, 1),
        (3, 0): (0, 3), (3, 1): (0, 2), (3, 2): (1, 1), (3, 3): (1, 0),
    }

    def mul(a, b):
        sign, u = unit[(a % 4, b % 4)]
        return 4 * ((a // 4 + b // 4 + sign) % 2) + u

    # regular representation: x -> x * g, one-based
    gens = [[mul(x, g) + 1 for x in range(8)] for g in (1, 2)]
    return from_permutation_generators(8, gens, name="Q8")


def _power_map(G: FiniteGroup, k: int) -> Automorphism:
    return Automorphism(G, [G.power(x, k) for x in range(G.order)])


def _finite_notables(G: FiniteGroup) -> tuple:
    """identity, inversion (abelian), a few power maps (cyclic), inner
    automorphisms by the generators, and the first outer automorphism."""
    out = [("identity", identity_automorphism(G))]
    if G.order == 1:
        return tuple(out)
    if G.is_abelian:
        out.append(("inversion", _power_map(G, -1)))
        if len(G.generator_indices) == 1:
            n = G.order
            for k in (2, 3):
                if k < n and gcd(k, n) == 1:
                    out.append((f"times{k}", _power_map(G, k)))
    else:
        for j, g in enumerate(G.generator_indices):
            out.append((f"inner{j}", inner_automorphism(G, g)))
    inner = {inner_automorphism(G, g).map for g in range(G.order)}
    outer = next((phi for phi in enumerate_automorphisms(G) if phi.map not in inner), None)
    if outer is not None:
        out.append(("outer", outer))
    seen = set()
    unique = []
    for name, phi in out:
        if phi.map not in seen:
            seen.add(phi.map)
            unique.append((name, phi))
    return tuple(unique)


def _finite_entry(name, G, notes=""):
    return CorpusEntry(name, G, _finite_notables(G), notes)


def _abelian_entry(name, A, named_blocks, notes=""):
    autos = []
    for aut_name, blocks in named_blocks:
        psi = AbelianEndo.create(A, *blocks)
        if not is_automorphism(A, psi):
            raise InputError(f"{name}/{aut_name} is not an automorphism")
        autos.append((aut_name, psi))
    return CorpusEntry(name, A, tuple(autos), notes)


def _finite_groups() -> list:
    entries = [_finite_entry("trivial", from_permutation_generators(1, [], name="trivial"))]
    for n in range(2, 13):
        entries.append(_finite_entry(f"Z{n}", _cyclic(n)))
    entries += [
        _finite_entry("Z2xZ2", _perm_group("Z2xZ2", 4, [[(1, 2)], [(3, 4)]])),
        _finite_entry("Z2xZ4", _perm_group("Z2xZ4", 6, [[(1, 2)], [(3, 4, 5, 6)]])),
        _finite_entry("S3", _perm_group("S3", 3, [[(1, 2)], [(1, 2, 3)]])),
        _finite_entry("D4", _perm_group("D4", 4, [[(1, 2, 3, 4)], [(1, 3)]]), "dihedral of order 8"),
        _finite_entry("Q8", _quaternion(), "regular representation"),
        _finite_entry("A4", _perm_group("A4", 4, [[(1, 2, 3)], [(1, 2), (3, 4)]])),
        _finite_entry("D6", _perm_group("D6", 6, [[(1, 2, 3, 4, 5, 6)], [(1, 6), (2, 5), (3, 4)]]), "dihedral of order 12"),
        _finite_entry("S4", _perm_group("S4", 4, [[(1, 2)], [(1, 2, 3, 4)]])),
        _finite_entry(
            "Z7:Z3",
            _perm_group("Z7:Z3", 7, [[(1, 2, 3, 4, 5, 6, 7)], [(2, 3, 5), (4, 7, 6)]]),
            "x -> x+1 and x -> 2x on Z/7",
        ),
    ]
    return entries


_ROT = [[0, -1], [1, 0]]
_CAT = [[2, 1], [1, 1]]
_GOLDEN = [[0, 1], [1, 1]]  # companion of x^2 - x - 1
_CAT_COMPANION = [[0, -1], [1, 3]]  # companion of x^2 - 3x + 1
_SHEAR = [[1, 1], [0, 1]]


def _abelian_groups() -> list:
    Z, Z2, Z3 = FgAbelianGroup(1, ()), FgAbelianGroup(2, ()), FgAbelianGroup(3, ())
    ZZ2 = FgAbelianGroup(1, (2,))
    Z2Z4 = FgAbelianGroup(2, (4,))
    Z7 = FgAbelianGroup(0, (7,))
    I2 = [[1, 0], [0, 1]]
    return [
        _abelian_entry("Z", Z, [("identity", ([[1]],)), ("inversion", ([[-1]],))]),
        _abelian_entry(
            "Z^2",
            Z2,
            [
                ("identity", (I2,)),
                ("inversion", ([[-1, 0], [0, -1]],)),
                ("rotation", (_ROT,)),
                ("cat", (_CAT,)),
                ("golden", (_GOLDEN,)),
                ("cat_companion", (_CAT_COMPANION,)),
                ("shear", (_SHEAR,)),
                ("swap", ([[0, 1], [1, 0]],)),
            ],
        ),
        _abelian_entry(
            "Z^3",
            Z3,
            [
                ("identity", ([[1, 0, 0], [0, 1, 0], [0, 0, 1]],)),
                ("inversion", ([[-1, 0, 0], [0, -1, 0], [0, 0, -1]],)),
                ("companion", ([[0, 0, 1], [1, 0, 1], [0, 1, 0]],)),  # x^3 - x - 1
                ("shear", ([[1, 1, 0], [0, 1, 0], [0, 0, -1]],)),
            ],
        ),
        _abelian_entry(
            "Z+Z2",
            ZZ2,
            [
                ("identity", ([[1]], None, [[1]])),
                ("inversion", ([[-1]], None, [[1]])),
                ("mixed", ([[-1]], [[1]], [[1]])),
            ],
        ),
        _abelian_entry(
            "Z^2+Z4",
            Z2Z4,
            [
                ("identity", (I2, None, [[1]])),
                ("inversion", ([[-1, 0], [0, -1]], None, [[3]])),
                ("rotation", (_ROT, None, [[3]])),
                ("rotation_mixed", (_ROT, [[1, 2]], [[3]])),
                ("cat", (_CAT, [[1, 0]], [[1]])),
            ],
        ),
        _abelian_entry(
            "Z/7",
            Z7,
            [("identity", (None, None, [[1]])), ("times2", (None, None, [[2]])), ("times3", (None, None, [[3]]))],
        ),
    ]


@lru_cache(maxsize=1)
def standard_corpus() -> tuple:
    """The corpus, finite permutation groups first, in a fixed order."""
    return tuple(_finite_groups() + _abelian_groups())


def corpus_entry(name: str) -> CorpusEntry:
    for e in standard_corpus():
        if e.name == name:
            return e
    raise InputError(f"unknown corpus entry {name!r}", "group")


def finite_entries(max_order: int | None = None) -> list:
    return [
        e for e in standard_corpus()
        if e.is_finite_group and (max_order is None or e.order <= max_order)
    ]


def abelian_entries() -> list:
    return [e for e in standard_corpus() if not e.is_finite_group]


def finite_abelian_automorphisms(A: FgAbelianGroup) -> list:
    """Every automorphism of a finite ``A`` by brute force over torsion
    matrices (small groups only)."""
    if not A.is_finite:
        raise InputError("group is not finite")
    d = A.invariant_factors
    s = len(d)
    out = []
    for flat in itertools.product(*(range(d[i]) for i in range(s) for _ in range(s))):
        C = [list(flat[i * s:(i + 1) * s]) for i in range(s)]
        try:
            psi = AbelianEndo.create(A, None, None, C)
        except InputError:
            continue
        if is_automorphism(A, psi):
            out.append(psi)
    return out
