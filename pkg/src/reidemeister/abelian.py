"""Finitely generated abelian groups ``Z^r + Z/d1 + ... + Z/ds`` and their
automorphisms.

Twisted classes of an automorphism ``psi`` of an abelian group are the
cosets of ``Im(psi - Id)``, so everything reduces to integer lattices:
the image of ``psi - Id`` is stacked with the torsion relations and handed
to the Smith/Hermite routines in :mod:`reidemeister.linalg`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .errors import InfiniteResultError, InputError, NotAutomorphismError
from .linalg import (
    INFINITE,
    IntMatrix,
    cokernel_order,
    determinant,
    integer_kernel,
    hermite_normal_form,
    is_finite,
    lattice_member,
    smith_normal_form,
    stack_relations,
)


@dataclass(frozen=True)
class FgAbelianGroup:
    free_rank: int
    invariant_factors: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "invariant_factors", tuple(self.invariant_factors))
        if not isinstance(self.free_rank, int) or self.free_rank < 0:
            raise InputError("free rank must be a non-negative integer", "free_rank")
        prev = 1
        for d in self.invariant_factors:
            if not isinstance(d, int) or d < 2:
                raise InputError(f"invariant factor {d!r} must be an integer >= 2", "torsion")
            if d % prev:
                raise InputError(
                    f"invariant factors {list(self.invariant_factors)} violate the divisibility chain",
                    "torsion",
                )
            prev = d

    @classmethod
    def normalized(cls, free_rank: int, orders: Sequence[int] = ()) -> FgAbelianGroup:
        """``Z^free_rank + Z/o1 + ...`` for arbitrary positive ``orders``,
        rewritten in invariant-factor form."""
        if any(not isinstance(o, int) or o < 1 for o in orders):
            raise InputError("cyclic orders must be positive integers", "torsion")
        if not orders:
            return cls(free_rank, ())
        snf = smith_normal_form(IntMatrix.diagonal(list(orders)))
        return cls(free_rank, tuple(d for d in snf.invariant_factors if d > 1))

    @property
    def torsion_rank(self) -> int:
        return len(self.invariant_factors)

    @property
    def rank(self) -> int:
        """Number of coordinates of an element."""
        return self.free_rank + len(self.invariant_factors)

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def order(self):
        if self.free_rank:
            return INFINITE
        out = 1
        for d in self.invariant_factors:
            out *= d
        return out

    def element(self, free=(), torsion=()) -> AbelianElement:
        free, torsion = tuple(int(x) for x in free), tuple(int(x) for x in torsion)
        if len(free) != self.free_rank or len(torsion) != self.torsion_rank:
            raise InputError(
                f"element shape ({len(free)}, {len(torsion)}) does not match "
                f"group shape ({self.free_rank}, {self.torsion_rank})"
            )
        return AbelianElement(free, tuple(t % d for t, d in zip(torsion, self.invariant_factors)))

    def from_vector(self, v: Sequence[int]) -> AbelianElement:
        if len(v) != self.rank:
            raise InputError(f"vector of length {len(v)} for a group of rank {self.rank}")
        r = self.free_rank
        return self.element(v[:r], v[r:])

    def zero(self) -> AbelianElement:
        return self.element((0,) * self.free_rank, (0,) * self.torsion_rank)

    def basis(self) -> list:
        """Standard generators ``e_1 .. e_rank``."""
        return [self.from_vector([int(i == j) for j in range(self.rank)]) for i in range(self.rank)]

    def elements(self) -> list:
        if not self.is_finite:
            raise InfiniteResultError("cannot list the elements of an infinite group")
        return [AbelianElement((), t) for t in itertools.product(*(range(d) for d in self.invariant_factors))]

    def add(self, x: AbelianElement, y: AbelianElement) -> AbelianElement:
        return self.from_vector([a + b for a, b in zip(x.vector, y.vector)])

    def neg(self, x: AbelianElement) -> AbelianElement:
        return self.from_vector([-a for a in x.vector])

    def sub(self, x: AbelianElement, y: AbelianElement) -> AbelianElement:
        return self.from_vector([a - b for a, b in zip(x.vector, y.vector)])

    def check_element(self, x: AbelianElement):
        if len(x.free) != self.free_rank or len(x.torsion) != self.torsion_rank:
            raise InputError("element shape does not match the group")

    def __str__(self):
        parts = [f"Z^{self.free_rank}"] if self.free_rank > 1 else ["Z"] * self.free_rank
        parts += [f"Z/{d}" for d in self.invariant_factors]
        return " + ".join(parts) or "0"


@dataclass(frozen=True)
class AbelianElement:
    free: tuple
    torsion: tuple

    @property
    def vector(self) -> tuple:
        return self.free + self.torsion


def _block(M, rows, cols, name):
    if M is None:
        return IntMatrix.zeros(rows, cols)
    M = M if isinstance(M, IntMatrix) else IntMatrix.from_rows(M, cols=cols)
    if M.shape != (rows, cols):
        raise InputError(f"expected a {rows}x{cols} block, got {M.rows}x{M.cols}", name)
    return M


@dataclass(frozen=True)
class AbelianEndo:
    """Endomorphism in block form ``[[F, 0], [B, C]]``.

    ``F`` acts on the free part, ``B`` sends free to torsion and ``C`` acts
    on torsion; torsion never maps to the free part.  Rows of ``B`` and
    ``C`` are reduced modulo the matching invariant factor.  Omitted blocks
    in :meth:`create` are zero.
    """

    group: FgAbelianGroup
    F: IntMatrix
    B: IntMatrix
    C: IntMatrix

    @classmethod
    def create(cls, A: FgAbelianGroup, F=None, B=None, C=None) -> AbelianEndo:
        r, s = A.free_rank, A.torsion_rank
        F, B, C = _block(F, r, r, "F"), _block(B, s, r, "B"), _block(C, s, s, "C")
        d = A.invariant_factors
        B = IntMatrix.from_rows([[x % d[i] for x in B.row(i)] for i in range(s)], cols=r)
        C = IntMatrix.from_rows([[x % d[i] for x in C.row(i)] for i in range(s)], cols=s)
        for i in range(s):
            for j in range(s):
                if (C[i, j] * d[j]) % d[i]:
                    raise InputError(
                        f"C[{i}][{j}]={C[i, j]} is not well defined: C*d_j must vanish mod d_i",
                        "C",
                    )
        return cls(A, F, B, C)

    @classmethod
    def identity(cls, A: FgAbelianGroup) -> AbelianEndo:
        return cls.create(A, IntMatrix.identity(A.free_rank), None, IntMatrix.identity(A.torsion_rank))

    @classmethod
    def scalar(cls, A: FgAbelianGroup, k: int) -> AbelianEndo:
        """``x -> k x``; ``k = -1`` is inversion."""
        r, s = A.free_rank, A.torsion_rank
        return cls.create(A, IntMatrix.diagonal([k] * r), None, IntMatrix.diagonal([k] * s))

    def matrix(self) -> IntMatrix:
        """Full ``rank x rank`` integer lift ``[[F, 0], [B, C]]``."""
        r, s = self.group.free_rank, self.group.torsion_rank
        rows = [self.F.row(i) + [0] * s for i in range(r)]
        rows += [self.B.row(i) + self.C.row(i) for i in range(s)]
        return IntMatrix.from_rows(rows, cols=r + s)

    def minus_identity(self) -> IntMatrix:
        return self.matrix() - IntMatrix.identity(self.group.rank)

    def __call__(self, x: AbelianElement) -> AbelianElement:
        self.group.check_element(x)
        return self.group.from_vector(self.matrix().apply(list(x.vector)))

    def compose(self, other: AbelianEndo) -> AbelianEndo:
        """``self o other``."""
        M = self.matrix() @ other.matrix()
        r = self.group.free_rank
        rows = M.tolist()
        return AbelianEndo.create(
            self.group,
            [row[:r] for row in rows[:r]],
            [row[:r] for row in rows[r:]],
            [row[r:] for row in rows[r:]],
        )

    def power(self, k: int) -> AbelianEndo:
        if k < 0:
            raise InputError("negative powers are not supported")
        result = AbelianEndo.identity(self.group)
        base = self
        while k:
            if k & 1:
                result = result.compose(base)
            base = base.compose(base)
            k >>= 1
        return result

    def to_json(self) -> dict:
        return {"F": self.F.tolist(), "B": self.B.tolist(), "C": self.C.tolist()}


def _check_shape(A: FgAbelianGroup, psi: AbelianEndo):
    if psi.group != A:
        raise InputError(f"endomorphism is defined on {psi.group}, not on {A}")


def is_automorphism(A: FgAbelianGroup, psi: AbelianEndo) -> bool:
    """``|det F| = 1`` and the torsion map is a bijection of the torsion subgroup."""
    _check_shape(A, psi)
    if abs(determinant(psi.F)) != 1:
        return False
    d = A.invariant_factors
    C = psi.C.tolist()
    seen = set()
    for t in itertools.product(*(range(x) for x in d)):
        seen.add(tuple(sum(C[i][j] * t[j] for j in range(len(d))) % d[i] for i in range(len(d))))
    total = 1
    for x in d:
        total *= x
    return len(seen) == total


def _require_automorphism(A, psi):
    if not is_automorphism(A, psi):
        raise NotAutomorphismError("endomorphism is not bijective")


def twisted_lattice(A: FgAbelianGroup, psi: AbelianEndo) -> IntMatrix:
    """Columns span ``Im(psi - Id)`` plus the torsion relations, in ``Z^rank``."""
    return stack_relations(psi.minus_identity(), A.invariant_factors)


def reidemeister_number(A: FgAbelianGroup, psi: AbelianEndo):
    """``#Coker(psi - Id)``, possibly ``INFINITE``."""
    _check_shape(A, psi)
    _require_automorphism(A, psi)
    return cokernel_order(psi.minus_identity(), A.invariant_factors)


def fixed_subgroup_size(A: FgAbelianGroup, psi: AbelianEndo):
    """Order of ``ker(psi - Id)``, possibly ``INFINITE``.

    Lifts the kernel to ``K = {x : (psi - Id) x in L}`` where ``L`` is the
    relation lattice, and returns ``[K : L]``.
    """
    _check_shape(A, psi)
    _require_automorphism(A, psi)
    n, s = A.rank, A.torsion_rank
    M = psi.minus_identity()
    # (x, y) with M x - D y = 0
    D = stack_relations(IntMatrix.zeros(n, 0), A.invariant_factors)
    N = M.hstack(IntMatrix.from_rows([[-v for v in D.row(i)] for i in range(n)], cols=s))
    gens = [v[:n] for v in integer_kernel(N)]
    if not gens:
        return 1
    H = hermite_normal_form(IntMatrix.from_rows(gens, cols=n).transpose())
    if H.cols > s:
        return INFINITE
    # K sits inside the torsion coordinates with the same rank as L
    r = A.free_rank
    sub = IntMatrix.from_rows([H.row(i) for i in range(r, n)], cols=H.cols)
    vol_k = abs(determinant(sub))
    vol_l = 1
    for d in A.invariant_factors:
        vol_l *= d
    return vol_l // vol_k


def same_twisted_class(A: FgAbelianGroup, psi: AbelianEndo, x: AbelianElement, y: AbelianElement) -> bool:
    """``x - y`` lies in ``Im(psi - Id)``."""
    _check_shape(A, psi)
    A.check_element(x)
    A.check_element(y)
    diff = [a - b for a, b in zip(x.vector, y.vector)]
    return lattice_member(twisted_lattice(A, psi), diff)


def _cokernel(A: FgAbelianGroup, psi: AbelianEndo):
    _check_shape(A, psi)
    _require_automorphism(A, psi)
    N = twisted_lattice(A, psi)
    snf = smith_normal_form(N)
    if snf.rank < N.rows:
        raise InfiniteResultError("Reidemeister number is infinite")
    positions = [i for i in range(N.rows) if snf.S[i, i] > 1]
    return snf, positions


def class_representatives(A: FgAbelianGroup, psi: AbelianEndo) -> list:
    """One element per twisted class.

    In Smith coordinates ``y = U x`` a class is a residue tuple modulo the
    invariant factors of the cokernel; tuples are listed lexicographically
    and pulled back through ``U^-1``.
    """
    snf, positions = _cokernel(A, psi)
    n = A.rank
    out = []
    for residues in itertools.product(*(range(snf.S[i, i]) for i in positions)):
        y = [0] * n
        for i, r in zip(positions, residues):
            y[i] = r
        out.append(A.from_vector(snf.U_inv.apply(y)))
    return out


@dataclass(frozen=True)
class AbelianHom:
    """Homomorphism between f.g. abelian groups given by an integer matrix
    on coordinate vectors."""

    source: FgAbelianGroup
    target: FgAbelianGroup
    matrix: IntMatrix

    def __call__(self, x: AbelianElement) -> AbelianElement:
        self.source.check_element(x)
        return self.target.from_vector(self.matrix.apply(list(x.vector)))


@dataclass(frozen=True)
class RPWitness:
    """Finite quotient ``F: A -> K`` with ``F psi = phi_K F`` whose fibres
    over single points are exactly the twisted classes."""

    source: FgAbelianGroup
    psi: AbelianEndo
    K: FgAbelianGroup
    projection: AbelianHom
    phi_K: AbelianEndo

    def verify(self) -> bool:
        A, psi, F = self.source, self.psi, self.projection
        if self.K.order != reidemeister_number(A, psi):
            return False
        # F is well defined on the torsion relations
        r = A.free_rank
        for j, d in enumerate(A.invariant_factors):
            v = [0] * A.rank
            v[r + j] = d
            if F.target.from_vector(F.matrix.apply(v)) != self.K.zero():
                return False
        for e in A.basis():
            if F(psi(e)) != self.phi_K(F(e)):
                return False
        images = {F(x) for x in class_representatives(A, psi)}
        if len(images) != self.K.order:
            return False
        # F kills Im(psi - Id), so it is constant on classes; with distinct
        # images for all R classes every class is then a whole fibre
        L = psi.minus_identity()
        for j in range(L.cols):
            if F.target.from_vector(F.matrix.apply(L.column(j))) != self.K.zero():
                return False
        return True


def rp_witness(A: FgAbelianGroup, psi: AbelianEndo) -> RPWitness:
    """``K = A / Im(psi - Id)`` with the induced map, which is the identity."""
    snf, positions = _cokernel(A, psi)
    K = FgAbelianGroup(0, tuple(snf.S[i, i] for i in positions))
    proj = AbelianHom(A, K, IntMatrix.from_rows([snf.U.row(i) for i in positions], cols=A.rank))
    cols = []
    for i in positions:
        e = [0] * A.rank
        e[i] = 1
        pre = A.from_vector(snf.U_inv.apply(e))
        cols.append(list(proj(psi(pre)).vector))
    k = len(positions)
    C = [[cols[j][i] for j in range(k)] for i in range(k)]
    phi_K = AbelianEndo.create(K, None, None, C)
    return RPWitness(A, psi, K, proj, phi_K)


@dataclass(frozen=True)
class AbelianPresentation:
    """Isomorphism between a finite abelian :class:`FiniteGroup` and an
    :class:`FgAbelianGroup` in invariant-factor form."""

    group: FgAbelianGroup
    to_element: dict  # finite-group index -> AbelianElement
    from_element: dict  # AbelianElement -> finite-group index


def present_finite_abelian(G) -> AbelianPresentation:
    """Invariant-factor decomposition of a finite abelian Cayley-table group.

    Relations among the generators are read off by enumerating exponent
    vectors in the box of generator orders; the Smith form of the relation
    matrix then gives the decomposition and the change of coordinates.
    """
    if not G.is_abelian:
        raise InputError("group is not abelian")
    gens = list(G.generator_indices)
    k = len(gens)
    orders = [G.element_order(g) for g in gens]
    relations = []
    box_vec = {}
    for c in itertools.product(*(range(o) for o in orders)):
        x = 0
        for g, e in zip(gens, c):
            x = G.mul(x, G.power(g, e))
        if x == 0 and any(c):
            relations.append(list(c))
        box_vec.setdefault(x, list(c))
    for j, o in enumerate(orders):
        relations.append([o if i == j else 0 for i in range(k)])
    if k == 0:
        A = FgAbelianGroup(0, ())
        return AbelianPresentation(A, {0: A.zero()}, {A.zero(): 0})
    R = IntMatrix.from_rows(relations, cols=k).transpose()
    snf = smith_normal_form(R)
    positions = [i for i in range(k) if snf.S[i, i] > 1]
    A = FgAbelianGroup(0, tuple(snf.S[i, i] for i in positions))
    to_el = {}
    for x, c in box_vec.items():
        y = snf.U.apply(c)
        to_el[x] = A.element((), [y[i] for i in positions])
    from_el = {v: x for x, v in to_el.items()}
    if len(from_el) != G.order or A.order != G.order:
        raise InputError("abelian presentation failed to biject")
    return AbelianPresentation(A, to_el, from_el)


def endo_from_automorphism(pres: AbelianPresentation, phi) -> AbelianEndo:
    """Transport a finite-group automorphism through ``pres``."""
    A = pres.group
    cols = []
    for e in A.basis():
        x = pres.from_element[e]
        cols.append(list(pres.to_element[phi(x)].vector))
    s = A.torsion_rank
    C = [[cols[j][i] for j in range(s)] for i in range(s)]
    return AbelianEndo.create(A, None, None, C)


def parse_group_spec(doc: dict) -> FgAbelianGroup:
    """``{"kind": "fg_abelian", "free_rank": r, "torsion": [d1, ...]}``."""
    r = doc.get("free_rank", 0)
    if not isinstance(r, int) or isinstance(r, bool) or r < 0:
        raise InputError("must be a non-negative integer", "free_rank")
    torsion = doc.get("torsion", [])
    if not isinstance(torsion, list):
        raise InputError("must be a list of integers", "torsion")
    return FgAbelianGroup(r, tuple(torsion))


def parse_endo_spec(A: FgAbelianGroup, doc: dict | None) -> AbelianEndo:
    """``{"F": [[..]], "B": [[..]], "C": [[..]]}``; omitted blocks are zero,
    and a missing document means the identity."""
    if doc is None:
        return AbelianEndo.identity(A)
    blocks = {}
    for key, shape in (("F", (A.free_rank, A.free_rank)), ("B", (A.torsion_rank, A.free_rank)), ("C", (A.torsion_rank, A.torsion_rank))):
        val = doc.get(key)
        if val is None:
            blocks[key] = IntMatrix.zeros(*shape)
            continue
        if not isinstance(val, list) or any(not isinstance(row, list) for row in val):
            raise InputError("must be a list of rows", key)
        if len(val) != shape[0] or any(len(row) != shape[1] for row in val):
            raise InputError(f"expected shape {shape[0]}x{shape[1]}", key)
        blocks[key] = IntMatrix.from_rows(val, cols=shape[1])
    return AbelianEndo.create(A, blocks["F"], blocks["B"], blocks["C"])


__all__ = [
    "FgAbelianGroup",
    "AbelianElement",
    "AbelianEndo",
    "AbelianHom",
    "RPWitness",
    "AbelianPresentation",
    "is_automorphism",
    "reidemeister_number",
    "fixed_subgroup_size",
    "same_twisted_class",
    "class_representatives",
    "rp_witness",
    "twisted_lattice",
    "present_finite_abelian",
    "endo_from_automorphism",
    "parse_group_spec",
    "parse_endo_spec",
    "is_finite",
]
