"""Mapping torus ``G x|_phi Z`` of an automorphism of a finite group.

The torus itself is infinite and is never built.  Elements ``g t^n`` are
handled symbolically, conjugacy in the coset ``G t`` is decided by a finite
search (``n`` only matters modulo the order of ``phi``), and finite
quotients ``G x|_phi Z/(m k)`` are built as ordinary Cayley tables.
"""

from __future__ import annotations

from array import array
from dataclasses import dataclass
from functools import cached_property

from . import _kernels
from .errors import CapExceededError, InputError
from .groups import (
    DEFAULT_ELEMENT_CAP,
    Automorphism,
    FiniteGroup,
    TwistedPartition,
    twisted_classes,
)


@dataclass(frozen=True)
class TorusElement:
    """``g t^n``."""

    g: int
    n: int


class MappingTorus:
    def __init__(self, base: FiniteGroup, phi: Automorphism):
        if phi.group is not base:
            raise InputError("automorphism belongs to a different group")
        self.base = base
        self.phi = phi
        self.phi_order = phi.order
        powers = [tuple(range(base.order))]
        for _ in range(1, self.phi_order):
            powers.append(tuple(phi.map[x] for x in powers[-1]))
        self.phi_powers = tuple(powers)

    def phi_pow(self, k: int, x: int) -> int:
        return self.phi_powers[k % self.phi_order][x]

    def identity(self) -> TorusElement:
        return TorusElement(0, 0)

    def t(self) -> TorusElement:
        return TorusElement(0, 1)

    def multiply(self, a: TorusElement, b: TorusElement) -> TorusElement:
        """``(g1, n1)(g2, n2) = (g1 phi^n1(g2), n1 + n2)``."""
        return TorusElement(self.base.mul(a.g, self.phi_pow(a.n, b.g)), a.n + b.n)

    def inverse(self, a: TorusElement) -> TorusElement:
        return TorusElement(self.phi_pow(-a.n, self.base.inv(a.g)), -a.n)

    def conjugate(self, h: TorusElement, x: TorusElement) -> TorusElement:
        """``h x h^-1``."""
        return self.multiply(self.multiply(h, x), self.inverse(h))

    def coset_conjugate(self, x: int, y: int) -> bool:
        """Are ``x t`` and ``y t`` conjugate in the torus?

        Searches ``g`` in ``G`` and ``0 <= n < ord(phi)`` for
        ``g phi^n(x) = y phi(g)``.
        """
        G, phi = self.base, self.phi.map
        for n in range(self.phi_order):
            xn = self.phi_powers[n][x]
            for g in range(G.order):
                if G.mul(g, xn) == G.mul(y, phi[g]):
                    return True
        return False

    @cached_property
    def coset_partition(self) -> TwistedPartition:
        """Partition of ``G`` by conjugacy of ``x t`` in the torus."""
        G = self.base
        flat_powers = array("i")
        for p in self.phi_powers:
            flat_powers.extend(p)
        labels, ok = _kernels.coset_conjugacy_labels(
            G.flat, G.order, array("i", G.inverse), self.phi.flat, flat_powers, self.phi_order
        )
        if not ok:
            raise InputError("coset conjugacy failed to partition the group")
        reps = []
        seen = set()
        for x, c in enumerate(labels):
            if c not in seen:
                seen.add(c)
                reps.append(x)
        return TwistedPartition(tuple(labels), tuple(reps))


def torus_multiply(T: MappingTorus, a: TorusElement, b: TorusElement) -> TorusElement:
    return T.multiply(a, b)


def coset_conjugate_test(T: MappingTorus, x: int, y: int) -> bool:
    return T.coset_conjugate(x, y)


def verify_torus_bijection(T: MappingTorus) -> bool:
    """Conjugacy classes of the torus inside ``G t`` match the twisted classes
    of ``G`` exactly."""
    return T.coset_partition.as_sets() == twisted_classes(T.base, T.phi).as_sets()


@dataclass(frozen=True)
class TorusQuotient:
    """``K = G x|_phi Z/(m k)`` with element ``(g, n)`` stored at index
    ``n * |G| + g``; the torus maps onto it by ``g t^n -> (g, n mod m k)``."""

    group: FiniteGroup
    embedding: tuple
    modulus: int
    base_order: int

    def project(self, a: TorusElement) -> int:
        return (a.n % self.modulus) * self.base_order + a.g


def finite_torus_quotient(T: MappingTorus, k: int = 1, cap: int = DEFAULT_ELEMENT_CAP) -> TorusQuotient:
    if not isinstance(k, int) or k < 1:
        raise InputError("multiple must be a positive integer", "k")
    G = T.base
    n, mk = G.order, T.phi_order * k
    if n * mk > cap:
        raise CapExceededError(f"quotient of order {n * mk} exceeds the element cap of {cap}")
    size = n * mk
    table = [[0] * size for _ in range(size)]
    for n1 in range(mk):
        pw = T.phi_powers[n1 % T.phi_order]
        for g1 in range(n):
            row = table[n1 * n + g1]
            grow = G.table[g1]
            for n2 in range(mk):
                off = ((n1 + n2) % mk) * n
                for g2 in range(n):
                    row[n2 * n + g2] = off + grow[pw[g2]]
    gens = list(G.generator_indices) + ([n] if mk > 1 else [])
    K = FiniteGroup(table, gens, name=f"torus quotient Z/{mk}")
    return TorusQuotient(K, tuple(range(n)), mk, n)


@dataclass(frozen=True)
class SeparationReport:
    holds: bool
    separated_pairs: int
    total_pairs: int


def separation_report(T: MappingTorus, k: int = 1, cap: int = DEFAULT_ELEMENT_CAP) -> SeparationReport:
    """For each pair of distinct classes in ``G t`` whose images are not
    conjugate in the quotient, check that the restriction of the quotient
    map to ``G`` separates the corresponding twisted classes."""
    Q = finite_torus_quotient(T, k, cap)
    K = Q.group
    Kclasses = K.conjugacy_classes.class_of
    reps = twisted_classes(T.base, T.phi).representatives
    F_t = Q.project(T.t())
    t_inv = K.inv(F_t)
    image = Q.embedding
    # twisting on the image of G by conjugation with F(t)
    phi_bar = {x: K.mul(K.mul(F_t, x), t_inv) for x in image}
    holds = True
    separated = 0
    total = 0
    for i, x in enumerate(reps):
        for y in reps[i + 1:]:
            total += 1
            xt = Q.project(TorusElement(x, 1))
            yt = Q.project(TorusElement(y, 1))
            if Kclasses[xt] == Kclasses[yt]:
                continue
            separated += 1
            Fx, Fy = image[x], image[y]
            for h in image:
                if K.mul(K.mul(h, Fx), K.inv(phi_bar[h])) == Fy:
                    holds = False
                    break
    return SeparationReport(holds, separated, total)


def restriction_separates(T: MappingTorus, k: int = 1, cap: int = DEFAULT_ELEMENT_CAP) -> bool:
    return separation_report(T, k, cap).holds
