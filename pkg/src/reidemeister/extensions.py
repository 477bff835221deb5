"""Automorphism-invariant extensions ``H -> G -> G/H`` and the inequalities
relating Reidemeister numbers and fixed points of the three maps."""

from __future__ import annotations

import itertools
import weakref
from dataclasses import dataclass
from typing import Iterable, NamedTuple

from .errors import ConsistencyError, InputError, NotNormalError
from .groups import (
    Automorphism,
    FiniteGroup,
    fixed_points,
    inner_automorphism,
    quotient,
    subgroup,
    twisted_classes,
)


@dataclass(frozen=True)
class GroupExtension:
    total: FiniteGroup
    subgroup_indices: tuple
    sub: FiniteGroup  # H as a group in its own right
    quotient: FiniteGroup
    projection: tuple

    @classmethod
    def from_normal_subgroup(cls, G: FiniteGroup, H: Iterable[int]) -> GroupExtension:
        H = tuple(sorted(set(H)))
        if not G.is_subgroup(H):
            raise InputError("not a subgroup", "subgroup")
        if not G.is_normal(H):
            raise NotNormalError("subgroup is not normal", "subgroup")
        sub, _ = subgroup(G, H)
        Q, proj = quotient(G, H)
        return cls(G, H, sub, Q, proj)


@dataclass(frozen=True)
class InducedPair:
    phi_sub: Automorphism
    phi_quot: Automorphism


class BoundCheck(NamedTuple):
    lhs: int
    rhs: int
    holds: bool


def induce(ext: GroupExtension, phi: Automorphism) -> InducedPair:
    """Restriction of ``phi`` to ``H`` and the induced map on ``G/H``; both
    commuting squares are checked element by element."""
    G, H = ext.total, ext.subgroup_indices
    pos = {x: i for i, x in enumerate(H)}
    if any(phi(h) not in pos for h in H):
        raise InputError("subgroup is not invariant under the automorphism", "subgroup")
    sub_map = [pos[phi(h)] for h in H]
    Q, proj = ext.quotient, ext.projection
    quot_map = [-1] * Q.order
    for x in range(G.order):
        q, fq = proj[x], proj[phi(x)]
        if quot_map[q] == -1:
            quot_map[q] = fq
        elif quot_map[q] != fq:
            raise InputError("automorphism does not descend to the quotient")
    phi_sub = Automorphism(ext.sub, sub_map)
    phi_quot = Automorphism(Q, quot_map)
    if not all(H[phi_sub(i)] == phi(h) for i, h in enumerate(H)):
        raise ConsistencyError("restriction square does not commute")
    if not all(proj[phi(x)] == phi_quot(proj[x]) for x in range(G.order)):
        raise ConsistencyError("quotient square does not commute")
    return InducedPair(phi_sub, phi_quot)


def check_class_epimorphism(ext: GroupExtension, phi: Automorphism) -> bool:
    """Every twisted class of ``G`` lands inside one class of ``G/H`` and
    together they cover every class of ``G/H``."""
    pair = induce(ext, phi)
    big = twisted_classes(ext.total, phi)
    small = twisted_classes(ext.quotient, pair.phi_quot)
    hit = set()
    for cls in big.classes():
        targets = {small.class_of[ext.projection[x]] for x in cls}
        if len(targets) != 1:
            return False
        hit |= targets
    return len(hit) == small.class_count


def check_bound_nonabelian(ext: GroupExtension, phi: Automorphism) -> BoundCheck:
    """``R(phi') <= k (R(phi) - R(phi_bar) + 1)`` with ``k = #Fix(phi_bar)``."""
    pair = induce(ext, phi)
    k = len(fixed_points(pair.phi_quot))
    lhs = twisted_classes(ext.sub, pair.phi_sub).class_count
    R = twisted_classes(ext.total, phi).class_count
    Rq = twisted_classes(ext.quotient, pair.phi_quot).class_count
    rhs = k * (R - Rq + 1)
    return BoundCheck(lhs, rhs, lhs <= rhs)


def check_bound_abelian_quotient(ext: GroupExtension, phi: Automorphism) -> BoundCheck:
    """``sum_i R(tau_{g_i} phi') <= k R(phi)`` for an abelian quotient, with
    ``g_i`` the smallest preimage of each quotient class representative."""
    if not ext.quotient.is_abelian:
        raise InputError("quotient is not abelian")
    pair = induce(ext, phi)
    G, H, sub = ext.total, ext.subgroup_indices, ext.sub
    pos = {x: i for i, x in enumerate(H)}
    k = len(fixed_points(pair.phi_quot))
    R = twisted_classes(G, phi).class_count
    small = twisted_classes(ext.quotient, pair.phi_quot)
    lhs = 0
    for q in small.representatives:
        g = next(x for x in range(G.order) if ext.projection[x] == q)
        tau = inner_automorphism(G, g)
        twisted = Automorphism(sub, [pos[tau(phi(h))] for h in H])
        lhs += twisted_classes(sub, twisted).class_count
    rhs = k * R
    return BoundCheck(lhs, rhs, lhs <= rhs)


def check_fix_bound(ext: GroupExtension, phi: Automorphism) -> BoundCheck:
    """``#Fix(phi) <= #Fix(phi') #Fix(phi_bar)`` for abelian ``H``."""
    if not ext.sub.is_abelian:
        raise InputError("subgroup is not abelian")
    pair = induce(ext, phi)
    lhs = len(fixed_points(phi))
    rhs = len(fixed_points(pair.phi_sub)) * len(fixed_points(pair.phi_quot))
    return BoundCheck(lhs, rhs, lhs <= rhs)


_NORMAL_CACHE: weakref.WeakKeyDictionary = weakref.WeakKeyDictionary()


def normal_subgroups(G: FiniteGroup, max_generators: int = 3) -> list:
    """Normal subgroups generated by at most ``max_generators`` elements,
    sorted by (order, elements).  Not a full lattice, just a rich harvest."""
    cached = _NORMAL_CACHE.setdefault(G, {})
    if max_generators in cached:
        return cached[max_generators]
    elems = range(G.order)
    subgroups = {}
    for size in range(0, max_generators + 1):
        for gens in itertools.combinations(elems, size):
            H = G.closure(gens)
            if H in subgroups:
                continue
            subgroups[H] = G.is_normal(H)
    found = [H for H, normal in subgroups.items() if normal]
    found.sort(key=lambda H: (len(H), H))
    cached[max_generators] = found
    return found


def invariant_normal_subgroups(G: FiniteGroup, phi: Automorphism, max_generators: int = 3) -> list:
    out = []
    for H in normal_subgroups(G, max_generators):
        members = set(H)
        if all(phi(h) in members for h in H):
            out.append(H)
    return out


def harvest_extensions(G: FiniteGroup, phi: Automorphism, max_generators: int = 3) -> list:
    return [
        GroupExtension.from_normal_subgroup(G, H)
        for H in invariant_normal_subgroups(G, phi, max_generators)
    ]
