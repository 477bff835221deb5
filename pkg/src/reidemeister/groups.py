"""Finite groups as Cayley tables, their automorphisms and twisted classes.

Elements are dense indices ``0 .. n-1`` with the identity at index 0.
Permutation groups are closed breadth-first from the identity, so element
indices are stable for a fixed generator list.

Permutations are one-based image lists on the public surface.  Products
compose left to right: ``(x * y)(i) = y(x(i))``.
"""

from __future__ import annotations

import hashlib
import random
from array import array
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from . import _kernels
from .errors import (
    CapExceededError,
    InputError,
    NotAutomorphismError,
    NotNormalError,
)

DEFAULT_ELEMENT_CAP = 2000
DEFAULT_AUTOMORPHISM_CAP = 200
FULL_ASSOCIATIVITY_LIMIT = 256


def _flat(rows) -> array:
    out = array("i")
    for r in rows:
        out.extend(r)
    return out


def parse_permutation(degree: int, images: Sequence[int], field: str = "generator") -> tuple:
    """Validate a one-based image list and return it zero-based."""
    if not isinstance(images, (list, tuple)):
        raise InputError("permutation must be a list of images", field)
    if len(images) != degree:
        raise InputError(f"expected {degree} images, got {len(images)}", field)
    if any(not isinstance(x, int) or isinstance(x, bool) for x in images):
        raise InputError("permutation images must be integers", field)
    if sorted(images) != list(range(1, degree + 1)):
        raise InputError(f"{list(images)} is not a permutation of 1..{degree}", field)
    return tuple(x - 1 for x in images)


def perm_from_cycles(degree: int, cycles: Iterable[Sequence[int]]) -> list:
    """One-based image list of a product of disjoint cycles, e.g. ``[(1, 2, 3)]``."""
    images = list(range(1, degree + 1))
    for cyc in cycles:
        for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
            images[a - 1] = b
    return images


class FiniteGroup:
    """A finite group given by its Cayley table.

    ``table[a][b]`` is the index of ``a * b``; index 0 must be the identity.
    ``generators`` must generate the group under right multiplication.
    """

    def __init__(
        self,
        table: Sequence[Sequence[int]],
        generators: Sequence[int],
        labels: Sequence | None = None,
        name: str | None = None,
        check: bool = True,
    ):
        n = len(table)
        if n == 0:
            raise InputError("a group needs at least one element")
        self.order = n
        self.identity = 0
        self.table = tuple(tuple(int(x) for x in row) for row in table)
        self.generator_indices = tuple(int(g) for g in generators)
        self.labels = tuple(labels) if labels is not None else None
        self.name = name
        self.flat = _flat(self.table)
        inverse = [-1] * n
        for a in range(n):
            row = self.table[a]
            for b in range(n):
                if row[b] == 0:
                    inverse[a] = b
                    break
        self.inverse = tuple(inverse)
        if check:
            self._validate()

    def _validate(self):
        n = self.order
        t = self.table
        for row in t:
            if len(row) != n or any(not 0 <= x < n for x in row):
                raise InputError("Cayley table is not an n x n table of indices")
        for a in range(n):
            if t[0][a] != a or t[a][0] != a:
                raise InputError("index 0 is not a two-sided identity")
            b = self.inverse[a]
            if b < 0 or t[b][a] != 0:
                raise InputError(f"element {a} has no two-sided inverse")
        for g in self.generator_indices:
            if not 0 <= g < n:
                raise InputError(f"generator index {g} out of range")
        if len(self.closure(self.generator_indices)) != n:
            raise InputError("generators do not generate the table")
        gens = array("i", self.generator_indices)
        if n <= FULL_ASSOCIATIVITY_LIMIT:
            if not _kernels.associative_on(self.flat, n, gens):
                raise InputError("Cayley table is not associative")
        rng = random.Random(n)
        for _ in range(256):
            a, b, c = rng.randrange(n), rng.randrange(n), rng.randrange(n)
            if t[t[a][b]][c] != t[a][t[b][c]]:
                raise InputError("Cayley table is not associative")

    def __repr__(self):
        name = self.name or "FiniteGroup"
        return f"<{name} of order {self.order}>"

    def __len__(self):
        return self.order

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def conj(self, g: int, x: int) -> int:
        """``g x g^-1``."""
        return self.table[self.table[g][x]][self.inverse[g]]

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inverse[a], -k
        out = 0
        while k:
            if k & 1:
                out = self.table[out][a]
            a = self.table[a][a]
            k >>= 1
        return out

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != 0:
            x = self.table[x][a]
            k += 1
        return k

    @cached_property
    def element_orders(self) -> tuple:
        return tuple(self.element_order(a) for a in range(self.order))

    @cached_property
    def exponent(self) -> int:
        from math import lcm

        return lcm(*self.element_orders)

    @cached_property
    def is_abelian(self) -> bool:
        t = self.table
        gens = self.generator_indices
        return all(t[a][b] == t[b][a] for a in gens for b in gens)

    def closure(self, gens: Iterable[int]) -> tuple:
        """Sorted element indices of the subgroup generated by ``gens``."""
        gens = [g for g in dict.fromkeys(gens) if g != 0]
        seen = {0}
        queue = deque([0])
        t = self.table
        while queue:
            x = queue.popleft()
            for g in gens:
                y = t[x][g]
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return tuple(sorted(seen))

    def is_subgroup(self, subset: Iterable[int]) -> bool:
        s = set(subset)
        if 0 not in s:
            return False
        t = self.table
        return all(t[a][b] in s for a in s for b in s)

    def is_normal(self, subset: Iterable[int]) -> bool:
        s = set(subset)
        if not self.is_subgroup(s):
            return False
        return all(self.conj(g, h) in s for g in self.generator_indices for h in s)

    @cached_property
    def bfs_tree(self) -> tuple:
        """``(order, parent, gen)``: a breadth-first spanning tree over the
        generators, so ``x == parent[x] * generators[gen[x]]``."""
        n = self.order
        parent = [-1] * n
        via = [-1] * n
        order = [0]
        seen = [False] * n
        seen[0] = True
        t = self.table
        i = 0
        while i < len(order):
            x = order[i]
            i += 1
            for j, g in enumerate(self.generator_indices):
                y = t[x][g]
                if not seen[y]:
                    seen[y] = True
                    parent[y] = x
                    via[y] = j
                    order.append(y)
        return tuple(order), tuple(parent), tuple(via)

    @cached_property
    def conjugacy_classes(self) -> TwistedPartition:
        ident = array("i", range(self.order))
        class_of, reps = _kernels.twisted_orbits(
            self.flat, self.order, array("i", self.inverse), ident, ident
        )
        return TwistedPartition(tuple(class_of), tuple(reps))

    def content_hash(self) -> str:
        h = hashlib.sha256()
        h.update(repr((self.order, self.generator_indices)).encode())
        h.update(self.flat.tobytes())
        return h.hexdigest()

    def label(self, x: int):
        if self.labels is None:
            return x
        return self.labels[x]

    def index_of_label(self, label) -> int:
        if self.labels is None:
            raise InputError("group has no element labels")
        try:
            return self._label_index[tuple(label)]
        except KeyError:
            raise InputError(f"{list(label)} is not an element of the group") from None

    @cached_property
    def _label_index(self) -> dict:
        return {tuple(lab): i for i, lab in enumerate(self.labels)}


def from_permutation_generators(
    degree: int,
    gens: Sequence[Sequence[int]],
    cap: int = DEFAULT_ELEMENT_CAP,
    name: str | None = None,
) -> FiniteGroup:
    """Close one-based permutation generators breadth-first from the identity.

    Element ``i`` is the i-th element discovered, generators applied in
    input order.  Labels are the one-based image tuples.
    """
    if not isinstance(degree, int) or degree < 1:
        raise InputError("degree must be a positive integer", "degree")
    perms = [parse_permutation(degree, g, f"generators[{i}]") for i, g in enumerate(gens)]
    ident = tuple(range(degree))
    elements = [ident]
    index = {ident: 0}
    rmul = []
    i = 0
    while i < len(elements):
        x = elements[i]
        i += 1
        row = []
        for p in perms:
            y = tuple(p[k] for k in x)
            j = index.get(y)
            if j is None:
                j = index[y] = len(elements)
                elements.append(y)
                if len(elements) > cap:
                    raise CapExceededError(
                        f"closure exceeds the element cap of {cap}"
                    )
            row.append(j)
        rmul.append(row)
    n = len(elements)
    # table[a][b] from the spanning tree: b = parent(b) * gen, so a*b = (a*parent(b))*gen
    parent = [-1] * n
    via = [-1] * n
    for x in range(n):
        for j, y in enumerate(rmul[x]):
            if y != 0 and parent[y] == -1 and y > x:
                parent[y], via[y] = x, j
    table = [[0] * n for _ in range(n)]
    for a in range(n):
        row = table[a]
        row[0] = a
        for b in range(1, n):
            row[b] = rmul[row[parent[b]]][via[b]]
    gen_idx = [rmul[0][j] for j in range(len(perms))]
    labels = [tuple(k + 1 for k in e) for e in elements]
    return FiniteGroup(table, gen_idx, labels=labels, name=name)


class Automorphism:
    """A bijective endomorphism of a :class:`FiniteGroup`, as an index table.

    Multiplicativity is verified in full on construction.
    """

    def __init__(self, group: FiniteGroup, mapping: Sequence[int], check: bool = True):
        self.group = group
        self.map = tuple(int(x) for x in mapping)
        self.flat = array("i", self.map)
        if check:
            n = group.order
            if len(self.map) != n:
                raise NotAutomorphismError(f"map has length {len(self.map)}, group order is {n}")
            if sorted(self.map) != list(range(n)):
                raise NotAutomorphismError("map is not a bijection")
            if self.map[0] != 0:
                raise NotAutomorphismError("map does not fix the identity")
            if not _kernels.is_homomorphism(group.flat, n, group.flat, n, self.flat):
                raise NotAutomorphismError("map is not multiplicative")

    def __call__(self, x: int) -> int:
        return self.map[x]

    def __eq__(self, other):
        return (
            isinstance(other, Automorphism)
            and self.group is other.group
            and self.map == other.map
        )

    def __hash__(self):
        return hash(self.map)

    def __repr__(self):
        return f"Automorphism({list(self.map)})"

    def compose(self, other: Automorphism) -> Automorphism:
        """``self o other``: apply ``other`` first."""
        m = self.map
        return Automorphism(self.group, [m[x] for x in other.map], check=False)

    def inverse(self) -> Automorphism:
        out = [0] * len(self.map)
        for x, y in enumerate(self.map):
            out[y] = x
        return Automorphism(self.group, out, check=False)

    def power(self, k: int) -> Automorphism:
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        result = identity_automorphism(self.group)
        while k:
            if k & 1:
                result = result.compose(base)
            base = base.compose(base)
            k >>= 1
        return result

    @property
    def is_identity(self) -> bool:
        return all(x == i for i, x in enumerate(self.map))

    def generator_images(self) -> list:
        return [self.map[g] for g in self.group.generator_indices]

    @cached_property
    def order(self) -> int:
        """Least ``m >= 1`` with ``phi^m == id``."""
        n = len(self.map)
        cur = list(self.map)
        m = 1
        limit = max(n * n, 1)
        while any(cur[x] != x for x in range(n)):
            cur = [self.map[x] for x in cur]
            m += 1
            if m > limit:
                raise NotAutomorphismError("automorphism order not found within |G|^2 steps")
        return m


def identity_automorphism(G: FiniteGroup) -> Automorphism:
    return Automorphism(G, range(G.order), check=False)


def inner_automorphism(G: FiniteGroup, g: int) -> Automorphism:
    """Conjugation ``x -> g x g^-1``."""
    if not 0 <= g < G.order:
        raise InputError(f"element index {g} out of range")
    return Automorphism(G, [G.conj(g, x) for x in range(G.order)], check=False)


def _extend(G: FiniteGroup, images: Sequence[int], upto: int | None = None):
    """Extend generator images along right multiplication.

    Only the first ``upto`` generators are used.  Returns the partial map as
    a dict on the generated subgroup, or None when some edge of the Cayley
    graph is inconsistent, i.e. the images do not define a homomorphism on
    that subgroup.
    """
    gens = G.generator_indices
    k = len(gens) if upto is None else upto
    t = G.table
    mapping = {0: 0}
    queue = deque([0])
    while queue:
        x = queue.popleft()
        fx = mapping[x]
        for j in range(k):
            y = t[x][gens[j]]
            fy = t[fx][images[j]]
            seen = mapping.get(y)
            if seen is None:
                mapping[y] = fy
                queue.append(y)
            elif seen != fy:
                return None
    return mapping


def automorphism_from_generator_images(G: FiniteGroup, images: Sequence[int]) -> Automorphism:
    """The automorphism sending ``generator_indices[j]`` to ``images[j]``."""
    if len(images) != len(G.generator_indices):
        raise InputError(
            f"expected {len(G.generator_indices)} generator images, got {len(images)}",
            "generator_images",
        )
    for x in images:
        if not 0 <= x < G.order:
            raise InputError(f"image index {x} out of range", "generator_images")
    mapping = _extend(G, images)
    if mapping is None:
        raise NotAutomorphismError("images do not extend to a homomorphism")
    table = [mapping[x] for x in range(G.order)]
    if len(set(table)) != G.order:
        raise NotAutomorphismError("extension is not bijective")
    return Automorphism(G, table)


def automorphism_from_permutation_images(G: FiniteGroup, perms: Sequence[Sequence[int]]) -> Automorphism:
    """Same as :func:`automorphism_from_generator_images` with one-based
    permutations as images (the group must carry permutation labels)."""
    if G.labels is None:
        raise InputError("group has no permutation labels", "generator_images")
    degree = len(G.labels[0])
    idx = []
    for i, p in enumerate(perms):
        parse_permutation(degree, p, f"generator_images[{i}]")
        idx.append(G.index_of_label(p))
    return automorphism_from_generator_images(G, idx)


def enumerate_automorphisms(G: FiniteGroup, cap: int = DEFAULT_AUTOMORPHISM_CAP) -> list:
    """All automorphisms of ``G`` in lexicographic order of generator images.

    Backtracks over generator images of matching element order; each partial
    assignment is extended over the subgroup generated so far and pruned as
    soon as an edge of the Cayley graph disagrees.
    """
    if G.order > cap:
        raise CapExceededError(f"automorphism enumeration capped at order {cap}")
    gens = G.generator_indices
    orders = G.element_orders
    by_order = {}
    for x in range(G.order):
        by_order.setdefault(orders[x], []).append(x)
    out = []

    def search(j, images, partial):
        if j == len(gens):
            if len(partial) == G.order and len(set(partial.values())) == G.order:
                out.append(Automorphism(G, [partial[x] for x in range(G.order)]))
            return
        forced = partial.get(gens[j])
        candidates = [forced] if forced is not None else by_order[orders[gens[j]]]
        for c in candidates:
            images.append(c)
            ext = _extend(G, images, j + 1)
            if ext is not None and len(set(ext.values())) == len(ext):
                search(j + 1, images, ext)
            images.pop()

    search(0, [], {0: 0})
    return out


@dataclass(frozen=True)
class TwistedPartition:
    """Partition of a group into twisted conjugacy classes.

    Class ids are contiguous from 0 and ordered by smallest member;
    ``representatives[i]`` is the smallest member of class ``i``.
    """

    class_of: tuple
    representatives: tuple

    @property
    def class_count(self) -> int:
        return len(self.representatives)

    def classes(self) -> list:
        out = [[] for _ in self.representatives]
        for x, c in enumerate(self.class_of):
            out[c].append(x)
        return out

    def sizes(self) -> list:
        return [len(c) for c in self.classes()]

    def as_sets(self) -> frozenset:
        return frozenset(frozenset(c) for c in self.classes())


def twisted_classes(G: FiniteGroup, phi: Automorphism) -> TwistedPartition:
    """Orbits of ``x -> h x phi(h)^-1`` swept over every ``h`` in ``G``."""
    movers = array("i", range(G.order))
    class_of, reps = _kernels.twisted_orbits(
        G.flat, G.order, array("i", G.inverse), phi.flat, movers
    )
    return TwistedPartition(tuple(class_of), tuple(reps))


def reidemeister_number(G: FiniteGroup, phi: Automorphism) -> int:
    return twisted_classes(G, phi).class_count


def fixed_points(phi: Automorphism) -> list:
    return [x for x, y in enumerate(phi.map) if x == y]


def shift_class_identity_check(G: FiniteGroup, phi: Automorphism, k: int) -> bool:
    """Right-translating each phi-class by ``k`` yields exactly the classes
    of ``tau_{k^-1} o phi``."""
    left = twisted_classes(G, phi)
    right = twisted_classes(G, inner_automorphism(G, G.inv(k)).compose(phi))
    t = G.table
    shifted = frozenset(frozenset(t[x][k] for x in c) for c in left.classes())
    return shifted == right.as_sets()


def derived_subgroup(G: FiniteGroup) -> tuple:
    """``(subgroup, embedding)`` for the commutator subgroup."""
    t, inv = G.table, G.inverse
    comms = {t[t[inv[a]][inv[b]]][t[a][b]] for a in range(G.order) for b in range(G.order)}
    return subgroup(G, G.closure(sorted(comms)))


def center(G: FiniteGroup) -> tuple:
    """``(subgroup, embedding)`` for the center."""
    t = G.table
    gens = G.generator_indices
    z = [x for x in range(G.order) if all(t[x][g] == t[g][x] for g in gens)]
    return subgroup(G, z)


def subgroup(G: FiniteGroup, subset: Iterable[int]) -> tuple:
    """``(H, embedding)`` where ``embedding[i]`` is the index in ``G`` of
    element ``i`` of ``H``; elements are kept in increasing ``G`` order."""
    elems = tuple(sorted(set(subset)))
    if not G.is_subgroup(elems):
        raise InputError("subset is not a subgroup")
    pos = {x: i for i, x in enumerate(elems)}
    t = G.table
    table = [[pos[t[a][b]] for b in elems] for a in elems]
    gens = []
    span = {0}
    for x in elems:
        if x not in span:
            gens.append(x)
            span = set(G.closure(gens))
    labels = [G.labels[x] for x in elems] if G.labels is not None else None
    H = FiniteGroup(table, [pos[g] for g in gens], labels=labels, check=False)
    return H, elems


def quotient(G: FiniteGroup, N: Iterable[int]) -> tuple:
    """``(G/N, projection)``; cosets are numbered by smallest member."""
    N = tuple(sorted(set(N)))
    if not G.is_subgroup(N):
        raise InputError("N is not a subgroup")
    if not G.is_normal(N):
        raise NotNormalError("N is not normal")
    t = G.table
    coset_of = [-1] * G.order
    reps = []
    for x in range(G.order):
        if coset_of[x] == -1:
            for h in N:
                coset_of[t[x][h]] = len(reps)
            reps.append(x)
    table = [[coset_of[t[a][b]] for b in reps] for a in reps]
    gens = list(dict.fromkeys(coset_of[g] for g in G.generator_indices))
    Q = FiniteGroup(table, gens, check=False)
    return Q, tuple(coset_of)
