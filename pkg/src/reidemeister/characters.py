"""Character tables over a prime field, and the action of an automorphism on
irreducible characters.

The table is computed with Dixon's method: central characters are the
common eigenvectors of the class-multiplication matrices, found over
``GF(p)`` by splitting eigenspaces with random combinations of those
matrices.  ``p`` is chosen so that every character value lives in
``GF(p)`` and degrees can be recovered from their squares.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import isqrt

from .errors import ConsistencyError, InputError
from .groups import Automorphism, FiniteGroup, twisted_classes

DEFAULT_PRIME_BOUND = 10**6
DEFAULT_SEED = 20071


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def dixon_prime(order: int, exponent: int, bound: int = DEFAULT_PRIME_BOUND) -> int:
    """Smallest prime ``p = 1 (mod exponent)`` with ``p > 2 * isqrt(order)``
    that does not divide ``order``."""
    p = 2 * isqrt(order) + 1
    while p <= bound:
        if (p - 1) % exponent == 0 and order % p and _is_prime(p):
            return p
        p += 1
    raise InputError(f"no suitable prime below {bound} for order {order}")


def _rref(rows, p):
    """Reduced row echelon form mod p; returns ``(basis_rows, pivots)``."""
    rows = [[x % p for x in r] for r in rows]
    pivots = []
    ncols = len(rows[0]) if rows else 0
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], -1, p)
        rows[r] = [x * inv % p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def _nullspace(M, p):
    """Basis of ``{v : M v = 0}`` over GF(p)."""
    ncols = len(M[0]) if M else 0
    R, pivots = _rref(M, p)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for row, c in zip(R, pivots):
            v[c] = -row[f] % p
        basis.append(v)
    return basis


def _split(space, M, p):
    """Split ``space`` (rref rows, invariant under ``M``) into eigenspaces of ``M``."""
    basis, pivots = space
    d = len(basis)
    k = len(basis[0])
    # matrix of M restricted to the span, in the coordinates given by the pivots
    images = [[sum(M[i][j] * b[j] for j in range(k)) % p for i in range(k)] for b in basis]
    R = [[images[i][pivots[j]] for i in range(d)] for j in range(d)]
    pieces = []
    found = 0
    for lam in range(p):
        shifted = [[(R[i][j] - (lam if i == j else 0)) % p for j in range(d)] for i in range(d)]
        null = _nullspace(shifted, p)
        if not null:
            continue
        vecs = [[sum(u[i] * basis[i][c] for i in range(d)) % p for c in range(k)] for u in null]
        pieces.append(_rref(vecs, p))
        found += len(null)
        if found == d:
            break
    if found != d:
        raise ConsistencyError("class-matrix combination is not diagonalisable over GF(p)")
    return pieces


@dataclass(frozen=True)
class CharacterTableModP:
    """Irreducible characters reduced mod ``prime``.

    Rows are characters (sorted by degree, then values; the trivial
    character first), columns are conjugacy classes ordered by smallest
    element, so column 0 is the identity class.
    """

    prime: int
    degrees: tuple
    rows: tuple
    class_sizes: tuple
    class_representatives: tuple

    @property
    def class_count(self) -> int:
        return len(self.class_sizes)

    @property
    def order(self) -> int:
        return sum(self.class_sizes)

    def inverse_classes(self, G: FiniteGroup) -> list:
        cls = G.conjugacy_classes.class_of
        return [cls[G.inv(r)] for r in self.class_representatives]

    def row_orthogonality_holds(self, G: FiniteGroup) -> bool:
        p, k = self.prime, self.class_count
        inv = self.inverse_classes(G)
        n_inv = pow(self.order, -1, p)
        for i in range(k):
            for j in range(k):
                s = sum(self.class_sizes[c] * self.rows[i][c] * self.rows[j][inv[c]] for c in range(k))
                if s * n_inv % p != int(i == j):
                    return False
        return True

    def column_orthogonality_holds(self, G: FiniteGroup) -> bool:
        p, k = self.prime, self.class_count
        inv = self.inverse_classes(G)
        for a in range(k):
            for b in range(k):
                s = sum(self.rows[i][a] * self.rows[i][inv[b]] for i in range(k)) % p
                expected = (self.order // self.class_sizes[a]) % p if a == b else 0
                if s != expected:
                    return False
        return True

    def rows_distinct(self) -> bool:
        return len(set(self.rows)) == len(self.rows)

    def to_json(self, group_hash: str) -> dict:
        return {
            "prime": self.prime,
            "degrees": list(self.degrees),
            "rows": [list(r) for r in self.rows],
            "class_sizes": list(self.class_sizes),
            "class_reps": list(self.class_representatives),
            "group_hash": group_hash,
        }

    @classmethod
    def from_json(cls, doc: dict, G: FiniteGroup) -> CharacterTableModP:
        """Rebuild a cached table, refusing it unless it matches ``G``."""
        if doc.get("group_hash") != G.content_hash():
            raise ConsistencyError("cached table belongs to a different group")
        P = G.conjugacy_classes
        table = cls(
            prime=int(doc["prime"]),
            degrees=tuple(doc["degrees"]),
            rows=tuple(tuple(r) for r in doc["rows"]),
            class_sizes=tuple(doc["class_sizes"]),
            class_representatives=tuple(doc["class_reps"]),
        )
        if table.class_representatives != P.representatives or list(table.class_sizes) != P.sizes():
            raise ConsistencyError("cached table does not match the conjugacy classes")
        if not _table_is_valid(table, G):
            raise ConsistencyError("cached table fails its integrity checks")
        return table


def _table_is_valid(table: CharacterTableModP, G: FiniteGroup) -> bool:
    k = table.class_count
    if len(table.rows) != k or any(len(r) != k for r in table.rows):
        return False
    if sum(d * d for d in table.degrees) != G.order:
        return False
    return table.rows_distinct() and table.row_orthogonality_holds(G)


def class_structure_constants(G: FiniteGroup) -> list:
    """``a[r][s][t]`` = #{(x, y) : x in C_r, y in C_s, x y = z_t} for a fixed
    ``z_t`` in ``C_t``."""
    P = G.conjugacy_classes
    cls, reps = P.class_of, P.representatives
    k = len(reps)
    a = [[[0] * k for _ in range(k)] for _ in range(k)]
    t_ = G.table
    inv = G.inverse
    for t, z in enumerate(reps):
        for x in range(G.order):
            a[cls[x]][cls[t_[inv[x]][z]]][t] += 1
    return a


def character_table(G: FiniteGroup, seed: int = DEFAULT_SEED, prime_bound: int = DEFAULT_PRIME_BOUND) -> CharacterTableModP:
    P = G.conjugacy_classes
    reps = P.representatives
    sizes = P.sizes()
    k, n = len(reps), G.order
    p = dixon_prime(n, G.exponent, prime_bound)
    a = class_structure_constants(G)
    mats = [[[a[r][s][t] % p for t in range(k)] for s in range(k)] for r in range(k)]

    spaces = [_rref([[int(i == j) for j in range(k)] for i in range(k)], p)]
    rng = random.Random(seed)
    stalled = 0
    while any(len(b) > 1 for b, _ in spaces):
        if stalled < 32:
            coeffs = [rng.randrange(p) for _ in range(k)]
        else:
            # random draws keep failing; walk the class matrices one by one
            coeffs = [int(r == (stalled - 32) % k) for r in range(k)]
            if stalled - 32 >= k:
                raise ConsistencyError("could not separate the central characters")
        M = [[sum(c * mats[r][s][t] for r, c in enumerate(coeffs)) % p for t in range(k)] for s in range(k)]
        before = len(spaces)
        out = []
        for space in spaces:
            if len(space[0]) == 1:
                out.append(space)
            else:
                out.extend(_split(space, M, p))
        spaces = out
        stalled = 0 if len(spaces) > before else stalled + 1

    inv_class = [P.class_of[G.inv(r)] for r in reps]
    size_inv = [pow(s, -1, p) for s in sizes]
    rows = []
    degrees = []
    max_deg = isqrt(n)
    for basis, _ in spaces:
        w = basis[0]
        if w[0] == 0:
            raise ConsistencyError("central character vanishes on the identity class")
        lead = pow(w[0], -1, p)
        w = [x * lead % p for x in w]
        norm = sum(w[t] * w[inv_class[t]] * size_inv[t] for t in range(k)) % p
        deg_sq = n * pow(norm, -1, p) % p
        deg = next((d for d in range(1, max_deg + 1) if d * d % p == deg_sq), None)
        if deg is None:
            raise ConsistencyError("degree is not recoverable from its square mod p")
        degrees.append(deg)
        rows.append(tuple(deg * w[t] * size_inv[t] % p for t in range(k)))

    order = sorted(range(k), key=lambda i: (degrees[i], rows[i]))
    table = CharacterTableModP(
        prime=p,
        degrees=tuple(degrees[i] for i in order),
        rows=tuple(rows[i] for i in order),
        class_sizes=tuple(sizes),
        class_representatives=tuple(reps),
    )
    if not _table_is_valid(table, G):
        raise ConsistencyError("computed character table fails its integrity checks")
    return table


@dataclass(frozen=True)
class DualAction:
    """``permutation[i] = j`` when ``chi_i o phi == chi_j``."""

    permutation: tuple
    fixed_count: int


def dual_action(G: FiniteGroup, table: CharacterTableModP, phi: Automorphism) -> DualAction:
    cls = G.conjugacy_classes.class_of
    col = [cls[phi(r)] for r in table.class_representatives]
    index = {row: i for i, row in enumerate(table.rows)}
    perm = []
    for row in table.rows:
        moved = tuple(row[c] for c in col)
        j = index.get(moved)
        if j is None:
            raise ConsistencyError("twisted character is missing from the table")
        perm.append(j)
    if sorted(perm) != list(range(len(perm))):
        raise ConsistencyError("dual action is not a permutation")
    return DualAction(tuple(perm), sum(1 for i, j in enumerate(perm) if i == j))


@dataclass(frozen=True)
class BurnsideCheck:
    R: int
    S_f: int
    equal: bool


def verify_twisted_burnside(G: FiniteGroup, phi: Automorphism, table: CharacterTableModP | None = None) -> BurnsideCheck:
    """Compare the number of twisted classes with the number of irreducible
    characters fixed by ``chi -> chi o phi``."""
    if table is None:
        table = character_table(G)
    R = twisted_classes(G, phi).class_count
    S = dual_action(G, table, phi).fixed_count
    return BurnsideCheck(R, S, R == S)
