"""Sequences ``R(phi^n)``, the Moebius congruence and partial zeta
coefficients."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction

from . import abelian, groups
from .errors import InfiniteResultError, InputError
from .linalg import is_finite


def moebius(d: int) -> int:
    if not isinstance(d, int) or d < 1:
        raise InputError("must be a positive integer", "d")
    result = 1
    p = 2
    while p * p <= d:
        if d % p == 0:
            d //= p
            if d % p == 0:
                return 0
            result = -result
        p += 1
    if d > 1:
        result = -result
    return result


def divisors(n: int) -> list:
    return [d for d in range(1, n + 1) if n % d == 0]


@dataclass(frozen=True)
class ReidemeisterSequence:
    """``values[n - 1] = R(phi^n)`` for ``n = 1..N``."""

    values: tuple
    source: str

    def __len__(self):
        return len(self.values)

    def __getitem__(self, n: int):
        """One-based: ``seq[n] = R(phi^n)``."""
        if not 1 <= n <= len(self.values):
            raise IndexError(n)
        return self.values[n - 1]

    @property
    def all_finite(self) -> bool:
        return all(is_finite(v) for v in self.values)


def reidemeister_sequence(source, N: int) -> ReidemeisterSequence:
    """Compute ``R(phi^n)`` for ``n <= N``.

    ``source`` is a finite-group ``Automorphism`` or an ``AbelianEndo``;
    powers are taken by composition (matrix powers in the abelian case).
    """
    if not isinstance(N, int) or N < 1:
        raise InputError("must be a positive integer", "N")
    values = []
    if isinstance(source, groups.Automorphism):
        G = source.group
        power = groups.identity_automorphism(G)
        for _ in range(N):
            power = power.compose(source)
            values.append(groups.reidemeister_number(G, power))
        desc = f"{G.name or 'group'} of order {G.order}, automorphism {list(source.map)}"
    elif isinstance(source, abelian.AbelianEndo):
        A = source.group
        power = abelian.AbelianEndo.identity(A)
        for _ in range(N):
            power = power.compose(source)
            values.append(abelian.reidemeister_number(A, power))
        desc = f"{A}, endomorphism {source.to_json()}"
    else:
        raise InputError(f"unsupported source type {type(source).__name__}", "source")
    return ReidemeisterSequence(tuple(values), desc)


@dataclass(frozen=True)
class CongruenceRecord:
    n: int
    sum: int
    residue: int
    passed: bool


@dataclass(frozen=True)
class CongruenceReport:
    records: tuple

    @property
    def all_pass(self) -> bool:
        return all(r.passed for r in self.records)

    def to_json(self) -> list:
        return [{"n": r.n, "sum": r.sum, "residue": r.residue, "pass": r.passed} for r in self.records]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "sum", "residue", "pass"])
        for r in self.records:
            w.writerow([r.n, r.sum, r.residue, str(r.passed).lower()])
        return buf.getvalue()


def _require_finite(seq: ReidemeisterSequence, upto: int):
    for n in range(1, upto + 1):
        if not is_finite(seq[n]):
            raise InfiniteResultError(f"R(phi^{n}) is infinite")


def verify_congruences(seq: ReidemeisterSequence) -> CongruenceReport:
    """``sum_{d | n} mu(d) R(phi^(n/d)) = 0 (mod n)`` for every ``n``."""
    N = len(seq)
    _require_finite(seq, N)
    records = []
    for n in range(1, N + 1):
        total = sum(moebius(d) * seq[n // d] for d in divisors(n))
        res = total % n
        records.append(CongruenceRecord(n, total, res, res == 0))
    return CongruenceReport(tuple(records))


def zeta_coefficients(seq: ReidemeisterSequence, N: int | None = None) -> tuple:
    """Coefficients ``a_0..a_N`` of ``exp(sum R(phi^n) z^n / n)``.

    Uses ``n a_n = sum_{k=1}^n R(phi^k) a_{n-k}`` in exact rationals.
    """
    if N is None:
        N = len(seq)
    if N < 0 or N > len(seq):
        raise InputError(f"must lie between 0 and {len(seq)}", "N")
    _require_finite(seq, N)
    a = [Fraction(1)]
    for n in range(1, N + 1):
        a.append(sum((seq[k] * a[n - k] for k in range(1, n + 1)), Fraction(0)) / n)
    return tuple(a)
