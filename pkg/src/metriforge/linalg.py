"""Gaussian elimination and subspace enumeration over a finite field alphabet.

Vectors are tuples of ints, matrices are sequences of row tuples.
"""

from __future__ import annotations

import itertools

from .config import DomainError, check_space
from .fields import Alphabet


def _require_field(F: Alphabet) -> None:
    if not F.is_field:
        raise DomainError(f"linear algebra needs a field, got {F!r}")


def rref(F: Alphabet, rows) -> tuple[list[tuple[int, ...]], list[int]]:
    """Reduced row echelon form; zero rows are dropped."""
    _require_field(F)
    M = [list(r) for r in rows]
    if not M:
        return [], []
    ncols = len(M[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = F.inv(M[r][c])
        M[r] = [F.mul(inv, a) for a in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [F.sub(a, F.mul(f, b)) for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return [tuple(row) for row in M[:r]], pivots


def rank(F: Alphabet, rows) -> int:
    return len(rref(F, rows)[0])


def in_span(F: Alphabet, basis, x) -> bool:
    if not any(x):
        return True
    basis = list(basis)
    return rank(F, basis + [tuple(x)]) == rank(F, basis)


def span(F: Alphabet, rows, n: int | None = None, cap: int | None = None) -> list[tuple[int, ...]]:
    """All linear combinations of ``rows``, sorted."""
    basis, _ = rref(F, rows)
    if n is None:
        n = len(rows[0]) if rows else 0
    if not basis:
        return [(0,) * n]
    check_space(F.q ** len(basis), cap, "span")
    out = set()
    for coeffs in itertools.product(range(F.q), repeat=len(basis)):
        v = (0,) * n
        for c, b in zip(coeffs, basis):
            if c:
                v = F.vadd(v, F.vscale(c, b))
        out.add(v)
    return sorted(out)


def nullspace(F: Alphabet, rows, n: int) -> list[tuple[int, ...]]:
    """Basis of ``{x : <row, x> = 0 for every row}`` (RREF form)."""
    basis, pivots = rref(F, rows)
    free = [c for c in range(n) if c not in pivots]
    out = []
    for f in free:
        v = [0] * n
        v[f] = 1
        for row, pc in zip(basis, pivots):
            v[pc] = F.neg(row[f])
        out.append(tuple(v))
    return rref(F, out)[0] if out else []


def solve_combination(F: Alphabet, columns, x) -> tuple[int, ...] | None:
    """Some ``u`` with ``sum(u_i * columns[i]) == x``, or None if ``x`` is not in their span."""
    m = len(columns)
    n = len(x)
    aug = [tuple(columns[i][r] for i in range(m)) + (x[r],) for r in range(n)]
    red, pivots = rref(F, aug)
    if m in pivots:
        return None
    u = [0] * m
    for row, pc in zip(red, pivots):
        u[pc] = row[m]
    return tuple(u)


def transpose(rows) -> list[tuple[int, ...]]:
    return [tuple(c) for c in zip(*rows)]


def mat_vec(F: Alphabet, A, x) -> tuple[int, ...]:
    return tuple(F.dot(row, x) for row in A)


def enumerate_subspaces(F: Alphabet, n: int, cap: int | None = None):
    """Yield an RREF basis (tuple of rows) for every subspace of F^n, each exactly once.

    Order: by dimension, then pivot positions, then free entries lexicographically.
    """
    _require_field(F)
    check_space(F.q**n, cap, "ambient space")
    for k in range(n + 1):
        for pivots in itertools.combinations(range(n), k):
            slots = [
                (r, c)
                for r, pc in enumerate(pivots)
                for c in range(pc + 1, n)
                if c not in pivots
            ]
            for vals in itertools.product(range(F.q), repeat=len(slots)):
                M = [[0] * n for _ in range(k)]
                for r, pc in enumerate(pivots):
                    M[r][pc] = 1
                for (r, c), v in zip(slots, vals):
                    M[r][c] = v
                yield tuple(tuple(row) for row in M)


def count_subspaces(q: int, n: int) -> int:
    """Sum of Gaussian binomials [n choose k]_q."""
    total = 0
    for k in range(n + 1):
        num = den = 1
        for i in range(k):
            num *= q ** (n - i) - 1
            den *= q ** (i + 1) - 1
        total += num // den
    return total
