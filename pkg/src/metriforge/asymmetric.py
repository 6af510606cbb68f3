"""Asymmetric-channel metrics: N-counts, the asymmetric distance, its
correction criteria and size bounds, and the generalized asymmetric metric."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .config import DomainError, check_space
from .core import Metric
from .fields import PLAIN_SET, Alphabet


def _binary_pair(x, y) -> tuple[tuple, tuple]:
    x, y = tuple(x), tuple(y)
    if len(x) != len(y):
        raise DomainError(f"length mismatch: {len(x)} vs {len(y)}")
    for a in x + y:
        if a not in (0, 1):
            raise DomainError(f"binary word expected, got symbol {a!r}")
    return x, y


def n_count(x, y) -> int:
    """``N(x, y) = |{i : x_i = 0, y_i = 1}|``."""
    x, y = _binary_pair(x, y)
    return sum(1 for a, b in zip(x, y) if a == 0 and b == 1)


def asym_dist(x, y) -> int:
    return max(n_count(x, y), n_count(y, x))


def asymmetric_metric(n: int | None = None) -> Metric:
    # vectors over a plain binary set: the distance is not translation invariant
    return Metric("asymmetric", dist=asym_dist, alphabet=Alphabet(2, PLAIN_SET), n=n)


def _code(code) -> list[tuple]:
    words = list(code.words) if hasattr(code, "words") else [tuple(w) for w in code]
    if len(set(words)) != len(words):
        raise DomainError("codewords must be distinct")
    return words


def asym_min_distance(code) -> int:
    words = _code(code)
    if len(words) < 2:
        raise DomainError("minimum distance needs at least two codewords")
    return min(asym_dist(a, b) for a, b in itertools.combinations(words, 2))


@dataclass
class AsymCorrection:
    corrects: bool
    theorem_condition: bool
    witness: tuple | None = None

    def __bool__(self):
        return self.corrects


def corrects_asymmetric(code, r0: int, r1: int, cap: int | None = None) -> AsymCorrection:
    """Are the sets ``{x : N(c, x) <= r0 and N(x, c) <= r1}`` pairwise disjoint?

    ``N(c, x)`` counts 0-errors (0 sent, 1 received), ``N(x, c)`` 1-errors.
    Also reports the sufficient condition ``r0 + r1 < d_a(C)``.
    """
    words = _code(code)
    n = len(words[0])
    check_space(2**n, cap)
    owner: dict = {}
    wit = None
    for c in words:
        for x in itertools.product((0, 1), repeat=n):
            if n_count(c, x) <= r0 and n_count(x, c) <= r1:
                other = owner.setdefault(x, c)
                if other != c and wit is None:
                    wit = (other, c, x)
    cond = len(words) < 2 or r0 + r1 < asym_min_distance(words)
    return AsymCorrection(wit is None, cond, wit)


def is_tEC_AUED_condition(code, t: int) -> bool:
    """``N(x, y) >= t + 1`` and ``N(y, x) >= t + 1`` for all distinct codewords."""
    words = _code(code)
    return all(
        n_count(a, b) >= t + 1 and n_count(b, a) >= t + 1 for a, b in itertools.combinations(words, 2)
    )


def lin_bose_bound(n: int) -> Fraction:
    """``A(n, 1) <= (2/n) C(n, floor(n/2))``."""
    if n < 1:
        raise DomainError("n must be positive")
    return Fraction(2, n) * math.comb(n, n // 2)


def varshamov_bound(n: int, t: int) -> Fraction:
    """``A(n, t) <= 2^(n+1) / sum_{j=1}^{t} [C(floor(n/2), j) + C(ceil(n/2), j)]``."""
    if n < 1 or t < 1:
        raise DomainError("need n >= 1 and t >= 1")
    den = sum(math.comb(n // 2, j) + math.comb(-(-n // 2), j) for j in range(1, t + 1))
    if den == 0:
        raise DomainError("Varshamov denominator vanishes")
    return Fraction(2 ** (n + 1), den)


def n_g(x, y) -> int:
    """``N_g(x, y) = sum max(x_i - y_i, 0)`` over nonnegative integers."""
    x, y = tuple(x), tuple(y)
    if len(x) != len(y):
        raise DomainError(f"length mismatch: {len(x)} vs {len(y)}")
    for a in x + y:
        if not isinstance(a, int) or a < 0:
            raise DomainError(f"nonnegative integer expected, got {a!r}")
    return sum(max(a - b, 0) for a, b in zip(x, y))


def gen_asym_dist(x, y) -> int:
    return max(n_g(x, y), n_g(y, x))


def gen_asymmetric_metric(q: int | None = None, n: int | None = None) -> Metric:
    """Generalized asymmetric metric; ``q`` bounds symbols to ``0..q-1`` for enumeration."""
    F = Alphabet(q, PLAIN_SET) if q is not None else None
    return Metric("genasym", dist=gen_asym_dist, alphabet=F, n=n, params={"q": q} if q else {})
