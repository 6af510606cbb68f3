"""Additive generalizations of the Lee weight: Mannheim (Gaussian integers),
Eisenstein-Jacobi, l-dimensional Lee and Kaushik-Sharma weights, plus the
(m, *)-spotty byte weights."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import cached_property

from .config import DomainError, MetriforgeError
from .core import Metric, lee_symbol_weight
from .fields import INTEGER_RING, PRIME_POWER_FIELD, Alphabet, hamming_weight, is_prime


def _additive_metric(name: str, table, alphabet: Alphabet, n: int | None, params: dict) -> Metric:
    table = tuple(table)
    return Metric(name, weight=lambda x: sum(table[a] for a in x), alphabet=alphabet, n=n, params=params)


# ---------------------------------------------------------------------------
# Gaussian integers (Mannheim)
# ---------------------------------------------------------------------------


class GaussianModulus:
    """``alpha = a + b i``, a Gaussian prime with ``a^2 + b^2 = p = 1 (mod 4)`` or ``alpha = p = 3 (mod 4)``.

    Residue classes are numbered: for ``p = 1 (mod 4)`` class ``k`` is the class
    of the integer ``k`` (``0 <= k < p``); for ``alpha = p`` class ``x + p*y`` is
    the class of ``x + y i``.
    """

    def __init__(self, a: int, b: int):
        N = a * a + b * b
        if b != 0 and is_prime(N) and N % 4 == 1:
            self.split = True
            self.p = N
            self.size = N
            self.iota = (-a * pow(b, -1, N)) % N  # image of i in Z_p
        elif b == 0 and is_prime(abs(a)) and abs(a) % 4 == 3:
            self.split = False
            self.p = abs(a)
            self.size = self.p**2
        else:
            raise DomainError(f"{a}+{b}i is not a Gaussian prime of the supported forms")
        self.a, self.b, self.norm = a, b, N

    def __repr__(self):
        return f"GaussianModulus({self.a}+{self.b}i)"

    def class_of(self, x: int, y: int) -> int:
        if self.split:
            return (x + y * self.iota) % self.p
        return x % self.p + self.p * (y % self.p)

    @cached_property
    def _scan(self) -> tuple[list, list]:
        """Minimal ``|x|+|y|`` and canonical remainder per class over the window ``|x|,|y| <= N(alpha)``."""
        W = self.norm
        best = [None] * self.size
        rep = [None] * self.size
        for x in range(-W, W + 1):
            for y in range(-W, W + 1):
                k = self.class_of(x, y)
                w = abs(x) + abs(y)
                if best[k] is None or w < best[k]:
                    best[k] = w
                key = (x * x + y * y, x, y)
                if rep[k] is None or key < rep[k]:
                    rep[k] = key
        if any(v is None for v in best):
            raise AssertionError("residue window missed a class")
        return best, [(r[1], r[2]) for r in rep]

    @property
    def weights(self) -> list[int]:
        return self._scan[0]

    def residue(self, x: int, y: int) -> tuple[int, int]:
        """Canonical remainder of ``x + y i``: minimal norm, ties broken by (Re, Im)."""
        return self._scan[1][self.class_of(x, y)]

    def weight(self, k: int) -> int:
        return self.weights[k]

    @property
    def alphabet(self) -> Alphabet:
        if self.split:
            return Alphabet(self.p)
        # Z[i]/<p> is GF(p^2) with i a root of x^2 + 1 (irreducible since p = 3 mod 4)
        return Alphabet(self.size, PRIME_POWER_FIELD, poly=(1, 0, 1))

    def metric(self, n: int | None = None) -> Metric:
        return _additive_metric("mannheim", self.weights, self.alphabet, n, {"a": self.a, "b": self.b})


def mannheim_weight(mod: GaussianModulus, beta: int) -> int:
    return mod.weight(beta)


# ---------------------------------------------------------------------------
# Eisenstein-Jacobi integers
# ---------------------------------------------------------------------------


def _ej_decompose(p: int) -> tuple[int, int]:
    for b in range(1, math.isqrt(p // 3) + 1):
        a2 = p - 3 * b * b
        a = math.isqrt(a2)
        if a * a == a2:
            return a, b
    raise AssertionError("no a^2 + 3 b^2 representation")


class EisensteinModulus:
    """``alpha = a + b + 2 b zeta`` with ``p = a^2 + 3 b^2``, ``p = 1 (mod 6)``.

    ``Z[zeta]/<alpha>`` is identified with ``Z_p`` via ``zeta -> z``, the root of
    ``z^2 + z + 1`` with ``alpha -> 0``; class ``k`` is the class of the integer ``k``.
    """

    def __init__(self, p: int):
        if not is_prime(p) or p % 6 != 1:
            raise DomainError(f"EJ modulus needs a prime p = 1 (mod 6), got {p}")
        a, b = _ej_decompose(p)
        z = (-(a + b) * pow(2 * b, -1, p)) % p
        if (z * z + z + 1) % p:
            raise AssertionError("zeta image is not a primitive cube root of unity")
        self.p, self.a, self.b, self.z = p, a, b, z
        self.units = tuple(sorted({1, p - 1, z, (-z) % p, (1 + z) % p, (-1 - z) % p}))

    def __repr__(self):
        return f"EisensteinModulus(p={self.p}, alpha={self.a + self.b}+{2 * self.b}zeta)"

    @cached_property
    def weights(self) -> list[int]:
        p = self.p
        best = [None] * p
        for e1, e2 in itertools.product(self.units, repeat=2):
            for x1 in range(-p, p + 1):
                for x2 in range(-p, p + 1):
                    k = (x1 * e1 + x2 * e2) % p
                    w = abs(x1) + abs(x2)
                    if best[k] is None or w < best[k]:
                        best[k] = w
        return best

    def weight(self, k: int) -> int:
        return self.weights[k]

    def metric(self, n: int | None = None) -> Metric:
        return _additive_metric("ej", self.weights, Alphabet(self.p), n, {"p": self.p})


def ej_weight(mod: EisensteinModulus, beta: int) -> int:
    return mod.weight(beta)


# ---------------------------------------------------------------------------
# l-dimensional Lee weight
# ---------------------------------------------------------------------------


def _shell(l: int, w: int):
    """Integer vectors in Z^l with l1 norm exactly ``w``."""
    if l == 1:
        yield from ((w,), (-w,)) if w else ((0,),)
        return
    for head in range(-w, w + 1):
        for tail in _shell(l - 1, w - abs(head)):
            yield (head,) + tail


class LdimPhi:
    """``phi(e_i) = a_i`` in F_q, extended to Z^l by integer multiples."""

    def __init__(self, l: int, q: int, phi, poly=None):
        F = Alphabet(q, poly=poly)
        if not F.is_field:
            raise DomainError(f"l-dimensional Lee weight needs a field, got q={q}")
        phi = tuple(int(a) for a in phi)
        if len(phi) != l or l < 1:
            raise DomainError(f"phi needs {l} values")
        for a in phi:
            if not 0 <= a < q:
                raise DomainError(f"phi value {a} outside F_{q}")
        self.l, self.q, self.phi, self.field = l, q, phi, F
        reach = {0}
        frontier = [0]
        while frontier:
            nxt = []
            for v in frontier:
                for a in phi:
                    u = F.add(v, a)
                    if u not in reach:
                        reach.add(u)
                        nxt.append(u)
            frontier = nxt
        if len(reach) != q:
            raise DomainError(f"phi={list(phi)} is not surjective onto F_{q}")

    def apply(self, u) -> int:
        F = self.field
        s = 0
        for c, a in zip(u, self.phi):
            s = F.add(s, F.int_mul(c, a))
        return s

    @cached_property
    def weights(self) -> list[int]:
        """Iterative deepening over l1 shells; the cap ``q*l`` surfaces configuration bugs."""
        best: list = [None] * self.q
        left = self.q
        for w in range(self.q * self.l + 1):
            for u in _shell(self.l, w):
                a = self.apply(u)
                if best[a] is None:
                    best[a] = w
                    left -= 1
            if left == 0:
                return best
        raise MetriforgeError(f"internal: l1 shell search exceeded cap {self.q * self.l}")

    def weight(self, a: int) -> int:
        return self.weights[a]

    def metric(self, n: int | None = None) -> Metric:
        return _additive_metric("ldlee", self.weights, self.field, n, {"l": self.l, "q": self.q, "phi": list(self.phi)})


def ldim_lee_weight(phi: LdimPhi, a: int) -> int:
    return phi.weight(a)


# ---------------------------------------------------------------------------
# Kaushik-Sharma
# ---------------------------------------------------------------------------


@dataclass
class KSValidation:
    valid: bool
    violations: list = field(default_factory=list)

    def __bool__(self):
        return self.valid


def ks_validate(q: int, classes) -> KSValidation:
    """Check the three KS-partition conditions (condition 0: it is a partition of Z_q)."""
    B = [frozenset(int(i) for i in c) for c in classes]
    bad = []
    flat = [i for c in B for i in c]
    if sorted(flat) != list(range(q)) or any(not c for c in B):
        return KSValidation(False, [(0, "classes do not partition Z_q into nonempty sets")])
    if B[0] != {0}:
        bad.append((1, "B_0 must be {0}"))
    for s, c in enumerate(B):
        for i in c:
            if i and (q - i) % q not in c:
                bad.append((1, f"{i} in B_{s} but {q - i} is not"))
                break
    lee = lambda i: min(i, q - i)  # noqa: E731
    for s, t in itertools.combinations(range(len(B)), 2):
        if max(lee(i) for i in B[s]) >= min(lee(j) for j in B[t]):
            bad.append((2, f"B_{s} and B_{t} are not separated by Lee value"))
            break
    m = len(B)
    sizes = [len(c) for c in B]
    if m >= 2:
        if any(sizes[i] > sizes[i + 1] for i in range(m - 2)):
            bad.append((3, "class sizes must be nondecreasing up to B_{m-2}"))
        if 2 * sizes[m - 1] < sizes[m - 2]:
            bad.append((3, "|B_{m-1}| must be at least half of |B_{m-2}|"))
    return KSValidation(not bad, bad)


class KSPartition:
    def __init__(self, q: int, classes):
        rep = ks_validate(q, classes)
        if not rep.valid:
            cond, msg = rep.violations[0]
            raise DomainError(f"invalid KS partition (condition {cond}): {msg}")
        self.q = q
        self.classes = tuple(tuple(sorted(int(i) for i in c)) for c in classes)
        table = [0] * q
        for s, c in enumerate(self.classes):
            for i in c:
                table[i] = s
        self.table = tuple(table)

    @property
    def m(self) -> int:
        return len(self.classes)

    def weight(self, x) -> int:
        return sum(self.table[a % self.q] for a in x)

    def metric(self, n: int | None = None) -> Metric:
        return _additive_metric(
            "ks", self.table, Alphabet(self.q, INTEGER_RING), n, {"q": self.q, "classes": [list(c) for c in self.classes]}
        )


def ks_weight(partition: KSPartition, x) -> int:
    return partition.weight(x)


def hamming_partition(q: int) -> KSPartition:
    return KSPartition(q, [[0], list(range(1, q))])


def lee_partition(q: int) -> KSPartition:
    """``B_i = {i, q - i}`` for ``0 <= i <= floor(q/2)``."""
    return KSPartition(q, [sorted({i, (q - i) % q}) for i in range(q // 2 + 1)])


def ks_ball_sizes(partition: KSPartition, length: int, rmax: int) -> list[int]:
    """``|B(r)|`` in ``Z_q^length`` for ``r = 0..rmax`` by exact convolution of symbol weights."""
    dist = [1]
    sym: dict = {}
    for w in partition.table:
        sym[w] = sym.get(w, 0) + 1
    for _ in range(length):
        out = [0] * (len(dist) + max(sym))
        for i, c in enumerate(dist):
            for w, k in sym.items():
                out[i + w] += c * k
        dist = out
    return list(itertools.accumulate(dist[i] if i < len(dist) else 0 for i in range(rmax + 1)))


@dataclass
class KSBound:
    bracket: int
    redundancy: int
    holds: bool
    min_redundancy: int
    literal_rhs: float
    holds_literal: bool


def ks_hamming_bound(n: int, k: int, partition: KSPartition, r1: int, r2: int, b: int) -> KSBound:
    """``q^(n-k) >= b^n(r1) + sum_{i=1}^{b} (n-i+1)(b^i(r2) - b^i(r1))``.

    ``holds_literal`` instead applies ``log_q`` to the first term only.
    """
    q, m = partition.q, partition.m
    if not (1 < r1 < r2 < (m - 1) * b):
        raise DomainError(f"need 1 < r1 < r2 < (m-1) b = {(m - 1) * b}")
    if not (1 <= b and 2 * b < n):
        raise DomainError("need 1 <= b < n/2")
    if not 0 <= k <= n:
        raise DomainError("need 0 <= k <= n")
    full = ks_ball_sizes(partition, n, r1)
    S = full[r1]
    tail = 0
    for i in range(1, b + 1):
        balls = ks_ball_sizes(partition, i, r2)
        tail += (n - i + 1) * (balls[r2] - balls[r1])
    S += tail
    e = 0
    while q**e < S:
        e += 1
    lit = math.log(full[r1], q) + tail
    return KSBound(S, n - k, q ** (n - k) >= S, e, lit, n - k >= lit)


# ---------------------------------------------------------------------------
# m-spotty weights
# ---------------------------------------------------------------------------

SPOTTY_INNER = ("H", "L", "NR")


class SpottyConfig:
    def __init__(self, b: int, t: int, inner: str = "H", q: int = 2):
        inner = inner.upper()
        if inner not in SPOTTY_INNER:
            raise DomainError(f"inner structure must be one of {SPOTTY_INNER}")
        if not (1 <= t <= b):
            raise DomainError("need 1 <= t <= b")
        self.b, self.t, self.inner, self.q = b, t, inner, q

    def byte_weight(self, y) -> int:
        if self.inner == "H":
            return hamming_weight(y)
        if self.inner == "L":
            return sum(lee_symbol_weight(a, self.q) for a in y)
        return max((j + 1 for j, a in enumerate(y) if a), default=0)

    def weight(self, x) -> int:
        if len(x) % self.b:
            raise DomainError(f"length {len(x)} is not a multiple of the byte length {self.b}")
        return sum(-(-self.byte_weight(x[i : i + self.b]) // self.t) for i in range(0, len(x), self.b))

    def metric(self, n: int | None = None) -> Metric:
        if n is not None and n % self.b:
            raise DomainError(f"length {n} is not a multiple of the byte length {self.b}")
        F = Alphabet(self.q, INTEGER_RING) if self.inner == "L" else Alphabet(self.q)
        return Metric(
            "spotty",
            weight=self.weight,
            alphabet=F,
            n=n,
            params={"b": self.b, "t": self.t, "inner": self.inner, "q": self.q},
        )


def spotty_weight(cfg: SpottyConfig, x) -> int:
    return cfg.weight(x)
