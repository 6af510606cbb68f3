"""Words, codes, the uniform metric handle and metric-agnostic code analysis."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Sequence

import numpy as np

from . import linalg
from .config import DomainError, check_space
from .fields import INTEGER_RING, Alphabet, hamming_weight, support

Word = tuple

VECTORS = "vectors"
STRINGS = "strings"
PERMUTATIONS = "permutations"


# ---------------------------------------------------------------------------
# Metric handle
# ---------------------------------------------------------------------------


class Metric:
    """A named, parameterized distance.

    Weight-defined metrics are built from ``weight`` and compute
    ``dist(x, y) = weight(x - y)``; the others supply ``dist`` directly.
    ``n`` fixes the word length when the family is tied to one (posets,
    coverings...); ``None`` means any length.
    """

    def __init__(
        self,
        name: str,
        *,
        weight: Callable | None = None,
        dist: Callable | None = None,
        alphabet: Alphabet | None = None,
        n: int | None = None,
        domain: str = VECTORS,
        params: dict | None = None,
    ):
        if (weight is None) == (dist is None):
            raise ValueError("give exactly one of weight= or dist=")
        if weight is not None and (alphabet is None or not alphabet.has_arithmetic):
            raise ValueError("a weight-defined metric needs an alphabet with subtraction")
        self.name = name
        self.alphabet = alphabet
        self.n = n
        self.domain = domain
        self.params = dict(params or {})
        self._weight = lru_cache(maxsize=None)(weight) if weight is not None else None
        self._dist = lru_cache(maxsize=None)(dist) if dist is not None else None

    def __repr__(self):
        return f"Metric({self.name!r}, n={self.n}, params={self.params})"

    @property
    def weight_defined(self) -> bool:
        return self._weight is not None

    @property
    def q(self) -> int | None:
        return self.alphabet.q if self.alphabet is not None else None

    def validate(self, x) -> tuple:
        if self.domain == VECTORS:
            if self.alphabet is None:
                return tuple(x)
            return self.alphabet.check_word(x, self.n)
        if self.domain == PERMUTATIONS:
            x = tuple(int(a) for a in x)
            if sorted(x) != list(range(1, len(x) + 1)):
                raise DomainError(f"{list(x)} is not a permutation of [1..{len(x)}]")
            if self.n is not None and len(x) != self.n:
                raise DomainError(f"permutation length {len(x)}, expected {self.n}")
            return x
        x = tuple(x)
        if self.alphabet is not None:
            for a in x:
                if not (isinstance(a, int) and 0 <= a < self.alphabet.q):
                    raise DomainError(f"symbol {a!r} outside alphabet of size {self.alphabet.q}")
        return x

    def dist(self, x, y) -> int:
        x, y = self.validate(x), self.validate(y)
        if self.domain != STRINGS and len(x) != len(y):
            raise DomainError(f"length mismatch: {len(x)} vs {len(y)}")
        return self._raw_dist(x, y)

    def _raw_dist(self, x, y) -> int:
        if self._weight is not None:
            return self._weight(self.alphabet.vsub(x, y))
        return self._dist(x, y)

    def weight(self, x) -> int:
        if self._weight is None:
            raise DomainError(f"metric {self.name!r} is not weight-defined")
        return self._weight(self.validate(x))

    def length(self, n: int | None = None) -> int:
        n = self.n if n is None else n
        if n is None:
            raise DomainError(f"metric {self.name!r} needs an explicit length")
        if self.n is not None and n != self.n:
            raise DomainError(f"metric {self.name!r} has fixed length {self.n}, got {n}")
        return n

    def points(self, n: int | None = None, cap: int | None = None) -> list[tuple]:
        """Every point of the domain at length ``n`` (strings: all lengths ``<= n``)."""
        n = self.length(n)
        if self.domain == PERMUTATIONS:
            check_space(math.factorial(n), cap)
            return list(itertools.permutations(range(1, n + 1)))
        if self.alphabet is None:
            raise DomainError(f"metric {self.name!r} has no finite alphabet to enumerate")
        q = self.alphabet.q
        if self.domain == STRINGS:
            check_space(sum(q**k for k in range(n + 1)), cap)
            return [w for k in range(n + 1) for w in itertools.product(range(q), repeat=k)]
        check_space(q**n, cap)
        return list(itertools.product(range(q), repeat=n))


def dist(metric: Metric, x, y) -> int:
    return metric.dist(x, y)


def hamming(q: int = 2, n: int | None = None, alphabet: Alphabet | None = None) -> Metric:
    F = alphabet or Alphabet(q)
    return Metric("hamming", weight=hamming_weight, alphabet=F, n=n, params={"q": F.q})


def lee_symbol_weight(a: int, q: int) -> int:
    a %= q
    return min(a, q - a)


def lee(q: int, n: int | None = None) -> Metric:
    R = Alphabet(q, INTEGER_RING)
    return Metric(
        "lee",
        weight=lambda x: sum(min(a, q - a) for a in x),
        alphabet=R,
        n=n,
        params={"q": q},
    )


def table_metric(points: Sequence, table) -> Metric:
    """A metric given by an explicit distance table over ``points`` (for testing axioms)."""
    index = {tuple(p): i for i, p in enumerate(points)}
    T = np.asarray(table)
    return Metric(
        "table",
        dist=lambda x, y: int(T[index[x], index[y]]),
        domain=STRINGS,
        params={"size": len(points)},
    )


def distance_matrix(metric: Metric, rows: Sequence, cols: Sequence | None = None) -> np.ndarray:
    cols = rows if cols is None else cols
    D = np.empty((len(rows), len(cols)), dtype=np.int64)
    for i, x in enumerate(rows):
        for j, y in enumerate(cols):
            D[i, j] = metric._raw_dist(x, y)
    return D


# ---------------------------------------------------------------------------
# Codes
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BlockCode:
    alphabet: Alphabet
    n: int
    words: tuple
    generator: tuple | None = None

    @classmethod
    def from_words(cls, words: Iterable, q: int | Alphabet = 2, n: int | None = None) -> "BlockCode":
        F = q if isinstance(q, Alphabet) else Alphabet(q)
        ws = [F.check_word(w) for w in words]
        if not ws:
            raise DomainError("a code needs at least one codeword")
        n = len(ws[0]) if n is None else n
        for w in ws:
            if len(w) != n:
                raise DomainError(f"codeword {w} has length {len(w)}, expected {n}")
        if len(set(ws)) != len(ws):
            raise DomainError("codewords must be pairwise distinct")
        return cls(F, n, tuple(sorted(ws)))

    @classmethod
    def from_generator(cls, G, q: int | Alphabet = 2, n: int | None = None) -> "BlockCode":
        F = q if isinstance(q, Alphabet) else Alphabet(q)
        G = [F.check_word(r) for r in G]
        if n is None:
            if not G:
                raise DomainError("length needed for an empty generator")
            n = len(G[0])
        basis, _ = linalg.rref(F, G)
        if len(basis) != len(G):
            raise DomainError(f"generator matrix has rank {len(basis)} < {len(G)} rows")
        words = linalg.span(F, basis, n) if basis else [(0,) * n]
        return cls(F, n, tuple(words), tuple(basis))

    def __len__(self):
        return len(self.words)

    @property
    def size(self) -> int:
        return len(self.words)

    @property
    def q(self) -> int:
        return self.alphabet.q

    def __contains__(self, w):
        return tuple(w) in set(self.words)

    def linear_basis(self) -> tuple | None:
        """RREF basis if the word set is a subspace, else None."""
        if self.generator is not None:
            return self.generator
        if not self.alphabet.is_field:
            return None
        basis, _ = linalg.rref(self.alphabet, self.words)
        if self.alphabet.q ** len(basis) != len(self.words):
            return None
        if set(linalg.span(self.alphabet, basis, self.n)) != set(self.words):
            return None
        return tuple(basis)

    @property
    def is_linear(self) -> bool:
        return self.linear_basis() is not None

    @property
    def k(self) -> int:
        basis = self.linear_basis()
        if basis is None:
            raise DomainError("dimension is only defined for linear codes")
        return len(basis)

    def as_linear(self) -> "BlockCode":
        basis = self.linear_basis()
        if basis is None:
            raise DomainError("code is not linear")
        return BlockCode(self.alphabet, self.n, self.words, basis)


def dual_code(code: BlockCode) -> BlockCode:
    basis = code.linear_basis()
    if basis is None:
        raise DomainError("dual code needs a linear code")
    H = linalg.nullspace(code.alphabet, basis, code.n)
    return BlockCode.from_generator(H, code.alphabet, code.n)


DEFAULT_MAX_SUBSPACES = 1000


def enumerate_linear_codes(q: int | Alphabet, n: int, max_codes: int = DEFAULT_MAX_SUBSPACES):
    """Yield every linear code (subspace) of F_q^n exactly once."""
    F = q if isinstance(q, Alphabet) else Alphabet(q)
    if not F.is_field:
        raise DomainError("linear codes need a field alphabet")
    check_space(linalg.count_subspaces(F.q, n), max_codes, "subspace count")
    for basis in linalg.enumerate_subspaces(F, n):
        words = linalg.span(F, basis, n) if basis else [(0,) * n]
        yield BlockCode(F, n, tuple(words), basis)


# ---------------------------------------------------------------------------
# Structural properties
# ---------------------------------------------------------------------------


@dataclass
class WeightProperties:
    wd: bool
    ap: bool | None
    rs: bool | None
    witness: dict = field(default_factory=dict)


def check_weight_properties(metric: Metric, n: int | None = None, cap: int | None = None) -> WeightProperties:
    """Exhaustively test translation invariance (WD), additivity (AP), respect of support (RS).

    AP and RS are only evaluated when WD holds.
    """
    if metric.domain != VECTORS or metric.alphabet is None or not metric.alphabet.has_arithmetic:
        return WeightProperties(False, None, None, {"wd": "domain has no translations"})
    n = metric.length(n)
    pts = metric.points(n, cap)
    F = metric.alphabet
    zero = (0,) * n
    base = {x: metric._raw_dist(x, zero) for x in pts}
    for x in pts:
        for y in pts:
            if metric._raw_dist(x, y) != base[F.vsub(x, y)]:
                return WeightProperties(False, None, None, {"wd": (x, y)})
    w = base
    # AP: the symbol table is forced by the words a*e_1
    table = [w[(a,) + (0,) * (n - 1)] for a in range(F.q)] if n else [0] * F.q
    ap, ap_wit = True, None
    for x in pts:
        if w[x] != sum(table[a] for a in x):
            ap, ap_wit = False, x
            break
    # RS: max weight on support S <= min weight on any superset T
    lo: dict = {}
    hi: dict = {}
    for x in pts:
        s = support(x)
        lo[s] = min(lo.get(s, w[x]), w[x])
        hi[s] = max(hi.get(s, w[x]), w[x])
    rs, rs_wit = True, None
    for s in hi:
        for t in lo:
            if s <= t and hi[s] > lo[t]:
                rs, rs_wit = False, (sorted(s), sorted(t))
                break
        if not rs:
            break
    wit = {}
    if ap_wit is not None:
        wit["ap"] = ap_wit
    if rs_wit is not None:
        wit["rs"] = rs_wit
    return WeightProperties(True, ap, rs, wit)


MAX_TABLE_POINTS = 5000


@dataclass
class AxiomReport:
    passed: bool
    points: int
    violation: str | None = None
    witness: tuple | None = None

    def __bool__(self):
        return self.passed


def check_metric_axioms(metric, points: Sequence | None = None, n: int | None = None, cap: int | None = None) -> AxiomReport:
    """Symmetry, positivity, identity and triangle inequality over all of ``points``.

    ``metric`` may be a :class:`Metric` or a plain ``dist(x, y)`` callable.
    """
    if points is None:
        points = metric.points(n, cap)
    points = [tuple(p) for p in points]
    check_space(len(points), cap, "point count")
    # the N x N table is held in memory
    check_space(len(points), MAX_TABLE_POINTS, "distance table")
    f = metric._raw_dist if isinstance(metric, Metric) else metric
    N = len(points)
    D = np.empty((N, N), dtype=np.int64)
    for i, x in enumerate(points):
        for j, y in enumerate(points):
            D[i, j] = f(x, y)
    diag = np.diag(D)
    bad = np.nonzero(diag != 0)[0]
    if bad.size:
        i = int(bad[0])
        return AxiomReport(False, N, "identity", (points[i],))
    off = D + np.eye(N, dtype=np.int64)
    bad = np.argwhere(off <= 0)
    if bad.size:
        i, j = map(int, bad[0])
        return AxiomReport(False, N, "positivity", (points[i], points[j]))
    bad = np.argwhere(D != D.T)
    if bad.size:
        i, j = map(int, bad[0])
        return AxiomReport(False, N, "symmetry", (points[i], points[j]))
    for k in range(N):
        viol = D > D[:, k : k + 1] + D[k : k + 1, :]
        if viol.any():
            i, j = map(int, np.argwhere(viol)[0])
            return AxiomReport(False, N, "triangle", (points[i], points[j], points[k]))
    return AxiomReport(True, N)


# ---------------------------------------------------------------------------
# Code invariants
# ---------------------------------------------------------------------------


def _code_words(code) -> list:
    return list(code.words) if isinstance(code, BlockCode) else [tuple(w) for w in code]


def minimum_distance(code, metric: Metric) -> int:
    words = [metric.validate(w) for w in _code_words(code)]
    if len(words) < 2:
        raise DomainError("minimum distance needs at least two codewords")
    return min(metric._raw_dist(x, y) for x, y in itertools.combinations(words, 2))


def _ambient(code, metric: Metric, cap: int | None) -> list:
    words = _code_words(code)
    n = len(words[0])
    if metric.domain == STRINGS:
        raise DomainError("packing radius needs a finite ambient space")
    return metric.points(n, cap)


def diameter(metric: Metric, n: int | None = None, cap: int | None = None) -> int:
    pts = metric.points(n, cap)
    if metric.weight_defined:
        return max(metric._weight(x) for x in pts)
    return int(distance_matrix(metric, pts).max())


def packing_radius(code, metric: Metric, cap: int | None = None) -> int:
    """Largest r such that radius-r balls around distinct codewords are disjoint.

    A single-codeword code gets the ambient diameter.
    """
    words = [metric.validate(w) for w in _code_words(code)]
    pts = _ambient(code, metric, cap)
    if len(words) == 1:
        return diameter(metric, len(words[0]), cap)
    D = distance_matrix(metric, pts, words)
    best = None
    for i, j in itertools.combinations(range(len(words)), 2):
        # smallest r at which B(r, c_i) and B(r, c_j) meet
        meet = int(np.maximum(D[:, i], D[:, j]).min())
        best = meet if best is None else min(best, meet)
    return best - 1


def ball(metric: Metric, center, r: int, cap: int | None = None) -> list:
    center = metric.validate(center)
    return [y for y in metric.points(len(center), cap) if metric._raw_dist(center, y) <= r]


def _center(metric: Metric, n: int | None, center):
    if center is not None:
        return metric.validate(center)
    if not metric.weight_defined:
        raise DomainError(f"metric {metric.name!r} is not weight-defined; a center is required")
    return (0,) * metric.length(n)


def ball_size(metric: Metric, n: int | None, r: int, center=None, cap: int | None = None) -> int:
    c = _center(metric, n, center)
    return sum(1 for y in metric.points(len(c), cap) if metric._raw_dist(c, y) <= r)


def sphere_size(metric: Metric, n: int | None, r: int, center=None, cap: int | None = None) -> int:
    c = _center(metric, n, center)
    return sum(1 for y in metric.points(len(c), cap) if metric._raw_dist(c, y) == r)


def weight_enumerator(code, metric: Metric) -> list[int]:
    """``A_i`` = number of codewords of weight ``i``, for ``i`` up to the largest codeword weight."""
    if not metric.weight_defined:
        raise DomainError(f"metric {metric.name!r} is not weight-defined")
    ws = [metric.weight(c) for c in _code_words(code)]
    A = [0] * (max(ws) + 1)
    for w in ws:
        A[w] += 1
    return A


@dataclass
class SpherePacking:
    radius: int
    covered: int
    space: int
    holds: bool
    perfect: bool


def sphere_packing_check(code, metric: Metric, cap: int | None = None) -> SpherePacking:
    words = [metric.validate(w) for w in _code_words(code)]
    pts = _ambient(code, metric, cap)
    R = packing_radius(code, metric, cap)
    covered = sum(sum(1 for y in pts if metric._raw_dist(c, y) <= R) for c in words)
    # a one-word code only "packs" by the diameter convention; never call it perfect
    perfect = covered == len(pts) and len(words) >= 2
    return SpherePacking(R, covered, len(pts), covered <= len(pts), perfect)


def decode_min_dist(code, metric: Metric, received) -> list:
    """All codewords at minimum distance from ``received`` (no tie-breaking), sorted."""
    x = metric.validate(received)
    words = _code_words(code)
    ds = [metric.dist(x, c) for c in words]
    m = min(ds)
    return sorted(c for c, d in zip(words, ds) if d == m)


# ---------------------------------------------------------------------------
# Channels and matchedness
# ---------------------------------------------------------------------------

REL_TOL = 1e-12


def _is_exact(v) -> bool:
    return isinstance(v, (int, Fraction))


class Channel:
    """Memoryless channel; ``matrix[a][b]`` is the probability of receiving ``b`` when ``a`` is sent."""

    def __init__(self, matrix):
        rows = [list(r) for r in matrix]
        q = len(rows)
        if q < 2 or any(len(r) != q for r in rows):
            raise DomainError("transition matrix must be square with q >= 2")
        for r in rows:
            for v in r:
                if not 0 <= v <= 1:
                    raise DomainError(f"transition probability {v} outside [0, 1]")
            s = sum(r)
            if all(_is_exact(v) for v in r):
                if s != 1:
                    raise DomainError(f"row {r} sums to {s}, not 1")
            elif abs(s - 1) > 1e-12:
                raise DomainError(f"row {r} sums to {s}, not 1")
        self.q = q
        self.matrix = tuple(tuple(r) for r in rows)
        self.exact = all(_is_exact(v) for r in rows for v in r)

    def __repr__(self):
        return f"Channel({[list(r) for r in self.matrix]})"

    def likelihood(self, sent, received):
        p = Fraction(1) if self.exact else 1.0
        for a, b in zip(sent, received):
            p *= self.matrix[a][b]
        return p


def bsc(rho) -> Channel:
    return Channel([[1 - rho, rho], [rho, 1 - rho]])


def binary_asymmetric(rho01, rho10) -> Channel:
    """``rho01 = Prob(0 received | 1 sent)``, ``rho10 = Prob(1 received | 0 sent)``."""
    return Channel([[1 - rho10, rho10], [rho01, 1 - rho01]])


def _same(a, b, exact: bool) -> bool:
    if exact:
        return a == b
    return math.isclose(a, b, rel_tol=REL_TOL, abs_tol=0.0)


def _order_witness(keys, vals, exact: bool = True, decreasing: bool = False):
    """Indices ``(i, j)`` where ``vals`` fails to follow the order of ``keys``, or None.

    Order-equivalent means: keys tie iff vals tie, and keys[i] < keys[j] iff
    vals[i] < vals[j] (or > when ``decreasing``).
    """
    order = sorted(range(len(keys)), key=lambda i: keys[i])
    groups: list[list[int]] = []
    for i in order:
        if groups and keys[groups[-1][0]] == keys[i]:
            groups[-1].append(i)
        else:
            groups.append([i])
    for g in groups:
        for i in g[1:]:
            if not _same(vals[g[0]], vals[i], exact):
                return g[0], i
    for g, h in zip(groups, groups[1:]):
        a, b = vals[g[0]], vals[h[0]]
        if _same(a, b, exact) or ((a < b) if decreasing else (a > b)):
            return g[0], h[0]
    # strict monotonicity between neighbouring groups is transitive, so we are done
    return None


@dataclass
class MatchReport:
    matched: bool
    witness: tuple | None = None

    def __bool__(self):
        return self.matched


def is_matched(metric: Metric, channel: Channel, n: int, cap: int | None = None) -> MatchReport:
    """Pairwise order-equivalence of distance and likelihood over all (received, c1, c2)."""
    if metric.q is not None and metric.q != channel.q:
        raise DomainError(f"metric alphabet {metric.q} differs from channel alphabet {channel.q}")
    pts = metric.points(n, cap)
    for x in pts:
        ds = [metric._raw_dist(x, c) for c in pts]
        ps = [channel.likelihood(c, x) for c in pts]
        wit = _order_witness(ds, ps, channel.exact, decreasing=True)
        if wit is not None:
            return MatchReport(False, (x, pts[wit[0]], pts[wit[1]]))
    return MatchReport(True)


def metrics_decoding_equivalent(m1: Metric, m2: Metric, n: int | None = None, points=None, cap: int | None = None) -> MatchReport:
    """Do ``m1`` and ``m2`` order every (x, c1, c2) the same way (strict and ties)?"""
    pts = [tuple(p) for p in points] if points is not None else m1.points(n, cap)
    for x in pts:
        a = [m1._raw_dist(x, c) for c in pts]
        b = [m2._raw_dist(x, c) for c in pts]
        wit = _order_witness(a, b)
        if wit is not None:
            return MatchReport(False, (x, pts[wit[0]], pts[wit[1]]))
    return MatchReport(True)
