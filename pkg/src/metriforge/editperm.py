"""Edit distances on variable-length strings and distances on permutations.

Permutations are 1-based image tuples ``(sigma(1), ..., sigma(n))``.  The
product follows the convention ``(pi o sigma)(i) = sigma(pi(i))``.
"""

from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from . import mis
from .config import DomainError, check_space
from .core import PERMUTATIONS, STRINGS, Metric
from .fields import PLAIN_SET, Alphabet

OPS = ("I", "D", "S", "T")


def parse_ops(ops) -> frozenset:
    s = frozenset(str(ops).upper()) if isinstance(ops, str) else frozenset(o.upper() for o in ops)
    if not s <= set(OPS):
        raise DomainError(f"unknown edit operations {sorted(s - set(OPS))}")
    if not {"I", "D"} <= s:
        raise DomainError("edit operation sets must contain I and D")
    return s


def ops_name(ops) -> str:
    s = parse_ops(ops)
    return "".join(o for o in OPS if o in s)


# ---------------------------------------------------------------------------
# Edit distances
# ---------------------------------------------------------------------------


def _indel_dp(x, y) -> int:
    m, n = len(x), len(y)
    prev = list(range(n + 1))
    for i in range(1, m + 1):
        cur = [i] + [0] * n
        for j in range(1, n + 1):
            if x[i - 1] == y[j - 1]:
                cur[j] = prev[j - 1]
            else:
                cur[j] = 1 + min(prev[j], cur[j - 1])
        prev = cur
    return prev[n]


def _levenshtein_dp(x, y) -> int:
    m, n = len(x), len(y)
    prev = list(range(n + 1))
    for i in range(1, m + 1):
        cur = [i] + [0] * n
        for j in range(1, n + 1):
            cur[j] = min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (x[i - 1] != y[j - 1]))
        prev = cur
    return prev[n]


def _neighbours(s: tuple, ops: frozenset, alphabet) -> set:
    out = set()
    L = len(s)
    for i in range(L):
        out.add(s[:i] + s[i + 1 :])
    for i in range(L + 1):
        for a in alphabet:
            out.add(s[:i] + (a,) + s[i:])
    if "S" in ops:
        for i in range(L):
            for a in alphabet:
                if a != s[i]:
                    out.add(s[:i] + (a,) + s[i + 1 :])
    if "T" in ops:
        for i in range(L - 1):
            if s[i] != s[i + 1]:
                out.add(s[:i] + (s[i + 1], s[i]) + s[i + 2 :])
    return out


def _graph_distance(x: tuple, y: tuple, ops: frozenset) -> int:
    """Bidirectional BFS on the edit graph (all operations are self-inverse as a set)."""
    if x == y:
        return 0
    # symbols outside x and y never shorten a path, so the search stays on them
    alphabet = sorted(set(x) | set(y), key=repr)
    dist_a, dist_b = {x: 0}, {y: 0}
    front_a, front_b = [x], [y]
    while front_a and front_b:
        if len(front_a) > len(front_b):
            dist_a, dist_b, front_a, front_b = dist_b, dist_a, front_b, front_a
        nxt = []
        best = None
        for s in front_a:
            d = dist_a[s] + 1
            for t in _neighbours(s, ops, alphabet):
                if t in dist_b:
                    tot = d + dist_b[t]
                    best = tot if best is None else min(best, tot)
                if t not in dist_a:
                    dist_a[t] = d
                    nxt.append(t)
        if best is not None:
            return best
        front_a = nxt
    raise AssertionError("edit graph is connected")


def edit_dist(ops, x, y) -> int:
    ops = parse_ops(ops)
    x, y = tuple(x), tuple(y)
    if "T" in ops:
        return _graph_distance(x, y, ops)
    if "S" in ops:
        return _levenshtein_dp(x, y)
    return _indel_dp(x, y)


def lcs_length(x, y) -> int:
    x, y = tuple(x), tuple(y)
    prev = [0] * (len(y) + 1)
    for a in x:
        cur = [0]
        for j, b in enumerate(y):
            cur.append(prev[j] + 1 if a == b else max(prev[j + 1], cur[j]))
        prev = cur
    return prev[-1]


def d_id_via_lcs(x, y) -> int:
    return len(x) + len(y) - 2 * lcs_length(x, y)


def d_star_id(x, y) -> int:
    """``2e`` with ``e`` the least number such that ``e`` insertions and ``e`` deletions suffice."""
    r = lcs_length(x, y)
    return 2 * max(len(x) - r, len(y) - r)


def edit_metric(ops="ID", q: int | None = None) -> Metric:
    ops = parse_ops(ops)
    F = Alphabet(q, PLAIN_SET) if q is not None else None
    return Metric(
        f"edit:{ops_name(ops)}",
        dist=lambda x, y: edit_dist(ops, x, y),
        alphabet=F,
        domain=STRINGS,
        params={"ops": ops_name(ops), **({"q": q} if q else {})},
    )


def edit_star_metric(q: int | None = None) -> Metric:
    F = Alphabet(q, PLAIN_SET) if q is not None else None
    return Metric("edit:ID*", dist=d_star_id, alphabet=F, domain=STRINGS, params={"q": q} if q else {})


# ---------------------------------------------------------------------------
# Correction capability
# ---------------------------------------------------------------------------


def _error_ball(c: tuple, ins: int, dels: int, alphabet) -> set:
    """Strings reachable from ``c`` with at most ``ins`` insertions and ``dels`` deletions."""
    seen = {(c, 0, 0)}
    todo = deque(seen)
    out = {c}
    while todo:
        s, i, d = todo.popleft()
        nxt = []
        if d < dels:
            nxt += [(s[:k] + s[k + 1 :], i, d + 1) for k in range(len(s))]
        if i < ins:
            nxt += [(s[:k] + (a,) + s[k:], i + 1, d) for k in range(len(s) + 1) for a in alphabet]
        for st in nxt:
            if st not in seen:
                seen.add(st)
                out.add(st[0])
                todo.append(st)
    return out


def _indel_ball(c: tuple, e: int, alphabet) -> set:
    """Strings reachable with at most ``e`` insertions/deletions in total."""
    ball = {c}
    frontier = {c}
    for _ in range(e):
        nxt = set()
        for s in frontier:
            nxt |= {s[:k] + s[k + 1 :] for k in range(len(s))}
            nxt |= {s[:k] + (a,) + s[k:] for k in range(len(s) + 1) for a in alphabet}
        frontier = nxt - ball
        ball |= nxt
    return ball


@dataclass
class CorrectionReport:
    criterion: bool
    confusability: bool
    distance: int | None
    witness: tuple | None = None

    @property
    def agree(self) -> bool:
        return self.criterion == self.confusability


def _disjoint(balls: dict) -> tuple | None:
    owner: dict = {}
    for c, B in balls.items():
        for z in B:
            other = owner.setdefault(z, c)
            if other != c:
                return (other, c, z)
    return None


def correction_capability(code, e: int | None = None, ins: int | None = None, dels: int | None = None, q: int = 2) -> CorrectionReport:
    """Compare the distance criterion with direct edit-ball disjointness.

    Give ``e`` (at most ``e`` insertions/deletions in any mix, criterion
    ``d_ID(C) > 2e``) or both ``ins`` and ``dels`` (criterion ``d*_ID(C) > 2(ins + dels)``).
    """
    words = [tuple(w) for w in code]
    if len(set(words)) != len(words) or not words:
        raise DomainError("code must be a nonempty set of distinct strings")
    alphabet = tuple(range(q))
    for w in words:
        if any(a not in alphabet for a in w):
            raise DomainError(f"string {w} leaves the alphabet of size {q}")
    if e is not None:
        d = min((d_id_via_lcs(a, b) for a, b in itertools.combinations(words, 2)), default=None)
        crit = d is None or d > 2 * e
        wit = _disjoint({c: _indel_ball(c, e, alphabet) for c in words})
    elif ins is not None and dels is not None:
        d = min((d_star_id(a, b) for a, b in itertools.combinations(words, 2)), default=None)
        crit = d is None or d > 2 * (ins + dels)
        wit = _disjoint({c: _error_ball(c, ins, dels, alphabet) for c in words})
    else:
        raise DomainError("give e, or both ins and dels")
    return CorrectionReport(crit, wit is None, d, wit)


# ---------------------------------------------------------------------------
# Edit-space isometries
# ---------------------------------------------------------------------------


def reversal(s) -> tuple:
    return tuple(reversed(tuple(s)))


def alphabet_map(perm):
    perm = tuple(perm)
    return lambda s: tuple(perm[a] for a in s)


@dataclass
class EditIsometryReport:
    maps: int
    all_preserve: bool
    distinct: bool
    witness: tuple | None = None

    def __bool__(self):
        return self.all_preserve and self.distinct


def edit_isometry_check(max_len: int = 4, q: int = 2, ops="IDS", cap: int | None = None) -> EditIsometryReport:
    """Every map of ``<gamma> x S_q`` preserves ``d_E`` on strings of length ``<= max_len``,
    and the ``2 q!`` maps are pairwise distinct there."""
    ops = parse_ops(ops)
    strings = [s for k in range(max_len + 1) for s in itertools.product(range(q), repeat=k)]
    check_space(len(strings) ** 2, cap, "string pairs")
    D = {(a, b): edit_dist(ops, a, b) for a in strings for b in strings}
    maps = []
    for rev in (False, True):
        for perm in itertools.permutations(range(q)):
            f = alphabet_map(perm)
            maps.append(((rev, perm), (lambda s, f=f: reversal(f(s))) if rev else f))
    for name, f in maps:
        for a in strings:
            fa = f(a)
            for b in strings:
                if D[(fa, f(b))] != D[(a, b)]:
                    return EditIsometryReport(len(maps), False, True, (name, a, b))
    images = {tuple(f(s) for s in strings) for _, f in maps}
    return EditIsometryReport(len(maps), True, len(images) == len(maps))


# ---------------------------------------------------------------------------
# Bounds and exact A
# ---------------------------------------------------------------------------


def levenshtein_qary_bounds(n: int, t: int, q: int = 2) -> tuple[Fraction, Fraction]:
    """Lower and upper bounds on ``A_ID(n, t)_q``."""
    if n < 1 or t < 0 or t > n or q < 2:
        raise DomainError("need n >= 1, 0 <= t <= n, q >= 2")
    s = sum(math.comb(n, i) * (q - 1) ** i for i in range(t + 1))
    lower = Fraction(q ** (n + t), s * s)
    upper = Fraction(q ** (n - t), sum(math.comb(n - t, i) for i in range(t + 1)))
    upper += sum(math.comb(n - 1, i) * (q - 1) ** i for i in range(n - 1))
    return lower, upper


def cullina_bound(n: int, a: int, b: int, q: int = 2) -> Fraction:
    """Asymptotic upper bound for codes correcting ``a`` deletions and ``b`` insertions."""
    if a < 0 or b < 0 or a + b < 1 or a + b > n or q < 2:
        raise DomainError("need a, b >= 0, 1 <= a + b <= n, q >= 2")
    return Fraction(q ** (n + b), (q - 1) ** (a + b) * math.comb(n, a + b) * math.comb(a + b, b))


def ids_single_bounds(n: int) -> tuple[Fraction, Fraction]:
    """``2^(n-1)/n <= A_IDS(n, 1) <= 2^n/(n+1)`` (binary)."""
    if n < 1:
        raise DomainError("n must be positive")
    return Fraction(2 ** (n - 1), n), Fraction(2**n, n + 1)


def ids_recursion_bound(a_prev: int, q: int = 2) -> int:
    """``A_IDS(n, t)_q <= q * A_IDS(n-1, t)_q``."""
    return q * a_prev


EDIT_BOUNDS = ("levenshtein", "cullina", "ids1", "recursion")


def edit_bounds(which: str, **kw):
    if which == "levenshtein":
        return levenshtein_qary_bounds(kw["n"], kw["t"], kw.get("q", 2))
    if which == "cullina":
        return cullina_bound(kw["n"], kw["a"], kw["b"], kw.get("q", 2))
    if which == "ids1":
        if kw.get("q", 2) != 2:
            raise DomainError("the single-error IDS bounds are stated for binary codes")
        return ids_single_bounds(kw["n"])
    if which == "recursion":
        return ids_recursion_bound(kw["a_prev"], kw.get("q", 2))
    raise DomainError(f"unknown edit bound {which!r}; choose from {EDIT_BOUNDS}")


def max_code(points: list, dist, d: int) -> list:
    """Largest subset of ``points`` with pairwise distance ``>= d`` (exact)."""
    N = len(points)
    edges = [(i, j) for i in range(N) for j in range(i + 1, N) if dist(points[i], points[j]) < d]
    S = mis.max_independent_set(mis.adjacency_from_pairs(N, edges))
    return [points[i] for i in S]


@dataclass
class ExactA:
    value: int
    code: list = field(default_factory=list)


def exact_A(n: int, t: int, ops="ID", q: int = 2, cap: int | None = None) -> ExactA:
    """Largest length-``n`` code whose radius-``t`` edit balls are pairwise disjoint.

    Confusable pairs are those with ``d_E <= 2t``; the answer is an exact
    maximum independent set of that graph.
    """
    ops = parse_ops(ops)
    if n < 0 or t < 0:
        raise DomainError("need n >= 0 and t >= 0")
    check_space(q**n, cap, "string space")
    check_space(q**n, 4096, "confusability graph")
    pts = list(itertools.product(range(q), repeat=n))
    code = max_code(pts, lambda a, b: edit_dist(ops, a, b), 2 * t + 1)
    return ExactA(len(code), code)


# ---------------------------------------------------------------------------
# Permutations
# ---------------------------------------------------------------------------


def check_perm(s) -> tuple[int, ...]:
    s = tuple(int(a) for a in s)
    if sorted(s) != list(range(1, len(s) + 1)):
        raise DomainError(f"{list(s)} is not a permutation of [1..{len(s)}]")
    return s


def compose(pi, sigma) -> tuple[int, ...]:
    """``(pi o sigma)(i) = sigma(pi(i))``."""
    pi, sigma = check_perm(pi), check_perm(sigma)
    if len(pi) != len(sigma):
        raise DomainError("permutations of different sizes")
    return tuple(sigma[p - 1] for p in pi)


def inverse(sigma) -> tuple[int, ...]:
    sigma = check_perm(sigma)
    inv = [0] * len(sigma)
    for i, s in enumerate(sigma, 1):
        inv[s - 1] = i
    return tuple(inv)


def _same_size(s, p):
    s, p = check_perm(s), check_perm(p)
    if len(s) != len(p):
        raise DomainError(f"size mismatch: {len(s)} vs {len(p)}")
    return s, p


def kendall_tau(sigma, pi) -> int:
    """``|{(i, j) : sigma^-1(i) < sigma^-1(j), pi^-1(i) > pi^-1(j)}|``."""
    sigma, pi = _same_size(sigma, pi)
    si, pinv = inverse(sigma), inverse(pi)
    n = len(sigma)
    return sum(
        1
        for i in range(n)
        for j in range(n)
        if si[i] < si[j] and pinv[i] > pinv[j]
    )


def inversion_table_literal(sigma) -> tuple[int, ...]:
    """``x(i) = |{j <= i : sigma(j) > sigma(i+1)}|`` for ``i = 1..n-1``, read on the image list."""
    sigma = check_perm(sigma)
    return tuple(sum(1 for j in range(i + 1) if sigma[j] > sigma[i + 1]) for i in range(len(sigma) - 1))


def inversion_table(sigma) -> tuple[int, ...]:
    """The same count taken on ``sigma^-1``: ``x(i)`` is the number of values below ``i+1``
    placed after ``i+1``.  ``0 <= x(i) <= i``, and an adjacent swap moves exactly one entry by 1,
    which is what makes ``d_tau >= d_l1`` hold."""
    return inversion_table_literal(inverse(sigma))


def perm_l1(sigma, pi) -> int:
    sigma, pi = _same_size(sigma, pi)
    return sum(abs(a - b) for a, b in zip(inversion_table(sigma), inversion_table(pi)))


def perm_l1_literal(sigma, pi) -> int:
    sigma, pi = _same_size(sigma, pi)
    return sum(abs(a - b) for a, b in zip(inversion_table_literal(sigma), inversion_table_literal(pi)))


def kendall_metric(n: int | None = None) -> Metric:
    return Metric("kendall", dist=kendall_tau, n=n, domain=PERMUTATIONS)


def perm_l1_metric(n: int | None = None) -> Metric:
    return Metric("perm-l1", dist=perm_l1, n=n, domain=PERMUTATIONS)


@lru_cache(maxsize=None)
def kendall_ball_sizes(n: int) -> tuple[int, ...]:
    """``|B(r)|`` around the identity for ``r = 0..n(n-1)/2``, by enumeration (n <= 8)."""
    if n < 1 or n > 8:
        raise DomainError("Kendall ball enumeration supports 1 <= n <= 8")
    ident = tuple(range(1, n + 1))
    counts = [0] * (n * (n - 1) // 2 + 1)
    for s in itertools.permutations(ident):
        counts[kendall_tau(ident, s)] += 1
    return tuple(itertools.accumulate(counts))


def kendall_singleton_bound(n: int, t: int) -> int:
    """``floor(3/2 + sqrt(n(n-1) - 2t + 1/4))!`` for ``n - 1 < t < n(n-1)/2``."""
    if not (n - 1 < t < n * (n - 1) / 2):
        raise DomainError(f"t must satisfy {n - 1} < t < {n * (n - 1) / 2:g}")
    K = 4 * n * (n - 1) - 8 * t + 1  # sqrt(n(n-1) - 2t + 1/4) = sqrt(K)/2
    return math.factorial((3 + math.isqrt(K)) // 2)


def kendall_sphere_bounds(n: int, r: int) -> tuple[Fraction, Fraction]:
    """``n!/|B(2r)| <= A(n, 2r+1) <= n!/|B(r)|``."""
    if r < 0:
        raise DomainError("radius must be nonnegative")
    balls = kendall_ball_sizes(n)
    top = len(balls) - 1
    f = math.factorial(n)
    return Fraction(f, balls[min(2 * r, top)]), Fraction(f, balls[min(r, top)])


def kendall_bounds(n: int, t: int | None = None, r: int | None = None) -> dict:
    out: dict = {}
    if t is not None:
        out["singleton"] = kendall_singleton_bound(n, t)
    if r is not None:
        lo, hi = kendall_sphere_bounds(n, r)
        out["sphere_lower"], out["sphere_upper"] = lo, hi
    if not out:
        raise DomainError("give t (Singleton-type) and/or r (sphere packing)")
    return out


def exact_kendall_A(n: int, d: int) -> ExactA:
    pts = list(itertools.permutations(range(1, n + 1)))
    check_space(len(pts), 720, "permutation confusability graph")
    code = max_code(pts, kendall_tau, d)
    return ExactA(len(code), code)
