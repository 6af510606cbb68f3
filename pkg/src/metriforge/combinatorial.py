"""Combinatorial (covering) metrics: block, burst and 2D-burst specializations,
the block MacWilliams transform and the linear isometry group G_F x| K_M."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache

from . import linalg
from .config import DomainError, SpaceTooLarge, check_space
from .core import BlockCode, Metric, minimum_distance
from .fields import Alphabet, support


@dataclass(frozen=True, eq=False)
class Covering:
    """Basic sets ``A_1..A_m`` covering ``{0..n-1}`` (0-based internally)."""

    n: int
    sets: tuple

    def __post_init__(self):
        seen, clean = set(), []
        for A in self.sets:
            A = frozenset(int(i) for i in A)
            if not A:
                raise DomainError("basic sets must be nonempty")
            if not all(0 <= i < self.n for i in A):
                raise DomainError(f"basic set {sorted(A)} leaves [0, {self.n})")
            if A not in seen:
                seen.add(A)
                clean.append(A)
        if set().union(*clean) != set(range(self.n)):
            raise DomainError("basic sets do not cover every position")
        object.__setattr__(self, "sets", tuple(clean))

    @classmethod
    def from_one_based(cls, n: int, sets) -> "Covering":
        return cls(n, tuple(frozenset(i - 1 for i in A) for A in sets))

    @property
    def m(self) -> int:
        return len(self.sets)

    @cached_property
    def masks(self) -> tuple[int, ...]:
        return tuple(sum(1 << i for i in A) for A in self.sets)

    @cached_property
    def _cover(self):
        masks = self.masks

        @lru_cache(maxsize=None)
        def f(rem: int) -> int:
            if rem == 0:
                return 0
            low = rem & -rem
            # branch on the lowest uncovered position; skip dominated choices
            opts = sorted({s & rem for s in masks if s & low}, key=lambda s: -bin(s).count("1"))
            kept = [s for s in opts if not any(s != t and s & t == s for t in opts)]
            return 1 + min(f(rem & ~s) for s in kept)

        return f

    def min_cover(self, positions) -> int:
        """Fewest basic sets whose union contains ``positions``."""
        mask = 0
        for i in positions:
            mask |= 1 << i
        return self._cover(mask)

    @cached_property
    def cover_number(self) -> int:
        return self.min_cover(range(self.n))

    def weight(self, x) -> int:
        return comb_weight(self, x)

    def metric(self, q: int | Alphabet = 2, name: str = "combinatorial") -> Metric:
        F = q if isinstance(q, Alphabet) else Alphabet(q)
        return Metric(
            name,
            weight=self.weight,
            alphabet=F,
            n=self.n,
            params={"covering": [sorted(i + 1 for i in A) for A in self.sets], "q": F.q},
        )

    def is_partition(self) -> bool:
        return sum(len(A) for A in self.sets) == self.n


def comb_weight(cov: Covering, x) -> int:
    if len(x) != cov.n:
        raise DomainError(f"expected length {cov.n}, got {len(x)}")
    return cov.min_cover(support(x))


def singleton_covering(n: int) -> Covering:
    return Covering(n, tuple(frozenset([i]) for i in range(n)))


def partition_covering(sizes) -> Covering:
    sets, start = [], 0
    for s in sizes:
        sets.append(frozenset(range(start, start + s)))
        start += s
    return Covering(start, tuple(sets))


def burst_covering(n: int, b: int, cyclic: bool = False) -> Covering:
    """All runs of ``b`` consecutive positions (wrapping mod ``n`` when cyclic)."""
    if not 1 <= b <= n:
        raise DomainError(f"burst length must satisfy 1 <= b <= n, got b={b}, n={n}")
    starts = range(n) if cyclic else range(n - b + 1)
    return Covering(n, tuple(frozenset((s + j) % n for j in range(b)) for s in starts))


def burst2d_covering(n1: int, n2: int, b1: int, b2: int) -> Covering:
    """``(b2+1) x (b1+1)`` windows ``T_{r,s}`` on an ``n1 x n2`` array, indices mod (n1, n2).

    Position ``(r, s)`` is coordinate ``r * n2 + s``.
    """
    if min(n1, n2) < 1 or min(b1, b2) < 0:
        raise DomainError("invalid 2D burst parameters")
    sets = []
    for r in range(n1):
        for s in range(n2):
            sets.append(
                frozenset(((r + i) % n1) * n2 + (s + j) % n2 for i in range(b2 + 1) for j in range(b1 + 1))
            )
    return Covering(n1 * n2, tuple(sets))


# ---------------------------------------------------------------------------
# Bounds and duality
# ---------------------------------------------------------------------------


@dataclass
class CombSingleton:
    distance: int
    cover_number: int
    exact_lhs: Fraction
    lhs: int
    rhs: int
    holds: bool


def comb_singleton_check(code: BlockCode, cov: Covering) -> CombSingleton:
    """``ceil(n (d_F(C) - 1) / D) <= n - k``."""
    if not code.is_linear:
        raise DomainError("the combinatorial Singleton bound is for linear codes")
    if code.n != cov.n:
        raise DomainError("code length differs from covering length")
    k = code.k
    if k == 0:
        raise DomainError("minimum distance undefined for the zero code")
    d = min(comb_weight(cov, c) for c in code.words if any(c))
    D = cov.cover_number
    exact = Fraction(cov.n * (d - 1), D)
    lhs = math.ceil(exact)
    return CombSingleton(d, D, exact, lhs, cov.n - k, lhs <= cov.n - k)


def admits_macwilliams(cov: Covering) -> bool:
    sizes = {len(A) for A in cov.sets}
    return len(sizes) == 1 and cov.is_partition()


@dataclass
class BlockSingleton:
    distance: int
    redundancy: int
    ascending_sum: int
    descending_sum: int
    holds: bool
    holds_descending: bool


def block_singleton_check(code: BlockCode, cov: Covering) -> BlockSingleton:
    """``n - k >= n_1 + ... + n_{d-1}`` for a block (partition) metric.

    ``holds`` uses the block sizes sorted ascending (the weakest form);
    ``holds_descending`` reports the strongest ordering.
    """
    if not cov.is_partition():
        raise DomainError("block Singleton bound needs a partition")
    if not code.is_linear:
        raise DomainError("block Singleton bound is for linear codes")
    k = code.k
    if k == 0:
        raise DomainError("minimum distance undefined for the zero code")
    d = min(comb_weight(cov, c) for c in code.words if any(c))
    sizes = sorted(len(A) for A in cov.sets)
    asc = sum(sizes[: d - 1])
    desc = sum(sorted(sizes, reverse=True)[: d - 1])
    red = code.n - k
    return BlockSingleton(d, red, asc, desc, red >= asc, red >= desc)


def block_enumerator(code: BlockCode, cov: Covering) -> list[int]:
    """Block-weight distribution padded to ``m + 1`` entries."""
    A = [0] * (cov.m + 1)
    for c in code.words:
        A[comb_weight(cov, c)] += 1
    return A


def _poly_mul(a: list, b: list) -> list:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def block_macwilliams_transform(enumerator, q: int, r: int, m: int, code_size: int) -> list:
    """Dual block-weight enumerator from ``f_{C^T}(x,y) = f_C(y - x, y + (q^r - 1) x) / |C|``.

    ``enumerator[w]`` counts codewords with ``w`` nonzero blocks (``x`` marks
    weight, ``y`` its complement).  Returns exact integers (Fractions if the
    input is not a genuine linear-code enumerator).
    """
    A = list(enumerator)
    if len(A) > m + 1:
        raise DomainError(f"enumerator has {len(A)} terms for m={m} blocks")
    if sum(A) != code_size:
        raise DomainError(f"enumerator sums to {sum(A)}, code size is {code_size}")
    if code_size <= 0:
        raise DomainError("code size must be positive")
    A += [0] * (m + 1 - len(A))
    Q = q**r
    # polynomials in x (homogeneous in x, y): coefficient list indexed by power of x
    weight_sub = [1, -1]  # y - x
    comp_sub = [1, Q - 1]  # y + (Q-1) x
    total = [0] * (m + 1)
    for w, a in enumerate(A):
        if not a:
            continue
        poly = [1]
        for _ in range(w):
            poly = _poly_mul(poly, weight_sub)
        for _ in range(m - w):
            poly = _poly_mul(poly, comp_sub)
        for j, c in enumerate(poly):
            total[j] += a * c
    out = [Fraction(t, code_size) for t in total]
    if all(v.denominator == 1 for v in out):
        return [int(v) for v in out]
    return out


# ---------------------------------------------------------------------------
# Burst correction
# ---------------------------------------------------------------------------


def _unions(cov: Covering, k: int) -> set:
    out = {frozenset()}
    for j in range(1, k + 1):
        for I in itertools.combinations(cov.sets, j):
            out.add(frozenset().union(*I))
    return out


def _patterns(F: Alphabet, n: int, unions) -> set:
    pats = set()
    for U in unions:
        U = sorted(U)
        for vals in itertools.product(range(F.q), repeat=len(U)):
            e = [0] * n
            for i, v in zip(U, vals):
                e[i] = v
            pats.add(tuple(e))
    return pats


def _confusable(code: BlockCode, patterns) -> tuple | None:
    F = code.alphabet
    seen: dict = {}
    for c in code.words:
        for e in patterns:
            y = F.vadd(c, e)
            other = seen.setdefault(y, c)
            if other != c:
                return (other, c, y)
    return None


@dataclass
class BurstReport:
    distance: int
    error_bursts: int
    erasure_bursts: int
    corrects_errors: bool
    corrects_erasures: bool
    single_burst_correctable: bool
    single_burst_iff_holds: bool
    witness: dict = field(default_factory=dict)


def burst_capability_check(code: BlockCode, b: int, cyclic: bool = False, cap: int | None = None) -> BurstReport:
    """Exhaustive check of burst error / erasure correction against ``d_F`` for bursts of length ``b``.

    Errors: any pattern covered by ``floor((d-1)/2)`` bursts must leave codeword
    neighbourhoods disjoint.  Erasures: codewords must stay distinct after
    erasing any union of ``d - 1`` bursts.  Also reports whether single-burst
    correctability coincides with ``d >= 3``.
    """
    check_space(code.alphabet.q**code.n, cap)
    cov = burst_covering(code.n, b, cyclic)
    metric = cov.metric(code.alphabet)
    d = minimum_distance(code, metric)
    t = (d - 1) // 2
    wit: dict = {}
    clash = _confusable(code, _patterns(code.alphabet, code.n, _unions(cov, t)))
    if clash:
        wit["errors"] = clash
    erase_ok = True
    for U in _unions(cov, d - 1):
        keep = [i for i in range(code.n) if i not in U]
        proj = {tuple(c[i] for i in keep) for c in code.words}
        if len(proj) != len(code.words):
            erase_ok = False
            wit["erasures"] = sorted(U)
            break
    single = _confusable(code, _patterns(code.alphabet, code.n, _unions(cov, 1)))
    if single:
        wit["single"] = single
    single_ok = single is None
    return BurstReport(d, t, d - 1, clash is None, erase_ok, single_ok, single_ok == (d >= 3), wit)


# ---------------------------------------------------------------------------
# Isometries
# ---------------------------------------------------------------------------


def apply_permutation(sigma, x) -> tuple:
    """``T_sigma(x) = x_{sigma(1)} ... x_{sigma(n)}`` with 0-based ``sigma``."""
    return tuple(x[s] for s in sigma)


def covering_automorphisms(cov: Covering, max_n: int = 8) -> list[tuple[int, ...]]:
    """All permutations (0-based image tuples) mapping every basic set onto a basic set."""
    if cov.n > max_n:
        raise SpaceTooLarge(math.factorial(cov.n), math.factorial(max_n), "permutation search")
    family = set(cov.sets)
    out = []
    for sigma in itertools.permutations(range(cov.n)):
        if all(frozenset(sigma[i] for i in A) in family for A in cov.sets):
            out.append(sigma)
    return out


def is_group(perms) -> bool:
    """Closure under composition (a finite nonempty closed set of permutations is a group)."""
    S = set(map(tuple, perms))
    if not S:
        return False
    return all(tuple(a[i] for i in b) in S for a in S for b in S)


@dataclass(frozen=True)
class IncidenceStructure:
    classes: tuple  # sorted tuples of 0-based positions
    matrix: tuple  # s x m rows of 0/1

    @property
    def s(self) -> int:
        return len(self.classes)


def incidence_structure(cov: Covering) -> IncidenceStructure:
    sig: dict = {}
    for i in range(cov.n):
        key = tuple(j for j, A in enumerate(cov.sets) if i in A)
        sig.setdefault(key, []).append(i)
    classes = sorted((tuple(v) for v in sig.values()), key=lambda c: c[0])
    M = tuple(tuple(1 if set(c) <= A else 0 for A in cov.sets) for c in classes)
    return IncidenceStructure(tuple(classes), M)


def _allowed_block(inc: IncidenceStructure, i: int, j: int) -> bool:
    vi = {k for k, v in enumerate(inc.matrix[i]) if v}
    vj = {k for k, v in enumerate(inc.matrix[j]) if v}
    return vj <= vi


def respects_incidence(B, cov: Covering, q: int | Alphabet = 2) -> bool:
    """Does the ``n x n`` matrix ``B`` (acting as ``x -> B x``) respect the incidence matrix?"""
    F = q if isinstance(q, Alphabet) else Alphabet(q)
    inc = incidence_structure(cov)
    B = [tuple(r) for r in B]
    if len(B) != cov.n or any(len(r) != cov.n for r in B):
        raise DomainError(f"expected a {cov.n}x{cov.n} matrix")
    for i, ci in enumerate(inc.classes):
        for j, cj in enumerate(inc.classes):
            block = [[B[x][y] % F.q for y in cj] for x in ci]
            if i == j:
                if linalg.rank(F, block) != len(ci):
                    return False
            elif any(any(r) for r in block) and not _allowed_block(inc, i, j):
                return False
    return True


def incidence_group(cov: Covering, q: int | Alphabet = 2, limit: int | None = None):
    """Yield matrices of ``K_M`` in a fixed order (at most ``limit`` of them)."""
    F = q if isinstance(q, Alphabet) else Alphabet(q)
    inc = incidence_structure(cov)
    n = cov.n
    diag_choices = []
    for c in inc.classes:
        k = len(c)
        blocks = [
            vals
            for vals in itertools.product(range(F.q), repeat=k * k)
            if linalg.rank(F, [vals[r * k : (r + 1) * k] for r in range(k)]) == k
        ]
        diag_choices.append(blocks)
    free = [
        (x, y)
        for i, ci in enumerate(inc.classes)
        for j, cj in enumerate(inc.classes)
        if i != j and _allowed_block(inc, i, j)
        for x in ci
        for y in cj
    ]
    count = 0
    for diag in itertools.product(*diag_choices):
        for vals in itertools.product(range(F.q), repeat=len(free)):
            B = [[0] * n for _ in range(n)]
            for c, blk in zip(inc.classes, diag):
                k = len(c)
                for r in range(k):
                    for s in range(k):
                        B[c[r]][c[s]] = blk[r * k + s]
            for (x, y), v in zip(free, vals):
                B[x][y] = v
            yield tuple(map(tuple, B))
            count += 1
            if limit is not None and count >= limit:
                return


@dataclass
class IsometryReport:
    permutations: int
    matrices: int
    compositions: int
    all_preserve: bool
    witness: tuple | None = None

    def __bool__(self):
        return self.all_preserve


def _preserves(weight, F: Alphabet, L, pts) -> tuple | None:
    for x in pts:
        if weight(L(x)) != weight(x):
            return x
    return None


def verify_comb_isometries(cov: Covering, q: int = 3, samples: int | None = None, cap: int | None = None) -> IsometryReport:
    """Check that every ``T_sigma`` (sigma in G_F), every ``B`` in ``K_M`` and every
    product ``T_sigma o B`` preserves ``d_F`` on all of ``F_q^n``.

    ``samples`` caps how many ``K_M`` members are taken (enumeration order, deterministic).
    """
    F = Alphabet(q)
    check_space(F.q**cov.n, cap)
    pts = list(itertools.product(range(F.q), repeat=cov.n))
    metric = cov.metric(F)
    w = metric._weight
    perms = covering_automorphisms(cov)
    mats = list(incidence_group(cov, F, samples))
    for s in perms:
        bad = _preserves(w, F, lambda x, s=s: apply_permutation(s, x), pts)
        if bad is not None:
            return IsometryReport(len(perms), len(mats), 0, False, ("perm", s, bad))
    for B in mats:
        bad = _preserves(w, F, lambda x, B=B: linalg.mat_vec(F, B, x), pts)
        if bad is not None:
            return IsometryReport(len(perms), len(mats), 0, False, ("matrix", B, bad))
    comps = 0
    for s in perms:
        for B in mats:
            bad = _preserves(w, F, lambda x, s=s, B=B: apply_permutation(s, linalg.mat_vec(F, B, x)), pts)
            comps += 1
            if bad is not None:
                return IsometryReport(len(perms), len(mats), comps, False, ("product", s, B, bad))
    return IsometryReport(len(perms), len(mats), comps, True)
