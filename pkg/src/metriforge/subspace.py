"""Metrics generated by families of subspaces, projective metrics and parent codes."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

from . import linalg
from .config import DomainError, check_space
from .core import BlockCode, Metric, hamming, packing_radius, sphere_size
from .fields import Alphabet, hamming_weight


@dataclass(frozen=True, eq=False)
class SubspaceFamily:
    """Basic subspaces ``F_1..F_m`` of ``F_q^n``, each given by a basis."""

    field: Alphabet
    n: int
    subspaces: tuple

    def __post_init__(self):
        if not self.subspaces:
            raise DomainError("a subspace family needs at least one basic set")
        clean = []
        for S in self.subspaces:
            rows = [self.field.check_word(v, self.n) for v in S]
            clean.append(tuple(linalg.rref(self.field, rows)[0]))
        object.__setattr__(self, "subspaces", tuple(clean))
        allrows = [v for S in clean for v in S]
        if linalg.rank(self.field, allrows) != self.n:
            raise DomainError("basic sets do not span the ambient space")

    @property
    def m(self) -> int:
        return len(self.subspaces)

    def weight(self, x) -> int:
        return subspace_weight(self, x)

    def metric(self) -> Metric:
        return Metric(
            "subspace",
            weight=self.weight,
            alphabet=self.field,
            n=self.n,
            params={"subspaces": [list(map(list, S)) for S in self.subspaces]},
        )


def subspace_weight(family: SubspaceFamily, x) -> int:
    """Smallest ``|I|`` with ``x`` in the span of the basic sets indexed by ``I``."""
    x = family.field.check_word(x, family.n)
    if not any(x):
        return 0
    for k in range(1, family.m + 1):
        for I in itertools.combinations(range(family.m), k):
            rows = [v for i in I for v in family.subspaces[i]]
            if linalg.in_span(family.field, rows, x):
                return k
    raise AssertionError("unreachable: the family spans the space")


@dataclass(frozen=True, eq=False)
class ParentCode:
    """Kernel of ``phi: F_q^m -> F_q^n``, ``phi(e_i) = f_i``; an ``[m, m-n]`` code."""

    field: Alphabet
    m: int
    basis: tuple

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @cached_property
    def code(self) -> BlockCode:
        if self.basis:
            return BlockCode.from_generator(self.basis, self.field, self.m)
        return BlockCode(self.field, self.m, ((0,) * self.m,), ())

    def coset_representative(self, v) -> tuple[int, ...]:
        """Canonical coset member: zero on the pivot columns of the RREF basis."""
        F = self.field
        v = tuple(v)
        _, pivots = linalg.rref(F, self.basis) if self.basis else ([], [])
        for row, pc in zip(self.basis, pivots):
            if v[pc]:
                v = F.vsub(v, F.vscale(v[pc], row))
        return v


@dataclass(frozen=True, eq=False)
class ProjectiveFamily:
    """Nonzero vectors ``f_1..f_m`` spanning ``F_q^n``."""

    field: Alphabet
    vectors: tuple

    def __post_init__(self):
        vs = tuple(self.field.check_word(v) for v in self.vectors)
        if not vs:
            raise DomainError("a projective family needs vectors")
        n = len(vs[0])
        for v in vs:
            if len(v) != n:
                raise DomainError("family vectors must share one length")
            if not any(v):
                raise DomainError("projective family vectors must be nonzero")
        if linalg.rank(self.field, vs) != n:
            raise DomainError("family vectors do not span the ambient space")
        object.__setattr__(self, "vectors", vs)

    @property
    def n(self) -> int:
        return len(self.vectors[0])

    @property
    def m(self) -> int:
        return len(self.vectors)

    def as_subspace_family(self) -> SubspaceFamily:
        return SubspaceFamily(self.field, self.n, tuple((v,) for v in self.vectors))

    def phi(self, u) -> tuple[int, ...]:
        F = self.field
        out = (0,) * self.n
        for c, f in zip(u, self.vectors):
            if c:
                out = F.vadd(out, F.vscale(c, f))
        return out

    @cached_property
    def parent(self) -> ParentCode:
        rows = linalg.transpose(self.vectors)  # n x m matrix of phi
        return ParentCode(self.field, self.m, tuple(linalg.nullspace(self.field, rows, self.m)))

    def weight(self, x) -> int:
        return projective_weight_via_parent(self, x)

    def metric(self) -> Metric:
        return Metric(
            "projective",
            weight=self.weight,
            alphabet=self.field,
            n=self.n,
            params={"vectors": [list(v) for v in self.vectors]},
        )


def projective_weight_via_parent(family: ProjectiveFamily, x) -> int:
    """Minimum Hamming weight over the coset ``phi^-1(x)`` of the parent code."""
    F = family.field
    x = F.check_word(x, family.n)
    u0 = linalg.solve_combination(F, family.vectors, x)
    if u0 is None:
        raise AssertionError("unreachable: phi is surjective")
    best = hamming_weight(u0)
    for p in family.parent.code.words:
        best = min(best, hamming_weight(F.vadd(u0, p)))
    return best


def coset_weight_distribution(parent: ParentCode, cap: int | None = None) -> list[int]:
    """``L_i`` = number of cosets of the parent code whose leader has Hamming weight ``i``."""
    F = parent.field
    check_space(F.q**parent.m, cap)
    leader: dict = {}
    for v in itertools.product(range(F.q), repeat=parent.m):
        rep = parent.coset_representative(v)
        w = hamming_weight(v)
        if rep not in leader or w < leader[rep]:
            leader[rep] = w
    L = [0] * (parent.m + 1)
    for w in leader.values():
        L[w] += 1
    return L


@dataclass
class CosetIdentity:
    distribution: list
    spheres: list
    radius: int
    holds: bool


def check_coset_sphere_identity(family: ProjectiveFamily, cap: int | None = None) -> CosetIdentity:
    """Compare ``L_i(P)`` with ``s_{d_F}(i)`` for ``i`` up to the parent's Hamming packing radius."""
    P = family.parent
    L = coset_weight_distribution(P, cap)
    R = packing_radius(P.code, hamming(alphabet=family.field, n=family.m), cap)
    R = min(R, family.m)
    metric = family.as_subspace_family().metric()
    spheres = [sphere_size(metric, family.n, i, cap=cap) for i in range(R + 1)]
    return CosetIdentity(L, spheres, R, L[: R + 1] == spheres)


def phase_rotation_weight(n: int, x) -> int:
    w = hamming_weight(x)
    if len(x) != n:
        raise DomainError(f"expected length {n}, got {len(x)}")
    return min(w, n + 1 - w)


def phase_rotation_family(n: int) -> ProjectiveFamily:
    F = Alphabet(2)
    vecs = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    vecs.append((1,) * n)
    return ProjectiveFamily(F, tuple(vecs))


def phase_rotation_metric(n: int) -> Metric:
    return Metric(
        "phase-rotation",
        weight=lambda x: phase_rotation_weight(n, x),
        alphabet=Alphabet(2),
        n=n,
        params={"n": n},
    )


def standard_family(q: int, n: int) -> ProjectiveFamily:
    vecs = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    return ProjectiveFamily(Alphabet(q), tuple(vecs))


@dataclass
class SingletonCheck:
    distance: int
    bound: int
    holds: bool
    attained: bool


def projective_singleton_check(code: BlockCode, family) -> SingletonCheck:
    """``d_F(C) <= n - k + 1`` for a linear code."""
    if not code.is_linear:
        raise DomainError("the Singleton check needs a linear code")
    fam = family.as_subspace_family() if isinstance(family, ProjectiveFamily) else family
    if code.n != fam.n:
        raise DomainError("code length differs from family length")
    k = code.k
    if k == 0:
        raise DomainError("minimum distance undefined for the zero code")
    d = min(subspace_weight(fam, c) for c in code.words if any(c))
    bound = fam.n - k + 1
    return SingletonCheck(d, bound, d <= bound, d == bound)


def parity_check_matrix(code: BlockCode) -> list[tuple[int, ...]]:
    basis = code.linear_basis()
    if basis is None:
        raise DomainError("parity-check matrix needs a linear code")
    return linalg.nullspace(code.alphabet, basis, code.n)


def family_from_parity_check(code_or_matrix, field: Alphabet | None = None) -> ProjectiveFamily:
    """Family whose parent code is the given code: the columns of its parity-check matrix.

    Accepts a linear :class:`BlockCode` or an explicit full-rank parity-check matrix.
    """
    if isinstance(code_or_matrix, BlockCode):
        F = code_or_matrix.alphabet
        H = parity_check_matrix(code_or_matrix)
    else:
        F = field or Alphabet(2)
        H = [F.check_word(r) for r in code_or_matrix]
        if linalg.rank(F, H) != len(H):
            raise DomainError("parity-check matrix is rank deficient")
    if not H:
        raise DomainError("code is the whole space; the family would live in F_q^0")
    cols = linalg.transpose(H)
    if any(not any(c) for c in cols):
        raise DomainError("parity-check matrix has a zero column (code contains a weight-1 word)")
    return ProjectiveFamily(F, tuple(cols))
