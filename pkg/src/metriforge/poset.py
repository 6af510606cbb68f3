"""Poset metrics and relatives: poset-block, digraph and pomset weights, ideal
spectra, MacWilliams equivalence relations and the hierarchical characterization."""

from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import linalg
from .config import DomainError, SpaceTooLarge, check_space
from .core import BlockCode, Metric, dual_code, enumerate_linear_codes, packing_radius
from .fields import INTEGER_RING, Alphabet, support

EC, ES, EH = "E_C", "E_S", "E_H"
MAX_PERM_N = 8


def _transitive_closure(n: int, pairs) -> set:
    reach = [{i} for i in range(n)]  # reach[i] = {j : i <= j}
    for i, j in pairs:
        reach[i].add(j)
    changed = True
    while changed:
        changed = False
        for i in range(n):
            new = set().union(*(reach[j] for j in reach[i]))
            if new != reach[i]:
                reach[i] = new
                changed = True
    return {(i, j) for i in range(n) for j in reach[i]}


class Poset:
    """A partial order on ``{0..n-1}``; ``(i, j)`` in ``leq`` means ``i <= j``."""

    def __init__(self, n: int, leq):
        leq = frozenset((int(i), int(j)) for i, j in leq)
        for i, j in leq:
            if not (0 <= i < n and 0 <= j < n):
                raise DomainError(f"relation ({i + 1}, {j + 1}) outside [1, {n}]")
        for i in range(n):
            if (i, i) not in leq:
                raise DomainError(f"order is not reflexive at {i + 1}")
        for i, j in leq:
            if i != j and (j, i) in leq:
                raise DomainError(f"order is not antisymmetric: {i + 1} and {j + 1}")
        for i, j in leq:
            for k in range(n):
                if (j, k) in leq and (i, k) not in leq:
                    raise DomainError(f"order is not transitive: {i + 1} <= {j + 1} <= {k + 1}")
        self.n = n
        self.leq = leq

    @classmethod
    def from_relations(cls, n: int, relations, one_based: bool = True) -> "Poset":
        """Reflexive-transitive closure of the given ``i <= j`` pairs."""
        off = 1 if one_based else 0
        pairs = [(int(i) - off, int(j) - off) for i, j in relations]
        for i, j in pairs:
            if not (0 <= i < n and 0 <= j < n):
                raise DomainError(f"relation ({i + off}, {j + off}) outside the ground set")
        return cls(n, _transitive_closure(n, pairs))

    @classmethod
    def from_matrix(cls, M) -> "Poset":
        M = np.asarray(M)
        n = M.shape[0]
        if M.shape != (n, n) or not np.isin(M, (0, 1)).all():
            raise DomainError("order matrix must be a square 0/1 matrix")
        return cls(n, {(i, j) for i in range(n) for j in range(n) if M[i, j]})

    def __repr__(self):
        rel = sorted((i + 1, j + 1) for i, j in self.leq if i != j)
        return f"Poset(n={self.n}, relations={rel})"

    def __eq__(self, other):
        return isinstance(other, Poset) and (self.n, self.leq) == (other.n, other.leq)

    def __hash__(self):
        return hash((self.n, self.leq))

    @cached_property
    def matrix(self) -> np.ndarray:
        M = np.zeros((self.n, self.n), dtype=np.int64)
        for i, j in self.leq:
            M[i, j] = 1
        return M

    @cached_property
    def _down(self) -> tuple[int, ...]:
        return tuple(sum(1 << i for i in range(self.n) if (i, j) in self.leq) for j in range(self.n))

    def ideal_closure(self, X) -> frozenset:
        mask = 0
        for j in X:
            if not 0 <= j < self.n:
                raise DomainError(f"position {j} outside the poset")
            mask |= self._down[j]
        return frozenset(i for i in range(self.n) if mask >> i & 1)

    def is_ideal(self, I) -> bool:
        return self.ideal_closure(I) == frozenset(I)

    def weight(self, x) -> int:
        if len(x) != self.n:
            raise DomainError(f"expected length {self.n}, got {len(x)}")
        mask = 0
        for i, a in enumerate(x):
            if a:
                mask |= self._down[i]
        return bin(mask).count("1")

    def metric(self, q: int | Alphabet = 2, name: str = "poset") -> Metric:
        F = q if isinstance(q, Alphabet) else Alphabet(q)
        rel = sorted([i + 1, j + 1] for i, j in self.leq if i != j)
        return Metric(name, weight=self.weight, alphabet=F, n=self.n, params={"n": self.n, "relations": rel, "q": F.q})

    def opposite(self) -> "Poset":
        return Poset(self.n, {(j, i) for i, j in self.leq})

    def ideals(self, cap: int | None = None) -> list[frozenset]:
        check_space(2**self.n, cap, "subset lattice")
        out = set()
        for mask in range(2**self.n):
            out.add(self.ideal_closure(i for i in range(self.n) if mask >> i & 1))
        return sorted(out, key=lambda I: (len(I), sorted(I)))

    def is_antichain(self) -> bool:
        return all(i == j for i, j in self.leq)

    def heights(self) -> list[int]:
        """Length of the longest strict chain ending at each element (minimal elements: 0)."""
        h = [0] * self.n
        order = sorted(range(self.n), key=lambda j: bin(self._down[j]).count("1"))
        for j in order:
            h[j] = max((h[i] + 1 for i in range(self.n) if i != j and (i, j) in self.leq), default=0)
        return h

    def hierarchical_levels(self) -> list[list[int]] | None:
        """Levels ``H_1, H_2, ...`` (0-based members) if hierarchical, else None."""
        h = self.heights()
        for i in range(self.n):
            for j in range(self.n):
                if i != j and ((i, j) in self.leq) != (h[i] < h[j]):
                    return None
        return [[i for i in range(self.n) if h[i] == k] for k in range(max(h, default=-1) + 1)]

    def is_hierarchical(self) -> bool:
        return self.hierarchical_levels() is not None

    def automorphisms(self, max_n: int = MAX_PERM_N) -> list[tuple[int, ...]]:
        if self.n > max_n:
            raise SpaceTooLarge(math.factorial(self.n), math.factorial(max_n), "permutation search")
        return [
            s
            for s in itertools.permutations(range(self.n))
            if all((s[i], s[j]) in self.leq for i, j in self.leq)
        ]


def antichain(n: int) -> Poset:
    return Poset(n, {(i, i) for i in range(n)})


def chain(n: int) -> Poset:
    return Poset(n, {(i, j) for i in range(n) for j in range(i, n)})


def nrt_poset(m: int, l: int) -> Poset:
    """Disjoint union of ``m`` chains of length ``l`` on consecutive positions."""
    if m < 1 or l < 1:
        raise DomainError("NRT poset needs m, l >= 1")
    return Poset(m * l, {(b * l + i, b * l + j) for b in range(m) for i in range(l) for j in range(i, l)})


def posets_up_to_isomorphism(n: int) -> list[Poset]:
    """One representative per isomorphism class of posets on ``n`` points (``n <= 4``)."""
    if n > 4:
        raise SpaceTooLarge(2 ** (n * (n - 1)), 2**12, "poset enumeration")
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    diag = {(i, i) for i in range(n)}
    perms = list(itertools.permutations(range(n)))
    seen: set = set()
    reps = []
    for bits in range(2 ** len(pairs)):
        rel = diag | {p for k, p in enumerate(pairs) if bits >> k & 1}
        if any((j, i) in rel for i, j in rel if i != j):
            continue
        if any((i, k) not in rel for i, j in rel for j2, k in rel if j == j2):
            continue
        key = frozenset(rel)
        if key in seen:
            continue
        seen |= {frozenset((s[i], s[j]) for i, j in rel) for s in perms}
        reps.append(Poset(n, rel))
    return reps


def poset_weight(P: Poset, x) -> int:
    return P.weight(x)


def ideal_closure(P: Poset, X) -> frozenset:
    return P.ideal_closure(X)


def opposite_poset(P: Poset) -> Poset:
    return P.opposite()


def is_hierarchical(P: Poset):
    return P.hierarchical_levels() is not None, P.hierarchical_levels()


# ---------------------------------------------------------------------------
# Ultrametric check
# ---------------------------------------------------------------------------


@dataclass
class UltrametricReport:
    holds: bool
    witness: tuple | None = None

    def __bool__(self):
        return self.holds


def is_ultrametric(metric: Metric, n: int | None = None, cap: int | None = None) -> UltrametricReport:
    """``d(x, z) <= max(d(x, y), d(y, z))`` for all triples."""
    pts = metric.points(n, cap)
    check_space(len(pts), 5000, "distance table")
    N = len(pts)
    D = np.empty((N, N), dtype=np.int64)
    for i, x in enumerate(pts):
        for j, y in enumerate(pts):
            D[i, j] = metric._raw_dist(x, y)
    for k in range(N):
        viol = D > np.maximum(D[:, k : k + 1], D[k : k + 1, :])
        if viol.any():
            i, j = map(int, np.argwhere(viol)[0])
            return UltrametricReport(False, (pts[i], pts[k], pts[j]))
    return UltrametricReport(True)


# ---------------------------------------------------------------------------
# Ideal equivalences and spectra
# ---------------------------------------------------------------------------


def _restricted(P: Poset, I) -> list[tuple[int, int]]:
    return [(i, j) for i, j in P.leq if i in I and j in I]


def subposets_isomorphic(P: Poset, I, J, Q: Poset | None = None) -> bool:
    """Is ``P`` restricted to ``I`` isomorphic to ``Q`` (default ``P``) restricted to ``J``?"""
    Q = P if Q is None else Q
    I, J = sorted(I), sorted(J)
    if len(I) != len(J):
        return False
    rI = set(_restricted(P, set(I)))
    rJ = set(_restricted(Q, set(J)))
    if len(rI) != len(rJ):
        return False

    def degs(rel, S):
        return sorted((sum(1 for a, b in rel if b == s), sum(1 for a, b in rel if a == s)) for s in S)

    if degs(rI, I) != degs(rJ, J):
        return False
    for perm in itertools.permutations(J):
        f = dict(zip(I, perm))
        if all((f[a], f[b]) in rJ for a, b in rI):
            return True
    return False


def generate_group(gens, n: int) -> set[tuple[int, ...]]:
    ident = tuple(range(n))
    group = {ident}
    frontier = [ident]
    gens = [tuple(g) for g in gens]
    for g in gens:
        if sorted(g) != list(ident):
            raise DomainError(f"{g} is not a permutation of 0..{n - 1}")
    while frontier:
        nxt = []
        for h in frontier:
            for g in gens:
                c = tuple(g[h[i]] for i in range(n))
                if c not in group:
                    group.add(c)
                    nxt.append(c)
        frontier = nxt
    return group


@dataclass
class IdealClasses:
    kind: str
    classes: list  # list of lists of ideals
    index: dict  # ideal -> class number

    def __len__(self):
        return len(self.classes)


def ideal_classes(P: Poset, kind: str = EC, H=None, cap: int | None = None) -> IdealClasses:
    """Partition the ideals of ``P`` under ``E_C``, ``E_S`` or ``E_H``.

    ``H`` is a list of generator permutations (0-based image tuples); the
    default for ``E_H`` is all of ``Aut(P)``.
    """
    ideals = P.ideals(cap)
    classes: list[list] = []
    if kind == EC:
        by_size: dict = {}
        for I in ideals:
            by_size.setdefault(len(I), []).append(I)
        classes = [by_size[s] for s in sorted(by_size)]
    elif kind == ES:
        for I in ideals:
            for cl in classes:
                if subposets_isomorphic(P, cl[0], I):
                    cl.append(I)
                    break
            else:
                classes.append([I])
    elif kind == EH:
        gens = P.automorphisms() if H is None else [tuple(g) for g in H]
        for g in gens:
            if not all((g[i], g[j]) in P.leq for i, j in P.leq):
                raise DomainError(f"{g} is not an automorphism of the poset")
        group = generate_group(gens, P.n)
        seen: set = set()
        for I in ideals:
            if I in seen:
                continue
            orbit = {frozenset(g[i] for i in I) for g in group}
            seen |= orbit
            classes.append(sorted(orbit, key=lambda J: sorted(J)))
    else:
        raise DomainError(f"unknown ideal equivalence {kind!r}")
    index = {I: k for k, cl in enumerate(classes) for I in cl}
    return IdealClasses(kind, classes, index)


def spectrum(code: BlockCode, P: Poset, kind: str = EC, H=None, classes: IdealClasses | None = None) -> list[int]:
    """Number of codewords whose support ideal lies in each class."""
    cls = classes or ideal_classes(P, kind, H)
    if code.n != P.n:
        raise DomainError("code length differs from poset size")
    A = [0] * len(cls)
    for c in code.words:
        A[cls.index[P.ideal_closure(support(c))]] += 1
    return A


@dataclass
class MacWilliamsVerdict:
    holds: bool
    codes: int
    witness: tuple | None = None

    def __bool__(self):
        return self.holds


def macwilliams_equivalence_test(P: Poset, kind: str = EC, q: int = 2, H=None, max_codes: int = 1000) -> MacWilliamsVerdict:
    """Exhaustively test whether ``E`` is a MacWilliams equivalence relation for ``P``.

    For ``E_H`` the dual relation uses the same permutations acting on ``P^perp``.
    """
    F = Alphabet(q)
    Pd = P.opposite()
    if kind == EH and H is None:
        H = P.automorphisms()
    primal = ideal_classes(P, kind, H)
    dual = ideal_classes(Pd, kind, H)
    seen: dict = {}
    count = 0
    for C in enumerate_linear_codes(F, P.n, max_codes):
        count += 1
        key = tuple(spectrum(C, P, classes=primal))
        dkey = tuple(spectrum(dual_code(C), Pd, classes=dual))
        if key in seen and seen[key][1] != dkey:
            return MacWilliamsVerdict(False, count, (seen[key][0], C))
        seen.setdefault(key, (C, dkey))
    return MacWilliamsVerdict(True, count)


def complement_condition(P: Poset, cap: int | None = None) -> bool:
    """``I ~ J`` (isomorphic ideals) implies ``I^c ~ J^c``."""
    ideals = P.ideals(cap)
    full = frozenset(range(P.n))
    Pd = P.opposite()
    for I, J in itertools.combinations(ideals, 2):
        if subposets_isomorphic(P, I, J) and not subposets_isomorphic(Pd, full - I, full - J):
            return False
    return True


# ---------------------------------------------------------------------------
# Linear isometries
# ---------------------------------------------------------------------------


def apply_permutation(sigma, x) -> tuple:
    """``T_sigma(x) = x_{sigma(1)} ... x_{sigma(n)}``."""
    return tuple(x[s] for s in sigma)


def gp_positions(P: Poset) -> list[tuple[int, int]]:
    """Off-diagonal entries a matrix of ``G_P`` may use (``x -> A x``)."""
    return sorted((i, j) for i, j in P.leq if i != j)


def gp_generators(P: Poset, F: Alphabet) -> list[tuple]:
    """Diagonal scalings and elementary transvections ``I + c E_ij`` with ``i < j`` in P."""
    n = P.n
    eye = [[int(i == j) for j in range(n)] for i in range(n)]
    gens = []
    for i in range(n):
        for c in F.nonzero:
            if c != 1:
                A = [r[:] for r in eye]
                A[i][i] = c
                gens.append(tuple(map(tuple, A)))
    for i, j in gp_positions(P):
        for c in F.nonzero:
            A = [r[:] for r in eye]
            A[i][j] = c
            gens.append(tuple(map(tuple, A)))
    return gens


def gp_matrices(P: Poset, F: Alphabet, cap: int | None = None):
    """Every matrix of ``G_P``: nonzero diagonal, support inside the order matrix."""
    pos = gp_positions(P)
    check_space((F.q - 1) ** P.n * F.q ** len(pos), cap, "G_P")
    n = P.n
    for diag in itertools.product(F.nonzero, repeat=n):
        for vals in itertools.product(range(F.q), repeat=len(pos)):
            A = [[0] * n for _ in range(n)]
            for i, d in enumerate(diag):
                A[i][i] = d
            for (i, j), v in zip(pos, vals):
                A[i][j] = v
            yield tuple(map(tuple, A))


@dataclass
class PosetIsometryReport:
    automorphisms: int
    matrices: int
    all_preserve: bool
    witness: tuple | None = None

    def __bool__(self):
        return self.all_preserve


def poset_isometry_generators(P: Poset, q: int = 2) -> dict:
    F = Alphabet(q)
    return {"aut": P.automorphisms(), "gp_positions": gp_positions(P), "gp_generators": gp_generators(P, F)}


def verify_poset_isometries(P: Poset, q: int = 2, cap: int | None = None) -> PosetIsometryReport:
    """Every ``T_sigma`` (sigma in Aut(P)) and every ``A`` in ``G_P`` preserves ``d_P`` on all of F_q^n."""
    F = Alphabet(q)
    pts = list(itertools.product(range(q), repeat=P.n))
    check_space(len(pts), cap)
    w = {x: P.weight(x) for x in pts}
    aut = P.automorphisms()
    for s in aut:
        for x in pts:
            if w[apply_permutation(s, x)] != w[x]:
                return PosetIsometryReport(len(aut), 0, False, ("perm", s, x))
    count = 0
    for A in gp_matrices(P, F, cap):
        count += 1
        for x in pts:
            if w[linalg.mat_vec(F, A, x)] != w[x]:
                return PosetIsometryReport(len(aut), count, False, ("matrix", A, x))
    return PosetIsometryReport(len(aut), count, True)


def isometry_orbits(P: Poset, q: int = 2, cap: int | None = None) -> list[set]:
    """Orbits of F_q^n under the group generated by Aut(P) and G_P."""
    F = Alphabet(q)
    pts = list(itertools.product(range(q), repeat=P.n))
    check_space(len(pts), cap)
    maps = [lambda x, s=s: apply_permutation(s, x) for s in P.automorphisms()]
    maps += [lambda x, A=A: linalg.mat_vec(F, A, x) for A in gp_generators(P, F)]
    seen: set = set()
    orbits = []
    for x in pts:
        if x in seen:
            continue
        orb = {x}
        todo = deque([x])
        while todo:
            y = todo.popleft()
            for f in maps:
                z = f(y)
                if z not in orb:
                    orb.add(z)
                    todo.append(z)
        seen |= orb
        orbits.append(orb)
    return orbits


@dataclass
class HierarchicalReport:
    hierarchical: bool
    levels: list | None
    packing_radius_function_of_distance: bool
    transitive_on_spheres: bool
    witness: dict = field(default_factory=dict)

    @property
    def consistent(self) -> bool:
        return self.hierarchical == self.packing_radius_function_of_distance == self.transitive_on_spheres


def hierarchical_equivalents_check(P: Poset, q: int = 2, max_codes: int = 1000, cap: int | None = None) -> HierarchicalReport:
    """Test, by exhaustion over linear codes and isometry orbits, the packing-radius
    and sphere-transitivity characterizations of hierarchical posets."""
    F = Alphabet(q)
    metric = P.metric(F)
    levels = P.hierarchical_levels()
    wit: dict = {}
    radius_of: dict = {}
    prop3 = True
    for C in enumerate_linear_codes(F, P.n, max_codes):
        if len(C.words) < 2:
            continue
        d = min(P.weight(c) for c in C.words if any(c))
        R = packing_radius(C, metric, cap)
        if d in radius_of and radius_of[d][1] != R:
            prop3 = False
            wit["packing_radius"] = (radius_of[d][0].words, C.words, d, radius_of[d][1], R)
            break
        radius_of.setdefault(d, (C, R))
    orbits = isometry_orbits(P, q, cap)
    prop4 = True
    by_weight: dict = {}
    for orb in orbits:
        ws = {P.weight(x) for x in orb}
        w = ws.pop()
        if ws:
            raise AssertionError("an isometry orbit mixes weights")
        if w in by_weight:
            prop4 = False
            wit["spheres"] = (min(by_weight[w]), min(orb))
            break
        by_weight[w] = orb
    return HierarchicalReport(levels is not None, levels, prop3, prop4, wit)


# ---------------------------------------------------------------------------
# Poset-block metric
# ---------------------------------------------------------------------------


class PosetBlock:
    """Poset ``P`` on ``n`` blocks of dimensions ``pi = (k_1..k_n)`` laid out consecutively."""

    def __init__(self, P: Poset, pi):
        pi = tuple(int(k) for k in pi)
        if len(pi) != P.n:
            raise DomainError(f"pi has {len(pi)} entries for a poset on {P.n} points")
        if any(k < 1 for k in pi):
            raise DomainError("block dimensions must be positive")
        self.P = P
        self.pi = pi
        self.N = sum(pi)
        self.offsets = tuple(itertools.accumulate((0,) + pi))

    def pi_support(self, x) -> frozenset:
        if len(x) != self.N:
            raise DomainError(f"expected length {self.N}, got {len(x)}")
        return frozenset(i for i in range(self.P.n) if any(x[self.offsets[i] : self.offsets[i + 1]]))

    def weight(self, x) -> int:
        return len(self.P.ideal_closure(self.pi_support(x)))

    def metric(self, q: int | Alphabet = 2) -> Metric:
        F = q if isinstance(q, Alphabet) else Alphabet(q)
        rel = sorted([i + 1, j + 1] for i, j in self.P.leq if i != j)
        return Metric(
            "posetblock",
            weight=self.weight,
            alphabet=F,
            n=self.N,
            params={"n": self.P.n, "relations": rel, "pi": list(self.pi), "q": F.q},
        )


def posetblock_weight(P: Poset, pi, x) -> int:
    return PosetBlock(P, pi).weight(x)


# ---------------------------------------------------------------------------
# Digraph metric
# ---------------------------------------------------------------------------


class Digraph:
    """Directed graph on ``{0..n-1}``; an edge ``(u, v)`` means ``u`` dominates ``v``."""

    def __init__(self, n: int, edges):
        E = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise DomainError(f"edge ({u + 1}, {v + 1}) outside [1, {n}]")
            E.add((u, v))
        self.n = n
        self.edges = frozenset(E)
        self.succ = tuple(sorted(v for u, v in E if u == i) for i in range(n))

    @classmethod
    def from_one_based(cls, n: int, edges) -> "Digraph":
        return cls(n, [(u - 1, v - 1) for u, v in edges])

    def closure(self, X) -> frozenset:
        seen = set(X)
        todo = deque(seen)
        while todo:
            u = todo.popleft()
            for v in self.succ[u]:
                if v not in seen:
                    seen.add(v)
                    todo.append(v)
        return frozenset(seen)

    def weight(self, x) -> int:
        if len(x) != self.n:
            raise DomainError(f"expected length {self.n}, got {len(x)}")
        return len(self.closure(support(x)))

    def is_acyclic(self) -> bool:
        return all(u not in self.closure(self.succ[u]) for u in range(self.n))

    def to_poset(self) -> Poset:
        """Reachability order: ``i <= j`` iff ``j`` reaches ``i`` (acyclic graphs only)."""
        if not self.is_acyclic():
            raise DomainError("digraph has a cycle; it does not define a poset")
        return Poset(self.n, {(i, j) for j in range(self.n) for i in self.closure([j])})

    def metric(self, q: int | Alphabet = 2) -> Metric:
        F = q if isinstance(q, Alphabet) else Alphabet(q)
        edges = sorted([u + 1, v + 1] for u, v in self.edges)
        return Metric("digraph", weight=self.weight, alphabet=F, n=self.n, params={"n": self.n, "edges": edges, "q": F.q})


def graph_weight(G: Digraph, x) -> int:
    return G.weight(x)


# ---------------------------------------------------------------------------
# Pomset metric
# ---------------------------------------------------------------------------


def is_mset_relation(S, M: dict) -> bool:
    """``S`` lists ``(count, (m, a), (k, b))``; ``M`` maps labels to counts.

    A mset relation needs every count equal to ``m * k`` (and ``m/a``, ``k/b`` within ``M``).
    """
    for count, (m, a), (k, b) in S:
        if a not in M or b not in M or not (0 < m <= M[a]) or not (0 < k <= M[b]):
            return False
        if count != m * k:
            return False
    return True


def is_pomset(R, M: dict) -> bool:
    """Is the set of pairs ``((m, a), (k, b))`` a partial order on the points ``m/a`` of ``M``?"""
    R = {(tuple(u), tuple(v)) for u, v in R}
    points = {(m, a) for a, c in M.items() for m in range(1, c + 1)}
    for u, v in R:
        if u not in points or v not in points:
            return False
    if any((p, p) not in R for p in points):
        return False
    for u, v in R:
        if u != v and (v, u) in R:
            return False
    for u, v in R:
        for v2, w in R:
            if v2 == v and (u, w) not in R:
                return False
    return True


class Pomset:
    """Pomset on ``M = {r/1, ..., r/n}`` with ``r = floor(q/2)`` (0-based labels internally).

    ``relations`` holds pairs ``((m, a), (k, b))`` meaning ``(m/a) R (k/b)``; the
    reflexive-transitive closure is taken and antisymmetry enforced.
    """

    def __init__(self, q: int, n: int, relations=()):
        if q < 2:
            raise DomainError("pomset metric needs q >= 2")
        self.q, self.n, self.r = q, n, q // 2
        points = [(m, a) for a in range(n) for m in range(1, self.r + 1)]
        idx = {p: i for i, p in enumerate(points)}
        pairs = []
        for (m, a), (k, b) in relations:
            for p in ((m, a), (k, b)):
                if p not in idx:
                    raise DomainError(f"{p[0]}/{p[1] + 1} is not a point of M (r={self.r}, n={n})")
            pairs.append((idx[(m, a)], idx[(k, b)]))
        closed = _transitive_closure(len(points), pairs)
        for i, j in closed:
            if i != j and (j, i) in closed:
                raise DomainError("pomset relation is not antisymmetric")
        self.R = frozenset((points[i], points[j]) for i, j in closed)
        # below[a] = list of (count, b): (count/b) R (k/a), k > 0, b != a
        self._below = tuple(sorted({(m, b) for (m, b), (k, a2) in self.R if a2 == a and b != a}) for a in range(n))

    @classmethod
    def from_one_based(cls, q: int, n: int, relations) -> "Pomset":
        return cls(q, n, [((m, a - 1), (k, b - 1)) for (m, a), (k, b) in relations])

    @property
    def M(self) -> dict:
        return {a: self.r for a in range(self.n)}

    def lee_support(self, x) -> dict:
        return {i: min(a % self.q, self.q - a % self.q) for i, a in enumerate(x) if a % self.q}

    def ideal_closure(self, S: dict) -> dict:
        """Smallest ideal containing the submset ``S`` (label -> count).

        Literal rule: if ``a`` occurs in the ideal and ``(n/b) R (k/a)`` with
        ``b != a``, the full ``n/b`` enters the ideal.
        """
        I = dict(S)
        changed = True
        while changed:
            changed = False
            for a in list(I):
                if I[a] <= 0:
                    continue
                for m, b in self._below[a]:
                    if I.get(b, 0) < m:
                        I[b] = m
                        changed = True
        return I

    def weight(self, x) -> int:
        if len(x) != self.n:
            raise DomainError(f"expected length {self.n}, got {len(x)}")
        return sum(self.ideal_closure(self.lee_support(x)).values())

    def metric(self) -> Metric:
        rel = sorted([[m, a + 1], [k, b + 1]] for (m, a), (k, b) in self.R if (m, a) != (k, b))
        return Metric(
            "pomset",
            weight=self.weight,
            alphabet=Alphabet(self.q, INTEGER_RING),
            n=self.n,
            params={"q": self.q, "n": self.n, "relations": rel},
        )


def pomset_weight(R: Pomset, x) -> int:
    return R.weight(x)
