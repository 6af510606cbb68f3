"""Named exhaustive verification suites.

Each suite returns a :class:`SuiteResult`; ``passed`` is False as soon as a
property fails, and ``witness`` then carries the first counterexample.
"""

from __future__ import annotations

import itertools
import random
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

from . import asymmetric, combinatorial, editperm, poset, ringlee, subspace
from .config import DomainError
from .core import (
    BlockCode,
    Metric,
    bsc,
    binary_asymmetric,
    check_metric_axioms,
    dual_code,
    enumerate_linear_codes,
    hamming,
    is_matched,
    lee,
    minimum_distance,
    packing_radius,
)
from .fields import Alphabet


@dataclass
class SuiteResult:
    name: str
    passed: bool = True
    lines: list = field(default_factory=list)
    witness: object = None

    def check(self, ok: bool, label: str, witness=None) -> bool:
        self.lines.append(f"{'ok  ' if ok else 'FAIL'} {label}")
        if not ok and self.passed:
            self.passed = False
            self.witness = witness if witness is not None else label
        return ok

    def note(self, text: str) -> None:
        self.lines.append(f"     {text}")


def _same_table(m1, m2, pts) -> tuple | None:
    for x in pts:
        for y in pts:
            if m1(x, y) != m2(x, y):
                return (x, y)
    return None


def _vectors(q: int, n: int) -> list[tuple]:
    return list(itertools.product(range(q), repeat=n))


def _strings(q: int, L: int) -> list[tuple]:
    return [s for k in range(L + 1) for s in itertools.product(range(q), repeat=k)]


# ---------------------------------------------------------------------------
# 1. metric axioms
# ---------------------------------------------------------------------------


def axiom_domains() -> list[tuple[str, Metric, list]]:
    """(label, metric, points) for every family at desk scale."""
    out = []
    add = out.append
    for n in range(1, 7):
        add((f"hamming F_2^{n}", hamming(2, n), None))
    add(("hamming F_4^3", hamming(4, 3), None))
    add(("lee Z_5^3", lee(5, 3), None))
    add(("lee Z_7^2", lee(7, 2), None))
    add(("lee Z_6^3", lee(6, 3), None))
    for n in (3, 6):
        add((f"phase-rotation n={n}", subspace.phase_rotation_metric(n), None))
    F2 = Alphabet(2)
    proj = subspace.ProjectiveFamily(F2, ((1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0), (0, 1, 1)))
    add(("projective F_2^3 m=5", proj.metric(), None))
    sub = subspace.SubspaceFamily(F2, 4, (((1, 0, 0, 0), (0, 1, 0, 0)), ((0, 0, 1, 1),), ((0, 0, 0, 1), (1, 0, 1, 0))))
    add(("subspace F_2^4", sub.metric(), None))
    add(("projective F_3^2", subspace.ProjectiveFamily(Alphabet(3), ((1, 0), (0, 1), (1, 1))).metric(), None))
    add(("burst n=6 b=2", combinatorial.burst_covering(6, 2).metric(2), None))
    add(("cyclic burst n=6 b=3", combinatorial.burst_covering(6, 3, True).metric(2), None))
    add(("burst2d 2x3", combinatorial.burst2d_covering(2, 3, 1, 1).metric(2), None))
    add(("covering {12,23} F_3^3", combinatorial.Covering.from_one_based(3, [[1, 2], [2, 3]]).metric(3), None))
    add(("chain poset F_2^6", poset.chain(6).metric(2), None))
    add(("NRT 3x2 F_2^6", poset.nrt_poset(3, 2).metric(2), None))
    add(("poset {1<3,2<3,2<4} F_3^4", poset.Poset.from_relations(4, [[1, 3], [2, 3], [2, 4]]).metric(3), None))
    add(("poset-block pi=(1,2,2)", poset.PosetBlock(poset.Poset.from_relations(3, [[1, 2]]), (1, 2, 2)).metric(2), None))
    add(("digraph 3-cycle + tail F_2^4", poset.Digraph.from_one_based(4, [[1, 2], [2, 3], [3, 1], [3, 4]]).metric(2), None))
    add(("pomset Z_5^3 antichain", poset.Pomset(5, 3).metric(), None))
    add(("pomset Z_5^3 2/1 R 1/2", poset.Pomset.from_one_based(5, 3, [((2, 1), (1, 2))]).metric(), None))
    add(("pomset Z_4^3 1/1 R 1/2 R 1/3", poset.Pomset.from_one_based(4, 3, [((1, 1), (1, 2)), ((1, 2), (1, 3))]).metric(), None))
    add(("mannheim 2+i n=2", ringlee.GaussianModulus(2, 1).metric(2), None))
    add(("mannheim 3 n=2", ringlee.GaussianModulus(3, 0).metric(2), None))
    add(("EJ p=7 n=2", ringlee.EisensteinModulus(7).metric(2), None))
    add(("EJ p=13 n=1", ringlee.EisensteinModulus(13).metric(1), None))
    add(("ldlee l=2 q=5 phi=(1,2) n=3", ringlee.LdimPhi(2, 5, (1, 2)).metric(3), None))
    add(("ldlee l=2 q=7 phi=(1,3) n=2", ringlee.LdimPhi(2, 7, (1, 3)).metric(2), None))
    add(("KS Z_5 lee partition n=3", ringlee.lee_partition(5).metric(3), None))
    add(("KS Z_6 {0},{1,5},{2,3,4} n=3", ringlee.KSPartition(6, [[0], [1, 5], [2, 3, 4]]).metric(3), None))
    for inner in ("H", "NR"):
        add((f"spotty b=3 t=2 {inner}", ringlee.SpottyConfig(3, 2, inner).metric(6), None))
    add(("spotty b=2 t=1 L q=5", ringlee.SpottyConfig(2, 1, "L", 5).metric(4), None))
    add(("asymmetric F_2^6", asymmetric.asymmetric_metric(6), None))
    add(("generalized asymmetric {0,1,2}^3", asymmetric.gen_asymmetric_metric(3, 3), None))
    for q in (2, 3):
        for ops in ("ID", "IDS", "IDT", "IDST"):
            add((f"edit {ops} q={q} len<=4", editperm.edit_metric(ops, q), _strings(q, 4)))
        add((f"edit ID* q={q} len<=4", editperm.edit_star_metric(q), _strings(q, 4)))
    for n in (4, 5):
        add((f"kendall S_{n}", editperm.kendall_metric(n), None))
        add((f"perm-l1 S_{n}", editperm.perm_l1_metric(n), None))
    return out


def suite_metric_axioms(cap: int | None = None) -> SuiteResult:
    res = SuiteResult("metric-axioms")
    for label, metric, pts in axiom_domains():
        rep = check_metric_axioms(metric, pts, cap=cap)
        res.check(rep.passed, f"{label} ({rep.points} points)", (label, rep.violation, rep.witness))
    return res


# ---------------------------------------------------------------------------
# 2. degeneracy ladder
# ---------------------------------------------------------------------------


def suite_degeneracy() -> SuiteResult:
    res = SuiteResult("degeneracy")

    def same(label, m1: Metric, m2: Metric, pts):
        bad = _same_table(m1._raw_dist, m2._raw_dist, pts)
        res.check(bad is None, label, (label, bad))

    for q, n in ((2, 4), (3, 3)):
        pts = _vectors(q, n)
        H = hamming(q, n)
        same(f"singleton covering = hamming (q={q}, n={n})", combinatorial.singleton_covering(n).metric(q), H, pts)
        same(f"antichain poset = hamming (q={q}, n={n})", poset.antichain(n).metric(q), H, pts)
        same(f"KS hamming partition = hamming (q={q}, n={n})", ringlee.hamming_partition(q).metric(n), H, pts)
        same(f"spotty b=1 t=1 H = hamming (q={q}, n={n})", ringlee.SpottyConfig(1, 1, "H", q).metric(n), H, pts)
        same(f"spotty b=1 t=1 NR = hamming (q={q}, n={n})", ringlee.SpottyConfig(1, 1, "NR", q).metric(n), H, pts)
    for n in (1, 2, 3):
        pts = _vectors(5, n)
        same(f"antichain pomset = lee (q=5, n={n})", poset.Pomset(5, n).metric(), lee(5, n), pts)
    for q, n in ((5, 3), (6, 3), (7, 2)):
        pts = _vectors(q, n)
        same(f"KS lee partition = lee (q={q}, n={n})", ringlee.lee_partition(q).metric(n), lee(q, n), pts)
        same(f"spotty b=1 t=1 L = lee (q={q}, n={n})", ringlee.SpottyConfig(1, 1, "L", q).metric(n), lee(q, n), pts)
    for q in (5, 7):
        for n in (1, 2):
            same(f"1-dim lee phi=1 = lee (q={q}, n={n})", ringlee.LdimPhi(1, q, (1,)).metric(n), lee(q, n), _vectors(q, n))
    # x + y*i with i = 3 (mod 5) and x*1 + y*2 differ by y -> -y, so the weight tables agree
    for n in (1, 2):
        same(
            f"2-dim lee phi=(1,2) = mannheim 2+i (n={n})",
            ringlee.LdimPhi(2, 5, (1, 2)).metric(n),
            ringlee.GaussianModulus(2, 1).metric(n),
            _vectors(5, n),
        )
    for n in range(2, 7):
        fam = subspace.phase_rotation_family(n).as_subspace_family()
        bad = next((x for x in _vectors(2, n) if fam.weight(x) != subspace.phase_rotation_weight(n, x)), None)
        res.check(bad is None, f"phase-rotation closed form = subspace weight (n={n})", bad)
    return res


# ---------------------------------------------------------------------------
# 3. packing radius
# ---------------------------------------------------------------------------


def suite_packing_radius(nonlinear: int = 200, seed: int = 20240601) -> SuiteResult:
    res = SuiteResult("packing-radius")
    P = poset.chain(2).metric(2)
    C = BlockCode.from_words([(0, 0), (0, 1)])
    d, R = minimum_distance(C, P), packing_radius(C, P)
    res.check(d == 2 and R == 1 and R != (d - 1) // 2, f"chain poset {{00,01}}: d={d}, R={R}, floor((d-1)/2)={(d - 1) // 2}", (d, R))
    H = hamming(2, 4)
    codes = [c for c in enumerate_linear_codes(2, 4) if c.size > 1]
    rng = random.Random(seed)
    space = _vectors(2, 4)
    seen = {c.words for c in codes}
    extra = []
    while len(extra) < nonlinear:
        words = tuple(sorted(rng.sample(space, rng.randint(2, 8))))
        if words not in seen:
            seen.add(words)
            extra.append(BlockCode.from_words(words))
    bad = None
    for c in codes + extra:
        d, R = minimum_distance(c, H), packing_radius(c, H)
        if R != (d - 1) // 2:
            bad = (c.words, d, R)
            break
    res.check(bad is None, f"hamming R = floor((d-1)/2) on {len(codes)} subspaces + {len(extra)} nonlinear codes of F_2^4", bad)
    return res


# ---------------------------------------------------------------------------
# 4. projective parent code
# ---------------------------------------------------------------------------


def projective_test_families(count: int = 10, seed: int = 7) -> list:
    """Deterministic spanning families over F_2 with n <= 4, m <= 6."""
    F = Alphabet(2)
    fams = [subspace.phase_rotation_family(n) for n in (2, 3, 4)]
    fams.append(subspace.standard_family(2, 4))
    rng = random.Random(seed)
    keys = {f.vectors for f in fams}
    while len(fams) < count:
        n = rng.randint(2, 4)
        m = rng.randint(n, 6)
        nz = [v for v in _vectors(2, n) if any(v)]
        vecs = tuple(rng.sample(nz, min(m, len(nz))))
        if vecs in keys:
            continue
        try:
            fam = subspace.ProjectiveFamily(F, vecs)
        except DomainError:
            continue
        keys.add(vecs)
        fams.append(fam)
    return fams


def suite_parent_code(cap: int | None = None) -> SuiteResult:
    res = SuiteResult("parent-code")
    for fam in projective_test_families():
        generic = fam.as_subspace_family()
        bad = next((x for x in _vectors(2, fam.n) if generic.weight(x) != subspace.projective_weight_via_parent(fam, x)), None)
        tag = f"n={fam.n} m={fam.m} {[''.join(map(str, v)) for v in fam.vectors]}"
        res.check(bad is None, f"subspace weight = coset-leader weight, {tag}", (fam.vectors, bad))
        ident = subspace.check_coset_sphere_identity(fam, cap)
        res.check(ident.holds, f"L_i = s(i) for i <= {ident.radius}, {tag}", (fam.vectors, ident.distribution, ident.spheres))
    return res


# ---------------------------------------------------------------------------
# 5. MacWilliams block identity
# ---------------------------------------------------------------------------


def suite_macwilliams_block() -> SuiteResult:
    res = SuiteResult("macwilliams-block")
    cov = combinatorial.partition_covering([2, 2])
    codes = list(enumerate_linear_codes(2, 4))
    bad = None
    for C in codes:
        A = combinatorial.block_enumerator(C, cov)
        got = combinatorial.block_macwilliams_transform(A, 2, 2, cov.m, C.size)
        want = combinatorial.block_enumerator(dual_code(C), cov)
        if got != want:
            bad = (C.words, got, want)
            break
    res.check(bad is None and len(codes) == 67, f"transform = dual enumerator on all {len(codes)} subspaces of F_2^4", bad)
    return res


# ---------------------------------------------------------------------------
# 6. poset duality
# ---------------------------------------------------------------------------


def suite_poset_duality(n: int = 3) -> SuiteResult:
    res = SuiteResult("poset-duality")
    for P in poset.posets_up_to_isomorphism(n):
        rel = sorted((i + 1, j + 1) for i, j in P.leq if i != j)
        hier = P.is_hierarchical()
        eh = poset.macwilliams_equivalence_test(P, poset.EH)
        ec = poset.macwilliams_equivalence_test(P, poset.EC)
        es = poset.macwilliams_equivalence_test(P, poset.ES)
        cc = poset.complement_condition(P)
        res.check(eh.holds, f"E_H holds for {rel}", (rel, eh.witness))
        res.check(ec.holds == hier, f"E_C holds={ec.holds}, hierarchical={hier} for {rel}", (rel, ec.witness))
        if not ec.holds and ec.witness:
            c1, c2 = ec.witness
            res.note(f"E_C counterexample for {rel}: {list(c1.words)} vs {list(c2.words)}")
        res.check(es.holds == cc, f"E_S holds={es.holds}, complement condition={cc} for {rel}", (rel, es.witness))
    return res


def suite_hierarchical_ec(n: int = 3) -> SuiteResult:
    res = SuiteResult("hierarchical-ec")
    for P in poset.posets_up_to_isomorphism(n):
        rel = sorted((i + 1, j + 1) for i, j in P.leq if i != j)
        ec = poset.macwilliams_equivalence_test(P, poset.EC)
        rep = poset.hierarchical_equivalents_check(P)
        res.check(ec.holds == rep.hierarchical and rep.consistent, f"{rel}: hierarchical={rep.hierarchical}, E_C={ec.holds}", rel)
        if not rep.hierarchical:
            res.note(f"witnesses for {rel}: {rep.witness}")
    return res


# ---------------------------------------------------------------------------
# 7. matchedness
# ---------------------------------------------------------------------------


def suite_matched() -> SuiteResult:
    res = SuiteResult("matched")
    H = hamming(2, 3)
    for rho in (Fraction(1, 10), Fraction(1, 4)):
        rep = is_matched(H, bsc(rho), 3)
        res.check(rep.matched, f"hamming matched to BSC({float(rho)}) at n=3", rep.witness)
    rep = is_matched(H, binary_asymmetric(Fraction(1, 100), Fraction(1, 5)), 3)
    res.check(not rep.matched, "hamming not matched to asymmetric channel (0.01, 0.2) at n=3")
    if rep.witness:
        x, c1, c2 = rep.witness
        res.note(f"witness: received {x}, d({c1})={H.dist(x, c1)}, d({c2})={H.dist(x, c2)}")
    return res


# ---------------------------------------------------------------------------
# 8. Hollmann agreement
# ---------------------------------------------------------------------------


def suite_hollmann(n: int = 3, max_size: int = 3) -> SuiteResult:
    res = SuiteResult("hollmann")
    words = _vectors(2, n)
    codes = [c for k in range(1, max_size + 1) for c in itertools.combinations(words, k)]
    for mode, kw in (("e=1", {"e": 1}), ("(i,d)=(1,0)", {"ins": 1, "dels": 0}), ("(i,d)=(0,1)", {"ins": 0, "dels": 1})):
        bad = None
        for c in codes:
            rep = editperm.correction_capability(c, **kw)
            if not rep.agree:
                bad = (c, rep)
                break
        res.check(bad is None, f"criterion agrees with confusability, {mode}, {len(codes)} codes", bad)
    return res


# ---------------------------------------------------------------------------
# 9. Kendall
# ---------------------------------------------------------------------------


def adjacent_swap_distances(n: int) -> dict:
    """All-pairs distances in the Cayley graph of adjacent position swaps, by BFS."""
    perms = list(itertools.permutations(range(1, n + 1)))
    out = {}
    for s in perms:
        dist = {s: 0}
        todo = deque([s])
        while todo:
            u = todo.popleft()
            for i in range(n - 1):
                v = u[:i] + (u[i + 1], u[i]) + u[i + 2 :]
                if v not in dist:
                    dist[v] = dist[u] + 1
                    todo.append(v)
        for t, d in dist.items():
            out[(s, t)] = d
    return out


def suite_kendall() -> SuiteResult:
    res = SuiteResult("kendall")
    bfs = adjacent_swap_distances(5)
    bad = next(((s, t) for (s, t), d in bfs.items() if editperm.kendall_tau(s, t) != d), None)
    res.check(bad is None, f"formula = adjacent-swap BFS on all {len(bfs)} pairs of S_5", bad)
    S4 = list(itertools.permutations(range(1, 5)))
    bad = next(((s, t) for s in S4 for t in S4 if editperm.kendall_tau(s, t) < editperm.perm_l1(s, t)), None)
    res.check(bad is None, "d_tau >= d_l1 on S_4 x S_4", bad)
    for r in range(0, 3):
        d = 2 * r + 1
        lo, hi = editperm.kendall_sphere_bounds(4, r)
        A = editperm.exact_kendall_A(4, d).value
        res.check(lo <= A <= hi, f"n=4 d={d}: {lo} <= A={A} <= {hi}", (d, lo, A, hi))
    return res


# ---------------------------------------------------------------------------
# 10. bound arithmetic
# ---------------------------------------------------------------------------


def suite_bounds() -> SuiteResult:
    res = SuiteResult("bounds")
    v = asymmetric.lin_bose_bound(6)
    res.check(v == Fraction(20, 3), f"lin_bose(6) = {v}")
    v = asymmetric.varshamov_bound(4, 1)
    res.check(v == 8, f"varshamov(4,1) = {v}")
    lo, hi = editperm.ids_single_bounds(7)
    res.check((lo, hi) == (Fraction(64, 7), 16), f"A_IDS(7,1) in [{lo}, {hi}]")
    v = editperm.kendall_singleton_bound(4, 4)
    res.check(v == 6, f"kendall singleton-type n=4 t=4 = {v}")
    return res


# ---------------------------------------------------------------------------
# 11. isometries
# ---------------------------------------------------------------------------


def suite_isometries(cap: int | None = None) -> SuiteResult:
    res = SuiteResult("isometries")
    coverings = [
        ("burst n=3 b=2", combinatorial.burst_covering(3, 2)),
        ("cyclic burst n=4 b=2", combinatorial.burst_covering(4, 2, True)),
        ("{12},{3}", combinatorial.partition_covering([2, 1])),
        ("{12},{23},{13}", combinatorial.Covering.from_one_based(3, [[1, 2], [2, 3], [1, 3]])),
    ]
    for label, cov in coverings:
        rep = combinatorial.verify_comb_isometries(cov, 3, cap=cap)
        res.check(
            rep.all_preserve,
            f"combinatorial {label} q=3: {rep.permutations} perms, {rep.matrices} matrices, {rep.compositions} products",
            rep.witness,
        )
    for n in (2, 3, 4):
        for P in poset.posets_up_to_isomorphism(n):
            rel = sorted((i + 1, j + 1) for i, j in P.leq if i != j)
            for q in (2, 3):
                rep = poset.verify_poset_isometries(P, q, cap=cap)
                res.check(rep.all_preserve, f"poset n={n} {rel} q={q}: {rep.automorphisms} perms, {rep.matrices} matrices", rep.witness)
    for q in (2, 3):
        rep = editperm.edit_isometry_check(4, q, "IDS")
        res.check(bool(rep), f"edit reversal x S_{q}: {rep.maps} maps preserve d_IDS on lengths <= 4", rep.witness)
    return res


SUITES = {
    "metric-axioms": suite_metric_axioms,
    "degeneracy": suite_degeneracy,
    "packing-radius": suite_packing_radius,
    "parent-code": suite_parent_code,
    "macwilliams-block": suite_macwilliams_block,
    "poset-duality": suite_poset_duality,
    "hierarchical-ec": suite_hierarchical_ec,
    "matched": suite_matched,
    "hollmann": suite_hollmann,
    "kendall": suite_kendall,
    "bounds": suite_bounds,
    "isometries": suite_isometries,
}


def run_suite(name: str) -> SuiteResult:
    if name not in SUITES:
        raise DomainError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    return SUITES[name]()
