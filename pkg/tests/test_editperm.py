from __future__ import annotations

import itertools
import math
import random
from collections import deque
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from metriforge.config import DomainError, SpaceTooLarge
from metriforge.core import check_metric_axioms
from metriforge.editperm import (
    compose,
    correction_capability,
    cullina_bound,
    d_id_via_lcs,
    d_star_id,
    edit_bounds,
    edit_dist,
    edit_isometry_check,
    edit_metric,
    exact_A,
    exact_kendall_A,
    ids_single_bounds,
    inverse,
    inversion_table,
    inversion_table_literal,
    kendall_ball_sizes,
    kendall_bounds,
    kendall_metric,
    kendall_tau,
    lcs_length,
    levenshtein_qary_bounds,
    parse_ops,
    perm_l1,
    perm_l1_literal,
    perm_l1_metric,
)


def strings(q, max_len):
    return [s for k in range(max_len + 1) for s in itertools.product(range(q), repeat=k)]


def lowrance_wagner(x, y, ops):
    """Unit-cost Lowrance-Wagner DP; substitutions cost 2 (delete + insert) when S is absent."""
    INF = 10**9
    sub = 1 if "S" in ops else 2
    m, n = len(x), len(y)
    H = [[0] * (n + 1) for _ in range(m + 1)]
    for i in range(m + 1):
        H[i][0] = i
    for j in range(n + 1):
        H[0][j] = j
    last_row: dict = {}
    for i in range(1, m + 1):
        last_col = 0
        for j in range(1, n + 1):
            k, l = last_row.get(y[j - 1], 0), last_col
            cost = 0 if x[i - 1] == y[j - 1] else sub
            if cost == 0:
                last_col = j
            best = min(H[i - 1][j] + 1, H[i][j - 1] + 1, H[i - 1][j - 1] + cost)
            if "T" in ops and k and l:
                best = min(best, H[k - 1][l - 1] + (i - k - 1) + 1 + (j - l - 1))
            H[i][j] = best if best < INF else INF
        last_row[x[i - 1]] = i
    return H[m][n]


def star_oracle(x, y, alphabet):
    """Least e with y reachable from x by at most e insertions and at most e deletions, doubled."""
    for e in range(len(x) + len(y) + 1):
        seen = {(x, 0, 0)}
        todo = deque(seen)
        while todo:
            s, i, d = todo.popleft()
            if s == y:
                return 2 * e
            nxt = []
            if d < e:
                nxt += [(s[:k] + s[k + 1 :], i, d + 1) for k in range(len(s))]
            if i < e:
                nxt += [(s[:k] + (a,) + s[k:], i + 1, d) for k in range(len(s) + 1) for a in alphabet]
            for t in nxt:
                if t not in seen:
                    seen.add(t)
                    todo.append(t)
    raise AssertionError


def kendall_bfs(n, source):
    dist = {source: 0}
    todo = deque([source])
    while todo:
        s = todo.popleft()
        for i in range(n - 1):
            t = s[:i] + (s[i + 1], s[i]) + s[i + 2 :]
            if t not in dist:
                dist[t] = dist[s] + 1
                todo.append(t)
    return dist


def mahonian(n):
    # coefficients of prod_{k=1}^{n} (1 + x + ... + x^{k-1})
    c = [1]
    for k in range(1, n + 1):
        out = [0] * (len(c) + k - 1)
        for i, v in enumerate(c):
            for j in range(k):
                out[i + j] += v
        c = out
    return c


# ---------------------------------------------------------------------------
# Edit distances


def test_parse_ops():
    assert parse_ops("ids") == frozenset("IDS")
    for bad in ("IS", "DT", "IDX"):
        with pytest.raises(DomainError):
            parse_ops(bad)


def test_edit_examples():
    assert edit_dist("ID", "ab", "b") == 1
    assert edit_dist("ID", "abc", "acb") == 2
    assert edit_dist("IDS", "abc", "acb") == 2
    assert edit_dist("IDST", "abc", "acb") == 1
    for ops in ("ID", "IDS", "IDT", "IDST"):
        assert edit_dist(ops, "abca", "abca") == 0
        assert edit_dist(ops, "", "") == 0


def test_lcs_examples():
    assert lcs_length("abc", "acb") == 2 and d_id_via_lcs("abc", "acb") == 2
    assert d_id_via_lcs("abc", "abc") == 0
    assert d_id_via_lcs("ab", "cd") == 4


def test_id_equals_lcs_formula_exhaustive():
    S = strings(2, 5)
    for x in S:
        for y in S:
            assert edit_dist("ID", x, y) == d_id_via_lcs(x, y)


@pytest.mark.parametrize("ops", ["ID", "IDS", "IDT", "IDST"])
def test_edit_against_lowrance_wagner(ops):
    S = strings(2, 4) + [s for s in strings(3, 3) if 2 in s]
    for x in S:
        for y in S[::3]:
            assert edit_dist(ops, x, y) == lowrance_wagner(x, y, ops)


@given(st.text("abc", max_size=7), st.text("abc", max_size=7))
@settings(max_examples=150, deadline=None)
def test_transposition_distance_hypothesis(x, y):
    assert edit_dist("IDST", x, y) == lowrance_wagner(x, y, "IDST")
    assert edit_dist("IDST", x, y) <= edit_dist("IDS", x, y) <= edit_dist("ID", x, y)


@pytest.mark.parametrize("ops,q,L", [("ID", 2, 4), ("IDS", 2, 4), ("IDST", 2, 3), ("ID", 3, 3), ("IDS", 3, 3)])
def test_edit_triangle(ops, q, L):
    m = edit_metric(ops, q)
    assert check_metric_axioms(m, strings(q, L)).passed


def test_d_star_examples():
    assert edit_dist("ID", "aba", "a") == 2 and d_star_id("aba", "a") == 4
    assert d_star_id("ab", "cd") == 4 == edit_dist("ID", "ab", "cd")
    assert d_star_id("abc", "abc") == 0


def test_d_star_against_search():
    S = strings(2, 4)
    for x in S:
        for y in S[::2]:
            assert d_star_id(x, y) == star_oracle(x, y, (0, 1))
            assert edit_dist("ID", x, y) <= d_star_id(x, y)


# ---------------------------------------------------------------------------
# Correction capability


def test_correction_examples():
    r = correction_capability([(0, 0), (1, 1)], e=1)
    assert r.distance == 4 and r.criterion and r.confusability
    r = correction_capability([(0, 0), (0, 1)], e=1)
    assert not r.criterion and not r.confusability
    z = r.witness[2]
    assert edit_dist("ID", z, (0, 0)) <= 1 and edit_dist("ID", z, (0, 1)) <= 1
    for e in range(3):
        assert correction_capability([(0, 1, 1)], e=e).confusability


def test_hollmann_agreement_length_3():
    pts = list(itertools.product((0, 1), repeat=3))
    for k in (2, 3):
        for C in itertools.combinations(pts, k):
            assert correction_capability(C, e=1).agree
            assert correction_capability(C, ins=1, dels=0).agree
            assert correction_capability(C, ins=0, dels=1).agree


def test_hollmann_agreement_mixed_lengths():
    S = strings(2, 3)
    rng = random.Random(5)
    for _ in range(150):
        C = rng.sample(S, rng.randint(2, 3))
        assert correction_capability(C, e=1).agree
        assert correction_capability(C, ins=1, dels=1).agree


@pytest.mark.parametrize("n", range(1, 6))
def test_levenshtein_composition_lemma(n):
    # pairwise: one-deletion correction implies correction of one edit of either kind
    pts = list(itertools.product((0, 1), repeat=n))
    for a, b in itertools.combinations(pts, 2):
        if correction_capability([a, b], ins=0, dels=1).confusability:
            assert correction_capability([a, b], ins=1, dels=0).confusability
            assert correction_capability([a, b], e=1).confusability


def test_correction_rejects():
    with pytest.raises(DomainError):
        correction_capability([(0,), (0,)], e=1)
    with pytest.raises(DomainError):
        correction_capability([(0,), (1,)])
    with pytest.raises(DomainError):
        correction_capability([(0,), (2,)], e=1)


# ---------------------------------------------------------------------------
# Isometries


def test_edit_isometries():
    rep = edit_isometry_check(4, 2)
    assert rep.all_preserve and rep.distinct and rep.maps == 4
    rep = edit_isometry_check(3, 3)
    assert rep and rep.maps == 12


# ---------------------------------------------------------------------------
# Bounds and exact sizes


def test_bound_arithmetic():
    assert ids_single_bounds(7) == (Fraction(64, 7), Fraction(16))
    assert levenshtein_qary_bounds(4, 0, 3)[0] == 81
    assert cullina_bound(4, 1, 0) == 4
    assert edit_bounds("cullina", n=4, a=1, b=0) == 4
    assert edit_bounds("recursion", a_prev=5, q=3) == 15
    with pytest.raises(DomainError):
        edit_bounds("nope", n=3)
    with pytest.raises(DomainError):
        edit_bounds("ids1", n=3, q=3)


def test_exact_a_examples():
    assert exact_A(2, 1, "ID").value == 2
    assert set(exact_A(2, 1, "ID").code) in ({(0, 0), (1, 1)},)
    for n in range(1, 5):
        assert exact_A(n, 0, "IDS").value == 2**n
    assert exact_A(2, 0, "ID", q=3).value == 9
    with pytest.raises(SpaceTooLarge):
        exact_A(13, 1)


EXACT_ID = {1: 1, 2: 2, 3: 2, 4: 4, 5: 6, 6: 10}
EXACT_IDS = {1: 1, 2: 1, 3: 2, 4: 2, 5: 4, 6: 7}


@pytest.mark.parametrize("n", range(1, 7))
def test_exact_a_values_and_bounds(n):
    a_id = exact_A(n, 1, "ID")
    a_ids = exact_A(n, 1, "IDS")
    assert (a_id.value, a_ids.value) == (EXACT_ID[n], EXACT_IDS[n])
    # the returned codes really have the required distance
    for ops, res in (("ID", a_id), ("IDS", a_ids)):
        assert all(edit_dist(ops, a, b) > 2 for a, b in itertools.combinations(res.code, 2))
    assert a_id.value <= levenshtein_qary_bounds(n, 1)[1]
    assert a_ids.value <= ids_single_bounds(n)[1]
    if n > 1:
        assert a_ids.value <= edit_bounds("recursion", a_prev=EXACT_IDS[n - 1])
        assert a_id.value <= 2 * EXACT_ID[n - 1]


def test_exact_a_ternary_recursion():
    prev = None
    for n in range(1, 5):
        v = exact_A(n, 1, "IDS", q=3).value
        if prev is not None:
            assert v <= 3 * prev
        prev = v


# ---------------------------------------------------------------------------
# Permutations


def test_perm_basics():
    assert compose((2, 1, 3), (3, 1, 2)) == (1, 3, 2)
    assert inverse((2, 3, 1)) == (3, 1, 2)
    with pytest.raises(DomainError):
        kendall_tau((1, 2), (1, 2, 3))
    with pytest.raises(DomainError):
        inverse((1, 1, 2))


def test_kendall_examples():
    assert kendall_tau((1, 2, 3), (3, 2, 1)) == 3
    assert kendall_tau((2, 1, 3), (1, 2, 3)) == 1
    assert kendall_tau((3, 1, 2), (3, 1, 2)) == 0


@pytest.mark.parametrize("n", range(1, 6))
def test_kendall_equals_bfs_all_pairs(n):
    perms = list(itertools.permutations(range(1, n + 1)))
    for s in perms:
        d = kendall_bfs(n, s)
        for p in perms:
            assert kendall_tau(s, p) == d[p]


def test_kendall_equals_bfs_n6_sampled_sources():
    perms = list(itertools.permutations(range(1, 7)))
    for s in random.Random(1).sample(perms, 6):
        d = kendall_bfs(6, s)
        for p in perms:
            assert kendall_tau(s, p) == d[p]


def test_kendall_composition_invariance():
    perms = list(itertools.permutations(range(1, 5)))
    for r in perms:
        for s in perms:
            for p in perms[::5]:
                assert kendall_tau(compose(s, r), compose(p, r)) == kendall_tau(s, p)
    # the other side reorders positions and is not an isometry
    s, p, r = (1, 2, 3, 4), (2, 1, 3, 4), (4, 3, 2, 1)
    assert kendall_tau(compose(r, s), compose(r, p)) == kendall_tau(s, p)
    s, p, r = (1, 2, 3, 4), (2, 1, 3, 4), (1, 3, 2, 4)
    assert kendall_tau(compose(r, s), compose(r, p)) != kendall_tau(s, p)


def test_inversion_tables():
    assert inversion_table((2, 1, 3)) == (1, 0)
    assert perm_l1((2, 1, 3), (1, 2, 3)) == 1
    assert perm_l1((3, 1, 2), (3, 1, 2)) == 0
    for n in range(2, 6):
        for s in itertools.permutations(range(1, n + 1)):
            x = inversion_table(s)
            assert all(0 <= x[i] <= i + 1 for i in range(n - 1))
    # the position-indexed reading breaks d_tau >= d_l1
    s, p = (1, 3, 2, 4), (1, 3, 4, 2)
    assert inversion_table_literal(p) == (0, 0, 2) and inversion_table(p) == (0, 1, 1)
    assert kendall_tau(s, p) == 1 and perm_l1_literal(s, p) == 3 and perm_l1(s, p) == 1


def test_tau_dominates_l1_on_s4():
    perms = list(itertools.permutations(range(1, 5)))
    for s in perms:
        for p in perms:
            assert kendall_tau(s, p) >= perm_l1(s, p)


def test_inversion_table_is_a_bijection_onto_g_n():
    for n in range(1, 6):
        tables = {inversion_table(s) for s in itertools.permutations(range(1, n + 1))}
        assert len(tables) == math.factorial(n)
        assert tables == set(itertools.product(*[range(i + 2) for i in range(n - 1)]))


@pytest.mark.parametrize("metric", [kendall_metric(4), perm_l1_metric(4), kendall_metric(5)], ids=["tau4", "l1_4", "tau5"])
def test_permutation_metric_axioms(metric):
    assert check_metric_axioms(metric).passed


@pytest.mark.parametrize("n", range(1, 8))
def test_kendall_balls_are_mahonian(n):
    assert list(kendall_ball_sizes(n)) == list(itertools.accumulate(mahonian(n)))


def test_kendall_bound_examples():
    assert kendall_ball_sizes(4)[1] == 4
    assert kendall_bounds(4, r=1)["sphere_upper"] == 6
    assert kendall_bounds(4, t=4)["singleton"] == 6
    b = kendall_bounds(5, r=0)
    assert b["sphere_lower"] == b["sphere_upper"] == 120
    with pytest.raises(DomainError):
        kendall_bounds(4, t=3)
    with pytest.raises(DomainError):
        kendall_bounds(4, t=6)
    with pytest.raises(DomainError):
        kendall_bounds(4)


@pytest.mark.parametrize("n,t", [(n, t) for n in range(3, 8) for t in range(n, n * (n - 1) // 2)])
def test_singleton_floor_matches_real_arithmetic(n, t):
    v = 1.5 + math.sqrt(n * (n - 1) - 2 * t + 0.25)
    assert kendall_bounds(n, t=t)["singleton"] == math.factorial(math.floor(v + 1e-12))


@pytest.mark.parametrize("r", [0, 1, 2])
def test_kendall_sphere_bounds_against_exact(r):
    A = exact_kendall_A(4, 2 * r + 1)
    lo, hi = kendall_sphere_bounds_pair(4, r)
    assert lo <= A.value <= hi
    assert all(kendall_tau(a, b) >= 2 * r + 1 for a, b in itertools.combinations(A.code, 2))


def kendall_sphere_bounds_pair(n, r):
    b = kendall_bounds(n, r=r)
    return b["sphere_lower"], b["sphere_upper"]


def test_exact_kendall_examples():
    assert exact_kendall_A(4, 1).value == 24
    assert exact_kendall_A(4, 3).value == 5
    assert exact_kendall_A(4, 5).value == 2
    # Singleton-type bound for n=4, t=4 dominates the exact size at distance 4
    assert exact_kendall_A(4, 4).value <= kendall_bounds(4, t=4)["singleton"]
