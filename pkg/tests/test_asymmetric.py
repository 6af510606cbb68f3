from __future__ import annotations

import itertools
from fractions import Fraction

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from metriforge.asymmetric import (
    asym_dist,
    asym_min_distance,
    asymmetric_metric,
    corrects_asymmetric,
    gen_asym_dist,
    gen_asymmetric_metric,
    is_tEC_AUED_condition,
    lin_bose_bound,
    n_count,
    n_g,
    varshamov_bound,
)
from metriforge.config import DomainError
from metriforge.core import check_metric_axioms, check_weight_properties, hamming


def words(n):
    return list(itertools.product((0, 1), repeat=n))


def test_examples():
    x, y = (0, 0, 1, 1), (0, 1, 0, 1)
    assert (n_count(x, y), n_count(y, x), asym_dist(x, y)) == (1, 1, 1)
    assert hamming(2, 4).dist(x, y) == 2
    assert asym_dist(x, x) == 0
    assert (n_count((0,) * 4, (1,) * 4), n_count((1,) * 4, (0,) * 4), asym_dist((0,) * 4, (1,) * 4)) == (4, 0, 4)


def test_rejects_bad_input():
    with pytest.raises(DomainError):
        n_count((0, 1), (0,))
    with pytest.raises(DomainError):
        n_count((0, 2), (0, 1))
    with pytest.raises(DomainError):
        n_g((1, -1), (0, 0))


@pytest.mark.parametrize("n", range(1, 11))
def test_hamming_is_sum_of_counts(n):
    pts = words(n) if n <= 6 else words(n)[:: 2 ** (n - 6) + 1]
    for x in pts:
        for y in pts:
            assert sum(a != b for a, b in zip(x, y)) == n_count(x, y) + n_count(y, x)


@pytest.mark.parametrize("n", range(1, 7))
def test_asymmetric_is_a_metric(n):
    assert check_metric_axioms(asymmetric_metric(n)).passed


def test_not_translation_invariant():
    m = asymmetric_metric(2)
    assert m.dist((0, 1), (1, 0)) == 1 and m.dist((0, 0), (1, 1)) == 2
    assert not check_weight_properties(asymmetric_metric(2)).wd


def test_correction_examples():
    rep = [(0, 0, 0), (1, 1, 1)]
    assert asym_min_distance(rep) == 3
    assert corrects_asymmetric(rep, 1, 1)
    assert corrects_asymmetric(rep, 2, 0)
    assert not corrects_asymmetric(rep, 2, 1)
    C = [(0, 0), (0, 1)]
    assert corrects_asymmetric(C, 0, 0)
    assert not corrects_asymmetric(C, 1, 0) and not corrects_asymmetric(C, 0, 1)


def ball_mask(c, r0, r1, pts):
    # 0-errors: c_i = 0 received 1; 1-errors: c_i = 1 received 0
    m = 0
    for k, x in enumerate(pts):
        e0 = sum(1 for a, b in zip(c, x) if a == 0 and b == 1)
        e1 = sum(1 for a, b in zip(c, x) if a == 1 and b == 0)
        if e0 <= r0 and e1 <= r1:
            m |= 1 << k
    return m


def test_constantin_rao_exhaustive_f2_4():
    # disjointness is pairwise, so checking every pair settles every code of F_2^4
    pts = words(4)
    balls = {(c, r0, r1): ball_mask(c, r0, r1, pts) for c in pts for r0 in range(5) for r1 in range(5)}
    for c, e in itertools.combinations(pts, 2):
        da = max(sum(a < b for a, b in zip(c, e)), sum(a > b for a, b in zip(c, e)))
        for r0 in range(5):
            for r1 in range(5):
                if r0 + r1 < da:
                    assert not balls[(c, r0, r1)] & balls[(e, r0, r1)]


def test_corrects_asymmetric_agrees_with_ball_oracle():
    pts = words(4)
    for k in (2, 3):
        for C in itertools.combinations(pts, k):
            for r0, r1 in ((0, 1), (1, 0), (1, 1), (2, 0)):
                rep = corrects_asymmetric(C, r0, r1)
                want = all(not ball_mask(a, r0, r1, pts) & ball_mask(b, r0, r1, pts) for a, b in itertools.combinations(C, 2))
                assert rep.corrects == want
                if rep.theorem_condition:
                    assert rep.corrects


def test_aued_condition_examples():
    assert is_tEC_AUED_condition([(0, 0, 1, 1), (1, 1, 0, 0)], 1)
    assert not is_tEC_AUED_condition([(0, 0, 0), (1, 1, 1)], 1)
    assert is_tEC_AUED_condition([(0, 1, 1), (1, 0, 1), (1, 1, 0)], 0)


def test_bound_values():
    assert lin_bose_bound(6) == Fraction(20, 3)
    assert varshamov_bound(4, 1) == 8
    assert varshamov_bound(2, 1) == 4
    with pytest.raises(DomainError):
        varshamov_bound(4, 0)


def max_aued_code(n, t):
    """Largest code meeting the pairwise N-criterion, by networkx maximum clique."""
    G = nx.Graph()
    pts = words(n)
    G.add_nodes_from(pts)
    for a, b in itertools.combinations(pts, 2):
        if n_count(a, b) >= t + 1 and n_count(b, a) >= t + 1:
            G.add_edge(a, b)
    clique, _ = nx.max_weight_clique(G, weight=None)
    assert is_tEC_AUED_condition(clique, t)
    return len(clique)


@pytest.mark.parametrize("n", range(2, 7))
def test_bounds_dominate_exact_aued_size(n):
    A = max_aued_code(n, 1)
    assert A <= int(lin_bose_bound(n))
    assert A <= int(varshamov_bound(n, 1))


def test_gen_examples():
    x, y = (2, 0), (0, 1)
    assert (n_g(x, y), n_g(y, x), gen_asym_dist(x, y)) == (2, 1, 2)
    assert gen_asym_dist(x, x) == 0


@given(st.lists(st.tuples(st.integers(0, 1), st.integers(0, 1)), min_size=1, max_size=8))
@settings(max_examples=80, deadline=None)
def test_gen_binary_equals_asymmetric(pairs):
    x = tuple(a for a, _ in pairs)
    y = tuple(b for _, b in pairs)
    assert gen_asym_dist(x, y) == asym_dist(x, y)


def test_gen_is_a_metric():
    assert check_metric_axioms(gen_asymmetric_metric(3, 3)).passed
