"""Exact maximum clique / independent set on small graphs.

Graphs are adjacency bitmasks (``adj[v]`` has bit ``u`` set iff ``u ~ v``).
The search is branch-and-bound with greedy-colouring upper bounds.
"""

from __future__ import annotations


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def max_clique(adj: list[int]) -> list[int]:
    n = len(adj)
    best: list[int] = []

    def colour_order(P: int):
        # greedy sequential colouring; vertices returned with their colour bound
        order, bounds = [], []
        colour = 0
        U = P
        while U:
            colour += 1
            Q = U
            while Q:
                v = (Q & -Q).bit_length() - 1
                Q &= ~adj[v] & ~(1 << v)
                U &= ~(1 << v)
                order.append(v)
                bounds.append(colour)
        return order, bounds

    def expand(R: list[int], P: int):
        nonlocal best
        order, bounds = colour_order(P)
        for i in range(len(order) - 1, -1, -1):
            if len(R) + bounds[i] <= len(best):
                return
            v = order[i]
            R.append(v)
            newP = P & adj[v]
            if newP:
                expand(R, newP)
            elif len(R) > len(best):
                best = R[:]
            R.pop()
            P &= ~(1 << v)

    if n:
        expand([], (1 << n) - 1)
    return sorted(best)


def max_independent_set(adj: list[int]) -> list[int]:
    n = len(adj)
    full = (1 << n) - 1
    comp = [full & ~adj[v] & ~(1 << v) for v in range(n)]
    return max_clique(comp)


def adjacency_from_pairs(n: int, edges) -> list[int]:
    adj = [0] * n
    for u, v in edges:
        if u != v:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
    return adj


def is_independent(adj: list[int], S) -> bool:
    mask = 0
    for v in S:
        mask |= 1 << v
    return all(not (adj[v] & mask) for v in S)
