"""Alphabets: prime fields, table-driven prime-power fields, Z_q and plain sets.

Elements are always the integers ``0..q-1``.  For GF(p^m) an element encodes the
polynomial ``sum(c_i * x**i)`` through its base-p digits ``c_i``.
"""

from __future__ import annotations

from functools import cached_property

from .config import DomainError

PRIME_FIELD = "prime-field"
PRIME_POWER_FIELD = "prime-power-field"
INTEGER_RING = "integer-ring"
PLAIN_SET = "plain-set"
KINDS = (PRIME_FIELD, PRIME_POWER_FIELD, INTEGER_RING, PLAIN_SET)

# coefficients low -> high degree
DEFAULT_POLYS = {
    4: (1, 1, 1),  # x^2 + x + 1
    8: (1, 1, 0, 1),  # x^3 + x + 1
    9: (1, 0, 1),  # x^2 + 1
}


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def prime_power(q: int) -> tuple[int, int] | None:
    """Return ``(p, m)`` with ``q == p**m`` or None."""
    if q < 2:
        return None
    p = 2
    while q % p:
        p += 1
    m, r = 0, q
    while r % p == 0:
        r //= p
        m += 1
    return (p, m) if r == 1 else None


def _digits(a: int, p: int, m: int) -> list[int]:
    out = []
    for _ in range(m):
        out.append(a % p)
        a //= p
    return out


def _undigits(ds, p: int) -> int:
    v = 0
    for c in reversed(ds):
        v = v * p + c
    return v


class Alphabet:
    """An alphabet of size q together with whatever arithmetic its kind allows."""

    def __init__(self, q: int, kind: str | None = None, poly=None):
        if q < 2:
            raise DomainError(f"alphabet size must be >= 2, got {q}")
        pp = prime_power(q)
        if kind is None:
            if pp and pp[1] == 1:
                kind = PRIME_FIELD
            elif pp:
                kind = PRIME_POWER_FIELD
            else:
                kind = INTEGER_RING
        if kind not in KINDS:
            raise DomainError(f"unknown alphabet kind {kind!r}")
        if kind == PRIME_FIELD and not (pp and pp[1] == 1):
            raise DomainError(f"{q} is not prime")
        self.q = q
        self.kind = kind
        self.poly = None
        if kind == PRIME_POWER_FIELD:
            if not pp or pp[1] < 2:
                raise DomainError(f"{q} is not a proper prime power")
            self.p, self.m = pp
            poly = tuple(poly) if poly is not None else DEFAULT_POLYS.get(q)
            if poly is None:
                raise DomainError(f"no irreducible polynomial given for GF({q})")
            if len(poly) != self.m + 1 or poly[-1] % self.p != 1:
                raise DomainError(f"field polynomial must be monic of degree {self.m}")
            self.poly = tuple(c % self.p for c in poly)
            self._build_tables()
        elif kind in (PRIME_FIELD, INTEGER_RING):
            self.p, self.m = (q, 1) if kind == PRIME_FIELD else (None, None)

    def __repr__(self):
        extra = f", poly={self.poly}" if self.poly else ""
        return f"Alphabet({self.q}, {self.kind!r}{extra})"

    def __eq__(self, other):
        return isinstance(other, Alphabet) and (self.q, self.kind, self.poly) == (
            other.q,
            other.kind,
            other.poly,
        )

    def __hash__(self):
        return hash((self.q, self.kind, self.poly))

    @property
    def is_field(self) -> bool:
        return self.kind in (PRIME_FIELD, PRIME_POWER_FIELD)

    @property
    def has_arithmetic(self) -> bool:
        return self.kind != PLAIN_SET

    @property
    def characteristic(self) -> int:
        if self.kind == PRIME_POWER_FIELD:
            return self.p
        if self.kind == PLAIN_SET:
            raise DomainError("plain-set alphabet has no arithmetic")
        return self.q

    def _build_tables(self) -> None:
        p, m, q = self.p, self.m, self.q
        add = [[0] * q for _ in range(q)]
        mul = [[0] * q for _ in range(q)]
        digs = [_digits(a, p, m) for a in range(q)]
        for a in range(q):
            for b in range(q):
                add[a][b] = _undigits([(x + y) % p for x, y in zip(digs[a], digs[b])], p)
                prod = [0] * (2 * m - 1)
                for i, x in enumerate(digs[a]):
                    if x:
                        for j, y in enumerate(digs[b]):
                            prod[i + j] = (prod[i + j] + x * y) % p
                for d in range(2 * m - 2, m - 1, -1):
                    c = prod[d]
                    if c:
                        for i in range(m + 1):
                            prod[d - m + i] = (prod[d - m + i] - c * self.poly[i]) % p
                mul[a][b] = _undigits(prod[:m], p)
        inv = [0] * q
        for a in range(1, q):
            hits = [b for b in range(1, q) if mul[a][b] == 1]
            if len(hits) != 1:
                raise DomainError(f"polynomial {self.poly} is not irreducible over F_{p}")
            inv[a] = hits[0]
        neg = [next(b for b in range(q) if add[a][b] == 0) for a in range(q)]
        self._add, self._mul, self._inv, self._neg = add, mul, inv, neg

    def _need_arith(self):
        if self.kind == PLAIN_SET:
            raise DomainError("plain-set alphabet has no arithmetic")

    def add(self, a: int, b: int) -> int:
        if self.kind == PRIME_POWER_FIELD:
            return self._add[a][b]
        self._need_arith()
        return (a + b) % self.q

    def sub(self, a: int, b: int) -> int:
        if self.kind == PRIME_POWER_FIELD:
            return self._add[a][self._neg[b]]
        self._need_arith()
        return (a - b) % self.q

    def neg(self, a: int) -> int:
        if self.kind == PRIME_POWER_FIELD:
            return self._neg[a]
        self._need_arith()
        return (-a) % self.q

    def mul(self, a: int, b: int) -> int:
        if self.kind == PRIME_POWER_FIELD:
            return self._mul[a][b]
        self._need_arith()
        return (a * b) % self.q

    def inv(self, a: int) -> int:
        if not self.is_field:
            raise DomainError(f"no inverses in {self.kind} of size {self.q}")
        if a % self.q == 0:
            raise ZeroDivisionError("zero has no inverse")
        if self.kind == PRIME_POWER_FIELD:
            return self._inv[a]
        return pow(a, -1, self.q)

    def int_mul(self, k: int, a: int) -> int:
        """``k * a`` as repeated addition (``k`` any integer)."""
        if self.kind == PRIME_POWER_FIELD:
            k %= self.p
            r = 0
            for _ in range(k):
                r = self._add[r][a]
            return r
        self._need_arith()
        return (k * a) % self.q

    @cached_property
    def nonzero(self) -> tuple[int, ...]:
        return tuple(range(1, self.q))

    # vector helpers --------------------------------------------------------

    def vadd(self, x, y) -> tuple[int, ...]:
        return tuple(self.add(a, b) for a, b in zip(x, y))

    def vsub(self, x, y) -> tuple[int, ...]:
        return tuple(self.sub(a, b) for a, b in zip(x, y))

    def vscale(self, c: int, x) -> tuple[int, ...]:
        return tuple(self.mul(c, a) for a in x)

    def dot(self, x, y) -> int:
        s = 0
        for a, b in zip(x, y):
            s = self.add(s, self.mul(a, b))
        return s

    def check_word(self, x, n: int | None = None) -> tuple[int, ...]:
        x = tuple(int(a) for a in x)
        if n is not None and len(x) != n:
            raise DomainError(f"word {x} has length {len(x)}, expected {n}")
        for a in x:
            if not 0 <= a < self.q:
                raise DomainError(f"symbol {a} outside alphabet of size {self.q}")
        return x


def alphabet(q: int, kind: str | None = None, poly=None) -> Alphabet:
    return Alphabet(q, kind, poly)


def zero(n: int) -> tuple[int, ...]:
    return (0,) * n


def unit(n: int, i: int) -> tuple[int, ...]:
    e = [0] * n
    e[i] = 1
    return tuple(e)


def support(x) -> frozenset[int]:
    return frozenset(i for i, a in enumerate(x) if a)


def hamming_weight(x) -> int:
    return sum(1 for a in x if a)
