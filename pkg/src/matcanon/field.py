"""Exact field arithmetic: prime fields GF(p), binary fields GF(2^k) and a
square-closed quadratic tower over GF(p), p odd.

Field contexts operate on *raw* values so the matrix code can run its inner
loops without allocating wrapper objects:

* ``PrimeField``  -- raw value is an ``int`` residue in ``[0, p)``.
* ``BinaryField`` -- raw value is an ``int`` bitmask; bit ``i`` is the
  coefficient of ``x**i`` modulo the defining polynomial.
* ``TowerField``  -- raw value is a tuple of ``2**L`` residues, the
  coordinates of an element of level ``L``.  Level ``L+1`` is
  ``level_L[g_L]`` with ``g_L**2 = ns_L``, a fixed non-square of level ``L``,
  and the coordinate vector of ``a + b*g_L`` is ``coords(a) + coords(b)``.
  Values are always stored at the lowest level that contains them.

:class:`FieldElem` wraps ``(ctx, raw)`` with the usual operators for
interactive use and tests.
"""
from __future__ import annotations

import random as _random
import re
import threading
from dataclasses import dataclass
from typing import Any, Iterator

from .errors import FieldMismatch, NonSquare, ParseError, TowerLevelExceeded

DEFAULT_MAX_LEVEL = 8
_EXHAUSTIVE_SQRT_LIMIT = 1 << 16


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def _tonelli_shanks(a: int, p: int) -> int:
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


class _PrimeSqrt:
    """Square roots modulo an odd or even prime ``p``."""

    def __init__(self, p: int):
        self.p = p
        self._table: dict[int, int] | None = None

    def root(self, a: int) -> int | None:
        p = self.p
        a %= p
        if a == 0 or p == 2:
            return a
        if p < _EXHAUSTIVE_SQRT_LIMIT:
            if self._table is None:
                table: dict[int, int] = {}
                for s in range(p):
                    table.setdefault(s * s % p, s)
                self._table = table
            return self._table.get(a)
        if pow(a, (p - 1) // 2, p) != 1:
            return None
        return _tonelli_shanks(a, p)

    def is_square(self, a: int) -> bool:
        a %= self.p
        if a == 0 or self.p == 2:
            return True
        return pow(a, (self.p - 1) // 2, self.p) == 1


class FieldCtx:
    """Common interface.  Subclasses provide raw arithmetic."""

    kind: str = ""
    char: int = 0
    zero: Any = 0
    one: Any = 1
    #: True when every element has a square root in the field.
    square_closed = False

    # -- construction helpers -------------------------------------------
    def elem(self, value) -> "FieldElem":
        if isinstance(value, FieldElem):
            if value.ctx != self:
                raise FieldMismatch(f"{value.ctx.spec} element used in {self.spec}")
            return value
        return FieldElem(self, self.coerce(value))

    def coerce(self, value):
        """Turn an int (or a raw value, or a text token) into a raw value."""
        if isinstance(value, FieldElem):
            if value.ctx != self:
                raise FieldMismatch(f"{value.ctx.spec} element used in {self.spec}")
            return value.value
        if isinstance(value, str):
            return self.parse(value)
        return self.from_int(value)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e: int):
        if e < 0:
            a, e = self.inv(a), -e
        result = self.one
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def is_zero(self, a) -> bool:
        return a == self.zero

    def __eq__(self, other):
        return type(self) is type(other) and self._key() == other._key()

    def __hash__(self):
        return hash((type(self).__name__, self._key()))

    def __repr__(self):
        return f"<{self.spec}>"

    def _key(self):
        raise NotImplementedError


class PrimeField(FieldCtx):
    kind = "prime"

    def __init__(self, p: int):
        if not is_prime(p):
            raise ParseError(f"{p} is not prime")
        self.p = self.char = p
        self.order = p
        self.zero, self.one = 0, 1
        self._sqrt = _PrimeSqrt(p)

    def _key(self):
        return (self.p,)

    @property
    def spec(self) -> str:
        return f"GF({self.p})"

    def from_int(self, v: int) -> int:
        return int(v) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.p - 2, self.p)

    def div(self, a, b):
        return a * self.inv(b) % self.p

    def is_square(self, a) -> bool:
        return self._sqrt.is_square(a)

    def sqrt(self, a):
        r = self._sqrt.root(a)
        if r is None:
            raise NonSquare(f"{a} is not a square in {self.spec}")
        return r

    def elements(self) -> list[int]:
        return list(range(self.p))

    def random(self, rng: _random.Random, **_) -> int:
        return rng.randrange(self.p)

    def parse(self, token: str) -> int:
        token = token.strip()
        if not re.fullmatch(r"-?\d+", token):
            raise ParseError(f"bad {self.spec} element {token!r}")
        return _residue(int(token), self.p, self.spec)

    def format(self, a) -> str:
        return str(a)


def _residue(v: int, p: int, spec: str) -> int:
    # negatives down to -(p-1) are accepted so "-1" can be written directly
    if not -p < v < p:
        raise ParseError(f"{v} is out of range for {spec}")
    return v % p


def _poly_mod(a: int, m: int) -> int:
    dm = m.bit_length()
    while a.bit_length() >= dm:
        a ^= m << (a.bit_length() - dm)
    return a


def _is_irreducible_gf2(poly: int) -> bool:
    deg = poly.bit_length() - 1
    for d in range(2, 1 << (deg // 2 + 1)):
        if d.bit_length() - 1 > deg // 2:
            break
        if _poly_mod(poly, d) == 0:
            return False
    return True


def default_binary_modulus(k: int) -> int:
    """Smallest irreducible polynomial of degree ``k`` over GF(2), as a bitmask."""
    for poly in range(1 << k, 1 << (k + 1)):
        if poly & 1 and _is_irreducible_gf2(poly):
            return poly
    raise AssertionError(k)


class BinaryField(FieldCtx):
    """GF(2^k) modulo a fixed irreducible polynomial."""

    kind = "binary"
    square_closed = True

    def __init__(self, k: int, modulus: int | None = None):
        if k < 1:
            raise ParseError("binary field degree must be >= 1")
        self.k = k
        self.char = 2
        self.order = 1 << k
        self.modulus = modulus or default_binary_modulus(k)
        if self.modulus.bit_length() - 1 != k or not _is_irreducible_gf2(self.modulus):
            raise ParseError(f"modulus {self.modulus:#b} is not irreducible of degree {k}")
        self.zero, self.one = 0, 1
        self._mul_table = None
        if k <= 8:
            q = self.order
            self._mul_table = [[self._clmul(a, b) for b in range(q)] for a in range(q)]
            self._inv_table = [0] + [self.pow(a, q - 2) for a in range(1, q)]

    def _key(self):
        return (self.k, self.modulus)

    @property
    def spec(self) -> str:
        return f"GF(2^{self.k})"

    def _clmul(self, a: int, b: int) -> int:
        r = 0
        while b:
            if b & 1:
                r ^= a
            b >>= 1
            a <<= 1
        return _poly_mod(r, self.modulus)

    def from_int(self, v: int) -> int:
        v = int(v)
        if not 0 <= v < self.order:
            raise ValueError(f"{v} is not a bitmask of {self.spec}")
        return v

    def add(self, a, b):
        return a ^ b

    sub = add

    def neg(self, a):
        return a

    def mul(self, a, b):
        if self._mul_table is not None:
            return self._mul_table[a][b]
        return self._clmul(a, b)

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self._mul_table is not None:
            return self._inv_table[a]
        return self.pow(a, self.order - 2)

    def is_square(self, a) -> bool:
        return True

    def sqrt(self, a):
        # Frobenius is bijective: sqrt(a) = a^(2^(k-1)).
        for _ in range(self.k - 1):
            a = self.mul(a, a)
        return a

    def elements(self) -> list[int]:
        return list(range(self.order))

    def random(self, rng: _random.Random, **_) -> int:
        return rng.randrange(self.order)

    def parse(self, token: str) -> int:
        parts = token.strip().split(":")
        if len(parts) > self.k or any(c not in ("0", "1") for c in parts):
            raise ParseError(f"bad {self.spec} element {token!r}")
        return sum(1 << i for i, c in enumerate(parts) if c == "1")

    def format(self, a) -> str:
        return ":".join(str((a >> i) & 1) for i in range(self.k))


class TowerField(FieldCtx):
    """Union of GF(p^(2^L)), L = 0..max_level, p odd.

    Each level is a quadratic extension of the previous one by a square root
    of ``ns_L``, the first non-square of level ``L`` in :meth:`_enumerate`
    order.  Every element of level ``L`` is therefore a square at level
    ``L+1``.
    """

    kind = "tower"
    square_closed = True

    def __init__(self, p: int, max_level: int = DEFAULT_MAX_LEVEL):
        if not is_prime(p) or p == 2:
            raise ParseError("tower fields need an odd prime")
        self.p = self.char = p
        self.max_level = max_level
        self.order = None
        self.zero, self.one = (0,), (1,)
        self._base_sqrt = _PrimeSqrt(p)
        self._half = (p + 1) // 2  # 1/2 mod p
        # padded non-squares: _ns[L] has length 2**L
        self._ns: list[tuple] = []
        self._lock = threading.RLock()
        # padded length -> (log dict, exp list) for small levels
        self._logs: dict[int, tuple[dict, list]] = {}
        self._grow(0)

    def _key(self):
        return (self.p, self.max_level)

    @property
    def spec(self) -> str:
        return f"TOWER({self.p})"

    # -- levels ---------------------------------------------------------
    @staticmethod
    def level(a: tuple) -> int:
        return len(a).bit_length() - 1

    def nonsquare(self, level: int) -> tuple:
        """The fixed non-square ``ns_level``, padded to length ``2**level``."""
        self._grow(level)
        return self._ns[level]

    def generator(self, level: int) -> tuple:
        """``g`` with ``g*g == ns_(level-1)``; lives at ``level`` (>= 1)."""
        if level < 1:
            raise ValueError("level-0 has no generator")
        self._check_level(level)
        self._grow(level - 1)
        half = 1 << (level - 1)
        return (0,) * half + (1,) + (0,) * (half - 1)

    def _check_level(self, level: int):
        if level > self.max_level:
            raise TowerLevelExceeded(
                f"tower level {level} exceeds the configured maximum {self.max_level}")

    def _grow(self, level: int):
        if level < len(self._ns):
            return
        with self._lock:
            while len(self._ns) <= level:
                L = len(self._ns)
                for cand in self._enumerate(L):
                    if not self._is_square_at(cand, L):
                        self._ns.append(cand)
                        break

    def _enumerate(self, level: int) -> Iterator[tuple]:
        """Nonzero level elements, index i -> base-p digits of i placed from
        the top coordinate downwards (so elements outside the subfield come
        first for level >= 1)."""
        size = 1 << level
        i = 1
        while i < self.p ** size:
            digits = [0] * size
            j, pos = i, size - 1
            while j:
                digits[pos] = j % self.p
                j //= self.p
                pos -= 1
            yield tuple(digits)
            i += 1

    @staticmethod
    def normalize(a: tuple) -> tuple:
        while len(a) > 1:
            half = len(a) >> 1
            if any(a[half:]):
                break
            a = a[:half]
        return a

    def lift(self, a: tuple, level: int) -> tuple:
        """Embed ``a`` at ``level`` (zero padding); inverse of :meth:`normalize`."""
        size = 1 << level
        if len(a) > size:
            raise ValueError("cannot lift to a lower level")
        self._check_level(level)
        return tuple(a) + (0,) * (size - len(a))

    # -- padded arithmetic (vectors of equal length 2**L) -----------------
    def _padd(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def _psub(self, a, b):
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def _pscale(self, c: int, a):
        p = self.p
        return tuple(c * x % p for x in a)

    def _log_table(self, n: int):
        """Discrete log/exp tables for the level of padded length ``n``,
        built once when the level has at most 2**16 elements."""
        t = self._logs.get(n)
        if t is not None or n < 4 or self.p ** n > 1 << 16:
            return t
        with self._lock:
            if n in self._logs:
                return self._logs[n]
            self._grow(n.bit_length() - 2)
            q1 = self.p ** n - 1
            one = (1,) + (0,) * (n - 1)
            for g in self._enumerate(n.bit_length() - 1):
                exp, x = [one], g
                while x != one:
                    exp.append(x)
                    x = self._pmul_raw(x, g)
                if len(exp) == q1:
                    break
            t = ({x: i for i, x in enumerate(exp)}, exp)
            self._logs[n] = t
            return t

    def _pmul(self, a, b):
        n = len(a)
        if n >= 4:
            t = self._logs.get(n) or self._log_table(n)
            if t is not None:
                log, exp = t
                la, lb = log.get(a), log.get(b)
                if la is None or lb is None:
                    return (0,) * n
                return exp[(la + lb) % len(exp)]
        return self._pmul_raw(a, b)

    def _pmul_raw(self, a, b):
        n = len(a)
        p = self.p
        if n == 1:
            return (a[0] * b[0] % p,)
        if n == 2:
            a0, a1 = a
            b0, b1 = b
            ns = self._ns[0][0]
            return ((a0 * b0 + ns * a1 * b1) % p, (a0 * b1 + a1 * b0) % p)
        h = n >> 1
        a0, a1, b0, b1 = a[:h], a[h:], b[:h], b[h:]
        ac = self._pmul(a0, b0)
        bd = self._pmul(a1, b1)
        mid = self._psub(self._psub(self._pmul(self._padd(a0, a1), self._padd(b0, b1)), ac), bd)
        return self._padd(ac, self._pmul(bd, self._ns[h.bit_length() - 1])) + mid

    def _pinv(self, a):
        n = len(a)
        t = self._logs.get(n)
        if t is not None and a in t[0]:
            log, exp = t
            return exp[-log[a] % len(exp)]
        if n == 1:
            if a[0] == 0:
                raise ZeroDivisionError("inverse of zero")
            return (pow(a[0], self.p - 2, self.p),)
        h = n >> 1
        a0, a1 = a[:h], a[h:]
        norm = self._psub(self._pmul(a0, a0), self._pmul(self._pmul(a1, a1), self._ns[h.bit_length() - 1]))
        ninv = self._pinv(norm)
        return self._pmul(a0, ninv) + self._pmul(self._psub((0,) * h, a1), ninv)

    def _is_square_at(self, a, level: int) -> bool:
        """Is ``a`` (length <= 2**level) a square in level ``level``?"""
        a = self.normalize(tuple(a))
        own = self.level(a)
        if own < level:
            return True
        if own == 0:
            return self._base_sqrt.is_square(a[0])
        # Norm map down one level preserves (non-)squareness.
        h = len(a) >> 1
        a0, a1 = a[:h], a[h:]
        norm = self._psub(self._pmul(a0, a0), self._pmul(self._pmul(a1, a1), self._ns[own - 1]))
        return self._is_square_at(norm, own - 1)

    def _sqrt_at(self, a, level: int):
        """Square root of a square ``a`` of level ``level``, padded to that level."""
        a = self.lift(self.normalize(tuple(a)), level)
        if level == 0:
            r = self._base_sqrt.root(a[0])
            assert r is not None
            return (r,)
        h = len(a) >> 1
        a0, a1 = a[:h], a[h:]
        low = level - 1
        if not any(a1):
            if self._is_square_at(a0, low):
                return self._sqrt_at(a0, low) + (0,) * h
            # a0 = ns * (a0/ns), sqrt = sqrt(a0/ns) * g
            s = self._sqrt_at(self._pmul(a0, self._pinv(self._ns[low])), low)
            return (0,) * h + s
        ns = self._ns[low]
        norm = self._psub(self._pmul(a0, a0), self._pmul(self._pmul(a1, a1), ns))
        m = self._sqrt_at(norm, low)
        c2 = self._pscale(self._half, self._padd(a0, m))
        if not self._is_square_at(c2, low):
            c2 = self._pscale(self._half, self._psub(a0, m))
        c = self._sqrt_at(c2, low)
        d = self._pmul(a1, self._pinv(self._pscale(2, c)))
        return c + d

    # -- public raw arithmetic --------------------------------------------
    def _pair(self, a, b):
        la, lb = len(a), len(b)
        if la == lb:
            return a, b
        if la < lb:
            return a + (0,) * (lb - la), b
        return a, b + (0,) * (la - lb)

    def from_int(self, v: int) -> tuple:
        return (int(v) % self.p,)

    def coerce(self, value):
        if isinstance(value, tuple):
            n = len(value)
            if n & (n - 1) or not all(isinstance(c, int) and 0 <= c < self.p for c in value):
                raise ParseError(f"bad {self.spec} coefficient vector {value!r}")
            self._check_level(n.bit_length() - 1)
            return self.normalize(value)
        return super().coerce(value)

    def add(self, a, b):
        if len(a) == 1 and len(b) == 1:
            return ((a[0] + b[0]) % self.p,)
        a, b = self._pair(a, b)
        return self.normalize(self._padd(a, b))

    def sub(self, a, b):
        if len(a) == 1 and len(b) == 1:
            return ((a[0] - b[0]) % self.p,)
        a, b = self._pair(a, b)
        return self.normalize(self._psub(a, b))

    def neg(self, a):
        p = self.p
        return tuple(-x % p for x in a)

    def mul(self, a, b):
        if len(a) == 1:
            if len(b) == 1:
                return (a[0] * b[0] % self.p,)
            return self.normalize(self._pscale(a[0], b))
        if len(b) == 1:
            return self.normalize(self._pscale(b[0], a))
        a, b = self._pair(a, b)
        return self.normalize(self._pmul(a, b))

    def inv(self, a):
        return self._pinv(a)

    def div(self, a, b):
        return self.mul(a, self._pinv(b))

    def is_square(self, a) -> bool:
        """Squareness at the element's own level (always true one level up)."""
        return self._is_square_at(a, self.level(a))

    def sqrt(self, a):
        """Square root, searching ``a``'s level first and moving one level up
        when ``a`` is a non-square there."""
        L = self.level(a)
        if self._is_square_at(a, L):
            return self.normalize(self._sqrt_at(a, L))
        self._check_level(L + 1)
        self._grow(L)
        q = self._pmul(a, self._pinv(self._ns[L]))
        return self.normalize(self._pmul(self.lift(self._sqrt_at(q, L), L + 1), self.generator(L + 1)))

    def elements(self, level: int = 0) -> list[tuple]:
        self._check_level(level)
        size = 1 << level
        out = []
        for i in range(self.p ** size):
            digits = []
            for _ in range(size):
                digits.append(i % self.p)
                i //= self.p
            out.append(self.normalize(tuple(digits)))
        return out

    def random(self, rng: _random.Random, level: int = 0) -> tuple:
        self._check_level(level)
        self._grow(max(level - 1, 0))
        return self.normalize(tuple(rng.randrange(self.p) for _ in range(1 << level)))

    def parse(self, token: str) -> tuple:
        token = token.strip()
        m = re.fullmatch(r"L(\d+);([0-9:]+)", token)
        if m is None:
            if not re.fullmatch(r"-?\d+", token):
                raise ParseError(f"bad {self.spec} element {token!r}")
            return (_residue(int(token), self.p, self.spec),)
        level = int(m.group(1))
        coeffs = [int(c) for c in m.group(2).split(":")]
        if len(coeffs) != 1 << level or any(c >= self.p for c in coeffs):
            raise ParseError(f"bad {self.spec} element {token!r}")
        self._check_level(level)
        if level:
            self._grow(level - 1)
        return self.normalize(tuple(coeffs))

    def format(self, a) -> str:
        if len(a) == 1:
            return str(a[0])
        return f"L{self.level(a)};" + ":".join(map(str, a))


@dataclass(frozen=True)
class FieldElem:
    """A field element bound to its context.  Hashable and exactly comparable."""

    ctx: FieldCtx
    value: Any

    def _other(self, other):
        if isinstance(other, FieldElem):
            if other.ctx != self.ctx:
                raise FieldMismatch(f"{self.ctx.spec} vs {other.ctx.spec}")
            return other.value
        if isinstance(other, int):
            return self.ctx.from_int(other)
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        return FieldElem(self.ctx, self.ctx.add(self.value, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return FieldElem(self.ctx, self.ctx.sub(self.value, o))

    def __rsub__(self, other):
        o = self._other(other)
        return FieldElem(self.ctx, self.ctx.sub(o, self.value))

    def __mul__(self, other):
        o = self._other(other)
        return FieldElem(self.ctx, self.ctx.mul(self.value, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        return FieldElem(self.ctx, self.ctx.div(self.value, o))

    def __rtruediv__(self, other):
        o = self._other(other)
        return FieldElem(self.ctx, self.ctx.div(o, self.value))

    def __neg__(self):
        return FieldElem(self.ctx, self.ctx.neg(self.value))

    def __pow__(self, e: int):
        return FieldElem(self.ctx, self.ctx.pow(self.value, e))

    def __eq__(self, other):
        if isinstance(other, int):
            return self.value == self.ctx.from_int(other)
        if not isinstance(other, FieldElem):
            return NotImplemented
        return self.ctx == other.ctx and self.value == other.value

    def __hash__(self):
        return hash(self.value)

    def __bool__(self):
        return not self.ctx.is_zero(self.value)

    def inverse(self) -> "FieldElem":
        return FieldElem(self.ctx, self.ctx.inv(self.value))

    def sqrt(self) -> "FieldElem":
        return ff_sqrt(self)

    def __str__(self):
        return self.ctx.format(self.value)

    def __repr__(self):
        return f"FieldElem({self.ctx.spec}, {self})"


def ff_sqrt(x: FieldElem) -> FieldElem:
    """Square root of ``x``.

    Binary fields use the inverse Frobenius, tower fields move up one level
    when ``x`` is a non-square at its own level, and prime fields raise
    :class:`NonSquare` when no root exists.
    """
    return FieldElem(x.ctx, x.ctx.sqrt(x.value))


def tower_normalize(x: FieldElem) -> FieldElem:
    if not isinstance(x.ctx, TowerField):
        raise TypeError("tower_normalize expects a tower element")
    return FieldElem(x.ctx, TowerField.normalize(tuple(x.value)))


_FIELD_CACHE: dict[str, FieldCtx] = {}


def field_from_spec(spec: str) -> FieldCtx:
    """Parse ``GF(p)``, ``GF(2^k)``, ``GF(2**k)``, ``GF(q)`` for ``q`` a prime or
    a power of two, and ``TOWER(p)``.  Contexts are cached per spec string."""
    key = spec.strip().replace(" ", "").upper()
    if key in _FIELD_CACHE:
        return _FIELD_CACHE[key]
    m = re.fullmatch(r"GF\((\d+)(?:\^|\*\*)(\d+)\)", key)
    if m:
        base, k = int(m.group(1)), int(m.group(2))
        if base != 2:
            raise ParseError(f"unsupported field {spec!r}: only 2^k extensions")
        ctx: FieldCtx = PrimeField(2) if k == 1 else BinaryField(k)
    elif m := re.fullmatch(r"GF\((\d+)\)", key):
        q = int(m.group(1))
        if is_prime(q):
            ctx = PrimeField(q)
        elif q > 2 and q & (q - 1) == 0:
            ctx = BinaryField(q.bit_length() - 1)
        else:
            raise ParseError(f"unsupported field {spec!r}")
    elif m := re.fullmatch(r"TOWER\((\d+)\)", key):
        ctx = TowerField(int(m.group(1)))
    else:
        raise ParseError(f"unknown field spec {spec!r}")
    ctx = _FIELD_CACHE.setdefault(ctx.spec.upper(), ctx)
    _FIELD_CACHE[key] = ctx
    return ctx
