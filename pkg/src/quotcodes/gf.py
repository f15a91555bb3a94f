"""Finite fields GF(p^n) in discrete-log representation.

Every element is stored as an integer *code*: ``0`` is the zero element and
``k + 1`` stands for ``g^k`` where ``g`` is the root of the field's defining
polynomial.  Multiplication is exponent arithmetic, addition goes through a
Zech-logarithm table, and the scalar and vectorized (numpy) entry points share
those tables.  With this encoding ``1`` is the unit element and ordering by
code means "zero first, then by discrete log".
"""

from __future__ import annotations

import itertools
import re
from functools import cached_property, lru_cache

import numpy as np

MAX_ORDER = 1 << 20
# Full Q x Q addition/multiplication tables are only built below this order.
_TABLE_LIMIT = 1 << 10


class FieldError(ValueError):
    """Invalid field parameters or mixed-field arithmetic."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Return ``(p, e)`` with ``q == p**e``; raise FieldError otherwise."""
    if q < 2:
        raise FieldError(f"{q} is not a prime power")
    p = next(f for f in range(2, q + 1) if q % f == 0)
    e, rest = 0, q
    while rest % p == 0:
        rest //= p
        e += 1
    if rest != 1:
        raise FieldError(f"{q} is not a prime power")
    return p, e


def _prime_factors(n: int) -> list[int]:
    out, f = [], 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def _polymulmod(a: list[int], b: list[int], low: list[int], p: int) -> list[int]:
    # a, b: length-n coefficient lists; modulus is x^n + low(x), monic.
    n = len(low)
    prod = [0] * (2 * n - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    for top in range(2 * n - 2, n - 1, -1):
        c = prod[top]
        if c:
            prod[top] = 0
            for i, li in enumerate(low):
                prod[top - n + i] = (prod[top - n + i] - c * li) % p
    return prod[:n]


def _x_power(e: int, low: list[int], p: int) -> list[int]:
    n = len(low)
    result = [1] + [0] * (n - 1)
    base = [0, 1] + [0] * (n - 2) if n > 1 else [(-low[0]) % p]
    while e:
        if e & 1:
            result = _polymulmod(result, base, low, p)
        base = _polymulmod(base, base, low, p)
        e >>= 1
    return result


def is_primitive_polynomial(low: list[int], p: int) -> bool:
    """True when ``x^n + low(x)`` over F_p is primitive.

    ``x`` has multiplicative order p^n - 1 modulo a polynomial only if the
    quotient ring is a field, so the order test also certifies irreducibility.
    """
    n = len(low)
    if low[0] % p == 0:
        return False
    order = p**n - 1
    one = [1] + [0] * (n - 1)
    if _x_power(order, low, p) != one:
        return False
    return all(_x_power(order // r, low, p) != one for r in _prime_factors(order))


def smallest_primitive_polynomial(p: int, n: int) -> tuple[int, ...]:
    """Lexicographically smallest ``(c_0, ..., c_{n-1})`` with
    ``x^n + c_{n-1} x^{n-1} + ... + c_0`` primitive over F_p."""
    for low in itertools.product(range(p), repeat=n):
        if is_primitive_polynomial(list(low), p):
            return tuple(low)
    raise FieldError(f"no primitive polynomial of degree {n} over F_{p}")  # pragma: no cover


def _binary_powers(n: int, poly: tuple[int, ...]) -> list[int]:
    if n == 1:
        return [1]
    low = sum(c << i for i, c in enumerate(poly))
    top = 1 << n
    out, v = [], 1
    for _ in range(top - 1):
        out.append(v)
        v <<= 1
        if v & top:
            v ^= top | low
    return out


class GF:
    """The field GF(p^n) with discrete-log element codes.

    Build instances through :func:`make_field`, which caches them, so that
    equal parameters give the identical object.
    """

    def __init__(self, p: int, n: int, poly: tuple[int, ...]):
        self.p = p
        self.n = n
        self.order = p**n
        self.poly = poly
        Q = self.order
        qm1 = Q - 1
        self.qm1 = qm1

        # exp[k]: g^k as an integer whose base-p digits are polynomial coeffs
        if p == 2:
            exp = np.array(_binary_powers(n, poly), dtype=np.int64)
        else:
            exp = np.zeros(qm1, dtype=np.int64)
            digits = [1] + [0] * (n - 1) if n > 1 else [1]
            weights = [p**i for i in range(n)]
            for k in range(qm1):
                exp[k] = sum(d * w for d, w in zip(digits, weights))
                if n == 1:
                    digits = [(digits[0] * (-poly[0])) % p]
                else:
                    top = digits[-1]
                    digits = [0] + digits[:-1]
                    if top:
                        digits = [(d - top * c) % p for d, c in zip(digits, poly)]
        log = np.full(Q, -1, dtype=np.int64)
        log[exp] = np.arange(qm1)
        if (log[1:] < 0).any():
            raise FieldError("defining polynomial is not primitive")  # pragma: no cover
        self.exp = exp
        self.log = log

        # zech[k] = log(1 + g^k), or -1 when 1 + g^k == 0
        plus_one = exp - exp % p + (exp % p + 1) % p
        zech = np.where(plus_one == 0, -1, log[plus_one])
        self.zech = zech
        self.minus_one = 0 if p == 2 else qm1 // 2  # log of -1

        codes = np.arange(Q, dtype=np.int64)
        self.inv_table = np.where(codes == 0, 0, (-(codes - 1)) % max(qm1, 1) + 1)
        self.neg_table = np.where(codes == 0, 0, (codes - 1 + self.minus_one) % max(qm1, 1) + 1)
        # digits[code] -> coefficient vector, used for vectorized sums
        vec = np.concatenate([[0], exp])
        self.digit_table = np.stack([(vec // p**i) % p for i in range(n)], axis=1)
        self._vec_to_code = np.zeros(Q, dtype=np.int64)
        self._vec_to_code[exp] = np.arange(1, Q)
        self._powers_of_p = np.array([p**i for i in range(n)], dtype=np.int64)

        self.add_table = self.mul_table = None
        if Q <= _TABLE_LIMIT:
            a = codes[:, None]
            b = codes[None, :]
            self.mul_table = self._mul_log(a, b)
            self.add_table = self._add_zech(a, b)

    # -- identification -------------------------------------------------
    def __repr__(self) -> str:
        return f"GF({self.p}^{self.n})"

    @property
    def name(self) -> str:
        return f"GF({self.p}^{self.n})"

    def __reduce__(self):
        return (make_field, (self.p, self.n))

    # -- scalar arithmetic on codes -------------------------------------
    def add(self, a: int, b: int) -> int:
        if a == 0:
            return b
        if b == 0:
            return a
        z = self.zech[(b - a) % self.qm1]
        if z < 0:
            return 0
        return int((a - 1 + z) % self.qm1 + 1)

    def neg(self, a: int) -> int:
        return int(self.neg_table[a])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, int(self.neg_table[b]))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return (a + b - 2) % self.qm1 + 1

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return int(self.inv_table[a])

    def div(self, a: int, b: int) -> int:
        if b == 0:
            raise ZeroDivisionError("division by zero")
        return self.mul(a, int(self.inv_table[b]))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("zero to a negative power")
            return 1 if e == 0 else 0
        return ((a - 1) * e) % self.qm1 + 1

    def pow_sq(self, a: int, e: int) -> int:
        """Square-and-multiply power, independent of the log shortcut."""
        if e < 0:
            a, e = self.inv(a), -e
        result = 1
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def from_int(self, i: int) -> int:
        """Code of the prime-field element ``i mod p``."""
        i %= self.p
        return 0 if i == 0 else int(self._vec_to_code[i])

    def from_vector(self, coeffs) -> int:
        """Code of ``sum coeffs[i] * g^i`` (coefficients in F_p)."""
        v = sum((int(c) % self.p) * self.p**i for i, c in enumerate(coeffs))
        return int(self._vec_to_code[v]) if v else 0

    def to_vector(self, a: int) -> tuple[int, ...]:
        return tuple(int(d) for d in self.digit_table[a])

    @property
    def gen(self) -> int:
        return 2 if self.order > 2 else 1

    # -- vectorized arithmetic on code arrays ---------------------------
    def _mul_log(self, a, b):
        out = (a + b - 2) % self.qm1 + 1
        return np.where((a == 0) | (b == 0), 0, out)

    def _add_zech(self, a, b):
        a, b = np.broadcast_arrays(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        z = self.zech[(b - a) % self.qm1]
        s = np.where(z < 0, 0, (a - 1 + z) % self.qm1 + 1)
        return np.where(a == 0, b, np.where(b == 0, a, s))

    def vmul(self, a, b):
        if self.mul_table is not None:
            return self.mul_table[a, b]
        return self._mul_log(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))

    def vadd(self, a, b):
        if self.add_table is not None:
            return self.add_table[a, b]
        return self._add_zech(a, b)

    def vsub(self, a, b):
        return self.vadd(a, self.neg_table[b])

    def vsum(self, a, axis=0):
        """Field sum of an array of codes along ``axis``."""
        digits = self.digit_table[np.asarray(a)].sum(axis=axis) % self.p
        return self._vec_to_code[(digits * self._powers_of_p).sum(axis=-1)]

    def matmul(self, A, B):
        A = np.asarray(A, dtype=np.int64)
        B = np.asarray(B, dtype=np.int64)
        if A.shape[1] == 0:
            return np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
        return self.vsum(self.vmul(A[:, :, None], B[None, :, :]), axis=1)

    # -- structure ------------------------------------------------------
    @cached_property
    def all_codes(self) -> np.ndarray:
        return np.arange(self.order, dtype=np.int64)

    def subfield_codes(self, order: int) -> np.ndarray:
        """Codes of the subfield with ``order`` elements."""
        p, e = prime_power(order)
        if p != self.p or self.n % e:
            raise FieldError(f"{self.name} has no subfield of order {order}")
        step = self.qm1 // (order - 1)
        return np.concatenate([[0], np.arange(0, self.qm1, step) + 1])

    def roots(self, coeffs) -> list[int]:
        """Roots in this field of ``sum coeffs[i] x^i`` (coefficients are ints mod p)."""
        x = self.all_codes
        acc = np.zeros_like(x)
        for c in reversed(list(coeffs)):
            acc = self.vadd(self.vmul(acc, x), self.from_int(c))
        return [int(r) for r in np.flatnonzero(acc == 0)]

    def primitive_root_of(self, coeffs) -> int:
        """Smallest-log root of ``coeffs`` that generates the multiplicative group.

        Used to translate elements written as powers of some other generator
        (for instance one chosen by a computer algebra system) into codes.
        """
        for r in self.roots(coeffs):
            if r and np.gcd(r - 1, self.qm1) == 1:
                return r
        raise FieldError(f"{list(coeffs)} has no primitive root in {self.name}")

    # -- text format ----------------------------------------------------
    def format(self, a: int) -> str:
        return "0" if a == 0 else f"g^{a - 1}"

    def parse(self, s: str) -> int:
        s = s.strip()
        if s == "0":
            return 0
        if s == "1":
            return 1
        mt = re.fullmatch(r"g\^(-?\d+)", s)
        if not mt:
            raise FieldError(f"cannot parse field element {s!r}")
        return int(mt.group(1)) % self.qm1 + 1

    def element(self, code: int) -> "FieldElement":
        return FieldElement(self, int(code))

    def __call__(self, i: int) -> "FieldElement":
        return FieldElement(self, self.from_int(i))

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    def elements(self):
        return [FieldElement(self, c) for c in range(self.order)]


@lru_cache(maxsize=None)
def make_field(p: int, n: int = 1) -> GF:
    """Build GF(p^n) with its lexicographically smallest primitive polynomial."""
    if not is_prime(p):
        raise FieldError(f"characteristic {p} is not prime")
    if n < 1:
        raise FieldError(f"extension degree must be positive, got {n}")
    if p**n > MAX_ORDER:
        raise FieldError(f"field order {p}^{n} exceeds {MAX_ORDER}")
    return GF(p, n, smallest_primitive_polynomial(p, n))


def field_of_order(Q: int) -> GF:
    p, e = prime_power(Q)
    return make_field(p, e)


class FieldElement:
    """A field element with operator overloading; wraps a code of its field."""

    __slots__ = ("field", "code")

    def __init__(self, field: GF, code: int):
        if not 0 <= code < field.order:
            raise FieldError(f"code {code} out of range for {field.name}")
        self.field = field
        self.code = code

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field is not self.field:
                raise FieldError(f"mixed fields {self.field.name} and {other.field.name}")
            return other.code
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def __add__(self, other):
        b = self._other(other)
        return FieldElement(self.field, self.field.add(self.code, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        return FieldElement(self.field, self.field.sub(self.code, b))

    def __rsub__(self, other):
        b = self._other(other)
        return FieldElement(self.field, self.field.sub(b, self.code))

    def __mul__(self, other):
        b = self._other(other)
        return FieldElement(self.field, self.field.mul(self.code, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._other(other)
        return FieldElement(self.field, self.field.div(self.code, b))

    def __rtruediv__(self, other):
        b = self._other(other)
        return FieldElement(self.field, self.field.div(b, self.code))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.code))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow_sq(self.code, e))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.code))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field is other.field and self.code == other.code
        if isinstance(other, int):
            return self.code == self.field.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field.p, self.field.n, self.code))

    def __bool__(self):
        return self.code != 0

    @property
    def log(self) -> int | None:
        return None if self.code == 0 else self.code - 1

    def __repr__(self):
        return self.field.format(self.code)


def _check_square(field: GF, q: int | None) -> int:
    root = int(round(field.order**0.5))
    if root * root != field.order or (q is not None and q != root):
        raise FieldError(f"{field.name} is not a field of order q^2 for q={q}")
    return root


def frobenius_q(a: FieldElement, q: int | None = None) -> FieldElement:
    """``a^q`` for ``a`` in a field of order q^2."""
    q = _check_square(a.field, q)
    return FieldElement(a.field, a.field.pow(a.code, q))


def rel_trace(a: FieldElement) -> FieldElement:
    """Relative trace ``a^q + a`` from F_{q^2} down to F_q."""
    q = _check_square(a.field, None)
    f = a.field
    return FieldElement(f, f.add(f.pow(a.code, q), a.code))


def trace_codes(field: GF, q: int) -> np.ndarray:
    """``x^q + x`` for every code ``x`` of ``field`` (vectorized rel_trace)."""
    _check_square(field, q)
    x = field.all_codes
    return field.vadd(np.where(x == 0, 0, ((x - 1) * q) % field.qm1 + 1), x)


def embedding(small: GF, big: GF) -> np.ndarray:
    """Array mapping codes of ``small`` to codes of ``big`` (a field embedding).

    The image of the generator of ``small`` is the smallest-log root of its
    defining polynomial inside ``big``.
    """
    if small.p != big.p or big.n % small.n:
        raise FieldError(f"{small.name} does not embed in {big.name}")
    if small.n == 1:
        # prime field: map by integer value
        return np.array([big.from_int(int(small.exp[c - 1])) if c else 0 for c in range(small.order)])
    root = min(r for r in big.roots(list(small.poly) + [1]) if r)
    codes = np.arange(small.order)
    return np.where(codes == 0, 0, ((codes - 1) * (root - 1)) % big.qm1 + 1)
