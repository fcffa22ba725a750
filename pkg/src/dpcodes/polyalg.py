"""Univariate polynomials over the small fields, irreducibility and trinomials."""

from __future__ import annotations

import re

from .gf import GF, FieldElement, FieldMismatchError, FiniteField


class Polynomial:
    """Dense polynomial; ``values[i]`` is the serialized coefficient of ``x^i``.

    The zero polynomial has no coefficients and degree -1.
    """

    def __init__(self, coeffs, field: FiniteField):
        vals = [field._canon(c) for c in coeffs]
        while vals and vals[-1] == 0:
            vals.pop()
        self.field = field
        self.values = tuple(vals)

    @classmethod
    def monomial(cls, e: int, field: FiniteField, c=1) -> Polynomial:
        return cls([0] * e + [c], field)

    @classmethod
    def x(cls, field: FiniteField) -> Polynomial:
        return cls([0, 1], field)

    @property
    def coeffs(self) -> list[FieldElement]:
        return [FieldElement(v, self.field) for v in self.values]

    @property
    def degree(self) -> int:
        return len(self.values) - 1

    @property
    def leading(self) -> int:
        return self.values[-1] if self.values else 0

    def is_zero(self) -> bool:
        return not self.values

    def is_monic(self) -> bool:
        return self.leading == 1

    def coefficient(self, i: int) -> int:
        return self.values[i] if 0 <= i < len(self.values) else 0

    def _check(self, other: Polynomial):
        if not isinstance(other, Polynomial):
            raise TypeError(f"expected Polynomial, got {type(other).__name__}")
        if other.field != self.field:
            raise FieldMismatchError(f"polynomials over {self.field!r} and {other.field!r}")

    def __eq__(self, other):
        return isinstance(other, Polynomial) and self.field == other.field and self.values == other.values

    def __hash__(self):
        return hash((self.field.q, self.values))

    def __repr__(self):
        return f"Polynomial({format_poly(self)!r}, GF({self.field.q}))"

    def __str__(self):
        return format_poly(self)

    def __add__(self, other):
        self._check(other)
        F = self.field
        n = max(len(self.values), len(other.values))
        return Polynomial(
            [int(F.add_table[self.coefficient(i), other.coefficient(i)]) for i in range(n)], F
        )

    def __neg__(self):
        return Polynomial([int(self.field.neg_table[v]) for v in self.values], self.field)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> Polynomial:
        c = self.field._canon(c)
        return Polynomial([int(self.field.mul_table[c, v]) for v in self.values], self.field)

    def __mul__(self, other):
        self._check(other)
        F = self.field
        if F.q == 2:
            return _from_bits(_clmul(_to_bits(self), _to_bits(other)))
        if self.is_zero() or other.is_zero():
            return Polynomial([], F)
        out = [0] * (len(self.values) + len(other.values) - 1)
        add, mul = F.add_table, F.mul_table
        for i, u in enumerate(self.values):
            if u:
                for j, v in enumerate(other.values):
                    out[i + j] = int(add[out[i + j], mul[u, v]])
        return Polynomial(out, F)

    def __divmod__(self, other):
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        F = self.field
        if F.q == 2:
            qb, rb = _bits_divmod(_to_bits(self), _to_bits(other))
            return _from_bits(qb), _from_bits(rb)
        rem = list(self.values)
        dq = other.degree
        quot = [0] * max(0, len(rem) - dq)
        lead_inv = int(F.inv_table[other.leading])
        add, mul, neg = F.add_table, F.mul_table, F.neg_table
        for i in range(len(rem) - 1, dq - 1, -1):
            c = rem[i]
            if not c:
                continue
            t = int(mul[c, lead_inv])
            quot[i - dq] = t
            nt = int(neg[t])
            for j, v in enumerate(other.values):
                rem[i - dq + j] = int(add[rem[i - dq + j], mul[nt, v]])
        return Polynomial(quot, F), Polynomial(rem[:dq], F)

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def monic(self) -> Polynomial:
        if self.is_zero():
            return self
        return self.scale(int(self.field.inv_table[self.leading]))

    def __call__(self, x):
        x = self.field._canon(x)
        acc = 0
        for v in reversed(self.values):
            acc = int(self.field.add_table[self.field.mul_table[acc, x], v])
        return FieldElement(acc, self.field)


# -- packed F_2 lane: polynomials as Python ints, bit i = coefficient of x^i ----

def _to_bits(p: Polynomial) -> int:
    return sum(1 << i for i, v in enumerate(p.values) if v)


def _from_bits(b: int) -> Polynomial:
    return Polynomial([(b >> i) & 1 for i in range(b.bit_length())], GF(2))


def _clmul(a: int, b: int) -> int:
    if a.bit_count() > b.bit_count():
        a, b = b, a
    r = 0
    while a:
        low = a & -a
        r ^= b << (low.bit_length() - 1)
        a ^= low
    return r


def _bits_mod(a: int, m: int) -> int:
    dm = m.bit_length()
    while a.bit_length() >= dm:
        a ^= m << (a.bit_length() - dm)
    return a


def _bits_divmod(a: int, m: int) -> tuple[int, int]:
    dm = m.bit_length()
    q = 0
    while a.bit_length() >= dm:
        s = a.bit_length() - dm
        q |= 1 << s
        a ^= m << s
    return q, a


def _bits_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, _bits_mod(a, b)
    return a


def _spread(a: int) -> int:
    # squaring over F_2 interleaves zero bits
    r = 0
    i = 0
    while a:
        if a & 1:
            r |= 1 << (2 * i)
        a >>= 1
        i += 1
    return r


def _bits_frobenius_power(f: int, k: int) -> int:
    """x^(2^k) mod f."""
    r = _bits_mod(2, f)
    for _ in range(k):
        r = _bits_mod(_spread(r), f)
    return r


# -- ring operations -------------------------------------------------------------

def poly_mulmod(a: Polynomial, b: Polynomial, f: Polynomial) -> Polynomial:
    """(a*b) mod f."""
    a._check(b)
    a._check(f)
    if f.degree < 1:
        raise ValueError("modulus must have degree >= 1")
    if a.field.q == 2:
        fb = _to_bits(f)
        return _from_bits(_bits_mod(_clmul(_to_bits(a), _to_bits(b)), fb))
    return (a * b) % f


def poly_powmod(a: Polynomial, e: int, f: Polynomial) -> Polynomial:
    if e < 0:
        raise ValueError("negative exponent")
    result = Polynomial([1], a.field) % f
    base = a % f
    while e:
        if e & 1:
            result = poly_mulmod(result, base, f)
        base = poly_mulmod(base, base, f)
        e >>= 1
    return result


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic greatest common divisor (zero if both are zero)."""
    a._check(b)
    if a.field.q == 2:
        return _from_bits(_bits_gcd(_to_bits(a), _to_bits(b)))
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def poly_inverse_mod(a: Polynomial, f: Polynomial) -> Polynomial | None:
    """Inverse of ``a`` in F[x]/(f), or None when gcd(a, f) != 1."""
    F = a.field
    r0, r1 = f, a % f
    s0, s1 = Polynomial([], F), Polynomial([1], F)
    while not r1.is_zero():
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
    if r0.degree != 0:
        return None
    return (s0.scale(int(F.inv_table[r0.leading]))) % f


def _prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def _frobenius_power(f: Polynomial, k: int) -> Polynomial:
    """x^(q^k) mod f by repeated q-th powering."""
    F = f.field
    if F.q == 2:
        return _from_bits(_bits_frobenius_power(_to_bits(f), k))
    r = Polynomial.x(F) % f
    for _ in range(k):
        r = poly_powmod(r, F.q, f)
    return r


def is_irreducible(f: Polynomial) -> bool:
    """Rabin's test: x^(q^n) = x mod f and gcd(x^(q^(n/p)) - x, f) = 1 for primes p | n."""
    n = f.degree
    if n < 1:
        raise ValueError("irreducibility is undefined for constant polynomials")
    if n == 1:
        return True
    F = f.field
    x = Polynomial.x(F)
    if _frobenius_power(f, n) != x % f:
        return False
    for p in _prime_factors(n):
        h = _frobenius_power(f, n // p) - x
        if poly_gcd(h, f).degree != 0:
            return False
    return True


# -- trinomials ------------------------------------------------------------------

def trinomial(n: int, m: int, a, b, field: FiniteField | None = None) -> Polynomial:
    """The polynomial x^n - a x^m - b."""
    if field is None:
        if not isinstance(a, FieldElement):
            raise TypeError("pass FieldElement coefficients or an explicit field")
        field = a.field
    a, b = field._canon(a), field._canon(b)
    if not 0 < m < n:
        raise ValueError(f"middle exponent must satisfy 0 < m < n, got m={m}, n={n}")
    if a == 0 or b == 0:
        raise ValueError("trinomial coefficients a and b must be nonzero")
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    coeffs[m] = int(field.neg_table[a])
    coeffs[0] = int(field.neg_table[b])
    return Polynomial(coeffs, field)


def trinomial_params(f: Polynomial) -> tuple[int, int, int, int] | None:
    """Return ``(n, m, a, b)`` when f = x^n - a x^m - b with a, b != 0, else None."""
    if not f.is_monic() or f.degree < 2:
        return None
    n = f.degree
    nz = [i for i in range(n) if f.values[i]]
    if len(nz) != 2 or nz[0] != 0:
        return None
    neg = f.field.neg_table
    m = nz[1]
    return n, m, int(neg[f.values[m]]), int(neg[f.values[0]])


def cyclotomic_trinomial(level: int) -> Polynomial:
    """x^(2*3^level) + x^(3^level) + 1 over F_2 (irreducible for every level >= 1)."""
    if level < 1:
        raise ValueError("level must be >= 1")
    t = 3**level
    return Polynomial.monomial(2 * t, GF(2)) + Polynomial.monomial(t, GF(2)) + Polynomial([1], GF(2))


def enumerate_trinomials(field: FiniteField, n: int) -> list[Polynomial]:
    """All x^n - a x^m - b with 0 < m < n and a, b != 0, in (m, a, b) order."""
    if n < 2:
        raise ValueError("trinomials need degree >= 2")
    return [
        trinomial(n, m, a, b, field)
        for m in range(1, n)
        for a in range(1, field.q)
        for b in range(1, field.q)
    ]


def enumerate_irreducible_trinomials(field: FiniteField, n: int) -> list[Polynomial]:
    return [f for f in enumerate_trinomials(field, n) if is_irreducible(f)]


# -- text format -----------------------------------------------------------------

def format_poly(p: Polynomial) -> str:
    """Human form with descending exponents, e.g. ``x^6+x^3+1`` or ``2*x^3+x+1``."""
    if p.is_zero():
        return "0"
    terms = []
    for e in range(p.degree, -1, -1):
        c = p.values[e]
        if not c:
            continue
        if e == 0:
            terms.append(str(c))
            continue
        mono = "x" if e == 1 else f"x^{e}"
        terms.append(mono if c == 1 else f"{c}*{mono}")
    return "+".join(terms)


_TERM = re.compile(r"^(?:(\d+)\*?)?(x(?:\^(\d+))?)?$")


def parse_poly(text: str, field: FiniteField) -> Polynomial:
    """Parse the ``+``-joined term grammar of :func:`format_poly`; spaces are ignored."""
    s = re.sub(r"\s+", "", text)
    if not s:
        raise ValueError("empty polynomial")
    coeffs: dict[int, int] = {}
    for term in s.split("+"):
        m = _TERM.match(term)
        if not term or m is None or (m.group(1) is None and m.group(2) is None):
            raise ValueError(f"malformed polynomial term {term!r} in {text!r}")
        if m.group(1) is not None and m.group(2) is not None and "*" not in term:
            raise ValueError(f"malformed polynomial term {term!r}: use c*x^e")
        c = int(m.group(1)) if m.group(1) is not None else 1
        if not 0 <= c < field.q:
            raise ValueError(f"coefficient {c} outside 0..{field.q - 1}")
        e = 0 if m.group(2) is None else (int(m.group(3)) if m.group(3) else 1)
        coeffs[e] = int(field.add_table[coeffs.get(e, 0), c])
    deg = max(coeffs)
    return Polynomial([coeffs.get(i, 0) for i in range(deg + 1)], field)
