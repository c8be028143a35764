"""Exact scalar arithmetic over Q, prime fields F_p, and cyclotomic fields Q(zeta_m).

Every field exposes the same small interface (zero/one/add/mul/inv/...),
with elements stored as plain immutable Python values:

* rationals        -> ``fractions.Fraction`` (always in lowest terms)
* prime field      -> ``int`` in ``[0, p)``
* cyclotomic field -> tuple of ``Fraction`` of length ``euler_phi(m)``,
                      coefficients w.r.t. ``1, z, ..., z^(phi(m)-1)`` reduced
                      modulo the m-th cyclotomic polynomial.

No floating point anywhere; rank decisions downstream rely on exactness.
"""

from __future__ import annotations

from fractions import Fraction


class FieldError(ValueError):
    """Raised on invalid field parameters or cross-field operations."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class Field:
    """Abstract exact field; concrete fields implement the element ops."""

    kind: str = ""

    # -- element constructors ------------------------------------------
    def zero(self):
        return self.from_int(0)

    def one(self):
        return self.from_int(1)

    def from_int(self, n: int):
        raise NotImplementedError

    def from_fraction(self, q: Fraction):
        raise NotImplementedError

    # -- arithmetic ----------------------------------------------------
    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def conj(self, a):
        """Complex conjugation; the identity on Q and F_p."""
        return a

    def is_zero(self, a) -> bool:
        return a == self.zero()

    # -- serialization -------------------------------------------------
    def spec(self) -> dict:
        raise NotImplementedError

    def to_str(self, a) -> str:
        raise NotImplementedError

    def parse(self, s):
        raise NotImplementedError

    def random(self, rng, span: int = 5):
        """Deterministic random element, for property tests."""
        raise NotImplementedError

    def __eq__(self, other):
        return isinstance(other, Field) and self.spec() == other.spec()

    def __hash__(self):
        return hash(str(self.spec()))

    def __repr__(self):
        return f"Field({self.spec()})"


class Rationals(Field):
    kind = "rational"

    def from_int(self, n):
        return Fraction(n)

    def from_fraction(self, q):
        return Fraction(q)

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return Fraction(1) / a

    def spec(self):
        return {"kind": "rational"}

    def to_str(self, a):
        return str(a)

    def parse(self, s):
        return Fraction(s)

    def random(self, rng, span=5):
        return Fraction(rng.randint(-span, span))


class PrimeField(Field):
    kind = "prime"

    def __init__(self, p: int):
        if not _is_prime(p):
            raise FieldError(f"{p} is not prime")
        self.p = p

    def from_int(self, n):
        return n % self.p

    def from_fraction(self, q):
        return self.div(self.from_int(q.numerator), self.from_int(q.denominator))

    def add(self, a, b):
        return (a + b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return pow(a, self.p - 2, self.p)

    def spec(self):
        return {"kind": "prime", "p": self.p}

    def to_str(self, a):
        return f"{a % self.p} mod {self.p}"

    def parse(self, s):
        return int(str(s).split("mod")[0].strip()) % self.p

    def random(self, rng, span=5):
        return rng.randrange(self.p)


def _poly_trim(c):
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_divmod(a, b):
    """Division with remainder in Q[x]; coefficient lists, low degree first."""
    a = [Fraction(x) for x in a]
    b = [Fraction(x) for x in b]
    _poly_trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    r = list(a)
    _poly_trim(r)
    while len(r) >= len(b):
        k = len(r) - len(b)
        c = r[-1] / b[-1]
        q[k] = c
        for i, bc in enumerate(b):
            r[k + i] -= c * bc
        _poly_trim(r)
    return q, r


def cyclotomic_coeffs(m: int):
    """Integer coefficients of the m-th cyclotomic polynomial, low degree first."""
    from sympy import Poly, cyclotomic_poly, symbols

    x = symbols("x")
    return [int(c) for c in reversed(Poly(cyclotomic_poly(m, x), x).all_coeffs())]


class CyclotomicField(Field):
    kind = "cyclotomic"

    def __init__(self, m: int):
        if m < 1:
            raise FieldError("cyclotomic index must be >= 1")
        self.m = m
        phi = cyclotomic_coeffs(m)
        self.degree = len(phi) - 1
        self._phi = phi
        # x^(deg+k) reduced mod Phi_m, for products of two reduced elements
        self._powers = self._power_table(2 * self.degree - 1)
        # zeta^j for j = 0..m-1, used by conjugation
        self._zeta_pows = self._power_table(max(m - 1, 0))

    def _power_table(self, upto):
        d = self.degree
        table = []
        for k in range(upto + 1):
            if k < d:
                table.append(tuple(Fraction(int(i == k)) for i in range(d)))
            else:
                # x^k = x * x^(k-1), reduced via x^d = -(phi_0 + ... + phi_{d-1} x^{d-1})
                prev = table[k - 1]
                shifted = [Fraction(0)] + list(prev[: d - 1])
                top = prev[d - 1]
                red = [shifted[i] - top * self._phi[i] for i in range(d)]
                table.append(tuple(red))
        return table

    def from_int(self, n):
        return tuple([Fraction(n)] + [Fraction(0)] * (self.degree - 1))

    def from_fraction(self, q):
        return tuple([Fraction(q)] + [Fraction(0)] * (self.degree - 1))

    def from_coeffs(self, coeffs):
        """Element from coefficients of 1, z, z^2, ... (any length), reduced."""
        out = [Fraction(0)] * self.degree
        for k, c in enumerate(coeffs):
            c = Fraction(c)
            if c == 0:
                continue
            for i, pi in enumerate(self._power(k)):
                out[i] += c * pi
        return tuple(out)

    def _power(self, k):
        d = self.degree
        while k >= len(self._powers):
            prev = self._powers[-1]
            shifted = [Fraction(0)] + list(prev[: d - 1])
            top = prev[d - 1]
            self._powers.append(
                tuple(shifted[i] - top * self._phi[i] for i in range(d))
            )
        return self._powers[k]

    def zeta(self):
        """The distinguished primitive m-th root of unity."""
        return tuple(self._zeta_pows[1 % self.m]) if self.m > 1 else self.one()

    def zeta_pow(self, j: int):
        return self._zeta_pows[j % self.m]

    def add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def mul(self, a, b):
        d = self.degree
        prod = [Fraction(0)] * (2 * d - 1)
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            for j, bj in enumerate(b):
                if bj != 0:
                    prod[i + j] += ai * bj
        out = [Fraction(0)] * d
        for k, c in enumerate(prod):
            if c != 0:
                pk = self._powers[k]
                for i in range(d):
                    out[i] += c * pk[i]
        return tuple(out)

    def neg(self, a):
        return tuple(-x for x in a)

    def inv(self, a):
        if all(x == 0 for x in a):
            raise ZeroDivisionError("inverse of 0")
        # extended Euclid for gcd(a, Phi_m) in Q[x]; Phi_m irreducible so gcd is 1
        r0, r1 = [Fraction(c) for c in self._phi], [Fraction(x) for x in a]
        s0, s1 = [], [Fraction(1)]
        _poly_trim(r1)
        while r1:
            q, r = _poly_divmod(r0, r1)
            s = list(s0)
            s += [Fraction(0)] * (len(q) + len(s1) - 1 - len(s))
            for i, qi in enumerate(q):
                for j, sj in enumerate(s1):
                    s[i + j] -= qi * sj
            r0, r1 = r1, r
            s0, s1 = s1, _poly_trim(s)
        c = r0[-1]  # gcd as a constant (deg 0 since Phi_m is irreducible)
        if len(r0) != 1:
            raise FieldError("cyclotomic polynomial unexpectedly reducible")
        return self.from_coeffs([x / c for x in s0])

    def conj(self, a):
        out = self.zero()
        for k, c in enumerate(a):
            if c != 0:
                term = tuple(c * x for x in self.zeta_pow((self.m - k) % self.m))
                out = self.add(out, term)
        return out

    def rational_part(self, a) -> Fraction:
        """Constant coefficient; raises if the element is not rational."""
        if any(x != 0 for x in a[1:]):
            raise FieldError(f"element {a} is not rational")
        return a[0]

    def spec(self):
        return {"kind": "cyclotomic", "m": self.m}

    def to_str(self, a):
        return "[" + ",".join(str(x) for x in a) + "]"

    def parse(self, s):
        if isinstance(s, (list, tuple)):
            return self.from_coeffs([Fraction(str(x)) for x in s])
        body = str(s).strip().strip("[]")
        coeffs = [Fraction(t) for t in body.split(",")] if body else []
        return self.from_coeffs(coeffs)

    def random(self, rng, span=5):
        return tuple(Fraction(rng.randint(-span, span)) for _ in range(self.degree))


QQ = Rationals()


def field_from_spec(spec: dict) -> Field:
    kind = spec.get("kind")
    if kind == "rational":
        return QQ
    if kind == "prime":
        return PrimeField(int(spec["p"]))
    if kind == "cyclotomic":
        return CyclotomicField(int(spec["m"]))
    raise FieldError(f"unknown field spec {spec!r}")
