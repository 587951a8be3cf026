"""Exact arithmetic in the finite field F_q, q = p^h.

Elements are plain ints in ``range(q)``.  For h = 1 the int is the residue
mod p; for h > 1 its base-p digits, least significant first, are the
coefficients of the element written as a polynomial in the adjoined root.
The field object carries no element state, so a single GF instance can be
shared freely between threads and passed explicitly to every operation.
"""

from __future__ import annotations

import itertools


class NotPrimeError(ValueError):
    """Raised when the requested characteristic is composite."""


class ReduciblePolynomialError(ValueError):
    """Raised when a supplied modulus polynomial factors over F_p."""


class UnsupportedFieldError(ValueError):
    """Raised for h > 1 fields with q > 256 and no modulus supplied."""


# Conway polynomials for all prime powers q <= 256, little-endian monic
# coefficient tuples.  Fixed table so that serialized data means the same
# thing in every run and every reimplementation.
CONWAY_POLYNOMIALS = {
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (3, 2): (2, 2, 1),
    (2, 4): (1, 1, 0, 0, 1),
    (5, 2): (2, 4, 1),
    (3, 3): (1, 2, 0, 1),
    (2, 5): (1, 0, 1, 0, 0, 1),
    (7, 2): (3, 6, 1),
    (2, 6): (1, 1, 0, 1, 1, 0, 1),
    (3, 4): (2, 0, 0, 2, 1),
    (11, 2): (2, 7, 1),
    (5, 3): (3, 3, 0, 1),
    (2, 7): (1, 1, 0, 0, 0, 0, 0, 1),
    (13, 2): (2, 12, 1),
    (3, 5): (1, 2, 0, 0, 0, 1),
    (2, 8): (1, 0, 1, 1, 1, 0, 0, 0, 1),
}


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _poly_trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_divmod(a, b, p):
    # b monic-ish (leading coefficient invertible), both little-endian lists
    a = _poly_trim([x % p for x in a])
    b = _poly_trim([x % p for x in b])
    db = len(b) - 1
    inv_lead = pow(b[-1], p - 2, p)
    quo = [0] * max(0, len(a) - db)
    while len(a) - 1 >= db and a:
        c = a[-1] * inv_lead % p
        s = len(a) - 1 - db
        quo[s] = c
        for i in range(db + 1):
            a[s + i] = (a[s + i] - c * b[i]) % p
        a = _poly_trim(a)
    return quo, a


def _is_irreducible(poly, p: int) -> bool:
    """Trial division against every monic polynomial of degree <= h/2."""
    h = len(poly) - 1
    if h == 1:
        return True
    if poly[0] % p == 0:
        return False
    for d in range(1, h // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            divisor = list(tail) + [1]
            _, rem = _poly_divmod(poly, divisor, p)
            if not rem:
                return False
    return True


class GF:
    """The finite field F_q with q = p^h elements.

    Construct through :func:`make_field`, which validates the parameters.
    Arithmetic methods take and return plain ints; operands are assumed to
    be already reduced (use :meth:`check` at trust boundaries).
    """

    def __init__(self, p: int, h: int, irreducible):
        self.p = p
        self.h = h
        self.q = p**h
        self.irreducible = tuple(c % p for c in irreducible)
        if h == 1:
            self._add = self._mul_table = self._inv_table = None
        else:
            self._build_tables()

    # -- construction helpers -------------------------------------------

    def _build_tables(self):
        p, h, q = self.p, self.h, self.q
        red = self.irreducible
        add = [[0] * q for _ in range(q)]
        mul = [[0] * q for _ in range(q)]
        coeffs = [self.coeffs(a) for a in range(q)]
        for a in range(q):
            ca = coeffs[a]
            for b in range(a, q):
                cb = coeffs[b]
                s = tuple((x + y) % p for x, y in zip(ca, cb))
                v = self.from_coeffs(s)
                add[a][b] = add[b][a] = v
                prod = [0] * (2 * h - 1)
                for i, x in enumerate(ca):
                    if x:
                        for j, y in enumerate(cb):
                            prod[i + j] = (prod[i + j] + x * y) % p
                for d in range(2 * h - 2, h - 1, -1):
                    c = prod[d]
                    if c:
                        prod[d] = 0
                        for i in range(h):
                            prod[d - h + i] = (prod[d - h + i] - c * red[i]) % p
                w = self.from_coeffs(prod[:h])
                mul[a][b] = mul[b][a] = w
        inv = [0] * q
        for a in range(1, q):
            for b in range(1, q):
                if mul[a][b] == 1:
                    inv[a] = b
                    break
        self._add, self._mul_table, self._inv_table = add, mul, inv

    # -- element representation -----------------------------------------

    def coeffs(self, a: int):
        """Little-endian base-p digit vector of an element, length h."""
        out = []
        for _ in range(self.h):
            out.append(a % self.p)
            a //= self.p
        return tuple(out)

    def from_coeffs(self, cs) -> int:
        v = 0
        for c in reversed(list(cs)):
            v = v * self.p + c % self.p
        return v

    def check(self, a) -> int:
        if not isinstance(a, int) or not 0 <= a < self.q:
            raise ValueError(f"not an element of GF({self.q}): {a!r}")
        return a

    def elements(self):
        return range(self.q)

    def nonzero(self):
        return range(1, self.q)

    # -- arithmetic -------------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.h == 1:
            return (a + b) % self.p
        return self._add[a][b]

    def neg(self, a: int) -> int:
        if self.h == 1:
            return -a % self.p
        return self.from_coeffs((-c) % self.p for c in self.coeffs(a))

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.h == 1:
            return a * b % self.p
        return self._mul_table[a][b]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        if self.h == 1:
            return pow(a, self.p - 2, self.p)
        return self._inv_table[a]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        if a == 0:
            return 0 if e else 1
        e %= self.q - 1
        r = 1
        while e:
            if e & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            e >>= 1
        return r

    def arith(self, op: str, a: int, b=None) -> int:
        """Dispatch form of the arithmetic API: op in add|sub|mul|inv|neg|pow."""
        if op in ("inv", "neg"):
            return getattr(self, op)(a)
        if b is None:
            raise ValueError(f"{op} needs a second operand")
        return getattr(self, op)(a, b)

    # -- dunder plumbing ---------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, GF)
            and (self.p, self.h, self.irreducible)
            == (other.p, other.h, other.irreducible)
        )

    def __hash__(self):
        return hash((self.p, self.h, self.irreducible))

    def __repr__(self):
        return f"GF({self.q})" if self.h == 1 else f"GF({self.p}^{self.h})"

    # -- JSON --------------------------------------------------------------

    def to_json(self) -> dict:
        return {"p": self.p, "h": self.h, "irreducible": list(self.irreducible)}

    def element_to_json(self, a: int):
        return a if self.h == 1 else list(self.coeffs(a))

    def element_from_json(self, obj) -> int:
        if self.h == 1:
            if not isinstance(obj, int):
                raise ValueError(f"expected residue int, got {obj!r}")
            return self.check(obj % self.p)
        if not isinstance(obj, (list, tuple)) or len(obj) != self.h:
            raise ValueError(f"expected {self.h} coefficients, got {obj!r}")
        return self.from_coeffs(obj)


def make_field(p: int, h: int = 1, irreducible=None) -> GF:
    """Build F_{p^h}, validating primality and irreducibility.

    With no polynomial supplied, h > 1 falls back to the built-in Conway
    table (all prime powers q <= 256).
    """
    if p < 2 or not is_prime(p):
        raise NotPrimeError(f"p = {p} is not prime")
    if h < 1:
        raise ValueError(f"extension degree must be positive, got {h}")
    if h == 1:
        if irreducible is not None and _poly_trim([c % p for c in irreducible]) != [0, 1]:
            raise ValueError("h = 1 takes no modulus (placeholder [0, 1] only)")
        return GF(p, 1, (0, 1))
    if irreducible is None:
        irreducible = CONWAY_POLYNOMIALS.get((p, h))
        if irreducible is None:
            raise UnsupportedFieldError(
                f"no built-in polynomial for q = {p}^{h}; supply one explicitly"
            )
    irreducible = [c % p for c in irreducible]
    if len(irreducible) != h + 1 or irreducible[-1] != 1:
        raise ReduciblePolynomialError(
            f"modulus must be monic of degree {h}, got {irreducible}"
        )
    if not _is_irreducible(irreducible, p):
        raise ReduciblePolynomialError(f"{irreducible} factors over F_{p}")
    return GF(p, h, irreducible)


def field_from_json(obj) -> GF:
    return make_field(obj["p"], obj["h"], obj.get("irreducible"))
