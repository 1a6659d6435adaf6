"""Arithmetic in GF(2^k) on a polynomial basis.

Field elements are integers in [0, 2^k); bit i is the coefficient of x^i.
Addition is xor.  Multiplication is the carry-less product reduced by a
fixed irreducible modulus, one per supported degree, so that every run
and every implementation agrees element-by-element:

    k=2: x^2+x+1        k=3: x^3+x+1        k=4: x^4+x+1
    k=5: x^5+x^2+1      k=6: x^6+x+1        k=8: x^8+x^4+x^3+x+1

All finite fields of characteristic 2 are perfect, so squaring is a
bijection and every element has a unique square root, obtained by
iterating the squaring map k-1 times.
"""

from __future__ import annotations

from functools import lru_cache

from .errors import BadDimension

MODULI = {
    2: 0b111,
    3: 0b1011,
    4: 0b10011,
    5: 0b100101,
    6: 0b1000011,
    8: 0b100011011,
}


def _poly_deg(p: int) -> int:
    return p.bit_length() - 1


def _poly_mod(a: int, m: int) -> int:
    dm = _poly_deg(m)
    while a.bit_length() - 1 >= dm and a:
        a ^= m << (a.bit_length() - 1 - dm)
    return a


def is_irreducible(poly: int) -> bool:
    """Trial division of `poly` by every polynomial of lower degree >= 1."""
    deg = _poly_deg(poly)
    if deg < 1:
        return False
    for d in range(1, deg):
        for div in range(1 << d, 1 << (d + 1)):
            if _poly_mod(poly, div) == 0:
                return False
    return True


class GF:
    """The field GF(2^k) with the fixed modulus for its degree.

    Multiplication, inverse and square roots are table-driven; the tables
    are built once per degree and instances are shared via `field(k)`.
    """

    def __init__(self, k: int):
        if k not in MODULI:
            raise BadDimension(f"unsupported extension degree k={k}")
        self.k = k
        self.q = 1 << k
        self.modulus = MODULI[k]
        if not is_irreducible(self.modulus):
            raise BadDimension(f"modulus {self.modulus:#b} is reducible")
        q = self.q
        mul = [[0] * q for _ in range(q)]
        for a in range(q):
            row = mul[a]
            for b in range(a, q):
                row[b] = mul[b][a] = self._mul_raw(a, b)
        self._mul = mul
        inv = [0] * q
        for a in range(1, q):
            for b in range(1, q):
                if mul[a][b] == 1:
                    inv[a] = b
                    break
        self._inv = inv
        self._frob = [mul[a][a] for a in range(q)]
        sqrt = [0] * q
        for a in range(q):
            sqrt[self._frob[a]] = a
        self._sqrt = sqrt

    def _mul_raw(self, a: int, b: int) -> int:
        acc = 0
        mask = self.q
        mod = self.modulus
        while b:
            if b & 1:
                acc ^= a
            a <<= 1
            if a & mask:
                a ^= mod
            b >>= 1
        return acc

    # -- element operations -------------------------------------------------

    @staticmethod
    def add(a: int, b: int) -> int:
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        return self._mul[a][b]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in GF(2^k)")
        return self._inv[a]

    def frob(self, a: int) -> int:
        return self._frob[a]

    def sqrt(self, a: int) -> int:
        return self._sqrt[a]

    def pow_frob(self, a: int, e: int) -> int:
        """Apply the field automorphism x -> x^(2^e)."""
        for _ in range(e % self.k):
            a = self._frob[a]
        return a

    def arith(self, op: str, a: int, b: int | None = None) -> int:
        """Dispatch form of the element operations; `b` required for the
        binary ones."""
        if op == "add":
            if b is None:
                raise ValueError("add needs two operands")
            return a ^ b
        if op == "mul":
            if b is None:
                raise ValueError("mul needs two operands")
            return self._mul[a][b]
        if op == "inv":
            return self.inv(a)
        if op == "frob":
            return self._frob[a]
        if op == "sqrt":
            return self._sqrt[a]
        raise ValueError(f"unknown field op {op!r}")

    def elements(self) -> range:
        return range(self.q)

    def units(self) -> range:
        return range(1, self.q)

    def __repr__(self) -> str:
        return f"GF(2^{self.k})"


@lru_cache(maxsize=None)
def field(k: int) -> GF:
    """Shared immutable field instance for degree k."""
    return GF(k)
