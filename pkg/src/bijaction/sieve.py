"""Exact integer polynomials and cyclic sieving checks at roots of unity.

The verdict of every root-of-unity comparison is decided by exact reduction
modulo a cyclotomic polynomial; the complex float value is carried along
only as a diagnostic.
"""

from __future__ import annotations

import cmath
import json
from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd
from typing import Callable, Hashable, Iterable, Sequence


class IntPolynomial:
    """Polynomial with arbitrary-precision integer coefficients.

    ``coeffs[j]`` is the coefficient of q**j. Trailing zeros are trimmed, so
    the zero polynomial has no coefficients and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        cs = [int(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[int, ...] = tuple(cs)

    @classmethod
    def monomial(cls, degree: int, coeff: int = 1) -> "IntPolynomial":
        return cls([0] * degree + [coeff])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = IntPolynomial([other])
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"IntPolynomial({list(self.coeffs)})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for j in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[j]
            if c == 0:
                continue
            mag = abs(c)
            if j == 0:
                body = str(mag)
            else:
                var = "q" if j == 1 else f"q^{j}"
                body = var if mag == 1 else f"{mag}*{var}"
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        first_sign, first_body = terms[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for j, c in enumerate(b):
            out[j] += c
        return IntPolynomial(out)

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(-c for c in self.coeffs)

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        return self + (-other)

    def __mul__(self, other: "IntPolynomial") -> "IntPolynomial":
        if not self.coeffs or not other.coeffs:
            return IntPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return IntPolynomial(out)

    def divmod_monic(self, divisor: "IntPolynomial") -> tuple["IntPolynomial", "IntPolynomial"]:
        """Long division by a monic polynomial; exact over the integers."""
        if divisor.is_zero() or divisor.coeffs[-1] != 1:
            raise ValueError("divisor must be monic")
        rem = list(self.coeffs)
        dd = divisor.degree
        if len(rem) - 1 < dd:
            return IntPolynomial(), IntPolynomial(rem)
        quo = [0] * (len(rem) - dd)
        for j in range(len(rem) - 1, dd - 1, -1):
            c = rem[j]
            if c == 0:
                continue
            quo[j - dd] = c
            for i, d in enumerate(divisor.coeffs):
                rem[j - dd + i] -= c * d
        return IntPolynomial(quo), IntPolynomial(rem[:dd])

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc


def geometric_factor(step: int, terms: int) -> IntPolynomial:
    """1 + q^step + q^(2 step) + ... + q^((terms-1) step)."""
    cs = [0] * (step * (terms - 1) + 1)
    for j in range(terms):
        cs[j * step] = 1
    return IntPolynomial(cs)


def w_poly(m: int, k: int) -> IntPolynomial:
    """prod_{i=1..k} (1 - q^{mi}) / (1 - q^i), expanded without division."""
    if m < 1 or k < 0:
        raise ValueError(f"need m >= 1 and k >= 0, got m={m}, k={k}")
    p = IntPolynomial([1])
    for i in range(1, k + 1):
        p = p * geometric_factor(i, m)
    return p


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


@lru_cache(maxsize=None)
def cyclotomic(d: int) -> IntPolynomial:
    """The d-th cyclotomic polynomial, by exact division of q^d - 1."""
    if d < 1:
        raise ValueError(f"cyclotomic index must be >= 1, got {d}")
    p = IntPolynomial.monomial(d) - IntPolynomial([1])
    for e in divisors(d)[:-1]:
        p, rem = p.divmod_monic(cyclotomic(e))
        assert rem.is_zero(), f"Phi_{e} does not divide q^{d}-1"
    return p


def equals_at_root(p: IntPolynomial, n: int, c: int, target: int) -> bool:
    """Decide exactly whether p(omega^c) == target, omega a primitive n-th root of 1."""
    if n < 1:
        raise ValueError(f"order must be >= 1, got {n}")
    if not 0 <= c < n:
        raise ValueError(f"rotation amount {c} outside [0, {n})")
    g = gcd(n, c)
    d = n // g
    step = c // g
    folded = [0] * d
    for j, coeff in enumerate(p.coeffs):
        folded[(j * step) % d] += coeff
    folded[0] -= target
    if d == 1:
        return folded[0] == 0
    _, rem = IntPolynomial(folded).divmod_monic(cyclotomic(d))
    return rem.is_zero()


def float_value(p: IntPolynomial, n: int, c: int) -> complex:
    return p(cmath.exp(2j * cmath.pi * c / n))


@dataclass(frozen=True)
class CspRow:
    c: int
    fixed: int
    match: bool
    value: complex


@dataclass
class CspReport:
    n: int
    rows: list[CspRow] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.match for r in self.rows)

    @property
    def mismatches(self) -> list[CspRow]:
        return [r for r in self.rows if not r.match]

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "rows": [{"c": r.c, "fixed": r.fixed, "match": r.match} for r in self.rows],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_table(self) -> str:
        header = ("c", "fixed", "match", "float value")
        body = []
        for r in self.rows:
            v = r.value
            # clamp -0.0 so output is stable
            re = round(v.real, 6) + 0.0
            im = round(v.imag, 6) + 0.0
            body.append((str(r.c), str(r.fixed), "yes" if r.match else "NO", f"{re:.6f}{im:+.6f}i"))
        widths = [max(len(h), *(len(row[i]) for row in body)) for i, h in enumerate(header)]
        lines = ["  ".join(h.rjust(w) for h, w in zip(header, widths))]
        lines.append("  ".join("-" * w for w in widths))
        for row in body:
            lines.append("  ".join(cell.rjust(w) for cell, w in zip(row, widths)))
        return "\n".join(lines)


class ActionOrderError(ValueError):
    """The action does not have order dividing n on some element."""

    def __init__(self, element, n: int):
        super().__init__(f"action does not return {element!r} to itself within {n} steps")
        self.element = element


def orbit_sizes(elements: Sequence[Hashable], action: Callable, n: int) -> dict:
    """Map each element to its orbit size, checking the action has order dividing n."""
    members = set(elements)
    sizes: dict = {}
    for x in elements:
        if x in sizes:
            continue
        orb = [x]
        cur = action(x)
        while cur != x:
            if cur not in members:
                raise ValueError(f"action maps {orb[-1]!r} outside the element set")
            orb.append(cur)
            if len(orb) > n:
                raise ActionOrderError(x, n)
            cur = action(cur)
        if n % len(orb):
            raise ActionOrderError(x, n)
        for y in orb:
            sizes[y] = len(orb)
    return sizes


def csp_check(elements: Sequence[Hashable], action: Callable, n: int, p: IntPolynomial) -> CspReport:
    """Compare fixed-point counts of every power of ``action`` with p at n-th roots of unity."""
    sizes = orbit_sizes(elements, action, n)
    report = CspReport(n=n)
    for c in range(n):
        # x is fixed by action^c iff its orbit size divides c (c = 0: everything)
        fixed = sum(1 for x in elements if c % sizes[x] == 0)
        report.rows.append(CspRow(c, fixed, equals_at_root(p, n, c, fixed), float_value(p, n, c)))
    return report
