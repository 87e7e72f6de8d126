"""Exact scalars: cyclotomic numbers extended by a transcendental symbol tau.

A :class:`Scalar` is a polynomial in ``tau`` (standing for 2*pi*sqrt(-1)) whose
coefficients lie in a cyclotomic field Q(zeta_n).  Elements are kept in a
canonical form: each tau-coefficient is reduced modulo the n-th cyclotomic
polynomial, and the conductor n is shrunk to the smallest one whose field
contains the element.  Equality is therefore plain structural equality.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Dict, Iterable, Optional, Tuple, Union

from .errors import NotInvertible

Number = Union[int, Fraction]


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def _divisors(n: int) -> list:
    return [d for d in range(1, n + 1) if n % d == 0]


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> Tuple[int, ...]:
    """Integer coefficients of Phi_n, lowest degree first."""
    # x^n - 1 divided by Phi_d for every proper divisor d of n
    num = [-1] + [0] * (n - 1) + [1]
    for d in _divisors(n)[:-1]:
        den = cyclotomic_poly(d)
        quot = [0] * (len(num) - len(den) + 1)
        rem = list(num)
        for i in range(len(quot) - 1, -1, -1):
            c = rem[i + len(den) - 1]  # den is monic
            quot[i] = c
            if c:
                for t, dc in enumerate(den):
                    rem[i + t] -= c * dc
        assert not any(rem[: len(den) - 1])
        num = quot
    return tuple(num)


def euler_phi(n: int) -> int:
    return len(cyclotomic_poly(n)) - 1


def _reduce_cyclotomic(n: int, coeffs: list) -> list:
    """Reduce a coefficient list in zeta_n (any length) modulo Phi_n."""
    phi = cyclotomic_poly(n)
    deg = len(phi) - 1
    c = list(coeffs)
    for j in range(len(c) - 1, deg - 1, -1):
        a = c[j]
        if a:
            base = j - deg
            for t in range(deg + 1):
                c[base + t] -= a * phi[t]
    return c[:deg]


@lru_cache(maxsize=None)
def _embedding(d: int, n: int) -> Tuple[Tuple[int, ...], ...]:
    """Columns: zeta_d^i (i < phi(d)) written in the reduced zeta_n basis."""
    step = n // d
    phi_n = euler_phi(n)
    cols = []
    for i in range(euler_phi(d)):
        raw = [0] * n
        raw[(i * step) % n] = 1
        cols.append(tuple(_reduce_cyclotomic(n, raw)))
    # pad to phi_n entries (reduction already yields exactly phi_n)
    assert all(len(col) == phi_n for col in cols)
    return tuple(cols)


def _solve_columns(cols, target) -> Optional[list]:
    """Solve sum_i y_i cols[i] = target exactly; None if inconsistent."""
    m = len(target)
    k = len(cols)
    rows = [[Fraction(cols[i][r]) for i in range(k)] + [Fraction(target[r])] for r in range(m)]
    piv_row = 0
    pivots = []
    for col in range(k):
        sel = None
        for r in range(piv_row, m):
            if rows[r][col]:
                sel = r
                break
        if sel is None:
            continue
        rows[piv_row], rows[sel] = rows[sel], rows[piv_row]
        pv = rows[piv_row][col]
        rows[piv_row] = [x / pv for x in rows[piv_row]]
        for r in range(m):
            if r != piv_row and rows[r][col]:
                f = rows[r][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[piv_row])]
        pivots.append(col)
        piv_row += 1
    for r in range(piv_row, m):
        if rows[r][k]:
            return None
    y = [Fraction(0)] * k
    for r, col in enumerate(pivots):
        y[col] = rows[r][k]
    return y


class Scalar:
    """Element of Q(zeta_n)[tau] in canonical reduced form.

    Internally ``_terms`` maps ``(tau_degree, j)`` to the rational coefficient of
    ``zeta_n^j * tau^tau_degree`` with ``0 <= j < phi(n)``.
    """

    __slots__ = ("_n", "_terms", "_hash")

    def __init__(self, value: Number = 0):
        value = Fraction(value)
        self._n = 1
        self._terms = {(0, 0): value} if value else {}
        self._hash = None

    # -- construction -------------------------------------------------
    @classmethod
    def _raw(cls, n: int, terms: Dict[Tuple[int, int], Fraction]) -> "Scalar":
        obj = cls.__new__(cls)
        obj._n = n
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def _make(cls, n: int, raw: Iterable[Tuple[Tuple[int, int], Fraction]]) -> "Scalar":
        by_deg: Dict[int, list] = {}
        for (d, j), c in raw:
            if not c:
                continue
            arr = by_deg.setdefault(d, [0] * n)
            arr[j % n] += c
        terms = {}
        for d, arr in by_deg.items():
            red = _reduce_cyclotomic(n, arr) if n > 1 else arr
            for j, c in enumerate(red):
                if c:
                    terms[(d, j)] = Fraction(c)
        return cls._raw(n, terms)._normalize()

    def _normalize(self) -> "Scalar":
        n = self._n
        if n == 1:
            return self
        if all(j == 0 for (_, j) in self._terms):
            return Scalar._raw(1, dict(self._terms))
        phi_n = euler_phi(n)
        degs = sorted({d for (d, _) in self._terms})
        for d in _divisors(n)[:-1]:
            cols = _embedding(d, n)
            new_terms = {}
            ok = True
            for deg in degs:
                target = [self._terms.get((deg, j), 0) for j in range(phi_n)]
                y = _solve_columns(cols, target)
                if y is None:
                    ok = False
                    break
                for i, c in enumerate(y):
                    if c:
                        new_terms[(deg, i)] = c
            if ok:
                return Scalar._raw(d, new_terms)
        return self

    def _lift(self, m: int) -> Iterable[Tuple[Tuple[int, int], Fraction]]:
        step = m // self._n
        return (((d, j * step), c) for (d, j), c in self._terms.items())

    # -- inspection ---------------------------------------------------
    @property
    def conductor(self) -> int:
        return self._n

    @property
    def terms(self) -> Dict[Tuple[Fraction, int], Fraction]:
        """Map (root exponent j/n mod 1, tau degree) -> rational coefficient."""
        return {(Fraction(j, self._n), d): c for (d, j), c in self._terms.items()}

    @property
    def tau_degree(self) -> int:
        return max((d for (d, _) in self._terms), default=0)

    def is_tau_free(self) -> bool:
        return all(d == 0 for (d, _) in self._terms)

    def is_rational(self) -> bool:
        return self._n == 1 and self.is_tau_free()

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self.to_text()} is not rational")
        return self._terms.get((0, 0), Fraction(0))

    def tau_coefficient(self, d: int) -> "Scalar":
        """The tau-free scalar multiplying tau^d."""
        return Scalar._raw(self._n, {(0, j): c for (dd, j), c in self._terms.items() if dd == d})._normalize()

    # -- arithmetic ---------------------------------------------------
    @staticmethod
    def coerce(x) -> "Scalar":
        if isinstance(x, Scalar):
            return x
        if isinstance(x, (int, Fraction)):
            return Scalar(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to Scalar")

    def __add__(self, other):
        if not isinstance(other, (Scalar, int, Fraction)):
            return NotImplemented
        other = Scalar.coerce(other)
        if self._n == other._n == 1:
            terms = dict(self._terms)
            for k, c in other._terms.items():
                s = terms.get(k, 0) + c
                if s:
                    terms[k] = s
                else:
                    terms.pop(k, None)
            return Scalar._raw(1, terms)
        m = _lcm(self._n, other._n)
        return Scalar._make(m, list(self._lift(m)) + list(other._lift(m)))

    __radd__ = __add__

    def __neg__(self):
        return Scalar._raw(self._n, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, (Scalar, int, Fraction)):
            return NotImplemented
        return self + (-Scalar.coerce(other))

    def __rsub__(self, other):
        return Scalar.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return Scalar()
            return Scalar._raw(self._n, {k: c * other for k, c in self._terms.items()})
        if not isinstance(other, Scalar):
            return NotImplemented
        if not self._terms or not other._terms:
            return Scalar()
        if self._n == other._n == 1:
            terms: Dict[Tuple[int, int], Fraction] = {}
            for (d1, _), c1 in self._terms.items():
                for (d2, _), c2 in other._terms.items():
                    k = (d1 + d2, 0)
                    terms[k] = terms.get(k, 0) + c1 * c2
            return Scalar._raw(1, {k: c for k, c in terms.items() if c})
        m = _lcm(self._n, other._n)
        a = list(self._lift(m))
        b = list(other._lift(m))
        raw = [((d1 + d2, j1 + j2), c1 * c2) for (d1, j1), c1 in a for (d2, j2), c2 in b]
        return Scalar._make(m, raw)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = Scalar(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def inverse(self) -> "Scalar":
        if not self._terms:
            raise NotInvertible("division by zero scalar")
        if not self.is_tau_free():
            raise NotInvertible(f"cannot invert {self.to_text()}: tau is transcendental")
        n = self._n
        if n == 1:
            return Scalar(1 / self._terms[(0, 0)])
        phi_n = euler_phi(n)
        # columns of the multiplication-by-self matrix in the reduced basis
        cols = []
        for i in range(phi_n):
            raw = [0] * (2 * n)
            for (_, j), c in self._terms.items():
                raw[i + j] += c
            folded = [0] * n
            for e, c in enumerate(raw):
                folded[e % n] += c
            cols.append(_reduce_cyclotomic(n, folded))
        y = _solve_columns(cols, [1] + [0] * (phi_n - 1))
        assert y is not None
        return Scalar._make(n, [((0, i), c) for i, c in enumerate(y)])

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise NotInvertible("division by zero")
            return self * (Fraction(1) / Fraction(other))
        if not isinstance(other, Scalar):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return Scalar.coerce(other) * self.inverse()

    # -- comparison ---------------------------------------------------
    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Scalar(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self._n == other._n and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(self.to_fraction())
            else:
                self._hash = hash((self._n, frozenset(self._terms.items())))
        return self._hash

    # -- text ---------------------------------------------------------
    def to_text(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for (d, j) in sorted(self._terms):
            pieces = [rational_text(self._terms[(d, j)])]
            if j:
                pieces.append(f"zeta({self._n})^{j}")
            if d:
                pieces.append(f"tau^{d}")
            parts.append("*".join(pieces))
        return " + ".join(parts)

    def __repr__(self):
        return f"Scalar({self.to_text()})"

    __str__ = to_text


def rational_text(r) -> str:
    r = Fraction(r)
    if r.denominator == 1:
        return str(r.numerator)
    return f"{r.numerator}/{r.denominator}"


def coefficient_text(c) -> str:
    """Exact text for a Fraction, int or Scalar coefficient."""
    if isinstance(c, Scalar):
        return c.to_text()
    return rational_text(c)


def root_of_unity(r) -> Scalar:
    """e^{2 pi sqrt(-1) r} for rational r."""
    r = Fraction(r) % 1
    if not r:
        return Scalar(1)
    n = r.denominator
    return Scalar._make(n, [((0, r.numerator), Fraction(1))])


def tau() -> Scalar:
    """The formal symbol tau = 2 pi sqrt(-1)."""
    return Scalar._raw(1, {(1, 0): Fraction(1)})


def scalar_add(a, b) -> Scalar:
    return Scalar.coerce(a) + Scalar.coerce(b)


def scalar_mul(a, b) -> Scalar:
    return Scalar.coerce(a) * Scalar.coerce(b)


def simplify(c):
    """Return a Fraction when a Scalar is rational, else the input."""
    if isinstance(c, Scalar) and c.is_rational():
        return c.to_fraction()
    return c
