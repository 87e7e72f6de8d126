"""Formal series in x with rational exponents and polynomial dependence on log x."""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Callable, Dict, Iterator, Optional, Tuple

from .errors import IntegralUndefined, Truncated
from .scalar import Scalar, coefficient_text, rational_text, root_of_unity, tau
from .vector import Vec

Key = Tuple[Fraction, int]  # (x exponent, log power)


def gen_binomial(r, k: int) -> Fraction:
    """Generalized binomial coefficient C(r, k) for rational r."""
    out = Fraction(1)
    r = Fraction(r)
    for i in range(k):
        out = out * (r - i) / (i + 1)
    return out


def _is_zero(c) -> bool:
    return not c


def _min_opt(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


class LogSeries:
    """Finite map (x_exponent, log_power) -> coefficient with a completeness window.

    ``lo`` is a lower bound on exponents carrying nonzero terms (None if
    unknown).  ``hi`` is the largest exponent up to which every coefficient is
    certified; None means the series is exact.  Asking for a coefficient above
    ``hi`` raises :class:`Truncated`.
    """

    __slots__ = ("terms", "lo", "hi")

    def __init__(self, terms: Optional[Dict[Key, object]] = None, lo=None, hi=None):
        self.terms: Dict[Key, object] = {}
        self.lo = None if lo is None else Fraction(lo)
        self.hi = None if hi is None else Fraction(hi)
        if terms:
            for (e, k), c in terms.items():
                self._add((Fraction(e), int(k)), c)
        self._clip()

    # -- construction helpers ----------------------------------------
    @classmethod
    def monomial(cls, coeff, exponent=0, log_power=0, hi=None) -> "LogSeries":
        return cls({(Fraction(exponent), log_power): coeff}, lo=exponent, hi=hi)

    def _add(self, key: Key, c):
        if _is_zero(c):
            return
        old = self.terms.get(key)
        if old is None:
            self.terms[key] = c
        else:
            new = old + c
            if _is_zero(new):
                del self.terms[key]
            else:
                self.terms[key] = new

    def _clip(self):
        if self.hi is not None:
            for key in [k for k in self.terms if k[0] > self.hi]:
                del self.terms[key]
        if self.lo is not None and self.terms:
            low = min(e for e, _ in self.terms)
            if low < self.lo:
                raise ValueError(f"term x^{low} below declared lower bound {self.lo}")

    def copy(self) -> "LogSeries":
        s = LogSeries(lo=self.lo, hi=self.hi)
        s.terms = dict(self.terms)
        return s

    # -- access -------------------------------------------------------
    def is_exact(self) -> bool:
        return self.hi is None

    def coefficient(self, exponent, log_power: int = 0, default=0):
        exponent = Fraction(exponent)
        if self.hi is not None and exponent > self.hi:
            raise Truncated(f"coefficient of x^{exponent} outside window (hi={self.hi})")
        return self.terms.get((exponent, log_power), default)

    def items(self) -> Iterator[Tuple[Key, object]]:
        return iter(sorted(self.terms.items(), key=lambda kv: kv[0]))

    def exponents(self):
        return sorted({e for e, _ in self.terms})

    @property
    def max_log_power(self) -> int:
        return max((k for _, k in self.terms), default=0)

    def has_logs(self) -> bool:
        return any(k for _, k in self.terms)

    def log_component(self, k: int) -> "LogSeries":
        return LogSeries({(e, 0): c for (e, kk), c in self.terms.items() if kk == k}, lo=self.lo, hi=self.hi)

    def __bool__(self):
        return bool(self.terms)

    # -- algebra ------------------------------------------------------
    def __add__(self, other: "LogSeries") -> "LogSeries":
        out = LogSeries(lo=_min_opt(self.lo, other.lo) if self.lo is not None and other.lo is not None else None,
                        hi=_min_opt(self.hi, other.hi))
        for k, c in self.terms.items():
            out._add(k, c)
        for k, c in other.terms.items():
            out._add(k, c)
        out._clip()
        return out

    def __neg__(self):
        return self.map(lambda c: -c)

    def __sub__(self, other):
        return self + (-other)

    def map(self, fn: Callable) -> "LogSeries":
        """Apply a linear map to every coefficient."""
        out = LogSeries(lo=self.lo, hi=self.hi)
        for k, c in self.terms.items():
            out._add(k, fn(c))
        return out

    def scale(self, s) -> "LogSeries":
        return self.map(lambda c: _scale(c, s))

    def shift(self, exponent, log_power: int = 0) -> "LogSeries":
        """Multiply by x^exponent (log x)^log_power."""
        d = Fraction(exponent)
        out = LogSeries(lo=None if self.lo is None else self.lo + d, hi=None if self.hi is None else self.hi + d)
        for (e, k), c in self.terms.items():
            out._add((e + d, k + log_power), c)
        return out

    def mul(self, other: "LogSeries", bilinear: Callable = None) -> "LogSeries":
        """Cauchy product; ``bilinear(a, b)`` combines coefficients (default a*b)."""
        prod = bilinear or (lambda a, b: b.scale(a) if isinstance(b, Vec) else a * b)
        if self.hi is None and other.hi is None:
            hi = None
        else:
            if (self.hi is not None and other.lo is None) or (other.hi is not None and self.lo is None):
                raise Truncated("product of a truncated series needs a lower bound on both factors")
            cands = []
            if self.hi is not None:
                cands.append(self.hi + other.lo)
            if other.hi is not None:
                cands.append(other.hi + self.lo)
            hi = min(cands)
        lo = self.lo + other.lo if self.lo is not None and other.lo is not None else None
        out = LogSeries(lo=lo, hi=hi)
        for (e1, k1), c1 in self.terms.items():
            for (e2, k2), c2 in other.terms.items():
                e = e1 + e2
                if hi is not None and e > hi:
                    continue
                out._add((e, k1 + k2), prod(c1, c2))
        return out

    def restrict(self, hi) -> "LogSeries":
        """Forget coefficients above ``hi``."""
        hi = Fraction(hi)
        if self.hi is not None and hi > self.hi:
            raise Truncated(f"cannot widen window from {self.hi} to {hi}")
        out = LogSeries(lo=self.lo, hi=hi)
        for k, c in self.terms.items():
            if k[0] <= hi:
                out.terms[k] = c
        return out

    # -- calculus -----------------------------------------------------
    def ddx(self) -> "LogSeries":
        out = LogSeries(lo=None if self.lo is None else self.lo - 1, hi=None if self.hi is None else self.hi - 1)
        for (e, k), c in self.terms.items():
            if e:
                out._add((e - 1, k), _scale(c, e))
            if k:
                out._add((e - 1, k - 1), _scale(c, k))
        return out

    def integrate0(self) -> "LogSeries":
        """Term-wise antiderivative vanishing at x = 0 in the formal sense."""
        out = LogSeries(lo=None if self.lo is None else self.lo + 1, hi=None if self.hi is None else self.hi + 1)
        for (e, k), c in self.terms.items():
            if k:
                raise IntegralUndefined("log term in integrand")
            if e == -1:
                raise IntegralUndefined("x^-1 term in integrand")
            out._add((e + 1, 0), _scale(c, Fraction(1) / (e + 1)))
        if self.hi is not None and self.hi < -1 and (self.lo is None or self.lo <= -1):
            # the x^-1 coefficient is unknown, so the primitive is undefined
            raise IntegralUndefined("window does not exclude an x^-1 term")
        return out

    def negate_variable(self) -> "LogSeries":
        """f(x) -> f(-x); only integer exponents without logs."""
        out = LogSeries(lo=self.lo, hi=self.hi)
        for (e, k), c in self.terms.items():
            if k or e.denominator != 1:
                raise ValueError("x -> -x needs integer exponents and no logs")
            out._add((e, 0), c if e.numerator % 2 == 0 else -c)
        return out

    def monodromy_substitute(self) -> "LogSeries":
        """x^e -> e^{2 pi i e} x^e and log x -> log x + tau."""
        t = tau()
        out = LogSeries(lo=self.lo, hi=self.hi)
        for (e, k), c in self.terms.items():
            rho = root_of_unity(e)
            for j in range(k + 1):
                f = rho * comb(k, j) * t ** (k - j)
                out._add((e, j), _scale(c, f))
        return out

    def set_x_one(self):
        """Formal evaluation x^a -> 1 on a log-free series."""
        if self.hi is not None:
            raise Truncated("evaluation needs an exact series")
        total = None
        for (e, k), c in self.terms.items():
            if k:
                raise ValueError("log term present")
            total = c if total is None else total + c
        return total if total is not None else 0

    # -- comparison / text --------------------------------------------
    def agrees_with(self, other: "LogSeries") -> bool:
        """Equality of all coefficients certified in both windows."""
        hi = _min_opt(self.hi, other.hi)
        keys = set(self.terms) | set(other.terms)
        for key in keys:
            if hi is not None and key[0] > hi:
                continue
            a = self.terms.get(key, 0)
            b = other.terms.get(key, 0)
            if _is_zero(a) and _is_zero(b):
                continue
            if _is_zero(a) or _is_zero(b) or a != b:
                return False
        return True

    def difference_witness(self, other: "LogSeries"):
        hi = _min_opt(self.hi, other.hi)
        for key in sorted(set(self.terms) | set(other.terms)):
            if hi is not None and key[0] > hi:
                continue
            a = self.terms.get(key, 0)
            b = other.terms.get(key, 0)
            if (_is_zero(a) and _is_zero(b)) or (not _is_zero(a) and not _is_zero(b) and a == b):
                continue
            return key, a, b
        return None

    def __eq__(self, other):
        if not isinstance(other, LogSeries):
            return NotImplemented
        return self.hi == other.hi and self.agrees_with(other)

    __hash__ = None

    def to_text(self, coeff_text: Callable = None) -> str:
        ct = coeff_text or _coeff_text
        parts = []
        for (e, k), c in self.items():
            s = f"({ct(c)})"
            if e:
                s += f"*x^({rational_text(e)})"
            if k:
                s += f"*log(x)^{k}"
            parts.append(s)
        body = " + ".join(parts) if parts else "0"
        if self.hi is not None:
            body += f" + O(x^({rational_text(self.hi)}+))"
        return body

    def __repr__(self):
        return f"LogSeries({self.to_text()})"


def _scale(c, f):
    if isinstance(c, Vec):
        return c.scale(f)
    return c * f if f != 1 else c


def _coeff_text(c) -> str:
    if isinstance(c, Vec):
        return c.to_text()
    return coefficient_text(c)


class TwoVarSeries:
    """Series in a small variable with LogSeries coefficients in a large variable.

    ``coeffs[j]`` multiplies small^j; j runs over nonnegative integers up to
    ``order`` (inclusive), beyond which nothing is certified.  ``large`` names
    the large variable so expansions in different regions cannot be mixed.
    """

    __slots__ = ("coeffs", "order", "large", "small")

    def __init__(self, coeffs: Dict[int, LogSeries], order: Optional[int], large: str = "x1", small: str = "x2"):
        self.coeffs = {j: s for j, s in coeffs.items() if s and (order is None or j <= order)}
        self.order = order
        self.large = large
        self.small = small

    def coefficient(self, j: int) -> LogSeries:
        if self.order is not None and j > self.order:
            raise Truncated(f"{self.small}^{j} beyond expansion order {self.order}")
        return self.coeffs.get(j, LogSeries())

    def _check(self, other):
        if (self.large, self.small) != (other.large, other.small):
            raise ValueError("mixing expansions in different regions")

    def __add__(self, other: "TwoVarSeries") -> "TwoVarSeries":
        self._check(other)
        order = _min_opt(self.order, other.order)
        out = {}
        for j in set(self.coeffs) | set(other.coeffs):
            if order is not None and j > order:
                continue
            out[j] = self.coeffs.get(j, LogSeries()) + other.coeffs.get(j, LogSeries())
        return TwoVarSeries(out, order, self.large, self.small)

    def mul(self, other: "TwoVarSeries") -> "TwoVarSeries":
        self._check(other)
        order = _min_opt(self.order, other.order)
        out: Dict[int, LogSeries] = {}
        for i, a in self.coeffs.items():
            for j, b in other.coeffs.items():
                if order is not None and i + j > order:
                    continue
                p = a.mul(b)
                out[i + j] = out[i + j] + p if i + j in out else p
        return TwoVarSeries(out, order, self.large, self.small)

    def ddx_small(self) -> "TwoVarSeries":
        out = {j - 1: s.map(lambda c, j=j: c * j) for j, s in self.coeffs.items() if j}
        return TwoVarSeries(out, None if self.order is None else self.order - 1, self.large, self.small)

    def agrees_with(self, other: "TwoVarSeries") -> bool:
        self._check(other)
        order = _min_opt(self.order, other.order)
        for j in set(self.coeffs) | set(other.coeffs):
            if order is not None and j > order:
                continue
            if not self.coeffs.get(j, LogSeries()).agrees_with(other.coeffs.get(j, LogSeries())):
                return False
        return True

    def to_text(self) -> str:
        parts = []
        for j in sorted(self.coeffs):
            body = self.coeffs[j].to_text().replace("x^", f"{self.large}^").replace("log(x)", f"log({self.large})")
            parts.append(f"[{body}]*{self.small}^{j}")
        return " + ".join(parts) if parts else "0"


def expand_binomial(r, direction: str = "first-large", order: int = 4) -> TwoVarSeries:
    """(x1 + x2)^r expanded in nonnegative powers of the small variable.

    For a nonnegative integer r the expansion is finite and exact.
    """
    r = Fraction(r)
    if direction == "first-large":
        large, small = "x1", "x2"
    elif direction == "second-large":
        large, small = "x2", "x1"
    else:
        raise ValueError(f"unknown direction {direction!r}")
    finite = r.denominator == 1 and r >= 0
    top = int(r) if finite else order
    coeffs = {j: LogSeries.monomial(gen_binomial(r, j), r - j) for j in range(top + 1)}
    return TwoVarSeries(coeffs, None if finite else order, large, small)


def log_expand_one_plus(order: int) -> TwoVarSeries:
    """log(1 + x2/x1) = sum_{l>=1} (-1)^{l+1}/l x1^{-l} x2^l, to x2^order."""
    coeffs = {l: LogSeries.monomial(Fraction((-1) ** (l + 1), l), -l) for l in range(1, order + 1)}
    return TwoVarSeries(coeffs, order, "x1", "x2")
