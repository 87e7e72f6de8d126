"""Sparse vectors over Fraction or Scalar coefficients."""

from __future__ import annotations

from fractions import Fraction

from .scalar import Scalar, coefficient_text, simplify


class Vec(dict):
    """Sparse vector: basis key -> nonzero coefficient.

    Keys are any hashable, totally ordered basis labels.  Zero coefficients are
    never stored, so ``not v`` tests for the zero vector.
    """

    __slots__ = ()

    @classmethod
    def basis(cls, key, coeff=1):
        v = cls()
        if coeff:
            v[key] = Fraction(coeff) if isinstance(coeff, int) else coeff
        return v

    def add_term(self, key, coeff):
        if not coeff:
            return
        c = self.get(key)
        if c is None:
            self[key] = coeff
        else:
            c = c + coeff
            if c:
                self[key] = c
            else:
                del self[key]

    def iadd_scaled(self, other, coeff=1):
        if not coeff:
            return self
        if coeff == 1:
            for k, c in other.items():
                self.add_term(k, c)
        else:
            for k, c in other.items():
                self.add_term(k, c * coeff)
        return self

    def __add__(self, other):
        out = Vec(self)
        out.iadd_scaled(other)
        return out

    def __sub__(self, other):
        out = Vec(self)
        out.iadd_scaled(other, -1)
        return out

    def __neg__(self):
        return Vec({k: -c for k, c in self.items()})

    def scale(self, coeff):
        if not coeff:
            return Vec()
        out = Vec()
        for k, c in self.items():
            p = c * coeff
            if p:
                out[k] = p
        return out

    def __mul__(self, coeff):
        if isinstance(coeff, (int, Fraction, Scalar)):
            return self.scale(coeff)
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)) and other == 0:
            return not self
        return dict.__eq__(self, other)

    def __ne__(self, other):
        return not self.__eq__(other)

    __hash__ = None

    def simplified(self) -> "Vec":
        """Demote rational Scalars to Fractions."""
        return Vec({k: simplify(c) for k, c in self.items()})

    def to_text(self, keytext=str) -> str:
        if not self:
            return "0"
        return " + ".join(f"({coefficient_text(self[k])})*{keytext(k)}" for k in sorted(self))


def linear_map(fn, v: Vec) -> Vec:
    """Extend ``fn`` (basis key -> Vec) linearly to ``v``."""
    out = Vec()
    for k, c in v.items():
        out.iadd_scaled(fn(k), c)
    return out
