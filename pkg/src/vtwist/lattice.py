"""Rank-one lattice vertex algebras, their coset extensions and screening operators."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial, gcd, isqrt
from typing import Dict, List, NamedTuple, Optional, Tuple

from .errors import ConfigError, GeneratorAbsent, NonIntegralPairing
from .graded import GradedOperator, WeightBlockSpace, is_zero_matrix, rank
from .series import LogSeries
from .vector import Vec
from .voa import AxiomReport, VertexAlgebra, num

LABELS = ("L", "minus", "plus")

# variant tag -> (conformal vector, coset labels)
VARIANTS = {
    "VL": ("shifted", ("L",)),
    "VL-standard": ("standard", ("L",)),
    "V0": ("shifted", ("L", "minus")),
    "V0o": ("shifted", ("L", "plus")),
    "Vpq": ("shifted", ("L", "minus", "plus")),
}


class FockBasisElement(NamedTuple):
    """gamma(-n1)...gamma(-nk) e^{point*gamma} in the coset summand ``label``."""

    label: str
    point: Fraction
    modes: Tuple[int, ...]

    def __hash__(self):
        # Fraction.__hash__ is slow and this key sits in every memo lookup
        p = self.point
        return hash((self.label, p.numerator, p.denominator, self.modes))

    def __str__(self):
        mono = "".join(f"g({-n})" for n in self.modes)
        if self.point == 0 and self.label == "L":
            return mono or "1"
        tag = "" if self.label == "L" else f"[{self.label}]"
        return f"{mono}e^({self.point}){tag}"


@dataclass(frozen=True)
class LatticeData:
    """Rank-one lattice Z*gamma; ``N`` selects the generic form <gamma,gamma> = 2N."""

    p: int = 2
    q: int = 1
    N: Optional[int] = None

    def __post_init__(self):
        if self.N is not None:
            if self.N <= 0:
                raise ConfigError("N must be positive")
            return
        if self.p <= 0 or self.q <= 0:
            raise ConfigError("p and q must be positive")
        if gcd(self.p, self.q) != 1:
            raise ConfigError("p and q must be coprime")

    @property
    def norm(self) -> int:
        return 2 * self.N if self.N is not None else 2 * self.p * self.q

    def offset(self, label: str) -> Fraction:
        if label == "L":
            return Fraction(0)
        if self.N is not None:
            raise ConfigError("generic lattice mode has no dual cosets")
        return Fraction(-1, self.p) if label == "minus" else Fraction(1, self.q)

    def pairing(self, s, t) -> Fraction:
        """<s gamma, t gamma>."""
        return Fraction(s) * Fraction(t) * self.norm


def partitions(n: int, largest: Optional[int] = None):
    """Partitions of n as descending tuples."""
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in partitions(n - k, k):
            yield (k,) + rest


@lru_cache(maxsize=None)
def _schur_terms(d: int) -> Tuple[Tuple[Tuple[int, ...], Fraction], ...]:
    """Coefficient of t^d in exp(sum_n y_n t^n / n), as (partition, weight) pairs.

    The weight multiplies prod_n y_n^{c_n}; callers substitute y_n = s gamma(-n).
    """
    out = []
    for lam in partitions(d):
        counts: Dict[int, int] = {}
        for part in lam:
            counts[part] = counts.get(part, 0) + 1
        c = Fraction(1)
        for n, cn in counts.items():
            c /= n ** cn * factorial(cn)
        out.append((lam, c))
    return tuple(out)


def _insert(modes: Tuple[int, ...], k: int) -> Tuple[int, ...]:
    lst = list(modes)
    i = 0
    while i < len(lst) and lst[i] >= k:
        i += 1
    lst.insert(i, k)
    return tuple(lst)


class LatticeVOA(VertexAlgebra):
    """Fock-space model of V_L and its coset extensions, materialized to ``cutoff``.

    Mode evaluation is exact for any basis inputs; ``cutoff`` only bounds the
    materialized blocks used for operators and sweeps.
    """

    def __init__(self, lattice: LatticeData, variant: str = "Vpq", cutoff=4):
        if variant not in VARIANTS:
            raise ConfigError(f"unknown variant {variant!r}")
        self.lattice = lattice
        self.variant = variant
        self.omega_kind, self.labels = VARIANTS[variant]
        if lattice.N is not None and (self.omega_kind != "standard" or self.labels != ("L",)):
            raise ConfigError("generic lattice mode supports only the VL-standard variant")
        self.cutoff = Fraction(cutoff)
        self.norm = lattice.norm
        self._memo: Dict = {}
        self._weights: Dict = {}
        self.vacuum_key = FockBasisElement("L", Fraction(0), ())
        self._calibrate()
        self.space = WeightBlockSpace(self._enumerate(), self.cutoff)

    def materialize(self, cutoff):
        """Rebuild the graded space to a new cutoff; the mode memo is kept."""
        self.cutoff = Fraction(cutoff)
        self.space = WeightBlockSpace(self._enumerate(), self.cutoff)

    # -- conformal vector and weights --------------------------------
    def _calibrate(self):
        lat = self.lattice
        sq = FockBasisElement("L", Fraction(0), (1, 1))
        d2 = FockBasisElement("L", Fraction(0), (2,))
        if self.omega_kind == "standard":
            self.A, self.B = Fraction(1, 2 * self.norm), Fraction(0)
        else:
            self.B = Fraction(lat.p - lat.q, 2 * lat.p * lat.q)
            # L(0) e^{gamma/q} through the mode machinery, split by component
            ep = FockBasisElement("plus", Fraction(1, lat.q), ())
            h_sq = self._mode(sq, 1, ep).get(ep, 0)
            h_d2 = self._mode(d2, 1, ep).get(ep, 0)
            self.A = (1 - self.B * h_d2) / h_sq
        self.conformal = Vec({sq: self.A, d2: self.B}) if self.B else Vec({sq: self.A})
        if self.omega_kind == "shifted":
            em = FockBasisElement("minus", Fraction(-1, lat.p), ())
            ep = FockBasisElement("plus", Fraction(1, lat.q), ())
            assert self.L(0, Vec.basis(em)) == Vec.basis(em), "wt e^{-gamma/p} != 1"
            assert self.L(0, Vec.basis(ep)) == Vec.basis(ep), "wt e^{gamma/q} != 1"
        g1 = Vec.basis(FockBasisElement("L", Fraction(0), (1,)))
        assert self.L(0, g1) == g1

    def point_weight(self, s) -> Fraction:
        """L(0)-eigenvalue of e^{s gamma} in closed form."""
        s = Fraction(s)
        c = s * self.norm
        return self.A * c * c - self.B * c

    def weight(self, key: FockBasisElement):
        w = self._weights.get(key)
        if w is None:
            w = self._weights[key] = num(sum(key.modes) + self.point_weight(key.point))
        return w

    def _points(self, label: str) -> List[Fraction]:
        """Coset points whose exponential has weight <= cutoff."""
        delta = self.lattice.offset(label)
        a = self.A * self.norm ** 2
        b = abs(self.B * self.norm)
        bound = int(b / a) + isqrt(int(self.cutoff / a) + 1) + 2
        return [m + delta for m in range(-bound, bound + 1) if self.point_weight(m + delta) <= self.cutoff]

    def _enumerate(self) -> Dict[Fraction, list]:
        blocks: Dict[Fraction, list] = {}
        for label in self.labels:
            for s in self._points(label):
                h = self.point_weight(s)
                if h < 0:
                    raise ConfigError(f"negative weight {h} at e^({s})")
                for deg in range(0, int(self.cutoff - h) + 1):
                    for lam in partitions(deg):
                        key = FockBasisElement(label, s, lam)
                        blocks.setdefault(Fraction(self.weight(key)), []).append(key)
        return {w: sorted(b) for w, b in blocks.items()}

    # -- named vectors ------------------------------------------------
    def e(self, s, label: Optional[str] = None) -> FockBasisElement:
        s = Fraction(s)
        if label is None:
            label = self._label_for(s)
        return FockBasisElement(label, s, ())

    def _label_for(self, s: Fraction) -> str:
        if s.denominator == 1 and "L" in self.labels:
            return "L"
        for lab in self.labels:
            if lab != "L" and ((s - self.lattice.offset(lab)).denominator == 1):
                return lab
        raise GeneratorAbsent(f"e^({s} gamma) does not lie in variant {self.variant}")

    def gamma_vec(self, *modes, point=0, label="L") -> Vec:
        return Vec.basis(FockBasisElement(label, Fraction(point), tuple(sorted(modes, reverse=True))))

    # -- Heisenberg and exponential operators ------------------------
    def heisenberg_act(self, m: int, v: Vec) -> Vec:
        out = Vec()
        for k, c in v.items():
            out.iadd_scaled(self._gamma(m, k), c)
        return out

    def _gamma(self, m: int, key: FockBasisElement) -> Vec:
        if m < 0:
            return Vec.basis(FockBasisElement(key.label, key.point, _insert(key.modes, -m)))
        if m == 0:
            return Vec.basis(key, key.point * self.norm)
        cnt = key.modes.count(m)
        if not cnt:
            return Vec()
        lst = list(key.modes)
        lst.remove(m)
        return Vec.basis(FockBasisElement(key.label, key.point, tuple(lst)), m * self.norm * cnt)

    def mode_basis(self, a: FockBasisElement, n, b: FockBasisElement) -> Vec:
        if a.label != "L" and b.label != "L":
            return Vec()
        return self._mode(a, n, b)

    def _hdeg(self, a, b, n):
        """Heisenberg degree of a_n b."""
        return sum(a.modes) + sum(b.modes) - self.lattice.pairing(a.point, b.point) - n - 1

    def _mode(self, a: FockBasisElement, n, b: FockBasisElement) -> Vec:
        key = (a, n, b)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        if self._hdeg(a, b, n) < 0:
            out = Vec()
        elif a.modes:
            out = self._mode_heis(a, n, b)
        else:
            out = self._mode_exp(a, n, b)
        self._memo[key] = out
        return out

    def _mode_heis(self, a, n, b) -> Vec:
        k = a.modes[0]
        ap = FockBasisElement(a.label, a.point, a.modes[1:])
        out = Vec()
        i = 0
        while self._hdeg(ap, b, n + i) >= 0:
            c = Fraction(factorial(k + i - 1), factorial(i) * factorial(k - 1))
            inner = self._mode(ap, n + i, b)
            if inner:
                out.iadd_scaled(self._gamma_vec(-k - i, inner), c)
            i += 1
        sign = -1 if k % 2 == 0 else 1  # -(-1)^k
        for i in sorted({0} | set(b.modes)):
            gb = self._gamma(i, b)
            if not gb:
                continue
            c = Fraction(factorial(k + i - 1), factorial(i) * factorial(k - 1)) * sign
            for bk, bc in gb.items():
                r = self._mode(ap, n - k - i, bk)
                if r:
                    out.iadd_scaled(r, c * bc)
        return out

    def _gamma_vec(self, m, v: Vec) -> Vec:
        out = Vec()
        for k, c in v.items():
            out.iadd_scaled(self._gamma(m, k), c)
        return out

    def _mode_exp(self, a, n, b) -> Vec:
        if b.modes:
            k = b.modes[0]
            bp = FockBasisElement(b.label, b.point, b.modes[1:])
            out = self._gamma_vec(-k, self._mode(a, n, bp))
            r = self._mode(a, n - k, bp)
            if r:
                out.iadd_scaled(r, -a.point * self.norm)
            return out
        pair = self.lattice.pairing(a.point, b.point)
        if pair.denominator != 1:
            raise NonIntegralPairing(f"<{a.point} gamma, {b.point} gamma> = {pair}")
        d = -n - 1 - int(pair)
        if d < 0:
            return Vec()
        label = a.label if a.label != "L" else b.label
        s = a.point + b.point
        out = Vec()
        for lam, c in _schur_terms(d):
            out.add_term(FockBasisElement(label, s, lam), c * a.point ** len(lam))
        return out

    def exp_vertex(self, beta, v: Vec, hi=None) -> LogSeries:
        """Y(e^beta, x) v; beta in a coset of this variant."""
        return self.vertex_series(Vec.basis(self.e(beta)), v, hi)

    def extension_product(self, a: Vec, b: Vec, hi=None) -> LogSeries:
        return self.vertex_series(a, b, hi)

    def screening(self, which: str = "Q") -> GradedOperator:
        """Residue of Y(e^{gamma/q}, x) (Q) or Y(e^{-gamma/p}, x) (Qtilde) on all blocks."""
        gen = self.screening_generator(which)
        return GradedOperator.from_function(self.space, lambda k: self.mode_basis(gen, 0, k), degree=0)

    def screening_generator(self, which: str) -> FockBasisElement:
        lat = self.lattice
        if lat.N is not None:
            raise GeneratorAbsent("generic lattice mode has no screening generators")
        if which == "Q":
            label, s = "plus", Fraction(1, lat.q)
        elif which in ("Qtilde", "Qt"):
            label, s = "minus", Fraction(-1, lat.p)
        else:
            raise ValueError(f"unknown screening operator {which!r}")
        if label not in self.labels:
            raise GeneratorAbsent(f"e^({s} gamma) is not in variant {self.variant}")
        return FockBasisElement(label, s, ())

    def memo_size(self) -> int:
        return len(self._memo)


# ---------------------------------------------------------------------------
# independent dimension oracle


def partition_counts(n_max: int) -> List[int]:
    """p(0..n_max) from the Euler product prod 1/(1 - t^k)."""
    coeffs = [1] + [0] * n_max
    for k in range(1, n_max + 1):
        for i in range(k, n_max + 1):
            coeffs[i] += coeffs[i - k]
    return coeffs


def closed_form_weight(lattice: LatticeData, omega_kind: str, s) -> Fraction:
    """Ground weight of e^{s gamma}: (m+delta)(pq(m+delta) - p + q), or N s^2."""
    s = Fraction(s)
    if omega_kind == "standard":
        return Fraction(lattice.norm, 2) * s * s
    return s * (lattice.p * lattice.q * s - lattice.p + lattice.q)


def dimension_oracle(lattice: LatticeData, variant: str, cutoff) -> Dict[Fraction, int]:
    """Block dimensions from ground weights plus partition counts."""
    kind, labels = VARIANTS[variant]
    cutoff = Fraction(cutoff)
    pc = partition_counts(int(cutoff) + 1 + 64)
    dims: Dict[Fraction, int] = {}
    for label in labels:
        delta = Fraction(0) if label == "L" else lattice.offset(label)
        bound = int(cutoff) + 64  # ground weights grow quadratically; scan generously
        for m in range(-bound, bound + 1):
            h = closed_form_weight(lattice, kind, m + delta)
            if h > cutoff:
                continue
            for deg in range(0, int(cutoff - h) + 1):
                w = h + deg
                dims[w] = dims.get(w, 0) + pc[deg]
    return dict(sorted(dims.items()))



# ---------------------------------------------------------------------------
# lattice-level checks


def check_calibration(alg: LatticeVOA) -> AxiomReport:
    """Unit weight and L(1)-primality of both screening generators; central charge."""
    rep = AxiomReport("calibration", {"variant": alg.variant, "omega": alg.omega_kind})
    rep.data["A"], rep.data["B"] = alg.A, alg.B
    rep.data["central_charge"] = alg.central_charge()
    if alg.omega_kind != "shifted" or alg.lattice.N is not None:
        return rep
    for which in ("Q", "Qtilde"):
        try:
            key = alg.screening_generator(which)
        except GeneratorAbsent:
            continue
        v = Vec.basis(key)
        rep.count(2)
        if alg.L(0, v) != v:
            rep.fail(generator=str(key), identity="L(0)v = v", got=alg.L(0, v))
        if alg.L(1, v):
            rep.fail(generator=str(key), identity="L(1)v = 0", got=alg.L(1, v))
        rep.data[f"wt {key}"] = alg.weight(key)
    return rep


def check_screening_facts(alg: LatticeVOA, which: str = "Q") -> AxiomReport:
    """Q1 = 0, Q omega = 0, Y_0(u)u = 0, Q^2 = 0 on every block and mu = 0."""
    gen = alg.screening_generator(which)
    u = Vec.basis(gen)
    rep = AxiomReport("screening-facts", {"which": which, "generator": str(gen), "cutoff": alg.cutoff})
    q = alg.screening(which)
    facts = {
        "Q1": q.apply(alg.vacuum()),
        "Q omega": q.apply(alg.conformal),
        "Y0(u)u": alg.mode(u, 0, u),
    }
    for name, val in facts.items():
        rep.count()
        if val:
            rep.fail(identity=f"{name} = 0", got=val)
    sq = q.compose(q)
    for w in alg.space.weights():
        rep.count()
        if not is_zero_matrix(sq.blocks[w]):
            rep.fail(identity="Q^2 = 0", block=w)
    mu = alg.mode(u, 1, u)
    rep.count()
    if mu:
        rep.fail(identity="Y1(u)u = 0", got=mu)
    rep.data["mu"] = mu.get(alg.vacuum_key, Fraction(0))
    rep.data["Q_rank_by_block"] = {str(w): rank(m) for w, m in sorted(q.blocks.items())}
    return rep


def check_dimensions(alg: LatticeVOA) -> AxiomReport:
    """Materialized block dimensions against the partition-count oracle."""
    rep = AxiomReport("dimensions", {"variant": alg.variant, "cutoff": alg.cutoff})
    oracle = dimension_oracle(alg.lattice, alg.variant, alg.cutoff)
    got = {w: alg.space.dim(w) for w in alg.space.weights()}
    for w in sorted(set(oracle) | set(got)):
        rep.count()
        if oracle.get(w, 0) != got.get(w, 0):
            rep.fail(weight=w, materialized=got.get(w, 0), oracle=oracle.get(w, 0))
    rep.data["dims"] = {str(w): d for w, d in sorted(got.items())}
    return rep
