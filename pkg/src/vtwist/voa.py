"""Vertex algebra interface and the coefficient-extraction axiom checks.

A concrete algebra supplies ``mode_basis(a, n, b)`` for basis labels; every
series and every check below is assembled from that one primitive.  Module-type
checks (commutativity, associativity, Jacobi) run against a *module map*: any
object exposing ``wmode(v, n, w, log_power)`` plus a little grading data, so the
same code verifies the algebra itself and its twisted modules.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, comb, factorial, floor
from typing import Dict, Hashable, List

from .errors import RequiresFiniteOrder, Truncated
from .graded import GradedOperator, WeightBlockSpace
from .scalar import coefficient_text, root_of_unity
from .series import LogSeries, gen_binomial
from .vector import Vec

SAMPLE_THRESHOLD = 12000


def num(x):
    """Fraction -> int when integral, to keep hot loops on small ints."""
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


@dataclass
class AxiomReport:
    name: str
    params: dict = field(default_factory=dict)
    status: str = "pass"
    witnesses: List[dict] = field(default_factory=list)
    stats: Dict[str, int] = field(default_factory=lambda: {"checked": 0, "truncated": 0})
    data: dict = field(default_factory=dict)

    MAX_WITNESSES = 5

    def count(self, k: int = 1):
        self.stats["checked"] += k

    def fail(self, **witness):
        self.status = "fail"
        if len(self.witnesses) < self.MAX_WITNESSES:
            self.witnesses.append({k: _plain(v) for k, v in witness.items()})

    def truncated(self, **witness):
        self.stats["truncated"] += 1
        if self.status == "pass":
            self.status = "truncated"
        if len(self.witnesses) < self.MAX_WITNESSES:
            self.witnesses.append({k: _plain(v) for k, v in witness.items()})

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_record(self) -> dict:
        return {
            "check": self.name,
            "params": {k: _plain(v) for k, v in self.params.items()},
            "status": self.status,
            "stats": dict(self.stats),
            "witnesses": self.witnesses,
            "data": {k: _plain(v) for k, v in self.data.items()},
        }


def _plain(v):
    """JSON-friendly exact text for report fields."""
    if isinstance(v, Vec):
        return v.to_text()
    if isinstance(v, LogSeries):
        return v.to_text()
    if isinstance(v, (Fraction,)) or type(v).__name__ == "Scalar":
        return coefficient_text(v)
    if isinstance(v, dict):
        return {str(_plain(k)): _plain(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    return v


def sample(items: List, limit: int, seed: int, label: str, report: AxiomReport) -> List:
    """Full list when small, else a seeded deterministic sample."""
    if len(items) <= limit:
        report.params[f"{label}_mode"] = "full"
        report.params[f"{label}_count"] = len(items)
        return items
    rng = random.Random(seed)
    picked = sorted(rng.sample(range(len(items)), limit))
    report.params[f"{label}_mode"] = "sampled"
    report.params[f"{label}_count"] = limit
    report.params[f"{label}_population"] = len(items)
    report.params["seed"] = seed
    return [items[i] for i in picked]


class VertexAlgebra:
    """Base class: graded space, vacuum, conformal vector and the mode primitive."""

    space: WeightBlockSpace
    cutoff: Fraction
    vacuum_key: Hashable
    conformal: Vec
    min_weight = 0

    def weight(self, key):
        raise NotImplementedError

    def mode_basis(self, a, n, b) -> Vec:
        raise NotImplementedError

    # -- linear wrappers ----------------------------------------------
    def vacuum(self) -> Vec:
        return Vec.basis(self.vacuum_key)

    def mode(self, u: Vec, n, v: Vec) -> Vec:
        out = Vec()
        for a, ca in u.items():
            for b, cb in v.items():
                r = self.mode_basis(a, n, b)
                if r:
                    out.iadd_scaled(r, ca * cb)
        return out

    def vec_weight(self, v: Vec):
        ws = {self.weight(k) for k in v}
        if len(ws) != 1:
            raise ValueError("vector is not homogeneous")
        return ws.pop()

    def L(self, n: int, v: Vec) -> Vec:
        return self.mode(self.conformal, n + 1, v)

    def L_power(self, n: int, k: int, v: Vec) -> Vec:
        for _ in range(k):
            v = self.L(n, v)
        return v

    def vertex_series(self, u: Vec, v: Vec, hi=None) -> LogSeries:
        """Y(u, x)v with exponents certified up to ``hi``.

        The default window stops at the exponent whose coefficient has weight
        ``cutoff``.
        """
        wu, wv = self.vec_weight(u), self.vec_weight(v)
        if hi is None:
            hi = self.cutoff - wu - wv
        lo = self.min_weight - wu - wv
        terms = {}
        e = lo
        while e <= hi:
            n = -e - 1
            r = self.mode(u, num(n), v)
            if r:
                terms[(Fraction(e), 0)] = r
            e += 1
        return LogSeries(terms, lo=lo, hi=hi)

    def virasoro_mode(self, n: int) -> GradedOperator:
        weights = [w for w in self.space.weights() if w - n <= self.cutoff]
        if not weights:
            raise Truncated(f"L({n}) has no materialized block")
        return GradedOperator.from_function(self.space, lambda k: self.L(n, Vec.basis(k)), degree=-n,
                                            weights=weights)

    def central_charge(self) -> Fraction:
        """c from L(2)omega = (c/2) vacuum."""
        r = self.L(2, self.conformal)
        c = r.get(self.vacuum_key, Fraction(0))
        assert set(r) <= {self.vacuum_key}
        return 2 * Fraction(c)


# ---------------------------------------------------------------------------
# untwisted checks


def check_identity(alg: VertexAlgebra, cutoff=None) -> AxiomReport:
    cutoff = alg.cutoff if cutoff is None else Fraction(cutoff)
    rep = AxiomReport("identity", {"cutoff": cutoff})
    one = alg.vacuum_key
    for v in alg.space.basis():
        wv = alg.weight(v)
        if wv > cutoff:
            continue
        for n in range(ceil(-1 - (cutoff - wv)), num(wv - alg.min_weight)):
            r = alg.mode_basis(one, n, v)
            expect = Vec.basis(v) if n == -1 else Vec()
            rep.count()
            if r != expect:
                rep.fail(v=str(v), n=n, got=r)
    return rep


def check_creation(alg: VertexAlgebra, cutoff=None) -> AxiomReport:
    """u_n 1 = 0 for n >= 0 and u_{-k-1} 1 = L(-1)^k u / k!."""
    cutoff = alg.cutoff if cutoff is None else Fraction(cutoff)
    rep = AxiomReport("creation", {"cutoff": cutoff})
    one = alg.vacuum()
    for u in alg.space.basis():
        wu = alg.weight(u)
        uv = Vec.basis(u)
        for n in range(0, num(wu) + 1):
            rep.count()
            r = alg.mode(uv, n, one)
            if r:
                rep.fail(u=str(u), n=n, got=r)
        der = uv
        k = 0
        while wu + k <= cutoff:
            rep.count()
            r = alg.mode(uv, -k - 1, one)
            if r != der.scale(Fraction(1, factorial(k))):
                rep.fail(u=str(u), n=-k - 1, got=r)
            der = alg.L(-1, der)
            k += 1
    return rep


def _mode_range(alg, wu, wv, cutoff):
    """Mode indices n with wt(u_n v) in [min_weight, cutoff]."""
    top = wu + wv - 1 - alg.min_weight
    bottom = wu + wv - 1 - cutoff
    return range(ceil(bottom), floor(top) + 1) if top >= bottom else range(0)


def check_derivative(alg: VertexAlgebra, cutoff=None) -> AxiomReport:
    """(L(-1)u)_n v = -n u_{n-1} v on all basis pairs."""
    cutoff = alg.cutoff if cutoff is None else Fraction(cutoff)
    rep = AxiomReport("L(-1)-derivative", {"cutoff": cutoff})
    basis = [b for b in alg.space.basis() if alg.weight(b) <= cutoff]
    for u in basis:
        du = alg.L(-1, Vec.basis(u))
        wu = alg.weight(u) + 1
        for v in basis:
            wv = alg.weight(v)
            for n in _mode_range(alg, wu, wv, cutoff):
                rep.count()
                lhs = alg.mode(du, n, Vec.basis(v))
                rhs = alg.mode_basis(u, n - 1, v).scale(-n)
                if lhs != rhs:
                    rep.fail(u=str(u), v=str(v), n=n, lhs=lhs, rhs=rhs)
    return rep


def check_skew_symmetry(alg: VertexAlgebra, cutoff=None, pairs=None) -> AxiomReport:
    """u_n v = sum_j (-1)^{n+j+1} L(-1)^j/j! v_{n+j} u."""
    cutoff = alg.cutoff if cutoff is None else Fraction(cutoff)
    rep = AxiomReport("skew-symmetry", {"cutoff": cutoff})
    basis = [b for b in alg.space.basis() if alg.weight(b) <= cutoff]
    if pairs is None:
        pairs = [(u, v) for u in basis for v in basis]
    rep.params["pairs"] = len(pairs)
    for u, v in pairs:
        wu, wv = alg.weight(u), alg.weight(v)
        for n in _mode_range(alg, wu, wv, cutoff):
            rep.count()
            lhs = alg.mode_basis(u, n, v)
            rhs = Vec()
            j = 0
            while True:
                t = alg.mode_basis(v, n + j, u)
                if wu + wv - n - j - 1 < alg.min_weight:
                    break
                if t:
                    t = alg.L_power(-1, j, t).scale(Fraction((-1) ** ((n + j + 1) % 2), factorial(j)))
                    rhs.iadd_scaled(t)
                j += 1
            if lhs != rhs:
                rep.fail(u=str(u), v=str(v), n=n, lhs=lhs, rhs=rhs)
    return rep


def _triples(alg, cutoff):
    basis = [b for b in alg.space.basis() if alg.weight(b) <= cutoff]
    return [(u, v, w) for u in basis for v in basis for w in basis]


def commutator_window(alg, wu, wv, ww, cutoff):
    """(m, n) pairs whose coefficient [u_m, v_n]w is compared.

    Output weight lies in [min_weight, cutoff] and each single mode lowers
    weight by at most ``cutoff``.
    """
    total = wu + wv + ww
    m_hi = num(wu - 1 + cutoff)
    n_hi = num(wv - 1 + cutoff)
    out = []
    s_hi = num(total - 2 - alg.min_weight)
    s_lo = num(total - 2 - cutoff)
    for s in range(s_lo, s_hi + 1):
        for m in range(s - n_hi, m_hi + 1):
            out.append((m, s - m))
    return out


def bracket(alg, u, m, v, n, w) -> Vec:
    """[u_m, v_n] w computed by composing modes."""
    a = alg.mode(Vec.basis(u), m, alg.mode_basis(v, n, w))
    b = alg.mode(Vec.basis(v), n, alg.mode_basis(u, m, w))
    return a - b


def check_commutator_formula(alg: VertexAlgebra, cutoff=None, seed: int = 0,
                             limit: int = SAMPLE_THRESHOLD) -> AxiomReport:
    """[u_m, v_n]w = sum_k C(m,k) (u_k v)_{m+n-k} w."""
    cutoff = alg.cutoff if cutoff is None else Fraction(cutoff)
    rep = AxiomReport("commutator-formula", {"cutoff": cutoff})
    triples = sample(_triples(alg, cutoff), limit, seed, "triples", rep)
    iterates: Dict = {}
    for u, v, w in triples:
        wu, wv, ww = alg.weight(u), alg.weight(v), alg.weight(w)
        key = (u, v)
        if key not in iterates:
            its = {}
            k = 0
            while wu + wv - k - 1 >= alg.min_weight:
                r = alg.mode_basis(u, k, v)
                if r:
                    its[k] = r
                k += 1
            iterates[key] = its
        its = iterates[key]
        for m, n in commutator_window(alg, wu, wv, ww, cutoff):
            rep.count()
            lhs = bracket(alg, u, m, v, n, w)
            rhs = Vec()
            for k, y in its.items():
                c = comb(m, k) if m >= 0 else gen_binomial(m, k)
                if c:
                    rhs.iadd_scaled(alg.mode(y, m + n - k, Vec.basis(w)), c)
            if lhs != rhs:
                rep.fail(u=str(u), v=str(v), w=str(w), m=m, n=n, lhs=lhs, rhs=rhs)
    return rep


# ---------------------------------------------------------------------------
# module maps


class UntwistedModule:
    """The algebra acting on itself, seen as a module map."""

    has_logs = False

    def __init__(self, alg: VertexAlgebra):
        self.algebra = alg
        self.space = alg.space
        self.min_weight = alg.min_weight

    def offset(self, v) -> Fraction:
        return Fraction(0)

    def w_weight(self, w):
        return self.algebra.weight(w)

    def out_weight(self, v, n, ww):
        return self.algebra.weight(v) - n - 1 + ww

    def wmode(self, v, n, w: Vec, log_power: int = 0) -> Vec:
        if log_power:
            return Vec()
        return self.algebra.mode(Vec.basis(v), n, w)

    def wmode_vec(self, v: Vec, n, w: Vec, log_power: int = 0) -> Vec:
        out = Vec()
        for a, c in v.items():
            out.iadd_scaled(self.wmode(a, n, w, log_power), c)
        return out

    def max_log_power(self, v) -> int:
        return 0


def _index_range(offset, lo, hi):
    """Values offset + Z inside [lo, hi]."""
    start = ceil(Fraction(lo) - offset)
    stop = floor(Fraction(hi) - offset)
    return [num(offset + t) for t in range(start, stop + 1)]


def _wbracket(mod, u, m, v, n, w) -> Vec:
    a = mod.wmode(u, m, mod.wmode(v, n, Vec.basis(w)))
    b = mod.wmode(v, n, mod.wmode(u, m, Vec.basis(w)))
    return a - b


def weak_commutativity_window(mod, u, v, w, cutoff, N):
    """(a, b): coefficient of x1^{-a-1} x2^{-b-1} after multiplying by (x1-x2)^N."""
    alg = mod.algebra
    wu, wv, ww = alg.weight(u), alg.weight(v), mod.w_weight(w)
    ou, ov = mod.offset(u), mod.offset(v)
    out = []
    for a in _index_range(ou, wu - 1 - cutoff - N, wu - 1 + cutoff):
        shift_u = mod.out_weight(u, a + N, 0)
        for b in _index_range(ov, wv - 1 - cutoff, wv - 1 + cutoff):
            wt = shift_u + mod.out_weight(v, b, 0) + ww
            if mod.min_weight <= wt <= cutoff:
                out.append((a, b))
    return out


def check_weak_commutativity(mod, cutoff=None, N_max: int = 12, seed: int = 0,
                             limit: int = SAMPLE_THRESHOLD, pairs=None) -> AxiomReport:
    """Least N with (x1-x2)^N [Y(u,x1), Y(v,x2)] w = 0 in-window, per pair (u, v)."""
    if not hasattr(mod, "algebra"):
        mod = UntwistedModule(mod)
    alg = mod.algebra
    cutoff = alg.cutoff if cutoff is None else Fraction(cutoff)
    rep = AxiomReport("weak-commutativity", {"cutoff": cutoff, "N_max": N_max})
    basis = [b for b in alg.space.basis() if alg.weight(b) <= cutoff]
    wbasis = [b for b in mod.space.basis() if mod.w_weight(b) <= cutoff]
    if pairs is None:
        pairs = [(u, v) for u in basis for v in basis]
    per_w = max(1, limit // max(1, len(pairs)))
    recorded = {}
    for u, v in pairs:
        ws = wbasis if len(wbasis) <= per_w else sorted(random.Random(seed).sample(wbasis, per_w))
        cache = {}

        def coeff(m, n, w):
            key = (m, n, w)
            if key not in cache:
                cache[key] = _wbracket(mod, u, m, v, n, w)
            return cache[key]

        found = None
        for N in range(N_max + 1):
            ok = True
            for w in ws:
                for a, b in weak_commutativity_window(mod, u, v, w, cutoff, N):
                    total = Vec()
                    for i in range(N + 1):
                        total.iadd_scaled(coeff(a + N - i, b + i, w), comb(N, i) * (-1) ** i)
                    if total:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                found = N
                break
        rep.count()
        if found is None:
            rep.fail(u=str(u), v=str(v), reason=f"no N <= {N_max}")
        else:
            recorded[f"{u}|{v}"] = found
    rep.data["N"] = recorded
    if len(wbasis) > per_w:
        rep.params["w_mode"] = "sampled"
        rep.params["w_per_pair"] = per_w
        rep.params["seed"] = seed
    return rep


def _corr(mod, key):
    """Grading correction: out_weight(v, n, w) = wt v + corr - n - 1 + wt w."""
    return mod.out_weight(key, 0, 0) - mod.algebra.weight(key) + 1


def truncation_M(mod, u, w, r) -> int:
    """Least M >= 0 with u_t w = 0 for every t >= r + M, t in the class of u."""
    ou = mod.offset(u)
    t_max = mod.out_weight(u, 0, 0) + mod.w_weight(w) - mod.min_weight
    for t in reversed(_index_range(ou, r, t_max)):
        if any(mod.wmode(u, t, Vec.basis(w), lp) for lp in range(mod.max_log_power(u) + 1)):
            return num(t - r) + 1
    return 0


def check_weak_associativity(mod, cutoff=None, seed: int = 0, limit: int = SAMPLE_THRESHOLD,
                             triples=None) -> AxiomReport:
    """(x2+x0)^{r+M} Y(Y(u,x0)v,x2)w = (x0+x2)^{r+M} Y(u,x0+x2)Y(v,x2)w.

    r in [0, 1) is the exponent class of u and M the least lower-truncation
    order for (u, w); both are recorded.  Left side expands with x0 small, the
    right side in nonnegative powers of x2.
    """
    if not hasattr(mod, "algebra"):
        mod = UntwistedModule(mod)
    alg = mod.algebra
    cutoff = alg.cutoff if cutoff is None else Fraction(cutoff)
    rep = AxiomReport("weak-associativity", {"cutoff": cutoff})
    if mod.has_logs:
        raise RequiresFiniteOrder("weak associativity in this form needs a log-free module map")
    basis = [b for b in alg.space.basis() if alg.weight(b) <= cutoff]
    wbasis = [b for b in mod.space.basis() if mod.w_weight(b) <= cutoff]
    if triples is None:
        triples = sample([(u, v, w) for u in basis for v in basis for w in wbasis], limit, seed, "triples", rep)
    Ms = {}
    for u, v, w in triples:
        r = mod.offset(u) % 1
        if (u, w) not in Ms:
            Ms[(u, w)] = truncation_M(mod, u, w, r)
        E = r + Ms[(u, w)]
        wu, wv, ww = alg.weight(u), alg.weight(v), mod.w_weight(w)
        cu, cv = _corr(mod, u), _corr(mod, v)
        s_top = wv + cv + ww - 1 - mod.min_weight  # v_s w = 0 beyond this
        wv_vec = Vec.basis(w)
        for A in range(num(-wu - wv), floor(cutoff - wu - wv) + 1):
            base = wu + wv + ww + A - E + cu + cv
            for B in _index_range(-mod.offset(v), mod.min_weight - base, cutoff - base):
                lhs = Vec()
                for i in range(0, num(wu + wv + A) + 1):
                    y = alg.mode_basis(u, i - 1 - A, v)
                    if y:
                        lhs.iadd_scaled(mod.wmode_vec(y, num(E - i - 1 - B), wv_vec), gen_binomial(E, i))
                rhs = Vec()
                j = 0
                while j - 1 - B <= s_top:
                    inner = mod.wmode(v, num(j - 1 - B), wv_vec)
                    if inner:
                        c = gen_binomial(A + j, j)
                        if c:
                            rhs.iadd_scaled(mod.wmode(u, num(E - 1 - A - j), inner), c)
                    j += 1
                rep.count()
                if lhs.simplified() != rhs.simplified():
                    rep.fail(u=str(u), v=str(v), w=str(w), x0_exp=A, x2_exp=B, lhs=lhs, rhs=rhs)
    rep.data["M"] = {f"{u}|{w}": M for (u, w), M in sorted(Ms.items(), key=lambda kv: str(kv[0]))}
    return rep


def check_twisted_jacobi(mod, k: int, g_prime, cutoff=None, seed: int = 0,
                         limit: int = SAMPLE_THRESHOLD, triples=None) -> AxiomReport:
    """Coefficient of x0^{-l-1} x1^{-m-1} x2^{-n-1} in the twisted Jacobi identity.

    ``g_prime(key) -> Vec`` is the automorphism whose eta^j-eigenspaces carry
    the mode classes j/k; the iterate side averages over its powers.
    """
    if not hasattr(mod, "algebra"):
        mod = UntwistedModule(mod)
    alg = mod.algebra
    cutoff = alg.cutoff if cutoff is None else Fraction(cutoff)
    rep = AxiomReport("twisted-jacobi", {"cutoff": cutoff, "k": k})
    if mod.has_logs:
        raise RequiresFiniteOrder("twisted Jacobi coefficient extraction needs pure x^(1/k) powers")
    basis = [b for b in alg.space.basis() if alg.weight(b) <= cutoff]
    for b in basis:
        if (mod.offset(b) * k).denominator != 1:
            raise RequiresFiniteOrder(f"mode class of {b} is not in (1/k)Z")
    wbasis = [b for b in mod.space.basis() if mod.w_weight(b) <= cutoff]
    if triples is None:
        triples = sample([(u, v, w) for u in basis for v in basis for w in wbasis], limit, seed, "triples", rep)
    if isinstance(g_prime, GradedOperator):
        g_op = g_prime
        g_prime = lambda key: g_op.apply(Vec.basis(key))  # noqa: E731
    gpows: Dict = {}

    def gj(u, j):
        if (u, j) not in gpows:
            vec = Vec.basis(u)
            for _ in range(j):
                out = Vec()
                for key, c in vec.items():
                    out.iadd_scaled(g_prime(key), c)
                vec = out
            gpows[(u, j)] = vec
        return gpows[(u, j)]

    for u, v, w in triples:
        wu, wv, ww = alg.weight(u), alg.weight(v), mod.w_weight(w)
        ou, ov = mod.offset(u), mod.offset(v)
        cu, cv = _corr(mod, u), _corr(mod, v)
        wvec = Vec.basis(w)
        m_hi = wu + cu - 1 + cutoff
        n_hi = wv + cv - 1 + cutoff
        # beyond these indices single modes kill w or anything of weight <= ...
        iu = wu + cu - 1 + ww - mod.min_weight
        iv = wv + cv - 1 + ww - mod.min_weight
        for l in range(ceil(wu + wv - 1 - cutoff), num(wu + wv - 1 - alg.min_weight) + 1):
            total = wu + wv + ww + cu + cv - 2 - l
            for m in _index_range(ou, total - cutoff - n_hi, m_hi):
                for n in _index_range(ov, total - cutoff - m, min(n_hi, total - mod.min_weight - m)):
                    lhs = Vec()
                    i_max = max(iv - n, iu - m)
                    if l >= 0:
                        i_max = min(i_max, l)
                    for i in range(0, floor(i_max) + 1):
                        c = (-1) ** i * gen_binomial(l, i)
                        if not c:
                            continue
                        t1 = mod.wmode(u, num(m + l - i), mod.wmode(v, num(n + i), wvec))
                        t2 = mod.wmode(v, num(n + l - i), mod.wmode(u, num(m + i), wvec))
                        if t1:
                            lhs.iadd_scaled(t1, c)
                        if t2:
                            lhs.iadd_scaled(t2, -c * (-1) ** (l % 2))
                    rhs = Vec()
                    i = 0
                    while wu + wv - (l + i) - 1 >= alg.min_weight:
                        c = gen_binomial(m, i)
                        if c:
                            for j in range(k):
                                y = alg.mode(gj(u, j), l + i, Vec.basis(v))
                                if y:
                                    rhs.iadd_scaled(mod.wmode_vec(y, num(m + n - i), wvec),
                                                    c * root_of_unity(-j * Fraction(m)) * Fraction(1, k))
                        i += 1
                    rep.count()
                    if lhs.simplified() != rhs.simplified():
                        rep.fail(u=str(u), v=str(v), w=str(w), l=l, m=m, n=n, lhs=lhs, rhs=rhs)
    return rep


def check_virasoro(alg: VertexAlgebra, cutoff=None) -> AxiomReport:
    """[L(m), L(n)] = (m-n)L(m+n) + c/12 (m^3-m) delta on materialized blocks."""
    cutoff = alg.cutoff if cutoff is None else Fraction(cutoff)
    c = alg.central_charge()
    rep = AxiomReport("virasoro-bracket", {"cutoff": cutoff})
    rep.data["central_charge"] = c
    basis = [b for b in alg.space.basis() if alg.weight(b) <= cutoff]
    span = num(cutoff) + 2
    for v in basis:
        wv = alg.weight(v)
        vv = Vec.basis(v)
        for m in range(-span, span + 1):
            for n in range(-span, span + 1):
                if not (alg.min_weight <= wv - m - n <= cutoff):
                    continue
                rep.count()
                lhs = alg.L(m, alg.L(n, vv)) - alg.L(n, alg.L(m, vv))
                rhs = alg.L(m + n, vv).scale(m - n)
                if m + n == 0:
                    rhs.iadd_scaled(vv, c * Fraction(m ** 3 - m, 12))
                if lhs != rhs:
                    rep.fail(v=str(v), m=m, n=n, lhs=lhs, rhs=rhs)
    return rep
