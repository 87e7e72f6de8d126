"""Twisted modules from a weight-one element u: the Delta operator and its checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, floor, lcm
from typing import Dict, List, Optional

from .errors import NotProportional, Truncated, VTwistError
from .graded import (GradedOperator, JCDecomposition, exp_nilpotent, is_zero_matrix, jordan_chevalley,
                     mat_add, mat_mul, mat_scale, identity, nilpotency_index, x_power_semisimple)
from .scalar import Scalar, coefficient_text, root_of_unity, tau
from .series import LogSeries, expand_binomial, gen_binomial, log_expand_one_plus
from .vector import Vec
from .voa import AxiomReport, UntwistedModule, VertexAlgebra, num


def _c(n: int) -> Fraction:
    """Coefficient of x^{-n} Y_n(u) in the integral from 0 to -x of Y^{<=-2}(u, y)."""
    return Fraction((-1) ** (n + 1), n)


class TwistData:
    """u, its zero mode with Jordan-Chevalley split, mu and cached Delta values.

    ``cutoff`` is the sweep cutoff; operators are materialized one weight higher
    so that Delta(x)L(-1)v is available for every swept v.
    """

    def __init__(self, alg: VertexAlgebra, u: Vec, cutoff=None, margin: int = 1):
        self.alg = alg
        self.u = u
        self.cutoff = Fraction(alg.cutoff if cutoff is None else cutoff)
        if hasattr(alg, "materialize") and alg.space.cutoff < self.cutoff + margin:
            alg.materialize(self.cutoff + margin)
        self._verify_u()
        self.zero_mode = GradedOperator.from_function(alg.space, lambda k: alg.mode(u, 0, Vec.basis(k)), 0)
        self.jc: JCDecomposition = jordan_chevalley(self.zero_mode)
        self.mu = compute_mu(self)
        self.delta_cache: Dict = {}
        self._eig: Dict = {}

    def _verify_u(self):
        alg, u = self.alg, self.u
        if alg.vec_weight(u) != 1:
            raise VTwistError("u must have weight 1")
        if alg.L(1, u):
            raise VTwistError("L(1)u must vanish")
        if alg.mode(u, 0, u):
            raise VTwistError("Y_0(u)u must vanish")

    # -- helpers ------------------------------------------------------
    def Y(self, n: int, v: Vec) -> Vec:
        return self.alg.mode(self.u, n, v)

    @property
    def nilpotent_free(self) -> bool:
        return self.jc.nilpotent.is_zero()

    def eigenvalue(self, key) -> Fraction:
        """Generalized Y_0(u)-eigenvalue of a basis element lying in one eigenspace."""
        if key not in self._eig:
            ev = self.jc.eigenvalue_of(key)
            if ev is None:
                raise VTwistError(f"{key} is not in a single generalized eigenspace")
            self._eig[key] = ev
        return self._eig[key]

    def order(self) -> Optional[int]:
        """Order of g when it is semisimple, else None."""
        if not self.nilpotent_free:
            return None
        dens = [lam.denominator for ev in self.jc.eigenvalues.values() for lam, _ in ev]
        return lcm(*dens) if dens else 1


def compute_mu(td: TwistData) -> Fraction:
    r = td.alg.mode(td.u, 1, td.u)
    one = td.alg.vacuum_key
    if set(r) - {one}:
        raise NotProportional(f"Y_1(u)u = {r.to_text()} is not a multiple of the vacuum")
    return r.get(one, Fraction(0))


# ---------------------------------------------------------------------------
# Delta


def y_le_minus2_series(td: TwistData, w: Vec) -> LogSeries:
    """sum_{m>=1} Y_m(u) w x^{-m-1} (exact: finitely many terms)."""
    terms = {}
    ww = td.alg.vec_weight(w) if w else 0
    m = 1
    while ww - m >= td.alg.min_weight:
        r = td.Y(m, w)
        if r:
            terms[(Fraction(-m - 1), 0)] = r
        m += 1
    return LogSeries(terms)


def integrated_exponential(td: TwistData, v: Vec) -> LogSeries:
    """exp of the integral from 0 to -x of Y^{<=-2}(u, y), applied to v."""
    total = LogSeries({(Fraction(0), 0): v}) if v else LogSeries()
    current = {Fraction(0): v}
    k = 0
    while current:
        k += 1
        nxt: Dict[Fraction, Vec] = {}
        for e, vec in current.items():
            for key, c in vec.items():
                wk = td.alg.weight(key)
                n = 1
                while wk - n >= td.alg.min_weight:
                    r = td.Y(n, Vec.basis(key))
                    if r:
                        nxt.setdefault(e - n, Vec()).iadd_scaled(r, c * _c(n) / k)
                    n += 1
        current = {e: vec for e, vec in nxt.items() if vec}
        for e, vec in current.items():
            total._add((e, 0), vec)
    return total


def _log_factor(td: TwistData, series: LogSeries) -> LogSeries:
    nil = td.jc.nilpotent
    out = LogSeries()
    for (e, k), vec in series.terms.items():
        cur = vec
        j = 0
        while cur:
            out._add((e, k + j), cur.scale(Fraction(1, factorial(j))))
            cur = nil.apply(cur)
            j += 1
    return out


def delta_apply(td: TwistData, v: Vec) -> LogSeries:
    """Delta(x)v = x^{S} e^{N log x} exp(int_0^{-x} Y^{<=-2}(u,y)) v, exact."""
    out = LogSeries()
    for key, c in v.items():
        out = out + _delta_basis(td, key).scale(c)
    return out


def _delta_basis(td: TwistData, key) -> LogSeries:
    hit = td.delta_cache.get(key)
    if hit is not None:
        return hit
    if td.alg.weight(key) > td.alg.space.cutoff:
        raise Truncated(f"Delta needs block {td.alg.weight(key)} which is not materialized")
    s = integrated_exponential(td, Vec.basis(key))
    s = _log_factor(td, s)
    s = x_power_semisimple(td.jc, s)
    td.delta_cache[key] = s
    return s


def automorphism_g(td: TwistData, t=1) -> GradedOperator:
    """e^{t tau Y_0(u)}: root_of_unity(t a) on each generalized eigenspace times e^{t tau N}."""
    t = Fraction(t)
    unip = exp_nilpotent(td.jc.nilpotent, tau() * t)
    blocks = {}
    for w, bj in td.jc.blocks.items():
        d = len(bj.semisimple)
        semi = [[Fraction(0)] * d for _ in range(d)]
        for lam, proj in bj.projectors.items():
            semi = mat_add(semi, mat_scale(proj, root_of_unity(t * lam)))
        blocks[w] = mat_mul(semi, unip.blocks[w]) if d else []
    return GradedOperator(td.alg.space, 0, blocks)


# ---------------------------------------------------------------------------
# twisted module map


class TwistedModule:
    """Y^{(u)}(v, x)w = Y(Delta(x)v, x)w on W = V."""

    def __init__(self, td: TwistData):
        self.td = td
        self.algebra = td.alg
        self.space = td.alg.space
        self.min_weight = td.alg.min_weight
        self.has_logs = not td.nilpotent_free

    def offset(self, v) -> Fraction:
        return (-self.td.eigenvalue(v)) % 1

    def w_weight(self, w):
        return self.algebra.weight(w)

    def out_weight(self, v, n, ww):
        """Original weight of the x^{-n-1} coefficient of Y^{(u)}(v, x)w."""
        return self.algebra.weight(v) - self.td.eigenvalue(v) - n - 1 + ww

    def max_log_power(self, v) -> int:
        return _delta_basis(self.td, v).max_log_power

    def wmode(self, v, n, w: Vec, log_power: int = 0) -> Vec:
        out = Vec()
        if not w:
            return out
        for (a, lp), vec in _delta_basis(self.td, v).terms.items():
            if lp != log_power:
                continue
            k = a + n
            if k.denominator != 1:
                continue
            r = self.algebra.mode(vec, k.numerator, w)
            if r:
                out.iadd_scaled(r)
        return out

    def wmode_vec(self, v: Vec, n, w: Vec, log_power: int = 0) -> Vec:
        out = Vec()
        for key, c in v.items():
            out.iadd_scaled(self.wmode(key, n, w, log_power), c)
        return out


def twisted_vertex(td: TwistData, v: Vec, w: Vec, hi=None) -> LogSeries:
    """Y^{(u)}(v, x)w as a series certified up to exponent ``hi``."""
    alg = td.alg
    delta = delta_apply(td, v)
    ww = alg.vec_weight(w)
    if hi is None:
        wv = alg.vec_weight(v)
        hi = td.cutoff - wv - ww + max((a for a, _ in delta.terms), default=0)
    out = LogSeries(lo=None, hi=hi)
    lo = None
    for (a, lp), mixed in delta.terms.items():
        for vec in alg.space.split(mixed).values():
            piece = alg.vertex_series(vec, w, hi - a).shift(a, lp)
            lo = piece.lo if lo is None else min(lo, piece.lo)
            for key, c in piece.terms.items():
                out._add(key, c)
    out.lo = lo
    return out


# ---------------------------------------------------------------------------
# regrading


@dataclass
class TwistedModuleView:
    """Double grading (L^{(u)}(0)-eigenvalue n, Y_0-eigenvalue alpha) of the basis."""

    td: TwistData
    index: Dict = field(default_factory=dict)

    def __post_init__(self):
        mu = self.td.mu
        for key in self.td.alg.space.basis():
            a = self.td.eigenvalue(key)
            n = self.td.alg.weight(key) + a + mu / 2
            self.index[key] = (Fraction(n), a)

    def dims(self) -> Dict:
        out: Dict = {}
        for n, a in self.index.values():
            out[(n, a)] = out.get((n, a), 0) + 1
        return dict(sorted(out.items()))

    def original_block(self, n, a) -> Fraction:
        return Fraction(n) - a - self.td.mu / 2


def regrade(td: TwistData) -> TwistedModuleView:
    return TwistedModuleView(td)


# ---------------------------------------------------------------------------
# checks


def _basis(td, cutoff):
    return [b for b in td.alg.space.basis() if td.alg.weight(b) <= cutoff]


def check_delta_structure(td: TwistData) -> AxiomReport:
    """Prerequisite identities for u: commutation with Y_0, L(-2) bracket, action on omega."""
    alg = td.alg
    rep = AxiomReport("twist-prerequisites", {"cutoff": td.cutoff})
    for w in _basis(td, td.cutoff):
        wv = Vec.basis(w)
        ww = alg.weight(w)
        for n in range(1, num(ww) - alg.min_weight + 1):
            rep.count()
            a = td.Y(0, td.Y(n, wv))
            b = td.Y(n, td.Y(0, wv))
            if a != b:
                rep.fail(identity="[Y0(u), Yn(u)] = 0", w=str(w), n=n)
        for m in range(-2, num(ww) + 3):
            rep.count()
            lhs = alg.L(-2, td.Y(m, wv)) - td.Y(m, alg.L(-2, wv))
            rhs = td.Y(m - 2, wv).scale(-m)
            if lhs != rhs:
                rep.fail(identity="[L(-2), Ym(u)] = -m Y(m-2)(u)", w=str(w), m=m)
    om = alg.conformal
    for m in range(0, 4):
        rep.count()
        r = td.Y(m, om)
        expect = td.u if m == 1 else Vec()
        if r != expect:
            rep.fail(identity="Ym(u) omega", m=m, got=r)
    rep.data["mu"] = td.mu
    return rep


def check_delta_examples(td: TwistData) -> AxiomReport:
    alg = td.alg
    rep = AxiomReport("delta-examples", {})
    one = alg.vacuum()
    rep.count()
    if delta_apply(td, one) != LogSeries({(0, 0): one}):
        rep.fail(v="1", got=delta_apply(td, one))
    expect = LogSeries({(0, 0): alg.conformal, (-1, 0): td.u, (-2, 0): one.scale(td.mu / 2)})
    got = delta_apply(td, alg.conformal)
    rep.count()
    if got != expect:
        rep.fail(v="omega", got=got, expected=expect)
    rep.data["delta_omega"] = got
    rep.data["delta_u"] = delta_apply(td, td.u)
    return rep


def check_delta_commutator(td: TwistData, cutoff=None) -> AxiomReport:
    """Integrated negative part against Y(v, x2): coefficient of x1^{-n} x2^C."""
    alg = td.alg
    cutoff = td.cutoff if cutoff is None else Fraction(cutoff)
    rep = AxiomReport("delta-commutator", {"cutoff": cutoff})
    basis = _basis(td, cutoff)
    for v in basis:
        wv = alg.weight(v)
        vv = Vec.basis(v)
        iters = {k: td.Y(k, vv) for k in range(0, num(wv) + 1 - alg.min_weight)}
        for w in basis:
            ww = alg.weight(w)
            wvec = Vec.basis(w)
            for n in range(1, num(wv + ww) + 2):
                for C in range(num(n - wv - ww), floor(n - wv - ww + cutoff) + 1):
                    N = -C - 1
                    lhs = (td.Y(n, alg.mode(vv, N, wvec)) - alg.mode(vv, N, td.Y(n, wvec))).scale(_c(n))
                    rhs = Vec()
                    for k in range(1, n + 1):
                        y = iters.get(k)
                        if y:
                            rhs.iadd_scaled(alg.mode(y, n - k - C - 1, wvec), _c(k) * gen_binomial(-k, n - k))
                    y0 = iters.get(0)
                    if y0:
                        rhs.iadd_scaled(alg.mode(y0, n - C - 1, wvec), _c(n))
                    rep.count()
                    if lhs != rhs:
                        rep.fail(v=str(v), w=str(w), n=n, C=C, lhs=lhs, rhs=rhs)
    return rep


def check_delta_L_minus1(td: TwistData, cutoff=None) -> AxiomReport:
    """[L(-1), integral] = -d/dx integral - Y_0(u) x^{-1}, coefficient of x^{-n}."""
    alg = td.alg
    cutoff = td.cutoff if cutoff is None else Fraction(cutoff)
    rep = AxiomReport("delta-L(-1)-integral", {"cutoff": cutoff})
    for w in _basis(td, cutoff):
        wv = Vec.basis(w)
        ww = alg.weight(w)
        for n in range(1, num(ww) + 3):
            lhs = (alg.L(-1, td.Y(n, wv)) - td.Y(n, alg.L(-1, wv))).scale(_c(n))
            rhs = td.Y(n - 1, wv).scale(_c(n - 1) * (n - 1)) if n >= 2 else td.Y(0, wv).scale(-1)
            rep.count()
            if lhs != rhs:
                rep.fail(w=str(w), n=n, lhs=lhs, rhs=rhs)
    return rep


def _delta_shifted(td: TwistData, v: Vec, order: int) -> Dict[int, LogSeries]:
    """Delta(x + x2)v as {j: coefficient of x2^j}, x large, to x2^order."""
    out: Dict[int, LogSeries] = {}
    logs = log_expand_one_plus(max(order, 1))
    for (a, lp), vec in delta_apply(td, v).terms.items():
        binom = expand_binomial(a, "first-large", order)
        # (log x + log(1 + x2/x))^lp
        power = {0: LogSeries({(Fraction(0), 0): Fraction(1)})}
        for _ in range(lp):
            nxt: Dict[int, LogSeries] = {}
            for j, s in power.items():
                t = s.shift(0, 1)
                nxt[j] = nxt[j] + t if j in nxt else t
                for l in range(1, order - j + 1):
                    term = s.mul(logs.coefficient(l))
                    nxt[j + l] = nxt[j + l] + term if j + l in nxt else term
            power = nxt
        for i in range(order + 1):
            bi = binom.coefficient(i) if binom.order is None or i <= binom.order else LogSeries()
            if not bi:
                continue
            for j, s in power.items():
                if i + j > order:
                    continue
                piece = bi.mul(s).map(lambda c, vec=vec: vec.scale(c))
                out[i + j] = out[i + j] + piece if i + j in out else piece
    return out


def check_delta_conjugation(td: TwistData, cutoff=None) -> AxiomReport:
    """Delta(x) Y(v, x2) w = Y(Delta(x + x2) v, x2) Delta(x) w, coefficientwise in x2^C."""
    alg = td.alg
    cutoff = td.cutoff if cutoff is None else Fraction(cutoff)
    rep = AxiomReport("delta-conjugation", {"cutoff": cutoff})
    basis = _basis(td, cutoff)
    logs_seen = 0
    for v in basis:
        vv = Vec.basis(v)
        wv = alg.weight(v)
        for w in basis:
            ww = alg.weight(w)
            wvec = Vec.basis(w)
            dw = delta_apply(td, wvec)
            top = floor(cutoff - wv - ww)
            shifted = _delta_shifted(td, vv, max(0, floor(cutoff)))
            for C in range(num(-wv - ww), top + 1):
                N = -C - 1
                lhs = delta_apply(td, alg.mode(vv, N, wvec)) if alg.mode(vv, N, wvec) else LogSeries()
                rhs = LogSeries()
                for j in range(0, num(wv + ww + C) + 1):
                    fj = shifted.get(j)
                    if not fj:
                        continue
                    for (b, l1), vpp in fj.terms.items():
                        for (b2, l2), wp in dw.terms.items():
                            r = alg.mode(vpp, j - C - 1, wp)
                            if r:
                                rhs._add((b + b2, l1 + l2), r)
                rep.count()
                if lhs.has_logs():
                    logs_seen += 1
                if not lhs.agrees_with(rhs):
                    rep.fail(v=str(v), w=str(w), C=C, witness=str(lhs.difference_witness(rhs)))
    rep.data["coefficients_with_logs"] = logs_seen
    return rep


def check_L_minus1_bracket(td: TwistData, cutoff=None) -> AxiomReport:
    """L(-1)Delta(x)v - Delta(x)L(-1)v = -d/dx Delta(x)v."""
    alg = td.alg
    cutoff = td.cutoff if cutoff is None else Fraction(cutoff)
    rep = AxiomReport("delta-L(-1)-bracket", {"cutoff": cutoff})
    for v in _basis(td, cutoff):
        vv = Vec.basis(v)
        d = delta_apply(td, vv)
        lhs = d.map(lambda c: alg.L(-1, c)) - delta_apply(td, alg.L(-1, vv))
        rhs = -d.ddx()
        rep.count()
        if not lhs.agrees_with(rhs):
            rep.fail(v=str(v), witness=str(lhs.difference_witness(rhs)))
    return rep


def check_log_presence(td: TwistData, cutoff=None) -> AxiomReport:
    """log-degree-1 part of Delta(x)v equals x^S applied to the integrated exponential of Nv."""
    cutoff = td.cutoff if cutoff is None else Fraction(cutoff)
    rep = AxiomReport("log-presence", {"cutoff": cutoff})
    nil = td.jc.nilpotent
    exhibited = None
    for v in _basis(td, cutoff):
        vv = Vec.basis(v)
        d = delta_apply(td, vv)
        nv = nil.apply(vv)
        expect = x_power_semisimple(td.jc, integrated_exponential(td, nv)) if nv else LogSeries()
        rep.count()
        if not d.log_component(1).agrees_with(expect):
            rep.fail(v=str(v), got=d.log_component(1), expected=expect)
        if nv and exhibited is None:
            exhibited = (str(v), d)
    if exhibited:
        rep.data["example_v"], rep.data["example_delta"] = exhibited
    rep.data["log_terms_found"] = exhibited is not None
    return rep


def _twisted_omega_zero(td: TwistData) -> GradedOperator:
    mod = TwistedModule(td)
    om = td.alg.conformal
    return GradedOperator.from_function(td.alg.space, lambda k: mod.wmode_vec(om, 1, Vec.basis(k)), 0)


def check_twisted_virasoro_zero(td: TwistData, cutoff=None) -> AxiomReport:
    """Y^{(u)}(omega, x) has integral powers and no logs; L^{(u)}(0) = L(0) + Y_0(u) + mu/2.

    The sign of mu/2 follows from Y_1(u)omega = u, which skew-symmetry forces
    for any weight-one u with L(1)u = 0.
    """
    alg = td.alg
    cutoff = td.cutoff if cutoff is None else Fraction(cutoff)
    rep = AxiomReport("twisted-virasoro-zero", {"cutoff": cutoff})
    om = alg.conformal
    for w in _basis(td, cutoff):
        s = twisted_vertex(td, om, Vec.basis(w))
        rep.count()
        if s.has_logs() or any(e.denominator != 1 for e, _ in s.terms):
            rep.fail(w=str(w), series=s)
    lu0 = _twisted_omega_zero(td)
    l0 = alg.virasoro_mode(0)
    expect = l0 + td.zero_mode + GradedOperator.identity(alg.space).scaled(td.mu / 2)
    for wt in alg.space.weights():
        if wt > cutoff:
            continue
        rep.count()
        if lu0.blocks[wt] != expect.blocks[wt]:
            rep.fail(block=wt, got=lu0.blocks[wt], expected=expect.blocks[wt])
    return rep


def check_identity_twisted(td: TwistData, cutoff=None) -> AxiomReport:
    cutoff = td.cutoff if cutoff is None else Fraction(cutoff)
    rep = AxiomReport("twisted-identity", {"cutoff": cutoff})
    one = td.alg.vacuum()
    for w in _basis(td, cutoff):
        wv = Vec.basis(w)
        rep.count()
        if twisted_vertex(td, one, wv) != LogSeries({(0, 0): wv}, hi=cutoff - td.alg.weight(w)):
            rep.fail(w=str(w))
    return rep


def check_twisted_derivative(td: TwistData, cutoff=None) -> AxiomReport:
    """d/dx Y^{(u)}(v, x)w = Y^{(u)}(L(-1)v, x)w."""
    alg = td.alg
    cutoff = td.cutoff if cutoff is None else Fraction(cutoff)
    rep = AxiomReport("twisted-L(-1)-derivative", {"cutoff": cutoff})
    basis = _basis(td, cutoff)
    for v in basis:
        vv = Vec.basis(v)
        dv = alg.L(-1, vv)
        for w in basis:
            wvec = Vec.basis(w)
            lhs = twisted_vertex(td, vv, wvec).ddx()
            rhs = twisted_vertex(td, dv, wvec, hi=lhs.hi) if dv else LogSeries(hi=lhs.hi)
            rep.count()
            if not lhs.agrees_with(rhs):
                rep.fail(v=str(v), w=str(w), witness=str(lhs.difference_witness(rhs)))
    return rep


def check_equivariance(td: TwistData, cutoff=None, t=1) -> AxiomReport:
    """monodromy_substitute(Y^{(u)}(v, x)w) = Y^{(u)}(g v, x)w with g = e^{t tau Y_0(u)}.

    Only t = 1 is expected to pass; other t serve as negative controls.
    """
    cutoff = td.cutoff if cutoff is None else Fraction(cutoff)
    rep = AxiomReport("equivariance", {"cutoff": cutoff, "g": f"exp({t}*tau*Y0(u))"})
    g = automorphism_g(td, t)
    basis = _basis(td, cutoff)
    tau_terms = 0
    for v in basis:
        vv = Vec.basis(v)
        gv = g.apply(vv)
        for w in basis:
            wv = Vec.basis(w)
            lhs = twisted_vertex(td, vv, wv).monodromy_substitute()
            rhs = LogSeries(hi=lhs.hi)
            for key, c in gv.items():
                rhs = rhs + twisted_vertex(td, Vec.basis(key), wv, hi=lhs.hi).scale(c)
            rep.count()
            if any(isinstance(x, Scalar) and x.tau_degree for vec in lhs.terms.values() for x in vec.values()):
                tau_terms += 1
            if not lhs.agrees_with(rhs):
                rep.fail(v=str(v), w=str(w), witness=str(lhs.difference_witness(rhs)))
    rep.data["pairs_with_tau_terms"] = tau_terms
    return rep


def check_formal_monodromy(td: TwistData, cutoff=None, t=1) -> AxiomReport:
    """For g'v = eta^j v (g' = g^{-t}), only modes n in j/k + Z occur."""
    cutoff = td.cutoff if cutoff is None else Fraction(cutoff)
    k = td.order()
    rep = AxiomReport("formal-monodromy", {"cutoff": cutoff, "k": k, "g'": f"exp({-t}*tau*Y0(u))"})
    if k is None:
        rep.status = "fail"
        rep.fail(reason="g has infinite order")
        return rep
    gp = automorphism_g(td, -t)
    for v in _basis(td, cutoff):
        gv = gp.apply(Vec.basis(v))
        j = None
        for jj in range(k):
            if gv == Vec.basis(v).scale(root_of_unity(Fraction(jj, k))):
                j = jj
        if j is None:
            rep.fail(v=str(v), reason="not an eigenvector of g'")
            continue
        for w in _basis(td, cutoff):
            s = twisted_vertex(td, Vec.basis(v), Vec.basis(w))
            rep.count()
            for e, _ in s.terms:
                n = -e - 1
                if (n - Fraction(j, k)).denominator != 1:
                    rep.fail(v=str(v), w=str(w), exponent=e, j=j)
    return rep


def check_grading(td: TwistData, cutoff=None) -> AxiomReport:
    """Nilpotency of L^{(u)}(0) - n and g - e^{2 pi i alpha} per regraded block; grading compatibility."""
    alg = td.alg
    cutoff = td.cutoff if cutoff is None else Fraction(cutoff)
    rep = AxiomReport("twisted-grading", {"cutoff": cutoff})
    lu0 = _twisted_omega_zero(td)
    g = automorphism_g(td)
    K_tab, L_tab = {}, {}
    for wt in alg.space.weights():
        if wt > cutoff:
            continue
        bj = td.jc.blocks[wt]
        d = len(bj.semisimple)
        for lam, proj in bj.projectors.items():
            n = wt + lam + td.mu / 2
            shifted = mat_add(lu0.blocks[wt], identity(d), -n)
            M = mat_mul(shifted, proj)
            G = mat_mul(mat_add(g.blocks[wt], identity(d), -root_of_unity(lam)), proj)
            rep.count()
            try:
                K_tab[(n, lam)] = nilpotency_index(M)
                L_tab[(n, lam)] = nilpotency_index(G)
            except VTwistError as exc:
                rep.fail(block=wt, alpha=lam, reason=str(exc))
    rep.data["K"] = {f"({n},{a})": k for (n, a), k in K_tab.items()}
    rep.data["Lambda"] = {f"({n},{a})": k for (n, a), k in L_tab.items()}
    rep.data["Lambda_max"] = max(L_tab.values(), default=0)
    # grading compatibility
    basis = _basis(td, cutoff)
    for v in basis:
        a = td.eigenvalue(v)
        for w in basis:
            b = td.eigenvalue(w)
            s = twisted_vertex(td, Vec.basis(v), Vec.basis(w))
            for key, vec in s.terms.items():
                if any(alg.weight(k) > cutoff for k in vec):
                    continue
                rep.count()
                comps = td.jc.eigencomponents(vec)
                if set(comps) - {a + b}:
                    rep.fail(v=str(v), w=str(w), term=str(key), eigen=sorted(comps))
    view = regrade(td)
    rep.data["regraded_dims"] = {f"({n},{a})": d for (n, a), d in view.dims().items()}
    rep.data["depth"] = f"verified to weight {alg.min_weight} (no materialized block below)"
    return rep


def check_functoriality(td: TwistData, scalar=Fraction(3), cutoff=None) -> AxiomReport:
    """f Y^{(u)}(v, x) w = Y^{(u)}(v, x) f w for f = identity and a scalar multiple."""
    cutoff = td.cutoff if cutoff is None else Fraction(cutoff)
    rep = AxiomReport("functoriality", {"cutoff": cutoff, "scalar": scalar})
    basis = _basis(td, cutoff)
    for f in (lambda x: x, lambda x: x.scale(scalar)):
        for v in basis:
            for w in basis:
                wv = Vec.basis(w)
                lhs = twisted_vertex(td, Vec.basis(v), wv).map(f)
                rhs = twisted_vertex(td, Vec.basis(v), f(wv))
                rep.count()
                if not lhs.agrees_with(rhs):
                    rep.fail(v=str(v), w=str(w))
    return rep


def twisted_coefficient_table(td: TwistData, v: Vec, w: Vec) -> List[dict]:
    s = twisted_vertex(td, v, w)
    rows = [{"x_exponent": coefficient_text(e), "log_power": k, "coefficient": c.to_text()}
            for (e, k), c in s.items() if c]
    return sorted(rows, key=lambda r: (-Fraction(r["x_exponent"]), r["log_power"]))
