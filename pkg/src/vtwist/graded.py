"""Truncated graded spaces, weight-block operators and exact spectral tools."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, lcm
from typing import Callable, Dict, Hashable, List, Optional, Sequence, Tuple

from .errors import IrrationalSpectrum, NotNilpotent, Truncated
from .series import LogSeries
from .vector import Vec

Matrix = List[list]


# ---------------------------------------------------------------------------
# dense exact matrices (list of rows); entries Fraction or Scalar


def zeros(r: int, c: int) -> Matrix:
    return [[Fraction(0)] * c for _ in range(r)]


def identity(n: int) -> Matrix:
    m = zeros(n, n)
    for i in range(n):
        m[i][i] = Fraction(1)
    return m


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    if not a or not b:
        return [[Fraction(0)] * (len(b[0]) if b else 0) for _ in a]
    cols = len(b[0])
    out = []
    for row in a:
        acc = [Fraction(0)] * cols
        for k, x in enumerate(row):
            if x:
                bk = b[k]
                for j in range(cols):
                    y = bk[j]
                    if y:
                        acc[j] = acc[j] + x * y
        out.append(acc)
    return out


def mat_add(a: Matrix, b: Matrix, s=1) -> Matrix:
    return [[x + s * y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(a: Matrix, s) -> Matrix:
    return [[x * s for x in row] for row in a]


def is_zero_matrix(a: Matrix) -> bool:
    return all(not x for row in a for x in row)


def mat_pow(a: Matrix, k: int) -> Matrix:
    out = identity(len(a))
    for _ in range(k):
        out = mat_mul(out, a)
    return out


def rref(m: Matrix) -> Tuple[Matrix, List[int]]:
    rows = [list(r) for r in m]
    nr = len(rows)
    nc = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(nc):
        sel = next((i for i in range(r, nr) if rows[i][c]), None)
        if sel is None:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(nr):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nr:
            break
    return rows, pivots


def nullspace(m: Matrix, ncols: Optional[int] = None) -> List[list]:
    """Basis of {x : m x = 0} as column lists."""
    nc = ncols if ncols is not None else (len(m[0]) if m else 0)
    if not m:
        return [[Fraction(int(i == j)) for i in range(nc)] for j in range(nc)]
    red, pivots = rref(m)
    free = [c for c in range(nc) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * nc
        x[f] = Fraction(1)
        for r, pc in enumerate(pivots):
            x[pc] = -red[r][f]
        basis.append(x)
    return basis


def rank(m: Matrix) -> int:
    if not m or not m[0]:
        return 0
    return len(rref(m)[1])


def inverse(m: Matrix) -> Matrix:
    n = len(m)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in red]


def transpose(m: Matrix) -> Matrix:
    return [list(c) for c in zip(*m)] if m else []


# ---------------------------------------------------------------------------
# characteristic polynomial and rational roots


def charpoly(a: Matrix) -> List[Fraction]:
    """Coefficients of det(t I - a), lowest degree first (monic)."""
    n = len(a)
    if n == 0:
        return [Fraction(1)]
    h = [[Fraction(x) for x in row] for row in a]
    # reduce to upper Hessenberg form by similarity
    for j in range(n - 2):
        piv = next((i for i in range(j + 1, n) if h[i][j]), None)
        if piv is None:
            continue
        if piv != j + 1:
            h[piv], h[j + 1] = h[j + 1], h[piv]
            for row in h:
                row[piv], row[j + 1] = row[j + 1], row[piv]
        for i in range(j + 2, n):
            if h[i][j]:
                f = h[i][j] / h[j + 1][j]
                h[i] = [x - f * y for x, y in zip(h[i], h[j + 1])]
                for row in h:
                    row[j + 1] += f * row[i]
    # Hessenberg recurrence
    polys = [[Fraction(1)]]
    for k in range(1, n + 1):
        pk = [Fraction(0)] + polys[k - 1]  # t * p_{k-1}
        for i in range(len(polys[k - 1])):
            pk[i] -= h[k - 1][k - 1] * polys[k - 1][i]
        prod = Fraction(1)
        for i in range(1, k):
            prod *= h[k - i][k - i - 1]
            if not prod:
                break
            c = prod * h[k - i - 1][k - 1]
            if c:
                for d, coef in enumerate(polys[k - i - 1]):
                    pk[d] -= c * coef
        polys.append(pk)
    return polys[n]


def _poly_eval(p: Sequence[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def _deflate(p: List[Fraction], r: Fraction) -> List[Fraction]:
    n = len(p) - 1
    out = [Fraction(0)] * n
    out[n - 1] = p[n]
    for i in range(n - 1, 0, -1):
        out[i - 1] = p[i] + r * out[i]
    return out


def _divisors(n: int) -> List[int]:
    n = abs(n)
    small = [d for d in range(1, int(n ** 0.5) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def rational_roots(p: List[Fraction]) -> List[Tuple[Fraction, int]]:
    """Rational roots with multiplicity; raises if the polynomial does not split."""
    p = list(p)
    while len(p) > 1 and not p[-1]:
        p.pop()
    roots: Dict[Fraction, int] = {}
    while len(p) > 1 and not p[0]:
        roots[Fraction(0)] = roots.get(Fraction(0), 0) + 1
        p = p[1:]
    while len(p) > 1:
        den = lcm(*[c.denominator for c in p])
        ints = [int(c * den) for c in p]
        found = None
        for a in _divisors(ints[0]):
            for b in _divisors(ints[-1]):
                for s in (1, -1):
                    cand = Fraction(s * a, b)
                    if not _poly_eval(p, cand):
                        found = cand
                        break
                if found is not None:
                    break
            if found is not None:
                break
        if found is None:
            raise IrrationalSpectrum(f"characteristic factor of degree {len(p) - 1} has no rational root")
        roots[found] = roots.get(found, 0) + 1
        p = _deflate(p, found)
    return sorted(roots.items())


# ---------------------------------------------------------------------------
# graded spaces and operators


@dataclass
class WeightBlockSpace:
    """Ordered bases of the weight blocks up to ``cutoff``."""

    blocks: Dict[Fraction, List[Hashable]]
    cutoff: Fraction
    index: Dict[Hashable, Tuple[Fraction, int]] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.blocks = {Fraction(w): list(b) for w, b in sorted(self.blocks.items())}
        self.index = {}
        for w, basis in self.blocks.items():
            for i, key in enumerate(basis):
                self.index[key] = (w, i)

    def weights(self) -> List[Fraction]:
        return list(self.blocks)

    def dim(self, weight) -> int:
        return len(self.blocks.get(Fraction(weight), ()))

    def basis(self) -> List[Hashable]:
        return [k for w in self.blocks for k in self.blocks[w]]

    def weight_of(self, key) -> Fraction:
        try:
            return self.index[key][0]
        except KeyError:
            raise Truncated(f"basis element {key!r} is not materialized") from None

    def to_column(self, v: Vec, weight) -> list:
        col = [Fraction(0)] * self.dim(weight)
        for k, c in v.items():
            w, i = self.index.get(k, (None, None))
            if w != weight:
                raise ValueError(f"{k!r} is not in block {weight}")
            col[i] = c
        return col

    def from_column(self, col, weight) -> Vec:
        basis = self.blocks[Fraction(weight)]
        return Vec({basis[i]: c for i, c in enumerate(col) if c})

    def split(self, v: Vec) -> Dict[Fraction, Vec]:
        out: Dict[Fraction, Vec] = {}
        for k, c in v.items():
            out.setdefault(self.weight_of(k), Vec())[k] = c
        return out


class GradedOperator:
    """Linear operator of fixed weight degree stored as one matrix per source block."""

    def __init__(self, space: WeightBlockSpace, degree, blocks: Dict[Fraction, Matrix]):
        self.space = space
        self.degree = Fraction(degree)
        self.blocks = {Fraction(w): m for w, m in blocks.items()}
        for w, m in self.blocks.items():
            assert len(m) == space.dim(w + self.degree), "target shape mismatch"
            assert all(len(r) == space.dim(w) for r in m), "source shape mismatch"

    @classmethod
    def from_function(cls, space: WeightBlockSpace, fn: Callable[[Hashable], Vec], degree=0,
                      weights=None) -> "GradedOperator":
        degree = Fraction(degree)
        blocks = {}
        for w in weights if weights is not None else space.weights():
            tgt = w + degree
            if tgt not in space.blocks:
                if tgt < 0:
                    blocks[w] = []
                    continue
                if tgt > space.cutoff:
                    continue
            m = zeros(space.dim(tgt), space.dim(w))
            for j, key in enumerate(space.blocks[w]):
                img = fn(key)
                for k, c in img.items():
                    tw, i = space.index[k]
                    if tw != tgt:
                        raise ValueError(f"operator is not homogeneous of degree {degree}")
                    m[i][j] = c
            blocks[w] = m
        return cls(space, degree, blocks)

    def block(self, weight) -> Matrix:
        w = Fraction(weight)
        if w not in self.blocks:
            raise Truncated(f"operator block at weight {w} not materialized")
        return self.blocks[w]

    def apply(self, v: Vec) -> Vec:
        out = Vec()
        for w, part in self.space.split(v).items():
            m = self.block(w)
            col = self.space.to_column(part, w)
            tgt = w + self.degree
            for i, row in enumerate(m):
                acc = 0
                for x, y in zip(row, col):
                    if x and y:
                        acc = acc + x * y
                if acc:
                    out.add_term(self.space.blocks[tgt][i], acc)
        return out

    def __call__(self, v: Vec) -> Vec:
        return self.apply(v)

    def compose(self, other: "GradedOperator") -> "GradedOperator":
        """self after other."""
        blocks = {}
        for w, m in other.blocks.items():
            mid = w + other.degree
            if mid in self.blocks:
                blocks[w] = mat_mul(self.blocks[mid], m) if m and self.blocks[mid] else zeros(
                    self.space.dim(mid + self.degree), self.space.dim(w))
        return GradedOperator(self.space, self.degree + other.degree, blocks)

    def __add__(self, other: "GradedOperator") -> "GradedOperator":
        assert self.degree == other.degree
        common = set(self.blocks) & set(other.blocks)
        return GradedOperator(self.space, self.degree, {w: mat_add(self.blocks[w], other.blocks[w]) for w in common})

    def __sub__(self, other):
        return self + other.scaled(-1)

    def scaled(self, s) -> "GradedOperator":
        return GradedOperator(self.space, self.degree, {w: mat_scale(m, s) for w, m in self.blocks.items()})

    def is_zero(self) -> bool:
        return all(is_zero_matrix(m) for m in self.blocks.values())

    def __eq__(self, other):
        if not isinstance(other, GradedOperator):
            return NotImplemented
        if self.degree != other.degree:
            return False
        common = set(self.blocks) & set(other.blocks)
        return all(_mat_eq(self.blocks[w], other.blocks[w]) for w in common)

    __hash__ = None

    @classmethod
    def identity(cls, space: WeightBlockSpace) -> "GradedOperator":
        return cls(space, 0, {w: identity(space.dim(w)) for w in space.weights()})


def _mat_eq(a: Matrix, b: Matrix) -> bool:
    return all(x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def commutator(a: GradedOperator, b: GradedOperator) -> GradedOperator:
    return a.compose(b) - b.compose(a)


# ---------------------------------------------------------------------------
# Jordan-Chevalley


@dataclass
class BlockJC:
    semisimple: Matrix
    nilpotent: Matrix
    eigenvalues: List[Tuple[Fraction, int]]
    projectors: Dict[Fraction, Matrix]
    nilpotency_index: int


@dataclass
class JCDecomposition:
    space: WeightBlockSpace
    blocks: Dict[Fraction, BlockJC]

    @property
    def semisimple(self) -> GradedOperator:
        return GradedOperator(self.space, 0, {w: b.semisimple for w, b in self.blocks.items()})

    @property
    def nilpotent(self) -> GradedOperator:
        return GradedOperator(self.space, 0, {w: b.nilpotent for w, b in self.blocks.items()})

    @property
    def eigenvalues(self) -> Dict[Fraction, List[Tuple[Fraction, int]]]:
        return {w: b.eigenvalues for w, b in self.blocks.items()}

    @property
    def nilpotency_index(self) -> Dict[Fraction, int]:
        return {w: b.nilpotency_index for w, b in self.blocks.items()}

    def eigencomponents(self, v: Vec) -> Dict[Fraction, Vec]:
        """Split v into generalized eigencomponents."""
        out: Dict[Fraction, Vec] = {}
        for w, part in self.space.split(v).items():
            if w not in self.blocks:
                raise Truncated(f"no decomposition for block {w}")
            col = self.space.to_column(part, w)
            for lam, proj in self.blocks[w].projectors.items():
                pc = [sum((x * y for x, y in zip(row, col) if x and y), Fraction(0)) for row in proj]
                comp = self.space.from_column(pc, w)
                if comp:
                    out.setdefault(lam, Vec()).iadd_scaled(comp)
        return out

    def eigenvalue_of(self, key) -> Optional[Fraction]:
        """Eigenvalue when a basis element lies in a single generalized eigenspace."""
        comps = self.eigencomponents(Vec.basis(key))
        return next(iter(comps)) if len(comps) == 1 else None


def jordan_chevalley_matrix(a: Matrix) -> BlockJC:
    n = len(a)
    if n == 0:
        return BlockJC([], [], [], {}, 1)
    if is_zero_matrix(a):
        return BlockJC(zeros(n, n), zeros(n, n), [(Fraction(0), n)], {Fraction(0): identity(n)}, 1)
    roots = rational_roots(charpoly(a))
    if sum(m for _, m in roots) != n:
        raise IrrationalSpectrum("characteristic polynomial does not split over Q")
    cols: List[list] = []
    spans: List[Tuple[Fraction, int, int]] = []
    for lam, mult in roots:
        shifted = [[a[i][j] - (lam if i == j else 0) for j in range(n)] for i in range(n)]
        ker = nullspace(mat_pow(shifted, mult), n)
        assert len(ker) == mult, "generalized eigenspace dimension mismatch"
        spans.append((lam, len(cols), len(cols) + mult))
        cols.extend(ker)
    b = transpose(cols)
    binv = inverse(b)
    diag = zeros(n, n)
    projectors = {}
    for lam, s, e in spans:
        e_mat = zeros(n, n)
        for i in range(s, e):
            diag[i][i] = lam
            e_mat[i][i] = Fraction(1)
        projectors[lam] = mat_mul(mat_mul(b, e_mat), binv)
    semi = mat_mul(mat_mul(b, diag), binv)
    nil = mat_add(a, semi, -1)
    k = 1
    p = nil
    while not is_zero_matrix(p):
        p = mat_mul(p, nil)
        k += 1
        if k > n + 1:
            raise NotNilpotent("nilpotent part failed to vanish")
    return BlockJC(semi, nil, roots, projectors, k)


def jordan_chevalley(op: GradedOperator) -> JCDecomposition:
    if op.degree != 0:
        raise ValueError("Jordan-Chevalley needs a degree-0 operator")
    return JCDecomposition(op.space, {w: jordan_chevalley_matrix(m) for w, m in op.blocks.items()})


def nilpotency_index(m: Matrix) -> int:
    """Least k with m^k = 0 (1 for the zero matrix, including 0x0)."""
    n = len(m)
    p = m
    k = 1
    while not is_zero_matrix(p):
        if k > n:
            raise NotNilpotent("matrix is not nilpotent")
        p = mat_mul(p, m)
        k += 1
    return k


def exp_nilpotent(n_op: GradedOperator, scale) -> GradedOperator:
    """sum_k scale^k N^k / k! on each block."""
    blocks = {}
    for w, m in n_op.blocks.items():
        d = len(m)
        out = identity(d)
        term = identity(d)
        k = 0
        while True:
            k += 1
            term = mat_scale(mat_mul(term, m), Fraction(1, k))
            if is_zero_matrix(term):
                break
            if k > d:
                raise NotNilpotent(f"block {w} is not nilpotent")
            out = mat_add(out, mat_scale(term, scale ** k))
        blocks[w] = out
    return GradedOperator(n_op.space, 0, blocks)


def x_power_semisimple(jc: JCDecomposition, v) -> LogSeries:
    """sum_a x^a v_a over generalized eigencomponents v_a."""
    if isinstance(v, LogSeries):
        out = LogSeries()
        for (e, k), c in v.terms.items():
            out = out + x_power_semisimple(jc, c).shift(e, k)
        return out
    return LogSeries({(lam, 0): comp for lam, comp in jc.eigencomponents(v).items()}, lo=None)


def log_action_unipotent(jc: JCDecomposition, v) -> LogSeries:
    """sum_k (log x)^k N^k v / k!."""
    if isinstance(v, LogSeries):
        out = LogSeries()
        for (e, k), c in v.terms.items():
            out = out + log_action_unipotent(jc, c).shift(e, k)
        return out
    nil = jc.nilpotent
    terms = {}
    cur = v
    k = 0
    while cur:
        terms[(Fraction(0), k)] = cur.scale(Fraction(1, factorial(k)))
        cur = nil.apply(cur)
        k += 1
        if k > 64:
            raise NotNilpotent("nilpotent part does not terminate")
    return LogSeries(terms)
