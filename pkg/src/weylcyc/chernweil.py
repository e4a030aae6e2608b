"""Relative Lie algebra side: the projection onto h = sp_{2n} + gl_r, its
curvature, the A-hat and Chern character series, the Chern-Weil map,
evaluation of Hochschild cochains at 1, and the Chevalley-Eilenberg
differential with trivial coefficients.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from math import factorial

from .bernoulli import bernoulli_numbers
from .cocycle import hm_eval, tau_family_build
from .config import CAPS
from .errors import CapExceeded, DimensionError
from .hochschild import Chain, MatrixWeylAlgebra, WeylAlgebra, perm_sign, wedge_embed
from .weyl import (MatrixElement, SpElement, WeylPoly, as_rational,
                   quad_to_sp_matrix)


# -- h elements and the projection --------------------------------------------

@dataclass(frozen=True)
class HElement:
    """``x (x) 1 + 1 (x) M`` with ``x`` quadratic and ``M`` an r x r matrix."""

    sp_part: WeylPoly
    gl_part: tuple

    def __post_init__(self):
        if not self.sp_part.is_zero() and not self.sp_part.is_homogeneous(2):
            raise ValueError(f"{self.sp_part} is not a quadratic polynomial")
        object.__setattr__(self, "gl_part", tuple(tuple(as_rational(x) for x in row) for row in self.gl_part))

    @classmethod
    def make(cls, sp=None, gl=None, n=None, r=None):
        if sp is None:
            sp = WeylPoly(n)
        if isinstance(sp, SpElement):
            sp = sp.poly
        if gl is None:
            gl = [[0] * r for _ in range(r)]
        return cls(sp, gl)

    @property
    def n(self):
        return self.sp_part.n

    @property
    def r(self):
        return len(self.gl_part)

    def to_matrix_element(self):
        r = self.r
        rows = []
        for i in range(r):
            row = []
            for j in range(r):
                e = WeylPoly.constant(self.n, self.gl_part[i][j])
                if i == j:
                    e = e + self.sp_part
                row.append(e)
            rows.append(row)
        return MatrixElement(rows)

    def sp_matrix(self):
        if self.sp_part.is_zero():
            return [[Fraction(0)] * (2 * self.n) for _ in range(2 * self.n)]
        return quad_to_sp_matrix(self.sp_part)

    def is_zero(self):
        return self.sp_part.is_zero() and not any(any(row) for row in self.gl_part)


def _as_matrix_element(v, r=1):
    if isinstance(v, MatrixElement):
        return v
    if isinstance(v, HElement):
        return v.to_matrix_element()
    if isinstance(v, WeylPoly):
        return MatrixElement.from_poly(v, r)
    raise TypeError(f"cannot use {type(v).__name__} as an element of A_2n (x) gl_r")


def pr_projection(v):
    """h-equivariant projection: quadratic part of ``tr(v)/r`` and the
    constant-term matrix."""
    v = _as_matrix_element(v)
    r = v.r
    sp = v.trace().homogeneous_part(2).scale(Fraction(1, r))
    gl = [[v.entries[i][j].constant_term() for j in range(r)] for i in range(r)]
    return HElement(sp, gl)


def lie_bracket(u, v):
    u, v = _as_matrix_element(u), _as_matrix_element(v)
    return u.bracket(v)


def h_add(a, b, sign=1):
    return HElement(a.sp_part + b.sp_part.scale(sign),
                    [[x + sign * y for x, y in zip(ra, rb)] for ra, rb in zip(a.gl_part, b.gl_part)])


def curvature_C(u, v):
    """``C(u ^ v) = [pr u, pr v] - pr([u, v])``."""
    u, v = _as_matrix_element(u), _as_matrix_element(v)
    if (u.n, u.r) != (v.n, v.r):
        raise DimensionError("curvature arguments have different sizes")
    top = pr_projection(pr_projection(u).to_matrix_element().bracket(pr_projection(v).to_matrix_element()))
    return h_add(top, pr_projection(u.bracket(v)), -1)


# -- coefficient rings for series evaluation --------------------------------------

class Multilinear:
    """Polynomials in formal ``t_1, t_2, ...`` with ``t_i^2 = 0``; keys are bitmasks."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    @classmethod
    def const(cls, c):
        return cls({0: Fraction(c)})

    def __add__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return Multilinear(out)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Multilinear({k: v * other for k, v in self.terms.items()})
        out = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                if k1 & k2:
                    continue
                out[k1 | k2] = out.get(k1 | k2, 0) + v1 * v2
        return Multilinear(out)

    def coefficient(self, mask):
        return self.terms.get(mask, Fraction(0))


class Truncated:
    """Power series in one variable ``t`` truncated above degree ``N``."""

    __slots__ = ("c", "N")

    def __init__(self, coeffs, N):
        c = [Fraction(x) for x in coeffs[:N + 1]]
        self.c = c + [Fraction(0)] * (N + 1 - len(c))
        self.N = N

    @classmethod
    def const(cls, x, N):
        return cls([x], N)

    def __add__(self, other):
        return Truncated([a + b for a, b in zip(self.c, other.c)], self.N)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Truncated([a * other for a in self.c], self.N)
        out = [Fraction(0)] * (self.N + 1)
        for i, a in enumerate(self.c):
            if a:
                for j in range(self.N + 1 - i):
                    if other.c[j]:
                        out[i + j] += a * other.c[j]
        return Truncated(out, self.N)


def _rmat_mul(a, b, zero):
    n = len(a)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = zero
            for k in range(n):
                acc = acc + a[i][k] * b[k][j]
            row.append(acc)
        out.append(row)
    return out


def _rtrace(a, zero):
    acc = zero
    for i in range(len(a)):
        acc = acc + a[i][i]
    return acc


def _power_traces(mat, top, zero):
    """``[tr(mat^1), ..., tr(mat^top)]``."""
    out = []
    cur = mat
    for b in range(1, top + 1):
        if b > 1:
            cur = _rmat_mul(cur, mat, zero)
        out.append(_rtrace(cur, zero))
    return out


def _exp(s, top, one):
    """``exp(s)`` for ``s`` without constant term, summing ``top`` powers."""
    out = one
    term = one
    for j in range(1, top + 1):
        term = term * s * Fraction(1, j)
        out = out + term
    return out


def ahat_coefficient(l):
    """``c_l`` in ``A-hat = exp(-sum_l c_l tr(x^l))``: ``(-1)^l B_l / (2 l l!)``."""
    return Fraction((-1) ** l) * bernoulli_numbers(l)[l] / (2 * l * factorial(l))


def _ahat_from_traces(traces, top, zero, one):
    s = zero
    for l in range(2, top + 1):
        c = ahat_coefficient(l)
        if c:
            s = s + traces[l - 1] * (-c)
    return _exp(s, top // 2, one)


def _chern_from_traces(traces, r, top, zero, one):
    out = one * r
    for b in range(1, top + 1):
        out = out + traces[b - 1] * Fraction(1, factorial(b))
    return out


class InvariantPolySeries:
    """``kind`` in {"ahat", "ch", "ahatch"}; degree components up to ``N``.

    ``A-hat`` uses the trace of the defining 2n-dimensional representation
    (through :func:`quad_to_sp_matrix`); ``Ch(M) = tr exp(M)``.
    """

    def __init__(self, kind, N):
        if kind not in ("ahat", "ch", "ahatch"):
            raise ValueError(f"unknown series {kind!r}")
        if N > CAPS.series:
            raise CapExceeded(f"series degree {N} exceeds series cap {CAPS.series}")
        self.kind = kind
        self.N = N

    def _evaluate(self, sp_mat, gl_mat, r, top, zero, one):
        val = one
        if self.kind in ("ahat", "ahatch"):
            val = val * _ahat_from_traces(_power_traces(sp_mat, top, zero), top, zero, one)
        if self.kind in ("ch", "ahatch"):
            val = val * _chern_from_traces(_power_traces(gl_mat, top, zero), r, top, zero, one)
        return val

    def components(self, h):
        """``[P_0(h), ..., P_N(h)]``."""
        N = self.N
        zero, one = Truncated.const(0, N), Truncated.const(1, N)
        t = lambda x: Truncated([0, x], N)
        sp = [[t(x) for x in row] for row in h.sp_matrix()]
        gl = [[t(x) for x in row] for row in h.gl_part]
        return self._evaluate(sp, gl, h.r, N, zero, one).c

    def component(self, k, h):
        if k > self.N:
            raise CapExceeded(f"component {k} above truncation degree {self.N}")
        return self.components(h)[k]

    def polarized(self, k, args):
        """Coefficient of ``t_1 ... t_k`` in ``P(t_1 h_1 + ... + t_k h_k)``.

        Equals ``k! P_k(h)`` when all arguments are ``h``.
        """
        if len(args) != k:
            raise ValueError(f"polarization of degree {k} needs {k} arguments, got {len(args)}")
        if k > self.N:
            raise CapExceeded(f"component {k} above truncation degree {self.N}")
        if k == 0:
            raise ValueError("use polarize_eval for degree 0, which needs r")
        n, r = args[0].n, args[0].r
        zero, one = Multilinear.const(0), Multilinear.const(1)
        dim = 2 * n
        sp = [[zero] * dim for _ in range(dim)]
        gl = [[zero] * r for _ in range(r)]
        for i, h in enumerate(args):
            if (h.n, h.r) != (n, r):
                raise DimensionError("polarization arguments have different sizes")
            bit = 1 << i
            for a, row in enumerate(h.sp_matrix()):
                for b, x in enumerate(row):
                    if x:
                        sp[a][b] = sp[a][b] + Multilinear({bit: x})
            for a, row in enumerate(h.gl_part):
                for b, x in enumerate(row):
                    if x:
                        gl[a][b] = gl[a][b] + Multilinear({bit: x})
        return self._evaluate(sp, gl, r, k, zero, one).coefficient((1 << k) - 1)


def ahat_series(N):
    return InvariantPolySeries("ahat", N)


def chern_character(N):
    return InvariantPolySeries("ch", N)


def ahatch(N):
    return InvariantPolySeries("ahatch", N)


def polarize_eval(P, k, args, r=None):
    """Coefficient of ``t_1 ... t_k`` in ``P(sum t_i args_i)``; ``r`` is needed for ``k = 0``."""
    if k == 0:
        if args:
            raise ValueError("degree 0 takes no arguments")
        return Fraction(1) if P.kind == "ahat" else Fraction(r if r is not None else 1)
    return P.polarized(k, list(args))


def ahat_components_sp(X, N):
    """``A-hat_0..A-hat_N`` of a 2n x 2n matrix, trace in that representation."""
    return _ahat_matrix_components(X, N)


def ahat_components_gl(x, N):
    """Same formula with the trace of the n-dimensional representation.

    Since only even powers enter, this halves the exponent relative to the
    sp trace of the embedded matrix, so its square is the sp version.
    """
    return _ahat_matrix_components(x, N)


def _ahat_matrix_components(X, N):
    zero, one = Truncated.const(0, N), Truncated.const(1, N)
    mat = [[Truncated([0, x], N) for x in row] for row in X]
    return _ahat_from_traces(_power_traces(mat, N, zero), N, zero, one).c


def mul_series(a, b, N):
    return [sum((a[i] * b[k - i] for i in range(k + 1)), Fraction(0)) for k in range(N + 1)]


# -- Chern-Weil map, ev_1, CE differential ----------------------------------------

def chern_weil_chi(P, k, vs, r=None, normalized=False):
    """``1/(k! 2^k) sum_{S_2k} sgn P(C(v_s1, v_s2), ..., C(v_s(2k-1), v_s2k))``.

    ``P`` enters through its polarization, the coefficient of ``t_1...t_k``
    (diagonal ``k! P_k``).  ``normalized=True`` divides by a further ``k!``
    so the diagonal is ``P_k``; this only matters for ``k >= 2``.
    """
    if len(vs) != 2 * k:
        raise ValueError(f"chi of degree {k} needs {2 * k} arguments, got {len(vs)}")
    if k == 0:
        return polarize_eval(P, 0, [], r)
    mats = [_as_matrix_element(v) for v in vs]
    curv = {}
    total = Fraction(0)
    for perm in permutations(range(2 * k)):
        args = []
        for s in range(k):
            key = (perm[2 * s], perm[2 * s + 1])
            if key not in curv:
                curv[key] = curvature_C(mats[key[0]], mats[key[1]])
            args.append(curv[key])
        total += perm_sign(perm) * P.polarized(k, args)
    total /= factorial(k) * 2 ** k
    if normalized:
        total /= factorial(k)
    return total


def ev1(phi, vs):
    """``phi(1 (x) v_1 ^ ... ^ v_k)``."""
    if len(vs) != phi.degree:
        raise ValueError(f"ev1 of a degree-{phi.degree} cochain needs {phi.degree} arguments")
    alg = phi.algebra
    vs = [_coerce(alg, v) for v in vs]
    return phi(wedge_embed(vs, None, alg))


def _coerce(alg, v):
    if isinstance(alg, MatrixWeylAlgebra):
        return _as_matrix_element(v, alg.r)
    if isinstance(v, HElement):
        if v.r != 1 or any(any(row) for row in v.gl_part):
            raise DimensionError("scalar algebra cannot hold a gl_r part")
        return v.sp_part
    return v


def ce_differential(phi, xs, bracket=None):
    """``(d phi)(x_1 ^ ... ^ x_{m+1}) = sum_{i<j} (-1)^{i+j} phi([x_i, x_j], ..., x^_i, ..., x^_j, ...)``.

    ``phi`` is any callable on a list of Lie algebra elements.
    """
    if bracket is None:
        bracket = lambda a, b: a.bracket(b)
    total = Fraction(0)
    m = len(xs)
    for i in range(m):
        for j in range(i + 1, m):
            rest = [xs[s] for s in range(m) if s not in (i, j)]
            sign = -1 if (i + j) % 2 else 1  # 0-based i+j has the parity of the 1-based sum
            total += sign * phi([bracket(xs[i], xs[j])] + rest)
    return total


def hm_oracle(m, args):
    """Cube-integral evaluation on quadratic polynomials (slot 0 holds 1)."""
    if len(args) != m:
        raise ValueError(f"h_{m} needs {m} arguments")
    polys = [a.poly if isinstance(a, SpElement) else (a.sp_part if isinstance(a, HElement) else a) for a in args]
    return hm_eval(polys)


# -- the comparison on W_{n,r} ----------------------------------------------------

@dataclass(frozen=True)
class WnrElement:
    """One of ``p_a (x) 1``, ``p_a q_b q_c (x) 1`` or ``q_a (x) M`` (1-based indices)."""

    kind: str
    indices: tuple
    matrix: tuple = None
    coeff: Fraction = Fraction(1)

    def __post_init__(self):
        expected = {"p": 1, "pqq": 3, "qM": 1}
        if self.kind not in expected or len(self.indices) != expected[self.kind]:
            raise ValueError(f"malformed W_(n,r) element {self.kind}{self.indices}")
        if (self.kind == "qM") != (self.matrix is not None):
            raise ValueError("only the q (x) M form carries a matrix")

    def poly(self, n):
        if any(not 1 <= i <= n for i in self.indices):
            raise ValueError(f"index out of range for n={n}")
        if self.kind == "p":
            f = WeylPoly.p(n, self.indices[0])
        elif self.kind == "pqq":
            a, b, c = self.indices
            f = WeylPoly.p(n, a) * WeylPoly.q(n, b) * WeylPoly.q(n, c)
        else:
            f = WeylPoly.q(n, self.indices[0])
        return f.scale(self.coeff)

    def to_matrix_element(self, n, r):
        f = self.poly(n)
        if self.kind == "qM":
            if len(self.matrix) != r:
                raise DimensionError(f"matrix size {len(self.matrix)} does not match r={r}")
            return MatrixElement.from_poly(f, r, self.matrix)
        return MatrixElement.from_poly(f, r)

    def __str__(self):
        c = "" if self.coeff == 1 else f"{self.coeff}*"
        if self.kind == "p":
            return f"{c}p{self.indices[0]}"
        if self.kind == "pqq":
            a, b, cc = self.indices
            return f"{c}p{a}*q{b}*q{cc}"
        rows = ";".join(",".join(str(x) for x in row) for row in self.matrix)
        return f"{c}q{self.indices[0]}(x)[{rows}]"


def check_normal_form(k, tuple_):
    if len(tuple_) != 2 * k:
        raise ValueError(f"need {2 * k} elements, got {len(tuple_)}")
    kinds = [v.kind for v in tuple_]
    m = kinds.count("pqq")
    if kinds.count("p") != k or kinds.count("qM") != k - m:
        raise ValueError(f"tuple is not in normal form: {kinds}")
    return m


def tau_component_for(n, r, k, sign=-1):
    return tau_family_build(n, r, sign).component(k)


def compare_chern_weil(n, r, k, tuple_, family_sign=-1, normalized=False):
    """Compare ``ev1(tau^r_{2k})`` with ``chi(P_k)`` on a normal-form tuple."""
    check_normal_form(k, tuple_)
    phi = tau_component_for(n, r, k, family_sign)
    mats = [v.to_matrix_element(n, r) for v in tuple_]
    if r == 1:
        lhs = ev1(phi, [m.entries[0][0] for m in mats]) if k else phi(
            Chain.from_entries([WeylPoly.constant(n, 1)], 1, WeylAlgebra(n)))
    else:
        lhs = ev1(phi, mats) if k else phi(
            Chain.from_entries([MatrixElement.identity(n, r)], 1, MatrixWeylAlgebra(n, r)))
    rhs = chern_weil_chi(ahatch(max(k, 1)), k, mats, r=r, normalized=normalized)
    if lhs == rhs and lhs != 0:
        sign = 1
    elif lhs == -rhs and lhs != 0:
        sign = -1
    elif lhs == 0 and rhs == 0:
        sign = 0
    else:
        sign = None
    return {"n": n, "r": r, "k": k, "tuple": [str(v) for v in tuple_],
            "lhs": lhs, "rhs": rhs, "sign": sign,
            "equal_up_to_sign": sign is not None}
