"""Exact polynomials, the Moyal product and the sp/gl embeddings.

Coordinates on R^{2n} are ``y_1..y_{2n}`` with ``y_{2j-1} = p_j`` and
``y_{2j} = q_j``.  Internally exponent vectors are 0-based, so slot ``2j``
holds the power of ``p_{j+1}`` and slot ``2j+1`` the power of ``q_{j+1}``.

The star product is ``a * b = m o exp(alpha/2)(a (x) b)`` with
``alpha = sum_j (d_{p_j} (x) d_{q_j} - d_{q_j} (x) d_{p_j})``, so that
``[p_j, q_j] = 1``.
"""

from fractions import Fraction
from functools import lru_cache
from math import factorial

from .config import CAPS
from .errors import CapExceeded, DimensionError

Rational = Fraction


def as_rational(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot use {type(x).__name__} as an exact rational")


def fmt_rational(x):
    """``"p/q"`` string; integers keep the ``/1`` so the format is uniform."""
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def _falling(m, k):
    out = 1
    for i in range(k):
        out *= m - i
    return out


def _order_key(exp):
    return (-sum(exp), tuple(-e for e in exp))


class Poly:
    """Sparse multivariate polynomial with rational coefficients.

    ``terms`` maps exponent tuples to nonzero :class:`Fraction` values.
    Instances are treated as immutable.
    """

    __slots__ = ("nvars", "_terms", "_hash")
    _capped = False

    def __init__(self, nvars, terms=None):
        clean = {}
        if terms:
            for exp, c in terms.items():
                exp = tuple(int(e) for e in exp)
                if len(exp) != nvars:
                    raise DimensionError(f"exponent {exp} does not have length {nvars}")
                if any(e < 0 for e in exp):
                    raise ValueError(f"negative exponent in {exp}")
                c = as_rational(c)
                if c:
                    clean[exp] = clean.get(exp, 0) + c
                    if not clean[exp]:
                        del clean[exp]
        self.nvars = nvars
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, nvars, terms, like=None):
        obj = cls.__new__(cls)
        obj.nvars = nvars
        obj._terms = terms
        obj._hash = None
        if like is not None:
            obj._copy_extra(like)
        return obj

    def _copy_extra(self, other):
        pass

    def _new(self, terms):
        return type(self)._raw(self.nvars, terms, like=self)

    def _const(self, c):
        c = as_rational(c)
        return self._new({(0,) * self.nvars: c} if c else {})

    # -- constructors ---------------------------------------------------
    @classmethod
    def constant(cls, nvars, c):
        c = as_rational(c)
        return cls(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def variable(cls, nvars, index):
        """The coordinate function with 0-based ``index``."""
        if not 0 <= index < nvars:
            raise IndexError(f"variable index {index} out of range for {nvars} variables")
        e = [0] * nvars
        e[index] = 1
        return cls(nvars, {tuple(e): 1})

    # -- inspection -----------------------------------------------------
    @property
    def terms(self):
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self):
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def degree(self):
        """Total degree; ``-1`` for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def is_homogeneous(self, d):
        return bool(self._terms) and all(sum(e) == d for e in self._terms)

    def homogeneous_part(self, d):
        return self._new({e: c for e, c in self._terms.items() if sum(e) == d})

    def constant_term(self):
        return self._terms.get((0,) * self.nvars, Fraction(0))

    def coefficient(self, exp):
        return self._terms.get(tuple(exp), Fraction(0))

    def sorted_terms(self):
        return sorted(self._terms.items(), key=lambda t: _order_key(t[0]))

    # -- arithmetic -----------------------------------------------------
    def _check(self, other):
        if not isinstance(other, Poly):
            other = self._const(other)
        if other.nvars != self.nvars:
            raise DimensionError(f"dimension mismatch: {self.nvars} vs {other.nvars} variables")
        return other

    def __add__(self, other):
        other = self._check(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return self._new(out)

    __radd__ = __add__

    def __neg__(self):
        return self._new({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def scale(self, c):
        c = as_rational(c)
        if not c:
            return self._new({})
        return self._new({e: c * v for e, v in self._terms.items()})

    def __mul__(self, other):
        """Commutative product (use :meth:`WeylPoly.star` for the Moyal product)."""
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._check(other)
        if self._capped and self.degree() + other.degree() > CAPS.degree:
            raise CapExceeded(f"product degree exceeds degree cap {CAPS.degree}")
        out = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e, 0) + c1 * c2
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return self._new(out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative power")
        out = self._const(1)
        for _ in range(k):
            out = out * self
        return out

    def partial(self, index):
        """Partial derivative in the 0-based variable ``index``."""
        if not 0 <= index < self.nvars:
            raise IndexError(f"variable index {index} out of range for {self.nvars} variables")
        out = {}
        for e, c in self._terms.items():
            if e[index]:
                f = list(e)
                f[index] -= 1
                out[tuple(f)] = c * e[index]
        return self._new(out)

    def evaluate(self, point):
        point = [as_rational(x) for x in point]
        if len(point) != self.nvars:
            raise DimensionError("point has wrong length")
        total = Fraction(0)
        for e, c in self._terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v *= x ** k
            total += v
        return total

    def substitute(self, images):
        """Replace variable ``i`` by the polynomial ``images[i]``."""
        if len(images) != self.nvars:
            raise DimensionError("need one image per variable")
        if not images:
            return Poly.constant(0, self.constant_term())
        zero = images[0] * 0
        out = zero
        for e, c in self._terms.items():
            term = zero + c
            for img, k in zip(images, e):
                if k:
                    term = term * img ** k
            out = out + term
        return out

    # -- comparison -----------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.constant(self.nvars, other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    def _var_name(self, i):
        return f"u{i + 1}"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            factors = []
            for i, k in enumerate(e):
                if k == 1:
                    factors.append(self._var_name(i))
                elif k > 1:
                    factors.append(f"{self._var_name(i)}^{k}")
            mono = "*".join(factors)
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        head_sign, head = parts[0]
        out = ("-" if head_sign == "-" else "") + head
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"{type(self).__name__}({self})"


class WeylPoly(Poly):
    """Element of the Weyl algebra A_{2n}, stored as its Moyal symbol."""

    __slots__ = ()
    _capped = True

    def __init__(self, n, terms=None):
        if n < 1:
            raise ValueError("n must be positive")
        super().__init__(2 * n, terms)

    @property
    def n(self):
        return self.nvars // 2

    @classmethod
    def constant(cls, n, c):
        c = as_rational(c)
        return cls(n, {(0,) * (2 * n): c} if c else {})

    @classmethod
    def y(cls, n, index):
        """Coordinate ``y_index`` with the 1-based index of the text."""
        if not 1 <= index <= 2 * n:
            raise IndexError(f"y index {index} out of range 1..{2 * n}")
        e = [0] * (2 * n)
        e[index - 1] = 1
        return cls(n, {tuple(e): 1})

    @classmethod
    def p(cls, n, j):
        return cls.y(n, 2 * j - 1)

    @classmethod
    def q(cls, n, j):
        return cls.y(n, 2 * j)

    @classmethod
    def monomial(cls, exp, c=1):
        return cls(len(exp) // 2, {tuple(exp): c})

    def _var_name(self, i):
        return f"{'pq'[i % 2]}{i // 2 + 1}"

    def star(self, other):
        other = self._check(other)
        if self.degree() + other.degree() > CAPS.degree:
            raise CapExceeded(f"star product degree exceeds degree cap {CAPS.degree}")
        out = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                for e, c in star_monomials(e1, e2).items():
                    v = out.get(e, 0) + c1 * c2 * c
                    if v:
                        out[e] = v
                    else:
                        out.pop(e, None)
        return self._new(out)

    def bracket(self, other):
        other = self._check(other)
        return self.star(other) - other.star(self)


@lru_cache(maxsize=200_000)
def star_monomials(a, b):
    """Moyal product of the monomials with exponent tuples ``a`` and ``b``.

    Returns a dict exponent -> coefficient.  The exponential factorises
    over the canonical pairs (p_l, q_l); for each pair ``s`` derivatives
    d_p (x) d_q and ``t`` derivatives d_q (x) d_p are taken.
    """
    n = len(a) // 2
    per_pair = []
    for l in range(n):
        ap, aq, bp, bq = a[2 * l], a[2 * l + 1], b[2 * l], b[2 * l + 1]
        opts = []
        for s in range(min(ap, bq) + 1):
            for t in range(min(aq, bp) + 1):
                num = _falling(ap, s) * _falling(bq, s) * _falling(aq, t) * _falling(bp, t)
                c = Fraction((-1) ** t * num, 2 ** (s + t) * factorial(s) * factorial(t))
                opts.append((ap + bp - s - t, aq + bq - s - t, c))
        per_pair.append(opts)
    out = {(): Fraction(1)}
    for opts in per_pair:
        nxt = {}
        for e, c in out.items():
            for ep, eq, c2 in opts:
                key = e + (ep, eq)
                nxt[key] = nxt.get(key, 0) + c * c2
        out = nxt
    return {e: c for e, c in out.items() if c}


# -- named operations ---------------------------------------------------

def poly_arith(a, b, op):
    """``op`` in {"add", "sub", "mul", "scale"}; for "scale" ``b`` is a rational."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "scale":
        return a.scale(b)
    raise ValueError(f"unknown op {op!r}")


def partial_derivative(a, var_index):
    """Derivative with respect to ``y_{var_index}`` (1-based)."""
    if not 1 <= var_index <= a.nvars:
        raise IndexError(f"variable index {var_index} out of range 1..{a.nvars}")
    return a.partial(var_index - 1)


def eval_at_zero(a):
    return a.constant_term()


def moyal_product(a, b):
    return a.star(b)


def moyal_bracket(a, b):
    return a.bracket(b)


class SpElement:
    """Homogeneous quadratic polynomial (or zero), i.e. an element of sp_{2n}."""

    __slots__ = ("poly",)

    def __init__(self, poly):
        if not isinstance(poly, WeylPoly) or not (poly.is_zero() or poly.is_homogeneous(2)):
            raise ValueError(f"{poly} is not a homogeneous quadratic polynomial")
        self.poly = poly

    @property
    def n(self):
        return self.poly.n

    def __eq__(self, other):
        return isinstance(other, SpElement) and self.poly == other.poly

    def __hash__(self):
        return hash(self.poly)

    def __repr__(self):
        return f"SpElement({self.poly})"


def sp_basis(n):
    out = []
    for i in range(2 * n):
        for j in range(i, 2 * n):
            e = [0] * (2 * n)
            e[i] += 1
            e[j] += 1
            out.append(SpElement(WeylPoly(n, {tuple(e): 1})))
    return out


def quad_to_sp_matrix(h):
    """Matrix of ``y_k -> [h, y_k]`` in the basis ``y_1..y_{2n}``.

    Entry ``[l][k]`` is the coefficient of ``y_{l+1}`` in ``[h, y_{k+1}]``.
    """
    poly = h.poly if isinstance(h, SpElement) else h
    if not poly.is_zero() and not poly.is_homogeneous(2):
        raise ValueError(f"{poly} is not quadratic")
    n = poly.n
    dim = 2 * n
    mat = [[Fraction(0)] * dim for _ in range(dim)]
    for k in range(dim):
        img = poly.bracket(WeylPoly.y(n, k + 1))
        for e, c in img.items():
            if sum(e) != 1:
                raise ValueError("bracket of a quadratic with a linear form must be linear")
            mat[e.index(1)][k] = c
    return mat


def gl_embed(x, n):
    """``sum_ij x_ij p_i q_j`` for an n x n rational matrix ``x``."""
    if len(x) != n or any(len(row) != n for row in x):
        raise DimensionError(f"expected an {n}x{n} matrix")
    out = WeylPoly(n)
    for i in range(n):
        for j in range(n):
            if x[i][j]:
                out = out + (WeylPoly.p(n, i + 1) * WeylPoly.q(n, j + 1)).scale(as_rational(x[i][j]))
    return SpElement(out)


# -- small exact matrix helpers ----------------------------------------

def mat_mul(a, b):
    return [[sum((a[i][k] * b[k][j] for k in range(len(b))), Fraction(0))
             for j in range(len(b[0]))] for i in range(len(a))]


def mat_trace(a):
    return sum((a[i][i] for i in range(len(a))), Fraction(0))


def mat_power(a, k):
    out = identity_matrix(len(a))
    for _ in range(k):
        out = mat_mul(out, a)
    return out


def identity_matrix(r):
    return [[Fraction(int(i == j)) for j in range(r)] for i in range(r)]


def mat_commutator(a, b):
    ab, ba = mat_mul(a, b), mat_mul(b, a)
    return [[ab[i][j] - ba[i][j] for j in range(len(a))] for i in range(len(a))]


class MatrixElement:
    """r x r matrix with entries in A_{2n}; products use the Moyal product."""

    __slots__ = ("n", "r", "entries")

    def __init__(self, entries):
        rows = tuple(tuple(row) for row in entries)
        r = len(rows)
        if r < 1 or any(len(row) != r for row in rows):
            raise DimensionError("matrix must be square and non-empty")
        ns = {e.n for row in rows for e in row}
        if len(ns) != 1:
            raise DimensionError("all entries must share the same n")
        self.n = ns.pop()
        self.r = r
        self.entries = rows

    @classmethod
    def zero(cls, n, r):
        return cls([[WeylPoly(n)] * r for _ in range(r)])

    @classmethod
    def from_poly(cls, poly, r, matrix=None):
        """``poly (x) matrix``; ``matrix`` defaults to the identity."""
        if matrix is None:
            matrix = identity_matrix(r)
        return cls([[poly.scale(as_rational(matrix[i][j])) for j in range(r)] for i in range(r)])

    @classmethod
    def identity(cls, n, r):
        return cls.from_poly(WeylPoly.constant(n, 1), r)

    @classmethod
    def unit(cls, n, r, i, j, poly=None):
        """``poly (x) E_ij`` with 0-based ``i, j``."""
        poly = WeylPoly.constant(n, 1) if poly is None else poly
        rows = [[WeylPoly(n)] * r for _ in range(r)]
        rows[i][j] = poly
        return cls(rows)

    def _check(self, other):
        if not isinstance(other, MatrixElement):
            raise TypeError("expected a MatrixElement")
        if (self.n, self.r) != (other.n, other.r):
            raise DimensionError(f"size mismatch: (n={self.n}, r={self.r}) vs (n={other.n}, r={other.r})")

    def __add__(self, other):
        self._check(other)
        return MatrixElement([[a + b for a, b in zip(ra, rb)]
                              for ra, rb in zip(self.entries, other.entries)])

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        return MatrixElement([[a.scale(c) for a in row] for row in self.entries])

    def star(self, other):
        self._check(other)
        r = self.r
        zero = WeylPoly(self.n)
        rows = []
        for i in range(r):
            row = []
            for j in range(r):
                acc = zero
                for k in range(r):
                    a, b = self.entries[i][k], other.entries[k][j]
                    if a and b:
                        acc = acc + a.star(b)
                row.append(acc)
            rows.append(row)
        return MatrixElement(rows)

    def bracket(self, other):
        return self.star(other) - other.star(self)

    def trace(self):
        return sum((self.entries[i][i] for i in range(self.r)), WeylPoly(self.n))

    def __eq__(self, other):
        return isinstance(other, MatrixElement) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return "MatrixElement([" + "; ".join(", ".join(str(e) for e in row) for row in self.entries) + "])"


def mat_arith(a, b, op):
    """``op`` in {"add", "moyal_mul", "scale"}; for "scale" ``b`` is a rational."""
    if op == "add":
        return a + b
    if op == "moyal_mul":
        return a.star(b)
    if op == "scale":
        return a.scale(b)
    raise ValueError(f"unknown op {op!r}")


def symplectic_form(n):
    """``omega_ij`` with ``omega = sum_j dy_{2j-1} ^ dy_{2j}`` (0-based indices)."""
    om = [[Fraction(0)] * (2 * n) for _ in range(2 * n)]
    for j in range(n):
        om[2 * j][2 * j + 1] = Fraction(1)
        om[2 * j + 1][2 * j] = Fraction(-1)
    return om


def symplectic_form_inverse(n):
    """``omega^{lm}`` with ``sum_j omega_ij omega^{jk} = delta_i^k``."""
    om = [[Fraction(0)] * (2 * n) for _ in range(2 * n)]
    for j in range(n):
        om[2 * j][2 * j + 1] = Fraction(-1)
        om[2 * j + 1][2 * j] = Fraction(1)
    return om
