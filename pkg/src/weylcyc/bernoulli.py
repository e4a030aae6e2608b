"""Bernoulli numbers and functions, and exact integration over simplices,
ordering chambers and cubes.

Integration variables are ``u_1..u_k`` (0-based slots ``0..k-1`` of a
:class:`UPoly`).  A point ``u_0 = 0`` is always available and sits below
every other variable.  The periodic function ``b1(x) = x - floor(x) - 1/2``
turns into a plain polynomial on every chamber.
"""

from bisect import bisect_right
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import factorial, floor

from .config import CAPS
from .errors import CapExceeded
from .weyl import Poly


class UPoly(Poly):
    """Polynomial in the integration variables ``u_1..u_k``."""

    __slots__ = ()

    @classmethod
    def u(cls, k, i):
        """The variable ``u_i`` (1-based) among ``k`` variables."""
        return cls.variable(k, i - 1)


# -- Bernoulli numbers and polynomials ------------------------------------

def _integrate_coeffs(c):
    return [Fraction(0)] + [a / (i + 1) for i, a in enumerate(c)]


def _mean(c):
    return sum((a / (i + 1) for i, a in enumerate(c)), Fraction(0))


@lru_cache(maxsize=None)
def _bernoulli_coeffs(j):
    """Coefficients (low to high) of B_j(x), by integrating up from B_0 = 1."""
    if j == 0:
        return (Fraction(1),)
    prev = _bernoulli_coeffs(j - 1)
    c = [j * a for a in _integrate_coeffs(list(prev))]
    c[0] -= _mean(c)
    return tuple(c)


def bernoulli_numbers(N):
    """``[B_0, ..., B_N]`` with ``B_1 = -1/2``."""
    if N < 0:
        raise ValueError("N must be nonnegative")
    return [_bernoulli_coeffs(j)[0] for j in range(N + 1)]


def bernoulli_poly(j):
    """``B_j(u)`` as a one-variable :class:`UPoly`."""
    if j < 0:
        raise ValueError("j must be nonnegative")
    return UPoly(1, {(i,): a for i, a in enumerate(_bernoulli_coeffs(j))})


def cycle_weight_formula(l):
    """The closed form ``(-1)^l B_l / l!`` that the cycle integral is compared with."""
    return (-1) ** l * bernoulli_numbers(l)[l] / factorial(l)


# -- simplex integration ---------------------------------------------------

def _simplex_monomial(exp):
    # integrate u_1 from 0 to u_2, then u_2 from 0 to u_3, ..., u_k from 0 to 1
    carry = 0
    value = Fraction(1)
    for e in exp:
        carry += e + 1
        value /= carry
    return value


def simplex_integrate(f, k=None):
    """Integral of ``f`` over ``{0 < u_1 < ... < u_k < 1}``.

    ``f`` may use fewer than ``k`` variables; the missing ones are the last.
    """
    if k is None:
        k = f.nvars
    if f.nvars > k:
        raise ValueError(f"integrand has {f.nvars} variables but k={k}")
    pad = (0,) * (k - f.nvars)
    total = Fraction(0)
    for exp, c in f.items():
        total += c * _simplex_monomial(exp + pad)
    return total


# -- chambers ----------------------------------------------------------------

class Region:
    """Ordering chamber ``0 = u_0 < u_{order[0]} < ... < u_{order[-1]} < 1``.

    ``order`` is a permutation of ``1..k``.
    """

    __slots__ = ("order", "position")

    def __init__(self, order):
        order = tuple(int(i) for i in order)
        if sorted(order) != list(range(1, len(order) + 1)):
            raise ValueError(f"region order {order} is not a permutation of 1..{len(order)}")
        self.order = order
        pos = [0] * (len(order) + 1)
        for p, i in enumerate(order):
            pos[i] = p + 1
        self.position = tuple(pos)

    @property
    def k(self):
        return len(self.order)

    @classmethod
    def standard(cls, k):
        return cls(range(1, k + 1))

    @classmethod
    def from_permutation(cls, sigma):
        """The chamber ``sigma(Delta)``: ``u_{sigma^{-1}(1)} < u_{sigma^{-1}(2)} < ...``.

        ``sigma`` maps ``i -> sigma[i-1]`` on ``1..k``.
        """
        k = len(sigma)
        inv = [0] * k
        for i, s in enumerate(sigma):
            inv[s - 1] = i + 1
        return cls(inv)

    def less(self, i, j):
        return self.position[i] < self.position[j]

    def __eq__(self, other):
        return isinstance(other, Region) and self.order == other.order

    def __hash__(self):
        return hash(self.order)

    def __repr__(self):
        return "Region(0 < " + " < ".join(f"u{i}" for i in self.order) + " < 1)"


def _b1_on_chamber(i, j, region, k):
    """``b1(u_j - u_i)`` as a polynomial in the sorted variables ``v_1..v_k``."""
    if i == j:
        raise ValueError("b1 factor with coinciding endpoints")
    shift = Fraction(-1, 2) if region.less(i, j) else Fraction(1, 2)
    terms = {(0,) * k: shift}
    for idx, sign in ((j, 1), (i, -1)):
        p = region.position[idx]
        if p:
            e = [0] * k
            e[p - 1] = 1
            e = tuple(e)
            terms[e] = terms.get(e, 0) + sign
    return UPoly(k, terms)


def region_integrate(factors, extra=None, region=None):
    """Integral over ``region`` of ``prod b1(u_j - u_i)^power`` times ``extra``.

    ``factors`` is a list of ``(i, j, power)`` with indices in ``0..k``
    (``0`` is the pinned point ``u_0 = 0``); ``extra`` is a :class:`UPoly`
    in ``u_1..u_k``.
    """
    if region is None:
        k = max((max(i, j) for i, j, _ in factors), default=extra.nvars if extra is not None else 0)
        region = Region.standard(k)
    k = region.k
    for i, j, power in factors:
        if not (0 <= i <= k and 0 <= j <= k) or power < 0:
            raise ValueError(f"malformed factor {(i, j, power)} for a region with k={k}")
    f = UPoly.constant(k, 1)
    for i, j, power in factors:
        if power:
            f = f * _b1_on_chamber(i, j, region, k) ** power
    if extra is not None:
        if extra.nvars > k:
            raise ValueError("extra integrand uses more variables than the region")
        images = [UPoly.variable(k, region.position[i + 1] - 1) for i in range(extra.nvars)]
        f = f * extra.substitute(images)
    return simplex_integrate(f, k)


def cube_integrate(factors, k, extra=None):
    """Integral over ``[0,1]^k`` as the sum over all ``k!`` ordering chambers."""
    if k > CAPS.chambers:
        raise CapExceeded(f"cube integral over {k} variables exceeds chamber cap {CAPS.chambers}")
    return sum((region_integrate(factors, extra, Region(order))
                for order in permutations(range(1, k + 1))), Fraction(0))


def cycle_integral(l):
    """``int_{[0,1]^l} b1(u_1-u_2) b1(u_2-u_3) ... b1(u_l-u_1)``."""
    if l < 1:
        raise ValueError("cycle length must be positive")
    if l == 1:
        return Fraction(-1, 2)  # b1(0) under the convention b1 = x - floor(x) - 1/2
    factors = [(i % l + 1, i, 1) for i in range(1, l + 1)]
    return cube_integrate(factors, l)


# -- piecewise polynomials on the circle --------------------------------------

def _trim(c):
    c = list(c)
    while c and not c[-1]:
        c.pop()
    return tuple(Fraction(a) for a in c)


def _peval(c, x):
    v = Fraction(0)
    for a in reversed(c):
        v = v * x + a
    return v


class PiecewisePoly:
    """1-periodic function, polynomial on each ``[t_i, t_{i+1})``.

    ``breakpoints`` is ``0 = t_0 < ... < t_m = 1`` and ``pieces`` holds ``m``
    coefficient tuples (constant term first).  Values at a breakpoint are
    taken from the piece on its right.
    """

    __slots__ = ("breakpoints", "pieces")

    def __init__(self, breakpoints, pieces):
        bps = tuple(Fraction(t) for t in breakpoints)
        if len(bps) < 2 or bps[0] != 0 or bps[-1] != 1 or any(a >= b for a, b in zip(bps, bps[1:])):
            raise ValueError("breakpoints must increase strictly from 0 to 1")
        if len(pieces) != len(bps) - 1:
            raise ValueError("need one piece per interval")
        self.breakpoints = bps
        self.pieces = tuple(_trim(p) for p in pieces)

    @classmethod
    def polynomial(cls, coeffs):
        """Periodic extension of a polynomial restricted to ``[0, 1)``."""
        return cls((0, 1), [coeffs])

    @classmethod
    def constant(cls, c):
        return cls.polynomial([c])

    @classmethod
    def bernoulli(cls, j):
        """``b_j``: the periodic extension of ``B_j`` on ``[0,1)``."""
        return cls.polynomial(_bernoulli_coeffs(j))

    def _locate(self, x):
        x = Fraction(x)
        x -= floor(x)
        return bisect_right(self.breakpoints, x) - 1, x

    def __call__(self, x):
        i, x = self._locate(x)
        return _peval(self.pieces[i], x)

    def canonical(self):
        """Merge neighbouring intervals that carry the same polynomial."""
        bps, pieces = [self.breakpoints[0]], []
        for t, p in zip(self.breakpoints[1:], self.pieces):
            if pieces and pieces[-1] == p:
                bps[-1] = t
            else:
                pieces.append(p)
                bps.append(t)
        return PiecewisePoly(bps, pieces)

    def refine(self, points):
        bps = sorted(set(self.breakpoints) | {Fraction(t) for t in points})
        pieces = []
        for a in bps[:-1]:
            i, _ = self._locate(a)
            pieces.append(self.pieces[i])
        return PiecewisePoly(bps, pieces)

    def _binary(self, other, op):
        pts = set(self.breakpoints) | set(other.breakpoints)
        a, b = self.refine(pts), other.refine(pts)
        return PiecewisePoly(a.breakpoints, [op(x, y) for x, y in zip(a.pieces, b.pieces)]).canonical()

    def __add__(self, other):
        def add(x, y):
            m = max(len(x), len(y))
            return [(x[i] if i < len(x) else 0) + (y[i] if i < len(y) else 0) for i in range(m)]
        return self._binary(other, add)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        c = Fraction(c)
        return PiecewisePoly(self.breakpoints, [[c * a for a in p] for p in self.pieces])

    def derivative(self):
        """Piecewise derivative (jumps are ignored)."""
        return PiecewisePoly(self.breakpoints,
                             [[i * a for i, a in enumerate(p)][1:] for p in self.pieces]).canonical()

    def integral(self):
        """``int_0^1 f``."""
        total = Fraction(0)
        for (a, b), p in zip(zip(self.breakpoints, self.breakpoints[1:]), self.pieces):
            anti = _integrate_coeffs(list(p))
            total += _peval(anti, b) - _peval(anti, a)
        return total

    def __eq__(self, other):
        if not isinstance(other, PiecewisePoly):
            return NotImplemented
        a, b = self.canonical(), other.canonical()
        return a.breakpoints == b.breakpoints and a.pieces == b.pieces

    def __hash__(self):
        c = self.canonical()
        return hash((c.breakpoints, c.pieces))

    def __repr__(self):
        parts = []
        for (a, b), p in zip(zip(self.breakpoints, self.breakpoints[1:]), self.pieces):
            poly = Poly(1, {(i,): x for i, x in enumerate(p)})
            parts.append(f"[{a}, {b}): {str(poly).replace('u1', 'x')}")
        return "PiecewisePoly(" + "; ".join(parts) + ")"


def _piece_poly2(coeffs, t_coef, s_coef, const):
    """``P(t_coef*t + s_coef*s + const)`` as a polynomial in ``(t, s)``."""
    arg = Poly(2, {(1, 0): t_coef, (0, 1): s_coef, (0, 0): const})
    out = Poly(2)
    power = Poly.constant(2, 1)
    for a in coeffs:
        out = out + power.scale(a)
        power = power * arg
    return out


def _antiderivative_s(f):
    return Poly(2, {(a, b + 1): c / (b + 1) for (a, b), c in f.items()})


def circle_convolve(f, g):
    """``(f * g)(t) = int_0^1 f(t - s) g(s) ds``, computed chamberwise.

    On each interval between the points ``x_i + y_j mod 1`` the ordering of
    the ``s``-breakpoints (``y_j`` and ``t - x_i mod 1``) is fixed, so the
    integral is a polynomial in ``t`` there.
    """
    out_pts = sorted({(x + y) % 1 for x in f.breakpoints[:-1] for y in g.breakpoints[:-1]} | {Fraction(0), Fraction(1)})
    pieces = []
    for lo, hi in zip(out_pts, out_pts[1:]):
        tm = (lo + hi) / 2
        # s-breakpoints as (t coefficient, constant), valid for t in (lo, hi)
        cuts = {(0, Fraction(0)), (0, Fraction(1))}
        for y in g.breakpoints[1:-1]:
            cuts.add((0, y))
        for x in f.breakpoints[:-1]:
            shift = floor(tm - x)
            val = tm - x - shift
            if 0 < val < 1:
                cuts.add((1, -x - shift))
        cuts = sorted(cuts, key=lambda c: c[0] * tm + c[1])
        total = Poly(2)
        for (ta, ca), (tb, cb) in zip(cuts, cuts[1:]):
            sa, sb = ta * tm + ca, tb * tm + cb
            if sa == sb:
                continue
            sm = (sa + sb) / 2
            fi, _ = f._locate(tm - sm)
            wrap = -floor(tm - sm)
            gj, _ = g._locate(sm)
            integrand = (_piece_poly2(f.pieces[fi], 1, -1, wrap)
                         * _piece_poly2(g.pieces[gj], 0, 1, 0))
            anti = _antiderivative_s(integrand)
            t = Poly.variable(2, 0)
            upper = anti.substitute([t, t.scale(tb) + cb])
            lower = anti.substitute([t, t.scale(ta) + ca])
            total = total + upper - lower
        pieces.append([total.coefficient((i, 0)) for i in range(total.degree() + 1)])
    return PiecewisePoly(out_pts, pieces).canonical()


def convolution_power(f, j):
    """``f^{*j}`` for ``j >= 1``."""
    if j < 1:
        raise ValueError("convolution power needs j >= 1")
    out = f
    for _ in range(j - 1):
        out = circle_convolve(out, f)
    return out
