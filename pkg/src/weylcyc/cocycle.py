"""The Hochschild cocycle tau_{2n}, its chamber variants, the lowered
components tau_{2k} and the matrix extension.

For a word of monomials ``a_0 (x) ... (x) a_{2n}`` the value is

    sum over the determinant permutations of sgn * sum over derivative plans
    of (plan weight) * (chamber integral of prod b1(u_j - u_i)^{m_ij})

times ``prod_s prod_v E_s[v]!``, where ``E_s`` is the exponent of ``a_s``.
Evaluation at zero keeps only the plans whose derivatives exhaust every
entry exactly, so the exponential series is a finite sum.  A plan is, for
each canonical pair ``(p_l, q_l)``, a table ``N[a][b]`` counting the
derivative pairs that hit ``p_l`` in slot ``a`` and ``q_l`` in slot
``b != a``; its weight is ``prod (+-1)^N / N!`` with ``+`` when ``a > b``.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import factorial

from .bernoulli import Region, cube_integrate, region_integrate
from .config import CAPS
from .errors import CapExceeded, DegreeError, DimensionError
from .hochschild import (Chain, Cochain, MatrixWeylAlgebra, WeylAlgebra,
                         cochain_iota_omega, perm_sign)
from .weyl import WeylPoly


def _pairs(K):
    return [(i, j) for i in range(K + 1) for j in range(i + 1, K + 1)]


@lru_cache(maxsize=None)
def _pair_index(K):
    return {pair: idx for idx, pair in enumerate(_pairs(K))}


@lru_cache(maxsize=100_000)
def _tables(K, p_demand, q_demand):
    """Plans for one canonical pair: ``{edge-count tuple: weight}``.

    ``p_demand[s]`` / ``q_demand[s]`` are the numbers of ``p_l`` / ``q_l``
    derivatives still owed to slot ``s``.
    """
    index = _pair_index(K)
    npairs = len(index)
    out = {}
    counter = [0]
    p_slots = [s for s in range(K + 1) if p_demand[s]]

    def rec(pos, q_left, counts, weight):
        if pos == len(p_slots):
            if not any(q_left):
                key = tuple(counts)
                out[key] = out.get(key, 0) + weight
                counter[0] += 1
                if counter[0] > CAPS.expansion:
                    raise CapExceeded(f"derivative plan enumeration exceeds expansion cap {CAPS.expansion}")
            return
        a = p_slots[pos]
        targets = [b for b in range(K + 1) if b != a and q_left[b]]

        def spread(t, need, q_left, counts, weight):
            if need == 0:
                rec(pos + 1, q_left, counts, weight)
                return
            if t == len(targets):
                return
            b = targets[t]
            edge = index[(min(a, b), max(a, b))]
            sign = 1 if a > b else -1
            for c in range(min(need, q_left[b]), -1, -1):
                if c:
                    ql = list(q_left)
                    ql[b] -= c
                    cs = list(counts)
                    cs[edge] += c
                    w = weight * Fraction(sign ** c, factorial(c))
                    spread(t + 1, need - c, tuple(ql), cs, w)
                else:
                    spread(t + 1, need, q_left, counts, weight)

        spread(0, p_demand[a], q_left, counts, weight)

    rec(0, tuple(q_demand), [0] * npairs, Fraction(1))
    return {k: v for k, v in out.items() if v}


def _combine(K, demands):
    """Convolve the per-pair plan tables; ``demands`` is a tuple over pairs
    of ``(p_demand, q_demand)``."""
    total = {(0,) * len(_pairs(K)): Fraction(1)}
    for p_dem, q_dem in demands:
        if sum(p_dem) != sum(q_dem):
            return {}
        if not any(p_dem):
            continue
        tab = _tables(K, p_dem, q_dem)
        nxt = {}
        for m1, w1 in total.items():
            for m2, w2 in tab.items():
                key = tuple(x + y for x, y in zip(m1, m2))
                nxt[key] = nxt.get(key, 0) + w1 * w2
        total = {k: v for k, v in nxt.items() if v}
        if len(total) > CAPS.expansion:
            raise CapExceeded(f"plan combination exceeds expansion cap {CAPS.expansion}")
    return total


def _factors(K, m):
    return [(i, j, c) for (i, j), c in zip(_pairs(K), m) if c]


@lru_cache(maxsize=200_000)
def chamber_integral(K, m, order):
    """``int over the chamber of prod b1(u_j - u_i)^{m_ij}`` (pairs i < j)."""
    return region_integrate(_factors(K, m), None, Region(order))


@lru_cache(maxsize=50_000)
def cube_weight(K, m):
    return cube_integrate(_factors(K, m), K)


def _exp_factorials(word):
    out = 1
    for e in word:
        for x in e:
            out *= factorial(x)
    return out


def _demands(n, word):
    K = len(word) - 1
    return tuple((tuple(word[s][2 * l] for s in range(K + 1)),
                  tuple(word[s][2 * l + 1] for s in range(K + 1))) for l in range(n))


def _pi_assignments(word):
    """Yield ``(sign, reduced word)`` for every determinant term that does
    not kill an entry: slot ``i >= 1`` loses one power of ``y_{sigma(i)}``."""
    K = len(word) - 1
    dim = len(word[0])
    used = [False] * dim
    current = [list(e) for e in word]
    chosen = []

    def rec(i):
        if i > K:
            yield perm_sign(chosen), tuple(tuple(e) for e in current)
            return
        for v in range(dim):
            if not used[v] and current[i][v]:
                used[v] = True
                current[i][v] -= 1
                chosen.append(v)
                yield from rec(i + 1)
                chosen.pop()
                current[i][v] += 1
                used[v] = False

    yield from rec(1)


def _balanced(n, word):
    for l in range(n):
        if sum(e[2 * l] for e in word) != sum(e[2 * l + 1] for e in word):
            return False
    return True


def tau_word(n, word, order=None):
    """Value of ``tau_{2n}`` (or of its chamber variant) on a monomial word.

    ``word`` is a tuple of ``2n+1`` exponent tuples; ``order`` selects the
    chamber ``0 < u_{order[0]} < ...`` (default: the standard simplex).
    """
    K = 2 * n
    if len(word) != K + 1:
        raise DegreeError(f"tau_{K} needs words of length {K + 1}, got {len(word)}")
    if order is None:
        order = tuple(range(1, K + 1))
    if any(not any(e) for e in word[1:]) or not _balanced(n, word):
        return Fraction(0)
    total = Fraction(0)
    for sign, reduced in _pi_assignments(word):
        for m, w in _combine(K, _demands(n, reduced)).items():
            total += sign * w * chamber_integral(K, m, order)
    return total * _exp_factorials(word)


def count_plans(n, chain):
    """Number of (determinant term, derivative plan) pairs visited on ``chain``."""
    K = 2 * n
    count = 0
    for w in chain.terms:
        word = w if not isinstance(w[0][0], tuple) else tuple(x[0] for x in w)
        if not _balanced(n, word):
            continue
        for _, reduced in _pi_assignments(word):
            count += len(_combine(K, _demands(n, reduced)))
    return count


# -- cochains -------------------------------------------------------------------

def tau_cochain(n):
    """``tau_{2n}`` as a degree-2n cochain on A_{2n}."""
    return Cochain(WeylAlgebra(n), 2 * n, lambda w: tau_word(n, w), f"tau{2 * n}")


def _sigma_order(sigma):
    return Region.from_permutation(sigma).order


def tau_sigma_cochain(n, sigma):
    """The variant integrated over the chamber ``sigma(Delta)`` with periodic b1.

    ``sigma`` is a permutation of ``1..2n`` given as the sequence of images.
    """
    if sorted(sigma) != list(range(1, 2 * n + 1)):
        raise ValueError(f"{sigma} is not a permutation of 1..{2 * n}")
    order = _sigma_order(tuple(sigma))
    return Cochain(WeylAlgebra(n), 2 * n, lambda w: tau_word(n, w, order), f"tau{2 * n}^{tuple(sigma)}")


def _as_chain(n, c, algebra=None):
    if isinstance(c, Chain):
        return c
    return Chain.from_entries(list(c), 1, algebra or WeylAlgebra(n))


def tau_eval(n, c):
    """``tau_{2n}`` on a chain (or on a list of entries)."""
    return tau_cochain_cached(n)(_as_chain(n, c))


def tau_sigma_eval(n, sigma, c):
    return tau_sigma_cochain(n, sigma)(_as_chain(n, c))


@lru_cache(maxsize=None)
def tau_cochain_cached(n):
    return tau_cochain(n)


def matrix_cochain(scalar, r):
    """Extend a scalar cochain to A_{2n} (x) gl_r through cyclic index chains
    ``(A_0)_{i0 i1} (x) (A_1)_{i1 i2} (x) ... (x) (A_k)_{ik i0}``."""
    n = scalar.algebra.n
    alg = MatrixWeylAlgebra(n, r)

    def fn(w):
        for s in range(len(w)):
            if w[s][2] != w[(s + 1) % len(w)][1]:
                return 0
        return scalar.on_word(tuple(x[0] for x in w))

    return Cochain(alg, scalar.degree, fn, f"{scalar.name}^r")


@lru_cache(maxsize=None)
def tau_matrix_cochain(n, r):
    return matrix_cochain(tau_cochain_cached(n), r)


def tau_matrix_eval(n, r, c):
    alg = MatrixWeylAlgebra(n, r)
    if not isinstance(c, Chain):
        c = Chain.from_entries(list(c), 1, alg)
    if c.algebra != alg:
        raise DimensionError(f"chain is over {c.algebra}, expected {alg}")
    return tau_matrix_cochain(n, r)(c)


@dataclass
class TauFamily:
    """Components ``tau_{2k} = (-iota_omega)^{n-k} tau_{2n} / (n-k)!``.

    The cyclic cocycle is ``sum_k u^{n-k} tau_{2k}`` (module element w = 1).
    """

    n: int
    r: int
    components: list

    def component(self, k):
        if not 0 <= k <= self.n:
            raise DegreeError(f"component index {k} outside 0..{self.n}")
        return self.components[k]

    def u_power(self, k):
        return self.n - k


@lru_cache(maxsize=None)
def tau_family_build(n, r=1, sign=-1):
    """Components ``tau_{2k} = (sign * iota_omega)^{n-k} tau_{2n} / (n-k)!``.

    ``sign = -1`` is the defining choice; ``sign = +1`` is the family for
    which ``d tau_{2k} + B tau_{2k+2} = 0`` holds with the operator
    conventions used here (see the README).
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    top = tau_cochain_cached(n) if r == 1 else tau_matrix_cochain(n, r)
    lowered = [top]
    for _ in range(n):
        lowered.append(cochain_iota_omega(lowered[-1]).scale(sign))
    comps = []
    for k in range(n + 1):
        steps = n - k
        c = lowered[steps].scale(Fraction(1, factorial(steps)))
        c.name = f"tau{2 * k}" + (f"^{r}" if r > 1 else "")
        comps.append(c)
    return TauFamily(n, r, comps)


# -- derivative plans, exposed for inspection -----------------------------------

@dataclass(frozen=True)
class DerivPlan:
    """One surviving term: the determinant choice (variable per slot, 1-based
    ``y`` indices, empty when no determinant is applied), the edge
    multiplicities ``{(i, j): m_ij}`` and the rational weight including the
    factorials of evaluation at zero."""

    word: tuple
    sigma: tuple
    edges: tuple
    weight: Fraction

    def integrand_factors(self):
        return [(i, j, m) for (i, j), m in self.edges]


def pi_apply(entries):
    """Determinant of partial derivatives applied to a word of length 2n+1.

    Returns ``[(coefficient, [entries...])]``; slot 0 is untouched.
    """
    n = entries[0].n
    if len(entries) != 2 * n + 1:
        raise DegreeError(f"the determinant needs a word of length {2 * n + 1}")
    out = {}
    for perm in permutations(range(2 * n)):
        sign = perm_sign(perm)
        new = [entries[0]] + [entries[i + 1].partial(perm[i]) for i in range(2 * n)]
        if any(e.is_zero() for e in new):
            continue
        key = tuple(new)
        out[key] = out.get(key, 0) + sign
    return [(c, list(k)) for k, c in out.items() if c]


def s_expand(entries):
    """Derivative plans of the exponential factor on a word (no determinant).

    Entries are expanded into monomials; each returned plan exhausts every
    entry's degree exactly.
    """
    n = entries[0].n
    K = len(entries) - 1
    chain = Chain.from_entries(list(entries), 1, WeylAlgebra(n))
    plans = []
    pairs = _pairs(K)
    for w, c in sorted(chain.terms.items()):
        if not _balanced(n, w):
            continue
        for m, wt in sorted(_combine(K, _demands(n, w)).items()):
            edges = tuple((pairs[i], x) for i, x in enumerate(m) if x)
            plans.append(DerivPlan(w, (), edges, c * wt * _exp_factorials(w)))
    return plans


def hm_word(word):
    """Cube-integrated value on a monomial word with no determinant."""
    n = len(word[0]) // 2
    K = len(word) - 1
    if not _balanced(n, word):
        return Fraction(0)
    total = Fraction(0)
    for m, w in _combine(K, _demands(n, word)).items():
        total += w * cube_weight(K, m)
    return total * _exp_factorials(word)


def hm_eval(args):
    """``mu int_{[0,1]^m} prod_{1<=i<j<=m} exp(b1(u_j-u_i) alpha_ji) (1 (x) a_1 (x) ... (x) a_m)``.

    ``args`` are :class:`WeylPoly` (quadratic in the intended use).
    """
    if not args:
        return Fraction(1)
    n = args[0].n
    one = WeylPoly.constant(n, 1)
    chain = Chain.from_entries([one] + list(args), 1, WeylAlgebra(n))
    return sum((c * hm_word(w) for w, c in chain.terms.items()), Fraction(0))
