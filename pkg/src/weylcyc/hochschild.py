"""Normalized Hochschild chains and the operators d, B, iota, L acting on
cochains by precomposition with their chain-level duals.

Chains are expanded multilinearly into words of basis *letters*: an
exponent tuple for the scalar Weyl algebra, or ``(exponent, i, j)`` for a
Weyl polynomial monomial times the matrix unit ``E_ij``.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product

from .config import CAPS
from .errors import CapExceeded, DegreeError, DimensionError
from .weyl import MatrixElement, WeylPoly, as_rational, star_monomials


def perm_sign(perm):
    """Sign of a permutation given as a sequence of distinct comparable items."""
    perm = list(perm)
    sign = 1
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                sign = -sign
    return sign


def _check_degree(poly):
    if poly.degree() > CAPS.degree:
        raise CapExceeded(f"chain entry of degree {poly.degree()} exceeds degree cap {CAPS.degree}")


def _accumulate(out, key, c):
    v = out.get(key, 0) + c
    if v:
        out[key] = v
    else:
        out.pop(key, None)


@dataclass(frozen=True)
class WeylAlgebra:
    """A_{2n}; letters are exponent tuples of length 2n."""

    n: int

    def mul(self, a, b):
        return star_monomials(a, b)

    def unit(self):
        return {(0,) * (2 * self.n): Fraction(1)}

    def is_degenerate(self, letter):
        return not any(letter)

    def letters(self, elem):
        if isinstance(elem, (int, Fraction)):
            elem = WeylPoly.constant(self.n, elem)
        if not isinstance(elem, WeylPoly):
            raise TypeError(f"expected a WeylPoly, got {type(elem).__name__}")
        if elem.n != self.n:
            raise DimensionError(f"element lives in A_{2 * elem.n}, expected A_{2 * self.n}")
        _check_degree(elem)
        return dict(elem.items())

    def element(self, letters):
        return WeylPoly(self.n, letters)

    def generator(self, kind, j):
        e = [0] * (2 * self.n)
        e[2 * (j - 1) + (kind == "q")] = 1
        return {tuple(e): Fraction(1)}

    def letter_degree(self, letter):
        return sum(letter)


@dataclass(frozen=True)
class MatrixWeylAlgebra:
    """A_{2n} (x) gl_r; letters are ``(exponent, i, j)`` with 0-based i, j.

    The unit is a sum of letters, so normalization cannot be read off a
    single letter; words are kept as they are and cochains are expected to
    vanish on the identity in slots >= 1.
    """

    n: int
    r: int

    def mul(self, a, b):
        ea, i, j = a
        eb, k, l = b
        if j != k:
            return {}
        return {(e, i, l): c for e, c in star_monomials(ea, eb).items()}

    def unit(self):
        zero = (0,) * (2 * self.n)
        return {(zero, i, i): Fraction(1) for i in range(self.r)}

    def is_degenerate(self, letter):
        return False

    def letters(self, elem):
        if isinstance(elem, WeylPoly):
            elem = MatrixElement.from_poly(elem, self.r)
        if not isinstance(elem, MatrixElement):
            raise TypeError(f"expected a MatrixElement, got {type(elem).__name__}")
        if (elem.n, elem.r) != (self.n, self.r):
            raise DimensionError(f"element has (n={elem.n}, r={elem.r}), expected (n={self.n}, r={self.r})")
        out = {}
        for i, row in enumerate(elem.entries):
            for j, poly in enumerate(row):
                _check_degree(poly)
                for e, c in poly.items():
                    out[(e, i, j)] = c
        return out

    def element(self, letters):
        rows = [[{} for _ in range(self.r)] for _ in range(self.r)]
        for (e, i, j), c in letters.items():
            rows[i][j][e] = rows[i][j].get(e, 0) + c
        return MatrixElement([[WeylPoly(self.n, t) for t in row] for row in rows])

    def generator(self, kind, j):
        e = [0] * (2 * self.n)
        e[2 * (j - 1) + (kind == "q")] = 1
        return {(tuple(e), i, i): Fraction(1) for i in range(self.r)}

    def letter_degree(self, letter):
        return sum(letter[0])


def algebra_for(elem):
    if isinstance(elem, MatrixElement):
        return MatrixWeylAlgebra(elem.n, elem.r)
    if isinstance(elem, WeylPoly):
        return WeylAlgebra(elem.n)
    raise TypeError(f"no algebra for {type(elem).__name__}")


def _letter_dict(algebra, elem):
    if isinstance(elem, dict):
        return elem
    return algebra.letters(elem)


class Chain:
    """Finite rational combination of normalized words of one common length."""

    __slots__ = ("algebra", "terms", "length")

    def __init__(self, algebra, terms=None, length=None):
        self.algebra = algebra
        clean = {}
        for word, c in (terms or {}).items():
            word = tuple(word)
            if length is None:
                length = len(word)
            elif len(word) != length:
                raise DegreeError(f"words of lengths {length} and {len(word)} in one chain")
            if any(algebra.is_degenerate(x) for x in word[1:]):
                continue
            c = as_rational(c)
            if c:
                _accumulate(clean, word, c)
        self.terms = clean
        self.length = length

    @classmethod
    def from_entries(cls, entries, coeff=1, algebra=None):
        """Multilinear expansion of the word ``a_0 (x) a_1 (x) ... (x) a_k``.

        Entries may be :class:`WeylPoly`, :class:`MatrixElement` or letter
        dicts (when ``algebra`` is given).
        """
        if not entries:
            raise ValueError("a chain word needs at least one entry")
        if algebra is None:
            algebra = algebra_for(entries[0])
        parts = [_letter_dict(algebra, e) for e in entries]
        coeff = as_rational(coeff)
        terms = {}
        for combo in product(*[list(p.items()) for p in parts]):
            c = coeff
            for _, x in combo:
                c *= x
            _accumulate(terms, tuple(letter for letter, _ in combo), c)
        return cls(algebra, terms, len(entries))

    @classmethod
    def from_terms(cls, terms, algebra=None):
        """Sum of ``coeff * word`` for ``(coeff, [entries...])`` pairs."""
        out = None
        for c, entries in terms:
            ch = cls.from_entries(entries, c, algebra)
            out = ch if out is None else out + ch
        return out

    @property
    def degree(self):
        return None if self.length is None else self.length - 1

    def __add__(self, other):
        if self.algebra != other.algebra:
            raise DimensionError("chains over different algebras")
        length = self.length if self.length is not None else other.length
        if other.length is not None and length != other.length:
            raise DegreeError(f"cannot add chains of lengths {self.length} and {other.length}")
        terms = dict(self.terms)
        for w, c in other.terms.items():
            _accumulate(terms, w, c)
        return Chain(self.algebra, terms, length)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        c = as_rational(c)
        return Chain(self.algebra, {w: c * v for w, v in self.terms.items()}, self.length)

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, Chain) and self.algebra == other.algebra and self.terms == other.terms

    def __hash__(self):
        return hash((self.algebra, frozenset(self.terms.items())))

    def words(self):
        """``[(coeff, [entries...])]`` with entries as algebra elements."""
        return [(c, [self.algebra.element({x: Fraction(1)}) for x in w]) for w, c in self.terms.items()]

    def __repr__(self):
        parts = []
        for c, entries in self.words():
            parts.append(f"{c} * [" + "; ".join(str(e) if isinstance(e, WeylPoly) else repr(e) for e in entries) + "]")
        return "Chain(" + (" + ".join(parts) if parts else "0") + ")"


def normalize(entries, algebra=None):
    """Chain of the word ``entries``; constants in slots >= 1 kill the word."""
    return Chain.from_entries(entries, 1, algebra)


def _map_words(chain, word_fn, length):
    out = {}
    for w, c in chain.terms.items():
        for w2, c2 in word_fn(chain.algebra, w).items():
            _accumulate(out, w2, c * c2)
    return Chain(chain.algebra, out, length)


# -- word-level duals ---------------------------------------------------------

def _clean(algebra, terms):
    return {w: c for w, c in terms.items() if c and not any(algebra.is_degenerate(x) for x in w[1:])}


@lru_cache(maxsize=500_000)
def _boundary_word(algebra, w):
    out = {}
    k = len(w) - 2
    for i in range(k + 1):
        sign = -1 if i % 2 else 1
        for letter, c in algebra.mul(w[i], w[i + 1]).items():
            _accumulate(out, w[:i] + (letter,) + w[i + 2:], sign * c)
    sign = -1 if (k + 1) % 2 else 1
    for letter, c in algebra.mul(w[-1], w[0]).items():
        _accumulate(out, (letter,) + w[1:-1], sign * c)
    return _clean(algebra, out)


@lru_cache(maxsize=200_000)
def _bprime_word(algebra, w):
    out = {}
    n = len(w) - 1
    unit = algebra.unit()
    for j in range(n + 1):
        sign = -1 if (n * j) % 2 else 1
        rotated = w[j:] + w[:j]
        for one, c in unit.items():
            _accumulate(out, (one,) + rotated, sign * c)
    return _clean(algebra, out)


def _insert_word(algebra, w, a_items):
    out = {}
    for j in range(len(w)):
        sign = -1 if j % 2 else 1
        for letter, c in a_items:
            _accumulate(out, w[:j + 1] + (letter,) + w[j + 1:], sign * c)
    return _clean(algebra, out)


def cyclic_boundary_dual(chain):
    """Dual of the Hochschild differential: words of length k+2 -> k+1."""
    if chain.length is None:
        return chain
    if chain.length < 2:
        raise DegreeError("the boundary needs words of length at least 2")
    return _map_words(chain, _boundary_word, chain.length - 1)


def connes_Bprime(chain):
    """``sum_j (-1)^{nj} 1 (x) a_j (x) ... (x) a_{j-1}`` on words of length n+1."""
    if chain.length is None:
        return chain
    return _map_words(chain, _bprime_word, chain.length + 1)


def insert_dual(chain, a):
    """``sum_j (-1)^j a_0 (x) ... (x) a_j (x) a (x) a_{j+1} (x) ...``."""
    if chain.length is None:
        return chain
    items = tuple(_letter_dict(chain.algebra, a).items())
    return _map_words(chain, lambda alg, w: _insert_word(alg, w, items), chain.length + 1)


def wedge_embed(vs, head=None, algebra=None):
    """``head (x) v_1 ^ ... ^ v_k = sum_sigma sgn(sigma) head (x) v_sigma(1) (x) ...``.

    ``head`` defaults to the unit.
    """
    if algebra is None:
        if not vs and head is None:
            raise ValueError("cannot infer the algebra from an empty wedge without a head")
        algebra = algebra_for(head if head is not None else vs[0])
    head = algebra.unit() if head is None else _letter_dict(algebra, head)
    vs = [_letter_dict(algebra, v) for v in vs]
    out = Chain(algebra, {}, len(vs) + 1)
    for perm in permutations(range(len(vs))):
        word = [head] + [vs[i] for i in perm]
        out = out + Chain.from_entries(word, perm_sign(perm), algebra)
    return out


# -- cochains -----------------------------------------------------------------

class Cochain:
    """Linear functional on chains of one fixed degree.

    ``word_fn(word) -> Fraction`` gives the value on a single normalized
    word of length ``degree + 1``; values are memoized.
    """

    __slots__ = ("algebra", "degree", "_fn", "_memo", "name")

    def __init__(self, algebra, degree, word_fn, name="phi"):
        if degree < 0:
            raise DegreeError(f"cochain degree must be nonnegative, got {degree}")
        self.algebra = algebra
        self.degree = degree
        self._fn = word_fn
        self._memo = {}
        self.name = name

    def on_word(self, w):
        v = self._memo.get(w)
        if v is None:
            v = Fraction(self._fn(w))
            self._memo[w] = v
        return v

    def __call__(self, chain):
        if chain.algebra != self.algebra:
            raise DimensionError("chain and cochain live over different algebras")
        if chain.length is not None and chain.length != self.degree + 1:
            raise DegreeError(f"cochain of degree {self.degree} evaluated on a chain of degree {chain.degree}")
        return sum((c * self.on_word(w) for w, c in chain.terms.items()), Fraction(0))

    def evaluate(self, *entries):
        return self(Chain.from_entries(list(entries), 1, self.algebra))

    def __add__(self, other):
        _same(self, other)
        return Cochain(self.algebra, self.degree, lambda w: self.on_word(w) + other.on_word(w),
                       f"({self.name} + {other.name})")

    def __sub__(self, other):
        _same(self, other)
        return Cochain(self.algebra, self.degree, lambda w: self.on_word(w) - other.on_word(w),
                       f"({self.name} - {other.name})")

    def scale(self, c):
        c = as_rational(c)
        return Cochain(self.algebra, self.degree, lambda w: c * self.on_word(w), f"{c}*{self.name}")

    def __repr__(self):
        return f"Cochain({self.name}, degree={self.degree})"


def _same(a, b):
    if a.algebra != b.algebra or a.degree != b.degree:
        raise DegreeError(f"cannot combine cochains of degrees {a.degree} and {b.degree}")


def zero_cochain(algebra, degree):
    return Cochain(algebra, degree, lambda w: 0, "0")


def _precompose(phi, word_fn, degree, name):
    def fn(w):
        return sum((c * phi.on_word(w2) for w2, c in word_fn(w).items()), Fraction(0))
    return Cochain(phi.algebra, degree, fn, name)


def cochain_d(phi):
    alg = phi.algebra
    return _precompose(phi, lambda w: _boundary_word(alg, w), phi.degree + 1, f"d{phi.name}")


def cochain_B(phi):
    if phi.degree < 1:
        raise DegreeError("B lowers the degree; it is not defined on degree 0")
    alg = phi.algebra
    return _precompose(phi, lambda w: _bprime_word(alg, w), phi.degree - 1, f"B{phi.name}")


def cochain_iota(phi, a):
    if phi.degree < 1:
        raise DegreeError("iota lowers the degree; it is not defined on degree 0")
    alg = phi.algebra
    items = tuple(_letter_dict(alg, a).items())
    return _precompose(phi, lambda w: _insert_word(alg, w, items), phi.degree - 1, f"i({phi.name})")


def cochain_L(phi, a):
    """``L_a = d iota_a + iota_a d`` (only the second term in degree 0)."""
    out = cochain_iota(cochain_d(phi), a)
    if phi.degree >= 1:
        out = out + cochain_d(cochain_iota(phi, a))
    out.name = f"L({phi.name})"
    return out


def _omega_word(alg, w):
    out = {}
    for j in range(1, alg.n + 1):
        p = tuple(alg.generator("p", j).items())
        q = tuple(alg.generator("q", j).items())
        for w1, c1 in _insert_word(alg, w, p).items():
            for w2, c2 in _insert_word(alg, w1, q).items():
                _accumulate(out, w2, c1 * c2)
    return out


def cochain_iota_omega(phi):
    """``iota_omega = sum_j iota_{p_j} iota_{q_j}``."""
    if phi.degree < 2:
        raise DegreeError("iota_omega lowers the degree by 2; need degree >= 2")
    alg = phi.algebra
    return _precompose(phi, lambda w: _omega_word(alg, w), phi.degree - 2, f"iw({phi.name})")


def cochain_L_omega(phi):
    """``L_omega = d iota_omega - iota_omega d`` (only the second term in degree 1)."""
    if phi.degree < 1:
        raise DegreeError("L_omega lowers the degree; need degree >= 1")
    out = cochain_iota_omega(cochain_d(phi)).scale(-1)
    if phi.degree >= 2:
        out = cochain_d(cochain_iota_omega(phi)) + out
    out.name = f"Lw({phi.name})"
    return out
