"""Exact scalar arithmetic: rationals, Bernoulli numbers, Grassmann scalars.

Rational coefficients are stdlib ``fractions.Fraction`` values, which already
guarantee the canonical form we need (lowest terms, positive denominator,
zero is 0/1).  This module adds the two things the rest of the package needs
on top of that: Bernoulli numbers in the x/(e^x - 1) convention, and
``GrassmannScalar``, a finite sum of rational multiples of products of
anticommuting generators.

Half-integer generator labels are stored doubled (a_{1/2} has label 1,
a_{-3/2} has label -3) so that all index arithmetic stays integral.
"""

from __future__ import annotations

import threading
from fractions import Fraction

Rational = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def half_str(doubled: int) -> str:
    """Render a doubled index: 4 -> "2", -3 -> "-3/2"."""
    if doubled % 2 == 0:
        return str(doubled // 2)
    return "%d/2" % doubled


# ---------------------------------------------------------------------------
# Bernoulli numbers
# ---------------------------------------------------------------------------

_bernoulli_lock = threading.Lock()
_bernoulli_table: list[Fraction] = [Fraction(1)]


def bernoulli(k: int) -> Fraction:
    """k-th Bernoulli number for the convention x/(e^x - 1) = sum B_k x^k/k!.

    In this convention B_1 = -1/2.  Values are memoized in a growable table;
    reads never see a partially built entry (the table is append-only under a
    lock, and entries are immutable).
    """
    if k < 0:
        raise ValueError("Bernoulli index must be nonnegative, got %r" % (k,))
    if k >= len(_bernoulli_table):
        with _bernoulli_lock:
            for n in range(len(_bernoulli_table), k + 1):
                _bernoulli_table.append(_bernoulli_at(n))
    return _bernoulli_table[k]


def _bernoulli_at(n: int) -> Fraction:
    # Akiyama-Tanigawa transform, exact.  The plain transform produces the
    # B_1 = +1/2 convention; flipping the sign at index 1 converts (all other
    # odd entries vanish).
    row = [Fraction(1, m + 1) for m in range(n + 1)]
    for j in range(1, n + 1):
        row = [(m + 1) * (row[m] - row[m + 1]) for m in range(n + 1 - j)]
    return -row[0] if n == 1 else row[0]


# ---------------------------------------------------------------------------
# Grassmann scalars
# ---------------------------------------------------------------------------


def _merge_generators(s: tuple, t: tuple):
    """Merge two strictly increasing generator tuples.

    Returns (merged, sign) where sign counts the transpositions needed to
    interleave t into s, or (None, 0) when a generator repeats (the product
    is zero).
    """
    if not s:
        return t, 1
    if not t:
        return s, 1
    merged = []
    sign = 1
    i = j = 0
    ls = len(s)
    while i < ls and j < len(t):
        a, b = s[i], t[j]
        if a == b:
            return None, 0
        if a < b:
            merged.append(a)
            i += 1
        else:
            # b jumps over the ls - i remaining generators of s
            if (ls - i) & 1:
                sign = -sign
            merged.append(b)
            j += 1
    merged.extend(s[i:])
    merged.extend(t[j:])
    return tuple(merged), sign


class GrassmannScalar:
    """Element of the rational exterior algebra on generators a_r.

    ``terms`` maps a strictly increasing tuple of doubled generator labels to
    a nonzero Fraction; the empty tuple is the unit.  Instances are immutable
    and safe to share.  Mixed arithmetic with ``Fraction``/``int`` promotes
    the plain number to a multiple of the unit.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for key, coeff in terms.items():
                key = tuple(key)
                if any(key[i] >= key[i + 1] for i in range(len(key) - 1)):
                    raise ValueError("generator set must be strictly increasing: %r" % (key,))
                coeff = Fraction(coeff)
                if coeff:
                    clean[key] = clean.get(key, ZERO) + coeff
            for key in [k for k, v in clean.items() if not v]:
                del clean[key]
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("GrassmannScalar is immutable")

    # -- constructors

    @classmethod
    def from_rational(cls, q) -> "GrassmannScalar":
        return cls({(): Fraction(q)})

    @classmethod
    def generator(cls, label: int) -> "GrassmannScalar":
        """The generator a_{label/2} (labels are doubled half-integers)."""
        return cls({(int(label),): ONE})

    @classmethod
    def zero(cls) -> "GrassmannScalar":
        return cls()

    # -- structure

    def __bool__(self):
        return bool(self.terms)

    def parity(self) -> int:
        """0 or 1 for homogeneous elements; raises on mixed parity."""
        if not self.terms:
            return 0
        parities = {len(k) & 1 for k in self.terms}
        if len(parities) > 1:
            raise ValueError("scalar has mixed parity: %s" % (self,))
        return parities.pop()

    def rational_part(self) -> Fraction:
        return self.terms.get((), ZERO)

    # -- ring operations

    @staticmethod
    def _coerce(other):
        if isinstance(other, GrassmannScalar):
            return other
        if isinstance(other, (int, Fraction)):
            return GrassmannScalar({(): Fraction(other)})
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for key, coeff in other.terms.items():
            acc = out.get(key, ZERO) + coeff
            if acc:
                out[key] = acc
            elif key in out:
                del out[key]
        return _raw_grassmann(out)

    __radd__ = __add__

    def __neg__(self):
        return _raw_grassmann({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            if not q:
                return GrassmannScalar()
            return _raw_grassmann({k: v * q for k, v in self.terms.items()})
        if not isinstance(other, GrassmannScalar):
            return NotImplemented
        out = {}
        for ks, vs in self.terms.items():
            for kt, vt in other.terms.items():
                merged, sign = _merge_generators(ks, kt)
                if merged is None:
                    continue
                acc = out.get(merged, ZERO) + sign * vs * vt
                if acc:
                    out[merged] = acc
                elif merged in out:
                    del out[merged]
        return _raw_grassmann(out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.__mul__(other)
        return NotImplemented

    # -- comparison / hashing

    def __eq__(self, other):
        if isinstance(other, GrassmannScalar):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            if not self.terms:
                return Fraction(other) == 0
            return set(self.terms) == {()} and self.terms[()] == other
        return NotImplemented

    def __hash__(self):
        if not self.terms:
            return hash(ZERO)
        if set(self.terms) == {()}:
            return hash(self.terms[()])
        return hash(tuple(sorted(self.terms.items())))

    def __repr__(self):
        if not self.terms:
            return "0"
        chunks = []
        for key in sorted(self.terms, key=lambda k: (len(k), k)):
            coeff = self.terms[key]
            mono = "*".join("a_%s" % half_str(g) for g in key)
            if not key:
                chunks.append(str(coeff))
            elif coeff == 1:
                chunks.append(mono)
            elif coeff == -1:
                chunks.append("-" + mono)
            else:
                chunks.append("%s*%s" % (coeff, mono))
        out = chunks[0]
        for c in chunks[1:]:
            out += c if c.startswith("-") else "+" + c
        return out


def _raw_grassmann(terms: dict) -> GrassmannScalar:
    # internal: terms already canonical (nonzero values, sorted keys)
    g = object.__new__(GrassmannScalar)
    object.__setattr__(g, "terms", terms)
    return g


def parity_of(x) -> int:
    """Parity of a scalar coefficient: rationals are even."""
    if isinstance(x, GrassmannScalar):
        return x.parity()
    return 0


def scalar_is_zero(x) -> bool:
    return not x
