"""The Campbell-Baker-Hausdorff series as an evaluable bracket schema.

The series log(e^a e^b) is computed degree by degree in the truncated free
associative algebra on two letters, then each homogeneous component is turned
into an evaluable list of (coefficient, pattern) bracket terms by the Dynkin
idempotent: a word x1...xn with coefficient c contributes the right-nested
bracket [x1,[x2,[...,xn]...]] with coefficient c/n.  Because each homogeneous
component of the logarithm is a Lie element, re-expanding those brackets as
commutators reproduces the component exactly; the test suite audits this
degree by degree.

No free-Lie-basis reduction is performed: redundant bracket patterns are
harmless since evaluation is linear in the schema.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from math import factorial
from typing import NamedTuple

DEFAULT_MAX_DEGREE = 12


class AssocPoly:
    """Truncated polynomial in two noncommuting letters 'a' and 'b'.

    terms maps a word (str over "ab", "" is the unit) to a nonzero Fraction;
    words longer than ``bound`` are dropped on creation.
    """

    __slots__ = ("terms", "bound")

    def __init__(self, terms, bound: int):
        self.bound = bound
        self.terms = {w: c for w, c in terms.items() if c and len(w) <= bound}

    @classmethod
    def zero(cls, bound: int) -> "AssocPoly":
        return cls({}, bound)

    @classmethod
    def unit(cls, bound: int) -> "AssocPoly":
        return cls({"": Fraction(1)}, bound)

    @classmethod
    def letter(cls, x: str, bound: int) -> "AssocPoly":
        return cls({x: Fraction(1)}, bound)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, AssocPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        out = dict(self.terms)
        for w, c in other.terms.items():
            acc = out.get(w, 0) + c
            if acc:
                out[w] = acc
            elif w in out:
                del out[w]
        return AssocPoly(out, min(self.bound, other.bound))

    def __neg__(self):
        return AssocPoly({w: -c for w, c in self.terms.items()}, self.bound)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        bound = min(self.bound, other.bound)
        out = {}
        for w1, c1 in self.terms.items():
            if len(w1) > bound:
                continue
            for w2, c2 in other.terms.items():
                if len(w1) + len(w2) > bound:
                    continue
                w = w1 + w2
                acc = out.get(w, 0) + c1 * c2
                if acc:
                    out[w] = acc
                elif w in out:
                    del out[w]
        return AssocPoly(out, bound)

    def scale(self, q) -> "AssocPoly":
        q = Fraction(q)
        if not q:
            return AssocPoly.zero(self.bound)
        return AssocPoly({w: c * q for w, c in self.terms.items()}, self.bound)

    def homogeneous_part(self, degree: int) -> "AssocPoly":
        return AssocPoly({w: c for w, c in self.terms.items() if len(w) == degree}, self.bound)

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for w in sorted(self.terms, key=lambda s: (len(s), s)):
            bits.append("%s*%s" % (self.terms[w], w or "1"))
        return " + ".join(bits)


def exp_product(bound: int) -> AssocPoly:
    """e^a * e^b in the truncated free associative algebra."""
    terms = {}
    for i in range(bound + 1):
        for j in range(bound + 1 - i):
            terms["a" * i + "b" * j] = Fraction(1, factorial(i) * factorial(j))
    return AssocPoly(terms, bound)


def assoc_log_of_product(bound: int) -> AssocPoly:
    """log(e^a e^b) truncated at total degree ``bound``.

    Computed as log(1 + u) = sum_{k>=1} (-1)^{k+1} u^k / k with
    u = e^a e^b - 1, which has no constant term.
    """
    if bound < 1:
        raise ValueError("degree bound must be >= 1, got %r" % (bound,))
    u = exp_product(bound) - AssocPoly.unit(bound)
    acc = AssocPoly.zero(bound)
    power = AssocPoly.unit(bound)
    for k in range(1, bound + 1):
        power = power * u
        if not power:
            break
        acc = acc + power.scale(Fraction((-1) ** (k + 1), k))
    return acc


class BracketTerm(NamedTuple):
    """coeff times the right-nested bracket [x1,[x2,[...,xn]...]].

    ``pattern`` spells x1...xn over the letters "a" and "b"; a length-1
    pattern is the bare letter.
    """

    coeff: Fraction
    pattern: str


def dynkin_project(poly: AssocPoly) -> list[BracketTerm]:
    """Bracket form of a homogeneous Lie element given in associative form.

    Each word w of degree n with coefficient c maps to (c/n, w).  For inputs
    that are Lie elements the bracket evaluation of the output equals the
    input; Lie-ness is the caller's obligation.
    """
    if not poly.terms:
        return []
    degrees = {len(w) for w in poly.terms}
    if len(degrees) != 1:
        raise ValueError("input must be homogeneous, found degrees %s" % sorted(degrees))
    n = degrees.pop()
    if n < 1:
        raise ValueError("degree must be >= 1")
    return [BracketTerm(c / n, w) for w, c in sorted(poly.terms.items())]


def expand_pattern(pattern: str, bound: int, subst=None) -> AssocPoly:
    """Expand a bracket pattern to commutators in the free algebra.

    ``subst`` optionally maps each letter to an AssocPoly (used e.g. for the
    antisymmetry audit a -> -b, b -> -a); defaults to the letters themselves.
    """
    if subst is None:
        subst = {x: AssocPoly.letter(x, bound) for x in "ab"}
    acc = subst[pattern[-1]]
    for x in reversed(pattern[:-1]):
        left = subst[x]
        acc = left * acc - acc * left
    return acc


class CbhSchema:
    """Per-degree bracket terms of log(e^a e^b), degrees 1..max_degree."""

    __slots__ = ("_degrees",)

    def __init__(self, degrees):
        self._degrees = tuple(degrees)

    @property
    def max_degree(self) -> int:
        return len(self._degrees)

    def degree_terms(self, n: int) -> tuple:
        """Bracket terms of homogeneous degree n (1-based)."""
        return self._degrees[n - 1]

    def to_obj(self):
        return {
            "max_degree": self.max_degree,
            "degrees": {
                str(n): [{"pattern": t.pattern, "coeff": str(t.coeff)} for t in self.degree_terms(n)]
                for n in range(1, self.max_degree + 1)
            },
        }


_schema_lock = threading.Lock()
_schema_degrees: list[tuple] = []


def cbh_schema(max_degree: int, degree_cap: int = DEFAULT_MAX_DEGREE) -> CbhSchema:
    """Evaluable schema for log(e^a e^b) through ``max_degree``.

    Degrees are memoized globally; the published tuples are immutable so
    concurrent readers are safe.  ``degree_cap`` guards against accidental
    exponential blowup (the word count doubles per degree) and can be raised
    explicitly.
    """
    if max_degree < 1:
        raise ValueError("schema degree must be >= 1, got %r" % (max_degree,))
    if max_degree > degree_cap:
        raise ValueError(
            "schema degree %d exceeds the cap %d; pass degree_cap explicitly to raise it"
            % (max_degree, degree_cap)
        )
    if max_degree > len(_schema_degrees):
        with _schema_lock:
            if max_degree > len(_schema_degrees):
                log = assoc_log_of_product(max_degree)
                for n in range(len(_schema_degrees) + 1, max_degree + 1):
                    _schema_degrees.append(tuple(dynkin_project(log.homogeneous_part(n))))
    return CbhSchema(_schema_degrees[:max_degree])
