"""Independent verification in the truncated enveloping algebra.

Exponential identities produced by the factorization solvers are re-checked
here without using the CBH schema: both sides are expanded as truncated
exponential products of words of basis elements, every word is rewritten to a
normal order by repeated application of  xy -> (-1)^(parity x * parity y) yx
+ [x, y]  (and x^2 -> [x, x]/2 for odd letters), and the normal forms are
compared term by term.

Normal order puts negative-degree letters first, then positive-degree, then
degree-zero, with central letters last; that mirrors the shape of the target
products so correct results are nearly normal already, but any total order
would do for an equality test.

For superalgebras the computation happens in the Grassmann-scalar extension
of the enveloping algebra: scalars pick up a Koszul sign whenever they move
left past odd letters, while the word rewriting itself only uses the rational
structure constants.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from .errors import ConvergenceError, PluginMismatchError
from .scalars import parity_of
from .series import LieSeries, mono_mul, mono_name


def _letter_key(b):
    sign_class = 0 if b.degree < 0 else (1 if b.degree > 0 else 2)
    return (sign_class, 1 if b.central else 0, b.degree, b.order_key())


def _word_parity(word) -> int:
    return sum(b.parity for b in word) & 1


class UElement:
    """Sparse truncated enveloping-algebra element.

    terms maps (word, monomial) to a nonzero scalar, where a word is a tuple
    of basis elements.  Monomial order is bounded by ``order``; since every
    exponential argument carries at least one variable per term, word lengths
    stay bounded as well.
    """

    __slots__ = ("plugin", "order", "terms")

    def __init__(self, plugin, order: int, terms: dict, _clean=False):
        self.plugin = plugin
        self.order = order
        if _clean:
            self.terms = terms
        else:
            self.terms = {k: v for k, v in terms.items() if v and len(k[1]) <= order}

    @classmethod
    def one(cls, plugin, order: int) -> "UElement":
        return cls(plugin, order, {((), ()): Fraction(1)}, _clean=True)

    @classmethod
    def zero(cls, plugin, order: int) -> "UElement":
        return cls(plugin, order, {}, _clean=True)

    @classmethod
    def from_series(cls, x: LieSeries) -> "UElement":
        return cls(x.plugin, x.order, {((b,), m): c for (b, m), c in x.terms.items()}, _clean=True)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, UElement):
            return NotImplemented
        return self.plugin == other.plugin and self.terms == other.terms

    def __add__(self, other):
        out = dict(self.terms)
        for key, coeff in other.terms.items():
            acc = out.get(key)
            acc = coeff if acc is None else acc + coeff
            if acc:
                out[key] = acc
            elif key in out:
                del out[key]
        return UElement(self.plugin, self.order, out, _clean=True)

    def __sub__(self, other):
        return self + other.scale(Fraction(-1))

    def scale(self, q) -> "UElement":
        if not q:
            return UElement.zero(self.plugin, self.order)
        return UElement(self.plugin, self.order, {k: v * q for k, v in self.terms.items()}, _clean=True)

    def support_keys(self):
        return sorted(
            self.terms,
            key=lambda k: (len(k[0]), tuple(_letter_key(b) for b in k[0]), k[1]),
        )

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for word, m in self.support_keys():
            wname = ".".join(b.name() for b in word) or "1"
            bits.append("(%s)*%s*%s" % (self.terms[(word, m)], mono_name(m), wname))
        return " + ".join(bits)


def u_mul(x: UElement, y: UElement) -> UElement:
    """Concatenation product with Koszul signs for scalars passing odd letters."""
    if x.plugin != y.plugin or x.order != y.order:
        raise PluginMismatchError("operands are not in the same truncated algebra")
    grassmann = x.plugin.grassmann
    order = x.order
    out = {}
    for (w1, m1), c1 in x.terms.items():
        p1 = _word_parity(w1) if grassmann else 0
        o1 = len(m1)
        for (w2, m2), c2 in y.terms.items():
            if o1 + len(m2) > order:
                continue
            coeff = c1 * c2
            if p1 and parity_of(c2):
                coeff = -coeff
            key = (w1 + w2, mono_mul(m1, m2))
            acc = out.get(key)
            acc = coeff if acc is None else acc + coeff
            if acc:
                out[key] = acc
            elif key in out:
                del out[key]
    return UElement(x.plugin, order, out, _clean=True)


def u_exp(x: LieSeries, order=None) -> UElement:
    """Truncated exponential sum_k x^k / k! as an enveloping-algebra element."""
    n = x.order if order is None else min(order, x.order)
    low = x.min_total_order()
    if low is not None and low < 1:
        raise ConvergenceError("exponent has a variable-free term; the series would not converge")
    xi = UElement.from_series(x.truncate(n))
    acc = UElement.one(x.plugin, n)
    power = UElement.one(x.plugin, n)
    for k in range(1, n + 1):
        power = u_mul(power, xi)
        if not power:
            break
        acc = acc + power.scale(Fraction(1, factorial(k)))
    return acc


class Straightener:
    """Rewrites enveloping-algebra words to normal order, with memoization.

    The rewrite relation xy -> (+-) yx + [x, y] strictly decreases (word
    length, inversion count) lexicographically, so the leftmost-violation
    recursion terminates; the normal form is unique, which the confluence
    audit in the test suite exercises from random starting points.
    """

    def __init__(self, plugin):
        self.plugin = plugin
        self.cache: dict = {}

    def normal_form(self, word) -> dict:
        hit = self.cache.get(word)
        if hit is not None:
            return hit
        out = None
        for i in range(len(word) - 1):
            u, v = word[i], word[i + 1]
            if u == v and u.parity:
                # odd square: uu = [u, u] / 2
                out = {}
                for z, c in self.plugin.bracket_basis(u, u).items():
                    self._accumulate(out, word[:i] + (z,) + word[i + 2 :], c / 2)
                break
            if _letter_key(u) > _letter_key(v):
                out = {}
                swap_sign = Fraction(-1 if (u.parity and v.parity) else 1)
                self._accumulate(out, word[:i] + (v, u) + word[i + 2 :], swap_sign)
                for z, c in self.plugin.bracket_basis(u, v).items():
                    self._accumulate(out, word[:i] + (z,) + word[i + 2 :], c)
                break
        if out is None:
            out = {word: Fraction(1)}
        self.cache[word] = out
        return out

    def _accumulate(self, out: dict, word, factor):
        if not factor:
            return
        for w, c in self.normal_form(word).items():
            acc = out.get(w)
            acc = factor * c if acc is None else acc + factor * c
            if acc:
                out[w] = acc
            elif w in out:
                del out[w]


def straighten(x: UElement, straightener: Straightener | None = None) -> UElement:
    """Rewrite every word of x to normal order."""
    st = straightener if straightener is not None else Straightener(x.plugin)
    out = {}
    for (word, m), coeff in x.terms.items():
        for nword, c in st.normal_form(word).items():
            key = (nword, m)
            acc = out.get(key)
            acc = coeff * c if acc is None else acc + coeff * c
            if acc:
                out[key] = acc
            elif key in out:
                del out[key]
    return UElement(x.plugin, x.order, out, _clean=True)


@dataclass
class VerifyReport:
    """Outcome of one normal-form comparison."""

    ok: bool
    order: int
    mismatches: list = field(default_factory=list)
    stats: dict = field(default_factory=dict)

    def to_obj(self):
        return {"ok": self.ok, "order": self.order, "mismatches": self.mismatches, "stats": self.stats}


MAX_REPORTED_MISMATCHES = 20


def verify_products(lhs_factors, rhs_factors, order=None) -> VerifyReport:
    """Compare straighten(prod e^{lhs_i}) with straighten(prod e^{rhs_j}).

    A mismatch is a report outcome, not an error; the report lists the
    offending (word, monomial) pairs with both sides' coefficients.
    """
    factors = list(lhs_factors) + list(rhs_factors)
    plugin = factors[0].plugin
    n = factors[0].order if order is None else order
    st = Straightener(plugin)

    def side(series_list):
        acc = UElement.one(plugin, n)
        for s in series_list:
            if s.order > n:
                s = s.truncate(n)
            elif s.order < n:
                s = s.lift(n)
            acc = u_mul(acc, u_exp(s, n))
        return straighten(acc, st)

    lhs = side(lhs_factors)
    rhs = side(rhs_factors)
    mismatches = []
    keys = set(lhs.terms) | set(rhs.terms)
    for word, m in sorted(keys, key=lambda k: (len(k[0]), tuple(_letter_key(b) for b in k[0]), k[1])):
        a = lhs.terms.get((word, m), Fraction(0))
        b = rhs.terms.get((word, m), Fraction(0))
        if a != b:
            mismatches.append(
                {
                    "word": [x.name() for x in word],
                    "monomial": mono_name(m),
                    "lhs": str(a),
                    "rhs": str(b),
                }
            )
            if len(mismatches) >= MAX_REPORTED_MISMATCHES:
                break
    stats = {
        "lhs_terms": len(lhs.terms),
        "rhs_terms": len(rhs.terms),
        "straightened_words": len(st.cache),
    }
    return VerifyReport(ok=not mismatches, order=n, mismatches=mismatches, stats=stats)


def verify_triple(g_plus, g_minus, psi_minus, psi_plus, psi_zero, order=None) -> VerifyReport:
    """Does e^{g+} e^{g-} equal e^{psi-} e^{psi+} e^{psi0}?"""
    return verify_products([g_plus, g_minus], [psi_minus, psi_plus, psi_zero], order)


def verify_factorization(h_left, h_right, g_left, g_right, order=None) -> VerifyReport:
    """Does e^{g_left} e^{g_right} equal e^{h_left + h_right}?"""
    return verify_products([g_left, g_right], [h_left + h_right], order)


def verify_switch(y_right, x_left, psi_left, psi_right, order=None) -> VerifyReport:
    """Does e^{y} e^{x} equal e^{psi_left} e^{psi_right}?"""
    return verify_products([y_right, x_left], [psi_left, psi_right], order)
