"""Sparse bigraded formal Lie series over a pluggable structure-constant algebra.

A series is a finite map (basis element, monomial) -> scalar, truncated at a
total variable order N.  Monomials are sorted multisets of polarity-flagged
commuting variables: standard plus-type variables A_j (j > 0), standard
minus-type variables B_j (j < 0), and two auxiliary variables s (minus
polarity) and t (plus polarity) used as scaffolding by the two-stage
three-factor split.  All indices are doubled so half-integer gradings stay
integral: A_{3/2} is the plus label with index 3, B_{-2} the minus label with
index -4.

The bidegree of a monomial is (number of minus labels, number of plus
labels); its total order is the number of labels.  Truncation drops, never
rounds: any bracket/product term exceeding the order bound is discarded at
creation, so every stated result is exact modulo order N+1.
"""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple

from .cbh import cbh_schema
from .errors import ConvergenceError, DomainError, PluginMismatchError
from .scalars import GrassmannScalar, half_str, parity_of


class VarLabel(NamedTuple):
    """One commuting formal variable.

    polarity: -1 for minus-type, +1 for plus-type.
    aux:      0 for standard labels, 1 for the auxiliary pair.
    index:    doubled index; standard plus labels have index > 0, standard
              minus labels index < 0, auxiliary labels index 0.
    """

    polarity: int
    aux: int
    index: int


AUX_S = VarLabel(-1, 1, 0)
AUX_T = VarLabel(1, 1, 0)


def avar(index: int) -> VarLabel:
    """Plus variable A_{index/2} (doubled index, positive)."""
    if index <= 0:
        raise ValueError("plus variable needs a positive doubled index, got %r" % (index,))
    return VarLabel(1, 0, index)


def bvar(index: int) -> VarLabel:
    """Minus variable B_{index/2} (doubled index, negative)."""
    if index >= 0:
        raise ValueError("minus variable needs a negative doubled index, got %r" % (index,))
    return VarLabel(-1, 0, index)


def var_name(v: VarLabel) -> str:
    if v.aux:
        return "s" if v.polarity < 0 else "t"
    return ("A_" if v.polarity > 0 else "B_") + half_str(v.index)


Monomial = tuple  # sorted tuple of VarLabel

MONO_ONE: Monomial = ()


def mono(*labels: VarLabel) -> Monomial:
    return tuple(sorted(labels))


def mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    return tuple(sorted(m1 + m2))


def total_order(m: Monomial) -> int:
    return len(m)


def minus_order(m: Monomial) -> int:
    return sum(1 for v in m if v.polarity < 0)


def plus_order(m: Monomial) -> int:
    return sum(1 for v in m if v.polarity > 0)


def std_order(m: Monomial) -> int:
    return sum(1 for v in m if not v.aux)


def aux_order(m: Monomial) -> int:
    return sum(1 for v in m if v.aux)


def mono_name(m: Monomial) -> str:
    if not m:
        return "1"
    out = []
    i = 0
    while i < len(m):
        j = i
        while j < len(m) and m[j] == m[i]:
            j += 1
        out.append(var_name(m[i]) + ("" if j - i == 1 else "^%d" % (j - i)))
        i = j
    return " ".join(out)


PART_SIGNS = {
    "minus": frozenset({-1}),
    "zero": frozenset({0}),
    "plus": frozenset({1}),
    "zero_plus": frozenset({0, 1}),
}


def _degree_sign(degree: int) -> int:
    return (degree > 0) - (degree < 0)


class LieSeries:
    """Immutable sparse Lie series over a plugin's basis.

    terms: dict (basis, monomial) -> nonzero scalar.  order is the total
    variable order bound.  std_cap, when set, additionally bounds the order
    in standard (non-auxiliary) variables; the two-stage split uses it so the
    auxiliary scaffolding never forces computation past the order that
    survives label erasure.

    In the Grassmann-envelope case every term satisfies
    parity(scalar) == parity(basis element).
    """

    __slots__ = ("plugin", "order", "std_cap", "terms")

    def __init__(self, plugin, order: int, terms: dict, std_cap=None, _clean=False):
        self.plugin = plugin
        self.order = order
        self.std_cap = std_cap
        if _clean:
            self.terms = terms
            return
        clean = {}
        for (basis, m), coeff in terms.items():
            if not coeff:
                continue
            if len(m) > order:
                continue
            if std_cap is not None and std_order(m) > std_cap:
                continue
            clean[(basis, m)] = coeff
        self.terms = clean
        if plugin.grassmann:
            self._check_parity()

    def _check_parity(self):
        for (basis, m), coeff in self.terms.items():
            try:
                p = parity_of(coeff)
            except ValueError:
                raise DomainError(
                    "coefficient of %s at %s has mixed parity" % (basis.name(), mono_name(m))
                )
            if p != basis.parity:
                raise DomainError(
                    "coefficient parity %d does not match basis parity %d on %s at %s"
                    % (p, basis.parity, basis.name(), mono_name(m))
                )

    # -- constructors -----------------------------------------------------

    @classmethod
    def make(cls, plugin, order: int, items=(), std_cap=None) -> "LieSeries":
        """Build from an iterable of (basis, monomial, scalar) triples."""
        terms = {}
        for basis, m, coeff in items:
            key = (basis, tuple(sorted(m)))
            acc = terms.get(key)
            terms[key] = coeff if acc is None else acc + coeff
        return cls(plugin, order, terms, std_cap=std_cap)

    @classmethod
    def zero(cls, plugin, order: int, std_cap=None) -> "LieSeries":
        return cls(plugin, order, {}, std_cap=std_cap, _clean=True)

    # -- basic structure ---------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if not isinstance(other, LieSeries):
            return NotImplemented
        return (
            self.plugin == other.plugin
            and self.order == other.order
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.plugin, self.order, frozenset(self.terms)))

    def coeff(self, basis, m: Monomial):
        """Coefficient at (basis, monomial); 0 when absent."""
        return self.terms.get((basis, tuple(sorted(m))), Fraction(0))

    def min_total_order(self):
        if not self.terms:
            return None
        return min(len(m) for (_, m) in self.terms)

    def support_keys(self):
        return sorted(self.terms, key=lambda k: (k[0].degree, k[0].order_key(), k[1]))

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for basis, m in self.support_keys():
            bits.append("(%s)*%s*%s" % (self.terms[(basis, m)], mono_name(m), basis.name()))
        return " + ".join(bits)

    # -- linear operations --------------------------------------------------

    def __add__(self, other):
        _require_compatible(self, other)
        out = dict(self.terms)
        for key, coeff in other.terms.items():
            acc = out.get(key)
            acc = coeff if acc is None else acc + coeff
            if acc:
                out[key] = acc
            elif key in out:
                del out[key]
        return LieSeries(self.plugin, self.order, out, std_cap=self.std_cap, _clean=True)

    def __neg__(self):
        return LieSeries(
            self.plugin,
            self.order,
            {k: -v for k, v in self.terms.items()},
            std_cap=self.std_cap,
            _clean=True,
        )

    def __sub__(self, other):
        return self + (-other)

    def scale(self, q) -> "LieSeries":
        """Multiply by a rational (or other even scalar)."""
        if not q:
            return LieSeries.zero(self.plugin, self.order, std_cap=self.std_cap)
        return LieSeries(
            self.plugin,
            self.order,
            {k: v * q for k, v in self.terms.items()},
            std_cap=self.std_cap,
            _clean=True,
        )

    def __rmul__(self, q):
        if isinstance(q, (int, Fraction)):
            return self.scale(Fraction(q))
        return NotImplemented

    # -- grading ------------------------------------------------------------

    def project(self, part: str) -> "LieSeries":
        """Keep terms whose basis degree sign lies in the chosen part."""
        signs = PART_SIGNS[part]
        out = {k: v for k, v in self.terms.items() if _degree_sign(k[0].degree) in signs}
        return LieSeries(self.plugin, self.order, out, std_cap=self.std_cap, _clean=True)

    def component(self, order: int) -> "LieSeries":
        """Terms of exact total variable order."""
        out = {k: v for k, v in self.terms.items() if len(k[1]) == order}
        return LieSeries(self.plugin, self.order, out, std_cap=self.std_cap, _clean=True)

    def bicomponent(self, m_minus: int, n_plus: int) -> "LieSeries":
        """Terms of exact bidegree (minus order, plus order)."""
        out = {
            k: v
            for k, v in self.terms.items()
            if minus_order(k[1]) == m_minus and plus_order(k[1]) == n_plus
        }
        return LieSeries(self.plugin, self.order, out, std_cap=self.std_cap, _clean=True)

    def truncate(self, order: int) -> "LieSeries":
        if order >= self.order:
            return self
        out = {k: v for k, v in self.terms.items() if len(k[1]) <= order}
        return LieSeries(self.plugin, order, out, std_cap=self.std_cap, _clean=True)

    def lift(self, order: int, std_cap="keep") -> "LieSeries":
        """Re-tag with a larger truncation order (contents unchanged)."""
        if order < self.order:
            raise DomainError("lift cannot lower the truncation order")
        cap = self.std_cap if std_cap == "keep" else std_cap
        if cap is not None and any(std_order(m) > cap for (_, m) in self.terms):
            raise DomainError("existing terms exceed the requested standard-order cap")
        return LieSeries(self.plugin, order, dict(self.terms), std_cap=cap, _clean=True)

    # -- bracket ------------------------------------------------------------

    def bracket(self, other: "LieSeries") -> "LieSeries":
        """Bilinear bracket; monomials multiply, overlong terms vanish.

        In the Grassmann case the sign (-1)^(parity of other's scalar *
        parity of self's basis element) is applied, so the result is the
        envelope bracket of the two series.
        """
        _require_compatible(self, other)
        plugin = self.plugin
        order = self.order
        cap = self.std_cap
        grassmann = plugin.grassmann
        out = {}
        left = _bucket_items(self, grassmann, basis_parity=True)
        right = _bucket_items(other, grassmann, basis_parity=False)
        for o1, items1 in left:
            for o2, items2 in right:
                if o1 + o2 > order:
                    break
                for bx, mx, cx, sx, px in items1:
                    for by, my, cy, sy, py in items2:
                        if cap is not None and sx + sy > cap:
                            continue
                        struct = plugin.bracket_basis(bx, by)
                        if not struct:
                            continue
                        coeff = cx * cy
                        if grassmann and px and py:
                            coeff = -coeff
                        m = mono_mul(mx, my)
                        for bz, factor in struct.items():
                            key = (bz, m)
                            acc = out.get(key)
                            acc = coeff * factor if acc is None else acc + coeff * factor
                            if acc:
                                out[key] = acc
                            elif key in out:
                                del out[key]
        return LieSeries(plugin, order, out, std_cap=cap, _clean=True)


def _bucket_items(series: LieSeries, grassmann: bool, basis_parity: bool):
    """Group terms by total order, ascending, with precomputed std order and
    the parity that matters on that side of a bracket."""
    buckets = {}
    for (basis, m), coeff in series.terms.items():
        if grassmann:
            par = basis.parity if basis_parity else parity_of(coeff)
        else:
            par = 0
        buckets.setdefault(len(m), []).append((basis, m, coeff, std_order(m), par))
    return sorted(buckets.items())


def _require_compatible(x: LieSeries, y: LieSeries):
    if x.plugin != y.plugin:
        raise PluginMismatchError(
            "series belong to different algebras: %r vs %r" % (x.plugin.name, y.plugin.name)
        )
    if x.order != y.order or x.std_cap != y.std_cap:
        raise PluginMismatchError(
            "series have different truncations: order %r/%r, std cap %r/%r"
            % (x.order, y.order, x.std_cap, y.std_cap)
        )


# ---------------------------------------------------------------------------
# Schema evaluation
# ---------------------------------------------------------------------------


def _eval_patterns(schema, degree: int, x: LieSeries, y: LieSeries, cache: dict):
    """Accumulated value of the schema's degree-n bracket terms at (x, y).

    Nested brackets are evaluated from the right with suffix caching shared
    across patterns (all patterns ending alike reuse the inner value).
    """
    total = None

    def suffix_value(pattern: str):
        hit = cache.get(pattern)
        if hit is not None:
            return hit
        if len(pattern) == 1:
            value = x if pattern == "a" else y
        else:
            inner = suffix_value(pattern[1:])
            if inner:
                outer = x if pattern[0] == "a" else y
                value = outer.bracket(inner)
            else:
                value = LieSeries.zero(x.plugin, x.order, std_cap=x.std_cap)
        cache[pattern] = value
        return value

    for coeff, pattern in schema.degree_terms(degree):
        value = suffix_value(pattern)
        if value:
            piece = value.scale(coeff)
            total = piece if total is None else total + piece
    if total is None:
        return LieSeries.zero(x.plugin, x.order, std_cap=x.std_cap)
    return total


def cbh_eval(x: LieSeries, y: LieSeries, order=None) -> LieSeries:
    """log(e^x e^y) evaluated in the plugin algebra, truncated.

    Every term of x and y must carry at least one variable so that only
    finitely many schema degrees contribute below the truncation order.
    """
    _require_compatible(x, y)
    for z in (x, y):
        low = z.min_total_order()
        if low is not None and low < 1:
            raise ConvergenceError("exponent has a variable-free term; the series would not converge")
    n = x.order if order is None else min(order, x.order)
    xi, yi = x.truncate(n), y.truncate(n)
    lows = [z.min_total_order() for z in (xi, yi) if z.min_total_order() is not None]
    if not lows:
        return LieSeries.zero(x.plugin, n, std_cap=x.std_cap)
    max_degree = min(n, n // min(lows))
    if max_degree < 1:
        return LieSeries.zero(x.plugin, n, std_cap=x.std_cap)
    schema = cbh_schema(max_degree)
    cache: dict = {}
    acc = LieSeries.zero(x.plugin, n, std_cap=x.std_cap)
    for degree in range(1, max_degree + 1):
        acc = acc + _eval_patterns(schema, degree, xi, yi, cache)
    return acc


def cbh_eval_degree(x: LieSeries, y: LieSeries, degree: int, order=None) -> LieSeries:
    """Contribution of the schema's exact homogeneous degree (audit helper)."""
    _require_compatible(x, y)
    n = x.order if order is None else min(order, x.order)
    xi, yi = x.truncate(n), y.truncate(n)
    return _eval_patterns(cbh_schema(degree), degree, xi, yi, {})


# ---------------------------------------------------------------------------
# Auxiliary-label scaffolding
# ---------------------------------------------------------------------------


def attach_aux(x: LieSeries, polarity: int) -> LieSeries:
    """Multiply every term by one auxiliary variable of the given polarity."""
    label = AUX_S if polarity < 0 else AUX_T
    out = {}
    for (basis, m), coeff in x.terms.items():
        out[(basis, mono_mul(m, (label,)))] = coeff
    result = LieSeries(x.plugin, x.order, out, std_cap=x.std_cap)
    if len(result.terms) != len(x.terms):
        raise DomainError("attaching an auxiliary label overflowed the truncation order")
    return result


def erase_aux(x: LieSeries, order: int) -> LieSeries:
    """Substitute 1 for the auxiliary variables and retruncate.

    Requires auxiliary order <= standard order on every term, which bounds
    the number of terms collapsing onto each standard monomial.
    """
    for (basis, m) in x.terms:
        if aux_order(m) > std_order(m):
            raise DomainError(
                "auxiliary order exceeds standard order on %s at %s; erasure would not be finite"
                % (basis.name(), mono_name(m))
            )
    out = {}
    for (basis, m), coeff in x.terms.items():
        stripped = tuple(v for v in m if not v.aux)
        if len(stripped) > order:
            continue
        key = (basis, stripped)
        acc = out.get(key)
        acc = coeff if acc is None else acc + coeff
        if acc:
            out[key] = acc
        elif key in out:
            del out[key]
    return LieSeries(x.plugin, order, out, _clean=True)
