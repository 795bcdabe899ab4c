"""Constructive solvers for factoring products of formal exponentials.

Three operations, all exact modulo the truncation order:

* ``factorize``: given H = H_left + H_right split across two complementary
  graded parts, find (G_left, G_right) in those parts with
  log(e^{G_left} e^{G_right}) = H.  Solved by residual correction per total
  variable order: brackets of order-d corrections only influence orders > d,
  so one ascending sweep converges with zero residual.
* ``uniformize``: rewrite e^{Y} e^{X} (wrong order) as e^{PsiL} e^{PsiR}
  (target order) by evaluating the reversed-order logarithm and factorizing.
* ``triple_factorize``: rewrite e^{g+} e^{g-} as e^{Psi-} e^{Psi+} e^{Psi0}
  over a Z-graded algebra, via a minus / zero-plus uniformization followed by
  a plus / zero factorization run under fresh auxiliary variables that are
  erased (set to 1) at the end.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DomainError, ResidualError
from .series import (
    LieSeries,
    PART_SIGNS,
    attach_aux,
    cbh_eval,
    erase_aux,
    minus_order,
    mono_name,
    plus_order,
)


@dataclass(frozen=True)
class SplitSpec:
    """Complementary pair of graded parts (left factor part, right factor part)."""

    left: str
    right: str

    def __post_init__(self):
        for part in (self.left, self.right):
            if part not in PART_SIGNS:
                raise DomainError("unknown part %r" % (part,))
        if PART_SIGNS[self.left] & PART_SIGNS[self.right]:
            raise DomainError("split parts %r and %r overlap" % (self.left, self.right))


MINUS_ZERO_PLUS = SplitSpec("minus", "zero_plus")
PLUS_ZERO = SplitSpec("plus", "zero")


def _check_role(x: LieSeries, part: str, polarity: int, what: str):
    if x.project(part) != x:
        raise DomainError("%s must lie in the %s part" % (what, part))
    want = "minus" if polarity < 0 else "plus"
    counter = minus_order if polarity < 0 else plus_order
    for (basis, m) in x.terms:
        if counter(m) < 1:
            raise DomainError(
                "%s must have %s-order >= 1 in every term; offending monomial %s on %s"
                % (what, want, mono_name(m), basis.name())
            )


def _first_terms(x: LieSeries, limit=8):
    out = []
    for basis, m in x.support_keys()[:limit]:
        out.append({"basis": basis.name(), "monomial": mono_name(m), "coeff": str(x.terms[(basis, m)])})
    return out


def factorize(h_left, h_right, split: SplitSpec = MINUS_ZERO_PLUS, order=None, schedule="total"):
    """Solve log(e^{g_left} e^{g_right}) = h_left + h_right for the factors.

    h_left must lie in the split's left part with minus-order >= 1 in every
    monomial (it plays the first-exponential role); h_right symmetrically in
    the right part with plus-order >= 1.  Returns (g_left, g_right) in the
    same parts; the defining identity then holds with zero residual through
    the truncation order, which is asserted before returning.

    ``schedule="total"`` corrects one total order per sweep; ``"bidegree"``
    replays the finer correction sequence ordered by (minus, plus) bidegree
    inside each total order.  The corrections within one total order are
    independent of each other, so both schedules give identical output (the
    test suite asserts this).
    """
    if h_left.plugin != h_right.plugin:
        raise DomainError("inputs must share a plugin")
    if schedule not in ("total", "bidegree"):
        raise DomainError("unknown schedule %r" % (schedule,))
    n = h_left.order if order is None else min(order, h_left.order)
    h_left = h_left.truncate(n)
    h_right = h_right.truncate(n)
    _check_role(h_left, split.left, -1, "left input")
    _check_role(h_right, split.right, +1, "right input")
    target = h_left + h_right
    g_left, g_right = h_left, h_right
    sweeps = 0
    for d in range(2, n + 1):
        # residual corrections within one total order are independent of each
        # other (they only feed brackets of strictly higher order), so one
        # batch step per order and the finer per-bidegree replay agree
        steps = [None] if schedule == "total" else [(mm, d - mm) for mm in range(1, d)]
        for step in steps:
            approx = cbh_eval(g_left.truncate(d), g_right.truncate(d), d)
            residual = (target.truncate(d) - approx).component(d)
            if step is not None:
                residual = residual.bicomponent(*step)
            if not residual:
                continue
            sweeps = d
            corr_left = residual.project(split.left)
            corr_right = residual.project(split.right)
            if corr_left + corr_right != residual:
                raise ResidualError(
                    "residual leaves the %s/%s split" % (split.left, split.right),
                    {"order": d, "terms": _first_terms(residual)},
                )
            g_left = g_left + corr_left.lift(n)
            g_right = g_right + corr_right.lift(n)
    final = target - cbh_eval(g_left, g_right, n)
    if final:
        raise ResidualError(
            "nonzero residual after the final sweep",
            {"order": n, "sweeps": sweeps, "terms": _first_terms(final)},
        )
    return g_left, g_right


def uniformize(y_right, x_left, split: SplitSpec = MINUS_ZERO_PLUS, order=None):
    """Rewrite e^{y_right} e^{x_left} as e^{psi_left} e^{psi_right}.

    y_right lies in the split's right part (plus-order >= 1 per term), x_left
    in the left part (minus-order >= 1).  The result satisfies
    log(e^{psi_left} e^{psi_right}) = log(e^{y_right} e^{x_left}) through the
    truncation order, i.e. the two exponential products agree.
    """
    if y_right.plugin != x_left.plugin:
        raise DomainError("inputs must share a plugin")
    n = y_right.order if order is None else min(order, y_right.order)
    y_right = y_right.truncate(n)
    x_left = x_left.truncate(n)
    _check_role(y_right, split.right, +1, "right input")
    _check_role(x_left, split.left, -1, "left input")
    swapped_log = cbh_eval(y_right, x_left, n)
    h_left = swapped_log.project(split.left)
    h_right = swapped_log.project(split.right)
    if h_left + h_right != swapped_log:
        raise ResidualError(
            "reversed-order logarithm leaves the %s/%s split" % (split.left, split.right),
            {"terms": _first_terms(swapped_log - h_left - h_right)},
        )
    return factorize(h_left, h_right, split, n)


@dataclass
class TripleResult:
    """Outcome of the three-factor rewrite e^{g+} e^{g-} = e^{Psi-} e^{Psi+} e^{Psi0}."""

    psi_minus: LieSeries
    psi_plus: LieSeries
    psi_zero: LieSeries
    diagnostics: dict = field(default_factory=dict)


def split_central(x: LieSeries):
    """(non-central part, central part) of a degree-zero series.

    The central part commutes with everything, so its exponential factors out
    of any product; callers use the split for reporting only.
    """
    central = {k: v for k, v in x.terms.items() if k[0].central}
    rest = {k: v for k, v in x.terms.items() if not k[0].central}
    return (
        LieSeries(x.plugin, x.order, rest, std_cap=x.std_cap, _clean=True),
        LieSeries(x.plugin, x.order, central, std_cap=x.std_cap, _clean=True),
    )


def triple_factorize(g_plus, g_minus, order=None) -> TripleResult:
    """Factor e^{g+} e^{g-} into minus, plus and zero graded exponentials.

    g_plus lies in the plus part with plus-order >= 1 in every term, g_minus
    in the minus part with minus-order >= 1.  Stage one uniformizes across
    the minus / zero-plus split.  Stage two splits the zero-plus factor by
    attaching one fresh auxiliary variable per term (minus polarity on the
    plus-graded half, which becomes the left exponential; plus polarity on
    the zero-graded half), factorizing across the plus / zero split, and
    erasing the auxiliary labels.  Auxiliary order never exceeds standard
    order, so the erasure is finite and exact through the truncation order.
    """
    if g_plus.plugin != g_minus.plugin:
        raise DomainError("inputs must share a plugin")
    n = g_plus.order if order is None else min(order, g_plus.order)
    g_plus = g_plus.truncate(n)
    g_minus = g_minus.truncate(n)
    _check_role(g_plus, "plus", +1, "plus input")
    _check_role(g_minus, "minus", -1, "minus input")

    psi_minus, psi_zero_plus = uniformize(g_plus, g_minus, MINUS_ZERO_PLUS, n)

    h_plus = psi_zero_plus.project("plus")
    h_zero = psi_zero_plus.project("zero")
    stage2_sweeps = 0
    if h_plus or h_zero:
        wide = 2 * n
        left_seed = attach_aux(h_plus.lift(wide, std_cap=n), -1)
        right_seed = attach_aux(h_zero.lift(wide, std_cap=n), +1)
        g2_left, g2_right = factorize(left_seed, right_seed, PLUS_ZERO, wide)
        stage2_sweeps = wide
        psi_plus = erase_aux(g2_left, n)
        psi_zero = erase_aux(g2_right, n)
    else:
        psi_plus = LieSeries.zero(g_plus.plugin, n)
        psi_zero = LieSeries.zero(g_plus.plugin, n)

    diagnostics = {
        "order": n,
        "sweeps": max(n, stage2_sweeps),
        "terms": {
            "psi_minus": len(psi_minus),
            "psi_plus": len(psi_plus),
            "psi_zero": len(psi_zero),
        },
    }
    return TripleResult(psi_minus.truncate(n), psi_plus, psi_zero, diagnostics)
