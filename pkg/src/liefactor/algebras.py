"""Concrete graded Lie (super)algebras with exact structure constants.

Shipped plugins: the Virasoro algebra, affine Lie algebras built from a
finite-dimensional algebra with an invariant symmetric bilinear form (with an
sl2 preset), and the N=1 Neveu-Schwarz superalgebra whose Grassmann envelope
the series layer works in.

All degrees are stored doubled so that half-integer gradings stay integral:
L_n has degree 2n, G_r has (doubled, odd) degree matching its stored index.
A plugin's ``bracket_basis`` returns the (super)bracket of two basis elements
as a sparse {basis: Fraction} map; envelope signs for odd coefficients are
applied by the series layer, not here.
"""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple

from .errors import ConfigError
from .scalars import GrassmannScalar, half_str


class VirasoroBasis(NamedTuple):
    kind: str  # "L" or "c"
    n: int     # natural index for L; 0 for the central element

    @property
    def degree(self) -> int:
        return 2 * self.n

    @property
    def parity(self) -> int:
        return 0

    @property
    def central(self) -> bool:
        return self.kind == "c"

    def name(self) -> str:
        return "c" if self.kind == "c" else "L_%d" % self.n

    def order_key(self):
        return (1 if self.kind == "c" else 0, self.n)


class AffineBasis(NamedTuple):
    kind: str  # "G" (g tensor x^n) or "K" (central)
    i: int     # finite-algebra basis index; 0 for K
    n: int     # loop degree; 0 for K

    @property
    def degree(self) -> int:
        return 2 * self.n

    @property
    def parity(self) -> int:
        return 0

    @property
    def central(self) -> bool:
        return self.kind == "K"

    def name(self, names=None) -> str:
        if self.kind == "K":
            return "k"
        label = names[self.i] if names else "g%d" % self.i
        return "%s@%d" % (label, self.n)

    def order_key(self):
        return (1 if self.kind == "K" else 0, self.n, self.i)


class NSBasis(NamedTuple):
    kind: str  # "L", "G" or "c"
    d: int     # doubled degree: even for L, odd for G, 0 for c

    @property
    def degree(self) -> int:
        return self.d

    @property
    def parity(self) -> int:
        return 1 if self.kind == "G" else 0

    @property
    def central(self) -> bool:
        return self.kind == "c"

    def name(self) -> str:
        if self.kind == "c":
            return "c"
        return "%s_%s" % (self.kind, half_str(self.d))

    def order_key(self):
        rank = {"L": 0, "G": 1, "c": 2}[self.kind]
        return (rank if self.kind != "c" else 2, self.d)


class LieAlgebraPlugin:
    """Structure constants plus grading/parity metadata for one algebra.

    Subclasses implement ``_bracket_impl``; results are cached per ordered
    pair.  Instances are read-only after construction (the cache is
    append-only, so concurrent readers are safe).
    """

    name = "abstract"
    grassmann = False   # scalar ring: False -> rationals, True -> Grassmann
    support_scale = 2   # multiply user support indices by this to get doubled

    def __init__(self):
        self._cache = {}

    def bracket_basis(self, x, y) -> dict:
        key = (x, y)
        hit = self._cache.get(key)
        if hit is None:
            hit = self._bracket_impl(x, y)
            self._cache[key] = hit
        return hit

    def _bracket_impl(self, x, y) -> dict:
        raise NotImplementedError

    def basis_in_window(self, max_abs_degree: int) -> list:
        """All basis elements with |doubled degree| <= max_abs_degree."""
        raise NotImplementedError

    def default_generator(self, index: int):
        """(basis element, unit coefficient) paired with the variable of the
        given doubled index in canonical runs."""
        raise NotImplementedError

    def basis_name(self, b) -> str:
        return b.name()

    def basis_from_name(self, s: str):
        raise NotImplementedError

    def _config_key(self):
        return (type(self).__name__,)

    def __eq__(self, other):
        return isinstance(other, LieAlgebraPlugin) and self._config_key() == other._config_key()

    def __hash__(self):
        return hash(self._config_key())


def _parse_half(s: str) -> int:
    """Doubled value of "2" or "-3/2"-style text."""
    q = Fraction(s)
    d = q * 2
    if d.denominator != 1:
        raise ConfigError("index %r is not a half-integer" % (s,))
    return int(d)


class VirasoroPlugin(LieAlgebraPlugin):
    """[L_m, L_n] = (m - n) L_{m+n} + (m^3 - m)/12 delta_{m+n,0} c."""

    name = "virasoro"

    def L(self, n: int) -> VirasoroBasis:
        return VirasoroBasis("L", n)

    @property
    def c(self) -> VirasoroBasis:
        return VirasoroBasis("c", 0)

    def _bracket_impl(self, x, y):
        if x.kind == "c" or y.kind == "c":
            return {}
        m, n = x.n, y.n
        out = {}
        if m != n:
            out[self.L(m + n)] = Fraction(m - n)
        if m + n == 0:
            central = Fraction(m**3 - m, 12)
            if central:
                out[self.c] = central
        return out

    def basis_in_window(self, max_abs_degree):
        out = [self.L(n) for n in range(-(max_abs_degree // 2), max_abs_degree // 2 + 1)]
        out.append(self.c)
        return out

    def default_generator(self, index):
        if index == 0 or index % 2:
            raise ConfigError("virasoro support indices must be nonzero integers")
        return self.L(index // 2), Fraction(1)

    def basis_from_name(self, s):
        if s == "c":
            return self.c
        if s.startswith("L_"):
            return self.L(int(s[2:]))
        raise ConfigError("unknown virasoro basis element %r" % (s,))


class AffinePlugin(LieAlgebraPlugin):
    """Loop algebra of a finite-dimensional Lie algebra plus a central term.

    [g x^m, h x^n] = [g,h] x^{m+n} + (g,h) m delta_{m+n,0} k, where [.,.] on
    the finite algebra is given by structure constants and (.,.) is a
    symmetric bilinear form.  Antisymmetry and the Jacobi identity of the
    finite constants are validated at construction; invariance of the form is
    the validator's job (see ``validate_plugin``).
    """

    grassmann = False

    def __init__(self, basis_names, brackets, form, name="affine-custom", default_plus=None, default_minus=None):
        super().__init__()
        self.name = name
        self.basis_names = tuple(basis_names)
        dim = len(self.basis_names)
        self.form = tuple(tuple(Fraction(v) for v in row) for row in form)
        if len(self.form) != dim or any(len(r) != dim for r in self.form):
            raise ConfigError("form matrix must be %d x %d" % (dim, dim))
        table = {}
        for (i, j), combo in brackets.items():
            table[(i, j)] = {k: Fraction(v) for k, v in combo.items() if Fraction(v)}
        self._table = table
        # indices of the finite-algebra elements used as default generators
        self._default_plus = 0 if default_plus is None else default_plus
        self._default_minus = 0 if default_minus is None else default_minus
        self._validate_finite()

    # -- finite-algebra layer

    def finite_bracket(self, i: int, j: int) -> dict:
        if i == j:
            return {}
        if (i, j) in self._table:
            return self._table[(i, j)]
        if (j, i) in self._table:
            return {k: -v for k, v in self._table[(j, i)].items()}
        return {}

    def _validate_finite(self):
        dim = len(self.basis_names)
        for i in range(dim):
            for j in range(dim):
                if self.form[i][j] != self.form[j][i]:
                    raise ConfigError("bilinear form is not symmetric at (%d, %d)" % (i, j))
        for (i, j) in self._table:
            if i == j and self._table[(i, j)]:
                raise ConfigError("[x, x] must vanish for %s" % self.basis_names[i])
            if (j, i) in self._table and i != j:
                forward = self._table[(i, j)]
                backward = self._table[(j, i)]
                if {k: -v for k, v in forward.items()} != backward:
                    raise ConfigError(
                        "structure constants are not antisymmetric on (%s, %s)"
                        % (self.basis_names[i], self.basis_names[j])
                    )
        for i in range(dim):
            for j in range(dim):
                for k in range(dim):
                    acc = {}
                    for combos in (
                        self._nested(i, j, k),
                        self._nested(j, k, i),
                        self._nested(k, i, j),
                    ):
                        for idx, v in combos.items():
                            acc[idx] = acc.get(idx, Fraction(0)) + v
                    if any(acc.values()):
                        raise ConfigError(
                            "structure constants violate the Jacobi identity on (%s, %s, %s)"
                            % (self.basis_names[i], self.basis_names[j], self.basis_names[k])
                        )

    def _nested(self, i, j, k):
        # [[x_i, x_j], x_k]
        out = {}
        for l, v in self.finite_bracket(i, j).items():
            for r, w in self.finite_bracket(l, k).items():
                out[r] = out.get(r, Fraction(0)) + v * w
        return out

    def form_value(self, i: int, j: int) -> Fraction:
        return self.form[i][j]

    # -- affine layer

    def G(self, i: int, n: int) -> AffineBasis:
        return AffineBasis("G", i, n)

    @property
    def k(self) -> AffineBasis:
        return AffineBasis("K", 0, 0)

    def _bracket_impl(self, x, y):
        if x.kind == "K" or y.kind == "K":
            return {}
        out = {}
        for l, v in self.finite_bracket(x.i, y.i).items():
            out[self.G(l, x.n + y.n)] = v
        if x.n + y.n == 0:
            central = self.form_value(x.i, y.i) * x.n
            if central:
                out[self.k] = central
        return out

    def basis_in_window(self, max_abs_degree):
        out = []
        for n in range(-(max_abs_degree // 2), max_abs_degree // 2 + 1):
            for i in range(len(self.basis_names)):
                out.append(self.G(i, n))
        out.append(self.k)
        return out

    def default_generator(self, index):
        if index == 0 or index % 2:
            raise ConfigError("affine support indices must be nonzero integers")
        n = index // 2
        i = self._default_plus if n > 0 else self._default_minus
        return self.G(i, n), Fraction(1)

    def basis_name(self, b):
        return b.name(self.basis_names)

    def basis_from_name(self, s):
        if s == "k":
            return self.k
        if "@" in s:
            label, n = s.split("@", 1)
            if label in self.basis_names:
                return self.G(self.basis_names.index(label), int(n))
        raise ConfigError("unknown affine basis element %r" % (s,))

    def _config_key(self):
        table = tuple(sorted((pair, tuple(sorted(combo.items()))) for pair, combo in self._table.items()))
        return ("affine", self.basis_names, table, self.form, self._default_plus, self._default_minus)

    def to_config(self) -> dict:
        return {
            "basis": list(self.basis_names),
            "brackets": {
                "%d,%d" % pair: {str(k): str(v) for k, v in combo.items()}
                for pair, combo in sorted(self._table.items())
            },
            "form": [[str(v) for v in row] for row in self.form],
            "default_plus": self._default_plus,
            "default_minus": self._default_minus,
        }

    @classmethod
    def from_config(cls, cfg: dict, name="affine-custom"):
        try:
            names = list(cfg["basis"])
            brackets = {}
            for pair, combo in cfg.get("brackets", {}).items():
                i, j = (int(p) for p in pair.split(","))
                brackets[(i, j)] = {int(k): Fraction(v) for k, v in combo.items()}
            form = [[Fraction(v) for v in row] for row in cfg["form"]]
        except (KeyError, ValueError, TypeError) as exc:
            raise ConfigError("bad affine configuration: %s" % exc)
        return cls(
            names,
            brackets,
            form,
            name=name,
            default_plus=cfg.get("default_plus"),
            default_minus=cfg.get("default_minus"),
        )


def sl2_plugin() -> AffinePlugin:
    """Affine sl2 with the trace form of the fundamental representation.

    Basis (e, h, f); [e,f] = h, [h,e] = 2e, [h,f] = -2f; (e,f) = 1,
    (h,h) = 2.  Default generators pair plus variables with e x^n and minus
    variables with f x^n, which feeds both the finite-algebra and the central
    part of the degree-zero factor.
    """
    names = ["e", "h", "f"]
    brackets = {
        (0, 2): {1: Fraction(1)},    # [e, f] = h
        (1, 0): {0: Fraction(2)},    # [h, e] = 2e
        (1, 2): {2: Fraction(-2)},   # [h, f] = -2f
    }
    form = [
        [0, 0, 1],
        [0, 2, 0],
        [1, 0, 0],
    ]
    return AffinePlugin(names, brackets, form, name="affine-sl2", default_plus=0, default_minus=2)


class NSPlugin(LieAlgebraPlugin):
    """N=1 Neveu-Schwarz superalgebra (Grassmann-envelope coefficients).

    Even part: the Virasoro relations on the L_n.  Odd generators G_r for
    half-integer r, with [G_r, L_n] = (r - n/2) G_{r+n} and
    [G_r, G_s] = 2 L_{r+s} + (r^2 - 1/4)/3 delta_{r+s,0} c (written here in
    doubled indices).  Odd basis elements must carry odd Grassmann
    coefficients in any series; the series layer enforces that and applies
    the envelope sign rule.
    """

    name = "ns1"
    grassmann = True
    support_scale = 1  # support is given directly in doubled indices

    def L(self, n: int) -> NSBasis:
        return NSBasis("L", 2 * n)

    def G(self, d: int) -> NSBasis:
        if d % 2 == 0:
            raise ConfigError("G indices are doubled odd integers, got %r" % (d,))
        return NSBasis("G", d)

    @property
    def c(self) -> NSBasis:
        return NSBasis("c", 0)

    def _bracket_impl(self, x, y):
        if x.kind == "c" or y.kind == "c":
            return {}
        out = {}
        if x.kind == "L" and y.kind == "L":
            m, n = x.d // 2, y.d // 2
            if m != n:
                out[self.L(m + n)] = Fraction(m - n)
            if m + n == 0:
                central = Fraction(m**3 - m, 12)
                if central:
                    out[self.c] = central
        elif x.kind == "G" and y.kind == "L":
            coeff = Fraction(2 * x.d - y.d, 4)
            if coeff:
                out[NSBasis("G", x.d + y.d)] = coeff
        elif x.kind == "L" and y.kind == "G":
            coeff = -Fraction(2 * y.d - x.d, 4)
            if coeff:
                out[NSBasis("G", x.d + y.d)] = coeff
        else:  # G, G: symmetric superbracket
            out[self.L((x.d + y.d) // 2)] = Fraction(2)
            if x.d + y.d == 0:
                central = Fraction(x.d**2 - 1, 12)
                if central:
                    out[self.c] = central
        return out

    def basis_in_window(self, max_abs_degree):
        out = []
        for d in range(-max_abs_degree, max_abs_degree + 1):
            if d % 2 == 0:
                out.append(NSBasis("L", d))
            else:
                out.append(NSBasis("G", d))
        out.append(self.c)
        return out

    def default_generator(self, index):
        if index == 0:
            raise ConfigError("support indices must be nonzero")
        if index % 2 == 0:
            return self.L(index // 2), Fraction(1)
        return self.G(index), GrassmannScalar.generator(index)

    def basis_from_name(self, s):
        if s == "c":
            return self.c
        if s.startswith("L_"):
            return NSBasis("L", _parse_half(s[2:]))
        if s.startswith("G_"):
            return NSBasis("G", _parse_half(s[2:]))
        raise ConfigError("unknown ns1 basis element %r" % (s,))


# ---------------------------------------------------------------------------
# Axiom validation
# ---------------------------------------------------------------------------


class PluginReport:
    """Outcome of the axiom suite for one plugin."""

    def __init__(self, plugin_name: str, window: int):
        self.plugin_name = plugin_name
        self.window = window
        self.checked = 0
        self.failures: list[dict] = []

    @property
    def ok(self) -> bool:
        return not self.failures

    def add_failure(self, law: str, witness, detail=""):
        self.failures.append({"law": law, "witness": witness, "detail": detail})

    def to_obj(self):
        return {
            "plugin": self.plugin_name,
            "window": self.window,
            "checked": self.checked,
            "ok": self.ok,
            "failures": self.failures,
        }


def _combo_add(acc: dict, combo: dict, factor):
    for b, v in combo.items():
        x = acc.get(b, Fraction(0)) + factor * v
        if x:
            acc[b] = x
        elif b in acc:
            del acc[b]


def validate_plugin(plugin, max_abs_degree: int = 6, max_failures: int = 10) -> PluginReport:
    """Exhaustive axiom check on all basis pairs/triples within a window.

    Checks degree additivity, parity additivity, centrality, graded
    skew-symmetry and the graded Jacobi identity; for affine plugins also
    invariance of the bilinear form on the finite algebra.  Windows are in
    doubled-degree units.
    """
    report = PluginReport(plugin.name, max_abs_degree)
    basis = plugin.basis_in_window(max_abs_degree)
    names = plugin.basis_name

    for x in basis:
        for y in basis:
            if len(report.failures) >= max_failures:
                return report
            combo = plugin.bracket_basis(x, y)
            report.checked += 1
            for z, v in combo.items():
                if z.degree != x.degree + y.degree:
                    report.add_failure("degree-additivity", (names(x), names(y)),
                                       "output %s" % names(z))
                if z.parity != (x.parity + y.parity) % 2:
                    report.add_failure("parity-additivity", (names(x), names(y)),
                                       "output %s" % names(z))
            if (x.central or y.central) and combo:
                report.add_failure("centrality", (names(x), names(y)))
            sign = -1 if (x.parity and y.parity) else 1
            reverse = plugin.bracket_basis(y, x)
            if {b: -sign * v for b, v in reverse.items()} != combo:
                report.add_failure("graded-skew-symmetry", (names(x), names(y)))

    def parity(u):
        return u.parity

    for x in basis:
        for y in basis:
            for z in basis:
                if len(report.failures) >= max_failures:
                    return report
                report.checked += 1
                acc: dict = {}
                for (u, v, w) in ((x, y, z), (y, z, x), (z, x, y)):
                    outer_sign = -1 if (parity(u) and parity(w)) else 1
                    for mid, c1 in plugin.bracket_basis(u, v).items():
                        _combo_add(acc, plugin.bracket_basis(mid, w), outer_sign * c1)
                if acc:
                    report.add_failure("graded-jacobi", (names(x), names(y), names(z)))

    if isinstance(plugin, AffinePlugin):
        dim = len(plugin.basis_names)
        for i in range(dim):
            for j in range(dim):
                for k in range(dim):
                    report.checked += 1
                    acc_v = Fraction(0)
                    for l, v in plugin.finite_bracket(i, j).items():
                        acc_v += v * plugin.form_value(l, k)
                    for l, v in plugin.finite_bracket(i, k).items():
                        acc_v += v * plugin.form_value(j, l)
                    if acc_v:
                        report.add_failure(
                            "form-invariance",
                            (plugin.basis_names[i], plugin.basis_names[j], plugin.basis_names[k]),
                        )
                        if len(report.failures) >= max_failures:
                            return report
    return report


def get_plugin(name: str, affine_config=None):
    """Look up a shipped plugin by CLI name."""
    if name == "virasoro":
        return VirasoroPlugin()
    if name == "affine-sl2":
        return sl2_plugin()
    if name == "affine-custom":
        if affine_config is None:
            raise ConfigError("affine-custom requires a configuration block")
        return AffinePlugin.from_config(affine_config)
    if name == "ns1":
        return NSPlugin()
    raise ConfigError("unknown algebra %r" % (name,))
