"""Exact JSON round-trip for scalars, series and solver results.

Rationals serialize as "p/q" strings ("p" when the denominator is 1);
Grassmann scalars as a list of {"generators": [doubled labels], "coeff":
"p/q"}.  A series term is {"basis": name, "monomial": {var name: exponent},
"coeff": scalar}; term lists are sorted by (basis degree, basis, monomial) so
identical runs give byte-identical output.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ConfigError
from .scalars import GrassmannScalar
from .series import (
    AUX_S,
    AUX_T,
    LieSeries,
    VarLabel,
    mono_mul,
    var_name,
)


def scalar_to_obj(x):
    if isinstance(x, GrassmannScalar):
        return [
            {"generators": list(k), "coeff": str(v)}
            for k, v in sorted(x.terms.items(), key=lambda kv: (len(kv[0]), kv[0]))
        ]
    return str(x)


def scalar_from_obj(obj):
    if isinstance(obj, str):
        return Fraction(obj)
    if isinstance(obj, list):
        terms = {}
        for entry in obj:
            terms[tuple(int(g) for g in entry["generators"])] = Fraction(entry["coeff"])
        return GrassmannScalar(terms)
    raise ConfigError("cannot parse scalar %r" % (obj,))


def _parse_half_index(s: str) -> int:
    q = Fraction(s) * 2
    if q.denominator != 1:
        raise ConfigError("index %r is not a half-integer" % (s,))
    return int(q)


def var_from_name(name: str) -> VarLabel:
    if name == "s":
        return AUX_S
    if name == "t":
        return AUX_T
    if name.startswith("A_"):
        return VarLabel(1, 0, _parse_half_index(name[2:]))
    if name.startswith("B_"):
        return VarLabel(-1, 0, _parse_half_index(name[2:]))
    raise ConfigError("unknown variable name %r" % (name,))


def mono_to_obj(m) -> dict:
    out: dict = {}
    for v in m:
        name = var_name(v)
        out[name] = out.get(name, 0) + 1
    return {k: out[k] for k in sorted(out)}


def mono_from_obj(obj: dict):
    m = ()
    for name, count in obj.items():
        m = mono_mul(m, (var_from_name(name),) * int(count))
    return m


def series_to_obj(x: LieSeries) -> list:
    out = []
    for basis, m in x.support_keys():
        out.append(
            {
                "basis": x.plugin.basis_name(basis),
                "monomial": mono_to_obj(m),
                "coeff": scalar_to_obj(x.terms[(basis, m)]),
            }
        )
    return out


def series_from_obj(plugin, order: int, obj: list) -> LieSeries:
    items = []
    for entry in obj:
        items.append(
            (
                plugin.basis_from_name(entry["basis"]),
                mono_from_obj(entry["monomial"]),
                scalar_from_obj(entry["coeff"]),
            )
        )
    return LieSeries.make(plugin, order, items)


def triple_result_to_obj(result, config: dict) -> dict:
    from .factor import split_central

    zero_rest, zero_central = split_central(result.psi_zero)
    return {
        "config": dict(config),
        "psi_minus": series_to_obj(result.psi_minus),
        "psi_plus": series_to_obj(result.psi_plus),
        "psi_zero": series_to_obj(result.psi_zero),
        "psi_zero_parts": {
            "noncentral": series_to_obj(zero_rest),
            "central": series_to_obj(zero_central),
        },
        "diagnostics": result.diagnostics,
    }


def triple_result_from_obj(plugin, obj: dict):
    from .factor import TripleResult

    order = int(obj["config"]["order"])
    return TripleResult(
        psi_minus=series_from_obj(plugin, order, obj["psi_minus"]),
        psi_plus=series_from_obj(plugin, order, obj["psi_plus"]),
        psi_zero=series_from_obj(plugin, order, obj["psi_zero"]),
        diagnostics=dict(obj.get("diagnostics", {})),
    )
