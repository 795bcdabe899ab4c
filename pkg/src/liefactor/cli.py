"""Command-line front end.

Subcommands: schema, factor, uniformize, triple, verify, validate-algebra.
Runs are configured by an algebra name, a truncation order and a variable
support set, either on the command line or through a JSON config file (flags
override the file).  Output is deterministic: identical configuration gives
byte-identical JSON.

Exit codes: 0 ok, 1 verification mismatch, 2 usage/config error, 3 internal
residual failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .algebras import get_plugin, validate_plugin
from .cbh import cbh_schema
from .errors import ConfigError, LieFactorError, ResidualError
from .factor import (
    MINUS_ZERO_PLUS,
    factorize,
    split_central,
    triple_factorize,
    uniformize,
)
from .pbw import verify_triple
from .scalars import half_str
from .serialize import (
    mono_to_obj,
    scalar_to_obj,
    series_from_obj,
    series_to_obj,
    triple_result_to_obj,
)
from .series import LieSeries, avar, bvar, mono

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_RESIDUAL = 3


def _positive_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError("expected an integer, got %r" % text)
    if value < 1:
        raise argparse.ArgumentTypeError("expected a positive integer, got %d" % value)
    return value


def _parse_support_tokens(tokens):
    """Tokens like "A=1,2" / "B=-1,-2" into {"A": [...], "B": [...]}."""
    out = {"A": [], "B": []}
    for token in tokens or ():
        if "=" not in token:
            raise ConfigError("support token %r is not of the form A=... or B=..." % token)
        side, _, body = token.partition("=")
        side = side.strip()
        if side not in ("A", "B"):
            raise ConfigError("support side must be A or B, got %r" % side)
        for piece in body.split(","):
            piece = piece.strip()
            if not piece:
                continue
            try:
                out[side].append(int(piece))
            except ValueError:
                raise ConfigError("support index %r is not an integer" % piece)
    return out


class RunConfig:
    """Validated algebra + order + support selection for one run."""

    def __init__(self, algebra, order, support, affine=None, out_format="text"):
        self.algebra = algebra
        self.order = order
        self.support = {"A": list(support.get("A", ())), "B": list(support.get("B", ()))}
        self.affine = affine
        self.out_format = out_format
        if order < 1:
            raise ConfigError("order must be >= 1")
        for j in self.support["A"]:
            if j <= 0:
                raise ConfigError("A support indices must be positive, got %d" % j)
        for j in self.support["B"]:
            if j >= 0:
                raise ConfigError("B support indices must be negative, got %d" % j)
        self.plugin = get_plugin(algebra, affine_config=affine)

    @classmethod
    def from_args(cls, args):
        file_cfg = {}
        if getattr(args, "config", None):
            try:
                with open(args.config, "r", encoding="utf-8") as fh:
                    file_cfg = json.load(fh)
            except (OSError, json.JSONDecodeError) as exc:
                raise ConfigError("cannot read config file: %s" % exc)
        algebra = getattr(args, "algebra", None) or file_cfg.get("algebra")
        if not algebra:
            raise ConfigError("an algebra must be selected (--algebra or config file)")
        order = getattr(args, "order", None) or file_cfg.get("order")
        if order is None:
            raise ConfigError("a truncation order must be given (--order or config file)")
        if getattr(args, "support", None) is not None:
            support = _parse_support_tokens(args.support)
        else:
            support = file_cfg.get("support", {"A": [], "B": []})
        out_format = getattr(args, "format", None) or file_cfg.get("format", "text")
        return cls(
            algebra,
            int(order),
            support,
            affine=file_cfg.get("affine"),
            out_format=out_format,
        )

    def to_obj(self):
        obj = {"algebra": self.algebra, "order": self.order, "support": self.support}
        if self.affine is not None:
            obj["affine"] = self.affine
        return obj

    def generators(self):
        """(g_plus, g_minus) built from the support with unit coefficients."""
        scale = self.plugin.support_scale
        plus_items = []
        for j in self.support["A"]:
            basis, coeff = self.plugin.default_generator(j * scale)
            plus_items.append((basis, mono(avar(j * scale)), coeff))
        minus_items = []
        for j in self.support["B"]:
            basis, coeff = self.plugin.default_generator(j * scale)
            minus_items.append((basis, mono(bvar(j * scale)), coeff))
        g_plus = LieSeries.make(self.plugin, self.order, plus_items)
        g_minus = LieSeries.make(self.plugin, self.order, minus_items)
        return g_plus, g_minus


def _emit(obj, args, text_renderer):
    fmt = getattr(args, "format", None) or "text"
    if fmt == "json":
        payload = json.dumps(obj, indent=2, sort_keys=True)
    else:
        payload = text_renderer(obj)
    out_path = getattr(args, "out", None)
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(payload + "\n")
        print("wrote %s" % out_path)
    else:
        print(payload)


def _series_text(entries, indent="  "):
    if not entries:
        return indent + "(zero)"
    width = max(len(e["basis"]) for e in entries)
    lines = []
    for e in entries:
        monos = " ".join(
            name if count == 1 else "%s^%d" % (name, count) for name, count in e["monomial"].items()
        ) or "1"
        coeff = e["coeff"]
        if not isinstance(coeff, str):
            coeff = " + ".join(
                "%s %s" % (t["coeff"], "*".join("a_%s" % half_str(g) for g in t["generators"]) or "1")
                for t in coeff
            ) or "0"
        lines.append("%s%-*s  %-24s %s" % (indent, width, e["basis"], monos, coeff))
    return "\n".join(lines)


# -- subcommands -------------------------------------------------------------


def cmd_schema(args):
    schema = cbh_schema(args.degree)
    obj = schema.to_obj()

    def render(o):
        lines = []
        for n in range(1, o["max_degree"] + 1):
            for t in o["degrees"][str(n)]:
                lines.append("degree %d   %-14s %s" % (n, t["pattern"], t["coeff"]))
        return "\n".join(lines)

    _emit(obj, args, render)
    return EXIT_OK


def _pair_command(args, switch: bool):
    config = RunConfig.from_args(args)
    g_plus, g_minus = config.generators()
    if switch:
        left, right = uniformize(g_plus, g_minus, MINUS_ZERO_PLUS, config.order)
        labels = ("psi_left", "psi_right")
    else:
        left, right = factorize(g_minus, g_plus, MINUS_ZERO_PLUS, config.order)
        labels = ("g_left", "g_right")
    obj = {
        "config": config.to_obj(),
        labels[0]: series_to_obj(left),
        labels[1]: series_to_obj(right),
    }

    def render(o):
        lines = []
        for label in labels:
            lines.append("%s:" % label)
            lines.append(_series_text(o[label]))
        return "\n".join(lines)

    _emit(obj, args, render)
    return EXIT_OK


def cmd_factor(args):
    return _pair_command(args, switch=False)


def cmd_uniformize(args):
    return _pair_command(args, switch=True)


def cmd_triple(args):
    config = RunConfig.from_args(args)
    g_plus, g_minus = config.generators()
    result = triple_factorize(g_plus, g_minus, config.order)
    obj = triple_result_to_obj(result, config.to_obj())

    def render(o):
        lines = ["algebra: %s   order: %d" % (config.algebra, config.order)]
        for label, key in (
            ("psi_minus", "psi_minus"),
            ("psi_plus", "psi_plus"),
            ("psi_zero (noncentral)", None),
            ("gamma (central)", None),
        ):
            lines.append("%s:" % label)
            if key is not None:
                lines.append(_series_text(o[key]))
            elif label.startswith("psi_zero"):
                lines.append(_series_text(o["psi_zero_parts"]["noncentral"]))
            else:
                lines.append(_series_text(o["psi_zero_parts"]["central"]))
        d = o["diagnostics"]
        lines.append(
            "diagnostics: order=%d sweeps=%d terms=%s"
            % (d["order"], d["sweeps"], json.dumps(d["terms"], sort_keys=True))
        )
        return "\n".join(lines)

    _emit(obj, args, render)
    return EXIT_OK


def cmd_verify(args):
    if args.result:
        try:
            with open(args.result, "r", encoding="utf-8") as fh:
                stored = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError("cannot read result file: %s" % exc)
        try:
            cfg_obj = stored["config"]
            config = RunConfig(
                cfg_obj["algebra"],
                int(cfg_obj["order"]),
                cfg_obj.get("support", {}),
                affine=cfg_obj.get("affine"),
            )
            plugin = config.plugin
            psi_minus = series_from_obj(plugin, config.order, stored["psi_minus"])
            psi_plus = series_from_obj(plugin, config.order, stored["psi_plus"])
            psi_zero = series_from_obj(plugin, config.order, stored["psi_zero"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError("malformed result file: %s" % exc)
    else:
        config = RunConfig.from_args(args)
        result = triple_factorize(*config.generators(), config.order)
        psi_minus, psi_plus, psi_zero = result.psi_minus, result.psi_plus, result.psi_zero

    order = args.order if args.order is not None else config.order
    if order > config.order:
        raise ConfigError(
            "cannot verify at order %d beyond the computed truncation %d" % (order, config.order)
        )
    g_plus, g_minus = config.generators()
    report = verify_triple(g_plus, g_minus, psi_minus, psi_plus, psi_zero, order)
    obj = report.to_obj()

    def render(o):
        lines = ["ok: %s   order: %d" % (str(o["ok"]).lower(), o["order"])]
        for mm in o["mismatches"]:
            lines.append(
                "  mismatch word=%s monomial=%s lhs=%s rhs=%s"
                % (".".join(mm["word"]) or "1", mm["monomial"], mm["lhs"], mm["rhs"])
            )
        lines.append("stats: %s" % json.dumps(o["stats"], sort_keys=True))
        return "\n".join(lines)

    _emit(obj, args, render)
    return EXIT_OK if report.ok else EXIT_MISMATCH


def cmd_validate_algebra(args):
    affine = None
    if getattr(args, "config", None):
        try:
            with open(args.config, "r", encoding="utf-8") as fh:
                affine = json.load(fh).get("affine")
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError("cannot read config file: %s" % exc)
    plugin = get_plugin(args.algebra, affine_config=affine)
    report = validate_plugin(plugin, max_abs_degree=2 * args.window)
    obj = report.to_obj()

    def render(o):
        lines = [
            "plugin: %s   window: |degree| <= %d   checked: %d   ok: %s"
            % (o["plugin"], args.window, o["checked"], str(o["ok"]).lower())
        ]
        for f in o["failures"]:
            lines.append("  violated %s at %s %s" % (f["law"], "/".join(f["witness"]), f["detail"]))
        return "\n".join(lines)

    _emit(obj, args, render)
    return EXIT_OK if report.ok else EXIT_MISMATCH


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="liefactor",
        description="Factor products of formal exponentials over graded Lie algebras, exactly.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_schema = sub.add_parser("schema", help="print the bracket schema of log(e^a e^b)")
    p_schema.add_argument("--degree", type=_positive_int, required=True)
    p_schema.add_argument("--format", choices=("json", "text"), default="json")
    p_schema.add_argument("--out")
    p_schema.set_defaults(func=cmd_schema)

    def add_run_flags(p, default_format="text"):
        p.add_argument("--algebra", choices=("virasoro", "affine-sl2", "affine-custom", "ns1"))
        p.add_argument("--order", type=_positive_int)
        p.add_argument(
            "--support",
            nargs="*",
            metavar="SIDE=IDX,...",
            help="active variables, e.g. A=1,2 B=-1,-2 (ns1 indices are doubled)",
        )
        p.add_argument("--config", help="JSON config file; flags override it")
        p.add_argument("--format", choices=("json", "text"), default=default_format)
        p.add_argument("--out", help="write the result to this file")

    p_factor = sub.add_parser("factor", help="split e^(h- + h+) into e^(g-) e^(g+)")
    add_run_flags(p_factor)
    p_factor.set_defaults(func=cmd_factor)

    p_uni = sub.add_parser("uniformize", help="rewrite e^(g+) e^(g-) as e^(psi-) e^(psi0+)")
    add_run_flags(p_uni)
    p_uni.set_defaults(func=cmd_uniformize)

    p_triple = sub.add_parser("triple", help="rewrite e^(g+) e^(g-) as e^(psi-) e^(psi+) e^(psi0)")
    add_run_flags(p_triple)
    p_triple.set_defaults(func=cmd_triple)

    p_verify = sub.add_parser("verify", help="re-check a triple result by normal ordering")
    add_run_flags(p_verify)
    p_verify.add_argument("--result", help="JSON result file produced by the triple subcommand")
    p_verify.set_defaults(func=cmd_verify)

    p_val = sub.add_parser("validate-algebra", help="run the axiom suite for a plugin")
    p_val.add_argument(
        "--algebra",
        required=True,
        choices=("virasoro", "affine-sl2", "affine-custom", "ns1"),
    )
    p_val.add_argument("--window", type=_positive_int, default=6)
    p_val.add_argument("--config")
    p_val.add_argument("--format", choices=("json", "text"), default="text")
    p_val.add_argument("--out")
    p_val.set_defaults(func=cmd_validate_algebra)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ResidualError as exc:
        print("internal residual failure: %s" % exc, file=sys.stderr)
        if exc.diagnostics:
            print(json.dumps(exc.diagnostics, indent=2, sort_keys=True), file=sys.stderr)
        return EXIT_RESIDUAL
    except ConfigError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_USAGE
    except LieFactorError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_USAGE


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
