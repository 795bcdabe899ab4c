"""Shared builders for randomized test instances, with seeded RNGs."""

from __future__ import annotations

import random
from fractions import Fraction

from liefactor import GrassmannScalar, LieSeries, NSPlugin, VirasoroPlugin, sl2_plugin
from liefactor.series import avar, bvar, mono


def rand_frac(rng: random.Random) -> Fraction:
    value = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
    return value if value else Fraction(1)


def rand_monomial(rng, plus_indices, minus_indices, n_plus, n_minus):
    labels = [avar(rng.choice(plus_indices)) for _ in range(n_plus)]
    labels += [bvar(rng.choice(minus_indices)) for _ in range(n_minus)]
    return mono(*labels)


def virasoro_minus_series(rng, order, plugin=None, terms=3):
    """Random series in the minus part with minus-order >= 1 per term."""
    v = plugin if plugin is not None else VirasoroPlugin()
    items = []
    for _ in range(terms):
        n = rng.randint(-3, -1)
        m = rand_monomial(rng, [2, 4], [-2, -4], rng.randint(0, 1), rng.randint(1, 2))
        items.append((v.L(n), m, rand_frac(rng)))
    return LieSeries.make(v, order, items), v


def virasoro_zero_plus_series(rng, order, plugin, terms=3):
    """Random series in the zero-plus part with plus-order >= 1 per term."""
    items = []
    for _ in range(terms):
        basis = plugin.L(rng.randint(0, 3)) if rng.random() < 0.8 else plugin.c
        m = rand_monomial(rng, [2, 4], [-2, -4], rng.randint(1, 2), rng.randint(0, 1))
        items.append((basis, m, rand_frac(rng)))
    return LieSeries.make(plugin, order, items)


def generators_from_support(plugin, order, plus_doubled, minus_doubled):
    """(g_plus, g_minus) pairing each support index with its default generator."""
    plus_items = []
    for d in plus_doubled:
        basis, coeff = plugin.default_generator(d)
        plus_items.append((basis, mono(avar(d)), coeff))
    minus_items = []
    for d in minus_doubled:
        basis, coeff = plugin.default_generator(d)
        minus_items.append((basis, mono(bvar(d)), coeff))
    return (
        LieSeries.make(plugin, order, plus_items),
        LieSeries.make(plugin, order, minus_items),
    )


def ns_plus_series(rng, order, plugin, terms=2):
    """Random parity-consistent plus series over the Neveu-Schwarz envelope."""
    items = []
    for _ in range(terms):
        d = rng.choice([1, 2, 3, 4])
        m = rand_monomial(rng, [1, 2, 3], [-1, -2], rng.randint(1, 2), rng.randint(0, 1))
        if d % 2:
            coeff = GrassmannScalar.generator(d) * rand_frac(rng)
            items.append((plugin.G(d), m, coeff))
        else:
            items.append((plugin.L(d // 2), m, rand_frac(rng)))
    return LieSeries.make(plugin, order, items)


def ns_minus_series(rng, order, plugin, terms=2):
    items = []
    for _ in range(terms):
        d = -rng.choice([1, 2, 3, 4])
        m = rand_monomial(rng, [1, 2], [-1, -2, -3], rng.randint(0, 1), rng.randint(1, 2))
        if d % 2:
            coeff = GrassmannScalar.generator(d) * rand_frac(rng)
            items.append((plugin.G(d), m, coeff))
        else:
            items.append((plugin.L(d // 2), m, rand_frac(rng)))
    return LieSeries.make(plugin, order, items)


def affine_minus_series(rng, order, plugin, terms=2):
    items = []
    for _ in range(terms):
        i = rng.randint(0, 2)
        n = rng.randint(-2, -1)
        m = rand_monomial(rng, [2, 4], [-2, -4], rng.randint(0, 1), rng.randint(1, 2))
        items.append((plugin.G(i, n), m, rand_frac(rng)))
    return LieSeries.make(plugin, order, items)


def affine_zero_plus_series(rng, order, plugin, terms=2):
    items = []
    for _ in range(terms):
        i = rng.randint(0, 2)
        n = rng.randint(0, 2)
        basis = plugin.G(i, n) if (n or rng.random() < 0.7) else plugin.k
        m = rand_monomial(rng, [2, 4], [-2, -4], rng.randint(1, 2), rng.randint(0, 1))
        items.append((basis, m, rand_frac(rng)))
    return LieSeries.make(plugin, order, items)
