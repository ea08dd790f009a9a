#!/usr/bin/env python3
"""
Bandlimited function checks: closed forms, Parseval, band support and decay
"""
import math

import numpy as np

from data_sources import bandlimited
from data_sources.nodes import from_points
from src.quadrature import gauss_legendre, uniform_panel_rule

SQRT_2_OVER_PI = math.sqrt(2.0 / math.pi)


def test_indicator_closed_form():
    f = bandlimited.synthesize("indicator", 0.5, 1)
    assert math.isclose(bandlimited.evaluate(f, [0.0]), 0.39894228, rel_tol=1e-7)
    assert abs(bandlimited.evaluate(f, [2.0 * math.pi])) < 1e-12
    x = np.linspace(0.3, 30.0, 50)
    assert np.allclose(f.values(x), SQRT_2_OVER_PI * np.sin(0.5 * x) / x, rtol=1e-12, atol=1e-15)
    assert np.allclose(f.imaginary_part(x), 0.0, atol=1e-12)
    # the quadrature path agrees with the closed form
    rule = f.spectrum.rule
    generic = np.cos(np.outer(x, rule.nodes[:, 0])) @ (rule.weights * f.spectrum(rule.nodes)) / math.sqrt(2 * math.pi)
    assert np.allclose(generic, f.values(x), atol=1e-10)


def test_zero_spectrum():
    for preset in bandlimited.PRESETS:
        for dim in (1, 2):
            f = bandlimited.synthesize(preset, 0.5, dim, amplitude=0.0)
            assert bandlimited.l2_norm(f) == 0.0
            points = np.random.default_rng(0).uniform(-10, 10, (7, dim))
            assert not np.any(f.values(points))
            assert not np.any(bandlimited.sample(f, from_points(points)))


def test_l2_norm_examples():
    assert math.isclose(bandlimited.l2_norm(bandlimited.synthesize("indicator", 0.5, 1)), 1.0, rel_tol=1e-15)
    for dim in (1, 2):
        base = bandlimited.synthesize("random_smooth", 0.5, dim, seed=3)
        scaled = bandlimited.synthesize("random_smooth", 0.5, dim, seed=3, amplitude=-2.5)
        assert math.isclose(scaled.l2_norm, 2.5 * base.l2_norm, rel_tol=1e-13)


def test_sample_examples():
    f = bandlimited.synthesize("indicator", 0.5, 1)
    assert math.isclose(bandlimited.sample(f, from_points([0.0]))[0], 0.39894228, rel_tol=1e-7)
    g = bandlimited.synthesize("cosine_bump", 0.5, 1)
    assert len(bandlimited.sample(g, from_points(np.arange(13.0)))) == 13


def test_seeded_determinism():
    x = np.linspace(-20, 20, 41)
    a = bandlimited.synthesize("random_smooth", 0.5, 1, seed=9).values(x)
    b = bandlimited.synthesize("random_smooth", 0.5, 1, seed=9).values(x)
    c = bandlimited.synthesize("random_smooth", 0.5, 1, seed=10).values(x)
    assert np.array_equal(a, b) and not np.array_equal(a, c)


def test_imaginary_part_vanishes():
    rng = np.random.default_rng(1)
    for preset in ("cosine_bump", "random_smooth"):
        for dim in (1, 2):
            f = bandlimited.synthesize(preset, 0.5, dim, seed=2)
            assert np.abs(f.imaginary_part(rng.uniform(-30, 30, (25, dim)))).max() < 1e-12


def test_rule_integrates_quadratics():
    beta = 0.5
    f1 = bandlimited.synthesize("cosine_bump", beta, 1)
    xi, w = f1.spectrum.rule.nodes[:, 0], f1.spectrum.rule.weights
    assert math.isclose(w.sum(), 2 * beta, rel_tol=1e-12)
    assert math.isclose(np.dot(w, xi ** 2), 2 * beta ** 3 / 3, rel_tol=1e-12)
    f2 = bandlimited.synthesize("cosine_bump", beta, 2)
    nodes, w = f2.spectrum.rule.nodes, f2.spectrum.rule.weights
    assert math.isclose(w.sum(), math.pi * beta ** 2, rel_tol=1e-12)
    assert math.isclose(np.dot(w, nodes[:, 0] ** 2), math.pi * beta ** 4 / 4, rel_tol=1e-12)
    assert abs(np.dot(w, nodes[:, 0] * nodes[:, 1])) < 1e-15


def test_parseval_one_dimension():
    f = bandlimited.synthesize("random_smooth", 0.5, 1, seed=4)
    x, w = uniform_panel_rule(-40.0, 40.0, 64, 16)
    spatial = math.sqrt(np.dot(w, f.values(x) ** 2))
    assert math.isclose(spatial, f.l2_norm, rel_tol=1e-3)


def test_parseval_two_dimensions():
    f = bandlimited.synthesize("cosine_bump", 0.5, 2)
    x, w = uniform_panel_rule(-40.0, 40.0, 40, 4)
    grid = np.stack(np.meshgrid(x, x, indexing="ij"), axis=-1).reshape(-1, 2)
    weights = np.outer(w, w).ravel()
    spatial = math.sqrt(np.dot(weights, f.values(grid) ** 2))
    assert math.isclose(spatial, f.l2_norm, rel_tol=1e-3)


def test_band_discipline():
    # transform samples of f back to frequency space and look outside the band
    f = bandlimited.synthesize("random_smooth", 0.5, 1, seed=5)
    x, w = gauss_legendre(-200.0, 200.0, 1200)
    values = f.values(x)
    xi = np.linspace(0.0, 1.5, 301)
    spectrum = (np.cos(np.outer(xi, x)) * values) @ w / math.sqrt(2 * math.pi)
    outside = xi > 0.5 * 1.05
    energy = np.sum(spectrum ** 2)
    assert np.sum(spectrum[outside] ** 2) < 1e-6 * energy


def test_decay_of_smooth_presets():
    for preset in ("cosine_bump", "random_smooth"):
        f = bandlimited.synthesize(preset, 0.5, 1, seed=6)
        near = np.abs(f.values(np.linspace(20, 25, 200))).max()
        far = np.abs(f.values(np.linspace(35, 40, 200))).max()
        assert far < near


def test_invalid_requests():
    for build in (
        lambda: bandlimited.synthesize("gaussian", 0.5, 1),
        lambda: bandlimited.synthesize("indicator", 0.0, 1),
        lambda: bandlimited.synthesize("indicator", 0.5, 3),
        lambda: bandlimited.synthesize("indicator", 0.5, 1).eval([0.0, 1.0]),
    ):
        try:
            build()
        except ValueError:
            continue
        raise AssertionError("invalid request accepted")


if __name__ == "__main__":
    print("🧪 Testing bandlimited functions\n")
    for name, test in [(k, v) for k, v in list(globals().items()) if k.startswith("test_")]:
        test()
        print(f"✅ {name}")
