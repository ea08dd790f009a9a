#!/usr/bin/env python3
"""
Collocation checks: assembly, Cholesky solve, interpolation conditions,
positive definiteness and the averaged approximant
"""
import csv
import math
import tempfile
from pathlib import Path

import numpy as np

from data_sources import bandlimited, nodes
from src import interpolation
from src.errors import AveragedSolveError, GeometryError, NodeError
from src.kernels import make_kernel

E_INV = math.exp(-1.0)


def _collocation_kernels():
    return [
        make_kernel("gaussian", 1, 4.0),
        make_kernel("imq", 1, 4.0, nu=1.5),
        make_kernel("pexp", 1, 4.0, p=1.0),
    ]


def _kadec_129():
    return nodes.kadec_1d(0.95, (-64, 64), 0.2, seed=7)


def test_assemble_examples():
    kernel = make_kernel("gaussian", 1, 1.0)
    single = interpolation.assemble(kernel, [0.0])
    assert single.matrix.shape == (1, 1) and single.matrix[0, 0] == 1.0
    pair = interpolation.assemble(kernel, [0.0, 2.0])
    assert math.isclose(pair.matrix[0, 1], E_INV, rel_tol=1e-15)
    assert np.all(np.diag(pair.matrix) == 1.0)
    for k in _collocation_kernels()[:2]:
        system = interpolation.assemble(k, nodes.kadec_1d(0.95, (-10, 10), 0.2, seed=1))
        assert np.array_equal(system.matrix, system.matrix.T)
        assert not system.factorized


def test_assemble_rejects_bad_nodes():
    kernel = make_kernel("gaussian", 1, 1.0)
    try:
        interpolation.assemble(kernel, [0.0, 1.0, 1.0])
    except NodeError:
        pass
    else:
        raise AssertionError("duplicate nodes accepted")
    try:
        interpolation.assemble(kernel, np.zeros((1, 2)))
    except GeometryError:
        pass
    else:
        raise AssertionError("dimension mismatch accepted")


def test_solve_examples():
    kernel = make_kernel("gaussian", 1, 1.0)
    interp = interpolation.solve(interpolation.assemble(kernel, [0.0]), [0.5])
    assert np.array_equal(interp.coefficients, [0.5])
    assert interp.jitter == 0.0

    t = 1.7
    pair = interpolation.solve(interpolation.assemble(kernel, [-t, t]), [0.3, 0.3])
    assert math.isclose(pair.coefficients[0], pair.coefficients[1], rel_tol=1e-14)

    single = interpolation.Interpolant(kernel, nodes.from_points([0.0]), np.array([1.0]), np.array([1.0]))
    assert math.isclose(interpolation.evaluate(single, [2.0]), E_INV, rel_tol=1e-15)
    zero = interpolation.Interpolant(kernel, nodes.from_points([0.0, 3.0]), np.zeros(2), np.zeros(2))
    assert not np.any(zero.values(np.linspace(-5, 5, 11)))


def test_interpolation_condition():
    f = bandlimited.synthesize("random_smooth", 0.5, 1, seed=0)
    grid = _kadec_129()
    assert len(grid) == 129
    samples = f.values(grid.points)
    tolerance = 1e-8 * (1.0 + np.abs(samples).max())
    for kernel in _collocation_kernels():
        interp = interpolation.interpolate(kernel, grid, f)
        assert interp.node_residual <= tolerance, kernel
        assert interp.jitter == 0.0, kernel
        at_nodes = interp.values(grid.points)
        assert np.abs(at_nodes - samples).max() <= 10 * tolerance
        assert interp.condition_estimate >= 1.0


def test_indicator_small_residual():
    kernel = make_kernel("gaussian", 1, 4.0)
    grid = nodes.kadec_1d(0.95, (-32, 32), 0.2, seed=7)
    interp = interpolation.interpolate(kernel, grid, bandlimited.synthesize("indicator", 0.5, 1))
    assert len(grid) == 65 and interp.node_residual < 1e-8


def test_positive_definiteness():
    rng = np.random.default_rng(0)
    grid = _kadec_129()
    for kernel in _collocation_kernels():
        system = interpolation.assemble(kernel, grid)
        for _ in range(5):
            subset = np.sort(rng.choice(len(grid), 16, replace=False))
            assert np.linalg.eigvalsh(system.matrix[np.ix_(subset, subset)]).min() > 0
        for _ in range(20):
            a = rng.standard_normal(len(grid))
            assert a @ system.matrix @ a > 0
        system.factorize()
        assert system.jitter == 0.0
        assert np.all(np.diag(system._factor[0]) > 0)


def test_random_configurations_factorize():
    rng = np.random.default_rng(3)
    families = [("gaussian", {}), ("imq", {"nu": 1.5}), ("pexp", {"p": 1.0})]
    for k in range(20):
        family, extra = families[k % 3]
        grid = nodes.kadec_1d(0.95, (0, int(rng.integers(4, 64))), 0.2, seed=k)
        system = interpolation.assemble(make_kernel(family, 1, 1.0 + k % 4, **extra), grid).factorize()
        assert system.jitter == 0.0 and system.condition_estimate >= 1.0


def test_permutation_uniqueness():
    kernel = make_kernel("imq", 1, 2.0, nu=1.5)
    grid = nodes.kadec_1d(0.95, (-20, 20), 0.2, seed=2)
    f = bandlimited.synthesize("cosine_bump", 0.5, 1)
    base = interpolation.interpolate(kernel, grid, f)
    order = np.random.default_rng(5).permutation(len(grid))
    shuffled = interpolation.interpolate(kernel, nodes.from_points(grid.points[order]), f)
    assert np.allclose(shuffled.coefficients, base.coefficients[order], rtol=0, atol=1e-10)


def test_linearity():
    kernel = make_kernel("gaussian", 1, 2.0)
    grid = nodes.kadec_1d(0.95, (-20, 20), 0.2, seed=4)
    system = interpolation.assemble(kernel, grid)
    rng = np.random.default_rng(6)
    s1, s2, t = rng.standard_normal(len(grid)), rng.standard_normal(len(grid)), -1.75
    combined = system.solve(s1 + t * s2).coefficients
    separate = system.solve(s1).coefficients + t * system.solve(s2).coefficients
    assert np.allclose(combined, separate, rtol=0, atol=1e-10)


def test_averaged_trivial_cases():
    kernel = make_kernel("gaussian", 1, 1.0)
    f = bandlimited.synthesize("random_smooth", 0.5, 1, seed=1)
    grid = nodes.kadec_1d(0.95, (-16, 16), 0.2, seed=7)
    x = np.linspace(-40, 40, 33)
    single = interpolation.interpolate(kernel, grid, f).values(x)
    assert np.allclose(interpolation.averaged(kernel, [grid], f).values(x), single, rtol=0, atol=1e-14)
    assert np.allclose(interpolation.averaged(kernel, [grid, grid], f).values(x), single, rtol=0, atol=1e-14)


def test_averaged_is_not_an_interpolant():
    kernel = make_kernel("gaussian", 1, 1.0)
    f = bandlimited.synthesize("random_smooth", 0.5, 1, seed=0)
    first = nodes.kadec_1d(0.95, (-64, 64), 0.2, seed=7)
    second = nodes.kadec_1d(0.95, (-64, 64), 0.2, seed=11)
    approximant = interpolation.averaged(kernel, [first, second], f)
    union = nodes.union([first, second])
    truth = f.values(union)
    mismatch = np.abs(approximant.values(union) - truth).max()
    assert mismatch > 10 * 1e-8 * (1.0 + np.abs(truth).max())
    assert approximant.jitter == 0.0
    assert math.isclose(approximant.eval(first.points[3]), approximant.values(first.points[3:4])[0], rel_tol=1e-14)


def test_averaged_labels_failing_set():
    kernel = make_kernel("gaussian", 1, 1.0)
    f = bandlimited.synthesize("indicator", 0.5, 1)
    axis = nodes.kadec_1d(0.95, (-4, 4), 0.0, seed=0)
    planar = nodes.tensor([axis, axis])
    try:
        interpolation.averaged(kernel, [planar], f)
    except AveragedSolveError as e:
        assert e.index == 0
    else:
        raise AssertionError("node set of the wrong dimension accepted")
    try:
        interpolation.averaged(kernel, [axis, planar], f)
    except GeometryError:
        pass
    else:
        raise AssertionError("mixed dimensions accepted")


def test_spectral_quadratic_form():
    grid = nodes.kadec_1d(0.95, (-4, 4), 0.2, seed=9)
    a = np.random.default_rng(8).standard_normal(len(grid))
    for kernel in (make_kernel("gaussian", 1, 1.0), make_kernel("imq", 1, 1.0, nu=1.5)):
        direct = a @ interpolation.assemble(kernel, grid).matrix @ a
        fourier = interpolation.spectral_quadratic_form(kernel, grid, a)
        assert fourier > 0
        assert math.isclose(fourier, direct, rel_tol=1e-6), kernel


def test_interpolant_csv():
    kernel = make_kernel("gaussian", 1, 1.0)
    grid = nodes.kadec_1d(0.95, (0, 4), 0.1, seed=3)
    interp = interpolation.interpolate(kernel, grid, bandlimited.synthesize("cosine_bump", 0.5, 1))
    with tempfile.TemporaryDirectory() as tmp:
        path = interp.to_csv(Path(tmp) / "interpolant.csv")
        with open(path, newline="") as f:
            rows = list(csv.reader(f))
    assert rows[0] == ["index", "x1", "coefficient", "sample"]
    assert len(rows) == 6
    assert float(rows[2][2]) == interp.coefficients[1]


if __name__ == "__main__":
    print("🧪 Testing interpolation\n")
    for name, test in [(k, v) for k, v in list(globals().items()) if k.startswith("test_")]:
        test()
        print(f"✅ {name}")
