import math
from fractions import Fraction

import numpy as np
import pytest

from relconv.convexity import (
    check_almost_convex,
    check_almost_convex_anchored,
    check_endpoint_reduction,
    check_mean_inequality,
    check_sharpened,
    check_under_parabola,
    make_tent,
    sample_concave,
)
from relconv.extremal import majorant_grid, majorant_values, parabola_grid
from relconv.grid import GridFunction


def scaled(f: GridFunction, t: float) -> GridFunction:
    return GridFunction(f.N, t * f.floats(), label=f"{t}*{f.label}")


class TestAlmostConvex:
    def test_majorant_grid_is_member(self):
        assert not check_almost_convex(majorant_grid(256))

    def test_doubled_majorant_violates(self):
        violations = check_almost_convex(scaled(majorant_grid(64), 2.0))
        assert violations
        v = violations[0]
        assert v.slack < 0 and v.a <= v.b <= v.c

    def test_zero_function_is_member_exactly(self):
        f = GridFunction(8, [Fraction(0)] * 9)
        out = check_almost_convex(f)
        assert not out
        assert out.max_slack <= 0.0

    def test_exact_and_float_modes_agree(self):
        f = make_tent(Fraction(1, 4), Fraction(4, 5), 16)
        exact = check_almost_convex(f)
        floaty = check_almost_convex(GridFunction(16, f.floats()))
        assert [(v.a, v.b, v.c) for v in exact] == [(v.a, v.b, v.c) for v in floaty]

    def test_violations_are_sorted(self):
        violations = check_almost_convex(scaled(majorant_grid(48), 3.0))
        keys = [(v.a, v.b, v.c) for v in violations]
        assert keys == sorted(keys)


class TestAnchored:
    def test_majorant_grid_is_member(self):
        assert not check_almost_convex_anchored(majorant_grid(128))

    def test_constant_fails_only_at_endpoints(self):
        f = GridFunction(16, np.full(17, 0.5))
        violations = check_almost_convex_anchored(f)
        assert [(v.a, v.b, v.c) for v in violations] == [(0, 0, 0), (16, 16, 16)]

    def test_tall_tent_fails(self):
        assert check_almost_convex_anchored(make_tent(Fraction(1, 4), Fraction(4, 5), 64))


class TestMeanInequality:
    def test_majorant_passes_exhaustive_pairs(self):
        assert not check_mean_inequality(majorant_grid(128), 2)

    def test_bumped_midpoint_fails_pairs(self):
        f = majorant_grid(64).floats().copy()
        f[32] += 0.5
        violations = check_mean_inequality(GridFunction(64, f), 2)
        assert violations
        assert all(lo <= 32 <= hi for lo, hi in (v.xs for v in violations))

    def test_majorant_passes_sampled_tuples(self):
        assert not check_mean_inequality(majorant_grid(240), 5, samples=20_000, seed=1)

    def test_sampling_is_seed_reproducible(self):
        f = majorant_grid(48).floats().copy()
        f[24] += 0.4
        g = GridFunction(48, f)
        a = check_mean_inequality(g, 3, samples=5_000, seed=42)
        b = check_mean_inequality(g, 3, samples=5_000, seed=42)
        assert a == b and a

    def test_m_validation(self):
        with pytest.raises(ValueError):
            check_mean_inequality(majorant_grid(16), 1)


class TestSharpened:
    def test_majorant_grid_passes(self):
        assert not check_sharpened(majorant_grid(128))

    def test_convex_functions_pass(self):
        x = np.arange(65) / 64
        assert not check_sharpened(GridFunction(64, x**2))
        assert not check_sharpened(GridFunction(64, np.abs(2 * x - 1) - 1.0))

    def test_full_spread_triples_are_tight(self):
        N = 128
        f = majorant_grid(N).floats()
        b = np.arange(1, N)
        rhs = majorant_values((N - b) / N)
        assert np.max(np.abs(rhs - f[1:N])) < 1e-9

    def test_scaled_majorant_fails(self):
        assert check_sharpened(scaled(majorant_grid(64), 2.0))


class TestTent:
    def test_symmetric_tent_values(self):
        t = make_tent(Fraction(1, 2), 1, 4)
        assert t.values == [Fraction(0), Fraction(1, 2), Fraction(1), Fraction(1, 2), Fraction(0)]

    def test_apex_touching_parabola_is_member(self):
        t = make_tent(Fraction(1, 4), Fraction(3, 4), 8)
        assert t[2] == Fraction(3, 4)
        assert not check_almost_convex_anchored(t)

    def test_apex_above_parabola_fails_at_doubling_triple(self):
        t = make_tent(Fraction(1, 4), Fraction(19, 25), 8)
        triples = {(v.a, v.b, v.c) for v in check_almost_convex_anchored(t)}
        assert (0, 2, 4) in triples

    def test_offgrid_apex_rejected(self):
        with pytest.raises(ValueError):
            make_tent(Fraction(1, 3), 1, 8)
        with pytest.raises(ValueError):
            make_tent(Fraction(1, 4), -1, 8)


class TestUnderParabola:
    def test_parabola_itself_passes_and_is_member(self):
        g = parabola_grid(32, exact=True)
        assert check_under_parabola(g)
        assert not check_almost_convex_anchored(g)

    def test_scaled_sine_passes_and_is_member(self):
        N = 64
        f = GridFunction(N, (2.0 / math.pi) * np.sin(np.pi * np.arange(N + 1) / N))
        assert check_under_parabola(f)
        assert not check_almost_convex_anchored(f)

    def test_tall_tent_fails(self):
        assert not check_under_parabola(make_tent(Fraction(1, 4), Fraction(19, 25), 16))

    def test_preconditions(self):
        x = np.arange(17) / 16
        with pytest.raises(ValueError):
            check_under_parabola(GridFunction(16, x**2))  # convex
        with pytest.raises(ValueError):
            check_under_parabola(GridFunction(16, np.full(17, 0.5)))  # endpoints


class TestEndpointReduction:
    def test_majorant_grid(self):
        assert check_endpoint_reduction(majorant_grid(64)) == (True, True)

    def test_doubled_majorant(self):
        assert check_endpoint_reduction(scaled(majorant_grid(64), 2.0)) == (False, False)

    def test_zero_function(self):
        f = GridFunction(8, [Fraction(0)] * 9)
        assert check_endpoint_reduction(f) == (True, True)

    def test_concavity_required(self):
        x = np.arange(17) / 16
        with pytest.raises(ValueError):
            check_endpoint_reduction(GridFunction(16, x**2))

    def test_endpoint_check_is_decisive_for_concave_functions(self):
        # mixed caps and scalings, including samples far outside the class
        N = 48
        caps = [None, parabola_grid(N), majorant_grid(N)]
        outcomes = {True: 0, False: 0}
        for seed in range(1000):
            f = sample_concave(N, seed, cap=caps[seed % 3])
            g = scaled(f, (0.5, 1.0, 2.0, 4.0)[seed % 4])
            endpoint_ok, full_ok = check_endpoint_reduction(g)
            assert not endpoint_ok or full_ok
            if not full_ok:
                assert not endpoint_ok
            outcomes[full_ok] += 1
        assert outcomes[True] and outcomes[False]


class TestPerturbationIdentity:
    def test_identity_holds_for_random_cubics(self):
        rng = np.random.default_rng(123)
        for _ in range(500):
            a, b, c, d = rng.normal(size=4)
            f = lambda t: a + b * t + c * t * t + d * t**3
            x1, x2, lam, eps = rng.random(4)
            eps = 0.01 + eps
            fe = lambda t: (f(t) - eps * t * t) / (1.0 + eps)
            mid = lam * x1 + (1 - lam) * x2
            delta = f(mid) - lam * f(x1) - (1 - lam) * f(x2) - abs(x2 - x1)
            delta_eps = fe(mid) - lam * fe(x1) - (1 - lam) * fe(x2) - abs(x2 - x1)
            rebuilt = (1 + eps) * delta_eps + eps * abs(x2 - x1) * (1 - lam * (1 - lam) * abs(x2 - x1))
            assert abs(delta - rebuilt) < 1e-10


class TestSampleConcave:
    def test_minimal_grid_shape(self):
        f = sample_concave(2, 5)
        assert f[0] == 0.0 and f[2] == 0.0 and f[1] >= 0.0

    def test_deterministic_per_seed(self):
        a = sample_concave(32, 11).floats()
        b = sample_concave(32, 11).floats()
        assert np.array_equal(a, b)
        assert not np.array_equal(a, sample_concave(32, 12).floats())

    def test_concave_with_zero_endpoints(self):
        for seed in range(20):
            v = sample_concave(64, seed).floats()
            assert v[0] == 0.0 and v[-1] == 0.0
            assert np.all(v[:-2] - 2 * v[1:-1] + v[2:] <= 1e-12)

    def test_cap_is_respected_and_gives_members(self):
        cap = parabola_grid(64)
        for seed in range(50):
            f = sample_concave(64, seed, cap=cap)
            assert np.all(f.floats() <= cap.floats() + 1e-12)
            assert not check_almost_convex_anchored(f)

    def test_capped_samples_stay_below_majorant(self):
        # maximality seen computationally: under-parabola concave samples are
        # class members, so the majorant dominates every one of them
        cap = parabola_grid(128)
        mg = majorant_grid(128).floats()
        for seed in range(1000):
            f = sample_concave(128, seed, cap=cap)
            assert np.all(f.floats() <= mg + 1e-9)

    def test_cap_resolution_mismatch(self):
        with pytest.raises(ValueError):
            sample_concave(16, 0, cap=parabola_grid(32))
