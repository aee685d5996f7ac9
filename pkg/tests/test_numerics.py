"""Quadrature and root-bracketing utility tests."""

import math

import pytest

from rindler_purcell.errors import BracketingError, QuadratureError
from rindler_purcell.numerics import (
    adaptive_simpson,
    bracketed_root,
    frequency_spacing_scan,
)


class TestAdaptiveSimpson:
    def test_cubic_is_exact(self):
        # Simpson integrates cubics exactly panel by panel
        got = adaptive_simpson(lambda x: x**3 - 2 * x + 1, -1.0, 2.0)
        want = (2.0**4 / 4 - 4.0 + 2.0) - (0.25 - 1.0 - 1.0)
        assert abs(got - want) < 1e-13

    def test_sine(self):
        got = adaptive_simpson(math.sin, 0.0, math.pi)
        assert abs(got - 2.0) < 1e-11

    def test_exponential_tight_tolerance(self):
        got = adaptive_simpson(math.exp, 0.0, 3.0, rel_tol=1e-12, abs_tol=0.0)
        want = math.exp(3.0) - 1.0
        assert abs(got - want) / want < 1e-11

    def test_empty_interval(self):
        assert adaptive_simpson(math.exp, 1.0, 1.0) == 0.0

    def test_reversed_interval_flips_sign(self):
        fwd = adaptive_simpson(math.sin, 0.0, 2.0)
        assert adaptive_simpson(math.sin, 2.0, 0.0) == -fwd

    def test_sharp_peak(self):
        # narrow Lorentzian: adaptivity must find the spike
        w = 1e-3
        got = adaptive_simpson(
            lambda x: w / (x * x + w * w), -1.0, 1.0, rel_tol=1e-10
        )
        want = 2.0 * math.atan(1.0 / w)
        assert abs(got - want) / want < 1e-9

    def test_oscillatory_needs_seeding(self):
        # 64 full periods over the range: a coarse bootstrap mesh aliases
        # (halving a whole-period panel reproduces the same wrong value),
        # while a seeded mesh resolves the oscillation.
        c = 64 * math.pi / 0.2
        f = lambda w: math.sin(c * w) ** 2
        want = 0.1 - math.sin(2 * c * 0.2) / (4 * c)
        seeded = adaptive_simpson(
            f, 0.0, 0.2, rel_tol=1e-7, abs_tol=1e-9, initial_panels=256
        )
        assert abs(seeded - want) / want < 1e-6
        aliased = adaptive_simpson(f, 0.0, 0.2, rel_tol=1e-7, abs_tol=1e-9)
        assert abs(aliased - want) / want > 0.1  # documents the hazard

    def test_panel_budget(self):
        with pytest.raises(QuadratureError):
            adaptive_simpson(
                lambda x: math.sin(1.0 / (x + 1e-6)),
                0.0,
                1.0,
                rel_tol=1e-14,
                abs_tol=0.0,
                max_panels=50,
            )

    def test_integrand_errors_propagate(self):
        class Boom(RuntimeError):
            pass

        def f(x):
            if x > 0.5:
                raise Boom()
            return 1.0

        with pytest.raises(Boom):
            adaptive_simpson(f, 0.0, 1.0)


class TestBracketedRoot:
    def test_simple_root(self):
        got = bracketed_root(math.cos, 1.0, 2.0)
        assert abs(got - math.pi / 2) < 1e-13

    def test_endpoint_zero_returned(self):
        f = lambda x: x - 1.0
        assert bracketed_root(f, 1.0, 2.0) == 1.0
        assert bracketed_root(f, 0.0, 1.0) == 1.0

    def test_no_sign_change(self):
        with pytest.raises(BracketingError) as exc_info:
            bracketed_root(lambda x: 1.0 + x * x, -1.0, 1.0)
        assert exc_info.value.window == (-1.0, 1.0)

    def test_tight_accuracy(self):
        # transcendental root: x = tan(x) near 4.49
        f = lambda x: x - math.tan(x)
        got = bracketed_root(f, 4.1, 4.6)
        assert abs(f(got)) < 1e-10


class TestFrequencySpacingScan:
    def test_counts_sign_changes(self):
        brackets = frequency_spacing_scan(math.sin, 0.1, 3 * math.pi + 0.1, 0.37)
        assert len(brackets) == 3
        for (lo, hi), root in zip(brackets, (math.pi, 2 * math.pi, 3 * math.pi)):
            assert lo < root < hi

    def test_zero_at_start_recorded(self):
        brackets = frequency_spacing_scan(math.sin, 0.0, 1.0, 0.2)
        assert brackets[0] == (0.0, 0.0)

    def test_exact_grid_zero_no_duplicate(self):
        # f hits zero exactly on a grid point; one degenerate bracket,
        # no spurious second bracket from the following sign comparison
        f = lambda x: x - 1.0
        brackets = frequency_spacing_scan(f, 0.5, 1.5, 0.25)
        assert brackets == [(1.0, 1.0)]

    def test_refinable_output(self):
        brackets = frequency_spacing_scan(math.cos, 0.0, 8.0, 0.5)
        roots = [
            lo if lo == hi else bracketed_root(math.cos, lo, hi)
            for lo, hi in brackets
        ]
        assert len(roots) == 3
        for root, want in zip(roots, (math.pi / 2, 3 * math.pi / 2, 5 * math.pi / 2)):
            assert abs(root - want) < 1e-12
