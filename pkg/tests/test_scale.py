"""
Scale tests: structure invariants at x = 10^6, table memory and density
convergence.

These build tables up to 10^7 and take minutes; pytest runs them under the
`slow` marker (deselect with -m "not slow").

Usage:
    python -m tests.test_scale
    python -m tests.test_scale --quick
"""

import argparse
import math

import pytest

from .runner import run_tests, summarize

H = 1.0 / 256
X = 10**6


@pytest.mark.slow
def test_structure_invariants() -> bool:
    """Nesting, tower domination and the normalized gap for y in {50, 100, 500}."""
    from smoothphi.counting import build_pk_tower, phi_k_smooth_count, prop1_ratio, psi_set
    from smoothphi.sieve import build_spf, build_totient

    t = build_spf(X)
    tt = build_totient(X, t)

    for y in (50, 100, 500):
        tower = build_pk_tower(X, y, 3, t)
        for lower, upper in zip(tower, tower[1:]):
            assert lower.issubset(upper), f"y={y}: tower not nested"

        for k in range(4):
            psi_tower = psi_set(X, tower[k], t).count
            phi_count = phi_k_smooth_count(X, y, k, t, tt).count
            assert psi_tower >= phi_count, f"y={y} k={k}: {psi_tower} < {phi_count}"
            ratio = prop1_ratio(psi_tower, phi_count, X, y, k)
            assert ratio <= 10.0, f"y={y} k={k}: ratio {ratio}"
    return True


@pytest.mark.slow
def test_classical_density() -> bool:
    """Psi(10^6, 10^3)/10^6 near rho(2), and nearer the second-order density."""
    from smoothphi.counting import psi_smooth
    from smoothphi.numerics import dickman_rho, second_order_density
    from smoothphi.sieve import build_spf

    rho = dickman_rho(3.0, H)
    rho2 = rho.value_at(2.0)

    t = build_spf(X)
    density = psi_smooth(X, 1000, t).ratio
    assert abs(density - rho2) <= 0.15 * rho2, density

    corrected = second_order_density(rho, 2.0, X)
    assert abs(density - corrected) <= 0.05 * corrected, (density, corrected)

    # the gap to rho(2) shrinks with x
    small = psi_smooth(10**4, 100, t).ratio
    assert abs(small - rho2) > abs(density - rho2), (small, density)
    return True


@pytest.mark.slow
def test_table_memory() -> bool:
    """Building both tables to 10^7 peaks below 30 bytes per entry."""
    import tracemalloc
    from smoothphi.sieve import build_spf, build_totient

    limit = 10**7
    tracemalloc.start()
    try:
        t = build_spf(limit)
        tt = build_totient(limit, t)
        _, peak = tracemalloc.get_traced_memory()
    finally:
        tracemalloc.stop()

    assert int(tt.phi[limit]) == 4 * 10**6
    assert peak <= 30 * (limit + 1), f"peak {peak / 2**20:.0f} MiB"
    return True


def _phi1_gaps(exponents):
    from smoothphi.counting import phi_k_smooth_count
    from smoothphi.numerics import iterate_sigma
    from smoothphi.sieve import build_spf, build_totient

    sigma1 = iterate_sigma(1, 2.0, H)[-1].value_at(2.0)
    top = 10 ** max(exponents)
    t = build_spf(top)
    tt = build_totient(top, t)

    gaps = []
    for e in exponents:
        x = 10**e
        y = int(round(math.sqrt(x)))
        gaps.append(abs(phi_k_smooth_count(x, y, 1, t, tt).ratio - sigma1))
    return gaps


@pytest.mark.slow
def test_phi1_density_trend() -> bool:
    """|Phi_1(x, sqrt x)/x - sigma_1(2)| at x = 10^7 does not exceed the gap at 10^5."""
    gaps = _phi1_gaps((5, 6, 7))
    assert gaps[2] <= gaps[0], gaps
    return True


TESTS = [
    ("Structure invariants at 10^6", test_structure_invariants),
    ("Classical density", test_classical_density),
    ("Table memory at 10^7", test_table_memory),
    ("Phi_1 density trend", test_phi1_density_trend),
]


def main():
    parser = argparse.ArgumentParser(description='Scale tests')
    parser.add_argument('--quick', action='store_true',
                        help='Skip the 10^7 density trend')
    args = parser.parse_args()

    tests = TESTS[:3] if args.quick else TESTS
    passed, failed = run_tests("Scale", tests)
    summarize(passed, failed)


if __name__ == '__main__':
    main()
