"""
Tests for saddle points, the log-scale sigma estimate and closed-form asymptotics.

Usage:
    python -m tests.test_asymptotics
"""

import argparse
import math

from .runner import run_tests, summarize

H = 1.0 / 256


def _expect_domain_error(func, *args) -> None:
    from smoothphi.core import DomainError

    try:
        func(*args)
    except DomainError:
        return
    raise AssertionError(f"{getattr(func, '__name__', func)}{args} should raise DomainError")


def test_iterated_log() -> bool:
    """log_0 is the identity; non-positive intermediates are rejected."""
    from smoothphi.numerics import iterated_log

    assert iterated_log(0, 5.0) == 5.0
    assert abs(iterated_log(1, math.e) - 1.0) < 1e-15
    assert abs(iterated_log(2, math.e ** math.e) - 1.0) < 1e-12
    assert abs(iterated_log(3, 1e10) - math.log(math.log(math.log(1e10)))) < 1e-15

    _expect_domain_error(iterated_log, 2, math.e)
    _expect_domain_error(iterated_log, 1, -1.0)
    _expect_domain_error(iterated_log, -1, 10.0)
    return True


def test_hspec_families() -> bool:
    """Built-in growth functions, their index n and zeta."""
    from smoothphi.numerics import HSpec, hspec_for_level

    assert abs(HSpec.u_log_u().evaluate(math.e) - math.e) < 1e-14
    assert abs(HSpec.dickman().evaluate(math.e) - 1.0) < 1e-14
    assert abs(HSpec.iterated(1).evaluate(math.e ** math.e) - math.e) < 1e-12

    assert HSpec.dickman().n == 1.0 and abs(HSpec.dickman().zeta - math.e) < 1e-15
    assert HSpec.iterated(2).n == 0.0 and HSpec.iterated(2).zeta == 1.0

    assert hspec_for_level(0).name == 'dickman'
    assert hspec_for_level(3).name == 'iterated_3'
    return True


def test_hspec_domains() -> bool:
    """Evaluation outside the domain, or at non-positive h, is a domain error."""
    from smoothphi.numerics import HSpec

    _expect_domain_error(HSpec.u_log_u().evaluate, 0.5)
    # log log 2 < 0
    _expect_domain_error(HSpec.iterated(1).evaluate, 2.0)
    _expect_domain_error(HSpec.iterated, 0)
    _expect_domain_error(HSpec, 'negative', lambda v: v, -1.0)
    _expect_domain_error(HSpec, 'infinite', lambda v: v, math.inf)
    return True


def test_hspec_tabulated() -> bool:
    """Piecewise-linear h through a table."""
    from smoothphi.numerics import HSpec

    h = HSpec.tabulated([1.0, 2.0, 3.0], [1.0, 2.0, 2.0], n=1.0)
    assert h.evaluate(1.5) == 1.5
    assert h.evaluate(2.5) == 2.0
    _expect_domain_error(h.evaluate, 4.0)
    _expect_domain_error(HSpec.tabulated, [1.0, 2.0], [2.0, 1.0], 1.0)
    _expect_domain_error(HSpec.tabulated, [2.0, 1.0], [1.0, 2.0], 1.0)
    _expect_domain_error(HSpec.tabulated, [1.0, 2.0], [0.0, 1.0], 1.0)
    return True


def test_prop3_xi() -> bool:
    """log(u)/T, directly and with T read off a compact grid."""
    from smoothphi.numerics import dickman_rho, indicator_chi, prop3_for_chi, prop3_xi

    assert abs(prop3_xi(2.0, math.e ** 2) - 1.0) < 1e-15
    assert abs(prop3_for_chi(indicator_chi(2.0, 4.0, H), math.e ** 2) - 1.0) < 1e-15

    _expect_domain_error(prop3_xi, 1.0, 10.0)
    _expect_domain_error(prop3_xi, 2.0, 1.0)
    _expect_domain_error(prop3_for_chi, dickman_rho(3.0, 1 / 32), 10.0)
    return True


def test_prop4_sigma() -> bool:
    """-u log h(zeta log u), HSpec inputs only."""
    from smoothphi.numerics import HSpec, prop4_sigma

    u = 100.0
    log_u = math.log(u)
    expected = -u * math.log(log_u * (1.0 + math.log(log_u)))
    assert abs(prop4_sigma(HSpec.dickman(), u) - expected) < 1e-10

    big = 1e7
    arg = math.e * math.log(big)
    expected = -big * math.log(arg * math.log(arg))
    assert abs(prop4_sigma(HSpec.u_log_u(), big) / expected - 1.0) < 1e-12

    _expect_domain_error(prop4_sigma, "dickman", u)
    _expect_domain_error(prop4_sigma, HSpec.dickman(), 1.0)
    return True


def test_predicted_log_sigma() -> bool:
    """k = 0 is the rho asymptotic; k >= 1 goes through prop4_sigma."""
    from smoothphi.numerics import HSpec, predicted_log_sigma, prop4_sigma

    u = 50.0
    assert abs(predicted_log_sigma(0, u) - (-u * math.log(u * math.log(u) / math.e))) < 1e-10
    assert predicted_log_sigma(1, u) == prop4_sigma(HSpec.dickman(), u)
    assert predicted_log_sigma(2, 1e7) == prop4_sigma(HSpec.iterated(1), 1e7)

    # log log log 10 < 0
    _expect_domain_error(predicted_log_sigma, 2, 10.0)
    _expect_domain_error(predicted_log_sigma, 0, 1.0)
    return True


def test_solve_xi_basics() -> bool:
    """Residual within tolerance, xi increasing in u, xi = 0 at u = T - 1."""
    from smoothphi.numerics import XI_HEADER, indicator_chi, solve_xi

    chi = indicator_chi(2.0, 4.0, H)
    zero = solve_xi(chi, 1.0)
    assert abs(zero.xi) < 1e-9
    assert zero.truncation_T == 2.0

    previous = -math.inf
    for u in (0.5, 1.0, 2.0, 10.0, 100.0, 1e4):
        result = solve_xi(chi, u)
        assert result.residual <= 1e-9 * u, result
        assert result.xi > previous
        previous = result.xi
        assert len(result.to_row()) == len(XI_HEADER)

    assert solve_xi(chi, 0.5).xi < 0
    return True


def test_solve_xi_noncompact() -> bool:
    """A non-compact chi integrates up to its tail cutoff."""
    from smoothphi.numerics import dickman_rho, solve_xi

    rho = dickman_rho(20.0, 1 / 64)
    result = solve_xi(rho, 10.0)
    assert result.residual <= 1e-8
    assert result.xi > 0
    assert 1.0 < result.truncation_T <= 20.0
    return True


def test_solve_xi_errors() -> bool:
    """chi vanishing beyond 1 and u <= 0 are domain errors."""
    from smoothphi.numerics import indicator_chi, solve_xi

    _expect_domain_error(solve_xi, indicator_chi(1.0, 4.0, H), 5.0)
    _expect_domain_error(solve_xi, indicator_chi(2.0, 4.0, H), 0.0)
    return True


def test_xi_approaches_log_u_over_T() -> bool:
    """solve_xi / prop3_xi tends to 1 for the indicators of [0, 2] and [0, 3]."""
    from smoothphi.numerics import indicator_chi, prop3_xi, solve_xi

    chi = indicator_chi(2.0, 4.0, H)
    ratios = [solve_xi(chi, u).xi / prop3_xi(2.0, u) for u in (1e2, 1e3, 1e4)]
    assert ratios[0] > ratios[1] > ratios[2] > 1.0, ratios
    assert 0.8 <= ratios[2] <= 1.2, ratios

    # log(xi)/log(u) still grows at small u for T = 3; compare further out
    chi = indicator_chi(3.0, 4.0, H)
    near = solve_xi(chi, 1e4).xi / prop3_xi(3.0, 1e4)
    far = solve_xi(chi, 1e8).xi / prop3_xi(3.0, 1e8)
    assert 0.8 <= near <= 1.2, near
    assert 1.0 < far < near, (near, far)
    return True


def test_sigma_estimate_against_solver() -> bool:
    """log sigma from the solver and the saddle estimate agree within 10%."""
    from smoothphi.numerics import dickman_rho, indicator_chi, sigma_estimate, solve_sigma

    u = 15.0
    rho = dickman_rho(u, H)
    exact = rho.log_at(u)
    estimate = sigma_estimate(indicator_chi(1.0, u, H), u)
    assert abs(exact - estimate) / abs(exact) <= 0.10, (exact, estimate)

    chi = indicator_chi(2.0, u, H)
    exact = solve_sigma(chi, u, H).log_at(u)
    estimate = sigma_estimate(chi, u)
    assert 0.9 <= exact / estimate <= 1.1, (exact, estimate)

    u, h = 45.0, 1 / 64
    chi = indicator_chi(3.0, u, h)
    exact = solve_sigma(chi, u, h).log_at(u)
    estimate = sigma_estimate(chi, u)
    assert 0.9 <= exact / estimate <= 1.1, (exact, estimate)

    assert sigma_estimate(chi, 0.5) == 0.0
    return True


def test_dickman_xi() -> bool:
    """e^xi = 1 + u xi, with xi = 0 at u = 1 and xi < 0 below."""
    from smoothphi.numerics import dickman_xi

    assert abs(dickman_xi(1.0)) < 1e-9
    assert dickman_xi(0.5) < 0
    for u in (2.0, 15.0, 1e3):
        xi = dickman_xi(u)
        assert abs(math.exp(xi) / (1.0 + u * xi) - 1.0) < 1e-8, u
    return True


def test_growth_bound() -> bool:
    """The growth bound holds on a small grid of T, u and eps."""
    from smoothphi.numerics import indicator_chi, lemma51_check

    for T in (2.0, 3.0):
        chi = indicator_chi(T, 4.0, H)
        for u in (10.0, 100.0, 1000.0):
            for eps in (0.1, 0.5):
                lhs, rhs = lemma51_check(chi, u, eps)
                assert lhs >= rhs, f"T={T} u={u} eps={eps}: {lhs} < {rhs}"

    # C = 2 for T = 3, so u must be at least 4
    _expect_domain_error(lemma51_check, indicator_chi(3.0, 4.0, H), 3.0, 0.1)
    _expect_domain_error(lemma51_check, indicator_chi(2.0, 4.0, H), 10.0, 0.0)
    return True


def test_second_order_density() -> bool:
    """rho(2) + (1 - gamma) rho(1) / log 10^6."""
    from smoothphi.numerics import dickman_rho, second_order_density

    rho = dickman_rho(3.0, H)
    value = second_order_density(rho, 2.0, 1e6)
    assert abs(value - 0.33745) < 1e-4, value

    _expect_domain_error(second_order_density, rho, 0.5, 1e6)
    _expect_domain_error(second_order_density, rho, 2.0, 1.0)
    return True


def test_support_end() -> bool:
    """Last nonzero grid point of a compact chi."""
    from smoothphi.numerics import dickman_rho, indicator_chi, support_end, vanishes_beyond_one

    assert support_end(indicator_chi(2.5, 4.0, H)) == 2.5
    assert vanishes_beyond_one(indicator_chi(1.0, 4.0, H))
    assert not vanishes_beyond_one(indicator_chi(1.5, 4.0, H))
    _expect_domain_error(support_end, dickman_rho(3.0, 1 / 32))
    return True


TESTS = [
    ("Iterated logarithm", test_iterated_log),
    ("Growth function families", test_hspec_families),
    ("Growth function domains", test_hspec_domains),
    ("Tabulated growth function", test_hspec_tabulated),
    ("Compact-support saddle point", test_prop3_xi),
    ("Growth-function estimate", test_prop4_sigma),
    ("Predicted log sigma", test_predicted_log_sigma),
    ("Saddle point basics", test_solve_xi_basics),
    ("Saddle point, non-compact chi", test_solve_xi_noncompact),
    ("Saddle point errors", test_solve_xi_errors),
    ("xi tends to log(u)/T", test_xi_approaches_log_u_over_T),
    ("Estimate against solver", test_sigma_estimate_against_solver),
    ("Dickman saddle point", test_dickman_xi),
    ("Growth bound", test_growth_bound),
    ("Second-order density", test_second_order_density),
    ("Support end", test_support_end),
]


def main():
    parser = argparse.ArgumentParser(description='Asymptotics tests')
    parser.parse_args()

    passed, failed = run_tests("Saddle points and asymptotics", TESTS)
    summarize(passed, failed)


if __name__ == '__main__':
    main()
