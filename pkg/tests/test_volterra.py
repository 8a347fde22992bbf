"""
Tests for grid functions and the delay integral equation solver.

Usage:
    python -m tests.test_volterra
"""

import argparse
import math

import numpy as np

from .runner import run_tests, summarize

H = 1.0 / 256


def test_dickman_rho_at_two() -> bool:
    """rho(2) = 1 - log 2 to 1e-6 at h = 1/256."""
    from smoothphi.numerics import dickman_rho

    rho = dickman_rho(3.0, H)
    assert abs(rho.value_at(2.0) - (1.0 - math.log(2.0))) <= 1e-6, rho.value_at(2.0)
    assert rho.value_at(0.5) == 1.0 and rho.value_at(1.0) == 1.0
    return True


def test_dickman_rho_refinement() -> bool:
    """Halving the step moves rho(3) by at most 1e-6."""
    from smoothphi.numerics import dickman_rho

    coarse = dickman_rho(3.0, H).value_at(3.0)
    fine = dickman_rho(3.0, H / 2).value_at(3.0)
    assert abs(coarse - fine) <= 1e-6, f"{coarse} vs {fine}"
    # rho(3) = 0.0486083882911...
    assert abs(fine - 0.0486083882911) < 1e-6
    return True


def test_dickman_rho_shape() -> bool:
    """rho is positive and non-increasing, with finite logs deep in the tail."""
    from smoothphi.numerics import dickman_rho

    rho = dickman_rho(20.0, 1 / 64)
    assert (rho.values > 0).all()
    assert (np.diff(rho.values) <= 1e-15).all()
    assert np.isfinite(rho.log_values).all()
    # rho(10) = 2.77017183772e-11
    fine = dickman_rho(10.0, H)
    assert abs(fine.value_at(10.0) / 2.77017183772e-11 - 1.0) < 1e-3
    return True


def test_log_space_switch() -> bool:
    """Forcing the log-space recurrence early leaves the values unchanged."""
    from smoothphi.numerics import dickman_rho

    linear = dickman_rho(8.0, 1 / 64)
    logged = dickman_rho(8.0, 1 / 64, log_threshold=0.5)
    assert np.allclose(linear.values, logged.values, rtol=1e-10, atol=0.0)
    return True


def test_deep_tail_keeps_logs() -> bool:
    """Beyond double-precision underflow the log values stay finite and decreasing."""
    from smoothphi.numerics import dickman_rho

    rho = dickman_rho(200.0, 1 / 16)
    assert rho.values[-1] == 0.0 or rho.values[-1] < 1e-300
    logs = rho.log_values
    assert np.isfinite(logs).all()
    assert logs[-1] < -700
    assert (np.diff(logs[16:]) < 0).all()
    return True


def test_richardson_ratio() -> bool:
    """Second-order convergence: the ratio for rho(2) is near 4."""
    from smoothphi.numerics import dickman_rho, richardson_ratio

    ratio = richardson_ratio(lambda h: dickman_rho(2.0, h), 2.0, 1 / 16)
    assert 3.5 < ratio < 4.5, ratio
    return True


def test_step_validation() -> bool:
    """Steps above 1/16 or with non-integral 1/h are rejected."""
    from smoothphi.core import DomainError
    from smoothphi.numerics import dickman_rho

    for bad in (1 / 8, 0.0, -1 / 32, 0.03):
        try:
            dickman_rho(3.0, bad)
        except DomainError:
            continue
        raise AssertionError(f"step {bad} should raise DomainError")

    try:
        dickman_rho(0.5, H)
    except DomainError:
        return True
    raise AssertionError("U < 1 should raise DomainError")


def test_indicator_two_is_rescaled_rho() -> bool:
    """chi = indicator of [0, 2] gives sigma(u) = rho(u/2)."""
    from smoothphi.numerics import dickman_rho, indicator_chi, solve_sigma

    sigma = solve_sigma(indicator_chi(2.0, 10.0, H), 10.0, H)
    rho = dickman_rho(5.0, H / 2)
    assert sigma.size == rho.size
    assert np.max(np.abs(sigma.values - rho.values)) <= 1e-5

    exact = dickman_rho(5.0, H)
    for u in (2.0, 4.0, 6.0, 10.0):
        assert abs(sigma.value_at(u) - exact.value_at(u / 2)) <= 1e-5, u
    return True


def test_indicator_one_is_rho() -> bool:
    """solve_sigma with the indicator of [0, 1] reproduces dickman_rho."""
    from smoothphi.numerics import dickman_rho, indicator_chi, solve_sigma

    sigma = solve_sigma(indicator_chi(1.0, 6.0, H), 6.0, H)
    rho = dickman_rho(6.0, H)
    assert np.allclose(sigma.values, rho.values, rtol=1e-12, atol=1e-15)
    return True


def test_all_ones_chi() -> bool:
    """chi = 1 everywhere keeps sigma = 1."""
    from smoothphi.numerics import GridFunction, solve_sigma

    chi = GridFunction(step=H, values=np.ones(int(8 / H) + 1))
    sigma = solve_sigma(chi, 8.0, H)
    assert np.allclose(sigma.values, 1.0, atol=1e-12)
    return True


def test_iterate_sigma() -> bool:
    """sigma_0 = rho and the family increases pointwise in k on [0, 10]."""
    from smoothphi.numerics import dickman_rho, iterate_sigma

    sigmas = iterate_sigma(3, 10.0, 1 / 64)
    assert [s.label for s in sigmas] == ['sigma_0', 'sigma_1', 'sigma_2', 'sigma_3']
    assert np.array_equal(sigmas[0].values, dickman_rho(10.0, 1 / 64).values)
    assert all(s.umax == 10.0 for s in sigmas)

    for upper, lower in zip(sigmas[1:], sigmas[:-1]):
        assert (upper.values >= lower.values - 1e-12).all()
        assert (np.diff(upper.values) <= 1e-15).all()
        assert (upper.values[:65] == 1.0).all()
        assert (upper.values >= 0).all() and (upper.values <= 1).all()
    return True


def test_sigma_one_half_step() -> bool:
    """sigma_1(2) from steps h and h/2 agrees to 1e-6 relative."""
    from smoothphi.numerics import iterate_sigma

    coarse = iterate_sigma(1, 2.0, H)[-1].value_at(2.0)
    fine = iterate_sigma(1, 2.0, H / 2)[-1].value_at(2.0)
    assert 0.75 < fine < 0.77, fine
    assert abs(coarse - fine) <= 1e-6 * fine, (coarse, fine)
    return True


def test_sigma_above_rho_when_chi_above() -> bool:
    """A larger chi gives a larger sigma."""
    from smoothphi.numerics import dickman_rho, indicator_chi, solve_sigma

    rho = dickman_rho(8.0, H)
    wide = solve_sigma(indicator_chi(2.0, 8.0, H), 8.0, H)
    assert (wide.values >= rho.values - 1e-12).all()
    return True


def test_step_mismatch() -> bool:
    """Mismatched chi steps are resampled or rejected per flag."""
    from smoothphi.core import DomainError
    from smoothphi.numerics import indicator_chi, solve_sigma

    chi = indicator_chi(2.0, 6.0, 1 / 128)
    resampled = solve_sigma(chi, 6.0, H, on_mismatch='resample')
    direct = solve_sigma(indicator_chi(2.0, 6.0, H), 6.0, H)
    assert abs(resampled.value_at(4.0) - direct.value_at(4.0)) < 1e-3

    try:
        solve_sigma(chi, 6.0, H, on_mismatch='reject')
    except DomainError:
        return True
    raise AssertionError("reject should raise on a step mismatch")


def test_short_chi_rejected() -> bool:
    """A non-compact chi shorter than the horizon is a domain error."""
    from smoothphi.core import DomainError
    from smoothphi.numerics import GridFunction, solve_sigma

    chi = GridFunction(step=H, values=np.ones(int(2 / H) + 1))
    try:
        solve_sigma(chi, 5.0, H)
    except DomainError:
        return True
    raise AssertionError("short chi should raise DomainError")


def test_invalid_chi_rejected() -> bool:
    """chi must start at 1, equal 1 on [0, 1) and stay in [0, 1]."""
    from smoothphi.core import DomainError
    from smoothphi.numerics import GridFunction, solve_sigma

    n = int(4 / H) + 1
    bad_head = np.ones(n)
    bad_head[10] = 0.5
    too_big = np.ones(n)
    too_big[-1] = 1.5

    for values in (bad_head, too_big):
        try:
            solve_sigma(GridFunction(step=H, values=values), 4.0, H)
        except DomainError:
            continue
        raise AssertionError("invalid chi should raise DomainError")
    return True


def test_quadrature_residual() -> bool:
    """The solved grids satisfy the discrete equation to roundoff."""
    from smoothphi.numerics import indicator_chi, iterate_sigma, quadrature_residual

    sigmas = iterate_sigma(2, 8.0, 1 / 64)
    chi = indicator_chi(1.0, 8.0, 1 / 64)
    assert quadrature_residual(sigmas[0], chi) < 1e-6
    assert quadrature_residual(sigmas[1], sigmas[0]) < 1e-6
    assert quadrature_residual(sigmas[2], sigmas[1]) < 1e-6
    return True


def test_grid_interpolation() -> bool:
    """value_at interpolates, compact grids vanish past their end."""
    from smoothphi.core import DomainError
    from smoothphi.numerics import GridFunction, indicator_chi

    g = GridFunction(step=0.5, values=[1.0, 0.5, 0.25])
    assert g.umax == 1.0 and g.size == 2
    assert g.value_at(0.25) == 0.75
    assert abs(g.log_at(0.5) - math.log(0.5)) < 1e-15
    try:
        g.value_at(2.0)
    except DomainError:
        pass
    else:
        raise AssertionError("non-compact grid should not extend")

    chi = indicator_chi(2.0, 2.0, H)
    assert chi.value_at(1.5) == 1.0
    assert chi.value_at(2.0) == 0.5
    assert chi.value_at(3.0) == 0.0
    assert chi.log_at(3.0) == -math.inf
    return True


def test_grid_file_round_trip() -> bool:
    """u,value files: header, first row 0,1, uniform step restored exactly."""
    import os
    import tempfile
    from smoothphi.core import DomainError
    from smoothphi.numerics import GridFunction, dickman_rho

    rho = dickman_rho(3.0, 1 / 32)
    with tempfile.TemporaryDirectory() as tmp:
        path = os.path.join(tmp, 'rho.csv')
        text = rho.to_csv(path)
        assert text.startswith("u,value\n0,1\n")

        back = GridFunction.from_csv(path, label='rho')
        assert back.step == 1 / 32
        assert np.allclose(back.values, rho.values, rtol=1e-11, atol=0.0)

        bad = os.path.join(tmp, 'bad.csv')
        with open(bad, 'w') as f:
            f.write("u,value\n0,0.9\n0.5,0.8\n")
        try:
            GridFunction.from_csv(bad)
        except DomainError:
            return True
    raise AssertionError("first row other than 0,1 should raise DomainError")


def test_grid_file_errors() -> bool:
    """Malformed grid files raise DomainError naming the offending line."""
    import os
    import tempfile
    from smoothphi.core import DomainError
    from smoothphi.numerics import GridFunction

    cases = {
        'text.csv': ("u,value\n0,1\n0.5,one\n", ':3:'),
        'width.csv': ("u,value\n0,1\n0.5\n", ':3:'),
        'header.csv': ("x,y\n0,1\n0.5,1\n", 'header'),
        'nan.csv': ("u,value\n0,1\n0.5,nan\n", 'non-finite'),
    }
    with tempfile.TemporaryDirectory() as tmp:
        for name, (text, marker) in cases.items():
            path = os.path.join(tmp, name)
            with open(path, 'w') as f:
                f.write(text)
            try:
                GridFunction.from_csv(path)
            except DomainError as e:
                assert marker in e.message, (name, e.message)
                assert e.exit_code == 1
                continue
            raise AssertionError(f"{name} should raise DomainError")
    return True


def test_grid_file_jump() -> bool:
    """A declared jump restores the left-limit endpoint rule for file grids."""
    import os
    import tempfile
    from smoothphi.core import DomainError
    from smoothphi.numerics import GridFunction, indicator_chi, solve_sigma

    chi = indicator_chi(2.0, 2.0, H)
    direct = solve_sigma(indicator_chi(2.0, 10.0, H), 10.0, H)

    with tempfile.TemporaryDirectory() as tmp:
        path = os.path.join(tmp, 'chi.csv')
        chi.to_csv(path)

        declared = GridFunction.from_csv(path, compact=True, jump_at=2.0)
        assert declared.jump_index == chi.jump_index == int(2.0 / H)
        sigma = solve_sigma(declared, 10.0, H)
        assert np.max(np.abs(sigma.values - direct.values)) <= 1e-12

        plain = GridFunction.from_csv(path, compact=True)
        assert plain.jump_index is None
        midpoint = solve_sigma(plain, 10.0, H)
        assert np.max(np.abs(midpoint.values - direct.values)) > 1e-5

        for bad in (0.0, 2.001, 3.0):
            try:
                GridFunction.from_csv(path, compact=True, jump_at=bad)
            except DomainError:
                continue
            raise AssertionError(f"jump at {bad} should be rejected")
    return True


TESTS = [
    ("rho(2) accuracy", test_dickman_rho_at_two),
    ("rho(3) refinement", test_dickman_rho_refinement),
    ("rho shape", test_dickman_rho_shape),
    ("Log-space switch", test_log_space_switch),
    ("Deep tail logs", test_deep_tail_keeps_logs),
    ("Richardson ratio", test_richardson_ratio),
    ("Step validation", test_step_validation),
    ("Indicator [0,2] is rescaled rho", test_indicator_two_is_rescaled_rho),
    ("Indicator [0,1] is rho", test_indicator_one_is_rho),
    ("chi = 1 keeps sigma = 1", test_all_ones_chi),
    ("Iterated family", test_iterate_sigma),
    ("sigma_1(2) half step", test_sigma_one_half_step),
    ("Monotone in chi", test_sigma_above_rho_when_chi_above),
    ("Step mismatch", test_step_mismatch),
    ("Short chi", test_short_chi_rejected),
    ("Invalid chi", test_invalid_chi_rejected),
    ("Quadrature residual", test_quadrature_residual),
    ("Grid interpolation", test_grid_interpolation),
    ("Grid files", test_grid_file_round_trip),
    ("Grid file errors", test_grid_file_errors),
    ("Grid file jump", test_grid_file_jump),
]


def main():
    parser = argparse.ArgumentParser(description='Solver tests')
    parser.parse_args()

    passed, failed = run_tests("Delay integral equation solver", TESTS)
    summarize(passed, failed)


if __name__ == '__main__':
    main()
