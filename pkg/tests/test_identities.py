"""
Tests for the divisor-sum, log-sum and chain-sum identity families.

Usage:
    python -m tests.test_identities
"""

import argparse
import math
from fractions import Fraction

from .runner import run_tests, summarize


def test_divisor_sum_examples() -> bool:
    """Hand-checked cases of the divisor-sum identity."""
    from smoothphi.counting import lemma32_sides

    assert lemma32_sides(6, 2, 6) == (Fraction(-1, 3), Fraction(-1, 3))
    assert lemma32_sides(6, 2, 3) == (Fraction(-1, 2), Fraction(-1, 2))
    assert lemma32_sides(2, 2, 4) == (Fraction(-1, 2), Fraction(-1, 2))
    # d = 1: the inner sum collapses to the full truncated sum
    lhs, rhs = lemma32_sides(30, 1, 100)
    assert lhs == rhs
    return True


def test_divisor_sum_exhaustive_small() -> bool:
    """Exact equality for squarefree m <= 42 and x <= 60."""
    from smoothphi.counting import lemma32_sides
    from smoothphi.counting.identities import squarefree_upto

    for m in squarefree_upto(42):
        for d in (d for d in range(1, m + 1) if m % d == 0):
            for x in range(1, 61):
                lhs, rhs = lemma32_sides(m, d, x)
                assert isinstance(lhs, Fraction) and lhs == rhs, f"m={m} d={d} x={x}"
    return True


def test_divisor_sum_errors() -> bool:
    """Non-squarefree m or d not dividing m is a domain error."""
    from smoothphi.core import DomainError
    from smoothphi.counting import lemma32_sides

    for args in ((12, 2, 10), (30, 4, 10), (30, 5, 0)):
        try:
            lemma32_sides(*args)
        except DomainError:
            continue
        raise AssertionError(f"lemma32_sides{args} should raise DomainError")
    return True


def test_log_sum_examples() -> bool:
    """k = 2 gives 2 log 2; prime k gives p log p / (p - 1)^2."""
    from smoothphi.counting import lemma33_sides

    lhs, rhs = lemma33_sides(2)
    assert abs(rhs - 2 * math.log(2)) < 1e-15
    assert abs(lhs - rhs) < 1e-12

    for p in (3, 7, 97):
        lhs, rhs = lemma33_sides(p)
        assert abs(rhs - p * math.log(p) / (p - 1) ** 2) < 1e-14
        assert abs(lhs - rhs) < 1e-12, f"k={p}: {lhs} vs {rhs}"
    return True


def test_log_sum_small_truncation_shows_tail() -> bool:
    """A short truncation leaves a visible positive tail."""
    from smoothphi.core import DomainError
    from smoothphi.counting import lemma33_sides

    lhs, rhs = lemma33_sides(6, truncation=10**6)
    assert 1e-8 < rhs - lhs < 1e-2, f"tail {rhs - lhs}"

    try:
        lemma33_sides(1)
    except DomainError:
        return True
    raise AssertionError("k = 1 should raise DomainError")


def test_chain_sum_small() -> bool:
    """R(3, 1, 20) = 1/7 + 1/13 + 1/19 and R(2, 2, 20) by hand."""
    from smoothphi.counting import chain_sum_R
    from smoothphi.sieve import build_spf

    t = build_spf(100)
    assert abs(chain_sum_R(3, 1, 20, t) - (1 / 7 + 1 / 13 + 1 / 19)) < 1e-15

    # q1 = 1 mod 2 up to 20: odd primes; q2 = 1 mod q1
    expected = 0.0
    for q1 in (3, 5, 7, 11, 13, 17, 19):
        expected += sum(1 / q for q in (7, 11, 13, 17, 19) if q % q1 == 1)
    # 3 -> 7, 13, 19; 5 -> 11; 7 -> none; 11, 13, 17, 19 -> none
    assert abs(chain_sum_R(2, 2, 20, t) - expected) < 1e-15
    assert chain_sum_R(30, 1, 20, t) == 0.0
    return True


def test_chain_sum_brute_force() -> bool:
    """Memoized chain sums agree with explicit chain enumeration."""
    from smoothphi.counting import ChainSums, chain_sum_R
    from smoothphi.sieve import build_spf
    from . import oracles

    x = 300
    t = build_spf(x)
    primes = oracles.primes_upto(x)

    def brute(c: int, j: int) -> float:
        total = 0.0
        for q in primes:
            if q % c == 1 or (c == 1 and q >= 2):
                total += 1 / q if j == 1 else brute(q, j - 1)
        return total

    sums = ChainSums(x, t)
    for r in (2, 3, 4, 6, 10):
        for k in (1, 2, 3):
            got = chain_sum_R(r, k, x, t, sums=sums)
            assert abs(got - brute(r, k)) < 1e-12, f"R({r},{k},{x})"
    return True


def test_chain_sum_budget() -> bool:
    """A tiny node budget stops the enumeration."""
    from smoothphi.core import BudgetExceededError
    from smoothphi.counting import chain_sum_R
    from smoothphi.sieve import build_spf

    t = build_spf(10000)
    try:
        chain_sum_R(2, 3, 10000, t, node_budget=100)
    except BudgetExceededError as e:
        assert e.exit_code == 3
        return True
    raise AssertionError("node budget should be enforced")


def test_chain_sum_argument_errors() -> bool:
    """Fractional or non-positive r and k are rejected, not truncated."""
    from smoothphi.core import DomainError
    from smoothphi.counting import chain_sum_R
    from smoothphi.sieve import build_spf

    t = build_spf(100)
    for r, k in ((2.5, 1), (0, 1), (-3, 1), (3, 1.5), (3, 0)):
        try:
            chain_sum_R(r, k, 20, t)
        except DomainError as e:
            assert e.exit_code == 1
            continue
        raise AssertionError(f"R({r}, {k}) should be rejected")

    assert chain_sum_R(3.0, 1, 20, t) == chain_sum_R(3, 1, 20, t)
    return True


def test_lemma42_bound() -> bool:
    """(log x + 1)^k / r."""
    from smoothphi.counting import lemma42_bound

    assert abs(lemma42_bound(2, 1, 100) - (math.log(100) + 1) / 2) < 1e-15
    assert abs(lemma42_bound(5, 3, 1000) - (math.log(1000) + 1) ** 3 / 5) < 1e-12
    return True


def test_suites_pass() -> bool:
    """All three suites pass at the default sizes."""
    from smoothphi.counting import lemma32_suite, lemma33_suite, lemma42_suite
    from smoothphi.sieve import build_spf

    report = lemma32_suite(210, 100)
    assert report.passed and report.worst_deviation == 0.0, report
    assert report.to_row()[3] == 'pass'

    report = lemma33_suite(100)
    assert report.passed and report.worst_deviation <= 1e-9, report
    assert report.cases == 99

    t = build_spf(10000)
    report = lemma42_suite(t, 50, 3, (10, 100, 1000, 10000))
    assert report.passed and report.worst_deviation <= 1.0, report
    assert report.cases == 4 * 3 * 49
    return True


def test_suite_failure_reported() -> bool:
    """A truncation too short for the tolerance fails the log-sum suite."""
    from smoothphi.counting import lemma33_suite

    report = lemma33_suite(10, truncation=1000, tolerance=1e-9)
    assert not report.passed
    assert report.to_row()[3] == 'fail'
    assert 'k' in report.worst_case
    return True


TESTS = [
    ("Divisor-sum examples", test_divisor_sum_examples),
    ("Divisor-sum exhaustive (small)", test_divisor_sum_exhaustive_small),
    ("Divisor-sum errors", test_divisor_sum_errors),
    ("Log-sum examples", test_log_sum_examples),
    ("Log-sum truncation tail", test_log_sum_small_truncation_shows_tail),
    ("Chain sums by hand", test_chain_sum_small),
    ("Chain sums against enumeration", test_chain_sum_brute_force),
    ("Chain-sum node budget", test_chain_sum_budget),
    ("Chain-sum argument errors", test_chain_sum_argument_errors),
    ("Chain-sum bound", test_lemma42_bound),
    ("Suites pass", test_suites_pass),
    ("Suite failure reported", test_suite_failure_reported),
]


def main():
    parser = argparse.ArgumentParser(description='Identity suite tests')
    parser.parse_args()

    passed, failed = run_tests("Identities", TESTS)
    summarize(passed, failed)


if __name__ == '__main__':
    main()
