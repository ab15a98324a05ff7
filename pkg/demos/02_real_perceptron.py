"""
Normalized real perceptron and its margin bound
===============================================

With unit-length steps and a hidden unit vector separating the classes with
margin delta, the number of updates M obeys M + 1 <= 1 / delta^2.
"""

import math

from bcmvn.datagen import gen_real
from bcmvn.datasets import GenSpec
from bcmvn.perceptron import check_real_bound, rate_condition_check, real_perceptron_train

print(f"{'n':>3} {'delta':>6} {'M':>4} {'ceil(1/delta^2)':>16}")
for n in (2, 5, 10):
    for delta in (0.1, 0.3, 0.5):
        problem = gen_real(GenSpec(n=n, count=200, margin=delta, seed=n))
        a, trace = real_perceptron_train(problem)
        checks = check_real_bound(trace.steps_to_converge, delta)
        assert all(c.passed for c in checks)
        print(f"{n:>3} {delta:>6} {trace.steps_to_converge:>4} {math.ceil(1 / delta**2):>16}")

# Variable step sizes e(m) are fine as long as sum e^2 / (sum e)^2 tends to zero.
for M in (10, 100, 1000):
    print(f"M={M:>4}  constant: {rate_condition_check(lambda m: 1.0, M):.6f}"
          f"  1/sqrt(m): {rate_condition_check(lambda m: m**-0.5, M):.6f}"
          f"  2^m: {rate_condition_check(lambda m: 2.0**m, min(M, 60)):.6f}")
