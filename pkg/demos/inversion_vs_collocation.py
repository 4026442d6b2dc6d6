#!/usr/bin/env python3
"""Same equation, two unrelated algorithms.

The bounded solution of the dominant-singularity equation admits a
closed-form inversion through a weighted principal-value transform; the
collocation route never sees that formula.  Running both on a problem
with a known answer shows the inversion hitting quadrature accuracy
while collocation converges at first order.
"""

import numpy as np

from hypersing import (
    CharacteristicProblem,
    Interval,
    PVQuadSpec,
    build_grid,
    invert_characteristic,
    solve_characteristic,
)


def main():
    iv = Interval(-1.0, 1.0)

    def fprime(x):
        return -np.pi * (1.0 + np.asarray(x, dtype=float))

    def f(x):
        x = np.asarray(x, dtype=float)
        return -np.pi * (x + x * x / 2.0)

    def exact(x):
        x = np.asarray(x, dtype=float)
        return np.sqrt(1.0 - x * x) * (1.0 + x / 2.0)

    problem = CharacteristicProblem(iv, fprime, f=f)
    sol = solve_characteristic(problem, build_grid(-1.0, 1.0, 100))
    quad = PVQuadSpec(m=200)

    print("    x      exact        inversion    inv error    colloc       col error")
    for x in (-0.9, -0.5, -0.1, 0.3, 0.7):
        inv = invert_characteristic(problem, x, quad)
        col = float(np.interp(x, sol.points, sol.values))
        ex = float(exact(x))
        print(
            f"{x:7.2f}  {ex:.8f}  {inv:.8f}  {abs(inv - ex):9.2e}  "
            f"{col:.8f}  {abs(col - ex):9.2e}"
        )
    print("\nInversion is exact to quadrature precision for polynomial data;")
    print("collocation carries the O(h) discretization error instead.")


if __name__ == "__main__":
    main()
