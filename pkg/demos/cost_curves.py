"""Walk through the analytic cost formulas and their landmark values.

Costs count consumed basic resource states (three-photon W states, unit
cost each).  Sizes are the additive index n: actual photon count is n + 2.
"""

from fractions import Fraction

from wfuse.growth_costs import (
    exponential_cost,
    gamma,
    linear_recycled_costs,
    w3_linear_cost,
)


def main():
    print("Linear growth (fuse one basic state at a time, restart on any")
    print("non-success).  The cost closed form grows like 3^n:")
    for n in (1, 2, 3, 4, 6, 10):
        cost = w3_linear_cost(n)
        print(f"  n={n:2d} (N={n + 2:2d} photons): {cost}  ~ {float(cost):.4g}")

    print()
    print("Same strategy, but keep the shortened state after a recyclable")
    print("outcome.  Scaling drops from 3^n to 2^n:")
    recycled = linear_recycled_costs(10)
    for n in (1, 2, 3, 4, 6, 10):
        print(f"  n={n:2d}: {recycled[n]}  ~ {float(recycled[n]):.4g}"
              f"   (no recycling: {float(w3_linear_cost(n)):.4g})")

    print()
    print("Doubling growth (fuse two equal sizes, no recycling) reaches")
    print("size 2^k at sub-exponential cost:")
    for k in range(0, 7):
        cost = exponential_cost(k)
        print(f"  k={k}: size {2**k:3d} costs {float(cost):.6g}")

    print()
    print("Its prefactor gamma_k is bounded; the limit is 21.458...:")
    for k in (1, 2, 5, 10, 30):
        print(f"  gamma({k:2d}) = {float(gamma(k)):.10f}")

    check = exponential_cost(2) * (1 + Fraction(2)) == gamma(2) * 2**3
    print(f"  closed form consistent with the recurrence at k=2: {check}")


if __name__ == "__main__":
    main()
