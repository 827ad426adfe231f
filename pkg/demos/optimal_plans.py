"""Optimal non-recycling strategies: the cost table and its fusion trees.

The dynamic program minimizes (cost_a + cost_b) / P_s over every binary
split.  For power-of-two sizes the optimum coincides with plain doubling.
"""

from wfuse.growth_costs import exponential_cost
from wfuse.optimal import optimal_costs, optimal_plan


def main():
    table = optimal_costs(16)
    print("Optimal costs and minimizing splits:")
    for n in range(1, 11):
        entry = table[n]
        split = f"({entry.best_split},{n - entry.best_split})" if entry.best_split else "leaf"
        print(f"  n={n:2d}: cost {str(entry.cost):>10s} ~ {float(entry.cost):9.3f}   split {split}")

    print()
    print("Fusion trees realizing those costs (1 = basic resource state):")
    for n in (4, 5, 8):
        tree = optimal_plan(table, n)
        print(f"  n={n}: {tree.shape()}   recomposed cost {tree.cost()} == table {table.cost(n)}")

    print()
    print("At powers of two the DP optimum equals the doubling chain:")
    for k in range(0, 5):
        n = 2**k
        print(f"  n={n:2d}: optimal {table.cost(n)} == doubling {exponential_cost(k)}"
              f"  ({table.cost(n) == exponential_cost(k)})")


if __name__ == "__main__":
    main()
