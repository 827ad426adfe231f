"""One traced run of the similar-sizes recycling strategy, then calibration.

States live in dyadic buckets (bucket l holds sizes 2^(l-1) < n <= 2^l) and
only same-bucket pairs are fused.  The trace below shows every fusion of a
single seeded run; the second half checks batch means against the exact
absorbing-chain oracle for small targets.
"""

from wfuse.fusion_model import classify_uniform
from wfuse.rng import stream_for_run
from wfuse.simulate import (
    SimilarSizesState,
    exact_expected_cost,
    run_similar_sizes,
    simulate_batch,
)


def traced_run(k, stream):
    state = SimilarSizesState.initial(k)
    while True:
        state.settle()
        level = state.xi
        bucket = state.sets[level]
        n, m = bucket.pop(0), bucket.pop(0)
        branch = classify_uniform(n, m, stream.random())
        final = state.apply_branch(n, m, branch, k)
        contents = {l: list(s) for l, s in enumerate(state.sets) if s}
        print(f"  fuse w_{n} + w_{m} in S_{level}"
              f" -> {branch:7s}  cost so far {state.cost_r:3d}  buckets {contents}")
        if final is not None:
            return state.cost_r, final


def main():
    k = 2
    print(f"Traced run targeting bucket {k + 1} (final size > {2**k}):")
    cost, final = traced_run(k, stream_for_run(2718, 0))
    print(f"  done: produced w_{final} for {cost} basic states")

    replay = run_similar_sizes(k, stream_for_run(2718, 0))
    print(f"  fast-path replay agrees: cost {replay.cost}, size {replay.final_size}, "
          f"attempts {replay.fusion_attempts}")

    print()
    print("Calibration against the exact absorbing-chain oracle:")
    for kk in (0, 1, 2):
        exact = exact_expected_cost(kk)
        stats = simulate_batch(kk, 20000, 1000 + kk)
        sigma = (stats.mean - float(exact)) / stats.stderr
        print(f"  k={kk}: exact {str(exact):>5s} = {float(exact):g}, "
              f"MC mean {stats.mean:.3f} +- {stats.stderr:.3f}  ({sigma:+.2f} SE)")


if __name__ == "__main__":
    main()
