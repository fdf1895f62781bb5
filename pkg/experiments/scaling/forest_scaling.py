import argparse

from crossvar.evaluation.bench import loglog_slope, naive_ratio, run_benchmark, time_forest

SIZES = [1_000, 10_000, 100_000, 1_000_000]


if __name__ == "__main__":
    parser = argparse.ArgumentParser()
    parser.add_argument("--sizes", type=int, nargs="+", default=SIZES)
    parser.add_argument("--reps", type=int, default=3)
    parser.add_argument("--seed", type=int, default=0)
    # ER(15, 0.5) keeps the Q x Q route within desk time
    parser.add_argument("--naive-n", type=int, default=15)
    parser.add_argument("--naive-p", type=float, default=0.5)
    parser.add_argument("--bench-graphs", type=int, default=10)
    args = parser.parse_args()

    frame = time_forest(args.sizes, args.reps, args.seed)
    print(frame.to_string(index=False))
    print(f"log-log slope: {loglog_slope(frame):.3f}")
    print(
        f"naive / general on ER({args.naive_n}, {args.naive_p}): "
        f"{naive_ratio(args.naive_n, args.naive_p, args.seed):.1f}"
    )

    bench = run_benchmark(
        [10, 100], [0.01, 0.5], graphs=args.bench_graphs, reps=args.reps, seed=args.seed
    )
    print(bench[["n", "p", "speedup"]].to_string(index=False))
