"""Run the biseparable soundness probe over several dimensions and seeds.

Usage: python3 scripts/probe_sweep.py --trials 10000 --dims 2 3 --seeds 0 1 2
"""
import argparse
import json

from gmebloch import criteria


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--dims", type=int, nargs="+", default=[2, 3])
    p.add_argument("--seeds", type=int, nargs="+", default=[0])
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--json", action="store_true", help="emit one JSON object per run")
    args = p.parse_args(argv)

    for d in args.dims:
        for seed in args.seeds:
            res = criteria.soundness_probe(d, args.trials, seed=seed, workers=args.workers)
            summary = res.summary()
            if args.json:
                print(json.dumps({"d": d, "seed": seed, "trials": args.trials,
                                  "findings": len(res.findings), "summary": summary}))
                continue
            print(f"d={d} seed={seed} trials={args.trials} findings={len(res.findings)} "
                  f"max T={max(res.max_t_value.values()):.4f} (M={criteria.lemma_bounds(d).M:.4f})")
            for bp, row in summary.items():
                print(f"  {bp}: " + ", ".join(f"{k}={v:.4g}" if isinstance(v, float) else f"{k}={v}"
                                              for k, v in row.items()))


if __name__ == "__main__":
    main()
