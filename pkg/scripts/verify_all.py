"""Run the oracle suite and write a one-line-per-check summary.

    python3 scripts/verify_all.py --suite all --seed 7 --out results/verify.txt
"""
import argparse
import sys
from dataclasses import dataclass
from pathlib import Path

from matcanon.verify import SUITES, VerifyConfig, run_suite


@dataclass
class RunConfig:
    suite: str = "all"
    seed: int = VerifyConfig.seed
    random_cases: int = VerifyConfig.random_cases
    out: str | None = None


def main(cfg: RunConfig) -> int:
    results = run_suite(cfg.suite, VerifyConfig(seed=cfg.seed, random_cases=cfg.random_cases),
                        echo=print)
    if cfg.out:
        path = Path(cfg.out)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text("".join(r.line() + "\n" for r in results))
    failed = [r for r in results if not r.passed]
    for r in failed:
        for line in r.failures[:5]:
            print(f"  {r.name}: {line}", file=sys.stderr)
    return 1 if failed else 0


if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--suite", default="all", choices=sorted(SUITES))
    ap.add_argument("--seed", type=int, default=RunConfig.seed)
    ap.add_argument("--cases", type=int, default=RunConfig.random_cases)
    ap.add_argument("--out")
    a = ap.parse_args()
    sys.exit(main(RunConfig(a.suite, a.seed, a.cases, a.out)))
