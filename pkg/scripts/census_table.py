"""Orbit counts from brute force next to the recurrences and canonical-shape
enumerations.

    python3 scripts/census_table.py --max-n 4 --fields GF(2) GF(3)
"""
import argparse
import math
import time
from dataclasses import dataclass, field

from matcanon.census import brute_orbits, count_alt_orbits, count_sym_orbits, enumerate_canforms


@dataclass
class CensusConfig:
    fields: list[str] = field(default_factory=lambda: ["GF(2)", "GF(3)", "GF(5)"])
    max_n: int = 4
    budget: int = 2 ** 28


ROWS = [
    # label, group, relation, class, predicted count (or None)
    ("alt B-congr", "B", "congruence", "alternating", count_alt_orbits),
    ("sym B-congr", "B", "congruence", "symmetric", None),
    ("sym U-congr", "U", "congruence", "symmetric", None),
    ("all B-equiv", "B", "equivalence", "all", lambda n: rook_placements(n)),
]


def rook_placements(n):
    """Sub-permutation (0,1)-matrices of size n."""
    return sum(math.comb(n, k) ** 2 * math.factorial(k) for k in range(n + 1))


def predicted(label, fn, spec, n):
    if fn is not None:
        return fn(n)
    if label == "sym B-congr" and spec in ("GF(2)", "GF(4)", "GF(8)"):
        return enumerate_canforms(n, "specialized_pseudo_perm_01", spec)[0]
    if label == "sym U-congr" and spec in ("GF(2)", "GF(4)"):
        return enumerate_canforms(n, "specialized_pseudo_perm", spec)[0]
    return None


def main(cfg: CensusConfig):
    print(f"{'field':8} {'n':>2} {'action':12} {'orbits':>7} {'predicted':>9} {'secs':>6}")
    for spec in cfg.fields:
        for n in range(1, cfg.max_n + 1):
            for label, group, rel, cls, fn in ROWS:
                t0 = time.perf_counter()
                try:
                    count = brute_orbits(n, spec, group, rel, cls, budget=cfg.budget).count
                except Exception as exc:  # budget or size limits
                    print(f"{spec:8} {n:>2} {label:12} skipped: {exc}")
                    continue
                pred = predicted(label, fn, spec, n)
                mark = "" if pred is None or pred == count else "  MISMATCH"
                print(f"{spec:8} {n:>2} {label:12} {count:>7} {pred if pred is not None else '-':>9} "
                      f"{time.perf_counter() - t0:6.2f}{mark}")
    print("\nD(n) for reference (symmetric B-congruence over a field with all square roots):",
          [count_sym_orbits(n) for n in range(1, cfg.max_n + 1)])


if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--fields", nargs="+", default=CensusConfig().fields)
    ap.add_argument("--max-n", type=int, default=CensusConfig.max_n)
    ap.add_argument("--budget", type=int, default=CensusConfig.budget)
    a = ap.parse_args()
    main(CensusConfig(fields=a.fields, max_n=a.max_n, budget=a.budget))
