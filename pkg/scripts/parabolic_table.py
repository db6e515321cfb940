"""P-orbit counts for every standard parabolic, by brute force, with the
block-rank decider checked on orbit representatives.

    python3 scripts/parabolic_table.py --field GF(2) --n 4
"""
import argparse
from dataclasses import dataclass

from matcanon.census import brute_orbits
from matcanon.parabolic import all_parabolics, p_congruent, p_equivalent


@dataclass
class ParabolicConfig:
    field: str = "GF(2)"
    n: int = 4
    check_pairs: bool = True


def main(cfg: ParabolicConfig):
    print(f"{'P':10} {'equiv orbits':>12} {'alt congr orbits':>16}  decider")
    for p in all_parabolics(cfg.n):
        eq = brute_orbits(cfg.n, cfg.field, "P", "equivalence", parabolic=p)
        alt = brute_orbits(cfg.n, cfg.field, "P", "congruence", "alternating", parabolic=p)
        ok = "-"
        if cfg.check_pairs:
            reps, areps = eq.representatives(), alt.representatives()
            ok = all(p_equivalent(a, b, p)[0] == (i == j)
                     for i, a in enumerate(reps) for j, b in enumerate(reps))
            ok = ok and all(p_congruent(a, b, p, "alternating", report=True) == (i == j)
                            for i, a in enumerate(areps) for j, b in enumerate(areps))
            ok = "ok" if ok else "MISMATCH"
        print(f"{str(p):10} {eq.count:>12} {alt.count:>16}  {ok}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--field", default=ParabolicConfig.field)
    ap.add_argument("--n", type=int, default=ParabolicConfig.n)
    ap.add_argument("--no-pairs", action="store_true")
    a = ap.parse_args()
    main(ParabolicConfig(a.field, a.n, not a.no_pairs))
