"""Build Klein coverings over a (k, l, m, n) box; record degrees, sizes and timings."""
from __future__ import annotations

import argparse
import csv
import math
import time
from dataclasses import dataclass
from pathlib import Path

from dihedral_hpg import transforms as tr


@dataclass
class SweepConfig:
    kl_max: int = 3
    m_min: int = 2
    m_max: int = 7
    source: str = "F3Normalized"
    out: Path = Path("results/klein_sweep.csv")


def coeff_bits(p: tr.RatPoly) -> int:
    return max((c.numerator.bit_length() + c.denominator.bit_length() for c in p.c), default=0)


def run(cfg: SweepConfig) -> list[dict]:
    rows = []
    for k in range(cfg.kl_max + 1):
        for l in range(cfg.kl_max + 1):
            for m in range(cfg.m_min, cfg.m_max + 1):
                for n in range(1, 2 * m + 1):
                    if math.gcd(n, m) != 1:
                        continue
                    t0 = time.perf_counter()
                    cov = tr.klein_covering(k, l, n, m, source=cfg.source)
                    ok = tr.insrel_residual(cov).is_zero()
                    rows.append({"k": k, "l": l, "n": n, "m": m, "degree": cov.degree,
                                 "expected": (k + l) * m + n, "insrel": ok,
                                 "theta_bits": max(coeff_bits(cov.theta1), coeff_bits(cov.theta2)),
                                 "ms": round(1e3 * (time.perf_counter() - t0), 2)})
    cfg.out.parent.mkdir(parents=True, exist_ok=True)
    with cfg.out.open("w", newline="") as f:
        w = csv.DictWriter(f, fieldnames=list(rows[0]))
        w.writeheader()
        w.writerows(rows)
    return rows


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--kl-max", type=int, default=3)
    ap.add_argument("--m-max", type=int, default=7)
    ap.add_argument("--source", default="F3Normalized", choices=[s.value for s in tr.GSource])
    ap.add_argument("--out", type=Path, default=SweepConfig.out)
    a = ap.parse_args()
    rows = run(SweepConfig(kl_max=a.kl_max, m_max=a.m_max, source=a.source, out=a.out))
    bad = [r for r in rows if not r["insrel"] or r["degree"] != r["expected"]]
    total = sum(r["ms"] for r in rows) / 1e3
    slow = max(rows, key=lambda r: r["ms"])
    print(f"{len(rows)} coverings, {len(bad)} failures, {total:.1f} s total")
    print(f"slowest: k={slow['k']} l={slow['l']} n={slow['n']} m={slow['m']} ({slow['ms']} ms, "
          f"{slow['theta_bits']} coefficient bits)")


if __name__ == "__main__":
    main()
