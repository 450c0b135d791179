"""Recompute the E10 growth series and certify its growth rate.

Prints the denominator degree, the rate bracket, the Perron radius and the
per-prime irreducibility evidence, then exits nonzero if any check fails.
"""

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from coxgrow.catalog import verify_tau


@dataclass
class TauConfig:
    eps: Fraction = Fraction(1, 10**12)
    primes: list[int] = field(default_factory=lambda: [3, 5, 7, 11, 13, 17, 19, 23])
    irreducibility: bool = True


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--eps", default="1/1000000000000", help="bracket width as a fraction")
    ap.add_argument("--primes", default=None, help="comma-separated primes for the mod-p factorisation")
    ap.add_argument("--skip-irreducibility", action="store_true")
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args(argv)
    cfg = TauConfig(eps=Fraction(args.eps), irreducibility=not args.skip_irreducibility)
    if args.primes:
        cfg.primes = [int(p) for p in args.primes.split(",")]
    rep = verify_tau(cfg.eps, irreducibility=cfg.irreducibility, primes=cfg.primes)
    if args.json:
        print(json.dumps(rep.to_dict(), indent=1))
    else:
        print("\n".join(rep.lines()))
        print(f"timings: {rep.data['timings']}")
    return 0 if rep.ok else 1


if __name__ == "__main__":
    sys.exit(main())
