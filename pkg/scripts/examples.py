"""Worked examples: the two reduction matrices, the <2,3,inf> triangle and the
rank-7 mutation fixture, with series, rates and the mutated matrix."""

import argparse
import sys
from dataclasses import dataclass
from fractions import Fraction

from coxgrow.catalog import get_entry, verify_examples
from coxgrow.coxcore import serialize_matrix
from coxgrow.growth import growth_rate, poincare
from coxgrow.poly import series_coefficients
from coxgrow.structure import make_mutable, mutate


@dataclass
class ExampleConfig:
    eps: Fraction = Fraction(1, 10**12)
    terms: int = 10


def show(eid: str, cfg: ExampleConfig) -> None:
    M = get_entry(eid).matrix
    p = poincare(M)
    r = growth_rate(M, cfg.eps)
    print(f"== {eid} (rank {M.rank})")
    print(f"   series: {p}")
    print(f"   a_0..a_{cfg.terms}: {[int(c) for c in series_coefficients(p, cfg.terms)]}")
    print(f"   rate ~ {float(r):.10f}")


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--terms", type=int, default=10)
    args = ap.parse_args(argv)
    cfg = ExampleConfig(terms=args.terms)
    for eid in ("reduction-M", "reduction-Mprime", "triangle-2-3-inf"):
        show(eid, cfg)
    e = get_entry("mutation-rank7")
    spec = e.expected["mutation"]
    tup = make_mutable(
        e.matrix,
        [x - 1 for x in spec["X"]],
        [y - 1 for y in spec["Y"]],
        {int(k) - 1: v - 1 for k, v in spec["sigma"].items()},
    )
    print("== mutation-rank7")
    print(serialize_matrix(mutate(tup)))
    rep = verify_examples(cfg.eps)
    print("\n".join(rep.lines()))
    return 0 if rep.ok else 1


if __name__ == "__main__":
    sys.exit(main())
