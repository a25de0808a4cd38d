"""How the integer reconstruction of the degree-6 nullspace depends on the prime.

For each prime the RCF nullspace is lifted with the automatic scale search;
the integer rows should not depend on p once p is large enough.
"""

import argparse
from dataclasses import dataclass

import numpy as np

from symdias import exactlinalg as xl
from symdias.pipeline import multilinear_search


@dataclass
class Config:
    primes: tuple = (1000003, 999983, 65537)


def main(cfg: Config):
    reference = None
    for p in cfg.primes:
        res = multilinear_search(6, p)
        classes = len(np.unique(res.nullspace))
        try:
            rows, scales = xl.reconstruct_rows(res.nullspace, p)
        except ValueError as exc:
            # the smallness threshold p // 10**4 leaves no room when p is small
            print(f"p = {p}: rank {res.rank}, {classes} residue classes, reconstruction failed: {exc}")
            continue
        counts = [sum(1 for v in r if v) for r in rows]
        same = reference is None or rows == reference
        reference = reference or rows
        print(f"p = {p}: rank {res.rank}, {classes} residue classes, scales {scales}")
        print(f"  nonzero counts {counts}, rows equal to first prime: {same}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--primes", type=int, nargs="+", default=list(Config().primes))
    main(Config(tuple(ap.parse_args().primes)))
