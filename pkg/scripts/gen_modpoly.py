"""Regenerate the bundled classical modular polynomials from q-expansions.

Usage: python3 scripts/gen_modpoly.py [l ...]   (default: 2 3 5 7)
"""

import sys
import time
from pathlib import Path

from isoclass.modular import (modular_polynomial_qexp, verify_modular_polynomial,
                              write_modular_polynomial)

OUT = Path(__file__).resolve().parent.parent / "src" / "isoclass" / "data"


def main(argv):
    ls = [int(a) for a in argv] or [2, 3, 5, 7]
    for l in ls:
        t0 = time.time()
        F = modular_polynomial_qexp(l)
        verify_modular_polynomial(l, F)
        path = OUT / ("phi_%d.txt" % l)
        write_modular_polynomial(path, l, F)
        print("phi_%d: %d terms, %.1fs -> %s" % (l, len(F.terms), time.time() - t0, path))


if __name__ == "__main__":
    main(sys.argv[1:])
