"""Hochschild cohomology dimensions of every fixture by both methods and both fields."""

import argparse

from arrowkernel import assemble_algebra, load_fixture
from arrowkernel.hochschild import hh_dims_bar, hh_dims_resolution
from arrowkernel.presentation import FIXTURES


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--hh-max", type=int, default=4)
    ns = ap.parse_args()
    mismatches = 0
    print(f"{'fixture':<8}{'field':<7}{'dim':>4}  {'resolution':<22}{'relative bar':<22}")
    for name in FIXTURES:
        for field in ("gf7", "q"):
            A = assemble_algebra(load_fixture(name, field))
            res = hh_dims_resolution(A, ns.hh_max).dims
            bar = hh_dims_bar(A, ns.hh_max).dims
            mismatches += res != bar
            print(f"{name:<8}{field:<7}{A.dim:>4}  {str(res):<22}{str(bar):<22}{'' if res == bar else 'MISMATCH'}")
    return 1 if mismatches else 0


if __name__ == "__main__":
    raise SystemExit(main())
