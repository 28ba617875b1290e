"""The family L_n (n parallel arrows 1 -> 2 on a 3-cycle with the three zero relations).

For each n: dimension (expected 4n+2), the removal of a2..an down to L1, and the
degree-1 and higher Ext comparison between simple modules.
"""

import argparse
import time

from arrowkernel import assemble_algebra, parse_presentation
from arrowkernel.cleft import context_from, functor_e
from arrowkernel.ideal import RemovalCertificate, arrow_set_removable, remove_arrows
from arrowkernel.modules import ext_dims, simple_module


def lambda_n(n: int, field: str = "gf 7"):
    arrows = "\n".join(f"  arrow a{k} : 1 -> 2" for k in range(1, n + 1))
    text = f"field {field}\nquiver\n  vertices 1 2 3\n{arrows}\n  arrow b : 2 -> 3\n  arrow g : 3 -> 1\nrelations\n  a1*b\n  b*g\n  g*a1\n"
    return parse_presentation(text, name=f"L{n}")


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-max", type=int, default=6)
    ap.add_argument("--ext-max", type=int, default=6)
    ns = ap.parse_args()
    print(f"{'n':>3}{'dim':>6}{'4n+2':>6}{'Ext1 L':>8}{'Ext1 G':>8}  {'equal i>=2':<11}{'sec':>6}")
    bad = 0
    for n in range(2, ns.n_max + 1):
        t = time.perf_counter()
        p = lambda_n(n)
        L = assemble_algebra(p)
        cert = arrow_set_removable(p, [f"a{k}" for k in range(2, n + 1)], L)
        assert isinstance(cert, RemovalCertificate)
        G = assemble_algebra(remove_arrows(p, cert))
        ctx = context_from(L, G, cert)
        equal, e1 = True, None
        for u in range(3):
            for v in range(3):
                lam = ext_dims(simple_module(L, u), simple_module(L, v), ns.ext_max)
                gam = ext_dims(functor_e(ctx, simple_module(L, u)), functor_e(ctx, simple_module(L, v)), ns.ext_max)
                equal &= lam[2:] == gam[2:]
                if (u, v) == (0, 1):
                    e1 = (lam[1], gam[1])
        bad += (L.dim != 4 * n + 2) or not equal
        print(f"{n:>3}{L.dim:>6}{4 * n + 2:>6}{e1[0]:>8}{e1[1]:>8}  {str(equal):<11}{time.perf_counter() - t:>6.2f}")
    return 1 if bad else 0


if __name__ == "__main__":
    raise SystemExit(main())
