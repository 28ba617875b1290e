"""Run the full verifier on every certified fixture removal, over GF(7) and Q.

Writes one JSON report per (fixture, field) into --out and prints a verdict table.
"""

import argparse
import time
from dataclasses import dataclass
from pathlib import Path

from arrowkernel import load_fixture
from arrowkernel.ideal import RemovalRefusal
from arrowkernel.verifier import VerifyConfig, verify

REMOVALS = [("L2", ("a2",)), ("L3", ("a2", "a3")), ("C3", ("a",)), ("H4", ("a",)), ("A2", ("x",))]


@dataclass(frozen=True)
class SweepConfig:
    out: Path
    fields: tuple[str, ...] = ("gf7", "q")
    ext_max: int = 8
    hh_max: int = 4
    samples: int = 50
    seed: int = 0


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=Path("sweep_reports"))
    ap.add_argument("--fields", default="gf7,q")
    ap.add_argument("--ext-max", type=int, default=8)
    ap.add_argument("--hh-max", type=int, default=4)
    ap.add_argument("--samples", type=int, default=50)
    ap.add_argument("--seed", type=int, default=0)
    ns = ap.parse_args()
    cfg = SweepConfig(ns.out, tuple(ns.fields.split(",")), ns.ext_max, ns.hh_max, ns.samples, ns.seed)
    cfg.out.mkdir(parents=True, exist_ok=True)
    vcfg = VerifyConfig(ext_max=cfg.ext_max, hh_max=cfg.hh_max, samples=cfg.samples, seed=cfg.seed)
    falsified = False
    print(f"{'fixture':<8}{'field':<6}{'ehi':<6}{'goren':<8}{'sing':<6}{'hh':<12}{'triv':<6}{'sec':>6}")
    for name, T in REMOVALS:
        for field in cfg.fields:
            p = load_fixture(name, field)
            t = time.perf_counter()
            rep = verify(p, T, vcfg)
            dt = time.perf_counter() - t
            if isinstance(rep, RemovalRefusal):
                print(f"{name:<8}{field:<6}refused: {rep.reason}")
                continue
            (cfg.out / f"{name}_{field}.json").write_text(rep.to_json(), encoding="utf-8")
            v = rep.verdicts
            falsified |= rep.falsified
            print(f"{name:<8}{field:<6}{v['ehi']:<6}{v['gorenstein']:<8}{v['singularity']:<6}{v['hochschild']:<12}{v['trivial_extension']:<6}{dt:>6.2f}")
    return 1 if falsified else 0


if __name__ == "__main__":
    raise SystemExit(main())
