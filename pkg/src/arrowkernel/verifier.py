"""Checks of the arrow-removal invariance statements for a (Λ, Γ, T) triple.

Each section returns a plain dict ready for JSON; verdicts are "PASS",
"FAIL" or "unknown" (a cap was hit).  Everything is deterministic given the
configuration, including the seeded module samples.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import asdict, dataclass

import numpy as np

from . import __version__
from .algebra import DEFAULT_DEGREE_CAP, DEFAULT_ENV_CAP, DimensionCapExceeded, FiniteDimAlgebra, assemble_algebra, opposite_algebra
from .cleft import CleftContext, context_from, functor_e, functor_G, functor_H, functor_i
from .hochschild import env_functor_checks, env_removal_check, hh_dims_resolution
from .ideal import RemovalCertificate, arrow_set_removable, remove_arrows, trivial_extension_check
from .modules import (
    DEFAULT_PD_CAP,
    direct_sum,
    ext_dims,
    id_up_to,
    pd_up_to,
    projective_module,
    random_module,
    regular_module,
    simple_module,
)
from .presentation import QuiverPresentation, serialize_presentation

__all__ = [
    "VerifyConfig",
    "VerificationReport",
    "ehi_report",
    "gorenstein_report",
    "singularity_report",
    "fg_evidence_report",
    "verify",
    "presentation_hash",
]

PASS, FAIL, UNKNOWN = "PASS", "FAIL", "unknown"


@dataclass(frozen=True)
class VerifyConfig:
    ext_max: int = 8
    hh_max: int = 4
    pd_cap: int = DEFAULT_PD_CAP
    seed: int = 0
    samples: int = 50
    degree_cap: int = DEFAULT_DEGREE_CAP
    env_cap: int = DEFAULT_ENV_CAP
    env_random_samples: int = 3


def presentation_hash(p: QuiverPresentation) -> str:
    return hashlib.sha256(serialize_presentation(p).encode()).hexdigest()


# ---------------------------------------------------------------------------


def ehi_report(ctx: CleftContext, degree_max: int = 8, random_pairs: int = 0, seed: int = 0) -> dict:
    """Ext^i_Λ(M, N) against Ext^i_Γ(eM, eN) on simple pairs (plus optional random pairs)."""
    L = ctx.lam
    pairs = []
    for u in range(L.n_vertices):
        for v in range(L.n_vertices):
            pairs.append((f"S{L.vertices[u]}", f"S{L.vertices[v]}", simple_module(L, u), simple_module(L, v)))
    rng = np.random.default_rng(seed)
    for k in range(random_pairs):
        pairs.append((f"random{2 * k}", f"random{2 * k + 1}", random_module(L, rng), random_module(L, rng)))
    rows = []
    equal_from_2 = True
    sharp = []
    for mname, nname, M, N in pairs:
        lam = ext_dims(M, N, degree_max)
        gam = ext_dims(functor_e(ctx, M), functor_e(ctx, N), degree_max)
        eq = [a == b for a, b in zip(lam, gam)]
        if not all(eq[2:]):
            equal_from_2 = False
        if len(eq) > 1 and not eq[1]:
            sharp.append([mname, nname, lam[1], gam[1]])
        rows.append({"m": mname, "n": nname, "lambda": lam, "gamma": gam, "equal": eq})
    return {
        "degrees": list(range(degree_max + 1)),
        "pairs": rows,
        "equal_for_degrees_at_least_2": equal_from_2,
        "degree_1_differences": sharp,
        "verdict": PASS if equal_from_2 else FAIL,
    }


def _gorenstein_side(A: FiniteDimAlgebra, cap: int) -> dict:
    right = id_up_to(regular_module(A), cap)
    left = id_up_to(regular_module(opposite_algebra(A)), cap)
    if right.finite and left.finite:
        status = "gorenstein"
    else:
        status = UNKNOWN
    return {"id_right": str(right), "id_left": str(left), "status": status}


def gorenstein_report(lam: FiniteDimAlgebra, gam: FiniteDimAlgebra, cap: int = DEFAULT_PD_CAP) -> dict:
    a, b = _gorenstein_side(lam, cap), _gorenstein_side(gam, cap)
    if a["status"] == b["status"] == "gorenstein":
        agreement = "agree"
    else:
        # exceeding a cap never proves infinite injective dimension
        agreement = UNKNOWN
    return {
        "cap": cap,
        "lambda": a,
        "gamma": b,
        "agreement": agreement,
        "verdict": PASS if agreement == "agree" else (FAIL if agreement == "disagree" else UNKNOWN),
    }


def _max_bound(bounds):
    vals = [b.value for b in bounds]
    if any(v is None for v in vals):
        return None
    return max(vals, default=0)


def singularity_report(ctx: CleftContext, sample_size: int = 50, cap: int = DEFAULT_PD_CAP, seed: int = 0) -> dict:
    L, G = ctx.lam, ctx.gam
    p_a = _max_bound([pd_up_to(functor_e(ctx, projective_module(L, v)), cap) for v in range(L.n_vertices)])
    p_b = _max_bound([pd_up_to(functor_i(ctx, projective_module(G, v)), cap) for v in range(G.n_vertices)])
    rng = np.random.default_rng(seed)
    lam_samples = [simple_module(L, v) for v in range(L.n_vertices)] + [projective_module(L, v) for v in range(L.n_vertices)]
    while len(lam_samples) < sample_size:
        lam_samples.append(random_module(L, rng))
    gam_samples = [simple_module(G, v) for v in range(G.n_vertices)] + [projective_module(G, v) for v in range(G.n_vertices)]
    while len(gam_samples) < sample_size:
        gam_samples.append(random_module(G, rng))
    n_g = _max_bound([pd_up_to(functor_G(ctx, M).module, cap) for M in lam_samples])
    n_h = _max_bound([pd_up_to(functor_H(ctx, N), cap) for N in gam_samples])
    checks = {
        "p_a": {"value": p_a, "expected": "= 0", "ok": p_a == 0},
        "p_b": {"value": p_b, "expected": "<= 1", "ok": p_b is not None and p_b <= 1},
        "n_g": {"value": n_g, "expected": "= 0", "ok": n_g == 0, "sampled": len(lam_samples)},
        "n_h": {"value": n_h, "expected": "= 0", "ok": n_h == 0, "sampled": len(gam_samples)},
    }
    ok = all(c["ok"] for c in checks.values())
    unknown = any(c["value"] is None for c in checks.values())
    return {
        "cap": cap,
        "seed": seed,
        **checks,
        "note": "n_g and n_h are sampled; images of G are projective by the structure of the removal",
        "conclusion": "singular equivalence certified by the four bounds" if ok else "not certified",
        "verdict": PASS if ok else (UNKNOWN if unknown else FAIL),
    }


def _semisimple_top(A: FiniteDimAlgebra):
    return direct_sum(*[simple_module(A, v) for v in range(A.n_vertices)])[0]


def fg_evidence_report(ctx: CleftContext | None, n_max: int = 4, lam: FiniteDimAlgebra | None = None,
                       cap: int = DEFAULT_ENV_CAP, env_random_samples: int = 3, seed: int = 0) -> dict:
    """HH and Ext-algebra dimensions; for a removal also the enveloping comparisons."""
    out: dict = {"hh_max": n_max}
    algebras = [("lambda", ctx.lam if ctx else lam)]
    if ctx is not None:
        algebras.append(("gamma", ctx.gam))
    try:
        for key, A in algebras:
            top = _semisimple_top(A)
            out[key] = {
                "hh_dims": hh_dims_resolution(A, n_max, cap).dims,
                "ext_top_top_dims": ext_dims(top, top, n_max),
            }
        if ctx is None:
            out["note"] = "no removable arrow set; no comparison emitted"
            out["verdict"] = UNKNOWN
            return out
        env = env_removal_check(ctx, n_max, cap)
        fun = env_functor_checks(ctx, cap, random_samples=env_random_samples, seed=seed)
    except DimensionCapExceeded as exc:
        out["note"] = f"enveloping computation skipped: {exc}"
        out["verdict"] = UNKNOWN
        return out
    out["env_removal"] = env.as_dict()
    out["env_functors"] = fun.as_dict()
    ok = env.equal_from_2 and fun.passed
    out["note"] = "finite-degree evidence only; the fg condition itself is not decided"
    out["verdict"] = "consistent" if ok else "inconsistent"
    return out


# ---------------------------------------------------------------------------


@dataclass
class VerificationReport:
    meta: dict
    certificate: dict
    ehi: dict
    gorenstein: dict
    singularity: dict
    hochschild: dict
    verdicts: dict

    def as_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, ensure_ascii=False) + "\n"

    @property
    def falsified(self) -> bool:
        return any(v in (FAIL, "inconsistent") for v in self.verdicts.values())


def verify(p: QuiverPresentation, T, config: VerifyConfig = VerifyConfig()):
    """Full report, or the RemovalRefusal if T is not removable."""
    lam = assemble_algebra(p, config.degree_cap)
    cert = arrow_set_removable(p, T, lam)
    if not isinstance(cert, RemovalCertificate):
        return cert
    gam = assemble_algebra(remove_arrows(p, cert), config.degree_cap)
    ctx = context_from(lam, gam, cert)
    triv = trivial_extension_check(lam, gam, cert)
    certificate = cert.as_dict()
    certificate["trivial_extension"] = triv.as_dict()
    ehi = ehi_report(ctx, config.ext_max, seed=config.seed)
    gor = gorenstein_report(lam, gam, config.pd_cap)
    sing = singularity_report(ctx, config.samples, config.pd_cap, config.seed)
    hh = fg_evidence_report(ctx, config.hh_max, cap=config.env_cap, env_random_samples=config.env_random_samples, seed=config.seed)
    meta = {
        "tool": "arrowkernel",
        "version": __version__,
        "input": p.name,
        "presentation_sha256": presentation_hash(p),
        "field": p.field.name,
        "arrows": list(cert.arrows),
        "config": asdict(config),
    }
    verdicts = {
        "ehi": ehi["verdict"],
        "gorenstein": gor["verdict"],
        "singularity": sing["verdict"],
        "hochschild": hh["verdict"],
        "trivial_extension": PASS if triv.passed else FAIL,
    }
    return VerificationReport(meta, certificate, ehi, gor, sing, hh, verdicts)
