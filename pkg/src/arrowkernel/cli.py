"""``arrowkernel`` command line.

Exit codes: 0 success, 1 refusal or failed check, 2 parse error or unknown
arrow, 3 not finite-dimensional, 4 verify on a non-removable set.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from . import __version__
from .algebra import DimensionCapExceeded, NotFiniteDimensional, assemble_algebra
from .hochschild import hh_dims_bar, hh_dims_resolution
from .ideal import RemovalCertificate, RemovalRefusal, arrow_set_removable, remove_arrows, scan_removable
from .modules import ext_dims, simple_module
from .presentation import FIXTURES, PresentationError, load_fixture, parse_presentation, serialize_presentation
from .verifier import VerifyConfig, fg_evidence_report, verify

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_INFINITE, EXIT_UNCERTIFIED = 0, 1, 2, 3, 4


@dataclass(frozen=True)
class CliConfig:
    command: str
    path: str
    degree_bound: int
    ext_max: int
    hh_max: int
    pd_cap: int
    seed: int
    format: str
    arrows: tuple[str, ...] | None
    scan: bool


def _positive(s: str) -> int:
    v = int(s)
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _nonnegative(s: str) -> int:
    v = int(s)
    if v < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return v


def _arrow_set(s: str) -> tuple[str, ...]:
    items = tuple(x.strip() for x in s.split(",") if x.strip())
    if not items:
        raise argparse.ArgumentTypeError("empty arrow set")
    return items


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="arrowkernel", description="Arrow removal and homological invariants of bound quiver algebras.")
    ap.add_argument("--version", action="version", version=f"arrowkernel {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("file", help=".alg presentation (or a bundled fixture name such as L2.alg)")
        p.add_argument("--degree-bound", type=_positive, default=64, help="completion degree cap")
        p.add_argument("--format", choices=("json", "text"), default="text")
        p.add_argument("--seed", type=_nonnegative, default=0)
        p.add_argument("--ext-max", type=_positive, default=8)
        p.add_argument("--hh-max", type=_positive, default=4)
        p.add_argument("--pd-cap", type=_positive, default=12)
        return p

    common(sub.add_parser("basis", help="canonical basis and nilpotency degree"))
    p = common(sub.add_parser("removable", help="test an arrow set or scan for removable arrows"))
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--set", type=_arrow_set, dest="arrows")
    g.add_argument("--scan", action="store_true")
    p = common(sub.add_parser("remove", help="print the arrow-removal presentation"))
    p.add_argument("--set", type=_arrow_set, dest="arrows", required=True)
    common(sub.add_parser("ext-table", help="Ext dimensions between simple modules"))
    common(sub.add_parser("hochschild", help="Hochschild cohomology dimensions by two methods"))
    p = common(sub.add_parser("verify", help="full invariance report for a removal"))
    p.add_argument("--set", type=_arrow_set, dest="arrows")
    return ap


def _config(ns) -> CliConfig:
    return CliConfig(
        command=ns.command,
        path=ns.file,
        degree_bound=ns.degree_bound,
        ext_max=ns.ext_max,
        hh_max=ns.hh_max,
        pd_cap=ns.pd_cap,
        seed=ns.seed,
        format=ns.format,
        arrows=getattr(ns, "arrows", None),
        scan=getattr(ns, "scan", False),
    )


def _load(path: str):
    p = Path(path)
    if p.is_file():
        return parse_presentation(p.read_text(encoding="utf-8"), name=p.stem)
    stem = p.name[:-4] if p.name.endswith(".alg") else p.name
    if stem in FIXTURES or stem.removesuffix("_Q") in FIXTURES:
        return load_fixture(stem)
    raise FileNotFoundError(path)


def _render_text(obj, indent: int = 0) -> str:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v and not _flat_list(v):
                lines.append(f"{pad}{k}:")
                lines.append(_render_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)) and not _flat_list(v):
                lines.append(f"{pad}-")
                lines.append(_render_text(v, indent + 1))
            else:
                lines.append(f"{pad}- {_scalar(v)}")
    else:
        lines.append(f"{pad}{_scalar(obj)}")
    return "\n".join(lines)


def _flat_list(v) -> bool:
    return isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v)


def _scalar(v) -> str:
    if isinstance(v, list):
        return "[" + ", ".join(_scalar(x) for x in v) + "]"
    if isinstance(v, dict):
        return "{}"
    if v is None:
        return "-"
    return str(v)


def _emit(cfg: CliConfig, payload: dict, text: str | None = None) -> None:
    if cfg.format == "json":
        out = json.dumps(payload, indent=2, ensure_ascii=False) + "\n"
    else:
        out = (text if text is not None else _render_text(payload)) + "\n"
    sys.stdout.write(out)
    sys.stdout.flush()


def cmd_basis(cfg: CliConfig) -> int:
    p = _load(cfg.path)
    A = assemble_algebra(p, cfg.degree_bound)
    rs = A.reduction
    payload = {
        "algebra": p.name,
        "field": p.field.name,
        "dim": A.dim,
        "nilpotency": A.nilpotency,
        "basis": [{"label": A.labels[i], "source": A.vertices[A.src[i]], "target": A.vertices[A.tgt[i]]} for i in range(A.dim)],
        "rules": [{"lead": "*".join(k), "rhs": {"*".join(w): p.field.to_python(c) for w, c in v.items()}} for k, v in rs.rules.items()],
    }
    text = "\n".join([
        f"algebra {p.name} over {p.field.name}",
        f"dim = {A.dim}",
        f"nilpotency N = {A.nilpotency}",
        "basis: " + " ".join(A.labels),
    ])
    _emit(cfg, payload, text)
    return EXIT_OK


def cmd_removable(cfg: CliConfig) -> int:
    p = _load(cfg.path)
    A = assemble_algebra(p, cfg.degree_bound)
    if cfg.scan:
        _emit(cfg, {"algebra": p.name, **scan_removable(p, A).as_dict()})
        return EXIT_OK
    r = arrow_set_removable(p, cfg.arrows, A)
    if isinstance(r, RemovalCertificate):
        _emit(cfg, {"algebra": p.name, "removable": True, "certificate": r.as_dict()})
        return EXIT_OK
    _emit(cfg, {"algebra": p.name, "removable": False, "refusal": r.as_dict()})
    return EXIT_FAIL


def cmd_remove(cfg: CliConfig) -> int:
    p = _load(cfg.path)
    A = assemble_algebra(p, cfg.degree_bound)
    r = arrow_set_removable(p, cfg.arrows, A)
    if not isinstance(r, RemovalCertificate):
        _emit(cfg, {"algebra": p.name, "removable": False, "refusal": r.as_dict()})
        return EXIT_FAIL
    q = remove_arrows(p, r)
    text = serialize_presentation(q)
    _emit(cfg, {"algebra": p.name, "removed": list(r.arrows), "presentation": text}, text.rstrip("\n"))
    return EXIT_OK


def cmd_ext_table(cfg: CliConfig) -> int:
    p = _load(cfg.path)
    A = assemble_algebra(p, cfg.degree_bound)
    rows = []
    for u in range(A.n_vertices):
        for v in range(A.n_vertices):
            dims = ext_dims(simple_module(A, u), simple_module(A, v), cfg.ext_max)
            rows.append({"m": f"S{A.vertices[u]}", "n": f"S{A.vertices[v]}", "dims": dims})
    payload = {"algebra": p.name, "field": p.field.name, "degrees": list(range(cfg.ext_max + 1)), "ext": rows}
    text = "\n".join([f"Ext^i(M, N) over {p.name}, i = 0..{cfg.ext_max}"] + [f"{r['m']} {r['n']}: {r['dims']}" for r in rows])
    _emit(cfg, payload, text)
    return EXIT_OK


def cmd_hochschild(cfg: CliConfig) -> int:
    p = _load(cfg.path)
    A = assemble_algebra(p, cfg.degree_bound)
    res = hh_dims_resolution(A, cfg.hh_max)
    payload = {"algebra": p.name, "field": p.field.name, "center_dim": A.center_dim(), "resolution": res.dims}
    try:
        bar = hh_dims_bar(A, cfg.hh_max)
        payload["relative_bar"] = bar.dims
        payload["agree"] = bar.dims == res.dims
    except DimensionCapExceeded as exc:
        payload["relative_bar"] = None
        payload["agree"] = None
        payload["note"] = str(exc)
    _emit(cfg, payload)
    return EXIT_OK if payload["agree"] is not False else EXIT_FAIL


def cmd_verify(cfg: CliConfig) -> int:
    p = _load(cfg.path)
    config = VerifyConfig(ext_max=cfg.ext_max, hh_max=cfg.hh_max, pd_cap=cfg.pd_cap, seed=cfg.seed, degree_cap=cfg.degree_bound)
    arrows = cfg.arrows
    if arrows is None:
        scan = scan_removable(p, assemble_algebra(p, cfg.degree_bound))
        arrows = scan.greedy
        if not arrows:
            A = assemble_algebra(p, cfg.degree_bound)
            _emit(cfg, {"algebra": p.name, "removable": False, "note": "no removable arrows found by the scan",
                        "hochschild": fg_evidence_report(None, cfg.hh_max, lam=A)})
            return EXIT_UNCERTIFIED
    report = verify(p, arrows, config)
    if isinstance(report, RemovalRefusal):
        _emit(cfg, {"algebra": p.name, "removable": False, "refusal": report.as_dict()})
        return EXIT_UNCERTIFIED
    _emit(cfg, report.as_dict())
    return EXIT_FAIL if report.falsified else EXIT_OK


COMMANDS = {
    "basis": cmd_basis,
    "removable": cmd_removable,
    "remove": cmd_remove,
    "ext-table": cmd_ext_table,
    "hochschild": cmd_hochschild,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) and EXIT_PARSE
    cfg = _config(ns)
    try:
        return COMMANDS[cfg.command](cfg)
    except (PresentationError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except NotFiniteDimensional as exc:
        print(f"error: not finite-dimensional: {exc}", file=sys.stderr)
        return EXIT_INFINITE
    except DimensionCapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
