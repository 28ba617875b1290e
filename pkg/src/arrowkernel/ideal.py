"""Minimal generators of I, removability of arrow sets, and the arrow-removal algebra.

Everything is computed inside kQ_{<D} with D = N + 1 where J^N ⊆ I.  There
J^D ⊆ JI + IJ, so I/(JI + IJ) can be read off from truncated subspaces:
``g = dim Ī - dim(J̄Ī + ĪJ̄)`` block by block.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .algebra import (
    FiniteDimAlgebra,
    _key,
    _quiver_ints,
    _relations_as_polys,
    _truncated_ideal,
    assemble_algebra,
)
from .linalg import Field, Subspace
from .presentation import Path, PresentationError, Quiver, QuiverPresentation, Relation

__all__ = [
    "MinimalGeneratorSpace",
    "RemovalCertificate",
    "RemovalRefusal",
    "CertificateMismatch",
    "CheckFailed",
    "minimal_generator_space",
    "hom_vanishing_table",
    "arrow_set_removable",
    "remove_arrows",
    "trivial_extension_check",
    "scan_removable",
]


class CertificateMismatch(ValueError):
    pass


class CheckFailed(AssertionError):
    pass


@dataclass
class MinimalGeneratorSpace:
    field: Field
    degree: int  # D
    blocks: dict  # (s, t) -> words of kQ_{<D}, descending order
    ideal: dict  # (s, t) -> Subspace of Ī
    boundary: dict  # (s, t) -> Subspace of J̄Ī + ĪJ̄
    arrow_names: tuple
    vertices: tuple

    @property
    def g(self) -> int:
        return sum(self.ideal[b].dim - self.boundary[b].dim for b in self.ideal)

    def block_order(self):
        return sorted(self.ideal)

    def lifted_basis(self) -> list[dict]:
        """Relations (as {word: coeff}) whose classes form a basis of I/(JI+IJ)."""
        return _greedy_lifts(self, self.ideal)

    def as_relation(self, poly: dict, quiver: Quiver) -> Relation:
        return _poly_to_relation(self.field, poly, self.arrow_names, quiver)


def minimal_generator_space(p: QuiverPresentation, A: FiniteDimAlgebra | None = None, degree: int | None = None) -> MinimalGeneratorSpace:
    if A is None:
        A = assemble_algebra(p)
    D = degree if degree is not None else A.nilpotency + 1
    if D < A.nilpotency + 1:
        raise ValueError("truncation degree must be at least N + 1")
    F = p.field
    vidx, src, tgt = _quiver_ints(p)
    ti = _truncated_ideal(F, src, tgt, len(vidx), len(src), _relations_as_polys(p), D)
    boundary = {}
    rows: dict = {b: [] for b in ti.blocks}
    for (s, t), sub in ti.ideal.items():
        ws = ti.blocks[(s, t)]
        for row in sub.basis:
            poly = {ws[i]: row[i] for i in np.flatnonzero(row != 0)}
            for a in range(len(src)):
                if src[a] == t and (s, tgt[a]) in ti.blocks:
                    q = {w + (a,): c for w, c in poly.items() if len(w) + 1 < D}
                    if q:
                        rows[(s, tgt[a])].append(_vec(F, ti, (s, tgt[a]), q))
                if tgt[a] == s and (src[a], t) in ti.blocks:
                    q = {(a,) + w: c for w, c in poly.items() if len(w) + 1 < D}
                    if q:
                        rows[(src[a], t)].append(_vec(F, ti, (src[a], t), q))
    for b, ws in ti.blocks.items():
        if rows[b]:
            boundary[b] = Subspace.from_rows(F, np.array(rows[b], dtype=F.dtype), len(ws))
        else:
            boundary[b] = Subspace.zero(F, len(ws))
        assert ti.ideal[b].contains(boundary[b])
    return MinimalGeneratorSpace(F, D, ti.blocks, ti.ideal, boundary, p.quiver.arrow_names, p.quiver.vertices)


def _vec(F, ti, block, poly):
    v = F.zero_vector(len(ti.blocks[block]))
    idx = ti.index[block]
    for w, c in poly.items():
        v[idx[w]] = F.scalar(v[idx[w]] + c)
    return v


def _greedy_lifts(mgs: MinimalGeneratorSpace, source: dict) -> list[dict]:
    """Pick rows of ``source`` (per block) that extend the boundary to a basis of Ī."""
    F = mgs.field
    out = []
    for b in mgs.block_order():
        cur = mgs.boundary[b]
        ws = mgs.blocks[b]
        # rows in increasing leading word so the simplest relations come first
        for row in reversed(list(source[b].basis)):
            if cur.dim == mgs.ideal[b].dim:
                break
            cand = Subspace.from_rows(F, row[None, :], len(ws))
            if cur.contains(cand):
                continue
            cur = cur + cand
            out.append({ws[i]: row[i] for i in np.flatnonzero(row != 0)})
    return out


def _display_coeff(F: Field, c):
    if F.p is not None:
        c = int(c) % F.p
        return c - F.p if c > F.p // 2 else c
    c = Fraction(int(c.numerator), int(c.denominator))
    return int(c) if c.denominator == 1 else c


def _poly_to_relation(F: Field, poly: dict, names: Sequence[str], quiver: Quiver) -> Relation:
    terms = []
    for w in sorted(poly, key=_key, reverse=True):
        word = tuple(names[a] for a in w)
        terms.append((_display_coeff(F, poly[w]), Path.from_word(quiver, word)))
    # lead with a positive coefficient
    if terms and terms[0][0] < 0:
        terms = [(-c, pth) for c, pth in terms]
    return Relation(tuple(terms))


# ---------------------------------------------------------------------------


def _resolve_arrows(p: QuiverPresentation, T: Iterable[str]) -> tuple[str, ...]:
    T = tuple(T)
    if not T:
        raise PresentationError("empty arrow set")
    if len(set(T)) != len(T):
        raise PresentationError("repeated arrow in set")
    for a in T:
        p.quiver.arrow(a)  # raises UnknownArrow
    # declaration order for determinism
    return tuple(a for a in p.quiver.arrow_names if a in T)


@dataclass
class HomTable:
    arrows: tuple[str, ...]
    entries: dict  # (a_i, a_j) -> dim f_j Λ e_i
    witnesses: dict  # (a_i, a_j) -> basis label of a nonzero path

    @property
    def vanishes(self) -> bool:
        return all(v == 0 for v in self.entries.values())

    def as_dict(self) -> dict:
        return {
            "arrows": list(self.arrows),
            "entries": [{"i": i, "j": j, "dim": self.entries[(i, j)], "witness": self.witnesses.get((i, j))} for i, j in self.entries],
        }


def hom_vanishing_table(A: FiniteDimAlgebra, T: Iterable[str]) -> HomTable:
    """Entry (i, j) = dim f_j Λ e_i: basis elements from target(a_j) to source(a_i)."""
    if A.presentation is None:
        raise ValueError("algebra has no presentation")
    p = A.presentation
    T = _resolve_arrows(p, T)
    entries, witnesses = {}, {}
    for ai in T:
        ei = A.vertex_index(p.quiver.arrow(ai).source)
        for aj in T:
            fj = A.vertex_index(p.quiver.arrow(aj).target)
            hits = [A.labels[b] for b in range(A.dim) if A.src[b] == fj and A.tgt[b] == ei]
            entries[(ai, aj)] = len(hits)
            if hits:
                witnesses[(ai, aj)] = hits[0]
    return HomTable(T, entries, witnesses)


@dataclass
class RemovalCertificate:
    presentation: QuiverPresentation
    arrows: tuple[str, ...]
    ends: tuple[tuple[str, str], ...]  # (source e_i, target f_i) vertex ids
    relations: tuple[Relation, ...]  # T-free generators of I
    hom: HomTable
    dim_lambda: int
    dim_gamma: int
    dim_p: int
    generator_count: int

    def as_dict(self) -> dict:
        return {
            "arrows": list(self.arrows),
            "ends": [{"arrow": a, "e": e, "f": f} for a, (e, f) in zip(self.arrows, self.ends)],
            "t_free_relations": [str(r) for r in self.relations],
            "minimal_generator_count": self.generator_count,
            "hom_table": self.hom.as_dict(),
            "dim_lambda": self.dim_lambda,
            "dim_gamma": self.dim_gamma,
            "dim_p": self.dim_p,
        }


@dataclass
class RemovalRefusal:
    arrows: tuple[str, ...]
    reason: str  # "occurrence" | "hom"
    deficit: int = 0
    witness: str | None = None
    witness_pair: tuple[str, str] | None = None
    generator_count: int = 0

    def as_dict(self) -> dict:
        d = {"arrows": list(self.arrows), "reason": self.reason}
        if self.reason == "occurrence":
            d["deficit"] = self.deficit
            d["minimal_generator_count"] = self.generator_count
            d["t_free_classes"] = self.generator_count - self.deficit
        else:
            d["witness"] = self.witness
            d["witness_pair"] = list(self.witness_pair) if self.witness_pair else None
        return d


def _t_free_part(mgs: MinimalGeneratorSpace, T_idx: set) -> dict:
    F = mgs.field
    out = {}
    for b, ws in mgs.blocks.items():
        free_cols = [i for i, w in enumerate(ws) if not (set(w) & T_idx)]
        rows = F.zeros(len(free_cols), len(ws))
        for k, i in enumerate(free_cols):
            rows[k, i] = F.one
        free = Subspace.from_rows(F, rows, len(ws))
        out[b] = mgs.ideal[b].intersection(free)
    return out


def arrow_set_removable(p: QuiverPresentation, T: Iterable[str], A: FiniteDimAlgebra | None = None,
                        mgs: MinimalGeneratorSpace | None = None):
    T = _resolve_arrows(p, T)
    if A is None:
        A = assemble_algebra(p)
    if mgs is None:
        mgs = minimal_generator_space(p, A)
    T_idx = {p.quiver.arrow_index(a) for a in T}
    v_free = _t_free_part(mgs, T_idx)
    covered = 0
    for b in mgs.blocks:
        covered += (v_free[b] + mgs.boundary[b]).dim - mgs.boundary[b].dim
    g = mgs.g
    if covered < g:
        return RemovalRefusal(T, "occurrence", deficit=g - covered, generator_count=g)
    hom = hom_vanishing_table(A, T)
    if not hom.vanishes:
        pair = next(k for k, v in hom.entries.items() if v)
        return RemovalRefusal(T, "hom", witness=hom.witnesses[pair], witness_pair=pair, generator_count=g)
    lifts = _greedy_lifts(mgs, v_free)
    gamma_q = _reduced_quiver(p.quiver, T)
    relations = tuple(mgs.as_relation(poly, gamma_q) for poly in lifts)
    ends = tuple((p.quiver.arrow(a).source, p.quiver.arrow(a).target) for a in T)
    dim_p = sum(1 for lab in A.labels if set(lab.split("*")) & set(T))
    return RemovalCertificate(p, T, ends, relations, hom, A.dim, A.dim - dim_p, dim_p, g)


def _reduced_quiver(q: Quiver, T: Sequence[str]) -> Quiver:
    return Quiver(q.vertices, tuple(a for a in q.arrows if a.name not in T))


def remove_arrows(p: QuiverPresentation, cert: RemovalCertificate) -> QuiverPresentation:
    if cert.presentation != p:
        raise CertificateMismatch("certificate was issued for a different presentation")
    q = _reduced_quiver(p.quiver, cert.arrows)
    name = f"{p.name}-{{{','.join(cert.arrows)}}}" if p.name else ""
    return QuiverPresentation(p.field, q, cert.relations, name=name)


# ---------------------------------------------------------------------------


@dataclass
class TrivialExtensionReport:
    dim_lambda: int
    dim_gamma: int
    dim_p: int
    formula_dim_p: int
    p_basis: tuple[str, ...]
    factorizations: dict  # label -> (u, arrow, v)
    pp_zero: bool

    @property
    def passed(self) -> bool:
        return self.dim_lambda == self.dim_gamma + self.formula_dim_p and self.dim_p == self.formula_dim_p and self.pp_zero

    def as_dict(self) -> dict:
        return {
            "dim_lambda": self.dim_lambda,
            "dim_gamma": self.dim_gamma,
            "dim_p": self.dim_p,
            "sum_dim_gamma_e_times_dim_f_gamma": self.formula_dim_p,
            "p_basis": list(self.p_basis),
            "pp_zero": self.pp_zero,
            "passed": self.passed,
        }


def trivial_extension_check(L: FiniteDimAlgebra, G: FiniteDimAlgebra, cert: RemovalCertificate) -> TrivialExtensionReport:
    T = set(cert.arrows)
    gamma_labels = set(G.labels)
    p_idx = [b for b in range(L.dim) if L.labels[b] not in gamma_labels]
    for b in range(G.dim):
        if G.labels[b] not in L.label_index:
            raise CheckFailed(f"Γ basis element {G.labels[b]} is not a Λ basis element")
    facts = {}
    for b in p_idx:
        word = L.labels[b].split("*")
        pos = [k for k, a in enumerate(word) if a in T]
        if len(pos) != 1:
            raise CheckFailed(f"{L.labels[b]} does not contain exactly one removed arrow")
        k = pos[0]
        a = word[k]
        ai = cert.arrows.index(a)
        e, f = cert.ends[ai]
        u = "*".join(word[:k]) or f"e{e}"
        v = "*".join(word[k + 1 :]) or f"e{f}"
        if u not in gamma_labels or v not in gamma_labels:
            raise CheckFailed(f"{L.labels[b]} does not factor through Γ")
        facts[L.labels[b]] = (u, a, v)
    formula = 0
    for e, f in cert.ends:
        ei, fi = G.vertex_index(e), G.vertex_index(f)
        formula += len(G.basis_to[ei]) * len(G.basis_from[fi])
    pset = set(p_idx)
    pp_zero = all(not L.mul(x, y) for x in pset for y in pset)
    return TrivialExtensionReport(L.dim, G.dim, len(p_idx), formula, tuple(L.labels[b] for b in p_idx), facts, pp_zero)


# ---------------------------------------------------------------------------


@dataclass
class ScanResult:
    singletons: tuple[str, ...]
    greedy: tuple[str, ...]
    refusals: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "singleton_removable": list(self.singletons),
            "greedy_maximal_set": list(self.greedy),
            "refusals": {a: r.as_dict() for a, r in self.refusals.items()},
        }


def scan_removable(p: QuiverPresentation, A: FiniteDimAlgebra | None = None) -> ScanResult:
    if A is None:
        A = assemble_algebra(p)
    mgs = minimal_generator_space(p, A)
    singles, refusals = [], {}
    for a in p.quiver.arrow_names:
        r = arrow_set_removable(p, [a], A, mgs)
        if isinstance(r, RemovalCertificate):
            singles.append(a)
        else:
            refusals[a] = r
    greedy: list[str] = []
    for a in singles:
        if isinstance(arrow_set_removable(p, greedy + [a], A, mgs), RemovalCertificate):
            greedy.append(a)
    return ScanResult(tuple(singles), tuple(greedy), refusals)
