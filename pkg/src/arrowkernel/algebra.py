"""Finite-dimensional quotients kQ/I with canonical bases.

Construction is two-phase.  A noncommutative Buchberger completion (deglex
order: length first, then arrow declaration order) runs until every path of
some length L rewrites to zero; each rewrite step stays inside I, so this
certifies J^L ⊆ I.  The ideal is then computed exactly inside the finite
dimensional space kQ_{<L} by linear algebra, one (source, target) block at a
time, and the normal words are read off as the non-pivot columns.

Algebras store sparse structure constants: ``mult[(i, j)]`` lists the
nonzero ``(k, c)`` with b_i * b_j = sum c b_k.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .linalg import Field, Subspace
from .presentation import QuiverPresentation

__all__ = [
    "NotFiniteDimensional",
    "DimensionCapExceeded",
    "ReductionSystem",
    "FiniteDimAlgebra",
    "complete_reduction_system",
    "assemble_algebra",
    "opposite_algebra",
    "enveloping_algebra",
    "DEFAULT_DEGREE_CAP",
    "DEFAULT_ENV_CAP",
]

DEFAULT_DEGREE_CAP = 64
DEFAULT_ENV_CAP = 10_000
MAX_PATHS = 200_000

Word = tuple  # tuple of arrow indices


class NotFiniteDimensional(ValueError):
    def __init__(self, degree_cap: int, detail: str = ""):
        self.degree_cap = degree_cap
        msg = f"no length L <= {degree_cap} with all paths of length L in I"
        super().__init__(msg + (f" ({detail})" if detail else ""))


class DimensionCapExceeded(ValueError):
    pass


def _key(w: Word):
    return (len(w), w)


# ---------------------------------------------------------------------------
# phase 1: Buchberger completion until J^L ⊆ I is certified


class _Rewriter:
    def __init__(self, F: Field, quiver_src: Sequence[int], quiver_tgt: Sequence[int]):
        self.F = F
        self.src = quiver_src
        self.tgt = quiver_tgt
        self.rules: dict[Word, dict[Word, object]] = {}
        self.maxlen = 0

    def find(self, w: Word):
        for ln in range(min(self.maxlen, len(w)), 0, -1):
            for i in range(len(w) - ln + 1):
                sub = w[i : i + ln]
                if sub in self.rules:
                    return i, sub
        return None

    def reduce(self, poly: dict) -> dict:
        F = self.F
        work = {w: c for w, c in poly.items() if c != 0}
        out: dict[Word, object] = {}
        heap = [(-len(w), tuple(-x for x in w), w) for w in work]
        heapq.heapify(heap)
        while heap:
            _, _, w = heapq.heappop(heap)
            c = work.pop(w, None)
            if c is None or c == 0:
                continue
            hit = self.find(w)
            if hit is None:
                out[w] = c
                continue
            i, lead = hit
            for t, d in self.rules[lead].items():
                nw = w[:i] + t + w[i + len(lead) :]
                old = work.get(nw)
                val = _f_add(F, old if old is not None else F.zero, _f_mul(F, c, d))
                if val == 0:
                    work.pop(nw, None)
                else:
                    if old is None:
                        heapq.heappush(heap, (-len(nw), tuple(-x for x in nw), nw))
                    work[nw] = val
        return out


def _f_add(F: Field, a, b):
    return (a + b) % F.p if F.p else a + b


def _f_mul(F: Field, a, b):
    return (a * b) % F.p if F.p else a * b


def _monic(F: Field, poly: dict):
    lead = max(poly, key=_key)
    inv = F.inverse(poly[lead])
    return lead, {w: _f_mul(F, c, inv) for w, c in poly.items()}


class _Completion:
    def __init__(self, F, src, tgt, n_arrows):
        self.F = F
        self.rw = _Rewriter(F, src, tgt)
        self.src, self.tgt, self.n_arrows = src, tgt, n_arrows
        self.heap: list = []
        self.counter = itertools.count()
        self.pending: list[dict] = []

    def add(self, poly: dict) -> None:
        self.pending.append(poly)
        while self.pending:
            p = self.rw.reduce(self.pending.pop())
            if not p:
                continue
            lead, p = _monic(self.F, p)
            rhs = {w: (-c) % self.F.p if self.F.p else -c for w, c in p.items() if w != lead}
            # rules whose leading word contains the new one are re-queued
            for old in [L for L in self.rw.rules if _contains(L, lead)]:
                orhs = self.rw.rules.pop(old)
                back = {old: self.F.one}
                for w, c in orhs.items():
                    back[w] = (-c) % self.F.p if self.F.p else -c
                self.pending.append(back)
            self.rw.rules[lead] = rhs
            self.rw.maxlen = max(len(L) for L in self.rw.rules)
            for other in list(self.rw.rules):
                for a, b in ((lead, other), (other, lead)):
                    for k in range(1, min(len(a), len(b))):
                        if a[-k:] == b[:k]:
                            w = a + b[k:]
                            heapq.heappush(self.heap, (len(w), next(self.counter), a, b, k))

    def process_until(self, degree: int) -> None:
        F = self.F
        while self.heap and self.heap[0][0] <= degree:
            _, _, a, b, k = heapq.heappop(self.heap)
            if a not in self.rw.rules or b not in self.rw.rules:
                continue
            u, v = a[:-k], b[k:]
            s: dict = {}
            for w, c in self.rw.rules[a].items():
                s[w + v] = _f_add(F, s.get(w + v, F.zero), c)
            for w, c in self.rw.rules[b].items():
                s[u + w] = _f_add(F, s.get(u + w, F.zero), -c if F.p is None else (-c) % F.p)
            self.add(s)

    def some_irreducible_word(self, length: int) -> bool:
        """Depth-first search for one irreducible word of the given length."""
        stack: list[Word] = [(a,) for a in range(self.n_arrows) if (a,) not in self.rw.rules]
        while stack:
            w = stack.pop()
            if len(w) == length:
                return True
            for a in range(self.n_arrows):
                if self.src[a] != self.tgt[w[-1]]:
                    continue
                nw = w + (a,)
                if self.rw.find(nw[-self.rw.maxlen :] if self.rw.maxlen else nw) is None:
                    stack.append(nw)
        return False

    def paths_vanish(self, length: int) -> bool:
        """True iff every path of ``length`` rewrites to 0 (certifies J^length ⊆ I)."""
        if length == 0:
            return False
        if self.some_irreducible_word(length):
            return False
        stack: list[Word] = [(a,) for a in range(self.n_arrows)]
        seen = 0
        while stack:
            w = stack.pop()
            nf = self.rw.reduce({w: self.F.one})
            if len(w) == length:
                if nf:
                    return False
                continue
            if not nf:
                continue
            seen += 1
            if seen > MAX_PATHS:
                raise DimensionCapExceeded("too many surviving prefixes while certifying nilpotency")
            for a in range(self.n_arrows):
                if self.src[a] == self.tgt[w[-1]]:
                    stack.append(w + (a,))
        return True


def _contains(big: Word, small: Word) -> bool:
    n = len(small)
    return any(big[i : i + n] == small for i in range(len(big) - n + 1))


# ---------------------------------------------------------------------------
# phase 2: exact truncated ideal per (source, target) block


@dataclass
class _TruncatedIdeal:
    """Ī = (I + J^D)/J^D inside kQ_{<D}, block by block."""

    F: Field
    D: int
    blocks: dict  # (s, t) -> list of words, sorted descending (pivot = leading word)
    index: dict  # (s, t) -> {word: column}
    ideal: dict  # (s, t) -> Subspace

    def words(self, s, t):
        return self.blocks.get((s, t), [])


def _enumerate_paths(src, tgt, n_vertices, n_arrows, max_len):
    """All paths of length <= max_len, as (source, target, word)."""
    out = [(v, v, ()) for v in range(n_vertices)]
    frontier = [(src[a], tgt[a], (a,)) for a in range(n_arrows)]
    ln = 1
    while frontier and ln <= max_len:
        out.extend(frontier)
        if len(out) > MAX_PATHS:
            raise DimensionCapExceeded(f"more than {MAX_PATHS} paths below the truncation degree")
        if ln == max_len:
            break
        nxt = []
        for s, t, w in frontier:
            for a in range(n_arrows):
                if src[a] == t:
                    nxt.append((s, tgt[a], w + (a,)))
        frontier = nxt
        ln += 1
    return out


def _truncated_ideal(F, src, tgt, n_vertices, n_arrows, relations: list[dict], D: int) -> _TruncatedIdeal:
    paths = _enumerate_paths(src, tgt, n_vertices, n_arrows, D - 1)
    blocks: dict = {}
    for s, t, w in paths:
        blocks.setdefault((s, t), []).append(w)
    for k in blocks:
        blocks[k].sort(key=_key, reverse=True)
    index = {k: {w: i for i, w in enumerate(ws)} for k, ws in blocks.items()}

    def ends(w):
        return src[w[0]], tgt[w[-1]]

    def vec(block, poly):
        v = F.zero_vector(len(blocks[block]))
        for w, c in poly.items():
            if len(w) < D:
                v[index[block][w]] = _f_add(F, v[index[block][w]], c)
        return v

    ideal: dict = {k: Subspace.zero(F, len(ws)) for k, ws in blocks.items()}
    frontier: dict = {}
    for r in relations:
        blk = ends(next(iter(r)))
        if blk in ideal:
            frontier.setdefault(blk, []).append(vec(blk, r))
    # close under multiplication by arrows on both sides
    while frontier:
        new_frontier: dict = {}
        for blk, vecs in frontier.items():
            before = ideal[blk]
            after = before + Subspace.from_rows(F, np.array(vecs, dtype=F.dtype), len(blocks[blk]))
            if after.dim == before.dim:
                continue
            ideal[blk] = after
            s, t = blk
            ws = blocks[blk]
            for row in after.basis:
                poly = {ws[i]: row[i] for i in np.flatnonzero(row != 0)}
                for a in range(n_arrows):
                    if src[a] == t:
                        nb = (s, tgt[a])
                        p2 = {w + (a,): c for w, c in poly.items() if len(w) + 1 < D}
                        if p2 and nb in blocks:
                            new_frontier.setdefault(nb, []).append(vec(nb, p2))
                    if tgt[a] == s:
                        nb = (src[a], t)
                        p2 = {(a,) + w: c for w, c in poly.items() if len(w) + 1 < D}
                        if p2 and nb in blocks:
                            new_frontier.setdefault(nb, []).append(vec(nb, p2))
        frontier = new_frontier
    return _TruncatedIdeal(F, D, blocks, index, ideal)


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ReductionSystem:
    """Confluent rewriting rules for kQ/I, valid once words of length N are dropped."""

    field: Field
    arrow_names: tuple[str, ...]
    rules: dict  # leading word (tuple of arrow names) -> {word: coeff}
    degree: int  # N: every path of length N reduces to 0
    certified_length: int  # L from the completion phase (N <= L)
    order: str = "deglex (length, then arrow declaration order)"

    def reduce(self, poly: dict) -> dict:
        """Rewrite a {word-of-names: coeff} combination to normal form."""
        F = self.field
        work = {tuple(w): c for w, c in poly.items() if len(w) < self.degree}
        out: dict = {}
        maxlen = max((len(L) for L in self.rules), default=0)
        while work:
            w = max(work, key=lambda x: (len(x), tuple(self.arrow_names.index(a) for a in x)))
            c = work.pop(w)
            if F.scalar(c) == 0:
                continue
            hit = None
            for ln in range(min(maxlen, len(w)), 0, -1):
                for i in range(len(w) - ln + 1):
                    if w[i : i + ln] in self.rules:
                        hit = (i, w[i : i + ln])
                        break
                if hit:
                    break
            if hit is None:
                out[w] = F.scalar(c)
                continue
            i, lead = hit
            for t, d in self.rules[lead].items():
                nw = w[:i] + tuple(t) + w[i + len(lead) :]
                if len(nw) >= self.degree:
                    continue
                val = F.scalar(work.get(nw, 0)) + F.scalar(c) * F.scalar(d)
                val = F.scalar(val)
                if val == 0:
                    work.pop(nw, None)
                else:
                    work[nw] = val
        return {w: c for w, c in out.items() if c != 0}

    @property
    def leading_words(self) -> list[tuple[str, ...]]:
        return list(self.rules)


def _relations_as_polys(p: QuiverPresentation) -> list[dict]:
    F = p.field
    out = []
    for r in p.relations:
        poly: dict = {}
        for c, path in r.terms:
            w = tuple(p.quiver.arrow_index(a) for a in path.word)
            poly[w] = _f_add(F, poly.get(w, F.zero), F.scalar(c))
        poly = {w: c for w, c in poly.items() if c != 0}
        if poly:
            out.append(poly)
    return out


def _quiver_ints(p: QuiverPresentation):
    vidx = {v: i for i, v in enumerate(p.quiver.vertices)}
    src = [vidx[a.source] for a in p.quiver.arrows]
    tgt = [vidx[a.target] for a in p.quiver.arrows]
    return vidx, src, tgt


def _certify_length(p: QuiverPresentation, degree_cap: int) -> int:
    F = p.field
    _, src, tgt = _quiver_ints(p)
    n = len(src)
    comp = _Completion(F, src, tgt, n)
    for poly in _relations_as_polys(p):
        comp.add(poly)
    for d in range(1, degree_cap + 1):
        comp.process_until(d)
        if comp.paths_vanish(d):
            return d
    raise NotFiniteDimensional(degree_cap)


@dataclass
class _Normalized:
    ideal: _TruncatedIdeal
    normal: dict  # (s, t) -> list of normal words (ascending deglex)
    D: int


def _normalize(p: QuiverPresentation, degree_cap: int) -> tuple[_Normalized, int]:
    L = _certify_length(p, degree_cap)
    vidx, src, tgt = _quiver_ints(p)
    ti = _truncated_ideal(p.field, src, tgt, len(vidx), len(src), _relations_as_polys(p), L)
    normal = {}
    for blk, ws in ti.blocks.items():
        piv = set(ti.ideal[blk].pivots)
        normal[blk] = sorted((w for i, w in enumerate(ws) if i not in piv), key=_key)
    return _Normalized(ti, normal, L), L


def _nf(norm: _Normalized, F: Field, blk, w: Word) -> dict:
    """Normal form of a single word as {normal word: coeff}."""
    if len(w) >= norm.D:
        return {}
    ti = norm.ideal
    col = ti.index[blk][w]
    sub = ti.ideal[blk]
    if col not in sub.pivots:
        return {w: F.one}
    row = sub.basis[sub.pivots.index(col)]
    ws = ti.blocks[blk]
    out = {}
    for j in np.flatnonzero(row != 0):
        if j != col:
            out[ws[j]] = F.scalar(-row[j])
    return out


def complete_reduction_system(p: QuiverPresentation, degree_cap: int = DEFAULT_DEGREE_CAP) -> ReductionSystem:
    norm, L = _normalize(p, degree_cap)
    F = p.field
    names = p.quiver.arrow_names
    _, src, tgt = _quiver_ints(p)
    normal_set = {w for ws in norm.normal.values() for w in ws}
    rules = {}
    candidates = set()
    for w in normal_set:
        for a in range(len(src)):
            if w and src[a] != tgt[w[-1]]:
                continue
            nw = w + (a,) if w else (a,)
            if nw not in normal_set and (len(nw) == 1 or nw[1:] in normal_set):
                candidates.add(nw)
    for w in sorted(candidates, key=_key):
        blk = (src[w[0]], tgt[w[-1]])
        nf = _nf(norm, F, blk, w) if len(w) < norm.D else {}
        rules[tuple(names[a] for a in w)] = {tuple(names[a] for a in t): c for t, c in nf.items()}
    # nilpotency: least m with every path of length m vanishing
    N = _nilpotency_from_norm(norm, F, src, tgt)
    return ReductionSystem(F, names, rules, N, L)


def _nilpotency_from_norm(norm: _Normalized, F, src, tgt) -> int:
    by_len: dict[int, bool] = {}
    for blk, ws in norm.ideal.blocks.items():
        for w in ws:
            if _nf(norm, F, blk, w):
                by_len[len(w)] = True
    m = 1
    while by_len.get(m) or (m == 0):
        m += 1
    # every path of length < D with nonzero NF has length < m; paths of length >= D vanish
    for ln in sorted(by_len):
        if ln >= m:
            m = ln + 1
    return max(m, 1)


# ---------------------------------------------------------------------------


@dataclass(eq=False)
class FiniteDimAlgebra:
    """A basic algebra given by a basis tagged with idempotents and a multiplication table.

    Basis element ``i`` lies in ``e_src[i] A e_tgt[i]`` (left-to-right
    convention: ``e_u x e_w = x``).  ``words[i]`` writes it as a product of
    generator basis elements; idempotents have the empty word.
    """

    field: Field
    vertices: tuple
    labels: tuple[str, ...]
    src: tuple[int, ...]
    tgt: tuple[int, ...]
    mult: dict
    idempotents: tuple[int, ...]
    generators: tuple[int, ...]
    words: tuple[tuple[int, ...], ...]
    name: str = ""
    presentation: QuiverPresentation | None = None
    reduction: ReductionSystem | None = None
    _opposite: "FiniteDimAlgebra | None" = field(default=None, repr=False)
    _env: "FiniteDimAlgebra | None" = field(default=None, repr=False)
    env_factors: tuple | None = field(default=None, repr=False)

    @property
    def dim(self) -> int:
        return len(self.labels)

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    def __repr__(self) -> str:
        return f"FiniteDimAlgebra({self.name or '?'}, dim={self.dim}, field={self.field})"

    @cached_property
    def label_index(self) -> dict[str, int]:
        return {l: i for i, l in enumerate(self.labels)}

    @cached_property
    def idempotent_set(self) -> frozenset:
        return frozenset(self.idempotents)

    @cached_property
    def radical_indices(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.dim) if i not in self.idempotent_set)

    @cached_property
    def radical(self) -> Subspace:
        F = self.field
        rows = F.zeros(len(self.radical_indices), self.dim)
        for k, i in enumerate(self.radical_indices):
            rows[k, i] = F.one
        return Subspace.from_rows(F, rows, self.dim)

    @cached_property
    def basis_from(self) -> dict[int, tuple[int, ...]]:
        """Vertex index -> basis indices tagged with that source (a basis of e_v A)."""
        out = {v: [] for v in range(self.n_vertices)}
        for i, s in enumerate(self.src):
            out[s].append(i)
        return {v: tuple(x) for v, x in out.items()}

    @cached_property
    def basis_to(self) -> dict[int, tuple[int, ...]]:
        out = {v: [] for v in range(self.n_vertices)}
        for i, t in enumerate(self.tgt):
            out[t].append(i)
        return {v: tuple(x) for v, x in out.items()}

    def vertex_index(self, v) -> int:
        try:
            return self.vertices.index(v)
        except ValueError:
            from .presentation import UnknownVertex

            raise UnknownVertex(f"{v!r} is not a vertex") from None

    def block_count(self, u: int, w: int) -> int:
        """dim e_u A e_w."""
        return sum(1 for i in range(self.dim) if self.src[i] == u and self.tgt[i] == w)

    def mul(self, i: int, j: int) -> tuple:
        return self.mult.get((i, j), ())

    def multiply(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        F = self.field
        out = F.zero_vector(self.dim)
        xs = np.flatnonzero(x != 0)
        ys = np.flatnonzero(y != 0)
        for i in xs:
            for j in ys:
                for k, c in self.mul(int(i), int(j)):
                    out[k] = out[k] + x[i] * y[j] * c
        return F.reduce(out)

    def basis_vector(self, i: int) -> np.ndarray:
        v = self.field.zero_vector(self.dim)
        v[i] = self.field.one
        return v

    def one(self) -> np.ndarray:
        v = self.field.zero_vector(self.dim)
        for i in self.idempotents:
            v[i] = self.field.one
        return v

    @cached_property
    def nilpotency(self) -> int:
        """Least N with J^N = 0."""
        if self.reduction is not None:
            return self.reduction.degree
        F = self.field
        cur = self.radical
        n = 1
        while cur.dim:
            rows = []
            for row in cur.basis:
                for g in self.generators:
                    rows.append(self.multiply(row, self.basis_vector(g)))
            cur = Subspace.from_rows(F, np.array(rows, dtype=F.dtype), self.dim) if rows else Subspace.zero(F, self.dim)
            n += 1
        return n

    def opposite(self) -> "FiniteDimAlgebra":
        return opposite_algebra(self)

    def enveloping(self, cap: int = DEFAULT_ENV_CAP) -> "FiniteDimAlgebra":
        return enveloping_algebra(self, cap)

    def check_associative(self, triples: Iterable[tuple[int, int, int]] | None = None) -> bool:
        F = self.field
        d = self.dim
        it = triples if triples is not None else itertools.product(range(d), repeat=3)
        for i, j, k in it:
            left = F.zero_vector(d)
            for m, c in self.mul(i, j):
                for n, c2 in self.mul(m, k):
                    left[n] = left[n] + c * c2
            right = F.zero_vector(d)
            for m, c in self.mul(j, k):
                for n, c2 in self.mul(i, m):
                    right[n] = right[n] + c * c2
            if not np.array_equal(F.reduce(left), F.reduce(right)):
                return False
        return True

    def structurally_equal(self, other: "FiniteDimAlgebra") -> bool:
        return (
            self.field == other.field
            and self.vertices == other.vertices
            and self.labels == other.labels
            and self.src == other.src
            and self.tgt == other.tgt
            and self.idempotents == other.idempotents
            and {k: tuple(v) for k, v in self.mult.items()} == {k: tuple(v) for k, v in other.mult.items()}
        )

    def center_dim(self) -> int:
        """dim Z(A): solve x g = g x for generators and x e_v = e_v x."""
        F = self.field
        d = self.dim
        eqs = []
        for g in tuple(self.generators) + tuple(self.idempotents):
            # column j of L_g / R_g is the product with basis element j
            M = F.zeros(d, d)
            for j in range(d):
                for k, c in self.mul(j, g):
                    M[k, j] = F.scalar(M[k, j] + c)
                for k, c in self.mul(g, j):
                    M[k, j] = F.scalar(M[k, j] - c)
            eqs.append(M)
        if not eqs:
            return d
        from .linalg import nullspace

        return nullspace(F, np.vstack(eqs)).dim


def assemble_algebra(p: QuiverPresentation, degree_cap: int = DEFAULT_DEGREE_CAP, name: str = "") -> FiniteDimAlgebra:
    F = p.field
    norm, L = _normalize(p, degree_cap)
    vidx, src, tgt = _quiver_ints(p)
    names = p.quiver.arrow_names
    verts = p.quiver.vertices
    basis: list[tuple[int, int, Word]] = []
    for v in range(len(verts)):
        basis.append((v, v, ()))
    for blk in sorted(norm.normal):
        for w in norm.normal[blk]:
            if w:
                basis.append((blk[0], blk[1], w))
    # canonical order: by source vertex, then deglex word
    basis.sort(key=lambda b: (b[0], len(b[2]), b[2], b[1]))
    index = {(b[2] if b[2] else ("e", b[0])): i for i, b in enumerate(basis)}

    def idx(s, w):
        return index[w if w else ("e", s)]

    mult: dict = {}
    for i, (s1, t1, w1) in enumerate(basis):
        for j, (s2, t2, w2) in enumerate(basis):
            if t1 != s2:
                continue
            if not w1:
                mult[(i, j)] = ((j, F.one),)
                continue
            if not w2:
                mult[(i, j)] = ((i, F.one),)
                continue
            w = w1 + w2
            nf = _nf(norm, F, (s1, t2), w) if len(w) < norm.D else {}
            if nf:
                mult[(i, j)] = tuple(sorted((idx(s1, t), c) for t, c in nf.items()))
    labels = tuple("*".join(names[a] for a in w) if w else f"e{verts[s]}" for s, _, w in basis)
    idempotents = tuple(idx(v, ()) for v in range(len(verts)))
    arrow_basis = {}
    for a in range(len(names)):
        if (a,) in index:
            arrow_basis[a] = index[(a,)]
    generators = tuple(arrow_basis[a] for a in sorted(arrow_basis))
    words = tuple(tuple(arrow_basis[a] for a in w) for _, _, w in basis)
    rs = complete_reduction_system(p, degree_cap)
    return FiniteDimAlgebra(
        field=F,
        vertices=tuple(verts),
        labels=labels,
        src=tuple(b[0] for b in basis),
        tgt=tuple(b[1] for b in basis),
        mult=mult,
        idempotents=idempotents,
        generators=generators,
        words=words,
        name=name or p.name,
        presentation=p,
        reduction=rs,
    )


def opposite_algebra(A: FiniteDimAlgebra) -> FiniteDimAlgebra:
    if A._opposite is not None:
        return A._opposite
    mult = {(j, i): v for (i, j), v in A.mult.items()}
    op = FiniteDimAlgebra(
        field=A.field,
        vertices=A.vertices,
        labels=A.labels,
        src=A.tgt,
        tgt=A.src,
        mult=mult,
        idempotents=A.idempotents,
        generators=A.generators,
        words=tuple(tuple(reversed(w)) for w in A.words),
        name=(A.name[:-3] if A.name.endswith("^op") else A.name + "^op"),
    )
    op._opposite = A
    A._opposite = op
    return op


def enveloping_algebra(A: FiniteDimAlgebra, cap: int = DEFAULT_ENV_CAP) -> FiniteDimAlgebra:
    """A^op ⊗ A with (x1⊗x2)(y1⊗y2) = (y1 x1) ⊗ (x2 y2); right modules are A-bimodules."""
    if A.dim**2 > cap:
        raise DimensionCapExceeded(f"enveloping algebra of dim {A.dim**2} exceeds cap {cap}")
    if A._env is not None:
        return A._env
    F = A.field
    d, nv = A.dim, A.n_vertices

    def pair(i, j):
        return i * d + j

    labels = tuple(f"{A.labels[i]}|{A.labels[j]}" for i in range(d) for j in range(d))
    src = tuple(A.tgt[i] * nv + A.src[j] for i in range(d) for j in range(d))
    tgt = tuple(A.src[i] * nv + A.tgt[j] for i in range(d) for j in range(d))
    by_left: dict[int, list] = {}
    for (y1, x1), v in A.mult.items():
        by_left.setdefault(x1, []).append((y1, v))
    mult: dict = {}
    for (x2, y2), right in A.mult.items():
        for x1 in range(d):
            for y1, left in by_left.get(x1, ()):
                acc: dict = {}
                for k1, c1 in left:
                    for k2, c2 in right:
                        key = pair(k1, k2)
                        acc[key] = F.scalar(acc.get(key, F.zero) + c1 * c2)
                items = tuple(sorted((k, c) for k, c in acc.items() if c != 0))
                if items:
                    mult[(pair(x1, x2), pair(y1, y2))] = items
    vertices = tuple((u, v) for u in A.vertices for v in A.vertices)
    idempotents = tuple(pair(A.idempotents[u], A.idempotents[v]) for u in range(nv) for v in range(nv))
    gens = []
    gen_left = {}
    gen_right = {}
    for g in A.generators:
        for w in range(nv):
            e = A.idempotents[w]
            gen_left[(g, w)] = pair(g, e)
            gen_right[(w, g)] = pair(e, g)
    gens = sorted(set(gen_left.values()) | set(gen_right.values()))
    words = []
    for i in range(d):
        for j in range(d):
            left = [gen_left[(g, A.src[j])] for g in reversed(A.words[i])]
            right = [gen_right[(A.src[i], g)] for g in A.words[j]]
            words.append(tuple(left + right))
    env = FiniteDimAlgebra(
        field=F,
        vertices=vertices,
        labels=labels,
        src=src,
        tgt=tgt,
        mult=mult,
        idempotents=idempotents,
        generators=tuple(gens),
        words=tuple(words),
        name=f"{A.name}^env",
        env_factors=(A,),
    )
    A._env = env
    return env
