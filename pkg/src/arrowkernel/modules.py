"""Right modules over a FiniteDimAlgebra.

A module is stored by its vertex dimensions and the action matrices of the
algebra's generators; the action of any basis element is the product of
generator matrices along its word (row vectors: ``m·x = m @ act(x)``).  The
module basis is ordered in vertex blocks, so ``act(e_v)`` is a coordinate
projection.

Resolutions keep, for each generator of P_{i+1}, its image in P_i.  Ext is
computed from these images by the Yoneda identification
Hom(e_vA, N) = N e_v.
"""

from __future__ import annotations

import hashlib
import threading
from collections import OrderedDict
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .algebra import FiniteDimAlgebra, opposite_algebra
from .linalg import Field, Subspace, left_nullspace, nullspace, rank

__all__ = [
    "AlgebraMismatch",
    "Representation",
    "ModuleMap",
    "FreeModule",
    "Resolution",
    "DimBound",
    "simple_module",
    "projective_module",
    "free_module",
    "regular_module",
    "zero_module",
    "direct_sum",
    "submodule",
    "quotient_module",
    "hom_space",
    "hom_dim",
    "top_dims",
    "radical_subspace",
    "projective_cover",
    "syzygy",
    "kernel_module",
    "generated_submodule",
    "minimal_resolution",
    "ext_dims",
    "dual_module",
    "pd_up_to",
    "id_up_to",
    "is_projective",
    "random_module",
    "pullback",
    "are_isomorphic",
    "DEFAULT_PD_CAP",
]

DEFAULT_PD_CAP = 12


class AlgebraMismatch(ValueError):
    pass


@dataclass(eq=False)
class Representation:
    algebra: FiniteDimAlgebra
    dims: tuple[int, ...]
    gens: dict  # generator basis index -> (dim x dim) action matrix
    name: str = ""

    def __post_init__(self):
        self.dims = tuple(int(d) for d in self.dims)
        if len(self.dims) != self.algebra.n_vertices:
            raise ValueError("one dimension per vertex required")
        self._acts: dict = {}
        self._lock = threading.Lock()

    @property
    def field(self) -> Field:
        return self.algebra.field

    @cached_property
    def dim(self) -> int:
        return sum(self.dims)

    @cached_property
    def offsets(self) -> tuple[int, ...]:
        out, acc = [], 0
        for d in self.dims:
            out.append(acc)
            acc += d
        return tuple(out)

    def block(self, v: int) -> slice:
        return slice(self.offsets[v], self.offsets[v] + self.dims[v])

    def vertex_of(self, i: int) -> int:
        for v in range(len(self.dims)):
            if self.offsets[v] <= i < self.offsets[v] + self.dims[v]:
                return v
        raise IndexError(i)

    def gen(self, g: int) -> np.ndarray:
        m = self.gens.get(g)
        if m is None:
            return self.field.zeros(self.dim, self.dim)
        return m

    def act(self, b: int) -> np.ndarray:
        """Action matrix of algebra basis element ``b``."""
        m = self._acts.get(b)
        if m is not None:
            return m
        A, F = self.algebra, self.field
        if b in A.idempotent_set:
            v = A.src[b]
            m = F.zeros(self.dim, self.dim)
            s = self.block(v)
            for i in range(s.start, s.stop):
                m[i, i] = F.one
        else:
            word = A.words[b]
            m = self.gen(word[0])
            for g in word[1:]:
                m = F.matmul(m, self.gen(g))
        with self._lock:
            self._acts[b] = m
        return m

    def act_element(self, x: np.ndarray) -> np.ndarray:
        F = self.field
        out = F.zeros(self.dim, self.dim)
        for b in np.flatnonzero(x != 0):
            out = out + self.act(int(b)) * x[b]
        return F.reduce(out)

    def orbit(self, vec: np.ndarray, basis: Sequence[int] | None = None) -> np.ndarray:
        """Rows ``vec · b`` for algebra basis elements ``b`` (default: all)."""
        A, F = self.algebra, self.field
        basis = range(A.dim) if basis is None else basis
        memo: dict = {(): vec}
        rows = []
        for b in basis:
            if b in A.idempotent_set:
                v = A.src[b]
                r = F.zero_vector(self.dim)
                s = self.block(v)
                r[s] = vec[s]
                rows.append(r)
                continue
            w = A.words[b]
            k = len(w)
            while w[:k] not in memo:
                k -= 1
            cur = memo[w[:k]]
            for j in range(k, len(w)):
                cur = F.matmul(cur, self.gen(w[j]))
                memo[w[: j + 1]] = cur
            rows.append(cur)
        if not rows:
            return F.zeros(0, self.dim)
        return np.array(rows, dtype=F.dtype).reshape(len(rows), self.dim)

    @cached_property
    def fingerprint(self) -> str:
        h = hashlib.sha256()
        h.update(repr((id(self.algebra), self.dims)).encode())
        for g in sorted(self.gens):
            m = self.gens[g]
            h.update(str(g).encode())
            h.update(m.tobytes() if m.dtype != object else repr(m.tolist()).encode())
        return h.hexdigest()

    def check(self) -> bool:
        """Block structure of generators plus multiplicativity on all basis pairs."""
        A, F = self.algebra, self.field
        for g, m in self.gens.items():
            mask = F.zeros(self.dim, self.dim) != 0
            mask[self.block(A.src[g]), self.block(A.tgt[g])] = True
            if not F.is_zero(m[~mask]):
                return False
        for i in range(A.dim):
            for j in range(A.dim):
                lhs = F.matmul(self.act(i), self.act(j))
                rhs = F.zeros(self.dim, self.dim)
                for k, c in A.mul(i, j):
                    rhs = rhs + self.act(k) * c
                if not np.array_equal(lhs, F.reduce(rhs)):
                    return False
        return True

    def __repr__(self) -> str:
        return f"Representation({self.name or '?'}, dims={self.dims}, over {self.algebra.name})"


@dataclass(eq=False)
class ModuleMap:
    domain: Representation
    codomain: Representation
    matrix: np.ndarray  # dim(domain) x dim(codomain); f(m) = m @ matrix

    def block(self, v: int) -> np.ndarray:
        return self.matrix[self.domain.block(v), self.codomain.block(v)]

    def is_homomorphism(self) -> bool:
        F = self.domain.field
        A = self.domain.algebra
        for g in set(self.domain.gens) | set(self.codomain.gens):
            if not np.array_equal(F.matmul(self.domain.gen(g), self.matrix), F.matmul(self.matrix, self.codomain.gen(g))):
                return False
        # vertex grading
        for u in range(A.n_vertices):
            for w in range(A.n_vertices):
                if u != w and not F.is_zero(self.matrix[self.domain.block(u), self.codomain.block(w)]):
                    return False
        return True

    @property
    def rank(self) -> int:
        return rank(self.domain.field, self.matrix)


# ---------------------------------------------------------------------------
# constructions


def zero_module(A: FiniteDimAlgebra) -> Representation:
    return Representation(A, (0,) * A.n_vertices, {}, name="0")


def simple_module(A: FiniteDimAlgebra, v) -> Representation:
    vi = v if isinstance(v, int) and v not in A.vertices else A.vertex_index(v)
    dims = [0] * A.n_vertices
    dims[vi] = 1
    return Representation(A, tuple(dims), {}, name=f"S{A.vertices[vi]}")


class FreeModule(Representation):
    """⊕_j e_{v_j} A, with the coordinate of each basis element of each summand."""

    def __init__(self, algebra: FiniteDimAlgebra, summands: Sequence[int], name: str = ""):
        A, F = algebra, algebra.field
        summands = tuple(sorted(summands))
        dims = [0] * A.n_vertices
        for v in summands:
            for b in A.basis_from[v]:
                dims[A.tgt[b]] += 1
        offsets = np.cumsum([0] + dims[:-1]).tolist()
        fill = list(offsets)
        coords = []
        for v in summands:
            c = {}
            for b in A.basis_from[v]:
                w = A.tgt[b]
                c[b] = fill[w]
                fill[w] += 1
            coords.append(c)
        n = sum(dims)
        gens = {}
        for g in A.generators:
            m = F.zeros(n, n)
            nz = False
            for c in coords:
                for b, row in c.items():
                    for k, val in A.mul(b, g):
                        m[row, c[k]] = val
                        nz = True
            if nz:
                gens[g] = m
        super().__init__(A, tuple(dims), gens, name=name)
        self.summands = summands
        self.coords = coords

    def generator_coord(self, j: int) -> int:
        """Coordinate of the idempotent generating summand ``j``."""
        A = self.algebra
        return self.coords[j][A.idempotents[self.summands[j]]]

    def component(self, vec: np.ndarray, j: int) -> np.ndarray:
        """The A-element x with (summand j part of vec) = e_{v_j} x."""
        A, F = self.algebra, self.field
        out = F.zero_vector(A.dim)
        for b, pos in self.coords[j].items():
            out[b] = vec[pos]
        return out


def free_module(A: FiniteDimAlgebra, summands: Sequence[int]) -> FreeModule:
    return FreeModule(A, summands)


def projective_module(A: FiniteDimAlgebra, v) -> FreeModule:
    vi = v if isinstance(v, int) and v not in A.vertices else A.vertex_index(v)
    return FreeModule(A, [vi], name=f"e{A.vertices[vi]}A")


def regular_module(A: FiniteDimAlgebra) -> FreeModule:
    return FreeModule(A, list(range(A.n_vertices)), name=f"{A.name}_{A.name}")


def direct_sum(*mods: Representation) -> tuple[Representation, list[np.ndarray]]:
    """The sum and, for each summand, its inclusion matrix (rows = summand basis)."""
    if not mods:
        raise ValueError("need at least one module")
    A, F = mods[0].algebra, mods[0].field
    for M in mods:
        if M.algebra is not A:
            raise AlgebraMismatch("direct sum over different algebras")
    dims = [sum(M.dims[v] for M in mods) for v in range(A.n_vertices)]
    n = sum(dims)
    offsets = np.cumsum([0] + dims[:-1]).tolist()
    maps = []
    fill = list(offsets)
    positions = []
    for M in mods:
        pos = []
        for v in range(A.n_vertices):
            pos.extend(range(fill[v], fill[v] + M.dims[v]))
            fill[v] += M.dims[v]
        positions.append(pos)
        inc = F.zeros(M.dim, n)
        for i, p in enumerate(pos):
            inc[i, p] = F.one
        maps.append(inc)
    gens = {}
    for g in set().union(*(M.gens for M in mods)):
        m = F.zeros(n, n)
        for M, pos in zip(mods, positions):
            if g in M.gens:
                m[np.ix_(pos, pos)] = M.gens[g]
        gens[g] = m
    return Representation(A, tuple(dims), gens, name="+".join(M.name or "?" for M in mods)), maps


def _as_rows(F: Field, rows, n: int) -> np.ndarray:
    rows = np.asarray(rows, dtype=F.dtype)
    if rows.size == 0:
        return F.zeros(0, n)
    return rows.reshape(-1, n)


def _graded_subspace(M: Representation, rows: np.ndarray) -> list[Subspace]:
    """Per-vertex RREF bases of the span of ``rows`` projected to each block."""
    F = M.field
    out = []
    for v in range(M.algebra.n_vertices):
        s = M.block(v)
        blk = rows[:, s] if rows.size else F.zeros(0, M.dims[v])
        out.append(Subspace.from_rows(F, blk, M.dims[v]))
    return out


def submodule(M: Representation, rows: np.ndarray, name: str = "") -> tuple[Representation, np.ndarray]:
    """Submodule spanned by ``rows`` (assumed closed under the action and the idempotents).

    Returns the module and its inclusion matrix into M.
    """
    F, A = M.field, M.algebra
    rows = _as_rows(F, rows, M.dim)
    parts = _graded_subspace(M, rows)
    dims = tuple(p.dim for p in parts)
    n = sum(dims)
    inc = F.zeros(n, M.dim)
    r = 0
    for v, p in enumerate(parts):
        inc[r : r + p.dim, M.block(v)] = p.basis
        r += p.dim
    sub_off = np.cumsum([0] + list(dims[:-1])).tolist()
    gens = {}
    for g, X in M.gens.items():
        u, w = A.src[g], A.tgt[g]
        if not dims[u] or not dims[w]:
            continue
        img = F.matmul(inc[sub_off[u] : sub_off[u] + dims[u]], X)[:, M.block(w)]
        coords = parts[w].coordinates(img)
        m = F.zeros(n, n)
        m[sub_off[u] : sub_off[u] + dims[u], sub_off[w] : sub_off[w] + dims[w]] = coords
        gens[g] = m
    return Representation(A, dims, gens, name=name), inc


def generated_submodule(M: Representation, vectors: np.ndarray) -> tuple[Representation, np.ndarray]:
    F = M.field
    vectors = _as_rows(F, vectors, M.dim)
    rows = [M.orbit(v) for v in vectors]
    stacked = np.vstack(rows) if rows else F.zeros(0, M.dim)
    return submodule(M, stacked)


def quotient_module(M: Representation, rows: np.ndarray, name: str = "") -> tuple[Representation, np.ndarray]:
    """M / U for the submodule U spanned by ``rows``; returns the module and the projection matrix."""
    F, A = M.field, M.algebra
    rows = _as_rows(F, rows, M.dim)
    parts = _graded_subspace(M, rows)
    keep = [p.complement_coordinates() for p in parts]
    dims = tuple(len(k) for k in keep)
    n = sum(dims)
    q_off = np.cumsum([0] + list(dims[:-1])).tolist()

    def project_block(v, vecs):
        red = parts[v].reduce(vecs)
        return red[:, keep[v]]

    proj = F.zeros(M.dim, n)
    for v in range(A.n_vertices):
        s = M.block(v)
        if dims[v]:
            proj[s, q_off[v] : q_off[v] + dims[v]] = project_block(v, F.eye(M.dims[v]))
    gens = {}
    for g, X in M.gens.items():
        u, w = A.src[g], A.tgt[g]
        if not dims[u] or not dims[w]:
            continue
        lifts = F.zeros(dims[u], M.dim)
        for k, c in enumerate(keep[u]):
            lifts[k, M.offsets[u] + c] = F.one
        img = F.matmul(lifts, X)[:, M.block(w)]
        m = F.zeros(n, n)
        m[q_off[u] : q_off[u] + dims[u], q_off[w] : q_off[w] + dims[w]] = project_block(w, img)
        gens[g] = m
    return Representation(A, dims, gens, name=name), proj


def pullback(M: Representation, target: FiniteDimAlgebra, images: dict, name: str = "") -> Representation:
    """Restriction of scalars along an algebra map given on generators and idempotents.

    ``images`` maps each generator of ``target`` to an element (coefficient
    vector) of M's algebra; vertices are identified by position.
    """
    gens = {}
    for g in target.generators:
        x = images[g]
        m = M.act_element(x)
        if not M.field.is_zero(m):
            gens[g] = m
    return Representation(target, M.dims, gens, name=name)


def dual_module(M: Representation) -> Representation:
    op = opposite_algebra(M.algebra)
    gens = {g: m.T.copy() for g, m in M.gens.items()}
    return Representation(op, M.dims, gens, name=f"D({M.name})")


# ---------------------------------------------------------------------------
# Hom


def hom_space(M: Representation, N: Representation) -> list[ModuleMap]:
    if M.algebra is not N.algebra:
        raise AlgebraMismatch("Hom between modules over different algebras")
    F, A = M.field, M.algebra
    nv = A.n_vertices
    # unknown blocks H_v (dims M_v x N_v), row-major vectorized
    off, acc = [], 0
    for v in range(nv):
        off.append(acc)
        acc += M.dims[v] * N.dims[v]
    n_unknowns = acc
    eqs = []
    for g in A.generators:
        u, w = A.src[g], A.tgt[g]
        mu, mw, nu, nw = M.dims[u], M.dims[w], N.dims[u], N.dims[w]
        if not mu or not nw:
            continue
        XM = M.gen(g)[M.block(u), M.block(w)]
        XN = N.gen(g)[N.block(u), N.block(w)]
        E = F.zeros(mu * nw, n_unknowns)
        if mw:
            E[:, off[w] : off[w] + mw * nw] = np.kron(XM, F.eye(nw))
        if nu:
            E[:, off[u] : off[u] + mu * nu] = F.reduce(E[:, off[u] : off[u] + mu * nu] - np.kron(F.eye(mu), XN.T))
        eqs.append(F.reduce(E))
    if eqs:
        sol = nullspace(F, np.vstack(eqs))
    else:
        sol = Subspace.full(F, n_unknowns)
    maps = []
    for vec in sol.basis:
        H = F.zeros(M.dim, N.dim)
        for v in range(nv):
            blk = vec[off[v] : off[v] + M.dims[v] * N.dims[v]].reshape(M.dims[v], N.dims[v])
            H[M.block(v), N.block(v)] = blk
        maps.append(ModuleMap(M, N, H))
    return maps


def hom_dim(M: Representation, N: Representation) -> int:
    return len(hom_space(M, N))


def are_isomorphic(M: Representation, N: Representation, tries: int = 64, seed: int = 0) -> bool:
    """One-sided Monte Carlo isomorphism test.

    True is certain (an invertible homomorphism was found).  False means no
    invertible combination of a Hom(M, N) basis turned up in ``tries``
    seeded samples; over GF(p) each sample succeeds with probability at
    least about (1 - 1/p)^(number of summands) when M and N are isomorphic.
    """
    if M.dims != N.dims:
        return False
    if M.dim == 0:
        return True
    F = M.field
    basis = hom_space(M, N)
    if not basis:
        return False
    rng = np.random.default_rng(seed)
    for _ in range(tries):
        H = F.zeros(M.dim, N.dim)
        for f in basis:
            c = F.scalar(int(rng.integers(0, F.p if F.p else 7)))
            H = H + f.matrix * c
        if rank(F, F.reduce(H)) == M.dim:
            return True
    return False


# ---------------------------------------------------------------------------
# radical, top, covers


def radical_subspace(M: Representation) -> Subspace:
    """M·J = sum over generators g of M·g."""
    F = M.field
    rows = [m for m in M.gens.values()]
    if not rows:
        return Subspace.zero(F, M.dim)
    return Subspace.from_rows(F, np.vstack(rows), M.dim)


def top_dims(M: Representation) -> tuple[int, ...]:
    rad = radical_subspace(M)
    parts = _graded_subspace(M, rad.basis)
    return tuple(M.dims[v] - parts[v].dim for v in range(len(M.dims)))


@dataclass(eq=False)
class Cover:
    module: Representation
    projective: FreeModule
    matrix: np.ndarray  # dim P x dim M
    lifts: np.ndarray  # one row of M per summand


def projective_cover(M: Representation) -> Cover:
    F, A = M.field, M.algebra
    rad = radical_subspace(M)
    parts = _graded_subspace(M, rad.basis)
    summands, lifts = [], []
    for v in range(A.n_vertices):
        for c in parts[v].complement_coordinates():
            vec = F.zero_vector(M.dim)
            vec[M.offsets[v] + c] = F.one
            summands.append(v)
            lifts.append(vec)
    P = FreeModule(A, summands)
    # FreeModule sorts summands; lifts were produced in vertex order already
    pi = F.zeros(P.dim, M.dim)
    for j, vec in enumerate(lifts):
        basis = A.basis_from[P.summands[j]]
        rows = M.orbit(vec, basis)
        for b, row in zip(basis, rows):
            pi[P.coords[j][b]] = row
    L = np.array(lifts, dtype=F.dtype).reshape(len(lifts), M.dim)
    return Cover(M, P, pi, L)


def _kernel_rows(cov: Cover) -> np.ndarray:
    """Kernel of the cover map, block by block, as rows in P coordinates."""
    F = cov.module.field
    P, M = cov.projective, cov.module
    rows = []
    for v in range(P.algebra.n_vertices):
        ps, ms = P.block(v), M.block(v)
        if not P.dims[v]:
            continue
        blk = cov.matrix[ps, ms]
        if M.dims[v]:
            ker = left_nullspace(F, blk)
        else:
            ker = Subspace.full(F, P.dims[v])
        if ker.dim:
            full = F.zeros(ker.dim, P.dim)
            full[:, ps] = ker.basis
            rows.append(full)
    return np.vstack(rows) if rows else F.zeros(0, P.dim)


def kernel_module(f: ModuleMap) -> tuple[Representation, np.ndarray]:
    """Kernel of a module map, with its inclusion into the domain."""
    F = f.domain.field
    M, N = f.domain, f.codomain
    rows = []
    for v in range(M.algebra.n_vertices):
        ms = M.block(v)
        if not M.dims[v]:
            continue
        ker = left_nullspace(F, f.matrix[ms, N.block(v)]) if N.dims[v] else Subspace.full(F, M.dims[v])
        if ker.dim:
            full = F.zeros(ker.dim, M.dim)
            full[:, ms] = ker.basis
            rows.append(full)
    return submodule(M, np.vstack(rows) if rows else F.zeros(0, M.dim))


def syzygy(M: Representation) -> Representation:
    cov = projective_cover(M)
    return submodule(cov.projective, _kernel_rows(cov), name=f"Ω({M.name})")[0]


def is_projective(M: Representation) -> bool:
    """Projective iff the projective cover is injective (dim P = dim M)."""
    if M.dim == 0:
        return True
    return projective_cover(M).projective.dim == M.dim


@dataclass
class Step:
    projective: FreeModule
    images: np.ndarray  # generator images of this P_i inside P_{i-1} (rows), or the lifts into M for i = 0
    kernel: Representation
    inclusion: np.ndarray  # kernel basis -> P_i coordinates
    minimal: bool


@dataclass(eq=False)
class Resolution:
    module: Representation
    steps: list = field(default_factory=list)
    terminated_at: int | None = None

    @property
    def length_computed(self) -> int:
        return len(self.steps) - 1

    def multiplicities(self, i: int) -> tuple[int, ...]:
        P = self.steps[i].projective
        return tuple(P.summands.count(v) for v in range(self.module.algebra.n_vertices))

    def projective(self, i: int) -> FreeModule | None:
        if i < len(self.steps):
            return self.steps[i].projective
        return None

    def extend_to(self, n: int) -> "Resolution":
        """Compute P_0..P_n unless a syzygy vanishes first."""
        F = self.module.field
        while len(self.steps) <= n and self.terminated_at is None:
            i = len(self.steps)
            if i == 0:
                target, into = self.module, None
            else:
                prev = self.steps[-1]
                target, into = prev.kernel, prev.inclusion
            if target.dim == 0:
                self.terminated_at = i - 1
                break
            cov = projective_cover(target)
            krows = _kernel_rows(cov)
            kernel, inc = submodule(cov.projective, krows)
            # minimality: kernel lies in P·J, i.e. no idempotent coordinates
            gen_pos = [cov.projective.generator_coord(j) for j in range(len(cov.projective.summands))]
            minimal = F.is_zero(inc[:, gen_pos]) if inc.size else True
            images = F.matmul(cov.lifts, into) if into is not None else cov.lifts
            self.steps.append(Step(cov.projective, images, kernel, inc, minimal))
            if kernel.dim == 0:
                self.terminated_at = i
        return self


_RES_CACHE: "OrderedDict[str, Resolution]" = OrderedDict()
_RES_LOCK = threading.Lock()
_RES_CACHE_SIZE = 512


def minimal_resolution(M: Representation, n_max: int) -> Resolution:
    key = M.fingerprint
    with _RES_LOCK:
        res = _RES_CACHE.get(key)
        if res is not None:
            _RES_CACHE.move_to_end(key)
    if res is None or res.module.algebra is not M.algebra:
        res = Resolution(M)
    res.extend_to(n_max)
    with _RES_LOCK:
        _RES_CACHE[key] = res
        while len(_RES_CACHE) > _RES_CACHE_SIZE:
            _RES_CACHE.popitem(last=False)
    return res


def _cochain_matrix(res: Resolution, i: int, N: Representation) -> np.ndarray:
    """δ_i : Hom(P_i, N) -> Hom(P_{i+1}, N) in Yoneda coordinates ⊕_j N e_{v_j}."""
    F = N.field
    Pi = res.steps[i].projective
    rows_dim = sum(N.dims[v] for v in Pi.summands)
    if i + 1 >= len(res.steps):
        return F.zeros(rows_dim, 0)
    nxt = res.steps[i + 1]
    Pn = nxt.projective
    cols_dim = sum(N.dims[v] for v in Pn.summands)
    out = F.zeros(rows_dim, cols_dim)
    r0 = 0
    for j, vj in enumerate(Pi.summands):
        c0 = 0
        for k, vk in enumerate(Pn.summands):
            if N.dims[vj] and N.dims[vk]:
                x = Pi.component(nxt.images[k], j)
                if not F.is_zero(x):
                    out[r0 : r0 + N.dims[vj], c0 : c0 + N.dims[vk]] = N.act_element(x)[N.block(vj), N.block(vk)]
            c0 += N.dims[vk]
        r0 += N.dims[vj]
    return out


def ext_dims(M: Representation, N: Representation, degrees: Iterable[int] | int) -> list[int]:
    """dim Ext^i(M, N) for the requested degrees (an int n means 0..n)."""
    if M.algebra is not N.algebra:
        raise AlgebraMismatch("Ext between modules over different algebras")
    degrees = list(range(degrees + 1)) if isinstance(degrees, int) else list(degrees)
    if not degrees:
        return []
    top = max(degrees)
    res = minimal_resolution(M, top + 1)
    F = N.field
    ranks: dict[int, int] = {}

    def rk(i):
        if i < 0 or i >= len(res.steps):
            return 0
        if i not in ranks:
            m = _cochain_matrix(res, i, N)
            ranks[i] = rank(F, m) if m.size else 0
        return ranks[i]

    out = []
    for i in degrees:
        if i >= len(res.steps):
            out.append(0)
            continue
        hom = sum(N.dims[v] for v in res.steps[i].projective.summands)
        out.append(hom - rk(i) - rk(i - 1))
    return out


@dataclass(frozen=True)
class DimBound:
    value: int | None
    cap: int

    @property
    def finite(self) -> bool:
        return self.value is not None

    def __str__(self) -> str:
        return f"finite({self.value})" if self.finite else f"exceeds({self.cap})"

    def as_dict(self) -> dict:
        return {"finite": self.finite, "value": self.value, "cap": self.cap}


def pd_up_to(M: Representation, cap: int = DEFAULT_PD_CAP) -> DimBound:
    if M.dim == 0:
        return DimBound(0, cap)
    res = minimal_resolution(M, cap)
    if res.terminated_at is not None and res.terminated_at <= cap:
        return DimBound(res.terminated_at, cap)
    return DimBound(None, cap)


def id_up_to(M: Representation, cap: int = DEFAULT_PD_CAP) -> DimBound:
    return pd_up_to(dual_module(M), cap)


# ---------------------------------------------------------------------------


def random_module(A: FiniteDimAlgebra, rng: np.random.Generator, max_summands: int = 3, max_relations: int = 2) -> Representation:
    """Random quotient of a random sum of indecomposable projectives."""
    F = A.field
    k = int(rng.integers(1, max_summands + 1))
    P = FreeModule(A, [int(rng.integers(0, A.n_vertices)) for _ in range(k)])
    r = int(rng.integers(0, max_relations + 1))
    vecs = []
    hi = F.p if F.p else 5
    gen_pos = {P.generator_coord(j) for j in range(len(P.summands))}
    rad_pos = [i for i in range(P.dim) if i not in gen_pos]
    for _ in range(r):
        v = F.zero_vector(P.dim)
        # mostly inside the radical, so the quotient keeps its top
        pool = rad_pos if rad_pos and rng.random() < 0.8 else list(range(P.dim))
        for pos in rng.choice(pool, size=min(len(pool), int(rng.integers(1, 4))), replace=False):
            v[pos] = F.scalar(int(rng.integers(1, hi)))
        vecs.append(v)
    if not vecs:
        return P
    rows = np.vstack([P.orbit(v) for v in vecs])
    Q, _ = quotient_module(P, rows)
    Q.name = "random"
    return Q
