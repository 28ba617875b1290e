"""Functors of the cleft extension attached to an arrow removal Γ = Λ/⟨T⟩.

With Λ = Γ ⊕ P and P = ⊕_i Γe_i ⊗ f_iΓ (the element u ⊗ v is u·a_i·v):

* e restricts along Γ ⊆ Λ, i inflates along Λ → Γ (removed arrows act by 0);
* l(N) = N ⊗_Γ Λ = N ⊕ ⊕_i (N e_i) ⊗ f_iΓ;
* G(M) = ker(μ_M : l e(M) → M), H = G i, F(N) = ⊕_i (N e_i) ⊗ f_iΓ;
* q(M) = M / M·P.

A brute-force tensor product over generators and relations
(:func:`tensor_along`) serves as an independent check of l and is also the
engine for the enveloping versions, where no closed formula is used.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from .algebra import FiniteDimAlgebra, assemble_algebra, enveloping_algebra
from .ideal import RemovalCertificate, arrow_set_removable, remove_arrows
from .linalg import Subspace
from .modules import (
    ModuleMap,
    Representation,
    kernel_module,
    pullback,
    quotient_module,
    submodule,
)
from .presentation import QuiverPresentation

__all__ = [
    "ContextMismatch",
    "CleftContext",
    "FunctorResult",
    "build_context",
    "functor_e",
    "functor_i",
    "functor_l",
    "functor_q",
    "functor_F",
    "functor_G",
    "functor_H",
    "counit",
    "tensor_along",
    "EnvContext",
]


class ContextMismatch(ValueError):
    pass


@dataclass
class FunctorResult:
    module: Representation
    map: ModuleMap | None = None  # unit N -> e l(N), or inclusion G(M) -> l e(M)


@dataclass(eq=False)
class CleftContext:
    lam: FiniteDimAlgebra
    gam: FiniteDimAlgebra
    certificate: RemovalCertificate
    nu: tuple[int, ...]  # Γ basis index -> Λ basis index
    pi: tuple  # Λ basis index -> Γ basis index or None
    p_indices: tuple[int, ...]
    arrows: tuple[tuple[int, int, int], ...]  # (Λ index of a_i, vertex e_i, vertex f_i)

    @cached_property
    def f_basis(self) -> list[tuple[int, ...]]:
        """Γ basis of f_iΓ for each removed arrow."""
        return [self.gam.basis_from[f] for _, _, f in self.arrows]

    def check_lambda(self, M: Representation) -> None:
        if M.algebra is not self.lam:
            raise ContextMismatch("module is not over Λ of this context")

    def check_gamma(self, N: Representation) -> None:
        if N.algebra is not self.gam:
            raise ContextMismatch("module is not over Γ of this context")

    @cached_property
    def a_times(self) -> dict:
        """(i, Γ index v) -> Λ element a_i · ν(v) as a coefficient vector."""
        L = self.lam
        out = {}
        for k, (ai, _, _) in enumerate(self.arrows):
            for v in self.f_basis[k]:
                vec = L.field.zero_vector(L.dim)
                for idx, c in L.mul(ai, self.nu[v]):
                    vec[idx] = c
                out[(k, v)] = vec
        return out


def build_context(p: QuiverPresentation, T: Sequence[str], lam: FiniteDimAlgebra | None = None) -> CleftContext:
    lam = lam if lam is not None else assemble_algebra(p)
    cert = arrow_set_removable(p, T, lam)
    if not isinstance(cert, RemovalCertificate):
        raise ContextMismatch(f"arrow set {list(T)} is not removable: {cert.reason}")
    gam = assemble_algebra(remove_arrows(p, cert))
    return context_from(lam, gam, cert)


def context_from(lam: FiniteDimAlgebra, gam: FiniteDimAlgebra, cert: RemovalCertificate) -> CleftContext:
    if lam.vertices != gam.vertices:
        raise ContextMismatch("vertex sets differ")
    nu = []
    for lab in gam.labels:
        if lab not in lam.label_index:
            raise ContextMismatch(f"Γ basis element {lab} not in Λ")
        nu.append(lam.label_index[lab])
    inv = {b: g for g, b in enumerate(nu)}
    pi = tuple(inv.get(b) for b in range(lam.dim))
    p_idx = tuple(b for b in range(lam.dim) if pi[b] is None)
    arrows = []
    for a, (e, f) in zip(cert.arrows, cert.ends):
        arrows.append((lam.label_index[a], lam.vertex_index(e), lam.vertex_index(f)))
    return CleftContext(lam, gam, cert, tuple(nu), pi, p_idx, tuple(arrows))


def _basis_vec(A: FiniteDimAlgebra, i: int) -> np.ndarray:
    return A.basis_vector(i)


def functor_e(ctx: CleftContext, M: Representation) -> Representation:
    ctx.check_lambda(M)
    images = {g: _basis_vec(ctx.lam, ctx.nu[g]) for g in ctx.gam.generators}
    return pullback(M, ctx.gam, images, name=f"e({M.name})")


def functor_i(ctx: CleftContext, N: Representation) -> Representation:
    ctx.check_gamma(N)
    gens = {}
    for h in ctx.lam.generators:
        g = ctx.pi[h]
        if g is not None and g in N.gens:
            gens[h] = N.gens[g]
    return Representation(ctx.lam, N.dims, gens, name=f"i({N.name})")


def _l_layout(ctx: CleftContext, N: Representation):
    """Coordinates of l(N): B1 = N, B2_i = N_{e_i} ⊗ f_iΓ, grouped by vertex."""
    G = ctx.gam
    nv = G.n_vertices
    items = []  # (vertex, tag)
    for v in range(nv):
        for r in range(N.dims[v]):
            items.append((v, ("n", N.offsets[v] + r)))
    for k, (_, e, _) in enumerate(ctx.arrows):
        for r in range(N.dims[e]):
            for b in ctx.f_basis[k]:
                items.append((G.tgt[b], ("p", k, N.offsets[e] + r, b)))
    order = sorted(range(len(items)), key=lambda i: (items[i][0], i))
    pos = {items[i][1]: j for j, i in enumerate(order)}
    dims = [0] * nv
    for v, _ in items:
        dims[v] += 1
    return tuple(dims), pos


def functor_l(ctx: CleftContext, N: Representation) -> FunctorResult:
    ctx.check_gamma(N)
    L, G, F = ctx.lam, ctx.gam, N.field
    dims, pos = _l_layout(ctx, N)
    n = sum(dims)
    removed = {ai: k for k, (ai, _, _) in enumerate(ctx.arrows)}
    gens = {}
    for h in L.generators:
        X = F.zeros(n, n)
        if h in removed:
            k = removed[h]
            _, e, f = ctx.arrows[k]
            ef = G.idempotents[f]
            for r in range(N.dims[e]):
                X[pos[("n", N.offsets[e] + r)], pos[("p", k, N.offsets[e] + r, ef)]] = F.one
        else:
            g = ctx.pi[h]
            Ng = N.gen(g)
            for i in range(N.dim):
                for j in np.flatnonzero(Ng[i] != 0):
                    X[pos[("n", i)], pos[("n", int(j))]] = Ng[i, j]
            for k, (_, e, _) in enumerate(ctx.arrows):
                for r in range(N.dims[e]):
                    for b in ctx.f_basis[k]:
                        for b2, c in G.mul(b, g):
                            X[pos[("p", k, N.offsets[e] + r, b)], pos[("p", k, N.offsets[e] + r, b2)]] = c
        if not F.is_zero(X):
            gens[h] = X
    lN = Representation(L, dims, gens, name=f"l({N.name})")
    unit = F.zeros(N.dim, n)
    for i in range(N.dim):
        unit[i, pos[("n", i)]] = F.one
    eln = functor_e(ctx, lN)
    return FunctorResult(lN, ModuleMap(N, eln, unit))


def counit(ctx: CleftContext, M: Representation) -> ModuleMap:
    """μ_M : l e(M) → M, n ⊗ 1 ↦ n and m ⊗ a_i v ↦ m · a_i v."""
    ctx.check_lambda(M)
    F = M.field
    eM = functor_e(ctx, M)
    dims, pos = _l_layout(ctx, eM)
    lem = functor_l(ctx, eM).module
    mat = F.zeros(lem.dim, M.dim)
    for i in range(M.dim):
        mat[pos[("n", i)], i] = F.one
    for k, (_, e, _) in enumerate(ctx.arrows):
        for b in ctx.f_basis[k]:
            act = M.act_element(ctx.a_times[(k, b)])
            for r in range(M.dims[e]):
                row = M.offsets[e] + r
                mat[pos[("p", k, row, b)]] = act[row]
    return ModuleMap(lem, M, mat)


def functor_G(ctx: CleftContext, M: Representation) -> FunctorResult:
    mu = counit(ctx, M)
    K, inc = kernel_module(mu)
    K.name = f"G({M.name})"
    return FunctorResult(K, ModuleMap(K, mu.domain, inc))


def functor_H(ctx: CleftContext, N: Representation) -> Representation:
    out = functor_G(ctx, functor_i(ctx, N)).module
    out.name = f"H({N.name})"
    return out


def functor_F(ctx: CleftContext, N: Representation) -> Representation:
    """The P-part of e l(N), a Γ-submodule isomorphic to ⊕_i N e_i ⊗ f_iΓ."""
    ctx.check_gamma(N)
    F = N.field
    eln = functor_e(ctx, functor_l(ctx, N).module)
    _, pos = _l_layout(ctx, N)
    rows = []
    for key, j in pos.items():
        if key[0] == "p":
            r = F.zero_vector(eln.dim)
            r[j] = F.one
            rows.append(r)
    out, _ = submodule(eln, np.array(rows, dtype=F.dtype).reshape(len(rows), eln.dim))
    out.name = f"F({N.name})"
    return out


def functor_q(ctx: CleftContext, M: Representation) -> Representation:
    ctx.check_lambda(M)
    F = M.field
    rows = [M.act(b) for b in ctx.p_indices]
    stacked = np.vstack(rows) if rows else F.zeros(0, M.dim)
    Q, _ = quotient_module(M, stacked)
    out = pullback(Q, ctx.gam, {g: _basis_vec(ctx.lam, ctx.nu[g]) for g in ctx.gam.generators}, name=f"q({M.name})")
    return out


# ---------------------------------------------------------------------------
# generic tensor product along an algebra map


@dataclass(eq=False)
class Tensor:
    module: Representation  # N ⊗_B A'
    W_dims: tuple[int, ...]
    coords: dict  # (n index, A' basis index) -> W coordinate
    projection: np.ndarray  # W -> module
    kept: list  # module basis -> W coordinate (standard lift)


def tensor_along(N: Representation, target: FiniteDimAlgebra, images: dict) -> Tensor:
    """N ⊗_B A' for an algebra map B → A' given on B's generators (same vertices).

    W = ⊕_v N_v ⊗ e_v A' modulo n·g ⊗ λ − n ⊗ φ(g)λ for generators g of B.
    """
    B, Ap, F = N.algebra, target, N.field
    items = []
    for v in range(B.n_vertices):
        for r in range(N.dims[v]):
            for lam in Ap.basis_from[v]:
                items.append((Ap.tgt[lam], (N.offsets[v] + r, lam)))
    order = sorted(range(len(items)), key=lambda i: (items[i][0], i))
    coords = {items[i][1]: j for j, i in enumerate(order)}
    dims = [0] * Ap.n_vertices
    for w, _ in items:
        dims[w] += 1
    n = sum(dims)
    gens = {}
    for h in Ap.generators:
        X = F.zeros(n, n)
        nz = False
        for (ni, lam), j in coords.items():
            for lam2, c in Ap.mul(lam, h):
                X[j, coords[(ni, lam2)]] = c
                nz = True
        if nz:
            gens[h] = X
    W = Representation(Ap, tuple(dims), gens, name="W")
    rel_rows = []
    for g in B.generators:
        u, w = B.src[g], B.tgt[g]
        Ng = N.gen(g)
        phi = images[g]
        for r in range(N.dims[u]):
            ni = N.offsets[u] + r
            img = Ng[ni]
            for lam in Ap.basis_from[w]:
                row = F.zero_vector(n)
                for nj in np.flatnonzero(img != 0):
                    row[coords[(int(nj), lam)]] += img[nj]
                for x in np.flatnonzero(phi != 0):
                    for lam2, c in Ap.mul(int(x), lam):
                        row[coords[(ni, lam2)]] -= phi[x] * c
                row = F.reduce(row)
                if not F.is_zero(row):
                    rel_rows.append(row)
    rel = np.array(rel_rows, dtype=F.dtype).reshape(len(rel_rows), n)
    Q, proj = quotient_module(W, rel)
    # standard lifts of the quotient basis
    kept = []
    for v in range(Ap.n_vertices):
        red = Subspace.from_rows(F, rel[:, W.block(v)] if rel.size else F.zeros(0, dims[v]), dims[v])
        kept.extend(W.offsets[v] + c for c in red.complement_coordinates())
    return Tensor(Q, tuple(dims), coords, proj, kept)


# ---------------------------------------------------------------------------
# enveloping versions


@dataclass(eq=False)
class EnvContext:
    base: CleftContext
    lam_env: FiniteDimAlgebra
    gam_env: FiniteDimAlgebra

    @classmethod
    def build(cls, ctx: CleftContext) -> "EnvContext":
        return cls(ctx, enveloping_algebra(ctx.lam), enveloping_algebra(ctx.gam))

    def nu(self, x: int) -> int:
        dg, dl = self.base.gam.dim, self.base.lam.dim
        x1, x2 = divmod(x, dg)
        return self.base.nu[x1] * dl + self.base.nu[x2]

    def pi(self, y: int):
        dg, dl = self.base.gam.dim, self.base.lam.dim
        y1, y2 = divmod(y, dl)
        a, b = self.base.pi[y1], self.base.pi[y2]
        if a is None or b is None:
            return None
        return a * dg + b

    def e(self, M: Representation) -> Representation:
        images = {g: self.lam_env.basis_vector(self.nu(g)) for g in self.gam_env.generators}
        return pullback(M, self.gam_env, images, name=f"e_env({M.name})")

    def i(self, B: Representation) -> Representation:
        gens = {}
        for h in self.lam_env.generators:
            g = self.pi(h)
            if g is not None and g in B.gens:
                gens[h] = B.gens[g]
        return Representation(self.lam_env, B.dims, gens, name=f"i_env({B.name})")

    def l(self, B: Representation) -> Tensor:
        images = {g: self.lam_env.basis_vector(self.nu(g)) for g in self.gam_env.generators}
        return tensor_along(B, self.lam_env, images)

    def counit(self, M: Representation) -> ModuleMap:
        """μ : l e(M) → M on the tensor model, (m ⊗ λ) ↦ m·λ."""
        F = M.field
        t = self.l(self.e(M))
        mat = F.zeros(t.module.dim, M.dim)
        inv = {j: key for key, j in t.coords.items()}
        for qi, wj in enumerate(t.kept):
            m, lam = inv[wj]
            mat[qi] = M.act(lam)[m]
        return ModuleMap(t.module, M, mat)

    def G(self, M: Representation) -> Representation:
        K, _ = kernel_module(self.counit(M))
        K.name = f"G_env({M.name})"
        return K

    def F(self, B: Representation) -> Representation:
        return self.e(self.G(self.i(B)))
