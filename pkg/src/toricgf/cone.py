"""Strictly convex rational polyhedral cones and the combinatorics around them.

A :class:`Cone` may be lower dimensional.  Everything that needs a
full-dimensional picture (facets, triangulations) is computed in the
coordinates of the saturated lattice ``span ∩ Z^n`` and lifted back, so
callers only ever see ambient lattice vectors.
"""

from __future__ import annotations

import itertools
import random
from functools import cached_property
from typing import Iterable, Sequence

from . import kernels
from . import lattice as lat
from .errors import (
    NotAFace,
    NotFullDimensional,
    NotSimplicial,
    NotStrictlyConvex,
)
from .lattice import Vector, dot, primitive


def _dual_rays(rows: Sequence[Vector], k: int) -> list[Vector]:
    """Extreme rays of ``{x in Q^k : <r, x> >= 0 for r in rows}``.

    Incremental double description; ``rows`` must span ``Q^k``.
    """
    if k == 0:
        return []
    basis: list[int] = []
    for i, r in enumerate(rows):
        if lat.rank([rows[j] for j in basis] + [r]) > len(basis):
            basis.append(i)
            if len(basis) == k:
                break
    if len(basis) < k:
        raise ValueError("constraint rows do not span the space")
    a = [rows[i] for i in basis]
    det = lat.determinant(a)
    adj = lat.adjugate(a)
    sgn = 1 if det > 0 else -1
    rays = []
    for j in range(k):
        col = tuple(sgn * adj[i][j] for i in range(k))
        zeros = frozenset(basis[i] for i in range(k) if i != j)
        rays.append((primitive(col), zeros))
    processed = set(basis)
    for i, r in enumerate(rows):
        if i in processed:
            continue
        vals = [dot(r, x) for x, _ in rays]
        pos = [(x, z, v) for (x, z), v in zip(rays, vals) if v > 0]
        neg = [(x, z, v) for (x, z), v in zip(rays, vals) if v < 0]
        new = [(x, z) for (x, z), v in zip(rays, vals) if v > 0]
        new += [(x, z | {i}) for (x, z), v in zip(rays, vals) if v == 0]
        zero_sets = [z for _, z in rays]
        for (p, zp, vp), (q, zq, vq) in itertools.product(pos, neg):
            common = zp & zq
            if len(common) < k - 2:
                continue
            # adjacent iff no third ray is tight on every shared constraint
            if any(common <= z for z in zero_sets if z is not zp and z is not zq):
                continue
            comb = tuple(-vq * a1 + vp * b1 for a1, b1 in zip(p, q))
            new.append((primitive(comb), common | {i}))
        rays = new
        processed.add(i)
    return [x for x, _ in rays]


def cone_inequalities(generators: Iterable[Sequence[int]], rank: int) -> tuple[list[Vector], list[Vector]]:
    """``(equations, facet normals)`` cutting out the cone over ``generators``.

    Skips the extreme-ray bookkeeping of :class:`Cone`; the generators must
    span a strictly convex cone.
    """
    gens = list(dict.fromkeys(primitive(g) for g in generators if any(g)))
    if not gens:
        return [lat.vec(e) for e in lat.identity(rank)], []
    emb = lat.sublattice_coordinates(gens, rank)
    facets = _dual_rays([emb.project(g) for g in gens], emb.rank)
    normals = sorted({emb.lift_functional(f) for f in facets}, reverse=True)
    equations = [lat.vec(e) for e in lat.integer_kernel(gens, rank)] if emb.rank < rank else []
    return equations, normals


class Cone:
    """Cone spanned by integer generators in a lattice of rank ``rank``.

    Generators are made primitive, deduplicated and reduced to extreme rays;
    the surviving rays keep their first-appearance order, which is what the
    triangulation and all serialized output depend on.
    """

    def __init__(self, generators: Iterable[Sequence[int]] = (), rank: int | None = None):
        gens = [lat.vec(g) for g in generators]
        if rank is None:
            if not gens:
                raise ValueError("rank is required for the trivial cone")
            rank = len(gens[0])
        if any(len(g) != rank for g in gens):
            raise ValueError(f"all generators must have length {rank}")
        seen: dict[Vector, None] = {}
        for g in gens:
            if any(g):
                seen.setdefault(primitive(g), None)
        cand = list(seen)
        self.rank = rank
        self.embedding = lat.sublattice_coordinates(cand, rank) if cand else \
            lat.LatticeEmbedding((), lat.identity(rank), rank)
        self.dim = self.embedding.rank
        local = [self.embedding.project(g) for g in cand]
        facets = _dual_rays(local, self.dim)
        if lat.rank(facets) < self.dim:
            raise NotStrictlyConvex(f"cone over {cand} contains a line")
        keep = []
        for g, x in zip(cand, local):
            tight = [f for f in facets if dot(f, x) == 0]
            if lat.rank(tight) == self.dim - 1:
                keep.append((g, x))
        self.rays: tuple[Vector, ...] = tuple(g for g, _ in keep)
        self._local_rays = tuple(x for _, x in keep)
        lifted = sorted(((self.embedding.lift_functional(f), f) for f in facets), reverse=True)
        self.facet_normals: tuple[Vector, ...] = tuple(a for a, _ in lifted)
        self._local_facets = tuple(f for _, f in lifted)

    @classmethod
    def trivial(cls, rank: int) -> "Cone":
        return cls((), rank)

    def __repr__(self):
        return f"Cone({[list(r) for r in self.rays]}, rank={self.rank})"

    def __eq__(self, other):
        return isinstance(other, Cone) and self.rank == other.rank and set(self.rays) == set(other.rays)

    def __hash__(self):
        return hash((self.rank, frozenset(self.rays)))

    @property
    def is_full_dimensional(self) -> bool:
        return self.dim == self.rank

    @property
    def is_simplicial(self) -> bool:
        return len(self.rays) == self.dim

    def contains(self, v: Sequence[int], interior: bool = False) -> bool:
        if not self.embedding.contains(v):
            return False
        if interior:
            return all(dot(f, v) > 0 for f in self.facet_normals)
        return all(dot(f, v) >= 0 for f in self.facet_normals)

    @cached_property
    def grading(self) -> Vector:
        """Sum of primitive facet normals; positive on every nonzero point."""
        g = lat.zero(self.rank)
        for f in self.facet_normals:
            g = lat.add(g, f)
        return g

    def local(self) -> tuple["Cone", lat.LatticeEmbedding]:
        """The same cone written in coordinates of its own span lattice."""
        return Cone(self._local_rays, self.dim), self.embedding

    def subcone(self, indices: Iterable[int]) -> "Cone":
        return Cone([self.rays[i] for i in sorted(indices)], self.rank)

    def ray_set(self, other: "Cone") -> frozenset[int]:
        """Indices of ``other``'s rays among this cone's rays."""
        index = {r: i for i, r in enumerate(self.rays)}
        try:
            return frozenset(index[r] for r in other.rays)
        except KeyError as exc:
            raise NotAFace(f"{other} uses a ray {exc.args[0]} that is not a ray of {self}") from None

    @cached_property
    def face_sets(self) -> tuple[frozenset[int], ...]:
        """Ray-index sets of all faces, sorted by dimension then indices."""
        full = frozenset(range(len(self.rays)))
        faces = {full}
        for f in self._local_facets:
            tight = frozenset(i for i, x in enumerate(self._local_rays) if dot(f, x) == 0)
            faces |= {s & tight for s in faces}
        return tuple(sorted(faces, key=lambda s: (self._dim_of(s), sorted(s))))

    def _dim_of(self, s: Iterable[int]) -> int:
        return lat.rank([self._local_rays[i] for i in s])


class FaceLattice:
    def __init__(self, cone: Cone):
        self.cone = cone
        self.index_sets = cone.face_sets
        self.dims = tuple(cone._dim_of(s) for s in self.index_sets)
        self.containment = frozenset(
            (i, j)
            for i, a in enumerate(self.index_sets)
            for j, b in enumerate(self.index_sets)
            if i != j and a < b
        )

    @cached_property
    def faces(self) -> tuple[Cone, ...]:
        return tuple(self.cone.subcone(s) for s in self.index_sets)

    def __len__(self):
        return len(self.index_sets)


def face_lattice(c: Cone) -> FaceLattice:
    return FaceLattice(c)


def dual_cone(c: Cone) -> Cone:
    if not c.is_full_dimensional:
        raise NotFullDimensional(f"dual of {c} would contain a line (dim {c.dim} < rank {c.rank})")
    return Cone(c.facet_normals, c.rank)


def is_simplicial(c: Cone) -> bool:
    return c.is_simplicial


def contains(c: Cone, v: Sequence[int], interior: bool = False) -> bool:
    return c.contains(v, interior)


def dual_face(c: Cone, tau: Cone | Iterable[int]) -> Cone:
    """``c^∨ ∩ tau^⊥`` as a cone of ambient vectors (see ``Cone.local``)."""
    if not c.is_full_dimensional:
        raise NotFullDimensional(f"{c} is not full dimensional")
    idx = c.ray_set(tau) if isinstance(tau, Cone) else frozenset(tau)
    if idx not in set(c.face_sets):
        raise NotAFace(f"rays {sorted(idx)} do not form a face of {c}")
    tau_rays = [c.rays[i] for i in idx]
    dual = dual_cone(c)
    return Cone([m for m in dual.rays if all(dot(m, r) == 0 for r in tau_rays)], c.rank)


class Triangulation:
    """Triangulation of ``base`` whose cells use only rays of ``base``.

    Cells are frozensets of indices into ``base.rays``; the empty set is the
    trivial cone.
    """

    def __init__(self, base: Cone, maximal_cells: Iterable[frozenset[int]]):
        self.base = base
        self.maximal_cells = tuple(sorted(maximal_cells, key=sorted))
        cells = set()
        for cell in self.maximal_cells:
            for k in range(len(cell) + 1):
                cells.update(frozenset(s) for s in itertools.combinations(sorted(cell), k))
        self.all_cells = tuple(sorted(cells, key=lambda s: (len(s), sorted(s))))

    def cell_cone(self, cell: Iterable[int]) -> Cone:
        return self.base.subcone(cell)

    def cell_rays(self, cell: Iterable[int]) -> list[Vector]:
        return [self.base.rays[i] for i in sorted(cell)]

    def __repr__(self):
        return f"Triangulation({[sorted(c) for c in self.maximal_cells]})"


def triangulate(c: Cone, order: Sequence[int] | None = None) -> Triangulation:
    """Placing triangulation on the rays of ``c``.

    Rays are placed from the end of ``order`` (default: input order) back
    to its start, so the last rays form the initial simplex.  For the cone
    over a square with rays P1..P4 this gives the cells P1P2P4 and P2P3P4.
    """
    if c.dim < 1:
        raise ValueError("cannot triangulate the trivial cone")
    order = list(range(len(c.rays))) if order is None else list(order)
    if sorted(order) != list(range(len(c.rays))):
        raise ValueError(f"order {order} is not a permutation of the ray indices")
    rays = c._local_rays
    k = c.dim
    cells: list[frozenset[int]] = [frozenset()]
    span: list[Vector] = []
    for i in reversed(order):
        r = rays[i]
        if lat.rank(span + [r]) > len(span):
            cells = [cell | {i} for cell in cells]
            span.append(r)
            continue
        owners: dict[frozenset[int], list[tuple[frozenset[int], int]]] = {}
        for cell in cells:
            for j in cell:
                owners.setdefault(cell - {j}, []).append((cell, j))
        added = []
        for facet, own in owners.items():
            if len(own) != 1:
                continue
            _, j = own[0]
            kernel = lat.integer_kernel([rays[t] for t in facet], k)
            eta = next(b for b in kernel if dot(b, rays[j]) != 0)
            if dot(eta, rays[j]) < 0:
                eta = lat.scale(-1, eta)
            if dot(eta, r) < 0:
                added.append(facet | {i})
        cells.extend(added)
    return Triangulation(c, cells)


class _ParallelepipedData:
    """Lattice points ``sum t_j w_j / L`` of the half-open parallelepiped.

    ``coeffs`` are the integer numerators ``t_j`` in ``[0, L)``; keeping them
    lets callers move individual facets from closed to open.
    """

    def __init__(self, rays: Sequence[Vector], rank: int):
        self.rays = [lat.vec(r) for r in rays]
        d = len(self.rays)
        if d == 0:
            self.scale = 1
            self.points = [(lat.zero(rank), ())]
            return
        dm, u, v = lat.smith_normal_form(self.rays)
        inv = [dm[i][i] for i in range(d)]
        if 0 in inv:
            raise NotSimplicial("rays are linearly dependent")
        big = inv[-1]
        self.scale = big
        steps = [[(big // inv[i]) * u[i][j] % big for j in range(d)] for i in range(d)]
        self.points = sorted(kernels.box_points(inv, steps, self.rays, rank))


def parallelepiped_points(simplicial: Cone) -> list[Vector]:
    """Lattice points of ``{sum θ_i w_i : 0 <= θ_i < 1}`` over the rays."""
    if not simplicial.is_simplicial:
        raise NotSimplicial(f"{simplicial} has {len(simplicial.rays)} rays in dimension {simplicial.dim}")
    return [p for p, _ in _ParallelepipedData(simplicial.rays, simplicial.rank).points]


def half_open_parallelepiped(rays: Sequence[Vector], rank: int, open_mask: Sequence[bool]) -> list[Vector]:
    """Like ``parallelepiped_points`` but with ``θ_j`` in ``(0, 1]`` where ``open_mask[j]``."""
    data = _ParallelepipedData(rays, rank)
    out = []
    for p, t in data.points:
        for j, is_open in enumerate(open_mask):
            if is_open and t[j] == 0:
                p = lat.add(p, data.rays[j])
        out.append(p)
    return sorted(out)


class GeneratorSet:
    """Semigroup generators of ``cone ∩ Z^n``; the rays come first."""

    def __init__(self, cone: Cone, generators: Iterable[Sequence[int]]):
        self.cone = cone
        gens = tuple(lat.vec(g) for g in generators)
        if gens[:len(cone.rays)] != cone.rays:
            raise ValueError("generator list must start with the primitive ray vectors in ray order")
        for g in gens:
            if not cone.contains(g):
                raise ValueError(f"generator {g} is not in the cone")
        self.generators = gens

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def __repr__(self):
        return f"GeneratorSet({[list(g) for g in self.generators]})"


def semigroup_generators(c: Cone, order: Sequence[int] | None = None) -> GeneratorSet:
    """Hilbert basis of ``c ∩ Z^n``: rays first, the rest by grading then lex."""
    if c.dim == 0:
        return GeneratorSet(c, ())
    ell = c.grading
    cand = set(c.rays)
    if not c.is_simplicial:
        tri = triangulate(c, order)
        cells = [tri.cell_rays(cell) for cell in tri.maximal_cells]
    else:
        cells = [list(c.rays)]
    for cell in cells:
        for p, _ in _ParallelepipedData(cell, c.rank).points:
            if any(p):
                cand.add(p)
    basis = _reduce_candidates(c, sorted(cand, key=lambda v: (dot(ell, v), v)))
    rays = set(c.rays)
    extra = [b for b in basis if b not in rays]
    return GeneratorSet(c, list(c.rays) + extra)


def _reduce_candidates(c: Cone, cand: list[Vector]) -> list[Vector]:
    from . import kernels

    return kernels.hilbert_reduce(cand, c.grading, c.facet_normals)


class Fan:
    """Fan given by global rays and cones as ray-index sets (closed under faces)."""

    def __init__(self, rank: int, rays: Sequence[Sequence[int]], cones: Iterable[Iterable[int]],
                 complete: bool = False):
        self.rank = rank
        self.rays = tuple(primitive(r) for r in rays)
        self.cones = tuple(sorted({frozenset(c) for c in cones}, key=lambda s: (len(s), sorted(s))))
        self.complete = complete
        for s in self.cones:
            if any(i < 0 or i >= len(self.rays) for i in s):
                raise ValueError(f"cone {sorted(s)} refers to a missing ray")

    @classmethod
    def from_maximal(cls, rank: int, rays, maximal, complete: bool = False) -> "Fan":
        rays = [primitive(r) for r in rays]
        cones = set()
        for m in maximal:
            m = sorted(m)
            cone = Cone([rays[i] for i in m], rank)
            local = {cone.rays.index(rays[i]): i for i in m if rays[i] in cone.rays}
            for s in cone.face_sets:
                cones.add(frozenset(local[j] for j in s))
        return cls(rank, rays, cones, complete)

    def cone(self, s: Iterable[int]) -> Cone:
        return Cone([self.rays[i] for i in sorted(s)], self.rank)

    @cached_property
    def maximal_cones(self) -> tuple[frozenset[int], ...]:
        return tuple(s for s in self.cones if not any(s < t for t in self.cones))

    def dims(self) -> list[int]:
        return [self.cone(s).dim for s in self.cones]

    def missing_faces(self) -> list[frozenset[int]]:
        present = set(self.cones)
        missing = []
        for s in self.cones:
            cone = self.cone(s)
            glob = {self.rays.index(r) for r in cone.rays}
            if glob != set(s):
                missing.append(s)
                continue
            order = sorted(s)
            local_to_global = {cone.rays.index(self.rays[i]): i for i in order}
            for f in cone.face_sets:
                g = frozenset(local_to_global[j] for j in f)
                if g not in present:
                    missing.append(g)
        return sorted(set(missing), key=lambda s: (len(s), sorted(s)))

    def check_complete(self, samples: int = 200, seed: int = 0, bound: int = 7) -> bool:
        """Sample integer directions and check each lies in some maximal cone."""
        rng = random.Random(seed)
        maximal = [self.cone(s) for s in self.maximal_cones]
        for _ in range(samples):
            v = tuple(rng.randint(-bound, bound) for _ in range(self.rank))
            if not any(c.contains(v) for c in maximal):
                return False
        return True
