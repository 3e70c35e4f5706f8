"""Lattice polytopes with exact facet data, face lattices and point enumeration.

A LatticePolytope is immutable: vertices in canonical (lexicographic) order
and primitive facet inequalities ``<u, normal> >= -offset``.  Polar duality,
the face lattice with its inclusion-reversing correspondence, lattice point
enumeration and the boundary skeleton graph all live here.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import exactlinalg as la
from .dd import extreme_rays
from .errors import (
    DegenerateInputError,
    NotFullDimensionalError,
    NotReflexiveError,
    PolarUndefinedError,
)


def affine_span(points):
    """(base point, saturated basis of the linear span of differences)."""
    pts = la.mat(points)
    base = pts[0]
    diffs = [la.sub(p, base) for p in pts[1:]]
    diffs = [d for d in diffs if not la.is_zero(d)]
    if not diffs:
        return base, ()
    return base, la.saturation(diffs)


def enumerate_lattice_points(ineqs, lows, highs):
    """All integer points of a box satisfying every ``<u,n> >= -c`` inequality.

    Recurses coordinate by coordinate; each inequality prunes via the best
    value still achievable on the remaining coordinates.
    """
    dim = len(lows)
    # suffix extrema per inequality: max over the box of sum_{i>=k} n_i x_i
    suffix_max = []
    for n, _ in ineqs:
        sm = [0] * (dim + 1)
        for i in range(dim - 1, -1, -1):
            sm[i] = sm[i + 1] + max(n[i] * lows[i], n[i] * highs[i])
        suffix_max.append(sm)
    out = []
    x = [0] * dim

    def rec(k, partials):
        if k == dim:
            out.append(tuple(x))
            return
        lo, hi = lows[k], highs[k]
        for v in range(lo, hi + 1):
            x[k] = v
            nxt = []
            ok = True
            for idx, (n, c) in enumerate(ineqs):
                p = partials[idx] + n[k] * v
                if p + suffix_max[idx][k + 1] < -c:
                    ok = False
                    break
                nxt.append(p)
            if ok:
                rec(k + 1, nxt)

    rec(0, [0] * len(ineqs))
    return out


@dataclass(frozen=True)
class Face:
    """A face of a lattice polytope, identified by its tight facet set."""

    dim: int
    vertex_indices: frozenset
    tight_facets: frozenset
    npoints: int
    ninterior: int

    def sort_key(self):
        return tuple(sorted(self.vertex_indices))


@dataclass(frozen=True)
class SkeletonGraph:
    """Boundary lattice points joined along consecutive steps of 1-faces."""

    nodes: tuple
    edges: frozenset  # frozenset of 2-element frozensets of node indices

    def neighbors(self, i):
        out = []
        for e in self.edges:
            if i in e:
                (j,) = [t for t in e if t != i] or [i]
                out.append(j)
        return sorted(out)

    def subgraph_components(self, keep_edge):
        """Connected components (as sorted node-index tuples) of the subgraph
        with edges filtered by ``keep_edge`` and only the nodes they touch."""
        kept = [tuple(sorted(e)) for e in self.edges if keep_edge(e)]
        nodes = sorted({i for e in kept for i in e})
        parent = {i: i for i in nodes}

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        for a, b in kept:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb
        comps = {}
        for i in nodes:
            comps.setdefault(find(i), []).append(i)
        return sorted(tuple(sorted(c)) for c in comps.values())


class LatticePolytope:
    """Full-dimensional lattice polytope with exact vertex and facet data."""

    def __init__(self, rank, vertices, facets):
        self.rank = rank
        self.vertices = tuple(sorted(la.mat(vertices)))
        # facets: tuple of (primitive normal, offset), meaning <u,n> >= -c
        self.facets = tuple(sorted(facets))
        self._cache = {}

    # -- construction -----------------------------------------------------

    @classmethod
    def hull(cls, points):
        """Convex hull of lattice points, which must span the ambient space.

        A non full-dimensional input raises NotFullDimensionalError carrying
        the affine span so the caller can restrict to a sublattice and retry.
        """
        pts = la.mat(points)
        if not pts:
            raise DegenerateInputError("no points")
        dim = len(pts[0])
        base, basis = affine_span(pts)
        if len(basis) < dim:
            raise NotFullDimensionalError(
                "points are not full-dimensional",
                base=list(base),
                span_basis=[list(b) for b in basis],
            )
        gens = tuple((1,) + p for p in pts)
        raw = extreme_rays(gens, dim + 1)
        facets = []
        for f in raw:
            c, n = f[0], f[1:]
            g = la.gcd_vec(n)
            if g == 0:
                # the inequality t >= 0 cannot be a facet of a bounded
                # full-dimensional polytope's homogenization
                raise DegenerateInputError("unbounded homogenization")
            # a facet of a lattice polytope contains lattice points, so the
            # jointly-primitive (c, n) already has a primitive normal part
            facets.append((n, c))
        poly = cls(dim, _extract_vertices(pts, facets, dim), facets)
        return poly

    @classmethod
    def from_vertices_trusted(cls, rank, vertices, facets):
        return cls(rank, vertices, facets)

    # -- basic queries -----------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, LatticePolytope)
            and self.rank == other.rank
            and self.vertices == other.vertices
        )

    def __hash__(self):
        return hash((self.rank, self.vertices))

    def __repr__(self):
        return f"LatticePolytope(rank={self.rank}, nvertices={len(self.vertices)})"

    def contains(self, point):
        return all(la.dot(point, n) >= -c for n, c in self.facets)

    def origin_is_interior(self):
        return all(c > 0 for _, c in self.facets)

    def is_reflexive(self):
        """True iff the origin is interior and every facet is at lattice distance 1."""
        return all(c == 1 for _, c in self.facets)

    def polar(self):
        """Polar polytope; exact, defined only for interior origin.

        Raises NotReflexiveError (carrying the fractional vertices) when some
        polar vertex is not a lattice point.
        """
        if not self.origin_is_interior():
            raise PolarUndefinedError("polar undefined: origin not interior")
        fractional = [
            [str(Fraction(x, c)) for x in n] for n, c in self.facets if c != 1
        ]
        if fractional:
            raise NotReflexiveError(
                "polar is not a lattice polytope", fractional_vertices=fractional
            )
        verts = tuple(n for n, _ in self.facets)
        facets = tuple((v, 1) for v in self.vertices)
        return LatticePolytope(self.rank, verts, facets)

    # -- lattice points ----------------------------------------------------

    def _points_data(self):
        if "points" not in self._cache:
            lows = [min(v[i] for v in self.vertices) for i in range(self.rank)]
            highs = [max(v[i] for v in self.vertices) for i in range(self.rank)]
            pts = enumerate_lattice_points(self.facets, lows, highs)
            interior, boundary = [], []
            masks = {}
            for p in pts:
                mask = frozenset(
                    i for i, (n, c) in enumerate(self.facets) if la.dot(p, n) == -c
                )
                masks[p] = mask
                (boundary if mask else interior).append(p)
            self._cache["points"] = (
                tuple(sorted(interior)),
                tuple(sorted(boundary)),
                masks,
            )
        return self._cache["points"]

    def lattice_points(self):
        """(interior points, boundary points), each lexicographically sorted."""
        interior, boundary, _ = self._points_data()
        return interior, boundary

    def all_points(self):
        interior, boundary, _ = self._points_data()
        return tuple(sorted(interior + boundary))

    def npoints(self):
        interior, boundary, _ = self._points_data()
        return len(interior) + len(boundary)

    # -- face lattice --------------------------------------------------------

    def _face_data(self):
        if "faces" in self._cache:
            return self._cache["faces"]
        nfac = len(self.facets)
        vert_masks = []
        for v in self.vertices:
            vert_masks.append(
                frozenset(
                    i for i, (n, c) in enumerate(self.facets) if la.dot(v, n) == -c
                )
            )
        # closure of facet-set intersections; a face is identified by the
        # full set of facets containing it
        seen = {}
        all_facets = frozenset(range(nfac))

        def vertex_set(tight):
            return frozenset(
                i for i, m in enumerate(vert_masks) if tight <= m
            )

        # seed: whole polytope and facets
        frontier = [frozenset()] + [frozenset([i]) for i in range(nfac)]
        closed = set()
        while frontier:
            tight = frontier.pop()
            vs = vertex_set(tight)
            if not vs:
                continue
            # close up: all facets containing every vertex of the face
            full = frozenset.intersection(*[vert_masks[i] for i in vs]) if vs else all_facets
            if full in closed:
                continue
            closed.add(full)
            for i in range(nfac):
                if i not in full:
                    frontier.append(full | {i})
        _, _, masks = self._points_data()
        faces = []
        for tight in closed:
            vs = vertex_set(tight)
            verts = [self.vertices[i] for i in vs]
            if len(verts) == 1:
                dim = 0
            else:
                _, basis = affine_span(verts)
                dim = len(basis)
            npts = sum(1 for m in masks.values() if tight <= m)
            nint = sum(1 for m in masks.values() if tight == m)
            faces.append(Face(dim, vs, tight, npts, nint))
        by_dim = {}
        for f in faces:
            by_dim.setdefault(f.dim, []).append(f)
        for d in by_dim:
            by_dim[d].sort(key=Face.sort_key)
        self._cache["faces"] = by_dim
        return by_dim

    def faces(self, dim):
        """All faces of the given dimension, canonically ordered."""
        return tuple(self._face_data().get(dim, ()))

    def face_by_tight_set(self, tight):
        for fs in self._face_data().values():
            for f in fs:
                if f.tight_facets == tight:
                    return f
        raise KeyError(tight)

    def dual_face(self, face):
        """The polar face pairing to -1 with all of ``face``; needs reflexivity."""
        if not self.is_reflexive():
            raise NotReflexiveError("dual faces require a reflexive polytope")
        polar = self.polar_cached()
        # facets of self <-> vertices of polar (same normal vectors)
        normals = [n for n, _ in self.facets]
        dual_vertex_set = frozenset(
            polar.vertices.index(normals[i]) for i in face.tight_facets
        )
        for fs in polar._face_data().values():
            for f in fs:
                if f.vertex_indices == dual_vertex_set:
                    return f
        raise KeyError("dual face not found")

    def polar_cached(self):
        if "polar" not in self._cache:
            self._cache["polar"] = self.polar()
        return self._cache["polar"]

    # -- skeleton ------------------------------------------------------------

    def skeleton(self):
        """Graph on boundary lattice points; edges join consecutive points of 1-faces."""
        interior, boundary, masks = self._points_data()
        index = {p: i for i, p in enumerate(boundary)}
        edges = set()
        for f in self.faces(1):
            pts = [p for p in boundary if f.tight_facets <= masks[p]]
            if len(pts) < 2:
                continue
            a = self.vertices[min(f.vertex_indices)]
            direction = None
            for p in pts:
                d = la.sub(p, a)
                if not la.is_zero(d):
                    direction = d
                    break
            pts.sort(key=lambda p: la.dot(la.sub(p, a), direction))
            for u, v in zip(pts, pts[1:]):
                edges.add(frozenset((index[u], index[v])))
        return SkeletonGraph(nodes=boundary, edges=frozenset(edges))


def _extract_vertices(points, facets, dim):
    verts = []
    for p in points:
        tight = [n for n, c in facets if la.dot(p, n) == -c]
        if len(tight) >= dim and la.rank(la.mat(tight)) == dim:
            verts.append(p)
    return tuple(sorted(set(verts)))


def restrict_to_sublattice(points, sublattice):
    """Coordinates of the given points in the sublattice basis (all must lie in it)."""
    out = []
    for p in points:
        c = sublattice.coords(p)
        if c is None:
            raise DegenerateInputError("point outside sublattice", point=list(p))
        out.append(c)
    return la.mat(out)
