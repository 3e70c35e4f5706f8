"""Rational polyhedral fans, fan morphisms, subdivisions and the Mori cone.

Fans store primitive rays plus maximal cones as ray-index tuples; faces are
derived on demand.  Morphisms carry per-cone compatibility certificates (the
smallest codomain cone containing each image); fibration verdicts, kernel
fans, monomial coordinate forms, and wall-relation Mori cones build on that.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from . import exactlinalg as la
from .dd import extreme_rays
from .errors import (
    DegenerateInputError,
    IncompatibleMorphismError,
    NoMonomialFormError,
    NotReflexiveError,
    SupportError,
)


class ConeGeom:
    """Geometry of a pointed cone spanned by the given ray vectors."""

    def __init__(self, rays, ambient_rank):
        self.rays = la.mat(rays)
        self.ambient_rank = ambient_rank
        self._cache = {}

    @property
    def dim(self):
        if "dim" not in self._cache:
            self._cache["dim"] = la.rank(self.rays) if self.rays else 0
        return self._cache["dim"]

    @property
    def span(self):
        if "span" not in self._cache:
            if not self.rays:
                self._cache["span"] = None
            else:
                self._cache["span"] = la.Sublattice.from_spanning(
                    self.rays, self.ambient_rank
                )
        return self._cache["span"]

    @property
    def equations(self):
        """Ambient functionals vanishing on the span."""
        if "eqns" not in self._cache:
            if not self.rays:
                self._cache["eqns"] = la.identity(self.ambient_rank)
            else:
                self._cache["eqns"] = la.right_kernel(self.rays) or ()
        return self._cache["eqns"]

    @property
    def local_rays(self):
        if "local" not in self._cache:
            sub = self.span
            self._cache["local"] = tuple(sub.coords(r) for r in self.rays)
        return self._cache["local"]

    @property
    def local_facets(self):
        """Facet normals of the cone in span coordinates."""
        if "facets" not in self._cache:
            if not self.rays:
                self._cache["facets"] = ()
            else:
                self._cache["facets"] = extreme_rays(self.local_rays, self.dim)
        return self._cache["facets"]

    @property
    def ambient_ineqs(self):
        """Lifts of the local facet normals to ambient functionals."""
        if "amb" not in self._cache:
            if not self.rays:
                self._cache["amb"] = ()
            else:
                basis = self.span.basis
                lifted = []
                for f in self.local_facets:
                    n = la.solve_right(basis, f)
                    if n is None:
                        raise DegenerateInputError("facet lift failed")
                    lifted.append(n)
                self._cache["amb"] = tuple(lifted)
        return self._cache["amb"]

    def contains(self, v):
        v = la.vec(v)
        if la.is_zero(v):
            return True
        if not self.rays:
            return False
        c = self.span.coords(v)
        if c is None:
            return False
        return all(la.dot(c, f) >= 0 for f in self.local_facets)

    def facet_ray_sets(self):
        """Ray-index subsets (into self.rays) tight on each facet."""
        out = []
        for f in self.local_facets:
            out.append(
                frozenset(
                    i for i, r in enumerate(self.local_rays) if la.dot(r, f) == 0
                )
            )
        return tuple(out)

    def all_face_ray_sets(self):
        """Ray-index subsets of every face, the zero cone included."""
        if "faces" in self._cache:
            return self._cache["faces"]
        if not self.rays:
            self._cache["faces"] = (frozenset(),)
            return self._cache["faces"]
        facets = self.local_facets
        ray_masks = []
        for r in self.local_rays:
            ray_masks.append(frozenset(i for i, f in enumerate(facets) if la.dot(r, f) == 0))
        closed = set()
        frontier = [frozenset()]
        while frontier:
            tight = frontier.pop()
            rs = frozenset(i for i, m in enumerate(ray_masks) if tight <= m)
            if rs:
                full = frozenset.intersection(*[ray_masks[i] for i in rs])
            else:
                full = frozenset(range(len(facets)))
            key = rs
            if key in closed:
                continue
            closed.add(key)
            for i in range(len(facets)):
                if i not in full:
                    frontier.append(full | {i})
        closed.add(frozenset())  # the origin
        self._cache["faces"] = tuple(sorted(closed, key=lambda s: (len(s), sorted(s))))
        return self._cache["faces"]

    def is_simplicial(self):
        return len(self.rays) == self.dim

    def is_smooth(self):
        """Rays extend to a basis of the ambient lattice."""
        if not self.is_simplicial():
            return False
        if not self.rays:
            return True
        k = len(self.rays)
        n = self.ambient_rank
        g = 0
        for cols in combinations(range(n), k):
            sub = tuple(tuple(r[c] for c in cols) for r in self.rays)
            g = la.gcd_vec((g, la.det(sub)))
            if g == 1:
                return True
        return g == 1


class Fan:
    """A fan given by primitive rays and maximal cones (ray-index tuples)."""

    def __init__(self, rank, rays, max_cones):
        self.rank = rank
        self.rays = la.mat(rays)
        if len(set(self.rays)) != len(self.rays):
            raise DegenerateInputError("duplicate rays in fan")
        cones = sorted({tuple(sorted(c)) for c in max_cones})
        self.max_cones = tuple(cones)
        self._cache = {}

    def __repr__(self):
        return f"Fan(rank={self.rank}, nrays={len(self.rays)}, ncones={len(self.max_cones)})"

    def nrays(self):
        return len(self.rays)

    def ngenerating_cones(self):
        return len(self.max_cones)

    def cone_geom(self, idxset):
        key = tuple(sorted(idxset))
        store = self._cache.setdefault("geoms", {})
        if key not in store:
            store[key] = ConeGeom(tuple(self.rays[i] for i in key), self.rank)
        return store[key]

    def all_cones(self):
        """Every cone of the fan as a frozenset of ray indices (origin included)."""
        if "all_cones" not in self._cache:
            out = set()
            for c in self.max_cones:
                geom = self.cone_geom(c)
                for fs in geom.all_face_ray_sets():
                    out.add(frozenset(c[i] for i in fs))
            out.add(frozenset())
            self._cache["all_cones"] = tuple(
                sorted(out, key=lambda s: (len(s), sorted(s)))
            )
        return self._cache["all_cones"]

    def cones_of_dim(self, d):
        return tuple(
            c for c in self.all_cones() if self.cone_geom(c).dim == d
        )

    def support_contains(self, v):
        return any(self.cone_geom(c).contains(v) for c in self.max_cones)

    def is_simplicial(self):
        return all(self.cone_geom(c).is_simplicial() for c in self.max_cones)

    def is_smooth(self):
        return all(self.cone_geom(c).is_smooth() for c in self.max_cones)

    def is_complete(self):
        """Every maximal cone full-dimensional and every wall shared by two."""
        if "complete" in self._cache:
            return self._cache["complete"]
        ok = bool(self.max_cones)
        counts = {}
        for c in self.max_cones:
            geom = self.cone_geom(c)
            if geom.dim != self.rank:
                ok = False
                break
            for fs in geom.facet_ray_sets():
                wall = frozenset(c[i] for i in fs)
                counts[wall] = counts.get(wall, 0) + 1
        if ok:
            ok = all(v == 2 for v in counts.values())
        self._cache["complete"] = ok
        return ok

    def subfan(self, cones):
        """Fan on the maximal elements of the given ray-index sets.

        Rays not used by any surviving cone are dropped and the remainder are
        reindexed, keeping their original relative order.
        """
        sets = [frozenset(c) for c in cones]
        maximal = [s for s in sets if not any(s < t for t in sets)]
        used = sorted({i for s in maximal for i in s})
        remap = {old: new for new, old in enumerate(used)}
        rays = tuple(self.rays[i] for i in used)
        new_cones = sorted({tuple(sorted(remap[i] for i in s)) for s in maximal})
        return Fan(self.rank, rays, new_cones)


def face_fan(p):
    """Cones over the facets of a reflexive polytope; rays are its vertices."""
    if not p.is_reflexive():
        raise NotReflexiveError("face fan requires a reflexive polytope")
    verts = p.vertices
    cones = []
    for n, c in p.facets:
        cones.append(
            tuple(
                i for i, v in enumerate(verts) if la.dot(v, n) == -c
            )
        )
    return Fan(p.rank, verts, cones)


def normal_fan(p):
    """Inner facet normals as rays; one maximal cone per vertex."""
    normals = tuple(n for n, _ in p.facets)
    cones = []
    for v in p.vertices:
        cones.append(
            tuple(
                i
                for i, (n, c) in enumerate(p.facets)
                if la.dot(v, n) == -c
            )
        )
    return Fan(p.rank, normals, cones)


def star_subdivide(fan, ray):
    """Insert a primitive ray by star subdivision of every cone containing it.

    Inserting a ray the fan already has is a no-op.
    """
    ray = la.vec(ray)
    if ray != la.primitive(ray):
        raise DegenerateInputError("subdivision ray must be primitive")
    if ray in fan.rays:
        return fan
    if not fan.support_contains(ray):
        raise SupportError("ray lies outside the fan support", ray=list(ray))
    rays = fan.rays + (ray,)
    new_idx = len(fan.rays)
    cones = []
    for c in fan.max_cones:
        geom = fan.cone_geom(c)
        if not geom.contains(ray):
            cones.append(c)
            continue
        for fs in geom.facet_ray_sets():
            fverts = tuple(geom.rays[i] for i in fs)
            if ConeGeom(fverts, fan.rank).contains(ray):
                continue
            cones.append(tuple(sorted([c[i] for i in fs] + [new_idx])))
    return Fan(fan.rank, rays, cones)


def classify(fan, delta=None):
    """Simplicial/smooth/complete flags, plus crepancy against a reflexive polytope.

    With ``delta`` given, ``crepant`` reports whether every ray of the fan is
    a boundary lattice point of the polar of ``delta``.
    """
    out = {
        "simplicial": fan.is_simplicial(),
        "smooth": fan.is_smooth(),
        "complete": fan.is_complete(),
    }
    if delta is not None:
        _, boundary = delta.polar_cached().lattice_points()
        bset = set(boundary)
        out["crepant"] = all(r in bset for r in fan.rays)
    return out


@dataclass(frozen=True)
class FanMorphism:
    """A lattice map (acting on row vectors) compatible with two fans."""

    matrix: tuple
    domain: Fan
    codomain: Fan
    certificates: dict  # frozenset(domain ray idx) -> frozenset(codomain ray idx)

    def image(self, v):
        return la.vecmat(v, self.matrix)

    def cert(self, cone):
        cone = frozenset(cone)
        if cone in self.certificates:
            return self.certificates[cone]
        images = [self.image(self.domain.rays[i]) for i in cone]
        c = _smallest_containing_cone(self.codomain, images)
        if c is None:
            raise IncompatibleMorphismError(
                "cone image not contained in a single codomain cone",
                cone=sorted(cone),
            )
        self.certificates[cone] = c
        return c


def _smallest_containing_cone(fan, vectors):
    best = None
    for c in fan.all_cones():
        geom = fan.cone_geom(c)
        if all(geom.contains(v) for v in vectors):
            if best is None or geom.dim < fan.cone_geom(best).dim:
                best = c
    return best


def check_compatibility(matrix, domain, codomain):
    """Certify that every domain cone maps into a single codomain cone."""
    matrix = la.mat(matrix)
    certs = {}
    for c in domain.max_cones:
        images = [la.vecmat(domain.rays[i], matrix) for i in c]
        target = _smallest_containing_cone(codomain, images)
        if target is None:
            raise IncompatibleMorphismError(
                "no codomain cone contains the image",
                cone=[list(domain.rays[i]) for i in c],
            )
        certs[frozenset(c)] = target
    return FanMorphism(matrix=matrix, domain=domain, codomain=codomain, certificates=certs)


def subdivide_domain(matrix, domain, codomain):
    """Coarsest refinement of the domain mapping each cone into a codomain cone.

    Every domain cone is intersected with the preimages of the codomain
    cones; new rays are the primitive generators of the resulting edges.
    Already-compatible input comes back unchanged.
    """
    matrix = la.mat(matrix)
    try:
        check_compatibility(matrix, domain, codomain)
        return domain
    except IncompatibleMorphismError:
        pass
    n = domain.rank
    codomain_complete = codomain.is_complete()
    pieces_all = []
    for c in domain.max_cones:
        geom = domain.cone_geom(c)
        sigma_cons = list(geom.ambient_ineqs)
        for e in geom.equations:
            sigma_cons.append(e)
            sigma_cons.append(la.neg(e))
        pieces = []
        for t in codomain.max_cones:
            tg = codomain.cone_geom(t)
            cons = list(sigma_cons)
            for f in tg.ambient_ineqs:
                cons.append(la.vecmat(f, la.transpose(matrix)))
            for e in tg.equations:
                pe = la.vecmat(e, la.transpose(matrix))
                cons.append(pe)
                cons.append(la.neg(pe))
            rays = extreme_rays(cons, n)
            if rays and la.rank(rays) == geom.dim:
                pieces.append(rays)
        # drop pieces contained in other pieces of the same cone
        kept = []
        for r in pieces:
            g = ConeGeom(r, n)
            if any(
                r != o and all(ConeGeom(o, n).contains(x) for x in r) for o in pieces
            ):
                continue
            kept.append(r)
        if not codomain_complete:
            _check_coverage(geom, kept, n)
        pieces_all.extend(kept)
    # assemble: original rays keep their order, new rays appended in lex order
    seen = dict()
    for i, r in enumerate(domain.rays):
        seen[r] = i
    new_rays = sorted(
        {r for piece in pieces_all for r in piece if r not in seen}
    )
    rays = domain.rays + tuple(new_rays)
    for i, r in enumerate(new_rays):
        seen[r] = len(domain.rays) + i
    cones = {tuple(sorted(seen[r] for r in piece)) for piece in pieces_all}
    fan = Fan(n, rays, sorted(cones))
    return fan.subfan(fan.max_cones)


def _check_coverage(geom, pieces, n):
    """Wall-parity check that the pieces cover the cone (incomplete codomain)."""
    counts = {}
    for rays in pieces:
        g = ConeGeom(rays, n)
        for fs in g.facet_ray_sets():
            wall = tuple(sorted(g.rays[i] for i in fs))
            counts[wall] = counts.get(wall, 0) + 1
    for wall, cnt in counts.items():
        if cnt == 2:
            continue
        on_boundary = any(
            all(la.dot(r, f) == 0 for r in wall) for f in geom.ambient_ineqs
        )
        if not on_boundary and cnt != 2:
            raise SupportError(
                "domain support does not map into the codomain support"
            )


def is_fibration(phi):
    """Surjective lattice map with equidimensional minimal cones over each target cone."""
    matrix = phi.matrix
    k = phi.codomain.rank
    if k == 0:
        return True
    if la.rank(matrix) != k:
        return False
    n = len(matrix)
    g = 0
    for rows in combinations(range(n), k):
        sub = tuple(matrix[i] for i in rows)
        g = la.gcd_vec((g, la.det(sub)))
        if g == 1:
            break
    if g != 1:
        return False
    domain_cones = phi.domain.all_cones()
    by_cert = {}
    for c in domain_cones:
        by_cert.setdefault(phi.cert(c), []).append(c)
    for target in phi.codomain.all_cones():
        group = by_cert.get(target)
        if not group:
            return False
        tdim = phi.codomain.cone_geom(target).dim
        inset = set(group)
        for c in group:
            geom = phi.domain.cone_geom(c)
            facets = [
                frozenset(tuple(sorted(c))[i] for i in fs)
                for fs in geom.facet_ray_sets()
            ]
            if geom.dim > 0 and not facets:
                facets = [frozenset()]
            if any(f in inset for f in facets):
                continue  # not minimal
            if geom.dim != tdim:
                return False
            images = [phi.image(phi.domain.rays[i]) for i in c]
            if (la.rank(la.mat(images)) if images else 0) != tdim:
                return False
    return True


def kernel_fan(phi):
    """The subfan inside ker dim, in a saturated basis of the kernel sublattice."""
    kern = la.kernel_basis(phi.matrix)
    n = phi.domain.rank
    if not kern:
        sub = la.Sublattice(basis=(), ambient_rank=n)
        return Fan(0, (), ()), sub
    sub = la.Sublattice(basis=kern, ambient_rank=n)
    in_kernel = [
        i
        for i, r in enumerate(phi.domain.rays)
        if la.is_zero(la.vecmat(r, phi.matrix))
    ]
    kset = set(in_kernel)
    cones = [
        c
        for c in phi.domain.all_cones()
        if c and set(c) <= kset
    ]
    maximal = [c for c in cones if not any(c < o for o in cones)]
    used = sorted({i for c in maximal for i in c})
    remap = {old: new for new, old in enumerate(used)}
    local_rays = tuple(sub.coords(phi.domain.rays[i]) for i in used)
    max_cones = sorted({tuple(sorted(remap[i] for i in c)) for c in maximal})
    if not used:
        return Fan(len(kern), (), ()), sub
    return Fan(len(kern), local_rays, max_cones), sub


@dataclass(frozen=True)
class MonomialMap:
    """Pullback form of a fibration: each codomain coordinate as a monomial."""

    domain_nrays: int
    codomain_nrays: int
    entries: tuple  # per codomain ray: tuple of (domain ray index, exponent)

    def bracket(self, domain_names, codomain_names):
        parts = []
        for j, factors in enumerate(self.entries):
            if not factors:
                parts.append("1")
                continue
            s = "*".join(
                domain_names[i] + (f"^{e}" if e != 1 else "") for i, e in factors
            )
            parts.append(s)
        return "[" + " : ".join(parts) + "]"

    def exponents(self, j):
        return dict(self.entries[j])


def homogeneous_map(phi):
    """Monomial coordinate form; every ray must map onto a codomain ray or zero."""
    entries = [[] for _ in phi.codomain.rays]
    ray_index = {r: j for j, r in enumerate(phi.codomain.rays)}
    for i, r in enumerate(phi.domain.rays):
        w = la.vecmat(r, phi.matrix)
        if la.is_zero(w):
            continue
        p = la.primitive(w)
        if p not in ray_index:
            raise NoMonomialFormError(
                "ray image is interior to a higher-dimensional cone",
                ray=list(r),
                image=list(w),
            )
        c = next(w[t] // p[t] for t in range(len(p)) if p[t] != 0)
        entries[ray_index[p]].append((i, c))
    return MonomialMap(
        domain_nrays=len(phi.domain.rays),
        codomain_nrays=len(phi.codomain.rays),
        entries=tuple(tuple(sorted(e)) for e in entries),
    )


def _pull_triangulate(geom):
    """Pulling triangulation (global lex ray order); local ray-index simplices."""
    if geom.is_simplicial():
        return [tuple(range(len(geom.rays)))]
    pull = min(range(len(geom.rays)), key=lambda i: geom.rays[i])
    out = []
    for fs in geom.facet_ray_sets():
        if pull in fs:
            continue
        fidx = sorted(fs)
        fgeom = ConeGeom(tuple(geom.rays[i] for i in fidx), geom.ambient_rank)
        for simplex in _pull_triangulate(fgeom):
            out.append(tuple(sorted([fidx[i] for i in simplex] + [pull])))
    return out


def mori_cone(fan):
    """Extremal effective curve classes from wall relations.

    Each generator is a relation among the fan rays, extended by one final
    coordinate for the origin equal to minus the sum of the other entries.
    Non-simplicial cones are triangulated (pulling, lexicographic ray order,
    no new rays) before wall relations are read off.
    """
    if not fan.is_complete():
        raise DegenerateInputError("Mori cone requires a complete fan")
    n = fan.rank
    simplices = set()
    for c in fan.max_cones:
        geom = fan.cone_geom(c)
        for simplex in _pull_triangulate(geom):
            simplices.add(tuple(sorted(c[i] for i in simplex)))
    walls = {}
    for s in simplices:
        for drop in s:
            wall = tuple(sorted(set(s) - {drop}))
            walls.setdefault(wall, []).append((s, drop))
    relations = set()
    for wall, touching in walls.items():
        if len(touching) != 2:
            raise DegenerateInputError("fan is not complete along a wall")
        (s1, o1), (s2, o2) = touching
        idx = sorted(set(s1) | set(s2))
        rows = la.mat([fan.rays[i] for i in idx])
        kern = la.kernel_basis(rows)
        if len(kern) != 1:
            raise DegenerateInputError("unexpected wall relation rank")
        rel = kern[0]
        pos1 = rel[idx.index(o1)]
        pos2 = rel[idx.index(o2)]
        if pos1 == 0 or pos2 == 0 or (pos1 > 0) != (pos2 > 0):
            raise DegenerateInputError("wall relation with unexpected signs")
        if pos1 < 0:
            rel = la.neg(rel)
        full = [0] * len(fan.rays)
        for t, i in enumerate(idx):
            full[i] = rel[t]
        relations.add(tuple(full))
    lam = la.kernel_basis(la.mat(fan.rays))
    if not lam:
        return ()
    coords = []
    for rel in relations:
        c = la.solve_exact(lam, rel)
        if c is None:
            raise DegenerateInputError("wall relation outside relation lattice")
        coords.append(c)
    gens = _extreme_generators(coords)
    out = []
    for g in gens:
        full = la.vecmat(g, lam)
        full = la.primitive(full)
        out.append(full + (-sum(full),))
    return tuple(sorted(out))


def _extreme_generators(vectors):
    """Extreme rays of the cone positively spanned by the given vectors."""
    vecs = [v for v in {la.vec(v) for v in vectors} if not la.is_zero(v)]
    if not vecs:
        return ()
    prim = sorted({la.primitive(v) for v in vecs})
    m = len(prim[0])
    sat = la.saturation(la.mat(prim))
    sub = la.Sublattice(basis=sat, ambient_rank=m)
    local = [sub.coords(v) for v in prim]
    d = len(sat)
    if d == 1:
        signs = {v[0] > 0 for v in local}
        if len(signs) > 1:
            raise DegenerateInputError("cone of relations is not strictly convex")
        s = 1 if signs == {True} else -1
        return (la.scale(s, sat[0]),)
    facets = extreme_rays(local, d)
    try:
        rays = extreme_rays(facets, d)
    except ValueError as exc:
        raise DegenerateInputError("cone of relations is not strictly convex") from exc
    return tuple(sorted(la.vecmat(r, sat) for r in rays))
