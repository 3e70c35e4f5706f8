"""Double-description conversion for pointed rational cones.

The single primitive is `extreme_rays`: the extreme rays of
{y : <y, a> >= 0 for all a in constraints}.  Conversion is self-dual, so the
same routine turns generators into facet normals and inequalities into rays.
All arithmetic is on arbitrary-precision integers.
"""

from __future__ import annotations

from .exactlinalg import dot, mat, primitive, rank

_MASK_CACHE_LIMIT = 1 << 20


def _initial_basis_rays(constraints, dim):
    """Rays of a simplicial cone cut out by dim independent constraints.

    Picks a row-independent subset I of the constraints and returns (I, rays)
    where ray j satisfies <ray_j, a_i> = 0 for i != j and > 0 for i = j.
    """
    idx = []
    chosen = []
    for i, a in enumerate(constraints):
        if rank(tuple(chosen) + (a,)) > len(chosen):
            idx.append(i)
            chosen.append(a)
            if len(chosen) == dim:
                break
    if len(chosen) < dim:
        raise ValueError("cone is not pointed (constraints do not span)")
    # integer inverse via adjugate: solve A * X = det * Id columnwise
    a = [list(r) for r in chosen]
    n = dim
    # build adjugate by cofactor expansion on small matrices
    from .exactlinalg import det as _det

    d = _det(tuple(tuple(r) for r in a))
    rays = []
    for j in range(n):
        col = []
        for i in range(n):
            minor = tuple(
                tuple(a[r][c] for c in range(n) if c != i)
                for r in range(n)
                if r != j
            )
            col.append((-1) ** (i + j) * _det(minor))
        r = tuple(col)
        # <r, a_k> = det * delta_jk ; flip so the pairing with a_j is positive
        if d < 0:
            r = tuple(-x for x in r)
        rays.append(primitive(r))
    return idx, rays


def extreme_rays(constraints, dim):
    """Extreme rays of the pointed cone {y in R^dim : <y, a> >= 0}.

    The constraint normals must span R^dim (equivalently the cone is
    pointed).  Returns a sorted tuple of primitive integer rays.
    """
    constraints = mat(constraints)
    constraints = tuple(dict.fromkeys(constraints))
    init_idx, rays = _initial_basis_rays(constraints, dim)
    processed = list(init_idx)
    # tight masks over processed constraints, kept in processing order
    masks = []
    for r in rays:
        m = 0
        for bit, ci in enumerate(processed):
            if dot(r, constraints[ci]) == 0:
                m |= 1 << bit
        masks.append(m)
    for ci in range(len(constraints)):
        if ci in init_idx:
            continue
        a = constraints[ci]
        vals = [dot(r, a) for r in rays]
        if all(v >= 0 for v in vals):
            bit = 1 << len(processed)
            processed.append(ci)
            masks = [m | bit if v == 0 else m for m, v in zip(masks, vals)]
            continue
        plus = [i for i, v in enumerate(vals) if v > 0]
        zero = [i for i, v in enumerate(vals) if v == 0]
        minus = [i for i, v in enumerate(vals) if v < 0]
        new_rays = []
        new_masks = []
        for p in plus:
            for m_ in minus:
                common = masks[p] & masks[m_]
                # combinatorial adjacency: no third ray is tight on the
                # common constraint set
                adjacent = True
                for o in range(len(rays)):
                    if o != p and o != m_ and (masks[o] & common) == common:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                r = tuple(
                    vals[p] * x - vals[m_] * y
                    for x, y in zip(rays[m_], rays[p])
                )
                r = primitive(r)
                new_rays.append(r)
                new_masks.append(common)
        bit = 1 << len(processed)
        processed.append(ci)
        kept_rays = [rays[i] for i in plus] + [rays[i] for i in zero]
        kept_masks = [masks[i] for i in plus] + [masks[i] | bit for i in zero]
        for r, m in zip(new_rays, new_masks):
            kept_rays.append(r)
            kept_masks.append(m | bit)
        rays, masks = kept_rays, kept_masks
    # dedupe and order canonically
    return tuple(sorted(set(rays)))


def cone_contains(facet_normals, equations, v):
    """Membership test against a facet/equation description."""
    return all(dot(v, e) == 0 for e in equations) and all(
        dot(v, a) >= 0 for a in facet_normals
    )
