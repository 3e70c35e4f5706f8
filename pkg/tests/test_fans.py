import pytest

from toricfib import exactlinalg as la
from toricfib import models
from toricfib.errors import DegenerateInputError, IncompatibleMorphismError
from toricfib.fans import (
    Fan,
    check_compatibility,
    classify,
    face_fan,
    homogeneous_map,
    is_fibration,
    kernel_fan,
    mori_cone,
    normal_fan,
    star_subdivide,
    subdivide_domain,
)
from toricfib.polytope import LatticePolytope


def p2_fan():
    return Fan(2, ((1, 0), (0, 1), (-1, -1)), ((0, 1), (1, 2), (0, 2)))


def p1xp1_fan():
    return Fan(
        2,
        ((1, 0), (-1, 0), (0, 1), (0, -1)),
        ((0, 2), (0, 3), (1, 2), (1, 3)),
    )


def test_face_fan_counts():
    fan = face_fan(models.ci_polar())
    assert fan.nrays() == 10
    assert fan.ngenerating_cones() == 14


def test_face_fan_simplex():
    fan = face_fan(models.k3_simplex())
    assert fan.nrays() == 4
    assert fan.ngenerating_cones() == 4


def test_face_fan_square():
    sq = LatticePolytope.hull([(1, 0), (0, 1), (-1, 0), (0, -1)])
    fan = face_fan(sq)
    assert fan.nrays() == 4 and fan.ngenerating_cones() == 4


def test_normal_fan_of_slice_simplex():
    # the polar of the (1,1,4,6) simplex is the K3 slice polytope; its normal
    # fan is the fan of that weighted projective space
    slice_simplex = models.k3_polar()
    assert set(slice_simplex.vertices) == {
        (-1, -1, -1),
        (11, -1, -1),
        (-1, 2, -1),
        (-1, -1, 1),
    }
    fan = normal_fan(slice_simplex)
    assert set(fan.rays) == {(1, 0, 0), (0, 1, 0), (0, 0, 1), (-1, -4, -6)}


def test_normal_fan_is_polar_face_fan():
    p = models.hyp_simplex()
    assert set(normal_fan(p).rays) == set(face_fan(p.polar()).rays)


def test_subdivide_for_projection_counts():
    fan = models.ci_fan_subdivided()
    assert fan.nrays() == 10
    assert fan.ngenerating_cones() == 22
    # the input fan's rays keep their order and no rays are added
    assert fan.rays == tuple(sorted(models.CI_POLAR_VERTICES))


def test_subdivide_idempotent():
    fan = models.ci_fan_subdivided()
    again = subdivide_domain(models.PROJ_FIRST_TWO, fan, models.base_surface_fan())
    assert again is fan


def test_compatibility_fails_before_subdivision():
    with pytest.raises(IncompatibleMorphismError):
        check_compatibility(
            models.PROJ_FIRST_TWO, face_fan(models.ci_polar()), models.base_surface_fan()
        )


def test_identity_morphism_compatible():
    fan = p2_fan()
    phi = check_compatibility(la.identity(2), fan, fan)
    assert is_fibration(phi)
    kfan, sub = kernel_fan(phi)
    assert kfan.nrays() == 0
    assert sub.rank == 0


def test_base_projection_is_fibration():
    fan = models.ci_fan_subdivided()
    phi = check_compatibility(models.PROJ_FIRST_TWO, fan, models.base_surface_fan())
    assert is_fibration(phi)
    kfan, sub = kernel_fan(phi)
    # rays are the last four vertices of the 5d polar, in kernel coordinates
    expect = {v for v in models.CI_POLAR_VERTICES if v[0] == 0 and v[1] == 0 and v != (0, 12, -1, -1, -1)}
    ambient = {sub.from_coords(r) for r in kfan.rays}
    assert ambient == expect
    assert sub.basis == ((0, 0, 1, 0, 0), (0, 0, 0, 1, 0), (0, 0, 0, 0, 1))


def test_kernel_slice_polytope_reflexive():
    fan = models.ci_fan_subdivided()
    phi = check_compatibility(models.PROJ_FIRST_TWO, fan, models.base_surface_fan())
    kfan, sub = kernel_fan(phi)
    slice_poly = LatticePolytope.hull(kfan.rays)
    assert slice_poly.is_reflexive()
    assert set(normal_fan(slice_poly).rays) == {
        (1, 0, 0),
        (0, 1, 0),
        (0, 0, 1),
        (-1, -4, -6),
    }


def test_base_projection_homogeneous_form():
    fan = models.ci_fan_subdivided()
    phi = check_compatibility(models.PROJ_FIRST_TWO, fan, models.base_surface_fan())
    mm = homogeneous_map(phi)
    names = [models.CI_RAY_NAMES[r] for r in fan.rays]
    # codomain ray order: pentagon vertices as fan rays
    cod = phi.codomain.rays
    by_ray = {cod[j]: mm.entries[j] for j in range(len(cod))}
    def monos(entry):
        return {(names[i], e) for i, e in entry}
    assert monos(by_ray[(1, -1)]) == {("y0", 1)}
    assert monos(by_ray[(-1, 1)]) == {("y1", 1)}
    assert monos(by_ray[(-1, -1)]) == {("y2", 1), ("y3", 1)}
    assert monos(by_ray[(1, 0)]) == {("y4", 12)}
    assert monos(by_ray[(0, 1)]) == {("y5", 12)}


def test_beta_fibration_6ray():
    fan = models.hyp_fan_6ray()
    assert fan.nrays() == 6
    phi = check_compatibility(models.FIBRE_DIRECTION_4D, fan, models.line_fan())
    assert is_fibration(phi)
    mm = homogeneous_map(phi)
    names = [models.HYP_RAY_NAMES[r] for r in fan.rays]
    s_entry = {(names[i], e) for i, e in mm.entries[phi.codomain.rays.index((1,))]}
    t_entry = {(names[i], e) for i, e in mm.entries[phi.codomain.rays.index((-1,))]}
    assert s_entry == {("z0", 12)}
    assert t_entry == {("z3", 12)}


def test_beta_not_fibration_without_midpoint():
    fan = face_fan(models.hyp_simplex().polar())
    try:
        phi = check_compatibility(models.FIBRE_DIRECTION_4D, fan, models.line_fan())
    except IncompatibleMorphismError:
        return
    assert not is_fibration(phi)


def test_beta_fibration_12ray():
    fan = models.hyp_fan_12ray()
    assert fan.nrays() == 12
    phi = check_compatibility(models.FIBRE_DIRECTION_4D, fan, models.line_fan())
    assert is_fibration(phi)
    mm = homogeneous_map(phi)
    names = [models.HYP_RAY_NAMES[r] for r in fan.rays]
    s_entry = {(names[i], e) for i, e in mm.entries[phi.codomain.rays.index((1,))]}
    t_entry = {(names[i], e) for i, e in mm.entries[phi.codomain.rays.index((-1,))]}
    assert s_entry == {("z0", 12), ("z170", 1)}
    assert t_entry == {("z3", 12), ("z168", 1)}


def test_hyp_12ray_triangle_charts_smooth():
    fan = models.hyp_fan_12ray()
    tri = models.HYP_TRIANGLE_INTERIOR
    idx = fan.rays.index(tri)
    for c in fan.max_cones:
        if idx in c:
            assert fan.cone_geom(c).is_smooth()


def test_triangle_cone_not_smooth_and_weights():
    # the 3d cone on (-1,-1,2,-1), (-1,11,-1,-1), (-1,-1,-1,1) is singular;
    # its weights over the interior point are a permutation of (1,2,3)
    from toricfib.fans import ConeGeom

    rays = ((-1, -1, 2, -1), (-1, 11, -1, -1), (-1, -1, -1, 1))
    geom = ConeGeom(rays, 4)
    assert not geom.is_smooth()
    tri = models.HYP_TRIANGLE_INTERIOR
    sols = []
    for a in range(1, 7):
        for b in range(1, 7):
            for c in range(1, 7):
                lhs = [a * rays[0][i] + b * rays[1][i] + c * rays[2][i] for i in range(4)]
                if lhs == [(a + b + c) * t for t in tri]:
                    sols.append((a, b, c))
    assert sorted(sols[0]) == [1, 2, 3]


def test_star_subdivide_existing_ray_noop():
    fan = p2_fan()
    assert star_subdivide(fan, (1, 0)) is fan


def test_star_subdivide_smooth_split():
    fan = Fan(2, ((1, 0), (0, 1)), ((0, 1),))
    out = star_subdivide(fan, (1, 1))
    assert out.nrays() == 3
    assert out.ngenerating_cones() == 2
    assert out.is_smooth()


def test_classify_p2():
    flags = classify(p2_fan())
    assert flags == {"simplicial": True, "smooth": True, "complete": True}


def test_classify_crepant():
    fan = models.ci_fan_subdivided()
    flags = classify(fan, delta=models.ci_base())
    assert flags["crepant"] is True


def test_mori_p2():
    assert mori_cone(p2_fan()) == ((1, 1, 1, -3),)


def test_mori_p1xp1():
    gens = set(mori_cone(p1xp1_fan()))
    assert gens == {(1, 1, 0, 0, -2), (0, 0, 1, 1, -2)}


def test_mori_requires_complete():
    fan = Fan(2, ((1, 0), (0, 1)), ((0, 1),))
    with pytest.raises(DegenerateInputError):
        mori_cone(fan)


def test_transition_morphism_small():
    phi = models.transition_morphism_small()
    assert is_fibration(phi)
    doms = set(phi.domain.rays)
    names = {models.CI_RAY_NAMES.get(r) for r in doms}
    assert names == {"y2", "y3", "y4", "y5", "y6", "y7", "y8", "y9", "y752"}
    kfan, sub = kernel_fan(phi)
    assert [sub.from_coords(r) for r in kfan.rays] == [(-1, -1, 0, 0, 0)]
    assert sub.basis == ((1, 1, 0, 0, 0),)


def test_transition_ray_images():
    # images of the ten 5d rays under the transition map are either zero or
    # nine lattice points of the 4d polar, two of them pinned by coordinates
    fan = models.ci_fan_subdivided()
    images = set()
    for r in fan.rays:
        w = la.vecmat(r, models.TRANSITION_MATRIX)
        if not la.is_zero(w):
            images.add(la.primitive(w))
    assert len(images) == 9
    _, boundary = models.hyp_polar().lattice_points()
    assert images <= set(boundary)
    assert models.HYP_EDGE_MIDPOINT in images
    assert models.HYP_TRIANGLE_INTERIOR in images
    assert set(models.hyp_polar().vertices) <= images


def test_transition_morphism_resolved():
    phi = models.transition_morphism_resolved()
    assert phi.domain.nrays() == 15
    assert is_fibration(phi)
    expected_rays = {
        (-1, -1, 0, 0, 0),
        (-1, -1, 2, 0, 0),
        (12, 0, -1, -1, -1),
        (0, 12, -1, -1, -1),
        (0, 0, -1, -1, -1),
        (0, 0, 11, -1, -1),
        (0, 0, -1, 2, -1),
        (0, 0, -1, -1, 1),
        (1, 0, 10, -1, -1),
        (0, 0, 3, 1, -1),
        (0, 0, 7, 0, -1),
        (0, 1, 10, -1, -1),
        (0, 0, 1, 0, 0),
        (0, 0, 5, -1, 0),
        (-1, -1, 1, 0, 0),
    }
    assert set(phi.domain.rays) == expected_rays
    # every domain ray is a boundary point of the 5d polar (crepant openness)
    _, boundary = models.ci_polar().lattice_points()
    assert set(phi.domain.rays) <= set(boundary)
    assert classify(phi.domain)["simplicial"] is True
    kfan, sub = kernel_fan(phi)
    assert [sub.from_coords(r) for r in kfan.rays] == [(-1, -1, 0, 0, 0)]
    assert sub.basis == ((1, 1, 0, 0, 0),)


def test_transition_homogeneous_map_resolved():
    phi = models.transition_morphism_resolved()
    mm = homogeneous_map(phi)
    dom_names = [models.CI_RAY_NAMES[r] for r in phi.domain.rays]
    cod = phi.codomain.rays
    def monos(ray):
        return {(dom_names[i], e) for i, e in mm.entries[cod.index(ray)]}
    assert monos((23, -1, -1, -1)) == {("y4", 1)}
    assert monos((-1, -1, 2, -1)) == {("y8", 1)}
    assert monos((-1, 11, -1, -1)) == {("y7", 1)}
    assert monos((-1, -1, -1, -1)) == {("y5", 1)}
    assert monos((-1, -1, -1, 1)) == {("y9", 1)}
    assert monos(models.HYP_EDGE_MIDPOINT) == {("y6", 1)}
    assert monos(models.HYP_BELOW_SLICE) == {("y109", 1)}
    assert monos(models.HYP_ABOVE_SLICE) == {("y32", 1)}
    assert monos(models.HYP_TRIANGLE_INTERIOR) == {("y3", 2), ("y745", 1), ("y752", 1)}
    assert monos(models.HYP_TRIANGLE_EDGE_POINTS[0]) == {("y469", 1)}
    assert monos(models.HYP_TRIANGLE_EDGE_POINTS[1]) == {("y630", 1)}
    assert monos(models.HYP_TRIANGLE_EDGE_POINTS[2]) == {("y667", 1)}


def test_resolved_domain_edge_midpoint_charts_smooth():
    phi = models.transition_morphism_resolved()
    fan = phi.domain
    idx = fan.rays.index(models.CI_EDGE_MIDPOINT)
    touching = [c for c in fan.max_cones if idx in c]
    assert touching
    for c in touching:
        assert fan.cone_geom(c).is_smooth()


def test_chart_disjointness():
    phi = models.transition_morphism_resolved()
    fan = phi.domain
    def never_together(coords_a, coords_b):
        ia = fan.rays.index(coords_a)
        ib = fan.rays.index(coords_b)
        return not any(ia in c and ib in c for c in fan.max_cones)
    y2 = (-1, -1, 0, 0, 0)
    y3 = (-1, -1, 2, 0, 0)
    y6 = (0, 0, -1, -1, -1)
    y745 = (-1, -1, 1, 0, 0)
    y752 = (0, 0, 1, 0, 0)
    assert never_together(y2, y752)
    assert never_together(y2, y3)
    assert never_together(y3, y6)
    assert never_together(y745, y752)


def test_monomial_map_matches_lattice_map_on_torus():
    import random
    from fractions import Fraction

    random.seed(3)
    phi = models.transition_morphism_small()
    mm = homogeneous_map(phi)
    for _ in range(20):
        mprime = tuple(random.randint(-3, 3) for _ in range(4))
        for i, r in enumerate(phi.domain.rays):
            lhs = la.dot(la.vecmat(r, phi.matrix), mprime)
            rhs = sum(
                e * la.dot(phi.codomain.rays[j], mprime)
                for j, entry in enumerate(mm.entries)
                for (ii, e) in entry
                if ii == i
            )
            assert lhs == rhs
