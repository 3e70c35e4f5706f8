import random
from fractions import Fraction

import mpmath as mp
import pytest

from toricfib.errors import DegenerateInputError
from toricfib.monodromy import (
    GaussRat,
    I,
    Loop,
    Mat2,
    ONE,
    RootFamily,
    classify_kodaira,
    compose,
    cycle_type,
    group_order,
    power_monodromy,
    singular_parameters,
    track_roots,
)


def sqrt_family():
    # y^2 - x
    return RootFamily.build([[0, -1], [0], [1]])


def test_singular_parameters_sqrt():
    sing = singular_parameters(sqrt_family())
    assert len(sing) == 1
    assert abs(sing[0][0]) < 1e-30


def test_singular_parameters_constant_family():
    fam = RootFamily.build([[-1], [0], [0], [1]])  # y^3 - 1
    assert singular_parameters(fam) == []


def test_nonreduced_family_errors():
    fam = RootFamily.build([[0], [0], [1]])  # y^2, double root everywhere
    with pytest.raises(DegenerateInputError):
        singular_parameters(fam)


def test_sqrt_monodromy():
    fam = sqrt_family()
    perm, residual = track_roots(fam, Loop(base=mp.mpc(2), center=mp.mpc(0), radius=0.5))
    assert cycle_type(perm) == (2,)
    assert residual < mp.mpf(2) ** -90
    # a loop around a regular point is trivial
    perm2, _ = track_roots(fam, Loop(base=mp.mpc(2), center=mp.mpc(1), radius=0.25))
    assert perm2 == (0, 1)


def test_track_cube_root():
    # y^3 - x has a 3-cycle around the origin
    fam = RootFamily.build([[0, -1], [0], [0], [1]])
    perm, _ = track_roots(fam, Loop(base=mp.mpc(2), center=mp.mpc(0), radius=0.5))
    assert cycle_type(perm) == (3,)


def test_step_halving_invariance():
    fam = sqrt_family()
    loop = Loop(base=mp.mpc(2), center=mp.mpc(0), radius=0.5)
    p1, _ = track_roots(fam, loop, prec=128)
    p2, _ = track_roots(fam, loop, prec=256)
    assert p1 == p2


def test_loop_validation():
    fam = RootFamily.build([[0, 0, -1], [0], [1]])  # y^2 - x^2: sing at 0 only? disc 4x^2
    loop = Loop(base=mp.mpc(2), center=mp.mpc("0.1"), radius=0.5)
    with pytest.raises(DegenerateInputError):
        track_roots(fam, loop)


def tab2_matrices():
    m0 = Mat2.of([[0, 1], [-1, 0]], scale=complex(0, 1))
    m1 = Mat2.of([[1, 1], [0, 1]])
    minf = Mat2.of([[0, 1], [-1, -1]], scale=complex(0, 1))
    return m0, m1, minf


def test_power_monodromy_table():
    m0, m1, minf = tab2_matrices()
    p0 = power_monodromy(m0, 6)
    assert p0 == Mat2.identity()
    p1 = power_monodromy(m1, 2)
    assert p1 == Mat2.of([[1, 2], [0, 1]])
    pinf = power_monodromy(minf, 6)
    assert pinf == Mat2.of([[-1, 0], [0, -1]])
    assert power_monodromy(m0, 0) == Mat2.identity()


def test_power_respects_det():
    m0, _, _ = tab2_matrices()
    # the scaled table matrices have determinant -1; powers follow exactly
    assert m0.det() == GaussRat.of(-1)
    assert power_monodromy(m0, 5).det() == GaussRat.of(-1)
    assert power_monodromy(m0, 6).det() == GaussRat.of(1)


def test_classify_kodaira_table():
    m0, m1, minf = tab2_matrices()
    assert classify_kodaira(power_monodromy(m0, 6)) == "I0"
    assert classify_kodaira(power_monodromy(m1, 2)) == "I2"
    assert classify_kodaira(power_monodromy(minf, 6)) == "I0*"


def test_classify_kodaira_elliptic_types():
    assert classify_kodaira(Mat2.of([[1, 1], [-1, 0]])) == "II"
    assert classify_kodaira(Mat2.of([[0, -1], [1, 1]])) == "II*"
    assert classify_kodaira(Mat2.of([[0, 1], [-1, 0]])) == "III"
    assert classify_kodaira(Mat2.of([[0, -1], [1, 0]])) == "III*"
    assert classify_kodaira(Mat2.of([[0, 1], [-1, -1]])) == "IV"
    assert classify_kodaira(Mat2.of([[-1, -1], [1, 0]])) == "IV*"


def test_classify_kodaira_errors():
    with pytest.raises(DegenerateInputError):
        classify_kodaira(Mat2.of([[2, 0], [0, 1]]))  # det 2
    with pytest.raises(DegenerateInputError):
        classify_kodaira(Mat2.of([[2, 1], [1, 1]]))  # trace 3
    with pytest.raises(DegenerateInputError):
        classify_kodaira(tab2_matrices()[0])  # non-integer entries


def _random_sl2(rng, steps=8):
    S = Mat2.of([[0, -1], [1, 0]])
    T = Mat2.of([[1, 1], [0, 1]])
    Tinv = Mat2.of([[1, -1], [0, 1]])
    m = Mat2.identity()
    for _ in range(steps):
        m = m * rng.choice([S, T, Tinv])
    return m


def test_classify_conjugation_invariance():
    rng = random.Random(17)
    samples = [
        Mat2.of([[1, 3], [0, 1]]),
        Mat2.of([[1, 0], [-2, 1]]),
        Mat2.of([[-1, 5], [0, -1]]),
        Mat2.of([[1, 1], [-1, 0]]),
        Mat2.of([[0, 1], [-1, 0]]),
        Mat2.of([[0, 1], [-1, -1]]),
        Mat2.of([[0, -1], [1, 1]]),
        Mat2.identity(),
        Mat2.of([[-1, 0], [0, -1]]),
    ]
    checked = 0
    for m in samples:
        base = classify_kodaira(m)
        for _ in range(12):
            p = _random_sl2(rng)
            q = _random_sl2(rng)
            pinv = _sl2_inverse(p)
            conj = p * m * pinv
            assert classify_kodaira(conj) == base
            checked += 1
    assert checked >= 100


def _sl2_inverse(m):
    return Mat2(m.d, -m.b, -m.c, m.a)


def test_compose_and_group_order():
    a = (1, 0, 2)
    b = (0, 2, 1)
    assert compose(a, a) == (0, 1, 2)
    assert group_order([a, b]) == 6
