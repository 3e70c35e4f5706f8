import random

from hypothesis import given, settings
from hypothesis import strategies as st

from toricfib import exactlinalg as la


def test_hermite_small():
    h, u = la.hermite_form([[2, 4], [1, 3]])
    assert la.matmul(u, ((2, 4), (1, 3))) == h
    assert la.det(u) in (1, -1)
    # canonical form: pivots positive, entry above the second pivot reduced
    assert h == ((1, 1), (0, 2))


def test_hermite_identity_and_zero():
    h, u = la.hermite_form(la.identity(3))
    assert h == la.identity(3)
    assert u == la.identity(3)
    h, _ = la.hermite_form([[0, 0]])
    assert h == ((0, 0),)


def test_hermite_idempotent():
    h, _ = la.hermite_form([[6, 4, 2], [2, 8, 4], [0, 0, 5]])
    h2, _ = la.hermite_form(h)
    assert h == h2


mats = st.lists(
    st.lists(st.integers(-9, 9), min_size=3, max_size=3),
    min_size=1,
    max_size=4,
)


@settings(max_examples=150, deadline=None)
@given(mats)
def test_hermite_certificate(rows):
    h, u = la.hermite_form(rows)
    assert la.matmul(u, la.mat(rows)) == h
    assert la.det(u) in (1, -1)
    h2, _ = la.hermite_form(h)
    assert h2 == h


@settings(max_examples=150, deadline=None)
@given(mats)
def test_kernel_annihilates_and_saturated(rows):
    m = la.mat(rows)
    kern = la.kernel_basis(m)
    for c in kern:
        assert la.is_zero(la.vecmat(c, m))
    # saturation: dividing any row by an integer > 1 must leave the lattice
    for c in kern:
        for d in (2, 3, 5):
            if all(x % d == 0 for x in c):
                raise AssertionError("kernel basis row not primitive within lattice")
    # rank check
    assert len(kern) == len(m) - la.rank(m)


def test_kernel_antipodal_pair():
    assert la.kernel_basis([[3, -1, 2], [-3, 1, -2]]) == ((1, 1, 0)[: 2],) or la.kernel_basis(
        [[3, -1, 2], [-3, 1, -2]]
    ) == ((1, 1),)


def test_primitive():
    assert la.primitive((12, 0, -12)) == (1, 0, -1)
    assert la.primitive((1, 1, 4, 6)) == (1, 1, 4, 6)
    assert la.primitive((0, 0, -2, 4, -2)) == (0, 0, -1, 2, -1)
    for k in range(1, 6):
        v = (3 * k, -6 * k, 9 * k)
        assert la.primitive(v) == la.primitive((3, -6, 9))


def test_primitive_zero_errors():
    try:
        la.primitive((0, 0))
    except ValueError as e:
        assert "primitive" in str(e)
    else:
        raise AssertionError


def test_solve_exact():
    a = la.mat([[2, 0, 1], [0, 3, 1]])
    b = (2, 3, 2)
    x = la.solve_exact(a, b)
    assert x is not None and la.vecmat(x, a) == b
    assert la.solve_exact(a, (1, 0, 0)) is None


def test_saturation():
    sat = la.saturation([[2, 0], [0, 2]])
    assert la.mat(sat) == la.identity(2)
    sat = la.saturation([[2, 4, 6]])
    assert sat == ((1, 2, 3),)


def test_sublattice_roundtrip():
    sub = la.Sublattice.from_spanning([[2, 2, 0], [0, 0, 3]])
    for _ in range(25):
        c = tuple(random.randint(-5, 5) for _ in range(sub.rank))
        v = sub.from_coords(c)
        assert sub.coords(v) == c
