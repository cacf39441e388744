import pytest

from gcmwb import RingPresentation, make_local_ring, validate_parameter_system


def _ring(variables, gens, char=101):
    pres = RingPresentation.make(char, variables, gens)
    return make_local_ring(pres)


@pytest.fixture(scope="session")
def example_ring():
    """A = F101[x,y]/(x^2, x*y^3): the sharp d=1 family at r=3."""
    return _ring(("x", "y"), ("x^2", "x*y^3"))


def example_family_ring(r):
    return _ring(("x", "y"), ("x^2", f"x*y^{r}"))


@pytest.fixture(scope="session")
def regular_plane():
    """F101[x,y], the 2-dimensional regular baseline."""
    return _ring(("x", "y"), ())


@pytest.fixture(scope="session")
def regular_space():
    """F101[x,y,z], the 3-dimensional regular baseline."""
    return _ring(("x", "y", "z"), ())


@pytest.fixture(scope="session")
def two_planes():
    """F101[x,y,u,v]/(xu,xv,yu,yv): two planes meeting at the origin.

    Buchsbaum of dimension 2 with ring invariant 1.
    """
    return _ring(("x", "y", "u", "v"), ("x*u", "x*v", "y*u", "y*v"))


@pytest.fixture(scope="session")
def non_gcm_ring():
    """F101[x,y,z]/(xy,xz): a plane plus a line, not equidimensional."""
    return _ring(("x", "y", "z"), ("x*y", "x*z"))


@pytest.fixture(scope="session")
def two_planes_base_q(two_planes):
    R = two_planes.ring
    return validate_parameter_system(
        two_planes, [R.poly("x - u"), R.poly("y - v")])
