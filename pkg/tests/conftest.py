import pytest
from hypothesis import HealthCheck, settings

from sgcm.exactalg import Ideal, PolyRing, ideal_intersection
from sgcm.modules import Filtration, QuotientModule, dimension_filtration
from sgcm.parameters import ParameterSystem

settings.register_profile(
    "sgcm", deadline=None, suppress_health_check=[HealthCheck.too_slow], max_examples=40,
    derandomize=True, database=None
)
settings.load_profile("sgcm")


class Example:
    """Bundle of the objects of one worked example."""

    def __init__(self, **kw):
        self.__dict__.update(kw)


@pytest.fixture(scope="session")
def ex47():
    R = PolyRing(("X1", "X2", "X3", "X4", "X5", "X6"))
    I = ideal_intersection(Ideal(R, ["X1", "X2", "X3"]), Ideal(R, ["X4", "X5", "X6"]))
    J = Ideal(R, ["X2", "X3", "X4", "X5"])
    K = ideal_intersection(I, J)
    M = QuotientModule.cyclic(K)
    D = dimension_filtration(M)
    x = ParameterSystem((R("X1+X5"), R("X3+X6"), R("X2+X4")))
    return Example(R=R, I=I, J=J, K=K, M=M, D=D, x=x)


@pytest.fixture(scope="session")
def ex56():
    R = PolyRing(("x", "y", "z", "w"))
    I = Ideal(R, ["x*y", "x*z"])
    M = QuotientModule.cyclic(I)
    M1 = M.submodule([Ideal(R, ["x*y", "x*z", "x*w"])])
    F = Filtration(M, (M.zero(), M1, M.whole()))
    x = ParameterSystem((R("w"), R("x+y"), R("z")))
    return Example(R=R, I=I, M=M, F=F, x=x, D=dimension_filtration(M))


@pytest.fixture(scope="session")
def ex55():
    R = PolyRing(("x", "y", "z", "t", "w"))
    P = Ideal(R, ["y", "z", "t", "w"])
    I = Ideal(R, ["y*t", "y*w", "z*t", "z*w"])
    M = QuotientModule(R, (P, I))
    x = ParameterSystem((R("x"), R("y+t"), R("z+w")))
    return Example(R=R, P=P, I=I, M=M, D=dimension_filtration(M), x=x)
