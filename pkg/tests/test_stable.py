import pytest

from pretorsion.abcat import Obj
from pretorsion.pretor import serre_extension
from pretorsion.stable import QuotientCategory, build_quotient, sigma, verify_quotient_torsion
from pretorsion.torsion import ClassSpec, TorsionPair
from pretorsion.typea import Interval as I

S = ClassSpec.of(I(2, 2))


@pytest.fixture(scope="module")
def ka2_theory(ka2):
    return serre_extension(ka2, TorsionPair(ClassSpec.of(I(1, 1)), ClassSpec.of(I(1, 2), I(2, 2))), S)


def test_serre_extension_classes(ka2_theory):
    assert ka2_theory.T == ClassSpec.of(I(1, 1), I(2, 2))
    assert ka2_theory.F == ClassSpec.of(I(1, 2), I(2, 2))


def test_quotient_torsion_pair_kA2(ka2, ka2_theory):
    Q = build_quotient(ka2, S)
    rep = verify_quotient_torsion(Q, ka2_theory)
    assert rep.ok
    assert rep.T == ClassSpec.of(I(1, 1)) and rep.F == ClassSpec.of(I(1, 2))


def test_quotient_hom_dimensions(ka2):
    Q = build_quotient(ka2, S)
    assert Q.hom_dims(Obj.of(I(2, 2)), Obj.of(I(1, 2))) == (1, 1, 0)
    assert Q.hom_dims(Obj.of(I(1, 2)), Obj.of(I(1, 2))) == (1, 0, 1)
    assert Q.is_zero_object(Obj.of(I(2, 2))) and not Q.is_zero_object(Obj.of(I(1, 1)))


def test_quotient_morphism_arithmetic(ka2):
    Q = build_quotient(ka2, S)
    f = ka2.hom_basis(Obj.of(I(2, 2)), Obj.of(I(1, 2)))[0]
    assert sigma(Q, f).is_zero
    one = sigma(Q, ka2.identity(Obj.of(I(1, 2))))
    assert not one.is_zero and (one @ one) == one and (one + (-one)).is_zero


def test_triv_is_an_ideal(ka3):
    Q = build_quotient(ka3, ClassSpec.of(I(2, 2)))
    testers = ka3.indecomposable_testers()
    for X in testers:
        for Y in testers:
            assert Q.check_ideal(X, Y, testers)


def test_bad_trivial_class_rejected(ka2):
    with pytest.raises(ValueError):
        QuotientCategory(ka2, ClassSpec.of(I(1, 5)))


def test_mismatched_trivial_class_rejected(ka2, ka2_theory):
    Q = build_quotient(ka2, ClassSpec.of(I(1, 1)))
    with pytest.raises(ValueError, match="different trivial classes"):
        verify_quotient_torsion(Q, ka2_theory)
