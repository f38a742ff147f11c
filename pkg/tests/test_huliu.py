from fractions import Fraction

import pytest

from leibkit._tables import table_from_entries, zero_table
from leibkit.derive import derive_huliu
from leibkit.huliu import (
    HuLiuAlgebra,
    annihilator_abelian_check,
    annihilator_square_action_nonzero,
    check_huliu_homomorphism,
    classify_huliu_simplicity,
    eval_huliu_identity,
    is_huliu_ideal,
    is_huliu_subalgebra,
    killing_form,
    verify_huliu_identities,
    verify_lie,
)
from leibkit.leibniz import annihilator, direct_sum
from leibkit.linalg import Matrix, full_space, span, vadd


def commutator2(a, b):
    ab = [[sum(a[i][k] * b[k][j] for k in range(2)) for j in range(2)] for i in range(2)]
    ba = [[sum(b[i][k] * a[k][j] for k in range(2)) for j in range(2)] for i in range(2)]
    return [[ab[i][j] - ba[i][j] for j in range(2)] for i in range(2)]


def test_verify_lie_zero_square():
    assert verify_lie(zero_table(3)).holds


def test_verify_lie_ut_commutators(ut_model):
    # oracle: literal 2x2 commutators of E11, E22, E12
    e = [[[1, 0], [0, 0]], [[0, 0], [0, 1]], [[0, 1], [0, 0]]]
    derived = derive_huliu(ut_model)
    for i in range(3):
        for j in range(3):
            m = commutator2(e[i], e[j])
            assert m[1][0] == 0
            expected = (Fraction(m[0][0]), Fraction(m[1][1]), Fraction(m[0][1]))
            assert derived.square[i][j] == expected
    assert verify_lie(derived.square).holds
    # the example values
    assert derived.square_bracket((1, 0, 0), (0, 0, 1)) == (0, 0, 1)   # [E11,E12]=E12
    assert derived.square_bracket((0, 0, 1), (0, 1, 0)) == (0, 0, 1)   # [E12,E22]=E12
    assert derived.square_bracket((1, 0, 0), (0, 1, 0)) == (0, 0, 0)   # [E11,E22]=0


def test_verify_lie_antisymmetry_violation():
    rep = verify_lie(table_from_entries(2, [(0, 1, 0, 1)]))
    assert not rep.holds and rep.identity == "antisymmetry"
    assert rep.witness.note == "basis pair (0,1)"


def test_huliu_identities_zero_square_zero_angle():
    h = HuLiuAlgebra(zero_table(2), zero_table(2))
    assert verify_huliu_identities(h).holds


def test_huliu_identities_need_abelian_when_angle_zero():
    # angle = 0 reduces the last identity to [z,[x,y]] = 0
    solvable = table_from_entries(2, [(0, 1, 1, 1), (1, 0, 1, -1)])  # [e1,e2]=e2
    assert verify_lie(solvable).holds
    rep = verify_huliu_identities(HuLiuAlgebra(zero_table(2), solvable))
    assert not rep.holds and rep.identity.startswith("mixed quadruple")


def test_huliu_identities_derived_pair(ut_model):
    assert verify_huliu_identities(derive_huliu(ut_model)).holds


def test_huliu_nilpotent_angle_zero_square(nilpotent_dim2):
    h = HuLiuAlgebra(nilpotent_dim2, zero_table(2))
    assert verify_huliu_identities(h).holds
    verdict = classify_huliu_simplicity(h)
    assert verdict.tag == "Simple"


def test_polarized_identity_matches_quantified_original(solvable_dim2):
    # <e1,e2> = -e1 makes the square-compat identity fail with square = 0
    h = HuLiuAlgebra(solvable_dim2, zero_table(2))
    rep = verify_huliu_identities(h)
    assert not rep.holds and rep.identity.startswith("squares bracket alike")
    ei, ej, ek = rep.witness.inputs
    # the original quantified form [<x,x>,y] = <<x,x>,y> must then fail at
    # x in {ei, ej, ei+ej} with y = ek
    def original_violated(x):
        sq = h.angle_bracket(x, x)
        return h.square_bracket(sq, ek) != h.angle_bracket(sq, ek)
    assert any(original_violated(x) for x in (ei, ej, vadd(ei, ej)))


def test_polarized_identity_on_random_vectors(ut_model):
    import random
    h = derive_huliu(ut_model)
    rng = random.Random(3)
    for _ in range(50):
        x = tuple(Fraction(rng.randint(-3, 3), rng.randint(1, 2)) for _ in range(3))
        y = tuple(Fraction(rng.randint(-3, 3), rng.randint(1, 2)) for _ in range(3))
        sq = h.angle_bracket(x, x)
        assert h.square_bracket(sq, y) == h.angle_bracket(sq, y)


def test_is_huliu_ideal_examples(ut_model):
    h = derive_huliu(ut_model)
    assert is_huliu_ideal(h, span([], 3))
    assert is_huliu_ideal(h, annihilator(h.leibniz))
    assert is_huliu_ideal(h, full_space(3))
    assert not is_huliu_ideal(h, span([(1, 0, 0)], 3))  # [E11,E12]=E12 escapes
    with pytest.raises(ValueError):
        is_huliu_ideal(h, span([], 2))


def test_is_huliu_subalgebra_examples(ut_model):
    h = derive_huliu(ut_model)
    assert is_huliu_subalgebra(h, full_space(3))
    assert is_huliu_subalgebra(h, span([(1, 0, 0), (0, 0, 1)], 3))
    assert is_huliu_subalgebra(h, span([(0, 0, 1)], 3))


def test_classify_huliu_examples(ut_model):
    h = derive_huliu(ut_model)
    verdict = classify_huliu_simplicity(h, seed=2)
    assert verdict.tag == "NotSimple"
    assert verdict.certificate is not None
    assert is_huliu_ideal(h, verdict.certificate)
    hz = HuLiuAlgebra(zero_table(2), zero_table(2))
    assert classify_huliu_simplicity(hz).tag == "NotSimple"


def test_huliu_homomorphism_identity_zero_and_quotient(ut_model):
    h = derive_huliu(ut_model)
    rep = check_huliu_homomorphism(h, h, Matrix.identity(3))
    assert rep.holds and rep.injective
    assert rep.kernel.is_zero() and rep.image == full_space(3)

    target = HuLiuAlgebra(zero_table(2), zero_table(2))
    rep = check_huliu_homomorphism(h, target, Matrix.zero(2, 3))
    assert rep.holds and rep.kernel == full_space(3) and rep.image.is_zero()

    phi = Matrix.from_cols([(1, 0), (0, 1), (0, 0)])  # E11->f1, E22->f2, E12->0
    rep = check_huliu_homomorphism(h, target, phi)
    assert rep.holds and not rep.injective
    assert rep.kernel == span([(0, 0, 1)], 3)
    assert is_huliu_ideal(h, rep.kernel)
    assert is_huliu_subalgebra(target, rep.image)


def test_huliu_homomorphism_square_failure(ut_model):
    # same angle, zeroed square: the identity map respects the angle bracket
    # but not the square bracket, so the reported failure names the square
    h = derive_huliu(ut_model)
    target = HuLiuAlgebra(h.leibniz.angle, zero_table(3))
    rep = check_huliu_homomorphism(h, target, Matrix.identity(3))
    assert not rep.holds
    assert rep.identity == "square bracket compatibility"


def test_annihilator_abelian_check(ut_model, nilpotent_dim2):
    assert annihilator_abelian_check(derive_huliu(ut_model)).holds
    # vacuous when the annihilator is zero
    hz = HuLiuAlgebra(zero_table(2), zero_table(2))
    assert annihilator_abelian_check(hz).holds
    # raw diagnostic: an antisymmetric square bracket pairing the two
    # annihilator lines of a direct sum; the pair is not a Hu-Liu algebra,
    # the check still runs and produces a witness
    ds = direct_sum(nilpotent_dim2, nilpotent_dim2)
    square = table_from_entries(4, [(0, 2, 1, 1), (2, 0, 1, -1)])
    raw = HuLiuAlgebra(ds, square)
    rep = annihilator_abelian_check(raw)
    assert not rep.holds
    assert raw.square_bracket(*rep.witness.inputs) == rep.witness.lhs


def test_killing_form_degenerate_when_annihilator_nonzero(ut_model):
    h = derive_huliu(ut_model)
    assert annihilator(h.leibniz).dim > 0
    k = killing_form(h)
    assert k.rank() < h.dim  # degenerate trace form


def test_annihilator_square_action_flag(ut_model, nilpotent_dim2):
    assert annihilator_square_action_nonzero(derive_huliu(ut_model))
    h = HuLiuAlgebra(nilpotent_dim2, zero_table(2))
    assert not annihilator_square_action_nonzero(h)


def test_eval_huliu_identity_replays_witness():
    solvable = table_from_entries(2, [(0, 1, 1, 1), (1, 0, 1, -1)])
    h = HuLiuAlgebra(zero_table(2), solvable)
    rep = verify_huliu_identities(h)
    assert not rep.holds
    which = 3  # mixed quadruple
    lhs, rhs = eval_huliu_identity(h, which, *rep.witness.inputs)
    assert (lhs, rhs) == (rep.witness.lhs, rep.witness.rhs) and lhs != rhs
