"""Plant, gain, and control-law construction and validation."""

import numpy as np
import pytest

from sectorcert import (
    ControlLaw,
    DimensionMismatch,
    Gain,
    InvalidParameter,
    OddFunction,
    Plant,
    Uncontrollable,
    closed_loop_matrix,
    validate_plant,
)


def test_plant_reshapes_vectors_to_columns(ref_plant):
    assert ref_plant.b.shape == (2, 1)
    assert ref_plant.d.shape == (2, 1)
    assert ref_plant.n == 2
    assert ref_plant.l == 1
    assert ref_plant.f_bar == 0.1


def test_plant_matrices_are_read_only(ref_plant):
    with pytest.raises(ValueError):
        ref_plant.a[0, 0] = 5.0


def test_plant_rejects_non_finite_entries():
    with pytest.raises(InvalidParameter):
        Plant(a=[[0.0, np.inf], [0.0, 0.0]], b=[0.0, 1.0], d=[0.0, 1.0], f_bar=0.1)


def test_validate_plant_returns_the_plant(ref_plant):
    assert validate_plant(ref_plant) is ref_plant


def test_validate_plant_rejects_non_square_a():
    plant = Plant(a=[[0.0, 1.0]], b=[1.0], d=[1.0], f_bar=0.0)
    with pytest.raises(DimensionMismatch):
        validate_plant(plant)


def test_validate_plant_rejects_wrong_b_shape():
    plant = Plant(a=[[0.0, 1.0], [0.0, 0.0]], b=[[1.0, 0.0], [0.0, 1.0]], d=[0.0, 1.0], f_bar=0.0)
    with pytest.raises(DimensionMismatch):
        validate_plant(plant)


def test_validate_plant_rejects_wrong_d_rows():
    plant = Plant(a=[[0.0, 1.0], [0.0, 0.0]], b=[0.0, 1.0], d=[[1.0]], f_bar=0.0)
    with pytest.raises(DimensionMismatch):
        validate_plant(plant)


def test_validate_plant_rejects_negative_f_bar():
    plant = Plant(a=[[0.0, 1.0], [0.0, 0.0]], b=[0.0, 1.0], d=[0.0, 1.0], f_bar=-0.1)
    with pytest.raises(InvalidParameter):
        validate_plant(plant)


def test_validate_plant_rejects_uncontrollable_pair():
    # diagonal A with input on the first state only: second state unreachable
    plant = Plant(a=[[1.0, 0.0], [0.0, 2.0]], b=[1.0, 0.0], d=[0.0, 1.0], f_bar=0.0)
    with pytest.raises(Uncontrollable):
        validate_plant(plant)


def test_gain_properties(ref_gain):
    assert ref_gain.n == 2
    assert ref_gain.kappa == -5.0
    assert ref_gain.row.shape == (1, 2)
    np.testing.assert_array_equal(ref_gain.k, [-2.0, -3.0])


def test_gain_rejects_nan():
    with pytest.raises(InvalidParameter):
        Gain([1.0, np.nan])


def test_law_variant_validation(ref_gain, sat11):
    with pytest.raises(InvalidParameter):
        ControlLaw("relay", ref_gain, ())
    with pytest.raises(InvalidParameter):
        ControlLaw("linear", ref_gain, (sat11,))
    with pytest.raises(InvalidParameter):
        ControlLaw("scalar_wrapped", ref_gain, (sat11, sat11))
    with pytest.raises(InvalidParameter):
        ControlLaw("componentwise", ref_gain, ())


def test_componentwise_broadcasts_single_function(ref_gain, sat11):
    law = ControlLaw.componentwise(ref_gain, sat11)
    assert len(law.functions) == 2
    assert law.functions[0] is law.functions[1]


def test_componentwise_accepts_distinct_functions(ref_gain, sat11):
    other = OddFunction.arctan(1.0, 1.0)
    law = ControlLaw.componentwise(ref_gain, [sat11, other])
    assert law.functions == (sat11, other)


def test_check_against_dimension_mismatch(ref_plant, sat11):
    law = ControlLaw.linear(Gain([1.0, 2.0, 3.0]))
    with pytest.raises(DimensionMismatch):
        law.check_against(ref_plant)
    law = ControlLaw("componentwise", Gain([1.0, 2.0]), (sat11,))
    with pytest.raises(DimensionMismatch):
        law.check_against(ref_plant)


def test_closed_loop_matrix_identity_assignment(ref_plant, ref_gain):
    m = closed_loop_matrix(ref_plant, ref_gain, np.ones(2))
    np.testing.assert_allclose(m, [[0.0, 1.0], [-2.0, -3.0]], rtol=0, atol=0)


def test_closed_loop_matrix_vector_equals_diagonal(ref_plant, ref_gain):
    diag = np.array([0.4, 1.0])
    m_vec = closed_loop_matrix(ref_plant, ref_gain, diag)
    m_mat = closed_loop_matrix(ref_plant, ref_gain, np.diag(diag))
    np.testing.assert_array_equal(m_vec, m_mat)
    # column i of K is scaled by the i-th diagonal entry
    expected = ref_plant.a + ref_plant.b @ (ref_gain.row * diag)
    np.testing.assert_array_equal(m_vec, expected)


def test_closed_loop_matrix_rejects_bad_psi(ref_plant, ref_gain):
    with pytest.raises(DimensionMismatch):
        closed_loop_matrix(ref_plant, ref_gain, np.ones(3))
    with pytest.raises(DimensionMismatch):
        closed_loop_matrix(ref_plant, ref_gain, np.ones((3, 3)))
    with pytest.raises(InvalidParameter):
        closed_loop_matrix(ref_plant, ref_gain, np.array([1.0, np.nan]))
