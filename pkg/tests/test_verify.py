import json

import pytest

from spinbrauer.diagrams import SpinDiagram, enumerate_basis
from spinbrauer.multiply import multiply_diagrams
from spinbrauer.scalars import DeltaPolynomial
from spinbrauer.verify import (
    ResourceBoundError,
    VerificationReport,
    brauer_from_spin,
    brauer_multiply,
    brauer_to_spin,
    verify_associativity,
    verify_brauer_consistency,
    verify_cell_symmetry,
    verify_circuit_scaling,
    verify_clifford_relation,
    verify_equivariance,
    verify_filtration,
    verify_homomorphism,
    verify_involution_compatibility,
    verify_modmult,
    verify_rank,
)

CUP_CAP = SpinDiagram(2, (), (), ((1, 2),), ((1, 2),), ())


def test_report_requires_witness_on_failure():
    with pytest.raises(AssertionError):
        VerificationReport("x", {}, False)


def test_report_json_round_trips():
    report = VerificationReport("x", {"n": 1}, True, info={"rank": 2})
    assert json.loads(json.dumps(report.to_json())) == {
        "check": "x", "parameters": {"n": 1}, "passed": True, "info": {"rank": 2},
    }


def test_brauer_single_loop():
    loops, matching = brauer_multiply(
        brauer_from_spin(CUP_CAP), brauer_from_spin(CUP_CAP), 2
    )
    assert loops == 1
    assert brauer_to_spin(2, matching) == CUP_CAP
    assert multiply_diagrams(CUP_CAP, CUP_CAP).terms == {
        CUP_CAP: DeltaPolynomial.delta(1)
    }


def test_brauer_round_trip():
    for d in enumerate_basis(2):
        if d.top_isolated or d.bottom_isolated:
            continue
        assert brauer_to_spin(2, brauer_from_spin(d)) == d


@pytest.mark.parametrize("n", [1, 2, 3])
def test_brauer_consistency(n):
    assert verify_brauer_consistency(n).passed


def test_homomorphism_small():
    assert verify_homomorphism(1, 3).passed
    report = verify_homomorphism(2, 3, mode="random", samples=10, seed=4)
    assert report.passed and report.parameters["pairs"] == 10


def test_homomorphism_bound():
    with pytest.raises(ResourceBoundError):
        verify_homomorphism(3, 9, bound=100)


def test_homomorphism_rejects_unknown_mode():
    with pytest.raises(ValueError):
        verify_homomorphism(1, 3, mode="sometimes")


def test_equivariance_all_kinds_at_three():
    for kind in ("projection", "injection", "immersion", "contraction",
                 "swap", "invariant"):
        assert verify_equivariance(3, kind).passed


def test_circuit_scaling_representatives():
    assert verify_circuit_scaling(3, "IV", 0).passed
    assert verify_circuit_scaling(5, "II", 1).passed
    assert verify_circuit_scaling(4, "I", 1).passed
    assert verify_circuit_scaling(3, "V", 2).passed


def test_circuit_scaling_rejects_bad_plan():
    with pytest.raises(ValueError):
        verify_circuit_scaling(3, "I", 0)
    with pytest.raises(ValueError):
        verify_circuit_scaling(3, "VI", 1)


def test_clifford_relation():
    assert verify_clifford_relation(3).passed


def test_rank_asserted_range():
    report = verify_rank(1, 3)
    assert report.passed and report.info == {
        "basis_size": 2, "rank": 2, "asserted": True,
    }


def test_rank_informational_below_stability():
    report = verify_rank(2, 2)
    assert report.passed
    assert report.info["asserted"] is False
    assert report.info["rank"] < report.info["basis_size"]


def test_associativity_symbolic():
    assert verify_associativity(2, samples=25, seed=3).passed


def test_filtration():
    assert verify_filtration(2).passed


def test_modmult_and_cell_checks():
    assert verify_modmult(2).passed
    assert verify_cell_symmetry(2).passed
    assert verify_involution_compatibility(2).passed


def test_reports_are_deterministic():
    a = verify_homomorphism(2, 3, mode="random", samples=5, seed=11)
    b = verify_homomorphism(2, 3, mode="random", samples=5, seed=11)
    assert a.to_json() == b.to_json()
