"""Acceptance gate: every criterion at its stated tolerance (exact, zero
tolerance everywhere), one printed pass/fail line per criterion.

Run with `pytest tests/test_acceptance.py -v -s` to see the lines as they
complete; the whole module is also part of the default suite.
"""

import json
import time

import pytest

from conftest import DEMO_B, DEMO_BOTTOM, DEMO_TOP, FIXTURES
from spinbrauer.cellular import irreducible_indices, phi_ell
from spinbrauer.diagrams import enumerate_basis, identity_diagram
from spinbrauer.multiply import multiply_diagrams
from spinbrauer.scalars import DeltaPolynomial
from spinbrauer.verify import (
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


def record(number: int, label: str, passed: bool, elapsed: float) -> None:
    status = "PASS" if passed else "FAIL"
    print(f"[{status}] criterion {number}: {label} ({elapsed:.1f}s)")
    assert passed, f"criterion {number}: {label}"


def test_criterion_1_worked_product_reproduction():
    t0 = time.time()
    product = multiply_diagrams(DEMO_TOP, DEMO_BOTTOM)
    expected = json.loads((FIXTURES / "product_demo_result.json").read_text())
    ok = product.to_json() == expected
    elapsed = time.time() - t0
    record(1, "seven-vertex product equals the stored expansion", ok and elapsed < 1.0, elapsed)


def test_criterion_2_composition_matches_multiplication():
    t0 = time.time()
    ok = True
    for N in (2, 3, 4, 5):
        ok &= verify_homomorphism(1, N, mode="exhaustive").passed
    for N in (4, 5):
        ok &= verify_homomorphism(2, N, mode="exhaustive").passed
    for N in (6, 7):
        ok &= verify_homomorphism(3, N, mode="random", samples=50, seed=2024).passed
    elapsed = time.time() - t0
    record(2, "products realize as matrix composition", ok and elapsed <= 600, elapsed)


def test_criterion_3_equivariance():
    t0 = time.time()
    ok = True
    for N in (3, 4, 5, 6, 7):
        ok &= verify_equivariance(N, "projection").passed
        ok &= verify_equivariance(N, "injection").passed
        ok &= verify_equivariance(N, "invariant").passed
    elapsed = time.time() - t0
    record(3, "projection/injection equivariance and invariant annihilation",
           ok and elapsed <= 60, elapsed)


def test_criterion_4_circuit_scaling():
    t0 = time.time()
    ok = True
    shapes = {"I": (1, 2), "II": (0, 1, 2), "III": (0, 1, 2),
              "IV": (0, 1, 2), "V": (0, 1, 2)}
    for N in (3, 4, 5):
        for circuit_type, arc_counts in shapes.items():
            for arcs in arc_counts:
                ok &= verify_circuit_scaling(N, circuit_type, arcs).passed
    record(4, "closed circuits scale by the dimension", ok, time.time() - t0)


def test_criterion_5_operator_swap_rule():
    t0 = time.time()
    ok = all(verify_clifford_relation(N).passed for N in (3, 4))
    record(5, "transposition rule matches operator swaps", ok, time.time() - t0)


def test_criterion_6_isomorphism_range_ranks():
    t0 = time.time()
    ok = True
    for n, N, size in ((1, 3, 2), (2, 4, 10), (2, 5, 10)):
        report = verify_rank(n, N)
        ok &= report.passed and report.info == {
            "basis_size": size, "rank": size, "asserted": True,
        }
    record(6, "realization span has full rank for N >= 2n", ok, time.time() - t0)


def test_criterion_7_cellularity_suite():
    t0 = time.time()
    ok = True

    x = tuple(sorted(((1,), (2,), (3,), (4,), (5,), (6,), (7, 8))))
    y = tuple(sorted(((1, 3), (2,), (4,), (5,), (6, 7), (8,))))
    value = phi_ell(3, (x, ((1,), (4,), (6,))), (y, ((2,), (5,), (8,))))
    ok &= (
        value is not None
        and value.coefficient() == DeltaPolynomial.constant(4)
        and value.two_power == 2
        and value.perm == (0, 1, 2)
    )
    ok &= verify_modmult(2).passed
    ok &= verify_cell_symmetry(1).passed and verify_cell_symmetry(2).passed
    ok &= (verify_involution_compatibility(1).passed
           and verify_involution_compatibility(2).passed)
    ok &= all(verify_filtration(n).passed for n in (1, 2, 3))
    record(7, "pairing form, leading-term congruence, symmetry, filtration",
           ok, time.time() - t0)


def test_criterion_8_symbolic_algebra():
    t0 = time.time()
    ok = verify_associativity(2, samples=100, seed=7).passed
    one = identity_diagram(2)
    for d in enumerate_basis(2):
        ok &= multiply_diagrams(one, d).terms == {d: DeltaPolynomial.one()}
        ok &= multiply_diagrams(d, one).terms == {d: DeltaPolynomial.one()}
    ok &= all(verify_brauer_consistency(n).passed for n in (1, 2, 3))
    record(8, "associativity, identity, classical subalgebra agreement",
           ok, time.time() - t0)


def test_criterion_9_classification():
    t0 = time.time()

    def partitions(m):
        def gen(rest, maxpart):
            if rest == 0:
                yield ()
                return
            for part in range(min(rest, maxpart), 0, -1):
                for tail in gen(rest - part, part):
                    yield (part,) + tail

        return list(gen(m, m if m else 1))

    ok = True
    for n in range(5):
        for char in (0, 2, 3):
            expected = [
                (m, lam)
                for m in range(n + 1)
                for lam in partitions(m)
                if char == 0 or all(lam.count(p) <= char - 1 for p in set(lam))
            ]
            ok &= irreducible_indices(n, char) == expected
        ok &= irreducible_indices(n, 0, delta_zero=True) == [(0, ())]
    record(9, "irreducible indexing matches regular-partition enumeration",
           ok, time.time() - t0)
