from fractions import Fraction

import pytest

from spinbrauer.diagrams import SpinDiagram, identity_diagram
from spinbrauer.linalg import LinearMap
from spinbrauer.multiply import multiply_diagrams
from spinbrauer.realization import (
    EquivariantMapSpec,
    SoSymbol,
    SpaceSpec,
    act_gamma,
    act_so,
    act_so_v_only,
    apply_fock_operator,
    build_equivariant_map,
    contraction_map,
    immersion_map,
    injection_map,
    invariant_vector,
    omega_pairing,
    projection_map,
    realize_diagram,
    swap_map,
)
from spinbrauer.scalars import RootTwoNumber

ONE = RootTwoNumber(1)
SQRT2 = RootTwoNumber(0, 1)


def fock_maps(space, op):
    dim = space.fock_dim
    cols = {}
    for mask in range(dim):
        res = apply_fock_operator(op, space, mask)
        if res is not None:
            sign, out = res
            cols[mask] = {out: RootTwoNumber(sign)}
    return LinearMap(dim, dim, cols)


def test_wedge_inserts_at_front():
    space = SpaceSpec(4)  # m = 2
    assert apply_fock_operator(("X", 1), space, 0b10) == (1, 0b11)


def test_contraction_removes_first_mode():
    space = SpaceSpec(4)
    assert apply_fock_operator(("Dstar", 1), space, 0b11) == (1, 0b10)


def test_wedge_annihilates_occupied_mode():
    space = SpaceSpec(4)
    assert apply_fock_operator(("X", 2), space, 0b10) is None


def test_index_out_of_range():
    with pytest.raises(ValueError):
        apply_fock_operator(("X", 3), SpaceSpec(4), 0)


def test_anticommutators_m3():
    space = SpaceSpec(7, 0)  # m = 3
    ident = LinearMap.identity(space.fock_dim)
    zero = LinearMap.zero(space.fock_dim, space.fock_dim)
    for i in range(1, 4):
        for j in range(1, 4):
            X_i, X_j = fock_maps(space, ("X", i)), fock_maps(space, ("X", j))
            D_i, D_j = fock_maps(space, ("Dstar", i)), fock_maps(space, ("Dstar", j))
            assert X_i @ X_j + X_j @ X_i == zero
            assert D_i @ D_j + D_j @ D_i == zero
            expected = ident if i == j else zero
            assert X_i @ D_j + D_j @ X_i == expected
    parity = fock_maps(space, ("parity",))
    for i in range(1, 4):
        X_i = fock_maps(space, ("X", i))
        D_i = fock_maps(space, ("Dstar", i))
        assert parity @ X_i + X_i @ parity == zero
        assert parity @ D_i + D_i @ parity == zero


def test_omega_pairs_dual_modes():
    space = SpaceSpec(5)  # m = 2; contents: w1 w2 w1* w2* e
    assert omega_pairing(0, 2, space) == 1
    assert omega_pairing(2, 0, space) == 1
    assert omega_pairing(0, 0, space) == 0
    assert omega_pairing(4, 4, space) == 1
    assert omega_pairing(4, 0, space) == 0


def vec(space, slots, mask):
    return {space.encode(slots, mask): ONE}


def test_mixed_symbol_action_on_v():
    # h applied to its dual partner returns the raising vector.
    space = SpaceSpec(5, 1)
    act = act_so(SoSymbol("mixed", 1, 1), space)
    out = act.apply(vec(space, (0,), 0))
    # slot part w1 -> w1 plus the spin part (-1/2 on the empty wedge).
    assert out[space.encode((0,), 0)] == RootTwoNumber(1) + RootTwoNumber(Fraction(-1, 2))


def test_lowering_e_symbol_sends_e_to_dual():
    space = SpaceSpec(5, 1)
    act = act_so(SoSymbol("lowering_e", 1), space)
    out = act.apply(vec(space, (4,), 0))  # e in the only slot
    assert out[space.encode((2,), 0)] == RootTwoNumber(-1)  # -w1*


def test_lowering_pair_on_full_wedge():
    space = SpaceSpec(5, 0)
    act = act_so(SoSymbol("lowering", 1, 2), space)
    out = act.apply({0b11: ONE})
    assert out == {0b00: RootTwoNumber(-1)}


def test_so_action_respects_omega():
    # skew: omega(g u, v) + omega(u, g v) = 0 for all so-basis symbols.
    from spinbrauer.realization import _v_action, so_basis

    for N in (4, 5):
        space = SpaceSpec(N, 0)
        dim = N
        for sym in so_basis(space):
            for u in range(dim):
                for v in range(dim):
                    total = 0
                    for coeff, nu in _v_action(sym, u, space):
                        total += coeff * omega_pairing(nu, v, space)
                    for coeff, nv in _v_action(sym, v, space):
                        total += coeff * omega_pairing(u, nv, space)
                    assert total == 0


def test_gamma_on_spin_factor_alone():
    space = SpaceSpec(3, 0)  # m = 1
    g = act_gamma(space)
    half = RootTwoNumber(0, Fraction(1, 2))
    assert g.column(0) == {1: half}          # empty wedge -> (1/sqrt2) w1
    assert g.column(1) == {0: -half}         # w1 -> -(1/sqrt2) empty wedge


def test_gamma_equivariance_witness():
    for N in (3, 4):
        dom = SpaceSpec(N, 1)
        cod = SpaceSpec(N, 0)
        pi = projection_map(dom, 1)
        assert pi @ act_gamma(dom) == act_gamma(cod) @ pi


def test_projection_on_wedge_example():
    space = SpaceSpec(5, 1)  # m = 2
    pi = projection_map(space, 1)
    out = pi.apply(vec(space, (0,), 0b10))  # w1 (x) wedge {2}
    assert out == {0b11: SQRT2}


def test_contraction_example():
    space = SpaceSpec(5, 2)
    kappa = contraction_map(space, 1, 2)
    out = kappa.apply(vec(space, (0, 2), 0b01))  # w1 (x) w1* (x) {1}
    assert out == {0b01: ONE}


@pytest.mark.parametrize("N", [2, 3, 4, 5])
def test_projection_of_injection_scales_by_dimension(N):
    s0, s1 = SpaceSpec(N, 0), SpaceSpec(N, 1)
    comp = projection_map(s1, 1) @ injection_map(s0, 1)
    assert comp == LinearMap.identity(s0.total_dim).scale(RootTwoNumber(N))


def test_invariant_vector_annihilated():
    for N in (3, 4):
        vecN = invariant_vector(N)
        from spinbrauer.realization import so_basis

        for sym in so_basis(SpaceSpec(N, 0)):
            assert act_so_v_only(sym, N, 2).apply(vecN) == {}


def test_contracting_an_injected_slot_is_a_projection():
    # Routing a vector into a fresh injected slot and pairing the two is the
    # same as projecting the vector directly.
    for N in (3, 4):
        dom = SpaceSpec(N, 1)
        mid = SpaceSpec(N, 2)
        composite = contraction_map(mid, 1, 2) @ injection_map(dom, 2)
        assert composite == projection_map(dom, 1)


def test_snake_identity():
    # Immersing the invariant element and contracting one leg against a
    # routed vector forwards the vector unchanged.
    for N in (3, 4):
        dom = SpaceSpec(N, 1)
        big = SpaceSpec(N, 3)
        composite = contraction_map(big, 1, 2) @ immersion_map(dom, 2, 3)
        assert composite == LinearMap.identity(dom.total_dim)


def test_swap_map_permutes_slots():
    space = SpaceSpec(3, 2)
    tau = swap_map(space, (2, 1))
    out = tau.apply(vec(space, (0, 2), 0))
    assert out == vec(space, (2, 0), 0)


def test_build_dispatch():
    space = SpaceSpec(3, 1)
    built = build_equivariant_map(EquivariantMapSpec("projection", (1,)), space)
    assert built == projection_map(space, 1)
    with pytest.raises(ValueError):
        build_equivariant_map(EquivariantMapSpec("unknown", ()), space)


def test_realize_identity_diagram():
    for N, n in ((3, 1), (4, 2)):
        space = SpaceSpec(N, n)
        assert realize_diagram(identity_diagram(n), space) == LinearMap.identity(
            space.total_dim
        )


def test_realize_both_isolated_column():
    space = SpaceSpec(3, 1)
    d = SpinDiagram(1, (1,), (1,), (), (), ())
    col = realize_diagram(d, space).column(space.encode((0,), 0))
    assert col == {
        space.encode((0,), 0): RootTwoNumber(2),
        space.encode((2,), 1): RootTwoNumber(0, -1),
    }


def test_realize_rejects_wrong_arity():
    with pytest.raises(Exception):
        realize_diagram(identity_diagram(2), SpaceSpec(3, 1))


@pytest.mark.parametrize("N", [3, 4, 5, 6, 7])
def test_every_map_kind_equivariant(N):
    from spinbrauer.verify import verify_equivariance

    for kind in ("projection", "injection", "immersion", "contraction",
                 "swap", "invariant"):
        assert verify_equivariance(N, kind).passed


def test_realize_matches_composite_on_product():
    # One fixed pair checked against matrix composition at two dimensions.
    top = SpinDiagram(2, (1,), (2,), (), (), ((2, 1),))
    bottom = SpinDiagram(2, (1, 2), (), (), ((1, 2),), ())
    for N in (3, 4):
        space = SpaceSpec(N, 2)
        product = multiply_diagrams(top, bottom).evaluate_at(N)
        lhs = LinearMap.zero(space.total_dim, space.total_dim)
        for d, c in product.terms.items():
            lhs = lhs + realize_diagram(d, space).scale(RootTwoNumber(c.eval_at(N)))
        rhs = realize_diagram(bottom, space) @ realize_diagram(top, space)
        assert lhs == rhs
