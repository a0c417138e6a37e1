"""Executable check suite: every structural claim becomes a deterministic,
exactly-evaluated pass/fail report with a witness on failure.

Matrix checks specialize delta to N; algebraic checks (associativity,
filtration, the Brauer subalgebra) run symbolically in Z[delta].
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Optional

from .cellular import modmult_check, phi_ell, enumerate_S
from .diagrams import (
    AlgebraElement,
    SpinDiagram,
    cell_encode,
    emit_diagram,
    enumerate_basis,
    involution,
)
from .linalg import LinearMap, rank_of_vectors
from .multiply import multiply_diagrams, multiply_elements
from .realization import (
    SpaceSpec,
    act_gamma,
    act_so,
    act_so_v_only,
    contraction_map,
    immersion_map,
    injection_map,
    invariant_vector,
    projection_map,
    realize_diagram,
    so_basis,
    swap_map,
)
from .scalars import DeltaPolynomial, RootTwoNumber

__all__ = [
    "VerificationReport",
    "DEFAULT_DIMENSION_BOUND",
    "verify_homomorphism",
    "verify_equivariance",
    "verify_circuit_scaling",
    "verify_clifford_relation",
    "verify_rank",
    "verify_brauer_consistency",
    "verify_associativity",
    "verify_filtration",
    "verify_modmult",
    "verify_cell_symmetry",
    "CHECKS",
]

DEFAULT_DIMENSION_BOUND = 4096


@dataclass
class VerificationReport:
    check_name: str
    parameters: dict
    passed: bool
    counterexample: Optional[dict] = None
    info: dict = field(default_factory=dict)

    def __post_init__(self):
        assert self.passed or self.counterexample is not None

    def to_json(self) -> dict:
        out = {
            "check": self.check_name,
            "parameters": self.parameters,
            "passed": self.passed,
        }
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        if self.info:
            out["info"] = self.info
        return out


class ResourceBoundError(RuntimeError):
    """Requested parameters exceed the configured dimension bound."""


def _check_bound(space: SpaceSpec, bound: int) -> None:
    if space.total_dim > bound:
        raise ResourceBoundError(
            f"total dimension {space.total_dim} exceeds bound {bound}"
        )


class _Realizer:
    """Caches diagram realizations for one space."""

    def __init__(self, space: SpaceSpec):
        self.space = space
        self._cache: dict[SpinDiagram, LinearMap] = {}

    def __call__(self, d: SpinDiagram) -> LinearMap:
        got = self._cache.get(d)
        if got is None:
            got = self._cache[d] = realize_diagram(d, self.space)
        return got

    def element(self, a: AlgebraElement, N: int) -> LinearMap:
        dim = self.space.total_dim
        out = LinearMap.zero(dim, dim)
        for d, c in a.terms.items():
            out = out + self(d).scale(RootTwoNumber(c.eval_at(N)))
        return out


def verify_homomorphism(
    n: int,
    N: int,
    mode: str = "exhaustive",
    samples: int = 50,
    seed: int = 0,
    bound: int = DEFAULT_DIMENSION_BOUND,
) -> VerificationReport:
    """multiply(top, bottom) realized at delta=N equals the matrix composite."""
    space = SpaceSpec(N, n)
    _check_bound(space, bound)
    basis = enumerate_basis(n)
    if mode == "exhaustive":
        pairs = [(a, b) for a in basis for b in basis]
    elif mode == "random":
        rng = random.Random(seed)
        pairs = [(rng.choice(basis), rng.choice(basis)) for _ in range(samples)]
    else:
        raise ValueError(f"unknown mode {mode!r}")
    realize = _Realizer(space)
    params = {"n": n, "N": N, "mode": mode, "pairs": len(pairs), "seed": seed}
    for top, bottom in pairs:
        product = multiply_diagrams(top, bottom).evaluate_at(N)
        lhs = realize.element(product, N)
        rhs = realize(bottom) @ realize(top)
        if lhs != rhs:
            return VerificationReport(
                "homomorphism",
                params,
                False,
                {"top": emit_diagram(top), "bottom": emit_diagram(bottom)},
            )
    return VerificationReport("homomorphism", params, True)


_EQUIVARIANT_FAMILIES: dict[str, list[tuple[int, object]]] = {
    "projection": [(1, 1), (2, 1), (2, 2)],
    "injection": [(0, 1), (1, 1), (1, 2)],
    "immersion": [(0, (1, 2)), (1, (1, 3)), (1, (2, 3))],
    "contraction": [(2, (1, 2))],
    "swap": [(2, (2, 1))],
}


def _family_map(kind: str, space: SpaceSpec, pos) -> tuple[LinearMap, SpaceSpec]:
    if kind == "projection":
        return projection_map(space, pos), space.with_n(space.n - 1)
    if kind == "injection":
        return injection_map(space, pos), space.with_n(space.n + 1)
    if kind == "immersion":
        return immersion_map(space, *pos), space.with_n(space.n + 2)
    if kind == "contraction":
        return contraction_map(space, *pos), space.with_n(space.n - 2)
    if kind == "swap":
        return swap_map(space, pos), space
    raise ValueError(f"unknown map kind {kind!r}")


def verify_equivariance(N: int, map_kind: str,
                        bound: int = DEFAULT_DIMENSION_BOUND) -> VerificationReport:
    """Commutation with every so(N) basis element and the odd reflection.

    map_kind "invariant" instead checks that the immersed element of V (x) V
    is annihilated by the so(N) action on the slots.
    """
    params = {"N": N, "map_kind": map_kind}
    if map_kind == "invariant":
        vec = invariant_vector(N)
        for sym in so_basis(SpaceSpec(N, 0)):
            image = act_so_v_only(sym, N, 2).apply(vec)
            if image:
                return VerificationReport(
                    "equivariance", params, False, {"symbol": repr(sym)}
                )
        return VerificationReport("equivariance", params, True)

    for n, pos in _EQUIVARIANT_FAMILIES[map_kind]:
        dom = SpaceSpec(N, n)
        _check_bound(dom, bound)
        fmap, cod = _family_map(map_kind, dom, pos)
        for sym in so_basis(dom):
            lhs = fmap @ act_so(sym, dom)
            rhs = act_so(sym, cod) @ fmap
            if lhs != rhs:
                return VerificationReport(
                    "equivariance", params, False,
                    {"symbol": repr(sym), "n": n, "positions": repr(pos)},
                )
        if (fmap @ act_gamma(dom)) != (act_gamma(cod) @ fmap):
            return VerificationReport(
                "equivariance", params, False,
                {"symbol": "gamma", "n": n, "positions": repr(pos)},
            )
    return VerificationReport("equivariance", params, True)


class _SlotComposer:
    """Builds a composite of equivariant blocks over named slots.

    Slots are identified by integer names whose sorted order is the final
    left-to-right layout; positions are recomputed at every step, so a plan
    reads like the circuit picture regardless of arity changes.
    """

    def __init__(self, N: int):
        self.N = N
        self.slots: list[int] = []
        space = SpaceSpec(N, 0)
        self.matrix = LinearMap.identity(space.fock_dim)

    def _space(self) -> SpaceSpec:
        return SpaceSpec(self.N, len(self.slots))

    def inject(self, name: int) -> None:
        pos = sum(1 for s in self.slots if s < name) + 1
        self.matrix = injection_map(self._space(), pos) @ self.matrix
        self.slots.insert(pos - 1, name)

    def immerse(self, a: int, b: int) -> None:
        new = sorted(self.slots + [a, b])
        i, j = new.index(a) + 1, new.index(b) + 1
        self.matrix = immersion_map(self._space(), i, j) @ self.matrix
        self.slots = new

    def project(self, name: int) -> None:
        pos = self.slots.index(name) + 1
        self.matrix = projection_map(self._space(), pos) @ self.matrix
        self.slots.remove(name)

    def contract(self, a: int, b: int) -> None:
        i, j = sorted((self.slots.index(a) + 1, self.slots.index(b) + 1))
        self.matrix = contraction_map(self._space(), i, j) @ self.matrix
        self.slots = [s for s in self.slots if s not in (a, b)]


def _circuit_plan(composer: _SlotComposer, circuit_type: str, arcs: int) -> None:
    i = arcs
    if circuit_type == "I":
        if i < 1:
            raise ValueError("type I needs at least one arc")
        k = 2 * i
        for a in range(1, k, 2):
            composer.immerse(a, a + 1)
        for a in range(2, k - 1, 2):
            composer.contract(a, a + 1)
        composer.contract(1, k)
    elif circuit_type == "II":
        k = 2 * i + 2
        composer.inject(1)
        composer.inject(k)
        for a in range(2, k - 1, 2):
            composer.immerse(a, a + 1)
        for a in range(1, k, 2):
            composer.contract(a, a + 1)
    elif circuit_type == "III":
        k = 2 * i + 2
        for a in range(1, k, 2):
            composer.immerse(a, a + 1)
        for a in range(2, k - 1, 2):
            composer.contract(a, a + 1)
        composer.project(1)
        composer.project(k)
    elif circuit_type == "IV":
        k = 2 * i + 1
        composer.inject(1)
        for a in range(2, k, 2):
            composer.immerse(a, a + 1)
        for a in range(1, k - 1, 2):
            composer.contract(a, a + 1)
        composer.project(k)
    elif circuit_type == "V":
        k = 2 * i + 1
        composer.inject(k)
        for a in range(1, k - 1, 2):
            composer.immerse(a, a + 1)
        for a in range(2, k, 2):
            composer.contract(a, a + 1)
        composer.project(1)
    else:
        raise ValueError(f"unknown circuit type {circuit_type!r}")


def verify_circuit_scaling(N: int, circuit_type: str, arcs: int,
                           bound: int = DEFAULT_DIMENSION_BOUND) -> VerificationReport:
    """A closed-circuit composite equals N times the identity on the spin factor."""
    params = {"N": N, "type": circuit_type, "arcs": arcs}
    composer = _SlotComposer(N)
    _circuit_plan(composer, circuit_type, arcs)
    if composer.slots:
        raise AssertionError("circuit plan left open slots")
    fock = SpaceSpec(N, 0).fock_dim
    expected = LinearMap.identity(fock).scale(RootTwoNumber(N))
    passed = composer.matrix == expected
    ce = None if passed else {"got_nnz": composer.matrix.nnz()}
    return VerificationReport("circuit_scaling", params, passed, ce)


def verify_clifford_relation(N: int,
                             bound: int = DEFAULT_DIMENSION_BOUND) -> VerificationReport:
    """Transposing adjacent spin operators matches the diagram rewriting rule.

    For each adjacent pair (injection/injection, projection/injection,
    projection/projection) the swapped composite equals minus the original
    plus twice the joined map (immersion, through string, contraction).
    """
    params = {"N": N}
    fails = []

    comp = _SlotComposer(N)
    comp.inject(1)
    comp.inject(2)
    canonical = comp.matrix
    comp = _SlotComposer(N)
    comp.inject(2)
    comp.inject(1)
    swapped = comp.matrix
    joined = immersion_map(SpaceSpec(N, 0), 1, 2)
    if swapped != joined.scale(RootTwoNumber(2)) - canonical:
        fails.append("injection/injection")

    space1 = SpaceSpec(N, 1)
    canonical = injection_map(SpaceSpec(N, 0), 1) @ projection_map(space1, 1)
    swapped = projection_map(SpaceSpec(N, 2), 2) @ injection_map(space1, 1)
    through = LinearMap.identity(space1.total_dim)
    if swapped != through.scale(RootTwoNumber(2)) - canonical:
        fails.append("projection/injection")

    space2 = SpaceSpec(N, 2)
    canonical = projection_map(space1, 1) @ projection_map(space2, 1)
    swapped = projection_map(space1, 1) @ projection_map(space2, 2)
    joined = contraction_map(space2, 1, 2)
    if swapped != joined.scale(RootTwoNumber(2)) - canonical:
        fails.append("projection/projection")

    passed = not fails
    return VerificationReport(
        "clifford_relation", params, passed,
        None if passed else {"failing_swaps": fails},
    )


def verify_rank(n: int, N: int, bound: int = DEFAULT_DIMENSION_BOUND) -> VerificationReport:
    """Rank of the span of realized basis diagrams, flattened to vectors.

    Passes when the rank equals the basis size for N >= 2n; for N < 2n the
    observed rank is reported without any assertion.
    """
    space = SpaceSpec(N, n)
    _check_bound(space, bound)
    basis = enumerate_basis(n)
    vectors = [realize_diagram(d, space).flatten() for d in basis]
    rank = rank_of_vectors(vectors)
    info = {"basis_size": len(basis), "rank": rank, "asserted": N >= 2 * n}
    if N >= 2 * n:
        passed = rank == len(basis)
    else:
        passed = True
    ce = None if passed else {"rank": rank, "basis_size": len(basis)}
    return VerificationReport("rank", {"n": n, "N": N}, passed, ce, info)


# --- independent classical Brauer oracle -------------------------------------

BrauerDiagram = frozenset  # of frozensets {("t", i) | ("b", i)}


def brauer_from_spin(d: SpinDiagram) -> BrauerDiagram:
    if d.top_isolated or d.bottom_isolated:
        raise ValueError("only isolated-free diagrams are classical")
    edges = [frozenset((("t", a), ("t", b))) for a, b in d.top_arcs]
    edges += [frozenset((("b", a), ("b", b))) for a, b in d.bottom_arcs]
    edges += [frozenset((("t", i), ("b", j))) for i, j in d.through]
    return frozenset(edges)


def brauer_to_spin(n: int, matching: BrauerDiagram) -> SpinDiagram:
    top_arcs, bottom_arcs, through = [], [], []
    for edge in matching:
        (r1, v1), (r2, v2) = sorted(edge)
        if r1 == r2 == "t":
            top_arcs.append((v1, v2))
        elif r1 == r2 == "b":
            bottom_arcs.append((v1, v2))
        else:
            through.append((v2, v1))  # sorted puts ("b", j) before ("t", i)
    return SpinDiagram(n, (), (), tuple(top_arcs), tuple(bottom_arcs), tuple(through))


def brauer_multiply(top: BrauerDiagram, bottom: BrauerDiagram,
                    n: int) -> tuple[int, BrauerDiagram]:
    """Classical product by path tracing; returns (closed loops, matching).

    Edges are consumed one by one, so parallel edges (a two-edge loop through
    the middle row) are handled like any other cycle.
    """
    edges: list[tuple[tuple, tuple]] = []
    for edge in top:
        (r1, v1), (r2, v2) = edge
        a = ("T", v1) if r1 == "t" else ("M", v1)
        b = ("T", v2) if r2 == "t" else ("M", v2)
        edges.append((a, b))
    for edge in bottom:
        (r1, v1), (r2, v2) = edge
        a = ("M", v1) if r1 == "t" else ("B", v1)
        b = ("M", v2) if r2 == "t" else ("B", v2)
        edges.append((a, b))
    incident: dict[tuple, list[int]] = {}
    for idx, (a, b) in enumerate(edges):
        incident.setdefault(a, []).append(idx)
        incident.setdefault(b, []).append(idx)
    used = [False] * len(edges)

    out = []
    done_ext: set[tuple] = set()
    for start in sorted(incident):
        if start[0] == "M" or start in done_ext:
            continue
        done_ext.add(start)
        cur = start
        while True:
            eidx = next(i for i in incident[cur] if not used[i])
            used[eidx] = True
            a, b = edges[eidx]
            cur = b if a == cur else a
            if cur[0] != "M":
                done_ext.add(cur)
                break
        out.append(frozenset((
            ("t" if start[0] == "T" else "b", start[1]),
            ("t" if cur[0] == "T" else "b", cur[1]),
        )))

    loops = 0
    for idx in range(len(edges)):
        if used[idx]:
            continue
        loops += 1
        used[idx] = True
        first, cur = edges[idx]
        while cur != first:
            eidx = next(i for i in incident[cur] if not used[i])
            used[eidx] = True
            a, b = edges[eidx]
            cur = b if a == cur else a
    return loops, frozenset(out)


def verify_brauer_consistency(n: int) -> VerificationReport:
    """Products of isolated-free diagrams match the classical path-tracing product."""
    basis = [d for d in enumerate_basis(n) if not d.top_isolated and not d.bottom_isolated]
    params = {"n": n, "diagrams": len(basis)}
    for d1 in basis:
        for d2 in basis:
            loops, matching = brauer_multiply(
                brauer_from_spin(d1), brauer_from_spin(d2), n
            )
            expected = AlgebraElement.from_diagram(
                brauer_to_spin(n, matching), DeltaPolynomial.delta(loops)
            )
            if multiply_diagrams(d1, d2) != expected:
                return VerificationReport(
                    "brauer_consistency", params, False,
                    {"top": emit_diagram(d1), "bottom": emit_diagram(d2)},
                )
    return VerificationReport("brauer_consistency", params, True)


def verify_associativity(n: int, samples: int = 100, seed: int = 0) -> VerificationReport:
    """(a b) c = a (b c) symbolically on random basis triples."""
    basis = enumerate_basis(n)
    rng = random.Random(seed)
    params = {"n": n, "samples": samples, "seed": seed}
    for _ in range(samples):
        a, b, c = (AlgebraElement.from_diagram(rng.choice(basis)) for _ in range(3))
        left = multiply_elements(multiply_elements(a, b), c)
        right = multiply_elements(a, multiply_elements(b, c))
        if left != right:
            return VerificationReport(
                "associativity", params, False,
                {"triple": [e.to_json() for e in (a, b, c)]},
            )
    return VerificationReport("associativity", params, True)


def verify_filtration(n: int) -> VerificationReport:
    """Through-string count never exceeds either factor's count."""
    basis = enumerate_basis(n)
    params = {"n": n, "pairs": len(basis) ** 2}
    for d1 in basis:
        for d2 in basis:
            cap = min(d1.through_count, d2.through_count)
            product = multiply_diagrams(d1, d2)
            if product.max_through() > cap:
                return VerificationReport(
                    "filtration", params, False,
                    {"top": emit_diagram(d1), "bottom": emit_diagram(d2)},
                )
    return VerificationReport("filtration", params, True)


def verify_modmult(n: int) -> VerificationReport:
    """Exhaustive agreement of products with the pairing-form prediction."""
    basis = enumerate_basis(n)
    params = {"n": n, "pairs": len(basis) ** 2}
    for d1 in basis:
        for d2 in basis:
            if not modmult_check(d1, d2):
                return VerificationReport(
                    "modmult", params, False,
                    {"top": emit_diagram(d1), "bottom": emit_diagram(d2)},
                )
    return VerificationReport("modmult", params, True)


def verify_cell_symmetry(n: int) -> VerificationReport:
    """Swapping the pairing's arguments inverts the permutation, scalars fixed."""
    params = {"n": n}
    for ell in range(n + 1):
        vecs = enumerate_S(n, ell)
        for v1 in vecs:
            for v2 in vecs:
                a = phi_ell(ell, v1, v2)
                b = phi_ell(ell, v2, v1)
                if (a is None) != (b is None) or (a is not None and a.inverted() != b):
                    return VerificationReport(
                        "cell_symmetry", params, False,
                        {"ell": ell, "v1": repr(v1), "v2": repr(v2)},
                    )
    return VerificationReport("cell_symmetry", params, True)


def verify_involution_compatibility(n: int) -> VerificationReport:
    """Row swap exchanges the two cell factors and inverts the permutation."""
    params = {"n": n}
    for d in enumerate_basis(n):
        ell, t = cell_encode(d)
        ell2, ti = cell_encode(involution(d))
        inv = [0] * ell
        for i, j in enumerate(t.sigma):
            inv[j] = i
        ok = (
            ell == ell2
            and ti.x == t.y and ti.S == t.T
            and ti.y == t.x and ti.T == t.S
            and ti.sigma == tuple(inv)
        )
        if not ok:
            return VerificationReport(
                "involution_compatibility", params, False, {"diagram": emit_diagram(d)}
            )
    return VerificationReport("involution_compatibility", params, True)


CHECKS: dict[str, Callable[..., VerificationReport]] = {
    "homomorphism": verify_homomorphism,
    "equivariance": verify_equivariance,
    "circuit": verify_circuit_scaling,
    "clifford": verify_clifford_relation,
    "rank": verify_rank,
    "brauer": verify_brauer_consistency,
    "associativity": verify_associativity,
    "filtration": verify_filtration,
    "modmult": verify_modmult,
    "cell-symmetry": verify_cell_symmetry,
    "involution": verify_involution_compatibility,
}
