"""Exact matrix realization of diagrams on V^(x)n (x) Delta.

V is the N-dimensional orthogonal space W + W* (+ C e for odd N) with
pairing omega(w_i, w_j*) = delta_ij, omega(e, e) = 1; Delta is the exterior
algebra on W, modeled on bitmasks with fermionic wedge/contraction operators.

A diagram acts through the equivariant building blocks: contractions on top
arcs, one projection per top isolated vertex (in label order), a tensor-slot
permutation for the through strings, one injection per bottom isolated vertex
(in label order), and the invariant-element immersion on bottom arcs.
Evaluation is slot-based: slots are named, never renumbered mid-pipeline.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Sequence

from .diagrams import DiagramError, SpinDiagram
from .linalg import LinearMap
from .scalars import RootTwoNumber

__all__ = [
    "SpaceSpec",
    "EquivariantMapSpec",
    "SoSymbol",
    "apply_fock_operator",
    "omega_pairing",
    "so_basis",
    "act_so",
    "act_so_v_only",
    "invariant_vector",
    "act_gamma",
    "build_equivariant_map",
    "projection_map",
    "injection_map",
    "immersion_map",
    "contraction_map",
    "swap_map",
    "realize_diagram",
]


@dataclass(frozen=True)
class SpaceSpec:
    """Shape of the carrier space: N = dim V, n tensor factors of V."""

    N: int
    n: int = 0

    def __post_init__(self):
        if self.N < 2:
            raise ValueError("N must be at least 2")
        if self.n < 0:
            raise ValueError("n must be nonnegative")

    @property
    def m(self) -> int:
        return self.N // 2

    @property
    def odd(self) -> bool:
        return self.N % 2 == 1

    @property
    def fock_dim(self) -> int:
        return 1 << self.m

    @property
    def total_dim(self) -> int:
        return self.N**self.n * self.fock_dim

    def with_n(self, n: int) -> SpaceSpec:
        return SpaceSpec(self.N, n)

    # V-basis content codes: 0..m-1 are w_1..w_m, m..2m-1 are w_1*..w_m*,
    # and 2m is e (odd N only).

    def content_names(self) -> list[str]:
        names = [f"w{i+1}" for i in range(self.m)]
        names += [f"w{i+1}*" for i in range(self.m)]
        if self.odd:
            names.append("e")
        return names

    def encode(self, slots: Sequence[int], mask: int) -> int:
        idx = 0
        for v in slots:
            idx = idx * self.N + v
        return idx * self.fock_dim + mask

    def decode(self, idx: int) -> tuple[tuple[int, ...], int]:
        mask = idx % self.fock_dim
        code = idx // self.fock_dim
        slots = [0] * self.n
        for i in range(self.n - 1, -1, -1):
            slots[i] = code % self.N
            code //= self.N
        return tuple(slots), mask

    def basis(self) -> Iterator[tuple[tuple[int, ...], int]]:
        for slots in itertools.product(range(self.N), repeat=self.n):
            for mask in range(self.fock_dim):
                yield slots, mask


# --- fermionic operators on the Fock model of Delta -------------------------


def _wedge(i0: int, mask: int) -> Optional[tuple[int, int]]:
    """Prepend w_{i0+1} to a sorted wedge: sign counts set bits below i0."""
    bit = 1 << i0
    if mask & bit:
        return None
    sign = -1 if bin(mask & (bit - 1)).count("1") % 2 else 1
    return sign, mask | bit


def _contract(i0: int, mask: int) -> Optional[tuple[int, int]]:
    """Remove w_{i0+1} from a sorted wedge; same sign count."""
    bit = 1 << i0
    if not mask & bit:
        return None
    sign = -1 if bin(mask & (bit - 1)).count("1") % 2 else 1
    return sign, mask & ~bit


def _parity(mask: int) -> int:
    return -1 if bin(mask).count("1") % 2 else 1


def apply_fock_operator(op: tuple, space: SpaceSpec, mask: int) -> Optional[tuple[int, int]]:
    """Apply a wedge ("X", i), contraction ("Dstar", i) or parity ("parity",).

    Indices are 1-based and bounded by m; returns (sign, new mask) or None
    when the operator annihilates the basis vector.
    """
    kind = op[0]
    if kind == "parity":
        return _parity(mask), mask
    i = op[1]
    if not 1 <= i <= space.m:
        raise ValueError(f"mode index {i} outside 1..{space.m}")
    if kind == "X":
        return _wedge(i - 1, mask)
    if kind == "Dstar":
        return _contract(i - 1, mask)
    raise ValueError(f"unknown operator {op!r}")


def omega_pairing(u: int, v: int, space: SpaceSpec) -> int:
    """The orthogonal pairing of two V-basis contents (always 0 or 1)."""
    m = space.m
    if u < m:
        return 1 if v == u + m else 0
    if u < 2 * m:
        return 1 if v == u - m else 0
    return 1 if v == u else 0


# --- integer (a + b sqrt2) helpers used on hot paths ------------------------


def _pair_times_sqrt2(a: int, b: int) -> tuple[int, int]:
    return 2 * b, a


def _r2(a: int, b: int) -> RootTwoNumber:
    return RootTwoNumber(a, b)


# --- equivariant map primitives ---------------------------------------------


@dataclass(frozen=True)
class EquivariantMapSpec:
    """A single equivariant building block.

    kind is one of "projection" (positions=(i,)), "injection" (positions=(j,)),
    "immersion" (positions=(i, j) in the codomain), "contraction"
    (positions=(i, j) in the domain) or "swap" (positions = the 1-based image
    tuple of the slot permutation). order_label records the intended place in
    a composite's total order; it does not change the single map's matrix.
    """

    kind: str
    positions: tuple[int, ...] = ()
    order_label: int = 1


def projection_map(space: SpaceSpec, i: int) -> LinearMap:
    """Collapse slot i into the spin factor: V^(x)n (x) Delta -> V^(x)(n-1) (x) Delta."""
    if not 1 <= i <= space.n:
        raise ValueError(f"projection slot {i} outside 1..{space.n}")
    cod = space.with_n(space.n - 1)
    m = space.m
    cols: dict[int, dict[int, RootTwoNumber]] = {}
    for slots, mask in space.basis():
        c = slots[i - 1]
        rest = slots[: i - 1] + slots[i:]
        if c < m:
            res = _wedge(c, mask)
            if res is None:
                continue
            sign, mk = res
            val = _r2(0, sign)
        elif c < 2 * m:
            res = _contract(c - m, mask)
            if res is None:
                continue
            sign, mk = res
            val = _r2(0, sign)
        else:
            val = _r2(_parity(mask), 0)
            mk = mask
        cols[space.encode(slots, mask)] = {cod.encode(rest, mk): val}
    return LinearMap(space.total_dim, cod.total_dim, cols)


def injection_map(space: SpaceSpec, j: int) -> LinearMap:
    """Create a new slot at position j of the codomain from the spin factor."""
    if not 1 <= j <= space.n + 1:
        raise ValueError(f"injection slot {j} outside 1..{space.n + 1}")
    cod = space.with_n(space.n + 1)
    m = space.m
    cols: dict[int, dict[int, RootTwoNumber]] = {}
    for slots, mask in space.basis():
        col: dict[int, RootTwoNumber] = {}
        for i0 in range(m):
            if mask >> i0 & 1:
                sign, mk = _contract(i0, mask)
                content = i0
            else:
                sign, mk = _wedge(i0, mask)
                content = m + i0
            out = slots[: j - 1] + (content,) + slots[j - 1:]
            col[cod.encode(out, mk)] = _r2(0, sign)
        if space.odd:
            out = slots[: j - 1] + (2 * m,) + slots[j - 1:]
            col[cod.encode(out, mask)] = _r2(_parity(mask), 0)
        cols[space.encode(slots, mask)] = col
    return LinearMap(space.total_dim, cod.total_dim, cols)


def immersion_map(space: SpaceSpec, i: int, j: int) -> LinearMap:
    """Insert the invariant element of V (x) V into codomain positions i < j."""
    if not 1 <= i < j <= space.n + 2:
        raise ValueError(f"immersion positions ({i},{j}) invalid for n={space.n}")
    cod = space.with_n(space.n + 2)
    m = space.m
    pairs = [(a, m + a) for a in range(m)] + [(m + a, a) for a in range(m)]
    if space.odd:
        pairs.append((2 * m, 2 * m))
    cols: dict[int, dict[int, RootTwoNumber]] = {}
    one = _r2(1, 0)
    for slots, mask in space.basis():
        col: dict[int, RootTwoNumber] = {}
        for ca, cb in pairs:
            out = list(slots)
            out.insert(i - 1, ca)
            out.insert(j - 1, cb)
            col[cod.encode(out, mask)] = one
        cols[space.encode(slots, mask)] = col
    return LinearMap(space.total_dim, cod.total_dim, cols)


def contraction_map(space: SpaceSpec, i: int, j: int) -> LinearMap:
    """Pair domain slots i < j with omega and remove them."""
    if not 1 <= i < j <= space.n:
        raise ValueError(f"contraction positions ({i},{j}) invalid for n={space.n}")
    cod = space.with_n(space.n - 2)
    cols: dict[int, dict[int, RootTwoNumber]] = {}
    for slots, mask in space.basis():
        w = omega_pairing(slots[i - 1], slots[j - 1], space)
        if not w:
            continue
        rest = tuple(c for k, c in enumerate(slots) if k not in (i - 1, j - 1))
        cols[space.encode(slots, mask)] = {cod.encode(rest, mask): _r2(w, 0)}
    return LinearMap(space.total_dim, cod.total_dim, cols)


def swap_map(space: SpaceSpec, images: Sequence[int]) -> LinearMap:
    """Send slot i to slot images[i-1]; the spin factor is untouched."""
    if sorted(images) != list(range(1, space.n + 1)):
        raise ValueError(f"{images} is not a permutation of 1..{space.n}")
    cols: dict[int, dict[int, RootTwoNumber]] = {}
    one = _r2(1, 0)
    for slots, mask in space.basis():
        out = [0] * space.n
        for i, c in enumerate(slots):
            out[images[i] - 1] = c
        cols[space.encode(slots, mask)] = {space.encode(out, mask): one}
    return LinearMap(space.total_dim, space.total_dim, cols)


def build_equivariant_map(mapspec: EquivariantMapSpec, space: SpaceSpec) -> LinearMap:
    kind = mapspec.kind
    if kind == "projection":
        return projection_map(space, *mapspec.positions)
    if kind == "injection":
        return injection_map(space, *mapspec.positions)
    if kind == "immersion":
        return immersion_map(space, *mapspec.positions)
    if kind == "contraction":
        return contraction_map(space, *mapspec.positions)
    if kind == "swap":
        return swap_map(space, mapspec.positions)
    raise ValueError(f"unknown map kind {kind!r}")


# --- the rotation Lie algebra action -----------------------------------------


@dataclass(frozen=True)
class SoSymbol:
    """Basis element of so(N) in the isotropic decomposition of wedge^2 V.

    kinds ("raising", i, j): w_i ^ w_j;     ("lowering", i, j): w_i* ^ w_j*;
          ("mixed", i, j):   w_i (x) w_j*;  ("raising_e", i):   w_i (x) e;
          ("lowering_e", j): w_j* (x) e.    Indices are 1-based.
    """

    kind: str
    i: int
    j: int = 0


def so_basis(space: SpaceSpec) -> list[SoSymbol]:
    m = space.m
    out: list[SoSymbol] = []
    for i in range(1, m + 1):
        for j in range(i + 1, m + 1):
            out.append(SoSymbol("raising", i, j))
            out.append(SoSymbol("lowering", i, j))
    for i in range(1, m + 1):
        for j in range(1, m + 1):
            out.append(SoSymbol("mixed", i, j))
    if space.odd:
        for i in range(1, m + 1):
            out.append(SoSymbol("raising_e", i))
            out.append(SoSymbol("lowering_e", i))
    return out


def _v_action(sym: SoSymbol, c: int, space: SpaceSpec) -> list[tuple[int, int]]:
    """Action on one V-basis content; integer coefficients."""
    m = space.m
    e = 2 * m
    kind, i, j = sym.kind, sym.i, sym.j
    if kind == "raising":
        if m <= c < e:
            l = c - m + 1
            if l == j:
                return [(1, i - 1)]
            if l == i:
                return [(-1, j - 1)]
        return []
    if kind == "lowering":
        if c < m:
            l = c + 1
            if l == j:
                return [(1, m + i - 1)]
            if l == i:
                return [(-1, m + j - 1)]
        return []
    if kind == "mixed":
        if c < m and c + 1 == j:
            return [(1, i - 1)]
        if m <= c < e and c - m + 1 == i:
            return [(-1, m + j - 1)]
        return []
    if kind == "raising_e":
        if m <= c < e and c - m + 1 == i:
            return [(-1, e)]
        if c == e:
            return [(1, i - 1)]
        return []
    if kind == "lowering_e":
        if c < m and c + 1 == i:
            return [(1, e)]
        if c == e:
            return [(-1, m + i - 1)]
        return []
    raise ValueError(f"unknown so symbol kind {kind!r}")


def _spin_action(sym: SoSymbol, mask: int, space: SpaceSpec) -> list[tuple[RootTwoNumber, int]]:
    """Action on one Fock basis vector of Delta."""
    kind, i, j = sym.kind, sym.i, sym.j
    half_sqrt2 = RootTwoNumber(0, Fraction(1, 2))
    out: list[tuple[RootTwoNumber, int]] = []
    if kind == "raising":
        r = _wedge(j - 1, mask)
        if r:
            s1, mk = r
            r2 = _wedge(i - 1, mk)
            if r2:
                s2, mk2 = r2
                out.append((_r2(s1 * s2, 0), mk2))
        return out
    if kind == "lowering":
        r = _contract(j - 1, mask)
        if r:
            s1, mk = r
            r2 = _contract(i - 1, mk)
            if r2:
                s2, mk2 = r2
                out.append((_r2(s1 * s2, 0), mk2))
        return out
    if kind == "mixed":
        r = _contract(j - 1, mask)
        if r:
            s1, mk = r
            r2 = _wedge(i - 1, mk)
            if r2:
                s2, mk2 = r2
                out.append((_r2(s1 * s2, 0), mk2))
        if i == j:
            out.append((RootTwoNumber(Fraction(-1, 2)), mask))
        return out
    if kind == "raising_e":
        s1 = _parity(mask)
        r = _wedge(i - 1, mask)
        if r:
            s2, mk = r
            out.append((half_sqrt2 * (s1 * s2), mk))
        return out
    if kind == "lowering_e":
        r = _contract(i - 1, mask)
        if r:
            s1, mk = r
            out.append((half_sqrt2 * (s1 * _parity(mk)), mk))
        return out
    raise ValueError(f"unknown so symbol kind {kind!r}")


def act_so(sym: SoSymbol, space: SpaceSpec) -> LinearMap:
    """Derivation action of an so(N) basis element on V^(x)n (x) Delta."""
    if (sym.kind in ("raising_e", "lowering_e")) and not space.odd:
        raise ValueError(f"{sym.kind} requires odd N")
    cols: dict[int, dict[int, RootTwoNumber]] = {}
    for slots, mask in space.basis():
        col: dict[int, RootTwoNumber] = {}

        def add(idx: int, val: RootTwoNumber) -> None:
            s = col.get(idx)
            s = val if s is None else s + val
            if s:
                col[idx] = s
            else:
                col.pop(idx, None)

        for k, c in enumerate(slots):
            for coeff, nc in _v_action(sym, c, space):
                out = slots[:k] + (nc,) + slots[k + 1:]
                add(space.encode(out, mask), _r2(coeff, 0))
        for coeff, mk in _spin_action(sym, mask, space):
            add(space.encode(slots, mk), coeff)
        if col:
            cols[space.encode(slots, mask)] = col
    return LinearMap(space.total_dim, space.total_dim, cols)


def act_so_v_only(sym: SoSymbol, N: int, num_slots: int) -> LinearMap:
    """Derivation action on V^(x)num_slots alone (no spin factor)."""
    space = SpaceSpec(N, num_slots)
    dim = N**num_slots
    cols: dict[int, dict[int, RootTwoNumber]] = {}
    for slots in itertools.product(range(N), repeat=num_slots):
        code = 0
        for v in slots:
            code = code * N + v
        col: dict[int, RootTwoNumber] = {}
        for k, c in enumerate(slots):
            for coeff, nc in _v_action(sym, c, space):
                out = slots[:k] + (nc,) + slots[k + 1:]
                ocode = 0
                for v in out:
                    ocode = ocode * N + v
                s = col.get(ocode)
                s = _r2(coeff, 0) if s is None else s + _r2(coeff, 0)
                if s:
                    col[ocode] = s
                else:
                    col.pop(ocode, None)
        if col:
            cols[code] = col
    return LinearMap(dim, dim, cols)


def invariant_vector(N: int) -> dict[int, RootTwoNumber]:
    """The immersed element of V (x) V as a sparse vector (index c1*N + c2)."""
    space = SpaceSpec(N, 0)
    m = space.m
    out: dict[int, RootTwoNumber] = {}
    for a in range(m):
        out[a * N + (m + a)] = _r2(1, 0)
        out[(m + a) * N + a] = _r2(1, 0)
    if space.odd:
        out[2 * m * N + 2 * m] = _r2(1, 0)
    return out


def act_gamma(space: SpaceSpec) -> LinearMap:
    """The odd reflection generating the non-identity component of Pin(N).

    On each V factor: w_1 -> -w_1*, w_1* -> -w_1, every other basis vector to
    its negative; on Delta: (wedge w_1 - contract w_1*) / sqrt2. The overall
    sign on V is a convention; this is the unique choice (given the Delta
    action) that commutes with the projection and injection maps, and it is
    frozen here and asserted by the equivariance tests.
    """
    m = space.m
    half_sqrt2 = RootTwoNumber(0, Fraction(1, 2))
    cols: dict[int, dict[int, RootTwoNumber]] = {}

    def gamma_v(c: int) -> tuple[int, int]:
        if c == 0:
            return -1, m
        if c == m:
            return -1, 0
        return -1, c

    for slots, mask in space.basis():
        sign = 1
        out = []
        for c in slots:
            s, nc = gamma_v(c)
            sign *= s
            out.append(nc)
        if mask & 1:
            res = _contract(0, mask)
            assert res is not None
            s1, mk = res
            val = half_sqrt2 * (-sign * s1)
        else:
            res = _wedge(0, mask)
            assert res is not None
            s1, mk = res
            val = half_sqrt2 * (sign * s1)
        cols[space.encode(slots, mask)] = {space.encode(out, mk): val}
    return LinearMap(space.total_dim, space.total_dim, cols)


# --- realizing diagrams -------------------------------------------------------


def realize_diagram(d: SpinDiagram, space: SpaceSpec) -> LinearMap:
    """The endomorphism of V^(x)n (x) Delta carried by a canonical diagram."""
    if d.n != space.n:
        raise DiagramError(f"diagram has n={d.n}, space has n={space.n}")
    n, m, odd = space.n, space.m, space.odd
    top_arcs = [(a - 1, b - 1) for a, b in d.top_arcs]
    top_iso = [v - 1 for v in d.top_isolated]
    bottom_iso = [v - 1 for v in d.bottom_isolated]
    bottom_arcs = [(a - 1, b - 1) for a, b in d.bottom_arcs]
    through = [(i - 1, j - 1) for i, j in d.through]
    pairs = [(a, m + a) for a in range(m)] + [(m + a, a) for a in range(m)]
    if odd:
        pairs.append((2 * m, 2 * m))

    cols: dict[int, dict[int, RootTwoNumber]] = {}
    for slots, mask in space.basis():
        ca, cb = 1, 0  # coefficient a + b sqrt2
        dead = False
        for p, q in top_arcs:
            if not omega_pairing(slots[p], slots[q], space):
                dead = True
                break
        if dead:
            continue
        mk = mask
        for p in top_iso:
            c = slots[p]
            if c < m:
                res = _wedge(c, mk)
            elif c < 2 * m:
                res = _contract(c - m, mk)
            else:
                ca, cb = _parity(mk) * ca, _parity(mk) * cb
                continue
            if res is None:
                dead = True
                break
            sign, mk = res
            ca, cb = _pair_times_sqrt2(sign * ca, sign * cb)
        if dead:
            continue

        out0: list[Optional[int]] = [None] * n
        for i, j in through:
            out0[j] = slots[i]

        terms: list[tuple[int, int, int, tuple[Optional[int], ...]]] = [
            (ca, cb, mk, tuple(out0))
        ]
        for p in bottom_iso:
            new_terms = []
            for ta, tb, tmask, tout in terms:
                for i0 in range(m):
                    if tmask >> i0 & 1:
                        sign, mk2 = _contract(i0, tmask)
                        content = i0
                    else:
                        sign, mk2 = _wedge(i0, tmask)
                        content = m + i0
                    na, nb = _pair_times_sqrt2(sign * ta, sign * tb)
                    o = list(tout)
                    o[p] = content
                    new_terms.append((na, nb, mk2, tuple(o)))
                if odd:
                    s = _parity(tmask)
                    o = list(tout)
                    o[p] = 2 * m
                    new_terms.append((s * ta, s * tb, tmask, tuple(o)))
            terms = new_terms
        for p, q in bottom_arcs:
            new_terms = []
            for ta, tb, tmask, tout in terms:
                for cx, cy in pairs:
                    o = list(tout)
                    o[p], o[q] = cx, cy
                    new_terms.append((ta, tb, tmask, tuple(o)))
            terms = new_terms

        col: dict[int, tuple[int, int]] = {}
        for ta, tb, tmask, tout in terms:
            idx = space.encode(tout, tmask)  # type: ignore[arg-type]
            cur = col.get(idx)
            if cur is None:
                col[idx] = (ta, tb)
            else:
                col[idx] = (cur[0] + ta, cur[1] + tb)
        packed = {r: _r2(a, b) for r, (a, b) in col.items() if a or b}
        if packed:
            cols[space.encode(slots, mask)] = packed
    return LinearMap(space.total_dim, space.total_dim, cols)
