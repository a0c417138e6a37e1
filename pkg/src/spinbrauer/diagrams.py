"""Spin-Brauer diagram data model.

A diagram on two rows of n vertices is a five-part datum: ordered isolated
vertices in each row, arcs (partial matchings) within each row, and a
bijection between the leftover vertices (through strings). Canonical form
keeps both isolated lists ascending; their implicit labels run 1..k along
the top row and 1..l along the bottom, with every top label ordered before
every bottom label.

This module owns validation, JSON (de)serialization, basis enumeration, the
row-swap involution, the cell-triple encoding, and formal Z[delta]-linear
combinations of diagrams.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence, Union

from .scalars import DeltaPolynomial

__all__ = [
    "DiagramError",
    "SpinDiagram",
    "LabeledDiagram",
    "AlgebraElement",
    "CellTriple",
    "identity_diagram",
    "parse_diagram",
    "emit_diagram",
    "diagram_key",
    "enumerate_basis",
    "involution",
    "cell_encode",
    "cell_decode",
    "pretty",
    "DEFAULT_ENUMERATION_BOUND",
]

DEFAULT_ENUMERATION_BOUND = 5

Arc = tuple[int, int]


class DiagramError(ValueError):
    """Structured validation failure; the message names the broken invariant."""


def _normalize_arcs(arcs: Iterable[Sequence[int]]) -> tuple[Arc, ...]:
    out = []
    for pair in arcs:
        a, b = int(pair[0]), int(pair[1])
        if a == b:
            raise DiagramError(f"arc ({a},{b}) joins a vertex to itself")
        out.append((min(a, b), max(a, b)))
    return tuple(sorted(out))


def _check_row(n: int, isolated: Sequence[int], arcs: Sequence[Arc],
               through_ends: Sequence[int], row: str) -> None:
    seen: set[int] = set()
    for v in list(isolated) + [v for arc in arcs for v in arc] + list(through_ends):
        if not 1 <= v <= n:
            raise DiagramError(f"{row} vertex {v} outside 1..{n}")
        if v in seen:
            raise DiagramError(f"{row} vertex {v} used twice")
        seen.add(v)
    if len(seen) != n:
        missing = sorted(set(range(1, n + 1)) - seen)
        raise DiagramError(f"{row} vertices {missing} not covered")
    if list(isolated) != sorted(isolated):
        raise DiagramError(f"{row} isolated list not ascending")


@dataclass(frozen=True)
class SpinDiagram:
    """Canonical diagram: the basis element of the algebra."""

    n: int
    top_isolated: tuple[int, ...]
    bottom_isolated: tuple[int, ...]
    top_arcs: tuple[Arc, ...]
    bottom_arcs: tuple[Arc, ...]
    through: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "top_isolated", tuple(self.top_isolated))
        object.__setattr__(self, "bottom_isolated", tuple(self.bottom_isolated))
        object.__setattr__(self, "top_arcs", _normalize_arcs(self.top_arcs))
        object.__setattr__(self, "bottom_arcs", _normalize_arcs(self.bottom_arcs))
        object.__setattr__(
            self, "through", tuple(sorted((int(i), int(j)) for i, j in self.through))
        )
        if self.n < 0:
            raise DiagramError("n must be nonnegative")
        tops = [i for i, _ in self.through]
        bots = [j for _, j in self.through]
        if len(set(bots)) != len(bots):
            raise DiagramError("through strings are not a bijection")
        _check_row(self.n, self.top_isolated, self.top_arcs, tops, "top")
        _check_row(self.n, self.bottom_isolated, self.bottom_arcs, bots, "bottom")

    @property
    def through_count(self) -> int:
        return len(self.through)

    def through_map(self) -> dict[int, int]:
        return dict(self.through)


def identity_diagram(n: int) -> SpinDiagram:
    return SpinDiagram(n, (), (), (), (), tuple((i, i) for i in range(1, n + 1)))


def emit_diagram(d: SpinDiagram) -> dict:
    return {
        "n": d.n,
        "top": {"isolated": list(d.top_isolated), "arcs": [list(a) for a in d.top_arcs]},
        "bottom": {
            "isolated": list(d.bottom_isolated),
            "arcs": [list(a) for a in d.bottom_arcs],
        },
        "through": [list(p) for p in d.through],
    }


def diagram_key(d: SpinDiagram) -> str:
    """Canonical serialization; used to order terms deterministically."""
    return json.dumps(emit_diagram(d), sort_keys=True, separators=(",", ":"))


def parse_diagram(source: Union[str, Mapping]) -> SpinDiagram:
    """Parse and validate the JSON form of a diagram.

    Strict: isolated lists must already be ascending, arcs must be stored
    smaller-vertex-first in sorted order, and through pairs sorted by first
    coordinate, so that emit is the exact inverse of parse.
    """
    obj = json.loads(source) if isinstance(source, str) else source
    try:
        n = int(obj["n"])
        top = obj["top"]
        bottom = obj["bottom"]
        through = [(int(i), int(j)) for i, j in obj["through"]]
        rows = {
            "top": ([int(v) for v in top["isolated"]],
                    [(int(a), int(b)) for a, b in top["arcs"]]),
            "bottom": ([int(v) for v in bottom["isolated"]],
                       [(int(a), int(b)) for a, b in bottom["arcs"]]),
        }
    except (KeyError, TypeError, ValueError) as exc:
        raise DiagramError(f"malformed diagram JSON: {exc}") from exc
    for row, (_iso, arcs) in rows.items():
        for a, b in arcs:
            if a >= b:
                raise DiagramError(f"{row} arc ({a},{b}) not stored smaller vertex first")
        if arcs != sorted(arcs):
            raise DiagramError(f"{row} arcs not sorted")
    if through != sorted(through):
        raise DiagramError("through pairs not sorted by first coordinate")
    return SpinDiagram(
        n,
        tuple(rows["top"][0]),
        tuple(rows["bottom"][0]),
        tuple(rows["top"][1]),
        tuple(rows["bottom"][1]),
        tuple(through),
    )


@dataclass(frozen=True)
class LabeledDiagram:
    """Multiplication intermediate: isolated vertices carry explicit labels.

    Labels form {1..t} in an arbitrary order across the two rows plus any
    circuit pairs. A circuit pair is the remnant of a closed component of a
    stacked product whose two labeled ends were not adjacent in the total
    order; it carries no vertices of its own and disappears (with a scalar
    delta) once transpositions have made its labels adjacent. A diagram is
    canonical exactly when it has no circuit pairs and reading the labels top
    row left-to-right then bottom row left-to-right yields 1, 2, ..., t.
    """

    n: int
    top_isolated: tuple[int, ...]
    bottom_isolated: tuple[int, ...]
    top_arcs: tuple[Arc, ...]
    bottom_arcs: tuple[Arc, ...]
    through: tuple[tuple[int, int], ...]
    top_labels: tuple[int, ...]
    bottom_labels: tuple[int, ...]
    circuit_pairs: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if len(self.top_labels) != len(self.top_isolated):
            raise DiagramError("top label list length mismatch")
        if len(self.bottom_labels) != len(self.bottom_isolated):
            raise DiagramError("bottom label list length mismatch")
        labels = sorted(
            self.top_labels
            + self.bottom_labels
            + tuple(l for pair in self.circuit_pairs for l in pair)
        )
        if labels != list(range(1, len(labels) + 1)):
            raise DiagramError("labels are not exactly 1..t")

    @property
    def label_sequence(self) -> tuple[int, ...]:
        """Row labels read in position order: top left-to-right, then bottom."""
        return self.top_labels + self.bottom_labels

    def is_canonical(self) -> bool:
        seq = self.label_sequence
        return not self.circuit_pairs and seq == tuple(range(1, len(seq) + 1))

    @classmethod
    def from_spin(cls, d: SpinDiagram) -> LabeledDiagram:
        k = len(d.top_isolated)
        return cls(
            d.n,
            d.top_isolated,
            d.bottom_isolated,
            d.top_arcs,
            d.bottom_arcs,
            d.through,
            tuple(range(1, k + 1)),
            tuple(range(k + 1, k + 1 + len(d.bottom_isolated))),
        )

    def to_spin(self) -> SpinDiagram:
        if not self.is_canonical():
            raise DiagramError("labeled diagram is not in canonical order")
        return SpinDiagram(
            self.n,
            self.top_isolated,
            self.bottom_isolated,
            self.top_arcs,
            self.bottom_arcs,
            self.through,
        )


class AlgebraElement:
    """A finite formal sum of diagrams with coefficients in Z[delta]."""

    __slots__ = ("n", "_terms")

    def __init__(self, n: int, terms: Mapping[SpinDiagram, DeltaPolynomial] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        table: dict[SpinDiagram, DeltaPolynomial] = {}
        for d, c in items:
            if d.n != n:
                raise DiagramError(f"term has n={d.n}, element has n={n}")
            s = table.get(d, DeltaPolynomial.zero()) + c
            if s:
                table[d] = s
            else:
                table.pop(d, None)
        self.n = n
        self._terms = table

    @classmethod
    def from_diagram(cls, d: SpinDiagram,
                     coeff: Union[DeltaPolynomial, int] = 1) -> AlgebraElement:
        if isinstance(coeff, int):
            coeff = DeltaPolynomial.constant(coeff)
        return cls(d.n, {d: coeff})

    @classmethod
    def zero(cls, n: int) -> AlgebraElement:
        return cls(n, {})

    @property
    def terms(self) -> dict[SpinDiagram, DeltaPolynomial]:
        return dict(self._terms)

    def coefficient(self, d: SpinDiagram) -> DeltaPolynomial:
        return self._terms.get(d, DeltaPolynomial.zero())

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[tuple[SpinDiagram, DeltaPolynomial]]:
        return iter(sorted(self._terms.items(), key=lambda t: diagram_key(t[0])))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.n == other.n and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.n, frozenset(self._terms.items())))

    def __add__(self, other: AlgebraElement) -> AlgebraElement:
        if self.n != other.n:
            raise DiagramError("cannot add elements with different n")
        table = dict(self._terms)
        for d, c in other._terms.items():
            s = table.get(d, DeltaPolynomial.zero()) + c
            if s:
                table[d] = s
            else:
                table.pop(d, None)
        out = AlgebraElement.zero(self.n)
        out._terms = table
        return out

    def __neg__(self) -> AlgebraElement:
        return self.scale(DeltaPolynomial.constant(-1))

    def __sub__(self, other: AlgebraElement) -> AlgebraElement:
        return self + (-other)

    def scale(self, c: Union[DeltaPolynomial, int]) -> AlgebraElement:
        if isinstance(c, int):
            c = DeltaPolynomial.constant(c)
        return AlgebraElement(self.n, {d: p * c for d, p in self._terms.items()})

    def __mul__(self, other: AlgebraElement) -> AlgebraElement:
        from .multiply import multiply_elements

        return multiply_elements(self, other)

    def evaluate_at(self, N: int) -> AlgebraElement:
        """Substitute delta := N in every coefficient; drops vanished terms."""
        out: dict[SpinDiagram, DeltaPolynomial] = {}
        for d, c in self._terms.items():
            v = c.eval_at(N)
            if v:
                out[d] = DeltaPolynomial.constant(v)
        return AlgebraElement(self.n, out)

    def max_through(self) -> int:
        """Largest through-string count among the terms; -1 for zero."""
        return max((d.through_count for d in self._terms), default=-1)

    def to_json(self) -> dict:
        items = sorted(self._terms.items(), key=lambda t: diagram_key(t[0]))
        return {
            "terms": [
                {"coeff": c.to_pairs(), "diagram": emit_diagram(d)} for d, c in items
            ]
        }

    @classmethod
    def from_json(cls, obj: Union[str, Mapping], n: Union[int, None] = None) -> AlgebraElement:
        data = json.loads(obj) if isinstance(obj, str) else obj
        terms = []
        for t in data["terms"]:
            d = parse_diagram(t["diagram"])
            terms.append((d, DeltaPolynomial.from_pairs(t["coeff"])))
        if n is None:
            if not terms:
                raise DiagramError("cannot infer n of an empty element")
            n = terms[0][0].n
        return cls(n, terms)

    def __repr__(self) -> str:
        return f"AlgebraElement(n={self.n}, terms={len(self._terms)})"


def involution(d: SpinDiagram) -> SpinDiagram:
    """The row-swapping anti-automorphism: exchange rows and invert the bijection."""
    return SpinDiagram(
        d.n,
        d.bottom_isolated,
        d.top_isolated,
        d.bottom_arcs,
        d.top_arcs,
        tuple(sorted((j, i) for i, j in d.through)),
    )


def involution_element(a: AlgebraElement) -> AlgebraElement:
    return AlgebraElement(a.n, {involution(d): c for d, c in a.terms.items()})


# --- cell-triple encoding -------------------------------------------------

Block = tuple[int, ...]
Partition = tuple[Block, ...]


@dataclass(frozen=True)
class CellTriple:
    """Encoding of a diagram as (x, S) x (y, T) x sigma.

    x and y are the row partitions into singletons and arc pairs; S and T list
    the through-string singletons in ascending vertex order; sigma is the
    induced permutation (0-based images: S_i connects to T_{sigma[i]}).
    """

    x: Partition
    S: tuple[Block, ...]
    y: Partition
    T: tuple[Block, ...]
    sigma: tuple[int, ...]

    def __post_init__(self):
        ell = len(self.S)
        if len(self.T) != ell or sorted(self.sigma) != list(range(ell)):
            raise DiagramError("cell triple has inconsistent sizes")
        for blocks, part, name in ((self.S, self.x, "S"), (self.T, self.y, "T")):
            for b in blocks:
                if len(b) != 1 or b not in part:
                    raise DiagramError(f"{name} must list singleton blocks of the partition")
            if list(blocks) != sorted(blocks):
                raise DiagramError(f"{name} not sorted by vertex")


def _row_partition(n: int, isolated: Sequence[int], arcs: Sequence[Arc],
                   through_row: Sequence[int]) -> tuple[Partition, tuple[Block, ...]]:
    blocks = [(v,) for v in isolated] + [tuple(a) for a in arcs]
    origins = tuple((v,) for v in sorted(through_row))
    blocks.extend(origins)
    return tuple(sorted(blocks)), origins


def cell_encode(d: SpinDiagram) -> tuple[int, CellTriple]:
    """Encode a diagram as its through count and cell triple."""
    tops = [i for i, _ in d.through]
    bots = [j for _, j in d.through]
    x, S = _row_partition(d.n, d.top_isolated, d.top_arcs, tops)
    y, T = _row_partition(d.n, d.bottom_isolated, d.bottom_arcs, bots)
    fmap = d.through_map()
    t_index = {b[0]: i for i, b in enumerate(T)}
    sigma = tuple(t_index[fmap[b[0]]] for b in S)
    return len(d.through), CellTriple(x, S, y, T, sigma)


def cell_decode(ell: int, t: CellTriple) -> SpinDiagram:
    """Inverse of cell_encode."""
    if len(t.S) != ell:
        raise DiagramError(f"triple has {len(t.S)} through origins, expected {ell}")
    n = sum(len(b) for b in t.x)
    if n != sum(len(b) for b in t.y):
        raise DiagramError("x and y partition different ground sets")
    s_set, t_set = set(t.S), set(t.T)
    top_iso = tuple(b[0] for b in t.x if len(b) == 1 and b not in s_set)
    bot_iso = tuple(b[0] for b in t.y if len(b) == 1 and b not in t_set)
    top_arcs = tuple(b for b in t.x if len(b) == 2)
    bot_arcs = tuple(b for b in t.y if len(b) == 2)
    through = tuple((t.S[i][0], t.T[t.sigma[i]][0]) for i in range(ell))
    return SpinDiagram(n, top_iso, bot_iso, top_arcs, bot_arcs, through)


# --- basis enumeration ------------------------------------------------------


def _matchings(verts: tuple[int, ...]) -> Iterator[tuple[Arc, ...]]:
    """All perfect matchings on an even-sized ordered vertex tuple."""
    if not verts:
        yield ()
        return
    if len(verts) % 2:
        return
    v, rest = verts[0], verts[1:]
    for i, w in enumerate(rest):
        remaining = rest[:i] + rest[i + 1:]
        for tail in _matchings(remaining):
            yield ((v, w),) + tail


def _row_configurations(n: int) -> Iterator[tuple[tuple[int, ...], tuple[Arc, ...], tuple[int, ...]]]:
    """All (isolated, arcs, through-endpoints) splittings of one row."""
    verts = list(range(1, n + 1))
    for iso_mask in range(1 << n):
        iso = tuple(v for i, v in enumerate(verts) if iso_mask >> i & 1)
        rest = tuple(v for i, v in enumerate(verts) if not iso_mask >> i & 1)
        for arc_verts, through in _subsets_even(rest):
            for arcs in _matchings(arc_verts):
                yield iso, arcs, through


def _subsets_even(verts: tuple[int, ...]) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    m = len(verts)
    for mask in range(1 << m):
        chosen = tuple(v for i, v in enumerate(verts) if mask >> i & 1)
        if len(chosen) % 2 == 0:
            rest = tuple(v for i, v in enumerate(verts) if not mask >> i & 1)
            yield chosen, rest


def enumerate_basis(n: int, bound: int = DEFAULT_ENUMERATION_BOUND) -> list[SpinDiagram]:
    """Every diagram on n+n vertices exactly once, in a deterministic order.

    Order: through count descending, then lexicographically by the cell
    encoding (x, S, y, T, sigma).
    """
    if n > bound:
        raise DiagramError(f"n={n} exceeds enumeration bound {bound}")
    out: list[SpinDiagram] = []
    top_rows = list(_row_configurations(n))
    for t_iso, t_arcs, t_thru in top_rows:
        for b_iso, b_arcs, b_thru in top_rows:
            if len(t_thru) != len(b_thru):
                continue
            for images in itertools.permutations(b_thru):
                through = tuple(zip(t_thru, images))
                out.append(
                    SpinDiagram(n, t_iso, b_iso, t_arcs, b_arcs, through)
                )
    def sort_key(d: SpinDiagram):
        ell, t = cell_encode(d)
        return (-ell, t.x, t.S, t.y, t.T, t.sigma)

    out.sort(key=sort_key)
    seen = set()
    for d in out:
        if d in seen:
            raise AssertionError("duplicate diagram in enumeration")
        seen.add(d)
    return out


# --- pretty printing --------------------------------------------------------

_SUPERSCRIPTS = "⁰¹²³⁴⁵⁶⁷⁸⁹"
_SUBSCRIPTS = "₀₁₂₃₄₅₆₇₈₉"


def _marker(label: int, chars: str) -> str:
    return "⊙" + "".join(chars[int(c)] for c in str(label))


def pretty(d: SpinDiagram) -> str:
    """Two-row text rendering with labeled isolated-vertex markers."""
    top = {}
    for pos, v in enumerate(d.top_isolated, start=1):
        top[v] = _marker(pos, _SUPERSCRIPTS)
    bottom = {}
    for pos, v in enumerate(d.bottom_isolated, start=1):
        bottom[v] = _marker(pos, _SUBSCRIPTS)
    top_row = "  ".join(top.get(v, "●").ljust(2) for v in range(1, d.n + 1))
    bot_row = "  ".join(bottom.get(v, "●").ljust(2) for v in range(1, d.n + 1))
    lines = [top_row.rstrip(), bot_row.rstrip()]
    if d.top_arcs:
        lines.append("top arcs: " + " ".join(f"({a},{b})" for a, b in d.top_arcs))
    if d.bottom_arcs:
        lines.append("bottom arcs: " + " ".join(f"({a},{b})" for a, b in d.bottom_arcs))
    if d.through:
        lines.append("through: " + " ".join(f"{i}->{j}'" for i, j in d.through))
    return "\n".join(lines)
