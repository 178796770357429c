"""The rank-25 computation lattice and the sublattices built inside it.

The ambient lattice is ``E8 + E8 + U + U + A2 + I_{3,0}`` with the A2 block
orthogonal to the odd identity block that carries ``h^2 = (1, 1, 1)``.
Generators are indexed by *slot* 1..20: a slot fixes which basis vector the
generator is a multiple of and which unit vector of ``I_{3,0}`` it is shifted
by when its discriminant is 2 mod 6.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .errors import (
    InvalidDiscriminant,
    NonSquareMultiplier,
    ParameterConstraint,
    SlotConstraint,
    TupleTooLong,
    UnknownCase,
)
from .exact_linalg import IntMatrix, gram_transform, rank

E8_GRAM = (
    (2, -1, 0, 0, 0, 0, 0, 0),
    (-1, 2, -1, 0, 0, 0, 0, 0),
    (0, -1, 2, -1, -1, 0, 0, 0),
    (0, 0, -1, 2, 0, 0, 0, 0),
    (0, 0, -1, 0, 2, -1, 0, 0),
    (0, 0, 0, 0, -1, 2, -1, 0),
    (0, 0, 0, 0, 0, -1, 2, -1),
    (0, 0, 0, 0, 0, 0, -1, 2),
)
U_GRAM = ((0, 1), (1, 0))
A2_GRAM = ((2, 1), (1, 2))
I3_GRAM = ((1, 0, 0), (0, 1, 0), (0, 0, 1))

# 1-based root indices joined by an edge of the E8 diagram above
E8_EDGES = frozenset({(1, 2), (2, 3), (3, 4), (3, 5), (5, 6), (6, 7), (7, 8)})

BASIS_NAMES: tuple[str, ...] = (
    tuple(f"t1.{k}" for k in range(1, 9))
    + tuple(f"t2.{k}" for k in range(1, 9))
    + ("e1.1", "e1.2", "e2.1", "e2.2", "a1", "a2", "f1", "f2", "f3")
)
RANK = len(BASIS_NAMES)
NAME_INDEX = {name: i for i, name in enumerate(BASIS_NAMES)}


def T(i: int, k: int) -> str:
    return f"t{i}.{k}"


def E(i: int, k: int) -> str:
    return f"e{i}.{k}"


def A(j: int) -> str:
    return f"a{j}"


def F(j: int) -> str:
    return f"f{j}"


@dataclass(frozen=True)
class AmbientModel:
    gram: IntMatrix
    h2: tuple[int, ...]
    names: tuple[str, ...] = BASIS_NAMES

    @property
    def rank(self) -> int:
        return self.gram.nrows

    def index(self, name: str) -> int:
        return NAME_INDEX[name]

    def vector(self, coeffs: dict[str, int]) -> tuple[int, ...]:
        v = [0] * RANK
        for name, c in coeffs.items():
            v[NAME_INDEX[name]] += c
        return tuple(v)

    def pair(self, u: Sequence[int], v: Sequence[int]) -> int:
        g = self.gram
        return sum(u[i] * g[i, j] * v[j] for i in range(RANK) if u[i] for j in range(RANK) if v[j])

    def pair_names(self, a: str, b: str) -> int:
        return self.gram[NAME_INDEX[a], NAME_INDEX[b]]

    def blocks(self) -> list[tuple[str, int]]:
        return [("E8", 8), ("E8", 8), ("U", 2), ("U", 2), ("A2", 2), ("I3,0", 3)]


@lru_cache(maxsize=None)
def build_ambient() -> AmbientModel:
    blocks = [E8_GRAM, E8_GRAM, U_GRAM, U_GRAM, A2_GRAM, I3_GRAM]
    g = [[0] * RANK for _ in range(RANK)]
    off = 0
    for blk in blocks:
        for i, row in enumerate(blk):
            for j, v in enumerate(row):
                g[off + i][off + j] = v
        off += len(blk)
    h2 = [0] * RANK
    for name in ("f1", "f2", "f3"):
        h2[NAME_INDEX[name]] = 1
    return AmbientModel(IntMatrix(g, ncols=RANK), tuple(h2))


# Slot k -> the basis vector its generator is a multiple of (slots 3..20);
# order follows the 20-generator construction.
SLOT_ROOTS: dict[int, str] = {
    3: A(1), 4: A(2),
    5: T(1, 1), 6: T(1, 3), 7: T(1, 6),
    8: T(2, 1), 9: T(2, 3), 10: T(2, 6),
    11: T(1, 2), 12: T(2, 2),
    13: T(1, 4), 14: T(2, 4),
    15: T(1, 7), 16: T(2, 7),
    17: T(1, 8), 18: T(2, 8),
    19: T(1, 5), 20: T(2, 5),
}

# I_{3,0} unit vector added to slot k when d_k = 2 mod 6.
SLOT_SHIFTS: dict[int, str] = dict(zip(
    range(1, 21),
    ["f2", "f1", "f1", "f2", "f3", "f3", "f1", "f2", "f3", "f3",
     "f3", "f3", "f3", "f1", "f2", "f2", "f2", "f2", "f2", "f2"],
))

MAX_SLOTS = 20


def exact_sqrt(n: int) -> int | None:
    if n < 0:
        return None
    r = math.isqrt(n)
    return r if r * r == n else None


@dataclass(frozen=True)
class GeneratorSpec:
    slot: int
    d: int

    @property
    def shifted(self) -> bool:
        return self.d % 6 == 2

    @property
    def n(self) -> int:
        return (self.d - 2) // 6 if self.shifted else self.d // 6

    @property
    def m(self) -> int | None:
        return exact_sqrt(self.n)

    def validate(self) -> None:
        if not 1 <= self.slot <= MAX_SLOTS:
            raise SlotConstraint(f"slot {self.slot} outside 1..{MAX_SLOTS}")
        if self.d < 8 or self.d % 6 not in (0, 2):
            raise InvalidDiscriminant(f"d={self.d} fails (*): need d >= 8 and d = 0,2 mod 6")
        if self.slot <= 2:
            need = 1 if self.shifted else 2
            if self.n < need:
                raise SlotConstraint(f"slot {self.slot} needs n >= {need}, got n={self.n}")
        else:
            if self.m is None:
                raise NonSquareMultiplier(
                    f"slot {self.slot}: n={self.n} (from d={self.d}) is not a perfect square"
                )
            if self.m < 2:
                raise SlotConstraint(f"slot {self.slot} needs sqrt(n) >= 2, got {self.m}")


def _generator(slot: int, n: int, shift: str | None, extra: dict[str, int] | None = None) -> dict[str, int]:
    if slot == 1:
        coeffs = {E(1, 1): 1, E(1, 2): n}
    elif slot == 2:
        coeffs = {E(2, 1): 1, E(2, 2): n}
    else:
        m = exact_sqrt(n)
        if m is None:
            raise NonSquareMultiplier(f"slot {slot}: n={n} is not a perfect square")
        coeffs = {SLOT_ROOTS[slot]: m}
    if shift:
        coeffs[shift] = coeffs.get(shift, 0) + 1
    for k, v in (extra or {}).items():
        coeffs[k] = coeffs.get(k, 0) + v
    return coeffs


def slot_generator(spec: GeneratorSpec) -> tuple[int, ...]:
    """Coordinate vector of the generator occupying ``spec.slot``."""
    spec.validate()
    shift = SLOT_SHIFTS[spec.slot] if spec.shifted else None
    return build_ambient().vector(_generator(spec.slot, spec.n, shift))


@dataclass(frozen=True)
class SublatticeSpec:
    """Row 0 of ``basis`` is h^2; row k is the generator labelling ``discriminants[k-1]``."""

    basis: IntMatrix
    discriminants: tuple[int, ...]
    mode: str = "auto"
    params: tuple[int, ...] | None = None

    @property
    def gram(self) -> IntMatrix:
        return gram_transform(self.basis, build_ambient().gram)

    @property
    def n(self) -> int:
        return len(self.discriminants)


def assemble_sublattice(discriminants: Sequence[int], mode: str = "auto") -> SublatticeSpec:
    if mode != "auto":
        raise UnknownCase(f"assemble_sublattice only supports mode 'auto', got {mode!r}")
    ds = tuple(int(d) for d in discriminants)
    if len(ds) > MAX_SLOTS:
        raise TupleTooLong(f"{len(ds)} discriminants; at most {MAX_SLOTS} slots exist")
    if not ds:
        raise SlotConstraint("need at least one discriminant")
    amb = build_ambient()
    rows = [amb.h2] + [slot_generator(GeneratorSpec(k, d)) for k, d in enumerate(ds, start=1)]
    basis = IntMatrix(rows, ncols=RANK)
    assert rank(basis) == len(rows)
    return SublatticeSpec(basis, ds, "auto")


# --- hand-built cases ---------------------------------------------------------
#
# Each entry: (per-slot shift or None, per-slot parameter constraint).
# Constraint kinds: "n>=2", "n>=1", "sq" (perfect square >= 4).

_CASES: dict[str, tuple[tuple[str | None, ...], tuple[str, ...]]] = {
    "L3-C1": ((None, None, None), ("n>=2", "n>=2", "sq")),
    "L3-C2": ((None, None, "f3"), ("n>=2", "n>=2", "sq")),
    "L3-C3": ((None, "f2", "f3"), ("n>=2", "n>=1", "sq")),
    "L3-C4": (("f1", "f2", "f3"), ("n>=1", "n>=1", "sq")),
    "T4-C1": ((None, None, None, None), ("n>=2", "n>=2", "sq", "sq")),
    "T4-C2": ((None, None, None, "f3"), ("n>=2", "n>=2", "sq", "sq")),
    "T4-C3": ((None, None, "f2", "f3"), ("n>=2", "n>=2", "sq", "sq")),
    "T4-C4": ((None, "f1", "f2", "f3"), ("n>=2", "n>=1", "sq", "sq")),
    "T4-C5": (("f1", "f1", "f2", "f3"), ("n>=1", "n>=1", "sq", "sq")),
    "P20": ((None,) * 20, ("n>=2", "n>=2") + ("sq",) * 18),
    "T20": (tuple(SLOT_SHIFTS[k] for k in range(1, 21)), ("n>=1", "n>=1") + ("sq",) * 18),
}

CASE_IDS: tuple[str, ...] = tuple(_CASES)

# In T4-C5 the first two generators share the f1 shift but must be orthogonal;
# an isotropic -e1.2 term cancels the unit pairing without touching any norm
# or any other inner product.
_CASE_EXTRAS: dict[str, dict[int, dict[str, int]]] = {
    "T4-C5": {2: {E(1, 2): -1}},
}


def case_smallest_params(case_id: str) -> tuple[int, ...]:
    """Smallest admissible parameters of a case (every square slot gets 4)."""
    if case_id not in _CASES:
        raise UnknownCase(case_id)
    _, kinds = _CASES[case_id]
    return tuple(4 if kind == "sq" else int(kind[-1]) for kind in kinds)


def case_param_count(case_id: str) -> int:
    if case_id not in _CASES:
        raise UnknownCase(case_id)
    return len(_CASES[case_id][1])


def appendix_case(case_id: str, params: Sequence[int]) -> SublatticeSpec:
    if case_id not in _CASES:
        raise UnknownCase(f"unknown case {case_id!r}; known: {', '.join(CASE_IDS)}")
    shifts, kinds = _CASES[case_id]
    params = tuple(int(p) for p in params)
    if len(params) != len(kinds):
        raise ParameterConstraint(f"{case_id} takes {len(kinds)} parameters, got {len(params)}")
    for k, (p, kind) in enumerate(zip(params, kinds), start=1):
        if kind == "sq":
            m = exact_sqrt(p)
            if m is None or m < 2:
                raise ParameterConstraint(f"{case_id}: n_{k}={p} must be a perfect square >= 4")
        elif p < int(kind[-1]):
            raise ParameterConstraint(f"{case_id}: n_{k}={p} must satisfy {kind}")
    amb = build_ambient()
    extras = _CASE_EXTRAS.get(case_id, {})
    rows = [amb.h2]
    for slot, (n, shift) in enumerate(zip(params, shifts), start=1):
        rows.append(amb.vector(_generator(slot, n, shift, extras.get(slot))))
    ds = tuple(6 * n + (2 if s else 0) for n, s in zip(params, shifts))
    basis = IntMatrix(rows, ncols=RANK)
    return SublatticeSpec(basis, ds, f"case:{case_id}", params)
