"""Certificates for sublattices M = <h^2, g_1, ..., g_n> of the ambient lattice.

A certificate stores the generators as named ambient coordinates together with
every derived quantity (Gram matrix, definiteness, minimum, labellings,
predicate reports). ``verify`` recomputes all of it from the coordinates.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

import jsonschema

from .cubic_lattice_model import (
    BASIS_NAMES,
    MAX_SLOTS,
    NAME_INDEX,
    RANK,
    GeneratorSpec,
    SublatticeSpec,
    appendix_case,
    assemble_sublattice,
    build_ambient,
)
from .errors import (
    Infeasible,
    InvalidInclude,
    LatticeError,
    RankExceeded,
    SchemaError,
    TupleInfeasible,
)
from .exact_linalg import (
    IntMatrix,
    gram_transform,
    is_positive_definite,
    rank,
    short_vectors,
    snf,
    solve_in_basis,
)
from .predicates import (
    DEFAULT_BOUND,
    check_assoc_k3,
    check_double_star,
    check_star,
    enumerate_double_star,
    predicate_report,
)

SCHEMA_VERSION = "1"
MAX_RANK = 21
DEFAULT_MAX_D = 10_000
EXTENDED_NORM = 6

DELEGATED_HYPOTHESES = (
    "M embeds primitively in the rank-23 middle cohomology lattice of a cubic fourfold, preserving h^2",
    "a positive definite M containing h^2 with no vectors of norm 2 defines a nonempty locus C_M "
    "contained in each C_d labelled by a saturated rank-2 sublattice <h^2, g_i>",
)


@dataclass(frozen=True)
class K3Report:
    rank_AX_lower_bound: int
    some_d_has_assoc_k3: bool
    ns_rank_lower_bound: int | None
    witnesses: tuple[int, ...]

    def to_json(self) -> dict[str, Any]:
        return {
            "rank_AX_lower_bound": str(self.rank_AX_lower_bound),
            "some_d_has_assoc_k3": self.some_d_has_assoc_k3,
            "ns_rank_lower_bound": None if self.ns_rank_lower_bound is None else str(self.ns_rank_lower_bound),
            "witnesses": [str(i) for i in self.witnesses],
        }


def k3_report(discriminants: Sequence[int], rank_: int) -> K3Report:
    """NS-rank consequences; witness indices are 1-based slots."""
    if rank_ != len(discriminants) + 1:
        raise ValueError(f"rank {rank_} does not match {len(discriminants)} discriminants")
    witnesses = tuple(i for i, d in enumerate(discriminants, start=1) if check_assoc_k3(d))
    some = bool(witnesses)
    return K3Report(rank_, some, min(rank_ - 1, 20) if some else None, witnesses)


@dataclass(frozen=True)
class Labelling:
    index: int
    gram_2x2: tuple[tuple[int, int], tuple[int, int]]
    discriminant: int
    matches_d: bool
    saturated_in_M: bool

    def to_json(self) -> dict[str, Any]:
        return {
            "index": str(self.index),
            "gram_2x2": [[str(x) for x in row] for row in self.gram_2x2],
            "discriminant": str(self.discriminant),
            "matches_d": self.matches_d,
            "saturated_in_M": self.saturated_in_M,
        }


@dataclass(frozen=True)
class Certificate:
    discriminants: tuple[int, ...]
    mode: str
    params: tuple[int, ...] | None
    basis: IntMatrix
    gram: IntMatrix
    checks: dict[str, Any]
    labellings: tuple[Labelling, ...]
    k3: K3Report
    predicate_reports: tuple[dict[str, Any], ...]
    extended_checks: dict[str, Any] | None
    failed: tuple[str, ...] = field(default=())

    @property
    def passed(self) -> bool:
        return not self.failed

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"

    def to_json(self) -> dict[str, Any]:
        return {
            "schema_version": SCHEMA_VERSION,
            "tuple": [str(d) for d in self.discriminants],
            "mode": self.mode,
            "params": None if self.params is None else [str(p) for p in self.params],
            "basis": [_named_coeffs(row) for row in self.basis],
            "gram": [[str(x) for x in row] for row in self.gram],
            "checks": _checks_to_json(self.checks),
            "labellings": [lab.to_json() for lab in self.labellings],
            "k3_report": self.k3.to_json(),
            "predicate_reports": list(self.predicate_reports),
            "extended_checks": self.extended_checks,
            "delegated_hypotheses": list(DELEGATED_HYPOTHESES),
            "verdict": {"result": self.verdict, "failed_checks": list(self.failed)},
        }

    def dumps(self) -> str:
        return dumps(self.to_json())


def dumps(payload: dict[str, Any]) -> str:
    """Canonical serialisation: stable key order, trailing newline."""
    return json.dumps(payload, indent=2, ensure_ascii=True) + "\n"


def _named_coeffs(row: Sequence[int]) -> list[dict[str, str]]:
    return [{"name": BASIS_NAMES[j], "coeff": str(c)} for j, c in enumerate(row) if c]


def _checks_to_json(checks: dict[str, Any]) -> dict[str, Any]:
    out = {}
    for k, v in checks.items():
        out[k] = v if isinstance(v, bool) or v is None else str(v)
    return out


def _labelling(gram: IntMatrix, basis: IntMatrix, i: int, d: int) -> Labelling:
    g2 = ((gram[0, 0], gram[0, i]), (gram[i, 0], gram[i, i]))
    disc = g2[0][0] * g2[1][1] - g2[0][1] * g2[1][0]
    # coordinates of h^2 and g_i in M's own basis; saturation means the 2-row
    # coordinate matrix has Smith divisors (1, 1)
    coords = [solve_in_basis(basis, basis.row(0)), solve_in_basis(basis, basis.row(i))]
    saturated = False
    if all(c is not None and all(x.denominator == 1 for x in c) for c in coords):
        cm = IntMatrix([[int(x) for x in c] for c in coords])
        saturated = snf(cm).divisors == (1, 1)
    return Labelling(i, g2, disc, disc == d, saturated)


def _extended(gram: IntMatrix) -> dict[str, Any]:
    vecs = short_vectors(gram, EXTENDED_NORM)
    n = gram.nrows
    orth = sum(
        1 for v, q in vecs
        if q == EXTENDED_NORM and sum(v[j] * gram[0, j] for j in range(n)) == 0
    )
    return {
        "norm": str(EXTENDED_NORM),
        "norm6_pairs_orthogonal_to_h2": str(orth),
        "gating": False,
    }


def evaluate(
    spec: SublatticeSpec,
    *,
    bound: int = DEFAULT_BOUND,
    extended: bool = True,
) -> Certificate:
    """Run every check on an assembled sublattice."""
    amb = build_ambient()
    basis = spec.basis
    ds = spec.discriminants
    gram = gram_transform(basis, amb.gram)
    r = rank(basis)
    n = len(ds)

    symmetric = gram.is_symmetric()
    pd = symmetric and is_positive_definite(gram)
    h2_ok = basis.row(0) == amb.h2 and gram[0, 0] == 3
    min_norm = None
    no_norm2 = False
    if pd:
        # the h^2 row guarantees a vector of norm gram[0][0], so this window
        # always contains the minimum
        window = min(gram[i, i] for i in range(gram.nrows))
        found = short_vectors(gram, window)
        min_norm = found.min_norm()
        no_norm2 = all(q != 2 for q in found.norms)
    checks = {
        "gram_integral_symmetric": symmetric,
        "rank": r,
        "rank_at_most_21": r <= MAX_RANK,
        "positive_definite": pd,
        "h2_norm_3": h2_ok,
        "min_nonzero_norm": min_norm,
        "no_norm2_vectors": no_norm2,
    }
    labellings = tuple(_labelling(gram, basis, i, d) for i, d in enumerate(ds, start=1)) if r == n + 1 else ()

    failed = [k for k in ("gram_integral_symmetric", "rank_at_most_21", "positive_definite",
                          "h2_norm_3", "no_norm2_vectors") if not checks[k]]
    if r != n + 1:
        failed.append("rank")
    if min_norm is None or min_norm < 3:
        failed.append("min_nonzero_norm")
    for lab in labellings:
        if not lab.matches_d:
            failed.append(f"labelling[{lab.index}].matches_d")
        if not lab.saturated_in_M:
            failed.append(f"labelling[{lab.index}].saturated_in_M")

    return Certificate(
        discriminants=ds,
        mode=spec.mode,
        params=spec.params,
        basis=basis,
        gram=gram,
        checks=checks,
        labellings=labellings,
        k3=k3_report(ds, n + 1),
        predicate_reports=tuple(predicate_report(d, bound).to_json() for d in ds),
        extended_checks=_extended(gram) if extended and pd else None,
        failed=tuple(failed),
    )


def feasibility_error(discriminants: Sequence[int]) -> str | None:
    """First violated admissibility condition, or None."""
    for k, d in enumerate(discriminants, start=1):
        if not check_star(d):
            return f"d_{k}={d} fails (*): need d >= 8 and d = 0 or 2 mod 6"
        if k >= 3 and not check_double_star(d)[0]:
            return f"d_{k}={d} fails (**): slots 3..20 need d = 6m^2 or 6m^2+2 with m >= 2"
    return None


def build_spec(discriminants: Sequence[int] | None, mode: str = "auto",
               params: Sequence[int] | None = None) -> SublatticeSpec:
    if mode == "auto":
        if discriminants is None:
            raise TupleInfeasible("auto mode needs a discriminant tuple")
        ds = tuple(int(d) for d in discriminants)
        if len(ds) + 1 > MAX_RANK:
            raise RankExceeded(f"{len(ds)} discriminants give rank {len(ds) + 1} > {MAX_RANK}")
        if not ds:
            raise TupleInfeasible("empty discriminant tuple")
        err = feasibility_error(ds)
        if err:
            raise TupleInfeasible(err)
        return assemble_sublattice(ds)
    if not mode.startswith("case:"):
        raise LatticeError(f"mode must be 'auto' or 'case:<ID>', got {mode!r}")
    if params is None:
        raise TupleInfeasible(f"{mode} needs --params")
    spec = appendix_case(mode[len("case:"):], params)
    if discriminants is not None and tuple(int(d) for d in discriminants) != spec.discriminants:
        raise TupleInfeasible(
            f"discriminants {tuple(discriminants)} do not match {mode} parameters "
            f"(which give {spec.discriminants})"
        )
    return spec


def certify(discriminants: Sequence[int] | None, mode: str = "auto", params: Sequence[int] | None = None,
            *, bound: int = DEFAULT_BOUND, extended: bool = True) -> Certificate:
    return evaluate(build_spec(discriminants, mode, params), bound=bound, extended=extended)


# --- verification ---------------------------------------------------------------

_STR_INT = {"type": "string", "pattern": "^-?[0-9]+$"}
_NULLABLE_INT = {"anyOf": [_STR_INT, {"type": "null"}]}
_TRI = {
    "type": "object",
    "required": ["status", "witness", "bound"],
    "properties": {
        "status": {"enum": ["true", "false_up_to_bound", "false"]},
        "witness": {"anyOf": [{"type": "null"}, {"type": "object", "additionalProperties": _STR_INT}]},
        "bound": _NULLABLE_INT,
    },
}

CERTIFICATE_SCHEMA: dict[str, Any] = {
    "type": "object",
    "required": ["schema_version", "tuple", "mode", "basis", "gram", "checks", "labellings",
                 "k3_report", "predicate_reports", "verdict"],
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "tuple": {"type": "array", "items": _STR_INT, "minItems": 1},
        "mode": {"type": "string", "pattern": "^(auto|case:.+)$"},
        "params": {"anyOf": [{"type": "null"}, {"type": "array", "items": _STR_INT}]},
        "basis": {
            "type": "array",
            "items": {
                "type": "array",
                "items": {
                    "type": "object",
                    "required": ["name", "coeff"],
                    "properties": {"name": {"enum": list(BASIS_NAMES)}, "coeff": _STR_INT},
                    "additionalProperties": False,
                },
            },
        },
        "gram": {"type": "array", "items": {"type": "array", "items": _STR_INT}},
        "checks": {
            "type": "object",
            "required": ["gram_integral_symmetric", "rank", "rank_at_most_21", "positive_definite",
                         "h2_norm_3", "min_nonzero_norm", "no_norm2_vectors"],
            "properties": {
                "gram_integral_symmetric": {"type": "boolean"},
                "rank": _STR_INT,
                "rank_at_most_21": {"type": "boolean"},
                "positive_definite": {"type": "boolean"},
                "h2_norm_3": {"type": "boolean"},
                "min_nonzero_norm": _NULLABLE_INT,
                "no_norm2_vectors": {"type": "boolean"},
            },
        },
        "labellings": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["index", "gram_2x2", "discriminant", "matches_d", "saturated_in_M"],
                "properties": {
                    "index": _STR_INT,
                    "gram_2x2": {"type": "array", "items": {"type": "array", "items": _STR_INT}},
                    "discriminant": _STR_INT,
                    "matches_d": {"type": "boolean"},
                    "saturated_in_M": {"type": "boolean"},
                },
            },
        },
        "k3_report": {
            "type": "object",
            "required": ["rank_AX_lower_bound", "some_d_has_assoc_k3", "ns_rank_lower_bound", "witnesses"],
            "properties": {
                "rank_AX_lower_bound": _STR_INT,
                "some_d_has_assoc_k3": {"type": "boolean"},
                "ns_rank_lower_bound": _NULLABLE_INT,
                "witnesses": {"type": "array", "items": _STR_INT},
            },
        },
        "predicate_reports": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["d", "star", "double_star", "assoc_k3", "bulles", "llsvs", "fano_hilb", "addington"],
                "properties": {"bulles": _TRI, "llsvs": _TRI, "addington": _TRI},
            },
        },
        "verdict": {
            "type": "object",
            "required": ["result", "failed_checks"],
            "properties": {
                "result": {"enum": ["pass", "fail"]},
                "failed_checks": {"type": "array", "items": {"type": "string"}},
            },
        },
    },
}


@dataclass(frozen=True)
class VerifyResult:
    reasons: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.reasons

    def __bool__(self) -> bool:
        return self.ok


def _parse_basis(rows: list[list[dict[str, str]]]) -> IntMatrix:
    out = []
    for row in rows:
        v = [0] * RANK
        for entry in row:
            v[NAME_INDEX[entry["name"]]] += int(entry["coeff"])
        out.append(v)
    return IntMatrix(out, ncols=RANK)


def _stored_bound(payload: dict[str, Any]) -> int:
    for rep in payload["predicate_reports"]:
        b = rep["llsvs"].get("bound")
        if b is not None:
            return int(b)
    return DEFAULT_BOUND


def verify(payload: dict[str, Any] | str) -> VerifyResult:
    """Recompute a certificate from its basis coordinates and compare field by field."""
    if isinstance(payload, str):
        try:
            payload = json.loads(payload)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"certificate is not valid JSON: {exc}") from exc
    try:
        jsonschema.validate(payload, CERTIFICATE_SCHEMA)
    except jsonschema.ValidationError as exc:
        raise SchemaError(f"certificate does not match schema: {exc.message}") from exc

    ds = tuple(int(d) for d in payload["tuple"])
    params = None if payload.get("params") is None else tuple(int(p) for p in payload["params"])
    basis = _parse_basis(payload["basis"])
    reasons: list[str] = []

    if basis.nrows != len(ds) + 1:
        return VerifyResult(("basis_shape_mismatch",))

    # the stored coordinates must be exactly what the construction produces
    try:
        expected = build_spec(ds, payload["mode"], params)
        if expected.basis != basis:
            reasons.append("basis_mismatch")
    except LatticeError as exc:
        reasons.append(f"construction_error: {exc}")

    spec = SublatticeSpec(basis, ds, payload["mode"], params)
    extended = payload.get("extended_checks") is not None
    fresh = evaluate(spec, bound=_stored_bound(payload), extended=extended).to_json()

    for key, reason in (
        ("gram", "gram_mismatch"),
        ("checks", "checks_mismatch"),
        ("labellings", "labelling_mismatch"),
        ("k3_report", "k3_report_mismatch"),
        ("predicate_reports", "predicate_mismatch"),
        ("extended_checks", "extended_checks_mismatch"),
        ("verdict", "verdict_mismatch"),
    ):
        if payload.get(key) != fresh[key]:
            reasons.append(reason)
    if fresh["verdict"]["result"] != "pass":
        reasons.append("verdict_fail: " + ",".join(fresh["verdict"]["failed_checks"]))
    return VerifyResult(tuple(reasons))


# --- search ---------------------------------------------------------------------

def _slot_accepts(slot: int, d: int) -> bool:
    try:
        GeneratorSpec(slot, d).validate()
    except LatticeError:
        return False
    return True


def _place_includes(count: int, includes: Sequence[int]) -> dict[int, int] | None:
    """Ascending includes go to the lowest free slot that accepts them."""
    placed: dict[int, int] = {}
    for d in includes:
        slot = next((s for s in range(1, count + 1) if s not in placed and _slot_accepts(s, d)), None)
        if slot is None:
            return None
        placed[slot] = d
    return placed


def search_tuple(
    count: int,
    must_include: Sequence[int] = (),
    max_d: int = DEFAULT_MAX_D,
    require_distinct: bool = True,
    *,
    bound: int = DEFAULT_BOUND,
    extended: bool = True,
    max_candidates: int = 10_000,
) -> tuple[tuple[int, ...], Certificate]:
    """Smallest admissible tuple of ``count`` discriminants containing ``must_include``.

    Includes are placed first; the free slots are filled, in slot order, with
    the lexicographically smallest ascending run of (**) values that yields a
    passing certificate.
    """
    if not 1 <= count <= MAX_SLOTS:
        raise InvalidInclude(f"count must be in 1..{MAX_SLOTS}, got {count}")
    includes = sorted(int(d) for d in must_include)
    if len(includes) > count:
        raise InvalidInclude(f"{len(includes)} values to include but only {count} slots")
    for d in includes:
        if not check_star(d):
            raise InvalidInclude(f"{d} fails (*): need d >= 8 and d = 0 or 2 mod 6")
    if require_distinct and len(set(includes)) != len(includes):
        raise InvalidInclude("repeated include values with require_distinct")

    placed = _place_includes(count, includes)
    if placed is None:
        # slots 3.. only take (**) values: put the others first, then retry
        others = [d for d in includes if not check_double_star(d)[0]]
        stars = [d for d in includes if check_double_star(d)[0]]
        placed = _place_includes(count, others + stars)
    if placed is None:
        raise InvalidInclude(f"no slot assignment accepts includes {includes}: "
                             "at most two values outside (**) fit in slots 1 and 2")

    free = [s for s in range(1, count + 1) if s not in placed]
    pool = [d for d in enumerate_double_star(max_d) if not (require_distinct and d in placed.values())]
    combos = (itertools.combinations if require_distinct else itertools.combinations_with_replacement)(pool, len(free))
    for tried, fill in enumerate(combos):
        if tried >= max_candidates:
            raise Infeasible(f"no passing tuple among the first {max_candidates} candidates")
        slots = dict(placed)
        slots.update(zip(free, fill))
        ds = tuple(slots[s] for s in range(1, count + 1))
        cert = certify(ds, bound=bound, extended=extended)
        if cert.passed:
            return ds, cert
    raise Infeasible(
        f"no admissible {count}-tuple with values <= {max_d} "
        f"({len(pool)} (**) values available for {len(free)} free slots)"
    )


__all__ = [
    "Certificate",
    "CERTIFICATE_SCHEMA",
    "K3Report",
    "Labelling",
    "VerifyResult",
    "build_spec",
    "certify",
    "dumps",
    "evaluate",
    "feasibility_error",
    "k3_report",
    "search_tuple",
    "verify",
]
