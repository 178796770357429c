"""Arithmetic conditions on a discriminant d.

Existential conditions return their witness. Conditions with no known a
priori search bound are reported three-valued: a witness, "false up to the
searched bound", or a definite false.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any

DEFAULT_BOUND = 10_000


def _isqrt_exact(n: int) -> int | None:
    if n < 0:
        return None
    r = math.isqrt(n)
    return r if r * r == n else None


@dataclass(frozen=True)
class TriState:
    """``status`` is one of "true", "false_up_to_bound", "false"."""

    status: str
    witness: dict[str, int] | None = None
    bound: int | None = None

    def __bool__(self) -> bool:
        return self.status == "true"

    @property
    def is_true(self) -> bool:
        return self.status == "true"

    def to_json(self) -> dict[str, Any]:
        return {
            "status": self.status,
            "witness": None if self.witness is None else {k: str(v) for k, v in self.witness.items()},
            "bound": None if self.bound is None else str(self.bound),
        }


def check_star(d: int) -> bool:
    return d >= 8 and d % 6 in (0, 2)


def check_double_star(d: int) -> tuple[bool, int | None]:
    """d = 6 m^2 or 6 m^2 + 2 with m >= 2 (m^2 is any nonempty product of prime squares)."""
    for r in (0, 2):
        if d - r > 0 and (d - r) % 6 == 0:
            m = _isqrt_exact((d - r) // 6)
            if m is not None and m >= 2:
                return True, m
    return False, None


def factorize(n: int) -> dict[int, int]:
    """Trial-division factorisation of n >= 1."""
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def check_assoc_k3(d: int) -> bool:
    if d < 1:
        raise ValueError("d must be positive")
    if d % 4 == 0 or d % 9 == 0:
        return False
    return not any(p % 2 == 1 and p % 3 == 2 for p in factorize(d))


def check_bulles(d: int) -> TriState:
    """Exists f, g with d = f^2 g and g | 2n^2 + 2n + 2 for some n >= 0.

    f runs over all f with f^2 | d, and n over a complete residue system mod g,
    so the search is a decision procedure.
    """
    if d < 1:
        raise ValueError("d must be positive")
    f = 1
    while f * f <= d:
        if d % (f * f) == 0:
            g = d // (f * f)
            for n in range(g):
                if (2 * n * n + 2 * n + 2) % g == 0:
                    return TriState("true", {"f": f, "g": g, "n": n})
        f += 1
    return TriState("false")


def check_llsvs(d: int, bound: int = DEFAULT_BOUND) -> TriState:
    """d a^2 = 6 n^2 + 6 n + 2 for some a in 1..bound, n >= 0.

    Multiplying by 6 turns this into (6n + 3)^2 = 6 d a^2 - 3.
    """
    if d < 1 or bound < 1:
        raise ValueError("d and bound must be positive")
    for a in range(1, bound + 1):
        s = _isqrt_exact(6 * d * a * a - 3)
        if s is not None and s % 6 == 3:
            n = (s - 3) // 6
            if 6 * n * n + 6 * n + 2 == d * a * a:
                return TriState("true", {"n": n, "a": a}, bound)
    return TriState("false_up_to_bound", None, bound)


def check_fano_hilb(d: int) -> tuple[bool, int | None]:
    """d = 2(n^2 + n + 1) with n >= 2, i.e. 2d - 3 = (2n + 1)^2."""
    if d < 1:
        raise ValueError("d must be positive")
    s = _isqrt_exact(2 * d - 3)
    if s is not None and s % 2 == 1 and (s - 1) // 2 >= 2:
        return True, (s - 1) // 2
    return False, None


def check_addington(d: int, bound: int = DEFAULT_BOUND) -> TriState:
    """d a^2 = 2 n^2 + 2 n + 2 for some a in 1..bound, n >= 0.

    Equivalent to (2n + 1)^2 = 2 d a^2 - 3.
    """
    if d < 1 or bound < 1:
        raise ValueError("d and bound must be positive")
    for a in range(1, bound + 1):
        s = _isqrt_exact(2 * d * a * a - 3)
        if s is not None and s % 2 == 1:
            n = (s - 1) // 2
            if 2 * n * n + 2 * n + 2 == d * a * a:
                return TriState("true", {"n": n, "a": a}, bound)
    return TriState("false_up_to_bound", None, bound)


def enumerate_double_star(max_d: int) -> list[int]:
    out = []
    m = 2
    while 6 * m * m <= max_d:
        out.append(6 * m * m)
        if 6 * m * m + 2 <= max_d:
            out.append(6 * m * m + 2)
        m += 1
    return out


@dataclass(frozen=True)
class PredicateReport:
    d: int
    star: bool
    double_star: bool
    double_star_m: int | None
    assoc_k3: bool
    bulles: TriState
    llsvs: TriState
    fano_hilb: bool
    fano_hilb_n: int | None
    addington: TriState
    bound: int = field(default=DEFAULT_BOUND)

    def to_json(self) -> dict[str, Any]:
        return {
            "d": str(self.d),
            "star": self.star,
            "double_star": {
                "value": self.double_star,
                "m": None if self.double_star_m is None else str(self.double_star_m),
            },
            "assoc_k3": self.assoc_k3,
            "bulles": self.bulles.to_json(),
            "llsvs": self.llsvs.to_json(),
            "fano_hilb": {
                "value": self.fano_hilb,
                "n": None if self.fano_hilb_n is None else str(self.fano_hilb_n),
            },
            "addington": self.addington.to_json(),
        }


def predicate_report(d: int, bound: int = DEFAULT_BOUND) -> PredicateReport:
    if d < 1:
        raise ValueError("discriminant must be a positive integer")
    ds, m = check_double_star(d)
    fh, fn = check_fano_hilb(d)
    return PredicateReport(
        d=d,
        star=check_star(d),
        double_star=ds,
        double_star_m=m,
        assoc_k3=check_assoc_k3(d),
        bulles=check_bulles(d),
        llsvs=check_llsvs(d, bound),
        fano_hilb=fh,
        fano_hilb_n=fn,
        addington=check_addington(d, bound),
        bound=bound,
    )
