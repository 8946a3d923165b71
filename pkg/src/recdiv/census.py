"""Membership censuses of N_u(x) = {n <= x : n | u_n} and its variants.

The range 1..x is cut into contiguous blocks evaluated independently (the
compiled kernel releases the GIL, so a thread pool gives real parallelism);
blocks are merged in index order, so the report does not depend on the
worker count.
"""

from __future__ import annotations

import csv
import io
import json
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from recdiv import _backend
from recdiv.errors import DomainError
from recdiv.modular import term_mod
from recdiv.recurrence import (
    IntPolynomial,
    RecurrenceSpec,
    exact_term,
    require_standing_assumptions,
    zero_terms,
)
from recdiv.smoothness import big_l, log_iter, primes_up_to

DEFAULT_RETAIN = 10**6
DEFAULT_BLOCK = 1 << 16
CSV_COLUMNS = ("x", "count", "count_logx_over_x", "count_Lx_over_x")

_INT64 = (-(1 << 63), (1 << 63) - 1)


@dataclass(frozen=True)
class PolySpec:
    """Nonconstant integer polynomial g, coefficients lowest degree first."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        poly = IntPolynomial(self.coeffs)
        if poly.degree < 1:
            raise DomainError("g must be nonconstant")
        object.__setattr__(self, "coeffs", poly.coeffs)

    @property
    def poly(self) -> IntPolynomial:
        return IntPolynomial(self.coeffs)

    def __call__(self, n: int) -> int:
        return self.poly(n)


@dataclass(frozen=True)
class CensusReport:
    kind: str
    spec: RecurrenceSpec
    x: int
    checkpoints: tuple[int, ...]
    counts: tuple[int, ...]
    members: tuple[int, ...] | None
    elapsed: float = field(compare=False)
    poly: tuple[int, ...] | None = None
    excluded_zero_indices: tuple[int, ...] | None = None

    @property
    def count(self) -> int:
        return self.counts[-1] if self.counts else 0

    @property
    def members_retained(self) -> bool:
        return self.members is not None

    def ratios(self) -> list[tuple[float, float]]:
        """(count log x / x, count L(x) / x) per checkpoint."""
        return [(c * log_iter(x) / x, c * big_l(x) / x) for x, c in zip(self.checkpoints, self.counts)]

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for (x, c), (r1, r2) in zip(zip(self.checkpoints, self.counts), self.ratios()):
            writer.writerow([x, c, f"{r1:.12g}", f"{r2:.12g}"])
        return buf.getvalue()

    def to_dict(self, include_timing: bool = False) -> dict:
        out = {
            "kind": self.kind,
            "spec": {"coeffs": list(self.spec.coeffs), "init": list(self.spec.init)},
            "x": self.x,
            "checkpoints": list(self.checkpoints),
            "counts": list(self.counts),
            "ratios": [
                {"count_logx_over_x": a, "count_Lx_over_x": b} for a, b in self.ratios()
            ],
            "members": list(self.members) if self.members is not None else None,
        }
        if self.poly is not None:
            out["g"] = list(self.poly)
        if self.excluded_zero_indices is not None:
            out["zero_indices"] = list(self.excluded_zero_indices)
        if include_timing:
            out["elapsed"] = self.elapsed
        return out

    def to_json(self, include_timing: bool = False) -> str:
        return json.dumps(self.to_dict(include_timing), sort_keys=True)


def default_checkpoints(x: int) -> list[int]:
    """Powers of 10 below x, then x itself."""
    cps = []
    c = 10
    while c < x:
        cps.append(c)
        c *= 10
    cps.append(x)
    return cps


def _normalise_checkpoints(x, checkpoints):
    cps = sorted(set(int(c) for c in (checkpoints or default_checkpoints(x))))
    if not cps or cps[0] < 1 or cps[-1] > x:
        raise DomainError("checkpoints must lie in [1, x]")
    return cps


def _blocks(x, block):
    lo = 1
    while lo <= x:
        hi = min(lo + block, x + 1)
        yield lo, hi
        lo = hi


def _default_workers():
    return os.cpu_count() or 1


def _membership_block(spec: RecurrenceSpec, lo: int, hi: int) -> np.ndarray:
    """Sorted n in [lo, hi) with n | u_n."""
    values = spec.coeffs + spec.init
    word = all(_INT64[0] <= v <= _INT64[1] for v in values)
    if word and _backend.fits_compiled(spec.order, hi, hi):
        flags = _backend.compiled_kernels.census_block(spec.coeffs, spec.init, lo, hi)
    else:
        flags = _backend.python_kernels.census_block(spec.coeffs, spec.init, lo, hi)
    return lo + np.flatnonzero(flags).astype(np.int64)


def _collect(kind, spec, x, checkpoints, block_fn, workers, retain, block, started, **extra):
    cps = np.asarray(checkpoints, dtype=np.int64)
    counts = np.zeros(len(cps), dtype=np.int64)
    kept: list[np.ndarray] | None = []
    total = 0
    workers = workers or _default_workers()
    with ThreadPoolExecutor(max_workers=workers) as pool:
        for members in pool.map(lambda b: block_fn(*b), _blocks(x, block)):
            counts += np.searchsorted(members, cps, side="right")
            total += len(members)
            if kept is not None:
                if total > retain:
                    kept = None
                else:
                    kept.append(members)
    members = None
    if kept is not None:
        members = tuple(int(v) for v in np.concatenate(kept)) if kept else ()
    return CensusReport(
        kind,
        spec,
        x,
        tuple(int(c) for c in cps),
        tuple(int(c) for c in counts),
        members,
        time.perf_counter() - started,
        **extra,
    )


def census(
    spec: RecurrenceSpec,
    x: int,
    checkpoints=None,
    workers: int | None = None,
    retain: int = DEFAULT_RETAIN,
    block: int = DEFAULT_BLOCK,
) -> CensusReport:
    """N_u(x), exact, with counts at each checkpoint."""
    started = time.perf_counter()
    x = int(x)
    if x < 1:
        raise DomainError("x must be >= 1")
    require_standing_assumptions(spec)
    cps = _normalise_checkpoints(x, checkpoints)
    return _collect(
        "N",
        spec,
        x,
        cps,
        lambda lo, hi: _membership_block(spec, lo, hi),
        workers,
        retain,
        block,
        started,
    )


def census_excluding_zero_multiples(
    spec: RecurrenceSpec,
    x: int,
    zero_bound: int = 10**4,
    checkpoints=None,
    workers: int | None = None,
    retain: int = DEFAULT_RETAIN,
    block: int = DEFAULT_BLOCK,
) -> CensusReport:
    """M_u(x): members of N_u(x) not of the form p * n0 with p prime and u_{n0} = 0."""
    started = time.perf_counter()
    x = int(x)
    if x < 1:
        raise DomainError("x must be >= 1")
    require_standing_assumptions(spec)
    cps = _normalise_checkpoints(x, checkpoints)
    zeros = [n0 for n0 in zero_terms(spec, zero_bound) if n0 >= 1]
    is_p = np.zeros(x + 1, dtype=bool)
    if zeros:
        is_p[primes_up_to(x // min(zeros))] = True

    def block_fn(lo, hi):
        members = _membership_block(spec, lo, hi)
        if not zeros or not len(members):
            return members
        drop = np.zeros(len(members), dtype=bool)
        for n0 in zeros:
            q, r = np.divmod(members, n0)
            drop |= (r == 0) & is_p[np.minimum(q, x)]
        return members[~drop]

    return _collect(
        "M",
        spec,
        x,
        cps,
        block_fn,
        workers,
        retain,
        block,
        started,
        excluded_zero_indices=tuple(zeros),
    )


def poly_member(spec: RecurrenceSpec, g: PolySpec, n: int) -> bool:
    """g(n) | u_n, with divisibility by 0 meaning u_n = 0."""
    gv = abs(g(n))
    if gv == 0:
        return exact_term(spec, n) == 0
    return term_mod(spec, n, gv) == 0


def census_poly(
    spec: RecurrenceSpec,
    g: PolySpec,
    x: int,
    checkpoints=None,
    workers: int | None = None,
    retain: int = DEFAULT_RETAIN,
    block: int = DEFAULT_BLOCK,
) -> CensusReport:
    """N_{u,g}(x) = {n <= x : g(n) | u_n}."""
    started = time.perf_counter()
    x = int(x)
    if x < 1:
        raise DomainError("x must be >= 1")
    require_standing_assumptions(spec)
    cps = _normalise_checkpoints(x, checkpoints)

    def block_fn(lo, hi):
        return np.array([n for n in range(lo, hi) if poly_member(spec, g, n)], dtype=np.int64)

    return _collect("N_g", spec, x, cps, block_fn, workers, retain, block, started, poly=g.coeffs)


@dataclass(frozen=True)
class RatioRow:
    x: int
    count: int
    count_logx_over_x: float
    count_Lx_over_x: float
    # differences from the previous checkpoint; None on the first row
    delta_count: int | None
    delta_logx_ratio: float | None
    delta_Lx_ratio: float | None


def ratio_report(report: CensusReport) -> list[RatioRow]:
    """Per-checkpoint ratio columns and their first differences."""
    if len(report.checkpoints) < 2:
        raise DomainError("ratio report needs at least two checkpoints")
    rows = []
    prev = None
    for x, c, (r1, r2) in zip(report.checkpoints, report.counts, report.ratios()):
        if prev is None:
            rows.append(RatioRow(x, c, r1, r2, None, None, None))
        else:
            rows.append(RatioRow(x, c, r1, r2, c - prev[0], r1 - prev[1], r2 - prev[2]))
        prev = (c, r1, r2)
    return rows


def naive_member(spec: RecurrenceSpec, n: int) -> bool:
    """n | u_n by walking the recurrence mod n, O(n k)."""
    k = spec.order
    state = [v % n for v in spec.init]
    if n < k:
        return state[n] == 0
    for _ in range(k, n + 1):
        state.append(sum(spec.coeffs[j] * state[-1 - j] for j in range(k)) % n)
        del state[0]
    return state[-1] == 0


__all__ = [
    "CSV_COLUMNS",
    "CensusReport",
    "PolySpec",
    "RatioRow",
    "census",
    "census_excluding_zero_multiples",
    "census_poly",
    "default_checkpoints",
    "naive_member",
    "poly_member",
    "ratio_report",
]
