"""Edge-sign repair for boundary matrices, and the freedom left after it.

Magnitudes of the boundary coefficients are fixed (0 or 2); only their signs
are ambiguous.  Writing each nonzero coefficient as t_e * (-1)^f_e with a
tentative sign t_e, the condition d^2 = 0 becomes one GF(2) equation per
pair of cells two dimensions apart that are joined by two nonzero paths:

    f_a1 + f_a2 + f_b1 + f_b2 = [t_a1 t_a2 t_b1 t_b2 = +1]

A pair joined by exactly one nonzero path cannot be repaired by signs.

Rescaling every cell v by eps_v = (-1)^{b_v} flips edge (w, w') by
b_w + b_w'.  Such flips are chain isomorphisms and always solve the
homogeneous system; solutions outside their span may change homology.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional

from .boundary import ChainComplex, build_matrices
from .homology import check_boundary_squared, homology_groups


@dataclass
class SignSolution:
    flips: Optional[frozenset[tuple[int, int]]]
    report: dict = field(default_factory=dict)
    reason: str = ""


@dataclass
class _System:
    variables: list[tuple[int, int]]
    rows: list[tuple[int, int]]  # (bitmask over variables, rhs bit)
    obstructions: list[str]


def _nonzero_edges(cx: ChainComplex):
    return [e for e in cx.edges if cx.coefficients[e.key]]


def constraint_system(cx: ChainComplex, pin_canonical: bool = False) -> _System:
    """GF(2) system for the flip bits; pinned edges keep their tentative sign."""
    edges = _nonzero_edges(cx)
    variables = [e.key for e in edges if not (pin_canonical and e.canonical_deletion)]
    var = {k: n for n, k in enumerate(variables)}
    out: dict = {}
    for e in edges:
        out.setdefault(e.w, []).append(e)
    rows = []
    obstructions = []
    for w, first in out.items():
        paths: dict = {}
        for e1 in first:
            for e2 in out.get(e1.w_prime, ()):
                paths.setdefault(e2.w_prime, []).append((e1, e2))
        for x, plist in sorted(paths.items(), key=lambda kv: kv[0].index):
            if len(plist) == 2:
                (a1, a2), (b1, b2) = plist
                mask = 0
                t = 1
                for e in (a1, a2, b1, b2):
                    if e.key in var:
                        mask ^= 1 << var[e.key]
                    t *= 1 if cx.coefficients[e.key] > 0 else -1
                rows.append((mask, 1 if t == 1 else 0))
            else:
                obstructions.append(f"{len(plist)} nonzero path(s) from {w!r} to {x!r}")
    return _System(variables, rows, obstructions)


def _eliminate(rows: list[tuple[int, int]]):
    """Reduced echelon basis {pivot_bit: (mask, rhs)}; None if inconsistent."""
    basis: dict[int, tuple[int, int]] = {}
    for mask, rhs in rows:
        for bit, (bm, br) in basis.items():
            if mask >> bit & 1:
                mask ^= bm
                rhs ^= br
        if not mask:
            if rhs:
                return None
            continue
        bit = mask.bit_length() - 1
        for other, (om, orhs) in list(basis.items()):
            if om >> bit & 1:
                basis[other] = (om ^ mask, orhs ^ rhs)
        basis[bit] = (mask, rhs)
    return basis


def _gf2_rank(vectors) -> int:
    basis: dict[int, int] = {}
    for v in vectors:
        while v:
            lead = v.bit_length() - 1
            if lead in basis:
                v ^= basis[lead]
            else:
                basis[lead] = v
                break
    return len(basis)


def solve_signs(cx: ChainComplex) -> SignSolution:
    """Edge flips that make d^2 = 0, or a failure with its reason.

    Edges whose deleted word is already the fixed word of w' have an exact
    sign, so they are pinned on the first attempt; only if that system has
    no solution are all nonzero edges released.
    """
    reason = ""
    for pinned in (True, False):
        system = constraint_system(cx, pin_canonical=pinned)
        report = {
            "pinned_canonical": pinned,
            "equations": len(system.rows),
            "variables": len(system.variables),
        }
        if system.obstructions:
            return SignSolution(None, report, system.obstructions[0])
        basis = _eliminate(system.rows)
        if basis is None:
            reason = "parity equations are inconsistent"
            continue
        # free variables set to zero, so pivots take the rhs
        flips = frozenset(system.variables[bit] for bit, (_, rhs) in basis.items() if rhs)
        report["rank"] = len(basis)
        return SignSolution(flips, report)
    return SignSolution(None, report, reason)


def _coboundaries(cx: ChainComplex, variables) -> list[int]:
    var = {k: n for n, k in enumerate(variables)}
    incident: dict[int, int] = {}
    for key in variables:
        for end in key:
            incident[end] = incident.get(end, 0) ^ (1 << var[key])
    return list(incident.values())


def _with_flips(cx: ChainComplex, variables, mask: int) -> ChainComplex:
    coeffs = dict(cx.coefficients)
    for n, key in enumerate(variables):
        if mask >> n & 1:
            coeffs[key] = -coeffs[key]
    return ChainComplex(
        cx.theta, cx.cells, build_matrices(cx.cells, cx.edges, coeffs), cx.mult, cx.edges, coeffs
    )


def _homology_key(cx: ChainComplex):
    return tuple((h.betti, h.torsion) for h in homology_groups(cx, "Z"))


def _span_element(basis: list[int], bits: int) -> int:
    v = 0
    for n, b in enumerate(basis):
        if bits >> n & 1:
            v ^= b
    return v


def _independent(vectors: list[int]) -> list[int]:
    out: list[int] = []
    reduced: dict[int, int] = {}
    for v in vectors:
        r = v
        while r:
            lead = r.bit_length() - 1
            if lead in reduced:
                r ^= reduced[lead]
            else:
                reduced[lead] = r
                out.append(v)
                break
    return out


def sign_freedom(cx: ChainComplex, exhaustive_bits: int = 12, samples: int = 256, seed: int = 0) -> dict:
    """Survey of the d^2 = 0 sign assignments around an assembled complex.

    Every rescaling of cx (cell signs) is checked to close d^2 and to give the
    same integral homology; when there are more than 2**exhaustive_bits of
    them, a seeded random sample is checked instead.  Classes of solutions
    that are not rescalings are counted and, when few, their homology is
    reported.
    """
    system = constraint_system(cx)
    variables = system.variables
    rng = random.Random(seed)
    base = _homology_key(cx)

    cob = _independent(_coboundaries(cx, variables))
    kernel_dim = len(variables) - _gf2_rank(m for m, _ in system.rows)
    extra = kernel_dim - len(cob)

    if len(cob) <= exhaustive_bits:
        masks = (_span_element(cob, bits) for bits in range(2 ** len(cob)))
        mode = "exhaustive"
        checked = 2 ** len(cob)
    else:
        masks = (_span_element(cob, rng.getrandbits(len(cob))) for _ in range(samples))
        mode = "sampled"
        checked = samples
    mismatches = 0
    for mask in masks:
        other = _with_flips(cx, variables, mask)
        if check_boundary_squared(other) or _homology_key(other) != base:
            mismatches += 1

    # representatives of kernel / coboundaries
    kernel = _kernel_basis(system.rows, len(variables))
    quotient = []
    reduced = list(cob)
    for v in kernel:
        if _gf2_rank(reduced + [v]) > len(reduced):
            reduced.append(v)
            quotient.append(v)
    assert len(quotient) == extra
    other_homologies = set()
    if 0 < extra <= 8:
        for bits in range(1, 2**extra):
            other = _with_flips(cx, variables, _span_element(quotient, bits))
            assert not check_boundary_squared(other)
            other_homologies.add(_homology_key(other))
    return {
        "nonzero_edges": len(variables),
        "equations": len(system.rows),
        "rescaling_rank": len(cob),
        "solution_space_dim": kernel_dim,
        "rescalings_checked": checked,
        "rescaling_mode": mode,
        "rescaling_mismatches": mismatches,
        "non_rescaling_dim": extra,
        "non_rescaling_exist": extra > 0,
        "non_rescaling_homology_differs": (
            None if extra > 8 else any(h != base for h in other_homologies)
        ),
    }


def _kernel_basis(rows: list[tuple[int, int]], nvars: int) -> list[int]:
    basis = _eliminate([(m, 0) for m, _ in rows]) or {}
    pivots = set(basis)
    out = []
    for free in range(nvars):
        if free in pivots:
            continue
        v = 1 << free
        for bit, (mask, _) in basis.items():
            if mask >> free & 1:
                v ^= 1 << bit
        out.append(v)
    return out
