"""Command-line front end: ``flaghom --family G --rank 2 --theta 1``.

Exit codes: 0 success, 1 usage or input error, 2 the boundary could not be
made to square to zero, 3 the self-check failed.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from . import __version__
from .boundary import POLICY_NAMES, ChainComplex, assemble, select_policy
from .cache import ENV_VAR, cached_group
from .errors import (
    CheckFailed,
    ComplexInvalid,
    FlagHomError,
    GroupTooLarge,
    InvalidSpec,
    SignInconsistency,
)
from .homology import RINGS, HomologyGroup, homology_groups
from .root_system import multiplicity_map, root_system
from .selfcheck import self_check
from .weyl import minimal_coset_representatives, theta_subset

SCHEMA_VERSION = "1.0"

EXIT_OK, EXIT_USAGE, EXIT_SIGNS, EXIT_CHECK = 0, 1, 2, 3


class UsageError(FlagHomError):
    pass


@dataclass
class RunConfig:
    family: str
    rank: int
    theta: list[int] = field(default_factory=list)
    mult: str = "split"
    ring: str = "both"
    format: str = "text"
    out: Optional[str] = None
    cache_dir: Optional[str] = None
    check: bool = False
    sign_solver: str = "on"
    sign_policy: str = "auto"

    def validate(self) -> "RunConfig":
        if self.ring not in RINGS + ("both",):
            raise UsageError(f"ring must be Z, Z2 or both, got {self.ring!r}")
        if self.format not in ("text", "json"):
            raise UsageError(f"format must be text or json, got {self.format!r}")
        if self.sign_solver not in ("on", "off"):
            raise UsageError(f"sign-solver must be on or off, got {self.sign_solver!r}")
        if self.sign_policy not in POLICY_NAMES:
            raise UsageError(f"sign-policy must be one of {', '.join(POLICY_NAMES)}, got {self.sign_policy!r}")
        return self


@dataclass
class RunResult:
    document: dict
    exit_code: int
    complex: Optional[ChainComplex] = None


def read_multiplicity_file(rs, path) -> dict:
    """Parse lines ``c1 c2 ... : m``; blank lines and '#' comments are skipped."""
    values = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise InvalidSpec(f"{path}:{lineno}: expected 'coords : m'")
        left, right = line.split(":", 1)
        try:
            coords = tuple(int(c) for c in re.split(r"[\s,]+", left.strip()) if c)
            m = int(right.strip())
        except ValueError:
            raise InvalidSpec(f"{path}:{lineno}: non-integer entry in {raw!r}") from None
        if len(coords) != rs.rank:
            raise InvalidSpec(f"{path}:{lineno}: root {coords} has {len(coords)} coordinates, rank is {rs.rank}")
        if coords in values:
            raise InvalidSpec(f"{path}:{lineno}: root {coords} listed twice")
        values[coords] = m
    return values


def _homology_section(cx: ChainComplex, ring: str) -> dict:
    rings = RINGS if ring == "both" else (ring,)
    return {
        r: [{"degree": h.degree, "betti": h.betti, "torsion": list(h.torsion)} for h in homology_groups(cx, r)]
        for r in rings
    }


def _cell_table(cx: ChainComplex, coset_size: dict) -> list[dict]:
    rows = []
    for k, level in enumerate(cx.cells):
        for pos, w in enumerate(level):
            rows.append(
                {
                    "dimension": k,
                    "position": pos,
                    "word": list(w.word),
                    "length": w.length,
                    "coset_size": coset_size[w],
                }
            )
    return rows


def _boundary_section(cx: ChainComplex) -> list[dict]:
    out = []
    for k in range(1, cx.top + 1):
        m = cx.matrix(k)
        out.append({"degree": k, "rows": m.rows, "cols": m.cols, "triplets": [list(t) for t in m.triplets()]})
    return out


def _check_section(cx: ChainComplex) -> dict:
    report = dict(cx.sign_policy_report)
    return {
        "d_squared_zero": True,
        "edges": len(cx.edges),
        "nonzero_edges": sum(1 for e in cx.edges if cx.coefficients[e.key]),
        "kappa_sigma_checked": len(cx.edges),
        "kappa_sigma_violations": sum(1 for e in cx.edges if e.kappa != 1 - e.sigma),
        "sign_policy": {
            "policy": report.get("policy"),
            "solver": report.get("solver"),
            "tentative_d2_zero": report.get("tentative_d2_zero"),
            "pinned_canonical": report.get("pinned_canonical"),
            "flipped_edges": len(report.get("flipped_edges", [])),
            "status": report.get("status"),
        },
    }


def run(config: RunConfig) -> RunResult:
    """Full pipeline for one configuration; raises FlagHomError subclasses on failure."""
    config.validate()
    t0 = time.perf_counter()
    rs = root_system(config.family, config.rank)
    theta = theta_subset(rs, config.theta)
    if config.mult in ("split", "complex"):
        mult = multiplicity_map(rs, config.mult)
    else:
        mult = multiplicity_map(rs, read_multiplicity_file(rs, config.mult))
    t1 = time.perf_counter()
    group, cache_status = cached_group(rs, config.cache_dir)
    t2 = time.perf_counter()
    try:
        policy = select_policy(group, mult, config.sign_policy)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    cx = assemble(group, mult, theta, policy, sign_solver=config.sign_solver == "on")
    t3 = time.perf_counter()
    homology = _homology_section(cx, config.ring)
    t4 = time.perf_counter()

    coset_size = {c.w: len(c.members) for c in minimal_coset_representatives(group, theta)}
    checks = _check_section(cx)
    exit_code = EXIT_OK
    if config.check:
        report = self_check(cx, group)
        checks["self_check"] = report
        if not report["passed"]:
            exit_code = EXIT_CHECK

    document = {
        "schema_version": SCHEMA_VERSION,
        "config": {
            "family": rs.spec.family,
            "rank": rs.rank,
            "theta": sorted(theta.indices),
            "mult": config.mult if mult.preset != "custom" else "custom",
            "ring": config.ring,
            "sign_solver": config.sign_solver,
            "sign_policy": config.sign_policy,
            "check": config.check,
        },
        "root_system": {
            "positive_roots": [list(r) for r in rs.positive],
            "multiplicities": list(mult.values),
        },
        "cells": _cell_table(cx, coset_size),
        "boundary": _boundary_section(cx),
        "homology": homology,
        "checks": checks,
        "timing": {
            "setup_s": round(t1 - t0, 6),
            "weyl_s": round(t2 - t1, 6),
            "assemble_s": round(t3 - t2, 6),
            "homology_s": round(t4 - t3, 6),
            "total_s": round(time.perf_counter() - t0, 6),
            "cache": cache_status,
            "version": __version__,
        },
    }
    return RunResult(document, exit_code, cx)


def render_text(doc: dict) -> str:
    cfg = doc["config"]
    theta = ",".join(map(str, cfg["theta"])) or "-"
    lines = [f"flaghom {cfg['family']}{cfg['rank']} theta={theta} mult={cfg['mult']}"]
    counts: dict[int, int] = {}
    for c in doc["cells"]:
        counts[c["dimension"]] = counts.get(c["dimension"], 0) + 1
    lines.append("cells: " + " ".join(str(counts.get(k, 0)) for k in range(max(counts) + 1)))
    words = {(c["dimension"], c["position"]): "".join(f"r{i}" for i in c["word"]) or "1" for c in doc["cells"]}
    lines.append("boundary:")
    for b in doc["boundary"]:
        k = b["degree"]
        terms = [f"{words[(k, j)]} -> {v:+d} {words[(k - 1, i)]}" for i, j, v in b["triplets"]]
        lines.append(f"  d{k}: " + ("; ".join(terms) if terms else "0"))
    for ring, groups in doc["homology"].items():
        lines.append(f"homology over {ring}:")
        for g in groups:
            lines.append(f"  H{g['degree']} = {HomologyGroup(g['degree'], g['betti'], tuple(g['torsion']), ring)}")
    sc = doc["checks"].get("self_check")
    if sc is not None:
        lines.append("self-check: " + ("passed" if sc["passed"] else f"FAILED at {sc['first_failure']}"))
    return "\n".join(lines) + "\n"


_H_LINE = re.compile(r"^\s*H(\d+) = (.+)$")


def parse_text_homology(text: str) -> dict[str, list[HomologyGroup]]:
    """Recover the homology tables from ``render_text`` output."""
    out: dict[str, list[HomologyGroup]] = {}
    ring = None
    for line in text.splitlines():
        if line.startswith("homology over "):
            ring = line[len("homology over "):].rstrip(":")
            out[ring] = []
            continue
        m = _H_LINE.match(line)
        if m and ring is not None:
            out[ring].append(HomologyGroup.parse(int(m.group(1)), m.group(2), ring))
        elif not line.startswith("  "):
            ring = None
    return out


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="flaghom", description="Cellular homology of real flag manifolds.")
    p.add_argument("--family", required=True, help="root system type, one of A B C D E F G")
    p.add_argument("--rank", required=True, type=int)
    p.add_argument("--theta", default="", help="comma-separated simple root indices, e.g. 1,3")
    p.add_argument("--mult", default="split", help="split, complex, or a multiplicity file")
    p.add_argument("--ring", default="both", choices=["Z", "Z2", "both"])
    p.add_argument("--format", default="text", choices=["text", "json"])
    p.add_argument("--out", help="write the document here instead of stdout")
    p.add_argument("--cache", default=os.environ.get(ENV_VAR), help=f"Weyl group cache directory (default ${ENV_VAR})")
    p.add_argument("--check", action="store_true", help="run the self-check battery")
    p.add_argument("--sign-solver", default="on", choices=["on", "off"])
    p.add_argument(
        "--sign-policy",
        default="auto",
        choices=list(POLICY_NAMES),
        help="orientation (exact, split only), plus-one, or auto (orientation when split)",
    )
    p.add_argument("--version", action="version", version=f"flaghom {__version__}")
    return p


def _parse_theta(text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    try:
        return sorted({int(t) for t in text.split(",") if t.strip()})
    except ValueError:
        raise UsageError(f"theta must be comma-separated integers, got {text!r}") from None


def config_from_args(argv=None) -> RunConfig:
    ns = build_parser().parse_args(argv)
    return RunConfig(
        family=ns.family,
        rank=ns.rank,
        theta=_parse_theta(ns.theta),
        mult=ns.mult,
        ring=ns.ring,
        format=ns.format,
        out=ns.out,
        cache_dir=ns.cache,
        check=ns.check,
        sign_solver=ns.sign_solver,
        sign_policy=ns.sign_policy,
    )


def _emit_error(exc: Exception, code: int, fmt: str) -> None:
    payload = {"error": {"type": type(exc).__name__, "message": str(exc), "exit_code": code}}
    report = getattr(exc, "report", None)
    if report:
        payload["error"]["report"] = report
    if fmt == "json":
        print(json.dumps(payload), file=sys.stderr)
    else:
        print(f"flaghom: error [{type(exc).__name__}]: {exc}", file=sys.stderr)


def main(argv=None) -> int:
    fmt = "text"
    try:
        config = config_from_args(argv)
        fmt = config.format
        result = run(config)
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    except (SignInconsistency, ComplexInvalid) as exc:
        _emit_error(exc, EXIT_SIGNS, fmt)
        return EXIT_SIGNS
    except CheckFailed as exc:
        _emit_error(exc, EXIT_CHECK, fmt)
        return EXIT_CHECK
    except (UsageError, InvalidSpec, GroupTooLarge, ValueError, OSError, FlagHomError) as exc:
        _emit_error(exc, EXIT_USAGE, fmt)
        return EXIT_USAGE

    doc = result.document
    text = json.dumps(doc, indent=2) + "\n" if config.format == "json" else render_text(doc)
    if config.out:
        Path(config.out).write_text(text)
    else:
        sys.stdout.write(text)
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
