"""Saturation verdicts, free cells, and crossing-profile inequalities."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .insertion import InsertionWitness, can_insert
from .mode import Mode
from .planar import Planarization, check_k_plane


class NotKPlane(ValueError):
    pass


class UnsupportedK(ValueError):
    pass


def _require_k_plane(p: Planarization, k: int):
    if not check_k_plane(p, k):
        raise NotKPlane(f"drawing is not {k}-plane")


def saturated_edges(p: Planarization, k: int) -> set[int]:
    """Edges that already carry k crossings and cannot take another."""
    _require_k_plane(p, k)
    return {e for e in p.edges if p.edge_crossing_count(e) == k}


def free_cells(p: Planarization, k: int) -> set[int]:
    """Faces with no vertex anywhere and only saturated edges on the boundary."""
    _require_k_plane(p, k)
    sat = saturated_edges(p, k)
    out = set()
    for fid in range(len(p.faces)):
        if p.face_vertices(fid):
            continue
        edges = p.face_boundary_edges(fid)
        if edges and all(e in sat for e in edges):
            out.add(fid)
    return out


@dataclass(frozen=True)
class SaturationReport:
    saturated: bool
    counterexample: tuple[int, int, InsertionWitness] | None
    free_cells: tuple[int, ...]
    saturated_edges: tuple[int, ...]
    mode: Mode

    def to_dict(self) -> dict:
        out = {
            "verdict": "saturated" if self.saturated else "not-saturated",
            "mode": str(self.mode),
            "free_cells": list(self.free_cells),
            "saturated_edges": list(self.saturated_edges),
        }
        if self.counterexample is not None:
            u, v, w = self.counterexample
            out["counterexample"] = {
                "pair": [u, v],
                "doors": [[d.segment, d.edge] for d in w.doors],
                "crossings": w.crossing_count(),
            }
        return out


def _candidate_pairs(p: Planarization, mode: Mode):
    vs = p.vertices()
    for i, u in enumerate(vs):
        for v in vs[i + 1:]:
            if mode.multi or not p.adjacent(u, v):
                yield u, v


def worker_count() -> int:
    try:
        return max(1, int(os.environ.get("KSAT_THREADS", "1")))
    except ValueError:
        return 1


def is_saturated(p: Planarization, mode: Mode) -> SaturationReport:
    """Try every admissible vertex pair; saturated iff none admits a curve."""
    _require_k_plane(p, mode.k)
    pairs = list(_candidate_pairs(p, mode))
    counterexample = None
    workers = worker_count()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = pool.map(lambda uv: can_insert(p, uv[0], uv[1], mode), pairs)
            for (u, v), w in zip(pairs, results):
                if w is not None:
                    counterexample = (u, v, w)
                    break
    else:
        for u, v in pairs:
            w = can_insert(p, u, v, mode)
            if w is not None:
                counterexample = (u, v, w)
                break
    return SaturationReport(
        saturated=counterexample is None,
        counterexample=counterexample,
        free_cells=tuple(sorted(free_cells(p, mode.k))),
        saturated_edges=tuple(sorted(saturated_edges(p, mode.k))),
        mode=mode,
    )


# -- matching inequalities ----------------------------------------------------

#: coefficient of x_i in the cell-count inequality, by crossing cap
_PROFILE_COEFFS = {
    4: {0: 4, 1: 5, 2: 4, 3: 3, 4: 2},
    5: {0: 4, 1: 5, 2: 4, 3: 3, 4: 2, 5: 1},
}
_PROFILE_BOUND = 4


@dataclass(frozen=True)
class ProfileSolution:
    x: tuple[int, ...]
    non_degenerate: bool  # at least two edges
    parity_ok: bool       # total crossing passages is even
    realizable: bool      # partner degrees form a loopless multigraph

    @property
    def fully_feasible(self) -> bool:
        return self.non_degenerate and self.parity_ok and self.realizable


def enumerate_crossing_profiles(k: int) -> list[ProfileSolution]:
    """All nonnegative solutions of the matching cell inequality for k in {4,5}."""
    if k not in _PROFILE_COEFFS:
        raise UnsupportedK(f"no profile inequality tabulated for k={k}")
    coeffs = _PROFILE_COEFFS[k]
    sols = []

    def rec(i, budget, acc):
        if i > k:
            sols.append(tuple(acc))
            return
        c = coeffs[i]
        top = budget // c if c else 0
        for val in range(top + 1):
            rec(i + 1, budget - c * val, acc + [val])

    rec(0, _PROFILE_BOUND, [])
    out = []
    for x in sorted(sols, reverse=True):
        total = sum(x)
        weight = sum(i * v for i, v in enumerate(x))
        degrees = []
        for i, v in enumerate(x):
            degrees += [i] * v
        realizable = bool(degrees) and 2 * max(degrees, default=0) <= sum(degrees) \
            and sum(degrees) % 2 == 0
        out.append(ProfileSolution(
            x=x,
            non_degenerate=total >= 2,
            parity_ok=weight % 2 == 0,
            realizable=realizable,
        ))
    return out
