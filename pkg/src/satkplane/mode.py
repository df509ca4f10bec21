"""Verification regimes: crossing cap, simplicity level, multigraph flag."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Simplicity:
    kind: str  # "unrestricted" | "noself" | "lsimple"
    ell: int | None = None

    def __post_init__(self):
        if self.kind not in ("unrestricted", "noself", "lsimple"):
            raise ValueError(f"unknown simplicity kind {self.kind!r}")
        if self.kind == "lsimple" and (self.ell is None or self.ell < 1):
            raise ValueError("lsimple needs ell >= 1")

    def forbids_self_crossing(self) -> bool:
        return self.kind in ("noself", "lsimple")

    def pair_cap(self) -> int | None:
        """Max points two edges may share, endpoints included."""
        return self.ell if self.kind == "lsimple" else None

    def __str__(self):
        if self.kind == "lsimple":
            return f"{self.ell}-simple"
        return {"unrestricted": "unrestricted", "noself": "no-self-crossing"}[self.kind]


UNRESTRICTED = Simplicity("unrestricted")
NOSELF = Simplicity("noself")


def lsimple(ell: int) -> Simplicity:
    return Simplicity("lsimple", ell)


SIMPLE = lsimple(1)


@dataclass(frozen=True)
class Mode:
    k: int
    simplicity: Simplicity = UNRESTRICTED
    multi: bool = False

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("crossing cap k must be positive")

    def __str__(self):
        flavor = "multi" if self.multi else "simple"
        return f"{self.k}-plane/{self.simplicity}/{flavor}"
