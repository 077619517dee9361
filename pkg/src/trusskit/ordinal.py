"""Finite nonempty ordinals and weakly monotone maps.

Two arrow flavours live here: plain weakly increasing maps between the
ordinals [n] = {0, ..., n}, and endpoint-preserving weakly increasing maps
(the strict-interval side).  The two are exchanged by an explicit duality
given by counting preimages, implemented in both directions below.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import DomainError


@dataclass(frozen=True)
class Ordinal:
    """The ordinal [n] = {0, 1, ..., n}, so always nonempty."""

    n: int

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 0:
            raise DomainError(f"ordinal index must be a nonnegative int, got {self.n!r}")

    def __str__(self):
        return f"[{self.n}]"

    @property
    def size(self) -> int:
        return self.n + 1


def _as_ordinal(x) -> Ordinal:
    return x if isinstance(x, Ordinal) else Ordinal(x)


@dataclass(frozen=True)
class DeltaMap:
    """A weakly increasing map [src] -> [dst], stored as its value sequence."""

    src: Ordinal
    dst: Ordinal
    values: tuple

    def __post_init__(self):
        object.__setattr__(self, "src", _as_ordinal(self.src))
        object.__setattr__(self, "dst", _as_ordinal(self.dst))
        object.__setattr__(self, "values", tuple(self.values))
        vs = self.values
        if len(vs) != self.src.size:
            raise DomainError(f"map on {self.src} needs {self.src.size} values, got {len(vs)}")
        for v in vs:
            if not isinstance(v, int) or not 0 <= v <= self.dst.n:
                raise DomainError(f"value {v!r} outside {self.dst}")
        if any(vs[i] > vs[i + 1] for i in range(len(vs) - 1)):
            raise DomainError(f"values {vs} are not weakly increasing")

    def __call__(self, i: int) -> int:
        return self.values[i]

    def __str__(self):
        return f"{self.src}->{self.dst}:{list(self.values)}"

    @staticmethod
    def identity(n) -> "DeltaMap":
        n = _as_ordinal(n)
        return DeltaMap(n, n, tuple(range(n.size)))


@dataclass(frozen=True)
class NablaMap:
    """A weakly increasing endpoint-preserving map between ordinals of size >= 2."""

    src: Ordinal
    dst: Ordinal
    values: tuple

    def __post_init__(self):
        object.__setattr__(self, "src", _as_ordinal(self.src))
        object.__setattr__(self, "dst", _as_ordinal(self.dst))
        object.__setattr__(self, "values", tuple(self.values))
        if self.src.n < 1 or self.dst.n < 1:
            raise DomainError("interval maps need ordinals [n] with n >= 1")
        vs = self.values
        if len(vs) != self.src.size:
            raise DomainError(f"map on {self.src} needs {self.src.size} values, got {len(vs)}")
        for v in vs:
            if not isinstance(v, int) or not 0 <= v <= self.dst.n:
                raise DomainError(f"value {v!r} outside {self.dst}")
        if any(vs[i] > vs[i + 1] for i in range(len(vs) - 1)):
            raise DomainError(f"values {vs} are not weakly increasing")
        if vs[0] != 0 or vs[-1] != self.dst.n:
            raise DomainError(f"values {vs} do not preserve the endpoints of {self.dst}")

    def __call__(self, i: int) -> int:
        return self.values[i]

    def __str__(self):
        return f"{self.src}->{self.dst}:{list(self.values)} (interval)"

    @staticmethod
    def identity(n) -> "NablaMap":
        n = _as_ordinal(n)
        return NablaMap(n, n, tuple(range(n.size)))


def compose_delta(f: DeltaMap, g: DeltaMap) -> DeltaMap:
    """First f, then g."""
    if f.dst != g.src:
        raise DomainError(f"cannot compose {f} before {g}: middle ordinals differ")
    return DeltaMap(f.src, g.dst, tuple(g.values[v] for v in f.values))


def compose_nabla(f: NablaMap, g: NablaMap) -> NablaMap:
    """First f, then g.  Endpoint preservation is closed under composition."""
    if f.dst != g.src:
        raise DomainError(f"cannot compose {f} before {g}: middle ordinals differ")
    return NablaMap(f.src, g.dst, tuple(g.values[v] for v in f.values))


def enumerate_delta_maps(n, m) -> list:
    """All weakly increasing maps [n] -> [m], in lexicographic order.

    There are C(n+m+1, n+1) of them.
    """
    n, m = _as_ordinal(n), _as_ordinal(m)
    out = []
    for vs in itertools.combinations_with_replacement(range(m.size), n.size):
        out.append(DeltaMap(n, m, vs))
    return out


def enumerate_nabla_maps(n, m) -> list:
    """All endpoint-preserving weakly increasing maps [n] -> [m], lexicographic."""
    n, m = _as_ordinal(n), _as_ordinal(m)
    if n.n < 1 or m.n < 1:
        raise DomainError("interval maps need ordinals [n] with n >= 1")
    out = []
    for vs in itertools.combinations_with_replacement(range(m.size), n.size):
        if vs[0] == 0 and vs[-1] == m.n:
            out.append(NablaMap(n, m, vs))
    return out


def dual_delta_to_nabla(f: DeltaMap) -> NablaMap:
    """The dual of f: [n] -> [m] is the interval map [m+1] -> [n+1] with

        j  |->  #{ i : f(i) < j }.

    It sends 0 to 0 and m+1 to n+1, so it preserves endpoints.
    """
    vals = tuple(sum(1 for v in f.values if v < j) for j in range(f.dst.n + 2))
    return NablaMap(Ordinal(f.dst.n + 1), Ordinal(f.src.n + 1), vals)


def dual_nabla_to_delta(g: NablaMap) -> DeltaMap:
    """Inverse of dual_delta_to_nabla: for g: [m+1] -> [n+1] the dual
    [n] -> [m] sends i to #{ j in {1, ..., m+1} : g(j) <= i }.
    """
    n, m = g.dst.n - 1, g.src.n - 1
    vals = tuple(
        sum(1 for j in range(1, g.src.n + 1) if g.values[j] <= i) for i in range(n + 1)
    )
    return DeltaMap(Ordinal(n), Ordinal(m), vals)
