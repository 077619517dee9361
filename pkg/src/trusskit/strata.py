"""The category of stratum positions over finite ordinals.

Objects are the strata of a 1-truss with n+1 regular levels: regular
positions r_i@n for 0 <= i <= n and singular positions s_i@n for
0 <= i < n.  A morphism over a weakly increasing map a: [n] -> [m] from a
position with index i to one with index j exists exactly when

    regular  -> regular :  a(i) = j
    singular -> singular:  a(i) <= j <  a(i+1)
    singular -> regular :  a(i) <= j <= a(i+1)
    regular  -> singular:  never

These constraints are closed under composition, so composing two valid
morphisms only needs the underlying maps composed and the result rechecked.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import DomainError, InternalError
from .ordinal import DeltaMap, compose_delta, enumerate_delta_maps
from .poset import FinPoset

REGULAR = "r"
SINGULAR = "s"


@dataclass(frozen=True)
class Stratum:
    """A regular or singular position in the fiber over the ordinal [n]."""

    kind: str
    index: int
    n: int

    def __post_init__(self):
        if self.kind not in (REGULAR, SINGULAR):
            raise DomainError(f"kind must be {REGULAR!r} or {SINGULAR!r}, got {self.kind!r}")
        if self.n < 0:
            raise DomainError(f"ambient ordinal must be nonnegative, got {self.n}")
        hi = self.n if self.kind == REGULAR else self.n - 1
        if not 0 <= self.index <= hi:
            raise DomainError(f"index {self.index} out of range for {self.kind}@{self.n}")

    @property
    def is_regular(self) -> bool:
        return self.kind == REGULAR

    @staticmethod
    def regular(i: int, n: int) -> "Stratum":
        return Stratum(REGULAR, i, n)

    @staticmethod
    def singular(i: int, n: int) -> "Stratum":
        return Stratum(SINGULAR, i, n)

    @staticmethod
    def parse(text: str) -> "Stratum":
        """Parse literals like "r0@2" or "s1@3"."""
        try:
            kind = text[0]
            i, n = text[1:].split("@")
            return Stratum(kind, int(i), int(n))
        except (IndexError, ValueError) as exc:
            raise DomainError(f"bad stratum literal {text!r}, expected e.g. 's0@1'") from exc

    def sort_key(self):
        return (self.kind, self.index, self.n)

    def __str__(self):
        return f"{self.kind}{self.index}@{self.n}"


@lru_cache(maxsize=1 << 18)
def validate_stratum_map(src: Stratum, dst: Stratum, alpha: DeltaMap) -> bool:
    """Whether alpha carries a morphism src -> dst.  The ambient ordinals of
    src and dst must match alpha's endpoints."""
    if alpha.src.n != src.n or alpha.dst.n != dst.n:
        raise DomainError(f"{alpha} does not run between the ambients of {src} and {dst}")
    i, j = src.index, dst.index
    if src.is_regular:
        return dst.is_regular and alpha(i) == j
    if dst.is_regular:
        return alpha(i) <= j <= alpha(i + 1)
    return alpha(i) <= j < alpha(i + 1)


@dataclass(frozen=True)
class StratumMap:
    """A valid morphism between stratum positions, over its underlying map."""

    src: Stratum
    dst: Stratum
    underlying: DeltaMap

    def __post_init__(self):
        if not validate_stratum_map(self.src, self.dst, self.underlying):
            raise DomainError(f"{self.underlying} carries no morphism {self.src} -> {self.dst}")

    def __str__(self):
        return f"{self.src} -> {self.dst} via {list(self.underlying.values)}"


def hom_strata(x: Stratum, y: Stratum) -> tuple:
    """All morphisms x -> y, ordered lexicographically by underlying values."""
    return tuple(
        StratumMap(x, y, a)
        for a in enumerate_delta_maps(x.n, y.n)
        if validate_stratum_map(x, y, a)
    )


def compose_strata(f: StratumMap, g: StratumMap) -> StratumMap:
    """First f, then g.  Validity of the composite is a closure property; its
    failure would mean corrupted inputs."""
    if f.dst != g.src:
        raise DomainError(f"cannot compose {f} before {g}")
    try:
        return StratumMap(f.src, g.dst, compose_delta(f.underlying, g.underlying))
    except DomainError as exc:
        raise InternalError(f"composite of valid morphisms invalid: {f}; {g}") from exc


def forget_to_delta(f: StratumMap) -> DeltaMap:
    """The underlying map; strictly functorial by construction."""
    return f.underlying


class FiberPoset(FinPoset):
    """A finite poset whose relations are realized by stratum morphisms."""


def fiber_objects(n: int) -> tuple:
    """The 2n+1 positions over [n], in canonical order."""
    regs = [Stratum.regular(i, n) for i in range(n + 1)]
    sings = [Stratum.singular(i, n) for i in range(n)]
    return tuple(regs + sings)


def fiber_over_ordinal(n: int) -> FiberPoset:
    """The fiber over [n]: the zigzag r_0 > s_0 < r_1 > ... < r_n, with
    s_i below both r_i and r_{i+1}."""
    objs = fiber_objects(n)
    ident = DeltaMap.identity(n)
    leq = [
        (x, y) for x in objs for y in objs if validate_stratum_map(x, y, ident)
    ]
    return FiberPoset(objs, leq)


def fiber_over_map(alpha: DeltaMap) -> FiberPoset:
    """Both fibers side by side, plus every cross relation realized by a
    morphism over alpha.  Elements are tagged ("src", x) and ("dst", y)."""
    src_objs = fiber_objects(alpha.src.n)
    dst_objs = fiber_objects(alpha.dst.n)
    id_src = DeltaMap.identity(alpha.src)
    id_dst = DeltaMap.identity(alpha.dst)
    elements = [("src", x) for x in src_objs] + [("dst", y) for y in dst_objs]
    leq = []
    for x in src_objs:
        for y in src_objs:
            if validate_stratum_map(x, y, id_src):
                leq.append((("src", x), ("src", y)))
    for x in dst_objs:
        for y in dst_objs:
            if validate_stratum_map(x, y, id_dst):
                leq.append((("dst", x), ("dst", y)))
    for x in src_objs:
        for y in dst_objs:
            if validate_stratum_map(x, y, alpha):
                leq.append((("src", x), ("dst", y)))
    return FiberPoset(elements, leq)


def factorization_poset(
    x: Stratum, z: Stratum, h: StratumMap, alpha: DeltaMap, beta: DeltaMap
) -> FiberPoset:
    """All middle positions y over alpha's target through which h factors as
    (x -> y over alpha) then (y -> z over beta), ordered as in the fiber.

    Since a morphism over a fixed underlying map either exists or not, a
    factorization is determined by the object it passes through.
    """
    if alpha.dst != beta.src:
        raise DomainError(f"{alpha} and {beta} do not compose")
    if h.src != x or h.dst != z:
        raise DomainError(f"{h} does not run from {x} to {z}")
    if h.underlying != compose_delta(alpha, beta):
        raise DomainError(f"{h} does not lie over the composite of {alpha} and {beta}")
    mid = alpha.dst.n
    ident = DeltaMap.identity(mid)
    objs = [
        y
        for y in fiber_objects(mid)
        if validate_stratum_map(x, y, alpha) and validate_stratum_map(y, z, beta)
    ]
    leq = [(a, b) for a in objs for b in objs if validate_stratum_map(a, b, ident)]
    return FiberPoset(objs, leq)
