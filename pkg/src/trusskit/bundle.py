"""Truss bundles over finite posets.

A bundle is presented as a functor from a finite poset into the ordinal
category: an ordinal per element and a weakly increasing map per covering
relation.  Its total space is the poset of pairs (base element, stratum)
with (b, e) <= (b', e') exactly when b <= b' and some stratum morphism
e -> e' exists over the composite map of the base relation.  classify
recovers the functor from a total space, total_space being its inverse.
"""

from __future__ import annotations

from functools import lru_cache

from .errors import (
    ClassificationError,
    DiagramError,
    DomainError,
    LabelingError,
)
from .ordinal import DeltaMap, Ordinal, compose_delta
from .poset import FinPoset, PosetMap, element_sort_key
from .strata import Stratum, fiber_objects, validate_stratum_map


def functor_table(base: FinPoset, identity_at, cover_value, compose_pair):
    """Extend an assignment on covering relations to all related pairs.

    Processes targets along a linear extension; for a pair x < z every route
    (x -> y, then the cover y -> z) must give the same composite.  Checking
    all incoming covers of every pair is a complete functoriality test.
    Returns (table, diagnostics); a nonempty diagnostics list means failure
    and the table is only partial.
    """
    table = {}
    diagnostics = []
    for e in base.elements:
        table[(e, e)] = identity_at(e)
    for z in base.linear_extension():
        below = [x for x in base.elements if base.le(x, z) and x != z]
        incoming = base.covers_into(z)
        for x in below:
            value = None
            witness = None
            for (y, _) in incoming:
                if not base.le(x, y):
                    continue
                cand = compose_pair(table[(x, y)], cover_value((y, z)))
                if value is None:
                    value, witness = cand, y
                elif cand != value:
                    diagnostics.append(
                        f"composites from {x!r} to {z!r} disagree through {witness!r} and {y!r}"
                    )
                    break
            if value is None:
                diagnostics.append(f"no covering route from {x!r} to {z!r}")
                break
            table[(x, z)] = value
        if diagnostics:
            break
    return table, diagnostics


class DeltaDiagram:
    """A functor from a finite poset to ordinals and weakly increasing maps.

    ord maps each base element to an Ordinal; arrow maps each covering
    relation to a DeltaMap between the fiber ordinals.  Construction fails
    unless the covering data extends coherently to all related pairs.
    """

    def __init__(self, base: FinPoset, ord, arrow):
        self.base = base
        self.ord = {b: o if isinstance(o, Ordinal) else Ordinal(o) for b, o in dict(ord).items()}
        self.arrow = dict(arrow)
        if set(self.ord) != set(base.elements):
            raise DiagramError("ord must assign exactly the base elements")
        covers = set(base.covers())
        if set(self.arrow) != covers:
            missing = covers - set(self.arrow)
            extra = set(self.arrow) - covers
            raise DiagramError(
                f"arrow must assign exactly the covering relations"
                f" (missing {sorted(missing, key=element_sort_key)},"
                f" extra {sorted(extra, key=element_sort_key)})"
            )
        for (a, b), f in self.arrow.items():
            if f.src != self.ord[a] or f.dst != self.ord[b]:
                raise DiagramError(f"map on cover ({a!r}, {b!r}) is {f}, expected"
                                   f" {self.ord[a]}->{self.ord[b]}")
        table, diagnostics = functor_table(
            base,
            identity_at=lambda b: DeltaMap.identity(self.ord[b]),
            cover_value=lambda cov: self.arrow[cov],
            compose_pair=compose_delta,
        )
        if diagnostics:
            raise DiagramError(diagnostics[0])
        self._paths = table
        self._hash = hash((
            base,
            frozenset(self.ord.items()),
            frozenset(self.arrow.items()),
        ))

    def map_for(self, a, b) -> DeltaMap:
        """The composite map for any related pair a <= b."""
        try:
            return self._paths[(a, b)]
        except KeyError:
            raise DomainError(f"{a!r} and {b!r} are not related in the base") from None

    def __eq__(self, other):
        return (
            isinstance(other, DeltaDiagram)
            and self.base == other.base
            and self.ord == other.ord
            and self.arrow == other.arrow
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"DeltaDiagram(base={self.base!r}, ords={[o.n for _, o in sorted(self.ord.items(), key=lambda kv: element_sort_key(kv[0]))]})"


class TotalPoset:
    """The total space of a bundle, remembering the base it projects to."""

    def __init__(self, carrier: FinPoset, base: FinPoset):
        self.carrier = carrier
        self.base = base

    def projection(self, el):
        return el[0]

    def fiber(self, b) -> tuple:
        return tuple(e for e in self.carrier.elements if e[0] == b)

    def __eq__(self, other):
        return (
            isinstance(other, TotalPoset)
            and self.carrier == other.carrier
            and self.base == other.base
        )

    def __hash__(self):
        return hash((self.carrier, self.base))

    def __repr__(self):
        return f"TotalPoset({len(self.carrier.elements)} elements over {len(self.base.elements)})"


@lru_cache(maxsize=4096)
def total_space(d: DeltaDiagram) -> TotalPoset:
    """Pair every base element with its fiber positions; relate (a, e) and
    (b, e') when a <= b and e -> e' is valid over the composite map."""
    fibers = {b: fiber_objects(d.ord[b].n) for b in d.base.elements}
    elements = [(b, e) for b in d.base.elements for e in fibers[b]]
    leq = []
    for a, b in d.base.leq:
        f = d.map_for(a, b)
        for e in fibers[a]:
            for e2 in fibers[b]:
                if validate_stratum_map(e, e2, f):
                    leq.append(((a, e), (b, e2)))
    return TotalPoset(FinPoset(elements, leq), d.base)


def pullback_bundle(d: DeltaDiagram, f: PosetMap) -> DeltaDiagram:
    """Restrict d along a monotone map into its base; fibers are reused and
    covering maps are the composites between the images."""
    if f.dst != d.base:
        raise DomainError("pullback map must land in the diagram's base")
    return DeltaDiagram(
        f.src,
        {b: d.ord[f(b)] for b in f.src.elements},
        {cov: d.map_for(f(cov[0]), f(cov[1])) for cov in f.src.covers()},
    )


def classify(t: TotalPoset) -> DeltaDiagram:
    """Recover the bundle from its total space.

    The fiber ordinal over b has one fewer than its regular positions, and
    the map on a covering relation sends i to the unique j with
    (b, r_i) <= (b', r_j).  Fails if the fibers are not stratum zigzags, a
    regular position has no or several images, or the rebuilt bundle does
    not reproduce the total space.
    """
    fibers = {}
    for b in t.base.elements:
        fib = t.fiber(b)
        regs = [e for _, e in fib if isinstance(e, Stratum) and e.is_regular]
        if not regs:
            raise ClassificationError(f"fiber over {b!r} has no regular position")
        n = len(regs) - 1
        if tuple(e for _, e in fib) != fiber_objects(n):
            raise ClassificationError(f"fiber over {b!r} is not the zigzag over [{n}]")
        fibers[b] = n
    arrow = {}
    for a, b in t.base.covers():
        values = []
        for i in range(fibers[a] + 1):
            js = [
                e.index
                for _, e in t.fiber(b)
                if e.is_regular and t.carrier.le((a, Stratum.regular(i, fibers[a])), (b, e))
            ]
            if len(js) != 1:
                raise ClassificationError(
                    f"regular position {i} over {a!r} has {len(js)} images over {b!r}"
                )
            values.append(js[0])
        arrow[(a, b)] = DeltaMap(Ordinal(fibers[a]), Ordinal(fibers[b]), tuple(values))
    try:
        d = DeltaDiagram(t.base, {b: Ordinal(n) for b, n in fibers.items()}, arrow)
    except DiagramError as exc:
        raise ClassificationError(f"recovered data is not a bundle: {exc}") from exc
    if total_space(d) != t:
        raise ClassificationError("poset is not the total space of the recovered bundle")
    return d


class LabelCategory:
    """A finite category with an explicit, total composition table.

    Morphism entries are arbitrary hashables; compose[(f, g)] is "first f,
    then g" and must be defined for every composable pair.  Identities,
    unit laws and associativity are all checked on construction.
    """

    def __init__(self, objects, morphisms, src, dst, identity, compose):
        self.objects = tuple(objects)
        self.morphisms = tuple(morphisms)
        self.src = dict(src)
        self.dst = dict(dst)
        self.identity = dict(identity)
        self.compose = dict(compose)
        self._validate()
        self._hash = hash((
            frozenset(self.objects),
            frozenset(self.morphisms),
            frozenset(self.identity.items()),
            frozenset(self.compose.items()),
        ))

    def _validate(self):
        objs = set(self.objects)
        mors = set(self.morphisms)
        if len(objs) != len(self.objects) or len(mors) != len(self.morphisms):
            raise DomainError("duplicate objects or morphisms")
        for m in self.morphisms:
            if self.src.get(m) not in objs or self.dst.get(m) not in objs:
                raise DomainError(f"morphism {m!r} has no valid endpoints")
        for o in self.objects:
            i = self.identity.get(o)
            if i not in mors or self.src[i] != o or self.dst[i] != o:
                raise DomainError(f"object {o!r} has no identity morphism")
        for f in self.morphisms:
            for g in self.morphisms:
                if self.dst[f] != self.src[g]:
                    if (f, g) in self.compose:
                        raise DomainError(f"table composes non-composable {f!r}, {g!r}")
                    continue
                h = self.compose.get((f, g))
                if h not in mors:
                    raise DomainError(f"table misses the composite of {f!r}, {g!r}")
                if self.src[h] != self.src[f] or self.dst[h] != self.dst[g]:
                    raise DomainError(f"composite of {f!r}, {g!r} has wrong endpoints")
        for f in self.morphisms:
            if self.compose[(self.identity[self.src[f]], f)] != f:
                raise DomainError(f"left unit law fails at {f!r}")
            if self.compose[(f, self.identity[self.dst[f]])] != f:
                raise DomainError(f"right unit law fails at {f!r}")
        for (f, g), fg in self.compose.items():
            for h in self.morphisms:
                if self.src[h] != self.dst[g]:
                    continue
                if self.compose[(fg, h)] != self.compose[(f, self.compose[(g, h)])]:
                    raise DomainError(f"associativity fails on {f!r}, {g!r}, {h!r}")

    def compose_pair(self, f, g):
        try:
            return self.compose[(f, g)]
        except KeyError:
            raise DomainError(f"{f!r} and {g!r} do not compose") from None

    def hom(self, a, b) -> tuple:
        return tuple(m for m in self.morphisms if self.src[m] == a and self.dst[m] == b)

    @classmethod
    def from_poset(cls, p: FinPoset) -> "LabelCategory":
        """The thin category of a poset; morphism names are "a<=b" strings."""
        name = {(a, b): f"{a}<={b}" for a, b in p.leq}
        return cls(
            objects=p.elements,
            morphisms=[name[r] for r in sorted(p.leq, key=lambda r: (element_sort_key(r[0]), element_sort_key(r[1])))],
            src={name[(a, b)]: a for a, b in p.leq},
            dst={name[(a, b)]: b for a, b in p.leq},
            identity={a: name[(a, a)] for a in p.elements},
            compose={
                (name[(a, b)], name[(b2, c)]): name[(a, c)]
                for a, b in p.leq
                for b2, c in p.leq
                if b == b2
            },
        )

    @classmethod
    def terminal(cls) -> "LabelCategory":
        return cls.from_poset(FinPoset(["*"], [("*", "*")]))

    def __eq__(self, other):
        return (
            isinstance(other, LabelCategory)
            and set(self.objects) == set(other.objects)
            and set(self.morphisms) == set(other.morphisms)
            and self.src == other.src
            and self.dst == other.dst
            and self.identity == other.identity
            and self.compose == other.compose
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"LabelCategory({len(self.objects)} objects, {len(self.morphisms)} morphisms)"


class LabelFunctor:
    """A functor between label categories, given on objects and morphisms."""

    def __init__(self, src_cat: LabelCategory, dst_cat: LabelCategory, on_objects, on_morphisms):
        self.src_cat = src_cat
        self.dst_cat = dst_cat
        self.on_objects = dict(on_objects)
        self.on_morphisms = dict(on_morphisms)
        for o in src_cat.objects:
            if self.on_objects.get(o) not in set(dst_cat.objects):
                raise DomainError(f"functor undefined or invalid on object {o!r}")
        for m in src_cat.morphisms:
            fm = self.on_morphisms.get(m)
            if fm not in set(dst_cat.morphisms):
                raise DomainError(f"functor undefined or invalid on morphism {m!r}")
            if (
                dst_cat.src[fm] != self.on_objects[src_cat.src[m]]
                or dst_cat.dst[fm] != self.on_objects[src_cat.dst[m]]
            ):
                raise DomainError(f"functor breaks endpoints of {m!r}")
        for o in src_cat.objects:
            if self.on_morphisms[src_cat.identity[o]] != dst_cat.identity[self.on_objects[o]]:
                raise DomainError(f"functor breaks the identity at {o!r}")
        for (f, g), h in src_cat.compose.items():
            if dst_cat.compose_pair(self.on_morphisms[f], self.on_morphisms[g]) != self.on_morphisms[h]:
                raise DomainError(f"functor breaks the composite of {f!r}, {g!r}")


class Labeling:
    """A functor from a finite poset into a label category.

    Given on objects and on covering relations; composites along any two
    routes between the same pair must agree, which the constructor checks
    the same way DeltaDiagram does.
    """

    def __init__(self, domain: FinPoset, target: LabelCategory, on_objects, on_relations, check=True):
        self.domain = domain
        self.target = target
        self.on_objects = dict(on_objects)
        self.on_relations = dict(on_relations)
        self._paths = None
        if check:
            diagnostics = self._check()
            if diagnostics:
                raise LabelingError(diagnostics[0])
        self._hash = hash((
            domain,
            target,
            frozenset(self.on_objects.items()),
            frozenset(self.on_relations.items()),
        ))

    def _check(self):
        objs = set(self.target.objects)
        mors = set(self.target.morphisms)
        if set(self.on_objects) != set(self.domain.elements):
            return ["labels must cover exactly the domain elements"]
        covers = set(self.domain.covers())
        if set(self.on_relations) != covers:
            return ["relation labels must cover exactly the covering relations"]
        for b, o in self.on_objects.items():
            if o not in objs:
                return [f"label {o!r} of {b!r} is not an object"]
        for (a, b), m in self.on_relations.items():
            if m not in mors:
                return [f"label {m!r} of cover ({a!r}, {b!r}) is not a morphism"]
            if self.target.src[m] != self.on_objects[a] or self.target.dst[m] != self.on_objects[b]:
                return [f"label of cover ({a!r}, {b!r}) has wrong endpoints"]
        table, diagnostics = functor_table(
            self.domain,
            identity_at=lambda b: self.target.identity[self.on_objects[b]],
            cover_value=lambda cov: self.on_relations[cov],
            compose_pair=self.target.compose_pair,
        )
        if not diagnostics:
            self._paths = table
        return diagnostics

    def morphism_for(self, a, b):
        """The composite label of any related pair a <= b."""
        if self._paths is None:
            diagnostics = self._check()
            if diagnostics:
                raise LabelingError(diagnostics[0])
        try:
            return self._paths[(a, b)]
        except KeyError:
            raise DomainError(f"{a!r} and {b!r} are not related in the domain") from None

    def __eq__(self, other):
        return (
            isinstance(other, Labeling)
            and self.domain == other.domain
            and self.target == other.target
            and self.on_objects == other.on_objects
            and self.on_relations == other.on_relations
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Labeling({len(self.on_objects)} objects into {self.target!r})"


def validate_labeling(l: Labeling, t) -> tuple:
    """Check a labeling against a total space (or a bare poset for towers of
    depth zero).  Returns (ok, diagnostics) instead of raising."""
    carrier = t.carrier if isinstance(t, TotalPoset) else t
    if l.domain != carrier:
        return False, [f"labeling domain differs from the given poset"]
    diagnostics = l._check()
    return not diagnostics, diagnostics


def relabel(l: Labeling, functor: LabelFunctor) -> Labeling:
    """Push a labeling forward along a functor of label categories."""
    if functor.src_cat != l.target:
        raise DomainError("functor source differs from the labeling's category")
    return Labeling(
        l.domain,
        functor.dst_cat,
        {b: functor.on_objects[o] for b, o in l.on_objects.items()},
        {cov: functor.on_morphisms[m] for cov, m in l.on_relations.items()},
    )
