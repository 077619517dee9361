"""Labelled truss towers and their bordisms.

A tower of depth n stacks n bundles: the first lives over the tower's base,
each later one over the total space of the one before, and the labels form a
functor from the topmost total space into a label category.  A bordism is a
tower whose root base is the walking arrow; composing two of them glues
their data over the chain {0 < 1 < 2} and restricts back to the arrow,
routing every crossing composite through a middle element chosen in the
factorization poset (and checking that every other choice agrees).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    CompositionError,
    DiagramError,
    DomainError,
    InternalError,
    PackingError,
)
from .ordinal import DeltaMap, Ordinal, compose_delta
from .poset import (
    POINT_ELEMENT,
    FinPoset,
    PosetMap,
    arrow_poset,
    path_poset,
    point_poset,
)
from .bundle import DeltaDiagram, LabelCategory, Labeling, total_space


def root_of(el):
    """The root base element under an iterated total-space element."""
    while isinstance(el, tuple):
        el = el[0]
    return el


class TrussTower:
    """A chain of bundles, each over the previous total space, plus labels."""

    def __init__(self, base: FinPoset, stages, labels: Labeling):
        self.base = base
        self.stages = tuple(stages)
        self.labels = labels
        expected = base
        totals = []
        for k, d in enumerate(self.stages):
            if d.base != expected:
                raise DomainError(f"stage {k + 1} does not live over the previous total space")
            tot = total_space(d)
            totals.append(tot)
            expected = tot.carrier
        self.totals = tuple(totals)
        self.top = expected
        if labels.domain != self.top:
            raise DomainError("labels must be a functor on the topmost total space")
        self._hash = hash((self.base, self.stages, self.labels))

    @property
    def depth(self) -> int:
        return len(self.stages)

    def __eq__(self, other):
        return (
            isinstance(other, TrussTower)
            and self.base == other.base
            and self.stages == other.stages
            and self.labels == other.labels
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"TrussTower(depth={self.depth}, top={len(self.top.elements)} elements)"


class Bordism(TrussTower):
    """A tower over the walking arrow; its endpoint restrictions are towers
    over the point."""

    def __init__(self, base, stages, labels):
        if base != arrow_poset():
            raise DomainError("a bordism's root base must be the arrow poset")
        super().__init__(base, stages, labels)
        self._ends = {}

    def end(self, which: int) -> TrussTower:
        if which not in self._ends:
            self._ends[which] = restrict_bordism(self, which)
        return self._ends[which]


@dataclass(frozen=True)
class PackedTower:
    """A tower one level shallower whose labels are fiber trusses and cover
    bordisms in a synthesized truss category."""

    tower: TrussTower

    @property
    def depth(self) -> int:
        return self.tower.depth


@dataclass(frozen=True)
class CompositionAudit:
    """How many crossing composites were formed and how many factorization
    choices were checked to agree while composing two bordisms."""

    crossings: int
    alternatives: int


def pullback_tower(t: TrussTower, f: PosetMap) -> TrussTower:
    """Restrict a tower stagewise along a monotone map into its base."""
    if f.dst != t.base:
        raise DomainError("pullback map must land in the tower's base")
    cur_base = f.src
    cur_map = dict(f.mapping)
    stages = []
    for d in t.stages:
        pm = PosetMap(cur_base, d.base, cur_map)
        ords = {b: d.ord[pm(b)] for b in cur_base.elements}
        arrows = {cov: d.map_for(pm(cov[0]), pm(cov[1])) for cov in cur_base.covers()}
        d2 = DeltaDiagram(cur_base, ords, arrows)
        stages.append(d2)
        carrier = total_space(d2).carrier
        cur_map = {(b, e): (cur_map[b], e) for (b, e) in carrier.elements}
        cur_base = carrier
    labels = Labeling(
        cur_base,
        t.labels.target,
        {x: t.labels.on_objects[cur_map[x]] for x in cur_base.elements},
        {(u, v): t.labels.morphism_for(cur_map[u], cur_map[v]) for (u, v) in cur_base.covers()},
    )
    return TrussTower(f.src, stages, labels)


def restrict_bordism(b: TrussTower, end: int) -> TrussTower:
    """The tower over the point sitting at one end of a bordism."""
    if end not in (0, 1):
        raise DomainError("end must be 0 or 1")
    incl = PosetMap(point_poset(), arrow_poset(), {POINT_ELEMENT: str(end)})
    return pullback_tower(b, incl)


def identity_bordism(t: TrussTower) -> Bordism:
    """Pull a tower over the point back along the collapse of the arrow."""
    if t.base != point_poset():
        raise DomainError("identity bordisms are formed on towers over the point")
    collapse = PosetMap(arrow_poset(), point_poset(), {"0": POINT_ELEMENT, "1": POINT_ELEMENT})
    pb = pullback_tower(t, collapse)
    return Bordism(pb.base, pb.stages, pb.labels)


def _retag(el, rootmap):
    if isinstance(el, tuple):
        return (_retag(el[0], rootmap), el[1])
    return rootmap[el]


def _glue(b1: TrussTower, b2: TrussTower) -> TrussTower:
    """Lay two boundary-matched bordisms side by side over {0 < 1 < 2}."""
    sides = ((b1, {"0": "0", "1": "1"}), (b2, {"0": "1", "1": "2"}))
    base = path_poset()
    stages = []
    for k in range(b1.depth):
        ords = {}
        arrows = {}
        for side, rmap in sides:
            d = side.stages[k]
            for el, o in d.ord.items():
                g = _retag(el, rmap)
                if ords.setdefault(g, o) != o:
                    raise InternalError("glued bordisms disagree on a shared fiber ordinal")
            for cov, m in d.arrow.items():
                g = (_retag(cov[0], rmap), _retag(cov[1], rmap))
                if arrows.setdefault(g, m) != m:
                    raise InternalError("glued bordisms disagree on a shared covering map")
        if set(ords) != set(base.elements):
            raise InternalError("glued stage base does not match the expected total space")
        if set(arrows) != set(base.covers()):
            raise InternalError("a covering relation of the glued base crosses the seam")
        d_g = DeltaDiagram(base, ords, arrows)
        stages.append(d_g)
        base = total_space(d_g).carrier
    if b1.labels.target != b2.labels.target:
        raise CompositionError("bordisms are labelled in different categories")
    on_obj = {}
    on_rel = {}
    for side, rmap in sides:
        for el, o in side.labels.on_objects.items():
            g = _retag(el, rmap)
            if on_obj.setdefault(g, o) != o:
                raise InternalError("glued bordisms disagree on a shared label")
        for cov, m in side.labels.on_relations.items():
            g = (_retag(cov[0], rmap), _retag(cov[1], rmap))
            if on_rel.setdefault(g, m) != m:
                raise InternalError("glued bordisms disagree on a shared relation label")
    if set(on_rel) != set(base.covers()):
        raise InternalError("a top covering relation of the glued tower crosses the seam")
    labels = Labeling(base, b1.labels.target, on_obj, on_rel)
    return TrussTower(path_poset(), stages, labels)


def _via_middles(poset: FinPoset, a, b, compute):
    """Evaluate a crossing composite through the canonical factorization
    middle (minimum if present, else maximum, else first in canonical
    order) and confirm every other middle gives the same answer."""
    mids = [
        y for y in poset.elements
        if root_of(y) == "1" and poset.le(a, y) and poset.le(y, b)
    ]
    if not mids:
        raise InternalError(f"empty factorization middle set between {a!r} and {b!r}")
    sub = poset.subposet(mids)
    pick = sub.minimum()
    if pick is None:
        pick = sub.maximum()
    if pick is None:
        pick = sub.elements[0]
    value = compute(pick)
    for y in mids:
        if y != pick and compute(y) != value:
            raise InternalError(f"factorization middles {pick!r} and {y!r} disagree")
    return value, len(mids)


def compose_bordisms_audited(b1: TrussTower, b2: TrussTower):
    """Compose two bordisms; returns (composite, audit).

    The data is glued over {0 < 1 < 2} and restricted along the inclusion of
    the outer arrow {0 < 2}; every composite that crosses the seam is formed
    through a factorization middle, and all other middles are checked to
    give the same map and the same label.
    """
    if b1.base != arrow_poset() or b2.base != arrow_poset():
        raise CompositionError("both arguments must be bordisms over the arrow poset")
    if b1.depth != b2.depth:
        raise CompositionError("bordisms of different depth do not compose")
    left_end = b1.end(1) if isinstance(b1, Bordism) else restrict_bordism(b1, 1)
    right_end = b2.end(0) if isinstance(b2, Bordism) else restrict_bordism(b2, 0)
    if left_end != right_end:
        raise CompositionError("bordism endpoints do not match")
    glued = _glue(b1, b2)
    crossings = 0
    alternatives = 0
    cur_base = arrow_poset()
    cur_map = {"0": "0", "1": "2"}
    stages = []
    for d_g in glued.stages:
        ords = {x: d_g.ord[cur_map[x]] for x in cur_base.elements}
        arrows = {}
        for (u, v) in cur_base.covers():
            a, b = cur_map[u], cur_map[v]
            if (a, b) in d_g.arrow:
                arrows[(u, v)] = d_g.arrow[(a, b)]
            else:
                val, n_mids = _via_middles(
                    d_g.base, a, b,
                    lambda y: compose_delta(d_g.map_for(a, y), d_g.map_for(y, b)),
                )
                arrows[(u, v)] = val
                crossings += 1
                alternatives += n_mids
        d_r = DeltaDiagram(cur_base, ords, arrows)
        stages.append(d_r)
        carrier = total_space(d_r).carrier
        cur_map = {(x, e): (cur_map[x], e) for (x, e) in carrier.elements}
        cur_base = carrier
    cat = glued.labels.target
    on_obj = {x: glued.labels.on_objects[cur_map[x]] for x in cur_base.elements}
    on_rel = {}
    for (u, v) in cur_base.covers():
        a, b = cur_map[u], cur_map[v]
        if (a, b) in glued.labels.on_relations:
            on_rel[(u, v)] = glued.labels.on_relations[(a, b)]
        else:
            val, n_mids = _via_middles(
                glued.top, a, b,
                lambda y: cat.compose_pair(
                    glued.labels.morphism_for(a, y), glued.labels.morphism_for(y, b)
                ),
            )
            on_rel[(u, v)] = val
            crossings += 1
            alternatives += n_mids
    labels = Labeling(cur_base, cat, on_obj, on_rel)
    composite = Bordism(arrow_poset(), stages, labels)
    return composite, CompositionAudit(crossings, alternatives)


def compose_bordisms(b1: TrussTower, b2: TrussTower) -> Bordism:
    """First b1, then b2."""
    return compose_bordisms_audited(b1, b2)[0]


def _fiber_truss(last: DeltaDiagram, labels: Labeling, x) -> TrussTower:
    """The labelled depth-1 truss sitting over one element of the last base."""
    pt = point_poset()
    d = DeltaDiagram(pt, {POINT_ELEMENT: last.ord[x]}, {})
    carrier = total_space(d).carrier
    lab = Labeling(
        carrier,
        labels.target,
        {(POINT_ELEMENT, e): labels.on_objects[(x, e)] for (_, e) in carrier.elements},
        {
            ((POINT_ELEMENT, e), (POINT_ELEMENT, e2)): labels.on_relations[((x, e), (x, e2))]
            for ((_, e), (_, e2)) in carrier.covers()
        },
    )
    return TrussTower(pt, (d,), lab)


def _cover_bordism(last: DeltaDiagram, labels: Labeling, cov) -> Bordism:
    """The labelled depth-1 bordism sitting over one covering relation."""
    x, y = cov
    ab = arrow_poset()
    d = DeltaDiagram(ab, {"0": last.ord[x], "1": last.ord[y]}, {("0", "1"): last.arrow[cov]})
    carrier = total_space(d).carrier
    lift = {"0": x, "1": y}
    lab = Labeling(
        carrier,
        labels.target,
        {(t0, e): labels.on_objects[(lift[t0], e)] for (t0, e) in carrier.elements},
        {
            ((t0, e), (t1, e2)): labels.on_relations[((lift[t0], e), (lift[t1], e2))]
            for ((t0, e), (t1, e2)) in carrier.covers()
        },
    )
    return Bordism(ab, (d,), lab)


def truss_label_category(objects, generators) -> LabelCategory:
    """The finite category generated by labelled trusses, their identity
    bordisms and the given generators, closed under composition."""
    objs = list(dict.fromkeys(objects))
    idents = {o: identity_bordism(o) for o in objs}
    morphisms = list(dict.fromkeys(list(idents.values()) + list(generators)))
    src = {}
    dst = {}
    known = set(objs)
    for m in morphisms:
        src[m] = restrict_bordism(m, 0)
        dst[m] = restrict_bordism(m, 1)
        if src[m] not in known or dst[m] not in known:
            raise PackingError("a generator's endpoint is not among the objects")
    compose = {}
    changed = True
    while changed:
        changed = False
        for f in list(morphisms):
            for g in list(morphisms):
                if dst[f] != src[g] or (f, g) in compose:
                    continue
                h = compose_bordisms(f, g)
                compose[(f, g)] = h
                if h not in src:
                    morphisms.append(h)
                    src[h] = restrict_bordism(h, 0)
                    dst[h] = restrict_bordism(h, 1)
                    changed = True
    return LabelCategory(
        objects=objs,
        morphisms=morphisms,
        src=src,
        dst=dst,
        identity=idents,
        compose=compose,
    )


def pack(t: TrussTower) -> PackedTower:
    """Trade the last stage for labels: each element of its base becomes a
    labelled fiber truss, each covering relation a cover bordism, and the
    label category is synthesized by closing these under composition."""
    if t.depth < 1:
        raise PackingError("pack needs a tower of depth at least 1")
    last = t.stages[-1]
    dom = last.base
    fibers = {x: _fiber_truss(last, t.labels, x) for x in dom.elements}
    gens = {cov: _cover_bordism(last, t.labels, cov) for cov in dom.covers()}
    cat = truss_label_category(fibers.values(), gens.values())
    lab = Labeling(dom, cat, fibers, gens)
    return PackedTower(TrussTower(t.base, t.stages[:-1], lab))


def unpack(p: PackedTower) -> TrussTower:
    """Inverse of pack: read the last stage's ordinals, covering maps and
    labels back out of the fiber-truss labels."""
    t = p.tower
    lab = t.labels
    dom = lab.domain
    if not dom.elements:
        raise PackingError("cannot unpack over an empty base")
    for x in dom.elements:
        obj = lab.on_objects[x]
        if not isinstance(obj, TrussTower) or obj.depth != 1 or obj.base != point_poset():
            raise PackingError(f"label of {x!r} is not a depth-1 truss over the point")
    cat = lab.on_objects[dom.elements[0]].labels.target
    if any(lab.on_objects[x].labels.target != cat for x in dom.elements):
        raise PackingError("fiber trusses are labelled in different categories")
    ords = {x: lab.on_objects[x].stages[0].ord[POINT_ELEMENT] for x in dom.elements}
    arrows = {}
    for cov in dom.covers():
        x, y = cov
        g = lab.on_relations[cov]
        if not isinstance(g, TrussTower) or g.depth != 1 or g.base != arrow_poset():
            raise PackingError(f"label of cover ({x!r}, {y!r}) is not a depth-1 bordism")
        if restrict_bordism(g, 0) != lab.on_objects[x] or restrict_bordism(g, 1) != lab.on_objects[y]:
            raise PackingError(f"cover bordism on ({x!r}, {y!r}) does not restrict to its endpoints")
        arrows[cov] = g.stages[0].arrow[("0", "1")]
    try:
        d_last = DeltaDiagram(dom, ords, arrows)
    except DiagramError as exc:
        raise PackingError(f"fiber labels do not assemble into a bundle: {exc}") from exc
    carrier = total_space(d_last).carrier
    on_obj = {}
    on_rel = {}
    for (x, e) in carrier.elements:
        on_obj[(x, e)] = lab.on_objects[x].labels.on_objects[(POINT_ELEMENT, e)]
    for ((x, e), (y, e2)) in carrier.covers():
        if x == y:
            on_rel[((x, e), (y, e2))] = lab.on_objects[x].labels.on_relations[
                ((POINT_ELEMENT, e), (POINT_ELEMENT, e2))
            ]
        else:
            g = lab.on_relations[(x, y)]
            on_rel[((x, e), (y, e2))] = g.labels.on_relations[(("0", e), ("1", e2))]
    labels = Labeling(carrier, cat, on_obj, on_rel)
    return TrussTower(t.base, t.stages + (d_last,), labels)


def constant_inclusion(data, label, cat: LabelCategory):
    """Constant towers and bordisms.

    A list of ordinals with an object label gives the tower over the point
    whose stages are constant with identity maps; a list of maps with a
    morphism label gives the bordism whose stage k is constant at the k-th
    map.  Depth 0 is allowed with an empty list.
    """
    entries = list(data)
    if entries and all(isinstance(e, DeltaMap) for e in entries):
        as_bordism = True
    elif all(isinstance(e, (int, Ordinal)) for e in entries):
        as_bordism = False
        if not entries:
            if label in set(cat.objects):
                as_bordism = False
            elif label in set(cat.morphisms):
                as_bordism = True
            else:
                raise DomainError(f"{label!r} is neither an object nor a morphism")
    else:
        raise DomainError("data must be all ordinals or all maps")
    if not as_bordism:
        if label not in set(cat.objects):
            raise DomainError(f"{label!r} is not an object of the label category")
        cur = point_poset()
        stages = []
        for n in entries:
            n = n if isinstance(n, Ordinal) else Ordinal(n)
            d = DeltaDiagram(
                cur,
                {el: n for el in cur.elements},
                {cov: DeltaMap.identity(n) for cov in cur.covers()},
            )
            stages.append(d)
            cur = total_space(d).carrier
        ident = cat.identity[label]
        lab = Labeling(cur, cat, {el: label for el in cur.elements}, {cov: ident for cov in cur.covers()})
        return TrussTower(point_poset(), stages, lab)
    if label not in set(cat.morphisms):
        raise DomainError(f"{label!r} is not a morphism of the label category")
    c0, c1 = cat.src[label], cat.dst[label]
    cur = arrow_poset()
    stages = []
    for m in entries:
        ords = {el: (m.src if root_of(el) == "0" else m.dst) for el in cur.elements}
        arrows = {}
        for (u, v) in cur.covers():
            r0, r1 = root_of(u), root_of(v)
            if r0 == r1:
                arrows[(u, v)] = DeltaMap.identity(m.src if r0 == "0" else m.dst)
            else:
                arrows[(u, v)] = m
        d = DeltaDiagram(cur, ords, arrows)
        stages.append(d)
        cur = total_space(d).carrier
    id0, id1 = cat.identity[c0], cat.identity[c1]
    on_obj = {el: (c0 if root_of(el) == "0" else c1) for el in cur.elements}
    on_rel = {}
    for (u, v) in cur.covers():
        r0, r1 = root_of(u), root_of(v)
        if r0 == r1:
            on_rel[(u, v)] = id0 if r0 == "0" else id1
        else:
            on_rel[(u, v)] = label
    lab = Labeling(cur, cat, on_obj, on_rel)
    return Bordism(arrow_poset(), stages, lab)
