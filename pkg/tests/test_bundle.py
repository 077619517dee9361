"""Bundles over finite posets: construction, total space, classification."""

import pytest

from trusskit import (
    ClassificationError,
    DeltaDiagram,
    DeltaMap,
    DiagramError,
    DomainError,
    FinPoset,
    LabelCategory,
    LabelFunctor,
    Labeling,
    LabelingError,
    Ordinal,
    PosetMap,
    Stratum,
    arrow_poset,
    classify,
    point_poset,
    pullback_bundle,
    relabel,
    total_space,
    validate_labeling,
)
from trusskit.oracles import all_diagrams, random_diagram


def arrow_diagram(n, m, values):
    base = arrow_poset()
    return DeltaDiagram(
        base,
        {"0": Ordinal(n), "1": Ordinal(m)},
        {("0", "1"): DeltaMap(n, m, values)},
    )


def test_diagram_coverage_errors():
    base = arrow_poset()
    with pytest.raises(DiagramError):
        DeltaDiagram(base, {"0": Ordinal(1)}, {("0", "1"): DeltaMap.identity(1)})
    with pytest.raises(DiagramError):
        DeltaDiagram(base, {"0": Ordinal(1), "1": Ordinal(1)}, {})
    with pytest.raises(DiagramError):
        DeltaDiagram(
            base,
            {"0": Ordinal(1), "1": Ordinal(2)},
            {("0", "1"): DeltaMap.identity(1)},  # wrong endpoint shape
        )


def test_functoriality_no_diamond_counterexample():
    """Unequal-length Hasse paths with no commuting squares at all: a check
    that only inspects diamonds accepts any pair of conflicting composites
    here.  Construction must still fail."""
    base = FinPoset.from_covers(
        ["a", "x", "y", "z", "b"],
        [("a", "x"), ("x", "y"), ("y", "b"), ("a", "z"), ("z", "b")],
    )
    ords = {e: Ordinal(1) for e in base.elements}
    ident = DeltaMap.identity(1)
    collapse = DeltaMap(1, 1, (0, 0))
    arrows = {
        ("a", "x"): ident,
        ("x", "y"): ident,
        ("y", "b"): ident,
        ("a", "z"): ident,
        ("z", "b"): collapse,
    }
    with pytest.raises(DiagramError):
        DeltaDiagram(base, ords, arrows)
    # the agreeing assignment passes and exposes composite maps
    arrows[("z", "b")] = ident
    d = DeltaDiagram(base, ords, arrows)
    assert d.map_for("a", "b") == ident


def test_map_for_identity_and_composites():
    d = arrow_diagram(1, 2, (0, 2))
    assert d.map_for("0", "0") == DeltaMap.identity(1)
    assert d.map_for("0", "1") == DeltaMap(1, 2, (0, 2))
    with pytest.raises(DomainError):
        d.map_for("1", "0")


def test_total_space_of_point_is_fiber():
    d = DeltaDiagram(point_poset(), {"pt": Ordinal(2)}, {})
    t = total_space(d)
    assert len(t.carrier.elements) == 5
    assert t.projection(t.carrier.elements[0]) == "pt"
    assert len(t.fiber("pt")) == 5


def test_total_space_cross_relations_match_hom_clauses():
    d = arrow_diagram(1, 2, (0, 2))
    t = total_space(d)
    s0 = ("0", Stratum.singular(0, 1))
    assert t.carrier.le(s0, ("1", Stratum.singular(0, 2)))
    assert t.carrier.le(s0, ("1", Stratum.singular(1, 2)))
    assert t.carrier.le(s0, ("1", Stratum.regular(1, 2)))
    assert not t.carrier.le(("0", Stratum.regular(0, 1)), ("1", Stratum.regular(1, 2)))


def test_classify_roundtrip_samples():
    import random

    for base in (point_poset(), arrow_poset()):
        for d in all_diagrams(base, max_ordinal=2):
            assert classify(total_space(d)) == d
    rng = random.Random(7)
    chain = FinPoset.from_covers(["a", "b", "c"], [("a", "b"), ("b", "c")])
    for _ in range(10):
        d = random_diagram(chain, 3, rng)
        assert classify(total_space(d)) == d


def test_classify_rejects_non_bundle():
    el = ("pt", Stratum.regular(0, 1))
    p = FinPoset([el], [(el, el)])
    from trusskit import TotalPoset

    with pytest.raises(ClassificationError):
        classify(TotalPoset(p, point_poset()))


def test_pullback_identity_and_point():
    d = arrow_diagram(1, 2, (0, 2))
    assert pullback_bundle(d, PosetMap.identity(arrow_poset())) == d
    incl = PosetMap(point_poset(), arrow_poset(), {"pt": "1"})
    pulled = pullback_bundle(d, incl)
    assert pulled.ord["pt"] == Ordinal(2)
    assert pulled.arrow == {}
    with pytest.raises(DomainError):
        pullback_bundle(d, PosetMap.identity(point_poset()))


def test_pullback_commutes_with_total_space():
    d = arrow_diagram(1, 2, (0, 1))
    incl = PosetMap(point_poset(), arrow_poset(), {"pt": "0"})
    left = total_space(pullback_bundle(d, incl)).carrier
    fiber = total_space(d).fiber("0")
    assert sorted(str(e[1]) for e in left.elements) == sorted(str(e[1]) for e in fiber)


def test_label_category_from_poset_laws():
    p = FinPoset.from_covers(["a", "b", "c"], [("a", "b"), ("b", "c")])
    cat = LabelCategory.from_poset(p)
    assert set(cat.objects) == {"a", "b", "c"}
    assert cat.compose_pair("a<=b", "b<=c") == "a<=c"
    assert cat.hom("c", "a") == ()
    with pytest.raises(DomainError):
        cat.compose_pair("b<=c", "a<=b")


def test_label_category_validates_table():
    with pytest.raises(DomainError):
        LabelCategory(
            objects=["a"],
            morphisms=["id"],
            src={"id": "a"},
            dst={"id": "a"},
            identity={"a": "id"},
            compose={},  # misses id;id
        )


def test_labeling_checks_relations():
    p = FinPoset.from_covers(["a", "b", "c"], [("a", "b"), ("b", "c")])
    cat = LabelCategory.from_poset(p)
    dom = arrow_poset()
    lab = Labeling(dom, cat, {"0": "a", "1": "b"}, {("0", "1"): "a<=b"})
    assert lab.morphism_for("0", "1") == "a<=b"
    assert lab.morphism_for("0", "0") == "a<=a"
    with pytest.raises(LabelingError):
        Labeling(dom, cat, {"0": "a", "1": "b"}, {})
    with pytest.raises(LabelingError):
        Labeling(dom, cat, {"0": "a", "1": "b"}, {("0", "1"): "b<=c"})


def test_validate_labeling_reports():
    p = FinPoset.from_covers(["a", "b"], [("a", "b")])
    cat = LabelCategory.from_poset(p)
    lab = Labeling(arrow_poset(), cat, {"0": "a", "1": "b"}, {("0", "1"): "a<=b"})
    ok, problems = validate_labeling(lab, arrow_poset())
    assert ok and problems == []
    other = FinPoset.from_covers(["x"], [])
    ok, problems = validate_labeling(lab, other)
    assert not ok and problems


def test_relabel_along_functor():
    chain = FinPoset.from_covers(["a", "b"], [("a", "b")])
    cat = LabelCategory.from_poset(chain)
    term = LabelCategory.terminal()
    functor = LabelFunctor(
        cat,
        term,
        {"a": "*", "b": "*"},
        {m: "*<=*" for m in cat.morphisms},
    )
    lab = Labeling(arrow_poset(), cat, {"0": "a", "1": "b"}, {("0", "1"): "a<=b"})
    out = relabel(lab, functor)
    assert out.target == term
    assert out.on_objects == {"0": "*", "1": "*"}
