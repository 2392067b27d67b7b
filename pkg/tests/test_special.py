"""Union-of-components structure: tags, classification, transposes, apply."""

import pytest

from fuzzymaps import (
    CM,
    ComponentCountMismatch,
    DOMAIN_SIDE,
    RANGE_SIDE,
    RM,
    ComponentTag,
    EmptyUnion,
    Matrix,
    NonSquareCM,
    Scalar,
    ShapeMismatch,
    SpecialStateVector,
    ValueDomain,
    make_special,
    make_state,
    other_side,
    parse_scalar,
    plain_transpose,
    render_part,
    special_apply,
    special_apply_mixed,
    special_transpose,
)

TRI = ValueDomain.TRI
UNIT = ValueDomain.UNIT


def tri(rows):
    return Matrix.from_rows([[Scalar(v) for v in r] for r in rows],
                            domain=TRI)


def sq(n, fill=0):
    return tri([[fill] * n for _ in range(n)])


def rect(r, c):
    return tri([[0] * c for _ in range(r)])


# ---------------------------------------------------------------------- tags

def test_tag_defaults():
    t = ComponentTag()
    assert t.kind == CM
    assert t.algebra == "fuzzy"
    assert t.op == "circle"


def test_tag_validation():
    with pytest.raises(ValueError):
        ComponentTag(kind="XY")
    with pytest.raises(ValueError):
        ComponentTag(algebra="classical")
    with pytest.raises(ValueError):
        ComponentTag(op="convolve")


def test_other_side():
    assert other_side(DOMAIN_SIDE) == RANGE_SIDE
    assert other_side(RANGE_SIDE) == DOMAIN_SIDE


# -------------------------------------------------------------- construction

def test_empty_union_rejected():
    with pytest.raises(EmptyUnion):
        make_special([])


def test_cm_component_must_be_square():
    with pytest.raises(NonSquareCM):
        make_special([(rect(2, 3), ComponentTag())])


def test_rm_component_any_shape():
    s = make_special([(rect(2, 3), ComponentTag(kind=RM))])
    assert len(s) == 1


# ------------------------------------------------------------- classification

def test_classification_table():
    cm = ComponentTag()
    ncm = ComponentTag(algebra="neutrosophic")
    rm = ComponentTag(kind=RM)
    nrm = ComponentTag(kind=RM, algebra="neutrosophic")
    cases = [
        ([(sq(3), cm), (sq(3), cm)], "special fuzzy square"),
        ([(sq(3), cm), (sq(4), cm)], "special fuzzy mixed square"),
        ([(sq(3), ncm), (sq(3), ncm)], "special neutrosophic square"),
        ([(sq(3), cm), (sq(4), ncm)],
         "special fuzzy and neutrosophic mixed square"),
        ([(rect(2, 3), rm), (rect(2, 3), rm)], "special fuzzy rectangular"),
        ([(rect(2, 3), rm), (rect(4, 2), nrm)],
         "special fuzzy and neutrosophic mixed rectangular"),
        ([(sq(3), cm), (rect(2, 3), rm)], "special fuzzy mixed matrix"),
        ([(sq(3), ncm), (rect(2, 3), nrm)],
         "special neutrosophic mixed matrix"),
        ([(sq(3), cm), (rect(2, 3), nrm)],
         "special fuzzy and neutrosophic mixed matrix"),
    ]
    for comps, want in cases:
        assert make_special(comps).classification == want


# ------------------------------------------------------------------ transpose

def test_plain_transpose_each_slot():
    s = make_special([(sq(3), ComponentTag()),
                      (rect(7, 2), ComponentTag(kind=RM)),
                      (sq(4), ComponentTag()),
                      (rect(3, 6), ComponentTag(kind=RM)),
                      (rect(6, 5), ComponentTag(kind=RM))])
    t = plain_transpose(s)
    assert [m.shape for m in t.matrices] == [(3, 3), (2, 7), (4, 4), (6, 3),
                                             (5, 6)]
    # tags ride along unchanged
    assert [g.kind for g in t.tags] == [CM, RM, CM, RM, RM]


def test_special_transpose_matches_plain_for_shapes():
    s = make_special([(rect(2, 3), ComponentTag(kind=RM)),
                      (rect(4, 1), ComponentTag(kind=RM))])
    assert [m.shape for m in special_transpose(s).matrices] == [(3, 2),
                                                                (1, 4)]


def test_transpose_involution_on_union():
    s = make_special([(tri([[0, 1], [-1, 0]]), ComponentTag()),
                      (tri([[1, 0, -1]]), ComponentTag(kind=RM))])
    back = special_transpose(special_transpose(s))
    assert back.matrices == s.matrices
    assert back.tags == s.tags


# --------------------------------------------------------------------- states

def test_make_state_and_render():
    x = make_state([[Scalar(0), Scalar(1)], [Scalar(1)]], side=DOMAIN_SIDE)
    assert isinstance(x, SpecialStateVector)
    assert x.side == DOMAIN_SIDE
    assert render_part(x.parts[0]) == "[0 1]"
    assert render_part((parse_scalar("I"), Scalar(0.5))) == "[I 0.5]"


# ---------------------------------------------------------------------- apply

def test_special_apply_cm_keeps_side():
    m = make_special([(tri([[0, 1], [1, 0]]), ComponentTag())])
    x = make_state([[Scalar(1), Scalar(0)]])
    y = special_apply(x, m, "circle")
    assert y.side == DOMAIN_SIDE
    assert y.parts[0] == (Scalar(0), Scalar(1))


def test_special_apply_rm_flips_side():
    m = make_special([(tri([[1, 0, 1], [0, 1, 0]]), ComponentTag(kind=RM))])
    x = make_state([[Scalar(1), Scalar(0)]], side=DOMAIN_SIDE)
    y = special_apply(x, m, "circle")
    assert y.side == RANGE_SIDE
    assert y.parts[0] == (Scalar(1), Scalar(0), Scalar(1))
    # the return trip runs against the transposed union
    back = special_apply(y, special_transpose(m), "circle")
    assert back.side == DOMAIN_SIDE
    assert len(back.parts[0]) == 2


def test_apply_checks_component_count_and_length():
    m = make_special([(sq(2), ComponentTag())])
    with pytest.raises(ComponentCountMismatch):
        special_apply(make_state([[Scalar(0), Scalar(1)], [Scalar(1)]]),
                      m, "circle")
    with pytest.raises(ShapeMismatch):
        special_apply(make_state([[Scalar(0), Scalar(1), Scalar(1)]]),
                      m, "circle")


def test_union_slots_do_not_interact():
    a = tri([[0, 1], [1, 0]])
    b = tri([[0, -1], [-1, 0]])
    joint = special_apply(
        make_state([[Scalar(1), Scalar(0)], [Scalar(1), Scalar(0)]]),
        make_special([(a, ComponentTag()), (b, ComponentTag())]), "circle")
    alone0 = special_apply(make_state([[Scalar(1), Scalar(0)]]),
                           make_special([(a, ComponentTag())]), "circle")
    alone1 = special_apply(make_state([[Scalar(1), Scalar(0)]]),
                           make_special([(b, ComponentTag())]), "circle")
    assert joint.parts[0] == alone0.parts[0]
    assert joint.parts[1] == alone1.parts[0]


def test_special_apply_mixed_one_step():
    # one circle square, one maxmin membership square - levels stay raw
    c = tri([[0, 1, 0], [0, 0, 1], [1, 0, 0]])
    m = Matrix.from_rows(
        [[Scalar(v) for v in row]
         for row in [[0.2, 0.9, 0.1], [0.8, 0.1, 0.5], [0.3, 0.3, 0.7]]],
        domain=UNIT)
    s = make_special([(c, ComponentTag()),
                      (m, ComponentTag(op="maxmin"))])
    x = make_state([[Scalar(1), Scalar(0), Scalar(0)],
                    [Scalar(0.5), Scalar(1), Scalar(0)]])
    y = special_apply_mixed(x, s)
    assert y.parts[0] == (Scalar(0), Scalar(1), Scalar(0))
    # maxmin row: max(min(.5,.2),min(1,.8),min(0,.3)) etc.
    assert y.parts[1] == (Scalar(0.8), Scalar(0.5), Scalar(0.5))
