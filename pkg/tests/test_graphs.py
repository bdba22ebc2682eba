import math
from fractions import Fraction

import pytest

from gapscope.errors import ConsistencyError, DegenerateOrbitError
from gapscope.gaps import gap_report, orbit
from gapscope.graphs import (
    GAP,
    LEFT_SLOT,
    RIGHT_SLOT,
    boshernitzan_bound_check,
    case_table_bound,
    classify_ghost_case,
    fgaps_build,
    gap_lengths_from_forest,
    ggaps_build,
    glue_forest,
    outdegree_identity_check,
    verify_forest_lengths,
)
from gapscope.iet import Iet, random_iet


def orbit_points(T, n):
    seg = orbit(T, n)
    return {k: float(seg[k]) for k in range(n)}


# ---------------------------------------------------------------------------
# The weighted digraph
# ---------------------------------------------------------------------------


def test_ggaps_rotation_level_nine():
    G = ggaps_build(Iet.rotation("sqrt(1/2)"), 9)
    assert G.num_vertices == 9
    assert G.num_edges - G.num_vertices <= 1  # d - 1 for a rotation
    assert not G.has_distinct_cycle()
    assert abs(math.fsum(G.weights) - 1.0) < 1e-12


def test_ggaps_demo_iet(demo_iet):
    G = ggaps_build(demo_iet, 8)
    assert G.num_vertices == 8
    assert G.num_edges - G.num_vertices <= 2


def test_ggaps_minimal_segment():
    G = ggaps_build(Iet.rotation(0.3), 2)
    assert G.num_vertices == 2
    _, _, out_w, in_w = G.degree_table()
    for v, w in enumerate(G.weights):
        assert abs(out_w[v] - w) < 1e-12
        assert abs(in_w[v] - w) < 1e-12


def test_ggaps_weight_axioms_random(rng):
    for _ in range(40):
        d = int(rng.integers(2, 6))
        T = random_iet(d, rng)
        N = int(rng.integers(2, 250))
        G = ggaps_build(T, N)  # weight axioms enforced inside
        _, _, out_w, in_w = G.degree_table()
        for v, w in enumerate(G.weights):
            assert abs(out_w[v] - w) < 1e-10
            assert abs(in_w[v] - w) < 1e-10
        assert G.num_edges - G.num_vertices <= d - 1


def test_rational_rotation_graph_has_isolated_cycle():
    G = ggaps_build(Iet.rotation(Fraction(1, 3)), 7)
    assert G.has_distinct_cycle()


def test_outdegree_identity_golden_cases(demo_iet):
    assert outdegree_identity_check(Iet.rotation("sqrt(1/2)"), 9).passed
    assert outdegree_identity_check(demo_iet, 8).passed


def test_outdegree_identity_degenerate_skips():
    out = outdegree_identity_check(Iet.identity(), 5)
    assert not out.applicable


def test_outdegree_identity_fake_discontinuity():
    # inverse continuous at alpha_1: the nominal count would overshoot
    T = Iet.new([0.195161, 0.678272, 0.126567], (3, 1, 2), normalize=True)
    assert outdegree_identity_check(T, 119).passed


def test_outdegree_identity_unseparated_is_not_applicable():
    # a huge gap swallows two discontinuities at this tiny N
    T = Iet.new([0.896684, 0.010871, 0.016543, 0.075902], (3, 1, 4, 2), normalize=True)
    out = outdegree_identity_check(T, 90)
    assert out.status == "not_applicable"


def test_boshernitzan_bound_cases(demo_iet):
    out = boshernitzan_bound_check(Iet.rotation("sqrt(1/2)"), 9)
    assert out.passed and out.details["distinct_weights"] <= 3
    out = boshernitzan_bound_check(demo_iet, 8)
    assert out.passed and out.details["distinct_weights"] == 3
    # rational rotation: Keane fails, check downgrades
    out = boshernitzan_bound_check(Iet.rotation(0.5), 8)
    assert not out.applicable


def test_boshernitzan_random_four_iets(rng):
    done = 0
    while done < 12:
        T = random_iet(4, rng)
        if not T.keane_check(depth=500).satisfied:
            continue
        N = int(rng.integers(10, 500))
        out = boshernitzan_bound_check(T, N, keane_depth=500)
        assert out.status != "fail", out.to_json()
        if out.applicable:
            assert out.details["distinct_weights"] <= 9
        done += 1


def test_graph_serialization(demo_iet):
    G = ggaps_build(demo_iet, 8)
    data = G.to_json()
    assert data["kind"] == "gap_graph"
    assert len(data["vertices"]) == G.num_vertices
    assert len(data["edges"]) == G.num_edges
    text = G.to_edge_list()
    v_lines = [l for l in text.splitlines() if l.startswith("v ")]
    e_lines = [l for l in text.splitlines() if l.startswith("e ")]
    assert len(v_lines) == G.num_vertices and len(e_lines) == G.num_edges


# ---------------------------------------------------------------------------
# The slot forest
# ---------------------------------------------------------------------------


def test_forest_chain_and_split_structure(demo_iet):
    F = fgaps_build(demo_iet, 8)
    pts = gap_report(demo_iet, 8).points
    t = orbit_points(demo_iet, 8)

    def gap_key(value):
        return (GAP, pts.index(min(pts, key=lambda p: abs(p - value))))

    def targets(key):
        return [e[1] for e in F.edges if e[0] == key]

    # the long chain of equal gaps, ending at the first gap (a slot)
    chain = [gap_key(t[4]), gap_key(t[3]), gap_key(t[2]), gap_key(t[1])]
    for a, b in zip(chain, chain[1:]):
        assert targets(a) == [b]
    assert targets(chain[-1]) == [(GAP, 0)]

    # the splitting gap and its three slot pieces
    assert targets(gap_key(t[7])) == [gap_key(t[6])]
    M = len(pts)
    assert set(targets(gap_key(t[6]))) == {(GAP, M - 1), (RIGHT_SLOT, 1), (LEFT_SLOT, 2)}

    by_key = {v.key: v for v in F.vertices}
    assert abs(by_key[(GAP, 0)].length - 0.138193) < 1e-5  # right slot of 0
    assert abs(by_key[(GAP, M - 1)].length - 0.016508) < 1e-5  # left slot of 1
    assert abs(by_key[(RIGHT_SLOT, 1)].length - 0.121685) < 1e-5
    assert abs(by_key[(LEFT_SLOT, 2)].length - 0.008072) < 1e-5
    assert by_key[(GAP, 0)].slot_label == "R0"
    assert by_key[(GAP, M - 1)].slot_label == "L3"


def test_forest_lengths_demo_iet(demo_iet):
    F = fgaps_build(demo_iet, 8)
    lengths = gap_lengths_from_forest(F)
    want = sorted([0.138193, 0.016508, 0.016508 + 0.121685 + 0.008072])
    assert len(lengths) == 3
    for got, expect in zip(lengths, want):
        assert abs(got - expect) < 1e-5


def test_forest_lengths_rotation_match_three_gap():
    F = fgaps_build(Iet.rotation("sqrt(1/2)"), 9)
    lengths = gap_lengths_from_forest(F)
    gold = sorted([5 - 7 / math.sqrt(2), 3 / math.sqrt(2) - 2, 3 - 4 / math.sqrt(2)])
    assert len(lengths) == 3
    for got, expect in zip(lengths, gold):
        assert abs(got - expect) < 1e-10


def test_forest_rotation_slot_counts():
    F = fgaps_build(Iet.rotation("sqrt(1/2)"), 9)
    rights = [v for v in F.vertices if v.kind == RIGHT_SLOT] + [
        v for v in F.vertices if v.kind == GAP and v.slot_label == "R0"
    ]
    lefts = [v for v in F.vertices if v.kind == LEFT_SLOT] + [
        v for v in F.vertices if v.kind == GAP and v.slot_label == "L2"
    ]
    assert len(rights) == 2 and len(lefts) == 2


def test_forest_minimal_segment():
    F = fgaps_build(Iet.rotation("sqrt(1/2)"), 2)
    gaps = [v for v in F.vertices if v.kind == GAP]
    assert len(gaps) == 2


def test_forest_cycle_error_for_periodic_orbit():
    with pytest.raises(ConsistencyError):
        fgaps_build(Iet.rotation(Fraction(1, 3)), 7)


def test_forest_degenerate_orbit_error():
    # at this N the orbit misses the last exchanged interval entirely
    T = Iet.new(
        [0.084419, 0.409868, 0.224306, 0.268097, 0.013310], (2, 5, 1, 4, 3),
        normalize=True,
    )
    with pytest.raises(DegenerateOrbitError):
        fgaps_build(T, 277)


def test_forest_verification_and_glue_random(rng):
    done = skipped = 0
    while done < 25:
        d = int(rng.integers(2, 6))
        T = random_iet(d, rng)
        N = int(rng.integers(5, 250))
        if not T.keane_check(depth=300).satisfied:
            continue
        try:
            F = fgaps_build(T, N)
        except DegenerateOrbitError:
            skipped += 1
            continue
        assert verify_forest_lengths(T, N).passed, (T, N)
        G = ggaps_build(T, N)
        glued = glue_forest(F, T)
        assert set(glued) == set(G.edges)
        for k, w in glued.items():
            assert abs(w - G.edges[k]) < 1e-9
        done += 1


def test_forest_serialization(demo_iet):
    F = fgaps_build(demo_iet, 8)
    data = F.to_json()
    assert data["kind"] == "gap_forest"
    text = F.to_edge_list()
    assert any(line.startswith("v gap:")
               for line in text.splitlines())
    assert any(line.startswith("e gap:") for line in text.splitlines())


# ---------------------------------------------------------------------------
# Ghost-case classification and bound table
# ---------------------------------------------------------------------------


def test_demo_iet_ghost_case(demo_iet):
    # the ghost lands in a gap containing a discontinuity of the inverse
    assert classify_ghost_case(demo_iet, 8) == "IV"
    bound = case_table_bound("IV", demo_iet.pi)
    assert bound == 4
    assert len(gap_report(demo_iet, 8).clusters) <= bound


def test_case_bound_table_columns():
    # rotations satisfy the last-column condition
    assert case_table_bound("I", (2, 1)) == 3
    assert case_table_bound("IV", (2, 1)) == 2
    assert case_table_bound("I", (3, 2, 1)) == 5
    assert case_table_bound("VI", (3, 2, 1)) == 4


def test_case_classification_respects_table(rng):
    done = 0
    while done < 30:
        d = int(rng.integers(2, 6))
        T = random_iet(d, rng)
        N = int(rng.integers(10, 400))
        if not T.keane_check(depth=300).satisfied:
            continue
        case = classify_ghost_case(T, N)
        if case is None:
            continue
        assert case in {"I", "II", "III", "IV", "V", "VI"}
        assert len(gap_report(T, N).clusters) <= case_table_bound(case, T.pi)
        done += 1
