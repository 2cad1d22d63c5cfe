"""Graph parsing, norms, FP dimensions, loop enumeration, four-partite gluing."""

from fractions import Fraction

import pytest

from gpakit.bigraph import (
    FourPartiteGraph,
    fourpartite_dimensions,
    fp_dimensions,
    graph_norm_squared,
    loops,
    parse_bigraph,
)
from gpakit.errors import DualsNotInvolution, GrammarError, RowLengthMismatch
from gpakit.fixtures import (
    GAMMA_A_CODE,
    GAMMA_B_CODE,
    field_d,
    gamma_a_fourpartite,
    gamma_a_pair,
    gamma_b_pair,
)
from gpakit.linalg import Matrix


def test_parse_gamma_a_edges():
    g = gamma_a_pair().principal
    edge_set = sorted((e.src, e.dst) for e in g.edges)
    assert edge_set == sorted([("1", "X"), ("X", "Z"), ("X", "Y"),
                               ("Z", "W"), ("Y", "W"), ("Y", "g")])
    assert g.duals == {"1": "1", "Z": "Z", "Y": "Y"}


def test_parse_gamma_b_edges():
    g = gamma_b_pair().principal
    edge_set = sorted((e.src, e.dst) for e in g.edges)
    assert len(edge_set) == 10
    assert edge_set == sorted([("1", "f"), ("f", "A"), ("A", "B"), ("A", "F"),
                               ("F", "G"), ("G", "z"), ("B", "C"), ("C", "D"),
                               ("F", "E"), ("E", "D")])
    assert g.duals["C"] == "G" and g.duals["G"] == "C" and g.duals["E"] == "E"


def test_roundtrip_fixture_strings():
    for code in [GAMMA_A_CODE, GAMMA_B_CODE, "bwd1duals1",
                 "bwd1v1p1p1duals1v2x1x3", "bwd1v1p1v1x1duals1v2x1",
                 "bwd1v1p1v1x0p0x1p0x1duals1v1x2",
                 "bwd1v1p1v1x0p1x0p0x1p0x1v1x0x0x0p0x1x0x0p0x0x1x0p0x0x0x1duals1v1x2v3x4x1x2"]:
        assert parse_bigraph(code).serialize() == code


def test_bad_rows():
    with pytest.raises((RowLengthMismatch, GrammarError)):
        parse_bigraph("bwd1v1x1")  # row references two depth-0 vertices
    with pytest.raises(DualsNotInvolution):
        parse_bigraph("bwd1v1p1duals1v2x2")


def test_norm_squared_gamma_a():
    lo, hi = graph_norm_squared(gamma_a_pair().principal, Fraction(1, 10**8))
    mid = (lo + hi) / 2
    assert abs(mid - Fraction("5.04892")) < Fraction(1, 10**4)


def test_norm_squared_gamma_b():
    lo, hi = graph_norm_squared(gamma_b_pair().principal, Fraction(1, 10**8))
    assert abs((lo + hi) / 2 - Fraction("5.04892")) < Fraction(1, 10**4)


def test_norm_squared_single_edge():
    g = parse_bigraph("bwd1")
    lo, hi = graph_norm_squared(g, Fraction(1, 10**6))
    assert lo <= 1 <= hi


def test_fp_dimensions_gamma_a():
    Qd = field_d()
    d = Qd.gen
    e = d * d - d - 1
    table = fp_dimensions(gamma_a_pair().principal, Qd, d)
    assert table.dim("1") == Qd.one
    assert table.dim("X") == d
    assert table.dim("Z") == e
    assert table.dim("Y") == d
    assert table.dim("W") == e
    assert table.dim("g") == Qd.one
    # lopsided: odd dims divided by delta
    assert table.lopsided("X") == Qd.one
    assert table.lopsided("W") == e / d
    assert table.lopsided("g") == 1 / d
    assert table.lopsided("Z") == e


def test_fp_dimensions_resubstitution():
    Qd = field_d()
    g = gamma_b_pair().principal
    table = fp_dimensions(g, Qd, Qd.gen)
    for v in g.vertices:
        acc = Qd.zero
        for edge in g.adjacent(v):
            acc = acc + table.dim(edge.other(v))
        assert Qd.gen * table.dim(v) == acc


def test_loops_paths_fixture_order():
    g = gamma_a_pair().principal
    got = [lp.vertices for lp in loops(g, "Y", 2)]
    assert got == [("Y", "X"), ("Y", "W"), ("Y", "g")]
    # loops of length 4 based at Y through (Y, ., Y, .) style
    lps = loops(g, "Y", 4)
    quads = [lp.vertices for lp in lps if lp.vertices[2] == "Y"]
    assert quads[0] == ("Y", "X", "Y", "X")


def test_loops_trivial():
    g = gamma_a_pair().principal
    assert len(loops(g, "1", 0)) == 1


def test_loop_count_matrix_power_oracle():
    g = gamma_b_pair().principal
    m = g.bipartite_matrix()
    mmt = m * m.transpose()
    evens = g.evens()
    for n in (2, 4):
        power = mmt
        for _ in range(n // 2 - 1):
            power = power * mmt
        for i, v in enumerate(evens):
            count = len([lp for lp in loops(g, v, n)])
            assert count == power.rows[i][i]


def test_fourpartite_gamma_a():
    fp = gamma_a_fourpartite()
    assert fp.red_restriction() == sorted(
        tuple(sorted((e.src, e.dst))) for e in gamma_a_pair().principal.edges)
    assert fp.blue_restriction() == sorted(
        tuple(sorted((e.src, e.dst))) for e in gamma_a_pair().dual.edges)
    # the six red-side edges appear mirrored on every side of the square
    for pair_cls in [("NN", "NM"), ("NM", "MM"), ("MM", "MN"), ("MN", "NN")]:
        assert len(fp.edges[pair_cls]) == 6


def test_fourpartite_4loops_at_1():
    # 4-loops based at 1 descending to (NN, NM, MM, MN): through X, paired
    # with 1-hat, ending on X-bar; count equals the nonzero cells in the
    # 1-hat/X-bar row of the principal matrix: columns 1X, ZX, YX.
    fp = gamma_a_fourpartite()
    lps = loops(fp, "1", 4, ("NN", "NM", "MM", "MN"))
    assert len(lps) == 3
    starts = {lp.vertices[1] for lp in lps}
    assert starts == {"X"}


def test_fourpartite_dimensions_shading():
    Qd = field_d()
    fp = gamma_a_fourpartite()
    table = fourpartite_dimensions(fp, Qd, Qd.gen)
    d = Qd.gen
    e = d * d - d - 1
    from gpakit.bigraph import bar, hat
    assert table.lopsided("Z") == e
    assert table.lopsided(hat("Z")) == e
    assert table.lopsided("W") == e / d
    assert table.lopsided(bar("W")) == e * d
    assert table.lopsided(bar("g")) == d
