import math
import random
from fractions import Fraction

import pytest

from redmax import InternalContradiction, InvalidInput, Unsupported
from redmax.arcdiag import (
    ArcDiagram,
    build_arc_diagram,
    build_bicolored,
    check_consecutive_configurations,
    covered_bound_holds,
    decompose,
    decomposition_violation,
    exceeding_weights_are_two,
    has_nine_arc_configuration,
    lengths_violation,
    render_svg,
    weight,
    wtlim,
)
from redmax.core import MonotonePath
from redmax.patterns import assemble_witness, builtin_family
from redmax.search import iter_paths, random_path

G_WD = MonotonePath.of("123-124-134-234-345-346-456".split("-"))
WT2 = MonotonePath.of("123-124-234-245-246-247-267-467-567".split("-"))
BIG = MonotonePath.of("123-124-145-146-456".split("-"))


class TestBuild:
    def test_example_arcs(self):
        assert build_arc_diagram(G_WD).arcs == {(1, 2), (2, 3), (3, 4), (5, 6), (3, 5), (2, 5)}

    def test_weight_example_arcs(self):
        D = build_arc_diagram(WT2)
        assert D.arcs == {(3, 4), (4, 5), (5, 6), (6, 7), (1, 3), (2, 4), (3, 5), (4, 6)}
        assert len(D.arcs) == WT2.steps

    def test_single_set(self):
        assert build_arc_diagram(MonotonePath.of(["123"])).arcs == frozenset()

    def test_invalid_path(self):
        with pytest.raises(InvalidInput):
            build_arc_diagram(MonotonePath.of(["12", "13", "23", "24", "34"]))


class TestWeight:
    def test_units(self):
        D = build_arc_diagram(WT2)
        assert weight(D, 3, 4) == 2
        assert weight(D, 1, 2) == Fraction(1, 2)
        assert D.unit_weights() == [Fraction(1, 2), 1, 2, 2, Fraction(3, 2), 1]

    def test_whole(self):
        for P in (G_WD, WT2):
            D = build_arc_diagram(P)
            assert weight(D, 1, D.n) == len(D.arcs)

    def test_rational_endpoints(self):
        D = ArcDiagram(3, {(1, 3)})
        assert weight(D, Fraction(1, 2) + 1, 2) == Fraction(1, 4)

    def test_outside(self):
        with pytest.raises(InvalidInput):
            weight(build_arc_diagram(WT2), 0, 3)


class TestWtlim:
    def test_whole_n9(self):
        assert wtlim(9, 1, 9) == Fraction(74, 6)

    def test_inner(self):
        assert wtlim(7, 2, 5) == Fraction(31, 6)

    def test_end(self):
        assert wtlim(6, 1, 2) == 1

    def test_small_n(self):
        with pytest.raises(Unsupported):
            wtlim(5, 1, 2)

    @pytest.mark.parametrize("n", range(6, 15))
    def test_whole_matches_ceiling(self, n):
        assert math.ceil(11 * n / 6) - 5 >= math.floor(wtlim(n, 1, n))


class TestDecompose:
    def test_under_limit_is_empty(self):
        assert decompose(build_arc_diagram(G_WD)).intervals == []

    def test_weight_example(self):
        dec = decompose(build_arc_diagram(WT2))
        assert dec.intervals == [(2, 5)]
        assert dec.cases[0][0].startswith("3.1")

    def test_witness_n9(self):
        D = build_arc_diagram(assemble_witness(builtin_family(3), 9))
        dec = decompose(D)
        assert decomposition_violation(D, dec) is None
        assert covered_bound_holds(D, dec)

    def test_small_n(self):
        P = MonotonePath.of("123-124-134-234".split("-"))
        assert decompose(build_arc_diagram(P)).intervals == []

    @pytest.mark.parametrize("n", [6, 7])
    def test_exhaustive(self, n):
        bound = math.ceil(11 * n / 6) - 5
        count = 0
        for P in iter_paths(3, n):
            D = build_arc_diagram(P)
            dec = decompose(D)
            assert decomposition_violation(D, dec) is None
            assert covered_bound_holds(D, dec)
            assert weight(D, 1, n) == P.steps <= bound
            assert has_nine_arc_configuration(D) is None
            assert lengths_violation(D) is None
            assert exceeding_weights_are_two(D)
            build_bicolored(P)
            assert check_consecutive_configurations(P)
            count += 1
        assert count > 0

    def test_sampled_n8(self):
        rng = random.Random(3)
        for _ in range(300):
            P = random_path(3, 8, rng)
            D = build_arc_diagram(P)
            dec = decompose(D)
            assert decomposition_violation(D, dec) is None
            assert P.steps <= 10


class TestBicolored:
    def test_example(self):
        B = build_bicolored(BIG)
        assert B.red_arcs == {(2, 4), (3, 5), (2, 6), (1, 6)}
        assert B.black_arcs == ((3, 4), (2, 5), (5, 6), (1, 5))

    def test_single_step(self):
        assert build_bicolored(MonotonePath.of(["123", "124"])).red_arcs == frozenset()

    def test_simple_on_example_path(self):
        B = build_bicolored(G_WD)
        assert not set(B.black_arcs) & B.red_arcs

    def test_needs_k3(self):
        with pytest.raises(InvalidInput):
            build_bicolored(MonotonePath.of(["12", "13"]))

    def test_duplicate_red_arc_is_contradiction(self, monkeypatch):
        # red (1,4) is added twice
        from redmax import arcdiag
        monkeypatch.setattr(arcdiag, "require_valid", lambda p: None)
        monkeypatch.setattr(arcdiag, "c_sequence", lambda p: ((1, 2), (2, 4), (1, 2)))
        with pytest.raises(InternalContradiction):
            build_bicolored(MonotonePath.of(["123"]))


class TestConsecutive:
    def test_example(self):
        assert check_consecutive_configurations(G_WD)

    def test_disjoint_rejected(self):
        assert not check_consecutive_configurations([(1, 2), (3, 4)])
        assert not check_consecutive_configurations([(4, 6), (1, 3)])

    def test_nested_allowed(self):
        assert check_consecutive_configurations([(1, 6), (3, 4)])


class TestSvg:
    def test_empty(self):
        svg = render_svg(ArcDiagram(3, set()))
        assert svg.count("<circle") == 3 and svg.count("<path") == 0

    def test_example(self):
        svg = render_svg(build_arc_diagram(G_WD))
        assert svg.count('class="arc black"') == 6

    def test_bicolored(self):
        svg = render_svg(build_bicolored(BIG))
        assert svg.count('class="arc black"') == 4
        assert svg.count('class="arc red"') == 4

    def test_deterministic(self):
        D = build_arc_diagram(WT2)
        assert render_svg(D) == render_svg(D)
