from fractions import Fraction

import numpy as np
import pytest

from redmax import InvalidInput, ResourceCapError, Unsupported
from redmax.config import Caps
from redmax.coxeter import (
    PHI,
    SQRT2,
    SQRT3,
    QuadraticNumber,
    bond_product,
    cartan_feasibility,
    coxeter_system,
    explicit_cartan,
    group_order,
    longest_element,
    min_multiplicity,
    min_multiplicity_dp_oracle,
    min_multiplicity_vector,
    parabolic_quotient,
    reference_vector,
    verify_cartan,
)
from redmax.search import max_multiplicity_weak_order_dp

Q = QuadraticNumber

IN_CAP = [("A", r) for r in range(1, 8)] + [("B", r) for r in range(2, 7)] + [("D", r) for r in range(4, 7)]


class TestQuadratic:
    def test_signs(self):
        assert 6 - 3 * SQRT3 > 0
        assert 9 - 6 * SQRT2 > 0
        assert SQRT2 - Fraction(3, 2) < 0
        assert (SQRT2 - SQRT2).sign() == 0

    def test_golden(self):
        assert PHI * PHI == PHI + 1
        assert bond_product(5) == PHI + 1

    def test_inverse(self):
        x = 3 + 2 * SQRT2
        assert x * x.inverse() == 1
        assert (1 / SQRT3) * 3 == SQRT3

    def test_mixed_fields(self):
        with pytest.raises(Unsupported):
            SQRT2 + SQRT3

    def test_bad_input(self):
        with pytest.raises(InvalidInput):
            Q(0.5)

    def test_bond_products(self):
        assert [bond_product(m) for m in (2, 3, 4, 6)] == [0, 1, 2, 3]
        with pytest.raises(Unsupported):
            bond_product(7)

    def test_hash_and_repr(self):
        assert hash(Q(1, 1, 2)) == hash(1 + SQRT2)
        assert repr(1 - SQRT2) == "1 - sqrt(2)"
        assert abs(float(PHI) - 1.6180339887) < 1e-9


class TestSystems:
    def test_a2_longest(self):
        sys = coxeter_system("A", 2)
        w = longest_element(sys)
        assert w.length() == 3 and w.descents() == [1, 2]

    def test_b2_longest(self):
        assert longest_element(coxeter_system("B", 2)).length() == 4

    def test_e8_longest(self):
        assert longest_element(coxeter_system("E8")).length() == 120

    def test_g2_longest(self):
        w = longest_element(coxeter_system("G2"))
        assert w.length() == 6 and len(w.word()) == 6

    def test_quotient_a2(self):
        sys = coxeter_system("A", 2)
        assert parabolic_quotient(longest_element(sys), {1}).length() == 2

    def test_quotient_identity(self):
        sys = coxeter_system("B", 3)
        assert parabolic_quotient(sys.identity(), {1, 2}).is_identity()

    def test_quotient_whole_group(self):
        sys = coxeter_system("B", 3)
        assert parabolic_quotient(longest_element(sys), {1, 2, 3}).is_identity()

    def test_types(self):
        assert coxeter_system("b5") == coxeter_system("B", 5)
        with pytest.raises(InvalidInput):
            coxeter_system("H4")
        with pytest.raises(InvalidInput):
            coxeter_system("Z", 3)
        with pytest.raises(InvalidInput):
            coxeter_system("E8", 7)

    @pytest.mark.parametrize("typ,r", [("A", 5), ("B", 4), ("D", 5), ("F4", None), ("E6", None)])
    def test_word_of_longest_is_reduced(self, typ, r):
        sys = coxeter_system(typ, r)
        w0 = longest_element(sys)
        word = w0.word()
        assert len(word) == sys.n_positive_roots
        w = sys.identity()
        for i in word:
            w = w * i
        assert w == w0


class TestMinMultiplicity:
    def test_a4(self):
        assert min_multiplicity(coxeter_system("A", 4), 2) == 2

    def test_b4(self):
        assert min_multiplicity_vector(coxeter_system("B", 4)) == (4, 4, 3, 2)

    def test_f4(self):
        assert min_multiplicity_vector(coxeter_system("F4")) == (3, 6, 6, 3)

    def test_e6(self):
        v = min_multiplicity_vector(coxeter_system("E6"))
        assert v[1] == 3
        assert (v[0], v[2], v[3], v[4], v[5]) == (2, 4, 6, 4, 2)

    def test_e8(self):
        v = min_multiplicity_vector(coxeter_system("E8"))
        assert v[1] == 8
        assert (v[7], v[6], v[5], v[4], v[3]) == (3, 6, 9, 12, 15)
        assert v[0] == 5 and v[2] == 10

    def test_g2(self):
        assert min_multiplicity_vector(coxeter_system("G2")) == (3, 3)

    @pytest.mark.parametrize("typ,r", [("A", r) for r in range(1, 8)] + [("B", r) for r in range(2, 8)]
                             + [("D", r) for r in range(4, 8)]
                             + [(t, None) for t in ("E6", "E7", "E8", "F4", "G2")])
    def test_reference_tables(self, typ, r):
        assert min_multiplicity_vector(coxeter_system(typ, r)) == reference_vector(typ, r)

    def test_lengths_decrease(self):
        trace = []
        min_multiplicity(coxeter_system("E7"), 4, trace)
        assert all(a > b for a, b in zip(trace, trace[1:]))
        assert trace[-1] == 0 and len(trace) == 10

    def test_index_range(self):
        with pytest.raises(InvalidInput):
            min_multiplicity(coxeter_system("A", 3), 4)

    @pytest.mark.parametrize("n", range(2, 9))
    def test_type_a_matches_weak_order(self, n):
        sys = coxeter_system("A", n - 1)
        for k in range(1, n):
            assert min_multiplicity(sys, k) == max_multiplicity_weak_order_dp(k, n, "min").value


class TestOracle:
    def test_examples(self):
        assert min_multiplicity_dp_oracle(coxeter_system("A", 4), 2) == 2
        assert min_multiplicity_dp_oracle(coxeter_system("B", 3), 1) == 3
        sys = coxeter_system("D", 4)
        assert min_multiplicity_dp_oracle(sys, 3) == min_multiplicity_dp_oracle(sys, 4) == 2

    @pytest.mark.parametrize("typ,r", IN_CAP)
    def test_agreement(self, typ, r):
        sys = coxeter_system(typ, r)
        assert group_order(sys) <= 50_000
        for i in range(1, r + 1):
            assert min_multiplicity_dp_oracle(sys, i) == min_multiplicity(sys, i)

    def test_cap(self):
        with pytest.raises(ResourceCapError):
            min_multiplicity_dp_oracle(coxeter_system("D", 7), 1)
        with pytest.raises(ResourceCapError):
            min_multiplicity_dp_oracle(coxeter_system("A", 4), 1, caps=Caps(oracle_max_order=100))

    def test_exceptional_rejected(self):
        with pytest.raises(InvalidInput):
            min_multiplicity_dp_oracle(coxeter_system("G2"), 1)


class TestCartan:
    @pytest.mark.parametrize("n", range(2, 8))
    def test_b_series(self, n):
        ok, Av = verify_cartan(coxeter_system("B", n), explicit_cartan("B", n), reference_vector("B", n))
        assert ok
        if n >= 3:
            assert Av == [0, 1] + [0] * (n - 3) + [1]

    def test_f4(self):
        ok, Av = verify_cartan("F4", explicit_cartan("F4"), (3, 6, 6, 3))
        assert ok
        assert Av[1] == 9 - 6 * SQRT2

    def test_a3(self):
        ok, Av = verify_cartan("A3", explicit_cartan("A", 3), (1, 2, 1))
        assert ok and Av == [0, 2, 0]

    def test_bad_candidate(self):
        A = explicit_cartan("B", 3)
        A[0][1] = Q(-3)
        with pytest.raises(InvalidInput):
            verify_cartan("B3", A, (3, 3, 2))
        A = explicit_cartan("A", 3)
        A[0][1] = Q(-2)
        A[1][0] = Q(Fraction(-1, 2))
        with pytest.raises(InvalidInput):
            verify_cartan("A3", A, (1, 2, 1))

    def test_bad_vector(self):
        with pytest.raises(InvalidInput):
            verify_cartan("A3", explicit_cartan("A", 3), (1, 0, 1))

    def test_b5_feasible(self):
        rep = cartan_feasibility("B5", reference_vector("B", 5))
        assert rep.feasible and rep.integer_feasible
        assert verify_cartan("B5", rep.witness, reference_vector("B", 5))[0]

    def test_d6_feasible(self):
        rep = cartan_feasibility("D6", reference_vector("D", 6))
        assert rep.feasible and rep.free_edges == []

    def test_g2_report(self):
        rep = cartan_feasibility("G2", (3, 3))
        d = rep.to_json()
        assert set(d) >= {"feasible", "witness", "Av", "max_violation", "integer_feasible"}
        if rep.feasible:
            assert verify_cartan("G2", rep.witness, (3, 3))[0]

    def test_h4_report(self):
        rep = cartan_feasibility("H4", (5, 10, 15, 15))
        assert rep.free_edges == [(3, 4, 5)]
        if rep.feasible:
            assert verify_cartan("H4", rep.witness, (5, 10, 15, 15))[0]

    def test_non_tree(self):
        M = np.array([[1, 3, 3], [3, 1, 3], [3, 3, 1]])
        with pytest.raises(Unsupported):
            cartan_feasibility(M, (1, 1, 1))

    def test_infeasible_reports_violation(self):
        rep = cartan_feasibility("A3", (1, 3, 1))
        assert not rep.feasible and rep.max_violation > 0
