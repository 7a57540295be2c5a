import pytest

from kpclust.errors import EmptyFamilyError, EmptySetError
from kpclust.sets import (
    CenterSet,
    SolutionFamily,
    directed_hausdorff,
    hausdorff,
    point_to_set,
    same_set,
    solution_set_distance,
    tail_li,
    tail_ls,
)


def cs(space, *pts):
    return CenterSet.of(space, pts)


class TestPointToSet:
    def test_member(self, line):
        assert point_to_set(line, 0, cs(line, 0, 5)) == 0.0

    def test_min(self, line):
        assert point_to_set(line, 1, cs(line, 0, 10.5)) == 1.0

    def test_finite(self, three):
        assert point_to_set(three, "0", cs(three, "-1", "1")) == 1.0

    def test_power(self, line):
        assert point_to_set(line, 3, cs(line, 0, 10), p=2) == 9.0

    def test_empty(self, line):
        with pytest.raises(EmptySetError):
            point_to_set(line, 0, [])


class TestHausdorff:
    def test_self(self, line):
        S = cs(line, 0, 3, 7)
        assert directed_hausdorff(line, S, S) == 0.0
        assert hausdorff(line, S, S) == 0.0

    def test_asymmetric_pair(self, line):
        A, B = cs(line, -0.1, 0.1), cs(line, 0, 1)
        assert directed_hausdorff(line, A, B) == pytest.approx(0.1, abs=1e-15)
        assert directed_hausdorff(line, B, A) == pytest.approx(0.9, abs=1e-15)
        assert hausdorff(line, A, B) == pytest.approx(0.9, abs=1e-15)

    def test_singleton_is_point_to_set(self, line):
        S = cs(line, 2, 9)
        assert directed_hausdorff(line, cs(line, 4), S) == point_to_set(line, 4, S)

    @pytest.mark.parametrize("n", [1, 10, 1000])
    def test_unbounded(self, line, n):
        assert hausdorff(line, cs(line, 0), cs(line, n)) == n

    def test_empty(self, line):
        with pytest.raises(EmptySetError):
            hausdorff(line, [], cs(line, 0))


class TestCenterSet:
    def test_canonical_order_and_merge(self, line):
        S = cs(line, 3, 1, 3 + 1e-12)
        assert S.points == ((1.0,), (3.0,))

    def test_equality_tolerance(self, line):
        assert same_set(cs(line, 0.5, 10.5), cs(line, 10.5 + 1e-10, 0.5))
        assert not same_set(cs(line, 0.5, 10.5), cs(line, 0.5, 10.6))

    def test_finite_uses_indices(self, three):
        assert cs(three, "1", "-1").points == (0, 2)

    def test_json(self, three, line):
        assert cs(three, "1", "-1").to_json() == ["-1", "1"]
        assert cs(line, 2, 1).to_json() == [[1.0], [2.0]]

    def test_empty(self, line):
        with pytest.raises(EmptySetError):
            CenterSet.of(line, [])


class TestSolutionFamily:
    def test_dedup_and_sort(self, line):
        fam = SolutionFamily.of([cs(line, 1, 11), cs(line, 0, 10), cs(line, 10, 0)])
        assert len(fam) == 2
        assert fam[0].points == ((0.0,), (10.0,))

    def test_identical(self, line):
        F = SolutionFamily.of([cs(line, 0, 10), cs(line, 1, 11)])
        assert solution_set_distance(F, F) == 0.0

    def test_recurrence_example(self, three):
        emp = SolutionFamily.of([cs(three, "0")])
        pop = SolutionFamily.of([cs(three, "-1"), cs(three, "1")])
        assert solution_set_distance(emp, pop) == 1.0

    def test_shifted_centers(self, line):
        emp = SolutionFamily.of([cs(line, 0.4, 10.6)])
        pop = SolutionFamily.of([cs(line, 0.5, 10.5)])
        assert solution_set_distance(emp, pop) == pytest.approx(0.1, abs=1e-12)

    def test_max_min_structure(self, line):
        emp = SolutionFamily.of([cs(line, 0), cs(line, 5)])
        pop = SolutionFamily.of([cs(line, 0), cs(line, 1)])
        assert solution_set_distance(emp, pop) == 4.0
        assert solution_set_distance(pop, emp) == 1.0

    def test_empty_family(self, line):
        with pytest.raises(EmptyFamilyError):
            solution_set_distance(SolutionFamily(()), SolutionFamily.of([cs(line, 0)]))


class TestTailSurrogates:
    def test_constant_window(self, three):
        S = cs(three, "-1", "1")
        assert tail_li([S, S, S]) == [0, 2]
        assert tail_ls([S, S, S]) == [0, 2]

    def test_alternating(self, three):
        w = [cs(three, "-1"), cs(three, "1"), cs(three, "-1"), cs(three, "1")]
        assert tail_li(w) == []
        assert tail_ls(w) == [0, 2]

    def test_delta_widens_li(self, line):
        w = [cs(line, 0), cs(line, 0.5)]
        assert tail_li(w) == []
        assert tail_li(w, 0.5) == [(0.0,), (0.5,)]

    def test_burned_in_supports(self, three):
        from kpclust.measures import forgetful_empirical, support

        path = ["0", "0", "-1", "1", "-1", "1", "1", "-1"]
        window = [support(forgetful_empirical(three, path[:n], 2)) for n in range(4, 9)]
        assert [three.label(x) for x in tail_li(window)] == ["-1", "1"]

    def test_li_subset_of_ls(self, line, rng):
        for _ in range(50):
            window = [cs(line, *rng.integers(0, 6, size=rng.integers(1, 4))) for _ in range(4)]
            delta = float(rng.choice([0.0, 0.5, 1.0]))
            li, ls = tail_li(window, delta), tail_ls(window, delta)
            assert set(li) <= set(ls)
