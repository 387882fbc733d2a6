"""Unit tests for the Dempster-Shafer kernel."""

import math

import pytest

from evidentia import (
    BpaOutOfRange,
    DuplicateLabel,
    EmptyFocalSet,
    EmptyFrame,
    FrameMismatch,
    FrameTooLarge,
    NotNormalized,
    TotalConflict,
    UnknownLabel,
    belief,
    combine,
    conflict,
    focal_set,
    full_set,
    make_frame,
    mass_function,
    plausibility,
    simple_support_mass,
    vacuous_mass,
)

DISEASES = ["AI", "ND", "FC", "IBRespi", "IBRepro", "SHS", "OTHER"]


@pytest.fixture
def frame():
    return make_frame(DISEASES)


class TestMakeFrame:
    def test_reference_frame(self, frame):
        assert len(frame) == 7
        assert frame.labels == tuple(DISEASES)

    def test_single_label(self):
        assert make_frame(["A"]).labels == ("A",)

    def test_order_is_stable(self):
        frame = make_frame(["z", "a", "m"])
        assert frame.labels == ("z", "a", "m")
        assert frame.index("a") == 1

    def test_duplicate_label(self):
        with pytest.raises(DuplicateLabel):
            make_frame(["A", "A"])

    def test_empty(self):
        with pytest.raises(EmptyFrame):
            make_frame([])

    def test_capacity_bound(self):
        make_frame([f"h{i}" for i in range(64)])  # 64 is fine
        with pytest.raises(FrameTooLarge):
            make_frame([f"h{i}" for i in range(65)])


class TestFocalSet:
    def test_singleton_mask(self, frame):
        assert focal_set(frame, {"AI"}).bits == 0b0000001

    def test_empty_mask(self, frame):
        a = focal_set(frame, set())
        assert a.bits == 0 and a.is_empty

    def test_three_member_mask(self, frame):
        a = focal_set(frame, {"AI", "ND", "FC"})
        assert a.bits.bit_count() == 3
        assert a.members() == ("AI", "ND", "FC")

    def test_all_labels_is_full_frame(self, frame):
        assert focal_set(frame, DISEASES) == full_set(frame)

    def test_unknown_label(self, frame):
        with pytest.raises(UnknownLabel):
            focal_set(frame, {"XYZ"})

    def test_sorted_labels(self, frame):
        a = focal_set(frame, {"SHS", "AI", "IBRespi"})
        assert a.sorted_labels() == ("AI", "IBRespi", "SHS")

    def test_set_algebra(self, frame):
        a = focal_set(frame, {"AI", "ND"})
        b = focal_set(frame, {"ND", "FC"})
        assert a.intersection(b) == focal_set(frame, {"ND"})
        assert a.union(b) == focal_set(frame, {"AI", "ND", "FC"})
        assert focal_set(frame, {"ND"}).issubset(a)
        assert a.complement() == focal_set(frame, {"FC", "IBRespi", "IBRepro", "SHS", "OTHER"})


class TestMassConstruction:
    def test_vacuous(self, frame):
        m = vacuous_mass(frame)
        assert m.entries == {full_set(frame): 1.0}

    def test_vacuous_on_singleton_frame(self):
        tiny = make_frame(["A"])
        assert vacuous_mass(tiny).entries == {full_set(tiny): 1.0}

    def test_simple_support(self, frame):
        m = simple_support_mass(frame, focal_set(frame, {"AI"}), 0.9)
        assert m.get(focal_set(frame, {"AI"})) == pytest.approx(0.9)
        assert m.get(full_set(frame)) == pytest.approx(0.1)

    def test_simple_support_pair(self, frame):
        m = simple_support_mass(frame, focal_set(frame, {"ND", "SHS"}), 0.6)
        assert m.get(focal_set(frame, {"ND", "SHS"})) == pytest.approx(0.6)
        assert m.get(full_set(frame)) == pytest.approx(0.4)

    def test_certainty_collapses_residual(self, frame):
        m = simple_support_mass(frame, focal_set(frame, {"AI"}), 1.0)
        assert m.entries == {focal_set(frame, {"AI"}): 1.0}

    def test_support_on_full_frame_merges(self, frame):
        m = simple_support_mass(frame, full_set(frame), 0.4)
        assert m.entries == {full_set(frame): 1.0}

    @pytest.mark.parametrize("bpa", [0.0, -0.1, 1.0001, float("nan"), float("inf")])
    def test_bpa_out_of_range(self, frame, bpa):
        with pytest.raises(BpaOutOfRange):
            simple_support_mass(frame, focal_set(frame, {"AI"}), bpa)

    def test_empty_support(self, frame):
        with pytest.raises(EmptyFocalSet):
            simple_support_mass(frame, focal_set(frame, set()), 0.5)

    def test_empty_set_key_rejected(self, frame):
        with pytest.raises(EmptyFocalSet):
            mass_function(frame, {focal_set(frame, set()): 1.0})

    def test_duplicate_subsets_merge(self, frame):
        a = focal_set(frame, {"AI"})
        m = mass_function(frame, [(a, 0.3), (a, 0.2), (full_set(frame), 0.5)])
        assert m.get(a) == pytest.approx(0.5)

    def test_not_normalized(self, frame):
        with pytest.raises(NotNormalized):
            mass_function(frame, {focal_set(frame, {"AI"}): 0.5})

    def test_tiny_entries_pruned_and_renormalized(self, frame):
        a = focal_set(frame, {"AI"})
        m = mass_function(frame, {a: 1.0 - 1e-15, full_set(frame): 1e-15})
        assert m.entries == {a: 1.0}

    def test_negative_mass_rejected(self, frame):
        with pytest.raises(BpaOutOfRange):
            mass_function(frame, {focal_set(frame, {"AI"}): 1.2, full_set(frame): -0.2})


class TestConflict:
    def test_vacuous_never_conflicts(self, frame):
        m = simple_support_mass(frame, focal_set(frame, {"AI"}), 0.9)
        assert conflict(m, vacuous_mass(frame)) == 0.0

    def test_total_conflict_value(self, frame):
        m1 = simple_support_mass(frame, focal_set(frame, {"AI"}), 1.0)
        m2 = simple_support_mass(frame, focal_set(frame, {"ND"}), 1.0)
        assert conflict(m1, m2) == 1.0

    def test_worked_example_conflict(self, frame):
        # state after three symptoms, against the narrow-eyes evidence
        m5 = mass_function(frame, {
            focal_set(frame, {"AI"}): 0.9,
            focal_set(frame, {"AI", "ND", "FC"}): 0.083,
            focal_set(frame, {"AI", "ND", "FC", "IBRespi", "IBRepro", "SHS"}): 0.0119,
            full_set(frame): 0.0051,
        })
        m6 = simple_support_mass(frame, focal_set(frame, {"SHS"}), 0.9)
        assert conflict(m5, m6) == pytest.approx(0.8847, abs=1e-12)

    def test_frame_mismatch(self, frame):
        other = make_frame(["A", "B"])
        with pytest.raises(FrameMismatch):
            conflict(vacuous_mass(frame), vacuous_mass(other))


class TestCombine:
    def test_first_worked_combination(self, frame):
        six = focal_set(frame, {"AI", "ND", "FC", "IBRespi", "IBRepro", "SHS"})
        m1 = simple_support_mass(frame, six, 0.7)
        m2 = simple_support_mass(frame, focal_set(frame, {"AI"}), 0.9)
        combined, k = combine(m1, m2)
        assert k == 0.0
        assert combined.get(focal_set(frame, {"AI"})) == pytest.approx(0.9, abs=1e-12)
        assert combined.get(six) == pytest.approx(0.07, abs=1e-12)
        assert combined.get(full_set(frame)) == pytest.approx(0.03, abs=1e-12)

    def test_high_conflict_combination(self, frame):
        m5 = mass_function(frame, {
            focal_set(frame, {"AI"}): 0.9,
            focal_set(frame, {"AI", "ND", "FC"}): 0.083,
            focal_set(frame, {"AI", "ND", "FC", "IBRespi", "IBRepro", "SHS"}): 0.0119,
            full_set(frame): 0.0051,
        })
        m6 = simple_support_mass(frame, focal_set(frame, {"SHS"}), 0.9)
        combined, k = combine(m5, m6)
        assert k == pytest.approx(0.8847, abs=1e-12)
        assert combined.get(focal_set(frame, {"AI"})) == pytest.approx(0.78057, abs=1e-4)
        assert combined.get(focal_set(frame, {"SHS"})) == pytest.approx(0.13270, abs=1e-4)
        assert combined.get(focal_set(frame, {"AI", "ND", "FC"})) == pytest.approx(0.07199, abs=1e-4)
        assert combined.get(full_set(frame)) == pytest.approx(0.00442, abs=1e-4)

    def test_vacuous_identity(self, frame):
        m = simple_support_mass(frame, focal_set(frame, {"ND", "SHS"}), 0.6)
        combined, k = combine(m, vacuous_mass(frame))
        assert k == 0.0
        assert combined == m

    def test_total_conflict_raises(self, frame):
        m1 = simple_support_mass(frame, focal_set(frame, {"AI"}), 1.0)
        m2 = simple_support_mass(frame, focal_set(frame, {"ND"}), 1.0)
        with pytest.raises(TotalConflict):
            combine(m1, m2)

    def test_frame_mismatch(self, frame):
        with pytest.raises(FrameMismatch):
            combine(vacuous_mass(frame), vacuous_mass(make_frame(["A"])))

    def test_result_is_normalized(self, frame):
        m1 = simple_support_mass(frame, focal_set(frame, {"AI"}), 0.9)
        m2 = simple_support_mass(frame, focal_set(frame, {"SHS"}), 0.9)
        combined, _ = combine(m1, m2)
        assert math.fsum(combined.entries.values()) == pytest.approx(1.0, abs=1e-9)


class TestBeliefPlausibility:
    @pytest.fixture
    def mass(self, frame):
        return mass_function(frame, {
            focal_set(frame, {"AI"}): 0.5,
            focal_set(frame, {"AI", "ND"}): 0.2,
            focal_set(frame, {"SHS"}): 0.1,
            full_set(frame): 0.2,
        })

    def test_belief_sums_subsets(self, frame, mass):
        assert belief(mass, focal_set(frame, {"AI", "ND"})) == pytest.approx(0.7)
        assert belief(mass, focal_set(frame, {"AI"})) == pytest.approx(0.5)

    def test_belief_of_frame_is_one(self, frame, mass):
        assert belief(mass, full_set(frame)) == pytest.approx(1.0, abs=1e-12)

    def test_belief_of_empty_is_zero(self, frame, mass):
        assert belief(mass, focal_set(frame, set())) == 0.0

    def test_plausibility_sums_intersecting(self, frame, mass):
        # everything except the disjoint {SHS} entry intersects {AI}
        assert plausibility(mass, focal_set(frame, {"AI"})) == pytest.approx(0.9)

    def test_plausibility_of_empty_is_zero(self, frame, mass):
        assert plausibility(mass, focal_set(frame, set())) == 0.0

    def test_vacuous_plausibility_is_one(self, frame):
        m = vacuous_mass(frame)
        assert plausibility(m, focal_set(frame, {"FC"})) == 1.0

    def test_duality(self, frame, mass):
        for members in ({"AI"}, {"ND", "SHS"}, {"AI", "FC", "OTHER"}):
            a = focal_set(frame, members)
            assert plausibility(mass, a) == pytest.approx(
                1.0 - belief(mass, a.complement()), abs=1e-12
            )

    def test_frame_mismatch(self, frame, mass):
        other = make_frame(["A"])
        with pytest.raises(FrameMismatch):
            belief(mass, full_set(other))
        with pytest.raises(FrameMismatch):
            plausibility(mass, full_set(other))
