import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from timerank import (
    ClassifierParams,
    LevelProfile,
    ShapeLabel,
    TimeTable,
    build_binned_map,
    build_scheme,
    classify,
    default_lambda_level,
    detect_plateaus,
    item_profile,
    primary_label,
    profile_histogram,
    write_histogram_csv,
)

PARAMS = ClassifierParams(delta_spike=2, epsilon=0, lambda_level=2, rho=0.5, equiv_tol=1)


def prof(levels):
    return LevelProfile.from_levels("x", levels)


def plateau_tuples(levels, tol=1):
    return [(p.start, p.end, p.level) for p in detect_plateaus(levels, tol)]


def test_constant_run_is_one_plateau():
    assert plateau_tuples((4, 4, 4)) == [(0, 2, 4)]


def test_two_plateaus_with_gap():
    assert plateau_tuples((4, 5, 4, 0, 9, 9, 9, 9)) == [(0, 2, 4), (4, 7, 9)]


def test_span_beyond_tolerance_is_no_plateau():
    assert plateau_tuples((4, 6, 4)) == []


def test_absent_breaks_plateau():
    assert plateau_tuples((4, 4, None, 4, 4)) == []
    assert plateau_tuples((4, 4, 4, None, 4, 4, 4)) == [(0, 2, 4), (4, 6, 4)]


def test_plateaus_are_disjoint_and_greedy():
    # [1,4] also qualifies but overlaps the leftmost maximal run
    assert plateau_tuples((0, 1, 1, 2, 2)) == [(0, 2, 0)]


def test_plateau_oracle_exhaustive_up_to_length_8():
    for length in range(1, 9):
        for seq in itertools.product(range(5), repeat=length):
            assert plateau_tuples(seq) == oracles.enumerate_plateaus(seq, 1), seq


@settings(max_examples=300, deadline=None)
@given(
    st.lists(st.one_of(st.none(), st.integers(min_value=0, max_value=6)), min_size=1, max_size=12),
    st.integers(min_value=0, max_value=3),
)
def test_plateau_oracle_random_with_gaps(levels, tol):
    got = [(p.start, p.end, p.level) for p in detect_plateaus(levels, tol)]
    assert got == oracles.enumerate_plateaus(levels, tol)


def test_spike_example():
    labels = classify(prof((5, 5, 0, 5, 5)), PARAMS)
    assert ShapeLabel.SPIKE in labels.matched
    assert labels.primary is ShapeLabel.SPIKE


def test_progressive_examples():
    dec = classify(prof((0, 1, 2, 3, 4)), PARAMS)
    assert ShapeLabel.PROGRESSIVE_DECREASING in dec.matched
    inc = classify(prof((4, 3, 2, 1, 0)), PARAMS)
    assert ShapeLabel.PROGRESSIVE_INCREASING in inc.matched


def test_constant_profile_is_early_monostagnant_only():
    labels = classify(prof((3, 3, 3, 3, 3)), PARAMS)
    assert labels.matched == frozenset({ShapeLabel.EARLY_MONOSTAGNANT})
    assert labels.primary is ShapeLabel.EARLY_MONOSTAGNANT


def test_fluttering_example():
    labels = classify(prof((0, 5, 0, 5, 0)), PARAMS)
    assert ShapeLabel.FLUTTERING in labels.matched
    assert ShapeLabel.SPIKE not in labels.matched


def test_late_monostagnant():
    # plateau starts at index 4 > floor(7/2)
    labels = classify(prof((9, 0, 9, 0, 5, 5, 5)), PARAMS)
    assert ShapeLabel.LATE_MONOSTAGNANT in labels.matched


def test_absent_entries_skipped_in_pairwise_rules():
    labels = classify(prof((0, None, 1, None, 2)), PARAMS)
    assert ShapeLabel.PROGRESSIVE_DECREASING in labels.matched


def test_classify_needs_two_present_levels():
    with pytest.raises(ValueError, match="two present levels"):
        classify(prof((3, None, None)), PARAMS)


def test_classify_needs_resolved_lambda():
    with pytest.raises(ValueError, match="unresolved"):
        classify(prof((1, 2, 3)), ClassifierParams())


def test_param_validation():
    for bad in (
        dict(delta_spike=0),
        dict(epsilon=-1),
        dict(rho=0.0),
        dict(rho=1.5),
        dict(equiv_tol=-2),
        dict(lambda_level=-1),
    ):
        with pytest.raises(ValueError):
            ClassifierParams(**bad)


def test_lambda_resolution(gdp_scheme):
    assert default_lambda_level(gdp_scheme) == 19  # boundary 20
    assert gdp_scheme.labels[19] == "top-20"
    small = build_scheme([(3, 1)])
    assert default_lambda_level(small) == 2  # clamped to last bin
    resolved = ClassifierParams().resolved(gdp_scheme)
    assert resolved.lambda_level == 19
    assert ClassifierParams(lambda_level=5).resolved(gdp_scheme).lambda_level == 5


def test_primary_label_priority():
    assert primary_label({ShapeLabel.SPIKE, ShapeLabel.EMERGING}) is ShapeLabel.SPIKE
    assert primary_label(set()) is None
    assert primary_label({ShapeLabel.EARLY_MONOSTAGNANT}) is ShapeLabel.EARLY_MONOSTAGNANT
    assert (
        primary_label({ShapeLabel.EMERGING, ShapeLabel.LATE_MONOSTAGNANT})
        is ShapeLabel.LATE_MONOSTAGNANT
    )


def test_classifier_matches_oracle_small_exhaustive():
    for length in range(2, 6):
        for seq in itertools.product(range(5), repeat=length):
            got = {l.value for l in classify(prof(seq), PARAMS).matched}
            want = oracles.evaluate_rules(seq, delta=2, eps=0, lam=2, rho=0.5, tol=1)
            assert got == want, seq


@settings(max_examples=300, deadline=None)
@given(
    levels=st.lists(st.one_of(st.none(), st.integers(min_value=0, max_value=8)), min_size=2, max_size=12),
    delta=st.integers(min_value=1, max_value=3),
    eps=st.integers(min_value=0, max_value=2),
    lam=st.integers(min_value=0, max_value=8),
    tol=st.integers(min_value=0, max_value=2),
)
def test_classifier_matches_oracle_random(levels, delta, eps, lam, tol):
    if sum(1 for lv in levels if lv is not None) < 2:
        return
    params = ClassifierParams(delta_spike=delta, epsilon=eps, lambda_level=lam, rho=0.5, equiv_tol=tol)
    got = {l.value for l in classify(prof(levels), params).matched}
    want = oracles.evaluate_rules(levels, delta=delta, eps=eps, lam=lam, rho=0.5, tol=tol)
    assert got == want


@settings(max_examples=200, deadline=None)
@given(
    levels=st.lists(st.integers(min_value=0, max_value=6), min_size=2, max_size=10),
    shift=st.integers(min_value=1, max_value=5),
)
def test_relabel_invariance_with_shifted_lambda(levels, shift):
    base = classify(prof(levels), PARAMS).matched
    shifted_params = ClassifierParams(
        delta_spike=PARAMS.delta_spike,
        epsilon=PARAMS.epsilon,
        lambda_level=PARAMS.lambda_level + shift,
        rho=PARAMS.rho,
        equiv_tol=PARAMS.equiv_tol,
    )
    shifted = classify(prof([lv + shift for lv in levels]), shifted_params).matched
    assert base == shifted


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(min_value=0, max_value=6), min_size=2, max_size=10))
def test_progressive_labels_mutually_exclusive_at_eps_zero(levels):
    if len(set(levels)) == 1:
        return
    matched = classify(prof(levels), PARAMS).matched
    assert not (
        ShapeLabel.PROGRESSIVE_DECREASING in matched
        and ShapeLabel.PROGRESSIVE_INCREASING in matched
    )


def test_item_profile_and_mean():
    table = TimeTable(
        items=("a", "b"),
        time_points=("t1", "t2"),
        values=((5.0, 1.0), (2.0, 3.0)),
    )
    binned = build_binned_map(table, build_scheme([(2, 1)]))
    profile = item_profile(binned, "a")
    assert profile.levels == (0, 1)
    assert profile.mean_level == 0.5


def test_all_absent_profile_flagged():
    profile = LevelProfile.from_levels("ghost", (None, None, None))
    assert profile.mean_level is None
    assert profile.present_count == 0


def test_item_profile_unknown_item():
    from timerank import UnknownItemError

    table = TimeTable(items=("a",), time_points=("t1", "t2"), values=((1.0, 2.0),))
    binned = build_binned_map(table, build_scheme([(1, 1)]))
    with pytest.raises(UnknownItemError):
        item_profile(binned, "nope")


def test_histogram_constant_map():
    # every item keeps its rank at every time point: constant levels
    table = TimeTable(
        items=("a", "b", "c"),
        time_points=("t1", "t2", "t3"),
        values=((9.0, 9.0, 9.0), (5.0, 5.0, 5.0), (1.0, 1.0, 1.0)),
    )
    binned = build_binned_map(table, build_scheme([(3, 1)]))
    counts = profile_histogram(binned)
    assert counts["EARLY_MONOSTAGNANT"] == 3
    assert sum(counts.values()) == 3


def test_histogram_counts_never_present_as_none():
    table = TimeTable(
        items=("a", "ghost"),
        time_points=("t1", "t2"),
        values=((1.0, 2.0), (None, None)),
    )
    binned = build_binned_map(table, build_scheme([(2, 1)]))
    counts = profile_histogram(binned)
    assert counts["NONE"] == 1
    assert sum(counts.values()) == 2


def test_histogram_csv_shape():
    text = write_histogram_csv({"SPIKE": 2, "NONE": 1})
    lines = text.strip().splitlines()
    assert lines[0] == "label,count"
    assert lines[1] == "SPIKE,2"
    assert lines[-1] == "NONE,1"
    assert len(lines) == 10
