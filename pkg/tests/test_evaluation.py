import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from framework.errors import ContractViolation, DatasetFormatError
from models.evaluation import AnalogyQuestion, Answer, ClassConfusion, NounModifierInstance
from models.pair import WordPair
from services.evaluation import (
    answer_question,
    class_metrics,
    confusion_by_class,
    evaluate_sat,
    format_table,
    load_class_groups,
    load_noun_modifiers,
    load_questions,
    loocv_nearest_neighbor,
    macro_f,
    sat_score,
    score_sat,
)
from services.similarity import cosine
from tests.helpers import write_lines


def pair(text):
    a, b = text.split(":")
    return WordPair(a=a, b=b)


def question(answer_index=1):
    return AnalogyQuestion(
        stem=pair("quart:volume"),
        choices=[pair("day:night"), pair("mile:distance"), pair("decade:century"), pair("friction:heat"),
                 pair("part:whole")],
        answer_index=answer_index,
    )


def test_published_scores_reproduce_from_counts():
    assert round(100 * sat_score(210, 4, 374), 1) == 56.4
    assert round(100 * sat_score(144, 34, 374), 1) == 40.3
    assert sat_score(210, 4, 374) == (210 + 0.2 * 4) / 374
    with pytest.raises(ContractViolation):
        sat_score(0, 0, 0)


def test_answer_takes_the_most_similar_choice():
    scores = {"day:night": 0.1, "mile:distance": 0.9, "decade:century": 0.9, "friction:heat": 0.2, "part:whole": 0.0}
    answer = answer_question(question(), lambda stem, choice: scores[str(choice)])
    assert (answer.choice, answer.correct, answer.skipped) == (1, True, False)


def test_all_zero_similarities_skip_the_question():
    answer = answer_question(question(), lambda stem, choice: 0.0)
    assert answer.skipped and not answer.correct


def by_position(values):
    position = {choice.key: i for i, choice in enumerate(question().choices)}
    return lambda stem, choice: values[position[choice.key]]


def test_tied_choices_go_to_the_lower_index():
    assert answer_question(question(), by_position([0.5, 0.5, 0.0, 0.0, 0.0])).choice == 0


@given(st.lists(st.integers(0, 1000), min_size=5, max_size=5))
def test_choice_survives_monotone_rescaling(grid):
    values = [g / 1000 for g in grid]
    plain = answer_question(question(), by_position(values))
    rescaled = answer_question(question(), by_position([2 * x + x ** 3 for x in values]))
    assert plain.choice == rescaled.choice


def graded(correct, incorrect, skipped):
    return (
        [Answer(choice=1, answer_index=1)] * correct
        + [Answer(choice=0, answer_index=1)] * incorrect
        + [Answer(choice=None, answer_index=1)] * skipped
    )


def test_score_sat_bounds_and_monotonicity():
    assert score_sat(graded(10, 0, 0)) == 1.0
    assert score_sat(graded(0, 0, 10)) == pytest.approx(0.2)
    assert score_sat(graded(0, 10, 0)) == 0.0
    scores = [score_sat(graded(correct, 10 - correct, 0)) for correct in range(11)]
    assert scores == sorted(scores) and len(set(scores)) == 11


def test_evaluate_sat_counts():
    questions = [question(1), question(2), question(3)]
    report, answers = evaluate_sat(questions, lambda s, c: 1.0 if str(c) == "mile:distance" else 0.0, "toy")
    assert (report.correct, report.incorrect, report.skipped, report.total) == (1, 2, 0, 3)
    assert report.score == pytest.approx(1 / 3)
    assert [a.choice for a in answers] == [1, 1, 1]


def test_load_questions(toy, toy_questions):
    assert len(toy_questions) == 10
    assert str(toy_questions[0].stem) == "cat:meow"
    assert [q.answer_index for q in toy_questions] == [i % 5 for i in range(10)]


@pytest.mark.parametrize(
    "lines,message",
    [
        (["cat meow", "dog bark", "a b", "c d", "e f", "g h"], "7-line"),
        (["cat meow", "dog bark", "a b", "c d", "e f", "g h", "f"], "line 7"),
        (["cat meow", "dog", "a b", "c d", "e f", "g h", "a"], "line 2"),
    ],
)
def test_malformed_questions(tmp_path, lines, message):
    with pytest.raises(DatasetFormatError, match=message):
        load_questions(write_lines(tmp_path / "q.txt", lines))


def test_macro_f_hand_confusion():
    confusion = confusion_by_class(["a", "a", "b", "b", "c"], ["a", "b", "b", "b", "a"])
    assert confusion["c"] == ClassConfusion(true_positives=0, false_positives=0, false_negatives=1)
    precision, recall, f = macro_f(confusion)
    assert precision == pytest.approx((0.5 + 2 / 3 + 0.0) / 3, abs=1e-12)
    assert recall == pytest.approx((0.5 + 1.0 + 0.0) / 3, abs=1e-12)
    assert f == pytest.approx((0.5 + 0.8 + 0.0) / 3, abs=1e-12)


@given(st.lists(st.tuples(st.sampled_from("abcd"), st.sampled_from("abcd")), min_size=1, max_size=40))
def test_macro_f_lies_within_per_class_f(labelled):
    confusion = confusion_by_class([truth for truth, _ in labelled], [guess for _, guess in labelled])
    per_class = [m.f for m in class_metrics(confusion)]
    _, _, f = macro_f(confusion)
    assert min(per_class) - 1e-12 <= f <= max(per_class) + 1e-12


def separable_instances():
    rows = [
        ("clay", "pot", "material", "qualitative", [1.0, 0.0, 0.0]),
        ("iron", "gate", "material", "qualitative", [0.9, 0.1, 0.0]),
        ("wood", "chair", "material", "qualitative", [0.8, 0.0, 0.1]),
        ("laser", "printer", "instrument", "participatory", [0.0, 1.0, 0.1]),
        ("steam", "engine", "instrument", "participatory", [0.1, 0.9, 0.0]),
        ("cave", "bear", "location", "spatial", [0.0, 0.1, 1.0]),
        ("sea", "bird", "location", "spatial", [0.1, 0.0, 0.9]),
    ]
    instances = [NounModifierInstance(modifier=m, head=h, class30=c30, class5=c5) for m, h, c30, c5, _ in rows]
    vectors = {(m, h): np.array(v) for m, h, _, _, v in rows}
    return instances, lambda p, q: cosine(vectors[p.key], vectors[q.key])


def test_loocv_on_separable_classes():
    instances, measure = separable_instances()
    report = loocv_nearest_neighbor(instances, measure, "toy")
    assert report.class30.accuracy == 1.0
    assert report.class30.f == pytest.approx(1.0)
    assert report.class5.accuracy == 1.0
    assert report.neighbors[0] in (1, 2)


def test_loocv_breaks_ties_towards_lower_index():
    instances, _ = separable_instances()
    report = loocv_nearest_neighbor(instances, lambda p, q: 0.5)
    assert report.neighbors == [1] + [0] * (len(instances) - 1)


def test_loocv_with_two_instances_of_one_class():
    instances = [
        NounModifierInstance(modifier="clay", head="pot", class30="material", class5="qualitative"),
        NounModifierInstance(modifier="iron", head="gate", class30="material", class5="qualitative"),
    ]
    report = loocv_nearest_neighbor(instances, lambda p, q: 0.3)
    assert report.neighbors == [1, 0]
    assert report.class30.accuracy == 1.0
    assert report.class5.accuracy == 1.0


def test_loocv_needs_two_instances():
    instances, measure = separable_instances()
    with pytest.raises(ContractViolation):
        loocv_nearest_neighbor(instances[:1], measure)


def test_class_groups_cover_thirty_classes():
    groups = load_class_groups()
    assert len(groups) == 30
    assert set(groups.values()) == {"causal", "temporal", "spatial", "participatory", "qualitative"}
    assert groups["material"] == "qualitative"


def test_noun_modifier_loader(tmp_path, toy):
    instances = load_noun_modifiers(toy.noun_modifiers)
    assert len(instances) == 30
    assert instances[0].pair == WordPair(a="mason", b="stone")

    with pytest.raises(DatasetFormatError, match="line 2"):
        load_noun_modifiers(write_lines(tmp_path / "bad.csv", ["laser,printer,instrument,participatory",
                                                                  "clay,pot,material,spatial"]))
    with pytest.raises(DatasetFormatError, match="4 fields"):
        load_noun_modifiers(write_lines(tmp_path / "short.csv", ["laser,printer,instrument"]))
    custom = load_noun_modifiers(write_lines(tmp_path / "new.csv", ["a,b,novel,causal", "c,d,novel,causal"]))
    assert [x.class30 for x in custom] == ["novel", "novel"]


def test_toy_noun_modifiers_are_classified_by_lra(toy_run, toy):
    report = loocv_nearest_neighbor(load_noun_modifiers(toy.noun_modifiers), toy_run.measure())
    assert report.class30.accuracy == 1.0
    assert report.class5.accuracy == 1.0


def test_format_table_uses_result_row_labels():
    report, _ = evaluate_sat([question(1)], lambda s, c: 1.0 if str(c) == "mile:distance" else 0.0, "lra")
    table = format_table([report])
    assert [line.split()[0] for line in table.splitlines()[1:]] == ["Correct", "Incorrect", "Skipped", "Total", "Score"]
    assert "100.0%" in table

    instances, measure = separable_instances()
    nm = format_table([loocv_nearest_neighbor(instances, measure).class5])
    assert [line.split()[0] for line in nm.splitlines()[1:]] == [
        "Correct", "Incorrect", "Total", "Accuracy", "Precision", "Recall", "F",
    ]
