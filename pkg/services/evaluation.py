"""
Analogy-question scoring and noun-modifier classification.

A measure is any callable (WordPair, WordPair) -> float; the LRA and VSM
measures both fit.
"""
from __future__ import annotations

import csv
import logging
from pathlib import Path
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple, Union

from pydantic import ValidationError

from framework.errors import ContractViolation, DatasetFormatError, InputError
from models.evaluation import (
    AnalogyQuestion,
    Answer,
    ClassConfusion,
    ClassMetrics,
    EvalReport,
    LoocvReport,
    NounModifierInstance,
)
from models.pair import WordPair
from services.pairspace import parse_pair
from resources import CLASS_GROUPS_FILE

logger = logging.getLogger(__name__)

Measure = Callable[[WordPair, WordPair], float]

SKIP_CREDIT = 0.2
ANSWER_LETTERS = "abcde"
NM_HEADER = ["modifier", "head", "class30", "class5"]


def _read_lines(path: Path) -> List[str]:
    try:
        return path.read_text(encoding="utf-8").splitlines()
    except (OSError, UnicodeDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def load_questions(file: Union[str, Path]) -> List[AnalogyQuestion]:
    """Seven meaningful lines per question: stem, five choices, answer letter."""
    path = Path(file)
    lines = [
        (number, line.strip())
        for number, line in enumerate(_read_lines(path), start=1)
        if line.strip() and not line.lstrip().startswith("#")
    ]
    if len(lines) % 7:
        raise DatasetFormatError(f"{path}: {len(lines)} lines is not a whole number of 7-line questions")

    questions = []
    for start in range(0, len(lines), 7):
        block = lines[start:start + 7]
        pairs = [parse_pair(line, number) for number, line in block[:6]]
        number, letter = block[6]
        if len(letter) != 1 or letter.lower() not in ANSWER_LETTERS:
            raise DatasetFormatError(f"answer must be one of a-e, got '{letter}'", number)
        questions.append(
            AnalogyQuestion(stem=pairs[0], choices=pairs[1:], answer_index=ANSWER_LETTERS.index(letter.lower()))
        )
    logger.info("loaded %d analogy questions from %s", len(questions), path)
    return questions


def load_class_groups(file: Union[str, Path, None] = None) -> Dict[str, str]:
    path = Path(file) if file is not None else CLASS_GROUPS_FILE
    groups: Dict[str, str] = {}
    for number, line in enumerate(_read_lines(path), start=1):
        if not line.strip():
            continue
        fields = line.split("\t")
        if len(fields) != 2:
            raise DatasetFormatError(f"{path}: expected class30<TAB>class5", number)
        groups[fields[0].strip()] = fields[1].strip()
    return groups


def load_noun_modifiers(file: Union[str, Path]) -> List[NounModifierInstance]:
    """CSV rows `modifier,head,class30,class5`; a header row is optional."""
    path = Path(file)
    instances: List[NounModifierInstance] = []
    # classes from the shipped grouping are pinned to their group; others must merely be consistent
    group_of: Dict[str, str] = load_class_groups()
    with open(path, newline="", encoding="utf-8") as handle:
        for number, row in enumerate(csv.reader(handle), start=1):
            row = [field.strip() for field in row]
            if not any(row) or (number == 1 and [f.lower() for f in row] == NM_HEADER):
                continue
            if len(row) != 4:
                raise DatasetFormatError(f"expected 4 fields, got {len(row)}", number)
            try:
                instance = NounModifierInstance(
                    modifier=row[0].lower(), head=row[1].lower(), class30=row[2].lower(), class5=row[3].lower()
                )
            except ValidationError as exc:
                raise DatasetFormatError(exc.errors()[0]["msg"], number) from None
            known = group_of.setdefault(instance.class30, instance.class5)
            if known != instance.class5:
                raise DatasetFormatError(
                    f"class '{instance.class30}' assigned to both '{known}' and '{instance.class5}'", number
                )
            instances.append(instance)
    logger.info("loaded %d noun-modifier instances from %s", len(instances), path)
    return instances


def answer_question(question: AnalogyQuestion, measure: Measure) -> Answer:
    """Highest-similarity choice, lowest index on ties; skipped when every similarity is 0."""
    similarities = [float(measure(question.stem, choice)) for choice in question.choices]
    if all(value == 0.0 for value in similarities):
        return Answer(choice=None, answer_index=question.answer_index, similarities=similarities)
    best = max(range(len(similarities)), key=lambda i: (similarities[i], -i))
    return Answer(choice=best, answer_index=question.answer_index, similarities=similarities)


def sat_score(correct: int, skipped: int, total: int) -> float:
    if total <= 0:
        raise ContractViolation("cannot score an empty question set")
    return (correct + SKIP_CREDIT * skipped) / total


def score_sat(results: Sequence[Answer]) -> float:
    """One point per correct answer, 0.2 per skipped question, over the question count."""
    correct = sum(1 for answer in results if answer.correct)
    skipped = sum(1 for answer in results if answer.skipped)
    return sat_score(correct, skipped, len(results))


def evaluate_sat(questions: Sequence[AnalogyQuestion], measure: Measure, measure_name: str) -> Tuple[EvalReport, List[Answer]]:
    answers = [answer_question(question, measure) for question in questions]
    correct = sum(1 for answer in answers if answer.correct)
    skipped = sum(1 for answer in answers if answer.skipped)
    report = EvalReport(
        task="sat",
        measure=measure_name,
        correct=correct,
        incorrect=len(answers) - correct - skipped,
        skipped=skipped,
        total=len(answers),
        score=score_sat(answers),
    )
    logger.info("%s on %d questions: %d correct, %d skipped, score %.4f",
                measure_name, report.total, correct, skipped, report.score)
    return report, answers


def confusion_by_class(actual: Sequence[str], predicted: Sequence[str]) -> Dict[str, ClassConfusion]:
    labels = sorted(set(actual) | set(predicted))
    confusion = {label: ClassConfusion() for label in labels}
    for truth, guess in zip(actual, predicted):
        if truth == guess:
            confusion[truth].true_positives += 1
        else:
            confusion[guess].false_positives += 1
            confusion[truth].false_negatives += 1
    return confusion


def _ratio(numerator: int, denominator: int) -> float:
    return numerator / denominator if denominator else 0.0


def class_metrics(confusion: Mapping[str, ClassConfusion]) -> List[ClassMetrics]:
    metrics = []
    for label in sorted(confusion):
        counts = confusion[label]
        precision = _ratio(counts.true_positives, counts.true_positives + counts.false_positives)
        recall = _ratio(counts.true_positives, counts.true_positives + counts.false_negatives)
        f = 2 * precision * recall / (precision + recall) if precision + recall > 0 else 0.0
        metrics.append(ClassMetrics(label=label, precision=precision, recall=recall, f=f))
    return metrics


def macro_f(confusion: Mapping[str, ClassConfusion]) -> Tuple[float, float, float]:
    """Unweighted means over classes of precision, recall and F."""
    metrics = class_metrics(confusion)
    if not metrics:
        return 0.0, 0.0, 0.0
    n = len(metrics)
    return (
        sum(m.precision for m in metrics) / n,
        sum(m.recall for m in metrics) / n,
        sum(m.f for m in metrics) / n,
    )


def _classification_report(task: str, measure_name: str, actual: Sequence[str], predicted: Sequence[str]) -> EvalReport:
    confusion = confusion_by_class(actual, predicted)
    precision, recall, f = macro_f(confusion)
    correct = sum(1 for truth, guess in zip(actual, predicted) if truth == guess)
    return EvalReport(
        task=task,
        measure=measure_name,
        correct=correct,
        incorrect=len(actual) - correct,
        total=len(actual),
        accuracy=_ratio(correct, len(actual)),
        precision=precision,
        recall=recall,
        f=f,
        per_class=class_metrics(confusion),
    )


def loocv_nearest_neighbor(
    instances: Sequence[NounModifierInstance], measure: Measure, measure_name: str = "lra"
) -> LoocvReport:
    """Label each instance with its most similar other instance (lowest index on ties)."""
    n = len(instances)
    if n < 2:
        raise ContractViolation("leave-one-out needs at least two instances")
    pairs = [instance.pair for instance in instances]

    similarity: List[List[Optional[float]]] = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            similarity[i][j] = similarity[j][i] = float(measure(pairs[i], pairs[j]))

    neighbors: List[int] = []
    for i in range(n):
        others = [j for j in range(n) if j != i]
        neighbors.append(max(others, key=lambda j: (similarity[i][j], -j)))

    report = LoocvReport(
        measure=measure_name,
        class30=_classification_report(
            "nm30", measure_name, [x.class30 for x in instances], [instances[j].class30 for j in neighbors]
        ),
        class5=_classification_report(
            "nm5", measure_name, [x.class5 for x in instances], [instances[j].class5 for j in neighbors]
        ),
        neighbors=neighbors,
    )
    logger.info("%s LOOCV on %d instances: accuracy %.4f (30-class), %.4f (5-class)",
                measure_name, n, report.class30.accuracy, report.class5.accuracy)
    return report


def _percent(value: Optional[float]) -> str:
    return "" if value is None else f"{100 * value:.1f}%"


def format_table(reports: Sequence[EvalReport]) -> str:
    """Aligned text table, one column per report, rows labelled as in published result tables."""
    if not reports:
        return ""
    analogy = reports[0].task == "sat"
    rows: List[Tuple[str, List[str]]] = [("Correct", [str(r.correct) for r in reports]),
                                         ("Incorrect", [str(r.incorrect) for r in reports])]
    if analogy:
        rows.append(("Skipped", [str(r.skipped) for r in reports]))
    rows.append(("Total", [str(r.total) for r in reports]))
    if analogy:
        rows.append(("Score", [_percent(r.score) for r in reports]))
    else:
        rows.extend([
            ("Accuracy", [_percent(r.accuracy) for r in reports]),
            ("Precision", [_percent(r.precision) for r in reports]),
            ("Recall", [_percent(r.recall) for r in reports]),
            ("F", [_percent(r.f) for r in reports]),
        ])
    header = [r.measure.upper() for r in reports]
    label_width = max(len(label) for label, _ in rows)
    widths = [max(len(header[i]), *(len(values[i]) for _, values in rows)) for i in range(len(reports))]
    lines = [" " * label_width + "  " + "  ".join(h.rjust(w) for h, w in zip(header, widths))]
    for label, values in rows:
        lines.append(label.ljust(label_width) + "  " + "  ".join(v.rjust(w) for v, w in zip(values, widths)))
    return "\n".join(lines) + "\n"
