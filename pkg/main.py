from __future__ import annotations

import json
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

import click

from framework.config import load_config
from framework.errors import DatasetFormatError, InputError, LraError
from models.config import LraConfig
from models.evaluation import AnalogyQuestion
from models.pair import WordPair
from models.similarity import Comparison
from services.corpus_index import INDEX_MAGIC, Corpus, build_index
from services.evaluation import (
    evaluate_sat,
    format_table,
    load_noun_modifiers,
    load_questions,
    loocv_nearest_neighbor,
)
from services.pairspace import load_pairs, parse_pair
from services.pipeline import mine_patterns, run_pipeline
from services.thesaurus import load_thesaurus
from services.vsm import VsmMeasure, load_terms
from utils.log import configure_logging

EXISTING_FILE = click.Path(exists=True, dir_okay=False, path_type=Path)
EXISTING_PATH = click.Path(exists=True, path_type=Path)


class CliState:
    def __init__(self, config: LraConfig, out_dir: Optional[Path]):
        self.config = config
        self.out_dir = out_dir


class LraGroup(click.Group):
    """Turns LraError into `error: <detail>` on stderr and the error's exit code."""

    def invoke(self, ctx: click.Context):
        try:
            return super().invoke(ctx)
        except LraError as exc:
            click.echo(f"error: {exc.detail}", err=True)
            ctx.exit(exc.exit_code)


def _emit(payload) -> None:
    click.echo(json.dumps(payload, indent=2))


def open_corpus(path: Path) -> Corpus:
    """A saved index file, or raw text (a file or a directory) indexed on the fly."""
    if path.is_file():
        with open(path, "rb") as handle:
            if handle.read(len(INDEX_MAGIC)) == INDEX_MAGIC:
                return Corpus.load(path)
    return build_index(path)


def question_pairs(questions: Sequence[AnalogyQuestion]) -> List[WordPair]:
    pairs: List[WordPair] = []
    for question in questions:
        pairs.append(question.stem)
        pairs.extend(question.choices)
    return pairs


def load_comparisons(file: Path) -> List[Tuple[WordPair, WordPair]]:
    """Lines of `a b c d`, comparing a:b with c:d."""
    try:
        lines = file.read_text(encoding="utf-8").splitlines()
    except (OSError, UnicodeDecodeError) as exc:
        raise InputError(f"cannot read {file}: {exc}") from exc
    comparisons = []
    for number, line in enumerate(lines, start=1):
        fields = line.split()
        if not fields or fields[0].startswith("#"):
            continue
        if len(fields) != 4:
            raise DatasetFormatError(f"expected 'a b c d', got '{line.strip()}'", number)
        comparisons.append((parse_pair(" ".join(fields[:2]), number), parse_pair(" ".join(fields[2:]), number)))
    return comparisons


def _run(state: CliState, corpus_path: Path, thesaurus_path: Path, pairs: Sequence[WordPair], dump_matrix: bool = False):
    corpus = open_corpus(corpus_path)
    thesaurus = load_thesaurus(thesaurus_path)
    return run_pipeline(state.config, corpus, thesaurus, pairs, out_dir=state.out_dir, dump_matrix=dump_matrix)


# -----------------------------------------------------------------------------
# Root
# -----------------------------------------------------------------------------
@click.group(cls=LraGroup, name="lra")
@click.option("--config", "config_path", type=EXISTING_FILE, help="key=value file with LraConfig fields.")
@click.option("--seed", type=int, default=None, help="Overrides the configured seed.")
@click.option("--out", "out_dir", type=click.Path(file_okay=False, path_type=Path), default=None,
              help="Directory for run artifacts; runs with identical inputs are reused.")
@click.option("--log-level", default="WARNING", show_default=True,
              type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR"], case_sensitive=False))
@click.pass_context
def cli(ctx: click.Context, config_path: Optional[Path], seed: Optional[int], out_dir: Optional[Path], log_level: str):
    """Latent Relational Analysis: relational similarity between word pairs."""
    configure_logging(log_level)
    ctx.obj = CliState(load_config(config_path, overrides={"seed": seed}), out_dir)


# -----------------------------------------------------------------------------
# Corpus index and thesaurus
# -----------------------------------------------------------------------------
@cli.group()
def index():
    """Corpus index commands."""


@index.command("build")
@click.argument("corpus_dir", type=EXISTING_PATH)
@click.option("-o", "--output", type=click.Path(dir_okay=False, path_type=Path), required=True)
def index_build(corpus_dir: Path, output: Path):
    corpus = build_index(corpus_dir)
    corpus.save(output)
    _emit({"index": str(output), "passages": len(corpus), "tokens": corpus.token_count, "sources": len(corpus.sources)})


@cli.group()
def thesaurus():
    """Thesaurus commands."""


@thesaurus.command("check")
@click.argument("file", type=EXISTING_FILE)
def thesaurus_check(file: Path):
    loaded = load_thesaurus(file)
    _emit({"thesaurus": str(file), "entries": len(loaded)})


# -----------------------------------------------------------------------------
# Pipeline
# -----------------------------------------------------------------------------
corpus_option = click.option("--corpus", "corpus_path", type=EXISTING_PATH, required=True,
                             help="Index file, text file or directory of text files.")
thesaurus_option = click.option("--thesaurus", "thesaurus_path", type=EXISTING_FILE, required=True)


@cli.command("run")
@corpus_option
@thesaurus_option
@click.option("--pairs", "pairs_path", type=EXISTING_FILE, required=True, help="One 'a b [pos_a pos_b]' per line.")
@click.option("--dump-matrix", is_flag=True, help="Also write the weighted matrix as coordinate text.")
@click.pass_obj
def run(state: CliState, corpus_path: Path, thesaurus_path: Path, pairs_path: Path, dump_matrix: bool):
    result = _run(state, corpus_path, thesaurus_path, load_pairs(pairs_path), dump_matrix=dump_matrix)
    _emit(result.manifest.model_dump(mode="json"))


@cli.command("sim")
@click.argument("pairs_file", type=EXISTING_FILE)
@corpus_option
@thesaurus_option
@click.pass_obj
def sim(state: CliState, pairs_file: Path, corpus_path: Path, thesaurus_path: Path):
    """Relational similarity for each `a b c d` line."""
    comparisons = load_comparisons(pairs_file)
    pairs = [pair for comparison in comparisons for pair in comparison]
    measure = _run(state, corpus_path, thesaurus_path, pairs).measure()
    results = []
    for pair1, pair2 in comparisons:
        result = measure.similarity(pair1, pair2)
        results.append(Comparison(
            pair1=str(pair1), pair2=str(pair2), similarity=result.value,
            original_cosine=result.original_cosine, n_qualifying=result.n_qualifying,
        ).model_dump(mode="json"))
    _emit(results)


@cli.group()
def patterns():
    """Pattern commands."""


@patterns.command("dump")
@corpus_option
@thesaurus_option
@click.option("--pairs", "pairs_path", type=EXISTING_FILE, required=True)
@click.pass_obj
def patterns_dump(state: CliState, corpus_path: Path, thesaurus_path: Path, pairs_path: Path):
    """Selected patterns and their support, as TSV."""
    table = mine_patterns(state.config, open_corpus(corpus_path), load_thesaurus(thesaurus_path), load_pairs(pairs_path))
    click.echo(table.to_tsv(), nl=False)


# -----------------------------------------------------------------------------
# Evaluation
# -----------------------------------------------------------------------------
format_option = click.option("--format", "output_format", type=click.Choice(["json", "table"]), default="json",
                             show_default=True)
terms_option = click.option("--terms", "terms_path", type=EXISTING_FILE, default=None,
                            help="Joining terms, one per line; defaults to the bundled list.")


def _measure(state: CliState, name: str, corpus_path: Path, thesaurus_path: Optional[Path],
             terms_path: Optional[Path], pairs: Sequence[WordPair]):
    if name == "vsm":
        return VsmMeasure(open_corpus(corpus_path), load_terms(terms_path))
    if thesaurus_path is None:
        raise InputError("--thesaurus is required for --measure lra")
    return _run(state, corpus_path, thesaurus_path, pairs).measure()


def _sat(state: CliState, questions_path: Path, measure_name: str, corpus_path: Path,
         thesaurus_path: Optional[Path], terms_path: Optional[Path], output_format: str) -> None:
    questions = load_questions(questions_path)
    measure = _measure(state, measure_name, corpus_path, thesaurus_path, terms_path, question_pairs(questions))
    report, answers = evaluate_sat(questions, measure, measure_name)
    if output_format == "table":
        click.echo(format_table([report]), nl=False)
    else:
        _emit({"report": report.model_dump(mode="json"), "answers": [a.model_dump(mode="json") for a in answers]})


def _nm(state: CliState, dataset_path: Path, measure_name: str, corpus_path: Path,
        thesaurus_path: Optional[Path], terms_path: Optional[Path], output_format: str) -> None:
    instances = load_noun_modifiers(dataset_path)
    measure = _measure(state, measure_name, corpus_path, thesaurus_path, terms_path, [x.pair for x in instances])
    report = loocv_nearest_neighbor(instances, measure, measure_name)
    if output_format == "table":
        click.echo("30 classes")
        click.echo(format_table([report.class30]), nl=False)
        click.echo("5 classes")
        click.echo(format_table([report.class5]), nl=False)
    else:
        _emit(report.model_dump(mode="json"))


@cli.group("eval")
def evaluate():
    """Benchmarks: analogy questions (sat) and noun-modifier classes (nm)."""


@evaluate.command("sat")
@click.argument("questions_path", type=EXISTING_FILE)
@click.option("--measure", "measure_name", type=click.Choice(["lra", "vsm"]), default="lra", show_default=True)
@corpus_option
@click.option("--thesaurus", "thesaurus_path", type=EXISTING_FILE, default=None)
@terms_option
@format_option
@click.pass_obj
def eval_sat(state: CliState, questions_path: Path, measure_name: str, corpus_path: Path,
             thesaurus_path: Optional[Path], terms_path: Optional[Path], output_format: str):
    _sat(state, questions_path, measure_name, corpus_path, thesaurus_path, terms_path, output_format)


@evaluate.command("nm")
@click.argument("dataset_path", type=EXISTING_FILE)
@click.option("--measure", "measure_name", type=click.Choice(["lra", "vsm"]), default="lra", show_default=True)
@corpus_option
@click.option("--thesaurus", "thesaurus_path", type=EXISTING_FILE, default=None)
@terms_option
@format_option
@click.pass_obj
def eval_nm(state: CliState, dataset_path: Path, measure_name: str, corpus_path: Path,
            thesaurus_path: Optional[Path], terms_path: Optional[Path], output_format: str):
    _nm(state, dataset_path, measure_name, corpus_path, thesaurus_path, terms_path, output_format)


@cli.group()
def vsm():
    """The joining-term baseline on its own."""


@vsm.group("eval")
def vsm_evaluate():
    pass


@vsm_evaluate.command("sat")
@click.argument("questions_path", type=EXISTING_FILE)
@corpus_option
@terms_option
@format_option
@click.pass_obj
def vsm_eval_sat(state: CliState, questions_path: Path, corpus_path: Path, terms_path: Optional[Path],
                 output_format: str):
    _sat(state, questions_path, "vsm", corpus_path, None, terms_path, output_format)


@vsm_evaluate.command("nm")
@click.argument("dataset_path", type=EXISTING_FILE)
@corpus_option
@terms_option
@format_option
@click.pass_obj
def vsm_eval_nm(state: CliState, dataset_path: Path, corpus_path: Path, terms_path: Optional[Path],
                output_format: str):
    _nm(state, dataset_path, "vsm", corpus_path, None, terms_path, output_format)


# -----------------------------------------------------------------------------
# Entrypoint for `python main.py`
# -----------------------------------------------------------------------------
if __name__ == "__main__":
    cli()
