"""
End-to-end run: alternates, phrases, patterns, matrix, weighting, SVD, projection.

Each stage is timed and wrapped so a failure names the stage. With an output
directory, artifacts land under `<out>/<run digest prefix>/` and a later run
with the same corpus, thesaurus, pairs and configuration reuses them.
"""
from __future__ import annotations

import json
import logging
import time
from contextlib import contextmanager
from pathlib import Path
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

from pydantic import TypeAdapter, ValidationError

from framework.artifacts import canonical_json, digest_bytes, digest_parts
from framework.errors import ContractViolation, IndexFormatError, PipelineStageError
from models.config import LraConfig
from models.manifest import MatrixStats, RunManifest, StageTiming
from models.matrix import PairPatternMatrix
from models.pair import PairVersions, WordPair
from models.pattern import PatternTable
from models.space import ProjectedSpace
from services.corpus_index import Corpus
from services.decomposition import load_space, project, save_space, truncated_svd, unprojected_space
from services.matrix import build_matrix, log_entropy_transform, map_columns, map_rows
from services.pairspace import filter_alternates, generate_alternates
from services.patterns import harvest_phrases, mine_top_patterns, unique_versions
from services.similarity import LraMeasure
from services.thesaurus import Thesaurus

logger = logging.getLogger(__name__)

STAGES = (
    "find_alternates",
    "filter_alternates",
    "find_phrases",
    "find_patterns",
    "map_rows",
    "map_columns",
    "build_matrix",
    "log_entropy",
    "svd",
    "projection",
)

MANIFEST_FILE = "manifest.json"
SPACE_FILE = "space.lraprj"
VERSIONS_FILE = "versions.json"
PATTERNS_FILE = "patterns.tsv"
MATRIX_FILE = "matrix.coo.txt"

_versions_adapter = TypeAdapter(List[PairVersions])

PairKey = Tuple[str, str]


class PipelineResult:
    def __init__(
        self,
        space: ProjectedSpace,
        manifest: RunManifest,
        versions: Sequence[PairVersions],
        pattern_table: Optional[PatternTable] = None,
        matrix: Optional[PairPatternMatrix] = None,
    ):
        self.space = space
        self.manifest = manifest
        self.versions = list(versions)
        self.pattern_table = pattern_table
        self.matrix = matrix

    def versions_by_pair(self) -> Dict[PairKey, PairVersions]:
        found: Dict[PairKey, PairVersions] = {}
        for versions in self.versions:
            found.setdefault(versions.original.key, versions)
        return found

    def measure(self) -> LraMeasure:
        return LraMeasure(self.space, self.versions_by_pair())


class _StageClock:
    def __init__(self) -> None:
        self.timings: List[StageTiming] = []

    @contextmanager
    def stage(self, name: str) -> Iterator[None]:
        logger.info("stage %s: start", name)
        started = time.perf_counter()
        try:
            yield
        except PipelineStageError:
            raise
        except Exception as exc:
            raise PipelineStageError(name, exc) from exc
        elapsed = time.perf_counter() - started
        self.timings.append(StageTiming(stage=name, seconds=elapsed))
        logger.info("stage %s: done in %.3fs", name, elapsed)


def corpus_digest(corpus: Corpus) -> str:
    return digest_bytes(canonical_json(corpus.to_payload()))


def thesaurus_digest(thesaurus: Thesaurus) -> str:
    entries = sorted((entry.model_dump(mode="json") for entry in thesaurus), key=lambda e: (e["headword"], e["pos"]))
    return digest_bytes(canonical_json(entries))


def pairs_digest(pairs: Sequence[WordPair]) -> str:
    return digest_bytes(canonical_json([pair.model_dump(mode="json") for pair in pairs]))


def _run_digest(corpus_hash: str, thesaurus_hash: str, pairs_hash: str, config: LraConfig) -> str:
    return digest_parts([corpus_hash, thesaurus_hash, pairs_hash, canonical_json(config.model_dump(mode="json")).decode()])


def _load_cached(run_dir: Path) -> Optional[PipelineResult]:
    manifest_path = run_dir / MANIFEST_FILE
    if not (manifest_path.is_file() and (run_dir / SPACE_FILE).is_file() and (run_dir / VERSIONS_FILE).is_file()):
        return None
    try:
        manifest = RunManifest.model_validate_json(manifest_path.read_text(encoding="utf-8"))
        versions = _versions_adapter.validate_json((run_dir / VERSIONS_FILE).read_bytes())
        space = load_space(run_dir / SPACE_FILE)
    except (OSError, ValidationError, IndexFormatError) as exc:
        logger.warning("ignoring unreadable cached run %s: %s", run_dir, exc)
        return None
    logger.info("reusing cached run %s", run_dir)
    return PipelineResult(space, manifest, versions)


def _expand(pairs: Sequence[WordPair], corpus: Corpus, thesaurus: Thesaurus, config: LraConfig,
            clock: _StageClock) -> List[PairVersions]:
    with clock.stage("find_alternates"):
        if not pairs:
            raise ContractViolation("no input pairs")
        originals: Dict[PairKey, WordPair] = {}
        for pair in pairs:
            first = originals.setdefault(pair.key, pair)
            if (first.pos_a, first.pos_b) != (pair.pos_a, pair.pos_b):
                logger.warning("%s repeated as %s/%s; keeping the first parts of speech %s/%s",
                               pair, pair.pos_a, pair.pos_b, first.pos_a, first.pos_b)
        candidates = {
            key: generate_alternates(pair, thesaurus, config.num_sim) if config.use_alternates else []
            for key, pair in originals.items()
        }
    with clock.stage("filter_alternates"):
        return [
            filter_alternates(pair, candidates[key], corpus, config.num_filter, config.max_phrase)
            for key, pair in originals.items()
        ]


def run_pipeline(
    config: LraConfig,
    corpus: Corpus,
    thesaurus: Thesaurus,
    pairs: Sequence[WordPair],
    out_dir: Optional[Union[str, Path]] = None,
    dump_matrix: bool = False,
    use_cache: bool = True,
) -> PipelineResult:
    pairs = list(pairs)
    corpus_hash, thesaurus_hash, pairs_hash = corpus_digest(corpus), thesaurus_digest(thesaurus), pairs_digest(pairs)
    run_hash = _run_digest(corpus_hash, thesaurus_hash, pairs_hash, config)

    run_dir: Optional[Path] = None
    if out_dir is not None:
        run_dir = Path(out_dir) / run_hash[:16]
        # a cached run has no matrix to dump
        missing_dump = dump_matrix and not (run_dir / MATRIX_FILE).is_file()
        if use_cache and not missing_dump:
            cached = _load_cached(run_dir)
            if cached is not None:
                return cached

    clock = _StageClock()
    versions = _expand(pairs, corpus, thesaurus, config, clock)

    with clock.stage("find_phrases"):
        phrases = harvest_phrases(versions, corpus, config.min_inter, config.max_inter)
    with clock.stage("find_patterns"):
        pattern_table = mine_top_patterns(phrases, config.num_patterns)
    with clock.stage("map_rows"):
        row_map, dropped = map_rows(versions, phrases, pattern_table)
    with clock.stage("map_columns"):
        column_map = map_columns(pattern_table)
    with clock.stage("build_matrix"):
        raw = build_matrix(versions, phrases, pattern_table, row_map=row_map, column_map=column_map)
        if raw.shape[0] == 0:
            raise ContractViolation("no pair version has a phrase matching a kept pattern")
    with clock.stage("log_entropy"):
        weighted = log_entropy_transform(raw)

    svd_result = None
    with clock.stage("svd"):
        if config.use_svd:
            svd_result = truncated_svd(weighted, config.k, tol=config.svd_tol, dense_limit=config.dense_limit)
    with clock.stage("projection"):
        if svd_result is not None:
            space = project(svd_result, weighted.row_map, weighted.dropped)
        else:
            space = unprojected_space(weighted)

    stats = MatrixStats(
        input_pairs=len(pairs),
        pair_versions=len(unique_versions(versions)),
        rows=weighted.shape[0],
        columns=weighted.shape[1],
        nonzeros=weighted.nnz,
        density=weighted.density,
        dropped_pairs=len(dropped) // 2,
        patterns=len(pattern_table),
        k_requested=config.k,
        k_effective=space.k,
    )
    manifest = RunManifest(
        config=config,
        corpus_digest=corpus_hash,
        thesaurus_digest=thesaurus_hash,
        pairs_digest=pairs_hash,
        run_digest=run_hash,
        timings=clock.timings,
        stats=stats,
    )
    result = PipelineResult(space, manifest, versions, pattern_table, weighted)
    if run_dir is not None:
        _persist(result, run_dir, dump_matrix)
    logger.info("run %s: %d x %d matrix, k=%d", run_hash[:16], stats.rows, stats.columns, stats.k_effective)
    return result


def _persist(result: PipelineResult, run_dir: Path, dump_matrix: bool) -> None:
    run_dir.mkdir(parents=True, exist_ok=True)
    artifacts = {
        "space": run_dir / SPACE_FILE,
        "versions": run_dir / VERSIONS_FILE,
        "patterns": run_dir / PATTERNS_FILE,
    }
    save_space(result.space, artifacts["space"])
    artifacts["versions"].write_bytes(_versions_adapter.dump_json(result.versions, indent=2))
    if result.pattern_table is not None:
        artifacts["patterns"].write_text(result.pattern_table.to_tsv(), encoding="utf-8")
    if dump_matrix and result.matrix is not None:
        artifacts["matrix"] = run_dir / MATRIX_FILE
        artifacts["matrix"].write_text(result.matrix.to_coordinate_text(), encoding="utf-8")
    artifacts["manifest"] = run_dir / MANIFEST_FILE
    result.manifest = result.manifest.model_copy(update={"artifacts": {name: str(path) for name, path in artifacts.items()}})
    artifacts["manifest"].write_text(json.dumps(result.manifest.model_dump(mode="json"), indent=2), encoding="utf-8")


def mine_patterns(config: LraConfig, corpus: Corpus, thesaurus: Thesaurus, pairs: Sequence[WordPair]) -> PatternTable:
    """Stages up to pattern mining only, for inspecting which patterns a run would keep."""
    clock = _StageClock()
    versions = _expand(list(pairs), corpus, thesaurus, config, clock)
    with clock.stage("find_phrases"):
        phrases = harvest_phrases(versions, corpus, config.min_inter, config.max_inter)
    with clock.stage("find_patterns"):
        return mine_top_patterns(phrases, config.num_patterns)
