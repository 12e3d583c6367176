"""
Constructed corpus, thesaurus and benchmarks for demos and tests.

Ten relation families each own two sentence templates, one per direction.
Every pair in a family is written with both templates the same number of
times, so pairs in one family have identical pattern profiles while pairs in
different families share only generic wildcard patterns. Some thesaurus
neighbours are planted with their family's templates; the others never occur.
"""
from __future__ import annotations

import random
from pathlib import Path
from typing import Dict, List, NamedTuple, Tuple, Union


class Family(NamedTuple):
    name: str
    forward: str
    reverse: str
    pairs: Tuple[Tuple[str, str], ...]
    class30: str = ""
    class5: str = ""


FAMILIES: Tuple[Family, ...] = (
    Family("sound", "{a} utters a {b}", "the {b} uttered by the {a}",
           (("cat", "meow"), ("dog", "bark"), ("cow", "moo"), ("duck", "quack"), ("lion", "roar"))),
    Family("worker_material", "{a} carves the {b}", "{b} carved by a {a}",
           (("mason", "stone"), ("carpenter", "wood"), ("sculptor", "marble"), ("potter", "clay"), ("smith", "iron")),
           "material", "qualitative"),
    Family("part_whole", "{a} belongs to the {b}", "{b} includes a {a}",
           (("wheel", "car"), ("petal", "flower"), ("page", "book"), ("finger", "hand"), ("branch", "tree")),
           "part", "participatory"),
    Family("unit", "{a} measures {b}", "{b} is measured in {a}",
           (("quart", "volume"), ("mile", "distance"), ("hour", "time"), ("gram", "weight"), ("degree", "temperature")),
           "measure", "qualitative"),
    Family("habitat", "{a} lives inside the {b}", "{b} sheltering the {a}",
           (("bee", "hive"), ("bird", "nest"), ("fish", "pond"), ("horse", "stable"), ("bear", "cave")),
           "location", "spatial"),
    Family("producer", "{a} produces fresh {b}", "{b} made by the {a}",
           (("baker", "bread"), ("poet", "poem"), ("farmer", "grain"), ("tailor", "suit"), ("brewer", "beer"))),
    Family("young", "{a} grows into a {b}", "{b} was once a {a}",
           (("tadpole", "frog"), ("caterpillar", "butterfly"), ("foal", "stallion"), ("chick", "hen"), ("fawn", "deer"))),
    Family("tool", "{a} is used for {b}", "{b} requires a {a}",
           (("pen", "writing"), ("broom", "sweeping"), ("shovel", "digging"), ("needle", "sewing"), ("ladle", "soup")),
           "instrument", "participatory"),
    Family("opposite", "{a} opposes {b}", "{b} rather than {a}",
           (("day", "night"), ("hot", "cold"), ("light", "dark"), ("war", "peace"), ("love", "hate"))),
    Family("container", "{a} filled with {b}", "{b} poured from the {a}",
           (("bottle", "wine"), ("purse", "money"), ("jar", "jam"), ("wallet", "cash"), ("barrel", "oil")),
           "container", "qualitative"),
)

# neighbour -> times each of its family's templates is written; 0 means never in the corpus
THESAURUS: Dict[str, List[Tuple[str, float, int]]] = {
    "cat": [("feline", 0.32, 3), ("kitty", 0.27, 0), ("tiger", 0.21, 0)],
    "dog": [("canine", 0.35, 3), ("hound", 0.30, 1), ("wolf", 0.22, 0)],
    "meow": [("purr", 0.25, 0)],
    "bark": [("growl", 0.28, 2), ("yelp", 0.20, 0)],
    "mason": [("bricklayer", 0.40, 2), ("builder", 0.31, 0)],
    "stone": [("rock", 0.36, 2), ("pebble", 0.22, 0)],
    "wheel": [("tire", 0.29, 2)],
    "car": [("automobile", 0.44, 2), ("truck", 0.33, 0)],
    "quart": [("pint", 0.38, 2), ("gallon", 0.36, 0)],
    "bee": [("wasp", 0.30, 0)],
    "bird": [("sparrow", 0.26, 2)],
    "baker": [("confectioner", 0.31, 0)],
    "tadpole": [("larva", 0.24, 0)],
    "pen": [("pencil", 0.41, 2), ("quill", 0.27, 1)],
    "day": [("morning", 0.28, 0)],
    "bottle": [("flask", 0.37, 2), ("jug", 0.33, 1)],
}

FILLER_SUBJECTS = ("someone", "everybody", "nobody", "people", "visitors", "neighbours", "travellers")
FILLER_VERBS = ("talked", "walked", "waited", "rested", "laughed", "wondered", "arrived", "listened")
FILLER_ENDINGS = ("quietly", "yesterday", "outside", "together", "again", "slowly", "at noon", "all evening")

REPETITIONS = 4
FILLER_SENTENCES = 30_000
SHARDS = 4


class ToyFixture(NamedTuple):
    corpus_dir: Path
    thesaurus: Path
    pairs: Path
    questions: Path
    noun_modifiers: Path
    comparisons: Path


def family_of(word: str) -> Family:
    for family in FAMILIES:
        if any(word in pair for pair in family.pairs):
            return family
    raise KeyError(word)


def _planted_pairs() -> List[Tuple[Family, str, str, int]]:
    planted = []
    for headword, neighbours in THESAURUS.items():
        family = family_of(headword)
        original = next(pair for pair in family.pairs if headword in pair)
        for word, _, repetitions in neighbours:
            if repetitions == 0:
                continue
            if headword == original[0]:
                planted.append((family, word, original[1], repetitions))
            else:
                planted.append((family, original[0], word, repetitions))
    return planted


def corpus_sentences(seed: int = 0) -> List[str]:
    sentences: List[str] = []
    for family in FAMILIES:
        for a, b in family.pairs:
            for _ in range(REPETITIONS):
                sentences.append(family.forward.format(a=a, b=b))
                sentences.append(family.reverse.format(a=a, b=b))
    for family, a, b, repetitions in _planted_pairs():
        for _ in range(repetitions):
            sentences.append(family.forward.format(a=a, b=b))
            sentences.append(family.reverse.format(a=a, b=b))

    rng = random.Random(seed)
    for _ in range(FILLER_SENTENCES):
        sentences.append(" ".join((rng.choice(FILLER_SUBJECTS), rng.choice(FILLER_VERBS), rng.choice(FILLER_ENDINGS))))
    rng.shuffle(sentences)
    return sentences


def question_lines() -> List[str]:
    """One question per family: its first pair as stem, its second pair among four distractors."""
    lines: List[str] = []
    for i, family in enumerate(FAMILIES):
        distractors = [FAMILIES[(i + offset) % len(FAMILIES)].pairs[offset % 5] for offset in (1, 3, 5, 7)]
        answer = i % 5
        choices = distractors[:answer] + [family.pairs[1]] + distractors[answer:]
        lines.append(f"# {family.name}")
        lines.append(" ".join(family.pairs[0]))
        lines.extend(" ".join(choice) for choice in choices)
        lines.append("abcde"[answer])
    return lines


def noun_modifier_lines() -> List[str]:
    lines = ["modifier,head,class30,class5"]
    for family in FAMILIES:
        if family.class30:
            lines.extend(f"{a},{b},{family.class30},{family.class5}" for a, b in family.pairs)
    return lines


def thesaurus_lines() -> List[str]:
    return [
        f"{headword}\tnoun\t" + ",".join(f"{word}:{score}" for word, score, _ in neighbours)
        for headword, neighbours in THESAURUS.items()
    ]


def write_toy_fixture(directory: Union[str, Path], seed: int = 0) -> ToyFixture:
    root = Path(directory)
    corpus_dir = root / "corpus"
    corpus_dir.mkdir(parents=True, exist_ok=True)
    sentences = corpus_sentences(seed)
    for shard in range(SHARDS):
        text = "\n".join(s + "." for s in sentences[shard::SHARDS]) + "\n"
        (corpus_dir / f"part-{shard:02d}.txt").write_text(text, encoding="utf-8")

    fixture = ToyFixture(
        corpus_dir=corpus_dir,
        thesaurus=root / "thesaurus.txt",
        pairs=root / "pairs.txt",
        questions=root / "questions.txt",
        noun_modifiers=root / "noun_modifiers.csv",
        comparisons=root / "comparisons.txt",
    )
    fixture.thesaurus.write_text("\n".join(thesaurus_lines()) + "\n", encoding="utf-8")
    fixture.pairs.write_text("\n".join(" ".join(pair) for f in FAMILIES for pair in f.pairs) + "\n", encoding="utf-8")
    fixture.questions.write_text("\n".join(question_lines()) + "\n", encoding="utf-8")
    fixture.noun_modifiers.write_text("\n".join(noun_modifier_lines()) + "\n", encoding="utf-8")
    fixture.comparisons.write_text(
        "\n".join(" ".join(f.pairs[0] + f.pairs[1]) for f in FAMILIES) + "\n", encoding="utf-8"
    )
    return fixture
