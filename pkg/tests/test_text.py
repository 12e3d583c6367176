import pytest

from framework.errors import ContractViolation
from utils.text import split_passages, stem, tokenize

PORTER_VOCABULARY = [
    ("caresses", "caress"), ("ponies", "poni"), ("ties", "ti"), ("cats", "cat"), ("feed", "feed"),
    ("agreed", "agre"), ("plastered", "plaster"), ("motoring", "motor"), ("sing", "sing"), ("hopping", "hop"),
    ("falling", "fall"), ("hissing", "hiss"), ("filing", "file"), ("happy", "happi"), ("sky", "sky"),
    ("hopeful", "hope"), ("goodness", "good"), ("running", "run"), ("connection", "connect"),
    ("connected", "connect"), ("connecting", "connect"), ("connections", "connect"), ("adjustment", "adjust"),
    ("replacement", "replac"), ("dependent", "depend"), ("adoption", "adopt"), ("effective", "effect"),
    ("irritant", "irrit"), ("airliner", "airlin"), ("allowance", "allow"), ("inference", "infer"),
    ("revival", "reviv"), ("communism", "commun"), ("activate", "activ"), ("gyroscopic", "gyroscop"),
    ("adjustable", "adjust"), ("defensible", "defens"), ("homologous", "homolog"), ("bowdlerize", "bowdler"),
    ("relational", "relat"), ("conditional", "condit"), ("digitizer", "digit"), ("operator", "oper"),
    ("feudalism", "feudal"), ("decisiveness", "decis"), ("hopefulness", "hope"), ("callousness", "callous"),
    ("sensitivity", "sensit"), ("electrical", "electr"), ("triplicate", "triplic"), ("formative", "form"),
    ("formalize", "formal"), ("cease", "ceas"), ("controlling", "control"), ("roll", "roll"),
    ("probate", "probat"), ("rate", "rate"), ("troubled", "troubl"), ("sized", "size"), ("tanned", "tan"),
    ("conflated", "conflat"), ("failing", "fail"), ("fizzed", "fizz"),
]


@pytest.mark.parametrize("word,expected", PORTER_VOCABULARY)
def test_porter_vocabulary(word, expected):
    assert stem(word) == expected


def test_plural_suffixes_are_ignored():
    assert stem("printers") == stem("printer")
    assert stem("stones") == stem("stone")


def test_stem_rejects_empty_word():
    with pytest.raises(ContractViolation):
        stem("")


def test_tokenize_lowercases_and_keeps_digits():
    assert tokenize("The Cat, 2 dogs_and-birds!") == ["the", "cat", "2", "dogs", "and", "birds"]


def test_passages_split_on_sentence_punctuation_and_newlines():
    text = "cat chases dog. dog bites cat\nbirds sing; fish swim? yes!"
    assert split_passages(text) == [
        ["cat", "chases", "dog"], ["dog", "bites", "cat"], ["birds", "sing"], ["fish", "swim"], ["yes"],
    ]
