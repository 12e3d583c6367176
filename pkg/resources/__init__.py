from pathlib import Path

RESOURCE_DIR = Path(__file__).resolve().parent

# Common English prepositions, conjunctions and short connectives. This is not
# the 64-term list the VSM baseline was first published with; that list is
# not recoverable here.
JOINING_TERMS_FILE = RESOURCE_DIR / "joining_terms.txt"
CLASS_GROUPS_FILE = RESOURCE_DIR / "noun_modifier_groups.tsv"
