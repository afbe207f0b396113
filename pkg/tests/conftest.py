import sys
from pathlib import Path

# allow the oracle helpers in test_exactlin to be imported by name
sys.path.insert(0, str(Path(__file__).parent))

from lieform.cli import corpus_dir, parse_algebra_file, parse_pfaff_file


def load_fixture(name: str):
    text = (corpus_dir() / name).read_text(encoding="utf-8")
    if name.endswith(".pfaff"):
        return parse_pfaff_file(text)
    return parse_algebra_file(text)
