"""设计文件格式"""

import pytest

from conftest import FIXTURE_DIR, load
from src.core.design_model import Completeness, CyclicTriple, validate
from src.core.exceptions import DesignFormatError
from src.formats.design_io import format_design, parse_design, read_design, write_design


def test_read_fixture(appendix_a):
    ts = appendix_a["m9_1_1"]
    assert ts.name == "m9_1_1"
    assert ts.v == 9
    assert ts.kind is Completeness.COMPLETE
    assert len(ts) == 24
    assert CyclicTriple(0, 2, 1) in ts


@pytest.mark.parametrize("path", sorted(FIXTURE_DIR.glob("*.txt")), ids=lambda p: p.stem)
def test_every_shipped_fixture_validates(path):
    assert validate(read_design(path)).ok


def test_format_is_sorted_canonical_rotations(mts4):
    assert format_design(mts4) == "mts v=4 kind=complete\n0 1 2\n0 2 3\n0 3 1\n1 3 2\n"


def test_comments_follow_header(mts4):
    text = format_design(mts4, ["the unique MTS(4)"])
    assert text.splitlines()[:2] == ["mts v=4 kind=complete", "# the unique MTS(4)"]


def test_parse_accepts_any_rotation():
    ts = parse_design("mts v=4 kind=complete\n# comment\n2 0 1\n3 0 2\n1 0 3\n3 2 1\n")
    assert ts == load("mts4")


def test_write_then_read(tmp_path, mts7_cyclic):
    path = write_design(mts7_cyclic, tmp_path / "out" / "mts7.txt")
    again = read_design(path)
    assert again == mts7_cyclic
    assert again.name == "mts7"


@pytest.mark.parametrize("text", [
    "",
    "# only a comment\n",
    "mts v=x kind=complete\n",
    "mts v=4 kind=whole\n",
    "mts v=4 kind=partial\n0 1\n",
    "mts v=4 kind=partial\n0 1 a\n",
    "mts v=4 kind=partial\n0 1 1\n",
])
def test_bad_text_raises(text):
    with pytest.raises(DesignFormatError):
        parse_design(text)


def test_missing_file_raises(tmp_path):
    with pytest.raises(DesignFormatError):
        read_design(tmp_path / "nope.txt")
