from pathlib import Path

import pytest

from codefile import load_rooted, load_unrooted, parse_file, save_to_file
from treegen import TreeParseError, generate_rooted, generate_unrooted, serialize

RESOURCES = Path(__file__).parents[2] / "resources"


@pytest.mark.parametrize(
    "name, n, rooted",
    [("rooted_4.txt", 4, True), ("unrooted_4.txt", 4, False), ("unrooted_5.txt", 5, False)],
)
def test_golden_files_match_generation(name, n, rooted):
    trees = generate_rooted(n) if rooted else generate_unrooted(n)
    assert parse_file(RESOURCES / name) == [serialize(t) for t in trees]


def test_load_golden_files():
    assert [t.leaf_count for t in load_rooted(RESOURCES / "rooted_4.txt")] == [4] * 5
    assert [t.tip_count for t in load_unrooted(RESOURCES / "unrooted_5.txt")] == [5] * 3


def test_save_then_parse(tmp_path):
    path = tmp_path / "codes.txt"
    save_to_file(path, ["(**)", "(***)"])
    assert path.read_bytes() == b"(**)\n(***)\n"
    assert parse_file(path) == ["(**)", "(***)"]


def test_blank_lines_are_skipped(tmp_path):
    path = tmp_path / "codes.txt"
    path.write_text("(**)\n\n   \n(***)", encoding="utf-8")
    assert parse_file(path) == ["(**)", "(***)"]


def test_bad_line_is_reported(tmp_path):
    path = tmp_path / "codes.txt"
    path.write_text("(**)\n(**\n", encoding="utf-8")
    with pytest.raises(TreeParseError):
        load_rooted(path)


def test_missing_file(tmp_path):
    with pytest.raises(OSError):
        parse_file(tmp_path / "missing.txt")
