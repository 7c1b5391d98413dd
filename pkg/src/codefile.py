__all__ = ["parse_file", "save_to_file", "load_rooted", "load_unrooted"]

from os import PathLike
from typing import Iterable, List

from treegen import RootedTree, UnrootedTree, parse, parse_unrooted


def parse_file(path: PathLike) -> List[str]:
    """Parse a newline-separated file into a list of values

    :param path: Path to the file
    """
    with open(path, "rt", encoding="utf-8") as f:
        # Remove the newline character from the end of each value, then drop empty lines
        values = [line.rstrip("\n") for line in f.readlines()]
        return [v for v in values if v.strip() != ""]


def save_to_file(path: PathLike, values: Iterable[str]):
    """Write values to a file, one per line

    :param path: Path to the file
    :param values: The values to write
    """
    text = "".join(f"{value}\n" for value in values)
    with open(path, "wt", encoding="utf-8") as f:
        f.write(text)


def load_rooted(path: PathLike) -> List[RootedTree]:
    """Read a file of rooted tree codes, one per line"""
    return [parse(line) for line in parse_file(path)]


def load_unrooted(path: PathLike) -> List[UnrootedTree]:
    """Read a file of unrooted tree codes, one per line"""
    return [parse_unrooted(line) for line in parse_file(path)]
