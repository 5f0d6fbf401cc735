"""Group sources for the command line: builtin names and generator files.

A generator file holds a ``degree N`` line followed by one generator per
line in 1-based cycle notation.  ``#`` starts a comment::

    # the symmetric group on 4 points
    degree 4
    (1 2 3 4)
    (1 2)
"""

from __future__ import annotations

from pathlib import Path

from bpi.corpus import builtin_group
from bpi.errors import PreconditionError
from bpi.groups import PermGroup, group_from_generators
from bpi.perm import parse_cycles

__all__ = ["parse_group_text", "load_group"]


def parse_group_text(text: str, name: str | None = None) -> PermGroup:
    degree = None
    gens = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.lower().startswith("degree"):
            if degree is not None:
                raise PreconditionError(f"line {lineno}: degree given twice")
            try:
                degree = int(line.split()[1])
            except (IndexError, ValueError):
                raise PreconditionError(f"line {lineno}: expected 'degree N'") from None
            continue
        if degree is None:
            raise PreconditionError(f"line {lineno}: generator before the degree line")
        try:
            gens.append(parse_cycles(line, degree))
        except ValueError as exc:
            raise PreconditionError(f"line {lineno}: {exc}") from None
    if degree is None:
        raise PreconditionError("missing 'degree N' line")
    return group_from_generators(degree, gens, name=name)


def load_group(source: str) -> PermGroup:
    """``builtin:NAME`` or a path to a generator file."""
    if source.startswith("builtin:"):
        try:
            return builtin_group(source.split(":", 1)[1])
        except KeyError as exc:
            raise PreconditionError(exc.args[0]) from None
    path = Path(source)
    if not path.is_file():
        raise PreconditionError(f"no such group file: {source}")
    return parse_group_text(path.read_text(), name=path.stem)
