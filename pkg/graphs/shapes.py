"""Named shapes: cycles, paths, cliques, stars, matchings and edge-list literals."""

from __future__ import annotations

import re
from itertools import combinations

from graphs.exceptions import GraphError
from graphs.graph import Graph

_NAMED = re.compile(r"^(?P<kind>[CPKSM])(?P<size>\d+)$")
_PAIR = re.compile(r"^\s*(\d+)\s*-\s*(\d+)\s*$")


def cycle(k: int) -> Graph:
    return Graph.from_edges(((i, (i + 1) % k) for i in range(k)), n=k)


def path(k: int) -> Graph:
    """Path on ``k`` vertices."""
    return Graph.from_edges(((i, i + 1) for i in range(k - 1)), n=k)


def complete(k: int) -> Graph:
    return Graph.from_edges(combinations(range(k), 2), n=k)


def star(leaves: int) -> Graph:
    return Graph.from_edges(((0, i) for i in range(1, leaves + 1)), n=leaves + 1)


def matching(k: int) -> Graph:
    """``k`` disjoint edges."""
    return Graph.from_edges(((2 * i, 2 * i + 1) for i in range(k)), n=2 * k)


_MINIMUM = {"C": 3, "P": 2, "K": 2, "S": 1, "M": 1}
_BUILDERS = {"C": cycle, "P": path, "K": complete, "S": star, "M": matching}


def named_shape(name: str) -> Graph:
    """Parse ``C<k>``, ``P<k>``, ``K<k>``, ``S<s>``, ``M<k>`` or a literal such as ``0-1,1-2,0-2``.

    Args:
        name (str): Shape name.

    Returns
    -------
        Graph: The shape, labelled ``0..v-1`` for named families and as written for literals.
    """
    text = name.strip()
    match = _NAMED.match(text)
    if match:
        kind, size = match["kind"], int(match["size"])
        if size < _MINIMUM[kind]:
            msg = f"Shape {text!r} is too small, {kind} needs at least {_MINIMUM[kind]}"
            raise GraphError(msg)
        return _BUILDERS[kind](size)
    pairs = []
    for chunk in text.split(","):
        pair = _PAIR.match(chunk)
        if not pair:
            msg = f"Unable to parse shape {name!r}"
            raise GraphError(msg)
        pairs.append((int(pair[1]), int(pair[2])))
    return Graph.from_edges(pairs)


def parse_shape_list(text: str) -> list[Graph]:
    """Split a comma list of named shapes; edge-list literals separate their pairs with ``;`` here."""
    return [named_shape(item.replace(";", ",")) for item in text.split(",") if item.strip()]
