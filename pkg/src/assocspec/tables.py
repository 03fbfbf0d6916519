"""Parameter rows and count sequences for the four reference tables."""

from __future__ import annotations

from typing import Iterator

from .relations import RelationSpec, count_classes
from .grids import Grid

HEADERS = {
    1: ("k", "n", "count"),
    2: ("k", "n", "count"),
    3: ("a", "b", "m", "n", "count"),
    4: ("u", "v", "w", "n", "count"),
}

# (a, b, m) rows in the published order
ABM_ROWS: tuple[tuple[int, int, int], ...] = (
    (1, 1, 1), (1, 2, 2), (1, 1, 2), (1, 3, 3), (1, 4, 4), (2, 3, 6), (1, 2, 3), (1, 1, 3),
    (1, 2, 4), (1, 5, 5), (1, 6, 6), (2, 5, 10), (3, 4, 12), (1, 3, 4), (1, 1, 4), (1, 3, 6),
    (1, 7, 7), (1, 2, 6), (1, 4, 6), (1, 8, 8), (2, 7, 14), (1, 4, 5), (1, 1, 5), (1, 2, 5),
    (1, 4, 8), (1, 9, 9), (2, 3, 12), (1, 10, 10), (1, 5, 6), (1, 1, 6), (1, 2, 8), (1, 3, 9),
    (1, 5, 10), (1, 6, 8), (1, 6, 9), (1, 11, 11), (1, 12, 12), (1, 1, 7), (1, 1, 8),
    (1, 1, 9), (1, 1, 10), (1, 1, 11), (1, 1, 12), (1, 1, 13), (1, 1, 14), (1, 2, 7),
    (1, 2, 9), (1, 2, 10), (1, 2, 11), (1, 2, 12), (1, 2, 13), (1, 2, 14), (1, 3, 7),
    (1, 3, 8), (1, 3, 10), (1, 3, 11), (1, 3, 12), (1, 3, 13), (1, 3, 14), (1, 4, 9),
    (1, 4, 10), (1, 4, 12), (1, 4, 13), (1, 4, 14), (1, 5, 8), (1, 5, 11), (1, 5, 12),
    (1, 5, 13), (1, 6, 7), (1, 6, 10), (1, 6, 12), (1, 6, 13), (1, 6, 14), (1, 7, 8),
    (1, 7, 11), (1, 7, 12), (1, 7, 14), (1, 8, 9), (1, 8, 10), (1, 8, 12), (1, 8, 14),
    (1, 9, 10), (1, 9, 12), (1, 9, 14), (1, 10, 11), (1, 10, 12), (1, 10, 14), (1, 11, 12),
    (1, 12, 13), (1, 12, 14), (1, 13, 13), (1, 13, 14), (1, 14, 14),
)

# (u, v, w) rows: every canonical grid with v, w <= 5, ordered by w, then v, then u
GRID_ROWS: tuple[tuple[int, int, int], ...] = tuple(
    (u, v, w) for w in range(1, 6) for v in range(1, 6) for u in range(w))


def row_relations(table: int) -> list[tuple[tuple[int, ...], RelationSpec]]:
    if table == 1:
        return [((k,), RelationSpec.depth(k)) for k in range(1, 9)]
    if table == 2:
        return [((k,), RelationSpec.left(k)) for k in range(1, 16)]
    if table == 3:
        return [(row, RelationSpec.abm(*row)) for row in ABM_ROWS]
    if table == 4:
        return [((u, v, w), RelationSpec.from_grid(Grid.parallelogram(u, v, w)))
                for u, v, w in GRID_ROWS]
    raise ValueError(f"no table {table}; choose 1, 2, 3 or 4")


def table_sequences(table: int, max_n: int, threads: int = 1,
                    max_leaves: int = 16) -> Iterator[tuple[tuple[int, ...], list[int]]]:
    """Yield ``(params, [count for n = 1..max_n])`` for every row of a table."""
    for params, spec in row_relations(table):
        yield params, [count_classes(n, spec, threads=threads, max_leaves=max_leaves)
                       for n in range(1, max_n + 1)]
