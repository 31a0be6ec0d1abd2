"""Published index data: the printed ray table, the fifteen rank-1 bases, the
fifteen rank-2 relations and the figure relabeling.

Everything here is transcribed as printed (including the rows of the ray table
that are not consistent with the eigenbasis derivation); the derivation in
:mod:`mermin_ks.rays` decides which printed rows are trusted.
"""
from __future__ import annotations

BAR = "̄"  # combining macron: "1̄" is the printed -1

# Ray table, five printed blocks of eight rows (ids 1..40).
TABLE_ROWS: tuple[str, ...] = (
    "10000000", "01000000", "00100000", "00010000",
    "00001000", "00000100", "00000010", "00000001",
    "11110000", "111̄1̄0000", "11̄11̄0000", "11̄11̄10000",
    "00001111", "0000111̄1̄", "0000111̄1̄", "000011̄1̄1̄",
    "11001100", "11001̄1̄00", "11̄0011̄00", "11̄001̄100",
    "00110011", "0011001̄1̄", "0011̄0011̄", "0011̄001̄1̄",
    "10101010", "10101̄01̄0", "101̄0101̄0", "101̄01̄010",
    "01010101", "010101̄01̄", "0101̄0101̄", "0101̄01̄01",
    "1001011̄0", "1001̄0110", "100101̄10", "1001̄01̄1̄0",
    "01101̄001", "011̄01001", "01̄101001", "01̄101̄001",
)

TABLE_BLOCKS: tuple[range, ...] = tuple(range(8 * b + 1, 8 * b + 9) for b in range(5))

# Rank-1 completeness relations: five octads, then ten hybrid bases.
RANK1_RELATIONS: tuple[tuple[int, ...], ...] = (
    (1, 2, 3, 4, 5, 6, 7, 8),
    (9, 10, 11, 12, 13, 14, 15, 16),
    (17, 18, 19, 20, 21, 22, 23, 24),
    (25, 26, 27, 28, 29, 30, 31, 32),
    (33, 34, 35, 36, 37, 38, 39, 40),
    (1, 2, 3, 4, 13, 14, 15, 16),
    (1, 2, 5, 6, 21, 22, 23, 24),
    (1, 3, 5, 7, 29, 30, 31, 32),
    (2, 3, 5, 8, 33, 34, 35, 36),
    (9, 10, 13, 14, 19, 20, 23, 24),
    (9, 11, 13, 15, 27, 28, 31, 32),
    (9, 12, 14, 15, 34, 36, 38, 39),
    (17, 19, 21, 23, 26, 28, 30, 32),
    (18, 19, 21, 24, 33, 34, 38, 40),
    (25, 28, 30, 31, 33, 36, 37, 38),
)

# Rays listed as occurring in four of the fifteen relations.
RANK1_MULTIPLICITY_FOUR: frozenset[int] = frozenset(
    (1, 2, 3, 5, 9, 13, 14, 15, 19, 21, 23, 24, 28, 30, 31, 32, 33, 34, 36, 38)
)

# Rank-2 relations, pairs in printed order (P_{14,10} stays (14, 10)).
RANK2_RELATIONS: tuple[tuple[tuple[int, int], ...], ...] = (
    ((1, 7), (2, 8), (3, 4), (5, 6)),
    ((9, 12), (13, 16), (14, 10), (15, 11)),
    ((19, 20), (21, 22), (23, 17), (24, 18)),
    ((28, 27), (30, 29), (31, 25), (32, 26)),
    ((33, 35), (34, 40), (36, 37), (38, 39)),
    ((1, 2), (3, 4), (13, 16), (14, 15)),
    ((1, 2), (5, 6), (21, 22), (23, 24)),
    ((3, 5), (1, 7), (30, 29), (31, 32)),
    ((3, 5), (2, 8), (33, 35), (34, 36)),
    ((14, 10), (9, 13), (19, 20), (23, 24)),
    ((15, 11), (9, 13), (28, 27), (31, 32)),
    ((9, 12), (14, 15), (38, 39), (34, 36)),
    ((23, 17), (19, 21), (32, 26), (28, 30)),
    ((24, 18), (19, 21), (34, 40), (33, 38)),
    ((31, 25), (28, 30), (36, 37), (33, 38)),
)

# Figure labels 21..30; labels 1..20 follow first appearance in RANK2_RELATIONS.
FIGURE_EXTRA_LABELS: tuple[tuple[int, int], ...] = (
    (1, 2), (3, 5), (9, 13), (14, 15), (19, 21),
    (28, 30), (23, 24), (31, 32), (34, 36), (33, 38),
)

# Hyperedges named in the figure caption (red, green, blue curves).
FIGURE_NAMED_HYPEREDGES: tuple[frozenset[int], ...] = (
    frozenset((15, 19, 26, 30)),
    frozenset((11, 16, 25, 26)),
    frozenset((12, 18, 25, 30)),
)


def parse_table_row(row: str) -> tuple[int, ...]:
    """Decode a printed row; ``1`` followed by a combining macron is -1."""
    out: list[int] = []
    for ch in row:
        if ch == BAR:
            if not out or out[-1] != 1:
                raise ValueError(f"stray bar in {row!r}")
            out[-1] = -1
        elif ch in "01":
            out.append(int(ch))
        elif not ch.isspace():
            raise ValueError(f"unexpected symbol {ch!r} in {row!r}")
    return tuple(out)
