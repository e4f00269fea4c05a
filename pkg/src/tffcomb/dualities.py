"""Dualities between tight fusion frame sequences and their certificates.

Two sequence-level maps preserve tightness: the spatial dual replaces every
subspace by its orthogonal complement (ranks dim - L_i, reversed), and the
Naimark dual keeps the ranks but moves to dimension M - dim with frame bound
alpha/(alpha-1).  Both lift to explicit bijections on configuration
matrices, implemented here, so certificate counts are preserved exactly.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .configmat import ConfigMatrix, _mu_levels, validate_config
from .errors import (
    AlphaNotGreaterThanOne,
    DegenerateDual,
    InvalidAlpha,
    InvalidCertificate,
    InvalidRanks,
    PreconditionNotMet,
)
from .partitions import as_partition

Rational = Fraction | int


def _checked_partition(ranks: Sequence[int], dim: int) -> tuple[int, ...]:
    ranks = as_partition(ranks)
    if not ranks:
        raise InvalidRanks("rank sequence is empty")
    if ranks[0] > dim:
        raise InvalidRanks(f"largest rank {ranks[0]} exceeds dimension {dim}")
    return ranks


def spatial_dual(ranks: Sequence[int], dim: int) -> tuple[tuple[int, ...], int]:
    """Complementary rank sequence (dim - L_K, ..., dim - L_1) in the same
    dimension; full-rank entries drop out.  Raises DegenerateDual when every
    rank equals the dimension."""
    ranks = _checked_partition(ranks, dim)
    dual = tuple(dim - r for r in reversed(ranks) if r < dim)
    if not dual:
        raise DegenerateDual(
            f"all ranks equal dim={dim}; spatial dual has no subspaces left"
        )
    return dual, dim


def naimark_dual(ranks: Sequence[int], dim: int) -> tuple[tuple[int, ...], int]:
    """Same ranks in dimension M - dim (requires frame bound > 1)."""
    ranks = _checked_partition(ranks, dim)
    total = sum(ranks)
    if total <= dim:
        raise AlphaNotGreaterThanOne(
            f"bound {Fraction(total, dim)} is not > 1; no complement space"
        )
    return ranks, total - dim


def alpha_reduce(alpha: Rational, dim: int) -> tuple[Fraction, int]:
    """Conjugate parameters (alpha~, dim~) with 1/alpha + 1/alpha~ = 1 and
    dim~ = dim*(alpha-1); both instances carry the same tight sequences."""
    alpha = Fraction(alpha)
    if alpha <= 1:
        raise AlphaNotGreaterThanOne(f"bound {alpha} is not > 1")
    total = alpha * dim
    if total.denominator != 1:
        raise InvalidAlpha(f"alpha*dim = {total} is not an integer")
    new_dim = int(total) - dim
    return alpha / (alpha - 1), new_dim


def recur_strip(ranks: Sequence[int], dim: int) -> tuple[tuple[int, ...], int]:
    """Drop a largest rank equal to dim*(alpha-1): tightness of the rest in
    dimension dim*(alpha-1) is equivalent to tightness of the original."""
    ranks = _checked_partition(ranks, dim)
    total = sum(ranks)
    if ranks[0] != total - dim:
        raise PreconditionNotMet(
            f"top rank {ranks[0]} differs from dim*(alpha-1) = {total - dim}"
        )
    return ranks[1:], total - dim


def decompose_block(block_rows: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Unique decomposition of a certificate block into binary summands.

    Column ``y`` of the block is read as a multiset of rows (entry ``x``
    copies of row ``x``); summand ``j`` takes the j-th smallest row of every
    column.  Returns one tuple of 0-based row indices per summand; rows
    strictly increase along each summand, which is what makes the
    complementary-summand construction well defined.
    """
    height = len(block_rows)
    width = len(block_rows[0]) if height else 0
    per_column: list[list[int]] = []
    for y in range(width):
        rows: list[int] = []
        for x in range(height):
            rows.extend([x] * block_rows[x][y])
        per_column.append(rows)
    count = len(per_column[0]) if per_column else 0
    if any(len(rows) != count for rows in per_column):
        raise InvalidCertificate("column sums differ inside a block")
    summands = []
    for j in range(count):
        rows = tuple(per_column[y][j] for y in range(width))
        if any(rows[y] >= rows[y + 1] for y in range(width - 1)):
            raise InvalidCertificate(
                "binary summand is not strictly increasing; block violates"
                " column dominance"
            )
        summands.append(rows)
    return summands


def _require_valid(a: ConfigMatrix) -> None:
    report = validate_config(a)
    if not report:
        raise InvalidCertificate(report.message)


def config_spatial_dual(a: ConfigMatrix) -> ConfigMatrix:
    """Certificate-level spatial dual: blocks complemented and reversed.

    Each block splits uniquely into binary summands with one unit per column;
    every summand is replaced by the complementary summand on the unused
    rows (in increasing order), and the rebuilt blocks are emitted in
    reverse order, giving a certificate for (dim-L_K, ..., dim-L_1).
    """
    _require_valid(a)
    n = a.dim
    if any(r == n for r in a.ranks):
        raise DegenerateDual(
            "a full-rank block has no complement columns; spatial dual"
            " certificate is degenerate"
        )
    dual_blocks = []
    for k in range(len(a.ranks)):
        width = n - a.ranks[k]
        rows = [[0] * width for _ in range(n)]
        for summand in decompose_block(a.block(k)):
            used = set(summand)
            free = [x for x in range(n) if x not in used]
            for y, x in enumerate(free):
                rows[x][y] += 1
        dual_blocks.append(rows)
    dual_blocks.reverse()
    entries = tuple(
        tuple(x for blk in dual_blocks for x in blk[i]) for i in range(n)
    )
    dual = ConfigMatrix(
        dim=n,
        ranks=tuple(n - r for r in reversed(a.ranks)),
        entries=entries,
    )
    _require_valid(dual)
    return dual


def _occupancy(a: ConfigMatrix) -> list[list[list[int]]]:
    """Per block, per value, the sorted diagram columns (0-based) holding
    that value in the union skew tableau encoded by ``a`` (assumed valid)."""
    chain = _mu_levels(a)
    occ: list[list[list[int]]] = []
    for k, width in enumerate(a.ranks):
        blk = a.block(k)
        cols: list[list[int]] = [[] for _ in range(width)]
        prev = chain[k]
        for i in range(a.dim):
            pos = prev[i] if i < len(prev) else 0
            for v in range(width):
                cols[v].extend(range(pos, pos + blk[i][v]))
                pos += blk[i][v]
        occ.append([sorted(c) for c in cols])
    return occ


def config_naimark_dual(a: ConfigMatrix) -> ConfigMatrix:
    """Certificate-level Naimark dual: same ranks in dimension M - dim.

    The tableau occupancy of each value is complemented and column-reversed
    inside the M-column strip; stacking the complements (blocks in order,
    values in order) and justifying every column upward yields the dual
    union tableau, which is read back into a certificate.
    """
    _require_valid(a)
    n, m = a.dim, a.total
    if m == n:
        raise DegenerateDual("bound 1 leaves a zero-dimensional complement")
    occ = _occupancy(a)
    new_dim = m - n
    blocks = [
        [[0] * width for _ in range(new_dim)] for width in a.ranks
    ]
    height = [0] * m
    for k, width in enumerate(a.ranks):
        for v in range(width):
            filled = set(occ[k][v])
            for y in range(m):
                if (m - 1 - y) not in filled:
                    blocks[k][height[y]][v] += 1
                    height[y] += 1
    if any(h != new_dim for h in height):
        raise InvalidCertificate("complemented columns do not stack evenly")
    entries = tuple(
        tuple(x for blk in blocks for x in blk[i]) for i in range(new_dim)
    )
    dual = ConfigMatrix(dim=new_dim, ranks=a.ranks, entries=entries)
    _require_valid(dual)
    return dual
