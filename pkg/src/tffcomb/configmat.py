"""Configuration matrices: integer certificates for tight rank sequences.

A configuration matrix for ``(ranks, dim)`` with ``dim = N`` and
``M = sum(ranks)`` is an N x M nonnegative integer matrix, split into column
blocks of widths ``ranks[k]``, satisfying

  (i)   all entries are nonnegative integers,
  (ii)  every row sums to M,
  (iii) every column sums to N,
  (iv)  row dominance across the whole matrix:
        sum_{j<=l} (A[i,j] - A[i+1,j]) >= A[i+1,l+1]   for all i, l >= 0,
  (v)   column dominance within each block:
        sum_{i<=l} (A_k[i,j] - A_k[i,j+1]) >= A_k[l+1,j+1]  for all j, l >= 0,

where out-of-range entries read as zero.  Column ``v`` of block ``k`` records
how many boxes labelled ``v`` each row of the k-th skew tableau receives, so
these matrices are exactly unions of column-strict lattice skew tableaux and
their number equals a Littlewood-Richardson coefficient of rectangles.

The search in this module fills columns left to right, each column top to
bottom, trying larger entries first; partial states are pruned by prefix
feasibility bounds and memoized, which keeps exhaustive non-existence proofs
tractable up to dim 9.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import (
    DimensionMismatch,
    DoesNotFit,
    InvalidCertificate,
    InvalidRanks,
    InvalidShape,
    SizeMismatch,
)
from .partitions import as_partition, contains, count_equal_parts, pad


@dataclass(frozen=True)
class ConfigMatrix:
    """Immutable N x M integer matrix with a block structure over ``ranks``."""

    dim: int
    ranks: tuple[int, ...]
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "ranks", tuple(int(r) for r in self.ranks))
        object.__setattr__(
            self, "entries", tuple(tuple(int(x) for x in row) for row in self.entries)
        )
        if self.dim <= 0 or not self.ranks or any(r <= 0 for r in self.ranks):
            raise DimensionMismatch(
                f"need positive dim and ranks, got dim={self.dim} ranks={self.ranks}"
            )
        m = sum(self.ranks)
        if len(self.entries) != self.dim or any(
            len(row) != m for row in self.entries
        ):
            raise DimensionMismatch(
                f"entries must be {self.dim}x{m} for ranks {self.ranks}"
            )

    @property
    def total(self) -> int:
        """Number of columns M."""
        return sum(self.ranks)

    def block_start(self, k: int) -> int:
        """First column index (0-based) of block ``k`` (0-based)."""
        return sum(self.ranks[:k])

    def block(self, k: int) -> list[list[int]]:
        """Rows of column block ``k`` (0-based)."""
        lo = self.block_start(k)
        hi = lo + self.ranks[k]
        return [list(row[lo:hi]) for row in self.entries]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.entries)

    def to_json_dict(self) -> dict:
        return {
            "dim": self.dim,
            "ranks": list(self.ranks),
            "entries": [list(row) for row in self.entries],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "ConfigMatrix":
        return cls(
            dim=int(data["dim"]),
            ranks=tuple(data["ranks"]),
            entries=tuple(tuple(row) for row in data["entries"]),
        )


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of validate_config: first violated property, if any."""

    ok: bool
    violated: str | None = None
    indices: tuple[int, ...] | None = None
    message: str = ""

    def __bool__(self) -> bool:
        return self.ok


def validate_config(a: ConfigMatrix) -> ValidationReport:
    """Check properties (i)-(v); (v) is checked per column block.

    Reports the first violated property together with the offending (1-based)
    indices.  Raises DimensionMismatch only for malformed inputs, which the
    ConfigMatrix constructor already rejects.
    """
    n, m = a.dim, a.total
    rows = a.entries
    for i in range(n):
        for j in range(m):
            if rows[i][j] < 0:
                return ValidationReport(
                    False, "i", (i + 1, j + 1),
                    f"negative entry at row {i + 1}, column {j + 1}",
                )
    for i in range(n):
        s = sum(rows[i])
        if s != m:
            return ValidationReport(
                False, "ii", (i + 1,), f"row {i + 1} sums to {s}, expected {m}"
            )
    for j in range(m):
        s = sum(rows[i][j] for i in range(n))
        if s != n:
            return ValidationReport(
                False, "iii", (j + 1,), f"column {j + 1} sums to {s}, expected {n}"
            )
    for i in range(n - 1):
        diff = 0
        for l in range(m):
            # prefix of length l compared against entry l+1 of the next row
            nxt = rows[i + 1][l]
            if diff < nxt:
                return ValidationReport(
                    False, "iv", (i + 1, l + 1),
                    f"row dominance fails between rows {i + 1},{i + 2}"
                    f" at prefix length {l}",
                )
            diff += rows[i][l] - rows[i + 1][l]
        if diff < 0:
            return ValidationReport(
                False, "iv", (i + 1, m),
                f"row dominance fails between rows {i + 1},{i + 2} at full length",
            )
    for k in range(len(a.ranks)):
        blk = a.block(k)
        width = a.ranks[k]
        for j in range(width - 1):
            diff = 0
            for l in range(n):
                nxt = blk[l][j + 1]
                if diff < nxt:
                    return ValidationReport(
                        False, "v", (k + 1, j + 1, l + 1),
                        f"column dominance fails in block {k + 1} between"
                        f" columns {j + 1},{j + 2} at prefix length {l}",
                    )
                diff += blk[l][j] - blk[l][j + 1]
    return ValidationReport(True)


def _check_ranks(ranks: Sequence[int], dim: int) -> tuple[int, ...]:
    ranks = tuple(int(r) for r in ranks)
    if not ranks:
        raise InvalidRanks("rank sequence is empty")
    if any(r <= 0 for r in ranks):
        raise InvalidRanks(f"ranks must be positive, got {ranks}")
    if dim <= 0:
        raise InvalidRanks(f"dimension must be positive, got {dim}")
    if max(ranks) > dim:
        raise InvalidRanks(f"largest rank {max(ranks)} exceeds dimension {dim}")
    return ranks


def _column_options(
    rho: tuple[int, ...],
    prev: tuple[int, ...] | None,
    value: int,
    n: int,
    m: int,
) -> Iterator[tuple[int, ...]]:
    """Admissible next columns, in descending lexicographic order.

    ``rho`` holds the current row sums.  A column for label ``value`` must put
    zero in rows above ``value``, keep each row within the staircase capacity
    of the row above (property (iv)), and respect in-block dominance against
    ``prev`` (property (v)).
    """
    caps = [0] * n
    for i in range(value - 1, n):
        caps[i] = (m - rho[0]) if i == 0 else (rho[i - 1] - rho[i])
    suffix = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        suffix[i] = suffix[i + 1] + caps[i]
    if prev is not None:
        pp = [0] * (n + 1)
        for i in range(n):
            pp[i + 1] = pp[i] + prev[i]

    out = [0] * n

    def rec(i: int, remaining: int, csum: int) -> Iterator[tuple[int, ...]]:
        if remaining == 0:
            yield tuple(out[:i]) + (0,) * (n - i)
            return
        if i == n or remaining > suffix[i]:
            return
        hi = min(caps[i], remaining)
        if prev is not None:
            hi = min(hi, pp[i] - csum)
        for x in range(hi, -1, -1):
            out[i] = x
            yield from rec(i + 1, remaining - x, csum + x)
        out[i] = 0

    yield from rec(0, n, 0)


class _Search:
    """Shared state for the column-by-column certificate search."""

    def __init__(self, ranks: tuple[int, ...], dim: int):
        self.n = dim
        self.ranks = ranks
        self.m = sum(ranks)
        cols = []
        for k, width in enumerate(ranks):
            for v in range(1, width + 1):
                cols.append((k, v))
        self.cols = cols
        # rem[c][i]: columns at position >= c whose label is <= i; labels above
        # row i never contribute to the first i rows, so these counts bound how
        # much the leading rows can still grow.
        rem = [[0] * (dim + 1) for _ in range(self.m + 1)]
        for c in range(self.m - 1, -1, -1):
            _, v = cols[c]
            for i in range(dim + 1):
                rem[c][i] = rem[c + 1][i] + (1 if v <= i else 0)
        self.rem = rem
        self.final_start = self.m - ranks[-1]
        if self.m >= dim:
            self.final_rho = tuple(
                [self.m] * (dim - ranks[-1]) + [self.m - dim] * ranks[-1]
            )
        else:
            self.final_rho = None
        self.target = (self.m,) * dim

    def feasible(self, c: int, rho: tuple[int, ...]) -> bool:
        """Prefix bound: rows 1..i must be completable by the remaining
        columns whose labels can reach them (at most n boxes per column)."""
        n, m = self.n, self.m
        if c == self.final_start and rho != self.final_rho:
            return False
        rem_c = self.rem[c]
        prefix = 0
        for i in range(1, n + 1):
            prefix += rho[i - 1]
            if i * m - prefix > n * rem_c[i]:
                return False
        return True

    def count(self) -> int:
        n, m = self.n, self.m
        cols = self.cols
        memo: dict = {}

        def go(c: int, rho: tuple[int, ...], prev: tuple[int, ...] | None) -> int:
            if c == m:
                return 1 if rho == self.target else 0
            key = (c, rho, prev)
            cached = memo.get(key)
            if cached is not None:
                return cached
            total = 0
            if self.feasible(c, rho):
                blk, v = cols[c]
                in_block = c + 1 < m and cols[c + 1][0] == blk
                for col in _column_options(rho, prev, v, n, m):
                    nrho = tuple(rho[i] + col[i] for i in range(n))
                    total += go(c + 1, nrho, col if in_block else None)
            memo[key] = total
            return total

        return go(0, (0,) * n, None)

    def enumerate(self) -> Iterator[list[tuple[int, ...]]]:
        n, m = self.n, self.m
        cols = self.cols
        chosen: list[tuple[int, ...]] = []

        def go(c: int, rho: tuple[int, ...], prev: tuple[int, ...] | None):
            if c == m:
                if rho == self.target:
                    yield list(chosen)
                return
            if not self.feasible(c, rho):
                return
            blk, v = cols[c]
            in_block = c + 1 < m and cols[c + 1][0] == blk
            for col in _column_options(rho, prev, v, n, m):
                nrho = tuple(rho[i] + col[i] for i in range(n))
                chosen.append(col)
                yield from go(c + 1, nrho, col if in_block else None)
                chosen.pop()

        yield from go(0, (0,) * n, None)

    def find(self) -> list[tuple[int, ...]] | None:
        n, m = self.n, self.m
        cols = self.cols
        failed: set = set()
        chosen: list[tuple[int, ...]] = []

        def go(c: int, rho: tuple[int, ...], prev: tuple[int, ...] | None) -> bool:
            if c == m:
                return rho == self.target
            key = (c, rho, prev)
            if key in failed:
                return False
            if self.feasible(c, rho):
                blk, v = cols[c]
                in_block = c + 1 < m and cols[c + 1][0] == blk
                for col in _column_options(rho, prev, v, n, m):
                    nrho = tuple(rho[i] + col[i] for i in range(n))
                    chosen.append(col)
                    if go(c + 1, nrho, col if in_block else None):
                        return True
                    chosen.pop()
            failed.add(key)
            return False

        if go(0, (0,) * n, None):
            return chosen
        return None


def find_config(ranks: Sequence[int], dim: int) -> ConfigMatrix | None:
    """First configuration matrix in the documented search order, or None.

    Columns are filled left to right and, within a column, top to bottom with
    larger entries tried first; the result is therefore the lexicographically
    greatest certificate under column-major comparison.  Blocks are laid out
    in the order given (the count and existence do not depend on the order).
    """
    ranks = _check_ranks(ranks, dim)
    columns = _Search(ranks, dim).find()
    if columns is None:
        return None
    entries = tuple(
        tuple(col[i] for col in columns) for i in range(dim)
    )
    return ConfigMatrix(dim=dim, ranks=ranks, entries=entries)


def count_configs(ranks: Sequence[int], dim: int) -> int:
    """Exact number of configuration matrices for ``(ranks, dim)``."""
    ranks = _check_ranks(ranks, dim)
    return _Search(ranks, dim).count()


def iter_configs(ranks: Sequence[int], dim: int) -> Iterator[ConfigMatrix]:
    """Every configuration matrix, in the documented search order.

    Exhaustive (no memoization), so intended for small instances such as
    bijection tests; use count_configs for bare counts.
    """
    ranks = _check_ranks(ranks, dim)
    for columns in _Search(ranks, dim).enumerate():
        yield ConfigMatrix(
            dim=dim,
            ranks=ranks,
            entries=tuple(tuple(col[i] for col in columns) for i in range(dim)),
        )


def _mu_levels(a: ConfigMatrix) -> tuple[tuple[int, ...], ...]:
    chain = [()]
    sums = [0] * a.dim
    for k, width in enumerate(a.ranks):
        lo = a.block_start(k)
        for i in range(a.dim):
            sums[i] += sum(a.entries[i][lo:lo + width])
        chain.append(as_partition(sums))
    return tuple(chain)


def mu_chain(a: ConfigMatrix) -> tuple[tuple[int, ...], ...]:
    """Row-sum partitions of the block prefixes, from empty to the full box.

    Entry ``k`` is the partition of row sums of the first ``k`` blocks;
    property (iv) guarantees each is already weakly decreasing, and the last
    one is the full ``dim x M`` rectangle.
    """
    report = validate_config(a)
    if not report:
        raise InvalidCertificate(report.message)
    return _mu_levels(a)


def tableau_cells(a: ConfigMatrix) -> list[list[tuple[int, int]]]:
    """Cell labels of the union skew tableau encoded by ``a``.

    Returns, for each of the ``dim`` rows, the left-to-right list of
    ``(block, value)`` labels (1-based) filling the full rectangle.
    """
    report = validate_config(a)
    if not report:
        raise InvalidCertificate(report.message)
    rows: list[list[tuple[int, int]]] = [[] for _ in range(a.dim)]
    for k, width in enumerate(a.ranks):
        blk = a.block(k)
        for i in range(a.dim):
            for v in range(width):
                rows[i].extend([(k + 1, v + 1)] * blk[i][v])
    return rows


def render_tableaux(a: ConfigMatrix) -> str:
    """UTF-8 grid of the union skew tableau, one ``block:value`` cell per box."""
    rows = tableau_cells(a)
    return "\n".join(
        " ".join(f"{k}:{v}" for (k, v) in row) for row in rows
    )


def lr_oracle(
    lam: Sequence[int], mu: Sequence[int], nu: Sequence[int]
) -> int:
    """Littlewood-Richardson coefficient by direct tableau enumeration.

    Counts fillings of the skew shape nu/lam with content mu that are weakly
    increasing along rows, strictly increasing down columns, and whose
    right-to-left, top-to-bottom reading word is a lattice word.  Independent
    of the configuration-matrix search; intended for small shapes.
    """
    lam = as_partition(lam)
    mu = as_partition(mu)
    nu = as_partition(nu)
    if sum(lam) + sum(mu) != sum(nu):
        return 0
    if not contains(lam, nu):
        return 0
    if not mu:
        return 1
    height = len(nu)
    lamp = pad(lam, height)
    cells = []
    for r in range(height):
        for c in range(nu[r] - 1, lamp[r] - 1, -1):
            cells.append((r, c))
    nvals = len(mu)
    remaining = list(mu)
    grid = [[0] * nu[r] for r in range(height)]
    counts = [0] * (nvals + 2)
    total = 0

    def rec(idx: int):
        nonlocal total
        if idx == len(cells):
            total += 1
            return
        r, c = cells[idx]
        right = grid[r][c + 1] if c + 1 < nu[r] else None
        above = 0
        if r > 0 and c < nu[r - 1] and c >= lamp[r - 1]:
            above = grid[r - 1][c]
        for v in range(1, nvals + 1):
            if remaining[v - 1] == 0:
                continue
            if right is not None and v > right:
                continue
            if v <= above:
                continue
            if v > 1 and counts[v] + 1 > counts[v - 1]:
                continue
            grid[r][c] = v
            remaining[v - 1] -= 1
            counts[v] += 1
            rec(idx + 1)
            counts[v] -= 1
            remaining[v - 1] += 1
            grid[r][c] = 0

    rec(0)
    return total


def okada_product(a: int, b: int, n1: int, n2: int) -> list[tuple[int, ...]]:
    """Shapes in the product of the two rectangle Schur functions
    ``(n1^a) * (n2^b)`` (each appearing exactly once), for a >= b >= 1.

    A shape qualifies iff it has length at most a+b, rows b+1..a equal n1,
    row b at least max(n1, n2), and complementary pairs
    row_i + row_{a+b+1-i} = n1 + n2 for i <= b.
    """
    if b < 1 or a < b:
        raise InvalidShape(f"need a >= b >= 1, got a={a} b={b}")
    if n1 < 0 or n2 < 0:
        raise InvalidShape("rectangle widths must be nonnegative")
    lo = max(n1, n2)
    hi = n1 + n2
    out = []

    def heads(i: int, cap: int, prefix: tuple[int, ...]):
        if i == b:
            lam = prefix + (n1,) * (a - b) + tuple(
                hi - prefix[b - 1 - j] for j in range(b)
            )
            out.append(as_partition(lam))
            return
        for x in range(cap, lo - 1, -1):
            heads(i + 1, x, prefix + (x,))

    heads(0, hi, ())
    return out


def hook_completion_feasible(
    lam: Sequence[int], k: int, width: int, dim: int
) -> bool:
    """Whether ``lam`` can be completed to the full ``dim x width`` rectangle
    by ``k`` further one-row additions of size ``dim``.

    Requires |lam| = dim * (width - k); feasibility holds iff ``k`` is at
    least ``dim`` minus the number of already-complete rows of ``lam``.
    """
    lam = as_partition(lam)
    if len(lam) > dim or (lam and lam[0] > width):
        raise DoesNotFit(f"{lam} does not fit in {dim} rows of width {width}")
    if sum(lam) != dim * (width - k):
        raise SizeMismatch(
            f"|lam|={sum(lam)} but dim*(width-k)={dim * (width - k)}"
        )
    return k >= dim - count_equal_parts(lam, width)
