"""Deciding tight fusion frame sequences and enumerating maximal ones.

A weakly decreasing sequence of ranks ``L`` is tight in dimension ``N`` when
``alpha * I`` (with ``alpha = sum(L)/N``) splits as a sum of orthogonal
projections with those ranks; equivalently, when a configuration matrix for
``(L, N)`` exists.  Tightness is downward closed under the dominance order,
which the enumeration exploits: only dominance-maximal candidates are sent to
the certificate search, everything below is inherited.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .configmat import ConfigMatrix, find_config
from .errors import AlphaOutOfRange, InvalidAlpha, InvalidRanks
from .partitions import as_partition, dominance_leq, partitions_of

Rational = Fraction | int


@dataclass(frozen=True)
class TFFInstance:
    """A rank sequence together with its ambient dimension and derived data."""

    dim: int
    ranks: tuple[int, ...]
    total: int = field(init=False)
    alpha: Fraction = field(init=False)
    sigma: tuple[int, ...] = field(init=False)

    def __post_init__(self):
        ranks = as_partition(self.ranks)
        if not ranks:
            raise InvalidRanks("rank sequence is empty")
        if ranks[0] > self.dim:
            raise InvalidRanks(
                f"largest rank {ranks[0]} exceeds dimension {self.dim}"
            )
        total = sum(ranks)
        if total < self.dim:
            raise InvalidRanks(
                f"total rank {total} below dimension {self.dim}: bound < 1"
            )
        object.__setattr__(self, "ranks", ranks)
        object.__setattr__(self, "total", total)
        object.__setattr__(self, "alpha", Fraction(total, self.dim))
        sigma = []
        acc = 0
        for r in ranks:
            acc += r
            sigma.append(acc)
        object.__setattr__(self, "sigma", tuple(sigma))


def _diag_block(dim: int) -> list[tuple[int, ...]]:
    return [tuple(dim if i == v else 0 for v in range(dim)) for i in range(dim)]


def decide(
    ranks: Sequence[int], dim: int, certificate: bool = False
) -> bool | tuple[bool, ConfigMatrix | None]:
    """Whether ``ranks`` admits a tight fusion frame in dimension ``dim``.

    The instance is first canonicalized through tightness-preserving moves:
    full ranks peel off as identity summands, the spatial dual is taken
    whenever it shrinks the total rank, and the Naimark dual whenever the
    frame bound exceeds 2.  The certificate search then runs on the reduced
    instance; with ``certificate=True`` the witness is mapped back through
    the same moves (configuration-matrix dualities are exact involutions,
    and a peeled identity summand re-enters as a forced diagonal block).
    """
    ranks = tuple(sorted((int(r) for r in ranks), reverse=True))
    if not ranks:
        raise InvalidRanks("rank sequence is empty")
    if ranks[0] > dim:
        raise InvalidRanks(f"largest rank {ranks[0]} exceeds dimension {dim}")

    def outcome(tight: bool, cert: ConfigMatrix | None):
        return (tight, cert) if certificate else tight

    ops: list[tuple] = []
    cur_ranks, cur_dim = ranks, dim
    while True:
        full = sum(1 for r in cur_ranks if r == cur_dim)
        if full == len(cur_ranks):
            break
        if full:
            ops.append(("peel", full, cur_dim))
            cur_ranks = tuple(r for r in cur_ranks if r < cur_dim)
            continue
        total = sum(cur_ranks)
        if total < cur_dim:
            return outcome(False, None)
        k = len(cur_ranks)
        if k * cur_dim - total < total:
            ops.append(("spatial",))
            cur_ranks = tuple(cur_dim - r for r in reversed(cur_ranks))
            continue
        if total > 2 * cur_dim:
            ops.append(("naimark",))
            cur_dim = total - cur_dim
            continue
        break

    if cur_ranks and cur_ranks[0] == cur_dim:
        # all remaining ranks are full: identity summands, always tight
        if not certificate:
            return outcome(True, None)
        cert = ConfigMatrix(
            dim=cur_dim,
            ranks=cur_ranks,
            entries=tuple(
                tuple(x for _ in cur_ranks for x in row)
                for row in _diag_block(cur_dim)
            ),
        )
    else:
        cert = find_config(cur_ranks, cur_dim)
        if cert is None:
            return outcome(False, None)
        if not certificate:
            return outcome(True, None)

    from .dualities import config_naimark_dual, config_spatial_dual

    for op in reversed(ops):
        if op[0] == "naimark":
            cert = config_naimark_dual(cert)
        elif op[0] == "spatial":
            cert = config_spatial_dual(cert)
        else:
            _, count, peel_dim = op
            diag = _diag_block(peel_dim)
            cert = ConfigMatrix(
                dim=peel_dim,
                ranks=(peel_dim,) * count + cert.ranks,
                entries=tuple(
                    tuple(x for _ in range(count) for x in diag[i])
                    + cert.entries[i]
                    for i in range(peel_dim)
                ),
            )
    return outcome(True, cert)


def fillmore_feasible(trace: Rational, rank: int) -> bool:
    """Whether a positive semidefinite matrix with the given trace and rank
    can be written as a sum of orthogonal projections: the trace must be a
    nonnegative integer at least the rank."""
    trace = Fraction(trace)
    if trace < 0 or rank < 0:
        raise ValueError("trace and rank must be nonnegative")
    return trace.denominator == 1 and trace >= rank


def _require_alpha_open_interval(alpha: Fraction) -> None:
    if not 1 < alpha < 2:
        raise AlphaOutOfRange(f"bound {alpha} is not strictly between 1 and 2")


def first3_check(
    l1: int, l2: int, l3: int, alpha: Rational, dim: int
) -> bool:
    """Necessary-and-sufficient bounds on the three largest ranks for
    1 < alpha < 2: l1 <= (alpha-1)*dim, l1+l2 <= dim, and
    l1+l2+l3 <= dim (alpha < 3/2) or <= 2*(alpha-1)*dim (alpha > 3/2).

    Exactly at alpha = 3/2 neither three-rank bound applies: the instance is
    equivalent to integer bound 3 in half the dimension, where the first
    bound l1 <= dim/2 is already decisive, so only the trivial total bound
    l1+l2+l3 <= alpha*dim is imposed there.  (With bound dim at 3/2 the
    check would wrongly reject (2,2,2) in dimension 4.)
    """
    alpha = Fraction(alpha)
    _require_alpha_open_interval(alpha)
    if not l1 >= l2 >= l3 >= 0:
        raise InvalidRanks(f"need l1 >= l2 >= l3 >= 0, got {(l1, l2, l3)}")
    if l1 > (alpha - 1) * dim:
        return False
    if l1 + l2 > dim:
        return False
    if alpha < Fraction(3, 2):
        bound = Fraction(dim)
    elif alpha > Fraction(3, 2):
        bound = 2 * (alpha - 1) * dim
    else:
        bound = alpha * dim
    return l1 + l2 + l3 <= bound


def hook_type_decide(
    l1: int, l2: int, l3: int, ones: int, alpha: Rational, dim: int
) -> bool:
    """Tightness of the hook-type sequence (l1, l2, l3, 1, ..., 1).

    For 1 < alpha < 2 the three-rank bounds are necessary and, for sequences
    whose remaining ranks are all 1, sufficient; this evaluates them on the
    normalized sequence.
    """
    alpha = Fraction(alpha)
    _require_alpha_open_interval(alpha)
    if ones < 0:
        raise InvalidRanks("number of trailing ones must be nonnegative")
    if not l1 >= l2 >= l3 >= 0:
        raise InvalidRanks(f"need l1 >= l2 >= l3 >= 0, got {(l1, l2, l3)}")
    seq = [x for x in (l1, l2, l3) if x != 0] + [1] * ones
    if alpha * dim != sum(seq):
        raise InvalidRanks(
            f"sequence sums to {sum(seq)} but alpha*dim = {alpha * dim}"
        )
    padded = seq + [0, 0, 0]
    return first3_check(padded[0], padded[1], padded[2], alpha, dim)


def k_block_bound(ranks: Sequence[int], dim: int, alpha: Rational) -> bool:
    """Necessary filter: whenever alpha < k/(k-1), the k largest ranks must
    fit inside the dimension.  Returns False on the first violation."""
    alpha = Fraction(alpha)
    prefix = 0
    for k, r in enumerate(ranks, start=1):
        prefix += r
        if k >= 2 and alpha * (k - 1) < k and prefix > dim:
            return False
    return True


def unique_maximal(alpha: Rational, dim: int) -> tuple[int, ...] | None:
    """Closed-form dominance-maximal element for the four covered families.

    Families, indexed by n >= 1: integer bounds alpha = n; alpha = 1 + 1/n
    with n | dim; alpha = n + 1/2 with 2 | dim; alpha = 1 + 2/(2n-1) with
    (2n-1) | dim.  Returns None when (alpha, dim) is not covered.
    """
    alpha = Fraction(alpha)
    if alpha < 1 or dim < 1 or (alpha * dim).denominator != 1:
        return None
    if alpha.denominator == 1:
        n = alpha.numerator
        return as_partition((dim,) * n)
    excess = alpha - 1
    if excess.numerator == 1:
        n = excess.denominator
        if dim % n == 0:
            return as_partition((dim // n,) * (n + 1))
    if alpha.denominator == 2 and dim % 2 == 0:
        n = int(alpha - Fraction(1, 2))
        if n >= 1:
            return as_partition((dim,) * (n - 1) + (dim // 2,) * 3)
    if excess.numerator == 2 and excess.denominator % 2 == 1:
        n = (excess.denominator + 1) // 2
        d = excess.denominator
        if dim % d == 0:
            return as_partition(
                (2 * dim // d,) * (n - 1) + (dim // d,) * 3
            )
    return None


def _check_alpha(alpha: Fraction, dim: int) -> int:
    if dim < 1:
        raise InvalidAlpha(f"dimension must be positive, got {dim}")
    if alpha < 1:
        raise InvalidAlpha(f"frame bound must be at least 1, got {alpha}")
    total = alpha * dim
    if total.denominator != 1:
        raise InvalidAlpha(f"alpha*dim = {total} is not an integer")
    return total.numerator


def maximal_elements(alpha: Rational, dim: int) -> list[tuple[int, ...]]:
    """All dominance-maximal tight sequences for the given (alpha, dim).

    Candidates are scanned in descending lexicographic order (which refines
    reverse dominance), so a candidate not dominated by an accepted element
    is maximal as soon as the certificate search succeeds.  For bounds in
    (1, 2) the three-rank and k-block filters discard candidates before the
    search; integer bounds have the closed-form answer; other bounds reduce
    into (1, 2) without changing the set of sequences.
    """
    alpha = Fraction(alpha)
    total = _check_alpha(alpha, dim)
    if alpha.denominator == 1:
        return [unique_maximal(alpha, dim)]
    if alpha > 2:
        reduced_dim = total - dim
        return maximal_elements(Fraction(total, reduced_dim), reduced_dim)
    accepted: list[tuple[int, ...]] = []
    for cand in partitions_of(total, max_part=dim):
        if any(dominance_leq(cand, top) for top in accepted):
            continue
        padded = cand + (0, 0, 0)
        if not first3_check(padded[0], padded[1], padded[2], alpha, dim):
            continue
        if not k_block_bound(cand, dim, alpha):
            continue
        if decide(cand, dim):
            accepted.append(cand)
    return accepted


def enumerate_tff(alpha: Rational, dim: int) -> list[tuple[int, ...]]:
    """Every tight sequence for (alpha, dim), in descending lexicographic
    order: the downward dominance closure of the maximal elements."""
    alpha = Fraction(alpha)
    total = _check_alpha(alpha, dim)
    tops = maximal_elements(alpha, dim)
    return [
        cand
        for cand in partitions_of(total, max_part=dim)
        if any(dominance_leq(cand, top) for top in tops)
    ]
