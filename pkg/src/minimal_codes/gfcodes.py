"""Linear codes over GF(2) and GF(3): enumeration, minimality, projective view.

Binary codes are handled with integer bitsets (coordinate ``j`` is bit ``j``);
ternary codes use small integer arrays.  Codewords are enumerated in
lexicographic order of their message vectors, first message symbol most
significant.
"""

from __future__ import annotations

import itertools
import os
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Sequence

import numpy as np

from .errors import (
    AuditMismatch,
    DegenerateColumn,
    DimensionTooLarge,
    MatrixFormatError,
    RankDeficient,
    UnsupportedField,
)

SUPPORTED_FIELDS = (2, 3)
STREAM_GUARD = 1 << 26
QUADRATIC_GUARD = 1 << 20

# largest length for which supports fit in a signed 64-bit word
_NUMPY_MAX_N = 62


def _inverse(a: int, q: int) -> int:
    return pow(a, -1, q)


def rank_mod_q(rows: Sequence[Sequence[int]], q: int) -> int:
    """Rank of a matrix over the prime field GF(q)."""
    if q == 2:
        return gf2_rank([_bits(r) for r in rows])
    work = [[x % q for x in r] for r in rows]
    if not work:
        return 0
    ncols = len(work[0])
    rank = 0
    for col in range(ncols):
        pivot = next((i for i in range(rank, len(work)) if work[i][col]), None)
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        inv = _inverse(work[rank][col], q)
        work[rank] = [(x * inv) % q for x in work[rank]]
        for i in range(len(work)):
            if i != rank and work[i][col]:
                f = work[i][col]
                work[i] = [(a - f * b) % q for a, b in zip(work[i], work[rank])]
        rank += 1
        if rank == len(work):
            break
    return rank


def gf2_rank(rows: list[int]) -> int:
    """Rank over GF(2) of rows given as int bitsets."""
    basis: list[int] = []
    for r in rows:
        for b in basis:
            r = min(r, r ^ b)
        if r:
            basis.append(r)
    return len(basis)


def _bits(row: Sequence[int]) -> int:
    out = 0
    for j, x in enumerate(row):
        if x:
            out |= 1 << j
    return out


def _mask_to_indices(mask: int) -> frozenset[int]:
    out = []
    j = 0
    while mask:
        if mask & 1:
            out.append(j)
        mask >>= 1
        j += 1
    return frozenset(out)


@dataclass(frozen=True)
class Codeword:
    coords: tuple[int, ...]
    weight: int
    support: frozenset[int]

    @classmethod
    def from_coords(cls, coords: Sequence[int]) -> "Codeword":
        coords = tuple(int(x) for x in coords)
        support = frozenset(i for i, x in enumerate(coords) if x)
        return cls(coords, len(support), support)

    def __str__(self) -> str:
        return "".join(str(x) for x in self.coords)


@dataclass(frozen=True)
class LinearCode:
    """An [n, k]_q code given by a full-rank generator matrix."""

    gen: tuple[tuple[int, ...], ...]
    q: int = 2

    def __post_init__(self):
        if self.q not in SUPPORTED_FIELDS:
            raise UnsupportedField(f"only q in {SUPPORTED_FIELDS} is supported, got {self.q}")
        gen = tuple(tuple(int(x) for x in row) for row in self.gen)
        object.__setattr__(self, "gen", gen)
        if not gen or not gen[0]:
            raise ValueError("generator matrix must be non-empty")
        n = len(gen[0])
        if any(len(row) != n for row in gen):
            raise ValueError("generator rows have different lengths")
        if any(x < 0 or x >= self.q for row in gen for x in row):
            raise ValueError(f"entries must lie in 0..{self.q - 1}")
        if len(gen) > n:
            raise RankDeficient(f"k = {len(gen)} exceeds n = {n}")
        if rank_mod_q(gen, self.q) != len(gen):
            raise RankDeficient("generator matrix does not have full row rank")

    @classmethod
    def from_strings(cls, rows: Sequence[str], q: int = 2) -> "LinearCode":
        return cls(tuple(tuple(int(c) for c in r.replace(" ", "")) for r in rows), q)

    @property
    def k(self) -> int:
        return len(self.gen)

    @property
    def n(self) -> int:
        return len(self.gen[0])

    @cached_property
    def row_masks(self) -> tuple[int, ...]:
        return tuple(_bits(r) for r in self.gen)

    @cached_property
    def d(self) -> int:
        return weight_profile(self)[0]

    def is_nondegenerate(self) -> bool:
        return all(any(row[j] for row in self.gen) for j in range(self.n))

    def __str__(self) -> str:
        return "\n".join("".join(str(x) for x in row) for row in self.gen)


def _check_guard(code: LinearCode, guard: int) -> None:
    if code.q ** code.k > guard:
        raise DimensionTooLarge(
            f"q^k = {code.q}^{code.k} exceeds the enumeration guard {guard}"
        )


def _messages(k: int, q: int) -> Iterator[tuple[int, ...]]:
    it = itertools.product(range(q), repeat=k)
    next(it)  # zero message
    return it


def _encode(msg: Sequence[int], code: LinearCode) -> tuple[int, ...]:
    q = code.q
    out = [0] * code.n
    for m, row in zip(msg, code.gen):
        if m:
            for j, x in enumerate(row):
                out[j] = (out[j] + m * x) % q
    return tuple(out)


def enumerate_codewords(code: LinearCode) -> Iterator[Codeword]:
    """Yield the q^k - 1 nonzero codewords, message vectors in lexicographic order."""
    _check_guard(code, STREAM_GUARD)
    if code.q == 2:
        masks = code.row_masks
        n = code.n
        for msg in _messages(code.k, 2):
            c = 0
            for m, r in zip(msg, masks):
                if m:
                    c ^= r
            coords = tuple((c >> j) & 1 for j in range(n))
            yield Codeword(coords, c.bit_count(), _mask_to_indices(c))
    else:
        for msg in _messages(code.k, code.q):
            yield Codeword.from_coords(_encode(msg, code))


def _support_table(code: LinearCode) -> tuple[np.ndarray, np.ndarray]:
    """Supports and weights of all nonzero codewords, in message order.

    Supports are int64 bitsets when n fits in a machine word and Python ints
    (object array) otherwise.
    """
    k, q, n = code.k, code.q, code.n
    wide = n > _NUMPY_MAX_N
    if q == 2 and not wide:
        sup = np.zeros(1, dtype=np.int64)
        for r in reversed(code.row_masks):
            sup = np.concatenate([sup, sup ^ np.int64(r)])
        sup = sup[1:]
        return sup, np.bitwise_count(sup).astype(np.int64)
    if q == 2:
        sup_list = [0]
        for r in reversed(code.row_masks):
            sup_list = sup_list + [s ^ r for s in sup_list]
        sup_obj = np.array(sup_list[1:], dtype=object)
        return sup_obj, np.array([s.bit_count() for s in sup_list[1:]], dtype=np.int64)
    msgs = np.array(list(itertools.product(range(q), repeat=k))[1:], dtype=np.int64)
    words = (msgs @ np.array(code.gen, dtype=np.int64)) % q
    nz = words != 0
    weights = nz.sum(axis=1).astype(np.int64)
    if wide:
        sup_obj = np.array([sum(1 << j for j in np.flatnonzero(row)) for row in nz], dtype=object)
        return sup_obj, weights
    pow2 = np.left_shift(np.int64(1), np.arange(n, dtype=np.int64))
    return (nz.astype(np.int64) * pow2).sum(axis=1), weights


def _codeword_at(code: LinearCode, index: int) -> Codeword:
    """Nonzero codeword number ``index`` in message order."""
    q, k = code.q, code.k
    v = index + 1
    msg = []
    for _ in range(k):
        msg.append(v % q)
        v //= q
    return Codeword.from_coords(_encode(msg[::-1], code))


def weight_profile(code: LinearCode) -> tuple[int, int, dict[int, int]]:
    """Return (d_min, w_max, {weight: count}) over nonzero codewords."""
    _check_guard(code, STREAM_GUARD)
    _, weights = _support_table(code)
    counts = np.bincount(weights)
    dist = {int(w): int(c) for w, c in enumerate(counts) if c}
    return min(dist), max(dist), dist


def is_minimal_code(code: LinearCode) -> tuple[bool, tuple[Codeword, Codeword] | None]:
    """Check minimality straight from the definition.

    Returns ``(True, None)`` or ``(False, (c_small, c_big))`` where the support
    of ``c_small`` is strictly contained in that of ``c_big``.  Only strictly
    lighter codewords can have strictly smaller support, so each codeword is
    tested against the lighter ones only.
    """
    _check_guard(code, QUADRATIC_GUARD)
    sup, weights = _support_table(code)
    order = np.argsort(weights, kind="stable")
    sup_sorted = sup[order]
    w_sorted = weights[order]
    boundaries = np.flatnonzero(np.diff(w_sorted)) + 1
    starts = np.concatenate([[0], boundaries])
    ends = np.concatenate([boundaries, [len(w_sorted)]])
    chunk = 1 << 22
    for start, end in zip(starts, ends):
        if start == 0:
            continue
        lighter = sup_sorted[:start]
        step = max(1, chunk // start)
        for lo in range(start, end, step):
            block = sup_sorted[lo:min(end, lo + step)]
            contained = (lighter[None, :] & ~block[:, None]) == 0
            hit = np.argwhere(contained)
            if len(hit):
                bi, li = hit[0]
                big = _codeword_at(code, int(order[lo + bi]))
                small = _codeword_at(code, int(order[li]))
                return False, (small, big)
    return True, None


def _unit_columns(code: LinearCode) -> list[int]:
    """Positions of e_1, ..., e_k among the columns, if all are present."""
    cols = list(zip(*code.gen))
    out = []
    for i in range(code.k):
        unit = tuple(1 if r == i else 0 for r in range(code.k))
        j = next((j for j, c in enumerate(cols) if c == unit), None)
        if j is None:
            return []
        out.append(j)
    return out


def standard_form(
    code: LinearCode, pivot_hint: Sequence[int] | None = None
) -> tuple[LinearCode, list[int]]:
    """Row-reduce to ``[I_k | P]`` after a column permutation.

    ``perm[j]`` is the original index of column ``j`` of the result.  Columns in
    ``pivot_hint`` are tried as pivots first, in the given order; by default
    existing unit columns are reused so that they move to the front.
    """
    q, k, n = code.q, code.k, code.n
    if pivot_hint is None:
        pivot_hint = _unit_columns(code)
    work = [list(r) for r in code.gen]
    order = list(pivot_hint or []) + [j for j in range(n) if j not in set(pivot_hint or [])]
    pivots: list[int] = []
    for col in order:
        if len(pivots) == k:
            break
        r = len(pivots)
        pivot = next((i for i in range(r, k) if work[i][col]), None)
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        inv = _inverse(work[r][col], q)
        work[r] = [(x * inv) % q for x in work[r]]
        for i in range(k):
            if i != r and work[i][col]:
                f = work[i][col]
                work[i] = [(a - f * b) % q for a, b in zip(work[i], work[r])]
        pivots.append(col)
    if len(pivots) < k:
        raise RankDeficient("generator matrix does not have full row rank")
    # keep identity rows in the order their pivots were found
    pivot_set = set(pivots)
    perm = pivots + [j for j in range(n) if j not in pivot_set]
    gen = tuple(tuple(row[j] for j in perm) for row in work)
    return LinearCode(gen, q), perm


def _normalize(vec: Sequence[int], q: int) -> tuple[int, ...]:
    lead = next(x for x in vec if x)
    inv = _inverse(lead, q)
    return tuple((x * inv) % q for x in vec)


@dataclass(frozen=True)
class ProjectivePointSet:
    """Columns of a generator matrix as points of PG(k-1, q), with multiplicities."""

    k: int
    q: int
    multiplicity: dict[tuple[int, ...], int] = field(hash=False)

    @property
    def points(self) -> list[tuple[int, ...]]:
        return sorted(self.multiplicity)

    @property
    def is_projective(self) -> bool:
        return all(m == 1 for m in self.multiplicity.values())

    def __len__(self) -> int:
        return sum(self.multiplicity.values())

    @classmethod
    def from_points(cls, points, k: int, q: int) -> "ProjectivePointSet":
        pts = []
        for p in points:
            p = tuple(int(x) % q for x in p)
            if len(p) != k:
                raise ValueError(f"point {p} does not have {k} coordinates")
            if not any(p):
                raise DegenerateColumn("the zero vector is not a projective point")
            pts.append(_normalize(p, q))
        return cls(k, q, dict(Counter(pts)))


def projective_points(code: LinearCode) -> ProjectivePointSet:
    cols = list(zip(*code.gen))
    for j, col in enumerate(cols):
        if not any(col):
            raise DegenerateColumn(f"column {j} is zero")
    return ProjectivePointSet.from_points(cols, code.k, code.q)


def all_projective_points(k: int, q: int) -> list[tuple[int, ...]]:
    """All points of PG(k-1, q) in normalized form, lexicographically sorted."""
    return [v for v in itertools.product(range(q), repeat=k) if any(v) and next(x for x in v if x) == 1]


def is_strong_blocking_set(
    pts: ProjectivePointSet, k: int | None = None, q: int | None = None
) -> tuple[bool, tuple[int, ...] | None]:
    """Check that every hyperplane meets the point set in a spanning subset.

    Hyperplanes are the kernels of normalized nonzero dual vectors.  Returns
    ``(False, u)`` for the first dual vector ``u`` whose hyperplane fails.
    """
    k = pts.k if k is None else k
    q = pts.q if q is None else q
    if q ** k > QUADRATIC_GUARD:
        raise DimensionTooLarge(f"q^k = {q}^{k} exceeds the enumeration guard")
    points = pts.points
    if not points:
        return False, all_projective_points(k, q)[0]
    P = np.array(points, dtype=np.int64)
    duals = all_projective_points(k, q)
    U = np.array(duals, dtype=np.int64)
    incident = (U @ P.T) % q == 0
    if q == 2:
        masks = [_bits(p) for p in points]
        for u, row in zip(duals, incident):
            if gf2_rank([masks[i] for i in np.flatnonzero(row)]) != k - 1:
                return False, u
    else:
        for u, row in zip(duals, incident):
            inside = [points[i] for i in np.flatnonzero(row)]
            if rank_mod_q(inside, q) != k - 1:
                return False, u
    return True, None


def minimal_iff_strong_blocking_audit(code: LinearCode, strict: bool = True) -> bool:
    """Cross-check the combinatorial and geometric minimality tests."""
    minimal, _ = is_minimal_code(code)
    blocking, _ = is_strong_blocking_set(projective_points(code))
    if minimal != blocking and strict:
        raise AuditMismatch(
            f"is_minimal_code={minimal} but is_strong_blocking_set={blocking} for\n{code}"
        )
    return minimal == blocking


def ashikhmin_barg_check(code: LinearCode) -> bool:
    """Sufficient condition for minimality: w_min / w_max > (q-1)/q."""
    d, w_max, _ = weight_profile(code)
    return d * code.q > (code.q - 1) * w_max


# -- text matrix format ------------------------------------------------------


def parse_matrix(text: str) -> LinearCode:
    """Parse the ``q k n`` header + rows format; ``#`` starts a comment line."""
    lines = [ln.strip() for ln in text.replace("\r\n", "\n").split("\n")]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise MatrixFormatError("empty matrix file")
    try:
        q, k, n = (int(x) for x in lines[0].split())
    except ValueError:
        raise MatrixFormatError(f"bad header line {lines[0]!r}; expected 'q k n'") from None
    if q not in SUPPORTED_FIELDS:
        raise MatrixFormatError(f"unsupported field size q = {q}")
    body = lines[1:]
    if len(body) != k:
        raise MatrixFormatError(f"expected {k} rows, found {len(body)}")
    rows = []
    for ln in body:
        digits = ln.replace(" ", "").replace("\t", "")
        if len(digits) != n or not digits.isdigit():
            raise MatrixFormatError(f"row {ln!r} is not {n} digits")
        row = tuple(int(c) for c in digits)
        if any(x >= q for x in row):
            raise MatrixFormatError(f"row {ln!r} has entries outside 0..{q - 1}")
        rows.append(row)
    try:
        return LinearCode(tuple(rows), q)
    except RankDeficient as exc:
        raise MatrixFormatError(str(exc)) from exc


def format_matrix(code: LinearCode, comment: str | None = None) -> str:
    out = []
    if comment:
        out.extend(f"# {line}".rstrip() for line in comment.splitlines())
    out.append(f"{code.q} {code.k} {code.n}")
    out.extend("".join(str(x) for x in row) for row in code.gen)
    return "\n".join(out) + "\n"


def read_matrix(path: str | os.PathLike) -> LinearCode:
    with open(path, newline="") as fh:
        return parse_matrix(fh.read())


def write_matrix(code: LinearCode, path: str | os.PathLike, comment: str | None = None) -> None:
    with open(path, "w", newline="\n") as fh:
        fh.write(format_matrix(code, comment))
