"""Exhaustive search for binary minimal codes of length 3N and dimension N+1.

Such a code has a generator ``[I_{N+1} | P]`` whose right block ``P`` has
N+1 rows of weight N and even columns.  Each row of ``P`` is an N-subset of
{1, ..., 2N-1}; the code is minimal exactly when every nonzero codeword has
weight in [N+1, 2N].  Subsets are int bitmasks with element ``i`` stored in
bit ``i - 1``.
"""

from __future__ import annotations

import itertools
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple

import jsonschema
import numpy as np

from . import __version__
from . import _kernel
from .errors import (
    BlockMismatch,
    IncompleteFamily,
    MinimalCodesError,
    Unsupported,
    VerificationFailed,
)
from .gfcodes import (
    LinearCode,
    is_minimal_code,
    is_strong_blocking_set,
    projective_points,
    weight_profile,
)

DEFAULT_MAX_N = 12
# largest N for which candidate tables are materialized
TABLE_LIMIT_N = 12


def to_mask(elements: Iterable[int]) -> int:
    out = 0
    for e in elements:
        if e < 1:
            raise ValueError(f"elements are numbered from 1, got {e}")
        out |= 1 << (e - 1)
    return out


def to_elements(mask: int) -> list[int]:
    return [i + 1 for i in range(mask.bit_length()) if mask >> i & 1]


@dataclass(frozen=True)
class SubsetFamily:
    """Rows of the right block as N-subsets of {1, ..., 2N-1}."""

    N: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if self.N < 1:
            raise ValueError("N must be at least 1")
        rows = tuple(int(r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        limit = 1 << (2 * self.N - 1)
        for r in rows:
            if r <= 0 or r >= limit or r.bit_count() != self.N:
                raise ValueError(f"{to_elements(r)} is not an {self.N}-subset of 1..{2 * self.N - 1}")
        if len(rows) > self.N + 1:
            raise ValueError(f"a family has at most {self.N + 1} rows")

    @classmethod
    def from_sets(cls, N: int, sets: Iterable[Iterable[int]]) -> "SubsetFamily":
        return cls(N, tuple(to_mask(s) for s in sets))

    def as_sets(self) -> list[list[int]]:
        return [to_elements(r) for r in self.rows]

    @property
    def is_complete(self) -> bool:
        return len(self.rows) == self.N + 1

    def symmetric_difference(self) -> int:
        out = 0
        for r in self.rows:
            out ^= r
        return out

    def __len__(self) -> int:
        return len(self.rows)


class AbcdSplit(NamedTuple):
    a: int
    b: int
    c: int
    d: int


def _split(I: int, P1: int, P2: int, N: int) -> AbcdSplit:
    ground = (1 << (2 * N - 1)) - 1
    return AbcdSplit(
        (I & P1 & ~P2).bit_count(),
        (I & P1 & P2).bit_count(),
        (I & P2 & ~P1).bit_count(),
        (I & ~(P1 | P2) & ground).bit_count(),
    )


def abcd_split(I: int, P1: int, P2: int, N: int) -> AbcdSplit:
    """Sizes of ``I`` inside P1\\P2, P1&P2, P2\\P1 and outside P1|P2."""
    if 2 * (P1 & P2).bit_count() != N:
        raise BlockMismatch(f"|P1 & P2| = {(P1 & P2).bit_count()}, expected N/2 = {N / 2}")
    for name, s in (("I", I), ("P1", P1), ("P2", P2)):
        if s.bit_count() != N:
            raise BlockMismatch(f"|{name}| = {s.bit_count()}, expected {N}")
    return _split(I, P1, P2, N)


def structure_check(split: AbcdSplit) -> bool:
    a, b, c, d = split
    return a == c and b == d and abs(a - b) <= 1


def _pair_window_ok(N: int, x: int, y: int) -> bool:
    inter = (x & y).bit_count()
    return N - 1 <= 2 * inter <= N + 1


def family_window_check(fam: SubsetFamily) -> bool:
    """Pairwise intersections in [(N-1)/2, (N+1)/2]; empty total sum if complete."""
    N = fam.N
    if any(r.bit_count() != N for r in fam.rows):
        return False
    for x, y in itertools.combinations(fam.rows, 2):
        if not _pair_window_ok(N, x, y):
            return False
    if fam.is_complete and fam.symmetric_difference() != 0:
        return False
    return True


def _weight_ok(N: int, size: int, sym_weight: int, closed: bool) -> bool:
    if not N + 1 <= size + sym_weight <= 2 * N:
        return False
    if closed and size <= N and not size <= sym_weight <= N - 1 + size:
        return False
    return True


def weight_window_check(fam: SubsetFamily, new_row: int, closed: bool = False) -> bool:
    """Check codewords built from ``new_row`` together with any subset of ``fam``.

    The codeword of a set T of generator rows has weight
    ``|T| + |symmetric difference of the P_j in T|``, which must lie in
    [N+1, 2N].  With ``closed=True`` the partner codeword obtained by adding
    the sum of all N+1 rows is tested as well; that partner only exists once
    the family is completed with an empty total symmetric difference.
    """
    N = fam.N
    sums = [(0, 0)]
    for r in fam.rows:
        sums += [(size + 1, s ^ r) for size, s in sums]
    return all(_weight_ok(N, size + 1, (s ^ new_row).bit_count(), closed) for size, s in sums)


def parity_obstruction(N: int) -> bool:
    """True when N = 4 (mod 8), where no family can have all columns even.

    For even N the block-intersection structure forces every row beyond the
    first two to meet the N/2 - 1 columns outside P1 | P2 in exactly N/4
    points, and those columns must all be even.
    """
    if N < 1:
        raise ValueError("N must be at least 1")
    if N % 8 != 4:
        return False
    # N - 1 rows with N/4 ones each in the outer block: odd total when both are odd
    total = (N - 1) * (N // 4)
    assert total % 2 == 1
    return True


def assemble_generator(fam: SubsetFamily) -> LinearCode:
    """The generator ``[I_{N+1} | P]`` with row j of P the indicator of P_j."""
    if not fam.is_complete:
        raise IncompleteFamily(f"need {fam.N + 1} rows, have {len(fam.rows)}")
    N = fam.N
    k = N + 1
    width = 2 * N - 1
    gen = []
    for j, r in enumerate(fam.rows):
        ident = [1 if i == j else 0 for i in range(k)]
        gen.append(tuple(ident + [(r >> i) & 1 for i in range(width)]))
    return LinearCode(tuple(gen), 2)


def family_from_generator(code: LinearCode) -> SubsetFamily:
    """Inverse of :func:`assemble_generator` for a generator already in that form."""
    k, n = code.k, code.n
    N = k - 1
    if n != 3 * N:
        raise ValueError(f"expected length {3 * N}, got {n}")
    rows = []
    for j, row in enumerate(code.gen):
        if tuple(row[:k]) != tuple(1 if i == j else 0 for i in range(k)):
            raise ValueError("generator is not of the form [I | P]")
        rows.append(sum(1 << i for i, x in enumerate(row[k:]) if x))
    return SubsetFamily(N, tuple(rows))


# -- search ------------------------------------------------------------------


@dataclass(frozen=True)
class SearchConfig:
    max_N: int = DEFAULT_MAX_N
    threads: int = 1
    use_parity: bool = True
    structure_prune: bool = True
    # map the third row to a representative of its block-intersection type
    orbit_p3: bool = True
    find_all: bool = False
    max_solutions: int = 10_000

    def __post_init__(self):
        if self.threads < 1:
            raise ValueError("threads must be at least 1")
        if not 1 <= self.max_N <= TABLE_LIMIT_N:
            raise ValueError(f"max_N must lie in 1..{TABLE_LIMIT_N}")

    def replay_key(self) -> dict:
        """Settings that determine node counts."""
        return {
            "use_parity": self.use_parity,
            "structure_prune": self.structure_prune,
            "orbit_p3": self.orbit_p3,
            "find_all": self.find_all,
        }


PRUNE_RULES = ("pairwise", "structure", "weight", "parity")


@dataclass
class SearchCertificate:
    N: int
    outcome: str
    generator: LinearCode | None
    nodes: int
    pruned_by: dict[str, int]
    assumptions: list[str]
    elapsed: float
    version: str = __version__
    config: dict = field(default_factory=dict)
    solutions: int = 0

    @property
    def found(self) -> bool:
        return self.outcome == "found"

    @property
    def family(self) -> SubsetFamily | None:
        return family_from_generator(self.generator) if self.generator else None

    def to_dict(self) -> dict:
        return {
            "N": self.N,
            "outcome": self.outcome,
            "generator": (
                ["".join(str(x) for x in row) for row in self.generator.gen]
                if self.generator
                else None
            ),
            "nodes": self.nodes,
            "pruned_by": {k: self.pruned_by.get(k, 0) for k in PRUNE_RULES},
            "assumptions": list(self.assumptions),
            "elapsed_s": round(self.elapsed, 6),
            "version": self.version,
            "config": dict(self.config),
            "solutions": self.solutions,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def from_dict(cls, data: dict) -> "SearchCertificate":
        try:
            jsonschema.validate(data, CERTIFICATE_SCHEMA)
        except jsonschema.ValidationError as exc:
            raise ValueError(f"certificate does not match the schema: {exc.message}") from None
        gen = data["generator"]
        return cls(
            N=data["N"],
            outcome=data["outcome"],
            generator=LinearCode.from_strings(gen) if gen else None,
            nodes=data["nodes"],
            pruned_by=dict(data["pruned_by"]),
            assumptions=list(data["assumptions"]),
            elapsed=data["elapsed_s"],
            version=data["version"],
            config=dict(data.get("config", {})),
            solutions=data.get("solutions", 0),
        )

    @classmethod
    def from_json(cls, text: str) -> "SearchCertificate":
        return cls.from_dict(json.loads(text))


CERTIFICATE_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "SearchCertificate",
    "type": "object",
    "required": ["N", "outcome", "generator", "nodes", "pruned_by", "assumptions", "elapsed_s", "version"],
    "properties": {
        "N": {"type": "integer", "minimum": 1},
        "outcome": {"enum": ["found", "exhausted"]},
        "generator": {
            "oneOf": [
                {"type": "null"},
                {"type": "array", "items": {"type": "string", "pattern": "^[01]+$"}},
            ]
        },
        "nodes": {"type": "integer", "minimum": 0},
        "pruned_by": {
            "type": "object",
            "required": list(PRUNE_RULES),
            "properties": {k: {"type": "integer", "minimum": 0} for k in PRUNE_RULES},
            "additionalProperties": False,
        },
        "assumptions": {"type": "array", "items": {"type": "string"}},
        "elapsed_s": {"type": "number", "minimum": 0},
        "version": {"type": "string"},
        "config": {"type": "object"},
        "solutions": {"type": "integer", "minimum": 0},
    },
    "additionalProperties": False,
}


def _t_values(N: int) -> list[int]:
    """Admissible |P1 & P2|, largest first so that P2 masks come out ascending."""
    if N % 2 == 0:
        return [N // 2]
    return [(N + 1) // 2, (N - 1) // 2]


def _p1(N: int) -> int:
    return (1 << N) - 1


def _p2(N: int, t: int) -> int:
    return to_mask(range(N - t + 1, 2 * N - t + 1))


def _assumptions(N: int, config: SearchConfig, parity: bool) -> list[str]:
    ts = sorted(_t_values(N))
    out = [
        "column permutation of the right block: P1 = {1..N}",
        "block-wise column permutation fixing P1: P2 = {N-t+1..2N-t} with t = |P1 & P2| in "
        + "{" + ",".join(map(str, ts)) + "}",
    ]
    if parity:
        out.append(
            "parity: for N = 0 (mod 4) every further row meets {3N/2+1..2N-1} in N/4 points; "
            "with N = 4 (mod 8) these N-1 rows carry an odd number of ones there"
        )
        return out
    if config.orbit_p3 and N >= 4:
        out.append(
            "column permutation within the blocks P1-P2, P1&P2, P2-P1, rest: "
            "P3 is the lowest-position representative of its (a,b,c,d) type"
        )
        out.append("rows 4..N+1 in strictly increasing bitmask order (row permutation with identity columns)")
    else:
        out.append("rows 3..N+1 in strictly increasing bitmask order (row permutation with identity columns)")
    return out


@dataclass
class _Tables:
    N: int
    t: int
    P1: int
    P2: int
    cand: np.ndarray
    compat: np.ndarray
    index_of: np.ndarray
    counts: np.ndarray

    @property
    def words(self) -> int:
        return self.compat.shape[1]


def _all_subsets(N: int) -> np.ndarray:
    width = 2 * N - 1
    masks = [sum(1 << i for i in c) for c in itertools.combinations(range(width), N)]
    return np.array(sorted(masks), dtype=np.int64)


def _pack(bool_rows: np.ndarray, words: int) -> np.ndarray:
    m = bool_rows.shape[1]
    pad = np.zeros((bool_rows.shape[0], words * 64), dtype=bool)
    pad[:, :m] = bool_rows
    return np.packbits(pad, axis=1, bitorder="little").view(np.uint64).copy()


def _pair_ok_vec(N: int, a: np.ndarray, b) -> np.ndarray:
    inter = np.bitwise_count(a & b).astype(np.int64)
    return (2 * inter >= N - 1) & (2 * inter <= N + 1)


def _structure_ok_vec(N: int, z: np.ndarray, x: int, o: int) -> np.ndarray:
    ground = (1 << (2 * N - 1)) - 1
    a = np.bitwise_count(z & (x & ~o))
    b = np.bitwise_count(z & (x & o))
    c = np.bitwise_count(z & (o & ~x))
    d = np.bitwise_count(z & (~(x | o) & ground))
    return (a == c) & (b == d) & (np.abs(a.astype(np.int64) - b) <= 1)


def _prepare(N: int, t: int, config: SearchConfig) -> _Tables:
    P1, P2 = _p1(N), _p2(N, t)
    allsubs = _all_subsets(N)
    counts = np.zeros(3, dtype=np.int64)
    ok = _pair_ok_vec(N, allsubs, P1) & _pair_ok_vec(N, allsubs, P2)
    counts[_kernel.PAIRWISE] += int((~ok).sum())
    cand = allsubs[ok]
    if config.structure_prune and N % 2 == 0:
        ok = _structure_ok_vec(N, cand, P1, P2)
        counts[_kernel.STRUCTURE] += int((~ok).sum())
        cand = cand[ok]
    ok = np.ones(len(cand), dtype=bool)
    for size, s in ((0, 0), (1, P1), (1, P2), (2, P1 ^ P2)):
        sw = np.bitwise_count(cand ^ s).astype(np.int64)
        total = size + 1 + sw
        good = (total >= N + 1) & (total <= 2 * N)
        if size + 1 <= N:
            good &= (sw >= size + 1) & (sw <= N + size)
        ok &= good
    counts[_kernel.WEIGHT] += int((~ok).sum())
    cand = np.ascontiguousarray(cand[ok])
    m = len(cand)
    words = max(1, (m + 63) // 64)
    compat = np.zeros((m, words), dtype=np.uint64)
    idx = np.arange(m)
    chunk = max(1, (1 << 23) // max(m, 1))
    for lo in range(0, m, chunk):
        hi = min(m, lo + chunk)
        rows = _pair_ok_vec(N, cand[lo:hi, None], cand[None, :]) & (idx[None, :] > idx[lo:hi, None])
        compat[lo:hi] = _pack(rows, words)
    index_of = np.full(1 << (2 * N - 1), -1, dtype=np.int64)
    index_of[cand] = idx
    return _Tables(N, t, P1, P2, cand, compat, index_of, counts)


def _p3_representatives(tab: _Tables) -> list[int]:
    """Lowest-position member of every (a, b, c, d) type among the candidates."""
    N, P1, P2 = tab.N, tab.P1, tab.P2
    ground = (1 << (2 * N - 1)) - 1
    blocks = [P1 & ~P2, P1 & P2, P2 & ~P1, ground & ~(P1 | P2)]
    types = sorted({_split(int(z), P1, P2, N) for z in tab.cand})
    reps = []
    for split in types:
        rep = 0
        for block, size in zip(blocks, split):
            for e in to_elements(block)[:size]:
                rep |= 1 << (e - 1)
        reps.append(rep)
    return sorted(reps)


@dataclass
class _Unit:
    t: int
    prefix: tuple[int, ...]
    avail0: np.ndarray
    lo: int
    hi: int
    pre_nodes: int = 0
    pre_counts: np.ndarray = field(default_factory=lambda: np.zeros(3, dtype=np.int64))


def _units_for(tab: _Tables, config: SearchConfig, parts: int) -> list[_Unit]:
    N, m, W = tab.N, len(tab.cand), tab.words
    full = _pack(np.ones((1, m), dtype=bool), W)[0] if m else np.zeros(W, dtype=np.uint64)
    bounds = np.linspace(0, m, parts + 1).astype(int)
    ranges = [(int(a), int(b)) for a, b in zip(bounds, bounds[1:]) if b > a] or [(0, 0)]
    units: list[_Unit] = []
    if not (config.orbit_p3 and N >= 4):
        for lo, hi in ranges:
            units.append(_Unit(tab.t, (tab.P1, tab.P2), full, lo, hi))
        return units
    for rep in _p3_representatives(tab):
        prefix = np.array([tab.P1, tab.P2, rep], dtype=np.int64)
        sums = np.zeros(1 << (N + 1), dtype=np.int64)
        for q, x in enumerate(prefix):
            h = 1 << q
            sums[h : 2 * h] = sums[:h] ^ x
        pair_row = _pack(_pair_ok_vec(N, tab.cand, rep)[None, :], W)[0]
        avail0 = np.zeros(W, dtype=np.uint64)
        counts = np.zeros(3, dtype=np.int64)
        _kernel.filter_level(
            N, tab.cand, full, pair_row, prefix, 2, sums,
            config.structure_prune and N % 2 == 0, avail0, counts,
        )
        for i, (lo, hi) in enumerate(ranges):
            units.append(
                _Unit(
                    tab.t, (tab.P1, tab.P2, rep), avail0, lo, hi,
                    pre_nodes=1 if i == 0 else 0,
                    pre_counts=counts if i == 0 else np.zeros(3, dtype=np.int64),
                )
            )
    return units


_WORKER_TABLES: _Tables | None = None


def _init_worker(tab: _Tables) -> None:
    global _WORKER_TABLES
    _WORKER_TABLES = tab


def _run_unit(unit: _Unit, structure: bool, stop_first: bool, max_keep: int, tab: _Tables | None = None):
    tab = tab or _WORKER_TABLES
    nodes, counts, n_found, found = _kernel.explore(
        tab.N, tab.cand, tab.compat, tab.index_of,
        np.array(unit.prefix, dtype=np.int64), unit.avail0, unit.lo, unit.hi,
        structure, stop_first, max_keep,
    )
    return int(nodes), counts.copy(), int(n_found), found[: min(n_found, max_keep)].copy()


def _explore_all(N: int, config: SearchConfig, stop_first: bool):
    """Run every unit in canonical order; yields (nodes, counts, families)."""
    structure = config.structure_prune and N % 2 == 0
    max_keep = config.max_solutions if not stop_first else 1
    parts = 1 if config.threads == 1 else 4 * config.threads
    nodes = 0
    counts = np.zeros(3, dtype=np.int64)
    families: list[tuple[int, ...]] = []
    n_solutions = 0
    for t in _t_values(N):
        tab = _prepare(N, t, config)
        counts += tab.counts
        units = _units_for(tab, config, parts)
        if config.threads == 1 or len(units) == 1:
            results = (_run_unit(u, structure, stop_first, max_keep, tab) for u in units)
            pool = None
        else:
            pool = ProcessPoolExecutor(config.threads, initializer=_init_worker, initargs=(tab,))
            results = pool.map(_run_unit, units, *zip(*[(structure, stop_first, max_keep)] * len(units)))
        try:
            for unit, (u_nodes, u_counts, n_found, found) in zip(units, results):
                nodes += unit.pre_nodes + u_nodes
                counts += unit.pre_counts + u_counts
                n_solutions += n_found
                families.extend(tuple(int(x) for x in row) for row in found)
                if stop_first and n_found:
                    return nodes, counts, n_solutions, families
        finally:
            if pool is not None:
                pool.shutdown(cancel_futures=True)
    return nodes, counts, n_solutions, families


def search(N: int, config: SearchConfig | None = None) -> SearchCertificate:
    """Decide whether a binary minimal [3N, N+1] code exists.

    Returns a certificate holding either a generator matrix or the counters of
    the exhausted tree together with every symmetry reduction it relied on.
    """
    config = config or SearchConfig()
    if not isinstance(N, (int, np.integer)) or N < 1:
        raise Unsupported(f"N must be a positive integer, got {N!r}")
    if N > config.max_N:
        raise Unsupported(f"N = {N} exceeds max_N = {config.max_N}")
    start = time.perf_counter()
    pruned = dict.fromkeys(PRUNE_RULES, 0)

    def finish(outcome, gen, nodes, assumptions, solutions=0):
        return SearchCertificate(
            N=N, outcome=outcome, generator=gen, nodes=nodes, pruned_by=pruned,
            assumptions=assumptions, elapsed=time.perf_counter() - start,
            config=config.replay_key(), solutions=solutions,
        )

    if N == 1:
        fam = SubsetFamily(1, (1, 1))
        return finish("found", assemble_generator(fam), 2, ["N = 1: the only 1-subset of {1} is used twice"], 1)
    if config.use_parity and parity_obstruction(N):
        pruned["parity"] = 1
        return finish("exhausted", None, 0, _assumptions(N, config, parity=True))

    stop_first = not config.find_all
    nodes, counts, n_solutions, families = _explore_all(N, config, stop_first)
    for rule, c in zip(("pairwise", "structure", "weight"), counts):
        pruned[rule] = int(c)
    assumptions = _assumptions(N, config, parity=False)
    if not families:
        return finish("exhausted", None, nodes, assumptions)
    fam = SubsetFamily(N, families[0])
    gen = assemble_generator(fam)
    if not is_minimal_code(gen)[0]:
        raise MinimalCodesError(f"search produced a non-minimal code for N = {N}:\n{gen}")
    return finish("found", gen, nodes, assumptions, n_solutions)


def enumerate_families(N: int, config: SearchConfig | None = None) -> list[SubsetFamily]:
    """All complete families reached by the pruned search, in discovery order."""
    config = config or SearchConfig()
    if N == 1:
        return [SubsetFamily(1, (1, 1))]
    if config.use_parity and parity_obstruction(N):
        return []
    _, _, n, families = _explore_all(N, config, stop_first=False)
    if n > len(families):
        raise MinimalCodesError(f"{n} solutions exceed max_solutions = {config.max_solutions}")
    return [SubsetFamily(N, f) for f in families]


def verify_certificate(cert: SearchCertificate, raise_on_failure: bool = False) -> bool:
    """Re-check a certificate independently of how it was produced.

    Found certificates are re-verified with the code-level checks; exhausted
    ones are replayed and their counters compared.
    """
    try:
        _verify(cert)
    except VerificationFailed:
        if raise_on_failure:
            raise
        return False
    return True


def _verify(cert: SearchCertificate) -> None:
    N = cert.N
    if cert.outcome == "found":
        gen = cert.generator
        if gen is None:
            raise VerificationFailed("generator", "found certificate without a generator")
        if (gen.n, gen.k) != (3 * N, N + 1):
            raise VerificationFailed("parameters", f"[{gen.n},{gen.k}] != [{3 * N},{N + 1}]")
        _check_standard_form(gen, N)
        minimal, witness = is_minimal_code(gen)
        if not minimal:
            raise VerificationFailed("minimality", f"{witness[0]} below {witness[1]}")
        d, w_max, _ = weight_profile(gen)
        if d != N + 1:
            raise VerificationFailed("minimum distance", f"d = {d}, expected {N + 1}")
        if w_max > 2 * N:
            raise VerificationFailed("maximum weight", f"{w_max} > {2 * N}")
        blocking, hyperplane = is_strong_blocking_set(projective_points(gen))
        if not blocking:
            raise VerificationFailed("strong blocking set", f"hyperplane {hyperplane} fails")
        return
    if cert.outcome != "exhausted":
        raise VerificationFailed("outcome", repr(cert.outcome))
    keys = {"use_parity", "structure_prune", "orbit_p3", "find_all"}
    config = SearchConfig(**{k: v for k, v in cert.config.items() if k in keys})
    if N > config.max_N:
        raise VerificationFailed("replay", f"N = {N} is beyond the replayable range")
    replay = search(N, config)
    if replay.outcome != "exhausted":
        raise VerificationFailed("replay", "replay found a code")
    if replay.nodes != cert.nodes:
        raise VerificationFailed("replay", f"nodes {replay.nodes} != {cert.nodes}")
    if replay.to_dict()["pruned_by"] != cert.to_dict()["pruned_by"]:
        raise VerificationFailed("replay", f"counters {replay.pruned_by} != {cert.pruned_by}")
    if replay.assumptions != cert.assumptions:
        raise VerificationFailed("replay", "canonicalization assumptions differ")


def _check_standard_form(gen: LinearCode, N: int) -> None:
    """The shape every found generator has: [I | P], N-subset rows, even columns."""
    try:
        fam = family_from_generator(gen)
    except ValueError as exc:
        raise VerificationFailed("standard form", str(exc)) from None
    if fam.symmetric_difference():
        raise VerificationFailed("standard form", "a column of P has odd weight")
    if N > 1 and fam.rows[0] != _p1(N):
        raise VerificationFailed("standard form", "first row of P is not {1..N}")


def certificate_matrix_text(cert: SearchCertificate) -> str:
    from .gfcodes import format_matrix

    if cert.generator is None:
        raise ValueError("certificate has no generator")
    return format_matrix(cert.generator, comment=f"binary minimal [{3 * cert.N},{cert.N + 1}] code")


__all__ = [
    "AbcdSplit",
    "CERTIFICATE_SCHEMA",
    "SearchCertificate",
    "SearchConfig",
    "SubsetFamily",
    "abcd_split",
    "assemble_generator",
    "enumerate_families",
    "family_window_check",
    "parity_obstruction",
    "search",
    "structure_check",
    "verify_certificate",
    "weight_window_check",
]
