import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from minimal_codes.errors import (
    AuditMismatch,
    DegenerateColumn,
    DimensionTooLarge,
    MatrixFormatError,
    RankDeficient,
    UnsupportedField,
)
from minimal_codes.gfcodes import (
    Codeword,
    LinearCode,
    ProjectivePointSet,
    all_projective_points,
    ashikhmin_barg_check,
    enumerate_codewords,
    format_matrix,
    gf2_rank,
    is_minimal_code,
    is_strong_blocking_set,
    minimal_iff_strong_blocking_audit,
    parse_matrix,
    projective_points,
    rank_mod_q,
    read_matrix,
    standard_form,
    weight_profile,
    write_matrix,
)

from oracles import (
    brute_minimal,
    brute_strong_blocking,
    brute_weights,
    gf_rank,
    random_projective_code,
    span,
)

SIMPLEX = LinearCode.from_strings(["1001011", "0101101", "0010111"])
TRIANGLE = LinearCode.from_strings(["101", "011"])
NOT_MINIMAL = LinearCode.from_strings(["110", "010"])
PG22_MINUS_POINT = LinearCode.from_strings(["100110", "010011", "001101"])


def _words(code):
    return {c.coords for c in enumerate_codewords(code)}


class TestLinearCode:
    def test_parameters(self):
        assert (SIMPLEX.n, SIMPLEX.k, SIMPLEX.q) == (7, 3, 2)
        assert SIMPLEX.d == 4

    def test_rank_deficient(self):
        with pytest.raises(RankDeficient):
            LinearCode.from_strings(["110", "110"])

    def test_k_exceeds_n(self):
        with pytest.raises(RankDeficient):
            LinearCode.from_strings(["1", "1"])

    def test_unsupported_field(self):
        with pytest.raises(UnsupportedField):
            LinearCode(((1, 0), (0, 1)), q=5)

    def test_entry_out_of_range(self):
        with pytest.raises(ValueError):
            LinearCode(((2, 0),), q=2)

    def test_ragged(self):
        with pytest.raises(ValueError):
            LinearCode(((1, 0), (0,)), q=2)

    def test_nondegenerate(self):
        assert SIMPLEX.is_nondegenerate()
        assert not NOT_MINIMAL.is_nondegenerate()


class TestRank:
    @settings(max_examples=60, deadline=None)
    @given(st.lists(st.lists(st.integers(0, 2), min_size=5, max_size=5), min_size=1, max_size=5))
    def test_rank_mod_3_matches_oracle(self, rows):
        assert rank_mod_q(rows, 3) == gf_rank(rows, 3)

    @settings(max_examples=60, deadline=None)
    @given(st.lists(st.integers(0, 255), min_size=1, max_size=8))
    def test_gf2_rank_matches_oracle(self, masks):
        rows = [[(m >> i) & 1 for i in range(8)] for m in masks]
        assert gf2_rank(list(masks)) == gf_rank(rows, 2)


class TestEnumerate:
    def test_triangle(self):
        assert _words(TRIANGLE) == {(1, 0, 1), (0, 1, 1), (1, 1, 0)}

    def test_repetition(self):
        assert _words(LinearCode.from_strings(["11"])) == {(1, 1)}

    def test_simplex(self):
        words = list(enumerate_codewords(SIMPLEX))
        assert len(words) == 7
        assert {c.weight for c in words} == {4}

    def test_lexicographic_message_order(self):
        words = [c.coords for c in enumerate_codewords(TRIANGLE)]
        # messages 01, 10, 11
        assert words == [(0, 1, 1), (1, 0, 1), (1, 1, 0)]

    def test_support_and_weight(self):
        for c in enumerate_codewords(SIMPLEX):
            assert c.support == frozenset(i for i, x in enumerate(c.coords) if x)
            assert c.weight == len(c.support)

    def test_ternary(self):
        code = LinearCode(((1, 0, 1), (0, 1, 2)), q=3)
        words = _words(code)
        assert len(words) == 8
        assert words == {c for c in span(code.gen, 3) if any(c)}

    def test_guard(self):
        big = LinearCode(tuple(tuple(1 if i == j else 0 for i in range(27)) for j in range(27)))
        with pytest.raises(DimensionTooLarge):
            next(enumerate_codewords(big))


class TestWeightProfile:
    def test_simplex(self):
        assert weight_profile(SIMPLEX) == (4, 4, {4: 7})

    def test_triangle(self):
        d, w, dist = weight_profile(TRIANGLE)
        assert (d, w) == (2, 2)
        assert dist == {2: 3}

    @pytest.mark.parametrize("q", [2, 3])
    def test_random_against_oracle(self, q):
        rng = random.Random(7 + q)
        for _ in range(25):
            k = rng.randint(1, 4)
            n = rng.randint(k, 9)
            gen = [tuple(rng.randrange(q) for _ in range(n)) for _ in range(k)]
            if gf_rank(gen, q) < k:
                continue
            code = LinearCode(tuple(gen), q)
            ws = brute_weights(gen, q)
            d, w, dist = weight_profile(code)
            assert (d, w) == (ws[0], ws[-1])
            assert sum(dist.values()) == q**k - 1

    def test_wide_code_uses_object_path(self):
        gen = [tuple(1 if j % 3 == i else 0 for j in range(70)) for i in range(3)]
        code = LinearCode(tuple(gen))
        assert weight_profile(code)[:2] == (23, 70)
        assert is_minimal_code(code)[0] is False


class TestMinimality:
    def test_triangle(self):
        assert is_minimal_code(TRIANGLE) == (True, None)

    def test_witness(self):
        ok, (small, big) = is_minimal_code(NOT_MINIMAL)
        assert not ok
        assert small.coords == (0, 1, 0)
        assert big.coords == (1, 1, 0)
        assert small.support < big.support

    def test_simplex(self):
        assert is_minimal_code(SIMPLEX)[0]

    @pytest.mark.parametrize("q", [2, 3])
    def test_random_against_oracle(self, q):
        rng = random.Random(100 + q)
        for _ in range(40):
            k = rng.randint(1, 4)
            n = rng.randint(k, 8)
            gen = [tuple(rng.randrange(q) for _ in range(n)) for _ in range(k)]
            if gf_rank(gen, q) < k:
                continue
            ok, witness = is_minimal_code(LinearCode(tuple(gen), q))
            assert ok == brute_minimal(gen, q)
            if witness:
                assert witness[0].support < witness[1].support

    def test_guard(self):
        big = LinearCode(tuple(tuple(1 if i == j else 0 for i in range(21)) for j in range(21)))
        with pytest.raises(DimensionTooLarge):
            is_minimal_code(big)


class TestStandardForm:
    def test_already_systematic(self):
        code, perm = standard_form(PG22_MINUS_POINT)
        assert perm == list(range(6))
        assert code == PG22_MINUS_POINT

    def test_swapped_identity(self):
        # identity columns sit at positions 3 and 1 (1-based)
        code = LinearCode.from_strings(["011", "110"])
        sf, perm = standard_form(code)
        assert perm == [2, 0, 1]
        assert sf.gen == ((1, 0, 1), (0, 1, 1))
        src = [tuple(row[j] for j in perm) for row in code.gen]
        assert span(src, 2) == span(sf.gen, 2)

    def test_pivot_hint(self):
        sf, perm = standard_form(SIMPLEX, pivot_hint=[6, 5, 4])
        assert perm[:3] == [6, 5, 4]
        assert [row[:3] for row in sf.gen] == [(1, 0, 0), (0, 1, 0), (0, 0, 1)]

    @pytest.mark.parametrize("q", [2, 3])
    def test_weight_distribution_preserved(self, q):
        rng = random.Random(q)
        for _ in range(30):
            k = rng.randint(1, 4)
            n = rng.randint(k, 8)
            gen = [tuple(rng.randrange(q) for _ in range(n)) for _ in range(k)]
            if gf_rank(gen, q) < k:
                continue
            code = LinearCode(tuple(gen), q)
            sf, perm = standard_form(code)
            assert sorted(perm) == list(range(n))
            assert weight_profile(sf)[2] == weight_profile(code)[2]
            permuted = [tuple(row[j] for j in perm) for row in gen]
            assert span(permuted, q) == span(sf.gen, q)


class TestProjective:
    def test_triangle_points(self):
        pts = projective_points(TRIANGLE)
        assert pts.points == [(0, 1), (1, 0), (1, 1)]
        assert pts.is_projective

    def test_multiplicity(self):
        pts = projective_points(LinearCode.from_strings(["1101", "0110"]))
        assert pts.multiplicity[(1, 1)] == 1
        assert pts.multiplicity[(1, 0)] == 2
        assert not pts.is_projective
        assert len(pts) == 4

    def test_simplex_is_whole_plane(self):
        assert projective_points(SIMPLEX).points == all_projective_points(3, 2)

    def test_zero_column(self):
        with pytest.raises(DegenerateColumn):
            projective_points(NOT_MINIMAL)

    def test_ternary_normalization(self):
        pts = ProjectivePointSet.from_points([(2, 1), (1, 2), (0, 2)], 2, 3)
        assert pts.multiplicity == {(1, 2): 2, (0, 1): 1}

    def test_all_points_count(self):
        assert len(all_projective_points(4, 2)) == 15
        assert len(all_projective_points(3, 3)) == 13


class TestStrongBlocking:
    def test_whole_plane(self):
        assert is_strong_blocking_set(projective_points(SIMPLEX)) == (True, None)

    def test_plane_minus_point(self):
        pts = [p for p in all_projective_points(3, 2) if p != (1, 1, 1)]
        assert is_strong_blocking_set(ProjectivePointSet.from_points(pts, 3, 2))[0]

    def test_single_line(self):
        line = [(1, 0, 0), (0, 1, 0), (1, 1, 0)]
        ok, u = is_strong_blocking_set(ProjectivePointSet.from_points(line, 3, 2))
        assert not ok
        inside = [p for p in line if sum(a * b for a, b in zip(u, p)) % 2 == 0]
        assert gf_rank(inside, 2) < 2 if inside else True

    @pytest.mark.parametrize("q,k", [(2, 3), (2, 4), (3, 3)])
    def test_random_subsets_against_oracle(self, q, k):
        rng = random.Random(q * 10 + k)
        pts = all_projective_points(k, q)
        for _ in range(30):
            sub = rng.sample(pts, rng.randint(1, len(pts)))
            got = is_strong_blocking_set(ProjectivePointSet.from_points(sub, k, q))[0]
            assert got == brute_strong_blocking(sub, k, q)


class TestAudit:
    def test_pg22_minus_point(self):
        assert minimal_iff_strong_blocking_audit(PG22_MINUS_POINT)
        assert is_minimal_code(PG22_MINUS_POINT)[0]

    def test_both_false(self):
        code = LinearCode.from_strings(["1000", "0111"])
        assert not is_minimal_code(code)[0]
        assert not is_strong_blocking_set(projective_points(code))[0]
        assert minimal_iff_strong_blocking_audit(code)

    @pytest.mark.parametrize("q", [2, 3])
    def test_random(self, q):
        rng = random.Random(q)
        for _ in range(50):
            k = rng.randint(2, 4 if q == 2 else 3)
            limit = min(12, len(all_projective_points(k, q)))
            gen = random_projective_code(rng, q, k, rng.randint(k, limit))
            assert minimal_iff_strong_blocking_audit(LinearCode(tuple(gen), q))

    def test_mismatch_raises(self, monkeypatch):
        import minimal_codes.gfcodes as g

        monkeypatch.setattr(g, "is_strong_blocking_set", lambda pts: (False, None))
        with pytest.raises(AuditMismatch):
            g.minimal_iff_strong_blocking_audit(SIMPLEX)
        assert g.minimal_iff_strong_blocking_audit(SIMPLEX, strict=False) is False


class TestAshikhminBarg:
    def test_simplex(self):
        assert ashikhmin_barg_check(SIMPLEX)

    def test_no_conclusion(self):
        code = LinearCode.from_strings(["11000", "11111"])
        assert weight_profile(code)[:2] == (2, 5)
        assert not ashikhmin_barg_check(code)

    def test_sufficiency_one_way(self):
        rng = random.Random(5)
        for _ in range(60):
            k = rng.randint(2, 4)
            gen = random_projective_code(rng, 2, k, rng.randint(k, min(12, 2**k - 1)))
            code = LinearCode(tuple(gen))
            if ashikhmin_barg_check(code):
                assert is_minimal_code(code)[0]


class TestMatrixFormat:
    def test_roundtrip(self, tmp_path):
        path = tmp_path / "g.txt"
        write_matrix(SIMPLEX, path, comment="simplex\nsecond line")
        text = path.read_text()
        assert text.startswith("# simplex\n# second line\n2 3 7\n")
        assert all(line == line.rstrip() for line in text.splitlines())
        assert read_matrix(path) == SIMPLEX

    def test_crlf_and_spaces(self):
        text = "# c\r\n2 2 3\r\n1 0 1\r\n0 1 1\r\n"
        assert parse_matrix(text) == TRIANGLE

    def test_ternary(self):
        code = parse_matrix("3 2 3\n102\n011\n")
        assert code.q == 3
        assert format_matrix(code) == "3 2 3\n102\n011\n"

    @pytest.mark.parametrize(
        "text",
        [
            "",
            "2 2\n101\n011\n",
            "a b c\n",
            "2 2 3\n101\n",
            "2 2 3\n1010\n011\n",
            "2 2 3\n102\n011\n",
            "5 1 2\n11\n",
            "2 2 3\n110\n110\n",
        ],
    )
    def test_malformed(self, text):
        with pytest.raises(MatrixFormatError):
            parse_matrix(text)

    @settings(max_examples=40, deadline=None)
    @given(st.integers(1, 4), st.integers(0, 4), st.randoms(use_true_random=False))
    def test_roundtrip_property(self, k, extra, rnd):
        gen = [tuple(1 if i == j else 0 for i in range(k)) + tuple(rnd.randrange(2) for _ in range(extra)) for j in range(k)]
        code = LinearCode(tuple(gen))
        assert parse_matrix(format_matrix(code, comment="x")) == code


def test_codeword_from_coords():
    c = Codeword.from_coords([0, 2, 1, 0])
    assert c.weight == 2
    assert c.support == frozenset({1, 2})
    assert str(c) == "0210"


def test_invariants_on_all_small_minimal_codes():
    """Weight bound n-k+1 and d >= (q-1)(k-1)+1 for every minimal code found."""
    pts = all_projective_points(3, 2)
    for size in range(3, 8):
        for sub in itertools.combinations(pts, size):
            gen = tuple(tuple(p[i] for p in sub) for i in range(3))
            if gf_rank(gen, 2) < 3:
                continue
            code = LinearCode(gen)
            if is_minimal_code(code)[0]:
                d, w, _ = weight_profile(code)
                assert w <= code.n - code.k + 1
                assert d >= code.k
                assert code.n >= 3 * (code.k - 1)
