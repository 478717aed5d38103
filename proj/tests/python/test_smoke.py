import itertools

import pytest

import lexcover


def brute_cover(perm):
    n = len(perm)
    m = lexcover.num_positions(n)
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    index = {p: k for k, p in enumerate(pairs)}
    ids = []
    for g in range(1 << m):
        bits = [(g >> k) & 1 for k in range(m)]
        image = [bits[index[tuple(sorted((perm[i] - 1, perm[j] - 1)))]] for i, j in pairs]
        if image < bits:
            ids.append(g)
    return ids


def test_canonical_order_4():
    assert lexcover.canonical_ids(4) == [0, 12, 30, 32, 44, 48, 52, 56, 60, 62, 63]
    assert [lexcover.count_canonical(n) for n in range(1, 7)] == [1, 2, 4, 11, 34, 156]


def test_cover_of_example_permutation():
    assert lexcover.patterns([1, 2, 4, 3]) == ["x1,1,0,x4,x5,x6", "x1,x2,x2,1,0,x6"]
    assert lexcover.cover_ids([1, 2, 4, 3]) == brute_cover([1, 2, 4, 3])
    assert len(lexcover.cover_ids([1, 2, 4, 3])) == 24


def test_cover_matches_brute_force_for_all_of_s4():
    for perm in itertools.permutations(range(1, 5)):
        assert lexcover.cover_ids(list(perm)) == brute_cover(list(perm))


def test_dominance_at_order_4():
    assert lexcover.get_dominated([[3, 2, 4, 1]], [[3, 2, 1, 4]]) == [[3, 2, 1, 4]]
    assert lexcover.get_dominated([[3, 2, 1, 4]], [[3, 2, 4, 1]]) == []


def test_matrix_and_optimum():
    rows = lexcover.nontrivial_permutations(4)
    m = lexcover.build_matrix(rows)
    assert (m["rows"], m["cols"]) == (23, 53)
    assert min(m["row_weights"]) == 24 and max(m["row_weights"]) == 30
    sol = lexcover.solve_matrix(rows)
    assert len(sol["chosen"]) == 3
    assert "min:" in lexcover.export_opb(lexcover.nontrivial_permutations(3))


def test_pipeline_order_5():
    report, spec = lexcover.solve(5)
    assert report["opt"] == 6
    assert report["solutions"] == report["expected"] == 34
    assert lexcover.verify_break(5, spec["permutations"]) == 34
    assert "timings" not in report


def test_backbones_order_6():
    report, _ = lexcover.solve(6)
    assert report["bb2"] == 13 and report["rows"] == 0 and report["opt"] == 13


def test_transposition_ratio():
    t = lexcover.transpositions(5)
    assert len(t) == 10
    covered = set()
    for perm in t:
        covered.update(brute_cover(perm))
    kept = (1 << 10) - len(covered)
    assert lexcover.verify_break(5, t) == kept
    assert lexcover.redundancy_ratio(5, t) == pytest.approx(kept / 34)


def test_usage_errors():
    with pytest.raises(ValueError):
        lexcover.count_canonical(9)
    with pytest.raises(lexcover.UsageError):
        lexcover.verify_break(4, [[1, 2, 3]])
