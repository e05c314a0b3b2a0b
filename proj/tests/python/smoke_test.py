"""Smoke tests for the python bindings: a thin pass over each operation
family. The exhaustive suites live in the C++ tests."""

import permstat as ps


def test_permutation_ops():
    assert ps.standardize([2, 9, 5, 4, 6]) == [1, 5, 3, 2, 4]
    sh = ps.shuffles([1, 3], [5, 2, 4])
    assert len(sh) == 10
    assert [1, 3, 5, 2, 4] in sh
    assert ps.window([2, 9, 5, 4, 6], 2, 4) == [9, 5, 4]
    assert ps.complement([2, 9, 5, 4, 6]) == [9, 2, 5, 6, 4]
    assert ps.parse_permutation("29546") == [2, 9, 5, 4, 6]


def test_evaluators():
    p = [2, 9, 5, 4, 6]
    assert ps.descent_set(p) == [2, 3]
    assert ps.major_index(p) == 5
    assert ps.peak_set(p) == [2]
    assert ps.valley_set(p) == [4]
    assert ps.inversion_count(p) == 4


def test_tables_and_checks():
    des = ps.StatisticTable.builtin("Des", 4)
    assert des.class_of([5, 2, 4]) == des.class_of([3, 1, 2])
    assert ps.refines(ps.StatisticTable.builtin("dis", 4), des, 4)[0]
    verdict = ps.check_shuffle_compatible(ps.StatisticTable.builtin("inv", 3), "strong", 3)
    assert not verdict["holds"]
    assert verdict["witness"]["multisets"] == [[0, 1, 2], [0, 1, 1]]
    assert ps.check_substring_compatible(des)["holds"]
    text = des.to_json()
    assert ps.StatisticTable.from_json(text) == des


def test_algebra():
    des = ps.StatisticTable.builtin("Des", 3)
    alg = ps.StatisticAlgebra(des, "strong")
    one = des.class_of([1])
    two = des.class_of([1, 2])
    assert alg.product(two, one) == {(3, 0): 1, (3, 1): 1, (3, 2): 1}
    assert alg.antipode(two) == {(2, 1): 1}
    assert alg.check_bialgebra(3)["holds"]
    assert ps.quotient_check(des, ps.StatisticTable.builtin("Pk", 3), 3)["holds"]


def test_qsym():
    assert ps.comp_of([2, 9, 5, 4, 6]) == [2, 1, 2]
    f = ps.fundamental_poly([2], 2)
    assert f == {(2, 0): 1, (0, 2): 1, (1, 1): 1}
    assert ps.verify_des_isomorphism(3)["holds"]


def test_search():
    assert ps.class_count_bound(4) == 2
    assert ps.class_size_divisor(5) == 24
    base = ps.StatisticTable.builtin("triv", 2)
    solutions = ps.enumerate_level(base, 3)
    assert len(solutions) == 5
    partitions = [p for p, _sizes in solutions]
    assert [0, 1, 0, 1, 0, 0] in partitions  # peak-set classes
    table = ps.assemble(base, 3, [0, 1, 0, 1, 0, 0], "Pk3")
    assert ps.viability_check(table, [(2, 2)])["holds"]


def test_errors():
    try:
        ps.shuffles([1, 2], [2, 3])
    except ps.PermstatError:
        pass
    else:
        raise AssertionError("expected PermstatError for overlapping letters")


if __name__ == "__main__":
    for name, fn in sorted(globals().items()):
        if name.startswith("test_") and callable(fn):
            fn()
            print(f"ok {name}")
    print("smoke tests passed")
