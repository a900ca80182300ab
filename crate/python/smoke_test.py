"""Smoke test for the clusterlab Python extension.

Install with `pip install --no-build-isolation ./crates/clusterlab-py`, then run
`python python/smoke_test.py` or `pytest python/`.
"""

import json

import clusterlab


def test_a11_period_five():
    s = clusterlab.Seed([[0, 1], [-1, 0]])
    t = s.mutate_word([1, 2, 1, 2, 1])
    assert t.word == [1, 2, 1, 2, 1]
    assert sorted(t.cluster) == sorted(s.cluster)
    assert t.cluster != s.cluster
    assert s.exchange_graph() == (5, False)


def test_laurent_expansion_strings():
    s = clusterlab.Seed([[0, 1], [-1, 0]]).mutate(1)
    assert s.cluster[0] == "1 * x1^-1*x2^1 + 1 * x1^-1*x2^0"
    assert s.denominator_vector(1) == [1, 0]
    assert s.is_positive(1)


def test_json_round_trip():
    s = clusterlab.Seed([[0, 1], [-2, 0], [1, 1]]).mutate_word([1, 2, 1])
    doc = json.loads(s.to_json())
    assert doc["m"] == 3 and doc["n"] == 2
    assert clusterlab.Seed.from_json(s.to_json()) == s


def test_sequences():
    assert clusterlab.somos4(12) == [1, 1, 1, 1, 2, 3, 7, 23, 59, 314, 1529, 8209]
    assert clusterlab.somos5(10) == [1, 1, 1, 1, 1, 2, 3, 5, 11, 37]
    for _, (a, b, c) in clusterlab.markov_triples(3):
        assert a * a + b * b + c * c == 3 * a * b * c


def test_matrices_and_positivity():
    markov = [[0, 2, -2], [-2, 0, 2], [2, -2, 0]]
    assert clusterlab.mutate_matrix(markov, 1) == [[-x for x in row] for row in markov]
    assert clusterlab.mutation_class_size([[0, 1, 0], [-1, 0, 1], [0, -1, 0]]) == (4, False)
    assert clusterlab.is_totally_positive([["1", "1", "1"], ["1", "2", "4"], ["1", "3", "9"]])
    assert not clusterlab.all_minors_are_positive([["2", "1"], ["1", "1/3"]])
    assert clusterlab.Seed.plucker("6; 1-3, 1-4, 1-5").n == 3


def test_errors():
    s = clusterlab.Seed([[0, 1], [-1, 0]])
    for bad in (lambda: s.mutate(3), lambda: s.mutate(0)):
        try:
            bad()
        except IndexError:
            pass
        else:
            raise AssertionError("expected IndexError")
    try:
        clusterlab.Seed([[0, 1], [1, 0]])
    except ValueError:
        pass
    else:
        raise AssertionError("expected ValueError")


if __name__ == "__main__":
    for name, f in list(globals().items()):
        if name.startswith("test_"):
            f()
            print("ok", name)
