import math
import os

import pytest

import scenred

FIXTURES = os.path.join(os.path.dirname(__file__), "..", "fixtures")


def test_wasserstein_midpoint():
    p = scenred.Distribution.uniform([[0.0], [2.0]])
    q = scenred.Distribution([[1.0]], [1.0])
    value, plan = scenred.wasserstein(p, q, l=2)
    assert value == pytest.approx(1.0)
    assert plan == [[0.5], [0.5]]


def test_three_atoms_onto_two():
    p = scenred.Distribution.uniform([[0.0], [1.0], [3.0]])
    value, reduced = scenred.dist_to_support(p, [[0.0], [3.0]], l=1)
    assert value == pytest.approx(1 / 3)
    assert reduced.weights == pytest.approx([2 / 3, 1 / 3])


def test_exact_solvers_on_tight_instances():
    k1 = scenred.gen_kappa_tight(1, 4, 1)
    assert scenred.discrete_exact(k1, 1, l=1, norm="1").value == pytest.approx(1.5)
    assert scenred.continuous_exact(k1, 1, l=1, norm="1").value == pytest.approx(1.0)

    wc = scenred.gen_worst_case(4, 4)
    c = scenred.continuous_exact(wc, 2, l=2)
    assert c.value == pytest.approx(math.sqrt(2 / 3))
    assert len(c.cells) == 2


def test_heuristics():
    p = scenred.Distribution.uniform([[0.0], [0.1], [10.0], [10.1]])
    km = scenred.k_means(p, 2, l=2, init=[[0.0], [10.0]])
    assert km.value == pytest.approx(0.05)
    g = scenred.dupacova_greedy(p, 2, l=1)
    loc = scenred.local_search(p, 2, l=1, init=g.selected)
    assert loc.value <= g.value
    polished = scenred.continuous_polish(g, p, l=2)
    assert polished.value <= scenred.dupacova_greedy(p, 2, l=2).value + 1e-12


def test_bounds_and_generators():
    b = scenred.limit_bounds(100, 10, 2)
    assert b.c_upper == pytest.approx(0.9534626, abs=1e-7)
    assert scenred.a_priori_m(scenred.gen_worst_case(100, 100), 0.5, 2) == 76
    adv = scenred.gen_adversarial("dupacova-adv", 1, 1e-3, 2)
    assert len(adv) == 5
    assert adv.validate(True, True) == []


def test_errors_map_to_exceptions():
    p = scenred.Distribution([[0.0], [1.0]], [0.5, 0.6])
    with pytest.raises(scenred.InvalidArgument):
        scenred.dupacova_greedy(p, 1)
    big = scenred.gen_adversarial("dupacova-adv", 10, 1e-3, 2)
    with pytest.raises(scenred.BudgetExceeded):
        scenred.discrete_exact(big, 20, budget=10)
    assert issubclass(scenred.BudgetExceeded, scenred.ScenredError)


def test_milp_export_matches_fixture():
    k1 = scenred.gen_kappa_tight(1, 4, 1)
    lp = scenred.export_milp(k1, 1, "discrete", l=1, norm="1")
    with open(os.path.join(FIXTURES, "kappa1_4_1_discrete.lp")) as f:
        assert lp == f.read()


def test_file_round_trip(tmp_path):
    p = scenred.Distribution([[0.1, -3.0], [1e-300, 2.5]], [0.3, 0.7])
    for name in ("d.json", "d.csv"):
        path = str(tmp_path / name)
        scenred.write_distribution(path, p)
        q = scenred.read_distribution(path)
        assert q.points == p.points
        assert q.weights == p.weights


def test_quantize(tmp_path):
    out = str(tmp_path / "q.ppm")
    palette, report = scenred.quantize(os.path.join(FIXTURES, "sample.ppm"), 3, "loc1", 64, out)
    assert len(palette) == 3
    assert report["reference"] == "exact"
    gaps = {e["algorithm"]: e["gap"] for e in report["entries"]}
    assert gaps["loc1"] <= gaps["dpcv"]
    assert os.path.getsize(out) > 64 * 64 * 3


def test_experiment_is_deterministic():
    a = scenred.normal_experiment(20, [5], [3, 6], trials=2, seed=4, restarts=2)
    b = scenred.normal_experiment(20, [5], [3, 6], trials=2, seed=4, restarts=2)
    assert a == b
    assert a.splitlines()[0] == "d,m,mean_ratio,std_ratio,trials"
