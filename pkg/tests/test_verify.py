import pytest

from fcmono.verify import CHECKS, check_names, run_suite


def test_registry_names_unique():
    names = check_names()
    assert len(names) == len(set(names)) == len(CHECKS)


def test_exact_m2_all_pass():
    rep = run_suite(2, "exact")
    assert rep.ok
    assert {r.status for r in rep.results} == {"exact-pass"}
    assert [r.name for r in rep.results] == check_names()


def test_exact_m1_braid_not_applicable():
    rep = run_suite(1, "exact")
    status = {r.name: r.status for r in rep.results}
    assert status.pop("braid") == "not-applicable"
    assert set(status.values()) == {"exact-pass"}


def test_numeric_m4_all_pass():
    rep = run_suite(4, "numeric", seed=11, points=2)
    assert rep.ok
    assert all(r.status == "numeric-pass" and r.residual < 1e-9 for r in rep.results)


@pytest.mark.parametrize("backing,m", [("exact", 2), ("numeric", 3)])
def test_mutation_is_caught(backing, m):
    rep = run_suite(m, backing, seed=2, mutation="flip-v")
    assert not rep.ok
    failed = {r.name: r for r in rep.results if r.status == "fail"}
    assert "invariance-tilde" in failed and "conjugation" in failed
    assert all(r.witness for r in failed.values())


def test_determinism():
    a = run_suite(3, "numeric", seed=5, points=2).to_json()
    b = run_suite(3, "numeric", seed=5, points=2).to_json()
    assert a == b
    c = run_suite(3, "numeric", seed=6, points=2).to_json()
    assert c["points"] != a["points"]


def test_workers_give_same_report():
    a = run_suite(2, "numeric", seed=1, points=2).to_json()
    b = run_suite(2, "numeric", seed=1, points=2, workers=2).to_json()
    assert a == b


def test_limits():
    with pytest.raises(ValueError):
        run_suite(4, "exact")
    with pytest.raises(ValueError):
        run_suite(6, "numeric")
    with pytest.raises(ValueError):
        run_suite(2, "exact", checks=["nope"])


def test_timings_only_on_request():
    rep = run_suite(1, "exact", checks=["det-Pm"])
    assert "elapsed" not in rep.to_json()["results"][0]
    assert "elapsed" in rep.to_json(timings=True)["results"][0]
