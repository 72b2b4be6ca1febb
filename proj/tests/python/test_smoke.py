"""End-to-end smoke tests for the python bindings.

Expected values mirror the frozen oracles in the C++ suites, so a bindings
regression shows up as a value change rather than a crash.
"""

import pytest

import barrec


def probing_eps(m, n, p):
    return p(n + 1) % 7 + n


def probing_eps_dep(s, r, p):
    return p(r.length_index + 1) % 7 + r.length_index


def two_point_q(alpha):
    return 10 * alpha.at(0) + alpha.at(1)


def test_psi_simple_matches_frozen_value():
    assert barrec.run_psi("simple", "bbc", probing_eps, two_point_q) == 24


def test_dependent_and_sequence_forms_agree():
    flat = barrec.run_psi("dep", "ps", probing_eps_dep, two_point_q)
    assert flat == 22
    tilde = barrec.run_psi("tilde", "ps", probing_eps_dep, two_point_q)
    assert tilde["answer"] == flat
    assert tilde["queried"] == [0, 1]
    played = barrec.run_ps(probing_eps_dep, two_point_q)
    assert played["answer"] == flat
    assert barrec.run_mbr1(probing_eps_dep, two_point_q) == flat


def test_start_state_wins_over_the_filler():
    assert barrec.run_psi("simple", "bbc", probing_eps, two_point_q,
                          start={0: 3}) == 35


def test_palette_configs_are_accepted():
    answer = barrec.run_psi("dep", "mbr1", {"kind": "probe", "value": 1},
                            {"kind": "sum_reads", "indices": [0, 1]})
    assert isinstance(answer, int)


def test_game_solution_matches_exhaustive_search():
    out = barrec.solve_game(2, 2, [True, True], [0, 1, 0, 2],
                            check_equations=True)
    assert out["solution"] == {"play": [1, 1], "value": 2}
    assert out["match"] is True
    assert out["equations"]["valid"] is True


def test_minimising_round_flips_the_value():
    out = barrec.solve_game(2, 2, [False, True], [0, 1, 0, 2])
    assert out["solution"] == {"play": [0, 1], "value": 1}
    assert out["match"] is True


def test_validate_bundle_reports():
    assert barrec.validate_bundle("mbr1")["all_pass"] is True
    bad = barrec.validate_bundle({"triangle": "lt", "prec": "empty",
                                  "m": "min_dom"})
    assert bad["all_pass"] is False
    assert "u" in bad["freshness"]["witness"]


def test_scripted_updates_reproduce_displays():
    script = [(1, 7), (4, 8), (3, 9)]
    assert barrec.scripted_updates("bbc", script) == [
        [0, 0, 0, 0, 0], [0, 7, 0, 0, 0], [0, 7, 0, 0, 8], [0, 7, 0, 9, 8]]
    assert barrec.scripted_updates("mbr1", script)[-1] == [7, 8, 9, 0, 0]
    assert barrec.scripted_updates("ps", script)[-1] == [0, 7, 0, 9, 0]


def test_realize_with_palette_family():
    rep = barrec.realize({"kind": "modular", "modulus": 3}, "bbc",
                         {"kind": "sum_reads", "indices": [0, 1, 2, 3, 4]})
    assert rep["valid"] is True
    assert rep["final_answer"] == 4


def test_realize_with_python_predicate():
    def holds(n, prefix, x):
        return x == (n * n) % 5

    rep = barrec.realize(("squares", 10, holds), "mbr1",
                         {"kind": "sum_reads", "indices": [0, 1, 2]},
                         style="refuter")
    assert rep["valid"] is True
    assert rep["final_answer"] == 5


def test_errors_map_to_python_exceptions():
    with pytest.raises(barrec.CycleError):
        barrec.run_psi("simple",
                       {"triangle": "empty", "prec": "cycle_pair",
                        "m": "identity"},
                       lambda m, n, p: p(1), lambda a: a.at(0))
    with pytest.raises(barrec.ConfigError):
        barrec.validate_bundle("no_such_bundle")
    with pytest.raises(barrec.FuelError):
        barrec.run_bbc(lambda m, n, p: 1,
                       lambda a: sum(a.at(i) for i in range(1000)),
                       max_queries=50)
    with pytest.raises(barrec.ConditionError):
        barrec.run_psi("simple",
                       {"triangle": "lt", "prec": "empty", "m": "min_dom"},
                       probing_eps, two_point_q, start={2: 5})


def test_pairing_roundtrip():
    for a in range(12):
        for b in range(12):
            z = barrec.pair_encode(a, b)
            assert (barrec.pair_first(z), barrec.pair_second(z)) == (a, b)
    for v in (-5, -1, 0, 1, 9):
        assert barrec.unzigzag(barrec.zigzag(v)) == v
