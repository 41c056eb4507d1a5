import numpy as np
import pytest

from relnet.config import CapExceeded, Caps, parse_caps
from relnet.model import Demand, SetDemand
from relnet.oracle import (brute_force_important_separators, check_structure_theorem, exact_optimum,
                           fault_count, feasible_by_cut_cover, feasible_by_fault_enumeration,
                           feasible_many, replay_witness, supersets)

from conftest import B0, B1

D023 = Demand(0, 2, 3)


def test_fault_enumeration_cycle(c4, backend):
    assert feasible_by_fault_enumeration(c4, range(4), [D023], backend=backend).feasible
    rep = feasible_by_fault_enumeration(c4, [0, 1, 2], [D023], backend=backend)
    assert not rep.feasible
    assert rep.witness == (D023, frozenset({0}))
    assert replay_witness(c4, [0, 1, 2], rep.witness)


def test_other_cycle_witness_also_valid(c4):
    # dropping e1 leaves G connected through vertex 3 but cuts H
    assert replay_witness(c4, [0, 1, 2], (D023, frozenset({1})))
    assert not replay_witness(c4, [0, 1, 2], (D023, frozenset({3})))


def test_cut_cover_cycle(c4, backend):
    assert feasible_by_cut_cover(c4, range(4), D023, backend=backend).feasible
    rep = feasible_by_cut_cover(c4, [0, 1, 2], D023, backend=backend)
    assert not rep.feasible
    assert replay_witness(c4, [0, 1, 2], rep.witness)


def test_report_json(c4):
    rep = feasible_by_fault_enumeration(c4, [0, 1, 2], [D023])
    out = rep.to_json()
    assert out["feasible"] is False and "wall_time" not in out
    assert out["witness"] == {"demand": {"s": 0, "t": 2, "k": 3}, "faults": [0]}
    assert "wall_time" in rep.to_json(timing=True)


def test_two_k4_solution_feasible(tk):
    from relnet.rsnd3 import solve_3rsnd
    sol = solve_3rsnd(tk, [Demand(1, 5, 3)])
    assert feasible_by_fault_enumeration(tk, sol.edges, [Demand(1, 5, 3)]).feasible


def test_exact(c4, tk):
    assert exact_optimum(c4, [Demand(0, 2, 2)]).weight == 4
    assert exact_optimum(c4, [Demand(0, 2, 1)]).weight == 2
    sol = exact_optimum(tk, [Demand(1, 5, 3)])
    assert sol.weight == 12 and {B0, B1} <= set(sol.parts["necessary"])


def test_exact_cap(tk):
    with pytest.raises(CapExceeded):
        exact_optimum(tk, [Demand(1, 5, 2)], caps=Caps(edge_subset_bits=3))


def test_fault_cap(tk):
    with pytest.raises(CapExceeded):
        feasible_by_fault_enumeration(tk, range(14), [Demand(1, 5, 3)], caps=Caps(fault_sets=10))


def test_fault_count():
    assert fault_count(4, 3) == 1 + 4 + 6


def test_set_demand(c4):
    d = SetDemand(frozenset({0, 1}), frozenset({2}), 2)
    assert feasible_by_fault_enumeration(c4, [1, 2, 3], [d]).feasible
    assert not feasible_by_fault_enumeration(c4, [1], [d]).feasible


def test_feasible_many_matches_single(c4, backend):
    cand = supersets(4, [])
    got = feasible_many(c4, cand, [D023], backend=backend)
    want = [feasible_by_fault_enumeration(c4, np.nonzero(r)[0], [D023]).feasible for r in cand]
    assert got.tolist() == want
    assert got.sum() == 1


def test_supersets():
    s = supersets(4, [1, 3])
    assert s.shape == (4, 4) and s[:, [1, 3]].all()


def test_brute_force_separators(lol, tk, kfour):
    assert [s.edges for s in brute_force_important_separators(lol, [0], [3], 2)] == [{0}]
    assert [s.edges for s in brute_force_important_separators(tk, [1], [5], 2)] == [{B0, B1}]
    assert brute_force_important_separators(kfour, [0], [3], 2) == []


def test_structure_theorem_examples(tk):
    assert check_structure_theorem(tk, range(14), 1, 5, 3) == (True, True)
    assert check_structure_theorem(tk, [e for e in range(14) if e != B0], 1, 5, 3) == (False, False)


def test_parse_caps():
    assert parse_caps("fault_sets=5").fault_sets == 5
    assert parse_caps('{"max_k": 3}').max_k == 3
    with pytest.raises(ValueError):
        parse_caps("nope=1")
    with pytest.raises(ValueError):
        Caps(fault_sets=0)
