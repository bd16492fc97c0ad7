"""Pareto archive maintenance."""

from __future__ import annotations

import numpy as np

from scnopt import Individual, ParetoArchive, update_archive

from oracles import oracle_dominates, oracle_nondominated


def ind(objectives, violation=0.0):
    return Individual(np.zeros(1), objectives=np.asarray(objectives, float), violation=violation)


def test_infeasible_candidates_never_enter():
    archive = update_archive(ParetoArchive(), [ind([1, 1], violation=0.5)])
    assert len(archive) == 0


def test_dominated_candidates_are_rejected():
    archive = update_archive(ParetoArchive(), [ind([1, 1])])
    archive = update_archive(archive, [ind([2, 2])])
    assert [tuple(m.objectives) for m in archive] == [(1.0, 1.0)]


def test_new_point_evicts_dominated_members():
    archive = update_archive(ParetoArchive(), [ind([2, 2]), ind([3, 1])])
    archive = update_archive(archive, [ind([1, 2])])
    kept = sorted(tuple(m.objectives) for m in archive)
    assert kept == [(1.0, 2.0), (3.0, 1.0)]


def test_duplicates_are_deduplicated():
    archive = update_archive(ParetoArchive(), [ind([1, 2]), ind([1, 2]), ind([2, 1])])
    assert len(archive) == 2


def test_members_sorted_by_objectives():
    archive = update_archive(
        ParetoArchive(), [ind([3, 0]), ind([0, 3]), ind([1, 2]), ind([2, 1])]
    )
    costs = [m.objectives[0] for m in archive]
    assert costs == sorted(costs)


def test_matches_brute_force_on_random_streams_bi_objective():
    rng = np.random.default_rng(13)
    for _ in range(25):
        archive = ParetoArchive()
        all_feasible: list[np.ndarray] = []
        for _round in range(6):
            batch = []
            for _ in range(int(rng.integers(1, 12))):
                objectives = np.round(rng.random(2) * 8) / 8
                violation = 0.0 if rng.random() < 0.7 else float(rng.random())
                batch.append(ind(objectives, violation))
                if violation == 0.0:
                    all_feasible.append(objectives)
            archive = update_archive(archive, batch)
            got = sorted(tuple(m.objectives) for m in archive)
            keep = oracle_nondominated(all_feasible) if all_feasible else []
            want = sorted({tuple(all_feasible[i]) for i in keep})
            assert got == want


def test_matches_brute_force_three_objectives():
    rng = np.random.default_rng(19)
    seen: list[np.ndarray] = []
    archive = ParetoArchive()
    for _round in range(8):
        batch = [ind(np.round(rng.random(3) * 5) / 5) for _ in range(10)]
        seen.extend(m.objectives for m in batch)
        archive = update_archive(archive, batch)
    got = sorted(tuple(m.objectives) for m in archive)
    keep = oracle_nondominated(seen)
    want = sorted({tuple(seen[i]) for i in keep})
    assert got == want


def test_monotone_no_archived_point_ever_dominated_by_history():
    rng = np.random.default_rng(21)
    archive = ParetoArchive()
    inserted: list[np.ndarray] = []
    for _round in range(10):
        batch = [ind(rng.random(2)) for _ in range(8)]
        inserted.extend(m.objectives for m in batch)
        archive = update_archive(archive, batch)
        for member in archive:
            assert not any(oracle_dominates(p, member.objectives) for p in inserted)
