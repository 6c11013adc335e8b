import json

from hypothesis import given
from hypothesis import strategies as st

from domgame.corpus import six_config
from domgame.graphs import cycle, disjoint_copies, disjoint_union, random_min_deg2
from domgame.strategy import PotentialDominator, make_staller, run_match
from domgame.trace import MatchTrace, audit_trace, moves_per_component

from conftest import min_deg2_graphs


def test_json_round_trip_is_lossless():
    tr = run_match(random_min_deg2(20, 4, 3), PotentialDominator(), make_staller("random:2"))
    back = MatchTrace.from_json(tr.to_json())
    assert back == tr
    data = json.loads(tr.to_json())
    for key in ("n", "m", "moves", "total", "bound_ok", "t1", "k"):
        assert key in data
    assert set(data["moves"][0]) == {"t", "player", "vertex", "pi_after", "drop", "phase", "detail"}
    assert data["moves"][0]["t"] == 1
    assert data["staller"] == "random:2"


def test_audit_c5_trace():
    tr = run_match(cycle(5), PotentialDominator(), make_staller("optimal"))
    rep = audit_trace(tr)
    assert rep.ok
    assert (rep.t1, rep.k, rep.reactive_length) == (0, 1, 3)


def test_audit_detects_tampered_pi():
    tr = run_match(cycle(12), PotentialDominator(), make_staller("stingy"))
    tr.moves[3].pi_after += 7
    rep = audit_trace(tr)
    assert not rep.ok and rep.first_divergent == 4


def test_audit_detects_illegal_and_unfinished():
    tr = run_match(cycle(9), PotentialDominator(), make_staller("stingy"))
    tr.moves[2].vertex = tr.moves[0].vertex
    assert not audit_trace(tr).ok
    tr = run_match(cycle(9), PotentialDominator(), make_staller("stingy"))
    del tr.moves[-1]
    tr.total -= 1
    rep = audit_trace(tr)
    assert any("not over" in m for m in rep.mismatches)


def test_audit_detects_wrong_k_and_phase():
    tr = run_match(disjoint_union(cycle(5), cycle(5)), PotentialDominator(), make_staller("stingy"))
    assert audit_trace(tr).ok and tr.k == 2
    tr.k = 1
    assert not audit_trace(tr).ok
    tr.k = 2
    tr.moves[-1].phase = "active"
    assert not audit_trace(tr).ok


def test_audit_detects_missing_checkpoint():
    tr = run_match(cycle(10), PotentialDominator(), make_staller("stingy"))
    tr.checkpoints = tr.checkpoints[1:]
    assert not audit_trace(tr).ok


def test_moves_per_component():
    g = disjoint_copies(cycle(5), 3)
    tr = run_match(g, PotentialDominator(), make_staller("optimal"))
    counts = moves_per_component(tr)
    assert len(counts) == 3 and sum(counts) == tr.total
    g = disjoint_union(cycle(5), six_config())
    tr = run_match(g, PotentialDominator(), make_staller("stingy"))
    assert sum(moves_per_component(tr, g)) == tr.total


@given(min_deg2_graphs(max_n=14), st.integers(0, 50))
def test_replay_reproduces_every_pi(g, seed):
    tr = run_match(g, PotentialDominator(), make_staller(f"random:{seed}"))
    back = MatchTrace.from_json(tr.to_json())
    assert audit_trace(back).ok
    pis = [m.pi_after for m in back.moves]
    assert all(a - b >= 20 for a, b in zip([20 * g.n] + pis, pis))
