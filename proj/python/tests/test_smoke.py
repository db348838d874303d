import json

import pytest

import cricrec


def test_innings_moments_match_simulation():
    analytic = cricrec.innings_moments(0.8, 30.0)
    assert analytic["total_probability"] == pytest.approx(1.0, abs=1e-9)
    mc = cricrec.simulate(0.8, 30.0, trials=20000, seed=3)
    assert abs(mc["mean"] - analytic["mean"]) < 4 * mc["standard_error"]
    assert cricrec.simulate(0.8, 30.0, trials=5000, seed=3, threads=1) == cricrec.simulate(
        0.8, 30.0, trials=5000, seed=3, threads=2)


def test_invalid_model_raises_with_class():
    with pytest.raises(cricrec.CricrecError) as e:
        cricrec.innings_moments(-1.0, 30.0)
    assert e.value.error_class == "malformed_input"


def test_engine_queries(snapshot, league):
    engine = cricrec.Engine(snapshot)
    assert engine.health()["status"] == "ok"
    assert len(engine.players()) == 45
    first = league["squads"]["TeamA"][0]
    assert engine.player(first)["id"] == first
    with pytest.raises(cricrec.CricrecError) as e:
        engine.player("nobody")
    assert e.value.error_class == "not_found"
    assert engine.rating(first)["ratings"][0]["side"] == "batting"
    assert engine.embedding(first, level=1)["player"] == first


def test_recommend_matches_cli(snapshot, league, tmp_path):
    engine = cricrec.Engine(snapshot)
    pool, opposition = league["squads"]["TeamA"], league["squads"]["TeamB"]
    result = engine.recommend(pool, opposition, "4,4,1,1,1")
    assert len(result["xi"]) == 11
    assert {s["player"] for s in result["xi"]} <= set(pool)

    (tmp_path / "pool.txt").write_text("\n".join(pool))
    (tmp_path / "opp.txt").write_text("\n".join(opposition))
    code, out, err = cricrec.run_cli(["recommend", "--snapshot", snapshot, "--pool", tmp_path / "pool.txt",
                                      "--opposition", tmp_path / "opp.txt", "--composition", "4,4,1,1,1",
                                      "--format", "json"])
    assert code == 0, err
    assert json.loads(out) == result


def test_recommend_constraint_error(snapshot, league):
    engine = cricrec.Engine(snapshot)
    with pytest.raises(cricrec.CricrecError) as e:
        engine.recommend(league["squads"]["TeamA"], league["squads"]["TeamB"], "4,4,1,1,0")
    assert e.value.error_class == "constraint_violation"
    assert e.value.rule == "composition.total"
