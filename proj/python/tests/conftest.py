import json
import random

import pytest

ROLES = [("bat", 6, "batsman"), ("wk", 2, "wicketkeeper"), ("bar", 1, "batting-allrounder"),
         ("boar", 1, "bowling-allrounder"), ("bowl", 5, "bowler")]
XI_SHAPE = {"wicketkeeper": 1, "batsman": 4, "batting-allrounder": 1, "bowling-allrounder": 1, "bowler": 4}


def make_squads(teams):
    squads = {}
    for t in range(teams):
        name = "Team" + chr(ord("A") + t)
        squads[name] = [(f"{name}_{tag}{i}", role) for tag, n, role in ROLES for i in range(1, n + 1)]
    return squads


def pick_xi(squad, rng):
    xi = []
    for role, n in XI_SHAPE.items():
        players = [p for p, r in squad if r == role]
        rng.shuffle(players)
        xi += players[:n]
    return xi


def play_innings(batting, fielding, rng):
    attack = [p for p in fielding if "bowl" in p or "boar" in p or "bar" in p]
    overs, striker, non_striker, next_in, wickets = [], 0, 1, 2, 0
    for over in range(50):
        bowler = attack[over % len(attack)]
        deliveries = []
        for _ in range(6):
            if wickets == 10:
                break
            d = {"batter": batting[striker], "bowler": bowler, "non_striker": batting[non_striker]}
            if rng.random() < 0.03:
                d["runs"] = {"batter": 0, "extras": 0, "total": 0}
                d["wickets"] = [{"player_out": batting[striker], "kind": "caught"}]
                wickets += 1
                if wickets < 10:
                    striker, next_in = next_in, next_in + 1
            else:
                runs = rng.choice([0, 0, 1, 1, 1, 2, 4, 6])
                d["runs"] = {"batter": runs, "extras": 0, "total": runs}
                if runs % 2:
                    striker, non_striker = non_striker, striker
            deliveries.append(d)
        if deliveries:
            overs.append({"over": over, "deliveries": deliveries})
        if wickets == 10:
            break
        striker, non_striker = non_striker, striker
    return overs


@pytest.fixture(scope="session")
def league(tmp_path_factory):
    rng = random.Random(11)
    root = tmp_path_factory.mktemp("league")
    matches = root / "matches"
    matches.mkdir()
    squads = make_squads(3)
    with open(root / "roster.txt", "w") as f:
        f.write("# id,name,country,role,aliases\n")
        for team, players in squads.items():
            for p, role in players:
                f.write(f"{p},{p} Name,{team},{role},\n")
    names = list(squads)
    for k in range(18):
        a, b = names[k % 3], names[(k + 1) % 3]
        xi_a, xi_b = pick_xi(squads[a], rng), pick_xi(squads[b], rng)
        doc = {
            "meta": {"data_version": "1.0.0"},
            "info": {"match_type": "ODI", "dates": [f"2012-{1 + k % 12:02d}-{1 + k:02d}"], "teams": [a, b],
                     "venue": "Ground", "outcome": {"winner": a}},
            "innings": [{"team": a, "overs": play_innings(xi_a, xi_b, rng)},
                        {"team": b, "overs": play_innings(xi_b, xi_a, rng)}],
        }
        (matches / f"m{k:03d}.json").write_text(json.dumps(doc))
    return {"dir": root, "squads": {t: [p for p, _ in ps] for t, ps in squads.items()}}


@pytest.fixture(scope="session")
def snapshot(league):
    import cricrec

    out = league["dir"] / "league.snap"
    summary = cricrec.ingest(league["dir"] / "matches", league["dir"] / "roster.txt", out)
    assert summary["matches"] == 18
    return out
