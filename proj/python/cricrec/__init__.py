"""Python access to the cricrec engine.

Every call goes through the same native engine as the command-line tool and
the HTTP service, so results match them exactly.
"""

import json

from . import _cricrec

__all__ = ["CricrecError", "Engine", "innings_moments", "simulate", "ingest", "run_cli"]


class CricrecError(Exception):
    """An engine error with its class, message and, when known, the violated rule."""

    def __init__(self, payload):
        error = payload["error"]
        super().__init__(error["message"])
        self.error_class = error["class"]
        self.rule = error["rule"]


def _decode(fn, *args, **kwargs):
    try:
        return json.loads(fn(*args, **kwargs))
    except _cricrec.NativeError as e:
        raise CricrecError(json.loads(str(e))) from None


def innings_moments(r, avg):
    """Analytic mean, standard deviation and all-out probability of the innings model."""
    return _decode(_cricrec.innings_moments, r, avg)


def simulate(r, avg, trials, seed, threads=0):
    """Ball-by-ball estimate of the same moments."""
    return _decode(_cricrec.simulate, r, avg, trials, seed, threads)


def ingest(input, roster, out, threads=0):
    """Build a snapshot from a directory or zip of match files."""
    return _decode(_cricrec.ingest, str(input), str(roster), str(out), threads)


def run_cli(args):
    """Run one CLI subcommand in-process. Returns (exit code, stdout, stderr)."""
    return _cricrec.run_cli([str(a) for a in args])


class Engine:
    """A loaded snapshot with optional threshold overrides."""

    def __init__(self, snapshot, overrides=None, threads=0):
        try:
            self._engine = _cricrec.Engine(str(snapshot), json.dumps(overrides) if overrides else "", threads)
        except _cricrec.NativeError as e:
            raise CricrecError(json.loads(str(e))) from None

    def health(self):
        return _decode(self._engine.health)

    def players(self):
        return _decode(self._engine.players)["players"]

    def player(self, player):
        return _decode(self._engine.player, player)

    def rating(self, player, year=None):
        return _decode(self._engine.rating, player, year)

    def embedding(self, player, level=1):
        return _decode(self._engine.embedding, player, level)

    def matchup(self, batsman, bowler):
        return _decode(self._engine.matchup, batsman, bowler)

    def recommend(self, pool, opposition, composition, locked=(), excluded=(), overrides=None):
        body = {
            "pool": list(pool),
            "opposition": list(opposition),
            "composition": composition,
            "locked": list(locked),
            "excluded": list(excluded),
        }
        if overrides:
            body["overrides"] = overrides
        return _decode(self._engine.recommend, json.dumps(body))
