"""Smoke test for the esgame extension module.

Build first with `cargo build -p esgame-py --release`, then run
`python3 crates/py/python/smoke_test.py`. An installed `esgame` module is
used when present; otherwise the freshly built library is loaded from target/.
"""

import importlib.machinery
import importlib.util
import pathlib
import sys


def load():
    try:
        import esgame

        return esgame
    except ImportError:
        pass
    root = pathlib.Path(__file__).resolve().parents[3]
    for profile in ("release", "debug"):
        lib = root / "target" / profile / "libesgame.so"
        if lib.exists():
            loader = importlib.machinery.ExtensionFileLoader("esgame", str(lib))
            spec = importlib.util.spec_from_file_location("esgame", str(lib), loader=loader)
            module = importlib.util.module_from_spec(spec)
            loader.exec_module(module)
            sys.modules["esgame"] = module
            return module
    sys.exit("esgame is not built; run `cargo build -p esgame-py --release`")


def main():
    es = load()

    # Board model and codec.
    assert es.perm_to_shape([1, 6, 3, 4, 2, 5], 6, 5) == [4, 4, 2, 0]
    assert len(es.legal_cells([4, 4, 2, 0], 6, 5)) == 6
    assert es.shape_to_word([4, 4, 2, 0], 6, 5) == "RPRPB"
    assert es.word_to_shape("RPRPB", 6, 5) == [4, 4, 2, 0]
    try:
        es.word_to_shape("RB", 6, 5)
        raise AssertionError("RB should be rejected")
    except es.EsgameError as e:
        assert "RB" in str(e)

    # Solver.
    solver = es.Solver(5, 5)
    assert (solver.winner, solver.states, solver.loss_states) == (1, 70, 18)
    assert es.Solver(7, 2).winner == 2
    assert solver.label([]) == "win"
    assert solver.best_moves([0, 0, 0, 0]) == [(1, 1)]
    assert es.Solver(8, 5).csv_row() == "8,5,avoidance,67,330,0.2030"

    # Strategy and verification.
    assert es.strategy_move([], 7, 5) == (1, 1)
    report = es.verify_strategy(7, 5)
    assert report["passed"] and report["fallbacks"] == 0

    # A game: strategy as player 1 against a random opponent.
    s = es.Session(7, 5)
    seed = 0
    while not s.is_finished:
        if s.to_move == 1:
            s.engine_reply("strategy")
        else:
            seed += 1
            s.engine_reply("random", seed=seed)
    assert s.winner == 1, s.log()
    assert s.reason in ("I_a", "J_b")
    assert s.log().startswith("a=7 b=5 variant=avoidance moves=")

    replay = es.Session(7, 5, digits=s.digits)
    assert replay.transcript == s.transcript and replay.winner == 1

    stats = es.simulate(8, 3, trials=20, seed=4)
    assert stats["player1_wins"] == 20 and stats["histogram"] == {14: 20}

    print("esgame smoke test: ok")


if __name__ == "__main__":
    main()
