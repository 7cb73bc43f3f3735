use esgame_core::strategy::template_shapes;
use esgame_core::{
    engine_reply, exhaustive_verify, label_states, simulate, table_winner, verify_strategy, GameConfig,
    PlayPolicy, Player, Session, Variant,
};

fn cfg(a: u32, b: u32) -> GameConfig {
    GameConfig::new(a, b).unwrap()
}

#[test]
fn avoidance_strategies_certify() {
    for b in 3..=5 {
        for a in b..=12 {
            let c = cfg(a, b);
            let t = label_states(&c, Variant::Avoidance).unwrap();
            let report = verify_strategy(&c, Variant::Avoidance, &t).unwrap();
            assert_eq!(report.failures(), 0, "a={a} b={b}\n{}", report.to_text());
            assert_eq!(report.fallbacks(), 0, "a={a} b={b}");
        }
    }
}

#[test]
fn achievement_strategies_certify() {
    for b in 4..=6 {
        for a in b..=10 {
            let report = exhaustive_verify(&cfg(a, b), Variant::Achievement).unwrap();
            assert!(report.passed(), "a={a} b={b}");
            assert_eq!(report.fallbacks(), 0);
        }
    }
}

#[test]
fn template_shapes_are_losses() {
    for a in 5..=12 {
        let c = cfg(a, 5);
        let t = label_states(&c, Variant::Avoidance).unwrap();
        for (s, class) in template_shapes(&c) {
            assert!(t.is_loss(&s), "a={a} {s} {class}");
        }
    }
}

#[test]
fn report_text_has_one_line_per_state() {
    let report = exhaustive_verify(&cfg(3, 3), Variant::Avoidance).unwrap();
    assert!(report.passed());
    let text = report.to_text();
    assert_eq!(text.lines().count(), report.entries.len());
    assert!(text.lines().next().unwrap().starts_with("shape=0,0 move=(1,1) certified=true fallback=false"));
}

#[test]
fn strategy_beats_random_play() {
    for (a, b) in [(7, 3), (8, 4), (6, 5), (9, 5)] {
        let c = cfg(a, b);
        let stats = simulate(c, Variant::Avoidance, &mut PlayPolicy::Strategy, &mut PlayPolicy::random(11), 200, None)
            .unwrap();
        assert_eq!(stats.player1_wins, 200, "a={a} b={b}");
    }
}

#[test]
fn b3_games_take_2a_minus_2_moves() {
    let stats = simulate(cfg(8, 3), Variant::Avoidance, &mut PlayPolicy::Strategy, &mut PlayPolicy::random(5), 100, None)
        .unwrap();
    assert_eq!(stats.histogram.keys().copied().collect::<Vec<_>>(), vec![14]);
}

#[test]
fn solver_pairs_reach_the_predicted_winner() {
    for a in 2..=8 {
        for b in 2..=6 {
            let c = cfg(a, b);
            for v in [Variant::Avoidance, Variant::Achievement] {
                let t = label_states(&c, v).unwrap();
                let stats = simulate(c, v, &mut PlayPolicy::Solver, &mut PlayPolicy::Solver, 1, Some(&t)).unwrap();
                let winner = if stats.player1_wins == 1 { Player::One } else { Player::Two };
                assert_eq!(winner, table_winner(&t), "a={a} b={b} {v}");
            }
        }
    }
}

#[test]
fn random_games_end_within_the_bound() {
    let mut p1 = PlayPolicy::random(1);
    let mut p2 = PlayPolicy::random(2);
    for (a, b) in [(2, 2), (5, 3), (6, 6), (9, 4)] {
        let stats = simulate(cfg(a, b), Variant::Avoidance, &mut p1, &mut p2, 100, None).unwrap();
        assert!(stats.max_length.unwrap() <= u64::from((a - 1) * (b - 1) + 1));
        assert!(stats.min_length.unwrap() >= u64::from(a.min(b)));
    }
}

#[test]
fn engine_as_second_player_falls_back_to_the_solver() {
    let c = cfg(6, 5);
    let t = label_states(&c, Variant::Avoidance).unwrap();
    let mut sess = Session::new(c, Variant::Avoidance);
    while !sess.is_finished() {
        let policy = &mut if sess.to_move() == Player::One { PlayPolicy::Solver } else { PlayPolicy::Strategy };
        engine_reply(&mut sess, policy, Some(&t)).unwrap();
    }
    assert_eq!(sess.winner(), Some(Player::One));
}

#[test]
fn achievement_b2_engine_wins_on_first_reply() {
    let mut sess = Session::new(cfg(7, 2), Variant::Achievement);
    sess.play_digit(1).unwrap();
    let rec = engine_reply(&mut sess, &mut PlayPolicy::Strategy, None).unwrap();
    assert_eq!(rec.digit, 1);
    assert_eq!(sess.winner(), Some(Player::Two));
}

#[test]
fn scripted_policy_replays_digits() {
    let c = cfg(5, 4);
    let mut p1 = PlayPolicy::script([1, 1, 3]);
    let mut p2 = PlayPolicy::script([2, 4]);
    let mut sess = Session::new(c, Variant::Avoidance);
    for _ in 0..5 {
        let policy = if sess.to_move() == Player::One { &mut p1 } else { &mut p2 };
        engine_reply(&mut sess, policy, None).unwrap();
    }
    assert_eq!(sess.digits(), vec![1, 2, 1, 4, 3]);
    assert!(engine_reply(&mut sess, &mut p2, None).is_err());
}
