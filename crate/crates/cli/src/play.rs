use std::collections::HashSet;
use std::io::{BufRead, Write};

use esgame_core::{engine_reply, shaded_cells, Cell, GameConfig, Player, Session, Status, Variant};

use crate::{policy_of, table_for, CliError, PlayArgs};

/// Board picture: `#` shaded by a digit, `x` eliminated, `.` open. Row 1 on top.
pub fn render_grid(sess: &Session) -> String {
    let cfg = sess.config();
    let shaded: HashSet<Cell> = shaded_cells(sess.transcript()).into_iter().collect();
    let mut text = String::from("   ");
    for c in 1..=cfg.width() {
        text.push_str(&format!("{:>3}", c));
    }
    text.push('\n');
    for r in 1..=cfg.height() {
        text.push_str(&format!("{r:>3}"));
        let len = sess.shape().row(r);
        for c in 1..=cfg.width() {
            let mark = if shaded.contains(&Cell::new(c, r)) {
                '#'
            } else if c <= len {
                'x'
            } else {
                '.'
            };
            text.push_str(&format!("{mark:>3}"));
        }
        text.push('\n');
    }
    text
}

fn show(sess: &Session, out: &mut dyn Write) -> Result<(), CliError> {
    out.write_all(render_grid(sess).as_bytes())?;
    let perm: Vec<String> = sess.transcript().values().iter().map(u32::to_string).collect();
    writeln!(out, "permutation: {}", if perm.is_empty() { "(empty)".into() } else { perm.join(" ") })?;
    if !sess.is_finished() {
        let legal: Vec<String> = sess.legal_digits().iter().map(|(cell, m)| format!("{m}->{cell}")).collect();
        if legal.is_empty() {
            writeln!(out, "no cells left: every digit ends the game")?;
        } else {
            writeln!(out, "legal: {}", legal.join(" "))?;
        }
    }
    Ok(())
}

/// Interactive game against the engine, one digit per input line.
pub fn play(args: &PlayArgs, input: &mut dyn BufRead, out: &mut dyn Write) -> Result<(), CliError> {
    let cfg = GameConfig::new(args.a, args.b)?;
    let variant: Variant = args.variant.into();
    let engine_seat = if args.engine_first { Player::One } else { Player::Two };
    let mut policy = policy_of(args.engine, args.seed);
    let table = table_for(&cfg, variant, &[args.engine], args.max_states)?;
    policy.check(&cfg, variant, table.as_ref())?;

    let mut sess = Session::new(cfg, variant);
    writeln!(out, "a={} b={} variant={variant}; you are {}", cfg.a(), cfg.b(), engine_seat.other())?;
    let mut line = String::new();
    while !sess.is_finished() {
        if sess.to_move() == engine_seat {
            let rec = engine_reply(&mut sess, &mut policy, table.as_ref())?;
            writeln!(out, "engine plays {} -> {}", rec.digit, rec.cell)?;
            continue;
        }
        show(&sess, out)?;
        let max = sess.transcript().len() as u32 + 1;
        loop {
            write!(out, "your digit (1-{max}): ")?;
            out.flush()?;
            line.clear();
            if input.read_line(&mut line)? == 0 {
                writeln!(out, "\ninput closed; game abandoned")?;
                return Ok(());
            }
            let text = line.trim();
            if matches!(text, "q" | "quit") {
                writeln!(out, "game abandoned")?;
                return Ok(());
            }
            match text.parse::<u32>() {
                Ok(m) if (1..=max).contains(&m) => {
                    let rec = sess.play_digit(m)?;
                    writeln!(out, "you play {m} -> {}", rec.cell)?;
                    break;
                }
                _ => writeln!(out, "invalid digit {text:?}: enter a number from 1 to {max}")?,
            }
        }
    }
    show(&sess, out)?;
    if let Status::Finished { winner, reason } = sess.status() {
        let who = if winner == engine_seat { "the engine wins" } else { "you win" };
        writeln!(out, "{winner} wins by {reason}: {who}")?;
    }
    if let Some(log) = sess.log() {
        writeln!(out, "{log}")?;
    }
    Ok(())
}
