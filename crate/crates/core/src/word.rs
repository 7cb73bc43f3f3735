//! R/B/P boundary words.
//!
//! Walking the boundary cells of a nonempty staircase from lower-left to
//! upper-right, a cell whose only exposed edge is the bottom reads `R`, the
//! right edge only reads `B`, and both read `P`. Row by row from the bottom,
//! a row that sticks out `d > 0` cells past the row below contributes
//! `R^(d-1) P`; a row flush with the row below contributes `B`.

use std::fmt;
use std::str::FromStr;

use crate::board::{GameConfig, Shape};
use crate::error::{GameError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Letter {
    R,
    B,
    P,
}

impl Letter {
    fn as_char(self) -> char {
        match self {
            Letter::R => 'R',
            Letter::B => 'B',
            Letter::P => 'P',
        }
    }
}

/// A word over `{R, B, P}` with at least one `P`, not starting with `B`, not
/// ending with `R`, and without the factor `RB`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BoundaryWord(Vec<Letter>);

impl BoundaryWord {
    pub fn new(letters: Vec<Letter>) -> Result<Self> {
        if letters.is_empty() {
            return Err(GameError::MalformedWord("empty word".into()));
        }
        if letters.first() == Some(&Letter::B) {
            return Err(GameError::MalformedWord("word starts with B".into()));
        }
        if letters.last() == Some(&Letter::R) {
            return Err(GameError::MalformedWord("word ends with R".into()));
        }
        if letters.windows(2).any(|w| w == [Letter::R, Letter::B]) {
            return Err(GameError::MalformedWord("forbidden factor RB".into()));
        }
        if !letters.contains(&Letter::P) {
            return Err(GameError::MalformedWord("word contains no P".into()));
        }
        Ok(BoundaryWord(letters))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for BoundaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for BoundaryWord {
    type Err = GameError;

    fn from_str(s: &str) -> Result<Self> {
        let letters = s
            .trim()
            .chars()
            .map(|ch| match ch {
                'R' => Ok(Letter::R),
                'B' => Ok(Letter::B),
                'P' => Ok(Letter::P),
                other => Err(GameError::MalformedWord(format!("unexpected letter {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        BoundaryWord::new(letters)
    }
}

pub fn shape_to_word(s: &Shape) -> Result<BoundaryWord> {
    if s.is_empty() {
        return Err(GameError::EmptyWord);
    }
    let rows = s.rows();
    let mut letters = Vec::new();
    for (i, &len) in rows.iter().enumerate().rev() {
        if len == 0 {
            continue;
        }
        let below = rows.get(i + 1).copied().unwrap_or(0);
        if len > below {
            letters.extend(std::iter::repeat_n(Letter::R, (len - below - 1) as usize));
            letters.push(Letter::P);
        } else {
            letters.push(Letter::B);
        }
    }
    BoundaryWord::new(letters)
}

pub fn word_to_shape(w: &BoundaryWord, cfg: &GameConfig) -> Result<Shape> {
    // Steps per nonempty row, bottom row first.
    let mut steps: Vec<u32> = Vec::new();
    let mut run = 0u32;
    for &l in w.letters() {
        match l {
            Letter::R => run += 1,
            Letter::P => {
                steps.push(run + 1);
                run = 0;
            }
            Letter::B => steps.push(0),
        }
    }
    let height = steps.len() as u32;
    let width: u32 = steps.iter().sum();
    if height > cfg.height() || width > cfg.width() {
        return Err(GameError::WordTooLarge(format!(
            "{w} needs a {width}x{height} board, have {}x{}",
            cfg.width(),
            cfg.height()
        )));
    }
    let mut rows = vec![0u32; cfg.height() as usize];
    let mut acc = 0;
    for (i, step) in steps.iter().enumerate() {
        acc += step;
        rows[steps.len() - 1 - i] = acc;
    }
    Shape::new(rows, cfg)
}
