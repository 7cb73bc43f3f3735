//! Permutations, the Seidenberg pair map, and the staircase board.
//!
//! A move appends a digit to the permutation. The pair `(inc, dec)` of the new
//! digit (longest increasing / decreasing subsequence ending there) is the
//! cell `(c, r)` it shades. Every cell weakly above-left of a shaded cell is
//! eliminated, so the shaded-or-eliminated region is a staircase, stored as
//! its row lengths (a [`Shape`]).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{GameError, Result};

/// Largest accepted value of `a` or `b`.
pub const MAX_PARAM: u32 = 64;

/// Parameters of an `(a, b)`-game: completing an increasing run of length `a`
/// or a decreasing run of length `b` ends the game.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GameConfig {
    a: u32,
    b: u32,
}

impl GameConfig {
    pub fn new(a: u32, b: u32) -> Result<Self> {
        for (name, v) in [("a", a), ("b", b)] {
            if v < 2 {
                return Err(GameError::InvalidConfig(format!("{name}={v} must be at least 2")));
            }
            if v > MAX_PARAM {
                return Err(GameError::InvalidConfig(format!(
                    "{name}={v} exceeds the maximum {MAX_PARAM}"
                )));
            }
        }
        Ok(GameConfig { a, b })
    }

    pub fn a(&self) -> u32 {
        self.a
    }

    pub fn b(&self) -> u32 {
        self.b
    }

    /// Number of board columns, `a - 1`.
    pub fn width(&self) -> u32 {
        self.a - 1
    }

    /// Number of board rows, `b - 1`.
    pub fn height(&self) -> u32 {
        self.b - 1
    }

    /// The same game with the roles of increasing and decreasing swapped.
    pub fn transposed(&self) -> GameConfig {
        GameConfig { a: self.b, b: self.a }
    }

    /// Number of staircase shapes that fit the board: `C(w + h, w)`.
    pub fn state_count(&self) -> u128 {
        binomial_u128(self.width() + self.height(), self.width())
    }
}

fn gcd(mut x: u128, mut y: u128) -> u128 {
    while y != 0 {
        (x, y) = (y, x % y);
    }
    x
}

pub(crate) fn binomial_u128(n: u32, k: u32) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1); cancel first to stay in range.
        let d = u128::from(i + 1);
        let g = gcd(acc, d);
        acc = (acc / g).saturating_mul(u128::from(n - i) / (d / g));
    }
    acc
}

/// A permutation of `1..=n` in one-line notation.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Permutation(Vec<u32>);

impl Permutation {
    pub fn new(values: Vec<u32>) -> Result<Self> {
        let n = values.len();
        let mut seen = vec![false; n + 1];
        for &v in &values {
            let idx = v as usize;
            if v == 0 || idx > n {
                return Err(GameError::InvalidPermutation(format!(
                    "value {v} outside 1..={n}"
                )));
            }
            if seen[idx] {
                return Err(GameError::InvalidPermutation(format!("value {v} repeated")));
            }
            seen[idx] = true;
        }
        Ok(Permutation(values))
    }

    pub fn empty() -> Self {
        Permutation(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[u32] {
        &self.0
    }

    /// Appends `m`, first bumping every existing value `>= m` up by one.
    pub fn append(&mut self, m: u32) -> Result<()> {
        let max = self.0.len() as u32 + 1;
        if m == 0 || m > max {
            return Err(GameError::DigitOutOfRange { digit: m, max });
        }
        for v in &mut self.0 {
            if *v >= m {
                *v += 1;
            }
        }
        self.0.push(m);
        Ok(())
    }

    pub fn appended(&self, m: u32) -> Result<Self> {
        let mut next = self.clone();
        next.append(m)?;
        Ok(next)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.len() <= 9 {
            for v in &self.0 {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
            f.write_str(&parts.join(" "))
        }
    }
}

impl FromStr for Permutation {
    type Err = GameError;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let values: Vec<u32> = if s.contains(|ch: char| ch.is_whitespace() || ch == ',') {
            s.split(|ch: char| ch.is_whitespace() || ch == ',')
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<u32>().map_err(|e| GameError::Parse(format!("{t:?}: {e}"))))
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|ch| {
                    ch.to_digit(10)
                        .ok_or_else(|| GameError::Parse(format!("unexpected character {ch:?}")))
                })
                .collect::<Result<_>>()?
        };
        if values.len() > 9 && !s.contains(|ch: char| ch.is_whitespace() || ch == ',') {
            return Err(GameError::Parse(
                "permutations longer than 9 must be space-separated".into(),
            ));
        }
        Permutation::new(values)
    }
}

/// Lengths of the longest increasing and decreasing subsequences ending at a digit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PrefixPair {
    pub inc: u32,
    pub dec: u32,
}

impl PrefixPair {
    pub fn cell(self) -> Cell {
        Cell::new(self.inc, self.dec)
    }
}

/// A board cell `(c, r)`: column `c` counts increasing length, row `r`
/// decreasing length. Both are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cell {
    pub c: u32,
    pub r: u32,
}

impl Cell {
    pub const fn new(c: u32, r: u32) -> Self {
        Cell { c, r }
    }

    pub fn on_board(&self, cfg: &GameConfig) -> bool {
        (1..=cfg.width()).contains(&self.c) && (1..=cfg.height()).contains(&self.r)
    }

    pub fn transposed(self) -> Cell {
        Cell { c: self.r, r: self.c }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.c, self.r)
    }
}

impl FromStr for Cell {
    type Err = GameError;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| GameError::Parse(format!("cell {s:?} must look like (c,r)")))?;
        let (c, r) = inner
            .split_once(',')
            .ok_or_else(|| GameError::Parse(format!("cell {s:?} must look like (c,r)")))?;
        let parse = |t: &str| {
            t.trim()
                .parse::<u32>()
                .map_err(|e| GameError::Parse(format!("cell {s:?}: {e}")))
        };
        Ok(Cell::new(parse(c)?, parse(r)?))
    }
}

pub(crate) fn format_cells(cells: &[Cell]) -> String {
    let parts: Vec<String> = cells.iter().map(|c| c.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

/// Row lengths of the shaded-or-eliminated staircase, top row first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Shape(Vec<u32>);

impl Shape {
    /// Validates the staircase against the board of `cfg`.
    pub fn new(rows: Vec<u32>, cfg: &GameConfig) -> Result<Self> {
        if rows.len() != cfg.height() as usize {
            return Err(GameError::InvalidShape(format!(
                "expected {} rows, got {}",
                cfg.height(),
                rows.len()
            )));
        }
        if let Some(&big) = rows.iter().find(|&&x| x > cfg.width()) {
            return Err(GameError::InvalidShape(format!(
                "row length {big} exceeds board width {}",
                cfg.width()
            )));
        }
        if rows.windows(2).any(|w| w[0] < w[1]) {
            return Err(GameError::InvalidShape(format!(
                "row lengths {} are not weakly decreasing",
                join_rows(&rows)
            )));
        }
        Ok(Shape(rows))
    }

    pub(crate) fn from_rows_unchecked(rows: Vec<u32>) -> Self {
        Shape(rows)
    }

    pub fn empty(cfg: &GameConfig) -> Self {
        Shape(vec![0; cfg.height() as usize])
    }

    pub fn full(cfg: &GameConfig) -> Self {
        Shape(vec![cfg.width(); cfg.height() as usize])
    }

    /// Parses the text form, e.g. `"4,4,2,0"`, and validates it.
    pub fn parse(text: &str, cfg: &GameConfig) -> Result<Self> {
        let rows = text
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|e| GameError::Parse(format!("shape {text:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Shape::new(rows, cfg)
    }

    pub fn rows(&self) -> &[u32] {
        &self.0
    }

    pub fn height(&self) -> usize {
        self.0.len()
    }

    /// Length of row `r` (1-based); 0 outside the board.
    pub fn row(&self, r: u32) -> u32 {
        if r == 0 {
            return 0;
        }
        self.0.get(r as usize - 1).copied().unwrap_or(0)
    }

    pub fn cell_count(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.first().is_none_or(|&x| x == 0)
    }

    pub fn is_full(&self, cfg: &GameConfig) -> bool {
        self.0.iter().all(|&x| x == cfg.width())
    }

    /// Whether `cell` lies in the shaded-or-eliminated region.
    pub fn contains(&self, cell: Cell) -> bool {
        cell.c >= 1 && cell.c <= self.row(cell.r)
    }

    /// Transpose of the staircase, as a shape on a board with `new_height` rows.
    pub fn conjugate(&self, new_height: u32) -> Shape {
        Shape(
            (1..=new_height)
                .map(|c| self.0.iter().filter(|&&x| x >= c).count() as u32)
                .collect(),
        )
    }

    /// Whether playing a new maximum (resp. new minimum) would leave the board.
    ///
    /// A new maximum lands on `(λ_1 + 1, 1)` and a new minimum on
    /// `(1, d + 1)` where `d` counts the nonempty rows.
    pub fn completing_moves(&self, cfg: &GameConfig) -> (bool, bool) {
        let new_max = self.row(1) == cfg.width();
        let new_min = self.row(cfg.height()) >= 1;
        (new_max, new_min)
    }
}

fn join_rows(rows: &[u32]) -> String {
    let parts: Vec<String> = rows.iter().map(|x| x.to_string()).collect();
    parts.join(",")
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join_rows(&self.0))
    }
}

/// `(inc, dec)` for every position, O(n²).
pub fn prefix_pairs(p: &Permutation) -> Vec<PrefixPair> {
    let v = p.values();
    let mut pairs: Vec<PrefixPair> = Vec::with_capacity(v.len());
    for (i, &x) in v.iter().enumerate() {
        let mut inc = 1;
        let mut dec = 1;
        for (j, &y) in v[..i].iter().enumerate() {
            if y < x {
                inc = inc.max(pairs[j].inc + 1);
            } else {
                dec = dec.max(pairs[j].dec + 1);
            }
        }
        pairs.push(PrefixPair { inc, dec });
    }
    pairs
}

/// The staircase reached by `p`. Fails if `p` already contains `I_a` or `J_b`.
pub fn perm_to_shape(p: &Permutation, cfg: &GameConfig) -> Result<Shape> {
    shape_from_pairs(&prefix_pairs(p), cfg)
}

pub(crate) fn shape_from_pairs(pairs: &[PrefixPair], cfg: &GameConfig) -> Result<Shape> {
    let mut rows = vec![0u32; cfg.height() as usize];
    for (i, pair) in pairs.iter().enumerate() {
        if pair.inc >= cfg.a() || pair.dec >= cfg.b() {
            return Err(GameError::PatternCompleted {
                position: i + 1,
                inc: pair.inc as usize,
                dec: pair.dec as usize,
            });
        }
        let r = pair.dec as usize;
        rows[r - 1] = rows[r - 1].max(pair.inc);
    }
    // Union of rectangles: each row extends at least as far as any row below it.
    for r in (0..rows.len().saturating_sub(1)).rev() {
        rows[r] = rows[r].max(rows[r + 1]);
    }
    Ok(Shape(rows))
}

/// Calls `f(c, r)` for every cell of the board edge-adjacent to a nonempty region.
pub(crate) fn for_each_frontier_cell(rows: &[u32], width: u32, mut f: impl FnMut(u32, u32)) {
    let mut above = width;
    for (i, &len) in rows.iter().enumerate() {
        let r = i as u32 + 1;
        let start = len + 1;
        // Open cells whose top neighbour is in the region, plus the one to the
        // right of the row when that row is nonempty.
        let mut end = if r == 1 { 0 } else { above };
        if len >= 1 {
            end = end.max(len + 1);
        }
        end = end.min(width);
        for c in start..=end {
            f(c, r);
        }
        above = len;
    }
}

/// Cells the next move may shade. The empty board admits only `(1,1)`.
pub fn legal_cells(s: &Shape, cfg: &GameConfig) -> Result<Vec<Cell>> {
    if s.is_full(cfg) {
        return Err(GameError::NoLegalMoves);
    }
    if s.is_empty() {
        return Ok(vec![Cell::new(1, 1)]);
    }
    let mut out = Vec::new();
    for_each_frontier_cell(s.rows(), cfg.width(), |c, r| out.push(Cell::new(c, r)));
    out.sort();
    Ok(out)
}

pub fn is_legal(s: &Shape, cell: Cell, cfg: &GameConfig) -> bool {
    legal_cells(s, cfg).is_ok_and(|cells| cells.contains(&cell))
}

/// Shades `cell`, eliminating everything above and to the left of it.
pub fn apply_cell(s: &Shape, cell: Cell, cfg: &GameConfig) -> Result<Shape> {
    let legal = legal_cells(s, cfg)?;
    if !legal.contains(&cell) {
        return Err(GameError::IllegalCell { cell, legal: format_cells(&legal) });
    }
    Ok(apply_unchecked(s, cell))
}

pub(crate) fn apply_unchecked(s: &Shape, cell: Cell) -> Shape {
    let mut rows = s.0.clone();
    for x in rows.iter_mut().take(cell.r as usize) {
        *x = (*x).max(cell.c);
    }
    Shape(rows)
}

/// The cell shaded by appending `m` to `p` (which may fall off the board).
pub fn cell_of_append(p: &Permutation, m: u32) -> Result<Cell> {
    let pairs = prefix_pairs(p);
    cell_of_append_with(p, &pairs, m)
}

pub(crate) fn cell_of_append_with(p: &Permutation, pairs: &[PrefixPair], m: u32) -> Result<Cell> {
    let max = p.len() as u32 + 1;
    if m == 0 || m > max {
        return Err(GameError::DigitOutOfRange { digit: m, max });
    }
    // After bumping, old values < m stay below the new digit and values >= m
    // end up above it; relative order among old digits is unchanged.
    let mut inc = 1;
    let mut dec = 1;
    for (&v, pair) in p.values().iter().zip(pairs) {
        if v < m {
            inc = inc.max(pair.inc + 1);
        } else {
            dec = dec.max(pair.dec + 1);
        }
    }
    Ok(Cell::new(inc, dec))
}

/// Smallest digit whose append shades `cell`.
pub fn realize_digit(p: &Permutation, cell: Cell, cfg: &GameConfig) -> Result<u32> {
    let pairs = prefix_pairs(p);
    let shape = shape_from_pairs(&pairs, cfg)?;
    let legal = legal_cells(&shape, cfg)?;
    if !legal.contains(&cell) {
        return Err(GameError::IllegalCell { cell, legal: format_cells(&legal) });
    }
    realize_digit_with(p, &pairs, cell)
        .ok_or_else(|| GameError::IllegalCell { cell, legal: format_cells(&legal) })
}

pub(crate) fn realize_digit_with(p: &Permutation, pairs: &[PrefixPair], cell: Cell) -> Option<u32> {
    (1..=p.len() as u32 + 1).find(|&m| cell_of_append_with(p, pairs, m).ok() == Some(cell))
}

/// Every `(t, cell)` with `cell` legal in `t` and `apply_cell(t, cell) == s`.
///
/// The shaded cell is always an outer corner `(λ_r, r)` of `s`. Either it
/// was entered from the left (`t_r = c - 1`, rows above in the same block
/// were `c` or `c - 1`) or from above (`t_{r-1} = c`).
pub fn predecessors(s: &Shape, cfg: &GameConfig) -> Vec<(Shape, Cell)> {
    let rows = s.rows();
    let h = rows.len();
    let mut out: Vec<(Shape, Cell)> = Vec::new();
    if s.is_empty() {
        return out;
    }
    if s.cell_count() == 1 {
        out.push((Shape::empty(cfg), Cell::new(1, 1)));
        return out;
    }
    for r in 0..h {
        let c = rows[r];
        let below = if r + 1 < h { rows[r + 1] } else { 0 };
        if c == 0 || below >= c {
            continue;
        }
        let cell = Cell::new(c, r as u32 + 1);
        let mut top = r;
        while top > 0 && rows[top - 1] == c {
            top -= 1;
        }
        let mut candidates: Vec<Vec<u32>> = Vec::new();
        if c >= 2 {
            for split in top..=r {
                let mut t = rows.to_vec();
                for (i, x) in t.iter_mut().enumerate().take(r + 1).skip(top) {
                    *x = if i < split { c } else { c - 1 };
                }
                candidates.push(t);
            }
        }
        if r > 0 {
            // Entered from above: (c, r-1) was already in the region.
            for v in below..c {
                let mut t = rows.to_vec();
                t[r] = v;
                candidates.push(t);
            }
        }
        for t in candidates {
            let t = Shape(t);
            if t.is_empty() || t == *s {
                continue;
            }
            if is_legal(&t, cell, cfg) && apply_unchecked(&t, cell) == *s {
                out.push((t, cell));
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// The cells actually shaded by the digits of `p`, in play order.
pub fn shaded_cells(p: &Permutation) -> Vec<Cell> {
    prefix_pairs(p).into_iter().map(PrefixPair::cell).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn cfg(a: u32, b: u32) -> GameConfig {
        GameConfig::new(a, b).unwrap()
    }

    fn shape(rows: &[u32], c: &GameConfig) -> Shape {
        Shape::new(rows.to_vec(), c).unwrap()
    }

    #[test]
    fn config_bounds() {
        assert!(GameConfig::new(1, 3).is_err());
        assert!(GameConfig::new(3, 65).is_err());
        let c = cfg(6, 5);
        assert_eq!((c.width(), c.height()), (5, 4));
        assert_eq!(cfg(5, 5).state_count(), 70);
        assert_eq!(cfg(9, 6).state_count(), 1287);
        assert_eq!(cfg(64, 64).state_count(), binomial_u128(126, 63));
    }

    #[test]
    fn prefix_pairs_of_example_permutation() {
        let got: Vec<(u32, u32)> =
            prefix_pairs(&perm("163425")).iter().map(|p| (p.inc, p.dec)).collect();
        assert_eq!(got, vec![(1, 1), (2, 1), (2, 2), (3, 2), (2, 3), (4, 2)]);
        assert!(prefix_pairs(&Permutation::empty()).is_empty());
        let got: Vec<(u32, u32)> =
            prefix_pairs(&perm("4321")).iter().map(|p| (p.inc, p.dec)).collect();
        assert_eq!(got, vec![(1, 1), (1, 2), (1, 3), (1, 4)]);
    }

    #[test]
    fn perm_to_shape_examples() {
        let c = cfg(6, 5);
        assert_eq!(perm_to_shape(&perm("163425"), &c).unwrap().rows(), &[4, 4, 2, 0]);
        assert_eq!(perm_to_shape(&Permutation::empty(), &c).unwrap().rows(), &[0, 0, 0, 0]);
        assert_eq!(perm_to_shape(&perm("12"), &cfg(5, 3)).unwrap().rows(), &[2, 0]);
    }

    #[test]
    fn perm_to_shape_rejects_finished_transcripts() {
        let err = perm_to_shape(&perm("123"), &cfg(3, 5)).unwrap_err();
        assert_eq!(err, GameError::PatternCompleted { position: 3, inc: 3, dec: 1 });
        assert!(perm_to_shape(&perm("21"), &cfg(4, 2)).is_err());
    }

    #[test]
    fn legal_cells_examples() {
        let c = cfg(6, 5);
        let mut expected = vec![
            Cell::new(5, 1),
            Cell::new(5, 2),
            Cell::new(3, 3),
            Cell::new(4, 3),
            Cell::new(2, 4),
            Cell::new(1, 4),
        ];
        expected.sort();
        assert_eq!(legal_cells(&shape(&[4, 4, 2, 0], &c), &c).unwrap(), expected);
        assert_eq!(legal_cells(&Shape::empty(&c), &c).unwrap(), vec![Cell::new(1, 1)]);
        let c3 = cfg(3, 3);
        assert_eq!(
            legal_cells(&shape(&[1, 0], &c3), &c3).unwrap(),
            vec![Cell::new(1, 2), Cell::new(2, 1)]
        );
        assert_eq!(legal_cells(&Shape::full(&c3), &c3), Err(GameError::NoLegalMoves));
    }

    #[test]
    fn apply_cell_examples() {
        let c = cfg(6, 5);
        let s = apply_cell(&shape(&[4, 4, 2, 0], &c), Cell::new(4, 3), &c).unwrap();
        assert_eq!(s.rows(), &[4, 4, 4, 0]);
        let c2 = cfg(3, 3);
        assert_eq!(apply_cell(&Shape::empty(&c2), Cell::new(1, 1), &c2).unwrap().rows(), &[1, 0]);
        let c3 = cfg(5, 3);
        assert_eq!(apply_cell(&shape(&[4, 2], &c3), Cell::new(4, 2), &c3).unwrap().rows(), &[4, 4]);
    }

    #[test]
    fn apply_cell_rejects_illegal() {
        let c = cfg(6, 5);
        let err = apply_cell(&shape(&[4, 4, 2, 0], &c), Cell::new(2, 2), &c).unwrap_err();
        match err {
            GameError::IllegalCell { cell, legal } => {
                assert_eq!(cell, Cell::new(2, 2));
                assert!(legal.contains("(5,1)"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn cell_of_append_examples() {
        let p = perm("163425");
        assert_eq!(cell_of_append(&p, 7).unwrap(), Cell::new(5, 1));
        assert_eq!(cell_of_append(&p, 1).unwrap(), Cell::new(1, 4));
        assert_eq!(cell_of_append(&p, 3).unwrap(), Cell::new(3, 3));
        assert!(matches!(cell_of_append(&p, 8), Err(GameError::DigitOutOfRange { .. })));
        assert!(cell_of_append(&p, 0).is_err());
    }

    #[test]
    fn realize_digit_examples() {
        let c = cfg(6, 5);
        // Digits 3 and 4 both land on (3,3).
        assert_eq!(realize_digit(&perm("163425"), Cell::new(3, 3), &c).unwrap(), 3);
        assert_eq!(realize_digit(&Permutation::empty(), Cell::new(1, 1), &c).unwrap(), 1);
        assert_eq!(realize_digit(&perm("1"), Cell::new(2, 1), &c).unwrap(), 2);
        assert!(realize_digit(&perm("163425"), Cell::new(1, 1), &c).is_err());
    }

    #[test]
    fn predecessors_invert_moves() {
        let c = cfg(6, 5);
        let s = shape(&[4, 4, 2, 0], &c);
        for cell in legal_cells(&s, &c).unwrap() {
            let next = apply_cell(&s, cell, &c).unwrap();
            assert!(predecessors(&next, &c).contains(&(s.clone(), cell)), "{next} via {cell}");
        }
        assert_eq!(
            predecessors(&shape(&[1, 0, 0, 0], &c), &c),
            vec![(Shape::empty(&c), Cell::new(1, 1))]
        );
    }

    #[test]
    fn text_forms() {
        assert_eq!(perm("163425").to_string(), "163425");
        let long: Permutation = "1 2 3 4 5 6 7 8 9 10".parse().unwrap();
        assert_eq!(long.to_string(), "1 2 3 4 5 6 7 8 9 10");
        assert!("1123".parse::<Permutation>().is_err());
        assert_eq!("(3,4)".parse::<Cell>().unwrap(), Cell::new(3, 4));
        assert_eq!(Cell::new(5, 1).to_string(), "(5,1)");
        let c = cfg(6, 5);
        assert_eq!(Shape::parse("4,4,2,0", &c).unwrap().to_string(), "4,4,2,0");
        assert!(Shape::parse("1,2,0,0", &c).is_err());
        assert!(Shape::parse("6,0,0,0", &c).is_err());
    }

    #[test]
    fn append_bumps_values() {
        let mut p = perm("163425");
        p.append(3).unwrap();
        assert_eq!(p.values(), &[1, 7, 4, 5, 2, 6, 3]);
    }
}
