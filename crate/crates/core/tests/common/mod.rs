//! Independent reference implementations shared by the integration tests.
#![allow(dead_code)]

use esgame_core::{Cell, GameConfig, Shape};
use itertools::Itertools;

pub fn cfg(a: u32, b: u32) -> GameConfig {
    GameConfig::new(a, b).unwrap()
}

/// `(inc, dec)` of the last entry by plain dynamic programming.
pub fn naive_last_pair(v: &[u32]) -> (u32, u32) {
    let n = v.len();
    let mut inc = vec![1u32; n];
    let mut dec = vec![1u32; n];
    for i in 0..n {
        for j in 0..i {
            if v[j] < v[i] {
                inc[i] = inc[i].max(inc[j] + 1);
            } else {
                dec[i] = dec[i].max(dec[j] + 1);
            }
        }
    }
    (inc[n - 1], dec[n - 1])
}

/// Whether `v` contains an increasing run of length `a` or a decreasing run of length `b`.
pub fn has_pattern(v: &[u32], a: u32, b: u32) -> bool {
    (1..=v.len()).any(|k| {
        let (inc, dec) = naive_last_pair(&v[..k]);
        inc >= a || dec >= b
    })
}

/// Appends `m`, shifting entries `>= m` up by one.
pub fn bump(v: &[u32], m: u32) -> Vec<u32> {
    let mut out: Vec<u32> = v.iter().map(|&x| if x >= m { x + 1 } else { x }).collect();
    out.push(m);
    out
}

pub fn perms_of(n: u32) -> impl Iterator<Item = Vec<u32>> {
    (1..=n).permutations(n as usize)
}

/// Reads the boundary directly off the cell set: bottom-left to top-right,
/// one letter per cell with an exposed bottom and/or right edge.
pub fn oracle_word(s: &Shape) -> String {
    let h = s.height() as u32;
    let mut out = String::new();
    for r in (1..=h).rev() {
        for c in 1..=s.row(r) {
            let bottom = !s.contains(Cell::new(c, r + 1));
            let right = !s.contains(Cell::new(c + 1, r));
            match (bottom, right) {
                (true, true) => out.push('P'),
                (true, false) => out.push('R'),
                (false, true) => out.push('B'),
                (false, false) => {}
            }
        }
    }
    out
}

/// Mover can complete a pattern at once (achievement).
pub fn can_complete(s: &Shape, c: &GameConfig) -> bool {
    s.row(1) == c.width() || s.row(c.height()) >= 1
}
