//! Named families of positions that player 1 steers towards.
//!
//! For `b = 5` the seven midgame families `S1..S7` and three endgame families
//! `E1..E3` are all next-player-loss shapes. Every family is stated in terms
//! of row lengths `λ` and the open-cell count of row 1, `o = (a-1) - λ_1`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::board::{GameConfig, Shape};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    S1,
    S2,
    S3,
    S4,
    S5,
    S6,
    S7,
    E1,
    E2,
    E3,
    Opening,
    B3Ladder,
    B4Form1,
    B4Form2,
    EndgameTtt,
    None,
}

impl Family {
    pub const MIDGAME: [Family; 7] =
        [Family::S1, Family::S2, Family::S3, Family::S4, Family::S5, Family::S6, Family::S7];
    pub const ENDGAME: [Family; 3] = [Family::E1, Family::E2, Family::E3];

    pub fn is_midgame(self) -> bool {
        Self::MIDGAME.contains(&self)
    }

    pub fn is_endgame(self) -> bool {
        Self::ENDGAME.contains(&self)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Family::S1 => "S1",
            Family::S2 => "S2",
            Family::S3 => "S3",
            Family::S4 => "S4",
            Family::S5 => "S5",
            Family::S6 => "S6",
            Family::S7 => "S7",
            Family::E1 => "E1",
            Family::E2 => "E2",
            Family::E3 => "E3",
            Family::Opening => "OPENING",
            Family::B3Ladder => "B3_LADDER",
            Family::B4Form1 => "B4_FORM1",
            Family::B4Form2 => "B4_FORM2",
            Family::EndgameTtt => "ENDGAME_TTT",
            Family::None => "NONE",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MidgameClass {
    pub family: Family,
    /// Row-1 length parameter where the family has one.
    pub k: Option<u32>,
}

impl MidgameClass {
    pub const NONE: MidgameClass = MidgameClass { family: Family::None, k: None };

    fn new(family: Family, k: Option<u32>) -> Self {
        MidgameClass { family, k }
    }
}

impl fmt::Display for MidgameClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.k {
            Some(k) => write!(f, "{}(k={k})", self.family),
            None => write!(f, "{}", self.family),
        }
    }
}

fn rows_i64(s: &Shape) -> Vec<i64> {
    s.rows().iter().map(|&x| i64::from(x)).collect()
}

/// Raw template test for one `b = 5` family, without precedence.
/// Returns the family parameter `k` (row-1 length) on a match.
pub fn matches_family(family: Family, s: &Shape, cfg: &GameConfig) -> Option<u32> {
    if cfg.b() != 5 || s.height() != 4 {
        return None;
    }
    let w = i64::from(cfg.width());
    let l = rows_i64(s);
    let (l1, l2, l3, l4) = (l[0], l[1], l[2], l[3]);
    let k = l1;
    let open = w - k;
    let hit = match family {
        Family::S1 => k >= 2 && l2 == k - 1 && l3 == k - 1 && l4 == k - 1 && open % 2 == 1,
        Family::S2 => k >= 1 && l2 == k && l3 == k && l4 == k - 1 && open >= 2 && open % 2 == 0,
        Family::S3 => k >= 3 && l2 == k && l3 == k - 1 && l4 == k - 3 && open >= 2 && open % 2 == 0,
        Family::S4 => {
            k >= 2 && l2 == k - 1 && l3 == k - 1 && l4 == k - 2 && open >= 2 && open % 2 == 0
        }
        Family::S5 => k >= 3 && l2 == k && l3 == k - 2 && l4 == k - 2 && open >= 1,
        Family::S6 => k >= 3 && l2 == k - 1 && l3 == k - 2 && l4 == k - 3 && open >= 1,
        Family::S7 => l1 == l2 + 1 && l2 >= l3 + 2 && l3 == l4 + 1 && open >= 1,
        Family::E1 => {
            l.iter().all(|&x| x >= w - 2)
                && l.iter().filter(|&&x| x == w - 1).count() == 1
                && l.iter().any(|&x| x == w - 2)
        }
        Family::E2 => (0..=2).any(|p: i64| {
            let want: Vec<i64> = (0..4)
                .map(|i| if i < p { w } else if i < 3 { w - 1 } else { w - 4 + p })
                .collect();
            w - 4 + p >= 0 && l == want
        }),
        Family::E3 => l1 == w && l2 == w && l3 >= 1 && l3 < w && l4 == l3 - 1,
        _ => false,
    };
    hit.then_some(k as u32)
}

/// Families that match `s` ignoring precedence; used to audit overlaps.
pub fn matching_families(s: &Shape, cfg: &GameConfig) -> Vec<Family> {
    Family::ENDGAME
        .iter()
        .chain(Family::MIDGAME.iter())
        .copied()
        .filter(|&f| matches_family(f, s, cfg).is_some())
        .collect()
}

/// Classifies a position left by player 1. Families are tried in the order
/// E1, E2, E3, S1..S7; the first match wins.
pub fn classify(s: &Shape, cfg: &GameConfig) -> MidgameClass {
    let w = cfg.width();
    let rows = s.rows();
    match cfg.b() {
        3 => {
            let (i, j) = (rows[0], rows[1]);
            if i >= 1 && i < w && j + 1 == i {
                return MidgameClass::new(Family::B3Ladder, Some(i));
            }
            MidgameClass::NONE
        }
        4 => {
            let (x, y, z) = (rows[0], rows[1], rows[2]);
            if rows == [1, 0, 0] {
                return MidgameClass::new(Family::Opening, None);
            }
            if (2..w).contains(&x) && y == x && z + 2 == x {
                return MidgameClass::new(Family::B4Form1, Some(x));
            }
            if (2..w).contains(&x) && y + 1 == x && z + 1 == x {
                return MidgameClass::new(Family::B4Form2, Some(x));
            }
            if w >= 2 && x == w && y + 1 == w && z + 2 == w {
                return MidgameClass::new(Family::EndgameTtt, None);
            }
            MidgameClass::NONE
        }
        5 => {
            for family in Family::ENDGAME.iter().chain(Family::MIDGAME.iter()) {
                if let Some(k) = matches_family(*family, s, cfg) {
                    return MidgameClass::new(*family, Some(k));
                }
            }
            if rows == [1, 0, 0, 0] || rows == [2, 2, 0, 0] || (w.is_multiple_of(2) && rows == [3, 3, 3, 0])
            {
                return MidgameClass::new(Family::Opening, None);
            }
            MidgameClass::NONE
        }
        _ => MidgameClass::NONE,
    }
}

/// Every shape on a `b = 5` board matching one of the S/E templates.
pub fn template_shapes(cfg: &GameConfig) -> Vec<(Shape, MidgameClass)> {
    if cfg.b() != 5 {
        return Vec::new();
    }
    crate::solver::enumerate_shapes(cfg, u128::MAX)
        .map(|it| {
            it.filter_map(|s| {
                let class = classify(&s, cfg);
                (class.family.is_midgame() || class.family.is_endgame()).then_some((s, class))
            })
            .collect()
        })
        .unwrap_or_default()
}
