//! Python module `esgame`: sessions, the exact solver, strategies and the
//! boundary-word codec.

use std::sync::Arc;

use esgame_core as core;
use esgame_core::{
    BestMove, Cell, EngineError, GameConfig, GameError, Label, PlayPolicy, PolicyKind, Shape, StateTable, Status,
    StrategyError, Variant,
};
use esgame_core::strategy::AchievementChoice;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

pyo3::create_exception!(esgame, EsgameError, PyValueError, "Invalid input or an illegal move.");

fn err(e: impl std::fmt::Display) -> PyErr {
    EsgameError::new_err(e.to_string())
}

trait OrPy<T> {
    fn py_err(self) -> PyResult<T>;
}

impl<T> OrPy<T> for Result<T, GameError> {
    fn py_err(self) -> PyResult<T> {
        self.map_err(err)
    }
}

impl<T> OrPy<T> for Result<T, EngineError> {
    fn py_err(self) -> PyResult<T> {
        self.map_err(err)
    }
}

impl<T> OrPy<T> for Result<T, StrategyError> {
    fn py_err(self) -> PyResult<T> {
        self.map_err(err)
    }
}

fn config(a: u32, b: u32) -> PyResult<GameConfig> {
    GameConfig::new(a, b).py_err()
}

fn variant(v: &str) -> PyResult<Variant> {
    v.parse::<Variant>().py_err()
}

fn shape(rows: Vec<u32>, cfg: &GameConfig) -> PyResult<Shape> {
    let mut rows = rows;
    rows.resize(cfg.height() as usize, 0);
    Shape::new(rows, cfg).py_err()
}

fn pair(c: Cell) -> (u32, u32) {
    (c.c, c.r)
}

/// A fully solved `(a, b)` game: every shape labeled win or loss for the mover.
#[pyclass(frozen, module = "esgame")]
pub struct Solver {
    table: Arc<StateTable>,
}

#[pymethods]
impl Solver {
    #[new]
    #[pyo3(signature = (a, b, variant = "avoidance", max_states = core::DEFAULT_STATE_LIMIT))]
    fn new(py: Python<'_>, a: u32, b: u32, variant: &str, max_states: u128) -> PyResult<Self> {
        let cfg = config(a, b)?;
        let v = self::variant(variant)?;
        let table = py.detach(|| core::label_states_with_limit(&cfg, v, max_states)).py_err()?;
        Ok(Solver { table: Arc::new(table) })
    }

    /// 1 or 2: who wins from the empty board with perfect play.
    #[getter]
    fn winner(&self) -> u8 {
        core::table_winner(&self.table).number()
    }

    #[getter]
    fn states(&self) -> usize {
        self.table.len()
    }

    #[getter]
    fn loss_states(&self) -> u64 {
        self.table.loss_count()
    }

    /// `"win"` or `"loss"` for the player to move at `rows`.
    fn label(&self, rows: Vec<u32>) -> PyResult<&'static str> {
        let s = shape(rows, self.table.config())?;
        Ok(match self.table.label(&s) {
            Label::Win => "win",
            Label::Loss => "loss",
        })
    }

    /// Winning cells `(c, r)` from `rows`; `"complete"` marks an immediate
    /// completing move in the achievement game.
    fn best_moves(&self, py: Python<'_>, rows: Vec<u32>) -> PyResult<Vec<Py<PyAny>>> {
        let s = shape(rows, self.table.config())?;
        core::best_moves(&s, &self.table)
            .into_iter()
            .map(|m| match m {
                BestMove::Cell(c) => Ok(pair(c).into_pyobject(py)?.into_any().unbind()),
                BestMove::CompleteNow => Ok("complete".into_pyobject(py)?.into_any().unbind()),
            })
            .collect()
    }

    /// `a,b,variant,loss_count,total,fraction`.
    fn csv_row(&self) -> String {
        core::census_of(&self.table).csv_row()
    }

    fn __repr__(&self) -> String {
        let cfg = self.table.config();
        format!("Solver(a={}, b={}, variant={:?})", cfg.a(), cfg.b(), self.table.variant().to_string())
    }
}

/// One game: append digits, query the board, let an engine move.
#[pyclass(module = "esgame")]
pub struct Session {
    inner: core::Session,
}

#[pymethods]
impl Session {
    #[new]
    #[pyo3(signature = (a, b, variant = "avoidance", digits = None))]
    fn new(a: u32, b: u32, variant: &str, digits: Option<Vec<u32>>) -> PyResult<Self> {
        let cfg = config(a, b)?;
        let v = self::variant(variant)?;
        let inner = core::Session::replay(cfg, v, &digits.unwrap_or_default()).py_err()?;
        Ok(Session { inner })
    }

    #[getter]
    fn id(&self) -> String {
        self.inner.id().to_string()
    }

    #[getter]
    fn a(&self) -> u32 {
        self.inner.config().a()
    }

    #[getter]
    fn b(&self) -> u32 {
        self.inner.config().b()
    }

    #[getter]
    fn variant(&self) -> String {
        self.inner.variant().to_string()
    }

    /// The permutation built so far.
    #[getter]
    fn transcript(&self) -> Vec<u32> {
        self.inner.transcript().values().to_vec()
    }

    /// Digits in the order they were played.
    #[getter]
    fn digits(&self) -> Vec<u32> {
        self.inner.digits()
    }

    #[getter]
    fn shape(&self) -> Vec<u32> {
        self.inner.shape().rows().to_vec()
    }

    #[getter]
    fn to_move(&self) -> u8 {
        self.inner.to_move().number()
    }

    #[getter]
    fn is_finished(&self) -> bool {
        self.inner.is_finished()
    }

    #[getter]
    fn winner(&self) -> Option<u8> {
        self.inner.winner().map(|p| p.number())
    }

    /// `"I_a"` or `"J_b"` once the game is over.
    #[getter]
    fn reason(&self) -> Option<String> {
        match self.inner.status() {
            Status::Finished { reason, .. } => Some(reason.to_string()),
            Status::InProgress => None,
        }
    }

    fn legal_cells(&self) -> Vec<(u32, u32)> {
        self.inner.legal_cells().into_iter().map(pair).collect()
    }

    /// `((c, r), digit)` for each legal cell and the smallest digit shading it.
    fn legal_digits(&self) -> Vec<((u32, u32), u32)> {
        self.inner.legal_digits().into_iter().map(|(c, m)| (pair(c), m)).collect()
    }

    /// Appends `digit`; returns the cell it landed on (off the board if it ended the game).
    fn play_digit(&mut self, digit: u32) -> PyResult<(u32, u32)> {
        Ok(pair(self.inner.play_digit(digit).py_err()?.cell))
    }

    /// Shades `(c, r)`; returns the digit used.
    fn play_cell(&mut self, c: u32, r: u32) -> PyResult<u32> {
        Ok(self.inner.play_cell(Cell::new(c, r)).py_err()?.digit)
    }

    /// Lets an engine (`strategy`, `solver` or `random`) make one move; returns the digit.
    #[pyo3(signature = (policy = "strategy", solver = None, seed = 0))]
    fn engine_reply(&mut self, policy: &str, solver: Option<&Solver>, seed: u64) -> PyResult<u32> {
        let mut p = match policy.parse::<PolicyKind>().py_err()? {
            PolicyKind::Strategy => PlayPolicy::Strategy,
            PolicyKind::Solver => PlayPolicy::Solver,
            PolicyKind::Random => PlayPolicy::random(seed),
            PolicyKind::Script => return Err(err("script policies are not available here")),
        };
        let table = solver.map(|s| s.table.as_ref());
        Ok(core::engine_reply(&mut self.inner, &mut p, table).py_err()?.digit)
    }

    /// One-line game log, once the game is over.
    fn log(&self) -> Option<String> {
        self.inner.log().map(|l| l.to_string())
    }

    fn __repr__(&self) -> String {
        format!("Session(a={}, b={}, transcript={:?})", self.a(), self.b(), self.transcript())
    }
}

/// Staircase row lengths reached by the permutation `perm`.
#[pyfunction]
fn perm_to_shape(perm: Vec<u32>, a: u32, b: u32) -> PyResult<Vec<u32>> {
    let cfg = config(a, b)?;
    let p = core::Permutation::new(perm).py_err()?;
    Ok(core::perm_to_shape(&p, &cfg).py_err()?.rows().to_vec())
}

#[pyfunction]
fn legal_cells(rows: Vec<u32>, a: u32, b: u32) -> PyResult<Vec<(u32, u32)>> {
    let cfg = config(a, b)?;
    let s = shape(rows, &cfg)?;
    Ok(core::legal_cells(&s, &cfg).py_err()?.into_iter().map(pair).collect())
}

#[pyfunction]
fn apply_cell(rows: Vec<u32>, c: u32, r: u32, a: u32, b: u32) -> PyResult<Vec<u32>> {
    let cfg = config(a, b)?;
    let s = shape(rows, &cfg)?;
    Ok(core::apply_cell(&s, Cell::new(c, r), &cfg).py_err()?.rows().to_vec())
}

#[pyfunction]
fn shape_to_word(rows: Vec<u32>, a: u32, b: u32) -> PyResult<String> {
    let cfg = config(a, b)?;
    Ok(core::shape_to_word(&shape(rows, &cfg)?).py_err()?.to_string())
}

#[pyfunction]
fn word_to_shape(word: &str, a: u32, b: u32) -> PyResult<Vec<u32>> {
    let cfg = config(a, b)?;
    let w: core::BoundaryWord = word.parse::<core::BoundaryWord>().py_err()?;
    Ok(core::word_to_shape(&w, &cfg).py_err()?.rows().to_vec())
}

/// Player 1's strategy move at `rows`: a cell `(c, r)`, or `"max"` / `"min"`
/// for a new maximum or minimum that completes a pattern.
#[pyfunction]
#[pyo3(signature = (rows, a, b, variant = "avoidance"))]
fn strategy_move(py: Python<'_>, rows: Vec<u32>, a: u32, b: u32, variant: &str) -> PyResult<Py<PyAny>> {
    let cfg = config(a, b)?;
    let s = shape(rows, &cfg)?;
    match self::variant(variant)? {
        Variant::Avoidance => Ok(pair(core::avoidance_move(&s, &cfg).py_err()?).into_pyobject(py)?.into_any().unbind()),
        Variant::Achievement => match core::strategy::achievement_choice(&s, &cfg).py_err()? {
            AchievementChoice::Cell(c) => Ok(pair(c).into_pyobject(py)?.into_any().unbind()),
            AchievementChoice::CompleteMax => Ok("max".into_pyobject(py)?.into_any().unbind()),
            AchievementChoice::CompleteMin => Ok("min".into_pyobject(py)?.into_any().unbind()),
        },
    }
}

/// Solves the game and certifies player 1's strategy against it.
#[pyfunction]
#[pyo3(signature = (a, b, variant = "avoidance"))]
fn verify_strategy<'py>(py: Python<'py>, a: u32, b: u32, variant: &str) -> PyResult<Bound<'py, PyDict>> {
    let cfg = config(a, b)?;
    let v = self::variant(variant)?;
    let report = py.detach(|| core::exhaustive_verify(&cfg, v)).py_err()?;
    let d = PyDict::new(py);
    d.set_item("passed", report.passed())?;
    d.set_item("decisions", report.entries.len())?;
    d.set_item("failures", report.failures())?;
    d.set_item("fallbacks", report.fallbacks())?;
    d.set_item("min_length", report.min_length())?;
    d.set_item("max_length", report.max_length())?;
    d.set_item("report", report.to_text())?;
    Ok(d)
}

/// Engine-vs-engine games; returns wins and the length histogram.
#[pyfunction]
#[allow(clippy::too_many_arguments)]
#[pyo3(signature = (a, b, variant = "avoidance", p1 = "strategy", p2 = "random", trials = 100, seed = 0))]
fn simulate<'py>(
    py: Python<'py>,
    a: u32,
    b: u32,
    variant: &str,
    p1: &str,
    p2: &str,
    trials: u64,
    seed: u64,
) -> PyResult<Bound<'py, PyDict>> {
    let cfg = config(a, b)?;
    let v = self::variant(variant)?;
    let policy = |name: &str, seed: u64| -> PyResult<PlayPolicy> {
        match name.parse::<PolicyKind>().py_err()? {
            PolicyKind::Strategy => Ok(PlayPolicy::Strategy),
            PolicyKind::Solver => Ok(PlayPolicy::Solver),
            PolicyKind::Random => Ok(PlayPolicy::random(seed)),
            PolicyKind::Script => Err(err("script policies are not available here")),
        }
    };
    let mut first = policy(p1, seed)?;
    let mut second = policy(p2, seed.wrapping_add(1))?;
    let stats = py
        .detach(|| {
            let table = if [&first, &second].iter().any(|p| p.kind() != PolicyKind::Random) {
                Some(core::label_states(&cfg, v)?)
            } else {
                None
            };
            core::simulate(cfg, v, &mut first, &mut second, trials, table.as_ref())
        })
        .py_err()?;
    let d = PyDict::new(py);
    d.set_item("games", stats.games)?;
    d.set_item("player1_wins", stats.player1_wins)?;
    d.set_item("player2_wins", stats.player2_wins)?;
    d.set_item("min_length", stats.min_length)?;
    d.set_item("max_length", stats.max_length)?;
    d.set_item("histogram", stats.histogram)?;
    Ok(d)
}

#[pymodule]
fn esgame(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("EsgameError", m.py().get_type::<EsgameError>())?;
    m.add_class::<Solver>()?;
    m.add_class::<Session>()?;
    m.add_function(wrap_pyfunction!(perm_to_shape, m)?)?;
    m.add_function(wrap_pyfunction!(legal_cells, m)?)?;
    m.add_function(wrap_pyfunction!(apply_cell, m)?)?;
    m.add_function(wrap_pyfunction!(shape_to_word, m)?)?;
    m.add_function(wrap_pyfunction!(word_to_shape, m)?)?;
    m.add_function(wrap_pyfunction!(strategy_move, m)?)?;
    m.add_function(wrap_pyfunction!(verify_strategy, m)?)?;
    m.add_function(wrap_pyfunction!(simulate, m)?)?;
    Ok(())
}
