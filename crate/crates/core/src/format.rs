//! Plain-text scenario files.
//!
//! ```text
//! grid 3 2
//! start 1 0
//! moves down,left,right
//! norevisit true
//! ...
//! A#B
//! model coffee goal=A beta=inf
//! model mail goal=B beta=2
//! m0 prior=0.1
//! priors 0.45,0.45
//! ```
//!
//! Grid rows use `.` free, `#` wall, `<` `>` `^` `v` directional and `A`-`Z`
//! objects. A model may carry `cost=<c>` (default 1). `m0 prior=0 legacy`
//! admits a zero M0 prior. Blank lines are ignored. [`serialize_scenario`]
//! writes the canonical form, which parses back to identical bytes.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::scenario::{AgentModel, Cell, Coord, Direction, GridScenario, HypothesisSet, MoveSet};

struct Lines<'a> {
    inner: std::iter::Peekable<Box<dyn Iterator<Item = (usize, &'a str)> + 'a>>,
    last: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let it: Box<dyn Iterator<Item = (usize, &'a str)>> =
            Box::new(text.lines().enumerate().map(|(i, l)| (i + 1, l.trim_end())).filter(|(_, l)| !l.is_empty()));
        Lines { inner: it.peekable(), last: 0 }
    }

    fn next(&mut self, what: &str) -> Result<(usize, &'a str)> {
        match self.inner.next() {
            Some((n, l)) => {
                self.last = n;
                Ok((n, l))
            }
            None => {
                Err(Error::Parse { line: self.last + 1, reason: format!("unexpected end of file, expected {what}") })
            }
        }
    }

    fn peek_keyword(&mut self) -> Option<&'a str> {
        self.inner.peek().and_then(|(_, l)| l.split_whitespace().next())
    }
}

fn parse_err(line: usize, reason: impl Into<String>) -> Error {
    Error::Parse { line, reason: reason.into() }
}

fn invariant(line: usize, e: Error) -> Error {
    match e {
        Error::InvalidScenario(r) | Error::InvalidModel(r) | Error::InvalidHypothesis(r) => {
            Error::Invariant { line, reason: r }
        }
        other => other,
    }
}

/// Splits `line` into its keyword and arguments, checking the keyword.
fn keyword<'a>(line: usize, text: &'a str, expect: &str) -> Result<Vec<&'a str>> {
    let mut parts = text.split_whitespace();
    match parts.next() {
        Some(k) if k == expect => Ok(parts.collect()),
        _ => Err(parse_err(line, format!("expected `{expect}` line"))),
    }
}

fn number<T: std::str::FromStr>(line: usize, s: &str, what: &str) -> Result<T> {
    s.parse().map_err(|_| parse_err(line, format!("invalid {what} `{s}`")))
}

fn probability(line: usize, s: &str) -> Result<f64> {
    let p: f64 = number(line, s, "probability")?;
    if !p.is_finite() {
        return Err(parse_err(line, format!("invalid probability `{s}`")));
    }
    Ok(p)
}

fn beta(line: usize, s: &str) -> Result<f64> {
    if s == "inf" {
        return Ok(f64::INFINITY);
    }
    let b: f64 = number(line, s, "beta")?;
    if !b.is_finite() {
        return Err(parse_err(line, format!("invalid beta `{s}`")));
    }
    Ok(b)
}

/// `key=value` argument with a known key.
fn kv<'a>(line: usize, arg: &'a str, key: &str) -> Result<&'a str> {
    arg.strip_prefix(key)
        .and_then(|r| r.strip_prefix('='))
        .ok_or_else(|| parse_err(line, format!("expected `{key}=...`, got `{arg}`")))
}

pub fn parse_scenario(text: &str) -> Result<(GridScenario, HypothesisSet)> {
    let mut lines = Lines::new(text);

    let (n, l) = lines.next("`grid` line")?;
    let args = keyword(n, l, "grid")?;
    let [w, h] = args[..] else {
        return Err(parse_err(n, "expected `grid <width> <height>`"));
    };
    let (width, height): (usize, usize) = (number(n, w, "width")?, number(n, h, "height")?);
    if width == 0 || height == 0 {
        return Err(Error::Invariant { line: n, reason: "grid dimensions must be positive".into() });
    }
    let grid_line = n;

    let (n, l) = lines.next("`start` line")?;
    let args = keyword(n, l, "start")?;
    let [c, r] = args[..] else {
        return Err(parse_err(n, "expected `start <col> <row>`"));
    };
    let start = Coord::new(number(n, c, "column")?, number(n, r, "row")?);
    let start_line = n;

    let (n, l) = lines.next("`moves` line")?;
    let args = keyword(n, l, "moves")?;
    let [list] = args[..] else {
        return Err(parse_err(n, "expected `moves <dir>,<dir>,...`"));
    };
    let mut moves = MoveSet::default();
    for name in list.split(',') {
        let d = Direction::from_name(name).ok_or_else(|| parse_err(n, format!("unknown direction `{name}`")))?;
        if moves.contains(d) {
            return Err(parse_err(n, format!("direction `{name}` listed twice")));
        }
        moves.insert(d);
    }

    let (n, l) = lines.next("`norevisit` line")?;
    let args = keyword(n, l, "norevisit")?;
    let no_revisit = match args[..] {
        ["true"] => true,
        ["false"] => false,
        _ => return Err(parse_err(n, "expected `norevisit <true|false>`")),
    };

    let mut cells = Vec::with_capacity(width * height);
    for _ in 0..height {
        let (n, row) = lines.next("grid row")?;
        let glyphs: Vec<char> = row.chars().collect();
        if glyphs.len() != width {
            return Err(parse_err(n, format!("grid row has {} cells, expected {width}", glyphs.len())));
        }
        for (col, g) in glyphs.into_iter().enumerate() {
            let cell =
                Cell::from_glyph(g).ok_or_else(|| parse_err(n, format!("unknown cell glyph `{g}` in column {col}")))?;
            cells.push(cell);
        }
    }
    let scenario = GridScenario::new(width, height, cells, start, moves, no_revisit).map_err(|e| {
        let line =
            if matches!(&e, Error::InvalidScenario(r) if r.starts_with("start")) { start_line } else { grid_line };
        invariant(line, e)
    })?;

    let mut models = Vec::new();
    while lines.peek_keyword() == Some("model") {
        let (n, l) = lines.next("model")?;
        let args = keyword(n, l, "model")?;
        let (id, goal, b, cost) = match args[..] {
            [id, g, b] => (id, kv(n, g, "goal")?, beta(n, kv(n, b, "beta")?)?, 1.0),
            [id, g, b, c] => {
                (id, kv(n, g, "goal")?, beta(n, kv(n, b, "beta")?)?, number(n, kv(n, c, "cost")?, "cost")?)
            }
            _ => return Err(parse_err(n, "expected `model <id> goal=<label> beta=<value>`")),
        };
        let mut chars = goal.chars();
        let label = match (chars.next(), chars.next()) {
            (Some(c), None) => c,
            _ => return Err(parse_err(n, format!("goal must be a single object label, got `{goal}`"))),
        };
        let model = AgentModel::with_step_cost(id, label, b, cost).map_err(|e| invariant(n, e))?;
        model.goal_cell(&scenario).map_err(|e| invariant(n, e))?;
        models.push(model);
    }

    let (n, l) = lines.next("`m0` line")?;
    let args = keyword(n, l, "m0")?;
    let (m0_prior, legacy) = match args[..] {
        [p] => (probability(n, kv(n, p, "prior")?)?, false),
        [p, "legacy"] => (probability(n, kv(n, p, "prior")?)?, true),
        _ => return Err(parse_err(n, "expected `m0 prior=<p>`")),
    };
    let m0_line = n;

    let (n, l) = lines.next("`priors` line")?;
    let args = keyword(n, l, "priors")?;
    let priors = match args[..] {
        [] => Vec::new(),
        [list] => list.split(',').map(|p| probability(n, p)).collect::<Result<Vec<_>>>()?,
        _ => return Err(parse_err(n, "expected `priors <p1>,<p2>,...`")),
    };
    if priors.len() != models.len() {
        return Err(Error::Invariant {
            line: n,
            reason: format!("{} priors given for {} models", priors.len(), models.len()),
        });
    }
    let hs = if legacy {
        HypothesisSet::legacy(&scenario, models, priors, m0_prior)
    } else {
        HypothesisSet::new(&scenario, models, priors, m0_prior)
    }
    .map_err(|e| invariant(if m0_prior == 0.0 { m0_line } else { n }, e))?;

    if let Ok((n, _)) = lines.next("end") {
        return Err(parse_err(n, "unexpected content after `priors`"));
    }
    Ok((scenario, hs))
}

fn fmt_beta(b: f64) -> String {
    if b == f64::INFINITY {
        "inf".into()
    } else {
        b.to_string()
    }
}

/// Canonical text of a scenario and hypothesis set.
pub fn serialize_scenario(scenario: &GridScenario, hs: &HypothesisSet) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "grid {} {}", scenario.width(), scenario.height());
    let _ = writeln!(out, "start {} {}", scenario.start().col, scenario.start().row);
    let moves: Vec<&str> = [Direction::Up, Direction::Down, Direction::Left, Direction::Right]
        .into_iter()
        .filter(|d| scenario.allowed_moves().contains(*d))
        .map(Direction::name)
        .collect();
    let _ = writeln!(out, "moves {}", moves.join(","));
    let _ = writeln!(out, "norevisit {}", scenario.no_revisit());
    for row in scenario.cells().chunks(scenario.width()) {
        out.extend(row.iter().map(|c| c.glyph()));
        out.push('\n');
    }
    for m in hs.models() {
        let _ = write!(out, "model {} goal={} beta={}", m.id(), m.goal(), fmt_beta(m.beta()));
        if m.step_cost() != 1.0 {
            let _ = write!(out, " cost={}", m.step_cost());
        }
        out.push('\n');
    }
    let _ = write!(out, "m0 prior={}", hs.m0_prior());
    if hs.is_legacy() {
        out.push_str(" legacy");
    }
    out.push('\n');
    let priors: Vec<String> = hs.priors().iter().map(f64::to_string).collect();
    if priors.is_empty() {
        out.push_str("priors\n");
    } else {
        let _ = writeln!(out, "priors {}", priors.join(","));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const CORRIDOR: &str =
        "grid 3 1\nstart 0 0\nmoves right\nnorevisit true\n..G\nmodel g goal=G beta=inf\nm0 prior=0.1\npriors 0.9\n";

    #[test]
    fn corridor_round_trips() {
        let (s, hs) = parse_scenario(CORRIDOR).unwrap();
        assert_eq!((s.width(), s.height()), (3, 1));
        assert_eq!(hs.models().len(), 1);
        assert_eq!(hs.m0_prior(), 0.1);
        assert_eq!(serialize_scenario(&s, &hs), CORRIDOR);
    }

    #[test]
    fn priors_must_sum_to_one() {
        let text = CORRIDOR.replace("priors 0.9", "priors 0.8");
        assert!(matches!(parse_scenario(&text), Err(Error::Invariant { line: 8, .. })));
    }

    #[test]
    fn unknown_glyph_reports_its_line() {
        let text = CORRIDOR.replace("..G", ".?G");
        match parse_scenario(&text) {
            Err(Error::Parse { line, reason }) => {
                assert_eq!(line, 5);
                assert!(reason.contains('?'));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn zero_m0_prior_needs_legacy_flag() {
        let text = CORRIDOR.replace("m0 prior=0.1", "m0 prior=0").replace("priors 0.9", "priors 1");
        assert!(matches!(parse_scenario(&text), Err(Error::Invariant { line: 7, .. })));
        let legacy = text.replace("m0 prior=0", "m0 prior=0 legacy");
        let (s, hs) = parse_scenario(&legacy).unwrap();
        assert!(hs.is_legacy());
        assert_eq!(serialize_scenario(&s, &hs), legacy);
    }

    #[test]
    fn goal_must_be_an_object() {
        let text = CORRIDOR.replace("goal=G", "goal=X");
        assert!(matches!(parse_scenario(&text), Err(Error::Invariant { line: 6, .. })));
    }

    #[test]
    fn optional_cost_and_betas() {
        let text = "grid 2 1\nstart 0 0\nmoves left,right\nnorevisit false\nAB\nmodel a goal=A beta=0\nmodel b goal=B beta=2.5 cost=3\nm0 prior=0.01\npriors 0.445,0.545\n";
        let (s, hs) = parse_scenario(text).unwrap();
        assert_eq!(hs.models()[1].step_cost(), 3.0);
        assert_eq!(hs.models()[0].beta(), 0.0);
        assert_eq!(serialize_scenario(&s, &hs), text);
    }

    #[test]
    fn truncated_file() {
        let text = "grid 3 1\nstart 0 0\nmoves right\n";
        assert!(matches!(parse_scenario(text), Err(Error::Parse { line: 4, .. })));
    }
}
