//! Derivation scripts: equational proofs replayed step by step in the
//! free group modulo the presentation's relations.
//!
//! Every step is a free-group identity (cancel or insert an inverse
//! pair), an application of a named relation or previously proven claim
//! as a subword rewrite, or a bounded search over braid moves. A script
//! that checks adds its claim to the library, so later scripts can cite
//! it.
//!
//! Script files are line-oriented text (`# mcg-script v1`): a header with
//! name, constraint and claim, one step per line, `end` to close. See
//! [`parse_scripts`].

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::homology::{check_equation, OracleReport, ReportEntry};
use crate::presentation::{Equation, Presentation, RelationKind};
use crate::surface::{CurveConfiguration, CurveId, SurfaceSignature};
use crate::word::{Letter, Word};

/// Default cap on words visited by a braid-move search.
pub const DEFAULT_AUTO_BRAID_BUDGET: usize = 100_000;

/// How a named equation `lhs = rhs` is used as a subword rewrite.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Direction {
    /// replace `lhs` by `rhs`
    Forward,
    /// replace `rhs` by `lhs`
    Backward,
    /// replace `lhs^{-1}` by `rhs^{-1}`
    ForwardInverse,
    /// replace `rhs^{-1}` by `lhs^{-1}`
    BackwardInverse,
}

impl Direction {
    fn token(self) -> &'static str {
        match self {
            Direction::Forward => "fwd",
            Direction::Backward => "rev",
            Direction::ForwardInverse => "fwd-inv",
            Direction::BackwardInverse => "rev-inv",
        }
    }

    fn from_token(s: &str) -> Option<Self> {
        Some(match s {
            "fwd" => Direction::Forward,
            "rev" => Direction::Backward,
            "fwd-inv" => Direction::ForwardInverse,
            "rev-inv" => Direction::BackwardInverse,
            _ => return None,
        })
    }
}

/// One move of a derivation. Positions are 0-based letter indices into
/// the current word.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum StepOp {
    /// Remove the cancelling pair at `pos`, `pos+1`.
    FreeCancel { pos: usize },
    /// Insert `letter letter^{-1}` at `pos`.
    FreeInsert { pos: usize, letter: Letter },
    /// Rewrite a subword using a named relation or proven claim.
    ApplyEquation {
        name: String,
        pos: usize,
        dir: Direction,
    },
    /// Breadth-first search over braid and commutation moves from the
    /// current word to `target`, visiting at most `budget` words.
    AutoBraid { budget: usize, target: Word },
}

/// A step together with an optional expected result word for diagnostics.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ScriptStep {
    pub op: StepOp,
    pub expect: Option<Word>,
}

impl ScriptStep {
    pub fn new(op: StepOp) -> Self {
        ScriptStep { op, expect: None }
    }

    pub fn with_expect(op: StepOp, expect: Word) -> Self {
        ScriptStep {
            op,
            expect: Some(expect),
        }
    }
}

/// Signature predicate gating a script.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
pub struct Constraint {
    pub min_genus: u32,
    pub min_legs: u32,
    pub min_boundary: u32,
}

impl Constraint {
    pub fn none() -> Self {
        Constraint::default()
    }

    pub fn satisfied_by(&self, sig: &SurfaceSignature) -> bool {
        sig.genus() >= self.min_genus
            && sig.legs() >= self.min_legs
            && sig.boundary_count() >= self.min_boundary
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.min_genus > 0 {
            parts.push(format!("g>={}", self.min_genus));
        }
        if self.min_legs > 0 {
            parts.push(format!("N>={}", self.min_legs));
        }
        if self.min_boundary > 0 {
            parts.push(format!("n>={}", self.min_boundary));
        }
        if parts.is_empty() {
            f.write_str("none")
        } else {
            f.write_str(&parts.join(" "))
        }
    }
}

/// A named claim with a checked proof.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct DerivationScript {
    pub name: String,
    pub constraint: Constraint,
    pub claim: Equation,
    pub deps: Vec<String>,
    pub steps: Vec<ScriptStep>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CheckError {
    #[error("step {step}: unresolved equation name {name}")]
    UnresolvedName { step: usize, name: String },
    #[error("missing dependency {0} in library")]
    MissingDependency(String),
    #[error("step {step}: {detail} (current word: {word})")]
    StepMismatch {
        step: usize,
        detail: String,
        word: Word,
    },
    #[error("step {step}: expected {expected}, got {actual}")]
    ExpectMismatch {
        step: usize,
        expected: Word,
        actual: Word,
    },
    #[error("step {step}: braid search budget exceeded")]
    BudgetExceeded { step: usize },
    #[error("final word {got} does not reduce to the claimed right side {want}")]
    FinalMismatch { got: Word, want: Word },
    #[error("script {0} conflicts with an existing library claim of the same name")]
    ConflictingClaim(String),
    #[error("script {0} does not apply to this signature")]
    ConstraintUnsatisfied(String),
}

/// Proven claims, keyed by script name. Insertion is idempotent.
#[derive(Clone, Debug, Default)]
pub struct ScriptLibrary {
    claims: BTreeMap<String, Equation>,
}

impl ScriptLibrary {
    pub fn new() -> Self {
        ScriptLibrary::default()
    }

    pub fn contains(&self, name: &str) -> bool {
        self.claims.contains_key(name)
    }

    pub fn get(&self, name: &str) -> Option<&Equation> {
        self.claims.get(name)
    }

    pub fn len(&self) -> usize {
        self.claims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.claims.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &Equation)> {
        self.claims.iter()
    }
}

/// Pairs that commute / satisfy the braid relation, read off a
/// presentation's relation shapes.
pub struct BraidTable {
    comm: Vec<(CurveId, CurveId)>,
    braid: Vec<(CurveId, CurveId)>,
}

impl BraidTable {
    pub fn from_presentation(pres: &Presentation) -> Self {
        let mut comm = Vec::new();
        let mut braid = Vec::new();
        for eq in &pres.relations {
            if eq.kind != RelationKind::Braid {
                continue;
            }
            let ls = eq.lhs.letters();
            match ls.len() {
                2 => comm.push((ls[0].id, ls[1].id)),
                3 => braid.push((ls[0].id, ls[1].id)),
                _ => {}
            }
        }
        BraidTable { comm, braid }
    }

    fn commutes(&self, x: CurveId, y: CurveId) -> bool {
        self.comm
            .iter()
            .any(|&(a, b)| (a == x && b == y) || (a == y && b == x))
    }

    fn braids(&self, x: CurveId, y: CurveId) -> bool {
        self.braid
            .iter()
            .any(|&(a, b)| (a == x && b == y) || (a == y && b == x))
    }
}

fn resolve<'a>(
    pres: &'a Presentation,
    library: &'a ScriptLibrary,
    name: &str,
) -> Option<&'a Equation> {
    pres.relation(name).or_else(|| library.get(name))
}

/// Apply one step to a word. The boolean in the result marks whether an
/// auto-braid search ran out of budget.
fn apply_op(
    word: &Word,
    op: &StepOp,
    pres: &Presentation,
    library: &ScriptLibrary,
    table: &BraidTable,
    step_index: usize,
) -> Result<Word, CheckError> {
    let letters = word.letters();
    match op {
        StepOp::FreeCancel { pos } => {
            if *pos + 1 >= letters.len() || !letters[*pos].cancels(letters[*pos + 1]) {
                return Err(CheckError::StepMismatch {
                    step: step_index,
                    detail: format!("no cancelling pair at position {pos}"),
                    word: word.clone(),
                });
            }
            let mut out = letters.to_vec();
            out.drain(*pos..*pos + 2);
            Ok(Word::from_letters(out))
        }
        StepOp::FreeInsert { pos, letter } => {
            if *pos > letters.len() {
                return Err(CheckError::StepMismatch {
                    step: step_index,
                    detail: format!("insert position {pos} out of range"),
                    word: word.clone(),
                });
            }
            let mut out = letters.to_vec();
            out.splice(*pos..*pos, [*letter, letter.inverse()]);
            Ok(Word::from_letters(out))
        }
        StepOp::ApplyEquation { name, pos, dir } => {
            let Some(eq) = resolve(pres, library, name) else {
                return Err(CheckError::UnresolvedName {
                    step: step_index,
                    name: name.clone(),
                });
            };
            let (from, to) = match dir {
                Direction::Forward => (eq.lhs.clone(), eq.rhs.clone()),
                Direction::Backward => (eq.rhs.clone(), eq.lhs.clone()),
                Direction::ForwardInverse => (eq.lhs.inverse(), eq.rhs.inverse()),
                Direction::BackwardInverse => (eq.rhs.inverse(), eq.lhs.inverse()),
            };
            let end = pos + from.len();
            if end > letters.len() || &letters[*pos..end] != from.letters() {
                return Err(CheckError::StepMismatch {
                    step: step_index,
                    detail: format!(
                        "{name} ({}) does not match at position {pos}: wanted {from}",
                        dir.token()
                    ),
                    word: word.clone(),
                });
            }
            let mut out = letters[..*pos].to_vec();
            out.extend_from_slice(to.letters());
            out.extend_from_slice(&letters[end..]);
            Ok(Word::from_letters(out))
        }
        StepOp::AutoBraid { budget, target } => {
            match braid_search(word, target, *budget, table) {
                SearchOutcome::Found(_) => Ok(target.clone()),
                SearchOutcome::Exhausted => Err(CheckError::StepMismatch {
                    step: step_index,
                    detail: format!("no braid-move path to {target}"),
                    word: word.clone(),
                }),
                SearchOutcome::OutOfBudget => Err(CheckError::BudgetExceeded { step: step_index }),
            }
        }
    }
}

/// Replay a script. On success the claim is added to `library` under the
/// script's name; re-checking an already proven script is a no-op.
pub fn check_script(
    pres: &Presentation,
    library: &mut ScriptLibrary,
    script: &DerivationScript,
) -> Result<(), CheckError> {
    for dep in &script.deps {
        if !library.contains(dep) {
            return Err(CheckError::MissingDependency(dep.clone()));
        }
    }
    let table = BraidTable::from_presentation(pres);
    let mut word = script.claim.lhs.clone();
    for (i, step) in script.steps.iter().enumerate() {
        word = apply_op(&word, &step.op, pres, library, &table, i)?;
        if let Some(expect) = &step.expect {
            if &word != expect {
                return Err(CheckError::ExpectMismatch {
                    step: i,
                    expected: expect.clone(),
                    actual: word,
                });
            }
        }
    }
    if word.reduce() != script.claim.rhs.reduce() {
        return Err(CheckError::FinalMismatch {
            got: word.reduce(),
            want: script.claim.rhs.reduce(),
        });
    }
    if let Some(existing) = library.get(&script.name) {
        if existing.same_unordered(&script.claim.lhs, &script.claim.rhs) {
            return Ok(());
        }
        return Err(CheckError::ConflictingClaim(script.name.clone()));
    }
    library
        .claims
        .insert(script.name.clone(), script.claim.clone());
    Ok(())
}

/// Cross-validation: every proven claim must also pass the homology
/// oracle.
pub fn verify_library(config: &CurveConfiguration, library: &ScriptLibrary) -> OracleReport {
    let entries = library
        .iter()
        .map(|(name, eq)| ReportEntry {
            name: name.clone(),
            pass: check_equation(config, eq),
        })
        .collect();
    OracleReport::from_checks(entries)
}

enum SearchOutcome {
    Found(Vec<Word>),
    Exhausted,
    OutOfBudget,
}

/// Successors of a reduced word under single braid-family moves:
/// commutation swaps, braid triples `x y x -> y x y` (any common sign),
/// and the braid conjugation triples `x^e y^f x^{-e} -> y^{-e} x^f y^e`.
fn successors(w: &Word, table: &BraidTable) -> Vec<Word> {
    let ls = w.letters();
    let mut out = Vec::new();
    for p in 0..ls.len().saturating_sub(1) {
        let (x, y) = (ls[p], ls[p + 1]);
        if x.id != y.id && table.commutes(x.id, y.id) {
            let mut v = ls.to_vec();
            v.swap(p, p + 1);
            out.push(Word::from_letters(v).reduce());
        }
    }
    for p in 0..ls.len().saturating_sub(2) {
        let (x, y, z) = (ls[p], ls[p + 1], ls[p + 2]);
        if x.id == y.id || x.id != z.id || !table.braids(x.id, y.id) {
            continue;
        }
        if x.exp == y.exp && y.exp == z.exp {
            let mut v = ls.to_vec();
            v[p] = y;
            v[p + 1] = x;
            v[p + 2] = y;
            out.push(Word::from_letters(v).reduce());
        }
        if z.exp == -x.exp {
            // x^e y^f x^{-e} = y^{-e} x^f y^e
            let mut v = ls.to_vec();
            v[p] = Letter::new(y.id, -x.exp);
            v[p + 1] = Letter::new(x.id, y.exp);
            v[p + 2] = Letter::new(y.id, x.exp);
            out.push(Word::from_letters(v).reduce());
        }
    }
    out
}

fn braid_search(from: &Word, to: &Word, budget: usize, table: &BraidTable) -> SearchOutcome {
    let start = from.reduce();
    let goal = to.reduce();
    if start == goal {
        return SearchOutcome::Found(vec![]);
    }
    let mut parents: HashMap<Word, Word> = HashMap::new();
    let mut queue = VecDeque::new();
    parents.insert(start.clone(), start.clone());
    queue.push_back(start.clone());
    let mut visited = 1usize;
    while let Some(w) = queue.pop_front() {
        for next in successors(&w, table) {
            if parents.contains_key(&next) {
                continue;
            }
            parents.insert(next.clone(), w.clone());
            if next == goal {
                let mut path = vec![next.clone()];
                let mut cur = next;
                while parents[&cur] != cur {
                    cur = parents[&cur].clone();
                    path.push(cur.clone());
                }
                path.pop(); // drop the start word
                path.reverse();
                return SearchOutcome::Found(path);
            }
            visited += 1;
            if visited >= budget {
                return SearchOutcome::OutOfBudget;
            }
            queue.push_back(next);
        }
    }
    SearchOutcome::Exhausted
}

/// Bounded search for a braid-move bridge between two words. Returns one
/// step per move found, or `None` when no path exists within budget.
pub fn auto_braid_bridge(
    pres: &Presentation,
    from: &Word,
    to: &Word,
    budget: usize,
) -> Option<Vec<ScriptStep>> {
    let table = BraidTable::from_presentation(pres);
    match braid_search(from, to, budget.max(1), &table) {
        SearchOutcome::Found(path) => Some(
            path.into_iter()
                .map(|target| {
                    ScriptStep::new(StepOp::AutoBraid {
                        budget: 64,
                        target,
                    })
                })
                .collect(),
        ),
        _ => None,
    }
}

/// Serialize scripts in the versioned line-oriented format.
pub fn write_scripts(scripts: &[DerivationScript]) -> String {
    let mut out = String::from("# mcg-script v1\n");
    for s in scripts {
        out.push_str(&format!("\nscript {}\n", s.name));
        out.push_str(&format!("requires {}\n", s.constraint));
        if !s.deps.is_empty() {
            out.push_str(&format!("deps {}\n", s.deps.join(" ")));
        }
        out.push_str(&format!("claim {} = {}\n", s.claim.lhs, s.claim.rhs));
        for step in &s.steps {
            let line = match &step.op {
                StepOp::FreeCancel { pos } => format!("step cancel @{pos}"),
                StepOp::FreeInsert { pos, letter } => format!("step insert @{pos} {letter}"),
                StepOp::ApplyEquation { name, pos, dir } => {
                    format!("step apply {name} @{pos} {}", dir.token())
                }
                StepOp::AutoBraid { budget, target } => {
                    format!("step autobraid {budget} -> {target}")
                }
            };
            out.push_str(&line);
            if let Some(e) = &step.expect {
                if !matches!(step.op, StepOp::AutoBraid { .. }) {
                    out.push_str(&format!(" -> {e}"));
                }
            }
            out.push('\n');
        }
        out.push_str("end\n");
    }
    out
}

fn parse_constraint(s: &str) -> Result<Constraint, String> {
    let mut c = Constraint::none();
    if s.trim() == "none" {
        return Ok(c);
    }
    for part in s.split_whitespace() {
        if let Some(v) = part.strip_prefix("g>=") {
            c.min_genus = v.parse().map_err(|_| format!("bad constraint {part}"))?;
        } else if let Some(v) = part.strip_prefix("N>=") {
            c.min_legs = v.parse().map_err(|_| format!("bad constraint {part}"))?;
        } else if let Some(v) = part.strip_prefix("n>=") {
            c.min_boundary = v.parse().map_err(|_| format!("bad constraint {part}"))?;
        } else {
            return Err(format!("bad constraint {part}"));
        }
    }
    Ok(c)
}

fn parse_step(line: &str) -> Result<ScriptStep, String> {
    let rest = line.strip_prefix("step ").ok_or("expected step line")?;
    if let Some(rest) = rest.strip_prefix("autobraid ") {
        let (budget, target) = rest
            .split_once(" -> ")
            .ok_or("autobraid needs a target word")?;
        return Ok(ScriptStep::new(StepOp::AutoBraid {
            budget: budget.trim().parse().map_err(|_| "bad budget")?,
            target: target.parse()?,
        }));
    }
    let (body, expect) = match rest.split_once(" -> ") {
        Some((b, e)) => (b, Some(e.parse::<Word>()?)),
        None => (rest, None),
    };
    let toks: Vec<&str> = body.split_whitespace().collect();
    let op = match toks.as_slice() {
        ["cancel", pos] => StepOp::FreeCancel {
            pos: parse_pos(pos)?,
        },
        ["insert", pos, letter] => StepOp::FreeInsert {
            pos: parse_pos(pos)?,
            letter: letter.parse()?,
        },
        ["apply", name, pos, dir] => StepOp::ApplyEquation {
            name: name.to_string(),
            pos: parse_pos(pos)?,
            dir: Direction::from_token(dir).ok_or_else(|| format!("bad direction {dir}"))?,
        },
        _ => return Err(format!("unrecognized step line: {line}")),
    };
    Ok(ScriptStep { op, expect })
}

fn parse_pos(s: &str) -> Result<usize, String> {
    s.strip_prefix('@')
        .ok_or_else(|| format!("positions are written @<index>: {s}"))?
        .parse()
        .map_err(|_| format!("bad position {s}"))
}

/// Parse a script file. The first non-blank line must be the version
/// header `# mcg-script v1`.
pub fn parse_scripts(text: &str) -> Result<Vec<DerivationScript>, String> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
    match lines.next() {
        Some("# mcg-script v1") => {}
        other => return Err(format!("missing version header, found {other:?}")),
    }
    let mut out = Vec::new();
    let mut current: Option<DerivationScript> = None;
    for line in lines {
        if line.starts_with('#') {
            continue;
        }
        if let Some(name) = line.strip_prefix("script ") {
            if current.is_some() {
                return Err("script block not closed with end".into());
            }
            current = Some(DerivationScript {
                name: name.trim().to_string(),
                constraint: Constraint::none(),
                claim: Equation::new("", RelationKind::Derived, Word::empty(), Word::empty()),
                deps: Vec::new(),
                steps: Vec::new(),
            });
            continue;
        }
        let Some(script) = current.as_mut() else {
            return Err(format!("line outside a script block: {line}"));
        };
        if let Some(rest) = line.strip_prefix("requires ") {
            script.constraint = parse_constraint(rest)?;
        } else if let Some(rest) = line.strip_prefix("deps ") {
            script.deps = rest.split_whitespace().map(String::from).collect();
        } else if let Some(rest) = line.strip_prefix("claim ") {
            let (lhs, rhs) = rest.split_once(" = ").ok_or("claim needs lhs = rhs")?;
            script.claim = Equation::new(
                script.name.clone(),
                RelationKind::Derived,
                lhs.parse()?,
                rhs.parse()?,
            );
        } else if line.starts_with("step ") {
            script.steps.push(parse_step(line)?);
        } else if line == "end" {
            out.push(current.take().unwrap());
        } else {
            return Err(format!("unrecognized line: {line}"));
        }
    }
    if current.is_some() {
        return Err("unterminated script block".into());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::presentation;
    use crate::surface::make_signature;

    fn setup(g: i64, n: i64) -> (Presentation, CurveConfiguration) {
        let sig = make_signature(g, n).unwrap();
        let config = CurveConfiguration::for_signature(&sig);
        let pres = presentation(&sig, &config, true);
        (pres, config)
    }

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn braid_application_checks() {
        let (pres, _) = setup(1, 1);
        let mut lib = ScriptLibrary::new();
        let script = DerivationScript {
            name: "swap".into(),
            constraint: Constraint::none(),
            claim: Equation::new("swap", RelationKind::Derived, w("b a1 b"), w("a1 b a1")),
            deps: vec![],
            steps: vec![ScriptStep::new(StepOp::ApplyEquation {
                name: "T_b_a1".into(),
                pos: 0,
                dir: Direction::Forward,
            })],
        };
        check_script(&pres, &mut lib, &script).unwrap();
        assert!(lib.contains("swap"));
        // idempotent re-check
        check_script(&pres, &mut lib, &script).unwrap();
        assert_eq!(lib.len(), 1);
    }

    #[test]
    fn checker_rejects_wrong_final_word() {
        let (pres, _) = setup(1, 1);
        let mut lib = ScriptLibrary::new();
        let script = DerivationScript {
            name: "bogus".into(),
            constraint: Constraint::none(),
            claim: Equation::new("bogus", RelationKind::Derived, w("b a1 b"), w("a1 b b")),
            deps: vec![],
            steps: vec![ScriptStep::new(StepOp::ApplyEquation {
                name: "T_b_a1".into(),
                pos: 0,
                dir: Direction::Forward,
            })],
        };
        let err = check_script(&pres, &mut lib, &script).unwrap_err();
        assert!(matches!(err, CheckError::FinalMismatch { .. }));
        assert!(!lib.contains("bogus"));
    }

    #[test]
    fn insert_and_cancel() {
        let (pres, _) = setup(1, 1);
        let mut lib = ScriptLibrary::new();
        let script = DerivationScript {
            name: "wiggle".into(),
            constraint: Constraint::none(),
            claim: Equation::new("wiggle", RelationKind::Derived, w("a1"), w("a1")),
            deps: vec![],
            steps: vec![
                ScriptStep::new(StepOp::FreeInsert {
                    pos: 1,
                    letter: Letter::pos(CurveId::B),
                }),
                ScriptStep::with_expect(StepOp::FreeCancel { pos: 1 }, w("a1")),
            ],
        };
        check_script(&pres, &mut lib, &script).unwrap();
    }

    #[test]
    fn unresolved_name_reported() {
        let (pres, _) = setup(1, 1);
        let mut lib = ScriptLibrary::new();
        let script = DerivationScript {
            name: "ghost".into(),
            constraint: Constraint::none(),
            claim: Equation::new("ghost", RelationKind::Derived, w("a1"), w("a1")),
            deps: vec![],
            steps: vec![ScriptStep::new(StepOp::ApplyEquation {
                name: "E_9_9_9".into(),
                pos: 0,
                dir: Direction::Forward,
            })],
        };
        assert!(matches!(
            check_script(&pres, &mut lib, &script),
            Err(CheckError::UnresolvedName { .. })
        ));
    }

    #[test]
    fn auto_braid_examples() {
        let (pres, _) = setup(1, 1);
        // single braid move
        let steps = auto_braid_bridge(&pres, &w("b a1 b"), &w("a1 b a1"), 2).unwrap();
        assert_eq!(steps.len(), 1);
        // identity bridge
        let steps = auto_braid_bridge(&pres, &w("a1 b"), &w("a1 b"), 10).unwrap();
        assert!(steps.is_empty());
        // distinct generators are unreachable
        assert!(auto_braid_bridge(&pres, &w("a1"), &w("b"), 1_000_000).is_none());
    }

    #[test]
    fn auto_braid_bridges_splice_into_scripts() {
        let (pres, _) = setup(2, 0);
        let from = w("b a1 b a2");
        let to = w("a1 b a1 a2");
        let steps = auto_braid_bridge(&pres, &from, &to, 10_000).unwrap();
        let mut lib = ScriptLibrary::new();
        let script = DerivationScript {
            name: "bridge".into(),
            constraint: Constraint::none(),
            claim: Equation::new("bridge", RelationKind::Derived, from, to),
            deps: vec![],
            steps,
        };
        check_script(&pres, &mut lib, &script).unwrap();
    }

    #[test]
    fn conjugation_triple_moves_are_searchable() {
        let (pres, _) = setup(1, 1);
        // b a1 b' -> a1' b a1
        let steps = auto_braid_bridge(&pres, &w("b a1 b'"), &w("a1' b a1"), 1000);
        assert!(steps.is_some());
    }

    #[test]
    fn script_text_round_trip() {
        let (pres, _) = setup(1, 1);
        let script = DerivationScript {
            name: "swap".into(),
            constraint: Constraint {
                min_genus: 1,
                min_legs: 1,
                min_boundary: 0,
            },
            claim: Equation::new("swap", RelationKind::Derived, w("b a1 b"), w("a1 b a1")),
            deps: vec!["other".into()],
            steps: vec![
                ScriptStep::with_expect(
                    StepOp::ApplyEquation {
                        name: "T_b_a1".into(),
                        pos: 0,
                        dir: Direction::Forward,
                    },
                    w("a1 b a1"),
                ),
                ScriptStep::new(StepOp::AutoBraid {
                    budget: 99,
                    target: w("a1 b a1"),
                }),
                ScriptStep::new(StepOp::FreeInsert {
                    pos: 0,
                    letter: Letter::neg(CurveId::B),
                }),
                ScriptStep::new(StepOp::FreeCancel { pos: 0 }),
            ],
        };
        let text = write_scripts(&[script.clone()]);
        let parsed = parse_scripts(&text).unwrap();
        assert_eq!(parsed.len(), 1);
        assert_eq!(parsed[0], script);
        let _ = pres;
    }

    #[test]
    fn parse_rejects_missing_header() {
        assert!(parse_scripts("script x\nend\n").is_err());
    }
}
