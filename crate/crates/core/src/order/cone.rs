use std::fmt;

use serde::Serialize;

use super::ball::Ball;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    /// One-sided order: the cone is a subsemigroup with `G = P ⊔ P⁻¹ ⊔ {1}`.
    Left,
    /// Two-sided order: additionally closed under conjugation.
    Bi,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Left => "left",
            Mode::Bi => "bi",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "left" => Ok(Mode::Left),
            "bi" => Ok(Mode::Bi),
            other => Err(format!("unknown mode `{other}` (expected `left` or `bi`)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axiom {
    /// Branch hypothesis `[e]`: `e ∈ P`.
    Assume,
    /// Case split `[e]`: exactly one of `e`, `e⁻¹` is positive. Followed by
    /// the branch assuming `e`, then the branch assuming `e⁻¹`.
    SignTotality,
    /// `[a, b, c]`: `a, b ∈ P` and `a·b = c` give `c ∈ P`.
    ProductClosure,
    /// `[a, h, c]`: `a ∈ P` and `h⁻¹·a·h = c` give `c ∈ P`.
    ConjugationInvariance,
    /// `[c, c⁻¹]`: both in `P`. Closes a branch.
    InversionAntisymmetry,
    /// `[1]`: the identity was derived positive. Closes a branch.
    IdentityExclusion,
}

impl Axiom {
    pub fn as_str(self) -> &'static str {
        match self {
            Axiom::Assume => "assume",
            Axiom::SignTotality => "sign-totality",
            Axiom::ProductClosure => "product-closure",
            Axiom::ConjugationInvariance => "conjugation-invariance",
            Axiom::InversionAntisymmetry => "inversion-antisymmetry",
            Axiom::IdentityExclusion => "identity-exclusion",
        }
    }

    pub fn parse(s: &str) -> Option<Axiom> {
        [
            Axiom::Assume,
            Axiom::SignTotality,
            Axiom::ProductClosure,
            Axiom::ConjugationInvariance,
            Axiom::InversionAntisymmetry,
            Axiom::IdentityExclusion,
        ]
        .into_iter()
        .find(|a| a.as_str() == s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Step {
    pub axiom: Axiom,
    pub elements: Vec<usize>,
}

impl Step {
    fn new(axiom: Axiom, elements: Vec<usize>) -> Self {
        Step { axiom, elements }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConeVerdict {
    /// A sign assignment on the whole ball closed under the axioms. Says
    /// nothing about the group beyond the ball.
    NoObstruction { cone: Vec<usize> },
    /// Every sign assignment fails; the trace is a case-split refutation in
    /// preorder.
    Refuted { trace: Vec<Step> },
}

impl ConeVerdict {
    pub fn is_refuted(&self) -> bool {
        matches!(self, ConeVerdict::Refuted { .. })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Reason {
    Unset,
    Assume,
    Product(usize, usize),
    Conjugate(usize, usize),
}

#[derive(Debug, Clone, Copy)]
struct Conflict {
    derived: usize,
    reason: Reason,
}

#[derive(Debug)]
enum End {
    Conflict(Conflict),
    Split(usize, Box<Node>, Box<Node>),
}

#[derive(Debug)]
struct Node {
    assumption: Option<usize>,
    /// Derived elements kept after minimization, in derivation order.
    derived: Vec<(usize, Reason)>,
    end: End,
}

struct Solver<'a> {
    ball: &'a Ball,
    mode: Mode,
    positive: Vec<bool>,
    reason: Vec<Reason>,
    needed: Vec<bool>,
    trail: Vec<usize>,
}

impl Solver<'_> {
    fn add(&mut self, c: usize, reason: Reason) -> Result<(), Conflict> {
        if c == 0 {
            return Err(Conflict { derived: c, reason });
        }
        if self.positive[c] {
            return Ok(());
        }
        if self.positive[self.ball.inverse(c)] {
            return Err(Conflict { derived: c, reason });
        }
        self.positive[c] = true;
        self.reason[c] = reason;
        self.trail.push(c);
        Ok(())
    }

    /// Forward closure of the trail from `head` onwards. Contrapositive
    /// deductions need no separate rule: if `a·b = c` lies in the ball then
    /// so do `c⁻¹·a = b⁻¹` and `b·c⁻¹ = a⁻¹`.
    fn propagate(&mut self, mut head: usize) -> Result<(), Conflict> {
        let n = self.ball.len();
        while head < self.trail.len() {
            let a = self.trail[head];
            head += 1;
            let mut k = 0;
            while k < self.trail.len() {
                let b = self.trail[k];
                k += 1;
                if let Some(c) = self.ball.product(a, b) {
                    self.add(c, Reason::Product(a, b))?;
                }
                if let Some(c) = self.ball.product(b, a) {
                    self.add(c, Reason::Product(b, a))?;
                }
            }
            if self.mode == Mode::Bi {
                for h in 0..n {
                    if let Some(c) = self.ball.conjugate(a, h) {
                        self.add(c, Reason::Conjugate(a, h))?;
                    }
                }
            }
        }
        Ok(())
    }

    fn mark(&mut self, roots: &[usize]) {
        let mut stack = roots.to_vec();
        while let Some(e) = stack.pop() {
            if self.needed[e] {
                continue;
            }
            self.needed[e] = true;
            match self.reason[e] {
                Reason::Product(a, b) => stack.extend([a, b]),
                Reason::Conjugate(a, _) => stack.push(a),
                Reason::Assume | Reason::Unset => {}
            }
        }
    }

    fn premises(reason: Reason) -> Vec<usize> {
        match reason {
            Reason::Product(a, b) => vec![a, b],
            Reason::Conjugate(a, _) => vec![a],
            Reason::Assume | Reason::Unset => vec![],
        }
    }

    fn undo(&mut self, start: usize) {
        for &e in &self.trail[start..] {
            self.positive[e] = false;
            self.reason[e] = Reason::Unset;
            self.needed[e] = false;
        }
        self.trail.truncate(start);
    }

    /// Level of the search below `assumption`.
    fn finish(&mut self, start: usize, assumption: Option<usize>, end: End) -> Node {
        let first = start + usize::from(assumption.is_some());
        let derived = self.trail[first..]
            .iter()
            .filter(|&&e| self.needed[e])
            .map(|&e| (e, self.reason[e]))
            .collect();
        self.undo(start);
        Node { assumption, derived, end }
    }

    fn solve(&mut self, assumption: Option<usize>) -> Result<Vec<usize>, Node> {
        let start = self.trail.len();
        let outcome = match assumption {
            Some(a) => self.add(a, Reason::Assume).and_then(|_| self.propagate(start)),
            None => self.propagate(start),
        };
        if let Err(conflict) = outcome {
            let mut roots = Self::premises(conflict.reason);
            if conflict.derived != 0 {
                roots.push(self.ball.inverse(conflict.derived));
            }
            self.mark(&roots);
            return Err(self.finish(start, assumption, End::Conflict(conflict)));
        }
        let pick = (1..self.ball.len()).find(|&i| !self.positive[i] && !self.positive[self.ball.inverse(i)]);
        let Some(var) = pick else {
            let mut cone = self.trail.clone();
            cone.sort_unstable();
            return Ok(cone);
        };
        let first = match self.solve(Some(var)) {
            Ok(cone) => return Ok(cone),
            Err(node) => node,
        };
        let second = match self.solve(Some(self.ball.inverse(var))) {
            Ok(cone) => return Ok(cone),
            Err(node) => node,
        };
        Err(self.finish(start, assumption, End::Split(var, Box::new(first), Box::new(second))))
    }
}

fn derivation_step(c: usize, reason: Reason) -> Step {
    match reason {
        Reason::Product(a, b) => Step::new(Axiom::ProductClosure, vec![a, b, c]),
        Reason::Conjugate(a, h) => Step::new(Axiom::ConjugationInvariance, vec![a, h, c]),
        Reason::Assume | Reason::Unset => unreachable!("assumptions are emitted separately"),
    }
}

fn flatten(ball: &Ball, node: &Node, out: &mut Vec<Step>) {
    if let Some(a) = node.assumption {
        out.push(Step::new(Axiom::Assume, vec![a]));
    }
    for &(c, reason) in &node.derived {
        out.push(derivation_step(c, reason));
    }
    match &node.end {
        End::Conflict(conflict) => {
            out.push(derivation_step(conflict.derived, conflict.reason));
            if conflict.derived == 0 {
                out.push(Step::new(Axiom::IdentityExclusion, vec![0]));
            } else {
                let c = conflict.derived;
                out.push(Step::new(Axiom::InversionAntisymmetry, vec![c, ball.inverse(c)]));
            }
        }
        End::Split(var, first, second) => {
            out.push(Step::new(Axiom::SignTotality, vec![*var]));
            flatten(ball, first, out);
            flatten(ball, second, out);
        }
    }
}

/// Backtracking search for a positive cone on the ball. Branches on the
/// shortlex-least unsigned element, positive first, and closes under the
/// axioms of `mode` after every choice.
pub fn search_cone(ball: &Ball, mode: Mode) -> ConeVerdict {
    let n = ball.len();
    let mut solver = Solver {
        ball,
        mode,
        positive: vec![false; n],
        reason: vec![Reason::Unset; n],
        needed: vec![false; n],
        trail: Vec::new(),
    };
    match solver.solve(None) {
        Ok(cone) => ConeVerdict::NoObstruction { cone },
        Err(root) => {
            let mut trace = Vec::new();
            flatten(ball, &root, &mut trace);
            ConeVerdict::Refuted { trace }
        }
    }
}

/// Checks that `cone` is a positive cone on the ball under `mode`'s axioms.
pub fn check_cone(ball: &Ball, cone: &[usize], mode: Mode) -> bool {
    let n = ball.len();
    let mut member = vec![false; n];
    for &i in cone {
        if i >= n {
            return false;
        }
        member[i] = true;
    }
    if member[0] {
        return false;
    }
    if (1..n).any(|i| member[i] == member[ball.inverse(i)]) {
        return false;
    }
    for a in (0..n).filter(|&a| member[a]) {
        for b in (0..n).filter(|&b| member[b]) {
            if ball.product(a, b).is_some_and(|c| !member[c]) {
                return false;
            }
        }
        if mode == Mode::Bi && (0..n).any(|h| ball.conjugate(a, h).is_some_and(|c| !member[c])) {
            return false;
        }
    }
    true
}

struct Replay<'a> {
    ball: &'a Ball,
    mode: Mode,
    trace: &'a [Step],
    pos: usize,
    positive: Vec<bool>,
}

impl Replay<'_> {
    fn next(&mut self) -> Option<&Step> {
        let step = self.trace.get(self.pos)?;
        self.pos += 1;
        Some(step)
    }

    fn set(&mut self, c: usize, added: &mut Vec<usize>) {
        if !self.positive[c] {
            self.positive[c] = true;
            added.push(c);
        }
    }

    /// Replays one subtree; true iff every branch closes validly.
    fn branch(&mut self, assumption: Option<usize>) -> bool {
        let mut added = Vec::new();
        let ok = self.branch_inner(assumption, &mut added);
        for c in added {
            self.positive[c] = false;
        }
        ok
    }

    fn branch_inner(&mut self, assumption: Option<usize>, added: &mut Vec<usize>) -> bool {
        let n = self.ball.len();
        if let Some(a) = assumption {
            match self.next() {
                Some(Step { axiom: Axiom::Assume, elements }) if elements.as_slice() == [a] => {}
                _ => return false,
            }
            self.set(a, added);
        }
        loop {
            let Some(step) = self.next().cloned() else {
                return false;
            };
            if step.elements.iter().any(|&e| e >= n) {
                return false;
            }
            match (step.axiom, step.elements.as_slice()) {
                (Axiom::ProductClosure, &[a, b, c]) => {
                    if !(self.positive[a] && self.positive[b] && self.ball.product(a, b) == Some(c)) {
                        return false;
                    }
                    self.set(c, added);
                }
                (Axiom::ConjugationInvariance, &[a, h, c]) => {
                    if self.mode != Mode::Bi || !self.positive[a] || self.ball.conjugate(a, h) != Some(c) {
                        return false;
                    }
                    self.set(c, added);
                }
                (Axiom::InversionAntisymmetry, &[c, d]) => {
                    return self.positive[c] && self.positive[d] && self.ball.inverse(c) == d;
                }
                (Axiom::IdentityExclusion, &[z]) => return z == 0 && self.positive[0],
                (Axiom::SignTotality, &[v]) => {
                    if v == 0 {
                        return false;
                    }
                    let inv = self.ball.inverse(v);
                    return self.branch(Some(v)) && self.branch(Some(inv));
                }
                _ => return false,
            }
        }
    }
}

/// Independently re-checks a refutation trace against the ball tables:
/// every derivation cites a table entry with positive premises, every
/// split covers both signs, and every branch ends in a contradiction.
pub fn replay_refutation(ball: &Ball, mode: Mode, trace: &[Step]) -> bool {
    let mut replay = Replay { ball, mode, trace, pos: 0, positive: vec![false; ball.len()] };
    replay.branch(None) && replay.pos == trace.len()
}

/// Serializable form of a verdict, with elements written as words.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct VerdictJson {
    pub mode: String,
    pub radius: usize,
    pub verdict: String,
    pub conclusive: bool,
    pub note: String,
    pub ball_size: usize,
    pub cone: Vec<String>,
    pub trace: Vec<StepJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct StepJson {
    pub axiom: String,
    pub elements: Vec<String>,
}

pub const NO_OBSTRUCTION_NOTE: &str =
    "no contradiction within this ball; inconclusive about orderability of the whole group";
pub const REFUTED_NOTE: &str =
    "every sign assignment on this ball violates the order axioms; no such order exists on the group";

impl VerdictJson {
    pub fn new(ball: &Ball, mode: Mode, verdict: &ConeVerdict) -> Self {
        let name = |i: usize| ball.format_element(i);
        let (kind, conclusive, note, cone, trace) = match verdict {
            ConeVerdict::NoObstruction { cone } => (
                "no-obstruction",
                false,
                NO_OBSTRUCTION_NOTE,
                cone.iter().map(|&i| name(i)).collect(),
                Vec::new(),
            ),
            ConeVerdict::Refuted { trace } => (
                "refuted",
                true,
                REFUTED_NOTE,
                Vec::new(),
                trace
                    .iter()
                    .map(|s| StepJson {
                        axiom: s.axiom.as_str().to_string(),
                        elements: s.elements.iter().map(|&i| name(i)).collect(),
                    })
                    .collect(),
            ),
        };
        VerdictJson {
            mode: mode.as_str().to_string(),
            radius: ball.radius(),
            verdict: kind.to_string(),
            conclusive,
            note: note.to_string(),
            ball_size: ball.len(),
            cone,
            trace,
        }
    }

    /// Maps the trace back to ball indices; `None` if a word is not in the
    /// ball or an axiom name is unknown.
    pub fn trace_indices(&self, ball: &Ball) -> Option<Vec<Step>> {
        self.trace
            .iter()
            .map(|s| {
                let axiom = Axiom::parse(&s.axiom)?;
                let elements = s
                    .elements
                    .iter()
                    .map(|w| ball.index_of(&ball.presentation().parse_word(w).ok()?))
                    .collect::<Option<Vec<_>>>()?;
                Some(Step { axiom, elements })
            })
            .collect()
    }

    pub fn cone_indices(&self, ball: &Ball) -> Option<Vec<usize>> {
        self.cone
            .iter()
            .map(|w| ball.index_of(&ball.presentation().parse_word(w).ok()?))
            .collect()
    }
}
