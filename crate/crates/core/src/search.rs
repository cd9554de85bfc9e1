//! Bounded search for rewrite paths between terms.
//!
//! States are canonical string diagrams, so the structural laws of a
//! symmetric monoidal category cost nothing and rules whose two sides only
//! differ by those laws are not searched. The search is breadth-first from
//! both ends, one full layer at a time, and returns a shortest path.

use std::collections::HashMap;
use std::fmt;

use serde_json::json;

use crate::diagram::{replace, Diagram, Match, Pattern, Src};
use crate::rewrite::{Direction, RewriteError, RuleSet};
use crate::term::{print, Term, TermError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchLimits {
    pub max_steps: usize,
    /// Maximum number of distinct states visited.
    pub node_budget: usize,
    /// States with more generators than the larger endpoint plus this many
    /// are not explored.
    pub max_extra_nodes: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits {
            max_steps: 16,
            node_budget: 200_000,
            max_extra_nodes: 4,
        }
    }
}

/// Where a step applied: matched generators and wires, numbered as in the
/// canonical diagram of the term before the step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Site {
    pub nodes: Vec<usize>,
    pub wires: Vec<Src>,
}

impl fmt::Display for Site {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nodes: Vec<String> = self.nodes.iter().map(|n| format!("n{n}")).collect();
        let wires: Vec<String> = self.wires.iter().map(|w| w.to_string()).collect();
        let all: Vec<String> = nodes.into_iter().chain(wires.into_iter().map(|w| format!("wire {w}"))).collect();
        write!(f, "[{}]", all.join(", "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub rule: String,
    pub direction: Direction,
    pub site: Site,
    /// The term after this step.
    pub term: Term,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteTrace {
    pub start: Term,
    pub end: Term,
    pub steps: Vec<TraceStep>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exhaustion {
    /// Every path up to the step bound was explored.
    StepBound,
    NodeBudget,
    /// The reachable part of the rewrite graph was exhausted.
    Exhausted,
    TypeMismatch,
}

impl fmt::Display for Exhaustion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Exhaustion::StepBound => "step bound reached",
            Exhaustion::NodeBudget => "node budget exhausted",
            Exhaustion::Exhausted => "reachable states exhausted",
            Exhaustion::TypeMismatch => "the terms have different types",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(RewriteTrace),
    NotFound { explored: usize, reason: Exhaustion },
}

impl SearchOutcome {
    pub fn trace(&self) -> Option<&RewriteTrace> {
        match self {
            SearchOutcome::Found(t) => Some(t),
            SearchOutcome::NotFound { .. } => None,
        }
    }
}

struct CompiledRule {
    name: String,
    direction: Direction,
    from: Pattern,
    to: Diagram,
}

/// Rules sorted by name, each direction once; rules whose sides have the
/// same diagram are dropped.
fn compile(rules: &RuleSet) -> Vec<CompiledRule> {
    let mut sorted: Vec<_> = rules.rules.iter().collect();
    sorted.sort_by(|a, b| a.name.cmp(&b.name));
    let mut out = Vec::new();
    for rule in sorted {
        let lhs = Diagram::from_term(&rule.lhs).expect("rules typecheck");
        let rhs = Diagram::from_term(&rule.rhs).expect("rules typecheck");
        if lhs.canonical() == rhs.canonical() {
            continue;
        }
        for direction in [Direction::Forward, Direction::Backward] {
            let (from, to) = match direction {
                Direction::Forward => (&lhs, &rhs),
                Direction::Backward => (&rhs, &lhs),
            };
            out.push(CompiledRule {
                name: rule.name.clone(),
                direction,
                from: Pattern::new(from.clone()),
                to: to.clone(),
            });
        }
    }
    out
}

fn successors<'a>(
    state: &'a Diagram,
    rules: &'a [CompiledRule],
    max_nodes: usize,
) -> impl Iterator<Item = (usize, Match, Diagram)> + 'a {
    rules.iter().enumerate().flat_map(move |(r, rule)| {
        let growth = rule.to.len() as isize - rule.from.diagram.len() as isize;
        let matches = if state.len() as isize + growth > max_nodes as isize {
            Vec::new()
        } else {
            rule.from.matches(state)
        };
        matches.into_iter().map(move |m| {
            let next = replace(state, &m, &rule.to.instantiate(&m.bindings)).canonical();
            (r, m, next)
        })
    })
}

struct Side {
    states: Vec<Diagram>,
    parent: Vec<usize>,
    index: HashMap<Diagram, usize>,
    frontier: Vec<usize>,
    depth: usize,
}

impl Side {
    fn new(root: Diagram) -> Side {
        let mut index = HashMap::new();
        index.insert(root.clone(), 0);
        Side {
            states: vec![root],
            parent: vec![usize::MAX],
            index,
            frontier: vec![0],
            depth: 0,
        }
    }

    fn path_to_root(&self, mut i: usize) -> Vec<usize> {
        let mut out = vec![i];
        while self.parent[i] != usize::MAX {
            i = self.parent[i];
            out.push(i);
        }
        out
    }
}

pub fn find_path(a: &Term, b: &Term, rules: &RuleSet, max_steps: usize) -> Result<SearchOutcome, TermError> {
    find_path_with(
        a,
        b,
        rules,
        &SearchLimits {
            max_steps,
            ..SearchLimits::default()
        },
    )
}

pub fn find_path_with(
    a: &Term,
    b: &Term,
    rules: &RuleSet,
    limits: &SearchLimits,
) -> Result<SearchOutcome, TermError> {
    let (ta, tb) = (a.typecheck()?, b.typecheck()?);
    if ta != tb {
        return Ok(SearchOutcome::NotFound {
            explored: 0,
            reason: Exhaustion::TypeMismatch,
        });
    }
    let da = Diagram::from_term(a)?.canonical();
    let db = Diagram::from_term(b)?.canonical();
    let compiled = compile(rules);
    let max_nodes = da.len().max(db.len()) + limits.max_extra_nodes;
    if da == db {
        return Ok(SearchOutcome::Found(RewriteTrace {
            start: a.clone(),
            end: b.clone(),
            steps: Vec::new(),
        }));
    }
    let mut sides = [Side::new(da), Side::new(db)];
    loop {
        if sides[0].depth + sides[1].depth >= limits.max_steps {
            return Ok(not_found(&sides, Exhaustion::StepBound));
        }
        if sides[0].frontier.is_empty() || sides[1].frontier.is_empty() {
            return Ok(not_found(&sides, Exhaustion::Exhausted));
        }
        let s = if sides[1].frontier.len() < sides[0].frontier.len() { 1 } else { 0 };
        let frontier = std::mem::take(&mut sides[s].frontier);
        let mut next = Vec::new();
        for u in frontier {
            let state = sides[s].states[u].clone();
            for (_, _, succ) in successors(&state, &compiled, max_nodes) {
                if sides[s].index.contains_key(&succ) {
                    continue;
                }
                let id = sides[s].states.len();
                sides[s].index.insert(succ.clone(), id);
                sides[s].states.push(succ.clone());
                sides[s].parent.push(u);
                if let Some(&other) = sides[1 - s].index.get(&succ) {
                    let (fwd, bwd) = if s == 0 { (id, other) } else { (other, id) };
                    let mut chain: Vec<&Diagram> = sides[0]
                        .path_to_root(fwd)
                        .into_iter()
                        .rev()
                        .map(|i| &sides[0].states[i])
                        .collect();
                    chain.extend(sides[1].path_to_root(bwd).into_iter().skip(1).map(|i| &sides[1].states[i]));
                    let steps = reconstruct(&chain, &compiled, max_nodes);
                    return Ok(SearchOutcome::Found(RewriteTrace {
                        start: a.clone(),
                        end: b.clone(),
                        steps,
                    }));
                }
                next.push(id);
                if sides[0].states.len() + sides[1].states.len() > limits.node_budget {
                    return Ok(not_found(&sides, Exhaustion::NodeBudget));
                }
            }
        }
        sides[s].frontier = next;
        sides[s].depth += 1;
    }
}

fn not_found(sides: &[Side; 2], reason: Exhaustion) -> SearchOutcome {
    SearchOutcome::NotFound {
        explored: sides[0].states.len() + sides[1].states.len(),
        reason,
    }
}

/// The first rule application (in search order) turning each state into the
/// next.
fn reconstruct(chain: &[&Diagram], rules: &[CompiledRule], max_nodes: usize) -> Vec<TraceStep> {
    chain
        .windows(2)
        .map(|w| {
            let (r, m, next) = successors(w[0], rules, max_nodes)
                .find(|(_, _, d)| d == w[1])
                .expect("consecutive states are one step apart");
            TraceStep {
                rule: rules[r].name.clone(),
                direction: rules[r].direction,
                site: Site {
                    nodes: m.nodes,
                    wires: m.wires,
                },
                term: next.to_term(),
            }
        })
        .collect()
}

impl RewriteTrace {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Re-applies every step from the start and checks that the end is
    /// reached.
    pub fn replay(&self, rules: &RuleSet) -> Result<(), RewriteError> {
        let compiled = compile(rules);
        let mut state = Diagram::from_term(&self.start)?.canonical();
        for (i, step) in self.steps.iter().enumerate() {
            let fail = |reason: String| RewriteError::Replay { step: i + 1, reason };
            let rule = compiled
                .iter()
                .find(|r| r.name == step.rule && r.direction == step.direction)
                .ok_or_else(|| fail(format!("rule {} is not in {}", step.rule, rules.name)))?;
            let m = rule
                .from
                .matches(&state)
                .into_iter()
                .find(|m| m.nodes == step.site.nodes && m.wires == step.site.wires)
                .ok_or_else(|| fail(format!("{} does not match at {}", step.rule, step.site)))?;
            state = replace(&state, &m, &rule.to.instantiate(&m.bindings)).canonical();
            if state != Diagram::from_term(&step.term)?.canonical() {
                return Err(fail("recorded term differs from the rewritten one".into()));
            }
        }
        if state != Diagram::from_term(&self.end)?.canonical() {
            return Err(RewriteError::Replay {
                step: self.steps.len(),
                reason: "the end term is not reached".into(),
            });
        }
        Ok(())
    }

    pub fn to_json(&self) -> serde_json::Value {
        let steps: Vec<serde_json::Value> = self
            .steps
            .iter()
            .enumerate()
            .map(|(i, s)| {
                json!({
                    "step": i + 1,
                    "rule": s.rule,
                    "position": {
                        "nodes": s.site.nodes,
                        "wires": s.site.wires.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
                    },
                    "direction": s.direction,
                    "term": print(&s.term),
                })
            })
            .collect();
        json!({
            "start": print(&self.start),
            "end": print(&self.end),
            "steps": steps,
        })
    }
}

impl fmt::Display for RewriteTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "start: {}", self.start)?;
        for (i, s) in self.steps.iter().enumerate() {
            writeln!(f, "{:>3}. {} {} at {}", i + 1, s.rule, s.direction, s.site)?;
            writeln!(f, "     {}", s.term)?;
        }
        writeln!(f, "end: {}", self.end)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cospan::cospan_of_term;
    use crate::parse::parse;
    use crate::rewrite::{rule_set, RuleSetName};

    fn search(a: &str, b: &str, set: RuleSetName, max_steps: usize) -> SearchOutcome {
        find_path(&parse(a).unwrap(), &parse(b).unwrap(), &rule_set(set), max_steps).unwrap()
    }

    #[test]
    fn unit_law_in_one_step() {
        let out = search("m . (unit * id)", "id", RuleSetName::Cf, 2);
        let trace = out.trace().expect("found");
        assert_eq!(trace.len(), 1);
        assert_eq!(trace.steps[0].rule, "unit-left");
        assert_eq!(trace.steps[0].direction, Direction::Forward);
        trace.replay(&rule_set(RuleSetName::Cf)).unwrap();
    }

    #[test]
    fn structural_equalities_need_no_steps() {
        let out = search("swap . swap", "id * id", RuleSetName::Cf, 4);
        assert!(out.trace().unwrap().is_empty());
    }

    #[test]
    fn frobenius_chain() {
        let out = search("(m * id) . (id * comul)", "(id * m) . (comul * id)", RuleSetName::Cf, 4);
        let trace = out.trace().expect("found");
        assert_eq!(trace.len(), 2);
        trace.replay(&rule_set(RuleSetName::Cf)).unwrap();
        let c = cospan_of_term(&trace.start).unwrap();
        for step in &trace.steps {
            assert_eq!(cospan_of_term(&step.term).unwrap(), c);
        }
    }

    #[test]
    fn type_mismatch_and_bounds() {
        let out = search("m", "id", RuleSetName::Cf, 4);
        assert!(matches!(out, SearchOutcome::NotFound { reason: Exhaustion::TypeMismatch, .. }));
        let out = search("m . comul", "id", RuleSetName::Cf, 3);
        assert!(out.trace().is_none());
    }

    #[test]
    fn waist_under_legs() {
        let out = search("pe(P) . m", "m . (pe(P) * id)", RuleSetName::CfLegs, 24);
        let trace = out.trace().expect("waist is derivable");
        assert!(trace.len() <= 12);
        trace.replay(&rule_set(RuleSetName::CfLegs)).unwrap();
        assert!(trace.to_json()["steps"].as_array().unwrap().len() == trace.len());
    }
}
