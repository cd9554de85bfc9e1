//! Relations of the two presentations as bidirectional rewrite rules.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::cospan::{cospan_of_term, manifold_signature, CospanError};
use crate::parse::{parse_pattern, SyntaxError};
use crate::term::{Generator, MorphismType, PrimeLabel, Term, TermError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RewriteError {
    #[error("unknown rule set {0:?} (expected CF, CF_LEGS or G2_FULL)")]
    UnknownRuleSet(String),
    #[error("rule {name}: sides have types {lhs} and {rhs}")]
    TypeMismatch {
        name: String,
        lhs: MorphismType,
        rhs: MorphismType,
    },
    #[error("rule {0}: both sides must use the same metavariables")]
    Metavariables(String),
    #[error("rule {rule} does not match at position {position:?}")]
    NoMatch { rule: String, position: Vec<usize> },
    #[error("no subterm at position {0:?}")]
    BadPosition(Vec<usize>),
    #[error("unknown rule {0:?}")]
    UnknownRule(String),
    #[error("replay failed at step {step}: {reason}")]
    Replay { step: usize, reason: String },
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error(transparent)]
    Type(#[from] TermError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// Left side to right side.
    Forward,
    Backward,
}

impl Direction {
    pub fn reverse(self) -> Direction {
        match self {
            Direction::Forward => Direction::Backward,
            Direction::Backward => Direction::Forward,
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Forward => "forward",
            Direction::Backward => "backward",
        })
    }
}

/// `lhs = rhs`, usable in both directions. Labels of the form `?name` are
/// metavariables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteRule {
    pub name: String,
    pub lhs: Term,
    pub rhs: Term,
}

fn metavariables(t: &Term) -> BTreeSet<PrimeLabel> {
    t.labels().into_iter().filter(|l| l.is_metavar()).cloned().collect()
}

impl RewriteRule {
    pub fn new(name: impl Into<String>, lhs: Term, rhs: Term) -> Result<Self, RewriteError> {
        let name = name.into();
        let (tl, tr) = (lhs.typecheck()?, rhs.typecheck()?);
        if tl != tr {
            return Err(RewriteError::TypeMismatch { name, lhs: tl, rhs: tr });
        }
        if metavariables(&lhs) != metavariables(&rhs) {
            return Err(RewriteError::Metavariables(name));
        }
        Ok(RewriteRule { name, lhs, rhs })
    }

    pub fn parse(name: &str, lhs: &str, rhs: &str) -> Result<Self, RewriteError> {
        RewriteRule::new(name, parse_pattern(lhs)?, parse_pattern(rhs)?)
    }

    /// `(from, to)` for the given direction.
    pub fn sides(&self, direction: Direction) -> (&Term, &Term) {
        match direction {
            Direction::Forward => (&self.lhs, &self.rhs),
            Direction::Backward => (&self.rhs, &self.lhs),
        }
    }

    pub fn metavariables(&self) -> BTreeSet<PrimeLabel> {
        metavariables(&self.lhs)
    }

    /// Both sides with every metavariable replaced by a distinct label that
    /// does not otherwise occur in the rule.
    pub fn instantiate_fresh(&self) -> (Term, Term) {
        let taken: BTreeSet<&PrimeLabel> = self.lhs.labels().into_iter().chain(self.rhs.labels()).collect();
        let mut bindings = BTreeMap::new();
        let mut counter = 0;
        for v in self.metavariables() {
            let label = loop {
                let candidate = PrimeLabel::new(format!("X{counter}")).expect("valid label");
                counter += 1;
                if !taken.contains(&candidate) {
                    break candidate;
                }
            };
            bindings.insert(v, label);
        }
        (instantiate(&self.lhs, &bindings), instantiate(&self.rhs, &bindings))
    }
}

impl fmt::Display for RewriteRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} = {}", self.name, self.lhs, self.rhs)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RuleSetName {
    Cf,
    CfLegs,
    G2Full,
}

impl fmt::Display for RuleSetName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RuleSetName::Cf => "CF",
            RuleSetName::CfLegs => "CF_LEGS",
            RuleSetName::G2Full => "G2_FULL",
        })
    }
}

impl FromStr for RuleSetName {
    type Err = RewriteError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "CF" => Ok(RuleSetName::Cf),
            "CF_LEGS" => Ok(RuleSetName::CfLegs),
            "G2_FULL" => Ok(RuleSetName::G2Full),
            _ => Err(RewriteError::UnknownRuleSet(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleSet {
    pub name: RuleSetName,
    pub rules: Vec<RewriteRule>,
}

impl RuleSet {
    pub fn get(&self, name: &str) -> Option<&RewriteRule> {
        self.rules.iter().find(|r| r.name == name)
    }
}

const CF_RULES: &[(&str, &str, &str)] = &[
    ("unit-left", "m . (unit * id)", "id"),
    ("unit-right", "m . (id * unit)", "id"),
    ("counit-left", "(tr * id) . comul", "id"),
    ("counit-right", "(id * tr) . comul", "id"),
    ("associativity", "m . (m * id)", "m . (id * m)"),
    ("coassociativity", "(comul * id) . comul", "(id * comul) . comul"),
    ("frobenius-left", "comul . m", "(m * id) . (id * comul)"),
    ("frobenius-right", "comul . m", "(id * m) . (comul * id)"),
    ("commutativity", "m", "m . swap"),
    ("cocommutativity", "comul", "swap . comul"),
    ("swap-involution", "swap . swap", "id * id"),
    ("swap-natural-pe", "swap . (pe(?p) * id)", "(id * pe(?p)) . swap"),
    ("swap-natural-unit", "swap . (unit * id)", "id * unit"),
    ("swap-natural-pu", "swap . (pu(?p) * id)", "id * pu(?p)"),
    ("swap-natural-counit", "tr * id", "(id * tr) . swap"),
    ("swap-natural-m", "swap . (m * id)", "(id * m) . ((swap * id) . (id * swap))"),
    ("swap-natural-comul", "((swap * id) . (id * swap)) . (comul * id)", "(id * comul) . swap"),
];

const LEGS_RULES: &[(&str, &str, &str)] = &[("legs", "m . (pe(?p) * id)", "m . (id * pe(?p))")];

const G2_RULES: &[(&str, &str, &str)] = &[
    ("waist", "pe(?p) . m", "m . (pe(?p) * id)"),
    ("colegs", "(pe(?p) * id) . comul", "(id * pe(?p)) . comul"),
    ("cowaist", "comul . pe(?p)", "(pe(?p) * id) . comul"),
    ("prime-commutativity", "pe(?p) . pe(?q)", "pe(?q) . pe(?p)"),
    ("fill", "pe(?p) . unit", "pu(?p)"),
    ("unit-legs", "m . (pu(?p) * id)", "m . (id * pu(?p))"),
];

pub fn rule_set(name: RuleSetName) -> RuleSet {
    let groups: &[&[(&str, &str, &str)]] = match name {
        RuleSetName::Cf => &[CF_RULES],
        RuleSetName::CfLegs => &[CF_RULES, LEGS_RULES],
        RuleSetName::G2Full => &[CF_RULES, LEGS_RULES, G2_RULES],
    };
    let rules = groups
        .iter()
        .flat_map(|g| g.iter())
        .map(|(n, l, r)| RewriteRule::parse(n, l, r).expect("builtin rules are well formed"))
        .collect();
    RuleSet { name, rules }
}

pub fn builtin_rules(name: &str) -> Result<RuleSet, RewriteError> {
    Ok(rule_set(name.parse()?))
}

fn match_term(pattern: &Term, t: &Term, bindings: &mut BTreeMap<PrimeLabel, PrimeLabel>) -> bool {
    match (pattern, t) {
        (Term::Empty, Term::Empty) => true,
        (Term::Gen(Generator::PrimeEndo(p)), Term::Gen(Generator::PrimeEndo(h)))
        | (Term::Gen(Generator::PrimeUnit(p)), Term::Gen(Generator::PrimeUnit(h))) => {
            if !p.is_metavar() {
                return p == h;
            }
            match bindings.get(p) {
                Some(b) => b == h,
                None => {
                    bindings.insert(p.clone(), h.clone());
                    true
                }
            }
        }
        (Term::Gen(a), Term::Gen(b)) => a == b,
        (Term::Compose(pa, pb), Term::Compose(ta, tb)) | (Term::Tensor(pa, pb), Term::Tensor(ta, tb)) => {
            match_term(pa, ta, bindings) && match_term(pb, tb, bindings)
        }
        _ => false,
    }
}

fn instantiate(pattern: &Term, bindings: &BTreeMap<PrimeLabel, PrimeLabel>) -> Term {
    match pattern {
        Term::Gen(Generator::PrimeEndo(p)) => {
            Term::Gen(Generator::PrimeEndo(bindings.get(p).unwrap_or(p).clone()))
        }
        Term::Gen(Generator::PrimeUnit(p)) => {
            Term::Gen(Generator::PrimeUnit(bindings.get(p).unwrap_or(p).clone()))
        }
        Term::Gen(_) | Term::Empty => pattern.clone(),
        Term::Compose(a, b) => Term::compose(instantiate(a, bindings), instantiate(b, bindings)),
        Term::Tensor(a, b) => Term::tensor(instantiate(a, bindings), instantiate(b, bindings)),
    }
}

/// Rewrites the subterm at `position` (a root-relative child-index path).
pub fn apply_rule(
    t: &Term,
    rule: &RewriteRule,
    position: &[usize],
    direction: Direction,
) -> Result<Term, RewriteError> {
    let sub = t
        .subterm(position)
        .ok_or_else(|| RewriteError::BadPosition(position.to_vec()))?;
    let (from, to) = rule.sides(direction);
    let mut bindings = BTreeMap::new();
    if !match_term(from, sub, &mut bindings) {
        return Err(RewriteError::NoMatch {
            rule: rule.name.clone(),
            position: position.to_vec(),
        });
    }
    let out = t
        .replace_at(position, instantiate(to, &bindings))
        .expect("position was valid");
    out.typecheck()?;
    Ok(out)
}

/// Positions where `rule` applies in the given direction, in pre-order.
pub fn matching_positions(t: &Term, rule: &RewriteRule, direction: Direction) -> Vec<Vec<usize>> {
    let (from, _) = rule.sides(direction);
    t.positions()
        .into_iter()
        .filter(|p| {
            let sub = t.subterm(p).expect("own position");
            match_term(from, sub, &mut BTreeMap::new())
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SoundnessEntry {
    pub rule: String,
    pub passed: bool,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SoundnessReport {
    pub rule_set: String,
    pub entries: Vec<SoundnessEntry>,
}

impl SoundnessReport {
    pub fn all_passed(&self) -> bool {
        self.entries.iter().all(|e| e.passed)
    }
}

impl fmt::Display for SoundnessReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            let verdict = if e.passed { "pass" } else { "FAIL" };
            writeln!(f, "{:<22} {verdict}  [{}] vs [{}]", e.rule, e.lhs, e.rhs)?;
        }
        Ok(())
    }
}

fn signature(t: &Term) -> Result<String, CospanError> {
    Ok(manifold_signature(&cospan_of_term(t)?))
}

/// Checks every rule for equal invariants on both sides after fresh-label
/// instantiation.
pub fn verify_ruleset_soundness(rules: &RuleSet) -> SoundnessReport {
    verify_rules(&rules.name.to_string(), &rules.rules)
}

pub fn verify_rules(name: &str, rules: &[RewriteRule]) -> SoundnessReport {
    let entries = rules
        .iter()
        .map(|rule| {
            let (l, r) = rule.instantiate_fresh();
            let (cl, cr) = (cospan_of_term(&l), cospan_of_term(&r));
            let passed = matches!((&cl, &cr), (Ok(a), Ok(b)) if a == b);
            let show = |t: &Term| signature(t).unwrap_or_else(|e| e.to_string());
            SoundnessEntry {
                rule: rule.name.clone(),
                passed,
                lhs: show(&l),
                rhs: show(&r),
            }
        })
        .collect();
    SoundnessReport {
        rule_set: name.to_string(),
        entries,
    }
}
