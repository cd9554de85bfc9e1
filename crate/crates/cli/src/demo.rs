use clap::ValueEnum;
use cob3::algebra::fixtures::{hadamard_with_p, rotation};
use cob3::algebra::verify_legs;
use cob3::eval::{eval_with_endo_override, Overrides};
use cob3::rational::{format_q, q, Q};
use cob3::rewrite::{rule_set, verify_ruleset_soundness};
use cob3::search::{find_path_with, SearchLimits};
use cob3::{parse, PrimeLabel, RuleSetName, SearchOutcome};
use serde_json::{json, Value};

use crate::Report;

#[derive(Clone, Copy, ValueEnum)]
pub enum DemoName {
    LegsCounterexample,
    RedundancyPaths,
    RulesetSoundness,
}

pub fn run(name: DemoName) -> Report {
    match name {
        DemoName::LegsCounterexample => legs_counterexample(),
        DemoName::RedundancyPaths => redundancy_paths(),
        DemoName::RulesetSoundness => ruleset_soundness(),
    }
}

/// `x e1 + y e2` style rendering of a coordinate vector.
fn combination(v: &[Q]) -> String {
    let mut out = String::new();
    for (i, x) in v.iter().enumerate() {
        if x == &q(0) {
            continue;
        }
        let neg = x < &q(0);
        let mag = if neg { -x.clone() } else { x.clone() };
        let coeff = if mag == q(1) { String::new() } else { format!("{} ", format_q(&mag)) };
        match (out.is_empty(), neg) {
            (true, true) => out.push('-'),
            (false, true) => out.push_str(" - "),
            (false, false) => out.push_str(" + "),
            (true, false) => {}
        }
        out.push_str(&format!("{coeff}e{}", i + 1));
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

fn legs_counterexample() -> Report {
    let alg = hadamard_with_p();
    let r = rotation();
    let legs = verify_legs(alg.algebra(), &r).expect("square endomorphism");
    let mut ov = Overrides::new();
    ov.insert(PrimeLabel::new("P").expect("label"), r);
    let input = vec![q(0), q(1), q(0), q(0)];
    let side = |src: &str| {
        let t = parse(src).expect("fixed term");
        eval_with_endo_override(&t, &alg, &ov).expect("evaluates").apply(&input)
    };
    let (left, right) = (side("m . (pe(P) * id)"), side("m . (id * pe(P))"));
    let separated = !legs && left == vec![q(0), q(-1)] && right == vec![q(1), q(0)];
    let text = format!(
        "algebra: Q^2 with coordinatewise product, trace x1 + x2\n\
         pe(P) := rotation [[0, 1], [-1, 0]]\n\
         legs relation holds: {legs}\n\
         m . (pe(P) * id) on e1 (x) e2 = {}\n\
         m . (id * pe(P)) on e1 (x) e2 = {}\n\
         {}",
        combination(&left),
        combination(&right),
        if separated { "separated" } else { "NOT separated" }
    );
    let vec_json = |v: &[Q]| Value::from(v.iter().map(format_q).collect::<Vec<_>>());
    Report {
        text,
        json: json!({
            "legs_holds": legs,
            "left": vec_json(&left),
            "right": vec_json(&right),
            "separated": separated,
        }),
        status: if separated { 0 } else { 1 },
    }
}

const DERIVED: [(&str, &str, &str); 4] = [
    ("waist", "pe(P) . m", "m . (pe(P) * id)"),
    ("prime-commutativity", "pe(A) . pe(B)", "pe(B) . pe(A)"),
    ("cowaist", "comul . pe(P)", "(pe(P) * id) . comul"),
    ("colegs", "(pe(P) * id) . comul", "(id * pe(P)) . comul"),
];

fn redundancy_paths() -> Report {
    let rules = rule_set(RuleSetName::CfLegs);
    let limits = SearchLimits {
        max_steps: 24,
        ..SearchLimits::default()
    };
    let mut text = Vec::new();
    let mut entries = Vec::new();
    let mut all = true;
    for (name, a, b) in DERIVED {
        let (a, b) = (parse(a).expect("fixed term"), parse(b).expect("fixed term"));
        let out = find_path_with(&a, &b, &rules, &limits).expect("well typed");
        match out {
            SearchOutcome::Found(trace) => {
                let ok = trace.replay(&rules).is_ok();
                all &= ok;
                text.push(format!("== {name}: {} steps under {}\n{trace}", trace.len(), rules.name));
                entries.push(json!({"relation": name, "found": true, "replayed": ok, "trace": trace.to_json()}));
            }
            SearchOutcome::NotFound { explored, reason } => {
                all = false;
                text.push(format!("== {name}: no path ({reason} after {explored} states)\n"));
                entries.push(json!({"relation": name, "found": false, "reason": reason.to_string()}));
            }
        }
    }
    Report {
        text: text.join("\n").trim_end().to_string(),
        json: json!({"rules": rules.name.to_string(), "relations": entries}),
        status: if all { 0 } else { 1 },
    }
}

fn ruleset_soundness() -> Report {
    let report = verify_ruleset_soundness(&rule_set(RuleSetName::G2Full));
    let ok = report.all_passed();
    let verdict = if ok { "all rules sound" } else { "UNSOUND rules present" };
    Report {
        text: format!("rule set {}\n{report}{verdict}", report.rule_set),
        json: serde_json::to_value(&report).expect("report serializes"),
        status: if ok { 0 } else { 1 },
    }
}
