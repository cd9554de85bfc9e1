//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any failure.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use cob3::algebra::fixtures::{hadamard, hadamard_idempotents, hadamard_with_p, rotation, with_primes};
use cob3::algebra::{prime_endo_matrix, verify_legs};
use cob3::cospan::{compose_cospans, ComponentLabel};
use cob3::eval::{closed_invariant, closed_invariant_by_characters, eval_with_endo_override, Overrides};
use cob3::normal::{comul_chain, mul_chain};
use cob3::rational::{frac, q};
use cob3::rewrite::{rule_set, verify_ruleset_soundness};
use cob3::search::{find_path_with, Exhaustion, SearchLimits};
use cob3::{
    cospan_of_term, eval_semantic, eval_term, normalize_g1, parse, terms_equal, LabelledCospan,
    ManifoldSpec, PrimeLabel, RuleSetName, SearchOutcome,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed <= limit, || format!("took {elapsed:.2?}, limit {limit:?}"))
}

fn label(s: &str) -> PrimeLabel {
    PrimeLabel::new(s).unwrap()
}

fn legs_counterexample() -> Outcome {
    let start = Instant::now();
    let alg = hadamard_with_p();
    let r = rotation();
    let left = parse("m . (pe(P) * id)").unwrap();
    let right = parse("m . (id * pe(P))").unwrap();
    ensure(terms_equal(&left, &right).unwrap(), || "legs pair has different cospans".into())?;
    ensure(!verify_legs(alg.algebra(), &r).unwrap(), || "rotation satisfies legs".into())?;
    let mut ov = Overrides::new();
    ov.insert(label("P"), r);
    let e1e2 = vec![q(0), q(1), q(0), q(0)];
    let l = eval_with_endo_override(&left, &alg, &ov).unwrap().apply(&e1e2);
    let rr = eval_with_endo_override(&right, &alg, &ov).unwrap().apply(&e1e2);
    ensure(l == vec![q(0), q(-1)], || format!("left side gave {l:?}"))?;
    ensure(rr == vec![q(1), q(0)], || format!("right side gave {rr:?}"))?;
    within(start.elapsed(), Duration::from_secs(1))?;
    Ok(format!("-e2 vs e1 in {:.2?}", start.elapsed()))
}

fn g2_soundness() -> Outcome {
    let report = verify_ruleset_soundness(&rule_set(RuleSetName::G2Full));
    ensure(report.all_passed(), || report.to_string())?;
    Ok(format!("{} rules sound", report.entries.len()))
}

fn structural_vs_semantic() -> Outcome {
    let start = Instant::now();
    let terms = common::corpus(2024, 1000);
    let algebras = common::diagonal_fixtures();
    for t in &terms {
        let c = cospan_of_term(t).unwrap();
        for alg in &algebras {
            let a = eval_term(t, alg).unwrap();
            let b = eval_semantic(&c, alg).unwrap();
            ensure(a == b, || format!("{} disagrees on a dim {} algebra", cob3::print(t), alg.dim()))?;
        }
    }
    within(start.elapsed(), Duration::from_secs(60))?;
    Ok(format!(
        "{} terms x {} algebras in {:.2?}",
        terms.len(),
        algebras.len(),
        start.elapsed()
    ))
}

fn genus_law() -> Outcome {
    for b in 1..=5 {
        let f = LabelledCospan::connected(2, b, ComponentLabel::new(1, vec![label("A")]));
        let g = LabelledCospan::connected(b, 1, ComponentLabel::new(2, vec![label("B")]));
        let gf = compose_cospans(&g, &f).unwrap();
        let expected = ComponentLabel::new(1 + 2 + b - 1, vec![label("A"), label("B")]);
        ensure(gf.labels == vec![expected.clone()], || format!("b = {b}: got {:?}", gf.labels))?;
        let t = cob3::Term::compose(mul_chain(b), comul_chain(b));
        let c = cospan_of_term(&t).unwrap();
        ensure(c.labels == vec![ComponentLabel::new(b - 1, vec![])], || {
            format!("b = {b}: chain gluing gave {:?}", c.labels)
        })?;
    }
    Ok("b = 1..5".into())
}

fn redundancy_paths() -> Outcome {
    let start = Instant::now();
    let limits = SearchLimits {
        max_steps: 24,
        ..SearchLimits::default()
    };
    let legs = rule_set(RuleSetName::CfLegs);
    let pairs = [
        ("waist", "pe(P) . m", "m . (pe(P) * id)"),
        ("prime-commutativity", "pe(A) . pe(B)", "pe(B) . pe(A)"),
        ("cowaist", "comul . pe(P)", "(pe(P) * id) . comul"),
        ("colegs", "(pe(P) * id) . comul", "(id * pe(P)) . comul"),
    ];
    let mut lengths = Vec::new();
    for (name, a, b) in pairs {
        let (a, b) = (parse(a).unwrap(), parse(b).unwrap());
        let trace = match find_path_with(&a, &b, &legs, &limits).unwrap() {
            SearchOutcome::Found(t) => t,
            SearchOutcome::NotFound { reason, .. } => return Err(format!("{name}: {reason}")),
        };
        trace.replay(&legs).map_err(|e| format!("{name}: {e}"))?;
        lengths.push(format!("{name} {}", trace.len()));
    }
    let cf = rule_set(RuleSetName::Cf);
    let a = parse("m . (pe(P) * id)").unwrap();
    let b = parse("m . (id * pe(P))").unwrap();
    match find_path_with(&a, &b, &cf, &limits).unwrap() {
        SearchOutcome::Found(t) => return Err(format!("CF alone relates the legs pair in {} steps", t.len())),
        SearchOutcome::NotFound { reason, .. } => ensure(
            matches!(reason, Exhaustion::Exhausted | Exhaustion::StepBound),
            || format!("CF search on legs stopped early: {reason}"),
        )?,
    }
    within(start.elapsed(), Duration::from_secs(120))?;
    Ok(format!("{}; CF alone: none; {:.2?}", lengths.join(", "), start.elapsed()))
}

fn random_l_algebras() -> Outcome {
    let mut rng = common::rng(99);
    for i in 0..20 {
        let alg = common::random_l_algebra(&mut rng);
        for (p, unit) in alg.prime_units() {
            let e = prime_endo_matrix(&alg, p).unwrap();
            ensure(verify_legs(alg.algebra(), &e).unwrap(), || format!("algebra {i}: legs fails for {p}"))?;
            let image = e.apply(&alg.algebra().unit);
            ensure(&image == unit, || format!("algebra {i}: e_{p}(1) = {image:?}"))?;
        }
    }
    Ok("20 algebras".into())
}

fn characters() -> Outcome {
    let alg = with_primes(
        hadamard(),
        &[("P", vec![q(2), q(3)]), ("Q", vec![q(-1), frac(1, 2)])],
    );
    let dec = hadamard_idempotents();
    let labels = ["P", "Q"];
    let mut count = 0;
    for k in 0..=3usize {
        for mask in 0..(1usize << k) {
            let primes: Vec<PrimeLabel> = (0..k).map(|i| label(labels[(mask >> i) & 1])).collect();
            for g in 0..=2 {
                let m = ManifoldSpec::new(primes.clone(), g);
                let direct = closed_invariant(&m, &alg).unwrap();
                let by_chars = closed_invariant_by_characters(&m, &alg, &dec).unwrap();
                ensure(direct == by_chars, || format!("{m}: {direct} vs {by_chars}"))?;
                count += 1;
            }
        }
    }
    let pp = ManifoldSpec::new(vec![label("P"), label("P")], 0);
    let z = closed_invariant(&pp, &hadamard_with_p()).unwrap();
    ensure(z == q(13), || format!("Z(P # P) = {z}"))?;
    Ok(format!("{count} manifolds, Z(P # P) = 13"))
}

fn g1_normal_forms() -> Outcome {
    let start = Instant::now();
    let terms = common::corpus(2024, 1000);
    for t in &terms {
        let n = normalize_g1(t).unwrap();
        ensure(normalize_g1(&n).unwrap() == n, || format!("not idempotent on {}", cob3::print(t)))?;
        ensure(cospan_of_term(&n).unwrap() == cospan_of_term(t).unwrap(), || {
            format!("cospan changed on {}", cob3::print(t))
        })?;
    }
    within(start.elapsed(), Duration::from_secs(30))?;
    Ok(format!("{} terms in {:.2?}", terms.len(), start.elapsed()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("legs counterexample", legs_counterexample),
        ("G2_FULL soundness", g2_soundness),
        ("structural = semantic evaluation", structural_vs_semantic),
        ("genus law", genus_law),
        ("redundancy paths", redundancy_paths),
        ("random L-algebras", random_l_algebras),
        ("character formula", characters),
        ("G1 normal forms", g1_normal_forms),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            Err(e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name} ({detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name} ({why})", i + 1);
            }
        }
    }
    println!("{}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
