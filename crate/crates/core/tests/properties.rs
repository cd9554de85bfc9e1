mod common;

use cob3::algebra::fixtures::{dual_numbers, hadamard_with_p, with_primes};
use cob3::cospan::{compose_cospans, tensor_cospans};
use cob3::rational::q;
use cob3::rewrite::{apply_rule, matching_positions, rule_set, Direction};
use cob3::{
    cospan_of_term, eval_semantic, eval_term, normalize_g1, normalize_g2, parse, print, LAlgebra,
    RuleSetName, Term,
};
use proptest::prelude::*;

fn term() -> impl Strategy<Value = Term> {
    any::<u64>().prop_map(|seed| common::random_term(&mut common::rng(seed), 12))
}

fn small_term() -> impl Strategy<Value = Term> {
    any::<u64>().prop_map(|seed| common::random_term(&mut common::rng(seed), 6))
}

fn algebras() -> Vec<LAlgebra> {
    let mut out = common::diagonal_fixtures();
    out.push(with_primes(dual_numbers(), &[("A", vec![q(2), q(1)]), ("B", vec![q(0), q(3)])]));
    let mut rng = common::rng(5);
    out.extend((0..3).map(|_| common::random_l_algebra(&mut rng)));
    out
}

/// Composes `g` after `f` by padding the narrower side with units and counits.
fn glue(f: Term, g: Term) -> Term {
    let (fc, gd) = (f.typecheck().unwrap().cod, g.typecheck().unwrap().dom);
    let pad = |t: Term, n: usize, gen: &str| {
        (0..n).fold(t, |acc, _| Term::tensor(acc, parse(gen).unwrap()))
    };
    let f = if fc < gd { pad(f, gd - fc, "unit") } else { f };
    let g = if gd < fc { pad(g, fc - gd, "tr") } else { g };
    Term::compose(g, f)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn print_parse_round_trip(t in term()) {
        prop_assert_eq!(parse(&print(&t)).unwrap(), t);
    }

    #[test]
    fn cospans_are_functorial(f in term(), g in term()) {
        let h = glue(f, g);
        let Term::Compose(g, f) = &h else { unreachable!() };
        let whole = cospan_of_term(&h).unwrap();
        let parts = compose_cospans(&cospan_of_term(g).unwrap(), &cospan_of_term(f).unwrap()).unwrap();
        prop_assert_eq!(whole, parts);
    }

    #[test]
    fn tensor_is_monoidal(f in term(), g in term()) {
        let whole = cospan_of_term(&Term::tensor(f.clone(), g.clone())).unwrap();
        let parts = tensor_cospans(&cospan_of_term(&f).unwrap(), &cospan_of_term(&g).unwrap());
        prop_assert_eq!(whole, parts);
    }

    #[test]
    fn evaluation_is_functorial(f in small_term(), g in small_term()) {
        let h = glue(f, g);
        let Term::Compose(g, f) = &h else { unreachable!() };
        for alg in algebras() {
            let whole = eval_term(&h, &alg).unwrap();
            let parts = eval_term(g, &alg).unwrap().compose(&eval_term(f, &alg).unwrap());
            prop_assert_eq!(whole, parts);
        }
    }

    #[test]
    fn normal_forms_are_fixed_points(t in term()) {
        for n in [normalize_g1(&t).unwrap(), normalize_g2(&t).unwrap()] {
            prop_assert_eq!(cospan_of_term(&n).unwrap(), cospan_of_term(&t).unwrap());
            prop_assert_eq!(normalize_g1(&n).unwrap(), normalize_g1(&t).unwrap());
            prop_assert_eq!(normalize_g2(&n).unwrap(), normalize_g2(&t).unwrap());
        }
    }

    #[test]
    fn semantic_evaluation_beyond_semisimple(t in small_term()) {
        let c = cospan_of_term(&t).unwrap();
        for alg in algebras() {
            prop_assert_eq!(eval_term(&t, &alg).unwrap(), eval_semantic(&c, &alg).unwrap());
        }
    }

    #[test]
    fn rewriting_preserves_cospans_and_values(t in small_term()) {
        let rules = rule_set(RuleSetName::G2Full);
        let before = cospan_of_term(&t).unwrap();
        let alg = hadamard_with_p().with_prime(cob3::PrimeLabel::new("A").unwrap(), vec![q(1), q(-2)]).unwrap()
            .with_prime(cob3::PrimeLabel::new("B").unwrap(), vec![q(5), q(0)]).unwrap();
        let value = eval_term(&t, &alg).unwrap();
        for rule in &rules.rules {
            for dir in [Direction::Forward, Direction::Backward] {
                for pos in matching_positions(&t, rule, dir) {
                    let u = apply_rule(&t, rule, &pos, dir).unwrap();
                    prop_assert_eq!(&cospan_of_term(&u).unwrap(), &before, "{} at {:?}", rule.name, pos);
                    prop_assert_eq!(&eval_term(&u, &alg).unwrap(), &value, "{} at {:?}", rule.name, pos);
                }
            }
        }
    }
}

#[test]
fn corpus_is_varied() {
    let terms = common::corpus(2024, 1000);
    let cospans: Vec<_> = terms.iter().map(|t| cospan_of_term(t).unwrap()).collect();
    let with_genus = cospans.iter().filter(|c| c.labels.iter().any(|l| l.genus > 0)).count();
    let two_labels = terms
        .iter()
        .filter(|t| {
            let mut ls: Vec<_> = t.labels().into_iter().collect();
            ls.sort();
            ls.dedup();
            ls.len() == 2
        })
        .count();
    let closed = cospans.iter().filter(|c| c.dom == 0 && c.cod == 0).count();
    let many_components = cospans.iter().filter(|c| c.apex_size() >= 2).count();
    assert!(with_genus >= 50, "{with_genus} terms with handles");
    assert!(two_labels >= 50, "{two_labels} terms with two labels");
    assert!(closed >= 10, "{closed} closed terms");
    assert!(many_components >= 100, "{many_components} disconnected terms");
    assert!(terms.iter().all(|t| t.size() <= 12));
}
