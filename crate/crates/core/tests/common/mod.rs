#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::BTreeMap;

use cob3::algebra::fixtures::diagonal;
use cob3::algebra::{derive_comul, invert, FrobeniusAlgebraSpec, LAlgebra};
use cob3::rational::{frac, q, Q};
use cob3::{Generator, PrimeLabel, Term};
use num_traits::Zero;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const LABELS: [&str; 2] = ["A", "B"];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn label<R: Rng>(rng: &mut R) -> PrimeLabel {
    PrimeLabel::new(LABELS[rng.gen_range(0..LABELS.len())]).unwrap()
}

fn generator_with_inputs<R: Rng>(rng: &mut R, inputs: usize) -> Generator {
    match inputs {
        0 => match rng.gen_range(0..2) {
            0 => Generator::Unit,
            _ => Generator::PrimeUnit(label(rng)),
        },
        1 => match rng.gen_range(0..4) {
            0 => Generator::Id,
            1 => Generator::Comul,
            2 => Generator::Counit,
            _ => Generator::PrimeEndo(label(rng)),
        },
        _ => match rng.gen_range(0..2) {
            0 => Generator::Mul,
            _ => Generator::Swap,
        },
    }
}

/// Folds factors with a random bracketing.
fn bracket<R: Rng>(rng: &mut R, mut items: Vec<Term>, join: fn(Term, Term) -> Term) -> Term {
    while items.len() > 1 {
        let i = rng.gen_range(0..items.len() - 1);
        let right = items.remove(i + 1);
        let left = items.remove(i);
        items.insert(i, join(left, right));
    }
    items.pop().unwrap_or(Term::Empty)
}

/// Small subterms that close loops: a handle on one wire, a waist on two.
fn motif<R: Rng>(rng: &mut R, inputs: usize) -> (Term, usize) {
    let gen = |g| Term::Gen(g);
    if inputs == 1 {
        let t = Term::compose(gen(Generator::Mul), gen(Generator::Comul));
        if rng.gen_bool(0.5) {
            return (Term::compose(t, gen(Generator::PrimeEndo(label(rng)))), 1);
        }
        (t, 1)
    } else {
        (Term::compose(gen(Generator::Comul), gen(Generator::Mul)), 2)
    }
}

fn layer<R: Rng>(rng: &mut R, wires: usize) -> (Term, usize) {
    let mut factors = Vec::new();
    let mut remaining = wires;
    let mut out = 0;
    loop {
        if remaining == 0 && (!factors.is_empty() || rng.gen_bool(0.5)) {
            break;
        }
        let k = if remaining == 0 || rng.gen_bool(0.15) {
            0
        } else if remaining >= 2 && rng.gen_bool(0.4) {
            2
        } else {
            1
        };
        remaining -= k;
        if k > 0 && rng.gen_bool(0.1) {
            let (t, cod) = motif(rng, k);
            out += cod;
            factors.push(t);
            continue;
        }
        let g = generator_with_inputs(rng, k);
        out += g.arity().cod;
        factors.push(Term::Gen(g));
    }
    if factors.is_empty() {
        return (Term::Empty, 0);
    }
    (bracket(rng, factors, Term::tensor), out)
}

fn max_arity(t: &Term) -> usize {
    let ty = t.typecheck().expect("generated terms typecheck");
    let own = ty.dom.max(ty.cod);
    match t {
        Term::Compose(a, b) | Term::Tensor(a, b) => own.max(max_arity(a)).max(max_arity(b)),
        _ => own,
    }
}

/// A well-typed term with at most `max_nodes` tree nodes, at most two
/// distinct prime labels and no subterm of arity above four.
pub fn random_term<R: Rng>(rng: &mut R, max_nodes: usize) -> Term {
    loop {
        let dom = rng.gen_range(0..=3);
        let depth = rng.gen_range(1..=4);
        let mut wires = dom;
        let mut layers = Vec::new();
        for _ in 0..depth {
            let (l, out) = layer(rng, wires);
            layers.push(l);
            wires = out;
        }
        layers.reverse();
        let t = bracket(rng, layers, Term::compose);
        if t.size() <= max_nodes && max_arity(&t) <= 4 {
            return t;
        }
    }
}

/// The fuzz corpus shared by the oracle and normal-form checks.
pub fn corpus(seed: u64, n: usize) -> Vec<Term> {
    let mut r = rng(seed);
    (0..n).map(|_| random_term(&mut r, 12)).collect()
}

fn random_q<R: Rng>(rng: &mut R, nonzero: bool) -> Q {
    loop {
        let x = frac(rng.gen_range(-6..=6), rng.gen_range(1..=4));
        if !(nonzero && x.is_zero()) {
            return x;
        }
    }
}

fn random_vec<R: Rng>(rng: &mut R, d: usize) -> Vec<Q> {
    (0..d).map(|_| random_q(rng, false)).collect()
}

fn units<R: Rng>(rng: &mut R, d: usize) -> BTreeMap<PrimeLabel, Vec<Q>> {
    LABELS
        .iter()
        .map(|l| (PrimeLabel::new(*l).unwrap(), random_vec(rng, d)))
        .collect()
}

/// `Q^d` with random nonzero trace weights and random prime units for `A`, `B`.
pub fn random_diagonal<R: Rng>(rng: &mut R, d: usize) -> LAlgebra {
    let weights: Vec<Q> = (0..d).map(|_| random_q(rng, true)).collect();
    LAlgebra::new(diagonal(&weights), units(rng, d)).unwrap()
}

/// `Q[x]/(x^n)` with a trace whose top coefficient is nonzero.
pub fn truncated_polynomial(n: usize, trace: Vec<Q>) -> FrobeniusAlgebraSpec {
    let mut mul = vec![vec![vec![Q::zero(); n]; n]; n];
    for i in 0..n {
        for j in 0..n - i {
            mul[i + j][i][j] = q(1);
        }
    }
    let mut unit = vec![Q::zero(); n];
    unit[0] = q(1);
    FrobeniusAlgebraSpec {
        dim: n,
        mul,
        unit,
        trace,
        comul: None,
    }
}

/// The same algebra in the basis `f_a = sum_i p[i][a] e_i`, with the
/// comultiplication rederived from the pairing.
pub fn change_basis(spec: &FrobeniusAlgebraSpec, p: &[Vec<Q>]) -> FrobeniusAlgebraSpec {
    let d = spec.dim;
    let pinv = invert(p).expect("invertible basis change");
    let column = |a: usize| -> Vec<Q> { (0..d).map(|i| p[i][a].clone()).collect() };
    let to_new = |v: &[Q]| -> Vec<Q> {
        (0..d)
            .map(|r| (0..d).fold(Q::zero(), |s, i| s + &pinv[r][i] * &v[i]))
            .collect()
    };
    let mut mul = vec![vec![vec![Q::zero(); d]; d]; d];
    for a in 0..d {
        for b in 0..d {
            let prod = to_new(&spec.product(&column(a), &column(b)));
            for (k, x) in prod.into_iter().enumerate() {
                mul[k][a][b] = x;
            }
        }
    }
    let out = FrobeniusAlgebraSpec {
        dim: d,
        mul,
        unit: to_new(&spec.unit),
        trace: (0..d).map(|a| spec.apply_trace(&column(a))).collect(),
        comul: None,
    };
    derive_comul(&out).expect("pairing stays nondegenerate")
}

fn random_invertible<R: Rng>(rng: &mut R, d: usize) -> Vec<Vec<Q>> {
    loop {
        let m: Vec<Vec<Q>> = (0..d).map(|_| random_vec(rng, d)).collect();
        if invert(&m).is_some() {
            return m;
        }
    }
}

/// A random commutative Frobenius algebra of dimension 1 to 3 in a random
/// basis: semisimple or truncated-polynomial, with random prime units.
pub fn random_l_algebra<R: Rng>(rng: &mut R) -> LAlgebra {
    let d = rng.gen_range(1..=3);
    let base = if rng.gen_bool(0.5) {
        let weights: Vec<Q> = (0..d).map(|_| random_q(rng, true)).collect();
        diagonal(&weights)
    } else {
        let mut trace = random_vec(rng, d);
        trace[d - 1] = random_q(rng, true);
        truncated_polynomial(d, trace)
    };
    let p = random_invertible(rng, d);
    LAlgebra::new(change_basis(&base, &p), units(rng, d)).unwrap()
}

/// Five diagonal fixtures of dimensions 1 to 3.
pub fn diagonal_fixtures() -> Vec<LAlgebra> {
    let mut r = rng(7);
    [1, 2, 2, 3, 3].iter().map(|&d| random_diagonal(&mut r, d)).collect()
}
