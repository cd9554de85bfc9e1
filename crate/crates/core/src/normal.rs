//! Canonical terms read off the cospan invariant.
//!
//! Each component with `a` inputs, `b` outputs, genus `g` and primes
//! `p_1..p_k` becomes, in order of application: the `a`-fold product (or
//! `unit`), `g` handles `m . comul`, the prime endomorphisms, then the
//! `b`-fold coproduct (or `tr`). Components are tensored in canonical order
//! between two boundary permutations.
//!
//! The G1 form uses no prime endomorphisms: every prime is a `pu` tensored
//! aside at the input and multiplied into its component.

use crate::cospan::{cospan_of_term, CospanError, LabelledCospan};
use crate::term::{compose_all, id_n, permutation_term, tensor_all, Generator, PrimeLabel, Term};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Presentation {
    G1,
    G2,
}

fn gen(g: Generator) -> Term {
    Term::Gen(g)
}

/// `n`-fold product, multiplying inputs left to right; `unit` for `n = 0`.
pub fn mul_chain(n: usize) -> Term {
    match n {
        0 => gen(Generator::Unit),
        1 => gen(Generator::Id),
        2 => gen(Generator::Mul),
        _ => Term::compose(
            gen(Generator::Mul),
            Term::tensor(mul_chain(n - 1), gen(Generator::Id)),
        ),
    }
}

/// `n`-fold coproduct; `tr` for `n = 0`.
pub fn comul_chain(n: usize) -> Term {
    match n {
        0 => gen(Generator::Counit),
        1 => gen(Generator::Id),
        2 => gen(Generator::Comul),
        _ => Term::compose(
            Term::tensor(comul_chain(n - 1), gen(Generator::Id)),
            gen(Generator::Comul),
        ),
    }
}

pub fn handle() -> Term {
    Term::compose(gen(Generator::Mul), gen(Generator::Comul))
}

fn is_identity(t: &Term) -> bool {
    match t {
        Term::Gen(Generator::Id) | Term::Empty => true,
        Term::Tensor(a, b) => is_identity(a) && is_identity(b),
        Term::Compose(a, b) => is_identity(a) && is_identity(b),
        Term::Gen(_) => false,
    }
}

/// Composite of the non-identity layers, `layers[0]` first.
fn chain(n: usize, layers: Vec<Term>) -> Term {
    compose_all(n, layers.into_iter().filter(|l| !is_identity(l)).collect())
}

/// Canonical connected bordism `a -> b` with the given genus and primes.
pub fn component_term(a: usize, b: usize, genus: usize, primes: &[PrimeLabel]) -> Term {
    let mut layers = vec![mul_chain(a)];
    layers.extend(std::iter::repeat_with(handle).take(genus));
    layers.extend(primes.iter().map(|p| gen(Generator::PrimeEndo(p.clone()))));
    layers.push(comul_chain(b));
    chain(a, layers)
}

fn is_identity_perm(perm: &[usize]) -> bool {
    perm.iter().enumerate().all(|(i, &p)| i == p)
}

fn perm_layer(perm: &[usize]) -> Term {
    permutation_term(perm).expect("positions form a permutation")
}

/// Assembles per-component cores between the boundary permutations.
/// `inputs[c]` lists the (extended) input positions feeding component `c`.
fn assemble(n_in: usize, cod: usize, inputs: &[Vec<usize>], c: &LabelledCospan, cores: Vec<Term>) -> Term {
    let mut perm_in = vec![0; n_in];
    for (pos, &i) in inputs.iter().flatten().enumerate() {
        perm_in[i] = pos;
    }
    let comps = c.components();
    let mut perm_out = vec![0; cod];
    for (pos, &j) in comps.iter().flat_map(|k| &k.outs).enumerate() {
        perm_out[pos] = j;
    }
    let mut layers = Vec::new();
    if !is_identity_perm(&perm_in) {
        layers.push(perm_layer(&perm_in));
    }
    layers.push(tensor_all(cores));
    if !is_identity_perm(&perm_out) {
        layers.push(perm_layer(&perm_out));
    }
    chain(n_in, layers)
}

/// Canonical term over `pe` generators.
pub fn g2_term(c: &LabelledCospan) -> Term {
    let comps = c.components();
    let inputs: Vec<Vec<usize>> = comps.iter().map(|k| k.ins.clone()).collect();
    let cores = comps
        .iter()
        .zip(&c.labels)
        .map(|(k, l)| component_term(k.ins.len(), k.outs.len(), l.genus, &l.primes))
        .collect();
    assemble(c.dom, c.cod, &inputs, c, cores)
}

/// Canonical term over `pu` generators: `core . (id^dom * pu(p_1) * ... * pu(p_m))`
/// with the prime units sorted by label.
pub fn g1_term(c: &LabelledCospan) -> Term {
    let comps = c.components();
    let mut units: Vec<(&PrimeLabel, usize)> = c
        .labels
        .iter()
        .enumerate()
        .flat_map(|(k, l)| l.primes.iter().map(move |p| (p, k)))
        .collect();
    units.sort();
    let mut inputs: Vec<Vec<usize>> = comps.iter().map(|k| k.ins.clone()).collect();
    for (offset, &(_, k)) in units.iter().enumerate() {
        inputs[k].push(c.dom + offset);
    }
    let cores = comps
        .iter()
        .zip(&c.labels)
        .zip(&inputs)
        .map(|((k, l), ins)| component_term(ins.len(), k.outs.len(), l.genus, &[]))
        .collect();
    let core = assemble(c.dom + units.len(), c.cod, &inputs, c, cores);
    if units.is_empty() {
        return core;
    }
    let pus = tensor_all(
        units
            .iter()
            .map(|(p, _)| gen(Generator::PrimeUnit((*p).clone())))
            .collect(),
    );
    let aside = if c.dom == 0 { pus } else { Term::tensor(id_n(c.dom), pus) };
    chain(c.dom, vec![aside, core])
}

pub fn normal_form(c: &LabelledCospan, presentation: Presentation) -> Term {
    match presentation {
        Presentation::G1 => g1_term(c),
        Presentation::G2 => g2_term(c),
    }
}

pub fn normalize_g1(t: &Term) -> Result<Term, CospanError> {
    Ok(g1_term(&cospan_of_term(t)?))
}

pub fn normalize_g2(t: &Term) -> Result<Term, CospanError> {
    Ok(g2_term(&cospan_of_term(t)?))
}
