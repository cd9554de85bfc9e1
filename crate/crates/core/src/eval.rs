//! Evaluation of bordism terms under an L-algebra.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::{block_scalar, AlgebraError, IdempotentDecomposition, LAlgebra};
use crate::cospan::{ComponentLabel, CospanError, LabelledCospan};
use crate::linmap::LinearMap;
use crate::normal::{component_term, g2_term};
use crate::rational::Q;
use crate::term::{Generator, PrimeLabel, Term, TermError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error(transparent)]
    Type(#[from] TermError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("the handle operator is not scalar on block {block}")]
    HandleNotScalar { block: usize },
}

impl From<CospanError> for EvalError {
    fn from(e: CospanError) -> Self {
        match e {
            CospanError::Type(t) => EvalError::Type(t),
            other => EvalError::Type(TermError::InvalidLabel(other.to_string())),
        }
    }
}

pub type Overrides = BTreeMap<PrimeLabel, LinearMap>;

fn unknown(p: &PrimeLabel) -> EvalError {
    EvalError::Algebra(AlgebraError::UnknownPrime(p.clone()))
}

fn eval_gen(g: &Generator, alg: &LAlgebra, overrides: &Overrides) -> Result<LinearMap, EvalError> {
    let spec = alg.algebra();
    let d = spec.dim;
    let mut out;
    match g {
        Generator::Id => return Ok(LinearMap::identity(d, 1)),
        Generator::Mul => {
            out = LinearMap::zero(d, 2, 1);
            for k in 0..d {
                for i in 0..d {
                    for j in 0..d {
                        out.set(k, i * d + j, spec.mul[k][i][j].clone());
                    }
                }
            }
        }
        Generator::Unit => {
            out = LinearMap::zero(d, 0, 1);
            for k in 0..d {
                out.set(k, 0, spec.unit[k].clone());
            }
        }
        Generator::Comul => {
            let co = spec.comul.as_ref().expect("verified algebras carry a comultiplication");
            out = LinearMap::zero(d, 1, 2);
            for i in 0..d {
                for j in 0..d {
                    for k in 0..d {
                        out.set(i * d + j, k, co[i][j][k].clone());
                    }
                }
            }
        }
        Generator::Counit => {
            out = LinearMap::zero(d, 1, 0);
            for k in 0..d {
                out.set(0, k, spec.trace[k].clone());
            }
        }
        Generator::Swap => {
            out = LinearMap::zero(d, 2, 2);
            for i in 0..d {
                for j in 0..d {
                    out.set(j * d + i, i * d + j, Q::one());
                }
            }
        }
        Generator::PrimeEndo(p) => {
            if let Some(m) = overrides.get(p) {
                if m.d != d || m.dom_arity != 1 || m.cod_arity != 1 {
                    return Err(AlgebraError::Shape(format!("override for {p} must be {d}x{d}")).into());
                }
                return Ok(m.clone());
            }
            let unit = alg.prime_unit(p).map_err(|_| unknown(p))?;
            return Ok(spec.multiplication_matrix(unit));
        }
        Generator::PrimeUnit(p) => {
            let unit = alg.prime_unit(p).map_err(|_| unknown(p))?;
            out = LinearMap::zero(d, 0, 1);
            for (k, x) in unit.iter().enumerate() {
                out.set(k, 0, x.clone());
            }
        }
    }
    Ok(out)
}

pub fn eval_generator(g: &Generator, alg: &LAlgebra) -> Result<LinearMap, EvalError> {
    eval_gen(g, alg, &Overrides::new())
}

fn fold(t: &Term, alg: &LAlgebra, overrides: &Overrides) -> Result<LinearMap, EvalError> {
    match t {
        Term::Gen(g) => eval_gen(g, alg, overrides),
        Term::Empty => Ok(LinearMap::identity(alg.dim(), 0)),
        Term::Compose(f, g) => Ok(fold(f, alg, overrides)?.compose(&fold(g, alg, overrides)?)),
        Term::Tensor(f, g) => Ok(fold(f, alg, overrides)?.kron(&fold(g, alg, overrides)?)),
    }
}

pub fn eval_term(t: &Term, alg: &LAlgebra) -> Result<LinearMap, EvalError> {
    eval_with_endo_override(t, alg, &Overrides::new())
}

/// As [`eval_term`], with `pe(p)` evaluated to `overrides[p]` where given.
pub fn eval_with_endo_override(
    t: &Term,
    alg: &LAlgebra,
    overrides: &Overrides,
) -> Result<LinearMap, EvalError> {
    t.typecheck()?;
    fold(t, alg, overrides)
}

/// Evaluates the canonical composite of the invariant.
pub fn eval_semantic(c: &LabelledCospan, alg: &LAlgebra) -> Result<LinearMap, EvalError> {
    eval_term(&g2_term(c), alg)
}

/// A closed connected 3-manifold `P_1 # ... # P_m # (S2xS1)^g`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ManifoldSpec {
    pub primes: Vec<PrimeLabel>,
    pub genus: usize,
}

impl ManifoldSpec {
    pub fn new(mut primes: Vec<PrimeLabel>, genus: usize) -> Self {
        primes.sort();
        ManifoldSpec { primes, genus }
    }

    pub fn term(&self) -> Term {
        component_term(0, 0, self.genus, &self.primes)
    }
}

impl fmt::Display for ManifoldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let label = ComponentLabel::new(self.genus, self.primes.clone());
        f.write_str(&label.manifold_name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid manifold {input:?}: {reason}")]
pub struct ManifoldSyntaxError {
    pub input: String,
    pub reason: String,
}

impl FromStr for ManifoldSpec {
    type Err = ManifoldSyntaxError;

    /// Connect-sum factors joined by `#`: prime labels, `S3`, `S2xS1`,
    /// `(S2xS1)^g` or `gN`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |reason: String| ManifoldSyntaxError {
            input: s.to_string(),
            reason,
        };
        let mut primes = Vec::new();
        let mut genus = 0;
        for part in s.split('#').map(str::trim) {
            if part.is_empty() {
                return Err(err("empty connect-sum factor".into()));
            }
            if part == "S3" {
                continue;
            }
            if part == "S2xS1" {
                genus += 1;
                continue;
            }
            let power = part
                .strip_prefix("(S2xS1)^")
                .or_else(|| part.strip_prefix('g').filter(|r| r.chars().all(|c| c.is_ascii_digit())));
            if let Some(n) = power {
                genus += n
                    .parse::<usize>()
                    .map_err(|_| err(format!("bad genus in {part:?}")))?;
                continue;
            }
            primes.push(PrimeLabel::new(part).map_err(|e| err(e.to_string()))?);
        }
        Ok(ManifoldSpec::new(primes, genus))
    }
}

/// `tr . e_M . unit`.
pub fn closed_invariant(m: &ManifoldSpec, alg: &LAlgebra) -> Result<Q, EvalError> {
    let v = eval_term(&m.term(), alg)?;
    Ok(v.scalar().expect("closed terms evaluate to scalars"))
}

/// `sum_l tr(pi_l) * prod_i chi_l(P_i) * h_l^g`, where `h_l` is the scalar of
/// the handle operator on block `l`.
pub fn closed_invariant_by_characters(
    m: &ManifoldSpec,
    alg: &LAlgebra,
    dec: &IdempotentDecomposition,
) -> Result<Q, EvalError> {
    let spec = alg.algebra();
    let mut total = Q::zero();
    for (block, pi) in dec.idempotents().iter().enumerate() {
        let mut term = spec.apply_trace(pi);
        for p in &m.primes {
            let unit = alg.prime_unit(p)?;
            let chi = block_scalar(spec, pi, |v| spec.product(unit, v)).ok_or_else(|| {
                AlgebraError::NotScalarOnBlock {
                    block,
                    prime: p.to_string(),
                }
            })?;
            term *= chi;
        }
        if m.genus > 0 {
            let h = block_scalar(spec, pi, |v| spec.handle(v).expect("verified comultiplication"))
                .ok_or(EvalError::HandleNotScalar { block })?;
            for _ in 0..m.genus {
                term *= &h;
            }
        }
        total += term;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::fixtures::*;
    use crate::cospan::cospan_of_term;
    use crate::parse::parse;
    use crate::rational::{frac, q};

    fn ev(src: &str, alg: &LAlgebra) -> LinearMap {
        eval_term(&parse(src).unwrap(), alg).unwrap()
    }

    fn basis2(i: usize, j: usize) -> Vec<Q> {
        let mut v = vec![q(0); 4];
        v[i * 2 + j] = q(1);
        v
    }

    #[test]
    fn generators_on_hadamard() {
        let alg = hadamard_with_p();
        let m = eval_generator(&Generator::Mul, &alg).unwrap();
        assert_eq!(m.apply(&basis2(0, 1)), vec![q(0), q(0)]);
        assert_eq!(m.apply(&basis2(1, 1)), vec![q(0), q(1)]);
        assert_eq!(ev("tr . unit", &alg).scalar(), Some(q(2)));
        let sw = eval_generator(&Generator::Swap, &alg).unwrap();
        assert_eq!(sw.apply(&basis2(0, 1)), basis2(1, 0));
        let pu = eval_generator(&Generator::PrimeUnit(PrimeLabel::new("P").unwrap()), &alg).unwrap();
        assert_eq!(pu.column(0), vec![q(2), q(3)]);
        let missing = eval_generator(&Generator::PrimeUnit(PrimeLabel::new("Q").unwrap()), &alg);
        assert!(matches!(missing, Err(EvalError::Algebra(AlgebraError::UnknownPrime(_)))));
    }

    #[test]
    fn terms_on_hadamard() {
        let alg = hadamard_with_p();
        assert_eq!(ev("m . (unit * id)", &alg), LinearMap::identity(2, 1));
        assert_eq!(ev("tr . m . comul . unit", &alg).scalar(), Some(q(2)));
        assert_eq!(ev("empty", &alg).scalar(), Some(q(1)));
        assert!(eval_term(&parse("m . m").unwrap(), &alg).is_err());
    }

    #[test]
    fn rotation_separates_the_legs() {
        let alg = hadamard_with_p();
        let mut ov = Overrides::new();
        ov.insert(PrimeLabel::new("P").unwrap(), rotation());
        let left = eval_with_endo_override(&parse("m . (pe(P) * id)").unwrap(), &alg, &ov).unwrap();
        let right = eval_with_endo_override(&parse("m . (id * pe(P))").unwrap(), &alg, &ov).unwrap();
        assert_eq!(left.apply(&basis2(0, 1)), vec![q(0), q(-1)]);
        assert_eq!(right.apply(&basis2(0, 1)), vec![q(1), q(0)]);
    }

    #[test]
    fn overrides_by_multiplication_agree() {
        let alg = hadamard_with_p();
        let t = parse("comul . pe(P) . m . (id * pe(P))").unwrap();
        let mut ov = Overrides::new();
        ov.insert(
            PrimeLabel::new("P").unwrap(),
            LinearMap::from_dense(2, 1, 1, &[vec![q(2), q(0)], vec![q(0), q(3)]]),
        );
        assert_eq!(eval_with_endo_override(&t, &alg, &ov).unwrap(), eval_term(&t, &alg).unwrap());
        ov.insert(PrimeLabel::new("P").unwrap(), LinearMap::identity(2, 1));
        let plain = parse("comul . m").unwrap();
        assert_eq!(eval_with_endo_override(&t, &alg, &ov).unwrap(), eval_term(&plain, &alg).unwrap());
    }

    #[test]
    fn semantic_matches_structural() {
        let alg = with_primes(
            diagonal(&[frac(1, 2), q(3)]),
            &[("P", vec![q(2), frac(-1, 3)]), ("Q", vec![q(5), q(7)])],
        );
        for src in [
            "id",
            "m . (pe(P) * id)",
            "swap . (pu(Q) * pe(P))",
            "tr . m . comul . unit",
            "(comul * id) . (id * m) . (pe(Q) * swap)",
            "(tr . pu(Q)) * (comul . pe(P) . m . comul . m)",
        ] {
            let t = parse(src).unwrap();
            let c = cospan_of_term(&t).unwrap();
            assert_eq!(eval_semantic(&c, &alg).unwrap(), eval_term(&t, &alg).unwrap(), "{src}");
        }
    }

    #[test]
    fn manifold_specs() {
        let m: ManifoldSpec = "P#P#g0".parse().unwrap();
        assert_eq!(m.primes.len(), 2);
        assert_eq!(m.genus, 0);
        let m: ManifoldSpec = "RP3 # (S2xS1)^2 # S2xS1".parse().unwrap();
        assert_eq!(m.genus, 3);
        assert_eq!(m.to_string(), "RP3 # (S2xS1)^3");
        assert_eq!("S3".parse::<ManifoldSpec>().unwrap(), ManifoldSpec::default());
        assert!("P##Q".parse::<ManifoldSpec>().is_err());
        assert!("(S2xS1)^x".parse::<ManifoldSpec>().is_err());
    }

    #[test]
    fn closed_invariants() {
        let alg = hadamard_with_p();
        let z = |s: &str| closed_invariant(&s.parse().unwrap(), &alg).unwrap();
        assert_eq!(z("S3"), q(2));
        assert_eq!(z("P"), q(5));
        assert_eq!(z("P#P"), q(13));
        assert_eq!(z("(S2xS1)^1"), q(2));
        let dec = hadamard_idempotents();
        let zc = |s: &str| closed_invariant_by_characters(&s.parse().unwrap(), &alg, &dec).unwrap();
        assert_eq!(zc("P#P"), q(13));
        assert_eq!(zc("S3"), q(2));
        assert_eq!(zc("P#(S2xS1)^2"), z("P#(S2xS1)^2"));
    }

    #[test]
    fn characters_on_a_weighted_algebra() {
        // handle scalar on block i is 1/w_i
        let alg = with_primes(diagonal(&[frac(1, 2), q(3), q(-1)]), &[("P", vec![q(2), q(-1), frac(1, 4)])]);
        let dec = IdempotentDecomposition::new(
            alg.algebra(),
            (0..3).map(|i| (0..3).map(|j| if i == j { q(1) } else { q(0) }).collect()).collect(),
        )
        .unwrap();
        for s in ["S3", "P", "P#P#(S2xS1)^2", "g1"] {
            let m: ManifoldSpec = s.parse().unwrap();
            assert_eq!(
                closed_invariant(&m, &alg).unwrap(),
                closed_invariant_by_characters(&m, &alg, &dec).unwrap(),
                "{s}"
            );
        }
    }
}
