//! Commutative Frobenius algebras over the rationals, and their prime-unit
//! extensions.
//!
//! Structure constants: `e_i * e_j = sum_k mul[k][i][j] e_k` and
//! `comul(e_k) = sum_{i,j} comul[i][j][k] e_i (x) e_j`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linmap::LinearMap;
use crate::rational::{format_q, JsonQ, Q};
use crate::term::PrimeLabel;

pub type Tensor3 = Vec<Vec<Vec<Q>>>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("shape error: {0}")]
    Shape(String),
    #[error("trace pairing is degenerate")]
    DegeneratePairing,
    #[error("not a commutative Frobenius algebra:\n{0}")]
    NotFrobenius(CfReport),
    #[error("unknown prime {0}")]
    UnknownPrime(PrimeLabel),
    #[error("invalid idempotent decomposition: {0}")]
    BadDecomposition(String),
    #[error("multiplication by {prime} is not scalar on block {block}")]
    NotScalarOnBlock { block: usize, prime: String },
    #[error("invalid algebra file: {0}")]
    Json(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrobeniusAlgebraSpec {
    pub dim: usize,
    pub mul: Tensor3,
    pub unit: Vec<Q>,
    pub trace: Vec<Q>,
    pub comul: Option<Tensor3>,
}

fn check_tensor(name: &str, t: &Tensor3, d: usize) -> Result<(), AlgebraError> {
    let ok = t.len() == d && t.iter().all(|a| a.len() == d && a.iter().all(|b| b.len() == d));
    if ok {
        Ok(())
    } else {
        Err(AlgebraError::Shape(format!("{name} must be {d}x{d}x{d}")))
    }
}

impl FrobeniusAlgebraSpec {
    pub fn check_shapes(&self) -> Result<(), AlgebraError> {
        let d = self.dim;
        if d == 0 {
            return Err(AlgebraError::Shape("dimension must be positive".into()));
        }
        check_tensor("mul", &self.mul, d)?;
        if let Some(c) = &self.comul {
            check_tensor("comul", c, d)?;
        }
        if self.unit.len() != d || self.trace.len() != d {
            return Err(AlgebraError::Shape(format!("unit and trace must have length {d}")));
        }
        Ok(())
    }

    pub fn basis(&self, i: usize) -> Vec<Q> {
        (0..self.dim).map(|k| if k == i { Q::one() } else { Q::zero() }).collect()
    }

    pub fn product(&self, a: &[Q], b: &[Q]) -> Vec<Q> {
        let d = self.dim;
        let mut out = vec![Q::zero(); d];
        for i in 0..d {
            if a[i].is_zero() {
                continue;
            }
            for j in 0..d {
                if b[j].is_zero() {
                    continue;
                }
                let ab = &a[i] * &b[j];
                for (k, o) in out.iter_mut().enumerate() {
                    if !self.mul[k][i][j].is_zero() {
                        *o += &ab * &self.mul[k][i][j];
                    }
                }
            }
        }
        out
    }

    pub fn apply_trace(&self, a: &[Q]) -> Q {
        a.iter().zip(&self.trace).map(|(x, t)| x * t).fold(Q::zero(), |s, x| s + x)
    }

    /// `comul(a)` as a flat `d*d` vector, index `i*d + j`.
    pub fn coproduct(&self, a: &[Q]) -> Option<Vec<Q>> {
        let c = self.comul.as_ref()?;
        let d = self.dim;
        let mut out = vec![Q::zero(); d * d];
        for k in 0..d {
            if a[k].is_zero() {
                continue;
            }
            for i in 0..d {
                for j in 0..d {
                    out[i * d + j] += &a[k] * &c[i][j][k];
                }
            }
        }
        Some(out)
    }

    /// The handle operator `m . comul`.
    pub fn handle(&self, a: &[Q]) -> Option<Vec<Q>> {
        let d = self.dim;
        let co = self.coproduct(a)?;
        let mut out = vec![Q::zero(); d];
        for i in 0..d {
            for j in 0..d {
                let w = &co[i * d + j];
                if w.is_zero() {
                    continue;
                }
                for (k, o) in out.iter_mut().enumerate() {
                    *o += w * &self.mul[k][i][j];
                }
            }
        }
        Some(out)
    }

    /// Matrix of `a |-> x * a`.
    pub fn multiplication_matrix(&self, x: &[Q]) -> LinearMap {
        let d = self.dim;
        let mut m = LinearMap::zero(d, 1, 1);
        for i in 0..d {
            let col = self.product(x, &self.basis(i));
            for (k, v) in col.into_iter().enumerate() {
                m.set(k, i, v);
            }
        }
        m
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Axiom {
    Commutativity,
    Associativity,
    Unit,
    Coassociativity,
    Cocommutativity,
    Counit,
    Frobenius,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::Commutativity => "commutativity",
            Axiom::Associativity => "associativity",
            Axiom::Unit => "unit",
            Axiom::Coassociativity => "coassociativity",
            Axiom::Cocommutativity => "cocommutativity",
            Axiom::Counit => "counit",
            Axiom::Frobenius => "frobenius",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomCheck {
    pub axiom: Axiom,
    pub passed: bool,
    /// First failing index triple, when there is one.
    pub witness: Option<[usize; 3]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CfReport {
    pub checks: Vec<AxiomCheck>,
}

impl CfReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn get(&self, axiom: Axiom) -> &AxiomCheck {
        self.checks.iter().find(|c| c.axiom == axiom).expect("every axiom is checked")
    }
}

impl fmt::Display for CfReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            match (c.passed, c.witness) {
                (true, _) => writeln!(f, "{:<16} pass", c.axiom)?,
                (false, Some([a, b, x])) => {
                    writeln!(f, "{:<16} FAIL at ({a}, {b}, {x})", c.axiom)?
                }
                (false, None) => writeln!(f, "{:<16} FAIL (no comultiplication)", c.axiom)?,
            }
        }
        Ok(())
    }
}

fn first_failure(
    d: usize,
    mut holds: impl FnMut(usize, usize, usize) -> bool,
) -> Option<[usize; 3]> {
    for a in 0..d {
        for b in 0..d {
            for c in 0..d {
                if !holds(a, b, c) {
                    return Some([a, b, c]);
                }
            }
        }
    }
    None
}

fn check(axiom: Axiom, witness: Option<[usize; 3]>) -> AxiomCheck {
    AxiomCheck {
        axiom,
        passed: witness.is_none(),
        witness,
    }
}

/// Checks every commutative Frobenius axiom as an exact tensor identity.
pub fn verify_cf(spec: &FrobeniusAlgebraSpec) -> Result<CfReport, AlgebraError> {
    spec.check_shapes()?;
    let d = spec.dim;
    let mul = &spec.mul;
    let mut checks = Vec::new();

    checks.push(check(
        Axiom::Commutativity,
        first_failure(d, |i, j, k| mul[k][i][j] == mul[k][j][i]),
    ));

    let e: Vec<Vec<Q>> = (0..d).map(|i| spec.basis(i)).collect();
    let prod: Vec<Vec<Vec<Q>>> = (0..d)
        .map(|i| (0..d).map(|j| spec.product(&e[i], &e[j])).collect())
        .collect();
    checks.push(check(
        Axiom::Associativity,
        first_failure(d, |i, j, l| {
            spec.product(&prod[i][j], &e[l]) == spec.product(&e[i], &prod[j][l])
        }),
    ));

    let unit_fail = (0..d).find_map(|i| {
        let left = spec.product(&spec.unit, &e[i]);
        let right = spec.product(&e[i], &spec.unit);
        (0..d)
            .find(|&k| left[k] != e[i][k] || right[k] != e[i][k])
            .map(|k| [i, k, 0])
    });
    checks.push(check(Axiom::Unit, unit_fail));

    let Some(co) = &spec.comul else {
        for axiom in [
            Axiom::Coassociativity,
            Axiom::Cocommutativity,
            Axiom::Counit,
            Axiom::Frobenius,
        ] {
            checks.push(AxiomCheck {
                axiom,
                passed: false,
                witness: None,
            });
        }
        return Ok(CfReport { checks });
    };

    // (comul (x) id) comul (e_k) vs (id (x) comul) comul (e_k), coefficient of e_a e_b e_c
    let coassoc_fail = (0..d).find_map(|k| {
        first_failure(d, |a, b, c| {
            let lhs = (0..d).fold(Q::zero(), |s, j| s + &co[a][b][j] * &co[j][c][k]);
            let rhs = (0..d).fold(Q::zero(), |s, j| s + &co[b][c][j] * &co[a][j][k]);
            lhs == rhs
        })
    });
    checks.push(check(Axiom::Coassociativity, coassoc_fail));

    checks.push(check(
        Axiom::Cocommutativity,
        first_failure(d, |i, j, k| co[i][j][k] == co[j][i][k]),
    ));

    let counit_fail = (0..d).find_map(|j| {
        (0..d).find_map(|k| {
            let v = (0..d).fold(Q::zero(), |s, i| s + &spec.trace[i] * &co[i][j][k]);
            let w = (0..d).fold(Q::zero(), |s, i| s + &spec.trace[i] * &co[j][i][k]);
            let delta = if j == k { Q::one() } else { Q::zero() };
            (v != delta || w != delta).then_some([j, k, 0])
        })
    });
    checks.push(check(Axiom::Counit, counit_fail));

    // (m (x) id)(id (x) comul)(e_a (x) e_b) vs comul(e_a e_b), coefficient of e_r (x) e_s
    let frob_fail = (0..d).find_map(|s| {
        first_failure(d, |a, b, r| {
            let lhs = (0..d).fold(Q::zero(), |acc, c| acc + &co[c][s][b] * &mul[r][a][c]);
            let rhs = (0..d).fold(Q::zero(), |acc, k| acc + &mul[k][a][b] * &co[r][s][k]);
            lhs == rhs
        })
    });
    checks.push(check(Axiom::Frobenius, frob_fail));

    Ok(CfReport { checks })
}

/// Inverse of a square rational matrix by Gauss-Jordan elimination.
pub fn invert(m: &[Vec<Q>]) -> Option<Vec<Vec<Q>>> {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        let inv = a[col][col].recip();
        for x in a[col].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let factor = a[r][col].clone();
                let pivot_row = a[col].clone();
                for (x, p) in a[r].iter_mut().zip(pivot_row) {
                    *x -= &factor * p;
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Fills in the comultiplication determined by the pairing `tr(a b)`.
pub fn derive_comul(spec: &FrobeniusAlgebraSpec) -> Result<FrobeniusAlgebraSpec, AlgebraError> {
    spec.check_shapes()?;
    let d = spec.dim;
    let pairing: Vec<Vec<Q>> = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| (0..d).fold(Q::zero(), |s, k| s + &spec.trace[k] * &spec.mul[k][i][j]))
                .collect()
        })
        .collect();
    let copairing = invert(&pairing).ok_or(AlgebraError::DegeneratePairing)?;
    // comul(e_k) = sum_{i,j} copairing[i][j] (e_k e_i) (x) e_j
    let mut comul = vec![vec![vec![Q::zero(); d]; d]; d];
    for (r, plane) in comul.iter_mut().enumerate() {
        for (j, row) in plane.iter_mut().enumerate() {
            for (k, slot) in row.iter_mut().enumerate() {
                *slot = (0..d).fold(Q::zero(), |s, i| s + &copairing[i][j] * &spec.mul[r][k][i]);
            }
        }
    }
    Ok(FrobeniusAlgebraSpec {
        comul: Some(comul),
        ..spec.clone()
    })
}

/// A verified commutative Frobenius algebra with an element `1_p` per prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LAlgebra {
    algebra: FrobeniusAlgebraSpec,
    prime_units: BTreeMap<PrimeLabel, Vec<Q>>,
}

impl LAlgebra {
    /// Derives the comultiplication if absent, then verifies every axiom.
    pub fn new(
        algebra: FrobeniusAlgebraSpec,
        prime_units: BTreeMap<PrimeLabel, Vec<Q>>,
    ) -> Result<Self, AlgebraError> {
        let algebra = if algebra.comul.is_some() {
            algebra
        } else {
            derive_comul(&algebra)?
        };
        let report = verify_cf(&algebra)?;
        if !report.all_passed() {
            return Err(AlgebraError::NotFrobenius(report));
        }
        for (p, v) in &prime_units {
            if v.len() != algebra.dim {
                return Err(AlgebraError::Shape(format!(
                    "prime unit {p} must have length {}",
                    algebra.dim
                )));
            }
        }
        Ok(LAlgebra {
            algebra,
            prime_units,
        })
    }

    pub fn algebra(&self) -> &FrobeniusAlgebraSpec {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim
    }

    pub fn prime_units(&self) -> &BTreeMap<PrimeLabel, Vec<Q>> {
        &self.prime_units
    }

    pub fn prime_unit(&self, p: &PrimeLabel) -> Result<&[Q], AlgebraError> {
        self.prime_units
            .get(p)
            .map(Vec::as_slice)
            .ok_or_else(|| AlgebraError::UnknownPrime(p.clone()))
    }

    pub fn with_prime(mut self, p: PrimeLabel, unit: Vec<Q>) -> Result<Self, AlgebraError> {
        if unit.len() != self.dim() {
            return Err(AlgebraError::Shape(format!("prime unit {p} has wrong length")));
        }
        self.prime_units.insert(p, unit);
        Ok(self)
    }

    pub fn from_json(src: &str) -> Result<Self, AlgebraError> {
        let raw: AlgebraJson =
            serde_json::from_str(src).map_err(|e| AlgebraError::Json(e.to_string()))?;
        let (spec, primes) = raw.into_parts()?;
        LAlgebra::new(spec, primes)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(AlgebraJson::from_parts(&self.algebra, &self.prime_units))
            .expect("algebra serializes")
    }
}

/// On-disk form: `{dim, mul, unit, trace, comul?, primes: {label: [q]}}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub dim: usize,
    pub mul: Vec<Vec<Vec<JsonQ>>>,
    pub unit: Vec<JsonQ>,
    pub trace: Vec<JsonQ>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub comul: Option<Vec<Vec<Vec<JsonQ>>>>,
    #[serde(default)]
    pub primes: BTreeMap<String, Vec<JsonQ>>,
}

fn unwrap3(t: Vec<Vec<Vec<JsonQ>>>) -> Tensor3 {
    t.into_iter()
        .map(|a| a.into_iter().map(|b| b.into_iter().map(|x| x.0).collect()).collect())
        .collect()
}

fn wrap3(t: &Tensor3) -> Vec<Vec<Vec<JsonQ>>> {
    t.iter()
        .map(|a| a.iter().map(|b| b.iter().cloned().map(JsonQ).collect()).collect())
        .collect()
}

impl AlgebraJson {
    /// The unverified spec and prime units.
    pub fn into_parts(
        self,
    ) -> Result<(FrobeniusAlgebraSpec, BTreeMap<PrimeLabel, Vec<Q>>), AlgebraError> {
        let spec = FrobeniusAlgebraSpec {
            dim: self.dim,
            mul: unwrap3(self.mul),
            unit: self.unit.into_iter().map(|x| x.0).collect(),
            trace: self.trace.into_iter().map(|x| x.0).collect(),
            comul: self.comul.map(unwrap3),
        };
        let mut primes = BTreeMap::new();
        for (k, v) in self.primes {
            let label = PrimeLabel::new(k.clone())
                .map_err(|_| AlgebraError::Json(format!("invalid prime label {k:?}")))?;
            primes.insert(label, v.into_iter().map(|x| x.0).collect());
        }
        Ok((spec, primes))
    }

    pub fn from_parts(spec: &FrobeniusAlgebraSpec, primes: &BTreeMap<PrimeLabel, Vec<Q>>) -> Self {
        AlgebraJson {
            dim: spec.dim,
            mul: wrap3(&spec.mul),
            unit: spec.unit.iter().cloned().map(JsonQ).collect(),
            trace: spec.trace.iter().cloned().map(JsonQ).collect(),
            comul: spec.comul.as_ref().map(wrap3),
            primes: primes
                .iter()
                .map(|(k, v)| (k.to_string(), v.iter().cloned().map(JsonQ).collect()))
                .collect(),
        }
    }
}

/// Matrix of multiplication by `1_p`.
pub fn prime_endo_matrix(alg: &LAlgebra, p: &PrimeLabel) -> Result<LinearMap, AlgebraError> {
    Ok(alg.algebra.multiplication_matrix(alg.prime_unit(p)?))
}

/// Whether `m . (endo * id) = m . (id * endo)`.
pub fn verify_legs(spec: &FrobeniusAlgebraSpec, endo: &LinearMap) -> Result<bool, AlgebraError> {
    let d = spec.dim;
    if endo.d != d || endo.dom_arity != 1 || endo.cod_arity != 1 {
        return Err(AlgebraError::Shape(format!("endomorphism must be {d}x{d}")));
    }
    let images: Vec<Vec<Q>> = (0..d).map(|i| endo.column(i)).collect();
    for i in 0..d {
        for j in 0..d {
            let left = spec.product(&images[i], &spec.basis(j));
            let right = spec.product(&spec.basis(i), &images[j]);
            if left != right {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Orthogonal idempotents summing to the unit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdempotentDecomposition {
    idempotents: Vec<Vec<Q>>,
}

impl IdempotentDecomposition {
    pub fn new(spec: &FrobeniusAlgebraSpec, idempotents: Vec<Vec<Q>>) -> Result<Self, AlgebraError> {
        let d = spec.dim;
        let bad = |m: String| Err(AlgebraError::BadDecomposition(m));
        if idempotents.iter().any(|v| v.len() != d) {
            return bad(format!("idempotents must have length {d}"));
        }
        let mut sum = vec![Q::zero(); d];
        for (i, a) in idempotents.iter().enumerate() {
            if a.iter().all(Zero::is_zero) {
                return bad(format!("idempotent {i} is zero"));
            }
            for (s, x) in sum.iter_mut().zip(a) {
                *s += x;
            }
            for (j, b) in idempotents.iter().enumerate() {
                let p = spec.product(a, b);
                let expected = if i == j { a.clone() } else { vec![Q::zero(); d] };
                if p != expected {
                    return bad(format!("pi_{i} * pi_{j} is wrong"));
                }
            }
        }
        if sum != spec.unit {
            return bad("idempotents do not sum to the unit".into());
        }
        Ok(IdempotentDecomposition { idempotents })
    }

    pub fn idempotents(&self) -> &[Vec<Q>] {
        &self.idempotents
    }

    pub fn len(&self) -> usize {
        self.idempotents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.idempotents.is_empty()
    }
}

/// The scalar by which `op` acts on the block `pi * A`, if it is scalar there.
pub fn block_scalar(
    spec: &FrobeniusAlgebraSpec,
    pi: &[Q],
    op: impl Fn(&[Q]) -> Vec<Q>,
) -> Option<Q> {
    let mut scalar: Option<Q> = None;
    for i in 0..spec.dim {
        let v = spec.product(pi, &spec.basis(i));
        let Some(idx) = v.iter().position(|x| !x.is_zero()) else {
            continue;
        };
        let w = op(&v);
        let c = &w[idx] / &v[idx];
        if w.iter().zip(&v).any(|(a, b)| *a != &c * b) {
            return None;
        }
        match &scalar {
            Some(s) if *s != c => return None,
            Some(_) => {}
            None => scalar = Some(c),
        }
    }
    scalar
}

/// `chi[block][prime]`, primes in label order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterTable {
    pub primes: Vec<PrimeLabel>,
    pub values: Vec<Vec<Q>>,
}

impl CharacterTable {
    pub fn get(&self, block: usize, p: &PrimeLabel) -> Option<&Q> {
        let j = self.primes.iter().position(|x| x == p)?;
        self.values.get(block)?.get(j)
    }
}

impl fmt::Display for CharacterTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (b, row) in self.values.iter().enumerate() {
            let cells: Vec<String> = self
                .primes
                .iter()
                .zip(row)
                .map(|(p, x)| format!("{p}={}", format_q(x)))
                .collect();
            writeln!(f, "block {b}: {}", cells.join(" "))?;
        }
        Ok(())
    }
}

pub fn characters(
    alg: &LAlgebra,
    dec: &IdempotentDecomposition,
) -> Result<CharacterTable, AlgebraError> {
    let spec = alg.algebra();
    let primes: Vec<PrimeLabel> = alg.prime_units.keys().cloned().collect();
    let mut values = Vec::new();
    for (block, pi) in dec.idempotents.iter().enumerate() {
        let mut row = Vec::new();
        for p in &primes {
            let unit = &alg.prime_units[p];
            let c = block_scalar(spec, pi, |v| spec.product(unit, v)).ok_or_else(|| {
                AlgebraError::NotScalarOnBlock {
                    block,
                    prime: p.to_string(),
                }
            })?;
            row.push(c);
        }
        values.push(row);
    }
    Ok(CharacterTable { primes, values })
}

/// Small algebras used by the demos and test suites.
pub mod fixtures {
    use super::*;
    use crate::rational::q;

    /// `Q^n` with coordinatewise product, unit `(1, ..., 1)` and trace
    /// `sum_i weights[i] x_i`; comultiplication `e_i |-> e_i (x) e_i / w_i`.
    pub fn diagonal(weights: &[Q]) -> FrobeniusAlgebraSpec {
        let d = weights.len();
        let mut mul = vec![vec![vec![Q::zero(); d]; d]; d];
        let mut comul = vec![vec![vec![Q::zero(); d]; d]; d];
        for i in 0..d {
            mul[i][i][i] = Q::one();
            comul[i][i][i] = weights[i].recip();
        }
        FrobeniusAlgebraSpec {
            dim: d,
            mul,
            unit: vec![Q::one(); d],
            trace: weights.to_vec(),
            comul: Some(comul),
        }
    }

    /// `R^2` with the Hadamard product and trace `a + b`.
    pub fn hadamard() -> FrobeniusAlgebraSpec {
        diagonal(&[q(1), q(1)])
    }

    /// `Q[x]/(x^2)` with trace picking the `x` coefficient (not semisimple).
    pub fn dual_numbers() -> FrobeniusAlgebraSpec {
        let mut mul = vec![vec![vec![Q::zero(); 2]; 2]; 2];
        mul[0][0][0] = Q::one();
        mul[1][0][1] = Q::one();
        mul[1][1][0] = Q::one();
        derive_comul(&FrobeniusAlgebraSpec {
            dim: 2,
            mul,
            unit: vec![q(1), q(0)],
            trace: vec![q(0), q(1)],
            comul: None,
        })
        .expect("dual numbers have a nondegenerate pairing")
    }

    pub fn with_primes(spec: FrobeniusAlgebraSpec, primes: &[(&str, Vec<Q>)]) -> LAlgebra {
        let units = primes
            .iter()
            .map(|(p, v)| (PrimeLabel::new(*p).expect("valid label"), v.clone()))
            .collect();
        LAlgebra::new(spec, units).expect("fixture verifies")
    }

    /// Hadamard `R^2` with `1_P = (2, 3)`.
    pub fn hadamard_with_p() -> LAlgebra {
        with_primes(hadamard(), &[("P", vec![q(2), q(3)])])
    }

    /// The Hadamard coordinate idempotents `e_1`, `e_2`.
    pub fn hadamard_idempotents() -> IdempotentDecomposition {
        IdempotentDecomposition::new(&hadamard(), vec![vec![q(1), q(0)], vec![q(0), q(1)]])
            .expect("coordinate idempotents")
    }

    /// Clockwise quarter turn `[[0, 1], [-1, 0]]`.
    pub fn rotation() -> LinearMap {
        LinearMap::from_dense(2, 1, 1, &[vec![q(0), q(1)], vec![q(-1), q(0)]])
    }
}
