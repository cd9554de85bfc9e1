//! Terms for morphisms of the strict skeleton of spherical 3d bordisms.
//!
//! Objects are natural numbers (the number of boundary 2-spheres). A term is
//! a tree of generators glued by composition (`f . g`, "f after g") and
//! disjoint union (`f * g`).

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermError {
    #[error("invalid prime label {0:?}")]
    InvalidLabel(String),
    #[error("cannot compose {left} after {right}: {right} has codomain {right_cod} but {left} has domain {left_dom}")]
    Mismatch {
        left: String,
        right: String,
        left_dom: usize,
        right_cod: usize,
    },
    #[error("permutation is not a bijection: {0:?}")]
    NotAPermutation(Vec<usize>),
}

/// Name of an irreducible prime 3-manifold, treated as an opaque string.
///
/// A leading `?` marks a metavariable; those only appear inside rewrite rule
/// patterns.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PrimeLabel(String);

fn is_label_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || matches!(c, '_' | '#' | '+' | '-' | '~')
}

impl PrimeLabel {
    pub fn new(name: impl Into<String>) -> Result<Self, TermError> {
        let name = name.into();
        if !name.is_empty() && name.chars().all(is_label_char) {
            Ok(PrimeLabel(name))
        } else {
            Err(TermError::InvalidLabel(name))
        }
    }

    /// A pattern metavariable, printed as `?name`.
    pub fn metavar(name: &str) -> Result<Self, TermError> {
        let label = PrimeLabel::new(name)?;
        Ok(PrimeLabel(format!("?{}", label.0)))
    }

    pub fn is_metavar(&self) -> bool {
        self.0.starts_with('?')
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for PrimeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Generator {
    Id,
    Mul,
    Unit,
    Comul,
    Counit,
    Swap,
    /// `p` with two balls removed, one in and one out.
    PrimeEndo(PrimeLabel),
    /// `p` with one ball removed, outgoing.
    PrimeUnit(PrimeLabel),
}

impl Generator {
    pub fn arity(&self) -> MorphismType {
        let (dom, cod) = match self {
            Generator::Id => (1, 1),
            Generator::Mul => (2, 1),
            Generator::Unit => (0, 1),
            Generator::Comul => (1, 2),
            Generator::Counit => (1, 0),
            Generator::Swap => (2, 2),
            Generator::PrimeEndo(_) => (1, 1),
            Generator::PrimeUnit(_) => (0, 1),
        };
        MorphismType { dom, cod }
    }

    pub fn label(&self) -> Option<&PrimeLabel> {
        match self {
            Generator::PrimeEndo(p) | Generator::PrimeUnit(p) => Some(p),
            _ => None,
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Id => f.write_str("id"),
            Generator::Mul => f.write_str("m"),
            Generator::Unit => f.write_str("unit"),
            Generator::Comul => f.write_str("comul"),
            Generator::Counit => f.write_str("tr"),
            Generator::Swap => f.write_str("swap"),
            Generator::PrimeEndo(p) => write!(f, "pe({p})"),
            Generator::PrimeUnit(p) => write!(f, "pu({p})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub struct MorphismType {
    pub dom: usize,
    pub cod: usize,
}

impl fmt::Display for MorphismType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.dom, self.cod)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Gen(Generator),
    /// Identity on the empty object.
    Empty,
    /// `Compose(f, g)` is f after g.
    Compose(Box<Term>, Box<Term>),
    Tensor(Box<Term>, Box<Term>),
}

impl Term {
    pub fn gen(g: Generator) -> Term {
        Term::Gen(g)
    }

    pub fn compose(f: Term, g: Term) -> Term {
        Term::Compose(Box::new(f), Box::new(g))
    }

    pub fn tensor(f: Term, g: Term) -> Term {
        Term::Tensor(Box::new(f), Box::new(g))
    }

    pub fn prime_endo(label: &str) -> Result<Term, TermError> {
        Ok(Term::Gen(Generator::PrimeEndo(PrimeLabel::new(label)?)))
    }

    pub fn prime_unit(label: &str) -> Result<Term, TermError> {
        Ok(Term::Gen(Generator::PrimeUnit(PrimeLabel::new(label)?)))
    }

    /// Domain and codomain of the whole term, checking every composition.
    pub fn typecheck(&self) -> Result<MorphismType, TermError> {
        match self {
            Term::Gen(g) => Ok(g.arity()),
            Term::Empty => Ok(MorphismType { dom: 0, cod: 0 }),
            Term::Compose(f, g) => {
                let tf = f.typecheck()?;
                let tg = g.typecheck()?;
                if tf.dom != tg.cod {
                    return Err(TermError::Mismatch {
                        left: f.to_string(),
                        right: g.to_string(),
                        left_dom: tf.dom,
                        right_cod: tg.cod,
                    });
                }
                Ok(MorphismType {
                    dom: tg.dom,
                    cod: tf.cod,
                })
            }
            Term::Tensor(f, g) => {
                let tf = f.typecheck()?;
                let tg = g.typecheck()?;
                Ok(MorphismType {
                    dom: tf.dom + tg.dom,
                    cod: tf.cod + tg.cod,
                })
            }
        }
    }

    /// Number of tree nodes.
    pub fn size(&self) -> usize {
        match self {
            Term::Gen(_) | Term::Empty => 1,
            Term::Compose(f, g) | Term::Tensor(f, g) => 1 + f.size() + g.size(),
        }
    }

    pub fn labels(&self) -> Vec<&PrimeLabel> {
        let mut out = Vec::new();
        self.collect_labels(&mut out);
        out
    }

    fn collect_labels<'a>(&'a self, out: &mut Vec<&'a PrimeLabel>) {
        match self {
            Term::Gen(g) => out.extend(g.label()),
            Term::Empty => {}
            Term::Compose(f, g) | Term::Tensor(f, g) => {
                f.collect_labels(out);
                g.collect_labels(out);
            }
        }
    }

    /// Subterm at a root-relative child-index path (0 = left, 1 = right).
    pub fn subterm(&self, path: &[usize]) -> Option<&Term> {
        match path.split_first() {
            None => Some(self),
            Some((&i, rest)) => match (self, i) {
                (Term::Compose(f, _) | Term::Tensor(f, _), 0) => f.subterm(rest),
                (Term::Compose(_, g) | Term::Tensor(_, g), 1) => g.subterm(rest),
                _ => None,
            },
        }
    }

    /// Replaces the subterm at `path`, returning `None` if the path is invalid.
    pub fn replace_at(&self, path: &[usize], replacement: Term) -> Option<Term> {
        match path.split_first() {
            None => Some(replacement),
            Some((&i, rest)) => match self {
                Term::Compose(f, g) => match i {
                    0 => Some(Term::compose(f.replace_at(rest, replacement)?, (**g).clone())),
                    1 => Some(Term::compose((**f).clone(), g.replace_at(rest, replacement)?)),
                    _ => None,
                },
                Term::Tensor(f, g) => match i {
                    0 => Some(Term::tensor(f.replace_at(rest, replacement)?, (**g).clone())),
                    1 => Some(Term::tensor((**f).clone(), g.replace_at(rest, replacement)?)),
                    _ => None,
                },
                _ => None,
            },
        }
    }

    /// All child-index paths in pre-order.
    pub fn positions(&self) -> Vec<Vec<usize>> {
        fn walk(t: &Term, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            out.push(prefix.clone());
            if let Term::Compose(f, g) | Term::Tensor(f, g) = t {
                prefix.push(0);
                walk(f, prefix, out);
                prefix.pop();
                prefix.push(1);
                walk(g, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        walk(self, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Gen(g) => write!(f, "{g}"),
            Term::Empty => f.write_str("empty"),
            Term::Compose(a, b) => write!(f, "({a} . {b})"),
            Term::Tensor(a, b) => write!(f, "({a} * {b})"),
        }
    }
}

/// Canonical fully parenthesized text.
pub fn print(t: &Term) -> String {
    t.to_string()
}

/// Identity on n spheres; `empty` for n = 0, otherwise a right-nested tensor.
pub fn id_n(n: usize) -> Term {
    match n {
        0 => Term::Empty,
        1 => Term::Gen(Generator::Id),
        _ => Term::tensor(Term::Gen(Generator::Id), id_n(n - 1)),
    }
}

/// Right-nested tensor of the given factors; `empty` if there are none.
pub fn tensor_all(factors: Vec<Term>) -> Term {
    let mut iter = factors.into_iter().rev();
    match iter.next() {
        None => Term::Empty,
        Some(last) => iter.fold(last, |acc, t| Term::tensor(t, acc)),
    }
}

/// `layers[0]` is applied first. Returns `id_n(n)` when there are no layers.
pub fn compose_all(n: usize, layers: Vec<Term>) -> Term {
    let mut iter = layers.into_iter();
    match iter.next() {
        None => id_n(n),
        Some(first) => iter.fold(first, |acc, t| Term::compose(t, acc)),
    }
}

/// A term realizing `perm`, where input position i feeds output position
/// `perm[i]`. Built from adjacent transpositions (bubble sort).
pub fn permutation_term(perm: &[usize]) -> Result<Term, TermError> {
    let n = perm.len();
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || seen[p] {
            return Err(TermError::NotAPermutation(perm.to_vec()));
        }
        seen[p] = true;
    }
    // targets[k] = output position wanted by the wire currently at position k
    let mut targets = perm.to_vec();
    let mut layers = Vec::new();
    loop {
        let mut swapped = false;
        for k in 0..n.saturating_sub(1) {
            if targets[k] > targets[k + 1] {
                targets.swap(k, k + 1);
                layers.push(swap_at(k, n));
                swapped = true;
            }
        }
        if !swapped {
            break;
        }
    }
    Ok(compose_all(n, layers))
}

fn swap_at(k: usize, n: usize) -> Term {
    let mut factors = Vec::new();
    if k > 0 {
        factors.push(id_n(k));
    }
    factors.push(Term::Gen(Generator::Swap));
    if n - k - 2 > 0 {
        factors.push(id_n(n - k - 2));
    }
    tensor_all(factors)
}
