//! Labelled cospans: the complete invariant of a bordism between spheres.
//!
//! A bordism is determined by how its boundary spheres are partitioned among
//! connected components, together with each component's connect-sum
//! decomposition: a number of `S2xS1` factors (the genus) and a multiset of
//! irreducible primes.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::term::{Generator, PrimeLabel, Term, TermError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CospanError {
    #[error("arity mismatch: cannot glue codomain {right_cod} onto domain {left_dom}")]
    ArityMismatch { left_dom: usize, right_cod: usize },
    #[error(transparent)]
    Type(#[from] TermError),
    #[error("malformed cospan: {0}")]
    Malformed(String),
}

#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ComponentLabel {
    pub genus: usize,
    /// Sorted.
    pub primes: Vec<PrimeLabel>,
}

impl ComponentLabel {
    pub fn new(genus: usize, mut primes: Vec<PrimeLabel>) -> Self {
        primes.sort();
        ComponentLabel { genus, primes }
    }

    fn merge(&mut self, other: &ComponentLabel) {
        self.genus += other.genus;
        self.primes.extend(other.primes.iter().cloned());
        self.primes.sort();
    }

    /// Connect-sum name such as `RP3 # T3 # (S2xS1)^2`, or `S3`.
    pub fn manifold_name(&self) -> String {
        let mut parts: Vec<String> = self.primes.iter().map(|p| p.to_string()).collect();
        if self.genus > 0 {
            parts.push(format!("(S2xS1)^{}", self.genus));
        }
        if parts.is_empty() {
            "S3".to_string()
        } else {
            parts.join(" # ")
        }
    }
}

/// One connected component, as seen from the boundary.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Component {
    #[serde(rename = "in")]
    pub ins: Vec<usize>,
    #[serde(rename = "out")]
    pub outs: Vec<usize>,
    pub genus: usize,
    pub primes: Vec<String>,
}

/// Cospan `dom -> apex <- cod` with a label on every apex point.
///
/// Values built by this module are always in canonical form, so structural
/// equality is isomorphism over the fixed boundary.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LabelledCospan {
    pub dom: usize,
    pub cod: usize,
    pub in_leg: Vec<usize>,
    pub out_leg: Vec<usize>,
    pub labels: Vec<ComponentLabel>,
}

impl LabelledCospan {
    /// Builds and canonicalizes a cospan from raw legs and labels.
    pub fn new(
        in_leg: Vec<usize>,
        out_leg: Vec<usize>,
        labels: Vec<ComponentLabel>,
    ) -> Result<Self, CospanError> {
        let apex = labels.len();
        if let Some(&bad) = in_leg.iter().chain(&out_leg).find(|&&c| c >= apex) {
            return Err(CospanError::Malformed(format!(
                "leg points at component {bad} but the apex has {apex}"
            )));
        }
        Ok(canonicalize(&LabelledCospan {
            dom: in_leg.len(),
            cod: out_leg.len(),
            in_leg,
            out_leg,
            labels,
        }))
    }

    /// Single connected component touching every boundary sphere.
    pub fn connected(dom: usize, cod: usize, label: ComponentLabel) -> Self {
        canonicalize(&LabelledCospan {
            dom,
            cod,
            in_leg: vec![0; dom],
            out_leg: vec![0; cod],
            labels: vec![label],
        })
    }

    pub fn apex_size(&self) -> usize {
        self.labels.len()
    }

    pub fn components(&self) -> Vec<Component> {
        let mut comps: Vec<Component> = self
            .labels
            .iter()
            .map(|l| Component {
                ins: Vec::new(),
                outs: Vec::new(),
                genus: l.genus,
                primes: l.primes.iter().map(|p| p.to_string()).collect(),
            })
            .collect();
        for (i, &c) in self.in_leg.iter().enumerate() {
            comps[c].ins.push(i);
        }
        for (j, &c) in self.out_leg.iter().enumerate() {
            comps[c].outs.push(j);
        }
        comps
    }

    /// Closed components are the apex points hit by neither leg.
    pub fn closed_components(&self) -> Vec<&ComponentLabel> {
        let mut hit = vec![false; self.labels.len()];
        for &c in self.in_leg.iter().chain(&self.out_leg) {
            hit[c] = true;
        }
        self.labels
            .iter()
            .zip(hit)
            .filter(|(_, h)| !h)
            .map(|(l, _)| l)
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Repr {
            dom: usize,
            cod: usize,
            components: Vec<Component>,
        }
        serde_json::to_value(Repr {
            dom: self.dom,
            cod: self.cod,
            components: self.components(),
        })
        .expect("cospan serializes")
    }
}

impl fmt::Display for LabelledCospan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&manifold_signature(self))
    }
}

pub fn cospan_of_generator(g: &Generator) -> LabelledCospan {
    match g {
        Generator::Swap => LabelledCospan {
            dom: 2,
            cod: 2,
            in_leg: vec![0, 1],
            out_leg: vec![1, 0],
            labels: vec![ComponentLabel::default(), ComponentLabel::default()],
        },
        _ => {
            let ty = g.arity();
            let label = ComponentLabel::new(0, g.label().cloned().into_iter().collect());
            LabelledCospan::connected(ty.dom, ty.cod, label)
        }
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }
}

/// `f` after `g`: glue the outgoing boundary of `g` to the incoming boundary
/// of `f`.
///
/// Every glued sphere that closes a loop in the merge graph contributes one
/// `S2xS1` factor, so a merged component gains its first Betti number
/// `b - v_f - v_g + 1`.
pub fn compose_cospans(
    f: &LabelledCospan,
    g: &LabelledCospan,
) -> Result<LabelledCospan, CospanError> {
    if g.cod != f.dom {
        return Err(CospanError::ArityMismatch {
            left_dom: f.dom,
            right_cod: g.cod,
        });
    }
    let ng = g.apex_size();
    let n = ng + f.apex_size();
    let mut uf = UnionFind::new(n);
    let mut cycles = vec![0usize; n];
    for i in 0..g.cod {
        let a = uf.find(g.out_leg[i]);
        let b = uf.find(ng + f.in_leg[i]);
        if a == b {
            cycles[a] += 1;
        } else {
            uf.parent[b] = a;
            cycles[a] += cycles[b];
        }
    }
    let mut index = BTreeMap::new();
    let mut labels: Vec<ComponentLabel> = Vec::new();
    let mut comp_of = vec![0; n];
    for (v, slot) in comp_of.iter_mut().enumerate() {
        let root = uf.find(v);
        let next = index.len();
        let c = *index.entry(root).or_insert(next);
        if c == labels.len() {
            labels.push(ComponentLabel::new(cycles[root], Vec::new()));
        }
        let own = if v < ng { &g.labels[v] } else { &f.labels[v - ng] };
        labels[c].merge(own);
        *slot = c;
    }
    let in_leg = g.in_leg.iter().map(|&c| comp_of[c]).collect();
    let out_leg = f.out_leg.iter().map(|&c| comp_of[ng + c]).collect();
    LabelledCospan::new(in_leg, out_leg, labels)
}

/// Disjoint union; `g`'s boundary indices follow `f`'s.
pub fn tensor_cospans(f: &LabelledCospan, g: &LabelledCospan) -> LabelledCospan {
    let shift = f.apex_size();
    let in_leg = f
        .in_leg
        .iter()
        .copied()
        .chain(g.in_leg.iter().map(|c| c + shift))
        .collect();
    let out_leg = f
        .out_leg
        .iter()
        .copied()
        .chain(g.out_leg.iter().map(|c| c + shift))
        .collect();
    let labels = f.labels.iter().chain(&g.labels).cloned().collect();
    canonicalize(&LabelledCospan {
        dom: f.dom + g.dom,
        cod: f.cod + g.cod,
        in_leg,
        out_leg,
        labels,
    })
}

pub fn cospan_of_term(t: &Term) -> Result<LabelledCospan, CospanError> {
    t.typecheck()?;
    fold(t)
}

fn fold(t: &Term) -> Result<LabelledCospan, CospanError> {
    match t {
        Term::Gen(g) => Ok(cospan_of_generator(g)),
        Term::Empty => Ok(LabelledCospan {
            dom: 0,
            cod: 0,
            in_leg: vec![],
            out_leg: vec![],
            labels: vec![],
        }),
        Term::Compose(f, g) => compose_cospans(&fold(f)?, &fold(g)?),
        Term::Tensor(f, g) => Ok(tensor_cospans(&fold(f)?, &fold(g)?)),
    }
}

/// Renumbers the apex: boundary components by (incoming indices, outgoing
/// indices), then closed components by label.
pub fn canonicalize(c: &LabelledCospan) -> LabelledCospan {
    let comps = c.components_raw();
    let mut order: Vec<usize> = (0..comps.len()).collect();
    order.sort_by(|&a, &b| {
        let (ia, oa, la) = &comps[a];
        let (ib, ob, lb) = &comps[b];
        let closed_a = ia.is_empty() && oa.is_empty();
        let closed_b = ib.is_empty() && ob.is_empty();
        closed_a
            .cmp(&closed_b)
            .then_with(|| {
                if closed_a {
                    la.cmp(lb)
                } else {
                    (ia, oa).cmp(&(ib, ob))
                }
            })
    });
    let mut rename = vec![0; comps.len()];
    for (new, &old) in order.iter().enumerate() {
        rename[old] = new;
    }
    LabelledCospan {
        dom: c.dom,
        cod: c.cod,
        in_leg: c.in_leg.iter().map(|&x| rename[x]).collect(),
        out_leg: c.out_leg.iter().map(|&x| rename[x]).collect(),
        labels: order.iter().map(|&old| c.labels[old].clone()).collect(),
    }
}

impl LabelledCospan {
    fn components_raw(&self) -> Vec<(Vec<usize>, Vec<usize>, &ComponentLabel)> {
        let mut comps: Vec<_> = self.labels.iter().map(|l| (Vec::new(), Vec::new(), l)).collect();
        for (i, &c) in self.in_leg.iter().enumerate() {
            comps[c].0.push(i);
        }
        for (j, &c) in self.out_leg.iter().enumerate() {
            comps[c].1.push(j);
        }
        comps
    }
}

/// Equality of bordism classes: same type and identical canonical cospans.
pub fn terms_equal(a: &Term, b: &Term) -> Result<bool, CospanError> {
    let ca = cospan_of_term(a)?;
    let cb = cospan_of_term(b)?;
    Ok(ca == cb)
}

/// Human-readable rendering, one entry per component in canonical order.
pub fn manifold_signature(c: &LabelledCospan) -> String {
    if c.labels.is_empty() {
        return "empty".to_string();
    }
    c.components_raw()
        .iter()
        .map(|(ins, outs, label)| {
            let name = label.manifold_name();
            let balls = ins.len() + outs.len();
            if balls == 0 {
                format!("{name} closed")
            } else {
                let noun = if balls == 1 { "ball" } else { "balls" };
                format!("{name} \\ {balls} {noun} ({} in, {} out)", ins.len(), outs.len())
            }
        })
        .collect::<Vec<_>>()
        .join("; ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse;
    use crate::term::permutation_term;

    fn cospan(src: &str) -> LabelledCospan {
        cospan_of_term(&parse(src).unwrap()).unwrap()
    }

    fn label(genus: usize, primes: &[&str]) -> ComponentLabel {
        ComponentLabel::new(genus, primes.iter().map(|p| PrimeLabel::new(*p).unwrap()).collect())
    }

    #[test]
    fn generator_cospans() {
        let m = cospan_of_generator(&Generator::Mul);
        assert_eq!((m.dom, m.cod), (2, 1));
        assert_eq!(m.in_leg, vec![0, 0]);
        assert_eq!(m.out_leg, vec![0]);
        assert_eq!(m.labels, vec![label(0, &[])]);

        let pe = cospan_of_generator(&Generator::PrimeEndo(PrimeLabel::new("RP3").unwrap()));
        assert_eq!((pe.dom, pe.cod), (1, 1));
        assert_eq!(pe.labels, vec![label(0, &["RP3"])]);

        let sw = cospan_of_generator(&Generator::Swap);
        assert_eq!(sw.in_leg, vec![0, 1]);
        assert_eq!(sw.out_leg, vec![1, 0]);
        assert_eq!(sw.labels.len(), 2);
    }

    #[test]
    fn genus_gain_along_three_spheres() {
        let f = LabelledCospan::connected(3, 1, label(0, &[]));
        let g = LabelledCospan::connected(1, 3, label(0, &[]));
        let c = compose_cospans(&f, &g).unwrap();
        assert_eq!(c.labels, vec![label(2, &[])]);
    }

    #[test]
    fn pants_after_copants_is_a_handle() {
        let c = compose_cospans(
            &cospan_of_generator(&Generator::Mul),
            &cospan_of_generator(&Generator::Comul),
        )
        .unwrap();
        assert_eq!((c.dom, c.cod), (1, 1));
        assert_eq!(c.labels, vec![label(1, &[])]);
    }

    #[test]
    fn filling_a_prime_endo() {
        let p = PrimeLabel::new("P").unwrap();
        let c = compose_cospans(
            &cospan_of_generator(&Generator::PrimeEndo(p.clone())),
            &cospan_of_generator(&Generator::Unit),
        )
        .unwrap();
        assert_eq!(c, cospan_of_generator(&Generator::PrimeUnit(p)));
    }

    #[test]
    fn arity_mismatch() {
        let err = compose_cospans(
            &cospan_of_generator(&Generator::Mul),
            &cospan_of_generator(&Generator::Unit),
        )
        .unwrap_err();
        assert!(matches!(err, CospanError::ArityMismatch { left_dom: 2, right_cod: 1 }));
    }

    #[test]
    fn tensors() {
        let c = cospan("id * id");
        assert_eq!(c.in_leg, vec![0, 1]);
        assert_eq!(c.out_leg, vec![0, 1]);

        let c = cospan("unit * tr");
        assert_eq!((c.dom, c.cod), (1, 1));
        // the unit component has no incoming indices so it sorts first
        assert_eq!(c.in_leg, vec![1]);
        assert_eq!(c.out_leg, vec![0]);

        let c = cospan("(tr . unit) * id");
        assert_eq!(c.apex_size(), 2);
        assert_eq!(c.closed_components(), vec![&label(0, &[])]);
    }

    #[test]
    fn term_cospans() {
        let c = cospan("tr . m . comul . unit");
        assert_eq!((c.dom, c.cod), (0, 0));
        assert_eq!(c.labels, vec![label(1, &[])]);

        let legs_l = cospan("m . (pe(P) * id)");
        let legs_r = cospan("m . (id * pe(P))");
        assert_eq!(legs_l, legs_r);
        assert_eq!(legs_l.labels, vec![label(0, &["P"])]);

        assert_eq!(cospan("pe(A) . pe(B)"), cospan("pe(B) . pe(A)"));
        assert_eq!(cospan("pe(A) . pe(B)").labels, vec![label(0, &["A", "B"])]);
        assert_eq!(cospan("m"), cospan("m . swap"));
    }

    #[test]
    fn equality() {
        let eq = |a: &str, b: &str| terms_equal(&parse(a).unwrap(), &parse(b).unwrap()).unwrap();
        assert!(eq("m . (unit * id)", "id"));
        assert!(!eq("m . comul", "id"));
        assert!(eq("pe(P) . unit", "pu(P)"));
        assert!(!eq("swap", "id * id"));
        assert!(!eq("unit * unit", "unit"));
    }

    #[test]
    fn canonicalize_is_idempotent() {
        for src in ["swap", "unit * tr", "(tr . unit) * (tr . m . comul . unit) * swap"] {
            let c = cospan(src);
            assert_eq!(canonicalize(&c), c);
        }
    }

    #[test]
    fn closed_components_sorted_by_label() {
        let a = cospan("(tr . pu(B)) * (tr . unit)");
        let b = cospan("(tr . unit) * (tr . pu(B))");
        assert_eq!(a, b);
        assert_eq!(a.labels, vec![label(0, &[]), label(0, &["B"])]);
    }

    #[test]
    fn permutation_cospans() {
        let perm = [1, 2, 0];
        let c = cospan_of_term(&permutation_term(&perm).unwrap()).unwrap();
        for (i, &p) in perm.iter().enumerate() {
            assert_eq!(c.in_leg[i], c.out_leg[p]);
        }
    }

    #[test]
    fn signatures() {
        assert_eq!(manifold_signature(&cospan("id")), "S3 \\ 2 balls (1 in, 1 out)");
        assert_eq!(manifold_signature(&cospan("tr . m . comul . unit")), "(S2xS1)^1 closed");
        assert_eq!(manifold_signature(&cospan("pu(RP3)")), "RP3 \\ 1 ball (0 in, 1 out)");
        assert_eq!(
            manifold_signature(&cospan("m . (pe(T3) * pe(RP3)) . comul . m . comul . m")),
            "RP3 # T3 # (S2xS1)^2 \\ 3 balls (2 in, 1 out)"
        );
        assert_eq!(manifold_signature(&cospan("empty")), "empty");
    }

    #[test]
    fn json_shape() {
        let v = cospan("pe(P) . m").to_json();
        assert_eq!(
            v,
            serde_json::json!({"dom": 2, "cod": 1, "components": [
                {"in": [0, 1], "out": [0], "genus": 0, "primes": ["P"]}
            ]})
        );
    }
}
