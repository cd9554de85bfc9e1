//! String diagrams: terms modulo the laws of a strict symmetric monoidal
//! category.
//!
//! Identities and swaps disappear into the wiring, so two terms have the same
//! canonical diagram exactly when they differ by associativity, units,
//! interchange and the naturality and involutivity of the symmetry.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use crate::term::{id_n, permutation_term, tensor_all, Generator, PrimeLabel, Term, TermError};

/// Where a wire starts: a boundary input, or an output port of a node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Src {
    In(usize),
    Out(usize, usize),
}

/// Where a wire ends: a boundary output, or an input port of a node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Tgt {
    Out(usize),
    In(usize, usize),
}

impl fmt::Display for Src {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Src::In(i) => write!(f, "in{i}"),
            Src::Out(n, p) => write!(f, "n{n}.{p}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Node {
    pub gen: Generator,
    /// Source feeding each input port.
    pub inputs: Vec<Src>,
}

impl Node {
    pub fn outputs(&self) -> usize {
        self.gen.arity().cod
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Diagram {
    pub dom: usize,
    pub nodes: Vec<Node>,
    /// Source feeding each boundary output.
    pub outputs: Vec<Src>,
}

/// Consumer of every wire.
struct Consumers {
    ins: Vec<Tgt>,
    outs: Vec<Vec<Tgt>>,
}

impl Consumers {
    fn of(&self, s: Src) -> Tgt {
        match s {
            Src::In(i) => self.ins[i],
            Src::Out(n, p) => self.outs[n][p],
        }
    }
}

impl Diagram {
    pub fn from_term(t: &Term) -> Result<Diagram, TermError> {
        let ty = t.typecheck()?;
        let mut nodes = Vec::new();
        let inputs: Vec<Src> = (0..ty.dom).map(Src::In).collect();
        let outputs = build(t, &inputs, &mut nodes);
        Ok(Diagram {
            dom: ty.dom,
            nodes,
            outputs,
        })
    }

    pub fn cod(&self) -> usize {
        self.outputs.len()
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    fn consumers(&self) -> Consumers {
        let mut ins = vec![Tgt::Out(usize::MAX); self.dom];
        let mut outs: Vec<Vec<Tgt>> = self
            .nodes
            .iter()
            .map(|n| vec![Tgt::Out(usize::MAX); n.outputs()])
            .collect();
        let mut set = |s: Src, t: Tgt| match s {
            Src::In(i) => ins[i] = t,
            Src::Out(n, p) => outs[n][p] = t,
        };
        for (n, node) in self.nodes.iter().enumerate() {
            for (p, &s) in node.inputs.iter().enumerate() {
                set(s, Tgt::In(n, p));
            }
        }
        for (j, &s) in self.outputs.iter().enumerate() {
            set(s, Tgt::Out(j));
        }
        Consumers { ins, outs }
    }

    /// Every wire, named by its source.
    pub fn wires(&self) -> Vec<Src> {
        let mut out: Vec<Src> = (0..self.dom).map(Src::In).collect();
        for (n, node) in self.nodes.iter().enumerate() {
            out.extend((0..node.outputs()).map(|p| Src::Out(n, p)));
        }
        out
    }

    fn renumber(&self, order: &[usize]) -> Diagram {
        let mut new_index = vec![usize::MAX; self.nodes.len()];
        for (new, &old) in order.iter().enumerate() {
            new_index[old] = new;
        }
        let map = |s: Src| match s {
            Src::In(i) => Src::In(i),
            Src::Out(n, p) => Src::Out(new_index[n], p),
        };
        Diagram {
            dom: self.dom,
            nodes: order
                .iter()
                .map(|&old| Node {
                    gen: self.nodes[old].gen.clone(),
                    inputs: self.nodes[old].inputs.iter().map(|&s| map(s)).collect(),
                })
                .collect(),
            outputs: self.outputs.iter().map(|&s| map(s)).collect(),
        }
    }

    /// Breadth-first numbering from `seeds`, following ports in order.
    fn traverse(&self, cons: &Consumers, seeds: &[usize], seen: &mut [bool]) -> Vec<usize> {
        let mut queue = VecDeque::new();
        let mut order = Vec::new();
        for &s in seeds {
            if !seen[s] {
                seen[s] = true;
                queue.push_back(s);
            }
        }
        while let Some(u) = queue.pop_front() {
            order.push(u);
            let inputs = self.nodes[u].inputs.iter().filter_map(|s| match s {
                Src::Out(v, _) => Some(*v),
                Src::In(_) => None,
            });
            let outputs = cons.outs[u].iter().filter_map(|t| match t {
                Tgt::In(v, _) => Some(*v),
                Tgt::Out(_) => None,
            });
            for v in inputs.chain(outputs).collect::<Vec<_>>() {
                if !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        order
    }

    /// Representative of the isomorphism class over the fixed boundary.
    pub fn canonical(&self) -> Diagram {
        let cons = self.consumers();
        let n = self.nodes.len();
        let mut seen = vec![false; n];
        let mut seeds = Vec::new();
        for t in &cons.ins {
            if let Tgt::In(v, _) = t {
                seeds.push(*v);
            }
        }
        for s in &self.outputs {
            if let Src::Out(v, _) = s {
                seeds.push(*v);
            }
        }
        let order = self.traverse(&cons, &seeds, &mut seen);

        // closed components: minimal encoding over all starting nodes
        let mut closed: Vec<Vec<Node>> = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let comp = self.traverse(&cons, &[start], &mut seen);
            let best = comp
                .iter()
                .map(|&s| {
                    let mut local_seen = vec![false; n];
                    let local = self.traverse(&cons, &[s], &mut local_seen);
                    encode_closed(self, &local)
                })
                .min()
                .expect("component is nonempty");
            closed.push(best);
        }
        closed.sort();
        let mut out = self.renumber(&order);
        for comp in closed {
            let offset = out.nodes.len();
            out.nodes.extend(comp.into_iter().map(|node| Node {
                inputs: node
                    .inputs
                    .iter()
                    .map(|s| match *s {
                        Src::Out(v, p) => Src::Out(v + offset, p),
                        Src::In(i) => Src::In(i),
                    })
                    .collect(),
                gen: node.gen,
            }));
        }
        out
    }

    /// A term whose diagram is this one.
    pub fn to_term(&self) -> Term {
        let cons = self.consumers();
        let order = self.topological_order();
        let mut wires: Vec<Src> = (0..self.dom).map(Src::In).collect();
        let mut layers = Vec::new();
        for &u in &order {
            let node = &self.nodes[u];
            let k = node.inputs.len();
            let n = wires.len();
            let start;
            if k == 0 {
                start = insertion_point(self, &cons, &wires, Src::Out(u, 0));
            } else {
                let positions: Vec<usize> = node
                    .inputs
                    .iter()
                    .map(|s| wires.iter().position(|w| w == s).expect("inputs are available"))
                    .collect();
                let rest: Vec<Src> = wires.iter().copied().filter(|w| !node.inputs.contains(w)).collect();
                start = wires[..positions[0]]
                    .iter()
                    .filter(|w| !node.inputs.contains(w))
                    .count();
                let mut arranged = rest[..start].to_vec();
                arranged.extend(node.inputs.iter().copied());
                arranged.extend(rest[start..].iter().copied());
                if arranged != wires {
                    let perm: Vec<usize> = wires
                        .iter()
                        .map(|w| arranged.iter().position(|a| a == w).expect("same wires"))
                        .collect();
                    layers.push(permutation_term(&perm).expect("rearrangement is a permutation"));
                }
                wires = arranged;
            }
            let mut factors = Vec::new();
            if start > 0 {
                factors.push(id_n(start));
            }
            factors.push(Term::Gen(node.gen.clone()));
            if n - k - start > 0 {
                factors.push(id_n(n - k - start));
            }
            layers.push(tensor_all(factors));
            let outs = (0..node.outputs()).map(|p| Src::Out(u, p));
            wires.splice(start..start + k, outs);
        }
        let perm: Vec<usize> = wires
            .iter()
            .map(|w| match cons.of(*w) {
                Tgt::Out(j) => j,
                Tgt::In(..) => unreachable!("every node has been placed"),
            })
            .collect();
        if perm.iter().enumerate().any(|(i, &p)| i != p) {
            layers.push(permutation_term(&perm).expect("outputs form a permutation"));
        }
        let mut iter = layers.into_iter();
        match iter.next() {
            None => id_n(self.dom),
            Some(first) => iter.fold(first, |acc, t| Term::compose(t, acc)),
        }
    }

    /// Post-order from the boundary outputs, then from the remaining nodes.
    fn topological_order(&self) -> Vec<usize> {
        fn visit(d: &Diagram, u: usize, done: &mut [bool], out: &mut Vec<usize>) {
            if done[u] {
                return;
            }
            done[u] = true;
            for s in &d.nodes[u].inputs {
                if let Src::Out(v, _) = s {
                    visit(d, *v, done, out);
                }
            }
            out.push(u);
        }
        let mut done = vec![false; self.nodes.len()];
        let mut out = Vec::new();
        for s in &self.outputs {
            if let Src::Out(v, _) = s {
                visit(self, *v, &mut done, &mut out);
            }
        }
        for u in 0..self.nodes.len() {
            visit(self, u, &mut done, &mut out);
        }
        out
    }

    pub fn has_cycle(&self) -> bool {
        let n = self.nodes.len();
        let mut indegree: Vec<usize> = self
            .nodes
            .iter()
            .map(|node| node.inputs.iter().filter(|s| matches!(s, Src::Out(..))).count())
            .collect();
        let cons = self.consumers();
        let mut ready: Vec<usize> = (0..n).filter(|&u| indegree[u] == 0).collect();
        let mut count = 0;
        while let Some(u) = ready.pop() {
            count += 1;
            for t in &cons.outs[u] {
                if let Tgt::In(v, _) = t {
                    indegree[*v] -= 1;
                    if indegree[*v] == 0 {
                        ready.push(*v);
                    }
                }
            }
        }
        count != n
    }

    /// Replaces labels according to `bindings`.
    pub fn instantiate(&self, bindings: &BTreeMap<PrimeLabel, PrimeLabel>) -> Diagram {
        let mut out = self.clone();
        for node in &mut out.nodes {
            node.gen = match &node.gen {
                Generator::PrimeEndo(p) => Generator::PrimeEndo(bindings.get(p).unwrap_or(p).clone()),
                Generator::PrimeUnit(p) => Generator::PrimeUnit(bindings.get(p).unwrap_or(p).clone()),
                g => g.clone(),
            };
        }
        out
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_term())
    }
}

fn build(t: &Term, inputs: &[Src], nodes: &mut Vec<Node>) -> Vec<Src> {
    match t {
        Term::Empty => Vec::new(),
        Term::Gen(Generator::Id) => inputs.to_vec(),
        Term::Gen(Generator::Swap) => vec![inputs[1], inputs[0]],
        Term::Gen(g) => {
            let n = nodes.len();
            nodes.push(Node {
                gen: g.clone(),
                inputs: inputs.to_vec(),
            });
            (0..g.arity().cod).map(|p| Src::Out(n, p)).collect()
        }
        Term::Compose(f, g) => {
            let mid = build(g, inputs, nodes);
            build(f, &mid, nodes)
        }
        Term::Tensor(f, g) => {
            let split = f.typecheck().expect("checked by caller").dom;
            let mut left = build(f, &inputs[..split], nodes);
            left.extend(build(g, &inputs[split..], nodes));
            left
        }
    }
}

fn encode_closed(d: &Diagram, order: &[usize]) -> Vec<Node> {
    let mut local = vec![usize::MAX; d.nodes.len()];
    for (i, &u) in order.iter().enumerate() {
        local[u] = i;
    }
    order
        .iter()
        .map(|&u| Node {
            gen: d.nodes[u].gen.clone(),
            inputs: d.nodes[u]
                .inputs
                .iter()
                .map(|s| match *s {
                    Src::Out(v, p) => Src::Out(local[v], p),
                    Src::In(i) => Src::In(i),
                })
                .collect(),
        })
        .collect()
}

/// Position for the output of a source-free node: next to the wire that
/// will sit beside it at its consumer.
fn insertion_point(d: &Diagram, cons: &Consumers, wires: &[Src], s: Src) -> usize {
    let neighbours = match cons.of(s) {
        Tgt::In(v, p) => {
            let ins = &d.nodes[v].inputs;
            (p.checked_sub(1).map(|q| ins[q]), ins.get(p + 1).copied())
        }
        Tgt::Out(j) => (
            j.checked_sub(1).map(|q| d.outputs[q]),
            d.outputs.get(j + 1).copied(),
        ),
    };
    if let Some(pos) = neighbours.0.and_then(|l| wires.iter().position(|w| *w == l)) {
        return pos + 1;
    }
    if let Some(pos) = neighbours.1.and_then(|r| wires.iter().position(|w| *w == r)) {
        return pos;
    }
    0
}

/// A rule side prepared for matching.
#[derive(Debug, Clone)]
pub struct Pattern {
    pub diagram: Diagram,
    order: Vec<usize>,
    /// Boundary input `i` wired straight to boundary output `j`.
    pass: Vec<(usize, usize)>,
}

/// An occurrence of a pattern in a host diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Match {
    /// Host node for each pattern node.
    pub nodes: Vec<usize>,
    /// Host wire for each pattern wire from input to output.
    pub wires: Vec<Src>,
    pub bindings: BTreeMap<PrimeLabel, PrimeLabel>,
    inputs: Vec<Src>,
    outputs: Vec<Tgt>,
}

fn bind(
    pattern: &Generator,
    host: &Generator,
    bindings: &mut BTreeMap<PrimeLabel, PrimeLabel>,
) -> bool {
    match (pattern, host) {
        (Generator::PrimeEndo(p), Generator::PrimeEndo(h)) | (Generator::PrimeUnit(p), Generator::PrimeUnit(h)) => {
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
        _ => pattern == host,
    }
}

impl Pattern {
    pub fn new(diagram: Diagram) -> Pattern {
        let cons = diagram.consumers();
        let n = diagram.nodes.len();
        let mut seen = vec![false; n];
        let mut order = Vec::new();
        for start in 0..n {
            if !seen[start] {
                order.extend(diagram.traverse(&cons, &[start], &mut seen));
            }
        }
        let pass = (0..diagram.dom)
            .filter_map(|i| match cons.ins[i] {
                Tgt::Out(j) => Some((i, j)),
                Tgt::In(..) => None,
            })
            .collect();
        Pattern {
            diagram,
            order,
            pass,
        }
    }

    pub fn from_term(t: &Term) -> Result<Pattern, TermError> {
        Ok(Pattern::new(Diagram::from_term(t)?))
    }

    /// All occurrences in `host`, in a deterministic order.
    pub fn matches(&self, host: &Diagram) -> Vec<Match> {
        let host_cons = host.consumers();
        let mut found = Vec::new();
        let mut assignment = vec![usize::MAX; self.diagram.nodes.len()];
        let mut used = vec![false; host.nodes.len()];
        self.extend(host, &host_cons, 0, &mut assignment, &mut used, &BTreeMap::new(), &mut found);
        found
    }

    #[allow(clippy::too_many_arguments)]
    fn extend(
        &self,
        host: &Diagram,
        host_cons: &Consumers,
        depth: usize,
        assignment: &mut Vec<usize>,
        used: &mut Vec<bool>,
        bindings: &BTreeMap<PrimeLabel, PrimeLabel>,
        found: &mut Vec<Match>,
    ) {
        if depth == self.order.len() {
            self.finish(host, host_cons, assignment, used, bindings, found);
            return;
        }
        let k = self.order[depth];
        let pnode = &self.diagram.nodes[k];
        let forced = self.forced_candidate(host, host_cons, k, assignment);
        let candidates: Vec<usize> = match forced {
            Some(Some(h)) => vec![h],
            Some(None) => return,
            None => (0..host.nodes.len()).collect(),
        };
        for h in candidates {
            if used[h] || host.nodes[h].inputs.len() != pnode.inputs.len() {
                continue;
            }
            let mut b = bindings.clone();
            if !bind(&pnode.gen, &host.nodes[h].gen, &mut b) {
                continue;
            }
            assignment[k] = h;
            if self.consistent(host, host_cons, k, assignment) {
                used[h] = true;
                self.extend(host, host_cons, depth + 1, assignment, used, &b, found);
                used[h] = false;
            }
            assignment[k] = usize::MAX;
        }
    }

    /// `Some(Some(h))` if an edge to an assigned node pins pattern node `k`
    /// to host node `h`, `Some(None)` if that edge cannot be matched.
    fn forced_candidate(
        &self,
        host: &Diagram,
        host_cons: &Consumers,
        k: usize,
        assignment: &[usize],
    ) -> Option<Option<usize>> {
        let pnode = &self.diagram.nodes[k];
        for (p, s) in pnode.inputs.iter().enumerate() {
            if let Src::Out(u, q) = *s {
                if assignment[u] != usize::MAX {
                    return Some(match host_cons.outs[assignment[u]][q] {
                        Tgt::In(h, hp) if hp == p => Some(h),
                        _ => None,
                    });
                }
            }
        }
        for (u, other) in self.diagram.nodes.iter().enumerate() {
            if assignment[u] == usize::MAX {
                continue;
            }
            for (p, s) in other.inputs.iter().enumerate() {
                if let Src::Out(v, q) = *s {
                    if v == k {
                        return Some(match host.nodes[assignment[u]].inputs[p] {
                            Src::Out(h, hq) if hq == q => Some(h),
                            _ => None,
                        });
                    }
                }
            }
        }
        None
    }

    /// Every pattern edge between `k` and an assigned node exists in the host.
    fn consistent(&self, host: &Diagram, host_cons: &Consumers, k: usize, assignment: &[usize]) -> bool {
        let h = assignment[k];
        for (p, s) in self.diagram.nodes[k].inputs.iter().enumerate() {
            if let Src::Out(u, q) = *s {
                if assignment[u] != usize::MAX && host.nodes[h].inputs[p] != Src::Out(assignment[u], q) {
                    return false;
                }
            }
        }
        for (u, other) in self.diagram.nodes.iter().enumerate() {
            if assignment[u] == usize::MAX {
                continue;
            }
            for (p, s) in other.inputs.iter().enumerate() {
                if let Src::Out(v, q) = *s {
                    if v == k && host_cons.outs[h][q] != Tgt::In(assignment[u], p) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn finish(
        &self,
        host: &Diagram,
        host_cons: &Consumers,
        assignment: &[usize],
        used: &[bool],
        bindings: &BTreeMap<PrimeLabel, PrimeLabel>,
        found: &mut Vec<Match>,
    ) {
        let pcons = self.diagram.consumers();
        let matched_src = |s: Src| matches!(s, Src::Out(n, _) if used[n]);
        let matched_tgt = |t: Tgt| matches!(t, Tgt::In(n, _) if used[n]);
        let mut inputs = vec![Src::In(usize::MAX); self.diagram.dom];
        for (i, slot) in inputs.iter_mut().enumerate() {
            if let Tgt::In(u, p) = pcons.ins[i] {
                let s = host.nodes[assignment[u]].inputs[p];
                if matched_src(s) {
                    return;
                }
                *slot = s;
            }
        }
        let mut outputs = vec![Tgt::Out(usize::MAX); self.diagram.cod()];
        for (j, slot) in outputs.iter_mut().enumerate() {
            if let Src::Out(u, q) = self.diagram.outputs[j] {
                let t = host_cons.outs[assignment[u]][q];
                if matched_tgt(t) {
                    return;
                }
                *slot = t;
            }
        }
        let free: Vec<Src> = host
            .wires()
            .into_iter()
            .filter(|&w| !matched_src(w) && !matched_tgt(host_cons.of(w)))
            .collect();
        let mut chosen = Vec::new();
        self.assign_pass(host, host_cons, &free, &mut chosen, assignment, bindings, &mut inputs, &mut outputs, used, found);
    }

    #[allow(clippy::too_many_arguments)]
    fn assign_pass(
        &self,
        host: &Diagram,
        host_cons: &Consumers,
        free: &[Src],
        chosen: &mut Vec<Src>,
        assignment: &[usize],
        bindings: &BTreeMap<PrimeLabel, PrimeLabel>,
        inputs: &mut Vec<Src>,
        outputs: &mut Vec<Tgt>,
        used: &[bool],
        found: &mut Vec<Match>,
    ) {
        if chosen.len() == self.pass.len() {
            if convex(host, host_cons, used, inputs, outputs) {
                found.push(Match {
                    nodes: assignment.to_vec(),
                    wires: chosen.clone(),
                    bindings: bindings.clone(),
                    inputs: inputs.clone(),
                    outputs: outputs.clone(),
                });
            }
            return;
        }
        let (i, j) = self.pass[chosen.len()];
        for &w in free {
            if chosen.contains(&w) {
                continue;
            }
            chosen.push(w);
            inputs[i] = w;
            outputs[j] = host_cons.of(w);
            self.assign_pass(host, host_cons, free, chosen, assignment, bindings, inputs, outputs, used, found);
            chosen.pop();
        }
    }
}

/// No path leaves the match and comes back into it.
fn convex(host: &Diagram, cons: &Consumers, used: &[bool], inputs: &[Src], outputs: &[Tgt]) -> bool {
    let n = host.nodes.len();
    let mut upstream = vec![false; n];
    for s in inputs {
        if let Src::Out(v, _) = s {
            upstream[*v] = true;
        }
    }
    let mut seen = vec![false; n];
    let mut stack: Vec<usize> = outputs
        .iter()
        .filter_map(|t| match t {
            Tgt::In(v, _) => Some(*v),
            Tgt::Out(_) => None,
        })
        .collect();
    while let Some(u) = stack.pop() {
        if seen[u] {
            continue;
        }
        seen[u] = true;
        if upstream[u] || used[u] {
            return false;
        }
        for t in &cons.outs[u] {
            if let Tgt::In(v, _) = t {
                stack.push(*v);
            }
        }
    }
    true
}

/// Replaces the occurrence `m` of some pattern by `replacement`, whose
/// boundary must have the same arity. The result is not canonicalized.
pub fn replace(host: &Diagram, m: &Match, replacement: &Diagram) -> Diagram {
    let mut matched = vec![false; host.nodes.len()];
    for &h in &m.nodes {
        matched[h] = true;
    }
    let mut new_index = vec![usize::MAX; host.nodes.len()];
    let mut kept = 0;
    for (u, slot) in new_index.iter_mut().enumerate() {
        if !matched[u] {
            *slot = kept;
            kept += 1;
        }
    }
    let host_src = |s: Src| match s {
        Src::In(i) => Src::In(i),
        Src::Out(n, p) => Src::Out(new_index[n], p),
    };
    let repl_src = |s: Src| match s {
        Src::In(i) => host_src(m.inputs[i]),
        Src::Out(n, p) => Src::Out(kept + n, p),
    };
    let mut nodes: Vec<Node> = host
        .nodes
        .iter()
        .enumerate()
        .filter(|(u, _)| !matched[*u])
        .map(|(_, node)| Node {
            gen: node.gen.clone(),
            inputs: node.inputs.iter().map(|&s| host_src(s)).collect(),
        })
        .collect();
    let mut outputs: Vec<Src> = host.outputs.iter().map(|&s| host_src(s)).collect();
    for node in &replacement.nodes {
        nodes.push(Node {
            gen: node.gen.clone(),
            inputs: node.inputs.iter().map(|&s| repl_src(s)).collect(),
        });
    }
    for (j, t) in m.outputs.iter().enumerate() {
        let s = repl_src(replacement.outputs[j]);
        match *t {
            Tgt::Out(k) => outputs[k] = s,
            Tgt::In(n, p) => nodes[new_index[n]].inputs[p] = s,
        }
    }
    Diagram {
        dom: host.dom,
        nodes,
        outputs,
    }
}
