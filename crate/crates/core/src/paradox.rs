//! Groundedness analysis of sentences with truth attributions.
//!
//! Each `T(t)` in a sentence points at the sentence coded by the value of
//! `t`, or at a sink when that value codes no sentence. Following these
//! pointers from a root sentence gives its reference graph. Edges carry the
//! parity of the negations above the attribution.
//!
//! Classification first computes the least fixed point of strong Kleene
//! evaluation over the graph, with attributions to the sink false. If the
//! root is settled it is grounded. Otherwise it is paradoxical when the
//! unsettled part reachable from the root has a closed walk of odd parity,
//! and ungrounded when it does not.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::eval::{
    check_symbols, eval_term, require_sentence, EvalConfig, EvalError, Evaluator, TruthHook,
    UnknownReason, Verdict,
};
use crate::godel::{decode, encode_formula, GodelCode};
use crate::syntax::{substitute, Formula, Node, Term};

pub const DEFAULT_BUDGET: usize = 10_000;

/// Truth attributions examined per node of budget before the graph is
/// declared partial.
const ATOMS_PER_NODE: usize = 100;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Polarity {
    Even,
    Odd,
}

impl Polarity {
    pub fn flip(self) -> Polarity {
        match self {
            Polarity::Even => Polarity::Odd,
            Polarity::Odd => Polarity::Even,
        }
    }

    pub fn is_odd(self) -> bool {
        self == Polarity::Odd
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Target {
    Sentence(usize),
    NotASentence,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub from: usize,
    pub to: Target,
    pub polarity: Polarity,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RefNode {
    pub code: GodelCode,
    pub formula: Formula,
}

#[derive(Clone, Debug)]
pub struct ReferenceGraph {
    nodes: Vec<RefNode>,
    edges: BTreeSet<Edge>,
    partial: bool,
    index: HashMap<BigUint, usize>,
    /// Every attribution value met, and where it points.
    targets: HashMap<BigUint, Target>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GroundVerdict {
    GroundedTrue,
    GroundedFalse,
    Paradoxical,
    Ungrounded,
    ResourceExceeded,
}

impl GroundVerdict {
    pub fn label(self) -> &'static str {
        match self {
            GroundVerdict::GroundedTrue => "GroundedTrue",
            GroundVerdict::GroundedFalse => "GroundedFalse",
            GroundVerdict::Paradoxical => "Paradoxical",
            GroundVerdict::Ungrounded => "Ungrounded",
            GroundVerdict::ResourceExceeded => "ResourceExceeded",
        }
    }
}

impl fmt::Display for GroundVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// What the closed walks of a part of the graph look like.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cycles {
    None,
    EvenOnly,
    Odd,
}

impl ReferenceGraph {
    pub fn root(&self) -> &RefNode {
        &self.nodes[0]
    }

    pub fn nodes(&self) -> &[RefNode] {
        &self.nodes
    }

    pub fn edges(&self) -> impl Iterator<Item = &Edge> {
        self.edges.iter()
    }

    /// Whether construction stopped early, on the node budget or on an
    /// attribution whose value depends on an unbounded quantifier.
    pub fn is_partial(&self) -> bool {
        self.partial
    }

    pub fn node_of(&self, code: &BigUint) -> Option<usize> {
        self.index.get(code).copied()
    }

    /// Least fixed point of strong Kleene evaluation, one verdict per node.
    pub fn valuation(&self, config: &EvalConfig) -> Result<Vec<Verdict>, EvalError> {
        let mut values = vec![Verdict::Unknown(UnknownReason::TruthAtom); self.nodes.len()];
        loop {
            let mut changed = false;
            for i in 0..self.nodes.len() {
                if values[i].is_known() {
                    continue;
                }
                let lookup = |v: &BigUint| match self.targets.get(v) {
                    Some(Target::Sentence(j)) => values[*j],
                    Some(Target::NotASentence) => Verdict::FalseInN,
                    None => Verdict::Unknown(UnknownReason::TruthAtom),
                };
                let v = Evaluator::new(config, TruthHook::Lookup(&lookup))
                    .formula(&self.nodes[i].formula)?;
                if v.is_known() {
                    values[i] = v;
                    changed = true;
                }
            }
            if !changed {
                return Ok(values);
            }
        }
    }

    /// Closed walks among the nodes with `alive` set that are reachable from
    /// the root through such nodes.
    pub fn cycles_among(&self, alive: &[bool]) -> Cycles {
        let n = self.nodes.len();
        let mut succ: Vec<Vec<(usize, Polarity)>> = vec![Vec::new(); n];
        for e in &self.edges {
            if let Target::Sentence(to) = e.to {
                if alive[e.from] && alive[to] {
                    succ[e.from].push((to, e.polarity));
                }
            }
        }
        let mut reach = vec![false; n];
        if alive[0] {
            reach[0] = true;
            let mut stack = vec![0];
            while let Some(u) = stack.pop() {
                for &(v, _) in &succ[u] {
                    if !reach[v] {
                        reach[v] = true;
                        stack.push(v);
                    }
                }
            }
        }
        for (u, out) in succ.iter_mut().enumerate() {
            if !reach[u] {
                out.clear();
            }
        }

        let component = strongly_connected(&succ);
        let mut result = Cycles::None;
        // In a strongly connected part every closed walk is even exactly
        // when the edges admit a consistent parity labelling.
        let mut label: Vec<Option<Polarity>> = vec![None; n];
        let mut undirected: Vec<Vec<(usize, Polarity)>> = vec![Vec::new(); n];
        for (u, out) in succ.iter().enumerate() {
            for &(v, p) in out {
                if component[u] == component[v] {
                    result = Cycles::EvenOnly;
                    undirected[u].push((v, p));
                    undirected[v].push((u, p));
                }
            }
        }
        for start in 0..n {
            if label[start].is_some() || undirected[start].is_empty() {
                continue;
            }
            label[start] = Some(Polarity::Even);
            let mut stack = vec![start];
            while let Some(u) = stack.pop() {
                let lu = label[u].expect("labelled before push");
                for &(v, p) in &undirected[u] {
                    let want = if p.is_odd() { lu.flip() } else { lu };
                    match label[v] {
                        None => {
                            label[v] = Some(want);
                            stack.push(v);
                        }
                        Some(lv) if lv != want => return Cycles::Odd,
                        Some(_) => {}
                    }
                }
            }
        }
        result
    }

    /// Closed walks anywhere in the part reachable from the root.
    pub fn cycles(&self) -> Cycles {
        self.cycles_among(&vec![true; self.nodes.len()])
    }

    /// The graph in Graphviz DOT syntax. Odd edges are drawn dashed.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph reference {\n");
        for (i, node) in self.nodes.iter().enumerate() {
            let shape = if i == 0 { ", peripheries=2" } else { "" };
            out.push_str(&format!(
                "  n{i} [label=\"{}\"{shape}];\n",
                dot_escape(&node.formula.to_string())
            ));
        }
        if self.edges.iter().any(|e| e.to == Target::NotASentence) {
            out.push_str("  sink [label=\"not a sentence\", shape=box];\n");
        }
        for e in &self.edges {
            let to = match e.to {
                Target::Sentence(j) => format!("n{j}"),
                Target::NotASentence => "sink".to_string(),
            };
            let style = match e.polarity {
                Polarity::Even => "label=\"even\"",
                Polarity::Odd => "label=\"odd\", style=dashed",
            };
            out.push_str(&format!("  n{} -> {to} [{style}];\n", e.from));
        }
        if self.partial {
            out.push_str("  partial [label=\"partial\", shape=plaintext];\n");
        }
        out.push_str("}\n");
        out
    }
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Component id per node, by Kosaraju's algorithm without recursion.
fn strongly_connected(succ: &[Vec<(usize, Polarity)>]) -> Vec<usize> {
    let n = succ.len();
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut stack = vec![(start, 0usize)];
        while let Some((u, next)) = stack.last_mut() {
            let u = *u;
            if let Some(&(v, _)) = succ[u].get(*next) {
                *next += 1;
                if !seen[v] {
                    seen[v] = true;
                    stack.push((v, 0));
                }
            } else {
                order.push(u);
                stack.pop();
            }
        }
    }
    let mut pred = vec![Vec::new(); n];
    for (u, out) in succ.iter().enumerate() {
        for &(v, _) in out {
            pred[v].push(u);
        }
    }
    let mut component = vec![usize::MAX; n];
    let mut count = 0;
    for &start in order.iter().rev() {
        if component[start] != usize::MAX {
            continue;
        }
        component[start] = count;
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for &v in &pred[u] {
                if component[v] == usize::MAX {
                    component[v] = count;
                    stack.push(v);
                }
            }
        }
        count += 1;
    }
    component
}

/// Whether `x` occurs in the argument of a truth attribution or in the
/// bound of a bounded quantifier.
fn steers_attributions(phi: &Formula, x: &str) -> bool {
    match phi {
        Formula::Eq(..) | Formula::Lt(..) | Formula::Falsum => false,
        Formula::Truth(t) => t.mentions(x),
        Formula::Not(a) | Formula::ForAll(_, a) | Formula::Exists(_, a) => steers_attributions(a, x),
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
            steers_attributions(a, x) || steers_attributions(b, x)
        }
        Formula::ForAllBelow(_, bound, a) | Formula::ExistsBelow(_, bound, a) => {
            (bound.mentions(x) && !a.is_truth_free()) || steers_attributions(a, x)
        }
    }
}

struct Builder<'a> {
    config: &'a EvalConfig,
    budget: usize,
    atoms_left: usize,
    graph: ReferenceGraph,
    queue: VecDeque<usize>,
}

impl Builder<'_> {
    fn target(&mut self, value: &BigUint) -> Result<Option<Target>, EvalError> {
        if let Some(t) = self.graph.targets.get(value) {
            return Ok(Some(*t));
        }
        let target = match decode(value) {
            Some(Node::Formula(phi)) if phi.is_sentence() => {
                if self.graph.nodes.len() >= self.budget {
                    self.graph.partial = true;
                    return Ok(None);
                }
                check_symbols(&phi, &self.config.functions)?;
                let i = self.graph.nodes.len();
                self.graph.nodes.push(RefNode {
                    code: encode_formula(&phi),
                    formula: phi,
                });
                self.graph.index.insert(value.clone(), i);
                self.queue.push_back(i);
                Target::Sentence(i)
            }
            _ => Target::NotASentence,
        };
        self.graph.targets.insert(value.clone(), target);
        Ok(Some(target))
    }

    fn scan(&mut self, from: usize, phi: &Formula, polarity: Polarity) -> Result<(), EvalError> {
        match phi {
            Formula::Eq(..) | Formula::Lt(..) | Formula::Falsum => Ok(()),
            Formula::Truth(t) => {
                if self.atoms_left == 0 {
                    self.graph.partial = true;
                    return Ok(());
                }
                self.atoms_left -= 1;
                if !t.is_closed() {
                    // the value ranges over an unbounded quantifier
                    self.graph.partial = true;
                    return Ok(());
                }
                let value = eval_term(t, self.config)?;
                if let Some(to) = self.target(&value)? {
                    self.graph.edges.insert(Edge { from, to, polarity });
                }
                Ok(())
            }
            Formula::Not(a) => self.scan(from, a, polarity.flip()),
            Formula::And(a, b) | Formula::Or(a, b) => {
                self.scan(from, a, polarity)?;
                self.scan(from, b, polarity)
            }
            Formula::Implies(a, b) => {
                self.scan(from, a, polarity.flip())?;
                self.scan(from, b, polarity)
            }
            Formula::Iff(a, b) => {
                for p in [polarity, polarity.flip()] {
                    self.scan(from, a, p)?;
                    self.scan(from, b, p)?;
                }
                Ok(())
            }
            Formula::ForAll(_, a) | Formula::Exists(_, a) => self.scan(from, a, polarity),
            Formula::ForAllBelow(x, bound, a) | Formula::ExistsBelow(x, bound, a) => {
                if !steers_attributions(a, x) {
                    return self.scan(from, a, polarity);
                }
                if !bound.is_closed() {
                    self.graph.partial = true;
                    return Ok(());
                }
                let limit = match eval_term(bound, self.config)?.to_u64() {
                    Some(l) if l <= self.config.search_bound() => l,
                    _ => {
                        self.graph.partial = true;
                        return Ok(());
                    }
                };
                for v in 0..limit {
                    if self.atoms_left == 0 {
                        self.graph.partial = true;
                        break;
                    }
                    let instance = substitute(a, x, &Term::num(v)).expect("numerals are closed");
                    self.scan(from, &instance, polarity)?;
                }
                Ok(())
            }
        }
    }
}

/// Follows truth attributions from `phi` until no new sentences turn up or
/// `budget` nodes exist.
pub fn build_reference_graph(
    phi: &Formula,
    config: &EvalConfig,
    budget: usize,
) -> Result<ReferenceGraph, EvalError> {
    require_sentence(phi)?;
    check_symbols(phi, &config.functions)?;
    let code = encode_formula(phi);
    let mut graph = ReferenceGraph {
        nodes: Vec::new(),
        edges: BTreeSet::new(),
        partial: budget == 0,
        index: HashMap::new(),
        targets: HashMap::new(),
    };
    graph.index.insert(code.value().clone(), 0);
    graph.targets.insert(code.value().clone(), Target::Sentence(0));
    graph.nodes.push(RefNode {
        code,
        formula: phi.clone(),
    });
    let mut builder = Builder {
        config,
        budget,
        atoms_left: budget.saturating_mul(ATOMS_PER_NODE),
        graph,
        queue: VecDeque::from([0]),
    };
    while let Some(i) = builder.queue.pop_front() {
        let formula = builder.graph.nodes[i].formula.clone();
        builder.scan(i, &formula, Polarity::Even)?;
    }
    Ok(builder.graph)
}

/// Classifies the root of an already built graph.
pub fn classify_graph(graph: &ReferenceGraph, config: &EvalConfig) -> Result<GroundVerdict, EvalError> {
    if graph.is_partial() {
        return Ok(GroundVerdict::ResourceExceeded);
    }
    let values = graph.valuation(config)?;
    Ok(match values[0] {
        Verdict::TrueInN => GroundVerdict::GroundedTrue,
        Verdict::FalseInN => GroundVerdict::GroundedFalse,
        Verdict::Unknown(_) => {
            let unsettled: Vec<bool> = values.iter().map(|v| !v.is_known()).collect();
            match graph.cycles_among(&unsettled) {
                Cycles::Odd => GroundVerdict::Paradoxical,
                Cycles::EvenOnly | Cycles::None => GroundVerdict::Ungrounded,
            }
        }
    })
}

pub fn classify(phi: &Formula, config: &EvalConfig, budget: usize) -> Result<GroundVerdict, EvalError> {
    classify_graph(&build_reference_graph(phi, config, budget)?, config)
}
