//! Group-labelled (gain) graphs over the two groups used here: integers
//! under addition and strictly positive rationals under multiplication.
//! Edge orientation is the stored endpoint order (tail = first endpoint).

use std::collections::BTreeSet;

use num::rational::Rational64;
use num::{One, Signed};

use crate::bias::BiasedGraph;
use crate::error::{Error, Result};
use crate::graph::{Cycle, Multigraph};
use crate::subset::Subset;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupKind {
    Additive,
    Multiplicative,
}

impl GroupKind {
    pub fn token(self) -> &'static str {
        match self {
            GroupKind::Additive => "Z",
            GroupKind::Multiplicative => "Q+",
        }
    }
}

/// An element of one of the two label groups.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroupValue {
    Add(i64),
    Mul(Rational64),
}

impl GroupValue {
    pub fn additive(n: i64) -> GroupValue {
        GroupValue::Add(n)
    }

    /// Multiplicative value p/q; must be strictly positive.
    pub fn multiplicative(p: i64, q: i64) -> Result<GroupValue> {
        if q == 0 {
            return Err(Error::InvalidGroupValue(format!("{p}/{q}")));
        }
        let r = Rational64::new(p, q);
        if !r.is_positive() {
            return Err(Error::InvalidGroupValue(format!(
                "{p}/{q} is not strictly positive"
            )));
        }
        Ok(GroupValue::Mul(r))
    }

    pub fn identity(kind: GroupKind) -> GroupValue {
        match kind {
            GroupKind::Additive => GroupValue::Add(0),
            GroupKind::Multiplicative => GroupValue::Mul(Rational64::one()),
        }
    }

    pub fn kind(self) -> GroupKind {
        match self {
            GroupValue::Add(_) => GroupKind::Additive,
            GroupValue::Mul(_) => GroupKind::Multiplicative,
        }
    }

    pub fn is_identity(self) -> bool {
        match self {
            GroupValue::Add(n) => n == 0,
            GroupValue::Mul(r) => r.is_one(),
        }
    }

    pub fn compose(self, other: GroupValue) -> Result<GroupValue> {
        match (self, other) {
            (GroupValue::Add(a), GroupValue::Add(b)) => Ok(GroupValue::Add(a + b)),
            (GroupValue::Mul(a), GroupValue::Mul(b)) => Ok(GroupValue::Mul(a * b)),
            _ => Err(Error::GroupMismatch {
                expected: "matching",
            }),
        }
    }

    pub fn inverse(self) -> GroupValue {
        match self {
            GroupValue::Add(a) => GroupValue::Add(-a),
            GroupValue::Mul(a) => GroupValue::Mul(a.recip()),
        }
    }

    pub fn as_rational(self) -> Rational64 {
        match self {
            GroupValue::Add(a) => Rational64::from_integer(a),
            GroupValue::Mul(r) => r,
        }
    }

    pub fn render(self) -> String {
        match self {
            GroupValue::Add(a) => a.to_string(),
            GroupValue::Mul(r) => format!("{}/{}", r.numer(), r.denom()),
        }
    }
}

/// Spanning-subgraph statistics used by the rank formulas.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BalanceStats {
    pub vertices: usize,
    pub components: usize,
    pub balanced_components: usize,
}

impl BalanceStats {
    /// Frame matroid rank of the subgraph: |V| minus balanced components.
    pub fn frame_rank(self) -> usize {
        self.vertices - self.balanced_components
    }
    /// Lift matroid rank: graphic rank plus one if anything is unbalanced.
    pub fn lift_rank(self) -> usize {
        self.vertices - self.components
            + usize::from(self.balanced_components < self.components)
    }
}

/// An oriented multigraph with group labels on its non-loop edges.
/// Loops carry no label; their balance is declared per loop and defaults to
/// unbalanced.
#[derive(Debug, Clone)]
pub struct LabelledGraph {
    graph: Multigraph,
    kind: GroupKind,
    labels: Vec<GroupValue>,
    balanced_loops: BTreeSet<usize>,
}

impl LabelledGraph {
    pub fn new(
        graph: Multigraph,
        kind: GroupKind,
        labels: Vec<(String, GroupValue)>,
    ) -> Result<Self> {
        let mut all = vec![GroupValue::identity(kind); graph.n_edges()];
        for (name, value) in labels {
            if value.kind() != kind {
                return Err(Error::GroupMismatch {
                    expected: kind.token(),
                });
            }
            let i = graph.edge_index(&name)?;
            if graph.edge(i).is_loop() {
                return Err(Error::LoopPresent(name));
            }
            all[i] = value;
        }
        Ok(LabelledGraph {
            graph,
            kind,
            labels: all,
            balanced_loops: BTreeSet::new(),
        })
    }

    /// Declare a loop balanced.
    pub fn set_loop_balanced(&mut self, name: &str) -> Result<()> {
        let i = self.graph.edge_index(name)?;
        if !self.graph.edge(i).is_loop() {
            return Err(Error::NotALoop(name.to_string()));
        }
        self.balanced_loops.insert(i);
        Ok(())
    }

    pub fn graph(&self) -> &Multigraph {
        &self.graph
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn label(&self, edge: usize) -> GroupValue {
        self.labels[edge]
    }

    pub fn label_of(&self, name: &str) -> Result<GroupValue> {
        Ok(self.labels[self.graph.edge_index(name)?])
    }

    pub fn is_loop_balanced(&self, edge: usize) -> bool {
        self.balanced_loops.contains(&edge)
    }

    pub fn has_loops(&self) -> bool {
        self.graph.edges().iter().any(|e| e.is_loop())
    }

    /// Gain of a non-loop cycle along its stored traversal: the label when an
    /// edge is walked tail-to-head, the inverse the other way. Balance is
    /// independent of the traversal chosen.
    pub fn cycle_gain(&self, cycle: &Cycle) -> Result<GroupValue> {
        if cycle
            .edges
            .iter()
            .any(|i| self.graph.edge(i).is_loop())
        {
            return Err(Error::LoopPresent("cycle contains a loop".into()));
        }
        // membership check: the traversal must be a closed walk in this graph
        if self.graph.all_cycles().iter().all(|c| c.edges != cycle.edges) {
            return Err(Error::NotACycle(format!("{:?}", cycle.edges)));
        }
        let mut gain = GroupValue::identity(self.kind);
        for &(i, forward) in &cycle.traversal {
            let l = self.labels[i];
            gain = gain.compose(if forward { l } else { l.inverse() })?;
        }
        Ok(gain)
    }

    /// Gain measured directly from an edge-set cycle, without membership
    /// re-checks; used internally where the cycle list is already trusted.
    fn traversal_gain(&self, cycle: &Cycle) -> GroupValue {
        let mut gain = GroupValue::identity(self.kind);
        for &(i, forward) in &cycle.traversal {
            let l = self.labels[i];
            gain = gain
                .compose(if forward { l } else { l.inverse() })
                .expect("labels share a group");
        }
        gain
    }

    /// Is this cycle balanced? Loops consult their declaration.
    pub fn is_balanced(&self, cycle: &Cycle) -> bool {
        if cycle.edges.len() == 1 {
            let i = cycle.edges.min_element().unwrap();
            if self.graph.edge(i).is_loop() {
                return self.balanced_loops.contains(&i);
            }
        }
        self.traversal_gain(cycle).is_identity()
    }

    /// The biased graph whose balanced cycles are those of identity gain.
    /// The theta condition holds automatically for gain labellings; the
    /// validator still runs as a self-check.
    pub fn balanced_cycles(&self) -> Result<BiasedGraph> {
        let balanced: Vec<Subset> = self
            .graph
            .all_cycles()
            .iter()
            .filter(|c| self.is_balanced(c))
            .map(|c| c.edges)
            .collect();
        BiasedGraph::new(self.graph.clone(), &balanced)
            .map_err(|e| Error::Internal(format!("gain bias failed theta validation: {e}")))
    }

    /// Regauge at a vertex: compose `g` into labels of edges with tail `v`,
    /// the inverse into labels of edges with head `v`. Loops are untouched.
    /// The balanced cycle set is unchanged.
    pub fn switch(&self, vertex: &str, g: GroupValue) -> Result<LabelledGraph> {
        if g.kind() != self.kind {
            return Err(Error::GroupMismatch {
                expected: self.kind.token(),
            });
        }
        let v = self.graph.vertex_index(vertex)?;
        let mut labels = self.labels.clone();
        for (i, e) in self.graph.edges().iter().enumerate() {
            if e.is_loop() {
                continue;
            }
            if e.u == v {
                labels[i] = g.compose(labels[i])?;
            } else if e.v == v {
                labels[i] = labels[i].compose(g.inverse())?;
            }
        }
        Ok(LabelledGraph {
            graph: self.graph.clone(),
            kind: self.kind,
            labels,
            balanced_loops: self.balanced_loops.clone(),
        })
    }

    /// Per-component balance statistics of the spanning subgraph on `set`,
    /// computed from vertex potentials along a spanning forest: a component
    /// is balanced iff every non-tree edge closes with matching potentials
    /// and it has no unbalanced loop. Exact for abelian labels.
    pub fn balance_stats(&self, set: Subset) -> BalanceStats {
        let g = &self.graph;
        let support = g.support(set);
        let nv = support.len();
        let mut comp = vec![usize::MAX; g.n_vertices()];
        let mut potential: Vec<GroupValue> =
            vec![GroupValue::identity(self.kind); g.n_vertices()];
        let adj: Vec<Vec<usize>> = (0..g.n_vertices())
            .map(|v| {
                set.iter()
                    .filter(|&i| {
                        let e = g.edge(i);
                        !e.is_loop() && (e.u == v || e.v == v)
                    })
                    .collect()
            })
            .collect();
        let mut n_components = 0usize;
        let mut balanced_components = 0usize;
        for root in support.iter() {
            if comp[root] != usize::MAX {
                continue;
            }
            let id = n_components;
            n_components += 1;
            comp[root] = id;
            let mut tree_edges = Vec::new();
            let mut stack = vec![root];
            while let Some(v) = stack.pop() {
                for &ei in &adj[v] {
                    let e = g.edge(ei);
                    let w = e.other_end(v);
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        // walking tail->head adds the label, head->tail its inverse
                        let step = if e.u == v {
                            self.labels[ei]
                        } else {
                            self.labels[ei].inverse()
                        };
                        potential[w] = potential[v].compose(step).expect("same group");
                        tree_edges.push(ei);
                        stack.push(w);
                    }
                }
            }
            let mut balanced = true;
            for i in set.iter() {
                let e = g.edge(i);
                if e.is_loop() {
                    if comp[e.u] == id && !self.balanced_loops.contains(&i) {
                        balanced = false;
                    }
                    continue;
                }
                if comp[e.u] != id || tree_edges.contains(&i) {
                    continue;
                }
                let reached = potential[e.u].compose(self.labels[i]).expect("same group");
                if reached != potential[e.v] {
                    balanced = false;
                }
            }
            if balanced {
                balanced_components += 1;
            }
        }
        BalanceStats {
            vertices: nv,
            components: n_components,
            balanced_components,
        }
    }

    /// Contract a non-loop identity-labelled edge; gains of all cycles are
    /// preserved, so the balanced sets correspond.
    pub fn contract_identity_edge(
        &self,
        edge_name: &str,
        merged_name: &str,
    ) -> Result<LabelledGraph> {
        let i = self.graph.edge_index(edge_name)?;
        if !self.labels[i].is_identity() {
            return Err(Error::InvalidParameter(format!(
                "edge `{edge_name}` has a non-identity label"
            )));
        }
        let graph = self.graph.contract_edge(edge_name, merged_name)?;
        let labels = graph
            .edges()
            .iter()
            .map(|e| {
                (
                    e.name.clone(),
                    self.labels[self.graph.edge_index(&e.name).unwrap()],
                )
            })
            .filter(|(name, _)| {
                // an edge that became a loop loses its label
                !graph
                    .edge(graph.edge_index(name).unwrap())
                    .is_loop()
            })
            .collect();
        let mut out = LabelledGraph::new(graph, self.kind, labels)?;
        // an edge turned loop keeps its balance status via its old gain:
        // a loop formed by contraction is the old 2-cycle {edge, contracted},
        // whose gain was the edge's own label
        let new_loops: Vec<String> = out
            .graph
            .edges()
            .iter()
            .filter(|e| e.is_loop())
            .filter(|e| self.labels[self.graph.edge_index(&e.name).unwrap()].is_identity())
            .map(|e| e.name.clone())
            .collect();
        for name in new_loops {
            out.set_loop_balanced(&name)?;
        }
        Ok(out)
    }
}
