//! Certified exhaustive deciders for frame and lift representability of
//! small explicit matroids.
//!
//! The search enumerates candidate multigraphs up to isomorphism, then
//! backtracks over element-to-edge bijections. Every pruning rule carries a
//! justification computed from the input matroid and checked before the
//! rule is allowed to fire; a `REPRESENTABLE` verdict ships a witness that
//! is re-verified by independent reconstruction, and a `NOT_REPRESENTABLE`
//! verdict ships the exhaustion statistics.
//!
//! Candidate shape: a connected representation on vertex set V has matroid
//! rank |V| when some cycle is unbalanced and |V| - 1 when none is, so only
//! |V| = rank(M) and |V| = rank(M) + 1 can occur. Deleting a vertex star
//! always drops the rank, so stars contain cocircuits and minimum degree is
//! at least the cogirth. Lift representations may be assumed connected
//! because identifying vertices across components preserves the lift
//! matroid; frame representations because a frame matroid of a disconnected
//! graph is the direct sum over components and M is connected.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicUsize, Ordering as AtomicOrdering};
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::bias::{is_linear_subclass, BiasedGraph};
use crate::bias_matroid::{fm_matroid, lm_matroid};
use crate::enumerate::{edge_orbits, enumerate_graphs, GraphClass};
use crate::error::{Error, Result};
use crate::graph::Multigraph;
use crate::matroid::ExplicitMatroid;
use crate::subset::Subset;

pub const DEFAULT_NODE_BUDGET: u64 = 1_000_000_000;

/// Decidable target classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum ReprKind {
    Frame,
    Lift,
}

impl ReprKind {
    pub fn token(self) -> &'static str {
        match self {
            ReprKind::Frame => "frame",
            ReprKind::Lift => "lift",
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Budget {
    /// cap on bijection-search nodes per candidate graph
    pub max_nodes: u64,
    pub wall: Option<Duration>,
    pub threads: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_nodes: DEFAULT_NODE_BUDGET,
            wall: None,
            threads: 1,
        }
    }
}

/// Which candidate graphs to search; `All` is the complete decider, the
/// restrictions exist for reporting partial sub-verdicts separately.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CandidateFilter {
    All,
    SimpleOnly,
    WithParallelOnly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum Verdict {
    Representable,
    NotRepresentable,
    BudgetExceeded,
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct PruneRule {
    pub name: String,
    pub justification: String,
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct Witness {
    /// vertex names of the representation
    pub vertices: Vec<String>,
    /// edges as (name, endpoint, endpoint), named by the matroid elements
    pub edges: Vec<(String, String, String)>,
    /// balanced cycles by element-name sets
    pub balanced: Vec<Vec<String>>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, serde::Serialize)]
pub struct Exhaustion {
    pub graphs_examined: u64,
    pub bijections_explored: u64,
    pub prune_firings: BTreeMap<String, u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct Certificate {
    pub kind: ReprKind,
    pub verdict: Verdict,
    pub model: String,
    pub rules: Vec<PruneRule>,
    pub witness: Option<Witness>,
    pub exhaustion: Exhaustion,
}

const MODEL: &str = "connected multigraphs; loops only when the matroid has a dependent \
                     singleton; no half-edges";

/// Subset tables for the input matroid.
struct Tables {
    n: usize,
    r: usize,
    rank: Vec<u8>,
    indep: Vec<bool>,
    circuits: Vec<Subset>,
    elem_circuits: Vec<Vec<usize>>,
    four_cocircuits: Vec<Subset>,
    cogirth: usize,
    has_loop: bool,
}

fn build_tables(m: &ExplicitMatroid) -> Result<Tables> {
    let n = m.size();
    if n > 14 {
        return Err(Error::TooLarge {
            op: "decide",
            got: n,
            limit: 14,
        });
    }
    let full = 1usize << n;
    let r = m.rank();
    let mut rank = vec![0u8; full];
    let mut indep = vec![false; full];
    for s in 0..full {
        rank[s] = m.rank_of(Subset(s as u32)) as u8;
        indep[s] = rank[s] as usize == (s as u32).count_ones() as usize;
    }
    let circuits = m.circuits()?;
    let mut elem_circuits = vec![Vec::new(); n];
    for (ci, c) in circuits.iter().enumerate() {
        for e in c.iter() {
            elem_circuits[e].push(ci);
        }
    }
    // cocircuits via the dual independence table
    let full_mask = (full - 1) as u32;
    let dual_indep: Vec<bool> = (0..full)
        .map(|t| rank[(full_mask & !(t as u32)) as usize] as usize == r)
        .collect();
    let mut cocircuits = Vec::new();
    for t in 1..full {
        if dual_indep[t] {
            continue;
        }
        let mut minimal = true;
        let mut bits = t;
        while bits != 0 {
            let low = bits & bits.wrapping_neg();
            if !dual_indep[t & !low] {
                minimal = false;
                break;
            }
            bits &= bits - 1;
        }
        if minimal {
            cocircuits.push(Subset(t as u32));
        }
    }
    let cogirth = cocircuits.iter().map(|c| c.len()).min().unwrap_or(0);
    let four_cocircuits: Vec<Subset> = cocircuits.into_iter().filter(|c| c.len() == 4).collect();
    let has_loop = (0..n).any(|i| !indep[1usize << i]);
    Ok(Tables {
        n,
        r,
        rank,
        indep,
        circuits,
        elem_circuits,
        four_cocircuits,
        cogirth,
        has_loop,
    })
}

impl Tables {
    fn rank_of(&self, s: Subset) -> usize {
        self.rank[s.0 as usize] as usize
    }
    fn is_indep(&self, s: Subset) -> bool {
        self.indep[s.0 as usize]
    }
    fn is_circuit(&self, s: Subset) -> bool {
        if s.is_empty() || self.is_indep(s) {
            return false;
        }
        s.iter().all(|x| self.is_indep(s.remove(x)))
    }
    fn is_cocircuit(&self, t: Subset) -> bool {
        if t.is_empty() {
            return false;
        }
        let rest = Subset::full(self.n).difference(t);
        self.rank_of(rest) + 1 == self.r
            && t.iter().all(|x| self.rank_of(rest.insert(x)) == self.r)
    }
}

/// Per-candidate graph tables.
struct HTables {
    graph: Multigraph,
    grank: Vec<u8>,
    ncomp: Vec<u8>,
    cycles: Vec<Subset>,
    edge_cycles: Vec<Vec<usize>>,
    stars: Vec<Subset>,
    edge_ends: Vec<[usize; 2]>,
    four_regular_loopless: bool,
    orbit_of: Vec<usize>,
}

fn build_h_tables(graph: Multigraph) -> HTables {
    let ne = graph.n_edges();
    let full = 1usize << ne;
    let mut grank = vec![0u8; full];
    let mut ncomp = vec![0u8; full];
    for s in 0..full {
        let sub = Subset(s as u32);
        grank[s] = graph.graphic_rank(sub) as u8;
        ncomp[s] = graph.components_of(sub).1 as u8;
    }
    let cycles: Vec<Subset> = graph.all_cycles().iter().map(|c| c.edges).collect();
    let mut edge_cycles = vec![Vec::new(); ne];
    for (ci, c) in cycles.iter().enumerate() {
        for e in c.iter() {
            edge_cycles[e].push(ci);
        }
    }
    let stars: Vec<Subset> = (0..graph.n_vertices()).map(|v| graph.star(v)).collect();
    let edge_ends: Vec<[usize; 2]> = graph.edges().iter().map(|e| [e.u, e.v]).collect();
    let four_regular_loopless = graph.edges().iter().all(|e| !e.is_loop())
        && (0..graph.n_vertices()).all(|v| stars[v].len() == 4);
    let orbit_of = edge_orbits(&graph);
    HTables {
        grank,
        ncomp,
        cycles,
        edge_cycles,
        stars,
        edge_ends,
        four_regular_loopless,
        orbit_of,
        graph,
    }
}

/// The bias forced by a total bijection: a cycle of H is balanced iff its
/// preimage is a circuit of M, must otherwise be independent, and the
/// resulting family must satisfy the theta condition. Returns the balanced
/// edge sets or `None` for a rejection.
pub fn forced_bias(
    h: &Multigraph,
    bijection: &[usize],
    m: &ExplicitMatroid,
) -> Result<Option<Vec<Subset>>> {
    if bijection.len() != m.size() || h.n_edges() != m.size() {
        return Err(Error::InvalidParameter(
            "bijection must match the ground and edge sets".into(),
        ));
    }
    let mut preimage_of_edge = vec![usize::MAX; h.n_edges()];
    for (elem, &edge) in bijection.iter().enumerate() {
        preimage_of_edge[edge] = elem;
    }
    let mut balanced = Vec::new();
    for cyc in h.all_cycles() {
        let pre = Subset::from_indices(cyc.edges.iter().map(|e| preimage_of_edge[e]));
        if m.is_circuit(pre) {
            balanced.push(cyc.edges);
        } else if !m.is_independent(pre) {
            return Ok(None);
        }
    }
    if !is_linear_subclass(h, &balanced) {
        return Ok(None);
    }
    Ok(Some(balanced))
}

/// Independent witness verification: rebuild the biased graph, materialize
/// its matroid and compare basis families under the element naming.
pub fn verify_witness(kind: ReprKind, m: &ExplicitMatroid, w: &Witness) -> Result<bool> {
    let graph = Multigraph::new(w.vertices.clone(), w.edges.clone())?;
    let mut balanced = Vec::new();
    for cyc in &w.balanced {
        let names: Vec<&str> = cyc.iter().map(|s| s.as_str()).collect();
        balanced.push(graph.edge_set(&names)?);
    }
    let bg = BiasedGraph::new(graph, &balanced)?;
    let hm = match kind {
        ReprKind::Frame => fm_matroid(&bg)?,
        ReprKind::Lift => lm_matroid(&bg)?,
    };
    hm.equal(m)
}

enum CandOutcome {
    Exhausted,
    Found(Witness),
    Capped,
    Aborted,
}

struct CandResult {
    outcome: CandOutcome,
    nodes: u64,
    firings: BTreeMap<String, u64>,
}

struct Search<'a> {
    kind: ReprKind,
    t: &'a Tables,
    h: &'a HTables,
    order: &'a [usize],
    max_nodes: u64,
    deadline: Option<Instant>,
    abort_below: &'a AtomicUsize,
    my_index: usize,
    m: &'a ExplicitMatroid,

    assignment: Vec<usize>,
    edge_used: u32,
    mapped_m: Subset,
    mapped_h: Subset,
    cycle_remaining: Vec<u8>,
    cycle_preimage: Vec<Subset>,
    circuit_remaining: Vec<u8>,
    circuit_image: Vec<Subset>,
    star_remaining: Vec<u8>,
    star_preimage: Vec<Subset>,

    nodes: u64,
    firings: BTreeMap<String, u64>,
    found: Option<Witness>,
    capped: bool,
    aborted: bool,
}

impl Search<'_> {
    fn fire(&mut self, rule: &'static str) {
        *self.firings.entry(rule.to_string()).or_insert(0) += 1;
    }

    fn rank_window_ok(&mut self) -> bool {
        let f = self.mapped_h.0 as usize;
        let g = self.h.grank[f] as usize;
        let rm = self.t.rank_of(self.mapped_m);
        let upper = match self.kind {
            ReprKind::Frame => g + self.h.ncomp[f] as usize,
            ReprKind::Lift => g + 1,
        };
        if rm < g || rm > upper {
            self.fire("rank-window");
            return false;
        }
        true
    }

    fn run(&mut self, depth: usize) {
        if self.found.is_some() || self.capped || self.aborted {
            return;
        }
        if depth == self.order.len() {
            self.complete();
            return;
        }
        if self.nodes % 1024 == 0 {
            if self.abort_below.load(AtomicOrdering::Relaxed) < self.my_index {
                self.aborted = true;
                return;
            }
            if let Some(d) = self.deadline {
                if Instant::now() > d {
                    self.capped = true;
                    return;
                }
            }
        }
        let elem = self.order[depth];
        let ne = self.h.graph.n_edges();
        for edge in 0..ne {
            if self.edge_used & (1 << edge) != 0 {
                continue;
            }
            // automorphism reduction: the first element only tries one edge
            // per orbit
            if depth == 0 && self.h.orbit_of[edge] != edge {
                self.fire("first-edge-orbit");
                continue;
            }
            self.nodes += 1;
            if self.nodes >= self.max_nodes {
                self.capped = true;
                return;
            }
            if self.try_assign(depth, elem, edge) {
                self.run(depth + 1);
            }
            self.unassign(depth, elem, edge);
            if self.found.is_some() || self.capped || self.aborted {
                return;
            }
        }
    }

    /// Apply the assignment and run the incremental prunes; counters are
    /// always updated so that `unassign` can reverse unconditionally.
    fn try_assign(&mut self, depth: usize, elem: usize, edge: usize) -> bool {
        self.assignment[depth] = edge;
        self.edge_used |= 1 << edge;
        self.mapped_m = self.mapped_m.insert(elem);
        self.mapped_h = self.mapped_h.insert(edge);
        let mut ok = true;
        for idx in 0..self.h.edge_cycles[edge].len() {
            let ci = self.h.edge_cycles[edge][idx];
            self.cycle_remaining[ci] -= 1;
            self.cycle_preimage[ci] = self.cycle_preimage[ci].insert(elem);
            if ok && self.cycle_remaining[ci] == 0 {
                let pre = self.cycle_preimage[ci];
                if !self.t.is_circuit(pre) && !self.t.is_indep(pre) {
                    self.fire("cycle-dichotomy");
                    ok = false;
                }
            }
        }
        for idx in 0..self.t.elem_circuits[elem].len() {
            let ci = self.t.elem_circuits[elem][idx];
            self.circuit_remaining[ci] -= 1;
            self.circuit_image[ci] = self.circuit_image[ci].insert(edge);
            if ok && self.circuit_remaining[ci] == 0 {
                let img = self.circuit_image[ci];
                // an acyclic image would make the circuit independent
                if self.h.grank[img.0 as usize] as usize == img.len() {
                    self.fire("circuit-image");
                    ok = false;
                }
            }
        }
        let [u, v] = self.h.edge_ends[edge];
        let ends = if u == v { [u, usize::MAX] } else { [u, v] };
        for vertex in ends {
            if vertex == usize::MAX {
                continue;
            }
            self.star_remaining[vertex] -= 1;
            self.star_preimage[vertex] = self.star_preimage[vertex].insert(elem);
            if ok && self.star_remaining[vertex] == 0 {
                let pre = self.star_preimage[vertex];
                // a fully mapped star must contain a cocircuit, exactly one
                // when its size equals the cogirth
                let rest = Subset::full(self.t.n).difference(pre);
                if self.t.rank_of(rest) == self.t.r {
                    self.fire("vertical-cocircuit");
                    ok = false;
                } else if pre.len() == self.t.cogirth && !self.t.is_cocircuit(pre) {
                    self.fire("vertical-cocircuit");
                    ok = false;
                }
            }
        }
        ok && self.rank_window_ok()
    }

    fn unassign(&mut self, depth: usize, elem: usize, edge: usize) {
        for idx in 0..self.h.edge_cycles[edge].len() {
            let ci = self.h.edge_cycles[edge][idx];
            self.cycle_remaining[ci] += 1;
            self.cycle_preimage[ci] = self.cycle_preimage[ci].remove(elem);
        }
        for idx in 0..self.t.elem_circuits[elem].len() {
            let ci = self.t.elem_circuits[elem][idx];
            self.circuit_remaining[ci] += 1;
            self.circuit_image[ci] = self.circuit_image[ci].remove(edge);
        }
        let [u, v] = self.h.edge_ends[edge];
        let ends = if u == v { [u, usize::MAX] } else { [u, v] };
        for vertex in ends {
            if vertex == usize::MAX {
                continue;
            }
            self.star_remaining[vertex] += 1;
            self.star_preimage[vertex] = self.star_preimage[vertex].remove(elem);
        }
        self.mapped_m = self.mapped_m.remove(elem);
        self.mapped_h = self.mapped_h.remove(edge);
        self.edge_used &= !(1 << edge);
        self.assignment[depth] = usize::MAX;
    }

    fn complete(&mut self) {
        let mut bijection = vec![usize::MAX; self.t.n];
        for (depth, &elem) in self.order.iter().enumerate() {
            bijection[elem] = self.assignment[depth];
        }
        match forced_bias(&self.h.graph, &bijection, self.m) {
            Ok(Some(balanced)) => {
                let witness = witness_from(&self.h.graph, &bijection, &balanced, self.m);
                match verify_witness(self.kind, self.m, &witness) {
                    Ok(true) => self.found = Some(witness),
                    _ => self.fire("final-verification"),
                }
            }
            _ => self.fire("forced-bias-reject"),
        }
    }
}

/// Rename the candidate graph's edges by the matroid elements they carry.
fn witness_from(
    h: &Multigraph,
    bijection: &[usize],
    balanced: &[Subset],
    m: &ExplicitMatroid,
) -> Witness {
    let mut name_of_edge = vec![String::new(); h.n_edges()];
    for (elem, &edge) in bijection.iter().enumerate() {
        name_of_edge[edge] = m.ground_names()[elem].clone();
    }
    let vertices = h.vertices().to_vec();
    let edges = h
        .edges()
        .iter()
        .enumerate()
        .map(|(i, e)| {
            (
                name_of_edge[i].clone(),
                vertices[e.u].clone(),
                vertices[e.v].clone(),
            )
        })
        .collect();
    let balanced_names = balanced
        .iter()
        .map(|s| s.iter().map(|e| name_of_edge[e].clone()).collect())
        .collect();
    Witness {
        vertices,
        edges,
        balanced: balanced_names,
    }
}

/// Lift-style vertical preselection: choose |V(H)| of the known 4-element
/// cocircuits covering every element exactly twice, interpret the choice as
/// an incidence pattern, and match it against H by graph isomorphism.
/// Complete whenever cogirth(M) = 4 and H is 4-regular and loopless,
/// because every vertex star of a representation is then itself a
/// 4-element cocircuit and each element lies on exactly two stars.
fn preselection_search(
    kind: ReprKind,
    t: &Tables,
    h: &HTables,
    m: &ExplicitMatroid,
    max_nodes: u64,
) -> CandResult {
    let nv = h.graph.n_vertices();
    let mut firings: BTreeMap<String, u64> = BTreeMap::new();
    let mut nodes: u64 = 0;
    let f4 = &t.four_cocircuits;

    let mut chosen: Vec<usize> = Vec::new();
    let mut coverage = vec![0u8; t.n];
    let mut selections: Vec<Vec<usize>> = Vec::new();
    fn choose(
        f4: &[Subset],
        start: usize,
        need: usize,
        coverage: &mut Vec<u8>,
        chosen: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if need == 0 {
            if coverage.iter().all(|&c| c == 2) {
                out.push(chosen.clone());
            }
            return;
        }
        for i in start..f4.len() {
            if f4.len() - i < need {
                break;
            }
            if f4[i].iter().any(|e| coverage[e] >= 2) {
                continue;
            }
            for e in f4[i].iter() {
                coverage[e] += 1;
            }
            chosen.push(i);
            choose(f4, i + 1, need - 1, coverage, chosen, out);
            chosen.pop();
            for e in f4[i].iter() {
                coverage[e] -= 1;
            }
        }
    }
    choose(f4, 0, nv, &mut coverage, &mut chosen, &mut selections);

    let mut hm = vec![vec![0u8; nv]; nv];
    for e in h.graph.edges() {
        hm[e.u][e.v] += 1;
        if e.u != e.v {
            hm[e.v][e.u] += 1;
        }
    }
    let mut h_pair_edges: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (i, e) in h.graph.edges().iter().enumerate() {
        let key = (e.u.min(e.v), e.u.max(e.v));
        h_pair_edges.entry(key).or_default().push(i);
    }

    for sel in selections {
        nodes += 1;
        if nodes >= max_nodes {
            return CandResult {
                outcome: CandOutcome::Capped,
                nodes,
                firings,
            };
        }
        let mut pat = vec![vec![0u8; nv]; nv];
        let mut pair_elems: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for elem in 0..t.n {
            let holders: Vec<usize> = (0..nv)
                .filter(|&i| f4[sel[i]].contains(elem))
                .collect();
            debug_assert_eq!(holders.len(), 2);
            let (a, b) = (holders[0], holders[1]);
            pat[a][b] += 1;
            pat[b][a] += 1;
            pair_elems.entry((a, b)).or_default().push(elem);
        }
        let mut perm: Vec<usize> = Vec::with_capacity(nv);
        let mut used = vec![false; nv];
        let mut isos: Vec<Vec<usize>> = Vec::new();
        fn match_rec(
            pat: &[Vec<u8>],
            hm: &[Vec<u8>],
            perm: &mut Vec<usize>,
            used: &mut Vec<bool>,
            out: &mut Vec<Vec<usize>>,
        ) {
            let n = pat.len();
            let t = perm.len();
            if t == n {
                out.push(perm.clone());
                return;
            }
            'cand: for v in 0..n {
                if used[v] {
                    continue;
                }
                for (s, &pv) in perm.iter().enumerate() {
                    if pat[s][t] != hm[pv][v] {
                        continue 'cand;
                    }
                }
                used[v] = true;
                perm.push(v);
                match_rec(pat, hm, perm, used, out);
                perm.pop();
                used[v] = false;
            }
        }
        match_rec(&pat, &hm, &mut perm, &mut used, &mut isos);
        if isos.is_empty() {
            *firings.entry("vertical-preselection".into()).or_insert(0) += 1;
            continue;
        }
        for iso in isos {
            nodes += 1;
            if nodes >= max_nodes {
                return CandResult {
                    outcome: CandOutcome::Capped,
                    nodes,
                    firings,
                };
            }
            // parallel edges are interchangeable by an automorphism, so one
            // positional assignment per class is enough
            let mut bijection = vec![usize::MAX; t.n];
            let mut ok = true;
            for (&(a, b), elems) in &pair_elems {
                let key = (iso[a].min(iso[b]), iso[a].max(iso[b]));
                match h_pair_edges.get(&key) {
                    Some(edges) if edges.len() == elems.len() => {
                        for (x, e) in elems.iter().zip(edges) {
                            bijection[*x] = *e;
                        }
                    }
                    _ => {
                        ok = false;
                        break;
                    }
                }
            }
            if !ok {
                *firings.entry("vertical-preselection".into()).or_insert(0) += 1;
                continue;
            }
            match forced_bias(&h.graph, &bijection, m) {
                Ok(Some(balanced)) => {
                    let w = witness_from(&h.graph, &bijection, &balanced, m);
                    if matches!(verify_witness(kind, m, &w), Ok(true)) {
                        return CandResult {
                            outcome: CandOutcome::Found(w),
                            nodes,
                            firings,
                        };
                    }
                    *firings.entry("final-verification".into()).or_insert(0) += 1;
                }
                _ => {
                    *firings.entry("forced-bias-reject".into()).or_insert(0) += 1;
                }
            }
        }
    }
    CandResult {
        outcome: CandOutcome::Exhausted,
        nodes,
        firings,
    }
}

#[allow(clippy::too_many_arguments)]
fn search_candidate(
    kind: ReprKind,
    t: &Tables,
    m: &ExplicitMatroid,
    graph: Multigraph,
    order: &[usize],
    budget: &Budget,
    deadline: Option<Instant>,
    abort_below: &AtomicUsize,
    index: usize,
) -> CandResult {
    let h = build_h_tables(graph);

    if kind == ReprKind::Lift && t.cogirth == 4 && h.four_regular_loopless {
        return preselection_search(kind, t, &h, m, budget.max_nodes);
    }

    let mut search = Search {
        kind,
        t,
        h: &h,
        order,
        max_nodes: budget.max_nodes,
        deadline,
        abort_below,
        my_index: index,
        m,
        assignment: vec![usize::MAX; t.n],
        edge_used: 0,
        mapped_m: Subset::EMPTY,
        mapped_h: Subset::EMPTY,
        cycle_remaining: h.cycles.iter().map(|c| c.len() as u8).collect(),
        cycle_preimage: vec![Subset::EMPTY; h.cycles.len()],
        circuit_remaining: t.circuits.iter().map(|c| c.len() as u8).collect(),
        circuit_image: vec![Subset::EMPTY; t.circuits.len()],
        star_remaining: h.stars.iter().map(|s| s.len() as u8).collect(),
        star_preimage: vec![Subset::EMPTY; h.stars.len()],
        nodes: 0,
        firings: BTreeMap::new(),
        found: None,
        capped: false,
        aborted: false,
    };
    search.run(0);
    let outcome = if let Some(w) = search.found {
        CandOutcome::Found(w)
    } else if search.aborted {
        CandOutcome::Aborted
    } else if search.capped {
        CandOutcome::Capped
    } else {
        CandOutcome::Exhausted
    };
    CandResult {
        outcome,
        nodes: search.nodes,
        firings: search.firings,
    }
}

fn decide(
    kind: ReprKind,
    m: &ExplicitMatroid,
    budget: &Budget,
    filter: CandidateFilter,
) -> Result<Certificate> {
    if !m.is_connected()? {
        return Err(Error::InvalidParameter(
            "decide requires a connected matroid".into(),
        ));
    }
    let start = Instant::now();
    let deadline = budget.wall.map(|w| start + w);
    let t = build_tables(m)?;

    let mut rules = vec![
        PruneRule {
            name: "edge-count".into(),
            justification: format!("|E(H)| = |E(M)| = {}", t.n),
        },
        PruneRule {
            name: "vertex-count".into(),
            justification: format!(
                "connected representation: |V| = rank = {} with an unbalanced cycle, \
                 or |V| = {} all balanced",
                t.r,
                t.r + 1
            ),
        },
        PruneRule {
            name: "connected-candidates".into(),
            justification: match kind {
                ReprKind::Frame => "M verified connected; a frame matroid of a disconnected \
                                    graph is a direct sum"
                    .to_string(),
                ReprKind::Lift => "identifying vertices in different components preserves the \
                                   lift matroid"
                    .to_string(),
            },
        },
        PruneRule {
            name: "min-degree-cogirth".into(),
            justification: format!(
                "every vertex star of a representation contains a cocircuit; cogirth(M) = {} \
                 verified by exhaustive cocircuit enumeration",
                t.cogirth
            ),
        },
        PruneRule {
            name: "loops".into(),
            justification: if t.has_loop {
                "M has a dependent singleton; loop candidates enabled".to_string()
            } else {
                "every singleton is independent; loop candidates disabled (the model field \
                 records the representation class)"
                    .to_string()
            },
        },
        PruneRule {
            name: "vertical-cocircuit".into(),
            justification: "deleting a vertex star drops the rank of the represented matroid, \
                            so fully mapped stars must contain cocircuits"
                .into(),
        },
        PruneRule {
            name: "first-edge-orbit".into(),
            justification: "candidate acceptance is invariant under graph automorphisms".into(),
        },
    ];
    if kind == ReprKind::Lift && t.cogirth == 4 {
        rules.push(PruneRule {
            name: "vertical-preselection".into(),
            justification: "cogirth(M) = 4 verified; on 4-regular loopless candidates every \
                            vertex star of a representation is a 4-element cocircuit, and \
                            each element lies on exactly two stars"
                .into(),
        });
    }

    // rank 0: all elements must be loops; one balanced loop per element
    if t.r == 0 {
        let all_loops = (0..t.n).all(|i| !t.indep[1usize << i]);
        let verdict = if all_loops {
            Verdict::Representable
        } else {
            Verdict::NotRepresentable
        };
        let witness = (verdict == Verdict::Representable).then(|| Witness {
            vertices: vec!["v0".to_string()],
            edges: m
                .ground_names()
                .iter()
                .map(|n| (n.clone(), "v0".to_string(), "v0".to_string()))
                .collect(),
            balanced: m.ground_names().iter().map(|n| vec![n.clone()]).collect(),
        });
        return Ok(Certificate {
            kind,
            verdict,
            model: MODEL.into(),
            rules,
            witness,
            exhaustion: Exhaustion::default(),
        });
    }

    // element order: participation in 4-element cocircuits, descending
    let mut order: Vec<usize> = (0..t.n).collect();
    let participation: Vec<usize> = (0..t.n)
        .map(|e| t.four_cocircuits.iter().filter(|c| c.contains(e)).count())
        .collect();
    order.sort_by_key(|&e| (std::cmp::Reverse(participation[e]), e));

    let mut candidates: Vec<Multigraph> = Vec::new();
    for nv in [t.r, t.r + 1] {
        if nv > 10 {
            continue;
        }
        let class = GraphClass {
            edge_count: t.n,
            vertex_count: nv,
            min_degree: t.cogirth,
            allow_parallel: true,
            allow_loops: t.has_loop,
        };
        candidates.extend(
            enumerate_graphs(class)
                .into_iter()
                .filter(|g| g.is_connected_graph()),
        );
    }
    let candidates: Vec<Multigraph> = candidates
        .into_iter()
        .filter(|g| {
            let has_parallel = (0..g.n_edges()).any(|i| {
                (i + 1..g.n_edges()).any(|j| {
                    let (a, b) = (g.edge(i), g.edge(j));
                    !a.is_loop() && ((a.u == b.u && a.v == b.v) || (a.u == b.v && a.v == b.u))
                })
            });
            match filter {
                CandidateFilter::All => true,
                CandidateFilter::SimpleOnly => {
                    !has_parallel && g.edges().iter().all(|e| !e.is_loop())
                }
                CandidateFilter::WithParallelOnly => has_parallel,
            }
        })
        .collect();

    let abort_below = AtomicUsize::new(usize::MAX);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(budget.threads.max(1))
        .build()
        .map_err(|e| Error::Internal(e.to_string()))?;
    let results: Vec<CandResult> = pool.install(|| {
        candidates
            .par_iter()
            .enumerate()
            .map(|(i, g)| {
                if abort_below.load(AtomicOrdering::Relaxed) < i {
                    return CandResult {
                        outcome: CandOutcome::Aborted,
                        nodes: 0,
                        firings: BTreeMap::new(),
                    };
                }
                let res = search_candidate(
                    kind,
                    &t,
                    m,
                    g.clone(),
                    &order,
                    budget,
                    deadline,
                    &abort_below,
                    i,
                );
                if matches!(res.outcome, CandOutcome::Found(_)) {
                    abort_below.fetch_min(i, AtomicOrdering::SeqCst);
                }
                res
            })
            .collect()
    });

    // ordered merge: the first in-order witness wins; statistics cover the
    // decided prefix so reports do not depend on thread interleaving
    let mut exhaustion = Exhaustion::default();
    let mut witness = None;
    let mut any_capped = false;
    for res in results {
        if matches!(res.outcome, CandOutcome::Aborted) {
            // only occurs past an in-order winner; stats end at the winner
            break;
        }
        exhaustion.graphs_examined += 1;
        exhaustion.bijections_explored += res.nodes;
        for (k, v) in res.firings {
            *exhaustion.prune_firings.entry(k).or_insert(0) += v;
        }
        match res.outcome {
            CandOutcome::Found(w) => {
                witness = Some(w);
                break;
            }
            CandOutcome::Capped => any_capped = true,
            _ => {}
        }
    }

    let verdict = if witness.is_some() {
        Verdict::Representable
    } else if any_capped {
        Verdict::BudgetExceeded
    } else {
        Verdict::NotRepresentable
    };
    Ok(Certificate {
        kind,
        verdict,
        model: MODEL.into(),
        rules,
        witness,
        exhaustion,
    })
}

pub fn decide_frame(m: &ExplicitMatroid, budget: &Budget) -> Result<Certificate> {
    decide(ReprKind::Frame, m, budget, CandidateFilter::All)
}

pub fn decide_lift(m: &ExplicitMatroid, budget: &Budget) -> Result<Certificate> {
    decide(ReprKind::Lift, m, budget, CandidateFilter::All)
}

/// Restricted candidate runs, used to report partial sub-verdicts.
pub fn decide_filtered(
    kind: ReprKind,
    m: &ExplicitMatroid,
    budget: &Budget,
    filter: CandidateFilter,
) -> Result<Certificate> {
    decide(kind, m, budget, filter)
}
