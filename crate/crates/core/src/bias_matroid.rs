//! Frame and lift matroids of a biased graph, materialized as explicit
//! matroids, plus the classification of non-separating cocircuits.
//!
//! Independence is taken straight from the definitions: a frame-independent
//! set induces no balanced cycle and at most |V(H)| edges per component H; a
//! lift-independent set induces at most one cycle, which must be unbalanced.

use crate::bias::BiasedGraph;
use crate::error::{Error, Result};
use crate::matroid::ExplicitMatroid;
use crate::subset::{k_subsets_of, Subset};

pub fn fm_independent(bg: &BiasedGraph, set: Subset) -> bool {
    if bg.has_balanced_cycle_within(set) {
        return false;
    }
    // per-component edge bound: |E(H)| <= |V(H)|
    component_edge_bound(bg, set)
}

fn component_edge_bound(bg: &BiasedGraph, set: Subset) -> bool {
    let g = bg.graph();
    // union-find over vertices; count edges and vertices per component root
    let mut uf: Vec<usize> = (0..g.n_vertices()).collect();
    fn find(uf: &mut Vec<usize>, mut x: usize) -> usize {
        while uf[x] != x {
            uf[x] = uf[uf[x]];
            x = uf[x];
        }
        x
    }
    for i in set.iter() {
        let e = g.edge(i);
        let (a, b) = (find(&mut uf, e.u), find(&mut uf, e.v));
        if a != b {
            uf[a] = b;
        }
    }
    let mut edges = vec![0usize; g.n_vertices()];
    let mut verts = vec![0usize; g.n_vertices()];
    for i in set.iter() {
        let e = g.edge(i);
        edges[find(&mut uf, e.u)] += 1;
    }
    for v in g.support(set).iter() {
        verts[find(&mut uf, v)] += 1;
    }
    (0..g.n_vertices()).all(|r| edges[r] <= verts[r])
}

pub fn lm_independent(bg: &BiasedGraph, set: Subset) -> bool {
    let g = bg.graph();
    let (nv, nc) = g.components_of(set);
    let loops = set.iter().filter(|&i| g.edge(i).is_loop()).count();
    // cyclomatic number counting loops as cycles
    let nonloop = set.len() - loops;
    let cyclomatic = loops + nonloop + nc - nv;
    match cyclomatic {
        0 => true,
        1 => !bg.has_balanced_cycle_within(set),
        _ => false,
    }
}

/// Frame matroid rank of an edge set: |V(S)| minus the number of balanced
/// components of the induced subgraph.
pub fn fm_rank(bg: &BiasedGraph, set: Subset) -> usize {
    let g = bg.graph();
    let mut uf: Vec<usize> = (0..g.n_vertices()).collect();
    fn find(uf: &mut Vec<usize>, mut x: usize) -> usize {
        while uf[x] != x {
            uf[x] = uf[uf[x]];
            x = uf[x];
        }
        x
    }
    for i in set.iter() {
        let e = g.edge(i);
        let (a, b) = (find(&mut uf, e.u), find(&mut uf, e.v));
        if a != b {
            uf[a] = b;
        }
    }
    let support = g.support(set);
    let mut roots: Vec<usize> = support.iter().map(|v| find(&mut uf, v)).collect();
    roots.sort_unstable();
    roots.dedup();
    let mut unbalanced_roots = std::collections::HashSet::new();
    for (c, &b) in bg.cycles().iter().zip(bg.balanced_flags()) {
        if !b && c.edges.is_subset_of(set) {
            let v = bg.graph().support(c.edges).min_element().unwrap();
            unbalanced_roots.insert(find(&mut uf, v));
        }
    }
    support.len() - (roots.len() - unbalanced_roots.len())
}

/// Lift matroid rank: graphic rank plus one if the set holds an unbalanced
/// cycle (loops are 1-cycles and already appear in the cycle list).
pub fn lm_rank(bg: &BiasedGraph, set: Subset) -> usize {
    bg.graph().graphic_rank(set) + usize::from(bg.has_unbalanced_cycle_within(set))
}

fn materialize<F>(bg: &BiasedGraph, rank: usize, independent: F) -> Result<ExplicitMatroid>
where
    F: Fn(Subset) -> bool,
{
    let g = bg.graph();
    let names = g.edge_names();
    let bases: Vec<Subset> = k_subsets_of(g.full_edge_set(), rank)
        .into_iter()
        .filter(|&s| independent(s))
        .collect();
    ExplicitMatroid::from_bases(names, bases)
        .map_err(|e| Error::Internal(format!("bias matroid failed validation: {e}")))
}

/// FM(G, B) as an explicit matroid on the edge names of G.
pub fn fm_matroid(bg: &BiasedGraph) -> Result<ExplicitMatroid> {
    let rank = fm_rank(bg, bg.graph().full_edge_set());
    materialize(bg, rank, |s| fm_independent(bg, s))
}

/// LM(G, B) as an explicit matroid on the edge names of G.
pub fn lm_matroid(bg: &BiasedGraph) -> Result<ExplicitMatroid> {
    let rank = lm_rank(bg, bg.graph().full_edge_set());
    materialize(bg, rank, |s| lm_independent(bg, s))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CocircuitClass {
    /// Removing the set leaves every remaining cycle balanced.
    Balancing,
    /// The set is the star of this vertex.
    Vertical(String),
    Both(String),
}

/// Classify a non-separating cocircuit of FM(G, B): it is a balancing set,
/// a vertex star, or both. Any other outcome contradicts the structure of
/// frame matroids and is reported as an internal error with the instance.
pub fn classify_nonseparating(bg: &BiasedGraph, cstar: Subset) -> Result<CocircuitClass> {
    let m = fm_matroid(bg)?;
    if !m.is_cocircuit(cstar) {
        return Err(Error::InvalidParameter(format!(
            "{{{}}} is not a cocircuit",
            m.format_subset(cstar)
        )));
    }
    let rest = m.minor(cstar, Subset::EMPTY)?;
    if !rest.is_connected()? {
        return Err(Error::InvalidParameter(format!(
            "{{{}}} is a separating cocircuit",
            m.format_subset(cstar)
        )));
    }
    let g = bg.graph();
    let vertical = (0..g.n_vertices()).find(|&v| g.star(v) == cstar);
    let complement = g.full_edge_set().difference(cstar);
    let balancing = bg.is_balanced_subset(complement);
    match (balancing, vertical) {
        (true, Some(v)) => Ok(CocircuitClass::Both(g.vertices()[v].clone())),
        (true, None) => Ok(CocircuitClass::Balancing),
        (false, Some(v)) => Ok(CocircuitClass::Vertical(g.vertices()[v].clone())),
        (false, None) => Err(Error::Internal(format!(
            "non-separating cocircuit {{{}}} of a frame matroid is neither balancing \
             nor vertical; graph: {:?}, balanced: {:?}",
            m.format_subset(cstar),
            g,
            bg.balanced_sets(),
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Multigraph;
    use crate::label::{GroupKind, GroupValue, LabelledGraph};
    use crate::subset::subsets_of;

    fn all_balanced_square() -> BiasedGraph {
        let g = Multigraph::from_indices(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]).unwrap();
        BiasedGraph::all_balanced(g).unwrap()
    }

    #[test]
    fn fm_independent_examples() {
        let bg = all_balanced_square();
        assert!(fm_independent(&bg, Subset::EMPTY));
        // a balanced cycle is dependent
        let cyc = bg.cycles()[0].edges;
        assert!(!fm_independent(&bg, cyc));
        // unbalanced 2-cycle is frame independent: |E| = |V| = 2
        let g2 = Multigraph::from_indices(2, &[(0, 1), (0, 1)]).unwrap();
        let bg2 = BiasedGraph::new(g2, &[]).unwrap();
        assert!(fm_independent(&bg2, Subset::from_indices([0, 1])));
    }

    #[test]
    fn lm_independent_examples() {
        let bg = all_balanced_square();
        // spanning tree independent
        assert!(lm_independent(&bg, Subset::from_indices([0, 1, 2])));
        assert!(!lm_independent(&bg, bg.cycles()[0].edges));
        // two vertex-disjoint unbalanced cycles: dependent
        let g = Multigraph::from_indices(4, &[(0, 1), (0, 1), (2, 3), (2, 3)]).unwrap();
        let bg = BiasedGraph::new(g, &[]).unwrap();
        assert!(!lm_independent(&bg, Subset::from_indices([0, 1, 2, 3])));
    }

    #[test]
    fn all_balanced_gives_graphic_matroid() {
        // on a small graph, FM = LM = graphic matroid when B is everything
        let bg = all_balanced_square();
        let fm = fm_matroid(&bg).unwrap();
        let lm = lm_matroid(&bg).unwrap();
        assert!(fm.equal(&lm).unwrap());
        for s in subsets_of(bg.graph().full_edge_set()) {
            assert_eq!(fm.rank_of(s), bg.graph().graphic_rank(s));
        }
    }

    #[test]
    fn four_parallel_unbalanced_is_u24() {
        let g = Multigraph::from_indices(2, &[(0, 1), (0, 1), (0, 1), (0, 1)]).unwrap();
        let bg = BiasedGraph::new(g, &[]).unwrap();
        let fm = fm_matroid(&bg).unwrap();
        assert!(fm.equal(&{
            let names: Vec<String> = fm.ground_names().to_vec();
            let bases = k_subsets_of(Subset::full(4), 2);
            ExplicitMatroid::from_bases(names, bases).unwrap()
        })
        .unwrap());
    }

    #[test]
    fn single_unbalanced_cycle_is_free_for_lift() {
        let g = Multigraph::from_indices(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let bg = BiasedGraph::new(g, &[]).unwrap();
        let lm = lm_matroid(&bg).unwrap();
        assert_eq!(lm.rank(), 4);
        assert_eq!(lm.bases().len(), 1);
    }

    #[test]
    fn rank_formulas_match_materialization() {
        let two = GroupValue::multiplicative(2, 1).unwrap();
        let g = Multigraph::from_indices(3, &[(0, 1), (0, 1), (1, 2), (2, 0), (2, 0)]).unwrap();
        let names: Vec<(String, GroupValue)> = vec![("e1".into(), two), ("e3".into(), two)];
        let lg = LabelledGraph::new(g.clone(), GroupKind::Multiplicative, names).unwrap();
        let bg = lg.balanced_cycles().unwrap();
        let fm = fm_matroid(&bg).unwrap();
        for s in subsets_of(g.full_edge_set()) {
            assert_eq!(fm.rank_of(s), fm_rank(&bg, s), "frame rank at {s:?}");
        }
        let lg2 = LabelledGraph::new(
            g.clone(),
            GroupKind::Additive,
            vec![("e1".into(), GroupValue::Add(1)), ("e3".into(), GroupValue::Add(1))],
        )
        .unwrap();
        let bg2 = lg2.balanced_cycles().unwrap();
        let lm = lm_matroid(&bg2).unwrap();
        for s in subsets_of(g.full_edge_set()) {
            assert_eq!(lm.rank_of(s), lm_rank(&bg2, s), "lift rank at {s:?}");
        }
    }

    #[test]
    fn downward_closed_independence() {
        let g = Multigraph::from_indices(3, &[(0, 1), (0, 1), (1, 2), (2, 0), (2, 0), (1, 2)])
            .unwrap();
        let bg = BiasedGraph::new(g.clone(), &[Subset::from_indices([0, 1])]).unwrap();
        for s in subsets_of(g.full_edge_set()) {
            if fm_independent(&bg, s) {
                for x in s.iter() {
                    assert!(fm_independent(&bg, s.remove(x)));
                }
            }
            if lm_independent(&bg, s) {
                for x in s.iter() {
                    assert!(lm_independent(&bg, s.remove(x)));
                }
            }
        }
    }

    #[test]
    fn classify_vertical_and_balancing() {
        // all-balanced triangle with a pendant edge: star of the pendant tip
        // is vertical and balancing (tree remainder)
        let g = Multigraph::from_indices(4, &[(0, 1), (1, 2), (2, 0), (2, 3)]).unwrap();
        let bg = BiasedGraph::all_balanced(g.clone()).unwrap();
        let star3 = bg.graph().star(3);
        let class = classify_nonseparating(&bg, star3).unwrap();
        assert_eq!(class, CocircuitClass::Both("v3".into()));
        // star of v0 leaves two coloops: a separating cocircuit is rejected
        assert!(classify_nonseparating(&bg, bg.graph().star(0)).is_err());
    }

    #[test]
    fn classification_never_fails_on_random_small_biased_graphs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let mut tested = 0;
        while tested < 40 {
            let nv = rng.gen_range(2..5usize);
            let ne = rng.gen_range(2..8usize);
            let pairs: Vec<(usize, usize)> = (0..ne)
                .map(|_| {
                    let u = rng.gen_range(0..nv);
                    let v = rng.gen_range(0..nv);
                    (u, v)
                })
                .filter(|&(u, v)| u != v)
                .collect();
            if pairs.is_empty() {
                continue;
            }
            let g = Multigraph::from_indices(nv, &pairs).unwrap();
            let lg = LabelledGraph::new(
                g.clone(),
                GroupKind::Additive,
                g.edges()
                    .iter()
                    .map(|e| (e.name.clone(), GroupValue::Add(rng.gen_range(-1..=1))))
                    .collect(),
            )
            .unwrap();
            let bg = lg.balanced_cycles().unwrap();
            let fm = fm_matroid(&bg).unwrap();
            for c in fm.non_separating_cocircuits().unwrap() {
                classify_nonseparating(&bg, c).unwrap();
            }
            tested += 1;
        }
    }
}
