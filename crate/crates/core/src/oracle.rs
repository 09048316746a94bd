//! Rank-oracle view of a matroid, shared by the explicit engine and the
//! query-backed family instances.
//!
//! Everything here is exact: bounded cocircuit scans test the hyperplane
//! predicate through rank calls, connectivity uses the fundamental graph of a
//! basis (components of that bipartite graph are exactly the separators), and
//! tightened families fall back to a breadth-first walk of the basis-exchange
//! graph, which is connected for every matroid.

use std::collections::{HashSet, VecDeque};

use crate::matroid::ExplicitMatroid;
use crate::subset::{subsets_up_to, Subset};

pub trait RankOracle: Sync {
    /// Live positions of the ground set.
    fn domain(&self) -> Subset;
    /// Rank of `s`, which must be a subset of `domain()`.
    fn rank(&self, s: Subset) -> usize;

    fn full_rank(&self) -> usize {
        self.rank(self.domain())
    }

    fn is_independent(&self, s: Subset) -> bool {
        self.rank(s) == s.len()
    }

    fn is_circuit(&self, s: Subset) -> bool {
        !s.is_empty()
            && self.rank(s) == s.len() - 1
            && s.iter().all(|x| self.is_independent(s.remove(x)))
    }

    fn is_cocircuit(&self, t: Subset) -> bool {
        if t.is_empty() || !t.is_subset_of(self.domain()) {
            return false;
        }
        let r = self.full_rank();
        let rest = self.domain().difference(t);
        self.rank(rest) + 1 == r && t.iter().all(|x| self.rank(rest.insert(x)) == r)
    }
}

impl RankOracle for ExplicitMatroid {
    fn domain(&self) -> Subset {
        self.full_set()
    }
    fn rank(&self, s: Subset) -> usize {
        self.rank_of(s)
    }
}

/// Contraction of an independent set, over the same position space.
pub struct ContractView<'a, O: RankOracle> {
    base: &'a O,
    contracted: Subset,
    contracted_rank: usize,
}

impl<'a, O: RankOracle> ContractView<'a, O> {
    pub fn new(base: &'a O, contracted: Subset) -> Self {
        let contracted_rank = base.rank(contracted);
        ContractView {
            base,
            contracted,
            contracted_rank,
        }
    }
}

impl<O: RankOracle> RankOracle for ContractView<'_, O> {
    fn domain(&self) -> Subset {
        self.base.domain().difference(self.contracted)
    }
    fn rank(&self, s: Subset) -> usize {
        self.base.rank(s.union(self.contracted)) - self.contracted_rank
    }
}

/// Deletion view: same ranks, restricted domain.
pub struct DeleteView<'a, O: RankOracle> {
    base: &'a O,
    deleted: Subset,
}

impl<'a, O: RankOracle> DeleteView<'a, O> {
    pub fn new(base: &'a O, deleted: Subset) -> Self {
        DeleteView { base, deleted }
    }
}

impl<O: RankOracle> RankOracle for DeleteView<'_, O> {
    fn domain(&self) -> Subset {
        self.base.domain().difference(self.deleted)
    }
    fn rank(&self, s: Subset) -> usize {
        self.base.rank(s)
    }
}

/// Relaxation delta: extra bases grafted onto a base oracle.
pub struct Relaxed<'a, O: RankOracle> {
    base: &'a O,
    added: Vec<Subset>,
}

impl<'a, O: RankOracle> Relaxed<'a, O> {
    pub fn new(base: &'a O, added: Vec<Subset>) -> Self {
        debug_assert!(added.iter().all(|b| b.len() == base.full_rank()));
        Relaxed { base, added }
    }
}

impl<O: RankOracle> RankOracle for Relaxed<'_, O> {
    fn domain(&self) -> Subset {
        self.base.domain()
    }
    fn rank(&self, s: Subset) -> usize {
        let extra = self
            .added
            .iter()
            .map(|b| b.intersection(s).len())
            .max()
            .unwrap_or(0);
        self.base.rank(s).max(extra)
    }
}

/// Tightening delta: bases removed from a base oracle.
///
/// Rank is computed greedily from the modified independence test: a set is
/// independent iff some surviving basis contains it. The search for such a
/// basis walks the basis-exchange graph, which cannot trap us: if more bases
/// than the removed ones contain the set, one is reachable after expanding at
/// most `removed.len()` vertices.
pub struct Tightened<'a, O: RankOracle> {
    base: &'a O,
    removed: Vec<Subset>,
}

impl<'a, O: RankOracle> Tightened<'a, O> {
    pub fn new(base: &'a O, removed: Vec<Subset>) -> Self {
        debug_assert!(removed.iter().all(|b| b.len() == base.full_rank()));
        Tightened { base, removed }
    }

    fn is_independent_t(&self, s: Subset) -> bool {
        if !self.base.is_independent(s) {
            return false;
        }
        // Fast path: greedily extend to a basis in position order.
        let b0 = greedy_extend(self.base, s, self.base.domain());
        if !self.removed.contains(&b0) {
            return true;
        }
        // BFS over bases containing s in the exchange graph.
        let domain = self.base.domain();
        let mut seen: HashSet<u32> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(b0.0);
        queue.push_back(b0);
        while let Some(b) = queue.pop_front() {
            for x in b.difference(s).iter() {
                for y in domain.difference(b).iter() {
                    let cand = b.remove(x).insert(y);
                    if seen.contains(&cand.0) || !self.base.is_independent(cand) {
                        continue;
                    }
                    if !self.removed.contains(&cand) {
                        return true;
                    }
                    seen.insert(cand.0);
                    queue.push_back(cand);
                }
            }
        }
        false
    }
}

impl<O: RankOracle> RankOracle for Tightened<'_, O> {
    fn domain(&self) -> Subset {
        self.base.domain()
    }
    fn rank(&self, s: Subset) -> usize {
        let mut cur = Subset::EMPTY;
        for x in s.iter() {
            let cand = cur.insert(x);
            // Cheap filter through the base matroid before the full test.
            if self.base.is_independent(cand) && self.is_independent_t(cand) {
                cur = cand;
            }
        }
        cur.len()
    }

    fn is_independent(&self, s: Subset) -> bool {
        self.is_independent_t(s)
    }
}

/// Greedily extend `start` to a basis of `within`, in increasing position order.
pub fn greedy_extend<O: RankOracle>(oracle: &O, start: Subset, within: Subset) -> Subset {
    let mut cur = start;
    let mut r = oracle.rank(cur);
    for x in within.difference(start).iter() {
        if oracle.rank(cur.insert(x)) > r {
            cur = cur.insert(x);
            r += 1;
        }
    }
    cur
}

/// Connectivity via the fundamental graph of a greedy basis. Loops and
/// coloops are isolated vertices of that graph, so any matroid on at least
/// two elements containing one is reported disconnected, as it should be.
pub fn oracle_is_connected<O: RankOracle>(oracle: &O) -> bool {
    let domain = oracle.domain();
    let n = domain.len();
    if n <= 1 {
        return true;
    }
    let basis = greedy_extend(oracle, Subset::EMPTY, domain);
    let r = basis.len();
    let positions: Vec<usize> = domain.iter().collect();
    let slot: std::collections::HashMap<usize, usize> = positions
        .iter()
        .enumerate()
        .map(|(i, &p)| (p, i))
        .collect();
    let mut uf: Vec<usize> = (0..n).collect();
    fn find(uf: &mut Vec<usize>, mut x: usize) -> usize {
        while uf[x] != x {
            uf[x] = uf[uf[x]];
            x = uf[x];
        }
        x
    }
    for y in domain.difference(basis).iter() {
        for x in basis.iter() {
            // x lies in the fundamental circuit of y iff the swap stays a basis
            if oracle.rank(basis.remove(x).insert(y)) == r {
                let (a, b) = (find(&mut uf, slot[&x]), find(&mut uf, slot[&y]));
                uf[a] = b;
            }
        }
    }
    let root = find(&mut uf, 0);
    (1..n).all(|i| find(&mut uf, i) == root)
}

/// True iff the matroid has no cocircuit of size < `s`; on failure returns
/// the offending set. Scans every subset of the domain smaller than `s`.
pub fn cogirth_at_least<O: RankOracle>(oracle: &O, s: usize) -> std::result::Result<(), Subset> {
    let domain = oracle.domain();
    let r = oracle.full_rank();
    if s <= 1 {
        return Ok(());
    }
    for t in subsets_up_to(domain, s - 1) {
        if t.is_empty() {
            continue;
        }
        if oracle.rank(domain.difference(t)) < r {
            return Err(t);
        }
    }
    Ok(())
}

/// All cocircuits of size at most `max_size`, by direct subset scan.
pub fn bounded_cocircuits<O: RankOracle>(oracle: &O, max_size: usize) -> Vec<Subset> {
    subsets_up_to(oracle.domain(), max_size)
        .into_iter()
        .filter(|&t| oracle.is_cocircuit(t))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oracle_connectivity_matches_circuit_definition() {
        let connected = [
            ExplicitMatroid::uniform(2, 4),
            ExplicitMatroid::uniform(3, 5),
            ExplicitMatroid::uniform(1, 2),
        ];
        for m in &connected {
            assert_eq!(m.is_connected().unwrap(), oracle_is_connected(m));
            assert!(oracle_is_connected(m));
        }
        // a coloop disconnects
        let m = ExplicitMatroid::from_named_bases(
            &["1", "2", "3"],
            &[&["1", "2"], &["1", "3"]],
        )
        .unwrap();
        assert_eq!(m.is_connected().unwrap(), oracle_is_connected(&m));
        assert!(!oracle_is_connected(&m));
    }

    #[test]
    fn contract_view_matches_minor() {
        let u35 = ExplicitMatroid::uniform(3, 5);
        let c = Subset::from_indices([4]);
        let view = ContractView::new(&u35, c);
        let minor = u35.minor(Subset::EMPTY, c).unwrap();
        for s in crate::subset::subsets_of(view.domain()) {
            assert_eq!(view.rank(s), minor.rank_of(s));
        }
    }

    #[test]
    fn relaxed_oracle_matches_relax() {
        let m = ExplicitMatroid::from_named_bases(&["1", "2", "3"], &[&["1", "2"], &["1", "3"]])
            .unwrap();
        let c = m.subset(&["2", "3"]).unwrap();
        let relaxed = m.relax(c).unwrap();
        let oracle = Relaxed::new(&m, vec![c]);
        for s in crate::subset::subsets_of(m.full_set()) {
            assert_eq!(oracle.rank(s), relaxed.rank_of(s));
        }
    }

    #[test]
    fn tightened_oracle_matches_tighten() {
        let u23 = ExplicitMatroid::uniform(2, 3);
        let b = u23.subset(&["2", "3"]).unwrap();
        let tightened = u23.tighten(b).unwrap();
        let oracle = Tightened::new(&u23, vec![b]);
        for s in crate::subset::subsets_of(u23.full_set()) {
            assert_eq!(oracle.rank(s), tightened.rank_of(s), "at {s:?}");
        }
        // two removals
        let u24 = ExplicitMatroid::uniform(2, 4);
        let b1 = u24.subset(&["1", "2"]).unwrap();
        let b2 = u24.subset(&["3", "4"]).unwrap();
        let t2 = u24.tighten(b1).unwrap().tighten(b2).unwrap();
        let oracle2 = Tightened::new(&u24, vec![b1, b2]);
        for s in crate::subset::subsets_of(u24.full_set()) {
            assert_eq!(oracle2.rank(s), t2.rank_of(s), "at {s:?}");
        }
    }

    #[test]
    fn bounded_cocircuit_scan() {
        let u24 = ExplicitMatroid::uniform(2, 4);
        assert_eq!(bounded_cocircuits(&u24, 3).len(), 4);
        assert!(cogirth_at_least(&u24, 3).is_ok());
        assert!(cogirth_at_least(&u24, 4).is_err());
    }
}
