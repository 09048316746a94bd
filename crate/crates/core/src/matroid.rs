//! Explicit matroids given by their basis families.
//!
//! Ground sets are capped at 32 named elements; subsets are bitmasks keyed by
//! ground position. Every constructor re-checks that the stored family really
//! is the basis family of a matroid: exhaustively for up to 16 elements (via
//! the purity criterion on the induced independence system), by sampled
//! basis-exchange above that.

use std::collections::{BTreeMap, HashSet};
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::subset::{subsets_up_to, Subset, MAX_ELEMENTS};

/// Ground sets above this size only support rank queries and size-bounded
/// scans; full circuit/cocircuit enumeration needs the subset tables.
pub const TABLE_LIMIT: usize = 16;

#[derive(Debug)]
struct Tables {
    independent: Vec<bool>,
    rank: Vec<u8>,
}

/// A matroid stored as an explicit family of bases.
#[derive(Debug)]
pub struct ExplicitMatroid {
    ground: Vec<String>,
    index: BTreeMap<String, usize>,
    bases: Vec<Subset>,
    tables: OnceLock<Tables>,
}

impl Clone for ExplicitMatroid {
    fn clone(&self) -> Self {
        ExplicitMatroid {
            ground: self.ground.clone(),
            index: self.index.clone(),
            bases: self.bases.clone(),
            tables: OnceLock::new(),
        }
    }
}

impl PartialEq for ExplicitMatroid {
    fn eq(&self, other: &Self) -> bool {
        self.ground == other.ground && self.bases == other.bases
    }
}
impl Eq for ExplicitMatroid {}

fn build_tables(n: usize, bases: &[Subset]) -> Tables {
    let full = 1usize << n;
    let mut independent = vec![false; full];
    for b in bases {
        independent[b.0 as usize] = true;
    }
    for m in (0..full).rev() {
        if independent[m] {
            let mut bits = m;
            while bits != 0 {
                let low = bits & bits.wrapping_neg();
                independent[m & !low] = true;
                bits &= bits - 1;
            }
        }
    }
    let mut rank = vec![0u8; full];
    for m in 1..full {
        if independent[m] {
            rank[m] = (m as u32).count_ones() as u8;
        } else {
            let mut r = 0u8;
            let mut bits = m;
            while bits != 0 {
                let low = bits & bits.wrapping_neg();
                r = r.max(rank[m & !low]);
                bits &= bits - 1;
            }
            rank[m] = r;
        }
    }
    Tables { independent, rank }
}

/// Purity: every maximal independent subset of every set has full rank in it.
/// Equivalent to the exchange axiom for the down-closure of the basis family.
fn check_purity(n: usize, t: &Tables, names: &[String]) -> Result<()> {
    let full = 1usize << n;
    for m in 0..full {
        if !t.independent[m] {
            continue;
        }
        let mut addable = 0usize;
        for i in 0..n {
            if m & (1 << i) == 0 && t.independent[m | (1 << i)] {
                addable |= 1 << i;
            }
        }
        let blocked = (full - 1) & !addable;
        if t.rank[blocked] != (m as u32).count_ones() as u8 {
            let witness: Vec<&str> = Subset(m as u32).iter().map(|i| names[i].as_str()).collect();
            return Err(Error::AxiomViolation(format!(
                "independent set {{{}}} is maximal in a set of larger rank",
                witness.join(" ")
            )));
        }
    }
    Ok(())
}

fn sampled_exchange(n: usize, bases: &[Subset]) -> Result<()> {
    let set: HashSet<u32> = bases.iter().map(|b| b.0).collect();
    // Deterministic splitmix64 stream; this path only runs for n > 16.
    let mut state = 0x9e3779b97f4a7c15u64;
    let mut next = move || {
        state = state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    };
    let samples = 50_000usize.min(bases.len() * bases.len());
    for _ in 0..samples {
        let b1 = bases[(next() % bases.len() as u64) as usize];
        let b2 = bases[(next() % bases.len() as u64) as usize];
        for x in b1.difference(b2).iter() {
            let found = b2
                .difference(b1)
                .iter()
                .any(|y| set.contains(&b1.remove(x).insert(y).0));
            if !found {
                return Err(Error::AxiomViolation(format!(
                    "no exchange for element {x} between two bases"
                )));
            }
        }
    }
    let _ = n;
    Ok(())
}

impl ExplicitMatroid {
    /// Build and validate a matroid from element names and basis masks.
    pub fn from_bases(ground: Vec<String>, mut bases: Vec<Subset>) -> Result<Self> {
        let n = ground.len();
        if n > MAX_ELEMENTS {
            return Err(Error::TooManyElements(n));
        }
        let mut index = BTreeMap::new();
        for (i, name) in ground.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::DuplicateName(name.clone()));
            }
        }
        if bases.is_empty() {
            return Err(Error::NoBases);
        }
        bases.sort();
        bases.dedup();
        let r = bases[0].len();
        if bases.iter().any(|b| b.len() != r) {
            return Err(Error::UnequalBases);
        }
        let ground_full = Subset::full(n);
        if bases.iter().any(|b| !b.is_subset_of(ground_full)) {
            return Err(Error::AxiomViolation("basis outside ground set".into()));
        }
        let m = ExplicitMatroid {
            ground,
            index,
            bases,
            tables: OnceLock::new(),
        };
        if n <= TABLE_LIMIT {
            check_purity(n, m.tables(), &m.ground)?;
        } else {
            sampled_exchange(n, &m.bases)?;
        }
        Ok(m)
    }

    /// Convenience constructor taking bases as name lists.
    pub fn from_named_bases(ground: &[&str], bases: &[&[&str]]) -> Result<Self> {
        let ground_vec: Vec<String> = ground.iter().map(|s| s.to_string()).collect();
        let mut index = BTreeMap::new();
        for (i, name) in ground_vec.iter().enumerate() {
            index.insert(name.clone(), i);
        }
        let mut masks = Vec::new();
        for b in bases {
            let mut s = Subset::EMPTY;
            for name in *b {
                let &i = index
                    .get(*name)
                    .ok_or_else(|| Error::UnknownElement(name.to_string()))?;
                s = s.insert(i);
            }
            masks.push(s);
        }
        Self::from_bases(ground_vec, masks)
    }

    /// The uniform matroid U_{r,n} on elements named "1".."n".
    pub fn uniform(r: usize, n: usize) -> Self {
        let ground: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        let bases = crate::subset::k_subsets_of(Subset::full(n), r);
        Self::from_bases(ground, bases).expect("uniform matroid")
    }

    pub fn size(&self) -> usize {
        self.ground.len()
    }

    pub fn ground_names(&self) -> &[String] {
        &self.ground
    }

    pub fn full_set(&self) -> Subset {
        Subset::full(self.size())
    }

    pub fn bases(&self) -> &[Subset] {
        &self.bases
    }

    pub fn rank(&self) -> usize {
        self.bases[0].len()
    }

    pub fn element_index(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    /// Subset from element names.
    pub fn subset(&self, names: &[&str]) -> Result<Subset> {
        let mut s = Subset::EMPTY;
        for name in names {
            s = s.insert(self.element_index(name)?);
        }
        Ok(s)
    }

    pub fn names_of(&self, s: Subset) -> Vec<String> {
        s.iter().map(|i| self.ground[i].clone()).collect()
    }

    pub fn format_subset(&self, s: Subset) -> String {
        self.names_of(s).join(" ")
    }

    fn tables(&self) -> &Tables {
        debug_assert!(self.size() <= TABLE_LIMIT);
        self.tables
            .get_or_init(|| build_tables(self.size(), &self.bases))
    }

    fn require_tables(&self, op: &'static str) -> Result<&Tables> {
        if self.size() > TABLE_LIMIT {
            return Err(Error::TooLarge {
                op,
                got: self.size(),
                limit: TABLE_LIMIT,
            });
        }
        Ok(self.tables())
    }

    fn check_in_ground(&self, s: Subset) -> Result<()> {
        if s.is_subset_of(self.full_set()) {
            Ok(())
        } else {
            Err(Error::UnknownElement(format!("position {:?}", s)))
        }
    }

    /// Rank of a subset: the largest intersection with a basis.
    pub fn rank_of(&self, s: Subset) -> usize {
        if self.size() <= TABLE_LIMIT {
            self.tables().rank[s.0 as usize] as usize
        } else {
            self.bases
                .iter()
                .map(|b| b.intersection(s).len())
                .max()
                .unwrap_or(0)
        }
    }

    /// Checked rank, rejecting elements outside the ground set.
    pub fn rank_checked(&self, s: Subset) -> Result<usize> {
        self.check_in_ground(s)?;
        Ok(self.rank_of(s))
    }

    pub fn is_independent(&self, s: Subset) -> bool {
        if self.size() <= TABLE_LIMIT {
            self.tables().independent[s.0 as usize]
        } else {
            self.rank_of(s) == s.len()
        }
    }

    pub fn is_circuit(&self, s: Subset) -> bool {
        if s.is_empty() || self.is_independent(s) {
            return false;
        }
        s.iter().all(|x| self.is_independent(s.remove(x)))
    }

    /// Closure: all elements whose addition does not raise the rank.
    pub fn closure(&self, s: Subset) -> Subset {
        let r = self.rank_of(s);
        let mut out = s;
        for x in self.full_set().difference(s).iter() {
            if self.rank_of(s.insert(x)) == r {
                out = out.insert(x);
            }
        }
        out
    }

    pub fn is_hyperplane(&self, s: Subset) -> bool {
        self.rank_of(s) + 1 == self.rank() && self.closure(s) == s
    }

    /// All circuits, canonically sorted.
    pub fn circuits(&self) -> Result<Vec<Subset>> {
        let t = self.require_tables("circuits")?;
        let n = self.size();
        let full = 1usize << n;
        let mut out = Vec::new();
        for m in 1..full {
            if t.independent[m] {
                continue;
            }
            let mut minimal = true;
            let mut bits = m;
            while bits != 0 {
                let low = bits & bits.wrapping_neg();
                if !t.independent[m & !low] {
                    minimal = false;
                    break;
                }
                bits &= bits - 1;
            }
            if minimal {
                out.push(Subset(m as u32));
            }
        }
        Ok(out)
    }

    pub fn dual(&self) -> Self {
        let n = self.size();
        let bases = self.bases.iter().map(|b| b.complement(n)).collect();
        Self::from_bases(self.ground.clone(), bases).expect("dual of a matroid is a matroid")
    }

    /// Cocircuit test via the hyperplane complement, valid at any size.
    pub fn is_cocircuit(&self, t: Subset) -> bool {
        if t.is_empty() {
            return false;
        }
        let r = self.rank();
        let rest = self.full_set().difference(t);
        if self.rank_of(rest) + 1 != r {
            return false;
        }
        t.iter().all(|x| self.rank_of(rest.insert(x)) == r)
    }

    /// All cocircuits, or only those of size at most `max_size`.
    ///
    /// The bounded mode scans subsets directly and therefore works on any
    /// ground-set size; full enumeration requires the subset tables.
    pub fn cocircuits(&self, max_size: Option<usize>) -> Result<Vec<Subset>> {
        match max_size {
            None => {
                self.require_tables("cocircuits")?;
                self.dual().circuits()
            }
            Some(k) => {
                let mut out: Vec<Subset> = subsets_up_to(self.full_set(), k)
                    .into_iter()
                    .filter(|&t| self.is_cocircuit(t))
                    .collect();
                out.sort();
                Ok(out)
            }
        }
    }

    /// Deletion/contraction minor. Contracting a dependent set contracts its
    /// lexicographically-least maximal independent subset and deletes the rest.
    pub fn minor(&self, delete: Subset, contract: Subset) -> Result<Self> {
        self.check_in_ground(delete)?;
        self.check_in_ground(contract)?;
        if delete.intersects(contract) {
            return Err(Error::OverlappingSets);
        }
        let mut ind = Subset::EMPTY;
        for x in contract.iter() {
            if self.rank_of(ind.insert(x)) == ind.len() + 1 {
                ind = ind.insert(x);
            }
        }
        let removed = delete.union(contract);
        let keep: Vec<usize> = self.full_set().difference(removed).iter().collect();
        let new_ground: Vec<String> = keep.iter().map(|&i| self.ground[i].clone()).collect();
        if new_ground.is_empty() {
            // Empty minor: the rank-0 matroid on no elements.
            return Self::from_bases(Vec::new(), vec![Subset::EMPTY]);
        }
        let new_rank = self.rank_of(self.full_set().difference(removed).union(ind)) - ind.len();
        let mut new_bases = Vec::new();
        for cand in crate::subset::k_subsets_of(Subset::full(keep.len()), new_rank) {
            let lifted = Subset::from_indices(cand.iter().map(|j| keep[j])).union(ind);
            if self.is_independent(lifted) {
                new_bases.push(cand);
            }
        }
        Self::from_bases(new_ground, new_bases)
    }

    /// Connectivity: every pair of elements lies in a common circuit.
    /// Empty and single-element matroids count as connected.
    pub fn is_connected(&self) -> Result<bool> {
        let n = self.size();
        if n <= 1 {
            return Ok(true);
        }
        if n <= TABLE_LIMIT {
            let circuits = self.circuits()?;
            let mut uf: Vec<usize> = (0..n).collect();
            fn find(uf: &mut Vec<usize>, x: usize) -> usize {
                if uf[x] != x {
                    let r = find(uf, uf[x]);
                    uf[x] = r;
                }
                uf[x]
            }
            for c in &circuits {
                let mut it = c.iter();
                if let Some(first) = it.next() {
                    for x in it {
                        let (a, b) = (find(&mut uf, first), find(&mut uf, x));
                        uf[a] = b;
                    }
                }
            }
            let root = find(&mut uf, 0);
            Ok((1..n).all(|i| find(&mut uf, i) == root))
        } else {
            Ok(crate::oracle::oracle_is_connected(self))
        }
    }

    /// Cocircuits whose deletion leaves a connected matroid.
    pub fn non_separating_cocircuits(&self) -> Result<Vec<Subset>> {
        let mut out = Vec::new();
        for c in self.cocircuits(None)? {
            let rest = self.minor(c, Subset::EMPTY)?;
            if rest.is_connected()? {
                out.push(c);
            }
        }
        Ok(out)
    }

    /// Sets that are simultaneously circuits and hyperplanes.
    pub fn circuit_hyperplanes(&self) -> Result<Vec<Subset>> {
        Ok(self
            .circuits()?
            .into_iter()
            .filter(|&c| self.is_hyperplane(c))
            .collect())
    }

    /// Relax a circuit-hyperplane: add it to the basis family.
    pub fn relax(&self, c: Subset) -> Result<Self> {
        if !self.is_circuit(c) {
            return Err(Error::NotACircuit(self.format_subset(c)));
        }
        if !self.is_hyperplane(c) {
            return Err(Error::NotAHyperplane(self.format_subset(c)));
        }
        let mut bases = self.bases.clone();
        bases.push(c);
        Self::from_bases(self.ground.clone(), bases)
    }

    /// Bases B such that B+e is a circuit for every non-basis element e.
    pub fn free_bases(&self) -> Vec<Subset> {
        self.bases
            .iter()
            .copied()
            .filter(|&b| self.is_free_basis(b))
            .collect()
    }

    pub fn is_free_basis(&self, b: Subset) -> bool {
        if self.bases.binary_search(&b).is_err() {
            return false;
        }
        self.full_set()
            .difference(b)
            .iter()
            .all(|e| self.is_circuit(b.insert(e)))
    }

    /// Tighten a free basis: remove it from the basis family.
    pub fn tighten(&self, b: Subset) -> Result<Self> {
        if !self.is_free_basis(b) {
            return Err(Error::NotAFreeBasis(self.format_subset(b)));
        }
        if self.bases.len() == 1 {
            return Err(Error::LastBasis);
        }
        let bases = self.bases.iter().copied().filter(|&x| x != b).collect();
        Self::from_bases(self.ground.clone(), bases)
    }

    /// Structural equality over a shared ground set, matching by element name.
    pub fn equal(&self, other: &Self) -> Result<bool> {
        if self.size() != other.size() {
            return Err(Error::GroundMismatch);
        }
        let mut perm = vec![0usize; other.size()];
        for (j, name) in other.ground.iter().enumerate() {
            match self.index.get(name) {
                Some(&i) => perm[j] = i,
                None => return Err(Error::GroundMismatch),
            }
        }
        let mut remapped: Vec<Subset> = other
            .bases
            .iter()
            .map(|b| Subset::from_indices(b.iter().map(|j| perm[j])))
            .collect();
        remapped.sort();
        Ok(remapped == self.bases)
    }
}
