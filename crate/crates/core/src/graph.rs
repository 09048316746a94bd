//! Multigraphs with named vertices and edges. Parallel edges and loops are
//! allowed; a cycle is a connected 2-regular subgraph, so a loop is a cycle
//! of length 1 and a pair of parallel edges a cycle of length 2.

use crate::error::{Error, Result};
use crate::subset::{Subset, MAX_ELEMENTS};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub name: String,
    pub u: usize,
    pub v: usize,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.u == self.v
    }
    pub fn other_end(&self, w: usize) -> usize {
        if w == self.u {
            self.v
        } else {
            self.u
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multigraph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
}

/// A cycle stored by its edge set, with one of its two traversals.
/// `forward` means the edge is walked from its stored `u` to its `v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cycle {
    pub edges: Subset,
    pub traversal: Vec<(usize, bool)>,
}

impl Multigraph {
    pub fn new(vertices: Vec<String>, edges: Vec<(String, String, String)>) -> Result<Self> {
        if edges.len() > MAX_ELEMENTS {
            return Err(Error::TooManyElements(edges.len()));
        }
        if vertices.len() > MAX_ELEMENTS {
            return Err(Error::TooManyElements(vertices.len()));
        }
        let mut seen = std::collections::HashSet::new();
        for v in &vertices {
            if !seen.insert(v.clone()) {
                return Err(Error::DuplicateName(v.clone()));
            }
        }
        let vertex_index = |name: &str| -> Result<usize> {
            vertices
                .iter()
                .position(|v| v == name)
                .ok_or_else(|| Error::UnknownElement(name.to_string()))
        };
        let mut named = std::collections::HashSet::new();
        let mut out = Vec::with_capacity(edges.len());
        for (name, u, v) in edges {
            if !named.insert(name.clone()) {
                return Err(Error::DuplicateName(name));
            }
            out.push(Edge {
                u: vertex_index(&u)?,
                v: vertex_index(&v)?,
                name,
            });
        }
        Ok(Multigraph {
            vertices,
            edges: out,
        })
    }

    /// Build from vertex/edge index pairs with generated names.
    pub fn from_indices(n_vertices: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let vertices: Vec<String> = (0..n_vertices).map(|i| format!("v{i}")).collect();
        let edges = pairs
            .iter()
            .enumerate()
            .map(|(i, &(u, v))| {
                (
                    format!("e{i}"),
                    vertices[u].clone(),
                    vertices[v].clone(),
                )
            })
            .collect();
        Self::new(vertices, edges)
    }

    pub fn n_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, i: usize) -> &Edge {
        &self.edges[i]
    }

    pub fn edge_index(&self, name: &str) -> Result<usize> {
        self.edges
            .iter()
            .position(|e| e.name == name)
            .ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    pub fn vertex_index(&self, name: &str) -> Result<usize> {
        self.vertices
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    pub fn edge_names(&self) -> Vec<String> {
        self.edges.iter().map(|e| e.name.clone()).collect()
    }

    pub fn edge_set(&self, names: &[&str]) -> Result<Subset> {
        let mut s = Subset::EMPTY;
        for n in names {
            s = s.insert(self.edge_index(n)?);
        }
        Ok(s)
    }

    pub fn full_edge_set(&self) -> Subset {
        Subset::full(self.n_edges())
    }

    /// Edges incident with vertex `v` (a loop at `v` appears once).
    pub fn star(&self, v: usize) -> Subset {
        Subset::from_indices(
            self.edges
                .iter()
                .enumerate()
                .filter(|(_, e)| e.u == v || e.v == v)
                .map(|(i, _)| i),
        )
    }

    /// Number of incident edges, loops counted once.
    pub fn star_size(&self, v: usize) -> usize {
        self.star(v).len()
    }

    /// Vertices touched by the edge subset.
    pub fn support(&self, s: Subset) -> Subset {
        let mut out = Subset::EMPTY;
        for i in s.iter() {
            out = out.insert(self.edges[i].u).insert(self.edges[i].v);
        }
        out
    }

    /// (number of touched vertices, number of components) of the subgraph
    /// on the edge subset, isolated vertices excluded.
    pub fn components_of(&self, s: Subset) -> (usize, usize) {
        let support = self.support(s);
        let nv = support.len();
        if nv == 0 {
            return (0, 0);
        }
        let mut uf: Vec<usize> = (0..self.n_vertices()).collect();
        fn find(uf: &mut Vec<usize>, mut x: usize) -> usize {
            while uf[x] != x {
                uf[x] = uf[uf[x]];
                x = uf[x];
            }
            x
        }
        for i in s.iter() {
            let (a, b) = (
                find(&mut uf, self.edges[i].u),
                find(&mut uf, self.edges[i].v),
            );
            uf[a] = b;
        }
        let mut roots = std::collections::HashSet::new();
        for v in support.iter() {
            let r = find(&mut uf, v);
            roots.insert(r);
        }
        (nv, roots.len())
    }

    /// Rank of the edge subset in the graphic matroid: |V(S)| - c(S),
    /// loops contributing nothing.
    pub fn graphic_rank(&self, s: Subset) -> usize {
        let loopless = Subset::from_indices(s.iter().filter(|&i| !self.edges[i].is_loop()));
        let (nv, nc) = self.components_of(loopless);
        nv - nc
    }

    pub fn is_connected_graph(&self) -> bool {
        if self.n_vertices() <= 1 {
            return true;
        }
        let (nv, nc) = self.components_of(self.full_edge_set());
        nv == self.n_vertices() && nc == 1
    }

    /// Contract a non-loop edge, naming the merged vertex.
    pub fn contract_edge(&self, edge_name: &str, merged_name: &str) -> Result<Multigraph> {
        let ei = self.edge_index(edge_name)?;
        let e = &self.edges[ei];
        if e.is_loop() {
            return Err(Error::LoopPresent(edge_name.to_string()));
        }
        let (a, b) = (e.u.min(e.v), e.u.max(e.v));
        let mut vertices = Vec::new();
        let mut remap = vec![0usize; self.n_vertices()];
        for (i, name) in self.vertices.iter().enumerate() {
            if i == b {
                continue;
            }
            remap[i] = vertices.len();
            vertices.push(if i == a {
                merged_name.to_string()
            } else {
                name.clone()
            });
        }
        remap[b] = remap[a];
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != ei)
            .map(|(_, e)| {
                (
                    e.name.clone(),
                    vertices[remap[e.u]].clone(),
                    vertices[remap[e.v]].clone(),
                )
            })
            .collect();
        Multigraph::new(vertices, edges)
    }

    /// Every cycle exactly once, keyed by edge set: loops, parallel pairs,
    /// then vertex-simple cycles enumerated from their smallest vertex.
    pub fn all_cycles(&self) -> Vec<Cycle> {
        let mut out = Vec::new();
        for (i, e) in self.edges.iter().enumerate() {
            if e.is_loop() {
                out.push(Cycle {
                    edges: Subset::singleton(i),
                    traversal: vec![(i, true)],
                });
            }
        }
        for (i, e) in self.edges.iter().enumerate() {
            if e.is_loop() {
                continue;
            }
            for (j, f) in self.edges.iter().enumerate().skip(i + 1) {
                if f.is_loop() {
                    continue;
                }
                if (e.u == f.u && e.v == f.v) || (e.u == f.v && e.v == f.u) {
                    // walk e from u to v, return along f
                    let f_forward = f.u == e.v;
                    out.push(Cycle {
                        edges: Subset::from_indices([i, j]),
                        traversal: vec![(i, true), (j, f_forward)],
                    });
                }
            }
        }
        // vertex-simple cycles of length >= 3, anchored at their minimum vertex
        let adj: Vec<Vec<usize>> = (0..self.n_vertices())
            .map(|v| {
                self.edges
                    .iter()
                    .enumerate()
                    .filter(|(_, e)| !e.is_loop() && (e.u == v || e.v == v))
                    .map(|(i, _)| i)
                    .collect()
            })
            .collect();
        let mut path_edges: Vec<(usize, bool)> = Vec::new();
        let mut visited = vec![false; self.n_vertices()];
        for s in 0..self.n_vertices() {
            visited[s] = true;
            self.cycle_dfs(s, s, &adj, &mut visited, &mut path_edges, &mut out);
            visited[s] = false;
        }
        out.sort_by_key(|c| c.edges);
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn cycle_dfs(
        &self,
        start: usize,
        current: usize,
        adj: &[Vec<usize>],
        visited: &mut Vec<bool>,
        path: &mut Vec<(usize, bool)>,
        out: &mut Vec<Cycle>,
    ) {
        for &ei in &adj[current] {
            if path.iter().any(|&(p, _)| p == ei) {
                continue;
            }
            let e = &self.edges[ei];
            let next = e.other_end(current);
            let forward = e.u == current;
            if next == start {
                if path.len() >= 2 {
                    // canonical direction: first interior vertex below last
                    let first = self.edges[path[0].0].other_end(start);
                    if first < current {
                        let mut traversal = path.clone();
                        traversal.push((ei, forward));
                        out.push(Cycle {
                            edges: Subset::from_indices(traversal.iter().map(|&(i, _)| i)),
                            traversal,
                        });
                    }
                }
            } else if next > start && !visited[next] {
                visited[next] = true;
                path.push((ei, forward));
                self.cycle_dfs(start, next, adj, visited, path, out);
                path.pop();
                visited[next] = false;
            }
        }
    }
}

#[cfg(test)]
pub(crate) fn brute_force_cycles(g: &Multigraph) -> Vec<Subset> {
    // Independent oracle: every edge subset that is connected and 2-regular.
    let mut out = Vec::new();
    for s in crate::subset::subsets_of(g.full_edge_set()) {
        if s.is_empty() {
            continue;
        }
        let mut degree = vec![0usize; g.n_vertices()];
        for i in s.iter() {
            degree[g.edge(i).u] += 1;
            degree[g.edge(i).v] += 1;
        }
        let support = g.support(s);
        if support.iter().any(|v| degree[v] != 2) {
            continue;
        }
        let (_, nc) = g.components_of(s);
        if nc == 1 {
            out.push(s);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Multigraph {
        Multigraph::from_indices(3, &[(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    #[test]
    fn triangle_has_one_cycle() {
        let cycles = triangle().all_cycles();
        assert_eq!(cycles.len(), 1);
        assert_eq!(cycles[0].edges, Subset::from_indices([0, 1, 2]));
    }

    #[test]
    fn three_parallel_edges_give_three_two_cycles() {
        let g = Multigraph::from_indices(2, &[(0, 1), (0, 1), (0, 1)]).unwrap();
        let cycles = g.all_cycles();
        assert_eq!(cycles.len(), 3);
        assert!(cycles.iter().all(|c| c.edges.len() == 2));
    }

    #[test]
    fn loops_are_one_cycles() {
        let g = Multigraph::from_indices(2, &[(0, 0), (0, 1), (1, 1)]).unwrap();
        let cycles = g.all_cycles();
        assert_eq!(cycles.len(), 2);
        assert!(cycles.iter().all(|c| c.edges.len() == 1));
    }

    #[test]
    fn cycle_enumeration_matches_brute_force() {
        let cases = vec![
            triangle(),
            Multigraph::from_indices(2, &[(0, 1), (0, 1), (0, 1)]).unwrap(),
            Multigraph::from_indices(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (1, 3)]).unwrap(),
            Multigraph::from_indices(3, &[(0, 1), (0, 1), (1, 2), (1, 2), (2, 0), (0, 0)]).unwrap(),
            // octahedron
            Multigraph::from_indices(
                6,
                &[
                    (0, 1),
                    (1, 2),
                    (2, 0),
                    (3, 4),
                    (4, 5),
                    (5, 3),
                    (0, 4),
                    (0, 5),
                    (1, 3),
                    (1, 5),
                    (2, 3),
                    (2, 4),
                ],
            )
            .unwrap(),
        ];
        for g in cases {
            let mut got: Vec<Subset> = g.all_cycles().iter().map(|c| c.edges).collect();
            got.sort();
            got.dedup();
            assert_eq!(got.len(), g.all_cycles().len(), "duplicate cycles");
            assert_eq!(got, brute_force_cycles(&g));
        }
    }

    #[test]
    fn traversals_are_closed_walks() {
        let g = Multigraph::from_indices(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]).unwrap();
        for c in g.all_cycles() {
            if c.edges.len() < 2 {
                continue;
            }
            // each consecutive pair shares the junction vertex
            let ends: Vec<(usize, usize)> = c
                .traversal
                .iter()
                .map(|&(i, fwd)| {
                    let e = g.edge(i);
                    if fwd {
                        (e.u, e.v)
                    } else {
                        (e.v, e.u)
                    }
                })
                .collect();
            for w in 0..ends.len() {
                assert_eq!(ends[w].1, ends[(w + 1) % ends.len()].0);
            }
        }
    }

    #[test]
    fn contraction() {
        let g = Multigraph::new(
            vec!["a".into(), "b".into(), "c".into()],
            vec![
                ("e1".into(), "a".into(), "b".into()),
                ("e2".into(), "b".into(), "c".into()),
                ("e3".into(), "a".into(), "c".into()),
            ],
        )
        .unwrap();
        let c = g.contract_edge("e1", "ab").unwrap();
        assert_eq!(c.n_vertices(), 2);
        assert_eq!(c.n_edges(), 2);
        // e2 and e3 become parallel
        assert_eq!(c.all_cycles().len(), 1);
    }

    #[test]
    fn graphic_rank_and_components() {
        let g = Multigraph::from_indices(4, &[(0, 1), (1, 2), (2, 0), (3, 3)]).unwrap();
        assert_eq!(g.graphic_rank(g.full_edge_set()), 2);
        let (nv, nc) = g.components_of(g.full_edge_set());
        assert_eq!((nv, nc), (4, 2));
    }
}
