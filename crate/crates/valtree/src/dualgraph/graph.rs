//! Combinatorial dual graphs with Farey weights.

use std::collections::{BTreeMap, BTreeSet};

use crate::arith::Q;
use crate::error::{Error, Result};

/// Where a blowup happens: the origin, a free point of one component, or the
/// intersection point of two adjacent components.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Point {
    Origin,
    Free(usize),
    Satellite(usize, usize),
}

/// An exceptional component: its Farey weight `(a, b)` and the point whose blowup created it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub farey: (u64, u64),
    pub creation: Point,
}

impl Vertex {
    /// Farey parameter `A = a / b`.
    pub fn farey_parameter(&self) -> Q {
        Q::new(self.farey.0.into(), self.farey.1.into())
    }
}

/// The dual graph of a composition of point blowups. Vertex `i` is the `i`-th
/// component created; `E0` is the root.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DualGraph {
    vertices: Vec<Vertex>,
    edges: BTreeSet<(usize, usize)>,
    attachments: BTreeMap<usize, usize>,
}

fn edge(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

impl DualGraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Rebuilds a graph from raw parts, checking that it is a tree with consistent weights.
    pub fn from_parts(
        vertices: Vec<Vertex>,
        edges: BTreeSet<(usize, usize)>,
        attachments: BTreeMap<usize, usize>,
    ) -> Result<Self> {
        let mut g = DualGraph::new();
        for v in &vertices {
            g.blowup_mut(v.creation)?;
        }
        if g.vertices != vertices {
            return Err(Error::InvalidBlowup("weights do not follow the creation rules".into()));
        }
        let edges: BTreeSet<_> = edges.into_iter().map(|(a, b)| edge(a, b)).collect();
        if g.edges != edges {
            return Err(Error::InvalidBlowup("edges do not follow the creation rules".into()));
        }
        for (&br, &v) in &attachments {
            g.attach(br, v)?;
        }
        Ok(g)
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn edges(&self) -> &BTreeSet<(usize, usize)> {
        &self.edges
    }

    pub fn attachments(&self) -> &BTreeMap<usize, usize> {
        &self.attachments
    }

    pub fn vertex(&self, e: usize) -> Result<&Vertex> {
        self.vertices.get(e).ok_or(Error::NoSuchVertex(e))
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&edge(a, b))
    }

    /// Records that branch `branch` meets the divisor at a free point of `vertex`.
    pub fn attach(&mut self, branch: usize, vertex: usize) -> Result<()> {
        self.vertex(vertex)?;
        self.attachments.insert(branch, vertex);
        Ok(())
    }

    /// Performs a blowup in place and returns the index of the new component.
    pub fn blowup_mut(&mut self, p: Point) -> Result<usize> {
        if self.vertices.is_empty() && p != Point::Origin {
            return Err(Error::InvalidBlowup("the first blowup must be at the origin".into()));
        }
        let id = self.vertices.len();
        let farey = match p {
            Point::Origin => {
                if !self.vertices.is_empty() {
                    return Err(Error::InvalidBlowup("the origin can only be blown up first".into()));
                }
                (2, 1)
            }
            Point::Free(e) => {
                let (a, b) = self.vertex(e)?.farey;
                self.edges.insert((e, id));
                (a + 1, b)
            }
            Point::Satellite(e, f) => {
                if e == f || !self.adjacent(e, f) {
                    return Err(Error::InvalidBlowup(format!("E{e} and E{f} are not adjacent")));
                }
                let (a, b) = self.vertices[e].farey;
                let (c, d) = self.vertices[f].farey;
                self.edges.remove(&edge(e, f));
                self.edges.insert(edge(e, id));
                self.edges.insert(edge(f, id));
                (a + c, b + d)
            }
        };
        self.vertices.push(Vertex { farey, creation: p });
        Ok(id)
    }

    /// Pure version of [`DualGraph::blowup_mut`].
    pub fn blowup_at(&self, p: Point) -> Result<DualGraph> {
        let mut g = self.clone();
        g.blowup_mut(p)?;
        Ok(g)
    }

    pub fn neighbors(&self, e: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == e {
                    Some(b)
                } else if b == e {
                    Some(a)
                } else {
                    None
                }
            })
            .collect()
    }

    /// Parent of each vertex in the tree rooted at `E0`.
    pub fn parents(&self) -> Vec<Option<usize>> {
        let mut parent = vec![None; self.len()];
        if self.is_empty() {
            return parent;
        }
        let mut seen = vec![false; self.len()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for w in self.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some(v);
                    stack.push(w);
                }
            }
        }
        parent
    }

    /// `E <= F` in the order rooted at `E0`.
    pub fn is_below(&self, e: usize, f: usize) -> bool {
        let parents = self.parents();
        let mut cur = Some(f);
        while let Some(v) = cur {
            if v == e {
                return true;
            }
            cur = parents[v];
        }
        false
    }

    /// `(A, b, m)`: Farey parameter, generic multiplicity and multiplicity
    /// (the least `b` over the vertices above `E`).
    pub fn vertex_invariants(&self, e: usize) -> Result<(Q, u64, u64)> {
        let v = self.vertex(e)?;
        let parents = self.parents();
        let mut m = v.farey.1;
        for f in 0..self.len() {
            let mut cur = Some(f);
            while let Some(w) = cur {
                if w == e {
                    m = m.min(self.vertices[f].farey.1);
                    break;
                }
                cur = parents[w];
            }
        }
        Ok((v.farey_parameter(), v.farey.1, m))
    }

    /// A canonical string for the rooted tree labelled by Farey weights and attached
    /// branches; equal strings mean isomorphic graphs (creation order ignored).
    pub fn canonical_form(&self) -> String {
        if self.is_empty() {
            return "()".into();
        }
        let parents = self.parents();
        let mut children: Vec<Vec<usize>> = vec![Vec::new(); self.len()];
        for (v, p) in parents.iter().enumerate() {
            if let Some(p) = p {
                children[*p].push(v);
            }
        }
        let mut attached: Vec<Vec<usize>> = vec![Vec::new(); self.len()];
        for (&br, &v) in &self.attachments {
            attached[v].push(br);
        }
        fn rec(v: usize, g: &DualGraph, ch: &[Vec<usize>], at: &[Vec<usize>]) -> String {
            let (a, b) = g.vertices[v].farey;
            let mut kids: Vec<String> = ch[v].iter().map(|&c| rec(c, g, ch, at)).collect();
            kids.sort();
            let br: Vec<String> = at[v].iter().map(|b| format!("C{b}")).collect();
            format!("({a},{b}[{}]{})", br.join(","), kids.concat())
        }
        rec(0, self, &children, &attached)
    }

    /// Edges whose endpoints violate the determinant law, given a multiplicity per vertex.
    pub fn check_determinants(&self, m: impl Fn(usize) -> u64) -> Vec<(usize, usize)> {
        let parents = self.parents();
        let mut bad = Vec::new();
        for (v, p) in parents.iter().enumerate() {
            let Some(p) = *p else { continue };
            let (a, b) = self.vertices[p].farey;
            let (c, d) = self.vertices[v].farey;
            let det = (a as i128 * d as i128 - b as i128 * c as i128).unsigned_abs() as u64;
            if det != m(v) {
                bad.push((p, v));
            }
        }
        bad
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::qr;

    fn cusp_graph() -> DualGraph {
        let mut g = DualGraph::new();
        g.blowup_mut(Point::Origin).unwrap();
        g.blowup_mut(Point::Free(0)).unwrap();
        g.blowup_mut(Point::Satellite(0, 1)).unwrap();
        g
    }

    #[test]
    fn farey_rules() {
        let g = DualGraph::new().blowup_at(Point::Origin).unwrap();
        assert_eq!(g.vertices()[0].farey, (2, 1));
        let g = g.blowup_at(Point::Free(0)).unwrap();
        assert_eq!(g.vertices()[1].farey, (3, 1));
        let g = g.blowup_at(Point::Satellite(0, 1)).unwrap();
        assert_eq!(g.vertices()[2].farey, (5, 2));
        assert_eq!(g.edges().iter().copied().collect::<Vec<_>>(), vec![(0, 2), (1, 2)]);
        assert!(g.blowup_at(Point::Satellite(0, 1)).is_err());
        assert!(g.blowup_at(Point::Origin).is_err());
        assert!(g.blowup_at(Point::Free(7)).is_err());
    }

    #[test]
    fn invariants_of_cusp_graph() {
        let mut g = cusp_graph();
        assert_eq!(g.vertex_invariants(0).unwrap(), (qr(2, 1), 1, 1));
        // E1 (3,1) lies above (5,2), so m(5,2) = 1
        assert_eq!(g.vertex_invariants(2).unwrap(), (qr(5, 2), 2, 1));
        let f = g.blowup_mut(Point::Free(2)).unwrap();
        assert_eq!(g.vertex_invariants(f).unwrap(), (qr(3, 1), 2, 2));
        assert!(g.is_below(0, 1) && g.is_below(2, 1) && !g.is_below(1, 2));
    }

    #[test]
    fn canonical_form_ignores_creation_order() {
        let mut a = DualGraph::new();
        a.blowup_mut(Point::Origin).unwrap();
        a.blowup_mut(Point::Free(0)).unwrap();
        a.blowup_mut(Point::Free(0)).unwrap();
        a.attach(0, 1).unwrap();
        let mut b = a.clone();
        b.attach(0, 2).unwrap();
        assert_eq!(a.canonical_form(), b.canonical_form());
        b.attach(1, 1).unwrap();
        assert_ne!(a.canonical_form(), b.canonical_form());
    }
}
