use std::collections::VecDeque;

use crate::fpcore::Word;

/// A directed edge `from -> to` labeled by the group element carrying one facet to the other.
#[derive(Clone, Debug)]
pub struct FacetEdge {
    pub from: usize,
    pub to: usize,
    pub label: Word,
}

/// Facets of a fundamental domain and their side pairings.
#[derive(Clone, Debug, Default)]
pub struct FacetGraph {
    pub vertices: usize,
    pub edges: Vec<FacetEdge>,
}

/// Generators of the stabilizer of `base`: one word per edge outside a spanning tree of
/// its component. Along a tree edge the path word is multiplied on the left by the label,
/// and the edge `e` gives `path(to)^-1 label(e) path(from)`.
pub fn facet_stabilizer(g: &FacetGraph, base: usize) -> Vec<Word> {
    let mut path: Vec<Option<Word>> = vec![None; g.vertices];
    let mut tree = vec![false; g.edges.len()];
    path[base] = Some(Word::identity());
    let mut queue = VecDeque::from([base]);
    while let Some(v) = queue.pop_front() {
        for (k, e) in g.edges.iter().enumerate() {
            let pv = path[v].clone().unwrap();
            if e.from == v && path[e.to].is_none() {
                path[e.to] = Some(e.label.mul(&pv));
                tree[k] = true;
                queue.push_back(e.to);
            } else if e.to == v && path[e.from].is_none() {
                path[e.from] = Some(e.label.inverse().mul(&pv));
                tree[k] = true;
                queue.push_back(e.from);
            }
        }
    }
    g.edges
        .iter()
        .zip(&tree)
        .filter(|(e, t)| !**t && path[e.from].is_some())
        .map(|(e, _)| {
            let (pf, pt) = (path[e.from].as_ref().unwrap(), path[e.to].as_ref().unwrap());
            pt.inverse().mul(&e.label).mul(pf)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s, 2).unwrap()
    }

    #[test]
    fn loop_and_bigon() {
        let g = FacetGraph { vertices: 1, edges: vec![FacetEdge { from: 0, to: 0, label: w("1") }] };
        assert_eq!(facet_stabilizer(&g, 0), vec![w("1")]);
        let g = FacetGraph {
            vertices: 2,
            edges: vec![FacetEdge { from: 0, to: 1, label: w("1") }, FacetEdge { from: 1, to: 0, label: w("2") }],
        };
        assert_eq!(facet_stabilizer(&g, 0), vec![w("21")]);
    }

    #[test]
    fn other_components_are_ignored() {
        let g = FacetGraph {
            vertices: 3,
            edges: vec![FacetEdge { from: 0, to: 1, label: w("1") }, FacetEdge { from: 2, to: 2, label: w("2") }],
        };
        assert!(facet_stabilizer(&g, 0).is_empty());
        assert_eq!(facet_stabilizer(&g, 2), vec![w("2")]);
    }
}
