//! Hasse diagrams of finite orbit posets.

use std::collections::BTreeMap;

use petgraph::algo::toposort;
use petgraph::algo::tred::{dag_to_toposorted_adjacency_list, dag_transitive_reduction_closure};
use petgraph::graph::{DiGraph, NodeIndex};
use petgraph::visit::IntoNeighbors;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Cover relation `lower ⊂ closure(upper)`, optionally labelled by the move that realises it.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HasseEdge {
    pub lower: usize,
    pub upper: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

/// Transitively reduced DAG; edges point from smaller to larger orbits.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HasseDiagram<N> {
    pub nodes: Vec<N>,
    pub edges: Vec<HasseEdge>,
}

impl<N> HasseDiagram<N> {
    /// Builds the diagram of the order generated by `relations`, keeping the first label seen
    /// for each surviving cover.
    pub fn from_relations(
        nodes: Vec<N>,
        relations: impl IntoIterator<Item = (usize, usize, Option<String>)>,
    ) -> Result<Self> {
        let n = nodes.len();
        let mut labels: BTreeMap<(usize, usize), Option<String>> = BTreeMap::new();
        for (a, b, w) in relations {
            if a >= n || b >= n || a == b {
                return Err(Error::DimensionMismatch(format!("bad relation {a} -> {b}")));
            }
            labels.entry((a, b)).or_insert(w);
        }
        let mut g = DiGraph::<(), ()>::with_capacity(n, labels.len());
        for _ in 0..n {
            g.add_node(());
        }
        for &(a, b) in labels.keys() {
            g.add_edge(NodeIndex::new(a), NodeIndex::new(b), ());
        }
        let topo = toposort(&g, None)
            .map_err(|c| Error::DimensionMismatch(format!("cycle through {}", c.node_id().index())))?;
        let (adj, _) = dag_to_toposorted_adjacency_list::<_, u32>(&g, &topo);
        let (red, _) = dag_transitive_reduction_closure::<_, u32>(&adj);
        let mut edges = Vec::new();
        for (i, &from) in topo.iter().enumerate() {
            for j in red.neighbors(i as u32) {
                let to = topo[j as usize];
                let witness = labels.get(&(from.index(), to.index())).cloned().flatten();
                edges.push(HasseEdge {
                    lower: from.index(),
                    upper: to.index(),
                    witness,
                });
            }
        }
        edges.sort();
        Ok(HasseDiagram { nodes, edges })
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn covers_of(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges.iter().filter(move |e| e.lower == i).map(|e| e.upper)
    }

    /// Reflexive reachability along edges.
    pub fn reaches(&self, from: usize, to: usize) -> bool {
        let mut seen = vec![false; self.nodes.len()];
        let mut stack = vec![from];
        while let Some(v) = stack.pop() {
            if v == to {
                return true;
            }
            if std::mem::replace(&mut seen[v], true) {
                continue;
            }
            stack.extend(self.covers_of(v));
        }
        false
    }

    pub fn is_acyclic(&self) -> bool {
        self.edges.iter().all(|e| !self.reaches(e.upper, e.lower))
    }

    /// No edge is implied by a longer path.
    pub fn is_transitively_reduced(&self) -> bool {
        self.edges.iter().all(|e| {
            self.covers_of(e.lower)
                .filter(|&m| m != e.upper)
                .all(|m| !self.reaches(m, e.upper))
        })
    }

    pub fn map_nodes<M>(self, f: impl FnMut(N) -> M) -> HasseDiagram<M> {
        HasseDiagram {
            nodes: self.nodes.into_iter().map(f).collect(),
            edges: self.edges,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_implied_edges() {
        let d = HasseDiagram::from_relations(
            vec!['a', 'b', 'c'],
            [(0, 1, None), (1, 2, Some("x".into())), (0, 2, None)],
        )
        .unwrap();
        assert_eq!(d.edge_count(), 2);
        assert!(d.reaches(0, 2));
        assert!(d.is_transitively_reduced());
        assert_eq!(d.edges[1].witness.as_deref(), Some("x"));
    }

    #[test]
    fn rejects_cycles() {
        assert!(HasseDiagram::from_relations(vec![0, 1], [(0, 1, None), (1, 0, None)]).is_err());
    }
}
