//! Graphviz export of quotient quivers.

use std::fmt::Write;

use crate::stable_quiver::StableQuiver;
use crate::zquiver::{tau, ZVertex};

pub fn node_id(q: &StableQuiver, v: ZVertex) -> String {
    format!("t{}_n{}", v.t, q.dynkin().node_label(v.node))
}

/// Deterministic DOT rendering: nodes and edges are emitted in sorted order.
/// With `show_tau` every vertex gets a dashed edge to its translate.
pub fn to_dot(q: &StableQuiver, show_tau: bool) -> String {
    let mut out = String::new();
    writeln!(out, "digraph stable {{").unwrap();
    let mut nodes: Vec<String> = q.vertices().iter().map(|&v| node_id(q, v)).collect();
    nodes.sort();
    for n in &nodes {
        writeln!(out, "  {n};").unwrap();
    }
    let mut edges: Vec<String> = q
        .arrows()
        .into_iter()
        .map(|(a, b)| format!("  {} -> {};", node_id(q, a), node_id(q, b)))
        .collect();
    if show_tau {
        edges.extend(q.vertices().iter().map(|&v| {
            format!(
                "  {} -> {} [style=dashed, label=\"tau\"];",
                node_id(q, v),
                node_id(q, q.canonical(tau(v)))
            )
        }));
    }
    edges.sort();
    for e in &edges {
        writeln!(out, "{e}").unwrap();
    }
    writeln!(out, "}}").unwrap();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynkin::DynkinType;
    use crate::stable_quiver::{quotient, AdmissibleGroup};

    #[test]
    fn a2_cylinder() {
        let q = quotient(DynkinType::a(2).unwrap(), AdmissibleGroup::new(4, false)).unwrap();
        let dot = to_dot(&q, false);
        assert_eq!(
            dot.lines()
                .filter(|l| l.ends_with(';') && !l.contains("->"))
                .count(),
            8
        );
        assert_eq!(dot.matches("->").count(), 8);
        assert!(dot.contains("t0_n1 -> t0_n2;"));
        assert!(dot.contains("t0_n2 -> t1_n1;"));
        let with_tau = to_dot(&q, true);
        assert_eq!(with_tau.matches("style=dashed").count(), 8);
        assert!(with_tau.contains("t0_n1 -> t3_n1 [style=dashed"));
        assert_eq!(to_dot(&q, true), with_tau);
    }

    #[test]
    fn exceptional_ids() {
        let q = quotient(DynkinType::d(4).unwrap(), AdmissibleGroup::new(5, true)).unwrap();
        let dot = to_dot(&q, false);
        assert!(dot.contains("t0_n3p") && dot.contains("t0_n3m"));
    }
}
