//! Dynkin tree classes: node sets, the fixed orientations used throughout the
//! crate, and Coxeter invariants.
//!
//! Node indices are internal and always listed in a topological order of the
//! chosen orientation, so a left-to-right sweep over `0..rank` inside one
//! column of `ZΔ` sees every predecessor first.
//!
//! Orientations:
//! - `A_n`: `1 → 2 → … → n`.
//! - `D_n`: `1 → 2 → … → n-2`, then `n-2 → (n-1)+` and `n-2 → (n-1)-`.
//! - `E_n`: a chain of `n-1` nodes with one extra node hanging off the third
//!   node from the right end of the chain. Labels follow the slice numbering
//!   `x_1 … x_8`: the right part of the chain reads `1 → 2 → 3 → 5 → 6`, the
//!   branch is `3 → 4`, and `E_7`/`E_8` prepend `7` and `8 → 7` on the left.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Result, StabError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    D,
    E,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Family::A => 'A',
            Family::D => 'D',
            Family::E => 'E',
        };
        write!(f, "{c}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DynkinType {
    family: Family,
    rank: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flipped(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// Human-facing label of a tree node. Only the `D` exceptional pair carries a sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TreeNode {
    pub label: usize,
    pub sign: Option<Sign>,
}

impl fmt::Display for TreeNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign {
            None => write!(f, "{}", self.label),
            Some(Sign::Plus) => write!(f, "{}p", self.label),
            Some(Sign::Minus) => write!(f, "{}m", self.label),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoxeterData {
    pub h: u64,
    pub m_delta: u64,
    pub h_star: Option<u64>,
}

impl DynkinType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
        };
        if ok {
            Ok(DynkinType { family, rank })
        } else {
            Err(StabError::InvalidDynkin { family, rank })
        }
    }

    pub fn a(rank: usize) -> Result<Self> {
        Self::new(Family::A, rank)
    }

    pub fn d(rank: usize) -> Result<Self> {
        Self::new(Family::D, rank)
    }

    pub fn e(rank: usize) -> Result<Self> {
        Self::new(Family::E, rank)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn coxeter_number(&self) -> u64 {
        let n = self.rank as u64;
        match self.family {
            Family::A => n + 1,
            Family::D => 2 * n - 2,
            Family::E => match n {
                6 => 12,
                7 => 18,
                _ => 30,
            },
        }
    }

    pub fn coxeter_data(&self) -> CoxeterData {
        let h = self.coxeter_number();
        let n = self.rank as u64;
        let h_star = match (self.family, n) {
            (Family::D, n) if n % 2 == 0 => Some(n - 1),
            (Family::D, n) => Some(2 * n - 2),
            (Family::E, 7) => Some(9),
            (Family::E, 8) => Some(15),
            _ => None,
        };
        CoxeterData {
            h,
            m_delta: h - 1,
            h_star,
        }
    }

    /// Oriented edges `(source, target)` in node indices.
    pub fn tree_edges(&self) -> Vec<(usize, usize)> {
        let n = self.rank;
        match self.family {
            Family::A => (0..n - 1).map(|i| (i, i + 1)).collect(),
            Family::D => {
                let mut edges: Vec<_> = (0..n - 3).map(|i| (i, i + 1)).collect();
                edges.push((n - 3, n - 2));
                edges.push((n - 3, n - 1));
                edges
            }
            Family::E => {
                let mut edges: Vec<_> = (0..n - 2).map(|i| (i, i + 1)).collect();
                edges.push((self.e_branch_point(), n - 1));
                edges
            }
        }
    }

    /// Chain index of the branch node of `E_n`.
    fn e_branch_point(&self) -> usize {
        self.rank - 4
    }

    /// Horizontal offset of a node in half units. Along every oriented edge
    /// `v → w` the offset grows by one, so `(t, v)` sits at position `2t + offset(v)`.
    pub fn offset(&self, node: usize) -> i64 {
        let n = self.rank;
        match self.family {
            Family::A => node as i64,
            Family::D => node.min(n - 2) as i64,
            Family::E => {
                if node == n - 1 {
                    self.e_branch_point() as i64 + 1
                } else {
                    node as i64
                }
            }
        }
    }

    /// The non-trivial diagram involution used for reflections, if any.
    pub fn involution(&self, node: usize) -> Option<usize> {
        let n = self.rank;
        match self.family {
            Family::A if n >= 2 => Some(n - 1 - node),
            Family::D => Some(match node {
                x if x == n - 2 => n - 1,
                x if x == n - 1 => n - 2,
                x => x,
            }),
            Family::E if n == 6 => Some(if node == 5 { 5 } else { 4 - node }),
            _ => None,
        }
    }

    pub fn has_involution(&self) -> bool {
        self.involution(0).is_some()
    }

    /// Parity a half-unit shift must have when composed with the involution.
    pub fn flip_parity(&self) -> Option<i64> {
        if !self.has_involution() {
            return None;
        }
        Some((self.offset(self.involution(0).unwrap()) - self.offset(0)).rem_euclid(2))
    }

    /// Whether the suspension of the derived category involves the involution.
    pub fn suspension_flips(&self) -> bool {
        match self.family {
            Family::A => self.rank >= 2,
            Family::D => self.rank % 2 == 1,
            Family::E => self.rank == 6,
        }
    }

    pub fn exceptional_pair(&self) -> Option<(usize, usize)> {
        match self.family {
            Family::D => Some((self.rank - 2, self.rank - 1)),
            _ => None,
        }
    }

    pub fn is_exceptional(&self, node: usize) -> bool {
        matches!(self.exceptional_pair(), Some((p, m)) if node == p || node == m)
    }

    pub fn node_label(&self, node: usize) -> TreeNode {
        let n = self.rank;
        match self.family {
            Family::A => TreeNode {
                label: node + 1,
                sign: None,
            },
            Family::D => {
                if node == n - 2 {
                    TreeNode {
                        label: n - 1,
                        sign: Some(Sign::Plus),
                    }
                } else if node == n - 1 {
                    TreeNode {
                        label: n - 1,
                        sign: Some(Sign::Minus),
                    }
                } else {
                    TreeNode {
                        label: node + 1,
                        sign: None,
                    }
                }
            }
            Family::E => {
                let label = if node == n - 1 {
                    4
                } else {
                    // distance from the right end of the chain
                    match n - 2 - node {
                        0 => 6,
                        1 => 5,
                        2 => 3,
                        3 => 2,
                        4 => 1,
                        5 => 7,
                        _ => 8,
                    }
                };
                TreeNode { label, sign: None }
            }
        }
    }

    pub fn node_by_label(&self, label: &TreeNode) -> Option<usize> {
        (0..self.rank).find(|&v| self.node_label(v) == *label)
    }

    /// Parses `3`, `3p`/`3+` or `3m`/`3-`.
    pub fn parse_node(&self, s: &str) -> Option<usize> {
        let s = s.trim();
        let (digits, sign) = match s.chars().last()? {
            'p' | '+' => (&s[..s.len() - 1], Some(Sign::Plus)),
            'm' | '-' => (&s[..s.len() - 1], Some(Sign::Minus)),
            _ => (s, None),
        };
        let label = digits.parse().ok()?;
        self.node_by_label(&TreeNode { label, sign })
    }

    /// Reflexive reachability along the orientation.
    pub fn path_exists(&self, from: usize, to: usize) -> bool {
        let edges = self.tree_edges();
        let mut stack = vec![from];
        while let Some(v) = stack.pop() {
            if v == to {
                return true;
            }
            stack.extend(edges.iter().filter(|e| e.0 == v).map(|e| e.1));
        }
        false
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}", self.family, self.rank)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_types(max_rank: usize) -> Vec<DynkinType> {
        let mut v: Vec<_> = (1..=max_rank).map(|n| DynkinType::a(n).unwrap()).collect();
        v.extend((4..=max_rank).map(|n| DynkinType::d(n).unwrap()));
        v.extend((6..=8).map(|n| DynkinType::e(n).unwrap()));
        v
    }

    #[test]
    fn rejects_invalid_ranks() {
        assert!(DynkinType::a(0).is_err());
        assert!(DynkinType::d(3).is_err());
        assert!(DynkinType::e(5).is_err());
        assert!(DynkinType::e(9).is_err());
    }

    #[test]
    fn coxeter_examples() {
        let a3 = DynkinType::a(3).unwrap().coxeter_data();
        assert_eq!((a3.h, a3.m_delta, a3.h_star), (4, 3, None));
        let e8 = DynkinType::e(8).unwrap().coxeter_data();
        assert_eq!((e8.h, e8.m_delta, e8.h_star), (30, 29, Some(15)));
        let d4 = DynkinType::d(4).unwrap().coxeter_data();
        assert_eq!((d4.h, d4.m_delta, d4.h_star), (6, 5, Some(3)));
        assert_eq!(DynkinType::e(6).unwrap().coxeter_number(), 12);
        assert_eq!(DynkinType::e(7).unwrap().coxeter_data().h_star, Some(9));
        // D_{3m}
        assert_eq!(DynkinType::d(6).unwrap().coxeter_data().h_star, Some(5));
        assert_eq!(DynkinType::d(5).unwrap().coxeter_data().h_star, Some(8));
    }

    #[test]
    fn m_delta_of_a_is_rank() {
        for n in 1..=64 {
            assert_eq!(DynkinType::a(n).unwrap().coxeter_data().m_delta, n as u64);
        }
    }

    #[test]
    fn h_star_table() {
        for d in all_types(12) {
            let c = d.coxeter_data();
            if let Some(hs) = c.h_star {
                if d.family() == Family::D && d.rank() % 2 == 1 {
                    assert_eq!(hs, c.h);
                } else {
                    assert_eq!(2 * hs, c.h);
                }
            }
        }
    }

    #[test]
    fn edge_examples() {
        assert_eq!(DynkinType::a(2).unwrap().tree_edges(), vec![(0, 1)]);
        let d4 = DynkinType::d(4).unwrap();
        let labelled: Vec<_> = d4
            .tree_edges()
            .into_iter()
            .map(|(s, t)| (d4.node_label(s).to_string(), d4.node_label(t).to_string()))
            .collect();
        assert_eq!(
            labelled,
            vec![
                ("1".into(), "2".into()),
                ("2".into(), "3p".into()),
                ("2".into(), "3m".into())
            ]
        );
        let e6 = DynkinType::e(6).unwrap();
        let edges = e6.tree_edges();
        assert_eq!(edges.len(), 5);
        let mut out_degree = [0; 6];
        for (s, _) in &edges {
            out_degree[*s] += 1;
        }
        assert_eq!(out_degree.iter().filter(|&&k| k == 2).count(), 1);
    }

    #[test]
    fn trees_are_connected_and_acyclic() {
        for d in all_types(12) {
            let n = d.rank();
            let edges = d.tree_edges();
            assert_eq!(edges.len(), n - 1);
            // union-find style connectivity
            let mut comp: Vec<usize> = (0..n).collect();
            for &(s, t) in &edges {
                assert!(s < t, "indices must be topologically sorted");
                let (cs, ct) = (comp[s], comp[t]);
                assert_ne!(cs, ct, "cycle in {d}");
                for c in comp.iter_mut() {
                    if *c == ct {
                        *c = cs;
                    }
                }
                assert_eq!(d.offset(t), d.offset(s) + 1);
            }
            assert!(comp.iter().all(|&c| c == comp[0]));
        }
    }

    #[test]
    fn labels_are_unique_and_parse_back() {
        for d in all_types(10) {
            let mut seen = std::collections::HashSet::new();
            for v in 0..d.rank() {
                let label = d.node_label(v);
                assert!(seen.insert(label));
                assert_eq!(d.parse_node(&label.to_string()), Some(v));
                assert_eq!(label.sign.is_some(), d.is_exceptional(v));
            }
        }
        let e8 = DynkinType::e(8).unwrap();
        let labels: Vec<_> = (0..8).map(|v| e8.node_label(v).label).collect();
        assert_eq!(labels, vec![8, 7, 1, 2, 3, 5, 6, 4]);
    }

    #[test]
    fn involutions_preserve_edges_up_to_orientation() {
        for d in all_types(10) {
            if !d.has_involution() {
                continue;
            }
            let edges = d.tree_edges();
            for &(s, t) in &edges {
                let (a, b) = (d.involution(s).unwrap(), d.involution(t).unwrap());
                assert!(edges.contains(&(a, b)) || edges.contains(&(b, a)));
            }
            for v in 0..d.rank() {
                assert_eq!(d.involution(d.involution(v).unwrap()), Some(v));
            }
        }
        assert!(!DynkinType::e(7).unwrap().has_involution());
        assert!(!DynkinType::a(1).unwrap().has_involution());
    }
}
