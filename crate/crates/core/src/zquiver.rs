//! The repetitive quiver `ZΔ`, its automorphisms and the `(i, j)` charts.
//!
//! Vertices are `(t, v)` with `t ∈ Z` and `v` a tree node. For every oriented
//! tree edge `v → w` there are arrows `(t, v) → (t, w)` and `(t, w) → (t+1, v)`;
//! the mesh ending at `(t+1, v)` starts at `(t, v)`.
//!
//! Automorphisms are words `(half_units, flip)`: move right by `half_units`
//! half units and, if `flip` is set, apply the diagram involution. Half units
//! are needed because the suspension of `ZA_n` with `n` even is a reflection
//! followed by a half-integral shift. The group of words is abelian, so a
//! word has a single normal form.

use std::fmt;

use crate::dynkin::{DynkinType, Family, Sign};
use crate::error::{Result, StabError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ZVertex {
    pub t: i64,
    pub node: usize,
}

impl ZVertex {
    pub fn new(t: i64, node: usize) -> Self {
        ZVertex { t, node }
    }

    /// Horizontal position in half units.
    pub fn position(&self, d: DynkinType) -> i64 {
        2 * self.t + d.offset(self.node)
    }

    pub fn display(&self, d: DynkinType) -> String {
        format!("{}:{}", self.t, d.node_label(self.node))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct QuiverAutomorphism {
    pub half_units: i64,
    pub flip: bool,
}

impl QuiverAutomorphism {
    pub const IDENTITY: QuiverAutomorphism = QuiverAutomorphism {
        half_units: 0,
        flip: false,
    };

    pub fn new(half_units: i64, flip: bool) -> Self {
        QuiverAutomorphism { half_units, flip }
    }

    /// `τ`: one unit to the left.
    pub fn tau() -> Self {
        Self::new(-2, false)
    }

    pub fn tau_inv() -> Self {
        Self::new(2, false)
    }

    pub fn shift_units(units: i64) -> Self {
        Self::new(2 * units, false)
    }

    pub fn compose(self, other: Self) -> Self {
        Self::new(self.half_units + other.half_units, self.flip ^ other.flip)
    }

    pub fn inverse(self) -> Self {
        Self::new(-self.half_units, self.flip)
    }

    pub fn pow(self, k: i64) -> Self {
        Self::new(self.half_units * k, self.flip && k.rem_euclid(2) == 1)
    }

    /// Suspension of the derived category: `h` half units right, composed
    /// with the involution when the Nakayama permutation is non-trivial.
    pub fn sigma(d: DynkinType) -> Self {
        Self::new(d.coxeter_number() as i64, d.suspension_flips())
    }

    pub fn omega(d: DynkinType) -> Self {
        Self::sigma(d).inverse()
    }

    /// Serre functor `τΣ`.
    pub fn serre(d: DynkinType) -> Self {
        Self::tau().compose(Self::sigma(d))
    }

    /// The pure reflection `θ`.
    pub fn theta(d: DynkinType) -> Result<Self> {
        let w = Self::new(0, true);
        if d.family() == Family::A && d.rank() == 1 {
            return Ok(Self::IDENTITY);
        }
        if d.has_involution() && d.flip_parity() == Some(0) {
            Ok(w)
        } else {
            Err(StabError::NoInvolution(d.to_string()))
        }
    }

    pub fn is_valid_for(&self, d: DynkinType) -> bool {
        if self.flip {
            match d.flip_parity() {
                Some(par) => (self.half_units - par).rem_euclid(2) == 0,
                None => false,
            }
        } else {
            self.half_units.rem_euclid(2) == 0
        }
    }

    pub fn apply(&self, d: DynkinType, v: ZVertex) -> Result<ZVertex> {
        if !self.is_valid_for(d) {
            return Err(StabError::IllFormedWord {
                dynkin: d.to_string(),
                half_units: self.half_units,
                flip: self.flip,
            });
        }
        Ok(self.apply_unchecked(d, v))
    }

    /// Caller guarantees `is_valid_for(d)`.
    pub(crate) fn apply_unchecked(&self, d: DynkinType, v: ZVertex) -> ZVertex {
        let p = v.position(d) + self.half_units;
        let node = if self.flip {
            d.involution(v.node).expect("validated word")
        } else {
            v.node
        };
        ZVertex::new((p - d.offset(node)).div_euclid(2), node)
    }
}

impl fmt::Display for QuiverAutomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "shift {}/2", self.half_units)?;
        if self.flip {
            write!(f, " + flip")?;
        }
        Ok(())
    }
}

pub fn tau(v: ZVertex) -> ZVertex {
    ZVertex::new(v.t - 1, v.node)
}

pub fn tau_inv(v: ZVertex) -> ZVertex {
    ZVertex::new(v.t + 1, v.node)
}

pub fn theta(d: DynkinType, v: ZVertex) -> Result<ZVertex> {
    QuiverAutomorphism::theta(d)?.apply(d, v)
}

pub fn sigma(d: DynkinType, v: ZVertex) -> ZVertex {
    QuiverAutomorphism::sigma(d).apply_unchecked(d, v)
}

pub fn omega(d: DynkinType, v: ZVertex) -> ZVertex {
    QuiverAutomorphism::omega(d).apply_unchecked(d, v)
}

/// Successors of a vertex in `ZΔ`.
pub fn successors(d: DynkinType, v: ZVertex) -> Vec<ZVertex> {
    let mut out = Vec::new();
    for (s, t) in d.tree_edges() {
        if s == v.node {
            out.push(ZVertex::new(v.t, t));
        }
        if t == v.node {
            out.push(ZVertex::new(v.t + 1, s));
        }
    }
    out
}

/// Predecessors of a vertex in `ZΔ`; these are the middle terms of the mesh ending there.
pub fn predecessors(d: DynkinType, v: ZVertex) -> Vec<ZVertex> {
    let mut out = Vec::new();
    for (s, t) in d.tree_edges() {
        if t == v.node {
            out.push(ZVertex::new(v.t, s));
        }
        if s == v.node {
            out.push(ZVertex::new(v.t - 1, t));
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteQuiver {
    pub vertices: Vec<ZVertex>,
    pub arrows: Vec<(ZVertex, ZVertex)>,
}

pub fn materialize_window(d: DynkinType, t_min: i64, t_max: i64) -> FiniteQuiver {
    let mut vertices = Vec::new();
    let mut arrows = Vec::new();
    for t in t_min..=t_max {
        for node in 0..d.rank() {
            let v = ZVertex::new(t, node);
            vertices.push(v);
            arrows.extend(
                successors(d, v)
                    .into_iter()
                    .filter(|w| w.t <= t_max)
                    .map(|w| (v, w)),
            );
        }
    }
    arrows.sort();
    FiniteQuiver { vertices, arrows }
}

/// Chart of `ZA_n`: `(i, j)` with `i + 2 ≤ j ≤ i + n + 1`; `(i, i+2)` is the bottom row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChartA {
    pub i: i64,
    pub j: i64,
}

impl ChartA {
    pub fn new(n: usize, i: i64, j: i64) -> Result<Self> {
        if i + 2 <= j && j <= i + n as i64 + 1 {
            Ok(ChartA { i, j })
        } else {
            Err(StabError::OutOfChart(format!("({i},{j}) for A_{n}")))
        }
    }

    pub fn from_vertex(d: DynkinType, v: ZVertex) -> Result<Self> {
        if d.family() != Family::A {
            return Err(StabError::UnsupportedFamily(d.family()));
        }
        Ok(ChartA {
            i: v.t,
            j: v.t + v.node as i64 + 2,
        })
    }

    pub fn to_vertex(&self, d: DynkinType) -> Result<ZVertex> {
        if d.family() != Family::A {
            return Err(StabError::UnsupportedFamily(d.family()));
        }
        ChartA::new(d.rank(), self.i, self.j)?;
        Ok(ZVertex::new(self.i, (self.j - self.i - 2) as usize))
    }
}

impl fmt::Display for ChartA {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

/// Chart of `ZD_n`: `(i, j)` with `i + 2 ≤ j ≤ i + n - 1`, or `(i, i+n)±`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChartD {
    pub i: i64,
    pub j: i64,
    pub sign: Option<Sign>,
}

impl ChartD {
    pub fn new(n: usize, i: i64, j: i64, sign: Option<Sign>) -> Result<Self> {
        let n = n as i64;
        let ok = match sign {
            None => i + 2 <= j && j < i + n,
            Some(_) => j == i + n,
        };
        if ok {
            Ok(ChartD { i, j, sign })
        } else {
            Err(StabError::OutOfChart(format!(
                "({i},{j},{sign:?}) for D_{n}"
            )))
        }
    }

    pub fn is_exceptional(&self) -> bool {
        self.sign.is_some()
    }

    pub fn from_vertex(d: DynkinType, v: ZVertex) -> Result<Self> {
        if d.family() != Family::D {
            return Err(StabError::UnsupportedFamily(d.family()));
        }
        let n = d.rank() as i64;
        Ok(match d.node_label(v.node).sign {
            Some(s) => ChartD {
                i: v.t,
                j: v.t + n,
                sign: Some(s),
            },
            None => ChartD {
                i: v.t,
                j: v.t + v.node as i64 + 2,
                sign: None,
            },
        })
    }

    pub fn to_vertex(&self, d: DynkinType) -> Result<ZVertex> {
        if d.family() != Family::D {
            return Err(StabError::UnsupportedFamily(d.family()));
        }
        let n = d.rank();
        ChartD::new(n, self.i, self.j, self.sign)?;
        let node = match self.sign {
            Some(Sign::Plus) => n - 2,
            Some(Sign::Minus) => n - 1,
            None => (self.j - self.i - 2) as usize,
        };
        Ok(ZVertex::new(self.i, node))
    }
}

impl fmt::Display for ChartD {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign {
            None => write!(f, "({},{})", self.i, self.j),
            Some(Sign::Plus) => write!(f, "({},{},+)", self.i, self.j),
            Some(Sign::Minus) => write!(f, "({},{},-)", self.i, self.j),
        }
    }
}
