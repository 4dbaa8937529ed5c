//! Finite quotients `ZΔ/G` with `G` cyclic, generated by a shift that may be
//! composed with the diagram involution. These model stable AR quivers of
//! selfinjective algebras of finite type and the AR quivers of higher
//! cluster categories.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;

use crate::dynkin::{DynkinType, Family};
use crate::error::{Result, StabError};
use crate::zquiver::{successors, tau, QuiverAutomorphism, ZVertex};

/// Cyclic group generated by one automorphism word. For algebras the word is
/// `flip^e ∘ τ^{-L}`; cluster categories of `A_n` with `n` even and `u` odd
/// need a half-integral shift, so the generator is stored as a raw word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AdmissibleGroup {
    generator: QuiverAutomorphism,
}

impl AdmissibleGroup {
    pub fn new(circumference: u64, flip: bool) -> Self {
        AdmissibleGroup {
            generator: QuiverAutomorphism::new(2 * circumference as i64, flip),
        }
    }

    pub fn from_generator(generator: QuiverAutomorphism) -> Self {
        AdmissibleGroup { generator }
    }

    pub fn generator(&self) -> QuiverAutomorphism {
        self.generator
    }

    pub fn flip(&self) -> bool {
        self.generator.flip
    }

    /// Circumference in units, when it is integral.
    pub fn circumference(&self) -> Option<u64> {
        let h = self.generator.half_units;
        (h > 0 && h % 2 == 0).then_some((h / 2) as u64)
    }

    pub fn half_units(&self) -> i64 {
        self.generator.half_units
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StableQuiver {
    dynkin: DynkinType,
    group: AdmissibleGroup,
    vertices: Vec<ZVertex>,
}

pub fn quotient(d: DynkinType, g: AdmissibleGroup) -> Result<StableQuiver> {
    let w = g.generator;
    if w.flip && !w.is_valid_for(d) {
        return Err(StabError::UnsupportedFlip(format!(
            "{d} with shift {}/2",
            w.half_units
        )));
    }
    if !w.is_valid_for(d) {
        return Err(StabError::IllFormedWord {
            dynkin: d.to_string(),
            half_units: w.half_units,
            flip: w.flip,
        });
    }
    let min = if w.flip { 2 } else { 4 };
    if w.half_units < min {
        return Err(StabError::DegenerateQuotient(format!(
            "{d} modulo shift {}/2{}",
            w.half_units,
            if w.flip { " with flip" } else { "" }
        )));
    }
    let mut q = StableQuiver {
        dynkin: d,
        group: g,
        vertices: Vec::new(),
    };
    let span = w.half_units / 2 + d.rank() as i64 + 2;
    let set: BTreeSet<ZVertex> = (0..span)
        .flat_map(|t| (0..d.rank()).map(move |v| ZVertex::new(t, v)))
        .map(|v| q.canonical(v))
        .collect();
    q.vertices = set.into_iter().collect();
    debug_assert_eq!(q.vertices.len() as i64 * 2, d.rank() as i64 * w.half_units);
    Ok(q)
}

pub fn cluster_quiver_of(d: DynkinType, u: u64) -> Result<StableQuiver> {
    let w = QuiverAutomorphism::tau_inv().compose(QuiverAutomorphism::sigma(d).pow(u as i64));
    quotient(d, AdmissibleGroup::from_generator(w))
}

pub fn stable_quiver_of(label: &AlgebraLabel) -> Result<StableQuiver> {
    label.validate()?;
    quotient(label.dynkin()?, label.group())
}

impl StableQuiver {
    pub fn dynkin(&self) -> DynkinType {
        self.dynkin
    }

    pub fn group(&self) -> AdmissibleGroup {
        self.group
    }

    pub fn circumference(&self) -> Option<u64> {
        self.group.circumference()
    }

    pub fn flip(&self) -> bool {
        self.group.flip()
    }

    /// Canonical orbit representatives, sorted.
    pub fn vertices(&self) -> &[ZVertex] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// The lift with least non-negative column, ties broken by node index.
    pub fn canonical(&self, v: ZVertex) -> ZVertex {
        let d = self.dynkin;
        let g = self.group.generator;
        let h = g.half_units;
        let k0 = (-v.position(d)).div_euclid(h) + 1;
        let span = 2 * (d.rank() as i64 / h + 1) + 2;
        (k0 - 1..=k0 + span)
            .map(|k| g.pow(k).apply_unchecked(d, v))
            .filter(|w| w.t >= 0)
            .min()
            .expect("some lift has non-negative column")
    }

    pub fn same_orbit(&self, a: ZVertex, b: ZVertex) -> bool {
        self.canonical(a) == self.canonical(b)
    }

    /// All lifts of `v` whose position lies in `[lo, hi]` half units.
    pub fn lifts_between(
        &self,
        v: ZVertex,
        lo: i64,
        hi: i64,
    ) -> impl Iterator<Item = ZVertex> + '_ {
        let d = self.dynkin;
        let g = self.group.generator;
        let h = g.half_units;
        let p = v.position(d);
        let k_lo = (lo - p).div_euclid(h) + i64::from((lo - p).rem_euclid(h) != 0);
        let k_hi = (hi - p).div_euclid(h);
        (k_lo..=k_hi).map(move |k| g.pow(k).apply_unchecked(d, v))
    }

    pub fn act_on_orbit(&self, w: QuiverAutomorphism, v: ZVertex) -> Result<ZVertex> {
        Ok(self.canonical(w.apply(self.dynkin, v)?))
    }

    /// Arrows between canonical representatives, one per arrow of the quotient.
    pub fn arrows(&self) -> Vec<(ZVertex, ZVertex)> {
        let mut out: Vec<_> = self
            .vertices
            .iter()
            .flat_map(|&v| {
                successors(self.dynkin, v)
                    .into_iter()
                    .map(move |w| (v, self.canonical(w)))
            })
            .collect();
        out.sort();
        out
    }

    /// Number of τ-orbits formed by the exceptional vertices of type `D`.
    pub fn exceptional_tau_orbits(&self) -> usize {
        let mut seen = BTreeSet::new();
        let mut orbits = 0;
        for &v in &self.vertices {
            if !self.dynkin.is_exceptional(v.node) || seen.contains(&v) {
                continue;
            }
            orbits += 1;
            let mut w = v;
            while seen.insert(w) {
                w = self.canonical(tau(w));
            }
        }
        orbits
    }
}

impl fmt::Display for StableQuiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} / <{}>", self.dynkin, self.group.generator)
    }
}

/// Standard selfinjective algebras of finite representation type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AlgebraLabel {
    /// `B(N, n+1)`: Nakayama algebra with `N` simples and Loewy length `n+1`.
    Nakayama { simples: u64, loewy: u64 },
    /// `M(p, s)`: Möbius algebra.
    Mobius { p: u64, s: u64 },
    /// `(D_n, s, 1)`.
    DType1 { n: u64, s: u64 },
    /// `(D_n, s, 2)`.
    DType2 { n: u64, s: u64 },
    /// `(D_{3m}, s/3, 1)`, with `n = 3m`.
    DThird { n: u64, s: u64 },
    /// `(E_n, s, 1)`.
    EType1 { n: u64, s: u64 },
    /// `(E_6, s, 2)`.
    E6Type2 { s: u64 },
}

impl AlgebraLabel {
    pub fn validate(&self) -> Result<()> {
        use AlgebraLabel::*;
        let ok = match *self {
            Nakayama { simples, loewy } => simples >= 1 && loewy >= 2,
            Mobius { p, s } => p >= 1 && s >= 1,
            DType1 { n, s } | DType2 { n, s } => n >= 4 && s >= 1,
            DThird { n, s } => n % 3 == 0 && n >= 6 && s >= 1 && s % 3 != 0,
            EType1 { n, s } => (6..=8).contains(&n) && s >= 1,
            E6Type2 { s } => s >= 1,
        };
        if ok {
            Ok(())
        } else {
            Err(StabError::MalformedLabel(self.to_string()))
        }
    }

    pub fn dynkin(&self) -> Result<DynkinType> {
        use AlgebraLabel::*;
        let (family, rank) = match *self {
            Nakayama { loewy, .. } => (Family::A, loewy.saturating_sub(1)),
            Mobius { p, .. } => (Family::A, 2 * p + 1),
            DType1 { n, .. } | DType2 { n, .. } | DThird { n, .. } => (Family::D, n),
            EType1 { n, .. } => (Family::E, n),
            E6Type2 { .. } => (Family::E, 6),
        };
        DynkinType::new(family, rank as usize)
    }

    pub fn circumference(&self) -> u64 {
        use AlgebraLabel::*;
        match *self {
            Nakayama { simples, .. } => simples,
            Mobius { p, s } => s * (2 * p + 1),
            DType1 { n, s } | DType2 { n, s } => s * (2 * n - 3),
            DThird { n, s } => s * (2 * (n / 3) - 1),
            EType1 { n, s } => {
                let h = match n {
                    6 => 12,
                    7 => 18,
                    _ => 30,
                };
                s * (h - 1)
            }
            E6Type2 { s } => 11 * s,
        }
    }

    pub fn flip(&self) -> bool {
        matches!(
            self,
            AlgebraLabel::Mobius { .. }
                | AlgebraLabel::DType2 { .. }
                | AlgebraLabel::E6Type2 { .. }
        )
    }

    pub fn group(&self) -> AdmissibleGroup {
        AdmissibleGroup::new(self.circumference(), self.flip())
    }

    /// Frequency `f` with `f · m_Δ = L`.
    pub fn frequency(&self) -> Result<Ratio<u64>> {
        let m = self.dynkin()?.coxeter_data().m_delta;
        Ok(Ratio::new(self.circumference(), m))
    }
}

impl fmt::Display for AlgebraLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use AlgebraLabel::*;
        match *self {
            Nakayama { simples, loewy } => write!(f, "B({simples},{loewy})"),
            Mobius { p, s } => write!(f, "M({p},{s})"),
            DType1 { n, s } => write!(f, "(D,{n},{s},1)"),
            DType2 { n, s } => write!(f, "(D,{n},{s},2)"),
            DThird { n, s } => write!(f, "(D,{n},{s}/3,1)"),
            EType1 { n, s } => write!(f, "(E,{n},{s},1)"),
            E6Type2 { s } => write!(f, "(E,6,{s},2)"),
        }
    }
}

impl FromStr for AlgebraLabel {
    type Err = StabError;

    fn from_str(text: &str) -> Result<Self> {
        let bad = || StabError::MalformedLabel(text.to_string());
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let num = |x: &str| x.parse::<u64>().map_err(|_| bad());
        let inner = |prefix: &str| -> Option<Vec<String>> {
            let body = s.strip_prefix(prefix)?.strip_suffix(')')?;
            Some(body.split(',').map(str::to_string).collect())
        };
        let label = if let Some(parts) = inner("B(") {
            match parts.as_slice() {
                [a, b] => AlgebraLabel::Nakayama {
                    simples: num(a)?,
                    loewy: num(b)?,
                },
                _ => return Err(bad()),
            }
        } else if let Some(parts) = inner("M(") {
            match parts.as_slice() {
                [a, b] => AlgebraLabel::Mobius {
                    p: num(a)?,
                    s: num(b)?,
                },
                _ => return Err(bad()),
            }
        } else if let Some(parts) = inner("(") {
            match parts.as_slice() {
                [fam, n, freq, ty] => {
                    let n = num(n)?;
                    match (fam.as_str(), freq.strip_suffix("/3"), ty.as_str()) {
                        ("D", None, "1") => AlgebraLabel::DType1 { n, s: num(freq)? },
                        ("D", None, "2") => AlgebraLabel::DType2 { n, s: num(freq)? },
                        ("D", Some(s), "1") => AlgebraLabel::DThird { n, s: num(s)? },
                        ("E", None, "1") => AlgebraLabel::EType1 { n, s: num(freq)? },
                        ("E", None, "2") if n == 6 => AlgebraLabel::E6Type2 { s: num(freq)? },
                        _ => return Err(bad()),
                    }
                }
                _ => return Err(bad()),
            }
        } else {
            return Err(bad());
        };
        label.validate()?;
        Ok(label)
    }
}
