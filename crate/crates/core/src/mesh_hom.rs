//! Hom dimensions in mesh categories.
//!
//! `dim Hom(x, -)` on `ZΔ` is computed by the clipped mesh recursion: the
//! source gets 1, and every other vertex `y` gets
//! `max(0, Σ dim(middle terms of the mesh ending at y) - dim(τy))`.
//! On a quotient the dimension is the sum over all lifts of the target.
//! Closed-form supports `H⁺(x)` are provided for types `A` and `D`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use crate::dynkin::{DynkinType, Family, Sign};
use crate::error::{Result, StabError};
use crate::parallel::{self, Execution};
use crate::stable_quiver::StableQuiver;
use crate::zquiver::{
    materialize_window, predecessors, ChartA, ChartD, QuiverAutomorphism, ZVertex,
};

/// `dims[source][column][node] = dim Hom((0, source), (column, node))`.
#[derive(Debug)]
pub struct HammockTable {
    dims: Vec<Vec<Vec<u32>>>,
}

impl HammockTable {
    fn build(d: DynkinType) -> Self {
        let n = d.rank();
        let dims = (0..n)
            .map(|source| {
                let mut cols: Vec<Vec<u32>> = Vec::new();
                let at = |cols: &Vec<Vec<u32>>, v: ZVertex| -> i64 {
                    if v.t < 0 {
                        0
                    } else {
                        cols.get(v.t as usize).map_or(0, |c| c[v.node] as i64)
                    }
                };
                for t in 0.. {
                    cols.push(vec![0; n]);
                    for node in 0..n {
                        let y = ZVertex::new(t, node);
                        let val = if t == 0 && node == source {
                            1
                        } else {
                            let mid: i64 =
                                predecessors(d, y).into_iter().map(|m| at(&cols, m)).sum();
                            (mid - at(&cols, ZVertex::new(t - 1, node))).max(0)
                        };
                        cols[t as usize][node] = val as u32;
                    }
                    if cols[t as usize].iter().all(|&x| x == 0) {
                        cols.pop();
                        break;
                    }
                }
                cols
            })
            .collect();
        HammockTable { dims }
    }

    pub fn width(&self, source: usize) -> usize {
        self.dims[source].len()
    }

    pub fn get(&self, source: usize, column: i64, node: usize) -> u32 {
        if column < 0 {
            return 0;
        }
        self.dims[source]
            .get(column as usize)
            .map_or(0, |c| c[node])
    }
}

fn cache() -> &'static RwLock<HashMap<DynkinType, Arc<HammockTable>>> {
    static CACHE: OnceLock<RwLock<HashMap<DynkinType, Arc<HammockTable>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Memoized hammock table; translation invariance means one per tree class.
pub fn hammock_table(d: DynkinType) -> Arc<HammockTable> {
    if let Some(t) = cache().read().unwrap().get(&d) {
        return t.clone();
    }
    let table = Arc::new(HammockTable::build(d));
    cache().write().unwrap().entry(d).or_insert(table).clone()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hammock {
    pub source: ZVertex,
    pub dims: BTreeMap<ZVertex, u32>,
}

impl Hammock {
    pub fn get(&self, y: ZVertex) -> u32 {
        self.dims.get(&y).copied().unwrap_or(0)
    }

    pub fn support(&self) -> impl Iterator<Item = ZVertex> + '_ {
        self.dims.keys().copied()
    }
}

pub fn hammock(d: DynkinType, x: ZVertex) -> Hammock {
    let table = hammock_table(d);
    let mut dims = BTreeMap::new();
    for c in 0..table.width(x.node) {
        for node in 0..d.rank() {
            let v = table.get(x.node, c as i64, node);
            if v > 0 {
                dims.insert(ZVertex::new(x.t + c as i64, node), v);
            }
        }
    }
    Hammock { source: x, dims }
}

pub fn hom_dim_z(d: DynkinType, x: ZVertex, y: ZVertex) -> u32 {
    hammock_table(d).get(x.node, y.t - x.t, y.node)
}

/// Covering sum over the lifts of `y` that can meet the hammock of `x`.
pub fn hom_dim_quotient(q: &StableQuiver, x: ZVertex, y: ZVertex) -> u32 {
    let d = q.dynkin();
    let table = hammock_table(d);
    let lo = 2 * x.t - 2;
    let hi = 2 * (x.t + table.width(x.node) as i64) + d.rank() as i64 + 2;
    q.lifts_between(y, lo, hi)
        .map(|w| table.get(x.node, w.t - x.t, w.node))
        .sum()
}

/// `H⁺(x)` in type `A`: the rectangle with corners `(i,j)`, `(i,i+n+1)`,
/// `(j-2,i+n+1)` and `(j-2,j)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RegionA {
    pub n: usize,
    pub anchor: ChartA,
}

impl RegionA {
    pub fn corners(&self) -> [ChartA; 4] {
        let (i, j, n) = (self.anchor.i, self.anchor.j, self.n as i64);
        [
            ChartA { i, j },
            ChartA { i, j: i + n + 1 },
            ChartA {
                i: j - 2,
                j: i + n + 1,
            },
            ChartA { i: j - 2, j },
        ]
    }

    pub fn contains(&self, y: &ChartA) -> bool {
        let (i, j, n) = (self.anchor.i, self.anchor.j, self.n as i64);
        (i..=j - 2).contains(&y.i) && (j..=i + n + 1).contains(&y.j)
    }

    pub fn members(&self) -> Vec<ChartA> {
        let (i, j, n) = (self.anchor.i, self.anchor.j, self.n as i64);
        (i..=j - 2)
            .flat_map(|a| (j..=i + n + 1).map(move |b| ChartA { i: a, j: b }))
            .collect()
    }
}

pub fn region_a(n: usize, anchor: ChartA) -> Result<RegionA> {
    ChartA::new(n, anchor.i, anchor.j)?;
    Ok(RegionA { n, anchor })
}

/// `H⁺(x)` in type `D`. For an exceptional anchor only every other
/// exceptional vertex of the top line belongs to the region, with
/// alternating signs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RegionD {
    pub n: usize,
    pub anchor: ChartD,
}

impl RegionD {
    pub fn contains(&self, y: &ChartD) -> bool {
        let n = self.n as i64;
        let (i, j) = (self.anchor.i, self.anchor.j);
        let (a, b) = (y.i, y.j);
        match (self.anchor.sign, y.sign) {
            (None, Some(_)) => (i..=j - 2).contains(&a),
            (None, None) => {
                ((i..=j - 2).contains(&a) && b >= j)
                    || ((j - 2..=i + n - 2).contains(&a) && (i + n..=j + n - 2).contains(&b))
            }
            (Some(_), None) => (i..=i + n - 2).contains(&a) && b >= i + n,
            (Some(s), Some(t)) => {
                let expected = if (a - i).rem_euclid(2) == 0 {
                    s
                } else {
                    s.flipped()
                };
                (i..=i + n - 2).contains(&a) && t == expected
            }
        }
    }

    pub fn members(&self) -> Vec<ChartD> {
        let n = self.n as i64;
        let i = self.anchor.i;
        (i..=i + n - 2)
            .flat_map(|a| {
                (a + 2..=a + n - 1)
                    .map(move |b| ChartD {
                        i: a,
                        j: b,
                        sign: None,
                    })
                    .chain([Sign::Plus, Sign::Minus].map(|s| ChartD {
                        i: a,
                        j: a + n,
                        sign: Some(s),
                    }))
            })
            .filter(|y| self.contains(y))
            .collect()
    }
}

pub fn region_d(n: usize, anchor: ChartD) -> Result<RegionD> {
    ChartD::new(n, anchor.i, anchor.j, anchor.sign)?;
    Ok(RegionD { n, anchor })
}

/// Closed-form `H⁺(x)` as vertices of `ZΔ`, for types `A` and `D`.
pub fn forbidden_region(d: DynkinType, x: ZVertex) -> Result<Vec<ZVertex>> {
    match d.family() {
        Family::A => {
            let r = region_a(d.rank(), ChartA::from_vertex(d, x)?)?;
            r.members().iter().map(|c| c.to_vertex(d)).collect()
        }
        Family::D => {
            let r = region_d(d.rank(), ChartD::from_vertex(d, x)?)?;
            r.members().iter().map(|c| c.to_vertex(d)).collect()
        }
        Family::E => Err(StabError::UnsupportedFamily(Family::E)),
    }
}

fn in_region(d: DynkinType, x: ZVertex, y: ZVertex) -> Result<bool> {
    Ok(match d.family() {
        Family::A => {
            region_a(d.rank(), ChartA::from_vertex(d, x)?)?.contains(&ChartA::from_vertex(d, y)?)
        }
        Family::D => {
            region_d(d.rank(), ChartD::from_vertex(d, x)?)?.contains(&ChartD::from_vertex(d, y)?)
        }
        Family::E => return Err(StabError::UnsupportedFamily(Family::E)),
    })
}

/// Orbit vertices `t` with `Hom(x, t) ≠ 0` for some `x ∈ X`.
pub fn slice_hom_support(q: &StableQuiver, xs: &[ZVertex]) -> BTreeSet<ZVertex> {
    let d = q.dynkin();
    xs.iter()
        .flat_map(|&x| hammock(d, x).dims.into_keys())
        .map(|y| q.canonical(y))
        .collect()
}

/// Pairs `(x, y)` over a `3h`-column window where hammock positivity and
/// membership in the closed-form region disagree.
pub fn region_discrepancies(d: DynkinType, exec: Execution) -> Result<Vec<(ZVertex, ZVertex)>> {
    let h = d.coxeter_number() as i64;
    let sources = materialize_window(d, 0, 3 * h - 1).vertices;
    let found = parallel::map(exec, &sources, |&x| -> Result<Vec<(ZVertex, ZVertex)>> {
        let mut bad = Vec::new();
        for y in materialize_window(d, x.t - 2, x.t + h + 3).vertices {
            if (hom_dim_z(d, x, y) > 0) != in_region(d, x, y)? {
                bad.push((x, y));
            }
        }
        Ok(bad)
    });
    let mut out = Vec::new();
    for r in found {
        out.extend(r?);
    }
    Ok(out)
}

/// Pairs where `dim Hom(x, y) ≠ dim Hom(y, τΣx)`.
pub fn serre_discrepancies(d: DynkinType, exec: Execution) -> Vec<(ZVertex, ZVertex)> {
    let w = d.coxeter_number() as i64 + 2;
    let serre = QuiverAutomorphism::serre(d);
    let sources = materialize_window(d, 0, w - 1).vertices;
    let targets = materialize_window(d, -w, 2 * w).vertices;
    parallel::flat_map(exec, &sources, |&x| {
        let sx = serre.apply_unchecked(d, x);
        targets
            .iter()
            .filter(|&&y| hom_dim_z(d, x, y) != hom_dim_z(d, y, sx))
            .map(|&y| (x, y))
            .collect()
    })
}
