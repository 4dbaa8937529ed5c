//! Slices of stable quivers and the hypotheses of the Keller-Reiten
//! recognition theorem: Calabi-Yau dimension `u+1`, `u`-cluster tilting,
//! hereditary endomorphism ring and vanishing negative self-extensions.
//!
//! Projective summands are invisible in the stable category and are left out,
//! so a "tilting object" here is a set of stable vertices.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::calabi_yau::{applicable_formulas, cy_brute, CyFormulaResult};
use crate::dynkin::{DynkinType, Family};
use crate::error::{Result, StabError};
use crate::mesh_hom::{forbidden_region, hom_dim_quotient};
use crate::parallel::{self, Execution};
use crate::stable_quiver::StableQuiver;
use crate::zquiver::{QuiverAutomorphism, ZVertex};

/// One vertex per tree node, all in the same column, ordered by node index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Slice {
    pub column: i64,
    pub members: Vec<ZVertex>,
}

impl Slice {
    fn contains(&self, q: &StableQuiver, v: ZVertex) -> bool {
        let v = q.canonical(v);
        self.members.iter().any(|&m| q.canonical(m) == v)
    }
}

pub fn standard_slice(q: &StableQuiver, column: i64) -> Result<Slice> {
    let limit = (q.group().half_units() + 1) / 2;
    if !(0..limit).contains(&column) {
        return Err(StabError::ColumnOutOfRange { column, limit });
    }
    let members = (0..q.dynkin().rank())
        .map(|v| ZVertex::new(column, v))
        .collect();
    Ok(Slice { column, members })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IyamaOutcome {
    pub ok: bool,
    /// A vertex of `M \ S` missed by the union of regions.
    pub uncovered: Option<ZVertex>,
    /// A vertex covered by the union but not in `M \ S`.
    pub overcovered: Option<ZVertex>,
}

/// Compares `M \ S` with `⋃_{x ∈ S, 0 < i ≤ u} H⁺(τ⁻¹ Σ^{i-1} x)` in the quotient.
pub fn iyama_check(q: &StableQuiver, s: &Slice, u: u64) -> Result<IyamaOutcome> {
    let d = q.dynkin();
    if d.family() == Family::E {
        return Err(StabError::UnsupportedFamily(Family::E));
    }
    let in_s: BTreeSet<ZVertex> = s.members.iter().map(|&x| q.canonical(x)).collect();
    let target: BTreeSet<ZVertex> = q
        .vertices()
        .iter()
        .copied()
        .filter(|v| !in_s.contains(v))
        .collect();
    let sigma = QuiverAutomorphism::sigma(d);
    let mut covered = BTreeSet::new();
    for &x in &s.members {
        for i in 1..=u {
            let w = QuiverAutomorphism::tau_inv().compose(sigma.pow(i as i64 - 1));
            for z in forbidden_region(d, w.apply_unchecked(d, x))? {
                covered.insert(q.canonical(z));
            }
        }
    }
    let uncovered = target.difference(&covered).next().copied();
    let overcovered = covered.difference(&target).next().copied();
    Ok(IyamaOutcome {
        ok: uncovered.is_none() && overcovered.is_none(),
        uncovered,
        overcovered,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrthogonalityOutcome {
    pub ok: bool,
    pub witness: Option<ZVertex>,
}

fn hom_from_slice(q: &StableQuiver, s: &Slice, t: ZVertex) -> u32 {
    s.members.iter().map(|&x| hom_dim_quotient(q, x, t)).sum()
}

fn hom_to_slice(q: &StableQuiver, t: ZVertex, s: &[ZVertex]) -> u32 {
    s.iter().map(|&x| hom_dim_quotient(q, t, x)).sum()
}

/// Checks both `Hom(X, Σⁱt) = 0 ∀i ∈ [1,u] ⇔ t ∈ add X` and
/// `Hom(t, ΣⁱX) = 0 ∀i ∈ [1,u] ⇔ t ∈ add X` over every vertex.
pub fn hom_orthogonality_check(
    q: &StableQuiver,
    s: &Slice,
    u: u64,
    exec: Execution,
) -> OrthogonalityOutcome {
    let d = q.dynkin();
    let sigma = QuiverAutomorphism::sigma(d);
    let shifted: Vec<Vec<ZVertex>> = (1..=u)
        .map(|i| {
            s.members
                .iter()
                .map(|&x| sigma.pow(i as i64).apply_unchecked(d, x))
                .collect()
        })
        .collect();
    let witness = parallel::find_first(exec, q.vertices(), |&t| {
        let member = s.contains(q, t);
        let left =
            (1..=u).all(|i| hom_from_slice(q, s, sigma.pow(i as i64).apply_unchecked(d, t)) == 0);
        let right = shifted.iter().all(|sx| hom_to_slice(q, t, sx) == 0);
        (left != member || right != member).then_some(t)
    });
    OrthogonalityOutcome {
        ok: witness.is_none(),
        witness,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NegativeExtOutcome {
    pub vanishing: bool,
    /// `(x, y, i)` with `Hom(x, Σ⁻ⁱy) ≠ 0`.
    pub witness: Option<(ZVertex, ZVertex, u64)>,
    /// Whether `Hom(X, Σ⁻ᵘX) ≠ 0`; not meaningful for a single vertex.
    pub boundary_nonzero: Option<bool>,
}

impl NegativeExtOutcome {
    pub fn ok(&self) -> bool {
        self.vanishing && self.boundary_nonzero != Some(false)
    }
}

pub fn negative_ext_check(q: &StableQuiver, s: &Slice, u: u64) -> NegativeExtOutcome {
    let d = q.dynkin();
    let omega = QuiverAutomorphism::omega(d);
    let total = |i: u64| -> Option<(ZVertex, ZVertex)> {
        let w = omega.pow(i as i64);
        s.members.iter().find_map(|&x| {
            s.members
                .iter()
                .find(|&&y| hom_dim_quotient(q, x, w.apply_unchecked(d, y)) > 0)
                .map(|&y| (x, y))
        })
    };
    let witness = (1..u).find_map(|i| total(i).map(|(x, y)| (x, y, i)));
    let boundary_nonzero = (d.rank() > 1).then(|| total(u).is_some());
    NegativeExtOutcome {
        vanishing: witness.is_none(),
        witness,
        boundary_nonzero,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EndoOutcome {
    pub ok: bool,
    pub matrix: Vec<Vec<u32>>,
}

/// `E[i][j] = dim Hom(x_i, x_j)` must be the path indicator of the orientation.
pub fn endo_quiver_check(q: &StableQuiver, s: &Slice) -> EndoOutcome {
    let d = q.dynkin();
    let matrix: Vec<Vec<u32>> = s
        .members
        .iter()
        .map(|&x| {
            s.members
                .iter()
                .map(|&y| hom_dim_quotient(q, x, y))
                .collect()
        })
        .collect();
    let ok = s.members.iter().enumerate().all(|(i, x)| {
        s.members
            .iter()
            .enumerate()
            .all(|(j, y)| matrix[i][j] == u32::from(d.path_exists(x.node, y.node)))
    });
    EndoOutcome { ok, matrix }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KellerReitenReport {
    pub cy_ok: bool,
    pub cy_value: u64,
    pub cy_formulas: Vec<CyFormulaResult>,
    pub tilting_ok: bool,
    pub iyama_ok: Option<bool>,
    pub endo_ok: bool,
    pub negext_ok: bool,
    pub boundary_nonzero: Option<bool>,
    pub witness: Option<String>,
}

impl KellerReitenReport {
    pub fn all_green(&self) -> bool {
        self.cy_ok && self.tilting_ok && self.endo_ok && self.negext_ok
    }
}

pub fn keller_reiten_check(
    q: &StableQuiver,
    u: u64,
    expected: DynkinType,
    exec: Execution,
) -> Result<KellerReitenReport> {
    let d = q.dynkin();
    if d != expected {
        return Err(StabError::TypeMismatch {
            expected: expected.to_string(),
            found: d.to_string(),
        });
    }
    let cy_value = cy_brute(q)?;
    let cy_formulas = applicable_formulas(q);
    let cy_ok = cy_value == u + 1 && cy_formulas.iter().any(|f| f.d == u + 1);

    let s = standard_slice(q, 0)?;
    let orth = hom_orthogonality_check(q, &s, u, exec);
    let iyama = match d.family() {
        Family::E => None,
        _ => Some(iyama_check(q, &s, u)?),
    };
    let iyama_ok = iyama.as_ref().map(|o| o.ok);
    let tilting_ok = orth.ok && iyama_ok.unwrap_or(true);
    let endo = endo_quiver_check(q, &s);
    let neg = negative_ext_check(q, &s, u);

    let witness = if !cy_ok {
        Some(format!(
            "Calabi-Yau dimension {cy_value}, expected {}",
            u + 1
        ))
    } else if let Some(t) = orth.witness {
        Some(format!("orthogonality fails at {}", t.display(d)))
    } else if let Some(o) = iyama.as_ref().filter(|o| !o.ok) {
        Some(format!(
            "region union differs at {:?}",
            o.uncovered.or(o.overcovered)
        ))
    } else if !endo.ok {
        Some(format!("endomorphism matrix {:?}", endo.matrix))
    } else if let Some((x, y, i)) = neg.witness {
        Some(format!(
            "Hom({}, Σ^-{i} {}) ≠ 0",
            x.display(d),
            y.display(d)
        ))
    } else if neg.boundary_nonzero == Some(false) {
        Some(format!("Hom(X, Σ^-{u} X) = 0"))
    } else {
        None
    };

    Ok(KellerReitenReport {
        cy_ok,
        cy_value,
        cy_formulas,
        tilting_ok,
        iyama_ok,
        endo_ok: endo.ok,
        negext_ok: neg.ok(),
        boundary_nonzero: neg.boundary_nonzero,
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stable_quiver::{quotient, stable_quiver_of, AdmissibleGroup};
    use crate::zquiver::{ChartA, ChartD};

    fn q(label: &str) -> StableQuiver {
        stable_quiver_of(&label.parse().unwrap()).unwrap()
    }

    #[test]
    fn slices() {
        let a = quotient(DynkinType::a(3).unwrap(), AdmissibleGroup::new(5, false)).unwrap();
        let s = standard_slice(&a, 0).unwrap();
        let charts: Vec<_> = s
            .members
            .iter()
            .map(|&v| ChartA::from_vertex(a.dynkin(), v).unwrap())
            .collect();
        assert_eq!(
            charts,
            vec![
                ChartA { i: 0, j: 2 },
                ChartA { i: 0, j: 3 },
                ChartA { i: 0, j: 4 }
            ]
        );
        assert!(standard_slice(&a, 5).is_err());

        let d = quotient(DynkinType::d(5).unwrap(), AdmissibleGroup::new(7, false)).unwrap();
        let s = standard_slice(&d, 0).unwrap();
        let charts: Vec<String> = s
            .members
            .iter()
            .map(|&v| ChartD::from_vertex(d.dynkin(), v).unwrap().to_string())
            .collect();
        assert_eq!(
            charts,
            vec!["(0,2)", "(0,3)", "(0,4)", "(0,5,+)", "(0,5,-)"]
        );

        let e = quotient(DynkinType::e(6).unwrap(), AdmissibleGroup::new(13, false)).unwrap();
        assert_eq!(standard_slice(&e, 0).unwrap().members.len(), 6);
    }

    #[test]
    fn base_instances() {
        let exec = Execution::Sequential;
        let b = q("B(4,3)");
        let r = keller_reiten_check(&b, 2, DynkinType::a(2).unwrap(), exec).unwrap();
        assert!(r.all_green(), "{r:?}");
        let m = q("M(1,1)");
        let r = keller_reiten_check(&m, 1, DynkinType::a(3).unwrap(), exec).unwrap();
        assert!(r.all_green(), "{r:?}");
        assert_eq!(r.cy_value, 2);
    }

    #[test]
    fn wrong_u_is_detected() {
        let b = q("B(4,3)");
        let s = standard_slice(&b, 0).unwrap();
        assert!(!iyama_check(&b, &s, 3).unwrap().ok);
        assert!(!hom_orthogonality_check(&b, &s, 3, Execution::Sequential).ok);
        assert!(!hom_orthogonality_check(&b, &s, 1, Execution::Sequential).ok);
        assert!(iyama_check(&b, &s, 2).unwrap().ok);
    }

    #[test]
    fn counterexample_is_red_on_cy() {
        let d9 = q("(D,9,5/3,1)");
        let r =
            keller_reiten_check(&d9, 3, DynkinType::d(9).unwrap(), Execution::default()).unwrap();
        assert!(!r.cy_ok);
        assert_eq!(r.cy_value, 29);
    }

    #[test]
    fn endo_matrix_is_anchor_invariant() {
        let d = q("(D,5,3,1)");
        let m0 = endo_quiver_check(&d, &standard_slice(&d, 0).unwrap());
        assert!(m0.ok);
        for c in 1..5 {
            assert_eq!(
                endo_quiver_check(&d, &standard_slice(&d, c).unwrap()).matrix,
                m0.matrix
            );
        }
        // the exceptional pair is mutually orthogonal
        assert_eq!((m0.matrix[3][4], m0.matrix[4][3]), (0, 0));
    }

    #[test]
    fn mobius_long_composition() {
        let m = q("M(2,3)");
        let e = endo_quiver_check(&m, &standard_slice(&m, 0).unwrap());
        assert!(e.ok);
        assert_eq!(e.matrix[0][4], 1);
    }

    #[test]
    fn single_vertex_boundary() {
        let a1 = q("B(5,2)");
        let s = standard_slice(&a1, 0).unwrap();
        let neg = negative_ext_check(&a1, &s, 4);
        assert!(neg.vanishing && neg.boundary_nonzero.is_none());
        assert!(negative_ext_check(&a1, &s, 1).vanishing);
    }

    #[test]
    fn e_has_no_closed_form() {
        let e = q("(E,6,5,2)");
        let s = standard_slice(&e, 0).unwrap();
        assert!(matches!(
            iyama_check(&e, &s, 9),
            Err(StabError::UnsupportedFamily(Family::E))
        ));
    }

    #[test]
    fn type_mismatch() {
        let b = q("B(4,3)");
        assert!(
            keller_reiten_check(&b, 2, DynkinType::a(3).unwrap(), Execution::Sequential).is_err()
        );
    }
}
