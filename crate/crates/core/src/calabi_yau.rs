//! Calabi-Yau dimensions: the Dugas congruences, the Möbius `K_{p,s}`
//! formula and a brute-force search over quiver automorphisms.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::dynkin::{DynkinType, Family};
use crate::error::{Result, StabError};
use crate::stable_quiver::StableQuiver;
use crate::zquiver::QuiverAutomorphism;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FormulaId {
    Dugas61_1,
    Dugas61_2,
    Dugas73_1,
    Dugas74_1,
    Mobius,
}

impl fmt::Display for FormulaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyFormulaResult {
    pub formula_id: FormulaId,
    pub d: u64,
    pub r: Option<u64>,
    pub modulus: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MobiusK {
    pub p: u64,
    pub s: u64,
    pub k: u64,
}

/// Inverse of `a` modulo `m`, in `[0, m)`.
pub fn mod_inverse(a: i64, m: u64) -> Result<u64> {
    let mi = m as i64;
    let e = a.rem_euclid(mi).extended_gcd(&mi);
    if e.gcd != 1 {
        return Err(StabError::NotInvertible { a, m });
    }
    Ok(e.x.rem_euclid(mi) as u64)
}

/// `d ≡ 1 - (h*)⁻¹ (mod L)` with `0 < d ≤ L`.
pub fn dugas_61_1(d: DynkinType, modulus: u64) -> Result<CyFormulaResult> {
    let hs = d
        .coxeter_data()
        .h_star
        .ok_or_else(|| StabError::HStarUndefined(d.to_string()))?;
    let inv = mod_inverse(hs as i64, modulus)?;
    let mut res = (1 - inv as i64).rem_euclid(modulus as i64) as u64;
    if res == 0 {
        res = modulus;
    }
    Ok(CyFormulaResult {
        formula_id: FormulaId::Dugas61_1,
        d: res,
        r: None,
        modulus,
    })
}

/// `d = 2r + 1` with `r ≡ -h⁻¹ (mod L)`.
pub fn dugas_61_2(d: DynkinType, modulus: u64) -> Result<CyFormulaResult> {
    let inv = mod_inverse(d.coxeter_number() as i64, modulus)?;
    let r = (-(inv as i64)).rem_euclid(modulus as i64) as u64;
    Ok(CyFormulaResult {
        formula_id: FormulaId::Dugas61_2,
        d: 2 * r + 1,
        r: Some(r),
        modulus,
    })
}

fn even_form(formula_id: FormulaId, num: i64, den: i64, modulus: u64) -> Result<CyFormulaResult> {
    let r = (num * mod_inverse(den, modulus)? as i64).rem_euclid(modulus as i64) as u64;
    if r == 0 {
        return Err(StabError::EmptyResidueRange(modulus));
    }
    Ok(CyFormulaResult {
        formula_id,
        d: 2 * r,
        r: Some(r),
        modulus,
    })
}

/// `d = 2r` with `r ≡ (n-2)(2n-2)⁻¹ (mod L)`, `n` odd.
pub fn dugas_73_1(n: u64, modulus: u64) -> Result<CyFormulaResult> {
    even_form(
        FormulaId::Dugas73_1,
        n as i64 - 2,
        2 * n as i64 - 2,
        modulus,
    )
}

/// `d = 2r` with `r ≡ 5 · 12⁻¹ (mod L)`.
pub fn dugas_74_1(modulus: u64) -> Result<CyFormulaResult> {
    even_form(FormulaId::Dugas74_1, 5, 12, modulus)
}

/// Minimal `K ≥ 1` with `K(p+1) ≡ 1 (mod s)` and `(K(s+p+1) - 1)/s` even;
/// the dimension is `K(2p+1) - 1`.
pub fn mobius_cy(p: u64, s: u64) -> Result<(MobiusK, u64)> {
    let bound = 2 * s * (p + 1) + 2;
    (1..=bound)
        .find(|&r| {
            let t = r * (s + p + 1) - 1;
            (r * (p + 1)) % s == 1 % s && t.is_multiple_of(s) && (t / s).is_multiple_of(2)
        })
        .map(|k| (MobiusK { p, s, k }, k * (2 * p + 1) - 1))
        .ok_or(StabError::NoSolutionInBound { p, s })
}

/// Least `d ≥ 1` such that `Σ^{d-1} τ⁻¹` fixes every vertex of `q`.
pub fn cy_brute(q: &StableQuiver) -> Result<u64> {
    let dyn_ = q.dynkin();
    let sigma = QuiverAutomorphism::sigma(dyn_);
    let l = (q.group().half_units() as u64).div_ceil(2);
    let bound = 4 * l * dyn_.rank() as u64;
    (1..=bound)
        .find(|&d| {
            let w = sigma
                .pow(d as i64 - 1)
                .compose(QuiverAutomorphism::tau_inv());
            q.vertices()
                .iter()
                .all(|&v| q.canonical(w.apply_unchecked(dyn_, v)) == v)
        })
        .ok_or_else(|| StabError::NoQuiverPeriod(q.to_string()))
}

/// Every formula whose hypotheses hold for `q`, with modulus its circumference.
pub fn applicable_formulas(q: &StableQuiver) -> Vec<CyFormulaResult> {
    let d = q.dynkin();
    let Some(l) = q.circumference() else {
        return Vec::new();
    };
    let n = d.rank() as u64;
    let mut out = Vec::new();
    if !q.flip() {
        // the first congruence needs Σ to be a pure shift and an even frequency
        if !d.suspension_flips() && l % 2 == 0 {
            out.extend(dugas_61_1(d, l).ok());
        } else {
            out.extend(dugas_61_2(d, l).ok());
        }
        return out;
    }
    match d.family() {
        Family::D if n % 2 == 1 => out.extend(dugas_73_1(n, l).ok()),
        Family::E => out.extend(dugas_74_1(l).ok()),
        Family::A => {
            let p = (n - 1) / 2;
            if l % (2 * p + 1) == 0 {
                if let Ok((_, dim)) = mobius_cy(p, l / (2 * p + 1)) {
                    out.push(CyFormulaResult {
                        formula_id: FormulaId::Mobius,
                        d: dim,
                        r: None,
                        modulus: l,
                    });
                }
            }
        }
        _ => {}
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stable_quiver::{cluster_quiver_of, quotient, stable_quiver_of, AdmissibleGroup};

    #[test]
    fn inverses() {
        assert_eq!(mod_inverse(6, 11).unwrap(), 2);
        assert_eq!(mod_inverse(12, 55).unwrap(), 23);
        assert!(matches!(
            mod_inverse(4, 8),
            Err(StabError::NotInvertible { .. })
        ));
        assert_eq!(mod_inverse(-3, 4).unwrap(), 1);
    }

    #[test]
    fn dugas_61_1_examples() {
        let e7 = DynkinType::e(7).unwrap();
        assert_eq!(dugas_61_1(e7, 136).unwrap().d, 16);
        let d6 = DynkinType::d(6).unwrap();
        assert_eq!(dugas_61_1(d6, 36).unwrap().d, 8);
        let e8 = DynkinType::e(8).unwrap();
        assert_eq!(dugas_61_1(e8, 406).unwrap().d, 28);
        assert!(matches!(
            dugas_61_1(DynkinType::a(3).unwrap(), 5),
            Err(StabError::HStarUndefined(_))
        ));
    }

    #[test]
    fn dugas_61_2_examples() {
        let r = dugas_61_2(DynkinType::a(2).unwrap(), 4).unwrap();
        assert_eq!((r.r, r.d), (Some(1), 3));
        let r = dugas_61_2(DynkinType::e(6).unwrap(), 121).unwrap();
        assert_eq!((r.r, r.d), (Some(10), 21));
        let r = dugas_61_2(DynkinType::d(9).unwrap(), 25).unwrap();
        assert_eq!((r.r, r.d), (Some(14), 29));
    }

    #[test]
    fn even_formulas() {
        let r = dugas_73_1(5, 21).unwrap();
        assert_eq!((r.r, r.d), (Some(3), 6));
        let r = dugas_73_1(7, 67).unwrap();
        assert_eq!((r.r, r.d), (Some(6), 12));
        assert_eq!(dugas_73_1(5, 53).unwrap().d, 14);
        let r = dugas_74_1(55).unwrap();
        assert_eq!((r.r, r.d), (Some(5), 10));
        let r = dugas_74_1(187).unwrap();
        assert_eq!((r.r, r.d), (Some(16), 32));
        assert_eq!(dugas_74_1(319).unwrap().d, 54);
        assert!(matches!(
            dugas_73_1(5, 4),
            Err(StabError::NotInvertible { .. })
        ));
        // 5 · 12⁻¹ ≡ 0 (mod 5)
        assert!(matches!(
            dugas_74_1(5),
            Err(StabError::EmptyResidueRange(5))
        ));
    }

    #[test]
    fn mobius_examples() {
        assert_eq!(mobius_cy(1, 1).unwrap(), (MobiusK { p: 1, s: 1, k: 1 }, 2));
        // not theorem-eligible, answered by exhaustion
        let (k, d) = mobius_cy(1, 3).unwrap();
        assert_eq!((k.k, d), (5, 14));
        // r ≡ 2 (mod 5) forces (8r - 1)/5 = 3 + 8k, always odd
        assert!(matches!(
            mobius_cy(2, 5),
            Err(StabError::NoSolutionInBound { p: 2, s: 5 })
        ));
    }

    #[test]
    fn brute_examples() {
        let q = stable_quiver_of(&"(D,9,5/3,1)".parse().unwrap()).unwrap();
        assert_eq!(cy_brute(&q).unwrap(), 29);
        let q = quotient(DynkinType::a(2).unwrap(), AdmissibleGroup::new(4, false)).unwrap();
        assert_eq!(cy_brute(&q).unwrap(), 3);
        let q = stable_quiver_of(&"M(1,1)".parse().unwrap()).unwrap();
        assert_eq!(cy_brute(&q).unwrap(), 2);
        let q = cluster_quiver_of(DynkinType::d(9).unwrap(), 3).unwrap();
        assert_eq!(cy_brute(&q).unwrap(), 4);
    }

    #[test]
    fn cluster_quivers_have_dimension_u_plus_one() {
        for d in [
            DynkinType::a(1).unwrap(),
            DynkinType::a(2).unwrap(),
            DynkinType::a(5).unwrap(),
            DynkinType::d(4).unwrap(),
            DynkinType::d(7).unwrap(),
            DynkinType::e(6).unwrap(),
            DynkinType::e(7).unwrap(),
        ] {
            for u in 1..=6 {
                let q = cluster_quiver_of(d, u).unwrap();
                assert_eq!(cy_brute(&q).unwrap(), u + 1, "{d} u={u}");
            }
        }
    }

    #[test]
    fn formula_parity() {
        for l in 2..200u64 {
            if let Ok(r) = dugas_61_2(DynkinType::d(5).unwrap(), l) {
                assert_eq!(r.d % 2, 1);
            }
            if let Ok(r) = dugas_74_1(l) {
                assert_eq!(r.d % 2, 0);
            }
            if let Ok(r) = dugas_73_1(7, l) {
                assert_eq!(r.d % 2, 0);
            }
        }
    }

    #[test]
    fn formulas_inferred_from_shape() {
        let ids = |s: &str| -> Vec<FormulaId> {
            applicable_formulas(&stable_quiver_of(&s.parse().unwrap()).unwrap())
                .into_iter()
                .map(|r| r.formula_id)
                .collect()
        };
        assert_eq!(ids("B(4,3)"), vec![FormulaId::Dugas61_2]);
        assert_eq!(ids("M(1,1)"), vec![FormulaId::Mobius]);
        assert_eq!(ids("(D,5,1,2)"), vec![FormulaId::Dugas73_1]);
        assert_eq!(ids("(E,6,5,2)"), vec![FormulaId::Dugas74_1]);
        assert_eq!(ids("(D,9,5/3,1)"), vec![FormulaId::Dugas61_2]);
        assert_eq!(ids("(D,4,2,1)"), vec![FormulaId::Dugas61_1]);
        assert_eq!(ids("(D,4,1,1)"), vec![FormulaId::Dugas61_2]);
        assert_eq!(ids("(E,7,2,1)"), vec![FormulaId::Dugas61_1]);
        assert!(ids("(D,6,1,2)").is_empty());
    }
}
