//! Parameter grids for the classification theorems, batch verification, the
//! `D_9` counterexample and the near-miss probes.

use std::fmt;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::calabi_yau::{cy_brute, dugas_61_2};
use crate::cluster_tilting::{keller_reiten_check, KellerReitenReport};
use crate::dynkin::DynkinType;
use crate::error::Result;
use crate::parallel::{self, Execution};
use crate::stable_quiver::{
    cluster_quiver_of, quotient, stable_quiver_of, AdmissibleGroup, AlgebraLabel, StableQuiver,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Theorem {
    A1,
    A2,
    D1,
    D2,
    D3,
    E6,
    E7,
    E8,
}

impl Theorem {
    pub const ALL: [Theorem; 8] = [
        Theorem::A1,
        Theorem::A2,
        Theorem::D1,
        Theorem::D2,
        Theorem::D3,
        Theorem::E6,
        Theorem::E7,
        Theorem::E8,
    ];

    pub fn family_letter(&self) -> char {
        match self {
            Theorem::A1 | Theorem::A2 => 'A',
            Theorem::D1 | Theorem::D2 | Theorem::D3 => 'D',
            _ => 'E',
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    pub u_max: u64,
    pub rank_max: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TheoremInstance {
    pub theorem: Theorem,
    pub u: u64,
    pub label: AlgebraLabel,
    pub cluster: DynkinType,
}

fn inst(theorem: Theorem, u: u64, label: AlgebraLabel) -> TheoremInstance {
    TheoremInstance {
        theorem,
        u,
        label,
        cluster: label.dynkin().expect("generated labels are well formed"),
    }
}

/// Instances obtained by solving the defining circumference equations
/// `L_algebra = L_cluster` with exact integer division.
pub fn eligible_instances(theorem: Theorem, bounds: Bounds) -> Vec<TheoremInstance> {
    let us = 1..=bounds.u_max;
    let rmax = bounds.rank_max as u64;
    let mut out = Vec::new();
    match theorem {
        Theorem::A1 => {
            for n in 1..=rmax {
                for u in us.clone().filter(|u| u % 2 == 0) {
                    let simples = u / 2 * (n + 1) + 1;
                    out.push(inst(
                        theorem,
                        u,
                        AlgebraLabel::Nakayama {
                            simples,
                            loewy: n + 1,
                        },
                    ));
                }
            }
        }
        Theorem::A2 => {
            for p in (1..).take_while(|p| 2 * p < rmax) {
                for u in us.clone().filter(|u| u % 2 == 1) {
                    let l = u * (p + 1) + 1;
                    if l % (2 * p + 1) == 0 {
                        out.push(inst(
                            theorem,
                            u,
                            AlgebraLabel::Mobius {
                                p,
                                s: l / (2 * p + 1),
                            },
                        ));
                    }
                }
            }
        }
        Theorem::D1 | Theorem::D2 => {
            let parity = if theorem == Theorem::D1 { 0 } else { 1 };
            for n in (4..=rmax).filter(|n| n % 2 == parity) {
                for u in us.clone() {
                    let l = u * (n - 1) + 1;
                    if l % (2 * n - 3) != 0 {
                        continue;
                    }
                    let s = l / (2 * n - 3);
                    let label = if n % 2 == 1 && u % 2 == 1 {
                        AlgebraLabel::DType2 { n, s }
                    } else {
                        AlgebraLabel::DType1 { n, s }
                    };
                    out.push(inst(theorem, u, label));
                }
            }
        }
        Theorem::D3 => {
            for m in (2..).take_while(|m| 3 * m <= rmax) {
                let n = 3 * m;
                for u in us.clone() {
                    let l = u * (n - 1) + 1;
                    if l % (2 * m - 1) != 0 || (m % 2 == 1 && u % 2 == 1) {
                        continue;
                    }
                    let s = l / (2 * m - 1);
                    if s % 3 != 0 {
                        out.push(inst(theorem, u, AlgebraLabel::DThird { n, s }));
                    }
                }
            }
        }
        Theorem::E6 | Theorem::E7 | Theorem::E8 => {
            let n: u64 = match theorem {
                Theorem::E6 => 6,
                Theorem::E7 => 7,
                _ => 8,
            };
            if n > rmax {
                return out;
            }
            let d = DynkinType::e(n as usize).unwrap();
            let h = d.coxeter_number();
            for u in us {
                let l = u * (h / 2) + 1;
                if !l.is_multiple_of(h - 1) {
                    continue;
                }
                let s = l / (h - 1);
                let label = if n == 6 && u % 2 == 1 {
                    AlgebraLabel::E6Type2 { s }
                } else {
                    AlgebraLabel::EType1 { n, s }
                };
                out.push(inst(theorem, u, label));
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceReport {
    pub label: AlgebraLabel,
    pub u: u64,
    pub circumference: u64,
    pub flip: bool,
    pub shape_ok: bool,
    pub stable_exceptional_orbits: usize,
    pub cluster_exceptional_orbits: usize,
    pub report: KellerReitenReport,
    pub elapsed_ms: u64,
}

impl InstanceReport {
    pub fn all_green(&self) -> bool {
        self.shape_ok && self.report.all_green()
    }
}

/// Compares `stable` with the `u`-cluster category of its tree class and runs
/// the Keller-Reiten checks on it.
pub fn verify_quotient(
    label: AlgebraLabel,
    stable: &StableQuiver,
    u: u64,
    exec: Execution,
) -> Result<InstanceReport> {
    let start = Instant::now();
    let d = stable.dynkin();
    let cluster = cluster_quiver_of(d, u)?;
    let stable_orbits = stable.exceptional_tau_orbits();
    let cluster_orbits = cluster.exceptional_tau_orbits();
    let shape_ok = stable.group() == cluster.group() && stable_orbits == cluster_orbits;
    let report = keller_reiten_check(stable, u, d, exec)?;
    Ok(InstanceReport {
        label,
        u,
        circumference: stable.group().half_units() as u64 / 2,
        flip: stable.flip(),
        shape_ok,
        stable_exceptional_orbits: stable_orbits,
        cluster_exceptional_orbits: cluster_orbits,
        report,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

pub fn verify_claim(label: AlgebraLabel, u: u64, exec: Execution) -> Result<InstanceReport> {
    let stable = stable_quiver_of(&label)?;
    verify_quotient(label, &stable, u, exec)
}

pub fn verify_instance(inst: &TheoremInstance, exec: Execution) -> Result<InstanceReport> {
    verify_claim(inst.label, inst.u, exec)
}

pub fn verify_batch(instances: &[TheoremInstance], exec: Execution) -> Vec<Result<InstanceReport>> {
    parallel::map(exec, instances, |i| verify_instance(i, exec))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CounterexampleReport {
    pub label: AlgebraLabel,
    pub u: u64,
    pub stable_circumference: Option<u64>,
    pub cluster_circumference: Option<u64>,
    pub stable_flip: bool,
    pub cluster_flip: bool,
    pub stable_exceptional_orbits: usize,
    pub cluster_exceptional_orbits: usize,
    pub cy_brute_stable: u64,
    pub cy_brute_cluster: u64,
    pub dugas_61_2: u64,
    pub report: KellerReitenReport,
}

/// `(D_9, 5/3, 1)` against the 3-cluster category of type `D_9`.
pub fn counterexample_d9(exec: Execution) -> Result<CounterexampleReport> {
    let label = AlgebraLabel::DThird { n: 9, s: 5 };
    let u = 3;
    let stable = stable_quiver_of(&label)?;
    let d = stable.dynkin();
    let cluster = cluster_quiver_of(d, u)?;
    Ok(CounterexampleReport {
        label,
        u,
        stable_circumference: stable.circumference(),
        cluster_circumference: cluster.circumference(),
        stable_flip: stable.flip(),
        cluster_flip: cluster.flip(),
        stable_exceptional_orbits: stable.exceptional_tau_orbits(),
        cluster_exceptional_orbits: cluster.exceptional_tau_orbits(),
        cy_brute_stable: cy_brute(&stable)?,
        cy_brute_cluster: cy_brute(&cluster)?,
        dugas_61_2: dugas_61_2(d, label.circumference())?.d,
        report: keller_reiten_check(&stable, u, d, exec)?,
    })
}

/// Instances that violate exactly one eligibility condition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Probe {
    /// The stable quiver of an eligible algebra against the `(u+1)`-cluster category.
    ShiftedU(TheoremInstance),
    /// An eligible instance with its circumference increased by one.
    ShiftedCircumference(TheoremInstance),
    /// `(D_{3m}, s/3, 1)` with `m` and `u` both odd.
    BothOdd { m: u64, u: u64 },
    /// A label text that should be rejected, e.g. `3 | s`.
    RawLabel { text: String, u: u64 },
}

impl fmt::Display for Probe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Probe::ShiftedU(i) => {
                write!(f, "{} with u={} (eligible at u={})", i.label, i.u + 1, i.u)
            }
            Probe::ShiftedCircumference(i) => {
                write!(f, "{} with circumference +1, u={}", i.label, i.u)
            }
            Probe::BothOdd { m, u } => write!(f, "D_{} with m={m}, u={u} both odd", 3 * m),
            Probe::RawLabel { text, u } => write!(f, "{text} with u={u}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbeOutcome {
    pub red: bool,
    pub detail: String,
}

fn outcome(r: Result<InstanceReport>) -> ProbeOutcome {
    match r {
        Ok(rep) => ProbeOutcome {
            red: !rep.all_green(),
            detail: format!(
                "shape_ok={} cy={} (expected {}) tilting_ok={} endo_ok={} negext_ok={}",
                rep.shape_ok,
                rep.report.cy_value,
                rep.u + 1,
                rep.report.tilting_ok,
                rep.report.endo_ok,
                rep.report.negext_ok
            ),
        },
        Err(e) => ProbeOutcome {
            red: true,
            detail: format!("rejected: {e}"),
        },
    }
}

pub fn run_probe(probe: &Probe, exec: Execution) -> ProbeOutcome {
    match probe {
        Probe::ShiftedU(i) => outcome(verify_claim(i.label, i.u + 1, exec)),
        Probe::ShiftedCircumference(i) => {
            let l = i.label.circumference() + 1;
            outcome(
                quotient(i.cluster, AdmissibleGroup::new(l, i.label.flip()))
                    .and_then(|q| verify_quotient(i.label, &q, i.u, exec)),
            )
        }
        Probe::BothOdd { m, u } => {
            let n = 3 * m;
            let l = u * (n - 1) + 1;
            let s = l / (2 * m - 1);
            outcome(verify_claim(AlgebraLabel::DThird { n, s }, *u, exec))
        }
        Probe::RawLabel { text, u } => outcome(
            text.parse::<AlgebraLabel>()
                .and_then(|label| verify_claim(label, *u, exec)),
        ),
    }
}

/// A fixed set of twenty near-miss probes spread over all theorems.
pub fn near_miss_probe_set() -> Vec<Probe> {
    let pick = |t: Theorem, rank_max: usize, u_max: u64, k: usize| -> Vec<TheoremInstance> {
        eligible_instances(t, Bounds { u_max, rank_max })
            .into_iter()
            .take(k)
            .collect()
    };
    let mut base = Vec::new();
    base.extend(pick(Theorem::A1, 3, 4, 2));
    base.extend(pick(Theorem::A2, 5, 7, 2));
    base.extend(pick(Theorem::D1, 6, 10, 2));
    base.extend(pick(Theorem::D2, 5, 12, 2));
    base.extend(pick(Theorem::D3, 6, 10, 1));
    base.extend(pick(Theorem::E6, 6, 20, 1));
    let mut probes: Vec<Probe> = base.iter().copied().map(Probe::ShiftedU).collect();
    probes.extend(
        base.iter()
            .step_by(2)
            .copied()
            .map(Probe::ShiftedCircumference),
    );
    probes.push(Probe::BothOdd { m: 3, u: 3 });
    probes.push(Probe::BothOdd { m: 3, u: 23 });
    // u ≡ -2 (mod 6m-3), so that 3 | s
    probes.push(Probe::RawLabel {
        text: "(D,6,12/3,1)".into(),
        u: 7,
    });
    probes.push(Probe::RawLabel {
        text: "(D,6,27/3,1)".into(),
        u: 16,
    });
    probes.push(Probe::RawLabel {
        text: "(D,9,21/3,1)".into(),
        u: 13,
    });
    probes
}

#[cfg(test)]
mod tests {
    use super::*;

    fn us(t: Theorem, rank: usize, u_max: u64, only_rank: u64) -> Vec<u64> {
        eligible_instances(
            t,
            Bounds {
                u_max,
                rank_max: rank,
            },
        )
        .into_iter()
        .filter(|i| i.cluster.rank() as u64 == only_rank)
        .map(|i| i.u)
        .collect()
    }

    /// Independent congruence form of the eligibility conditions.
    fn congruence_ok(t: Theorem, n: u64, u: u64) -> bool {
        match t {
            Theorem::D1 => n.is_multiple_of(2) && (u + 2).is_multiple_of(2 * n - 3),
            Theorem::D2 => n % 2 == 1 && n >= 5 && (u + 2).is_multiple_of(2 * n - 3),
            Theorem::D3 => {
                let m = n / 3;
                n.is_multiple_of(3)
                    && m >= 2
                    && (u + 2).is_multiple_of(2 * m - 1)
                    && !(u + 2).is_multiple_of(6 * m - 3)
                    && !(m % 2 == 1 && u % 2 == 1)
            }
            Theorem::E6 => (u + 2).is_multiple_of(11),
            Theorem::E7 => (u + 2).is_multiple_of(17),
            Theorem::E8 => (u + 2).is_multiple_of(29),
            Theorem::A1 => u.is_multiple_of(2),
            Theorem::A2 => unreachable!(),
        }
    }

    #[test]
    fn d4_and_d6_lists() {
        assert_eq!(us(Theorem::D1, 4, 20, 4), vec![3, 8, 13, 18]);
        assert_eq!(us(Theorem::D3, 6, 10, 6), vec![1, 4, 10]);
        let mut d6: Vec<u64> = us(Theorem::D1, 6, 10, 6);
        d6.extend(us(Theorem::D3, 6, 10, 6));
        d6.sort();
        assert_eq!(d6, vec![1, 4, 7, 10]);
        assert_eq!(us(Theorem::E6, 8, 25, 6), vec![9, 20]);
        assert_eq!(us(Theorem::D3, 9, 40, 9), vec![8, 18, 38]);
    }

    #[test]
    fn eligibility_matches_congruences() {
        for t in [
            Theorem::D1,
            Theorem::D2,
            Theorem::D3,
            Theorem::E6,
            Theorem::E7,
            Theorem::E8,
            Theorem::A1,
        ] {
            let got: Vec<(u64, u64)> = eligible_instances(
                t,
                Bounds {
                    u_max: 90,
                    rank_max: 15,
                },
            )
            .into_iter()
            .map(|i| (i.cluster.rank() as u64, i.u))
            .collect();
            let ranks: Vec<u64> = match t {
                Theorem::E6 => vec![6],
                Theorem::E7 => vec![7],
                Theorem::E8 => vec![8],
                Theorem::A1 => (1..=15).collect(),
                _ => (4..=15).collect(),
            };
            let want: Vec<(u64, u64)> = ranks
                .into_iter()
                .flat_map(|n| (1..=90).map(move |u| (n, u)))
                .filter(|&(n, u)| congruence_ok(t, n, u))
                .collect();
            assert_eq!(got, want, "{t}");
        }
    }

    #[test]
    fn mobius_grid_frequencies() {
        for i in eligible_instances(
            Theorem::A2,
            Bounds {
                u_max: 25,
                rank_max: 13,
            },
        ) {
            let AlgebraLabel::Mobius { p, s } = i.label else {
                panic!()
            };
            assert_eq!((s + 1) % (p + 1), 0);
            assert_eq!(s * (2 * p + 1), i.u * (p + 1) + 1);
        }
    }

    #[test]
    fn labels_of_examples() {
        let d3 = eligible_instances(
            Theorem::D3,
            Bounds {
                u_max: 1,
                rank_max: 6,
            },
        );
        assert_eq!(d3[0].label.to_string(), "(D,6,2/3,1)");
        let e7 = eligible_instances(
            Theorem::E7,
            Bounds {
                u_max: 15,
                rank_max: 8,
            },
        );
        assert_eq!(e7[0].label.to_string(), "(E,7,8,1)");
        let e6 = eligible_instances(
            Theorem::E6,
            Bounds {
                u_max: 20,
                rank_max: 8,
            },
        );
        assert_eq!(
            e6.iter().map(|i| i.label.to_string()).collect::<Vec<_>>(),
            vec!["(E,6,5,2)", "(E,6,11,1)"]
        );
    }

    #[test]
    fn smallest_instances_verify() {
        let a = eligible_instances(
            Theorem::A1,
            Bounds {
                u_max: 2,
                rank_max: 2,
            },
        );
        let r = verify_instance(a.last().unwrap(), Execution::Sequential).unwrap();
        assert_eq!(r.label.to_string(), "B(4,3)");
        assert!(r.all_green(), "{r:?}");
        let d3 = eligible_instances(
            Theorem::D3,
            Bounds {
                u_max: 1,
                rank_max: 6,
            },
        );
        assert!(verify_instance(&d3[0], Execution::Sequential)
            .unwrap()
            .all_green());
    }

    #[test]
    fn counterexample() {
        let c = counterexample_d9(Execution::default()).unwrap();
        assert_eq!(
            (c.stable_circumference, c.cluster_circumference),
            (Some(25), Some(25))
        );
        assert_eq!((c.stable_flip, c.cluster_flip), (false, true));
        assert_eq!(
            (c.stable_exceptional_orbits, c.cluster_exceptional_orbits),
            (2, 1)
        );
        assert_eq!(
            (c.cy_brute_stable, c.dugas_61_2, c.cy_brute_cluster),
            (29, 29, 4)
        );
        assert!(!c.report.cy_ok);
    }

    #[test]
    fn probe_set_size() {
        assert_eq!(near_miss_probe_set().len(), 20);
    }
}
