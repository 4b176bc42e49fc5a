//! Deterministic local-hidden-state bounds for m-setting linear steering
//! functionals, and threshold scans of the efficiency needed to violate a
//! witness.
//!
//! For settings u₁…u_m on a trusted qubit, the functional is
//! (1/m) Σ_k ⟨A_k σ·u_k⟩ where A_k ∈ {−1, 0, +1} is the steering party's
//! declared outcome. Any LHS strategy is a mixture of deterministic sign
//! declarations a ∈ {±1}^m acting on a qubit state, so the bound is
//! C_m = (1/m) max_a λ_max(Σ_k a_k σ·u_k) = (1/m) max_a ‖Σ_k a_k u_k‖.
//!
//! The m = 2, 3 thresholds of the variance witnesses are exact; results for
//! larger Platonic direction sets are exploratory.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{argument, Error, Result};
use crate::linalg::QuantumState;
use crate::observables::{lossy_spin_measurement, projective_spin, SpinDirection};
use crate::states::werner_state;
use crate::steering::{self, joint_distribution, WitnessSetup};

/// Largest number of settings accepted by [`lhs_bound`].
pub const MAX_SETTINGS: usize = 16;

/// Bisection tolerance of [`critical_efficiency_scan`].
pub const SCAN_TOL: f64 = 1e-9;

/// Measurement directions used by an m-setting witness.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SettingEnsemble {
    directions: Vec<SpinDirection>,
}

impl SettingEnsemble {
    pub fn new(directions: Vec<SpinDirection>) -> Result<Self> {
        if directions.len() < 2 {
            return argument("a setting ensemble needs at least two directions");
        }
        for d in &directions {
            let n: f64 = d.components().iter().map(|x| x * x).sum::<f64>().sqrt();
            if (n - 1.0).abs() > 1e-12 {
                return argument("setting directions must be unit vectors");
            }
        }
        Ok(Self { directions })
    }

    /// Named direction sets: `orthogonal2`, `orthogonal3`, `octahedron`
    /// (the three axes), `tetrahedron` (4), `icosahedron` (6 vertex axes),
    /// `dodecahedron` (10 vertex axes).
    pub fn named(name: &str) -> Result<Self> {
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let raw: Vec<[f64; 3]> = match name {
            "orthogonal2" => vec![[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]],
            "orthogonal3" | "octahedron" => {
                vec![[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]
            }
            "tetrahedron" => vec![
                [1.0, 1.0, 1.0],
                [1.0, -1.0, -1.0],
                [-1.0, 1.0, -1.0],
                [-1.0, -1.0, 1.0],
            ],
            "icosahedron" => vec![
                [0.0, 1.0, phi],
                [0.0, 1.0, -phi],
                [1.0, phi, 0.0],
                [1.0, -phi, 0.0],
                [phi, 0.0, 1.0],
                [-phi, 0.0, 1.0],
            ],
            "dodecahedron" => {
                let ip = 1.0 / phi;
                vec![
                    [1.0, 1.0, 1.0],
                    [1.0, 1.0, -1.0],
                    [1.0, -1.0, 1.0],
                    [1.0, -1.0, -1.0],
                    [0.0, ip, phi],
                    [0.0, ip, -phi],
                    [ip, phi, 0.0],
                    [ip, -phi, 0.0],
                    [phi, 0.0, ip],
                    [-phi, 0.0, ip],
                ]
            }
            other => return argument(format!("unknown direction set '{other}'")),
        };
        let dirs = raw
            .into_iter()
            .map(|[x, y, z]| SpinDirection::normalized(x, y, z))
            .collect::<Result<Vec<_>>>()?;
        Self::new(dirs)
    }

    pub fn m(&self) -> usize {
        self.directions.len()
    }

    pub fn directions(&self) -> &[SpinDirection] {
        &self.directions
    }
}

/// Deterministic-LHS bound and the sign declaration attaining it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LhsBound {
    pub value: f64,
    pub signs: Vec<i8>,
}

impl LhsBound {
    pub fn is_violated_by(&self, functional: f64) -> bool {
        functional > self.value
    }
}

fn signs_of(mask: u32, m: usize) -> Vec<i8> {
    (0..m)
        .map(|k| if mask >> k & 1 == 1 { -1 } else { 1 })
        .collect()
}

/// C_m = (1/m)·max over a ∈ {±1}^m of ‖Σ_k a_k u_k‖.
pub fn lhs_bound(ensemble: &SettingEnsemble) -> Result<LhsBound> {
    let m = ensemble.m();
    if m > MAX_SETTINGS {
        return Err(Error::Size {
            requested: m,
            max: MAX_SETTINGS,
        });
    }
    let dirs: Vec<[f64; 3]> = ensemble.directions.iter().map(|d| d.components()).collect();
    let (mask, norm) = (0u32..1 << m)
        .into_par_iter()
        .map(|mask| {
            let mut v = [0.0f64; 3];
            for (k, u) in dirs.iter().enumerate() {
                let s = if mask >> k & 1 == 1 { -1.0 } else { 1.0 };
                for i in 0..3 {
                    v[i] += s * u[i];
                }
            }
            (mask, (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt())
        })
        .reduce(
            || (u32::MAX, f64::NEG_INFINITY),
            |a, b| {
                // Largest norm; ties go to the smaller mask.
                if b.1 > a.1 + 1e-15 || ((b.1 - a.1).abs() <= 1e-15 && b.0 < a.0) {
                    b
                } else {
                    a
                }
            },
        );
    Ok(LhsBound {
        value: norm / m as f64,
        signs: signs_of(mask, m),
    })
}

/// What the steering party declares when it registers no photon.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum NoDetectionPolicy {
    /// Declare 0; the trial adds nothing to the correlator.
    #[default]
    DeclareZero,
    /// Declare a fair random ±1, independent of everything else.
    RandomSign,
}

/// (1/m) Σ_k |⟨A_k σ_C·u_k⟩| on a bipartite state with the trusted qubit C
/// first and the lossy steering party B second. Each term's sign is the
/// steering party's relabeling of its outcomes, which any LHS strategy may
/// also use, so the result is bounded by [`lhs_bound`] for unsteerable
/// states.
pub fn linear_functional(
    state: &QuantumState,
    ensemble: &SettingEnsemble,
    eta_b: f64,
    policy: NoDetectionPolicy,
) -> Result<f64> {
    let mut total = 0.0;
    for &u in ensemble.directions() {
        let c_obs = projective_spin(u);
        let b_obs = lossy_spin_measurement(u, eta_b)?;
        let joint = joint_distribution(state, &c_obs, &b_obs)?;
        let values = [-1.0, 0.0, 1.0];
        // Declared value for b = −1, 0, +1. A fair coin averages to zero
        // against any outcome, so both policies agree in expectation.
        let declared = match policy {
            NoDetectionPolicy::DeclareZero | NoDetectionPolicy::RandomSign => [-1.0, 0.0, 1.0],
        };
        let mut corr = 0.0;
        for a in 0..3 {
            for b in 0..3 {
                corr += values[a] * declared[b] * joint[a][b];
            }
        }
        total += corr.abs();
    }
    Ok(total / ensemble.m() as f64)
}

/// Outcome of a threshold scan.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum Threshold {
    /// Violation holds for every efficiency above this value.
    At(f64),
    /// No violation even at unit efficiency.
    Unattainable,
}

impl Threshold {
    pub fn value(&self) -> Option<f64> {
        match self {
            Threshold::At(v) => Some(*v),
            Threshold::Unattainable => None,
        }
    }
}

/// Bisects a monotone violation predicate over η ∈ [0, 1] to `tol`.
pub fn bisect_threshold<F>(mut violated: F, tol: f64) -> Result<Threshold>
where
    F: FnMut(f64) -> Result<bool>,
{
    if !violated(1.0)? {
        return Ok(Threshold::Unattainable);
    }
    if violated(0.0)? {
        return Ok(Threshold::At(0.0));
    }
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if violated(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(Threshold::At(0.5 * (lo + hi)))
}

/// Witness whose violation boundary in η_B is scanned.
#[derive(Clone, Debug, PartialEq)]
pub enum WitnessSelector {
    /// S3 < 1 with the given steered-site efficiency.
    ThreeSetting { eta_a: f64 },
    /// S2 < 1 with trusted steered detectors.
    TwoSetting,
    /// Wittmann form with the given steered-site efficiency.
    Wittmann { eta_a: f64 },
    /// Linear functional above its LHS bound (exploratory for m ≥ 4).
    LinearFunctional {
        ensemble: SettingEnsemble,
        policy: NoDetectionPolicy,
    },
}

impl WitnessSelector {
    /// Whether the witness is violated on `state` at steering efficiency
    /// `eta_b`.
    pub fn violated(&self, state: &QuantumState, eta_b: f64) -> Result<bool> {
        let xyz = SpinDirection::AXES;
        match self {
            WitnessSelector::ThreeSetting { eta_a } => {
                let r = steering::steering_param_3(state, &xyz, *eta_a, eta_b)?;
                Ok(r.verdicts.steering_3.unwrap_or(false))
            }
            WitnessSelector::TwoSetting => {
                let r = steering::steering_param_2(state, &[xyz[0], xyz[1]], eta_b)?;
                Ok(r.verdicts.steering_2.unwrap_or(false))
            }
            WitnessSelector::Wittmann { eta_a } => {
                let r = steering::wittmann_witness(state, &xyz, *eta_a, eta_b)?;
                Ok(r.verdicts.wittmann.unwrap_or(false))
            }
            WitnessSelector::LinearFunctional { ensemble, policy } => {
                let bound = lhs_bound(ensemble)?;
                let v = linear_functional(state, ensemble, eta_b, *policy)?;
                Ok(bound.is_violated_by(v))
            }
        }
    }
}

/// Smallest η_B at which the selected witness is violated on werner(p_s).
pub fn critical_efficiency_scan(selector: &WitnessSelector, p_s: f64) -> Result<Threshold> {
    let state = werner_state(p_s)?;
    bisect_threshold(|eta| selector.violated(&state, eta), SCAN_TOL)
}

/// Same scan under an explicit setup, for states other than Werner.
pub fn critical_efficiency_scan_state(state: &QuantumState, eta_a: f64) -> Result<Threshold> {
    let xyz = SpinDirection::AXES;
    bisect_threshold(
        |eta| {
            let r =
                steering::steering_param_3_with(state, &xyz, &WitnessSetup::qubits(eta_a, eta))?;
            Ok(r.verdicts.steering_3.unwrap_or(false))
        },
        SCAN_TOL,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::observables::pauli;
    use crate::states::singlet;
    use crate::ComplexMatrix;

    /// Independent route: largest eigenvalue of (1/m)Σ a_k σ·u_k over all
    /// sign assignments.
    fn eigen_oracle(ensemble: &SettingEnsemble) -> f64 {
        let m = ensemble.m();
        let mut best = f64::NEG_INFINITY;
        for mask in 0u32..1 << m {
            let mut op = ComplexMatrix::zeros(2, 2);
            for (k, d) in ensemble.directions().iter().enumerate() {
                let s = if mask >> k & 1 == 1 { -1.0 } else { 1.0 };
                op = &op + &pauli(*d).scale_real(s / m as f64);
            }
            best = best.max(*op.hermitian_eigenvalues().last().unwrap());
        }
        best
    }

    #[test]
    fn named_bounds() {
        let c2 = lhs_bound(&SettingEnsemble::named("orthogonal2").unwrap()).unwrap();
        assert!((c2.value - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
        let c3 = lhs_bound(&SettingEnsemble::named("orthogonal3").unwrap()).unwrap();
        assert!((c3.value - 1.0 / 3f64.sqrt()).abs() < 1e-12);
        assert!(c3.value < c2.value);
        assert_eq!(c3.signs.len(), 3);
    }

    #[test]
    fn parallel_directions_bound_is_one() {
        let e = SettingEnsemble::new(vec![SpinDirection::Z, SpinDirection::Z]).unwrap();
        assert!((lhs_bound(&e).unwrap().value - 1.0).abs() < 1e-15);
    }

    #[test]
    fn closed_form_matches_eigen_oracle() {
        for name in [
            "orthogonal2",
            "orthogonal3",
            "tetrahedron",
            "icosahedron",
            "dodecahedron",
        ] {
            let e = SettingEnsemble::named(name).unwrap();
            let b = lhs_bound(&e).unwrap();
            assert!((b.value - eigen_oracle(&e)).abs() < 1e-9, "{name}");
            assert!(b.value > 0.0 && b.value <= 1.0);
        }
    }

    #[test]
    fn too_many_settings() {
        let dirs = SpinDirection::sphere_grid(11);
        let e = SettingEnsemble::new(dirs).unwrap();
        assert!(matches!(lhs_bound(&e), Err(Error::Size { .. })));
        assert!(SettingEnsemble::new(vec![SpinDirection::X]).is_err());
        assert!(SettingEnsemble::named("cube-ish").is_err());
    }

    #[test]
    fn functional_examples() {
        let e3 = SettingEnsemble::named("orthogonal3").unwrap();
        let v = linear_functional(&singlet(), &e3, 1.0, NoDetectionPolicy::DeclareZero).unwrap();
        assert!((v - 1.0).abs() < 1e-12);
        let mixed = QuantumState::maximally_mixed(vec![2, 2]).unwrap();
        assert!(
            linear_functional(&mixed, &e3, 1.0, NoDetectionPolicy::DeclareZero)
                .unwrap()
                .abs()
                < 1e-12
        );
        for eta in [0.1, 0.5, 0.9] {
            for policy in [
                NoDetectionPolicy::DeclareZero,
                NoDetectionPolicy::RandomSign,
            ] {
                let v = linear_functional(&singlet(), &e3, eta, policy).unwrap();
                assert!((v - eta).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn threshold_scans() {
        let t =
            critical_efficiency_scan(&WitnessSelector::ThreeSetting { eta_a: 1.0 }, 1.0).unwrap();
        assert!((t.value().unwrap() - 1.0 / 3.0).abs() < 1e-6);
        let t = critical_efficiency_scan(&WitnessSelector::TwoSetting, 1.0).unwrap();
        assert!((t.value().unwrap() - 0.5).abs() < 1e-6);
        let t =
            critical_efficiency_scan(&WitnessSelector::ThreeSetting { eta_a: 1.0 }, 0.5).unwrap();
        assert_eq!(t, Threshold::Unattainable);
        let t = critical_efficiency_scan(&WitnessSelector::Wittmann { eta_a: 0.4 }, 0.9).unwrap();
        assert!((t.value().unwrap() - 1.0 / (3.0 * 0.81)).abs() < 1e-6);
    }

    #[test]
    fn functional_threshold_equals_bound_for_singlet() {
        for name in ["orthogonal2", "orthogonal3"] {
            let ensemble = SettingEnsemble::named(name).unwrap();
            let c = lhs_bound(&ensemble).unwrap().value;
            let sel = WitnessSelector::LinearFunctional {
                ensemble,
                policy: NoDetectionPolicy::DeclareZero,
            };
            let t = critical_efficiency_scan(&sel, 1.0).unwrap();
            assert!((t.value().unwrap() - c).abs() < 1e-6);
        }
    }
}
