//! Entanglement-swapping teleportation.
//!
//! Victor's qubit V is entangled with Charlie's C; Alice holds A, entangled
//! with Bob's B. Alice's Bell measurement on (V, A) swaps the entanglement
//! onto (C, B). Subsystem order of every conditional state is (C, B), so
//! Charlie is the steered party and Bob the steering party.

use serde::{Deserialize, Serialize};

use crate::bounds::{bisect_threshold, Threshold};
use crate::error::{argument, Error, Result};
use crate::linalg::{embed_operator, ComplexMatrix, QuantumState, ZERO_PROB};
use crate::observables::{pair_number_operator, sigma_x, sigma_y, sigma_z, SpinDirection};
use crate::states::{
    bell_state, dual_rail_decode, dual_rail_encode_all, parametric_state, relabel_pair, BellKind,
    ParametricAmplitudes,
};
use crate::steering::{steering_param_2, steering_param_3, SteeringReport};

/// Classical (measure-and-prepare) fidelity benchmark.
pub const CLASSICAL_FIDELITY: f64 = 2.0 / 3.0;
/// Optimal-cloning fidelity benchmark.
pub const CLONING_FIDELITY: f64 = 5.0 / 6.0;

#[derive(Clone, Debug)]
pub struct SwapOutcome {
    pub bell_outcome: BellKind,
    pub probability: f64,
    /// Normalized (C, B) state; `None` when the outcome has zero probability.
    pub conditional_state: Option<QuantumState>,
}

/// Pauli on B that maps the Bell state `kind` onto Ψ⁻ up to a phase.
pub fn pauli_correction(kind: BellKind) -> ComplexMatrix {
    match kind {
        BellKind::PsiMinus => ComplexMatrix::identity(2),
        BellKind::PsiPlus => sigma_z(),
        BellKind::PhiMinus => sigma_x(),
        BellKind::PhiPlus => sigma_y(),
    }
}

fn check_two_qubit(state: &QuantumState, name: &str) -> Result<()> {
    if state.dims() != [2, 2] {
        return argument(format!(
            "{name} must be a two-qubit state, got dims {:?}",
            state.dims()
        ));
    }
    Ok(())
}

/// Joint state ordered (V, A, C, B).
fn swap_input(source_vc: &QuantumState, source_ab: &QuantumState) -> Result<QuantumState> {
    check_two_qubit(source_vc, "source_VC")?;
    check_two_qubit(source_ab, "source_AB")?;
    source_vc.tensor(source_ab)?.reorder(&[0, 2, 1, 3])
}

/// Ideal Bell measurement on (V, A); all four outcomes, uncorrected.
pub fn entanglement_swap(
    source_vc: &QuantumState,
    source_ab: &QuantumState,
) -> Result<Vec<SwapOutcome>> {
    entanglement_swap_with(source_vc, source_ab, false)
}

/// As [`entanglement_swap`]; with `correct` set, Bob applies
/// [`pauli_correction`] for the registered outcome.
pub fn entanglement_swap_with(
    source_vc: &QuantumState,
    source_ab: &QuantumState,
    correct: bool,
) -> Result<Vec<SwapOutcome>> {
    let joint = swap_input(source_vc, source_ab)?;
    let id4 = ComplexMatrix::identity(4);
    BellKind::ALL
        .iter()
        .map(|&kind| {
            let proj = kind.projector().kron(&id4);
            let conditioned = match joint.condition(&proj) {
                Ok((p, post)) => (p, Some(post.partial_trace(&[2, 3])?)),
                Err(Error::ZeroProbability(p)) => (p.max(0.0), None),
                Err(e) => return Err(e),
            };
            let (probability, mut conditional_state) = conditioned;
            if correct {
                if let Some(s) = &conditional_state {
                    let u = embed_operator(s.dims(), &pauli_correction(kind), 1)?;
                    conditional_state = Some(s.apply_unitary(&u)?);
                }
            }
            Ok(SwapOutcome {
                bell_outcome: kind,
                probability,
                conditional_state,
            })
        })
        .collect()
}

/// ⟨ψ|ρ|ψ⟩ for a pure target.
pub fn fidelity(state: &QuantumState, target_pure: &QuantumState) -> Result<f64> {
    if state.dims() != target_pure.dims() {
        return argument(format!(
            "fidelity: dims {:?} vs target {:?}",
            state.dims(),
            target_pure.dims()
        ));
    }
    let purity = target_pure.rho().trace_product(target_pure.rho()).re;
    if (purity - 1.0).abs() > 1e-10 {
        return argument(format!("fidelity target must be pure (purity {purity})"));
    }
    Ok(state.rho().trace_product(target_pure.rho()).re)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TeleportReport {
    pub swap_probability: f64,
    pub eta_c: f64,
    pub eta_b: f64,
    pub three_setting: SteeringReport,
    pub two_setting: SteeringReport,
    /// S_{C|B}^{(3)} < 1.
    pub certified: bool,
    /// max(0, 1 − S3).
    pub figure_of_merit: f64,
    /// Fidelity of the conditional (C, B) state with the singlet.
    pub fidelity: f64,
    pub exceeds_classical: bool,
    pub exceeds_cloning: bool,
}

impl TeleportReport {
    pub fn s3(&self) -> f64 {
        self.three_setting.s3.unwrap_or(f64::NAN)
    }
}

/// Steering signature of an already conditioned (C, B) state.
pub fn signature_of_state(
    conditional: &QuantumState,
    swap_probability: f64,
    eta_c: f64,
    eta_b: f64,
) -> Result<TeleportReport> {
    let three_setting = steering_param_3(conditional, &SpinDirection::AXES, eta_c, eta_b)?;
    let two_setting = steering_param_2(conditional, &[SpinDirection::X, SpinDirection::Y], eta_b)?;
    let s3 = three_setting.s3.expect("three settings always give S3");
    let f = fidelity(conditional, &bell_state(BellKind::PsiMinus))?;
    Ok(TeleportReport {
        swap_probability,
        eta_c,
        eta_b,
        three_setting,
        two_setting,
        certified: s3 < 1.0,
        figure_of_merit: (1.0 - s3).max(0.0),
        fidelity: f,
        exceeds_classical: f > CLASSICAL_FIDELITY,
        exceeds_cloning: f > CLONING_FIDELITY,
    })
}

/// Swaps, conditions on Ψ⁻ (identity correction) and evaluates the
/// three- and two-setting witnesses on (C, B) with Charlie's and Bob's
/// detection efficiencies.
pub fn teleport_signature(
    source_vc: &QuantumState,
    source_ab: &QuantumState,
    eta_c: f64,
    eta_b: f64,
) -> Result<TeleportReport> {
    let (p, state) = psi_minus_branch(source_vc, source_ab)?;
    signature_of_state(&state, p, eta_c, eta_b)
}

fn psi_minus_branch(
    source_vc: &QuantumState,
    source_ab: &QuantumState,
) -> Result<(f64, QuantumState)> {
    let joint = swap_input(source_vc, source_ab)?;
    let proj = BellKind::PsiMinus
        .projector()
        .kron(&ComplexMatrix::identity(4));
    let (p, post) = joint.condition(&proj)?;
    Ok((p, post.partial_trace(&[2, 3])?))
}

/// Smallest η_B certifying teleportation at fixed η_C.
pub fn certification_threshold(
    source_vc: &QuantumState,
    source_ab: &QuantumState,
    eta_c: f64,
    tol: f64,
) -> Result<Threshold> {
    let (p, state) = psi_minus_branch(source_vc, source_ab)?;
    bisect_threshold(
        |eta_b| Ok(signature_of_state(&state, p, eta_c, eta_b)?.certified),
        tol,
    )
}

/// Coincidence-conditioned branch of a swap driven by the parametric state.
#[derive(Clone, Debug)]
pub struct ParametricSwap {
    pub probability: f64,
    /// Modes (C₊, C₋, B₊, B₋).
    pub fock_state: QuantumState,
    /// Dual-rail decoded (C, B) qubits.
    pub qubit_state: QuantumState,
    /// ⟨n_{B₊} + n_{B₋}⟩ of the conditional state.
    pub b_photon_number: f64,
}

/// Lossless swap with Alice's pair supplied by the parametric state.
///
/// Victor's (V, C) pair is dual-rail encoded. The B mode pair of the
/// parametric state is relabeled (↑ ↦ ↓, ↓ ↦ −↑) so that its one-pair term
/// is the singlet. Alice registers Ψ⁻ only on a coincidence: exactly one
/// photon in the V modes and one in the A modes, in the dual-rail Ψ⁻.
pub fn swap_with_parametric(
    amps: ParametricAmplitudes,
    source_vc: &QuantumState,
) -> Result<ParametricSwap> {
    check_two_qubit(source_vc, "source_VC")?;
    if amps.c1().norm_sqr() < ZERO_PROB {
        return Err(Error::ZeroProbability(amps.c1().norm_sqr()));
    }
    let vc = dual_rail_encode_all(source_vc)?;
    let ab = relabel_pair(&parametric_state(amps), 2)?;
    // modes: V+ V- C+ C- A+ A- B+ B-  ->  V+ V- A+ A- C+ C- B+ B-
    let joint = vc.tensor(&ab)?.reorder(&[0, 1, 4, 5, 2, 3, 6, 7])?;
    let bell = dual_rail_encode_all(&bell_state(BellKind::PsiMinus))?;
    let proj = bell.rho().kron(&ComplexMatrix::identity(16));
    let (probability, post) = joint.condition(&proj)?;
    let fock_state = post.partial_trace(&[4, 5, 6, 7])?;
    let b_number =
        crate::linalg::embed_operator_span(fock_state.dims(), &pair_number_operator(), 2, 2)?;
    let b_photon_number = fock_state.expectation(&b_number)?;
    let (_, qubit_state) = dual_rail_decode(&fock_state)?;
    Ok(ParametricSwap {
        probability,
        fock_state,
        qubit_state,
        b_photon_number,
    })
}
