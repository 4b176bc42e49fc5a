//! Named quantum states: Bell pairs, Werner mixtures, dual-rail photonic
//! encodings and the four-mode parametric-amplifier state.
//!
//! Fock modes are truncated at one photon, so each mode is a two-level
//! subsystem with index 0 = vacuum and 1 = one photon. A dual-rail qubit
//! occupies the mode pair (a₊, a₋) with |↑⟩ = |1,0⟩ and |↓⟩ = |0,1⟩.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{argument, Error, Result};
use crate::linalg::{cr, embed_operator, embed_operator_span, ComplexMatrix, QuantumState, C64};

/// The four maximally entangled two-qubit states.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BellKind {
    PsiMinus,
    PsiPlus,
    PhiMinus,
    PhiPlus,
}

impl BellKind {
    pub const ALL: [BellKind; 4] = [
        BellKind::PsiMinus,
        BellKind::PsiPlus,
        BellKind::PhiMinus,
        BellKind::PhiPlus,
    ];

    /// Amplitudes in the basis |↑↑⟩, |↑↓⟩, |↓↑⟩, |↓↓⟩.
    pub fn amplitudes(self) -> [C64; 4] {
        let s = FRAC_1_SQRT_2;
        let z = cr(0.0);
        match self {
            BellKind::PsiMinus => [z, cr(s), cr(-s), z],
            BellKind::PsiPlus => [z, cr(s), cr(s), z],
            BellKind::PhiMinus => [cr(s), z, z, cr(-s)],
            BellKind::PhiPlus => [cr(s), z, z, cr(s)],
        }
    }

    pub fn projector(self) -> ComplexMatrix {
        ComplexMatrix::projector(&self.amplitudes())
    }
}

impl fmt::Display for BellKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            BellKind::PsiMinus => "psi-",
            BellKind::PsiPlus => "psi+",
            BellKind::PhiMinus => "phi-",
            BellKind::PhiPlus => "phi+",
        };
        f.write_str(s)
    }
}

impl FromStr for BellKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace(['_', ' '], "").as_str() {
            "psi-" | "psiminus" | "singlet" => Ok(BellKind::PsiMinus),
            "psi+" | "psiplus" => Ok(BellKind::PsiPlus),
            "phi-" | "phiminus" => Ok(BellKind::PhiMinus),
            "phi+" | "phiplus" => Ok(BellKind::PhiPlus),
            other => argument(format!("unknown Bell state '{other}'")),
        }
    }
}

pub fn bell_state(kind: BellKind) -> QuantumState {
    QuantumState::from_pure(vec![2, 2], &kind.amplitudes()).expect("Bell amplitudes are normalized")
}

/// The spin singlet (|↑↓⟩ − |↓↑⟩)/√2.
pub fn singlet() -> QuantumState {
    bell_state(BellKind::PsiMinus)
}

/// (1 − p_s)·I/4 + p_s·|ψ_S⟩⟨ψ_S| with ψ_S the singlet.
pub fn werner_state(p_s: f64) -> Result<QuantumState> {
    if !(0.0..=1.0).contains(&p_s) {
        return argument(format!("singlet weight p_s = {p_s} outside [0, 1]"));
    }
    let noise = ComplexMatrix::identity(4).scale_real((1.0 - p_s) / 4.0);
    let rho = &noise + &BellKind::PsiMinus.projector().scale_real(p_s);
    QuantumState::new(vec![2, 2], rho)
}

/// Single-qubit state from a Bloch vector with |r| ≤ 1.
pub fn qubit_from_bloch(r: [f64; 3]) -> Result<QuantumState> {
    let norm2 = r.iter().map(|x| x * x).sum::<f64>();
    if norm2 > 1.0 + 1e-12 {
        return argument("Bloch vector longer than 1");
    }
    let rho = ComplexMatrix::from_row_slice(
        2,
        2,
        &[
            cr(0.5 * (1.0 + r[2])),
            C64::new(0.5 * r[0], -0.5 * r[1]),
            C64::new(0.5 * r[0], 0.5 * r[1]),
            cr(0.5 * (1.0 - r[2])),
        ],
    )?;
    QuantumState::new(vec![2], rho)
}

/// Isometry from a qubit to the (a₊, a₋) mode pair: |↑⟩ ↦ |1,0⟩, |↓⟩ ↦ |0,1⟩.
fn dual_rail_isometry() -> ComplexMatrix {
    let mut v = ComplexMatrix::zeros(4, 2);
    v.set(2, 0, cr(1.0));
    v.set(1, 1, cr(1.0));
    v
}

/// Encodes one qubit into two single-photon-truncated Fock modes.
pub fn dual_rail_encode(qubit_state: &QuantumState) -> Result<QuantumState> {
    if qubit_state.dims() != [2] {
        return argument("dual-rail encoding expects a single-qubit state");
    }
    dual_rail_encode_all(qubit_state)
}

/// Encodes every qubit of a multi-qubit state; qubit k becomes modes
/// (2k, 2k+1).
pub fn dual_rail_encode_all(state: &QuantumState) -> Result<QuantumState> {
    if state.dims().iter().any(|&d| d != 2) {
        return argument("dual-rail encoding expects qubit subsystems");
    }
    let n = state.num_subsystems();
    let mut w = ComplexMatrix::identity(1);
    for _ in 0..n {
        w = w.kron(&dual_rail_isometry());
    }
    let rho = &(&w * state.rho()) * &w.dagger();
    Ok(QuantumState::trusted(vec![2; 2 * n], rho))
}

/// Projects every mode pair onto its one-photon subspace and reads it back as
/// a qubit. Returns the weight of that subspace and the normalized qubit
/// state.
pub fn dual_rail_decode(state: &QuantumState) -> Result<(f64, QuantumState)> {
    let n_modes = state.num_subsystems();
    if !n_modes.is_multiple_of(2) || state.dims().iter().any(|&d| d != 2) {
        return argument("dual-rail decoding expects an even number of two-level modes");
    }
    let mut w = ComplexMatrix::identity(1);
    for _ in 0..n_modes / 2 {
        w = w.kron(&dual_rail_isometry());
    }
    let rho = &(&w.dagger() * state.rho()) * &w;
    let weight = rho.trace().re;
    if weight < crate::linalg::ZERO_PROB {
        return Err(Error::ZeroProbability(weight));
    }
    Ok((
        weight,
        QuantumState::trusted(vec![2; n_modes / 2], rho.scale_real(1.0 / weight)),
    ))
}

/// Amplitudes of the vacuum and one-pair terms of the parametric state.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParametricAmplitudes {
    c0: C64,
    c1: C64,
}

impl ParametricAmplitudes {
    pub fn new(c0: C64, c1: C64) -> Result<Self> {
        let norm = c0.norm_sqr() + c1.norm_sqr();
        if (norm - 1.0).abs() > 1e-12 {
            return argument(format!("|c0|² + |c1|² = {norm}, expected 1"));
        }
        Ok(Self { c0, c1 })
    }

    /// Real amplitudes with c₁ = √(1 − c₀²).
    pub fn from_vacuum_amplitude(c0: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&c0) {
            return argument(format!("vacuum amplitude {c0} outside [0, 1]"));
        }
        Self::new(cr(c0), cr((1.0 - c0 * c0).max(0.0).sqrt()))
    }

    pub fn c0(&self) -> C64 {
        self.c0
    }

    pub fn c1(&self) -> C64 {
        self.c1
    }
}

/// c₀|0000⟩ + (c₁/√2)(|1010⟩ + |0101⟩) over modes (a₊, a₋, b₊, b₋).
pub fn parametric_state(amps: ParametricAmplitudes) -> QuantumState {
    let mut psi = vec![cr(0.0); 16];
    psi[0] = amps.c0;
    psi[0b1010] = amps.c1 * FRAC_1_SQRT_2;
    psi[0b0101] = amps.c1 * FRAC_1_SQRT_2;
    QuantumState::from_pure(vec![2, 2, 2, 2], &psi).expect("normalized by construction")
}

/// Qubit form of the polarization relabeling ↑ ↦ ↓, ↓ ↦ −↑.
pub fn relabel_qubit_matrix() -> ComplexMatrix {
    ComplexMatrix::from_row_slice(2, 2, &[cr(0.0), cr(-1.0), cr(1.0), cr(0.0)]).expect("2x2")
}

/// Fock form of the same relabeling on a mode pair: a₊† ↦ a₋†, a₋† ↦ −a₊†.
pub fn relabel_pair_matrix() -> ComplexMatrix {
    // basis |n₊ n₋⟩: |00⟩, |01⟩, |10⟩, |11⟩
    let mut u = ComplexMatrix::zeros(4, 4);
    u.set(0, 0, cr(1.0));
    u.set(1, 2, cr(1.0)); // |10⟩ ↦ |01⟩
    u.set(2, 1, cr(-1.0)); // |01⟩ ↦ −|10⟩
    u.set(3, 3, cr(-1.0));
    u
}

/// Applies the relabeling to qubit `index`. Maps the same-polarization pair
/// (|↑↑⟩ + |↓↓⟩)/√2 onto the singlet when applied to the second qubit.
pub fn relabel_qubit(state: &QuantumState, index: usize) -> Result<QuantumState> {
    let u = embed_operator(state.dims(), &relabel_qubit_matrix(), index)?;
    state.apply_unitary(&u)
}

/// Applies the relabeling to the mode pair starting at `first_mode`.
pub fn relabel_pair(state: &QuantumState, first_mode: usize) -> Result<QuantumState> {
    let u = embed_operator_span(state.dims(), &relabel_pair_matrix(), first_mode, 2)?;
    state.apply_unitary(&u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::observables::{pauli, SpinDirection};

    fn close(a: &QuantumState, b: &QuantumState) -> f64 {
        a.rho().max_abs_diff(b.rho())
    }

    #[test]
    fn singlet_anticorrelated_in_every_axis() {
        let s = singlet();
        for d in SpinDirection::AXES {
            let p = pauli(d);
            let v = s.expectation(&p.kron(&p)).unwrap();
            assert!((v + 1.0).abs() < 1e-12, "{d:?}: {v}");
        }
    }

    #[test]
    fn bell_states_are_maximally_entangled_and_orthogonal() {
        let mixed = QuantumState::maximally_mixed(vec![2]).unwrap();
        for kind in BellKind::ALL {
            let s = bell_state(kind);
            assert!(close(&s.partial_trace(&[0]).unwrap(), &mixed) < 1e-12);
            assert!(close(&s.partial_trace(&[1]).unwrap(), &mixed) < 1e-12);
            for other in BellKind::ALL {
                let overlap: C64 = kind
                    .amplitudes()
                    .iter()
                    .zip(other.amplitudes())
                    .map(|(a, b)| a.conj() * b)
                    .sum();
                let expected = if kind == other { 1.0 } else { 0.0 };
                assert!((overlap.norm() - expected).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn werner_endpoints() {
        assert!(close(&werner_state(1.0).unwrap(), &singlet()) < 1e-15);
        let mixed = QuantumState::maximally_mixed(vec![2, 2]).unwrap();
        assert!(close(&werner_state(0.0).unwrap(), &mixed) < 1e-15);
    }

    #[test]
    fn werner_zz_correlation_is_linear() {
        let z = pauli(SpinDirection::Z);
        let v = werner_state(0.5).unwrap().expectation(&z.kron(&z)).unwrap();
        assert!((v + 0.5).abs() < 1e-12);
    }

    #[test]
    fn werner_rejects_out_of_range() {
        assert!(werner_state(-0.1).is_err());
        assert!(werner_state(1.01).is_err());
    }

    #[test]
    fn werner_marginals_are_mixed() {
        let mixed = QuantumState::maximally_mixed(vec![2]).unwrap();
        for p in [0.0, 0.3, 0.77, 1.0] {
            let w = werner_state(p).unwrap();
            assert!(close(&w.partial_trace(&[0]).unwrap(), &mixed) < 1e-12);
        }
    }

    #[test]
    fn dual_rail_basis_states() {
        let up = QuantumState::basis(vec![2], &[0]).unwrap();
        let enc = dual_rail_encode(&up).unwrap();
        let expected = QuantumState::basis(vec![2, 2], &[1, 0]).unwrap();
        assert!(close(&enc, &expected) < 1e-15);

        let mixed = dual_rail_encode(&QuantumState::maximally_mixed(vec![2]).unwrap()).unwrap();
        let mut diag = [0.0; 4];
        diag[1] = 0.5;
        diag[2] = 0.5;
        assert!(
            mixed
                .rho()
                .max_abs_diff(&ComplexMatrix::from_real_diagonal(&diag))
                < 1e-15
        );
    }

    #[test]
    fn dual_rail_has_one_photon() {
        let n = ComplexMatrix::from_real_diagonal(&[0.0, 1.0, 1.0, 2.0]);
        let enc = dual_rail_encode(&qubit_from_bloch([0.3, -0.2, 0.5]).unwrap()).unwrap();
        assert!((enc.expectation(&n).unwrap() - 1.0).abs() < 1e-15);
        enc.validate().unwrap();
    }

    #[test]
    fn dual_rail_round_trip() {
        let q = qubit_from_bloch([0.1, 0.6, -0.3]).unwrap();
        let (w, back) = dual_rail_decode(&dual_rail_encode(&q).unwrap()).unwrap();
        assert!((w - 1.0).abs() < 1e-14);
        assert!(close(&back, &q) < 1e-14);
    }

    #[test]
    fn parametric_pair_is_same_polarization_bell_pair() {
        let amps = ParametricAmplitudes::new(cr(0.0), cr(1.0)).unwrap();
        let p = parametric_state(amps);
        let phi_plus = dual_rail_encode_all(&bell_state(BellKind::PhiPlus)).unwrap();
        assert!(close(&p, &phi_plus) < 1e-15);

        let relabeled = relabel_pair(&p, 2).unwrap();
        let singlet_pair = dual_rail_encode_all(&singlet()).unwrap();
        assert!(close(&relabeled, &singlet_pair) < 1e-15);
    }

    #[test]
    fn relabeling_bridge_qubit_and_fock_agree() {
        let q = relabel_qubit(&bell_state(BellKind::PhiPlus), 1).unwrap();
        assert!(close(&q, &singlet()) < 1e-15);
    }

    #[test]
    fn parametric_vacuum_and_number() {
        let vac = parametric_state(ParametricAmplitudes::new(cr(1.0), cr(0.0)).unwrap());
        let expected = QuantumState::basis(vec![2, 2, 2, 2], &[0, 0, 0, 0]).unwrap();
        assert!(close(&vac, &expected) < 1e-15);

        let amps = ParametricAmplitudes::from_vacuum_amplitude(0.6).unwrap();
        let s = parametric_state(amps);
        let n_a = &crate::linalg::embed_operator(s.dims(), &number_op(), 0).unwrap()
            + &crate::linalg::embed_operator(s.dims(), &number_op(), 1).unwrap();
        assert!((s.expectation(&n_a).unwrap() - amps.c1().norm_sqr()).abs() < 1e-12);
    }

    #[test]
    fn parametric_normalization_enforced() {
        assert!(ParametricAmplitudes::new(cr(0.5), cr(0.5)).is_err());
        assert!(ParametricAmplitudes::from_vacuum_amplitude(1.5).is_err());
    }

    fn number_op() -> ComplexMatrix {
        ComplexMatrix::from_real_diagonal(&[0.0, 1.0])
    }
}
