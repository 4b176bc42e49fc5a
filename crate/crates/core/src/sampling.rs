//! Random quantum states for property sweeps.
//!
//! Pure states are Haar distributed (normalized complex Gaussian vectors).
//! Mixed states come from depolarizing a pure state or from tracing out a
//! Haar-random purification.

use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::linalg::{ComplexMatrix, QuantumState, C64};

/// Depolarizing levels mixed into random test states.
pub const DEPOLARIZING_LEVELS: [f64; 3] = [0.0, 0.3, 0.7];

pub fn haar_amplitudes<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Vec<C64> {
    let mut v: Vec<C64> = (0..dim)
        .map(|_| {
            let re: f64 = StandardNormal.sample(rng);
            let im: f64 = StandardNormal.sample(rng);
            C64::new(re, im)
        })
        .collect();
    let norm = v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    for a in &mut v {
        *a /= norm;
    }
    v
}

pub fn haar_pure_state<R: Rng + ?Sized>(rng: &mut R, dims: Vec<usize>) -> QuantumState {
    let dim = dims.iter().product();
    QuantumState::from_pure(dims, &haar_amplitudes(rng, dim)).expect("Haar vector is normalized")
}

/// (1 − level)·ρ + level·I/d.
pub fn depolarize(state: &QuantumState, level: f64) -> QuantumState {
    let d = state.dim();
    let noise = ComplexMatrix::identity(d).scale_real(level / d as f64);
    let rho = &state.rho().scale_real(1.0 - level) + &noise;
    QuantumState::trusted(state.dims().to_vec(), rho)
}

/// Haar pure qubit mixed with depolarizing noise at a randomly chosen level
/// from [`DEPOLARIZING_LEVELS`].
pub fn random_qubit_state<R: Rng + ?Sized>(rng: &mut R) -> QuantumState {
    let pure = haar_pure_state(rng, vec![2]);
    let level = DEPOLARIZING_LEVELS[rng.random_range(0..DEPOLARIZING_LEVELS.len())];
    depolarize(&pure, level)
}

/// Random state supported on the span of the listed basis vectors: a Haar
/// pure state on the subspace, depolarized within it.
pub fn random_state_in_subspace<R: Rng + ?Sized>(
    rng: &mut R,
    dims: Vec<usize>,
    basis: &[usize],
) -> QuantumState {
    let total: usize = dims.iter().product();
    let k = basis.len();
    let amps = haar_amplitudes(rng, k);
    let level = DEPOLARIZING_LEVELS[rng.random_range(0..DEPOLARIZING_LEVELS.len())];
    let mut rho = ComplexMatrix::zeros(total, total);
    for (i, &bi) in basis.iter().enumerate() {
        for (j, &bj) in basis.iter().enumerate() {
            let mut v = amps[i] * amps[j].conj() * (1.0 - level);
            if i == j {
                v += C64::new(level / k as f64, 0.0);
            }
            rho.set(bi, bj, v);
        }
    }
    QuantumState::trusted(dims, rho)
}

/// Rank-`rank` mixed state: partial trace of a Haar-random purification.
pub fn random_mixed_state<R: Rng + ?Sized>(
    rng: &mut R,
    dims: Vec<usize>,
    rank: usize,
) -> QuantumState {
    let mut full_dims = dims.clone();
    full_dims.push(rank.max(1));
    let keep: Vec<usize> = (0..dims.len()).collect();
    haar_pure_state(rng, full_dims)
        .partial_trace(&keep)
        .expect("keep set is nonempty")
}

/// Separable two-qubit state: a mixture of 1 to `max_terms` products of
/// random single-qubit states with random weights.
pub fn random_separable_two_qubit<R: Rng + ?Sized>(rng: &mut R, max_terms: usize) -> QuantumState {
    let terms = rng.random_range(1..=max_terms.max(1));
    let raw: Vec<f64> = (0..terms).map(|_| rng.random::<f64>() + 1e-3).collect();
    let total: f64 = raw.iter().sum();
    let mut rho = ComplexMatrix::zeros(4, 4);
    for w in raw {
        let a = random_qubit_state(rng);
        let b = random_qubit_state(rng);
        let prod = a.tensor(&b).expect("4 ≤ cap");
        rho = &rho + &prod.rho().scale_real(w / total);
    }
    QuantumState::trusted(vec![2, 2], rho)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    #[test]
    fn generated_states_are_valid() {
        let mut rng = ChaCha20Rng::seed_from_u64(3);
        for _ in 0..20 {
            random_qubit_state(&mut rng).validate().unwrap();
            haar_pure_state(&mut rng, vec![2, 2, 2]).validate().unwrap();
            random_mixed_state(&mut rng, vec![2, 2], 2)
                .validate()
                .unwrap();
            random_separable_two_qubit(&mut rng, 8).validate().unwrap();
            random_state_in_subspace(&mut rng, vec![2, 2], &[0, 1, 2])
                .validate()
                .unwrap();
        }
    }

    #[test]
    fn mixed_state_rank() {
        let mut rng = ChaCha20Rng::seed_from_u64(4);
        let s = random_mixed_state(&mut rng, vec![2, 2], 2);
        let vals = s.rho().hermitian_eigenvalues();
        assert!(vals[0].abs() < 1e-12 && vals[1].abs() < 1e-12);
        assert!(vals[2] > 1e-6);
    }
}
