//! Spin observables and the lossy three-outcome measurement model.
//!
//! Two loss models are provided. [`lossy_spin_measurement`] is the POVM
//! shortcut on a bare qubit: detection with probability η, then a projective
//! spin measurement. [`loss_channel`] is the beam-splitter channel on a
//! single Fock mode; applying it to both rails of a dual-rail qubit and then
//! measuring [`schwinger_measurement`] reproduces the same statistics.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{argument, Error, Result};
use crate::linalg::{c, cr, embed_operator, ComplexMatrix, QuantumState};

/// Measurement outcomes, in the order effects are stored.
pub const OUTCOMES: [i8; 3] = [-1, 0, 1];

/// Index of an outcome value in [`OUTCOMES`].
pub fn outcome_index(outcome: i8) -> Option<usize> {
    OUTCOMES.iter().position(|&o| o == outcome)
}

/// Unit vector fixing a spin component.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpinDirection {
    x: f64,
    y: f64,
    z: f64,
}

impl SpinDirection {
    pub const X: SpinDirection = SpinDirection {
        x: 1.0,
        y: 0.0,
        z: 0.0,
    };
    pub const Y: SpinDirection = SpinDirection {
        x: 0.0,
        y: 1.0,
        z: 0.0,
    };
    pub const Z: SpinDirection = SpinDirection {
        x: 0.0,
        y: 0.0,
        z: 1.0,
    };
    pub const AXES: [SpinDirection; 3] = [Self::X, Self::Y, Self::Z];

    /// Requires ‖(x, y, z)‖ = 1 within 1e-12.
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        let norm = (x * x + y * y + z * z).sqrt();
        if (norm - 1.0).abs() > 1e-12 {
            return argument(format!(
                "direction ({x}, {y}, {z}) has norm {norm}, expected 1"
            ));
        }
        Ok(Self { x, y, z })
    }

    /// Rescales any nonzero vector to unit length.
    pub fn normalized(x: f64, y: f64, z: f64) -> Result<Self> {
        let norm = (x * x + y * y + z * z).sqrt();
        if norm.is_nan() || norm <= 1e-300 || !norm.is_finite() {
            return argument("cannot normalize a zero or non-finite direction");
        }
        Ok(Self {
            x: x / norm,
            y: y / norm,
            z: z / norm,
        })
    }

    /// Polar angle θ from +z, azimuth φ from +x.
    pub fn from_angles(theta: f64, phi: f64) -> Self {
        Self {
            x: theta.sin() * phi.cos(),
            y: theta.sin() * phi.sin(),
            z: theta.cos(),
        }
    }

    pub fn components(&self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn dot(&self, other: &SpinDirection) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn neg(&self) -> Self {
        Self {
            x: -self.x,
            y: -self.y,
            z: -self.z,
        }
    }

    /// "X", "Y", "Z" for the axes, the component triple otherwise.
    pub fn label(&self) -> String {
        for (name, axis) in ["X", "Y", "Z"].iter().zip(Self::AXES) {
            if self.dot(&axis) > 1.0 - 1e-12 {
                return (*name).to_string();
            }
        }
        format!("({:.6},{:.6},{:.6})", self.x, self.y, self.z)
    }

    /// Roughly uniform directions on the sphere (Fibonacci lattice), plus
    /// the six signed axes.
    pub fn sphere_grid(n: usize) -> Vec<SpinDirection> {
        let mut out: Vec<SpinDirection> = Self::AXES.iter().flat_map(|a| [*a, a.neg()]).collect();
        let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
        for i in 0..n {
            let z = 1.0 - 2.0 * (i as f64 + 0.5) / n as f64;
            let r = (1.0 - z * z).sqrt();
            let phi = golden * i as f64;
            out.push(SpinDirection {
                x: r * phi.cos(),
                y: r * phi.sin(),
                z,
            });
        }
        out
    }
}

impl fmt::Display for SpinDirection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl FromStr for SpinDirection {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "X" | "x" => return Ok(Self::X),
            "Y" | "y" => return Ok(Self::Y),
            "Z" | "z" => return Ok(Self::Z),
            _ => {}
        }
        let parts: Vec<f64> = s
            .trim()
            .trim_start_matches('(')
            .trim_end_matches(')')
            .split(',')
            .map(|p| p.trim().parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::Argument(format!("cannot parse direction '{s}'")))?;
        match parts.as_slice() {
            [x, y, z] => Self::normalized(*x, *y, *z),
            _ => argument(format!("direction '{s}' needs three components")),
        }
    }
}

pub fn sigma_x() -> ComplexMatrix {
    ComplexMatrix::from_row_slice(2, 2, &[cr(0.0), cr(1.0), cr(1.0), cr(0.0)]).expect("2x2")
}

pub fn sigma_y() -> ComplexMatrix {
    ComplexMatrix::from_row_slice(2, 2, &[cr(0.0), c(0.0, -1.0), c(0.0, 1.0), cr(0.0)])
        .expect("2x2")
}

pub fn sigma_z() -> ComplexMatrix {
    ComplexMatrix::from_real_diagonal(&[1.0, -1.0])
}

/// x·σ_X + y·σ_Y + z·σ_Z.
pub fn pauli(direction: SpinDirection) -> ComplexMatrix {
    let [x, y, z] = direction.components();
    let sx = sigma_x().scale_real(x);
    let sy = sigma_y().scale_real(y);
    let sz = sigma_z().scale_real(z);
    &(&sx + &sy) + &sz
}

/// Truncated single-mode annihilation operator on occupations 0..=cutoff.
fn annihilation(cutoff: usize) -> ComplexMatrix {
    let d = cutoff + 1;
    let mut a = ComplexMatrix::zeros(d, d);
    for n in 1..d {
        a.set(n - 1, n, cr((n as f64).sqrt()));
    }
    a
}

/// Schwinger spin operators of two bosonic modes (a₊, a₋), each truncated at
/// `cutoff` photons. They act exactly on every sector of total photon number
/// n ≤ cutoff.
#[derive(Clone, Debug)]
pub struct SchwingerOperators {
    pub cutoff: usize,
    pub sx: ComplexMatrix,
    pub sy: ComplexMatrix,
    pub sz: ComplexMatrix,
    pub number: ComplexMatrix,
}

impl SchwingerOperators {
    pub fn new(cutoff: usize) -> Self {
        let d = cutoff + 1;
        let id = ComplexMatrix::identity(d);
        let a = annihilation(cutoff);
        let ap = a.kron(&id);
        let am = id.kron(&a);
        let ap_dag = ap.dagger();
        let am_dag = am.dagger();
        let raise = &ap_dag * &am; // a₊†a₋
        let lower = &ap * &am_dag; // a₊a₋†
        let np = &ap_dag * &ap;
        let nm = &am_dag * &am;
        Self {
            cutoff,
            sx: &raise + &lower,
            sy: (&raise - &lower).scale(c(0.0, -1.0)),
            sz: &np - &nm,
            number: &np + &nm,
        }
    }

    pub fn spin(&self, direction: SpinDirection) -> ComplexMatrix {
        let [x, y, z] = direction.components();
        let t = &self.sx.scale_real(x) + &self.sy.scale_real(y);
        &t + &self.sz.scale_real(z)
    }

    /// S² = S_X² + S_Y² + S_Z².
    pub fn total_spin_squared(&self) -> ComplexMatrix {
        let x2 = &self.sx * &self.sx;
        let y2 = &self.sy * &self.sy;
        let z2 = &self.sz * &self.sz;
        &(&x2 + &y2) + &z2
    }

    /// Projector onto the sector with total photon number `n`.
    pub fn number_sector(&self, n: usize) -> ComplexMatrix {
        let d = self.cutoff + 1;
        let diag: Vec<f64> = (0..d * d)
            .map(|i| if i / d + i % d == n { 1.0 } else { 0.0 })
            .collect();
        ComplexMatrix::from_real_diagonal(&diag)
    }
}

/// Schwinger spin along `direction` on the two-mode space truncated at one
/// photon per mode.
pub fn schwinger(direction: SpinDirection) -> ComplexMatrix {
    SchwingerOperators::new(1).spin(direction)
}

/// Total photon number a₊†a₊ + a₋†a₋ on a one-photon-truncated mode pair.
pub fn pair_number_operator() -> ComplexMatrix {
    SchwingerOperators::new(1).number
}

/// Three-outcome spin measurement (−1, 0 = no detection, +1) together with
/// the photon-number statistics used for the loss-aware uncertainty bound.
#[derive(Clone, Debug)]
pub struct LossyObservable {
    direction: SpinDirection,
    efficiency: f64,
    effects: [ComplexMatrix; 3],
    number_effects: Vec<(u32, ComplexMatrix)>,
}

impl LossyObservable {
    fn build(
        direction: SpinDirection,
        efficiency: f64,
        effects: [ComplexMatrix; 3],
        number_effects: Vec<(u32, ComplexMatrix)>,
    ) -> Result<Self> {
        let obs = Self {
            direction,
            efficiency,
            effects,
            number_effects,
        };
        obs.check_complete()?;
        Ok(obs)
    }

    fn check_complete(&self) -> Result<()> {
        let d = self.dim();
        let mut sum = ComplexMatrix::zeros(d, d);
        for e in &self.effects {
            if e.rows() != d || !e.is_hermitian(1e-12) || e.min_eigenvalue() < -1e-12 {
                return Err(Error::Numeric(
                    "measurement effect is not a positive operator".into(),
                ));
            }
            sum = &sum + e;
        }
        if sum.max_abs_diff(&ComplexMatrix::identity(d)) > 1e-12 {
            return Err(Error::Numeric(
                "measurement effects do not sum to identity".into(),
            ));
        }
        Ok(())
    }

    pub fn direction(&self) -> SpinDirection {
        self.direction
    }

    pub fn efficiency(&self) -> f64 {
        self.efficiency
    }

    /// Dimension of the site the observable acts on.
    pub fn dim(&self) -> usize {
        self.effects[0].rows()
    }

    /// Effects paired with their outcome values, ordered −1, 0, +1.
    pub fn effects(&self) -> impl Iterator<Item = (i8, &ComplexMatrix)> {
        OUTCOMES.iter().copied().zip(self.effects.iter())
    }

    pub fn effect(&self, outcome: i8) -> Option<&ComplexMatrix> {
        outcome_index(outcome).map(|i| &self.effects[i])
    }

    /// Photon-number POVM of the site: (n, effect) pairs.
    pub fn number_effects(&self) -> &[(u32, ComplexMatrix)] {
        &self.number_effects
    }

    /// Outcome probabilities on a single-site state, ordered −1, 0, +1.
    pub fn probabilities(&self, state: &QuantumState) -> Result<[f64; 3]> {
        let mut p = [0.0; 3];
        for (slot, e) in p.iter_mut().zip(&self.effects) {
            *slot = state.expectation(e)?;
        }
        Ok(p)
    }

    /// ⟨n⟩ and ⟨n²⟩ on a single-site state.
    pub fn number_moments(&self, state: &QuantumState) -> Result<(f64, f64)> {
        let (mut m1, mut m2) = (0.0, 0.0);
        for (n, e) in &self.number_effects {
            let p = state.expectation(e)?;
            let n = *n as f64;
            m1 += n * p;
            m2 += n * n * p;
        }
        Ok((m1, m2))
    }
}

/// POVM on a qubit: E± = η·P±(direction), E₀ = (1 − η)·I.
pub fn lossy_spin_measurement(
    direction: SpinDirection,
    efficiency: f64,
) -> Result<LossyObservable> {
    if !(0.0..=1.0).contains(&efficiency) {
        return argument(format!("efficiency {efficiency} outside [0, 1]"));
    }
    let id = ComplexMatrix::identity(2);
    let s = pauli(direction);
    let plus = (&id + &s).scale_real(0.5 * efficiency);
    let minus = (&id - &s).scale_real(0.5 * efficiency);
    let none = id.scale_real(1.0 - efficiency);
    let detected = id.scale_real(efficiency);
    LossyObservable::build(
        direction,
        efficiency,
        [minus, none.clone(), plus],
        vec![(0, none), (1, detected)],
    )
}

/// Ideal projective spin measurement on a qubit (outcomes ±1 only).
pub fn projective_spin(direction: SpinDirection) -> LossyObservable {
    lossy_spin_measurement(direction, 1.0).expect("unit efficiency is valid")
}

/// Projective Schwinger spin measurement on a one-photon-truncated mode pair
/// (site dimension 4). Outcome 0 collects the vacuum and the doubly occupied
/// state; the number POVM resolves n ∈ {0, 1, 2}.
pub fn schwinger_measurement(direction: SpinDirection) -> LossyObservable {
    let ops = SchwingerOperators::new(1);
    let (vals, vecs) = ops.spin(direction).hermitian_eigen();
    let mut effects = [
        ComplexMatrix::zeros(4, 4),
        ComplexMatrix::zeros(4, 4),
        ComplexMatrix::zeros(4, 4),
    ];
    for (k, v) in vals.iter().enumerate() {
        let slot = if *v > 0.5 {
            2
        } else if *v < -0.5 {
            0
        } else {
            1
        };
        let col: Vec<_> = (0..4).map(|r| vecs.get(r, k)).collect();
        effects[slot] = &effects[slot] + &ComplexMatrix::projector(&col);
    }
    let number_effects = (0..=2u32)
        .map(|n| (n, ops.number_sector(n as usize)))
        .collect();
    LossyObservable::build(direction, 1.0, effects, number_effects)
        .expect("spectral projectors are complete")
}

/// Beam-splitter loss on a two-level Fock mode:
/// K₀ = diag(1, √η), K₁ = √(1 − η)|0⟩⟨1|.
pub fn loss_channel(
    state: &QuantumState,
    mode_index: usize,
    efficiency: f64,
) -> Result<QuantumState> {
    if mode_index >= state.num_subsystems() {
        return argument(format!(
            "mode index {mode_index} out of range (have {})",
            state.num_subsystems()
        ));
    }
    if state.dims()[mode_index] != 2 {
        return argument("loss channel expects a two-level Fock mode");
    }
    if !(0.0..=1.0).contains(&efficiency) {
        return argument(format!("efficiency {efficiency} outside [0, 1]"));
    }
    let k0 = ComplexMatrix::from_real_diagonal(&[1.0, efficiency.sqrt()]);
    let mut k1 = ComplexMatrix::zeros(2, 2);
    k1.set(0, 1, cr((1.0 - efficiency).sqrt()));
    let dims = state.dims();
    state.apply_kraus(&[
        embed_operator(dims, &k0, mode_index)?,
        embed_operator(dims, &k1, mode_index)?,
    ])
}
