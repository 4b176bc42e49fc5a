//! Swapping with a parametric source that mostly emits vacuum. Conditioning
//! on a coincidence removes the vacuum term entirely.
use eprsteer::states::{singlet, ParametricAmplitudes};
use eprsteer::teleport::{fidelity, swap_with_parametric};

fn main() -> eprsteer::Result<()> {
    println!(
        "{:>6} {:>12} {:>12} {:>10} {:>10}",
        "c0", "P(coinc)", "|c1|^2/4", "<n_B>", "F"
    );
    for c0 in [0.0, 0.5, 0.9, 0.99] {
        let amps = ParametricAmplitudes::from_vacuum_amplitude(c0)?;
        let s = swap_with_parametric(amps, &singlet())?;
        println!(
            "{c0:>6.2} {:>12.6} {:>12.6} {:>10.6} {:>10.6}",
            s.probability,
            amps.c1().norm_sqr() / 4.0,
            s.b_photon_number,
            fidelity(&s.qubit_state, &singlet())?
        );
    }
    Ok(())
}
