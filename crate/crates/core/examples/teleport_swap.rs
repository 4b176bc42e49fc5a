//! Entanglement swapping: Bell-outcome branches, corrections, and the
//! certification boundary in Bob's detection efficiency.
use eprsteer::bounds::SCAN_TOL;
use eprsteer::states::{singlet, werner_state};
use eprsteer::teleport::{certification_threshold, entanglement_swap_with, teleport_signature};

fn main() -> eprsteer::Result<()> {
    for o in entanglement_swap_with(&singlet(), &werner_state(0.9)?, true)? {
        let s = o
            .conditional_state
            .as_ref()
            .map(|s| eprsteer::teleport::fidelity(s, &singlet()).unwrap());
        println!(
            "{:?}: p = {:.4}, fidelity to singlet = {:.4}",
            o.bell_outcome,
            o.probability,
            s.unwrap_or(f64::NAN)
        );
    }

    println!();
    for eta_b in [0.30, 0.34, 0.6, 1.0] {
        let r = teleport_signature(&singlet(), &singlet(), 1.0, eta_b)?;
        println!(
            "eta_B = {eta_b:.2}: certified {}, S3 = {:.4}, F = {:.4}",
            r.certified,
            r.s3(),
            r.fidelity
        );
    }
    let t = certification_threshold(&singlet(), &singlet(), 1.0, SCAN_TOL)?;
    println!("certification threshold: {:?}", t.value());
    Ok(())
}
