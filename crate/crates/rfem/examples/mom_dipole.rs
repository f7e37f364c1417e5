//! Thin-wire dipole by the method of moments: current, impedance and resonance.

use rfem::mom::{convergence_report, solve_currents, sinusoid_shape_error, WireProblem};
use rfem::numerics::QuadratureSpec;

fn main() -> rfem::Result<()> {
    let f = 300e6;
    let lam = 299_792_458.0 / f;
    let spec = QuadratureSpec::default();
    let p = WireProblem::new(lam / 4.0, lam / 1000.0, f, 41);
    let sol = solve_currents(&p, &spec)?;
    println!("half-wave, N = 41: Zin = {:.2} ohm, shape error {:.3}", sol.z_in, sinusoid_shape_error(&sol));

    println!("\nlength sweep, N = 161:");
    for i in 0..=6 {
        let l = 0.44 + 0.01 * i as f64;
        let s = solve_currents(&WireProblem::new(l * lam / 2.0, lam / 1000.0, f, 161), &spec)?;
        println!("  2l = {l:.2} lambda: Zin = {:.2}", s.z_in);
    }

    println!("\nconvergence at 2l = 0.47 lambda:");
    for row in convergence_report(&WireProblem::new(0.235 * lam, lam / 1000.0, f, 11), &[11, 21, 41, 81, 161], &spec)? {
        println!("  N = {:3}: Zin = {:.2}  change {:?}", row.n_segments, row.z_in, row.delta);
    }
    Ok(())
}
