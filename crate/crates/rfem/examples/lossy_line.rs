//! Propagation on a lossy line, a quarter-wave transformer and a few chart points.

use rfem::numerics::C64;
use rfem::tline::{
    propagation_from_rlgc, quarter_wave_design, reflection_quantities, smith_from_z, Impedance, Line, Rlgc,
};

fn main() -> rfem::Result<()> {
    let rlgc = Rlgc { r: 5.0, l: 0.2e-6, g: 0.01, c: 300e-12 };
    let p = propagation_from_rlgc(&rlgc, 500e6)?;
    println!("gamma = {:.4} /m, Z0 = {:.3} ohm, lambda = {:.4} m", p.gamma, p.z0, p.wavelength);

    let line = p.line();
    let zin = Line::new(line.gamma, line.z0)?.input_impedance(Impedance::real(100.0), 0.1)?;
    println!("Zin of 0.1 m terminated in 100 ohm: {:?}", zin);

    let q = quarter_wave_design(C64::new(100.0, 0.0), 50.0)?;
    println!("\nquarter-wave section Z1 = {:.4} ohm", q.z1);
    for (f, g) in q.sweep(&[0.5, 0.75, 1.0, 1.25, 1.5, 2.0]) {
        println!("  f/f0 = {f:.2}  |Gamma| = {g:.4}");
    }

    println!();
    for zl in [C64::new(100.0, -60.0), C64::new(25.0, 25.0), C64::new(50.0, 0.0)] {
        let r = reflection_quantities(Impedance::Finite(zl), C64::new(50.0, 0.0))?;
        let pt = smith_from_z(Impedance::Finite(zl), C64::new(50.0, 0.0))?;
        println!("ZL = {zl}: Gamma = {:.4}, VSWR = {:.3}, RL = {:.2} dB, z = {:?}", r.gamma, r.vswr, r.return_loss_db, pt.z_norm);
    }
    Ok(())
}
