//! Single-stub and lumped L-section matches for 100 - j60 ohm on a 50 ohm line.

use rfem::matching::{lumped_match_synthesize, single_stub_tuner, StubKind};
use rfem::numerics::C64;

fn main() -> rfem::Result<()> {
    let zl = C64::new(100.0, -60.0);
    for kind in [StubKind::Shorted, StubKind::Open] {
        println!("{kind:?} stubs:");
        for s in single_stub_tuner(zl, 50.0, kind)? {
            let g = s.input_impedance(zl, 50.0).gamma(C64::new(50.0, 0.0)).norm();
            println!("  d = {:.4} lambda, l = {:.4} lambda, |Gamma| = {g:.1e}", s.d, s.l);
        }
    }
    let m = lumped_match_synthesize(zl, 50.0, 1e9)?;
    println!("\nL-sections at 1 GHz:");
    for n in &m.networks {
        println!("  {:?}", n.parts);
    }
    Ok(())
}
