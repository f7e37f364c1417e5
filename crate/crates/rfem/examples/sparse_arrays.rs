//! Sparse layouts, focal-plane efficiency and beam squint.

use rfem::array::{
    average_sidelobe_level, beam_squint, fpa_efficiency, sparse_layout, steered_excitation, SparseKind,
    FPA_DEFAULT_PSI0,
};

fn main() -> rfem::Result<()> {
    let f = 1e9;
    let lam = 299_792_458.0 / f;
    for (name, kind) in [
        ("sunflower", SparseKind::Sunflower { avg_spacing: 2.0 * lam }),
        ("random", SparseKind::Random { avg_spacing: 2.0 * lam, seed: 3 }),
    ] {
        let s = sparse_layout(kind, 1000)?;
        let a = steered_excitation(&s.layout, &vec![1.0; 1000], 0.0, 0.0, f)?;
        let avg = average_sidelobe_level(&s.layout, &a, f, 0.0, 0.0, 0.05, 4000, 1)?;
        println!("{name:>10}: predicted {:.1} dB, sampled {:.2} dB", s.predicted_sll_db, 10.0 * avg.log10());
    }

    println!();
    for r in [0.25, 0.5, 1.0, 2.0] {
        println!("focal-plane efficiency within {r} lambda: {:.3}", fpa_efficiency(r * lam, f, FPA_DEFAULT_PSI0)?);
    }

    let sq = beam_squint(30f64.to_radians().sin(), 10e9, 12e9)?;
    println!("\n30 deg beam steered at 10 GHz, seen at 12 GHz: {:?}", sq.theta_deg);
    Ok(())
}
