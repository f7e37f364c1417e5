//! Tapered and steered linear arrays: beam width, sidelobes, directivity and taper efficiency.

use rfem::array::{
    cut_metrics, directivity_taper_efficiency, grating_lobes, schelkunov_zeros, steered_excitation, taper_generate,
    zero_direction, ArrayLayout, Taper,
};

fn main() -> rfem::Result<()> {
    let f = 1e9;
    let lam = 299_792_458.0 / f;
    let k = 16;
    let layout = ArrayLayout::linear(k, lam / 2.0)?;
    let tapers = [
        ("uniform", Taper::Uniform),
        ("cosine", Taper::CosinePedestal { m: 1, h: 0.0 }),
        ("cosine^2", Taper::CosinePedestal { m: 2, h: 0.0 }),
        ("Taylor 30 dB", Taper::taylor(30.0)),
        ("Chebyshev 30 dB", Taper::Chebyshev { sll_db: 30.0 }),
    ];
    for (name, t) in tapers {
        let w = taper_generate(t, k)?;
        let a = steered_excitation(&layout, &w, 0.0, 0.0, f)?;
        let m = cut_metrics(&layout, &a, 0.0, 18001, f)?;
        let r = directivity_taper_efficiency(&layout, &a, f)?;
        println!(
            "{name:>16}: HPBW {:.2} deg, SLL {:.2} dB, D {:.2} dB, eta {:.3}",
            m.hpbw_deg.unwrap_or(f64::NAN),
            m.first_sidelobe_db.unwrap_or(f64::NAN),
            r.d_db,
            r.eta_tap
        );
    }

    let a = steered_excitation(&layout, &vec![1.0; k], 30f64.to_radians().sin(), 0.0, f)?;
    let m = cut_metrics(&layout, &a, 0.0, 18001, f)?;
    println!("\nscanned to 30 deg: peak {:.2} deg, HPBW {:.2} deg", m.peak_angle_deg, m.hpbw_deg.unwrap_or(f64::NAN));

    let zeros = schelkunov_zeros(&taper_generate(Taper::Uniform, 8)?.iter().map(|&x| x.into()).collect::<Vec<_>>())?;
    let dirs: Vec<String> =
        zeros.iter().filter_map(|z| zero_direction(*z, lam / 2.0, f)).map(|t| format!("{:.1}", t.to_degrees())).collect();
    println!("8-element null directions: {}", dirs.join(", "));

    for d in [0.5, 0.6, 1.0] {
        println!("d = {d} lambda scanned to 90 deg: {} grating lobe(s)", grating_lobes(d, None, 1.0, 0.0)?.len());
    }
    Ok(())
}
