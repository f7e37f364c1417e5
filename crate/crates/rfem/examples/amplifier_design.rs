//! Gains, stability and noise of a transistor from its S parameters.

use rfem::amplifier::{
    constant_gain_circles, noise_cascade, noise_circle, power_gains, stability_circles, stability_factors,
    NoiseSpec, Side, Stage,
};
use rfem::numerics::{polar_deg, ComplexMatrix, C64};

fn main() -> rfem::Result<()> {
    let s = ComplexMatrix::from_rows(&[
        vec![polar_deg(0.87, -28.0), polar_deg(0.01, 76.0)],
        vec![polar_deg(26.73, 159.0), polar_deg(0.96, -16.0)],
    ])?;
    let g = power_gains(&s, C64::new(23.0 / 123.0, 0.0), C64::new(0.0, 0.0))?;
    println!("G = {:.2} dB, Ga = {:.2} dB, Gt = {:.2} dB", g.g_del_db(), g.g_av_db(), g.g_t_db());
    println!("Ms = {:.2} dB, Ml = {:.2} dB", g.m_s_db(), g.m_l_db());

    let st = stability_factors(&s)?;
    println!("K = {:.4}, |Delta| = {:.4}, mu = {:.4}", st.k, st.delta.norm(), st.mu);
    println!("{:?}", stability_circles(&s)?);

    for c in constant_gain_circles(&s, Side::Source, &[0.0, 2.0, 4.0])? {
        println!("source gain circle: center {:.3}, radius {:.3}", c.center, c.radius);
    }

    let spec = NoiseSpec::from_z_opt(0.57, 6.0, C64::new(100.0, 5.2), 50.0)?;
    let nc = noise_circle(&spec, 10f64.powf(0.1))?;
    println!("1 dB noise circle: N = {:.3}, center {:.4}, radius {:.3}", nc.n, nc.circle.center, nc.circle.radius);

    let r = noise_cascade(&[Stage::from_db(15.0, 1.6), Stage::from_db(25.0, 4.0)], 300.0)?;
    println!("cascade NF = {:.2} dB, Te = {:.1} K", r.nf_total_db, r.t_e_total);
    Ok(())
}
