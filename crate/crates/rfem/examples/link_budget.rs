//! Friis range of a short-range radio and a monostatic radar.

use rfem::radiator::{gain_from_effective_aperture, link_budget, LinkMode, LinkSpec};

fn main() -> rfem::Result<()> {
    let radio = LinkSpec {
        p_t: 1e-3,
        g_t: 1.0,
        g_r: 1.0,
        freq: 2.44e9,
        range: 10.0,
        sigma_rcs: 1.0,
        p_r_min: 1e-10,
        bandwidth: 1e6,
        nf: 1.0,
    };
    let r = link_budget(&radio, LinkMode::Radio)?;
    println!("radio: Pr(10 m) = {:.3e} W, r_max = {:.2} m, SNR = {:.1} dB", r.p_r, r.r_max, r.snr_db);

    let g = gain_from_effective_aperture(1.0, 10e9);
    let radar = LinkSpec { p_t: 1e4, g_t: g, g_r: g, freq: 10e9, p_r_min: 1e-13, ..radio };
    let r = link_budget(&radar, LinkMode::Radar)?;
    println!("radar: G = {:.2} dB, r_max = {:.2} km", 10.0 * g.log10(), r.r_max / 1e3);
    Ok(())
}
