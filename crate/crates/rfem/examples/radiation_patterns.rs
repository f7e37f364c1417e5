//! Directivity, radiation resistance and beam width of the analytic radiators.

use rfem::numerics::QuadratureSpec;
use rfem::radiator::{directivity, pattern_cut, pattern_metrics, radiated_power_and_rr, RadiatorModel};

fn main() -> rfem::Result<()> {
    let f = 1e9;
    let lam = 299_792_458.0 / f;
    let spec = QuadratureSpec::default();
    let models = [
        ("short dipole", RadiatorModel::ElectricDipole { i0l: 1.0 }, 0.0, 180.0),
        ("half-wave wire", RadiatorModel::ThinWire { half_length: lam / 4.0 }, 0.0, 180.0),
        ("full-wave wire", RadiatorModel::ThinWire { half_length: lam / 2.0 }, 0.0, 180.0),
        ("4x4 aperture", RadiatorModel::RectAperture { a: 4.0 * lam, b: 4.0 * lam, e0: 1.0 }, -90.0, 90.0),
        ("circular a=10, p=1", RadiatorModel::CircularAperture { radius: 10.0 * lam, taper_p: 1, e0: 1.0 }, -30.0, 30.0),
    ];
    for (name, m, a, b) in models {
        let d = directivity(&m, f, &spec)?;
        let cut = pattern_cut(&m, 0.0, a, b, 6001, f)?;
        let ang: Vec<f64> = cut.iter().map(|c| c.theta_deg).collect();
        let db: Vec<f64> = cut.iter().map(|c| c.f_db).collect();
        let pm = pattern_metrics(&ang, &db)?;
        println!(
            "{name:>20}: D = {:7.3} ({:6.2} dBi), HPBW = {:?} deg, SLL = {:?} dB",
            d.d,
            d.d_db(),
            pm.hpbw_deg.map(|x| (x * 100.0).round() / 100.0),
            pm.first_sidelobe_db.map(|x| (x * 100.0).round() / 100.0)
        );
    }
    let rr = radiated_power_and_rr(&RadiatorModel::ThinWire { half_length: lam / 4.0 }, 1.0, f, &spec)?;
    println!("half-wave radiation resistance = {:.2} ohm", rr.r_r);
    Ok(())
}
