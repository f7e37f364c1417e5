use super::{CliError, Output, Params};
use crate::array::{
    average_sidelobe_level, beam_squint, broadened_hpbw, directivity_taper_efficiency, error_statistics,
    fpa_efficiency, fpa_focal_field, grating_lobes, max_spacing, pattern_cut, sparse_layout, steered_excitation,
    taper_generate, ArrayLayout, ErrorModel, SparseKind, Taper,
};
use crate::cli::table::{Cell, ColumnKind, Summary, Table};
use crate::mom::{convergence_report, solve_currents, sinusoid_shape_error, Testing, WireProblem};
use crate::numerics::{db10, db20, from_db10, QuadratureSpec};
use crate::radiator::{
    directivity, gain_from_effective_aperture, link_budget, microstrip_resonance, pattern_metrics,
    polarization_metrics, radiated_power_and_rr, LinkMode, LinkSpec, PatternMetrics, RadiatorModel, Sense,
};
use crate::tline::C0;

fn unknown(sub: &str, action: &str) -> CliError {
    CliError::Usage(format!("unknown action \"{action}\" for {sub}"))
}

fn opt(x: Option<f64>) -> Cell {
    match x {
        Some(v) => Cell::Real(v),
        None => Cell::Text("none".into()),
    }
}

fn metrics_summary(s: &mut Summary, m: &PatternMetrics) {
    s.add("peak_deg", m.peak_angle_deg);
    s.add("hpbw_deg", opt(m.hpbw_deg));
    s.add("first_sidelobe_db", opt(m.first_sidelobe_db));
    s.add("first_sidelobe_deg", opt(m.first_sidelobe_angle_deg));
    s.add("nulls", m.null_angles_deg.len() as f64);
}

fn radiator(p: &Params) -> Result<(RadiatorModel, f64), CliError> {
    let freq = p.f64("freq_hz")?;
    let lam = C0 / freq;
    let model = match p.choice(
        "model",
        &["dipole", "magnetic", "wire", "ground", "folded", "loop", "rect", "circular", "patch"],
    )? {
        "dipole" => RadiatorModel::ElectricDipole { i0l: p.f64("i0l_a_m")? },
        "magnetic" => RadiatorModel::MagneticDipole { m: p.f64("m_a_m2")? },
        "wire" => RadiatorModel::ThinWire { half_length: p.f64("half_length_wl")? * lam },
        "ground" => RadiatorModel::WireOverGround {
            half_length: p.f64("half_length_wl")? * lam,
            height: p.f64("height_wl")? * lam,
        },
        "folded" => RadiatorModel::FoldedDipole,
        "loop" => RadiatorModel::Loop { radius: p.f64("radius_wl")? * lam },
        "rect" => RadiatorModel::RectAperture { a: p.f64("a_wl")? * lam, b: p.f64("b_wl")? * lam, e0: 1.0 },
        "circular" => RadiatorModel::CircularAperture {
            radius: p.f64("radius_wl")? * lam,
            taper_p: p.u32("taper_p")?,
            e0: 1.0,
        },
        _ => RadiatorModel::MicrostripCircular {
            radius: p.f64("patch_radius_m")?,
            eps_r: p.f64("eps_r")?,
            height: p.f64("height_m")?,
            mode_n: p.u32("mode_n")?,
            mode_m: p.u32("mode_m")?,
        },
    };
    model.validate()?;
    Ok((model, freq))
}

pub(super) fn antenna(action: &str, p: &Params) -> Result<Output, CliError> {
    let mut s = Summary::default();
    let mut out = Output::default();
    match action {
        "pattern" => {
            let (model, freq) = radiator(p)?;
            let phi = p.f64("phi_deg")?;
            let cut = crate::radiator::pattern_cut(
                &model,
                phi,
                p.f64("theta_start_deg")?,
                p.f64("theta_stop_deg")?,
                p.usize("points")?,
                freq,
            )?;
            let angles: Vec<f64> = cut.iter().map(|c| c.theta_deg).collect();
            let db: Vec<f64> = cut.iter().map(|c| c.f_db).collect();
            let m = pattern_metrics(&angles, &db)?;
            if m.partial {
                out.warnings.push("a -3 dB crossing lies outside the cut".into());
            }
            metrics_summary(&mut s, &m);
            let mut t = Table::new(&[
                ("theta_deg", ColumnKind::Real),
                ("phi_deg", ColumnKind::Real),
                ("f_db", ColumnKind::Real),
                ("e_theta_mag", ColumnKind::Real),
                ("e_theta_deg", ColumnKind::Real),
                ("e_phi_mag", ColumnKind::Real),
                ("e_phi_deg", ColumnKind::Real),
            ]);
            for c in &cut {
                t.push(vec![
                    c.theta_deg.into(),
                    c.phi_deg.into(),
                    c.f_db.into(),
                    c.e_theta.norm().into(),
                    c.e_theta.arg().to_degrees().into(),
                    c.e_phi.norm().into(),
                    c.e_phi.arg().to_degrees().into(),
                ]);
            }
            out.table = Some(t);
        }
        "directivity" => {
            let (model, freq) = radiator(p)?;
            let spec = QuadratureSpec::default();
            let d = directivity(&model, freq, &spec)?;
            s.add("directivity", d.d);
            s.add("directivity_db", d.d_db());
            s.add("peak_theta_deg", d.peak_theta.to_degrees());
            s.add("peak_phi_deg", d.peak_phi.to_degrees());
            let pr = radiated_power_and_rr(&model, 1.0, freq, &spec)?;
            s.add("radiated_power_w", pr.p_t);
            s.add("radiation_resistance_ohm", pr.r_r);
        }
        "patch" => {
            let r = microstrip_resonance(
                p.f64("radius_m")?,
                p.f64("eps_r")?,
                p.f64("height_m")?,
                p.u32("mode_n")?,
                p.u32("mode_m")?,
            )?;
            s.add("f_nm_hz", r.f_nm);
            s.add("effective_radius_m", r.effective_radius);
            s.add("f_nm_effective_hz", r.f_nm_effective);
        }
        "polarization" => {
            let pol = polarization_metrics(p.complex("e_theta")?, p.complex("e_phi")?)?;
            s.add("e_l", pol.e_l);
            s.add("e_r", pol.e_r);
            s.add("axial_ratio", pol.axial_ratio);
            s.add("axial_ratio_db", db20(pol.axial_ratio));
            let sense = match pol.sense {
                Sense::Lhcp => "lhcp",
                Sense::Rhcp => "rhcp",
                Sense::Linear => "linear",
                Sense::Elliptic(crate::radiator::Hand::Left) => "left_elliptic",
                Sense::Elliptic(crate::radiator::Hand::Right) => "right_elliptic",
            };
            s.add("sense", sense);
        }
        a => return Err(unknown("antenna", a)),
    }
    out.summary = s;
    Ok(out)
}

fn wire(p: &Params, length_wl: f64, segments: usize) -> Result<WireProblem, CliError> {
    let freq = p.f64("freq_hz")?;
    let lam = C0 / freq;
    let mut w = WireProblem::new(length_wl * lam / 2.0, p.f64("radius_wl")? * lam, freq, segments);
    w.testing = match p.choice("testing", &["galerkin", "collocation"])? {
        "galerkin" => Testing::Galerkin,
        _ => Testing::Collocation,
    };
    Ok(w)
}

pub(super) fn mom(action: &str, p: &Params) -> Result<Output, CliError> {
    let spec = QuadratureSpec::default();
    let mut s = Summary::default();
    let mut out = Output::default();
    match action {
        "solve" => {
            let w = wire(p, p.f64("length_wl")?, p.usize("segments")?)?;
            let sol = solve_currents(&w, &spec)?;
            s.add("z_in_ohm", sol.z_in);
            s.add("input_power_w", sol.input_power());
            s.add("shape_error", sinusoid_shape_error(&sol));
            let lam = w.wavelength();
            let mut t = Table::new(&[("z_wl", ColumnKind::Real), ("current_a", ColumnKind::Complex)]);
            for (z, i) in sol.segment_centers.iter().zip(&sol.currents) {
                t.push(vec![(z / lam).into(), (*i).into()]);
            }
            out.warnings = sol.warnings;
            out.table = Some(t);
        }
        "sweep" => {
            let n = p.usize("points")?;
            let (a, b) = (p.f64("length_start_wl")?, p.f64("length_stop_wl")?);
            let mut t = Table::new(&[("length_wl", ColumnKind::Real), ("z_in_ohm", ColumnKind::Complex)]);
            let mut prev: Option<f64> = None;
            for i in 0..n {
                let l = if n == 1 { a } else { a + (b - a) * i as f64 / (n - 1) as f64 };
                let sol = solve_currents(&wire(p, l, p.usize("segments")?)?, &spec)?;
                if let Some(x) = prev {
                    if x.signum() != sol.z_in.im.signum() {
                        s.add("reactance_sign_change_wl", l);
                    }
                }
                prev = Some(sol.z_in.im);
                t.push(vec![l.into(), sol.z_in.into()]);
            }
            out.table = Some(t);
        }
        "converge" => {
            let segs = p.usize_list("segments")?;
            let w = wire(p, p.f64("length_wl")?, *segs.first().unwrap_or(&3))?;
            let rows = convergence_report(&w, &segs, &spec)?;
            if let Some(last) = rows.last() {
                s.add("z_in_ohm", last.z_in);
            }
            let mut t = Table::new(&[
                ("segments", ColumnKind::Real),
                ("z_in_ohm", ColumnKind::Complex),
                ("delta_ohm", ColumnKind::Real),
            ]);
            for r in rows {
                t.push(vec![(r.n_segments as f64).into(), r.z_in.into(), r.delta.unwrap_or(f64::NAN).into()]);
            }
            out.table = Some(t);
        }
        a => return Err(unknown("mom", a)),
    }
    out.summary = s;
    Ok(out)
}

fn taper(p: &Params, k: usize) -> Result<Vec<f64>, CliError> {
    let kind = match p.choice("taper", &["uniform", "cosine", "taylor", "chebyshev"])? {
        "uniform" => Taper::Uniform,
        "cosine" => Taper::CosinePedestal { m: p.u32("m")?, h: p.f64("h")? },
        "taylor" => Taper::Taylor { sll_db: p.f64("sll_db")?, nbar: p.u32("nbar")? },
        _ => Taper::Chebyshev { sll_db: p.f64("sll_db")? },
    };
    if k == 1 {
        return Ok(vec![1.0]);
    }
    Ok(taper_generate(kind, k)?)
}

pub(super) fn array(action: &str, p: &Params) -> Result<Output, CliError> {
    let mut s = Summary::default();
    let mut out = Output::default();
    match action {
        "pattern" => {
            let freq = p.f64("freq_hz")?;
            let lam = C0 / freq;
            let (k, ny) = (p.usize("k")?, p.usize("ny")?);
            let (dx, dy) = (p.f64("dx_wl")? * lam, p.f64("dy_wl")? * lam);
            let layout = if ny > 1 { ArrayLayout::rect_grid(k, ny, dx, dy)? } else { ArrayLayout::linear(k, dx)? };
            let tx = taper(p, k)?;
            let ty = if ny > 1 { taper(p, ny)? } else { vec![1.0] };
            let amps: Vec<f64> = ty.iter().flat_map(|y| tx.iter().map(move |x| x * y)).collect();
            let (scan, phi) = (p.f64("scan_deg")?.to_radians(), p.f64("phi_deg")?);
            let (u0, v0) = (scan.sin() * phi.to_radians().cos(), scan.sin() * phi.to_radians().sin());
            let a = steered_excitation(&layout, &amps, u0, v0, freq)?;
            let (thetas, db) = pattern_cut(&layout, &a, phi, p.usize("points")?, freq)?;
            let m = pattern_metrics(&thetas, &db)?;
            metrics_summary(&mut s, &m);
            let rep = directivity_taper_efficiency(&layout, &a, freq)?;
            s.add("directivity_db", rep.d_db);
            s.add("taper_efficiency", rep.eta_tap);
            let mut t = Table::new(&[("theta_deg", ColumnKind::Real), ("u", ColumnKind::Real), ("f_db", ColumnKind::Real)]);
            for (th, f) in thetas.iter().zip(&db) {
                t.push(vec![(*th).into(), th.to_radians().sin().into(), (*f).into()]);
            }
            out.table = Some(t);
        }
        "errors" => {
            let freq = p.f64("freq_hz")?;
            let k = p.usize("k")?;
            let layout = ArrayLayout::linear(k, p.f64("dx_wl")? * C0 / freq)?;
            let a: Vec<_> = taper(p, k)?.into_iter().map(|x| crate::numerics::C64::new(x, 0.0)).collect();
            let bits = p.u32("bits")?;
            let model = ErrorModel {
                phase_var: p.f64("phase_var_rad2")?,
                amp_var: p.f64("amp_var")?,
                phase_bits: (bits > 0).then_some(bits),
                seed: p.u64("seed")?,
            };
            let st = error_statistics(&layout, &a, &model, p.usize("trials")?, p.usize("pattern_points")?, freq)?;
            let cf = &st.closed_form;
            s.add("phase_var_rad2", cf.phase_var);
            s.add("avg_null_sll_db", cf.avg_null_sll_db);
            s.add("directivity_ratio_db", cf.directivity_ratio_db);
            if let Some(mc) = &st.monte_carlo {
                s.add("mc_trials", mc.n_trials as f64);
                s.add("mc_nulls", mc.null_u.len() as f64);
                s.add("mc_avg_null_sll_db", opt(mc.avg_null_sll_db));
                if !mc.pattern_u.is_empty() {
                    let mut t = Table::new(&[("u", ColumnKind::Real), ("mean_pattern_db", ColumnKind::Real)]);
                    for (u, f) in mc.pattern_u.iter().zip(&mc.mean_pattern_db) {
                        t.push(vec![(*u).into(), (*f).into()]);
                    }
                    out.table = Some(t);
                }
            }
            out.warnings = st.warnings;
        }
        "grating" => {
            let dy = p.f64("dy_wl")?;
            let scan = p.f64("scan_deg")?.to_radians();
            let phi = p.f64("phi_deg")?.to_radians();
            let lobes = grating_lobes(p.f64("dx_wl")?, (dy > 0.0).then_some(dy), scan.sin() * phi.cos(), scan.sin() * phi.sin())?;
            s.add("grating_lobes", lobes.len() as f64);
            s.add("max_spacing_wl", max_spacing(scan));
            let mut t = Table::new(&[("u", ColumnKind::Real), ("v", ColumnKind::Real)]);
            for (u, v) in lobes {
                t.push(vec![u.into(), v.into()]);
            }
            out.table = Some(t);
        }
        "sparse" => {
            let freq = p.f64("freq_hz")?;
            let lam = C0 / freq;
            let d = p.f64("spacing_wl")? * lam;
            let seed = p.u64("seed")?;
            let kind = match p.choice("kind", &["linear", "square", "sunflower", "random"])? {
                "linear" => SparseKind::RegularLinear { spacing: d },
                "square" => SparseKind::RegularSquare { spacing: d },
                "sunflower" => SparseKind::Sunflower { avg_spacing: d },
                _ => SparseKind::Random { avg_spacing: d, seed },
            };
            let sl = sparse_layout(kind, p.usize("count")?)?;
            let scan = p.f64("scan_deg")?.to_radians();
            let amps = vec![1.0; sl.layout.len()];
            let a = steered_excitation(&sl.layout, &amps, scan.sin(), 0.0, freq)?;
            let avg = average_sidelobe_level(
                &sl.layout,
                &a,
                freq,
                scan.sin(),
                0.0,
                p.f64("exclusion")?,
                p.usize("samples")?,
                seed,
            )?;
            s.add("elements", sl.layout.len() as f64);
            s.add("predicted_sll_db", sl.predicted_sll_db);
            s.add("average_sll_db", db10(avg));
            out.warnings = sl.warnings.clone();
            let mut t = Table::new(&[("x_wl", ColumnKind::Real), ("y_wl", ColumnKind::Real)]);
            for (x, y) in &sl.layout.positions {
                t.push(vec![(x / lam).into(), (y / lam).into()]);
            }
            out.table = Some(t);
        }
        "squint" => {
            let scan = p.f64("scan_deg")?.to_radians();
            let sq = beam_squint(scan.sin(), p.f64("f0_hz")?, p.f64("f_hz")?)?;
            s.add("u", sq.u);
            s.add("theta_deg", opt(sq.theta_deg));
            s.add("visible", if sq.visible { "true" } else { "false" });
            let hpbw0 = p.f64("hpbw0_deg")?;
            if hpbw0 > 0.0 {
                s.add("hpbw_scanned_deg", broadened_hpbw(hpbw0, scan)?);
            }
        }
        "fpa" => {
            let freq = p.f64("freq_hz")?;
            let lam = C0 / freq;
            let psi0 = p.f64("psi0_deg")?.to_radians();
            let (r_max, n) = (p.f64("r_max_wl")?, p.usize("points")?);
            s.add("efficiency", fpa_efficiency(r_max * lam, freq, psi0)?);
            let mut t = Table::new(&[
                ("r_wl", ColumnKind::Real),
                ("field", ColumnKind::Real),
                ("efficiency", ColumnKind::Real),
            ]);
            for i in 0..n {
                let r = if n == 1 { r_max } else { r_max * i as f64 / (n - 1) as f64 };
                t.push(vec![
                    r.into(),
                    fpa_focal_field(r * lam, freq, psi0)?.into(),
                    fpa_efficiency(r * lam, freq, psi0)?.into(),
                ]);
            }
            out.table = Some(t);
        }
        a => return Err(unknown("array", a)),
    }
    out.summary = s;
    Ok(out)
}

pub(super) fn link(action: &str, p: &Params) -> Result<Output, CliError> {
    let freq = p.f64("freq_hz")?;
    let mut spec = LinkSpec {
        p_t: p.f64("pt_w")?,
        g_t: 1.0,
        g_r: 1.0,
        freq,
        range: p.f64("range_m")?,
        sigma_rcs: 1.0,
        p_r_min: p.f64("pr_min_w")?,
        bandwidth: p.f64("bandwidth_hz")?,
        nf: from_db10(p.f64("nf_db")?),
    };
    let mut s = Summary::default();
    let mode = match action {
        "radio" => {
            spec.g_t = from_db10(p.f64("gt_db")?);
            spec.g_r = from_db10(p.f64("gr_db")?);
            LinkMode::Radio
        }
        "radar" => {
            let g = match p.str("gain_db") {
                "auto" => gain_from_effective_aperture(p.f64("ae_m2")?, freq),
                _ => from_db10(p.f64("gain_db")?),
            };
            spec.g_t = g;
            spec.g_r = g;
            spec.sigma_rcs = p.f64("sigma_m2")?;
            s.add("gain_db", db10(g));
            LinkMode::Radar
        }
        a => return Err(unknown("link", a)),
    };
    let r = link_budget(&spec, mode)?;
    s.add("p_r_w", r.p_r);
    s.add("p_r_dbm", db10(r.p_r * 1e3));
    s.add("r_max_m", r.r_max);
    s.add("noise_floor_dbm", r.noise_floor_dbm);
    s.add("snr_db", r.snr_db);
    s.add("margin_db", r.margin_db);
    Ok(Output { summary: s, ..Output::default() })
}
