use super::{network_table, CliError, Output, Params};
use crate::amplifier::{
    constant_gain_circles, max_unilateral_gain, noise_cascade, noise_circle, power_gains, stability_circles,
    stability_factors, thermal_noise_dbm, thermal_noise_power, Boundary, NoiseSpec, Side, Stage, StableRegion,
};
use crate::cli::table::{Cell, ColumnKind, Summary, Table};
use crate::matching::{
    coupled_line_bandpass_design, filter_response, lumped_match_synthesize, richards_kuroda_lowpass,
    single_stub_tuner, FilterElement, Ladder, LowpassPrototype, Placement, StubKind,
};
use crate::network::{
    cascade, component_sparams, convert, ports_from_extension, touchstone_read, Component, Element, NPortParams,
    ParamKind,
};
use crate::numerics::{db10, from_db10, ComplexMatrix, C64};
use crate::tline::{
    constant_circle, parallel_plate_params, propagation_from_rlgc, quarter_wave_design, reflection_quantities,
    smith_from_gamma, smith_from_z, CircleKind, Impedance, Line, Rlgc,
};
use std::f64::consts::PI;

fn impedance(p: &Params, key: &str) -> Result<Impedance, CliError> {
    match p.str(key) {
        "open" | "inf" => Ok(Impedance::Infinite),
        _ => Ok(Impedance::Finite(p.complex(key)?)),
    }
}

fn impedance_cell(z: Impedance) -> Cell {
    match z {
        Impedance::Finite(z) => Cell::Complex(z),
        Impedance::Infinite => Cell::Text("open".into()),
    }
}

fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    match n {
        0 => vec![],
        1 => vec![a],
        _ => (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect(),
    }
}

fn unknown(sub: &str, action: &str) -> CliError {
    CliError::Usage(format!("unknown action \"{action}\" for {sub}"))
}

pub(super) fn tline(action: &str, p: &Params) -> Result<Output, CliError> {
    let mut s = Summary::default();
    let mut out = Output::default();
    match action {
        "gamma" => {
            let rlgc = Rlgc { r: p.f64("r")?, l: p.f64("l")?, g: p.f64("g")?, c: p.f64("c")? };
            let pr = propagation_from_rlgc(&rlgc, p.f64("freq_hz")?)?;
            s.add("gamma", format!("{:.2}+{:.1}j /m", pr.gamma.re, pr.gamma.im));
            s.add("alpha_np_per_m", pr.gamma.re);
            s.add("beta_rad_per_m", pr.gamma.im);
            s.add("z0_ohm", pr.z0);
            s.add("wavelength_m", pr.wavelength);
            s.add("phase_velocity_m_per_s", pr.phase_velocity);
        }
        "reflect" => {
            let r = reflection_quantities(impedance(p, "zl_ohm")?, p.complex("z0_ohm")?)?;
            s.add("gamma", r.gamma);
            s.add("gamma_mag", r.gamma.norm());
            s.add("vswr", r.vswr);
            s.add("return_loss_db", r.return_loss_db);
            s.add("transmission", r.transmission);
            s.add("insertion_loss_db", r.insertion_loss_db);
        }
        "input" => {
            let z0 = p.f64("z0_ohm")?;
            let zl = impedance(p, "zl_ohm")?;
            let line = Line::lossless(z0, 2.0 * PI);
            let zin = line.input_impedance(zl, p.f64("length_wl")?)?;
            s.add("zin_ohm", impedance_cell(zin));
            s.add("gamma_in", zin.gamma(C64::new(z0, 0.0)));
        }
        "quarter" => {
            let q = quarter_wave_design(p.complex("zl_ohm")?, p.f64("z0_ohm")?)?;
            s.add("z1_ohm", q.z1);
            s.add("gamma_f0", q.gamma_mag(1.0));
            s.add("gamma_2f0", q.gamma_mag(2.0));
            let mut t = Table::new(&[("f_ratio", ColumnKind::Real), ("gamma_mag", ColumnKind::Real)]);
            for (f, g) in q.sweep(&linspace(0.0, p.f64("f_max_ratio")?, p.usize("points")?)) {
                t.push(vec![f.into(), g.into()]);
            }
            out.table = Some(t);
        }
        "plate" => {
            let pp = parallel_plate_params(p.f64("width_m")?, p.f64("height_m")?, p.f64("eps_r")?, p.f64("freq_hz")?)?;
            s.add("z0_ohm", pp.z0);
            s.add("l_h_per_m", pp.l);
            s.add("c_f_per_m", pp.c);
            s.add("beta_rad_per_m", pp.beta);
            s.add("phase_velocity_m_per_s", pp.phase_velocity());
            out.warnings.extend(pp.warning.clone());
        }
        a => return Err(unknown("tline", a)),
    }
    out.summary = s;
    Ok(out)
}

pub(super) fn smith(action: &str, p: &Params) -> Result<Output, CliError> {
    let mut s = Summary::default();
    let mut out = Output::default();
    match action {
        "point" => {
            let z0 = p.complex("z0_ohm")?;
            let pt = if p.str("gamma").is_empty() {
                smith_from_z(impedance(p, "zl_ohm")?, z0)?
            } else {
                smith_from_gamma(p.complex("gamma")?, z0)?
            };
            s.add("gamma", pt.gamma);
            s.add("gamma_mag", pt.gamma.norm());
            s.add("gamma_deg", pt.gamma.arg().to_degrees());
            s.add("z_norm", impedance_cell(pt.z_norm));
            s.add("z_ohm", impedance_cell(pt.impedance(z0)));
        }
        "circle" => {
            let kind = match p.choice("kind", &["resistance", "reactance", "vswr"])? {
                "resistance" => CircleKind::Resistance,
                "reactance" => CircleKind::Reactance,
                _ => CircleKind::Vswr,
            };
            let c = constant_circle(kind, p.f64("value")?)?;
            s.add("center", c.center);
            s.add("radius", c.radius);
            let mut t = Table::new(&[("angle_deg", ColumnKind::Real), ("gamma", ColumnKind::Complex)]);
            for a in linspace(0.0, 360.0, p.usize("points")?) {
                t.push(vec![a.into(), c.point(a.to_radians()).into()]);
            }
            out.table = Some(t);
        }
        a => return Err(unknown("smith", a)),
    }
    out.summary = s;
    Ok(out)
}

fn read_network(path: &str, ports: usize) -> Result<NPortParams, CliError> {
    if path.is_empty() {
        return Err(CliError::Usage("no input file given".into()));
    }
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{path}: {e}")))?;
    let n = if ports > 0 { Some(ports) } else { ports_from_extension(path) };
    Ok(touchstone_read(&text, n)?.params)
}

fn param_kind(p: &Params) -> Result<ParamKind, CliError> {
    Ok(match p.choice("to", &["s", "z", "y"])? {
        "s" => ParamKind::S,
        "z" => ParamKind::Z,
        _ => ParamKind::Y,
    })
}

fn network_output(net: NPortParams) -> Output {
    let mut s = Summary::default();
    s.add("kind", net.kind.letter().to_string());
    s.add("ports", net.n_ports as f64);
    s.add("points", net.len() as f64);
    Output { summary: s, table: Some(network_table(&net)), network: Some(net), warnings: vec![] }
}

pub(super) fn net(action: &str, p: &Params) -> Result<Output, CliError> {
    let z_ref = p.f64("z_ref_ohm")?;
    let to = param_kind(p)?;
    match action {
        "convert" => {
            let text_path = p.str("in");
            let ports = p.usize("ports")?;
            if text_path.is_empty() {
                return Err(CliError::Usage("net convert needs --in FILE".into()));
            }
            let text = std::fs::read_to_string(text_path).map_err(|e| CliError::Io(format!("{text_path}: {e}")))?;
            let n = if ports > 0 { Some(ports) } else { ports_from_extension(text_path) };
            let ts = touchstone_read(&text, n)?;
            let mut out = network_output(convert(&ts.params, to, z_ref)?);
            out.warnings = ts.warnings;
            Ok(out)
        }
        "component" => {
            let kind = p.choice(
                "kind",
                &[
                    "series_r", "series_l", "series_c", "shunt_r", "shunt_l", "shunt_c", "line", "tee", "divider",
                    "wilkinson",
                ],
            )?;
            let comp = match kind {
                "series_r" => Component::SeriesZ(Element::Resistor(p.f64("r_ohm")?)),
                "series_l" => Component::SeriesZ(Element::Inductor(p.f64("l_h")?)),
                "series_c" => Component::SeriesZ(Element::Capacitor(p.f64("c_f")?)),
                "shunt_r" => Component::ShuntY(Element::Resistor(p.f64("r_ohm")?)),
                "shunt_l" => Component::ShuntY(Element::Inductor(p.f64("l_h")?)),
                "shunt_c" => Component::ShuntY(Element::Capacitor(p.f64("c_f")?)),
                "line" => Component::IdealLine {
                    z_line: p.f64("z_line_ohm")?,
                    theta0: p.f64("theta0_deg")?.to_radians(),
                    f0: p.f64("f0_hz")?,
                },
                "tee" => Component::TJunction { z0: z_ref, z1: p.f64("z1_ohm")?, z2: p.f64("z2_ohm")? },
                "divider" => Component::ResistiveDivider,
                _ => Component::WilkinsonEqual { f0: p.f64("f0_hz")? },
            };
            let freqs = linspace(p.f64("f_start_hz")?, p.f64("f_stop_hz")?, p.usize("points")?);
            let s = component_sparams(&comp, &freqs, z_ref)?;
            let net = if to == ParamKind::S { s } else { convert(&s, to, z_ref)? };
            Ok(network_output(net))
        }
        "cascade" => {
            let a = read_network(p.str("a"), 2)?;
            let b = read_network(p.str("b"), 2)?;
            let c = cascade(&a, &b)?;
            let net = if to == ParamKind::S { c } else { convert(&c, to, z_ref)? };
            Ok(network_output(net))
        }
        a => Err(unknown("net", a)),
    }
}

fn element_text(e: &Element) -> (String, f64, &'static str) {
    match *e {
        Element::Impedance(z) => ("impedance".into(), z.norm(), "ohm"),
        Element::Resistor(r) => ("resistor".into(), r, "ohm"),
        Element::Inductor(l) => ("inductor".into(), l, "H"),
        Element::Capacitor(c) => ("capacitor".into(), c, "F"),
    }
}

pub(super) fn matching(action: &str, p: &Params) -> Result<Output, CliError> {
    let zl = p.complex("zl_ohm")?;
    let z0 = p.f64("z0_ohm")?;
    let mut s = Summary::default();
    let mut out = Output::default();
    match action {
        "stub" => {
            let kind = match p.choice("stub", &["short", "open"])? {
                "short" => StubKind::Shorted,
                _ => StubKind::Open,
            };
            let sols = single_stub_tuner(zl, z0, kind)?;
            let mut t = Table::new(&[
                ("solution", ColumnKind::Real),
                ("d_wl", ColumnKind::Real),
                ("l_wl", ColumnKind::Real),
                ("gamma_mag", ColumnKind::Real),
            ]);
            for (i, sol) in sols.iter().enumerate() {
                let g = sol.input_impedance(zl, z0).gamma(C64::new(z0, 0.0)).norm();
                if i == 0 {
                    s.add("d_wl", sol.d);
                    s.add("l_wl", sol.l);
                    s.add("gamma_mag", g);
                }
                t.push(vec![((i + 1) as f64).into(), sol.d.into(), sol.l.into(), g.into()]);
            }
            s.add("solutions", sols.len() as f64);
            out.table = Some(t);
        }
        "lumped" => {
            let m = lumped_match_synthesize(zl, z0, p.f64("freq_hz")?)?;
            s.add("networks", m.networks.len() as f64);
            if let Some(r) = &m.reason {
                s.add("reason", r.as_str());
            }
            let mut t = Table::new(&[
                ("network", ColumnKind::Real),
                ("position", ColumnKind::Real),
                ("placement", ColumnKind::Text),
                ("element", ColumnKind::Text),
                ("value", ColumnKind::Real),
                ("unit", ColumnKind::Text),
            ]);
            for (i, n) in m.networks.iter().enumerate() {
                for (j, part) in n.parts.iter().enumerate() {
                    let placement = match part.placement {
                        Placement::Series => "series",
                        Placement::Shunt => "shunt",
                    };
                    let (name, value, unit) = element_text(&part.element);
                    t.push(vec![
                        ((i + 1) as f64).into(),
                        ((j + 1) as f64).into(),
                        placement.into(),
                        name.into(),
                        value.into(),
                        unit.into(),
                    ]);
                }
            }
            out.table = Some(t);
        }
        a => return Err(unknown("match", a)),
    }
    out.summary = s;
    Ok(out)
}

fn prototype(p: &Params) -> Result<LowpassPrototype, CliError> {
    let g = p.f64_list("g")?;
    let ripple = p.f64("ripple_db")?;
    if !g.is_empty() {
        return Ok(LowpassPrototype::new(g, ripple)?);
    }
    let n = p.usize("order")?;
    Ok(if ripple == 0.0 { LowpassPrototype::maximally_flat(n)? } else { LowpassPrototype::chebyshev(n, ripple)? })
}

fn element_row(e: &FilterElement) -> (&'static str, f64) {
    match *e {
        FilterElement::UnitElement { z, .. } => ("unit_element", z),
        FilterElement::ShuntOpenStub { z, .. } => ("shunt_open_stub", z),
        FilterElement::ShuntShortStub { z, .. } => ("shunt_short_stub", z),
        FilterElement::SeriesOpenStub { z, .. } => ("series_open_stub", z),
        FilterElement::SeriesShortStub { z, .. } => ("series_short_stub", z),
        FilterElement::Series(el) | FilterElement::Shunt(el) => ("lumped", element_text(&el).1),
    }
}

fn response_table(ladder: &Ladder, p: &Params) -> Result<Table, CliError> {
    let freqs = linspace(p.f64("f_start_hz")?, p.f64("f_stop_hz")?, p.usize("points")?);
    let mut t = Table::new(&[
        ("freq_hz", ColumnKind::Real),
        ("s21_db", ColumnKind::Real),
        ("s11_db", ColumnKind::Real),
        ("s21", ColumnKind::Complex),
    ]);
    for r in filter_response(ladder, &freqs)? {
        t.push(vec![r.freq.into(), r.s21_db().into(), r.s11_db().into(), r.s21.into()]);
    }
    Ok(t)
}

pub(super) fn filter(action: &str, p: &Params) -> Result<Output, CliError> {
    let proto = prototype(p)?;
    let z0 = p.f64("z0_ohm")?;
    let mut s = Summary::default();
    let mut out = Output::default();
    match action {
        "lowpass" => {
            let lp = richards_kuroda_lowpass(&proto, p.f64("fc_hz")?, z0)?;
            for (i, e) in lp.ladder.elements.iter().enumerate() {
                let (name, z) = element_row(e);
                s.add(&format!("element_{}", i + 1), name);
                s.add(&format!("z_{}_ohm", i + 1), z);
            }
            for (i, n2) in lp.kuroda_n2.iter().enumerate() {
                s.add(&format!("kuroda_n2_{}", i + 1), *n2);
            }
            out.table = Some(response_table(&lp.ladder, p)?);
        }
        "bandpass" => {
            let d = coupled_line_bandpass_design(&proto, p.f64("f0_hz")?, p.f64("f1_hz")?, z0)?;
            for (i, c) in d.pairs.iter().enumerate() {
                s.add(&format!("pair_{}_z_even_ohm", i + 1), c.z_even);
                s.add(&format!("pair_{}_z_odd_ohm", i + 1), c.z_odd);
            }
            for (i, z) in d.stubs.iter().enumerate() {
                s.add(&format!("stub_{}_ohm", i + 1), *z);
            }
            for (i, z) in d.lines.iter().enumerate() {
                s.add(&format!("line_{}_ohm", i + 1), *z);
            }
            out.table = Some(response_table(&d.ladder, p)?);
        }
        a => return Err(unknown("filter", a)),
    }
    out.summary = s;
    Ok(out)
}

fn s_matrix(p: &Params) -> Result<ComplexMatrix, CliError> {
    Ok(ComplexMatrix::from_rows(&[
        vec![p.complex("s11")?, p.complex("s12")?],
        vec![p.complex("s21")?, p.complex("s22")?],
    ])?)
}

fn region_text(r: StableRegion) -> &'static str {
    match r {
        StableRegion::Inside => "inside",
        StableRegion::Outside => "outside",
        StableRegion::Undetermined => "undetermined",
    }
}

fn stability_summary(s: &mut Summary, m: &ComplexMatrix) -> Result<(), CliError> {
    let st = stability_factors(m)?;
    s.add("k", st.k);
    s.add("delta_mag", st.delta.norm());
    s.add("mu", st.mu);
    s.add("unconditionally_stable", if st.unconditionally_stable { "true" } else { "false" });
    let circ = stability_circles(m)?;
    for (name, b, region) in [("load", circ.load, circ.load_stable), ("source", circ.source, circ.source_stable)] {
        match b {
            Boundary::Circle(c) => {
                s.add(&format!("{name}_circle_center"), c.center);
                s.add(&format!("{name}_circle_radius"), c.radius);
            }
            Boundary::Line => s.add(&format!("{name}_circle"), "line"),
        }
        s.add(&format!("{name}_stable_region"), region_text(region));
    }
    Ok(())
}

fn circle_table(circles: &[(f64, crate::amplifier::ChartCircle)], points: usize) -> Table {
    let mut t = Table::new(&[
        ("value_db", ColumnKind::Real),
        ("angle_deg", ColumnKind::Real),
        ("gamma", ColumnKind::Complex),
    ]);
    for (v, c) in circles {
        for a in linspace(0.0, 360.0, points) {
            t.push(vec![(*v).into(), a.into(), c.point(a.to_radians()).into()]);
        }
    }
    t
}

pub(super) fn amp(action: &str, p: &Params) -> Result<Output, CliError> {
    let m = s_matrix(p)?;
    let mut s = Summary::default();
    let mut out = Output::default();
    match action {
        "gains" => {
            let r = power_gains(&m, p.complex("gamma_s")?, p.complex("gamma_l")?)?;
            s.add("g_del_db", r.g_del_db());
            s.add("g_av_db", r.g_av_db());
            s.add("g_t_db", r.g_t_db());
            s.add("m_s_db", r.m_s_db());
            s.add("m_l_db", r.m_l_db());
            s.add("gamma_in", r.gamma_in);
            s.add("gamma_out", r.gamma_out);
            stability_summary(&mut s, &m)?;
            out.warnings = r.warnings;
        }
        "circles" => {
            let side = match p.choice("side", &["source", "load"])? {
                "source" => Side::Source,
                _ => Side::Load,
            };
            let gains = p.f64_list("gains_db")?;
            let circles = constant_gain_circles(&m, side, &gains)?;
            s.add("max_gain_db", db10(max_unilateral_gain(&m, side)?));
            for (g, c) in gains.iter().zip(&circles) {
                s.add(&format!("circle_{g}db_center"), c.center);
                s.add(&format!("circle_{g}db_radius"), c.radius);
            }
            let pairs: Vec<_> = gains.iter().copied().zip(circles).collect();
            out.table = Some(circle_table(&pairs, p.usize("points")?));
        }
        "stability" => stability_summary(&mut s, &m)?,
        a => return Err(unknown("amp", a)),
    }
    out.summary = s;
    Ok(out)
}

pub(super) fn noise(action: &str, p: &Params) -> Result<Output, CliError> {
    let mut s = Summary::default();
    let mut out = Output::default();
    match action {
        "thermal" => {
            let (t, b) = (p.f64("temp_k")?, p.f64("bandwidth_hz")?);
            s.add("power_w", thermal_noise_power(t, b));
            s.add("power_dbm", thermal_noise_dbm(t, b));
            s.add("density_dbm_per_hz", thermal_noise_dbm(t, 1.0));
        }
        "cascade" => {
            let g = p.f64_list("gains_db")?;
            let f = p.f64_list("nf_db")?;
            if g.len() != f.len() {
                return Err(CliError::Usage("gains_db and nf_db need the same number of stages".into()));
            }
            let stages: Vec<Stage> = g.iter().zip(&f).map(|(&g, &f)| Stage::from_db(g, f)).collect();
            let r = noise_cascade(&stages, p.f64("t0_k")?)?;
            s.add("f_total", r.f_total);
            s.add("nf_total_db", r.nf_total_db);
            s.add("te_total_k", r.t_e_total);
            s.add("gain_total_db", db10(r.gain_total));
        }
        "circle" => {
            let spec =
                NoiseSpec::from_z_opt(p.f64("nf_min_db")?, p.f64("rn_ohm")?, p.complex("z_opt_ohm")?, p.f64("z0_ohm")?)?;
            let nf = p.f64("nf_db")?;
            let nc = noise_circle(&spec, from_db10(nf))?;
            s.add("gamma_opt", spec.gamma_opt);
            s.add("n", nc.n);
            s.add("center", nc.circle.center);
            s.add("radius", nc.circle.radius);
            out.table = Some(circle_table(&[(nf, nc.circle)], p.usize("points")?));
        }
        a => return Err(unknown("noise", a)),
    }
    out.summary = s;
    Ok(out)
}
