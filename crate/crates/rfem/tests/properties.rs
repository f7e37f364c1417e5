use std::f64::consts::PI;

use proptest::prelude::*;
use rfem::amplifier::{constant_gain_circles, noise_circle, NoiseSpec, Side};
use rfem::array::{
    array_factor, directivity_taper_efficiency, grating_lobes, max_spacing, pattern_grid, schelkunov_coefficients,
    schelkunov_zeros, steered_excitation, taper_generate, ArrayLayout, GridSpec, Taper,
};
use rfem::matching::{evaluate_parts, lumped_match_synthesize, single_stub_tuner, StubKind};
use rfem::network::{
    cascade, component_sparams, touchstone_read, touchstone_write, Component, Element, FreqUnit, NPortParams,
    ParamKind, TsFormat,
};
use rfem::numerics::{bessel_j, c, integrate_adaptive, polar_deg, ComplexMatrix, QuadratureSpec, C64};
use rfem::radiator::{far_field, polarization_metrics, RadiatorModel};
use rfem::tline::{smith_from_gamma, smith_from_z, Impedance, Line, C0};

const F: f64 = 1e9;

fn lam() -> f64 {
    C0 / F
}

fn element() -> impl Strategy<Value = Element> {
    prop_oneof![
        (1.0..500.0f64).prop_map(Element::Resistor),
        (1e-10..1e-7f64).prop_map(Element::Inductor),
        (1e-14..1e-11f64).prop_map(Element::Capacitor),
    ]
}

fn two_port() -> impl Strategy<Value = Component> {
    prop_oneof![
        element().prop_map(Component::SeriesZ),
        element().prop_map(Component::ShuntY),
        (5.0..200.0f64, 0.05..3.0f64).prop_map(|(z_line, theta0)| Component::IdealLine { z_line, theta0, f0: F }),
    ]
}

fn passive_load() -> impl Strategy<Value = C64> {
    (0.5..1000.0f64, -1000.0..1000.0f64).prop_map(|(r, x)| c(r, x))
}

fn s_of(comp: &Component, f: f64) -> ComplexMatrix {
    component_sparams(comp, &[f], 50.0).unwrap().matrices.remove(0)
}

fn max_diff(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    a.sub(b).unwrap().max_abs()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn cascades_are_reciprocal_and_passive(a in two_port(), b in two_port(), f in 0.1e9..5e9f64) {
        let net = cascade(
            &component_sparams(&a, &[f], 50.0).unwrap(),
            &component_sparams(&b, &[f], 50.0).unwrap(),
        ).unwrap();
        let s = &net.matrices[0];
        prop_assert!((s.row(0)[1] - s.row(1)[0]).norm() < 1e-12);
        for j in 0..2 {
            prop_assert!(s.row(0)[j].norm_sqr() + s.row(1)[j].norm_sqr() <= 1.0 + 1e-12);
        }
    }

    #[test]
    fn lossless_lines_are_unitary(z in 5.0..200.0f64, theta in 0.05..3.0f64, f in 0.1e9..5e9f64) {
        let s = s_of(&Component::IdealLine { z_line: z, theta0: theta, f0: F }, f);
        let shs = s.transpose().to_rows().iter().map(|r| r.iter().map(|x| x.conj()).collect()).collect::<Vec<Vec<C64>>>();
        let prod = ComplexMatrix::from_rows(&shs).unwrap().mul(&s).unwrap();
        prop_assert!(max_diff(&prod, &ComplexMatrix::identity(2)) < 1e-12);
    }

    #[test]
    fn s_z_y_round_trip(a in two_port(), b in two_port(), z_ref in 20.0..100.0f64) {
        let net = cascade(
            &component_sparams(&a, &[F], z_ref).unwrap(),
            &component_sparams(&b, &[F], z_ref).unwrap(),
        ).unwrap();
        for kind in [ParamKind::Z, ParamKind::Y] {
            let Ok(other) = net.convert(kind, z_ref) else { continue };
            let back = other.convert(ParamKind::S, z_ref).unwrap();
            let scale = 1.0 + other.matrices[0].max_abs() * if kind == ParamKind::Z { 1.0 / z_ref } else { z_ref };
            prop_assert!(max_diff(&back.matrices[0], &net.matrices[0]) < 1e-9 * scale);
        }
    }

    #[test]
    fn star_cascade_matches_abcd_product(a in two_port(), b in two_port()) {
        let (sa, sb) = (s_of(&a, F), s_of(&b, F));
        let star = rfem::network::star(&sa, &sb).unwrap();
        let (ta, tb) = (rfem::network::s_to_abcd(&sa, 50.0), rfem::network::s_to_abcd(&sb, 50.0));
        if let (Ok(ta), Ok(tb)) = (ta, tb) {
            let via = rfem::network::abcd_to_s(&rfem::network::abcd_mul(&ta, &tb), 50.0).unwrap();
            prop_assert!(max_diff(&via, &star) < 1e-8);
        }
    }

    #[test]
    fn touchstone_round_trip(a in two_port(), b in two_port(), fmt in prop_oneof![Just(TsFormat::RI), Just(TsFormat::MA), Just(TsFormat::DB)]) {
        let freqs = vec![0.5e9, 1e9, 1.5e9];
        let net = cascade(
            &component_sparams(&a, &freqs, 50.0).unwrap(),
            &component_sparams(&b, &freqs, 50.0).unwrap(),
        ).unwrap();
        let text = touchstone_write(&net, FreqUnit::GHz, fmt).unwrap();
        let back: NPortParams = touchstone_read(&text, Some(2)).unwrap().params;
        prop_assert_eq!(back.freqs.len(), 3);
        for (x, y) in back.matrices.iter().zip(&net.matrices) {
            prop_assert!(max_diff(x, y) < 1e-9);
        }
    }

    #[test]
    fn smith_round_trip_from_impedance(z in passive_load(), z_ref in 10.0..200.0f64) {
        let zr = c(z_ref, 0.0);
        let p = smith_from_z(Impedance::Finite(z), zr).unwrap();
        prop_assert!(p.gamma.norm() <= 1.0);
        let back = p.impedance(zr).finite().unwrap();
        prop_assert!((back - z).norm() <= 1e-9 * z.norm().max(1.0));
    }

    #[test]
    fn smith_round_trip_from_gamma(mag in 0.0..0.999f64, deg in -180.0..180.0f64) {
        let zr = c(50.0, 0.0);
        let g = polar_deg(mag, deg);
        let p = smith_from_gamma(g, zr).unwrap();
        let again = smith_from_z(p.impedance(zr), zr).unwrap();
        prop_assert!((again.gamma - g).norm() < 1e-9);
    }

    #[test]
    fn lossless_line_preserves_reflection_magnitude(z in passive_load(), l in 0.0..3.0f64) {
        let line = Line::lossless(50.0, 2.0 * PI);
        let zin = line.input_impedance(Impedance::Finite(z), l).unwrap();
        let g0 = Impedance::Finite(z).gamma(c(50.0, 0.0)).norm();
        prop_assert!((zin.gamma(c(50.0, 0.0)).norm() - g0).abs() < 1e-9);
    }

    #[test]
    fn stub_tuner_matches_any_load(z in passive_load(), open in any::<bool>()) {
        let kind = if open { StubKind::Open } else { StubKind::Shorted };
        for sol in single_stub_tuner(z, 50.0, kind).unwrap() {
            prop_assert!((0.0..=0.5).contains(&sol.d));
            prop_assert!((0.0..=0.5).contains(&sol.l));
            prop_assert!(sol.input_impedance(z, 50.0).gamma(c(50.0, 0.0)).norm() < 1e-6);
        }
    }

    #[test]
    fn lumped_sections_match(z in passive_load()) {
        let m = lumped_match_synthesize(z, 50.0, F).unwrap();
        for net in &m.networks {
            let zin = evaluate_parts(z, &net.parts, F);
            prop_assert!(((zin - 50.0) / (zin + 50.0)).norm() < 1e-6);
        }
    }

    #[test]
    fn gain_circle_points_reach_their_level(g in 0.0..4.5f64, load in any::<bool>()) {
        let s = bfu730f();
        let side = if load { Side::Load } else { Side::Source };
        let sii = if load { s.row(1)[1] } else { s.row(0)[0] };
        let circle = constant_gain_circles(&s, side, &[g]).unwrap()[0];
        for p in circle.sample(24) {
            let m = (1.0 - p.norm_sqr()) / (1.0 - sii * p).norm_sqr();
            prop_assert!((10.0 * m.log10() - g).abs() < 1e-9);
            prop_assert!(p.norm() <= 1.0 + 1e-12);
        }
    }

    #[test]
    fn noise_circle_points_reach_target(nf_db in 0.6..3.0f64) {
        let ns = NoiseSpec::from_z_opt(0.57, 6.0, c(100.0, 5.2), 50.0).unwrap();
        let target = 10f64.powf(nf_db / 10.0);
        let nc = noise_circle(&ns, target).unwrap();
        for p in nc.circle.sample(24) {
            prop_assert!((ns.figure_from_gamma(p).unwrap() - target).abs() < 1e-9);
        }
    }

    #[test]
    fn fft_grid_matches_direct_sum(nx in 2usize..12, ny in 1usize..6, dx in 0.3..1.5f64, seed in 0u64..1000) {
        let l = ArrayLayout::rect_grid(nx, ny, dx * lam(), 0.5 * lam()).unwrap();
        let a: Vec<C64> = (0..nx * ny).map(|i| polar_deg(1.0 + ((seed + i as u64) % 7) as f64 / 7.0, (seed * 37 + i as u64 * 61) as f64)).collect();
        let fft = pattern_grid(&l, &a, &GridSpec::Dft { pad: 2 }, F, true).unwrap();
        let direct = pattern_grid(&l, &a, &GridSpec::Dft { pad: 2 }, F, false).unwrap();
        let scale: f64 = a.iter().map(|x| x.norm()).sum();
        for (x, y) in fft.values.iter().zip(&direct.values) {
            prop_assert!((x - y).norm() <= 1e-10 * scale);
        }
    }

    #[test]
    fn steering_translates_pattern(k in 2usize..24, d in 0.2..1.0f64, u0 in -0.9..0.9f64, u in -1.0..1.0f64) {
        let l = ArrayLayout::linear(k, d * lam()).unwrap();
        let steered = steered_excitation(&l, &vec![1.0; k], u0, 0.0, F).unwrap();
        let broadside = steered_excitation(&l, &vec![1.0; k], 0.0, 0.0, F).unwrap();
        let lhs = array_factor(&l, &steered, u, 0.0, F).norm();
        let rhs = array_factor(&l, &broadside, u - u0, 0.0, F).norm();
        prop_assert!((lhs - rhs).abs() < 1e-9 * k as f64);
        prop_assert!((array_factor(&l, &steered, u0, 0.0, F).norm() - k as f64).abs() < 1e-9 * k as f64);
    }

    #[test]
    fn tapers_are_symmetric_and_efficient(k in 2usize..80, which in 0usize..4, sll in 20.0..50.0f64) {
        let taper = match which {
            0 => Taper::Uniform,
            1 => Taper::CosinePedestal { m: 2, h: 0.1 },
            2 => Taper::taylor(sll),
            _ => Taper::Chebyshev { sll_db: sll },
        };
        let t = taper_generate(taper, k).unwrap();
        let peak = t.iter().cloned().fold(f64::MIN, f64::max);
        prop_assert!((peak - 1.0).abs() < 1e-12);
        for i in 0..k {
            prop_assert!((t[i] - t[k - 1 - i]).abs() < 1e-9);
        }
        let l = ArrayLayout::linear(k, lam() / 2.0).unwrap();
        let a: Vec<C64> = t.iter().map(|&x| c(x, 0.0)).collect();
        let eta = directivity_taper_efficiency(&l, &a, F).unwrap().eta_tap;
        prop_assert!(eta > 0.0 && eta <= 1.0 + 1e-12);
    }

    #[test]
    fn schelkunov_zeros_round_trip(k in 3usize..16, seed in 0u64..1000) {
        let a: Vec<C64> = (0..k).map(|i| polar_deg(0.5 + ((seed + 3 * i as u64) % 5) as f64 / 5.0, (seed * 13 + 71 * i as u64) as f64)).collect();
        let zeros = schelkunov_zeros(&a).unwrap();
        prop_assert_eq!(zeros.len(), k - 1);
        let back = schelkunov_coefficients(&zeros, a[k - 1]);
        for (x, y) in back.iter().zip(&a) {
            prop_assert!((x - y).norm() < 1e-7);
        }
    }

    #[test]
    fn no_grating_lobes_within_bound(theta_deg in 0.0..90.0f64, frac in 0.0..1.0f64) {
        let th = theta_deg.to_radians();
        let d = max_spacing(th) * (0.05 + 0.95 * frac) * (1.0 - 1e-9);
        prop_assert!(grating_lobes(d, None, th.sin(), 0.0).unwrap().is_empty());
        prop_assert!(grating_lobes(d, Some(d), th.sin(), 0.0).unwrap().is_empty());
    }

    #[test]
    fn far_fields_are_transverse_and_finite(which in 0usize..5, theta in 0.01..3.13f64, phi in 0.0..6.2f64) {
        let model = match which {
            0 => RadiatorModel::ElectricDipole { i0l: 1.0 },
            1 => RadiatorModel::MagneticDipole { m: 1.0 },
            2 => RadiatorModel::ThinWire { half_length: 0.3 * lam() },
            3 => RadiatorModel::Loop { radius: 0.1 * lam() },
            _ => RadiatorModel::CircularAperture { radius: 2.0 * lam(), taper_p: 1, e0: 1.0 },
        };
        let e = far_field(&model, theta, phi, F).unwrap();
        prop_assert!(e.e_theta.is_finite() && e.e_phi.is_finite());
        prop_assert_eq!(e.e_r(), c(0.0, 0.0));
    }

    #[test]
    fn axial_ratio_at_least_one(a in 0.01..2.0f64, b in 0.0..2.0f64, deg in -180.0..180.0f64) {
        let p = polarization_metrics(c(a, 0.0), polar_deg(b, deg)).unwrap();
        prop_assert!(p.axial_ratio >= 1.0 - 1e-12);
    }

    #[test]
    fn quadrature_matches_closed_forms(n in 0i32..8, b in 0.1..4.0f64) {
        let q = integrate_adaptive(|x: f64| x.powi(n), 0.0, b, &QuadratureSpec::default()).unwrap();
        let exact = b.powi(n + 1) / (n + 1) as f64;
        prop_assert!((q.value - exact).abs() <= 1e-8 * exact.abs().max(1.0));
        let s = integrate_adaptive(|x: f64| x.sin(), 0.0, b * PI, &QuadratureSpec::default()).unwrap();
        prop_assert!((s.value - (1.0 - (b * PI).cos())).abs() < 1e-9);
    }

    #[test]
    fn bessel_recurrence(n in 1u32..10, x in 0.01..40.0f64) {
        let lhs = bessel_j(n - 1, x).unwrap() + bessel_j(n + 1, x).unwrap();
        let rhs = 2.0 * n as f64 / x * bessel_j(n, x).unwrap();
        prop_assert!((lhs - rhs).abs() < 1e-9 * (1.0 + rhs.abs()));
    }
}

fn bfu730f() -> ComplexMatrix {
    ComplexMatrix::from_rows(&[
        vec![polar_deg(0.87, -28.0), polar_deg(0.01, 76.0)],
        vec![polar_deg(26.73, 159.0), polar_deg(0.96, -16.0)],
    ])
    .unwrap()
}
