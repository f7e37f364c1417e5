//! Command-line front end.
//!
//! ```text
//! rfem <subcommand> [<action>] [--key value]... [--config FILE]
//!      [--out PATH] [--format csv|json] [--complex reim|magphase]
//! ```
//!
//! Config files hold one `key = value` per line. `#` starts a comment.
//! `subcommand` and `action` select the computation, `output.path`,
//! `output.format` and `output.complex` the artifact, and every other key is
//! an action parameter. Flags override file values; dashes in flag names map
//! to underscores. Unset parameters take the defaults listed by
//! `rfem <subcommand> --help`.
//!
//! Complex values are written `re+imj` or `mag@deg`. Lists are comma
//! separated. Relative `--out` paths resolve against `RFEM_OUT_DIR` when set.

mod em;
mod rf;
pub mod table;

pub use table::{emit_table, Cell, ColumnKind, ComplexStyle, Format, Summary, Table};

use crate::network::{touchstone_write, FreqUnit, NPortParams, TsFormat};
use crate::numerics::{polar_deg, C64};
use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;
use std::path::PathBuf;

pub const OUT_DIR_ENV: &str = "RFEM_OUT_DIR";

#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    Usage(String),
    Compute(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Compute(_) | CliError::Io(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Compute(m) => write!(f, "{m}"),
            CliError::Io(m) => write!(f, "io error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<crate::Error> for CliError {
    fn from(e: crate::Error) -> Self {
        CliError::Compute(e.to_string())
    }
}

type Schema = &'static [(&'static str, &'static str)];

struct Action {
    name: &'static str,
    about: &'static str,
    keys: Schema,
}

const BFU730F: Schema = &[
    ("s11", "0.87@-28"),
    ("s12", "0.01@76"),
    ("s21", "26.73@159"),
    ("s22", "0.96@-16"),
];

const RADIATOR_KEYS: Schema = &[
    ("model", "wire"),
    ("freq_hz", "1e9"),
    ("i0l_a_m", "1"),
    ("m_a_m2", "1"),
    ("half_length_wl", "0.25"),
    ("height_wl", "0.25"),
    ("radius_wl", "0.1"),
    ("a_wl", "4"),
    ("b_wl", "4"),
    ("taper_p", "0"),
    ("patch_radius_m", "4.6e-3"),
    ("eps_r", "2.56"),
    ("height_m", "0.5e-3"),
    ("mode_n", "1"),
    ("mode_m", "1"),
];

fn actions(sub: &str) -> Option<&'static [Action]> {
    let list: &'static [Action] = match sub {
        "tline" => &[
            Action {
                name: "gamma",
                about: "propagation constant and Z0 from per-metre RLGC",
                keys: &[("r", "5"), ("l", "0.2e-6"), ("g", "0.01"), ("c", "300e-12"), ("freq_hz", "500e6")],
            },
            Action {
                name: "reflect",
                about: "reflection, VSWR and loss figures of a load",
                keys: &[("zl_ohm", "100"), ("z0_ohm", "50")],
            },
            Action {
                name: "input",
                about: "input impedance of a loaded lossless line",
                keys: &[("zl_ohm", "100"), ("z0_ohm", "50"), ("length_wl", "0.25")],
            },
            Action {
                name: "quarter",
                about: "quarter-wave transformer and its |Γ| sweep",
                keys: &[("zl_ohm", "100"), ("z0_ohm", "50"), ("f_max_ratio", "2"), ("points", "201")],
            },
            Action {
                name: "plate",
                about: "parallel-plate line constants",
                keys: &[("width_m", "0.01"), ("height_m", "0.001"), ("eps_r", "1"), ("freq_hz", "1e9")],
            },
        ],
        "smith" => &[
            Action {
                name: "point",
                about: "chart point from an impedance or a reflection coefficient",
                keys: &[("zl_ohm", "100-60j"), ("gamma", ""), ("z0_ohm", "50")],
            },
            Action {
                name: "circle",
                about: "constant resistance, reactance or VSWR circle",
                keys: &[("kind", "resistance"), ("value", "1"), ("points", "73")],
            },
        ],
        "net" => &[
            Action {
                name: "convert",
                about: "convert a Touchstone file between S, Z and Y",
                keys: &[("in", ""), ("to", "z"), ("z_ref_ohm", "50"), ("ports", "0")],
            },
            Action {
                name: "component",
                about: "network parameters of a canonical component",
                keys: &[
                    ("kind", "series_r"),
                    ("r_ohm", "50"),
                    ("l_h", "1e-9"),
                    ("c_f", "1e-12"),
                    ("z_line_ohm", "50"),
                    ("theta0_deg", "90"),
                    ("f0_hz", "1e9"),
                    ("z1_ohm", "50"),
                    ("z2_ohm", "50"),
                    ("z_ref_ohm", "50"),
                    ("f_start_hz", "1e9"),
                    ("f_stop_hz", "1e9"),
                    ("points", "1"),
                    ("to", "s"),
                ],
            },
            Action {
                name: "cascade",
                about: "cascade two two-port Touchstone files",
                keys: &[("a", ""), ("b", ""), ("to", "s"), ("z_ref_ohm", "50")],
            },
        ],
        "match" => &[
            Action {
                name: "stub",
                about: "single shunt-stub tuner",
                keys: &[("zl_ohm", "100-60j"), ("z0_ohm", "50"), ("stub", "short")],
            },
            Action {
                name: "lumped",
                about: "two-element L-section matches",
                keys: &[("zl_ohm", "100-60j"), ("z0_ohm", "50"), ("freq_hz", "1e9")],
            },
        ],
        "filter" => &[
            Action {
                name: "lowpass",
                about: "Richards/Kuroda stub low-pass and its response",
                keys: &[
                    ("order", "3"),
                    ("ripple_db", "0"),
                    ("g", ""),
                    ("fc_hz", "3e9"),
                    ("z0_ohm", "50"),
                    ("f_start_hz", "0.1e9"),
                    ("f_stop_hz", "9e9"),
                    ("points", "90"),
                ],
            },
            Action {
                name: "bandpass",
                about: "coupled-line bandpass design and its response",
                keys: &[
                    ("order", "2"),
                    ("ripple_db", "0.5"),
                    ("g", "1,1.4029,0.7071,1.9841"),
                    ("f0_hz", "1e9"),
                    ("f1_hz", "0.85e9"),
                    ("z0_ohm", "50"),
                    ("f_start_hz", "0.5e9"),
                    ("f_stop_hz", "1.5e9"),
                    ("points", "101"),
                ],
            },
        ],
        "amp" => &[
            Action {
                name: "gains",
                about: "power gains, mismatch factors and stability of a two-port",
                keys: &[
                    ("s11", "0.87@-28"),
                    ("s12", "0.01@76"),
                    ("s21", "26.73@159"),
                    ("s22", "0.96@-16"),
                    ("gamma_s", "0.18699186991869918"),
                    ("gamma_l", "0"),
                ],
            },
            Action {
                name: "circles",
                about: "unilateral constant-gain circles",
                keys: &[
                    ("s11", "0.87@-28"),
                    ("s12", "0.01@76"),
                    ("s21", "26.73@159"),
                    ("s22", "0.96@-16"),
                    ("side", "source"),
                    ("gains_db", "0,2,4"),
                    ("points", "73"),
                ],
            },
            Action { name: "stability", about: "stability factors and circles", keys: BFU730F },
        ],
        "noise" => &[
            Action {
                name: "thermal",
                about: "thermal noise power k T B",
                keys: &[("temp_k", "300"), ("bandwidth_hz", "1e6")],
            },
            Action {
                name: "cascade",
                about: "Friis cascade of stages in signal order",
                keys: &[("gains_db", "15,25"), ("nf_db", "1.6,4"), ("t0_k", "300")],
            },
            Action {
                name: "circle",
                about: "constant noise-figure circle",
                keys: &[
                    ("nf_min_db", "0.57"),
                    ("rn_ohm", "6"),
                    ("z_opt_ohm", "100+5.2j"),
                    ("z0_ohm", "50"),
                    ("nf_db", "1"),
                    ("points", "73"),
                ],
            },
        ],
        "antenna" => &[
            Action {
                name: "pattern",
                about: "normalized pattern cut of an analytic radiator",
                keys: &[
                    ("model", "wire"),
                    ("freq_hz", "1e9"),
                    ("i0l_a_m", "1"),
                    ("m_a_m2", "1"),
                    ("half_length_wl", "0.25"),
                    ("height_wl", "0.25"),
                    ("radius_wl", "0.1"),
                    ("a_wl", "4"),
                    ("b_wl", "4"),
                    ("taper_p", "0"),
                    ("patch_radius_m", "4.6e-3"),
                    ("eps_r", "2.56"),
                    ("height_m", "0.5e-3"),
                    ("mode_n", "1"),
                    ("mode_m", "1"),
                    ("phi_deg", "0"),
                    ("theta_start_deg", "0"),
                    ("theta_stop_deg", "180"),
                    ("points", "1801"),
                ],
            },
            Action { name: "directivity", about: "directivity, radiated power and radiation resistance", keys: RADIATOR_KEYS },
            Action {
                name: "patch",
                about: "circular microstrip patch resonance",
                keys: &[("radius_m", "4.6e-3"), ("eps_r", "2.56"), ("height_m", "0.5e-3"), ("mode_n", "1"), ("mode_m", "1")],
            },
            Action {
                name: "polarization",
                about: "axial ratio and handedness of a far-field sample",
                keys: &[("e_theta", "1"), ("e_phi", "0+1j")],
            },
        ],
        "mom" => &[
            Action {
                name: "solve",
                about: "delta-gap fed straight wire: currents and input impedance",
                keys: &[
                    ("freq_hz", "300e6"),
                    ("length_wl", "0.5"),
                    ("radius_wl", "0.001"),
                    ("segments", "41"),
                    ("testing", "galerkin"),
                ],
            },
            Action {
                name: "sweep",
                about: "input impedance against total wire length",
                keys: &[
                    ("freq_hz", "300e6"),
                    ("length_start_wl", "0.40"),
                    ("length_stop_wl", "0.52"),
                    ("points", "13"),
                    ("radius_wl", "0.001"),
                    ("segments", "41"),
                    ("testing", "galerkin"),
                ],
            },
            Action {
                name: "converge",
                about: "input impedance against segment count",
                keys: &[
                    ("freq_hz", "300e6"),
                    ("length_wl", "0.47"),
                    ("radius_wl", "0.001"),
                    ("segments", "11,21,41,81"),
                    ("testing", "galerkin"),
                ],
            },
        ],
        "array" => &[
            Action {
                name: "pattern",
                about: "tapered, steered linear or planar array cut",
                keys: &[
                    ("k", "16"),
                    ("ny", "1"),
                    ("dx_wl", "0.5"),
                    ("dy_wl", "0.5"),
                    ("taper", "uniform"),
                    ("sll_db", "30"),
                    ("nbar", "8"),
                    ("m", "1"),
                    ("h", "0"),
                    ("scan_deg", "0"),
                    ("phi_deg", "0"),
                    ("points", "18001"),
                    ("freq_hz", "1e9"),
                ],
            },
            Action {
                name: "errors",
                about: "random and quantization error statistics",
                keys: &[
                    ("k", "64"),
                    ("dx_wl", "0.5"),
                    ("taper", "uniform"),
                    ("sll_db", "30"),
                    ("nbar", "8"),
                    ("m", "1"),
                    ("h", "0"),
                    ("bits", "4"),
                    ("phase_var_rad2", "0"),
                    ("amp_var", "0"),
                    ("trials", "1000"),
                    ("pattern_points", "0"),
                    ("seed", "1"),
                    ("freq_hz", "1e9"),
                ],
            },
            Action {
                name: "grating",
                about: "grating lobes in visible space and the spacing bound",
                keys: &[("dx_wl", "0.5"), ("dy_wl", "0"), ("scan_deg", "90"), ("phi_deg", "0")],
            },
            Action {
                name: "sparse",
                about: "sparse layout and its average sidelobe level",
                keys: &[
                    ("kind", "sunflower"),
                    ("count", "1000"),
                    ("spacing_wl", "2"),
                    ("seed", "1"),
                    ("samples", "2000"),
                    ("exclusion", "0.05"),
                    ("scan_deg", "0"),
                    ("freq_hz", "1e9"),
                ],
            },
            Action {
                name: "squint",
                about: "beam squint of a phase-steered array off its design frequency",
                keys: &[("scan_deg", "30"), ("f0_hz", "10e9"), ("f_hz", "11e9"), ("hpbw0_deg", "0")],
            },
            Action {
                name: "fpa",
                about: "focal-plane field and spillover efficiency",
                keys: &[("psi0_deg", "45"), ("freq_hz", "1e9"), ("r_max_wl", "2"), ("points", "41")],
            },
        ],
        "link" => &[
            Action {
                name: "radio",
                about: "Friis link budget",
                keys: &[
                    ("pt_w", "1e-3"),
                    ("gt_db", "0"),
                    ("gr_db", "0"),
                    ("freq_hz", "2.44e9"),
                    ("range_m", "10"),
                    ("pr_min_w", "1e-10"),
                    ("bandwidth_hz", "1e6"),
                    ("nf_db", "0"),
                ],
            },
            Action {
                name: "radar",
                about: "monostatic radar equation",
                keys: &[
                    ("pt_w", "1e4"),
                    ("gain_db", "auto"),
                    ("ae_m2", "1"),
                    ("freq_hz", "10e9"),
                    ("sigma_m2", "1"),
                    ("range_m", "1000"),
                    ("pr_min_w", "1e-13"),
                    ("bandwidth_hz", "1e6"),
                    ("nf_db", "0"),
                ],
            },
        ],
        _ => return None,
    };
    Some(list)
}

pub const SUBCOMMANDS: [&str; 11] =
    ["tline", "smith", "net", "match", "filter", "amp", "noise", "antenna", "mom", "array", "link"];

fn nearest<'a>(word: &str, candidates: impl IntoIterator<Item = &'a str>) -> Option<&'a str> {
    candidates
        .into_iter()
        .map(|c| (strsim::jaro_winkler(word, c), c))
        .filter(|(s, _)| *s > 0.7)
        .max_by(|a, b| a.0.total_cmp(&b.0))
        .map(|(_, c)| c)
}

fn suggest(word: &str, candidates: Vec<&str>) -> String {
    match nearest(word, candidates) {
        Some(c) => format!("; did you mean \"{c}\"?"),
        None => String::new(),
    }
}

fn find_action(sub: &str, action: Option<&str>) -> Result<&'static Action, CliError> {
    let list = actions(sub).ok_or_else(|| {
        CliError::Usage(format!("unknown subcommand \"{sub}\"{}", suggest(sub, SUBCOMMANDS.to_vec())))
    })?;
    match action {
        None => Ok(&list[0]),
        Some(a) => list.iter().find(|x| x.name == a).ok_or_else(|| {
            let names: Vec<&str> = list.iter().map(|x| x.name).collect();
            CliError::Usage(format!("unknown action \"{a}\" for {sub}{}", suggest(a, names)))
        }),
    }
}

fn check_key(action: &Action, key: &str) -> Result<(), CliError> {
    if action.keys.iter().any(|(k, _)| *k == key) {
        return Ok(());
    }
    let names: Vec<&str> = action.keys.iter().map(|(k, _)| *k).collect();
    Err(CliError::Usage(format!("unknown key \"{key}\" for {}{}", action.name, suggest(key, names))))
}

#[derive(Debug, Clone, PartialEq)]
pub struct OutputSpec {
    pub path: Option<String>,
    pub format: Option<Format>,
    pub complex: ComplexStyle,
}

/// A fully resolved invocation: every schema key of the action is present.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub subcommand: String,
    pub action: String,
    pub params: BTreeMap<String, String>,
    pub output: OutputSpec,
}

impl ScenarioConfig {
    fn new(sub: &str, action: Option<&str>) -> Result<Self, CliError> {
        let a = find_action(sub, action)?;
        Ok(Self {
            subcommand: sub.to_string(),
            action: a.name.to_string(),
            params: a.keys.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect(),
            output: OutputSpec { path: None, format: None, complex: ComplexStyle::ReIm },
        })
    }

    /// Sets a parameter or an output option, rejecting unknown keys.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), CliError> {
        match key {
            "output.path" | "out" => self.output.path = Some(value.to_string()),
            "output.format" | "format" => self.output.format = Some(parse_format(value)?),
            "output.complex" | "complex" => self.output.complex = parse_complex_style(value)?,
            _ => {
                check_key(find_action(&self.subcommand, Some(&self.action))?, key)?;
                self.params.insert(key.to_string(), value.to_string());
            }
        }
        Ok(())
    }
}

fn parse_format(v: &str) -> Result<Format, CliError> {
    match v {
        "csv" => Ok(Format::Csv),
        "json" => Ok(Format::Json),
        _ => Err(CliError::Usage(format!("format must be csv or json, got \"{v}\""))),
    }
}

fn parse_complex_style(v: &str) -> Result<ComplexStyle, CliError> {
    match v {
        "reim" => Ok(ComplexStyle::ReIm),
        "magphase" => Ok(ComplexStyle::MagPhase),
        _ => Err(CliError::Usage(format!("complex must be reim or magphase, got \"{v}\""))),
    }
}

/// Parses config text. `sub` and `action` from the command line take the
/// place of missing `subcommand`/`action` entries and must agree with them.
pub fn parse_config(text: &str, sub: Option<&str>, action: Option<&str>) -> Result<ScenarioConfig, CliError> {
    let mut pairs = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("config line {}: expected key = value", i + 1)))?;
        let k = k.trim();
        if k.is_empty() {
            return Err(CliError::Usage(format!("config line {}: empty key", i + 1)));
        }
        pairs.push((k.to_string(), v.trim().to_string()));
    }
    let lookup = |name: &str| pairs.iter().rev().find(|(k, _)| k == name).map(|(_, v)| v.clone());
    let file_sub = lookup("subcommand");
    let file_action = lookup("action");
    let sub = match (sub, file_sub.as_deref()) {
        (Some(a), Some(b)) if a != b => {
            return Err(CliError::Usage(format!("command line says {a} but the config says {b}")))
        }
        (Some(a), _) => a.to_string(),
        (None, Some(b)) => b.to_string(),
        (None, None) => return Err(CliError::Usage("config has no subcommand".into())),
    };
    let action = action.map(str::to_string).or(file_action);
    let mut cfg = ScenarioConfig::new(&sub, action.as_deref())?;
    for (k, v) in &pairs {
        if k != "subcommand" && k != "action" {
            cfg.set(k, v)?;
        }
    }
    Ok(cfg)
}

pub fn load_config(path: &str) -> Result<ScenarioConfig, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{path}: {e}")))?;
    parse_config(&text, None, None)
}

/// Typed access to resolved parameters.
pub struct Params<'a> {
    map: &'a BTreeMap<String, String>,
}

impl<'a> Params<'a> {
    fn raw(&self, key: &str) -> &'a str {
        self.map.get(key).map(String::as_str).expect("schema key")
    }

    fn bad(&self, key: &str, what: &str) -> CliError {
        CliError::Usage(format!("{key} = \"{}\" is not {what}", self.raw(key)))
    }

    pub fn str(&self, key: &str) -> &'a str {
        self.raw(key)
    }

    pub fn f64(&self, key: &str) -> Result<f64, CliError> {
        self.raw(key).parse::<f64>().map_err(|_| self.bad(key, "a number"))
    }

    pub fn usize(&self, key: &str) -> Result<usize, CliError> {
        self.raw(key).parse::<usize>().map_err(|_| self.bad(key, "a non-negative integer"))
    }

    pub fn u32(&self, key: &str) -> Result<u32, CliError> {
        self.raw(key).parse::<u32>().map_err(|_| self.bad(key, "a non-negative integer"))
    }

    pub fn u64(&self, key: &str) -> Result<u64, CliError> {
        self.raw(key).parse::<u64>().map_err(|_| self.bad(key, "a non-negative integer"))
    }

    pub fn complex(&self, key: &str) -> Result<C64, CliError> {
        parse_complex(self.raw(key)).ok_or_else(|| self.bad(key, "a complex number (re+imj or mag@deg)"))
    }

    pub fn f64_list(&self, key: &str) -> Result<Vec<f64>, CliError> {
        let s = self.raw(key);
        if s.is_empty() {
            return Ok(Vec::new());
        }
        s.split(',').map(|t| t.trim().parse::<f64>()).collect::<Result<_, _>>().map_err(|_| self.bad(key, "a list of numbers"))
    }

    pub fn usize_list(&self, key: &str) -> Result<Vec<usize>, CliError> {
        self.raw(key)
            .split(',')
            .map(|t| t.trim().parse::<usize>())
            .collect::<Result<_, _>>()
            .map_err(|_| self.bad(key, "a list of integers"))
    }

    pub fn choice(&self, key: &str, options: &[&'static str]) -> Result<&'static str, CliError> {
        let v = self.raw(key);
        options.iter().find(|o| **o == v).copied().ok_or_else(|| {
            CliError::Usage(format!("{key} = \"{v}\" is not one of {}{}", options.join(", "), suggest(v, options.to_vec())))
        })
    }
}

pub fn parse_complex(s: &str) -> Option<C64> {
    let s = s.trim();
    if let Some((m, d)) = s.split_once('@') {
        return Some(polar_deg(m.trim().parse().ok()?, d.trim().parse().ok()?));
    }
    s.parse::<C64>().ok()
}

/// Result of one action before it is written out.
#[derive(Debug, Clone, Default)]
pub struct Output {
    pub summary: Summary,
    pub table: Option<Table>,
    pub network: Option<NPortParams>,
    pub warnings: Vec<String>,
}

fn dispatch(cfg: &ScenarioConfig) -> Result<Output, CliError> {
    let p = Params { map: &cfg.params };
    let a = cfg.action.as_str();
    match cfg.subcommand.as_str() {
        "tline" => rf::tline(a, &p),
        "smith" => rf::smith(a, &p),
        "net" => rf::net(a, &p),
        "match" => rf::matching(a, &p),
        "filter" => rf::filter(a, &p),
        "amp" => rf::amp(a, &p),
        "noise" => rf::noise(a, &p),
        "antenna" => em::antenna(a, &p),
        "mom" => em::mom(a, &p),
        "array" => em::array(a, &p),
        "link" => em::link(a, &p),
        s => Err(CliError::Usage(format!("unknown subcommand \"{s}\""))),
    }
}

/// Table of frequency-indexed network parameters, one complex column per entry.
pub fn network_table(p: &NPortParams) -> Table {
    let letter = p.kind.letter().to_ascii_lowercase();
    let names: Vec<String> = (0..p.n_ports)
        .flat_map(|i| (0..p.n_ports).map(move |j| (i, j)))
        .map(|(i, j)| {
            if p.n_ports < 10 {
                format!("{letter}{}{}", i + 1, j + 1)
            } else {
                format!("{letter}{}_{}", i + 1, j + 1)
            }
        })
        .collect();
    let mut cols: Vec<(&str, ColumnKind)> = vec![("freq_hz", ColumnKind::Real)];
    cols.extend(names.iter().map(|n| (n.as_str(), ColumnKind::Complex)));
    let mut t = Table::new(&cols);
    for (f, m) in p.freqs.iter().zip(&p.matrices) {
        let mut row = vec![Cell::Real(*f)];
        for i in 0..p.n_ports {
            for j in 0..p.n_ports {
                row.push(Cell::Complex(m[(i, j)]));
            }
        }
        t.push(row);
    }
    t
}

fn resolve_out(path: &str) -> PathBuf {
    let p = PathBuf::from(path);
    match std::env::var_os(OUT_DIR_ENV) {
        Some(dir) if p.is_relative() => PathBuf::from(dir).join(p),
        _ => p,
    }
}

fn render(out: &Output, cfg: &ScenarioConfig, stdout: &mut dyn Write) -> Result<(), CliError> {
    let style = cfg.output.complex;
    let io = |e: std::io::Error| CliError::Io(e.to_string());
    let table = out.table.clone().or_else(|| out.network.as_ref().map(network_table));
    let Some(path) = &cfg.output.path else {
        let format = cfg.output.format.unwrap_or(Format::Csv);
        let text = match format {
            Format::Csv => match &table {
                Some(t) => out.summary.lines("# ") + &emit_table(t, Format::Csv, style),
                None => out.summary.lines(""),
            },
            Format::Json => {
                let mut v = serde_json::Map::new();
                v.insert("summary".into(), out.summary.to_json(style));
                if let Some(t) = &table {
                    let rows: serde_json::Value =
                        serde_json::from_str(&emit_table(t, Format::Json, style)).expect("own json");
                    v.insert("rows".into(), rows);
                }
                serde_json::to_string_pretty(&serde_json::Value::Object(v)).expect("json") + "\n"
            }
        };
        return stdout.write_all(text.as_bytes()).map_err(io);
    };
    let target = resolve_out(path);
    let ext = target.extension().and_then(|e| e.to_str()).unwrap_or("").to_ascii_lowercase();
    let is_touchstone = crate::network::ports_from_extension(path).is_some();
    let text = if is_touchstone {
        let net = out
            .network
            .as_ref()
            .ok_or_else(|| CliError::Usage(format!("{}/{} produces no network for {path}", cfg.subcommand, cfg.action)))?;
        touchstone_write(net, FreqUnit::Hz, TsFormat::RI)?
    } else {
        let format = cfg.output.format.unwrap_or(if ext == "json" { Format::Json } else { Format::Csv });
        match (&table, format) {
            (Some(t), f) => emit_table(t, f, style),
            (None, Format::Csv) => out.summary.lines(""),
            (None, Format::Json) => serde_json::to_string_pretty(&out.summary.to_json(style)).expect("json") + "\n",
        }
    };
    std::fs::write(&target, text).map_err(|e| CliError::Io(format!("{}: {e}", target.display())))?;
    stdout.write_all(out.summary.lines("").as_bytes()).map_err(io)
}

fn usage() -> String {
    let mut s = String::from(
        "usage: rfem <subcommand> [<action>] [--key value]... [--config FILE] [--out PATH] \
         [--format csv|json] [--complex reim|magphase]\n\nsubcommands:\n",
    );
    for sub in SUBCOMMANDS {
        let names: Vec<&str> = actions(sub).expect("listed").iter().map(|a| a.name).collect();
        s.push_str(&format!("  {sub:<8} {}\n", names.join(" | ")));
    }
    s.push_str("\nrfem <subcommand> --help lists actions, keys and defaults\n");
    s
}

fn sub_usage(sub: &str) -> String {
    let mut s = format!("rfem {sub} <action> [--key value]...\n");
    for a in actions(sub).expect("checked") {
        s.push_str(&format!("\n  {}: {}\n", a.name, a.about));
        for (k, v) in a.keys {
            let shown = if v.is_empty() { "(unset)" } else { v };
            s.push_str(&format!("    --{:<18} {shown}\n", k.replace('_', "-")));
        }
    }
    s
}

fn parse_args(args: &[String]) -> Result<Result<ScenarioConfig, String>, CliError> {
    let mut positional = Vec::new();
    let mut flags: Vec<(String, String)> = Vec::new();
    let mut config = None;
    let mut help = false;
    let mut i = 0;
    while i < args.len() {
        let a = &args[i];
        if let Some(name) = a.strip_prefix("--") {
            if name == "help" {
                help = true;
                i += 1;
                continue;
            }
            let (key, value) = match name.split_once('=') {
                Some((k, v)) => (k.to_string(), v.to_string()),
                None => {
                    let v = args.get(i + 1).ok_or_else(|| CliError::Usage(format!("--{name} needs a value")))?;
                    i += 1;
                    (name.to_string(), v.clone())
                }
            };
            let key = key.replace('-', "_");
            if key == "config" {
                config = Some(value);
            } else {
                flags.push((key, value));
            }
        } else if a == "-h" {
            help = true;
        } else {
            positional.push(a.clone());
        }
        i += 1;
    }
    if positional.len() > 2 {
        return Err(CliError::Usage(format!("unexpected argument \"{}\"", positional[2])));
    }
    let sub = positional.first().map(String::as_str);
    let action = positional.get(1).map(String::as_str);
    if help {
        return Ok(Err(match sub {
            Some(s) if actions(s).is_some() => sub_usage(s),
            _ => usage(),
        }));
    }
    let mut cfg = match &config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{path}: {e}")))?;
            parse_config(&text, sub, action)?
        }
        None => match sub {
            Some(s) => ScenarioConfig::new(s, action)?,
            None => return Err(CliError::Usage(format!("missing subcommand\n{}", usage()))),
        },
    };
    for (k, v) in &flags {
        cfg.set(k, v)?;
    }
    Ok(Ok(cfg))
}

/// Resolves the arguments into a configuration without running it.
pub fn resolve(args: &[String]) -> Result<ScenarioConfig, CliError> {
    match parse_args(args)? {
        Ok(cfg) => Ok(cfg),
        Err(_) => Err(CliError::Usage("help requested".into())),
    }
}

/// Runs one invocation against the given streams and returns the exit code.
pub fn run_with<I, S>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let args: Vec<String> = args.into_iter().map(Into::into).collect();
    let result = parse_args(&args).and_then(|parsed| match parsed {
        Err(help) => stdout.write_all(help.as_bytes()).map_err(|e| CliError::Io(e.to_string())),
        Ok(cfg) => {
            let out = dispatch(&cfg)?;
            for w in &out.warnings {
                let _ = writeln!(stderr, "warning: {w}");
            }
            render(&out, &cfg, stdout)
        }
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "rfem: {e}");
            e.exit_code()
        }
    }
}

pub fn run<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_listed_subcommand_has_actions() {
        for s in SUBCOMMANDS {
            let list = actions(s).unwrap();
            assert!(!list.is_empty());
            for a in list {
                let mut keys: Vec<&str> = a.keys.iter().map(|(k, _)| *k).collect();
                keys.sort();
                keys.dedup();
                assert_eq!(keys.len(), a.keys.len(), "{s} {}", a.name);
            }
        }
    }

    #[test]
    fn missing_unit_suffix_suggests_key() {
        let e = parse_config("subcommand = tline\naction = gamma\nfreq = 1e9\n", None, None).unwrap_err();
        let CliError::Usage(m) = e else { panic!() };
        assert!(m.contains("\"freq\"") && m.contains("\"freq_hz\""), "{m}");
    }

    #[test]
    fn complex_forms() {
        assert_eq!(parse_complex("100-60j"), Some(C64::new(100.0, -60.0)));
        assert_eq!(parse_complex("2"), Some(C64::new(2.0, 0.0)));
        let z = parse_complex("1@90").unwrap();
        assert!((z - C64::new(0.0, 1.0)).norm() < 1e-15);
        assert_eq!(parse_complex("x"), None);
    }
}
