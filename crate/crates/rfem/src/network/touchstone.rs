use super::{NPortParams, ParamKind};
use crate::error::{Error, Result};
use crate::numerics::{ComplexMatrix, C64};
use std::fmt::Write as _;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TsFormat {
    RI,
    MA,
    DB,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FreqUnit {
    Hz,
    KHz,
    MHz,
    GHz,
}

impl FreqUnit {
    pub fn scale(&self) -> f64 {
        match self {
            FreqUnit::Hz => 1.0,
            FreqUnit::KHz => 1e3,
            FreqUnit::MHz => 1e6,
            FreqUnit::GHz => 1e9,
        }
    }

    fn name(&self) -> &'static str {
        match self {
            FreqUnit::Hz => "HZ",
            FreqUnit::KHz => "KHZ",
            FreqUnit::MHz => "MHZ",
            FreqUnit::GHz => "GHZ",
        }
    }
}

/// Parsed file plus any non-fatal remarks (skipped noise data and the like).
#[derive(Debug, Clone, PartialEq)]
pub struct Touchstone {
    pub params: NPortParams,
    pub warnings: Vec<String>,
}

struct Options {
    unit: FreqUnit,
    kind: ParamKind,
    format: TsFormat,
    r: f64,
}

fn parse_options(line: &str, lineno: usize) -> Result<Options> {
    let err = |msg: String| Error::Parse { line: lineno, msg };
    let mut o = Options { unit: FreqUnit::GHz, kind: ParamKind::S, format: TsFormat::MA, r: 50.0 };
    let mut toks = line[1..].split_whitespace();
    while let Some(t) = toks.next() {
        match t.to_ascii_uppercase().as_str() {
            "HZ" => o.unit = FreqUnit::Hz,
            "KHZ" => o.unit = FreqUnit::KHz,
            "MHZ" => o.unit = FreqUnit::MHz,
            "GHZ" => o.unit = FreqUnit::GHz,
            "S" => o.kind = ParamKind::S,
            "Z" => o.kind = ParamKind::Z,
            "Y" => o.kind = ParamKind::Y,
            "G" | "H" => return Err(err(format!("{t} parameters are not supported"))),
            "RI" => o.format = TsFormat::RI,
            "MA" => o.format = TsFormat::MA,
            "DB" => o.format = TsFormat::DB,
            "R" => {
                let v = toks.next().ok_or_else(|| err("R without a value".into()))?;
                o.r = v.parse().map_err(|_| err(format!("bad reference resistance '{v}'")))?;
                if !(o.r > 0.0) {
                    return Err(err("reference resistance must be positive".into()));
                }
            }
            other => return Err(err(format!("unknown option '{other}'"))),
        }
    }
    Ok(o)
}

fn pair(format: TsFormat, a: f64, b: f64) -> C64 {
    match format {
        TsFormat::RI => C64::new(a, b),
        TsFormat::MA => C64::from_polar(a, b.to_radians()),
        TsFormat::DB => C64::from_polar(10f64.powf(a / 20.0), b.to_radians()),
    }
}

/// Reads version-1 Touchstone text. When `n_ports` is `None` the port count is
/// inferred from how the data lines group into frequency records.
pub fn touchstone_read(text: &str, n_ports: Option<usize>) -> Result<Touchstone> {
    let mut opts: Option<Options> = None;
    // (line number, tokens) of data lines, comments stripped
    let mut lines: Vec<(usize, Vec<f64>)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let body = raw.split('!').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        if body.starts_with('#') {
            if opts.is_some() {
                return Err(Error::Parse { line: lineno, msg: "second option line".into() });
            }
            opts = Some(parse_options(body, lineno)?);
            continue;
        }
        if body.starts_with('[') {
            return Err(Error::Parse { line: lineno, msg: "version 2 keywords are not supported".into() });
        }
        let toks = body
            .split_whitespace()
            .map(|t| t.parse::<f64>().map_err(|_| Error::Parse { line: lineno, msg: format!("bad number '{t}'") }))
            .collect::<Result<Vec<f64>>>()?;
        lines.push((lineno, toks));
    }
    let opts = opts.unwrap_or(Options { unit: FreqUnit::GHz, kind: ParamKind::S, format: TsFormat::MA, r: 50.0 });
    if lines.is_empty() {
        return Err(Error::Parse { line: text.lines().count().max(1), msg: "no data".into() });
    }
    let n = match n_ports {
        Some(n) if (1..=4).contains(&n) => n,
        Some(n) => return Err(Error::Unsupported(format!("{n}-port files"))),
        None => infer_ports(&lines)?,
    };
    let per_record = 1 + 2 * n * n;
    let mut warnings = Vec::new();
    let mut freqs = Vec::new();
    let mut mats = Vec::new();
    let mut buf: Vec<f64> = Vec::with_capacity(per_record);
    let mut start_line = 0;
    for (idx, (lineno, toks)) in lines.iter().enumerate() {
        if buf.is_empty() {
            start_line = *lineno;
            let f = toks[0] * opts.unit.scale();
            if let Some(&last) = freqs.last() {
                if f <= last {
                    if n == 2 && toks.len() == 5 {
                        warnings.push(format!(
                            "noise parameter block from line {lineno} skipped ({} lines)",
                            lines.len() - idx
                        ));
                        break;
                    }
                    return Err(Error::Parse { line: *lineno, msg: "frequencies must be ascending".into() });
                }
            }
        }
        buf.extend_from_slice(toks);
        if buf.len() > per_record {
            return Err(Error::Parse {
                line: *lineno,
                msg: format!("expected {per_record} values for this frequency, found more"),
            });
        }
        if buf.len() == per_record {
            freqs.push(buf[0] * opts.unit.scale());
            let vals: Vec<C64> = buf[1..].chunks(2).map(|p| pair(opts.format, p[0], p[1])).collect();
            let scale = match opts.kind {
                ParamKind::S => 1.0,
                ParamKind::Z => opts.r,
                ParamKind::Y => 1.0 / opts.r,
            };
            let m = ComplexMatrix::from_fn(n, n, |i, j| {
                // two-port data is stored column-major
                let k = if n == 2 { j * 2 + i } else { i * n + j };
                vals[k] * scale
            });
            mats.push(m);
            buf.clear();
        }
    }
    if !buf.is_empty() {
        return Err(Error::Parse {
            line: start_line,
            msg: format!("incomplete record: {} of {per_record} values", buf.len()),
        });
    }
    let refs = if opts.kind == ParamKind::S { vec![opts.r; n] } else { Vec::new() };
    let params = NPortParams::new(opts.kind, freqs, mats, refs)
        .map_err(|e| Error::Parse { line: lines[0].0, msg: e.to_string() })?;
    Ok(Touchstone { params, warnings })
}

fn infer_ports(lines: &[(usize, Vec<f64>)]) -> Result<usize> {
    // a record starts with an odd token count (frequency + pairs); continuation
    // lines hold whole pairs only
    let first = &lines[0].1;
    let mut count = first.len();
    for (_, toks) in &lines[1..] {
        if toks.len() % 2 == 1 {
            break;
        }
        count += toks.len();
    }
    for n in 1..=4 {
        if count == 1 + 2 * n * n {
            return Ok(n);
        }
    }
    Err(Error::Parse { line: lines[0].0, msg: format!("cannot infer port count from {count} values") })
}

/// Port count implied by a `.sNp` file name.
pub fn ports_from_extension(path: &str) -> Option<usize> {
    let ext = path.rsplit('.').next()?.to_ascii_lowercase();
    let digits = ext.strip_prefix('s')?.strip_suffix('p')?;
    digits.parse().ok()
}

fn fmt_pair(format: TsFormat, v: C64) -> (f64, f64) {
    match format {
        TsFormat::RI => (v.re, v.im),
        TsFormat::MA => (v.norm(), v.arg().to_degrees()),
        TsFormat::DB => (20.0 * v.norm().log10(), v.arg().to_degrees()),
    }
}

/// Writes version-1 Touchstone text. S data needs one reference shared by all ports.
pub fn touchstone_write(p: &NPortParams, unit: FreqUnit, format: TsFormat) -> Result<String> {
    if p.n_ports > 4 {
        return Err(Error::Unsupported(format!("{}-port files", p.n_ports)));
    }
    let r = match p.kind {
        ParamKind::S => p
            .uniform_z_ref()
            .ok_or_else(|| Error::Unsupported("Touchstone v1 needs one reference for all ports".into()))?,
        _ => 50.0,
    };
    let scale = match p.kind {
        ParamKind::S => 1.0,
        ParamKind::Z => 1.0 / r,
        ParamKind::Y => r,
    };
    let fname = match format {
        TsFormat::RI => "RI",
        TsFormat::MA => "MA",
        TsFormat::DB => "DB",
    };
    let n = p.n_ports;
    let mut out = String::new();
    writeln!(out, "! {n}-port {} parameters", p.kind.letter()).unwrap();
    writeln!(out, "# {} {} {fname} R {r}", unit.name(), p.kind.letter()).unwrap();
    for (f, m) in p.freqs.iter().zip(&p.matrices) {
        let entry = |v: C64| {
            let (a, b) = fmt_pair(format, v * scale);
            format!(" {a:e} {b:e}")
        };
        let fstr = format!("{:e}", f / unit.scale());
        if n <= 2 {
            let mut line = fstr;
            for j in 0..n {
                for i in 0..n {
                    line += &entry(m[(i, j)]);
                }
            }
            writeln!(out, "{line}").unwrap();
        } else {
            for i in 0..n {
                let mut line = if i == 0 { fstr.clone() } else { " ".repeat(fstr.len()) };
                for j in 0..n {
                    line += &entry(m[(i, j)]);
                }
                writeln!(out, "{line}").unwrap();
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::{component_sparams, Component, Element};

    #[test]
    fn one_port_ma() {
        let t = touchstone_read("# GHZ S MA R 50\n1 0.5 45\n", None).unwrap();
        let s = t.params.matrices[0][(0, 0)];
        assert_eq!(t.params.freqs, vec![1e9]);
        assert!((s.norm() - 0.5).abs() < 1e-15 && (s.arg().to_degrees() - 45.0).abs() < 1e-12);
    }

    #[test]
    fn db_format() {
        let t = touchstone_read("# HZ S DB R 50\n100 -6.02 0\n", Some(1)).unwrap();
        assert!((t.params.matrices[0][(0, 0)].norm() - 0.5).abs() < 5e-4);
    }

    #[test]
    fn two_port_order_and_noise() {
        let text = "! test\n# MHZ S RI R 50\n100 1 0 2 0 3 0 4 0\n200 1 0 2 0 3 0 4 0\n! noise\n100 1.2 0.5 30 0.3\n";
        let t = touchstone_read(text, None).unwrap();
        let m = &t.params.matrices[0];
        assert_eq!((m[(0, 0)].re, m[(1, 0)].re, m[(0, 1)].re, m[(1, 1)].re), (1.0, 2.0, 3.0, 4.0));
        assert_eq!(t.params.len(), 2);
        assert_eq!(t.warnings.len(), 1);
    }

    #[test]
    fn errors_carry_line_numbers() {
        assert!(matches!(touchstone_read("# GHZ Q MA R 50\n1 0.5 0\n", None), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(
            touchstone_read("# GHZ S MA R 50\n2 0.5 0\n1 0.5 0\n", None),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(matches!(touchstone_read("# GHZ S MA R 50\n1 0.5 0 0.1\n", Some(1)), Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn round_trip_series_resistor() {
        let p = component_sparams(&Component::SeriesZ(Element::Resistor(50.0)), &[1e9, 2e9, 3e9], 50.0).unwrap();
        for fmt in [TsFormat::RI, TsFormat::MA, TsFormat::DB] {
            let text = touchstone_write(&p, FreqUnit::GHz, fmt).unwrap();
            let back = touchstone_read(&text, Some(2)).unwrap().params;
            assert_eq!(back.freqs.len(), 3);
            for (a, b) in back.matrices.iter().zip(&p.matrices) {
                assert!(a.sub(b).unwrap().max_abs() < 1e-9);
            }
        }
    }

    #[test]
    fn four_port_wraps_rows() {
        let m = ComplexMatrix::from_fn(4, 4, |i, j| C64::new(i as f64 * 0.1, j as f64 * 0.01));
        let p = NPortParams::s(vec![1e9, 2e9], vec![m.clone(), m], 50.0).unwrap();
        let text = touchstone_write(&p, FreqUnit::MHz, TsFormat::RI).unwrap();
        let back = touchstone_read(&text, None).unwrap().params;
        assert_eq!(back.n_ports, 4);
        assert!(back.matrices[1].sub(&p.matrices[1]).unwrap().max_abs() < 1e-12);
        assert_eq!(ports_from_extension("amp.S2P"), Some(2));
    }

    #[test]
    fn z_data_is_normalized() {
        let t = touchstone_read("# GHZ Z RI R 50\n1 2 0\n", None).unwrap();
        assert_eq!(t.params.matrices[0][(0, 0)], C64::new(100.0, 0.0));
    }
}
