//! Canonical two- and three-ports, parameter conversion and a Touchstone round trip.

use rfem::network::{
    cascade, component_sparams, convert, touchstone_read, touchstone_write, Component, Element, FreqUnit,
    ParamKind, TsFormat,
};

fn main() -> rfem::Result<()> {
    let freqs = [1e9];
    let series = component_sparams(&Component::SeriesZ(Element::Resistor(50.0)), &freqs, 50.0)?;
    println!("series 50 ohm S:\n{:?}", series.matrices[0].to_rows());

    let shunt = component_sparams(&Component::ShuntY(Element::Resistor(50.0)), &freqs, 50.0)?;
    let z = convert(&shunt, ParamKind::Z, 50.0)?;
    println!("shunt 50 ohm Z:\n{:?}", z.matrices[0].to_rows());

    let wilk = component_sparams(&Component::WilkinsonEqual { f0: 1e9 }, &freqs, 50.0)?;
    let m = &wilk.matrices[0];
    println!("Wilkinson at f0: S21 = {:.6}, S23 = {:.2e}", m[(1, 0)], m[(1, 2)].norm());

    let both = cascade(&series, &shunt)?;
    let text = touchstone_write(&both, FreqUnit::GHz, TsFormat::RI)?;
    println!("\nseries then shunt, as a Touchstone file:\n{text}");
    let back = touchstone_read(&text, Some(2))?;
    let err = (back.params.matrices[0][(1, 0)] - both.matrices[0][(1, 0)]).norm();
    println!("round-trip error in S21: {err:.1e}");
    Ok(())
}
