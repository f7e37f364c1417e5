//! Stub low-pass through Richards and Kuroda, and a coupled-line bandpass.

use rfem::matching::{coupled_line_bandpass_design, filter_response, richards_kuroda_lowpass, LowpassPrototype};

fn main() -> rfem::Result<()> {
    let proto = LowpassPrototype::chebyshev(3, 0.5)?;
    println!("0.5 dB Chebyshev g = {:?}", proto.g);
    let lp = richards_kuroda_lowpass(&proto, 3e9, 50.0)?;
    for e in &lp.ladder.elements {
        println!("  {e:?}");
    }
    let freqs: Vec<f64> = (1..=12).map(|i| i as f64 * 0.5e9).collect();
    for r in filter_response(&lp.ladder, &freqs)? {
        println!("  {:5.2} GHz  S21 = {:8.3} dB", r.freq / 1e9, r.s21_db());
    }

    let d = coupled_line_bandpass_design(&LowpassPrototype::chebyshev_3db_n2(), 28e9, 25.2e9, 50.0)?;
    println!("\n28 GHz coupled-line bandpass:");
    for (i, c) in d.pairs.iter().enumerate() {
        println!("  pair {}: Ze = {:.2}, Zo = {:.2} ohm", i + 1, c.z_even, c.z_odd);
    }
    println!("  stubs {:.2?}\n  lines {:.2?}", d.stubs, d.lines);
    Ok(())
}
