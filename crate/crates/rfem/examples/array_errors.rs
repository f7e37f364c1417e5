//! Phase-quantization error statistics of a 64-element array, closed form against Monte Carlo.

use rfem::array::{error_statistics, ArrayLayout, ErrorModel};
use rfem::numerics::C64;

fn main() -> rfem::Result<()> {
    let f = 1e9;
    let layout = ArrayLayout::linear(64, 299_792_458.0 / f / 2.0)?;
    let a = vec![C64::new(1.0, 0.0); 64];
    for bits in [3, 4, 5, 6] {
        let st = error_statistics(&layout, &a, &ErrorModel::quantized(bits, 7), 2000, 0, f)?;
        let cf = &st.closed_form;
        let mc = st.monte_carlo.as_ref().and_then(|m| m.avg_null_sll_db);
        println!(
            "{bits} bits: var {:.5} rad^2, null SLL {:.2} dB (MC {:.2} dB), D loss {:.4} dB",
            cf.phase_var,
            cf.avg_null_sll_db,
            mc.unwrap_or(f64::NAN),
            cf.directivity_ratio_db
        );
    }
    Ok(())
}
