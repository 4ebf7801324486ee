//! Classify a k̄ × p grid and write the CSV and SVG (default target/atlas).
//!
//! cargo run --example region_atlas -- [out_dir]

use std::fs::File;
use std::io::BufWriter;

use blowuplab::exponents::{atlas, render_svg, AxisRange, VerdictKind};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out = std::env::args().nth(1).unwrap_or_else(|| "target/atlas".into());
    std::fs::create_dir_all(&out)?;

    let a = atlas(3, 2.0, 0.0, AxisRange::new(0.0, 4.0, 80), AxisRange::new(1.05, 3.5, 80))?;
    for kind in [VerdictKind::BlowUpTheorem1, VerdictKind::GlobalExistenceLiterature, VerdictKind::Unknown] {
        println!("{kind:<26} {}", a.count(kind));
    }
    if let Some(b) = &a.boundary {
        println!(
            "Fujita/Strauss crossing at kbar = {} , p = {}",
            b.kbar_label.as_deref().unwrap_or(&format!("{:.6}", b.kbar)),
            b.p_label.as_deref().unwrap_or(&format!("{:.6}", b.p)),
        );
    }

    a.write_csv(BufWriter::new(File::create(format!("{out}/atlas.csv"))?))?;
    std::fs::write(format!("{out}/atlas.svg"), render_svg(&a))?;
    println!("wrote {out}/atlas.csv and {out}/atlas.svg");
    Ok(())
}
