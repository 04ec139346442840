//! Rasterize one of this crate's SVG documents to PNG.
//!
//! Usage: cargo run --example svg2png -- input.svg output.png [width]

use spatialkit_core::render::{rasterize, VecDoc};

fn main() {
    let mut args = std::env::args().skip(1);
    let (Some(input), Some(output)) = (args.next(), args.next()) else {
        eprintln!("usage: svg2png <input.svg> <output.png> [width]");
        std::process::exit(2);
    };
    let width: u32 = args.next().and_then(|w| w.parse().ok()).unwrap_or(512);
    let svg = std::fs::read_to_string(&input).expect("readable input");
    let doc = VecDoc::from_svg(&svg).expect("document in the supported subset");
    let png = rasterize(&doc, width).expect("rasterizes");
    std::fs::write(&output, png).expect("writable output");
}
