//! Manual timing probes for the big residue-table builds.
//!
//! Run with: `cargo test -p pedq-core --release --test bench_tables -- --ignored --nocapture`

use std::time::Instant;

use pedq_core::eta::{ped2_series, ped_series};
use pedq_core::series::Ring;

#[test]
#[ignore]
fn time_ped_mod8_3m() {
    let t = Instant::now();
    let s = ped_series(3_000_000, Ring::Mod8);
    println!("ped mod8 @3e6: {:?} (nnz {})", t.elapsed(), s.nonzero_count());
}

#[test]
#[ignore]
fn time_ped_mod8_20m() {
    let t = Instant::now();
    let s = ped_series(19_863_281, Ring::Mod8);
    println!("ped mod8 @19.9e6: {:?}", t.elapsed());
    let ped = s.residues().unwrap();
    // one self-convolution dot product at the top argument
    let t = Instant::now();
    let m = 19_863_281usize;
    let mut acc = 0u8;
    for k in 0..=m {
        acc = acc.wrapping_add(ped[k].wrapping_mul(ped[m - k]));
    }
    println!("dot product @{m}: {:?} -> {}", t.elapsed(), acc & 7);
}

#[test]
#[ignore]
fn time_ped2_mod24_125m() {
    let t = Instant::now();
    let s = ped2_series(1_250_000, Ring::Mod24);
    println!("ped2 mod24 @1.25e6: {:?} (nnz {})", t.elapsed(), s.nonzero_count());
}
