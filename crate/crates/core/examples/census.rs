//! Prints how many pseudo hoops of each size exist, with a few class counts.
//!
//! `cargo run --release --example census -- 6`

use std::time::Instant;

use hoopkit::enumerate::{enumerate_hoops, EnumOptions};

fn main() {
    let max: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(5);
    println!("size  classes  labelled  basic  prelinear  commutative  ms");
    for n in 1..=max {
        let t = Instant::now();
        let iso = enumerate_hoops(&EnumOptions::new(n)).expect("valid size");
        let raw = enumerate_hoops(&EnumOptions::new(n).labelled()).expect("valid size");
        let count = |f: fn(&hoopkit::ClassFlags) -> bool| iso.iter().filter(|m| f(m.flags())).count();
        println!(
            "{n:>4}  {:>7}  {:>8}  {:>5}  {:>9}  {:>11}  {}",
            iso.len(),
            raw.len(),
            count(|f| f.basic),
            count(|f| f.prelinear),
            count(|f| f.commutative),
            t.elapsed().as_millis()
        );
    }
}
