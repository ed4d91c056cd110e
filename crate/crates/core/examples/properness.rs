//! Metric properness of the diagonal action at desk scale.
//!
//! For `SL(2, Z[1/2])` generated by `S`, `T` and `diag(2, 1/2)` this lists the
//! exact finite set of elements moving the basepoint of `T_2 × H²` by less
//! than `C` and checks that every short word with that property is in it.
//!
//! ```bash
//! cargo run -p sl2kit --example properness -- 3.0 8
//! ```

use sl2kit::arith::{Mat2, NumberField};
use sl2kit::proper::{MarkedGroup, DEFAULT_BUDGET};
use std::time::Instant;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let c: f64 = args.next().map_or(Ok(3.0), |s| s.parse())?;
    let max_len: usize = args.next().map_or(Ok(8), |s| s.parse())?;

    let q = NumberField::rationals();
    let s = Mat2::from_ints(&q, [[0, -1], [1, 0]]);
    let t = Mat2::from_ints(&q, [[1, 1], [0, 1]]);
    let d = Mat2::torus(&q.from_int(2));

    let sl2z = MarkedGroup::new(&q, vec![s.clone(), t.clone()])?;
    let small = sl2z.enumerate_bounded(0.1, DEFAULT_BUDGET)?;
    println!("SL(2,Z), C = 0.1: {} elements", small.elements.len());
    for g in &small.elements {
        println!("  {g:?}");
    }

    let group = MarkedGroup::new(&q, vec![s, t, d])?;
    println!("ring: s = {}, primes = {:?}", group.ring().s, group.ring().primes);
    let start = Instant::now();
    let report = group.properness_check(c, max_len, DEFAULT_BUDGET)?;
    println!(
        "SL(2,Z[1/2]), C = {c}, words ≤ {max_len}: {} short words, {} enumerated, contained = {} ({})",
        report.word_count,
        report.enumerated_count,
        report.contained,
        report.certificate()
    );
    println!("elapsed: {:.2?}", start.elapsed());
    Ok(())
}
