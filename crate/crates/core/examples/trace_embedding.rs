//! The 4-dimensional representation of SL(2, Z) on trace functionals.
//!
//! A basis is picked from the word ball of radius 3 in S, T; the example
//! prints α(S), α(T) and runs the exact checks on random words.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sl2kit::arith::{ratio, Mat2, NumberField};
use sl2kit::proper::{random_word, word_ball};
use sl2kit::trace_embed::{integral_characteristic, select_basis, verify_embedding, Rep4};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let q = NumberField::rationals();
    let s = Mat2::from_ints(&q, [[0, -1], [1, 0]]);
    let t = Mat2::from_ints(&q, [[1, 1], [0, 1]]);
    let gens = [s.clone(), t.clone()];

    let rep = Rep4::new(select_basis(word_ball(&q, &gens, 3))?);
    for (i, b) in rep.basis().elements().iter().enumerate() {
        println!("g_{} = {b:?}", i + 1);
    }
    println!("α(S) = {:?}", rep.alpha(&s));
    println!("α(T) = {:?}", rep.alpha(&t));

    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let samples: Vec<Mat2> = (0..200).map(|_| {
        let len = rng.random_range(1..=10);
        random_word(&q, &gens, len, &mut rng)
    }).collect();
    let report = verify_embedding(&rep, &samples);
    println!("{} samples, {} pairs: passed = {}", report.samples, report.pairs_checked, report.passed());

    let half = Mat2::new(q.from_rational(ratio(1, 2)), q.from_int(-1), q.one(), q.zero());
    println!("trace 1/2 integral: {}", integral_characteristic(&half)?);
    Ok(())
}
