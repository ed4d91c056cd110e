//! The upper-triangular group H is maximal in SL(2): any g with g21 ≠ 0
//! together with H generates everything. The example writes a target as
//! u·h1⁻¹·g⁻¹·h2⁻¹ and checks the product, then tests the normalizer
//! predicates.

use sl2kit::arith::{Mat2, NumberField};
use sl2kit::sl2::{evaluate_word, maximality_factor, normalizes_torus, normalizes_unipotent, Factor};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let k = NumberField::new(&[1, 0, 1])?;
    let i = k.gen();
    let g = Mat2::new(k.one(), k.zero(), &i + &k.one(), k.one());
    let target = Mat2::new(k.from_int(2), i.clone(), i.clone(), k.zero());

    let word = maximality_factor(&g, &target)?;
    for f in &word {
        match f {
            Factor::H(h) => println!("  H {h:?}"),
            Factor::G => println!("  g"),
            Factor::GInverse => println!("  g⁻¹"),
        }
    }
    println!("product equals target: {}", evaluate_word(&word, &g) == target);

    let w = Mat2::from_ints(&k, [[0, 1], [-1, 0]]);
    println!("w normalizes torus: {}, unipotent: {}", normalizes_torus(&w), normalizes_unipotent(&w));
    Ok(())
}
