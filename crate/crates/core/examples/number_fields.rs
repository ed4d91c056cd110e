//! Exact arithmetic in Q(φ), φ² = φ + 1: inverses, minimal polynomials and
//! algebraic integrality.

use sl2kit::arith::{ratio, Mat2, NumberField};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let k = NumberField::new(&[-1, -1, 1])?;
    let phi = k.gen();
    let x = &phi + &k.from_rational(ratio(1, 3));

    println!("φ = {phi}, φ² = {}", phi.pow(2));
    println!("1/φ = {}", phi.checked_inv().expect("nonzero"));
    println!("x = {x}: minimal polynomial {}, integral: {}", x.minimal_polynomial(), x.is_algebraic_integer());

    let half_trace = &k.one() - &phi.scale(&ratio(1, 2));
    println!("{half_trace}: minimal polynomial {}", half_trace.minimal_polynomial());

    let g = Mat2::new(phi.clone(), k.one(), k.one(), phi.clone());
    println!("g = {g:?}, det = {}, charpoly (low → high) = {:?}", g.det(), g.charpoly());
    println!("g⁻¹ = {:?}", g.inverse()?);

    match NumberField::new(&[-4, 0, 1]) {
        Err(e) => println!("x² − 4 rejected: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
