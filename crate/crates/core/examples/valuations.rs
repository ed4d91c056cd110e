//! p-adic valuations on Q and their extension to unramified number fields.
//!
//! The coefficientwise minimum is only a valuation when the minimal
//! polynomial stays irreducible mod p; otherwise construction fails with an
//! explicit pair breaking multiplicativity.

use sl2kit::arith::{ratio, NumberField};
use sl2kit::valuation::{extend, PAdicValuation};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let v3 = PAdicValuation::new(3)?;
    for q in [ratio(9, 2), ratio(2, 27), ratio(0, 1)] {
        println!("ν₃({q}) = {}", v3.nu_p(&q));
    }

    let eisenstein = NumberField::new(&[1, 1, 1])?;
    let v = extend(2, &eisenstein)?;
    let w = &eisenstein.gen() + &eisenstein.from_int(-1);
    println!(
        "Q(ω) at 2: residue field F_{}, ν(4ω − 8) = {}, ν(ω − 1) = {}",
        v.residue_field_size(),
        v.nu_ext(&(&eisenstein.gen().scale(&ratio(4, 1)) - &eisenstein.from_int(8))),
        v.nu_ext(&w)
    );

    for (p, minpoly) in [(3, vec![1, 0, 1]), (2, vec![-2, 0, 1]), (5, vec![1, 0, 1])] {
        let k = NumberField::new(&minpoly)?;
        match extend(p, &k) {
            Ok(v) => println!("p = {p}, minpoly {minpoly:?}: accepted, q = {}", v.residue_field_size()),
            Err(e) => println!("p = {p}, minpoly {minpoly:?}: {e}"),
        }
    }
    Ok(())
}
