//! Conjugating a 2-dimensional subalgebra of sl(2, Q(i)) back to the
//! upper-triangular one.

use sl2kit::arith::{ratio, Mat2, NumberField};
use sl2kit::sl2::{classify_2dim, normalize_basis, LieElement};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let k = NumberField::new(&[1, 0, 1])?;
    let i = k.gen();
    let e = Mat2::from_ints(&k, [[0, 1], [0, 0]]);
    let h = Mat2::from_ints(&k, [[1, 0], [0, -1]]).scale(&k.from_rational(ratio(1, 2)));

    // hide the standard algebra behind p = [[1, i], [2, 1 + 2i]]
    let p = Mat2::new(k.one(), i.clone(), k.from_int(2), &k.one() + &i.scale(&ratio(2, 1)));
    let pinv = p.inverse()?;
    let x = LieElement::new(&(&p * &e) * &pinv)?;
    let y = LieElement::new(&(&p * &h.add(&e)) * &pinv)?;
    println!("x = {:?}\ny = {:?}", x.matrix(), y.matrix());

    let (x1, x2) = normalize_basis(x.clone(), y.clone())?;
    println!("x1 = {:?}, x2 = {:?}", x1.matrix(), x2.matrix());

    let out = classify_2dim(x, y)?;
    println!("Q = {:?}", out.conjugator);
    for z in &out.conjugated {
        println!("  Q⁻¹·z·Q = {:?}", z.matrix());
    }

    let err = classify_2dim(LieElement::new(h.scale(&i))?, LieElement::new(h.clone())?).unwrap_err();
    println!("{err}");
    Ok(())
}
