//! Archimedean side of the action: embeddings of Q(γ) into C, the Möbius
//! action on upper half-space and the closed-form displacement of the
//! basepoint (0, 1).

use num_complex::Complex64;
use sl2kit::arith::{Mat2, NumberField};
use sl2kit::hyperbolic::{
    displacement_hyp, hyp_distance, mobius_act, ArchimedeanEmbedding, HPoint,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let a = HPoint::basepoint();
    let b = HPoint::new(Complex64::new(0.0, 0.0), 4.0)?;
    println!("d((0,1), (0,4)) = {:.12} (ln 4 = {:.12})", hyp_distance(&a, &b), 4f64.ln());

    let k = NumberField::new(&[1, 0, 1])?;
    let i = k.gen();
    let g = Mat2::new(k.one(), i.clone(), k.zero(), k.one());
    for idx in 0..k.degree() {
        let emb = ArchimedeanEmbedding::new(&k, idx)?;
        let image = mobius_act(&emb.embed_matrix(&g), &a)?;
        println!(
            "γ ↦ {:.3}: g·(0,1) = ({:.3}, {:.3}), displacement {:.12} (oracle {:.12})",
            emb.root(),
            image.z,
            image.t,
            displacement_hyp(&g, &emb),
            hyp_distance(&a, &image)
        );
    }
    Ok(())
}
