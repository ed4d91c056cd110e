//! The tree of PGL(2, Q_p): canonical vertices, closed-form distance, balls,
//! and the action of SL(2, Z[1/p]).

use sl2kit::arith::{Mat2, NumberField};
use sl2kit::tree::TreeContext;
use sl2kit::valuation::PAdicValuation;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p: u64 = std::env::args().nth(1).map_or(Ok(3), |s| s.parse())?;
    let q = NumberField::rationals();
    let tree = TreeContext::new(PAdicValuation::new(p)?);
    let v0 = tree.base_vertex();

    println!("neighbours of v0 in T_{p}:");
    for n in tree.neighbors(&v0) {
        println!("  n = {}, b = {}", n.n, n.b);
    }
    for r in 0..=4 {
        println!("|B({r})| = {} (formula {})", tree.ball(&v0, r).len(), tree.ball_size(r));
    }

    let d = Mat2::torus(&q.from_int(p as i64));
    let t = Mat2::from_ints(&q, [[1, 1], [0, 1]]);
    let dv = tree.act(&d, &v0)?;
    println!("diag(p, 1/p)·v0 = (n = {}, b = {}), distance {}", dv.n, dv.b, tree.distance(&v0, &dv));
    println!("T fixes v0: {}", tree.vertices_equal(&tree.act(&t, &v0)?, &v0));
    Ok(())
}
