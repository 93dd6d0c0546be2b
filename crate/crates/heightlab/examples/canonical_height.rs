//! Canonical heights two ways: the doubling-limit oracle on exact
//! coordinates and the sum of Néron local heights, plus the quadratic-form
//! identities.
//!
//! Run with: cargo run --example canonical_height

use heightlab::elliptic::{
    canonical_height, canonical_height_oracle, curve_from_i64, is_torsion, CurvePoint, Place,
};

fn main() {
    let e = curve_from_i64([0, 0, 1, -1, 0]).unwrap();
    let p = CurvePoint::xy(0, 0);

    let oracle = canonical_height_oracle(&e, &p, 1e-7).unwrap();
    let dec = canonical_height(&e, &p, 40).unwrap();
    println!("y^2 + y = x^3 - x, P = (0, 0):");
    println!("  doubling-limit oracle: {:.10} (+- {:.1e})", oracle.mid(), oracle.width() / 2.0);
    println!("  local decomposition:   {:.10} (kappa = {})", dec.value.mid(), dec.kappa);
    for r in &dec.per_place {
        let place = match &r.place {
            Place::Archimedean => "oo".to_string(),
            Place::Prime(q) => q.to_string(),
        };
        println!("    lambda_{place:>3} = {:+.10}", r.lambda.mid());
    }

    // quadraticity and the parallelogram law via the decomposition path
    let h1 = dec.value.mid();
    for n in 2..=4i64 {
        let pn = e.mul_scalar(n, &p);
        let hn = canonical_height(&e, &pn, 40).unwrap().value.mid();
        println!("  h([{n}]P)/h(P) = {:.9} (expect {})", hn / h1, n * n);
    }
    let q = e.mul_scalar(3, &p);
    let hq = canonical_height(&e, &q, 40).unwrap().value.mid();
    let sum = e.add(&p, &q);
    let diff = e.add(&p, &e.negate(&q));
    let lhs = canonical_height(&e, &sum, 40).unwrap().value.mid()
        + canonical_height(&e, &diff, 40).unwrap().value.mid();
    println!(
        "  parallelogram: h(P+Q) + h(P-Q) = {:.10} vs 2h(P) + 2h(Q) = {:.10}",
        lhs,
        2.0 * h1 + 2.0 * hq
    );

    // torsion points sit at height zero
    let e6 = curve_from_i64([0, 0, 0, 0, 1]).unwrap();
    let t = CurvePoint::xy(2, 3);
    let (is_t, ord) = is_torsion(&e6, &t);
    let ht = canonical_height(&e6, &t, 40).unwrap().value.mid();
    println!("\ny^2 = x^3 + 1, (2,3): torsion = {is_t} (order {:?}), h = {:.2e}", ord, ht);
}
