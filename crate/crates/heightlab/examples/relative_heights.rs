//! Relative Mahler measures and heights over a base field: the
//! decomposition of h(2^(1/4)) over Q(sqrt 2), the per-embedding
//! discriminant inequality, and the absolute-vs-relative discriminant
//! identity probe.
//!
//! Run with: cargo run --example relative_heights

use heightlab::heights::{
    disc_identity_probe, norm_minpoly, relative_height_decomposition,
    relative_mahler_inequality_check, RelativeElement,
};
use num_bigint::BigInt;
use num_rational::BigRational;

fn rel(base: &[i64], coeffs: &[&[i64]]) -> RelativeElement {
    RelativeElement::new(
        heightlab::exactpoly::IntPolynomial::from_i64(base),
        coeffs
            .iter()
            .map(|c| c.iter().map(|&v| BigRational::from(BigInt::from(v))).collect())
            .collect(),
    )
    .unwrap()
}

fn main() {
    // alpha = 2^(1/4) presented as a root of x^2 - y over K = Q(sqrt 2)
    let e = rel(&[-2, 0, 1], &[&[0, -1], &[0], &[1]]);
    println!("norm form: {}", norm_minpoly(&e).unwrap());
    let rep = relative_height_decomposition(&e, 35).unwrap();
    for (i, h) in rep.per_embedding_height.iter().enumerate() {
        println!("  h_sigma_{i} = {:.12}", h.mid());
    }
    println!("  average        = {:.12}", rep.average_relative_height.mid());
    println!("  global h       = {:.12}  (log 2 / 4 = {:.12})", rep.global_height.mid(), std::f64::consts::LN_2 / 4.0);
    println!("  decomposition consistent: {}", rep.decomposition_consistent);
    println!("  N(disc f_K) = {}", rep.norm_relative_disc);

    // per-embedding discriminant inequality
    for idx in 0..2 {
        let r = relative_mahler_inequality_check(&e, idx).unwrap();
        println!(
            "  embedding {idx}: log|sigma(D)| = {:.6} <= m log m + (2m-2) log M = {:.6}: {:?}",
            r.lhs.mid(),
            r.rhs.mid(),
            r.status
        );
    }

    // the absolute discriminant against the norm of the relative one
    let probe = disc_identity_probe(&e).unwrap();
    println!(
        "\ndisc probe: D(f) = {}, N(D(f_K)) = {}, ratio = {:?} (factored {:?})",
        probe.abs_disc,
        probe.norm_rel_disc,
        probe.ratio.map(|r| r.to_string()),
        probe.ratio_factorization
            .iter()
            .map(|(p, e)| format!("{p}^{e}"))
            .collect::<Vec<_>>()
    );
}
