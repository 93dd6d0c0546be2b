//! Z_p root lifting and residue clustering: Hensel-simple roots, clustered
//! residues needing depth, and the discriminant-valuation chain
//! ord_p(D) >= sum_x N_x (N_x - 1).
//!
//! Run with: cargo run --example qp_roots_clustering

use heightlab::exactpoly::IntPolynomial;
use heightlab::padic::{cluster_bound_report, qp_integral_roots, PadicContext};

fn main() {
    // x^2 + 1 over Z_5: roots 2 and 3 mod 5 lift to 57 and 68 mod 125
    let ctx = PadicContext::new(5, 3).unwrap();
    let r = qp_integral_roots(&IntPolynomial::from_i64(&[1, 0, 1]), &ctx).unwrap();
    println!("x^2 + 1 over Z_5 (mod 5^3):");
    for root in &r.roots {
        println!("  root = {} (residue {})", root.approx, root.residue);
    }

    // (x-1)(x-8): both roots share the residue 1 mod 7
    let f = IntPolynomial::from_i64(&[8, -9, 1]);
    let ctx = PadicContext::new(7, 4).unwrap();
    let rep = cluster_bound_report(&f, &ctx).unwrap();
    println!("\n(x-1)(x-8) at p = 7:");
    println!("  residue counts: {:?}", rep.residue_counts);
    println!(
        "  ord_7(disc) = {} >= clustering bound {} (slack {})",
        rep.v_disc, rep.cluster_lower_bound, rep.slack
    );
    println!("  Cauchy-Schwarz floor: {}", rep.cauchy_schwarz_floor);

    // a constructed completely-split polynomial with chosen multiplicities
    let mut f = IntPolynomial::one();
    for a in [0i64, 1, 2, 5, 6, 10, 11, 15, 20, 21] {
        f = f.mul(&IntPolynomial::from_i64(&[-a, 1]));
    }
    let pert = num_bigint::BigInt::from(5).pow(30u32) * 7;
    let f = f.add(&IntPolynomial::new(vec![pert]));
    let ctx = PadicContext::new(5, 40).unwrap();
    let rep = cluster_bound_report(&f, &ctx).unwrap();
    println!("\nconstructed degree-10 split polynomial at p = 5:");
    println!("  integral roots: {}", rep.integral_root_count);
    println!("  residue counts: {:?}", rep.residue_counts);
    println!(
        "  v_disc = {} >= {} (slack {})",
        rep.v_disc, rep.cluster_lower_bound, rep.slack
    );
}
