//! Mahler measures: certified enclosures, multiplicativity, the smallest
//! known measure above 1, and the classical discriminant inequality
//! |D| <= n^n M(f)^(2n-2) on a random corpus.
//!
//! Run with: cargo run --example mahler_measure

use heightlab::exactpoly::{discriminant, mahler_measure, IntPolynomial};
use num_bigint::BigInt;
use num_traits::Signed;
use rand::{Rng, SeedableRng};

fn main() {
    // the degree-10 polynomial with the smallest known measure above 1
    let lehmer = IntPolynomial::from_i64(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1]);
    let m = mahler_measure(&lehmer, 40).unwrap();
    println!("smallest known Salem measure: M = [{:.12}, {:.12}]", m.lo, m.hi);

    // multiplicative over products
    let f = IntPolynomial::from_i64(&[-1, -1, 1]);
    let g = IntPolynomial::from_i64(&[-2, 0, 0, 1]);
    let mf = mahler_measure(&f, 40).unwrap();
    let mg = mahler_measure(&g, 40).unwrap();
    let mfg = mahler_measure(&f.mul(&g), 40).unwrap();
    println!(
        "multiplicativity: M(f)M(g) = {:.12}, M(fg) = {:.12}",
        mf.mid() * mg.mid(),
        mfg.mid()
    );

    // |disc f| <= n^n M(f)^(2n-2), checked with the conservative endpoint
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2024);
    let mut checked = 0u32;
    let mut worst_ratio = 0.0f64;
    while checked < 500 {
        let deg = rng.gen_range(2..=10);
        let mut c: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-100..=100)).collect();
        if c[deg] == 0 {
            c[deg] = 1;
        }
        let f = IntPolynomial::from_i64(&c);
        if f.degree() != Some(deg) {
            continue;
        }
        let d: BigInt = match discriminant(&f) {
            Ok(d) => d,
            Err(_) => continue,
        };
        let m = match mahler_measure(&f, 40) {
            Ok(m) => m,
            Err(_) => continue,
        };
        let n = deg as f64;
        let lhs = d.abs().to_string().parse::<f64>().unwrap_or(f64::MAX);
        let rhs = n.powf(n) * m.hi.powi(2 * deg as i32 - 2);
        assert!(lhs <= rhs, "violation at f = {f}");
        if rhs > 0.0 && lhs > 0.0 {
            worst_ratio = worst_ratio.max(lhs / rhs);
        }
        checked += 1;
    }
    println!("discriminant inequality held on {checked} random polynomials (worst lhs/rhs = {worst_ratio:.3e})");
}
