//! Prime splitting statistics along towers: the radical tower of 2^(1/2^k),
//! a cyclotomic tower, and the exact monotonicity diagnostic that flags a
//! fake (non-nested) tower.
//!
//! Run with: cargo run --example tower_psi

use heightlab::exactpoly::{cyclotomic, IntPolynomial};
use heightlab::towers::{almost_unramified_check, psi_estimate, TowerSpec, TrendVerdict};

fn main() {
    let radical = TowerSpec::new(
        vec![
            IntPolynomial::xn_minus(2, 2),
            IntPolynomial::xn_minus(4, 2),
            IntPolynomial::xn_minus(8, 2),
        ],
        Some(vec![
            IntPolynomial::from_i64(&[0, 0, 1]),
            IntPolynomial::from_i64(&[0, 0, 1]),
        ]),
    )
    .unwrap();
    let stats = psi_estimate(&radical, 7, 2).unwrap();
    println!("radical tower at p = 7 (witnesses verified: {}):", radical.witnesses_verified());
    for (i, ratios) in stats.ratios.iter().enumerate() {
        let as_str: Vec<String> = ratios.iter().map(|(m, r)| format!("N_7^{m}/n = {r}")).collect();
        println!("  level {i}: {}", as_str.join(", "));
    }
    println!("  trend: {:?}", stats.trend);
    println!("  psi_7 estimate from the last level: {}", stats.psi_estimate_at(1));

    let cyclo = TowerSpec::new(
        vec![cyclotomic(3), cyclotomic(9), cyclotomic(27)],
        Some(vec![
            IntPolynomial::from_i64(&[0, 0, 0, 1]),
            IntPolynomial::from_i64(&[0, 0, 0, 1]),
        ]),
    )
    .unwrap();
    for p in [2u64, 7, 13] {
        // the top level is Q(zeta_27); residue degrees reach ord(p mod 27),
        // up to 18, so count norms that far out
        let stats = psi_estimate(&cyclo, p, 18).unwrap();
        println!("cyclotomic tower at p = {p}: trend {:?}", stats.trend);
        let au = almost_unramified_check(&stats, 1e-9);
        println!(
            "  sum_f f N_(p^f)/n per level: {:?} (within tolerance of 1: {})",
            au.per_level_sum.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
            au.within_tolerance
        );
    }

    // a non-nested pair of fields: the diagnostic catches it at some prime
    let fake = TowerSpec::new(
        vec![
            IntPolynomial::from_i64(&[-2, 0, 1]),
            IntPolynomial::from_i64(&[-3, 0, 0, 0, 1]),
        ],
        None,
    )
    .unwrap();
    for p in [7u64, 11, 13, 23] {
        let stats = psi_estimate(&fake, p, 4).unwrap();
        if stats.trend == TrendVerdict::Violated {
            println!("fake tower flagged at p = {p}: weighted partial sums increased");
        }
    }
}
