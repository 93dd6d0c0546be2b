//! Pointwise experiments behind the elliptic statistics bound: pairwise
//! local sums against the -N/12 ord(disc) log p floor, the Bernoulli pair
//! floor, and the pointset average against its parallelogram floor.
//!
//! Run with: cargo run --example pointset_floor

use heightlab::elliptic::{
    bernoulli_pair_sum, curve_from_i64, derive_elliptic_stats, pairwise_local_sum,
    pointset_height_floor, CurvePoint, Place,
};
use rand::{Rng, SeedableRng};

fn main() {
    let e = curve_from_i64([0, 0, 1, -1, 0]).unwrap();
    let p = CurvePoint::xy(0, 0);
    let pts: Vec<CurvePoint> = (1..=6).map(|n| e.mul_scalar(n, &p)).collect();

    // nonarchimedean pairwise floor at the bad prime
    let s = pairwise_local_sum(&e, &pts, &Place::Prime(37)).unwrap();
    let n = pts.len() as f64;
    let floor = -(n / 12.0) * 1.0 * 37f64.ln();
    println!(
        "pairwise lambda_37 sum over 6 points: {:.6} >= floor {:.6}: {}",
        s.mid(),
        floor,
        s.lo >= floor
    );

    // Bernoulli pair sums stay above -N/6
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
    let mut worst = f64::INFINITY;
    for _ in 0..300 {
        let m = rng.gen_range(2usize..=100);
        let t: Vec<f64> = (0..m).map(|_| rng.gen_range(0.0..1.0)).collect();
        worst = worst.min(bernoulli_pair_sum(&t) + m as f64 / 6.0);
    }
    println!("Bernoulli floor slack over 300 random vectors: {worst:.6} >= 0");

    // pointset average against the parallelogram floor and the statistic
    // bound with psi_2 = 1 (good reduction at 2 for this curve)
    let stats = derive_elliptic_stats(&e, &[(2, 1, 1.0)]).unwrap();
    let rep = pointset_height_floor(&e, &pts, &stats, 1.0).unwrap();
    println!(
        "\npointset of 6 multiples: avg hhat = {:.6} >= pairwise floor {:.6}: {}",
        rep.empirical_avg, rep.pairwise_floor, rep.parallelogram_consistent
    );
    println!(
        "statistic bound value ({}): {:.6} nats",
        rep.bound.variant, rep.bound.value
    );
}
