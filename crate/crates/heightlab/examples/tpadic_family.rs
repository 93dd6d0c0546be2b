//! A desk-scale family of totally p-adic algebraic numbers: irreducible
//! polynomials splitting completely over Z_5, their heights against the
//! explicit floors, and the discriminant clustering chain.
//!
//! Run with: cargo run --example tpadic_family

use heightlab::family::totally_padic_family;

fn main() {
    let rep = totally_padic_family(5, 12, 20, 7).unwrap();
    println!(
        "p = 5, {} samples (resampled {} candidates during screening)",
        rep.samples.len(),
        rep.resampled
    );
    println!(
        "floors: log(5/2)/6 = {:.6}, (1/2) log5/6 = {:.6}",
        rep.samples[0].totally_padic_floor, rep.samples[0].almost_split_floor
    );
    println!("\n deg    h(alpha)      v_disc  cluster_bound  slack  chain  above_floors");
    for s in &rep.samples {
        println!(
            "  {:2}   {:>10.6}   {:5}   {:6}       {:4}   {}     {}",
            s.degree,
            s.height.mid(),
            s.cluster.v_disc,
            s.cluster.cluster_lower_bound,
            s.cluster.slack,
            s.chain_holds,
            s.height_above_floors
        );
    }
    println!("\nminimum height observed: {:.6}", rep.min_height);
}
