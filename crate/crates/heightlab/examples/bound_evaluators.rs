//! The explicit height floors: the Galois sandwich, the prime-power
//! conjecture form, the integer floor, the metric floor with its
//! acceleration exponent, the split/unramified refinements, the totally
//! p-adic floor, and the elliptic statistics bounds.
//!
//! Run with: cargo run --example bound_evaluators

use heightlab::towers::{eval_bound, BoundSpec};

fn main() {
    let show = |label: &str, spec: &BoundSpec| {
        let r = eval_bound(spec, None).unwrap();
        print!("  {label:<58} = {:.10} nats", r.value);
        if let Some(u) = r.sandwich_upper {
            print!("   (upper companion {u:.10})");
        }
        if let Some(l) = r.lambda {
            print!("   (lambda = {l}, s = {:.3})", r.s_guaranteed.unwrap());
        }
        println!();
    };

    println!("floors for the totally 2-adic setting:");
    show("Galois sandwich lower, S = {2}", &BoundSpec::Bz { places: vec![(2, 1, 1)] });
    show("prime-power form, psi_2 = 1", &BoundSpec::ConjecturePlusOne { psi: vec![(2, 1.0)] });
    show("algebraic-integer floor, psi_2 = 1", &BoundSpec::ThmAIntegers { psi: vec![(2, 1.0)] });
    show("metric floor, p = 2, psi_2 = 1", &BoundSpec::ThmBMetric { p: 2, f: 1, psi_q: 1.0 });
    show("almost-totally-split floor, S = {2}", &BoundSpec::AlmostSplit { primes: vec![2] });

    println!("\ntotally p-adic floors:");
    for p in [2u64, 3, 5, 7] {
        show(
            &format!("log(p/2)/(p+1) at p = {p}"),
            &BoundSpec::Pottmeyer { p },
        );
    }

    println!("\nalmost unramified at p = 2 with psi_2 = 1/2, psi_4 = 1/4:");
    show(
        "refined floor",
        &BoundSpec::AlmostUnramified { p: 2, psi_powers: vec![(1, 0.5), (2, 0.25)] },
    );

    println!("\nelliptic floors with psi_2 = 1:");
    show(
        "good reduction at 2",
        &BoundSpec::EllipticGoodReduction { psi: vec![(2, 1.0)] },
    );
    show(
        "split multiplicative mass, c_E = 1",
        &BoundSpec::EllipticSemistable { terms: vec![(2, 0.0, 1.0)], c_e: 1.0 },
    );
}
