//! Splitting types of rational primes in number fields: the unramified
//! fast path, the index criterion, and an index-obstructed case that only
//! a deeper analysis could certify.
//!
//! Run with: cargo run --example padic_splitting

use heightlab::exactpoly::{cyclotomic, IntPolynomial};
use heightlab::padic::{splitting_type, PadicContext};

fn show(label: &str, f: &IntPolynomial, p: u64) {
    let ctx = PadicContext::new(p, 16).unwrap();
    match splitting_type(f, &ctx) {
        Ok(st) => println!(
            "  {label} at p = {p}: parts {:?} certified = {}",
            st.parts, st.certified
        ),
        Err(e) => println!("  {label} at p = {p}: error {e}"),
    }
}

fn main() {
    let x2p1 = IntPolynomial::from_i64(&[1, 0, 1]);
    println!("x^2 + 1 (Gaussian integers):");
    show("x^2+1", &x2p1, 5);
    show("x^2+1", &x2p1, 3);
    show("x^2+1", &x2p1, 2);

    let x4m2 = IntPolynomial::from_i64(&[-2, 0, 0, 0, 1]);
    println!("x^4 - 2:");
    show("x^4-2", &x4m2, 7);
    show("x^4-2", &x4m2, 2);
    show("x^4-2", &x4m2, 5);

    println!("Phi_5 (the field of fifth roots of unity):");
    show("Phi_5", &cyclotomic(5), 11);
    show("Phi_5", &cyclotomic(5), 2);
    show("Phi_5", &cyclotomic(5), 5);

    // 2 divides [O_K : Z[sqrt 12]]: the one-level analysis cannot certify
    println!("x^2 - 12 (index divisible by 2):");
    show("x^2-12", &IntPolynomial::from_i64(&[-12, 0, 1]), 2);
}
