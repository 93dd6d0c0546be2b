//! Weil heights of classical families: the 2^(1/n) family, the golden
//! ratio, and Kronecker's theorem on cyclotomic polynomials.
//!
//! Run with: cargo run --example weil_heights

use heightlab::exactpoly::{cyclotomic, IntPolynomial};
use heightlab::heights::weil_height;

fn main() {
    println!("h(2^(1/n)) = log 2 / n:");
    for n in 1..=10usize {
        let f = IntPolynomial::xn_minus(n, 2);
        let h = weil_height(&f, 40).unwrap();
        let exact = std::f64::consts::LN_2 / n as f64;
        println!(
            "  n = {n:2}: h = {:.15}   log2/n = {:.15}   |diff| = {:.2e}",
            h.mid(),
            exact,
            (h.mid() - exact).abs()
        );
    }

    // Schinzel's totally-real floor (1/2) log((1+sqrt 5)/2) is attained by
    // the golden ratio
    let phi = IntPolynomial::from_i64(&[-1, -1, 1]);
    let h = weil_height(&phi, 40).unwrap();
    println!("\nh(golden ratio) = {:.12} (floor value {:.12})", h.mid(), 0.5 * ((1.0 + 5f64.sqrt()) / 2.0).ln());

    // roots of unity have height exactly zero
    println!("\nKronecker: cyclotomic heights vanish");
    for n in [5usize, 12, 30, 49] {
        let h = weil_height(&cyclotomic(n), 40).unwrap();
        println!(
            "  Phi_{n:2}: enclosure [{:.2e}, {:.2e}] contains 0: {}",
            h.lo,
            h.hi,
            h.contains(0.0)
        );
    }

    // height is invariant under alpha -> 1/alpha
    let f = IntPolynomial::from_i64(&[3, -1, 0, 2]);
    let a = weil_height(&f, 40).unwrap();
    let b = weil_height(&f.reverse(), 40).unwrap();
    println!("\nreciprocal invariance: h = {:.12} vs {:.12}", a.mid(), b.mid());
}
