//! Néron local heights place by place: smooth and singular reductions,
//! exact rational multiples of log p at finite places, and the q-series at
//! the archimedean place.
//!
//! Run with: cargo run --example local_heights

use heightlab::elliptic::{
    curve_from_i64, local_height_arch, local_height_nonarch, minimal_model, reduction_type,
    CurvePoint,
};

fn main() {
    // conductor-37 curve, generator (0,0)
    let e = curve_from_i64([0, 0, 1, -1, 0]).unwrap();
    let p = CurvePoint::xy(0, 0);
    println!("y^2 + y = x^3 - x, P = (0, 0):");
    let arch = local_height_arch(&e, &p, 40).unwrap();
    println!(
        "  lambda_infinity = {:.12} ({} series terms)",
        arch.lambda.mid(),
        arch.series_terms.unwrap()
    );
    let l37 = local_height_nonarch(&e, &p, 37).unwrap();
    println!(
        "  lambda_37 = {:.12} = {} * log 37 ({:?}, smooth point: {})",
        l37.lambda.mid(),
        l37.lambda_over_logp.unwrap(),
        l37.reduction.unwrap(),
        l37.smooth_path
    );

    // a singular multiplicative point: y^2 = x^3 + 3x^2 + 49 at p = 7 with
    // P = (0, 7) reducing onto the node
    let e = curve_from_i64([0, 3, 0, 0, 49]).unwrap();
    let (em, tf) = minimal_model(&e).unwrap();
    let pm = tf.forward(&CurvePoint::xy(0, 7));
    println!("\ny^2 = x^3 + 3x^2 + 49, P = (0, 7) at p = 7:");
    println!("  reduction: {:?}", reduction_type(&em, 7).unwrap());
    let rep = local_height_nonarch(&em, &pm, 7).unwrap();
    println!(
        "  lambda_7 = {:.12} = {} * log 7, alpha = {}",
        rep.lambda.mid(),
        rep.lambda_over_logp.clone().unwrap(),
        rep.alpha.clone().unwrap()
    );

    // a singular additive point: y^2 = x^3 + 9x + 9 at p = 3, P = (0, 3)
    let e = curve_from_i64([0, 0, 0, 9, 9]).unwrap();
    println!("\ny^2 = x^3 + 9x + 9, P = (0, 3) at p = 3:");
    println!("  reduction: {:?}", reduction_type(&e, 3).unwrap());
    let rep = local_height_nonarch(&e, &CurvePoint::xy(0, 3), 3).unwrap();
    println!(
        "  lambda_3 = {:.12} = {} * log 3",
        rep.lambda.mid(),
        rep.lambda_over_logp.clone().unwrap()
    );
}
