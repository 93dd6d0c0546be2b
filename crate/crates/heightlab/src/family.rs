//! Generator for families of totally p-adic algebraic numbers at desk
//! scale: monic integer polynomials congruent to a product of distinct
//! linear factors modulo a high power of p, so that every root lifts into
//! Z_p, screened for irreducibility over Q by modular degree certificates.

use crate::exactpoly::{discriminant, IntPolynomial};
use crate::heights::weil_height;
use crate::interval::Interval;
use crate::padic::{
    cluster_bound_report, factor_mod_p, is_prime, vp_int, ClusterReport, PadicContext,
};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FamilyError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("degree cap must be at least 2")]
    DegreeCap,
    #[error("could not certify an irreducible sample after {0} attempts")]
    ScreeningExhausted(usize),
}

/// One member of the family with its height and clustering data.
#[derive(Clone, Debug)]
pub struct FamilySample {
    pub poly: IntPolynomial,
    pub degree: usize,
    /// enclosure of h(alpha) = log M(f) / deg f
    pub height: Interval,
    pub cluster: ClusterReport,
    /// log(p/2) / (p+1)
    pub totally_padic_floor: f64,
    /// (1/2) log p / (p+1)
    pub almost_split_floor: f64,
    pub height_above_floors: bool,
    /// ord_p(disc) >= sum_x N_x (N_x - 1), the clustering chain
    pub chain_holds: bool,
    /// the sample splits completely over Z_p (all roots lifted)
    pub totally_split: bool,
}

#[derive(Clone, Debug)]
pub struct FamilyReport {
    pub p: u64,
    pub seed: u64,
    pub samples: Vec<FamilySample>,
    /// candidates discarded by the irreducibility screening
    pub resampled: usize,
    pub min_height: f64,
}

/// Builds `samples` monic irreducible polynomials of degree <= degree_cap
/// that split completely over Z_p, and evaluates the explicit floors and
/// the discriminant clustering chain on each.
pub fn totally_padic_family(
    p: u64,
    degree_cap: usize,
    samples: usize,
    seed: u64,
) -> Result<FamilyReport, FamilyError> {
    if !is_prime(p) {
        return Err(FamilyError::NotPrime(p));
    }
    if degree_cap < 2 {
        return Err(FamilyError::DegreeCap);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(samples);
    let mut resampled = 0usize;
    let t_floor = (p as f64 / 2.0).ln() / (p as f64 + 1.0);
    let a_floor = 0.5 * (p as f64).ln() / (p as f64 + 1.0);
    let mut min_height = f64::INFINITY;
    while out.len() < samples {
        let deg = rng.gen_range(2..=degree_cap);
        let f = match build_candidate(p, deg, &mut rng) {
            Some(f) => f,
            None => {
                resampled += 1;
                continue;
            }
        };
        if !certify_irreducible(&f, p) {
            resampled += 1;
            if resampled > 200 * samples + 1000 {
                return Err(FamilyError::ScreeningExhausted(resampled));
            }
            continue;
        }
        // precision comfortably above the pairwise root valuations
        let disc_ord = vp_int(&discriminant(&f).unwrap_or_else(|_| BigInt::one()), p)
            .unwrap_or(0)
            .unsigned_abs() as u32;
        let ctx = PadicContext::new(p, disc_ord + 8).unwrap();
        let cluster = match cluster_bound_report(&f, &ctx) {
            Ok(c) => c,
            Err(_) => {
                resampled += 1;
                continue;
            }
        };
        let totally_split = cluster.integral_root_count == deg && !cluster.roots_incomplete;
        let height = match weil_height(&f, 28) {
            Ok(h) => h,
            Err(_) => {
                resampled += 1;
                continue;
            }
        };
        let chain_holds = cluster.v_disc >= cluster.cluster_lower_bound;
        let above = height.lo >= t_floor.max(a_floor);
        min_height = min_height.min(height.lo);
        out.push(FamilySample {
            degree: deg,
            poly: f,
            height,
            cluster,
            totally_padic_floor: t_floor,
            almost_split_floor: a_floor,
            height_above_floors: above,
            chain_holds,
            totally_split,
        });
    }
    Ok(FamilyReport {
        p,
        seed,
        samples: out,
        resampled,
        min_height,
    })
}

/// prod (x - a_i) + c p^K with distinct integers a_i and K beyond twice the
/// worst derivative valuation, so every a_i lifts to a Z_p root.
fn build_candidate(p: u64, deg: usize, rng: &mut ChaCha8Rng) -> Option<IntPolynomial> {
    let window = (4 * deg as i64).max(20);
    let mut a: Vec<i64> = Vec::with_capacity(deg);
    while a.len() < deg {
        let c = rng.gen_range(-window..=window);
        if !a.contains(&c) {
            a.push(c);
        }
    }
    // s = max_i ord_p of prod_{j != i} (a_i - a_j)
    let mut s = 0i64;
    for i in 0..deg {
        let mut prod = BigInt::one();
        for j in 0..deg {
            if i != j {
                prod *= BigInt::from(a[i] - a[j]);
            }
        }
        s = s.max(vp_int(&prod, p).unwrap_or(0));
    }
    let k = (2 * s + 2) as u32;
    let mut f = IntPolynomial::one();
    for &ai in &a {
        f = f.mul(&IntPolynomial::from_i64(&[-ai, 1]));
    }
    let c = BigInt::from(rng.gen_range(1..p as i64));
    let pert = BigInt::from(p).pow(k) * c;
    let f = f.add(&IntPolynomial::new(vec![pert]));
    if f.coeff(0).is_zero() {
        return None;
    }
    Some(f)
}

/// Modular degree certificate: the degrees of rational factors of f must be
/// subset sums of the mod-q irreducible factor degrees for every prime q of
/// good reduction; if the intersection over several q leaves only {0, deg},
/// f is irreducible over Q.
pub fn certify_irreducible(f: &IntPolynomial, avoid: u64) -> bool {
    let deg = match f.degree() {
        Some(d) if d >= 1 => d,
        _ => return false,
    };
    if deg == 1 {
        return true;
    }
    if deg > 63 {
        return false;
    }
    let full: u64 = (1u64 << deg) | 1;
    let mut achievable: u64 = !0u64 >> (63 - deg); // all degrees 0..=deg
    let candidates = [
        2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59,
    ];
    for &q in candidates.iter() {
        if q == avoid {
            continue;
        }
        if vp_int(&f.leading_coefficient(), q).map_or(true, |v| v > 0) {
            continue;
        }
        let ctx = PadicContext::new(q, 2).unwrap();
        let factors = match factor_mod_p(f, &ctx) {
            Ok(fs) => fs,
            Err(_) => continue,
        };
        let total: usize = factors
            .iter()
            .map(|(g, m)| g.degree().unwrap_or(0) * m)
            .sum();
        if total != deg {
            continue;
        }
        // subset sums of factor degrees with multiplicity
        let mut sums: u64 = 1;
        for (g, m) in &factors {
            let d = g.degree().unwrap();
            for _ in 0..*m {
                sums |= sums << d;
            }
        }
        achievable &= sums;
        if achievable == full {
            return true;
        }
    }
    false
}
