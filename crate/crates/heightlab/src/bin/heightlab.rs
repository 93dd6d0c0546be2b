//! Command-line front end. Every subcommand is a thin wrapper over the
//! library and emits one deterministic JSON result envelope on stdout.
//!
//! Exit codes: 0 ok, 2 inconclusive, 3 uncertified, 1 error.

use clap::{Args, Parser, Subcommand};
use heightlab::elliptic::{
    bernoulli_pair_sum, canonical_height, canonical_height_oracle, count_points_mod_p,
    minimal_model, pairwise_local_sum, reduction_type, CurvePoint, EllipticCurveModel, Place,
    ReductionType,
};
use heightlab::exactpoly::{house, mahler_measure, parse_poly_file, parse_poly_line};
use heightlab::family::totally_padic_family;
use heightlab::heights::{
    disc_identity_probe, relative_height_decomposition, relative_mahler_inequality_check,
    weil_height, CheckStatus, RelativeElement,
};
use heightlab::padic::{splitting_type, PadicContext};
use heightlab::report::{
    fmt_f64, fmt_interval, fmt_rational, ExperimentConfig, ResultEnvelope, Status,
};
use heightlab::towers::{eval_bound, psi_estimate, BoundSpec, TowerSpec, TrendVerdict};
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

/// Heights of algebraic numbers, p-adic splitting statistics of towers, and
/// canonical heights on elliptic curves over Q.
#[derive(Parser)]
#[command(name = "heightlab", version, about)]
struct Cli {
    /// Override the default certified precision in bits (also via the
    /// HEIGHTLAB_PRECISION environment variable; capped at 46)
    #[arg(long, global = true)]
    prec: Option<u32>,
    /// Write the envelope to a file as well as stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for randomized experiments
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Weil height of the polynomial's root (log Mahler / degree)
    Height(PolyArgs),
    /// Mahler measure and house of one polynomial or a corpus file
    Mahler(PolyOrFileArgs),
    /// Relative heights over a base field from a JSON element
    Rel(InFileArgs),
    /// p-adic operations
    Padic {
        #[command(subcommand)]
        sub: PadicCmd,
    },
    /// Tower statistics
    Tower {
        #[command(subcommand)]
        sub: TowerCmd,
    },
    /// Explicit lower-bound evaluators
    Bounds {
        #[command(subcommand)]
        sub: BoundsCmd,
    },
    /// Elliptic curve heights and experiments
    Ec {
        #[command(subcommand)]
        sub: EcCmd,
    },
    /// Polynomial family generators
    Family {
        #[command(subcommand)]
        sub: FamilyCmd,
    },
    /// Aggregate result envelopes into a summary table
    Report(ReportArgs),
}

#[derive(Args)]
struct PolyArgs {
    /// Space-separated integer coefficients, constant term first
    #[arg(long, allow_hyphen_values = true)]
    poly: String,
}

#[derive(Args)]
struct PolyOrFileArgs {
    #[arg(long, conflicts_with = "file", allow_hyphen_values = true)]
    poly: Option<String>,
    /// One polynomial per line; '#' comments allowed
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Args)]
struct InFileArgs {
    #[arg(long = "in")]
    input: PathBuf,
}

#[derive(Subcommand)]
enum PadicCmd {
    /// Splitting type (e_j, f_j) of p in Q[x]/(f)
    Split {
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 16)]
        precision: u32,
    },
}

#[derive(Subcommand)]
enum TowerCmd {
    /// N_q ratios, weighted partial sums and the monotonicity diagnostic
    Psi {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 4)]
        maxpower: u32,
    },
}

#[derive(Subcommand)]
enum BoundsCmd {
    /// Evaluate one lower-bound formula
    Eval(BoundsEvalArgs),
}

#[derive(Args)]
struct BoundsEvalArgs {
    /// bz | conjecture | thmA | thmB | almost-split | almost-unramified |
    /// pottmeyer | elliptic | elliptic-good
    #[arg(long)]
    variant: String,
    /// psi map "q:value,q:value" over prime powers q (for almost-unramified,
    /// "f:value" pairs at the base prime)
    #[arg(long)]
    psi: Option<String>,
    /// places "p,e,f;p,e,f" for the Galois sandwich
    #[arg(long)]
    places: Option<String>,
    /// primes "p,p,..." for the almost-split floor
    #[arg(long)]
    primes: Option<String>,
    /// base prime for thmB / almost-unramified / pottmeyer
    #[arg(long)]
    p: Option<u64>,
    /// residue degree for thmB
    #[arg(long)]
    f: Option<u32>,
    /// psi_q value for thmB
    #[arg(long)]
    psi_q: Option<f64>,
    /// xi/chi terms "q:xi:chi,..." for the elliptic bound
    #[arg(long)]
    terms: Option<String>,
    #[arg(long, default_value_t = 1.0)]
    c_e: f64,
    #[arg(long)]
    cutoff: Option<u64>,
}

#[derive(Subcommand)]
enum EcCmd {
    /// Canonical height with the per-place breakdown
    Height {
        #[arg(long)]
        curve: PathBuf,
        #[arg(long)]
        point: PathBuf,
        /// Cross-check against the doubling-limit oracle
        #[arg(long)]
        oracle: bool,
    },
    /// Pairwise local sums, Bernoulli floors and Hasse counts
    Experiment {
        #[arg(long)]
        curve: PathBuf,
        #[arg(long)]
        point: Option<PathBuf>,
        #[arg(long, default_value_t = 8)]
        points: usize,
        #[arg(long, default_value_t = 100)]
        max_prime: u64,
    },
}

#[derive(Subcommand)]
enum FamilyCmd {
    /// Totally p-adic polynomial family with floors and clustering chain
    Tpadic {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 50)]
        degree_cap: usize,
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
}

#[derive(Args)]
struct ReportArgs {
    /// Directory of *.json envelopes
    #[arg(long)]
    dir: PathBuf,
    /// Write summary.md and summary.csv here (defaults to --dir)
    #[arg(long)]
    out_dir: Option<PathBuf>,
}

fn default_precision(cli_prec: Option<u32>) -> u32 {
    let env = std::env::var("HEIGHTLAB_PRECISION")
        .ok()
        .and_then(|s| s.parse::<u32>().ok());
    cli_prec.or(env).unwrap_or(40).min(46)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let prec = default_precision(cli.prec);
    let mut config = ExperimentConfig {
        seed: cli.seed,
        precision_bits: prec,
        ..ExperimentConfig::default()
    };
    match run(&cli, &mut config, prec) {
        Ok(envelope) => {
            let text = envelope.to_json();
            println!("{text}");
            if let Some(path) = &cli.out {
                if let Err(e) = std::fs::write(path, text.as_bytes()) {
                    eprintln!("error writing {}: {e}", path.display());
                    return ExitCode::from(1);
                }
            }
            ExitCode::from(envelope.status.exit_code() as u8)
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: &Cli, config: &mut ExperimentConfig, prec: u32) -> Result<ResultEnvelope, String> {
    match &cli.command {
        Command::Height(args) => {
            let f = parse_poly_line(&args.poly, 1).map_err(|e| e.to_string())?;
            let h = weil_height(&f, prec).map_err(|e| e.to_string())?;
            let payload = json!({
                "poly": args.poly,
                "degree": f.degree(),
                "weil_height": fmt_interval(&h),
                "units": "nats",
            });
            Ok(ResultEnvelope::new("height", config, Status::Ok, payload))
        }
        Command::Mahler(args) => {
            let polys = if let Some(p) = &args.poly {
                vec![parse_poly_line(p, 1).map_err(|e| e.to_string())?]
            } else if let Some(path) = &args.file {
                let text = std::fs::read_to_string(path).map_err(|e| e.to_string())?;
                parse_poly_file(&text).map_err(|e| e.to_string())?
            } else {
                return Err("provide --poly or --file".into());
            };
            let mut rows = Vec::new();
            for f in &polys {
                let m = mahler_measure(f, prec).map_err(|e| e.to_string())?;
                let hs = match f.is_squarefree() {
                    Ok(true) => Some(fmt_interval(&house(f, prec).map_err(|e| e.to_string())?)),
                    _ => None,
                };
                rows.push(json!({
                    "poly": heightlab::exactpoly::poly_to_line(f),
                    "mahler": fmt_interval(&m),
                    "house": hs,
                }));
            }
            Ok(ResultEnvelope::new(
                "mahler",
                config,
                Status::Ok,
                json!({ "entries": rows }),
            ))
        }
        Command::Rel(args) => {
            let text = std::fs::read_to_string(&args.input).map_err(|e| e.to_string())?;
            let e = RelativeElement::from_json(&text).map_err(|e| e.to_string())?;
            let rep =
                relative_height_decomposition(&e, prec.min(35)).map_err(|e| e.to_string())?;
            let mut status = if rep.decomposition_consistent {
                Status::Ok
            } else {
                Status::Inconclusive
            };
            let mut ineq = Vec::new();
            for idx in 0..e.base_degree() {
                let r = relative_mahler_inequality_check(&e, idx).map_err(|e| e.to_string())?;
                if r.status == CheckStatus::Inconclusive {
                    status = status.worst(Status::Inconclusive);
                }
                ineq.push(json!({
                    "embedding": idx,
                    "lhs": fmt_interval(&r.lhs),
                    "rhs": fmt_interval(&r.rhs),
                    "status": format!("{:?}", r.status),
                }));
            }
            let probe = disc_identity_probe(&e).map_err(|e| e.to_string())?;
            let payload = json!({
                "base_degree": e.base_degree(),
                "rel_degree": e.rel_degree(),
                "per_embedding_height": rep.per_embedding_height.iter().map(fmt_interval).collect::<Vec<_>>(),
                "global_height": fmt_interval(&rep.global_height),
                "average_relative_height": fmt_interval(&rep.average_relative_height),
                "decomposition_consistent": rep.decomposition_consistent,
                "norm_relative_disc": fmt_rational(&rep.norm_relative_disc),
                "mahler_inequality": ineq,
                "disc_probe": {
                    "abs_disc": probe.abs_disc.to_string(),
                    "norm_rel_disc": fmt_rational(&probe.norm_rel_disc),
                    "ratio": probe.ratio.as_ref().map(fmt_rational),
                    "ratio_factorization": probe.ratio_factorization.iter()
                        .map(|(p, e)| json!([p.to_string(), e])).collect::<Vec<_>>(),
                },
            });
            Ok(ResultEnvelope::new("rel", config, status, payload))
        }
        Command::Padic { sub } => match sub {
            PadicCmd::Split { poly, p, precision } => {
                let f = parse_poly_line(poly, 1).map_err(|e| e.to_string())?;
                let ctx = PadicContext::new(*p, *precision).map_err(|e| e.to_string())?;
                let st = splitting_type(&f, &ctx).map_err(|e| e.to_string())?;
                let status = if st.certified {
                    Status::Ok
                } else {
                    Status::Uncertified
                };
                let payload = json!({
                    "poly": poly,
                    "p": p,
                    "parts": st.parts,
                    "certified": st.certified,
                    "seed": st.seed,
                });
                Ok(ResultEnvelope::new("padic split", config, status, payload))
            }
        },
        Command::Tower { sub } => match sub {
            TowerCmd::Psi { input, p, maxpower } => {
                let text = std::fs::read_to_string(input).map_err(|e| e.to_string())?;
                let tower = TowerSpec::from_json(&text).map_err(|e| e.to_string())?;
                let stats = psi_estimate(&tower, *p, *maxpower).map_err(|e| e.to_string())?;
                let status = if stats.any_uncertified {
                    Status::Uncertified
                } else if stats.trend == TrendVerdict::Violated {
                    Status::Inconclusive
                } else {
                    Status::Ok
                };
                let levels: Vec<Value> = stats
                    .levels
                    .iter()
                    .zip(&stats.ratios)
                    .map(|(lv, ratios)| {
                        json!({
                            "degree": lv.degree,
                            "counts": lv.counts.iter().map(|(m, c)| json!([m, c])).collect::<Vec<_>>(),
                            "ratios": ratios.iter().map(|(m, r)| json!([m, fmt_rational(r)])).collect::<Vec<_>>(),
                            "certified": lv.certified,
                        })
                    })
                    .collect();
                let sums: Vec<Vec<String>> = stats
                    .weighted_partial_sums
                    .iter()
                    .map(|lvl| lvl.iter().map(fmt_rational).collect())
                    .collect();
                let payload = json!({
                    "p": p,
                    "max_power": maxpower,
                    "witnesses_verified": tower.witnesses_verified(),
                    "levels": levels,
                    "weighted_partial_sums_over_logp": sums,
                    "trend": match stats.trend {
                        TrendVerdict::NonIncreasingConsistent => "nonincreasing-consistent",
                        TrendVerdict::Violated => "violated",
                    },
                    "psi_estimates": (1..=*maxpower).map(|m| {
                        json!([m, fmt_rational(&stats.psi_estimate_at(m))])
                    }).collect::<Vec<_>>(),
                    "note": "finite prefixes yield estimates, never limits",
                });
                Ok(ResultEnvelope::new("tower psi", config, status, payload))
            }
        },
        Command::Bounds { sub } => match sub {
            BoundsCmd::Eval(args) => {
                config.cutoff = args.cutoff.unwrap_or(config.cutoff);
                let spec = parse_bound_spec(args)?;
                let rep = eval_bound(&spec, args.cutoff).map_err(|e| e.to_string())?;
                let payload = json!({
                    "variant": rep.variant,
                    "value": fmt_f64(rep.value),
                    "units": rep.units,
                    "truncation": {
                        "cutoff": rep.cutoff,
                        "terms_used": rep.terms_used,
                        "terms_dropped": rep.terms_dropped,
                    },
                    "sandwich_upper": rep.sandwich_upper.map(fmt_f64),
                    "lambda": rep.lambda,
                    "s_claimed": rep.s_claimed.map(fmt_f64),
                    "s_guaranteed": rep.s_guaranteed.map(fmt_f64),
                    "note": rep.note,
                });
                Ok(ResultEnvelope::new(
                    "bounds eval",
                    config,
                    Status::Ok,
                    payload,
                ))
            }
        },
        Command::Ec { sub } => run_ec(sub, config, prec, cli.seed),
        Command::Family { sub } => match sub {
            FamilyCmd::Tpadic {
                p,
                degree_cap,
                samples,
            } => {
                config.corpus_size = *samples;
                let rep = totally_padic_family(*p, *degree_cap, *samples, cli.seed)
                    .map_err(|e| e.to_string())?;
                let mut all_pass = true;
                let rows: Vec<Value> = rep
                    .samples
                    .iter()
                    .map(|s| {
                        all_pass &= s.height_above_floors && s.chain_holds && s.totally_split;
                        json!({
                            "degree": s.degree,
                            "height": fmt_interval(&s.height),
                            "v_disc": s.cluster.v_disc,
                            "cluster_lower_bound": s.cluster.cluster_lower_bound,
                            "slack": s.cluster.slack,
                            "cauchy_schwarz_floor": fmt_rational(&s.cluster.cauchy_schwarz_floor),
                            "residue_counts": s.cluster.residue_counts,
                            "pass": s.height_above_floors && s.chain_holds,
                        })
                    })
                    .collect();
                let payload = json!({
                    "p": p,
                    "seed": rep.seed,
                    "samples": rows,
                    "resampled": rep.resampled,
                    "min_height": fmt_f64(rep.min_height),
                    "totally_padic_floor": fmt_f64(rep.samples.first().map(|s| s.totally_padic_floor).unwrap_or(0.0)),
                    "almost_split_floor": fmt_f64(rep.samples.first().map(|s| s.almost_split_floor).unwrap_or(0.0)),
                    "all_pass": all_pass,
                });
                let status = if all_pass {
                    Status::Ok
                } else {
                    Status::Inconclusive
                };
                Ok(ResultEnvelope::new(
                    "family tpadic",
                    config,
                    status,
                    payload,
                ))
            }
        },
        Command::Report(args) => run_report(args, config),
    }
}

fn parse_bound_spec(args: &BoundsEvalArgs) -> Result<BoundSpec, String> {
    let parse_psi = |s: &str| -> Result<Vec<(u64, f64)>, String> {
        s.split(',')
            .filter(|t| !t.trim().is_empty())
            .map(|t| {
                let (q, v) = t
                    .split_once(':')
                    .ok_or_else(|| format!("bad psi entry {t:?}; expected q:value"))?;
                Ok((
                    q.trim().parse::<u64>().map_err(|e| e.to_string())?,
                    v.trim().parse::<f64>().map_err(|e| e.to_string())?,
                ))
            })
            .collect()
    };
    let int_err = |e: std::num::ParseIntError| e.to_string();
    match args.variant.as_str() {
        "bz" => {
            let places = args
                .places
                .as_deref()
                .ok_or("bz requires --places \"p,e,f;...\"")?;
            let mut out = Vec::new();
            for chunk in places.split(';').filter(|t| !t.trim().is_empty()) {
                let parts: Vec<&str> = chunk.split(',').collect();
                if parts.len() != 3 {
                    return Err(format!("bad place {chunk:?}; expected p,e,f"));
                }
                out.push((
                    parts[0].trim().parse().map_err(int_err)?,
                    parts[1].trim().parse().map_err(int_err)?,
                    parts[2].trim().parse().map_err(int_err)?,
                ));
            }
            Ok(BoundSpec::Bz { places: out })
        }
        "conjecture" => Ok(BoundSpec::ConjecturePlusOne {
            psi: parse_psi(args.psi.as_deref().ok_or("conjecture requires --psi")?)?,
        }),
        "thmA" => Ok(BoundSpec::ThmAIntegers {
            psi: parse_psi(args.psi.as_deref().ok_or("thmA requires --psi")?)?,
        }),
        "thmB" => Ok(BoundSpec::ThmBMetric {
            p: args.p.ok_or("thmB requires --p")?,
            f: args.f.unwrap_or(1),
            psi_q: args.psi_q.ok_or("thmB requires --psi-q")?,
        }),
        "almost-split" => {
            let primes = args
                .primes
                .as_deref()
                .ok_or("almost-split requires --primes")?;
            Ok(BoundSpec::AlmostSplit {
                primes: primes
                    .split(',')
                    .filter(|t| !t.trim().is_empty())
                    .map(|t| t.trim().parse().map_err(int_err))
                    .collect::<Result<_, _>>()?,
            })
        }
        "almost-unramified" => {
            let psi = parse_psi(
                args.psi
                    .as_deref()
                    .ok_or("almost-unramified requires --psi (f:value pairs)")?,
            )?;
            Ok(BoundSpec::AlmostUnramified {
                p: args.p.ok_or("almost-unramified requires --p")?,
                psi_powers: psi.into_iter().map(|(f, v)| (f as u32, v)).collect(),
            })
        }
        "pottmeyer" => Ok(BoundSpec::Pottmeyer {
            p: args.p.ok_or("pottmeyer requires --p")?,
        }),
        "elliptic" => {
            let terms = args
                .terms
                .as_deref()
                .ok_or("elliptic requires --terms \"q:xi:chi,...\"")?;
            let mut out = Vec::new();
            for t in terms.split(',').filter(|t| !t.trim().is_empty()) {
                let parts: Vec<&str> = t.split(':').collect();
                if parts.len() != 3 {
                    return Err(format!("bad term {t:?}; expected q:xi:chi"));
                }
                out.push((
                    parts[0].trim().parse::<u64>().map_err(|e| e.to_string())?,
                    parts[1].trim().parse::<f64>().map_err(|e| e.to_string())?,
                    parts[2].trim().parse::<f64>().map_err(|e| e.to_string())?,
                ));
            }
            Ok(BoundSpec::EllipticSemistable {
                terms: out,
                c_e: args.c_e,
            })
        }
        "elliptic-good" => Ok(BoundSpec::EllipticGoodReduction {
            psi: parse_psi(args.psi.as_deref().ok_or("elliptic-good requires --psi")?)?,
        }),
        other => Err(format!(
            "unknown variant {other:?}; expected bz | conjecture | thmA | thmB | \
             almost-split | almost-unramified | pottmeyer | elliptic | elliptic-good"
        )),
    }
}

fn run_ec(
    sub: &EcCmd,
    config: &mut ExperimentConfig,
    prec: u32,
    seed: u64,
) -> Result<ResultEnvelope, String> {
    match sub {
        EcCmd::Height {
            curve,
            point,
            oracle,
        } => {
            let ce = std::fs::read_to_string(curve).map_err(|e| e.to_string())?;
            let pe = std::fs::read_to_string(point).map_err(|e| e.to_string())?;
            let e = EllipticCurveModel::from_json(&ce).map_err(|e| e.to_string())?;
            let p = CurvePoint::from_json(&pe).map_err(|e| e.to_string())?;
            let h = canonical_height(&e, &p, prec).map_err(|e| e.to_string())?;
            let places: Vec<Value> = h
                .per_place
                .iter()
                .map(|r| {
                    json!({
                        "place": match &r.place {
                            Place::Archimedean => "infinity".to_string(),
                            Place::Prime(q) => q.to_string(),
                        },
                        "reduction": r.reduction.map(|t| format!("{t:?}")),
                        "lambda": fmt_interval(&r.lambda),
                        "lambda_over_logp": r.lambda_over_logp.as_ref().map(fmt_rational),
                        "ord_disc": r.ord_disc,
                        "alpha": r.alpha.as_ref().map(fmt_rational),
                        "kv": r.kv,
                        "smooth_path": r.smooth_path,
                        "series_terms": r.series_terms,
                    })
                })
                .collect();
            let oracle_val = if *oracle {
                let o = canonical_height_oracle(&e, &p, 1e-6).map_err(|e| e.to_string())?;
                Some(json!({
                    "value": fmt_interval(&o),
                    "agrees": o.overlaps(&h.value) || (o.mid() - h.value.mid()).abs() < 1e-5,
                }))
            } else {
                None
            };
            let payload = json!({
                "canonical_height": fmt_interval(&h.value),
                "kappa": fmt_f64(h.kappa),
                "per_place": places,
                "minimal_model": [
                    fmt_rational(&h.minimal.a1), fmt_rational(&h.minimal.a2),
                    fmt_rational(&h.minimal.a3), fmt_rational(&h.minimal.a4),
                    fmt_rational(&h.minimal.a6)
                ],
                "oracle": oracle_val,
            });
            Ok(ResultEnvelope::new("ec height", config, Status::Ok, payload))
        }
        EcCmd::Experiment {
            curve,
            point,
            points,
            max_prime,
        } => {
            let ce = std::fs::read_to_string(curve).map_err(|e| e.to_string())?;
            let e = EllipticCurveModel::from_json(&ce).map_err(|e| e.to_string())?;
            let (em, tf) = minimal_model(&e).map_err(|e| e.to_string())?;
            let base = match point {
                Some(path) => {
                    let pe = std::fs::read_to_string(path).map_err(|e| e.to_string())?;
                    tf.forward(&CurvePoint::from_json(&pe).map_err(|e| e.to_string())?)
                }
                None => {
                    return Err("ec experiment requires --point (a non-torsion point)".into())
                }
            };
            let mut pts = Vec::new();
            let mut acc = CurvePoint::Infinity;
            for _ in 0..*points {
                acc = em.add(&acc, &base);
                if acc.is_infinity() {
                    return Err("point is torsion; experiments need a non-torsion point".into());
                }
                pts.push(acc.clone());
            }
            let disc_int = em.disc.to_integer();
            let bad: Vec<u64> = heightlab::elliptic::factor_abs(&disc_int)
                .into_iter()
                .filter_map(|(p, _)| p.to_u64())
                .collect();
            let mut rows = Vec::new();
            for p in &bad {
                let s =
                    pairwise_local_sum(&em, &pts, &Place::Prime(*p)).map_err(|e| e.to_string())?;
                let n = pts.len() as f64;
                let ordd = heightlab::padic::vp_int(&disc_int, *p).unwrap_or(0) as f64;
                let floor = -(n / 12.0) * ordd * (*p as f64).ln();
                rows.push(json!({
                    "place": p.to_string(),
                    "reduction": format!("{:?}", reduction_type(&em, *p).map_err(|e| e.to_string())?),
                    "pairwise_sum": fmt_interval(&s),
                    "floor": fmt_f64(floor),
                    "holds": s.lo >= floor - 1e-9,
                }));
            }
            let arch =
                pairwise_local_sum(&em, &pts, &Place::Archimedean).map_err(|e| e.to_string())?;
            let n = pts.len() as f64;
            let fitted_b = -(arch.mid() + 0.5 * n * n.ln()) / n;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut bern_min = f64::INFINITY;
            let mut bern_ok = true;
            for _ in 0..200 {
                let m = rng.gen_range(2usize..=100);
                let t: Vec<f64> = (0..m).map(|_| rng.gen_range(0.0..1.0)).collect();
                let s = bernoulli_pair_sum(&t);
                bern_min = bern_min.min(s + m as f64 / 6.0);
                bern_ok &= s >= -(m as f64) / 6.0 - 1e-9;
            }
            let mut hasse = Vec::new();
            for p in 2..=*max_prime {
                if !heightlab::padic::is_prime(p) {
                    continue;
                }
                if reduction_type(&em, p).map_err(|e| e.to_string())? != ReductionType::Good {
                    continue;
                }
                let m = count_points_mod_p(&em, p).map_err(|e| e.to_string())?;
                hasse.push(json!([p, m]));
            }
            let payload = json!({
                "points_used": pts.len(),
                "nonarch_pairwise": rows,
                "arch_pairwise_sum": fmt_interval(&arch),
                "fitted_b": fmt_f64(fitted_b),
                "bernoulli_floor_ok": bern_ok,
                "bernoulli_min_slack": fmt_f64(bern_min),
                "hasse_counts": hasse,
            });
            Ok(ResultEnvelope::new(
                "ec experiment",
                config,
                Status::Ok,
                payload,
            ))
        }
    }
}

fn run_report(args: &ReportArgs, config: &ExperimentConfig) -> Result<ResultEnvelope, String> {
    let dir = &args.dir;
    let out_dir = args.out_dir.clone().unwrap_or_else(|| dir.clone());
    let mut entries: Vec<(String, ResultEnvelope)> = Vec::new();
    let mut missing = Vec::new();
    if dir.is_dir() {
        let mut paths: Vec<PathBuf> = std::fs::read_dir(dir)
            .map_err(|e| e.to_string())?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().map_or(false, |x| x == "json"))
            .collect();
        paths.sort();
        for path in paths {
            let text = std::fs::read_to_string(&path).map_err(|e| e.to_string())?;
            match serde_json::from_str::<ResultEnvelope>(&text) {
                Ok(env) => entries.push((
                    path.file_name().unwrap().to_string_lossy().to_string(),
                    env,
                )),
                Err(e) => missing.push(format!("{}: {e}", path.display())),
            }
        }
    } else {
        missing.push(format!("{} is not a directory", dir.display()));
    }
    let mut status = Status::Ok;
    let mut md = String::from("| file | command | status | summary |\n|---|---|---|---|\n");
    let mut csv = String::from("file,command,status,key,value\n");
    for (name, env) in &entries {
        status = status.worst(env.status);
        let (line, kv) = summarize_payload(&env.command, &env.payload);
        md.push_str(&format!(
            "| {name} | {} | {:?} | {line} |\n",
            env.command, env.status
        ));
        for (k, v) in &kv {
            csv.push_str(&format!("{name},{},{:?},{k},{v}\n", env.command, env.status));
        }
        if kv.is_empty() {
            csv.push_str(&format!("{name},{},{:?},,\n", env.command, env.status));
        }
    }
    std::fs::create_dir_all(&out_dir).map_err(|e| e.to_string())?;
    std::fs::write(out_dir.join("summary.md"), md.as_bytes()).map_err(|e| e.to_string())?;
    std::fs::write(out_dir.join("summary.csv"), csv.as_bytes()).map_err(|e| e.to_string())?;
    let payload = json!({
        "aggregated": entries.len(),
        "missing": missing,
        "summary_md": out_dir.join("summary.md").to_string_lossy(),
        "summary_csv": out_dir.join("summary.csv").to_string_lossy(),
    });
    Ok(ResultEnvelope::new("report", config, status, payload))
}

type Summary = (String, BTreeMap<String, String>);

fn summarize_payload(command: &str, payload: &Value) -> Summary {
    let mut kv = BTreeMap::new();
    let line = match command {
        "height" => {
            let h = payload["weil_height"]["mid"].as_str().unwrap_or("?");
            kv.insert("weil_height_mid".into(), h.to_string());
            format!("h = {h}")
        }
        "bounds eval" => {
            let v = payload["value"].as_str().unwrap_or("?");
            let variant = payload["variant"].as_str().unwrap_or("?");
            kv.insert(format!("bound_{variant}"), v.to_string());
            format!("{variant} = {v}")
        }
        "family tpadic" => {
            let min = payload["min_height"].as_str().unwrap_or("?");
            let floor = payload["totally_padic_floor"].as_str().unwrap_or("?");
            let pass = payload["all_pass"].as_bool().unwrap_or(false);
            kv.insert("min_height".into(), min.to_string());
            kv.insert("floor".into(), floor.to_string());
            kv.insert("all_pass".into(), pass.to_string());
            format!("min h = {min} vs floor {floor} (pass: {pass})")
        }
        "ec height" => {
            let h = payload["canonical_height"]["mid"].as_str().unwrap_or("?");
            kv.insert("canonical_height_mid".into(), h.to_string());
            format!("hhat = {h}")
        }
        _ => String::new(),
    };
    (line, kv)
}
