use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use hilbflag::chi::{chi_checks, ChiFamily};
use hilbflag::correspond::{poincare_pair13, tr_poly};
use hilbflag::series::{product_family, Family, QPoly};
use hilbflag::strata::strata_table;
use hilbflag::verify::{run_all, Limits};
use hilbflag::wallcross::{orbits, sweep, verify_wall, Degree};
use hilbflag::weights::*;
use hilbflag::young::{enumerate_flags2, enumerate_flags3, enumerate_partitions};
use num_rational::Ratio;
use serde::Serialize;

#[derive(Parser)]
#[command(name = "hilbflag", version, about = "Torus fixed points and Poincare polynomials of punctual flag Hilbert schemes")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for the parallel parts.
    #[arg(long, global = true, env = "HILBFLAG_THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Poincare polynomial of one space.
    Poincare {
        #[arg(long, value_enum)]
        family: PolyFamily,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        torus: Option<Torus>,
    },
    /// Coefficients of a generating function.
    Series {
        #[arg(long, value_enum)]
        family: SeriesFamily,
        #[arg(long)]
        order: usize,
    },
    /// Hilbert-Samuel strata with dimensions and polynomials.
    Strata {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=3))]
        depth: u8,
    },
    /// Orbits and sign data at the walls.
    Wallcross {
        #[arg(long, value_enum)]
        family: WallFamily,
        #[arg(long)]
        n: usize,
        /// A single wall such as `2` or `5/4`; all walls when absent.
        #[arg(long, value_parser = parse_wall)]
        wall: Option<Rational>,
    },
    /// Run the acceptance criteria.
    Verify {
        #[arg(long)]
        max_n: Option<usize>,
    },
    /// Euler characteristic check of the reference polynomials.
    Chi {
        #[arg(long, value_enum)]
        family: ChiArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum PolyFamily {
    Single,
    Pair,
    Triple,
    Pair13,
    Tr,
}

#[derive(Clone, Copy, ValueEnum)]
enum Torus {
    Infty,
    Oneplus,
}

#[derive(Clone, Copy, ValueEnum)]
enum SeriesFamily {
    Goettsche,
    Cheah,
    Threeflag,
    Pair13,
    Tr,
}

#[derive(Clone, Copy, ValueEnum)]
enum WallFamily {
    Single,
    Pair,
    Triple,
}

#[derive(Clone, Copy, ValueEnum)]
enum ChiArg {
    Flag4,
    Flag5,
    Flag7,
}

fn parse_wall(s: &str) -> Result<Rational, String> {
    let w: Ratio<i64> = s.parse().map_err(|_| format!("`{s}` is not a rational number"))?;
    if w <= Ratio::from_integer(1) {
        return Err(format!("wall {w} must exceed 1"));
    }
    Ok(w)
}

struct Failure(String, u8);

fn print_json<T: Serialize>(v: &T) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn poincare(family: PolyFamily, n: usize, torus: Option<Torus>) -> Result<QPoly, Failure> {
    let oneplus = matches!(torus, Some(Torus::Oneplus));
    Ok(match family {
        PolyFamily::Single if oneplus => QPoly::from_exponents(enumerate_partitions(n).iter().map(pos_oneplus_single_m)),
        PolyFamily::Single => QPoly::from_exponents(enumerate_partitions(n).iter().map(pos_infty_single)),
        PolyFamily::Pair if oneplus => QPoly::from_exponents(enumerate_flags2(n).iter().map(pos_oneplus_pair_marks)),
        PolyFamily::Pair => QPoly::from_exponents(enumerate_flags2(n).iter().map(pos_infty_pair)),
        PolyFamily::Triple if oneplus => QPoly::from_exponents(enumerate_flags3(n).iter().map(pos_oneplus_triple)),
        PolyFamily::Triple => QPoly::from_exponents(enumerate_flags3(n).iter().map(pos_infty_triple)),
        PolyFamily::Pair13 | PolyFamily::Tr if torus.is_some() => {
            return Err(Failure("--torus applies to single, pair and triple only".into(), 2))
        }
        PolyFamily::Pair13 => poincare_pair13(n),
        PolyFamily::Tr => tr_poly(n),
    })
}

fn degree(f: WallFamily) -> Degree {
    match f {
        WallFamily::Single => Degree::Single,
        WallFamily::Pair => Degree::Pair,
        WallFamily::Triple => Degree::Triple,
    }
}

fn dispatch(cli: Cli) -> Result<(), Failure> {
    let json = cli.json;
    match cli.command {
        Command::Poincare { family, n, torus } => {
            let p = poincare(family, n, torus)?;
            if json {
                print_json(&p);
            } else {
                println!("{p}");
            }
        }
        Command::Series { family, order } => {
            let fam = match family {
                SeriesFamily::Goettsche => Family::Goettsche,
                SeriesFamily::Cheah => Family::Cheah,
                SeriesFamily::Threeflag => Family::Threeflag,
                SeriesFamily::Pair13 => Family::Pair13,
                SeriesFamily::Tr => Family::Tr,
            };
            let s = product_family(fam, order);
            if json {
                print_json(&s.coeffs());
            } else {
                for (k, c) in s.coeffs().iter().enumerate() {
                    println!("z^{k}: {c}");
                }
            }
        }
        Command::Strata { n, depth } => {
            let table = strata_table(n, depth as usize);
            if json {
                print_json(&table);
            } else {
                let show = |d: Option<usize>| d.map_or("-".to_string(), |d| d.to_string());
                for r in &table {
                    println!(
                        "{}  dim_M={} dim_G={} points={}  {}",
                        r.ty,
                        show(r.dim_m),
                        show(r.dim_g),
                        r.fixed_point_count,
                        r.poincare_m
                    );
                }
            }
        }
        Command::Wallcross { family, n, wall } => {
            let d = degree(family);
            match wall {
                Some(w) => {
                    let report = verify_wall(n, d, w);
                    if json {
                        print_json(&report);
                    } else {
                        println!("W = {w}: {} orbits", report.orbits.len());
                        for (o, s) in orbits(n, d, w).iter().zip(&report.orbits) {
                            let members: Vec<String> = o.members.iter().map(|m| m.to_string()).collect();
                            println!("  pos_W={} (s+,s-)={:?}  {}", s.pos, s.s, members.join(" "));
                        }
                        println!("  W+: {}", report.poly_plus);
                        println!("  W-: {}", report.poly_minus);
                        for v in &report.violations {
                            println!("  violation: {v}");
                        }
                    }
                    if !report.ok() {
                        return Err(Failure(format!("{} violations at W = {w}", report.violations.len()), 1));
                    }
                }
                None => {
                    let report = sweep(n, d);
                    if json {
                        print_json(&report);
                    } else {
                        println!("infinity: {}", report.poly_infty);
                        for w in report.walls.iter().rev() {
                            let sizes: Vec<usize> = w.orbits.iter().map(|o| o.size).collect();
                            let verdict = if w.ok() { "ok" } else { "VIOLATIONS" };
                            println!("W = {}: {} orbits, sizes {:?}  {}  {verdict}", w.wall, sizes.len(), sizes, w.poly_plus);
                        }
                        println!("1+: {}", report.poly_oneplus);
                    }
                    if !report.ok() {
                        return Err(Failure("wall sweep found violations".into(), 1));
                    }
                }
            }
        }
        Command::Verify { max_n } => {
            let lim = max_n.map_or_else(Limits::default, Limits::capped);
            let results = run_all(&lim);
            if json {
                print_json(&results);
            } else {
                for r in &results {
                    println!("{r}");
                }
            }
            let failed = results.iter().filter(|r| !r.passed).count();
            if failed > 0 {
                return Err(Failure(format!("{failed} criteria failed"), 1));
            }
        }
        Command::Chi { family } => {
            let fam = match family {
                ChiArg::Flag4 => ChiFamily::Flag4,
                ChiArg::Flag5 => ChiFamily::Flag5,
                ChiArg::Flag7 => ChiFamily::Flag7,
            };
            let checks = chi_checks(fam);
            if json {
                print_json(&checks);
            } else {
                for c in &checks {
                    println!("{c}");
                }
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let text = e.to_string();
            eprintln!("{}", text.lines().next().unwrap_or("invalid arguments"));
            return ExitCode::from(2);
        }
    };
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure(msg, code)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
