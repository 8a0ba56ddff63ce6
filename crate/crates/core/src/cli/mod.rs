//! Command-line front end. [`run`] parses arguments and returns the exit code
//! with captured output, so the binary is a thin wrapper.
//!
//! Exit codes: 0 success (all checks pass), 1 a check failed, 2 input error.

pub mod parse;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use crate::action::GroupActionSpec;
use crate::error::{Error, Result};
use crate::fforacle::{cross_check, default_primes, FpConfig};
use crate::geometry::ConstructibleSet;
use crate::groebner::Ideal;
use crate::morphism::PolyMap;
use crate::polyring::{MonomialOrder, Ring};
use crate::scenarios::{run_scenario_variant, scenario_catalog, Report, ScenarioName, Variant};

pub use parse::{parse_names, parse_point, parse_poly, parse_poly_list};

#[derive(Parser, Debug)]
#[command(
    name = "dcoset",
    version,
    about = "Exact polynomial algebra and double coset quotient checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OrderArg {
    Lex,
    Grevlex,
}

#[derive(Clone, Copy, Debug, Default, ValueEnum)]
enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Args, Debug)]
struct RingArgs {
    /// Comma-separated variable names, highest first.
    #[arg(long)]
    ring: String,
    #[arg(long, value_enum, default_value = "grevlex")]
    order: OrderArg,
}

#[derive(Args, Debug)]
struct SourceSet {
    /// Generators of the source carrier ideal (default: the whole space).
    #[arg(long, default_value = "")]
    ideal: String,
    /// Generators of the excluded ideal (default: nothing excluded).
    #[arg(long)]
    exclude: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Reduced Gröbner basis, one polynomial per line.
    Gb {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long)]
        ideal: String,
    },
    /// Elimination ideal after dropping variables.
    Eliminate {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long)]
        ideal: String,
        #[arg(long)]
        drop: String,
    },
    /// Ideal membership.
    Member {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long)]
        ideal: String,
        #[arg(long)]
        poly: String,
    },
    /// Radical membership.
    Radmember {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long)]
        ideal: String,
        #[arg(long)]
        poly: String,
    },
    /// Saturation I : g^∞.
    Saturate {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long)]
        ideal: String,
        #[arg(long)]
        by: String,
    },
    /// Ideal of the closure of the image of a map.
    Image {
        #[command(flatten)]
        ring: RingArgs,
        /// Component polynomials of the map.
        #[arg(long)]
        map: String,
        /// Target variable names.
        #[arg(long)]
        target: String,
        #[command(flatten)]
        source: SourceSet,
    },
    /// Whether a target point has a nonempty fiber.
    Fiber {
        #[command(flatten)]
        ring: RingArgs,
        /// Component polynomials of the map.
        #[arg(long)]
        map: String,
        /// Target variable names.
        #[arg(long)]
        target: String,
        /// Rational target point.
        #[arg(long)]
        point: String,
        #[command(flatten)]
        source: SourceSet,
    },
    /// Orbit closure of a point, or whether two points share an orbit.
    Orbit {
        #[command(flatten)]
        ring: RingArgs,
        /// Group parameter names.
        #[arg(long)]
        params: String,
        /// Action polynomials in the space variables and parameters.
        #[arg(long)]
        action: String,
        /// Constraint polynomials on the parameters.
        #[arg(long, default_value = "")]
        constraint: String,
        /// Parameter values of the identity element.
        #[arg(long)]
        identity: String,
        /// Rational point of the space.
        #[arg(long)]
        point: String,
        /// Second point: print whether it lies in the same orbit.
        #[arg(long)]
        to: Option<String>,
    },
    /// Run scenario checks.
    Verify {
        scenario: Option<String>,
        #[arg(long, conflicts_with = "scenario")]
        all: bool,
        /// Run the negative-control variant.
        #[arg(long)]
        mutated: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Cross-check a scenario by enumeration over small prime fields.
    Oracle {
        scenario: Option<String>,
        #[arg(long, conflicts_with = "scenario")]
        all: bool,
        /// Prime to use (default: $DCOSET_PRIMES or 3,5,7).
        #[arg(long)]
        prime: Option<u64>,
        #[arg(long)]
        mutated: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// List scenarios and their checks.
    Catalog {
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

/// Exit code and captured streams of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Output {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }
}

pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Output {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Output::ok(text)
            };
        }
    };
    match dispatch(cli.command) {
        Ok(out) => out,
        Err(e) => Output {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn build_ring(args: &RingArgs) -> Result<Ring> {
    let names = parse_names(&args.ring)?;
    let order = match args.order {
        OrderArg::Lex => MonomialOrder::Lex,
        OrderArg::Grevlex => MonomialOrder::GrevLex,
    };
    Ring::new(names, order)
}

fn ideal(text: &str, ring: &Ring) -> Result<Ideal> {
    Ideal::new(ring, parse_poly_list(text, ring)?)
}

fn source_set(src: &SourceSet, ring: &Ring) -> Result<ConstructibleSet> {
    let carrier = ideal(&src.ideal, ring)?;
    match &src.exclude {
        None => Ok(ConstructibleSet::closed(carrier)),
        Some(ex) => ConstructibleSet::locally_closed(carrier, ideal(ex, ring)?),
    }
}

fn build_map(ring: &Ring, map: &str, target: &str) -> Result<PolyMap> {
    let target = Ring::grevlex(parse_names(target)?)?;
    PolyMap::new(ring, &target, parse_poly_list(map, ring)?)
}

fn line(s: impl std::fmt::Display) -> String {
    format!("{s}\n")
}

fn dispatch(cmd: Command) -> Result<Output> {
    match cmd {
        Command::Gb { ring, ideal: i } => {
            let r = build_ring(&ring)?;
            let gb = ideal(&i, &r)?.groebner_basis();
            Ok(Output::ok(gb.iter().map(line).collect()))
        }
        Command::Eliminate { ring, ideal: i, drop } => {
            let r = build_ring(&ring)?;
            let names = parse_names(&drop)?;
            let drop: Vec<&str> = names.iter().map(String::as_str).collect();
            Ok(Output::ok(line(ideal(&i, &r)?.eliminate(&drop)?)))
        }
        Command::Member { ring, ideal: i, poly } => {
            let r = build_ring(&ring)?;
            Ok(Output::ok(line(ideal(&i, &r)?.member(&parse_poly(&poly, &r)?)?)))
        }
        Command::Radmember { ring, ideal: i, poly } => {
            let r = build_ring(&ring)?;
            Ok(Output::ok(line(
                ideal(&i, &r)?.radical_member(&parse_poly(&poly, &r)?)?,
            )))
        }
        Command::Saturate { ring, ideal: i, by } => {
            let r = build_ring(&ring)?;
            Ok(Output::ok(line(ideal(&i, &r)?.saturate(&parse_poly(&by, &r)?)?)))
        }
        Command::Image {
            ring,
            map,
            target,
            source,
        } => {
            let r = build_ring(&ring)?;
            let f = build_map(&r, &map, &target)?;
            let closure = f.image_closure(&source_set(&source, &r)?)?;
            Ok(Output::ok(line(closure.ideal())))
        }
        Command::Fiber {
            ring,
            map,
            target,
            point,
            source,
        } => {
            let r = build_ring(&ring)?;
            let f = build_map(&r, &map, &target)?;
            let q = parse_point(&point)?;
            Ok(Output::ok(line(f.point_in_image(&source_set(&source, &r)?, &q)?)))
        }
        Command::Orbit {
            ring,
            params,
            action,
            constraint,
            identity,
            point,
            to,
        } => {
            let space = build_ring(&ring)?;
            let names = parse_names(&params)?;
            let params: Vec<&str> = names.iter().map(String::as_str).collect();
            let joint = GroupActionSpec::joint_ring(&space, &params)?;
            let spec = GroupActionSpec::new(
                "G",
                &space,
                &params,
                parse_poly_list(&constraint, &joint)?,
                parse_poly_list(&action, &joint)?,
                parse_point(&identity)?.coords().to_vec(),
            )?;
            let p = parse_point(&point)?;
            match to {
                Some(q) => Ok(Output::ok(line(spec.same_orbit(&p, &parse_point(&q)?)?))),
                None => Ok(Output::ok(line(spec.orbit_closure(&p)?.ideal()))),
            }
        }
        Command::Verify {
            scenario,
            all,
            mutated,
            format,
        } => {
            let names = scenario_names(scenario.as_deref(), all)?;
            let variant = if mutated { Variant::Mutated } else { Variant::Faithful };
            let reports: Vec<Report> = names.par_iter().map(|&n| run_scenario_variant(n, variant)).collect();
            Ok(emit_reports(&reports, format, all))
        }
        Command::Oracle {
            scenario,
            all,
            prime,
            mutated,
            format,
        } => {
            let names = scenario_names(scenario.as_deref(), all)?;
            let variant = if mutated { Variant::Mutated } else { Variant::Faithful };
            let primes = match prime {
                Some(p) => vec![p],
                None => default_primes()?,
            };
            let configs = primes.into_iter().map(FpConfig::new).collect::<Result<Vec<_>>>()?;
            let mut reports = Vec::new();
            for n in names {
                for &cfg in &configs {
                    reports.push(cross_check(n, variant, cfg)?);
                }
            }
            let many = reports.len() > 1;
            Ok(emit_reports(&reports, format, many))
        }
        Command::Catalog { format } => {
            let cat = scenario_catalog();
            let text = match format {
                Format::Json => line(serde_json::to_string_pretty(&cat).expect("catalog serializes")),
                Format::Text => {
                    let mut s = String::new();
                    for spec in &cat {
                        s.push_str(&format!("{}: {}\n", spec.scenario, spec.title));
                        for c in &spec.checks {
                            s.push_str(&format!("  {} ({}): {}\n", c.id, c.paper_locus, c.description));
                        }
                        s.push_str(&format!(
                            "  negative control: {} -> breaks {}\n",
                            spec.negative_control.mutation, spec.negative_control.breaks
                        ));
                    }
                    s
                }
            };
            Ok(Output::ok(text))
        }
    }
}

fn scenario_names(scenario: Option<&str>, all: bool) -> Result<Vec<ScenarioName>> {
    match (scenario, all) {
        (_, true) => Ok(ScenarioName::ALL.to_vec()),
        (Some(s), false) => Ok(vec![s.parse()?]),
        (None, false) => Err(Error::Precondition("name a scenario or pass --all".into())),
    }
}

fn emit_reports(reports: &[Report], format: Format, as_list: bool) -> Output {
    let stdout = match format {
        Format::Json if as_list => line(serde_json::to_string_pretty(reports).expect("reports serialize")),
        Format::Json => line(reports[0].to_json()),
        Format::Text => reports.iter().map(|r| format!("{r}\n")).collect::<Vec<_>>().join("\n"),
    };
    let code = if reports.iter().all(Report::passed) { 0 } else { 1 };
    Output {
        code,
        stdout,
        stderr: String::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cli(args: &[&str]) -> Output {
        run(std::iter::once("dcoset").chain(args.iter().copied()))
    }

    #[test]
    fn member_of_unit_ideal() {
        let out = cli(&["member", "--ring", "x,y", "--ideal", "x,1-x", "--poly", "1"]);
        assert_eq!(out, Output::ok("true\n".into()));
    }

    #[test]
    fn input_errors_exit_2() {
        let out = cli(&["member", "--ring", "x,y", "--ideal", "x^-1", "--poly", "1"]);
        assert_eq!(out.code, 2);
        assert!(out.stderr.contains("position 2"), "{}", out.stderr);
        assert_eq!(cli(&["verify", "example9"]).code, 2);
        assert_eq!(cli(&["frobnicate"]).code, 2);
        assert_eq!(cli(&["oracle", "example1", "--prime", "4"]).code, 2);
    }

    #[test]
    fn help_exits_0() {
        assert_eq!(cli(&["--help"]).code, 0);
    }
}
