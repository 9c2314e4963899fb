use std::fs;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use dessins::belyi::{build_belyi, verify_chain};
use dessins::claims::{report_json, run_claims, select, Limits};
use dessins::dessin::Dessin;
use dessins::exactmath::Polynomial;
use dessins::fixtures::{a7, beauville_pair, s3_pair};
use dessins::perm::{CycleType, PermGroup};
use dessins::spherical::{
    enumerate_systems_with_cap, group_from_tag, hurwitz_classify, is_real, RealityConvention, SphericalError,
    UnorderedType, DEFAULT_ENUMERATION_CAP,
};
use dessins::surfaces::{
    abelianization, compare_first_systems, diagonal_action_free, fiber_product_presentation, pi1_exact_sequence_report,
    surface_invariants, PolygonalGroupData, ProductQuotientData,
};
use dessins::twocrit::{build_equations, enumerate_classes, monodromy_group_check, real_classes};

const EXIT_CLAIM_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_CAP: u8 = 3;

#[derive(Parser)]
#[command(name = "dessins", version, about = "Exact checks for dessins, Hurwitz classes and Beauville surfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Registered claims.
    Claims {
        #[command(subcommand)]
        action: ClaimsAction,
    },
    /// DOT graph of a real class of two-critical-value polynomials.
    Dessin {
        /// 1-based index among the real classes.
        #[arg(long, default_value_t = 1)]
        class: usize,
        #[arg(long, default_value_t = 7)]
        degree: usize,
        #[arg(long, default_value = "2,2,1,1,1")]
        type0: String,
        #[arg(long, default_value = "3,2,2")]
        type1: String,
        /// Write to this file instead of stdout.
        #[arg(long)]
        out: Option<String>,
    },
    Spherical {
        #[command(subcommand)]
        action: SphericalAction,
    },
    Twocrit {
        #[command(subcommand)]
        action: TwocritAction,
    },
    Belyi {
        #[command(subcommand)]
        action: BelyiAction,
    },
    Surface {
        #[command(subcommand)]
        action: SurfaceAction,
    },
}

#[derive(Subcommand)]
enum ClaimsAction {
    /// Run claims and print one line each.
    Run {
        /// Glob over claim ids, e.g. "genus-*".
        #[arg(long)]
        filter: Option<String>,
        /// Write the JSON report here ("-" for stdout).
        #[arg(long)]
        json: Option<String>,
        /// Include per-claim milliseconds in the JSON report.
        #[arg(long)]
        timing: bool,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
        enumeration_cap: usize,
    },
    /// List claim ids and what they check.
    List {
        #[arg(long)]
        filter: Option<String>,
    },
}

#[derive(Subcommand)]
enum SphericalAction {
    /// Enumerate systems of a type and count classes.
    Classify {
        /// a<n> or s<n>.
        #[arg(long)]
        group: String,
        /// Element orders, e.g. 5,5,5.
        #[arg(long = "type")]
        ty: String,
        /// Ambient group for the coarser classification; defaults to s<n>.
        #[arg(long)]
        ambient: Option<String>,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
        cap: usize,
    },
}

#[derive(Subcommand)]
enum TwocritAction {
    /// Classes of pairs (sigma0, sigma1) with a full cycle at infinity.
    Classify {
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        type0: String,
        #[arg(long)]
        type1: String,
        /// Also print the root equations.
        #[arg(long)]
        equations: bool,
    },
}

#[derive(Subcommand)]
enum BelyiAction {
    /// Critical-value chain for y^2 = x^(2g+1) - a.
    Build {
        #[arg(long)]
        genus: usize,
        /// Minimal polynomial of a, e.g. "x^2-2".
        #[arg(long)]
        minpoly: String,
        /// Print the chain as JSON.
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Pair {
    S5Example,
    S3Example,
}

#[derive(Subcommand)]
enum SurfaceAction {
    /// Freeness, invariants and the fundamental-group sequence.
    Check {
        #[arg(long, value_enum)]
        pair: Pair,
        /// Also compute H_1 by Smith normal form. For the A7 pair this is
        /// the expensive step.
        #[arg(long)]
        abelianize: bool,
        /// Write the presentation of the first surface here.
        #[arg(long)]
        export: Option<String>,
    },
}

enum Failure {
    Usage(String),
    Cap(String),
    Claim,
    Other(String),
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Other(e.to_string())
    }
}

fn usage<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Usage(e.to_string())
}

fn spherical_failure(e: SphericalError) -> Failure {
    match e {
        SphericalError::CapExceeded(..) => Failure::Cap(e.to_string()),
        e => Failure::Other(e.to_string()),
    }
}

fn write_out(path: Option<&str>, text: &str) -> Result<(), Failure> {
    match path {
        None | Some("-") => print!("{text}"),
        Some(p) => fs::write(p, text)?,
    }
    Ok(())
}

fn claims(action: ClaimsAction) -> Result<(), Failure> {
    match action {
        ClaimsAction::List { filter } => {
            for c in select(filter.as_deref()).map_err(usage)? {
                println!("{:<24} {}", c.id, c.anchor);
            }
            Ok(())
        }
        ClaimsAction::Run { filter, json, timing, enumeration_cap } => {
            let reports = run_claims(filter.as_deref(), &Limits { enumeration_cap }).map_err(usage)?;
            if json.as_deref() != Some("-") {
                for r in &reports {
                    let mark = if r.matched { "ok  " } else { "FAIL" };
                    println!("{mark} {:<24} expected {} computed {}", r.id, r.expected, r.computed);
                }
            }
            if let Some(path) = json.as_deref() {
                write_out(Some(path), &(report_json(&reports, timing) + "\n"))?;
            }
            if reports.iter().any(|r| r.capped) {
                Err(Failure::Cap("a claim hit a resource cap".into()))
            } else if reports.iter().all(|r| r.matched) {
                Ok(())
            } else {
                Err(Failure::Claim)
            }
        }
    }
}

fn dessin(class: usize, degree: usize, type0: &str, type1: &str, out: Option<&str>) -> Result<(), Failure> {
    let t0: CycleType = type0.parse().map_err(usage)?;
    let t1: CycleType = type1.parse().map_err(usage)?;
    let classes = enumerate_classes(degree, &t0, &t1).map_err(usage)?;
    let real = real_classes(&classes);
    let c = class
        .checked_sub(1)
        .and_then(|i| real.get(i))
        .ok_or_else(|| Failure::Usage(format!("class {class} out of range 1..={}", real.len())))?;
    let text = Dessin::of_polynomial(&c.representative).to_dot(&format!("real class {class}"));
    write_out(out, &text)
}

fn spherical(group: &str, ty: &str, ambient: Option<&str>, cap: usize) -> Result<(), Failure> {
    let g = Arc::new(group_from_tag(group).ok_or_else(|| Failure::Usage(format!("unknown group {group}")))?);
    let t: UnorderedType = ty.parse().map_err(usage)?;
    let ambient = match ambient {
        Some(tag) => group_from_tag(tag).ok_or_else(|| Failure::Usage(format!("unknown group {tag}")))?,
        None => PermGroup::symmetric(g.degree()),
    };
    let systems = enumerate_systems_with_cap(&g, &t, cap).map_err(spherical_failure)?;
    let c = hurwitz_classify(&systems, Some(&ambient)).map_err(spherical_failure)?;
    println!("systems {}", systems.len());
    println!("braid orbits {}", c.braid.len());
    println!("ambient classes {}", c.ambient.len());
    for o in &c.ambient {
        let r = is_real(&o.representative, Some(&ambient), RealityConvention::ReversedInverse);
        println!("{}  members {} real {}", o.representative.to_line(group), o.members, r.ambient);
    }
    Ok(())
}

fn twocrit(degree: usize, type0: &str, type1: &str, equations: bool) -> Result<(), Failure> {
    let t0: CycleType = type0.parse().map_err(usage)?;
    let t1: CycleType = type1.parse().map_err(usage)?;
    let classes = enumerate_classes(degree, &t0, &t1).map_err(usage)?;
    println!("classes {} real {}", classes.len(), real_classes(&classes).len());
    for c in &classes {
        let r = &c.representative;
        let g = monodromy_group_check(r).map_err(|e| Failure::Other(e.to_string()))?;
        let name = if g.is_alternating {
            format!("A{degree}")
        } else if g.is_symmetric {
            format!("S{degree}")
        } else {
            format!("order {}", g.order)
        };
        println!("{} ; {}  size {} real {} group {}", r.sigma0(), r.sigma1(), c.size, c.real, name);
    }
    if equations {
        print!("{}", build_equations(degree, &t0, &t1).map_err(usage)?);
    }
    Ok(())
}

fn belyi(genus: usize, minpoly: &str, json: bool) -> Result<(), Failure> {
    let p = Polynomial::parse(minpoly).map_err(usage)?;
    let chain = build_belyi(genus, &p).map_err(usage)?;
    if json {
        println!("{}", serde_json::to_string_pretty(&chain.to_json()).expect("json serializes"));
    } else {
        for (step, values) in chain.steps().iter().zip(chain.values()) {
            println!("{:<12} {}", step.kind(), values);
        }
    }
    let audit = verify_chain(&chain);
    println!("audit {}", if audit.ok { "ok" } else { "FAILED" });
    if audit.ok && chain.last_values().within_zero_one_infinity() {
        Ok(())
    } else {
        Err(Failure::Claim)
    }
}

fn report_surface(label: &str, d: &ProductQuotientData, abelianize: bool, export: Option<&str>) -> Result<(), Failure> {
    let other = |e: dessins::surfaces::SurfaceError| Failure::Other(e.to_string());
    println!("{label}: genera {:?} free {}", d.genera(), diagonal_action_free(d));
    let inv = surface_invariants(d).map_err(other)?;
    println!("{label}: e {} chi {} K^2 {}", inv.euler, inv.chi, inv.ksquared);
    println!("{label}: {}", pi1_exact_sequence_report(d).map_err(other)?.sequence());
    if abelianize || export.is_some() {
        let (s1, s2) = (d.system1(), d.system2());
        let t1 = PolygonalGroupData::of_system(s1).map_err(other)?;
        let t2 = PolygonalGroupData::of_system(s2).map_err(other)?;
        let p = fiber_product_presentation(&t1, s1, &t2, s2).map_err(other)?;
        println!("{label}: {} generators, {} relators", p.generator_count(), p.relator_count());
        if let Some(path) = export {
            fs::write(path, p.to_string() + "\n")?;
        }
        if abelianize {
            let ab = abelianization(&p);
            let t: Vec<String> = ab.torsion().iter().map(|d| d.to_string()).collect();
            println!("{label}: H1 torsion [{}] free rank {}", t.join(", "), ab.free_rank());
        }
    }
    Ok(())
}

fn surface(pair: Pair, abelianize: bool, export: Option<&str>) -> Result<(), Failure> {
    match pair {
        Pair::S5Example => {
            let g = a7();
            let (d1, d2) = (beauville_pair(&g, 1), beauville_pair(&g, 2));
            report_surface("S1", &d1, abelianize, export)?;
            report_surface("S2", &d2, abelianize, None)?;
            let c =
                compare_first_systems(&d1, &d2, &PermGroup::symmetric(7)).map_err(|e| Failure::Other(e.to_string()))?;
            println!(
                "first systems: S7-conjugate {} same braid orbit {} same S7 class {}",
                c.simultaneously_conjugate, c.same_braid_orbit, c.same_ambient_class
            );
        }
        Pair::S3Example => {
            let (s1, s2) = s3_pair();
            let d = ProductQuotientData::new(s1, s2).map_err(|e| Failure::Other(e.to_string()))?;
            println!("genera {:?} free {}", d.genera(), diagonal_action_free(&d));
            let t1 = PolygonalGroupData::of_system(d.system1()).map_err(|e| Failure::Other(e.to_string()))?;
            let t2 = PolygonalGroupData::of_system(d.system2()).map_err(|e| Failure::Other(e.to_string()))?;
            let p = fiber_product_presentation(&t1, d.system1(), &t2, d.system2())
                .map_err(|e| Failure::Other(e.to_string()))?;
            println!("{} cosets, {} generators, {} relators", p.coset_count(), p.generator_count(), p.relator_count());
            let ab = abelianization(&p);
            let t: Vec<String> = ab.torsion().iter().map(|d| d.to_string()).collect();
            println!("H1 torsion [{}] free rank {}", t.join(", "), ab.free_rank());
            if let Some(path) = export {
                fs::write(path, p.to_string() + "\n")?;
            }
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Claims { action } => claims(action),
        Command::Dessin { class, degree, type0, type1, out } => dessin(class, degree, &type0, &type1, out.as_deref()),
        Command::Spherical { action: SphericalAction::Classify { group, ty, ambient, cap } } => {
            spherical(&group, &ty, ambient.as_deref(), cap)
        }
        Command::Twocrit { action: TwocritAction::Classify { degree, type0, type1, equations } } => {
            twocrit(degree, &type0, &type1, equations)
        }
        Command::Belyi { action: BelyiAction::Build { genus, minpoly, json } } => belyi(genus, &minpoly, json),
        Command::Surface { action: SurfaceAction::Check { pair, abelianize, export } } => {
            surface(pair, abelianize, export.as_deref())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Claim) => ExitCode::from(EXIT_CLAIM_FAILURE),
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Cap(e)) => {
            eprintln!("resource cap: {e}");
            ExitCode::from(EXIT_CAP)
        }
        Err(Failure::Other(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_CLAIM_FAILURE)
        }
    }
}
