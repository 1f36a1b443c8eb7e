use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use charslope_core::arith::{fmt_rat, Slope};
use charslope_core::certify::{
    constraint_profiles, family_pair, hyperbolic_exclusions, prop24_satellite_bound, thm13_region, thm14_membership,
};
use charslope_core::cfk::{a_plus, mirror, staircase, CfkComplex};
use charslope_core::classify::{
    branched_cover_h1, casson_walker_surgery, classify_description, compare_descriptions, SurgeryDescription,
};
use charslope_core::knots::{fibred_flag, lspace_form, second_deriv_at_1, KnotDesc};
use charslope_core::lens::LensSpace;
use charslope_core::search::{search_coincidences, SearchBounds};
use charslope_core::surgery::{hf_red_graded, hf_red_rank, surgery_d_invariants};

/// Surgery invariants of torus knots, cables and explicit knot Floer complexes.
#[derive(Parser)]
#[command(name = "charslope", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// d-invariants of a lens space
    Dinv {
        #[command(subcommand)]
        target: DinvTarget,
    },
    /// Alexander polynomial data of a knot
    Alex {
        knot: KnotDesc,
        #[arg(long)]
        json: bool,
    },
    /// Heegaard Floer data of p/q-surgery (p > 0)
    Hf {
        #[command(subcommand)]
        what: HfQuery,
    },
    /// Classical type of a surgery
    Classify {
        knot: KnotDesc,
        #[arg(allow_hyphen_values = true)]
        slope: Slope,
        #[arg(long)]
        json: bool,
    },
    /// Casson-Walker invariant of a surgery
    Cw {
        knot: KnotDesc,
        #[arg(allow_hyphen_values = true)]
        slope: Slope,
    },
    /// Compare two surgeries up to oriented homeomorphism
    Compare {
        knot1: KnotDesc,
        #[arg(allow_hyphen_values = true)]
        slope1: Slope,
        knot2: KnotDesc,
        #[arg(allow_hyphen_values = true)]
        slope2: Slope,
        #[arg(long)]
        json: bool,
    },
    /// |H_1| of the j-fold cyclic branched cover
    Branched {
        knot: KnotDesc,
        #[arg(long)]
        cover: u64,
        #[arg(long, allow_hyphen_values = true)]
        ptilde: Option<i64>,
    },
    /// Region certificates (JSON)
    Certify {
        #[command(subcommand)]
        which: CertifyCmd,
    },
    /// Distinct knots with the same lens space surgery
    Search {
        #[arg(long)]
        max_p: i64,
        #[arg(long)]
        cables: bool,
        #[arg(long)]
        torus_bound: Option<i64>,
        #[arg(long)]
        jsonl: Option<PathBuf>,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Member n of the torus-knot lens surgery family
    Family { n: i64 },
    /// Knot Floer complex tools
    Cfk {
        #[command(subcommand)]
        what: CfkCmd,
    },
}

#[derive(Subcommand)]
enum DinvTarget {
    Lens {
        p: i64,
        #[arg(allow_hyphen_values = true)]
        q: i64,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum HfQuery {
    /// d-invariants per spin^c structure
    D {
        knot: KnotDesc,
        #[arg(allow_hyphen_values = true)]
        slope: Slope,
        #[arg(long)]
        json: bool,
    },
    /// total rank of HF_red
    Rank {
        knot: KnotDesc,
        #[arg(allow_hyphen_values = true)]
        slope: Slope,
    },
    /// graded HF^+ per spin^c structure
    Graded {
        knot: KnotDesc,
        #[arg(allow_hyphen_values = true)]
        slope: Slope,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum CertifyCmd {
    Thm13 {
        r: i64,
        s: i64,
        #[arg(allow_hyphen_values = true)]
        slope: Slope,
    },
    Thm14 {
        #[arg(allow_hyphen_values = true)]
        slope: Slope,
    },
    Profiles {
        #[arg(allow_hyphen_values = true)]
        slope: Slope,
    },
    Hyperbolic {
        #[arg(allow_hyphen_values = true)]
        slope: Slope,
        #[arg(long)]
        genus: i64,
    },
    Satellite {
        r: i64,
        s: i64,
        slope: Slope,
    },
}

#[derive(Subcommand)]
enum CfkCmd {
    /// Reduced homology and V_k of A_k^+
    Aplus {
        knot: KnotDesc,
        #[arg(allow_hyphen_values = true)]
        k: i64,
        #[arg(long)]
        json: bool,
    },
    /// Bundled complexes
    Presets,
}

macro_rules! out {
    ($($arg:tt)*) => {
        writeln!(io::stdout().lock(), $($arg)*)?
    };
}

fn print_json<T: Serialize>(v: &T) -> Result<()> {
    out!("{}", serde_json::to_string_pretty(v)?);
    Ok(())
}

fn complex_of(knot: &KnotDesc) -> Result<CfkComplex> {
    if let KnotDesc::Explicit(c) = knot {
        return Ok((**c).clone());
    }
    if let Some(form) = lspace_form(&knot.alexander()) {
        return Ok(staircase(&form));
    }
    if let Some(form) = lspace_form(&knot.mirror().alexander()).filter(|_| knot.as_torus().is_some()) {
        return Ok(mirror(&staircase(&form)));
    }
    bail!("{knot} has no built-in complex; pass one with @file:PATH")
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Dinv { target: DinvTarget::Lens { p, q, json } } => {
            let lens = LensSpace::new(p, q)?;
            let d = lens.d_invariants();
            if json {
                print_json(&json!({ "lens": lens, "d": &*d }))?;
            } else {
                for (i, v) in d.values().iter().enumerate() {
                    out!("{i}\t{}", fmt_rat(v));
                }
            }
        }
        Command::Alex { knot, json } => {
            let delta = knot.alexander();
            let dd = second_deriv_at_1(&delta)?;
            let genus = match knot.genus() {
                Ok(g) => g,
                Err(_) => charslope_core::cfk::genus(&complex_of(&knot)?)?,
            };
            let form = lspace_form(&delta);
            if json {
                print_json(&json!({
                    "knot": knot,
                    "alexander": delta.to_string(),
                    "genus": genus,
                    "second_derivative": fmt_rat(&dd),
                    "fibred": fibred_flag(&delta),
                    "lspace_form": form,
                }))?;
            } else {
                out!("knot        {knot}");
                out!("alexander   {delta}");
                out!("genus       {genus}");
                out!("delta''(1)  {}", fmt_rat(&dd));
                out!("fibred      {}", fibred_flag(&delta));
                out!("L-space     {}", form.is_some());
            }
        }
        Command::Hf { what } => match what {
            HfQuery::D { knot, slope, json } => {
                let d = surgery_d_invariants(&knot, slope)?;
                if json {
                    print_json(&json!({ "knot": knot, "slope": slope, "d": d }))?;
                } else {
                    for (i, v) in d.values().iter().enumerate() {
                        out!("{i}\t{}", fmt_rat(v));
                    }
                }
            }
            HfQuery::Rank { knot, slope } => out!("{}", hf_red_rank(&knot, slope)?),
            HfQuery::Graded { knot, slope, json } => {
                let g = hf_red_graded(&knot, slope)?;
                if json {
                    print_json(&g)?;
                } else {
                    for (i, grp) in g.groups.iter().enumerate() {
                        let red: Vec<String> = grp.shifted().iter().map(|(x, n)| format!("F^{n}_({})", fmt_rat(x))).collect();
                        let red = if red.is_empty() { "0".to_string() } else { red.join(" + ") };
                        out!("{i}\td = {}\treduced (relative to d): {red}", fmt_rat(&grp.d));
                    }
                }
            }
        },
        Command::Classify { knot, slope, json } => {
            let d = SurgeryDescription::new(knot, slope);
            let class = classify_description(&d)?;
            if json {
                print_json(&json!({ "description": d, "class": class }))?;
            } else {
                match class {
                    Some(c) => out!("{d}: {c}"),
                    None => out!("{d}: unidentified"),
                }
            }
        }
        Command::Cw { knot, slope } => {
            out!("{}", fmt_rat(&casson_walker_surgery(&SurgeryDescription::new(knot, slope))?));
        }
        Command::Compare { knot1, slope1, knot2, slope2, json } => {
            let (d1, d2) = (SurgeryDescription::new(knot1, slope1), SurgeryDescription::new(knot2, slope2));
            let v = compare_descriptions(&d1, &d2)?;
            if json {
                print_json(&json!({ "left": d1, "right": d2, "result": v }))?;
            } else {
                out!("{d1} vs {d2}: {v}");
            }
        }
        Command::Branched { knot, cover, ptilde } => out!("{}", branched_cover_h1(&knot, cover, ptilde)?),
        Command::Certify { which } => match which {
            CertifyCmd::Thm13 { r, s, slope } => print_json(&thm13_region(r, s, slope)?)?,
            CertifyCmd::Thm14 { slope } => print_json(&thm14_membership(slope))?,
            CertifyCmd::Profiles { slope } => print_json(&constraint_profiles(slope))?,
            CertifyCmd::Hyperbolic { slope, genus } => print_json(&hyperbolic_exclusions(slope, genus)?)?,
            CertifyCmd::Satellite { r, s, slope } => print_json(&prop24_satellite_bound(r, s, slope)?)?,
        },
        Command::Search { max_p, cables, torus_bound, jsonl, csv } => {
            let bounds = SearchBounds::new(max_p).with_cables(cables).with_torus_bound(torus_bound);
            let found = search_coincidences(bounds)?;
            let mut out: Box<dyn Write> = match &jsonl {
                Some(path) => Box::new(BufWriter::new(File::create(path).with_context(|| format!("creating {}", path.display()))?)),
                None if csv.is_some() => Box::new(io::sink()),
                None => Box::new(io::stdout().lock()),
            };
            for c in &found {
                serde_json::to_writer(&mut out, c)?;
                writeln!(out)?;
            }
            out.flush()?;
            if let Some(path) = csv {
                let mut w = csv::Writer::from_path(&path).with_context(|| format!("creating {}", path.display()))?;
                w.write_record(["p", "slope", "left", "right", "lens"])?;
                for c in &found {
                    w.write_record([c.p.to_string(), c.slope.to_string(), c.left.to_string(), c.right.to_string(), c.lens.to_string()])?;
                }
                w.flush()?;
            }
            eprintln!("{} pairs", found.len());
        }
        Command::Family { n } => {
            let rec = family_pair(n)?;
            print_json(&rec)?;
            if !rec.verified {
                bail!("family member {n} failed: {}", rec.witness.unwrap_or_default());
            }
        }
        Command::Cfk { what } => match what {
            CfkCmd::Aplus { knot, k, json } => {
                let r = a_plus(&complex_of(&knot)?, k)?;
                if json {
                    print_json(&r)?;
                } else {
                    out!("V_{k} = {}", r.big_v);
                    let red: Vec<String> = r.reduced.iter().map(|(g, n)| format!("F^{n}_({g})")).collect();
                    out!("reduced: {}", if red.is_empty() { "0".into() } else { red.join(" + ") });
                }
            }
            CfkCmd::Presets => {
                for name in charslope_core::cfk::preset_names() {
                    out!("{name}");
                }
            }
        },
    }
    Ok(())
}

fn is_broken_pipe(e: &anyhow::Error) -> bool {
    let kind = e
        .downcast_ref::<io::Error>()
        .map(io::Error::kind)
        .or_else(|| e.downcast_ref::<serde_json::Error>().and_then(serde_json::Error::io_error_kind));
    kind == Some(io::ErrorKind::BrokenPipe)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) if is_broken_pipe(&e) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
