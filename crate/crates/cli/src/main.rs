//! `whitehead` — tables of basic Whitehead products, rational homotopy
//! ranks, and the cross-oracle verifier, on stdout.
//!
//! Exit codes: 0 success, 1 verification failure, 2 invalid input.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use whitehead_core::{
    aut_ledger, census, enumerate_with_options, r_sequence, report, Alphabet, BasicProduct,
    BasisRecord, EnumerationOptions, Error, TieBreak,
};

#[derive(Parser)]
#[command(
    name = "whitehead",
    version,
    about = "Basic Whitehead products on wedges of spheres: bases, rank tables, census, verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate the basic Whitehead products up to --max-dim
    Basis(CommonOpts),
    /// Rational homotopy rank table (indecomposable / decomposable / square)
    Ranks(CommonOpts),
    /// Generator census by dimension (indecomposables, pure, hybrid)
    Census(CommonOpts),
    /// Cross-check enumeration, tensor-algebra ranks, and the series oracle
    Verify {
        #[command(flatten)]
        common: CommonOpts,
        /// Also print every expansion in canonical text form
        #[arg(long)]
        dump: bool,
    },
    /// Rank bookkeeping for the automorphism tower along the r-schedule
    Aut(CommonOpts),
    /// Vanishing-skeleton dimensions of all decomposables up to --max-dim
    Skeleton(CommonOpts),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Args)]
struct CommonOpts {
    /// Parameter a of the generator family (x_i in degree 2ai, y_j in 2aj+1)
    #[arg(long, default_value_t = 1)]
    a: u32,

    /// Largest Whitehead dimension to cover
    #[arg(long = "max-dim", default_value_t = 13)]
    max_dim: u32,

    /// Count Whitehead-square contributions of even-height spheres
    #[arg(long = "include-squares", default_value_t = false)]
    include_squares: bool,

    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Render χ/η/ρ glyphs instead of ASCII labels
    #[arg(long, default_value_t = false)]
    unicode: bool,

    /// Use a plain sphere wedge with these dimensions instead of --a
    #[arg(long, value_delimiter = ',', conflicts_with = "a")]
    spheres: Option<Vec<u32>>,

    /// Cap the bracket weight during enumeration
    #[arg(long = "max-weight")]
    max_weight: Option<u32>,
}

impl CommonOpts {
    fn alphabet(&self) -> Result<Alphabet, Error> {
        if self.max_dim < 2 {
            return Err(Error::InvalidArgument(
                "--max-dim must be at least 2".into(),
            ));
        }
        match &self.spheres {
            Some(dims) => Alphabet::sphere_wedge(dims),
            None => Alphabet::em_wedge(self.a, self.max_dim.max(2 * self.a + 1) - 1),
        }
    }

    fn em_only(&self, what: &str) -> Result<(), Error> {
        if self.spheres.is_some() {
            return Err(Error::InvalidArgument(format!(
                "{what} needs the x/y generator family; drop --spheres"
            )));
        }
        Ok(())
    }

    fn enumerate(&self, alphabet: &Alphabet) -> Result<Vec<BasicProduct>, Error> {
        enumerate_with_options(
            alphabet,
            self.max_dim,
            EnumerationOptions {
                max_weight: self.max_weight,
                tie_break: TieBreak::Standard,
            },
        )
    }
}

fn main() -> ExitCode {
    // die quietly when the consumer closes the pipe (e.g. `whitehead basis | head`)
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Basis(opts) => cmd_basis(&opts),
        Command::Ranks(opts) => cmd_ranks(&opts),
        Command::Census(opts) => cmd_census(&opts),
        Command::Verify { common, dump } => return cmd_verify(&common, dump),
        Command::Aut(opts) => cmd_aut(&opts),
        Command::Skeleton(opts) => cmd_skeleton(&opts),
    }?;
    Ok(ExitCode::SUCCESS)
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn cmd_basis(opts: &CommonOpts) -> Result<(), Error> {
    let alphabet = opts.alphabet()?;
    let records: Vec<BasisRecord> = opts
        .enumerate(&alphabet)?
        .iter()
        .map(|p| BasisRecord::from_product(p, opts.unicode))
        .collect();
    match opts.format {
        Format::Json => {
            for r in &records {
                println!("{}", serde_json::to_string(r).expect("record serializes"));
            }
        }
        Format::Csv => {
            println!("whitehead,commutator,weight,height,class,multidegree");
            for r in &records {
                let md = r
                    .multidegree
                    .iter()
                    .map(|(l, c)| format!("{l}:{c}"))
                    .collect::<Vec<_>>()
                    .join(";");
                println!(
                    "{},{},{},{},{},{}",
                    csv_field(&r.whitehead),
                    csv_field(r.commutator.as_deref().unwrap_or("")),
                    r.weight,
                    r.height,
                    r.class,
                    csv_field(&md)
                );
            }
        }
        Format::Text => {
            println!("height  weight  class    product");
            for r in &records {
                let comm = r
                    .commutator
                    .as_deref()
                    .map(|c| format!("   ~   {c}"))
                    .unwrap_or_default();
                println!(
                    "{:<7} {:<7} {:<8} {}{}",
                    r.height, r.weight, r.class, r.whitehead, comm
                );
            }
        }
    }
    Ok(())
}

fn cmd_ranks(opts: &CommonOpts) -> Result<(), Error> {
    let alphabet = opts.alphabet()?;
    let products = opts.enumerate(&alphabet)?;
    let table = whitehead_core::hilton::hilton_rank_table_from_products(
        &alphabet,
        opts.max_dim,
        opts.include_squares,
        &products,
    )?;
    match opts.format {
        Format::Text => print!("{}", table.to_text()),
        Format::Csv => print!("{}", table.to_csv()),
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&table.to_json()).expect("table serializes")
        ),
    }
    Ok(())
}

fn cmd_census(opts: &CommonOpts) -> Result<(), Error> {
    opts.em_only("census")?;
    let rows = census(opts.a, opts.max_dim, opts.unicode)?;
    match opts.format {
        Format::Text => print!("{}", report::census_to_text(&rows)),
        Format::Csv => print!("{}", report::census_to_csv(&rows)),
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&report::census_to_json(&rows))
                .expect("census serializes")
        ),
    }
    Ok(())
}

fn cmd_verify(opts: &CommonOpts, dump: bool) -> Result<ExitCode, Error> {
    let alphabet = opts.alphabet()?;
    let products = opts.enumerate(&alphabet)?;
    let report = report::verify_with_products(&alphabet, opts.max_dim, &products)?;
    let expansions: Vec<(u32, Vec<(String, String)>)> = if dump {
        (2..=opts.max_dim)
            .map(|dim| {
                let polys = report::expansions_for_dim(&products, dim)
                    .into_iter()
                    .map(|(label, poly)| (label, poly.canonical_text()))
                    .collect();
                (dim, polys)
            })
            .collect()
    } else {
        Vec::new()
    };
    match opts.format {
        Format::Text => {
            print!("{}", report.to_text());
            for (dim, polys) in &expansions {
                for (label, text) in polys {
                    println!("dim {dim}: {label} = {text}");
                }
            }
        }
        Format::Csv => {
            println!("dim,enumeration,span_rank,series,pass");
            for r in &report.rows {
                println!(
                    "{},{},{},{},{}",
                    r.dim, r.enumeration, r.span_rank, r.series, r.pass
                );
            }
        }
        Format::Json => {
            let mut value = report.to_json();
            if dump {
                value["expansions"] = serde_json::to_value(
                    expansions
                        .iter()
                        .flat_map(|(dim, polys)| {
                            polys.iter().map(move |(label, text)| {
                                serde_json::json!({
                                    "dim": dim,
                                    "product": label,
                                    "expansion": text,
                                })
                            })
                        })
                        .collect::<Vec<_>>(),
                )
                .expect("expansions serialize");
            }
            println!(
                "{}",
                serde_json::to_string_pretty(&value).expect("report serializes")
            );
        }
    }
    Ok(if report.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_aut(opts: &CommonOpts) -> Result<(), Error> {
    opts.em_only("aut")?;
    let mut max_m = 0;
    while r_sequence(opts.a, max_m + 1) <= opts.max_dim {
        max_m += 1;
    }
    if max_m == 0 {
        return Err(Error::InvalidArgument(format!(
            "--max-dim {} sits below the first schedule dimension {}",
            opts.max_dim,
            r_sequence(opts.a, 1)
        )));
    }
    let rows = aut_ledger(opts.a, max_m, opts.include_squares)?;
    match opts.format {
        Format::Text => print!("{}", report::aut_ledger_to_text(&rows)),
        Format::Csv => print!("{}", report::aut_ledger_to_csv(&rows)),
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&serde_json::to_value(&rows).expect("rows serialize"))
                .expect("ledger serializes")
        ),
    }
    Ok(())
}

fn cmd_skeleton(opts: &CommonOpts) -> Result<(), Error> {
    opts.em_only("skeleton")?;
    let alphabet = opts.alphabet()?;
    let rows: Vec<(BasicProduct, u32)> = opts
        .enumerate(&alphabet)?
        .into_iter()
        .filter(|p| p.weight() >= 2)
        .map(|p| {
            let k = p.vanishing_skeleton_dim()?;
            Ok((p, k))
        })
        .collect::<Result<_, Error>>()?;
    match opts.format {
        Format::Text => {
            println!("dim  skeleton  class    product");
            for (p, k) in &rows {
                println!(
                    "{:<4} {:<9} {:<8} {}",
                    p.height(),
                    k,
                    p.classify()?.as_str(),
                    p.render_whitehead(opts.unicode)
                );
            }
        }
        Format::Csv => {
            println!("product,class,weight,whitehead_dim,skeleton_dim");
            for (p, k) in &rows {
                println!(
                    "{},{},{},{},{}",
                    csv_field(&p.render_whitehead(opts.unicode)),
                    p.classify()?.as_str(),
                    p.weight(),
                    p.height(),
                    k
                );
            }
        }
        Format::Json => {
            let values: Vec<serde_json::Value> = rows
                .iter()
                .map(|(p, k)| {
                    Ok(serde_json::json!({
                        "product": p.render_whitehead(opts.unicode),
                        "class": p.classify()?.as_str(),
                        "weight": p.weight(),
                        "whitehead_dim": p.height(),
                        "skeleton_dim": k,
                    }))
                })
                .collect::<Result<_, Error>>()?;
            println!(
                "{}",
                serde_json::to_string_pretty(&values).expect("rows serialize")
            );
        }
    }
    Ok(())
}
