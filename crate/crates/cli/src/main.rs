//! Command-line driver: parse one job, dispatch, emit a deterministic report.
//!
//! Exit codes: 0 the job computed (check failures are still reports),
//! 2 parse problems, 3 a size cap was exceeded, 4 I/O failure.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use mombetti::{
    betti::BettiTable,
    complex::{f_to_h, f_vector, SimplicialComplex},
    corpus::parse_generator,
    error::Error,
    hochster::{hochster_betti_with_cap, DEFAULT_HOCHSTER_CAP},
    koszul,
    linalg::PrimeField,
    quasitoric::{
        self, CharMatrix, SubgroupMatrix, DEFAULT_SMALLCOVER_CAP,
    },
    series,
};

#[derive(Parser)]
#[command(
    name = "mombetti",
    about = "Bigraded cohomology of moment-angle manifolds and quasitoric quotients",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct InputArgs {
    /// JSON complex file {"m":..., "facets":[[...]], "polytopal":bool?}
    #[arg(long, conflicts_with = "generator")]
    input: Option<PathBuf>,
    /// Named generator, e.g. polygon:5, simplex-boundary:3, cyclic-dual:3,6,
    /// product:(polygon:4,polygon:4)
    #[arg(long)]
    generator: Option<String>,
}

#[derive(Args)]
struct CommonArgs {
    /// Prime field modulus (2 or an odd prime)
    #[arg(long, default_value_t = 32003)]
    field: u32,
    /// Override the default vertex cap of the engine
    #[arg(long)]
    cap_m: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Latex,
}

#[derive(Subcommand)]
enum Command {
    /// Bigraded Betti numbers via the reduced Koszul complex
    Betti {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Bigraded Betti numbers via Hochster's full-subcomplex formula
    BettiHochster {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Cohomology ring report: representatives, fundamental class, pairings
    Ring {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Dehn-Sommerville, chi-identity, duality, series and bound checks
    SeriesCheck {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Validate a characteristic matrix and compute quotient cohomology dims
    Quasitoric {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        common: CommonArgs,
        /// CharMatrix JSON file {"mod":0|2, "rows":[[...]]}
        #[arg(long)]
        char_matrix: PathBuf,
    },
    /// Check that a torus subgroup matrix acts freely (default: diagonal circle)
    Freeness {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        common: CommonArgs,
        /// SubgroupMatrix JSON file {"rows":[[...]]}; defaults to the column of ones
        #[arg(long)]
        subgroup: Option<PathBuf>,
    },
    /// Exhaustive search for a mod-2 characteristic function (small cover)
    Smallcover {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Run every check on one input and bundle a single report
    ReportAll {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Entrywise diff of two Betti tables
    Compare {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        common: CommonArgs,
        /// Left side: `koszul[@P]` | `hochster[@P]` | `file:PATH`
        #[arg(long)]
        left: String,
        /// Right side: `koszul[@P]` | `hochster[@P]` | `file:PATH`
        #[arg(long)]
        right: String,
    },
}

fn main() -> ExitCode {
    if let Ok(threads) = std::env::var("MOMBETTI_THREADS") {
        if let Ok(n) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::CapExceeded { .. } => 3,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn io_failure(e: std::io::Error, path: &Path) -> Failure {
    Failure {
        code: 4,
        message: format!("{}: {e}", path.display()),
    }
}

fn load_complex(input: &InputArgs) -> Result<SimplicialComplex, Failure> {
    match (&input.input, &input.generator) {
        (Some(path), None) => {
            let text = std::fs::read_to_string(path).map_err(|e| io_failure(e, path))?;
            Ok(SimplicialComplex::from_json(&text)?)
        }
        (None, Some(spec)) => Ok(parse_generator(spec)?),
        _ => Err(Failure {
            code: 2,
            message: "exactly one of --input or --generator is required".into(),
        }),
    }
}

fn field_of(common: &CommonArgs) -> Result<PrimeField, Failure> {
    Ok(PrimeField::new(common.field)?)
}

fn emit(common: &CommonArgs, text: String) -> Result<(), Failure> {
    match &common.out {
        Some(path) => std::fs::write(path, text).map_err(|e| io_failure(e, path)),
        None => {
            use std::io::Write;
            let mut stdout = std::io::stdout().lock();
            match writeln!(stdout, "{text}") {
                Ok(()) => Ok(()),
                // a closed pipe downstream is not our error
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
                Err(e) => Err(Failure {
                    code: 4,
                    message: e.to_string(),
                }),
            }
        }
    }
}

fn render_table(table: &BettiTable, format: Format) -> String {
    match format {
        Format::Json => table.to_json(),
        Format::Csv => table.to_csv(),
        Format::Latex => table.to_latex(),
    }
}

fn json_only(common: &CommonArgs, what: &str) -> Result<(), Failure> {
    if common.format != Format::Json {
        return Err(Failure {
            code: 2,
            message: format!("{what} reports are JSON only"),
        });
    }
    Ok(())
}

fn koszul_cap(common: &CommonArgs, field: PrimeField) -> Result<usize, Failure> {
    let cap = common.cap_m.unwrap_or_else(|| koszul::default_cap_m(field));
    if cap > mombetti::MAX_VERTICES {
        return Err(Error::CapExceeded {
            what: "cap-m",
            got: cap,
            cap: mombetti::MAX_VERTICES,
        }
        .into());
    }
    Ok(cap)
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Betti { input, common } => {
            let k = load_complex(&input)?;
            let field = field_of(&common)?;
            let cap = koszul_cap(&common, field)?;
            let table = koszul::koszul_betti_with_cap(&k, field, cap)?;
            emit(&common, render_table(&table, common.format))
        }
        Command::BettiHochster { input, common } => {
            let k = load_complex(&input)?;
            let field = field_of(&common)?;
            let cap = common.cap_m.unwrap_or(DEFAULT_HOCHSTER_CAP);
            if cap > 20 {
                return Err(Error::CapExceeded {
                    what: "cap-m",
                    got: cap,
                    cap: 20,
                }
                .into());
            }
            let table = hochster_betti_with_cap(&k, field, cap)?;
            emit(&common, render_table(&table, common.format))
        }
        Command::Ring { input, common } => {
            json_only(&common, "ring")?;
            let k = load_complex(&input)?;
            let field = field_of(&common)?;
            let cap = koszul_cap(&common, field)?;
            let report = ring_report(&k, field, cap)?;
            emit(&common, to_pretty(&report))
        }
        Command::SeriesCheck { input, common } => {
            json_only(&common, "series-check")?;
            let k = load_complex(&input)?;
            let field = field_of(&common)?;
            let cap = koszul_cap(&common, field)?;
            let table = koszul::koszul_betti_with_cap(&k, field, cap)?;
            let report = series_report(&k, &table);
            emit(&common, to_pretty(&report))
        }
        Command::Quasitoric {
            input,
            common,
            char_matrix,
        } => {
            json_only(&common, "quasitoric")?;
            let k = load_complex(&input)?;
            let field = field_of(&common)?;
            let text =
                std::fs::read_to_string(&char_matrix).map_err(|e| io_failure(e, &char_matrix))?;
            let l = CharMatrix::from_json(&text)?;
            let verdict = quasitoric::validate_characteristic(&k, &l)?;
            let dims = if verdict.pass {
                Some(quasitoric::quasitoric_betti(&k, &l, field)?)
            } else {
                None
            };
            let h = f_to_h(&f_vector(&k));
            let matches_h = dims.as_ref().is_some_and(|d| {
                d.iter().map(|&x| x as i64).collect::<Vec<_>>() == h.entries
            });
            #[derive(Serialize)]
            struct Report {
                verdict: quasitoric::Verdict,
                #[serde(skip_serializing_if = "Option::is_none")]
                dims: Option<Vec<usize>>,
                h_vector: Vec<i64>,
                dims_match_h: bool,
            }
            emit(
                &common,
                to_pretty(&Report {
                    verdict,
                    dims,
                    h_vector: h.entries,
                    dims_match_h: matches_h,
                }),
            )
        }
        Command::Freeness {
            input,
            common,
            subgroup,
        } => {
            json_only(&common, "freeness")?;
            let k = load_complex(&input)?;
            let s = match subgroup {
                Some(path) => {
                    let text =
                        std::fs::read_to_string(&path).map_err(|e| io_failure(e, &path))?;
                    SubgroupMatrix::from_json(&text)?
                }
                None => SubgroupMatrix::diagonal_circle(k.m()),
            };
            let verdict = quasitoric::freeness_check(&k, &s)?;
            emit(&common, to_pretty(&verdict))
        }
        Command::Smallcover { input, common } => {
            json_only(&common, "smallcover")?;
            let k = load_complex(&input)?;
            let cap = common.cap_m.unwrap_or(DEFAULT_SMALLCOVER_CAP);
            let witness = quasitoric::search_mod2_with_cap(&k, cap)?;
            #[derive(Serialize)]
            struct Report {
                exhausted: bool,
                #[serde(skip_serializing_if = "Option::is_none")]
                witness: Option<serde_json::Value>,
            }
            let report = Report {
                exhausted: witness.is_none(),
                witness: witness
                    .map(|w| serde_json::from_str(&w.to_json()).expect("valid json")),
            };
            emit(&common, to_pretty(&report))
        }
        Command::ReportAll { input, common } => {
            json_only(&common, "report-all")?;
            let k = load_complex(&input)?;
            let field = field_of(&common)?;
            let cap = koszul_cap(&common, field)?;
            let report = report_all(&k, field, cap)?;
            emit(&common, to_pretty(&report))
        }
        Command::Compare {
            input,
            common,
            left,
            right,
        } => {
            if common.format == Format::Latex {
                return Err(Failure {
                    code: 2,
                    message: "compare supports json and csv".into(),
                });
            }
            let la = table_for_side(&left, &input, &common)?;
            let lb = table_for_side(&right, &input, &common)?;
            let diffs = la.diff(&lb);
            match common.format {
                Format::Json => {
                    #[derive(Serialize)]
                    struct Report {
                        left: String,
                        right: String,
                        agree: bool,
                        diffs: Vec<mombetti::BettiDiff>,
                    }
                    emit(
                        &common,
                        to_pretty(&Report {
                            left,
                            right,
                            agree: diffs.is_empty(),
                            diffs,
                        }),
                    )
                }
                _ => {
                    let mut s = String::from("i,2j,left,right\n");
                    for d in &diffs {
                        s.push_str(&format!("{},{},{},{}\n", d.i, d.two_j, d.left, d.right));
                    }
                    emit(&common, s)
                }
            }
        }
    }
}

fn table_for_side(
    side: &str,
    input: &InputArgs,
    common: &CommonArgs,
) -> Result<BettiTable, Failure> {
    if let Some(path) = side.strip_prefix("file:") {
        let path = PathBuf::from(path);
        let text = std::fs::read_to_string(&path).map_err(|e| io_failure(e, &path))?;
        return Ok(BettiTable::from_json(&text)?);
    }
    let (engine, field_spec) = match side.split_once('@') {
        Some((e, f)) => (e, Some(f)),
        None => (side, None),
    };
    let field = match field_spec {
        Some(f) => PrimeField::new(f.parse::<u32>().map_err(|e| Failure {
            code: 2,
            message: format!("bad field in `{side}`: {e}"),
        })?)?,
        None => field_of(common)?,
    };
    let k = load_complex(input)?;
    match engine {
        "koszul" => {
            let cap = koszul_cap(common, field)?;
            Ok(koszul::koszul_betti_with_cap(&k, field, cap)?)
        }
        "hochster" => Ok(hochster_betti_with_cap(
            &k,
            field,
            common.cap_m.unwrap_or(DEFAULT_HOCHSTER_CAP),
        )?),
        other => Err(Failure {
            code: 2,
            message: format!("unknown engine `{other}` (koszul, hochster, file:PATH)"),
        }),
    }
}

#[derive(Serialize)]
struct StratumReport {
    bidegree: (i64, usize),
    dim: usize,
    representatives: Vec<String>,
}

#[derive(Serialize)]
struct PairingReport {
    left: (i64, usize),
    right: (i64, usize),
    matrix: Vec<Vec<i64>>,
    nonsingular: bool,
}

#[derive(Serialize)]
struct RingReport {
    betti: serde_json::Value,
    fundamental_class: String,
    strata: Vec<StratumReport>,
    pairings: Vec<PairingReport>,
}

fn ring_report(k: &SimplicialComplex, field: PrimeField, cap: usize) -> Result<RingReport, Failure> {
    let table = koszul::koszul_betti_with_cap(k, field, cap)?;
    let fund = koszul::fundamental_class(k, field)?;
    let mut strata = Vec::new();
    let mut pairings = Vec::new();
    let m = k.m();
    let n = k.polytope_dim();
    for ((q, two_r), dim) in table.iter() {
        let reps = koszul::cohomology_basis(k, field, q, two_r / 2)?;
        strata.push(StratumReport {
            bidegree: (-(q as i64), two_r),
            dim,
            representatives: reps.iter().map(|c| c.to_string()).collect(),
        });
        // pair each stratum once with its Poincaré complement
        let (qc, rc) = (m - n - q, m - two_r / 2);
        if (q, two_r / 2) <= (qc, rc) {
            let matrix = koszul::pairing_matrix(k, field, q, two_r / 2)?;
            pairings.push(PairingReport {
                left: (-(q as i64), two_r),
                right: (-(qc as i64), 2 * rc),
                matrix: matrix
                    .iter()
                    .map(|row| row.iter().map(|&x| field.balanced(x)).collect())
                    .collect(),
                nonsingular: true,
            });
        }
    }
    Ok(RingReport {
        betti: serde_json::from_str(&table.to_json()).expect("valid json"),
        fundamental_class: fund.to_string(),
        strata,
        pairings,
    })
}

#[derive(Serialize)]
struct SeriesReport {
    f_vector: Vec<i64>,
    h_vector: Vec<i64>,
    totals: Vec<usize>,
    checks: Vec<series::CheckReport>,
    bounds: series::BoundsReport,
    chi: String,
}

fn series_report(k: &SimplicialComplex, table: &BettiTable) -> SeriesReport {
    let f = f_vector(k);
    let h = f_to_h(&f);
    let checks = vec![
        series::dehn_sommerville_check(&h),
        series::chi_identity_check(&f, table),
        series::duality_check(table),
        series::bigraded_series_check(&f, k.m()),
        series::alternating_numerator_check(&h, table),
    ];
    let bounds = series::bounds_report(&f, table);
    SeriesReport {
        f_vector: f.entries.clone(),
        h_vector: h.entries.clone(),
        totals: table.totals(),
        checks,
        bounds,
        chi: series::chi_from_table(table).render(),
    }
}

#[derive(Serialize)]
struct FullReport {
    name: Option<String>,
    m: usize,
    n: usize,
    series: SeriesReport,
    koszul_vs_hochster_diffs: Vec<mombetti::BettiDiff>,
    primitive_collections: Vec<Vec<usize>>,
    neighbourliness: usize,
    pi_generators: Vec<Vec<usize>>,
    diagonal_circle_free: bool,
    all_pass: bool,
}

fn report_all(k: &SimplicialComplex, field: PrimeField, cap: usize) -> Result<FullReport, Failure> {
    let table = koszul::koszul_betti_with_cap(k, field, cap)?;
    let hoch = hochster_betti_with_cap(k, field, DEFAULT_HOCHSTER_CAP)?;
    let diffs = table.diff(&hoch);
    let series = series_report(k, &table);
    let (nb, pi) = koszul::pi_generators(k);
    let free = quasitoric::freeness_check(k, &SubgroupMatrix::diagonal_circle(k.m()))?;
    let all_pass = diffs.is_empty()
        && series.checks.iter().all(|c| c.pass)
        && series.bounds.pass
        && free.pass;
    Ok(FullReport {
        name: k.name().map(String::from),
        m: k.m(),
        n: k.polytope_dim(),
        series,
        koszul_vs_hochster_diffs: diffs,
        primitive_collections: mombetti::primitive_collections(k),
        neighbourliness: nb,
        pi_generators: pi,
        diagonal_circle_free: free.pass,
        all_pass,
    })
}

fn to_pretty<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable report")
}
