//! Command-line front end: graph generators, exact curvature reports,
//! statement verifiers, and conjecture scans.
//!
//! Exit codes: 0 success / statement holds; 1 statement fails (witness on
//! stderr and in the JSON report); 2 usage or malformed input; 3 instance
//! violates a statement's preconditions; 4 internal solver error.

use std::fs;
use std::io::{Read, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use ricci::curvature::{curvature_all_edges, kappa_alpha, kappa_lly, CurvatureReport};
use ricci::error::Error;
use ricci::graph::{
    cartesian_product, complete, complete_bipartite, cycle, hypercube, path, star, Graph,
};
use ricci::io::report::{
    C5PowerEntry, CurvatureEntry, ReportDocument, ScanRecordEntry, ScanSummaryEntry, VerdictEntry,
};
use ricci::io::{edgelist, graph6, read_graph, GraphFormat};
use ricci::numerics::{check_noninteger_lemma, parse_rational, ComparisonVerdict};
use ricci::scan::{
    c5_power_experiment, scan_conjecture1, scan_conjecture2, ScanOptions, ScanSource,
};
use ricci::util::seeded_permutation;
use ricci::verify::{
    check_diameter_bound, check_gamma_inequality, check_main_bound, check_matching_lemma,
    check_regular_constant, hypercube_labeling, VerifierVerdict,
};

#[derive(Parser)]
#[command(name = "ricci", version, about = "Exact Lin-Lu-Yau curvature toolkit for finite graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a graph from a standard family and print it
    Gen {
        #[command(subcommand)]
        family: Family,
    },
    /// Exact curvature of an edge, a vertex pair, or all edges
    Curv {
        #[command(subcommand)]
        mode: CurvMode,
    },
    /// Verify a statement on an instance; exit 0 iff it holds
    Verify {
        #[command(subcommand)]
        statement: VerifyCmd,
    },
    /// Conjecture evidence scans
    Scan {
        #[command(subcommand)]
        target: ScanCmd,
    },
}

#[derive(Clone, Copy, ValueEnum, Default)]
enum FormatArg {
    #[default]
    Graph6,
    Edgelist,
}

impl From<FormatArg> for GraphFormat {
    fn from(value: FormatArg) -> Self {
        match value {
            FormatArg::Graph6 => GraphFormat::Graph6,
            FormatArg::Edgelist => GraphFormat::EdgeList,
        }
    }
}

#[derive(Subcommand)]
enum Family {
    /// Hypercube Q_d
    Hypercube {
        d: u32,
        #[command(flatten)]
        out: GenOpts,
    },
    /// Cycle C_n
    Cycle {
        n: usize,
        #[command(flatten)]
        out: GenOpts,
    },
    /// Path P_n
    Path {
        n: usize,
        #[command(flatten)]
        out: GenOpts,
    },
    /// Complete graph K_n
    Complete {
        n: usize,
        #[command(flatten)]
        out: GenOpts,
    },
    /// Complete bipartite K_{a,b}
    CompleteBipartite {
        a: usize,
        b: usize,
        #[command(flatten)]
        out: GenOpts,
    },
    /// Star K_{1,n}
    Star {
        n: usize,
        #[command(flatten)]
        out: GenOpts,
    },
    /// k-fold Cartesian power of C_5
    C5power {
        k: u32,
        #[command(flatten)]
        out: GenOpts,
    },
}

#[derive(Args)]
struct GenOpts {
    #[arg(long, value_enum, default_value_t)]
    format: FormatArg,
}

#[derive(Args)]
struct InputOpts {
    /// Input file; '-' reads stdin
    #[arg(long, default_value = "-")]
    input: String,
    #[arg(long, value_enum, default_value_t)]
    format: FormatArg,
}

#[derive(Args)]
struct ReportOpts {
    /// Emit a JSON report document on stdout
    #[arg(long)]
    json: bool,
    /// Include dual/matching witnesses in the output
    #[arg(long)]
    witness: bool,
}

#[derive(Subcommand)]
enum CurvMode {
    /// One edge (endpoints must be adjacent)
    Edge {
        u: usize,
        v: usize,
        #[command(flatten)]
        input: InputOpts,
        /// Also sample the alpha-lazy curvature at this idleness, as p/q
        #[arg(long)]
        alpha: Option<String>,
        #[command(flatten)]
        report: ReportOpts,
    },
    /// Any vertex pair
    Pair {
        u: usize,
        v: usize,
        #[command(flatten)]
        input: InputOpts,
        #[arg(long)]
        alpha: Option<String>,
        #[command(flatten)]
        report: ReportOpts,
    },
    /// Every edge
    All {
        #[command(flatten)]
        input: InputOpts,
        #[arg(long)]
        alpha: Option<String>,
        #[command(flatten)]
        report: ReportOpts,
    },
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Layer inequality (strong {C3,C5}-free form plus weak form)
    Gamma {
        #[command(flatten)]
        common: VerifyOpts,
    },
    /// Perfect neighborhood matchings on positively curved edges
    Matching {
        #[command(flatten)]
        common: VerifyOpts,
    },
    /// Constant curvature 2/d on regular {C3,C5}-free graphs
    Regular {
        #[command(flatten)]
        common: VerifyOpts,
    },
    /// diam(G) <= 2/kappa with kappa the minimum edge curvature
    Diameter {
        #[command(flatten)]
        common: VerifyOpts,
    },
    /// Order bound |V| <= 2^(2/kappa) with equality analysis
    Bound {
        #[command(flatten)]
        common: VerifyOpts,
    },
    /// Hypercube reconstruction by subset labeling
    IsoQd {
        #[command(flatten)]
        common: VerifyOpts,
    },
    /// Non-integer binomial partial-sum bound for s = p/q
    Noninteger {
        /// The exponent s as p/q (non-integer, >= 1)
        #[arg(long)]
        s: String,
        #[arg(long, default_value_t = 4096)]
        max_precision_bits: u32,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct VerifyOpts {
    #[command(flatten)]
    input: InputOpts,
    #[command(flatten)]
    report: ReportOpts,
    /// Permute vertices with this seed before verifying
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = 4096)]
    max_precision_bits: u32,
}

#[derive(Args)]
struct ScanCommon {
    /// enum:<n> for the exhaustive catalog, file:<path> for a graph6 corpus
    #[arg(long, default_value = "enum:5")]
    source: String,
    /// Worker threads (defaults to RICCI_JOBS, then 1)
    #[arg(long)]
    jobs: Option<usize>,
    /// Write per-graph records to this path as JSON lines
    #[arg(long)]
    out: Option<String>,
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum ScanCmd {
    /// Triangle-free order bound |V| <= 2^(2/kappa)
    C1 {
        #[command(flatten)]
        common: ScanCommon,
    },
    /// Degree bound |V|^2 <= 5^Delta
    C2 {
        #[command(flatten)]
        common: ScanCommon,
    },
    /// Cartesian powers of C5, k = 1..=k_max
    C5pow {
        /// Largest power to run
        #[arg(long, default_value_t = 2)]
        k: u32,
        #[arg(long)]
        json: bool,
    },
}

fn exit_code_for(error: &Error) -> u8 {
    match error {
        Error::Argument(_) | Error::Parse { .. } => 2,
        Error::Internal(_) => 4,
        _ => 3,
    }
}

fn fail(error: Error) -> ExitCode {
    eprintln!("error: {error}");
    ExitCode::from(exit_code_for(&error))
}

fn read_input(opts: &InputOpts) -> Result<Graph, Error> {
    let text = if opts.input == "-" {
        let mut buffer = String::new();
        std::io::stdin()
            .read_to_string(&mut buffer)
            .map_err(|e| Error::Parse {
                line: None,
                offset: None,
                message: format!("cannot read stdin: {e}"),
            })?;
        buffer
    } else {
        fs::read_to_string(&opts.input).map_err(|e| Error::Parse {
            line: None,
            offset: None,
            message: format!("cannot read {}: {e}", opts.input),
        })?
    };
    read_graph(&text, opts.format.into())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Gen { family } => run_gen(family),
        Command::Curv { mode } => run_curv(mode),
        Command::Verify { statement } => run_verify(statement),
        Command::Scan { target } => run_scan(target),
    }
}

fn run_gen(family: Family) -> ExitCode {
    let (graph, out) = match family {
        Family::Hypercube { d, out } => (hypercube(d), out),
        Family::Cycle { n, out } => (cycle(n), out),
        Family::Path { n, out } => (path(n), out),
        Family::Complete { n, out } => (complete(n), out),
        Family::CompleteBipartite { a, b, out } => (complete_bipartite(a, b), out),
        Family::Star { n, out } => (star(n), out),
        Family::C5power { k, out } => (build_c5_power(k), out),
    };
    let graph = match graph {
        Ok(g) => g,
        Err(e) => return fail(e),
    };
    match out.format {
        FormatArg::Graph6 => match graph6::encode(&graph) {
            Ok(line) => println!("{line}"),
            Err(e) => return fail(e),
        },
        FormatArg::Edgelist => print!("{}", edgelist::encode(&graph)),
    }
    ExitCode::SUCCESS
}

fn build_c5_power(k: u32) -> Result<Graph, Error> {
    if k == 0 {
        return Err(Error::Argument("power must be >= 1".into()));
    }
    let c5 = cycle(5)?;
    let mut g = c5.clone();
    for _ in 1..k {
        g = cartesian_product(&g, &c5)?;
    }
    Ok(g)
}

fn attach_alpha(
    g: &Graph,
    report: &mut CurvatureReport,
    alpha: &Option<String>,
) -> Result<(), Error> {
    if let Some(text) = alpha {
        let alpha = parse_rational(text)?;
        let value = kappa_alpha(g, report.x, report.y, &alpha)?;
        report.kappa_alpha = Some((alpha, value));
    }
    Ok(())
}

fn run_curv(mode: CurvMode) -> ExitCode {
    let (input, alpha, report_opts, pair) = match &mode {
        CurvMode::Edge {
            u,
            v,
            input,
            alpha,
            report,
        } => (input, alpha, report, Some((*u, *v, true))),
        CurvMode::Pair {
            u,
            v,
            input,
            alpha,
            report,
        } => (input, alpha, report, Some((*u, *v, false))),
        CurvMode::All {
            input,
            alpha,
            report,
        } => (input, alpha, report, None),
    };
    let g = match read_input(input) {
        Ok(g) => g,
        Err(e) => return fail(e),
    };
    let reports: Result<Vec<CurvatureReport>, Error> = match pair {
        Some((u, v, require_edge)) => {
            if require_edge && (u >= g.vertex_count() || v >= g.vertex_count() || !g.has_edge(u, v))
            {
                Err(Error::Argument(format!("({u}, {v}) is not an edge")))
            } else {
                kappa_lly(&g, u, v).map(|r| vec![r])
            }
        }
        None => curvature_all_edges(&g),
    };
    let mut reports = match reports {
        Ok(r) => r,
        Err(e) => return fail(e),
    };
    for report in &mut reports {
        if let Err(e) = attach_alpha(&g, report, alpha) {
            return fail(e);
        }
    }

    if report_opts.json {
        let mut doc = ReportDocument::new(input.input.clone());
        for report in &reports {
            doc.curvature
                .push(CurvatureEntry::from_report(report, report_opts.witness));
        }
        println!("{}", doc.to_json());
    } else {
        for report in &reports {
            let mut line = format!(
                "{} {} d={} kappa={}",
                report.x, report.y, report.distance, report.kappa_lly
            );
            if let Some((alpha, value)) = &report.kappa_alpha {
                line.push_str(&format!(" kappa_alpha[{alpha}]={value}"));
            }
            println!("{line}");
            if report_opts.witness {
                let values: Vec<String> = report
                    .dual_witness
                    .values()
                    .map(|(v, r)| format!("f({v})={r}"))
                    .collect();
                println!("  witness: {}", values.join(" "));
            }
        }
    }
    ExitCode::SUCCESS
}

fn emit_verdict(
    verdict: &VerifierVerdict,
    opts: &VerifyOpts,
    input_name: &str,
    extra: Vec<String>,
) -> ExitCode {
    if opts.report.json {
        let mut doc = ReportDocument::new(input_name.to_string());
        doc.verdicts
            .push(VerdictEntry::from_verdict(verdict, opts.report.witness));
        println!("{}", doc.to_json());
    } else {
        let state = if verdict.holds { "holds" } else { "FAILS" };
        let kappa = verdict
            .kappa
            .as_ref()
            .map(|k| format!(" kappa={k}"))
            .unwrap_or_default();
        println!(
            "{}: {state}{kappa} (checked {})",
            verdict.statement.id(),
            verdict.checked
        );
        for line in extra {
            println!("{line}");
        }
    }
    if verdict.holds {
        ExitCode::SUCCESS
    } else {
        if let Some(witness) = &verdict.witness {
            eprintln!("counter-witness: {witness:?}");
        }
        ExitCode::from(1)
    }
}

fn run_verify(statement: VerifyCmd) -> ExitCode {
    match statement {
        VerifyCmd::Noninteger {
            s,
            max_precision_bits,
            json,
        } => {
            let s = match parse_rational(&s) {
                Ok(s) => s,
                Err(e) => return fail(e),
            };
            let comparison = match check_noninteger_lemma(&s, max_precision_bits) {
                Ok(c) => c,
                Err(e) => return fail(e),
            };
            let strictly_less = comparison.verdict == ComparisonVerdict::StrictlyLess;
            if json {
                println!(
                    "{}",
                    serde_json::json!({
                        "tool": "ricci",
                        "version": env!("CARGO_PKG_VERSION"),
                        "statement": "noninteger-binomial",
                        "s": s.to_string(),
                        "lhs": comparison.lhs.to_string(),
                        "rhs_lower": comparison.rhs_lower.to_string(),
                        "rhs_upper": comparison.rhs_upper.to_string(),
                        "verdict": if strictly_less { "strictly-less" } else { "inconclusive" },
                        "precision_bits": comparison.precision_bits,
                    })
                );
            } else {
                println!(
                    "noninteger-binomial: s={s} lhs={} rhs in [{}, {}] -> {}",
                    comparison.lhs,
                    comparison.rhs_lower,
                    comparison.rhs_upper,
                    if strictly_less {
                        "strictly less"
                    } else {
                        "inconclusive"
                    }
                );
            }
            if strictly_less {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        VerifyCmd::Gamma { common } => with_graph(common, |g, opts| {
            let (kappa, _) = ricci::curvature::min_edge_curvature(g)?;
            if !num_traits::Signed::is_positive(&kappa) {
                return Err(Error::Precondition(format!(
                    "minimum edge curvature {kappa} is not positive"
                )));
            }
            let report = check_gamma_inequality(g, &kappa)?;
            let tight = format!(
                "strong form tight everywhere: {}",
                report.strong_tight_everywhere
            );
            Ok((report.verdict, vec![tight], opts.input.input.clone()))
        }),
        VerifyCmd::Matching { common } => with_graph(common, |g, opts| {
            let verdict = check_matching_lemma(g)?;
            Ok((verdict, vec![], opts.input.input.clone()))
        }),
        VerifyCmd::Regular { common } => with_graph(common, |g, opts| {
            let verdict = check_regular_constant(g)?;
            Ok((verdict, vec![], opts.input.input.clone()))
        }),
        VerifyCmd::Diameter { common } => with_graph(common, |g, opts| {
            let (kappa, _) = ricci::curvature::min_edge_curvature(g)?;
            if !num_traits::Signed::is_positive(&kappa) {
                return Err(Error::Precondition(format!(
                    "minimum edge curvature {kappa} is not positive"
                )));
            }
            let verdict = check_diameter_bound(g, &kappa)?;
            Ok((verdict, vec![], opts.input.input.clone()))
        }),
        VerifyCmd::Bound { common } => with_graph(common, |g, opts| {
            let report = check_main_bound(g)?;
            let mut extra = vec![format!(
                "|V|={} vs 2^({}) in [{}, {}]; equality: {}",
                g.vertex_count(),
                report.exponent,
                report.bound_enclosure.0,
                report.bound_enclosure.1,
                report.equality
            )];
            if let Some(labeling) = &report.labeling {
                extra.push(format!(
                    "hypercube labeling reconstructed (d = {})",
                    labeling.dimension
                ));
            }
            Ok((report.verdict, extra, opts.input.input.clone()))
        }),
        VerifyCmd::IsoQd { common } => {
            let g = match read_input(&common.input) {
                Ok(g) => g,
                Err(e) => return fail(e),
            };
            let g = match permute_if_seeded(g, &common) {
                Ok(g) => g,
                Err(e) => return fail(e),
            };
            match hypercube_labeling(&g) {
                Ok(labeling) => {
                    if common.report.json {
                        println!(
                            "{}",
                            serde_json::json!({
                                "tool": "ricci",
                                "version": env!("CARGO_PKG_VERSION"),
                                "statement": "iso-qd",
                                "holds": true,
                                "dimension": labeling.dimension,
                                "labels": labeling.labels,
                            })
                        );
                    } else {
                        println!("iso-qd: holds (d = {})", labeling.dimension);
                        if common.report.witness {
                            let labels: Vec<String> = labeling
                                .labels
                                .iter()
                                .enumerate()
                                .map(|(v, l)| format!("{v}->{l:#b}"))
                                .collect();
                            println!("  labels: {}", labels.join(" "));
                        }
                    }
                    ExitCode::SUCCESS
                }
                Err(e @ Error::NotHypercube { .. }) => {
                    eprintln!("counter-witness: {e}");
                    if common.report.json {
                        println!(
                            "{}",
                            serde_json::json!({
                                "tool": "ricci",
                                "version": env!("CARGO_PKG_VERSION"),
                                "statement": "iso-qd",
                                "holds": false,
                                "reason": e.to_string(),
                            })
                        );
                    } else {
                        println!("iso-qd: FAILS ({e})");
                    }
                    ExitCode::from(1)
                }
                Err(e) => fail(e),
            }
        }
    }
}

fn permute_if_seeded(g: Graph, opts: &VerifyOpts) -> Result<Graph, Error> {
    match opts.seed {
        Some(seed) => {
            let perm = seeded_permutation(g.vertex_count(), seed);
            g.permuted(&perm)
        }
        None => Ok(g),
    }
}

type VerifyOutcome = Result<(VerifierVerdict, Vec<String>, String), Error>;

fn with_graph(
    opts: VerifyOpts,
    run: impl FnOnce(&Graph, &VerifyOpts) -> VerifyOutcome,
) -> ExitCode {
    let g = match read_input(&opts.input) {
        Ok(g) => g,
        Err(e) => return fail(e),
    };
    let g = match permute_if_seeded(g, &opts) {
        Ok(g) => g,
        Err(e) => return fail(e),
    };
    match run(&g, &opts) {
        Ok((verdict, extra, input_name)) => emit_verdict(&verdict, &opts, &input_name, extra),
        Err(e) => fail(e),
    }
}

fn parse_source(text: &str) -> Result<ScanSource, Error> {
    if let Some(rest) = text.strip_prefix("enum:") {
        let max_n: usize = rest
            .parse()
            .map_err(|_| Error::Argument(format!("bad enumeration size {rest:?}")))?;
        Ok(ScanSource::Enumeration { max_n })
    } else if let Some(path) = text.strip_prefix("file:") {
        Ok(ScanSource::Graph6File(path.into()))
    } else {
        Err(Error::Argument(format!(
            "source must be enum:<n> or file:<path>, got {text:?}"
        )))
    }
}

fn effective_jobs(flag: Option<usize>) -> usize {
    flag.or_else(|| {
        std::env::var("RICCI_JOBS")
            .ok()
            .and_then(|v| v.parse().ok())
    })
    .unwrap_or(1)
    .max(1)
}

fn run_scan(target: ScanCmd) -> ExitCode {
    match target {
        ScanCmd::C1 { common } => run_conjecture_scan(common, true),
        ScanCmd::C2 { common } => run_conjecture_scan(common, false),
        ScanCmd::C5pow { k, json } => {
            let mut entries = Vec::new();
            for power in 1..=k.max(1) {
                match c5_power_experiment(power) {
                    Ok(report) => {
                        if !json {
                            println!(
                                "c5^{}: n={} m={} degree={} kappa_min={} tight={}",
                                report.k,
                                report.order,
                                report.edges,
                                report.degree,
                                report.min_kappa,
                                report.tight
                            );
                        }
                        entries.push(C5PowerEntry::from_report(&report));
                    }
                    Err(e) => return fail(e),
                }
            }
            if json {
                let mut doc = ReportDocument::new(format!("c5pow:{k}"));
                doc.c5_powers = entries;
                println!("{}", doc.to_json());
            }
            ExitCode::SUCCESS
        }
    }
}

fn run_conjecture_scan(common: ScanCommon, is_c1: bool) -> ExitCode {
    let source = match parse_source(&common.source) {
        Ok(s) => s,
        Err(e) => return fail(e),
    };
    let options = ScanOptions {
        jobs: effective_jobs(common.jobs),
        ..Default::default()
    };
    let mut sink = match &common.out {
        Some(path) => match fs::File::create(path) {
            Ok(f) => Some(std::io::BufWriter::new(f)),
            Err(e) => {
                return fail(Error::Parse {
                    line: None,
                    offset: None,
                    message: format!("cannot create {path}: {e}"),
                })
            }
        },
        None => None,
    };
    let mut records = Vec::new();
    let keep_records = common.json && common.out.is_none();
    let on_record = |record: &ricci::scan::ScanRecord| {
        let entry = ScanRecordEntry::from_record(record);
        if let Some(file) = sink.as_mut() {
            let line = serde_json::to_string(&entry).expect("record serializes");
            writeln!(file, "{line}").expect("record file writable");
        }
        if keep_records {
            records.push(entry);
        }
    };
    let summary = if is_c1 {
        scan_conjecture1(&source, &options, on_record)
    } else {
        scan_conjecture2(&source, &options, on_record)
    };
    let summary = match summary {
        Ok(s) => s,
        Err(e) => return fail(e),
    };
    if let Some(file) = sink.as_mut() {
        file.flush().expect("record file flushes");
    }

    if common.json {
        let mut doc = ReportDocument::new(common.source.clone());
        doc.scan_summary = Some(ScanSummaryEntry::from_summary(&summary));
        doc.scan_records = records;
        println!("{}", doc.to_json());
    } else {
        println!(
            "{} over {}: scanned={} satisfied={} candidates={} out_of_hypothesis={} filtered={} skipped={} parse_errors={} ({} ms)",
            summary.conjecture.id(),
            summary.source,
            summary.scanned,
            summary.satisfied,
            summary.candidates,
            summary.out_of_hypothesis,
            summary.filtered_out,
            summary.skipped_disconnected,
            summary.parse_errors,
            summary.elapsed_ms
        );
        if let Some(extremal) = &summary.extremal {
            println!("extremal: {} (n = {})", extremal.id, extremal.order);
        }
    }
    if summary.candidates > 0 {
        eprintln!(
            "{} candidate counterexample(s) found and reverified",
            summary.candidates
        );
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}
