mod output;
mod source;
mod verify;

use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand};
use serde_json::{json, Value};
use strata::catalog::{component_label, Catalog, Source};
use strata::classifier::{alpha_search, semigroup_search, Candidate, SearchConfig, Verdict};
use strata::invariants::slope;
use strata::scalar::{format_rational, parse_rational};
use strata::semigroup::{enumerate_symmetric, NumericalSemigroup};

use output::{fields, join, table, tuple, Format, Numbers, Report, SCHEMA_VERSION};
use source::{read_input, SourceArgs};
use verify::Suite;

#[derive(Parser, Debug)]
#[command(
    name = "strata",
    version,
    about = "Exact invariants of strata of holomorphic differentials"
)]
struct Cli {
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// Follow every exact rational with a decimal approximation marked `≈`.
    #[arg(long, global = true)]
    decimal: bool,
    /// Worker threads for searches and regressions.
    #[arg(long, global = true)]
    parallel: Option<usize>,
    /// Weight level the algebra closure is sized for, when above the requested levels.
    #[arg(long, global = true)]
    max_level: Option<i64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Characters, alpha-invariant, slope and weight multiplicities.
    Invariants {
        #[command(flatten)]
        source: SourceArgs,
        /// Weight levels, e.g. `1,2,3`.
        #[arg(long, value_delimiter = ',', default_value = "1,2")]
        m: Vec<i64>,
    },
    /// Dimensions of the weight filtration on m-log-canonical sections.
    Filtration {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long, default_value_t = 1)]
        m: i64,
    },
    /// Slope by both formulas.
    Slope {
        #[command(flatten)]
        source: SourceArgs,
    },
    /// Delta, gap sequence, conductor and Gorenstein test of a branch algebra.
    Algebra {
        #[arg(long, group = "algebra_source")]
        catalog: Option<String>,
        #[arg(long, group = "algebra_source")]
        input: Option<std::path::PathBuf>,
    },
    /// Threshold searches.
    #[command(subcommand)]
    Classify(Classify),
    /// Numerical semigroup records.
    Semigroups {
        #[arg(long, value_delimiter = ',', conflicts_with = "genus")]
        generators: Option<Vec<i64>>,
        #[arg(long, requires = "symmetric")]
        genus: Option<i64>,
        /// List the symmetric semigroups of `--genus`.
        #[arg(long)]
        symmetric: bool,
    },
    /// Shipped catalog.
    #[command(subcommand)]
    Catalog(CatalogCommand),
    /// Regression suites; exits nonzero on any mismatch.
    Verify {
        #[arg(long, value_enum, default_value = "full")]
        suite: Suite,
    },
}

#[derive(Subcommand, Debug)]
enum Classify {
    /// Signatures and models whose first character reaches the threshold.
    Alpha {
        #[arg(long)]
        genus: i64,
        #[arg(long, default_value = "3/8")]
        threshold: String,
        /// Also evaluate dangling-branch variants.
        #[arg(long)]
        dangling: bool,
        /// Include failing candidates.
        #[arg(long)]
        all: bool,
    },
    /// Symmetric non-hyperelliptic semigroups under the element-sum bound.
    Semigroups {
        #[arg(long)]
        genus: i64,
        #[arg(long, default_value = "3/8")]
        threshold: String,
    },
}

#[derive(Subcommand, Debug)]
enum CatalogCommand {
    List,
    Show {
        id: String,
        /// Same as `--format json`.
        #[arg(long)]
        json: bool,
    },
}

fn source_header(src: &Source) -> Vec<(&'static str, String)> {
    vec![
        ("source", src.id.clone()),
        ("signature", src.label()),
        ("genus", src.signature.genus().to_string()),
        ("model", src.model.label()),
    ]
}

fn invariants(src: &Source, levels: &[i64], num: Numbers) -> anyhow::Result<Report> {
    let record = src.record(levels)?;
    let mut value = serde_json::to_value(&record)?;
    num.annotate(&mut value, &["alpha", "slope"]);
    let mut pairs = source_header(src);
    pairs.extend([
        ("chi1_log", record.chi1_log.to_string()),
        ("chi2_log", record.chi2_log.to_string()),
        ("chi2", record.chi2.to_string()),
        ("alpha", num.show(&record.alpha)),
        ("slope", num.show(&record.slope)),
    ]);
    let mut text = fields(&pairs);
    for (m, entries) in &record.weights {
        let cells: Vec<String> = entries.iter().map(|[l, k]| format!("{l}^{k}")).collect();
        text.push_str(&format!("weights m={m}  {}\n", cells.join(" ")));
    }
    let row = vec![
        tuple(&record.signature),
        record.component_label.clone().unwrap_or_default(),
        record.model.clone(),
        record.chi1_log.to_string(),
        record.chi2_log.to_string(),
        record.chi2.to_string(),
        num.show(&record.alpha),
        num.show(&record.slope),
    ];
    Ok(Report {
        json: value,
        text,
        header: vec![
            "signature",
            "component_label",
            "model",
            "chi1_log",
            "chi2_log",
            "chi2",
            "alpha",
            "slope",
        ],
        rows: vec![row],
    })
}

fn filtration(src: &Source, m: i64) -> anyhow::Result<Report> {
    let dims = src.model.filtration_dims(&src.signature, m)?;
    let rows: Vec<Vec<String>> = dims
        .iter()
        .enumerate()
        .map(|(l, d)| vec![l.to_string(), d.to_string()])
        .collect();
    let mut text = fields(&source_header(src));
    text.push_str(&format!("level     {m}\n\n"));
    text.push_str(&table(&["lambda", "dim"], &rows));
    Ok(Report {
        json: json!({
            "source": src.id,
            "signature": src.signature.orders(),
            "component_label": src.component.as_ref().map(|_| src.label()),
            "model": src.model.label(),
            "level": m,
            "dims": dims,
        }),
        text,
        header: vec!["lambda", "dim"],
        rows,
    })
}

fn slope_report(src: &Source, num: Numbers) -> anyhow::Result<Report> {
    let c1 = src.spectrum(1)?.chi_log;
    let c2 = src.spectrum(2)?.chi_log;
    let s = slope(&c1, &c2, &src.signature)?;
    let (ratio, closed) = (format_rational(&s.ratio), format_rational(&s.closed));
    let mut value = json!({
        "source": src.id,
        "signature": src.signature.orders(),
        "model": src.model.label(),
        "chi1_log": c1.to_string().parse::<i64>()?,
        "chi2_log": c2.to_string().parse::<i64>()?,
        "slope": ratio,
        "slope_closed": closed,
        "agree": s.agree(),
    });
    num.annotate(&mut value, &["slope", "slope_closed"]);
    let mut pairs = source_header(src);
    pairs.extend([
        ("chi1_log", c1.to_string()),
        ("chi2_log", c2.to_string()),
        ("slope", num.show(&ratio)),
        ("slope_closed", num.show(&closed)),
        ("agree", s.agree().to_string()),
    ]);
    Ok(Report {
        json: value,
        text: fields(&pairs),
        header: vec![
            "signature",
            "model",
            "chi1_log",
            "chi2_log",
            "slope",
            "slope_closed",
            "agree",
        ],
        rows: vec![vec![
            tuple(src.signature.orders()),
            src.model.label(),
            c1.to_string(),
            c2.to_string(),
            num.show(&ratio),
            num.show(&closed),
            s.agree().to_string(),
        ]],
    })
}

fn algebra(
    catalog: &Catalog,
    id: Option<String>,
    input: Option<std::path::PathBuf>,
    level: i64,
) -> anyhow::Result<Report> {
    let (name, alg) = match (id, input) {
        (Some(id), _) => {
            let alg = catalog.algebra(&id, level)?;
            (catalog.get(&id)?.id.clone(), (*alg).clone())
        }
        (None, Some(path)) => (
            path.display().to_string(),
            read_input(&path)?.resolve()?.close(level)?,
        ),
        (None, None) => bail!("choose --catalog or --input"),
    };
    let report = alg.report()?;
    let text = fields(&[
        ("source", name),
        ("signature", tuple(alg.signature().orders())),
        ("delta", report.delta.to_string()),
        ("genus", report.genus.to_string()),
        (
            "gap_sequence",
            format!("[{}]", join(&report.gap_sequence, " ")),
        ),
        ("conductor", tuple(&report.conductor)),
        ("gorenstein", report.gorenstein.to_string()),
        ("graded_dims", join(&report.graded_dims, " ")),
        ("ambient_weights", tuple(&alg.ambient_weights())),
    ]);
    let row = vec![
        tuple(alg.signature().orders()),
        report.delta.to_string(),
        report.genus.to_string(),
        join(&report.gap_sequence, " "),
        join(&report.conductor, " "),
        report.gorenstein.to_string(),
        join(&report.graded_dims, " "),
    ];
    Ok(Report {
        json: serde_json::to_value(&report)?,
        text,
        header: vec![
            "signature",
            "delta",
            "genus",
            "gap_sequence",
            "conductor",
            "gorenstein",
            "graded_dims",
        ],
        rows: vec![row],
    })
}

const CANDIDATE_COLUMNS: [&str; 8] = [
    "signature",
    "component",
    "model",
    "chi1_log",
    "threshold",
    "verdict",
    "item",
    "dangling",
];

fn candidate_row(c: &Candidate, num: Numbers) -> Vec<String> {
    vec![
        tuple(&c.signature),
        c.component.clone().unwrap_or_default(),
        c.model.clone(),
        c.chi1_log.to_string(),
        num.show(&c.threshold_rhs),
        c.verdict.to_string(),
        c.item.clone().unwrap_or_default(),
        join(&c.dangling, " "),
    ]
}

fn classify_alpha(
    catalog: &Catalog,
    genus: i64,
    threshold: &str,
    dangling: bool,
    all: bool,
    num: Numbers,
) -> anyhow::Result<Report> {
    let mut config = SearchConfig::new(genus);
    config.threshold = parse_rational(threshold)?;
    config.dangling = dangling;
    let found = alpha_search(&config, catalog)?;
    let shown: Vec<&Candidate> = found
        .iter()
        .filter(|c| all || c.verdict != Verdict::Fail)
        .collect();
    let rows: Vec<Vec<String>> = shown.iter().map(|c| candidate_row(c, num)).collect();
    let mut text = format!(
        "genus {genus}, threshold {}\n\n",
        num.show(&format_rational(&config.threshold))
    );
    text.push_str(&table(&CANDIDATE_COLUMNS, &rows));
    let mut candidates: Vec<Value> = Vec::new();
    for c in &shown {
        let mut v = serde_json::to_value(c)?;
        num.annotate(&mut v, &["threshold_rhs"]);
        candidates.push(v);
    }
    Ok(Report {
        json: json!({
            "schema_version": SCHEMA_VERSION,
            "genus": genus,
            "threshold": format_rational(&config.threshold),
            "candidates": candidates,
        }),
        text,
        header: CANDIDATE_COLUMNS.to_vec(),
        rows,
    })
}

fn classify_semigroups(genus: i64, threshold: &str, num: Numbers) -> anyhow::Result<Report> {
    let threshold = parse_rational(threshold)?;
    let found = semigroup_search(genus, &threshold)?;
    let header = vec![
        "generators",
        "element_sum",
        "within_bound",
        "gap_sum",
        "required",
        "verdict",
    ];
    let rows: Vec<Vec<String>> = found
        .iter()
        .map(|c| {
            vec![
                format!("<{}>", join(&c.generators, ",")),
                c.element_sum.to_string(),
                c.within_bound.to_string(),
                c.gap_sum.to_string(),
                num.show(&c.required),
                c.verdict.to_string(),
            ]
        })
        .collect();
    let mut text = format!("genus {genus}, element-sum bound {}\n\n", genus * genus - 1);
    text.push_str(&table(&header, &rows));
    Ok(Report {
        json: json!({
            "schema_version": SCHEMA_VERSION,
            "genus": genus,
            "threshold": format_rational(&threshold),
            "candidates": found,
        }),
        text,
        header,
        rows,
    })
}

fn semigroups(generators: Option<Vec<i64>>, genus: Option<i64>) -> anyhow::Result<Report> {
    let list: Vec<NumericalSemigroup> = match (generators, genus) {
        (Some(gens), _) => vec![NumericalSemigroup::from_generators(&gens)?],
        (None, Some(g)) => enumerate_symmetric(g),
        (None, None) => bail!("give --generators or --genus with --symmetric"),
    };
    let records: Vec<_> = list.iter().map(NumericalSemigroup::record).collect();
    let header = vec![
        "generators",
        "gaps",
        "genus",
        "frobenius",
        "symmetric",
        "gap_sum",
    ];
    let rows: Vec<Vec<String>> = records
        .iter()
        .map(|r| {
            vec![
                format!("<{}>", join(&r.generators, ",")),
                join(&r.gaps, " "),
                r.genus.to_string(),
                r.frobenius.to_string(),
                r.symmetric.to_string(),
                r.gap_sum.to_string(),
            ]
        })
        .collect();
    Ok(Report {
        json: serde_json::to_value(&records)?,
        text: table(&header, &rows),
        header,
        rows,
    })
}

fn catalog_list(catalog: &Catalog) -> anyhow::Result<Report> {
    let header = vec!["id", "label", "genus", "item", "backing"];
    let mut rows = Vec::new();
    let mut entries = Vec::new();
    for e in catalog.entries() {
        let sig = e.parsed_signature()?;
        let backing = if e.model.is_some() {
            "model"
        } else {
            "algebra"
        };
        rows.push(vec![
            e.id.clone(),
            e.label(),
            sig.genus().to_string(),
            e.item.clone().unwrap_or_default(),
            backing.into(),
        ]);
        entries.push(json!({
            "id": e.id,
            "label": e.label(),
            "signature": e.signature,
            "component": e.component,
            "genus": sig.genus(),
            "item": e.item,
        }));
    }
    let exclusions: Vec<String> = catalog
        .exclusions()
        .iter()
        .map(|x| component_label(&x.signature, x.component.as_deref()))
        .collect();
    let mut text = table(&header, &rows);
    text.push_str(&format!("\nexcluded: {}\n", exclusions.join(" ")));
    Ok(Report {
        json: json!({ "schema_version": SCHEMA_VERSION, "entries": entries, "exclusions": catalog.exclusions() }),
        text,
        header,
        rows,
    })
}

fn catalog_show(catalog: &Catalog, id: &str) -> anyhow::Result<Report> {
    let e = catalog.get(id)?;
    let mut pairs = vec![
        ("id", e.id.clone()),
        ("label", e.label()),
        ("signature", tuple(&e.signature)),
    ];
    if !e.aliases.is_empty() {
        pairs.push(("aliases", e.aliases.join(" ")));
    }
    if let Some(item) = &e.item {
        pairs.push(("item", item.clone()));
    }
    for g in &e.generators {
        let terms: Vec<String> = g
            .monomials
            .iter()
            .map(|m| format!("{}*t{}^{}", m.coeff, m.branch, m.exp))
            .collect();
        pairs.push(("generator", format!("{} = ({})", g.name, terms.join(", "))));
    }
    if let Some(x) = &e.expected {
        pairs.extend([
            ("gap_sequence", format!("[{}]", join(&x.gap_sequence, " "))),
            ("delta", x.delta.to_string()),
            ("chi1_log", x.chi1_log.to_string()),
            ("chi2_log", x.chi2_log.to_string()),
            ("alpha", x.alpha.clone()),
            ("slope", x.slope.clone()),
        ]);
        if let Some(s) = &x.spin {
            pairs.push(("spin", s.clone()));
        }
    }
    if let Some(note) = &e.note {
        pairs.push(("note", note.clone()));
    }
    let row = vec![
        e.id.clone(),
        e.label(),
        tuple(&e.signature),
        e.item.clone().unwrap_or_default(),
    ];
    Ok(Report {
        json: serde_json::to_value(e)?,
        text: fields(&pairs),
        header: vec!["id", "label", "signature", "item"],
        rows: vec![row],
    })
}

fn verify_report(suite: Suite, catalog: &Catalog) -> (Report, bool) {
    let checks = verify::run_suite(suite, catalog);
    let ok = checks.iter().all(|c| c.ok);
    let rows: Vec<Vec<String>> = checks
        .iter()
        .map(|c| {
            vec![
                c.name.to_string(),
                if c.ok { "ok" } else { "FAIL" }.to_string(),
                c.detail.clone(),
            ]
        })
        .collect();
    let mut text = table(&["check", "status", "detail"], &rows);
    text.push_str(if ok {
        "all checks passed\n"
    } else {
        "some checks FAILED\n"
    });
    let report = Report {
        json: json!({ "schema_version": SCHEMA_VERSION, "ok": ok, "checks": checks }),
        text,
        header: vec!["check", "status", "detail"],
        rows,
    };
    (report, ok)
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    let num = Numbers {
        decimal: cli.decimal,
    };
    let catalog = Catalog::builtin();
    let level = |needed: i64| cli.max_level.unwrap_or(needed).max(needed).max(2);
    let mut format = cli.format;
    let mut ok = true;
    let report = match cli.command {
        Command::Invariants { source, m } => {
            if m.iter().any(|&x| x < 1) {
                bail!("levels must be positive, got {m:?}");
            }
            let top = m.iter().copied().max().unwrap_or(2);
            invariants(&source.resolve(catalog, level(top))?, &m, num)?
        }
        Command::Filtration { source, m } => {
            if m < 1 {
                bail!("level must be positive, got {m}");
            }
            filtration(&source.resolve(catalog, level(m))?, m)?
        }
        Command::Slope { source } => slope_report(&source.resolve(catalog, level(2))?, num)?,
        Command::Algebra { catalog: id, input } => algebra(catalog, id, input, level(2))?,
        Command::Classify(Classify::Alpha {
            genus,
            threshold,
            dangling,
            all,
        }) => classify_alpha(catalog, genus, &threshold, dangling, all, num)?,
        Command::Classify(Classify::Semigroups { genus, threshold }) => {
            classify_semigroups(genus, &threshold, num)?
        }
        Command::Semigroups {
            generators, genus, ..
        } => semigroups(generators, genus)?,
        Command::Catalog(CatalogCommand::List) => catalog_list(catalog)?,
        Command::Catalog(CatalogCommand::Show { id, json }) => {
            if json {
                format = Format::Json;
            }
            catalog_show(catalog, &id)?
        }
        Command::Verify { suite } => {
            let (report, passed) = verify_report(suite, catalog);
            ok = passed;
            report
        }
    };
    print!("{}", report.render(format)?);
    Ok(ok)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().filter_or("LOG_LEVEL", "off")).init();
    let cli = Cli::parse();
    log::debug!("{cli:?}");
    if let Some(threads) = cli.parallel {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli).context("strata") {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {:#}", e.root_cause());
            ExitCode::from(2)
        }
    }
}
