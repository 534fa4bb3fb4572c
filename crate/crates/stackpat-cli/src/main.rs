//! Command-line front end for the stackpat library.
//!
//! Exit codes: 0 success, 1 domain or precondition error, 2 parse error,
//! 3 verification failure.

mod error;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use stackpat::bijections::{
    alpha_strip, av213_to_dyck, av321_to_rgfnr12321, beta_motzkin, delta, delta_inverse, dyck_to_av213, eta,
    eta_inverse, phi_add_max, rgf1221_to_dyck, rgfnr12321_to_av321, schroder_to_sort123, sort123_to_schroder,
    LabeledMotzkinPath, StoreMode,
};
use stackpat::enumeration::golden::{golden_table_ids, parse_golden, verify_row, GoldenReport};
use stackpat::enumeration::{
    count_sortable_with, sequence_value, verify_golden, CountOptions, GoldenOptions, Method, SequenceId,
};
use stackpat::machine::{image_set, is_sortable, preimages, trace, MachineSpec, StackOp};
use stackpat::oracles::{classify, Oracle, OracleError};
use stackpat::paths::{format_steps, parse_steps};
use stackpat::patterns::parse_pattern_list;
use stackpat::words::{complement, format_letters, inverse, is_permutation, modify, reverse, unmodify, Domain, Word};

use crate::error::CliError;

#[derive(Parser, Debug)]
#[command(name = "stackpat", version, about = "Pattern-avoiding stack sorting machines")]
struct Cli {
    /// Emit JSON instead of plain text.
    #[arg(long, global = true)]
    json: bool,
    /// Override the brute-force length guard.
    #[arg(long = "max-n", global = true, value_name = "N")]
    max_n: Option<usize>,
    /// Worker threads for exhaustive searches.
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct MachineArgs {
    /// Pattern set for the first stack, e.g. `132` or `123,312`.
    #[arg(long)]
    sigma: String,
    /// Input domain: perm, cay, rgf, asc or modasc.
    #[arg(long, default_value = "perm", value_parser = parse_domain)]
    domain: Domain,
}

#[derive(Args, Debug, Clone)]
struct MethodArgs {
    /// brute, oracle or tree. The oracle falls back to brute force when no
    /// closed form is known.
    #[arg(long, default_value = "oracle", value_parser = parse_method)]
    method: Method,
    /// Fail instead of falling back to brute force.
    #[arg(long)]
    strict: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the machine and print the final output.
    Sort {
        #[command(flatten)]
        machine: MachineArgs,
        word: String,
    },
    /// Print every stack operation of a run.
    Trace {
        #[command(flatten)]
        machine: MachineArgs,
        word: String,
    },
    /// Decide whether a word is sorted by the machine.
    Sortable {
        #[command(flatten)]
        machine: MachineArgs,
        #[command(flatten)]
        method: MethodArgs,
        word: String,
    },
    /// Decide whether the sortable words form a class.
    Classify {
        #[command(flatten)]
        machine: MachineArgs,
    },
    /// Count the sortable words of length n.
    Enumerate {
        #[command(flatten)]
        machine: MachineArgs,
        #[command(flatten)]
        method: MethodArgs,
        #[arg(long)]
        n: usize,
        /// Print the counts for every length 1..=n.
        #[arg(long)]
        series: bool,
    },
    /// Evaluate a named integer sequence.
    Sequence {
        /// Sequence id, e.g. CATALAN or BALLOT.
        id: String,
        params: Vec<u64>,
    },
    /// Apply one of the bijections.
    Bijection {
        /// Map name; `stackpat bijection list` shows them all.
        name: String,
        #[arg(default_value = "")]
        input: String,
    },
    /// Count the preimages of a word under the pattern stack.
    Fertility {
        #[command(flatten)]
        machine: MachineArgs,
        word: String,
        /// Also print the preimages.
        #[arg(long)]
        list: bool,
    },
    /// Outputs of the pattern stack of length n that the second stack sorts.
    SortedSet {
        #[command(flatten)]
        machine: MachineArgs,
        #[arg(long)]
        n: usize,
        /// Also print the words.
        #[arg(long)]
        list: bool,
    },
    /// Recompute a reference table, or all of them.
    Verify {
        #[arg(default_value = "all")]
        table: String,
        /// Largest length recomputed.
        #[arg(long, default_value_t = 8)]
        n: usize,
        /// Skip the oracle, tree and formula cross-checks.
        #[arg(long)]
        brute_only: bool,
        /// Read the rows from a file in the `table/key: c1,c2,...@start`
        /// format instead of the built-in tables.
        #[arg(long, value_name = "PATH")]
        file: Option<PathBuf>,
    },
}

fn parse_domain(s: &str) -> Result<Domain, String> {
    s.parse().map_err(|e| format!("{e}"))
}

fn parse_method(s: &str) -> Result<Method, String> {
    s.parse().map_err(|e| format!("{e}"))
}

/// What a command produced: plain text and its JSON counterpart.
struct Output {
    text: String,
    json: Value,
    exit: ExitCode,
}

impl Output {
    fn ok(text: impl Into<String>, json: Value) -> Self {
        Output { text: text.into(), json, exit: ExitCode::SUCCESS }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    match run(&cli) {
        Ok(out) => {
            let text = if cli.json { out.json.to_string() } else { out.text };
            // a closed pipe (e.g. `| head`) is not an error
            if !text.is_empty() {
                let _ = writeln!(std::io::stdout().lock(), "{text}");
            }
            out.exit
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn spec_of(m: &MachineArgs) -> Result<MachineSpec, CliError> {
    let patterns = parse_pattern_list(&m.sigma)?;
    Ok(MachineSpec::new(&patterns, m.domain)?)
}

fn word_in(text: &str, spec: &MachineSpec) -> Result<Vec<u32>, CliError> {
    let w = parse_word(text)?;
    spec.check_member(&w)?;
    Ok(w)
}

fn parse_word(text: &str) -> Result<Vec<u32>, CliError> {
    Ok(text.parse::<Word>()?.into_vec())
}

fn fallback_notice(spec: &MachineSpec) {
    eprintln!(
        "notice: no closed form for sigma = {} on {}; using brute force",
        spec.sigma_labels().join(","),
        spec.domain()
    );
}

fn run(cli: &Cli) -> Result<Output, CliError> {
    match &cli.command {
        Command::Sort { machine, word } => {
            let spec = spec_of(machine)?;
            let t = trace(&word_in(word, &spec)?, &spec);
            let json = json!({
                "input": t.input, "first_output": t.first_output,
                "final_output": t.final_output, "sortable": t.sortable,
            });
            Ok(Output::ok(format_letters(&t.final_output), json))
        }
        Command::Trace { machine, word } => {
            let spec = spec_of(machine)?;
            let t = trace(&word_in(word, &spec)?, &spec);
            let mut lines: Vec<String> = t
                .steps
                .iter()
                .map(|s| {
                    let op = match s.op {
                        StackOp::Push => "push",
                        StackOp::Pop => "pop",
                    };
                    format!("stack{} {op} {}", s.stack, s.value)
                })
                .collect();
            lines.push(format!("first output: {}", format_letters(&t.first_output)));
            lines.push(format!("final output: {}", format_letters(&t.final_output)));
            lines.push(format!("sortable: {}", t.sortable));
            Ok(Output::ok(lines.join("\n"), serde_json::to_value(&t)?))
        }
        Command::Sortable { machine, method, word } => {
            let spec = spec_of(machine)?;
            let w = word_in(word, &spec)?;
            let (answer, used) = match method.method {
                Method::Brute => (is_sortable(&w, &spec), Method::Brute),
                Method::Oracle => match Oracle::for_spec(&spec) {
                    Ok(o) => (o.is_sortable(&w), Method::Oracle),
                    Err(OracleError::Fallback { .. }) if !method.strict => {
                        fallback_notice(&spec);
                        (is_sortable(&w, &spec), Method::Brute)
                    }
                    Err(e) => return Err(e.into()),
                },
                Method::Tree => {
                    return Err(CliError::Domain("the tree method only counts; use brute or oracle".into()))
                }
            };
            let json = json!({ "word": w, "sigma": spec.sigma_labels(), "domain": spec.domain(),
                "sortable": answer, "method": used });
            Ok(Output::ok(answer.to_string(), json))
        }
        Command::Classify { machine } => {
            let spec = spec_of(machine)?;
            let [sigma] = spec.sigma() else {
                return Err(CliError::Domain("classify takes a single pattern".into()));
            };
            let c = classify(sigma, spec.domain())?;
            let basis: Option<Vec<String>> = c.basis.as_ref().map(|b| b.iter().map(|p| p.to_string()).collect());
            let mut text = vec![if c.is_class { "class" } else { "non-class" }.to_string()];
            if let Some(b) = &basis {
                text.push(format!("basis: {}", b.join(", ")));
            }
            if let Some(w) = &c.witness {
                text.push(format!(
                    "witness: {} is sortable, its pattern {} is not",
                    format_letters(&w.word),
                    format_letters(&w.pattern)
                ));
            }
            let json = json!({ "sigma": format_letters(sigma), "domain": spec.domain(), "is_class": c.is_class,
                "basis": basis, "witness": c.witness });
            Ok(Output::ok(text.join("\n"), json))
        }
        Command::Enumerate { machine, method, n, series } => {
            let spec = spec_of(machine)?;
            let opts = CountOptions { guard: cli.max_n, strict: method.strict };
            let lengths: Vec<usize> = if *series { (1..=*n).collect() } else { vec![*n] };
            let mut counts = Vec::with_capacity(lengths.len());
            let mut used = method.method;
            let mut fell_back = false;
            for &k in &lengths {
                let o = count_sortable_with(&spec, k, method.method, opts)?;
                if o.fell_back && !fell_back {
                    fallback_notice(&spec);
                }
                fell_back |= o.fell_back;
                used = o.method;
                counts.push(o.count.to_string());
            }
            let json = if *series {
                json!({ "sigma": spec.sigma_labels(), "domain": spec.domain(), "from": 1, "counts": counts,
                    "method": used, "fell_back": fell_back })
            } else {
                json!({ "sigma": spec.sigma_labels(), "domain": spec.domain(), "n": n, "count": counts[0],
                    "method": used, "fell_back": fell_back })
            };
            Ok(Output::ok(counts.join(","), json))
        }
        Command::Sequence { id, params } => {
            let sid: SequenceId = id.parse()?;
            let v = sequence_value(sid, params)?;
            let json = json!({ "id": sid.name(), "params": params, "value": v });
            Ok(Output::ok(v.to_string(), json))
        }
        Command::Bijection { name, input } => {
            let (text, kind) = apply_bijection(name, input)?;
            let json = json!({ "map": name, "input": input.trim(), "output": text, "kind": kind });
            Ok(Output::ok(text, json))
        }
        Command::Fertility { machine, word, list } => {
            let spec = spec_of(machine)?;
            let w = word_in(word, &spec)?;
            let pre = preimages(&w, &spec, cli.max_n)?;
            let mut text = pre.len().to_string();
            if *list {
                for p in &pre {
                    text.push('\n');
                    text.push_str(&format_letters(p));
                }
            }
            let json = json!({ "word": w, "sigma": spec.sigma_labels(), "fertility": pre.len(),
                "preimages": pre.iter().map(|p| format_letters(p)).collect::<Vec<_>>() });
            Ok(Output::ok(text, json))
        }
        Command::SortedSet { machine, n, list } => {
            let spec = spec_of(machine)?;
            let set = image_set(&spec, *n, true, cli.max_n)?;
            let words: Vec<String> = set.iter().map(|w| format_letters(w)).collect();
            let mut text = set.len().to_string();
            if *list {
                for w in &words {
                    text.push('\n');
                    text.push_str(w);
                }
            }
            let json = json!({ "sigma": spec.sigma_labels(), "domain": spec.domain(), "n": n,
                "size": set.len(), "words": words });
            Ok(Output::ok(text, json))
        }
        Command::Verify { table, n, brute_only, file } => {
            let opts = GoldenOptions { max_n: *n, guard: cli.max_n, cross_check: !brute_only };
            let reports = match file {
                Some(path) => verify_file(path, table, &opts)?,
                None => {
                    let tables: Vec<String> = if table == "all" {
                        golden_table_ids().into_iter().map(String::from).collect()
                    } else {
                        vec![table.clone()]
                    };
                    tables.iter().map(|t| verify_golden(t, &opts)).collect::<Result<Vec<_>, _>>()?
                }
            };
            let pass = reports.iter().all(|r| r.pass);
            let mut out = Output::ok(verify_text(&reports), serde_json::to_value(&reports)?);
            if !pass {
                out.exit = ExitCode::from(3);
            }
            Ok(out)
        }
    }
}

/// Verifies the rows of a user table file, grouped by table id.
fn verify_file(path: &PathBuf, table: &str, opts: &GoldenOptions) -> Result<Vec<GoldenReport>, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Domain(format!("{}: {e}", path.display())))?;
    let rows = parse_golden(&text)?;
    let mut reports: Vec<GoldenReport> = Vec::new();
    for row in rows.iter().filter(|r| table == "all" || r.table == table) {
        let report = verify_row(row, opts)?;
        match reports.iter_mut().find(|g| g.table == row.table) {
            Some(g) => {
                g.pass &= report.pass;
                g.rows.push(report);
            }
            None => reports.push(GoldenReport {
                table: row.table.clone(),
                max_n: opts.max_n,
                pass: report.pass,
                rows: vec![report],
            }),
        }
    }
    if reports.is_empty() {
        return Err(CliError::Domain(format!("no rows for table `{table}` in {}", path.display())));
    }
    Ok(reports)
}

fn verify_text(reports: &[GoldenReport]) -> String {
    let mut lines = Vec::new();
    let (mut rows, mut failed) = (0, 0);
    for r in reports {
        for row in &r.rows {
            rows += 1;
            let status = if row.pass { "PASS" } else { "FAIL" };
            let mut line =
                format!("{status} {}/{} n<={} [{}]", r.table, row.key, row.checked_up_to, row.methods.join(","));
            if let Some(d) = &row.first_divergence {
                failed += 1;
                line.push_str(&format!(
                    " diverges at n={} via {}: expected {}, got {}",
                    d.n, d.method, d.expected, d.computed
                ));
            }
            lines.push(line);
        }
    }
    lines.push(format!("{} of {rows} rows pass", rows - failed));
    lines.join("\n")
}

const BIJECTIONS: &[(&str, &str)] = &[
    ("eta", "132-sortable permutation -> RGF avoiding 12231"),
    ("eta-inverse", "RGF avoiding 12231 -> 132-sortable permutation"),
    ("delta", "RGF avoiding 12231 -> RGF avoiding 12321"),
    ("delta-inverse", "RGF avoiding 12321 -> RGF avoiding 12231"),
    ("psi", "RGF avoiding 1221 -> Dyck path"),
    ("beta-stack", "labeled Motzkin path -> RGF avoiding 12323"),
    ("beta-queue", "labeled Motzkin path -> RGF avoiding 12332"),
    ("pi", "non-returning RGF avoiding 12321 -> permutation avoiding 321"),
    ("pi-inverse", "permutation avoiding 321 -> non-returning RGF avoiding 12321"),
    ("alpha-strip", "RGF -> RGF with repeated ltr-maxima stripped"),
    ("phi", "descent-starting 123-sortable permutation -> one longer"),
    ("schroder", "123-sortable permutation -> Schroder path"),
    ("schroder-inverse", "Schroder path -> 123-sortable permutation"),
    ("dyck-to-av213", "Dyck path -> permutation avoiding 213"),
    ("av213-to-dyck", "permutation avoiding 213 -> Dyck path"),
    ("reverse", "word -> its reversal"),
    ("complement", "word -> its complement"),
    ("inverse", "permutation -> its inverse"),
    ("modify", "ascent sequence -> modified ascent sequence"),
    ("unmodify", "modified ascent sequence -> ascent sequence"),
];

/// Applies a named map; returns the formatted output and its kind.
fn apply_bijection(name: &str, input: &str) -> Result<(String, &'static str), CliError> {
    let word = || parse_word(input);
    let path = || parse_steps(input).map_err(CliError::from);
    let letters = |w: Vec<u32>| (format_letters(&w), "word");
    let steps = |p: Vec<stackpat::paths::Step>| (format_steps(&p), "path");
    Ok(match name {
        "list" => {
            let lines: Vec<String> = BIJECTIONS.iter().map(|(n, d)| format!("{n:<17} {d}")).collect();
            (lines.join("\n"), "list")
        }
        "eta" => {
            let pi = word()?;
            let spec = MachineSpec::single(&[1, 3, 2], Domain::Perm)?;
            if !is_permutation(&pi) || !is_sortable(&pi, &spec) {
                return Err(CliError::Domain(format!("{} is not a 132-sortable permutation", format_letters(&pi))));
            }
            letters(eta(&pi))
        }
        "eta-inverse" => letters(eta_inverse(&word()?)?),
        "delta" => letters(delta(&word()?)?),
        "delta-inverse" => letters(delta_inverse(&word()?)?),
        "psi" | "rgf1221-to-dyck" => steps(rgf1221_to_dyck(&word()?)?),
        "beta-stack" | "beta-queue" => {
            let p: LabeledMotzkinPath = input.parse().map_err(|e| CliError::Parse(format!("{e}")))?;
            let mode = if name == "beta-stack" { StoreMode::Stack } else { StoreMode::Queue };
            letters(beta_motzkin(&p, mode)?)
        }
        "pi" | "rgfnr12321-to-av321" => letters(rgfnr12321_to_av321(&word()?)?),
        "pi-inverse" | "av321-to-rgfnr12321" => letters(av321_to_rgfnr12321(&word()?)?),
        "alpha-strip" => letters(alpha_strip(&word()?)),
        "phi" => letters(phi_add_max(&word()?)?),
        "schroder" => steps(sort123_to_schroder(&word()?)?),
        "schroder-inverse" => letters(schroder_to_sort123(&path()?)?),
        "dyck-to-av213" => letters(dyck_to_av213(&path()?)?),
        "av213-to-dyck" => steps(av213_to_dyck(&word()?)?),
        "reverse" => letters(reverse(&word()?)),
        "complement" => letters(complement(&word()?)),
        "inverse" => letters(inverse(&word()?)?),
        "modify" => letters(modify(&word()?)?),
        "unmodify" => letters(unmodify(&word()?)?),
        other => return Err(CliError::Parse(format!("unknown bijection `{other}`; try `bijection list`"))),
    })
}
