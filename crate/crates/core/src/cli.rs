//! Command dispatch for the `whiteman` binary.
//!
//! [`run`] is pure apart from the optional `--out` file: it returns the text
//! to emit and the exit status (0 ok, 1 verification failure, 2 invalid input).

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;

use serde::Serialize;

use crate::adic::{self, Verdict};
use crate::circulant::{self, DetReport};
use crate::error::Error;
use crate::report::{Envelope, VERSION};
use crate::spectra::{self, Branch};
use crate::{Instance, TABLE_LOWER_BOUND, TABLE_PAIRS, TABLE_PHI2};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Validate,
    Generate,
    Analyze,
    Spectrum,
    Det,
    Table,
    Raa,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
    Raw,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub p: Option<u64>,
    pub q: Option<u64>,
    pub g_override: Option<u64>,
    pub strict: bool,
    pub output_format: OutputFormat,
    pub output_path: Option<PathBuf>,
    /// Custom pair list for `table`.
    pub pairs: Option<Vec<(u64, u64)>>,
    /// Prefix length for `raa`; defaults to `2N + 2`.
    pub raa_len: Option<usize>,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig {
            command,
            p: None,
            q: None,
            g_override: None,
            strict: true,
            output_format: if command == Command::Table {
                OutputFormat::Csv
            } else {
                OutputFormat::Json
            },
            output_path: None,
            pairs: None,
            raa_len: None,
        }
    }

    pub fn with_pq(mut self, p: u64, q: u64) -> Self {
        self.p = Some(p);
        self.q = Some(q);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub status: i32,
    /// Text for stdout (or the `--out` file).
    pub output: String,
    /// Diagnostics for stderr.
    pub message: Option<String>,
}

impl Outcome {
    fn emit(output: String, ok: bool) -> Self {
        Outcome {
            status: if ok { EXIT_OK } else { EXIT_VERIFY },
            output,
            message: (!ok).then(|| "verification failed".to_string()),
        }
    }

    fn invalid(code: &str, msg: impl std::fmt::Display) -> Self {
        Outcome {
            status: EXIT_INVALID,
            output: String::new(),
            message: Some(format!("error[{code}]: {msg}")),
        }
    }
}

/// Parse `"5:3,5:7"`.
pub fn parse_pairs(s: &str) -> Option<Vec<(u64, u64)>> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            let (a, b) = t.trim().split_once(':')?;
            Some((a.trim().parse().ok()?, b.trim().parse().ok()?))
        })
        .collect()
}

pub fn run(config: &RunConfig) -> Outcome {
    let format_ok = match config.output_format {
        OutputFormat::Json => true,
        OutputFormat::Csv => config.command == Command::Table,
        OutputFormat::Raw => config.command == Command::Generate,
    };
    if !format_ok {
        return Outcome::invalid(
            "bad-format",
            "csv is only valid for table, raw only for generate",
        );
    }
    let outcome = if config.command == Command::Table {
        run_table(config)
    } else {
        match (config.p, config.q) {
            (Some(p), Some(q)) => match Instance::new(p, q, config.g_override, config.strict) {
                Ok(inst) => dispatch(config, &inst),
                Err(e) => Outcome::invalid(e.code(), e),
            },
            _ => Outcome::invalid("missing-args", "--p and --q are required"),
        }
    };
    if let Some(path) = &config.output_path {
        if outcome.status != EXIT_INVALID {
            if let Err(e) = std::fs::write(path, &outcome.output) {
                return Outcome::invalid("io", format!("{}: {e}", path.display()));
            }
            return Outcome {
                output: String::new(),
                ..outcome
            };
        }
    }
    outcome
}

fn dispatch(config: &RunConfig, inst: &Instance) -> Outcome {
    match config.command {
        Command::Validate => validate(inst),
        Command::Generate => generate(config, inst),
        Command::Analyze => analyze(inst),
        Command::Spectrum => spectrum(inst),
        Command::Det => det(inst),
        Command::Raa => raa(config, inst),
        Command::Table => unreachable!("handled by run_table"),
    }
}

fn validate(inst: &Instance) -> Outcome {
    #[derive(Serialize)]
    struct Valid {
        valid: bool,
        lower_bound: u64,
    }
    let report = Valid {
        valid: true,
        lower_bound: inst.params().lower_bound(),
    };
    let verdicts: BTreeMap<&str, Verdict> = BTreeMap::new();
    Outcome::emit(
        Envelope::new(inst.params(), report, verdicts).to_json(),
        true,
    )
}

fn generate(config: &RunConfig, inst: &Instance) -> Outcome {
    let seq = &inst.sequence;
    if config.output_format == OutputFormat::Raw {
        return Outcome::emit(format!("{}\n", seq.to_bit_string()), true);
    }
    #[derive(Serialize)]
    struct Generated {
        bits: String,
        period: usize,
        weight: usize,
        linear_complexity: usize,
    }
    let report = Generated {
        bits: seq.to_bit_string(),
        period: seq.period(),
        weight: seq.weight(),
        linear_complexity: seq.linear_complexity(),
    };
    let balanced = report.weight == (report.period - 1) / 2;
    let verdicts = BTreeMap::from([("balanced", Verdict::from_bool(balanced))]);
    Outcome::emit(
        Envelope::new(inst.params(), report, verdicts).to_json(),
        balanced,
    )
}

pub fn analyze(inst: &Instance) -> Outcome {
    let report = adic::two_adic_complexity(&inst.sequence);
    let verdicts = BTreeMap::from([
        ("theorem1", adic::check_theorem1(&report)),
        ("theorem2", adic::check_theorem2(&report)),
        (
            "meets_lower_bound",
            report
                .meets_lower_bound
                .map_or(Verdict::NotApplicable, Verdict::from_bool),
        ),
    ]);
    let ok = !verdicts.values().any(|v| v.is_failure());
    Outcome::emit(Envelope::new(inst.params(), report, verdicts).to_json(), ok)
}

pub fn spectrum(inst: &Instance) -> Outcome {
    let report = spectra::spectrum_report(&inst.partition, &inst.sequence);
    let quadratic = match &report.quadratic {
        Some(qc) => Verdict::from_bool(qc.branch != Branch::None),
        None => Verdict::NotApplicable,
    };
    let verdicts = BTreeMap::from([
        (
            "period_identities",
            Verdict::from_bool(report.identities.holds),
        ),
        (
            "class_values",
            Verdict::from_bool(report.max_residual < report.tolerance),
        ),
        ("quadratic_combination", quadratic),
    ]);
    let ok = !verdicts.values().any(|v| v.is_failure());
    Outcome::emit(Envelope::new(inst.params(), report, verdicts).to_json(), ok)
}

/// How the exact determinant is obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DetRoute {
    /// Gaussian elimination modulo each prime (`det`).
    Elimination,
    /// Polynomial resultant modulo each prime (`table`).
    Resultant,
}

/// Exact determinant, closed-form match and the gcd divisibility check.
pub fn det_verdicts(
    inst: &Instance,
    route: DetRoute,
) -> Result<(DetReport, BTreeMap<&'static str, Verdict>), Error> {
    let exact = match route {
        DetRoute::Elimination => {
            circulant::det_exact_with_ceiling(&inst.sequence, circulant::PRIME_CEILING)?
        }
        DetRoute::Resultant => {
            circulant::det_exact_resultant(&inst.sequence, circulant::PRIME_CEILING)
        }
    };
    let divisibility = adic::gcd_divisibility_check(&inst.sequence, &exact.value);
    let (report, matched) = match spectra::det_closed_form(inst.params()) {
        Ok(cf) => {
            let rep = circulant::match_exact(exact, &cf);
            let v = Verdict::from_bool(rep.matched_sign != Branch::None);
            (rep, v)
        }
        Err(_) => {
            let rep = DetReport {
                det_exact: exact.value,
                det_plus: None,
                det_minus: None,
                matched_sign: Branch::None,
                hadamard_bound: exact.hadamard_bound,
                primes_used: exact.primes.len(),
            };
            (rep, Verdict::NotApplicable)
        }
    };
    let verdicts = BTreeMap::from([("closed_form", matched), ("gcd_divisibility", divisibility)]);
    Ok((report, verdicts))
}

pub fn det(inst: &Instance) -> Outcome {
    match det_verdicts(inst, DetRoute::Elimination) {
        Ok((report, verdicts)) => {
            let ok = !verdicts.values().any(|v| v.is_failure());
            Outcome::emit(Envelope::new(inst.params(), report, verdicts).to_json(), ok)
        }
        Err(e) => Outcome::invalid(e.code(), e),
    }
}

fn raa(config: &RunConfig, inst: &Instance) -> Outcome {
    let seq = &inst.sequence;
    let len = config.raa_len.unwrap_or(2 * seq.period() + 2);
    let got = match adic::raa_on_sequence(seq, len) {
        Ok(f) => f,
        Err(e) => return Outcome::invalid(e.code(), e),
    };
    let expected = adic::expected_fraction(seq);
    let phi2 = adic::two_adic_complexity(seq).phi2;
    #[derive(Serialize)]
    struct RaaReport {
        prefix_len: usize,
        fraction: adic::AdicFraction,
        expected: adic::AdicFraction,
        size_bits: u64,
        phi2: u64,
    }
    let verdicts = BTreeMap::from([("recovered", Verdict::from_bool(got == expected))]);
    let report = RaaReport {
        prefix_len: len,
        size_bits: got.size_bits(),
        fraction: got,
        expected,
        phi2,
    };
    let ok = !verdicts.values().any(|v| v.is_failure());
    Outcome::emit(Envelope::new(inst.params(), report, verdicts).to_json(), ok)
}

#[derive(Debug, Clone, Serialize)]
pub struct TableRow {
    pub p: u64,
    pub q: u64,
    pub g: u64,
    pub phi2: u64,
    pub lower_bound: u64,
    pub maximal: bool,
    pub matched_sign: Branch,
    /// Published value for this pair, when it is one of the built-in rows.
    pub published_phi2: Option<u64>,
    pub verdicts: BTreeMap<&'static str, Verdict>,
}

impl TableRow {
    pub fn ok(&self) -> bool {
        !self.verdicts.values().any(|v| v.is_failure())
    }
}

/// One row: 2-adic complexity, bound, and the determinant match. The
/// determinant comes from the resultant route so the full table stays fast.
pub fn table_row(p: u64, q: u64, g: Option<u64>, strict: bool) -> crate::Result<TableRow> {
    let inst = Instance::new(p, q, g, strict)?;
    let rep = adic::two_adic_complexity(&inst.sequence);
    let (det_report, mut verdicts) = det_verdicts(&inst, DetRoute::Resultant)?;
    verdicts.insert("theorem1", adic::check_theorem1(&rep));
    verdicts.insert("theorem2", adic::check_theorem2(&rep));
    let published = TABLE_PAIRS
        .iter()
        .position(|&pair| pair == (p, q))
        .map(|i| (TABLE_PHI2[i], TABLE_LOWER_BOUND[i]));
    if let Some((phi2, lb)) = published {
        verdicts.insert(
            "published",
            Verdict::from_bool(phi2 == rep.phi2 && lb == inst.params().lower_bound()),
        );
    }
    Ok(TableRow {
        p,
        q,
        g: inst.params().g,
        phi2: rep.phi2,
        lower_bound: inst.params().lower_bound(),
        maximal: rep.is_maximal,
        matched_sign: det_report.matched_sign,
        published_phi2: published.map(|(v, _)| v),
        verdicts,
    })
}

pub const CSV_HEADER: &str = "p,q,phi2,lower_bound,maximal,matched_sign";

pub fn rows_to_csv(rows: &[TableRow]) -> String {
    let mut out = String::new();
    writeln!(out, "{CSV_HEADER}").unwrap();
    for r in rows {
        let sign = match r.matched_sign {
            Branch::Plus => "plus",
            Branch::Minus => "minus",
            Branch::None => "none",
        };
        writeln!(
            out,
            "{},{},{},{},{},{}",
            r.p, r.q, r.phi2, r.lower_bound, r.maximal, sign
        )
        .unwrap();
    }
    out
}

fn run_table(config: &RunConfig) -> Outcome {
    let pairs = config.pairs.clone().unwrap_or_else(|| TABLE_PAIRS.to_vec());
    let mut rows = Vec::with_capacity(pairs.len());
    for (p, q) in pairs {
        match table_row(p, q, config.g_override, config.strict) {
            Ok(row) => rows.push(row),
            Err(e) => return Outcome::invalid(e.code(), format!("({p}, {q}): {e}")),
        }
    }
    let ok = rows.iter().all(TableRow::ok);
    let output = match config.output_format {
        OutputFormat::Csv => rows_to_csv(&rows),
        _ => {
            #[derive(Serialize)]
            struct TableDoc<'a> {
                rows: &'a [TableRow],
                version: &'static str,
            }
            crate::report::to_sorted_json(&TableDoc {
                rows: &rows,
                version: VERSION,
            })
        }
    };
    Outcome::emit(output, ok)
}
