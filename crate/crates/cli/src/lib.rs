//! Command-line front end for `abelkit`.
//!
//! Every subcommand produces one [`OutputRecord`], rendered as JSON, plain
//! text or CSV on stdout. Exit codes: 0 success, 1 oracle mismatch, 2 invalid
//! input, 3 resource guard.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use abelkit::counting::{count_with_guard, weak_delta_tilde_oracle, DecompCounts, SurfaceSpec};
use abelkit::discform::{
    brute_force_order, disc_form_of, global_order, local_order, local_symbols, DEFAULT_GUARD,
};
use abelkit::genus::{genus_of, GenusReport};
use abelkit::picard3::{
    al_orbit_check, atkin_lehner, embedding_vectors, gram_relations_hold, hall_divisors,
    multiplier_invariant, period_point, sigma_set, swapped, DEFAULT_TOL,
};
use abelkit::qform::{class_number, enumerate_isometry_classes, EvenBinaryLattice};
use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

pub const EXIT_OK: u8 = 0;
pub const EXIT_MISMATCH: u8 = 1;
pub const EXIT_INVALID: u8 = 2;
pub const EXIT_GUARD: u8 = 3;

/// Smallest sweep bounds that still contain every published table entry.
const CN1_MIN_DET: i64 = 164;
const CN2_MIN_DISC: i64 = 748;
const NONPRIM_MIN_DET: i64 = 28;

#[derive(Debug, Parser)]
#[command(name = "abelkit", version, about = "Decomposition numbers of Abelian surfaces")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,

    /// Largest discriminant group enumerated by brute force. The flag takes
    /// precedence over the environment variable.
    #[arg(long, env = "ABELKIT_MAX_BRUTE", default_value_t = DEFAULT_GUARD, global = true)]
    pub max_brute: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count decompositions of a single surface.
    Count {
        /// Picard number (2, 3 or 4).
        #[arg(long, value_parser = clap::value_parser!(u8).range(2..=4))]
        picard: u8,
        /// Level N for Picard number 3.
        #[arg(long = "N")]
        n: Option<i64>,
        /// Transcendental lattice a,b,c for Picard number 4.
        #[arg(long)]
        gram: Option<Gram>,
    },
    /// Reproduce the published tables.
    Tables {
        #[arg(value_enum)]
        which: Table,
        /// Sweep bound on the determinant (or discriminant).
        #[arg(long)]
        max_det: Option<i64>,
    },
    /// Compare closed formulas against enumeration.
    Oracle {
        #[command(subcommand)]
        which: OracleCommand,
    },
    /// Picard-number-3 data for level N.
    Picard3 {
        #[arg(long = "N")]
        n: i64,
        /// Point of the upper half plane as re,im; runs the orbit check.
        #[arg(long)]
        tau: Option<Point>,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Table {
    Cn1,
    Cn2,
    Nonprim,
}

#[derive(Debug, Clone, Subcommand)]
pub enum OracleCommand {
    /// |O(D)| from the closed formula and by enumeration.
    Odl {
        #[arg(long)]
        gram: Gram,
    },
    /// Strict count from the closed formula and from double cosets.
    Weak {
        #[arg(long)]
        gram: Gram,
    },
    /// Both oracles over every lattice up to a determinant bound.
    Sweep {
        #[arg(long)]
        max_det: i64,
    },
}

/// `a,b,c` on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Gram(pub i64, pub i64, pub i64);

impl FromStr for Gram {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<i64> = s
            .split(',')
            .map(|p| p.trim().parse::<i64>())
            .collect::<Result<_, _>>()
            .map_err(|e| format!("expected a,b,c: {e}"))?;
        match parts[..] {
            [a, b, c] => Ok(Gram(a, b, c)),
            _ => Err(format!("expected three integers, got {}", parts.len())),
        }
    }
}

/// `re,im` on the command line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point(pub Complex64);

impl FromStr for Point {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (re, im) = s.split_once(',').ok_or("expected re,im")?;
        let re: f64 = re.trim().parse().map_err(|e| format!("bad real part: {e}"))?;
        let im: f64 = im.trim().parse().map_err(|e| format!("bad imaginary part: {e}"))?;
        Ok(Point(Complex64::new(re, im)))
    }
}

/// The single record printed by every subcommand.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub command: String,
    pub inputs: BTreeMap<String, Value>,
    pub results: Value,
    pub agreement: BTreeMap<String, bool>,
    pub elapsed_us: u64,
}

impl OutputRecord {
    fn new(command: &str) -> Self {
        OutputRecord {
            command: command.to_string(),
            inputs: BTreeMap::new(),
            results: Value::Null,
            agreement: BTreeMap::new(),
            elapsed_us: 0,
        }
    }

    fn input(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.inputs.insert(key.to_string(), value.into());
        self
    }

    pub fn all_agree(&self) -> bool {
        self.agreement.values().all(|&v| v)
    }
}

/// CSV column order.
pub const CSV_HEADER: [&str; 11] = [
    "a", "b", "c", "det", "content", "|O(D)|", "genus_size", "proper_genus", "delta",
    "delta_tilde", "delta0",
];

/// One CSV row; lattice columns are empty for Picard numbers 2 and 3.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct LatticeRow {
    pub a: Option<i64>,
    pub b: Option<i64>,
    pub c: Option<i64>,
    pub det: Option<i64>,
    pub content: Option<i64>,
    #[serde(rename = "|O(D)|")]
    pub order: Option<u64>,
    pub genus_size: Option<u64>,
    pub proper_genus: Option<u64>,
    pub delta: u64,
    pub delta_tilde: u64,
    pub delta0: u64,
}

/// A finished command: the record, CSV rows if the command is tabular, and
/// the exit code.
#[derive(Debug)]
pub struct Outcome {
    pub record: OutputRecord,
    pub rows: Option<Vec<LatticeRow>>,
    pub exit: u8,
}

#[derive(Debug)]
pub enum CliError {
    Invalid(String),
    Guard(String),
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Invalid(_) => EXIT_INVALID,
            CliError::Guard(_) => EXIT_GUARD,
            CliError::Internal(_) => EXIT_MISMATCH,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Invalid(m) => write!(f, "invalid input: {m}"),
            CliError::Guard(m) => write!(f, "resource guard: {m}"),
            CliError::Internal(m) => write!(f, "internal check failed: {m}"),
        }
    }
}

impl From<abelkit::Error> for CliError {
    fn from(e: abelkit::Error) -> Self {
        use abelkit::Error as E;
        match e {
            E::GuardExceeded { .. } => CliError::Guard(e.to_string()),
            E::Inconsistent(_) | E::Overflow(_) | E::NoConvergence => {
                CliError::Internal(e.to_string())
            }
            _ => CliError::Invalid(e.to_string()),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

fn lattice(g: Gram) -> CliResult<EvenBinaryLattice> {
    Ok(EvenBinaryLattice::new(g.0, g.1, g.2)?)
}

fn counts_json(c: &DecompCounts) -> Value {
    json!({ "delta": c.delta, "delta_tilde": c.delta_tilde, "delta0": c.delta0 })
}

fn genus_json(g: &GenusReport) -> Value {
    json!({
        "members": g.members.iter().map(|m| [m.a(), m.b(), m.c()]).collect::<Vec<_>>(),
        "ambiguous": g.ambiguous,
        "g_count": g.g_count,
        "proper_count": g.proper_count,
        "image_orders": g.image_orders,
    })
}

fn identity_holds(c: &DecompCounts) -> bool {
    c.delta_tilde + c.delta0 == 2 * c.delta
}

/// Counts, genus and CSV row for one lattice.
fn lattice_summary(t: &EvenBinaryLattice, guard: u64) -> CliResult<(DecompCounts, GenusReport, LatticeRow)> {
    let counts = count_with_guard(&SurfaceSpec::Rho4(*t), guard)?;
    let genus = genus_of(t, guard)?;
    let row = LatticeRow {
        a: Some(t.a()),
        b: Some(t.b()),
        c: Some(t.c()),
        det: Some(t.det()),
        content: Some(t.content()),
        order: Some(global_order(t)?),
        genus_size: Some(genus.g_count),
        proper_genus: Some(genus.proper_count),
        delta: counts.delta,
        delta_tilde: counts.delta_tilde,
        delta0: counts.delta0,
    };
    Ok((counts, genus, row))
}

fn cmd_count(picard: u8, n: Option<i64>, gram: Option<Gram>, guard: u64) -> CliResult<Outcome> {
    let mut record = OutputRecord::new("count").input("picard", picard);
    let (counts, rows) = match picard {
        2 => {
            let c = count_with_guard(&SurfaceSpec::Rho2, guard)?;
            record.results = counts_json(&c);
            (c, vec![row_without_lattice(&c)])
        }
        3 => {
            let n = n.ok_or_else(|| CliError::Invalid("--N is required for --picard 3".into()))?;
            if n < 1 {
                return Err(CliError::Invalid(format!("N = {n} must be at least 1")));
            }
            record = record.input("N", n);
            let c = count_with_guard(&SurfaceSpec::Rho3(n as u64), guard)?;
            record.results = counts_json(&c);
            (c, vec![row_without_lattice(&c)])
        }
        _ => {
            let g = gram.ok_or_else(|| CliError::Invalid("--gram is required for --picard 4".into()))?;
            record = record.input("gram", vec![g.0, g.1, g.2]);
            let t = lattice(g)?;
            let (c, genus, row) = lattice_summary(&t, guard)?;
            let mut results = counts_json(&c);
            results["det"] = json!(t.det());
            results["content"] = json!(t.content());
            results["order"] = json!(row.order);
            results["genus"] = genus_json(&genus);
            record.results = results;
            (c, vec![row])
        }
    };
    record.agreement.insert("delta_identity".into(), identity_holds(&counts));
    Ok(Outcome { record, rows: Some(rows), exit: EXIT_OK })
}

fn row_without_lattice(c: &DecompCounts) -> LatticeRow {
    LatticeRow { delta: c.delta, delta_tilde: c.delta_tilde, delta0: c.delta0, ..Default::default() }
}

fn sweep_classes(min_det: i64, max_det: i64, primitive: bool) -> Vec<EvenBinaryLattice> {
    (min_det..=max_det)
        .into_par_iter()
        .map(|d| enumerate_isometry_classes(d, primitive))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

fn summaries(
    lattices: &[EvenBinaryLattice],
    guard: u64,
) -> CliResult<Vec<(EvenBinaryLattice, DecompCounts, GenusReport, LatticeRow)>> {
    lattices
        .par_iter()
        .map(|t| lattice_summary(t, guard).map(|(c, g, r)| (*t, c, g, r)))
        .collect()
}

fn cmd_tables(which: Table, max_det: Option<i64>, guard: u64) -> CliResult<Outcome> {
    let (name, default, minimum) = match which {
        Table::Cn1 => ("cn1", 400, CN1_MIN_DET),
        Table::Cn2 => ("cn2", 800, CN2_MIN_DISC),
        Table::Nonprim => ("nonprim", 400, NONPRIM_MIN_DET),
    };
    let bound = max_det.unwrap_or(default);
    if bound < minimum {
        return Err(CliError::Guard(format!(
            "table {name} needs a sweep bound of at least {minimum}, got {bound}"
        )));
    }
    let mut record = OutputRecord::new("tables").input("table", name).input("max_det", bound);

    let candidates: Vec<EvenBinaryLattice> = match which {
        Table::Cn1 => sweep_classes(3, bound, true),
        Table::Cn2 => (3..=bound)
            .into_par_iter()
            .filter(|&d| matches!(d % 4, 0 | 3) && class_number(-d).ok() == Some(2))
            .flat_map_iter(|d| enumerate_isometry_classes(d, true).into_iter().filter(|t| t.a() > 1))
            .collect(),
        Table::Nonprim => sweep_classes(3, bound, false)
            .into_iter()
            .filter(|t| !t.is_primitive())
            .collect(),
    };
    let all = summaries(&candidates, guard)?;
    let selected: Vec<_> = all
        .into_iter()
        .filter(|(_, c, _, _)| match which {
            Table::Cn1 => c.delta_tilde == 1,
            Table::Cn2 => true,
            Table::Nonprim => c.delta == 1,
        })
        .collect();

    let mut entries = Vec::new();
    let mut identity_ok = true;
    let mut extra_ok = true;
    for (t, c, genus, _) in &selected {
        let mut flags = serde_json::Map::new();
        flags.insert("delta_identity".into(), json!(identity_holds(c)));
        identity_ok &= identity_holds(c);
        match which {
            Table::Cn1 => {
                let h = class_number(-t.det())?;
                flags.insert("class_number_one".into(), json!(h == 1));
                extra_ok &= h == 1;
            }
            Table::Cn2 => {
                let ok = c.delta == 1 && c.delta_tilde == 2;
                flags.insert("delta_one_strict_two".into(), json!(ok));
                extra_ok &= ok;
            }
            Table::Nonprim => {
                flags.insert("non_primitive".into(), json!(!t.is_primitive()));
            }
        }
        let mut entry = json!({
            "lattice": [t.a(), t.b(), t.c()],
            "det": t.det(),
            "counts": counts_json(c),
            "genus_size": genus.g_count,
        });
        if which == Table::Cn2 {
            entry["discriminant"] = json!(-t.det());
        }
        entry["checks"] = Value::Object(flags);
        entries.push(entry);
    }
    let mut results = json!({ "count": entries.len(), "entries": entries });
    if which == Table::Cn2 {
        let mut discs: Vec<i64> = selected.iter().map(|(t, ..)| t.det()).collect();
        discs.dedup();
        results["discriminants"] = json!(discs);
        results["count"] = json!(discs.len());
    }
    record.results = results;
    record.agreement.insert("delta_identity".into(), identity_ok);
    if which != Table::Nonprim {
        record.agreement.insert("entry_checks".into(), extra_ok);
    }
    let rows = selected.into_iter().map(|(.., row)| row).collect();
    Ok(Outcome { record, rows: Some(rows), exit: EXIT_OK })
}

fn odl(t: &EvenBinaryLattice, guard: u64) -> CliResult<(u64, u64, u64)> {
    let closed = global_order(t)?;
    let brute = brute_force_order(&disc_form_of(t)?, guard)?;
    let mut local = 1u64;
    for s in local_symbols(t)? {
        local *= local_order(&s)?;
    }
    Ok((closed, brute, local))
}

fn weak(t: &EvenBinaryLattice, guard: u64) -> CliResult<(u64, u64)> {
    let closed = count_with_guard(&SurfaceSpec::Rho4(*t), guard)?.delta_tilde;
    let brute = weak_delta_tilde_oracle(t, guard)?;
    Ok((closed, brute))
}

fn cmd_oracle(which: OracleCommand, guard: u64) -> CliResult<Outcome> {
    let mut record;
    match which {
        OracleCommand::Odl { gram } => {
            record = OutputRecord::new("oracle odl").input("gram", vec![gram.0, gram.1, gram.2]);
            let (closed, brute, local) = odl(&lattice(gram)?, guard)?;
            record.results = json!({ "closed": closed, "brute": brute, "local_product": local });
            record.agreement.insert("closed_vs_brute".into(), closed == brute);
            record.agreement.insert("local_vs_closed".into(), local == closed);
        }
        OracleCommand::Weak { gram } => {
            record = OutputRecord::new("oracle weak").input("gram", vec![gram.0, gram.1, gram.2]);
            let (closed, brute) = weak(&lattice(gram)?, guard)?;
            record.results = json!({ "closed": closed, "brute": brute });
            record.agreement.insert("closed_vs_brute".into(), closed == brute);
        }
        OracleCommand::Sweep { max_det } => {
            if max_det < 3 {
                return Err(CliError::Invalid(format!("max-det {max_det} < 3")));
            }
            record = OutputRecord::new("oracle sweep").input("max_det", max_det);
            let lattices = sweep_classes(3, max_det, false);
            let checked: Vec<(EvenBinaryLattice, (u64, u64, u64), (u64, u64))> = lattices
                .par_iter()
                .map(|t| Ok((*t, odl(t, guard)?, weak(t, guard)?)))
                .collect::<CliResult<_>>()?;
            let mismatches: Vec<Value> = checked
                .iter()
                .filter(|(_, (c, b, l), (wc, wb))| c != b || l != c || wc != wb)
                .map(|(t, (c, b, l), (wc, wb))| {
                    json!({
                        "lattice": [t.a(), t.b(), t.c()],
                        "order": { "closed": c, "brute": b, "local_product": l },
                        "strict_count": { "closed": wc, "brute": wb },
                    })
                })
                .collect();
            record.results = json!({
                "lattices": checked.len(),
                "mismatches": mismatches.len(),
                "details": mismatches,
            });
            record.agreement.insert("sweep".into(), mismatches.is_empty());
        }
    }
    let exit = if record.all_agree() { EXIT_OK } else { EXIT_MISMATCH };
    Ok(Outcome { record, rows: None, exit })
}

fn cmd_picard3(n: i64, tau: Option<Point>, tol: f64) -> CliResult<Outcome> {
    if n < 1 {
        return Err(CliError::Invalid(format!("N = {n} must be at least 1")));
    }
    let mut record = OutputRecord::new("picard3").input("N", n);
    let sigma = sigma_set(n)?;
    let mut entries = Vec::new();
    let mut gram_ok = true;
    for s in &sigma {
        let v = embedding_vectors(n, s)?;
        let ok = gram_relations_hold(&v, n);
        gram_ok &= ok;
        entries.push(json!({
            "r": s.r, "s": s.s, "a": s.a, "b": s.b,
            "e": [v[0].x, v[0].y, v[0].z],
            "f": [v[1].x, v[1].y, v[1].z],
            "l": [v[2].x, v[2].y, v[2].z],
            "gram_ok": ok,
            "multiplier": multiplier_invariant(n, s)?,
        }));
    }
    let mut matrices = Vec::new();
    let mut al_ok = true;
    for q in hall_divisors(n)? {
        let w = atkin_lehner(n, q)?;
        al_ok &= w.squares_into_gamma0();
        matrices.push(json!({ "Q": q, "matrix": w.w.0 }));
    }
    let mut results = json!({
        "sigma_size": sigma.len(),
        "sigma": entries,
        "atkin_lehner": matrices,
    });
    record.agreement.insert("gram_relations".into(), gram_ok);
    record.agreement.insert("involutions".into(), al_ok);
    if let Some(Point(tau)) = tau {
        record = record.input("tau", vec![tau.re, tau.im]).input("tol", tol);
        if n < 2 {
            return Err(CliError::Invalid("the orbit check needs N >= 2".into()));
        }
        let mut points = Vec::new();
        for s in &sigma {
            for t in [*s, swapped(s)?] {
                let p = period_point(n, &t, tau)?;
                points.push(json!({ "r": t.r, "s": t.s, "point": [p.re, p.im] }));
            }
        }
        results["period_points"] = json!(points);
        record.agreement.insert("orbit".into(), al_orbit_check(n, tau, tol)?);
    }
    record.results = results;
    let exit = if record.all_agree() { EXIT_OK } else { EXIT_MISMATCH };
    Ok(Outcome { record, rows: None, exit })
}

/// Runs a parsed command line.
pub fn run(cli: &Cli) -> CliResult<Outcome> {
    let start = Instant::now();
    let guard = cli.max_brute;
    let mut outcome = match &cli.command {
        Command::Count { picard, n, gram } => cmd_count(*picard, *n, *gram, guard),
        Command::Tables { which, max_det } => cmd_tables(*which, *max_det, guard),
        Command::Oracle { which } => cmd_oracle(which.clone(), guard),
        Command::Picard3 { n, tau, tol } => cmd_picard3(*n, *tau, *tol),
    }?;
    outcome.record.inputs.insert("max_brute".into(), json!(guard));
    outcome.record.elapsed_us = start.elapsed().as_micros() as u64;
    Ok(outcome)
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let key = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(map) => {
            for (k, v) in map {
                flatten(&key(k), v, out);
            }
        }
        Value::Array(items) if items.iter().any(|x| x.is_object() || x.is_array()) => {
            for (i, x) in items.iter().enumerate() {
                flatten(&key(&i.to_string()), x, out);
            }
        }
        other => out.push((prefix.to_string(), other.to_string())),
    }
}

fn record_pairs(record: &OutputRecord) -> Vec<(String, String)> {
    let mut out = vec![("command".to_string(), record.command.clone())];
    for (k, v) in &record.inputs {
        flatten(&format!("inputs.{k}"), v, &mut out);
    }
    flatten("results", &record.results, &mut out);
    for (k, v) in &record.agreement {
        out.push((format!("agreement.{k}"), v.to_string()));
    }
    out.push(("elapsed_us".into(), record.elapsed_us.to_string()));
    out
}

/// Renders an outcome in the requested format.
pub fn render(outcome: &Outcome, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(&outcome.record).expect("records serialize"),
        Format::Text => record_pairs(&outcome.record)
            .into_iter()
            .map(|(k, v)| format!("{k}: {v}\n"))
            .collect(),
        Format::Csv => {
            let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
            match &outcome.rows {
                Some(rows) => {
                    w.write_record(CSV_HEADER).expect("in-memory write");
                    for row in rows {
                        w.serialize(row).expect("rows serialize");
                    }
                }
                None => {
                    w.write_record(["key", "value"]).expect("in-memory write");
                    for (k, v) in record_pairs(&outcome.record) {
                        w.write_record([k, v]).expect("in-memory write");
                    }
                }
            }
            String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 csv")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn scalar() -> impl Strategy<Value = Value> {
        prop_oneof![
            any::<i64>().prop_map(Value::from),
            any::<bool>().prop_map(Value::from),
            "[a-z]{0,8}".prop_map(Value::from),
            prop::collection::vec(any::<i32>(), 0..4).prop_map(Value::from),
        ]
    }

    proptest! {
        #[test]
        fn record_round_trip(
            command in "[a-z ]{1,12}",
            inputs in prop::collection::btree_map("[a-z_]{1,6}", scalar(), 0..4),
            results in prop::collection::btree_map("[a-z_]{1,6}", scalar(), 0..6),
            agreement in prop::collection::btree_map("[a-z_]{1,6}", any::<bool>(), 0..3),
            elapsed_us in any::<u64>(),
        ) {
            let record = OutputRecord {
                command,
                inputs,
                results: Value::Object(results.into_iter().collect()),
                agreement,
                elapsed_us,
            };
            let text = serde_json::to_string(&record).unwrap();
            prop_assert_eq!(serde_json::from_str::<OutputRecord>(&text).unwrap(), record);
        }
    }

    #[test]
    fn parse_arguments() {
        assert_eq!("1, -2,3".parse::<Gram>(), Ok(Gram(1, -2, 3)));
        assert!("1,2".parse::<Gram>().is_err());
        assert!("a,b,c".parse::<Gram>().is_err());
        assert_eq!("0.5,1.5".parse::<Point>().unwrap().0, Complex64::new(0.5, 1.5));
        assert!("0.5".parse::<Point>().is_err());
    }

    #[test]
    fn error_exit_codes() {
        let guard = abelkit::Error::GuardExceeded { required: 10, limit: 5 };
        assert_eq!(CliError::from(guard).exit_code(), EXIT_GUARD);
        let bad = abelkit::Error::NotPositiveDefinite { a: 1, b: 3, c: 1 };
        assert_eq!(CliError::from(bad).exit_code(), EXIT_INVALID);
    }

    #[test]
    fn csv_header_matches_row_fields() {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.serialize(LatticeRow::default()).unwrap();
        let text = String::from_utf8(w.into_inner().unwrap()).unwrap();
        assert_eq!(text.lines().next().unwrap(), CSV_HEADER.join(","));
    }
}
