use std::fs;
use std::io::{self, Write};
use std::path::Path;
use std::time::Instant;

use qqpart::partition::X_FORM_TOL;
use qqpart::random::ginibre_density;
use qqpart::tcsim::{amplitudes, c_ac_qutrit_closed, c_b5_closed, cavity_dim, gt_to_tau, reduced_state, tau_to_gt};
use qqpart::verify::{grid, run_all, VerifyConfig};
use qqpart::{
    build_s_full, c_db_full, c_db_partition, extract_block, is_x_form, BlockPair, Complex64, ComplexMatrix,
    DensityMatrix, Error, QuditDim, TCParams,
};
use serde::{Deserialize, Serialize};

use crate::cli::{BoundArgs, SflipArgs, TcArgs, VerifyArgs};

/// Why a command stopped, mapped onto the process exit code.
#[derive(Debug)]
pub enum Failure {
    /// Some verification suite failed (exit 1).
    Verification,
    /// Malformed input or configuration (exit 2).
    Invalid(String),
    /// Numerical breakdown (exit 3).
    Numerical(String),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Verification => 1,
            Failure::Invalid(_) => 2,
            Failure::Numerical(_) => 3,
        }
    }
}

pub type CmdResult = Result<(), Failure>;

fn numerical(e: Error) -> Failure {
    Failure::Numerical(e.to_string())
}

/// Validation errors are input problems unless the eigensolver itself
/// failed.
fn validation(e: Error) -> Failure {
    match e {
        Error::NoConvergence { .. } => Failure::Numerical(e.to_string()),
        other => Failure::Invalid(format!("invalid density matrix: {other}")),
    }
}

/// Shortest round-trip decimal, never negative zero.
pub fn fmt_num(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:?}")
}

fn write_output(path: Option<&Path>, text: &str) -> CmdResult {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Invalid(format!("cannot write {}: {e}", p.display()))),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| Failure::Invalid(format!("cannot write standard output: {e}")))
        }
    }
}

/// On-disk density matrix: `{"d": int, "matrix": [[[re, im], ...], ...]}`.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixDocument {
    pub d: usize,
    pub matrix: Vec<Vec<[f64; 2]>>,
}

impl MatrixDocument {
    pub fn into_density(self) -> Result<DensityMatrix, Failure> {
        let d = QuditDim::new(self.d).map_err(|e| Failure::Invalid(e.to_string()))?;
        let n = d.joint();
        if self.matrix.len() != n {
            return Err(Failure::Invalid(format!(
                "matrix has {} rows, expected 2d = {n}",
                self.matrix.len()
            )));
        }
        if let Some((r, row)) = self.matrix.iter().enumerate().find(|(_, row)| row.len() != n) {
            return Err(Failure::Invalid(format!(
                "matrix row {r} has {} entries, expected 2d = {n}",
                row.len()
            )));
        }
        let entries = self
            .matrix
            .into_iter()
            .flatten()
            .map(|[re, im]| Complex64::new(re, im))
            .collect();
        let mat = ComplexMatrix::new(n, n, entries).map_err(|e| Failure::Invalid(e.to_string()))?;
        DensityMatrix::new(d, mat).map_err(validation)
    }
}

#[derive(Debug, Serialize)]
struct PairRow {
    i: usize,
    j: usize,
    c_full: f64,
    c_partition: f64,
    x_form: bool,
}

#[derive(Debug, Serialize)]
struct BoundOutput {
    d: usize,
    pairs: Vec<PairRow>,
    c_db: f64,
    eof: f64,
    c_db_full: f64,
    eof_full: f64,
    max_pair_delta: f64,
    c_db_delta: f64,
}

pub fn bound(args: &BoundArgs) -> CmdResult {
    let text = fs::read_to_string(&args.input)
        .map_err(|e| Failure::Invalid(format!("cannot read {}: {e}", args.input.display())))?;
    let doc: MatrixDocument =
        serde_json::from_str(&text).map_err(|e| Failure::Invalid(format!("malformed density-matrix document: {e}")))?;
    let rho = doc.into_density()?;

    let full = c_db_full(&rho).map_err(numerical)?;
    let part = c_db_partition(&rho).map_err(numerical)?;
    let mut pairs = Vec::with_capacity(full.per_pair.len());
    let mut max_pair_delta: f64 = 0.0;
    for (&(pair, c_full), &(_, c_partition)) in full.per_pair.iter().zip(&part.per_pair) {
        let block = extract_block(&rho, pair).map_err(numerical)?;
        max_pair_delta = max_pair_delta.max((c_full - c_partition).abs());
        pairs.push(PairRow {
            i: pair.i(),
            j: pair.j(),
            c_full,
            c_partition,
            x_form: is_x_form(&block, X_FORM_TOL),
        });
    }
    let report = BoundOutput {
        d: rho.d().get(),
        pairs,
        c_db: part.c_db,
        eof: part.eof,
        c_db_full: full.c_db,
        eof_full: full.eof,
        max_pair_delta,
        c_db_delta: (full.c_db - part.c_db).abs(),
    };
    let mut json = serde_json::to_string_pretty(&report).expect("report serializes");
    json.push('\n');
    write_output(args.output.as_deref(), &json)
}

/// Column header of the closed-form bound for photon number `n`.
fn closed_form_column(n: u32) -> Option<&'static str> {
    match n {
        0 => Some("c_ac_closed"),
        1 => None,
        _ => Some("c_b5_closed"),
    }
}

pub fn tc(args: &TcArgs) -> CmdResult {
    let default = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let alpha = args.alpha.unwrap_or(default);
    let beta = args.beta.unwrap_or(default);
    TCParams::with_tolerance(alpha, beta, args.n, 0.0, 1e-9).map_err(|e| Failure::Invalid(e.to_string()))?;
    if args.steps == 0 {
        return Err(Failure::Invalid("--steps must be at least 1".into()));
    }
    let n = args.n;
    let nonnegative = |name: &str, v: f64| {
        if v.is_finite() && v >= 0.0 {
            Ok(v)
        } else {
            Err(Failure::Invalid(format!("{name} must be a finite non-negative number, got {v}")))
        }
    };

    // (tau, gt) per row
    let points: Vec<(f64, f64)> = match (args.tau_max, args.gt_max) {
        (_, Some(gt_max)) => {
            let gt_max = nonnegative("--gt-max", gt_max)?;
            let has_tau = matches!(n, 0 | 2);
            if !has_tau {
                eprintln!("note: no dimensionless-time convention for n = {n}; tau column repeats g*t");
            }
            grid(gt_max, args.steps)
                .into_iter()
                .map(|gt| (if has_tau { gt_to_tau(gt, n).expect("n is 0 or 2") } else { gt }, gt))
                .collect()
        }
        (tau_max, None) => {
            let default_tau = match n {
                0 => 2.0,
                2 => 1.0,
                _ => {
                    return Err(Failure::Invalid(format!(
                        "{}; pass --gt-max",
                        Error::UnsupportedTauConvention(n)
                    )))
                }
            };
            let tau_max = nonnegative("--tau-max", tau_max.unwrap_or(default_tau))?;
            grid(tau_max, args.steps)
                .into_iter()
                .map(|tau| (tau, tau_to_gt(tau, n).expect("n is 0 or 2")))
                .collect()
        }
    };

    let d = QuditDim::new(cavity_dim(n)).expect("cavity dimension >= 3");
    let closed = closed_form_column(n);
    let mut csv = String::from("tau,gt,c_db,eof");
    for pair in d.pairs() {
        csv.push_str(&format!(",c_{}{}", pair.i(), pair.j()));
    }
    if let Some(name) = closed {
        csv.push(',');
        csv.push_str(name);
    }
    csv.push('\n');

    for (tau, gt) in points {
        let p = TCParams { alpha, beta, n, gt };
        let red = reduced_state(&p).map_err(numerical)?;
        let report = c_db_partition(&red.rho_ac).map_err(numerical)?;
        let mut fields = vec![fmt_num(tau), fmt_num(gt), fmt_num(report.c_db), fmt_num(report.eof)];
        fields.extend(report.per_pair.iter().map(|&(_, c)| fmt_num(c)));
        if closed.is_some() {
            let a = amplitudes(&p);
            let value = if n == 0 { c_ac_qutrit_closed(&a) } else { c_b5_closed(&a) };
            fields.push(fmt_num(value));
        }
        csv.push_str(&fields.join(","));
        csv.push('\n');
    }
    write_output(args.output.as_deref(), &csv)
}

fn format_grid(m: &ComplexMatrix) -> String {
    let mut out = String::new();
    for r in 0..m.rows() {
        let row: Vec<String> = (0..m.cols()).map(|c| format!("{:>2}", m[(r, c)].re as i64)).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

pub fn sflip(args: &SflipArgs) -> CmdResult {
    let d = QuditDim::new(args.d).map_err(|e| Failure::Invalid(e.to_string()))?;
    let pairs: Vec<BlockPair> = match args.pair {
        Some((i, j)) => vec![BlockPair::new(i, j, d).map_err(|e| Failure::Invalid(e.to_string()))?],
        None => d.pairs().collect(),
    };
    let mut text = String::new();
    for (k, pair) in pairs.into_iter().enumerate() {
        if k > 0 {
            text.push('\n');
        }
        let s = build_s_full(d, pair).map_err(|e| Failure::Invalid(e.to_string()))?;
        text.push_str(&format!("# S^{} d={}\n", pair, d));
        text.push_str(&format_grid(&s));
    }
    write_output(None, &text)
}

pub fn verify(args: &VerifyArgs) -> CmdResult {
    if args.trials == 0 {
        return Err(Failure::Invalid("--trials must be at least 1".into()));
    }
    if args.d_list.is_empty() {
        return Err(Failure::Invalid("--d-list must name at least one dimension".into()));
    }
    if let Some(&bad) = args.d_list.iter().find(|&&d| d < 2) {
        return Err(Failure::Invalid(Error::InvalidDimension(bad).to_string()));
    }
    let config = VerifyConfig {
        trials: args.trials,
        d_list: args.d_list.clone(),
        seed: args.seed,
    };
    let outcomes = run_all(&config).map_err(numerical)?;
    let mut text = format!(
        "verify seed={} trials={} d_list={}\n",
        config.seed,
        config.trials,
        config
            .d_list
            .iter()
            .map(|d| d.to_string())
            .collect::<Vec<_>>()
            .join(",")
    );
    for o in &outcomes {
        text.push_str(&o.to_string());
        text.push('\n');
    }
    let failed = outcomes.iter().filter(|o| !o.passed()).count();
    text.push_str(&format!("{} of {} suites passed\n", outcomes.len() - failed, outcomes.len()));
    write_output(None, &text)?;
    report_route_timing(&config);
    if failed > 0 {
        Err(Failure::Verification)
    } else {
        Ok(())
    }
}

/// Wall-clock of both routes, on standard error so the report stays
/// reproducible.
fn report_route_timing(config: &VerifyConfig) {
    let mut rng = qqpart::random::seeded_rng(config.seed);
    for &d in &config.d_list {
        let Ok(d) = QuditDim::new(d) else { continue };
        let states: Vec<DensityMatrix> = (0..config.trials)
            .filter_map(|_| ginibre_density(d, &mut rng).ok())
            .collect();
        let time = |f: &dyn Fn(&DensityMatrix) -> f64| {
            let start = Instant::now();
            let sink: f64 = states.iter().map(f).sum();
            (start.elapsed(), sink)
        };
        let (full, _) = time(&|rho| c_db_full(rho).map_or(f64::NAN, |r| r.c_db));
        let (part, _) = time(&|rho| c_db_partition(rho).map_or(f64::NAN, |r| r.c_db));
        eprintln!(
            "timing d={d}: full {:.2} ms, partition {:.2} ms over {} states",
            full.as_secs_f64() * 1e3,
            part.as_secs_f64() * 1e3,
            states.len()
        );
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn number_format_round_trips() {
        for &x in &[0.1, 1.0 / 3.0, 1e-20, 2.5e10, 0.468_995_593_589_281_2] {
            assert_eq!(fmt_num(x).parse::<f64>().unwrap(), x);
        }
        assert_eq!(fmt_num(-0.0), "0.0");
        assert!(!fmt_num(1234567.0).contains(','));
    }

    #[test]
    fn document_shape_errors() {
        let doc = MatrixDocument {
            d: 2,
            matrix: vec![vec![[0.0, 0.0]; 4]; 3],
        };
        assert!(matches!(doc.into_density(), Err(Failure::Invalid(m)) if m.contains("rows")));
        let doc = MatrixDocument { d: 1, matrix: vec![] };
        assert!(matches!(doc.into_density(), Err(Failure::Invalid(_))));
    }

    #[test]
    fn grid_format() {
        let s = build_s_full(QuditDim::new(2).unwrap(), BlockPair::new(0, 1, QuditDim::new(2).unwrap()).unwrap())
            .unwrap();
        assert_eq!(format_grid(&s), " 0  0  0  1\n 0  0 -1  0\n 0 -1  0  0\n 1  0  0  0\n");
    }
}
