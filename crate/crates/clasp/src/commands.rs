//! Command implementations. Each returns the text for stdout and an exit
//! code; argument parsing lives in the binary.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clasp_core::bound::{
    analytic_certificate_ex1, genus_lower_bound, greedy_family, linear_bound, BoundCertificate, FamilyParams, Mode,
    ObstructionConfig,
};
use clasp_core::cg::cg_table_for;
use clasp_core::exactmath::{snf, IntMatrix};
use clasp_core::knot::{
    bm_family, chain_presentation, classical_signature, double_cover_homology, p_torsion_admissible, twist_knot,
    two_bridge, Amphicheirality, KnotRecord, SeifertForm, SumSpec, Summand, TwoBridgeKnot,
};
use serde::Serialize;
use serde_json::Value;

use crate::cache::{CacheStatus, TableCache};
use crate::error::{CliError, ExitCode};
use crate::format::{
    certificate_to_json, certificate_value, rat_str, table_csv, table_payload, OutputDocument, SumSpecFile,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Debug)]
pub struct Output {
    pub stdout: String,
    pub code: ExitCode,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Output { stdout, code: ExitCode::Success }
    }
}

type CResult<T = Output> = Result<T, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn read_file(path: &Path) -> CResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::io(path.display().to_string(), e))
}

fn matrix_rows(m: &IntMatrix) -> Vec<Vec<String>> {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| m[(i, j)].to_string()).collect()).collect()
}

// ---------------------------------------------------------------------------
// invariants

#[derive(Serialize)]
struct ClaspDto {
    c_plus: Option<u64>,
    c_minus: Option<u64>,
    c: Option<u64>,
    g4: Option<u64>,
    consistent: bool,
    amphicheiral: Option<&'static str>,
    witnesses: Vec<String>,
}

#[derive(Serialize)]
struct InvariantsPayload {
    knot: String,
    a: u64,
    b: u64,
    label: Option<String>,
    determinant: u64,
    double_cover_homology: String,
    chain_matrix: Option<Vec<Vec<String>>>,
    chain_smith_form: Option<Vec<String>>,
    seifert_form: Option<Vec<Vec<String>>>,
    classical_signature: Option<i64>,
    admissible_primes: Vec<u64>,
    record: Option<ClaspDto>,
}

/// Known family containing `B(a, b)`, with its Seifert form and record.
fn known_family(knot: &TwoBridgeKnot) -> Option<(TwoBridgeKnot, SeifertForm, KnotRecord)> {
    let (a, b) = (knot.a(), knot.b());
    if b % 2 == 0 && b > 0 {
        let m = b / 2;
        if a == 4 * m * m + 1 {
            return bm_family(m).ok();
        }
    }
    if b == 2 && a % 4 == 1 && a > 1 {
        return twist_knot((a - 1) / 4).ok();
    }
    None
}

fn odd_prime_factors(mut a: u64) -> Vec<u64> {
    let mut out = Vec::new();
    while a.is_multiple_of(2) && a > 0 {
        a /= 2;
    }
    let mut q = 3;
    while q * q <= a {
        if a.is_multiple_of(q) {
            out.push(q);
            while a.is_multiple_of(q) {
                a /= q;
            }
        }
        q += 2;
    }
    if a > 1 {
        out.push(a);
    }
    out
}

pub fn invariants(a: i64, b: i64, timestamp: bool) -> CResult {
    let knot = two_bridge(a, b)?;
    let family = known_family(&knot);
    let chain = chain_presentation(&knot).ok();
    let seifert = family.as_ref().map(|f| f.1.clone()).or_else(|| chain.as_ref().and_then(|c| c.seifert_form()));
    let signature = seifert.as_ref().map(classical_signature).transpose()?;
    let order = match chain {
        Some(_) => double_cover_homology(&knot)?,
        None => knot.a(),
    };
    let record = family.as_ref().map(|(_, _, r)| ClaspDto {
        c_plus: r.clasp.c_plus,
        c_minus: r.clasp.c_minus,
        c: r.clasp.c,
        g4: r.clasp.g4,
        consistent: r.clasp.consistent(),
        amphicheiral: r.amphicheiral.map(|x| match x {
            Amphicheirality::Negative => "negative",
            Amphicheirality::Positive => "positive",
        }),
        witnesses: r.witnesses.clone(),
    });
    let payload = InvariantsPayload {
        knot: knot.to_string(),
        a: knot.a(),
        b: knot.b(),
        label: family.as_ref().and_then(|f| f.0.label().map(str::to_owned)),
        determinant: knot.determinant(),
        double_cover_homology: format!("Z/{order}"),
        chain_matrix: chain.as_ref().map(|c| matrix_rows(&c.lambda())),
        chain_smith_form: chain.as_ref().map(|c| snf(&c.lambda()).d.iter().map(|d| d.to_string()).collect()),
        seifert_form: seifert.as_ref().map(|s| matrix_rows(s.matrix())),
        classical_signature: signature,
        admissible_primes: odd_prime_factors(knot.a())
            .into_iter()
            .filter(|&p| p_torsion_admissible(&knot, p))
            .collect(),
        record,
    };
    Ok(Output::ok(OutputDocument::new("invariants", payload, timestamp).to_json()?))
}

// ---------------------------------------------------------------------------
// cg-table

pub fn cg_table(a: i64, b: i64, p: u64, format: Format, cache: &TableCache, timestamp: bool) -> CResult {
    let summand = Summand::from_signed(a, b)?;
    let table = if b < 0 {
        cg_table_for(&summand, p)?
    } else {
        let (t, _status): (_, CacheStatus) = cache.get_or_compute(&summand.knot, p)?;
        t
    };
    Ok(Output::ok(match format {
        Format::Csv => table_csv(&table),
        Format::Json => OutputDocument::new("cg-table", table_payload(&table), timestamp).to_json()?,
    }))
}

// ---------------------------------------------------------------------------
// bound

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Exhaustive,
    AnalyticEx1,
    LinearEx2,
}

#[derive(Debug, Clone)]
pub struct BoundArgs {
    pub method: Method,
    pub spec: Option<PathBuf>,
    pub mode: Option<Mode>,
    pub genus: Option<usize>,
    pub knot: Option<(i64, i64)>,
    pub p: Option<u64>,
    pub n: Option<usize>,
    pub expect: Option<usize>,
    pub g_max: Option<usize>,
    pub out: Option<PathBuf>,
    pub timestamp: bool,
}

fn summands_of(pairs: &[[i64; 2]]) -> CResult<Vec<Summand>> {
    Ok(pairs.iter().map(|s| Summand::from_signed(s[0], s[1])).collect::<Result<_, _>>()?)
}

/// `m` with `(a, b) = (4m² + 1, 2m)`.
fn bm_index(pair: [i64; 2]) -> Option<u64> {
    let [a, b] = pair;
    (b > 0 && b % 2 == 0 && a == b * b + 1).then_some((b / 2) as u64)
}

fn copies_sum(args: &BoundArgs) -> CResult<SumSpec> {
    let (a, b) = args.knot.ok_or_else(|| usage("--knot A/B is required"))?;
    let p = args.p.ok_or_else(|| usage("--p is required"))?;
    let n = args.n.ok_or_else(|| usage("--n is required"))?;
    let s = Summand::from_signed(a, b)?;
    Ok(SumSpec::new(vec![s; n], p)?)
}

fn exhaustive_sum(args: &BoundArgs, spec: Option<&SumSpecFile>) -> CResult<SumSpec> {
    if let Some(spec) = spec {
        return Ok(SumSpec::new(summands_of(&spec.summands)?, spec.p)?);
    }
    if args.knot.is_some() {
        return copies_sum(args);
    }
    if let Some(g) = args.genus {
        return Ok(clasp_core::bound::family_sum(&greedy_family(g)?)?);
    }
    Err(usage("--exhaustive needs a spec file, --knot/--p/--n, or --genus"))
}

fn analytic_family(args: &BoundArgs, spec: Option<&SumSpecFile>) -> CResult<(FamilyParams, usize)> {
    let g = args.genus.ok_or_else(|| usage("--analytic-ex1 requires --genus"))?;
    let family = match spec {
        Some(spec) => {
            if spec.p != 5 {
                return Err(usage("the analytic certificate works at p = 5"));
            }
            let ms = spec
                .summands
                .iter()
                .map(|&s| bm_index(s).ok_or_else(|| usage(format!("summand {s:?} is not of the form B_m"))))
                .collect::<CResult<Vec<_>>>()?;
            FamilyParams::from_m_values(g, ms)
        }
        None => {
            if g == 0 {
                return Err(usage("--genus must be at least 1"));
            }
            greedy_family(g)?
        }
    };
    Ok((family, g))
}

pub fn compute_bound(args: &BoundArgs) -> CResult<BoundCertificate> {
    let spec = args.spec.as_deref().map(|p| SumSpecFile::parse(&read_file(p)?)).transpose()?;
    Ok(match args.method {
        Method::Exhaustive => {
            let sum = exhaustive_sum(args, spec.as_ref())?;
            let spec_mode = spec.as_ref().map(SumSpecFile::mode).transpose()?.flatten();
            let mode = args.mode.or(spec_mode).unwrap_or_default();
            genus_lower_bound(&sum, &ObstructionConfig { mode, g_max: args.g_max })?
        }
        Method::AnalyticEx1 => {
            let (family, g) = analytic_family(args, spec.as_ref())?;
            analytic_certificate_ex1(&family, g)?
        }
        Method::LinearEx2 => {
            let (a, b) = args.knot.ok_or_else(|| usage("--linear-ex2 requires --knot"))?;
            let p = args.p.ok_or_else(|| usage("--linear-ex2 requires --p"))?;
            let n = args.n.ok_or_else(|| usage("--linear-ex2 requires --n"))?;
            let table = cg_table_for(&Summand::from_signed(a, b)?, p)?;
            linear_bound(n, &table)?
        }
    })
}

pub fn bound(args: &BoundArgs) -> CResult {
    let cert = compute_bound(args)?;
    if let Some(path) = &args.out {
        fs::write(path, certificate_to_json(&cert)?).map_err(|e| CliError::io(path.display().to_string(), e))?;
    }
    let spec_target = match &args.spec {
        Some(p) => SumSpecFile::parse(&read_file(p)?)?.target_g,
        None => None,
    };
    let code = match args.expect.or(spec_target) {
        Some(e) if cert.g_lower < e => ExitCode::MathFailure,
        _ => ExitCode::Success,
    };
    let doc = OutputDocument::new("bound", certificate_value(&cert)?, args.timestamp);
    Ok(Output { stdout: doc.to_json()?, code })
}

// ---------------------------------------------------------------------------
// family

#[derive(Serialize)]
struct FamilyStepDto {
    position: usize,
    m: u64,
    lower: String,
    upper_sum: String,
    bound: String,
}

#[derive(Serialize)]
struct FamilyPayload {
    g: usize,
    p: u64,
    m_values: Vec<u64>,
    steps: Vec<FamilyStepDto>,
    replayed: bool,
}

pub fn family(g: usize, format: Format, timestamp: bool) -> CResult {
    if g == 0 {
        return Err(usage("--genus must be at least 1"));
    }
    let f = greedy_family(g)?;
    let replayed = f.replay().is_ok();
    let steps: Vec<FamilyStepDto> = f
        .steps
        .iter()
        .map(|s| FamilyStepDto {
            position: s.position,
            m: s.m,
            lower: rat_str(&s.lower),
            upper_sum: rat_str(&s.upper_sum),
            bound: rat_str(&s.bound),
        })
        .collect();
    let code = if replayed { ExitCode::Success } else { ExitCode::MathFailure };
    let stdout = match format {
        Format::Csv => {
            let mut out = String::from("position,m,lower,upper_sum,bound\n");
            let _ = writeln!(out, "1,{},,,", f.m_values[0]);
            for s in &steps {
                let _ = writeln!(out, "{},{},{},{},{}", s.position, s.m, s.lower, s.upper_sum, s.bound);
            }
            out
        }
        Format::Json => {
            let payload = FamilyPayload { g, p: 5, m_values: f.m_values.clone(), steps, replayed };
            OutputDocument::new("family", payload, timestamp).to_json()?
        }
    };
    Ok(Output { stdout, code })
}

// ---------------------------------------------------------------------------
// verify

#[derive(Serialize)]
struct VerifyPayload {
    kind: &'static str,
    g_lower: usize,
    summands: usize,
    verified: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    failure: Option<String>,
}

pub fn verify(path: &Path, timestamp: bool) -> CResult {
    let cert = crate::format::certificate_from_json(&read_file(path)?)?;
    let result = cert.verify();
    let payload = VerifyPayload {
        kind: cert.kind.as_str(),
        g_lower: cert.g_lower,
        summands: cert.n(),
        verified: result.is_ok(),
        failure: result.as_ref().err().map(ToString::to_string),
    };
    let code = if result.is_ok() { ExitCode::Success } else { ExitCode::MathFailure };
    Ok(Output { stdout: OutputDocument::new("verify", payload, timestamp).to_json()?, code })
}

/// Parses `A/B` or `A,B`.
pub fn parse_knot(s: &str) -> Result<(i64, i64), String> {
    let (a, b) = s.split_once(['/', ',']).ok_or_else(|| format!("expected A/B, got {s:?}"))?;
    let a = a.trim().parse().map_err(|_| format!("bad numerator in {s:?}"))?;
    let b = b.trim().parse().map_err(|_| format!("bad denominator in {s:?}"))?;
    Ok((a, b))
}

/// Used by tests and `reproduce-paper` to read a JSON document's payload.
pub fn payload_of(stdout: &str) -> CResult<Value> {
    let mut v: Value = serde_json::from_str(stdout)?;
    Ok(v.get_mut("payload").map(Value::take).unwrap_or(v))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn knot_argument_forms() {
        assert_eq!(parse_knot("13/2"), Ok((13, 2)));
        assert_eq!(parse_knot("13,-2"), Ok((13, -2)));
        assert!(parse_knot("13").is_err());
    }

    #[test]
    fn prime_factors() {
        assert_eq!(odd_prime_factors(2705), vec![5, 541]);
        assert_eq!(odd_prime_factors(9), vec![3]);
    }

    #[test]
    fn invariants_of_figure_eight() {
        let out = invariants(5, 2, false).unwrap();
        let v = payload_of(&out.stdout).unwrap();
        assert_eq!(v["classical_signature"], 0);
        assert_eq!(v["double_cover_homology"], "Z/5");
        assert_eq!(v["record"]["g4"], 1);
        assert_eq!(v["admissible_primes"], serde_json::json!([5]));
    }

    #[test]
    fn linear_bound_expectation_sets_exit_code() {
        let mut args = BoundArgs {
            method: Method::LinearEx2,
            spec: None,
            mode: None,
            genus: None,
            knot: Some((13, 2)),
            p: Some(13),
            n: Some(164),
            expect: Some(2),
            g_max: None,
            out: None,
            timestamp: false,
        };
        assert_eq!(bound(&args).unwrap().code, ExitCode::Success);
        args.expect = Some(3);
        assert_eq!(bound(&args).unwrap().code, ExitCode::MathFailure);
        args.n = Some(3);
        assert_eq!(bound(&args).unwrap_err().exit_code(), ExitCode::MathFailure);
    }

    #[test]
    fn family_genus_zero_is_usage_error() {
        assert_eq!(family(0, Format::Json, false).unwrap_err().exit_code(), ExitCode::Usage);
    }
}
