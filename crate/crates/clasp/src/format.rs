//! JSON and CSV encodings.
//!
//! Rationals are written as `"num/den"` strings so that certificates
//! round-trip exactly. Summands are `[a, b]`, or `[a, -b]` for a mirror.

use std::fmt::Write as _;
use std::time::{SystemTime, UNIX_EPOCH};

use clasp_core::bound::{
    AnalyticWitness, BoundCertificate, CertificateKind, ExhaustiveWitness, IndexStep, IsotropyStep, LevelWitness,
    LinearStep, LinearWitness, Mode, Preconditions, SubspaceWitness, Witnesses,
};
use clasp_core::cg::CgTable;
use clasp_core::exactmath::{Rat, RatInterval};
use clasp_core::knot::{Orientation, TwoBridgeKnot};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::CliError;

pub const SCHEMA_VERSION: u32 = 1;

type FResult<T> = Result<T, CliError>;

fn bad(msg: impl Into<String>) -> CliError {
    CliError::Format(msg.into())
}

pub fn rat_str(r: &Rat) -> String {
    r.to_string()
}

pub fn parse_rat(s: &str) -> FResult<Rat> {
    s.parse().map_err(|_| bad(format!("not a rational: {s:?}")))
}

fn rats(v: &[Rat]) -> Vec<String> {
    v.iter().map(rat_str).collect()
}

fn parse_rats(v: &[String]) -> FResult<Vec<Rat>> {
    v.iter().map(|s| parse_rat(s)).collect()
}

pub fn orientation_str(o: Orientation) -> &'static str {
    match o {
        Orientation::Standard => "standard",
        Orientation::Mirror => "mirror",
    }
}

pub fn parse_orientation(s: &str) -> FResult<Orientation> {
    match s {
        "standard" => Ok(Orientation::Standard),
        "mirror" => Ok(Orientation::Mirror),
        _ => Err(bad(format!("unknown orientation {s:?}"))),
    }
}

/// Envelope for every JSON document the CLI prints.
#[derive(Debug, Serialize)]
pub struct OutputDocument<T: Serialize> {
    pub schema_version: u32,
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generated_at: Option<u64>,
    pub payload: T,
}

impl<T: Serialize> OutputDocument<T> {
    pub fn new(command: &str, payload: T, timestamp: bool) -> Self {
        let generated_at =
            timestamp.then(|| SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0));
        OutputDocument { schema_version: SCHEMA_VERSION, command: command.to_owned(), generated_at, payload }
    }

    pub fn to_json(&self) -> FResult<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }
}

// ---------------------------------------------------------------------------
// Certificates

#[derive(Debug, Serialize, Deserialize)]
struct PreconditionsDto {
    classical_signature: i64,
    half_rank: usize,
}

#[derive(Debug, Serialize, Deserialize)]
struct SubspaceDto {
    basis: Vec<Vec<u32>>,
    character: Vec<u32>,
    interval: [String; 2],
}

#[derive(Debug, Serialize, Deserialize)]
struct LevelDto {
    g: usize,
    dim: usize,
    obstructed: bool,
    subspaces: Vec<SubspaceDto>,
    counterexample: Option<Vec<Vec<u32>>>,
}

#[derive(Debug, Serialize, Deserialize)]
struct ExhaustiveDto {
    tables: Vec<Vec<String>>,
    self_linking: Vec<String>,
    levels: Vec<LevelDto>,
}

#[derive(Debug, Serialize, Deserialize)]
struct IndexStepDto {
    a: usize,
    lhs: String,
    threshold: String,
}

#[derive(Debug, Serialize, Deserialize)]
struct IsotropyDto {
    index: usize,
    self_linking: String,
}

#[derive(Debug, Serialize, Deserialize)]
struct AnalyticDto {
    g: usize,
    m_values: Vec<u64>,
    tables: Vec<Vec<String>>,
    lower: Vec<String>,
    upper: Vec<String>,
    steps: Vec<IndexStepDto>,
    isotropy: Option<IsotropyDto>,
}

#[derive(Debug, Serialize, Deserialize)]
struct LinearStepDto {
    g: usize,
    k: usize,
    lhs: String,
    rhs: String,
}

#[derive(Debug, Serialize, Deserialize)]
struct LinearDto {
    n: usize,
    table: Vec<String>,
    orientation: String,
    r_m: usize,
    b_minus: String,
    b_plus: String,
    c: String,
    steps: Vec<LinearStepDto>,
}

#[derive(Debug, Serialize)]
#[serde(untagged)]
enum WitnessDto {
    Exhaustive(ExhaustiveDto),
    Analytic(AnalyticDto),
    Linear(LinearDto),
}

#[derive(Debug, Serialize)]
struct CertificateOut {
    kind: &'static str,
    p: u64,
    summands: Vec<[i64; 2]>,
    g_lower: usize,
    mode: Option<&'static str>,
    preconditions: PreconditionsDto,
    witnesses: WitnessDto,
    library_version: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct CertificateIn {
    kind: String,
    p: u64,
    summands: Vec<[i64; 2]>,
    g_lower: usize,
    mode: Option<String>,
    preconditions: PreconditionsDto,
    witnesses: Value,
    library_version: String,
}

fn level_dto(l: &LevelWitness) -> LevelDto {
    LevelDto {
        g: l.g,
        dim: l.dim,
        obstructed: l.obstructed,
        subspaces: l
            .subspaces
            .iter()
            .map(|s| SubspaceDto {
                basis: s.basis.clone(),
                character: s.character.clone(),
                interval: [rat_str(s.interval.lo()), rat_str(s.interval.hi())],
            })
            .collect(),
        counterexample: l.counterexample.clone(),
    }
}

fn level_from(d: LevelDto) -> FResult<LevelWitness> {
    let subspaces = d
        .subspaces
        .into_iter()
        .map(|s| {
            let interval = RatInterval::new(parse_rat(&s.interval[0])?, parse_rat(&s.interval[1])?)?;
            Ok(SubspaceWitness { basis: s.basis, character: s.character, interval })
        })
        .collect::<FResult<Vec<_>>>()?;
    Ok(LevelWitness { g: d.g, dim: d.dim, obstructed: d.obstructed, subspaces, counterexample: d.counterexample })
}

fn witness_dto(w: &Witnesses) -> WitnessDto {
    match w {
        Witnesses::Exhaustive(w) => WitnessDto::Exhaustive(ExhaustiveDto {
            tables: w.tables.iter().map(|t| rats(t)).collect(),
            self_linking: rats(&w.self_linking),
            levels: w.levels.iter().map(level_dto).collect(),
        }),
        Witnesses::AnalyticEx1(w) => WitnessDto::Analytic(AnalyticDto {
            g: w.g,
            m_values: w.m_values.clone(),
            tables: w.tables.iter().map(|t| rats(t)).collect(),
            lower: rats(&w.lower),
            upper: rats(&w.upper),
            steps: w
                .steps
                .iter()
                .map(|s| IndexStepDto { a: s.a, lhs: rat_str(&s.lhs), threshold: rat_str(&s.threshold) })
                .collect(),
            isotropy: w
                .isotropy
                .as_ref()
                .map(|i| IsotropyDto { index: i.index, self_linking: rat_str(&i.self_linking) }),
        }),
        Witnesses::LinearEx2(w) => WitnessDto::Linear(LinearDto {
            n: w.n,
            table: rats(&w.table),
            orientation: orientation_str(w.orientation).to_owned(),
            r_m: w.r_m,
            b_minus: rat_str(&w.b_minus),
            b_plus: rat_str(&w.b_plus),
            c: rat_str(&w.c),
            steps: w
                .steps
                .iter()
                .map(|s| LinearStepDto { g: s.g, k: s.k, lhs: rat_str(&s.lhs), rhs: rat_str(&s.rhs) })
                .collect(),
        }),
    }
}

fn witness_from(kind: CertificateKind, v: Value) -> FResult<Witnesses> {
    Ok(match kind {
        CertificateKind::Exhaustive => {
            let d: ExhaustiveDto = serde_json::from_value(v)?;
            Witnesses::Exhaustive(ExhaustiveWitness {
                tables: d.tables.iter().map(|t| parse_rats(t)).collect::<FResult<_>>()?,
                self_linking: parse_rats(&d.self_linking)?,
                levels: d.levels.into_iter().map(level_from).collect::<FResult<_>>()?,
            })
        }
        CertificateKind::AnalyticEx1 => {
            let d: AnalyticDto = serde_json::from_value(v)?;
            Witnesses::AnalyticEx1(AnalyticWitness {
                g: d.g,
                m_values: d.m_values,
                tables: d.tables.iter().map(|t| parse_rats(t)).collect::<FResult<_>>()?,
                lower: parse_rats(&d.lower)?,
                upper: parse_rats(&d.upper)?,
                steps: d
                    .steps
                    .iter()
                    .map(|s| Ok(IndexStep { a: s.a, lhs: parse_rat(&s.lhs)?, threshold: parse_rat(&s.threshold)? }))
                    .collect::<FResult<_>>()?,
                isotropy: d
                    .isotropy
                    .map(|i| {
                        Ok::<_, CliError>(IsotropyStep { index: i.index, self_linking: parse_rat(&i.self_linking)? })
                    })
                    .transpose()?,
            })
        }
        CertificateKind::LinearEx2 => {
            let d: LinearDto = serde_json::from_value(v)?;
            Witnesses::LinearEx2(LinearWitness {
                n: d.n,
                table: parse_rats(&d.table)?,
                orientation: parse_orientation(&d.orientation)?,
                r_m: d.r_m,
                b_minus: parse_rat(&d.b_minus)?,
                b_plus: parse_rat(&d.b_plus)?,
                c: parse_rat(&d.c)?,
                steps: d
                    .steps
                    .iter()
                    .map(|s| Ok(LinearStep { g: s.g, k: s.k, lhs: parse_rat(&s.lhs)?, rhs: parse_rat(&s.rhs)? }))
                    .collect::<FResult<_>>()?,
            })
        }
    })
}

/// Certificate as a JSON value, suitable for embedding in an
/// [`OutputDocument`].
pub fn certificate_value(cert: &BoundCertificate) -> FResult<Value> {
    let out = CertificateOut {
        kind: cert.kind.as_str(),
        p: cert.p,
        summands: cert.summands.iter().map(|&(a, b)| [a, b]).collect(),
        g_lower: cert.g_lower,
        mode: cert.mode.map(Mode::as_str),
        preconditions: PreconditionsDto {
            classical_signature: cert.preconditions.classical_signature,
            half_rank: cert.preconditions.half_rank,
        },
        witnesses: witness_dto(&cert.witnesses),
        library_version: cert.library_version.clone(),
    };
    Ok(serde_json::to_value(out)?)
}

pub fn certificate_to_json(cert: &BoundCertificate) -> FResult<String> {
    let out = certificate_value(cert)?;
    Ok(serde_json::to_string_pretty(&out)? + "\n")
}

pub fn certificate_from_value(v: Value) -> FResult<BoundCertificate> {
    let c: CertificateIn = serde_json::from_value(v)?;
    let kind = CertificateKind::parse(&c.kind).ok_or_else(|| bad(format!("unknown certificate kind {:?}", c.kind)))?;
    let mode = c.mode.map(|m| Mode::parse(&m).ok_or_else(|| bad(format!("unknown mode {m:?}")))).transpose()?;
    Ok(BoundCertificate {
        kind,
        p: c.p,
        summands: c.summands.iter().map(|s| (s[0], s[1])).collect(),
        g_lower: c.g_lower,
        mode,
        witnesses: witness_from(kind, c.witnesses)?,
        preconditions: Preconditions {
            classical_signature: c.preconditions.classical_signature,
            half_rank: c.preconditions.half_rank,
        },
        library_version: c.library_version,
    })
}

/// Accepts a bare certificate or an output document whose payload is one.
pub fn certificate_from_json(s: &str) -> FResult<BoundCertificate> {
    let mut v: Value = serde_json::from_str(s)?;
    if let Some(p) = v.get_mut("payload") {
        v = p.take();
    }
    certificate_from_value(v)
}

// ---------------------------------------------------------------------------
// Spec files

/// Input to `clasp bound`: a connected sum and how to search it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SumSpecFile {
    pub p: u64,
    pub summands: Vec<[i64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target_g: Option<usize>,
}

impl SumSpecFile {
    pub fn parse(s: &str) -> FResult<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn mode(&self) -> FResult<Option<Mode>> {
        self.mode.as_deref().map(|m| Mode::parse(m).ok_or_else(|| bad(format!("unknown mode {m:?}")))).transpose()
    }
}

// ---------------------------------------------------------------------------
// σ tables

#[derive(Debug, Serialize)]
pub struct TableRow {
    pub r: usize,
    pub sigma: String,
    pub interval_lo: String,
    pub interval_hi: String,
}

#[derive(Debug, Serialize)]
pub struct TablePayload {
    pub knot: String,
    pub a: u64,
    pub b: u64,
    pub p: u64,
    pub orientation: &'static str,
    pub generator: [u32; 2],
    pub rows: Vec<TableRow>,
}

pub fn table_payload(t: &CgTable) -> TablePayload {
    let rows = (0..t.values().len())
        .map(|r| {
            let iv = t.interval(r);
            TableRow { r, sigma: rat_str(t.value(r)), interval_lo: rat_str(iv.lo()), interval_hi: rat_str(iv.hi()) }
        })
        .collect();
    TablePayload {
        knot: t.knot().to_string(),
        a: t.knot().a(),
        b: t.knot().b(),
        p: t.p(),
        orientation: orientation_str(t.orientation()),
        generator: t.generator(),
        rows,
    }
}

pub fn table_csv(t: &CgTable) -> String {
    let mut out = String::from("r,sigma,interval_lo,interval_hi\n");
    for row in table_payload(t).rows {
        let _ = writeln!(out, "{},{},{},{}", row.r, row.sigma, row.interval_lo, row.interval_hi);
    }
    out
}

/// On-disk form of a cached table.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CachedTable {
    pub a: u64,
    pub b: u64,
    pub p: u64,
    pub orientation: String,
    pub generator: [u32; 2],
    pub values: Vec<String>,
    pub library_version: String,
}

impl CachedTable {
    pub fn from_table(t: &CgTable) -> Self {
        CachedTable {
            a: t.knot().a(),
            b: t.knot().b(),
            p: t.p(),
            orientation: orientation_str(t.orientation()).to_owned(),
            generator: t.generator(),
            values: rats(t.values()),
            library_version: clasp_core::LIBRARY_VERSION.to_owned(),
        }
    }

    pub fn into_table(self, knot: TwoBridgeKnot) -> FResult<CgTable> {
        if knot.a() != self.a || knot.b() != self.b {
            return Err(bad(format!("cached table is for B({},{}), not {knot}", self.a, self.b)));
        }
        Ok(CgTable::from_parts(
            knot,
            parse_orientation(&self.orientation)?,
            self.p,
            self.generator,
            parse_rats(&self.values)?,
        )?)
    }

    pub fn to_json(&self) -> FResult<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }
}
