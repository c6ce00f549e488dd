//! Bounded-height enumeration of solutions, record persistence and import.
//!
//! `REDUCED` walks `(s1, s2, s3)` over the interior Farey fractions of height
//! at most `H` and solves the governing equation for `s4`. `ORACLE` walks all
//! four coordinates and tests each quadruple directly; it exists only to
//! cross-check `REDUCED` at small `H`.

use std::collections::BTreeSet;
use std::fs::{self, File, OpenOptions};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize, Serializer};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::families::FamilyPoint;
use crate::geometry::is_geometric;
use crate::sspace::{governing_residual, normalize, sharipov_feasible, solve_for_s4, SParams};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum SearchMode {
    Reduced,
    Oracle,
}

#[derive(Clone, Debug)]
pub struct SearchConfig {
    /// Largest numerator or denominator of any entry in `(0, 1)`.
    pub height_bound: u64,
    pub fixed_s1: Option<Rational>,
    pub mode: SearchMode,
    pub checkpoint_path: Option<PathBuf>,
    /// Worker threads; `None` lets rayon decide.
    pub workers: Option<usize>,
}

impl SearchConfig {
    pub fn new(height_bound: u64) -> Self {
        SearchConfig {
            height_bound,
            fixed_s1: None,
            mode: SearchMode::Reduced,
            checkpoint_path: None,
            workers: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.height_bound < 2 {
            return Err(Error::InvalidConfig(format!(
                "height bound {} < 2",
                self.height_bound
            )));
        }
        if let Some(s1) = &self.fixed_s1 {
            if !s1.in_unit_interval() || s1.is_one() {
                return Err(Error::InvalidConfig(format!("fixed s1 = {s1} is not in (0, 1)")));
            }
        }
        if self.workers == Some(0) {
            return Err(Error::InvalidConfig("workers must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Provenance {
    Search,
    Family,
    Import,
}

/// A validated solution in canonical form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionRecord {
    pub canonical: SParams,
    pub height: BigInt,
    pub feasible: bool,
    pub geometric_valid: bool,
    pub provenance: Provenance,
    /// The set as it was produced, kept when it differs from `canonical`.
    pub generated: Option<SParams>,
    /// Family or table tag carried through from the source.
    pub family: Option<String>,
}

impl SolutionRecord {
    /// Re-checks the residual exactly and canonicalizes.
    pub fn from_solution(s: &SParams, provenance: Provenance) -> Result<Self> {
        if !s.is_nondegenerate() {
            return Err(Error::DegenerateParameter(format!("{s} has an entry in {{0, 1, -1}}")));
        }
        if !governing_residual(s)?.is_zero() {
            return Err(Error::GoverningViolated(s.clone()));
        }
        let canonical = normalize(s)?;
        Ok(SolutionRecord {
            height: canonical.height(),
            feasible: sharipov_feasible(&canonical),
            geometric_valid: is_geometric(&canonical),
            generated: (*s != canonical).then(|| s.clone()),
            canonical,
            provenance,
            family: None,
        })
    }

    pub fn from_family_point(p: &FamilyPoint) -> Self {
        let mut r = SolutionRecord::from_solution(&p.sparams, Provenance::Family)
            .expect("family points are validated on construction");
        r.family = Some(p.family.tag().to_string());
        r
    }

    pub fn with_family(mut self, family: impl Into<String>) -> Self {
        self.family = Some(family.into());
        self
    }

    /// The as-produced set when known, otherwise the canonical one.
    pub fn as_generated(&self) -> &SParams {
        self.generated.as_ref().unwrap_or(&self.canonical)
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("record serializes")
    }
}

fn serialize_height<S: Serializer>(h: &BigInt, serializer: S) -> std::result::Result<S::Ok, S::Error> {
    match h.to_u64() {
        Some(v) => serializer.serialize_u64(v),
        None => serializer.serialize_str(&h.to_string()),
    }
}

#[derive(Serialize)]
struct RecordLine<'a> {
    s: &'a SParams,
    #[serde(serialize_with = "serialize_height")]
    height: &'a BigInt,
    residual: &'static str,
    feasible: bool,
    geometric_valid: bool,
    provenance: Provenance,
    #[serde(skip_serializing_if = "Option::is_none")]
    generated: Option<&'a SParams>,
    #[serde(skip_serializing_if = "Option::is_none")]
    family: Option<&'a str>,
}

impl Serialize for SolutionRecord {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        RecordLine {
            s: &self.canonical,
            height: &self.height,
            residual: "0",
            feasible: self.feasible,
            geometric_valid: self.geometric_valid,
            provenance: self.provenance,
            generated: self.generated.as_ref(),
            family: self.family.as_deref(),
        }
        .serialize(serializer)
    }
}

/// Reduced fractions `p/q` with `0 < p < q ≤ h`, ascending.
pub fn farey_interior(h: u64) -> Vec<Rational> {
    let mut out: Vec<(u64, u64)> = (2..=h)
        .flat_map(|q| (1..q).filter(move |p| p.gcd(&q) == 1).map(move |p| (p, q)))
        .collect();
    // p1/q1 < p2/q2 iff p1 q2 < p2 q1; products stay far below u128 range
    out.sort_by(|a, b| (a.0 as u128 * b.1 as u128).cmp(&(b.0 as u128 * a.1 as u128)));
    out.into_iter()
        .map(|(p, q)| Rational::new(BigInt::from(p), BigInt::from(q)).expect("q > 0"))
        .collect()
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    /// Sorted by canonical form, deduplicated.
    pub records: Vec<SolutionRecord>,
    /// False when the pair budget ran out before the enumeration finished.
    pub complete: bool,
    /// Outer `(s1, s2)` pairs processed by this call.
    pub pairs_processed: usize,
}

/// Runs the full enumeration, resuming from the checkpoint when one exists.
pub fn enumerate_solutions(cfg: &SearchConfig) -> Result<Vec<SolutionRecord>> {
    Ok(run_search(cfg, None)?.records)
}

const BATCH: usize = 16;

/// Like [`enumerate_solutions`], stopping after `pair_budget` outer pairs.
/// With a checkpoint, a later call picks up where this one stopped.
pub fn run_search(cfg: &SearchConfig, pair_budget: Option<usize>) -> Result<SearchOutcome> {
    cfg.validate()?;
    let fracs = farey_interior(cfg.height_bound);
    let pairs: Vec<(Rational, Rational)> = match &cfg.fixed_s1 {
        Some(s1) => fracs.iter().map(|s2| (s1.clone(), s2.clone())).collect(),
        None => fracs
            .iter()
            .enumerate()
            .flat_map(|(i, s1)| fracs[i..].iter().map(move |s2| (s1.clone(), s2.clone())))
            .collect(),
    };

    let mut found: BTreeSet<SParams> = BTreeSet::new();
    let mut sink = match &cfg.checkpoint_path {
        Some(path) => Some(Checkpoint::open(path, cfg, &pairs, &mut found)?),
        None => None,
    };
    let start = sink.as_ref().map_or(0, |c| c.resume_index);

    let pool = {
        let mut b = rayon::ThreadPoolBuilder::new();
        if let Some(w) = cfg.workers {
            b = b.num_threads(w);
        }
        b.build()
            .map_err(|e| Error::InvalidConfig(format!("thread pool: {e}")))?
    };
    let worker = PairWorker::new(cfg, &fracs);

    let end = match pair_budget {
        Some(b) => pairs.len().min(start + b),
        None => pairs.len(),
    };
    let mut idx = start;
    while idx < end {
        let stop = (idx + BATCH).min(end);
        let batch = &pairs[idx..stop];
        let results: Vec<Result<Vec<SParams>>> =
            pool.install(|| batch.par_iter().map(|(a, b)| worker.solve_pair(a, b)).collect());
        let mut fresh = Vec::new();
        for r in results {
            for s in r? {
                if found.insert(s.clone()) {
                    fresh.push(s);
                }
            }
        }
        if let Some(c) = sink.as_mut() {
            c.commit(&fresh, &batch[batch.len() - 1])?;
        }
        idx = stop;
    }

    let records = found
        .iter()
        .map(|s| SolutionRecord::from_solution(s, Provenance::Search))
        .collect::<Result<Vec<_>>>()?;
    Ok(SearchOutcome {
        records,
        complete: idx == pairs.len(),
        pairs_processed: idx - start,
    })
}

struct PairWorker<'a> {
    mode: SearchMode,
    fracs: &'a [Rational],
    bound: BigInt,
    // (1 - s^2)/2s = u / w per fraction, in integers
    uw: Vec<Option<(i128, i128)>>,
}

impl<'a> PairWorker<'a> {
    fn new(cfg: &SearchConfig, fracs: &'a [Rational]) -> Self {
        let uw = fracs.iter().map(u_over_w).collect();
        PairWorker {
            mode: cfg.mode,
            fracs,
            bound: BigInt::from(cfg.height_bound),
            uw,
        }
    }

    fn solve_pair(&self, s1: &Rational, s2: &Rational) -> Result<Vec<SParams>> {
        match self.mode {
            SearchMode::Reduced => self.reduced(s1, s2),
            SearchMode::Oracle => self.oracle(s1, s2),
        }
    }

    fn reduced(&self, s1: &Rational, s2: &Rational) -> Result<Vec<SParams>> {
        let mut out = Vec::new();
        for s3 in self.fracs {
            for t in solve_for_s4(s1, s2, s3)? {
                // roots come in reciprocal pairs; keep the one inside (0, 1)
                let Some(s4) = t.fold_unit() else { continue };
                if s4.is_one() || s4.height() > self.bound {
                    continue;
                }
                let s = SParams::new(s1.clone(), s2.clone(), s3.clone(), s4);
                out.push(normalize(&s)?);
            }
        }
        Ok(out)
    }

    fn oracle(&self, s1: &Rational, s2: &Rational) -> Result<Vec<SParams>> {
        let (a, b) = (u_over_w(s1), u_over_w(s2));
        let mut out = Vec::new();
        for (i, s3) in self.fracs.iter().enumerate() {
            for (j, s4) in self.fracs.iter().enumerate().skip(i) {
                let hit = match (a, b, self.uw[i], self.uw[j]) {
                    (Some(a), Some(b), Some(c), Some(d)) => leg_relation(a, b, c, d),
                    _ => None,
                };
                let s = SParams::new(s1.clone(), s2.clone(), s3.clone(), s4.clone());
                let is_root = match hit {
                    Some(false) => false,
                    // exact confirmation, and the fallback when i128 overflows
                    _ => governing_residual(&s)?.is_zero(),
                };
                if is_root {
                    out.push(normalize(&s)?);
                }
            }
        }
        Ok(out)
    }
}

fn u_over_w(s: &Rational) -> Option<(i128, i128)> {
    let p = s.numer().to_i128()?;
    let q = s.denom().to_i128()?;
    Some((q.checked_mul(q)? - p.checked_mul(p)?, 2 * p.checked_mul(q)?))
}

/// `2u1² + 2u2² = u3² + u4²` with `u_i = n_i / w_i`, or `None` on overflow.
fn leg_relation(a: (i128, i128), b: (i128, i128), c: (i128, i128), d: (i128, i128)) -> Option<bool> {
    let sq = |x: i128| x.checked_mul(x);
    let (n1, n2, n3, n4) = (sq(a.0)?, sq(b.0)?, sq(c.0)?, sq(d.0)?);
    let (w1, w2, w3, w4) = (sq(a.1)?, sq(b.1)?, sq(c.1)?, sq(d.1)?);
    let lhs = n1
        .checked_mul(w2)?
        .checked_mul(w3)?
        .checked_mul(w4)?
        .checked_mul(2)?
        .checked_add(n2.checked_mul(w1)?.checked_mul(w3)?.checked_mul(w4)?.checked_mul(2)?)?;
    let rhs = n3
        .checked_mul(w1)?
        .checked_mul(w2)?
        .checked_mul(w4)?
        .checked_add(n4.checked_mul(w1)?.checked_mul(w2)?.checked_mul(w3)?)?;
    Some(lhs == rhs)
}

#[derive(Serialize, Deserialize, PartialEq, Debug)]
struct SidecarHeader {
    height_bound: u64,
    fixed_s1: Option<Rational>,
    mode: SearchMode,
}

/// Checkpoint line `s1=p/q s2=p/q` naming the last completed outer pair, plus
/// an append-only sidecar of the sets found so far.
struct Checkpoint {
    path: PathBuf,
    sidecar: File,
    resume_index: usize,
}

pub fn sidecar_path(checkpoint: &Path) -> PathBuf {
    let mut name = checkpoint.as_os_str().to_owned();
    name.push(".records.jsonl");
    PathBuf::from(name)
}

fn parse_checkpoint_line(line: &str) -> Option<(Rational, Rational)> {
    let mut parts = line.split_whitespace();
    let s1 = parts.next()?.strip_prefix("s1=")?.parse().ok()?;
    let s2 = parts.next()?.strip_prefix("s2=")?.parse().ok()?;
    parts.next().is_none().then_some((s1, s2))
}

impl Checkpoint {
    fn open(
        path: &Path,
        cfg: &SearchConfig,
        pairs: &[(Rational, Rational)],
        found: &mut BTreeSet<SParams>,
    ) -> Result<Self> {
        let fail = |reason: String| Error::Checkpoint {
            path: path.to_path_buf(),
            reason,
        };
        let header = SidecarHeader {
            height_bound: cfg.height_bound,
            fixed_s1: cfg.fixed_s1.clone(),
            mode: cfg.mode,
        };
        let side = sidecar_path(path);

        if !path.exists() {
            let mut f = File::create(&side).map_err(|e| fail(format!("sidecar: {e}")))?;
            writeln!(f, "{}", serde_json::to_string(&header)?)
                .and_then(|_| f.sync_all())
                .map_err(|e| fail(format!("sidecar: {e}")))?;
            // probe that the checkpoint itself is writable before doing work
            let probe = tmp_path(path);
            File::create(&probe).map_err(|e| fail(e.to_string()))?;
            fs::remove_file(&probe).map_err(|e| fail(e.to_string()))?;
            return Ok(Checkpoint {
                path: path.to_path_buf(),
                sidecar: f,
                resume_index: 0,
            });
        }

        let text = fs::read_to_string(path).map_err(|e| fail(e.to_string()))?;
        let last = parse_checkpoint_line(text.trim())
            .ok_or_else(|| fail(format!("malformed checkpoint line {:?}", text.trim())))?;
        let resume_index = pairs
            .iter()
            .position(|p| *p == last)
            .ok_or_else(|| fail(format!("pair s1={} s2={} is not in this search", last.0, last.1)))?
            + 1;

        let reader = BufReader::new(File::open(&side).map_err(|e| fail(format!("sidecar: {e}")))?);
        let mut lines = reader.lines();
        let first = lines
            .next()
            .transpose()?
            .ok_or_else(|| fail("empty sidecar".into()))?;
        let stored: SidecarHeader =
            serde_json::from_str(&first).map_err(|e| fail(format!("sidecar header: {e}")))?;
        if stored != header {
            return Err(fail("checkpoint belongs to a different search configuration".into()));
        }
        let all: Vec<String> = lines.collect::<std::io::Result<_>>()?;
        let n = all.len();
        for (i, line) in all.iter().enumerate() {
            match serde_json::from_str::<SParams>(line) {
                Ok(s) => {
                    found.insert(s);
                }
                // a torn final line from an interrupted append is harmless:
                // its pair was not checkpointed and will be redone
                Err(_) if i + 1 == n => {}
                Err(e) => return Err(fail(format!("sidecar line {}: {e}", i + 2))),
            }
        }
        let sidecar = OpenOptions::new()
            .append(true)
            .open(&side)
            .map_err(|e| fail(format!("sidecar: {e}")))?;
        Ok(Checkpoint {
            path: path.to_path_buf(),
            sidecar,
            resume_index,
        })
    }

    fn commit(&mut self, fresh: &[SParams], last: &(Rational, Rational)) -> Result<()> {
        let fail = |e: std::io::Error| Error::Checkpoint {
            path: self.path.clone(),
            reason: e.to_string(),
        };
        let mut buf = String::new();
        for s in fresh {
            buf.push_str(&serde_json::to_string(s)?);
            buf.push('\n');
        }
        self.sidecar.write_all(buf.as_bytes()).map_err(fail)?;
        self.sidecar.sync_data().map_err(fail)?;

        let tmp = tmp_path(&self.path);
        fs::write(&tmp, format!("s1={} s2={}\n", last.0, last.1)).map_err(fail)?;
        fs::rename(&tmp, &self.path).map_err(fail)?;
        Ok(())
    }
}

fn tmp_path(path: &Path) -> PathBuf {
    let mut name = path.as_os_str().to_owned();
    name.push(".tmp");
    PathBuf::from(name)
}

pub fn write_records(path: &Path, records: &[SolutionRecord]) -> Result<()> {
    let mut out = BufWriter::new(File::create(path)?);
    for r in records {
        writeln!(out, "{}", r.to_json_line())?;
    }
    out.flush()?;
    Ok(())
}

/// A line that parsed but does not describe a valid solution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rejection {
    pub line: usize,
    pub reason: String,
}

#[derive(Clone, Debug, Default)]
pub struct ImportReport {
    pub records: Vec<SolutionRecord>,
    pub rejected: Vec<Rejection>,
}

/// Reads solution records, search output, or family point lines. Every set is
/// re-validated and canonicalized here; stored residuals are not trusted.
pub fn import_records(path: &Path) -> Result<ImportReport> {
    parse_records(BufReader::new(File::open(path)?))
}

pub fn parse_records(reader: impl BufRead) -> Result<ImportReport> {
    let mut report = ImportReport::default();
    for (i, line) in reader.lines().enumerate() {
        let line_no = i + 1;
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        match parse_line(&line).map_err(|reason| Error::MalformedLine {
            line: line_no,
            reason,
        })? {
            Ok(r) => report.records.push(r),
            Err(reason) => report.rejected.push(Rejection {
                line: line_no,
                reason,
            }),
        }
    }
    Ok(report)
}

fn sparams_field(obj: &serde_json::Map<String, Value>, key: &str) -> std::result::Result<Option<SParams>, String> {
    let Some(v) = obj.get(key) else { return Ok(None) };
    let arr = v
        .as_array()
        .filter(|a| a.len() == 4)
        .ok_or_else(|| format!("\"{key}\" must be an array of four rationals"))?;
    let mut vals = Vec::with_capacity(4);
    for x in arr {
        let text = match x {
            Value::String(t) => t.clone(),
            Value::Number(n) if n.is_i64() => n.to_string(),
            _ => return Err(format!("\"{key}\" entry {x} is not a rational string")),
        };
        vals.push(text.parse::<Rational>().map_err(|e| e.to_string())?);
    }
    Ok(Some(SParams::from_array(vals.try_into().expect("four entries"))))
}

// Outer Err: malformed line. Inner Err: well-formed but rejected.
type LineResult = std::result::Result<std::result::Result<SolutionRecord, String>, String>;

fn parse_line(line: &str) -> LineResult {
    let value: Value = serde_json::from_str(line).map_err(|e| e.to_string())?;
    let obj = value.as_object().ok_or("expected a JSON object")?;
    let s = sparams_field(obj, "s")?.ok_or("missing \"s\"")?;
    let generated = sparams_field(obj, "generated")?;
    let family = match obj.get("family") {
        None => None,
        Some(Value::String(f)) => Some(f.clone()),
        Some(other) => return Err(format!("\"family\" must be a string, got {other}")),
    };
    let provenance = match obj.get("provenance") {
        Some(p) => serde_json::from_value(p.clone()).map_err(|e| format!("provenance: {e}"))?,
        None if family.is_some() => Provenance::Family,
        None => Provenance::Import,
    };

    if s.iter().any(Rational::is_zero) {
        return Ok(Err(format!("zero entry in {s}")));
    }
    if !s.is_nondegenerate() {
        return Ok(Err(format!("entry ±1 in {s}")));
    }
    let residual = governing_residual(&s).map_err(|e| e.to_string())?;
    if !residual.is_zero() {
        return Ok(Err(format!("residual {residual} != 0 for {s}")));
    }
    let mut rec = SolutionRecord::from_solution(&s, provenance).map_err(|e| e.to_string())?;
    if let Some(g) = generated {
        if normalize(&g).ok().as_ref() != Some(&rec.canonical) {
            return Ok(Err(format!("generated {g} is not equivalent to {s}")));
        }
        rec.generated = Some(g);
    }
    rec.family = family;
    Ok(Ok(rec))
}
