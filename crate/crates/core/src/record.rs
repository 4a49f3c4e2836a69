//! Result records, the on-disk cache and the JSON / CSV / Markdown emitters.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::algebra::linalg::SparseVec;
use crate::algebra::scalar::ScalarRing;
use crate::assembler::SymplecticHomologyResult;
use crate::complexes::{Family, Module};
use crate::error::{Error, Result};
use crate::fixtures::AbelianGroup;
use crate::homology::{HomologyResult, TorsionFactor};

/// Bumped whenever a change can alter a computed result.
pub const ALGORITHM_REVISION: u32 = 1;

/// Family name used for `H_*(Br_n; H_1(Σ_n))` records.
pub const SYMPLECTIC_FAMILY: &str = "braid";
/// Coefficient name used for `H_*(Br_n; H_1(Σ_n))` records.
pub const SYMPLECTIC_COEFF: &str = "H1(Sigma_n)";

pub fn code_version() -> String {
    format!("{}+r{ALGORITHM_REVISION}", env!("CARGO_PKG_VERSION"))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionEntry {
    pub factor: String,
    pub multiplicity: usize,
}

/// One homology group, as emitted and cached.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyRecord {
    pub family: String,
    pub n: usize,
    pub coeff: String,
    pub ring: String,
    pub degree: usize,
    pub betti: usize,
    pub torsion: Vec<TorsionEntry>,
    pub provenance: String,
    pub candidate: Option<String>,
    pub basis_hash: Option<String>,
}

fn torsion_entries(torsion: &[TorsionFactor]) -> Vec<TorsionEntry> {
    let h = HomologyResult { degree: 0, betti: 0, torsion: torsion.to_vec(), basis: None };
    h.torsion_multiplicities()
        .into_iter()
        .map(|(f, m)| TorsionEntry { factor: f.serialized(), multiplicity: m })
        .collect()
}

/// Hash of integral representing cycles, 16 hex digits.
pub fn cycles_hash(basis: &[SparseVec<BigInt>]) -> String {
    let mut h = Sha256::new();
    for v in basis {
        for (i, x) in v {
            h.update(format!("{i}:{x};").as_bytes());
        }
        h.update(b"|");
    }
    hex::encode(&h.finalize()[..8])
}

impl HomologyRecord {
    /// A record for `H_i` of the type-A or type-B complex.
    pub fn from_homology(family: Family, n: usize, module: Module, ring: &ScalarRing, h: &HomologyResult) -> Self {
        HomologyRecord {
            family: family.to_string(),
            n,
            coeff: module.to_string(),
            ring: ring.to_string(),
            degree: h.degree,
            betti: h.betti,
            torsion: torsion_entries(&h.torsion),
            provenance: "direct".into(),
            candidate: None,
            basis_hash: h.basis.as_deref().map(cycles_hash),
        }
    }

    pub fn from_symplectic(r: &SymplecticHomologyResult) -> Self {
        HomologyRecord {
            family: SYMPLECTIC_FAMILY.into(),
            n: r.n,
            coeff: SYMPLECTIC_COEFF.into(),
            ring: r.ring.to_string(),
            degree: r.i,
            betti: r.betti,
            torsion: torsion_entries(&r.torsion),
            provenance: r.provenance.to_string(),
            candidate: r.candidate.clone(),
            basis_hash: None,
        }
    }

    pub fn with_basis_hash(mut self, hash: Option<String>) -> Self {
        self.basis_hash = hash;
        self
    }

    /// The group in table notation: `Z2^2 Z3` over ℤ, `F2^3` over a field.
    pub fn group_string(&self) -> String {
        let ints: Option<Vec<TorsionFactor>> = self
            .torsion
            .iter()
            .flat_map(|t| std::iter::repeat(&t.factor).take(t.multiplicity))
            .map(|f| f.parse::<BigInt>().ok().map(TorsionFactor::Int))
            .collect();
        if self.ring == "Z" {
            if let Some(g) = ints.and_then(|t| AbelianGroup::from_invariants(self.betti, &t).ok()) {
                return g.to_string();
            }
        }
        let mut parts = Vec::new();
        match self.betti {
            0 => {}
            1 => parts.push(self.ring.clone()),
            b => parts.push(format!("{}^{b}", self.ring)),
        }
        for t in &self.torsion {
            let base = format!("R/{}", t.factor);
            parts.push(if t.multiplicity == 1 { base } else { format!("({base})^{}", t.multiplicity) });
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" ")
        }
    }
}

/// JSON array, one object per record.
pub fn to_json(records: &[HomologyRecord]) -> Result<String> {
    Ok(serde_json::to_string_pretty(records)?)
}

/// CSV with torsion written as `factor^multiplicity` joined by `;`.
pub fn to_csv(records: &[HomologyRecord]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["family", "n", "coeff", "ring", "degree", "betti", "torsion", "provenance", "candidate", "basis_hash"])
        .map_err(csv_err)?;
    for r in records {
        let torsion: Vec<String> = r.torsion.iter().map(|t| format!("{}^{}", t.factor, t.multiplicity)).collect();
        w.write_record([
            r.family.clone(),
            r.n.to_string(),
            r.coeff.clone(),
            r.ring.clone(),
            r.degree.to_string(),
            r.betti.to_string(),
            torsion.join(";"),
            r.provenance.clone(),
            r.candidate.clone().unwrap_or_default(),
            r.basis_hash.clone().unwrap_or_default(),
        ])
        .map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    String::from_utf8(bytes).map_err(|e| Error::Parse(e.to_string()))
}

fn csv_err(e: csv::Error) -> Error {
    Error::Io(std::io::Error::other(e))
}

/// A Markdown table with one row per `n` and one column per degree.
pub fn to_markdown(records: &[HomologyRecord]) -> String {
    let mut rows: BTreeMap<(String, String, String, usize), BTreeMap<usize, String>> = BTreeMap::new();
    let mut degrees = std::collections::BTreeSet::new();
    for r in records {
        degrees.insert(r.degree);
        rows.entry((r.family.clone(), r.coeff.clone(), r.ring.clone(), r.n))
            .or_default()
            .insert(r.degree, r.group_string());
    }
    let mut out = String::from("| family | coeff | ring | n |");
    for d in &degrees {
        out.push_str(&format!(" i={d} |"));
    }
    out.push_str("\n|---|---|---|---|");
    for _ in &degrees {
        out.push_str("---|");
    }
    out.push('\n');
    for ((family, coeff, ring, n), groups) in rows {
        out.push_str(&format!("| {family} | {coeff} | {ring} | {n} |"));
        for d in &degrees {
            out.push_str(&format!(" {} |", groups.get(d).map(String::as_str).unwrap_or("")));
        }
        out.push('\n');
    }
    out
}

/// What a cached record was computed from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheKey {
    pub family: String,
    pub n: usize,
    pub coeff: String,
    pub ring: String,
    pub degree: usize,
    pub candidate: Option<String>,
    pub code_version: String,
    /// Extra options that change the payload (e.g. whether a basis hash is
    /// included).
    pub options: String,
}

impl CacheKey {
    pub fn new(family: &str, n: usize, coeff: &str, ring: &ScalarRing, degree: usize, candidate: Option<String>) -> Self {
        CacheKey {
            family: family.into(),
            n,
            coeff: coeff.into(),
            ring: ring.to_string(),
            degree,
            candidate,
            code_version: code_version(),
            options: String::new(),
        }
    }

    pub fn with_options(mut self, options: impl Into<String>) -> Self {
        self.options = options.into();
        self
    }

    /// SHA-256 of the key, hex.
    pub fn digest(&self) -> String {
        let json = serde_json::to_string(self).expect("key serializes");
        hex::encode(Sha256::digest(json.as_bytes()))
    }
}

/// A directory of cached records, one file per key.
///
/// Each file holds a `#` header line with the write time, the key as JSON
/// and the record as JSON. Writes go through a temporary file and a rename.
#[derive(Clone, Debug)]
pub struct ResultCache {
    dir: PathBuf,
}

impl ResultCache {
    pub fn open(dir: impl AsRef<Path>) -> Result<Self> {
        fs::create_dir_all(dir.as_ref())?;
        Ok(ResultCache { dir: dir.as_ref().to_path_buf() })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path(&self, key: &CacheKey) -> PathBuf {
        self.dir.join(format!("{}.json", key.digest()))
    }

    /// The exact bytes stored for a record.
    pub fn payload(record: &HomologyRecord) -> Result<String> {
        Ok(serde_json::to_string(record)?)
    }

    pub fn get(&self, key: &CacheKey) -> Result<Option<HomologyRecord>> {
        let path = self.path(key);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        let mut lines = text.lines().filter(|l| !l.starts_with('#'));
        let stored_key: CacheKey = serde_json::from_str(
            lines.next().ok_or_else(|| Error::Parse(format!("{}: missing key", path.display())))?,
        )?;
        if &stored_key != key {
            return Ok(None);
        }
        let record = serde_json::from_str(
            lines.next().ok_or_else(|| Error::Parse(format!("{}: missing record", path.display())))?,
        )?;
        Ok(Some(record))
    }

    pub fn put(&self, key: &CacheKey, record: &HomologyRecord) -> Result<PathBuf> {
        let stamp = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        writeln!(tmp, "# written {stamp} (unix seconds), code {}", key.code_version)?;
        writeln!(tmp, "{}", serde_json::to_string(key)?)?;
        writeln!(tmp, "{}", Self::payload(record)?)?;
        tmp.as_file().sync_all()?;
        let path = self.path(key);
        tmp.persist(&path).map_err(|e| Error::Io(e.error))?;
        Ok(path)
    }

    /// The cached record, or `compute()` stored under `key`.
    pub fn get_or_compute(
        &self,
        key: &CacheKey,
        compute: impl FnOnce() -> Result<HomologyRecord>,
    ) -> Result<(HomologyRecord, bool)> {
        if let Some(r) = self.get(key)? {
            return Ok((r, true));
        }
        let r = compute()?;
        self.put(key, &r)?;
        Ok((r, false))
    }
}
