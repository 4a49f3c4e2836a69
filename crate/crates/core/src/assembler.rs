//! `H_*(Br_n; H_1(Σ_n; R))` from mapping cones.
//!
//! The relative pair is `Rel = Cone(s)` for the section model
//! `s : A(n-1) → B(n, mod1-t2)`. The map `ι = J ∘ τ ∘ μ` goes from
//! `B(n-1, mod1+t)` (shifted up by one) to `Rel`, and
//! `H_i(Br_n; H_1(Σ_n)) = H_{i+1}(Cone(ι))`. Cones use
//! `D(a, b) = (-∂a, f(a) + ∂b)`.

use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::linalg::TaggedEchelon;
use crate::algebra::ring::{Field, PrimeField, Rationals};
use crate::algebra::scalar::ScalarRing;
use crate::complexes::{build_b_integral, Module};
use crate::error::{Error, Result};
use crate::fixtures::{self, AbelianGroup, FixtureSet};
use crate::homology::{homology, homology_all, HomologyOptions, HomologyResult, TorsionFactor};
use crate::maps::{
    agree_on_homology, cone, cone_inclusion, induced_on_homology, mu_candidate, section_between, shift_complex,
    shifted_source, st_b_between, tau_between, verify_chain_map, ChainMap, ChainMapCheck, Complex, InducedMap,
    MuCandidate, SectionUnit, DEFAULT_MU,
};
use crate::series::{series_odd_poincare, series_stable};

/// Where a symplectic homology group came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    ConePipeline,
    SeriesPrediction,
    Fixture,
}

impl std::fmt::Display for Provenance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Provenance::ConePipeline => "cone-pipeline",
            Provenance::SeriesPrediction => "series-prediction",
            Provenance::Fixture => "fixture",
        })
    }
}

/// `H_i(Br_n; H_1(Σ_n; ring))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymplecticHomologyResult {
    pub n: usize,
    pub i: usize,
    pub ring: ScalarRing,
    pub betti: usize,
    pub torsion: Vec<TorsionFactor>,
    pub provenance: Provenance,
    /// The `μ` model used (cone pipeline only).
    pub candidate: Option<String>,
}

impl SymplecticHomologyResult {
    pub fn as_homology(&self) -> HomologyResult {
        HomologyResult { degree: self.i, betti: self.betti, torsion: self.torsion.clone(), basis: None }
    }

    /// Over ℤ, the group as a sum of primary cyclic groups.
    pub fn group(&self) -> Result<AbelianGroup> {
        AbelianGroup::from_invariants(self.betti, &self.torsion)
    }

    /// Dimension over a field, or rank of the free part over ℤ.
    pub fn dimension(&self) -> usize {
        self.betti
    }
}

impl std::fmt::Display for SymplecticHomologyResult {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.ring {
            ScalarRing::Integers => write!(f, "{}", self.as_homology()),
            ref r => {
                if self.betti == 0 {
                    write!(f, "0")
                } else {
                    write!(f, "{r}^{}", self.betti)
                }
            }
        }
    }
}

/// The complexes and maps of the cone pipeline for one `n`.
#[derive(Clone, Debug)]
pub struct Pipeline {
    pub n: usize,
    pub candidate: MuCandidate,
    pub section: ChainMap,
    /// `Cone(s)`.
    pub relative: Complex,
    /// `ι` as a degree-0 map from `B(n-1, mod1+t)[1]` to `Rel`.
    pub iota: ChainMap,
    /// `Cone(ι)`.
    pub total: Complex,
}

/// `Cone(s)` for `s : A(n-1) → B(n, mod1-t2)`, `A ↦ 0̄A ⊗ 1`.
pub fn relative_complex(n: usize) -> Result<(ChainMap, Complex)> {
    relative_complex_with(n, SectionUnit::One)
}

pub fn relative_complex_with(n: usize, u: SectionUnit) -> Result<(ChainMap, Complex)> {
    if n < 1 {
        return Err(Error::InvalidN { n, reason: "the relative pair needs n >= 1" });
    }
    let a = Arc::new(crate::complexes::build_a(n - 1)?);
    let b = Arc::new(build_b_integral(n, Module::Mod1MinusT2)?);
    let s = section_between(a, b, u)?;
    let rel = Arc::new(cone(&s, format!("Rel({n})"))?);
    Ok((s, rel))
}

impl Pipeline {
    pub fn build(n: usize, candidate: MuCandidate) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidN { n, reason: "the symplectic pipeline needs n >= 2" });
        }
        let (section, relative) = relative_complex(n)?;
        let prev = Arc::new(build_b_integral(n - 1, Module::Mod1PlusT)?);
        let plus = Arc::new(build_b_integral(n, Module::Mod1PlusT)?);
        let mu = candidate.build_between(prev.clone(), plus.clone())?;
        if let ChainMapCheck::Fails { degree, cell } = verify_chain_map(&mu) {
            return Err(Error::NotAChainMap(format!(
                "candidate {} fails at n = {n}, degree {degree}, cell {cell}",
                candidate.name
            )));
        }
        let tau = tau_between(plus, section.target.clone())?;
        let j = cone_inclusion(&section, relative.clone())?;
        let composite = mu.then(&tau)?.then(&j)?;
        let shifted = Arc::new(shift_complex(&prev, 1, format!("{}[1]", prev.name())));
        let mut iota = shifted_source(&composite, shifted)?;
        iota.name = format!("iota:{}({n})", candidate.name);
        let total = Arc::new(cone(&iota, format!("Cone(iota, {n})"))?);
        Ok(Pipeline { n, candidate, section, relative, iota, total })
    }

    /// The pipeline with the default `μ` model.
    pub fn default_for(n: usize) -> Result<Self> {
        Self::build(n, mu_candidate(DEFAULT_MU)?)
    }

    fn result(&self, i: usize, ring: &ScalarRing, h: HomologyResult) -> SymplecticHomologyResult {
        SymplecticHomologyResult {
            n: self.n,
            i,
            ring: ring.clone(),
            betti: h.betti,
            torsion: h.torsion,
            provenance: Provenance::ConePipeline,
            candidate: Some(self.candidate.name.to_string()),
        }
    }

    /// `H_i(Br_n; H_1(Σ_n; ring)) = H_{i+1}(Cone(ι); ring)`.
    pub fn homology(&self, i: usize, ring: &ScalarRing, opts: HomologyOptions) -> Result<SymplecticHomologyResult> {
        let h = homology(&self.total, ring, i + 1, opts)?;
        let r = self.result(i, ring, h);
        check_odd_gate(&r)?;
        Ok(r)
    }

    /// Degrees `0..=n`.
    pub fn homology_all(&self, ring: &ScalarRing, opts: HomologyOptions) -> Result<Vec<SymplecticHomologyResult>> {
        let all = homology_all(&self.total, ring, opts)?;
        let out: Vec<SymplecticHomologyResult> =
            (0..=self.n).map(|i| self.result(i, ring, all.get(i + 1).cloned().unwrap_or(HomologyResult::zero(i + 1)))).collect();
        for r in &out {
            check_odd_gate(r)?;
        }
        Ok(out)
    }

    /// `ι_i : H_{i-1}(B_{n-1}; F[t]/(1+t)) → H_i(Rel; F)`.
    pub fn iota_matrix<F: Field>(&self, field: &F, i: usize) -> Result<InducedMap<F>> {
        induced_on_homology(field, &self.iota, i)
    }

    /// Dimension of `H_i(Br_n; H_1(Σ_n; F))` from the exact sequence:
    /// `dim coker ι_{i+1} + dim ker ι_i`.
    pub fn ses_dimension<F: Field>(&self, field: &F, i: usize) -> Result<usize> {
        let upper = self.iota_matrix(field, i + 1)?;
        let lower = self.iota_matrix(field, i)?;
        let coker = upper.matrix.rows() - matrix_rank(field, &upper.matrix);
        let ker = lower.matrix.cols() - matrix_rank(field, &lower.matrix);
        Ok(coker + ker)
    }
}

fn matrix_rank<F: Field>(field: &F, m: &crate::algebra::SparseMatrix<F::Elem>) -> usize {
    let mut e = TaggedEchelon::new(field.clone());
    m.columns().iter().filter(|c| e.insert(c, &[])).count()
}

/// Odd `n` over ℤ must give no free part and only 2-power torsion.
pub fn check_odd_gate(r: &SymplecticHomologyResult) -> Result<()> {
    if r.n % 2 == 1 && r.ring == ScalarRing::Integers {
        let two_power = r.torsion.iter().all(|t| t.as_int().is_some_and(|n| n.magnitude().count_ones() == 1));
        if r.betti != 0 || !two_power {
            return Err(Error::Validation(format!(
                "odd n = {} gave H_{} = {} (expected only 2-power torsion)",
                r.n,
                r.i,
                r.as_homology()
            )));
        }
    }
    Ok(())
}

/// Runs the pipeline for `(n, i)` with the default `μ` model.
pub fn symplectic_homology(n: usize, i: usize, ring: &ScalarRing) -> Result<SymplecticHomologyResult> {
    Pipeline::default_for(n)?.homology(i, ring, HomologyOptions::default())
}

/// 2-rank of the stable group `H_i`.
pub fn predict_stable(i: usize) -> u64 {
    series_stable(i.max(1)).get(i, 0)
}

/// Prediction without the pipeline: for odd `n`, `(ℤ/2)^c` with `c` the
/// coefficient of `q^i t^n` in the odd-`n` series; for even `n`, only in the
/// stable range `2i + 2 < n`, from the stable series.
pub fn predict(n: usize, i: usize, ring: &ScalarRing) -> Result<SymplecticHomologyResult> {
    let rank = if n % 2 == 1 {
        if n < 3 {
            0
        } else {
            series_odd_poincare(i.max(1), n).get(i, n)
        }
    } else if 2 * i + 2 < n {
        predict_stable(i)
    } else {
        return Err(Error::Unsupported(format!("no series prediction for even n = {n} at i = {i}")));
    } as usize;
    let (betti, torsion) = match ring {
        ScalarRing::Integers => (0, vec![TorsionFactor::int(2); rank]),
        ScalarRing::Rationals => (0, Vec::new()),
        ScalarRing::PrimeField(2) => {
            // H_i ⊗ F_2 and Tor(H_{i-1}, F_2).
            let below = if i == 0 { 0 } else { predict(n, i - 1, &ScalarRing::Integers)?.torsion.len() };
            (rank + below, Vec::new())
        }
        ScalarRing::PrimeField(_) => (0, Vec::new()),
        other => return Err(Error::UnsupportedRing(format!("predictions over {other}"))),
    };
    Ok(SymplecticHomologyResult {
        n,
        i,
        ring: ring.clone(),
        betti,
        torsion,
        provenance: Provenance::SeriesPrediction,
        candidate: None,
    })
}

/// The printed group, when `(n, i)` is in the table.
pub fn from_fixture(n: usize, i: usize) -> Option<SymplecticHomologyResult> {
    let g = fixtures::table().group(n, i)?;
    Some(SymplecticHomologyResult {
        n,
        i,
        ring: ScalarRing::Integers,
        betti: g.betti,
        torsion: g.invariant_factors().into_iter().map(TorsionFactor::Int).collect(),
        provenance: Provenance::Fixture,
        candidate: None,
    })
}

/// A disagreement with the table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableMismatch {
    pub n: usize,
    pub i: usize,
    pub expected: String,
    pub computed: String,
    pub citation: String,
}

impl std::fmt::Display for TableMismatch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "n={} i={}: expected {} got {} [{}]", self.n, self.i, self.expected, self.computed, self.citation)
    }
}

/// Compares integral pipeline results for one `n` with the table.
pub fn diff_integral(table: &FixtureSet, n: usize, computed: &[SymplecticHomologyResult]) -> Result<Vec<TableMismatch>> {
    let mut out = Vec::new();
    for r in computed {
        let Some(expected) = table.group(n, r.i) else { continue };
        let got = r.group()?;
        if got != expected {
            out.push(TableMismatch {
                n,
                i: r.i,
                expected: expected.to_string(),
                computed: got.to_string(),
                citation: table.citation(n, r.i),
            });
        }
    }
    Ok(out)
}

/// `dim_{F_p} H_i` implied by the table via universal coefficients.
pub fn table_field_dimension(table: &FixtureSet, n: usize, i: usize, p: u64) -> Option<usize> {
    let g = table.group(n, i)?;
    let below = if i == 0 { 0 } else { table.group(n, i - 1)?.p_rank(p) };
    Some(g.betti + g.p_rank(p) + below)
}

/// Compares field-coefficient pipeline dimensions with the table.
pub fn diff_field(table: &FixtureSet, n: usize, p: u64, computed: &[SymplecticHomologyResult]) -> Vec<TableMismatch> {
    computed
        .iter()
        .filter_map(|r| {
            let expected = table_field_dimension(table, n, r.i, p)?;
            (expected != r.betti).then(|| TableMismatch {
                n,
                i: r.i,
                expected: format!("dim {expected}"),
                computed: format!("dim {}", r.betti),
                citation: table.citation(n, r.i),
            })
        })
        .collect()
}

/// How a `μ` candidate fared against the selection gates.
#[derive(Clone, Debug)]
pub struct CandidateReport {
    pub name: &'static str,
    pub version: u32,
    /// First failure of `f ∂ = ∂ f`, as `(n, degree, cell)`.
    pub chain_map_failure: Option<(usize, usize, String)>,
    /// `(n, i)` where `st ∘ μ` and `μ ∘ st` differ on homology.
    pub square_failures: Vec<(usize, usize)>,
    pub integral_mismatches: Vec<TableMismatch>,
    pub mod2_mismatches: Vec<TableMismatch>,
}

impl CandidateReport {
    pub fn accepted(&self) -> bool {
        self.chain_map_failure.is_none()
            && self.square_failures.is_empty()
            && self.integral_mismatches.is_empty()
            && self.mod2_mismatches.is_empty()
    }
}

/// Does `st ∘ μ_{n-1} = μ_n ∘ st` on `H_i(B_{n-2}; F[t]/(1+t))`?
fn square_commutes<F: Field>(field: &F, c: MuCandidate, n: usize) -> Result<Vec<usize>> {
    let b0 = Arc::new(build_b_integral(n - 2, Module::Mod1PlusT)?);
    let b1 = Arc::new(build_b_integral(n - 1, Module::Mod1PlusT)?);
    let b2 = Arc::new(build_b_integral(n, Module::Mod1PlusT)?);
    let lower = c.build_between(b0.clone(), b1.clone())?.then(&st_b_between(b1.clone(), b2.clone())?)?;
    let upper = st_b_between(b0.clone(), b1.clone())?.then(&c.build_between(b1, b2)?)?;
    let mut bad = Vec::new();
    for i in 0..b0.num_degrees() {
        if !agree_on_homology(field, &lower, &upper, i)? {
            bad.push(i);
        }
    }
    Ok(bad)
}

/// Runs the selection gates: chain map for `n <= max_chain`, the st-square
/// over F_2 and ℚ for `3 <= n <= max_chain`, the integral table for
/// `n <= max_z` and the F_2 table for `n <= max_f2`.
pub fn evaluate_candidate(c: MuCandidate, max_chain: usize, max_z: usize, max_f2: usize) -> Result<CandidateReport> {
    let mut report = CandidateReport {
        name: c.name,
        version: c.version,
        chain_map_failure: None,
        square_failures: Vec::new(),
        integral_mismatches: Vec::new(),
        mod2_mismatches: Vec::new(),
    };
    for n in 2..=max_chain {
        if let ChainMapCheck::Fails { degree, cell } = verify_chain_map(&c.build(n)?) {
            report.chain_map_failure = Some((n, degree, cell.to_string()));
            return Ok(report);
        }
    }
    for n in 3..=max_chain {
        for i in square_commutes(&PrimeField::new(2), c, n)? {
            report.square_failures.push((n, i));
        }
        for i in square_commutes(&Rationals, c, n)? {
            report.square_failures.push((n, i));
        }
    }
    let table = fixtures::table();
    let opts = HomologyOptions::default();
    let z: Vec<Vec<TableMismatch>> = (3..=max_z)
        .into_par_iter()
        .map(|n| -> Result<Vec<TableMismatch>> {
            let p = Pipeline::build(n, c)?;
            let all = homology_all(&p.total, &ScalarRing::Integers, opts)?;
            let rs: Vec<SymplecticHomologyResult> =
                (0..=n).map(|i| p.result(i, &ScalarRing::Integers, all.get(i + 1).cloned().unwrap_or(HomologyResult::zero(i + 1)))).collect();
            diff_integral(table, n, &rs)
        })
        .collect::<Result<_>>()?;
    report.integral_mismatches = z.into_iter().flatten().collect();
    let f2 = ScalarRing::PrimeField(2);
    let m2: Vec<Vec<TableMismatch>> = (3..=max_f2)
        .into_par_iter()
        .map(|n| -> Result<Vec<TableMismatch>> {
            let p = Pipeline::build(n, c)?;
            let all = homology_all(&p.total, &f2, opts)?;
            let rs: Vec<SymplecticHomologyResult> =
                (0..=n).map(|i| p.result(i, &f2, all.get(i + 1).cloned().unwrap_or(HomologyResult::zero(i + 1)))).collect();
            Ok(diff_field(table, n, 2, &rs))
        })
        .collect::<Result<_>>()?;
    report.mod2_mismatches = m2.into_iter().flatten().collect();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ring::Integers;
    use crate::maps::field_basis;

    #[test]
    fn table_entries() {
        let z = ScalarRing::Integers;
        assert_eq!(symplectic_homology(3, 1, &z).unwrap().to_string(), "Z/2");
        assert_eq!(symplectic_homology(6, 3, &z).unwrap().group().unwrap().to_string(), "Z2^2 Z3");
        let p4 = Pipeline::default_for(4).unwrap();
        let h = p4.homology_all(&z, HomologyOptions::default()).unwrap();
        assert_eq!(h.iter().map(|r| r.betti).collect::<Vec<_>>(), vec![0, 0, 1, 1, 0]);
        assert_eq!(h[0].provenance, Provenance::ConePipeline);
        assert_eq!(h[0].candidate.as_deref(), Some("signed-insert"));
    }

    #[test]
    fn relative_pair_is_a_complex() {
        for n in 1..=6 {
            let (s, rel) = relative_complex(n).unwrap();
            assert!(rel.check_d_squared(&Integers).is_ok());
            assert_eq!(rel.euler_characteristic(), s.target.euler_characteristic() - s.source.euler_characteristic());
        }
    }

    #[test]
    fn iota_domain_is_shifted_type_b() {
        let f = PrimeField::new(2);
        let p = Pipeline::default_for(5).unwrap();
        let prev = build_b_integral(4, Module::Mod1PlusT).unwrap();
        for i in 1..=5 {
            let m = p.iota_matrix(&f, i).unwrap();
            assert_eq!(m.matrix.cols(), field_basis(&f, &prev, i - 1).dim());
            assert_eq!(m.basis_hash.len(), 16);
        }
    }

    #[test]
    fn exact_sequence_matches_cone() {
        let f = PrimeField::new(2);
        for n in [5, 6] {
            let p = Pipeline::default_for(n).unwrap();
            let h = p.homology_all(&ScalarRing::PrimeField(2), HomologyOptions::default()).unwrap();
            for r in h {
                assert_eq!(p.ses_dimension(&f, r.i).unwrap(), r.betti, "n={n} i={}", r.i);
            }
        }
    }

    #[test]
    fn predictions() {
        assert_eq!(predict_stable(0), 0);
        assert_eq!(predict_stable(1), 1);
        assert_eq!(predict_stable(3), 2);
        assert_eq!(predict_stable(7), 7);
        assert_eq!(predict_stable(10), 14);
        let r = predict(13, 7, &ScalarRing::Integers).unwrap();
        assert_eq!(r.group().unwrap().to_string(), "Z2^6");
        assert_eq!(r.provenance, Provenance::SeriesPrediction);
        assert!(matches!(predict(6, 3, &ScalarRing::Integers), Err(Error::Unsupported(_))));
        assert_eq!(predict(10, 2, &ScalarRing::Integers).unwrap().torsion.len(), 1);
    }

    #[test]
    fn odd_gate_rejects_free_classes() {
        let mut r = from_fixture(5, 1).unwrap();
        assert!(check_odd_gate(&r).is_ok());
        r.betti = 1;
        assert!(matches!(check_odd_gate(&r), Err(Error::Validation(_))));
        r.betti = 0;
        r.torsion = vec![TorsionFactor::int(6)];
        assert!(check_odd_gate(&r).is_err());
    }

    #[test]
    fn rejected_candidates_report_why() {
        let r = evaluate_candidate(mu_candidate("unsigned-insert").unwrap(), 5, 0, 0).unwrap();
        assert!(r.chain_map_failure.is_some() && !r.accepted());
        let r = evaluate_candidate(mu_candidate("weight-two-insert").unwrap(), 4, 4, 0).unwrap();
        assert!(r.chain_map_failure.is_none() && !r.integral_mismatches.is_empty());
    }
}
