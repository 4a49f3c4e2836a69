//! Reproduces the reference table and the generating-function identities.

use std::collections::BTreeMap;
use std::fmt;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::algebra::scalar::ScalarRing;
use crate::assembler::{diff_field, diff_integral, Pipeline, TableMismatch};
use crate::complexes::{build_a, build_b_integral, Module};
use crate::error::Result;
use crate::fixtures::{one_minus_t_poincare, FixtureSet};
use crate::homology::{homology_all, HomologyOptions};
use crate::series::{compare, series_braid_f2, series_odd_poincare, series_stable};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scope {
    Quick,
    Full,
}

impl Scope {
    /// Largest `n` checked against the integral table.
    pub fn max_integral(self) -> usize {
        match self {
            Scope::Quick => 8,
            Scope::Full => 13,
        }
    }

    /// Largest `n` checked over F_2 and F_3.
    pub fn max_field(self) -> usize {
        match self {
            Scope::Quick => 9,
            Scope::Full => 13,
        }
    }

    /// Largest `n` for the braid-group and Laurent checks.
    pub fn max_braid(self) -> usize {
        match self {
            Scope::Quick => 9,
            Scope::Full => 12,
        }
    }
}

impl std::str::FromStr for Scope {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "quick" => Ok(Scope::Quick),
            "full" => Ok(Scope::Full),
            _ => Err(crate::Error::Parse(format!("unknown scope '{s}' (expected quick or full)"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub compared: usize,
    pub failures: Vec<String>,
    pub elapsed: Duration,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {:<14} {:>4} compared  {:>8.3}s",
            if self.passed() { "PASS" } else { "FAIL" },
            self.name,
            self.compared,
            self.elapsed.as_secs_f64()
        )?;
        for m in &self.failures {
            write!(f, "\n    {m}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub scope: Scope,
    pub checks: Vec<CheckOutcome>,
    pub elapsed: Duration,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckOutcome::passed)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        write!(
            f,
            "{}: {} of {} checks passed in {:.3}s",
            if self.passed() { "ok" } else { "FAILED" },
            self.checks.iter().filter(|c| c.passed()).count(),
            self.checks.len(),
            self.elapsed.as_secs_f64()
        )
    }
}

fn timed(name: &'static str, f: impl FnOnce() -> Result<(usize, Vec<String>)>) -> Result<CheckOutcome> {
    let start = Instant::now();
    let (compared, failures) = f()?;
    Ok(CheckOutcome { name, compared, failures, elapsed: start.elapsed() })
}

fn table_ns(table: &FixtureSet, max: usize) -> Vec<usize> {
    table.ns().filter(|&n| n <= max).collect()
}

fn show(m: Vec<TableMismatch>) -> Vec<String> {
    m.into_iter().map(|m| m.to_string()).collect()
}

/// Integral pipeline results against the table.
pub fn check_integral_table(table: &FixtureSet, max_n: usize) -> Result<(usize, Vec<String>)> {
    let ns = table_ns(table, max_n);
    let per_n: Vec<(usize, Vec<TableMismatch>)> = ns
        .par_iter()
        .map(|&n| {
            let rs = Pipeline::default_for(n)?.homology_all(&ScalarRing::Integers, HomologyOptions::default())?;
            Ok((rs.len(), diff_integral(table, n, &rs)?))
        })
        .collect::<Result<_>>()?;
    let compared = per_n.iter().map(|(c, _)| c).sum();
    Ok((compared, show(per_n.into_iter().flat_map(|(_, m)| m).collect())))
}

/// F_p pipeline dimensions against the table via universal coefficients.
pub fn check_field_table(table: &FixtureSet, p: u64, max_n: usize) -> Result<(usize, Vec<String>)> {
    let ring = ScalarRing::prime_field(p)?;
    let ns = table_ns(table, max_n);
    let per_n: Vec<(usize, Vec<TableMismatch>)> = ns
        .par_iter()
        .map(|&n| {
            let rs = Pipeline::default_for(n)?.homology_all(&ring, HomologyOptions::default())?;
            Ok((rs.len(), diff_field(table, n, p, &rs)))
        })
        .collect::<Result<_>>()?;
    let compared = per_n.iter().map(|(c, _)| c).sum();
    Ok((compared, show(per_n.into_iter().flat_map(|(_, m)| m).collect())))
}

/// Odd rows of the table against the odd-`n` series: only 2-torsion, with
/// the predicted 2-rank.
pub fn check_odd_series(table: &FixtureSet) -> Result<(usize, Vec<String>)> {
    let max_n = table.ns().max().unwrap_or(0);
    let s = series_odd_poincare(max_n, max_n);
    let mut failures = Vec::new();
    let mut compared = 0;
    for n in table.ns().filter(|n| n % 2 == 1) {
        for i in 1..=max_n {
            let g = table.group(n, i).unwrap_or_default();
            compared += 1;
            let expected = s.get(i, n) as usize;
            if g.betti != 0 || !g.only_two_torsion() || g.p_rank(2) != expected {
                failures.push(format!("n={n} i={i}: table {g}, series 2-rank {expected} [{}]", table.citation(n, i)));
            }
        }
    }
    Ok((compared, failures))
}

/// Printed stable-series terms against the expansion.
pub fn check_stable_series(table: &FixtureSet) -> Result<(usize, Vec<String>)> {
    let printed = table.stable_terms();
    let s = series_stable(printed.len().saturating_sub(1));
    let failures = printed
        .iter()
        .enumerate()
        .filter(|(i, &c)| s.get(*i, 0) != c)
        .map(|(i, c)| format!("q^{i}: printed {c}, expansion {}", s.get(i, 0)))
        .collect();
    Ok((printed.len(), failures))
}

/// `dim H_d(Br_n; F_2)` from the type-A complex against the product series.
pub fn check_braid_f2(max_n: usize) -> Result<(usize, Vec<String>)> {
    let f2 = ScalarRing::PrimeField(2);
    let rows: Vec<(usize, Vec<usize>)> = (2..=max_n)
        .into_par_iter()
        .map(|n| {
            let h = homology_all(&build_a(n - 1)?, &f2, HomologyOptions::default())?;
            Ok((n, h.iter().map(|r| r.betti).collect()))
        })
        .collect::<Result<_>>()?;
    let mut computed = BTreeMap::new();
    for (n, dims) in rows {
        for (d, b) in dims.into_iter().enumerate() {
            computed.insert((d, n), b as u64);
        }
    }
    let s = series_braid_f2(max_n, max_n);
    Ok((computed.len(), compare(&s, &computed).into_iter().map(|m| m.to_string()).collect()))
}

/// `H_*(B_n; ℚ[t]/(1-t))` for even `n` has Poincaré polynomial `(1+q)q^{n-1}`.
pub fn check_one_minus_t(max_n: usize) -> Result<(usize, Vec<String>)> {
    let evens: Vec<usize> = (2..=max_n).filter(|n| n % 2 == 0).collect();
    let rows: Vec<(usize, Vec<usize>)> = evens
        .par_iter()
        .map(|&n| {
            let h = homology_all(&build_b_integral(n, Module::Mod1MinusT)?, &ScalarRing::Rationals, HomologyOptions::default())?;
            Ok((n, h.iter().map(|r| r.betti).collect()))
        })
        .collect::<Result<_>>()?;
    let mut failures = Vec::new();
    for (n, got) in &rows {
        let expected = one_minus_t_poincare(*n);
        if got != &expected {
            failures.push(format!("n={n}: Betti numbers {got:?}, expected {expected:?}"));
        }
    }
    Ok((rows.len(), failures))
}

/// Runs every check against `table`.
pub fn verify(scope: Scope, table: &FixtureSet) -> Result<VerifyReport> {
    let start = Instant::now();
    let checks = vec![
        timed("table-Z", || check_integral_table(table, scope.max_integral()))?,
        timed("table-F2", || check_field_table(table, 2, scope.max_field()))?,
        timed("table-F3", || check_field_table(table, 3, scope.max_field()))?,
        timed("odd-series", || check_odd_series(table))?,
        timed("stable-series", || check_stable_series(table))?,
        timed("braid-F2", || check_braid_f2(scope.max_braid()))?,
        timed("one-minus-t", || check_one_minus_t(scope.max_braid()))?,
    ];
    Ok(VerifyReport { scope, checks, elapsed: start.elapsed() })
}
