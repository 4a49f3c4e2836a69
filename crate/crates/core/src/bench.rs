//! Wall-clock timings for the expensive stages.

use std::fmt;
use std::hint::black_box;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::algebra::ring::{Integers, PrimeField, Ring};
use crate::algebra::snf::snf;
use crate::algebra::Polys;
use crate::algebra::scalar::ScalarRing;
use crate::assembler::Pipeline;
use crate::complexes::{build_a, build_b_integral, build_b_laurent, Module};
use crate::error::Result;
use crate::homology::HomologyOptions;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    SnfInt,
    SnfPoly,
    Build,
    Pipeline,
}

impl Suite {
    pub const ALL: [Suite; 4] = [Suite::SnfInt, Suite::SnfPoly, Suite::Build, Suite::Pipeline];

    pub fn name(self) -> &'static str {
        match self {
            Suite::SnfInt => "snf-int",
            Suite::SnfPoly => "snf-poly",
            Suite::Build => "build",
            Suite::Pipeline => "pipeline",
        }
    }
}

impl std::str::FromStr for Suite {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| crate::Error::Parse(format!("unknown suite '{s}' (expected snf-int, snf-poly, build, pipeline)")))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Timing {
    pub suite: &'static str,
    pub case: String,
    /// Best of `runs`, in milliseconds.
    pub millis: f64,
    pub runs: usize,
}

impl fmt::Display for Timing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:<9} {:<28} {:>10.2} ms (best of {})", self.suite, self.case, self.millis, self.runs)
    }
}

fn best_of<T>(runs: usize, mut f: impl FnMut() -> Result<T>) -> Result<Duration> {
    let mut best = Duration::MAX;
    for _ in 0..runs {
        let t = Instant::now();
        black_box(f()?);
        best = best.min(t.elapsed());
    }
    Ok(best)
}

/// Runs one suite. `scale` is the largest `n` used.
pub fn run(suite: Suite, scale: usize, runs: usize) -> Result<Vec<Timing>> {
    let mut out = Vec::new();
    let mut record = |case: String, d: Duration| {
        out.push(Timing { suite: suite.name(), case, millis: d.as_secs_f64() * 1e3, runs });
    };
    match suite {
        Suite::SnfInt => {
            for n in [scale.saturating_sub(2).max(2), scale] {
                let c = build_b_integral(n, Module::Mod1MinusT2)?;
                for i in [n / 2, n / 2 + 1] {
                    let m = c.boundary(i as isize).into_owned();
                    let d = best_of(runs, || Ok(snf(&Integers, &m).rank))?;
                    record(format!("B({n}, mod1-t2) d_{i} {}x{}", m.rows(), m.cols()), d);
                }
            }
        }
        Suite::SnfPoly => {
            let n = scale.min(10);
            let c = build_b_laurent(n)?;
            let f2t = Polys::new(PrimeField::new(2));
            let zt = Polys::new(Integers);
            for i in [n / 2, n / 2 + 1] {
                let m = c.boundary(i as isize).map(&f2t, |p| zt.map_coeffs(&f2t, p, |x| f2t.base().from_integer(x)));
                let m = m.map(&f2t, |p| f2t.trim(p.clone()));
                let d = best_of(runs, || Ok(snf(&f2t, &m).rank))?;
                record(format!("B({n}, F2[t]) d_{i} {}x{}", m.rows(), m.cols()), d);
            }
        }
        Suite::Build => {
            let d = best_of(runs, || build_a(scale))?;
            record(format!("A({scale})"), d);
            let d = best_of(runs, || build_b_laurent(scale))?;
            record(format!("B({scale}, laurent)"), d);
            let d = best_of(runs, || build_b_integral(scale, Module::Mod1MinusT2))?;
            record(format!("B({scale}, mod1-t2)"), d);
        }
        Suite::Pipeline => {
            let d = best_of(runs, || Pipeline::default_for(scale))?;
            record(format!("assemble n={scale}"), d);
            let p = Pipeline::default_for(scale)?;
            for ring in [ScalarRing::Integers, ScalarRing::PrimeField(2)] {
                let d = best_of(runs, || p.homology_all(&ring, HomologyOptions::default()))?;
                record(format!("homology n={scale} over {ring}"), d);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_run() {
        for s in Suite::ALL {
            let t = run(s, 5, 1).unwrap();
            assert!(!t.is_empty());
            assert!(t.iter().all(|x| x.millis >= 0.0 && x.suite == s.name()));
        }
        assert!("snf-foo".parse::<Suite>().is_err());
    }
}
