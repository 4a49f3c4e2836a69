//! Reference data: the published table of `H_i(Br_n; H_1(Σ_n; ℤ))`, the
//! printed stable-series terms, and named closed-form expectations.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::homology::TorsionFactor;

const TABLE_JSON: &str = include_str!("../data/symplectic_groups.json");

/// An abelian group `ℤ^betti ⊕ ⊕ (ℤ/q)^m` with `q` prime powers.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AbelianGroup {
    pub betti: usize,
    /// Prime power → multiplicity.
    pub primary: BTreeMap<u64, usize>,
}

impl AbelianGroup {
    pub fn zero() -> Self {
        Self::default()
    }

    /// From a Betti number and invariant factors.
    pub fn from_invariants(betti: usize, torsion: &[TorsionFactor]) -> Result<Self> {
        let mut primary = BTreeMap::new();
        for t in torsion {
            let n = t
                .as_int()
                .ok_or_else(|| Error::Incompatible(format!("polynomial factor {t} in an abelian group")))?;
            for q in prime_power_parts(n)? {
                *primary.entry(q).or_insert(0) += 1;
            }
        }
        Ok(AbelianGroup { betti, primary })
    }

    /// Number of cyclic summands of order divisible by `p`.
    pub fn p_rank(&self, p: u64) -> usize {
        self.primary.iter().filter(|(q, _)| *q % p == 0).map(|(_, m)| m).sum()
    }

    /// Whether all torsion has order a power of 2.
    pub fn only_two_torsion(&self) -> bool {
        self.primary.keys().all(|q| q.is_power_of_two())
    }

    /// Invariant factors, smallest first.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let mut by_prime: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
        for (&q, &m) in &self.primary {
            let p = smallest_prime_factor(q);
            by_prime.entry(p).or_default().extend(std::iter::repeat(q).take(m));
        }
        let len = by_prime.values().map(Vec::len).max().unwrap_or(0);
        let mut out = vec![BigInt::one(); len];
        for qs in by_prime.values_mut() {
            qs.sort_unstable_by(|a, b| b.cmp(a));
            for (k, q) in qs.iter().enumerate() {
                out[len - 1 - k] *= *q;
            }
        }
        out
    }
}

fn smallest_prime_factor(n: u64) -> u64 {
    (2..).take_while(|d| d * d <= n).find(|d| n % d == 0).unwrap_or(n)
}

fn prime_power_parts(n: &BigInt) -> Result<Vec<u64>> {
    let mut n = n
        .to_u64()
        .ok_or_else(|| Error::Unsupported(format!("torsion order {n} does not fit in 64 bits")))?;
    let mut out = Vec::new();
    let mut d = 2u64;
    while n > 1 {
        if d * d > n {
            out.push(n);
            break;
        }
        let mut q = 1;
        while n % d == 0 {
            n /= d;
            q *= d;
        }
        if q > 1 {
            out.push(q);
        }
        d += 1;
    }
    Ok(out)
}

/// Renders as in the table: `Z2^2 Z3`, `Z`, `0`.
impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.betti {
            0 => {}
            1 => parts.push("Z".to_string()),
            b => parts.push(format!("Z^{b}")),
        }
        for (q, m) in &self.primary {
            parts.push(if *m == 1 { format!("Z{q}") } else { format!("Z{q}^{m}") });
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" "))
        }
    }
}

impl std::str::FromStr for AbelianGroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut g = AbelianGroup::zero();
        if s.trim() == "0" {
            return Ok(g);
        }
        for tok in s.split_whitespace() {
            let body = tok
                .strip_prefix('Z')
                .ok_or_else(|| Error::Parse(format!("bad group token '{tok}'")))?;
            let (order, mult) = match body.split_once('^') {
                Some((o, m)) => (o, m.parse::<usize>().map_err(|_| Error::Parse(format!("bad exponent in '{tok}'")))?),
                None => (body, 1),
            };
            if order.is_empty() {
                g.betti += mult;
            } else {
                let q: u64 = order.parse().map_err(|_| Error::Parse(format!("bad order in '{tok}'")))?;
                let parts = prime_power_parts(&BigInt::from(q))?;
                if parts.len() != 1 {
                    return Err(Error::Parse(format!("'{tok}' is not a prime-power cyclic group")));
                }
                *g.primary.entry(q).or_insert(0) += mult;
            }
        }
        Ok(g)
    }
}

#[derive(Deserialize)]
struct RawTable {
    version: u32,
    source: String,
    rows: Vec<RawRow>,
    stable_series: Vec<u64>,
}

#[derive(Deserialize)]
struct RawRow {
    n: usize,
    groups: Vec<String>,
}

/// The shipped reference data.
#[derive(Clone, Debug)]
pub struct FixtureSet {
    pub version: u32,
    pub source: String,
    rows: BTreeMap<usize, Vec<AbelianGroup>>,
    stable: Vec<u64>,
}

impl FixtureSet {
    pub fn parse(json: &str) -> Result<Self> {
        let raw: RawTable = serde_json::from_str(json)?;
        let mut rows = BTreeMap::new();
        for r in raw.rows {
            let groups = r.groups.iter().map(|g| g.parse()).collect::<Result<Vec<AbelianGroup>>>()?;
            rows.insert(r.n, groups);
        }
        Ok(FixtureSet { version: raw.version, source: raw.source, rows, stable: raw.stable_series })
    }

    pub fn ns(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    pub fn contains(&self, n: usize) -> bool {
        self.rows.contains_key(&n)
    }

    /// `H_i(Br_n; H_1(Σ_n))`; zero for `i = 0` and beyond the printed row.
    pub fn group(&self, n: usize, i: usize) -> Option<AbelianGroup> {
        let row = self.rows.get(&n)?;
        Some(if i == 0 { AbelianGroup::zero() } else { row.get(i - 1).cloned().unwrap_or_default() })
    }

    /// Printed row, index `i - 1`.
    pub fn row(&self, n: usize) -> Option<&[AbelianGroup]> {
        self.rows.get(&n).map(Vec::as_slice)
    }

    pub fn citation(&self, n: usize, i: usize) -> String {
        format!("{}, row n = {n}, column i = {i}", self.source)
    }

    /// Printed coefficients of the stable series, index = power of `q`.
    pub fn stable_terms(&self) -> &[u64] {
        &self.stable
    }

    /// A copy with one entry replaced, for negative controls.
    pub fn with_entry(&self, n: usize, i: usize, g: AbelianGroup) -> Self {
        let mut out = self.clone();
        let row = out.rows.entry(n).or_default();
        if row.len() < i {
            row.resize(i, AbelianGroup::zero());
        }
        row[i - 1] = g;
        out
    }
}

/// The fixtures compiled into the crate.
pub fn table() -> &'static FixtureSet {
    static TABLE: OnceLock<FixtureSet> = OnceLock::new();
    TABLE.get_or_init(|| FixtureSet::parse(TABLE_JSON).expect("shipped fixture parses"))
}

/// Poincaré polynomial `(1 + q) q^{n-1}` of `H_*(B_n; ℚ[t]/(1-t))` for even
/// `n`, as coefficients indexed by degree.
pub fn one_minus_t_poincare(n: usize) -> Vec<usize> {
    let mut v = vec![0; n + 1];
    if n >= 1 {
        v[n - 1] = 1;
        v[n] = 1;
    }
    v
}

/// Whether `st : B_n → B_{n+1}` is asserted to induce an isomorphism on
/// `H_i` with coefficients in `F[t]/(1+t)` or `F[t]/(1-t^2)`, `char F = p`.
pub fn stabilization_is_iso(p: u64, i: usize, n: usize) -> bool {
    match p {
        0 => i + 1 < n,
        2 => 2 * i < n,
        _ => {
            // p(i-1)/(p-1) + 2 < n, with exact rationals.
            let (p, i, n) = (p as i64, i as i64, n as i64);
            p * (i - 1) + 2 * (p - 1) < n * (p - 1)
        }
    }
}

/// Whether `st` is asserted to be onto on `H_i` at `p = 2`.
pub fn stabilization_is_epi_mod2(i: usize, n: usize) -> bool {
    2 * i <= n
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_table_parses() {
        let t = table();
        assert_eq!(t.ns().collect::<Vec<_>>(), (3..=13).collect::<Vec<_>>());
        assert_eq!(t.group(6, 3).unwrap().to_string(), "Z2^2 Z3");
        assert_eq!(t.group(4, 2).unwrap().betti, 1);
        assert_eq!(t.group(13, 7).unwrap().p_rank(2), 6);
        assert!(t.group(3, 0).unwrap().betti == 0 && t.group(3, 5).unwrap() == AbelianGroup::zero());
        assert_eq!(&t.stable_terms()[..4], &[0, 1, 1, 2]);
    }

    #[test]
    fn invariant_factor_round_trip() {
        let g: AbelianGroup = "Z2^3 Z3 Z5".parse().unwrap();
        assert_eq!(g.invariant_factors(), vec![BigInt::from(2), BigInt::from(2), BigInt::from(30)]);
        let tf: Vec<TorsionFactor> = g.invariant_factors().into_iter().map(TorsionFactor::Int).collect();
        assert_eq!(AbelianGroup::from_invariants(0, &tf).unwrap(), g);
        assert!("Z6".parse::<AbelianGroup>().is_err());
        assert_eq!("Z4 Z2".parse::<AbelianGroup>().unwrap().invariant_factors(), vec![BigInt::from(2), BigInt::from(4)]);
    }

    #[test]
    fn stabilization_ranges() {
        assert!(stabilization_is_iso(2, 2, 5) && !stabilization_is_iso(2, 2, 4));
        assert!(stabilization_is_iso(0, 2, 4) && !stabilization_is_iso(0, 3, 4));
        // p = 3: 3(i-1)/2 + 2 < n.
        assert!(stabilization_is_iso(3, 3, 6) && !stabilization_is_iso(3, 3, 5));
    }
}
