use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

pub const MAX_LEN: usize = 62;

/// A generator of an Artin complex: a bit string, read left to right, with
/// an optional mark on the first slot (type B).
///
/// Bits are stored most significant first, so the numeric order of `bits`
/// is the lexicographic order of the strings.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CellString {
    len: u8,
    marked: bool,
    bits: u64,
}

impl CellString {
    pub fn new(bits: u64, len: usize, marked: bool) -> Self {
        assert!(len <= MAX_LEN, "strings longer than {MAX_LEN} are not supported");
        assert!(len == 64 || bits >> len == 0, "bits beyond the string length");
        assert!(!marked || len > 0, "a marked string needs a first slot");
        CellString { len: len as u8, marked, bits }
    }

    pub fn from_slice(s: &[u8], marked: bool) -> Self {
        let bits = s.iter().fold(0u64, |acc, &b| (acc << 1) | (b as u64 & 1));
        Self::new(bits, s.len(), marked)
    }

    pub fn ones(len: usize, marked: bool) -> Self {
        Self::new((1u64 << len) - 1, len, marked)
    }

    pub fn zeros(len: usize, marked: bool) -> Self {
        Self::new(0, len, marked)
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn is_marked(&self) -> bool {
        self.marked
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    /// Number of ones.
    pub fn degree(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn get(&self, k: usize) -> bool {
        assert!(k < self.len());
        (self.bits >> (self.len() - 1 - k)) & 1 == 1
    }

    pub fn to_vec(&self) -> Vec<u8> {
        (0..self.len()).map(|k| self.get(k) as u8).collect()
    }

    /// `self` followed by `other`; the result keeps `self`'s mark.
    pub fn concat(&self, other: &CellString) -> CellString {
        CellString::new((self.bits << other.len) | other.bits, self.len() + other.len(), self.marked)
    }

    /// `self 0 other`.
    pub fn juxtapose(&self, other: &CellString) -> CellString {
        self.concat(&CellString::zeros(1, false)).concat(other)
    }

    /// Appends a trailing 0.
    pub fn append_zero(&self) -> CellString {
        self.concat(&CellString::zeros(1, false))
    }

    pub fn with_mark(&self, marked: bool) -> CellString {
        CellString::new(self.bits, self.len(), marked)
    }

    /// Drops the first `k` slots (and the mark).
    pub fn drop_front(&self, k: usize) -> CellString {
        let len = self.len() - k;
        let mask = if len == 0 { 0 } else { (1u64 << len) - 1 };
        CellString::new(self.bits & mask, len, false)
    }

    /// Slots `[a, b)` as an unmarked string.
    pub fn slice(&self, a: usize, b: usize) -> CellString {
        let len = b - a;
        let shifted = self.bits >> (self.len() - b);
        let mask = if len == 0 { 0 } else { (1u64 << len) - 1 };
        CellString::new(shifted & mask, len, false)
    }

    /// Decomposes `B_1 0 B_2 0 … 0 B_k` into the lengths of the blocks of
    /// ones.
    pub fn blocks(&self) -> Vec<usize> {
        let mut out = vec![0];
        for k in 0..self.len() {
            if self.get(k) {
                *out.last_mut().expect("nonempty") += 1;
            } else {
                out.push(0);
            }
        }
        out
    }

    /// Monomial notation: the string with its last slot dropped, used when
    /// the string ends in 0.
    pub fn monomial(&self) -> String {
        let s = self.to_string();
        s.strip_suffix('0').map(str::to_string).unwrap_or(s)
    }
}

/// All strings of the given length and degree in lexicographic order.
pub fn enumerate(len: usize, degree: usize, marked: bool) -> Vec<CellString> {
    if degree > len {
        return Vec::new();
    }
    let mut out = Vec::new();
    // Gosper's hack walks bit patterns of fixed popcount in increasing order.
    if degree == 0 {
        return vec![CellString::zeros(len, marked)];
    }
    let mut v: u64 = (1u64 << degree) - 1;
    let limit = 1u64 << len;
    while v < limit {
        out.push(CellString::new(v, len, marked));
        let c = v & v.wrapping_neg();
        let r = v + c;
        v = (((r ^ v) >> 2) / c) | r;
    }
    out
}

impl fmt::Display for CellString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for k in 0..self.len() {
            write!(f, "{}", self.get(k) as u8)?;
            if k == 0 && self.marked {
                write!(f, "|")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CellString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CellString({self})")
    }
}

/// Parses `"101"` (unmarked) or `"1|01"` (marked first slot).
impl FromStr for CellString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (marked, body) = match s.find('|') {
            Some(1) => (true, s.replacen('|', "", 1)),
            Some(_) => return Err(Error::Parse(format!("mark must follow the first slot in '{s}'"))),
            None => (false, s.to_string()),
        };
        if body.len() > MAX_LEN {
            return Err(Error::Parse(format!("string '{s}' is too long")));
        }
        let bits = body
            .chars()
            .map(|c| match c {
                '0' => Ok(0u8),
                '1' => Ok(1u8),
                _ => Err(Error::Parse(format!("unexpected '{c}' in cell '{s}'"))),
            })
            .collect::<Result<Vec<u8>>>()?;
        Ok(CellString::from_slice(&bits, marked))
    }
}

/// Orders cells by degree first, then lexicographically.
pub fn graded_cmp(a: &CellString, b: &CellString) -> Ordering {
    (a.degree(), a.bits).cmp(&(b.degree(), b.bits))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let c: CellString = "1|01".parse().unwrap();
        assert!(c.is_marked());
        assert_eq!(c.to_string(), "1|01");
        assert_eq!(c.degree(), 2);
        assert_eq!("0110".parse::<CellString>().unwrap().to_vec(), vec![0, 1, 1, 0]);
        assert!("01|1".parse::<CellString>().is_err());
    }

    #[test]
    fn enumeration_is_lexicographic() {
        let cells: Vec<String> = enumerate(4, 2, false).iter().map(|c| c.to_string()).collect();
        assert_eq!(cells, ["0011", "0101", "0110", "1001", "1010", "1100"]);
        assert_eq!(enumerate(3, 0, true)[0].to_string(), "0|00");
        assert_eq!(enumerate(0, 0, false).len(), 1);
    }

    #[test]
    fn blocks_and_slices() {
        let c: CellString = "1101110".parse().unwrap();
        assert_eq!(c.blocks(), vec![2, 3, 0]);
        assert_eq!(c.slice(2, 5).to_string(), "011");
        assert_eq!(c.drop_front(3).to_string(), "1110");
        assert_eq!(c.monomial(), "110111");
        let a: CellString = "1".parse().unwrap();
        assert_eq!(a.juxtapose(&a).to_string(), "101");
    }
}
