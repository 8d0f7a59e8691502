use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A finite binary word used as a forbidden or induced pattern. Codes of
/// length `d+1` pair with parameter `d`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Code(Vec<bool>);

impl Code {
    pub fn new(bits: Vec<bool>) -> Result<Self> {
        if bits.is_empty() {
            return Err(Error::InvalidInput("a code must be nonempty".into()));
        }
        Ok(Code(bits))
    }

    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Result<Self> {
        Code::new(bits.into_iter().collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn bit(&self, i: usize) -> bool {
        self.0[i]
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    /// All `2^m` codes of length `m`, in word order.
    pub fn all_of_length(m: usize) -> Vec<Code> {
        assert!(m >= 1 && m < 32);
        (0..1u32 << m)
            .map(|mask| Code((0..m).map(|i| (mask >> (m - 1 - i)) & 1 == 1).collect()))
            .collect()
    }
}

impl FromStr for Code {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut bits = Vec::with_capacity(s.len());
        for c in s.chars() {
            match c {
                '0' => bits.push(false),
                '1' => bits.push(true),
                other => {
                    return Err(Error::InvalidInput(format!(
                        "code may contain only 0 and 1, found {other:?}"
                    )))
                }
            }
        }
        Code::new(bits)
    }
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Code({self})")
    }
}

/// Greedy subsequence scan over an arbitrary bit stream. Matching the
/// earliest possible position for each needle bit never hurts: any later
/// match can be shifted left bit by bit.
pub(crate) fn subsequence_in<I: IntoIterator<Item = bool>>(needle: &[bool], haystack: I) -> bool {
    let mut want = needle.iter();
    let mut next = want.next();
    for bit in haystack {
        match next {
            None => return true,
            Some(&b) if b == bit => next = want.next(),
            Some(_) => {}
        }
    }
    next.is_none()
}

/// `eta ⊴ mu`: some order-preserving embedding matches every bit of `eta`
/// into `mu`.
pub fn is_subsequence(eta: &Code, mu: &Code) -> bool {
    subsequence_in(eta.bits(), mu.bits().iter().copied())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn code(s: &str) -> Code {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(code("0101").to_string(), "0101");
        assert!("".parse::<Code>().is_err());
        assert!("012".parse::<Code>().is_err());
    }

    #[test]
    fn subsequence_examples() {
        assert!(is_subsequence(&code("11"), &code("101"))); // positions 0,2
        assert!(!is_subsequence(&code("00"), &code("101"))); // only one 0
        let eta = code("0110");
        assert!(is_subsequence(&eta, &eta)); // identity embedding
    }

    #[test]
    fn all_of_length_is_in_word_order() {
        let codes = Code::all_of_length(2);
        let words: Vec<String> = codes.iter().map(Code::to_string).collect();
        assert_eq!(words, vec!["00", "01", "10", "11"]);
    }
}
