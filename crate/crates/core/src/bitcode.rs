// Copyright 2026 The apriori-goal Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Unbounded-width bit codes.
//!
//! A [`BitCode`] is a non-negative integer whose set bits name binary
//! properties: property `i` has code `2^i`. Records and rule premises share
//! this representation, so set containment becomes `(x & r) == x` and
//! extending a premise by a higher-indexed property is plain addition.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, BitAnd, BitOr};
use std::str::FromStr;

use num_bigint::BigUint;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

const LIMB_BITS: usize = 64;

/// Little-endian `u64` limbs with no trailing zero limbs, so equal values
/// always have equal representations.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct BitCode {
    limbs: Vec<u64>,
}

/// Number of `u64` words needed to hold `bits` bits.
pub fn words_for_bits(bits: usize) -> usize {
    bits.div_ceil(LIMB_BITS)
}

impl BitCode {
    pub fn zero() -> Self {
        BitCode { limbs: Vec::new() }
    }

    /// The code `2^index` of a single property.
    pub fn bit(index: usize) -> Self {
        let mut code = BitCode::zero();
        code.set(index);
        code
    }

    pub fn from_u64(value: u64) -> Self {
        BitCode::from_limbs(vec![value])
    }

    pub fn from_limbs(mut limbs: Vec<u64>) -> Self {
        while limbs.last() == Some(&0) {
            limbs.pop();
        }
        BitCode { limbs }
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        let mut code = BitCode::zero();
        for i in indices {
            code.set(i);
        }
        code
    }

    pub fn limbs(&self) -> &[u64] {
        &self.limbs
    }

    /// Limbs zero-extended to exactly `words` entries.
    ///
    /// Panics if the code does not fit.
    pub fn to_words(&self, words: usize) -> Vec<u64> {
        assert!(self.limbs.len() <= words, "bit code wider than {words} words");
        let mut out = self.limbs.clone();
        out.resize(words, 0);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.limbs.is_empty()
    }

    pub fn set(&mut self, index: usize) {
        let (word, bit) = (index / LIMB_BITS, index % LIMB_BITS);
        if self.limbs.len() <= word {
            self.limbs.resize(word + 1, 0);
        }
        self.limbs[word] |= 1 << bit;
    }

    pub fn test(&self, index: usize) -> bool {
        let (word, bit) = (index / LIMB_BITS, index % LIMB_BITS);
        self.limbs.get(word).is_some_and(|w| w >> bit & 1 == 1)
    }

    pub fn count_ones(&self) -> usize {
        self.limbs.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Index of the highest set bit, `None` for zero.
    pub fn highest_bit(&self) -> Option<usize> {
        let top = self.limbs.last()?;
        Some((self.limbs.len() - 1) * LIMB_BITS + (LIMB_BITS - 1 - top.leading_zeros() as usize))
    }

    /// Number of significant bits (`highest_bit + 1`, zero for zero).
    pub fn bit_len(&self) -> usize {
        self.highest_bit().map_or(0, |b| b + 1)
    }

    /// True when every bit of `self` is also set in `other`.
    pub fn is_subset_of(&self, other: &BitCode) -> bool {
        self.limbs.len() <= other.limbs.len() && self.limbs.iter().zip(&other.limbs).all(|(a, b)| a & b == *a)
    }

    pub fn is_disjoint(&self, other: &BitCode) -> bool {
        self.limbs.iter().zip(&other.limbs).all(|(a, b)| a & b == 0)
    }

    /// Set bit indices in ascending order.
    pub fn ones(&self) -> Ones<'_> {
        Ones { limbs: &self.limbs, word: 0, current: self.limbs.first().copied().unwrap_or(0) }
    }

    /// `self` with its highest bit cleared.
    pub fn without_highest(&self) -> BitCode {
        match self.highest_bit() {
            None => BitCode::zero(),
            Some(b) => {
                let mut limbs = self.limbs.clone();
                limbs[b / LIMB_BITS] &= !(1 << (b % LIMB_BITS));
                BitCode::from_limbs(limbs)
            }
        }
    }

    pub fn to_biguint(&self) -> BigUint {
        let digits: Vec<u32> = self.limbs.iter().flat_map(|w| [*w as u32, (*w >> 32) as u32]).collect();
        BigUint::new(digits)
    }

    pub fn from_biguint(value: &BigUint) -> Self {
        BitCode::from_limbs(value.to_u64_digits())
    }
}

pub struct Ones<'a> {
    limbs: &'a [u64],
    word: usize,
    current: u64,
}

impl Iterator for Ones<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.word * LIMB_BITS + bit);
            }
            self.word += 1;
            self.current = *self.limbs.get(self.word)?;
        }
    }
}

impl Ord for BitCode {
    fn cmp(&self, other: &Self) -> Ordering {
        self.limbs.len().cmp(&other.limbs.len()).then_with(|| self.limbs.iter().rev().cmp(other.limbs.iter().rev()))
    }
}

impl PartialOrd for BitCode {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &BitCode {
    type Output = BitCode;

    fn add(self, rhs: &BitCode) -> BitCode {
        let len = self.limbs.len().max(rhs.limbs.len());
        let mut out = Vec::with_capacity(len + 1);
        let mut carry = false;
        for i in 0..len {
            let a = self.limbs.get(i).copied().unwrap_or(0);
            let b = rhs.limbs.get(i).copied().unwrap_or(0);
            let (s1, c1) = a.overflowing_add(b);
            let (s2, c2) = s1.overflowing_add(carry as u64);
            out.push(s2);
            carry = c1 || c2;
        }
        if carry {
            out.push(1);
        }
        BitCode::from_limbs(out)
    }
}

impl BitAnd for &BitCode {
    type Output = BitCode;

    fn bitand(self, rhs: &BitCode) -> BitCode {
        BitCode::from_limbs(self.limbs.iter().zip(&rhs.limbs).map(|(a, b)| a & b).collect())
    }
}

impl BitOr for &BitCode {
    type Output = BitCode;

    fn bitor(self, rhs: &BitCode) -> BitCode {
        let len = self.limbs.len().max(rhs.limbs.len());
        BitCode::from_limbs(
            (0..len)
                .map(|i| self.limbs.get(i).copied().unwrap_or(0) | rhs.limbs.get(i).copied().unwrap_or(0))
                .collect(),
        )
    }
}

impl fmt::Display for BitCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.limbs.as_slice() {
            [] => f.write_str("0"),
            [w] => write!(f, "{w}"),
            _ => write!(f, "{}", self.to_biguint()),
        }
    }
}

impl fmt::Debug for BitCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitCode({self})")
    }
}

impl FromStr for BitCode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let value = BigUint::parse_bytes(s.trim().as_bytes(), 10).ok_or_else(|| Error::InvalidCode(s.to_string()))?;
        Ok(BitCode::from_biguint(&value))
    }
}

// Codes may exceed 64 bits, so they travel as decimal strings.
impl Serialize for BitCode {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for BitCode {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn single_bits_and_ordering() {
        assert_eq!(BitCode::bit(0), BitCode::from_u64(1));
        assert_eq!(BitCode::bit(4), BitCode::from_u64(16));
        assert!(BitCode::bit(64) > BitCode::from_u64(u64::MAX));
        assert_eq!(BitCode::bit(100).highest_bit(), Some(100));
        assert_eq!(BitCode::zero().highest_bit(), None);
        assert_eq!(BitCode::from_indices([0, 2]).to_string(), "5");
    }

    #[test]
    fn wide_codes_print_in_decimal() {
        let code = BitCode::bit(100);
        assert_eq!(code.to_string(), "1267650600228229401496703205376");
        assert_eq!("1267650600228229401496703205376".parse::<BitCode>().unwrap(), code);
        assert!("12x".parse::<BitCode>().is_err());
    }

    #[test]
    fn addition_carries_across_limbs() {
        let a = BitCode::from_u64(u64::MAX);
        let b = BitCode::from_u64(1);
        assert_eq!(&a + &b, BitCode::bit(64));
    }

    #[test]
    fn without_highest_drops_top_bit() {
        assert_eq!(BitCode::from_indices([1, 3, 70]).without_highest(), BitCode::from_indices([1, 3]));
        assert_eq!(BitCode::bit(64).without_highest(), BitCode::zero());
    }

    fn small_sets() -> impl Strategy<Value = std::collections::BTreeSet<usize>> {
        proptest::collection::btree_set(0usize..200, 0..12)
    }

    proptest! {
        #[test]
        fn ones_round_trip(set in small_sets()) {
            let code = BitCode::from_indices(set.iter().copied());
            prop_assert_eq!(code.ones().collect::<Vec<_>>(), set.iter().copied().collect::<Vec<_>>());
            prop_assert_eq!(code.count_ones(), set.len());
            let back: BitCode = code.to_string().parse().unwrap();
            prop_assert_eq!(back, code);
        }

        #[test]
        fn disjoint_addition_is_union(a in small_sets(), b in small_sets()) {
            let b: std::collections::BTreeSet<usize> = b.difference(&a).copied().collect();
            let x = BitCode::from_indices(a.iter().copied());
            let y = BitCode::from_indices(b.iter().copied());
            prop_assert_eq!(&x + &y, &x | &y);
        }

        #[test]
        fn subset_matches_set_inclusion(a in small_sets(), b in small_sets()) {
            let x = BitCode::from_indices(a.iter().copied());
            let y = BitCode::from_indices(b.iter().copied());
            prop_assert_eq!(x.is_subset_of(&y), a.is_subset(&b));
            prop_assert_eq!((&x & &y) == x, a.is_subset(&b));
        }

        #[test]
        fn order_matches_biguint(a in small_sets(), b in small_sets()) {
            let x = BitCode::from_indices(a);
            let y = BitCode::from_indices(b);
            prop_assert_eq!(x.cmp(&y), x.to_biguint().cmp(&y.to_biguint()));
        }
    }
}
