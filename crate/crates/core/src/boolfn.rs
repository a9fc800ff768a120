// SPDX-License-Identifier: Apache-2.0

//! Binary strings, index subsets and the boolean algebra `F_n` of functions
//! `{0,1}^n -> {0,1}` that take the value 1 at the all-zero string.
//!
//! Strings are packed into a `u16` with bit `i-1` holding `s_i`; text forms
//! put `s_1` leftmost. Truth tables are stored as `2^n` bits in `u64` words
//! indexed by the packed string, so lattice operations are word-parallel.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_N: usize = 16;

fn check_arity(n: usize) -> Result<()> {
    if (1..=MAX_N).contains(&n) {
        Ok(())
    } else {
        Err(Error::InvalidArity(n))
    }
}

fn full_mask(n: usize) -> u16 {
    if n >= 16 {
        u16::MAX
    } else {
        (1u16 << n) - 1
    }
}

/// A subset of `[n]`, bit `i-1` marking index `i`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset(pub u16);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn full(n: usize) -> Subset {
        Subset(full_mask(n))
    }

    pub fn singleton(i: usize) -> Subset {
        debug_assert!((1..=MAX_N).contains(&i));
        Subset(1 << (i - 1))
    }

    /// Builds a subset from 1-based indices, checking each against `n`.
    pub fn from_indices(n: usize, indices: &[usize]) -> Result<Subset> {
        let mut mask = 0u16;
        for &i in indices {
            if i == 0 || i > n {
                return Err(Error::IndexOutOfRange { index: i, n });
            }
            mask |= 1 << (i - 1);
        }
        Ok(Subset(mask))
    }

    pub fn mask(self) -> u16 {
        self.0
    }

    pub fn contains(self, i: usize) -> bool {
        i >= 1 && i <= MAX_N && self.0 & (1 << (i - 1)) != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_proper_subset(self, other: Subset) -> bool {
        self.is_subset(other) && self != other
    }

    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    pub fn intersection(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    pub fn difference(self, other: Subset) -> Subset {
        Subset(self.0 & !other.0)
    }

    pub fn complement(self, n: usize) -> Subset {
        Subset(!self.0 & full_mask(n))
    }

    /// Moves every index up by `m`, as for the second block of `[m] ⊕ [k]`.
    pub fn shift(self, m: usize) -> Subset {
        Subset(((self.0 as u32) << m) as u16)
    }

    /// 1-based indices in increasing order.
    pub fn indices(self) -> impl Iterator<Item = usize> {
        let mask = self.0;
        (0..16).filter(move |b| mask & (1 << b) != 0).map(|b| b + 1)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.indices().collect()
    }

    /// Image of the subset under a map of 1-based indices.
    pub fn map(self, f: impl Fn(usize) -> usize) -> Subset {
        Subset(self.indices().fold(0u16, |acc, i| acc | 1 << (f(i) - 1)))
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.indices().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

/// An element of `{0,1}^n`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitString {
    n: u8,
    bits: u16,
}

impl BitString {
    pub fn new(n: usize, bits: u16) -> Result<Self> {
        check_arity(n)?;
        if bits & !full_mask(n) != 0 {
            return Err(Error::Precondition(format!(
                "bit pattern {bits:#x} has bits above position {n}"
            )));
        }
        Ok(BitString { n: n as u8, bits })
    }

    /// The all-zero string θ_n.
    pub fn zero(n: usize) -> Result<Self> {
        Self::new(n, 0)
    }

    /// `e^i`: only `s_i` set.
    pub fn unit(n: usize, i: usize) -> Result<Self> {
        Self::from_subset(n, Subset::from_indices(n, &[i])?)
    }

    /// `e^{i,j}`: exactly `s_i` and `s_j` set.
    pub fn pair(n: usize, i: usize, j: usize) -> Result<Self> {
        if i == j {
            return Err(Error::Precondition(format!("e^{{i,j}} needs i != j, got {i}")));
        }
        Self::from_subset(n, Subset::from_indices(n, &[i, j])?)
    }

    pub fn from_subset(n: usize, ones: Subset) -> Result<Self> {
        Self::new(n, ones.0)
    }

    pub fn n(self) -> usize {
        self.n as usize
    }

    pub fn bits(self) -> u16 {
        self.bits
    }

    pub fn ones(self) -> Subset {
        Subset(self.bits)
    }

    /// `s_i` for 1-based `i`.
    pub fn get(self, i: usize) -> bool {
        self.ones().contains(i)
    }

    pub fn is_zero(self) -> bool {
        self.bits == 0
    }

    /// Concatenation `s = s¹s²`.
    pub fn concat(self, other: BitString) -> Result<BitString> {
        let n = self.n() + other.n();
        check_arity(n)?;
        Ok(BitString {
            n: n as u8,
            bits: self.bits | ((other.bits as u32) << self.n) as u16,
        })
    }

    /// Splits into the first `m` and the remaining `n - m` positions.
    pub fn split(self, m: usize) -> Result<(BitString, BitString)> {
        if m == 0 || m >= self.n() {
            return Err(Error::Precondition(format!("cannot split n={} at {m}", self.n)));
        }
        let lo = BitString { n: m as u8, bits: self.bits & full_mask(m) };
        let hi = BitString { n: (self.n() - m) as u8, bits: self.bits >> m };
        Ok((lo, hi))
    }

    /// Reads `s_1 s_2 ... s_n` written leftmost-first.
    pub fn parse(text: &str) -> Result<BitString> {
        let text = text.trim();
        check_arity(text.len())?;
        let mut bits = 0u16;
        for (k, c) in text.chars().enumerate() {
            match c {
                '0' => {}
                '1' => bits |= 1 << k,
                _ => {
                    return Err(Error::Syntax { pos: k, msg: format!("expected 0 or 1, found {c:?}") })
                }
            }
        }
        BitString::new(text.len(), bits)
    }

    /// Every string of length `n`, in increasing packed order.
    pub fn all(n: usize) -> impl Iterator<Item = BitString> {
        let n8 = n as u8;
        (0..(1u32 << n)).map(move |b| BitString { n: n8, bits: b as u16 })
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 1..=self.n() {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitString({self})")
    }
}

/// A permutation σ of `[n]`, stored by images σ(i).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    pub fn identity(n: usize) -> Permutation {
        Permutation { images: (0..n as u8).collect() }
    }

    /// `images[i-1] = σ(i)`, 1-based.
    pub fn from_images(images: &[usize]) -> Result<Permutation> {
        let n = images.len();
        check_arity(n).map_err(|_| Error::InvalidPermutation(format!("length {n}")))?;
        let mut seen = vec![false; n];
        for &im in images {
            if im == 0 || im > n {
                return Err(Error::InvalidPermutation(format!("image {im} outside [1, {n}]")));
            }
            if std::mem::replace(&mut seen[im - 1], true) {
                return Err(Error::InvalidPermutation(format!("image {im} repeated")));
            }
        }
        Ok(Permutation { images: images.iter().map(|&i| (i - 1) as u8).collect() })
    }

    /// The transposition of `i` and `j`.
    pub fn swap(n: usize, i: usize, j: usize) -> Result<Permutation> {
        let mut images: Vec<usize> = (1..=n).collect();
        if i == 0 || j == 0 || i > n || j > n {
            return Err(Error::InvalidPermutation(format!("swap({i},{j}) outside [1, {n}]")));
        }
        images.swap(i - 1, j - 1);
        Permutation::from_images(&images)
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    /// σ(i), 1-based.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1] as usize + 1
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u8; self.images.len()];
        for (i, &im) in self.images.iter().enumerate() {
            inv[im as usize] = i as u8;
        }
        Permutation { images: inv }
    }

    /// σ(s) = s ∘ σ^{-1}: bit `i` of `s` moves to position σ(i).
    pub fn act(&self, s: u16) -> u16 {
        let mut t = 0u16;
        for (i, &im) in self.images.iter().enumerate() {
            t |= ((s >> i) & 1) << im;
        }
        t
    }

    pub fn act_on_subset(&self, set: Subset) -> Subset {
        Subset(self.act(set.0))
    }

    /// All permutations of `[n]` in lexicographic order of images.
    pub fn all(n: usize) -> Vec<Permutation> {
        fn rec(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Permutation>) {
            let n = used.len();
            if prefix.len() == n {
                out.push(Permutation::from_images(prefix).expect("bijection by construction"));
                return;
            }
            for v in 1..=n {
                if !used[v - 1] {
                    used[v - 1] = true;
                    prefix.push(v);
                    rec(prefix, used, out);
                    prefix.pop();
                    used[v - 1] = false;
                }
            }
        }
        let mut out = Vec::new();
        rec(&mut Vec::new(), &mut vec![false; n], &mut out);
        out
    }
}

/// The input/output decomposition of `[n]` read off a function.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IOSplit {
    pub inputs: Subset,
    pub outputs: Subset,
}

impl Serialize for Subset {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.indices())
    }
}

impl<'de> Deserialize<'de> for Subset {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v: Vec<usize> = Vec::deserialize(d)?;
        Subset::from_indices(MAX_N, &v).map_err(serde::de::Error::custom)
    }
}

/// Binary operations dispatched by [`combine`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BinOp {
    Meet,
    Join,
    Tensor,
    Par,
    /// `f ◁ g`: `f` on the first block, in the causal future of `g`.
    CausalLeft,
    /// `g ◁ f`: `g` on the second block, in the causal future of `f`.
    CausalRight,
}

impl BinOp {
    pub const ALL: [BinOp; 6] =
        [BinOp::Meet, BinOp::Join, BinOp::Tensor, BinOp::Par, BinOp::CausalLeft, BinOp::CausalRight];

    pub fn is_product(self) -> bool {
        !matches!(self, BinOp::Meet | BinOp::Join)
    }
}

/// A function in `F_n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BoolFn {
    n: u8,
    table: Vec<u64>,
}

fn words_for(n: usize) -> usize {
    ((1usize << n) + 63) / 64
}

/// Mask of the valid bits in the single word of an n < 6 table.
fn tail_mask(n: usize) -> u64 {
    if n >= 6 {
        u64::MAX
    } else {
        (1u64 << (1 << n)) - 1
    }
}

impl BoolFn {
    fn raw(n: usize, fill: bool) -> BoolFn {
        let w = if fill { u64::MAX } else { 0 };
        let mut table = vec![w; words_for(n)];
        if fill {
            table[0] &= tail_mask(n);
        }
        BoolFn { n: n as u8, table }
    }

    fn set(&mut self, idx: usize, value: bool) {
        let (w, b) = (idx / 64, idx % 64);
        if value {
            self.table[w] |= 1 << b;
        } else {
            self.table[w] &= !(1 << b);
        }
    }

    /// Value at the packed string `idx`, unchecked against `n`.
    #[inline]
    pub fn get(&self, idx: u16) -> bool {
        let idx = idx as usize;
        (self.table[idx / 64] >> (idx % 64)) & 1 == 1
    }

    /// Builds a function from a predicate on packed strings.
    pub fn from_fn(n: usize, pred: impl Fn(u16) -> bool) -> Result<BoolFn> {
        check_arity(n)?;
        let mut f = BoolFn::raw(n, false);
        for idx in 0..(1u32 << n) {
            if pred(idx as u16) {
                f.set(idx as usize, true);
            }
        }
        if !f.get(0) {
            return Err(Error::MissingTheta);
        }
        Ok(f)
    }

    pub fn from_support(n: usize, support: &[BitString]) -> Result<BoolFn> {
        check_arity(n)?;
        let mut f = BoolFn::raw(n, false);
        for s in support {
            if s.n() != n {
                return Err(Error::DimensionMismatch { expected: n, found: s.n() });
            }
            f.set(s.bits() as usize, true);
        }
        if !f.get(0) {
            return Err(Error::MissingTheta);
        }
        Ok(f)
    }

    /// Interprets an integer-valued table (indexed by packed string) as a
    /// function in `F_n`, failing on any value outside `{0,1}`.
    pub fn from_int_table(n: usize, values: &[i64]) -> Result<BoolFn> {
        check_arity(n)?;
        if values.len() != 1 << n {
            return Err(Error::Precondition(format!(
                "table of length {} for n={n}",
                values.len()
            )));
        }
        let mut f = BoolFn::raw(n, false);
        for (idx, &v) in values.iter().enumerate() {
            match v {
                0 => {}
                1 => f.set(idx, true),
                _ => {
                    let s = BitString::new(n, idx as u16)?;
                    return Err(Error::NonBoolean { string: s.to_string(), value: v });
                }
            }
        }
        if !f.get(0) {
            return Err(Error::MissingTheta);
        }
        Ok(f)
    }

    /// The top element `1_n`.
    pub fn one(n: usize) -> Result<BoolFn> {
        check_arity(n)?;
        Ok(BoolFn::raw(n, true))
    }

    /// The bottom element `p_n`, supported on θ alone.
    pub fn bottom(n: usize) -> Result<BoolFn> {
        check_arity(n)?;
        let mut f = BoolFn::raw(n, false);
        f.set(0, true);
        Ok(f)
    }

    /// `p_T(s) = ∏_{i∈T} (1 - s_i)`.
    pub fn basis(n: usize, t: Subset) -> Result<BoolFn> {
        check_arity(n)?;
        if !t.is_subset(Subset::full(n)) {
            let index = t.indices().find(|&i| i > n).unwrap_or(0);
            return Err(Error::IndexOutOfRange { index, n });
        }
        BoolFn::from_fn(n, |s| s & t.0 == 0)
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn eval(&self, s: BitString) -> Result<bool> {
        if s.n() != self.n() {
            return Err(Error::DimensionMismatch { expected: self.n(), found: s.n() });
        }
        Ok(self.get(s.bits()))
    }

    /// Packed strings where the function is 1.
    pub fn support(&self) -> impl Iterator<Item = u16> + '_ {
        (0..(1u32 << self.n)).map(|i| i as u16).filter(move |&i| self.get(i))
    }

    pub fn support_strings(&self) -> Vec<BitString> {
        let n = self.n();
        self.support().map(|b| BitString::new(n, b).expect("in range")).collect()
    }

    pub fn support_size(&self) -> usize {
        self.table.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Raw truth-table words; bit `s` of the table is `f(s)`.
    pub fn words(&self) -> &[u64] {
        &self.table
    }

    fn check_same_n(&self, other: &BoolFn) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { expected: self.n(), found: other.n() });
        }
        Ok(())
    }

    fn zip(&self, other: &BoolFn, op: impl Fn(u64, u64) -> u64) -> BoolFn {
        BoolFn {
            n: self.n,
            table: self.table.iter().zip(&other.table).map(|(a, b)| op(*a, *b)).collect(),
        }
    }

    pub fn meet(&self, other: &BoolFn) -> Result<BoolFn> {
        self.check_same_n(other)?;
        Ok(self.zip(other, |a, b| a & b))
    }

    pub fn join(&self, other: &BoolFn) -> Result<BoolFn> {
        self.check_same_n(other)?;
        Ok(self.zip(other, |a, b| a | b))
    }

    /// Pointwise `self <= other`.
    pub fn leq(&self, other: &BoolFn) -> bool {
        self.n == other.n && self.table.iter().zip(&other.table).all(|(a, b)| a & !b == 0)
    }

    /// `f* = 1 - f + p_n`.
    pub fn complement(&self) -> BoolFn {
        let mut table: Vec<u64> = self.table.iter().map(|w| !w).collect();
        table[0] &= tail_mask(self.n());
        table[0] |= 1;
        BoolFn { n: self.n, table }
    }

    fn product(&self, other: &BoolFn, rule: impl Fn(u16, u16) -> bool) -> Result<BoolFn> {
        let m = self.n();
        let n = m + other.n();
        check_arity(n)?;
        let lo = full_mask(m);
        let mut out = BoolFn::raw(n, false);
        for idx in 0..(1u32 << n) {
            let idx = idx as u16;
            if rule(idx & lo, ((idx as u32) >> m) as u16) {
                out.set(idx as usize, true);
            }
        }
        Ok(out)
    }

    /// `(f ⊗ g)(s¹s²) = f(s¹) g(s²)`.
    pub fn tensor(&self, other: &BoolFn) -> Result<BoolFn> {
        self.product(other, |a, b| self.get(a) && other.get(b))
    }

    /// `f ⅋ g = (f* ⊗ g*)*`.
    pub fn par(&self, other: &BoolFn) -> Result<BoolFn> {
        Ok(self.complement().tensor(&other.complement())?.complement())
    }

    /// `f ◁ g`: `f(s¹)` when `s¹ ≠ θ`, else `g(s²)`.
    pub fn causal(&self, other: &BoolFn) -> Result<BoolFn> {
        self.product(other, |a, b| if a != 0 { self.get(a) } else { other.get(b) })
    }

    /// `g ◁ f` with `f = self` on the first block: `g(s²)` when `s² ≠ θ`,
    /// else `f(s¹)`.
    pub fn causal_after(&self, other: &BoolFn) -> Result<BoolFn> {
        self.product(other, |a, b| if b != 0 { other.get(b) } else { self.get(a) })
    }

    /// `(f ∘ σ)(s) = f(σ(s))`.
    pub fn permute(&self, sigma: &Permutation) -> Result<BoolFn> {
        if sigma.n() != self.n() {
            return Err(Error::DimensionMismatch { expected: self.n(), found: sigma.n() });
        }
        let mut out = BoolFn::raw(self.n(), false);
        for idx in 0..(1u32 << self.n) {
            if self.get(sigma.act(idx as u16)) {
                out.set(idx as usize, true);
            }
        }
        Ok(out)
    }

    /// `I_f = {i : f(e^i) = 0}`, `O_f` the rest.
    pub fn io_split(&self) -> IOSplit {
        let mut outputs = Subset::EMPTY;
        for i in 1..=self.n() {
            if self.get(1 << (i - 1)) {
                outputs = outputs.union(Subset::singleton(i));
            }
        }
        IOSplit { inputs: outputs.complement(self.n()), outputs }
    }

    /// `p_{I_f} <= f <= p_{O_f}^*`.
    pub fn is_subtype(&self) -> bool {
        let split = self.io_split();
        let lower = BoolFn::basis(self.n(), split.inputs).expect("valid subset");
        let upper = BoolFn::basis(self.n(), split.outputs).expect("valid subset").complement();
        lower.leq(self) && self.leq(&upper)
    }

    pub fn to_json(&self) -> BoolFnJson {
        BoolFnJson {
            n: self.n(),
            support: self.support_strings().iter().map(|s| s.to_string()).collect(),
        }
    }

    pub fn from_json(json: &BoolFnJson) -> Result<BoolFn> {
        let support = json
            .support
            .iter()
            .map(|s| {
                let b = BitString::parse(s)?;
                if b.n() != json.n {
                    return Err(Error::DimensionMismatch { expected: json.n, found: b.n() });
                }
                Ok(b)
            })
            .collect::<Result<Vec<_>>>()?;
        BoolFn::from_support(json.n, &support)
    }
}

impl fmt::Debug for BoolFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let support: Vec<String> = self.support_strings().iter().map(|s| s.to_string()).collect();
        write!(f, "BoolFn(n={}, supp={{{}}})", self.n, support.join(","))
    }
}

/// `{"n": int, "support": ["0110", ...]}` with `s_1` leftmost.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoolFnJson {
    pub n: usize,
    pub support: Vec<String>,
}

/// Single dispatch point for the binary operations.
///
/// Meet and join need equal `n`; the products act on the fixed decomposition
/// `[f.n] ⊕ [g.n]`.
pub fn combine(f: &BoolFn, g: &BoolFn, op: BinOp) -> Result<BoolFn> {
    match op {
        BinOp::Meet => f.meet(g),
        BinOp::Join => f.join(g),
        BinOp::Tensor => f.tensor(g),
        BinOp::Par => f.par(g),
        BinOp::CausalLeft => f.causal(g),
        BinOp::CausalRight => f.causal_after(g),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str) -> BitString {
        BitString::parse(text).unwrap()
    }

    fn gamma2() -> BoolFn {
        // 1_2 - p_{1} + p_{1,2}, evaluated term by term
        BoolFn::from_fn(2, |b| {
            let p1 = (b & 1 == 0) as i64;
            let p12 = (b == 0) as i64;
            1 - p1 + p12 == 1
        })
        .unwrap()
    }

    #[test]
    fn bitstring_text_is_leftmost_first() {
        let b = s("0110");
        assert!(!b.get(1) && b.get(2) && b.get(3) && !b.get(4));
        assert_eq!(b.to_string(), "0110");
        assert_eq!(s("1000").bits(), 1);
        assert_eq!(BitString::pair(4, 2, 3).unwrap(), b);
        assert!(BitString::pair(3, 2, 2).is_err());
        assert!(BitString::new(17, 0).is_err());
        assert!(BitString::new(2, 4).is_err());
    }

    #[test]
    fn concat_and_split_round_trip() {
        let a = s("10");
        let b = s("011");
        let c = a.concat(b).unwrap();
        assert_eq!(c.to_string(), "10011");
        assert_eq!(c.split(2).unwrap(), (a, b));
    }

    #[test]
    fn top_and_bottom() {
        let one = BoolFn::one(3).unwrap();
        let bot = BoolFn::bottom(3).unwrap();
        for x in BitString::all(3) {
            assert!(one.eval(x).unwrap());
            assert_eq!(bot.eval(x).unwrap(), x.is_zero());
        }
        assert_eq!(one.complement(), bot);
        assert_eq!(bot.complement(), one);
    }

    #[test]
    fn eval_rejects_dimension_mismatch() {
        let one = BoolFn::one(3).unwrap();
        assert!(matches!(one.eval(s("01")), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn gamma2_values() {
        let g = gamma2();
        assert!(!g.eval(s("01")).unwrap());
        assert!(g.eval(s("10")).unwrap());
        let split = g.io_split();
        assert_eq!(split.inputs, Subset::singleton(2));
        assert_eq!(split.outputs, Subset::singleton(1));
    }

    #[test]
    fn basis_functions() {
        assert_eq!(BoolFn::basis(3, Subset::EMPTY).unwrap(), BoolFn::one(3).unwrap());
        assert_eq!(BoolFn::basis(3, Subset::full(3)).unwrap(), BoolFn::bottom(3).unwrap());
        let p1 = BoolFn::basis(2, Subset::singleton(1)).unwrap();
        let supp: Vec<String> = p1.support_strings().iter().map(|x| x.to_string()).collect();
        assert_eq!(supp, vec!["00", "01"]);
        assert!(matches!(
            BoolFn::basis(2, Subset::singleton(3)),
            Err(Error::IndexOutOfRange { index: 3, n: 2 })
        ));
    }

    #[test]
    fn complement_of_p1_is_gamma2() {
        let p1 = BoolFn::basis(2, Subset::singleton(1)).unwrap();
        assert_eq!(p1.complement(), gamma2());
    }

    #[test]
    fn tensor_of_channels_blocks_cross_strings() {
        let fns = combine(&gamma2(), &gamma2(), BinOp::Tensor).unwrap();
        assert!(!fns.eval(s("0110")).unwrap());
        assert_eq!(combine(&fns, &fns, BinOp::Meet).unwrap(), fns);
    }

    #[test]
    fn causal_of_bottom_and_top() {
        let p1 = BoolFn::bottom(1).unwrap();
        let one = BoolFn::one(1).unwrap();
        let h = combine(&p1, &one, BinOp::CausalLeft).unwrap();
        assert_eq!(h, BoolFn::basis(2, Subset::singleton(1)).unwrap());
        let supp: Vec<String> = h.support_strings().iter().map(|x| x.to_string()).collect();
        assert_eq!(supp, vec!["00", "01"]);
    }

    #[test]
    fn swap_of_gamma2() {
        let sw = Permutation::swap(2, 1, 2).unwrap();
        let tilde = BoolFn::from_fn(2, |b| {
            let p2 = (b & 2 == 0) as i64;
            let p12 = (b == 0) as i64;
            1 - p2 + p12 == 1
        })
        .unwrap();
        assert_eq!(gamma2().permute(&sw).unwrap(), tilde);
        assert_eq!(tilde.permute(&sw.inverse()).unwrap(), gamma2());
    }

    #[test]
    fn permutation_validation() {
        assert!(Permutation::from_images(&[1, 1]).is_err());
        assert!(Permutation::from_images(&[1, 3]).is_err());
        assert_eq!(Permutation::all(3).len(), 6);
        let sigma = Permutation::from_images(&[2, 3, 1]).unwrap();
        assert_eq!(sigma.apply(3), 1);
        assert_eq!(sigma.inverse().apply(1), 3);
    }

    #[test]
    fn subtype_examples() {
        for t in 0..8u16 {
            assert!(BoolFn::basis(3, Subset(t)).unwrap().is_subtype());
        }
        let bad = BoolFn::from_support(2, &[s("00"), s("11")]).unwrap();
        assert!(!bad.is_subtype());
    }

    #[test]
    fn json_round_trip() {
        let f = gamma2();
        let json = serde_json::to_string(&f.to_json()).unwrap();
        assert_eq!(json, r#"{"n":2,"support":["00","10","11"]}"#);
        let back: BoolFnJson = serde_json::from_str(&json).unwrap();
        assert_eq!(BoolFn::from_json(&back).unwrap(), f);
    }

    #[test]
    fn missing_theta_rejected() {
        assert!(matches!(BoolFn::from_support(2, &[s("11")]), Err(Error::MissingTheta)));
    }

    #[test]
    fn large_n_tables() {
        let f = BoolFn::basis(9, Subset(0b1_0000_0001)).unwrap();
        assert_eq!(f.support_size(), 128);
        assert_eq!(f.complement().complement(), f);
        let one = BoolFn::one(7).unwrap();
        assert_eq!(one.support_size(), 128);
    }
}
