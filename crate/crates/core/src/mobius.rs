// SPDX-License-Identifier: Apache-2.0

//! Möbius transform between truth tables and coefficients in the basis
//! `p_T(s) = ∏_{i∈T}(1 - s_i)`.
//!
//! `f(s) = Σ_{T ⊆ Z(s)} f̂_T` where `Z(s)` is the zero set of `s`, so the
//! transform is subset Möbius inversion over zero sets. The production path
//! is the in-place butterfly; [`transform_direct`] is the literal summation
//! kept for cross-checking.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::boolfn::{BoolFn, Permutation, Subset, MAX_N};
use crate::error::{Error, Result};

/// Integer coefficients `T ↦ f̂_T`, stored densely by subset mask.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MobiusCoeffs {
    n: usize,
    coeffs: Vec<i64>,
}

fn full(n: usize) -> usize {
    (1usize << n) - 1
}

impl MobiusCoeffs {
    pub fn zero(n: usize) -> Result<MobiusCoeffs> {
        if !(1..=MAX_N).contains(&n) {
            return Err(Error::InvalidArity(n));
        }
        Ok(MobiusCoeffs { n, coeffs: vec![0; 1 << n] })
    }

    pub fn from_terms(n: usize, terms: &[(Subset, i64)]) -> Result<MobiusCoeffs> {
        let mut c = MobiusCoeffs::zero(n)?;
        for &(t, v) in terms {
            c.add(t, v)?;
        }
        Ok(c)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, t: Subset) -> i64 {
        self.coeffs.get(t.0 as usize).copied().unwrap_or(0)
    }

    pub fn add(&mut self, t: Subset, v: i64) -> Result<()> {
        if !t.is_subset(Subset::full(self.n)) {
            let index = t.indices().find(|&i| i > self.n).unwrap_or(0);
            return Err(Error::IndexOutOfRange { index, n: self.n });
        }
        self.coeffs[t.0 as usize] += v;
        Ok(())
    }

    /// Nonzero entries ordered by `(|T|, mask)`.
    pub fn nonzero(&self) -> Vec<(Subset, i64)> {
        let mut out: Vec<(Subset, i64)> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, &v)| v != 0)
            .map(|(t, &v)| (Subset(t as u16), v))
            .collect();
        out.sort_by_key(|(t, _)| (t.len(), t.0));
        out
    }

    pub fn support(&self) -> Vec<Subset> {
        self.nonzero().into_iter().map(|(t, _)| t).collect()
    }

    pub fn max_abs(&self) -> i64 {
        self.coeffs.iter().map(|v| v.abs()).max().unwrap_or(0)
    }

    /// Coefficients of `f*` = `1 - f + p_n`.
    pub fn complement(&self) -> MobiusCoeffs {
        let mut c = MobiusCoeffs { n: self.n, coeffs: self.coeffs.iter().map(|v| -v).collect() };
        c.coeffs[0] += 1;
        c.coeffs[full(self.n)] += 1;
        c
    }

    /// Coefficients of `f ⊗ g`.
    pub fn tensor(&self, other: &MobiusCoeffs) -> Result<MobiusCoeffs> {
        let mut c = MobiusCoeffs::zero(self.n + other.n)?;
        for (s, a) in self.nonzero() {
            for (t, b) in other.nonzero() {
                c.add(s.union(t.shift(self.n)), a * b)?;
            }
        }
        Ok(c)
    }

    /// Coefficients of `f ◁ g = (f - p_m) ⊗ 1 + p_m ⊗ g`.
    pub fn causal(&self, other: &MobiusCoeffs) -> Result<MobiusCoeffs> {
        let m = self.n;
        let mut c = MobiusCoeffs::zero(m + other.n)?;
        for (s, a) in self.nonzero() {
            c.add(s, a)?;
        }
        c.add(Subset::full(m), -1)?;
        for (t, b) in other.nonzero() {
            c.add(Subset::full(m).union(t.shift(m)), b)?;
        }
        Ok(c)
    }

    /// Coefficients of `g ◁ f` with `f = self` on the first block:
    /// `f ⊗ p_k + 1_m ⊗ (g - p_k)`.
    pub fn causal_after(&self, other: &MobiusCoeffs) -> Result<MobiusCoeffs> {
        let m = self.n;
        let top = Subset::full(other.n).shift(m);
        let mut c = MobiusCoeffs::zero(m + other.n)?;
        for (s, a) in self.nonzero() {
            c.add(s.union(top), a)?;
        }
        for (t, b) in other.nonzero() {
            c.add(t.shift(m), b)?;
        }
        c.add(top, -1)?;
        Ok(c)
    }

    /// Coefficients of `f ∘ σ`: `p_T ∘ σ = p_{σ^{-1}(T)}`.
    pub fn permute(&self, sigma: &Permutation) -> Result<MobiusCoeffs> {
        if sigma.n() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: sigma.n() });
        }
        let inv = sigma.inverse();
        let mut c = MobiusCoeffs::zero(self.n)?;
        for (t, v) in self.nonzero() {
            c.add(inv.act_on_subset(t), v)?;
        }
        Ok(c)
    }

    /// Parses the signed-sum text form, e.g. `1 - p{1} + 2*p{1,2}`.
    pub fn parse(n: usize, text: &str) -> Result<MobiusCoeffs> {
        let mut c = MobiusCoeffs::zero(n)?;
        let bytes = text.as_bytes();
        let mut pos = 0;
        let skip_ws = |pos: &mut usize| {
            while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
                *pos += 1;
            }
        };
        let mut first = true;
        loop {
            skip_ws(&mut pos);
            if pos >= bytes.len() {
                if first {
                    return Err(Error::Syntax { pos, msg: "empty expansion".into() });
                }
                break;
            }
            let mut sign = 1i64;
            if bytes[pos] == b'+' || bytes[pos] == b'-' {
                if bytes[pos] == b'-' {
                    sign = -1;
                }
                pos += 1;
                skip_ws(&mut pos);
            } else if !first {
                return Err(Error::Syntax { pos, msg: "expected '+' or '-'".into() });
            }
            first = false;
            let start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            let number = if pos > start {
                Some(text[start..pos].parse::<i64>().map_err(|e| Error::Syntax {
                    pos: start,
                    msg: e.to_string(),
                })?)
            } else {
                None
            };
            skip_ws(&mut pos);
            let has_star = pos < bytes.len() && bytes[pos] == b'*';
            if has_star {
                pos += 1;
                skip_ws(&mut pos);
            }
            if pos < bytes.len() && bytes[pos] == b'p' {
                pos += 1;
                if pos >= bytes.len() || bytes[pos] != b'{' {
                    return Err(Error::Syntax { pos, msg: "expected '{' after p".into() });
                }
                let close = text[pos..]
                    .find('}')
                    .map(|k| pos + k)
                    .ok_or(Error::Syntax { pos, msg: "unclosed '{'".into() })?;
                let inner = &text[pos + 1..close];
                let mut indices = Vec::new();
                for part in inner.split(',').map(str::trim).filter(|p| !p.is_empty()) {
                    indices.push(part.parse::<usize>().map_err(|_| Error::Syntax {
                        pos: pos + 1,
                        msg: format!("bad index {part:?}"),
                    })?);
                }
                let t = Subset::from_indices(n, &indices)?;
                c.add(t, sign * number.unwrap_or(1))?;
                pos = close + 1;
            } else if has_star {
                return Err(Error::Syntax { pos, msg: "expected p{...} after '*'".into() });
            } else if let Some(v) = number {
                c.add(Subset::EMPTY, sign * v)?;
            } else {
                return Err(Error::Syntax { pos, msg: "expected a term".into() });
            }
        }
        Ok(c)
    }

    pub fn to_json(&self) -> MobiusJson {
        MobiusJson {
            n: self.n,
            coeffs: self.nonzero().into_iter().map(|(t, c)| CoeffEntry { t: t.to_vec(), c }).collect(),
        }
    }

    pub fn from_json(json: &MobiusJson) -> Result<MobiusCoeffs> {
        let mut c = MobiusCoeffs::zero(json.n)?;
        for e in &json.coeffs {
            c.add(Subset::from_indices(json.n, &e.t)?, e.c)?;
        }
        Ok(c)
    }
}

impl fmt::Display for MobiusCoeffs {
    /// The signed-sum text form; the `∅` coefficient prints as a constant.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.nonzero();
        if terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (t, c)) in terms.iter().enumerate() {
            let (sign, mag) = if *c < 0 { ("-", -c) } else { ("+", *c) };
            if k == 0 {
                if sign == "-" {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if t.is_empty() {
                write!(f, "{mag}")?;
            } else {
                if mag != 1 {
                    write!(f, "{mag}*")?;
                }
                write!(f, "p{t}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MobiusCoeffs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MobiusCoeffs(n={}, {})", self.n, self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoeffEntry {
    #[serde(rename = "T")]
    pub t: Vec<usize>,
    pub c: i64,
}

/// `{"n": int, "coeffs": [{"T": [ints], "c": int}]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MobiusJson {
    pub n: usize,
    pub coeffs: Vec<CoeffEntry>,
}

/// Möbius transform of a `{0,1}`-valued function.
pub fn transform(f: &BoolFn) -> MobiusCoeffs {
    let n = f.n();
    let values: Vec<i64> = (0..(1u32 << n)).map(|s| f.get(s as u16) as i64).collect();
    transform_int(n, &values).expect("table length matches n")
}

/// Möbius transform of an integer table indexed by packed string.
pub fn transform_int(n: usize, values: &[i64]) -> Result<MobiusCoeffs> {
    if !(1..=MAX_N).contains(&n) {
        return Err(Error::InvalidArity(n));
    }
    if values.len() != 1 << n {
        return Err(Error::Precondition(format!("table of length {} for n={n}", values.len())));
    }
    let all = full(n);
    // index by zero set: a[Z] = value at the string whose zeros are Z
    let mut a: Vec<i64> = (0..=all).map(|z| values[all & !z]).collect();
    for bit in 0..n {
        let b = 1 << bit;
        for t in 0..=all {
            if t & b != 0 {
                a[t] -= a[t ^ b];
            }
        }
    }
    Ok(MobiusCoeffs { n, coeffs: a })
}

/// The literal summation `f̂_T = Σ_{s : s_j = 1 ∀ j∉T} (-1)^{Σ_{j∈T} s_j} f(s)`.
pub fn transform_direct(f: &BoolFn) -> MobiusCoeffs {
    let n = f.n();
    let all = full(n) as u16;
    let mut coeffs = vec![0i64; 1 << n];
    for (t, slot) in coeffs.iter_mut().enumerate() {
        let t = t as u16;
        let outside = all & !t;
        let mut acc = 0i64;
        for s in 0..=all {
            if s & outside != outside {
                continue;
            }
            let sign = if (s & t).count_ones() % 2 == 0 { 1 } else { -1 };
            acc += sign * f.get(s) as i64;
        }
        *slot = acc;
    }
    MobiusCoeffs { n, coeffs }
}

/// Pointwise `Σ_T c_T p_T(s)`, indexed by packed string.
pub fn inverse(c: &MobiusCoeffs) -> Vec<i64> {
    let n = c.n;
    let all = full(n);
    let mut a = c.coeffs.clone();
    for bit in 0..n {
        let b = 1 << bit;
        for t in 0..=all {
            if t & b != 0 {
                a[t] += a[t ^ b];
            }
        }
    }
    (0..=all).map(|s| a[all & !s]).collect()
}

/// Inverts and checks that the result lands in `F_n`.
pub fn inverse_to_fn(c: &MobiusCoeffs) -> Result<BoolFn> {
    BoolFn::from_int_table(c.n, &inverse(c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfn::BitString;

    fn set(ix: &[usize]) -> Subset {
        Subset::from_indices(16, ix).unwrap()
    }

    #[test]
    fn basis_transforms_to_single_coefficient() {
        for t in 0..16u16 {
            let p = BoolFn::basis(4, Subset(t)).unwrap();
            let c = transform(&p);
            assert_eq!(c.nonzero(), vec![(Subset(t), 1)]);
        }
    }

    #[test]
    fn gamma2_expansion() {
        let c = MobiusCoeffs::parse(2, "1 - p{1} + p{1,2}").unwrap();
        let g = inverse_to_fn(&c).unwrap();
        assert!(!g.eval(BitString::parse("01").unwrap()).unwrap());
        assert!(g.eval(BitString::parse("10").unwrap()).unwrap());
        assert_eq!(transform(&g), c);
        assert_eq!(c.to_string(), "1 - p{1} + p{1,2}");
    }

    #[test]
    fn two_comb_from_coefficients() {
        let c = MobiusCoeffs::from_terms(
            4,
            &[(Subset::EMPTY, 1), (set(&[1]), -1), (set(&[1, 2]), 1), (set(&[1, 2, 3]), -1), (set(&[1, 2, 3, 4]), 1)],
        )
        .unwrap();
        let beta = inverse_to_fn(&c).unwrap();
        assert_eq!(transform(&beta), c);
        assert_eq!(beta.io_split().outputs, set(&[1, 3]));
    }

    #[test]
    fn constant_expansion_is_top() {
        let c = MobiusCoeffs::from_terms(3, &[(Subset::EMPTY, 1)]).unwrap();
        assert_eq!(inverse_to_fn(&c).unwrap(), BoolFn::one(3).unwrap());
    }

    #[test]
    fn out_of_range_expansion_is_error() {
        let c = MobiusCoeffs::parse(2, "1 + p{1}").unwrap();
        assert!(matches!(inverse_to_fn(&c), Err(Error::NonBoolean { value: 2, .. })));
        let c = MobiusCoeffs::parse(2, "p{1} - p{1,2}").unwrap();
        assert!(matches!(inverse_to_fn(&c), Err(Error::MissingTheta)));
    }

    #[test]
    fn parse_forms() {
        let c = MobiusCoeffs::parse(3, "-2*p{1,3} + 3 p{2} + 1 + p{}").unwrap();
        assert_eq!(c.get(Subset::EMPTY), 2);
        assert_eq!(c.get(set(&[1, 3])), -2);
        assert_eq!(c.get(set(&[2])), 3);
        assert_eq!(MobiusCoeffs::parse(3, &c.to_string()).unwrap(), c);
        assert!(MobiusCoeffs::parse(3, "1 p{4}").is_err());
        assert!(MobiusCoeffs::parse(3, "1 + q").is_err());
        assert!(MobiusCoeffs::parse(3, "").is_err());
    }

    #[test]
    fn json_form() {
        let c = MobiusCoeffs::parse(2, "1 - p{1} + p{1,2}").unwrap();
        let json = serde_json::to_string(&c.to_json()).unwrap();
        assert_eq!(json, r#"{"n":2,"coeffs":[{"T":[],"c":1},{"T":[1],"c":-1},{"T":[1,2],"c":1}]}"#);
        let back: MobiusJson = serde_json::from_str(&json).unwrap();
        assert_eq!(MobiusCoeffs::from_json(&back).unwrap(), c);
    }

    #[test]
    fn fast_matches_direct_exhaustively_n3() {
        for t in 0..256u32 {
            if t & 1 == 0 {
                continue;
            }
            let f = BoolFn::from_fn(3, |s| t >> s & 1 == 1).unwrap();
            assert_eq!(transform(&f), transform_direct(&f));
        }
    }
}
