// SPDX-License-Identifier: Apache-2.0

//! Signalling between inputs and outputs of regular subtypes.
//!
//! The production test is `f(e^{i,j}) = 0`. For type functions the parity
//! of the pair rank gives the same answer and is used as a cross-check.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::boolfn::{BitString, BoolFn, Subset};
use crate::error::{Error, Result};
use crate::poset::StructurePoset;
use crate::subtypes::is_monotone_subtype;
use crate::typeterm::{self, TypeFunction};

fn check_pair(f: &BoolFn, i: usize, j: usize) -> Result<()> {
    let n = f.n();
    for k in [i, j] {
        if k == 0 || k > n {
            return Err(Error::IndexOutOfRange { index: k, n });
        }
    }
    let split = f.io_split();
    if !split.inputs.contains(i) {
        return Err(Error::Precondition(format!("{i} is not an input (inputs are {})", split.inputs)));
    }
    if !split.outputs.contains(j) {
        return Err(Error::Precondition(format!("{j} is not an output (outputs are {})", split.outputs)));
    }
    Ok(())
}

/// `i ↛ j` for a regular subtype: `f(e^{i,j}) = 0`.
pub fn no_signal(f: &BoolFn, i: usize, j: usize) -> Result<bool> {
    if !is_monotone_subtype(f) {
        return Err(Error::Precondition("signalling is decided only for regular subtypes".into()));
    }
    check_pair(f, i, j)?;
    Ok(!f.eval(BitString::pair(f.n(), i, j)?)?)
}

/// `i ↛ j` for a type function: `r_f(i,j)` even, with `-1` odd.
pub fn no_signal_by_rank(tf: &TypeFunction, i: usize, j: usize) -> Result<bool> {
    let f = tf.function();
    check_pair(f, i, j)?;
    let r = StructurePoset::new(f).pair_rank(i, j)?;
    Ok(r >= 0 && r % 2 == 0)
}

/// Length of the longest chain in a family of subsets; `-1` when empty.
fn longest_chain(sets: &[Subset]) -> i64 {
    let mut sorted: Vec<Subset> = sets.to_vec();
    sorted.sort_by_key(|s| (s.len(), s.0));
    let mut best = vec![0i64; sorted.len()];
    for b in 0..sorted.len() {
        for a in 0..b {
            if sorted[a].is_proper_subset(sorted[b]) {
                best[b] = best[b].max(best[a] + 1);
            }
        }
    }
    best.into_iter().max().unwrap_or(-1)
}

/// Signalling read off the reduced poset: free outputs never receive;
/// comparable labelled elements signal unless the input sits below; otherwise
/// the parity of the longest chain below a labelled pair decides.
pub fn no_signal_by_reduced_poset(p: &StructurePoset, i: usize, j: usize) -> bool {
    if p.free_outputs().contains(j) {
        return true;
    }
    let els = p.elements();
    let ti = p.labelled_by(i);
    let tj = p.labelled_by(j);
    let mut comparable = None;
    for &a in &ti {
        for &b in &tj {
            let (s, t) = (els[a].set, els[b].set);
            if s.is_subset(t) || t.is_subset(s) {
                comparable = Some(s.is_subset(t));
            }
        }
    }
    if let Some(below) = comparable {
        return below;
    }
    let reduced: Vec<Subset> = p.reduced_view().keys().copied().collect();
    let mut best = -1;
    for &a in &ti {
        for &b in &tj {
            let (s, t) = (els[a].set, els[b].set);
            let common: Vec<Subset> = reduced.iter().copied().filter(|x| x.is_subset(s) && x.is_subset(t)).collect();
            best = best.max(longest_chain(&common));
        }
    }
    best >= 0 && best % 2 == 0
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Cell {
    pub signals: bool,
    pub pair_rank: Option<i64>,
}

/// Signalling relation on `I_f × O_f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignallingMatrix {
    pub n: usize,
    pub inputs: Subset,
    pub outputs: Subset,
    pub entries: BTreeMap<(usize, usize), Cell>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairJson {
    pub i: usize,
    pub j: usize,
    pub signals: bool,
    pub pair_rank: Option<i64>,
}

/// `{"pairs": [{"i", "j", "signals", "pair_rank"}]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub pairs: Vec<PairJson>,
}

impl SignallingMatrix {
    pub fn signals(&self, i: usize, j: usize) -> Option<bool> {
        self.entries.get(&(i, j)).map(|c| c.signals)
    }

    /// Pairs `(i, j)` with `i ↝ j`.
    pub fn signalling_pairs(&self) -> Vec<(usize, usize)> {
        self.entries.iter().filter(|(_, c)| c.signals).map(|(&k, _)| k).collect()
    }

    pub fn to_json(&self) -> MatrixJson {
        MatrixJson {
            pairs: self
                .entries
                .iter()
                .map(|(&(i, j), c)| PairJson { i, j, signals: c.signals, pair_rank: c.pair_rank })
                .collect(),
        }
    }

    /// Inputs down, outputs across; `↝` or `∅`, with the pair rank when known.
    pub fn render(&self) -> String {
        let outs = self.outputs.to_vec();
        let mut out = String::new();
        let _ = write!(out, "{:>6}", "in\\out");
        for j in &outs {
            let _ = write!(out, " {j:>7}");
        }
        out.push('\n');
        for i in self.inputs.indices() {
            let _ = write!(out, "{i:>6}");
            for &j in &outs {
                let c = self.entries[&(i, j)];
                let mark = if c.signals { "↝" } else { "∅" };
                let cell = match c.pair_rank {
                    Some(r) => format!("{mark} ({r})"),
                    None => mark.to_string(),
                };
                let _ = write!(out, " {cell:>7}");
            }
            out.push('\n');
        }
        out
    }
}

fn fill(f: &BoolFn, poset: Option<&StructurePoset>) -> Result<SignallingMatrix> {
    if !is_monotone_subtype(f) {
        return Err(Error::Precondition("signalling is decided only for regular subtypes".into()));
    }
    let split = f.io_split();
    let mut entries = BTreeMap::new();
    for i in split.inputs.indices() {
        for j in split.outputs.indices() {
            let signals = f.get(BitString::pair(f.n(), i, j)?.bits());
            let pair_rank = match poset {
                Some(p) => {
                    let r = p.pair_rank(i, j)?;
                    let by_rank = r < 0 || r % 2 == 1;
                    if by_rank != signals {
                        return Err(Error::Invariant(format!(
                            "signalling {i}->{j}: f(e^{{i,j}}) says {signals}, pair rank {r} disagrees"
                        )));
                    }
                    Some(r)
                }
                None => None,
            };
            entries.insert((i, j), Cell { signals, pair_rank });
        }
    }
    Ok(SignallingMatrix { n: f.n(), inputs: split.inputs, outputs: split.outputs, entries })
}

/// Matrix of a regular subtype. Pair ranks are attached, and checked, when
/// `f` is recognised as a type function within the enumeration guard.
pub fn signalling_matrix(f: &BoolFn) -> Result<SignallingMatrix> {
    let is_type = f.n() <= typeterm::max_n() && typeterm::is_type_function(f)?;
    if is_type {
        fill(f, Some(&StructurePoset::new(f)))
    } else {
        fill(f, None)
    }
}

/// Matrix of a certified type function, always with pair ranks.
pub fn signalling_matrix_typed(tf: &TypeFunction) -> Result<SignallingMatrix> {
    fill(tf.function(), Some(&StructurePoset::new(tf.function())))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tf(t: &str) -> TypeFunction {
        TypeFunction::parse(t).unwrap()
    }

    #[test]
    fn constant_channels_never_signal() {
        let inputs = Subset::from_indices(4, &[2, 3]).unwrap();
        let f = BoolFn::basis(4, inputs).unwrap();
        for i in [2, 3] {
            for j in [1, 4] {
                assert!(no_signal(&f, i, j).unwrap());
            }
        }
    }

    #[test]
    fn nonsignalling_and_process_matrix() {
        let ns = tf("(A2 -> A1) * (A4 -> A3)");
        let pm = tf("~((A1 -> A2) * (A3 -> A4))");
        assert!(no_signal(ns.function(), 2, 3).unwrap());
        assert!(!no_signal(ns.function(), 2, 1).unwrap());
        assert!(!no_signal(pm.function(), 2, 3).unwrap());
        assert!(no_signal(pm.function(), 2, 1).unwrap());
        for t in [&ns, &pm] {
            for (i, j) in [(2, 1), (2, 3), (4, 1), (4, 3)] {
                assert_eq!(no_signal_by_rank(t, i, j).unwrap(), no_signal(t.function(), i, j).unwrap());
                let p = StructurePoset::new(t.function());
                assert_eq!(no_signal_by_reduced_poset(&p, i, j), no_signal(t.function(), i, j).unwrap());
            }
        }
        let tilde = tf("(A2 -> A3) * (A4 -> A1)");
        let a = signalling_matrix(pm.function()).unwrap();
        let b = signalling_matrix(tilde.function()).unwrap();
        assert_eq!(a.signalling_pairs(), b.signalling_pairs());
    }

    #[test]
    fn io_and_scope_errors() {
        let ns = tf("(A2 -> A1) * (A4 -> A3)");
        assert!(matches!(no_signal(ns.function(), 1, 2), Err(Error::Precondition(_))));
        assert!(matches!(no_signal(ns.function(), 2, 9), Err(Error::IndexOutOfRange { .. })));
        let odd = BoolFn::from_fn(2, |s| s == 0 || s == 3).unwrap();
        assert!(no_signal(&odd, 1, 2).is_err());
        assert!(signalling_matrix(&odd).is_err());
    }

    #[test]
    fn full_channels_signal_everywhere() {
        let outs = Subset::from_indices(3, &[1, 3]).unwrap();
        let f = BoolFn::basis(3, outs).unwrap().complement();
        let m = signalling_matrix(&f).unwrap();
        assert!(m.entries.values().all(|c| c.signals));
        assert!(m.render().contains("↝"));
        let json = serde_json::to_string(&m.to_json()).unwrap();
        assert_eq!(
            json,
            r#"{"pairs":[{"i":2,"j":1,"signals":true,"pair_rank":1},{"i":2,"j":3,"signals":true,"pair_rank":1}]}"#
        );
    }

    #[test]
    fn longest_chain_lengths() {
        assert_eq!(longest_chain(&[]), -1);
        assert_eq!(longest_chain(&[Subset(0)]), 0);
        assert_eq!(longest_chain(&[Subset(0), Subset(1), Subset(2), Subset(3)]), 2);
    }
}
