// SPDX-License-Identifier: Apache-2.0

//! Normal forms: joins of meets of chain types.
//!
//! Leaves are written as label sequences, `∅-2-6-5` or `2-1-4`, where the
//! first label is `S_0` and each later label is the increment `S_k \ S_{k-1}`.
//! Multi-index steps use braces: `{1,6}`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::boolfn::{BoolFn, Permutation, Subset, MAX_N};
use crate::error::{Error, Result};
use crate::mobius::{self, MobiusCoeffs};
use crate::poset::StructurePoset;
use crate::typeterm::{self, ChainSpec, TypeFunction, TypeTerm};

/// Upper bound on the number of meet terms produced while distributing.
const MAX_TERMS: usize = 1 << 16;

/// A chain written by its label sets.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LabelChain {
    labels: Vec<Subset>,
}

impl LabelChain {
    /// The first label may be empty (`∅`); all later ones must not be.
    pub fn new(labels: Vec<Subset>) -> Result<LabelChain> {
        if labels.is_empty() {
            return Err(Error::InvalidChain("no labels".into()));
        }
        let mut seen = Subset::EMPTY;
        for (k, &l) in labels.iter().enumerate() {
            if k > 0 && l.is_empty() {
                return Err(Error::InvalidChain(format!("label {k} is empty")));
            }
            if !seen.intersection(l).is_empty() {
                return Err(Error::InvalidChain(format!("label {l} repeats an index")));
            }
            seen = seen.union(l);
        }
        Ok(LabelChain { labels })
    }

    pub fn parse(text: &str) -> Result<LabelChain> {
        let mut labels = Vec::new();
        let mut pos = 0;
        for token in text.split('-') {
            let at = pos + (token.len() - token.trim_start().len());
            pos += token.len() + 1;
            let t = token.trim();
            let syntax = |msg: &str| Error::Syntax { pos: at, msg: msg.to_string() };
            let label = if t == "∅" || t == "{}" {
                Subset::EMPTY
            } else if let Some(inner) = t.strip_prefix('{').and_then(|r| r.strip_suffix('}')) {
                let mut s = Subset::EMPTY;
                for part in inner.split(',') {
                    s = s.union(parse_index(part.trim()).ok_or_else(|| syntax("expected an index"))?);
                }
                s
            } else {
                parse_index(t).ok_or_else(|| syntax("expected ∅, an index or {i,j,...}"))?
            };
            labels.push(label);
        }
        LabelChain::new(labels)
    }

    pub fn labels(&self) -> &[Subset] {
        &self.labels
    }

    /// Cumulative unions as a chain on `[n]`; uncovered indices are free
    /// outputs, and the number of steps must be even.
    pub fn to_chain(&self, n: usize) -> Result<ChainSpec> {
        let mut acc = Subset::EMPTY;
        let mut sets = Vec::with_capacity(self.labels.len());
        for &l in &self.labels {
            if let Some(i) = l.indices().find(|&i| i > n) {
                return Err(Error::IndexOutOfRange { index: i, n });
            }
            acc = acc.union(l);
            sets.push(acc);
        }
        if sets.len() % 2 == 0 {
            return Err(Error::InvalidChain(format!(
                "{self} has {} steps; a chain type needs an even number",
                sets.len() - 1
            )));
        }
        ChainSpec::new(n, sets)
    }

    pub fn from_chain(c: &ChainSpec) -> LabelChain {
        LabelChain { labels: c.increments() }
    }
}

fn parse_index(t: &str) -> Option<Subset> {
    let i: usize = t.parse().ok()?;
    (1..=MAX_N).contains(&i).then(|| Subset::singleton(i))
}

/// `LabelChain` → `ChainSpec` on `[n]`.
pub fn chain_from_labels(lc: &LabelChain, n: usize) -> Result<ChainSpec> {
    lc.to_chain(n)
}

impl fmt::Display for LabelChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, l) in self.labels.iter().enumerate() {
            if k > 0 {
                f.write_str("-")?;
            }
            match l.len() {
                0 => f.write_str("∅")?,
                1 => write!(f, "{}", l.to_vec()[0])?,
                _ => write!(f, "{l}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LabelChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LabelChain({self})")
    }
}

impl Serialize for LabelChain {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for LabelChain {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        LabelChain::parse(&text).map_err(serde::de::Error::custom)
    }
}

/// `⋁_a ⋀_{b ∈ terms[a]} leaves[b]`.
#[derive(Clone, PartialEq, Eq)]
pub struct NormalForm {
    n: usize,
    leaves: Vec<ChainSpec>,
    terms: Vec<Vec<usize>>,
}

/// Status of the minimax condition for a form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Minimax {
    Holds,
    Fails,
    /// Terms have different lengths, so there is no `A × B` index grid.
    NotGrid,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalFormJson {
    pub shape: String,
    pub n: usize,
    pub terms: Vec<Vec<usize>>,
    pub leaves: Vec<LabelChain>,
}

impl NormalForm {
    pub fn new(n: usize, leaves: Vec<ChainSpec>, terms: Vec<Vec<usize>>) -> Result<NormalForm> {
        if terms.is_empty() || terms.iter().any(|t| t.is_empty()) {
            return Err(Error::Precondition("a normal form needs nonempty terms".into()));
        }
        for (k, c) in leaves.iter().enumerate() {
            if c.n() != n {
                return Err(Error::InvalidChain(format!("leaf {k} ({c}) lives on n={}, form has n={n}", c.n())));
            }
        }
        if let Some(&b) = terms.iter().flatten().find(|&&b| b >= leaves.len()) {
            return Err(Error::Precondition(format!("leaf id {b} out of range ({} leaves)", leaves.len())));
        }
        Ok(NormalForm { n, leaves, terms })
    }

    /// Builds a form from label-sequence leaves; a bad leaf is named in the error.
    pub fn from_labels(n: usize, leaves: &[&str], terms: Vec<Vec<usize>>) -> Result<NormalForm> {
        let chains = leaves
            .iter()
            .enumerate()
            .map(|(k, text)| {
                LabelChain::parse(text)
                    .and_then(|lc| lc.to_chain(n))
                    .map_err(|e| Error::InvalidChain(format!("leaf {k} `{text}`: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        NormalForm::new(n, chains, terms)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn leaves(&self) -> &[ChainSpec] {
        &self.leaves
    }

    pub fn terms(&self) -> &[Vec<usize>] {
        &self.terms
    }

    pub fn leaf_labels(&self) -> Vec<LabelChain> {
        self.leaves.iter().map(LabelChain::from_chain).collect()
    }

    /// Distinct chain types used by the terms.
    pub fn distinct_leaf_count(&self) -> usize {
        let used: BTreeSet<usize> = self.terms.iter().flatten().copied().collect();
        used.iter().map(|&b| &self.leaves[b]).collect::<BTreeSet<_>>().len()
    }

    fn leaf_functions(&self) -> Result<Vec<BoolFn>> {
        self.leaves
            .par_iter()
            .enumerate()
            .map(|(k, c)| c.chain_type().map_err(|e| Error::InvalidChain(format!("leaf {k} ({c}): {e}"))))
            .collect()
    }

    /// Pointwise join of meets.
    pub fn eval(&self) -> Result<BoolFn> {
        let fs = self.leaf_functions()?;
        let mut out = BoolFn::bottom(self.n)?;
        for t in &self.terms {
            let mut m = fs[t[0]].clone();
            for &b in &t[1..] {
                m = m.meet(&fs[b])?;
            }
            out = out.join(&m)?;
        }
        Ok(out)
    }

    pub fn is_grid(&self) -> bool {
        self.terms.iter().all(|t| t.len() == self.terms[0].len())
    }

    /// `⋀_b ⋁_a f_{a,b}` with `f_{a,b} = leaves[terms[a][b]]`.
    pub fn meet_of_joins(&self) -> Result<BoolFn> {
        if !self.is_grid() {
            return Err(Error::Precondition("terms of unequal length do not index an A × B grid".into()));
        }
        let fs = self.leaf_functions()?;
        let mut out = BoolFn::one(self.n)?;
        for b in 0..self.terms[0].len() {
            let mut j = BoolFn::bottom(self.n)?;
            for t in &self.terms {
                j = j.join(&fs[t[b]])?;
            }
            out = out.meet(&j)?;
        }
        Ok(out)
    }

    /// Join-of-meets equals meet-of-joins. Usage error off the grid.
    pub fn verify_minimax(&self) -> Result<bool> {
        Ok(self.eval()? == self.meet_of_joins()?)
    }

    pub fn minimax_status(&self) -> Result<Minimax> {
        if !self.is_grid() {
            return Ok(Minimax::NotGrid);
        }
        Ok(if self.verify_minimax()? { Minimax::Holds } else { Minimax::Fails })
    }

    /// Every leaf must have the same inputs and outputs as `target`.
    pub fn check_leaves(&self, target: &BoolFn) -> Result<()> {
        let want = target.io_split();
        for (k, f) in self.leaf_functions()?.iter().enumerate() {
            if f.io_split() != want {
                return Err(Error::InvalidChain(format!(
                    "leaf {k} ({}) has split {:?}, target has {want:?}",
                    LabelChain::from_chain(&self.leaves[k]),
                    f.io_split()
                )));
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> NormalFormJson {
        NormalFormJson {
            shape: "join-of-meets".into(),
            n: self.n,
            terms: self.terms.clone(),
            leaves: self.leaf_labels(),
        }
    }

    pub fn from_json(json: &NormalFormJson) -> Result<NormalForm> {
        if json.shape != "join-of-meets" {
            return Err(Error::Precondition(format!("unknown shape `{}`", json.shape)));
        }
        let leaves = json.leaves.iter().map(|l| l.to_chain(json.n)).collect::<Result<Vec<_>>>()?;
        NormalForm::new(json.n, leaves, json.terms.clone())
    }

    /// Dedups and sorts leaves by chain masks, drops redundant meet factors
    /// and absorbed terms, then removes unused leaves.
    fn canonical(self) -> Result<NormalForm> {
        let order: BTreeSet<&ChainSpec> = self.leaves.iter().collect();
        let rank: BTreeMap<&ChainSpec, usize> = order.iter().enumerate().map(|(k, &c)| (c, k)).collect();
        let sorted: Vec<ChainSpec> = order.into_iter().cloned().collect();
        let terms: Vec<Vec<usize>> =
            self.terms.iter().map(|t| t.iter().map(|&b| rank[&self.leaves[b]]).collect()).collect();
        let tables = sorted.iter().map(|c| c.chain_type()).collect::<Result<Vec<_>>>()?;
        let kept = prune(&tables, terms)?;
        let used: BTreeSet<usize> = kept.iter().flatten().copied().collect();
        let renum: BTreeMap<usize, usize> = used.iter().enumerate().map(|(k, &b)| (b, k)).collect();
        let leaves = used.iter().map(|&b| sorted[b].clone()).collect();
        let mut terms: Vec<Vec<usize>> = kept.iter().map(|t| t.iter().map(|b| renum[b]).collect()).collect();
        terms.sort();
        Ok(NormalForm { n: self.n, leaves, terms })
    }
}

/// Absorption on truth tables: a meet factor above another factor of the
/// same term is dropped, and so is a term whose meet lies below another.
/// Leaf tables are assumed pairwise distinct.
fn prune(tables: &[BoolFn], terms: Vec<Vec<usize>>) -> Result<Vec<Vec<usize>>> {
    let mut reduced: Vec<Vec<usize>> = Vec::with_capacity(terms.len());
    for t in terms {
        let t: BTreeSet<usize> = t.into_iter().collect();
        let keep: Vec<usize> =
            t.iter().copied().filter(|&b| !t.iter().any(|&c| c != b && tables[c].leq(&tables[b]))).collect();
        reduced.push(keep);
    }
    reduced.sort();
    reduced.dedup();
    let meets = reduced
        .iter()
        .map(|t| t[1..].iter().try_fold(tables[t[0]].clone(), |m, &b| m.meet(&tables[b])))
        .collect::<Result<Vec<_>>>()?;
    let mut kept = Vec::new();
    for (i, t) in reduced.iter().enumerate() {
        let absorbed = meets
            .iter()
            .enumerate()
            .any(|(j, m)| j != i && meets[i].leq(m) && (meets[i] != *m || j < i));
        if !absorbed {
            kept.push(t.clone());
        }
    }
    Ok(kept)
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels = self.leaf_labels();
        for (a, t) in self.terms.iter().enumerate() {
            if a > 0 {
                f.write_str(" ∨ ")?;
            }
            if t.len() > 1 {
                f.write_str("(")?;
            }
            for (k, &b) in t.iter().enumerate() {
                if k > 0 {
                    f.write_str(" ∧ ")?;
                }
                write!(f, "{}", labels[b])?;
            }
            if t.len() > 1 {
                f.write_str(")")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NormalForm(n={}, {self})", self.n)
    }
}

fn chain_of(c: &MobiusCoeffs, what: &str) -> Result<ChainSpec> {
    ChainSpec::from_coeffs(c).ok_or_else(|| Error::Invariant(format!("{what} is not a chain type: {c}")))
}

/// `p_O^*` as a chain.
fn upper_chain(n: usize, outputs: Subset) -> Result<ChainSpec> {
    chain_of(&MobiusCoeffs::from_terms(n, &[(outputs, 1)])?.complement(), "p_O^*")
}

fn outputs_of(nf: &NormalForm) -> Result<Subset> {
    Ok(nf.leaves[0].chain_type()?.io_split().outputs)
}

fn too_many() -> Error {
    Error::Resource(format!("normal form exceeds {MAX_TERMS} terms"))
}

fn synth(term: &TypeTerm) -> Result<(NormalForm, Vec<usize>)> {
    let mut sorted = term.leaves();
    sorted.sort_unstable();
    if let Some(c) = ChainSpec::from_coeffs(&mobius::transform(&term.eval())) {
        return Ok((NormalForm { n: c.n(), leaves: vec![c], terms: vec![vec![0]] }, sorted));
    }
    match term {
        TypeTerm::Atom(_) => unreachable!("atoms are chains"),
        TypeTerm::Dual(x) => {
            let (nf, _) = synth(x)?;
            let dual = nf
                .leaves
                .iter()
                .map(|c| chain_of(&c.coeffs().complement(), "complement of a chain"))
                .collect::<Result<Vec<_>>>()?;
            let tables = dual.iter().map(|c| c.chain_type()).collect::<Result<Vec<_>>>()?;
            // ⋀_a ⋁_b leaf*, distributed back into ⋁ ⋀
            let mut terms: Vec<Vec<usize>> = vec![Vec::new()];
            for row in &nf.terms {
                if terms.len() * row.len() > MAX_TERMS {
                    return Err(too_many());
                }
                let next: Vec<Vec<usize>> = terms
                    .iter()
                    .flat_map(|t| row.iter().map(move |&b| t.iter().copied().chain([b]).collect()))
                    .collect();
                terms = prune(&tables, next)?;
            }
            Ok((NormalForm { n: nf.n, leaves: dual, terms }.canonical()?, sorted))
        }
        TypeTerm::Tensor(x, y) => {
            let (f1, l1) = synth(x)?;
            let (f2, _) = synth(y)?;
            let (n1, n2) = (f1.n, f2.n);
            let alpha1 = upper_chain(n1, outputs_of(&f1)?)?.coeffs();
            let alpha2 = upper_chain(n2, outputs_of(&f2)?)?.coeffs();
            let images: Vec<usize> = {
                let (mut lo, mut hi) = (0, n1);
                sorted
                    .iter()
                    .map(|leaf| {
                        if l1.contains(leaf) {
                            lo += 1;
                            lo
                        } else {
                            hi += 1;
                            hi
                        }
                    })
                    .collect()
            };
            let sigma = Permutation::from_images(&images)?;
            let n = n1 + n2;
            // f ⊗ p_T keeps the other factor's shape with leaves β ⊗ p_T
            let flat = |nf: &NormalForm| nf.leaves.len() == 1 && nf.leaves[0].length() == 0;
            if flat(&f1) || flat(&f2) {
                let (p, other, p_first) = if flat(&f2) { (&f2, &f1, false) } else { (&f1, &f2, true) };
                let pc = p.leaves[0].coeffs();
                let leaves = other
                    .leaves
                    .iter()
                    .map(|b| {
                        let c = if p_first { pc.tensor(&b.coeffs())? } else { b.coeffs().tensor(&pc)? };
                        chain_of(&c.permute(&sigma)?, "β ⊗ p_T")
                    })
                    .collect::<Result<Vec<_>>>()?;
                let nf = NormalForm { n, leaves, terms: other.terms.clone() };
                return Ok((nf.canonical()?, sorted));
            }
            let mut leaves = Vec::with_capacity(f1.leaves.len() + f2.leaves.len());
            for b in &f1.leaves {
                leaves.push(chain_of(&b.coeffs().causal(&alpha2)?.permute(&sigma)?, "β ◁ α")?);
            }
            for b in &f2.leaves {
                leaves.push(chain_of(&alpha1.causal_after(&b.coeffs())?.permute(&sigma)?, "β ◁ α")?);
            }
            let off = f1.leaves.len();
            let left: Vec<Vec<usize>> = f1.terms.clone();
            let right: Vec<Vec<usize>> = f2.terms.iter().map(|t| t.iter().map(|b| b + off).collect()).collect();
            let x = NormalForm { n, leaves: leaves.clone(), terms: left.clone() }.eval()?;
            let y = NormalForm { n, leaves: leaves.clone(), terms: right.clone() }.eval()?;
            // one factor may already lie below the other
            let terms = if x.leq(&y) {
                left
            } else if y.leq(&x) {
                right
            } else {
                if left.len() * right.len() > MAX_TERMS {
                    return Err(too_many());
                }
                let mut terms = Vec::with_capacity(left.len() * right.len());
                for s in &left {
                    for t in &right {
                        terms.push(s.iter().chain(t).copied().collect());
                    }
                }
                terms
            };
            Ok((NormalForm { n, leaves, terms }.canonical()?, sorted))
        }
    }
}

/// Normal form by recursion on the term: chains are leaves, complements
/// dualise, and `f1 ⊗ f2 = (f1 ◁ p_{O_2}^*) ∧ (f2 ◁ p_{O_1}^*)`. A factor
/// equal to some `p_T` is instead tensored into the other factor's leaves,
/// since it adds no maximal chain to `P_f^0`.
///
/// The result is checked to re-evaluate to `f` and to use no more distinct
/// chain types than `P_f^0` has maximal chains.
pub fn synthesize(tf: &TypeFunction) -> Result<NormalForm> {
    let (nf, _) = synth(tf.term())?;
    let f = tf.function();
    if &nf.eval()? != f {
        return Err(Error::Invariant(format!("synthesized form {nf} does not evaluate to the target")));
    }
    let m = StructurePoset::new(f).maximal_chains(true).len();
    if nf.distinct_leaf_count() > m {
        return Err(Error::Invariant(format!(
            "synthesized form uses {} chain types, P_f^0 has only {m} maximal chains",
            nf.distinct_leaf_count()
        )));
    }
    Ok(nf)
}

/// Like [`synthesize`] for a bare function; needs `f ∈ 𝒯_n` within the guard.
pub fn synthesize_fn(f: &BoolFn) -> Result<NormalForm> {
    typeterm::check_guard(f.n())?;
    synthesize(&TypeFunction::from_fn(f)?)
}

/// Proposes chain-type leaves from the reduced poset: each maximal chain is
/// taken in turn and the remaining labels are appended chain by chain, any
/// element being preceded by everything below it. Only candidates that are
/// chain types with the same inputs and outputs as `f` are returned. This is
/// a heuristic; it does not claim the candidates assemble into a form.
pub fn candidate_chains(p: &StructurePoset, f: &BoolFn) -> Vec<LabelChain> {
    let els = p.elements();
    let reduced = p.reduced_indices();
    let chains = p.maximal_chains(true);
    let orders: Vec<Vec<usize>> = if chains.len() <= 6 {
        permutations(chains.len())
    } else {
        (0..chains.len()).map(|r| (0..chains.len()).map(|k| (k + r) % chains.len()).collect()).collect()
    };
    let split = f.io_split();
    let mut out = BTreeSet::new();
    for order in orders {
        let mut seq: Vec<usize> = Vec::new();
        for &c in &order {
            for &e in &chains[c] {
                place(e, els, &reduced, &mut seq);
            }
        }
        let labels: Vec<Subset> = seq.iter().map(|&e| els[e].labels).collect();
        let Ok(lc) = LabelChain::new(labels) else { continue };
        let Ok(chain) = lc.to_chain(p.n()) else { continue };
        if chain.chain_type().map(|g| g.io_split() == split).unwrap_or(false) {
            out.insert(lc);
        }
    }
    out.into_iter().collect()
}

fn place(e: usize, els: &[crate::poset::Element], reduced: &[usize], seq: &mut Vec<usize>) {
    if seq.contains(&e) {
        return;
    }
    let mut below: Vec<usize> =
        reduced.iter().copied().filter(|&r| els[r].set.is_proper_subset(els[e].set)).collect();
    below.sort_by_key(|&r| (els[r].rank, els[r].set));
    for r in below {
        place(r, els, reduced, seq);
    }
    seq.push(e);
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    Permutation::all(k.max(1))
        .iter()
        .map(|p| (1..=k).map(|i| p.apply(i) - 1).collect())
        .filter(|v: &Vec<usize>| v.len() == k)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn label_chain_parsing() {
        let lc = LabelChain::parse("∅-12-8-7-10-9-{1,6}-4-3-{2,5}-11").unwrap();
        assert_eq!(lc.labels().len(), 11);
        assert_eq!(lc.to_string(), "∅-12-8-7-10-9-{1,6}-4-3-{2,5}-11");
        let c = lc.to_chain(12).unwrap();
        assert_eq!(c.length(), 10);
        assert!(LabelChain::parse("2-1-4-3").unwrap().to_chain(4).is_err());
        assert!(LabelChain::parse("2-2").is_err());
        assert!(LabelChain::parse("1-∅").is_err());
        assert!(matches!(LabelChain::parse("1-x"), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(LabelChain::parse("∅-5-1").unwrap().to_chain(4), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn pm_leaf_is_a_causal_product() {
        // 2-1-4 is p_{2} ◁ p_{2} on blocks {1,2}, {3,4}
        let leaf = LabelChain::parse("2-1-4").unwrap().to_chain(4).unwrap().chain_type().unwrap();
        let p2 = BoolFn::basis(2, Subset::singleton(2)).unwrap();
        assert_eq!(leaf, p2.causal(&p2).unwrap());
    }

    #[test]
    fn bad_leaf_is_named() {
        let err = NormalForm::from_labels(4, &["∅-1-2-3-4", "2-1"], vec![vec![0, 1]]).unwrap_err();
        assert!(err.to_string().contains("leaf 1 `2-1`"), "{err}");
    }

    #[test]
    fn worked_forms_evaluate() {
        for w in catalog::worked_forms().unwrap() {
            assert_eq!(&w.form.eval().unwrap(), w.target.function(), "{}", w.name);
            w.form.check_leaves(w.target.function()).unwrap();
        }
    }

    #[test]
    fn minimax_grid_rules() {
        let forms = catalog::worked_forms().unwrap();
        let short = forms.iter().find(|w| w.name == "adapter-pf-short").unwrap();
        assert_eq!(short.form.minimax_status().unwrap(), Minimax::NotGrid);
        assert!(matches!(short.form.verify_minimax(), Err(Error::Precondition(_))));
        let ns = &forms[0];
        assert!(ns.form.verify_minimax().unwrap());
    }

    #[test]
    fn synthesis_of_examples() {
        let chain = TypeFunction::parse("A2 -> A1").unwrap();
        assert_eq!(synthesize(&chain).unwrap().distinct_leaf_count(), 1);
        let ns = synthesize(&catalog::ns()).unwrap();
        assert!(ns.distinct_leaf_count() <= 2);
        let labels: Vec<String> = ns.leaf_labels().iter().map(|l| l.to_string()).collect();
        assert_eq!(labels, ["∅-1-2-3-4", "∅-3-4-1-2"]);
        let pm = synthesize(&catalog::pm()).unwrap();
        assert_eq!(pm.terms().len(), 2);
    }

    #[test]
    fn synthesis_of_adapter_pf() {
        let nf = synthesize(&catalog::adapter_pf()).unwrap();
        assert!(nf.distinct_leaf_count() <= 4, "{nf}");
    }

    #[test]
    fn json_round_trip() {
        let nf = synthesize(&catalog::pm()).unwrap();
        let text = serde_json::to_string(&nf.to_json()).unwrap();
        assert!(text.starts_with(r#"{"shape":"join-of-meets""#));
        let back: NormalFormJson = serde_json::from_str(&text).unwrap();
        assert_eq!(NormalForm::from_json(&back).unwrap(), nf);
    }

    #[test]
    fn candidates_include_worked_leaves() {
        let k = catalog::pm_past_future();
        let p = StructurePoset::new(k.function());
        let got: Vec<String> = candidate_chains(&p, k.function()).iter().map(|l| l.to_string()).collect();
        assert!(got.contains(&"∅-6-2-1-4-3-5".to_string()), "{got:?}");
        assert!(got.contains(&"∅-6-4-3-2-1-5".to_string()), "{got:?}");
        let ns = catalog::ns();
        let p = StructurePoset::new(ns.function());
        let got: Vec<String> = candidate_chains(&p, ns.function()).iter().map(|l| l.to_string()).collect();
        assert_eq!(got, ["∅-1-2-3-4", "∅-3-4-1-2"]);
    }
}
