// SPDX-License-Identifier: Apache-2.0

//! Structure posets: the support of the Möbius transform ordered by
//! inclusion, with ranks, label sets and the reduced subposet.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::boolfn::{BoolFn, Permutation, Subset};
use crate::error::{Error, Result};
use crate::mobius::{self, MobiusCoeffs};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element {
    pub set: Subset,
    pub coeff: i64,
    pub rank: usize,
    pub labels: Subset,
    pub reduced: bool,
}

#[derive(Clone, Debug)]
pub struct StructurePoset {
    n: usize,
    elements: Vec<Element>,
    /// Cover pairs `(lower, upper)` of the full poset, as element indices.
    covers: Vec<(usize, usize)>,
    issues: Vec<String>,
}

/// `S ⊊ T` as a relation on element indices.
fn below(elements: &[Element], a: usize, b: usize) -> bool {
    elements[a].set.is_proper_subset(elements[b].set)
}

fn covers_within(elements: &[Element], keep: &[usize]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for &a in keep {
        for &b in keep {
            if below(elements, a, b) && !keep.iter().any(|&c| below(elements, a, c) && below(elements, c, b)) {
                out.push((a, b));
            }
        }
    }
    out.sort();
    out
}

impl StructurePoset {
    pub fn new(f: &BoolFn) -> StructurePoset {
        StructurePoset::from_coeffs(&mobius::transform(f))
    }

    pub fn from_coeffs(c: &MobiusCoeffs) -> StructurePoset {
        let n = c.n();
        let mut elements: Vec<Element> = c
            .nonzero()
            .into_iter()
            .map(|(set, coeff)| Element { set, coeff, rank: 0, labels: Subset::EMPTY, reduced: false })
            .collect();
        // sorted by (size, mask), so every strict subset comes first
        for b in 0..elements.len() {
            let mut covered = Subset::EMPTY;
            let mut rank = 0;
            for a in 0..b {
                if below(&elements, a, b) {
                    covered = covered.union(elements[a].set);
                    rank = rank.max(elements[a].rank + 1);
                }
            }
            let e = &mut elements[b];
            e.rank = rank;
            e.labels = e.set.difference(covered);
            e.reduced = e.set.is_empty() || !e.labels.is_empty();
        }
        let all: Vec<usize> = (0..elements.len()).collect();
        let covers = covers_within(&elements, &all);
        let mut p = StructurePoset { n, elements, covers, issues: Vec::new() };
        p.issues = p.find_issues(c);
        p
    }

    fn find_issues(&self, c: &MobiusCoeffs) -> Vec<String> {
        let mut issues = Vec::new();
        if self.elements.is_empty() {
            issues.push("empty Möbius support".into());
            return issues;
        }
        if c.max_abs() > 1 {
            issues.push(format!("coefficients outside {{-1,0,1}} (max |c| = {})", c.max_abs()));
        }
        for &(a, b) in &self.covers {
            if self.elements[b].rank != self.elements[a].rank + 1 {
                issues.push(format!(
                    "not graded: {} covers {} but ranks are {} and {}",
                    self.elements[b].set, self.elements[a].set, self.elements[b].rank, self.elements[a].rank
                ));
                break;
            }
        }
        let top = self.top_rank();
        for (k, e) in self.elements.iter().enumerate() {
            let maximal = !self.covers.iter().any(|&(a, _)| a == k);
            if maximal && e.rank != top {
                issues.push(format!("not graded: maximal element {} has rank {} < {top}", e.set, e.rank));
                break;
            }
        }
        if top % 2 == 1 {
            issues.push(format!("top rank {top} is odd"));
        }
        for e in &self.elements {
            let expected = if e.rank % 2 == 0 { 1 } else { -1 };
            if e.coeff != expected {
                issues.push(format!("coefficient {} at {} does not match (-1)^rank", e.coeff, e.set));
                break;
            }
        }
        for i in 1..=self.n {
            let ranks: Vec<usize> = self.labelled_by(i).iter().map(|&k| self.elements[k].rank).collect();
            if ranks.windows(2).any(|w| w[0] != w[1]) {
                issues.push(format!("index {i} labels elements of different ranks {ranks:?}"));
            }
        }
        issues
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    /// Invariant failures found during construction; empty for type functions.
    pub fn issues(&self) -> &[String] {
        &self.issues
    }

    pub fn validate(&self) -> Result<()> {
        match self.issues.first() {
            None => Ok(()),
            Some(first) => Err(Error::InvalidStructure(first.clone())),
        }
    }

    pub fn is_valid(&self) -> bool {
        self.issues.is_empty()
    }

    /// `r(f)`, the rank of the poset.
    pub fn top_rank(&self) -> usize {
        self.elements.iter().map(|e| e.rank).max().unwrap_or(0)
    }

    pub fn index_of(&self, set: Subset) -> Option<usize> {
        self.elements.iter().position(|e| e.set == set)
    }

    pub fn reduced_indices(&self) -> Vec<usize> {
        (0..self.elements.len()).filter(|&k| self.elements[k].reduced).collect()
    }

    pub fn reduced_covers(&self) -> Vec<(usize, usize)> {
        covers_within(&self.elements, &self.reduced_indices())
    }

    /// `P_f^0` as a map from element to label set.
    pub fn reduced_view(&self) -> BTreeMap<Subset, Subset> {
        self.elements.iter().filter(|e| e.reduced).map(|e| (e.set, e.labels)).collect()
    }

    /// The reconstruction `Σ_{T∈P_f} (-1)^{ρ(T)} p_T`.
    pub fn reconstruct(&self) -> Result<BoolFn> {
        let terms: Vec<(Subset, i64)> =
            self.elements.iter().map(|e| (e.set, if e.rank % 2 == 0 { 1 } else { -1 })).collect();
        mobius::inverse_to_fn(&MobiusCoeffs::from_terms(self.n, &terms)?)
    }

    /// `𝕋_i`: elements whose label set contains `i`.
    pub fn labelled_by(&self, i: usize) -> Vec<usize> {
        (0..self.elements.len()).filter(|&k| self.elements[k].labels.contains(i)).collect()
    }

    /// Indices in every element of `P_f`.
    pub fn free_inputs(&self) -> Subset {
        self.elements.iter().fold(Subset::full(self.n), |acc, e| acc.intersection(e.set))
    }

    /// Indices in no label set.
    pub fn free_outputs(&self) -> Subset {
        let labelled = self.elements.iter().fold(Subset::EMPTY, |acc, e| acc.union(e.labels));
        labelled.complement(self.n)
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.n {
            return Err(Error::IndexOutOfRange { index: i, n: self.n });
        }
        Ok(())
    }

    /// `r_f(i)`; `r(f) + 1` for free outputs.
    pub fn index_rank(&self, i: usize) -> Result<usize> {
        self.check_index(i)?;
        let ks = self.labelled_by(i);
        match ks.first() {
            None => Ok(self.top_rank() + 1),
            Some(&k) => {
                let r = self.elements[k].rank;
                if ks.iter().any(|&x| self.elements[x].rank != r) {
                    return Err(Error::InvalidStructure(format!("index {i} has no common rank")));
                }
                Ok(r)
            }
        }
    }

    /// Greatest common lower bound of two elements in `P_f`, if it exists.
    pub fn meet(&self, a: usize, b: usize) -> Option<usize> {
        let (sa, sb) = (self.elements[a].set, self.elements[b].set);
        let lower: Vec<usize> = (0..self.elements.len())
            .filter(|&k| self.elements[k].set.is_subset(sa) && self.elements[k].set.is_subset(sb))
            .collect();
        lower.iter().copied().find(|&m| lower.iter().all(|&k| self.elements[k].set.is_subset(self.elements[m].set)))
    }

    /// `r_f(i,j) = max ρ(S ∧ T)` over `S ∈ 𝕋_i`, `T ∈ 𝕋_j`; `-1` when no
    /// meet exists, `min(r_f(i), r_f(j))` when either index is a free output.
    pub fn pair_rank(&self, i: usize, j: usize) -> Result<i64> {
        self.check_index(i)?;
        self.check_index(j)?;
        if i == j {
            return Err(Error::Precondition(format!("pair rank needs i != j, got {i}")));
        }
        let free = self.free_outputs();
        if free.contains(i) || free.contains(j) {
            return Ok(self.index_rank(i)?.min(self.index_rank(j)?) as i64);
        }
        let mut best = -1i64;
        for &a in &self.labelled_by(i) {
            for &b in &self.labelled_by(j) {
                if let Some(m) = self.meet(a, b) {
                    best = best.max(self.elements[m].rank as i64);
                }
            }
        }
        Ok(best)
    }

    /// Maximal chains of `P_f^0` (or `P_f`), each listed bottom-up as
    /// element indices, in lexicographic order.
    pub fn maximal_chains(&self, reduced: bool) -> Vec<Vec<usize>> {
        let keep: Vec<usize> = if reduced { self.reduced_indices() } else { (0..self.elements.len()).collect() };
        let covers = if reduced { self.reduced_covers() } else { self.covers.clone() };
        let minimal: Vec<usize> = keep.iter().copied().filter(|&k| !covers.iter().any(|&(_, b)| b == k)).collect();
        let mut out = Vec::new();
        fn walk(k: usize, covers: &[(usize, usize)], path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            path.push(k);
            let ups: Vec<usize> = covers.iter().filter(|&&(a, _)| a == k).map(|&(_, b)| b).collect();
            if ups.is_empty() {
                out.push(path.clone());
            }
            for u in ups {
                walk(u, covers, path, out);
            }
            path.pop();
        }
        for m in minimal {
            walk(m, &covers, &mut Vec::new(), &mut out);
        }
        out
    }

    /// Label sets along a chain, bottom-up; `∅` contributes an empty set.
    pub fn chain_labels(&self, chain: &[usize]) -> Vec<Subset> {
        chain.iter().map(|&k| self.elements[k].labels).collect()
    }

    pub fn is_total(&self) -> bool {
        (0..self.elements.len()).all(|a| {
            (0..self.elements.len()).all(|b| {
                let (x, y) = (self.elements[a].set, self.elements[b].set);
                x.is_subset(y) || y.is_subset(x)
            })
        })
    }

    /// DOT rendering of the Hasse diagram. The full view shows elements
    /// outside `P_f^0` in gray.
    pub fn to_dot(&self, reduced: bool) -> String {
        let keep: Vec<usize> = if reduced { self.reduced_indices() } else { (0..self.elements.len()).collect() };
        let covers = if reduced { self.reduced_covers() } else { self.covers.clone() };
        let mut out = String::new();
        out.push_str("digraph structure_poset {\n  rankdir=BT;\n");
        out.push_str("  node [shape=circle, style=filled, fontcolor=white, fontsize=10];\n");
        for &k in &keep {
            let e = &self.elements[k];
            let (label, color) = if e.set.is_empty() {
                (String::from(""), "black")
            } else if !e.reduced {
                (String::from(""), "gray")
            } else {
                let text = e.labels.to_vec().iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",");
                (text, if e.rank % 2 == 0 { "blue" } else { "red" })
            };
            let _ = writeln!(
                out,
                "  v{} [label=\"{}\", fillcolor={}, tooltip=\"{} rank {}\"];",
                e.set.mask(),
                label,
                color,
                e.set,
                e.rank
            );
        }
        for (a, b) in covers {
            let gray = !self.elements[a].reduced || !self.elements[b].reduced;
            let style = if gray { " [color=gray]" } else { "" };
            let _ = writeln!(out, "  v{} -> v{}{};", self.elements[a].set.mask(), self.elements[b].set.mask(), style);
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> PosetJson {
        PosetJson {
            elements: self
                .elements
                .iter()
                .map(|e| PosetElementJson {
                    t: e.set.to_vec(),
                    rank: e.rank,
                    labels: e.labels.to_vec(),
                    reduced: e.reduced,
                })
                .collect(),
            edges: self.covers.iter().map(|&(a, b)| [a, b]).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetElementJson {
    #[serde(rename = "T")]
    pub t: Vec<usize>,
    pub rank: usize,
    pub labels: Vec<usize>,
    pub reduced: bool,
}

/// `{"elements": [...], "edges": [[i, j]]}` with edges the covers of `P_f`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetJson {
    pub elements: Vec<PosetElementJson>,
    pub edges: Vec<[usize; 2]>,
}

/// Outcome of one structural check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub failure: Option<String>,
}

impl Check {
    fn new(name: &'static str, failure: Option<String>) -> Check {
        Check { name, failure }
    }

    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

fn is_chain(sets: &[Subset]) -> bool {
    sets.iter().all(|a| sets.iter().all(|b| a.is_subset(*b) || b.is_subset(*a)))
}

/// Order-theoretic properties of `P_f^0` that hold for every type function.
pub fn lemma_checks(p: &StructurePoset) -> Vec<Check> {
    let red: Vec<Subset> = p.reduced_view().keys().copied().collect();
    let down = |s: Subset| -> Vec<Subset> { red.iter().copied().filter(|x| x.is_subset(s)).collect() };
    let up = |s: Subset| -> Vec<Subset> { red.iter().copied().filter(|x| s.is_subset(*x)).collect() };
    let comparable = |a: Subset, b: Subset| a.is_subset(b) || b.is_subset(a);
    let rank_of = |s: Subset| p.elements[p.index_of(s).expect("element")].rank;

    let mut y_shape = None;
    let mut lattice = None;
    for (ka, &a) in red.iter().enumerate() {
        for &b in &red[ka + 1..] {
            let common_down: Vec<Subset> = down(a).into_iter().filter(|x| x.is_subset(b)).collect();
            let common_up: Vec<Subset> = up(a).into_iter().filter(|x| b.is_subset(*x)).collect();
            if !comparable(a, b) && y_shape.is_none() && (!is_chain(&common_down) || !is_chain(&common_up)) {
                y_shape = Some(format!("{a} and {b} have a common down- or up-set that is not a chain"));
            }
            let meet = common_down.iter().find(|m| common_down.iter().all(|x| x.is_subset(**m)));
            let join = common_up.iter().find(|j| common_up.iter().all(|x| j.is_subset(*x)));
            if lattice.is_none() && (common_down.is_empty() != meet.is_none() || common_up.is_empty() != join.is_none()) {
                lattice = Some(format!("{a} and {b} have a bound but no meet or join"));
            }
        }
    }
    if lattice.is_none() {
        let has_bottom = red.iter().any(|m| red.iter().all(|x| m.is_subset(*x)));
        let has_top = red.iter().any(|m| red.iter().all(|x| x.is_subset(*m)));
        let is_lattice = red.iter().all(|a| {
            red.iter().all(|b| {
                let cd: Vec<Subset> = down(*a).into_iter().filter(|x| x.is_subset(*b)).collect();
                let cu: Vec<Subset> = up(*a).into_iter().filter(|x| b.is_subset(*x)).collect();
                cd.iter().any(|m| cd.iter().all(|x| x.is_subset(*m))) && cu.iter().any(|j| cu.iter().all(|x| j.is_subset(*x)))
            })
        });
        if is_lattice != (has_bottom && has_top) {
            lattice = Some(format!("lattice = {is_lattice} but bounded = {}", has_bottom && has_top));
        }
    }

    let mut x_shape = None;
    for &s in &red {
        let d = down(s);
        let u = up(s);
        if !is_chain(&d) && !is_chain(&u) {
            x_shape = Some(format!("neither the down-set nor the up-set of {s} is a chain"));
            break;
        }
        if is_chain(&d) && d.len() - 1 != rank_of(s) {
            x_shape = Some(format!("down-chain of {s} has length {} but rank {}", d.len() - 1, rank_of(s)));
            break;
        }
    }

    let mut meet_check = None;
    'outer: for &a in &red {
        for &b in &red {
            let (ia, ib) = (p.index_of(a).expect("element"), p.index_of(b).expect("element"));
            if let Some(m) = p.meet(ia, ib) {
                if !p.elements[m].reduced {
                    meet_check = Some(format!("meet of {a} and {b} is {} outside the reduced poset", p.elements[m].set));
                    break 'outer;
                }
            }
        }
    }

    vec![
        Check::new("no Y or inverted Y", y_shape),
        Check::new("no X, down-chains match rank", x_shape),
        Check::new("meets stay reduced", meet_check),
        Check::new("lattice iff bounded", lattice),
    ]
}

/// Operations covered by [`poset_op_check`].
#[derive(Clone, Debug)]
pub enum PosetOp<'a> {
    Permute(&'a Permutation),
    Complement,
    Tensor(&'a BoolFn),
    Causal(&'a BoolFn),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpReport {
    pub op: &'static str,
    /// Sub-case of the causal-product description, 1 to 4.
    pub case: Option<u8>,
    pub mismatch: Option<String>,
}

impl OpReport {
    pub fn passed(&self) -> bool {
        self.mismatch.is_none()
    }
}

fn compare_views(expected: &BTreeMap<Subset, Subset>, actual: &BTreeMap<Subset, Subset>, labels: bool) -> Option<String> {
    let ek: Vec<&Subset> = expected.keys().collect();
    let ak: Vec<&Subset> = actual.keys().collect();
    if ek != ak {
        return Some(format!("elements differ: predicted {ek:?}, computed {ak:?}"));
    }
    if labels {
        for (s, l) in expected {
            if actual[s] != *l {
                return Some(format!("labels of {s}: predicted {l}, computed {}", actual[s]));
            }
        }
    }
    None
}

fn minimal_of(view: &BTreeMap<Subset, Subset>) -> Vec<Subset> {
    view.keys().copied().filter(|s| !view.keys().any(|x| x.is_proper_subset(*s))).collect()
}

/// Predicts `P^0` of the composed function from the operands' reduced
/// posets and compares it with the poset computed from its Möbius transform.
pub fn poset_op_check(f: &BoolFn, op: PosetOp<'_>) -> Result<OpReport> {
    let pf = StructurePoset::new(f);
    let vf = pf.reduced_view();
    let m = f.n();
    match op {
        PosetOp::Permute(sigma) => {
            let h = f.permute(sigma)?;
            let inv = sigma.inverse();
            let predicted: BTreeMap<Subset, Subset> =
                vf.iter().map(|(s, l)| (inv.act_on_subset(*s), inv.act_on_subset(*l))).collect();
            let actual = StructurePoset::new(&h).reduced_view();
            Ok(OpReport { op: "permute", case: None, mismatch: compare_views(&predicted, &actual, true) })
        }
        PosetOp::Complement => {
            let h = f.complement();
            let ph = StructurePoset::new(&h);
            let free = !pf.free_outputs().is_empty() || !ph.free_outputs().is_empty();
            let mut predicted = vf.clone();
            let mut toggle = vec![Subset::EMPTY];
            if free {
                toggle.push(Subset::full(m));
            }
            for t in toggle {
                if predicted.remove(&t).is_none() {
                    predicted.insert(t, Subset::EMPTY);
                }
            }
            let actual = ph.reduced_view();
            // only the element sets are predicted; labels away from ∅ and [m] must persist
            let mut mismatch = compare_views(&predicted, &actual, false);
            if mismatch.is_none() {
                for (s, l) in &vf {
                    if !s.is_empty() && *s != Subset::full(m) && actual.get(s) != Some(l) {
                        mismatch = Some(format!("labels of {s} changed under complement"));
                        break;
                    }
                }
            }
            Ok(OpReport { op: "complement", case: None, mismatch })
        }
        PosetOp::Tensor(g) => {
            let h = f.tensor(g)?;
            let vg = StructurePoset::new(g).reduced_view();
            let (minf, ming) = (minimal_of(&vf), minimal_of(&vg));
            let mut predicted = BTreeMap::new();
            for (s, ls) in &vf {
                for (t, lt) in &vg {
                    let (smin, tmin) = (minf.contains(s), ming.contains(t));
                    if !smin && !tmin {
                        continue;
                    }
                    let label = if !smin {
                        *ls
                    } else if !tmin {
                        lt.shift(m)
                    } else {
                        ls.union(lt.shift(m))
                    };
                    predicted.insert(s.union(t.shift(m)), label);
                }
            }
            let actual = StructurePoset::new(&h).reduced_view();
            Ok(OpReport { op: "tensor", case: None, mismatch: compare_views(&predicted, &actual, true) })
        }
        PosetOp::Causal(g) => {
            let h = f.causal(g)?;
            let pg = StructurePoset::new(g);
            let vg = pg.reduced_view();
            let top = Subset::full(m);
            let lift = |t: Subset| top.union(t.shift(m));
            let mut predicted: BTreeMap<Subset, Subset> = BTreeMap::new();
            let case;
            let mut upper: BTreeMap<Subset, Subset> = vg.iter().map(|(t, l)| (*t, l.shift(m))).collect();
            let mut extra = Subset::EMPTY;
            let mut lower = vf.clone();
            if vf.contains_key(&top) {
                case = 1;
                extra = lower.remove(&top).expect("present");
            } else if vg.contains_key(&Subset::EMPTY) {
                case = 2;
                upper.remove(&Subset::EMPTY);
                extra = pf.free_outputs();
            } else if !pf.free_outputs().is_empty() {
                case = 3;
                predicted.insert(top, pf.free_outputs());
            } else {
                case = 4;
            }
            let mins = minimal_of(&upper);
            for (t, l) in &upper {
                let l = if mins.contains(t) { l.union(extra) } else { *l };
                predicted.insert(lift(*t), l);
            }
            predicted.extend(lower);
            let actual = StructurePoset::new(&h).reduced_view();
            Ok(OpReport { op: "causal", case: Some(case), mismatch: compare_views(&predicted, &actual, true) })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::typeterm::TypeTerm;

    fn set(ix: &[usize]) -> Subset {
        Subset::from_indices(16, ix).unwrap()
    }

    fn term(t: &str) -> BoolFn {
        TypeTerm::parse(t).unwrap().eval()
    }

    #[test]
    fn basis_poset_is_single_element() {
        for t in 0..8u16 {
            let p = StructurePoset::new(&BoolFn::basis(3, Subset(t)).unwrap());
            assert_eq!(p.elements().len(), 1);
            assert_eq!(p.elements()[0].rank, 0);
            assert!(p.is_valid());
        }
    }

    #[test]
    fn two_comb_is_a_chain() {
        let f = term("(A3 -> A2) -> (A4 -> A1)");
        let p = StructurePoset::new(&f);
        let sets: Vec<Subset> = p.elements().iter().map(|e| e.set).collect();
        assert_eq!(sets, vec![Subset::EMPTY, set(&[1]), set(&[1, 2]), set(&[1, 2, 3]), set(&[1, 2, 3, 4])]);
        assert!(p.elements().iter().all(|e| e.reduced));
        assert_eq!(p.maximal_chains(true).len(), 1);
        assert!(p.is_total());
    }

    #[test]
    fn process_matrix_reduced_poset() {
        let p = StructurePoset::new(&term("~((A1 -> A2) * (A3 -> A4))"));
        assert!(p.is_valid());
        assert!(p.reduced_view().get(&Subset::EMPTY).is_none());
        let chains = p.maximal_chains(true);
        let traces: Vec<Vec<Subset>> = chains.iter().map(|c| p.chain_labels(c)).collect();
        assert_eq!(traces, vec![vec![set(&[2]), set(&[1])], vec![set(&[4]), set(&[3])]]);
        assert_eq!(p.pair_rank(2, 3).unwrap(), -1);
        assert_eq!(p.pair_rank(4, 1).unwrap(), -1);
    }

    #[test]
    fn nonsignalling_pair_ranks() {
        let p = StructurePoset::new(&term("(A2 -> A1) * (A4 -> A3)"));
        assert_eq!(p.pair_rank(2, 3).unwrap(), 0);
        assert_eq!(p.pair_rank(1, 4).unwrap(), 0);
        let traces: Vec<Vec<Subset>> = p.maximal_chains(true).iter().map(|c| p.chain_labels(c)).collect();
        assert_eq!(traces, vec![vec![Subset::EMPTY, set(&[1]), set(&[2])], vec![Subset::EMPTY, set(&[3]), set(&[4])]]);
        assert!(p.pair_rank(2, 2).is_err());
    }

    #[test]
    fn free_outputs_rank_above_top() {
        // a channel 1 -> 2 next to a free output 3 (a state on 3)
        let f = term("(A1 -> A2) * A3");
        let p = StructurePoset::new(&f);
        assert_eq!(p.free_outputs(), set(&[3]));
        assert_eq!(p.index_rank(3).unwrap(), p.top_rank() + 1);
        assert_eq!(p.index_rank(2).unwrap(), 1);
        assert_eq!(p.pair_rank(1, 3).unwrap(), 2);
    }

    #[test]
    fn dot_output_is_stable() {
        let dot = StructurePoset::new(&BoolFn::one(3).unwrap()).to_dot(true);
        assert_eq!(dot.matches("fillcolor").count(), 1);
        assert!(dot.contains("fillcolor=black"));
        let f = term("~((A1 -> A2) * (A3 -> A4))");
        let p = StructurePoset::new(&f);
        assert_eq!(p.to_dot(false), p.to_dot(false));
        assert!(p.to_dot(false).contains("gray"));
        assert!(!p.to_dot(true).contains("gray"));
    }

    #[test]
    fn json_dump() {
        let p = StructurePoset::new(&term("A2 -> A1"));
        let json = serde_json::to_string(&p.to_json()).unwrap();
        assert_eq!(
            json,
            r#"{"elements":[{"T":[],"rank":0,"labels":[],"reduced":true},{"T":[1],"rank":1,"labels":[1],"reduced":true},{"T":[1,2],"rank":2,"labels":[2],"reduced":true}],"edges":[[0,1],[1,2]]}"#
        );
    }

    #[test]
    fn non_type_function_reports_issues() {
        let c = MobiusCoeffs::parse(2, "1 - p{1} - p{2} + 2*p{1,2}").unwrap();
        let p = StructurePoset::from_coeffs(&c);
        assert!(!p.is_valid());
        assert!(p.validate().is_err());
    }

    #[test]
    fn op_checks_on_channels() {
        let gamma = term("A2 -> A1");
        let r = poset_op_check(&gamma, PosetOp::Tensor(&gamma)).unwrap();
        assert!(r.passed(), "{r:?}");
        let r = poset_op_check(&gamma, PosetOp::Complement).unwrap();
        assert!(r.passed(), "{r:?}");
        let r = poset_op_check(&gamma, PosetOp::Causal(&gamma)).unwrap();
        assert!(r.passed(), "{r:?}");
    }
}
