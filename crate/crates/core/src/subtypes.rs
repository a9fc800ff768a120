// SPDX-License-Identifier: Apache-2.0

//! Subtypes, the output order `≤_O`, monotonicity and the lattice of
//! regular subtypes with a fixed output set.

use std::collections::{BTreeSet, HashSet};

use crate::boolfn::{BitString, BoolFn, Subset};
use crate::error::{Error, Result};
use crate::mobius::{self, MobiusCoeffs};
use crate::typeterm::{self, is_chain_type};

/// `s ≤_O t`: raised on `O`, lowered on its complement.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OutputOrder {
    n: usize,
    outputs: Subset,
}

impl OutputOrder {
    pub fn new(n: usize, outputs: Subset) -> Result<OutputOrder> {
        if n == 0 || n > crate::boolfn::MAX_N {
            return Err(Error::InvalidArity(n));
        }
        if !outputs.is_subset(Subset::full(n)) {
            let index = outputs.indices().find(|&i| i > n).unwrap_or(0);
            return Err(Error::IndexOutOfRange { index, n });
        }
        Ok(OutputOrder { n, outputs })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn outputs(&self) -> Subset {
        self.outputs
    }

    pub fn inputs(&self) -> Subset {
        self.outputs.complement(self.n)
    }

    /// Order on packed strings.
    pub fn leq_bits(&self, s: u16, t: u16) -> bool {
        let (o, i) = (self.outputs.0, self.inputs().0);
        (s & o) & !(t & o) == 0 && (t & i) & !(s & i) == 0
    }

    pub fn leq(&self, s: BitString, t: BitString) -> Result<bool> {
        for x in [s, t] {
            if x.n() != self.n {
                return Err(Error::DimensionMismatch { expected: self.n, found: x.n() });
            }
        }
        Ok(self.leq_bits(s.bits(), t.bits()))
    }

    /// Least upper bound: OR on outputs, AND on inputs.
    pub fn join_bits(&self, s: u16, t: u16) -> u16 {
        ((s | t) & self.outputs.0) | ((s & t) & self.inputs().0)
    }

    /// `s ∈ D_θ`, i.e. `s ≤_O θ`.
    pub fn in_down_theta(&self, s: u16) -> bool {
        s & self.outputs.0 == 0
    }

    /// `s ∈ U_θ`, i.e. `θ ≤_O s`.
    pub fn in_up_theta(&self, s: u16) -> bool {
        s & self.inputs().0 == 0
    }

    /// Strings outside `D_θ ∪ U_θ`.
    pub fn free_strings(&self) -> Vec<u16> {
        (0..(1u32 << self.n))
            .map(|s| s as u16)
            .filter(|&s| !self.in_down_theta(s) && !self.in_up_theta(s))
            .collect()
    }
}

/// Bits `s` of `w` (a table word) for which `s` has bit `b` clear.
fn low_half_mask(b: usize) -> u64 {
    const M: [u64; 6] = [
        0x5555_5555_5555_5555,
        0x3333_3333_3333_3333,
        0x0f0f_0f0f_0f0f_0f0f,
        0x00ff_00ff_00ff_00ff,
        0x0000_ffff_0000_ffff,
        0x0000_0000_ffff_ffff,
    ];
    M[b]
}

/// Monotone with respect to `≤_{O_f}`, checked on single-bit covers.
pub fn is_monotone(f: &BoolFn) -> bool {
    let n = f.n();
    let outputs = f.io_split().outputs;
    let words = f.words();
    for b in 0..n {
        let raise = outputs.contains(b + 1);
        if b < 6 {
            let m = low_half_mask(b);
            for &w in words {
                let lo = w & m;
                let hi = (w >> (1 << b)) & m;
                // output: f(s) ≤ f(s + e); input: f(s + e) ≤ f(s)
                let bad = if raise { lo & !hi } else { hi & !lo };
                if bad != 0 {
                    return false;
                }
            }
        } else {
            let stride = 1 << (b - 6);
            for k in 0..words.len() {
                if k & stride != 0 {
                    continue;
                }
                let (lo, hi) = (words[k], words[k + stride]);
                let bad = if raise { lo & !hi } else { hi & !lo };
                if bad != 0 {
                    return false;
                }
            }
        }
    }
    true
}

/// The two single-coordinate conditions: raising an output bit or lowering
/// an input bit never leaves the support.
pub fn satisfies_remark_conditions(f: &BoolFn) -> bool {
    let n = f.n();
    let outputs = f.io_split().outputs;
    for i in 1..=n {
        for s in BitString::all(n) {
            if s.get(i) {
                continue;
            }
            let with = BitString::new(n, s.bits() | 1 << (i - 1)).expect("in range");
            let (zero, one) = (f.get(s.bits()), f.get(with.bits()));
            if outputs.contains(i) && zero && !one {
                return false;
            }
            if !outputs.contains(i) && one && !zero {
                return false;
            }
        }
    }
    true
}

/// `p_{I_f} ≤ f ≤ p_{O_f}^*` and monotone.
pub fn is_monotone_subtype(f: &BoolFn) -> bool {
    f.is_subtype() && is_monotone(f)
}

/// The support is a `≤_O` upset meeting `D_θ` only in `θ`.
pub fn is_upset_form(f: &BoolFn) -> bool {
    let ord = OutputOrder::new(f.n(), f.io_split().outputs).expect("valid");
    let n = f.n();
    let support: Vec<u16> = f.support().collect();
    for &s in &support {
        if s != 0 && ord.in_down_theta(s) {
            return false;
        }
        for t in 0..(1u32 << n) {
            let t = t as u16;
            if ord.leq_bits(s, t) && !f.get(t) {
                return false;
            }
        }
    }
    true
}

/// Basic strings for `≤_O`: outside `D_θ ∪ U_θ`, one output bit set and at
/// most one input bit clear. Empty when `O` is `∅` or `[n]`.
pub fn basic_strings(n: usize, outputs: Subset) -> Result<Vec<BitString>> {
    let ord = OutputOrder::new(n, outputs)?;
    let inputs = ord.inputs();
    let mut out: Vec<BitString> = ord
        .free_strings()
        .into_iter()
        .filter(|&s| Subset(s).intersection(outputs).len() == 1)
        .filter(|&s| inputs.difference(Subset(s)).len() <= 1)
        .map(|s| BitString::new(n, s).expect("in range"))
        .collect();
    out.sort_by_key(|s| (s.ones().len(), std::cmp::Reverse(s.to_string())));
    Ok(out)
}

/// `f_s`, the monotone subtype supported on `U_s ∪ U_θ`. Defined for
/// `s = θ` (giving `p_I`) and for every `s` not below `θ`.
pub fn f_s(n: usize, outputs: Subset, s: BitString) -> Result<BoolFn> {
    let ord = OutputOrder::new(n, outputs)?;
    if s.n() != n {
        return Err(Error::DimensionMismatch { expected: n, found: s.n() });
    }
    if !s.is_zero() && ord.in_down_theta(s.bits()) {
        return Err(Error::Precondition(format!("{s} lies below θ in the output order")));
    }
    BoolFn::from_fn(n, |t| ord.leq_bits(s.bits(), t) || ord.in_up_theta(t))
}

/// Basic strings `t ≤_O s` whose join is `s`, for `s` outside `D_θ ∪ U_θ`.
pub fn basic_decomposition(n: usize, outputs: Subset, s: BitString) -> Result<Vec<BitString>> {
    let ord = OutputOrder::new(n, outputs)?;
    let bits = s.bits();
    if ord.in_down_theta(bits) || ord.in_up_theta(bits) {
        return Err(Error::Precondition(format!("{s} lies in D_θ ∪ U_θ")));
    }
    let inputs = ord.inputs();
    let zeros = inputs.difference(Subset(bits));
    let mut out = Vec::new();
    for j in Subset(bits).intersection(outputs).indices() {
        if zeros.is_empty() {
            out.push(BitString::new(n, inputs.union(Subset::singleton(j)).0)?);
        }
        for i in zeros.indices() {
            let t = inputs.difference(Subset::singleton(i)).union(Subset::singleton(j));
            out.push(BitString::new(n, t.0)?);
        }
    }
    Ok(out)
}

/// Closure of `seeds` under pointwise meet and join, sorted.
pub fn lattice_closure(seeds: &[BoolFn]) -> Result<Vec<BoolFn>> {
    let mut members: Vec<BoolFn> = Vec::new();
    let mut seen: HashSet<BoolFn> = HashSet::new();
    let mut queue: Vec<BoolFn> = Vec::new();
    for f in seeds {
        if seen.insert(f.clone()) {
            queue.push(f.clone());
        }
    }
    while let Some(f) = queue.pop() {
        for g in &members {
            for h in [f.meet(g)?, f.join(g)?] {
                if seen.insert(h.clone()) {
                    queue.push(h);
                }
            }
        }
        members.push(f);
    }
    members.sort();
    Ok(members)
}

/// All monotone subtypes with output set `O`, as upsets of the free strings.
pub fn monotone_subtypes(n: usize, outputs: Subset) -> Result<Vec<BoolFn>> {
    let ord = OutputOrder::new(n, outputs)?;
    let free = ord.free_strings();
    // strings above each free string, among the free ones
    let above: Vec<Vec<usize>> = free
        .iter()
        .map(|&x| (0..free.len()).filter(|&k| free[k] != x && ord.leq_bits(x, free[k])).collect())
        .collect();
    // process tops first: more output bits, fewer input bits
    let mut order: Vec<usize> = (0..free.len()).collect();
    let height = |s: u16| Subset(s).intersection(outputs).len() as i64 - Subset(s).intersection(ord.inputs()).len() as i64;
    order.sort_by_key(|&k| (std::cmp::Reverse(height(free[k])), free[k]));
    let base: Vec<u16> = (0..(1u32 << n)).map(|s| s as u16).filter(|&s| ord.in_up_theta(s)).collect();
    let mut out = Vec::new();
    let mut chosen = vec![false; free.len()];
    fn rec(
        pos: usize,
        order: &[usize],
        above: &[Vec<usize>],
        chosen: &mut Vec<bool>,
        emit: &mut dyn FnMut(&[bool]),
    ) {
        if pos == order.len() {
            emit(chosen);
            return;
        }
        let k = order[pos];
        rec(pos + 1, order, above, chosen, emit);
        if above[k].iter().all(|&u| chosen[u]) {
            chosen[k] = true;
            rec(pos + 1, order, above, chosen, emit);
            chosen[k] = false;
        }
    }
    let mut emit = |chosen: &[bool]| {
        let mut support: HashSet<u16> = base.iter().copied().collect();
        for (k, &c) in chosen.iter().enumerate() {
            if c {
                support.insert(free[k]);
            }
        }
        out.push(BoolFn::from_fn(n, |s| support.contains(&s)).expect("θ in U_θ"));
    };
    rec(0, &order, &above, &mut chosen, &mut emit);
    out.sort();
    Ok(out)
}

/// `1 - p_{j} + p_{I∪{j}}` and `p_{i} - p_{i,j} + p_{I∪{j}}` for `j ∈ O`,
/// `i ∈ I`, together with `p_I`; deduplicated and sorted.
pub fn generators(n: usize, outputs: Subset) -> Result<Vec<BoolFn>> {
    let ord = OutputOrder::new(n, outputs)?;
    let inputs = ord.inputs();
    let mut out: BTreeSet<BoolFn> = BTreeSet::new();
    out.insert(BoolFn::basis(n, inputs)?);
    for j in outputs.indices() {
        let sj = Subset::singleton(j);
        let top = inputs.union(sj);
        let c = MobiusCoeffs::from_terms(n, &[(Subset::EMPTY, 1), (sj, -1), (top, 1)])?;
        out.insert(mobius::inverse_to_fn(&c)?);
        for i in inputs.indices() {
            let si = Subset::singleton(i);
            let c = MobiusCoeffs::from_terms(n, &[(si, 1), (si.union(sj), -1), (top, 1)])?;
            out.insert(mobius::inverse_to_fn(&c)?);
        }
    }
    Ok(out.into_iter().collect())
}

#[derive(Clone, Debug)]
pub struct RegularLattice {
    pub n: usize,
    pub outputs: Subset,
    pub members: Vec<BoolFn>,
    pub generators: Vec<BoolFn>,
    /// Size of `𝒯_{n,O}`.
    pub type_count: usize,
    pub chain_type_count: usize,
}

/// `ℛ_{n,O}`, computed as the lattice closure of `𝒯_{n,O}` and checked
/// against the monotone subtypes and the generator closure.
pub fn enumerate_regular(n: usize, outputs: Subset) -> Result<RegularLattice> {
    let ord = OutputOrder::new(n, outputs)?;
    let types = typeterm::enumerate_types(n)?.with_outputs(ord.outputs());
    let closure = lattice_closure(&types)?;
    let monotone = monotone_subtypes(n, outputs)?;
    if closure != monotone {
        return Err(Error::Invariant(format!(
            "n={n}, O={outputs}: closure of type functions has {} members, monotone subtypes {}",
            closure.len(),
            monotone.len()
        )));
    }
    let gens = generators(n, outputs)?;
    let from_gens = lattice_closure(&gens)?;
    if from_gens != closure {
        return Err(Error::Invariant(format!(
            "n={n}, O={outputs}: generators close to {} members, expected {}",
            from_gens.len(),
            closure.len()
        )));
    }
    let chain_type_count = types.iter().filter(|f| is_chain_type(f)).count();
    Ok(RegularLattice { n, outputs, members: closure, generators: gens, type_count: types.len(), chain_type_count })
}

/// A regular subtype whose Möbius transform leaves `{-1, 0, 1}`.
#[derive(Clone, Debug)]
pub struct MobiusOutlier {
    pub outputs: Subset,
    pub f: BoolFn,
    pub coeffs: MobiusCoeffs,
}

/// Regular subtypes of `[n]` with some `|f̂_T| ≥ 2`, over every `O`.
pub fn mobius_outliers(n: usize) -> Result<Vec<MobiusOutlier>> {
    let mut out = Vec::new();
    for o in 0..(1u32 << n) {
        let outputs = Subset(o as u16);
        for f in monotone_subtypes(n, outputs)? {
            let coeffs = mobius::transform(&f);
            if coeffs.max_abs() >= 2 {
                out.push(MobiusOutlier { outputs, f, coeffs });
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(ix: &[usize]) -> Subset {
        Subset::from_indices(16, ix).unwrap()
    }

    fn bs(t: &str) -> BitString {
        BitString::parse(t).unwrap()
    }

    fn texts(v: &[BitString]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn output_order() {
        let ord = OutputOrder::new(2, set(&[1])).unwrap();
        assert!(ord.leq(bs("01"), bs("00")).unwrap());
        assert!(ord.leq(bs("00"), bs("10")).unwrap());
        assert!(!ord.leq(bs("10"), bs("01")).unwrap());
        let co = OutputOrder::new(2, set(&[2])).unwrap();
        for s in BitString::all(2) {
            assert!(ord.leq(s, s).unwrap());
            for t in BitString::all(2) {
                assert_eq!(ord.leq(s, t).unwrap(), co.leq(t, s).unwrap());
            }
        }
    }

    #[test]
    fn basic_string_examples() {
        assert_eq!(texts(&basic_strings(3, set(&[1, 3])).unwrap()), vec!["110", "011"]);
        assert_eq!(
            texts(&basic_strings(4, set(&[1, 3])).unwrap()),
            vec!["1100", "1001", "0110", "0011", "1101", "0111"]
        );
        assert_eq!(texts(&basic_strings(2, set(&[1])).unwrap()), vec!["11"]);
        assert!(basic_strings(3, Subset::EMPTY).unwrap().is_empty());
        assert!(basic_strings(3, Subset::full(3)).unwrap().is_empty());
    }

    #[test]
    fn f_s_examples() {
        let o = set(&[1, 3]);
        assert_eq!(f_s(3, o, bs("000")).unwrap(), BoolFn::basis(3, set(&[2])).unwrap());
        let beta1 = mobius::inverse_to_fn(&MobiusCoeffs::parse(3, "1 - p{1} + p{1,2}").unwrap()).unwrap();
        assert_eq!(f_s(3, o, bs("110")).unwrap(), beta1);
        let f1101 = mobius::inverse_to_fn(&MobiusCoeffs::parse(4, "1 - p{1} + p{1,2,4}").unwrap()).unwrap();
        assert_eq!(f_s(4, o, bs("1101")).unwrap(), f1101);
        let f0011 = mobius::inverse_to_fn(&MobiusCoeffs::parse(4, "p{2} - p{2,3} + p{2,3,4}").unwrap()).unwrap();
        assert_eq!(f_s(4, o, bs("0011")).unwrap(), f0011);
        assert!(matches!(f_s(3, o, bs("010")), Err(Error::Precondition(_))));
    }

    #[test]
    fn monotone_checks_agree_exhaustively_small() {
        for n in 1..=3usize {
            for t in 0..(1u32 << (1 << n)) {
                if t & 1 == 0 {
                    continue;
                }
                let f = BoolFn::from_fn(n, |s| t >> s & 1 == 1).unwrap();
                assert_eq!(is_monotone(&f), satisfies_remark_conditions(&f), "{f:?}");
                assert_eq!(is_monotone_subtype(&f), is_upset_form(&f), "{f:?}");
            }
        }
    }

    #[test]
    fn wide_tables_use_word_strides() {
        let f = BoolFn::basis(8, set(&[7, 8])).unwrap();
        assert!(is_monotone(&f));
        assert_eq!(is_monotone(&f.complement()), satisfies_remark_conditions(&f.complement()));
        let bad = BoolFn::from_fn(7, |s| s == 0 || s == 1 << 6 | 1).unwrap();
        assert_eq!(is_monotone(&bad), satisfies_remark_conditions(&bad));
    }

    #[test]
    fn small_regular_lattices() {
        let r = enumerate_regular(3, set(&[1, 3])).unwrap();
        assert_eq!(r.members.len(), 5);
        assert_eq!(r.members.len(), lattice_closure(&r.generators).unwrap().len());
        assert_eq!(enumerate_regular(3, Subset::full(3)).unwrap().members, vec![BoolFn::one(3).unwrap()]);
        assert_eq!(enumerate_regular(3, Subset::EMPTY).unwrap().members, vec![BoolFn::bottom(3).unwrap()]);
    }

    #[test]
    fn generators_are_short_chains() {
        for o in [set(&[1, 3]), set(&[2]), set(&[1, 2, 4])] {
            for g in generators(4, o).unwrap() {
                let c = typeterm::ChainSpec::from_coeffs(&mobius::transform(&g)).expect("chain type");
                assert!([0, 2, 4].contains(&c.length()));
                assert_eq!(g.io_split().outputs, o);
            }
        }
    }
}
