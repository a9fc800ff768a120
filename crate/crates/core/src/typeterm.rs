// SPDX-License-Identifier: Apache-2.0

//! Type terms and the type functions they denote.
//!
//! Grammar (ASCII):
//!
//! ```text
//! term    := product ("->" term)?
//! product := unary ("*" unary)*
//! unary   := "~" unary | "(" term ")" | atom
//! atom    := "A" digits
//! ```
//!
//! `x -> y` is sugar for `~(x * ~y)`. A term over `[n]` denotes a function
//! on its leaves listed in increasing order.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;

use crate::boolfn::{BoolFn, Permutation, Subset, MAX_N};
use crate::error::{Error, Result};
use crate::mobius::{self, MobiusCoeffs};

pub const DEFAULT_MAX_N: usize = 5;

/// Enumeration guard, overridable through `HOTKIT_MAX_N`.
pub fn max_n() -> usize {
    std::env::var("HOTKIT_MAX_N")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .map(|v| v.min(MAX_N))
        .unwrap_or(DEFAULT_MAX_N)
}

pub fn check_guard(n: usize) -> Result<()> {
    let max = max_n();
    if n > max {
        return Err(Error::GuardExceeded { n, max });
    }
    Ok(())
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum TypeTerm {
    Atom(usize),
    Dual(Box<TypeTerm>),
    Tensor(Box<TypeTerm>, Box<TypeTerm>),
}

impl TypeTerm {
    pub fn atom(i: usize) -> TypeTerm {
        TypeTerm::Atom(i)
    }

    pub fn dual(self) -> TypeTerm {
        TypeTerm::Dual(Box::new(self))
    }

    pub fn tensor(self, other: TypeTerm) -> TypeTerm {
        TypeTerm::Tensor(Box::new(self), Box::new(other))
    }

    pub fn arrow(self, other: TypeTerm) -> TypeTerm {
        self.tensor(other.dual()).dual()
    }

    /// Parses and validates a term; leaves must be exactly `A1..An`.
    pub fn parse(text: &str) -> Result<TypeTerm> {
        let mut p = Parser { src: text, pos: 0 };
        let term = p.term()?;
        p.skip_ws();
        if p.pos < text.len() {
            return Err(p.error("unexpected trailing input"));
        }
        term.validate()?;
        Ok(term)
    }

    /// Leaf indices in left-to-right order.
    pub fn leaves(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<usize>) {
        match self {
            TypeTerm::Atom(i) => out.push(*i),
            TypeTerm::Dual(x) => x.collect_leaves(out),
            TypeTerm::Tensor(x, y) => {
                x.collect_leaves(out);
                y.collect_leaves(out);
            }
        }
    }

    pub fn n(&self) -> usize {
        self.leaves().len()
    }

    pub fn validate(&self) -> Result<()> {
        let mut leaves = self.leaves();
        let n = leaves.len();
        if n > MAX_N {
            return Err(Error::TermValidation(format!("{n} leaves, at most {MAX_N} supported")));
        }
        leaves.sort_unstable();
        for w in leaves.windows(2) {
            if w[0] == w[1] {
                return Err(Error::TermValidation(format!("index A{} repeated", w[0])));
            }
        }
        for (k, &i) in leaves.iter().enumerate() {
            if i != k + 1 {
                let missing = k + 1;
                return Err(Error::TermValidation(format!(
                    "indices must be exactly 1..{n}; A{missing} is missing"
                )));
            }
        }
        Ok(())
    }

    /// Renames leaves by `map(i)`.
    pub fn relabel(&self, map: &impl Fn(usize) -> usize) -> TypeTerm {
        match self {
            TypeTerm::Atom(i) => TypeTerm::Atom(map(*i)),
            TypeTerm::Dual(x) => x.relabel(map).dual(),
            TypeTerm::Tensor(x, y) => x.relabel(map).tensor(y.relabel(map)),
        }
    }

    /// The type function on the leaves in increasing order.
    pub fn eval(&self) -> BoolFn {
        self.eval_with_leaves().0
    }

    fn eval_with_leaves(&self) -> (BoolFn, Vec<usize>) {
        match self {
            TypeTerm::Atom(i) => (BoolFn::one(1).expect("n=1"), vec![*i]),
            TypeTerm::Dual(x) => {
                let (f, l) = x.eval_with_leaves();
                (f.complement(), l)
            }
            TypeTerm::Tensor(x, y) => {
                let (f, lx) = x.eval_with_leaves();
                let (g, ly) = y.eval_with_leaves();
                let mut all: Vec<usize> = lx.iter().chain(&ly).copied().collect();
                all.sort_unstable();
                let mut a = Subset::EMPTY;
                for (pos, leaf) in all.iter().enumerate() {
                    if lx.contains(leaf) {
                        a = a.union(Subset::singleton(pos + 1));
                    }
                }
                (tensor_on(&f, &g, a).expect("within 16 leaves"), all)
            }
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, prec: u8) -> fmt::Result {
        if let TypeTerm::Dual(inner) = self {
            if let TypeTerm::Tensor(x, y) = inner.as_ref() {
                if let TypeTerm::Dual(y) = y.as_ref() {
                    if prec > 0 {
                        f.write_str("(")?;
                    }
                    x.fmt_prec(f, 1)?;
                    f.write_str(" -> ")?;
                    y.fmt_prec(f, 0)?;
                    if prec > 0 {
                        f.write_str(")")?;
                    }
                    return Ok(());
                }
            }
        }
        match self {
            TypeTerm::Atom(i) => write!(f, "A{i}"),
            TypeTerm::Dual(x) => {
                f.write_str("~")?;
                x.fmt_prec(f, 2)
            }
            TypeTerm::Tensor(x, y) => {
                if prec > 1 {
                    f.write_str("(")?;
                }
                x.fmt_prec(f, 1)?;
                f.write_str(" * ")?;
                y.fmt_prec(f, 2)?;
                if prec > 1 {
                    f.write_str(")")?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for TypeTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}

impl fmt::Debug for TypeTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TypeTerm({self})")
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Syntax { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn term(&mut self) -> Result<TypeTerm> {
        let lhs = self.product()?;
        if self.eat("->") {
            let rhs = self.term()?;
            return Ok(lhs.arrow(rhs));
        }
        Ok(lhs)
    }

    fn product(&mut self) -> Result<TypeTerm> {
        let mut acc = self.unary()?;
        while self.eat("*") {
            acc = acc.tensor(self.unary()?);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<TypeTerm> {
        self.skip_ws();
        if self.eat("~") {
            return Ok(self.unary()?.dual());
        }
        if self.eat("(") {
            let t = self.term()?;
            if !self.eat(")") {
                return Err(self.error("expected ')'"));
            }
            return Ok(t);
        }
        self.skip_ws();
        if self.src[self.pos..].starts_with('A') {
            let start = self.pos;
            self.pos += 1;
            let digits = self.src[self.pos..].bytes().take_while(u8::is_ascii_digit).count();
            if digits == 0 {
                return Err(self.error("expected digits after 'A'"));
            }
            let text = &self.src[self.pos..self.pos + digits];
            self.pos += digits;
            return text
                .parse::<usize>()
                .ok()
                .filter(|&i| i >= 1)
                .map(TypeTerm::Atom)
                .ok_or(Error::Syntax { pos: start, msg: format!("bad atom index {text:?}") });
        }
        if self.pos >= self.src.len() {
            return Err(self.error("unexpected end of input"));
        }
        let c = self.src[self.pos..].chars().next().unwrap_or(' ');
        Err(self.error(&format!("unexpected {c:?}")))
    }
}

/// `f ⊗ g` with `f` on the positions in `a` and `g` on the rest, each in
/// increasing order.
pub fn tensor_on(f: &BoolFn, g: &BoolFn, a: Subset) -> Result<BoolFn> {
    let n = f.n() + g.n();
    if a.len() != f.n() || !a.is_subset(Subset::full(n)) {
        return Err(Error::Precondition(format!("placement {a} does not fit {}+{}", f.n(), g.n())));
    }
    let mut images = vec![0usize; n];
    let (mut lo, mut hi) = (0, f.n());
    for i in 1..=n {
        if a.contains(i) {
            lo += 1;
            images[i - 1] = lo;
        } else {
            hi += 1;
            images[i - 1] = hi;
        }
    }
    f.tensor(g)?.permute(&Permutation::from_images(&images)?)
}

/// All subsets of `[n]` of size `k`, ascending by mask.
pub fn subsets_of_size(n: usize, k: usize) -> Vec<Subset> {
    (0..(1u32 << n)).filter(|m| m.count_ones() as usize == k).map(|m| Subset(m as u16)).collect()
}

/// The set `𝒯_n` with a witness term per member.
pub struct TypeSet {
    n: usize,
    members: Vec<BoolFn>,
    witness: HashMap<BoolFn, TypeTerm>,
}

impl TypeSet {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Members sorted by truth table.
    pub fn members(&self) -> &[BoolFn] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, f: &BoolFn) -> bool {
        self.witness.contains_key(f)
    }

    pub fn witness(&self, f: &BoolFn) -> Option<&TypeTerm> {
        self.witness.get(f)
    }

    /// Members with the given output set.
    pub fn with_outputs(&self, outputs: Subset) -> Vec<BoolFn> {
        self.members.iter().filter(|f| f.io_split().outputs == outputs).cloned().collect()
    }
}

fn cache() -> &'static Mutex<HashMap<usize, Arc<TypeSet>>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<TypeSet>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `𝒯_n`: products of smaller type functions placed on every split of
/// `[n]`, together with their complements.
pub fn enumerate_types(n: usize) -> Result<Arc<TypeSet>> {
    if n == 0 || n > MAX_N {
        return Err(Error::InvalidArity(n));
    }
    check_guard(n)?;
    if let Some(set) = cache().lock().expect("cache lock").get(&n) {
        return Ok(set.clone());
    }
    let set = Arc::new(build_types(n)?);
    cache().lock().expect("cache lock").entry(n).or_insert_with(|| set.clone());
    Ok(set)
}

fn build_types(n: usize) -> Result<TypeSet> {
    let mut witness: HashMap<BoolFn, TypeTerm> = HashMap::new();
    let mut order: Vec<BoolFn> = Vec::new();
    let mut insert = |f: BoolFn, t: TypeTerm, order: &mut Vec<BoolFn>| {
        if !witness.contains_key(&f) {
            order.push(f.clone());
            witness.insert(f, t);
        }
    };
    if n == 1 {
        insert(BoolFn::one(1)?, TypeTerm::atom(1), &mut order);
        insert(BoolFn::bottom(1)?, TypeTerm::atom(1).dual(), &mut order);
    } else {
        let mut products: Vec<(BoolFn, TypeTerm)> = Vec::new();
        for k in 1..=n / 2 {
            let left = enumerate_types(k)?;
            let right = enumerate_types(n - k)?;
            let placements = subsets_of_size(n, k);
            let batch: Vec<Vec<(BoolFn, TypeTerm)>> = placements
                .par_iter()
                .map(|&a| {
                    let inside = a.to_vec();
                    let outside = a.complement(n).to_vec();
                    let mut local = Vec::new();
                    let mut seen = std::collections::HashSet::new();
                    for f in left.members() {
                        for g in right.members() {
                            let h = tensor_on(f, g, a).expect("fits");
                            if seen.insert(h.clone()) {
                                let tf = left.witness(f).expect("member").relabel(&|i| inside[i - 1]);
                                let tg = right.witness(g).expect("member").relabel(&|i| outside[i - 1]);
                                local.push((h, tf.tensor(tg)));
                            }
                        }
                    }
                    local
                })
                .collect();
            products.extend(batch.into_iter().flatten());
        }
        for (f, t) in &products {
            insert(f.clone(), t.clone(), &mut order);
        }
        for (f, t) in products {
            insert(f.complement(), t.dual(), &mut order);
        }
    }
    order.sort();
    Ok(TypeSet { n, members: order, witness })
}

/// Membership in `𝒯_n`, decided by enumeration within the guard.
pub fn is_type_function(f: &BoolFn) -> Result<bool> {
    Ok(enumerate_types(f.n())?.contains(f))
}

/// A function certified as a type function by a term that denotes it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeFunction {
    f: BoolFn,
    term: TypeTerm,
}

impl TypeFunction {
    pub fn from_term(term: &TypeTerm) -> Result<TypeFunction> {
        term.validate()?;
        Ok(TypeFunction { f: term.eval(), term: term.clone() })
    }

    pub fn parse(text: &str) -> Result<TypeFunction> {
        TypeFunction::from_term(&TypeTerm::parse(text)?)
    }

    /// Looks `f` up in the enumerated `𝒯_n`; fails outside the guard.
    pub fn from_fn(f: &BoolFn) -> Result<TypeFunction> {
        let set = enumerate_types(f.n())?;
        let term = set
            .witness(f)
            .ok_or_else(|| Error::Precondition(format!("{f:?} is not a type function")))?;
        Ok(TypeFunction { f: f.clone(), term: term.clone() })
    }

    pub fn function(&self) -> &BoolFn {
        &self.f
    }

    pub fn term(&self) -> &TypeTerm {
        &self.term
    }

    pub fn n(&self) -> usize {
        self.f.n()
    }
}

/// A strict chain `S_0 ⊊ S_1 ⊊ … ⊊ S_N ⊆ [n]` with `N` even.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChainSpec {
    n: usize,
    sets: Vec<Subset>,
}

impl ChainSpec {
    pub fn new(n: usize, sets: Vec<Subset>) -> Result<ChainSpec> {
        if n == 0 || n > MAX_N {
            return Err(Error::InvalidArity(n));
        }
        if sets.is_empty() {
            return Err(Error::InvalidChain("empty chain".into()));
        }
        if sets.len() % 2 == 0 {
            return Err(Error::InvalidChain(format!("N = {} is odd", sets.len() - 1)));
        }
        for s in &sets {
            if !s.is_subset(Subset::full(n)) {
                return Err(Error::InvalidChain(format!("{s} is not a subset of [{n}]")));
            }
        }
        for w in sets.windows(2) {
            if !w[0].is_proper_subset(w[1]) {
                return Err(Error::InvalidChain(format!("{} is not strictly below {}", w[0], w[1])));
            }
        }
        Ok(ChainSpec { n, sets })
    }

    /// Reads a chain off a Möbius expansion: the support must be a chain
    /// with signs `+ - + … +` from the bottom.
    pub fn from_coeffs(c: &MobiusCoeffs) -> Option<ChainSpec> {
        let terms = c.nonzero();
        for (k, &(_, v)) in terms.iter().enumerate() {
            if v != if k % 2 == 0 { 1 } else { -1 } {
                return None;
            }
        }
        ChainSpec::new(c.n(), terms.into_iter().map(|(t, _)| t).collect()).ok()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sets(&self) -> &[Subset] {
        &self.sets
    }

    /// `N`, the number of strict steps.
    pub fn length(&self) -> usize {
        self.sets.len() - 1
    }

    /// `T_0 = S_0`, `T_i = S_i \ S_{i-1}`.
    pub fn increments(&self) -> Vec<Subset> {
        let mut prev = Subset::EMPTY;
        self.sets
            .iter()
            .map(|&s| {
                let t = s.difference(prev);
                prev = s;
                t
            })
            .collect()
    }

    pub fn coeffs(&self) -> MobiusCoeffs {
        let terms: Vec<(Subset, i64)> =
            self.sets.iter().enumerate().map(|(i, &s)| (s, if i % 2 == 0 { 1 } else { -1 })).collect();
        MobiusCoeffs::from_terms(self.n, &terms).expect("validated subsets")
    }

    pub fn chain_type(&self) -> Result<BoolFn> {
        mobius::inverse_to_fn(&self.coeffs()).map_err(|e| Error::InvalidChain(e.to_string()))
    }

    /// All chains with even `N` in `2^[n]`, in a deterministic order.
    pub fn enumerate(n: usize) -> Vec<ChainSpec> {
        fn rec(n: usize, prefix: &mut Vec<Subset>, out: &mut Vec<ChainSpec>) {
            if prefix.len() % 2 == 1 {
                out.push(ChainSpec { n, sets: prefix.clone() });
            }
            let last = *prefix.last().expect("nonempty");
            let full = Subset::full(n);
            let free = full.difference(last);
            // proper nonempty extensions of `last`
            let mut sub = free.0;
            let mut exts = Vec::new();
            while sub != 0 {
                exts.push(Subset(last.0 | sub));
                sub = (sub - 1) & free.0;
            }
            exts.sort();
            for e in exts {
                prefix.push(e);
                rec(n, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        for s0 in 0..(1u32 << n) {
            rec(n, &mut vec![Subset(s0 as u16)], &mut out);
        }
        out
    }
}

impl fmt::Display for ChainSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, s) in self.sets.iter().enumerate() {
            if k > 0 {
                f.write_str(" < ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for ChainSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ChainSpec(n={}, {self})", self.n)
    }
}

/// Chain type test through the Möbius support.
pub fn is_chain_type(f: &BoolFn) -> bool {
    ChainSpec::from_coeffs(&mobius::transform(f)).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfn::BitString;

    fn set(ix: &[usize]) -> Subset {
        Subset::from_indices(16, ix).unwrap()
    }

    #[test]
    fn parse_and_display() {
        let t = TypeTerm::parse("(A3 -> A2) -> (A4 -> A1)").unwrap();
        assert_eq!(t.to_string(), "(A3 -> A2) -> A4 -> A1");
        assert_eq!(TypeTerm::parse(&t.to_string()).unwrap(), t);
        let pm = TypeTerm::parse("~(~(A1 -> A2) * ~(A3 -> A4))").unwrap();
        assert_eq!(TypeTerm::parse(&pm.to_string()).unwrap(), pm);
        assert_eq!(TypeTerm::parse("A1").unwrap(), TypeTerm::Atom(1));
        let t = TypeTerm::parse("A1 * A2 * A3").unwrap();
        assert_eq!(t.to_string(), "A1 * A2 * A3");
        let t = TypeTerm::parse("A1 * (A2 * A3)").unwrap();
        assert_eq!(t.to_string(), "A1 * (A2 * A3)");
        let t = TypeTerm::parse("~~A1").unwrap();
        assert_eq!(t.to_string(), "~~A1");
    }

    #[test]
    fn parse_errors_carry_positions() {
        match TypeTerm::parse("A1 * ") {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 5),
            other => panic!("{other:?}"),
        }
        match TypeTerm::parse("A1 ) ") {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 3),
            other => panic!("{other:?}"),
        }
        assert!(matches!(TypeTerm::parse("A1 * A1"), Err(Error::TermValidation(_))));
        assert!(matches!(TypeTerm::parse("A1 * A3"), Err(Error::TermValidation(_))));
        assert!(matches!(TypeTerm::parse("A0"), Err(Error::Syntax { .. })));
        assert!(matches!(TypeTerm::parse("B1"), Err(Error::Syntax { pos: 0, .. })));
    }

    #[test]
    fn states_and_channels() {
        assert_eq!(TypeTerm::parse("A1 * A2").unwrap().eval(), BoolFn::one(2).unwrap());
        let gamma = TypeTerm::parse("A2 -> A1").unwrap().eval();
        let expected = mobius::inverse_to_fn(&MobiusCoeffs::parse(2, "1 - p{1} + p{1,2}").unwrap()).unwrap();
        assert_eq!(gamma, expected);
    }

    #[test]
    fn process_matrix_differs_from_nonsignalling_at_1111() {
        let pm = TypeTerm::parse("~((A1 -> A2) * (A3 -> A4))").unwrap().eval();
        let ns_tilde = TypeTerm::parse("(A2 -> A3) * (A4 -> A1)").unwrap().eval();
        assert!(pm.leq(&ns_tilde));
        let diff: Vec<String> = BitString::all(4)
            .filter(|s| pm.eval(*s).unwrap() != ns_tilde.eval(*s).unwrap())
            .map(|s| s.to_string())
            .collect();
        assert_eq!(diff, vec!["1111"]);
        assert!(!pm.eval(BitString::parse("1111").unwrap()).unwrap());
        assert_eq!(pm.io_split().outputs, set(&[1, 3]));
    }

    #[test]
    fn small_type_sets() {
        let t1 = enumerate_types(1).unwrap();
        assert_eq!(t1.len(), 2);
        let t2 = enumerate_types(2).unwrap();
        assert_eq!(t2.len(), 6);
        let diag = BoolFn::from_support(2, &[BitString::parse("00").unwrap(), BitString::parse("11").unwrap()])
            .unwrap();
        assert!(!is_type_function(&diag).unwrap());
        for f in t2.members() {
            assert_eq!(&t2.witness(f).unwrap().eval(), f);
        }
    }

    #[test]
    fn guard_is_explicit() {
        assert!(matches!(enumerate_types(7), Err(Error::GuardExceeded { n: 7, .. })));
        let f = BoolFn::one(8).unwrap();
        assert!(matches!(is_type_function(&f), Err(Error::GuardExceeded { .. })));
    }

    #[test]
    fn chain_specs() {
        let gamma = ChainSpec::new(2, vec![Subset::EMPTY, set(&[1]), set(&[1, 2])]).unwrap();
        assert_eq!(gamma.chain_type().unwrap(), TypeTerm::parse("A2 -> A1").unwrap().eval());
        assert!(ChainSpec::new(2, vec![Subset::EMPTY, set(&[1])]).is_err());
        assert!(ChainSpec::new(2, vec![set(&[1]), set(&[1]), set(&[1, 2])]).is_err());
        let beta = ChainSpec::new(4, vec![Subset::EMPTY, set(&[1]), set(&[1, 2]), set(&[1, 2, 3]), set(&[1, 2, 3, 4])])
            .unwrap();
        let f = beta.chain_type().unwrap();
        assert_eq!(f.io_split().outputs, set(&[1, 3]));
        assert_eq!(ChainSpec::from_coeffs(&mobius::transform(&f)).unwrap(), beta);
    }

    #[test]
    fn tensor_on_places_blocks() {
        let gamma = TypeTerm::parse("A2 -> A1").unwrap().eval();
        let one = BoolFn::one(1).unwrap();
        let h = tensor_on(&one, &gamma, set(&[2])).unwrap();
        // one on position 2, gamma on (1, 3)
        assert_eq!(h, TypeTerm::parse("A2 * (A3 -> A1)").unwrap().eval());
    }
}
