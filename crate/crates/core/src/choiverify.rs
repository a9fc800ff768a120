// SPDX-License-Identifier: Apache-2.0

//! Numerical check of the projection picture on small systems.
//!
//! Superoperators act on the real space of hermitian operators, written in
//! an orthonormal hermitian basis, so every projection is a real symmetric
//! matrix. `P_{i,0}(X) = Tr[X]/d · I` and `P_{i,1} = id - P_{i,0}`; `P_s` is
//! the Kronecker product over systems, system 1 outermost.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use nalgebra::DMatrix;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::boolfn::{BoolFn, Subset};
use crate::error::{Error, Result};
use crate::mobius;
use crate::typeterm;

pub const DEFAULT_CAP: usize = 4096;
pub const CONSTRUCTION_TOL: f64 = 1e-10;
pub const IDENTITY_TOL: f64 = 1e-9;
/// Largest superoperator dimension at which `P_{f⊗g} = P_f ⊗ P_g` is checked.
pub const TENSOR_CHECK_DIM: usize = 256;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum LocalBasis {
    /// `I/√d` followed by normalised generalised Gell-Mann matrices.
    #[default]
    GellMann,
    /// Diagonal matrix units and normalised symmetric / antisymmetric
    /// off-diagonal pairs; `P_{i,0}` is not diagonal here.
    MatrixUnits,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SystemDims {
    dims: Vec<usize>,
    cap: usize,
    basis: LocalBasis,
}

impl SystemDims {
    pub fn new(dims: Vec<usize>) -> Result<SystemDims> {
        SystemDims::with_cap(dims, DEFAULT_CAP)
    }

    pub fn with_cap(dims: Vec<usize>, cap: usize) -> Result<SystemDims> {
        if dims.is_empty() || dims.len() > crate::boolfn::MAX_N {
            return Err(Error::InvalidArity(dims.len()));
        }
        if let Some(&d) = dims.iter().find(|&&d| d < 2) {
            return Err(Error::Precondition(format!("local dimension {d} is below 2")));
        }
        let total = dims.iter().try_fold(1usize, |acc, &d| acc.checked_mul(d * d));
        match total {
            Some(t) if t <= cap => Ok(SystemDims { dims, cap, basis: LocalBasis::default() }),
            _ => Err(Error::Resource(format!("superoperator dimension of {dims:?} exceeds the cap {cap}"))),
        }
    }

    pub fn qubits(n: usize) -> Result<SystemDims> {
        SystemDims::new(vec![2; n])
    }

    pub fn with_basis(mut self, basis: LocalBasis) -> SystemDims {
        self.basis = basis;
        self
    }

    pub fn parse(text: &str) -> Result<SystemDims> {
        let dims = text
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|_| Error::Precondition(format!("bad dimension `{t}`"))))
            .collect::<Result<Vec<_>>>()?;
        SystemDims::new(dims)
    }

    pub fn n(&self) -> usize {
        self.dims.len()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn basis(&self) -> LocalBasis {
        self.basis
    }

    /// `∏ d_i²`.
    pub fn superop_dim(&self) -> usize {
        self.dims.iter().map(|d| d * d).product()
    }

    /// `λ` normalisation of `f`: `∏_{i ∈ I_f} d_i`.
    pub fn c_f(&self, f: &BoolFn) -> Result<usize> {
        self.check(f)?;
        Ok(f.io_split().inputs.indices().map(|i| self.dims[i - 1]).product())
    }

    fn check(&self, f: &BoolFn) -> Result<()> {
        if f.n() != self.n() {
            return Err(Error::DimensionMismatch { expected: self.n(), found: f.n() });
        }
        Ok(())
    }
}

/// A hermitian `d × d` matrix as real and imaginary parts.
#[derive(Clone, Debug)]
pub struct Hermitian {
    pub re: DMatrix<f64>,
    pub im: DMatrix<f64>,
}

impl Hermitian {
    pub fn trace(&self) -> f64 {
        self.re.trace()
    }

    /// `Tr[A† B]`, real for hermitian `A`, `B`.
    pub fn hs_inner(&self, other: &Hermitian) -> f64 {
        self.re.dot(&other.re) + self.im.dot(&other.im)
    }
}

/// Orthonormal hermitian basis of `B_h(C^d)` (`d²` elements).
pub fn local_basis(d: usize, kind: LocalBasis) -> Vec<Hermitian> {
    let zero = || DMatrix::<f64>::zeros(d, d);
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let mut out = Vec::with_capacity(d * d);
    match kind {
        LocalBasis::GellMann => {
            out.push(Hermitian { re: DMatrix::identity(d, d) / (d as f64).sqrt(), im: zero() });
            for l in 1..d {
                let mut re = zero();
                let norm = ((l * (l + 1)) as f64).sqrt();
                for j in 0..l {
                    re[(j, j)] = 1.0 / norm;
                }
                re[(l, l)] = -(l as f64) / norm;
                out.push(Hermitian { re, im: zero() });
            }
        }
        LocalBasis::MatrixUnits => {
            for j in 0..d {
                let mut re = zero();
                re[(j, j)] = 1.0;
                out.push(Hermitian { re, im: zero() });
            }
        }
    }
    for j in 0..d {
        for k in (j + 1)..d {
            let mut re = zero();
            re[(j, k)] = h;
            re[(k, j)] = h;
            out.push(Hermitian { re, im: zero() });
            let mut im = zero();
            im[(j, k)] = -h;
            im[(k, j)] = h;
            out.push(Hermitian { re: zero(), im });
        }
    }
    out
}

/// `P_{i,0}` in the given basis: `⟨B_a, P(B_b)⟩ = Tr[B_a] Tr[B_b] / d`.
fn local_p0(d: usize, kind: LocalBasis) -> DMatrix<f64> {
    let tr: Vec<f64> = local_basis(d, kind).iter().map(Hermitian::trace).collect();
    DMatrix::from_fn(d * d, d * d, |a, b| tr[a] * tr[b] / d as f64)
}

fn kron_all(factors: &[DMatrix<f64>]) -> DMatrix<f64> {
    let mut it = factors.iter();
    let first = it.next().expect("at least one system").clone();
    it.fold(first, |acc, m| acc.kronecker(m))
}

/// All `P_s` and `Π_T` for one system, built once.
pub struct ChoiSpace {
    dims: SystemDims,
    p_s: Vec<DMatrix<f64>>,
    pi: Vec<DMatrix<f64>>,
}

impl ChoiSpace {
    pub fn new(dims: &SystemDims) -> Result<ChoiSpace> {
        let n = dims.n();
        let p0: Vec<DMatrix<f64>> = dims.dims.iter().map(|&d| local_p0(d, dims.basis)).collect();
        let p1: Vec<DMatrix<f64>> =
            dims.dims.iter().zip(&p0).map(|(&d, p)| DMatrix::identity(d * d, d * d) - p).collect();
        let id: Vec<DMatrix<f64>> = dims.dims.iter().map(|&d| DMatrix::identity(d * d, d * d)).collect();
        let count = 1usize << n;
        let p_s = (0..count)
            .into_par_iter()
            .map(|s| {
                let f: Vec<DMatrix<f64>> =
                    (0..n).map(|i| if s >> i & 1 == 1 { p1[i].clone() } else { p0[i].clone() }).collect();
                kron_all(&f)
            })
            .collect();
        let pi = (0..count)
            .into_par_iter()
            .map(|t| {
                let f: Vec<DMatrix<f64>> =
                    (0..n).map(|i| if t >> i & 1 == 1 { p0[i].clone() } else { id[i].clone() }).collect();
                kron_all(&f)
            })
            .collect();
        Ok(ChoiSpace { dims: dims.clone(), p_s, pi })
    }

    pub fn dims(&self) -> &SystemDims {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.dims.superop_dim()
    }

    pub fn p_s(&self, s: u16) -> &DMatrix<f64> {
        &self.p_s[s as usize]
    }

    pub fn p_theta(&self) -> &DMatrix<f64> {
        &self.p_s[0]
    }

    /// `Π_T`: trace-and-replace on the systems in `T`.
    pub fn pi(&self, t: Subset) -> &DMatrix<f64> {
        &self.pi[t.0 as usize]
    }

    /// `P_f = Σ_s f(s) P_s`.
    pub fn p_f(&self, f: &BoolFn) -> Result<DMatrix<f64>> {
        self.dims.check(f)?;
        let mut m = DMatrix::zeros(self.dim(), self.dim());
        for s in f.support() {
            m += &self.p_s[s as usize];
        }
        Ok(m)
    }

    /// `Σ_T f̂_T Π_T`.
    pub fn mobius_side(&self, f: &BoolFn) -> Result<DMatrix<f64>> {
        self.dims.check(f)?;
        let mut m = DMatrix::zeros(self.dim(), self.dim());
        for (t, c) in mobius::transform(f).nonzero() {
            m += &self.pi[t.0 as usize] * c as f64;
        }
        Ok(m)
    }

    /// `Σ_{s ∈ supp f} ∏_i dim L_{i,s_i}` with `dim L_{i,0} = 1`,
    /// `dim L_{i,1} = d_i² - 1`.
    pub fn predicted_rank(&self, f: &BoolFn) -> usize {
        f.support()
            .map(|s| {
                self.dims
                    .dims
                    .iter()
                    .enumerate()
                    .map(|(i, &d)| if s >> i & 1 == 1 { d * d - 1 } else { 1 })
                    .product::<usize>()
            })
            .sum()
    }
}

/// Operator norm when the Frobenius bound is not already conclusive.
fn op_norm(m: &DMatrix<f64>, tol: f64) -> f64 {
    let fro = m.norm();
    if fro <= tol {
        fro
    } else {
        m.clone().singular_values().max()
    }
}

/// Per-identity tally: how many instances, how many failed, worst residual.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Tally {
    pub checked: usize,
    pub failed: usize,
    pub max_residual: f64,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ChoiReport {
    pub dims: Vec<usize>,
    pub tallies: BTreeMap<String, Tally>,
}

impl ChoiReport {
    fn record(&mut self, name: &str, residual: f64, tol: f64) {
        let t = self.tallies.entry(name.to_string()).or_default();
        t.checked += 1;
        if !(residual <= tol) {
            t.failed += 1;
        }
        if residual > t.max_residual || residual.is_nan() {
            t.max_residual = residual;
        }
    }

    fn merge(&mut self, other: ChoiReport) {
        for (k, v) in other.tallies {
            let t = self.tallies.entry(k).or_default();
            t.checked += v.checked;
            t.failed += v.failed;
            t.max_residual = t.max_residual.max(v.max_residual);
        }
    }

    pub fn passed(&self) -> bool {
        self.tallies.values().all(|t| t.failed == 0)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "dims {:?}", self.dims);
        let _ = writeln!(out, "{:<34} {:>7} {:>7} {:>12}  status", "identity", "checked", "failed", "max resid");
        for (name, t) in &self.tallies {
            let status = if t.failed == 0 { "pass" } else { "FAIL" };
            let _ = writeln!(out, "{name:<34} {:>7} {:>7} {:>12.3e}  {status}", t.checked, t.failed, t.max_residual);
        }
        out
    }
}

/// Tolerances for construction-level and identity-level checks.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    pub construction: f64,
    pub identity: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { construction: CONSTRUCTION_TOL, identity: IDENTITY_TOL }
    }
}

/// `P_s` idempotent, symmetric, mutually orthogonal; `Tr P_θ = 1`;
/// ranks add up to `∏ d_i²`.
pub fn construction_checks(space: &ChoiSpace, tol: f64) -> ChoiReport {
    let mut r = ChoiReport { dims: space.dims.dims.clone(), ..Default::default() };
    let count = space.p_s.len();
    let mut total = 0.0;
    for s in 0..count {
        let p = &space.p_s[s];
        r.record("P_s idempotent", op_norm(&(p * p - p), tol), tol);
        r.record("P_s symmetric", op_norm(&(p - p.transpose()), tol), tol);
        total += p.trace();
        for t in (s + 1)..count {
            r.record("P_s P_t = 0", op_norm(&(p * &space.p_s[t]), tol), tol);
        }
    }
    r.record("Tr P_theta = 1", (space.p_theta().trace() - 1.0).abs(), tol);
    r.record("sum rank P_s", (total - space.dim() as f64).abs(), tol);
    r
}

/// Single-function checks: projection, rank formula, Möbius bridge.
pub fn function_checks(space: &ChoiSpace, f: &BoolFn, tol: Tolerances) -> Result<ChoiReport> {
    let mut r = ChoiReport { dims: space.dims.dims.clone(), ..Default::default() };
    let p = space.p_f(f)?;
    r.record("P_f idempotent", op_norm(&(&p * &p - &p), tol.construction), tol.construction);
    r.record("P_f symmetric", op_norm(&(&p - p.transpose()), tol.construction), tol.construction);
    r.record("rank formula", (p.trace() - space.predicted_rank(f) as f64).abs(), tol.construction);
    r.record("Mobius bridge", op_norm(&(space.mobius_side(f)? - &p), tol.identity), tol.identity);
    Ok(r)
}

/// Homomorphism identities for one pair.
pub fn pair_checks(space: &ChoiSpace, f: &BoolFn, g: &BoolFn, tol: f64) -> Result<ChoiReport> {
    let mut r = ChoiReport { dims: space.dims.dims.clone(), ..Default::default() };
    let pf = space.p_f(f)?;
    let pg = space.p_f(g)?;
    let prod = &pf * &pg;
    r.record("meet = P_f P_g", op_norm(&(space.p_f(&f.meet(g)?)? - &prod), tol), tol);
    r.record("join = P_f + P_g - P_f P_g", op_norm(&(space.p_f(&f.join(g)?)? - (&pf + &pg - &prod)), tol), tol);
    r.record("[P_f, P_g] = 0", op_norm(&(&prod - &pg * &pf), tol), tol);
    let id = DMatrix::<f64>::identity(space.dim(), space.dim());
    let comp = &id - &pf + space.p_theta();
    r.record("complement = Id - P_f + P_theta", op_norm(&(space.p_f(&f.complement())? - comp), tol), tol);
    Ok(r)
}

/// `P_{f⊗g} = P_f ⊗ P_g` on the doubled system.
pub fn tensor_check(space: &ChoiSpace, doubled: &ChoiSpace, f: &BoolFn, g: &BoolFn, tol: f64) -> Result<ChoiReport> {
    let mut r = ChoiReport { dims: space.dims.dims.clone(), ..Default::default() };
    let lhs = doubled.p_f(&f.tensor(g)?)?;
    let rhs = space.p_f(f)?.kronecker(&space.p_f(g)?);
    r.record("tensor = P_f (x) P_g", op_norm(&(lhs - rhs), tol), tol);
    Ok(r)
}

/// How the function pairs are chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairSelection {
    /// All ordered pairs.
    Exhaustive,
    /// This many ordered pairs drawn with a fixed seed.
    Sampled { count: usize, seed: u64 },
}

/// Runs every check over the given functions.
pub fn verify_identities(
    dims: &SystemDims,
    functions: &[BoolFn],
    pairs: PairSelection,
    tol: Tolerances,
) -> Result<ChoiReport> {
    let space = ChoiSpace::new(dims)?;
    let mut report = construction_checks(&space, tol.construction);
    let singles = functions
        .par_iter()
        .map(|f| function_checks(&space, f, tol))
        .collect::<Result<Vec<_>>>()?;
    for s in singles {
        report.merge(s);
    }
    let chosen: Vec<(usize, usize)> = match pairs {
        PairSelection::Exhaustive => {
            (0..functions.len()).flat_map(|a| (0..functions.len()).map(move |b| (a, b))).collect()
        }
        PairSelection::Sampled { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let all: Vec<usize> = (0..functions.len()).collect();
            (0..count)
                .map(|_| (*all.choose(&mut rng).expect("nonempty"), *all.choose(&mut rng).expect("nonempty")))
                .collect()
        }
    };
    let results = chosen
        .par_iter()
        .map(|&(a, b)| pair_checks(&space, &functions[a], &functions[b], tol.identity))
        .collect::<Result<Vec<_>>>()?;
    for r in results {
        report.merge(r);
    }
    if space.dim() * space.dim() <= TENSOR_CHECK_DIM {
        let doubled_dims: Vec<usize> = dims.dims.iter().chain(&dims.dims).copied().collect();
        let doubled = ChoiSpace::new(&SystemDims::with_cap(doubled_dims, dims.cap.max(TENSOR_CHECK_DIM))?.with_basis(dims.basis))?;
        let results = chosen
            .par_iter()
            .map(|&(a, b)| tensor_check(&space, &doubled, &functions[a], &functions[b], tol.identity))
            .collect::<Result<Vec<_>>>()?;
        for r in results {
            report.merge(r);
        }
    }
    Ok(report)
}

/// All of `𝒯_n` on the given dims; pairs exhaustive or sampled.
pub fn verify_types(dims: &SystemDims, pairs: PairSelection, tol: Tolerances) -> Result<ChoiReport> {
    let set = typeterm::enumerate_types(dims.n())?;
    verify_identities(dims, set.members(), pairs, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::typeterm::TypeFunction;

    #[test]
    fn bases_are_orthonormal() {
        for kind in [LocalBasis::GellMann, LocalBasis::MatrixUnits] {
            for d in 2..=4 {
                let b = local_basis(d, kind);
                assert_eq!(b.len(), d * d);
                for (i, x) in b.iter().enumerate() {
                    assert_eq!(x.re, x.re.transpose());
                    assert_eq!(x.im, -x.im.transpose());
                    for (j, y) in b.iter().enumerate() {
                        let want = if i == j { 1.0 } else { 0.0 };
                        assert!((x.hs_inner(y) - want).abs() < 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn theta_and_one() {
        let dims = SystemDims::new(vec![2, 3]).unwrap();
        let space = ChoiSpace::new(&dims).unwrap();
        assert!((space.p_theta().trace() - 1.0).abs() < 1e-12);
        let one = space.p_f(&BoolFn::one(2).unwrap()).unwrap();
        assert!((one - DMatrix::<f64>::identity(36, 36)).norm() < 1e-12);
        assert!(construction_checks(&space, CONSTRUCTION_TOL).passed());
    }

    #[test]
    fn basis_function_is_trace_and_replace() {
        for kind in [LocalBasis::GellMann, LocalBasis::MatrixUnits] {
            let dims = SystemDims::qubits(3).unwrap().with_basis(kind);
            let space = ChoiSpace::new(&dims).unwrap();
            for t in 0..8u16 {
                let p = space.p_f(&BoolFn::basis(3, Subset(t)).unwrap()).unwrap();
                assert!((p - space.pi(Subset(t))).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn channel_pair_on_two_qubits() {
        let dims = SystemDims::qubits(2).unwrap();
        let g = TypeFunction::parse("A2 -> A1").unwrap();
        let h = TypeFunction::parse("A1 -> A2").unwrap();
        let fs = [g.function().clone(), h.function().clone()];
        let r = verify_identities(&dims, &fs, PairSelection::Exhaustive, Tolerances::default()).unwrap();
        assert!(r.passed(), "{}", r.render());
        assert!(r.tallies.contains_key("tensor = P_f (x) P_g"));
        assert_eq!(dims.c_f(g.function()).unwrap(), 2);
    }

    #[test]
    fn cap_and_dimension_errors() {
        assert!(matches!(SystemDims::qubits(7), Err(Error::Resource(_))));
        assert!(SystemDims::new(vec![1, 2]).is_err());
        let space = ChoiSpace::new(&SystemDims::qubits(2).unwrap()).unwrap();
        assert!(space.p_f(&BoolFn::one(3).unwrap()).is_err());
        assert_eq!(SystemDims::parse("2, 3").unwrap().dims(), &[2, 3]);
    }
}
