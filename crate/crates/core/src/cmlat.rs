//! Changemaker lattices `⟨w_0, ..., w_l⟩^⊥ ⊆ Z^N` and their standard bases.
//!
//! Coordinates of `Z^N` are laid out as follows. When `q > 1` the vectors
//! `e_0, ..., e_s` occupy indices `0..=s` and `f_j` sits at index `s + j`
//! for `1 <= j <= t`. When `q = 1` there are no `e` vectors and `f_j` sits
//! at index `j - 1`.

use serde::{Deserialize, Serialize};

use crate::error::{internal, Error, Result};
use crate::intlat::{self, dot, GramLattice, IntVector};
use crate::ratcf::{neg_cf_eval, neg_cf_expand, NegCF, Slope};

/// Changemaker coefficients `1 = σ_1 <= ... <= σ_t`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ChangemakerCoeffs {
    pub sigma: Vec<i64>,
}

impl ChangemakerCoeffs {
    pub fn new(mut sigma: Vec<i64>) -> Result<ChangemakerCoeffs> {
        sigma.sort_unstable();
        if !changemaker_check(&sigma) {
            return Err(Error::Incompatible(format!("{sigma:?} violates the changemaker condition")));
        }
        Ok(ChangemakerCoeffs { sigma })
    }

    /// The coefficients that are at least 2.
    pub fn stable(&self) -> Vec<i64> {
        self.sigma.iter().copied().filter(|&s| s >= 2).collect()
    }

    pub fn len(&self) -> usize {
        self.sigma.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sigma.is_empty()
    }

    pub fn norm(&self) -> i64 {
        self.sigma.iter().map(|s| s * s).sum()
    }
}

/// The changemaker condition on the sorted sequence. The empty list fails.
pub fn changemaker_check(sigma: &[i64]) -> bool {
    let mut sorted = sigma.to_vec();
    sorted.sort_unstable();
    if sorted.first() != Some(&1) {
        return false;
    }
    let mut partial = 0i64;
    for &s in &sorted {
        if s < 1 || s > partial + 1 {
            return false;
        }
        partial += s;
    }
    true
}

/// Pads the stable coefficients with ones so that `‖w_0‖ = ⌈p/q⌉`.
pub fn coeffs_from_stable(slope: Slope, stable: &[i64]) -> Result<ChangemakerCoeffs> {
    if slope.numerator() <= slope.denominator() && !(slope.is_integer() && slope.numerator() == 1) {
        return Err(Error::InvalidInput(format!("slope {slope} must exceed 1")));
    }
    if let Some(bad) = stable.iter().find(|&&r| r < 2) {
        return Err(Error::InvalidInput(format!("stable coefficient {bad} is below 2")));
    }
    let a0 = slope.ceil();
    let sq: i64 = stable.iter().map(|r| r * r).sum();
    let ones = a0 - sq - i64::from(!slope.is_integer());
    if ones < 0 {
        return Err(Error::Incompatible(format!(
            "slope {slope} is too small for stable coefficients {stable:?}"
        )));
    }
    let mut sigma = vec![1i64; ones as usize];
    sigma.extend_from_slice(stable);
    ChangemakerCoeffs::new(sigma)
        .map_err(|_| Error::Incompatible(format!("slope {slope} with stable coefficients {stable:?}")))
}

/// `2g = Σ ρ_i(ρ_i - 1)` over the stable coefficients.
pub fn genus(stable: &[i64]) -> i64 {
    stable.iter().map(|r| r * (r - 1)).sum::<i64>() / 2
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tightness {
    /// One-based indices `k > 1` with `σ_k = 1 + σ_1 + ... + σ_{k-1}`.
    pub tight_indices: Vec<usize>,
    pub is_tight: bool,
}

pub fn tightness(coeffs: &ChangemakerCoeffs) -> Tightness {
    let mut partial = 0i64;
    let mut tight_indices = Vec::new();
    for (i, &s) in coeffs.sigma.iter().enumerate() {
        if i > 0 && s == partial + 1 {
            tight_indices.push(i + 1);
        }
        partial += s;
    }
    let is_tight = !tight_indices.is_empty();
    Tightness { tight_indices, is_tight }
}

/// A changemaker lattice together with its defining vectors and standard basis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChangemakerLattice {
    pub slope: Slope,
    pub cf: NegCF,
    pub coeffs: ChangemakerCoeffs,
    /// Ambient rank `N`.
    pub ambient: usize,
    /// Largest `e` index; zero and unused when `q = 1`.
    pub s: usize,
    pub alpha: Vec<usize>,
    /// The sorted set `{0..s} \ {α_k}`.
    pub beta: Vec<usize>,
    pub w: Vec<IntVector>,
    /// `μ_0, ..., μ_m` (empty for integer slopes).
    pub mu: Vec<IntVector>,
    /// `ν_1, ..., ν_t`, or `ν_2, ..., ν_t` for integer slopes.
    pub nu: Vec<IntVector>,
    pub basis: Vec<IntVector>,
    pub gram: GramLattice,
}

impl ChangemakerLattice {
    pub fn t(&self) -> usize {
        self.coeffs.len()
    }

    pub fn m(&self) -> usize {
        self.beta.len()
    }

    pub fn is_integer(&self) -> bool {
        self.slope.is_integer()
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Index of `e_i`.
    pub fn e(&self, i: usize) -> usize {
        debug_assert!(!self.is_integer() && i <= self.s);
        i
    }

    /// Index of `f_j`, `1 <= j <= t`.
    pub fn f(&self, j: usize) -> usize {
        debug_assert!(j >= 1 && j <= self.t());
        if self.is_integer() {
            j - 1
        } else {
            self.s + j
        }
    }

    pub fn unit(&self, idx: usize) -> IntVector {
        let mut v = vec![0i64; self.ambient];
        v[idx] = 1;
        v
    }

    pub fn in_lattice(&self, x: &[i64]) -> bool {
        x.len() == self.ambient && self.w.iter().all(|w| dot(w, x) == 0)
    }

    /// Coefficients of `x` in the standard basis, or an error if `x ∉ L`.
    pub fn coordinates(&self, x: &[i64]) -> Result<Vec<i64>> {
        if !self.in_lattice(x) {
            return Err(Error::InvalidInput("vector is not in the changemaker lattice".into()));
        }
        let mut rest = x.to_vec();
        let t = self.t();
        let first_nu = if self.is_integer() { 2 } else { 1 };
        let mut out = vec![0i64; self.rank()];
        for k in (first_nu..=t).rev() {
            let c = -rest[self.f(k)];
            let idx = k - first_nu;
            out[idx] = c;
            for (r, b) in rest.iter_mut().zip(&self.nu[idx]) {
                *r -= c * b;
            }
        }
        let nnu = self.nu.len();
        for j in (1..self.mu.len()).rev() {
            let top = if j == self.m() { self.s } else { self.beta[j] };
            let c = rest[top];
            out[nnu + j - 1] = c;
            for (r, b) in rest.iter_mut().zip(&self.mu[j]) {
                *r -= c * b;
            }
        }
        if rest.iter().any(|&c| c != 0) {
            return internal("standard basis failed to express a lattice vector");
        }
        Ok(out)
    }

    /// Ambient vector with the given standard-basis coefficients.
    pub fn from_coordinates(&self, c: &[i64]) -> IntVector {
        let mut v = vec![0i64; self.ambient];
        for (ci, b) in c.iter().zip(&self.basis) {
            for (x, y) in v.iter_mut().zip(b) {
                *x += ci * y;
            }
        }
        v
    }
}

/// Builds the lattice from a slope and stable coefficients.
pub fn cm_build(slope: Slope, stable: &[i64]) -> Result<ChangemakerLattice> {
    let coeffs = coeffs_from_stable(slope, stable)?;
    cm_build_from_coeffs(slope, coeffs)
}

/// Greedy subset of `{1..=limit}` (one-based) whose σ-values sum to `target`,
/// scanning from the largest index.
fn greedy_subset(sigma: &[i64], limit: usize, target: i64) -> Option<Vec<usize>> {
    let mut rem = target;
    let mut chosen = Vec::new();
    for i in (1..=limit).rev() {
        if sigma[i - 1] <= rem {
            rem -= sigma[i - 1];
            chosen.push(i);
        }
    }
    (rem == 0).then_some(chosen)
}

/// The part of a non-integer changemaker lattice supported on `e_0, ..., e_s`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FractionalBasis {
    pub s: usize,
    pub alpha: Vec<usize>,
    pub beta: Vec<usize>,
    /// `w_1, ..., w_l` in `Z^{s+1}`.
    pub w: Vec<IntVector>,
    /// `μ_0, ..., μ_m` in `Z^{s+1}`.
    pub mu: Vec<IntVector>,
}

fn fractional_basis_from_cf(cf: &NegCF) -> FractionalBasis {
    let mut alpha = vec![0usize];
    for &a in &cf.coeffs[1..] {
        let last = *alpha.last().unwrap();
        alpha.push(last + (a - 1) as usize);
    }
    let s = *alpha.last().unwrap();
    let dim = s + 1;
    let w = (1..alpha.len())
        .map(|k| {
            let mut wk = vec![0i64; dim];
            wk[alpha[k - 1]] = -1;
            for x in wk.iter_mut().take(alpha[k] + 1).skip(alpha[k - 1] + 1) {
                *x = 1;
            }
            wk
        })
        .collect();
    let beta: Vec<usize> = (0..=s).filter(|i| !alpha.contains(i)).collect();
    let m = beta.len();
    let bnext = |k: usize| if k < m { beta[k] } else { s };
    let mut mu = Vec::with_capacity(m + 1);
    let mut mu0 = vec![0i64; dim];
    for x in mu0.iter_mut().take(bnext(0) + 1) {
        *x = 1;
    }
    mu.push(mu0);
    for j in 1..=m {
        let mut v = vec![0i64; dim];
        v[beta[j - 1]] = -1;
        for x in v.iter_mut().take(bnext(j) + 1).skip(beta[j - 1] + 1) {
            *x = 1;
        }
        mu.push(v);
    }
    FractionalBasis { s, alpha, beta, w, mu }
}

/// `w_1, ..., w_l` and `μ_0, ..., μ_m` for a non-integer slope, without the
/// changemaker vector.
pub fn fractional_basis(slope: Slope) -> Result<FractionalBasis> {
    if slope.is_integer() {
        return Err(Error::InvalidInput("integer slopes have no fractional part".into()));
    }
    Ok(fractional_basis_from_cf(&neg_cf_expand(slope)?))
}

/// `[‖μ_0‖, ..., ‖μ_m‖]^-` computed from the fractional basis alone.
pub fn mu_norm_value_for(slope: Slope) -> Result<Slope> {
    let f = fractional_basis(slope)?;
    let coeffs = f.mu.iter().map(|v| v.iter().map(|x| x * x).sum()).collect();
    neg_cf_eval(&NegCF { coeffs })
}

pub fn cm_build_from_coeffs(slope: Slope, coeffs: ChangemakerCoeffs) -> Result<ChangemakerLattice> {
    let cf = neg_cf_expand(slope)?;
    if coeffs.norm() + i64::from(!slope.is_integer()) != cf.coeffs[0] {
        return Err(Error::Incompatible(format!(
            "‖w_0‖ = {} but ⌈{slope}⌉ = {}",
            coeffs.norm() + i64::from(!slope.is_integer()),
            cf.coeffs[0]
        )));
    }
    let sigma = &coeffs.sigma;
    let t = sigma.len();
    let integer = slope.is_integer();

    let frac = if integer { None } else { Some(fractional_basis_from_cf(&cf)) };
    let s = frac.as_ref().map_or(0, |f| f.s);
    let ambient = if integer { t } else { s + t + 1 };
    let fidx = |j: usize| if integer { j - 1 } else { s + j };
    let pad = |v: &IntVector| {
        let mut out = v.clone();
        out.resize(ambient, 0);
        out
    };

    let mut w = Vec::with_capacity(cf.len());
    let mut w0 = vec![0i64; ambient];
    if !integer {
        w0[0] = 1;
    }
    for (j, &sg) in sigma.iter().enumerate() {
        w0[fidx(j + 1)] = sg;
    }
    w.push(w0);
    let (alpha, beta, mu) = match &frac {
        Some(f) => {
            w.extend(f.w.iter().map(pad));
            (f.alpha.clone(), f.beta.clone(), f.mu.iter().map(pad).collect::<Vec<_>>())
        }
        None => (vec![0], Vec::new(), Vec::new()),
    };

    let mut nu = Vec::with_capacity(t);
    let first = if integer { 2 } else { 1 };
    let mut partial = 0i64;
    for k in 1..=t {
        let sk = sigma[k - 1];
        let tight = sk == partial + 1;
        partial += sk;
        if k < first {
            continue;
        }
        let mut v = vec![0i64; ambient];
        v[fidx(k)] = -1;
        if tight {
            for j in 1..k {
                v[fidx(j)] += 1;
            }
            if integer {
                v[fidx(1)] += 1;
            } else {
                for (x, y) in v.iter_mut().zip(&mu[0]) {
                    *x += y;
                }
            }
        } else {
            v[fidx(k - 1)] += 1;
            let subset = greedy_subset(sigma, k.saturating_sub(2), sk - sigma[k - 2])
                .ok_or_else(|| Error::Internal(format!("no subset for ν_{k}")))?;
            for i in subset {
                v[fidx(i)] += 1;
            }
        }
        nu.push(v);
    }

    let mut basis = nu.clone();
    if !integer {
        basis.extend(mu[1..].iter().cloned());
    }
    let gram = GramLattice::from_vectors(&basis);
    let lat = ChangemakerLattice {
        slope,
        cf,
        coeffs,
        ambient,
        s,
        alpha,
        beta,
        w,
        mu,
        nu,
        basis,
        gram,
    };
    verify(&lat)?;
    Ok(lat)
}

/// Checks the defining pairings, membership of the basis and the discriminant.
pub fn verify(lat: &ChangemakerLattice) -> Result<()> {
    let a = &lat.cf.coeffs;
    for i in 0..lat.w.len() {
        for j in 0..lat.w.len() {
            let want = if i == j {
                a[i]
            } else if i.abs_diff(j) == 1 {
                -1
            } else {
                0
            };
            if dot(&lat.w[i], &lat.w[j]) != want {
                return internal(format!("w_{i}·w_{j} is not {want}"));
            }
        }
    }
    for (k, b) in lat.basis.iter().enumerate() {
        if !lat.in_lattice(b) {
            return internal(format!("basis vector {k} is not orthogonal to the w_i"));
        }
    }
    let expected_rank = if lat.is_integer() { lat.t() - 1 } else { lat.t() + lat.m() };
    if lat.rank() != expected_rank || lat.ambient != lat.rank() + lat.w.len() {
        return internal("standard basis has the wrong size");
    }
    let disc = intlat::discriminant(&lat.gram)?;
    if disc != lat.slope.numerator() as i128 {
        return internal(format!("discriminant {disc} differs from p = {}", lat.slope.numerator()));
    }
    Ok(())
}

/// Gram matrix of `μ_0, ..., μ_m`.
pub fn fractional_gram(lat: &ChangemakerLattice) -> Result<GramLattice> {
    if lat.is_integer() {
        return Err(Error::InvalidInput("integer changemaker lattices have no fractional part".into()));
    }
    Ok(GramLattice::from_vectors(&lat.mu))
}

/// `[‖μ_0‖, ..., ‖μ_m‖]^-`, which should equal `q/(q-r)`.
pub fn mu_norm_value(lat: &ChangemakerLattice) -> Result<Slope> {
    let g = fractional_gram(lat)?;
    let coeffs = (0..g.rank()).map(|i| g.get(i, i)).collect();
    neg_cf_eval(&NegCF { coeffs })
}
