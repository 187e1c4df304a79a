//! Alexander polynomials, V-sequences, d-invariants of lens spaces and of
//! surgeries, recovery of stable coefficients and slope bounds.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::ratcf::{neg_cf_expand, NegCF, Slope};

pub type Rational = Ratio<i64>;

/// A symmetric Alexander polynomial `a_0 + Σ a_i (t^i + t^{-i})`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AlexPoly {
    /// `coeffs[i] = a_i`; trailing zeros are trimmed, so the last entry is `a_g`.
    pub coeffs: Vec<i64>,
}

impl AlexPoly {
    pub fn new(coeffs: Vec<i64>) -> Result<AlexPoly> {
        let mut coeffs = coeffs;
        while coeffs.len() > 1 && coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            return invalid("Alexander polynomial needs at least a_0");
        }
        let poly = AlexPoly { coeffs };
        let at_one = poly.eval_at_one()?;
        if at_one != 1 {
            return invalid(format!("Alexander polynomial has Δ(1) = {at_one}, expected 1"));
        }
        Ok(poly)
    }

    pub fn unknot() -> AlexPoly {
        AlexPoly { coeffs: vec![1] }
    }

    /// The degree `g` of the symmetric form.
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> i64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn eval_at_one(&self) -> Result<i64> {
        let mut total = self.coeffs[0];
        for &a in &self.coeffs[1..] {
            total = a
                .checked_mul(2)
                .and_then(|x| x.checked_add(total))
                .ok_or(Error::Overflow("eval_at_one"))?;
        }
        Ok(total)
    }

    /// Coefficients of `t^{-g}, ..., t^g`.
    pub fn laurent(&self) -> Vec<i64> {
        let g = self.degree();
        let mut out = vec![0; 2 * g + 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            out[g + i] = a;
            out[g - i] = a;
        }
        out
    }

    /// Nonzero coefficients alternate in sign, have absolute value one and `a_g = 1`.
    pub fn is_lspace_shaped(&self) -> bool {
        if self.degree() == 0 {
            return self.coeffs[0] == 1;
        }
        if *self.coeffs.last().unwrap() != 1 {
            return false;
        }
        let laurent = self.laurent();
        let nonzero: Vec<i64> = laurent.into_iter().filter(|&a| a != 0).collect();
        nonzero.iter().all(|a| a.abs() == 1) && nonzero.windows(2).all(|w| w[0] == -w[1])
    }
}

impl fmt::Display for AlexPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|a| a.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl FromStr for AlexPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<AlexPoly> {
        let coeffs = parse_int_list(s)?;
        AlexPoly::new(coeffs)
    }
}

pub(crate) fn parse_int_list(s: &str) -> Result<Vec<i64>> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<i64>().map_err(|e| Error::Parse(format!("bad integer {t:?}: {e}"))))
        .collect()
}

/// `t_i = Σ_{j≥1} j a_{i+j}` for `0 <= i <= g`.
pub fn torsion_coeffs(poly: &AlexPoly) -> Vec<i64> {
    let g = poly.degree();
    (0..=g)
        .map(|i| (1..=g - i).map(|j| j as i64 * poly.coeff(i + j)).sum())
        .collect()
}

/// Inverts [`torsion_coeffs`] using second differences and `Δ(1) = 1`.
pub fn alexander_from_torsion(t: &[i64]) -> Result<AlexPoly> {
    let at = |i: usize| t.get(i).copied().unwrap_or(0);
    let mut coeffs = vec![0i64; t.len().max(1)];
    let mut sum = 0i64;
    for (j, slot) in coeffs.iter_mut().enumerate().skip(1) {
        let a = at(j - 1)
            .checked_sub(2 * at(j))
            .and_then(|x| x.checked_add(at(j + 1)))
            .ok_or(Error::Overflow("alexander_from_torsion"))?;
        *slot = a;
        sum += a;
    }
    coeffs[0] = 1 - 2 * sum;
    AlexPoly::new(coeffs)
}

/// A non-increasing sequence `V_0, V_1, ...` dropping by at most one per step
/// and eventually zero. Only the values up to the first zero are stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VSeq {
    values: Vec<i64>,
}

impl VSeq {
    pub fn new(values: Vec<i64>) -> Result<VSeq> {
        let mut values = values;
        while values.last() == Some(&0) {
            values.pop();
        }
        if let Some(bad) = values.iter().find(|&&v| v < 0) {
            return invalid(format!("V-sequence has negative entry {bad}"));
        }
        for (k, w) in values.windows(2).enumerate() {
            if w[1] > w[0] || w[1] < w[0] - 1 {
                return invalid(format!(
                    "V-sequence violates V_{k} >= V_{} >= V_{k} - 1 at ({}, {})",
                    k + 1,
                    w[0],
                    w[1]
                ));
            }
        }
        if values.last().is_some_and(|&v| v > 1) {
            return invalid("V-sequence must descend to zero in steps of at most one");
        }
        Ok(VSeq { values })
    }

    pub fn zero() -> VSeq {
        VSeq { values: Vec::new() }
    }

    /// `V_k` for any integer `k`, using `V_{-k} = V_k + k`.
    pub fn get(&self, k: i64) -> i64 {
        if k < 0 {
            return self.get(-k) - k;
        }
        self.values.get(k as usize).copied().unwrap_or(0)
    }

    /// `V_0, ..., V_{ν⁺-1}`.
    pub fn values(&self) -> &[i64] {
        &self.values
    }

    /// The least `k >= 0` with `V_k = 0`.
    pub fn nu_plus(&self) -> usize {
        self.values.len()
    }

    /// `T_m = |{i >= 0 : 1 <= V_i <= m}|`.
    pub fn t_stat(&self, m: i64) -> i64 {
        self.values.iter().filter(|&&v| v >= 1 && v <= m).count() as i64
    }

    /// For an L-space knot the V-sequence agrees with the torsion coefficients.
    pub fn from_alexander(poly: &AlexPoly) -> Result<VSeq> {
        if !poly.is_lspace_shaped() {
            return invalid("Alexander polynomial is not of L-space knot form");
        }
        VSeq::new(torsion_coeffs(poly))
    }
}

impl fmt::Display for VSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(|a| a.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for VSeq {
    type Err = Error;

    fn from_str(s: &str) -> Result<VSeq> {
        VSeq::new(parse_int_list(s)?)
    }
}

fn tri(a: i64) -> i64 {
    a * (a + 1) / 2
}

/// `best[c]` is the largest `α·ρ` over `α >= 0` with `Σ α_i(α_i+1)/2 <= c`.
fn knapsack_best(rho: &[i64], cap: i64) -> Vec<i64> {
    let cap = cap.max(0) as usize;
    let mut best = vec![0i64; cap + 1];
    for &r in rho {
        let mut next = best.clone();
        for c in 0..=cap {
            let mut a = 1i64;
            while tri(a) as usize <= c {
                let cand = best[c - tri(a) as usize] + a * r;
                if cand > next[c] {
                    next[c] = cand;
                }
                a += 1;
            }
        }
        best = next;
    }
    best
}

/// `V_k` of a knot whose changemaker vector has stable part `ρ` and as many
/// ones as needed. `V_k = min ½Σα_i(α_i+1)` subject to `α·σ = g - k`.
pub fn v_from_stable(stable: &[i64], k: i64) -> Result<i64> {
    Ok(v_sequence(stable)?.get(k))
}

/// The whole V-sequence determined by the stable coefficients.
pub fn v_sequence(stable: &[i64]) -> Result<VSeq> {
    if let Some(bad) = stable.iter().find(|&&r| r < 2) {
        return invalid(format!("stable coefficient {bad} is below 2"));
    }
    let g = crate::cmlat::genus(stable);
    let best = knapsack_best(stable, g);
    let values = (0..=g)
        .map(|k| {
            best.iter()
                .enumerate()
                .map(|(c, &b)| c as i64 + (g - k - b).max(0))
                .min()
                .unwrap_or(0)
        })
        .collect();
    VSeq::new(values)
}

/// `T_0, ..., T_{V_0}`.
pub fn t_stats(v: &VSeq) -> Vec<i64> {
    (0..=v.get(0)).map(|m| v.t_stat(m)).collect()
}

/// Recovers the stable coefficients (sorted increasingly) from a V-sequence.
pub fn recover_stable(v: &VSeq) -> Result<Vec<i64>> {
    let v0 = v.get(0);
    let g = v.nu_plus() as i64;
    let mut rho: Vec<i64> = match v0 {
        0 => Vec::new(),
        1 => match g {
            1 => vec![2],
            2 => vec![2, 2],
            3 => vec![3],
            _ => return Err(Error::NotChangemaker),
        },
        _ => {
            let t = t_stats(v);
            let mu = (1..v0 as usize).map(|i| t[i] - t[i - 1]).min().unwrap_or(0);
            if mu > 2 {
                let mut rho = vec![3; (g / 3) as usize];
                rho.extend(std::iter::repeat_n(2, (g % 3) as usize));
                rho
            } else {
                iterate_rho(&t, v0, g)?
            }
        }
    };
    rho.sort_unstable();
    if v_sequence(&rho)? != *v {
        return Err(Error::NotChangemaker);
    }
    Ok(rho)
}

fn iterate_rho(t: &[i64], v0: i64, g: i64) -> Result<Vec<i64>> {
    let mut rho: Vec<i64> = Vec::new();
    loop {
        let best = knapsack_best(&rho, v0);
        let found = (1..v0 as usize).find(|&m| best[m] < t[m]);
        let Some(m) = found else { break };
        let next = t[m] - t[m - 1];
        if next <= 1 {
            break;
        }
        rho.push(next);
        if crate::cmlat::genus(&rho) > g {
            return Err(Error::NotChangemaker);
        }
    }
    let remaining = g - crate::cmlat::genus(&rho);
    if remaining < 0 {
        return Err(Error::NotChangemaker);
    }
    rho.extend(std::iter::repeat_n(2, remaining as usize));
    Ok(rho)
}

/// A characteristic tuple `(c_0, ..., c_l)` with `c_i ≡ a_i mod 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SpincRep {
    pub c: Vec<i64>,
}

impl SpincRep {
    pub fn negated(&self) -> SpincRep {
        SpincRep { c: self.c.iter().map(|x| -x).collect() }
    }

    pub fn is_characteristic(&self, a: &[i64]) -> bool {
        self.c.len() == a.len() && self.c.iter().zip(a).all(|(c, a)| (c - a).rem_euclid(2) == 0)
    }

    pub fn has_full_tank(&self, a: &[i64]) -> bool {
        let mut open = false;
        for (&c, &a) in self.c.iter().zip(a) {
            if c == a {
                if open {
                    return true;
                }
                open = true;
            } else if c != a - 2 {
                open = false;
            }
        }
        false
    }

    pub fn is_left_full(&self, a: &[i64]) -> bool {
        for (&c, &a) in self.c.iter().zip(a).skip(1) {
            if c == a {
                return true;
            }
            if c != a - 2 {
                return false;
            }
        }
        false
    }

    pub fn in_m(&self, a: &[i64]) -> bool {
        self.is_characteristic(a)
            && self.c.iter().zip(a).all(|(c, a)| c.abs() <= *a)
            && !self.has_full_tank(a)
            && !self.negated().has_full_tank(a)
    }

    pub fn in_c(&self, a: &[i64]) -> bool {
        self.in_m(a) && self.c.iter().zip(a).all(|(c, a)| 2 - a <= *c && c <= a)
    }
}

/// Every element of the representative set for `S³_{p/q}(U)`, in lexicographic order.
pub fn enumerate_c(cf: &NegCF) -> Vec<SpincRep> {
    fn rec(a: &[i64], i: usize, open: bool, cur: &mut Vec<i64>, out: &mut Vec<SpincRep>) {
        if i == a.len() {
            out.push(SpincRep { c: cur.clone() });
            return;
        }
        let mut v = 2 - a[i];
        while v <= a[i] {
            if !(open && v == a[i]) {
                let next_open = v == a[i] || (open && v == a[i] - 2);
                cur.push(v);
                rec(a, i + 1, next_open, cur, out);
                cur.pop();
            }
            v += 2;
        }
    }
    let mut out = Vec::new();
    rec(&cf.coeffs, 0, false, &mut Vec::new(), &mut out);
    out
}

/// `‖c‖ = c M⁻¹ cᵀ` for the tridiagonal plumbing matrix of the continued fraction.
pub fn spinc_norm(cf: &NegCF, rep: &SpincRep) -> Result<Rational> {
    let a = &cf.coeffs;
    if rep.c.len() != a.len() {
        return invalid("representative length differs from the continued fraction");
    }
    // Forward elimination of M x = c with M_{ii} = a_i and M_{i,i±1} = -1.
    let n = a.len();
    let mut diag: Vec<Ratio<i128>> = Vec::with_capacity(n);
    let mut rhs: Vec<Ratio<i128>> = Vec::with_capacity(n);
    for i in 0..n {
        let mut d = Ratio::from_integer(a[i] as i128);
        let mut r = Ratio::from_integer(rep.c[i] as i128);
        if i > 0 {
            d -= Ratio::from_integer(1) / diag[i - 1];
            r += rhs[i - 1] / diag[i - 1];
        }
        diag.push(d);
        rhs.push(r);
    }
    let mut x = vec![Ratio::from_integer(0i128); n];
    for i in (0..n).rev() {
        let mut r = rhs[i];
        if i + 1 < n {
            r += x[i + 1];
        }
        x[i] = r / diag[i];
    }
    let norm: Ratio<i128> = x.iter().zip(&rep.c).map(|(x, &c)| x * Ratio::from_integer(c as i128)).sum();
    narrow(norm)
}

fn narrow(r: Ratio<i128>) -> Result<Rational> {
    let n = i64::try_from(*r.numer()).map_err(|_| Error::Overflow("rational narrowing"))?;
    let d = i64::try_from(*r.denom()).map_err(|_| Error::Overflow("rational narrowing"))?;
    Ok(Rational::new(n, d))
}

/// The weights `x_0 = q, ..., x_l = 1` with `x_{i-1} = a_i x_i - x_{i+1}`.
fn label_weights(a: &[i64]) -> Vec<i64> {
    let l = a.len() - 1;
    let mut x = vec![0i64; l + 1];
    x[l] = 1;
    if l >= 1 {
        x[l - 1] = a[l];
    }
    for i in (1..l).rev() {
        x[i - 1] = a[i] * x[i] - x[i + 1];
    }
    x
}

/// The element of `Z/p` that a representative restricts to.
pub fn spinc_label(cf: &NegCF, rep: &SpincRep, p: i64) -> i64 {
    let a = &cf.coeffs;
    let x = label_weights(a);
    let mut total = 0i64;
    for i in 0..a.len() {
        let shift = i64::from(i >= 1);
        let coeff = (rep.c[i] + a[i]) / 2 - shift;
        total = (total + coeff.rem_euclid(p) * x[i].rem_euclid(p)).rem_euclid(p);
    }
    total
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LensSpinc {
    pub rep: SpincRep,
    pub label: i64,
    pub norm: Rational,
    pub d: Rational,
    pub left_full: bool,
}

fn positive_slope_cf(slope: Slope) -> Result<NegCF> {
    if slope.numerator() <= 0 {
        return invalid(format!("slope {slope} must be positive"));
    }
    neg_cf_expand(slope)
}

/// `d(S³_{p/q}(U), [c]) = (‖c‖ - l - 1)/4` over the representative set, sorted by label.
pub fn lens_d_invariants(slope: Slope) -> Result<Vec<LensSpinc>> {
    let cf = positive_slope_cf(slope)?;
    let p = slope.numerator();
    let b2 = cf.len() as i64;
    let mut out = Vec::new();
    for rep in enumerate_c(&cf) {
        let norm = spinc_norm(&cf, &rep)?;
        let d = (norm - Rational::from_integer(b2)) / 4;
        let label = spinc_label(&cf, &rep, p);
        let left_full = rep.is_left_full(&cf.coeffs);
        out.push(LensSpinc { rep, label, norm, d, left_full });
    }
    out.sort_by_key(|s| s.label);
    if out.len() as i64 != p || out.iter().enumerate().any(|(i, s)| s.label != i as i64) {
        return Err(Error::Internal(format!("representatives of {slope} do not biject onto Z/{p}")));
    }
    Ok(out)
}

/// `min(⌊i/q⌋, ⌈(p-i)/q⌉)`.
pub fn ni_wu_index(slope: Slope, i: i64) -> i64 {
    let (p, q) = (slope.numerator(), slope.denominator());
    Integer::div_floor(&i, &q).min(Integer::div_ceil(&(p - i), &q))
}

/// `d(S³_{p/q}(K), i) = d(S³_{p/q}(U), i) - 2V_{min(⌊i/q⌋, ⌈(p-i)/q⌉)}` for `0 <= i < p`.
pub fn surgery_d_invariants(slope: Slope, v: &VSeq) -> Result<Vec<Rational>> {
    let lens = lens_d_invariants(slope)?;
    Ok(lens
        .iter()
        .map(|s| s.d - Rational::from_integer(2 * v.get(ni_wu_index(slope, s.label))))
        .collect())
}

/// The index `j` with `D(c) = 2V_j` for a representative in `M`.
pub fn correction_index(cf: &NegCF, rep: &SpincRep) -> Result<i64> {
    let a = &cf.coeffs;
    if !rep.in_m(a) {
        return invalid(format!("{:?} is not in the set M for {cf}", rep.c));
    }
    let c0 = rep.c[0];
    let shifted = (rep.is_left_full(a) && c0 >= 0) || (rep.negated().is_left_full(a) && c0 <= 0);
    Ok((a[0] - c0.abs() - if shifted { 2 } else { 0 }) / 2)
}

/// `D(c) = d(S³_{p/q}(U), [c]) - d(S³_{p/q}(K), [c])` for `c` in `M`.
pub fn eval_correction(cf: &NegCF, rep: &SpincRep, v: &VSeq) -> Result<i64> {
    Ok(2 * v.get(correction_index(cf, rep)?))
}

/// `2(q + εq - r)V_k + 2qV_0 + 4qΣ_{i=1}^{k-1}V_i` where `a_0 = 2k + ε`.
pub fn correction_sum(slope: Slope, v: &VSeq) -> Result<i64> {
    let cf = positive_slope_cf(slope)?;
    let (q, r) = (slope.denominator(), slope.r());
    let a0 = cf.coeffs[0];
    let (k, eps) = (a0 / 2, a0 % 2);
    let inner: i64 = (1..k).map(|i| v.get(i)).sum();
    Ok(2 * (q + eps * q - r) * v.get(k) + 2 * q * v.get(0) + 4 * q * inner)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlopeWindow {
    pub n: i64,
    pub lo: i64,
    pub hi: i64,
}

impl SlopeWindow {
    pub fn contains(&self, slope: Slope) -> bool {
        let (p, q) = (slope.numerator(), slope.denominator());
        self.lo * q <= p && p <= self.hi * q
    }
}

/// `N = ρ_1 + Σρ_i²` with `ρ_1` the smallest stable coefficient.
pub fn slope_window(stable: &[i64]) -> Result<SlopeWindow> {
    let Some(&smallest) = stable.iter().min() else {
        return invalid("no stable coefficients: the window is undefined for the unknot");
    };
    if smallest < 2 {
        return invalid(format!("stable coefficient {smallest} is below 2"));
    }
    let n = smallest + stable.iter().map(|r| r * r).sum::<i64>();
    Ok(SlopeWindow { n, lo: n - 1, hi: n + 1 })
}

/// `|p/q| <= 4g + 3`.
pub fn rasmussen_ok(slope: Slope, genus: i64) -> bool {
    slope.numerator().abs() <= (4 * genus + 3) * slope.denominator()
}

/// The threshold `2g + (1 + √(24g+1))/2` below which a nontrivial alternating
/// surgery is impossible.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GreeneBound {
    pub genus: i64,
}

pub fn greene_lower_bound(genus: i64) -> GreeneBound {
    GreeneBound { genus }
}

impl GreeneBound {
    /// `|p/q| >= 2g + (1 + √(24g+1))/2`, decided in integers.
    pub fn admits(&self, slope: Slope) -> bool {
        let g = self.genus as i128;
        if g <= 0 {
            return true;
        }
        let (p, q) = (slope.numerator().abs() as i128, slope.denominator() as i128);
        let x = 2 * p - (4 * g + 1) * q;
        x >= 0 && x * x >= q * q * (24 * g + 1)
    }

    /// For display only.
    pub fn approx(&self) -> f64 {
        let g = self.genus as f64;
        2.0 * g + (1.0 + (24.0 * g + 1.0).sqrt()) / 2.0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusKnot {
    pub r: i64,
    pub s: i64,
    pub alexander: AlexPoly,
    pub genus: i64,
    pub unknotting: i64,
    pub char_slope_threshold: Rational,
}

impl TorusKnot {
    /// Slopes at or above the threshold characterize the knot.
    pub fn is_certified_characterizing(&self, slope: Slope) -> bool {
        slope.to_ratio() >= self.char_slope_threshold
    }
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact division by a monic polynomial.
fn poly_div_exact(num: &[i64], den: &[i64]) -> Result<Vec<i64>> {
    let mut rem = num.to_vec();
    let dl = den.len();
    if rem.len() < dl {
        return invalid("polynomial division: numerator degree too small");
    }
    let mut quot = vec![0; rem.len() - dl + 1];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dl - 1] / den[dl - 1];
        quot[i] = c;
        for (j, d) in den.iter().enumerate() {
            rem[i + j] -= c * d;
        }
    }
    if rem.iter().any(|&x| x != 0) {
        return Err(Error::Internal("polynomial division left a remainder".into()));
    }
    Ok(quot)
}

fn t_power_minus_one(n: i64) -> Vec<i64> {
    let mut v = vec![0; n as usize + 1];
    v[0] = -1;
    v[n as usize] = 1;
    v
}

/// Invariants of the positive torus knot `T_{r,s}`.
pub fn torus_tools(r: i64, s: i64) -> Result<TorusKnot> {
    let (r, s) = if r >= s { (r, s) } else { (s, r) };
    if s < 2 || r == s {
        return invalid(format!("torus knot T({r},{s}) needs r > s > 1"));
    }
    if r.gcd(&s) != 1 {
        return invalid(format!("torus knot parameters {r}, {s} are not coprime"));
    }
    if r.checked_mul(s).is_none_or(|rs| rs > 100_000) {
        return Err(Error::Overflow("torus_tools"));
    }
    let num = poly_mul(&t_power_minus_one(r * s), &t_power_minus_one(1));
    let den = poly_mul(&t_power_minus_one(r), &t_power_minus_one(s));
    let full = poly_div_exact(&num, &den)?;
    let genus = (r - 1) * (s - 1) / 2;
    let alexander = AlexPoly::new(full[genus as usize..].to_vec())?;
    Ok(TorusKnot {
        r,
        s,
        alexander,
        genus,
        unknotting: genus,
        char_slope_threshold: Rational::new(43 * (r * s - r - s), 4),
    })
}
