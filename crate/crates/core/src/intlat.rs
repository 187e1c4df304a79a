//! Positive-definite integer lattices given by Gram matrices or by vectors in `Z^N`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{internal, invalid, Error, Result};

/// Default number of search nodes an enumeration may visit.
pub const DEFAULT_BUDGET: u64 = 200_000_000;

pub type IntVector = Vec<i64>;

/// Symmetric integer matrix presenting a lattice.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GramLattice {
    gram: Vec<Vec<i64>>,
}

impl GramLattice {
    pub fn new(gram: Vec<Vec<i64>>) -> Result<GramLattice> {
        let n = gram.len();
        for (i, row) in gram.iter().enumerate() {
            if row.len() != n {
                return invalid(format!("row {i} has length {} in a rank-{n} Gram matrix", row.len()));
            }
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return invalid(format!("Gram matrix is not symmetric at ({i},{j})"));
                }
            }
        }
        Ok(GramLattice { gram })
    }

    /// Gram matrix of the given vectors under the standard dot product.
    pub fn from_vectors(vectors: &[IntVector]) -> GramLattice {
        let gram = vectors
            .iter()
            .map(|a| vectors.iter().map(|b| dot(a, b)).collect())
            .collect();
        GramLattice { gram }
    }

    pub fn identity(n: usize) -> GramLattice {
        GramLattice { gram: identity(n) }
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.gram[i][j]
    }

    /// `x^T G y` for coordinate vectors.
    pub fn pair(&self, x: &[i64], y: &[i64]) -> i64 {
        let mut s = 0i64;
        for (i, row) in self.gram.iter().enumerate() {
            if x[i] == 0 {
                continue;
            }
            s += x[i] * dot(row, y);
        }
        s
    }

    pub fn norm(&self, x: &[i64]) -> i64 {
        self.pair(x, x)
    }

    /// Gram matrix after a change of basis; rows of `t` are the new basis.
    pub fn transform(&self, t: &[Vec<i64>]) -> GramLattice {
        let gram = t
            .iter()
            .map(|a| t.iter().map(|b| self.pair(a, b)).collect())
            .collect();
        GramLattice { gram }
    }

    pub fn permuted(&self, order: &[usize]) -> GramLattice {
        let gram = order
            .iter()
            .map(|&i| order.iter().map(|&j| self.gram[i][j]).collect())
            .collect();
        GramLattice { gram }
    }
}

impl fmt::Display for GramLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.rank())?;
        for row in &self.gram {
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

impl FromStr for GramLattice {
    type Err = Error;

    fn from_str(s: &str) -> Result<GramLattice> {
        let mut lines = s.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let n: usize = lines
            .next()
            .ok_or_else(|| Error::Parse("empty Gram file".into()))?
            .parse()
            .map_err(|_| Error::Parse("first line must be the rank".into()))?;
        let mut gram = Vec::with_capacity(n);
        for i in 0..n {
            let line = lines
                .next()
                .ok_or_else(|| Error::Parse(format!("missing row {}", i + 1)))?;
            let row = line
                .split_whitespace()
                .map(|t| t.parse::<i64>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| Error::Parse(format!("row {}: not an integer list", i + 1)))?;
            gram.push(row);
        }
        if lines.next().is_some() {
            return Err(Error::Parse("trailing rows after the Gram matrix".into()));
        }
        GramLattice::new(gram)
    }
}

/// An isometry: row `i` is the image of basis vector `i` of the source,
/// written in the basis of the target.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Isometry {
    pub matrix: Vec<Vec<i64>>,
}

impl Isometry {
    pub fn verify(&self, g1: &GramLattice, g2: &GramLattice) -> bool {
        self.matrix.len() == g1.rank() && g2.transform(&self.matrix) == *g1
    }
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn identity(n: usize) -> Vec<Vec<i64>> {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

/// Determinant by fraction-free elimination with row pivoting.
pub fn det(m: &[Vec<i64>]) -> Result<i128> {
    let n = m.len();
    if n == 0 {
        return Ok(1);
    }
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return Ok(0),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = a[i][j]
                    .checked_mul(a[k][k])
                    .and_then(|x| a[i][k].checked_mul(a[k][j]).and_then(|y| x.checked_sub(y)))
                    .ok_or(Error::Overflow("determinant"))?;
                a[i][j] = v / prev;
            }
        }
        prev = a[k][k];
    }
    Ok(sign * a[n - 1][n - 1])
}

/// True iff every leading principal minor is positive.
pub fn is_positive_definite(g: &GramLattice) -> bool {
    let n = g.rank();
    let mut a: Vec<Vec<i128>> = g.gram.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut prev = 1i128;
    for k in 0..n {
        // After k elimination steps a[k][k] is the (k+1)-th leading minor.
        if a[k][k] <= 0 {
            return false;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = match a[i][j]
                    .checked_mul(a[k][k])
                    .and_then(|x| a[i][k].checked_mul(a[k][j]).and_then(|y| x.checked_sub(y)))
                {
                    Some(v) => v,
                    None => return positive_definite_by_cholesky(g),
                };
                a[i][j] = v / prev;
            }
        }
        prev = a[k][k];
    }
    true
}

fn positive_definite_by_cholesky(g: &GramLattice) -> bool {
    cholesky(g).is_some()
}

pub fn discriminant(g: &GramLattice) -> Result<i128> {
    det(&g.gram)
}

/// Integral basis of `{x in Z^n : x . v = 0 for all v}` in Hermite normal form.
pub fn orthogonal_complement(vectors: &[IntVector], n: usize) -> Result<Vec<IntVector>> {
    for v in vectors {
        if v.len() != n {
            return invalid(format!("vector of length {} in ambient Z^{n}", v.len()));
        }
    }
    let k = vectors.len();
    // Column operations on [A ; I]: columns are tracked as vectors of length k + n.
    let mut cols: Vec<Vec<i128>> = (0..n)
        .map(|c| {
            let mut col: Vec<i128> = vectors.iter().map(|v| v[c] as i128).collect();
            col.extend((0..n).map(|j| i128::from(j == c)));
            col
        })
        .collect();
    let mut start = 0usize;
    for r in 0..k {
        loop {
            // Pick the smallest nonzero entry in row r among columns start..n.
            let piv = (start..n)
                .filter(|&c| cols[c][r] != 0)
                .min_by_key(|&c| cols[c][r].abs());
            let Some(p) = piv else { break };
            let mut done = true;
            for c in start..n {
                if c != p && cols[c][r] != 0 {
                    let q = cols[c][r].div_euclid(cols[p][r]);
                    let pc = cols[p].clone();
                    for (x, y) in cols[c].iter_mut().zip(&pc) {
                        *x -= q * y;
                    }
                    if cols[c][r] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                cols.swap(p, start);
                start += 1;
                break;
            }
        }
        if start != r + 1 {
            return invalid("input vectors are linearly dependent");
        }
    }
    let kernel: Vec<Vec<i128>> = cols[start..].iter().map(|c| c[k..].to_vec()).collect();
    hnf_rows(kernel)?
        .into_iter()
        .map(|row| to_i64_vec(&row))
        .collect()
}

fn to_i64_vec(v: &[i128]) -> Result<IntVector> {
    v.iter()
        .map(|&x| i64::try_from(x).map_err(|_| Error::Overflow("lattice coordinates")))
        .collect()
}

/// Row Hermite normal form of a full-row-rank integer matrix.
pub fn hnf_rows(mut rows: Vec<Vec<i128>>) -> Result<Vec<Vec<i128>>> {
    let m = rows.len();
    if m == 0 {
        return Ok(rows);
    }
    let n = rows[0].len();
    let mut r = 0usize;
    let mut pivots = Vec::new();
    for c in 0..n {
        if r == m {
            break;
        }
        loop {
            let piv = (r..m).filter(|&i| rows[i][c] != 0).min_by_key(|&i| rows[i][c].abs());
            let Some(p) = piv else { break };
            rows.swap(p, r);
            let mut clean = true;
            for i in r + 1..m {
                if rows[i][c] != 0 {
                    let q = rows[i][c].div_euclid(rows[r][c]);
                    let pr = rows[r].clone();
                    for (x, y) in rows[i].iter_mut().zip(&pr) {
                        *x -= q * y;
                    }
                    if rows[i][c] != 0 {
                        clean = false;
                    }
                }
            }
            if clean {
                break;
            }
        }
        if rows[r][c] != 0 {
            if rows[r][c] < 0 {
                for x in rows[r].iter_mut() {
                    *x = -*x;
                }
            }
            pivots.push((r, c));
            r += 1;
        }
    }
    if r != m {
        return internal("hnf_rows called on rank-deficient rows");
    }
    for &(pr, c) in &pivots {
        for i in 0..pr {
            let q = rows[i][c].div_euclid(rows[pr][c]);
            if q != 0 {
                let prow = rows[pr].clone();
                for (x, y) in rows[i].iter_mut().zip(&prow) {
                    *x -= q * y;
                }
            }
        }
    }
    Ok(rows)
}

/// `(q_ii, q_ij)` such that `x^T G x = sum_i q_ii (x_i + sum_{j>i} q_ij x_j)^2`.
fn cholesky(g: &GramLattice) -> Option<Vec<Vec<f64>>> {
    let n = g.rank();
    let mut q: Vec<Vec<f64>> = g.gram.iter().map(|r| r.iter().map(|&x| x as f64).collect()).collect();
    for i in 0..n {
        if q[i][i] <= 0.0 {
            return None;
        }
        for j in i + 1..n {
            q[j][i] = q[i][j];
            q[i][j] /= q[i][i];
        }
        for k in i + 1..n {
            for l in k..n {
                q[k][l] -= q[k][i] * q[i][l];
            }
        }
    }
    Some(q)
}

/// Fincke–Pohst enumeration of lattice vectors of bounded norm.
pub struct ShortVectors<'a> {
    gram: &'a GramLattice,
    q: Vec<Vec<f64>>,
}

impl<'a> ShortVectors<'a> {
    pub fn new(gram: &'a GramLattice) -> Result<ShortVectors<'a>> {
        let q = cholesky(gram).ok_or_else(|| Error::InvalidInput("Gram matrix is not positive-definite".into()))?;
        Ok(ShortVectors { gram, q })
    }

    /// All `x` with `x^T G x <= bound`; with `up_to_sign` only one of `x, -x`
    /// is kept (the one whose last nonzero coordinate is positive) and `0` is
    /// dropped.
    pub fn collect(&self, bound: i64, budget: u64, up_to_sign: bool) -> Result<Vec<IntVector>> {
        let mut out = Vec::new();
        self.for_each(bound, budget, up_to_sign, |x| out.push(x.to_vec()))?;
        Ok(out)
    }

    pub fn for_each(
        &self,
        bound: i64,
        budget: u64,
        up_to_sign: bool,
        mut f: impl FnMut(&[i64]),
    ) -> Result<()> {
        let n = self.gram.rank();
        if bound < 0 {
            return Ok(());
        }
        if n == 0 {
            if !up_to_sign {
                f(&[]);
            }
            return Ok(());
        }
        let mut x = vec![0i64; n];
        let mut steps = 0u64;
        let slack = 1e-7 * (bound as f64 + 1.0);
        self.rec(n - 1, bound as f64 + slack, true, &mut x, &mut steps, budget, bound, up_to_sign, &mut f)
    }

    #[allow(clippy::too_many_arguments)]
    fn rec(
        &self,
        i: usize,
        remaining: f64,
        all_zero_above: bool,
        x: &mut Vec<i64>,
        steps: &mut u64,
        budget: u64,
        bound: i64,
        up_to_sign: bool,
        f: &mut impl FnMut(&[i64]),
    ) -> Result<()> {
        let n = x.len();
        let qii = self.q[i][i];
        let c: f64 = -(i + 1..n).map(|j| self.q[i][j] * x[j] as f64).sum::<f64>();
        let r = (remaining.max(0.0) / qii).sqrt();
        let mut lo = (c - r - 1e-9).ceil() as i64;
        let hi = (c + r + 1e-9).floor() as i64;
        if up_to_sign && all_zero_above {
            lo = lo.max(0);
        }
        for xi in lo..=hi {
            *steps += 1;
            if *steps > budget {
                return Err(Error::Budget(budget));
            }
            x[i] = xi;
            let d = xi as f64 - c;
            let rem = remaining - qii * d * d;
            if rem < -1e-6 * (1.0 + remaining.abs()) {
                continue;
            }
            if i == 0 {
                if up_to_sign && all_zero_above && xi == 0 {
                    continue;
                }
                if self.gram.norm(x) <= bound {
                    f(x);
                }
            } else {
                self.rec(i - 1, rem, all_zero_above && xi == 0, x, steps, budget, bound, up_to_sign, f)?;
            }
        }
        x[i] = 0;
        Ok(())
    }
}

/// Convenience wrapper: all vectors of norm at most `bound` (both signs, with 0).
pub fn vectors_of_norm_at_most(g: &GramLattice, bound: i64, budget: u64) -> Result<Vec<IntVector>> {
    ShortVectors::new(g)?.collect(bound, budget, false)
}

/// `x` is irreducible when it is nonzero and is not `y + z` with `y, z` nonzero
/// and `y . z >= 0`.
pub fn is_irreducible(g: &GramLattice, x: &[i64], budget: u64) -> Result<bool> {
    let nx = g.norm(x);
    if nx == 0 {
        return Ok(false);
    }
    let sv = ShortVectors::new(g)?;
    let mut reducible = false;
    sv.for_each(nx - 1, budget, false, |y| {
        if !reducible && y.iter().any(|&c| c != 0) {
            let ny = g.norm(y);
            if g.pair(x, y) >= ny {
                reducible = true;
            }
        }
    })?;
    Ok(!reducible)
}

/// LLL reduction of a Gram matrix. Returns `(t, t_inv, reduced)` with
/// `reduced = t G t^T` and `t * t_inv = I`.
pub fn lll(g: &GramLattice) -> Result<(Vec<Vec<i64>>, Vec<Vec<i64>>, GramLattice)> {
    let n = g.rank();
    let mut t = identity(n);
    let mut tinv = identity(n);
    let mut a: Vec<Vec<i64>> = g.gram.clone();
    if n <= 1 {
        return Ok((t, tinv, g.clone()));
    }
    let delta = 0.99f64;
    let mut k = 1usize;
    let mut iterations = 0u64;
    while k < n {
        iterations += 1;
        if iterations > 1_000_000 {
            return internal("LLL failed to terminate");
        }
        for j in (0..k).rev() {
            let (mu, _) = gso(&a);
            let c = mu[k][j].round();
            if c != 0.0 {
                let c = c as i64;
                // b_k <- b_k - c b_j
                for col in 0..n {
                    t[k][col] -= c * t[j][col];
                }
                for row in tinv.iter_mut() {
                    row[j] += c * row[k];
                }
                for col in 0..n {
                    a[k][col] -= c * a[j][col];
                }
                for row in a.iter_mut() {
                    row[k] -= c * row[j];
                }
            }
        }
        let (mu, b) = gso(&a);
        if b[k] >= (delta - mu[k][k - 1] * mu[k][k - 1]) * b[k - 1] {
            k += 1;
        } else {
            t.swap(k, k - 1);
            for row in tinv.iter_mut() {
                row.swap(k, k - 1);
            }
            a.swap(k, k - 1);
            for row in a.iter_mut() {
                row.swap(k, k - 1);
            }
            k = (k - 1).max(1);
        }
    }
    Ok((t, tinv, GramLattice { gram: a }))
}

fn gso(a: &[Vec<i64>]) -> (Vec<Vec<f64>>, Vec<f64>) {
    let n = a.len();
    let mut mu = vec![vec![0.0f64; n]; n];
    let mut b = vec![0.0f64; n];
    for i in 0..n {
        for j in 0..i {
            let mut s = a[i][j] as f64;
            for k in 0..j {
                s -= mu[j][k] * mu[i][k] * b[k];
            }
            mu[i][j] = s / b[j];
        }
        let mut s = a[i][i] as f64;
        for k in 0..i {
            s -= mu[i][k] * mu[i][k] * b[k];
        }
        b[i] = s;
    }
    (mu, b)
}

fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let m = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            (0..m)
                .map(|j| row.iter().zip(b).map(|(x, brow)| x * brow[j]).sum())
                .collect()
        })
        .collect()
}

/// Irreducible vectors up to sign with norm at most the largest norm in an
/// LLL-reduced basis. These generate the lattice.
pub fn irreducible_generators(g: &GramLattice, budget: u64) -> Result<Vec<IntVector>> {
    if g.rank() == 0 {
        return Ok(Vec::new());
    }
    let (t, _, red) = lll(g)?;
    let bound = (0..red.rank()).map(|i| red.get(i, i)).max().unwrap_or(0);
    let sv = ShortVectors::new(&red)?;
    let all = sv.collect(bound, budget, false)?;
    let mut by_norm: Vec<(i64, &IntVector)> = all.iter().map(|x| (red.norm(x), x)).collect();
    by_norm.sort_by_key(|(nrm, _)| *nrm);
    let mut out = Vec::new();
    for (nx, x) in &by_norm {
        if *nx == 0 {
            continue;
        }
        let last_nz = x.iter().rev().find(|&&c| c != 0).copied().unwrap_or(0);
        if last_nz < 0 {
            continue;
        }
        let reducible = by_norm
            .iter()
            .take_while(|(ny, _)| ny < nx)
            .any(|(ny, y)| *ny > 0 && red.pair(x, y) >= *ny);
        if !reducible {
            // Back to the coordinates of the original basis.
            let row = mat_mul(&[x.to_vec()], &t).remove(0);
            out.push(row);
        }
    }
    Ok(out)
}

/// Number of orthogonal indecomposable summands.
pub fn indecomposable_components(g: &GramLattice, budget: u64) -> Result<usize> {
    let gens = irreducible_generators(g, budget)?;
    let mut uf = petgraph::unionfind::UnionFind::<usize>::new(gens.len());
    for i in 0..gens.len() {
        for j in 0..i {
            if g.pair(&gens[i], &gens[j]) != 0 {
                uf.union(i, j);
            }
        }
    }
    let mut labels = uf.into_labeling();
    labels.sort_unstable();
    labels.dedup();
    Ok(labels.len())
}

pub fn is_indecomposable(g: &GramLattice, budget: u64) -> Result<bool> {
    Ok(indecomposable_components(g, budget)? <= 1)
}

/// Searches for an isometry between two positive-definite lattices.
///
/// Returns `Ok(None)` only after an exhaustive search; running out of budget
/// is reported as [`Error::Budget`].
pub fn find_isometry(g1: &GramLattice, g2: &GramLattice, budget: u64) -> Result<Option<Isometry>> {
    if g1.rank() != g2.rank() {
        return Ok(None);
    }
    let n = g1.rank();
    if g1 == g2 {
        return Ok(Some(Isometry { matrix: identity(n) }));
    }
    if !is_positive_definite(g1) || !is_positive_definite(g2) {
        return invalid("isometry search needs positive-definite Gram matrices");
    }
    if det(&g1.gram)? != det(&g2.gram)? {
        return Ok(None);
    }
    let (t1, t1inv, r1) = lll(g1)?;
    let (t2, _, r2) = lll(g2)?;
    // Search order: increasing norm, keeping LLL order among ties.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| r1.get(i, i));
    let r1 = r1.permuted(&order);
    let t1inv: Vec<Vec<i64>> = t1inv
        .iter()
        .map(|row| order.iter().map(|&j| row[j]).collect())
        .collect();
    let bound = (0..n).map(|i| r1.get(i, i)).max().unwrap_or(0);

    let mut steps = 0u64;
    let v1 = ShortVectors::new(&r1)?.collect(bound, budget, false)?;
    let v2 = ShortVectors::new(&r2)?.collect(bound, budget, false)?;
    let spectrum = |g: &GramLattice, vs: &[IntVector]| {
        let mut m: BTreeMap<i64, usize> = BTreeMap::new();
        for v in vs {
            *m.entry(g.norm(v)).or_default() += 1;
        }
        m
    };
    if spectrum(&r1, &v1) != spectrum(&r2, &v2) {
        return Ok(None);
    }
    let mut buckets: BTreeMap<i64, Vec<(IntVector, IntVector)>> = BTreeMap::new();
    for v in v2 {
        let gv: IntVector = r2.rows().iter().map(|row| dot(row, &v)).collect();
        buckets.entry(r2.norm(&v)).or_default().push((v, gv));
    }
    let mut chosen: Vec<usize> = Vec::with_capacity(n);
    let cands: Vec<&Vec<(IntVector, IntVector)>> = (0..n)
        .map(|i| buckets.get(&r1.get(i, i)).map(|b| b as &Vec<_>))
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::Internal("norm spectrum agreed but a bucket is missing".into()))
        .unwrap_or_default();
    if cands.len() != n {
        return Ok(None);
    }
    let found = backtrack(&r1, &cands, &mut chosen, &mut steps, budget)?;
    if !found {
        return Ok(None);
    }
    let y: Vec<Vec<i64>> = chosen.iter().enumerate().map(|(i, &c)| cands[i][c].0.clone()).collect();
    // Reduced basis of L1 maps to y (in reduced coordinates of L2).
    let x = mat_mul(&mat_mul(&t1inv, &y), &t2);
    let iso = Isometry { matrix: x };
    if !iso.verify(g1, g2) {
        return internal("isometry search produced a map that does not preserve the form");
    }
    let _ = t1;
    Ok(Some(iso))
}

fn backtrack(
    r1: &GramLattice,
    cands: &[&Vec<(IntVector, IntVector)>],
    chosen: &mut Vec<usize>,
    steps: &mut u64,
    budget: u64,
) -> Result<bool> {
    let i = chosen.len();
    if i == cands.len() {
        return Ok(true);
    }
    'outer: for (ci, (v, _)) in cands[i].iter().enumerate() {
        *steps += 1;
        if *steps > budget {
            return Err(Error::Budget(budget));
        }
        if i == 0 {
            // Fix the sign of the first image.
            if v.iter().rev().find(|&&c| c != 0).copied().unwrap_or(0) < 0 {
                continue;
            }
        }
        for (j, &cj) in chosen.iter().enumerate() {
            if dot(v, &cands[j][cj].1) != r1.get(i, j) {
                continue 'outer;
            }
        }
        chosen.push(ci);
        if backtrack(r1, cands, chosen, steps, budget)? {
            return Ok(true);
        }
        chosen.pop();
    }
    Ok(false)
}
