//! Deciding whether a Goeritz lattice is a changemaker lattice, and the
//! lattice-level moves that take a marked crossing down to a clasp.
//!
//! Every move here is a rewrite of the vertex vectors of the white graph.
//! The white graph of a certificate is recovered from the vertex pairings,
//! with `-x·y` edges between distinct vertices `x` and `y`.

use serde::{Deserialize, Serialize};

use crate::cmlat::{cm_build_from_coeffs, tightness, ChangemakerCoeffs, ChangemakerLattice};
use crate::error::{internal, invalid, Error, Result};
use crate::graphlat::Multigraph;
use crate::intlat::{self, dot, GramLattice, IntVector};
use crate::knotdiag::{self, ColoredDiagram, PDCode, TangleSlope};
use crate::ratcf::Slope;

/// Which slopes to consider for a given determinant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SlopeClass {
    /// The slope `d/2`.
    HalfInteger,
    Slope(Slope),
}

impl SlopeClass {
    pub fn slope_for(&self, d: i64) -> Result<Slope> {
        match *self {
            SlopeClass::HalfInteger => {
                if d <= 0 || d % 2 == 0 {
                    return invalid(format!("half-integer slopes need an odd positive determinant, got {d}"));
                }
                Slope::new(d, 2)
            }
            SlopeClass::Slope(s) => {
                if s.numerator() != d {
                    return invalid(format!("slope {s} has numerator other than the determinant {d}"));
                }
                Ok(s)
            }
        }
    }
}

/// `Σσ_i²` required by the slope.
fn required_norm(slope: Slope) -> i64 {
    if slope.is_integer() {
        slope.numerator()
    } else {
        slope.ceil() - 1
    }
}

/// All changemaker tuples with `Σσ_i² = norm`, ordered lexicographically by
/// their stable coefficients.
pub fn changemaker_tuples(norm: i64, budget: u64) -> Result<Vec<ChangemakerCoeffs>> {
    fn rec(
        norm: i64,
        stable: &mut Vec<i64>,
        sq: i64,
        sum: i64,
        out: &mut Vec<ChangemakerCoeffs>,
        steps: &mut u64,
        budget: u64,
    ) -> Result<()> {
        *steps += 1;
        if *steps > budget {
            return Err(Error::Budget(budget));
        }
        let ones = norm - sq;
        if ones >= 1 {
            let mut sigma = vec![1i64; ones as usize];
            sigma.extend_from_slice(stable);
            if let Ok(c) = ChangemakerCoeffs::new(sigma) {
                out.push(c);
            }
        }
        let mut x = stable.last().copied().unwrap_or(2);
        while sq + x * x < norm {
            let ones_left = norm - sq - x * x;
            if x <= 1 + ones_left + sum {
                stable.push(x);
                rec(norm, stable, sq + x * x, sum + x, out, steps, budget)?;
                stable.pop();
            }
            x += 1;
        }
        Ok(())
    }
    let mut out = Vec::new();
    if norm < 1 {
        return Ok(out);
    }
    let mut steps = 0;
    rec(norm, &mut Vec::new(), 0, 0, &mut out, &mut steps, budget)?;
    Ok(out)
}

/// Every changemaker lattice for the slope determined by `d` and `class`.
pub fn candidate_cm_lattices(d: i64, class: SlopeClass, budget: u64) -> Result<Vec<ChangemakerLattice>> {
    let slope = class.slope_for(d)?;
    changemaker_tuples(required_norm(slope), budget)?
        .into_iter()
        .map(|c| cm_build_from_coeffs(slope, c))
        .collect()
}

/// An embedding of the white-graph lattice of a diagram into a changemaker lattice.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingCertificate {
    pub lattice: ChangemakerLattice,
    /// One vector per white region; they sum to zero.
    pub vertex_coords: Vec<IntVector>,
    /// Diagram face of each vertex, when the certificate comes from a diagram.
    pub regions: Option<Vec<usize>>,
    /// Vertices pairing `+1` and `-1` with `e_0`.
    pub marker_vertices: Option<(usize, usize)>,
    /// Crossing ids of the marked crossings for certificates attached to a
    /// diagram, otherwise indices into `graph().edges()`.
    pub marked_crossings: Vec<usize>,
}

impl EmbeddingCertificate {
    /// Validates the vectors and computes the markers.
    pub fn new(lattice: ChangemakerLattice, vertex_coords: Vec<IntVector>) -> Result<EmbeddingCertificate> {
        let mut cert = EmbeddingCertificate {
            lattice,
            vertex_coords,
            regions: None,
            marker_vertices: None,
            marked_crossings: Vec::new(),
        };
        cert.validate()?;
        cert.refresh_markers();
        Ok(cert)
    }

    fn with_coords(&self, coords: Vec<IntVector>) -> Result<EmbeddingCertificate> {
        EmbeddingCertificate::new(self.lattice.clone(), coords)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_coords.len()
    }

    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }

    pub fn pair(&self, a: usize, b: usize) -> i64 {
        dot(&self.vertex_coords[a], &self.vertex_coords[b])
    }

    pub fn is_half_integer(&self) -> bool {
        self.lattice.slope.is_half_integer()
    }

    /// The white graph read off from the pairings.
    pub fn graph(&self) -> Multigraph {
        let n = self.vertex_count();
        let m: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { 0 } else { -self.pair(i, j) }).collect())
            .collect();
        Multigraph::from_multiplicities(&m).expect("validated pairings are nonpositive")
    }

    /// Gram matrix of all vertices but the last.
    pub fn goeritz(&self) -> GramLattice {
        let k = self.vertex_count().saturating_sub(1);
        GramLattice::from_vectors(&self.vertex_coords[..k])
    }

    /// Number of marked crossings, `-v·w`.
    pub fn marked_count(&self) -> usize {
        match self.marker_vertices {
            Some((v, w)) => (-self.pair(v, w)).max(0) as usize,
            None => 0,
        }
    }

    /// The same embedding composed with `-1`.
    pub fn negated(&self) -> Result<EmbeddingCertificate> {
        let coords = self
            .vertex_coords
            .iter()
            .map(|x| x.iter().map(|c| -c).collect())
            .collect();
        let mut out = self.with_coords(coords)?;
        out.regions = self.regions.clone();
        Ok(out)
    }

    fn refresh_markers(&mut self) {
        self.marker_vertices = None;
        self.marked_crossings.clear();
        if self.lattice.is_integer() {
            return;
        }
        let e0 = self.lattice.e(0);
        let plus: Vec<usize> = (0..self.vertex_count()).filter(|&i| self.vertex_coords[i][e0] > 0).collect();
        let minus: Vec<usize> = (0..self.vertex_count()).filter(|&i| self.vertex_coords[i][e0] < 0).collect();
        if let ([v], [w]) = (plus.as_slice(), minus.as_slice()) {
            if self.vertex_coords[*v][e0] == 1 && self.vertex_coords[*w][e0] == -1 {
                self.marker_vertices = Some((*v, *w));
                let key = (*v.min(w), *v.max(w));
                self.marked_crossings = self
                    .graph()
                    .edges()
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e == key)
                    .map(|(i, _)| i)
                    .collect();
            }
        }
    }

    /// Replaces edge indices by crossing ids using the diagram's white graph.
    pub fn attach_diagram(&mut self, data: &knotdiag::GoeritzData) -> Result<()> {
        if data.white_graph.vertex_count() != self.vertex_count() {
            return invalid("diagram and certificate have different numbers of regions");
        }
        self.regions = Some(data.regions.clone());
        if let Some((v, w)) = self.marker_vertices {
            let key = (v.min(w), v.max(w));
            self.marked_crossings = data
                .white_graph
                .edges()
                .iter()
                .zip(&data.edge_crossing)
                .filter(|(&e, _)| e == key)
                .map(|(_, &c)| c)
                .collect();
        }
        Ok(())
    }

    /// Checks every certificate invariant.
    pub fn validate(&self) -> Result<()> {
        let lat = &self.lattice;
        let n = self.vertex_count();
        if n != lat.rank() + 1 {
            return internal(format!("{n} vertices for a lattice of rank {}", lat.rank()));
        }
        for (i, x) in self.vertex_coords.iter().enumerate() {
            if !lat.in_lattice(x) {
                return internal(format!("vertex {i} is not in the changemaker lattice"));
            }
        }
        for c in 0..lat.ambient {
            if self.vertex_coords.iter().map(|x| x[c]).sum::<i64>() != 0 {
                return internal("vertex vectors do not sum to zero");
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if self.pair(i, j) > 0 {
                    return internal(format!("vertices {i} and {j} pair positively"));
                }
            }
        }
        let g = self.graph();
        if !g.is_two_connected() {
            return internal("white graph is not 2-connected");
        }
        let disc = intlat::discriminant(&self.goeritz())?;
        if disc != lat.slope.numerator() as i128 {
            return internal(format!(
                "vertices span a sublattice of discriminant {disc}, expected {}",
                lat.slope.numerator()
            ));
        }
        if self.is_half_integer() {
            let e0 = lat.e(0);
            let mut values: Vec<i64> = self.vertex_coords.iter().map(|x| x[e0]).filter(|&c| c != 0).collect();
            values.sort_unstable();
            if values != [-1, 1] {
                return internal("markers are not unique");
            }
        }
        Ok(())
    }
}

/// Vertex vectors from an isometry of the white-graph lattice onto `lat`.
fn certificate_from_isometry(lat: ChangemakerLattice, iso: &intlat::Isometry) -> Result<EmbeddingCertificate> {
    let mut coords: Vec<IntVector> = iso.matrix.iter().map(|row| lat.from_coordinates(row)).collect();
    let mut last = vec![0i64; lat.ambient];
    for x in &coords {
        for (a, b) in last.iter_mut().zip(x) {
            *a -= b;
        }
    }
    coords.push(last);
    EmbeddingCertificate::new(lat, coords)
}

/// First candidate lattice isometric to `goeritz`, as an embedding certificate.
/// The Gram matrix must be the Laplacian of a graph with one vertex dropped.
pub fn recognize(goeritz: &GramLattice, slope: Slope, budget: u64) -> Result<Option<EmbeddingCertificate>> {
    if goeritz.rank() == 0 {
        return Ok(None);
    }
    if !intlat::is_positive_definite(goeritz) {
        return invalid("Goeritz form is not positive definite");
    }
    let d = intlat::discriminant(goeritz)?;
    if d != slope.numerator() as i128 {
        return Ok(None);
    }
    for c in changemaker_tuples(required_norm(slope), budget)? {
        let lat = cm_build_from_coeffs(slope, c)?;
        if lat.rank() != goeritz.rank() {
            continue;
        }
        if let Some(iso) = intlat::find_isometry(goeritz, &lat.gram, budget)? {
            return certificate_from_isometry(lat, &iso).map(Some);
        }
    }
    Ok(None)
}

/// Recognition for the lattice of a graph, using all vertices but the last.
pub fn recognize_graph(graph: &Multigraph, slope: Slope, budget: u64) -> Result<Option<EmbeddingCertificate>> {
    let g = graph.graph_lattice_gram(graph.vertex_count() - 1)?;
    recognize(&g, slope, budget)
}

/// Markers `(v, w)` and the number of marked crossings.
pub fn marker_vertices(cert: &EmbeddingCertificate) -> Result<(usize, usize, usize)> {
    match cert.marker_vertices {
        Some((v, w)) => Ok((v, w, cert.marked_count())),
        None => invalid("certificate has no marker vertices"),
    }
}

/// A move applied to a certificate. Vertex labels are indices before the move.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Move {
    /// `vertex = x + y` is split; `u1` and `u2` merge.
    FlypeSplit {
        vertex: usize,
        u1: usize,
        u2: usize,
        x: IntVector,
        y: IntVector,
    },
    /// The vertices in `component` are negated and the pair absorbs their sum.
    FlypeTwist { pair: (usize, usize), component: Vec<usize> },
    Untongue { removed: Vec<usize>, rank: usize },
    UntwirlA2 { removed: Vec<usize>, rank: usize },
    UntwirlB { removed: Vec<usize>, rank: usize },
}

/// Replaces `v, u1, u2` by `x, y, u1 + u2`, where `v = x + y` and `x·y = -1`.
pub fn flype_split(cert: &EmbeddingCertificate, vertex: usize, x: &[i64]) -> Result<(EmbeddingCertificate, Move)> {
    let n = cert.vertex_count();
    if vertex >= n {
        return invalid(format!("vertex {vertex} out of range"));
    }
    let v = &cert.vertex_coords[vertex];
    if x.len() != v.len() {
        return invalid("split vector has the wrong length");
    }
    let y: IntVector = v.iter().zip(x).map(|(a, b)| a - b).collect();
    if !cert.lattice.in_lattice(x) || !cert.lattice.in_lattice(&y) {
        return invalid("split parts are not lattice vectors");
    }
    if dot(x, &y) != -1 {
        return invalid(format!("split parts pair to {}, not -1", dot(x, &y)));
    }
    let positive = |z: &[i64]| -> Vec<usize> {
        (0..n)
            .filter(|&u| u != vertex && dot(&cert.vertex_coords[u], z) > 0)
            .collect()
    };
    let (px, py) = (positive(x), positive(&y));
    let (u1, u2) = match (px.as_slice(), py.as_slice()) {
        ([a], [b]) if a != b => (*a, *b),
        _ => {
            return internal(format!(
                "flype at vertex {vertex}: expected one partner for each part, found {px:?} and {py:?}"
            ))
        }
    };
    let mut coords = cert.vertex_coords.clone();
    let merged: IntVector = coords[u1].iter().zip(&coords[u2]).map(|(a, b)| a + b).collect();
    coords[vertex] = x.to_vec();
    coords[u1] = y.clone();
    coords[u2] = merged;
    let out = cert.with_coords(coords)?;
    Ok((out, Move::FlypeSplit { vertex, u1, u2, x: x.to_vec(), y }))
}

/// Components of the white graph with `a` and `b` removed.
fn components_without(cert: &EmbeddingCertificate, a: usize, b: usize) -> Vec<Vec<usize>> {
    let n = cert.vertex_count();
    let mut seen = vec![false; n];
    seen[a] = true;
    seen[b] = true;
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut comp = vec![s];
        seen[s] = true;
        let mut i = 0;
        while i < comp.len() {
            let x = comp[i];
            for y in 0..n {
                if !seen[y] && cert.pair(x, y) < 0 {
                    seen[y] = true;
                    comp.push(y);
                }
            }
            i += 1;
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Rotates the tangle of `component`, a union of components of the graph
/// with `a` and `b` removed; `a` and `b` must be adjacent.
pub fn flype_twist(
    cert: &EmbeddingCertificate,
    a: usize,
    b: usize,
    component: &[usize],
) -> Result<(EmbeddingCertificate, Move)> {
    let n = cert.vertex_count();
    if a >= n || b >= n || a == b {
        return invalid("twist needs two distinct vertices");
    }
    if cert.pair(a, b) >= 0 {
        return invalid("twist pair is not joined by an edge");
    }
    let mut inside = vec![false; n];
    for &z in component {
        if z >= n || z == a || z == b || inside[z] {
            return invalid(format!("bad twist component entry {z}"));
        }
        inside[z] = true;
    }
    if component.is_empty() {
        return invalid("empty twist component");
    }
    for z in 0..n {
        for y in 0..n {
            if inside[z] && !inside[y] && y != a && y != b && cert.pair(z, y) < 0 {
                return invalid("twist component is not separated by the pair");
            }
        }
    }
    let ambient = cert.lattice.ambient;
    let mut sum = vec![0i64; ambient];
    for &z in component {
        for (s, c) in sum.iter_mut().zip(&cert.vertex_coords[z]) {
            *s += c;
        }
    }
    let mut coords = cert.vertex_coords.clone();
    for &z in component {
        for c in coords[z].iter_mut() {
            *c = -*c;
        }
    }
    for t in [a, b] {
        for (c, s) in coords[t].iter_mut().zip(&sum) {
            *c += s;
        }
    }
    let mut sorted = component.to_vec();
    sorted.sort_unstable();
    let out = cert.with_coords(coords)?;
    Ok((out, Move::FlypeTwist { pair: (a, b), component: sorted }))
}

fn require_half_integer(cert: &EmbeddingCertificate) -> Result<()> {
    if !cert.is_half_integer() {
        return invalid(format!("expected a half-integer certificate, got slope {}", cert.lattice.slope));
    }
    Ok(())
}

fn markers(cert: &EmbeddingCertificate) -> Result<(usize, usize)> {
    cert.marker_vertices
        .ok_or_else(|| Error::Internal("certificate lost its marker vertices".into()))
}

fn find_vertex(cert: &EmbeddingCertificate, x: &[i64]) -> Option<usize> {
    cert.vertex_coords.iter().position(|y| y.as_slice() == x)
}

/// `Σ c_j e_j` style builder for the half-integer layout: `(index, coefficient)` pairs.
fn vector(lat: &ChangemakerLattice, terms: &[(usize, i64)]) -> IntVector {
    let mut v = vec![0i64; lat.ambient];
    for &(i, c) in terms {
        v[i] += c;
    }
    v
}

fn sub(a: &[i64], b: &[i64]) -> IntVector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// `v' = -f_1 + e_0 + e_1`.
fn standard_marker(lat: &ChangemakerLattice) -> IntVector {
    vector(lat, &[(lat.f(1), -1), (lat.e(0), 1), (lat.e(1), 1)])
}

/// Chooses the sign of the embedding and flypes so that `v = -f_1 + e_0 + e_1`.
pub fn normalize_marker(cert: &EmbeddingCertificate) -> Result<(EmbeddingCertificate, Vec<Move>)> {
    require_half_integer(cert)?;
    let lat = &cert.lattice;
    let f1 = lat.f(1);
    let mut cur = cert.clone();
    let (v, _) = markers(&cur)?;
    if cur.vertex_coords[v][f1] > 0 {
        cur = cur.negated()?;
    }
    let (v, _) = markers(&cur)?;
    let target = standard_marker(lat);
    let mut moves = Vec::new();
    match cur.vertex_coords[v][f1] {
        -1 => {
            if cur.vertex_coords[v] != target {
                return internal("marker with v·f_1 = -1 is not -f_1 + e_0 + e_1");
            }
        }
        0 => {
            let x = sub(&cur.vertex_coords[v], &target);
            let (next, mv) = flype_split(&cur, v, &x)?;
            cur = next;
            moves.push(mv);
        }
        c => return internal(format!("marker pairs {c} with f_1 after the sign choice")),
    }
    if find_vertex(&cur, &target).is_none() {
        return internal("standard marker is not a vertex after normalization");
    }
    Ok((cur, moves))
}

/// Largest `k` with `σ_k = 1`.
fn ones_count(lat: &ChangemakerLattice) -> usize {
    lat.coeffs.sigma.iter().filter(|&&s| s == 1).count()
}

/// `v_m = -f_m + f_{m-1}`.
fn chain_vector(lat: &ChangemakerLattice, m: usize) -> IntVector {
    vector(lat, &[(lat.f(m), -1), (lat.f(m - 1), 1)])
}

fn is_standard_form(cert: &EmbeddingCertificate) -> bool {
    let lat = &cert.lattice;
    find_vertex(cert, &standard_marker(lat)).is_some()
        && (2..=ones_count(lat)).all(|m| find_vertex(cert, &chain_vector(lat, m)).is_some())
}

/// A subset of `{1..limit}` (one-based) whose σ-values sum to `target`,
/// optionally required to contain `1`.
fn subset_with_sum(sigma: &[i64], limit: usize, target: i64, with_one: bool) -> Option<Vec<usize>> {
    fn rec(sigma: &[i64], i: usize, rem: i64, lo: usize, chosen: &mut Vec<usize>) -> bool {
        if rem == 0 {
            return true;
        }
        if i < lo {
            return false;
        }
        let s = sigma[i - 1];
        let rest: i64 = sigma[lo - 1..i].iter().sum();
        if rest < rem {
            return false;
        }
        if s <= rem {
            chosen.push(i);
            if rec(sigma, i - 1, rem - s, lo, chosen) {
                return true;
            }
            chosen.pop();
        }
        rec(sigma, i - 1, rem, lo, chosen)
    }
    let mut chosen = Vec::new();
    if with_one {
        if limit < 1 || target < sigma[0] {
            return None;
        }
        chosen.push(1);
        if rec(sigma, limit, target - sigma[0], 2, &mut chosen) {
            return Some(chosen);
        }
        return None;
    }
    if target == 0 {
        return Some(chosen);
    }
    if limit == 0 {
        return None;
    }
    rec(sigma, limit, target, 1, &mut chosen).then_some(chosen)
}

fn move_bound(cert: &EmbeddingCertificate) -> usize {
    let r = cert.rank() + 2;
    4 * r * r + 16
}

/// Flypes until `v`, `v_2, ..., v_k` are vertices and, for tight σ, the other
/// marker is `f_g - f_{g-1} - ... - e_0 - e_1`, or for slack σ the adjacent
/// vertex `u_1` is `-f_h + f_{h-1} + ... + f_1`.
pub fn normalize_to_standard_form(cert: &EmbeddingCertificate) -> Result<(EmbeddingCertificate, Vec<Move>)> {
    let (mut cur, mut moves) = normalize_marker(cert)?;
    if cur.marked_count() != 1 {
        return invalid(format!(
            "standard form needs a single marked crossing, found {}",
            cur.marked_count()
        ));
    }
    let lat = cur.lattice.clone();
    let sigma = lat.coeffs.sigma.clone();
    let t = sigma.len();
    let k = ones_count(&lat);
    let bound = move_bound(&cur);
    let marker = standard_marker(&lat);

    // Chain v_2, ..., v_k.
    let mut guard = 0;
    'chain: loop {
        for m in 2..=k {
            let vm = chain_vector(&lat, m);
            if find_vertex(&cur, &vm).is_some() {
                continue;
            }
            let prev = if m == 2 { marker.clone() } else { chain_vector(&lat, m - 1) };
            let xi = (0..cur.vertex_count())
                .find(|&i| {
                    let x = &cur.vertex_coords[i];
                    dot(x, &vm) > 0 && dot(x, &prev) < 0
                })
                .ok_or_else(|| Error::Internal(format!("no vertex to flype out v_{m}")))?;
            let part = sub(&cur.vertex_coords[xi], &vm);
            let (next, mv) = flype_split(&cur, xi, &part)?;
            cur = next;
            moves.push(mv);
            guard += 1;
            if guard > bound {
                return internal("standard-form chain did not stabilise");
            }
            continue 'chain;
        }
        break;
    }

    let (e0, e1) = (lat.e(0), lat.e(1));
    if tightness(&lat.coeffs).is_tight {
        loop {
            let (_, w) = markers(&cur)?;
            let wv = cur.vertex_coords[w].clone();
            let g = (1..=t)
                .find(|&j| wv[lat.f(j)] >= 0)
                .ok_or_else(|| Error::Internal("marker w is negative on every f_j".into()))?;
            let a = subset_with_sum(&sigma, g - 1, sigma[g - 1] - 1, false)
                .ok_or_else(|| Error::Internal(format!("no subset for σ_{g} - 1")))?;
            let mut target = vector(&lat, &[(lat.f(g), 1), (e0, -1), (e1, -1)]);
            for i in a {
                target[lat.f(i)] -= 1;
            }
            let rest = sub(&wv, &target);
            match dot(&rest, &target) {
                0 if rest.iter().all(|&c| c == 0) => break,
                -1 => {
                    let (next, mv) = flype_split(&cur, w, &rest)?;
                    cur = next;
                    moves.push(mv);
                }
                other => return internal(format!("tight flype pairing is {other}")),
            }
            guard += 1;
            if guard > bound {
                return internal("tight flyping did not terminate");
            }
        }
    } else if t >= 2 {
        let v2 = chain_vector(&lat, 2);
        loop {
            let (v, w) = markers(&cur)?;
            let u1 = (0..cur.vertex_count())
                .find(|&i| i != w && i != v && cur.pair(i, v) < 0 && cur.vertex_coords[i] != v2)
                .ok_or_else(|| Error::Internal("no adjacent vertex besides v_2".into()))?;
            let uv = cur.vertex_coords[u1].clone();
            let h = (1..=t)
                .find(|&j| uv[lat.f(j)] <= 0)
                .ok_or_else(|| Error::Internal("adjacent vertex is positive on every f_j".into()))?;
            let a = subset_with_sum(&sigma, h - 1, sigma[h - 1], true)
                .ok_or_else(|| Error::Internal(format!("no subset containing 1 for σ_{h}")))?;
            let mut target = vector(&lat, &[(lat.f(h), -1)]);
            for i in a {
                target[lat.f(i)] += 1;
            }
            let rest = sub(&uv, &target);
            match dot(&rest, &target) {
                0 if rest.iter().all(|&c| c == 0) => break,
                -1 => {
                    let (next, mv) = flype_split(&cur, u1, &rest)?;
                    cur = next;
                    moves.push(mv);
                }
                other => return internal(format!("slack flype pairing is {other}")),
            }
            guard += 1;
            if guard > bound {
                return internal("slack flyping did not terminate");
            }
        }
    }
    if !is_standard_form(&cur) {
        return internal("flypes left the certificate outside standard form");
    }
    Ok((cur, moves))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Situation {
    A1,
    A2,
    B,
}

/// Vertices other than `w` that meet the marker `v`.
fn adjacent_vertices(cert: &EmbeddingCertificate) -> Result<(usize, usize, Vec<usize>)> {
    let (v, w) = markers(cert)?;
    let adj = (0..cert.vertex_count())
        .filter(|&i| i != v && i != w && cert.pair(i, v) < 0)
        .collect();
    Ok((v, w, adj))
}

pub fn classify_situation(cert: &EmbeddingCertificate) -> Result<Situation> {
    require_half_integer(cert)?;
    let (v, w, adj) = adjacent_vertices(cert)?;
    let lat = &cert.lattice;
    if cert.vertex_coords[v] != standard_marker(lat) || cert.pair(v, w) != -1 {
        return invalid("classification needs the standard marker and a single marked crossing");
    }
    match adj.as_slice() {
        [u] if cert.pair(*u, v) == -2 => Ok(Situation::B),
        [a, b] if cert.pair(*a, v) == -1 && cert.pair(*b, v) == -1 => {
            if lat.t() >= 2 && cert.vertex_coords[w][lat.f(2)] == 0 {
                Ok(Situation::A2)
            } else {
                Ok(Situation::A1)
            }
        }
        _ => internal(format!("marker v has adjacent vertices {adj:?}")),
    }
}

/// The adjacent vertex joined to `w` and the other one, for A1 and B.
fn descent_partners(cert: &EmbeddingCertificate, situation: Situation) -> Result<(usize, Option<usize>)> {
    let (_, w, adj) = adjacent_vertices(cert)?;
    let lat = &cert.lattice;
    match situation {
        Situation::B => {
            let u = adj[0];
            if cert.pair(u, w) >= 0 {
                return internal("situation B without an edge between u and w");
            }
            Ok((u, None))
        }
        Situation::A1 => {
            let v2 = (lat.t() >= 2).then(|| chain_vector(lat, 2));
            let mut order = adj.clone();
            order.sort_by_key(|&u| Some(&cert.vertex_coords[u]) == v2.as_ref());
            let u1 = order
                .iter()
                .copied()
                .find(|&u| cert.pair(u, w) < 0)
                .ok_or_else(|| Error::Internal("situation A1 without an edge from w to an adjacent vertex".into()))?;
            let u2 = order.into_iter().find(|&u| u != u1).unwrap();
            Ok((u1, Some(u2)))
        }
        Situation::A2 => {
            let v2 = chain_vector(lat, 2);
            let u2 = adj
                .iter()
                .copied()
                .find(|&u| cert.vertex_coords[u] == v2)
                .ok_or_else(|| Error::Internal("situation A2 without v_2 as a vertex".into()))?;
            let u1 = adj.iter().copied().find(|&u| u != u2).unwrap();
            Ok((u1, Some(u2)))
        }
    }
}

/// Twists away everything separated from `v` by `w` and the adjacent vertex
/// that shares an edge with `w`.
pub fn clear_triangle(cert: &EmbeddingCertificate, situation: Situation) -> Result<(EmbeddingCertificate, Vec<Move>)> {
    if situation == Situation::A2 {
        return Ok((cert.clone(), Vec::new()));
    }
    let (v, w) = markers(cert)?;
    let (u1, _) = descent_partners(cert, situation)?;
    let inside: Vec<usize> = components_without(cert, w, u1)
        .into_iter()
        .filter(|c| !c.contains(&v))
        .flatten()
        .collect();
    if inside.is_empty() {
        return Ok((cert.clone(), Vec::new()));
    }
    let (next, mv) = flype_twist(cert, w, u1, &inside)?;
    Ok((next, vec![mv]))
}

/// Rebuilds the half-integer lattice spanned by `coords` in the layout
/// `e_0, e_1, f_1, ...`, reordering the `f` coordinates so that the new
/// coefficients are nondecreasing.
fn rebuild_half_integer(coords: Vec<IntVector>) -> Result<(ChangemakerLattice, Vec<IntVector>)> {
    let ambient = coords[0].len();
    let n = coords.len();
    for x in &coords {
        if x[0] != x[1] {
            return internal("vertex is not orthogonal to e_0 - e_1");
        }
    }
    let comp = intlat::orthogonal_complement(&coords[..n - 1], ambient)?;
    if comp.len() != 2 {
        return internal(format!("orthogonal complement has rank {}", comp.len()));
    }
    let (c1, c2) = (&comp[0], &comp[1]);
    let (a, b) = (c2[1], -c1[1]);
    let g = num_integer::gcd(a, b);
    if g == 0 {
        return internal("orthogonal complement misses e_0 - e_1");
    }
    let mut w0: IntVector = c1.iter().zip(c2).map(|(x, y)| (a * x + b * y) / g).collect();
    if w0[0] < 0 {
        w0.iter_mut().for_each(|x| *x = -*x);
    }
    if w0[0] != 1 || w0[1] != 0 {
        return internal(format!("recomputed w_0 has e-part ({}, {})", w0[0], w0[1]));
    }
    let sigma_raw: Vec<i64> = w0[2..].to_vec();
    let mut order: Vec<usize> = (0..sigma_raw.len()).collect();
    order.sort_by_key(|&i| sigma_raw[i]);
    let sigma: Vec<i64> = order.iter().map(|&i| sigma_raw[i]).collect();
    let coeffs = ChangemakerCoeffs::new(sigma)?;
    let norm = 1 + coeffs.norm();
    let lat = cm_build_from_coeffs(Slope::new(2 * norm - 1, 2)?, coeffs)?;
    let coords = coords
        .into_iter()
        .map(|x| {
            let mut y = vec![x[0], x[1]];
            y.extend(order.iter().map(|&i| x[2 + i]));
            y
        })
        .collect();
    Ok((lat, coords))
}

/// The untongue (A1) or untwirl (A2, B) rewrite, dropping `f_1` (and `f_2` in A2).
pub fn descend(cert: &EmbeddingCertificate, situation: Situation) -> Result<(EmbeddingCertificate, Move)> {
    require_half_integer(cert)?;
    let lat = &cert.lattice;
    let (v, w) = markers(cert)?;
    let (u1, u2) = descent_partners(cert, situation)?;
    let (e0, e1, f1) = (lat.e(0), lat.e(1), lat.f(1));
    let c = |i: usize| cert.vertex_coords[i].clone();
    let mut wt = c(w);
    if wt[f1] != -1 {
        return internal("marker w does not pair -1 with f_1");
    }
    wt[f1] = 0;
    let mut replace: Vec<(usize, IntVector)> = Vec::new();
    let mut removed = Vec::new();
    let mut dropped = vec![f1];
    match situation {
        Situation::A1 => {
            let u2 = u2.unwrap();
            let (mut a, mut b) = (c(u1), c(u2));
            if a[f1] != 1 || b[f1] != 1 {
                return internal("adjacent vertices do not pair 1 with f_1");
            }
            a[f1] = 0;
            b[f1] = 0;
            b[e0] += 1;
            b[e1] += 1;
            replace.push((v, b));
            replace.push((w, wt));
            replace.push((u1, a));
            removed.push(u2);
        }
        Situation::A2 => {
            let f2 = lat.f(2);
            let mut a = c(u1);
            if a[f1] != 1 || a[f2] != 1 || wt[f2] != 0 {
                return internal("situation A2 pairings are off");
            }
            a[f1] = 0;
            a[f2] = 0;
            a[e0] += 1;
            a[e1] += 1;
            replace.push((v, a));
            replace.push((w, wt));
            removed.push(u1);
            removed.push(u2.unwrap());
            dropped.push(f2);
        }
        Situation::B => {
            let mut a = c(u1);
            if a[f1] != 2 {
                return internal("situation B vertex does not pair 2 with f_1");
            }
            a[f1] = 0;
            a[e0] += 1;
            a[e1] += 1;
            replace.push((v, a));
            replace.push((w, wt));
            removed.push(u1);
        }
    }
    let mut coords = cert.vertex_coords.clone();
    for (i, x) in replace {
        coords[i] = x;
    }
    let kept: Vec<IntVector> = (0..coords.len())
        .filter(|i| !removed.contains(i))
        .map(|i| {
            let x = &coords[i];
            if dropped.iter().any(|&d| x[d] != 0) {
                return internal("descended vertex still meets a dropped coordinate");
            }
            Ok((0..x.len()).filter(|j| !dropped.contains(j)).map(|j| x[j]).collect())
        })
        .collect::<Result<_>>()?;
    let (new_lat, coords) = rebuild_half_integer(kept)?;
    let out = EmbeddingCertificate::new(new_lat, coords)?;
    if out.marked_count() == 0 {
        return internal("descent lost the marked crossing");
    }
    let rank = out.rank();
    removed.sort_unstable();
    let mv = match situation {
        Situation::A1 => Move::Untongue { removed, rank },
        Situation::A2 => Move::UntwirlA2 { removed, rank },
        Situation::B => Move::UntwirlB { removed, rank },
    };
    Ok((out, mv))
}

/// The full reduction record.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveTrace {
    pub moves: Vec<Move>,
    /// Marked-crossing count of each certificate after the marker is standard.
    pub marked_counts: Vec<usize>,
    /// Rank of each certificate fed to a descent, followed by the final rank.
    pub ranks: Vec<usize>,
    /// Vertices of the final clasp path, from `v` to `w`.
    pub clasp_path: Vec<usize>,
    pub clasp_marked: usize,
}

/// The path obtained by deleting two `v`-`w` edges, if the graph is a clasp.
pub fn clasp_path(cert: &EmbeddingCertificate) -> Result<Option<Vec<usize>>> {
    let (v, w) = markers(cert)?;
    if cert.marked_count() < 2 {
        return Ok(None);
    }
    let n = cert.vertex_count();
    let mut mult: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 0 } else { -cert.pair(i, j) }).collect())
        .collect();
    mult[v][w] -= 2;
    mult[w][v] -= 2;
    let edges: i64 = (0..n).map(|i| mult[i][i + 1..].iter().sum::<i64>()).sum();
    if edges != n as i64 - 1 {
        return Ok(None);
    }
    let mut path = vec![v];
    let mut prev = usize::MAX;
    let mut cur = v;
    while cur != w {
        let next: Vec<usize> = (0..n).filter(|&j| j != prev && mult[cur][j] > 0).collect();
        if next.len() != 1 || mult[cur][next[0]] != 1 {
            return Ok(None);
        }
        prev = cur;
        cur = next[0];
        path.push(cur);
    }
    Ok((path.len() == n).then_some(path))
}

/// Reduces a half-integer certificate to a clasp, returning every
/// intermediate certificate alongside the trace.
pub fn reduce_to_clasp_states(cert: &EmbeddingCertificate) -> Result<(MoveTrace, Vec<EmbeddingCertificate>)> {
    require_half_integer(cert)?;
    cert.validate()?;
    let mut moves = Vec::new();
    let mut states = vec![cert.clone()];
    let mut marked_counts = Vec::new();
    let mut ranks = Vec::new();
    let mut cur = cert.clone();
    let rank_bound = cert.rank() + 1;
    for _ in 0..rank_bound {
        let (next, mv) = normalize_marker(&cur)?;
        push_states(&mut states, &mut moves, &next, mv, &cur)?;
        cur = next;
        marked_counts.push(cur.marked_count());
        if cur.marked_count() >= 2 {
            let path = clasp_path(&cur)?
                .ok_or_else(|| Error::Internal("several marked crossings but the graph is not a clasp".into()))?;
            ranks.push(cur.rank());
            let trace = MoveTrace { moves, marked_counts, ranks, clasp_path: path, clasp_marked: cur.marked_count() };
            return Ok((trace, states));
        }
        let (next, mv) = normalize_to_standard_form(&cur)?;
        push_states(&mut states, &mut moves, &next, mv, &cur)?;
        cur = next;
        marked_counts.push(cur.marked_count());
        let situation = classify_situation(&cur)?;
        let (next, mv) = clear_triangle(&cur, situation)?;
        push_states(&mut states, &mut moves, &next, mv, &cur)?;
        cur = next;
        marked_counts.push(cur.marked_count());
        ranks.push(cur.rank());
        let (next, mv) = descend(&cur, situation)?;
        if next.rank() >= cur.rank() {
            return internal("descent did not lower the rank");
        }
        moves.push(mv);
        states.push(next.clone());
        cur = next;
    }
    internal("reduction exceeded the rank bound")
}

fn push_states(
    states: &mut Vec<EmbeddingCertificate>,
    moves: &mut Vec<Move>,
    result: &EmbeddingCertificate,
    mv: Vec<Move>,
    _before: &EmbeddingCertificate,
) -> Result<()> {
    if !mv.is_empty() || states.last() != Some(result) {
        result.validate()?;
        states.push(result.clone());
    }
    moves.extend(mv);
    Ok(())
}

pub fn reduce_to_clasp(cert: &EmbeddingCertificate) -> Result<MoveTrace> {
    reduce_to_clasp_states(cert).map(|(t, _)| t)
}

/// The rational tangle carried by the fractional part of the embedding.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FractionalTangle {
    /// `v, μ_1, ..., μ_m` as vertex indices.
    pub chain: Vec<usize>,
    /// The marker `w`.
    pub outer: usize,
    /// Edge indices of `graph()` inside the tangle.
    pub edges: Vec<usize>,
    pub slope: TangleSlope,
}

fn fractional_part(lat: &ChangemakerLattice, x: &[i64]) -> IntVector {
    x[..=lat.s].to_vec()
}

fn mu_sum(lat: &ChangemakerLattice, a: usize, b: usize) -> IntVector {
    let mut out = vec![0i64; lat.s + 1];
    for mu in &lat.mu[a..=b] {
        for (o, c) in out.iter_mut().zip(&mu[..=lat.s]) {
            *o += c;
        }
    }
    out
}

/// Flypes until `μ_1, ..., μ_m` are vertices.
pub fn normalize_fractional(cert: &EmbeddingCertificate) -> Result<(EmbeddingCertificate, Vec<Move>)> {
    let lat = cert.lattice.clone();
    if lat.is_integer() {
        return invalid("integer certificates have no fractional part");
    }
    let m = lat.m();
    let mut cur = cert.clone();
    let mut moves = Vec::new();
    let bound = move_bound(cert);
    for _ in 0..bound {
        let Some(c) = (1..=m).rev().find(|&c| find_vertex(&cur, &lat.mu[c]).is_none()) else {
            return Ok((cur, moves));
        };
        let u = (0..cur.vertex_count())
            .find(|&i| {
                let fp = fractional_part(&lat, &cur.vertex_coords[i]);
                (0..c).any(|a| fp == mu_sum(&lat, a, c))
            })
            .ok_or_else(|| Error::Internal(format!("no vertex to flype out μ_{c}")))?;
        let part = sub(&cur.vertex_coords[u], &lat.mu[c]);
        let (next, mv) = flype_split(&cur, u, &part)?;
        cur = next;
        moves.push(mv);
    }
    internal("fractional normalization did not terminate")
}

/// Locates the fractional tangle; `μ_1, ..., μ_m` must already be vertices.
pub fn fractional_tangle(cert: &EmbeddingCertificate) -> Result<FractionalTangle> {
    let lat = &cert.lattice;
    if lat.is_integer() {
        return invalid("integer certificates have no fractional tangle");
    }
    let m = lat.m();
    let mut chain = Vec::with_capacity(m + 1);
    let mut mus = Vec::with_capacity(m);
    for c in 1..=m {
        let i = find_vertex(cert, &lat.mu[c])
            .ok_or_else(|| Error::InvalidInput(format!("μ_{c} is not a vertex; run normalize_fractional first")))?;
        mus.push(i);
    }
    let (v, w) = cert
        .marker_vertices
        .ok_or_else(|| Error::Internal("no unique marker vertices".into()))?;
    if fractional_part(lat, &cert.vertex_coords[v]) != lat.mu[0][..=lat.s] {
        return internal("marker v does not have fractional part μ_0");
    }
    let neg: IntVector = mu_sum(lat, 0, m).iter().map(|c| -c).collect();
    if fractional_part(lat, &cert.vertex_coords[w]) != neg {
        return internal("marker w does not have fractional part -(μ_0 + ... + μ_m)");
    }
    chain.push(v);
    chain.extend(&mus);
    let vf = fractional_part(lat, &cert.vertex_coords[v]);
    let wf = fractional_part(lat, &cert.vertex_coords[w]);
    let inside_vw = (-dot(&vf, &wf) - 1) as usize;
    let graph = cert.graph();
    let key = (v.min(w), v.max(w));
    let mut edges = Vec::new();
    let mut taken = 0;
    for (i, &(a, b)) in graph.edges().iter().enumerate() {
        if mus.contains(&a) || mus.contains(&b) {
            edges.push(i);
        } else if (a, b) == key && taken < inside_vw {
            edges.push(i);
            taken += 1;
        }
    }
    if taken < inside_vw {
        return internal(format!("only {taken} edges between the markers, expected {inside_vw}"));
    }
    let slope = knotdiag::tangle_slope_detect(&graph, &chain, w, &edges)?
        .ok_or_else(|| Error::Internal("fractional tangle does not have the chain shape".into()))?;
    let q = lat.slope.denominator();
    let r = lat.slope.r();
    if slope != TangleSlope::new(q - r, r)? {
        return internal(format!("fractional tangle has slope {slope}, expected {}/{r}", q - r));
    }
    Ok(FractionalTangle { chain, outer: w, edges, slope })
}

/// Replaces the fractional tangle by one crossing, giving a half-integer certificate.
pub fn collapse(cert: &EmbeddingCertificate, tangle: &FractionalTangle) -> Result<EmbeddingCertificate> {
    let lat = &cert.lattice;
    let v = tangle.chain[0];
    let w = tangle.outer;
    let mus = &tangle.chain[1..];
    let e0 = lat.e(0);
    let mut coords = Vec::new();
    for (i, x) in cert.vertex_coords.iter().enumerate() {
        if mus.contains(&i) {
            continue;
        }
        let extra = if i == v {
            1
        } else if i == w {
            -1
        } else {
            if x[..=lat.s].iter().any(|&c| c != 0) {
                return internal(format!("vertex {i} outside the tangle has a fractional part"));
            }
            0
        };
        let mut y = vec![x[e0], extra];
        y.extend((1..=lat.t()).map(|j| x[lat.f(j)]));
        coords.push(y);
    }
    let norm = 1 + lat.coeffs.norm();
    let half = cm_build_from_coeffs(Slope::new(2 * norm - 1, 2)?, lat.coeffs.clone())?;
    EmbeddingCertificate::new(half, coords)
}

/// Outcome of the unknotting-number-one test on a diagram.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnknottingReport {
    pub unknotting_one: bool,
    pub determinant: i128,
    pub signature: i64,
    /// Whether the certificate was found for the mirror image.
    pub mirrored: bool,
    /// Goeritz matrix of the diagram that carries the certificate.
    pub gram: Option<GramLattice>,
    /// Zero-based crossing indices.
    pub marked_crossings: Vec<usize>,
    /// Signs of the marked crossings in the input diagram.
    pub marked_signs: Vec<i8>,
    pub certificate: Option<EmbeddingCertificate>,
    pub trace: Option<MoveTrace>,
}

fn checked_knot_diagram(pd: &PDCode) -> Result<ColoredDiagram> {
    if pd.component_count() != 1 {
        return invalid(format!("expected a knot, the diagram has {} components", pd.component_count()));
    }
    let d = knotdiag::color_and_white_graph(pd)?;
    if !d.alternating {
        return invalid("diagram is not alternating");
    }
    if !d.is_reduced() {
        return invalid("diagram is not reduced");
    }
    Ok(d)
}

/// Searches the diagram and its mirror for a certificate with the given slope class.
fn search_both(
    pd: &PDCode,
    class: SlopeClass,
    budget: u64,
) -> Result<(ColoredDiagram, i128, i64, Option<(bool, ColoredDiagram, EmbeddingCertificate)>)> {
    let d = checked_knot_diagram(pd)?;
    let det = knotdiag::determinant(&d)?;
    let sig = knotdiag::signature(&d)?;
    let det64 = i64::try_from(det).map_err(|_| Error::Overflow("determinant"))?;
    let slope = class.slope_for(det64)?;
    for mirrored in [false, true] {
        let diag = if mirrored {
            knotdiag::color_and_white_graph(&pd.mirror())?
        } else {
            d.clone()
        };
        if let Some(mut cert) = recognize(diag.goeritz(), slope, budget)? {
            cert.attach_diagram(&diag.white_data)?;
            return Ok((d, det, sig, Some((mirrored, diag, cert))));
        }
    }
    Ok((d, det, sig, None))
}

/// Decides whether a reduced alternating knot diagram has unknotting number one.
pub fn unknotting_one(pd: &PDCode, budget: u64) -> Result<UnknottingReport> {
    let mut report = UnknottingReport {
        unknotting_one: false,
        determinant: 1,
        signature: 0,
        mirrored: false,
        gram: None,
        marked_crossings: Vec::new(),
        marked_signs: Vec::new(),
        certificate: None,
        trace: None,
    };
    if pd.crossing_count() == 0 {
        return Ok(report);
    }
    let (d, det, sig, found) = search_both(pd, SlopeClass::HalfInteger, budget)?;
    report.determinant = det;
    report.signature = sig;
    if let Some((mirrored, diag, cert)) = found {
        report.unknotting_one = true;
        report.mirrored = mirrored;
        report.gram = Some(diag.goeritz().clone());
        report.marked_crossings = cert.marked_crossings.clone();
        report.marked_signs = cert.marked_crossings.iter().map(|&c| d.signs[c]).collect();
        report.trace = Some(reduce_to_clasp(&cert)?);
        report.certificate = Some(cert);
    }
    Ok(report)
}

/// Outcome of the alternating-surgery test for one slope.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurgeryReport {
    pub slope: Slope,
    pub found: bool,
    pub mirrored: bool,
    pub stable: Option<Vec<i64>>,
    pub certificate: Option<EmbeddingCertificate>,
    /// Fractional tangle slope and the half-integer slope after collapsing it.
    pub tangle_slope: Option<TangleSlope>,
    pub collapsed_slope: Option<Slope>,
}

/// Decides whether the Goeritz lattice of the diagram or its mirror is a
/// `p/q`-changemaker lattice, with `p` the determinant.
pub fn alternating_surgery(pd: &PDCode, slope: Slope, budget: u64) -> Result<SurgeryReport> {
    let (_, _, _, found) = search_both(pd, SlopeClass::Slope(slope), budget)?;
    let mut report = SurgeryReport {
        slope,
        found: false,
        mirrored: false,
        stable: None,
        certificate: None,
        tangle_slope: None,
        collapsed_slope: None,
    };
    if let Some((mirrored, _, cert)) = found {
        report.found = true;
        report.mirrored = mirrored;
        report.stable = Some(cert.lattice.coeffs.stable());
        if !slope.is_integer() {
            let (normal, _) = normalize_fractional(&cert)?;
            let tangle = fractional_tangle(&normal)?;
            let collapsed = collapse(&normal, &tangle)?;
            report.tangle_slope = Some(tangle.slope);
            report.collapsed_slope = Some(collapsed.lattice.slope);
        }
        report.certificate = Some(cert);
    }
    Ok(report)
}
