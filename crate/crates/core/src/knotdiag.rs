//! Planar diagram codes, checkerboard colourings, white graphs, Goeritz
//! matrices and the classical invariants read off from them.
//!
//! A crossing `X(a,b,c,d)` lists its four arcs counterclockwise starting
//! from the incoming under-strand, so the under-strand runs from `a` to `c`.
//! Arc labels along each component form a contiguous range and increase in
//! the direction of travel.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use petgraph::unionfind::UnionFind;
use regex::Regex;
use serde::{Deserialize, Serialize};

use crate::error::{internal, invalid, Error, Result};
use crate::graphlat::Multigraph;
use crate::intlat::{self, GramLattice};
use crate::ratcf::{neg_cf_eval_projective, Slope};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PDCode {
    pub crossings: Vec<[i64; 4]>,
}

impl PDCode {
    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    /// The same projection with every crossing switched.
    pub fn mirror(&self) -> PDCode {
        let info = ArcInfo::new(self).expect("validated PD code");
        let crossings = self
            .crossings
            .iter()
            .enumerate()
            .map(|(i, &[a, b, c, d])| {
                if info.sign[i] > 0 {
                    [d, a, b, c]
                } else {
                    [b, c, d, a]
                }
            })
            .collect();
        PDCode { crossings }
    }

    pub fn component_count(&self) -> usize {
        if self.crossings.is_empty() {
            return 1;
        }
        ArcInfo::new(self).map(|i| i.ranges.len()).unwrap_or(0)
    }

    /// `+1` for a positive crossing and `-1` for a negative one.
    pub fn signs(&self) -> Result<Vec<i8>> {
        Ok(ArcInfo::new(self)?.sign)
    }
}

impl fmt::Display for PDCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .crossings
            .iter()
            .map(|[a, b, c, d]| format!("X({a},{b},{c},{d})"))
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl FromStr for PDCode {
    type Err = Error;

    fn from_str(s: &str) -> Result<PDCode> {
        parse_pd(s)
    }
}

/// Parses `X(a,b,c,d)` tokens separated by whitespace or commas.
pub fn parse_pd(text: &str) -> Result<PDCode> {
    let token = Regex::new(r"X\[?\(?\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*\)?\]?").unwrap();
    let mut crossings = Vec::new();
    let mut last = 0;
    for cap in token.captures_iter(text) {
        let m = cap.get(0).unwrap();
        let gap = &text[last..m.start()];
        if gap.chars().any(|c| !(c.is_whitespace() || c == ',' || c == ';')) {
            return Err(Error::Parse(format!("unexpected text {:?} at offset {last}", gap.trim())));
        }
        last = m.end();
        let mut x = [0i64; 4];
        for (k, slot) in x.iter_mut().enumerate() {
            *slot = cap[k + 1].parse().map_err(|e| Error::Parse(format!("bad arc label: {e}")))?;
        }
        crossings.push(x);
    }
    let tail = &text[last..];
    if tail.chars().any(|c| !(c.is_whitespace() || c == ',' || c == ';')) {
        return Err(Error::Parse(format!("unexpected text {:?} at offset {last}", tail.trim())));
    }
    let pd = PDCode { crossings };
    ArcInfo::new(&pd)?;
    Ok(pd)
}

/// Arc bookkeeping derived from a PD code.
struct ArcInfo {
    /// Label to its two occurrences `(crossing, position)`.
    occ: BTreeMap<i64, Vec<(usize, usize)>>,
    ranges: Vec<(i64, i64)>,
    sign: Vec<i8>,
}

impl ArcInfo {
    fn new(pd: &PDCode) -> Result<ArcInfo> {
        let mut occ: BTreeMap<i64, Vec<(usize, usize)>> = BTreeMap::new();
        for (i, x) in pd.crossings.iter().enumerate() {
            for (j, &a) in x.iter().enumerate() {
                occ.entry(a).or_default().push((i, j));
            }
        }
        for (label, places) in &occ {
            if places.len() != 2 {
                return Err(Error::Parse(format!(
                    "arc {label} appears {} times (crossing {}), expected twice",
                    places.len(),
                    places[0].0 + 1
                )));
            }
        }
        let labels: Vec<i64> = occ.keys().copied().collect();
        let index: BTreeMap<i64, usize> = labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
        let mut uf = UnionFind::new(labels.len());
        for x in &pd.crossings {
            uf.union(index[&x[0]], index[&x[2]]);
            uf.union(index[&x[1]], index[&x[3]]);
        }
        let mut groups: BTreeMap<usize, Vec<i64>> = BTreeMap::new();
        for &l in &labels {
            groups.entry(uf.find(index[&l])).or_default().push(l);
        }
        let mut ranges = Vec::new();
        for group in groups.values() {
            let (lo, hi) = (group[0], *group.last().unwrap());
            if hi - lo + 1 != group.len() as i64 {
                return Err(Error::Parse(format!(
                    "component with arcs {group:?} is not labelled by a contiguous range"
                )));
            }
            ranges.push((lo, hi));
        }
        ranges.sort_unstable();
        let range_of = |l: i64| *ranges.iter().find(|(lo, hi)| *lo <= l && l <= *hi).unwrap();
        let succ = |l: i64| {
            let (lo, hi) = range_of(l);
            if l == hi {
                lo
            } else {
                l + 1
            }
        };
        // Crossing at which each arc ends.
        let mut ends_at: BTreeMap<i64, usize> = BTreeMap::new();
        for (i, x) in pd.crossings.iter().enumerate() {
            if x[2] != succ(x[0]) {
                return Err(Error::Parse(format!(
                    "crossing {} X({},{},{},{}): under-strand must run from arc {} to its successor",
                    i + 1,
                    x[0],
                    x[1],
                    x[2],
                    x[3],
                    x[0]
                )));
            }
            ends_at.insert(x[0], i);
        }
        let mut sign = vec![0i8; pd.crossings.len()];
        let mut pending = Vec::new();
        for (i, x) in pd.crossings.iter().enumerate() {
            let (b, d) = (x[1], x[3]);
            let fwd = b == succ(d);
            let bwd = d == succ(b);
            match (fwd, bwd) {
                (true, false) => sign[i] = 1,
                (false, true) => sign[i] = -1,
                (false, false) => {
                    return Err(Error::Parse(format!(
                        "crossing {}: over-strand arcs {b} and {d} are not consecutive",
                        i + 1
                    )))
                }
                (true, true) => pending.push(i),
            }
        }
        for i in pending {
            let (b, d) = (pd.crossings[i][1], pd.crossings[i][3]);
            // A two-arc component: the arc that does not end elsewhere ends here.
            sign[i] = match (ends_at.get(&d), ends_at.get(&b)) {
                (Some(&j), _) if j != i => -1,
                (_, Some(&j)) if j != i => 1,
                _ => {
                    ends_at.insert(d, i);
                    1
                }
            };
        }
        Ok(ArcInfo { occ, ranges, sign })
    }
}

/// Region data for one of the two checkerboard shadings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoeritzData {
    /// Faces of this colour, in increasing face order; vertex `i` is `regions[i]`.
    pub regions: Vec<usize>,
    /// One edge per crossing whose two corners of this colour are distinct faces.
    pub white_graph: Multigraph,
    /// `edge_crossing[k]` is the crossing carried by edge `k`.
    pub edge_crossing: Vec<usize>,
    /// Crossings whose two corners of this colour lie in the same face.
    pub self_loops: Vec<usize>,
    /// Incidence numbers for this shading, indexed by crossing.
    pub incidence: Vec<i8>,
    /// Goeritz matrix with the last region dropped.
    pub goeritz: GramLattice,
    /// Positive crossings of incidence `-1`.
    pub n_plus: usize,
    /// Negative crossings of incidence `+1`.
    pub n_minus: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoredDiagram {
    pub pd: PDCode,
    /// Each face as a cyclic list of corners `(crossing, j)`; corner `j` sits
    /// between positions `j` and `j+1`.
    pub faces: Vec<Vec<(usize, usize)>>,
    /// True for the faces of the chosen (white) colour.
    pub white: Vec<bool>,
    pub signs: Vec<i8>,
    /// Every crossing has incidence `-1` for the white shading.
    pub alternating: bool,
    pub white_data: GoeritzData,
    pub black_data: GoeritzData,
}

impl ColoredDiagram {
    pub fn goeritz(&self) -> &GramLattice {
        &self.white_data.goeritz
    }

    pub fn white_graph(&self) -> &Multigraph {
        &self.white_data.white_graph
    }

    pub fn crossing_count(&self) -> usize {
        self.signs.len()
    }

    /// No nugatory crossings: neither shading graph has a self-loop or a cut edge.
    pub fn is_reduced(&self) -> bool {
        [&self.white_data, &self.black_data]
            .iter()
            .all(|d| d.self_loops.is_empty() && !d.white_graph.has_cut_edge())
    }
}

/// Opposite corners of a crossing share a colour; this says whether the
/// white corners `{1, 3}` give incidence `-1`.
const WHITE_ODD_CORNERS_NEGATIVE: bool = false;

fn incidence_for(white_even: bool) -> i8 {
    if white_even != WHITE_ODD_CORNERS_NEGATIVE {
        -1
    } else {
        1
    }
}

/// Traces the faces, colours them and builds both shading graphs. The white
/// colour is the one with the most crossings of incidence `-1`.
pub fn color_and_white_graph(pd: &PDCode) -> Result<ColoredDiagram> {
    let n = pd.crossing_count();
    let signs = if n == 0 { Vec::new() } else { pd.signs()? };
    if n == 0 {
        let empty = GoeritzData {
            regions: vec![0],
            white_graph: Multigraph::new(1, Vec::new())?,
            edge_crossing: Vec::new(),
            self_loops: Vec::new(),
            incidence: Vec::new(),
            goeritz: GramLattice::new(Vec::new())?,
            n_plus: 0,
            n_minus: 0,
        };
        let mut black = empty.clone();
        black.regions = vec![1];
        return Ok(ColoredDiagram {
            pd: pd.clone(),
            faces: vec![Vec::new(), Vec::new()],
            white: vec![true, false],
            signs,
            alternating: true,
            white_data: empty,
            black_data: black,
        });
    }
    let info = ArcInfo::new(pd)?;
    let other = |c: usize, j: usize| -> (usize, usize) {
        let label = pd.crossings[c][j];
        let places = &info.occ[&label];
        if places[0] == (c, j) {
            places[1]
        } else {
            places[0]
        }
    };
    let mut face_of = vec![[usize::MAX; 4]; n];
    let mut faces: Vec<Vec<(usize, usize)>> = Vec::new();
    for c in 0..n {
        for j in 0..4 {
            if face_of[c][j] != usize::MAX {
                continue;
            }
            let id = faces.len();
            let mut face = Vec::new();
            let (mut cc, mut jj) = (c, j);
            loop {
                face_of[cc][jj] = id;
                face.push((cc, jj));
                let next = other(cc, (jj + 1) % 4);
                (cc, jj) = next;
                if (cc, jj) == (c, j) {
                    break;
                }
                if face_of[cc][jj] != usize::MAX {
                    return internal("face tracing entered a corner twice");
                }
            }
            faces.push(face);
        }
    }
    if faces.len() != n + 2 {
        return invalid(format!(
            "diagram has {} faces but {} crossings; it must be connected",
            faces.len(),
            n
        ));
    }
    // Faces on either side of an arc receive opposite colours.
    let mut colour: Vec<Option<bool>> = vec![None; faces.len()];
    let mut adjacency: Vec<Vec<usize>> = vec![Vec::new(); faces.len()];
    for c in 0..n {
        for j in 0..4 {
            let a = face_of[c][(j + 3) % 4];
            let b = face_of[c][j];
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
    }
    colour[0] = Some(true);
    let mut stack = vec![0usize];
    while let Some(f) = stack.pop() {
        let cf = colour[f].unwrap();
        for &g in &adjacency[f] {
            match colour[g] {
                None => {
                    colour[g] = Some(!cf);
                    stack.push(g);
                }
                Some(cg) if cg == cf => return internal("faces are not checkerboard colourable"),
                _ => {}
            }
        }
    }
    let mut white: Vec<bool> = colour.into_iter().map(|c| c.unwrap()).collect();
    let negative_count = |white: &[bool]| {
        (0..n)
            .filter(|&c| incidence_for(white[face_of[c][0]]) == -1)
            .count()
    };
    if negative_count(&white) * 2 < n {
        for w in white.iter_mut() {
            *w = !*w;
        }
    }
    let alternating = negative_count(&white) == n;
    let white_data = shading_data(&face_of, &white, &signs, true)?;
    let black_data = shading_data(&face_of, &white, &signs, false)?;
    Ok(ColoredDiagram { pd: pd.clone(), faces, white, signs, alternating, white_data, black_data })
}

fn shading_data(face_of: &[[usize; 4]], white: &[bool], signs: &[i8], want_white: bool) -> Result<GoeritzData> {
    let regions: Vec<usize> = (0..white.len()).filter(|&f| white[f] == want_white).collect();
    let vertex: BTreeMap<usize, usize> = regions.iter().enumerate().map(|(i, &f)| (f, i)).collect();
    let mut edges = Vec::new();
    let mut edge_crossing = Vec::new();
    let mut self_loops = Vec::new();
    let mut incidence = Vec::with_capacity(face_of.len());
    let r = regions.len();
    let mut g = vec![vec![0i64; r]; r];
    let (mut n_plus, mut n_minus) = (0, 0);
    for (c, corners) in face_of.iter().enumerate() {
        let even_white = white[corners[0]];
        let mut mu = incidence_for(even_white);
        if !want_white {
            mu = -mu;
        }
        incidence.push(mu);
        if signs[c] > 0 && mu == -1 {
            n_plus += 1;
        }
        if signs[c] < 0 && mu == 1 {
            n_minus += 1;
        }
        let (x, y) = if even_white == want_white {
            (corners[0], corners[2])
        } else {
            (corners[1], corners[3])
        };
        let (a, b) = (vertex[&x], vertex[&y]);
        if a == b {
            self_loops.push(c);
            continue;
        }
        edges.push((a, b));
        edge_crossing.push(c);
        let m = i64::from(mu);
        g[a][b] += m;
        g[b][a] += m;
        g[a][a] -= m;
        g[b][b] -= m;
    }
    let keep = r.saturating_sub(1);
    let goeritz = GramLattice::new(g.iter().take(keep).map(|row| row[..keep].to_vec()).collect())?;
    Ok(GoeritzData {
        regions,
        white_graph: Multigraph::new(r, edges)?,
        edge_crossing,
        self_loops,
        incidence,
        goeritz,
        n_plus,
        n_minus,
    })
}

/// Signature of a symmetric integer matrix by exact congruence diagonalisation.
pub fn matrix_signature(m: &[Vec<i64>]) -> Result<i64> {
    let n = m.len();
    let mut a: Vec<Vec<Ratio<i128>>> = m
        .iter()
        .map(|r| r.iter().map(|&x| Ratio::from_integer(x as i128)).collect())
        .collect();
    let zero = Ratio::from_integer(0i128);
    let mut active: Vec<usize> = (0..n).collect();
    let mut sig = 0i64;
    while !active.is_empty() {
        let pivot = active.iter().copied().find(|&i| a[i][i] != zero);
        let p = match pivot {
            Some(p) => p,
            None => {
                let pair = active
                    .iter()
                    .flat_map(|&i| active.iter().map(move |&j| (i, j)))
                    .find(|&(i, j)| i != j && a[i][j] != zero);
                let Some((i, j)) = pair else { break };
                // Replace basis vector i by i + j, which makes the diagonal nonzero.
                for k in 0..n {
                    let v = a[j][k];
                    a[i][k] += v;
                }
                for k in 0..n {
                    let v = a[k][j];
                    a[k][i] += v;
                }
                i
            }
        };
        let d = a[p][p];
        sig += if d > zero { 1 } else { -1 };
        active.retain(|&x| x != p);
        for &i in &active {
            let f = a[i][p] / d;
            if f == zero {
                continue;
            }
            for &k in &active {
                let v = f * a[p][k];
                a[i][k] -= v;
            }
            a[i][p] = zero;
            a[p][i] = zero;
        }
    }
    Ok(sig)
}

/// `σ = sig(G) + n₋ - n₊`, which for an alternating diagram agrees with `rank - n₊`.
pub fn signature(d: &ColoredDiagram) -> Result<i64> {
    let data = &d.white_data;
    let sig = matrix_signature(data.goeritz.rows())? + data.n_minus as i64 - data.n_plus as i64;
    if d.alternating {
        let positives = d.signs.iter().filter(|&&s| s > 0).count() as i64;
        let short = data.goeritz.rank() as i64 - positives;
        if short != sig {
            return internal(format!("signature formulas disagree: {sig} vs {short}"));
        }
    }
    Ok(sig)
}

/// `|det G|`; for alternating diagrams this is checked against the number of
/// spanning trees of the white graph.
pub fn determinant(d: &ColoredDiagram) -> Result<i128> {
    let det = intlat::det(d.goeritz().rows())?.abs();
    if d.alternating {
        let trees = d.white_graph().spanning_tree_count()?;
        if trees != det {
            return internal(format!("determinant {det} differs from spanning tree count {trees}"));
        }
    }
    Ok(det)
}

/// A tangle slope `p/q` where `q = 0` is allowed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TangleSlope {
    pub p: i64,
    pub q: i64,
}

impl TangleSlope {
    pub fn new(p: i64, q: i64) -> Result<TangleSlope> {
        use num_integer::Integer;
        if p == 0 && q == 0 {
            return invalid("tangle slope 0/0");
        }
        let g = p.gcd(&q);
        let (mut p, mut q) = (p / g, q / g);
        if q < 0 || (q == 0 && p < 0) {
            p = -p;
            q = -q;
        }
        Ok(TangleSlope { p, q })
    }
}

impl fmt::Display for TangleSlope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

/// Slope of the tangle whose white graph uses the given edges, with the
/// chain `v_0, ..., v_l` and the second boundary region `outer`. Returns
/// `None` when the edges do not have the chain shape.
pub fn tangle_slope_detect(
    graph: &Multigraph,
    chain: &[usize],
    outer: usize,
    edges: &[usize],
) -> Result<Option<TangleSlope>> {
    let n = graph.vertex_count();
    if chain.is_empty() {
        return invalid("tangle chain needs at least the region v_0");
    }
    let mut pos = vec![usize::MAX; n];
    for (i, &v) in chain.iter().chain(std::iter::once(&outer)).enumerate() {
        if v >= n {
            return invalid(format!("region {v} is not a vertex of the white graph"));
        }
        if pos[v] != usize::MAX {
            return invalid(format!("region {v} listed twice"));
        }
        pos[v] = i;
    }
    let mut seen = vec![false; graph.edge_count()];
    for &e in edges {
        if e >= graph.edge_count() || seen[e] {
            return invalid(format!("edge {e} is out of range or repeated"));
        }
        seen[e] = true;
    }
    let l = chain.len();
    let mut chain_edges = vec![0usize; l];
    let mut degree = vec![0i64; l];
    for &e in edges {
        let (a, b) = graph.edges()[e];
        let (pa, pb) = (pos[a], pos[b]);
        if pa == usize::MAX || pb == usize::MAX || pa == pb {
            return Ok(None);
        }
        let (lo, hi) = (pa.min(pb), pa.max(pb));
        if hi == l {
            degree[lo] += 1;
        } else if hi == lo + 1 {
            chain_edges[lo] += 1;
            degree[lo] += 1;
            degree[hi] += 1;
        } else {
            return Ok(None);
        }
    }
    if chain_edges[..l - 1].iter().any(|&c| c != 1) {
        return Ok(None);
    }
    let (num, den) = neg_cf_eval_projective(&degree)?;
    Ok(Some(TangleSlope::new(den, num)?))
}

/// `p/q` with `q = r + s` and `p = qm + r`.
pub fn montesinos_slope(m: i64, r: i64, s: i64) -> Result<Slope> {
    use num_integer::Integer;
    if m < 0 || r < 0 || s < 0 || (r == 0 && s == 0) {
        return invalid("montesinos slope needs m >= 0 and a nonnegative tangle r/s");
    }
    if r.gcd(&s) != 1 {
        return invalid(format!("tangle slope {r}/{s} is not reduced"));
    }
    let q = r + s;
    Slope::new(q * m + r, q)
}

/// A multigraph with a rotation system; dart `2e` leaves the first endpoint
/// of edge `e` and dart `2e + 1` leaves the second.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlaneGraph {
    pub graph: Multigraph,
    /// Counterclockwise darts at each vertex.
    pub rotation: Vec<Vec<usize>>,
}

impl PlaneGraph {
    pub fn face_count(&self) -> usize {
        let darts = 2 * self.graph.edge_count();
        let mut pos = vec![(0usize, 0usize); darts];
        for (v, rot) in self.rotation.iter().enumerate() {
            for (i, &d) in rot.iter().enumerate() {
                pos[d] = (v, i);
            }
        }
        let mut seen = vec![false; darts];
        let mut faces = 0;
        for start in 0..darts {
            if seen[start] {
                continue;
            }
            faces += 1;
            let mut d = start;
            while !seen[d] {
                seen[d] = true;
                let (v, i) = pos[d ^ 1];
                let rot = &self.rotation[v];
                d = rot[(i + 1) % rot.len()];
            }
        }
        faces.max(1)
    }

    pub fn is_planar_embedding(&self) -> bool {
        let (v, e) = (self.graph.vertex_count() as i64, self.graph.edge_count() as i64);
        self.face_count() as i64 == e - v + 2
    }

    /// Finds a planar rotation system for a connected loopless multigraph.
    /// Parallel edges are kept together; the simple underlying graph is
    /// searched exhaustively.
    pub fn embed(graph: &Multigraph, budget: u64) -> Result<Option<PlaneGraph>> {
        let n = graph.vertex_count();
        if graph.self_loops() > 0 {
            return invalid("cannot embed a graph with self-loops");
        }
        if !graph.is_connected() {
            return invalid("cannot embed a disconnected graph");
        }
        let mut bundles: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for (e, &(a, b)) in graph.edges().iter().enumerate() {
            bundles.entry((a, b)).or_default().push(e);
        }
        let keys: Vec<(usize, usize)> = bundles.keys().copied().collect();
        let mut local: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (k, &(a, b)) in keys.iter().enumerate() {
            local[a].push(2 * k);
            local[b].push(2 * k + 1);
        }
        let mut perms = local.clone();
        let mut steps = 0u64;
        loop {
            steps += 1;
            if steps > budget {
                return Err(Error::Budget(budget));
            }
            let rotation: Vec<Vec<usize>> = perms
                .iter()
                .map(|rot| {
                    rot.iter()
                        .flat_map(|&sd| {
                            let bundle = &bundles[&keys[sd / 2]];
                            let darts: Vec<usize> = if sd % 2 == 0 {
                                bundle.iter().map(|&e| 2 * e).collect()
                            } else {
                                bundle.iter().rev().map(|&e| 2 * e + 1).collect()
                            };
                            darts
                        })
                        .collect()
                })
                .collect();
            let candidate = PlaneGraph { graph: graph.clone(), rotation };
            if candidate.is_planar_embedding() {
                return Ok(Some(candidate));
            }
            // Odometer over permutations that fix the first dart at each vertex.
            let mut v = 0;
            loop {
                if v == n {
                    return Ok(None);
                }
                if perms[v].len() > 2 && next_permutation(&mut perms[v][1..]) {
                    break;
                }
                if perms[v].len() > 2 {
                    perms[v][1..].sort_unstable();
                }
                v += 1;
            }
        }
    }

    /// The alternating diagram whose white graph is this plane graph. With
    /// `mirror` set the over and under strands are exchanged.
    pub fn medial_pd(&self, mirror: bool) -> Result<PDCode> {
        let ne = self.graph.edge_count();
        if ne == 0 {
            return Ok(PDCode { crossings: Vec::new() });
        }
        if self.graph.self_loops() > 0 {
            return invalid("medial diagram of a graph with self-loops");
        }
        // Corners are identified by (vertex, index) between rotation[index] and the next dart.
        let mut corner_id = Vec::new();
        let mut corner_base = Vec::new();
        for rot in &self.rotation {
            corner_base.push(corner_id.len());
            corner_id.extend(0..rot.len());
        }
        const NE: usize = 0;
        const NW: usize = 1;
        const SW: usize = 2;
        const SE: usize = 3;
        let mut slot = vec![[usize::MAX; 4]; ne];
        for (v, rot) in self.rotation.iter().enumerate() {
            let k = rot.len();
            for i in 0..k {
                let c = corner_base[v] + i;
                let (d1, d2) = (rot[i], rot[(i + 1) % k]);
                slot[d1 / 2][if d1 % 2 == 0 { NW } else { SE }] = c;
                slot[d2 / 2][if d2 % 2 == 0 { SW } else { NE }] = c;
            }
        }
        let mut occurrences: Vec<Vec<(usize, usize)>> = vec![Vec::new(); corner_id.len()];
        for (e, s) in slot.iter().enumerate() {
            for (j, &c) in s.iter().enumerate() {
                occurrences[c].push((e, j));
            }
        }
        let over_slots = if mirror { [NW, SE] } else { [NE, SW] };
        let mut label = vec![0i64; corner_id.len()];
        let mut labelled = vec![false; corner_id.len()];
        let mut under_in = vec![usize::MAX; ne];
        let mut next_label = 1i64;
        for e0 in 0..ne {
            for s0 in 0..4 {
                let c0 = slot[e0][s0];
                if labelled[c0] {
                    continue;
                }
                let (mut e, mut s) = (e0, s0);
                loop {
                    let c = slot[e][s];
                    if labelled[c] {
                        break;
                    }
                    labelled[c] = true;
                    label[c] = next_label;
                    next_label += 1;
                    // `c` is the arc through which we now enter crossing (e, s).
                    let enter = occurrences[c].iter().copied().find(|&p| p != (e, s)).unwrap_or((e, s));
                    let (ce, cs) = enter;
                    if !over_slots.contains(&cs) {
                        under_in[ce] = cs;
                    }
                    (e, s) = (ce, (cs + 2) % 4);
                }
            }
        }
        let crossings = (0..ne)
            .map(|e| {
                let s = under_in[e];
                [0, 1, 2, 3].map(|k| label[slot[e][(s + k) % 4]])
            })
            .collect();
        let pd = PDCode { crossings };
        ArcInfo::new(&pd)?;
        Ok(pd)
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// White graph of the 2-bridge diagram with Conway notation `c_1 ... c_k`:
/// odd-numbered terms add parallel edges between the two boundary regions,
/// even-numbered terms add edges in series.
pub fn two_bridge_graph(conway: &[i64]) -> Result<Multigraph> {
    if conway.is_empty() || conway.iter().any(|&c| c < 1) {
        return invalid("conway notation needs positive terms");
    }
    let (mut n, a, b) = (2usize, 0usize, 1usize);
    let mut top = a;
    let mut edges = Vec::new();
    for (i, &c) in conway.iter().enumerate() {
        for _ in 0..c {
            if i % 2 == 0 {
                edges.push((top, b));
            } else {
                edges.push((n, top));
                top = n;
                n += 1;
            }
        }
    }
    if conway.len().is_multiple_of(2) {
        // Identify the final boundary region with `b`.
        let last = top;
        let edges: Vec<(usize, usize)> = edges
            .into_iter()
            .map(|(x, y)| (if x == last { b } else { x }, if y == last { b } else { y }))
            .collect();
        let edges = edges
            .into_iter()
            .map(|(x, y)| (if x > last { x - 1 } else { x }, if y > last { y - 1 } else { y }))
            .collect();
        return Multigraph::new(n - 1, edges);
    }
    Multigraph::new(n, edges)
}

/// Alternating diagram with the given white graph, embedded by search.
pub fn diagram_from_graph(graph: &Multigraph, budget: u64) -> Result<PDCode> {
    let plane = PlaneGraph::embed(graph, budget)?.ok_or_else(|| Error::InvalidInput("graph is not planar".into()))?;
    plane.medial_pd(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    const TREFOIL: &str = "X(1,5,2,4) X(3,1,4,6) X(5,3,6,2)";

    #[test]
    fn parses_trefoil() {
        let pd = parse_pd(TREFOIL).unwrap();
        assert_eq!(pd.crossing_count(), 3);
        assert_eq!(pd.component_count(), 1);
        assert_eq!(pd.signs().unwrap(), vec![1, 1, 1]);
        assert_eq!(pd.to_string(), TREFOIL);
        assert!(parse_pd("X(1,1,1,2)").is_err());
        assert!(parse_pd("X(1,5,2,4) Y").is_err());
        assert!(parse_pd("X(1,4,2,3) X(3,6,4,5) X(5,2,6,1)").and_then(|p| color_and_white_graph(&p)).is_err());
        let empty = parse_pd("").unwrap();
        assert_eq!(empty.component_count(), 1);
    }

    #[test]
    fn trefoil_goeritz_and_invariants() {
        let d = color_and_white_graph(&parse_pd(TREFOIL).unwrap()).unwrap();
        assert_eq!(d.faces.len(), 5);
        assert!(d.alternating);
        assert_eq!(d.goeritz().rows(), &[vec![3]]);
        assert_eq!(d.white_graph().vertex_count(), 2);
        assert_eq!(signature(&d).unwrap(), -2);
        assert_eq!(determinant(&d).unwrap(), 3);
        assert!(d.is_reduced());
        let m = color_and_white_graph(&parse_pd(TREFOIL).unwrap().mirror()).unwrap();
        assert_eq!(signature(&m).unwrap(), 2);
        assert_eq!(determinant(&m).unwrap(), 3);
        assert_eq!(m.white_graph().vertex_count(), 3);
    }

    #[test]
    fn unknot_diagram() {
        let d = color_and_white_graph(&parse_pd("").unwrap()).unwrap();
        assert_eq!(d.goeritz().rank(), 0);
        assert_eq!(signature(&d).unwrap(), 0);
        assert_eq!(determinant(&d).unwrap(), 1);
    }

    #[test]
    fn medial_round_trip() {
        let theta = Multigraph::new(2, vec![(0, 1), (0, 1), (0, 1)]).unwrap();
        let pd = diagram_from_graph(&theta, 1000).unwrap();
        let d = color_and_white_graph(&pd).unwrap();
        assert_eq!(d.white_graph().vertex_count(), 2);
        assert_eq!(signature(&d).unwrap(), -2);
        let g = two_bridge_graph(&[2, 2]).unwrap();
        assert_eq!(g.spanning_tree_count().unwrap(), 5);
        let d = color_and_white_graph(&diagram_from_graph(&g, 1000).unwrap()).unwrap();
        assert_eq!(d.white_graph().vertex_count(), 3);
        assert_eq!(determinant(&d).unwrap(), 5);
        assert_eq!(signature(&d).unwrap(), 0);
    }

    #[test]
    fn tangle_slopes() {
        let g = Multigraph::new(3, vec![(0, 1), (1, 2), (1, 2), (0, 2), (0, 2)]).unwrap();
        assert_eq!(tangle_slope_detect(&g, &[0, 1], 2, &[0, 1, 3]).unwrap(), Some(TangleSlope { p: 2, q: 3 }));
        assert_eq!(tangle_slope_detect(&g, &[0], 2, &[]).unwrap(), Some(TangleSlope { p: 1, q: 0 }));
        assert_eq!(tangle_slope_detect(&g, &[0], 2, &[3]).unwrap(), Some(TangleSlope { p: 1, q: 1 }));
        assert_eq!(tangle_slope_detect(&g, &[1], 0, &[1]).unwrap(), None);
        assert!(tangle_slope_detect(&g, &[0, 0], 2, &[]).is_err());
    }

    #[test]
    fn montesinos_examples() {
        assert_eq!(montesinos_slope(4, 2, 3).unwrap(), Slope::new(22, 5).unwrap());
        assert_eq!(montesinos_slope(0, 1, 1).unwrap(), Slope::new(1, 2).unwrap());
        assert_eq!(montesinos_slope(7, 1, 1).unwrap().denominator(), 2);
        assert!(montesinos_slope(1, 2, 4).is_err());
    }

    #[test]
    fn signature_of_indefinite_forms() {
        assert_eq!(matrix_signature(&[vec![0, 1], vec![1, 0]]).unwrap(), 0);
        assert_eq!(matrix_signature(&[vec![-2, 1], vec![1, -2]]).unwrap(), -2);
        assert_eq!(matrix_signature(&[vec![0, 0], vec![0, 0]]).unwrap(), 0);
    }

    #[test]
    fn two_bridge_determinants() {
        let table: &[(&[i64], i128)] = &[
            (&[3], 3),
            (&[2, 2], 5),
            (&[3, 2], 7),
            (&[4, 2], 9),
            (&[3, 1, 2], 11),
            (&[2, 1, 1, 2], 13),
            (&[4, 3], 13),
            (&[3, 1, 3], 15),
            (&[2, 1, 1, 1, 2], 21),
            (&[4, 1, 1, 2], 23),
            (&[3, 1, 1, 3], 25),
            (&[5], 5),
        ];
        for (conway, det) in table {
            let g = two_bridge_graph(conway).unwrap();
            let pd = diagram_from_graph(&g, 100_000).unwrap();
            assert_eq!(pd.component_count(), 1, "{conway:?}");
            let d = color_and_white_graph(&pd).unwrap();
            assert!(d.alternating && d.is_reduced(), "{conway:?}");
            assert_eq!(determinant(&d).unwrap(), *det, "{conway:?}");
            let m = color_and_white_graph(&pd.mirror()).unwrap();
            assert_eq!(signature(&m).unwrap(), -signature(&d).unwrap());
        }
    }
}
