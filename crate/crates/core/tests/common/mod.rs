#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};

use anyhow::{anyhow, ensure, Result};
use changemaker::graphlat::Multigraph;
use changemaker::knotdiag::{self, PDCode};

pub const BUDGET: u64 = changemaker::intlat::DEFAULT_BUDGET;

pub const TREFOIL: &str = "X(1,5,2,4) X(3,1,4,6) X(5,3,6,2)";

/// `σ_1 σ_2^{-2} σ_1^2 σ_2^{-3}` on three strands.
pub const BRAID_8_10: [i32; 8] = [1, -2, -2, 1, 1, -2, -2, -2];

/// White graph of a diagram of 9_22 whose Goeritz lattice is the 43/2-changemaker
/// lattice with stable coefficients (2, 4).
pub const GRAPH_9_22: [(usize, usize, usize); 5] = [(0, 2, 1), (0, 3, 2), (1, 2, 3), (1, 3, 2), (2, 3, 1)];

/// White graph of a diagram of 11a15 whose Goeritz lattice is the 107/5-changemaker
/// lattice with stable coefficients (2, 4).
pub const GRAPH_11A15: [(usize, usize, usize); 7] = [
    (0, 3, 1),
    (0, 4, 1),
    (1, 2, 2),
    (1, 4, 3),
    (2, 3, 2),
    (2, 4, 1),
    (3, 4, 1),
];

pub fn multigraph(n: usize, weighted: &[(usize, usize, usize)]) -> Multigraph {
    let mut edges = Vec::new();
    for &(a, b, m) in weighted {
        edges.extend(std::iter::repeat_n((a, b), m));
    }
    Multigraph::new(n, edges).unwrap()
}

pub fn trefoil() -> PDCode {
    knotdiag::parse_pd(TREFOIL).unwrap()
}

/// Closure of a braid drawn top to bottom, `σ_i` crossing the strands in
/// positions `i - 1` and `i` with the left strand over.
pub fn braid_closure(word: &[i32], strands: usize) -> Result<PDCode> {
    let mut next_edge = strands;
    let mut current: Vec<usize> = (0..strands).collect();
    // (incoming under, outgoing under, incoming over, outgoing over) per crossing,
    // each listed in counterclockwise order starting at the incoming under edge.
    let mut raw: Vec<[usize; 4]> = Vec::new();
    let mut succ: HashMap<usize, usize> = HashMap::new();
    for &g in word {
        let i = g.unsigned_abs() as usize;
        ensure!(i >= 1 && i < strands, "generator {g} out of range");
        let (l_in, r_in) = (current[i - 1], current[i]);
        let (l_out, r_out) = (next_edge, next_edge + 1);
        next_edge += 2;
        succ.insert(l_in, r_out);
        succ.insert(r_in, l_out);
        raw.push(if g > 0 { [r_in, l_in, l_out, r_out] } else { [l_in, l_out, r_out, r_in] });
        current[i - 1] = l_out;
        current[i] = r_out;
    }
    let closing: HashMap<usize, usize> = current.iter().enumerate().map(|(pos, &e)| (e, pos)).collect();
    let canon = |e: usize| closing.get(&e).copied().unwrap_or(e);
    let mut label: HashMap<usize, i64> = HashMap::new();
    let mut e = 0usize;
    let mut k = 1i64;
    loop {
        let c = canon(e);
        if label.contains_key(&c) {
            break;
        }
        label.insert(c, k);
        k += 1;
        e = *succ.get(&c).ok_or_else(|| anyhow!("edge {c} has no successor"))?;
    }
    ensure!(label.len() == 2 * word.len(), "braid closure has more than one component");
    let crossings = raw.iter().map(|q| q.map(|x| label[&canon(x)])).collect();
    Ok(PDCode { crossings })
}

type Laurent = BTreeMap<i32, i64>;

fn lmul(a: &Laurent, b: &Laurent) -> Laurent {
    let mut out = Laurent::new();
    for (i, x) in a {
        for (j, y) in b {
            *out.entry(i + j).or_default() += x * y;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

fn ladd(a: &Laurent, b: &Laurent, sign: i64) -> Laurent {
    let mut out = a.clone();
    for (i, y) in b {
        *out.entry(*i).or_default() += sign * y;
    }
    out.retain(|_, c| *c != 0);
    out
}

fn mono(c: i64, e: i32) -> Laurent {
    let mut m = Laurent::new();
    if c != 0 {
        m.insert(e, c);
    }
    m
}

type M2 = [[Laurent; 2]; 2];

fn mmul(a: &M2, b: &M2) -> M2 {
    let entry = |i: usize, j: usize| ladd(&lmul(&a[i][0], &b[0][j]), &lmul(&a[i][1], &b[1][j]), 1);
    [[entry(0, 0), entry(0, 1)], [entry(1, 0), entry(1, 1)]]
}

/// Alexander polynomial of a 3-braid closure from the reduced Burau
/// representation, normalised to start at `t^0` with a positive constant term.
pub fn burau_alexander_3(word: &[i32]) -> Vec<i64> {
    let s1 = [[mono(-1, 1), mono(1, 0)], [mono(0, 0), mono(1, 0)]];
    let s1i = [[mono(-1, -1), mono(1, -1)], [mono(0, 0), mono(1, 0)]];
    let s2 = [[mono(1, 0), mono(0, 0)], [mono(1, 1), mono(-1, 1)]];
    let s2i = [[mono(1, 0), mono(0, 0)], [mono(1, 0), mono(-1, -1)]];
    let mut m: M2 = [[mono(1, 0), mono(0, 0)], [mono(0, 0), mono(1, 0)]];
    for &g in word {
        let x = match g {
            1 => &s1,
            -1 => &s1i,
            2 => &s2,
            -2 => &s2i,
            _ => panic!("3-braid generator expected"),
        };
        m = mmul(&m, x);
    }
    let one = mono(1, 0);
    let a = ladd(&one, &m[0][0], -1);
    let d = ladd(&one, &m[1][1], -1);
    let det = ladd(&lmul(&a, &d), &lmul(&m[0][1], &m[1][0]), -1);
    let lo = *det.keys().next().unwrap();
    let hi = *det.keys().last().unwrap();
    let mut num: Vec<i64> = (lo..=hi).map(|e| det.get(&e).copied().unwrap_or(0)).collect();
    // Exact division by 1 + t + t^2.
    let mut quot = vec![0i64; num.len() - 2];
    for i in (0..quot.len()).rev() {
        let c = num[i + 2];
        quot[i] = c;
        num[i] -= c;
        num[i + 1] -= c;
        num[i + 2] -= c;
    }
    assert!(num.iter().all(|&c| c == 0), "not divisible by 1 + t + t^2");
    if quot[0] < 0 {
        quot.iter_mut().for_each(|c| *c = -*c);
    }
    quot
}

/// Numerator of `[c_1; c_2, ..., c_k]`.
pub fn continued_fraction_numerator(c: &[i64]) -> i64 {
    let (mut p, mut p_prev) = (1i64, 0i64);
    for &a in c.iter().rev() {
        let next = a * p + p_prev;
        p_prev = p;
        p = next;
    }
    p
}

/// Named 2-bridge diagrams by Conway notation.
pub const TWO_BRIDGE: [(&str, &[i64]); 14] = [
    ("4_1", &[2, 2]),
    ("5_2", &[3, 2]),
    ("6_1", &[4, 2]),
    ("6_2", &[3, 1, 2]),
    ("6_3", &[2, 1, 1, 2]),
    ("7_2", &[5, 2]),
    ("7_3", &[4, 3]),
    ("7_4", &[3, 1, 3]),
    ("7_5", &[3, 2, 2]),
    ("7_6", &[2, 2, 1, 2]),
    ("7_7", &[2, 1, 1, 1, 2]),
    ("8_1", &[6, 2]),
    ("8_2", &[5, 1, 2]),
    ("9_2", &[7, 2]),
];

pub struct CorpusEntry {
    pub name: String,
    pub pd: PDCode,
    /// Determinant from an independent source, when known.
    pub expected_det: Option<i64>,
}

/// Twenty alternating diagrams: T(2, n) for n = 2..=6, fourteen 2-bridge
/// table knots and 8_10.
pub fn corpus() -> Result<Vec<CorpusEntry>> {
    let mut out = Vec::new();
    for n in 2..=6 {
        let g = knotdiag::two_bridge_graph(&[n])?;
        out.push(CorpusEntry {
            name: format!("T(2,{n})"),
            pd: knotdiag::diagram_from_graph(&g, BUDGET)?,
            expected_det: Some(n),
        });
    }
    for (name, conway) in TWO_BRIDGE {
        let g = knotdiag::two_bridge_graph(conway)?;
        out.push(CorpusEntry {
            name: name.to_string(),
            pd: knotdiag::diagram_from_graph(&g, BUDGET)?,
            expected_det: Some(continued_fraction_numerator(conway)),
        });
    }
    out.push(CorpusEntry { name: "8_10".into(), pd: braid_closure(&BRAID_8_10, 3)?, expected_det: Some(27) });
    Ok(out)
}

/// Clasp graphs with random twist insertions whose lattices are recognized
/// as half-integer changemaker lattices. A clasp graph is a path from `v` to
/// `w` with two extra `v`-`w` edges; an insertion either doubles an edge or
/// subdivides it.
pub fn clasp_family(count: usize, seed: u64, max_rank: usize) -> Result<Vec<changemaker::recognizer::EmbeddingCertificate>> {
    use rand::{Rng, SeedableRng};
    use std::collections::BTreeSet;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut seen: BTreeSet<(usize, Vec<(usize, usize)>)> = BTreeSet::new();
    let mut out = Vec::new();
    for _ in 0..200_000 {
        if out.len() == count {
            return Ok(out);
        }
        let len = rng.gen_range(1..=3usize);
        let mut n = len + 1;
        let mut edges: Vec<(usize, usize)> = (0..len).map(|i| (i, i + 1)).collect();
        edges.push((0, len));
        edges.push((0, len));
        for _ in 0..rng.gen_range(0..=6) {
            let e = rng.gen_range(0..edges.len());
            let (a, b) = edges[e];
            if rng.gen_bool(0.5) {
                edges.push((a, b));
            } else {
                edges[e] = (a, n);
                edges.push((n, b));
                n += 1;
            }
        }
        if n - 1 > max_rank {
            continue;
        }
        let mut key: Vec<(usize, usize)> = edges.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
        key.sort_unstable();
        if !seen.insert((n, key)) {
            continue;
        }
        let g = Multigraph::new(n, edges)?;
        if !g.is_two_connected() {
            continue;
        }
        let det = g.spanning_tree_count()?;
        if det % 2 == 0 {
            continue;
        }
        let slope = changemaker::ratcf::Slope::new(det as i64, 2)?;
        if let Some(cert) = changemaker::recognizer::recognize_graph(&g, slope, BUDGET)? {
            out.push(cert);
        }
    }
    Err(anyhow!("only {} recognized clasp graphs found", out.len()))
}
