mod common;

use proptest::prelude::*;

use changemaker::cmlat::{self, cm_build, ChangemakerCoeffs};
use changemaker::graphlat::{self, Multigraph};
use changemaker::intlat::{self, GramLattice};
use changemaker::knotdiag;
use changemaker::ratcf::{self, NegCF, Slope};
use changemaker::recognizer::{self, SlopeClass};
use changemaker::surgery::{self, AlexPoly, VSeq};
use common::*;

fn coprime_slope(max_p: i64) -> impl Strategy<Value = Slope> {
    (2..max_p)
        .prop_flat_map(|p| (Just(p), 1..p))
        .prop_filter("coprime", |(p, q)| num_integer::gcd(*p, *q) == 1)
        .prop_map(|(p, q)| Slope::new(p, q).unwrap())
}

fn stable_tuple(max_len: usize, max_entry: i64) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(2..=max_entry, 0..=max_len).prop_map(|mut v| {
        v.sort_unstable();
        v
    })
}

/// Fewest leading ones that make `1, ..., 1, stable` a changemaker tuple.
fn min_ones(stable: &[i64]) -> i64 {
    let mut need = 1i64;
    let mut partial = 0i64;
    for &r in stable {
        need = need.max(r - 1 - partial);
        partial += r;
    }
    need
}

/// Length of the canonical expansion by repeated `x -> 1/(⌈x⌉ - x)`.
fn cf_length(p: i64, q: i64) -> usize {
    let (mut p, mut q) = (p, q);
    let mut len = 0;
    loop {
        len += 1;
        let a = (p + q - 1) / q;
        let rem = a * q - p;
        if rem == 0 {
            return len;
        }
        (p, q) = (q, rem);
    }
}

fn unimodular(n: usize, ops: &[(usize, usize, i64)]) -> Vec<Vec<i64>> {
    let mut t = intlat::identity(n);
    for &(i, j, c) in ops {
        let (i, j) = (i % n, j % n);
        if i == j {
            continue;
        }
        for k in 0..n {
            t[i][k] += c * t[j][k];
        }
    }
    t
}

fn random_multigraph() -> impl Strategy<Value = Multigraph> {
    (3usize..=6)
        .prop_flat_map(|n| {
            let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
            (Just(n), prop::collection::vec(0usize..=2, pairs.len()), Just(pairs))
        })
        .prop_map(|(n, mult, pairs)| {
            let mut edges = Vec::new();
            for (p, m) in pairs.iter().zip(mult) {
                edges.extend(std::iter::repeat_n(*p, m));
            }
            // A Hamiltonian path keeps the graph connected.
            edges.extend((0..n - 1).map(|i| (i, i + 1)));
            Multigraph::new(n, edges).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn negcf_round_trip(s in coprime_slope(5000)) {
        let cf = ratcf::neg_cf_expand(s).unwrap();
        prop_assert!(cf.is_canonical());
        prop_assert_eq!(ratcf::neg_cf_eval(&cf).unwrap(), s);
        prop_assert_eq!(cf.len(), cf_length(s.numerator(), s.denominator()));
    }

    #[test]
    fn negcf_trailing_one_identity(s in coprime_slope(2000)) {
        let cf = ratcf::neg_cf_expand(s).unwrap();
        let mut longer = cf.coeffs.clone();
        *longer.last_mut().unwrap() += 1;
        longer.push(1);
        let (p, q) = ratcf::neg_cf_eval_projective(&longer).unwrap();
        prop_assert_eq!(Slope::new(p, q).unwrap(), s);
        let longer = NegCF { coeffs: longer };
        prop_assert!(!longer.is_canonical());
    }

    #[test]
    fn isometry_of_transformed_lattice(
        stable in stable_tuple(2, 4),
        extra in 1i64..4,
        ops in prop::collection::vec((0usize..8, 0usize..8, -1i64..=1), 0..12),
    ) {
        let slope = Slope::new(stable.iter().map(|r| r * r).sum::<i64>() + min_ones(&stable) + extra, 1).unwrap();
        let lat = cm_build(slope, &stable).unwrap();
        let t = unimodular(lat.rank(), &ops);
        let moved = lat.gram.transform(&t);
        let iso = intlat::find_isometry(&moved, &lat.gram, BUDGET).unwrap();
        prop_assert!(iso.is_some());
        let iso = iso.unwrap();
        prop_assert!(iso.verify(&moved, &lat.gram));
        prop_assert_eq!(intlat::discriminant(&moved).unwrap(), intlat::discriminant(&lat.gram).unwrap());
        let norms = |g: &GramLattice| {
            let mut v: Vec<i64> = intlat::vectors_of_norm_at_most(g, 4, BUDGET).unwrap().iter().map(|x| g.norm(x)).collect();
            v.sort_unstable();
            v
        };
        prop_assert_eq!(norms(&moved), norms(&lat.gram));
    }

    #[test]
    fn orthogonal_complement_is_orthogonal(rows in prop::collection::vec(prop::collection::vec(-3i64..=3, 5), 1..=3)) {
        let Ok(comp) = intlat::orthogonal_complement(&rows, 5) else { return Ok(()); };
        for c in &comp {
            for r in &rows {
                prop_assert_eq!(intlat::dot(c, r), 0);
            }
        }
        if !comp.is_empty() {
            prop_assert!(intlat::is_positive_definite(&GramLattice::from_vectors(&comp)));
        }
    }

    #[test]
    fn changemaker_lattices_have_no_units_and_discriminant_p(
        stable in stable_tuple(2, 4),
        ones in 1i64..4,
        q in 1i64..6,
        r_seed in 0i64..100,
    ) {
        let n = stable.iter().map(|r| r * r).sum::<i64>() + min_ones(&stable) + ones - 1 + i64::from(q > 1);
        let r = if q > 1 { 1 + r_seed % (q - 1) } else { 0 };
        prop_assume!(num_integer::gcd(r, q) == 1 || q == 1);
        let slope = Slope::new(n * q - r, q).unwrap();
        let lat = cm_build(slope, &stable).unwrap();
        prop_assert_eq!(intlat::discriminant(&lat.gram).unwrap(), slope.numerator() as i128);
        let units = intlat::vectors_of_norm_at_most(&lat.gram, 1, BUDGET).unwrap();
        prop_assert!(units.iter().all(|v| v.iter().all(|&c| c == 0)));
        prop_assert_eq!(2 * cmlat::genus(&stable), stable.iter().map(|r| r * (r - 1)).sum::<i64>());
        for b in &lat.basis {
            for w in &lat.w {
                prop_assert_eq!(intlat::dot(b, w), 0);
            }
        }
        prop_assert_eq!(cmlat::mu_norm_value_for(slope).ok(), cmlat::mu_norm_value(&lat).ok());
    }

    #[test]
    fn small_changemaker_lattices_are_indecomposable_with_irreducible_basis(
        stable in stable_tuple(1, 3),
        ones in 1i64..3,
        q in 2i64..5,
    ) {
        let n = stable.iter().map(|r| r * r).sum::<i64>() + min_ones(&stable) + ones;
        let slope = Slope::new(n * q - 1, q).unwrap();
        let lat = cm_build(slope, &stable).unwrap();
        prop_assume!(lat.rank() <= 6);
        prop_assert!(intlat::is_indecomposable(&lat.gram, BUDGET).unwrap());
        for i in 0..lat.rank() {
            let mut x = vec![0i64; lat.rank()];
            x[i] = 1;
            prop_assert!(intlat::is_irreducible(&lat.gram, &x, BUDGET).unwrap(), "basis vector {} of {:?}", i, lat.coeffs.sigma);
        }
    }

    #[test]
    fn vertex_sums_satisfy_the_bound(g in random_multigraph(), region_mask in 1u32..63, z in prop::collection::vec(-2i64..=2, 6)) {
        let n = g.vertex_count();
        let mut x = vec![0i64; n];
        for (v, xv) in x.iter_mut().enumerate() {
            if region_mask >> v & 1 == 1 {
                *xv = 1;
            }
        }
        let z = &z[..n];
        let diff: Vec<i64> = x.iter().zip(z).map(|(a, b)| a - b).collect();
        let _ = z;
        // (x - z)·z <= 0 only constrains z with 0 <= z <= 1 on R and z = 0 off R.
        let admissible = (0..n).all(|v| if x[v] == 1 { (0..=1).contains(&z[v]) } else { z[v] == 0 });
        if admissible {
            prop_assert!(g.pair(&diff, z) <= 0);
        }
    }

    #[test]
    fn split_vertex_regions(g in random_multigraph(), v in 0usize..6) {
        let v = v % g.vertex_count();
        if let Some(split) = g.split_vertex(v).unwrap() {
            let n = g.vertex_count();
            let between: usize = split.r.iter().map(|&a| split.s.iter().map(|&b| g.multiplicity(a, b)).sum::<usize>()).sum();
            prop_assert_eq!(between, 1);
            let indicator = |set: &[usize], with_v: bool| {
                let mut x = vec![0i64; n];
                for &u in set {
                    x[u] = 1;
                }
                if with_v {
                    x[v] = 1;
                }
                x
            };
            let (r, s) = (indicator(&split.r, false), indicator(&split.s, false));
            prop_assert!(g.induces_connected(&r.iter().map(|&c| c == 1).collect::<Vec<_>>()));
            prop_assert!(g.induces_connected(&s.iter().map(|&c| c == 1).collect::<Vec<_>>()));
            prop_assert!(split.r.contains(&split.u1) && split.s.contains(&split.u2));
            let x = indicator(&split.r, true);
            let y = indicator(&split.s, true);
            prop_assert_eq!(g.pair(&x, &y), -1);
            let sum: Vec<i64> = x.iter().zip(&y).map(|(a, b)| a + b).collect();
            prop_assert_eq!(graphlat::normalize_element(&sum), indicator(&[], true));
        }
    }

    #[test]
    fn recovery_round_trip(rho in stable_tuple(5, 6)) {
        let v = surgery::v_sequence(&rho).unwrap();
        prop_assert!(VSeq::new(v.values().to_vec()).is_ok());
        prop_assert_eq!(surgery::recover_stable(&v).unwrap(), rho);
    }

    #[test]
    fn changemaker_structure_is_unique(rho in stable_tuple(2, 4), extra in 0i64..3, q in 1i64..4) {
        let top = rho.last().copied().unwrap_or(0);
        let n = 2 + 2 * top + rho.iter().map(|r| r * r).sum::<i64>() + extra;
        let slope = if q == 1 { Slope::new(n, 1).unwrap() } else { Slope::new(n * q - 1, q).unwrap() };
        let lat = cm_build(slope, &rho).unwrap();
        prop_assume!(lat.rank() <= 9);
        let class = if slope.is_half_integer() { SlopeClass::HalfInteger } else { SlopeClass::Slope(slope) };
        let mut matched = 0;
        for cand in recognizer::candidate_cm_lattices(slope.numerator(), class, BUDGET).unwrap() {
            if cand.rank() == lat.rank() && intlat::find_isometry(&cand.gram, &lat.gram, BUDGET).unwrap().is_some() {
                prop_assert_eq!(cand.coeffs.stable(), rho.clone());
                matched += 1;
            }
        }
        prop_assert!(matched >= 1);
    }
}

#[test]
fn diagram_invariants_over_the_corpus() {
    for entry in corpus().unwrap() {
        let d = knotdiag::color_and_white_graph(&entry.pd).unwrap();
        let m = knotdiag::color_and_white_graph(&entry.pd.mirror()).unwrap();
        assert_eq!(knotdiag::signature(&m).unwrap(), -knotdiag::signature(&d).unwrap(), "{}", entry.name);
        assert_eq!(knotdiag::determinant(&m).unwrap(), knotdiag::determinant(&d).unwrap(), "{}", entry.name);
        let w = d.white_graph();
        assert!(w.is_connected() && w.self_loops() == 0 && !w.has_cut_edge(), "{}", entry.name);
        assert!(intlat::is_positive_definite(d.goeritz()), "{}", entry.name);
        let b = d.black_data.white_graph.clone();
        assert_eq!(d.is_reduced(), b.self_loops() == 0 && !b.has_cut_edge() && w.self_loops() == 0 && !w.has_cut_edge());
    }
}

#[test]
fn nugatory_crossing_is_not_reduced() {
    // Trefoil white graph with a pendant edge.
    let pd = knotdiag::diagram_from_graph(&multigraph(3, &[(0, 1, 3), (1, 2, 1)]), BUDGET).unwrap();
    assert_eq!(pd.crossing_count(), 4);
    let d = knotdiag::color_and_white_graph(&pd).unwrap();
    assert!(!d.is_reduced());
}

#[test]
fn torsion_matches_v_for_lspace_knots() {
    for (r, s) in [(3, 2), (5, 2), (4, 3), (5, 3), (7, 2), (5, 4), (7, 3)] {
        let t = surgery::torus_tools(r, s).unwrap();
        assert!(t.alexander.is_lspace_shaped());
        let v = VSeq::from_alexander(&t.alexander).unwrap();
        let tors = surgery::torsion_coeffs(&t.alexander);
        for (i, &ti) in tors.iter().enumerate() {
            assert_eq!(v.get(i as i64), ti, "T({r},{s}) index {i}");
        }
        assert_eq!(surgery::alexander_from_torsion(&tors).unwrap(), t.alexander);
    }
    assert!(!AlexPoly::new(vec![3, -1]).unwrap().is_lspace_shaped());
}

#[test]
fn spinc_conjugation_and_correction_sum() {
    let knots: Vec<VSeq> = [(3, 2), (5, 2), (4, 3)]
        .iter()
        .map(|&(r, s)| VSeq::from_alexander(&surgery::torus_tools(r, s).unwrap().alexander).unwrap())
        .chain([VSeq::zero()])
        .collect();
    for p in 2..=30i64 {
        for q in 1..p {
            if num_integer::gcd(p, q) != 1 {
                continue;
            }
            let slope = Slope::new(p, q).unwrap();
            let cf = ratcf::neg_cf_expand(slope).unwrap();
            let lens = surgery::lens_d_invariants(slope).unwrap();
            for rep in surgery::enumerate_c(&cf) {
                let a = surgery::spinc_label(&cf, &rep, p);
                let b = surgery::spinc_label(&cf, &rep.negated(), p);
                assert_eq!(lens[a as usize].d, lens[b as usize].d, "{slope} {:?}", rep.c);
            }
            for v in &knots {
                let reps = surgery::enumerate_c(&cf);
                let total: i64 = reps.iter().map(|c| surgery::eval_correction(&cf, c, v).unwrap()).sum();
                assert_eq!(total, surgery::correction_sum(slope, v).unwrap(), "{slope}");
                let d = surgery::surgery_d_invariants(slope, v).unwrap();
                let diff: num_rational::Ratio<i64> = lens.iter().zip(&d).map(|(l, k)| l.d - k).sum();
                assert_eq!(diff, num_rational::Ratio::from_integer(total), "{slope}");
            }
        }
    }
}

#[test]
fn certificates_respect_the_goeritz_form_and_moves() {
    let mut certs = Vec::new();
    for entry in corpus().unwrap() {
        if entry.pd.component_count() != 1 {
            continue;
        }
        let d = knotdiag::color_and_white_graph(&entry.pd).unwrap();
        let det = knotdiag::determinant(&d).unwrap() as i64;
        for diag in [d.clone(), knotdiag::color_and_white_graph(&entry.pd.mirror()).unwrap()] {
            if let Some(c) = recognizer::recognize(diag.goeritz(), Slope::new(det, 2).unwrap(), BUDGET).unwrap() {
                assert_eq!(&c.goeritz(), diag.goeritz(), "{}", entry.name);
                certs.push(c);
            }
        }
    }
    certs.extend(clasp_family(30, 17, 8).unwrap());
    for cert in &certs {
        let (trace, states) = recognizer::reduce_to_clasp_states(cert).unwrap();
        assert!(trace.ranks.len() <= cert.rank() + 1);
        for s in &states {
            s.validate().unwrap();
            for x in &s.vertex_coords {
                for w in &s.lattice.w {
                    assert_eq!(intlat::dot(x, w), 0);
                }
            }
            let e0 = s.lattice.e(0);
            let mut pairings: Vec<i64> = s.vertex_coords.iter().map(|x| x[e0]).filter(|&c| c != 0).collect();
            pairings.sort_unstable();
            assert_eq!(pairings, vec![-1, 1]);
        }
        let last = states.last().unwrap();
        let path = recognizer::clasp_path(last).unwrap().expect("final state is a clasp");
        assert_eq!(path.len(), last.vertex_count());
    }
}

#[test]
fn coefficient_checks() {
    assert!(ChangemakerCoeffs::new(vec![1, 2, 4]).is_ok());
    assert!(ChangemakerCoeffs::new(vec![1, 3]).is_err());
}
