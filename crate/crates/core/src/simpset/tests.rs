use super::*;
use proptest::prelude::*;

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Brute-force count of order-preserving maps `[n] -> [m]`: scan every
/// function and keep the monotone ones.
fn count_monotone_maps(n: usize, m: usize) -> usize {
    let total = (m + 1).pow(n as u32 + 1);
    (0..total)
        .filter(|&code| {
            let mut c = code;
            let vals: Vec<usize> = (0..=n)
                .map(|_| {
                    let v = c % (m + 1);
                    c /= m + 1;
                    v
                })
                .collect();
            vals.windows(2).all(|w| w[0] <= w[1])
        })
        .count()
}

/// Rank over Z/p by plain Gaussian elimination.
fn rank_mod_p(a: &[Vec<i128>], p: i128) -> usize {
    let mut m: Vec<Vec<i128>> = a.iter().map(|r| r.iter().map(|v| v.rem_euclid(p)).collect()).collect();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..m.len()).find(|&r| m[r][c] != 0) else { continue };
        m.swap(rank, piv);
        let inv = (1..p).find(|x| (x * m[rank][c]) % p == 1).unwrap();
        for v in m[rank].iter_mut() {
            *v = (*v * inv) % p;
        }
        for r in 0..m.len() {
            if r != rank && m[r][c] != 0 {
                let f = m[r][c];
                for k in 0..cols {
                    m[r][k] = (m[r][k] - f * m[rank][k]).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Betti numbers from ranks over a large prime (no torsion of that order in
/// the small complexes used here).
fn betti_oracle(set: &TruncatedSimplicialSet, up_to: usize) -> Vec<usize> {
    let p = 1_000_003;
    (0..=up_to)
        .map(|n| {
            let r_out = if n == 0 { 0 } else { rank_mod_p(&set.boundary_matrix(n), p) };
            let r_in = rank_mod_p(&set.boundary_matrix(n + 1), p);
            set.num_cells(n) - r_out - r_in
        })
        .collect()
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn det(m: &[Vec<i128>]) -> i128 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        n => (0..n)
            .map(|c| {
                let minor: Vec<Vec<i128>> =
                    m[1..].iter().map(|r| r.iter().enumerate().filter(|&(j, _)| j != c).map(|(_, v)| *v).collect()).collect();
                let sign = if c % 2 == 0 { 1 } else { -1 };
                sign * m[0][c] * det(&minor)
            })
            .sum(),
    }
}

/// gcd of all k-by-k minors (the k-th determinantal divisor).
fn determinantal_divisor(a: &[Vec<i128>], k: usize) -> i128 {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut g = 0;
    for rs in (0..rows).combinations(k) {
        for cs in (0..cols).combinations(k) {
            let minor: Vec<Vec<i128>> = rs.iter().map(|&r| cs.iter().map(|&c| a[r][c]).collect()).collect();
            g = gcd(g, det(&minor));
        }
    }
    g
}

/// One vertex, one loop `a`, one triangle with faces `(a, s_0 v, a)`:
/// a pseudo-projective plane with `H_1 = Z/2`.
fn projective_plane() -> TruncatedSimplicialSet {
    let mut b = SimplicialSetBuilder::new(3);
    let v = b.add_cell(0, "v", vec![]).unwrap();
    let v_ref = SimplexRef::nondegenerate(v);
    let a = b.add_cell(1, "a", vec![v_ref.clone(), v_ref]).unwrap();
    let a_ref = SimplexRef::nondegenerate(a);
    let sv = SimplexRef::new(v, vec![0]).unwrap();
    b.add_cell(2, "t", vec![a_ref.clone(), sv, a_ref]).unwrap();
    b.build()
}

#[test]
fn standard_simplex_small_cases() {
    let pt = TruncatedSimplicialSet::standard_simplex(0);
    assert_eq!(pt.num_cells(0), 1);
    assert!(pt.top_dimension() == Some(0));
    let tri = TruncatedSimplicialSet::standard_simplex(2);
    assert_eq!((tri.num_cells(0), tri.num_cells(1), tri.num_cells(2)), (3, 3, 1));
}

#[test]
fn standard_simplex_cell_counts_match_subsets() {
    for n in 0..=5 {
        let s = TruncatedSimplicialSet::standard_simplex(n);
        for m in 0..=n {
            // subsets of {0..n} of size m+1, by bitmask scan
            let oracle = (0u32..1 << (n + 1)).filter(|mask| mask.count_ones() as usize == m + 1).count();
            assert_eq!(s.num_cells(m), oracle);
            assert_eq!(s.num_cells(m), binomial(n + 1, m + 1));
        }
    }
}

#[test]
fn boundary_and_horn_shapes() {
    let b1 = TruncatedSimplicialSet::boundary(1);
    assert_eq!((b1.num_cells(0), b1.num_cells(1)), (2, 0));
    let b2 = TruncatedSimplicialSet::boundary(2);
    assert_eq!((b2.num_cells(0), b2.num_cells(1), b2.num_cells(2)), (3, 3, 0));
    assert!(TruncatedSimplicialSet::boundary(0).is_empty());

    let h20 = TruncatedSimplicialSet::horn(2, 0).unwrap();
    let edges: Vec<&str> = h20.cells(1).iter().map(|c| c.name.as_str()).collect();
    assert_eq!(edges, vec!["0-1", "0-2"]);
    let h21 = TruncatedSimplicialSet::horn(2, 1).unwrap();
    let edges: Vec<&str> = h21.cells(1).iter().map(|c| c.name.as_str()).collect();
    assert_eq!(edges, vec!["0-1", "1-2"]);
    let h10 = TruncatedSimplicialSet::horn(1, 0).unwrap();
    assert_eq!((h10.num_cells(0), h10.num_cells(1)), (1, 0));
    assert!(TruncatedSimplicialSet::horn(2, 3).is_err());
    assert!(TruncatedSimplicialSet::horn(0, 0).is_err());
}

#[test]
fn n_simplices_counts() {
    let pt = TruncatedSimplicialSet::standard_simplex(0).with_dim_cap(2);
    assert_eq!(pt.n_simplices(2).unwrap().len(), 1);
    let edge = TruncatedSimplicialSet::standard_simplex(1);
    assert_eq!(edge.n_simplices(1).unwrap().len(), 3);
    // 2-simplices of the hollow triangle: non-surjective monotone [2] -> [2]
    let b2 = TruncatedSimplicialSet::boundary(2);
    let twos = b2.n_simplices(2).unwrap();
    let oracle = count_monotone_maps(2, 2) - 1;
    assert_eq!(twos.len(), oracle);
    assert_eq!(oracle, 9);
    assert!(twos.iter().all(|s| s.is_degenerate()));
    assert!(b2.n_simplices(3).is_err());
}

#[test]
fn n_simplices_of_simplex_are_monotone_maps() {
    for m in 0..=3 {
        let s = TruncatedSimplicialSet::standard_simplex(m).with_dim_cap(4);
        for n in 0..=4 {
            assert_eq!(s.n_simplices(n).unwrap().len(), count_monotone_maps(n, m), "n={n} m={m}");
        }
    }
}

#[test]
fn faces_of_degenerate_simplices() {
    let s = TruncatedSimplicialSet::standard_simplex(1);
    let e = SimplexRef::nondegenerate(CellId::new(1, 0));
    let s0e = s.degeneracy(&e, 0);
    assert_eq!(s0e.word, vec![0]);
    assert_eq!(s.face(&s0e, 0), e);
    assert_eq!(s.face(&s0e, 1), e);
    let d2 = s.face(&s0e, 2);
    assert_eq!(d2.word, vec![0]);
    assert_eq!(d2.base, CellId::new(0, 0));
}

#[test]
fn identities_hold_for_constructors() {
    for n in 0..=4 {
        assert!(TruncatedSimplicialSet::standard_simplex(n).verify_identities().is_empty());
        assert!(TruncatedSimplicialSet::boundary(n).verify_identities().is_empty());
        for k in 0..=n {
            if n >= 1 {
                assert!(TruncatedSimplicialSet::horn(n, k).unwrap().verify_identities().is_empty());
            }
        }
    }
    assert!(projective_plane().verify_identities().is_empty());
}

#[test]
fn broken_triangle_is_reported() {
    let mut b = SimplicialSetBuilder::new(2);
    let names = ["a", "b", "c", "d", "e", "f"];
    let vs: Vec<CellId> = names.iter().map(|n| b.add_cell(0, *n, vec![]).unwrap()).collect();
    let r = |i: usize| SimplexRef::nondegenerate(vs[i]);
    let e0 = b.add_cell(1, "e0", vec![r(1), r(0)]).unwrap();
    let e1 = b.add_cell(1, "e1", vec![r(3), r(2)]).unwrap();
    let e2 = b.add_cell(1, "e2", vec![r(5), r(4)]).unwrap();
    b.add_cell(
        2,
        "t",
        vec![SimplexRef::nondegenerate(e0), SimplexRef::nondegenerate(e1), SimplexRef::nondegenerate(e2)],
    )
    .unwrap();
    let report = b.build().verify_identities();
    assert!(!report.is_empty());
    assert!(report.violations.iter().any(|v| v.name == "t" && v.i == 0 && v.j == 1));
}

#[test]
fn pi0_examples() {
    let two = TruncatedSimplicialSet::standard_simplex(0).with_dim_cap(1);
    let two = two.disjoint_union(&two);
    assert_eq!(two.pi0().count, 2);
    assert_eq!(TruncatedSimplicialSet::boundary(2).pi0().count, 1);
}

#[test]
fn homology_of_simplex_and_sphere() {
    let s5 = TruncatedSimplicialSet::standard_simplex(5);
    let h = s5.homology(3).unwrap();
    assert_eq!(h.betti(), vec![1, 0, 0, 0]);
    assert!(h.groups.iter().all(|g| g.torsion.is_empty()));

    let sphere = TruncatedSimplicialSet::boundary(3);
    let h = sphere.homology(2).unwrap();
    assert_eq!(h.betti(), betti_oracle(&sphere, 2));
    assert_eq!(h.betti(), vec![1, 0, 1]);
    assert_eq!(h.validity_bound, 2);
    // torsion-free: ranks agree mod 2, 3 and over a large prime
    for n in 1..=3 {
        let m = sphere.boundary_matrix(n);
        assert_eq!(rank_mod_p(&m, 2), rank_mod_p(&m, 1_000_003));
        assert_eq!(rank_mod_p(&m, 3), rank_mod_p(&m, 1_000_003));
    }
    assert!(sphere.homology(3).is_err());
}

#[test]
fn homology_detects_torsion() {
    let rp2 = projective_plane();
    let h = rp2.homology(2).unwrap();
    assert_eq!(h.groups[0], HomologyGroup { betti: 1, torsion: vec![] });
    assert_eq!(h.groups[1], HomologyGroup { betti: 0, torsion: vec![2] });
    assert_eq!(h.groups[2], HomologyGroup { betti: 0, torsion: vec![] });
}

#[test]
fn invariant_factor_examples() {
    assert_eq!(invariant_factors(vec![vec![2, 0], vec![0, 3]]), vec![1, 6]);
    assert_eq!(invariant_factors(vec![vec![2, 4], vec![6, 8]]), vec![2, 4]);
    assert_eq!(invariant_factors(vec![vec![0, 0]]), Vec::<u64>::new());
    assert_eq!(invariant_factors(vec![]), Vec::<u64>::new());
}

#[test]
fn text_round_trip_examples() {
    for set in [TruncatedSimplicialSet::boundary(3), projective_plane(), TruncatedSimplicialSet::horn(3, 1).unwrap()] {
        let text = write_simplicial_set(&set);
        assert_eq!(parse_simplicial_set(&text).unwrap(), set);
    }
}

#[test]
fn parse_errors_carry_line_numbers() {
    let err = parse_simplicial_set("simplicial-set dim_cap 1\ncell 0 a\ncell 1 e a b\nend\n").unwrap_err();
    assert_eq!(err, crate::Error::Parse { line: 3, message: "unknown cell `b`".into() });
    assert!(matches!(parse_simplicial_set("cell 0 a"), Err(crate::Error::Parse { line: 1, .. })));
    assert!(parse_simplicial_set("simplicial-set dim_cap 1\ncell 0 a\n").is_err());
}

fn arb_set() -> impl Strategy<Value = TruncatedSimplicialSet> {
    let piece = (0usize..3, 1usize..4, 0usize..4).prop_map(|(kind, n, k)| match kind {
        0 => TruncatedSimplicialSet::standard_simplex(n),
        1 => TruncatedSimplicialSet::boundary(n),
        _ => TruncatedSimplicialSet::horn(n, k.min(n)).unwrap(),
    });
    prop::collection::vec(piece, 1..4).prop_map(|pieces| {
        let cap = 4;
        pieces.iter().fold(TruncatedSimplicialSet::empty(cap), |acc, p| acc.disjoint_union(&p.with_dim_cap(cap)))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn text_round_trip(set in arb_set()) {
        let text = write_simplicial_set(&set);
        prop_assert_eq!(parse_simplicial_set(&text).unwrap(), set);
    }

    #[test]
    fn constructed_sets_satisfy_identities(set in arb_set()) {
        prop_assert!(set.verify_identities().is_empty());
        let explicit = ExplicitSimplicialSet::from_truncated(&set);
        prop_assert!(explicit.check_identities().is_ok());
    }

    #[test]
    fn h0_counts_components(set in arb_set()) {
        let h = set.homology(2).unwrap();
        prop_assert_eq!(h.groups[0].betti, set.pi0().count);
        prop_assert_eq!(h.betti(), betti_oracle(&set, 2));
    }

    #[test]
    fn euler_characteristic_matches_betti(set in arb_set()) {
        // cap 4 exceeds every top dimension used by arb_set
        let h = set.homology(3).unwrap();
        let alt: i64 = h.betti().iter().enumerate().map(|(n, &b)| if n % 2 == 0 { b as i64 } else { -(b as i64) }).sum();
        prop_assert_eq!(alt, set.euler_characteristic());
    }

    #[test]
    fn normal_forms_are_stable_under_faces(set in arb_set(), n in 1usize..4) {
        for x in set.n_simplices(n).unwrap() {
            for i in 0..=n {
                let f = set.face(&x, i);
                prop_assert!(SimplexRef::new(f.base, f.word.clone()).is_ok());
                // renormalizing through the explicit surjection is idempotent
                prop_assert_eq!(SimplexRef::from_surjection(f.base, &f.surjection()), f.clone());
                prop_assert_eq!(set.act(&f, &(0..=f.dim()).collect::<Vec<_>>()), f);
            }
        }
    }

    #[test]
    fn explicit_round_trip_preserves_counts(set in arb_set()) {
        let explicit = ExplicitSimplicialSet::from_truncated(&set);
        let back = explicit.to_truncated();
        for n in 0..=set.dim_cap() {
            prop_assert_eq!(back.num_cells(n), set.num_cells(n));
            prop_assert_eq!(explicit.size(n), set.n_simplices(n).unwrap().len());
        }
        prop_assert_eq!(back.homology(3).unwrap(), set.homology(3).unwrap());
    }

    #[test]
    fn invariant_factors_match_determinantal_divisors(
        rows in 1usize..4,
        cols in 1usize..4,
        entries in prop::collection::vec(-6i128..7, 16),
    ) {
        let a: Vec<Vec<i128>> = (0..rows).map(|r| (0..cols).map(|c| entries[r * 4 + c]).collect()).collect();
        let f = invariant_factors(a.clone());
        for w in f.windows(2) {
            prop_assert_eq!(w[1] % w[0], 0);
        }
        let mut prefix: i128 = 1;
        for k in 1..=rows.min(cols) {
            let dk = determinantal_divisor(&a, k);
            if k <= f.len() {
                prefix *= f[k - 1] as i128;
                prop_assert_eq!(prefix, dk);
            } else {
                prop_assert_eq!(dk, 0);
            }
        }
    }
}
