use itertools::Itertools;

use super::*;
use crate::corpus;
use crate::fincat::{gz_localize_hom, nerve, ore_check, LocalizedHom, MorphismClass, OreOrientation};
use crate::lifting::{is_quasicategory, nerve_comparison, reconstruct_category};
use crate::simpset::TruncatedSimplicialSet;

fn explicit(x: &TruncatedSimplicialSet) -> ExplicitSimplicialSet {
    ExplicitSimplicialSet::from_truncated(x)
}

/// Objects `x, y` with `Map(x,y) = space`, points on the diagonal and
/// `Map(y,x)` empty.
fn two_object(space: ExplicitSimplicialSet) -> FinSimplicialCategory {
    let cap = space.dim_cap;
    let point = explicit(&TruncatedSimplicialSet::standard_simplex(0).with_dim_cap(cap));
    let empty = explicit(&TruncatedSimplicialSet::empty(cap));
    let maps = vec![vec![point.clone(), space], vec![empty, point]];
    FinSimplicialCategory::from_fn(vec!["x".into(), "y".into()], maps, vec![0, 0], |a, b, c, _, g, f| match (a, b, c) {
        (0, 0, 1) => g,
        (0, 1, 1) => f,
        _ => 0,
    })
    .unwrap()
}

fn admits_fractions(c: &FinCategory, s: &MorphismClass) -> bool {
    s.is_closed_under_composition(c)
        && ore_check(c, s, OreOrientation::Left).holds()
        && ore_check(c, s, OreOrientation::Right).holds()
}

#[test]
fn cube_vertex_counts() {
    for n in 0..=4 {
        let c = cdelta(n, 2);
        for i in 0..=n {
            for j in 0..=n {
                let oracle = (0u32..1 << (n + 1))
                    .filter(|s| (i <= j) && s >> i & 1 == 1 && s >> j & 1 == 1 && (0..=n).all(|b| s >> b & 1 == 0 || (i..=j).contains(&b)))
                    .count();
                assert_eq!(c.map(i, j).size(0), oracle, "cdelta({n}) Map({i},{j})");
                if i < j {
                    assert_eq!(oracle, 1 << (j - i - 1));
                }
            }
        }
    }
}

#[test]
fn cube_examples() {
    let one = cdelta(1, 2);
    assert_eq!(one.map(0, 1).to_truncated().num_cells(0), 1);
    assert_eq!(one.map(0, 1).nondegenerate_counts(), vec![1, 0, 0]);

    let two = cdelta(2, 2);
    let m = two.map(0, 2);
    assert_eq!(m.nondegenerate_counts(), vec![2, 1, 0]);
    assert_eq!(m.labels[0], vec!["{0.2}", "{0.1.2}"]);
    let t = m.to_truncated();
    let edge = &t.cells(1)[0];
    assert_eq!(t.simplex_label(&edge.faces[1]), "{0.2}");
    assert_eq!(t.simplex_label(&edge.faces[0]), "{0.1.2}");
    let composite = two.compose(0, 1, 2, 0, 0, 0);
    assert_eq!(m.labels[0][composite], "{0.1.2}");

    // strict chains of subsets of {1, 2}
    let subsets: Vec<u32> = (0..4).collect();
    let chains = |len: usize| {
        subsets.iter().permutations(len).filter(|c| c.windows(2).all(|w| w[0] & !w[1] == 0 && w[0] < w[1])).count()
    };
    let square = cdelta(3, 2).map(0, 3).nondegenerate_counts();
    assert_eq!(square, vec![chains(1), chains(2), chains(3)]);
    assert_eq!(square, vec![4, 5, 2]);
}

#[test]
fn cube_composition_is_union() {
    for n in 0..=4 {
        let c = cdelta(n, 3);
        c.verify().unwrap();
        for (i, j, k) in (0..=n).tuple_combinations() {
            for g in 0..c.map(j, k).size(0) {
                for f in 0..c.map(i, j).size(0) {
                    let gf = c.compose(i, j, k, 0, g, f);
                    let set = |s: &str| s.trim_matches(|ch| ch == '{' || ch == '}').split('.').map(String::from).collect::<Vec<_>>();
                    let mut expected = set(&c.map(i, j).labels[0][f]);
                    expected.extend(set(&c.map(j, k).labels[0][g]).into_iter().skip(1));
                    assert_eq!(set(&c.map(i, k).labels[0][gf]), expected);
                }
            }
        }
    }
}

#[test]
fn coherent_nerve_of_discrete_is_nerve() {
    for (name, c) in corpus::categories().into_iter().take(12) {
        let x = coherent_nerve(&FinSimplicialCategory::discrete(&c, 2), 3).unwrap();
        let rebuilt = reconstruct_category(&x).unwrap();
        let cmp = nerve_comparison(&x, &rebuilt).unwrap();
        assert!(cmp.is_levelwise_bijective(), "{name}");
        let names: Vec<String> = c
            .morphisms()
            .iter()
            .map(|m| {
                if c.is_identity(c.morphisms().iter().position(|n| n == m).unwrap()) {
                    format!("id_{}", c.object_name(m.source))
                } else {
                    format!("<{},{}|{}>", c.object_name(m.source), c.object_name(m.target), m.name)
                }
            })
            .collect();
        let objects: Vec<&str> = c.objects().iter().map(String::as_str).collect();
        let morphisms: Vec<(&str, &str)> = c.morphisms().iter().zip(&names).map(|(m, n)| (m.name.as_str(), n.as_str())).collect();
        let objects: Vec<(&str, &str)> = objects.iter().map(|&o| (o, o)).collect();
        let f = crate::fincat::Functor::from_names(&c, &rebuilt, &objects, &morphisms).unwrap();
        assert!(f.check_equivalence().is_ok(), "{name}");
        assert_eq!(x.num_cells(2), nerve(&c, 3).num_cells(2), "{name}");
        assert_eq!(x.num_cells(3), nerve(&c, 3).num_cells(3), "{name}");
    }
}

#[test]
fn coherent_nerve_of_kan_enrichment_is_quasicategory() {
    for (name, c) in corpus::categories().into_iter().take(10) {
        let x = coherent_nerve(&FinSimplicialCategory::codiscrete(&c, 2), 3).unwrap();
        assert!(is_quasicategory(&x, 3).unwrap().inner_filled(), "{name}");
    }
}

#[test]
fn coherent_two_simplices_match_brute_force() {
    let c = two_object(explicit(&TruncatedSimplicialSet::standard_simplex(1).with_dim_cap(1)));
    let x = coherent_nerve_explicit(&c, 2).unwrap();
    let mut oracle = 0;
    for objs in (0..3).map(|_| 0..2).multi_cartesian_product() {
        let (a, b, d) = (objs[0], objs[1], objs[2]);
        for f01 in 0..c.map(a, b).size(0) {
            for f12 in 0..c.map(b, d).size(0) {
                let composite = c.compose(a, b, d, 0, f12, f01);
                let long = c.map(a, d);
                oracle += (0..long.size(1)).filter(|&e| long.face(1, 0, e) == composite).count();
            }
        }
    }
    assert_eq!(oracle, 8);
    assert_eq!(x.size(2), oracle);
    x.check_identities().unwrap();
}

#[test]
fn coherent_nerve_limits() {
    let c = FinSimplicialCategory::discrete(&FinCategory::walking_arrow(), 1);
    assert!(matches!(coherent_nerve(&c, 4), Err(Error::Resource { .. })));
    assert!(coherent_nerve(&c, 3).is_err());
    assert!(coherent_nerve(&c, 2).is_ok());
}

#[test]
fn components_examples() {
    let c = FinCategory::walking_arrow();
    let p = pi0_category(&FinSimplicialCategory::discrete(&c, 2)).unwrap();
    assert_eq!(p.num_morphisms(), c.num_morphisms());

    let two = two_object(explicit(&TruncatedSimplicialSet::boundary(1).with_dim_cap(1)));
    assert_eq!(pi0_category(&two).unwrap().hom(0, 1).len(), 2);

    let nd = two_object(explicit(&nerve(&FinCategory::walking_iso(), 2)));
    assert_eq!(pi0_category(&nd).unwrap().hom(0, 1).len(), 1);
}

#[test]
fn enriched_dk_examples() {
    let c = FinSimplicialCategory::codiscrete(&FinCategory::walking_iso(), 2);
    assert_eq!(dk_check_enriched(&SimplicialFunctor::identity(&c)).unwrap(), DkVerdict::Equivalent);

    let sub = c.full_subcategory(&[true, false]).unwrap();
    assert_eq!(dk_check_enriched(&sub).unwrap(), DkVerdict::Equivalent);

    let sub = FinSimplicialCategory::discrete(&FinCategory::walking_arrow(), 1).full_subcategory(&[true, false]).unwrap();
    assert!(matches!(dk_check_enriched(&sub).unwrap(), DkVerdict::NotEquivalent(_)));

    let two = two_object(explicit(&TruncatedSimplicialSet::boundary(1).with_dim_cap(1)));
    let one = two_object(explicit(&TruncatedSimplicialSet::standard_simplex(0).with_dim_cap(1)));
    let maps: Vec<Vec<ExplicitMap>> = (0..2)
        .map(|a| (0..2).map(|b| (0..=1).map(|n| vec![0; two.map(a, b).size(n)]).collect()).collect())
        .collect();
    let collapse = SimplicialFunctor::new(two, one, vec![0, 1], maps).unwrap();
    assert!(matches!(dk_check_enriched(&collapse).unwrap(), DkVerdict::NotEquivalent(_)));

    let (e, d) = (FinCategory::walking_arrow(), FinCategory::walking_iso());
    let point = FinCategory::terminal();
    let into_iso = crate::fincat::Functor::from_names(&point, &d, &[("*", "x")], &[]).unwrap();
    assert_eq!(dk_check_enriched(&SimplicialFunctor::discrete(&into_iso, 1).unwrap()).unwrap(), DkVerdict::Equivalent);
    let arrow_to_iso = crate::fincat::Functor::from_names(&e, &d, &[("x", "x"), ("y", "y")], &[("f", "i")]).unwrap();
    assert!(matches!(dk_check_enriched(&SimplicialFunctor::discrete(&arrow_to_iso, 1).unwrap()).unwrap(), DkVerdict::NotEquivalent(_)));
}

#[test]
fn hammock_examples() {
    for (name, c) in corpus::categories().into_iter().take(20) {
        let s = MorphismClass::identities(&c);
        for (a, b) in (0..c.num_objects()).cartesian_product(0..c.num_objects()) {
            let h = hammock_mapping_space(&c, &s, a, b).unwrap();
            assert_eq!(h.components(), c.hom(a, b).len(), "{name} ({a},{b})");
        }
        for a in 0..c.num_objects() {
            let h = hammock_mapping_space(&c, &MorphismClass::all(&c), a, a).unwrap();
            let id = c.identity(a);
            assert!(h.zigzags.contains(&Zigzag { s: id, f: id, t: id }));
        }
    }
    let e = FinCategory::walking_arrow();
    let s = MorphismClass::from_names(&e, &["f"]).unwrap();
    let (x, y) = (e.object_named("x").unwrap(), e.object_named("y").unwrap());
    assert_eq!(hammock_mapping_space(&e, &s, y, x).unwrap().components(), 1);
    assert_eq!(gz_localize_hom(&e, &s, y, x, 4).unwrap().class_count(), Some(1));
}

#[test]
fn hammock_agrees_with_zigzag_localization() {
    let mut checked = 0;
    let mut disagreements = Vec::new();
    for (name, c) in corpus::categories() {
        for (sname, s) in [("id", MorphismClass::identities(&c)), ("iso", MorphismClass::isomorphisms(&c)), ("all", MorphismClass::all(&c))] {
            if !admits_fractions(&c, &s) {
                continue;
            }
            for (a, b) in (0..c.num_objects()).cartesian_product(0..c.num_objects()) {
                if let LocalizedHom::Stable { classes } = gz_localize_hom(&c, &s, a, b, 4).unwrap() {
                    checked += 1;
                    let h = hammock_mapping_space(&c, &s, a, b).unwrap().components();
                    if h != classes.len() {
                        disagreements.push(format!("{name}/{sname} ({a},{b}): hammock {h}, zig-zag {}", classes.len()));
                    }
                }
            }
        }
    }
    assert!(checked > 100);
    assert!(disagreements.is_empty(), "{disagreements:#?}");
}

#[test]
fn hammock_width_is_too_small_without_fractions() {
    // 0 -> 1 <- 2 -> 3 inverted everywhere needs a five-stage zig-zag
    let c = corpus::poset_from_covers(4, &[(0, 1), (2, 1), (2, 3)]);
    let s = MorphismClass::all(&c);
    assert!(!admits_fractions(&c, &s));
    assert_eq!(gz_localize_hom(&c, &s, 0, 3, 4).unwrap().class_count(), Some(1));
    assert_eq!(hammock_mapping_space(&c, &s, 0, 3).unwrap().components(), 0);
}

#[test]
fn text_round_trip() {
    for c in [
        cdelta(2, 1),
        FinSimplicialCategory::codiscrete(&FinCategory::walking_iso(), 1),
        two_object(explicit(&TruncatedSimplicialSet::standard_simplex(1).with_dim_cap(1))),
    ] {
        let text = write_simplicial_category(&c).unwrap();
        let back = parse_simplicial_category(&text).unwrap();
        assert_eq!(write_simplicial_category(&back).unwrap(), text);
        assert_eq!(back.num_objects(), c.num_objects());
    }
    assert!(parse_simplicial_category("simplicial-category dim_cap 0\nobjects a\nend\n").is_err());
}
