use itertools::Itertools;
use num::{BigInt, BigRational, One, Zero};
use proptest::prelude::*;

use super::*;

fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn a1() -> Quiver {
    Quiver::linear_a(1)
}

fn id(dims: &[usize], index: usize) -> ClassId {
    ClassId { dims: dims.to_vec(), index }
}

#[test]
fn fields_satisfy_the_axioms() {
    for q in [2, 3, 4, 5, 8, 9] {
        let f = Field::new(q).unwrap();
        let all: Vec<u8> = (0..q as u8).collect();
        for (&a, &b, &c) in all.iter().tuple_combinations::<(_, _, _)>().chain(all.iter().map(|a| (a, a, a))) {
            assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
            assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
            assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
        }
        for &a in &all[1..] {
            assert_eq!(f.mul(a, f.inv(a)), 1);
        }
        let units: Vec<u8> = all[1..].to_vec();
        assert_eq!(units.iter().filter(|&&a| f.mul(a, a) == 1).count(), if q % 2 == 0 { 1 } else { 2 });
    }
    let f = Field::new(5).unwrap();
    assert_eq!(f.mul(3, 4), 2);
    assert!(Field::new(6).is_err());
    assert!(Field::new(1).is_err());
}

#[test]
fn general_linear_group_orders() {
    for (q, n) in [(2, 0), (2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (4, 2)] {
        let f = Field::new(q).unwrap();
        assert_eq!(general_linear_group(&f, n).len() as u128, gl_order(n, q), "GL_{n}({q})");
    }
    // 2x2 determinant oracle
    let f = Field::new(3).unwrap();
    let mut count = 0;
    for m in (0..4).map(|_| 0u8..3).multi_cartesian_product() {
        if f.sub(f.mul(m[0], m[3]), f.mul(m[1], m[2])) != 0 {
            count += 1;
        }
    }
    assert_eq!(count, general_linear_group(&f, 2).len());
}

#[test]
fn class_enumeration_examples() {
    let t = enumerate_reps(&a1(), 2, &[2]).unwrap();
    let classes = t.classes(&[2]).unwrap();
    assert_eq!(classes.len(), 1);
    assert_eq!(classes[0].aut_order, 6);

    let a2 = Quiver::linear_a(2);
    for q in [2, 3] {
        let t = enumerate_reps(&a2, q, &[1, 1]).unwrap();
        let classes = t.classes(&[1, 1]).unwrap();
        // GL_1 × GL_1 orbits on F_q: {0} and the nonzero scalars
        assert_eq!(classes.len(), 2);
        assert!(classes[0].representative.matrices[0].is_zero());
        assert_eq!(classes[0].aut_order, ((q - 1) * (q - 1)) as u128);
        assert_eq!(classes[1].aut_order, (q - 1) as u128);
    }

    let a3 = Quiver::linear_a(3);
    let t = enumerate_reps(&a3, 2, &[0, 0, 0]).unwrap();
    assert_eq!(t.classes(&[0, 0, 0]).unwrap().len(), 1);
    assert_eq!(t.classes(&[0, 0, 0]).unwrap()[0].aut_order, 1);
}

#[test]
fn orbit_stabilizer_holds() {
    let q2 = Quiver::new(vec!["a".into()], vec![("loop".into(), 0, 0)]).unwrap();
    for (quiver, dims) in [(Quiver::linear_a(2), vec![2, 1]), (Quiver::linear_a(3), vec![1, 2, 1]), (q2, vec![2])] {
        let t = enumerate_reps(&quiver, 2, &dims).unwrap();
        let g = t.group_order(&dims).unwrap();
        let total: u128 = t.classes(&dims).unwrap().iter().map(|c| g / c.aut_order).sum();
        assert_eq!(total, 2u128.pow(quiver.entries(&dims) as u32));
        for c in t.classes(&dims).unwrap() {
            assert_eq!(aut_order(t.field(), &quiver, &c.representative), c.aut_order);
        }
    }
}

/// Direct count of pairs `(i, p)` of a `n×1` column and a `1×n`... of
/// matrices over `F_q` with `i` injective, `p` surjective and `p i = 0`.
fn a1_sequence_oracle(q: usize, x: usize, y: usize) -> u128 {
    let f = Field::new(q).unwrap();
    let z = x + y;
    let mut count = 0;
    for i in 0..q.pow((z * x) as u32) {
        let im = Matrix::nth(z, x, q, i);
        if im.rank(&f) != x {
            continue;
        }
        for p in 0..q.pow((y * z) as u32) {
            let pm = Matrix::nth(y, z, q, p);
            if pm.rank(&f) == y && pm.mul(&f, &im).is_zero() {
                count += 1;
            }
        }
    }
    count
}

#[test]
fn hall_numbers_of_a1() {
    let quiver = a1();
    for q in [2, 3] {
        let one = Rep::zero(&quiver, q, vec![1]);
        let two = Rep::zero(&quiver, q, vec![2]);
        let f = Field::new(q).unwrap();
        let pairs = ses_count(&f, &quiver, &one, &two, &one).unwrap();
        assert_eq!(pairs, ((q * q - 1) * (q - 1)) as u128);
        assert_eq!(pairs, a1_sequence_oracle(q, 1, 1));
        assert_eq!(aut_order(&f, &quiver, &one), ((q - 1) * (q - 1)) as u128 / (q - 1) as u128);
        assert_eq!(hall_number(&quiver, &one, &one, &two).unwrap(), int(q as i64 + 1));
    }
    let f = Field::new(2).unwrap();
    let (one, two) = (Rep::zero(&quiver, 2, vec![1]), Rep::zero(&quiver, 2, vec![2]));
    let three = Rep::zero(&quiver, 2, vec![3]);
    assert_eq!(ses_count(&f, &quiver, &one, &three, &two).unwrap(), a1_sequence_oracle(2, 1, 2));
    assert_eq!(ses_count(&f, &quiver, &one, &one, &one).unwrap(), 0);
    assert!(hall_number(&quiver, &one, &Rep::zero(&quiver, 3, vec![1]), &two).is_err());
}

#[test]
fn hall_unit_law() {
    let quiver = Quiver::linear_a(2);
    let t = IsoClassTable::build(&quiver, 2, &[2, 1]).unwrap();
    let zero = id(&[0, 0], 0);
    for x in t.class_ids() {
        for z in t.class_ids().into_iter().filter(|z| z.dims == x.dims) {
            let expected = if z == x { BigRational::one() } else { BigRational::zero() };
            assert_eq!(t.hall_number(&x, &zero, &z).unwrap(), expected);
            assert_eq!(t.hall_number(&zero, &x, &z).unwrap(), expected);
        }
        assert_eq!(hall_product(&zero, &x, &t).unwrap(), HallProduct::basis(x.clone()));
    }
}

#[test]
fn hall_numbers_of_a2() {
    let quiver = Quiver::linear_a(2);
    let t = IsoClassTable::build(&quiver, 2, &[1, 1]).unwrap();
    let (s1, s2) = (id(&[1, 0], 0), id(&[0, 1], 0));
    let iso = Rep::new(&quiver, 2, vec![1, 1], vec![Matrix::identity(1)]).unwrap();
    let p = t.class_of(&iso).unwrap();
    assert_eq!(p, id(&[1, 1], 1));
    assert_eq!(t.hall_number(&s2, &s1, &p).unwrap(), BigRational::one());
    assert_eq!(t.hall_number(&s1, &s2, &p).unwrap(), BigRational::zero());
    let split = id(&[1, 1], 0);
    assert_eq!(t.hall_number(&s1, &s2, &split).unwrap(), BigRational::one());
    assert_eq!(t.hall_number(&s2, &s1, &split).unwrap(), BigRational::one());
    assert_eq!(t.label(&p), "1,1#1");
    assert_eq!(t.label(&s1), "1,0");
}

/// Subspaces of `F_2^3` by brute force over subsets closed under addition.
fn subspaces_of_f2_cubed() -> Vec<Vec<usize>> {
    (0u32..256)
        .map(|mask| (0..8).filter(|v| mask >> v & 1 == 1).collect::<Vec<usize>>())
        .filter(|s| s.contains(&0) && s.iter().all(|&a| s.iter().all(|&b| s.contains(&(a ^ b)))))
        .collect()
}

#[test]
fn a1_triple_product() {
    let t = IsoClassTable::build(&a1(), 2, &[3]).unwrap();
    let one = id(&[1], 0);
    let left = multiply(&hall_product(&one, &one, &t).unwrap(), &HallProduct::basis(one.clone()), &t).unwrap();
    let right = multiply(&HallProduct::basis(one.clone()), &hall_product(&one, &one, &t).unwrap(), &t).unwrap();
    let subspaces = subspaces_of_f2_cubed();
    let flags = subspaces
        .iter()
        .filter(|v| v.len() == 2)
        .map(|v| subspaces.iter().filter(|w| w.len() == 4 && v.iter().all(|x| w.contains(x))).count())
        .sum::<usize>();
    let planes = subspaces.iter().filter(|w| w.len() == 4).count();
    assert_eq!(planes, 7);
    assert_eq!(flags, 21);
    assert_eq!(left, right);
    assert_eq!(left.coefficient(&id(&[3], 0)), int(flags as i64));
    assert_eq!(hall_product(&one, &one, &t).unwrap().render(|k| t.label(k)), "3·[2]");
}

#[test]
fn hall_algebras_are_associative() {
    let t = IsoClassTable::build(&a1(), 2, &[3]).unwrap();
    let (failures, checked) = hall_associativity(&t, &[3]).unwrap();
    assert!(failures.is_empty());
    assert_eq!(checked, 20);
    let t = IsoClassTable::build(&Quiver::linear_a(2), 2, &[2, 2]).unwrap();
    let (failures, checked) = hall_associativity(&t, &[2, 2]).unwrap();
    assert!(failures.is_empty());
    assert!(checked > 100);
    assert!(hall_associativity(&t, &[3, 2]).is_err());
}

#[test]
fn hall_numbers_are_integers() {
    for (quiver, bound) in [(a1(), vec![3]), (Quiver::linear_a(2), vec![2, 2])] {
        let t = IsoClassTable::build(&quiver, 2, &bound).unwrap();
        let ids = t.class_ids();
        for x in &ids {
            for y in &ids {
                if let Ok(p) = hall_product(x, y, &t) {
                    assert!(p.terms.values().all(|c| c.is_integer()));
                }
            }
        }
    }
}

#[test]
fn extension_counts_match_middle_term_enumeration() {
    for (quiver, bound) in [(a1(), vec![3]), (Quiver::linear_a(2), vec![2, 1])] {
        let t = IsoClassTable::build(&quiver, 2, &bound).unwrap();
        let f = t.field();
        let ids = t.class_ids();
        for x in &ids {
            for y in &ids {
                let d = add(&x.dims, &y.dims);
                let Some(group) = t.group_order(&d) else { continue };
                let (rx, ry) = (&t.class(x).representative, &t.class(y).representative);
                let mut direct = 0u128;
                for k in 0..2usize.pow(quiver.entries(&d) as u32) {
                    direct += ses_count(f, &quiver, rx, &Rep::nth(&quiver, 2, &d, k), ry).unwrap();
                }
                let mut via_classes = BigRational::zero();
                for (z, g) in hall_product(x, y, &t).unwrap().terms {
                    let c = t.class(&z);
                    via_classes += g * int((group / c.aut_order) as i64) * int((t.class(x).aut_order * t.class(y).aut_order) as i64);
                }
                assert_eq!(via_classes, int(direct as i64), "{x:?} {y:?}");
            }
        }
    }
}

#[test]
fn gabriel_counts() {
    for n in 1..=3 {
        let bound = vec![2; n];
        let t = IsoClassTable::build(&Quiver::linear_a(n), 2, &bound).unwrap();
        let indecomposable = t
            .class_ids()
            .into_iter()
            .filter(|c| c.dims.iter().sum::<usize>() > 0)
            .filter(|c| !t.is_decomposable(c).unwrap())
            .count();
        assert_eq!(indecomposable, n * (n + 1) / 2, "A_{n}");
    }
}

fn g(q: usize, dims: &[(i64, usize)]) -> GradedVect {
    let lo = dims.iter().map(|d| d.0).min().unwrap_or(0).min(0);
    let hi = dims.iter().map(|d| d.0).max().unwrap_or(0).max(0);
    GradedVect::new(q, (lo, hi), dims).unwrap()
}

/// Maps `x -> z` with cone dimensions `y`, counted by listing every
/// degreewise matrix.
fn cone_oracle(x: &GradedVect, z: &GradedVect, y: &GradedVect) -> BigInt {
    let q = x.q();
    let f = Field::new(q).unwrap();
    let degrees: Vec<i64> = x.support().filter(|&k| z.dim(k) > 0).collect();
    let shapes: Vec<(usize, usize)> = degrees.iter().map(|&k| (z.dim(k), x.dim(k))).collect();
    let mut count = 0i64;
    for choice in shapes.iter().map(|&(r, c)| 0..q.pow((r * c) as u32)).multi_cartesian_product() {
        let ranks: Vec<usize> = shapes.iter().zip(&choice).map(|(&(r, c), &i)| Matrix::nth(r, c, q, i).rank(&f)).collect();
        let rank = |k: i64| degrees.iter().position(|&d| d == k).map_or(0, |p| ranks[p]);
        let lo = x.support().chain(z.support()).chain(y.support()).min().unwrap_or(0) - 1;
        let hi = x.support().chain(z.support()).chain(y.support()).max().unwrap_or(0) + 1;
        if (lo..=hi).all(|k| z.dim(k) - rank(k) + x.dim(k + 1) - rank(k + 1) == y.dim(k)) {
            count += 1;
        }
    }
    BigInt::from(count)
}

#[test]
fn graded_examples() {
    let x = g(2, &[(0, 1)]);
    let z = g(2, &[(0, 2)]);
    assert_eq!(hom_count(&x, &shift(&z, -1)).unwrap(), BigInt::one());
    assert_eq!(hom_count(&x, &x).unwrap(), BigInt::from(2));
    assert_eq!(aut_order_graded(&x), BigInt::one());
    assert_eq!(hom_count_with_cone(&x, &z, &x).unwrap(), BigInt::from(3));
    assert_eq!(cone_oracle(&x, &z, &x), BigInt::from(3));
    assert_eq!(shift(&g(2, &[(1, 2)]), 1).dim(0), 2);
    assert!(hom_count(&x, &g(3, &[(0, 1)])).is_err());
}

#[test]
fn cone_counts_match_brute_force() {
    let objects = GradedVect::all(2, (0, 1), 2);
    for x in &objects {
        for z in &objects {
            for y in GradedVect::all(2, (-1, 1), 3) {
                assert_eq!(hom_count_with_cone(x, z, &y).unwrap(), cone_oracle(x, z, &y), "{x} {z} {y}");
            }
        }
    }
}

#[test]
fn derived_hall_examples() {
    let (one, two) = (g(2, &[(0, 1)]), g(2, &[(0, 2)]));
    assert_eq!(derived_hall_number(&one, &one, &two).unwrap(), int(3));
    let (one3, two3) = (g(3, &[(0, 1)]), g(3, &[(0, 2)]));
    assert_eq!(hom_count_with_cone(&one3, &two3, &one3).unwrap(), BigInt::from(8));
    assert_eq!(aut_order_graded(&one3), BigInt::from(2));
    assert_eq!(derived_hall_number(&one3, &one3, &two3).unwrap(), int(4));
    let zero = GradedVect::zero(2, (0, 1));
    for y in GradedVect::all(2, (0, 1), 2) {
        for z in GradedVect::all(2, (0, 1), 2) {
            let expected = if y.same_dims(&z) { BigRational::one() } else { BigRational::zero() };
            assert_eq!(derived_hall_number(&zero, &y, &z).unwrap(), expected);
        }
    }
}

#[test]
fn derived_agrees_with_classical_a1() {
    for q in [2, 3] {
        let t = IsoClassTable::build(&a1(), q, &[3]).unwrap();
        for x in 0..=3usize {
            for y in 0..=3 - x {
                for z in 0..=3usize {
                    let classical = if z == x + y { t.hall_number(&id(&[x], 0), &id(&[y], 0), &id(&[z], 0)).unwrap() } else { BigRational::zero() };
                    let derived = derived_hall_number(&g(q, &[(0, x)]), &g(q, &[(0, y)]), &g(q, &[(0, z)])).unwrap();
                    assert_eq!(derived, classical, "q={q} {x} {y} {z}");
                }
            }
        }
    }
}

#[test]
fn derived_product_on_degree_zero_is_classical() {
    let t = IsoClassTable::build(&a1(), 2, &[2]).unwrap();
    for x in 0..=2usize {
        for y in 0..=2 - x {
            let classical = hall_product(&id(&[x], 0), &id(&[y], 0), &t).unwrap();
            let derived = derived_hall_product(&g(2, &[(0, x)]), &g(2, &[(0, y)])).unwrap();
            let translated: Vec<(usize, BigRational)> = derived.terms.iter().map(|(z, c)| (z.dim(0), c.clone())).collect();
            let expected: Vec<(usize, BigRational)> = classical.terms.iter().map(|(z, c)| (z.dims[0], c.clone())).collect();
            assert_eq!(translated, expected);
        }
    }
}

#[test]
fn derived_algebra_is_associative_and_unital() {
    let (failures, checked) = derived_associativity(2, (0, 1), 2).unwrap();
    assert!(failures.is_empty(), "{:?}", failures.first());
    assert!(checked > 20);
    let zero = GradedVect::zero(2, (0, 1));
    for x in GradedVect::all(2, (0, 1), 2) {
        let expected = HallProduct::basis(derived_hall_product(&zero, &x).unwrap().terms.keys().next().unwrap().clone());
        assert_eq!(derived_hall_product(&zero, &x).unwrap(), expected);
        assert_eq!(derived_hall_product(&x, &zero).unwrap(), expected);
    }
}

#[test]
fn text_round_trips() {
    let quiver = Quiver::new(vec!["a".into(), "b".into()], vec![("f".into(), 0, 1), ("g".into(), 0, 1)]).unwrap();
    let text = write_quiver(&quiver).unwrap();
    assert_eq!(parse_quiver(&text).unwrap(), quiver);
    let rep = Rep::new(&quiver, 3, vec![1, 2], vec![Matrix::from_rows(2, 1, vec![1, 2]).unwrap(), Matrix::zero(2, 1)]).unwrap();
    assert_eq!(parse_rep(&quiver, &write_rep(&quiver, &rep)).unwrap(), rep);
    assert!(parse_rep(&quiver, "rep q 2\ndim a 1\ndim b 1\nmatrix f 3\nend\n").is_err());
    assert!(parse_quiver("quiver\narrow f a b\nend\n").is_err());
    assert_eq!(parse_graded(2, (0, 1), "1@0+2@1").unwrap(), g(2, &[(0, 1), (1, 2)]));
    assert!(parse_graded(2, (0, 1), "1@3").is_err());
}

proptest! {
    #[test]
    fn cones_partition_all_maps(a in 0usize..3, b in 0usize..3, c in 0usize..3, d in 0usize..3) {
        let x = g(2, &[(0, a), (1, b)]);
        let z = g(2, &[(0, c), (1, d)]);
        let mut total = BigInt::zero();
        for y in GradedVect::all(2, (-1, 1), a + b + c + d) {
            total += hom_count_with_cone(&x, &z, &y).unwrap();
        }
        prop_assert_eq!(total, hom_count(&x, &z).unwrap());
    }

    #[test]
    fn shifts_invert(a in 0usize..3, b in 0usize..3, i in -3i64..3) {
        let x = g(2, &[(0, a), (1, b)]);
        prop_assert_eq!(shift(&shift(&x, i), -i), x);
    }

    #[test]
    fn matrix_inverse_round_trips(index in 0usize..512) {
        let f = Field::new(2).unwrap();
        let m = Matrix::nth(3, 3, 2, index);
        match m.inverse(&f) {
            Some(inv) => prop_assert_eq!(m.mul(&f, &inv), Matrix::identity(3)),
            None => prop_assert!(m.rank(&f) < 3),
        }
    }
}
