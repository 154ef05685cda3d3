//! A fixed corpus of small finite categories used by tests, the acceptance
//! suite and the command line `corpus` listings.
//!
//! Every member has at most 4 objects and at most 12 morphisms.

use itertools::Itertools;

use crate::fincat::{FinCategory, FinCategoryBuilder};

pub const MAX_OBJECTS: usize = 4;
pub const MAX_MORPHISMS: usize = 12;

/// Named categories, in a stable order.
pub fn categories() -> Vec<(String, FinCategory)> {
    let mut out: Vec<(String, FinCategory)> = vec![
        ("point".into(), FinCategory::terminal()),
        ("arrow".into(), FinCategory::walking_arrow()),
        ("iso".into(), FinCategory::walking_iso()),
        ("discrete2".into(), FinCategory::discrete(&["a", "b"])),
        ("discrete3".into(), FinCategory::discrete(&["a", "b", "c"])),
        ("parallel".into(), parallel_pair()),
        ("idempotent".into(), idempotent_split()),
    ];
    for (i, p) in labeled_posets(2).into_iter().chain(labeled_posets(3)).enumerate() {
        out.push((format!("poset{i}"), p));
    }
    let four: [(&str, &[(usize, usize)]); 6] = [
        ("chain4", &[(0, 1), (1, 2), (2, 3)]),
        ("diamond", &[(0, 1), (0, 2), (1, 3), (2, 3)]),
        ("zigzag4", &[(0, 1), (2, 1), (2, 3)]),
        ("claw", &[(0, 1), (0, 2), (0, 3)]),
        ("cospan2", &[(0, 2), (1, 2), (0, 3), (1, 3)]),
        ("two-arrows", &[(0, 1), (2, 3)]),
    ];
    for (name, covers) in four {
        out.push((name.into(), poset_from_covers(4, covers)));
    }
    for n in 1..=6 {
        out.push((format!("Z{n}"), FinCategory::cyclic_group(n)));
    }
    out.push(("Z2xZ2".into(), FinCategory::cyclic_group(2).product(&FinCategory::cyclic_group(2))));
    out.push(("S3".into(), symmetric_group_3()));
    out.push(("codisc2".into(), FinCategory::codiscrete(2)));
    out.push(("codisc3".into(), FinCategory::codiscrete(3)));
    for (i, m) in small_monoids().into_iter().enumerate() {
        out.push((format!("monoid{i}"), m));
    }
    let e = FinCategory::walking_arrow();
    let d = FinCategory::walking_iso();
    let z2 = FinCategory::cyclic_group(2);
    out.push(("Z2xcodisc2".into(), z2.product(&FinCategory::codiscrete(2))));
    out.push(("arrowxarrow".into(), e.product(&e)));
    out.push(("arrowxZ2".into(), e.product(&z2)));
    out.push(("arrow+iso".into(), e.coproduct(&d)));
    out.push(("point+Z2".into(), FinCategory::terminal().coproduct(&z2)));
    out.push(("Z3+Z2".into(), FinCategory::cyclic_group(3).coproduct(&z2)));
    out.push(("iso+iso".into(), d.coproduct(&d)));
    out.push(("arrowxiso".into(), e.product(&d)));
    debug_assert!(out.iter().all(|(_, c)| c.num_objects() <= MAX_OBJECTS && c.num_morphisms() <= MAX_MORPHISMS));
    out
}

pub fn groupoids() -> Vec<(String, FinCategory)> {
    categories().into_iter().filter(|(_, c)| c.is_groupoid()).collect()
}

/// `x ⇉ y`.
pub fn parallel_pair() -> FinCategory {
    let mut b = FinCategoryBuilder::new();
    let x = b.object("x");
    let y = b.object("y");
    let idx = b.morphism("id_x", x, x);
    let idy = b.morphism("id_y", y, y);
    b.identity(x, idx).identity(y, idy);
    b.morphism("u", x, y);
    b.morphism("v", x, y);
    b.build().expect("parallel pair")
}

/// A retract `r ∘ i = id_x` with idempotent `e = i ∘ r` on `y`.
pub fn idempotent_split() -> FinCategory {
    let mut b = FinCategoryBuilder::new();
    let x = b.object("x");
    let y = b.object("y");
    let idx = b.morphism("id_x", x, x);
    let idy = b.morphism("id_y", y, y);
    b.identity(x, idx).identity(y, idy);
    let i = b.morphism("i", x, y);
    let r = b.morphism("r", y, x);
    let e = b.morphism("e", y, y);
    b.compose(r, i, idx).compose(i, r, e).compose(e, e, e).compose(e, i, i).compose(r, e, r);
    b.build().expect("idempotent split")
}

/// All posets on `0..n` with labelled points (every reflexive, transitive,
/// antisymmetric relation).
pub fn labeled_posets(n: usize) -> Vec<FinCategory> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).collect();
    let mut out = Vec::new();
    for mask in 0u32..(1 << pairs.len()) {
        let rel = |i: usize, j: usize| i == j || pairs.iter().position(|&p| p == (i, j)).is_some_and(|k| mask >> k & 1 == 1);
        let antisym = pairs.iter().all(|&(i, j)| !(rel(i, j) && rel(j, i)));
        let trans = (0..n).all(|i| (0..n).all(|j| (0..n).all(|k| !(rel(i, j) && rel(j, k)) || rel(i, k))));
        if antisym && trans {
            out.push(FinCategory::poset(n, rel).expect("checked poset"));
        }
    }
    out
}

/// Poset generated by cover relations.
pub fn poset_from_covers(n: usize, covers: &[(usize, usize)]) -> FinCategory {
    let mut reach = vec![vec![false; n]; n];
    for (i, row) in reach.iter_mut().enumerate() {
        row[i] = true;
    }
    for &(i, j) in covers {
        reach[i][j] = true;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if reach[i][k] && reach[k][j] {
                    reach[i][j] = true;
                }
            }
        }
    }
    FinCategory::poset(n, |i, j| reach[i][j]).expect("covers generate a poset")
}

pub fn symmetric_group_3() -> FinCategory {
    let perms: Vec<Vec<usize>> = (0..3).permutations(3).collect();
    let names: Vec<String> = perms.iter().map(|p| format!("s{}", p.iter().join(""))).collect();
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    // g∘f as functions: (g∘f)(x) = g(f(x))
    let table: Vec<Vec<usize>> = perms
        .iter()
        .map(|g| {
            perms
                .iter()
                .map(|f| {
                    let gf: Vec<usize> = f.iter().map(|&x| g[x]).collect();
                    perms.iter().position(|p| *p == gf).expect("closed")
                })
                .collect()
        })
        .collect();
    FinCategory::monoid(&refs, &table).expect("S3 table")
}

/// Every monoid of order 2 and 3, one per isomorphism class.
pub fn small_monoids() -> Vec<FinCategory> {
    let mut out = Vec::new();
    for k in 2..=3usize {
        let free: Vec<(usize, usize)> = (1..k).flat_map(|a| (1..k).map(move |b| (a, b))).collect();
        let mut seen: Vec<Vec<Vec<usize>>> = Vec::new();
        for values in (0..free.len()).map(|_| 0..k).multi_cartesian_product() {
            let mut t: Vec<Vec<usize>> = (0..k).map(|a| (0..k).map(|b| if a == 0 { b } else if b == 0 { a } else { 0 }).collect()).collect();
            for (&(a, b), &v) in free.iter().zip(&values) {
                t[a][b] = v;
            }
            let assoc = (0..k).all(|a| (0..k).all(|b| (0..k).all(|c| t[t[a][b]][c] == t[a][t[b][c]])));
            if !assoc {
                continue;
            }
            let canonical = (1..k)
                .permutations(k - 1)
                .map(|p| {
                    let mut perm = vec![0];
                    perm.extend(p);
                    let mut inv = vec![0; k];
                    for (i, &pi) in perm.iter().enumerate() {
                        inv[pi] = i;
                    }
                    (0..k).map(|a| (0..k).map(|b| perm[t[inv[a]][inv[b]]]).collect()).collect::<Vec<Vec<usize>>>()
                })
                .min()
                .expect("at least one relabelling");
            if !seen.contains(&canonical) {
                seen.push(canonical);
            }
        }
        for t in seen {
            let names: Vec<String> = (0..k).map(|i| if i == 0 { "1".to_string() } else { format!("m{i}") }).collect();
            let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
            out.push(FinCategory::monoid(&refs, &t).expect("associative table"));
        }
    }
    out
}
