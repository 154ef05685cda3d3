//! Hall algebras of quiver representations over finite fields, and derived
//! Hall numbers of bounded graded vector spaces.
//!
//! Isomorphism classes are found by exhaustive orbit enumeration: all tuples
//! of arrow matrices of a given dimension vector are listed in lexicographic
//! order and the product of general linear groups acts by
//! `(g_v) · A_α = g_t A_α g_s^{-1}`. The first tuple of every orbit is its
//! representative.

mod field;
mod graded;
mod text;
#[cfg(test)]
mod tests;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Mutex;

use itertools::Itertools;
use num::{BigInt, BigRational, One, Zero};

use crate::error::{Error, Result};

pub use field::{general_linear_group, gl_order, Field, Matrix, MAX_FIELD_ORDER};
pub use graded::{
    aut_order_graded, derived_associativity, derived_hall_number, derived_hall_product, hom_count, hom_count_with_cone,
    shift, GradedVect,
};
pub use text::{parse_graded, parse_quiver, parse_rep, write_quiver, write_rep};

/// Matrix tuples enumerated per dimension vector, at most.
pub const TUPLE_BUDGET: usize = 1 << 22;
/// Group elements applied during one classification, at most.
pub const ACTION_BUDGET: usize = 1 << 27;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(vertices: Vec<String>, arrows: Vec<(String, usize, usize)>) -> Result<Self> {
        if !vertices.iter().all_unique() {
            return Err(Error::invalid("duplicate vertex name"));
        }
        if !arrows.iter().map(|a| &a.0).all_unique() {
            return Err(Error::invalid("duplicate arrow name"));
        }
        let arrows = arrows
            .into_iter()
            .map(|(name, source, target)| {
                if source >= vertices.len() || target >= vertices.len() {
                    return Err(Error::invalid(format!("arrow `{name}` has an endpoint outside the vertex set")));
                }
                Ok(Arrow { name, source, target })
            })
            .collect::<Result<_>>()?;
        Ok(Quiver { vertices, arrows })
    }

    /// `1 -> 2 -> ... -> n`.
    pub fn linear_a(n: usize) -> Self {
        let vertices = (1..=n).map(|i| i.to_string()).collect();
        let arrows = (1..n).map(|i| (format!("a{i}"), i - 1, i)).collect();
        Self::new(vertices, arrows).expect("linear quiver is well formed")
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    /// Number of matrix entries of a representation.
    fn entries(&self, dims: &[usize]) -> usize {
        self.arrows.iter().map(|a| dims[a.source] * dims[a.target]).sum()
    }
}

/// A representation: one matrix `dims[target] × dims[source]` per arrow.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rep {
    pub q: usize,
    pub dims: Vec<usize>,
    pub matrices: Vec<Matrix>,
}

impl Rep {
    pub fn new(quiver: &Quiver, q: usize, dims: Vec<usize>, matrices: Vec<Matrix>) -> Result<Self> {
        if dims.len() != quiver.num_vertices() || matrices.len() != quiver.arrows.len() {
            return Err(Error::invalid("representation does not match the quiver"));
        }
        for (a, m) in quiver.arrows.iter().zip(&matrices) {
            if m.rows != dims[a.target] || m.cols != dims[a.source] {
                return Err(Error::invalid(format!("matrix of `{}` must be {}x{}", a.name, dims[a.target], dims[a.source])));
            }
            if m.data.iter().any(|&x| x as usize >= q) {
                return Err(Error::invalid(format!("matrix of `{}` has entries outside F_{q}", a.name)));
            }
        }
        Ok(Rep { q, dims, matrices })
    }

    pub fn zero(quiver: &Quiver, q: usize, dims: Vec<usize>) -> Self {
        let matrices = quiver.arrows.iter().map(|a| Matrix::zero(dims[a.target], dims[a.source])).collect();
        Rep { q, dims, matrices }
    }

    /// The `index`-th tuple of arrow matrices in lexicographic order.
    fn nth(quiver: &Quiver, q: usize, dims: &[usize], mut index: usize) -> Self {
        let mut matrices: Vec<Matrix> = Vec::with_capacity(quiver.arrows.len());
        let sizes: Vec<usize> = quiver.arrows.iter().map(|a| dims[a.source] * dims[a.target]).collect();
        let mut parts = vec![0; sizes.len()];
        for (k, &s) in sizes.iter().enumerate().rev() {
            let block = q.pow(s as u32);
            parts[k] = index % block;
            index /= block;
        }
        for (a, &part) in quiver.arrows.iter().zip(&parts) {
            matrices.push(Matrix::nth(dims[a.target], dims[a.source], q, part));
        }
        Rep { q, dims: dims.to_vec(), matrices }
    }

    /// Position in lexicographic order.
    fn index(&self) -> usize {
        self.matrices.iter().flat_map(|m| &m.data).fold(0, |acc, &x| acc * self.q + x as usize)
    }

    pub fn direct_sum(&self, quiver: &Quiver, other: &Rep) -> Result<Rep> {
        check_field(self.q, other.q)?;
        let dims: Vec<usize> = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let matrices = quiver
            .arrows
            .iter()
            .zip(self.matrices.iter().zip(&other.matrices))
            .map(|(a, (x, y))| {
                let mut m = Matrix::zero(dims[a.target], dims[a.source]);
                for r in 0..x.rows {
                    for c in 0..x.cols {
                        m.data[r * m.cols + c] = x.get(r, c);
                    }
                }
                for r in 0..y.rows {
                    for c in 0..y.cols {
                        m.data[(x.rows + r) * m.cols + x.cols + c] = y.get(r, c);
                    }
                }
                m
            })
            .collect();
        Ok(Rep { q: self.q, dims, matrices })
    }

    fn act(&self, f: &Field, quiver: &Quiver, g: &[&(Matrix, Matrix)]) -> Rep {
        let matrices = quiver
            .arrows
            .iter()
            .zip(&self.matrices)
            .map(|(a, m)| g[a.target].0.mul(f, m).mul(f, &g[a.source].1))
            .collect();
        Rep { q: self.q, dims: self.dims.clone(), matrices }
    }
}

fn check_field(a: usize, b: usize) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::FieldMismatch(format!("F_{a} against F_{b}")))
    }
}

fn dims_total(dims: &[usize]) -> usize {
    dims.iter().sum()
}

/// The product `∏_v GL_{d_v}(F_q)` as tuples of (matrix, inverse).
struct GroupProduct {
    factors: Vec<Vec<(Matrix, Matrix)>>,
}

impl GroupProduct {
    fn new(f: &Field, dims: &[usize]) -> Self {
        GroupProduct { factors: dims.iter().map(|&d| general_linear_group(f, d)).collect() }
    }

    fn order(&self) -> usize {
        self.factors.iter().map(Vec::len).product()
    }

    fn elements(&self) -> impl Iterator<Item = Vec<&(Matrix, Matrix)>> + '_ {
        self.factors.iter().map(|f| f.iter()).multi_cartesian_product()
    }
}

/// Morphisms `X -> Y`: families `φ_v : X_v -> Y_v` with `Y_α φ_s = φ_t X_α`.
pub fn homomorphisms(f: &Field, quiver: &Quiver, x: &Rep, y: &Rep) -> Result<Vec<Vec<Matrix>>> {
    check_field(x.q, y.q)?;
    let q = f.order();
    let shapes: Vec<(usize, usize)> = x.dims.iter().zip(&y.dims).map(|(&dx, &dy)| (dy, dx)).collect();
    let entries: usize = shapes.iter().map(|(r, c)| r * c).sum();
    let total = q.checked_pow(entries as u32).filter(|&t| t <= TUPLE_BUDGET).ok_or_else(|| {
        Error::resource("homomorphism enumeration", format!("{q}^{entries} candidate families exceed {TUPLE_BUDGET}"))
    })?;
    let mut out = Vec::new();
    'outer: for mut index in 0..total {
        let mut family = Vec::with_capacity(shapes.len());
        for &(r, c) in shapes.iter().rev() {
            let block = q.pow((r * c) as u32);
            family.push(Matrix::nth(r, c, q, index % block));
            index /= block;
        }
        family.reverse();
        for (a, (mx, my)) in quiver.arrows.iter().zip(x.matrices.iter().zip(&y.matrices)) {
            if my.mul(f, &family[a.source]) != family[a.target].mul(f, mx) {
                continue 'outer;
            }
        }
        out.push(family);
    }
    Ok(out)
}

/// `|Aut(X)|`, counted by enumerating the group and keeping the stabilizer.
pub fn aut_order(f: &Field, quiver: &Quiver, x: &Rep) -> u128 {
    let g = GroupProduct::new(f, &x.dims);
    let mut count = 0u128;
    for e in g.elements() {
        if x.act(f, quiver, &e) == *x {
            count += 1;
        }
    }
    count
}

/// `|{0 -> X -> Z -> Y -> 0}|`: pairs of a monomorphism `i` and an
/// epimorphism `p` with `p∘i = 0`. Exactness in the middle follows from the
/// dimension count, which is checked first (otherwise the answer is 0).
pub fn ses_count(f: &Field, quiver: &Quiver, x: &Rep, z: &Rep, y: &Rep) -> Result<u128> {
    check_field(x.q, z.q)?;
    check_field(z.q, y.q)?;
    if (0..z.dims.len()).any(|v| z.dims[v] != x.dims[v] + y.dims[v]) {
        return Ok(0);
    }
    let monos: Vec<Vec<Matrix>> = homomorphisms(f, quiver, x, z)?
        .into_iter()
        .filter(|i| i.iter().zip(&x.dims).all(|(m, &d)| m.rank(f) == d))
        .collect();
    let epis: Vec<Vec<Matrix>> = homomorphisms(f, quiver, z, y)?
        .into_iter()
        .filter(|p| p.iter().zip(&y.dims).all(|(m, &d)| m.rank(f) == d))
        .collect();
    let mut count = 0u128;
    for i in &monos {
        for p in &epis {
            if p.iter().zip(i).all(|(pv, iv)| pv.mul(f, iv).is_zero()) {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// `g^Z_{X,Y} = |{0 -> X -> Z -> Y -> 0}| / (|Aut X| |Aut Y|)`.
pub fn hall_number(quiver: &Quiver, x: &Rep, y: &Rep, z: &Rep) -> Result<BigRational> {
    let f = Field::new(x.q)?;
    let count = ses_count(&f, quiver, x, z, y)?;
    if count == 0 {
        return Ok(BigRational::zero());
    }
    let denom = aut_order(&f, quiver, x) * aut_order(&f, quiver, y);
    Ok(BigRational::new(BigInt::from(count), BigInt::from(denom)))
}

/// An isomorphism class in an [`IsoClassTable`]: its dimension vector and
/// position among the classes of that dimension vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassId {
    pub dims: Vec<usize>,
    pub index: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoClass {
    pub representative: Rep,
    pub aut_order: u128,
}

#[derive(Clone, Debug)]
struct DimEntry {
    classes: Vec<IsoClass>,
    /// Class index of every matrix tuple, by lexicographic position.
    class_of: Vec<u32>,
    group_order: u128,
}

/// Isomorphism classes for every dimension vector below a bound.
#[derive(Debug)]
pub struct IsoClassTable {
    quiver: Quiver,
    field: Field,
    bound: Vec<usize>,
    entries: BTreeMap<Vec<usize>, DimEntry>,
    numbers: Mutex<HashMap<(ClassId, ClassId, ClassId), BigRational>>,
}

fn classify(f: &Field, quiver: &Quiver, dims: &[usize]) -> Result<DimEntry> {
    let q = f.order();
    let n = quiver.entries(dims);
    let total = q
        .checked_pow(n as u32)
        .filter(|&t| t <= TUPLE_BUDGET)
        .ok_or_else(|| Error::resource("representation tuples", format!("{q}^{n} tuples exceed {TUPLE_BUDGET}")))?;
    let group = GroupProduct::new(f, dims);
    let mut class_of = vec![u32::MAX; total];
    let mut classes: Vec<IsoClass> = Vec::new();
    let mut work = 0usize;
    for index in 0..total {
        if class_of[index] != u32::MAX {
            continue;
        }
        let id = classes.len() as u32;
        let rep = Rep::nth(quiver, q, dims, index);
        let mut stabilizer = 0u128;
        for g in group.elements() {
            let image = rep.act(f, quiver, &g);
            let j = image.index();
            class_of[j] = id;
            if j == index {
                stabilizer += 1;
            }
        }
        work += group.order();
        if work > ACTION_BUDGET {
            return Err(Error::resource("group action", format!("more than {ACTION_BUDGET} group applications")));
        }
        classes.push(IsoClass { representative: rep, aut_order: stabilizer });
    }
    Ok(DimEntry { classes, class_of, group_order: group.order() as u128 })
}

/// All isomorphism classes of representations of `quiver` over `F_q` with
/// the given dimension vector.
pub fn enumerate_reps(quiver: &Quiver, q: usize, dims: &[usize]) -> Result<IsoClassTable> {
    IsoClassTable::build_for(quiver, q, dims.to_vec(), vec![dims.to_vec()])
}

impl IsoClassTable {
    /// Classes for every dimension vector `d <= bound` componentwise.
    pub fn build(quiver: &Quiver, q: usize, bound: &[usize]) -> Result<Self> {
        if bound.len() != quiver.num_vertices() {
            return Err(Error::invalid("bound must give one dimension per vertex"));
        }
        let all = bound.iter().map(|&b| 0..=b).multi_cartesian_product().collect();
        Self::build_for(quiver, q, bound.to_vec(), all)
    }

    fn build_for(quiver: &Quiver, q: usize, bound: Vec<usize>, dims: Vec<Vec<usize>>) -> Result<Self> {
        if bound.len() != quiver.num_vertices() {
            return Err(Error::invalid("dimension vector must give one dimension per vertex"));
        }
        let field = Field::new(q)?;
        let entries = dims.into_iter().map(|d| Ok((d.clone(), classify(&field, quiver, &d)?))).collect::<Result<_>>()?;
        Ok(IsoClassTable { quiver: quiver.clone(), field, bound, entries, numbers: Mutex::new(HashMap::new()) })
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn q(&self) -> usize {
        self.field.order()
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn bound(&self) -> &[usize] {
        &self.bound
    }

    pub fn dimension_vectors(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.entries.keys()
    }

    pub fn classes(&self, dims: &[usize]) -> Option<&[IsoClass]> {
        self.entries.get(dims).map(|e| e.classes.as_slice())
    }

    pub fn class(&self, id: &ClassId) -> &IsoClass {
        &self.entries[&id.dims].classes[id.index]
    }

    /// Every class, ordered by dimension vector and then index.
    pub fn class_ids(&self) -> Vec<ClassId> {
        self.entries
            .iter()
            .flat_map(|(d, e)| (0..e.classes.len()).map(move |index| ClassId { dims: d.clone(), index }))
            .collect()
    }

    pub fn group_order(&self, dims: &[usize]) -> Option<u128> {
        self.entries.get(dims).map(|e| e.group_order)
    }

    fn entry(&self, dims: &[usize]) -> Result<&DimEntry> {
        self.entries.get(dims).ok_or_else(|| {
            Error::invalid(format!("class table does not cover dimension vector ({})", dims.iter().join(",")))
        })
    }

    pub fn class_of(&self, rep: &Rep) -> Result<ClassId> {
        check_field(rep.q, self.q())?;
        let e = self.entry(&rep.dims)?;
        Ok(ClassId { dims: rep.dims.clone(), index: e.class_of[rep.index()] as usize })
    }

    /// `"1,1"`, with a `#k` suffix when the dimension vector has more than
    /// one class.
    pub fn label(&self, id: &ClassId) -> String {
        let base = id.dims.iter().join(",");
        match self.entries.get(&id.dims) {
            Some(e) if e.classes.len() > 1 => format!("{base}#{}", id.index),
            _ => base,
        }
    }

    /// Hall number between classes, cached.
    pub fn hall_number(&self, x: &ClassId, y: &ClassId, z: &ClassId) -> Result<BigRational> {
        let key = (x.clone(), y.clone(), z.clone());
        if let Some(v) = self.numbers.lock().expect("cache lock").get(&key) {
            return Ok(v.clone());
        }
        let (cx, cy, cz) = (self.class(x), self.class(y), self.class(z));
        let count = ses_count(&self.field, &self.quiver, &cx.representative, &cz.representative, &cy.representative)?;
        let value = BigRational::new(BigInt::from(count), BigInt::from(cx.aut_order * cy.aut_order));
        self.numbers.lock().expect("cache lock").insert(key, value.clone());
        Ok(value)
    }

    /// Classes splitting as a direct sum of two nonzero classes in the table.
    pub fn is_decomposable(&self, id: &ClassId) -> Result<bool> {
        let rep = &self.class(id).representative;
        for a in self.class_ids() {
            let rest: Vec<usize> = match id.dims.iter().zip(&a.dims).map(|(&d, &e)| d.checked_sub(e)).collect() {
                Some(r) => r,
                None => continue,
            };
            if dims_total(&a.dims) == 0 || dims_total(&rest) == 0 {
                continue;
            }
            for index in 0..self.entry(&rest)?.classes.len() {
                let b = ClassId { dims: rest.clone(), index };
                let sum = self.class(&a).representative.direct_sum(&self.quiver, &self.class(&b).representative)?;
                if self.class_of(&sum)? == self.class_of(rep)? {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }
}

/// A finite formal combination `Σ c·[K]` with exact rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HallProduct<K: Ord> {
    pub terms: BTreeMap<K, BigRational>,
}

impl<K: Ord + Clone> HallProduct<K> {
    pub fn zero() -> Self {
        HallProduct { terms: BTreeMap::new() }
    }

    pub fn basis(k: K) -> Self {
        HallProduct { terms: BTreeMap::from([(k, BigRational::one())]) }
    }

    pub fn add_term(&mut self, k: K, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(k.clone()).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn coefficient(&self, k: &K) -> BigRational {
        self.terms.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn render(&self, label: impl Fn(&K) -> String) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(k, c)| if c.is_one() { format!("[{}]", label(k)) } else { format!("{c}·[{}]", label(k)) })
            .join(" + ")
    }
}

impl<K: Ord + Clone + fmt::Display> fmt::Display for HallProduct<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(|k| k.to_string()))
    }
}

fn add(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// `[X]·[Y] = Σ_Z g^Z_{X,Y} [Z]`.
pub fn hall_product(x: &ClassId, y: &ClassId, table: &IsoClassTable) -> Result<HallProduct<ClassId>> {
    let dims = add(&x.dims, &y.dims);
    let entry = table.entry(&dims)?;
    let mut out = HallProduct::zero();
    for index in 0..entry.classes.len() {
        let z = ClassId { dims: dims.clone(), index };
        let g = table.hall_number(x, y, &z)?;
        out.add_term(z, g);
    }
    Ok(out)
}

fn multiply(a: &HallProduct<ClassId>, b: &HallProduct<ClassId>, table: &IsoClassTable) -> Result<HallProduct<ClassId>> {
    let mut out = HallProduct::zero();
    for (x, cx) in &a.terms {
        for (y, cy) in &b.terms {
            for (z, g) in hall_product(x, y, table)?.terms {
                out.add_term(z, cx * cy * g);
            }
        }
    }
    Ok(out)
}

/// A triple on which `([X][Y])[W]` and `[X]([Y][W])` differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssociativityFailure<K: Ord> {
    pub triple: (K, K, K),
    pub left: HallProduct<K>,
    pub right: HallProduct<K>,
}

/// Compares both bracketings for every triple of classes whose dimension
/// vectors sum to at most `bound`. Returns the failures (empty when
/// associative) and the number of triples checked.
pub fn hall_associativity(table: &IsoClassTable, bound: &[usize]) -> Result<(Vec<AssociativityFailure<ClassId>>, usize)> {
    if bound.iter().zip(table.bound()).any(|(b, t)| b > t) || bound.len() != table.bound().len() {
        return Err(Error::invalid("associativity bound exceeds the class table"));
    }
    let ids = table.class_ids();
    let fits = |d: &[usize]| d.iter().zip(bound).all(|(a, b)| a <= b);
    let mut failures = Vec::new();
    let mut checked = 0;
    for x in &ids {
        for y in &ids {
            for w in &ids {
                if !fits(&add(&add(&x.dims, &y.dims), &w.dims)) {
                    continue;
                }
                checked += 1;
                let left = multiply(&hall_product(x, y, table)?, &HallProduct::basis(w.clone()), table)?;
                let right = multiply(&HallProduct::basis(x.clone()), &hall_product(y, w, table)?, table)?;
                if left != right {
                    failures.push(AssociativityFailure { triple: (x.clone(), y.clone(), w.clone()), left, right });
                }
            }
        }
    }
    Ok((failures, checked))
}
