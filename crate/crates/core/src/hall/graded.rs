//! Bounded graded vector spaces over `F_q`, the semisimple model of a
//! derived category. Morphisms are degreewise linear maps, `x[1]_k =
//! x_{k+1}`, and `cone(f) = coker(f) ⊕ ker(f)[1]`.

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;
use num::{BigInt, BigRational, One, Zero};

use super::field::gl_order;
use super::{AssociativityFailure, HallProduct};
use crate::error::{Error, Result};

/// Finitely supported dimensions `k -> dim x_k` inside a window `lo..=hi`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GradedVect {
    q: usize,
    window: (i64, i64),
    dims: BTreeMap<i64, usize>,
}

impl GradedVect {
    pub fn new(q: usize, window: (i64, i64), dims: &[(i64, usize)]) -> Result<Self> {
        if window.0 > window.1 {
            return Err(Error::invalid(format!("empty window {}..{}", window.0, window.1)));
        }
        let mut map = BTreeMap::new();
        for &(k, d) in dims {
            if k < window.0 || k > window.1 {
                return Err(Error::invalid(format!("degree {k} lies outside the window {}..{}", window.0, window.1)));
            }
            if d > 0 {
                *map.entry(k).or_insert(0) += d;
            }
        }
        Ok(GradedVect { q, window, dims: map })
    }

    pub fn zero(q: usize, window: (i64, i64)) -> Self {
        GradedVect { q, window, dims: BTreeMap::new() }
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn window(&self) -> (i64, i64) {
        self.window
    }

    pub fn dim(&self, k: i64) -> usize {
        self.dims.get(&k).copied().unwrap_or(0)
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }

    pub fn support(&self) -> impl Iterator<Item = i64> + '_ {
        self.dims.keys().copied()
    }

    /// Degreewise equality, ignoring windows.
    pub fn same_dims(&self, other: &Self) -> bool {
        self.dims == other.dims
    }

    /// Every graded space in `window` of total dimension at most `bound`.
    pub fn all(q: usize, window: (i64, i64), bound: usize) -> Vec<Self> {
        let degrees: Vec<i64> = (window.0..=window.1).collect();
        degrees
            .iter()
            .map(|_| 0..=bound)
            .multi_cartesian_product()
            .filter(|d| d.iter().sum::<usize>() <= bound)
            .map(|d| {
                let pairs: Vec<(i64, usize)> = degrees.iter().copied().zip(d).collect();
                GradedVect::new(q, window, &pairs).expect("degrees lie in the window")
            })
            .collect()
    }
}

impl fmt::Display for GradedVect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.dims.is_empty() {
            return f.write_str("0");
        }
        write!(f, "{}", self.dims.iter().map(|(k, d)| format!("{d}@{k}")).join("+"))
    }
}

fn check_field(a: &GradedVect, b: &GradedVect) -> Result<()> {
    if a.q == b.q {
        Ok(())
    } else {
        Err(Error::FieldMismatch(format!("F_{} against F_{}", a.q, b.q)))
    }
}

/// `x[i]`, with `x[i]_k = x_{k+i}`; the window moves along.
pub fn shift(x: &GradedVect, i: i64) -> GradedVect {
    GradedVect {
        q: x.q,
        window: (x.window.0 - i, x.window.1 - i),
        dims: x.dims.iter().map(|(&k, &d)| (k - i, d)).collect(),
    }
}

fn pow(q: usize, e: usize) -> BigInt {
    num::pow(BigInt::from(q), e)
}

/// `|[x, z]| = q^(Σ_k x_k z_k)`.
pub fn hom_count(x: &GradedVect, z: &GradedVect) -> Result<BigInt> {
    check_field(x, z)?;
    Ok(pow(x.q, x.dims.iter().map(|(k, d)| d * z.dim(*k)).sum()))
}

/// Number of `a -> b` linear maps of rank `r` over `F_q`:
/// `∏_{i<r} (q^a − q^i)(q^b − q^i) / (q^r − q^i)`.
fn rank_count(q: usize, a: usize, b: usize, r: usize) -> BigInt {
    if r > a.min(b) {
        return BigInt::zero();
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..r {
        num *= (pow(q, a) - pow(q, i)) * (pow(q, b) - pow(q, i));
        den *= pow(q, r) - pow(q, i);
    }
    num / den
}

/// Maps `x -> z` whose cone has the degreewise dimensions of `y`. A map of
/// degreewise ranks `r` has cone dimensions `z_k − r_k + x_{k+1} − r_{k+1}`.
pub fn hom_count_with_cone(x: &GradedVect, z: &GradedVect, y: &GradedVect) -> Result<BigInt> {
    check_field(x, z)?;
    check_field(x, y)?;
    let degrees: Vec<i64> = x.support().filter(|&k| z.dim(k) > 0).collect();
    let mut relevant: Vec<i64> = x.support().chain(z.support()).chain(y.support()).flat_map(|k| [k - 1, k]).collect();
    relevant.sort_unstable();
    relevant.dedup();
    let mut total = BigInt::zero();
    for ranks in degrees.iter().map(|&k| 0..=x.dim(k).min(z.dim(k))).multi_cartesian_product() {
        let r = |k: i64| degrees.iter().position(|&d| d == k).map_or(0, |p| ranks[p]);
        let matches = relevant.iter().all(|&k| z.dim(k) - r(k) + x.dim(k + 1) - r(k + 1) == y.dim(k));
        if matches {
            total += degrees.iter().zip(&ranks).map(|(&k, &rk)| rank_count(x.q, x.dim(k), z.dim(k), rk)).product::<BigInt>();
        }
    }
    Ok(total)
}

/// `|Aut(x)| = ∏_k |GL_{x_k}(F_q)|`.
pub fn aut_order_graded(x: &GradedVect) -> BigInt {
    x.dims.values().map(|&d| BigInt::from(gl_order(d, x.q))).product()
}

/// Range of `i > 0` for which `[a, b[−i]]` can be nontrivial.
fn shift_range(a: &GradedVect, b: &GradedVect) -> Option<std::ops::RangeInclusive<i64>> {
    let (amin, bmax) = a.support().min().zip(b.support().max())?;
    let amax = a.support().max().expect("nonempty");
    let bmin = b.support().min().expect("nonempty");
    Some(1.max(amin - bmax)..=(amax - bmin).max(0))
}

/// `∏_{i>0} |[a, b[−i]]|^{(−1)^i}`.
fn alternating_factor(a: &GradedVect, b: &GradedVect) -> Result<BigRational> {
    let mut out = BigRational::one();
    for i in shift_range(a, b).into_iter().flatten() {
        let h = BigRational::from_integer(hom_count(a, &shift(b, -i))?);
        if i % 2 == 0 {
            out *= h;
        } else {
            out /= h;
        }
    }
    Ok(out)
}

/// `g^z_{x,y} = |[x,z]_y| ∏_{i>0} |[x, z[−i]]|^{(−1)^i} / (|Aut x| ∏_{i>0} |[x, x[−i]]|^{(−1)^i})`.
pub fn derived_hall_number(x: &GradedVect, y: &GradedVect, z: &GradedVect) -> Result<BigRational> {
    check_field(x, y)?;
    check_field(x, z)?;
    let cone = hom_count_with_cone(x, z, y)?;
    if cone.is_zero() {
        return Ok(BigRational::zero());
    }
    let numerator = BigRational::from_integer(cone) * alternating_factor(x, z)?;
    let denominator = BigRational::from_integer(aut_order_graded(x)) * alternating_factor(x, x)?;
    Ok(numerator / denominator)
}

/// `[x]·[y] = Σ_z g^z_{x,y} [z]`. Only `z` with `z_k <= x_k + y_k` can have
/// a map from `x` with cone `y`, so the sum is finite.
pub fn derived_hall_product(x: &GradedVect, y: &GradedVect) -> Result<HallProduct<GradedVect>> {
    check_field(x, y)?;
    let window = (x.window.0.min(y.window.0), x.window.1.max(y.window.1));
    let degrees: Vec<i64> = x.support().chain(y.support()).sorted().dedup().collect();
    let mut out = HallProduct::zero();
    for dims in degrees.iter().map(|&k| 0..=x.dim(k) + y.dim(k)).multi_cartesian_product() {
        let pairs: Vec<(i64, usize)> = degrees.iter().copied().zip(dims).collect();
        let z = GradedVect::new(x.q, window, &pairs)?;
        let g = derived_hall_number(x, y, &z)?;
        out.add_term(canonical(&z), g);
    }
    Ok(out)
}

/// Classes are compared by dimensions only, so products use the tightest
/// window.
fn canonical(x: &GradedVect) -> GradedVect {
    let window = x.support().min().zip(x.support().max()).unwrap_or((0, 0));
    GradedVect { q: x.q, window, dims: x.dims.clone() }
}

fn multiply(a: &HallProduct<GradedVect>, b: &HallProduct<GradedVect>) -> Result<HallProduct<GradedVect>> {
    let mut out = HallProduct::zero();
    for (x, cx) in &a.terms {
        for (y, cy) in &b.terms {
            for (z, g) in derived_hall_product(x, y)?.terms {
                out.add_term(z, cx * cy * g);
            }
        }
    }
    Ok(out)
}

/// Both bracketings for every triple of graded spaces in `window` whose
/// total dimensions sum to at most `bound`. Returns failures and the number
/// of triples checked.
pub fn derived_associativity(q: usize, window: (i64, i64), bound: usize) -> Result<(Vec<AssociativityFailure<GradedVect>>, usize)> {
    let objects: Vec<GradedVect> = GradedVect::all(q, window, bound).iter().map(canonical).collect();
    let mut failures = Vec::new();
    let mut checked = 0;
    for x in &objects {
        for y in &objects {
            for w in &objects {
                if x.total_dim() + y.total_dim() + w.total_dim() > bound {
                    continue;
                }
                checked += 1;
                let left = multiply(&derived_hall_product(x, y)?, &HallProduct::basis(w.clone()))?;
                let right = multiply(&HallProduct::basis(x.clone()), &derived_hall_product(y, w)?)?;
                if left != right {
                    failures.push(AssociativityFailure { triple: (x.clone(), y.clone(), w.clone()), left, right });
                }
            }
        }
    }
    Ok((failures, checked))
}
