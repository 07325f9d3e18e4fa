//! The orientable torsion-free theory: alternating integral 3-forms.
//!
//! For `H ≅ ℤ^β` and an alternating form `μ` on `H* = Hom(H, ℤ)`, the ring
//! `ℋ*(H, μ)` has `ℋ⁰ = ℤ`, `ℋ¹ = H*`, `ℋ² = H`, `ℋ³ = ℤ·ε₃`, with
//! `t(rs) = μ(r, s, t)` for degree-1 `r, s, t` and `r·h = r(h)ε₃`.
//! Surgery on a link whose 3-component sublinks are trivial or copies of
//! Bo(n) (Borromean rings with one component cabled) realizes the form
//! `Σ n·e_{ijk}`, one term per Bo(n) sublink.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Strictly increasing triples `i < j < k < beta` in lexicographic order.
pub fn strict_triples(beta: usize) -> impl Iterator<Item = [usize; 3]> {
    (0..beta)
        .flat_map(move |i| (i + 1..beta).flat_map(move |j| (j + 1..beta).map(move |k| [i, j, k])))
}

fn triple_index(beta: usize, [i, j, k]: [usize; 3]) -> usize {
    strict_triples(beta)
        .position(|t| t == [i, j, k])
        .expect("triple in range")
}

/// Sorts a triple of distinct indices, returning the permutation sign.
fn sort_with_sign(mut t: [usize; 3]) -> Option<([usize; 3], i64)> {
    if t[0] == t[1] || t[1] == t[2] || t[0] == t[2] {
        return None;
    }
    let mut sign = 1;
    for (a, b) in [(0, 1), (1, 2), (0, 1)] {
        if t[a] > t[b] {
            t.swap(a, b);
            sign = -sign;
        }
    }
    Some((t, sign))
}

#[inline]
fn reduce(x: i64, modulus: u64) -> i64 {
    if modulus == 0 {
        x
    } else {
        x.rem_euclid(modulus as i64)
    }
}

/// An alternating trilinear form on ℤ^β (or F_p^β), one coefficient per
/// strictly increasing triple.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AltForm {
    beta: usize,
    coeffs: Vec<i64>,
}

impl AltForm {
    pub fn zero(beta: usize) -> Self {
        let len = strict_triples(beta).count();
        AltForm {
            beta,
            coeffs: alloc::vec![0; len],
        }
    }

    /// Sum of `n · e_i ∧ e_j ∧ e_k` over the given terms (0-based, any
    /// order; odd permutations flip the sign).
    pub fn from_terms(beta: usize, terms: &[([usize; 3], i64)]) -> Result<Self> {
        let mut mu = AltForm::zero(beta);
        for &(t, n) in terms {
            if let Some(&bad) = t.iter().find(|&&i| i >= beta) {
                return Err(Error::IndexOutOfRange {
                    index: bad,
                    bound: beta,
                });
            }
            let (sorted, sign) =
                sort_with_sign(t).ok_or(Error::InvalidIntegral("repeated index in 3-form term"))?;
            mu.coeffs[triple_index(beta, sorted)] += sign * n;
        }
        Ok(mu)
    }

    #[inline]
    pub fn beta(&self) -> usize {
        self.beta
    }

    /// `μ(e_i, e_j, e_k)` for indices in any order.
    pub fn get(&self, i: usize, j: usize, k: usize) -> i64 {
        match sort_with_sign([i, j, k]) {
            None => 0,
            Some((t, sign)) => sign * self.coeffs[triple_index(self.beta, t)],
        }
    }

    /// Nonzero coefficients by increasing triple.
    pub fn terms(&self) -> Vec<([usize; 3], i64)> {
        strict_triples(self.beta)
            .zip(&self.coeffs)
            .filter(|&(_, &c)| c != 0)
            .map(|(t, &c)| (t, c))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// `Σ_{i<j<k} μ_{ijk} · det` of the 3×3 minor of `(x, y, z)` on rows
    /// `i, j, k`.
    pub fn eval(&self, x: &[i64], y: &[i64], z: &[i64]) -> Result<i64> {
        for v in [x, y, z] {
            if v.len() != self.beta {
                return Err(Error::DimensionMismatch {
                    expected: self.beta,
                    found: v.len(),
                });
            }
        }
        Ok(strict_triples(self.beta)
            .zip(&self.coeffs)
            .filter(|&(_, &c)| c != 0)
            .map(|([i, j, k], &c)| {
                let det = x[i] * (y[j] * z[k] - y[k] * z[j]) - y[i] * (x[j] * z[k] - x[k] * z[j])
                    + z[i] * (x[j] * y[k] - x[k] * y[j]);
                c * det
            })
            .sum())
    }

    /// Coefficients reduced into `0..p`.
    pub fn reduce_mod(&self, p: u64) -> AltForm {
        AltForm {
            beta: self.beta,
            coeffs: self.coeffs.iter().map(|&c| reduce(c, p)).collect(),
        }
    }

    /// `μ′(x, y, z) = μ(gx, gy, gz)` with coefficients reduced mod `p`
    /// (`p = 0` keeps integers). `g` is given by its columns.
    pub fn pullback(&self, columns: &[Vec<i64>], p: u64) -> Result<AltForm> {
        if columns.len() != self.beta {
            return Err(Error::DimensionMismatch {
                expected: self.beta,
                found: columns.len(),
            });
        }
        let coeffs = strict_triples(self.beta)
            .map(|[i, j, k]| {
                self.eval(&columns[i], &columns[j], &columns[k])
                    .map(|v| reduce(v, p))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(AltForm {
            beta: self.beta,
            coeffs,
        })
    }
}

/// A Bo(n) sublink on components `i < j < k` (0-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BoTriple {
    pub triple: [usize; 3],
    pub n: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BoPlan {
    pub m: usize,
    pub triples: Vec<BoTriple>,
}

impl BoPlan {
    pub fn validate(&self) -> Result<()> {
        let mut seen = BTreeSet::new();
        for t in &self.triples {
            let [i, j, k] = t.triple;
            if !(i < j && j < k) {
                return Err(Error::InvalidIntegral("Bo triple indices must increase"));
            }
            if k >= self.m {
                return Err(Error::IndexOutOfRange {
                    index: k,
                    bound: self.m,
                });
            }
            if !seen.insert(t.triple) {
                return Err(Error::InvalidIntegral("more than one Bo record per triple"));
            }
        }
        Ok(())
    }
}

/// The 3-form of surgery on a Bo-plan: `n · e_{ijk}` per record. A negative
/// `n` stands for the cable with reversed orientation.
pub fn mu_of_boplan(p: &BoPlan) -> Result<AltForm> {
    p.validate()?;
    let terms: Vec<_> = p.triples.iter().map(|t| (t.triple, t.n)).collect();
    AltForm::from_terms(p.m, &terms)
}

/// One Bo(n) record per nonzero coefficient.
pub fn realize_integral(mu: &AltForm) -> BoPlan {
    BoPlan {
        m: mu.beta(),
        triples: mu
            .terms()
            .into_iter()
            .map(|(triple, n)| BoTriple { triple, n })
            .collect(),
    }
}

/// A homogeneous-by-parts element of `ℋ*(H, μ)`: coordinates in degrees
/// 0..=3 against the bases `1`, `e_i*`, `e_i`, `ε₃`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingElement {
    pub parts: [Vec<i64>; 4],
}

impl RingElement {
    pub fn zero(beta: usize) -> Self {
        RingElement {
            parts: [
                alloc::vec![0],
                alloc::vec![0; beta],
                alloc::vec![0; beta],
                alloc::vec![0],
            ],
        }
    }

    /// The `i`-th basis element of degree `degree`.
    pub fn basis(beta: usize, degree: usize, i: usize) -> Self {
        let mut e = RingElement::zero(beta);
        e.parts[degree][i] = 1;
        e
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(|p| p.iter().all(|&c| c == 0))
    }

    fn scale(&self, s: i64) -> Self {
        RingElement {
            parts: self
                .parts
                .clone()
                .map(|p| p.into_iter().map(|c| c * s).collect()),
        }
    }
}

/// Multiplication tables of `ℋ*(H, μ)` over ℤ (`modulus = 0`) or ℤ/p.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedRing {
    pub beta: usize,
    pub modulus: u64,
    /// `deg11[a][b]`: the product `e_a* · e_b*` in `ℋ² = H`.
    pub deg11: Vec<Vec<Vec<i64>>>,
}

/// Name of the top-degree generator in serialized output.
pub const TOP_CLASS: &str = "ε₃";

pub fn build_ring(mu: &AltForm) -> GradedRing {
    build_ring_mod(mu, 0)
}

pub fn build_ring_mod(mu: &AltForm, modulus: u64) -> GradedRing {
    let b = mu.beta();
    let deg11 = (0..b)
        .map(|r| {
            (0..b)
                .map(|s| (0..b).map(|t| reduce(mu.get(r, s, t), modulus)).collect())
                .collect()
        })
        .collect();
    GradedRing {
        beta: b,
        modulus,
        deg11,
    }
}

impl GradedRing {
    pub fn mul(&self, x: &RingElement, y: &RingElement) -> RingElement {
        let b = self.beta;
        let mut out = RingElement::zero(b);
        for dx in 0..4 {
            for dy in 0..4 - dx {
                for (i, &cx) in x.parts[dx].iter().enumerate() {
                    if cx == 0 {
                        continue;
                    }
                    for (j, &cy) in y.parts[dy].iter().enumerate() {
                        if cy == 0 {
                            continue;
                        }
                        self.add_basis_product(&mut out, dx, i, dy, j, cx * cy);
                    }
                }
            }
        }
        for part in &mut out.parts {
            for c in part.iter_mut() {
                *c = reduce(*c, self.modulus);
            }
        }
        out
    }

    fn add_basis_product(
        &self,
        out: &mut RingElement,
        dx: usize,
        i: usize,
        dy: usize,
        j: usize,
        coeff: i64,
    ) {
        match (dx, dy) {
            (0, d) => out.parts[d][j] += coeff,
            (d, 0) => out.parts[d][i] += coeff,
            (1, 1) => {
                for (t, &c) in self.deg11[i][j].iter().enumerate() {
                    out.parts[2][t] += coeff * c;
                }
            }
            // r·h = r(h)ε₃ = h·r
            (1, 2) | (2, 1) if i == j => out.parts[3][0] += coeff,
            _ => {}
        }
    }

    /// Degree of a homogeneous element, `None` for zero or mixed elements.
    pub fn degree(x: &RingElement) -> Option<usize> {
        let nonzero: Vec<usize> = (0..4)
            .filter(|&d| x.parts[d].iter().any(|&c| c != 0))
            .collect();
        (nonzero.len() == 1).then(|| nonzero[0])
    }

    /// Every basis element of every degree.
    pub fn basis(&self) -> Vec<(usize, RingElement)> {
        let dims = [1, self.beta, self.beta, 1];
        (0..4)
            .flat_map(|d| (0..dims[d]).map(move |i| (d, i)))
            .map(|(d, i)| (d, RingElement::basis(self.beta, d, i)))
            .collect()
    }

    /// Checks `(xy)z = x(yz)` on all basis triples.
    pub fn is_associative(&self) -> bool {
        let basis = self.basis();
        basis.iter().all(|(_, x)| {
            basis.iter().all(|(_, y)| {
                let xy = self.mul(x, y);
                basis
                    .iter()
                    .all(|(_, z)| self.mul(&xy, z) == self.mul(x, &self.mul(y, z)))
            })
        })
    }

    /// Checks `xy = (−1)^{|x||y|} yx` on all basis pairs.
    pub fn is_graded_commutative(&self) -> bool {
        let basis = self.basis();
        basis.iter().all(|(dx, x)| {
            basis.iter().all(|(dy, y)| {
                let sign = if (dx * dy) % 2 == 1 { -1 } else { 1 };
                let lhs = self.mul(x, y);
                let rhs = self.mul(y, x).scale(sign);
                let rhs = RingElement {
                    parts: rhs
                        .parts
                        .map(|p| p.into_iter().map(|c| reduce(c, self.modulus)).collect()),
                };
                lhs == rhs
            })
        })
    }
}

/// GL(β, F_p)-equivalence class of a 3-form for `β ≤ 5`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StandardClass {
    Zero,
    /// Equivalent to `e₁₂₃`.
    SingleBlock,
    /// Equivalent to `e₁₂₃ + e₁₄₅`.
    DoubleBlock,
}

impl StandardClass {
    pub fn label(self) -> &'static str {
        match self {
            StandardClass::Zero => "zero",
            StandardClass::SingleBlock => "single-block",
            StandardClass::DoubleBlock => "double-block",
        }
    }
}

fn check_prime(p: u64) -> Result<()> {
    if matches!(p, 3 | 5) {
        Ok(())
    } else {
        Err(Error::UnsupportedModulus(p))
    }
}

fn inv_mod(a: i64, p: i64) -> i64 {
    // Fermat: a^(p−2)
    let mut result = 1;
    let mut base = a.rem_euclid(p);
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

/// Rank over F_p of a matrix given by rows.
pub fn rank_mod_p(rows: &[Vec<i64>], p: u64) -> usize {
    let p = p as i64;
    let mut a: Vec<Vec<i64>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x.rem_euclid(p)).collect())
        .collect();
    let cols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..a.len()).find(|&r| a[r][c] != 0) else {
            continue;
        };
        a.swap(rank, piv);
        let inv = inv_mod(a[rank][c], p);
        for x in a[rank].iter_mut() {
            *x = *x * inv % p;
        }
        for r in 0..a.len() {
            if r != rank && a[r][c] != 0 {
                let factor = a[r][c];
                let pivot_row = a[rank].clone();
                for (x, &y) in a[r].iter_mut().zip(&pivot_row) {
                    *x = (*x - factor * y).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Matrix of the contraction `x ↦ μ(x, ·, ·)`: row `i` lists `μ(e_i, e_j, e_k)`
/// over pairs `j < k`.
pub fn contraction_rows(mu: &AltForm) -> Vec<Vec<i64>> {
    let b = mu.beta();
    (0..b)
        .map(|i| {
            (0..b)
                .flat_map(|j| (j + 1..b).map(move |k| (j, k)))
                .map(|(j, k)| mu.get(i, j, k))
                .collect()
        })
        .collect()
}

/// Matrix of cup product `∧²H¹ → H² ≅ (H¹)*`: row for each pair `r < s`
/// lists `μ(e_r, e_s, e_t)` over `t`.
pub fn cup_rows(mu: &AltForm) -> Vec<Vec<i64>> {
    let b = mu.beta();
    (0..b)
        .flat_map(|r| (r + 1..b).map(move |s| (r, s)))
        .map(|(r, s)| (0..b).map(|t| mu.get(r, s, t)).collect())
        .collect()
}

/// Dimension over F_p of the kernel of cup product on `∧²H¹`.
pub fn cup_kernel_dim_mod_p(mu: &AltForm, p: u64) -> Result<usize> {
    check_prime(p)?;
    let rows = cup_rows(mu);
    Ok(rows.len() - rank_mod_p(&rows, p))
}

/// Standard-form label of `μ` over F_p, `p ∈ {3, 5}`, `β ≤ 5`, read off the
/// rank of the contraction map: 0, 3 or 5.
pub fn standard_class_small_beta(mu: &AltForm, p: u64) -> Result<StandardClass> {
    check_prime(p)?;
    if mu.beta() > 5 {
        return Err(Error::RankOutOfRange {
            rank: mu.beta(),
            min: 0,
            max: 5,
        });
    }
    match rank_mod_p(&contraction_rows(mu), p) {
        0 => Ok(StandardClass::Zero),
        3 => Ok(StandardClass::SingleBlock),
        5 => Ok(StandardClass::DoubleBlock),
        _ => Err(Error::InvalidIntegral(
            "contraction rank outside the standard classes",
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn e(beta: usize, i: usize) -> Vec<i64> {
        let mut v = vec![0; beta];
        v[i] = 1;
        v
    }

    #[test]
    fn eval_examples() {
        let mu = AltForm::from_terms(3, &[([0, 1, 2], 1)]).unwrap();
        assert_eq!(mu.eval(&e(3, 0), &e(3, 1), &e(3, 2)).unwrap(), 1);
        assert_eq!(mu.eval(&e(3, 1), &e(3, 0), &e(3, 2)).unwrap(), -1);
        let x = vec![2, -1, 3];
        assert_eq!(mu.eval(&x, &x, &e(3, 2)).unwrap(), 0);
        let five = AltForm::from_terms(3, &[([0, 1, 2], 5)]).unwrap();
        assert_eq!(five.eval(&e(3, 0), &e(3, 1), &e(3, 2)).unwrap(), 5);
        assert!(five.eval(&e(2, 0), &e(3, 1), &e(3, 2)).is_err());
    }

    #[test]
    fn from_terms_applies_permutation_sign() {
        let mu = AltForm::from_terms(3, &[([2, 1, 0], 4)]).unwrap();
        assert_eq!(mu.get(0, 1, 2), -4);
        assert!(AltForm::from_terms(3, &[([0, 0, 1], 1)]).is_err());
    }

    #[test]
    fn bo_plan_examples() {
        let single = BoPlan {
            m: 3,
            triples: vec![BoTriple {
                triple: [0, 1, 2],
                n: 1,
            }],
        };
        assert_eq!(mu_of_boplan(&single).unwrap().terms(), vec![([0, 1, 2], 1)]);
        assert!(mu_of_boplan(&BoPlan {
            m: 4,
            triples: vec![]
        })
        .unwrap()
        .is_zero());
        let double = BoPlan {
            m: 5,
            triples: vec![
                BoTriple {
                    triple: [0, 1, 2],
                    n: 2,
                },
                BoTriple {
                    triple: [0, 3, 4],
                    n: 3,
                },
            ],
        };
        let mu = mu_of_boplan(&double).unwrap();
        assert_eq!(mu.terms(), vec![([0, 1, 2], 2), ([0, 3, 4], 3)]);
        assert_eq!(realize_integral(&mu), double);
        assert_eq!(
            realize_integral(&AltForm::zero(4)),
            BoPlan {
                m: 4,
                triples: vec![]
            }
        );

        let dup = BoPlan {
            m: 3,
            triples: vec![
                BoTriple {
                    triple: [0, 1, 2],
                    n: 1
                };
                2
            ],
        };
        assert!(mu_of_boplan(&dup).is_err());
    }

    #[test]
    fn ring_examples() {
        let mu = AltForm::from_terms(3, &[([0, 1, 2], 1)]).unwrap();
        let ring = build_ring(&mu);
        let e1 = RingElement::basis(3, 1, 0);
        let e2 = RingElement::basis(3, 1, 1);
        let e3 = RingElement::basis(3, 1, 2);
        assert_eq!(ring.mul(&e1, &e2), RingElement::basis(3, 2, 2));
        let top = ring.mul(&ring.mul(&e1, &e2), &e3);
        assert_eq!(top, RingElement::basis(3, 3, 0));
        assert!(ring.is_associative());
        assert!(ring.is_graded_commutative());

        let zero = build_ring(&AltForm::zero(3));
        assert!(zero.mul(&e1, &e2).is_zero());
        // the 1 × 2 pairing stays perfect
        for i in 0..3 {
            for j in 0..3 {
                let p = zero.mul(&RingElement::basis(3, 1, i), &RingElement::basis(3, 2, j));
                assert_eq!(p.parts[3][0], (i == j) as i64);
            }
        }
    }

    #[test]
    fn standard_class_examples() {
        assert_eq!(
            standard_class_small_beta(&AltForm::zero(5), 3).unwrap(),
            StandardClass::Zero
        );
        let single = AltForm::from_terms(5, &[([0, 1, 2], 1)]).unwrap();
        assert_eq!(
            standard_class_small_beta(&single, 3).unwrap(),
            StandardClass::SingleBlock
        );
        let double = AltForm::from_terms(5, &[([0, 1, 2], 1), ([0, 3, 4], 1)]).unwrap();
        assert_eq!(
            standard_class_small_beta(&double, 3).unwrap(),
            StandardClass::DoubleBlock
        );
        assert_eq!(
            standard_class_small_beta(&double, 5).unwrap(),
            StandardClass::DoubleBlock
        );
        assert_eq!(
            standard_class_small_beta(&double, 7),
            Err(Error::UnsupportedModulus(7))
        );
        assert!(standard_class_small_beta(&AltForm::zero(6), 3).is_err());
    }
}
