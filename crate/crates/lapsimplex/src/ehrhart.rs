//! h*-vectors of lattice simplices, by three independent routes:
//! fundamental-parallelepiped heights, dilation counting with an inverse
//! binomial transform, and the floor-sum closed form for the simplices
//! realized by star digraphs.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::digraph::{NonUnimodalSpec, StarSpec};
use crate::error::Result;
use crate::simplex::LatticeSimplex;
use crate::Budget;

/// Coefficients (h*_0, ..., h*_d) of the Ehrhart series numerator:
/// nonnegative integers with h*_0 = 1 summing to the normalized volume.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HStarVector {
    pub coeffs: Vec<BigInt>,
}

impl HStarVector {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        HStarVector { coeffs }
    }

    pub fn from_u64(coeffs: &[u64]) -> Self {
        HStarVector {
            coeffs: coeffs.iter().map(|&c| BigInt::from(c)).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn sum(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// h*_i = h*_{d-i} for all i.
    pub fn is_symmetric(&self) -> bool {
        let d = self.coeffs.len();
        (0..d / 2).all(|i| self.coeffs[i] == self.coeffs[d - 1 - i])
    }

    /// Rises (weakly) to some peak and falls (weakly) after it: no strict
    /// increase may follow a strict decrease.
    pub fn is_unimodal(&self) -> bool {
        let mut falling = false;
        for w in self.coeffs.windows(2) {
            if w[1] < w[0] {
                falling = true;
            } else if w[1] > w[0] && falling {
                return false;
            }
        }
        true
    }
}

impl std::fmt::Display for HStarVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// h* from the fundamental parallelepiped: h*_j counts the parallelepiped
/// lattice points at height j. Costs exactly Vol(P) points.
pub fn hstar_parallelepiped(p: &LatticeSimplex) -> HStarVector {
    let d = p.dim();
    let mut coeffs = vec![BigInt::zero(); d + 1];
    for pt in p.fundamental_parallelepiped() {
        coeffs[pt.height as usize] += 1;
    }
    HStarVector::new(coeffs)
}

/// h* from dilation counts L(0..d) via the inverse binomial transform:
/// h*_i = sum_{j=0..i} (-1)^j C(d+1, j) L(i-j).
///
/// This route shares nothing with the parallelepiped one: the counts come
/// from bounding-box scans.
pub fn hstar_dilation_oracle(p: &LatticeSimplex, budget: &Budget) -> Result<HStarVector> {
    let d = p.dim();
    let mut ehrhart = Vec::with_capacity(d + 1);
    for t in 0..=d as u32 {
        ehrhart.push(BigInt::from(p.lattice_points(t, budget)?.len()));
    }
    let binom = binomial_row(d + 1);
    let coeffs = (0..=d)
        .map(|i| {
            let mut acc = BigInt::zero();
            for j in 0..=i {
                let term = &binom[j] * &ehrhart[i - j];
                if j % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            acc
        })
        .collect();
    Ok(HStarVector::new(coeffs))
}

fn binomial_row(n: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for k in 1..=n {
        let next = &row[k - 1] * BigInt::from((n - k + 1) as u64) / BigInt::from(k as u64);
        row.push(next);
    }
    row
}

/// Closed-form h* of the simplex with weights (1, q): evaluates
/// `w(b) = b - sum_i floor(q_i b / (1 + sum q))` for b = 0..=sum(q) and
/// counts the values. The weight hypothesis (each q_j divides 1 plus the
/// sum of the others) makes the simplex reflexive; the formula is still
/// evaluated without it, with the flag reporting whether it held.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Delta1qHStar {
    pub hstar: HStarVector,
    /// Whether the reflexive-weights hypothesis held for this q.
    pub weights_reflexive: bool,
}

pub fn hstar_delta1q(q: &StarSpec) -> Delta1qHStar {
    let weights = q.weights();
    let total: u64 = q.weight_sum();
    let denom = total + 1;
    let d = weights.len(); // dimension of the simplex
    let mut coeffs = vec![BigInt::zero(); d + 1];
    for b in 0..=total {
        let floor_sum: u64 = weights.iter().map(|&qi| qi * b / denom).sum();
        let w = (b - floor_sum) as usize;
        coeffs[w] += 1;
    }
    Delta1qHStar {
        hstar: HStarVector::new(coeffs),
        weights_reflexive: delta1q_weights_reflexive(q),
    }
}

/// q_j | (1 + sum_{i != j} q_i) for every j.
pub fn delta1q_weights_reflexive(q: &StarSpec) -> bool {
    let total = q.weight_sum();
    q.weights().iter().all(|&qj| (1 + total - qj).is_multiple_of(qj))
}

/// The block-pattern h* predicted for the non-unimodal cycle family:
/// 1^{2(k+1)-a} 2^a 1^{k+1-a-b} 2^b 1^{k+1-a-b} 2^a 1^{2(k+1)-a}.
pub fn predicted_nonunimodal_hstar(spec: &NonUnimodalSpec) -> HStarVector {
    let (a, b, k) = (spec.alpha, spec.beta, spec.k);
    let blocks: [(u64, u64); 7] = [
        (2 * (k + 1) - a, 1),
        (a, 2),
        ((k + 1) - a - b, 1),
        (b, 2),
        ((k + 1) - a - b, 1),
        (a, 2),
        (2 * (k + 1) - a, 1),
    ];
    let mut coeffs = Vec::with_capacity(spec.n());
    for (len, value) in blocks {
        coeffs.extend(std::iter::repeat_n(BigInt::from(value), len as usize));
    }
    debug_assert_eq!(coeffs.len(), spec.n());
    HStarVector::new(coeffs)
}
