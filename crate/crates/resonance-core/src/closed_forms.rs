//! Big-integer evaluation of the closed formulas: free-module Hilbert
//! values, Chen ranks of surface and Kodaira-fibration groups, subpencil
//! counts and the Grassmannian-degree identity, and the Porteous class at
//! top theta power. Every division asserts exactness and aborts with a
//! diagnostic otherwise.

use alloc::string::String;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::engine::KoszulEngine;
use crate::error::{Error, Result};
use crate::multilinear::PairSpec;
use crate::rat::{Int, Rat};

pub fn factorial(n: u64) -> Int {
    let mut acc = Int::one();
    for i in 2..=n {
        acc *= Int::from(i);
    }
    acc
}

/// C(n, k) over signed inputs; zero outside the Pascal triangle.
pub fn binom(n: i64, k: i64) -> Int {
    if k < 0 || n < 0 || k > n {
        return Int::zero();
    }
    let k = k.min(n - k) as u64;
    let mut acc = Int::one();
    for i in 0..k {
        acc = acc * Int::from(n as u64 - i) / Int::from(i + 1);
    }
    acc
}

fn exact_div(num: Int, den: &Int, context: &str) -> Result<Int> {
    if den.is_zero() || !(&num % den).is_zero() {
        return Err(Error::NonIntegralCount {
            context: String::from(context),
        });
    }
    Ok(num / den)
}

/// dim W_q(V, 0) = (q+1)·C(q+n, q+2) for an n-dimensional V.
pub fn free_koszul_dim(n: usize, q: usize) -> Int {
    Int::from(q as u64 + 1) * binom((q + n) as i64, (q + 2) as i64)
}

/// Dimensions of the linear components of a strongly isotropic resonance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChenProfile {
    pub component_dims: Vec<usize>,
}

impl ChenProfile {
    pub fn new(component_dims: Vec<usize>) -> Result<Self> {
        if component_dims.iter().any(|&d| d == 0) {
            return Err(Error::InvalidInput {
                detail: "component dimensions must be positive".into(),
            });
        }
        Ok(ChenProfile { component_dims })
    }
}

/// θ_q for a 1-formal group with strongly isotropic resonance:
/// Σ_t (q−1)·C(q + dim_t − 2, q), valid for q ≥ 2.
pub fn chen_rank_strongly_isotropic(profile: &ChenProfile, q: u64) -> Result<Int> {
    if q < 2 {
        return Err(Error::InvalidInput {
            detail: "Chen ranks need q >= 2 here".into(),
        });
    }
    let mut acc = Int::zero();
    for &d in &profile.component_dims {
        acc += Int::from(q - 1) * binom((q + d as u64 - 2) as i64, q as i64);
    }
    Ok(acc)
}

/// Chen ranks of a genus-g surface group: 2g at q = 1, 2g²−g−1 at q = 2,
/// and (q−1)·C(2g+q−2, q) − C(2g+q−3, q−2) from q = 3 on.
pub fn chen_rank_surface(g: u64, q: u64) -> Result<Int> {
    if g < 2 || q < 1 {
        return Err(Error::InvalidInput {
            detail: "surface Chen ranks need g >= 2 and q >= 1".into(),
        });
    }
    Ok(match q {
        1 => Int::from(2 * g),
        2 => Int::from(2 * g * g - g - 1),
        _ => {
            Int::from(q - 1) * binom((2 * g + q - 2) as i64, q as i64)
                - binom((2 * g + q - 3) as i64, (q - 2) as i64)
        }
    })
}

/// Chen ranks of a double Kodaira fibration with base genera b1, b2, for
/// q ≥ 3; equals the sum of the two surface-group contributions.
pub fn chen_rank_kodaira(b1: u64, b2: u64, q: u64) -> Result<Int> {
    if b1 < 2 || b2 < 2 || q < 3 {
        return Err(Error::InvalidInput {
            detail: "Kodaira Chen ranks need b1, b2 >= 2 and q >= 3".into(),
        });
    }
    let head = Int::from(q - 1)
        * (binom((2 * b1 + q - 2) as i64, q as i64) + binom((2 * b2 + q - 2) as i64, q as i64));
    let tail = binom((2 * b1 + q - 3) as i64, (q - 2) as i64)
        + binom((2 * b2 + q - 3) as i64, (q - 2) as i64);
    Ok(head - tail)
}

/// Number of degree-a subpencils of a general rank-2 bundle of degree
/// 3g+1: 2^{2a−g−2}/(g+1) · (g+1)! / ((g−a+1)!·(g−a+2)!·(2a−g−2)!).
/// The division must come out exact.
pub fn subpencil_count(g: u64, a: u64) -> Result<Int> {
    let lo = (g + 3) / 2; // ceil((g+2)/2)
    if a < lo || a > g + 1 {
        return Err(Error::InvalidInput {
            detail: alloc::format!("subpencil degree a = {a} outside [{lo}, {}]", g + 1),
        });
    }
    let two_pow = Int::from(2u32).pow((2 * a - g - 2) as u32);
    let num = two_pow * factorial(g + 1);
    let den = Int::from(g + 1)
        * factorial(g + 1 - a)
        * factorial(g + 2 - a)
        * factorial(2 * a - g - 2);
    exact_div(num, &den, "subpencil count")
}

/// Left side: sum of subpencil counts over the valid degree range.
/// Right side: deg Gr_2(g+3) = (2g+2)!/((g+1)!·(g+2)!).
pub fn grassmannian_degree_identity(g: u64) -> Result<(Int, Int, bool)> {
    if g < 1 {
        return Err(Error::InvalidInput {
            detail: "genus must be at least 1".into(),
        });
    }
    let lo = (g + 3) / 2;
    let mut lhs = Int::zero();
    for a in lo..=g + 1 {
        lhs += subpencil_count(g, a)?;
    }
    let rhs = exact_div(
        factorial(2 * g + 2),
        &(factorial(g + 1) * factorial(g + 2)),
        "Grassmannian degree",
    )?;
    let equal = lhs == rhs;
    Ok((lhs, rhs, equal))
}

/// The class 2^{2g+2a−d−1}·θ^{4g−d+1}/((2g+2a−d−1)!·(g−a+1)!·(g−a+2)!).
/// The rational coefficient is always returned symbolically; the integer
/// point count is evaluated only at d = 3g+1, where the power of theta is
/// the top one and θ^g counts g! on the g-dimensional Jacobian.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PorteousClass {
    pub coefficient: Rat,
    pub theta_power: u64,
    pub point_count: Option<Int>,
}

pub fn porteous_coefficient(g: u64, a: u64, d: u64) -> Result<PorteousClass> {
    // factorial arguments must be non-negative: 2g+2a−d−1 ≥ 0 and a ≤ g+1
    if g < 1 || a > g + 1 || 2 * a + 2 * g < d + 1 || d > 4 * g + 1 {
        return Err(Error::InvalidInput {
            detail: alloc::format!("Porteous parameters out of range: g={g}, a={a}, d={d}"),
        });
    }
    let e = 2 * g + 2 * a - d - 1;
    let coefficient = Rat::new(
        Int::from(2u32).pow(e as u32),
        factorial(e) * factorial(g + 1 - a) * factorial(g + 2 - a),
    );
    let theta_power = 4 * g + 1 - d;
    let point_count = if d == 3 * g + 1 {
        let v = &coefficient * Rat::from_integer(factorial(g));
        if !v.denom().is_one() || v.numer().is_negative() {
            return Err(Error::NonIntegralCount {
                context: "Porteous point count".into(),
            });
        }
        Some(v.numer().clone())
    } else {
        None
    };
    Ok(PorteousClass {
        coefficient,
        theta_power,
        point_count,
    })
}

/// θ_q(G) = dim W_{q−2} for 1-formal group data, exposed under the
/// Chen-rank name. The 1-formality assumption is on the caller.
pub fn chen_rank_via_engine(engine: &mut KoszulEngine, spec: &PairSpec, q: u64) -> Result<Int> {
    if q < 2 {
        return Err(Error::InvalidInput {
            detail: "engine Chen ranks need q >= 2".into(),
        });
    }
    Ok(Int::from(
        engine.wq_dim_homology(spec, (q - 2) as usize)? as u64
    ))
}
