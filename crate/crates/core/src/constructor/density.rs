//! Disjoint, well-separated sets `A(l, nu)` of positive lower density.
//!
//! The pair `(l, nu)` lives in shell `m = max(l, nu)`, which owns the
//! territory `{n : v_2(n) = m + 2}`. The `2m - 1` pairs of a shell split its
//! territory by the odd cofactor `o = n / 2^(m+2)`: rank `p` takes
//! `o = 2p + 1 (mod 2(2m - 1))`, where `(l, m)` has rank `l - 1` and `(m, nu)`
//! with `nu < m` has rank `m + nu - 1`. A candidate is removed when it lies
//! closer than `nu + m'` to the territory of a higher shell `m'`.
//!
//! Points of one territory differ by multiples of `2^(m+3) >= 2m`, and the
//! removal rule separates a point from every higher territory, so
//! `|n - n'| >= nu + mu` for distinct members. Removal only starts at
//! `m' > 2^(m+2) - m`, since points of different territories are at least
//! `2^(m+2)` apart; the removed mass is far below half the progression
//! density, which is the declared bound.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

fn exponent(m: u64) -> u32 {
    m as u32 + 2
}

fn modulus(m: u64) -> u64 {
    2 * (2 * m - 1)
}

fn rank(l: u64, nu: u64) -> u64 {
    let m = l.max(nu);
    if nu == m {
        l - 1
    } else {
        m + nu - 1
    }
}

fn pair(m: u64, p: u64) -> (u64, u64) {
    if p < m {
        (p + 1, m)
    } else {
        (m, p + 1 - m)
    }
}

/// Common difference of the progression carrying `A(l, nu)` before removals.
pub fn progression_step(l: u64, nu: u64) -> u64 {
    let m = l.max(nu);
    (1u64 << exponent(m)) * modulus(m)
}

/// First candidate of the progression carrying `A(l, nu)`.
pub fn progression_start(l: u64, nu: u64) -> u64 {
    let m = l.max(nu);
    (1u64 << exponent(m)) * (2 * rank(l, nu) + 1)
}

/// The pair `(l, nu)` whose set contains `n`, if any.
pub fn owner(n: u64) -> Option<(u64, u64)> {
    if n == 0 {
        return None;
    }
    let v = n.trailing_zeros();
    if !(3..=62).contains(&v) {
        return None;
    }
    let m = v as u64 - 2;
    let o = n >> v;
    let p = (o % modulus(m)) / 2;
    let (l, nu) = pair(m, p);
    for m2 in m + 1.. {
        let e = exponent(m2);
        if e >= 64 {
            break;
        }
        let half = 1u128 << e;
        let need = (nu + m2) as u128;
        if half >= n as u128 + need {
            break;
        }
        let r = n as u128 % (half << 1);
        if r.abs_diff(half) < need {
            return None;
        }
    }
    Some((l, nu))
}

pub fn contains(l: u64, nu: u64, n: u64) -> bool {
    l >= 1 && nu >= 1 && owner(n) == Some((l, nu))
}

/// Declared lower density: half the progression density, `1 / (2 * step)`.
pub fn declared_density(l: u64, nu: u64) -> Scalar {
    Scalar::new(BigInt::from(1), BigInt::from(2 * progression_step(l, nu)))
}

/// Prefix length after which the counting ratio is compared with the declared density.
pub fn burn_in(l: u64, nu: u64) -> u64 {
    4 * progression_step(l, nu)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensityReport {
    pub l: u64,
    pub nu: u64,
    pub horizon: u64,
    pub count: u64,
    pub min_element: Option<u64>,
    pub burn_in: u64,
    /// `min |A ∩ [1, n]| / n` over `burn_in <= n <= horizon`.
    pub empirical: Option<Scalar>,
    pub declared: Scalar,
    pub passed: bool,
}

/// Scans `A(l, nu) ∩ [1, horizon]` and compares its counting ratio with the declared density.
pub fn density_sets(l: u64, nu: u64, horizon: u64) -> Result<DensityReport> {
    if l < 1 || nu < 1 {
        return Err(Error::InvalidArgument("need l >= 1 and nu >= 1".into()));
    }
    if l.max(nu) > 60 {
        return Err(Error::InvalidArgument("shell exceeds the 64-bit index range".into()));
    }
    let burn = burn_in(l, nu);
    let declared = declared_density(l, nu);
    let (mut count, mut min_element) = (0u64, None);
    let mut worst: Option<(u64, u64)> = None;
    for n in 1..=horizon {
        if contains(l, nu, n) {
            count += 1;
            min_element.get_or_insert(n);
        }
        if n >= burn {
            let better = match worst {
                Some((c, d)) => (count as u128) * (d as u128) < (c as u128) * (n as u128),
                None => true,
            };
            if better {
                worst = Some((count, n));
            }
        }
    }
    let empirical = worst.map(|(c, n)| Scalar::new(BigInt::from(c), BigInt::from(n)));
    let passed = empirical.as_ref().is_some_and(|e| e >= &declared);
    Ok(DensityReport { l, nu, horizon, count, min_element, burn_in: burn, empirical, declared, passed })
}
