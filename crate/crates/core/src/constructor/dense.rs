//! A fixed bijection between `l >= 1` and finite-support rational sequences on `Z+`.
//!
//! `y_1 = 0`. For `l >= 2` write `t = l - 1` and split it into a list of
//! naturals by `t = 2^a (2s + 1) -> [a] ++ list(s)`, with `list(0) = []`. A
//! list `[n_0, .., n_p]` becomes the sequence `(z(n_0), .., z(n_{p-1}), r(n_p + 1))`
//! where `r` enumerates the nonzero rationals as `r(2m - 1) = q_m`,
//! `r(2m) = -q_m` with `q_m` the Calkin-Wilf order on positive rationals,
//! and `z(0) = 0`, `z(n) = r(n)`. The last entry is nonzero, so sequence
//! length and entries are recovered uniquely.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::scalar::Scalar;
use crate::seq::{FiniteSeq, IndexDomain};

/// `m`-th positive rational in Calkin-Wilf order, `m >= 1`.
fn calkin_wilf(m: u64) -> Scalar {
    debug_assert!(m >= 1);
    let (mut a, mut b) = (BigInt::one(), BigInt::one());
    let bits = 64 - m.leading_zeros();
    for k in (0..bits - 1).rev() {
        if (m >> k) & 1 == 0 {
            b += &a;
        } else {
            a += &b;
        }
    }
    Scalar::new(a, b)
}

fn calkin_wilf_index(q: &Scalar) -> Option<u64> {
    let (mut a, mut b) = (q.numer().clone(), q.denom().clone());
    let mut bits = Vec::new();
    while !(a.is_one() && b.is_one()) {
        if a < b {
            bits.push(0u64);
            b -= &a;
        } else {
            bits.push(1);
            a -= &b;
        }
        if bits.len() >= 64 {
            return None;
        }
    }
    Some(bits.iter().rev().fold(1u64, |m, bit| (m << 1) | bit))
}

fn nonzero_rational(n: u64) -> Scalar {
    let q = calkin_wilf(n.div_ceil(2));
    if n % 2 == 1 {
        q
    } else {
        -q
    }
}

fn nonzero_rational_index(v: &Scalar) -> Option<u64> {
    let m = calkin_wilf_index(&v.abs())?;
    if v.is_positive() {
        m.checked_mul(2)?.checked_sub(1)
    } else {
        m.checked_mul(2)
    }
}

fn split(mut t: u64) -> Vec<u64> {
    let mut out = Vec::new();
    while t > 0 {
        let a = t.trailing_zeros() as u64;
        out.push(a);
        t = (t >> a) / 2;
    }
    out
}

fn join(list: &[u64]) -> Option<u64> {
    list.iter().rev().try_fold(0u64, |s, &a| {
        let odd = s.checked_mul(2)?.checked_add(1)?;
        odd.checked_mul(1u64.checked_shl(a as u32).filter(|_| a < 64)?)
    })
}

/// `y_l`, `l >= 1`.
pub fn enumerate_dense(l: u64) -> FiniteSeq {
    assert!(l >= 1, "the enumeration starts at 1");
    let list = split(l - 1);
    let Some((last, init)) = list.split_last() else {
        return FiniteSeq::zero(IndexDomain::Unilateral);
    };
    let mut values: Vec<Scalar> =
        init.iter().map(|&n| if n == 0 { Scalar::zero() } else { nonzero_rational(n) }).collect();
    values.push(nonzero_rational(last + 1));
    FiniteSeq::from_dense(IndexDomain::Unilateral, &values)
}

/// The `l` with `enumerate_dense(l) == y`, or `None` if it does not fit in `u64`
/// or `y` is not a unilateral sequence.
pub fn index_of(y: &FiniteSeq) -> Option<u64> {
    if y.domain() != IndexDomain::Unilateral {
        return None;
    }
    let Some(p) = y.max_index() else { return Some(1) };
    let mut list = Vec::with_capacity(p as usize + 1);
    for k in 0..p {
        let v = y.get(k);
        list.push(if v.is_zero() { 0 } else { nonzero_rational_index(&v)? });
    }
    list.push(nonzero_rational_index(&y.get(p))? - 1);
    join(&list)?.checked_add(1)
}

/// Stage targets: `y_{l+1}`, which skips the zero vector so that every
/// target has a nonzero first-`l` window.
pub fn dense_target(l: usize) -> FiniteSeq {
    enumerate_dense(l as u64 + 1)
}
