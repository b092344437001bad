use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::scalar::{abs, fmt_scalar, int, is_nonneg, pow, Scalar};
use crate::seminorm::{GradedSeminormFamily, WeightRow};
use crate::seq::{FiniteSeq, IndexDomain};

use super::sample_rational;

/// Vectors `u_1..u_n` with `p_1(u_k) = 1`, the schedule `eps` and
/// `K = prod (1 + eps_k)`, optionally with a perturbed family `f_k` and its
/// perturbation sum `delta = sum 2K p_k(u_k - f_k)`.
///
/// The grade `p_k` is row `first_row + k - 1` of the family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasicSeqBundle {
    pub vectors: Vec<FiniteSeq>,
    pub eps: Vec<Scalar>,
    pub k: Scalar,
    pub perturbed: Option<Vec<FiniteSeq>>,
    pub delta: Option<Scalar>,
}

fn grade(space: &GradedSeminormFamily, k: usize) -> i64 {
    space.first_row + k as i64 - 1
}

/// Smallest index `t > after` with a nonzero weight in `row`.
fn next_weighted(row: &WeightRow, after: i64, j: i64) -> Result<i64> {
    let mut t = after + 1;
    loop {
        if t >= row.tail_start && row.tail.is_all_zero() {
            return Err(Error::SupportExhausted);
        }
        match row.weight(t) {
            Some(w) if !w.is_zero() => return Ok(t),
            Some(_) => t += 1,
            None => return Err(Error::TailRuleRequired(format!("row {j} is unknown from index {t}"))),
        }
    }
}

/// Builds `u_{k+1} = e_t / a_{1,t}` at the next index `t` beyond the support
/// of `u_1..u_k` carrying a nonzero weight in the first seminorm. Disjoint
/// supports give the prefix inequality with factor one for every
/// monotone-absolute family.
pub fn basic_seq_build(space: &GradedSeminormFamily, n: usize, eps: &[Scalar]) -> Result<BasicSeqBundle> {
    space.validate()?;
    if space.domain != IndexDomain::Unilateral {
        return Err(Error::BilateralUnsupported);
    }
    if eps.len() > n || eps.iter().any(|e| !is_nonneg(e)) {
        return Err(Error::InvalidArgument("eps needs at most n nonnegative entries".into()));
    }
    let mut eps = eps.to_vec();
    eps.resize(n, Scalar::zero());
    let k = eps.iter().fold(Scalar::one(), |acc, e| acc * (Scalar::one() + e));
    let first = space.row(space.first_row)?;
    let mut vectors = Vec::with_capacity(n);
    let mut last = -1;
    for _ in 0..n {
        let t = next_weighted(&first, last, space.first_row)?;
        let w = first.weight(t).expect("weight was found");
        let mut u = FiniteSeq::zero(IndexDomain::Unilateral);
        u.set(t, Scalar::one() / w)?;
        vectors.push(u);
        last = t;
    }
    Ok(BasicSeqBundle { vectors, eps, k, perturbed: None, delta: None })
}

impl BasicSeqBundle {
    /// Adds `f_k = u_k + lambda_k e_{t_k}` where `t_k` is the next index past
    /// `u_k` weighted by `p_k` and `p_k(lambda_k e_{t_k}) = 1 / (2^{k+2} K)`
    /// for `k < n`, `1 / (2^{n+1} K)` for the last one, so that `delta = 1/2`.
    pub fn with_perturbation(mut self, space: &GradedSeminormFamily) -> Result<Self> {
        let n = self.vectors.len();
        let mut fs = Vec::with_capacity(n);
        let mut delta = Scalar::zero();
        for (i, u) in self.vectors.iter().enumerate() {
            let k = i + 1;
            let row = space.row(grade(space, k))?;
            let t = next_weighted(&row, u.max_index().unwrap_or(-1), grade(space, k))?;
            let w = row.weight(t).expect("weight was found");
            let exp = if k < n { k + 2 } else { n + 1 };
            let size = Scalar::one() / (pow(&int(2), exp as u32) * &self.k);
            let f = u.plus(&FiniteSeq::from_entries(IndexDomain::Unilateral, [(t, &size / w)])?)?;
            delta += int(2) * &self.k * space.eval(grade(space, k), &u.minus(&f)?)?;
            fs.push(f);
        }
        if delta >= Scalar::one() {
            return Err(Error::Precondition(format!("perturbation sum {} is not below 1", fmt_scalar(&delta))));
        }
        self.perturbed = Some(fs);
        self.delta = Some(delta);
        Ok(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasicSeqReport {
    pub samples: usize,
    pub seed: u64,
    pub normalization_checks: usize,
    pub prefix_checks: usize,
    pub coefficient_checks: usize,
    pub lower_bound_checks: usize,
    pub failures: Vec<String>,
}

impl BasicSeqReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn combination(vs: &[FiniteSeq], a: &[Scalar], lo: usize, hi: usize) -> Result<FiniteSeq> {
    let mut s = FiniteSeq::zero(IndexDomain::Unilateral);
    for k in lo..hi {
        s = s.plus(&vs[k].scaled(&a[k]))?;
    }
    Ok(s)
}

/// Checks the bundle on `samples` seeded coefficient vectors, exactly:
/// `p_1(u_k) = 1`; `p_j(S_m) <= (1 + eps_m) p_j(S_{m+1})` for `j <= m`;
/// `|a_m| <= 2K p_1(S_n)`; and with a perturbed family,
/// `p_j(sum_{k>=j} a_k f_k) >= (1 - delta) p_j(sum_{k>=j} a_k u_k)`.
pub fn basic_seq_verify(
    bundle: &BasicSeqBundle,
    space: &GradedSeminormFamily,
    samples: usize,
    seed: u64,
) -> Result<BasicSeqReport> {
    let n = bundle.vectors.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut r = BasicSeqReport {
        samples,
        seed,
        normalization_checks: 0,
        prefix_checks: 0,
        coefficient_checks: 0,
        lower_bound_checks: 0,
        failures: Vec::new(),
    };
    for (i, u) in bundle.vectors.iter().enumerate() {
        r.normalization_checks += 1;
        if space.eval(space.first_row, u)? != Scalar::one() {
            r.failures.push(format!("p_1(u_{}) is not 1", i + 1));
        }
    }
    if let (Some(_), Some(d)) = (&bundle.perturbed, &bundle.delta) {
        if d >= &Scalar::one() {
            r.failures.push("perturbation sum is not below 1".into());
        }
    }
    let two_k = int(2) * &bundle.k;
    for s in 0..samples {
        let a: Vec<Scalar> =
            (0..n).map(|_| if rng.gen_bool(0.1) { Scalar::zero() } else { sample_rational(&mut rng) }).collect();
        let prefixes = (0..=n).map(|m| combination(&bundle.vectors, &a, 0, m)).collect::<Result<Vec<_>>>()?;
        for m in 1..n {
            let factor = Scalar::one() + &bundle.eps[m - 1];
            for j in 1..=m {
                r.prefix_checks += 1;
                let lhs = space.eval(grade(space, j), &prefixes[m])?;
                let rhs = &factor * space.eval(grade(space, j), &prefixes[m + 1])?;
                if lhs > rhs {
                    r.failures.push(format!("sample {s}: prefix inequality fails for j = {j}, m = {m}"));
                }
            }
        }
        let p1 = space.eval(space.first_row, &prefixes[n])?;
        for (m, am) in a.iter().enumerate() {
            r.coefficient_checks += 1;
            if abs(am) > &two_k * &p1 {
                r.failures.push(format!("sample {s}: |a_{}| exceeds 2K p_1(x)", m + 1));
            }
        }
        if let (Some(fs), Some(delta)) = (&bundle.perturbed, &bundle.delta) {
            let keep = Scalar::one() - delta;
            for j in 1..=n {
                r.lower_bound_checks += 1;
                let lhs = space.eval(grade(space, j), &combination(fs, &a, j - 1, n)?)?;
                let rhs = &keep * space.eval(grade(space, j), &combination(&bundle.vectors, &a, j - 1, n)?)?;
                if lhs < rhs {
                    r.failures.push(format!("sample {s}: perturbed lower bound fails for j = {j}"));
                }
            }
        }
    }
    Ok(r)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaskerReport {
    pub vectors: usize,
    pub tail_checks: usize,
}

/// Checks `u_n ∈ ker p_n \ ker p_{n+1}` for every `n`, then on seeded
/// coefficients that `p_k(sum_{n>=N} alpha_n u_n) = 0` whenever `N > k`.
pub fn basker_verify(vectors: &[FiniteSeq], space: &GradedSeminormFamily, samples: usize, seed: u64) -> Result<BaskerReport> {
    for (i, u) in vectors.iter().enumerate() {
        let n = i + 1;
        if !space.in_kernel(grade(space, n), u)? {
            return Err(Error::MembershipFail { index: n, detail: format!("u_{n} is not in ker p_{n}") });
        }
        if space.in_kernel(grade(space, n + 1), u)? {
            return Err(Error::MembershipFail { index: n, detail: format!("u_{n} lies in ker p_{}", n + 1) });
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let len = vectors.len();
    let mut tail_checks = 0;
    for _ in 0..samples {
        let alpha: Vec<Scalar> = (0..len).map(|_| sample_rational(&mut rng)).collect();
        for big_n in 2..=len {
            let tail = combination(vectors, &alpha, big_n - 1, len)?;
            for k in 1..big_n {
                tail_checks += 1;
                if !space.in_kernel(grade(space, k), &tail)? {
                    return Err(Error::MembershipFail {
                        index: big_n,
                        detail: format!("tail from u_{big_n} is not in ker p_{k}"),
                    });
                }
            }
        }
    }
    Ok(BaskerReport { vectors: len, tail_checks })
}
