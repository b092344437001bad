use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{Subspace, Vector};
use crate::scalar::Scalar;
use crate::verdict::{Status, Verdict, Witness};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TargetTail {
    /// `x_{E+t} = pattern[t mod len]`; an all-zero pattern is an eventually zero family.
    Periodic(Vec<Vector>),
}

/// Vectors `x_n` in `K^d`: `explicit[n]` for `n < E`, then the tail rule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TargetFamily {
    pub dim: usize,
    pub explicit: Vec<Vector>,
    pub tail: Option<TargetTail>,
}

impl TargetFamily {
    pub fn get(&self, n: usize) -> Option<&Vector> {
        if n < self.explicit.len() {
            return self.explicit.get(n);
        }
        match &self.tail {
            Some(TargetTail::Periodic(p)) => Some(&p[(n - self.explicit.len()) % p.len()]),
            None => None,
        }
    }

    fn period(&self) -> Result<usize> {
        match &self.tail {
            Some(TargetTail::Periodic(p)) if !p.is_empty() => Ok(p.len()),
            Some(_) => Err(Error::Schema("empty periodic pattern".into())),
            None => Err(Error::TailRuleRequired("target family needs a tail rule".into())),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.dim == 0 {
            return Err(Error::Schema("dimension must be at least 1".into()));
        }
        self.period()?;
        let Some(TargetTail::Periodic(p)) = &self.tail else { unreachable!() };
        if self.explicit.iter().chain(p).any(|v| v.len() != self.dim) {
            return Err(Error::Schema(format!("every vector must have length {}", self.dim)));
        }
        Ok(())
    }
}

fn span(f: &TargetFamily, lo: usize, hi: usize) -> Subspace {
    let mut s = Subspace::zero(f.dim);
    for n in lo..hi {
        s.add(f.get(n).expect("tail rule present"));
    }
    s
}

/// Decides density of `U_N = union over M >= N of span{x_k : N <= k <= M} ∩ R_M`
/// for every `N`, with `R_M = span{x_k : k > M}` (plus `ker q` when kernel
/// weights are given).
///
/// A countable union of subspaces of `K^d` is dense only if one member is the
/// whole space, so `U_N` is dense iff some `M` has both factors equal to `K^d`.
/// Past the explicit block both factors depend only on `N` and `M` modulo the
/// period, which bounds the search.
pub fn universal_span_criterion(f: &TargetFamily, kernel_weights: Option<&[Scalar]>) -> Result<Verdict> {
    f.validate()?;
    let name = if kernel_weights.is_some() { "universal-span-kernel" } else { "universal-span" };
    let kernel = match kernel_weights {
        Some(w) => {
            if w.len() != f.dim {
                return Err(Error::Schema(format!("kernel weights must have length {}", f.dim)));
            }
            let units: Vec<Vector> = (0..f.dim)
                .filter(|&i| w[i].is_zero())
                .map(|i| (0..f.dim).map(|j| if i == j { Scalar::from_integer(1.into()) } else { Scalar::zero() }).collect())
                .collect();
            Some(Subspace::span(f.dim, &units))
        }
        None => None,
    };
    let (e, p) = (f.explicit.len(), f.period()?);
    let mut failing = Vec::new();
    let mut witnesses = Vec::new();
    for n in 0..=e + p {
        let mut found = None;
        for m in n..=n.max(e) + p + 1 {
            let right = span(f, m + 1, (m + 1).max(e) + p);
            let right = match &kernel {
                Some(k) => right.sum(k),
                None => right,
            };
            if right.is_full() && span(f, n, m + 1).is_full() {
                found = Some(m as u64);
                break;
            }
        }
        if found.is_none() {
            failing.push(n);
        }
        witnesses.push(Witness::Span { n: n as u64, m: found, dense: found.is_some() });
    }
    let status = if failing.is_empty() { Status::Holds } else { Status::Refuted };
    let mut v = Verdict::new(name, status);
    v.witnesses = witnesses;
    if !failing.is_empty() {
        let list: Vec<String> = failing.iter().map(|n| n.to_string()).collect();
        v.refutation = Some(format!("union is not dense for N in {{{}}}", list.join(", ")));
        if kernel.is_some() {
            v = v.note("non-density with the kernel term rules out a hypercyclic subspace");
        }
    }
    Ok(v.note(format!("N = 0..={} decides every N; larger N repeat the tail residues", e + p)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn v(xs: &[i64]) -> Vector {
        xs.iter().map(|x| int(*x)).collect()
    }

    #[test]
    fn constant_family_holds() {
        let f = TargetFamily { dim: 1, explicit: vec![], tail: Some(TargetTail::Periodic(vec![v(&[1])])) };
        assert_eq!(universal_span_criterion(&f, None).unwrap().status, Status::Holds);
    }

    #[test]
    fn truncated_family_refuted_at_zero_and_one() {
        let f = TargetFamily { dim: 1, explicit: vec![v(&[1])], tail: Some(TargetTail::Periodic(vec![v(&[0])])) };
        let r = universal_span_criterion(&f, None).unwrap();
        assert_eq!(r.status, Status::Refuted);
        assert_eq!(r.refutation.as_deref(), Some("union is not dense for N in {0, 1, 2}"));
    }

    #[test]
    fn cyclic_family_holds() {
        let f = TargetFamily {
            dim: 2,
            explicit: vec![],
            tail: Some(TargetTail::Periodic(vec![v(&[1, 0]), v(&[0, 1]), v(&[1, 1])])),
        };
        assert_eq!(universal_span_criterion(&f, None).unwrap().status, Status::Holds);
    }

    #[test]
    fn kernel_term_widens_the_right_factor() {
        // x_0 = e_2, then e_1 forever; ker q = span(e_2)
        let f = TargetFamily { dim: 2, explicit: vec![v(&[0, 1])], tail: Some(TargetTail::Periodic(vec![v(&[1, 0])])) };
        let plain = universal_span_criterion(&f, None).unwrap();
        assert_eq!(plain.witnesses[0], Witness::Span { n: 0, m: None, dense: false });
        let r = universal_span_criterion(&f, Some(&[int(1), int(0)])).unwrap();
        assert_eq!(r.witnesses[0], Witness::Span { n: 0, m: Some(1), dense: true });
        // from N = 1 on the left factor misses e_2
        assert_eq!(r.status, Status::Refuted);
    }

    #[test]
    fn missing_tail() {
        let f = TargetFamily { dim: 1, explicit: vec![v(&[1])], tail: None };
        assert!(matches!(universal_span_criterion(&f, None), Err(Error::TailRuleRequired(_))));
    }
}
