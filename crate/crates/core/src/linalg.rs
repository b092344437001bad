//! Exact linear algebra over the rationals.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::scalar::Scalar;

pub type Vector = Vec<Scalar>;

/// Span of vectors inserted one at a time, each labelled by the caller.
///
/// Reduced vectors are kept with a normalized pivot, together with their
/// expression in the labelled inputs, so membership tests also yield
/// coefficients.
#[derive(Debug, Clone)]
pub struct IncrementalSpan {
    dim: usize,
    basis: Vec<(usize, Vector, BTreeMap<usize, Scalar>)>,
    labels: Vec<usize>,
}

impl IncrementalSpan {
    pub fn new(dim: usize) -> Self {
        IncrementalSpan { dim, basis: Vec::new(), labels: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn is_full(&self) -> bool {
        self.rank() == self.dim
    }

    /// Labels of the inputs that increased the rank, in insertion order.
    pub fn pivot_labels(&self) -> &[usize] {
        &self.labels
    }

    /// Residual of `v` and the combination `c` with `v = sum c_l input_l + residual`.
    pub fn reduce(&self, v: &[Scalar]) -> (Vector, BTreeMap<usize, Scalar>) {
        assert_eq!(v.len(), self.dim, "vector length does not match the span dimension");
        let mut v = v.to_vec();
        let mut combo = BTreeMap::<usize, Scalar>::new();
        for (p, b, bc) in &self.basis {
            if v[*p].is_zero() {
                continue;
            }
            let f = v[*p].clone();
            for (x, y) in v.iter_mut().zip(b) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
            for (l, c) in bc {
                *combo.entry(*l).or_insert_with(Scalar::zero) += &f * c;
            }
        }
        combo.retain(|_, c| !c.is_zero());
        (v, combo)
    }

    /// Adds `v` under `label`; returns whether the rank grew.
    pub fn insert(&mut self, label: usize, v: &[Scalar]) -> bool {
        let (mut r, combo) = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = Scalar::from_integer(1.into()) / &r[p];
        for x in r.iter_mut() {
            *x *= &inv;
        }
        // r/pivot = (v - combo) / pivot
        let mut rc: BTreeMap<usize, Scalar> = combo.into_iter().map(|(l, c)| (l, -c * &inv)).collect();
        *rc.entry(label).or_insert_with(Scalar::zero) += &inv;
        rc.retain(|_, c| !c.is_zero());
        self.basis.push((p, r, rc));
        self.labels.push(label);
        true
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).0.iter().all(Zero::is_zero)
    }

    /// Coefficients on the labelled inputs expressing `v`, if `v` lies in the span.
    pub fn express(&self, v: &[Scalar]) -> Option<BTreeMap<usize, Scalar>> {
        let (r, c) = self.reduce(v);
        r.iter().all(Zero::is_zero).then_some(c)
    }
}

pub fn rank(rows: &[Vector]) -> usize {
    let Some(first) = rows.first() else { return 0 };
    let mut s = IncrementalSpan::new(first.len());
    for (i, r) in rows.iter().enumerate() {
        s.insert(i, r);
    }
    s.rank()
}

/// Greedy left-to-right independent subset of `cols`.
pub fn leftmost_pivots(cols: &[Vector], dim: usize) -> Vec<usize> {
    let mut s = IncrementalSpan::new(dim);
    for (j, c) in cols.iter().enumerate() {
        s.insert(j, c);
    }
    s.pivot_labels().to_vec()
}

/// Solves `sum_j x_j cols[j] = b` using only leftmost pivot columns.
pub fn solve_min_support(cols: &[Vector], b: &[Scalar]) -> Option<BTreeMap<usize, Scalar>> {
    let mut s = IncrementalSpan::new(b.len());
    for (j, c) in cols.iter().enumerate() {
        s.insert(j, c);
        if s.is_full() {
            break;
        }
    }
    s.express(b)
}

/// Unique solution of the square system `a x = b` (rows of `a`), if any.
pub fn solve_square(a: &[Vector], b: &[Scalar]) -> Option<Vector> {
    let n = a.len();
    if b.len() != n || a.iter().any(|r| r.len() != n) {
        return None;
    }
    let cols: Vec<Vector> = (0..n).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect();
    let mut s = IncrementalSpan::new(n);
    for (j, c) in cols.iter().enumerate() {
        s.insert(j, c);
    }
    if !s.is_full() {
        return None;
    }
    let c = s.express(b)?;
    Some((0..n).map(|j| c.get(&j).cloned().unwrap_or_else(Scalar::zero)).collect())
}

/// Basis of `{x : a x = 0}` where `a` has `ncols` columns.
pub fn null_space(a: &[Vector], ncols: usize) -> Vec<Vector> {
    let dim = a.len();
    let mut s = IncrementalSpan::new(dim);
    let mut out = Vec::new();
    for j in 0..ncols {
        let col: Vector = a.iter().map(|r| r[j].clone()).collect();
        if let Some(combo) = s.express(&col) {
            // col_j - sum c_l col_l = 0
            let mut x = vec![Scalar::zero(); ncols];
            x[j] = Scalar::from_integer(1.into());
            for (l, c) in combo {
                x[l] -= c;
            }
            out.push(x);
        } else {
            s.insert(j, &col);
        }
    }
    out
}

/// A subspace of `K^d` with a reduced basis.
#[derive(Debug, Clone)]
pub struct Subspace {
    span: IncrementalSpan,
    basis: Vec<Vector>,
}

impl Subspace {
    pub fn zero(d: usize) -> Self {
        Subspace { span: IncrementalSpan::new(d), basis: Vec::new() }
    }

    pub fn full(d: usize) -> Self {
        let mut s = Self::zero(d);
        for i in 0..d {
            let mut e = vec![Scalar::zero(); d];
            e[i] = Scalar::from_integer(1.into());
            s.add(&e);
        }
        s
    }

    pub fn span(d: usize, vs: &[Vector]) -> Self {
        let mut s = Self::zero(d);
        for v in vs {
            s.add(v);
        }
        s
    }

    pub fn add(&mut self, v: &[Scalar]) -> bool {
        let grew = self.span.insert(self.basis.len(), v);
        if grew {
            self.basis.push(v.to_vec());
        }
        grew
    }

    pub fn dim(&self) -> usize {
        self.span.rank()
    }

    pub fn ambient(&self) -> usize {
        self.span.dim()
    }

    pub fn is_full(&self) -> bool {
        self.span.is_full()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.span.contains(v)
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut s = self.clone();
        for v in &other.basis {
            s.add(v);
        }
        s
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        let d = self.ambient();
        let (r, t) = (self.basis.len(), other.basis.len());
        // rows of [U | -W]
        let m: Vec<Vector> = (0..d)
            .map(|i| {
                self.basis
                    .iter()
                    .map(|u| u[i].clone())
                    .chain(other.basis.iter().map(|w| -w[i].clone()))
                    .collect()
            })
            .collect();
        let mut out = Subspace::zero(d);
        for x in null_space(&m, r + t) {
            let mut v = vec![Scalar::zero(); d];
            for (a, u) in x[..r].iter().zip(&self.basis) {
                for (vi, ui) in v.iter_mut().zip(u) {
                    *vi += a * ui;
                }
            }
            out.add(&v);
        }
        out
    }
}
