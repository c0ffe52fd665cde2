//! Multi-indices and the graded lexicographic order that numbers them.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex(pub Vec<u32>);

impl MultiIndex {
    pub fn zero(n: usize) -> Self {
        MultiIndex(vec![0; n])
    }

    pub fn unit(n: usize, axis: usize) -> Self {
        let mut v = vec![0; n];
        v[axis] = 1;
        MultiIndex(v)
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn add(&self, o: &MultiIndex) -> MultiIndex {
        MultiIndex(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    /// `m!` = product of the factorials of the exponents.
    pub fn factorial(&self) -> num_bigint::BigInt {
        self.0.iter().map(|&e| crate::scalar::factorial(e as u64)).product()
    }

    pub fn parse(s: &str) -> Result<Self> {
        let parts: Result<Vec<u32>> = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad exponent {p:?} in {s:?}")))
            })
            .collect();
        Ok(MultiIndex(parts?))
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|e| e.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

const NO_SUM: u32 = u32::MAX;

/// Bijection between ordinals and the multi-indices of arity `n` and degree
/// at most `d`: degree-major, ascending lexicographic within a degree.
///
/// The order for degree `d` is a prefix of the order for any `d' > d`, so
/// ordinals stay valid when a series is truncated.
pub struct GradedOrder {
    arity: usize,
    max_degree: u32,
    indices: Vec<MultiIndex>,
    lookup: HashMap<MultiIndex, usize>,
    degree_start: Vec<usize>,
    sums: OnceLock<Vec<u32>>,
}

impl fmt::Debug for GradedOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GradedOrder")
            .field("arity", &self.arity)
            .field("max_degree", &self.max_degree)
            .field("len", &self.indices.len())
            .finish()
    }
}

fn push_degree(n: usize, k: u32, prefix: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
    if prefix.len() + 1 == n {
        prefix.push(k);
        out.push(MultiIndex(prefix.clone()));
        prefix.pop();
        return;
    }
    for first in 0..=k {
        prefix.push(first);
        push_degree(n, k - first, prefix, out);
        prefix.pop();
    }
}

impl GradedOrder {
    pub fn new(arity: usize, max_degree: u32) -> Arc<Self> {
        assert!(arity > 0, "arity must be positive");
        let mut indices = Vec::new();
        let mut degree_start = Vec::with_capacity(max_degree as usize + 2);
        for k in 0..=max_degree {
            degree_start.push(indices.len());
            push_degree(arity, k, &mut Vec::with_capacity(arity), &mut indices);
        }
        degree_start.push(indices.len());
        let lookup = indices.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        Arc::new(GradedOrder {
            arity,
            max_degree,
            indices,
            lookup,
            degree_start,
            sums: OnceLock::new(),
        })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    /// Number of multi-indices with degree `<= d` (clamped to the maximum).
    pub fn len_through(&self, d: u32) -> usize {
        self.degree_start[d.min(self.max_degree) as usize + 1]
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    /// Ordinals of the multi-indices of exactly degree `k`.
    pub fn degree_range(&self, k: u32) -> std::ops::Range<usize> {
        if k > self.max_degree {
            return 0..0;
        }
        self.degree_start[k as usize]..self.degree_start[k as usize + 1]
    }

    pub fn ordinal(&self, m: &MultiIndex) -> Result<usize> {
        if m.arity() != self.arity {
            return Err(Error::ArityMismatch {
                left: m.arity(),
                right: self.arity,
            });
        }
        self.lookup.get(m).copied().ok_or(Error::OutOfRange {
            degree: m.degree(),
            max: self.max_degree,
        })
    }

    pub fn index(&self, ordinal: usize) -> &MultiIndex {
        &self.indices[ordinal]
    }

    pub fn degree_of(&self, ordinal: usize) -> u32 {
        self.indices[ordinal].degree()
    }

    /// Ordinal of `m_a + m_b`, or `None` when the sum leaves the order.
    pub fn add(&self, a: usize, b: usize) -> Option<usize> {
        let n = self.indices.len();
        let table = self.sums.get_or_init(|| {
            let mut t = vec![NO_SUM; n * n];
            for i in 0..n {
                let di = self.indices[i].degree();
                for j in i..n {
                    if di + self.indices[j].degree() > self.max_degree {
                        continue;
                    }
                    let s = self.lookup[&self.indices[i].add(&self.indices[j])] as u32;
                    t[i * n + j] = s;
                    t[j * n + i] = s;
                }
            }
            t
        });
        match table[a * n + b] {
            NO_SUM => None,
            s => Some(s as usize),
        }
    }

    /// Ordinal of `m_a - e_axis` if that exponent is positive.
    pub fn lower(&self, a: usize, axis: usize) -> Option<usize> {
        let m = &self.indices[a];
        if m.0[axis] == 0 {
            return None;
        }
        let mut v = m.0.clone();
        v[axis] -= 1;
        self.lookup.get(&MultiIndex(v)).copied()
    }
}
