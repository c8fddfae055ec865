//! Pairwise edge contraction.
//!
//! Every node starts as its own working tensor. Each edge either merges the
//! two working tensors that own its endpoints (summing over the shared
//! index) or, when both endpoints already live in the same working tensor,
//! takes a partial trace. Self-loops fall into the second case.

use std::collections::HashMap;

use crate::linalg::ComplexScalar;

use super::tensor::next_index;
use super::{Leg, LegRef, Network, Tensor};

struct Working {
    legs: Vec<usize>,
    dims: Vec<usize>,
    data: Vec<ComplexScalar>,
}

fn strides(dims: &[usize]) -> Vec<usize> {
    let mut s = vec![1; dims.len()];
    for i in (0..dims.len().saturating_sub(1)).rev() {
        s[i] = s[i + 1] * dims[i + 1];
    }
    s
}

impl Working {
    fn position(&self, leg: usize) -> usize {
        self.legs
            .iter()
            .position(|&l| l == leg)
            .expect("leg owned by tensor")
    }

    /// Sums the diagonal of legs `x` and `y`.
    fn trace(self, x: usize, y: usize) -> Working {
        let (px, py) = (self.position(x), self.position(y));
        let st = strides(&self.dims);
        let keep: Vec<usize> = (0..self.legs.len())
            .filter(|&p| p != px && p != py)
            .collect();
        let dims: Vec<usize> = keep.iter().map(|&p| self.dims[p]).collect();
        let mut data = Vec::with_capacity(dims.iter().product());
        let mut idx = vec![0; keep.len()];
        loop {
            let base: usize = keep.iter().zip(&idx).map(|(&p, &i)| st[p] * i).sum();
            let mut acc = ComplexScalar::new(0.0, 0.0);
            for k in 0..self.dims[px] {
                acc += self.data[base + k * (st[px] + st[py])];
            }
            data.push(acc);
            if !next_index(&mut idx, &dims) {
                break;
            }
        }
        Working {
            legs: keep.iter().map(|&p| self.legs[p]).collect(),
            dims,
            data,
        }
    }

    /// Sums over `x` of `self` joined with `y` of `other`; result legs are
    /// the remaining legs of `self` followed by those of `other`.
    fn join(self, other: Working, x: usize, y: usize) -> Working {
        let (px, py) = (self.position(x), other.position(y));
        let (sa, sb) = (strides(&self.dims), strides(&other.dims));
        let keep_a: Vec<usize> = (0..self.legs.len()).filter(|&p| p != px).collect();
        let keep_b: Vec<usize> = (0..other.legs.len()).filter(|&p| p != py).collect();
        let dims: Vec<usize> = keep_a
            .iter()
            .map(|&p| self.dims[p])
            .chain(keep_b.iter().map(|&p| other.dims[p]))
            .collect();
        let mut data = Vec::with_capacity(dims.iter().product());
        let mut idx = vec![0; dims.len()];
        loop {
            let (ia, ib) = idx.split_at(keep_a.len());
            let base_a: usize = keep_a.iter().zip(ia).map(|(&p, &i)| sa[p] * i).sum();
            let base_b: usize = keep_b.iter().zip(ib).map(|(&p, &i)| sb[p] * i).sum();
            let mut acc = ComplexScalar::new(0.0, 0.0);
            for k in 0..self.dims[px] {
                acc += self.data[base_a + k * sa[px]] * other.data[base_b + k * sb[py]];
            }
            data.push(acc);
            if !next_index(&mut idx, &dims) {
                break;
            }
        }
        let legs = keep_a
            .iter()
            .map(|&p| self.legs[p])
            .chain(keep_b.iter().map(|&p| other.legs[p]))
            .collect();
        Working { legs, dims, data }
    }

    fn outer(self, other: Working) -> Working {
        let mut data = Vec::with_capacity(self.data.len() * other.data.len());
        for a in &self.data {
            data.extend(other.data.iter().map(|b| a * b));
        }
        Working {
            legs: self.legs.into_iter().chain(other.legs).collect(),
            dims: self.dims.into_iter().chain(other.dims).collect(),
            data,
        }
    }

    /// Reorders legs to `order` (a permutation of `self.legs`).
    fn permute(self, order: &[usize]) -> Working {
        let perm: Vec<usize> = order.iter().map(|&l| self.position(l)).collect();
        let st = strides(&self.dims);
        let dims: Vec<usize> = perm.iter().map(|&p| self.dims[p]).collect();
        let mut data = Vec::with_capacity(self.data.len());
        let mut idx = vec![0; dims.len()];
        loop {
            let off: usize = perm.iter().zip(&idx).map(|(&p, &i)| st[p] * i).sum();
            data.push(self.data[off]);
            if !next_index(&mut idx, &dims) {
                break;
            }
        }
        Working {
            legs: order.to_vec(),
            dims,
            data,
        }
    }
}

/// Assumes a validated network and a valid edge permutation.
pub(super) fn contract(net: &Network, order: &[usize]) -> Tensor {
    let mut ids: HashMap<LegRef, usize> = HashMap::new();
    let mut names: Vec<LegRef> = Vec::new();
    let mut slots: Vec<Option<Working>> = Vec::new();
    let mut owner: Vec<usize> = Vec::new();

    for (node_id, t) in net.nodes() {
        let slot = slots.len();
        let legs = t
            .legs()
            .iter()
            .map(|leg| {
                let r = LegRef::new(node_id.clone(), leg.name.clone());
                let id = names.len();
                ids.insert(r.clone(), id);
                names.push(r);
                owner.push(slot);
                id
            })
            .collect();
        slots.push(Some(Working {
            legs,
            dims: t.dims(),
            data: t.data().to_vec(),
        }));
    }

    for &e in order {
        let edge = &net.edges()[e];
        let (x, y) = (ids[&edge.a], ids[&edge.b]);
        let (sx, sy) = (owner[x], owner[y]);
        if sx == sy {
            let w = slots[sx].take().expect("live slot");
            slots[sx] = Some(w.trace(x, y));
        } else {
            let a = slots[sx].take().expect("live slot");
            let b = slots[sy].take().expect("live slot");
            for &leg in &b.legs {
                owner[leg] = sx;
            }
            slots[sx] = Some(a.join(b, x, y));
        }
    }

    let mut result = Working {
        legs: Vec::new(),
        dims: Vec::new(),
        data: vec![ComplexScalar::new(1.0, 0.0)],
    };
    for w in slots.into_iter().flatten() {
        result = result.outer(w);
    }
    let free: Vec<usize> = net.free_legs().iter().map(|f| ids[f]).collect();
    let result = result.permute(&free);
    let legs = free
        .iter()
        .zip(&result.dims)
        .map(|(&id, &dim)| Leg::new(names[id].to_string(), dim))
        .collect();
    Tensor::from_parts(legs, result.data)
}
